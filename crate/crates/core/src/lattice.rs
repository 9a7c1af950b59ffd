//! Spectrum of the flat torus link of the Harvey–Lawson cone.
//!
//! Eigenfunctions of the Laplacian on the link of `C^m_HL` are indexed by
//! integer vectors `n ∈ Z^{m-1}`, with eigenvalue
//!
//! ```text
//! Q(n) = m * Σ n_i² − (Σ n_i)²
//! ```
//!
//! `Q` is positive definite: `Q(n) = Σ n_i² + Σ_{i<j} (n_i − n_j)²`. The
//! enumeration below walks coordinates depth first and prunes each partial
//! assignment with the exact minimum of `Q` over real completions, so only
//! vectors that can still satisfy `Q(n) <= lambda_max` are ever visited.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::{LinkSpectrum, SpectrumEntry};

/// Default cap on the number of enumeration nodes.
pub const DEFAULT_MAX_POINTS: u64 = 1_000_000_000;

/// Integer index `(n_1, ..., n_{m-1})` of a torus eigenfunction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Knobs for the lattice enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Upper bound on visited enumeration nodes before giving up.
    pub max_points: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_points: DEFAULT_MAX_POINTS,
            threads: None,
        }
    }
}

impl EnumerationLimits {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn with_max_points(mut self, max_points: u64) -> Self {
        self.max_points = max_points;
        self
    }
}

pub(crate) fn check_dimension(m: u32) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidDimension(m));
    }
    Ok(())
}

/// Eigenvalue `m Σ n_i² − (Σ n_i)²` attached to the lattice vector `n`.
pub fn hl_eigenvalue(m: u32, n: &LatticeVector) -> Result<u64> {
    check_dimension(m)?;
    let expected = (m - 1) as usize;
    if n.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: n.len(),
        });
    }
    let overflow = || Error::Overflow("hl_eigenvalue");
    let mut squares: i128 = 0;
    let mut sum: i128 = 0;
    for &c in n.coords() {
        let c = c as i128;
        squares = squares.checked_add(c.checked_mul(c).ok_or_else(overflow)?).ok_or_else(overflow)?;
        sum = sum.checked_add(c).ok_or_else(overflow)?;
    }
    let q = (m as i128)
        .checked_mul(squares)
        .and_then(|a| sum.checked_mul(sum).and_then(|b| a.checked_sub(b)))
        .ok_or_else(overflow)?;
    u64::try_from(q).map_err(|_| overflow())
}

/// Exact spectrum of the Harvey–Lawson link, complete up to `lambda_max`.
pub fn hl_spectrum(m: u32, lambda_max: u64, limits: EnumerationLimits) -> Result<LinkSpectrum> {
    let tables = enumerate(m, lambda_max, limits, BTreeMap::<u64, u64>::new, |table, _, q| {
        *table.entry(q).or_insert(0) += 1;
    })?;
    let mut merged = BTreeMap::new();
    for table in tables {
        for (q, mult) in table {
            *merged.entry(q).or_insert(0u64) += mult;
        }
    }
    let entries = merged
        .into_iter()
        .map(|(q, mult)| SpectrumEntry::new(BigRational::from_integer(BigInt::from(q)), mult))
        .collect();
    LinkSpectrum::new(m, entries, BigRational::from_integer(BigInt::from(lambda_max)))
}

/// Every lattice vector with eigenvalue exactly `lambda`, in lexicographic order.
pub fn hl_eigenvectors(m: u32, lambda: u64, limits: EnumerationLimits) -> Result<Vec<LatticeVector>> {
    let parts = enumerate(m, lambda, limits, Vec::new, |found, coords, q| {
        if q == lambda {
            found.push(LatticeVector(coords.to_vec()));
        }
    })?;
    let mut all: Vec<LatticeVector> = parts.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}

/// Walks every `n` with `Q(n) <= lambda_max`, partitioned by the first
/// coordinate. Returns one accumulator per first-coordinate value, in
/// increasing order of that value.
fn enumerate<A, I, V>(m: u32, lambda_max: u64, limits: EnumerationLimits, init: I, visit: V) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[i64], u64) + Sync,
{
    check_dimension(m)?;
    let ctx = Context {
        m: m as i128,
        dims: (m - 1) as usize,
        bound: lambda_max as i128,
        limit: limits.max_points,
        visited: AtomicU64::new(0),
    };
    let first = match ctx.feasible_range(0, 0, 0)? {
        Some((lo, hi)) => (lo..=hi).collect::<Vec<i64>>(),
        None => Vec::new(),
    };

    let run = |x: &i64| -> Result<A> {
        let mut walker = Walker {
            ctx: &ctx,
            coords: vec![0; ctx.dims],
            pending: 0,
            acc: init(),
            visit: &visit,
        };
        walker.place(0, *x, 0, 0)?;
        walker.flush()?;
        Ok(walker.acc)
    };

    match limits.threads {
        Some(1) => first.iter().map(run).collect(),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
            pool.install(|| first.par_iter().map(run).collect())
        }
        None => first.par_iter().map(run).collect(),
    }
}

struct Context {
    m: i128,
    dims: usize,
    bound: i128,
    limit: u64,
    visited: AtomicU64,
}

impl Context {
    /// Integer values `x` for the coordinate at `depth` such that some real
    /// completion of the remaining coordinates keeps `Q <= bound`, given the
    /// partial square sum `p` and partial sum `s` of the coordinates before it.
    ///
    /// With `r` coordinates still free after `x`, the minimum of `Q` over real
    /// completions is `m (p' − s'² / (m − r))`, where `p' = p + x²` and
    /// `s' = s + x`. The admissible set in `x` is an interval since the
    /// condition is a convex quadratic in `x`.
    fn feasible_range(&self, depth: usize, p: i128, s: i128) -> Result<Option<(i64, i64)>> {
        let r = (self.dims - depth - 1) as i128;
        let c = self.m - r;
        let a = c - 1;
        let excess = |x: i128| -> Result<i128> {
            let overflow = || Error::Overflow("lattice enumeration");
            // m (a x² − 2 s x + c p − s²) − bound c
            let t = a
                .checked_mul(x.checked_mul(x).ok_or_else(overflow)?)
                .and_then(|v| v.checked_sub(s.checked_mul(x)?.checked_mul(2)?))
                .and_then(|v| v.checked_add(c.checked_mul(p)?))
                .and_then(|v| v.checked_sub(s.checked_mul(s)?))
                .and_then(|v| v.checked_mul(self.m))
                .and_then(|v| v.checked_sub(self.bound.checked_mul(c)?))
                .ok_or_else(overflow)?;
            Ok(t)
        };
        let floor = s.div_euclid(a);
        let start = match (excess(floor)? <= 0, excess(floor + 1)? <= 0) {
            (true, _) => floor,
            (false, true) => floor + 1,
            (false, false) => return Ok(None),
        };
        let mut lo = start;
        while excess(lo - 1)? <= 0 {
            lo -= 1;
        }
        let mut hi = start;
        while excess(hi + 1)? <= 0 {
            hi += 1;
        }
        let to_i64 = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("lattice coordinate"));
        Ok(Some((to_i64(lo)?, to_i64(hi)?)))
    }
}

struct Walker<'a, A, V> {
    ctx: &'a Context,
    coords: Vec<i64>,
    pending: u64,
    acc: A,
    visit: &'a V,
}

impl<A, V> Walker<'_, A, V>
where
    V: Fn(&mut A, &[i64], u64),
{
    const FLUSH_EVERY: u64 = 1 << 12;

    fn place(&mut self, depth: usize, x: i64, p: i128, s: i128) -> Result<()> {
        self.pending += 1;
        if self.pending >= Self::FLUSH_EVERY {
            self.flush()?;
        }
        self.coords[depth] = x;
        let x = x as i128;
        let p = p + x * x;
        let s = s + x;
        if depth + 1 == self.ctx.dims {
            let q = self.ctx.m * p - s * s;
            debug_assert!(q >= 0 && q <= self.ctx.bound);
            (self.visit)(&mut self.acc, &self.coords, q as u64);
            return Ok(());
        }
        if let Some((lo, hi)) = self.ctx.feasible_range(depth + 1, p, s)? {
            for next in lo..=hi {
                self.place(depth + 1, next, p, s)?;
            }
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.ctx.visited.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.ctx.limit {
            return Err(Error::ResourceLimit { limit: self.ctx.limit });
        }
        Ok(())
    }
}
