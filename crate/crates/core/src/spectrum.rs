//! Link spectra and the growth rates they induce on the cone.
//!
//! A homogeneous function `r^α v(σ)` on the cone `C'` is harmonic iff `v` is
//! an eigenfunction of the link Laplacian with eigenvalue `α(α + m − 2)`.
//! Each eigenvalue `λ` therefore yields two rates
//!
//! ```text
//! α±(λ) = (2 − m ± sqrt((m − 2)² + 4λ)) / 2
//! ```
//!
//! with `α+ >= 0` and `α- <= 2 − m`. Rates are generally irrational, so a
//! [`GrowthRate`] stores only the source eigenvalue and the branch; every
//! comparison against a rational parameter is reduced to a comparison of
//! rationals through the monotonicity of `α ↦ α(α + m − 2)` on each branch.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::check_dimension;

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `α(α + m − 2)`: the link eigenvalue belonging to rate `α`.
pub fn rate_eigenvalue(m: u32, alpha: &BigRational) -> BigRational {
    alpha * (alpha + int(m as i64 - 2))
}

/// Spectrum of the round `S^{m−1}`, the link of a plane `R^m`: eigenvalues
/// `k(k + m − 2)` with multiplicity `C(k+m−1, m−1) − C(k+m−3, m−1)`.
pub fn round_sphere_spectrum(m: u32, lambda_max: &BigRational) -> Result<LinkSpectrum> {
    check_dimension(m)?;
    let n = BigInt::from(m - 1);
    let binom = |top: i64| {
        if top < m as i64 - 1 {
            BigInt::zero()
        } else {
            num_integer::binomial(BigInt::from(top), n.clone())
        }
    };
    let mut entries = Vec::new();
    let mut k: i64 = 0;
    loop {
        let lambda = int(k * (k + m as i64 - 2));
        if lambda > *lambda_max {
            break;
        }
        let mult = (binom(k + m as i64 - 1) - binom(k + m as i64 - 3))
            .to_u64()
            .ok_or(Error::Overflow("round_sphere_spectrum"))?;
        entries.push(SpectrumEntry::new(lambda, mult));
        k += 1;
    }
    let bound = if lambda_max.is_negative() { int(0) } else { lambda_max.clone() };
    LinkSpectrum::new(m, entries, bound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    lambda: BigRational,
    mult: u64,
}

impl SpectrumEntry {
    pub fn new(lambda: BigRational, mult: u64) -> Self {
        SpectrumEntry { lambda, mult }
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn mult(&self) -> u64 {
        self.mult
    }
}

/// Eigenvalues of the link Laplacian with multiplicities, known to be
/// exhaustive up to `complete_up_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSpectrum {
    m: u32,
    entries: Vec<SpectrumEntry>,
    complete_up_to: BigRational,
}

impl LinkSpectrum {
    pub fn new(m: u32, entries: Vec<SpectrumEntry>, complete_up_to: BigRational) -> Result<Self> {
        check_dimension(m)?;
        if complete_up_to.is_negative() {
            return Err(Error::InvalidSpectrum("complete_up_to must be nonnegative".into()));
        }
        match entries.first() {
            Some(e) if e.lambda.is_zero() => {}
            _ => return Err(Error::InvalidSpectrum("missing eigenvalue 0 (constants)".into())),
        }
        for e in &entries {
            if e.lambda.is_negative() {
                return Err(Error::InvalidSpectrum(format!("negative eigenvalue {}", e.lambda)));
            }
            if e.mult == 0 {
                return Err(Error::InvalidSpectrum(format!("zero multiplicity at {}", e.lambda)));
            }
            if e.lambda > complete_up_to {
                return Err(Error::InvalidSpectrum(format!(
                    "eigenvalue {} exceeds complete_up_to {}",
                    e.lambda, complete_up_to
                )));
            }
        }
        if let Some(w) = entries.windows(2).find(|w| w[0].lambda >= w[1].lambda) {
            return Err(Error::InvalidSpectrum(format!(
                "entries not strictly increasing at {} -> {}",
                w[0].lambda, w[1].lambda
            )));
        }
        Ok(LinkSpectrum {
            m,
            entries,
            complete_up_to,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn complete_up_to(&self) -> &BigRational {
        &self.complete_up_to
    }

    /// Multiplicity of `lambda`; zero when it is not an eigenvalue.
    /// Does not check completeness.
    pub fn multiplicity(&self, lambda: &BigRational) -> u64 {
        self.entries
            .binary_search_by(|e| e.lambda.cmp(lambda))
            .map(|i| self.entries[i].mult)
            .unwrap_or(0)
    }

    pub fn require_complete(&self, lambda: &BigRational) -> Result<()> {
        if *lambda > self.complete_up_to {
            return Err(Error::truncated(lambda, &self.complete_up_to));
        }
        Ok(())
    }

    /// Spectrum of the disjoint union of two links in the same `C^m`.
    pub fn disjoint_union(&self, other: &LinkSpectrum) -> Result<LinkSpectrum> {
        if self.m != other.m {
            return Err(Error::InvalidSpectrum(format!(
                "cannot join spectra with m = {} and m = {}",
                self.m, other.m
            )));
        }
        let bound = (&self.complete_up_to).min(&other.complete_up_to).clone();
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => a.next().unwrap().clone(),
                (None, Some(_)) => b.next().unwrap().clone(),
                (Some(x), Some(y)) => match x.lambda.cmp(&y.lambda) {
                    Ordering::Less => a.next().unwrap().clone(),
                    Ordering::Greater => b.next().unwrap().clone(),
                    Ordering::Equal => {
                        let mult = x.mult.checked_add(y.mult).ok_or(Error::Overflow("multiplicity"))?;
                        let lambda = x.lambda.clone();
                        a.next();
                        b.next();
                        SpectrumEntry::new(lambda, mult)
                    }
                },
            };
            if next.lambda <= bound {
                entries.push(next);
            }
        }
        LinkSpectrum::new(self.m, entries, bound)
    }

    /// Every growth rate in the closed interval `[lo, hi]`, ascending, with
    /// its multiplicity.
    pub fn growth_rates(&self, lo: &BigRational, hi: &BigRational) -> Result<Vec<(GrowthRate, u64)>> {
        if lo > hi {
            return Ok(Vec::new());
        }
        // Upper rates <= hi need λ <= p(hi); lower rates >= lo need λ <= p(lo).
        if !hi.is_negative() {
            self.require_complete(&rate_eigenvalue(self.m, hi))?;
        }
        if *lo <= self.lower_origin() {
            self.require_complete(&rate_eigenvalue(self.m, lo))?;
        }
        let mut out = Vec::new();
        for e in &self.entries {
            for branch in [Branch::Lower, Branch::Upper] {
                let rate = GrowthRate::new(self.m, e.lambda.clone(), branch);
                if rate.cmp_rational(lo) != Ordering::Less && rate.cmp_rational(hi) != Ordering::Greater {
                    out.push((rate, e.mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// `m_Σ(α)`: multiplicity of the eigenvalue `α(α + m − 2)`.
    pub fn mult_at_rate(&self, alpha: &BigRational) -> Result<u64> {
        if alpha.is_negative() && *alpha > self.lower_origin() {
            // (2 − m, 0) carries no rates.
            return Ok(0);
        }
        let lambda = rate_eigenvalue(self.m, alpha);
        self.require_complete(&lambda)?;
        Ok(self.multiplicity(&lambda))
    }

    /// Whether `alpha` is a growth rate of this link.
    pub fn is_rate(&self, alpha: &BigRational) -> Result<bool> {
        Ok(self.mult_at_rate(alpha)? > 0)
    }

    /// Signed counting function `N_Σ(δ)`.
    ///
    /// For `δ >= 0` this is the total multiplicity of rates in `[0, δ]`; for
    /// `δ < 0` it is minus the total multiplicity of rates in `(δ, 0)`.
    pub fn counting_n(&self, delta: &BigRational) -> Result<i64> {
        let overflow = || Error::Overflow("counting function");
        if !delta.is_negative() {
            let threshold = rate_eigenvalue(self.m, delta);
            self.require_complete(&threshold)?;
            let mut total: i64 = 0;
            for e in self.entries.iter().take_while(|e| e.lambda <= threshold) {
                total = total.checked_add(i64::try_from(e.mult).map_err(|_| overflow())?).ok_or_else(overflow)?;
            }
            return Ok(total);
        }
        if *delta >= self.lower_origin() {
            return Ok(0);
        }
        // Lower rates α-(λ) > δ exactly when λ < δ(δ + m − 2).
        let threshold = rate_eigenvalue(self.m, delta);
        self.require_complete(&threshold)?;
        let mut total: i64 = 0;
        for e in self.entries.iter().take_while(|e| e.lambda < threshold) {
            total = total.checked_sub(i64::try_from(e.mult).map_err(|_| overflow())?).ok_or_else(overflow)?;
        }
        Ok(total)
    }

    /// Supremum of rates `μ ∈ (2, 3)` with `(2, μ] ∩ D_Σ = ∅`.
    pub fn admissible_rate_sup(&self) -> Result<RateSup> {
        let m = self.m as i64;
        let ceiling = int(3 * (m + 1));
        self.require_complete(&ceiling)?;
        let two_m = int(2 * m);
        match self.entries.iter().find(|e| e.lambda > two_m) {
            Some(e) if e.lambda < ceiling => Ok(RateSup::Below(GrowthRate::new(self.m, e.lambda.clone(), Branch::Upper))),
            _ => Ok(RateSup::UpTo(int(3))),
        }
    }

    fn lower_origin(&self) -> BigRational {
        int(2 - self.m as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// `α <= 2 − m`
    Lower,
    /// `α >= 0`
    Upper,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Lower => "lower",
            Branch::Upper => "upper",
        })
    }
}

/// A root of `α(α + m − 2) = λ`, identified by `λ` and its branch.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrowthRate {
    m: u32,
    lambda: BigRational,
    branch: Branch,
}

impl GrowthRate {
    pub fn new(m: u32, lambda: BigRational, branch: Branch) -> Self {
        debug_assert!(!lambda.is_negative());
        GrowthRate { m, lambda, branch }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// `(m − 2)² + 4λ`
    pub fn discriminant(&self) -> BigRational {
        let k = int(self.m as i64 - 2);
        &k * &k + &self.lambda * int(4)
    }

    /// The rate as an exact rational, when the discriminant is a rational square.
    pub fn exact(&self) -> Option<BigRational> {
        let d = self.discriminant();
        let root = rational_sqrt(&d)?;
        let base = int(2 - self.m as i64);
        let v = match self.branch {
            Branch::Upper => base + root,
            Branch::Lower => base - root,
        };
        Some(v / int(2))
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.discriminant().to_f64().unwrap_or(f64::INFINITY).sqrt();
        let base = 2.0 - self.m as f64;
        match self.branch {
            Branch::Upper => (base + d) / 2.0,
            Branch::Lower => (base - d) / 2.0,
        }
    }

    /// Exact comparison of this rate against a rational.
    pub fn cmp_rational(&self, delta: &BigRational) -> Ordering {
        let p = || rate_eigenvalue(self.m, delta);
        match self.branch {
            // α+ >= 0 and α ↦ α(α+m−2) increases on [0, ∞).
            Branch::Upper => {
                if delta.is_negative() {
                    Ordering::Greater
                } else {
                    self.lambda.cmp(&p())
                }
            }
            // α- <= 2 − m and α ↦ α(α+m−2) decreases on (−∞, 2 − m].
            Branch::Lower => {
                if *delta > int(2 - self.m as i64) {
                    Ordering::Less
                } else {
                    p().cmp(&self.lambda)
                }
            }
        }
    }
}

impl PartialOrd for GrowthRate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrowthRate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.m.cmp(&other.m).then(match (self.branch, other.branch) {
            (Branch::Lower, Branch::Upper) => Ordering::Less,
            (Branch::Upper, Branch::Lower) => Ordering::Greater,
            (Branch::Upper, Branch::Upper) => self.lambda.cmp(&other.lambda),
            (Branch::Lower, Branch::Lower) => other.lambda.cmp(&self.lambda),
        })
    }
}

impl fmt::Display for GrowthRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.exact() {
            return write!(f, "{v}");
        }
        let sign = match self.branch {
            Branch::Upper => '+',
            Branch::Lower => '-',
        };
        write!(f, "({}{}sqrt({}))/2", 2 - self.m as i64, sign, self.discriminant())
    }
}

/// Supremum of admissible singularity rates in `(2, 3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RateSup {
    /// `μ` must stay strictly below this rate, which lies in `(2, 3)`.
    Below(GrowthRate),
    /// The whole interval `(2, 3)` is admissible.
    UpTo(BigRational),
}

impl RateSup {
    pub fn is_exclusive(&self) -> bool {
        matches!(self, RateSup::Below(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RateSup::Below(rate) => rate.to_f64(),
            RateSup::UpTo(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for RateSup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateSup::Below(rate) => write!(f, "< {} ≈ {:.6}", rate, rate.to_f64()),
            RateSup::UpTo(v) => write!(f, "<= {v}"),
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Parses `"p/q"` or an integer literal. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Format(format!("expected a rational 'p/q' or integer, got '{text}'"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Format(format!("zero denominator in '{text}'")));
    }
    Ok(BigRational::new(num, den))
}
