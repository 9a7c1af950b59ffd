#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;
use slcone_core::{
    dim_e, dim_k, dim_o, dim_o_multi_end, fredholm_index, hl_eigenvalue, hl_eigenvectors, hl_spectrum,
    stability_index, stability_index_in_family, BigInt, BigRational, Branch, Component, ConeDescriptor,
    EnumerationLimits, GrowthRate, LatticeVector, LinkSpectrum, MultiEndCone, SingularConfig, SingularPoint,
    TopologyData,
};

pub type Check = Result<(), String>;

/// Published `(m, N(2), m(2), s-ind)` rows.
pub const TABLE: [(u32, i64, u64, i64); 10] = [
    (3, 13, 6, 0),
    (4, 27, 12, 6),
    (5, 51, 20, 20),
    (6, 93, 30, 50),
    (7, 169, 42, 112),
    (8, 311, 126, 238),
    (9, 331, 240, 240),
    (10, 201, 90, 90),
    (11, 243, 110, 110),
    (12, 289, 132, 132),
];

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

pub fn hl(m: u32) -> ConeDescriptor {
    ConeDescriptor::harvey_lawson(m, 2 * m as u64, limits()).expect("HL cone")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// Multiplicities of `m Σn² − (Σn)²` up to `lambda_max`, by scanning the
/// Euclidean ball `Σn² <= lambda_max` (valid since the form dominates `Σn²`).
pub fn ball_oracle(m: u32, lambda_max: i64) -> BTreeMap<i64, u64> {
    fn rec(m: i64, k: usize, coords: &mut Vec<i64>, sq: i64, bound: i64, out: &mut BTreeMap<i64, u64>) {
        if coords.len() == k {
            let s: i64 = coords.iter().sum();
            let val = m * sq - s * s;
            if val <= bound {
                *out.entry(val).or_insert(0) += 1;
            }
            return;
        }
        let r = ((bound - sq) as f64).sqrt() as i64 + 1;
        for x in -r..=r {
            if sq + x * x <= bound {
                coords.push(x);
                rec(m, k, coords, sq + x * x, bound, out);
                coords.pop();
            }
        }
    }
    let mut out = BTreeMap::new();
    rec(m as i64, (m - 1) as usize, &mut Vec::new(), 0, lambda_max, &mut out);
    out
}

/// `N(δ)` straight from an eigenvalue table, using real roots of
/// `α² + (m−2)α − λ = 0` compared with a rational `δ` by squaring.
pub fn counting_oracle(m: u32, table: &BTreeMap<i64, u64>, delta: &BigRational) -> i64 {
    let mut total = 0i64;
    for (&lambda, &mult) in table {
        let lam = BigRational::from_integer(BigInt::from(lambda));
        for upper in [true, false] {
            let in_range = root_in_signed_range(m, &lam, upper, delta);
            total += in_range * mult as i64;
        }
    }
    total
}

/// +1 if the root lies in `[0, δ]`, −1 if it lies in `(δ, 0)`, else 0.
fn root_in_signed_range(m: u32, lam: &BigRational, upper: bool, delta: &BigRational) -> i64 {
    let zero = BigRational::from_integer(BigInt::from(0));
    let root_vs = |x: &BigRational| -> Ordering {
        // sign of (root − x) via f(x) = x² + (m−2)x − λ and the vertex at (2−m)/2
        let fx = x * x + BigRational::from_integer(BigInt::from(m as i64 - 2)) * x - lam;
        let vertex = q(2 - m as i64, 2);
        if upper {
            if *x < vertex {
                Ordering::Greater
            } else {
                zero.cmp(&fx)
            }
        } else if *x > vertex {
            Ordering::Less
        } else {
            fx.cmp(&zero)
        }
    };
    let vs_zero = root_vs(&zero);
    let vs_delta = root_vs(delta);
    if *delta >= zero {
        if vs_zero != Ordering::Less && vs_delta != Ordering::Greater {
            return 1;
        }
    } else if vs_delta == Ordering::Greater && vs_zero == Ordering::Less {
        return -1;
    }
    0
}

pub fn spectrum_matches_oracle(m: u32, lambda_max: u64) -> Check {
    let s = hl_spectrum(m, lambda_max, limits()).map_err(err)?;
    let oracle = ball_oracle(m, lambda_max as i64);
    let got: BTreeMap<i64, u64> = s
        .entries()
        .iter()
        .map(|e| (e.lambda().to_integer().try_into().unwrap(), e.mult()))
        .collect();
    ensure(got == oracle, || format!("m={m}: spectrum {got:?} != oracle {oracle:?}"))
}

fn f64_rate(m: u32, lambda: f64, upper: bool) -> f64 {
    let k = m as f64 - 2.0;
    let d = (k * k + 4.0 * lambda).sqrt();
    if upper {
        (-k + d) / 2.0
    } else {
        (-k - d) / 2.0
    }
}

/// Exact comparison agrees with float root evaluation outside a 1e-9 band.
pub fn comparison_law(m: u32, lambda: &BigRational, upper: bool, delta: &BigRational) -> Check {
    let branch = if upper { Branch::Upper } else { Branch::Lower };
    let rate = GrowthRate::new(m, lambda.clone(), branch);
    let lf = ratio_f64(lambda);
    let df = ratio_f64(delta);
    let root = f64_rate(m, lf, upper);
    let exact = rate.cmp_rational(delta);
    if (root - df).abs() > 1e-9 {
        let float = root.partial_cmp(&df).unwrap();
        ensure(exact == float, || {
            format!("m={m} λ={lambda} upper={upper} δ={delta}: exact {exact:?}, float {float:?}")
        })?;
    }
    Ok(())
}

/// At an exact rational root the comparison is `Equal`, and tiny rational
/// offsets on either side are ordered correctly.
pub fn comparison_at_root(m: u32, a: &BigRational) -> Check {
    let lambda = a * a + BigRational::from_integer(BigInt::from(m as i64 - 2)) * a;
    let upper = *a >= q(2 - m as i64, 2);
    let branch = if upper { Branch::Upper } else { Branch::Lower };
    let rate = GrowthRate::new(m, lambda.clone(), branch);
    let eps = q(1, 1_000_000_000_000);
    let checks = [
        (a.clone(), Ordering::Equal),
        (a - &eps, Ordering::Greater),
        (a + &eps, Ordering::Less),
    ];
    for (d, want) in checks {
        let got = rate.cmp_rational(&d);
        ensure(got == want, || format!("m={m} a={a} δ={d}: got {got:?}, want {want:?}"))?;
    }
    ensure(rate.exact().as_ref() == Some(a), || format!("m={m} a={a}: exact() = {:?}", rate.exact()))
}

fn ratio_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap();
    let d: f64 = r.denom().to_string().parse().unwrap();
    n / d
}

/// A rational strictly between two consecutive rates, checked exactly.
fn rational_between(a: &GrowthRate, b: &GrowthRate) -> Result<BigRational, String> {
    let mid = (a.to_f64() + b.to_f64()) / 2.0;
    let scale = 1i64 << 24;
    let r = q((mid * scale as f64).round() as i64, scale);
    if a.cmp_rational(&r) == Ordering::Less && b.cmp_rational(&r) == Ordering::Greater {
        Ok(r)
    } else {
        Err(format!("no dyadic rational found between {a} and {b}"))
    }
}

/// Monotonicity and jump structure of `N` on HL spectra: each rate raises it
/// by its multiplicity, rational rates take the value on their right, and
/// every sample matches the direct count.
pub fn counting_structure(m: u32) -> Check {
    let k = 3i64;
    let lambda_max = k * (k + m as i64 - 2);
    let spectrum = hl_spectrum(m, lambda_max as u64, limits()).map_err(err)?;
    let oracle = ball_oracle(m, lambda_max);
    let hi = q(k, 1);
    let lo = q(2 - m as i64 - k, 1);
    let rates = spectrum.growth_rates(&lo, &hi).map_err(err)?;
    ensure(!rates.is_empty(), || format!("m={m}: no rates"))?;
    let n_at = |d: &BigRational| -> Result<i64, String> {
        let got = spectrum.counting_n(d).map_err(err)?;
        let want = counting_oracle(m, &oracle, d);
        ensure(got == want, || format!("m={m}: N({d}) = {got}, oracle {want}"))?;
        Ok(got)
    };
    // N is right-continuous, so a rate sitting exactly at `lo` contributes
    // nothing observable inside the complete range and is skipped.
    let rates: Vec<_> = rates.into_iter().skip_while(|(r, _)| r.exact().as_ref() == Some(&lo)).collect();
    let mut samples = vec![lo.clone()];
    for w in rates.windows(2) {
        samples.push(rational_between(&w[0].0, &w[1].0)?);
    }
    samples.push(hi.clone());
    let mut prev = n_at(&samples[0])?;
    for (i, (rate, mult)) in rates.iter().enumerate() {
        let next = n_at(&samples[i + 1])?;
        ensure(next >= prev, || format!("m={m}: N decreases across {rate}"))?;
        ensure(next - prev == *mult as i64, || {
            format!("m={m}: jump at {rate} is {}, multiplicity {mult}", next - prev)
        })?;
        if let Some(exact) = rate.exact() {
            let at = n_at(&exact)?;
            ensure(at == next, || format!("m={m}: N({exact}) = {at}, right value {next}"))?;
        }
        prev = next;
    }
    Ok(())
}

/// `N ≡ 0` on `(2 − m, 0)`.
pub fn counting_zero_gap(spectrum: &LinkSpectrum, delta: &BigRational) -> Check {
    let n = spectrum.counting_n(delta).map_err(err)?;
    ensure(n == 0, || format!("m={}: N({delta}) = {n}", spectrum.m()))
}

/// `hl_eigenvalue(n) = Σnᵢ² + Σ_{i<j}(nᵢ − nⱼ)²` on every vector with
/// coordinates in `[-r, r]`.
pub fn quadratic_identity_exhaustive(m: u32, r: i64) -> Check {
    let k = (m - 1) as usize;
    let width = (2 * r + 1) as usize;
    let total = width.pow(k as u32);
    for idx in 0..total {
        let mut rem = idx;
        let coords: Vec<i64> = (0..k)
            .map(|_| {
                let c = (rem % width) as i64 - r;
                rem /= width;
                c
            })
            .collect();
        quadratic_identity(m, &coords)?;
    }
    Ok(())
}

pub fn quadratic_identity(m: u32, coords: &[i64]) -> Check {
    let mut want: i64 = coords.iter().map(|c| c * c).sum();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            want += (coords[i] - coords[j]).pow(2);
        }
    }
    let got = hl_eigenvalue(m, &LatticeVector::new(coords.to_vec())).map_err(err)?;
    ensure(got as i64 == want, || format!("m={m} n={coords:?}: Q = {got}, identity gives {want}"))
}

/// Spectra and eigenvector lists agree across 1, 2 and 8 threads.
pub fn thread_determinism(m: u32, lambda_max: u64) -> Check {
    let run = |t: usize| {
        let l = limits().with_threads(t);
        let s = hl_spectrum(m, lambda_max, l).map_err(err)?;
        let v = hl_eigenvectors(m, lambda_max, l).map_err(err)?;
        Ok::<_, String>((s, v))
    };
    let base = run(1)?;
    for t in [2, 8] {
        ensure(run(t)? == base, || format!("m={m}: output differs with {t} threads"))?;
    }
    Ok(())
}

pub fn sind_nonnegative_and_stable_rigid(m: u32) -> Check {
    let r = stability_index(&hl(m)).map_err(err)?;
    ensure(r.s_ind >= 0, || format!("m={m}: s-ind = {}", r.s_ind))?;
    ensure(!r.stable || r.rigid, || format!("m={m}: stable but not rigid"))
}

/// The three obstruction-dimension expressions, evaluated in test code,
/// agree with each other, with the published per-cone indices and with
/// `dim_o` on a random configuration of HL cones.
pub fn obstruction_consistency<R: Rng>(rng: &mut R, cones: &BTreeMap<u32, ConeDescriptor>) -> Check {
    let m = *cones.keys().nth(rng.gen_range(0..cones.len())).unwrap();
    let n = rng.gen_range(1..=6usize);
    let b1 = rng.gen_range(0..20u64);
    let rank = rng.gen_range(0..=b1);
    let cfg = SingularConfig::new(vec![cones[&m].clone(); n], TopologyData::new(b1, rank).map_err(err)?, 0)
        .map_err(err)?;
    let published = TABLE.iter().find(|r| r.0 == m).unwrap();
    let mi = m as i64;
    let ni = n as i64;
    let n2_sum = ni * published.1;
    let b0_sum = ni;
    let g_sum = ni * (mi - 1);
    let e = dim_e(&cfg).map_err(err)?;
    let k = dim_k(&cfg).map_err(err)?;
    ensure(e == ni * (mi * mi + 2 * mi - 1) - g_sum, || format!("dim E = {e}"))?;
    ensure(k == b0_sum - 1, || format!("dim K = {k}"))?;
    let via_spaces = n2_sum - e - k - 1;
    let expanded = n2_sum - ni * (mi * mi + 2 * mi - 1) + g_sum - b0_sum;
    let per_cone = ni * published.3;
    let o = dim_o(&cfg).map_err(err)?;
    ensure(via_spaces == expanded && expanded == per_cone && per_cone == o, || {
        format!("m={m} n={n}: {via_spaces}, {expanded}, {per_cone}, dim_o {o}")
    })
}

/// One-component multi-end point counts the same as the plain cone.
pub fn multi_end_single_component(cone: &ConeDescriptor) -> Check {
    let m = cone.m();
    let me = MultiEndCone::new(m, vec![Component::Cone(cone.clone())]).map_err(err)?;
    let multi = dim_o_multi_end(std::slice::from_ref(&me), m).map_err(err)?;
    let cfg = SingularConfig::new(vec![cone.clone()], TopologyData::new(0, 0).unwrap(), 0).map_err(err)?;
    let single = dim_o(&cfg).map_err(err)?;
    ensure(multi == single, || format!("m={m}: multi-end {multi}, single cone {single}"))?;
    let mixed = SingularConfig::with_points(m, vec![SingularPoint::MultiEnd(me)], TopologyData::new(0, 0).unwrap(), 0)
        .map_err(err)?;
    let via_config = dim_o(&mixed).map_err(err)?;
    ensure(via_config == single, || format!("m={m}: config with multi-end point gives {via_config}"))
}

/// With `dim 𝒞 = m² − 1 − dim G` the family index is the plain index.
pub fn family_index_reduces(cone: &ConeDescriptor) -> Check {
    let m = cone.m() as u64;
    let c = m * m - 1 - cone.sym_dim();
    let fam = stability_index_in_family(cone, c).map_err(err)?;
    let s = stability_index(cone).map_err(err)?.s_ind;
    ensure(fam == s, || format!("m={m}: family index {fam}, s-ind {s}"))
}

/// With two or more components, `dim O` for independently rotating
/// components falls below the count for the union treated as one rigidly
/// rotating cone (trivial symmetry group), by exactly
/// `Σ_j (m² − 1 − dim G_j) − (m² − 1)`. Also checks the expanded form
/// `Σ_j s-ind_j + 2m(k − 1)`.
pub fn multi_end_below_union(components: &[ConeDescriptor]) -> Check {
    let m = components[0].m();
    let mi = m as i64;
    let k = components.len() as i64;
    let me = MultiEndCone::new(m, components.iter().cloned().map(Component::Cone).collect()).map_err(err)?;
    let multi = dim_o_multi_end(std::slice::from_ref(&me), m).map_err(err)?;
    let mut s_sum = 0;
    for c in components {
        s_sum += stability_index(c).map_err(err)?.s_ind;
    }
    ensure(multi == s_sum + 2 * mi * (k - 1), || format!("m={m}: multi-end {multi}, expanded {}", s_sum + 2 * mi * (k - 1)))?;
    let mut union = components[0].spectrum().clone();
    for c in &components[1..] {
        union = union.disjoint_union(c.spectrum()).map_err(err)?;
    }
    let b0: u64 = components.iter().map(|c| c.link_components()).sum();
    let union_cone = ConeDescriptor::new(b0, 0, union, "union").map_err(err)?;
    let single = stability_index(&union_cone).map_err(err)?.s_ind;
    let gap: i64 = components.iter().map(|c| mi * mi - 1 - c.sym_dim() as i64).sum::<i64>() - (mi * mi - 1);
    ensure(single - multi == gap, || format!("m={m}: union {single}, multi-end {multi}, expected gap {gap}"))?;
    ensure(multi < single, || format!("m={m}: multi-end {multi} not below union {single}"))
}

/// Fredholm index of a single HL cone against `−N(β)` from the ball oracle.
pub fn fredholm_matches_oracle(m: u32, beta: &BigRational) -> Result<Option<i64>, String> {
    let cone = ConeDescriptor::harvey_lawson(m, 40, limits()).map_err(err)?;
    let cfg = SingularConfig::new(vec![cone], TopologyData::new(0, 0).unwrap(), 0).map_err(err)?;
    let got = fredholm_index(&cfg, std::slice::from_ref(beta)).map_err(err)?;
    let oracle = ball_oracle(m, 40);
    let on_rate = oracle.keys().any(|&l| {
        let lam = BigRational::from_integer(BigInt::from(l));
        [true, false].iter().any(|&u| {
            let b = if u { Branch::Upper } else { Branch::Lower };
            GrowthRate::new(m, lam.clone(), b).cmp_rational(beta) == Ordering::Equal
        })
    });
    ensure(got.fredholm == !on_rate, || format!("β={beta}: fredholm {} but on_rate {on_rate}", got.fredholm))?;
    if got.fredholm {
        let want = -counting_oracle(m, &oracle, beta);
        ensure(got.index == Some(want), || format!("β={beta}: index {:?}, oracle {want}", got.index))?;
    }
    Ok(got.index)
}
