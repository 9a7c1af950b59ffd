//! Dimension bookkeeping for moduli of SL m-folds with conical singularities.
//!
//! Everything here is integer arithmetic on top of the per-cone stability
//! data. Topological inputs (`b¹(X′)` and the rank of the restriction to the
//! links) and transversality are supplied by the caller.

use num_rational::BigRational;
use num_traits::Signed;

use crate::cone::{stability_index, to_i64, ConeDescriptor};
use crate::error::{Error, Result};
use crate::lattice::check_dimension;
use crate::spectrum::{int, round_sphere_spectrum, LinkSpectrum};

pub const NOTE_STABLE: &str = "manifold (stable singularities)";
pub const NOTE_TRANSVERSE: &str = "smooth manifold near X (transverse)";
pub const NOTE_EXPECTED_ONLY: &str = "expected dimension only (neither stable nor transverse)";
pub const NOTE_EMPTY: &str = "negative expected dimension: generically empty";
pub const NOTE_MULTI_END: &str = "multi-end points: dim O uses independently rotating components";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopologyData {
    b1_x_prime: u64,
    restriction_rank: u64,
}

impl TopologyData {
    /// `restriction_rank` is the rank of `H¹(X′) → ⊕ H¹(Σ_i)`.
    pub fn new(b1_x_prime: u64, restriction_rank: u64) -> Result<Self> {
        if restriction_rank > b1_x_prime {
            return Err(Error::InvalidConfig(format!(
                "restriction_rank {restriction_rank} exceeds b1_x_prime {b1_x_prime}"
            )));
        }
        Ok(TopologyData {
            b1_x_prime,
            restriction_rank,
        })
    }

    pub fn b1_x_prime(&self) -> u64 {
        self.b1_x_prime
    }

    pub fn restriction_rank(&self) -> u64 {
        self.restriction_rank
    }
}

/// One connected piece of a cone whose link components may rotate
/// independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Cone(ConeDescriptor),
    /// A special Lagrangian plane `R^m`, smooth at the origin.
    Plane,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiEndCone {
    m: u32,
    components: Vec<Component>,
}

impl MultiEndCone {
    pub fn new(m: u32, components: Vec<Component>) -> Result<Self> {
        check_dimension(m)?;
        if components.is_empty() {
            return Err(Error::InvalidConfig("multi-end point needs at least one component".into()));
        }
        for c in &components {
            if let Component::Cone(cone) = c {
                if cone.m() != m {
                    return Err(Error::InvalidConfig(format!(
                        "component '{}' has m = {}, expected {m}",
                        cone.label(),
                        cone.m()
                    )));
                }
            }
        }
        Ok(MultiEndCone { m, components })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    fn link_components(&self) -> u64 {
        self.components
            .iter()
            .map(|c| match c {
                Component::Cone(cone) => cone.link_components(),
                Component::Plane => 1,
            })
            .sum()
    }
}

/// The cone data at one singular point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularPoint {
    Cone(ConeDescriptor),
    MultiEnd(MultiEndCone),
}

impl SingularPoint {
    fn link_components(&self) -> u64 {
        match self {
            SingularPoint::Cone(c) => c.link_components(),
            SingularPoint::MultiEnd(p) => p.link_components(),
        }
    }

    fn m(&self) -> u32 {
        match self {
            SingularPoint::Cone(c) => c.m(),
            SingularPoint::MultiEnd(p) => p.m(),
        }
    }

    /// Spectrum of the whole link at this point. Plane components contribute
    /// the round sphere, generated up to `bound`.
    fn spectrum(&self, bound: &BigRational) -> Result<LinkSpectrum> {
        match self {
            SingularPoint::Cone(c) => Ok(c.spectrum().clone()),
            SingularPoint::MultiEnd(p) => {
                let mut acc: Option<LinkSpectrum> = None;
                for c in &p.components {
                    let s = match c {
                        Component::Cone(cone) => cone.spectrum().clone(),
                        Component::Plane => round_sphere_spectrum(p.m, bound)?,
                    };
                    acc = Some(match acc {
                        None => s,
                        Some(a) => a.disjoint_union(&s)?,
                    });
                }
                Ok(acc.expect("multi-end point is nonempty"))
            }
        }
    }
}

/// A compact SL m-fold with conical singularities at `x_1, ..., x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularConfig {
    m: u32,
    points: Vec<SingularPoint>,
    topology: TopologyData,
    family_dim: u64,
}

impl SingularConfig {
    pub fn new(cones: Vec<ConeDescriptor>, topology: TopologyData, family_dim: u64) -> Result<Self> {
        let m = cones
            .first()
            .map(|c| c.m())
            .ok_or_else(|| Error::InvalidConfig("at least one singular point is required".into()))?;
        SingularConfig::with_points(m, cones.into_iter().map(SingularPoint::Cone).collect(), topology, family_dim)
    }

    pub fn with_points(m: u32, points: Vec<SingularPoint>, topology: TopologyData, family_dim: u64) -> Result<Self> {
        check_dimension(m)?;
        if points.is_empty() {
            return Err(Error::InvalidConfig("at least one singular point is required".into()));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.m() != m) {
            return Err(Error::InvalidConfig(format!("point {i} has m = {}, expected {m}", p.m())));
        }
        Ok(SingularConfig {
            m,
            points,
            topology,
            family_dim,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn topology(&self) -> &TopologyData {
        &self.topology
    }

    pub fn family_dim(&self) -> u64 {
        self.family_dim
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    fn single_cones(&self) -> Option<Vec<&ConeDescriptor>> {
        self.points
            .iter()
            .map(|p| match p {
                SingularPoint::Cone(c) => Some(c),
                SingularPoint::MultiEnd(_) => None,
            })
            .collect()
    }

    fn has_multi_end(&self) -> bool {
        self.points.iter().any(|p| matches!(p, SingularPoint::MultiEnd(_)))
    }
}

fn su_affine_dim(m: u32) -> i64 {
    let m = m as i64;
    m * m + 2 * m - 1
}

/// `dim E = n(m² + 2m − 1) − Σ dim G_i`. Only defined when every point
/// carries a single cone descriptor.
pub fn dim_e(config: &SingularConfig) -> Result<i64> {
    let cones = config
        .single_cones()
        .ok_or_else(|| Error::InvalidConfig("dim E is undefined for multi-end points".into()))?;
    let sym: i64 = cones.iter().map(|c| c.sym_dim() as i64).sum();
    Ok(config.n() as i64 * su_affine_dim(config.m) - sym)
}

/// `dim K = Σ b⁰(Σ_i) − 1`.
pub fn dim_k(config: &SingularConfig) -> Result<i64> {
    let total: u64 = config.points.iter().map(|p| p.link_components()).sum();
    Ok(to_i64(total)? - 1)
}

/// `dim I = b¹(X′) − rank(H¹(X′) → ⊕ H¹(Σ_i))`.
pub fn dim_i(config: &SingularConfig) -> i64 {
    (config.topology.b1_x_prime - config.topology.restriction_rank) as i64
}

/// Obstruction dimension `Σ s-ind(C_i)`. For configurations with single
/// cones the three equivalent expressions are all evaluated and compared.
/// Multi-end points are counted with [`dim_o_multi_end`].
pub fn dim_o(config: &SingularConfig) -> Result<i64> {
    let Some(cones) = config.single_cones() else {
        let mut total = 0;
        for p in &config.points {
            total += match p {
                SingularPoint::Cone(c) => stability_index(c)?.s_ind,
                SingularPoint::MultiEnd(me) => dim_o_multi_end(std::slice::from_ref(me), config.m)?,
            };
        }
        return Ok(total);
    };
    let m = config.m as i64;
    let mut n2_sum = 0;
    let mut b0_sum = 0;
    let mut sym_sum = 0;
    let mut per_cone = 0;
    let mut s_ind_sum = 0;
    for cone in &cones {
        let report = stability_index(cone)?;
        let b0 = cone.link_components() as i64;
        let g = cone.sym_dim() as i64;
        n2_sum += report.n2;
        b0_sum += b0;
        sym_sum += g;
        per_cone += report.n2 - b0 - m * m - 2 * m + 1 + g;
        s_ind_sum += report.s_ind;
    }
    let via_spaces = n2_sum - dim_e(config)? - dim_k(config)? - 1;
    let expanded = n2_sum - config.n() as i64 * su_affine_dim(config.m) + sym_sum - b0_sum;
    if via_spaces != expanded || expanded != per_cone || per_cone != s_ind_sum {
        return Err(Error::Inconsistent(format!(
            "N(2) - dim E - dim K - 1 = {via_spaces}, expanded = {expanded}, per cone = {per_cone}, sum s-ind = {s_ind_sum}"
        )));
    }
    Ok(s_ind_sum)
}

/// `Σ_i (−2m + Σ_j (s-ind(C_i^j) + 2m))`, with `s-ind = −m` for planes.
pub fn dim_o_multi_end(points: &[MultiEndCone], m: u32) -> Result<i64> {
    check_dimension(m)?;
    let two_m = 2 * m as i64;
    let mut total = 0;
    for p in points {
        if p.m != m {
            return Err(Error::InvalidConfig(format!("multi-end point has m = {}, expected {m}", p.m)));
        }
        total -= two_m;
        for c in &p.components {
            let s = match c {
                Component::Cone(cone) => stability_index(cone)?.s_ind,
                Component::Plane => -(m as i64),
            };
            total += s + two_m;
        }
    }
    Ok(total)
}

/// `N_Σ(2) − b⁰(Σ) − 2m − dim 𝒞` for a cone moving in a family of dimension
/// `family_dim_c` (including its `SU(m)` orbit).
pub fn stability_index_in_family(cone: &ConeDescriptor, family_dim_c: u64) -> Result<i64> {
    let report = stability_index(cone)?;
    Ok(report.n2 - cone.link_components() as i64 - 2 * cone.m() as i64 - to_i64(family_dim_c)?)
}

/// `(b¹(N), d + b¹(N))` for a compact nonsingular SL m-fold `N`.
pub fn mclean_dims(b1_n: u64, family_dim: u64) -> (u64, u64) {
    (b1_n, family_dim + b1_n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCase {
    /// All cones stable: dimension `d + dim I`, fibres of dimension `dim I`.
    Stable,
    /// Transverse in the family: dimension `d + dim I − dim O`.
    Transverse,
    /// Neither condition known; the value is an expected dimension.
    Expected,
}

impl FamilyCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyCase::Stable => "stable",
            FamilyCase::Transverse => "transverse",
            FamilyCase::Expected => "expected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub family_dim: u64,
    pub case: FamilyCase,
    pub expected_dim: i64,
    pub fiber_dim: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliReport {
    pub dim_e: Option<i64>,
    pub dim_k: i64,
    pub dim_i: i64,
    pub dim_o: i64,
    pub expected_dim: i64,
    pub all_stable: bool,
    pub family: Option<FamilyReport>,
    pub notes: Vec<String>,
}

fn all_stable(config: &SingularConfig) -> Result<bool> {
    for p in &config.points {
        let stable = match p {
            SingularPoint::Cone(c) => stability_index(c)?.stable,
            SingularPoint::MultiEnd(me) => dim_o_multi_end(std::slice::from_ref(me), config.m)? == 0,
        };
        if !stable {
            return Ok(false);
        }
    }
    Ok(true)
}

fn base_report(config: &SingularConfig, transverse: bool) -> Result<ModuliReport> {
    let dim_e = if config.has_multi_end() { None } else { Some(dim_e(config)?) };
    let dim_i = dim_i(config);
    let dim_o = dim_o(config)?;
    let stable = all_stable(config)?;
    let expected_dim = dim_i - dim_o;
    let mut notes = Vec::new();
    if config.has_multi_end() {
        notes.push(NOTE_MULTI_END.to_string());
    }
    if stable {
        notes.push(NOTE_STABLE.to_string());
    } else if transverse {
        notes.push(NOTE_TRANSVERSE.to_string());
    } else {
        notes.push(NOTE_EXPECTED_ONLY.to_string());
    }
    if expected_dim < 0 {
        notes.push(NOTE_EMPTY.to_string());
    }
    Ok(ModuliReport {
        dim_e,
        dim_k: dim_k(config)?,
        dim_i,
        dim_o,
        expected_dim,
        all_stable: stable,
        family: None,
        notes,
    })
}

/// Moduli space in a single almost Calabi–Yau manifold: `dim I − dim O`.
/// `transverse` only affects the interpretive notes.
pub fn expected_dim_moduli(config: &SingularConfig, transverse: bool) -> Result<ModuliReport> {
    base_report(config, transverse)
}

/// Moduli space over a `d`-dimensional family of almost Calabi–Yau
/// structures: `d + dim I − dim O` (with `dim O = 0` when all cones are stable).
pub fn expected_dim_family(config: &SingularConfig, transverse: bool) -> Result<ModuliReport> {
    let d = config.family_dim;
    if d == 0 {
        return Err(Error::InvalidConfig(
            "family_dim is 0; use the single-manifold moduli count".into(),
        ));
    }
    let mut report = base_report(config, transverse)?;
    let d_i = to_i64(d)?;
    let (case, fiber_dim) = if report.all_stable {
        (FamilyCase::Stable, Some(report.dim_i))
    } else if transverse {
        (FamilyCase::Transverse, None)
    } else {
        (FamilyCase::Expected, None)
    };
    let family_dim = d_i + report.dim_i - report.dim_o;
    if family_dim < 0 && !report.notes.iter().any(|n| n == NOTE_EMPTY) {
        report.notes.push(NOTE_EMPTY.to_string());
    }
    report.family = Some(FamilyReport {
        family_dim: d,
        case,
        expected_dim: family_dim,
        fiber_dim,
    });
    Ok(report)
}

/// Moduli count dispatching on `family_dim`.
pub fn moduli_report(config: &SingularConfig, transverse: bool) -> Result<ModuliReport> {
    if config.family_dim > 0 {
        expected_dim_family(config, transverse)
    } else {
        expected_dim_moduli(config, transverse)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FredholmResult {
    /// Every `β_i` avoids the rates of its cone.
    pub fredholm: bool,
    /// `−Σ N_Σi(β_i)`, when Fredholm.
    pub index: Option<i64>,
    /// All `β_i > 0`.
    pub injective: bool,
    /// Points whose `β_i` is a growth rate.
    pub critical_points: Vec<usize>,
}

/// Fredholm criterion and index of `f ↦ d*(ψ^m df)` on weighted spaces with
/// weight `β_i` at the `i`-th singular point.
pub fn fredholm_index(config: &SingularConfig, betas: &[BigRational]) -> Result<FredholmResult> {
    if betas.len() != config.n() {
        return Err(Error::InvalidConfig(format!(
            "expected {} rates (one per singular point), got {}",
            config.n(),
            betas.len()
        )));
    }
    let mut critical_points = Vec::new();
    let mut index: i64 = 0;
    for (i, (point, beta)) in config.points.iter().zip(betas).enumerate() {
        let spectrum = point.spectrum(&eigenvalue_bound_for_rate(config.m, beta))?;
        if spectrum.is_rate(beta)? {
            critical_points.push(i);
        } else {
            index -= spectrum.counting_n(beta)?;
        }
    }
    let fredholm = critical_points.is_empty();
    Ok(FredholmResult {
        fredholm,
        index: fredholm.then_some(index),
        injective: betas.iter().all(|b| b.is_positive()),
        critical_points,
    })
}

/// Largest eigenvalue needed to decide membership and evaluate `N_Σ(β)`.
pub fn eigenvalue_bound_for_rate(m: u32, beta: &BigRational) -> BigRational {
    let lower_origin = int(2 - m as i64);
    if beta.is_negative() && *beta > lower_origin {
        int(0)
    } else {
        crate::spectrum::rate_eigenvalue(m, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hl_spectrum, EnumerationLimits};
    use crate::spectrum::parse_rational;

    fn hl(m: u32) -> ConeDescriptor {
        ConeDescriptor::harvey_lawson(m, 0, EnumerationLimits::default()).unwrap()
    }

    fn hl_to(m: u32, lambda_max: u64) -> ConeDescriptor {
        ConeDescriptor::harvey_lawson(m, lambda_max, EnumerationLimits::default()).unwrap()
    }

    fn config(cones: Vec<ConeDescriptor>, b1: u64, rank: u64, d: u64) -> SingularConfig {
        SingularConfig::new(cones, TopologyData::new(b1, rank).unwrap(), d).unwrap()
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn with_b0(b0: u64) -> ConeDescriptor {
        let base = hl(3);
        ConeDescriptor::new(b0, 2, base.spectrum().clone(), "b0").unwrap()
    }

    #[test]
    fn dim_e_examples() {
        assert_eq!(dim_e(&config(vec![hl(3)], 0, 0, 0)).unwrap(), 12);
        assert_eq!(dim_e(&config(vec![hl(3), hl(3)], 0, 0, 0)).unwrap(), 24);
        let bare = ConeDescriptor::new(1, 0, hl(3).spectrum().clone(), "g0").unwrap();
        assert_eq!(dim_e(&config(vec![bare], 0, 0, 0)).unwrap(), 14);
    }

    #[test]
    fn dim_k_examples() {
        assert_eq!(dim_k(&config(vec![hl(3)], 0, 0, 0)).unwrap(), 0);
        assert_eq!(dim_k(&config(vec![with_b0(1), with_b0(2), with_b0(3)], 0, 0, 0)).unwrap(), 5);
        assert_eq!(dim_k(&config(vec![hl(3); 5], 0, 0, 0)).unwrap(), 4);
    }

    #[test]
    fn dim_i_examples() {
        assert_eq!(dim_i(&config(vec![hl(3)], 5, 2, 0)), 3);
        assert_eq!(dim_i(&config(vec![hl(3)], 0, 0, 0)), 0);
        assert_eq!(dim_i(&config(vec![hl(3)], 4, 0, 0)), 4);
        assert!(TopologyData::new(2, 3).is_err());
    }

    #[test]
    fn dim_o_examples() {
        assert_eq!(dim_o(&config(vec![hl(3); 3], 0, 0, 0)).unwrap(), 0);
        assert_eq!(dim_o(&config(vec![hl(4); 2], 0, 0, 0)).unwrap(), 12);
        assert_eq!(dim_o(&config(vec![hl(7)], 0, 0, 0)).unwrap(), 112);
    }

    #[test]
    fn dim_o_rejects_truncated() {
        let short = ConeDescriptor::new(1, 2, hl_spectrum(3, 4, EnumerationLimits::default()).unwrap(), "s").unwrap();
        assert!(matches!(
            dim_o(&config(vec![short], 0, 0, 0)),
            Err(Error::SpectrumTruncated { .. })
        ));
    }

    #[test]
    fn moduli_examples() {
        let r = expected_dim_moduli(&config(vec![hl(3)], 5, 0, 0), false).unwrap();
        assert_eq!(r.expected_dim, 5);
        assert!(r.notes.iter().any(|n| n == NOTE_STABLE));

        // dim I = 4, dim O = 6 (one HL m=4 cone).
        let r = expected_dim_moduli(&config(vec![hl(4)], 4, 0, 0), false).unwrap();
        assert_eq!((r.dim_i, r.dim_o, r.expected_dim), (4, 6, -2));
        assert!(r.notes.iter().any(|n| n == NOTE_EMPTY));

        let r = expected_dim_moduli(&config(vec![hl(3)], 0, 0, 0), false).unwrap();
        assert_eq!(r.expected_dim, 0);
        assert!(!r.notes.iter().any(|n| n == NOTE_EMPTY));
    }

    #[test]
    fn family_examples() {
        let r = expected_dim_family(&config(vec![hl(3)], 2, 0, 3), false).unwrap();
        let f = r.family.unwrap();
        assert_eq!((f.case, f.expected_dim, f.fiber_dim), (FamilyCase::Stable, 5, Some(2)));

        let r = expected_dim_family(&config(vec![hl(4)], 4, 0, 6), true).unwrap();
        let f = r.family.unwrap();
        assert_eq!((f.case, f.expected_dim, f.fiber_dim), (FamilyCase::Transverse, 4, None));

        assert!(expected_dim_family(&config(vec![hl(3)], 2, 0, 0), false).is_err());
    }

    #[test]
    fn fredholm_examples() {
        let one = config(vec![hl_to(3, 12)], 0, 0, 0);
        let r = fredholm_index(&one, &[q("9/4")]).unwrap();
        assert_eq!((r.fredholm, r.index, r.injective), (true, Some(-13), true));

        let two = config(vec![hl_to(3, 12), hl_to(3, 12)], 0, 0, 0);
        assert_eq!(fredholm_index(&two, &[q("9/4"), q("9/4")]).unwrap().index, Some(-26));

        let r = fredholm_index(&one, &[q("1")]).unwrap();
        assert!(!r.fredholm);
        assert_eq!(r.index, None);
        assert_eq!(r.critical_points, vec![0]);

        // Below zero: lower rates in (β, 0) count negatively.
        let r = fredholm_index(&one, &[q("-5/2")]).unwrap();
        assert_eq!((r.index, r.injective), (Some(7), false));

        assert!(fredholm_index(&one, &[q("1/2"), q("1/2")]).is_err());
        assert!(matches!(fredholm_index(&one, &[q("4")]), Err(Error::SpectrumTruncated { .. })));
    }

    #[test]
    fn multi_end_examples() {
        let planes = MultiEndCone::new(3, vec![Component::Plane, Component::Plane]).unwrap();
        assert_eq!(dim_o_multi_end(&[planes], 3).unwrap(), 0);
        let single = MultiEndCone::new(3, vec![Component::Cone(hl(3))]).unwrap();
        assert_eq!(dim_o_multi_end(&[single], 3).unwrap(), 0);
        let pair = MultiEndCone::new(4, vec![Component::Cone(hl(4)), Component::Cone(hl(4))]).unwrap();
        assert_eq!(dim_o_multi_end(&[pair], 4).unwrap(), 20);
        assert!(MultiEndCone::new(3, vec![]).is_err());
        assert!(MultiEndCone::new(3, vec![Component::Cone(hl(4))]).is_err());
    }

    #[test]
    fn plane_convention_matches_round_sphere() {
        for m in 3..=8u32 {
            let sphere = round_sphere_spectrum(m, &int(3 * m as i64)).unwrap();
            let dim_so = (m * (m - 1) / 2) as u64;
            let plane = ConeDescriptor::new(1, dim_so, sphere, "plane").unwrap();
            assert_eq!(stability_index(&plane).unwrap().s_ind, -(m as i64), "m={m}");
        }
    }

    #[test]
    fn fredholm_with_plane_component() {
        let point = MultiEndCone::new(3, vec![Component::Cone(hl_to(3, 12)), Component::Plane]).unwrap();
        let cfg = SingularConfig::with_points(3, vec![SingularPoint::MultiEnd(point)], TopologyData::new(0, 0).unwrap(), 0)
            .unwrap();
        // HL: 1 + 6 + 6 up to λ = 117/16; sphere: 1 + 3 + 5
        assert_eq!(fredholm_index(&cfg, &[q("9/4")]).unwrap().index, Some(-22));
        // β = 3 is a sphere rate only
        assert!(!fredholm_index(&cfg, &[q("3")]).unwrap().fredholm);
    }

    #[test]
    fn multi_end_config_report() {
        let point = MultiEndCone::new(4, vec![Component::Cone(hl(4)), Component::Cone(hl(4))]).unwrap();
        let cfg = SingularConfig::with_points(
            4,
            vec![SingularPoint::MultiEnd(point), SingularPoint::Cone(hl(4))],
            TopologyData::new(30, 0).unwrap(),
            0,
        )
        .unwrap();
        let r = expected_dim_moduli(&cfg, false).unwrap();
        assert_eq!(r.dim_e, None);
        assert_eq!(r.dim_k, 2);
        assert_eq!(r.dim_o, 26);
        assert_eq!(r.expected_dim, 4);
        assert!(r.notes.iter().any(|n| n == NOTE_MULTI_END));
    }

    #[test]
    fn family_index_examples() {
        assert_eq!(stability_index_in_family(&hl(3), 6).unwrap(), 0);
        assert_eq!(stability_index_in_family(&hl(3), 7).unwrap(), -1);
        for m in 3..=6 {
            let c = hl(m);
            let s = stability_index(&c).unwrap().s_ind;
            assert_eq!(stability_index_in_family(&c, c.rotation_dim() as u64).unwrap(), s);
        }
    }

    #[test]
    fn mclean_examples() {
        assert_eq!(mclean_dims(3, 0), (3, 3));
        assert_eq!(mclean_dims(0, 5), (0, 5));
        assert_eq!(mclean_dims(2, 4), (2, 6));
    }
}
