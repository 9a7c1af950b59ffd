//! Cone descriptors and the stability index.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{check_dimension, hl_spectrum, EnumerationLimits};
use crate::spectrum::{int, LinkSpectrum};

/// One special Lagrangian cone in `C^m` with an isolated singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescriptor {
    m: u32,
    link_components: u64,
    sym_dim: u64,
    spectrum: LinkSpectrum,
    label: String,
}

impl ConeDescriptor {
    /// `sym_dim` is the dimension of the subgroup of `SU(m)` preserving the
    /// cone. The multiplicity of `λ = 0` is not required to match
    /// `link_components`; [`check_lower_bounds`] reports a mismatch.
    pub fn new(
        link_components: u64,
        sym_dim: u64,
        spectrum: LinkSpectrum,
        label: impl Into<String>,
    ) -> Result<Self> {
        let m = spectrum.m();
        let su_dim = (m as u64) * (m as u64) - 1;
        if sym_dim > su_dim {
            return Err(Error::InvalidCone(format!("dim G = {sym_dim} exceeds dim SU({m}) = {su_dim}")));
        }
        if link_components == 0 {
            return Err(Error::InvalidCone("link must have at least one component".into()));
        }
        Ok(ConeDescriptor {
            m,
            link_components,
            sym_dim,
            spectrum,
            label: label.into(),
        })
    }

    /// The Harvey–Lawson cone `C^m_HL`: connected torus link, symmetry group
    /// `U(1)^{m-1}`, spectrum enumerated up to `lambda_max` (at least `2m`).
    pub fn harvey_lawson(m: u32, lambda_max: u64, limits: EnumerationLimits) -> Result<Self> {
        check_dimension(m)?;
        let lambda_max = lambda_max.max(2 * m as u64);
        let spectrum = hl_spectrum(m, lambda_max, limits)?;
        ConeDescriptor::new(1, (m - 1) as u64, spectrum, format!("HL{m}"))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn link_components(&self) -> u64 {
        self.link_components
    }

    pub fn sym_dim(&self) -> u64 {
        self.sym_dim
    }

    pub fn spectrum(&self) -> &LinkSpectrum {
        &self.spectrum
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `m² − 1 − dim G`: order-2 harmonic functions coming from `su(m)` moment maps.
    pub fn rotation_dim(&self) -> i64 {
        (self.m as i64) * (self.m as i64) - 1 - self.sym_dim as i64
    }
}

/// Order 0, 1 and 2 data of a cone at the rate threshold `2`.
#[derive(Debug, Clone, Copy)]
struct LowOrders {
    n2: i64,
    m0: u64,
    m1: u64,
    m2: u64,
}

fn low_orders(cone: &ConeDescriptor) -> Result<LowOrders> {
    let s = cone.spectrum();
    s.require_complete(&int(2 * cone.m as i64))?;
    Ok(LowOrders {
        n2: s.counting_n(&int(2))?,
        m0: s.mult_at_rate(&int(0))?,
        m1: s.mult_at_rate(&int(1))?,
        m2: s.mult_at_rate(&int(2))?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub holds: bool,
    /// Left side minus right side.
    pub margin: i64,
}

/// The relations `m_Σ(0) = b⁰(Σ)`, `m_Σ(1) >= 2m`, `m_Σ(2) >= m² − 1 − dim G`
/// and `N_Σ(2) >= m_Σ(0) + m_Σ(1) + m_Σ(2)`.
pub fn check_lower_bounds(cone: &ConeDescriptor) -> Result<Vec<BoundCheck>> {
    let o = low_orders(cone)?;
    Ok(bound_checks(cone, &o))
}

fn bound_checks(cone: &ConeDescriptor, o: &LowOrders) -> Vec<BoundCheck> {
    let m = cone.m as i64;
    let (m0, m1, m2) = (o.m0 as i64, o.m1 as i64, o.m2 as i64);
    let b0 = cone.link_components as i64;
    let zero = m0 - b0;
    let first = m1 - 2 * m;
    let second = m2 - cone.rotation_dim();
    let total = o.n2 - (m0 + m1 + m2);
    vec![
        BoundCheck {
            name: "m(0) = b0",
            holds: zero == 0,
            margin: zero,
        },
        BoundCheck {
            name: "m(1) >= 2m",
            holds: first >= 0,
            margin: first,
        },
        BoundCheck {
            name: "m(2) >= m^2-1-dim G",
            holds: second >= 0,
            margin: second,
        },
        BoundCheck {
            name: "N(2) >= m(0)+m(1)+m(2)",
            holds: total >= 0,
            margin: total,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub n2: i64,
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    pub s_ind: i64,
    pub stable: bool,
    pub rigid: bool,
    pub bound_violations: Vec<String>,
}

/// `s-ind(C) = N_Σ(2) − b⁰(Σ) − m² − 2m + 1 + dim G`, together with the
/// stable and rigid predicates.
pub fn stability_index(cone: &ConeDescriptor) -> Result<StabilityReport> {
    let o = low_orders(cone)?;
    let m = cone.m as i64;
    let s_ind = o.n2 - cone.link_components as i64 - m * m - 2 * m + 1 + cone.sym_dim as i64;
    let bound_violations = bound_checks(cone, &o)
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{} fails (margin {})", c.name, c.margin))
        .collect();
    Ok(StabilityReport {
        n2: o.n2,
        m0: o.m0,
        m1: o.m1,
        m2: o.m2,
        s_ind,
        stable: s_ind == 0,
        rigid: o.m2 as i64 == cone.rotation_dim(),
        bound_violations,
    })
}

pub(crate) fn to_i64(v: u64) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow("dimension count"))
}
