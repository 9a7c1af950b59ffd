//! Self-check battery for the Harvey–Lawson family.

use crate::cone::{check_lower_bounds, stability_index, ConeDescriptor, StabilityReport};
use crate::error::Result;
use crate::lattice::EnumerationLimits;

/// Published `(m, N_Σ(2), m_Σ(2), s-ind)` for `C^m_HL`, `3 <= m <= 12`.
pub const HL_REFERENCE: [(u32, i64, u64, i64); 10] = [
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

/// Smallest `m` from which `N_Σ(2) = 2m² + 1` and `m_Σ(2) = s-ind = m² − m`.
pub const CLOSED_FORM_FROM: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlRow {
    pub m: u32,
    pub n2: i64,
    pub m2: u64,
    pub s_ind: i64,
    pub stable: bool,
    pub rigid: bool,
}

pub fn hl_report(m: u32, limits: EnumerationLimits) -> Result<(ConeDescriptor, StabilityReport)> {
    let cone = ConeDescriptor::harvey_lawson(m, 2 * m as u64, limits)?;
    let report = stability_index(&cone)?;
    Ok((cone, report))
}

pub fn hl_row(m: u32, limits: EnumerationLimits) -> Result<HlRow> {
    let (_, r) = hl_report(m, limits)?;
    Ok(HlRow {
        m,
        n2: r.n2,
        m2: r.m2,
        s_ind: r.s_ind,
        stable: r.stable,
        rigid: r.rigid,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Runs every check for `3 <= m <= m_max`.
pub fn verify_battery(m_max: u32, limits: EnumerationLimits) -> Result<Vec<Check>> {
    crate::lattice::check_dimension(m_max)?;
    let mut checks = Vec::new();
    for m in 3..=m_max {
        let (cone, r) = hl_report(m, limits)?;
        let mi = m as i64;
        if let Some(&(_, n2, m2, s)) = HL_REFERENCE.iter().find(|row| row.0 == m) {
            checks.push(Check::new(
                format!("reference row m={m}"),
                (r.n2, r.m2, r.s_ind) == (n2, m2, s),
                format!("computed ({}, {}, {}), expected ({n2}, {m2}, {s})", r.n2, r.m2, r.s_ind),
            ));
        }
        if m >= CLOSED_FORM_FROM {
            let (n2, m2) = (2 * mi * mi + 1, mi * mi - mi);
            checks.push(Check::new(
                format!("closed form m={m}"),
                r.n2 == n2 && r.m2 as i64 == m2 && r.s_ind == m2,
                format!("computed N(2)={} m(2)={} s-ind={}, expected {n2}, {m2}, {m2}", r.n2, r.m2, r.s_ind),
            ));
        }
        let bounds = check_lower_bounds(&cone)?;
        let failed: Vec<&str> = bounds.iter().filter(|b| !b.holds).map(|b| b.name).collect();
        checks.push(Check::new(
            format!("lower bounds m={m}"),
            failed.is_empty(),
            if failed.is_empty() { "all hold".to_string() } else { format!("failed: {}", failed.join("; ")) },
        ));
        checks.push(Check::new(
            format!("m(0) = 1, m(1) = 2m  m={m}"),
            r.m0 == 1 && r.m1 as i64 == 2 * mi,
            format!("m(0)={}, m(1)={}", r.m0, r.m1),
        ));
        checks.push(Check::new(format!("s-ind >= 0 m={m}"), r.s_ind >= 0, format!("s-ind={}", r.s_ind)));
        checks.push(Check::new(
            format!("stable => rigid m={m}"),
            !r.stable || r.rigid,
            format!("stable={}, rigid={}", r.stable, r.rigid),
        ));
        checks.push(Check::new(
            format!("stable iff m=3, rigid iff m not in {{8,9}}  m={m}"),
            r.stable == (m == 3) && r.rigid == (m != 8 && m != 9),
            format!("stable={}, rigid={}", r.stable, r.rigid),
        ));
    }
    Ok(checks)
}
