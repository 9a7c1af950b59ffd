//! Spectrum and configuration files.
//!
//! Both are JSON documents. Rationals are written as `[numerator, denominator]`
//! integer pairs so no value ever passes through floating point. The writers
//! emit a fixed field order and layout, so identical inputs give identical
//! bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{Number, Value};

use crate::cone::ConeDescriptor;
use crate::error::{Error, Result};
use crate::lattice::EnumerationLimits;
use crate::moduli::{eigenvalue_bound_for_rate, Component, MultiEndCone, SingularConfig, SingularPoint, TopologyData};
use crate::spectrum::{LinkSpectrum, SpectrumEntry};

/// A spectrum together with the optional cone data stored alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumFile {
    pub spectrum: LinkSpectrum,
    pub b0: Option<u64>,
    pub dim_g: Option<u64>,
}

impl SpectrumFile {
    pub fn new(spectrum: LinkSpectrum, b0: Option<u64>, dim_g: Option<u64>) -> Self {
        SpectrumFile { spectrum, b0, dim_g }
    }

    pub fn to_json(&self) -> String {
        let s = &self.spectrum;
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"m\": {},", s.m());
        if let Some(b0) = self.b0 {
            let _ = writeln!(out, "  \"b0\": {b0},");
        }
        if let Some(g) = self.dim_g {
            let _ = writeln!(out, "  \"dim_g\": {g},");
        }
        let c = s.complete_up_to();
        let _ = writeln!(out, "  \"complete_up_to\": [{}, {}],", c.numer(), c.denom());
        out.push_str("  \"entries\": [");
        for (i, e) in s.entries().iter().enumerate() {
            out.push_str(if i == 0 { "\n" } else { ",\n" });
            let _ = write!(out, "    [{}, {}, {}]", e.lambda().numer(), e.lambda().denom(), e.mult());
        }
        out.push_str("\n  ]\n}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda_num,lambda_den,mult\n");
        for e in self.spectrum.entries() {
            let _ = writeln!(out, "{},{},{}", e.lambda().numer(), e.lambda().denom(), e.mult());
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpectrumDoc = parse_json(text)?;
        doc.into_file()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
        SpectrumFile::from_json(&text).map_err(|e| match e {
            Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
            other => other,
        })
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            Error::Format(e.inner().to_string())
        } else {
            Error::Format(format!("field '{path}': {}", e.inner()))
        }
    })
}

fn big_int(n: &Number, what: &str) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Format(format!("{what}: expected an integer, got {n}")))
}

fn rational(num: &Number, den: &Number, what: &str) -> Result<BigRational> {
    let num = big_int(num, what)?;
    let den = big_int(den, what)?;
    if den.is_zero() {
        return Err(Error::Format(format!("{what}: zero denominator")));
    }
    if den.is_negative() || !num.gcd(&den).is_one() {
        return Err(Error::Format(format!("{what}: rational {num}/{den} is not in lowest terms")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumDoc {
    m: u32,
    #[serde(default)]
    b0: Option<u64>,
    #[serde(default)]
    dim_g: Option<u64>,
    complete_up_to: (Number, Number),
    entries: Vec<(Number, Number, u64)>,
}

impl SpectrumDoc {
    fn into_file(self) -> Result<SpectrumFile> {
        let complete = rational(&self.complete_up_to.0, &self.complete_up_to.1, "complete_up_to")?;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, (n, d, k))| Ok(SpectrumEntry::new(rational(n, d, &format!("entries[{i}]"))?, *k)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpectrumFile {
            spectrum: LinkSpectrum::new(self.m, entries, complete)?,
            b0: self.b0,
            dim_g: self.dim_g,
        })
    }
}

// ---------------------------------------------------------------------------
// Configuration files

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    m: u32,
    #[serde(default)]
    family_dim: u64,
    #[serde(default)]
    transverse: bool,
    topology: TopologyDoc,
    points: Vec<PointDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyDoc {
    b1_x_prime: u64,
    restriction_rank: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    #[serde(default)]
    cone: Option<Value>,
    #[serde(default)]
    components: Option<Vec<Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DescriptorDoc {
    spectrum: Value,
    #[serde(default)]
    b0: Option<u64>,
    #[serde(default)]
    dim_g: Option<u64>,
    #[serde(default)]
    label: Option<String>,
}

fn from_value<T: serde::de::DeserializeOwned>(value: Value, field: &str) -> Result<T> {
    let inner: std::result::Result<T, _> = serde_path_to_error::deserialize(value);
    inner.map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            Error::InvalidConfig(format!("field '{field}': {}", e.inner()))
        } else {
            Error::InvalidConfig(format!("field '{field}.{path}': {}", e.inner()))
        }
    })
}

/// A parsed configuration file with every cone resolved to a spectrum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliConfig {
    pub config: SingularConfig,
    pub transverse: bool,
}

/// Builds Harvey–Lawson cones on demand and caches them by `m`.
struct Resolver {
    base_dir: PathBuf,
    hl_lambda_max: u64,
    limits: EnumerationLimits,
    hl_cache: BTreeMap<u32, ConeDescriptor>,
    file_cache: BTreeMap<PathBuf, SpectrumFile>,
}

impl Resolver {
    fn harvey_lawson(&mut self, m: u32) -> Result<ConeDescriptor> {
        if let Some(c) = self.hl_cache.get(&m) {
            return Ok(c.clone());
        }
        let cone = ConeDescriptor::harvey_lawson(m, self.hl_lambda_max, self.limits)?;
        self.hl_cache.insert(m, cone.clone());
        Ok(cone)
    }

    fn descriptor(&mut self, m: u32, doc: DescriptorDoc, field: &str) -> Result<ConeDescriptor> {
        let file = match doc.spectrum {
            Value::String(p) => {
                let p = PathBuf::from(p);
                let path = if p.is_absolute() { p } else { self.base_dir.join(p) };
                if let Some(f) = self.file_cache.get(&path) {
                    f.clone()
                } else {
                    let f = SpectrumFile::read(&path)?;
                    self.file_cache.insert(path.clone(), f.clone());
                    f
                }
            }
            inline @ Value::Object(_) => from_value::<SpectrumDoc>(inline, &format!("{field}.spectrum"))?
                .into_file()
                .map_err(|e| Error::InvalidConfig(format!("field '{field}.spectrum': {e}")))?,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "field '{field}.spectrum': expected a file path or an inline spectrum"
                )))
            }
        };
        if file.spectrum.m() != m {
            return Err(Error::InvalidConfig(format!(
                "field '{field}.spectrum': spectrum has m = {}, config has m = {m}",
                file.spectrum.m()
            )));
        }
        let b0 = doc
            .b0
            .or(file.b0)
            .ok_or_else(|| Error::InvalidConfig(format!("field '{field}.b0' is required")))?;
        let dim_g = doc
            .dim_g
            .or(file.dim_g)
            .ok_or_else(|| Error::InvalidConfig(format!("field '{field}.dim_g' is required")))?;
        ConeDescriptor::new(b0, dim_g, file.spectrum, doc.label.unwrap_or_default())
            .map_err(|e| Error::InvalidConfig(format!("field '{field}': {e}")))
    }

    fn cone(&mut self, m: u32, r: Value, field: &str) -> Result<ConeDescriptor> {
        match r {
            Value::String(name) if name == "hl" => self.harvey_lawson(m),
            Value::String(name) => Err(Error::InvalidConfig(format!(
                "field '{field}': unknown cone '{name}' (expected \"hl\" or a descriptor)"
            ))),
            obj @ Value::Object(_) => {
                let doc = from_value::<DescriptorDoc>(obj, field)?;
                self.descriptor(m, doc, field)
            }
            _ => Err(Error::InvalidConfig(format!(
                "field '{field}': expected \"hl\" or a cone descriptor object"
            ))),
        }
    }

    fn component(&mut self, m: u32, r: Value, field: &str) -> Result<Component> {
        match r {
            Value::String(name) if name == "plane" => Ok(Component::Plane),
            other => Ok(Component::Cone(self.cone(m, other, field)?)),
        }
    }
}

impl ModuliConfig {
    /// Parses a configuration document. Relative spectrum paths resolve
    /// against `base_dir`. Built-in cones are enumerated far enough to
    /// evaluate the counting function at each of `rates`.
    pub fn from_json(text: &str, base_dir: &Path, rates: &[BigRational], limits: EnumerationLimits) -> Result<Self> {
        let doc: ConfigDoc = parse_json(text).map_err(|e| match e {
            Error::Format(msg) => Error::InvalidConfig(msg),
            other => other,
        })?;
        let m = doc.m;
        if m < 3 {
            return Err(Error::InvalidConfig(format!("field 'm': must be at least 3, got {m}")));
        }
        let topology = TopologyData::new(doc.topology.b1_x_prime, doc.topology.restriction_rank)
            .map_err(|e| Error::InvalidConfig(format!("field 'topology': {e}")))?;

        let mut hl_lambda_max = 3 * (m as u64 + 1);
        for beta in rates {
            let needed = eigenvalue_bound_for_rate(m, beta).ceil().to_integer();
            let needed = needed
                .to_u64()
                .ok_or_else(|| Error::InvalidConfig(format!("rate {beta} is too large to enumerate")))?;
            hl_lambda_max = hl_lambda_max.max(needed);
        }
        let mut resolver = Resolver {
            base_dir: base_dir.to_path_buf(),
            hl_lambda_max,
            limits,
            hl_cache: BTreeMap::new(),
            file_cache: BTreeMap::new(),
        };

        if doc.points.is_empty() {
            return Err(Error::InvalidConfig("field 'points': at least one point is required".into()));
        }
        let mut points = Vec::with_capacity(doc.points.len());
        for (i, p) in doc.points.into_iter().enumerate() {
            let field = format!("points[{i}]");
            let point = match (p.cone, p.components) {
                (Some(c), None) => SingularPoint::Cone(resolver.cone(m, c, &format!("{field}.cone"))?),
                (None, Some(list)) => {
                    let mut comps = Vec::with_capacity(list.len());
                    for (j, c) in list.into_iter().enumerate() {
                        comps.push(resolver.component(m, c, &format!("{field}.components[{j}]"))?);
                    }
                    SingularPoint::MultiEnd(
                        MultiEndCone::new(m, comps)
                            .map_err(|e| Error::InvalidConfig(format!("field '{field}.components': {e}")))?,
                    )
                }
                _ => {
                    return Err(Error::InvalidConfig(format!(
                        "field '{field}': exactly one of 'cone' or 'components' is required"
                    )))
                }
            };
            points.push(point);
        }
        Ok(ModuliConfig {
            config: SingularConfig::with_points(m, points, topology, doc.family_dim)?,
            transverse: doc.transverse,
        })
    }

    pub fn read(path: &Path, rates: &[BigRational], limits: EnumerationLimits) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        ModuliConfig::from_json(&text, base, rates, limits)
    }
}
