//! JSON map files.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use quadmap_core::autnorm::AutParams;
use quadmap_core::exactalg::{HoloPoly, VariableSpace};
use quadmap_core::qmap::QuadricMap;
use quadmap_core::quadric::Hyperquadric;

use crate::parse::parse_expression;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sig {
    pub n: usize,
    pub ell: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// What a corpus entry was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// `ψ` of the normal form, as expressions.
    pub psi: Vec<String>,
    /// The target automorphism applied to the normal form.
    pub gamma: AutParams,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub source: Sig,
    pub target: Sig,
    pub f: Vec<String>,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<String>,
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruth>,
}

/// Schema violations, each tagged with a JSON path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub issues: Vec<(String, String)>,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (path, msg)) in self.issues.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{path}: {msg}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SchemaError {}

impl MapFile {
    pub fn from_map(map: &QuadricMap) -> Self {
        let sig = |q: &Hyperquadric| Sig {
            n: q.n(),
            ell: q.ell(),
        };
        MapFile {
            source: sig(&map.source),
            target: sig(&map.target),
            f: map.f.iter().map(|p| p.to_string()).collect(),
            g: map.g.to_string(),
            denominator: map.denom.as_ref().map(|d| d.to_string()),
            metadata: Metadata::default(),
            ground_truth: None,
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.metadata.name = Some(name.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Validates a JSON document and builds the map; every problem found is reported.
    pub fn parse_json(text: &str) -> Result<(MapFile, QuadricMap), SchemaError> {
        let v: Value = serde_json::from_str(text).map_err(|e| SchemaError {
            issues: vec![("$".into(), format!("invalid JSON: {e}"))],
        })?;
        let mut issues = Vec::new();
        let Some(obj) = v.as_object() else {
            return Err(SchemaError {
                issues: vec![("$".into(), "expected an object".into())],
            });
        };
        for key in obj.keys() {
            if ![
                "source",
                "target",
                "f",
                "g",
                "denominator",
                "metadata",
                "ground_truth",
            ]
            .contains(&key.as_str())
            {
                issues.push((format!("$.{key}"), "unknown field".into()));
            }
        }
        let source = sig_at(&v, "source", &mut issues);
        let target = sig_at(&v, "target", &mut issues);
        let space = source.and_then(|s| VariableSpace::new(s.n).ok());
        let mut f = Vec::new();
        let mut f_text = Vec::new();
        match v.get("f") {
            Some(Value::Array(items)) => {
                if let Some(t) = target {
                    if items.len() + 1 != t.n {
                        issues.push((
                            "$.f".into(),
                            format!(
                                "expected {} components (target n - 1), got {}",
                                t.n.saturating_sub(1),
                                items.len()
                            ),
                        ));
                    }
                }
                for (k, item) in items.iter().enumerate() {
                    let path = format!("$.f[{k}]");
                    if let Some(p) = expr_at(item, &path, space, &mut issues) {
                        f.push(p);
                    }
                    f_text.push(item.as_str().unwrap_or_default().to_string());
                }
            }
            Some(_) => issues.push((
                "$.f".into(),
                "expected an array of expression strings".into(),
            )),
            None => issues.push(("$.f".into(), "missing field".into())),
        }
        let g = match v.get("g") {
            Some(item) => expr_at(item, "$.g", space, &mut issues),
            None => {
                issues.push(("$.g".into(), "missing field".into()));
                None
            }
        };
        let denom = match v.get("denominator") {
            None | Some(Value::Null) => None,
            Some(item) => {
                let d = expr_at(item, "$.denominator", space, &mut issues);
                if let Some(d) = &d {
                    if d.constant_term().is_zero() {
                        issues.push((
                            "$.denominator".into(),
                            "denominator vanishes at the origin".into(),
                        ));
                    }
                }
                d
            }
        };
        let metadata = match v.get("metadata") {
            None | Some(Value::Null) => Metadata::default(),
            Some(m) => match serde_json::from_value::<Metadata>(m.clone()) {
                Ok(m) => m,
                Err(e) => {
                    issues.push(("$.metadata".into(), e.to_string()));
                    Metadata::default()
                }
            },
        };
        let ground_truth = match v.get("ground_truth") {
            None | Some(Value::Null) => None,
            Some(m) => match serde_json::from_value::<GroundTruth>(m.clone()) {
                Ok(m) => Some(m),
                Err(e) => {
                    issues.push(("$.ground_truth".into(), e.to_string()));
                    None
                }
            },
        };
        if !issues.is_empty() {
            return Err(SchemaError { issues });
        }
        let (source, target, g) = (source.unwrap(), target.unwrap(), g.unwrap());
        let src_q = Hyperquadric::standard(source.n, source.ell).expect("checked");
        let tgt_q = Hyperquadric::standard(target.n, target.ell).expect("checked");
        let built = match denom {
            Some(d) => QuadricMap::rational(src_q, tgt_q, f, g, d),
            None => QuadricMap::new(src_q, tgt_q, f, g),
        };
        let map = built.map_err(|e| SchemaError {
            issues: vec![("$".into(), e.to_string())],
        })?;
        let file = MapFile {
            source,
            target,
            f: f_text,
            g: v["g"].as_str().unwrap_or_default().to_string(),
            denominator: v
                .get("denominator")
                .and_then(Value::as_str)
                .map(str::to_string),
            metadata,
            ground_truth,
        };
        Ok((file, map))
    }
}

fn sig_at(v: &Value, key: &str, issues: &mut Vec<(String, String)>) -> Option<Sig> {
    let path = format!("$.{key}");
    let Some(s) = v.get(key) else {
        issues.push((path, "missing field".into()));
        return None;
    };
    let field = |name: &str, issues: &mut Vec<(String, String)>| -> Option<usize> {
        match s.get(name).and_then(Value::as_u64) {
            Some(x) => Some(x as usize),
            None => {
                issues.push((
                    format!("{path}.{name}"),
                    "expected a nonnegative integer".into(),
                ));
                None
            }
        }
    };
    let n = field("n", issues);
    let ell = field("ell", issues);
    let (n, ell) = (n?, ell?);
    if n < 2 {
        issues.push((format!("{path}.n"), "must be at least 2".into()));
        return None;
    }
    if ell > n - 1 {
        issues.push((
            format!("{path}.ell"),
            format!("must be at most n - 1 = {}", n - 1),
        ));
        return None;
    }
    Some(Sig { n, ell })
}

fn expr_at(
    item: &Value,
    path: &str,
    space: Option<VariableSpace>,
    issues: &mut Vec<(String, String)>,
) -> Option<HoloPoly> {
    let Some(text) = item.as_str() else {
        issues.push((path.into(), "expected an expression string".into()));
        return None;
    };
    let space = space?;
    match parse_expression(text, space) {
        Ok(p) => Some(p),
        Err(e) => {
            issues.push((path.into(), e.to_string()));
            None
        }
    }
}

/// Gallery entry by name.
pub fn gallery_map(name: &str) -> Option<QuadricMap> {
    use quadmap_core::gallery;
    match name {
        "paper-5.1" => Some(gallery::example_degenerate()),
        "paper-5.2" => Some(gallery::example_sharp()),
        "linear" => Some(gallery::linear_embedding()),
        _ => None,
    }
}

pub const GALLERY: [&str; 3] = ["paper-5.1", "paper-5.2", "linear"];

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Schema(SchemaError),
    UnknownExample(String),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "{e}"),
            LoadError::Schema(e) => write!(f, "{e}"),
            LoadError::UnknownExample(n) => {
                write!(
                    f,
                    "unknown example '{n}'; available: {}",
                    GALLERY.join(", ")
                )
            }
        }
    }
}

/// Loads `examples:NAME` from the gallery or a JSON file from disk.
pub fn load_map(spec: &str) -> Result<(MapFile, QuadricMap), LoadError> {
    if let Some(name) = spec.strip_prefix("examples:") {
        let map = gallery_map(name).ok_or_else(|| LoadError::UnknownExample(name.to_string()))?;
        return Ok((MapFile::from_map(&map).with_name(name), map));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| LoadError::Io(format!("{spec}: {e}")))?;
    MapFile::parse_json(&text).map_err(LoadError::Schema)
}

pub fn save_map(file: &MapFile, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, file.to_json() + "\n")
}
