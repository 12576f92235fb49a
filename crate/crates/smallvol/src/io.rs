//! JSON interchange: polytope files, map files, witness chains, and
//! verification reports. JSON is the single external format; every parse
//! error is reported as [`Error::BadInput`] rather than a panic.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::catalog::WitnessStage;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::polytope::LatticePolytope;
use crate::transform::UnimodularMap;

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntegerMatrix::from_rows(&rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    matrix: Vec<Vec<i64>>,
    translation: Vec<i64>,
}

impl Serialize for UnimodularMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            matrix: self.matrix().row_vecs(),
            translation: self.translation().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnimodularMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        let m = IntegerMatrix::from_rows(&raw.matrix).map_err(|e| D::Error::custom(e.to_string()))?;
        UnimodularMap::new(m, raw.translation).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// On-disk polytope: `{"name": optional, "dim": int, "vertices": [[int]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

impl PolytopeFile {
    pub fn new(name: Option<String>, p: &LatticePolytope) -> Self {
        PolytopeFile { name, dim: p.dim(), vertices: p.vertices().to_vec() }
    }

    /// Validates shape (rectangular, dimension match, nonempty).
    pub fn to_polytope(&self) -> Result<LatticePolytope> {
        LatticePolytope::new(self.dim, self.vertices.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("malformed polytope file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polytope files always serialize")
    }
}

/// On-disk affine map: `{"matrix": [[int]], "translation": [int]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub matrix: Vec<Vec<i64>>,
    pub translation: Vec<i64>,
}

impl MapFile {
    pub fn new(map: &UnimodularMap) -> Self {
        MapFile {
            matrix: map.matrix().row_vecs(),
            translation: map.translation().to_vec(),
        }
    }

    pub fn to_map(&self) -> Result<UnimodularMap> {
        let m = IntegerMatrix::from_rows(&self.matrix)?;
        UnimodularMap::new(m, self.translation.clone())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadInput(format!("malformed map file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map files always serialize")
    }
}

/// On-disk witness chain: `{"stages": [...]}` as produced by classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub stages: Vec<WitnessStage>,
}

impl WitnessFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("malformed witness file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness files always serialize")
    }
}

/// Either accepted shape for the `apply` operation.
pub enum TransformFile {
    Map(MapFile),
    Witness(WitnessFile),
}

impl TransformFile {
    /// A witness file is an object with a `stages` key; anything else is
    /// tried as a plain map file.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::BadInput(format!("malformed transform file: {e}")))?;
        if value.get("stages").is_some() {
            let w = serde_json::from_value(value)
                .map_err(|e| Error::BadInput(format!("malformed witness file: {e}")))?;
            Ok(TransformFile::Witness(w))
        } else {
            let m = serde_json::from_value(value)
                .map_err(|e| Error::BadInput(format!("malformed map file: {e}")))?;
            Ok(TransformFile::Map(m))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Indeterminate,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    pub details: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn pass(id: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: CheckStatus::Pass, details: details.into(), witness: None }
    }

    pub fn fail(id: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult { id: id.into(), status: CheckStatus::Fail, details: details.into(), witness: None }
    }

    pub fn indeterminate(id: impl Into<String>, details: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            status: CheckStatus::Indeterminate,
            details: details.into(),
            witness: None,
        }
    }
}

/// Outcome of a verification suite. Ordering of checks is deterministic for
/// a given suite and inputs, regardless of worker scheduling.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckResult>) -> Self {
        Report { suite: suite.into(), checks }
    }

    pub fn n_failed(&self) -> usize {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count()
    }

    pub fn n_indeterminate(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Indeterminate)
            .count()
    }

    /// 0 iff no check failed; indeterminate results never mask a failure.
    pub fn exit_code(&self) -> i32 {
        if self.n_failed() > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Plain-text rendering, one line per check plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {}: {}\n", c.status, c.id, c.details));
        }
        out.push_str(&format!(
            "suite {}: {} checks, {} failed, {} indeterminate\n",
            self.suite,
            self.checks.len(),
            self.n_failed(),
            self.n_indeterminate()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{classify, make_simplex, pyramid, replay_witness, FamilyId, DEFAULT_BUDGET};

    #[test]
    fn polytope_file_round_trip() {
        let p = make_simplex(FamilyId::Delta2, &[2]).unwrap();
        let f = PolytopeFile::new(Some("demo".into()), &p);
        let back = PolytopeFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_polytope().unwrap(), p);
    }

    #[test]
    fn malformed_polytope_files_are_rejected() {
        assert!(PolytopeFile::from_json("{").is_err());
        assert!(PolytopeFile::from_json("{\"dim\": 2}").is_err());
        // non-rectangular vertex array
        let jag = PolytopeFile::from_json(
            "{\"dim\": 2, \"vertices\": [[0, 0], [1]]}",
        )
        .unwrap();
        assert!(jag.to_polytope().is_err());
        // out-of-range integer
        assert!(PolytopeFile::from_json(
            "{\"dim\": 1, \"vertices\": [[99999999999999999999999]]}"
        )
        .is_err());
    }

    #[test]
    fn map_file_validates_unimodularity() {
        let good = MapFile {
            matrix: vec![vec![1, 1], vec![0, 1]],
            translation: vec![3, -2],
        };
        assert!(good.to_map().is_ok());
        let bad = MapFile {
            matrix: vec![vec![2, 0], vec![0, 1]],
            translation: vec![0, 0],
        };
        assert!(bad.to_map().is_err());
    }

    #[test]
    fn witness_file_round_trips_through_json() {
        let tower = pyramid(&make_simplex(FamilyId::Delta3, &[1, 2]).unwrap()).unwrap();
        let c = classify(&tower, DEFAULT_BUDGET).unwrap();
        let f = WitnessFile { stages: c.witness.clone() };
        let back = WitnessFile::from_json(&f.to_json()).unwrap();
        assert_eq!(back.stages, c.witness);
        assert_eq!(
            replay_witness(&tower, &back.stages).unwrap(),
            make_simplex(FamilyId::Delta3, &[1, 2]).unwrap()
        );
    }

    #[test]
    fn transform_file_distinguishes_shapes() {
        let as_map = TransformFile::from_json(
            "{\"matrix\": [[1, 0], [0, 1]], \"translation\": [1, 1]}",
        )
        .unwrap();
        assert!(matches!(as_map, TransformFile::Map(_)));
        let as_witness = TransformFile::from_json("{\"stages\": []}").unwrap();
        assert!(matches!(as_witness, TransformFile::Witness(_)));
        assert!(TransformFile::from_json("[1, 2]").is_err());
    }

    #[test]
    fn report_exit_codes() {
        let ok = Report::new("demo", vec![CheckResult::pass("a", "fine")]);
        assert_eq!(ok.exit_code(), 0);
        let ind = Report::new(
            "demo",
            vec![CheckResult::pass("a", ""), CheckResult::indeterminate("b", "budget")],
        );
        assert_eq!(ind.exit_code(), 0);
        let bad = Report::new(
            "demo",
            vec![CheckResult::pass("a", ""), CheckResult::fail("b", "broken")],
        );
        assert_eq!(bad.exit_code(), 1);
        let text = bad.render_text();
        assert!(text.contains("[fail] b: broken"));
        assert!(text.contains("1 failed"));
    }
}
