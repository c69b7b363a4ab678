//! JSON report types. Field names are part of the published schema in
//! `docs/report.schema.json`.

use fewnomial_core::{BivarPoly, IntPoly};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub text: String,
    /// `null` for the zero polynomial.
    pub degree: Option<usize>,
    /// Ascending coefficients as decimal strings.
    pub coeffs: Vec<String>,
}

impl From<&IntPoly> for PolyJson {
    fn from(p: &IntPoly) -> Self {
        PolyJson {
            text: p.to_string(),
            degree: p.degree(),
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self) -> Option<IntPoly> {
        let cs = self.coeffs.iter().map(|c| c.parse().ok()).collect::<Option<Vec<_>>>()?;
        Some(IntPoly::new(cs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivarJson {
    pub text: String,
    /// `(i, j, c)` for the term `c x^i y^j`.
    pub terms: Vec<(i64, i64, String)>,
}

impl From<&BivarPoly> for BivarJson {
    fn from(p: &BivarPoly) -> Self {
        BivarJson {
            text: p.to_string(),
            terms: p.terms().iter().map(|(i, j, c)| (*i, *j, c.to_string())).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Incomplete,
    StructureViolation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Incomplete => 3,
            Status::StructureViolation => 4,
        }
    }

    pub fn worst(self, other: Status) -> Status {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport<T> {
    pub command: String,
    pub argv: Vec<String>,
    pub inputs: serde_json::Value,
    pub status: Status,
    pub outputs: T,
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibilityJson {
    /// `irreducible`, `reducible` or `incomplete`.
    pub status: String,
    pub method: String,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub value: f64,
    pub error_bound: f64,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhiteheadOut {
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub fw: PolyJson,
    pub cyclotomic: Vec<(u64, u32)>,
    pub x2p1_multiplicity: u32,
    pub quotient: PolyJson,
    /// `F'(i) / (i-1)^{m-1}` as `[re, im]`.
    pub witness: Option<(String, String)>,
    pub trace_poly: PolyJson,
    pub trace_field_degree: usize,
    pub quotient_irreducibility: IrreducibilityJson,
    pub n_threshold: String,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedJson {
    pub case: String,
    pub modulus: u64,
    pub d: u64,
    pub index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub n: u64,
    /// `U mod Φ_n`; non-zero means `Φ_n` divides exactly once.
    pub remainder: PolyJson,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LehmerJson {
    pub measure: MeasureJson,
    pub threshold: f64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeichOut {
    pub a: u64,
    pub b: u64,
    pub gt: PolyJson,
    pub predicted: Vec<PredictedJson>,
    pub observed: Vec<(u64, u32)>,
    pub matches_prediction: bool,
    pub witnesses: Vec<WitnessJson>,
    pub cofactor: PolyJson,
    pub cofactor_reciprocal: bool,
    pub cofactor_cyclotomic_free: bool,
    pub cofactor_irreducibility: IrreducibilityJson,
    pub lehmer: LehmerJson,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOut {
    pub poly: PolyJson,
    pub unit: i8,
    pub content: String,
    pub cyclotomic: Vec<(u64, u32)>,
    pub reciprocal_noncyclotomic: Vec<(PolyJson, u32)>,
    pub nonreciprocal_part: PolyJson,
    /// Irreducible factors with multiplicity, sorted canonically.
    pub factors: Vec<(PolyJson, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MahlerOut {
    pub bivariate: bool,
    pub measure: MeasureJson,
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternMemberJson {
    pub poly: BivarJson,
    pub factor_pair: (BivarJson, BivarJson),
    pub systems: usize,
    pub nonzero_ab: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmvOut {
    #[serde(rename = "J")]
    pub j: usize,
    pub size: usize,
    pub sizes: Vec<usize>,
    pub pattern_members: Vec<PatternMemberJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptTOut {
    pub triples: Vec<(u64, u64, u64)>,
    pub matches_classification: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: u64,
    pub n: u64,
    pub deg: usize,
    pub cyclotomic: String,
    pub verdict: String,
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOut {
    pub rows: Vec<SweepRow>,
}
