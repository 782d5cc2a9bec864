use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use qutrit_geometry::bound::{Certificate, CertificateMethod};
use qutrit_geometry::families::{FamilyKind, FamilyPoint};
use qutrit_geometry::measure::MeasureResult;
use qutrit_geometry::witness::{Decomposition, WitnessOperator};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::number::fmt12;

/// Lemma-form coefficients as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StoredDecomposition {
    Qubit { a: f64, c: [f64; 3] },
    Qudit { d: usize, a: f64, coefficients: Vec<[f64; 2]> },
}

impl From<&Decomposition> for StoredDecomposition {
    fn from(d: &Decomposition) -> Self {
        match d {
            Decomposition::Qubit { a, c } => StoredDecomposition::Qubit { a: *a, c: *c },
            Decomposition::Qudit { d, a, coeffs } => StoredDecomposition::Qudit {
                d: *d,
                a: *a,
                coefficients: coeffs.iter().map(|z| [z.re, z.im]).collect(),
            },
        }
    }
}

impl StoredDecomposition {
    pub fn to_decomposition(&self) -> CliResult<Decomposition> {
        Ok(match self {
            StoredDecomposition::Qubit { a, c } => Decomposition::Qubit { a: *a, c: *c },
            StoredDecomposition::Qudit { d, a, coefficients } => {
                if coefficients.len() != d * d {
                    return Err(CliError::Invalid(format!(
                        "qudit decomposition with d = {d} needs {} coefficients, found {}",
                        d * d,
                        coefficients.len()
                    )));
                }
                Decomposition::Qudit {
                    d: *d,
                    a: *a,
                    coeffs: coefficients.iter().map(|[re, im]| Complex64::new(*re, *im)).collect(),
                }
            }
        })
    }

    /// Local dimension of each subsystem.
    pub fn local_dim(&self) -> usize {
        match self {
            StoredDecomposition::Qubit { .. } => 2,
            StoredDecomposition::Qudit { d, .. } => *d,
        }
    }

    fn canonical(&self) -> String {
        match self {
            StoredDecomposition::Qubit { a, c } => format!(
                "qubit;a={};c={},{},{}",
                fmt12(*a),
                fmt12(c[0]),
                fmt12(c[1]),
                fmt12(c[2])
            ),
            StoredDecomposition::Qudit { d, a, coefficients } => {
                let coeffs: Vec<String> = coefficients
                    .iter()
                    .map(|[re, im]| format!("{},{}", fmt12(*re), fmt12(*im)))
                    .collect();
                format!("qudit;d={d};a={};c={}", fmt12(*a), coeffs.join(";"))
            }
        }
    }

    /// First 16 hex digits of the SHA-256 of the coefficients at 12
    /// significant digits.
    pub fn witness_id(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        hex::encode(digest)[..16].to_string()
    }
}

/// A state the witness detects.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub family: String,
    pub params: Vec<f64>,
    pub violation: f64,
}

impl Example {
    pub fn point(&self) -> CliResult<FamilyPoint> {
        let kind: FamilyKind = self.family.parse()?;
        Ok(FamilyPoint::from_params(kind, &self.params)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub witness_id: String,
    pub method: String,
    pub method_params: BTreeMap<String, f64>,
    pub decomposition: StoredDecomposition,
    pub passes: bool,
    pub max_abs_coeff: f64,
    pub example: Example,
}

impl WitnessRecord {
    fn new(
        method: &str,
        method_params: &[(&str, f64)],
        witness: &WitnessOperator,
        point: &FamilyPoint,
        violation: f64,
    ) -> Option<Self> {
        let decomposition = StoredDecomposition::from(witness.decomposition()?);
        let verdict = witness.verdict()?;
        Some(WitnessRecord {
            witness_id: decomposition.witness_id(),
            method: method.to_string(),
            method_params: method_params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            decomposition,
            passes: verdict.passes,
            max_abs_coeff: verdict.max_abs_coeff,
            example: Example {
                family: point.kind().to_string(),
                params: point.params(),
                violation,
            },
        })
    }

    pub fn from_certificate(cert: &Certificate, point: &FamilyPoint) -> Option<Self> {
        match cert.method {
            CertificateMethod::RealignmentTangent { beta, gamma } => Self::new(
                "realignment-tangent",
                &[("beta", beta), ("gamma", gamma)],
                &cert.witness,
                point,
                cert.violation,
            ),
            CertificateMethod::LambdaLine { spec, lambda } => Self::new(
                "lambda-line",
                &[
                    ("epsilon", spec.epsilon),
                    ("gamma", spec.gamma),
                    ("lambda", lambda),
                ],
                &cert.witness,
                point,
                cert.violation,
            ),
        }
    }

    pub fn from_measure(m: &MeasureResult, point: &FamilyPoint) -> CliResult<Option<Self>> {
        let violation = qutrit_geometry::witness::witness_violation(&m.witness, &point.state()?)?;
        Ok(Self::new(
            "hs-measure",
            &[("nearest_alpha", m.nearest.0), ("nearest_beta", m.nearest.1)],
            &m.witness,
            point,
            violation,
        ))
    }
}

/// Certificates keyed by witness id. The first record inserted under an id
/// is kept.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WitnessStore {
    pub records: BTreeMap<String, WitnessRecord>,
}

impl WitnessStore {
    pub fn insert(&mut self, record: WitnessRecord) {
        self.records.entry(record.witness_id.clone()).or_insert(record);
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(self).expect("records serialize");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| CliError::io(path, e))
    }
}
