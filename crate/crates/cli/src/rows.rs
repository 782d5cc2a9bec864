use qutrit_geometry::bound::{certify_point, CertifyOptions};
use qutrit_geometry::criteria::{classify, Classification, Label};
use qutrit_geometry::families::{FamilyKind, FamilyPoint};
use qutrit_geometry::measure::hs_measure;
use qutrit_geometry::Error;
use serde::Serialize;
use serde_json::{json, Value};

use crate::certs::WitnessRecord;
use crate::error::CliResult;
use crate::number::{fmt12, round12};

/// One classified grid point.
#[derive(Clone, Debug)]
pub struct Row {
    pub point: FamilyPoint,
    pub classification: Classification,
    pub hs_measure: Option<f64>,
    pub witness: Option<WitnessRecord>,
}

impl Row {
    pub fn witness_id(&self) -> Option<&str> {
        self.witness.as_ref().map(|w| w.witness_id.as_str())
    }
}

/// Classifies `point`, attaches the closed-form measure for two-parameter
/// families and a certificate for bound entangled qutrit points.
pub fn evaluate(point: &FamilyPoint, options: CertifyOptions) -> CliResult<Row> {
    let classification = classify(point)?;
    let label = classification.label;
    let (hs, witness) = match point {
        FamilyPoint::Qubit(_) | FamilyPoint::Qutrit2(_) if label != Label::Invalid => {
            match hs_measure(point) {
                Ok(m) => {
                    let record = WitnessRecord::from_measure(&m, point)?;
                    (Some(m.hs_measure), record)
                }
                Err(Error::NotEntangledRegion) if label == Label::Separable => (Some(0.0), None),
                Err(Error::NotEntangledRegion) => (None, None),
                Err(e) => return Err(e.into()),
            }
        }
        FamilyPoint::Qutrit3(_) | FamilyPoint::Horodecki(_) if label == Label::BoundEntangled => {
            let outcome = certify_point(point, options)?;
            let record = outcome
                .certificate()
                .and_then(|c| WitnessRecord::from_certificate(c, point));
            (None, record)
        }
        _ => (None, None),
    };
    Ok(Row {
        point: *point,
        classification,
        hs_measure: hs,
        witness,
    })
}

pub fn csv_header(kind: FamilyKind) -> Vec<String> {
    kind.param_names()
        .iter()
        .map(|s| s.to_string())
        .chain(
            [
                "label",
                "min_eig",
                "min_pt_eig",
                "realign_sum",
                "hs_measure",
                "witness_id",
            ]
            .iter()
            .map(|s| s.to_string()),
        )
        .collect()
}

pub fn csv_record(row: &Row) -> Vec<String> {
    let c = &row.classification;
    row.point
        .params()
        .into_iter()
        .map(fmt12)
        .chain([
            c.label.as_str().to_string(),
            fmt12(c.min_eigenvalue),
            fmt12(c.min_pt_eigenvalue),
            fmt12(c.realignment_sum),
            row.hs_measure.map(fmt12).unwrap_or_default(),
            row.witness_id().unwrap_or_default().to_string(),
        ])
        .collect()
}

#[derive(Serialize)]
struct JsonRow<'a> {
    params: Vec<Option<f64>>,
    label: &'static str,
    provenance: &'static str,
    min_eig: Option<f64>,
    min_pt_eig: Option<f64>,
    realign_sum: Option<f64>,
    hs_measure: Option<f64>,
    witness_id: Option<&'a str>,
}

pub fn json_row(row: &Row) -> Value {
    let c = &row.classification;
    serde_json::to_value(JsonRow {
        params: row.point.params().into_iter().map(round12).collect(),
        label: c.label.as_str(),
        provenance: c.provenance.as_str(),
        min_eig: round12(c.min_eigenvalue),
        min_pt_eig: round12(c.min_pt_eigenvalue),
        realign_sum: round12(c.realignment_sum),
        hs_measure: row.hs_measure.and_then(round12),
        witness_id: row.witness_id(),
    })
    .expect("rows serialize")
}

pub fn json_table(kind: FamilyKind, rows: &[Row]) -> Value {
    json!({
        "family": kind.to_string(),
        "param_names": kind.param_names(),
        "rows": rows.iter().map(json_row).collect::<Vec<_>>(),
    })
}
