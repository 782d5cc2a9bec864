use std::path::{Path, PathBuf};

use qutrit_geometry::bound::{
    lambda_min_unchecked, total_min_search, CertifyOptions, LineSpec, EPSILON_MAX, EPSILON_MIN,
};
use qutrit_geometry::families::{isotropic_range, FamilyKind, FamilyPoint};
use qutrit_geometry::measure::hs_measure;
use qutrit_geometry::witness::{sample_separable_min, witness_violation, WitnessOperator};
use qutrit_geometry::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::certs::{WitnessRecord, WitnessStore};
use crate::error::{CliError, CliResult};
use crate::number::{fmt12, round12};
use crate::output::{csv_string, emit, json_string, sidecar_path};
use crate::range::Range;
use crate::rows::{csv_header, csv_record, evaluate, json_row, json_table, Row};
use crate::{
    Cli, Command, Format, HorodeckiArgs, LambdaMapArgs, PointArgs, ScanArgs, WitnessCheckArgs,
};

/// Separable samples may dip below zero by this much before a witness fails.
const SAMPLE_SLACK: f64 = 1e-10;

pub fn dispatch(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Classify(args) => classify(cli, args),
        Command::Scan(args) => scan(cli, args),
        Command::Horodecki(args) => horodecki(cli, args),
        Command::LambdaMap(args) => lambda_map(cli, args),
        Command::Measure(args) => measure(cli, args),
        Command::WitnessCheck(args) => witness_check(cli, args),
    }
}

/// Matches named options against the family's parameters.
fn select<T: Copy>(kind: FamilyKind, given: [(&str, Option<T>); 4]) -> CliResult<Vec<Option<T>>> {
    let names = kind.param_names();
    if let Some((name, _)) = given.iter().find(|(n, v)| v.is_some() && !names.contains(n)) {
        return Err(CliError::Usage(format!("{kind} does not take --{name}")));
    }
    Ok(names
        .iter()
        .map(|n| given.iter().find(|(g, _)| g == n).and_then(|(_, v)| *v))
        .collect())
}

fn point_from_args(args: &PointArgs) -> CliResult<FamilyPoint> {
    let kind = args.family;
    let values = select(
        kind,
        [
            ("alpha", args.alpha),
            ("beta", args.beta),
            ("gamma", args.gamma),
            ("b", args.b),
        ],
    )?;
    let params = values
        .iter()
        .zip(kind.param_names())
        .map(|(v, n)| v.ok_or_else(|| CliError::Usage(format!("{kind} needs --{n}"))))
        .collect::<CliResult<Vec<f64>>>()?;
    Ok(FamilyPoint::from_params(kind, &params)?)
}

/// Default scan box: the bounding box of the family's positivity region.
pub fn default_ranges(kind: FamilyKind) -> Vec<Range> {
    match kind {
        FamilyKind::Qubit => vec![Range::new(-1.0, 1.0, 200), Range::new(-2.0, 1.0, 200)],
        FamilyKind::Qutrit2 => vec![
            Range::new(-1.0 / 6.0, 1.0, 200),
            Range::new(-1.0 / 3.0, 1.0, 200),
        ],
        FamilyKind::Qutrit3 => vec![
            Range::new(-1.0 / 3.0, 1.0, 40),
            Range::new(-2.0 / 3.0, 1.0, 40),
            Range::new(-1.0, 1.0, 40),
        ],
        FamilyKind::Horodecki => vec![Range::new(0.0, 5.0, 501)],
        FamilyKind::Isotropic(d) => {
            let (lo, hi) = isotropic_range(d);
            vec![Range::new(lo, hi, 201)]
        }
    }
}

/// Evaluates every grid point, rows ordered with the first parameter
/// varying slowest.
pub fn scan_rows(kind: FamilyKind, ranges: &[Range], options: CertifyOptions) -> CliResult<Vec<Row>> {
    let total: usize = ranges.iter().map(|r| r.steps).product();
    (0..total)
        .into_par_iter()
        .map(|k| {
            let mut rest = k;
            let mut params = vec![0.0; ranges.len()];
            for (p, r) in params.iter_mut().zip(ranges).rev() {
                *p = r.value(rest % r.steps);
                rest /= r.steps;
            }
            evaluate(&FamilyPoint::from_params(kind, &params)?, options)
        })
        .collect()
}

fn certs_target(explicit: Option<&PathBuf>, out: Option<&PathBuf>) -> Option<PathBuf> {
    explicit.cloned().or_else(|| out.map(|p| sidecar_path(p)))
}

fn save_witnesses(path: &Path, rows: &[Row]) -> CliResult<()> {
    let mut store = WitnessStore::default();
    for w in rows.iter().filter_map(|r| r.witness.clone()) {
        store.insert(w);
    }
    store.save(path)
}

fn write_table(cli: &Cli, kind: FamilyKind, rows: &[Row], certs: Option<&PathBuf>) -> CliResult<()> {
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let records: Vec<_> = rows.iter().map(csv_record).collect();
            csv_string(&csv_header(kind), &records)
        }
        Format::Json => json_string(&json_table(kind, rows)),
    };
    emit(cli.out.as_deref(), &text)?;
    if let Some(path) = certs_target(certs, cli.out.as_ref()) {
        save_witnesses(&path, rows)?;
    }
    Ok(())
}

fn scan(cli: &Cli, args: &ScanArgs) -> CliResult<()> {
    let kind = args.family;
    let given = select(
        kind,
        [
            ("alpha", args.alpha),
            ("beta", args.beta),
            ("gamma", args.gamma),
            ("b", args.b),
        ],
    )?;
    let ranges: Vec<Range> = given
        .into_iter()
        .zip(default_ranges(kind))
        .map(|(g, d)| g.unwrap_or(d))
        .collect();
    let options = CertifyOptions {
        grid: args.cert_grid,
    };
    let rows = scan_rows(kind, &ranges, options)?;
    write_table(cli, kind, &rows, args.certs.as_ref())
}

fn horodecki(cli: &Cli, args: &HorodeckiArgs) -> CliResult<()> {
    let options = CertifyOptions {
        grid: args.cert_grid,
    };
    let rows = scan_rows(FamilyKind::Horodecki, &[args.b], options)?;
    write_table(cli, FamilyKind::Horodecki, &rows, args.certs.as_ref())
}

fn param_text(point: &FamilyPoint) -> String {
    point
        .kind()
        .param_names()
        .iter()
        .zip(point.params())
        .map(|(n, v)| format!("{n}={}", fmt12(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn classify(cli: &Cli, args: &PointArgs) -> CliResult<()> {
    let point = point_from_args(args)?;
    let row = evaluate(&point, CertifyOptions { grid: args.cert_grid })?;
    let c = &row.classification;
    let text = match cli.format {
        None => {
            let mut lines = vec![
                format!("family       {}", point.kind()),
                format!("params       {}", param_text(&point)),
                format!("label        {}", c.label),
                format!("basis        {}", c.provenance.as_str()),
                format!("min_eig      {}", fmt12(c.min_eigenvalue)),
                format!("min_pt_eig   {}", fmt12(c.min_pt_eigenvalue)),
                format!("realign_sum  {}", fmt12(c.realignment_sum)),
            ];
            if let Some(d) = row.hs_measure {
                lines.push(format!("hs_measure   {}", fmt12(d)));
            }
            if let Some(id) = row.witness_id() {
                lines.push(format!("witness_id   {id}"));
            }
            lines.join("\n") + "\n"
        }
        Some(Format::Csv) => csv_string(&csv_header(point.kind()), &[csv_record(&row)]),
        Some(Format::Json) => {
            let mut v = json_row(&row);
            v["family"] = json!(point.kind().to_string());
            v["param_names"] = json!(point.kind().param_names());
            json_string(&v)
        }
    };
    emit(cli.out.as_deref(), &text)?;
    if let Some(path) = &args.certs {
        save_witnesses(path, std::slice::from_ref(&row))?;
    }
    Ok(())
}

fn measure(cli: &Cli, args: &PointArgs) -> CliResult<()> {
    if !matches!(args.family, FamilyKind::Qubit | FamilyKind::Qutrit2) {
        return Err(CliError::Usage(format!(
            "measure covers qubit and qutrit2, not {}",
            args.family
        )));
    }
    let point = point_from_args(args)?;
    if !point.is_positive() {
        return Err(CliError::Invalid(format!(
            "{} lies outside the positivity region of {}",
            param_text(&point),
            point.kind()
        )));
    }
    let result = match hs_measure(&point) {
        Ok(m) => Some(m),
        Err(Error::NotEntangledRegion) => None,
        Err(e) => return Err(e.into()),
    };
    let record = match &result {
        Some(m) => WitnessRecord::from_measure(m, &point)?,
        None => None,
    };
    let region = result.as_ref().map_or("SeparableOrPPT", |m| m.region.as_str());
    let d = result.as_ref().map_or(0.0, |m| m.hs_measure);
    let text = match cli.format {
        None => match (&result, &record) {
            (Some(m), Some(w)) => format!(
                "region       {region}\nhs_measure   {}\nnearest      alpha={} beta={}\nwitness      lemma {}, max |c| = {}\nwitness_id   {}\n",
                fmt12(d),
                fmt12(m.nearest.0),
                fmt12(m.nearest.1),
                if w.passes { "passes" } else { "fails" },
                fmt12(w.max_abs_coeff),
                w.witness_id
            ),
            _ => "separable region, D = 0\n".to_string(),
        },
        Some(Format::Csv) => {
            let mut header = csv_header(point.kind());
            header.truncate(point.params().len());
            header.extend(
                [
                    "region",
                    "hs_measure",
                    "nearest_alpha",
                    "nearest_beta",
                    "lemma_passes",
                    "max_abs_coeff",
                    "witness_id",
                ]
                .map(String::from),
            );
            let mut rec: Vec<String> = point.params().into_iter().map(fmt12).collect();
            rec.push(region.to_string());
            rec.push(fmt12(d));
            match (&result, &record) {
                (Some(m), Some(w)) => rec.extend([
                    fmt12(m.nearest.0),
                    fmt12(m.nearest.1),
                    w.passes.to_string(),
                    fmt12(w.max_abs_coeff),
                    w.witness_id.clone(),
                ]),
                _ => rec.extend(std::iter::repeat_n(String::new(), 5)),
            }
            csv_string(&header, &[rec])
        }
        Some(Format::Json) => json_string(&json!({
            "family": point.kind().to_string(),
            "params": point.params().into_iter().map(round12).collect::<Vec<_>>(),
            "region": region,
            "hs_measure": round12(d),
            "nearest": result.as_ref().map(|m| [round12(m.nearest.0), round12(m.nearest.1)]),
            "lemma_passes": record.as_ref().map(|w| w.passes),
            "max_abs_coeff": record.as_ref().map(|w| round12(w.max_abs_coeff)),
            "witness_id": record.as_ref().map(|w| w.witness_id.clone()),
        })),
    };
    emit(cli.out.as_deref(), &text)?;
    if let (Some(path), Some(w)) = (&args.certs, record) {
        let mut store = WitnessStore::default();
        store.insert(w);
        store.save(path)?;
    }
    Ok(())
}

struct LambdaCell {
    epsilon: f64,
    gamma: f64,
    lambda_min: f64,
    ppt: bool,
    admissible: bool,
}

fn check_open(range: &Range, lo: f64, hi: f64, name: &str) -> CliResult<()> {
    if range.min <= lo || range.max >= hi {
        return Err(CliError::Invalid(format!(
            "--{name} {range} must lie strictly inside ({}, {})",
            fmt12(lo),
            fmt12(hi)
        )));
    }
    Ok(())
}

fn lambda_map(cli: &Cli, args: &LambdaMapArgs) -> CliResult<()> {
    check_open(&args.epsilon, EPSILON_MIN, EPSILON_MAX, "epsilon")?;
    check_open(&args.gamma, -1.0, 1.0, "gamma")?;
    let (ne, ng) = (args.epsilon.steps, args.gamma.steps);
    let cells: Vec<LambdaCell> = (0..ne * ng)
        .into_par_iter()
        .map(|k| {
            let spec = LineSpec::new(args.gamma.value(k % ng), args.epsilon.value(k / ng));
            let lambda_min = lambda_min_unchecked(&spec);
            let ppt = spec.is_ppt();
            LambdaCell {
                epsilon: spec.epsilon,
                gamma: spec.gamma,
                lambda_min,
                ppt,
                admissible: ppt && lambda_min < 1.0,
            }
        })
        .collect();
    let best = total_min_search(args.refine)?;
    let minimum = LambdaCell {
        epsilon: best.epsilon,
        gamma: best.gamma,
        lambda_min: best.lambda,
        ppt: true,
        admissible: true,
    };
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = ["kind", "epsilon", "gamma", "lambda_min", "ppt", "admissible"].map(String::from);
            let record = |kind: &str, c: &LambdaCell| {
                vec![
                    kind.to_string(),
                    fmt12(c.epsilon),
                    fmt12(c.gamma),
                    fmt12(c.lambda_min),
                    c.ppt.to_string(),
                    c.admissible.to_string(),
                ]
            };
            let mut records: Vec<_> = cells.iter().map(|c| record("cell", c)).collect();
            records.push(record("minimum", &minimum));
            csv_string(&header, &records)
        }
        Format::Json => {
            let value = |c: &LambdaCell| {
                json!({
                    "epsilon": round12(c.epsilon),
                    "gamma": round12(c.gamma),
                    "lambda_min": round12(c.lambda_min),
                    "ppt": c.ppt,
                    "admissible": c.admissible,
                })
            };
            json_string(&json!({
                "cells": cells.iter().map(value).collect::<Vec<Value>>(),
                "minimum": value(&minimum),
            }))
        }
    };
    emit(cli.out.as_deref(), &text)
}

struct CheckResult {
    witness_id: String,
    method: String,
    id_matches: bool,
    passes: bool,
    max_abs_coeff: f64,
    separable_min: f64,
    example_violation: f64,
}

impl CheckResult {
    fn ok(&self) -> bool {
        self.id_matches
            && self.passes
            && self.separable_min >= -SAMPLE_SLACK
            && self.example_violation < 0.0
    }
}

fn check_record(key: &str, record: &WitnessRecord, samples: usize, seed: u64) -> CliResult<CheckResult> {
    let stored = &record.decomposition;
    let witness = WitnessOperator::from_decomposition(stored.to_decomposition()?)?;
    let verdict = witness.verdict().expect("built from a decomposition");
    let d = stored.local_dim();
    let separable_min = sample_separable_min(witness.matrix(), d, samples, seed)?;
    let state = record.example.point()?.state()?;
    Ok(CheckResult {
        witness_id: key.to_string(),
        method: record.method.clone(),
        id_matches: key == record.witness_id && stored.witness_id() == record.witness_id,
        passes: verdict.passes,
        max_abs_coeff: verdict.max_abs_coeff,
        separable_min,
        example_violation: witness_violation(&witness, &state)?,
    })
}

fn witness_check(cli: &Cli, args: &WitnessCheckArgs) -> CliResult<()> {
    let store = WitnessStore::load(&args.certs)?;
    let selected: Vec<(&String, &WitnessRecord)> = match &args.id {
        Some(id) => {
            let r = store.records.get_key_value(id).ok_or_else(|| {
                CliError::Invalid(format!("no witness `{id}` in {}", args.certs.display()))
            })?;
            vec![r]
        }
        None => store.records.iter().collect(),
    };
    let results = selected
        .into_iter()
        .map(|(k, r)| check_record(k, r, args.samples, cli.seed))
        .collect::<CliResult<Vec<_>>>()?;
    let text = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = [
                "witness_id",
                "method",
                "id_matches",
                "lemma_passes",
                "max_abs_coeff",
                "separable_min",
                "example_violation",
                "ok",
            ]
            .map(String::from);
            let records: Vec<_> = results
                .iter()
                .map(|r| {
                    vec![
                        r.witness_id.clone(),
                        r.method.clone(),
                        r.id_matches.to_string(),
                        r.passes.to_string(),
                        fmt12(r.max_abs_coeff),
                        fmt12(r.separable_min),
                        fmt12(r.example_violation),
                        r.ok().to_string(),
                    ]
                })
                .collect();
            csv_string(&header, &records)
        }
        Format::Json => json_string(&json!(results
            .iter()
            .map(|r| json!({
                "witness_id": r.witness_id,
                "method": r.method,
                "id_matches": r.id_matches,
                "lemma_passes": r.passes,
                "max_abs_coeff": round12(r.max_abs_coeff),
                "separable_min": round12(r.separable_min),
                "example_violation": round12(r.example_violation),
                "ok": r.ok(),
            }))
            .collect::<Vec<_>>())),
    };
    emit(cli.out.as_deref(), &text)?;
    let failed = results.iter().filter(|r| !r.ok()).count();
    if failed > 0 {
        return Err(CliError::Invalid(format!(
            "{failed} of {} witnesses failed verification",
            results.len()
        )));
    }
    Ok(())
}
