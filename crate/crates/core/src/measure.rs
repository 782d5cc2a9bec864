//! Closed-form Hilbert-Schmidt entanglement measures of the two-parameter
//! qubit and qutrit families, with their nearest separable states and
//! optimal witnesses, plus a numeric cross-check over each family's
//! separable polygon.

use crate::error::{Error, Result};
use crate::families::{FamilyPoint, HalfPlane, QubitParams, QutritParams};
use crate::numeric::{hs_inner, hs_norm, kron};
use crate::weyl::{pauli, qutrit_ops};
use crate::witness::{build_witness, WitnessOperator};
use crate::{tol, Matrix, State};

/// Where a two-parameter point sits relative to the entangled regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// The entangled triangle containing `φ+` (or `P_00`).
    I,
    /// The second entangled triangle.
    II,
    SeparableOrPpt,
    Invalid,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::I => "I",
            Region::II => "II",
            Region::SeparableOrPpt => "SeparableOrPPT",
            Region::Invalid => "Invalid",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MeasureResult {
    pub region: Region,
    /// Distance to the nearest separable state.
    pub hs_measure: f64,
    /// Family parameters `(α, β)` of the nearest separable state.
    pub nearest: (f64, f64),
    pub nearest_state: State,
    /// Normalized witness built from the nearest state.
    pub witness: WitnessOperator,
}

fn regions(positive: bool, region_one: f64, region_two: f64) -> Region {
    if !positive {
        Region::Invalid
    } else if region_one > tol::ANALYTIC_SLACK {
        Region::I
    } else if region_two > tol::ANALYTIC_SLACK {
        Region::II
    } else {
        Region::SeparableOrPpt
    }
}

/// Region I: `α > β/3 + 1/3`; Region II: `α < -β - 1`.
pub fn qubit_region(p: QubitParams) -> Region {
    regions(
        p.is_positive(),
        p.alpha - p.beta / 3.0 - 1.0 / 3.0,
        -p.beta - 1.0 - p.alpha,
    )
}

/// Region I: `α > β/8 + 1/4`; Region II: `α < 5β/4 - 1/2`.
pub fn qutrit_region(p: QutritParams) -> Region {
    regions(
        p.is_positive(),
        p.alpha - p.beta / 8.0 - 0.25,
        1.25 * p.beta - 0.5 - p.alpha,
    )
}

fn not_entangled(region: Region) -> Error {
    match region {
        Region::Invalid => Error::InvalidParams("parameters violate positivity".into()),
        _ => Error::NotEntangledRegion,
    }
}

fn finish(
    region: Region,
    hs_measure: f64,
    nearest: (f64, f64),
    nearest_state: State,
    entangled: &State,
) -> Result<MeasureResult> {
    let witness = build_witness(&nearest_state, entangled, true)?;
    Ok(MeasureResult {
        region,
        hs_measure,
        nearest,
        nearest_state,
        witness,
    })
}

/// `D^I = √3/2 (α - 1/3 - β/3)`, `D^II = (-α - 1 - β)/(2√3)`.
pub fn qubit_hs_measure(p: QubitParams) -> Result<MeasureResult> {
    let region = qubit_region(p);
    let s3 = 3f64.sqrt();
    let (d, nearest) = match region {
        Region::I => (
            s3 / 2.0 * (p.alpha - 1.0 / 3.0 - p.beta / 3.0),
            (1.0 / 3.0 + p.beta / 3.0, p.beta),
        ),
        Region::II => (
            (-p.alpha - 1.0 - p.beta) / (2.0 * s3),
            (
                (-1.0 + 2.0 * p.alpha - p.beta) / 3.0,
                (-2.0 - 2.0 * p.alpha + p.beta) / 3.0,
            ),
        ),
        other => return Err(not_entangled(other)),
    };
    let state = FamilyPoint::Qubit(QubitParams::new(nearest.0, nearest.1)).state()?;
    let ent = FamilyPoint::Qubit(p).state()?;
    finish(region, d, nearest, state, &ent)
}

/// `D^I = 2√2/3 (α - 1/4 - β/8)`, `D^II = (-4α - 2 + 5β)/(6√2)`.
pub fn qutrit_hs_measure(p: QutritParams) -> Result<MeasureResult> {
    let region = qutrit_region(p);
    let s2 = 2f64.sqrt();
    let (d, nearest) = match region {
        Region::I => (
            2.0 * s2 / 3.0 * (p.alpha - 0.25 - p.beta / 8.0),
            (0.25 + p.beta / 8.0, p.beta),
        ),
        Region::II => (
            (-4.0 * p.alpha - 2.0 + 5.0 * p.beta) / (6.0 * s2),
            (
                (-2.0 + 20.0 * p.alpha + 5.0 * p.beta) / 24.0,
                (2.0 + 4.0 * p.alpha + p.beta) / 6.0,
            ),
        ),
        other => return Err(not_entangled(other)),
    };
    let state = FamilyPoint::Qutrit2(QutritParams::new(nearest.0, nearest.1)).state()?;
    let ent = FamilyPoint::Qutrit2(p).state()?;
    finish(region, d, nearest, state, &ent)
}

/// Closed-form measure for a qubit or two-parameter qutrit point.
pub fn hs_measure(point: &FamilyPoint) -> Result<MeasureResult> {
    match *point {
        FamilyPoint::Qubit(p) => qubit_hs_measure(p),
        FamilyPoint::Qutrit2(p) => qutrit_hs_measure(p),
        _ => Err(Error::InvalidParams(format!(
            "no closed-form measure for family {}",
            point.kind()
        ))),
    }
}

/// The region's optimal witness in closed form:
/// qubit I `(1 - Σ)/(2√3)`, qubit II `(1 + σ1σ1 - σ2σ2 - σ3σ3)/(2√3)`.
pub fn qubit_closed_form_witness(region: Region) -> Result<Matrix> {
    let [s1, s2, s3] = pauli::<f64>();
    let (c1, c2, c3) = match region {
        Region::I => (-1.0, 1.0, -1.0),
        Region::II => (1.0, -1.0, -1.0),
        other => return Err(not_entangled(other)),
    };
    let mut m = Matrix::identity(4);
    m += &kron(&s1, &s1).scale_real(c1);
    m += &kron(&s2, &s2).scale_real(c2);
    m += &kron(&s3, &s3).scale_real(c3);
    Ok(m.scale_real(1.0 / (2.0 * 3f64.sqrt())))
}

/// Qutrit I `(2·1 - U)/(6√2)`, qutrit II `(2·1 + U1 - U2)/(6√2)`.
pub fn qutrit_closed_form_witness(region: Region) -> Result<Matrix> {
    let ops = qutrit_ops();
    let two = Matrix::identity(9).scale_real(2.0);
    let m = match region {
        Region::I => &two - &ops.u,
        Region::II => &(&two + &ops.u1) - &ops.u2(),
        other => return Err(not_entangled(other)),
    };
    Ok(m.scale_real(1.0 / (6.0 * 2f64.sqrt())))
}

/// Vertices of a convex polygon `{x : h(x) ≥ 0 for all h}`, clipped from a
/// large box (Sutherland-Hodgman).
pub fn clip_polygon(planes: &[HalfPlane]) -> Vec<(f64, f64)> {
    let mut poly = vec![(-4.0, -4.0), (4.0, -4.0), (4.0, 4.0), (-4.0, 4.0)];
    for h in planes {
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let p = poly[i];
            let q = poly[(i + 1) % poly.len()];
            let (fp, fq) = (h.eval(p.0, p.1), h.eval(q.0, q.1));
            if fp >= 0.0 {
                next.push(p);
            }
            if (fp >= 0.0) != (fq >= 0.0) {
                let t = fp / (fp - fq);
                next.push((p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1)));
            }
        }
        poly = next;
    }
    poly
}

/// The separable polygon (positivity ∩ PPT) of a two-parameter family.
pub fn separable_polygon(point: &FamilyPoint) -> Result<Vec<(f64, f64)>> {
    let planes: Vec<HalfPlane> = match point {
        FamilyPoint::Qubit(_) => [QubitParams::POSITIVITY, QubitParams::PPT].concat(),
        FamilyPoint::Qutrit2(_) => [QutritParams::POSITIVITY, QutritParams::PPT].concat(),
        _ => {
            return Err(Error::InvalidParams(format!(
                "no separable polygon for family {}",
                point.kind()
            )))
        }
    };
    Ok(clip_polygon(&planes))
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo < 1e-14 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = (lo, f(lo));
    for x in [hi, x1, x2] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}

/// Outcome of [`crosscheck_measure`].
#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub closed_form: f64,
    /// Minimum HS distance found over the separable polygon's boundary.
    pub numeric: f64,
    pub numeric_nearest: (f64, f64),
    /// `<ρ₀, C̃>` for the closed-form nearest state.
    pub optimality: f64,
    /// `<ρ_ent, C̃>`.
    pub violation: f64,
}

impl CrosscheckReport {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.numeric).abs()
    }
}

/// Minimizes `||ρ_sep - ρ||` over the family's separable polygon by golden
/// section along each edge (the distance is convex and the point lies
/// outside, so the minimum is on the boundary) and compares with the closed
/// form.
pub fn crosscheck_measure(point: &FamilyPoint) -> Result<CrosscheckReport> {
    let closed = hs_measure(point)?;
    let ent = point.state()?;
    let polygon = separable_polygon(point)?;
    let make = |a: f64, b: f64| match point {
        FamilyPoint::Qubit(_) => FamilyPoint::Qubit(QubitParams::new(a, b)).matrix_unchecked(),
        _ => FamilyPoint::Qutrit2(QutritParams::new(a, b)).matrix_unchecked(),
    };
    let mut best = (f64::INFINITY, (0.0, 0.0));
    for i in 0..polygon.len() {
        let p = polygon[i];
        let q = polygon[(i + 1) % polygon.len()];
        let at = |t: f64| (p.0 + t * (q.0 - p.0), p.1 + t * (q.1 - p.1));
        let dist = |t: f64| {
            let (a, b) = at(t);
            hs_norm(&(&make(a, b) - ent.matrix()))
        };
        let (t, d) = golden_section(dist, 0.0, 1.0);
        if d < best.0 {
            best = (d, at(t));
        }
    }
    let w = closed.witness.matrix();
    Ok(CrosscheckReport {
        closed_form: closed.hs_measure,
        numeric: best.0,
        numeric_nearest: best.1,
        optimality: hs_inner(closed.nearest_state.matrix(), w)?.re,
        violation: hs_inner(ent.matrix(), w)?.re,
    })
}
