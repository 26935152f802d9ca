//! Named identity suites over the whole calculus, with deterministic
//! reports. Each suite runs a fixed list of checks; a check either
//! sweeps basis pairs or triples up to the requested mode, or samples
//! random sparse fields from a fixed-seed generator, so two runs with
//! the same inputs produce identical reports.
//!
//! Suites that exercise the metric or anything downstream of it
//! require the diagonal weights to be positive over the swept range
//! and refuse to run otherwise; the bracket and cocycle suites are
//! parameter-agnostic.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex_structure::{
    hs_partial_sum, nabla_j, nabla_j_closed, nabla_tilde, nabla_tilde_closed, nijenhuis, q_closed,
    q_tensor, tilde_metric_defect, torsion_tilde,
};
use crate::connection::{
    metric_defect, nabla, nabla_closed, torsion, u_closed, u_oracle, SignConvention,
};
use crate::curvature::{
    complex_bracket, complex_bracket_central, curvature, from_complex, nabla_tilde_complex,
    ricci_closed_form, ricci_coefficient, ricci_partial, ricci_regularized, to_complex,
    ComplexField,
};
use crate::error::Error;
use crate::scalar::{ComplexScalar, Scalar};
use crate::trig::{bracket_table, BasisLabel, TrigField};
use crate::virasoro::{
    cocycle, cocycle_on_basis, inner_product, inner_product_diagonal, jacobi_defect, CentralParams,
    VirasoroElement,
};

/// The identity families the runner knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Brackets,
    Cocycle,
    Connection,
    Complex,
    Curvature,
    Ricci,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "brackets",
        "cocycle",
        "connection",
        "complex",
        "curvature",
        "ricci",
        "all",
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Brackets => "brackets",
            Suite::Cocycle => "cocycle",
            Suite::Connection => "connection",
            Suite::Complex => "complex",
            Suite::Curvature => "curvature",
            Suite::Ricci => "ricci",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brackets" => Ok(Suite::Brackets),
            "cocycle" => Ok(Suite::Cocycle),
            "connection" => Ok(Suite::Connection),
            "complex" => Ok(Suite::Complex),
            "curvature" => Ok(Suite::Curvature),
            "ricci" => Ok(Suite::Ricci),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}' (expected one of {})",
                Suite::NAMES.join(", ")
            )),
        }
    }
}

/// Witness for a failed identity: the inputs and both sides, all
/// rendered exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub range: String,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

/// A completed run: parameter echo, per-check outcomes, and free-form
/// informational notes (quantities that are reported rather than
/// asserted). The elapsed time is informational only and is excluded
/// from every serialized form to keep emission byte-deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub c: Scalar,
    pub h: Scalar,
    pub max_mode: u32,
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check<F>(name: &str, range: String, body: F) -> CheckResult
where
    F: FnOnce() -> Option<Counterexample>,
{
    let counterexample = body();
    CheckResult {
        name: name.to_string(),
        range,
        pass: counterexample.is_none(),
        counterexample,
    }
}

fn ce(
    inputs: &[&dyn fmt::Display],
    lhs: impl fmt::Display,
    rhs: impl fmt::Display,
) -> Counterexample {
    Counterexample {
        inputs: inputs.iter().map(|d| d.to_string()).collect(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn rng_for(section: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x76C5_0000 + section)
}

fn gen_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

/// Sparse mean-zero field with a handful of modes below `max_mode`.
fn gen_field(rng: &mut ChaCha8Rng, max_mode: u32) -> TrigField {
    let mut out = TrigField::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=max_mode.max(1));
        let v = gen_scalar(rng);
        if rng.gen_bool(0.5) {
            out.add_cos(k, &v);
        } else {
            out.add_sin(k, &v);
        }
    }
    out
}

/// Like [`gen_field`] but with an occasional constant component.
fn gen_field_with_mean(rng: &mut ChaCha8Rng, max_mode: u32) -> TrigField {
    let mut out = gen_field(rng, max_mode);
    if rng.gen_bool(0.4) {
        out.add_cos(0, &gen_scalar(rng));
    }
    out
}

fn all_labels(max_mode: u32, include_constant: bool) -> Vec<BasisLabel> {
    let mut v = Vec::new();
    if include_constant {
        v.push(BasisLabel::F(0));
    }
    for k in 1..=max_mode {
        v.push(BasisLabel::F(k));
        v.push(BasisLabel::G(k));
    }
    v
}

fn signed_indices(max_mode: u32) -> Vec<i64> {
    let m = max_mode as i64;
    (-m..=m).filter(|k| *k != 0).collect()
}

fn basis_l(k: i64) -> ComplexField {
    ComplexField::basis(k).expect("nonzero index")
}

// ---- brackets ----------------------------------------------------------

fn brackets_checks(max_mode: u32) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(check(
        "bracket matches structure-constant table",
        format!("basis pairs, modes 0..={max_mode}"),
        || {
            for a in all_labels(max_mode, true) {
                for b in all_labels(max_mode, true) {
                    let direct = a.field().bracket(&b.field());
                    let table = bracket_table(a, b);
                    if direct != table {
                        return Some(ce(&[&a, &b], direct, table));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "bracket is bilinear and antisymmetric",
        "40 random field pairs".to_string(),
        || {
            let mut rng = rng_for(1);
            for _ in 0..40 {
                let x = gen_field_with_mean(&mut rng, max_mode);
                let y = gen_field_with_mean(&mut rng, max_mode);
                let z = gen_field_with_mean(&mut rng, max_mode);
                let s = gen_scalar(&mut rng);
                let lhs = (&x + &z.scale(&s)).bracket(&y);
                let rhs = &x.bracket(&y) + &z.bracket(&y).scale(&s);
                if lhs != rhs {
                    return Some(ce(&[&x, &y, &z, &s], lhs, rhs));
                }
                let anti = &x.bracket(&y) + &y.bracket(&x);
                if !anti.is_zero() {
                    return Some(ce(&[&x, &y], anti, TrigField::zero()));
                }
            }
            None
        },
    ));

    checks.push(check(
        "field bracket satisfies the jacobi identity",
        "20 random field triples".to_string(),
        || {
            let mut rng = rng_for(2);
            for _ in 0..20 {
                let x = gen_field_with_mean(&mut rng, max_mode);
                let y = gen_field_with_mean(&mut rng, max_mode);
                let z = gen_field_with_mean(&mut rng, max_mode);
                let sum = &(&x.bracket(&y).bracket(&z) + &y.bracket(&z).bracket(&x))
                    + &z.bracket(&x).bracket(&y);
                if !sum.is_zero() {
                    return Some(ce(&[&x, &y, &z], sum, TrigField::zero()));
                }
            }
            None
        },
    ));

    checks.push(check(
        "rotation squares to minus the identity",
        "40 random mean-zero fields".to_string(),
        || {
            let mut rng = rng_for(3);
            for _ in 0..40 {
                let x = gen_field(&mut rng, max_mode);
                let jj = x.apply_j().and_then(|j| j.apply_j()).expect("mean zero");
                if jj != -&x {
                    return Some(ce(&[&x], jj, -&x));
                }
            }
            None
        },
    ));

    checks.push(check(
        "rotation preserves the pairing",
        "40 random mean-zero field pairs".to_string(),
        || {
            let mut rng = rng_for(4);
            for _ in 0..40 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let jx = x.apply_j().expect("mean zero");
                let jy = y.apply_j().expect("mean zero");
                let lhs = jx.integral_pair(&jy);
                let rhs = x.integral_pair(&y);
                if lhs != rhs {
                    return Some(ce(&[&x, &y], lhs, rhs));
                }
            }
            None
        },
    ));

    checks
}

// ---- cocycle -----------------------------------------------------------

fn cocycle_checks(params: &CentralParams, max_mode: u32) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(check(
        "cocycle matches the basis table",
        format!("basis pairs, modes 0..={max_mode}"),
        || {
            for a in all_labels(max_mode, true) {
                for b in all_labels(max_mode, true) {
                    let direct = cocycle(params, &a.field(), &b.field());
                    let table = cocycle_on_basis(params, a, b);
                    if direct != table {
                        return Some(ce(&[&a, &b], direct, table));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "cocycle is antisymmetric",
        "40 random field pairs".to_string(),
        || {
            let mut rng = rng_for(10);
            for _ in 0..40 {
                let x = gen_field_with_mean(&mut rng, max_mode);
                let y = gen_field_with_mean(&mut rng, max_mode);
                let lhs = cocycle(params, &x, &y);
                let rhs = -&cocycle(params, &y, &x);
                if lhs != rhs {
                    return Some(ce(&[&x, &y], lhs, rhs));
                }
            }
            None
        },
    ));

    checks.push(check(
        "fundamental cocycle reduces to its integral form (c=6, h=0)",
        "20 random field pairs".to_string(),
        || {
            let fundamental = CentralParams::fundamental();
            let mut rng = rng_for(11);
            for _ in 0..20 {
                let x = gen_field_with_mean(&mut rng, max_mode);
                let y = gen_field_with_mean(&mut rng, max_mode);
                let lhs = cocycle(&fundamental, &x, &y);
                let weighted = &x.derivative() + &x.derivative().derivative().derivative();
                let rhs = weighted.integral_pair(&y) * Scalar::new(-1, 2);
                if lhs != rhs {
                    return Some(ce(&[&x, &y], lhs, rhs));
                }
            }
            None
        },
    ));

    checks.push(check(
        "central extension satisfies the jacobi identity",
        "15 random element triples".to_string(),
        || {
            let mut rng = rng_for(12);
            for _ in 0..15 {
                let x = VirasoroElement::new(
                    gen_scalar(&mut rng),
                    gen_field_with_mean(&mut rng, max_mode),
                );
                let y = VirasoroElement::new(
                    gen_scalar(&mut rng),
                    gen_field_with_mean(&mut rng, max_mode),
                );
                let z = VirasoroElement::new(
                    gen_scalar(&mut rng),
                    gen_field_with_mean(&mut rng, max_mode),
                );
                let defect = jacobi_defect(params, &x, &y, &z);
                if !defect.is_zero() {
                    return Some(ce(&[&x, &y, &z], defect, VirasoroElement::zero()));
                }
            }
            None
        },
    ));

    checks
}

// ---- connection --------------------------------------------------------

fn connection_checks(
    params: &CentralParams,
    max_mode: u32,
) -> Result<(Vec<CheckResult>, Vec<String>), Error> {
    let mut checks = Vec::new();

    checks.push(check(
        "metric is symmetric",
        "50 random mean-zero field pairs".to_string(),
        || {
            let mut rng = rng_for(20);
            for _ in 0..50 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let lhs = inner_product(params, &x, &y).expect("validated params");
                let rhs = inner_product(params, &y, &x).expect("validated params");
                if lhs != rhs {
                    return Some(ce(&[&x, &y], lhs, rhs));
                }
            }
            None
        },
    ));

    checks.push(check(
        "metric pairing route matches the diagonal formula",
        "50 random mean-zero field pairs".to_string(),
        || {
            let mut rng = rng_for(21);
            for _ in 0..50 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let via_rotation = inner_product(params, &x, &y).expect("validated params");
                let diagonal = inner_product_diagonal(params, &x, &y).expect("validated params");
                if via_rotation != diagonal {
                    return Some(ce(&[&x, &y], via_rotation, diagonal));
                }
            }
            None
        },
    ));

    for convention in [SignConvention::Paper, SignConvention::Nomizu] {
        checks.push(check(
            &format!("correction tensor matches its defining-equation scan ({convention})"),
            format!("basis pairs, modes 1..={max_mode}"),
            || {
                for a in all_labels(max_mode, false) {
                    for b in all_labels(max_mode, false) {
                        let closed = u_closed(params, a, b, convention).expect("positive modes");
                        let scanned = u_oracle(params, &a.field(), &b.field(), convention)
                            .expect("validated params");
                        if closed != scanned {
                            return Some(ce(&[&a, &b], closed, scanned));
                        }
                    }
                }
                None
            },
        ));
    }

    checks.push(check(
        "correction tensor is symmetric; conventions differ by sign",
        "30 random mean-zero field pairs".to_string(),
        || {
            let mut rng = rng_for(22);
            for _ in 0..30 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let paper =
                    u_oracle(params, &x, &y, SignConvention::Paper).expect("validated params");
                let flipped =
                    u_oracle(params, &y, &x, SignConvention::Paper).expect("validated params");
                if paper != flipped {
                    return Some(ce(&[&x, &y], paper, flipped));
                }
                let nomizu =
                    u_oracle(params, &x, &y, SignConvention::Nomizu).expect("validated params");
                if nomizu != -&paper {
                    return Some(ce(&[&x, &y], nomizu, -&paper));
                }
            }
            None
        },
    ));

    checks.push(check(
        "covariant derivative matches its closed form",
        format!("basis pairs, modes 1..={max_mode}"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let assembled = nabla(params, &a.field(), &b.field(), SignConvention::Paper)
                        .expect("validated params");
                    let closed = nabla_closed(params, a, b).expect("positive modes");
                    if assembled != closed {
                        return Some(ce(&[&a, &b], assembled, closed));
                    }
                }
            }
            None
        },
    ));

    for convention in [SignConvention::Paper, SignConvention::Nomizu] {
        checks.push(check(
            &format!("torsion vanishes ({convention})"),
            format!("basis pairs, modes 1..={max_mode}"),
            || {
                for a in all_labels(max_mode, false) {
                    for b in all_labels(max_mode, false) {
                        let t = torsion(params, &a.field(), &b.field(), convention)
                            .expect("validated params");
                        if !t.is_zero() {
                            return Some(ce(&[&a, &b], t, TrigField::zero()));
                        }
                    }
                }
                None
            },
        ));
    }

    let defect_top = max_mode.min(8);
    checks.push(check(
        "compatibility defect vanishes (nomizu)",
        format!("basis triples, modes 1..={defect_top}"),
        || {
            for a in all_labels(defect_top, false) {
                for b in all_labels(defect_top, false) {
                    for c in all_labels(defect_top, false) {
                        let d = metric_defect(
                            params,
                            &a.field(),
                            &b.field(),
                            &c.field(),
                            SignConvention::Nomizu,
                        )
                        .expect("validated params");
                        if !d.is_zero() {
                            return Some(ce(&[&a, &b, &c], d, Scalar::zero()));
                        }
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "witness defect at reference parameters (c=12, h=1/2)",
        "x=cos(1t), y=cos(2t), z=sin(3t)".to_string(),
        || {
            let cubic = CentralParams::cubic();
            let f1 = TrigField::basis_f(1);
            let f2 = TrigField::basis_f(2);
            let g3 = TrigField::basis_g(3).expect("positive mode");
            let paper = metric_defect(&cubic, &f1, &f2, &g3, SignConvention::Paper)
                .expect("reference params");
            if paper != Scalar::new(5, 4) {
                return Some(ce(&[&f1, &f2, &g3], paper, Scalar::new(5, 4)));
            }
            let nomizu = metric_defect(&cubic, &f1, &f2, &g3, SignConvention::Nomizu)
                .expect("reference params");
            if !nomizu.is_zero() {
                return Some(ce(&[&f1, &f2, &g3], nomizu, Scalar::zero()));
            }
            None
        },
    ));

    let mut notes = Vec::new();
    for (a, b, c) in [
        (BasisLabel::F(1), BasisLabel::F(2), BasisLabel::G(3)),
        (BasisLabel::F(1), BasisLabel::G(2), BasisLabel::F(3)),
        (BasisLabel::G(1), BasisLabel::G(2), BasisLabel::G(3)),
    ] {
        let d = metric_defect(
            params,
            &a.field(),
            &b.field(),
            &c.field(),
            SignConvention::Paper,
        )?;
        notes.push(format!(
            "paper-convention compatibility defect B(nabla_x y, z) + B(y, nabla_x z) at (x={a}, y={b}, z={c}): {d}"
        ));
    }

    Ok((checks, notes))
}

// ---- complex -----------------------------------------------------------

fn complex_checks(
    params: &CentralParams,
    max_mode: u32,
) -> Result<(Vec<CheckResult>, Vec<String>), Error> {
    let mut checks = Vec::new();

    checks.push(check(
        "nijenhuis tensor vanishes",
        format!("basis pairs, modes 1..={max_mode}, plus 10 random pairs"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let n = nijenhuis(&a.field(), &b.field()).expect("mean zero");
                    if !n.is_zero() {
                        return Some(ce(&[&a, &b], n, TrigField::zero()));
                    }
                }
            }
            let mut rng = rng_for(30);
            for _ in 0..10 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let n = nijenhuis(&x, &y).expect("mean zero");
                if !n.is_zero() {
                    return Some(ce(&[&x, &y], n, TrigField::zero()));
                }
            }
            None
        },
    ));

    checks.push(check(
        "rotation derivative matches its closed form",
        format!("basis pairs, modes 1..={max_mode}"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let assembled =
                        nabla_j(params, &a.field(), &b.field()).expect("validated params");
                    let closed = nabla_j_closed(a, b).expect("positive modes");
                    if assembled != closed {
                        return Some(ce(&[&a, &b], assembled, closed));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "correction of the rotation matches its closed form and is symmetric",
        format!("basis pairs, modes 1..={max_mode}"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let assembled =
                        q_tensor(params, &a.field(), &b.field()).expect("validated params");
                    let closed = q_closed(a, b).expect("positive modes");
                    if assembled != closed {
                        return Some(ce(&[&a, &b], assembled, closed));
                    }
                    let swapped = q_closed(b, a).expect("positive modes");
                    if closed != swapped {
                        return Some(ce(&[&a, &b], closed, swapped));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "modified connection matches its closed form",
        format!("basis pairs, modes 1..={max_mode}"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let assembled =
                        nabla_tilde(params, &a.field(), &b.field()).expect("validated params");
                    let closed = nabla_tilde_closed(params, a, b).expect("positive modes");
                    if assembled != closed {
                        return Some(ce(&[&a, &b], assembled, closed));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "modified connection agrees with its bilinear closed-form extension",
        "20 random mean-zero field pairs".to_string(),
        || {
            let mut rng = rng_for(31);
            for _ in 0..20 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let direct = nabla_tilde(params, &x, &y).expect("validated params");
                let mut extended = TrigField::zero();
                for (ka, ca, sa) in x.iter() {
                    for (kb, cb, sb) in y.iter() {
                        let pieces = [
                            (BasisLabel::F(ka), BasisLabel::F(kb), ca * cb),
                            (BasisLabel::F(ka), BasisLabel::G(kb), ca * sb),
                            (BasisLabel::G(ka), BasisLabel::F(kb), sa * cb),
                            (BasisLabel::G(ka), BasisLabel::G(kb), sa * sb),
                        ];
                        for (la, lb, weight) in pieces {
                            if weight.is_zero() {
                                continue;
                            }
                            let term = nabla_tilde_closed(params, la, lb).expect("positive modes");
                            extended = &extended + &term.scale(&weight);
                        }
                    }
                }
                if direct != extended {
                    return Some(ce(&[&x, &y], direct, extended));
                }
            }
            None
        },
    ));

    checks.push(check(
        "modified torsion vanishes",
        format!("basis pairs, modes 1..={max_mode}, plus 10 random pairs"),
        || {
            for a in all_labels(max_mode, false) {
                for b in all_labels(max_mode, false) {
                    let t =
                        torsion_tilde(params, &a.field(), &b.field()).expect("validated params");
                    if !t.is_zero() {
                        return Some(ce(&[&a, &b], t, TrigField::zero()));
                    }
                }
            }
            let mut rng = rng_for(32);
            for _ in 0..10 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let t = torsion_tilde(params, &x, &y).expect("validated params");
                if !t.is_zero() {
                    return Some(ce(&[&x, &y], t, TrigField::zero()));
                }
            }
            None
        },
    ));

    checks.push(check(
        "divergence series partial sums strictly increase",
        format!("n in 1..={}, cutoffs 1..=12", max_mode.min(3)),
        || {
            for n in 1..=(max_mode.min(3) as i64) {
                let mut prev = Scalar::zero();
                for cutoff in 1..=12 {
                    let s = hs_partial_sum(params, n, cutoff).expect("validated params");
                    if s <= prev {
                        return Some(ce(&[&n, &cutoff], s, prev));
                    }
                    prev = s;
                }
            }
            None
        },
    ));

    checks.push(check(
        "divergence series grows cubically at reference parameters (c=12, h=1/2)",
        "n=1, cutoff doublings at 64 and 128".to_string(),
        || {
            let cubic = CentralParams::cubic();
            let examples = [(1i64, Scalar::new(9, 32)), (2, Scalar::new(1267, 864))];
            for (cutoff, expect) in examples {
                let got = hs_partial_sum(&cubic, 1, cutoff).expect("reference params");
                if got != expect {
                    return Some(ce(&[&1, &cutoff], got, expect));
                }
            }
            for cutoff in [64i64, 128] {
                let s1 = hs_partial_sum(&cubic, 1, cutoff).expect("reference params");
                let s2 = hs_partial_sum(&cubic, 1, 2 * cutoff).expect("reference params");
                let sq = &s2 * &s2;
                let lo = Scalar::int(32) * &s1 * &s1;
                let hi = Scalar::int(128) * &s1 * &s1;
                if sq < lo || sq > hi {
                    return Some(ce(
                        &[&1, &cutoff],
                        format!("squared ratio {}", sq / (&s1 * &s1)),
                        "between 32 and 128".to_string(),
                    ));
                }
            }
            None
        },
    ));

    let mut notes = Vec::new();
    for (a, b, c) in [
        (BasisLabel::F(1), BasisLabel::F(2), BasisLabel::G(3)),
        (BasisLabel::G(1), BasisLabel::F(3), BasisLabel::G(2)),
    ] {
        let d = tilde_metric_defect(params, &a.field(), &b.field(), &c.field())?;
        notes.push(format!(
            "modified-connection compatibility defect at (x={a}, y={b}, z={c}): {d}"
        ));
    }

    Ok((checks, notes))
}

// ---- curvature ---------------------------------------------------------

fn curvature_checks(params: &CentralParams, max_mode: u32) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(check(
        "complexification round trips",
        "20 random field pairs".to_string(),
        || {
            let mut rng = rng_for(40);
            for _ in 0..20 {
                let x = gen_field(&mut rng, max_mode);
                let y = gen_field(&mut rng, max_mode);
                let z = to_complex(&x, &y).expect("mean zero");
                let (back_x, back_y) = from_complex(&z);
                if back_x != x || back_y != y {
                    return Some(ce(&[&x, &y], z, format!("({back_x}, {back_y})")));
                }
            }
            None
        },
    ));

    checks.push(check(
        "complex bracket matches the realified bracket",
        format!("signed basis pairs, |index| <= {max_mode}"),
        || {
            for p in signed_indices(max_mode) {
                for q in signed_indices(max_mode) {
                    let (xp, yp) = from_complex(&basis_l(p));
                    let (xq, yq) = from_complex(&basis_l(q));
                    let u = &xp.bracket(&xq).project_m() - &yp.bracket(&yq).project_m();
                    let v = &xp.bracket(&yq).project_m() + &yp.bracket(&xq).project_m();
                    let real_route = to_complex(&u, &v).expect("mean zero");
                    let complex_route = complex_bracket(&basis_l(p), &basis_l(q));
                    if real_route != complex_route {
                        return Some(ce(&[&p, &q], complex_route, real_route));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "central bracket component matches the realified mean part",
        "15 random field pairs".to_string(),
        || {
            let mut rng = rng_for(41);
            for _ in 0..15 {
                let (x1, y1) = (gen_field(&mut rng, max_mode), gen_field(&mut rng, max_mode));
                let (x2, y2) = (gen_field(&mut rng, max_mode), gen_field(&mut rng, max_mode));
                let a = to_complex(&x1, &y1).expect("mean zero");
                let b = to_complex(&x2, &y2).expect("mean zero");
                let central = complex_bracket_central(&a, &b);
                let re = (&x1.bracket(&x2) - &y1.bracket(&y2)).mean();
                let im = (&x1.bracket(&y2) + &y1.bracket(&x2)).mean();
                let real_route = ComplexScalar::new(re, im);
                if central != real_route {
                    return Some(ce(&[&a, &b], central, real_route));
                }
            }
            None
        },
    ));

    checks.push(check(
        "complex modified connection matches the realified one",
        format!("signed basis pairs, |index| <= {max_mode}"),
        || {
            for p in signed_indices(max_mode) {
                for q in signed_indices(max_mode) {
                    let (xp, yp) = from_complex(&basis_l(p));
                    let (xq, yq) = from_complex(&basis_l(q));
                    let u = &nabla_tilde(params, &xp, &xq).expect("validated params")
                        - &nabla_tilde(params, &yp, &yq).expect("validated params");
                    let v = &nabla_tilde(params, &xp, &yq).expect("validated params")
                        + &nabla_tilde(params, &yp, &xq).expect("validated params");
                    let real_route = to_complex(&u, &v).expect("mean zero");
                    let complex_route = nabla_tilde_complex(params, &basis_l(p), &basis_l(q))
                        .expect("validated params");
                    if real_route != complex_route {
                        return Some(ce(&[&p, &q], complex_route, real_route));
                    }
                }
            }
            None
        },
    ));

    let grading_top = max_mode.min(12);
    checks.push(check(
        "curvature output is graded by index sum",
        format!("signed basis triples, |index| <= {grading_top}"),
        || {
            for x in signed_indices(grading_top) {
                for y in signed_indices(grading_top) {
                    for z in signed_indices(grading_top) {
                        let r = curvature(params, &basis_l(x), &basis_l(y), &basis_l(z))
                            .expect("validated params");
                        for (k, _) in r.iter() {
                            if k != x + y + z {
                                return Some(ce(
                                    &[&x, &y, &z],
                                    r.clone(),
                                    format!("support {{{}}}", x + y + z),
                                ));
                            }
                        }
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "diagonal curvature coefficient matches the closed cases",
        format!("index pairs 1..={max_mode}"),
        || {
            for m in 1..=(max_mode as i64) {
                for n in 1..=(max_mode as i64) {
                    let closed = ricci_coefficient(params, m, n).expect("validated params");
                    let r = curvature(params, &basis_l(-m), &basis_l(n), &basis_l(-n))
                        .expect("validated params");
                    let extracted = r.coeff(-m);
                    if extracted != ComplexScalar::from_real(closed.clone()) {
                        return Some(ce(&[&m, &n], extracted, closed));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "aligned-direction curvature vanishes",
        format!("index pairs 1..={max_mode}"),
        || {
            for m in 1..=(max_mode as i64) {
                for n in 1..=(max_mode as i64) {
                    let r = curvature(params, &basis_l(m), &basis_l(n), &basis_l(-n))
                        .expect("validated params");
                    if !r.is_zero() {
                        return Some(ce(&[&m, &n], r, ComplexField::zero()));
                    }
                }
            }
            None
        },
    ));

    checks
}

// ---- ricci -------------------------------------------------------------

fn ricci_checks(params: &CentralParams, max_mode: u32) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(check(
        "regularized value equals the closed form",
        format!("n in 1..={max_mode}"),
        || {
            for n in 1..=(max_mode as i64) {
                let reg = ricci_regularized(params, n).expect("validated params");
                let closed = ricci_closed_form(params, n).expect("validated params");
                if reg != closed {
                    return Some(ce(&[&n], reg, closed));
                }
            }
            None
        },
    ));

    let tele_top = (max_mode as i64).min(10);
    checks.push(check(
        "truncated sum plus boundary telescopes to the regularized value",
        format!("n in 1..={tele_top}, cutoffs n..=60"),
        || {
            for n in 1..=tele_top {
                let reg = ricci_regularized(params, n).expect("validated params");
                for cutoff in n..=60 {
                    let (partial, boundary) =
                        ricci_partial(params, n, cutoff).expect("validated params");
                    if !boundary.is_positive() {
                        return Some(ce(
                            &[&n, &cutoff],
                            boundary,
                            "a positive boundary term".to_string(),
                        ));
                    }
                    let sum = partial + boundary;
                    if sum != reg {
                        return Some(ce(&[&n, &cutoff], sum, reg));
                    }
                }
            }
            None
        },
    ));

    checks.push(check(
        "head-sum polynomial identity",
        "n in 1..=200, integer arithmetic".to_string(),
        || {
            for n in 1i64..=200 {
                let sum: i64 = (1..=n).map(|m| (m + n) * (2 * n - m)).sum();
                let closed = 13 * n * n * n - n;
                if closed % 6 != 0 || sum != closed / 6 {
                    return Some(ce(&[&n], sum, format!("{closed}/6")));
                }
            }
            None
        },
    ));

    checks.push(check(
        "reference values at (c=12, h=1/2)",
        "n in {1, 2, 3}, cutoff 1".to_string(),
        || {
            let cubic = CentralParams::cubic();
            let expects = [
                (1i64, Scalar::int(-2)),
                (2, Scalar::new(-17, 8)),
                (3, Scalar::new(-58, 27)),
            ];
            for (n, expect) in expects {
                let reg = ricci_regularized(&cubic, n).expect("reference params");
                if reg != expect {
                    return Some(ce(&[&n], reg, expect));
                }
            }
            let (partial, boundary) = ricci_partial(&cubic, 1, 1).expect("reference params");
            if partial != Scalar::new(-25, 8) || boundary != Scalar::new(9, 8) {
                return Some(ce(
                    &[&1, &1],
                    format!("partial {partial}, boundary {boundary}"),
                    "partial -25/8, boundary 9/8".to_string(),
                ));
            }
            let coeff = ricci_coefficient(&cubic, 1, 2).expect("reference params");
            if coeff != Scalar::new(-268, 27) {
                return Some(ce(&[&1, &2], coeff, Scalar::new(-268, 27)));
            }
            None
        },
    ));

    checks
}

/// Runs the named suite at the given parameters, sweeping modes up to
/// `max_mode`. Parameter problems (zero `max_mode`, nonpositive
/// diagonal weights where a suite needs them) surface as errors;
/// identity failures come back inside the report.
pub fn run_verify(
    suite: Suite,
    params: &CentralParams,
    max_mode: u32,
) -> Result<VerificationReport, Error> {
    if max_mode == 0 {
        return Err(Error::MaxModeZero);
    }
    let started = std::time::Instant::now();

    let needs_metric = matches!(
        suite,
        Suite::Connection | Suite::Complex | Suite::Curvature | Suite::Ricci | Suite::All
    );
    if needs_metric {
        let mut bound = 2 * max_mode as i64;
        if matches!(suite, Suite::Ricci | Suite::All) {
            bound = bound.max(70);
        }
        params.ensure_theta_positive(bound)?;
    }

    let mut checks = Vec::new();
    let mut notes = Vec::new();
    if matches!(suite, Suite::Brackets | Suite::All) {
        checks.extend(brackets_checks(max_mode));
    }
    if matches!(suite, Suite::Cocycle | Suite::All) {
        checks.extend(cocycle_checks(params, max_mode));
    }
    if matches!(suite, Suite::Connection | Suite::All) {
        let (c, n) = connection_checks(params, max_mode)?;
        checks.extend(c);
        notes.extend(n);
    }
    if matches!(suite, Suite::Complex | Suite::All) {
        let (c, n) = complex_checks(params, max_mode)?;
        checks.extend(c);
        notes.extend(n);
    }
    if matches!(suite, Suite::Curvature | Suite::All) {
        checks.extend(curvature_checks(params, max_mode));
    }
    if matches!(suite, Suite::Ricci | Suite::All) {
        checks.extend(ricci_checks(params, max_mode));
    }

    Ok(VerificationReport {
        suite: suite.name().to_string(),
        c: params.c().clone(),
        h: params.h().clone(),
        max_mode,
        checks,
        notes,
        elapsed_ms: started.elapsed().as_millis(),
    })
}
