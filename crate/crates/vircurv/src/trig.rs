//! Trigonometric vector fields on the circle with exact coefficients.
//!
//! A [`TrigField`] is a finite sum `a_0 + sum_k (a_k cos kt + b_k sin kt)`
//! stored sparsely by mode. Zero coefficients are never stored and the
//! zero mode carries no sine component, so equality of maps is equality
//! of fields.
//!
//! The bracket is computed analytically, `[x, y] = x*y' - x'*y`, with the
//! pointwise product expanded by the product-to-sum formulas. The basis
//! commutation table ([`bracket_table`]) is an independent route kept for
//! cross-checking.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::parse::{parse_field, FieldParseError};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ModeCoeffs {
    cos: Scalar,
    sin: Scalar,
}

/// Finite trigonometric polynomial vector field, sparse by mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigField {
    terms: BTreeMap<u32, ModeCoeffs>,
}

impl TrigField {
    pub fn zero() -> Self {
        TrigField {
            terms: BTreeMap::new(),
        }
    }

    /// `cos(kt)`; `k = 0` is the constant field 1.
    pub fn basis_f(k: u32) -> Self {
        let mut out = TrigField::zero();
        out.add_cos(k, &Scalar::one());
        out
    }

    /// `sin(kt)` for `k >= 1`.
    pub fn basis_g(k: u32) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::SinZeroMode);
        }
        let mut out = TrigField::zero();
        out.add_sin(k, &Scalar::one());
        Ok(out)
    }

    pub(crate) fn add_cos(&mut self, k: u32, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(|| ModeCoeffs {
            cos: Scalar::zero(),
            sin: Scalar::zero(),
        });
        entry.cos = &entry.cos + v;
        if entry.cos.is_zero() && entry.sin.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub(crate) fn add_sin(&mut self, k: u32, v: &Scalar) {
        // sin(0t) vanishes identically; accumulating it is adding zero.
        if k == 0 || v.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(|| ModeCoeffs {
            cos: Scalar::zero(),
            sin: Scalar::zero(),
        });
        entry.sin = &entry.sin + v;
        if entry.cos.is_zero() && entry.sin.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `cos(kt)` (the constant term when `k = 0`).
    pub fn cos_coeff(&self, k: u32) -> Scalar {
        self.terms
            .get(&k)
            .map(|c| c.cos.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of `sin(kt)`.
    pub fn sin_coeff(&self, k: u32) -> Scalar {
        self.terms
            .get(&k)
            .map(|c| c.sin.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Largest mode present, 0 for the zero field.
    pub fn max_mode(&self) -> u32 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    /// The constant term `a_0`.
    pub fn mean(&self) -> Scalar {
        self.cos_coeff(0)
    }

    pub fn is_mean_zero(&self) -> bool {
        self.mean().is_zero()
    }

    /// `(mode, cos coefficient, sin coefficient)` in ascending mode order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &Scalar, &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, &c.cos, &c.sin))
    }

    pub fn scale(&self, s: &Scalar) -> TrigField {
        if s.is_zero() {
            return TrigField::zero();
        }
        let mut out = TrigField::zero();
        for (&k, c) in &self.terms {
            out.add_cos(k, &(&c.cos * s));
            out.add_sin(k, &(&c.sin * s));
        }
        out
    }

    /// Derivative in `t`: mode `k` maps `(a, b)` to `(k*b, -k*a)`.
    pub fn derivative(&self) -> TrigField {
        let mut out = TrigField::zero();
        for (&k, c) in &self.terms {
            if k == 0 {
                continue;
            }
            let ks = Scalar::int(k as i64);
            out.add_cos(k, &(&ks * &c.sin));
            out.add_sin(k, &(-&(&ks * &c.cos)));
        }
        out
    }

    /// Pointwise product, expanded by the product-to-sum formulas.
    pub fn product(&self, other: &TrigField) -> TrigField {
        let half = Scalar::new(1, 2);
        let mut out = TrigField::zero();
        for (&m, cm) in &self.terms {
            for (&n, cn) in &other.terms {
                let s = m + n;
                let d = m as i64 - n as i64;
                let dd = m.abs_diff(n);
                // cos(mt)cos(nt) = (cos((m+n)t) + cos((m-n)t)) / 2
                let aa = &cm.cos * &cn.cos;
                if !aa.is_zero() {
                    let v = &aa * &half;
                    out.add_cos(s, &v);
                    out.add_cos(dd, &v);
                }
                // sin(mt)sin(nt) = (cos((m-n)t) - cos((m+n)t)) / 2
                let bb = &cm.sin * &cn.sin;
                if !bb.is_zero() {
                    let v = &bb * &half;
                    out.add_cos(dd, &v);
                    out.add_cos(s, &(-&v));
                }
                // cos(mt)sin(nt) = (sin((m+n)t) - sin((m-n)t)) / 2
                let ab = &cm.cos * &cn.sin;
                if !ab.is_zero() {
                    let v = &ab * &half;
                    out.add_sin(s, &v);
                    if d > 0 {
                        out.add_sin(dd, &(-&v));
                    } else if d < 0 {
                        out.add_sin(dd, &v);
                    }
                }
                // sin(mt)cos(nt) = (sin((m+n)t) + sin((m-n)t)) / 2
                let ba = &cm.sin * &cn.cos;
                if !ba.is_zero() {
                    let v = &ba * &half;
                    out.add_sin(s, &v);
                    if d > 0 {
                        out.add_sin(dd, &v);
                    } else if d < 0 {
                        out.add_sin(dd, &(-&v));
                    }
                }
            }
        }
        out
    }

    /// Vector-field bracket `[x, y] = x*y' - x'*y`.
    pub fn bracket(&self, other: &TrigField) -> TrigField {
        &self.product(&other.derivative()) - &self.derivative().product(other)
    }

    /// The complex-structure action: `a_k cos + b_k sin` maps to
    /// `b_k cos - a_k sin` in every positive mode. Defined only on
    /// mean-zero fields.
    pub fn apply_j(&self) -> Result<TrigField, Error> {
        if !self.is_mean_zero() {
            return Err(Error::MeanZeroRequired {
                op: "apply_j",
                a0: self.mean(),
            });
        }
        let mut out = TrigField::zero();
        for (&k, c) in &self.terms {
            out.add_cos(k, &c.sin);
            out.add_sin(k, &(-&c.cos));
        }
        Ok(out)
    }

    /// Projection onto the mean-zero complement (drops the constant term).
    pub fn project_m(&self) -> TrigField {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    /// Projection onto the constant direction.
    pub fn project_h(&self) -> TrigField {
        let mut out = TrigField::zero();
        out.add_cos(0, &self.mean());
        out
    }

    /// Normalized pairing `(1/2pi) * integral of x*y over a period`:
    /// `a_0 a_0' + (1/2) sum_k (a_k a_k' + b_k b_k')`.
    pub fn integral_pair(&self, other: &TrigField) -> Scalar {
        let half = Scalar::new(1, 2);
        let mut acc = Scalar::zero();
        for (&k, c) in &self.terms {
            if let Some(d) = other.terms.get(&k) {
                let dot = &c.cos * &d.cos + &c.sin * &d.sin;
                if k == 0 {
                    acc = acc + dot;
                } else {
                    acc = acc + dot * &half;
                }
            }
        }
        acc
    }
}

impl Add for &TrigField {
    type Output = TrigField;
    fn add(self, rhs: &TrigField) -> TrigField {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_cos(k, &c.cos);
            out.add_sin(k, &c.sin);
        }
        out
    }
}

impl Sub for &TrigField {
    type Output = TrigField;
    fn sub(self, rhs: &TrigField) -> TrigField {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_cos(k, &(-&c.cos));
            out.add_sin(k, &(-&c.sin));
        }
        out
    }
}

impl Neg for &TrigField {
    type Output = TrigField;
    fn neg(self) -> TrigField {
        &TrigField::zero() - self
    }
}

impl Add for TrigField {
    type Output = TrigField;
    fn add(self, rhs: TrigField) -> TrigField {
        &self + &rhs
    }
}

impl Sub for TrigField {
    type Output = TrigField;
    fn sub(self, rhs: TrigField) -> TrigField {
        &self - &rhs
    }
}

impl Neg for TrigField {
    type Output = TrigField;
    fn neg(self) -> TrigField {
        -&self
    }
}

/// Canonical rendering: modes ascending, cosine before sine, unit
/// coefficients elided, e.g. `cos(1t) - 1/2*sin(3t)`. Parsing the output
/// reproduces the field.
impl fmt::Display for TrigField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Scalar, Option<(&str, u32)>)> = Vec::new();
        for (&k, c) in &self.terms {
            if k == 0 {
                terms.push((&c.cos, None));
                continue;
            }
            if !c.cos.is_zero() {
                terms.push((&c.cos, Some(("cos", k))));
            }
            if !c.sin.is_zero() {
                terms.push((&c.sin, Some(("sin", k))));
            }
        }
        for (i, (coeff, prim)) in terms.iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match prim {
                None => write!(f, "{mag}")?,
                Some((name, k)) => {
                    if mag.is_one() {
                        write!(f, "{name}({k}t)")?;
                    } else {
                        write!(f, "{mag}*{name}({k}t)")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for TrigField {
    type Err = FieldParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_field(s)
    }
}

impl Serialize for TrigField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            mode: u32,
            cos: &'a Scalar,
            sin: &'a Scalar,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&k, c) in &self.terms {
            seq.serialize_element(&Term {
                mode: k,
                cos: &c.cos,
                sin: &c.sin,
            })?;
        }
        seq.end()
    }
}

/// Label for a trigonometric basis vector: `F(k)` is `cos(kt)` with
/// `k >= 0`, `G(k)` is `sin(kt)` with `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    F(u32),
    G(u32),
}

impl BasisLabel {
    pub fn mode(self) -> u32 {
        match self {
            BasisLabel::F(k) | BasisLabel::G(k) => k,
        }
    }

    /// The labeled basis field. Panics on `G(0)`, which labels nothing.
    pub fn field(self) -> TrigField {
        match self {
            BasisLabel::F(k) => TrigField::basis_f(k),
            BasisLabel::G(k) => TrigField::basis_g(k).expect("G(0) is not a basis label"),
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::F(k) => write!(f, "cos({k}t)"),
            BasisLabel::G(k) => write!(f, "sin({k}t)"),
        }
    }
}

/// Bracket of two basis vectors assembled from the commutation table
/// (structure constants), independent of the analytic route:
///
/// ```text
/// [f_m, f_n] = ((m-n) g_{m+n} + (m+n) sgn(m-n) g_{|m-n|}) / 2
/// [g_m, g_n] = ((n-m) g_{m+n} + (m+n) sgn(m-n) g_{|m-n|}) / 2
/// [f_m, g_n] = ((n-m) f_{m+n} + (m+n) f_{|m-n|}) / 2
/// ```
///
/// with `[g_m, f_n] = -[f_n, g_m]` and vanishing diagonals in the first
/// two lines.
pub fn bracket_table(a: BasisLabel, b: BasisLabel) -> TrigField {
    use BasisLabel::{F, G};
    let half = Scalar::new(1, 2);
    let mut out = TrigField::zero();
    match (a, b) {
        (F(m), F(n)) | (G(m), G(n)) if m == n => {}
        (F(m), F(n)) => {
            let (mi, ni) = (m as i64, n as i64);
            out.add_sin(m + n, &(&half * &Scalar::int(mi - ni)));
            out.add_sin(
                m.abs_diff(n),
                &(&half * &Scalar::int((mi + ni) * (mi - ni).signum())),
            );
        }
        (G(m), G(n)) => {
            let (mi, ni) = (m as i64, n as i64);
            out.add_sin(m + n, &(&half * &Scalar::int(ni - mi)));
            out.add_sin(
                m.abs_diff(n),
                &(&half * &Scalar::int((mi + ni) * (mi - ni).signum())),
            );
        }
        (F(m), G(n)) => {
            let (mi, ni) = (m as i64, n as i64);
            out.add_cos(m + n, &(&half * &Scalar::int(ni - mi)));
            out.add_cos(m.abs_diff(n), &(&half * &Scalar::int(mi + ni)));
        }
        (G(_), F(_)) => {
            out = -&bracket_table(b, a);
        }
    }
    out
}
