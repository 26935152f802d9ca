//! The complexified calculus: fields expanded over the signed basis
//! `L_k` (`L_m = f_m + i g_m`, `L_{-m} = f_m - i g_m`), the modified
//! connection and bracket in that basis, the curvature tensor, and the
//! regularized Ricci trace with its telescoping bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::connection::lambda;
use crate::error::Error;
use crate::scalar::{ComplexScalar, Scalar};
use crate::trig::TrigField;
use crate::virasoro::CentralParams;

/// A finitely supported expansion over the signed basis `L_k`, `k` a
/// nonzero integer. Realification (see [`to_complex`] / [`from_complex`])
/// is a linear bijection onto pairs of mean-zero real fields.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplexField {
    // Invariant: no zero coefficients, no key 0.
    terms: BTreeMap<i64, ComplexScalar>,
}

impl ComplexField {
    pub fn zero() -> Self {
        ComplexField::default()
    }

    /// The basis field `L_k`; `k` must be nonzero.
    pub fn basis(k: i64) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::NonzeroIndexRequired);
        }
        let mut terms = BTreeMap::new();
        terms.insert(k, ComplexScalar::one());
        Ok(ComplexField { terms })
    }

    pub(crate) fn add_term(&mut self, k: i64, v: &ComplexScalar) {
        debug_assert!(k != 0, "index 0 is not part of the basis");
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(ComplexScalar::zero);
        *entry = &*entry + v;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> ComplexScalar {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(ComplexScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `|k|` with a nonzero coefficient.
    pub fn max_abs_index(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ComplexScalar)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn scale(&self, s: &ComplexScalar) -> Self {
        let mut out = ComplexField::zero();
        for (k, v) in self.iter() {
            out.add_term(k, &(v * s));
        }
        out
    }
}

impl std::ops::Add for &ComplexField {
    type Output = ComplexField;
    fn add(self, rhs: &ComplexField) -> ComplexField {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_term(k, v);
        }
        out
    }
}

impl std::ops::Sub for &ComplexField {
    type Output = ComplexField;
    fn sub(self, rhs: &ComplexField) -> ComplexField {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_term(k, &-v);
        }
        out
    }
}

impl std::ops::Neg for &ComplexField {
    type Output = ComplexField;
    fn neg(self) -> ComplexField {
        let mut out = ComplexField::zero();
        for (k, v) in self.iter() {
            out.add_term(k, &-v);
        }
        out
    }
}

impl fmt::Display for ComplexField {
    /// Canonical form: indices ascending, `L[k]` labels, coefficients
    /// parenthesized when they have two parts, e.g.
    /// `-2i*L[-3] + (1 - (1/2)i)*L[1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = v.to_string();
            if coeff == "1" {
                write!(f, "L[{k}]")?;
            } else if coeff.contains(' ') {
                write!(f, "({coeff})*L[{k}]")?;
            } else {
                write!(f, "{coeff}*L[{k}]")?;
            }
        }
        Ok(())
    }
}

impl Serialize for ComplexField {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            index: i64,
            re: &'a Scalar,
            im: &'a Scalar,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (k, v) in self.iter() {
            seq.serialize_element(&Term {
                index: k,
                re: &v.re,
                im: &v.im,
            })?;
        }
        seq.end()
    }
}

/// Expands `x + iy` over the signed basis. Both inputs must be mean
/// zero; the constant direction has no counterpart among the `L_k`.
pub fn to_complex(x: &TrigField, y: &TrigField) -> Result<ComplexField, Error> {
    crate::virasoro::require_mean_zero("to_complex", x)?;
    crate::virasoro::require_mean_zero("to_complex", y)?;
    let half = Scalar::new(1, 2);
    let mut out = ComplexField::zero();
    let mut modes: Vec<u32> = Vec::new();
    for (k, _, _) in x.iter() {
        modes.push(k);
    }
    for (k, _, _) in y.iter() {
        if !modes.contains(&k) {
            modes.push(k);
        }
    }
    for k in modes {
        let (a, b) = (x.cos_coeff(k), x.sin_coeff(k));
        let (ap, bp) = (y.cos_coeff(k), y.sin_coeff(k));
        // cos k t = (L_k + L_{-k})/2, sin k t = (L_k - L_{-k})/(2i).
        let plus = ComplexScalar::new(&half * &(&a + &bp), &half * &(&ap - &b));
        let minus = ComplexScalar::new(&half * &(&a - &bp), &half * &(&ap + &b));
        out.add_term(k as i64, &plus);
        out.add_term(-(k as i64), &minus);
    }
    Ok(out)
}

/// Inverse of [`to_complex`]: splits a complex field into the unique
/// pair of real fields `(x, y)` with `z = x + iy`.
pub fn from_complex(z: &ComplexField) -> (TrigField, TrigField) {
    let mut x = TrigField::zero();
    let mut y = TrigField::zero();
    let mut modes: Vec<i64> = z.iter().map(|(k, _)| k.abs()).collect();
    modes.sort_unstable();
    modes.dedup();
    for m in modes {
        let u = z.coeff(m);
        let v = z.coeff(-m);
        // Coefficient of f_m is u + v, of g_m is i(u - v).
        let cos = &u + &v;
        let sin = (&u - &v).times_i();
        let k = m as u32;
        x.add_cos(k, &cos.re);
        x.add_sin(k, &sin.re);
        y.add_cos(k, &cos.im);
        y.add_sin(k, &sin.im);
    }
    (x, y)
}

/// Bracket in the signed basis, projected onto the mean-zero part:
/// `[L_p, L_q] = i(q - p) L_{p+q}` whenever `p + q` is nonzero. The
/// constant component that appears when `p + q = 0` is reported
/// separately by [`complex_bracket_central`].
pub fn complex_bracket(a: &ComplexField, b: &ComplexField) -> ComplexField {
    let mut out = ComplexField::zero();
    for (p, cp) in a.iter() {
        for (q, cq) in b.iter() {
            if p + q == 0 {
                continue;
            }
            let factor = ComplexScalar::imag_int(q - p);
            out.add_term(p + q, &(&(cp * cq) * &factor));
        }
    }
    out
}

/// Coefficient of the constant direction in the bracket: the terms
/// with `p + q = 0`, each contributing `-2ip` times the product of the
/// coefficients of `L_p` and `L_{-p}`.
pub fn complex_bracket_central(a: &ComplexField, b: &ComplexField) -> ComplexScalar {
    let mut out = ComplexScalar::zero();
    for (p, cp) in a.iter() {
        let cq = b.coeff(-p);
        if cq.is_zero() {
            continue;
        }
        out = &out + &(&(cp * &cq) * &ComplexScalar::imag_int(-2 * p));
    }
    out
}

/// Single-basis-pair case table for the modified connection; returns
/// the target index and coefficient, or `None` when the derivative
/// vanishes. For directions `p` and arguments `q`:
///
/// ```text
/// p > 0, q > 0:  -2i lambda_{p,q} L_{p+q}
/// p < 0, q < 0:   2i lambda_{-p,-q} L_{p+q}
/// mixed signs:    i(q - p) L_{p+q} when p + q has the sign of q, else 0
/// ```
fn nabla_tilde_basis(
    params: &CentralParams,
    p: i64,
    q: i64,
) -> Result<Option<(i64, ComplexScalar)>, Error> {
    debug_assert!(p != 0 && q != 0);
    if p > 0 && q > 0 {
        let l = lambda(params, p, q)?;
        return Ok(Some((
            p + q,
            ComplexScalar::new(Scalar::zero(), -(Scalar::int(2) * l)),
        )));
    }
    if p < 0 && q < 0 {
        let l = lambda(params, -p, -q)?;
        return Ok(Some((
            p + q,
            ComplexScalar::new(Scalar::zero(), Scalar::int(2) * l),
        )));
    }
    if (p + q).signum() == q.signum() && p + q != 0 {
        return Ok(Some((p + q, ComplexScalar::imag_int(q - p))));
    }
    Ok(None)
}

/// The modified connection in the signed basis, extended bilinearly
/// from the case table of [`nabla_tilde_basis`]; agrees with the real
/// [`crate::complex_structure::nabla_tilde`] under realification.
pub fn nabla_tilde_complex(
    params: &CentralParams,
    a: &ComplexField,
    b: &ComplexField,
) -> Result<ComplexField, Error> {
    let mut out = ComplexField::zero();
    for (p, cp) in a.iter() {
        for (q, cq) in b.iter() {
            if let Some((k, v)) = nabla_tilde_basis(params, p, q)? {
                out.add_term(k, &(&(cp * cq) * &v));
            }
        }
    }
    Ok(out)
}

/// Curvature of the modified connection:
///
/// ```text
/// R_{x,y} z = nt_x nt_y z - nt_y nt_x z - nt_{[x,y]_m} z - ad([x,y]_h) z
/// ```
///
/// with `nt = nabla_tilde_complex`. The last term is the action of the
/// constant component of the bracket: the constant direction scales
/// `L_k` by `ik`, and the purely central component acts trivially.
pub fn curvature(
    params: &CentralParams,
    x: &ComplexField,
    y: &ComplexField,
    z: &ComplexField,
) -> Result<ComplexField, Error> {
    let a = nabla_tilde_complex(params, x, &nabla_tilde_complex(params, y, z)?)?;
    let b = nabla_tilde_complex(params, y, &nabla_tilde_complex(params, x, z)?)?;
    let c = nabla_tilde_complex(params, &complex_bracket(x, y), z)?;
    let central = complex_bracket_central(x, y);
    let mut ad = ComplexField::zero();
    if !central.is_zero() {
        for (k, v) in z.iter() {
            ad.add_term(k, &(&(v * &central) * &ComplexScalar::imag_int(k)));
        }
    }
    Ok(&(&(&a - &b) - &c) - &ad)
}

/// Diagonal curvature coefficient: the number `r` with
/// `R_{L_{-m}, L_n} L_{-n} = r L_{-m}`, in closed form.
///
/// ```text
/// m <= n:  -2(m+2n) lambda_{m,n} - (2n-m)(m+n)
/// m > n:   -2(m+2n) lambda_{m,n} + 2(m+n) lambda_{m-n,n}
/// ```
pub fn ricci_coefficient(params: &CentralParams, m: i64, n: i64) -> Result<Scalar, Error> {
    if m < 1 {
        return Err(Error::PositiveIndexRequired { got: m });
    }
    if n < 1 {
        return Err(Error::PositiveIndexRequired { got: n });
    }
    let head = Scalar::int(-2 * (m + 2 * n)) * lambda(params, m, n)?;
    if m <= n {
        Ok(head - Scalar::int((2 * n - m) * (m + n)))
    } else {
        Ok(head + Scalar::int(2 * (m + n)) * lambda(params, m - n, n)?)
    }
}

/// Same coefficient extracted from the full curvature operation; the
/// result of `R_{L_{-m}, L_n} L_{-n}` is a multiple of `L_{-m}` and
/// this returns that (complex) multiple.
pub fn ricci_coefficient_from_curvature(
    params: &CentralParams,
    m: i64,
    n: i64,
) -> Result<ComplexScalar, Error> {
    if m < 1 {
        return Err(Error::PositiveIndexRequired { got: m });
    }
    if n < 1 {
        return Err(Error::PositiveIndexRequired { got: n });
    }
    let r = curvature(
        params,
        &ComplexField::basis(-m)?,
        &ComplexField::basis(n)?,
        &ComplexField::basis(-n)?,
    )?;
    Ok(r.coeff(-m))
}

/// Truncated Ricci sum at cutoff `M >= n` together with the telescoping
/// boundary. Returns `(partial, boundary)` where
///
/// ```text
/// partial  = (1/theta_n) sum_{m=1}^{M} ricci_coefficient(m, n)
/// boundary = (1/theta_n) sum_{m=M-n+1}^{M} A(m),   A(k) = 2(k+2n) lambda_{k,n}
/// ```
///
/// and `partial + boundary = ricci_regularized(n)` exactly, for every
/// cutoff: the coefficients telescope through `A`.
pub fn ricci_partial(
    params: &CentralParams,
    n: i64,
    cutoff: i64,
) -> Result<(Scalar, Scalar), Error> {
    if n < 1 {
        return Err(Error::PositiveIndexRequired { got: n });
    }
    if cutoff < n {
        return Err(Error::CutoffBelowIndex { cutoff, n });
    }
    params.ensure_theta_positive(cutoff + n)?;
    let theta_n = params.theta(n);
    let mut partial = Scalar::zero();
    for m in 1..=cutoff {
        partial = partial + ricci_coefficient(params, m, n)?;
    }
    let mut boundary = Scalar::zero();
    for k in (cutoff - n + 1)..=cutoff {
        boundary = boundary + Scalar::int(2 * (k + 2 * n)) * lambda(params, k, n)?;
    }
    Ok((partial / &theta_n, boundary / theta_n))
}

/// The telescoped (regularized) Ricci value,
/// `-(1/theta_n) sum_{m=1}^{n} (m+n)(2n-m)`.
pub fn ricci_regularized(params: &CentralParams, n: i64) -> Result<Scalar, Error> {
    let theta_n = positive_theta(params, n)?;
    let mut sum = Scalar::zero();
    for m in 1..=n {
        sum = sum + Scalar::int((m + n) * (2 * n - m));
    }
    Ok(-sum / theta_n)
}

/// The closed form of the Ricci trace, `-(13n^3 - n) / (6 theta_n)`.
pub fn ricci_closed_form(params: &CentralParams, n: i64) -> Result<Scalar, Error> {
    let theta_n = positive_theta(params, n)?;
    Ok(Scalar::int(-(13 * n * n * n - n)) / (Scalar::int(6) * theta_n))
}

fn positive_theta(params: &CentralParams, n: i64) -> Result<Scalar, Error> {
    if n < 1 {
        return Err(Error::PositiveIndexRequired { got: n });
    }
    let theta_n = params.theta(n);
    if !theta_n.is_positive() {
        return Err(Error::ThetaNotPositive {
            k: n,
            value: Box::new(theta_n),
            c: Box::new(params.c().clone()),
            h: Box::new(params.h().clone()),
        });
    }
    Ok(theta_n)
}

/// One row of a [`RicciReport`]: the truncated sum and boundary term at
/// a single cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RicciCutoff {
    pub cutoff: i64,
    pub partial_sum: Scalar,
    pub boundary_term: Scalar,
}

/// The Ricci trace at one mode: regularized value, closed form, and
/// the truncation bookkeeping at each requested cutoff. The headline
/// identity is `regularized == closed_form`; each row satisfies
/// `partial_sum + boundary_term == regularized`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RicciReport {
    pub n: i64,
    pub c: Scalar,
    pub h: Scalar,
    pub regularized: Scalar,
    pub closed_form: Scalar,
    pub cutoffs: Vec<RicciCutoff>,
}

/// Assembles the full report for mode `n` at the given cutoffs.
pub fn ricci_report(params: &CentralParams, n: i64, cutoffs: &[i64]) -> Result<RicciReport, Error> {
    let regularized = ricci_regularized(params, n)?;
    let closed_form = ricci_closed_form(params, n)?;
    let mut rows = Vec::with_capacity(cutoffs.len());
    for &cutoff in cutoffs {
        let (partial_sum, boundary_term) = ricci_partial(params, n, cutoff)?;
        rows.push(RicciCutoff {
            cutoff,
            partial_sum,
            boundary_term,
        });
    }
    Ok(RicciReport {
        n,
        c: params.c().clone(),
        h: params.h().clone(),
        regularized,
        closed_form,
        cutoffs: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_structure::nabla_tilde;
    use crate::trig::TrigField;

    fn fld(s: &str) -> TrigField {
        s.parse().unwrap()
    }

    fn basis(k: i64) -> ComplexField {
        ComplexField::basis(k).unwrap()
    }

    #[test]
    fn to_complex_examples() {
        let f3 = to_complex(&TrigField::basis_f(3), &TrigField::zero()).unwrap();
        assert_eq!(
            f3.coeff(3),
            ComplexScalar::new(Scalar::new(1, 2), Scalar::zero())
        );
        assert_eq!(
            f3.coeff(-3),
            ComplexScalar::new(Scalar::new(1, 2), Scalar::zero())
        );
        let g2 = to_complex(&TrigField::zero(), &TrigField::basis_g(2).unwrap()).unwrap();
        assert_eq!(
            g2.coeff(2),
            ComplexScalar::new(Scalar::new(1, 2), Scalar::zero())
        );
        assert_eq!(
            g2.coeff(-2),
            ComplexScalar::new(Scalar::new(-1, 2), Scalar::zero())
        );
        // L_m = f_m + i g_m on the nose.
        let l4 = to_complex(&TrigField::basis_f(4), &TrigField::basis_g(4).unwrap()).unwrap();
        assert_eq!(l4, basis(4));
        let l_neg =
            to_complex(&TrigField::basis_f(4), &(-&TrigField::basis_g(4).unwrap())).unwrap();
        assert_eq!(l_neg, basis(-4));
    }

    #[test]
    fn to_complex_rejects_constant_part() {
        let e = to_complex(&fld("1 + cos(1t)"), &TrigField::zero());
        assert!(matches!(e, Err(Error::MeanZeroRequired { .. })));
    }

    #[test]
    fn round_trip_identity() {
        let x = fld("cos(1t) - 2*sin(3t) + 1/7*cos(5t)");
        let y = fld("sin(1t) + 4*cos(2t)");
        let z = to_complex(&x, &y).unwrap();
        assert_eq!(from_complex(&z), (x, y));
        // And the other way, starting from the complex side.
        let mut w = ComplexField::zero();
        w.add_term(-3, &ComplexScalar::new(Scalar::new(2, 5), Scalar::int(-1)));
        w.add_term(1, &ComplexScalar::i());
        let (u, v) = from_complex(&w);
        assert_eq!(to_complex(&u, &v).unwrap(), w);
    }

    #[test]
    fn bracket_examples() {
        let b = complex_bracket(&basis(1), &basis(2));
        assert_eq!(b.coeff(3), ComplexScalar::imag_int(1));
        assert_eq!(b.max_abs_index(), 3);
        let b = complex_bracket(&basis(-1), &basis(2));
        assert_eq!(b.coeff(1), ComplexScalar::imag_int(3));
        assert!(complex_bracket(&basis(2), &basis(2)).is_zero());
        // Opposite indices contribute only the constant direction.
        assert!(complex_bracket(&basis(2), &basis(-2)).is_zero());
        assert_eq!(
            complex_bracket_central(&basis(2), &basis(-2)),
            ComplexScalar::imag_int(-4)
        );
    }

    #[test]
    fn bracket_central_matches_real_constant_part() {
        // [f_n, g_n] = n f_0: the complexification must see the same
        // constant component.
        for n in 1..=5u32 {
            let fe = to_complex(&TrigField::basis_f(n), &TrigField::zero()).unwrap();
            let ge = to_complex(&TrigField::basis_g(n).unwrap(), &TrigField::zero()).unwrap();
            let central = complex_bracket_central(&fe, &ge);
            assert_eq!(central, ComplexScalar::from_real(Scalar::int(n as i64)));
        }
    }

    #[test]
    fn bracket_commutes_with_realification() {
        for p in [-4i64, -2, -1, 1, 3, 4] {
            for q in [-4i64, -3, -1, 1, 2, 4] {
                let (xp, yp) = from_complex(&basis(p));
                let (xq, yq) = from_complex(&basis(q));
                let u = &xp.bracket(&xq).project_m() - &yp.bracket(&yq).project_m();
                let v = &xp.bracket(&yq).project_m() + &yp.bracket(&xq).project_m();
                assert_eq!(
                    complex_bracket(&basis(p), &basis(q)),
                    to_complex(&u, &v).unwrap(),
                    "bracket realification mismatch at ({p}, {q})"
                );
            }
        }
    }

    #[test]
    fn nabla_tilde_complex_examples() {
        let p = CentralParams::cubic();
        let d = nabla_tilde_complex(&p, &basis(1), &basis(2)).unwrap();
        assert_eq!(
            d.coeff(3),
            ComplexScalar::new(Scalar::zero(), Scalar::new(-5, 27))
        );
        assert!(nabla_tilde_complex(&p, &basis(-2), &basis(2))
            .unwrap()
            .is_zero());
        let d = nabla_tilde_complex(&p, &basis(-1), &basis(3)).unwrap();
        assert_eq!(d.coeff(2), ComplexScalar::imag_int(4));
        assert_eq!(d.max_abs_index(), 2);
    }

    #[test]
    fn nabla_tilde_complex_commutes_with_realification() {
        let p = CentralParams::cubic();
        for a in [-6i64, -3, -1, 1, 2, 6] {
            for b in [-6i64, -4, -1, 1, 3, 6] {
                let (xa, ya) = from_complex(&basis(a));
                let (xb, yb) = from_complex(&basis(b));
                let u = &nabla_tilde(&p, &xa, &xb).unwrap() - &nabla_tilde(&p, &ya, &yb).unwrap();
                let v = &nabla_tilde(&p, &xa, &yb).unwrap() + &nabla_tilde(&p, &ya, &xb).unwrap();
                assert_eq!(
                    nabla_tilde_complex(&p, &basis(a), &basis(b)).unwrap(),
                    to_complex(&u, &v).unwrap(),
                    "realification mismatch at ({a}, {b})"
                );
            }
        }
    }

    #[test]
    fn curvature_examples() {
        let p = CentralParams::cubic();
        assert!(curvature(&p, &basis(1), &basis(2), &basis(-2))
            .unwrap()
            .is_zero());
        let r = curvature(&p, &basis(-1), &basis(2), &basis(-2)).unwrap();
        assert_eq!(r.coeff(-1), ComplexScalar::from_real(Scalar::new(-268, 27)));
        assert_eq!(r.max_abs_index(), 1);
        // Diagonal case n = 1: -6 n lambda_{n,n} - 2 n^2 = -25/8.
        let r = curvature(&p, &basis(-1), &basis(1), &basis(-1)).unwrap();
        assert_eq!(r.coeff(-1), ComplexScalar::from_real(Scalar::new(-25, 8)));
    }

    #[test]
    fn curvature_is_graded() {
        let p = CentralParams::cubic();
        for x in [-3i64, -1, 2] {
            for y in [-2i64, 1, 3] {
                for z in [-3i64, -1, 1, 2] {
                    let r = curvature(&p, &basis(x), &basis(y), &basis(z)).unwrap();
                    for (k, _) in r.iter() {
                        assert_eq!(k, x + y + z, "stray index in R(L_{x}, L_{y})L_{z}");
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_uses_central_term() {
        // With x = L_n, y = L_{-n} the bracket is purely central and the
        // ad-term is what keeps the diagonal coefficient correct; dropping
        // it would shift the n = 1 value by 2.
        let p = CentralParams::cubic();
        let r = curvature(&p, &basis(-1), &basis(1), &basis(-1)).unwrap();
        let no_central = &nabla_tilde_complex(
            &p,
            &basis(-1),
            &nabla_tilde_complex(&p, &basis(1), &basis(-1)).unwrap(),
        )
        .unwrap()
            - &nabla_tilde_complex(
                &p,
                &basis(1),
                &nabla_tilde_complex(&p, &basis(-1), &basis(-1)).unwrap(),
            )
            .unwrap();
        assert_ne!(r, no_central);
        assert_eq!(
            (&no_central - &r).coeff(-1),
            ComplexScalar::from_real(Scalar::int(2))
        );
    }

    #[test]
    fn ricci_coefficient_examples() {
        let p = CentralParams::cubic();
        assert_eq!(ricci_coefficient(&p, 1, 2).unwrap(), Scalar::new(-268, 27));
        assert_eq!(ricci_coefficient(&p, 1, 1).unwrap(), Scalar::new(-25, 8));
    }

    #[test]
    fn ricci_coefficient_matches_curvature() {
        let p = CentralParams::cubic();
        for m in 1..=8i64 {
            for n in 1..=8i64 {
                let closed = ricci_coefficient(&p, m, n).unwrap();
                let extracted = ricci_coefficient_from_curvature(&p, m, n).unwrap();
                assert_eq!(
                    extracted,
                    ComplexScalar::from_real(closed),
                    "coefficient mismatch at (m={m}, n={n})"
                );
            }
        }
    }

    #[test]
    fn positive_direction_contributions_vanish() {
        let p = CentralParams::cubic();
        for m in 1..=6i64 {
            for n in 1..=6i64 {
                if m == n {
                    continue;
                }
                let r = curvature(&p, &basis(m), &basis(n), &basis(-n)).unwrap();
                assert!(r.is_zero(), "nonzero R(L_{m}, L_{n})L_{{-{n}}}");
            }
        }
    }

    #[test]
    fn ricci_partial_example() {
        let p = CentralParams::cubic();
        let (partial, boundary) = ricci_partial(&p, 1, 1).unwrap();
        assert_eq!(partial, Scalar::new(-25, 8));
        assert_eq!(boundary, Scalar::new(9, 8));
        assert_eq!(partial + boundary, Scalar::int(-2));
    }

    #[test]
    fn telescoping_holds_at_every_cutoff() {
        let p = CentralParams::cubic();
        for n in 1..=4i64 {
            let reg = ricci_regularized(&p, n).unwrap();
            for cutoff in n..=(n + 12) {
                let (partial, boundary) = ricci_partial(&p, n, cutoff).unwrap();
                assert!(boundary.is_positive());
                assert_eq!(
                    partial + boundary,
                    reg,
                    "telescoping fails at n={n}, M={cutoff}"
                );
            }
        }
    }

    #[test]
    fn ricci_values_at_cubic() {
        let p = CentralParams::cubic();
        assert_eq!(ricci_regularized(&p, 1).unwrap(), Scalar::int(-2));
        assert_eq!(ricci_regularized(&p, 2).unwrap(), Scalar::new(-17, 8));
        assert_eq!(ricci_regularized(&p, 3).unwrap(), Scalar::new(-58, 27));
        for n in 1..=20 {
            assert_eq!(
                ricci_regularized(&p, n).unwrap(),
                ricci_closed_form(&p, n).unwrap()
            );
        }
    }

    #[test]
    fn ricci_rejects_bad_modes() {
        let p = CentralParams::cubic();
        assert!(matches!(
            ricci_closed_form(&p, 0),
            Err(Error::PositiveIndexRequired { got: 0 })
        ));
        assert!(matches!(
            ricci_partial(&p, 3, 2),
            Err(Error::CutoffBelowIndex { cutoff: 2, n: 3 })
        ));
        let degenerate = CentralParams::fundamental();
        assert!(matches!(
            ricci_closed_form(&degenerate, 1),
            Err(Error::ThetaNotPositive { k: 1, .. })
        ));
    }

    #[test]
    fn report_rows_are_consistent() {
        let p = CentralParams::cubic();
        let report = ricci_report(&p, 2, &[2, 5, 9]).unwrap();
        assert_eq!(report.regularized, report.closed_form);
        assert_eq!(report.cutoffs.len(), 3);
        for row in &report.cutoffs {
            assert_eq!(
                &row.partial_sum + &row.boundary_term,
                report.regularized,
                "row at cutoff {} inconsistent",
                row.cutoff
            );
        }
    }

    #[test]
    fn display_is_canonical() {
        let mut z = ComplexField::zero();
        z.add_term(3, &ComplexScalar::new(Scalar::int(1), Scalar::new(-1, 2)));
        z.add_term(-3, &ComplexScalar::imag_int(-2));
        assert_eq!(z.to_string(), "-2i*L[-3] + (1 - (1/2)i)*L[3]");
        assert_eq!(ComplexField::zero().to_string(), "0");
        assert_eq!(basis(5).to_string(), "L[5]");
    }
}
