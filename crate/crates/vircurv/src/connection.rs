//! The affine connection on mean-zero fields: the symmetric tensor `U`,
//! the covariant derivative, its torsion, and the metric-compatibility
//! defect.
//!
//! `U` is defined against the inner product by
//!
//! ```text
//! B(U(x, y), z) = (B([x, z]_m, y) + B(x, [y, z]_m)) / 2
//! ```
//!
//! and recovered here two ways: a basis scan of that defining equation
//! ([`u_oracle`]) and the closed-form case table ([`u_closed`]). The
//! covariant derivative is `nabla_x y = [x, y]_m / 2 + U(x, y)`.
//!
//! Both sign conventions for the defining equation are supported; they
//! differ by the orientation of the brackets on the right-hand side and
//! produce `U` tensors of opposite sign. Only the convention listed as
//! [`SignConvention::Nomizu`] makes `nabla` metric compatible; the other
//! leaves a nonzero defect that [`metric_defect`] measures.

use std::fmt;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::trig::{BasisLabel, TrigField};
use crate::virasoro::{inner_product_unchecked, require_mean_zero, CentralParams};

/// Orientation of the brackets in the defining equation of `U`.
///
/// `Paper` reads `B(U(x,y), z) = (B([x,z]_m, y) + B(x, [y,z]_m)) / 2`;
/// `Nomizu` brackets `z` from the left instead, negating `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    Paper,
    Nomizu,
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignConvention::Paper => write!(f, "paper"),
            SignConvention::Nomizu => write!(f, "nomizu"),
        }
    }
}

/// `lambda_{m,n} = (2n + m) theta_m / (2 theta_{m+n})` for signed `m`, `n`.
///
/// Undefined when `theta_{m+n} = 0`, in particular whenever `m + n = 0`.
pub fn lambda(params: &CentralParams, m: i64, n: i64) -> Result<Scalar, Error> {
    let denom = params.theta_nonzero(m + n)?;
    Ok(Scalar::int(2 * n + m) * params.theta(m) / (Scalar::int(2) * denom))
}

/// Recovers `U(x, y)` from its defining equation by scanning basis
/// vectors `z` up to the sum of the arguments' top modes: the coefficient
/// of `e_k` in `U` is `B(U, e_k) / (theta_k / 2)`.
pub fn u_oracle(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
    convention: SignConvention,
) -> Result<TrigField, Error> {
    require_mean_zero("u_oracle", x)?;
    require_mean_zero("u_oracle", y)?;
    let bound = x.max_mode() + y.max_mode();
    params.ensure_theta_positive(bound as i64)?;
    let half = Scalar::new(1, 2);
    let mut out = TrigField::zero();
    for k in 1..=bound {
        let half_theta = &half * &params.theta(k as i64);
        for label in [BasisLabel::F(k), BasisLabel::G(k)] {
            let e = label.field();
            // Every mode the pairings touch lies within 1..=bound.
            let bx = x.bracket(&e).project_m();
            let by = y.bracket(&e).project_m();
            let mut rhs = &half
                * &(inner_product_unchecked(params, &bx, y)
                    + inner_product_unchecked(params, x, &by));
            if convention == SignConvention::Nomizu {
                rhs = -rhs;
            }
            if rhs.is_zero() {
                continue;
            }
            let coeff = rhs / half_theta.clone();
            match label {
                BasisLabel::F(_) => out.add_cos(k, &coeff),
                BasisLabel::G(_) => out.add_sin(k, &coeff),
            }
        }
    }
    Ok(out)
}

/// Closed-form case table for `U` on basis pairs:
///
/// ```text
/// U(f_m, f_n) = ((l_{n,m} + l_{m,n}) g_{n+m} + (n+m)/2 g_{|n-m|}) / 2,  m != n
/// U(f_n, f_n) = l_{n,n} g_{2n}
/// U(f_m, g_n) = (-sgn(n-m) (n+m)/2 f_{|n-m|} - (l_{n,m} + l_{m,n}) f_{n+m}) / 2,  m != n
/// U(f_n, g_n) = -l_{n,n} f_{2n}
/// U(g_m, g_n) = ((n+m)/2 g_{|n-m|} - (l_{n,m} + l_{m,n}) g_{n+m}) / 2,  m != n
/// U(g_n, g_n) = -l_{n,n} g_{2n}
/// ```
///
/// with `l = lambda`; `U(g_m, f_n)` follows by symmetry of `U`.
pub fn u_closed(
    params: &CentralParams,
    a: BasisLabel,
    b: BasisLabel,
    convention: SignConvention,
) -> Result<TrigField, Error> {
    use BasisLabel::{F, G};
    let (m, n) = (a.mode(), b.mode());
    if m == 0 || n == 0 {
        return Err(Error::PositiveIndexRequired {
            got: if m == 0 { m as i64 } else { n as i64 },
        });
    }
    let (mi, ni) = (m as i64, n as i64);
    let half = Scalar::new(1, 2);
    let quarter = Scalar::new(1, 4);
    let mut out = TrigField::zero();
    match (a, b) {
        (F(_), F(_)) if m == n => {
            out.add_sin(2 * n, &lambda(params, ni, ni)?);
        }
        (F(_), F(_)) => {
            let sum = lambda(params, ni, mi)? + lambda(params, mi, ni)?;
            out.add_sin(m + n, &(&half * &sum));
            out.add_sin(m.abs_diff(n), &(&quarter * &Scalar::int(mi + ni)));
        }
        (F(_), G(_)) if m == n => {
            out.add_cos(2 * n, &(-&lambda(params, ni, ni)?));
        }
        (F(_), G(_)) => {
            let sum = lambda(params, ni, mi)? + lambda(params, mi, ni)?;
            out.add_cos(m + n, &(-&(&half * &sum)));
            let sign = if n > m { -1 } else { 1 };
            out.add_cos(m.abs_diff(n), &(&quarter * &Scalar::int(sign * (mi + ni))));
        }
        (G(_), G(_)) if m == n => {
            out.add_sin(2 * n, &(-&lambda(params, ni, ni)?));
        }
        (G(_), G(_)) => {
            let sum = lambda(params, ni, mi)? + lambda(params, mi, ni)?;
            out.add_sin(m + n, &(-&(&half * &sum)));
            out.add_sin(m.abs_diff(n), &(&quarter * &Scalar::int(mi + ni)));
        }
        (G(_), F(_)) => {
            // U is symmetric.
            out = u_closed(params, b, a, SignConvention::Paper)?;
        }
    }
    if convention == SignConvention::Nomizu {
        out = -&out;
    }
    Ok(out)
}

/// Covariant derivative `nabla_x y = [x, y]_m / 2 + U(x, y)` on mean-zero
/// fields, with `U` recovered from its defining equation.
pub fn nabla(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
    convention: SignConvention,
) -> Result<TrigField, Error> {
    let u = u_oracle(params, x, y, convention)?;
    let half_bracket = x.bracket(y).project_m().scale(&Scalar::new(1, 2));
    Ok(&half_bracket + &u)
}

/// Closed-form case table for `nabla` on basis pairs (sign convention of
/// the defining proposition):
///
/// ```text
/// nabla_{f_m} f_n = l_{m,n} g_{n+m}                       n > m
/// nabla_{f_m} f_n = l_{m,n} g_{n+m} + (n+m)/2 g_{m-n}     n < m
/// nabla_{f_n} f_n = l_{n,n} g_{2n}
/// nabla_{f_m} g_n = -l_{m,n} f_{n+m}                      n > m
/// nabla_{f_m} g_n = -l_{m,n} f_{n+m} + (m+n)/2 f_{m-n}    n < m
/// nabla_{f_n} g_n = -l_{n,n} f_{2n}
/// nabla_{g_n} f_m = -l_{n,m} f_{n+m} - (m+n)/2 f_{n-m}    n > m
/// nabla_{g_n} f_m = -l_{n,m} f_{n+m}                      n < m
/// nabla_{g_n} f_n = -l_{n,n} f_{2n}
/// nabla_{g_m} g_n = -l_{m,n} g_{n+m}                      n > m
/// nabla_{g_m} g_n = -l_{m,n} g_{n+m} + (n+m)/2 g_{m-n}    n < m
/// nabla_{g_n} g_n = -l_{n,n} g_{2n}
/// ```
pub fn nabla_closed(
    params: &CentralParams,
    a: BasisLabel,
    b: BasisLabel,
) -> Result<TrigField, Error> {
    use BasisLabel::{F, G};
    let (m, n) = (a.mode(), b.mode());
    if m == 0 || n == 0 {
        return Err(Error::PositiveIndexRequired {
            got: if m == 0 { m as i64 } else { n as i64 },
        });
    }
    let (mi, ni) = (m as i64, n as i64);
    let half_sum = Scalar::new(mi + ni, 2);
    let mut out = TrigField::zero();
    match (a, b) {
        (F(_), F(_)) => {
            out.add_sin(m + n, &lambda(params, mi, ni)?);
            if n < m {
                out.add_sin(m - n, &half_sum);
            }
        }
        (F(_), G(_)) => {
            out.add_cos(m + n, &(-&lambda(params, mi, ni)?));
            if n < m {
                out.add_cos(m - n, &half_sum);
            }
        }
        (G(_), F(_)) => {
            // Direction index is the sine mode m; argument is f_n.
            out.add_cos(m + n, &(-&lambda(params, mi, ni)?));
            if m > n {
                out.add_cos(m - n, &(-&half_sum));
            }
        }
        (G(_), G(_)) => {
            out.add_sin(m + n, &(-&lambda(params, mi, ni)?));
            if n < m {
                out.add_sin(m - n, &half_sum);
            }
        }
    }
    Ok(out)
}

/// Torsion `nabla_x y - nabla_y x - [x, y]_m`; vanishes in both sign
/// conventions because `U` is symmetric.
pub fn torsion(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
    convention: SignConvention,
) -> Result<TrigField, Error> {
    let xy = nabla(params, x, y, convention)?;
    let yx = nabla(params, y, x, convention)?;
    Ok(&(&xy - &yx) - &x.bracket(y).project_m())
}

/// Metric-compatibility defect `B(nabla_x y, z) + B(y, nabla_x z)`.
///
/// Zero in the Nomizu convention (the connection is metric); generically
/// nonzero in the paper convention.
pub fn metric_defect(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
    z: &TrigField,
    convention: SignConvention,
) -> Result<Scalar, Error> {
    require_mean_zero("metric_defect", z)?;
    let dy = nabla(params, x, y, convention)?;
    let dz = nabla(params, x, z, convention)?;
    let top = (x.max_mode() + y.max_mode()).max(x.max_mode() + z.max_mode());
    params.ensure_theta_positive(top as i64)?;
    Ok(inner_product_unchecked(params, &dy, z) + inner_product_unchecked(params, y, &dz))
}
