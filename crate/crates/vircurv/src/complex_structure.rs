//! The almost-complex machinery on mean-zero fields: the Nijenhuis
//! tensor of the per-mode rotation, the covariant derivative of that
//! rotation, the correction tensor `Q`, the modified connection
//! `nabla_tilde = nabla - Q`, its torsion and compatibility defect, and
//! the Hilbert-Schmidt divergence series of `nabla_tilde`.
//!
//! Everything here sits on top of the connection in its defining
//! (paper-orientation) sign convention; see [`crate::connection`].

use crate::connection::{lambda, metric_defect, nabla, SignConvention};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::trig::{BasisLabel, TrigField};
use crate::virasoro::CentralParams;

/// Nijenhuis tensor of the rotation `J`:
///
/// ```text
/// N(x, y) = 2([Jx, Jy]_m - [x, y]_m - J([x, Jy])_m - J([Jx, y])_m)
/// ```
///
/// Identically zero, which is what makes `J` integrable; kept as a
/// computation rather than a constant so the vanishing stays checkable.
pub fn nijenhuis(x: &TrigField, y: &TrigField) -> Result<TrigField, Error> {
    let jx = x.apply_j()?;
    let jy = y.apply_j()?;
    let a = jx.bracket(&jy).project_m();
    let b = x.bracket(y).project_m();
    let c = x.bracket(&jy).project_m().apply_j()?;
    let d = jx.bracket(y).project_m().apply_j()?;
    Ok((&(&(&a - &b) - &c) - &d).scale(&Scalar::int(2)))
}

/// Covariant derivative of the rotation, `(nabla_x J)(y) = nabla_x(Jy) -
/// J(nabla_x y)`, assembled from the connection.
pub fn nabla_j(params: &CentralParams, x: &TrigField, y: &TrigField) -> Result<TrigField, Error> {
    let conv = SignConvention::Paper;
    let a = nabla(params, x, &y.apply_j()?, conv)?;
    let b = nabla(params, x, y, conv)?.apply_j()?;
    Ok(&a - &b)
}

/// Closed-form case table for `nabla J` on basis pairs; independent of
/// the central parameters. Zero whenever the argument mode is at least
/// the direction mode; for argument mode `n` below direction mode `m`:
///
/// ```text
/// (nabla_{f_m} J)(f_n) = -(m+n) f_{m-n}
/// (nabla_{f_m} J)(g_n) =  (n+m) g_{m-n}
/// (nabla_{g_m} J)(f_n) = -(n+m) g_{m-n}
/// (nabla_{g_m} J)(g_n) = -(m+n) f_{m-n}
/// ```
pub fn nabla_j_closed(a: BasisLabel, b: BasisLabel) -> Result<TrigField, Error> {
    use BasisLabel::{F, G};
    let (m, n) = (a.mode(), b.mode());
    if m == 0 || n == 0 {
        return Err(Error::PositiveIndexRequired {
            got: if m == 0 { m as i64 } else { n as i64 },
        });
    }
    let mut out = TrigField::zero();
    if n >= m {
        return Ok(out);
    }
    let sum = Scalar::int(m as i64 + n as i64);
    match (a, b) {
        (F(_), F(_)) => out.add_cos(m - n, &(-&sum)),
        (F(_), G(_)) => out.add_sin(m - n, &sum),
        (G(_), F(_)) => out.add_sin(m - n, &(-&sum)),
        (G(_), G(_)) => out.add_cos(m - n, &(-&sum)),
    }
    Ok(out)
}

/// The symmetric correction tensor, defined through
///
/// ```text
/// 4 Q(x, y) = (nabla_{Jy} J)(x) + J((nabla_y J)(x)) + 2 J((nabla_x J)(y))
/// ```
pub fn q_tensor(params: &CentralParams, x: &TrigField, y: &TrigField) -> Result<TrigField, Error> {
    let a = nabla_j(params, &y.apply_j()?, x)?;
    let b = nabla_j(params, y, x)?.apply_j()?;
    let c = nabla_j(params, x, y)?.apply_j()?;
    let four_q = &(&a + &b) + &c.scale(&Scalar::int(2));
    Ok(four_q.scale(&Scalar::new(1, 4)))
}

/// Closed-form case table for `Q` on basis pairs; independent of the
/// central parameters. Diagonal entries vanish; off the diagonal with
/// `s = (m+n)/2` and `d = |n-m|`:
///
/// ```text
/// Q(f_m, f_n) =  s g_d
/// Q(f_m, g_n) = -s f_d  (n > m),   s f_d  (n < m)
/// Q(g_m, f_n) =  s f_d  (n > m),  -s f_d  (n < m)
/// Q(g_m, g_n) =  s g_d
/// ```
pub fn q_closed(a: BasisLabel, b: BasisLabel) -> Result<TrigField, Error> {
    use BasisLabel::{F, G};
    let (m, n) = (a.mode(), b.mode());
    if m == 0 || n == 0 {
        return Err(Error::PositiveIndexRequired {
            got: if m == 0 { m as i64 } else { n as i64 },
        });
    }
    let mut out = TrigField::zero();
    if m == n {
        return Ok(out);
    }
    let s = Scalar::new(m as i64 + n as i64, 2);
    let d = m.abs_diff(n);
    match (a, b) {
        (F(_), F(_)) | (G(_), G(_)) => out.add_sin(d, &s),
        (F(_), G(_)) => {
            if n > m {
                out.add_cos(d, &(-&s));
            } else {
                out.add_cos(d, &s);
            }
        }
        (G(_), F(_)) => {
            if n > m {
                out.add_cos(d, &s);
            } else {
                out.add_cos(d, &(-&s));
            }
        }
    }
    Ok(out)
}

/// The modified connection `nabla_tilde_x y = nabla_x y - Q(x, y)`,
/// assembled from independently computed pieces.
pub fn nabla_tilde(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
) -> Result<TrigField, Error> {
    let d = nabla(params, x, y, SignConvention::Paper)?;
    let q = q_tensor(params, x, y)?;
    Ok(&d - &q)
}

/// Closed-form case table for `nabla_tilde` on basis pairs:
///
/// ```text
/// nabla_tilde_{f_m} f_n = l_{m,n} g_{n+m} - (m+n)/2 g_{n-m}   n > m
/// nabla_tilde_{f_m} f_n = l_{m,n} g_{n+m}                     n < m
/// nabla_tilde_{f_n} f_n = l_{n,n} g_{2n}
/// nabla_tilde_{f_m} g_n = (m+n)/2 f_{n-m} - l_{m,n} f_{n+m}   n > m
/// nabla_tilde_{f_m} g_n = -l_{m,n} f_{n+m}                    n < m
/// nabla_tilde_{f_n} g_n = -l_{n,n} f_{2n}
/// nabla_tilde_{g_n} f_m = -l_{n,m} f_{n+m}                    n > m
/// nabla_tilde_{g_n} f_m = -l_{n,m} f_{n+m} - (m+n)/2 f_{m-n}  n < m
/// nabla_tilde_{g_n} f_n = -l_{n,n} f_{2n}
/// nabla_tilde_{g_m} g_n = -l_{m,n} g_{n+m} - (m+n)/2 g_{n-m}  n > m
/// nabla_tilde_{g_m} g_n = -l_{m,n} g_{n+m}                    n < m
/// nabla_tilde_{g_n} g_n = -l_{n,n} g_{2n}
/// ```
///
/// with `l = lambda` and, on the `g` direction lines, the first index
/// naming the direction mode.
pub fn nabla_tilde_closed(
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
            if n > m {
                out.add_sin(n - m, &(-&half_sum));
            }
        }
        (F(_), G(_)) => {
            out.add_cos(m + n, &(-&lambda(params, mi, ni)?));
            if n > m {
                out.add_cos(n - m, &half_sum);
            }
        }
        (G(_), F(_)) => {
            out.add_cos(m + n, &(-&lambda(params, mi, ni)?));
            if n > m {
                out.add_cos(n - m, &(-&half_sum));
            }
        }
        (G(_), G(_)) => {
            out.add_sin(m + n, &(-&lambda(params, mi, ni)?));
            if n > m {
                out.add_sin(n - m, &(-&half_sum));
            }
        }
    }
    Ok(out)
}

/// Torsion of the modified connection; vanishes because `Q` is
/// symmetric and `nabla` is already torsion free.
pub fn torsion_tilde(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
) -> Result<TrigField, Error> {
    let xy = nabla_tilde(params, x, y)?;
    let yx = nabla_tilde(params, y, x)?;
    Ok(&(&xy - &yx) - &x.bracket(y).project_m())
}

/// Compatibility defect of the modified connection,
/// `B(nabla_tilde_x y, z) + B(y, nabla_tilde_x z)`. Reported, not
/// asserted zero: like the unmodified connection it is generically
/// nonzero in this convention.
pub fn tilde_metric_defect(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
    z: &TrigField,
) -> Result<Scalar, Error> {
    // metric_defect(paper) measures nabla; subtract the Q contribution.
    let base = metric_defect(params, x, y, z, SignConvention::Paper)?;
    let qy = q_tensor(params, x, y)?;
    let qz = q_tensor(params, x, z)?;
    let top = (qy.max_mode().max(z.max_mode())).max(qz.max_mode().max(y.max_mode()));
    params.ensure_theta_positive(top as i64)?;
    let q_part = crate::virasoro::inner_product_unchecked(params, &qy, z)
        + crate::virasoro::inner_product_unchecked(params, y, &qz);
    Ok(base - q_part)
}

/// Partial sum through `m = M` of the divergent Hilbert-Schmidt series
/// of `nabla_tilde . f_n`:
///
/// ```text
/// sum_{m<n} (l_{m,n}^2 th_{n+m} / (th_n th_m) + (m+n)^2 th_{n-m} / (4 th_n th_m))
///   + l_{n,n}^2 th_{2n} / th_n^2
///   + sum_{n<m<=M} l_{m,n}^2 th_{n+m} / (th_n th_m)
/// ```
///
/// with `l = lambda`, `th = theta`. Each term is the squared norm of
/// the two derivatives of `f_n` along the mode-`m` basis directions,
/// divided by `theta_m theta_n`.
pub fn hs_partial_sum(params: &CentralParams, n: i64, m_max: i64) -> Result<Scalar, Error> {
    if n < 1 {
        return Err(Error::PositiveIndexRequired { got: n });
    }
    if m_max < 1 {
        return Err(Error::PositiveIndexRequired { got: m_max });
    }
    params.ensure_theta_positive(m_max + n)?;
    let theta_n = params.theta(n);
    let mut sum = Scalar::zero();
    for m in 1..=m_max {
        let theta_m = params.theta(m);
        let l = lambda(params, m, n)?;
        let mut term = &(&l * &l) * &params.theta(n + m);
        if m < n {
            let s = Scalar::int(m + n);
            term = term + &(&s * &s) * &params.theta(n - m) / Scalar::int(4);
        }
        sum = sum + term / (&theta_n * &theta_m);
    }
    Ok(sum)
}
