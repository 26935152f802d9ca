//! Central extension of the vector-field algebra: weights, cocycle,
//! bracket, and the induced inner product.
//!
//! The two-parameter family is indexed by central parameters `(c, h)`.
//! The weight of mode `k` is `theta_k = 2hk + (c/12)(k^3 - k)`; the
//! cocycle evaluates `(1/2pi) * integral of ((2h - c/12) x' - (c/12) x''') y`,
//! and the inner product on mean-zero fields is `B(x, y) = cocycle(x, Jy)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::trig::{BasisLabel, TrigField};

/// Central parameters `(c, h)`.
///
/// Any rational pair is accepted at construction; operations that need
/// positive weights validate the modes they touch and report the first
/// failing one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralParams {
    c: Scalar,
    h: Scalar,
}

impl CentralParams {
    pub fn new(c: Scalar, h: Scalar) -> Self {
        CentralParams { c, h }
    }

    /// `c = 12`, `h = 1/2`: the preset with `theta_k = k^3`.
    pub fn cubic() -> Self {
        CentralParams::new(Scalar::int(12), Scalar::new(1, 2))
    }

    /// `c = 6`, `h = 0`: the fundamental-cocycle preset. `theta_1 = 0`
    /// here, so it supports cocycle computations but not the metric.
    pub fn fundamental() -> Self {
        CentralParams::new(Scalar::int(6), Scalar::zero())
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn h(&self) -> &Scalar {
        &self.h
    }

    /// `theta_k = 2hk + (c/12)(k^3 - k)`, odd in `k`.
    pub fn theta(&self, k: i64) -> Scalar {
        let kb = BigInt::from(k);
        let cube = Scalar::from_bigint(&kb * &kb * &kb);
        let lin = Scalar::int(k);
        let two_h = Scalar::int(2) * &self.h;
        let c_twelfth = &self.c * &Scalar::new(1, 12);
        two_h * &lin + c_twelfth * (cube - lin)
    }

    /// Checks `theta_k > 0` for every `k` in `1..=max`, reporting the
    /// first failure.
    pub fn ensure_theta_positive(&self, max: i64) -> Result<(), Error> {
        for k in 1..=max {
            let value = self.theta(k);
            if !value.is_positive() {
                return Err(Error::ThetaNotPositive {
                    k,
                    value: Box::new(value),
                    c: Box::new(self.c.clone()),
                    h: Box::new(self.h.clone()),
                });
            }
        }
        Ok(())
    }

    /// `theta_k` with a zero check, for use in denominators.
    pub(crate) fn theta_nonzero(&self, k: i64) -> Result<Scalar, Error> {
        let value = self.theta(k);
        if value.is_zero() {
            return Err(Error::ThetaZero {
                k,
                c: Box::new(self.c.clone()),
                h: Box::new(self.h.clone()),
            });
        }
        Ok(value)
    }
}

/// Cocycle of the central extension:
/// `(1/2pi) * integral of ((2h - c/12) x' - (c/12) x''') y dt`.
///
/// Evaluated exactly through derivatives and the normalized pairing; the
/// basis shortcut [`cocycle_on_basis`] is an independent route.
pub fn cocycle(params: &CentralParams, x: &TrigField, y: &TrigField) -> Scalar {
    let c_twelfth = params.c() * &Scalar::new(1, 12);
    let first = Scalar::int(2) * params.h() - &c_twelfth;
    let x1 = x.derivative();
    let x3 = x1.derivative().derivative();
    let weighted = &x1.scale(&first) - &x3.scale(&c_twelfth);
    weighted.integral_pair(y)
}

/// Cocycle values on basis pairs: the only nonzero entries are
/// `cocycle(f_m, g_m) = -theta_m / 2` and `cocycle(g_m, f_m) = theta_m / 2`.
pub fn cocycle_on_basis(params: &CentralParams, a: BasisLabel, b: BasisLabel) -> Scalar {
    use BasisLabel::{F, G};
    let half = Scalar::new(1, 2);
    match (a, b) {
        (F(m), G(n)) if m == n => -&(half * params.theta(m as i64)),
        (G(m), F(n)) if m == n => half * params.theta(m as i64),
        _ => Scalar::zero(),
    }
}

/// Element `central * kappa + field` of the centrally extended algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroElement {
    pub central: Scalar,
    pub field: TrigField,
}

impl VirasoroElement {
    pub fn new(central: Scalar, field: TrigField) -> Self {
        VirasoroElement { central, field }
    }

    pub fn kappa() -> Self {
        VirasoroElement::new(Scalar::one(), TrigField::zero())
    }

    pub fn from_field(field: TrigField) -> Self {
        VirasoroElement::new(Scalar::zero(), field)
    }

    pub fn zero() -> Self {
        VirasoroElement::new(Scalar::zero(), TrigField::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.central.is_zero() && self.field.is_zero()
    }

    pub fn add(&self, other: &VirasoroElement) -> VirasoroElement {
        VirasoroElement::new(&self.central + &other.central, &self.field + &other.field)
    }
}

impl fmt::Display for VirasoroElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.central.is_zero() {
            return write!(f, "{}", self.field);
        }
        if self.central.is_one() {
            write!(f, "kappa")?;
        } else {
            write!(f, "{}*kappa", self.central)?;
        }
        if !self.field.is_zero() {
            write!(f, " + {}", self.field)?;
        }
        Ok(())
    }
}

/// Bracket on the central extension: the central charge is the cocycle of
/// the field parts, the field part is their vector-field bracket. Central
/// components of the arguments do not contribute.
pub fn virasoro_bracket(
    params: &CentralParams,
    x: &VirasoroElement,
    y: &VirasoroElement,
) -> VirasoroElement {
    VirasoroElement::new(
        cocycle(params, &x.field, &y.field),
        x.field.bracket(&y.field),
    )
}

/// Jacobi cyclic sum `[[x,y],z] + [[y,z],x] + [[z,x],y]` in the central
/// extension; identically zero when the cocycle is a cocycle.
pub fn jacobi_defect(
    params: &CentralParams,
    x: &VirasoroElement,
    y: &VirasoroElement,
    z: &VirasoroElement,
) -> VirasoroElement {
    let xy_z = virasoro_bracket(params, &virasoro_bracket(params, x, y), z);
    let yz_x = virasoro_bracket(params, &virasoro_bracket(params, y, z), x);
    let zx_y = virasoro_bracket(params, &virasoro_bracket(params, z, x), y);
    xy_z.add(&yz_x).add(&zx_y)
}

/// Inner product `B(x, y) = cocycle(x, Jy)` on mean-zero fields.
///
/// Requires `theta_k > 0` for `k` up to the largest mode of either
/// argument; on the basis it is diagonal with `B(e_k, e_k) = theta_k / 2`.
pub fn inner_product(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
) -> Result<Scalar, Error> {
    require_mean_zero("inner_product", x)?;
    require_mean_zero("inner_product", y)?;
    params.ensure_theta_positive(x.max_mode().max(y.max_mode()) as i64)?;
    Ok(cocycle(params, x, &y.apply_j()?))
}

/// Diagonal route for the same inner product:
/// `B(x, y) = (1/2) * sum_k theta_k (a_k a_k' + b_k b_k')`.
pub fn inner_product_diagonal(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
) -> Result<Scalar, Error> {
    require_mean_zero("inner_product", x)?;
    require_mean_zero("inner_product", y)?;
    params.ensure_theta_positive(x.max_mode().max(y.max_mode()) as i64)?;
    Ok(inner_product_unchecked(params, x, y))
}

/// Diagonal formula with no validation; callers have already checked
/// mean-zero arguments and weight positivity over the touched range.
pub(crate) fn inner_product_unchecked(
    params: &CentralParams,
    x: &TrigField,
    y: &TrigField,
) -> Scalar {
    let half = Scalar::new(1, 2);
    let mut acc = Scalar::zero();
    for (k, a, b) in x.iter() {
        if k == 0 {
            continue;
        }
        let dot = a * &y.cos_coeff(k) + b * &y.sin_coeff(k);
        if !dot.is_zero() {
            acc = acc + params.theta(k as i64) * dot * &half;
        }
    }
    acc
}

pub(crate) fn require_mean_zero(op: &'static str, x: &TrigField) -> Result<(), Error> {
    if x.is_mean_zero() {
        Ok(())
    } else {
        Err(Error::MeanZeroRequired { op, a0: x.mean() })
    }
}
