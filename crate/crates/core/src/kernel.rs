//! The rational kernels f, g, h, t of the trigonometric model, their
//! GL(3)-invariant analogs, and set products built from them.

use num_traits::One;

use crate::error::{pole, Error, Result};
use crate::exact::{ExactScalar, Field};
use crate::unipoly::RatFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kernel {
    F,
    G,
    H,
    T,
}

impl Kernel {
    pub fn name(self) -> &'static str {
        match self {
            Kernel::F => "f",
            Kernel::G => "g",
            Kernel::H => "h",
            Kernel::T => "t",
        }
    }
}

/// A family of kernels together with the multiplicative weight that plays
/// the role of the parameter product.
///
/// In the trigonometric family the weight of `x` is `x` and `h(x, x) = x`;
/// in the invariant family both collapse to one.
pub trait KernelFamily<F: Field>: Sync {
    fn kernel(&self, kind: Kernel, x: &F, y: &F) -> Result<F>;

    fn weight(&self, x: &F) -> F;

    fn f(&self, x: &F, y: &F) -> Result<F> {
        self.kernel(Kernel::F, x, y)
    }
    fn g(&self, x: &F, y: &F) -> Result<F> {
        self.kernel(Kernel::G, x, y)
    }
    fn h(&self, x: &F, y: &F) -> Result<F> {
        self.kernel(Kernel::H, x, y)
    }
    fn t(&self, x: &F, y: &F) -> Result<F> {
        self.kernel(Kernel::T, x, y)
    }

    /// The trigonometric context, when this family is one.
    fn as_q(&self) -> Option<&QContext<F>> {
        None
    }

    /// `1/f(x, y)`, which is regular (and zero) at `x = y`.
    fn f_recip(&self, x: &F, y: &F) -> Result<F> {
        if x == y {
            return Ok(F::zero());
        }
        let v = self.f(x, y)?;
        v.inv().ok_or_else(|| pole("1/f", format!("{x}, {y}")))
    }
}

/// Trigonometric kernels with deformation parameter `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QContext<F> {
    q: F,
    qinv: F,
    dq: F,
}

impl<F: Field> QContext<F> {
    /// Requires `q` nonzero with `q^2 != 1`.
    pub fn new(q: F) -> Result<Self> {
        let qinv = q
            .inv()
            .ok_or_else(|| Error::Input("q must be nonzero".into()))?;
        let dq = q.clone() - &qinv;
        if dq.is_zero() {
            return Err(Error::Input("q^2 must differ from 1".into()));
        }
        Ok(QContext { q, qinv, dq })
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn qinv(&self) -> &F {
        &self.qinv
    }

    /// `q - q^{-1}`.
    pub fn dq(&self) -> &F {
        &self.dq
    }

    /// `q^k` for any integer `k`.
    pub fn qpow(&self, k: i64) -> F {
        if k < 0 {
            self.qinv.powi(-k).expect("positive power")
        } else {
            self.q.powi(k).expect("positive power")
        }
    }

    /// `(-q)^k`.
    pub fn mqpow(&self, k: i64) -> F {
        let v = self.qpow(k);
        if k.rem_euclid(2) == 1 {
            -v
        } else {
            v
        }
    }

    /// Multiplies `x` by `q^k`.
    pub fn shift(&self, x: &F, k: i64) -> F {
        x.clone() * &self.qpow(k)
    }

    pub fn shift_all(&self, xs: &[F], k: i64) -> Vec<F> {
        let s = self.qpow(k);
        xs.iter().map(|x| x.clone() * &s).collect()
    }

    /// `q x - q^{-1} y`.
    fn lin(&self, x: &F, y: &F) -> F {
        self.q.clone() * x - &(self.qinv.clone() * y)
    }
}

impl<F: Field> KernelFamily<F> for QContext<F> {
    fn kernel(&self, kind: Kernel, x: &F, y: &F) -> Result<F> {
        let fail = || pole(kind.name(), format!("{x}, {y}"));
        let diff = x.clone() - y;
        match kind {
            Kernel::F => self.lin(x, y).try_div(&diff).ok_or_else(fail),
            Kernel::G => self.dq.try_div(&diff).ok_or_else(fail),
            Kernel::H => Ok(self.lin(x, y) / self.dq.clone()),
            Kernel::T => {
                let den = diff * &self.lin(x, y);
                (self.dq.clone() * &self.dq).try_div(&den).ok_or_else(fail)
            }
        }
    }

    fn weight(&self, x: &F) -> F {
        x.clone()
    }

    fn as_q(&self) -> Option<&QContext<F>> {
        Some(self)
    }
}

/// Kernels of the GL(3)-invariant model with constant `c`:
/// `g = c/(u-v)`, `f = 1 + g`, `h = f/g`, `t = g/h`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantKernels<F> {
    c: F,
}

impl<F: Field> InvariantKernels<F> {
    pub fn new(c: F) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Input("c must be nonzero".into()));
        }
        Ok(InvariantKernels { c })
    }
}

impl<F: Field> KernelFamily<F> for InvariantKernels<F> {
    fn kernel(&self, kind: Kernel, x: &F, y: &F) -> Result<F> {
        let fail = || pole(kind.name(), format!("{x}, {y}"));
        let diff = x.clone() - y;
        let shifted = diff.clone() + &self.c;
        match kind {
            Kernel::F => shifted.try_div(&diff).ok_or_else(fail),
            Kernel::G => self.c.try_div(&diff).ok_or_else(fail),
            Kernel::H => Ok(shifted / self.c.clone()),
            Kernel::T => (self.c.clone() * &self.c)
                .try_div(&(diff * &shifted))
                .ok_or_else(fail),
        }
    }

    fn weight(&self, _x: &F) -> F {
        F::one()
    }
}

/// `kind(x, y)` in the trigonometric family.
pub fn kfun<F: Field>(kind: Kernel, x: &F, y: &F, ctx: &QContext<F>) -> Result<F> {
    ctx.kernel(kind, x, y)
}

/// `prod_{x in xs, y in ys} kind(x, y)`; the empty product is one. Same-set
/// products include the diagonal pairs.
pub fn kfun_prod<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    kind: Kernel,
    xs: &[F],
    ys: &[F],
) -> Result<F> {
    let mut acc = F::one();
    for x in xs {
        for y in ys {
            acc = acc * &k.kernel(kind, x, y)?;
        }
    }
    Ok(acc)
}

/// `prod_{x in xs} kind(x, y)`.
pub fn kprod_left<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    kind: Kernel,
    xs: &[F],
    y: &F,
) -> Result<F> {
    kfun_prod(k, kind, xs, std::slice::from_ref(y))
}

/// `prod_{y in ys} kind(x, y)`.
pub fn kprod_right<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    kind: Kernel,
    x: &F,
    ys: &[F],
) -> Result<F> {
    kfun_prod(k, kind, std::slice::from_ref(x), ys)
}

/// Which ordering of pairs a Vandermonde-type product runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    /// `prod_{j>k} g(w_j, w_k)`.
    Lower,
    /// `prod_{j<k} g(w_j, w_k)`.
    Upper,
}

pub fn delta<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    which: DeltaKind,
    ws: &[F],
) -> Result<F> {
    let mut acc = F::one();
    for j in 0..ws.len() {
        for i in 0..j {
            // i < j
            acc = acc
                * &match which {
                    DeltaKind::Lower => k.g(&ws[j], &ws[i])?,
                    DeltaKind::Upper => k.g(&ws[i], &ws[j])?,
                };
        }
    }
    Ok(acc)
}

/// Product of the weights of a set.
pub fn pprod<F: Field, K: KernelFamily<F> + ?Sized>(k: &K, xs: &[F]) -> F {
    xs.iter().fold(F::one(), |acc, x| acc * &k.weight(x))
}

/// `h(vc, vc) h(vc, ub) h(ub, ub)`, diagonal terms included.
pub fn c_h<F: Field, K: KernelFamily<F> + ?Sized>(k: &K, vc: &[F], ub: &[F]) -> Result<F> {
    Ok(kfun_prod(k, Kernel::H, vc, vc)?
        * &kfun_prod(k, Kernel::H, vc, ub)?
        * &kfun_prod(k, Kernel::H, ub, ub)?)
}

/// `t(x, y_j) h(x, ys)` written as `g(x, y_j) prod_{l != j} h(x, y_l)`, which
/// stays finite where `t` alone has its `q x = q^{-1} y_j` pole.
pub fn th_row<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    x: &F,
    ys: &[F],
    j: usize,
) -> Result<F> {
    let mut acc = k.g(x, &ys[j])?;
    for (l, y) in ys.iter().enumerate() {
        if l != j {
            acc = acc * &k.h(x, y)?;
        }
    }
    Ok(acc)
}

/// `t(y_j, x) h(ys, x)` in the same pole-free form.
pub fn ht_col<F: Field, K: KernelFamily<F> + ?Sized>(
    k: &K,
    ys: &[F],
    j: usize,
    x: &F,
) -> Result<F> {
    let mut acc = k.g(&ys[j], x)?;
    for (l, y) in ys.iter().enumerate() {
        if l != j {
            acc = acc * &k.h(y, x)?;
        }
    }
    Ok(acc)
}

/// Trigonometric kernel on the scaling path `x = 1 + eps x'`,
/// `y = 1 + eps y'`, `q = 1 + eps c/2`, as a function of `eps`.
pub fn scaling_substitute(
    kind: Kernel,
    xp: &ExactScalar,
    yp: &ExactScalar,
    c: &ExactScalar,
) -> Result<RatFun> {
    let ctx = scaling_context(c)?;
    kfun(kind, &scaling_point(xp), &scaling_point(yp), &ctx)
}

/// `1 + eps x'`.
pub fn scaling_point(xp: &ExactScalar) -> RatFun {
    RatFun::linear(ExactScalar::one(), xp.clone())
}

/// Context with `q = 1 + eps c/2`.
pub fn scaling_context(c: &ExactScalar) -> Result<QContext<RatFun>> {
    QContext::new(RatFun::linear(
        ExactScalar::one(),
        c / ExactScalar::from_integer(2.into()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::unipoly::ratfun_limit;

    fn ctx2() -> QContext<ExactScalar> {
        QContext::new(int(2)).unwrap()
    }

    #[test]
    fn reference_values_at_q_two() {
        let c = ctx2();
        assert_eq!(c.f(&int(3), &int(1)).unwrap(), ratio(11, 4));
        assert_eq!(c.h(&int(3), &int(1)).unwrap(), ratio(11, 3));
        assert_eq!(c.t(&int(3), &int(1)).unwrap(), ratio(9, 44));
        assert_eq!(c.g(&int(1), &int(4)).unwrap(), ratio(-1, 2));
        assert_eq!(c.h(&int(5), &int(5)).unwrap(), int(5));
    }

    #[test]
    fn poles_are_reported() {
        let c = ctx2();
        assert!(matches!(
            c.f(&int(2), &int(2)),
            Err(Error::Pole { kernel: "f", .. })
        ));
        // q x = q^{-1} y at x = 1, y = 4
        assert!(matches!(
            c.t(&int(1), &int(4)),
            Err(Error::Pole { kernel: "t", .. })
        ));
        assert_eq!(c.h(&int(1), &int(4)).unwrap(), int(0));
        assert!(QContext::new(int(1)).is_err());
        assert!(QContext::new(int(-1)).is_err());
        assert!(QContext::new(int(0)).is_err());
    }

    #[test]
    fn products_and_deltas() {
        let c = ctx2();
        let xs = [int(3), int(5)];
        assert_eq!(kfun_prod(&c, Kernel::F, &xs, &[]).unwrap(), int(1));
        let lower = delta(&c, DeltaKind::Lower, &xs).unwrap();
        let upper = delta(&c, DeltaKind::Upper, &xs).unwrap();
        assert_eq!(lower, c.g(&int(5), &int(3)).unwrap());
        assert_eq!(upper, -lower);
        assert_eq!(pprod(&c, &xs), int(15));
    }

    #[test]
    fn scaling_limit_of_f() {
        let (x, y, cc) = (int(3), int(1), int(2));
        let limit = ratfun_limit(
            &scaling_substitute(Kernel::F, &x, &y, &cc).unwrap(),
            &int(0),
        )
        .unwrap();
        let inv = InvariantKernels::new(cc).unwrap();
        assert_eq!(limit, inv.f(&x, &y).unwrap());
    }
}
