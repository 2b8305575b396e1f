//! Izergin determinants `K_n(x|y)` and their left/right weighted variants.
//!
//! The row factor `h(x_i, y)` is absorbed into the entries, so the formula
//! stays finite where a single `t(x_i, y_j)` has its `q x = q^{-1} y` pole;
//! the only remaining poles are at `x_i = y_j`.

use std::collections::HashMap;

use once_cell::sync::Lazy;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::exact::{det_exact, ExactScalar, Field, Matrix};
use crate::kernel::{delta, pprod, th_row, DeltaKind, KernelFamily, QContext};
use crate::unipoly::RatFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    /// Multiplied by the product of the left set.
    Left,
    /// Multiplied by the product of the right set.
    Right,
}

/// Selects the first or second choice in a paired `(l, r)` identity.
///
/// The upper sign of `+-`/`-+` goes with `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    L,
    R,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::L, Branch::R];

    /// The variant `(l, r)` picks.
    pub fn variant(self) -> Variant {
        match self {
            Branch::L => Variant::Left,
            Branch::R => Variant::Right,
        }
    }

    /// The variant `(r, l)` picks.
    pub fn dual(self) -> Variant {
        match self {
            Branch::L => Variant::Right,
            Branch::R => Variant::Left,
        }
    }

    /// `-1` for `L`, `+1` for `R`: the exponent sign in `(-q)^{-+m}`.
    pub fn lower_sign(self) -> i64 {
        match self {
            Branch::L => -1,
            Branch::R => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::L => "l",
            Branch::R => "r",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct IzerginKey {
    xs: Vec<ExactScalar>,
    ys: Vec<ExactScalar>,
    variant: Variant,
    q: ExactScalar,
}

const CACHE_LIMIT: usize = 1 << 20;

static CACHE: Lazy<RwLock<HashMap<IzerginKey, ExactScalar>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Number of memoized numeric Izergin values.
pub fn izergin_cache_len() -> usize {
    CACHE.read().len()
}

pub fn izergin_cache_clear() {
    CACHE.write().clear();
}

fn cache_key<F: Field>(
    xs: &[F],
    ys: &[F],
    variant: Variant,
    ctx: &QContext<F>,
) -> Option<IzerginKey> {
    let collect = |v: &[F]| -> Option<Vec<ExactScalar>> {
        let mut out: Vec<ExactScalar> = v
            .iter()
            .map(|x| x.as_scalar().cloned())
            .collect::<Option<_>>()?;
        out.sort();
        Some(out)
    };
    Some(IzerginKey {
        xs: collect(xs)?,
        ys: collect(ys)?,
        variant,
        q: ctx.q().as_scalar()?.clone(),
    })
}

/// `K_n(x|y) = Delta'(x) Delta(y) h(x, y) det t(x_i, y_j)`, times the
/// product of `x` (left) or `y` (right). `K_0 = 1`.
///
/// Numeric evaluations are memoized on the sorted argument sets, which is
/// sound because `K` is symmetric in each set separately.
pub fn izergin<F: Field>(xs: &[F], ys: &[F], variant: Variant, ctx: &QContext<F>) -> Result<F> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension(format!(
            "izergin with |x| = {} and |y| = {}",
            xs.len(),
            ys.len()
        )));
    }
    let key = cache_key(xs, ys, variant, ctx);
    if let Some(k) = &key {
        if let Some(v) = CACHE.read().get(k) {
            return Ok(F::from_scalar(v));
        }
    }
    let value = izergin_uncached(xs, ys, variant, ctx)?;
    if let (Some(k), Some(v)) = (key, value.as_scalar()) {
        let mut cache = CACHE.write();
        if cache.len() >= CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(k, v.clone());
    }
    Ok(value)
}

fn izergin_uncached<F: Field>(
    xs: &[F],
    ys: &[F],
    variant: Variant,
    ctx: &QContext<F>,
) -> Result<F> {
    let n = xs.len();
    let m = Matrix::try_from_fn(n, n, |i, j| th_row(ctx, &xs[i], ys, j))?;
    let base =
        delta(ctx, DeltaKind::Upper, xs)? * &delta(ctx, DeltaKind::Lower, ys)? * &det_exact(&m)?;
    Ok(match variant {
        Variant::Plain => base,
        Variant::Left => base * &pprod(ctx, xs),
        Variant::Right => base * &pprod(ctx, ys),
    })
}

/// Which argument of `K` is replaced by the formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    X(usize),
    Y(usize),
}

/// `K` as a rational function of one argument, all others numeric.
pub fn izergin_symbolic(
    xs: &[ExactScalar],
    ys: &[ExactScalar],
    variant: Variant,
    slot: Slot,
    ctx: &QContext<ExactScalar>,
) -> Result<RatFun> {
    let mut x: Vec<RatFun> = xs.iter().map(RatFun::from_scalar).collect();
    let mut y: Vec<RatFun> = ys.iter().map(RatFun::from_scalar).collect();
    match slot {
        Slot::X(i) if i < x.len() => x[i] = RatFun::var(),
        Slot::Y(j) if j < y.len() => y[j] = RatFun::var(),
        _ => return Err(Error::Input(format!("slot {slot:?} out of range"))),
    }
    izergin(&x, &y, variant, &lift_context(ctx))
}

/// The same context over rational functions.
pub fn lift_context(ctx: &QContext<ExactScalar>) -> QContext<RatFun> {
    QContext::new(RatFun::from_scalar(ctx.q())).expect("valid q stays valid")
}

/// Reference evaluation straight from `Delta'(x) Delta(y) h(x, y) det t`,
/// without the absorbed row factor or the cache. Errors at `t` poles.
pub fn izergin_direct<F: Field>(
    xs: &[F],
    ys: &[F],
    variant: Variant,
    ctx: &QContext<F>,
) -> Result<F> {
    use crate::kernel::{kfun_prod, Kernel};
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::Dimension("izergin sizes".into()));
    }
    let m = Matrix::try_from_fn(n, n, |i, j| ctx.t(&xs[i], &ys[j]))?;
    let base = delta(ctx, DeltaKind::Upper, xs)?
        * &delta(ctx, DeltaKind::Lower, ys)?
        * &kfun_prod(ctx, Kernel::H, xs, ys)?
        * &det_exact(&m)?;
    Ok(match variant {
        Variant::Plain => base,
        Variant::Left => base * &pprod(ctx, xs),
        Variant::Right => base * &pprod(ctx, ys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use num_traits::One;

    fn ctx2() -> QContext<ExactScalar> {
        QContext::new(int(2)).unwrap()
    }

    #[test]
    fn small_sizes() {
        let c = ctx2();
        assert_eq!(
            izergin::<ExactScalar>(&[], &[], Variant::Plain, &c).unwrap(),
            ExactScalar::one()
        );
        let k1 = izergin(&[int(3)], &[int(5)], Variant::Plain, &c).unwrap();
        assert_eq!(k1, c.g(&int(3), &int(5)).unwrap());
        assert!(matches!(
            izergin(&[int(1)], &[int(2), int(3)], Variant::Plain, &c),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn matches_direct_formula() {
        let c = QContext::new(ratio(3, 2)).unwrap();
        let xs = [int(1), int(2), ratio(7, 3)];
        let ys = [int(3), int(5), ratio(-1, 2)];
        for v in [Variant::Plain, Variant::Left, Variant::Right] {
            assert_eq!(
                izergin(&xs, &ys, v, &c).unwrap(),
                izergin_direct(&xs, &ys, v, &c).unwrap()
            );
        }
    }

    #[test]
    fn symmetric_in_each_set() {
        let c = ctx2();
        let a = izergin(&[int(1), int(2)], &[int(3), int(5)], Variant::Left, &c).unwrap();
        let b = izergin_uncached(&[int(2), int(1)], &[int(5), int(3)], Variant::Left, &c).unwrap();
        assert_eq!(a, b);
    }
}
