//! Both sides of the kernel relations, Izergin properties, summation
//! lemmas and their corollaries, the block expansion of determinants, and
//! the pair of auxiliary Lambda functions with their residue recursions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{det_exact, ExactScalar, Field, Matrix};
use crate::izergin::{izergin, izergin_symbolic, lift_context, Branch, Slot, Variant};
use crate::kernel::{
    delta, ht_col, kfun_prod, pprod, th_row, DeltaKind, Kernel, KernelFamily, QContext,
};
use crate::partitions::{all_splits, join, pick, splits};
use crate::unipoly::{ratfun_residue, RatFun};

/// Two sides of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity<F> {
    pub lhs: F,
    pub rhs: F,
}

impl<F: PartialEq> Identity<F> {
    pub fn new(lhs: F, rhs: F) -> Self {
        Identity { lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub(crate) fn sum<F: Field>(terms: Vec<F>) -> F {
    terms.into_iter().fold(F::zero(), |acc, t| acc + t)
}

/// Sums a fallible term over a list of work items in parallel. The result
/// is exact, so it does not depend on scheduling.
pub(crate) fn par_sum<F: Field, T: Sync>(
    items: &[T],
    term: impl Fn(&T) -> Result<F> + Sync + Send,
) -> Result<F> {
    let terms: Vec<F> = items.par_iter().map(term).collect::<Result<_>>()?;
    Ok(sum(terms))
}

pub(crate) fn sign<F: Field>(k: usize) -> F {
    if k.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

pub(crate) fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Dimension(format!(
            "{what}: expected {want}, got {got}"
        )));
    }
    Ok(())
}

/// The six kernel relations under `q^{+-2}` shifts, in a fixed order.
pub fn kernel_relations<F: Field>(
    x: &F,
    y: &F,
    ctx: &QContext<F>,
) -> Result<Vec<(&'static str, Identity<F>)>> {
    let xm = ctx.shift(x, -2);
    let ym = ctx.shift(y, -2);
    let inv = |v: F| {
        v.inv()
            .ok_or_else(|| Error::Input("zero kernel value".into()))
    };
    Ok(vec![
        (
            "h(xq^-2,y)=q^-1/g(x,y)",
            Identity::new(ctx.h(&xm, y)?, ctx.qinv().clone() * &inv(ctx.g(x, y)?)?),
        ),
        (
            "g(x,yq^-2)=q/h(x,y)",
            Identity::new(ctx.g(x, &ym)?, ctx.q().clone() * &inv(ctx.h(x, y)?)?),
        ),
        (
            "g(xq^-2,x)=-q/x",
            Identity::new(ctx.g(&xm, x)?, -(ctx.q().clone() * &inv(x.clone())?)),
        ),
        (
            "t(xq^-2,y)=q^2t(y,x)",
            Identity::new(ctx.t(&xm, y)?, ctx.qpow(2) * &ctx.t(y, x)?),
        ),
        (
            "t(x,yq^2)=q^-2t(y,x)",
            Identity::new(ctx.t(x, &ctx.shift(y, 2))?, ctx.qpow(-2) * &ctx.t(y, x)?),
        ),
        (
            "f(xq^-2,y)=1/f(y,x)",
            Identity::new(ctx.f(&xm, y)?, inv(ctx.f(y, x)?)?),
        ),
    ])
}

/// Reduction: `K({x, q^-2 z}|{y, z})` and `K({x, z}|{y, q^2 z})` against
/// `(-q)^{-+m} K(x|y)`, with `m = |z|`.
pub fn k_reduction<F: Field>(
    xs: &[F],
    ys: &[F],
    zs: &[F],
    branch: Branch,
    ctx: &QContext<F>,
) -> Result<[Identity<F>; 2]> {
    let v = branch.variant();
    let rhs = ctx.mqpow(branch.lower_sign() * zs.len() as i64) * &izergin(xs, ys, v, ctx)?;
    let first = izergin(&join(xs, &ctx.shift_all(zs, -2)), &join(ys, zs), v, ctx)?;
    let second = izergin(&join(xs, zs), &join(ys, &ctx.shift_all(zs, 2)), v, ctx)?;
    Ok([
        Identity::new(first, rhs.clone()),
        Identity::new(second, rhs),
    ])
}

/// Inversion: `K(q^-2 x|y)` and `K(x|q^2 y)` against
/// `(-q)^{-+n} f(y, x)^{-1} K^{(r,l)}(y|x)`.
pub fn k_inversion<F: Field>(
    xs: &[F],
    ys: &[F],
    branch: Branch,
    ctx: &QContext<F>,
) -> Result<[Identity<F>; 2]> {
    let n = xs.len() as i64;
    let fyx = kfun_prod(ctx, Kernel::F, ys, xs)?;
    let rhs = ctx.mqpow(branch.lower_sign() * n) * &izergin(ys, xs, branch.dual(), ctx)?;
    let rhs = rhs
        .try_div(&fyx)
        .ok_or_else(|| Error::Input("f(y, x) vanishes".into()))?;
    let first = izergin(&ctx.shift_all(xs, -2), ys, branch.variant(), ctx)?;
    let second = izergin(xs, &ctx.shift_all(ys, 2), branch.variant(), ctx)?;
    Ok([
        Identity::new(first, rhs.clone()),
        Identity::new(second, rhs),
    ])
}

/// Residue at `z' = z` of `K_{n+1}({x, z}|{y, z'})` against the residue of
/// `f(z, z') f(z, y) f(x, z) K_n(x|y)`.
pub fn k_residue(
    xs: &[ExactScalar],
    ys: &[ExactScalar],
    z: &ExactScalar,
    branch: Branch,
    ctx: &QContext<ExactScalar>,
) -> Result<Identity<ExactScalar>> {
    let v = branch.variant();
    let n = ys.len();
    let full = izergin_symbolic(
        &join(xs, std::slice::from_ref(z)),
        &join(ys, std::slice::from_ref(z)),
        v,
        Slot::Y(n),
        ctx,
    )?;
    let lhs = ratfun_residue(&full, z)?;
    let lctx = lift_context(ctx);
    let fzz = lctx.f(&RatFun::from_scalar(z), &RatFun::var())?;
    let coeff = kprod_1(ctx, Kernel::F, z, ys, true)? * &kprod_1(ctx, Kernel::F, z, xs, false)?;
    let rhs = ratfun_residue(&fzz, z)? * coeff * izergin(xs, ys, v, ctx)?;
    Ok(Identity::new(lhs, rhs))
}

/// `prod_y kind(z, y)` when `z_first`, else `prod_x kind(x, z)`.
fn kprod_1<F: Field>(
    ctx: &QContext<F>,
    kind: Kernel,
    z: &F,
    set: &[F],
    z_first: bool,
) -> Result<F> {
    if z_first {
        kfun_prod(ctx, kind, std::slice::from_ref(z), set)
    } else {
        kfun_prod(ctx, kind, set, std::slice::from_ref(z))
    }
}

/// Block form of `K_m({g1 q^-2, g2}|xi) f(g2, g1) f(xi, g1)`.
pub fn k_shift_block<F: Field>(
    g1: &[F],
    g2: &[F],
    xi: &[F],
    branch: Branch,
    ctx: &QContext<F>,
) -> Result<Identity<F>> {
    let m = xi.len();
    check_len("block sizes", g1.len() + g2.len(), m)?;
    let v = branch.variant();
    let lhs = izergin(&join(&ctx.shift_all(g1, -2), g2), xi, v, ctx)?
        * &kfun_prod(ctx, Kernel::F, g2, g1)?
        * &kfun_prod(ctx, Kernel::F, xi, g1)?;
    let weight = match branch {
        Branch::L => pprod(ctx, &join(g1, g2)),
        Branch::R => pprod(ctx, xi),
    };
    let coef = sign::<F>(m) * &ctx.qpow(branch.lower_sign());
    let n1 = g1.len();
    let mat = Matrix::try_from_fn(m, m, |j, k| {
        if k < n1 {
            Ok(coef.clone() * &ht_col(ctx, xi, j, &g1[k])?)
        } else {
            th_row(ctx, &g2[k - n1], xi, j)
        }
    })?;
    let rhs = weight
        * &delta(ctx, DeltaKind::Upper, xi)?
        * &delta(ctx, DeltaKind::Lower, g1)?
        * &delta(ctx, DeltaKind::Lower, g2)?
        * &kfun_prod(ctx, Kernel::G, g2, g1)?
        * &det_exact(&mat)?;
    Ok(Identity::new(lhs, rhs))
}

/// First summation lemma: the sum over `gamma => {I, II}` with
/// `|I| = |alpha|` collapses to a single Izergin determinant.
pub fn lemma1<F: Field>(
    alpha: &[F],
    beta: &[F],
    gamma: &[F],
    branch: Branch,
    ctx: &QContext<F>,
) -> Result<Identity<F>> {
    let (m1, m2) = (alpha.len(), beta.len());
    check_len("|gamma|", gamma.len(), m1 + m2)?;
    let parts = splits(m1 + m2, m1);
    let lhs = par_sum(&parts, |(i1, i2)| {
        let (g1, g2) = (pick(gamma, i1), pick(gamma, i2));
        Ok(izergin(&g1, alpha, branch.variant(), ctx)?
            * &izergin(beta, &g2, branch.dual(), ctx)?
            * &kfun_prod(ctx, Kernel::F, &g2, &g1)?)
    })?;
    let rhs = ctx.mqpow(branch.lower_sign() * m1 as i64)
        * &kfun_prod(ctx, Kernel::F, gamma, alpha)?
        * &izergin(
            &join(&ctx.shift_all(alpha, -2), beta),
            gamma,
            branch.dual(),
            ctx,
        )?;
    Ok(Identity::new(lhs, rhs))
}

/// Second summation lemma with arbitrary weights `phi1`, `phi2` given by
/// their values on `gamma`.
pub fn lemma2<F: Field>(
    gamma: &[F],
    xi: &[F],
    phi1: &[F],
    phi2: &[F],
    branch: Branch,
    ctx: &QContext<F>,
) -> Result<Identity<F>> {
    let m = xi.len();
    check_len("|gamma|", gamma.len(), m)?;
    check_len("|phi1|", phi1.len(), m)?;
    check_len("|phi2|", phi2.len(), m)?;
    let parts = all_splits(m);
    let lhs = par_sum(&parts, |(i1, i2)| {
        let (g1, g2) = (pick(gamma, i1), pick(gamma, i2));
        let weights = i1
            .iter()
            .map(|&i| &phi1[i])
            .chain(i2.iter().map(|&i| &phi2[i]));
        let w = weights.fold(F::one(), |acc, p| acc * p);
        Ok(izergin(
            &join(&ctx.shift_all(&g1, -2), &g2),
            xi,
            branch.variant(),
            ctx,
        )? * &kfun_prod(ctx, Kernel::F, xi, &g1)?
            * &kfun_prod(ctx, Kernel::F, &g2, &g1)?
            * &w)
    })?;
    let weight = match branch {
        Branch::L => pprod(ctx, gamma),
        Branch::R => pprod(ctx, xi),
    };
    let coef = sign::<F>(m) * &ctx.qpow(branch.lower_sign());
    let mat = Matrix::try_from_fn(m, m, |j, k| {
        Ok(phi2[k].clone() * &th_row(ctx, &gamma[k], xi, j)?
            + coef.clone() * &phi1[k] * &ht_col(ctx, xi, j, &gamma[k])?)
    })?;
    let rhs = weight
        * &delta(ctx, DeltaKind::Upper, xi)?
        * &delta(ctx, DeltaKind::Lower, gamma)?
        * &det_exact(&mat)?;
    Ok(Identity::new(lhs, rhs))
}

/// `G_n(alpha|beta) = (-1)^n t(alpha, beta) h(alpha, alpha) h(beta, beta)`.
pub fn g_closed<F: Field>(alpha: &[F], beta: &[F], ctx: &QContext<F>) -> Result<F> {
    Ok(sign::<F>(alpha.len())
        * &kfun_prod(ctx, Kernel::T, alpha, beta)?
        * &kfun_prod(ctx, Kernel::H, alpha, alpha)?
        * &kfun_prod(ctx, Kernel::H, beta, beta)?)
}

/// A joint partition of `alpha` and `beta` into blocks of equal sizes.
struct Joint<F> {
    a1: Vec<F>,
    a2: Vec<F>,
    b1: Vec<F>,
    b2: Vec<F>,
}

fn joint_partitions<F: Field>(alpha: &[F], beta: &[F]) -> Vec<Joint<F>> {
    let n = alpha.len();
    let mut out = Vec::new();
    for k in 0..=n {
        for (ia1, ia2) in splits(n, k) {
            for (ib1, ib2) in splits(n, k) {
                out.push(Joint {
                    a1: pick(alpha, &ia1),
                    a2: pick(alpha, &ia2),
                    b1: pick(beta, &ib1),
                    b2: pick(beta, &ib2),
                });
            }
        }
    }
    out
}

/// `f(b2, b1) f(a1, a2)`.
fn joint_weight<F: Field>(p: &Joint<F>, ctx: &QContext<F>) -> Result<F> {
    Ok(kfun_prod(ctx, Kernel::F, &p.b2, &p.b1)? * &kfun_prod(ctx, Kernel::F, &p.a1, &p.a2)?)
}

/// `K^{(first)}(b1|a1) K^{(second)}(a2|b2 q^-2)`.
fn joint_izergin<F: Field>(
    p: &Joint<F>,
    first: Variant,
    second: Variant,
    ctx: &QContext<F>,
) -> Result<F> {
    Ok(izergin(&p.b1, &p.a1, first, ctx)?
        * &izergin(&p.a2, &ctx.shift_all(&p.b2, -2), second, ctx)?)
}

/// Third summation lemma with an extra parameter `z`.
pub fn lemma3<F: Field>(alpha: &[F], beta: &[F], z: &F, ctx: &QContext<F>) -> Result<Identity<F>> {
    let n = alpha.len();
    check_len("|beta|", beta.len(), n)?;
    let parts = joint_partitions(alpha, beta);
    let lhs = par_sum(&parts, |p| {
        Ok(ctx.qpow(p.a1.len() as i64)
            * &kfun_prod(ctx, Kernel::F, &p.b1, std::slice::from_ref(z))?
            * &joint_weight(p, ctx)?
            * &joint_izergin(p, Variant::Right, Variant::Left, ctx)?)
    })?;
    let rhs = ctx.qpow(n as i64)
        * &g_closed(alpha, beta, ctx)?
        * &kfun_prod(ctx, Kernel::H, alpha, std::slice::from_ref(z))?
        * &kfun_prod(ctx, Kernel::G, beta, std::slice::from_ref(z))?;
    Ok(Identity::new(lhs, rhs))
}

/// The five closed-form sums that follow from the third lemma.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corollary {
    /// Unweighted, `K^(r) K^(l)`: equals `G_n`.
    Ginf1,
    /// Weight `q^{2 n_II}`, `K^(l) K^(r)`: equals `p(beta)/p(alpha) G_n`.
    Ginf2,
    /// Weight `q^{2 n_I}`, `K^(r) K^(l)`: equals `q^{2n} p(alpha)/p(beta) G_n`.
    G0First,
    /// Unweighted, `K^(l) K^(r)`: equals `G_n`.
    G0Second,
    /// Weight `q^{n_I} [n_I]`, `K^(r) K^(l)`.
    G0Interp,
}

impl Corollary {
    pub const ALL: [Corollary; 5] = [
        Corollary::Ginf1,
        Corollary::Ginf2,
        Corollary::G0First,
        Corollary::G0Second,
        Corollary::G0Interp,
    ];
}

/// q-number `[k] = (q^k - q^{-k})/(q - q^{-1})`.
pub fn qnumber<F: Field>(k: i64, ctx: &QContext<F>) -> F {
    (ctx.qpow(k) - &ctx.qpow(-k)) / ctx.dq().clone()
}

pub fn corollary<F: Field>(
    which: Corollary,
    alpha: &[F],
    beta: &[F],
    ctx: &QContext<F>,
) -> Result<Identity<F>> {
    let n = alpha.len();
    check_len("|beta|", beta.len(), n)?;
    let (first, second) = match which {
        Corollary::Ginf1 | Corollary::G0First | Corollary::G0Interp => {
            (Variant::Right, Variant::Left)
        }
        Corollary::Ginf2 | Corollary::G0Second => (Variant::Left, Variant::Right),
    };
    let parts = joint_partitions(alpha, beta);
    let lhs = par_sum(&parts, |p| {
        let (n1, n2) = (p.a1.len() as i64, p.a2.len() as i64);
        let w = match which {
            Corollary::Ginf1 | Corollary::G0Second => F::one(),
            Corollary::Ginf2 => ctx.qpow(2 * n2),
            Corollary::G0First => ctx.qpow(2 * n1),
            Corollary::G0Interp => ctx.qpow(n1) * &qnumber(n1, ctx),
        };
        Ok(w * &joint_weight(p, ctx)? * &joint_izergin(p, first, second, ctx)?)
    })?;
    let g = g_closed(alpha, beta, ctx)?;
    let ratio = |num: &[F], den: &[F]| -> Result<F> {
        pprod(ctx, num)
            .try_div(&pprod(ctx, den))
            .ok_or_else(|| Error::Input("zero parameter".into()))
    };
    let rhs = match which {
        Corollary::Ginf1 | Corollary::G0Second => g,
        Corollary::Ginf2 => ratio(beta, alpha)? * &g,
        Corollary::G0First => ctx.qpow(2 * n as i64) * &ratio(alpha, beta)? * &g,
        Corollary::G0Interp => {
            (ctx.qpow(2 * n as i64) * &ratio(alpha, beta)? - &F::one()) / ctx.dq().clone() * &g
        }
    };
    Ok(Identity::new(lhs, rhs))
}

/// Termwise relation between the `K^(r) K^(l)` and `K^(l) K^(r)` products,
/// one identity per joint partition.
pub fn triv_rav<F: Field>(alpha: &[F], beta: &[F], ctx: &QContext<F>) -> Result<Vec<Identity<F>>> {
    check_len("|beta|", beta.len(), alpha.len())?;
    let ratio = pprod(ctx, alpha)
        .try_div(&pprod(ctx, beta))
        .ok_or_else(|| Error::Input("zero parameter".into()))?;
    joint_partitions(alpha, beta)
        .iter()
        .map(|p| {
            let lhs = joint_izergin(p, Variant::Right, Variant::Left, ctx)?;
            let rhs = ctx.qpow(2 * p.a2.len() as i64)
                * &ratio
                * &joint_izergin(p, Variant::Left, Variant::Right, ctx)?;
            Ok(Identity::new(lhs, rhs))
        })
        .collect()
}

/// Block expansion of a determinant whose first `a` rows are
/// `row(j, x)` for `j < a` and whose remaining rows are `row(j, x)` for
/// `a <= j < n`:
/// `Delta(x) det N = sum g(x_II, x_I) Delta(x_I) det_a Delta(x_II) det_b`.
pub fn genmat<F: Field, K: KernelFamily<F>>(
    k: &K,
    xs: &[F],
    a: usize,
    row: impl Fn(usize, &F) -> Result<F> + Sync + Send,
) -> Result<Identity<F>> {
    let n = xs.len();
    if a > n {
        return Err(Error::Dimension(format!("block size {a} exceeds {n}")));
    }
    let full = Matrix::try_from_fn(n, n, |j, c| row(j, &xs[c]))?;
    let lhs = delta(k, DeltaKind::Lower, xs)? * &det_exact(&full)?;
    let parts = splits(n, a);
    let rhs = par_sum(&parts, |(i1, i2)| {
        let (x1, x2) = (pick(xs, i1), pick(xs, i2));
        let m1 = Matrix::try_from_fn(a, a, |j, c| row(j, &x1[c]))?;
        let m2 = Matrix::try_from_fn(n - a, n - a, |j, c| row(a + j, &x2[c]))?;
        Ok(kfun_prod(k, Kernel::G, &x2, &x1)?
            * &delta(k, DeltaKind::Lower, &x1)?
            * &det_exact(&m1)?
            * &delta(k, DeltaKind::Lower, &x2)?
            * &det_exact(&m2)?)
    })?;
    Ok(Identity::new(lhs, rhs))
}

/// Left Lambda function: the third-lemma sum with the `alpha` partitions
/// folded by the first lemma, leaving a sum over `beta => {I, II}` of
/// right-weighted Izergin determinants.
pub fn lambda_l<F: Field>(alpha: &[F], beta: &[F], z: &F, ctx: &QContext<F>) -> Result<F> {
    let n = alpha.len();
    check_len("|beta|", beta.len(), n)?;
    let parts = all_splits(n);
    par_sum(&parts, |(i1, i2)| {
        let (b1, b2) = (pick(beta, i1), pick(beta, i2));
        let (n1, n2) = (b1.len() as i64, b2.len() as i64);
        Ok(sign::<F>(b2.len())
            * &ctx.qpow(n1 - n2)
            * &kfun_prod(ctx, Kernel::F, &b1, std::slice::from_ref(z))?
            * &kfun_prod(ctx, Kernel::F, &b2, &b1)?
            * &kfun_prod(ctx, Kernel::F, alpha, &ctx.shift_all(&b2, -2))?
            * &izergin(
                &join(&ctx.shift_all(&b2, -4), &b1),
                alpha,
                Variant::Right,
                ctx,
            )?)
    })
}

/// Right Lambda function in closed form, `q^n G_n h(alpha, z) g(beta, z)`.
pub fn lambda_r<F: Field>(alpha: &[F], beta: &[F], z: &F, ctx: &QContext<F>) -> Result<F> {
    check_len("|beta|", beta.len(), alpha.len())?;
    Ok(ctx.qpow(alpha.len() as i64)
        * &g_closed(alpha, beta, ctx)?
        * &kfun_prod(ctx, Kernel::H, alpha, std::slice::from_ref(z))?
        * &kfun_prod(ctx, Kernel::G, beta, std::slice::from_ref(z))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaSide {
    Left,
    Right,
}

/// Pole of the Lambda functions in their last `alpha` argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaPole {
    /// `alpha_n = beta_n`.
    AtBeta,
    /// `alpha_n = beta_n q^-2`.
    AtShiftedBeta,
}

/// Residue of `Lambda_n` in `alpha_n` against the recursion
/// `coefficient * Lambda_{n-1}(alpha without alpha_n | beta without beta_n)`.
pub fn lambda_residue(
    alpha: &[ExactScalar],
    beta: &[ExactScalar],
    z: &ExactScalar,
    side: LambdaSide,
    at: LambdaPole,
    ctx: &QContext<ExactScalar>,
) -> Result<Identity<ExactScalar>> {
    let n = alpha.len();
    check_len("|beta|", beta.len(), n)?;
    if n == 0 {
        return Err(Error::Input("residue recursion needs n >= 1".into()));
    }
    let lctx = lift_context(ctx);
    let lift = |v: &[ExactScalar]| -> Vec<RatFun> { v.iter().map(RatFun::from_scalar).collect() };
    let mut a_sym = lift(alpha);
    a_sym[n - 1] = RatFun::var();
    let (b_sym, z_sym) = (lift(beta), RatFun::from_scalar(z));
    let lambda = |a: &[RatFun], b: &[RatFun], zz: &RatFun| match side {
        LambdaSide::Left => lambda_l(a, b, zz, &lctx),
        LambdaSide::Right => lambda_r(a, b, zz, &lctx),
    };
    let full = lambda(&a_sym, &b_sym, &z_sym)?;
    let bn = &beta[n - 1];
    let point = match at {
        LambdaPole::AtBeta => bn.clone(),
        LambdaPole::AtShiftedBeta => ctx.shift(bn, -2),
    };
    let lhs = ratfun_residue(&full, &point)?;

    let an = RatFun::var();
    let bn_s = RatFun::from_scalar(bn);
    let (a_rest, b_rest) = (&a_sym[..n - 1], &b_sym[..n - 1]);
    let coeff = match at {
        LambdaPole::AtBeta => {
            lctx.q().clone()
                * &lctx.f(&bn_s, &an)?
                * &lctx.f(&bn_s, &z_sym)?
                * &kfun_prod(&lctx, Kernel::F, b_rest, std::slice::from_ref(&bn_s))?
                * &kfun_prod(&lctx, Kernel::F, std::slice::from_ref(&an), a_rest)?
        }
        LambdaPole::AtShiftedBeta => {
            lctx.f(&an, &lctx.shift(&bn_s, -2))?
                * &kfun_prod(&lctx, Kernel::F, a_rest, std::slice::from_ref(&an))?
                * &kfun_prod(&lctx, Kernel::F, std::slice::from_ref(&bn_s), b_rest)?
        }
    };
    let reduced = match side {
        LambdaSide::Left => lambda_l(&alpha[..n - 1], &beta[..n - 1], z, ctx)?,
        LambdaSide::Right => lambda_r(&alpha[..n - 1], &beta[..n - 1], z, ctx)?,
    };
    let rhs = ratfun_residue(&coeff, &point)? * reduced;
    Ok(Identity::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn ctx2() -> QContext<ExactScalar> {
        QContext::new(int(2)).unwrap()
    }

    #[test]
    fn lemma3_reference_value() {
        let id = lemma3(&[int(3)], &[int(5)], &int(7), &ctx2()).unwrap();
        assert_eq!(id.rhs, ratio(-675, 56));
        assert!(id.holds());
        assert_eq!(
            g_closed(&[int(3)], &[int(5)], &ctx2()).unwrap(),
            ratio(135, 28)
        );
    }

    #[test]
    fn empty_sets_give_trivial_identities() {
        let c = ctx2();
        let e: [ExactScalar; 0] = [];
        let id = lemma1(&e, &e, &e, Branch::L, &c).unwrap();
        assert_eq!((id.lhs, id.rhs), (int(1), int(1)));
        assert!(lemma3(&e, &e, &int(3), &c).unwrap().holds());
        assert_eq!(lambda_l(&e, &e, &int(3), &c).unwrap(), int(1));
    }

    #[test]
    fn lemma1_single_element() {
        let c = QContext::new(ratio(3, 2)).unwrap();
        for b in Branch::BOTH {
            assert!(lemma1(&[int(3)], &[], &[int(7)], b, &c).unwrap().holds());
            assert!(lemma1(&[], &[int(3)], &[int(7)], b, &c).unwrap().holds());
        }
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let c = ctx2();
        assert!(matches!(
            lemma3(&[int(1)], &[], &int(3), &c),
            Err(Error::Dimension(_))
        ));
    }
}
