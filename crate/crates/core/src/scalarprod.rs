//! Scalar products of a twisted on-shell dual vector with an ordinary
//! on-shell vector: the partition sum, the intermediate single-sum form,
//! and the two determinant formulas, with their diagonal and `q -> 1`
//! limits.

use num_traits::{One, Zero};

use crate::bethe::{BetheConfig, RTable, TwistVector};
use crate::error::{Error, Result};
use crate::exact::{det_exact, ExactScalar, Field, Matrix};
use crate::identities::{check_len, g_closed, par_sum, sign, Identity};
use crate::izergin::{izergin, lift_context, Branch, Variant};
use crate::kernel::{
    c_h, delta, ht_col, kfun_prod, pprod, scaling_context, scaling_point, th_row, DeltaKind,
    InvariantKernels, Kernel, KernelFamily, QContext,
};
use crate::partitions::{join, pick, splits};
use crate::unipoly::{ratfun_limit, RatFun};

/// Arguments of the highest coefficient `Z_{a,b}(t; x | s; y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestCoeffArgs<F> {
    pub t: Vec<F>,
    pub x: Vec<F>,
    pub s: Vec<F>,
    pub y: Vec<F>,
    pub branch: Branch,
}

/// The two partition-sum expressions of the highest coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HcRep {
    /// Sum over `w = {x, s}`.
    First,
    /// Sum over `eta = {y, t q^-2}`.
    Second,
}

pub fn highest_coeff<F: Field>(
    args: &HighestCoeffArgs<F>,
    rep: HcRep,
    ctx: &QContext<F>,
) -> Result<F> {
    let (a, b) = (args.t.len(), args.s.len());
    check_len("|x|", args.x.len(), a)?;
    check_len("|y|", args.y.len(), b)?;
    let (var, dual, sgn) = (
        args.branch.variant(),
        args.branch.dual(),
        args.branch.lower_sign(),
    );
    match rep {
        HcRep::First => {
            let w = join(&args.x, &args.s);
            let mut acc = F::zero();
            for (i1, i2) in splits(a + b, b) {
                let (w1, w2) = (pick(&w, &i1), pick(&w, &i2));
                acc = acc
                    + izergin(&args.s, &ctx.shift_all(&w1, 2), dual, ctx)?
                        * &izergin(&w2, &args.t, var, ctx)?
                        * &izergin(&args.y, &w1, var, ctx)?
                        * &kfun_prod(ctx, Kernel::F, &w1, &w2)?;
            }
            Ok(ctx.mqpow(sgn * b as i64) * &acc)
        }
        HcRep::Second => {
            let tm = ctx.shift_all(&args.t, -2);
            let xm = ctx.shift_all(&args.x, -2);
            let eta = join(&args.y, &tm);
            let mut acc = F::zero();
            for (i1, i2) in splits(a + b, a) {
                let (e1, e2) = (pick(&eta, &i1), pick(&eta, &i2));
                acc = acc
                    + izergin(&tm, &ctx.shift_all(&e1, 2), dual, ctx)?
                        * &izergin(&xm, &e1, var, ctx)?
                        * &izergin(&e2, &args.s, var, ctx)?
                        * &kfun_prod(ctx, Kernel::F, &e1, &e2)?;
            }
            Ok(ctx.mqpow(sgn * a as i64)
                * &kfun_prod(ctx, Kernel::F, &args.y, &args.x)?
                * &kfun_prod(ctx, Kernel::F, &args.s, &args.t)?
                * &acc)
        }
    }
}

fn check_sizes<F, K>(cfg: &BetheConfig<F, K>, extra_u: usize) -> Result<(usize, usize)> {
    let (a, b) = (cfg.ub.len(), cfg.vb.len());
    check_len("|uC|", cfg.uc.len(), a + extra_u)?;
    check_len("|vC|", cfg.vc.len(), b)?;
    Ok((a, b))
}

fn r_prod<F: Field>(table: &RTable<F>, pts: &[F]) -> Result<F> {
    pts.iter()
        .try_fold(F::one(), |acc, p| Ok(acc * &table.value(p)?))
}

fn quot<F: Field>(num: F, den: F, what: &str) -> Result<F> {
    num.try_div(&den).ok_or_else(|| Error::Pole {
        kernel: "quotient",
        args: what.to_string(),
    })
}

/// One term of the partition sum: the block index sets of `uC, uB, vC, vB`.
struct SumTerm {
    uc: (Vec<usize>, Vec<usize>),
    ub: (Vec<usize>, Vec<usize>),
    vc: (Vec<usize>, Vec<usize>),
    vb: (Vec<usize>, Vec<usize>),
}

/// The scalar product from the partition sum with both highest
/// coefficients in their first representation. Valid off-shell.
pub fn scalar_sum<F: Field>(cfg: &BetheConfig<F>) -> Result<F> {
    let (a, b) = check_sizes(cfg, 0)?;
    let ctx = &cfg.ctx;
    let mut work = Vec::new();
    for k in 0..=a {
        for n in 0..=b {
            for uc in splits(a, k) {
                for ub in splits(a, k) {
                    for vc in splits(b, n) {
                        for vb in splits(b, n) {
                            work.push(SumTerm {
                                uc: uc.clone(),
                                ub: ub.clone(),
                                vc: vc.clone(),
                                vb,
                            });
                        }
                    }
                }
            }
        }
    }
    let total = par_sum(&work, |w| {
        let (uc1, uc2) = (pick(&cfg.uc, &w.uc.0), pick(&cfg.uc, &w.uc.1));
        let (ub1, ub2) = (pick(&cfg.ub, &w.ub.0), pick(&cfg.ub, &w.ub.1));
        let (vc1, vc2) = (pick(&cfg.vc, &w.vc.0), pick(&cfg.vc, &w.vc.1));
        let (vb1, vb2) = (pick(&cfg.vb, &w.vb.0), pick(&cfg.vb, &w.vb.1));
        let f = |x: &[F], y: &[F]| kfun_prod(ctx, Kernel::F, x, y);
        let weight = f(&ub2, &ub1)?
            * &f(&uc1, &uc2)?
            * &f(&vb1, &vb2)?
            * &f(&vc2, &vc1)?
            * &f(&vc1, &uc1)?
            * &f(&vb2, &ub2)?
            * &r_prod(&cfg.r1, &uc2)?
            * &r_prod(&cfg.r1, &ub1)?
            * &r_prod(&cfg.r3, &vc2)?
            * &r_prod(&cfg.r3, &vb1)?;
        if weight.is_zero() {
            return Ok(weight);
        }
        let zl = HighestCoeffArgs {
            t: uc2,
            x: ub2,
            s: vc1,
            y: vb1,
            branch: Branch::L,
        };
        let zr = HighestCoeffArgs {
            t: ub1,
            x: uc1,
            s: vb2,
            y: vc2,
            branch: Branch::R,
        };
        Ok(weight
            * &highest_coeff(&zl, HcRep::First, ctx)?
            * &highest_coeff(&zr, HcRep::First, ctx)?)
    })?;
    let norm = kfun_prod(ctx, Kernel::F, &cfg.vc, &cfg.uc)?
        * &kfun_prod(ctx, Kernel::F, &cfg.vb, &cfg.ub)?;
    quot(total, norm, "f(vC, uC) f(vB, uB)")
}

/// `G^(kappa)_n(uB_I, vC_I)` as the sum over joint partitions, with the
/// ratio `kappa1/kappa3` entering as `(k1/k3)^{n_i}`.
pub fn g_kappa_brute<F: Field>(
    ub1: &[F],
    vc1: &[F],
    k1_over_k3: &F,
    ctx: &QContext<F>,
) -> Result<F> {
    let n = ub1.len();
    check_len("|vC_I|", vc1.len(), n)?;
    let mut acc = F::zero();
    for m in 0..=n {
        for (iu, iu2) in splits(n, m) {
            for (iv, iv2) in splits(n, m) {
                let (ui, uiv) = (pick(ub1, &iu), pick(ub1, &iu2));
                let (vi, viv) = (pick(vc1, &iv), pick(vc1, &iv2));
                acc = acc
                    + k1_over_k3.powi(m as i64).expect("nonzero twist")
                        * &ctx.qpow(2 * m as i64)
                        * &kfun_prod(ctx, Kernel::F, &ui, &uiv)?
                        * &kfun_prod(ctx, Kernel::F, &viv, &vi)?
                        * &izergin(&uiv, &viv, Variant::Left, ctx)?
                        * &izergin(&vi, &ctx.shift_all(&ui, -2), Variant::Right, ctx)?;
            }
        }
    }
    Ok(acc)
}

/// Which determinant formula to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetKind {
    /// `kappa3 = kappa1`.
    S1,
    /// `kappa3 = q^2 kappa1`; the `u` rows carry the column weight.
    Sq2,
    /// Twisted form factor of `T12` at `kappa3 = q kappa1`, `|uC| = a + 1`,
    /// with the spectral point inserted after `uB` in the columns.
    F12,
}

/// Closed form of `G^(kappa)` at `kappa3 = kappa1` (`S1`) and at
/// `kappa3 = q^2 kappa1` (`Sq2`).
pub fn g_kappa_closed<F: Field>(
    ub1: &[F],
    vc1: &[F],
    which: DetKind,
    ctx: &QContext<F>,
) -> Result<F> {
    let g = g_closed(vc1, ub1, ctx)?;
    match which {
        DetKind::S1 => Ok(quot(pprod(ctx, ub1), pprod(ctx, vc1), "p(vC_I)")? * &g),
        DetKind::Sq2 => Ok(g),
        DetKind::F12 => Err(Error::Input("no closed G for the T12 twist".into())),
    }
}

/// Row of the matrix `N`: `U(j)` is built on `uC_j`, `V(j)` on `vB_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NRow {
    U(usize),
    V(usize),
}

fn h_left<F: Field, K: KernelFamily<F>>(k: &K, x: &F, ys: &[F]) -> Result<F> {
    kfun_prod(k, Kernel::H, std::slice::from_ref(x), ys)
}

fn h_right<F: Field, K: KernelFamily<F>>(k: &K, xs: &[F], y: &F) -> Result<F> {
    kfun_prod(k, Kernel::H, xs, std::slice::from_ref(y))
}

/// `prod 1/f` over pairs, zero as soon as one pair coincides.
fn f_recip_prod<F: Field, K: KernelFamily<F>>(k: &K, xs: &[F], ys: &[F]) -> Result<F> {
    let mut acc = F::one();
    for x in xs {
        for y in ys {
            acc = acc * &k.f_recip(x, y)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

/// Entry of `N` in row `row` and column point `x`, split into the part
/// carrying an `r` value and the part without one.
fn n_parts<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    row: NRow,
    x: &F,
) -> Result<(F, F)> {
    let k = &cfg.ctx;
    match row {
        NRow::U(j) => {
            let uc = &cfg.uc;
            let den = h_left(k, x, &cfg.ub)?;
            let fr = f_recip_prod(k, &cfg.vc, std::slice::from_ref(x))?;
            let rpart = if fr.is_zero() {
                fr
            } else {
                sign::<F>(uc.len() + 1) * &ht_col(k, uc, j, x)? * &cfg.r1.value(x)? * &fr
            };
            let kpart = cfg.kappa.r21() * &th_row(k, x, uc, j)?;
            Ok((
                quot(rpart, den.clone(), "h(x, uB)")?,
                quot(kpart, den, "h(x, uB)")?,
            ))
        }
        NRow::V(j) => {
            let vb = &cfg.vb;
            let den = h_right(k, &cfg.vc, x)?;
            let fr = f_recip_prod(k, std::slice::from_ref(x), &cfg.ub)?;
            let rpart = if fr.is_zero() {
                fr
            } else {
                sign::<F>(vb.len() + 1) * &th_row(k, x, vb, j)? * &cfg.r3.value(x)? * &fr
            };
            let kpart = ht_col(k, vb, j, x)?;
            Ok((
                quot(rpart, den.clone(), "h(vC, x)")?,
                quot(kpart, den, "h(vC, x)")?,
            ))
        }
    }
}

/// Entry of `N` at column point `x`. When `x` coincides with the row's own
/// parameter the finite diagonal value is returned, which needs `r'` at
/// that point.
pub fn n_entry<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    row: NRow,
    x: &F,
) -> Result<F> {
    let coincides = match row {
        NRow::U(j) => &cfg.uc[j] == x,
        NRow::V(j) => &cfg.vb[j] == x,
    };
    if coincides {
        return diagonal_entry(cfg, row);
    }
    let (r, k) = n_parts(cfg, row, x)?;
    Ok(r + k)
}

/// `d/d kappa2` of an entry when the C-side `r` values are the twisted
/// on-shell ones (so `r3` on `vC` is proportional to `kappa2`) and every
/// other `r` value is held fixed.
pub fn n_entry_kappa2_deriv<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    row: NRow,
    x: &F,
) -> Result<F> {
    let (r, k) = n_parts(cfg, row, x)?;
    let k2 = cfg.kappa.k2.clone();
    match row {
        NRow::U(_) => quot(k, k2, "kappa2"),
        NRow::V(_) if cfg.vc.contains(x) => quot(r, k2, "kappa2"),
        NRow::V(_) => Ok(F::zero()),
    }
}

fn diagonal_entry<F: Field, K: KernelFamily<F>>(cfg: &BetheConfig<F, K>, row: NRow) -> Result<F> {
    let k = &cfg.ctx;
    let qc = k
        .as_q()
        .ok_or_else(|| Error::Input("diagonal entries need the trigonometric kernels".into()))?;
    let qsum = qc.q().clone() + qc.qinv();
    let pair_sum = |set: &[F], j: usize| -> Result<F> {
        let w = &set[j];
        let mut acc = F::zero();
        for (l, u) in set.iter().enumerate() {
            if l != j {
                acc = acc + quot(qsum.clone() * u, k.h(w, u)? * &k.h(u, w)?, "h h")?;
            }
        }
        Ok(acc)
    };
    match row {
        NRow::U(j) => {
            let w = &cfg.uc[j];
            let log_d = quot(cfg.r1.deriv(w)?, cfg.r1.value(w)?, "r1")?;
            let mut bracket = (qc.qinv().clone() - qc.q()) * &log_d + &pair_sum(&cfg.uc, j)?;
            for v in &cfg.vc {
                bracket = bracket + v.clone() * &k.t(v, w)?;
            }
            let pref = quot(
                cfg.kappa.r21() * &h_left(k, w, &cfg.uc)?,
                w.clone() * &h_left(k, w, &cfg.ub)?,
                "w h",
            )?;
            Ok(pref * &bracket)
        }
        NRow::V(j) => {
            let y = &cfg.vb[j];
            let log_d = quot(cfg.r3.deriv(y)?, cfg.r3.value(y)?, "r3")?;
            let mut bracket = qc.dq().clone() * &log_d + &pair_sum(&cfg.vb, j)?;
            for u in &cfg.ub {
                bracket = bracket + u.clone() * &k.t(y, u)?;
            }
            let pref = quot(
                h_right(k, &cfg.vb, y)?,
                y.clone() * &h_right(k, &cfg.vc, y)?,
                "y h",
            )?;
            Ok(pref * &bracket)
        }
    }
}

/// The column points of `N` and the square matrix itself, with the
/// column weight applied to the `u` rows for [`DetKind::Sq2`].
pub fn n_matrix<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    which: DetKind,
    z: Option<&F>,
) -> Result<(Vec<F>, Matrix<F>)> {
    let xs = match (which, z) {
        (DetKind::F12, Some(z)) => join(&join(&cfg.ub, std::slice::from_ref(z)), &cfg.vc),
        (DetKind::F12, None) => {
            return Err(Error::Input("the T12 matrix needs a spectral point".into()))
        }
        _ => join(&cfg.ub, &cfg.vc),
    };
    let na = cfg.uc.len();
    let n = xs.len();
    check_len("rows of N", na + cfg.vb.len(), n)?;
    let m = Matrix::try_from_fn(n, n, |i, c| {
        let x = &xs[c];
        if i < na {
            let e = n_entry(cfg, NRow::U(i), x)?;
            Ok(if which == DetKind::Sq2 {
                e * &cfg.ctx.weight(x)
            } else {
                e
            })
        } else {
            n_entry(cfg, NRow::V(i - na), x)
        }
    })?;
    Ok((xs, m))
}

/// `C_h Delta'(uC) Delta'(vB) Delta(x)`.
pub fn det_prefactor<F: Field, K: KernelFamily<F>>(cfg: &BetheConfig<F, K>, xs: &[F]) -> Result<F> {
    let k = &cfg.ctx;
    Ok(c_h(k, &cfg.vc, &cfg.ub)?
        * &delta(k, DeltaKind::Upper, &cfg.uc)?
        * &delta(k, DeltaKind::Upper, &cfg.vb)?
        * &delta(k, DeltaKind::Lower, xs)?)
}

/// `q^2` of the family, one for families without a deformation.
fn q_squared<F: Field, K: KernelFamily<F>>(k: &K) -> F {
    k.as_q().map(|c| c.qpow(2)).unwrap_or_else(F::one)
}

/// Checks `kappa3/kappa1` against the value the formula needs.
pub fn require_twist_ratio<F: Field>(kappa: &TwistVector<F>, want: &F, what: &str) -> Result<()> {
    if &kappa.r31() != want {
        return Err(Error::Contract(format!(
            "{what} needs kappa3/kappa1 = {want}, got {}",
            kappa.r31()
        )));
    }
    Ok(())
}

/// The determinant formula for `S1` or `Sq2`.
pub fn scalar_det<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    which: DetKind,
) -> Result<F> {
    check_sizes(cfg, 0)?;
    let k = &cfg.ctx;
    let weight = match which {
        DetKind::S1 => {
            require_twist_ratio(&cfg.kappa, &F::one(), "S1")?;
            pprod(k, &cfg.vb) * &pprod(k, &cfg.ub)
        }
        DetKind::Sq2 => {
            require_twist_ratio(&cfg.kappa, &q_squared(k), "Sq2")?;
            pprod(k, &cfg.vb)
        }
        DetKind::F12 => return Err(Error::Input("use the T12 form factor for F12".into())),
    };
    cfg.require_on_shell()?;
    let (xs, m) = n_matrix(cfg, which, None)?;
    Ok(weight * &det_prefactor(cfg, &xs)? * &det_exact(&m)?)
}

/// Determinant of the `T12` form factor matrix with its prefactor
/// `z p(vB) p(uB) C_h h(vC, z) h(z, uB) Delta'(uC) Delta'(vB) Delta(x)`.
pub fn f12_det<F: Field, K: KernelFamily<F>>(cfg: &BetheConfig<F, K>, z: &F) -> Result<F> {
    check_sizes(cfg, 1)?;
    let k = &cfg.ctx;
    let qq = k.as_q().map(|c| c.q().clone()).unwrap_or_else(F::one);
    require_twist_ratio(&cfg.kappa, &qq, "F12")?;
    cfg.require_on_shell()?;
    let (xs, m) = n_matrix(cfg, DetKind::F12, Some(z))?;
    Ok(k.weight(z)
        * &pprod(k, &cfg.vb)
        * &pprod(k, &cfg.ub)
        * &h_right(k, &cfg.vc, z)?
        * &h_left(k, z, &cfg.ub)?
        * &det_prefactor(cfg, &xs)?
        * &det_exact(&m)?)
}

/// `L_a(gamma|uC) = Delta'(uC) Delta(gamma) det[N_u(uC_j, gamma_k) h(gamma_k, uB)]`.
pub fn l_block<F: Field>(cfg: &BetheConfig<F>, gamma: &[F]) -> Result<F> {
    let k = &cfg.ctx;
    let n = cfg.uc.len();
    check_len("|gamma|", gamma.len(), n)?;
    let m = Matrix::try_from_fn(n, n, |j, c| {
        Ok(n_entry(cfg, NRow::U(j), &gamma[c])? * &h_left(k, &gamma[c], &cfg.ub)?)
    })?;
    Ok(
        delta(k, DeltaKind::Upper, &cfg.uc)?
            * &delta(k, DeltaKind::Lower, gamma)?
            * &det_exact(&m)?,
    )
}

/// `M_b(gamma|vB) = Delta'(vB) Delta(gamma) det[N_v(vB_j, gamma_k) h(vC, gamma_k)]`.
pub fn m_block<F: Field>(cfg: &BetheConfig<F>, gamma: &[F]) -> Result<F> {
    let k = &cfg.ctx;
    let n = cfg.vb.len();
    check_len("|gamma|", gamma.len(), n)?;
    let m = Matrix::try_from_fn(n, n, |j, c| {
        Ok(n_entry(cfg, NRow::V(j), &gamma[c])? * &h_right(k, &cfg.vc, &gamma[c])?)
    })?;
    Ok(
        delta(k, DeltaKind::Upper, &cfg.vb)?
            * &delta(k, DeltaKind::Lower, gamma)?
            * &det_exact(&m)?,
    )
}

/// The single partition sum over `uB` and `vC` left after the `uC`, `vB`
/// sums are done, with `G^(kappa)` from its brute-force sum. Needs both
/// vectors on-shell; any twist.
pub fn scalar_intermediate<F: Field>(cfg: &BetheConfig<F>) -> Result<F> {
    let (a, b) = check_sizes(cfg, 0)?;
    cfg.require_on_shell()?;
    let ctx = &cfg.ctx;
    let k13 = quot(cfg.kappa.k1.clone(), cfg.kappa.k3.clone(), "kappa3")?;
    let mut work = Vec::new();
    for n in 0..=a.min(b) {
        for ub in splits(a, n) {
            for vc in splits(b, n) {
                work.push((ub.clone(), vc));
            }
        }
    }
    let total = par_sum(&work, |(ub, vc)| {
        let (ub1, ub2) = (pick(&cfg.ub, &ub.0), pick(&cfg.ub, &ub.1));
        let (vc1, vc2) = (pick(&cfg.vc, &vc.0), pick(&cfg.vc, &vc.1));
        let f = |x: &[F], y: &[F]| kfun_prod(ctx, Kernel::F, x, y);
        Ok(f(&vc2, &ub2)?
            * &f(&ub1, &ub2)?
            * &f(&vc2, &vc1)?
            * &pprod(ctx, &ub2)
            * &pprod(ctx, &vc1)
            * &g_kappa_brute(&ub1, &vc1, &k13, ctx)?
            * &l_block(cfg, &join(&ub2, &vc1))?
            * &m_block(cfg, &join(&ub1, &vc2))?)
    })?;
    Ok(pprod(ctx, &cfg.vb) * &total)
}

/// The configuration over rational functions in one variable, with every
/// value constant.
pub fn lift_config(cfg: &BetheConfig<ExactScalar>) -> BetheConfig<RatFun> {
    let lift = |v: &[ExactScalar]| v.iter().map(RatFun::from_scalar).collect::<Vec<_>>();
    BetheConfig::new(
        [lift(&cfg.uc), lift(&cfg.vc), lift(&cfg.ub), lift(&cfg.vb)],
        cfg.kappa.map(RatFun::from_scalar),
        cfg.r1.map(RatFun::from_scalar),
        cfg.r3.map(RatFun::from_scalar),
        lift_context(&cfg.ctx),
    )
}

/// A `C`, `B` parameter pair made to coincide: the row's own parameter and
/// the column that moves onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitPair {
    /// `uB_col -> uC_row`.
    U { row: usize, col: usize },
    /// `vC_col -> vB_row`.
    V { row: usize, col: usize },
}

/// Value of `r1` (resp. `r3`) at the coinciding point for which the pole of
/// the generic entry has zero residue: the twisted `C` equation for `u`,
/// the untwisted `B` equation for `v`.
fn coincident_r<F: Field, K: KernelFamily<F>>(
    cfg: &BetheConfig<F, K>,
    pair: LimitPair,
) -> Result<F> {
    let k = &cfg.ctx;
    let others = |set: &[F], j: usize| -> Vec<F> {
        set.iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, x)| x.clone())
            .collect()
    };
    match pair {
        LimitPair::U { row, .. } => {
            let w = std::slice::from_ref(&cfg.uc[row]);
            let rest = others(&cfg.uc, row);
            let num = kfun_prod(k, Kernel::F, w, &rest)? * &kfun_prod(k, Kernel::F, &cfg.vc, w)?;
            Ok(cfg.kappa.r21() * &quot(num, kfun_prod(k, Kernel::F, &rest, w)?, "f(u, w)")?)
        }
        LimitPair::V { row, .. } => {
            let y = std::slice::from_ref(&cfg.vb[row]);
            let rest = others(&cfg.vb, row);
            let num = kfun_prod(k, Kernel::F, &rest, y)? * &kfun_prod(k, Kernel::F, y, &cfg.ub)?;
            quot(num, kfun_prod(k, Kernel::F, y, &rest)?, "f(y, v)")
        }
    }
}

/// Moves one column parameter onto its row partner and compares the
/// `eps -> 0` limit of the generic entry (column point `w + eps`, ratio
/// `r0 + eps r'`) with the closed diagonal value at the same `r0`, `r'`.
/// All other data of `cfg` are kept; `r0` is fixed by the vanishing residue.
pub fn entry_limit_check(
    cfg: &BetheConfig<ExactScalar>,
    pair: LimitPair,
    r_prime: &ExactScalar,
) -> Result<Identity<ExactScalar>> {
    let (row, col, point, old) = match pair {
        LimitPair::U { row, col } => (
            NRow::U(row),
            col,
            cfg.uc[row].clone(),
            cfg.ub.get(col).cloned(),
        ),
        LimitPair::V { row, col } => (
            NRow::V(row),
            col,
            cfg.vb[row].clone(),
            cfg.vc.get(col).cloned(),
        ),
    };
    let old = old.ok_or_else(|| Error::Input(format!("column {col} out of range")))?;
    let r0 = coincident_r(cfg, pair)?;
    let is_u = matches!(pair, LimitPair::U { .. });
    let rebuild = |table: &RTable<ExactScalar>, moved: bool| -> Result<RTable<ExactScalar>> {
        let mut t = RTable::new();
        for e in table.entries() {
            if !(moved && (e.point == old || e.point == point)) {
                t.insert(e.point.clone(), e.value.clone())?;
            }
        }
        if moved {
            t.insert(point.clone(), r0.clone())?;
            t.set_deriv(&point, r_prime.clone())?;
        }
        Ok(t)
    };
    let mut diag = cfg.clone();
    if is_u {
        diag.ub[col] = point.clone();
        diag.r1 = rebuild(&cfg.r1, true)?;
    } else {
        diag.vc[col] = point.clone();
        diag.r3 = rebuild(&cfg.r3, true)?;
    }
    let closed = n_entry(&diag, row, &point)?;

    let mut path = lift_config(&diag);
    let moving = RatFun::linear(point.clone(), ExactScalar::one());
    let r_path = RatFun::linear(r0.clone(), r_prime.clone());
    let mut table = RTable::new();
    let src = if is_u { &cfg.r1 } else { &cfg.r3 };
    for e in src.entries() {
        if e.point != old && e.point != point {
            table.insert(RatFun::from_scalar(&e.point), RatFun::from_scalar(&e.value))?;
        }
    }
    table.insert(moving.clone(), r_path)?;
    if is_u {
        path.ub[col] = moving.clone();
        path.r1 = table;
    } else {
        path.vc[col] = moving.clone();
        path.r3 = table;
    }
    let generic = n_entry(&path, row, &moving)?;
    Ok(Identity::new(
        ratfun_limit(&generic, &ExactScalar::zero())?,
        closed,
    ))
}

/// Limits of both determinant formulas on the scaling path, and the
/// invariant-model determinant they should both reduce to.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingLimit {
    pub s1: ExactScalar,
    pub sq2: ExactScalar,
    pub invariant: ExactScalar,
}

impl ScalingLimit {
    pub fn agree(&self) -> bool {
        self.s1 == self.sq2 && self.s1 == self.invariant
    }
}

/// Builds `S1` and `Sq2` on `u = 1 + eps u'`, `q = 1 + eps c/2` from the
/// slopes of `[uC, vC, uB, vB]`, with on-shell ratios regenerated along the
/// path, and takes `eps -> 0`. The invariant determinant uses the slopes
/// directly with kernel constant `c`.
pub fn scaling_limit_scalar(
    slopes: &[Vec<ExactScalar>; 4],
    c: &ExactScalar,
    kappa2: &ExactScalar,
) -> Result<ScalingLimit> {
    let ctx = scaling_context(c)?;
    let path = |v: &[ExactScalar]| v.iter().map(scaling_point).collect::<Vec<_>>();
    let sets = || {
        [
            path(&slopes[0]),
            path(&slopes[1]),
            path(&slopes[2]),
            path(&slopes[3]),
        ]
    };
    let k2 = RatFun::from_scalar(kappa2);
    let eps0 = ExactScalar::zero();

    let kap1 = TwistVector::new(RatFun::one(), k2.clone(), RatFun::one())?;
    let s1 = scalar_det(
        &BetheConfig::on_shell(sets(), kap1, ctx.clone())?,
        DetKind::S1,
    )?;
    let kapq = TwistVector::new(RatFun::one(), k2, ctx.qpow(2))?;
    let sq2 = scalar_det(&BetheConfig::on_shell(sets(), kapq, ctx)?, DetKind::Sq2)?;

    let inv = InvariantKernels::new(c.clone())?;
    let kap = TwistVector::new(ExactScalar::one(), kappa2.clone(), ExactScalar::one())?;
    let invariant = scalar_det(
        &BetheConfig::on_shell(slopes.clone(), kap, inv)?,
        DetKind::S1,
    )?;
    Ok(ScalingLimit {
        s1: ratfun_limit(&s1, &eps0)?,
        sq2: ratfun_limit(&sq2, &eps0)?,
        invariant,
    })
}
