//! Randomized verification suites with one report record per checked
//! identity, and the run configuration that drives them.

use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bethe::{BetheConfig, TwistVector};
use crate::error::{Error, Result};
use crate::exact::{int, ratio, scalar_format, scalar_parse, ExactScalar};
use crate::formfactor::{ff22, ff22_analytic, twisted_ff, FfKind, FormFactorRequest, ScalarRoute};
use crate::identities::*;
use crate::izergin::Branch;
use crate::kernel::{scaling_substitute, InvariantKernels, Kernel, KernelFamily, QContext};
use crate::partitions::{all_splits, partition_sign, Partition2};
use crate::sampling::Sampler;
use crate::scalarprod::*;
use crate::unipoly::ratfun_limit;

/// Run parameters, as read from a JSON config file or assembled from flags.
/// Rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q: String,
    pub kappa: Option<[String; 3]>,
    #[serde(rename = "uC")]
    pub uc: Option<Vec<String>>,
    #[serde(rename = "vC")]
    pub vc: Option<Vec<String>>,
    #[serde(rename = "uB")]
    pub ub: Option<Vec<String>>,
    #[serde(rename = "vB")]
    pub vb: Option<Vec<String>>,
    /// `r1'` at the points of `uC`, in order.
    pub rprime1: Option<Vec<String>>,
    /// `r3'` at the points of `vB`, in order.
    pub rprime3: Option<Vec<String>>,
    pub z: Option<String>,
    pub r1_at_z: Option<String>,
    pub r3_at_z: Option<String>,
    /// Kernel constant of the invariant model for the scaling checks.
    pub c: String,
    pub seed: u64,
    pub trials: usize,
    pub max_a: usize,
    pub max_b: usize,
    pub threads: usize,
    pub bound: i64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: "2".into(),
            kappa: None,
            uc: None,
            vc: None,
            ub: None,
            vb: None,
            rprime1: None,
            rprime3: None,
            z: None,
            r1_at_z: None,
            r3_at_z: None,
            c: "3/2".into(),
            seed: 0,
            trials: 3,
            max_a: 2,
            max_b: 2,
            threads: 0,
            bound: 40,
        }
    }
}

fn parse_all(xs: &[String]) -> Result<Vec<ExactScalar>> {
    xs.iter().map(|s| scalar_parse(s)).collect()
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("config: {e}")))
    }

    pub fn context(&self) -> Result<QContext<ExactScalar>> {
        QContext::new(scalar_parse(&self.q)?)
    }

    /// The twist, or `(1, 1, 1)` when none is given.
    pub fn twist(&self) -> Result<TwistVector<ExactScalar>> {
        match &self.kappa {
            Some([a, b, c]) => {
                TwistVector::new(scalar_parse(a)?, scalar_parse(b)?, scalar_parse(c)?)
            }
            None => Ok(TwistVector::untwisted()),
        }
    }

    pub fn has_explicit_sets(&self) -> bool {
        self.uc.is_some() || self.vc.is_some() || self.ub.is_some() || self.vb.is_some()
    }

    /// The spectral point with its two ratio values, when all three are given.
    pub fn spectral(&self) -> Result<Option<(ExactScalar, ExactScalar, ExactScalar)>> {
        match (&self.z, &self.r1_at_z, &self.r3_at_z) {
            (Some(z), Some(r1), Some(r3)) => Ok(Some((
                scalar_parse(z)?,
                scalar_parse(r1)?,
                scalar_parse(r3)?,
            ))),
            (None, None, None) => Ok(None),
            _ => Err(Error::Input(
                "z, r1_at_z and r3_at_z must be given together".into(),
            )),
        }
    }

    /// On-shell configuration built from the explicit sets: the `C` side
    /// solves the twisted equations, the `B` side the untwisted ones.
    /// Derivatives from `rprime1`/`rprime3` are attached for diagonal
    /// entries, and the spectral point is added when present.
    pub fn explicit_config(&self) -> Result<BetheConfig<ExactScalar>> {
        let get = |s: &Option<Vec<String>>| s.as_deref().map(parse_all).unwrap_or(Ok(Vec::new()));
        let sets = [
            get(&self.uc)?,
            get(&self.vc)?,
            get(&self.ub)?,
            get(&self.vb)?,
        ];
        let mut cfg = BetheConfig::on_shell(sets, self.twist()?, self.context()?)?;
        if let Some(rp) = &self.rprime1 {
            check_len("rprime1", rp.len(), cfg.uc.len())?;
            for (p, d) in cfg.uc.clone().iter().zip(parse_all(rp)?) {
                cfg.r1.set_deriv(p, d)?;
            }
        }
        if let Some(rp) = &self.rprime3 {
            check_len("rprime3", rp.len(), cfg.vb.len())?;
            for (p, d) in cfg.vb.clone().iter().zip(parse_all(rp)?) {
                cfg.r3.set_deriv(p, d)?;
            }
        }
        if let Some((z, r1, r3)) = self.spectral()? {
            cfg = cfg.with_spectral(z, r1, r3)?;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One checked identity. `lhs` and `rhs` are exact rational texts; on
/// error both are empty and `detail` carries the message.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub case: String,
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Copy with the timing field cleared, for run-to-run comparison.
    pub fn untimed(&self) -> Self {
        VerificationReport {
            ms: 0,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Kernel,
    Izergin,
    Lemmas,
    Appendix,
    Hc,
    Props,
    Limits,
    Formfactor,
}

impl Suite {
    pub const PARTS: [Suite; 8] = [
        Suite::Kernel,
        Suite::Izergin,
        Suite::Lemmas,
        Suite::Appendix,
        Suite::Hc,
        Suite::Props,
        Suite::Limits,
        Suite::Formfactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Kernel => "kernel",
            Suite::Izergin => "izergin",
            Suite::Lemmas => "lemmas",
            Suite::Appendix => "appendix",
            Suite::Hc => "hc",
            Suite::Props => "props",
            Suite::Limits => "limits",
            Suite::Formfactor => "formfactor",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite `{s}`")))
    }
}

type Checks = Vec<(String, Identity<ExactScalar>)>;

/// A unit of work: a closure returning named identities.
struct Case {
    suite: Suite,
    id: String,
    seed: u64,
    sizes: Vec<usize>,
    run: Box<dyn Fn() -> Result<Checks> + Send + Sync>,
}

impl Case {
    fn new(
        suite: Suite,
        id: impl Into<String>,
        seed: u64,
        sizes: Vec<usize>,
        run: impl Fn() -> Result<Checks> + Send + Sync + 'static,
    ) -> Self {
        Case {
            suite,
            id: id.into(),
            seed,
            sizes,
            run: Box::new(run),
        }
    }

    fn execute(&self) -> Vec<VerificationReport> {
        let start = Instant::now();
        let out = (self.run)();
        let ms = start.elapsed().as_millis() as u64;
        let record = |case: String, lhs: String, rhs: String, status, detail| VerificationReport {
            suite: self.suite.name().into(),
            case,
            seed: self.seed,
            sizes: self.sizes.clone(),
            lhs,
            rhs,
            status,
            ms,
            detail,
        };
        match out {
            Ok(checks) => checks
                .into_iter()
                .map(|(name, id)| {
                    let case = if name.is_empty() {
                        self.id.clone()
                    } else {
                        format!("{}/{name}", self.id)
                    };
                    let status = if id.holds() {
                        Status::Pass
                    } else {
                        Status::Fail
                    };
                    record(
                        case,
                        scalar_format(&id.lhs),
                        scalar_format(&id.rhs),
                        status,
                        None,
                    )
                })
                .collect(),
            Err(e) => vec![record(
                self.id.clone(),
                String::new(),
                String::new(),
                Status::Error,
                Some(e.to_string()),
            )],
        }
    }
}

fn one(id: Identity<ExactScalar>) -> Checks {
    vec![(String::new(), id)]
}

/// Everything a suite needs, already parsed.
#[derive(Clone)]
struct Plan {
    ctx: QContext<ExactScalar>,
    seed: u64,
    trials: usize,
    max_a: usize,
    max_b: usize,
    bound: i64,
    c: ExactScalar,
    explicit: Option<BetheConfig<ExactScalar>>,
}

impl Plan {
    fn sampler(&self, seed: u64) -> Sampler {
        Sampler::new(seed, self.bound, self.ctx.q())
    }

    fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.trials as u64).map(move |t| self.seed.wrapping_add(t))
    }

    /// Size cap for the single-set identities.
    fn n(&self) -> usize {
        self.max_a.max(self.max_b)
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        (0..=self.max_a)
            .flat_map(|a| (0..=self.max_b).map(move |b| (a, b)))
            .collect()
    }
}

fn random_config(
    p: &Plan,
    seed: u64,
    sizes: [usize; 4],
    kappa: TwistVector<ExactScalar>,
) -> Result<(ExactScalar, BetheConfig<ExactScalar>)> {
    let mut s = p.sampler(seed);
    let sets = sizes.map(|n| s.fresh_vec(n));
    let z = s.fresh();
    let (r1z, r3z) = (s.scalar(), s.scalar());
    let cfg =
        BetheConfig::on_shell(sets, kappa, p.ctx.clone())?.with_spectral(z.clone(), r1z, r3z)?;
    Ok((z, cfg))
}

fn kernel_cases(p: &Plan) -> Vec<Case> {
    let mut out = Vec::new();
    for seed in p.seeds() {
        let mut s = p.sampler(seed);
        for pt in 0..10 {
            let ctx = p.ctx.clone();
            let (x, y) = (s.fresh(), s.fresh());
            out.push(Case::new(
                Suite::Kernel,
                format!("q={}/pt{pt}", ctx.q()),
                seed,
                vec![],
                move || {
                    let mut checks: Checks = kernel_relations(&x, &y, &ctx)?
                        .into_iter()
                        .map(|(n, id)| (n.to_string(), id))
                        .collect();
                    checks.push((
                        "h=f/g".into(),
                        Identity::new(ctx.h(&x, &y)?, ctx.f(&x, &y)? / ctx.g(&x, &y)?),
                    ));
                    checks.push((
                        "t=g/h".into(),
                        Identity::new(ctx.t(&x, &y)?, ctx.g(&x, &y)? / ctx.h(&x, &y)?),
                    ));
                    Ok(checks)
                },
            ));
        }
    }
    out
}

fn izergin_cases(p: &Plan) -> Vec<Case> {
    let n_max = p.n();
    let mut out = Vec::new();
    for seed in p.seeds() {
        for branch in Branch::BOTH {
            let tag = branch.name();
            for n in 0..=n_max {
                for m in 0..=n_max {
                    let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                    let (x, y, z) = (s.fresh_vec(n), s.fresh_vec(n), s.fresh_vec(m));
                    out.push(Case::new(
                        Suite::Izergin,
                        format!("reduction/{tag}"),
                        seed,
                        vec![n, m],
                        move || {
                            let [a, b] = k_reduction(&x, &y, &z, branch, &ctx)?;
                            Ok(vec![("x".into(), a), ("y".into(), b)])
                        },
                    ));
                }
            }
            for n in 1..=n_max + 1 {
                let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                let (x, y) = (s.fresh_vec(n), s.fresh_vec(n));
                out.push(Case::new(
                    Suite::Izergin,
                    format!("inversion/{tag}"),
                    seed,
                    vec![n],
                    move || {
                        let [a, b] = k_inversion(&x, &y, branch, &ctx)?;
                        Ok(vec![("x".into(), a), ("y".into(), b)])
                    },
                ));
            }
            for n in 1..=n_max {
                let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                let (x, y, z) = (s.fresh_vec(n - 1), s.fresh_vec(n - 1), s.fresh());
                out.push(Case::new(
                    Suite::Izergin,
                    format!("residue/{tag}"),
                    seed,
                    vec![n],
                    move || Ok(one(k_residue(&x, &y, &z, branch, &ctx)?)),
                ));
            }
            for m in 0..=n_max + 1 {
                for n1 in 0..=m {
                    let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                    let (g1, g2, xi) = (s.fresh_vec(n1), s.fresh_vec(m - n1), s.fresh_vec(m));
                    out.push(Case::new(
                        Suite::Izergin,
                        format!("shift-block/{tag}"),
                        seed,
                        vec![m, n1],
                        move || Ok(one(k_shift_block(&g1, &g2, &xi, branch, &ctx)?)),
                    ));
                }
            }
        }
    }
    out
}

fn lemma_cases(p: &Plan) -> Vec<Case> {
    let n_max = p.n();
    let mut out = Vec::new();
    for seed in p.seeds() {
        for branch in Branch::BOTH {
            let tag = branch.name();
            for m1 in 0..=n_max + 2 {
                for m2 in 0..=n_max + 2 - m1 {
                    let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                    let (a, b, g) = (s.fresh_vec(m1), s.fresh_vec(m2), s.fresh_vec(m1 + m2));
                    out.push(Case::new(
                        Suite::Lemmas,
                        format!("lemma1/{tag}"),
                        seed,
                        vec![m1, m2],
                        move || Ok(one(lemma1(&a, &b, &g, branch, &ctx)?)),
                    ));
                }
            }
            for m in 0..=n_max + 1 {
                let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                let (g, xi) = (s.fresh_vec(m), s.fresh_vec(m));
                let p1: Vec<_> = (0..m).map(|_| s.scalar()).collect();
                let p2: Vec<_> = (0..m).map(|_| s.scalar()).collect();
                out.push(Case::new(
                    Suite::Lemmas,
                    format!("lemma2/{tag}"),
                    seed,
                    vec![m],
                    move || Ok(one(lemma2(&g, &xi, &p1, &p2, branch, &ctx)?)),
                ));
            }
        }
        for n in 0..=n_max + 1 {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let (a, b, z) = (s.fresh_vec(n), s.fresh_vec(n), s.fresh());
            out.push(Case::new(
                Suite::Lemmas,
                "lemma3",
                seed,
                vec![n],
                move || {
                    let mut checks = vec![("sum".to_string(), lemma3(&a, &b, &z, &ctx)?)];
                    for c in Corollary::ALL {
                        checks.push((format!("{c:?}"), corollary(c, &a, &b, &ctx)?));
                    }
                    for (i, id) in triv_rav(&a, &b, &ctx)?.into_iter().enumerate() {
                        checks.push((format!("termwise{i}"), id));
                    }
                    Ok(checks)
                },
            ));
        }
    }
    out
}

fn appendix_cases(p: &Plan) -> Vec<Case> {
    let n_max = p.n();
    let mut out = Vec::new();
    for seed in p.seeds() {
        for n in 0..=n_max + 1 {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let (a, b, z) = (s.fresh_vec(n), s.fresh_vec(n), s.fresh());
            out.push(Case::new(
                Suite::Appendix,
                "lambda",
                seed,
                vec![n],
                move || {
                    Ok(one(Identity::new(
                        lambda_l(&a, &b, &z, &ctx)?,
                        lambda_r(&a, &b, &z, &ctx)?,
                    )))
                },
            ));
        }
        for n in 1..=n_max {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let (a, b, z) = (s.fresh_vec(n), s.fresh_vec(n), s.fresh());
            out.push(Case::new(
                Suite::Appendix,
                "lambda-residue",
                seed,
                vec![n],
                move || {
                    let mut checks = Vec::new();
                    for side in [LambdaSide::Left, LambdaSide::Right] {
                        for at in [LambdaPole::AtBeta, LambdaPole::AtShiftedBeta] {
                            checks.push((
                                format!("{side:?}/{at:?}"),
                                lambda_residue(&a, &b, &z, side, at, &ctx)?,
                            ));
                        }
                    }
                    Ok(checks)
                },
            ));
        }
        for (a, b) in p.cells() {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let (xs, ys) = (s.fresh_vec(a + b), s.fresh_vec(a + b));
            out.push(Case::new(
                Suite::Appendix,
                "block-det",
                seed,
                vec![a, b],
                move || {
                    let row = |j: usize, x: &ExactScalar| {
                        if j < a {
                            ctx.g(x, &ys[j])
                        } else {
                            ctx.t(&ys[j], x)
                        }
                    };
                    Ok(one(genmat(&ctx, &xs, a, row)?))
                },
            ));
        }
        for n in 0..=2 * n_max {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let xs = s.fresh_vec(n);
            out.push(Case::new(
                Suite::Appendix,
                "partition-sign",
                seed,
                vec![n],
                move || {
                    all_splits(n)
                        .iter()
                        .map(|(i1, i2)| {
                            let part = Partition2::from_indices(&xs, i1, i2);
                            let name = format!("{i1:?}");
                            Ok((
                                name,
                                Identity::new(
                                    partition_sign(&ctx, &xs, &part)?,
                                    int(part.parity()),
                                ),
                            ))
                        })
                        .collect()
                },
            ));
        }
    }
    out
}

fn hc_cases(p: &Plan) -> Vec<Case> {
    let mut out = Vec::new();
    for seed in p.seeds() {
        for (a, b) in p.cells() {
            for branch in Branch::BOTH {
                let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
                let args = HighestCoeffArgs {
                    t: s.fresh_vec(a),
                    x: s.fresh_vec(a),
                    s: s.fresh_vec(b),
                    y: s.fresh_vec(b),
                    branch,
                };
                out.push(Case::new(
                    Suite::Hc,
                    format!("reps/{}", branch.name()),
                    seed,
                    vec![a, b],
                    move || {
                        Ok(one(Identity::new(
                            highest_coeff(&args, HcRep::First, &ctx)?,
                            highest_coeff(&args, HcRep::Second, &ctx)?,
                        )))
                    },
                ));
            }
        }
    }
    out
}

/// The determinant formula matching the twist ratio of `cfg`.
fn det_kind_for(cfg: &BetheConfig<ExactScalar>) -> Result<DetKind> {
    let r = cfg.kappa.r31();
    if r.is_one() {
        Ok(DetKind::S1)
    } else if r == cfg.ctx.qpow(2) {
        Ok(DetKind::Sq2)
    } else {
        Err(Error::Contract(format!(
            "no determinant formula at kappa3/kappa1 = {r}"
        )))
    }
}

fn route_checks(cfg: &BetheConfig<ExactScalar>, which: DetKind) -> Result<Checks> {
    let s = scalar_sum(cfg)?;
    let det = scalar_det(cfg, which)?;
    let mut rev = cfg.clone();
    for set in [&mut rev.uc, &mut rev.vc, &mut rev.ub, &mut rev.vb] {
        set.reverse();
    }
    Ok(vec![
        (
            "intermediate".into(),
            Identity::new(scalar_intermediate(cfg)?, s.clone()),
        ),
        ("det".into(), Identity::new(det.clone(), s)),
        (
            "det-permuted".into(),
            Identity::new(scalar_det(&rev, which)?, det),
        ),
    ])
}

fn props_cases(p: &Plan) -> Vec<Case> {
    if let Some(cfg) = p.explicit.clone() {
        let (a, b) = cfg.sizes();
        return vec![Case::new(
            Suite::Props,
            "routes/explicit",
            p.seed,
            vec![a, b],
            move || route_checks(&cfg, det_kind_for(&cfg)?),
        )];
    }
    let mut out = Vec::new();
    for seed in p.seeds() {
        for (a, b) in p.cells() {
            for k2 in [int(1), ratio(5, 3)] {
                for (which, k3) in [(DetKind::S1, int(1)), (DetKind::Sq2, p.ctx.qpow(2))] {
                    let plan = p.clone();
                    let id = format!("routes/{which:?}/k2={}", scalar_format(&k2));
                    let k2 = k2.clone();
                    out.push(Case::new(Suite::Props, id, seed, vec![a, b], move || {
                        let kap = TwistVector::new(int(1), k2.clone(), k3.clone())?;
                        let (_, cfg) = random_config(&plan, seed, [a, b, a, b], kap)?;
                        route_checks(&cfg, which)
                    }));
                }
            }
        }
        for n in 0..=p.n() {
            let (ctx, mut s) = (p.ctx.clone(), p.sampler(seed));
            let (u, v) = (s.fresh_vec(n), s.fresh_vec(n));
            out.push(Case::new(
                Suite::Props,
                "g-closed",
                seed,
                vec![n],
                move || {
                    let q2inv = ctx.qpow(-2);
                    Ok(vec![
                        (
                            "S1".into(),
                            Identity::new(
                                g_kappa_brute(&u, &v, &int(1), &ctx)?,
                                g_kappa_closed(&u, &v, DetKind::S1, &ctx)?,
                            ),
                        ),
                        (
                            "Sq2".into(),
                            Identity::new(
                                g_kappa_brute(&u, &v, &q2inv, &ctx)?,
                                g_kappa_closed(&u, &v, DetKind::Sq2, &ctx)?,
                            ),
                        ),
                    ])
                },
            ));
        }
    }
    out
}

fn limit_cases(p: &Plan) -> Vec<Case> {
    let c = p.c.clone();
    let mut out = Vec::new();
    for seed in p.seeds() {
        let mut s = Sampler::additive(seed, p.bound, &c);
        for pt in 0..4 {
            let (x, y, c) = (s.fresh(), s.fresh(), c.clone());
            out.push(Case::new(
                Suite::Limits,
                format!("q1-kernels/pt{pt}"),
                seed,
                vec![],
                move || {
                    let inv = InvariantKernels::new(c.clone())?;
                    [Kernel::F, Kernel::G, Kernel::H, Kernel::T]
                        .into_iter()
                        .map(|k| {
                            let lim = ratfun_limit(
                                &scaling_substitute(k, &x, &y, &c)?,
                                &ExactScalar::zero(),
                            )?;
                            Ok((
                                k.name().to_string(),
                                Identity::new(lim, inv.kernel(k, &x, &y)?),
                            ))
                        })
                        .collect()
                },
            ));
        }
        for (a, b) in p.cells().into_iter().filter(|(a, b)| a + b <= 2) {
            let mut s = Sampler::additive(seed, p.bound, &c);
            let slopes = [
                s.fresh_vec(a),
                s.fresh_vec(b),
                s.fresh_vec(a),
                s.fresh_vec(b),
            ];
            let c = c.clone();
            out.push(Case::new(
                Suite::Limits,
                "q1-scalar",
                seed,
                vec![a, b],
                move || {
                    let lim = scaling_limit_scalar(&slopes, &c, &ratio(5, 3))?;
                    Ok(vec![
                        ("S1=Sq2".into(), Identity::new(lim.s1.clone(), lim.sq2)),
                        ("S1=invariant".into(), Identity::new(lim.s1, lim.invariant)),
                    ])
                },
            ));
        }
        let pairs = [
            (1, 0, LimitPair::U { row: 0, col: 0 }),
            (2, 1, LimitPair::U { row: 1, col: 1 }),
            (2, 1, LimitPair::U { row: 0, col: 1 }),
            (0, 1, LimitPair::V { row: 0, col: 0 }),
            (1, 2, LimitPair::V { row: 1, col: 1 }),
            (1, 2, LimitPair::V { row: 0, col: 1 }),
        ];
        for (a, b, pair) in pairs
            .into_iter()
            .filter(|(a, b, _)| *a <= p.max_a && *b <= p.max_b)
        {
            let plan = p.clone();
            out.push(Case::new(
                Suite::Limits,
                format!("diag-entry/{pair:?}"),
                seed,
                vec![a, b],
                move || {
                    let kap = TwistVector::new(int(1), ratio(5, 3), int(1))?;
                    let (_, cfg) = random_config(&plan, seed, [a, b, a, b], kap)?;
                    let r_prime = plan.sampler(seed ^ 0x5eed).scalar();
                    Ok(one(entry_limit_check(&cfg, pair, &r_prime)?))
                },
            ));
        }
    }
    out
}

fn ff(
    which: FfKind,
    z: &ExactScalar,
    cfg: &BetheConfig<ExactScalar>,
    route: ScalarRoute,
) -> Result<ExactScalar> {
    twisted_ff(
        &FormFactorRequest {
            which,
            z: z.clone(),
            cfg: cfg.clone(),
        },
        route,
    )
}

fn formfactor_cases(p: &Plan) -> Vec<Case> {
    let mut out = Vec::new();
    let ctx = p.ctx.clone();
    out.push(Case::new(
        Suite::Formfactor,
        "vacuum",
        p.seed,
        vec![0, 0],
        move || {
            let z = int(7);
            let r3z = int(3);
            let base = BetheConfig::on_shell(
                [vec![], vec![], vec![], vec![]],
                TwistVector::untwisted(),
                ctx.clone(),
            )?
            .with_spectral(z.clone(), int(2), r3z.clone())?;
            let mut c33 = base.clone();
            c33.kappa = TwistVector::new(int(1), int(1), ctx.qpow(2))?;
            let mut c22 = base.clone();
            c22.kappa = TwistVector::new(int(1), ratio(5, 3), int(1))?;
            Ok(vec![
                ("ff22".into(), Identity::new(ff22(&z, &base)?, int(1))),
                (
                    "ff22-analytic".into(),
                    Identity::new(ff22_analytic(&z, &base)?, int(1)),
                ),
                (
                    "ff22-twisted".into(),
                    Identity::new(ff(FfKind::Ff22Twisted, &z, &c22, ScalarRoute::Det)?, int(1)),
                ),
                (
                    "ff33-q2".into(),
                    Identity::new(ff(FfKind::Ff33Q2, &z, &c33, ScalarRoute::Det)?, r3z),
                ),
            ])
        },
    ));
    let ctx = p.ctx.clone();
    out.push(Case::new(
        Suite::Formfactor,
        "ff12/single",
        p.seed,
        vec![0, 0],
        move || {
            // The 1x1 case reduces to z g(u, z) (r1(z) - k2).
            let kap = TwistVector::new(int(1), ratio(5, 3), ctx.q().clone())?;
            let z = int(7);
            let cfg =
                BetheConfig::on_shell([vec![int(3)], vec![], vec![], vec![]], kap, ctx.clone())?
                    .with_spectral(z.clone(), int(2), int(0))?;
            let expected = z.clone() * ctx.g(&int(3), &z)? * (int(2) - ratio(5, 3));
            Ok(one(Identity::new(
                ff(FfKind::Ff12Q, &z, &cfg, ScalarRoute::Det)?,
                expected,
            )))
        },
    ));
    for seed in p.seeds() {
        for (a, b) in p.cells() {
            let plan = p.clone();
            out.push(Case::new(
                Suite::Formfactor,
                "twisted-routes",
                seed,
                vec![a, b],
                move || {
                    let mut checks = Vec::new();
                    for (which, kap) in [
                        (
                            FfKind::Ff33Q2,
                            TwistVector::new(int(1), int(1), plan.ctx.qpow(2))?,
                        ),
                        (
                            FfKind::Ff22Twisted,
                            TwistVector::new(int(1), ratio(5, 3), int(1))?,
                        ),
                    ] {
                        let (z, cfg) = random_config(&plan, seed, [a, b, a, b], kap)?;
                        let det = ff(which, &z, &cfg, ScalarRoute::Det)?;
                        checks.push((
                            format!("{which:?}"),
                            Identity::new(det, ff(which, &z, &cfg, ScalarRoute::Sum)?),
                        ));
                    }
                    Ok(checks)
                },
            ));
            let plan = p.clone();
            out.push(Case::new(
                Suite::Formfactor,
                "ff22-derivative",
                seed,
                vec![a, b],
                move || {
                    let (z, cfg) =
                        random_config(&plan, seed, [a, b, a, b], TwistVector::untwisted())?;
                    Ok(one(Identity::new(
                        ff22(&z, &cfg)?,
                        ff22_analytic(&z, &cfg)?,
                    )))
                },
            ));
            let plan = p.clone();
            out.push(Case::new(
                Suite::Formfactor,
                "ff12-permutation",
                seed,
                vec![a, b],
                move || {
                    let kap = TwistVector::new(int(1), ratio(5, 3), plan.ctx.q().clone())?;
                    let (z, cfg) = random_config(&plan, seed, [a + 1, b, a, b], kap)?;
                    let base = ff(FfKind::Ff12Q, &z, &cfg, ScalarRoute::Det)?;
                    let mut checks = Vec::new();
                    for (name, k) in [("uC", 0), ("vC", 1), ("uB", 2), ("vB", 3)] {
                        let mut c = cfg.clone();
                        [&mut c.uc, &mut c.vc, &mut c.ub, &mut c.vb][k].reverse();
                        checks.push((
                            name.to_string(),
                            Identity::new(
                                ff(FfKind::Ff12Q, &z, &c, ScalarRoute::Det)?,
                                base.clone(),
                            ),
                        ));
                    }
                    Ok(checks)
                },
            ));
        }
    }
    out
}

fn cases(suite: Suite, p: &Plan) -> Vec<Case> {
    match suite {
        Suite::All => Suite::PARTS.iter().flat_map(|s| cases(*s, p)).collect(),
        Suite::Kernel => kernel_cases(p),
        Suite::Izergin => izergin_cases(p),
        Suite::Lemmas => lemma_cases(p),
        Suite::Appendix => appendix_cases(p),
        Suite::Hc => hc_cases(p),
        Suite::Props => props_cases(p),
        Suite::Limits => limit_cases(p),
        Suite::Formfactor => formfactor_cases(p),
    }
}

/// Runs a suite on a worker pool of `run.threads` threads (all cores when
/// zero). Records come back in case order whatever the thread count.
pub fn run_suite(suite: Suite, run: &RunConfig) -> Result<Vec<VerificationReport>> {
    run_matching(suite, run, |_| true)
}

/// Like [`run_suite`], restricted to the cases whose id satisfies `keep`.
pub fn run_matching(
    suite: Suite,
    run: &RunConfig,
    keep: impl Fn(&str) -> bool,
) -> Result<Vec<VerificationReport>> {
    let plan = Plan {
        ctx: run.context()?,
        seed: run.seed,
        trials: run.trials.max(1),
        max_a: run.max_a,
        max_b: run.max_b,
        bound: run.bound,
        c: scalar_parse(&run.c)?,
        explicit: if run.has_explicit_sets() {
            Some(run.explicit_config()?)
        } else {
            None
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(run.threads)
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    let list: Vec<Case> = cases(suite, &plan)
        .into_iter()
        .filter(|c| keep(&c.id))
        .collect();
    Ok(pool.install(|| list.par_iter().flat_map_iter(Case::execute).collect()))
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.status == Status::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip() {
        let text =
            r#"{"q": "3/2", "kappa": ["1", "5/3", "1"], "uC": ["2"], "uB": ["7/3"], "seed": 4}"#;
        let cfg = RunConfig::from_json(text).unwrap();
        assert_eq!(cfg.seed, 4);
        assert_eq!(cfg.bound, 40);
        let bc = cfg.explicit_config().unwrap();
        assert_eq!(bc.uc, vec![int(2)]);
        assert_eq!(bc.kappa.k2, ratio(5, 3));
        assert!(RunConfig::from_json(r#"{"nope": 1}"#).is_err());
    }

    #[test]
    fn suite_names_parse() {
        for s in std::iter::once(Suite::All).chain(Suite::PARTS) {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("everything").is_err());
    }

    #[test]
    fn errors_become_records() {
        let c = Case::new(Suite::Props, "boom", 1, vec![], || {
            Err(Error::Input("x".into()))
        });
        let r = c.execute();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].status, Status::Error);
        assert!(r[0].to_json().contains("\"status\":\"error\""));
    }
}
