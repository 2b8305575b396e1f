use qbethe::bethe::{BetheConfig, TwistVector};
use qbethe::exact::{int, ratio};
use qbethe::izergin::Branch;
use qbethe::sampling::Sampler;
use qbethe::scalarprod::*;
use qbethe::{ExactScalar, QContext};

fn ctx2() -> QContext<ExactScalar> {
    QContext::new(int(2)).unwrap()
}

fn random_config(
    seed: u64,
    a: usize,
    b: usize,
    kappa: TwistVector<ExactScalar>,
) -> BetheConfig<ExactScalar> {
    let ctx = ctx2();
    let mut s = Sampler::new(seed, 40, ctx.q());
    let sets = [
        s.fresh_vec(a),
        s.fresh_vec(b),
        s.fresh_vec(a),
        s.fresh_vec(b),
    ];
    BetheConfig::on_shell(sets, kappa, ctx).unwrap()
}

#[test]
fn highest_coefficient_representations_agree() {
    let ctx = ctx2();
    for seed in 0..2 {
        for a in 0..=2 {
            for b in 0..=2 {
                let mut s = Sampler::new(seed, 40, ctx.q());
                for branch in Branch::BOTH {
                    let args = HighestCoeffArgs {
                        t: s.fresh_vec(a),
                        x: s.fresh_vec(a),
                        s: s.fresh_vec(b),
                        y: s.fresh_vec(b),
                        branch,
                    };
                    assert_eq!(
                        highest_coeff(&args, HcRep::First, &ctx).unwrap(),
                        highest_coeff(&args, HcRep::Second, &ctx).unwrap(),
                        "a={a} b={b} {branch:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn three_routes_agree_at_both_twist_ratios() {
    let q2 = int(4);
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)] {
        for k2 in [int(1), ratio(5, 3)] {
            for (which, k3) in [(DetKind::S1, int(1)), (DetKind::Sq2, q2.clone())] {
                let kap = TwistVector::new(int(1), k2.clone(), k3).unwrap();
                let cfg = random_config(3, a, b, kap);
                let s = scalar_sum(&cfg).unwrap();
                assert_eq!(
                    scalar_intermediate(&cfg).unwrap(),
                    s,
                    "intermediate a={a} b={b} {which:?}"
                );
                assert_eq!(
                    scalar_det(&cfg, which).unwrap(),
                    s,
                    "det a={a} b={b} {which:?} k2={k2}"
                );
            }
        }
    }
}

#[test]
fn g_kappa_closed_forms() {
    let ctx = ctx2();
    for n in 0..=3 {
        let mut s = Sampler::new(n as u64, 40, ctx.q());
        let (u, v) = (s.fresh_vec(n), s.fresh_vec(n));
        assert_eq!(
            g_kappa_brute(&u, &v, &int(1), &ctx).unwrap(),
            g_kappa_closed(&u, &v, DetKind::S1, &ctx).unwrap()
        );
        assert_eq!(
            g_kappa_brute(&u, &v, &ratio(1, 4), &ctx).unwrap(),
            g_kappa_closed(&u, &v, DetKind::Sq2, &ctx).unwrap()
        );
    }
}

#[test]
fn diagonal_entries_match_limits() {
    let kap = TwistVector::new(int(1), ratio(5, 3), int(1)).unwrap();
    for (a, b, pair) in [
        (1, 0, LimitPair::U { row: 0, col: 0 }),
        (2, 1, LimitPair::U { row: 1, col: 1 }),
        (2, 1, LimitPair::U { row: 0, col: 1 }),
        (0, 1, LimitPair::V { row: 0, col: 0 }),
        (1, 2, LimitPair::V { row: 1, col: 1 }),
        (1, 2, LimitPair::V { row: 0, col: 1 }),
    ] {
        let cfg = random_config(5, a, b, kap.clone());
        let id = entry_limit_check(&cfg, pair, &ratio(7, 5)).unwrap();
        assert!(id.holds(), "{pair:?}: {} vs {}", id.lhs, id.rhs);
    }
}

#[test]
fn scaling_limits_coincide() {
    let c = ratio(3, 2);
    for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let mut s = Sampler::additive(9, 20, &c);
        let slopes = [
            s.fresh_vec(a),
            s.fresh_vec(b),
            s.fresh_vec(a),
            s.fresh_vec(b),
        ];
        let lim = scaling_limit_scalar(&slopes, &c, &ratio(5, 3)).unwrap();
        assert!(lim.agree(), "a={a} b={b}: {lim:?}");
    }
}
