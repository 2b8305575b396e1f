use qbethe::bethe::{BetheConfig, TwistVector};
use qbethe::exact::{int, ratio};
use qbethe::formfactor::*;
use qbethe::sampling::Sampler;
use qbethe::{ExactScalar, QContext};

fn ctx2() -> QContext<ExactScalar> {
    QContext::new(int(2)).unwrap()
}

fn config(
    seed: u64,
    sizes: [usize; 4],
    kappa: TwistVector<ExactScalar>,
) -> (ExactScalar, BetheConfig<ExactScalar>) {
    let ctx = ctx2();
    let mut s = Sampler::new(seed, 40, ctx.q());
    let sets = sizes.map(|n| s.fresh_vec(n));
    let z = s.fresh();
    let (r1z, r3z) = (s.scalar(), s.scalar());
    let cfg = BetheConfig::on_shell(sets, kappa, ctx)
        .unwrap()
        .with_spectral(z.clone(), r1z, r3z)
        .unwrap();
    (z, cfg)
}

#[test]
fn twisted_form_factor_routes_agree() {
    for a in 0..=2 {
        for b in 0..=2 {
            for (which, kap) in [
                (
                    FfKind::Ff33Q2,
                    TwistVector::new(int(1), int(1), int(4)).unwrap(),
                ),
                (
                    FfKind::Ff22Twisted,
                    TwistVector::new(int(1), ratio(5, 3), int(1)).unwrap(),
                ),
            ] {
                let (z, cfg) = config(11, [a, b, a, b], kap);
                let req = FormFactorRequest { which, z, cfg };
                assert_eq!(
                    twisted_ff(&req, ScalarRoute::Det).unwrap(),
                    twisted_ff(&req, ScalarRoute::Sum).unwrap(),
                    "{which:?} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn t22_derivative_two_ways() {
    for a in 0..=2 {
        for b in 0..=2 {
            let (z, cfg) = config(13, [a, b, a, b], TwistVector::untwisted());
            assert_eq!(
                ff22(&z, &cfg).unwrap(),
                ff22_analytic(&z, &cfg).unwrap(),
                "a={a} b={b}"
            );
        }
    }
}

#[test]
fn t12_is_symmetric_in_each_set() {
    let kap = TwistVector::new(int(1), ratio(5, 3), int(2)).unwrap();
    let (z, cfg) = config(17, [2, 1, 1, 1], kap.clone());
    let v0 = twisted_ff(
        &FormFactorRequest {
            which: FfKind::Ff12Q,
            z: z.clone(),
            cfg: cfg.clone(),
        },
        ScalarRoute::Det,
    )
    .unwrap();
    let mut p = cfg.clone();
    p.uc.reverse();
    let v1 = twisted_ff(
        &FormFactorRequest {
            which: FfKind::Ff12Q,
            z,
            cfg: p,
        },
        ScalarRoute::Det,
    )
    .unwrap();
    assert_eq!(v0, v1);
}
