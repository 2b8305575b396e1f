use num_traits::{One, Zero};
use proptest::prelude::*;

use qbethe::bethe::{BetheConfig, TwistVector};
use qbethe::exact::{det_bareiss, det_cofactor, det_exact, int, ratio};
use qbethe::izergin::{izergin, izergin_direct, Branch};
use qbethe::partitions::{enum_partitions, partition_sign, Partition2};
use qbethe::sampling::Sampler;
use qbethe::scalarprod::{scalar_det, scalar_sum, DetKind};
use qbethe::unipoly::{ratfun_eval, RatFun};
use qbethe::{scalar_format, scalar_parse, ExactMatrix, ExactScalar, Poly, QContext};

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero() -> impl Strategy<Value = ExactScalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(scalar(), n * n)
        .prop_map(move |v| ExactMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(), 0..=max_len).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar(), d in nonzero()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a / &d) * &d, a.clone());
        prop_assert_eq!(&a - &a, ExactScalar::zero());
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        prop_assert_eq!(scalar_parse(&scalar_format(&a)).unwrap(), a);
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (0usize..=4).prop_flat_map(|n| (matrix(n), matrix(n)))) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(det_bareiss(&ab), det_bareiss(&a) * det_bareiss(&b));
    }

    #[test]
    fn bareiss_matches_cofactor(m in (0usize..=5).prop_flat_map(matrix)) {
        prop_assert_eq!(det_bareiss(&m), det_cofactor(&m));
        prop_assert_eq!(det_bareiss(&m.transpose()), det_bareiss(&m));
    }

    #[test]
    fn interpolation_recovers_polynomials(p in poly(6), shift in -20i64..20) {
        let pts: Vec<_> = (0..7).map(|k| {
            let x = int(k + shift);
            (x.clone(), p.eval(&x))
        }).collect();
        prop_assert_eq!(Poly::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn division_with_remainder(a in poly(6), b in poly(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both(a in poly(4), b in poly(4), c in poly(3)) {
        prop_assume!(!c.is_zero());
        let (ac, bc) = (&a * &c, &b * &c);
        let g = Poly::gcd(&ac, &bc);
        if !g.is_zero() {
            prop_assert!(ac.div_rem(&g).1.is_zero());
            prop_assert!(bc.div_rem(&g).1.is_zero());
            prop_assert!(g.div_rem(&c.monic()).1.is_zero());
        }
    }

    #[test]
    fn derivative_product_rule(a in poly(4), b in poly(4)) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_functions_evaluate_consistently(a in poly(3), b in poly(3), x in scalar()) {
        prop_assume!(!b.is_zero() && !b.eval(&x).is_zero());
        let f = RatFun::new(a.clone(), b.clone()).unwrap();
        let g = f.clone() * &RatFun::var() + &RatFun::one();
        let want = a.eval(&x) / b.eval(&x) * &x + ExactScalar::one();
        prop_assert_eq!(ratfun_eval(&g, &x).unwrap(), want);
    }

    #[test]
    fn partition_sign_is_parity(seed in 0u64..1000, n in 0usize..=6, k in 0usize..=6) {
        prop_assume!(k <= n);
        let ctx = QContext::new(int(2)).unwrap();
        let xs = Sampler::new(seed, 40, ctx.q()).fresh_vec(n);
        for p in enum_partitions(n, &[k, n - k]).unwrap() {
            let part = Partition2::from_indices(&xs, &p[0], &p[1]);
            prop_assert_eq!(partition_sign(&ctx, &xs, &part).unwrap(), int(part.parity()));
        }
    }

    #[test]
    fn izergin_forms_agree(seed in 0u64..1000, n in 0usize..=3) {
        let ctx = QContext::new(ratio(3, 2)).unwrap();
        let mut s = Sampler::new(seed, 40, ctx.q());
        let (x, y) = (s.fresh_vec(n), s.fresh_vec(n));
        for b in Branch::BOTH {
            prop_assert_eq!(izergin(&x, &y, b.variant(), &ctx).unwrap(), izergin_direct(&x, &y, b.variant(), &ctx).unwrap());
        }
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn determinants_ignore_order_within_sets(
        seed in 0u64..1000,
        a in 0usize..=2,
        b in 0usize..=2,
        perms in (permutation(2), permutation(2), permutation(2), permutation(2)),
        sq2 in any::<bool>(),
    ) {
        let ctx = QContext::new(int(2)).unwrap();
        let (which, k3) = if sq2 { (DetKind::Sq2, int(4)) } else { (DetKind::S1, int(1)) };
        let kap = TwistVector::new(int(1), ratio(5, 3), k3).unwrap();
        let mut s = Sampler::new(seed, 40, ctx.q());
        let sets = [s.fresh_vec(a), s.fresh_vec(b), s.fresh_vec(a), s.fresh_vec(b)];
        let cfg = BetheConfig::on_shell(sets, kap, ctx).unwrap();
        let base = scalar_det(&cfg, which).unwrap();
        let mut p = cfg.clone();
        let order = |v: &mut Vec<ExactScalar>, perm: &[usize]| {
            let src = v.clone();
            let idx: Vec<usize> = perm.iter().copied().filter(|&i| i < src.len()).collect();
            *v = idx.iter().map(|&i| src[i].clone()).collect();
        };
        order(&mut p.uc, &perms.0);
        order(&mut p.vc, &perms.1);
        order(&mut p.ub, &perms.2);
        order(&mut p.vb, &perms.3);
        prop_assert_eq!(scalar_det(&p, which).unwrap(), base.clone());
        prop_assert_eq!(scalar_sum(&p).unwrap(), base);
    }
}

#[test]
fn identity_determinant_is_one() {
    for n in 0..5 {
        assert_eq!(det_exact(&ExactMatrix::identity(n)).unwrap(), int(1));
    }
}
