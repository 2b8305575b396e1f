//! Form factors of diagonal monodromy entries from the scalar products of
//! a twisted and an ordinary on-shell vector, and the twisted form factor
//! of `T12`.

use num_traits::{One, Zero};

use crate::bethe::{BetheConfig, Side, TwistVector};
use crate::error::{Error, Result};
use crate::exact::{det_exact, ExactScalar};
use crate::kernel::{kfun_prod, pprod, Kernel};
use crate::scalarprod::{
    det_prefactor, f12_det, n_entry_kappa2_deriv, n_matrix, scalar_det, scalar_sum, DetKind, NRow,
};
use crate::unipoly::Poly;

/// Which form factor to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FfKind {
    /// `T22` at twist `(1, k2, 1)`, `k2 != 1`.
    Ff22Twisted,
    /// `T33` at twist `(1, 1, q^2)`.
    Ff33Q2,
    /// `T12` at `kappa3/kappa1 = q`, `|uC| = |uB| + 1`.
    Ff12Q,
}

/// How the scalar product inside a twisted form factor is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarRoute {
    Det,
    Sum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormFactorRequest {
    pub which: FfKind,
    pub z: ExactScalar,
    /// Must carry `r1(z)` and `r3(z)`.
    pub cfg: BetheConfig<ExactScalar>,
}

fn require_twist(
    kappa: &TwistVector<ExactScalar>,
    want: [&ExactScalar; 3],
    what: &str,
) -> Result<()> {
    if [&kappa.k1, &kappa.k2, &kappa.k3] != want {
        return Err(Error::Contract(format!(
            "{what} needs twist ({}, {}, {}), got ({}, {}, {})",
            want[0], want[1], want[2], kappa.k1, kappa.k2, kappa.k3
        )));
    }
    Ok(())
}

/// `tau_kappa(z|C) - tau(z|B)`.
fn tau_difference(cfg: &BetheConfig<ExactScalar>, z: &ExactScalar) -> Result<ExactScalar> {
    Ok(cfg.tau(z, Side::C, true)? - cfg.tau(z, Side::B, false)?)
}

/// Twisted form factor: `(tau_kappa - tau)/(kappa_i - 1)` times the scalar
/// product, or the `T12` determinant.
pub fn twisted_ff(req: &FormFactorRequest, route: ScalarRoute) -> Result<ExactScalar> {
    let cfg = &req.cfg;
    let one = ExactScalar::one();
    let (kappa_i, which) = match req.which {
        FfKind::Ff22Twisted => {
            require_twist(
                &cfg.kappa,
                [&one, &cfg.kappa.k2, &one],
                "twisted T22 form factor",
            )?;
            (cfg.kappa.k2.clone(), DetKind::S1)
        }
        FfKind::Ff33Q2 => {
            let q2 = cfg.ctx.qpow(2);
            require_twist(&cfg.kappa, [&one, &one, &q2], "twisted T33 form factor")?;
            (q2, DetKind::Sq2)
        }
        FfKind::Ff12Q => {
            if route == ScalarRoute::Sum {
                return Err(Error::Input(
                    "the T12 form factor has only the determinant route".into(),
                ));
            }
            return f12_det(cfg, &req.z);
        }
    };
    let denom = kappa_i - &one;
    if denom.is_zero() {
        return Err(Error::Input(
            "twist parameter of the form factor must differ from 1".into(),
        ));
    }
    let s = match route {
        ScalarRoute::Det => scalar_det(cfg, which)?,
        ScalarRoute::Sum => {
            cfg.require_on_shell()?;
            scalar_sum(cfg)?
        }
    };
    Ok(tau_difference(cfg, &req.z)? / denom * &s)
}

/// Same sets and `B` data, with the `C` side re-solved at twist `(1, k2, 1)`.
fn regenerate(
    cfg: &BetheConfig<ExactScalar>,
    z: &ExactScalar,
    k2: &ExactScalar,
) -> Result<BetheConfig<ExactScalar>> {
    let kap = TwistVector::new(ExactScalar::one(), k2.clone(), ExactScalar::one())?;
    let sets = [
        cfg.uc.clone(),
        cfg.vc.clone(),
        cfg.ub.clone(),
        cfg.vb.clone(),
    ];
    let fresh = BetheConfig::on_shell(sets, kap, cfg.ctx.clone())?;
    let mut out = fresh.with_spectral(z.clone(), cfg.r1.value(z)?, cfg.r3.value(z)?)?;
    // B tables are taken from the caller, so off-shell B data is caught below.
    for (src, dst, pts) in [
        (&cfg.r1, &mut out.r1, &cfg.ub),
        (&cfg.r3, &mut out.r3, &cfg.vb),
    ] {
        for p in pts.iter() {
            if dst.value(p)? != src.value(p)? {
                return Err(Error::Contract(format!("B side is not on-shell at {p}")));
            }
        }
    }
    out.require_on_shell()?;
    Ok(out)
}

fn check_ff22_input(cfg: &BetheConfig<ExactScalar>) -> Result<()> {
    if cfg.kappa.k1 != ExactScalar::one() || cfg.kappa.k3 != ExactScalar::one() {
        return Err(Error::Contract(
            "the T22 form factor needs kappa1 = kappa3 = 1".into(),
        ));
    }
    Ok(())
}

/// `(tau_kappa - tau) S1` as a polynomial in `kappa2`, recovered exactly
/// from `a + b + 3` samples.
pub fn ff22_polynomial(z: &ExactScalar, cfg: &BetheConfig<ExactScalar>) -> Result<Poly> {
    check_ff22_input(cfg)?;
    let (a, b) = cfg.sizes();
    let points = (1..=(a + b + 3) as i64)
        .map(|k| {
            let k2 = ExactScalar::from_integer(k.into());
            let c = regenerate(cfg, z, &k2)?;
            Ok((k2, tau_difference(&c, z)? * &scalar_det(&c, DetKind::S1)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Poly::interpolate(&points)?;
    if p.degree().is_some_and(|d| d > a + b + 1) {
        return Err(Error::Contract(format!(
            "kappa2 dependence of degree above {}",
            a + b + 1
        )));
    }
    Ok(p)
}

/// Form factor of `T22`: the `kappa2` derivative at one of
/// `(tau_kappa - tau) S1`, by exact interpolation.
pub fn ff22(z: &ExactScalar, cfg: &BetheConfig<ExactScalar>) -> Result<ExactScalar> {
    Ok(ff22_polynomial(z, cfg)?
        .derivative()
        .eval(&ExactScalar::one()))
}

/// The same derivative by the product rule, with `d det N/d kappa2` as the
/// sum of determinants with one row differentiated. Needs distinct `C` and
/// `B` parameters.
pub fn ff22_analytic(z: &ExactScalar, cfg: &BetheConfig<ExactScalar>) -> Result<ExactScalar> {
    check_ff22_input(cfg)?;
    let c = regenerate(cfg, z, &ExactScalar::one())?;
    if c.uc.iter().any(|u| c.ub.contains(u)) || c.vc.iter().any(|v| c.vb.contains(v)) {
        return Err(Error::Input(
            "analytic derivative needs distinct C and B parameters".into(),
        ));
    }
    let k = &c.ctx;
    let z1 = std::slice::from_ref(z);
    let dtau = kfun_prod(k, Kernel::F, z1, &c.uc)? * &kfun_prod(k, Kernel::F, &c.vc, z1)?;
    let s = scalar_det(&c, DetKind::S1)?;
    let (xs, m) = n_matrix(&c, DetKind::S1, None)?;
    let na = c.uc.len();
    let mut dsum = ExactScalar::zero();
    for i in 0..m.rows() {
        let row = if i < na { NRow::U(i) } else { NRow::V(i - na) };
        let drow = xs
            .iter()
            .map(|x| n_entry_kappa2_deriv(&c, row, x))
            .collect::<Result<Vec<_>>>()?;
        dsum += det_exact(&m.with_row(i, &drow))?;
    }
    let ds = pprod(k, &c.vb) * &pprod(k, &c.ub) * &det_prefactor(&c, &xs)? * &dsum;
    Ok(dtau * &s + &(tau_difference(&c, z)? * &ds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::kernel::QContext;

    fn ctx2() -> QContext<ExactScalar> {
        QContext::new(int(2)).unwrap()
    }

    #[test]
    fn vacuum_values() {
        let z = int(7);
        let cfg = BetheConfig::on_shell(
            [vec![], vec![], vec![], vec![]],
            TwistVector::untwisted(),
            ctx2(),
        )
        .unwrap()
        .with_spectral(z.clone(), int(2), int(3))
        .unwrap();
        assert_eq!(ff22(&z, &cfg).unwrap(), int(1));
        assert_eq!(ff22_analytic(&z, &cfg).unwrap(), int(1));
        let mut c33 = cfg.clone();
        c33.kappa = TwistVector::new(int(1), int(1), int(4)).unwrap();
        let req = FormFactorRequest {
            which: FfKind::Ff33Q2,
            z: z.clone(),
            cfg: c33,
        };
        assert_eq!(twisted_ff(&req, ScalarRoute::Det).unwrap(), int(3));
        let mut c22 = cfg;
        c22.kappa = TwistVector::new(int(1), ratio(5, 3), int(1)).unwrap();
        let req = FormFactorRequest {
            which: FfKind::Ff22Twisted,
            z,
            cfg: c22,
        };
        assert_eq!(twisted_ff(&req, ScalarRoute::Sum).unwrap(), int(1));
    }

    #[test]
    fn t12_single_entry() {
        // z g(u, z) (r1(z) - k2) with u = 3, z = 7, r1(z) = 2, k2 = 5/3.
        let kap = TwistVector::new(int(1), ratio(5, 3), int(2)).unwrap();
        let z = int(7);
        let cfg = BetheConfig::on_shell([vec![int(3)], vec![], vec![], vec![]], kap, ctx2())
            .unwrap()
            .with_spectral(z.clone(), int(2), int(0))
            .unwrap();
        let req = FormFactorRequest {
            which: FfKind::Ff12Q,
            z,
            cfg,
        };
        assert_eq!(twisted_ff(&req, ScalarRoute::Det).unwrap(), ratio(-7, 8));
    }
}
