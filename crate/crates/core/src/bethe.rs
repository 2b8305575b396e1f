//! Data of the generalized model: Bethe parameter sets, the twist, and the
//! values of the ratios `r1`, `r3` at the points where formulas read them.

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::identities::Identity;
use crate::kernel::{kfun_prod, Kernel, KernelFamily, QContext};
use crate::partitions::pick;

/// Diagonal twist `(k1, k2, k3)`, all nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistVector<F> {
    pub k1: F,
    pub k2: F,
    pub k3: F,
}

impl<F: Field> TwistVector<F> {
    pub fn new(k1: F, k2: F, k3: F) -> Result<Self> {
        if k1.is_zero() || k2.is_zero() || k3.is_zero() {
            return Err(Error::Input("twist parameters must be nonzero".into()));
        }
        Ok(TwistVector { k1, k2, k3 })
    }

    pub fn untwisted() -> Self {
        TwistVector {
            k1: F::one(),
            k2: F::one(),
            k3: F::one(),
        }
    }

    /// `k2/k1`.
    pub fn r21(&self) -> F {
        self.k2.clone() / self.k1.clone()
    }

    /// `k2/k3`.
    pub fn r23(&self) -> F {
        self.k2.clone() / self.k3.clone()
    }

    /// `k3/k1`.
    pub fn r31(&self) -> F {
        self.k3.clone() / self.k1.clone()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> TwistVector<G> {
        TwistVector {
            k1: f(&self.k1),
            k2: f(&self.k2),
            k3: f(&self.k3),
        }
    }
}

/// A value of `r1` or `r3` at one point, with an optional derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct REntry<F> {
    pub point: F,
    pub value: F,
    pub deriv: Option<F>,
}

/// Point-indexed values of one ratio function. Lookups compare points
/// exactly, so the table works for numbers and rational functions alike.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RTable<F> {
    entries: Vec<REntry<F>>,
}

impl<F: Field> RTable<F> {
    pub fn new() -> Self {
        RTable {
            entries: Vec::new(),
        }
    }

    /// Adds a value; a second value at the same point must agree.
    pub fn insert(&mut self, point: F, value: F) -> Result<()> {
        match self.entries.iter().find(|e| e.point == point) {
            Some(e) if e.value != value => Err(Error::Input(format!(
                "conflicting r-values at {point}: {} and {value}",
                e.value
            ))),
            Some(_) => Ok(()),
            None => {
                self.entries.push(REntry {
                    point,
                    value,
                    deriv: None,
                });
                Ok(())
            }
        }
    }

    /// Attaches a derivative at an existing point.
    pub fn set_deriv(&mut self, point: &F, deriv: F) -> Result<()> {
        let e = self
            .entries
            .iter_mut()
            .find(|e| &e.point == point)
            .ok_or_else(|| Error::Input(format!("no r-value at {point}")))?;
        e.deriv = Some(deriv);
        Ok(())
    }

    pub fn get(&self, point: &F) -> Option<&REntry<F>> {
        self.entries.iter().find(|e| &e.point == point)
    }

    pub fn value(&self, point: &F) -> Result<F> {
        self.get(point)
            .map(|e| e.value.clone())
            .ok_or_else(|| Error::Input(format!("missing r-value at {point}")))
    }

    pub fn deriv(&self, point: &F) -> Result<F> {
        self.get(point)
            .and_then(|e| e.deriv.clone())
            .ok_or_else(|| Error::Input(format!("missing r' at coinciding point {point}")))
    }

    pub fn entries(&self) -> &[REntry<F>] {
        &self.entries
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> RTable<G> {
        RTable {
            entries: self
                .entries
                .iter()
                .map(|e| REntry {
                    point: f(&e.point),
                    value: f(&e.value),
                    deriv: e.deriv.as_ref().map(&f),
                })
                .collect(),
        }
    }
}

/// The two Bethe vectors of a scalar product: the twisted `C` side and
/// the ordinary `B` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    C,
    B,
}

/// Parameter sets, twist and ratio tables, with the kernel family used to
/// evaluate every formula on them.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheConfig<F, K = QContext<F>> {
    pub uc: Vec<F>,
    pub vc: Vec<F>,
    pub ub: Vec<F>,
    pub vb: Vec<F>,
    pub kappa: TwistVector<F>,
    pub r1: RTable<F>,
    pub r3: RTable<F>,
    pub ctx: K,
}

/// `r1` on `u` and `r3` on `v` solving the twisted Bethe equations
/// `r1(u_j) = (k2/k1) f(u_j, u\u_j)/f(u\u_j, u_j) f(v, u_j)` and
/// `r3(v_j) = (k2/k3) f(v\v_j, v_j)/f(v_j, v\v_j) f(v_j, u)`.
pub fn onshell_r_values<F: Field, K: KernelFamily<F>>(
    k: &K,
    u: &[F],
    v: &[F],
    kappa: &TwistVector<F>,
) -> Result<(Vec<F>, Vec<F>)> {
    let others = |set: &[F], j: usize| -> Vec<F> {
        set.iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, x)| x.clone())
            .collect()
    };
    let quot = |a: F, b: F| {
        a.try_div(&b)
            .ok_or_else(|| Error::Input("degenerate Bethe parameters".into()))
    };
    let r1 = (0..u.len())
        .map(|j| {
            let (x, rest) = (std::slice::from_ref(&u[j]), others(u, j));
            let num = kfun_prod(k, Kernel::F, x, &rest)? * &kfun_prod(k, Kernel::F, v, x)?;
            Ok(kappa.r21() * &quot(num, kfun_prod(k, Kernel::F, &rest, x)?)?)
        })
        .collect::<Result<Vec<F>>>()?;
    let r3 = (0..v.len())
        .map(|j| {
            let (x, rest) = (std::slice::from_ref(&v[j]), others(v, j));
            let num = kfun_prod(k, Kernel::F, &rest, x)? * &kfun_prod(k, Kernel::F, x, u)?;
            Ok(kappa.r23() * &quot(num, kfun_prod(k, Kernel::F, x, &rest)?)?)
        })
        .collect::<Result<Vec<F>>>()?;
    Ok((r1, r3))
}

impl<F: Field, K: KernelFamily<F>> BetheConfig<F, K> {
    /// Configuration with explicit tables (possibly off-shell).
    pub fn new(
        sets: [Vec<F>; 4],
        kappa: TwistVector<F>,
        r1: RTable<F>,
        r3: RTable<F>,
        ctx: K,
    ) -> Self {
        let [uc, vc, ub, vb] = sets;
        BetheConfig {
            uc,
            vc,
            ub,
            vb,
            kappa,
            r1,
            r3,
            ctx,
        }
    }

    /// The `C` side solves the twisted equations with `kappa`, the `B` side
    /// the untwisted ones.
    pub fn on_shell(sets: [Vec<F>; 4], kappa: TwistVector<F>, ctx: K) -> Result<Self> {
        let [uc, vc, ub, vb] = sets;
        let mut r1 = RTable::new();
        let mut r3 = RTable::new();
        let (c1, c3) = onshell_r_values(&ctx, &uc, &vc, &kappa)?;
        let (b1, b3) = onshell_r_values(&ctx, &ub, &vb, &TwistVector::untwisted())?;
        for (p, r) in uc.iter().zip(c1).chain(ub.iter().zip(b1)) {
            r1.insert(p.clone(), r)?;
        }
        for (p, r) in vc.iter().zip(c3).chain(vb.iter().zip(b3)) {
            r3.insert(p.clone(), r)?;
        }
        Ok(BetheConfig {
            uc,
            vc,
            ub,
            vb,
            kappa,
            r1,
            r3,
            ctx,
        })
    }

    /// Adds free values `r1(z)`, `r3(z)` at a spectral point.
    pub fn with_spectral(mut self, z: F, r1z: F, r3z: F) -> Result<Self> {
        self.r1.insert(z.clone(), r1z)?;
        self.r3.insert(z, r3z)?;
        Ok(self)
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.ub.len(), self.vb.len())
    }

    pub fn sets(&self, side: Side) -> (&[F], &[F]) {
        match side {
            Side::C => (&self.uc, &self.vc),
            Side::B => (&self.ub, &self.vb),
        }
    }

    pub fn twist(&self, side: Side) -> TwistVector<F> {
        match side {
            Side::C => self.kappa.clone(),
            Side::B => TwistVector::untwisted(),
        }
    }

    /// Transfer-matrix eigenvalue on one side,
    /// `k1 r1(w) f(u, w) + k2 f(w, u) f(v, w) + k3 r3(w) f(w, v)`; the
    /// untwisted eigenvalue uses the unit twist.
    pub fn tau(&self, w: &F, side: Side, twisted: bool) -> Result<F> {
        let (u, v) = self.sets(side);
        let kap = if twisted {
            self.kappa.clone()
        } else {
            TwistVector::untwisted()
        };
        let w1 = std::slice::from_ref(w);
        let k = &self.ctx;
        Ok(
            kap.k1 * &self.r1.value(w)? * &kfun_prod(k, Kernel::F, u, w1)?
                + kap.k2 * &kfun_prod(k, Kernel::F, w1, u)? * &kfun_prod(k, Kernel::F, v, w1)?
                + kap.k3 * &self.r3.value(w)? * &kfun_prod(k, Kernel::F, w1, v)?,
        )
    }

    /// Product form of the Bethe equations for the partitions
    /// `u => {u[u_first], rest}` and `v => {v[v_first], rest}`.
    pub fn be_partition_check(
        &self,
        side: Side,
        u_first: &[usize],
        v_first: &[usize],
    ) -> Result<[Identity<F>; 2]> {
        let (u, v) = self.sets(side);
        let kap = self.twist(side);
        let k = &self.ctx;
        let comp = |n: usize, idx: &[usize]| -> Vec<usize> {
            (0..n).filter(|i| !idx.contains(i)).collect()
        };
        let (u1, u2) = (pick(u, u_first), pick(u, &comp(u.len(), u_first)));
        let (v1, v2) = (pick(v, v_first), pick(v, &comp(v.len(), v_first)));
        let prod_r = |t: &RTable<F>, pts: &[F]| -> Result<F> {
            pts.iter()
                .try_fold(F::one(), |acc, p| Ok(acc * &t.value(p)?))
        };
        let quot = |a: F, b: F| {
            a.try_div(&b)
                .ok_or_else(|| Error::Input("degenerate Bethe parameters".into()))
        };
        let rhs1 = kap.r21().powi(u1.len() as i64).expect("nonzero twist")
            * &quot(
                kfun_prod(k, Kernel::F, &u1, &u2)?,
                kfun_prod(k, Kernel::F, &u2, &u1)?,
            )?
            * &kfun_prod(k, Kernel::F, v, &u1)?;
        let rhs3 = kap.r23().powi(v1.len() as i64).expect("nonzero twist")
            * &quot(
                kfun_prod(k, Kernel::F, &v2, &v1)?,
                kfun_prod(k, Kernel::F, &v1, &v2)?,
            )?
            * &kfun_prod(k, Kernel::F, &v1, u)?;
        Ok([
            Identity::new(prod_r(&self.r1, &u1)?, rhs1),
            Identity::new(prod_r(&self.r3, &v1)?, rhs3),
        ])
    }

    /// True when every single-point Bethe equation holds on `side`.
    pub fn is_on_shell(&self, side: Side) -> Result<bool> {
        let (u, v) = self.sets(side);
        for j in 0..u.len() {
            if !self.be_partition_check(side, &[j], &[])?[0].holds() {
                return Ok(false);
            }
        }
        for j in 0..v.len() {
            if !self.be_partition_check(side, &[], &[j])?[1].holds() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fails with a contract violation unless both sides are on-shell.
    pub fn require_on_shell(&self) -> Result<()> {
        for side in [Side::C, Side::B] {
            if !self.is_on_shell(side)? {
                return Err(Error::Contract(format!(
                    "{side:?} side does not satisfy its Bethe equations"
                )));
            }
        }
        Ok(())
    }
}
