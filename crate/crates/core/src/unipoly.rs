//! Univariate polynomials and rational functions over the rationals.
//!
//! Rational functions are kept reduced with a monic denominator, so
//! equality is structural and limits, residues and pole orders can be read
//! off directly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{pole, Error, Result};
use crate::exact::{scalar_format, ExactScalar, Field};

/// Dense polynomial, coefficients from the constant term up, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactScalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: ExactScalar) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![ExactScalar::zero(), ExactScalar::one()])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> ExactScalar {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactScalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * ExactScalar::from_integer((k as i64).into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &ExactScalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(ExactScalar::one() / l))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::default(), self.clone());
        }
        let inv_lead = ExactScalar::one() / d.lead();
        let mut quot = vec![ExactScalar::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &inv_lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// The unique polynomial of degree below `points.len()` through the
    /// given nodes (Newton divided differences).
    pub fn interpolate(points: &[(ExactScalar, ExactScalar)]) -> Result<Poly> {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i].0 == points[j].0 {
                    return Err(Error::Input("repeated interpolation node".into()));
                }
            }
        }
        let mut dd: Vec<ExactScalar> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        let mut acc = Poly::default();
        for i in (0..n).rev() {
            acc = &acc * &Poly::new(vec![-points[i].0.clone(), ExactScalar::one()])
                + Poly::constant(dd[i].clone());
        }
        Ok(acc)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = ExactScalar::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &o.scale(&-ExactScalar::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![ExactScalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", scalar_format(c))?,
                1 => write!(f, "({})*x", scalar_format(c))?,
                _ => write!(f, "({})*x^{k}", scalar_format(c))?,
            }
        }
        Ok(())
    }
}

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Builds and reduces `num/den`; errors on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Input(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::constant(ExactScalar::one()),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let l = d.lead();
        if !l.is_one() {
            let il = ExactScalar::one() / l;
            n = n.scale(&il);
            d = d.scale(&il);
        }
        RatFun { num: n, den: d }
    }

    pub fn constant(c: ExactScalar) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::constant(ExactScalar::one()),
        }
    }

    /// The identity function `x`.
    pub fn var() -> Self {
        RatFun {
            num: Poly::x(),
            den: Poly::constant(ExactScalar::one()),
        }
    }

    /// `a + b x`.
    pub fn linear(a: ExactScalar, b: ExactScalar) -> Self {
        RatFun {
            num: Poly::new(vec![a, b]),
            den: Poly::constant(ExactScalar::one()),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// The constant value, if the function is constant.
    pub fn to_constant(&self) -> Option<ExactScalar> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.lead() / self.den.lead())
    }

    pub fn derivative(&self) -> RatFun {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }
}

/// Value at `p`; errors when `p` is a pole.
pub fn ratfun_eval(f: &RatFun, p: &ExactScalar) -> Result<ExactScalar> {
    let d = f.den.eval(p);
    if d.is_zero() {
        return Err(pole("ratfun", scalar_format(p)));
    }
    Ok(f.num.eval(p) / d)
}

/// Limit at `p`. Since the function is reduced this is the value whenever
/// it is finite; a genuine pole is an error.
pub fn ratfun_limit(f: &RatFun, p: &ExactScalar) -> Result<ExactScalar> {
    ratfun_eval(f, p)
}

/// Residue at `p` of a function with at most a simple pole there.
pub fn ratfun_residue(f: &RatFun, p: &ExactScalar) -> Result<ExactScalar> {
    if !f.den.eval(p).is_zero() {
        return Ok(ExactScalar::zero());
    }
    let dprime = f.den.derivative();
    let dp = dprime.eval(p);
    if dp.is_zero() {
        return Err(Error::PoleOrder(scalar_format(p)));
    }
    Ok(f.num.eval(p) / dp)
}

pub fn ratfun_interpolate(points: &[(ExactScalar, ExactScalar)]) -> Result<RatFun> {
    let p = Poly::interpolate(points)?;
    Ok(RatFun {
        num: p,
        den: Poly::constant(ExactScalar::one()),
    })
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::constant(ExactScalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::constant(ExactScalar::one())
    }
}

impl Add<&RatFun> for RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if o.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return RatFun::reduce(&self.num + &o.num, self.den);
        }
        RatFun::reduce(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, o: RatFun) -> RatFun {
        self + &o
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.scale(&-ExactScalar::one()),
            den: self.den,
        }
    }
}

impl Sub<&RatFun> for RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o.clone())
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, o: RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul<&RatFun> for RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFun::zero();
        }
        RatFun::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, o: RatFun) -> RatFun {
        self * &o
    }
}

impl Div for RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`Field::try_div`] for a checked form.
    fn div(self, o: RatFun) -> RatFun {
        assert!(!o.num.is_zero(), "division by the zero rational function");
        RatFun::reduce(&self.num * &o.den, &self.den * &o.num)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.lead().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Field for RatFun {
    fn from_scalar(s: &ExactScalar) -> Self {
        RatFun::constant(s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn lin(a: i64, b: i64) -> RatFun {
        RatFun::linear(int(a), int(b))
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // (x^2 - 1)/(x - 1) = x + 1
        let num = &Poly::new(vec![int(-1), int(0), int(1)]) * &Poly::constant(int(1));
        let f = RatFun::new(num, Poly::new(vec![int(-1), int(1)])).unwrap();
        assert_eq!(f, lin(1, 1));
        assert_eq!(ratfun_limit(&f, &int(1)).unwrap(), int(2));
    }

    #[test]
    fn residue_of_simple_and_double_poles() {
        // 3/(x - 2)
        let f = RatFun::constant(int(3)) / lin(-2, 1);
        assert_eq!(ratfun_residue(&f, &int(2)).unwrap(), int(3));
        assert_eq!(ratfun_residue(&f, &int(5)).unwrap(), int(0));
        assert!(ratfun_limit(&f, &int(2)).is_err());
        let g = f.clone() * &f;
        assert!(matches!(
            ratfun_residue(&g, &int(2)),
            Err(Error::PoleOrder(_))
        ));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::new(vec![ratio(1, 2), int(-3), int(0), int(2)]);
        let pts: Vec<_> = (0..4).map(|k| (int(k), p.eval(&int(k)))).collect();
        assert_eq!(Poly::interpolate(&pts).unwrap(), p);
        assert!(Poly::interpolate(&[(int(1), int(1)), (int(1), int(2))]).is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dx 1/x = -1/x^2
        let f = RatFun::one() / RatFun::var();
        let d = f.derivative();
        assert_eq!(ratfun_eval(&d, &int(2)).unwrap(), ratio(-1, 4));
    }
}
