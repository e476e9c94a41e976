//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Every q-object in this crate ([n]_q, Gaussian binomials, moduli [p]_q^e)
//! is an [`IntPoly`]. Coefficients are stored ascending: index `i` holds the
//! coefficient of `q^i`. The zero polynomial is the empty coefficient vector
//! and its degree is [`Degree::NegInf`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Coefficient-count threshold below which multiplication stays schoolbook.
const KARATSUBA_THRESHOLD: usize = 32;

/// Degree of a polynomial; the zero polynomial gets a dedicated marker so
/// that `-1` never leaks into exponent arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    /// Degree of the zero polynomial.
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("modulus must be monic of degree >= 1")]
    NonMonicModulus,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division, nonzero remainder of degree {}", .remainder.degree())]
    InexactDivision { remainder: IntPoly },
}

/// Dense polynomial with `BigInt` coefficients, always kept canonical: the
/// last stored coefficient is nonzero (or the vector is empty).
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// `c * q^exp`.
    pub fn monomial<T: Into<BigInt>>(c: T, exp: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, trimming to canonical form.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = IntPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `q^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.coeffs.last(), Some(c) if c.is_one())
    }

    /// Largest coefficient magnitude in bits; 0 for the zero polynomial.
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() || self.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^exp`.
    pub fn shift_up(&self, exp: usize) -> IntPoly {
        if self.is_zero() || exp == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); exp + self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[exp + i] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// `f(q) -> f(q^t)`: the coefficient of `q^i` moves to `q^{i*t}`.
    pub fn substitute_power(&self, t: usize) -> IntPoly {
        assert!(t >= 1, "substitute_power requires t >= 1");
        if t == 1 || self.is_zero() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        let mut coeffs = vec![BigInt::zero(); deg * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * t] = c.clone();
            }
        }
        IntPoly { coeffs }
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean remainder by a monic modulus; stays in integer coefficients.
    pub fn rem(&self, m: &Modulus) -> IntPoly {
        let dm = m.degree();
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mc = m.poly().coeffs();
        let mut r = self.coeffs.clone();
        for d in (dm..r.len()).rev() {
            if r[d].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut r[d], BigInt::zero());
            for i in 0..dm {
                r[d - dm + i] -= &c * &mc[i];
            }
        }
        r.truncate(dm);
        let mut out = IntPoly { coeffs: r };
        out.trim();
        out
    }

    /// Exact division: returns `h` with `self = g * h`, or the nonzero
    /// remainder that witnesses a violated divisibility claim.
    pub fn exact_div(&self, g: &IntPoly) -> Result<IntPoly, PolyError> {
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() - 1 < dg {
            return Err(PolyError::InexactDivision {
                remainder: self.clone(),
            });
        }
        let lead = &g.coeffs[dg];
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); r.len() - dg];
        for d in (dg..r.len()).rev() {
            if r[d].is_zero() {
                continue;
            }
            let (qc, rem) = num_integer::Integer::div_rem(&r[d], lead);
            if !rem.is_zero() {
                let mut witness = IntPoly { coeffs: r };
                witness.trim();
                return Err(PolyError::InexactDivision { remainder: witness });
            }
            r[d] = BigInt::zero();
            for i in 0..dg {
                r[d - dg + i] -= &qc * &g.coeffs[i];
            }
            quot[d - dg] = qc;
        }
        let mut witness = IntPoly { coeffs: r };
        witness.trim();
        if !witness.is_zero() {
            return Err(PolyError::InexactDivision { remainder: witness });
        }
        let mut q = IntPoly { coeffs: quot };
        q.trim();
        Ok(q)
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (i, c) in short.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn mul_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return mul_schoolbook(a, b);
    }
    // Karatsuba: split both operands at m.
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));
    let z0 = mul_slices(a0, b0);
    let z2 = if a1.is_empty() || b1.is_empty() {
        Vec::new()
    } else {
        mul_slices(a1, b1)
    };
    let asum = add_slices(a0, a1);
    let bsum = add_slices(b0, b1);
    let mut z1 = mul_slices(&asum, &bsum);
    for (i, c) in z0.iter().enumerate() {
        z1[i] -= c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] -= c;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] = c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if !c.is_zero() {
            out[m + i] += c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        if !c.is_zero() {
            out[2 * m + i] += c;
        }
    }
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut p = IntPoly {
            coeffs: add_slices(&self.coeffs, &rhs.coeffs),
        };
        p.trim();
        p
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if rhs.coeffs.len() > coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut p = IntPoly {
            coeffs: mul_slices(&self.coeffs, &rhs.coeffs),
        };
        p.trim();
        p
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Canonical ascending rendering: `"1 + q + 2*q^2 - q^3"`, `"0"` for zero.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}*q^{i}")?,
            }
        }
        Ok(())
    }
}

/// A monic polynomial of degree >= 1 usable as a Euclidean divisor over the
/// integers, e.g. `[p]_q^e`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Modulus {
    poly: IntPoly,
}

impl Modulus {
    pub fn new(poly: IntPoly) -> Result<Self, PolyError> {
        if !poly.is_monic() || poly.coeffs.len() < 2 {
            return Err(PolyError::NonMonicModulus);
        }
        Ok(Modulus { poly })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.coeffs.len() - 1
    }
}

/// q-Pochhammer `(q^a; q)_n = prod_{j=0}^{n-1} (1 - q^{a+j})`.
pub fn q_pochhammer(a: usize, n: usize) -> IntPoly {
    let mut acc = IntPoly::one();
    for j in 0..n {
        let factor = IntPoly::one() - IntPoly::monomial(1, a + j);
        acc = &acc * &factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(cs.iter().copied())
    }

    #[test]
    fn add_sub_scale() {
        let a = poly(&[1, 1]);
        let b = poly(&[1, -1]);
        assert_eq!(&a + &b, poly(&[2]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert!((&a - &a).coeffs().is_empty());
        assert_eq!(a.scale(&BigInt::from(3)), poly(&[3, 3]));
    }

    #[test]
    fn mul_basic() {
        let a = poly(&[1, 1]);
        let b = poly(&[1, 1, 1]);
        assert_eq!(&a * &b, poly(&[1, 2, 2, 1]));
        assert_eq!(&a * &IntPoly::zero(), IntPoly::zero());
        assert_eq!(&a * &IntPoly::one(), a);
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<BigInt> = (0..90).map(|i| BigInt::from(i * 7 - 200)).collect();
        let b: Vec<BigInt> = (0..77).map(|i| BigInt::from(1000 - i * 13)).collect();
        assert_eq!(mul_slices(&a, &b), mul_schoolbook(&a, &b));
    }

    #[test]
    fn rem_monic() {
        // [5]_q
        let m = Modulus::new(poly(&[1, 1, 1, 1, 1])).unwrap();
        // q^5 mod [5]_q = 1
        assert_eq!(IntPoly::monomial(1, 5).rem(&m), IntPoly::one());
        // degree(f) < degree(M) is a no-op
        let f = poly(&[3, 0, 2]);
        assert_eq!(f.rem(&m), f);
        // self-reduction of [5]_q^3
        let m3poly = &(m.poly() * m.poly()) * m.poly();
        let m3 = Modulus::new(m3poly.clone()).unwrap();
        assert_eq!(m3poly.rem(&m3), IntPoly::zero());
    }

    #[test]
    fn non_monic_modulus_rejected() {
        assert_eq!(
            Modulus::new(poly(&[1, 2])).unwrap_err(),
            PolyError::NonMonicModulus
        );
        assert_eq!(
            Modulus::new(poly(&[7])).unwrap_err(),
            PolyError::NonMonicModulus
        );
    }

    #[test]
    fn exact_div_cases() {
        // (q^5 - 1) / (q - 1) = [5]_q
        let num = IntPoly::monomial(1, 5) - IntPoly::one();
        let den = IntPoly::monomial(1, 1) - IntPoly::one();
        assert_eq!(num.exact_div(&den).unwrap(), poly(&[1, 1, 1, 1, 1]));
        let num2 = IntPoly::monomial(1, 2) - IntPoly::one();
        assert_eq!(num2.exact_div(&den).unwrap(), poly(&[1, 1]));
        // (q^2 + 1) / (q - 1) leaves remainder 2
        let num3 = IntPoly::monomial(1, 2) + IntPoly::one();
        match num3.exact_div(&den).unwrap_err() {
            PolyError::InexactDivision { remainder } => assert_eq!(remainder, poly(&[2])),
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn substitute_power_cases() {
        let f = poly(&[1, 1]);
        assert_eq!(
            f.substitute_power(25),
            IntPoly::one() + IntPoly::monomial(1, 25)
        );
        assert_eq!(f.substitute_power(1), f);
        assert_eq!(
            poly(&[0, 1, 1]).substitute_power(3),
            IntPoly::monomial(1, 3) + IntPoly::monomial(1, 6)
        );
    }

    #[test]
    fn pochhammer_cases() {
        assert_eq!(q_pochhammer(1, 1), poly(&[1, -1]));
        assert_eq!(q_pochhammer(1, 2), poly(&[1, -1, -1, 1]));
        assert_eq!(q_pochhammer(7, 0), IntPoly::one());
        // degree n*a + n(n-1)/2
        assert_eq!(q_pochhammer(3, 4).degree(), Degree::Finite(3 * 4 + 6));
    }

    #[test]
    fn eval_int_cases() {
        let p5 = poly(&[1, 1, 1, 1, 1]);
        assert_eq!(p5.eval_int(&BigInt::one()), BigInt::from(5));
        assert_eq!(IntPoly::zero().eval_int(&BigInt::from(42)), BigInt::zero());
    }

    #[test]
    fn display_rendering() {
        assert_eq!(
            poly(&[1, 1, 2, 1, 1]).to_string(),
            "1 + q + 2*q^2 + q^3 + q^4"
        );
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(poly(&[-1, 0, 3, -2]).to_string(), "-1 + 3*q^2 - 2*q^3");
        assert_eq!(poly(&[0, -1]).to_string(), "-q");
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(IntPoly::zero().degree(), Degree::NegInf);
    }
}
