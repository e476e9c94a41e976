//! q-integers, q-factorials, Gaussian binomial coefficients (full and
//! modular), classical big-integer binomials, and a subset-enumeration
//! oracle for cross-checking.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyring::{IntPoly, Modulus};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("subset oracle limited to n <= 16, got n = {0}")]
    OracleTooLarge(u64),
}

/// `[n]_q = 1 + q + ... + q^{n-1}`; `[0]_q = 0`.
pub fn q_integer(n: u64) -> IntPoly {
    IntPoly::from_coeffs(std::iter::repeat_n(1i64, n as usize))
}

/// `[n]!_q = [n]_q [n-1]_q ... [1]_q`; `[0]!_q = 1`.
pub fn q_factorial(n: u64) -> IntPoly {
    let mut acc = IntPoly::one();
    for i in 1..=n {
        acc = &acc * &q_integer(i);
    }
    acc
}

/// Classical binomial coefficient, exact; 0 for k < 0 or k > n.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// Pascal recurrence `binom(r,j)_q = binom(r-1,j-1)_q + q^j binom(r-1,j)_q`
/// run over a single rolling row, with every updated entry passed through
/// `reduce`. Symmetry lets us roll the shorter side of the row.
fn pascal_row(n: u64, k: u64, reduce: &mut dyn FnMut(IntPoly) -> IntPoly) -> IntPoly {
    let kk = k.min(n - k) as usize;
    let mut row = vec![IntPoly::zero(); kk + 1];
    row[0] = IntPoly::one();
    for r in 1..=n {
        let top = kk.min(r as usize);
        for j in (1..=top).rev() {
            let shifted = row[j].shift_up(j);
            row[j] = reduce(&row[j - 1] + &shifted);
        }
    }
    row.pop().expect("row is nonempty")
}

/// Gaussian binomial `binom(n,k)_q`; the zero polynomial for out-of-range k.
pub fn gaussian_binomial(n: u64, k: i64) -> IntPoly {
    if k < 0 || (k as u64) > n {
        return IntPoly::zero();
    }
    pascal_row(n, k as u64, &mut |p| p)
}

/// `poly_rem(gaussian_binomial(n,k), M)` computed with every intermediate of
/// the Pascal recurrence reduced by `M`, so degrees stay below `degree(M)`.
pub fn gaussian_binomial_mod(n: u64, k: i64, m: &Modulus) -> IntPoly {
    if k < 0 || (k as u64) > n {
        return IntPoly::zero();
    }
    pascal_row(n, k as u64, &mut |p| p.rem(m))
}

/// Reduces `f` in place modulo the sparse monic divisor `(q^p - 1)^e`.
fn reduce_sparse_qp(coeffs: &mut Vec<BigInt>, p: usize, e: u32) {
    let d = p * e as usize;
    if coeffs.len() <= d {
        return;
    }
    // (q^p - 1)^e = sum_i C(e,i) (-1)^{e-i} q^{ip}; monic leading term q^{ep}.
    let lower: Vec<(usize, BigInt)> = (0..e)
        .map(|i| {
            let sign = if (e - i).is_multiple_of(2) { 1 } else { -1 };
            (i as usize * p, binomial_int(e as u64, i as i64) * sign)
        })
        .collect();
    for top in (d..coeffs.len()).rev() {
        if coeffs[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[top], BigInt::zero());
        for (exp, co) in &lower {
            coeffs[top - d + exp] -= &c * co;
        }
    }
    coeffs.truncate(d);
    while matches!(coeffs.last(), Some(c) if c.is_zero()) {
        coeffs.pop();
    }
}

/// Fast path for moduli of the form `[p]_q^e`: the Pascal recurrence is
/// reduced as it goes by the 4-term-sparse `(q^p - 1)^e` (a multiple of
/// `[p]_q^e`), and the final row entry is reduced by `[p]_q^e` itself.
/// Agrees with `gaussian_binomial_mod(n, k, [p]_q^e)` by the remainder
/// homomorphism.
pub fn gaussian_binomial_mod_cyclotomic(n: u64, k: i64, p: u64, e: u32) -> IntPoly {
    if k < 0 || (k as u64) > n {
        return IntPoly::zero();
    }
    let pe = p as usize;
    let partial = pascal_row(n, k as u64, &mut |f| {
        let mut coeffs: Vec<BigInt> = f.coeffs().to_vec();
        reduce_sparse_qp(&mut coeffs, pe, e);
        IntPoly::from_coeffs(coeffs)
    });
    let m = crate::congruences::modulus_poly(p, e);
    partial.rem(&m)
}

/// Subset-sum oracle: sums `q^{(sum S) - k(k-1)/2}` over all k-element
/// subsets S of {0,...,n-1}. Independent of the Pascal path.
pub fn gaussian_subset_oracle(n: u64, k: u64) -> Result<IntPoly, CombinatoricsError> {
    if n > 16 {
        return Err(CombinatoricsError::OracleTooLarge(n));
    }
    if k > n {
        return Ok(IntPoly::zero());
    }
    let base = (k * (k.saturating_sub(1))) / 2;
    let mut counts = vec![0u64; (k * (n - k)) as usize + 1];
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as u64 != k {
            continue;
        }
        let total: u64 = (0..n).filter(|i| mask >> i & 1 == 1).sum();
        counts[(total - base) as usize] += 1;
    }
    Ok(IntPoly::from_coeffs(counts.into_iter().map(BigInt::from)))
}
