//! Finite-difference detection of eventually-polynomial integer
//! sequences, with exact coefficients in the binomial basis.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)` for small arguments.
pub fn binomial(n: u64, k: u64) -> Result<i128> {
    if k > n {
        return Ok(0);
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as i128).ok_or(Error::Overflow)?;
        acc /= (i + 1) as i128;
    }
    Ok(acc)
}

/// A detected eventually-polynomial description of an integer sequence.
///
/// Degree `-1` encodes the zero function. The coefficients are exact
/// integers `c_0..c_deg` in the basis `C(n + deg - i, deg - i)`, and the
/// fit reproduces every observed value at `n >= stable_from`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PolynomialFit {
    degree: i32,
    coeffs: Vec<i64>,
    stable_from: u64,
}

impl PolynomialFit {
    pub fn zero(stable_from: u64) -> Self {
        PolynomialFit { degree: -1, coeffs: Vec::new(), stable_from }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn stable_from(&self) -> u64 {
        self.stable_from
    }

    pub fn leading_coefficient(&self) -> i64 {
        self.coeffs.first().copied().unwrap_or(0)
    }

    pub fn evaluate(&self, n: u64) -> Result<i128> {
        let deg = self.degree;
        if deg < 0 {
            return Ok(0);
        }
        let deg = deg as u64;
        let mut acc: i128 = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = deg - i as u64;
            let b = binomial(n + k, k)?;
            acc = acc.checked_add((c as i128).checked_mul(b).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }
}

/// Outcome of polynomial detection: inconclusive is a value, not an
/// error.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FitOutcome {
    Fit(PolynomialFit),
    /// No vanishing-difference tail of the requested confirmation width
    /// was observed in the window.
    Unstabilized,
}

impl FitOutcome {
    pub fn fit(&self) -> Option<&PolynomialFit> {
        match self {
            FitOutcome::Fit(f) => Some(f),
            FitOutcome::Unstabilized => None,
        }
    }
}

/// Detects the least degree `r` and onset such that the `(r+1)`-st
/// finite differences of `values` vanish from the onset to the end of
/// the window, with at least `confirm_window` vanishing entries.
///
/// `values[k]` is the observed value at `n = offset + k`. Coefficients
/// are reconstructed exactly from the stabilized segment and the fit is
/// re-verified against every observed value past the onset.
pub fn detect_polynomial(values: &[u64], offset: u64, confirm_window: usize) -> Result<FitOutcome> {
    if values.len() < confirm_window + 4 {
        return Err(Error::InvalidParameter(
            "window too small for the requested confirmation width".into(),
        ));
    }

    // Eventually-zero tail: the zero function, degree -1.
    if let Some(k0) = zero_tail_onset(values) {
        if values.len() - k0 >= confirm_window {
            return Ok(FitOutcome::Fit(PolynomialFit::zero(offset + k0 as u64)));
        }
    }

    let signed: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    let mut table: Vec<Vec<i128>> = alloc::vec![signed];
    let max_degree = values.len().saturating_sub(confirm_window + 1);
    for r in 0..=max_degree {
        let diffs = difference(&table[r]);
        // Does the (r+1)-st difference row vanish on a long enough tail?
        if let Some(k0) = zero_tail_onset_i128(&diffs) {
            if diffs.len() - k0 >= confirm_window {
                let fit = reconstruct(values, offset, r as u64, k0)?;
                return Ok(FitOutcome::Fit(fit));
            }
        }
        table.push(diffs);
    }
    Ok(FitOutcome::Unstabilized)
}

fn difference(values: &[i128]) -> Vec<i128> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

fn zero_tail_onset(values: &[u64]) -> Option<usize> {
    zero_onset_impl(values.iter().map(|&v| v == 0))
}

fn zero_tail_onset_i128(values: &[i128]) -> Option<usize> {
    zero_onset_impl(values.iter().map(|&v| v == 0))
}

/// Index where the all-zero tail begins, if the last entry is zero.
fn zero_onset_impl(iter: impl Iterator<Item = bool>) -> Option<usize> {
    let flags: Vec<bool> = iter.collect();
    if flags.is_empty() || !*flags.last().unwrap() {
        return None;
    }
    let mut onset = flags.len();
    for (i, z) in flags.iter().enumerate().rev() {
        if *z {
            onset = i;
        } else {
            break;
        }
    }
    Some(onset)
}

/// Solves for integer coefficients in the binomial basis from `r + 1`
/// stabilized values, then checks the fit against the whole tail.
fn reconstruct(values: &[u64], offset: u64, degree: u64, k0: usize) -> Result<PolynomialFit> {
    let mut deg = degree;
    loop {
        let coeffs = solve_binomial_basis(values, offset, deg, k0)?;
        if deg > 0 && coeffs[0] == 0 {
            // Leading coefficient vanished: the true degree is lower.
            deg -= 1;
            continue;
        }
        let fit = PolynomialFit { degree: deg as i32, coeffs, stable_from: offset + k0 as u64 };
        for (k, &v) in values.iter().enumerate().skip(k0) {
            if fit.evaluate(offset + k as u64)? != v as i128 {
                return Err(Error::NonIntegralCoefficients);
            }
        }
        return Ok(fit);
    }
}

fn solve_binomial_basis(values: &[u64], offset: u64, degree: u64, k0: usize) -> Result<Vec<i64>> {
    let r = degree as usize;
    if values.len() < k0 + r + 1 {
        return Err(Error::InvalidParameter("not enough stabilized points".into()));
    }
    // System rows: sum_i c_i C(n + deg - i, deg - i) = f(n) for
    // n = offset + k0 .. offset + k0 + r.
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(r + 1);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(r + 1);
    for row in 0..=r {
        let n = offset + (k0 + row) as u64;
        let mut coeffs_row = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let k = degree - i as u64;
            coeffs_row.push(BigRational::from_integer(BigInt::from(binomial(n + k, k)?)));
        }
        mat.push(coeffs_row);
        rhs.push(BigRational::from_integer(BigInt::from(values[k0 + row] as i128)));
    }
    let solution = solve_dense(&mut mat, &mut rhs)?;
    let mut out = Vec::with_capacity(r + 1);
    for s in solution {
        if !s.denom().is_one() {
            return Err(Error::NonIntegralCoefficients);
        }
        let v: BigInt = s.to_integer();
        let as_i64 = i64::try_from(&v).map_err(|_| Error::Overflow)?;
        out.push(as_i64);
    }
    Ok(out)
}

/// Exact Gaussian elimination for a small square system.
fn solve_dense(mat: &mut [Vec<BigRational>], rhs: &mut [BigRational]) -> Result<Vec<BigRational>> {
    let n = mat.len();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !mat[i][c].is_zero()).ok_or(Error::NonIntegralCoefficients)?;
        mat.swap(c, pivot);
        rhs.swap(c, pivot);
        let inv = mat[c][c].clone();
        for v in mat[c].iter_mut() {
            *v /= &inv;
        }
        rhs[c] /= &inv;
        for i in 0..n {
            if i != c && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..n {
                    let delta = &f * &mat[c][j];
                    mat[i][j] -= delta;
                }
                let delta = &f * &rhs[c];
                rhs[i] -= delta;
            }
        }
    }
    Ok(rhs.to_vec())
}

/// Hilbert coefficients `[e_0, .., e_d]` from a degree-`d` fit: the
/// change of basis to the signed expansion `(-1)^i e_i C(n+d-i, d-i)`
/// is a sign flip coefficient by coefficient.
pub fn hilbert_coefficients(fit: &PolynomialFit, d: usize) -> Result<Vec<i64>> {
    if fit.degree() != d as i32 {
        return Err(Error::DegreeMismatch { expected: d as i32, found: fit.degree() });
    }
    Ok(fit
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c } else { -c })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_sequence() {
        // 4 * C(n+2, 2): 4, 12, 24, 40, 60, 84, ...
        let values: Vec<u64> = (0..10u64).map(|n| 4 * (n + 2) * (n + 1) / 2).collect();
        let fit = detect_polynomial(&values, 0, 4).unwrap();
        let fit = fit.fit().expect("stabilizes");
        assert_eq!(fit.degree(), 2);
        assert_eq!(fit.coeffs(), &[4, 0, 0]);
        assert_eq!(fit.stable_from(), 0);
    }

    #[test]
    fn constant_and_zero_sequences() {
        let ones = [1u64; 8];
        let fit = detect_polynomial(&ones, 0, 4).unwrap();
        let fit = fit.fit().unwrap();
        assert_eq!(fit.degree(), 0);
        assert_eq!(fit.coeffs(), &[1]);

        let zeros = [0u64; 8];
        let fit = detect_polynomial(&zeros, 0, 4).unwrap();
        assert_eq!(fit.fit().unwrap().degree(), -1);
    }

    #[test]
    fn eventual_polynomial_with_noisy_head() {
        // Junk values before the polynomial tail n + 3.
        let mut values = alloc::vec![17u64, 1];
        values.extend((2..14u64).map(|n| n + 3));
        let fit = detect_polynomial(&values, 0, 4).unwrap();
        let fit = fit.fit().unwrap();
        assert_eq!(fit.degree(), 1);
        assert_eq!(fit.stable_from(), 2);
        assert_eq!(fit.evaluate(5).unwrap(), 8);
    }

    #[test]
    fn unstabilized_is_reported_not_errored() {
        // 2^n has no vanishing finite differences.
        let values: Vec<u64> = (0..10u64).map(|n| 1 << n).collect();
        assert_eq!(detect_polynomial(&values, 0, 4).unwrap(), FitOutcome::Unstabilized);
    }

    #[test]
    fn coefficients_sign_convention() {
        // C(2n+3, 2) = 4 C(n+2, 2) - C(n+1, 1): coefficients [4, -1, 0],
        // Hilbert coefficients [4, 1, 0].
        let values: Vec<u64> = (0..10u64).map(|n| (2 * n + 3) * (2 * n + 2) / 2).collect();
        let fit = detect_polynomial(&values, 0, 4).unwrap();
        let fit = fit.fit().unwrap();
        assert_eq!(fit.degree(), 2);
        assert_eq!(fit.coeffs(), &[4, -1, 0]);
        assert_eq!(hilbert_coefficients(fit, 2).unwrap(), alloc::vec![4, 1, 0]);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let values = [1u64; 8];
        let fit = detect_polynomial(&values, 0, 4).unwrap();
        assert!(matches!(
            hilbert_coefficients(fit.fit().unwrap(), 2),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn lagrange_oracle_agrees_on_stabilized_tail() {
        // Independent reconstruction through Lagrange interpolation over
        // the rationals on the stabilized tail.
        let values: Vec<u64> = (0..12u64).map(|n| 3 * (n + 2) * (n + 1) / 2 + 5 * (n + 1) + 7).collect();
        let fit = detect_polynomial(&values, 0, 4).unwrap();
        let fit = fit.fit().unwrap();
        let pts: Vec<(i128, i128)> = (0..3).map(|k| (k as i128, values[k] as i128)).collect();
        for n in 0..12i128 {
            let mut acc = BigRational::zero();
            for (i, &(xi, yi)) in pts.iter().enumerate() {
                let mut term = BigRational::from_integer(BigInt::from(yi));
                for (j, &(xj, _)) in pts.iter().enumerate() {
                    if i != j {
                        term *= BigRational::new(BigInt::from(n - xj), BigInt::from(xi - xj));
                    }
                }
                acc += term;
            }
            assert_eq!(acc, BigRational::from_integer(BigInt::from(fit.evaluate(n as u64).unwrap())));
        }
    }
}
