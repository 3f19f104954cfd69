//! Exact colengths, Hilbert-Samuel sequences and coefficients, analytic
//! spread, and closure-gap analysis.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::filtration::{Filtration, FiltrationKind};
use crate::ideal::MonomialIdeal;
use crate::poly::{self, FitOutcome};

/// Window sizing for the "for all n >> 0" statements: start at
/// `max(12, 4d + confirm)`, double on an inconclusive fit, give up at
/// `max_window` and report the inconclusiveness rather than guessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowPolicy {
    pub confirm_window: usize,
    pub max_window: u64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy { confirm_window: 4, max_window: 64 }
    }
}

impl WindowPolicy {
    pub fn initial_window(&self, dim: usize) -> u64 {
        (12u64).max(4 * dim as u64 + self.confirm_window as u64)
    }

    /// Runs `compute(window) -> values`, retrying with doubled windows
    /// while the fit is inconclusive.
    fn detect<F>(&self, dim: usize, offset: u64, mut compute: F) -> Result<(Vec<u64>, FitOutcome)>
    where
        F: FnMut(u64) -> Result<Vec<u64>>,
    {
        let mut window = self.initial_window(dim).min(self.max_window);
        loop {
            let values = compute(window)?;
            let outcome = poly::detect_polynomial(&values, offset, self.confirm_window)?;
            if matches!(outcome, FitOutcome::Fit(_)) || window >= self.max_window {
                return Ok((values, outcome));
            }
            window = (window * 2).min(self.max_window);
        }
    }
}

/// Colength of an m-primary monomial ideal, i.e. the number of standard
/// monomials, by slicing on the first variable. The slice ideals change
/// only at the distinct first-coordinate values of the generators, so
/// runs between them contribute a multiple of one recursive count.
pub fn length_quotient(ideal: &MonomialIdeal) -> Result<u64> {
    if !ideal.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let gens: Vec<Vec<u64>> = ideal.gens().iter().map(|g| g.coords().to_vec()).collect();
    slice_count(&gens, ideal.ambient_dim())
}

fn slice_count(gens: &[Vec<u64>], dim: usize) -> Result<u64> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Ok(0);
    }
    if dim == 1 {
        // Artinian in one variable: standard monomials below the least
        // pure power.
        return gens.iter().map(|g| g[0]).min().ok_or(Error::NotMPrimary);
    }
    let bound = gens
        .iter()
        .filter(|g| g[1..].iter().all(|&e| e == 0))
        .map(|g| g[0])
        .min()
        .ok_or(Error::NotMPrimary)?;
    let mut firsts: Vec<u64> = gens.iter().map(|g| g[0]).filter(|&e| e < bound).collect();
    firsts.push(0);
    firsts.sort_unstable();
    firsts.dedup();

    let mut total: u64 = 0;
    for (idx, &lo) in firsts.iter().enumerate() {
        let hi = firsts.get(idx + 1).copied().unwrap_or(bound);
        let span = hi - lo;
        if span == 0 {
            continue;
        }
        let slice: Vec<Vec<u64>> = gens.iter().filter(|g| g[0] <= lo).map(|g| g[1..].to_vec()).collect();
        let slice = minimalize_raw(slice);
        let sub = slice_count(&slice, dim - 1)?;
        total = total
            .checked_add(span.checked_mul(sub).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    Ok(total)
}

fn minimalize_raw(mut gens: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Vec<u64>> = Vec::new();
    'outer: for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if i != j && h.iter().zip(g).all(|(a, b)| a <= b) {
                continue 'outer;
            }
        }
        out.push(g.clone());
    }
    out
}

/// `lambda(B / S)` for monomial ideals `S` inside `B` with finite
/// quotient.
///
/// m-primary pairs reduce to a colength difference. Otherwise the
/// monomials of `B \ S` are enumerated up to total degree
/// `maxdeg(gens B) + k`, where `m^k` lands in `S : B`: any monomial of
/// `B` of larger degree factors as a generator times a degree `> k`
/// cofactor, and `m^k B` is inside `S`. Finiteness requires `S : B`
/// m-primary and is checked, not assumed.
pub fn length_between(upper: &MonomialIdeal, lower: &MonomialIdeal) -> Result<u64> {
    if !lower.is_subideal_of(upper)? {
        return Err(Error::ContainmentViolation);
    }
    if lower == upper {
        return Ok(0);
    }
    if upper.is_m_primary() && lower.is_m_primary() {
        return Ok(length_quotient(lower)? - length_quotient(upper)?);
    }
    if upper.is_unit() && lower.is_m_primary() {
        return length_quotient(lower);
    }
    let annihilator = lower.colon(upper)?;
    if !annihilator.is_m_primary() {
        return Err(Error::InfiniteLength);
    }
    let dim = upper.ambient_dim();
    let mut k: u64 = 1;
    for i in 0..dim {
        let b = annihilator.pure_power_exponent(i).expect("m-primary");
        k = k.checked_add(b - 1).ok_or(Error::Overflow)?;
    }
    let max_degree = upper.max_gen_degree()?.checked_add(k).ok_or(Error::Overflow)?;

    let mut count: u64 = 0;
    let mut current = alloc::vec![0u64; dim];
    // Depth-first over monomials of total degree <= max_degree.
    fn walk(
        dim: usize,
        i: usize,
        left: u64,
        current: &mut Vec<u64>,
        upper: &MonomialIdeal,
        lower: &MonomialIdeal,
        count: &mut u64,
    ) -> Result<()> {
        if i == dim {
            let p = ExponentVector::new(current.clone());
            if upper.contains(&p)? && !lower.contains(&p)? {
                *count = count.checked_add(1).ok_or(Error::Overflow)?;
            }
            return Ok(());
        }
        for e in 0..=left {
            current[i] = e;
            walk(dim, i + 1, left - e, current, upper, lower, count)?;
        }
        current[i] = 0;
        Ok(())
    }
    walk(dim, 0, max_degree, &mut current, upper, lower, &mut count)?;
    Ok(count)
}

/// `lambda(A / F_{n+1})` for `n = 0..=window`.
pub fn hilbert_samuel_sequence(filtration: &mut Filtration, window: u64) -> Result<Vec<u64>> {
    if !filtration.base().is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    (0..=window).map(|n| filtration.term_colength(n + 1)).collect()
}

/// Length sequence, detected polynomial, and Hilbert coefficients of one
/// filtration of an m-primary base.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HilbertProfile {
    pub kind: FiltrationKind,
    /// `lambda(A/F_{n+1})` for `n = 0, 1, ..`.
    pub values: Vec<u64>,
    pub fit: FitOutcome,
    /// `[e_0, .., e_d]` when the fit has full degree `d`.
    pub hilbert_coeffs: Option<Vec<i64>>,
}

pub fn hilbert_profile(filtration: &mut Filtration, policy: &WindowPolicy) -> Result<HilbertProfile> {
    let dim = filtration.base().ambient_dim();
    if !filtration.base().is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let (values, fit) = {
        let (values, fit) =
            policy.detect(dim, 0, |window| hilbert_samuel_sequence(filtration, window))?;
        (values, fit)
    };
    let hilbert_coeffs = match &fit {
        FitOutcome::Fit(f) if f.degree() == dim as i32 => Some(poly::hilbert_coefficients(f, dim)?),
        _ => None,
    };
    Ok(HilbertProfile { kind: filtration.kind(), values, fit, hilbert_coeffs })
}

/// Analytic spread from the growth of `mu(I^n)`: one more than the
/// degree of the detected polynomial. Inconclusive windows return
/// `None` rather than a guess.
pub fn analytic_spread(ideal: &MonomialIdeal, policy: &WindowPolicy) -> Result<Option<u64>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let dim = ideal.ambient_dim();
    let mut helper = Filtration::new(FiltrationKind::Adic, ideal.clone())?;
    let (_, fit) = policy.detect(dim, 1, |window| {
        (1..=window + 1).map(|n| Ok(helper.adic_power(n)?.num_min_gens() as u64)).collect()
    })?;
    match fit {
        FitOutcome::Fit(f) => {
            // mu never hits zero, so the degree is at least 0.
            Ok(Some((f.degree() + 1) as u64))
        }
        FitOutcome::Unstabilized => Ok(None),
    }
}

/// Verdict on a closure-gap length function in ambient dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DichotomyVerdict {
    /// Every observed gap value is zero.
    AllZero,
    /// Eventually polynomial of the stated degree `>= d - 1`.
    EventuallyDegree(u32),
    /// Eventually nonzero yet of fitted degree below `d - 1`; the degree
    /// is `-1` for an eventually-zero tail behind a nonzero head.
    AnomalousBelowTop(i32),
}

/// Gap sequence `lambda(F_n / G_n)` between two filtrations of the same
/// base, with its fit and verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GapAnalysis {
    pub upper: FiltrationKind,
    pub lower: FiltrationKind,
    /// Gap values for `n = 1, 2, ..`.
    pub gap_values: Vec<u64>,
    pub fit: FitOutcome,
    /// `None` when the fit is inconclusive.
    pub verdict: Option<DichotomyVerdict>,
}

impl GapAnalysis {
    pub fn all_zero(&self) -> bool {
        self.gap_values.iter().all(|&v| v == 0)
    }
}

/// Computes the gap sequence for `n = 1..=window`.
///
/// For m-primary bases the gap is the colength difference; otherwise the
/// terms are materialized and counted monomial by monomial. A negative
/// difference would contradict the containment `G_n` inside `F_n` and is
/// reported as a violation.
pub fn gap_sequence(upper: &mut Filtration, lower: &mut Filtration, window: u64) -> Result<Vec<u64>> {
    // With an m-primary base every term is m-primary or the unit ideal,
    // so the gap is a colength difference either way.
    let m_primary = upper.base().is_m_primary() && lower.base().is_m_primary();
    let mut values = Vec::with_capacity(window as usize);
    for n in 1..=window {
        let v = if m_primary {
            let lo = lower.term_colength(n)?;
            let hi = upper.term_colength(n)?;
            lo.checked_sub(hi).ok_or(Error::ContainmentViolation)?
        } else {
            length_between(&upper.term(n)?, &lower.term(n)?)?
        };
        values.push(v);
    }
    Ok(values)
}

pub fn gap_function(
    upper: &mut Filtration,
    lower: &mut Filtration,
    policy: &WindowPolicy,
) -> Result<GapAnalysis> {
    let dim = upper.base().ambient_dim();
    let (gap_values, fit) = policy.detect(dim, 1, |window| gap_sequence(upper, lower, window))?;
    let verdict = classify_dichotomy(&gap_values, &fit, dim);
    Ok(GapAnalysis { upper: upper.kind(), lower: lower.kind(), gap_values, fit, verdict })
}

/// Applies the dichotomy classification to an observed gap sequence.
pub fn classify_dichotomy(gap_values: &[u64], fit: &FitOutcome, dim: usize) -> Option<DichotomyVerdict> {
    if gap_values.iter().all(|&v| v == 0) {
        return Some(DichotomyVerdict::AllZero);
    }
    let fit = fit.fit()?;
    let top = dim as i32 - 1;
    if fit.degree() >= top {
        Some(DichotomyVerdict::EventuallyDegree(fit.degree() as u32))
    } else {
        Some(DichotomyVerdict::AnomalousBelowTop(fit.degree()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExponentVector;

    fn ev(coords: &[u64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    fn ideal(gens: &[&[u64]], dim: usize) -> MonomialIdeal {
        MonomialIdeal::minimalize(gens.iter().map(|g| ev(g)), dim).unwrap()
    }

    /// Brute-force box count used as the independent oracle.
    fn box_count(j: &MonomialIdeal) -> u64 {
        let dim = j.ambient_dim();
        let bounds: Vec<u64> = (0..dim).map(|i| j.pure_power_exponent(i).unwrap()).collect();
        let mut count = 0;
        let mut p = alloc::vec![0u64; dim];
        loop {
            if !j.contains(&ExponentVector::new(p.clone())).unwrap() {
                count += 1;
            }
            let mut i = 0;
            loop {
                p[i] += 1;
                if p[i] < bounds[i] {
                    break;
                }
                p[i] = 0;
                i += 1;
                if i == dim {
                    return count;
                }
            }
        }
    }

    #[test]
    fn colength_examples() {
        assert_eq!(length_quotient(&ideal(&[&[2, 0], &[0, 2]], 2)).unwrap(), 4);
        assert_eq!(length_quotient(&ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2)).unwrap(), 7);
        for k in 1..=8u64 {
            assert_eq!(
                length_quotient(&MonomialIdeal::maximal_power(2, k)).unwrap(),
                k * (k + 1) / 2
            );
        }
        assert_eq!(length_quotient(&ideal(&[&[2, 0], &[1, 1]], 2)), Err(Error::NotMPrimary));
    }

    #[test]
    fn colength_matches_box_oracle() {
        let samples = [
            ideal(&[&[2, 0], &[0, 2]], 2),
            ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2),
            ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]], 2),
            ideal(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4], &[1, 1, 1]], 3),
            ideal(&[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]], 3),
        ];
        for j in &samples {
            assert_eq!(length_quotient(j).unwrap(), box_count(j), "{j}");
        }
    }

    #[test]
    fn length_between_examples() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let closure = MonomialIdeal::maximal_power(2, 2);
        assert_eq!(length_between(&closure, &i).unwrap(), 1);
        assert_eq!(length_between(&i, &i).unwrap(), 0);

        let j = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        let mut power = MonomialIdeal::unit(2);
        for n in 1..=10u64 {
            power = power.product(&j).unwrap();
            assert_eq!(
                length_between(&MonomialIdeal::maximal_power(2, 3 * n), &power).unwrap(),
                1,
                "n = {n}"
            );
        }
    }

    #[test]
    fn length_between_non_m_primary() {
        // (xy) inside its saturation: gap zero; (x^2 y, x y^2) has gap 1
        // against (xy).
        let xy = ideal(&[&[1, 1]], 2);
        let edge = ideal(&[&[2, 1], &[1, 2]], 2);
        assert_eq!(length_between(&xy, &edge).unwrap(), 1);
        assert!(matches!(
            length_between(&edge, &xy),
            Err(Error::ContainmentViolation)
        ));
    }

    #[test]
    fn length_additivity() {
        // lambda(A/G) = lambda(A/F) + lambda(F/G) for nested m-primary ideals.
        let g = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        let f = MonomialIdeal::maximal_power(2, 3);
        assert_eq!(
            length_quotient(&g).unwrap(),
            length_quotient(&f).unwrap() + length_between(&f, &g).unwrap()
        );
    }

    #[test]
    fn hilbert_sequences_for_x2_y2() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let mut adic = Filtration::new(FiltrationKind::Adic, i.clone()).unwrap();
        assert_eq!(hilbert_samuel_sequence(&mut adic, 3).unwrap(), alloc::vec![4, 12, 24, 40]);

        let mut closure = Filtration::new(FiltrationKind::IntegralClosure, i).unwrap();
        assert_eq!(hilbert_samuel_sequence(&mut closure, 3).unwrap(), alloc::vec![3, 10, 21, 36]);

        let mut m = Filtration::new(FiltrationKind::Adic, MonomialIdeal::maximal(2)).unwrap();
        let seq = hilbert_samuel_sequence(&mut m, 5).unwrap();
        for (n, v) in seq.iter().enumerate() {
            let n = n as u64;
            assert_eq!(*v, (n + 2) * (n + 1) / 2, "binom(n+2, 2) at {n}");
        }
    }

    #[test]
    fn hilbert_coefficients_for_x2_y2() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let policy = WindowPolicy::default();
        let mut adic = Filtration::new(FiltrationKind::Adic, i.clone()).unwrap();
        let profile = hilbert_profile(&mut adic, &policy).unwrap();
        assert_eq!(profile.hilbert_coeffs.as_deref(), Some(&[4, 0, 0][..]));

        let mut closure = Filtration::new(FiltrationKind::IntegralClosure, i).unwrap();
        let profile = hilbert_profile(&mut closure, &policy).unwrap();
        assert_eq!(profile.hilbert_coeffs.as_deref(), Some(&[4, 1, 0][..]));

        let mut m = Filtration::new(FiltrationKind::Adic, MonomialIdeal::maximal(2)).unwrap();
        let profile = hilbert_profile(&mut m, &policy).unwrap();
        assert_eq!(profile.hilbert_coeffs.as_deref(), Some(&[1, 0, 0][..]));
    }

    #[test]
    fn analytic_spread_examples() {
        let policy = WindowPolicy::default();
        assert_eq!(
            analytic_spread(&ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2), &policy).unwrap(),
            Some(2)
        );
        assert_eq!(analytic_spread(&ideal(&[&[2, 0], &[0, 2]], 2), &policy).unwrap(), Some(2));
        assert_eq!(analytic_spread(&ideal(&[&[3, 2]], 2), &policy).unwrap(), Some(1));
        assert_eq!(analytic_spread(&ideal(&[&[1, 1]], 2), &policy).unwrap(), Some(1));
    }

    #[test]
    fn gap_verdicts_for_the_two_fixtures() {
        let policy = WindowPolicy::default();

        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let mut upper = Filtration::new(FiltrationKind::IntegralClosure, i.clone()).unwrap();
        let mut lower = Filtration::new(FiltrationKind::Adic, i).unwrap();
        let gap = gap_function(&mut upper, &mut lower, &policy).unwrap();
        for (k, v) in gap.gap_values.iter().enumerate() {
            assert_eq!(*v as usize, k + 1, "lambda(E_n) = n");
        }
        assert_eq!(gap.verdict, Some(DichotomyVerdict::EventuallyDegree(1)));

        let j = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        let mut upper = Filtration::new(FiltrationKind::IntegralClosure, j.clone()).unwrap();
        let mut lower = Filtration::new(FiltrationKind::Adic, j.clone()).unwrap();
        let gap = gap_function(&mut upper, &mut lower, &policy).unwrap();
        assert!(gap.gap_values.iter().all(|&v| v == 1));
        assert_eq!(gap.verdict, Some(DichotomyVerdict::AnomalousBelowTop(0)));

        let mut same_a = Filtration::new(FiltrationKind::Adic, j.clone()).unwrap();
        let mut same_b = Filtration::new(FiltrationKind::Adic, j).unwrap();
        let gap = gap_function(&mut same_a, &mut same_b, &policy).unwrap();
        assert_eq!(gap.verdict, Some(DichotomyVerdict::AllZero));
    }
}
