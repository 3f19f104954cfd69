//! Integral closure of monomial ideals via the Newton polyhedron.
//!
//! The Newton polyhedron of `I` is `conv(gens) + R_{>=0}^d`. A monomial
//! `x^a` is integral over `I` exactly when `a` lies in the polyhedron,
//! i.e. when there are rational `lambda_j >= 0` with `sum lambda_j = 1`
//! and `a >= sum lambda_j v_j` componentwise. Membership is decided by
//! exact rational LP feasibility; bulk enumeration additionally uses an
//! exact facet description, cross-checked against the LP in the tests.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::ideal::MonomialIdeal;
use crate::lp;

/// One valid inequality `<normal, c> >= offset` with `normal >= 0` and
/// `offset > 0`. Together with `c >= 0` these cut out the polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Facet {
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// The Newton polyhedron of a proper nonzero monomial ideal.
#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    dim: usize,
    vertices: Vec<ExponentVector>,
    /// Exact H-description, when the vertex count makes enumerating
    /// candidate supporting hyperplanes affordable.
    facets: Option<Vec<Facet>>,
}

/// Above this many candidate hyperplane supports we skip the facet
/// description and decide membership by LP only.
const FACET_WORK_LIMIT: u64 = 2_000_000;

impl NewtonPolyhedron {
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let dim = ideal.ambient_dim();
        let vertices: Vec<ExponentVector> = ideal.gens().to_vec();
        let facets = compute_facets(dim, &vertices);
        Ok(NewtonPolyhedron { dim, vertices, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// LP membership for a lattice point.
    pub fn contains_lattice(&self, a: &ExponentVector) -> Result<bool> {
        a.check_dim(self.dim)?;
        let target: Vec<BigRational> =
            a.coords().iter().map(|&c| lp::rational_uint(c)).collect();
        self.contains_rational(&target)
    }

    /// LP membership for an arbitrary non-negative rational point.
    ///
    /// Feasibility system: one `lambda` per vertex plus one slack per
    /// coordinate; `sum lambda_j v_j + s = a` and `sum lambda_j = 1`.
    pub fn contains_rational(&self, a: &[BigRational]) -> Result<bool> {
        if a.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        if a.iter().any(|c| c.is_negative()) {
            return Ok(false);
        }
        let m = self.vertices.len();
        let cols = m + self.dim;
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(self.dim + 1);
        let mut rhs: Vec<BigRational> = Vec::with_capacity(self.dim + 1);
        for i in 0..self.dim {
            let mut row = alloc::vec![BigRational::zero(); cols];
            for (j, v) in self.vertices.iter().enumerate() {
                row[j] = lp::rational_uint(v.get(i));
            }
            row[m + i] = lp::rational_int(1);
            rows.push(row);
            rhs.push(a[i].clone());
        }
        let mut convexity = alloc::vec![BigRational::zero(); cols];
        for item in convexity.iter_mut().take(m) {
            *item = lp::rational_int(1);
        }
        rows.push(convexity);
        rhs.push(lp::rational_int(1));
        Ok(lp::equality_system_feasible(&rows, &rhs))
    }

    /// Facet membership of a lattice point in the `scale`-fold dilation
    /// `scale * NP`. Falls back to the LP (on the rescaled point) when no
    /// facet description was computed.
    pub fn contains_scaled(&self, a: &ExponentVector, scale: u64) -> Result<bool> {
        a.check_dim(self.dim)?;
        match &self.facets {
            Some(facets) => {
                let s = BigInt::from(scale);
                for f in facets {
                    let mut lhs = BigInt::zero();
                    for (w, &c) in f.normal.iter().zip(a.coords()) {
                        lhs += w * BigInt::from(c);
                    }
                    if lhs < &f.offset * &s {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            None => {
                let scale_r = lp::rational_uint(scale);
                let target: Vec<BigRational> = a
                    .coords()
                    .iter()
                    .map(|&c| lp::rational_uint(c) / scale_r.clone())
                    .collect();
                self.contains_rational(&target)
            }
        }
    }

    /// True when every stored facet normal is strictly positive, which
    /// makes the lattice complement of any dilation finite and amenable
    /// to direct column counting.
    fn facets_all_positive(&self) -> Option<&[Facet]> {
        let facets = self.facets.as_deref()?;
        if facets.iter().all(|f| f.normal.iter().all(|w| w.is_positive())) {
            Some(facets)
        } else {
            None
        }
    }

    /// Number of lattice points outside `scale * NP`, i.e. the colength
    /// of the integral closure of `I^scale` when `I` is m-primary.
    ///
    /// Counts column by column: for a fixed prefix of coordinates the
    /// membership threshold in the last coordinate is the max of the
    /// facet ceilings, and everything below it is outside.
    pub fn scaled_complement_count(&self, scale: u64) -> Result<u64> {
        let Some(facets) = self.facets_all_positive() else {
            return Err(Error::InfiniteLength);
        };
        if scale == 0 {
            return Ok(0);
        }
        let s = BigInt::from(scale);
        // Outside points are bounded per coordinate by the facet
        // intercepts: w_i c_i < scale * b.
        let mut bounds: Vec<u64> = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut bound = BigInt::zero();
            for f in facets {
                let intercept = ceil_div(&(&f.offset * &s), &f.normal[i]);
                if intercept > bound {
                    bound = intercept;
                }
            }
            bounds.push(u64::try_from(&bound).map_err(|_| Error::Overflow)?);
        }

        let mut total: u64 = 0;
        let mut prefix = alloc::vec![0u64; self.dim - 1];
        loop {
            // Threshold in the last coordinate for this prefix.
            let mut threshold = BigInt::zero();
            for f in facets {
                let mut partial = &f.offset * &s;
                for (w, &c) in f.normal.iter().zip(prefix.iter()) {
                    partial -= w * BigInt::from(c);
                }
                if partial.is_positive() {
                    let t = ceil_div(&partial, &f.normal[self.dim - 1]);
                    if t > threshold {
                        threshold = t;
                    }
                }
            }
            let t = u64::try_from(&threshold).map_err(|_| Error::Overflow)?;
            total = total.checked_add(t).ok_or(Error::Overflow)?;

            // Advance the prefix odometer.
            let mut i = 0;
            loop {
                if self.dim == 1 {
                    return Ok(total);
                }
                prefix[i] += 1;
                if prefix[i] < bounds[i] {
                    break;
                }
                prefix[i] = 0;
                i += 1;
                if i == self.dim - 1 {
                    return Ok(total);
                }
            }
        }
    }
}

fn ceil_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    if r.is_zero() || (num.is_negative() != den.is_negative()) {
        q
    } else {
        q + 1
    }
}

/// Enumerates candidate supporting hyperplanes: every facet of
/// `conv(V) + orthant` other than a coordinate facet is the affine hull
/// of some vertices together with some recession directions `e_i`, in
/// total `d` affinely independent pieces. Any valid inequality found
/// (normal `>= 0`, all vertices on the correct side, positive offset)
/// is kept; supersets of the facet set only add redundant constraints.
fn compute_facets(dim: usize, vertices: &[ExponentVector]) -> Option<Vec<Facet>> {
    let m = vertices.len() as u64;
    let mut work: u64 = 0;
    for t in 0..dim as u64 {
        let s = dim as u64 - t;
        if s > m {
            continue;
        }
        work = work.saturating_add(binomial_u64(dim as u64, t).saturating_mul(binomial_u64(m, s)));
    }
    if work > FACET_WORK_LIMIT {
        return None;
    }

    let mut facets: Vec<Facet> = Vec::new();
    let dirs: Vec<usize> = (0..dim).collect();
    for t_size in 0..dim {
        let s_size = dim - t_size;
        if s_size > vertices.len() {
            continue;
        }
        for dirs_subset in subsets(&dirs, t_size) {
            for verts_subset in subsets_indices(vertices.len(), s_size) {
                if let Some(f) = facet_from_support(dim, vertices, &verts_subset, &dirs_subset) {
                    facets.push(f);
                }
            }
        }
    }
    facets.sort();
    facets.dedup();
    Some(facets)
}

/// Solves for the normal of the hyperplane containing the chosen
/// vertices with the chosen recession directions in its lineality;
/// returns the inequality when it is valid for the whole polyhedron.
fn facet_from_support(
    dim: usize,
    vertices: &[ExponentVector],
    verts: &[usize],
    dirs: &[usize],
) -> Option<Facet> {
    // Constraint rows on w: w_i = 0 for chosen directions, and
    // <w, v - v0> = 0 for further chosen vertices.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for &i in dirs {
        let mut row = alloc::vec![BigRational::zero(); dim];
        row[i] = lp::rational_int(1);
        rows.push(row);
    }
    let v0 = &vertices[verts[0]];
    for &vi in &verts[1..] {
        let v = &vertices[vi];
        let row: Vec<BigRational> = (0..dim)
            .map(|i| lp::rational_int(v.get(i) as i64 - v0.get(i) as i64))
            .collect();
        rows.push(row);
    }
    let null = nullspace_vector(&rows, dim)?;

    // Clear denominators and reduce.
    let mut scaled: Vec<BigInt> = {
        let mut lcm = BigInt::from(1);
        for r in &null {
            lcm = lcm.lcm(r.denom());
        }
        null.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    };
    let mut gcd = BigInt::zero();
    for w in &scaled {
        gcd = gcd.gcd(w);
    }
    if gcd.is_zero() {
        return None;
    }
    for w in scaled.iter_mut() {
        *w /= &gcd;
    }

    // Orient so all components are non-negative.
    if scaled.iter().any(|w| w.is_negative()) {
        if scaled.iter().any(|w| w.is_positive()) {
            return None;
        }
        for w in scaled.iter_mut() {
            *w = -w.clone();
        }
    }

    let offset: BigInt =
        scaled.iter().zip(v0.coords()).map(|(w, &c)| w * BigInt::from(c)).sum();
    if !offset.is_positive() {
        return None;
    }
    // Validity: every vertex on or above the hyperplane.
    for v in vertices {
        let lhs: BigInt =
            scaled.iter().zip(v.coords()).map(|(w, &c)| w * BigInt::from(c)).sum();
        if lhs < offset {
            return None;
        }
    }
    Some(Facet { normal: scaled, offset })
}

/// One-dimensional nullspace of the row system, or `None` when the
/// nullity is not exactly one.
fn nullspace_vector(rows: &[Vec<BigRational>], dim: usize) -> Option<Vec<BigRational>> {
    let mut mat: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let pivot = (r..mat.len()).find(|&i| !mat[i][c].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for v in mat[r].iter_mut() {
            *v /= &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..dim {
                    let delta = &f * &mat[r][j];
                    mat[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if pivot_cols.len() != dim - 1 {
        return None;
    }
    let free = (0..dim).find(|c| !pivot_cols.contains(c))?;
    let mut w = alloc::vec![BigRational::zero(); dim];
    w[free] = lp::rational_int(1);
    for (row_idx, &pc) in pivot_cols.iter().enumerate() {
        w[pc] = -mat[row_idx][free].clone();
    }
    Some(w)
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

fn subsets_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..n).collect();
    subsets(&idx, k)
}

/// Integral closure of a proper nonzero monomial ideal: the minimal
/// lattice points of its Newton polyhedron.
///
/// Enumeration bound: a minimal lattice point of the polyhedron cannot
/// exceed the generator-wise coordinate maximum in any coordinate. If
/// `a_i > max_j (v_j)_i` then `a_i - 1 >= sum lambda_j (v_j)_i` still
/// holds for any certifying combination, so `a - e_i` is also in the
/// polyhedron and divides `a`, contradicting minimality. Points are
/// visited in graded order, so every accepted point is a minimal
/// generator and every dominated point is skipped without a test.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    integral_closure_scaled(ideal, 1)
}

/// Integral closure of `I^n`, computed against the `n`-fold dilation of
/// the Newton polyhedron of `I` (the polyhedron of `I^n` is exactly that
/// dilation, since each generator of `I^n` is a sum of `n` generators).
pub fn integral_closure_power(ideal: &MonomialIdeal, n: u64) -> Result<MonomialIdeal> {
    if n == 0 {
        return Ok(MonomialIdeal::unit(ideal.ambient_dim()));
    }
    integral_closure_scaled(ideal, n)
}

fn integral_closure_scaled(ideal: &MonomialIdeal, scale: u64) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let dim = ideal.ambient_dim();
    // Principal monomial ideals are integrally closed: the polyhedron is
    // a translated orthant whose only minimal lattice point is the
    // generator itself.
    if ideal.num_min_gens() == 1 {
        let g = ideal.gens()[0].scale(scale)?;
        return MonomialIdeal::minimalize([g], dim);
    }

    let np = NewtonPolyhedron::from_ideal(ideal)?;
    let bounds: Vec<u64> = (0..dim)
        .map(|i| ideal.coordinate_max(i).checked_mul(scale).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;

    let mut points: Vec<ExponentVector> = Vec::new();
    let mut current = alloc::vec![0u64; dim];
    fn collect(bounds: &[u64], i: usize, current: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
        if i == bounds.len() {
            out.push(ExponentVector::new(current.clone()));
            return;
        }
        for e in 0..=bounds[i] {
            current[i] = e;
            collect(bounds, i + 1, current, out);
        }
    }
    collect(&bounds, 0, &mut current, &mut points);
    points.sort_by_key(|p| (p.total_degree().unwrap_or(u64::MAX), p.clone()));

    let mut gens: Vec<ExponentVector> = Vec::new();
    for p in points {
        if gens.iter().any(|g| g.divides(&p)) {
            continue;
        }
        if np.contains_scaled(&p, scale)? {
            gens.push(p);
        }
    }
    MonomialIdeal::minimalize(gens, dim)
}

/// The paper-style membership probe: the least `l <= limit` with
/// `(x^a)^l` in `I^l`, if any. Absence of a witness is inconclusive and
/// never claims non-membership; only the LP decides negatively.
pub fn power_membership_oracle(
    ideal: &MonomialIdeal,
    a: &ExponentVector,
    limit: u64,
) -> Result<Option<u64>> {
    a.check_dim(ideal.ambient_dim())?;
    let mut power = MonomialIdeal::unit(ideal.ambient_dim());
    for l in 1..=limit {
        power = power.product(ideal)?;
        if power.contains(&a.scale(l)?)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(coords: &[u64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    fn ideal(gens: &[&[u64]], dim: usize) -> MonomialIdeal {
        MonomialIdeal::minimalize(gens.iter().map(|g| ev(g)), dim).unwrap()
    }

    #[test]
    fn lp_membership_on_x2_y2() {
        let np = NewtonPolyhedron::from_ideal(&ideal(&[&[2, 0], &[0, 2]], 2)).unwrap();
        assert!(np.contains_lattice(&ev(&[1, 1])).unwrap());
        assert!(!np.contains_lattice(&ev(&[1, 0])).unwrap());
        assert!(!np.contains_lattice(&ev(&[0, 1])).unwrap());
        for v in np.vertices().to_vec() {
            assert!(np.contains_lattice(&v).unwrap());
        }
    }

    #[test]
    fn facets_agree_with_lp() {
        let samples = [
            ideal(&[&[2, 0], &[0, 2]], 2),
            ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2),
            ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]], 2),
            ideal(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]], 3),
            ideal(&[&[2, 1], &[1, 3]], 2),
        ];
        for i in &samples {
            let np = NewtonPolyhedron::from_ideal(i).unwrap();
            assert!(np.facets.is_some());
            for x in 0..=8u64 {
                for y in 0..=8u64 {
                    if i.ambient_dim() == 2 {
                        let p = ev(&[x, y]);
                        assert_eq!(
                            np.contains_scaled(&p, 1).unwrap(),
                            np.contains_lattice(&p).unwrap(),
                            "{i} at {p}"
                        );
                    } else {
                        for z in 0..=6u64 {
                            let p = ev(&[x, y, z]);
                            assert_eq!(
                                np.contains_scaled(&p, 1).unwrap(),
                                np.contains_lattice(&p).unwrap(),
                                "{i} at {p}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closure_of_paper_examples() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(integral_closure(&i).unwrap(), MonomialIdeal::maximal_power(2, 2));

        let j = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        assert_eq!(integral_closure(&j).unwrap(), MonomialIdeal::maximal_power(2, 3));
        assert_eq!(integral_closure_power(&j, 2).unwrap(), MonomialIdeal::maximal_power(2, 6));

        assert_eq!(integral_closure_power(&i, 3).unwrap(), MonomialIdeal::maximal_power(2, 6));
    }

    #[test]
    fn principal_ideals_are_integrally_closed() {
        let p = ideal(&[&[3, 2]], 2);
        assert_eq!(integral_closure(&p).unwrap(), p);
    }

    #[test]
    fn closure_contains_ideal_and_is_idempotent() {
        for gens in [&[&[2u64, 0u64][..], &[0, 2][..]][..], &[&[3, 0], &[2, 1], &[0, 3]], &[&[5, 1], &[1, 4]]] {
            let i = ideal(gens, 2);
            let c = integral_closure(&i).unwrap();
            assert!(i.is_subideal_of(&c).unwrap());
            assert_eq!(integral_closure(&c).unwrap(), c);
        }
    }

    #[test]
    fn oracle_witnesses() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(power_membership_oracle(&i, &ev(&[1, 1]), 6).unwrap(), Some(2));
        assert_eq!(power_membership_oracle(&i, &ev(&[2, 0]), 6).unwrap(), Some(1));
        assert_eq!(power_membership_oracle(&i, &ev(&[1, 0]), 6).unwrap(), None);

        let j = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        assert_eq!(power_membership_oracle(&j, &ev(&[1, 2]), 6).unwrap(), Some(2));
    }

    #[test]
    fn complement_count_matches_direct_enumeration() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let np = NewtonPolyhedron::from_ideal(&i).unwrap();
        // Colength of m^{2n} is binom(2n + 1, 2).
        for n in 1..=6u64 {
            let expected = (2 * n) * (2 * n + 1) / 2;
            assert_eq!(np.scaled_complement_count(n).unwrap(), expected);
        }
    }
}
