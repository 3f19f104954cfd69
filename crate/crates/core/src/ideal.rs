use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

/// A monomial prime ideal, generated by a subset of the variables.
///
/// Elements of `Ass(A/I)` for a monomial ideal `I` are always of this
/// shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimeSupport {
    vars: Vec<usize>,
}

impl PrimeSupport {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        PrimeSupport { vars }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    /// Height of the prime, i.e. the number of variables.
    pub fn size(&self) -> usize {
        self.vars.len()
    }
}

/// A monomial ideal in `k[x_1..x_d]`, stored as the antichain of its
/// minimal generator exponent vectors in lexicographic order.
///
/// Empty generators encode the zero ideal; the single generator
/// `(0,..,0)` encodes the unit ideal. Equal ideals have identical
/// representations, so derived equality is ideal equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonomialIdeal {
    ambient_dim: usize,
    gens: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by `raw_gens`, reduced to the antichain
    /// of componentwise-minimal elements in canonical order.
    pub fn minimalize(raw_gens: impl IntoIterator<Item = ExponentVector>, dim: usize) -> Result<Self> {
        let mut gens: Vec<ExponentVector> = Vec::new();
        for g in raw_gens {
            g.check_dim(dim)?;
            gens.push(g);
        }
        gens.sort();
        gens.dedup();
        // After dedup the vectors are distinct, so division by another
        // generator is strict: a generator survives iff nothing divides it.
        let mut minimal: Vec<ExponentVector> = Vec::new();
        'outer: for (i, g) in gens.iter().enumerate() {
            for (j, h) in gens.iter().enumerate() {
                if i != j && h.divides(g) {
                    continue 'outer;
                }
            }
            minimal.push(g.clone());
        }
        Ok(MonomialIdeal { ambient_dim: dim, gens: minimal })
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal { ambient_dim: dim, gens: Vec::new() }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal { ambient_dim: dim, gens: alloc::vec![ExponentVector::zero(dim)] }
    }

    /// The maximal ideal `m = (x_1, .., x_d)`.
    pub fn maximal(dim: usize) -> Self {
        MonomialIdeal {
            ambient_dim: dim,
            gens: (0..dim).rev().map(|i| ExponentVector::unit(dim, i)).collect(),
        }
    }

    /// `m^k`, generated by all monomials of total degree `k`.
    pub fn maximal_power(dim: usize, k: u64) -> Self {
        if k == 0 {
            return Self::unit(dim);
        }
        let mut gens = Vec::new();
        let mut current = alloc::vec![0u64; dim];
        fn rec(dim: usize, i: usize, left: u64, current: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
            if i == dim - 1 {
                current[i] = left;
                out.push(ExponentVector::new(current.clone()));
                return;
            }
            for e in 0..=left {
                current[i] = e;
                rec(dim, i + 1, left - e, current, out);
            }
        }
        rec(dim, 0, k, &mut current, &mut gens);
        gens.sort();
        MonomialIdeal { ambient_dim: dim, gens }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn gens(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_zero()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    fn require_proper_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroIdeal)
        } else if self.is_unit() {
            Err(Error::UnitIdeal)
        } else {
            Ok(())
        }
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.ambient_dim == other.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim })
        }
    }

    /// Number of minimal generators, `mu(I)`.
    pub fn num_min_gens(&self) -> usize {
        self.gens.len()
    }

    /// Membership of `x^a`: some generator divides it.
    pub fn contains(&self, a: &ExponentVector) -> Result<bool> {
        a.check_dim(self.ambient_dim)?;
        Ok(self.gens.iter().any(|g| g.divides(a)))
    }

    /// `self` is contained in `other` iff every generator of `self` lies
    /// in `other`.
    pub fn is_subideal_of(&self, other: &Self) -> Result<bool> {
        self.check_same_dim(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g.add(h)?);
            }
        }
        Self::minimalize(raw, self.ambient_dim)
    }

    /// `I^n` by iterated product with minimalization at each step.
    /// `I^0` is the unit ideal.
    pub fn power(&self, n: u64) -> Result<Self> {
        let mut acc = Self::unit(self.ambient_dim);
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection via pairwise generator lcms.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut raw = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                raw.push(g.max(h));
            }
        }
        Self::minimalize(raw, self.ambient_dim)
    }

    /// `I : J`, the intersection over generators `g` of `J` of the
    /// truncated-subtraction translates of `I`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.ambient_dim));
        }
        let mut acc: Option<Self> = None;
        for g in &other.gens {
            let translated =
                Self::minimalize(self.gens.iter().map(|v| v.sub_clamped(g)), self.ambient_dim)?;
            acc = Some(match acc {
                None => translated,
                Some(k) => k.intersect(&translated)?,
            });
        }
        Ok(acc.expect("nonzero ideal has generators"))
    }

    /// `I : J^infinity` by iterating the colon to its fixpoint.
    ///
    /// Returns the fixpoint and the first stable index. The chain
    /// `K_0 = I, K_{i+1} = K_i : J` is ascending; once two consecutive
    /// terms agree all later ones do, so the fixpoint is certified.
    pub fn saturation_colon(&self, other: &Self) -> Result<(Self, u32)> {
        self.check_same_dim(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut current = self.clone();
        let mut index = 0u32;
        loop {
            let next = current.colon(other)?;
            if next == current {
                return Ok((current, index));
            }
            current = next;
            index += 1;
        }
    }

    /// Radical: each generator's exponents clamped to 0/1.
    pub fn radical(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Self::minimalize(self.gens.iter().map(|g| g.support_indicator()), self.ambient_dim)
    }

    /// Classical recursive splitting into irreducible monomial ideals
    /// (each generated by pure variable powers) whose intersection is
    /// `self`. Redundant components are dropped.
    pub fn irreducible_decomposition(&self) -> Result<Vec<Self>> {
        self.require_proper_nonzero()?;
        let mut components = BTreeSet::new();
        self.split_irreducible(&mut components)?;
        let mut components: Vec<Self> = components.into_iter().collect();
        // Drop any component containing the intersection of the others.
        loop {
            let mut removed = false;
            for i in 0..components.len() {
                if components.len() == 1 {
                    break;
                }
                let mut rest: Option<Self> = None;
                for (j, c) in components.iter().enumerate() {
                    if j != i {
                        rest = Some(match rest {
                            None => c.clone(),
                            Some(r) => r.intersect(c)?,
                        });
                    }
                }
                let rest = rest.expect("at least two components");
                if rest.is_subideal_of(&components[i])? {
                    components.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        Ok(components)
    }

    fn split_irreducible(&self, out: &mut BTreeSet<Self>) -> Result<()> {
        // Find a generator with at least two variables in its support.
        let split = self.gens.iter().find(|g| g.support().len() >= 2);
        match split {
            None => {
                out.insert(self.clone());
                Ok(())
            }
            Some(g) => {
                let sup = g.support();
                let i = sup[0];
                let dim = self.ambient_dim;
                let mut u = alloc::vec![0u64; dim];
                u[i] = g.get(i);
                let mut v = g.coords().to_vec();
                v[i] = 0;
                for part in [ExponentVector::new(u), ExponentVector::new(v)] {
                    let mut raw = self.gens.clone();
                    raw.push(part);
                    Self::minimalize(raw, dim)?.split_irreducible(out)?;
                }
                Ok(())
            }
        }
    }

    /// Associated primes of `A/I`: the supports of the irredundant
    /// irreducible components.
    pub fn assoc_primes(&self) -> Result<BTreeSet<PrimeSupport>> {
        let components = self.irreducible_decomposition()?;
        Ok(components
            .iter()
            .map(|c| {
                let mut vars = BTreeSet::new();
                for g in &c.gens {
                    vars.extend(g.support());
                }
                PrimeSupport::new(vars.into_iter().collect())
            })
            .collect())
    }

    /// Scans `Ass(A/I^n)` for `n = 1, 2, ..` until the same set occurs
    /// `window` consecutive times; returns that set and the first index
    /// where it appeared. The onset is heuristic (window-certified only),
    /// even though stabilization itself is guaranteed.
    pub fn stable_assoc_primes(&self, window: u32) -> Result<(BTreeSet<PrimeSupport>, u32)> {
        if window < 1 {
            return Err(Error::InvalidParameter("window must be at least 1".into()));
        }
        self.require_proper_nonzero()?;
        let mut onset = 1u32;
        let mut current: Option<BTreeSet<PrimeSupport>> = None;
        let mut run = 0u32;
        let mut n = 1u32;
        let mut power = self.clone();
        loop {
            let ass = power.assoc_primes()?;
            match &current {
                Some(c) if *c == ass => run += 1,
                _ => {
                    current = Some(ass);
                    onset = n;
                    run = 1;
                }
            }
            if run >= window {
                return Ok((current.expect("set recorded"), onset));
            }
            n += 1;
            power = power.product(self)?;
        }
    }

    /// Height: the minimum support size over associated primes.
    pub fn height(&self) -> Result<usize> {
        let ass = self.assoc_primes()?;
        Ok(ass.iter().map(|p| p.size()).min().expect("proper nonzero ideal has primes"))
    }

    /// True iff every variable appears as a pure power among the
    /// generators, i.e. the radical is the maximal ideal.
    pub fn is_m_primary(&self) -> bool {
        (0..self.ambient_dim).all(|i| self.pure_power_exponent(i).is_some())
    }

    /// Exponent `b` such that `x_i^b` is a minimal generator, if any.
    pub fn pure_power_exponent(&self, i: usize) -> Option<u64> {
        self.gens
            .iter()
            .find(|g| g.get(i) > 0 && g.support().len() == 1)
            .map(|g| g.get(i))
    }

    /// Largest coordinate appearing among the generators in position `i`.
    pub fn coordinate_max(&self, i: usize) -> u64 {
        self.gens.iter().map(|g| g.get(i)).max().unwrap_or(0)
    }

    /// Largest total degree among the minimal generators.
    pub fn max_gen_degree(&self) -> Result<u64> {
        let mut best = 0;
        for g in &self.gens {
            best = best.max(g.total_degree()?);
        }
        Ok(best)
    }

    /// True iff the minimal generators have pairwise disjoint variable
    /// supports. For monomials this characterizes regular sequences, so
    /// it certifies `G_I(A)` Cohen-Macaulay (hence unmixed and
    /// equidimensional).
    pub fn is_monomial_regular_sequence(&self) -> bool {
        if !self.is_proper_nonzero() {
            return false;
        }
        let mut seen = alloc::vec![false; self.ambient_dim];
        for g in &self.gens {
            for i in g.support() {
                if seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        true
    }
}

impl core::fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
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
    fn minimalize_drops_divisible_generators() {
        let i = ideal(&[&[2, 0], &[4, 0], &[0, 2]], 2);
        assert_eq!(i.gens(), &[ev(&[0, 2]), ev(&[2, 0])]);

        let j = ideal(&[&[3, 0], &[2, 1], &[0, 3], &[3, 1]], 2);
        assert_eq!(j.num_min_gens(), 3);
        assert!(j.gens().contains(&ev(&[2, 1])));
        assert!(!j.gens().contains(&ev(&[3, 1])));
    }

    #[test]
    fn empty_generators_encode_zero() {
        let z = MonomialIdeal::minimalize([], 2).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn contains_uses_divisibility() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert!(!i.contains(&ev(&[1, 1])).unwrap());
        assert!(i.contains(&ev(&[2, 0])).unwrap());
        assert!(MonomialIdeal::unit(2).contains(&ev(&[0, 0])).unwrap());
    }

    #[test]
    fn contains_rejects_dimension_mismatch() {
        let i = ideal(&[&[2, 0]], 2);
        assert!(matches!(i.contains(&ev(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn square_of_x2_y2() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let i2 = i.power(2).unwrap();
        assert_eq!(i2, ideal(&[&[4, 0], &[2, 2], &[0, 4]], 2));
    }

    #[test]
    fn zeroth_power_is_unit() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert!(i.power(0).unwrap().is_unit());
    }

    #[test]
    fn example_ideal_power_generator_count() {
        // mu(I^n) = 3n for I = (x^3, x^2 y, y^3), confirmed by direct
        // enumeration of the pairwise-sum generating set.
        let i = ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2);
        for n in 1..=10u64 {
            assert_eq!(i.power(n).unwrap().num_min_gens() as u64, 3 * n, "n = {n}");
        }
    }

    #[test]
    fn intersect_principal_ideals() {
        let x = ideal(&[&[1, 0]], 2);
        let y = ideal(&[&[0, 1]], 2);
        assert_eq!(x.intersect(&y).unwrap(), ideal(&[&[1, 1]], 2));
    }

    #[test]
    fn intersect_with_unit_is_identity() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(i.intersect(&MonomialIdeal::unit(2)).unwrap(), i);
    }

    #[test]
    fn intersect_cross_terms() {
        let a = ideal(&[&[2, 0], &[0, 1]], 2);
        let b = ideal(&[&[1, 0], &[0, 2]], 2);
        let both = a.intersect(&b).unwrap();
        assert_eq!(both, ideal(&[&[2, 0], &[1, 1], &[0, 2]], 2));
        // Membership oracle on all monomials of degree <= 4.
        for ax in 0..=4u64 {
            for ay in 0..=4u64 {
                let p = ev(&[ax, ay]);
                assert_eq!(
                    both.contains(&p).unwrap(),
                    a.contains(&p).unwrap() && b.contains(&p).unwrap()
                );
            }
        }
    }

    #[test]
    fn colon_truncated_subtraction() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let x = ideal(&[&[1, 0]], 2);
        assert_eq!(i.colon(&x).unwrap(), ideal(&[&[1, 0], &[0, 2]], 2));
        assert_eq!(i.colon(&MonomialIdeal::unit(2)).unwrap(), i);
    }

    #[test]
    fn colon_by_zero_is_an_error() {
        let i = ideal(&[&[2, 0]], 2);
        assert_eq!(i.colon(&MonomialIdeal::zero(2)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn colon_of_square_contains_x2y2() {
        // (x^4, x^3 y, x y^3, y^4)^2 : (x^4, x^3 y, x y^3, y^4) contains x^2 y^2,
        // cross-checked by multiplying x^2 y^2 into each generator.
        let i = ideal(&[&[4, 0], &[3, 1], &[1, 3], &[0, 4]], 2);
        let i2 = i.power(2).unwrap();
        let quot = i2.colon(&i).unwrap();
        let p = ev(&[2, 2]);
        assert!(quot.contains(&p).unwrap());
        for g in i.gens() {
            assert!(i2.contains(&p.add(g).unwrap()).unwrap());
        }
    }

    #[test]
    fn saturation_of_m_primary_is_unit() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        let m = MonomialIdeal::maximal(2);
        let (sat, _) = i.saturation_colon(&m).unwrap();
        assert!(sat.is_unit());
    }

    #[test]
    fn saturation_fixpoints() {
        let m = MonomialIdeal::maximal(2);
        let x2 = ideal(&[&[2, 0]], 2);
        assert_eq!(x2.saturation_colon(&m).unwrap().0, x2);

        let edge = ideal(&[&[2, 1], &[1, 2]], 2);
        let (sat, steps) = edge.saturation_colon(&m).unwrap();
        assert_eq!(sat, ideal(&[&[1, 1]], 2));
        assert!(steps >= 1);
        // Fixpoint certificate: K : J = K.
        assert_eq!(sat.colon(&m).unwrap(), sat);
    }

    #[test]
    fn radical_clamps_exponents() {
        assert_eq!(ideal(&[&[2, 0], &[0, 3]], 2).radical().unwrap(), MonomialIdeal::maximal(2));
        assert_eq!(ideal(&[&[2, 1]], 2).radical().unwrap(), ideal(&[&[1, 1]], 2));
        assert_eq!(MonomialIdeal::zero(2).radical(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn irreducible_decomposition_soundness() {
        let i = ideal(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(i.irreducible_decomposition().unwrap(), alloc::vec![i.clone()]);

        let xy = ideal(&[&[1, 1]], 2);
        let comps = xy.irreducible_decomposition().unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&ideal(&[&[1, 0]], 2)));
        assert!(comps.contains(&ideal(&[&[0, 1]], 2)));

        for gens in [&[&[3u64, 0u64][..], &[2, 1][..], &[0, 3][..]][..], &[&[2, 0], &[1, 1]]] {
            let j = ideal(gens, 2);
            let comps = j.irreducible_decomposition().unwrap();
            let mut inter = MonomialIdeal::unit(2);
            for c in &comps {
                inter = inter.intersect(c).unwrap();
            }
            assert_eq!(inter, j);
        }
    }

    #[test]
    fn assoc_primes_examples() {
        let prim = ideal(&[&[2, 0], &[0, 2]], 2);
        let ass = prim.assoc_primes().unwrap();
        assert_eq!(ass.len(), 1);
        assert!(ass.contains(&PrimeSupport::new(alloc::vec![0, 1])));

        let xy = ideal(&[&[1, 1]], 2);
        let ass = xy.assoc_primes().unwrap();
        assert_eq!(ass.len(), 2);

        // (x^2, xy) = (x) cap (x^2, y): associated primes {x} and {x, y}.
        let i = ideal(&[&[2, 0], &[1, 1]], 2);
        let direct = ideal(&[&[1, 0]], 2).intersect(&ideal(&[&[2, 0], &[0, 1]], 2)).unwrap();
        assert_eq!(i, direct);
        let ass = i.assoc_primes().unwrap();
        assert!(ass.contains(&PrimeSupport::new(alloc::vec![0])));
        assert!(ass.contains(&PrimeSupport::new(alloc::vec![0, 1])));
    }

    #[test]
    fn stable_assoc_primes_examples() {
        let prim = ideal(&[&[2, 0], &[0, 2]], 2);
        let (set, onset) = prim.stable_assoc_primes(3).unwrap();
        assert_eq!(onset, 1);
        assert_eq!(set.len(), 1);

        let xy = ideal(&[&[1, 1]], 2);
        let (set, onset) = xy.stable_assoc_primes(3).unwrap();
        assert_eq!(onset, 1);
        assert_eq!(set.len(), 2);

        let i = ideal(&[&[2, 0], &[1, 1]], 2);
        let (set, _) = i.stable_assoc_primes(3).unwrap();
        assert!(set.contains(&PrimeSupport::new(alloc::vec![0])));
    }

    #[test]
    fn height_and_primary_flags() {
        assert_eq!(ideal(&[&[1, 1]], 2).height().unwrap(), 1);
        assert!(ideal(&[&[2, 0], &[0, 2]], 2).is_m_primary());
        assert!(!ideal(&[&[2, 0], &[1, 1]], 2).is_m_primary());
        // mu(m^{2n}) = 2n + 1 in two variables.
        for n in 1..=6u64 {
            assert_eq!(MonomialIdeal::maximal_power(2, 2 * n).num_min_gens() as u64, 2 * n + 1);
        }
    }

    #[test]
    fn regular_sequence_detection() {
        assert!(ideal(&[&[2, 0], &[0, 2]], 2).is_monomial_regular_sequence());
        assert!(!ideal(&[&[3, 0], &[2, 1], &[0, 3]], 2).is_monomial_regular_sequence());
        assert!(ideal(&[&[2, 1, 0], &[0, 0, 3]], 3).is_monomial_regular_sequence());
    }
}
