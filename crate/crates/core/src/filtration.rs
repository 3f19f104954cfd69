//! The closure filtrations attached to a monomial ideal, behind one
//! caching interface: adic powers, integral closures, Ratliff-Rush
//! closures, saturations and (trivially, in this regular ambient ring)
//! tight closures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hilbert;
use crate::ideal::MonomialIdeal;
use crate::newton::{self, NewtonPolyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FiltrationKind {
    Adic,
    IntegralClosure,
    RatliffRush,
    Saturation,
    TightClosure,
}

impl FiltrationKind {
    pub fn name(&self) -> &'static str {
        match self {
            FiltrationKind::Adic => "adic",
            FiltrationKind::IntegralClosure => "integral-closure",
            FiltrationKind::RatliffRush => "ratliff-rush",
            FiltrationKind::Saturation => "saturation",
            FiltrationKind::TightClosure => "tight-closure",
        }
    }

    pub const ALL: [FiltrationKind; 5] = [
        FiltrationKind::Adic,
        FiltrationKind::IntegralClosure,
        FiltrationKind::RatliffRush,
        FiltrationKind::Saturation,
        FiltrationKind::TightClosure,
    ];
}

/// Rationale attached to every tight-closure term: the ambient
/// polynomial ring is regular, and regular rings are weakly F-regular,
/// so `(I^n)^* = I^n` in every characteristic. Nothing is computed.
pub const TIGHT_CLOSURE_RATIONALE: &str =
    "regular ambient ring is weakly F-regular: (I^n)* = I^n for every n and every characteristic";

/// Result of the Ratliff-Rush colon chain.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatliffRushResult {
    pub closure: MonomialIdeal,
    /// The computed chain `I^{n+1} : I^n` for `n = 1, 2, ..`.
    pub chain: Vec<MonomialIdeal>,
    /// Consecutive equality in this ascending chain is not a
    /// stabilization certificate; every result carries this caveat.
    pub heuristic: bool,
    /// Whether `T * I^m` landed inside `I^{m+1}` for every computed `m`.
    pub multiplication_check_passed: bool,
}

/// Stable value of the chain `I^{n+1} : I^n`, stopping once the value
/// repeats for `extra_steps` additional steps beyond the first equality.
pub fn ratliff_rush(ideal: &MonomialIdeal, extra_steps: u32) -> Result<RatliffRushResult> {
    if extra_steps == 0 {
        return Err(Error::InvalidParameter("extra_steps must be positive".into()));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let mut chain: Vec<MonomialIdeal> = Vec::new();
    let mut power_n = ideal.clone();
    let mut run = 0u32;
    loop {
        let power_n1 = power_n.product(ideal)?;
        let c = power_n1.colon(&power_n)?;
        match chain.last() {
            Some(prev) if *prev == c => run += 1,
            _ => run = 0,
        }
        chain.push(c);
        if run >= extra_steps {
            break;
        }
        power_n = power_n1;
    }
    let closure = chain.last().expect("chain nonempty").clone();

    // Sanity: the candidate multiplies each computed power into the next.
    let mut check = true;
    let mut power = ideal.clone();
    for _ in 0..chain.len() {
        let next = power.product(ideal)?;
        if !closure.product(&power)?.is_subideal_of(&next)? {
            check = false;
            break;
        }
        power = next;
    }
    Ok(RatliffRushResult { closure, chain, heuristic: true, multiplication_check_passed: check })
}

/// `I : m^infinity`, the certified colon fixpoint.
pub fn saturation(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    // m-primary means m^k <= I for some k, so I : m^infinity is the
    // whole ring; the pure-power certificate makes the chain
    // unnecessary.
    if ideal.is_m_primary() {
        return Ok(MonomialIdeal::unit(ideal.ambient_dim()));
    }
    let m = MonomialIdeal::maximal(ideal.ambient_dim());
    Ok(ideal.saturation_colon(&m)?.0)
}

/// A closure filtration `{F_n}` of a fixed base ideal, with a
/// monotonically growing per-instance term cache. Terms are never
/// recomputed.
#[derive(Debug, Clone)]
pub struct Filtration {
    kind: FiltrationKind,
    base: MonomialIdeal,
    cache: BTreeMap<u64, MonomialIdeal>,
    /// Adic powers of the base, shared by the closure kinds.
    powers: BTreeMap<u64, MonomialIdeal>,
    newton: Option<NewtonPolyhedron>,
    rr_extra_steps: u32,
}

impl Filtration {
    pub fn new(kind: FiltrationKind, base: MonomialIdeal) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if base.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(Filtration {
            kind,
            base,
            cache: BTreeMap::new(),
            powers: BTreeMap::new(),
            newton: None,
            rr_extra_steps: 3,
        })
    }

    pub fn kind(&self) -> FiltrationKind {
        self.kind
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    /// Rationale for kinds whose terms are identities rather than
    /// computations.
    pub fn rationale(&self) -> Option<&'static str> {
        match self.kind {
            FiltrationKind::TightClosure => Some(TIGHT_CLOSURE_RATIONALE),
            _ => None,
        }
    }

    pub fn adic_power(&mut self, n: u64) -> Result<MonomialIdeal> {
        if let Some(p) = self.powers.get(&n) {
            return Ok(p.clone());
        }
        // Build upward from the largest cached power.
        let (mut k, mut acc) = self
            .powers
            .range(..=n)
            .next_back()
            .map(|(k, v)| (*k, v.clone()))
            .unwrap_or((0, MonomialIdeal::unit(self.base.ambient_dim())));
        while k < n {
            acc = acc.product(&self.base)?;
            k += 1;
            self.powers.insert(k, acc.clone());
        }
        Ok(acc)
    }

    fn newton(&mut self) -> Result<&NewtonPolyhedron> {
        if self.newton.is_none() {
            self.newton = Some(NewtonPolyhedron::from_ideal(&self.base)?);
        }
        Ok(self.newton.as_ref().expect("just set"))
    }

    /// The `n`-th term of the filtration, computed once and cached.
    pub fn term(&mut self, n: u64) -> Result<MonomialIdeal> {
        if let Some(t) = self.cache.get(&n) {
            return Ok(t.clone());
        }
        let t = if n == 0 {
            MonomialIdeal::unit(self.base.ambient_dim())
        } else {
            match self.kind {
                FiltrationKind::Adic | FiltrationKind::TightClosure => self.adic_power(n)?,
                FiltrationKind::IntegralClosure => newton::integral_closure_power(&self.base, n)?,
                FiltrationKind::RatliffRush => {
                    let power = self.adic_power(n)?;
                    ratliff_rush(&power, self.rr_extra_steps)?.closure
                }
                FiltrationKind::Saturation => {
                    let power = self.adic_power(n)?;
                    saturation(&power)?
                }
            }
        };
        self.cache.insert(n, t.clone());
        Ok(t)
    }

    /// `lambda(A / F_n)`. For the integral-closure filtration of an
    /// m-primary base this counts the lattice complement of the dilated
    /// Newton polyhedron directly, without materializing the term.
    pub fn term_colength(&mut self, n: u64) -> Result<u64> {
        if n == 0 {
            return Ok(0);
        }
        if self.kind == FiltrationKind::IntegralClosure && !self.cache.contains_key(&n) {
            let np = self.newton()?.clone();
            if let Ok(count) = np.scaled_complement_count(n) {
                return Ok(count);
            }
        }
        let term = self.term(n)?;
        if term.is_unit() {
            return Ok(0);
        }
        hilbert::length_quotient(&term)
    }

    /// Least cached `n0` with `base * F_n = F_{n+1}` for all
    /// `n0 <= n < horizon`, or none within the horizon. Window-certified
    /// only.
    pub fn stability_index(&mut self, horizon: u64) -> Result<Option<u64>> {
        if horizon < 2 {
            return Err(Error::InvalidParameter("horizon must be at least 2".into()));
        }
        let mut stable: Vec<bool> = Vec::new();
        for n in 0..horizon {
            let f_n = self.term(n)?;
            let f_n1 = self.term(n + 1)?;
            stable.push(self.base.product(&f_n)? == f_n1);
        }
        let mut onset = None;
        for (n, ok) in stable.iter().enumerate().rev() {
            if *ok {
                onset = Some(n as u64);
            } else {
                break;
            }
        }
        Ok(onset.filter(|_| *stable.last().expect("horizon >= 2")))
    }
}
