//! Ideals of finite MVW-rigs and of their underlying MV-algebras.
//!
//! Ideals are plain [`ElemSet`]s. An ideal of a rig contains 0, is
//! downward closed, closed under `⊕`, and absorbs products on both sides;
//! an MV-ideal drops the last clause.

use std::collections::BTreeSet;
use std::fmt;

use crate::elemset::ElemSet;
use crate::error::Error;
use crate::rig::{Elem, Limits, MvAlgebra, MvwRig};

mod chang;
mod congruence;
mod hom;

pub use chang::{chang_embedding, mv_prime_ideals, ChangEmbedding};
pub use congruence::{quotient, quotient_mv, Congruence, QuotientRig};
pub use hom::{
    check_homomorphism, check_mv_homomorphism, enumerate_homomorphisms, enumerate_mv_homomorphisms, find_isomorphism,
    find_mv_isomorphism, first_iso,
    ideal_correspondence, Correspondence, FirstIso, Homomorphism,
};

/// The clause of the ideal definition that a subset breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealClause {
    ContainsZero,
    /// witness `[a, b]`: `a ≤ b`, `b ∈ S`, `a ∉ S`
    DownwardClosed,
    /// witness `[a, b]`: both in `S`, `a ⊕ b ∉ S`
    SumClosed,
    /// witness `[a, b]`: `a ∈ S`, `ab ∉ S`
    AbsorbsRight,
    /// witness `[a, b]`: `a ∈ S`, `ba ∉ S`
    AbsorbsLeft,
}

impl fmt::Display for IdealClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealClause::ContainsZero => "0 ∈ I",
            IdealClause::DownwardClosed => "a ≤ b ∈ I ⇒ a ∈ I",
            IdealClause::SumClosed => "a, b ∈ I ⇒ a ⊕ b ∈ I",
            IdealClause::AbsorbsRight => "a ∈ I ⇒ ab ∈ I",
            IdealClause::AbsorbsLeft => "a ∈ I ⇒ ba ∈ I",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealViolation {
    pub clause: IdealClause,
    pub witness: Vec<Elem>,
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.clause, self.witness)
    }
}

/// First broken MV-ideal clause, if any.
pub fn check_mv_ideal(mv: &MvAlgebra, s: &ElemSet) -> Option<IdealViolation> {
    let v = |clause, witness| Some(IdealViolation { clause, witness });
    if !s.contains(0) {
        return v(IdealClause::ContainsZero, vec![]);
    }
    for b in s.iter() {
        if let Some(a) = mv.elements().find(|&a| mv.leq(a, b) && !s.contains(a)) {
            return v(IdealClause::DownwardClosed, vec![a, b]);
        }
    }
    for a in s.iter() {
        if let Some(b) = s.iter().find(|&b| !s.contains(mv.add(a, b))) {
            return v(IdealClause::SumClosed, vec![a, b]);
        }
    }
    None
}

/// First broken ideal clause, if any.
pub fn check_ideal(rig: &MvwRig, s: &ElemSet) -> Option<IdealViolation> {
    if let Some(bad) = check_mv_ideal(rig.mv(), s) {
        return Some(bad);
    }
    for a in s.iter() {
        for b in rig.elements() {
            if !s.contains(rig.mul(a, b)) {
                return Some(IdealViolation { clause: IdealClause::AbsorbsRight, witness: vec![a, b] });
            }
            if !s.contains(rig.mul(b, a)) {
                return Some(IdealViolation { clause: IdealClause::AbsorbsLeft, witness: vec![a, b] });
            }
        }
    }
    None
}

pub fn is_ideal(rig: &MvwRig, s: &ElemSet) -> bool {
    check_ideal(rig, s).is_none()
}

pub fn is_mv_ideal(mv: &MvAlgebra, s: &ElemSet) -> bool {
    check_mv_ideal(mv, s).is_none()
}

/// Least subset containing `seed ∪ {0}` that is downward closed,
/// `⊕`-closed and (when `rig` is given) absorbing on both sides.
fn close(mv: &MvAlgebra, rig: Option<&MvwRig>, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    let n = mv.size();
    let mut set = ElemSet::empty(n);
    let mut members = Vec::new();
    let mut queue: Vec<Elem> = seed.into_iter().collect();
    queue.push(0);
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        queue.extend(mv.elements().filter(|&a| mv.leq(a, x) && !set.contains(a)));
        for &m in &members {
            queue.push(mv.add(x, m));
        }
        if let Some(r) = rig {
            for a in 0..n {
                queue.push(r.mul(a, x));
                queue.push(r.mul(x, a));
            }
        }
    }
    set
}

/// The least ideal containing `seed`, by two-sided fixpoint closure.
///
/// Correct for every rig, commutative or not.
pub fn ideal_closure(rig: &MvwRig, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    close(rig.mv(), Some(rig), seed)
}

/// The least MV-ideal containing `seed`.
pub fn mv_ideal_closure(mv: &MvAlgebra, seed: impl IntoIterator<Item = Elem>) -> ElemSet {
    close(mv, None, seed)
}

fn sum_closure(mv: &MvAlgebra, start: ElemSet) -> ElemSet {
    let mut set = start;
    set.insert(0);
    let mut members = set.to_vec();
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..=i {
            let s = mv.add(x, members[j]);
            if set.insert(s) {
                members.push(s);
            }
        }
        i += 1;
    }
    set
}

fn down_closure(mv: &MvAlgebra, set: &ElemSet) -> ElemSet {
    ElemSet::from_elems(
        mv.size(),
        mv.elements().filter(|&a| set.iter().any(|b| mv.leq(a, b))),
    )
}

/// The ideal generated by `seed` in a commutative rig: every `x` bounded by
/// a finite sum of elements `a·s` and `s` with `s ∈ seed`, repeated until
/// nothing changes.
pub fn generated_ideal(rig: &MvwRig, seed: &[Elem]) -> Result<ElemSet, Error> {
    if !rig.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let n = rig.size();
    let mut current = ElemSet::empty(n);
    for &s in seed {
        current.insert(rig.elem(s)?);
    }
    loop {
        let mut gens = current.clone();
        for s in current.iter() {
            for a in 0..n {
                gens.insert(rig.mul(a, s));
            }
        }
        let next = down_closure(rig.mv(), &sum_closure(rig.mv(), gens));
        if next == current {
            return Ok(next);
        }
        current = next;
    }
}

/// `⟨a⟩`, the least ideal containing `a`.
pub fn principal_ideal(rig: &MvwRig, a: Elem) -> ElemSet {
    ideal_closure(rig, [a])
}

fn enumerate_by_joins(
    n: usize,
    limits: &Limits,
    principal: impl Fn(Elem) -> ElemSet,
    join: impl Fn(&ElemSet, &ElemSet) -> ElemSet,
) -> Result<Vec<ElemSet>, Error> {
    limits.check_carrier(n)?;
    let principals: Vec<ElemSet> = (0..n).map(&principal).collect();
    let mut found: BTreeSet<ElemSet> = BTreeSet::new();
    let mut frontier = vec![principals[0].clone()];
    found.insert(principals[0].clone());
    while let Some(ideal) = frontier.pop() {
        for (x, p) in principals.iter().enumerate() {
            if ideal.contains(x) {
                continue;
            }
            let bigger = join(&ideal, p);
            if found.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Every ideal of `rig` in canonical order (by size, then elements).
///
/// Each ideal is the join of the principal ideals of its members, so the
/// search starts from `{0}` and repeatedly joins one more principal ideal.
pub fn enumerate_ideals(rig: &MvwRig, limits: &Limits) -> Result<Vec<ElemSet>, Error> {
    enumerate_by_joins(
        rig.size(),
        limits,
        |a| principal_ideal(rig, a),
        |i, j| ideal_closure(rig, i.union(j).iter()),
    )
}

/// Every MV-ideal of `mv` in canonical order.
pub fn enumerate_mv_ideals(mv: &MvAlgebra, limits: &Limits) -> Result<Vec<ElemSet>, Error> {
    enumerate_by_joins(
        mv.size(),
        limits,
        |a| mv_ideal_closure(mv, [a]),
        |i, j| mv_ideal_closure(mv, i.union(j).iter()),
    )
}

/// The raw clauses of each notion, evaluated on an ideal.
///
/// The whole carrier satisfies the prime and maximal clauses vacuously;
/// `proper` tells it apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Classification {
    pub proper: bool,
    pub prime: bool,
    pub mv_prime: bool,
    pub maximal: bool,
}

impl Classification {
    /// Proper and prime, the points of the spectrum.
    pub fn is_spec_point(&self) -> bool {
        self.proper && self.prime
    }
}

/// A pair `(a, b)` with `ab ∈ I` but neither factor in `I`.
pub fn prime_witness(rig: &MvwRig, ideal: &ElemSet) -> Option<(Elem, Elem)> {
    rig.elements().filter(|&a| !ideal.contains(a)).find_map(|a| {
        rig.elements()
            .find(|&b| !ideal.contains(b) && ideal.contains(rig.mul(a, b)))
            .map(|b| (a, b))
    })
}

/// A pair `(a, b)` with `a ∧ b ∈ I` but neither in `I`.
pub fn mv_prime_witness(mv: &MvAlgebra, ideal: &ElemSet) -> Option<(Elem, Elem)> {
    mv.elements().filter(|&a| !ideal.contains(a)).find_map(|a| {
        mv.elements()
            .find(|&b| !ideal.contains(b) && ideal.contains(mv.meet(a, b)))
            .map(|b| (a, b))
    })
}

pub fn classify_ideal(rig: &MvwRig, ideal: &ElemSet) -> Classification {
    let maximal = rig
        .elements()
        .filter(|&a| !ideal.contains(a))
        .all(|a| ideal_closure(rig, ideal.iter().chain([a])).is_full());
    Classification {
        proper: !ideal.is_full(),
        prime: prime_witness(rig, ideal).is_none(),
        mv_prime: mv_prime_witness(rig.mv(), ideal).is_none(),
        maximal,
    }
}

/// Proper prime ideals, in canonical order.
pub fn prime_ideals(rig: &MvwRig, limits: &Limits) -> Result<Vec<ElemSet>, Error> {
    Ok(enumerate_ideals(rig, limits)?
        .into_iter()
        .filter(|i| !i.is_full() && prime_witness(rig, i).is_none())
        .collect())
}

/// Maximal proper ideals, in canonical order.
pub fn maximal_ideals(rig: &MvwRig, limits: &Limits) -> Result<Vec<ElemSet>, Error> {
    if rig.size() == 1 {
        return Err(Error::Trivial);
    }
    Ok(enumerate_ideals(rig, limits)?
        .into_iter()
        .filter(|i| !i.is_full() && classify_ideal(rig, i).maximal)
        .collect())
}

/// Whether some power `xⁿ` with `n ≥ 1` is 0.
pub fn is_nilpotent(rig: &MvwRig, x: Elem) -> bool {
    rig.powers(x).contains(&0)
}

/// The nilradical `{x : xⁿ = 0 for some n ≥ 1}`.
///
/// Powers of `x` repeat within `|A|` steps, so the search is exact.
pub fn nilradical(rig: &MvwRig) -> Result<ElemSet, Error> {
    if !rig.is_commutative() {
        return Err(Error::NotCommutative);
    }
    Ok(ElemSet::from_elems(rig.size(), rig.elements().filter(|&x| is_nilpotent(rig, x))))
}

/// `√I = {x : xⁿ ∈ I for some n ≥ 1}`.
pub fn radical(rig: &MvwRig, ideal: &ElemSet) -> Result<ElemSet, Error> {
    if !rig.is_commutative() {
        return Err(Error::NotCommutative);
    }
    Ok(ElemSet::from_elems(
        rig.size(),
        rig.elements().filter(|&x| rig.powers(x).iter().any(|&p| ideal.contains(p))),
    ))
}

/// Intersection of the proper primes containing `ideal`; the whole carrier
/// when there are none.
pub fn radical_via_primes(rig: &MvwRig, ideal: &ElemSet, limits: &Limits) -> Result<ElemSet, Error> {
    if !rig.is_commutative() {
        return Err(Error::NotCommutative);
    }
    Ok(prime_ideals(rig, limits)?
        .iter()
        .filter(|p| ideal.is_subset(p))
        .fold(ElemSet::full(rig.size()), |acc, p| acc.intersection(p)))
}

/// `I ∨ J = ⟨I ∪ J⟩`.
pub fn ideal_join(rig: &MvwRig, i: &ElemSet, j: &ElemSet) -> Result<ElemSet, Error> {
    generated_ideal(rig, &i.union(j).to_vec())
}

/// `IJ = ⟨{xy : x ∈ I, y ∈ J}⟩`.
pub fn ideal_product(rig: &MvwRig, i: &ElemSet, j: &ElemSet) -> Result<ElemSet, Error> {
    let products: Vec<Elem> = i.iter().flat_map(|x| j.iter().map(move |y| rig.mul(x, y))).collect();
    generated_ideal(rig, &products)
}

/// `f⁻¹(J)` for a map given by its value table.
pub fn preimage(map: &[Elem], target: &ElemSet) -> ElemSet {
    ElemSet::from_elems(map.len(), (0..map.len()).filter(|&a| target.contains(map[a])))
}
