//! Filters, P-filters and the frame `L_A` of P-filters.
//!
//! A P-filter is a nonempty, upward closed, product closed subset `F` such
//! that `x ∈ F` whenever some finite sum `⊕ᵢ bᵢx` lies in `F`. Those sums
//! are exactly the elements of [`dotsum_closure`], which makes the last
//! clause a finite membership test.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::elemset::ElemSet;
use crate::error::Error;
use crate::rig::{Elem, Limits, MvwRig};
use crate::spectrum::SpecSpace;

/// `{⊕ᵢ bᵢx}` over all finite families `bᵢ`: the `⊕`-closure of
/// `{b·x : b ∈ A}`. Always contains `0 = 0·x`.
pub fn dotsum_closure(rig: &MvwRig, x: Elem) -> ElemSet {
    let mut set = ElemSet::empty(rig.size());
    let mut members = Vec::new();
    let mut queue: Vec<Elem> = rig.elements().map(|b| rig.mul(b, x)).collect();
    while let Some(y) = queue.pop() {
        if !set.insert(y) {
            continue;
        }
        members.push(y);
        for &m in &members {
            queue.push(rig.add(y, m));
        }
    }
    set
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterClause {
    Nonempty,
    /// witness `[a, b]`: `a ≤ b`, `a ∈ F`, `b ∉ F`
    UpwardClosed,
    /// witness `[a, b]`: both in `F`, `ab ∉ F`
    ProductClosed,
    /// witness `[x, d]`: `d ∈ dotsum(x) ∩ F`, `x ∉ F`
    DotsumProperty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterViolation {
    pub clause: FilterClause,
    pub witness: Vec<Elem>,
}

fn filter_violation(rig: &MvwRig, f: &ElemSet) -> Option<FilterViolation> {
    let v = |clause, witness| Some(FilterViolation { clause, witness });
    if f.is_empty() {
        return v(FilterClause::Nonempty, vec![]);
    }
    for a in f.iter() {
        if let Some(b) = rig.elements().find(|&b| rig.leq(a, b) && !f.contains(b)) {
            return v(FilterClause::UpwardClosed, vec![a, b]);
        }
    }
    for a in f.iter() {
        if let Some(b) = f.iter().find(|&b| !f.contains(rig.mul(a, b))) {
            return v(FilterClause::ProductClosed, vec![a, b]);
        }
    }
    None
}

/// First broken P-filter clause, if any.
pub fn pfilter_violation(rig: &MvwRig, f: &ElemSet) -> Option<FilterViolation> {
    if let Some(bad) = filter_violation(rig, f) {
        return Some(bad);
    }
    rig.elements().filter(|&x| !f.contains(x)).find_map(|x| {
        dotsum_closure(rig, x)
            .iter()
            .find(|&d| f.contains(d))
            .map(|d| FilterViolation { clause: FilterClause::DotsumProperty, witness: vec![x, d] })
    })
}

pub fn is_filter(rig: &MvwRig, f: &ElemSet) -> bool {
    filter_violation(rig, f).is_none()
}

pub fn is_pfilter(rig: &MvwRig, f: &ElemSet) -> bool {
    pfilter_violation(rig, f).is_none()
}

/// All products `s₁⋯sₙ` (`n ≥ 1`) of elements of `seed`.
fn products(rig: &MvwRig, seed: &ElemSet) -> ElemSet {
    let mut set = ElemSet::empty(rig.size());
    let mut queue: Vec<Elem> = seed.to_vec();
    while let Some(p) = queue.pop() {
        if set.insert(p) {
            queue.extend(seed.iter().map(|s| rig.mul(p, s)));
        }
    }
    set
}

fn formula_from_products(rig: &MvwRig, prods: &ElemSet) -> ElemSet {
    ElemSet::from_elems(
        rig.size(),
        rig.elements().filter(|&x| {
            let sums = dotsum_closure(rig, x);
            prods.iter().any(|p| sums.iter().any(|d| rig.leq(p, d)))
        }),
    )
}

fn seed_set(rig: &MvwRig, seed: &[Elem]) -> Result<ElemSet, Error> {
    if seed.is_empty() {
        return Err(Error::EmptySeed);
    }
    let mut s = ElemSet::empty(rig.size());
    for &e in seed {
        s.insert(rig.elem(e)?);
    }
    Ok(s)
}

/// Least superset of `seed` closed under F1, F2 and F3, given the
/// dotsum closure of every element.
fn close(rig: &MvwRig, dots: &[ElemSet], seed: ElemSet) -> ElemSet {
    let mut f = seed;
    loop {
        let mut next = f.clone();
        for x in rig.elements().filter(|&x| !f.contains(x)) {
            if f.iter().any(|a| rig.leq(a, x)) || !dots[x].is_disjoint(&f) {
                next.insert(x);
            }
        }
        for a in f.iter() {
            for b in f.iter() {
                next.insert(rig.mul(a, b));
            }
        }
        if next == f {
            return f;
        }
        f = next;
    }
}

fn all_dotsums(rig: &MvwRig) -> Vec<ElemSet> {
    rig.elements().map(|x| dotsum_closure(rig, x)).collect()
}

/// The least P-filter containing `seed`, by closing under the three
/// clauses until nothing changes.
pub fn pfilter_generated(rig: &MvwRig, seed: &[Elem]) -> Result<ElemSet, Error> {
    let s = seed_set(rig, seed)?;
    Ok(close(rig, &all_dotsums(rig), s))
}

/// `{x : s₁⋯sₙ ≤ ⊕ᵢ bᵢx for some sⱼ ∈ seed, bᵢ ∈ A}`, the closed form of
/// the generated P-filter. It agrees with [`pfilter_generated`] on
/// commutative rigs; on others it need not even be a P-filter.
pub fn pfilter_formula(rig: &MvwRig, seed: &[Elem]) -> Result<ElemSet, Error> {
    let s = seed_set(rig, seed)?;
    Ok(formula_from_products(rig, &products(rig, &s)))
}

/// `F_a`, the least P-filter containing `a`.
pub fn principal_pfilter(rig: &MvwRig, a: Elem) -> ElemSet {
    close(rig, &all_dotsums(rig), ElemSet::from_elems(rig.size(), [a]))
}

/// `{x : aⁿ ≤ ⊕ᵢ bᵢx for some n ≥ 1, bᵢ ∈ A}`.
pub fn principal_formula(rig: &MvwRig, a: Elem) -> ElemSet {
    let powers = ElemSet::from_elems(rig.size(), rig.powers(a));
    formula_from_products(rig, &powers)
}

/// `F ∧ G = F ∩ G`.
pub fn pfilter_meet(f: &ElemSet, g: &ElemSet) -> ElemSet {
    f.intersection(g)
}

/// `F ∨ G = ⟨F ∪ G⟩_P`.
pub fn pfilter_join(rig: &MvwRig, f: &ElemSet, g: &ElemSet) -> Result<ElemSet, Error> {
    pfilter_generated(rig, &f.union(g).to_vec())
}

/// The least P-filter, `F_u`: every P-filter is nonempty and upward closed,
/// so it contains `u`.
pub fn least_pfilter(rig: &MvwRig) -> ElemSet {
    principal_pfilter(rig, rig.top())
}

/// The lattice of all P-filters ordered by inclusion, with its join and
/// meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameLA {
    filters: Vec<ElemSet>,
    principal: Vec<usize>,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl FrameLA {
    /// P-filters in canonical order; the first is the least one.
    pub fn filters(&self) -> &[ElemSet] {
        &self.filters
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn index_of(&self, f: &ElemSet) -> Option<usize> {
        self.filters.binary_search(f).ok()
    }

    /// Index of `F_a`.
    pub fn principal(&self, a: Elem) -> usize {
        self.principal[a]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.filters[i].is_subset(&self.filters[j])
    }

    /// Covering pairs `(i, j)`: `Fᵢ ⊊ Fⱼ` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if lt(i, j) && !(0..k).any(|m| lt(i, m) && lt(m, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Rebuilds the frame from its P-filters and the index of each `F_a`.
    /// Meets are intersections and joins are least upper bounds, so no rig
    /// is needed; the filters must be sorted and form a lattice.
    pub fn from_filters(filters: Vec<ElemSet>, principal: Vec<usize>) -> Result<Self, Error> {
        let k = filters.len();
        if k == 0 || filters.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Inconsistent("P-filters must be nonempty, sorted and distinct".into()));
        }
        if let Some(&p) = principal.iter().find(|&&p| p >= k) {
            return Err(Error::Inconsistent(format!("principal index {p} is out of range")));
        }
        let leq = |i: usize, j: usize| filters[i].is_subset(&filters[j]);
        let mut join = vec![0; k * k];
        let mut meet = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let mt = filters
                    .binary_search(&filters[i].intersection(&filters[j]))
                    .map_err(|_| Error::Inconsistent(format!("P-filters {i} and {j} have no meet")))?;
                let ubs: Vec<usize> = (0..k).filter(|&m| leq(i, m) && leq(j, m)).collect();
                let jn = ubs
                    .iter()
                    .copied()
                    .find(|&m| ubs.iter().all(|&u| leq(m, u)))
                    .ok_or_else(|| Error::Inconsistent(format!("P-filters {i} and {j} have no join")))?;
                join[i * k + j] = jn;
                meet[i * k + j] = mt;
            }
        }
        Ok(FrameLA { filters, principal, join, meet })
    }

    /// Distinct principal P-filters, by frame index.
    pub fn distinct_principals(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.principal.iter().copied().collect();
        set.into_iter().collect()
    }
}

/// Every P-filter, found by closing the principal P-filters under joins.
///
/// This is complete because a P-filter is the join of the principal
/// P-filters of its members.
pub fn frame(rig: &MvwRig, limits: &Limits) -> Result<FrameLA, Error> {
    limits.check_carrier(rig.size())?;
    let dots = all_dotsums(rig);
    let join_of = |f: &ElemSet, g: &ElemSet| close(rig, &dots, f.union(g));
    let principals: Vec<ElemSet> =
        rig.elements().map(|a| close(rig, &dots, ElemSet::from_elems(rig.size(), [a]))).collect();
    let mut found: BTreeSet<ElemSet> = principals.iter().cloned().collect();
    let mut frontier: Vec<ElemSet> = found.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for p in &principals {
            if p.is_subset(&f) {
                continue;
            }
            let j = join_of(&f, p);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let filters: Vec<ElemSet> = found.into_iter().collect();
    let k = filters.len();
    let index = |f: &ElemSet| -> Result<usize, Error> {
        filters
            .binary_search(f)
            .map_err(|_| Error::Inconsistent(format!("{:?} is missing from the frame", f.to_vec())))
    };
    let principal = principals.iter().map(index).collect::<Result<Vec<_>, _>>()?;
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for i in 0..k {
        for j in i..k {
            let jn = index(&join_of(&filters[i], &filters[j]))?;
            let mt = index(&pfilter_meet(&filters[i], &filters[j]))?;
            join[i * k + j] = jn;
            join[j * k + i] = jn;
            meet[i * k + j] = mt;
            meet[j * k + i] = mt;
        }
    }
    Ok(FrameLA { filters, principal, join, meet })
}

/// Checks `F ∧ ⋁ₐ F_a = ⋁ₐ (F ∧ F_a)` for every P-filter `F` and every
/// family of distinct principal P-filters. Returns the first failing
/// `(F, family)` as frame indices.
pub fn distributivity_violation(fr: &FrameLA) -> Option<(usize, Vec<usize>)> {
    let ps = fr.distinct_principals();
    let k = ps.len();
    if k > 20 {
        return Some((usize::MAX, ps));
    }
    // join_of[mask] = ⋁ of the principals in mask, built one bit at a time.
    let mut join_of = vec![fr.bottom(); 1 << k];
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        join_of[mask] = fr.join(join_of[mask & (mask - 1)], ps[low]);
    }
    for f in 0..fr.len() {
        let mut rhs = vec![fr.bottom(); 1 << k];
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            rhs[mask] = fr.join(rhs[mask & (mask - 1)], fr.meet(f, ps[low]));
        }
        for mask in 0..(1usize << k) {
            if fr.meet(f, join_of[mask]) != rhs[mask] {
                let family = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| ps[i]).collect();
                return Some((f, family));
            }
        }
    }
    None
}

/// `θ : O(Spec A) → L_A`, `⋃ⱼ V(aⱼ) ↦ ⋁ⱼ F_{aⱼ}`, as a table from open
/// indices to frame indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theta {
    pub map: Vec<usize>,
}

/// Largest carrier for which θ is checked on every presentation.
pub const THETA_MAX_CARRIER: usize = 20;

/// Builds θ from every family of basic opens and verifies that the result
/// does not depend on the presentation, is bijective, preserves unions and
/// intersections, and preserves and reflects inclusion.
pub fn theta(rig: &MvwRig, sp: &SpecSpace, fr: &FrameLA) -> Result<Theta, Error> {
    if !rig.is_commutative() || rig.unit().is_none() {
        return Err(Error::GateNotMet);
    }
    let n = rig.size();
    if n > THETA_MAX_CARRIER {
        return Err(Error::SizeBound { size: n, bound: THETA_MAX_CARRIER });
    }
    let fail = |msg: String| Err(Error::Inconsistent(format!("θ: {msg}")));
    let mut assigned: HashMap<ElemSet, usize> = HashMap::new();
    let mut union_of = vec![ElemSet::empty(sp.num_points()); 1 << n];
    let mut join_of = vec![fr.principal(rig.top()); 1 << n];
    for mask in 0usize..(1 << n) {
        if mask > 0 {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            union_of[mask] = union_of[rest].union(sp.basic_open(low));
            join_of[mask] = fr.join(join_of[rest], fr.principal(low));
        }
        match assigned.get(&union_of[mask]) {
            Some(&f) if f != join_of[mask] => {
                return fail(format!("two presentations of {:?} disagree", union_of[mask].to_vec()))
            }
            Some(_) => {}
            None => {
                assigned.insert(union_of[mask].clone(), join_of[mask]);
            }
        }
    }
    let mut map = Vec::with_capacity(sp.opens().len());
    for u in sp.opens() {
        match assigned.get(u) {
            Some(&f) => map.push(f),
            None => return fail(format!("open {:?} has no presentation", u.to_vec())),
        }
    }
    let mut hit: Vec<usize> = map.clone();
    hit.sort_unstable();
    hit.dedup();
    if hit.len() != map.len() || hit.len() != fr.len() {
        return fail(format!("{} opens and {} P-filters do not match up", map.len(), fr.len()));
    }
    let opens = sp.opens();
    let at = |u: &ElemSet| opens.binary_search(u).expect("opens are closed under ∪ and ∩");
    for (i, u) in opens.iter().enumerate() {
        for (j, w) in opens.iter().enumerate() {
            if map[at(&u.union(w))] != fr.join(map[i], map[j]) {
                return fail(format!("θ(U ∪ W) ≠ θ(U) ∨ θ(W) for opens {i}, {j}"));
            }
            if map[at(&u.intersection(w))] != fr.meet(map[i], map[j]) {
                return fail(format!("θ(U ∩ W) ≠ θ(U) ∧ θ(W) for opens {i}, {j}"));
            }
            if u.is_subset(w) != fr.leq(map[i], map[j]) {
                return fail(format!("order is not preserved for opens {i}, {j}"));
            }
        }
    }
    Ok(Theta { map })
}

/// A finite subfamily of `generators` whose P-filters already join to `A`.
///
/// The join is `A` exactly when it contains 0, that is when some product
/// of generators is 0; the shortest such product is found breadth-first and
/// its factors are returned in the order they appear in `generators`.
pub fn finite_subcover(rig: &MvwRig, generators: &[Elem]) -> Result<Vec<Elem>, Error> {
    for &g in generators {
        rig.elem(g)?;
    }
    if generators.is_empty() {
        return if least_pfilter(rig).is_full() { Ok(vec![]) } else { Err(Error::NotACover) };
    }
    if !pfilter_generated(rig, generators)?.is_full() {
        return Err(Error::NotACover);
    }
    // BFS over product values; parent links recover one shortest word.
    let mut parent: Vec<Option<(Option<Elem>, usize)>> = vec![None; rig.size()];
    let mut queue = VecDeque::new();
    for (i, &g) in generators.iter().enumerate() {
        if parent[g].is_none() {
            parent[g] = Some((None, i));
            queue.push_back(g);
        }
    }
    while let Some(p) = queue.pop_front() {
        if p == 0 {
            break;
        }
        for (i, &g) in generators.iter().enumerate() {
            let q = rig.mul(p, g);
            if parent[q].is_none() {
                parent[q] = Some((Some(p), i));
                queue.push_back(q);
            }
        }
    }
    let mut used = BTreeSet::new();
    let mut cur = Some(0);
    while let Some(p) = cur {
        let (prev, i) = parent[p]
            .ok_or_else(|| Error::Inconsistent("cover without a vanishing product".into()))?;
        used.insert(i);
        cur = prev;
    }
    let sub: Vec<Elem> = used.into_iter().map(|i| generators[i]).collect();
    if !pfilter_generated(rig, &sub)?.is_full() {
        return Err(Error::Inconsistent("extracted subfamily does not cover".into()));
    }
    Ok(sub)
}
