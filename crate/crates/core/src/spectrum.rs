//! The prime spectrum with the co-Zariski topology.
//!
//! Points are the proper prime ideals. The basic open `V(a)` is the set of
//! points containing `a`; since everything is finite, every open set is
//! stored explicitly as a set of point indices.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::elemset::ElemSet;
use crate::error::Error;
use crate::ideals::{
    generated_ideal, maximal_ideals, prime_ideals, radical, Homomorphism,
};
use crate::rig::{Elem, Limits, MvwRig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecSpace {
    name: String,
    carrier_size: usize,
    unital: bool,
    points: Vec<ElemSet>,
    base: Vec<ElemSet>,
    opens: Vec<ElemSet>,
}

/// `Spec(A)` for a commutative rig.
///
/// Rigs without a unit are accepted; [`SpecSpace::is_unital`] records it so
/// that unit-gated checks can be skipped.
pub fn spec(rig: &MvwRig, limits: &Limits) -> Result<SpecSpace, Error> {
    if !rig.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let points = prime_ideals(rig, limits)?;
    Ok(SpecSpace::from_points(rig.name(), rig.size(), rig.unit().is_some(), points))
}

impl SpecSpace {
    /// Rebuilds the space from its points; basic opens and opens follow.
    pub fn from_points(name: impl Into<String>, carrier_size: usize, unital: bool, points: Vec<ElemSet>) -> Self {
        let k = points.len();
        let base: Vec<ElemSet> = (0..carrier_size)
            .map(|a| ElemSet::from_elems(k, (0..k).filter(|&p| points[p].contains(a))))
            .collect();
        let mut opens: BTreeSet<ElemSet> = BTreeSet::new();
        opens.insert(ElemSet::empty(k));
        let mut frontier: Vec<ElemSet> = vec![ElemSet::empty(k)];
        while let Some(u) = frontier.pop() {
            for b in &base {
                let w = u.union(b);
                if opens.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        SpecSpace { name: name.into(), carrier_size, unital, points, base, opens: opens.into_iter().collect() }
    }
}

impl SpecSpace {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether the rig has a unit, which the topological theorems assume.
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn points(&self) -> &[ElemSet] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn all_points(&self) -> ElemSet {
        ElemSet::full(self.points.len())
    }

    /// `V(a)`, as a set of point indices.
    pub fn basic_open(&self, a: Elem) -> &ElemSet {
        &self.base[a]
    }

    pub fn base(&self) -> &[ElemSet] {
        &self.base
    }

    /// Every open set, in canonical order; the first is `∅`, the last the
    /// whole space.
    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn is_open(&self, u: &ElemSet) -> bool {
        self.opens.binary_search(u).is_ok()
    }

    /// The index of a point given as an ideal.
    pub fn point_index(&self, ideal: &ElemSet) -> Option<usize> {
        self.points.iter().position(|p| p == ideal)
    }

    /// Points whose every basic neighbourhood meets `u`.
    pub fn set_closure(&self, u: &ElemSet) -> ElemSet {
        ElemSet::from_elems(
            self.num_points(),
            (0..self.num_points()).filter(|&q| {
                self.base.iter().all(|v| !v.contains(q) || !v.is_disjoint(u))
            }),
        )
    }

    pub fn point_closure(&self, p: usize) -> ElemSet {
        self.set_closure(&ElemSet::from_elems(self.num_points(), [p]))
    }

    /// A pair of points that no open set separates.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        let k = self.num_points();
        (0..k).find_map(|p| {
            ((p + 1)..k)
                .find(|&q| self.opens.iter().all(|u| u.contains(p) == u.contains(q)))
                .map(|q| (p, q))
        })
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// Two elements whose basic opens are nonempty and disjoint.
    pub fn irreducibility_witness(&self) -> Option<(Elem, Elem)> {
        let n = self.base.len();
        (0..n).find_map(|a| {
            (0..n)
                .find(|&b| !self.base[a].is_empty() && !self.base[b].is_empty() && self.base[a].is_disjoint(&self.base[b]))
                .map(|b| (a, b))
        })
    }

    /// Nonempty, and any two nonempty opens meet. Basic opens suffice since
    /// every nonempty open contains a nonempty basic one.
    pub fn is_irreducible(&self) -> bool {
        self.num_points() > 0 && self.irreducibility_witness().is_none()
    }

    /// Graphviz rendering of the specialization order: an edge `Q → P` for
    /// each covering pair `Q ⊂ P`.
    pub fn to_dot(&self, rig: &MvwRig) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"Spec({})\" {{", self.name);
        for (i, p) in self.points.iter().enumerate() {
            let names: Vec<&str> = p.iter().map(|e| rig.elem_name(e)).collect();
            let _ = writeln!(out, "  p{i} [label=\"{{{}}}\"];", names.join(",").replace('"', "\\\""));
        }
        for (q, p) in self.covering_pairs() {
            let _ = writeln!(out, "  p{q} -> p{p};");
        }
        out.push_str("}\n");
        out
    }

    /// `(q, p)` with `Q ⊊ P` and nothing strictly between them.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.num_points();
        let below = |a: usize, b: usize| a != b && self.points[a].is_subset(&self.points[b]);
        let mut out = Vec::new();
        for q in 0..k {
            for p in 0..k {
                if below(q, p) && !(0..k).any(|m| below(q, m) && below(m, p)) {
                    out.push((q, p));
                }
            }
        }
        out
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }
}

/// The first failing base law, with its name and the offending pair.
pub fn base_law_violation(rig: &MvwRig, s: &SpecSpace) -> Option<(&'static str, Elem, Elem)> {
    let v = |a| s.basic_open(a);
    for a in rig.elements() {
        for b in rig.elements() {
            let meet = v(a).intersection(v(b));
            if &meet != v(rig.add(a, b)) {
                return Some(("V(a) ∩ V(b) = V(a ⊕ b)", a, b));
            }
            if &meet != v(rig.join(a, b)) {
                return Some(("V(a) ∩ V(b) = V(a ∨ b)", a, b));
            }
            if &v(a).union(v(b)) != v(rig.mul(a, b)) {
                return Some(("V(a) ∪ V(b) = V(ab)", a, b));
            }
            if !v(rig.mul(a, b)).is_subset(v(rig.meet(a, b))) {
                return Some(("V(ab) ⊆ V(a ∧ b)", a, b));
            }
        }
    }
    None
}

/// An element for which `V(a) = Spec(A)` and nilpotency disagree.
pub fn nilpotent_law_violation(rig: &MvwRig, s: &SpecSpace) -> Option<Elem> {
    rig.elements()
        .find(|&a| s.basic_open(a).is_full() != crate::ideals::is_nilpotent(rig, a))
}

/// A pair `(q, p)` where `q ∈ closure{p}` disagrees with `Q ⊆ P`.
pub fn specialization_violation(s: &SpecSpace) -> Option<(usize, usize)> {
    let k = s.num_points();
    (0..k).find_map(|p| {
        let cl = s.point_closure(p);
        (0..k)
            .find(|&q| cl.contains(q) != s.points()[q].is_subset(&s.points()[p]))
            .map(|q| (q, p))
    })
}

/// Whether unions and pairwise intersections of opens are open.
pub fn is_topology(s: &SpecSpace) -> bool {
    let o = s.opens();
    o.first().is_some_and(ElemSet::is_empty)
        && o.last().is_some_and(ElemSet::is_full)
        && o.iter().all(|u| o.iter().all(|w| s.is_open(&u.union(w)) && s.is_open(&u.intersection(w))))
}

/// Checks set closure against the order of points for every subset `U`:
/// anything below a member of `U` is in the closure, and when `U` has a
/// single maximal member the closure is exactly the points below it.
/// Returns the first offending subset.
pub fn set_closure_violation(s: &SpecSpace) -> Option<ElemSet> {
    let k = s.num_points();
    if k > 16 {
        return None;
    }
    let pts = s.points();
    for mask in 0u32..(1 << k) {
        let u = ElemSet::from_elems(k, (0..k).filter(|&i| mask & (1 << i) != 0));
        let cl = s.set_closure(&u);
        let below_some = |q: usize| u.iter().any(|p| pts[q].is_subset(&pts[p]));
        if (0..k).any(|q| below_some(q) && !cl.contains(q)) {
            return Some(u);
        }
        let maximal: Vec<usize> = u
            .iter()
            .filter(|&p| !u.iter().any(|r| r != p && pts[p].is_subset(&pts[r])))
            .collect();
        if let [m] = maximal[..] {
            if (0..k).any(|q| cl.contains(q) != pts[q].is_subset(&pts[m])) {
                return Some(u);
            }
        }
    }
    None
}

/// Whether irreducibility agrees with having exactly one maximal ideal.
/// `None` when the rig is trivial (no maximal ideals to count).
pub fn irreducible_iff_unique_maximal(rig: &MvwRig, s: &SpecSpace, limits: &Limits) -> Result<Option<bool>, Error> {
    match maximal_ideals(rig, limits) {
        Ok(m) => Ok(Some(s.is_irreducible() == (m.len() == 1))),
        Err(Error::Trivial) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Both sides of `V(a) ⊆ V(b) ⇔ √⟨b⟩ ⊆ √⟨a⟩`, computed independently.
pub fn radical_order_check(rig: &MvwRig, s: &SpecSpace, a: Elem, b: Elem) -> Result<(bool, bool), Error> {
    let topological = s.basic_open(a).is_subset(s.basic_open(b));
    let ra = radical(rig, &generated_ideal(rig, &[a])?)?;
    let rb = radical(rig, &generated_ideal(rig, &[b])?)?;
    Ok((topological, rb.is_subset(&ra)))
}

/// Outcome of one property of `φ*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyStatus {
    Pass,
    Fail(String),
    /// The hypothesis of the property does not hold for this `φ`.
    Skipped(String),
}

/// `φ* : Spec(B) → Spec(A)`, `Q ↦ φ⁻¹(Q)`, with the outcome of each
/// property that applies.
#[derive(Debug, Clone)]
pub struct SpecMap {
    pub source: SpecSpace,
    pub target: SpecSpace,
    /// `map[q]` is the index in `source` of `φ⁻¹(Q)` for the point `q` of `target`.
    pub map: Vec<usize>,
    pub report: Vec<(&'static str, PropertyStatus)>,
}

impl SpecMap {
    pub fn passed(&self) -> bool {
        self.report.iter().all(|(_, s)| !matches!(s, PropertyStatus::Fail(_)))
    }

    /// Image of a set of target points.
    pub fn image(&self, qs: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.source.num_points(), qs.iter().map(|q| self.map[q]))
    }

    /// Preimage of a set of source points.
    pub fn preimage(&self, ps: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.target.num_points(), (0..self.map.len()).filter(|&q| ps.contains(self.map[q])))
    }
}

fn status(ok: bool, msg: impl FnOnce() -> String) -> PropertyStatus {
    if ok {
        PropertyStatus::Pass
    } else {
        PropertyStatus::Fail(msg())
    }
}

/// Builds `φ*` and checks continuity together with every property whose
/// hypothesis `φ` meets.
pub fn spec_map(phi: &Homomorphism<'_>, limits: &Limits) -> Result<SpecMap, Error> {
    let (a, b) = (phi.source(), phi.target());
    let sa = spec(a, limits)?;
    let sb = spec(b, limits)?;
    let mut map = Vec::with_capacity(sb.num_points());
    for q in sb.points() {
        let p = phi.preimage(q);
        match sa.point_index(&p) {
            Some(i) => map.push(i),
            None => {
                return Err(Error::Inconsistent(format!(
                    "φ⁻¹(Q) = {:?} is not a proper prime of the source",
                    p.to_vec()
                )))
            }
        }
    }
    let m = SpecMap { source: sa, target: sb, map, report: Vec::new() };
    let mut report = Vec::new();

    let continuous = m.source.opens().iter().all(|u| m.target.is_open(&m.preimage(u)));
    report.push(("continuous", status(continuous, || "preimage of an open set is not open".into())));

    let ideals_a = crate::ideals::enumerate_ideals(a, limits)?;
    let v_of = |s: &SpecSpace, set: &ElemSet| {
        ElemSet::from_elems(s.num_points(), (0..s.num_points()).filter(|&p| set.is_subset(&s.points()[p])))
    };
    let bad = ideals_a.iter().find(|i| {
        let image = ElemSet::from_elems(b.size(), i.iter().map(|x| phi.apply(x)));
        m.preimage(&v_of(&m.source, i)) != v_of(&m.target, &image)
    });
    report.push((
        "(φ*)⁻¹(V(I)) = V(φ(I))",
        status(bad.is_none(), || format!("fails for I = {:?}", bad.map(ElemSet::to_vec))),
    ));

    let injective = phi.is_injective();
    let bijective = injective && phi.is_surjective();
    if injective {
        // Only b in φ(A), where φ⁻¹(b) is a single element.
        let bad = a.elements().find(|&x| {
            m.image(m.target.basic_open(phi.apply(x))) != *m.source.basic_open(x)
        });
        report.push((
            "φ*(V(b)) = V(φ⁻¹(b))",
            status(bad.is_none(), || format!("fails for b = φ({})", bad.unwrap_or_default())),
        ));
        let onto = m.image(&m.target.all_points()).is_full();
        report.push(("φ*(Spec B) = Spec A", status(onto, || "φ* misses a point of Spec A".into())));
    } else {
        report.push(("φ*(V(b)) = V(φ⁻¹(b))", PropertyStatus::Skipped("φ is not injective".into())));
        report.push(("φ*(Spec B) = Spec A", PropertyStatus::Skipped("φ is not injective".into())));
    }
    if bijective {
        let ker = phi.kernel();
        let target_set = v_of(&m.source, &ker);
        let onto = m.image(&m.target.all_points()) == target_set;
        let one_to_one = {
            let mut seen = m.map.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == m.map.len()
        };
        let open_map = m.target.opens().iter().all(|u| m.source.is_open(&m.image(u)));
        report.push((
            "φ* is a homeomorphism onto V(ker φ)",
            status(onto && one_to_one && open_map, || "φ* is not a homeomorphism onto V(ker φ)".into()),
        ));
    } else {
        report.push((
            "φ* is a homeomorphism onto V(ker φ)",
            PropertyStatus::Skipped("φ is not bijective".into()),
        ));
    }
    Ok(SpecMap { report, ..m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_luk_mv, build_zn, direct_product, lift_trivial_product, subalgebra_closure};

    fn z1z1() -> MvwRig {
        let z1 = build_zn(1).unwrap();
        direct_product(&[&z1, &z1], &Limits::default()).unwrap()
    }

    #[test]
    fn spec_of_z3() {
        let z3 = build_zn(3).unwrap();
        let s = spec(&z3, &Limits::default()).unwrap();
        assert_eq!(s.num_points(), 1);
        assert_eq!(s.opens().len(), 2);
        assert!(s.is_t0() && s.is_irreducible());
        assert_eq!(s.to_dot(&z3), "digraph \"Spec(Z3)\" {\n  p0 [label=\"{0}\"];\n}\n");
    }

    #[test]
    fn spec_of_boolean_square() {
        let p = z1z1();
        let s = spec(&p, &Limits::default()).unwrap();
        assert_eq!(s.points(), &[ElemSet::from_elems(4, [0, 1]), ElemSet::from_elems(4, [0, 2])]);
        // (0,1) lies in the first point only, (1,0) in the second.
        assert_eq!(s.basic_open(1).to_vec(), vec![0]);
        assert_eq!(s.basic_open(2).to_vec(), vec![1]);
        assert_eq!(s.opens().len(), 4);
        assert!(s.is_t0() && !s.is_irreducible());
        assert_eq!(s.irreducibility_witness(), Some((1, 2)));
        assert_eq!(s.point_closure(0).to_vec(), vec![0]);
        assert!(s.covering_pairs().is_empty());
        assert_eq!(base_law_violation(&p, &s), None);
        assert_eq!(radical_order_check(&p, &s, 1, 2).unwrap(), (false, false));
    }

    #[test]
    fn basic_opens_of_zero_and_top() {
        for rig in [build_zn(3).unwrap(), z1z1()] {
            let s = spec(&rig, &Limits::default()).unwrap();
            assert!(s.basic_open(0).is_full());
            assert!(s.basic_open(rig.top()).is_empty());
            assert!(s.set_closure(&ElemSet::empty(s.num_points())).is_empty());
            assert!(is_topology(&s));
            assert_eq!(specialization_violation(&s), None);
            assert_eq!(set_closure_violation(&s), None);
            assert_eq!(nilpotent_law_violation(&rig, &s), None);
        }
    }

    #[test]
    fn empty_spectrum_of_t3() {
        let t3 = lift_trivial_product(build_luk_mv(3).unwrap().mv()).unwrap();
        let s = spec(&t3, &Limits::default()).unwrap();
        assert_eq!(s.num_points(), 0);
        assert!(!s.is_unital());
        assert!(!s.is_irreducible());
        assert_eq!(s.to_dot(&t3), "digraph \"Spec(T(L3))\" {\n}\n");
        assert_eq!(nilpotent_law_violation(&t3, &s), None);
    }

    #[test]
    fn radical_order_examples() {
        let z3 = build_zn(3).unwrap();
        let s = spec(&z3, &Limits::default()).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let (x, y) = radical_order_check(&z3, &s, a, b).unwrap();
                assert_eq!(x, y);
            }
            assert_eq!(radical_order_check(&z3, &s, a, a).unwrap(), (true, true));
        }
    }

    #[test]
    fn spec_maps() {
        let p = z1z1();
        let z1 = build_zn(1).unwrap();
        let proj = Homomorphism::new(&p, &z1, vec![0, 0, 1, 1]).unwrap();
        let m = spec_map(&proj, &Limits::default()).unwrap();
        assert_eq!(m.map, vec![0]);
        assert!(m.passed());

        let z3 = build_zn(3).unwrap();
        let id = spec_map(&Homomorphism::identity(&z3), &Limits::default()).unwrap();
        assert_eq!(id.map, vec![0]);
        assert!(id.report.iter().all(|(_, s)| *s == PropertyStatus::Pass));

        let (sub, incl) = subalgebra_closure(&z3, &[3]).unwrap();
        let f = Homomorphism::new(&sub, &z3, incl).unwrap();
        let m = spec_map(&f, &Limits::default()).unwrap();
        assert_eq!(m.map, vec![0]);
        assert!(m.passed());
    }
}
