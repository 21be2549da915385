use crate::builders::induced_subrig;
use crate::elemset::ElemSet;
use crate::error::Error;
use crate::rig::{Elem, Limits, MvAlgebra, MvwRig};

use super::{enumerate_ideals, is_ideal, preimage, quotient, QuotientRig};

fn violation(clause: &'static str, witness: Vec<Elem>) -> Result<(), Error> {
    Err(Error::NotAHomomorphism { clause, witness })
}

/// Checks `f(0) = 0`, `f(¬x) = ¬f(x)` and `f(x ⊕ y) = f(x) ⊕ f(y)`.
pub fn check_mv_homomorphism(source: &MvAlgebra, target: &MvAlgebra, map: &[Elem]) -> Result<(), Error> {
    if map.len() != source.size() {
        return Err(Error::InvalidParameter(format!(
            "map has {} values for a carrier of {}",
            map.len(),
            source.size()
        )));
    }
    if let Some(x) = source.elements().find(|&x| map[x] >= target.size()) {
        return violation("total", vec![x]);
    }
    if map[0] != 0 {
        return violation("zero", vec![]);
    }
    if let Some(x) = source.elements().find(|&x| map[source.neg(x)] != target.neg(map[x])) {
        return violation("neg", vec![x]);
    }
    for x in source.elements() {
        if let Some(y) = source.elements().find(|&y| map[source.add(x, y)] != target.add(map[x], map[y])) {
            return violation("add", vec![x, y]);
        }
    }
    Ok(())
}

/// [`check_mv_homomorphism`] plus `f(xy) = f(x)f(y)`.
pub fn check_homomorphism(source: &MvwRig, target: &MvwRig, map: &[Elem]) -> Result<(), Error> {
    check_mv_homomorphism(source.mv(), target.mv(), map)?;
    for x in source.elements() {
        if let Some(y) = source.elements().find(|&y| map[source.mul(x, y)] != target.mul(map[x], map[y])) {
            return violation("mul", vec![x, y]);
        }
    }
    Ok(())
}

/// A verified homomorphism of MVW-rigs, given by its value table.
#[derive(Debug, Clone)]
pub struct Homomorphism<'a> {
    source: &'a MvwRig,
    target: &'a MvwRig,
    map: Vec<Elem>,
}

impl<'a> Homomorphism<'a> {
    pub fn new(source: &'a MvwRig, target: &'a MvwRig, map: Vec<Elem>) -> Result<Self, Error> {
        check_homomorphism(source, target, &map)?;
        Ok(Self { source, target, map })
    }

    pub fn identity(rig: &'a MvwRig) -> Self {
        Self { source: rig, target: rig, map: rig.elements().collect() }
    }

    pub fn source(&self) -> &'a MvwRig {
        self.source
    }

    pub fn target(&self) -> &'a MvwRig {
        self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `f⁻¹(0)`
    pub fn kernel(&self) -> ElemSet {
        self.preimage(&ElemSet::from_elems(self.target.size(), [0]))
    }

    pub fn image_set(&self) -> ElemSet {
        ElemSet::from_elems(self.target.size(), self.map.iter().copied())
    }

    /// `f(A)` as a sub-rig of the target, with its inclusion.
    pub fn image(&self) -> Result<(MvwRig, Vec<Elem>), Error> {
        induced_subrig(self.target, &self.image_set())
    }

    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        preimage(&self.map, set)
    }

    pub fn is_injective(&self) -> bool {
        self.image_set().len() == self.source.size()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().is_full()
    }
}

/// Backtracking search for maps with `f(0) = 0` preserving `¬`, `⊕` and
/// (for rigs) `·`. Each new assignment is checked against every clause
/// whose inputs and output are already assigned.
struct Search<'s> {
    src: &'s MvAlgebra,
    tgt: &'s MvAlgebra,
    muls: Option<(&'s MvwRig, &'s MvwRig)>,
    injective: bool,
    first_only: bool,
    found: Vec<Vec<Elem>>,
}

impl Search<'_> {
    fn consistent(&self, f: &[Elem], x: Elem) -> bool {
        let (s, t) = (self.src, self.tgt);
        let assigned = |e: Elem| e <= x;
        for y in 0..=x {
            let ny = s.neg(y);
            if assigned(ny) && (y == x || ny == x) && f[ny] != t.neg(f[y]) {
                return false;
            }
            for z in 0..=x {
                let touches = |r: Elem| assigned(r) && (y == x || z == x || r == x);
                let r = s.add(y, z);
                if touches(r) && f[r] != t.add(f[y], f[z]) {
                    return false;
                }
                if let Some((sm, tm)) = self.muls {
                    let r = sm.mul(y, z);
                    if touches(r) && f[r] != tm.mul(f[y], f[z]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, f: &mut Vec<Elem>, used: &mut ElemSet) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        let x = f.len();
        if x == self.src.size() {
            self.found.push(f.clone());
            return;
        }
        for v in self.tgt.elements() {
            if self.injective && used.contains(v) {
                continue;
            }
            f.push(v);
            if self.consistent(f, x) {
                used.insert(v);
                self.run(f, used);
                used.remove(v);
            }
            f.pop();
        }
    }

    fn go(mut self) -> Vec<Vec<Elem>> {
        let mut f = vec![0];
        let mut used = ElemSet::from_elems(self.tgt.size(), [0]);
        if self.consistent(&f, 0) {
            self.run(&mut f, &mut used);
        }
        self.found
    }
}

/// Every homomorphism from `source` to `target`, as value tables in
/// lexicographic order.
pub fn enumerate_homomorphisms(source: &MvwRig, target: &MvwRig) -> Vec<Vec<Elem>> {
    Search {
        src: source.mv(),
        tgt: target.mv(),
        muls: Some((source, target)),
        injective: false,
        first_only: false,
        found: Vec::new(),
    }
    .go()
}

/// Every MV-homomorphism between the underlying MV-algebras.
pub fn enumerate_mv_homomorphisms(source: &MvAlgebra, target: &MvAlgebra) -> Vec<Vec<Elem>> {
    Search { src: source, tgt: target, muls: None, injective: false, first_only: false, found: Vec::new() }.go()
}

/// A bijective homomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &MvwRig, b: &MvwRig) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    Search { src: a.mv(), tgt: b.mv(), muls: Some((a, b)), injective: true, first_only: true, found: Vec::new() }
        .go()
        .pop()
}

/// A bijective MV-homomorphism `a → b`, if one exists.
pub fn find_mv_isomorphism(a: &MvAlgebra, b: &MvAlgebra) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    Search { src: a, tgt: b, muls: None, injective: true, first_only: true, found: Vec::new() }.go().pop()
}

/// The canonical isomorphism `A/ker f → f(A)`, `[a] ↦ f(a)`.
#[derive(Debug, Clone)]
pub struct FirstIso {
    pub quotient: QuotientRig,
    pub image: MvwRig,
    /// Inclusion of the image into the target of `f`.
    pub inclusion: Vec<Elem>,
    /// The isomorphism, indexed by quotient class.
    pub iso: Vec<Elem>,
}

/// Builds `[a] ↦ f(a)` and verifies that it is well defined, bijective
/// and a homomorphism.
pub fn first_iso(f: &Homomorphism<'_>) -> Result<FirstIso, Error> {
    let kernel = f.kernel();
    if !is_ideal(f.source(), &kernel) {
        return Err(Error::Inconsistent("kernel is not an ideal".into()));
    }
    let q = quotient(f.source(), &kernel)?;
    let (image, inclusion) = f.image()?;
    let mut pos = vec![usize::MAX; f.target().size()];
    for (i, &e) in inclusion.iter().enumerate() {
        pos[e] = i;
    }
    let mut iso = vec![usize::MAX; q.rig.size()];
    for a in f.source().elements() {
        let c = q.congruence.class_of(a);
        let v = pos[f.apply(a)];
        if iso[c] == usize::MAX {
            iso[c] = v;
        } else if iso[c] != v {
            return Err(Error::Inconsistent(format!("[{a}] ↦ f({a}) is not well defined")));
        }
    }
    let hit = ElemSet::from_elems(image.size(), iso.iter().copied());
    if iso.len() != image.size() || !hit.is_full() {
        return Err(Error::Inconsistent("A/ker f → f(A) is not bijective".into()));
    }
    check_homomorphism(&q.rig, &image, &iso)
        .map_err(|e| Error::Inconsistent(format!("A/ker f → f(A) is not a homomorphism: {e}")))?;
    Ok(FirstIso { quotient: q, image, inclusion, iso })
}

/// Ideals `J ⊇ I` of `A` matched with the ideals of `A/I`.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub quotient: QuotientRig,
    /// `(J, π(J))`, in canonical order of `J`.
    pub pairs: Vec<(ElemSet, ElemSet)>,
}

/// `J ↦ {[a] : a ∈ J}`, verified to be a bijection onto the ideals of the
/// quotient that preserves and reflects inclusion.
pub fn ideal_correspondence(rig: &MvwRig, ideal: &ElemSet, limits: &Limits) -> Result<Correspondence, Error> {
    let q = quotient(rig, ideal)?;
    let proj = q.projection();
    let above: Vec<ElemSet> = enumerate_ideals(rig, limits)?.into_iter().filter(|j| ideal.is_subset(j)).collect();
    let below = enumerate_ideals(&q.rig, limits)?;
    let pairs: Vec<(ElemSet, ElemSet)> = above
        .into_iter()
        .map(|j| {
            let image = ElemSet::from_elems(q.rig.size(), j.iter().map(|a| proj[a]));
            (j, image)
        })
        .collect();
    let fail = |msg: &str| Err(Error::Inconsistent(format!("ideal correspondence: {msg}")));
    for (j, image) in &pairs {
        if !is_ideal(&q.rig, image) {
            return fail("image of an ideal is not an ideal");
        }
        if &preimage(proj, image) != j {
            return fail("π⁻¹(π(J)) ≠ J");
        }
    }
    let mut images: Vec<ElemSet> = pairs.iter().map(|(_, im)| im.clone()).collect();
    images.sort();
    images.dedup();
    if images.len() != pairs.len() || images != below {
        return fail("not a bijection onto the ideals of the quotient");
    }
    for (j1, i1) in &pairs {
        for (j2, i2) in &pairs {
            if j1.is_subset(j2) != i1.is_subset(i2) {
                return fail("inclusion is not preserved");
            }
        }
    }
    Ok(Correspondence { quotient: q, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_luk_mv, build_zn, direct_product, subalgebra_closure};
    use crate::rig::Carrier;

    fn z1z1() -> MvwRig {
        let z1 = build_zn(1).unwrap();
        direct_product(&[&z1, &z1], &Limits::default()).unwrap()
    }

    /// All `|B|^|A|` maps, filtered by the definition.
    fn brute_homs(a: &MvwRig, b: &MvwRig) -> Vec<Vec<Elem>> {
        let (n, m) = (a.size(), b.size());
        (0..m.pow(n as u32))
            .map(|mut code| {
                let mut f = vec![0; n];
                for slot in f.iter_mut().rev() {
                    *slot = code % m;
                    code /= m;
                }
                f
            })
            .filter(|f| check_homomorphism(a, b, f).is_ok())
            .collect()
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let p = z1z1();
        let z1 = build_zn(1).unwrap();
        let f = Homomorphism::new(&p, &z1, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(f.kernel().to_vec(), vec![0, 1]);
        assert!(f.is_surjective() && !f.is_injective());
    }

    #[test]
    fn identity_kernel_is_zero() {
        let z3 = build_zn(3).unwrap();
        assert_eq!(Homomorphism::identity(&z3).kernel().to_vec(), vec![0]);
    }

    #[test]
    fn swapping_one_and_two_breaks_the_sum() {
        let z3 = build_zn(3).unwrap();
        assert_eq!(
            check_homomorphism(&z3, &z3, &[0, 2, 1, 3]),
            Err(Error::NotAHomomorphism { clause: "add", witness: vec![1, 1] })
        );
    }

    #[test]
    fn search_matches_brute_force() {
        let z1 = build_zn(1).unwrap();
        let z2 = build_zn(2).unwrap();
        let z3 = build_zn(3).unwrap();
        let p = z1z1();
        let l3 = crate::builders::lift_trivial_product(build_luk_mv(3).unwrap().mv()).unwrap();
        let triv = MvwRig::derive("0", Carrier::numbered(1).unwrap(), &[0], &[0], &[0]).unwrap();
        let rigs = [&triv, &z1, &z2, &z3, &p, &l3];
        for a in rigs {
            for b in rigs {
                assert_eq!(enumerate_homomorphisms(a, b), brute_homs(a, b), "{} -> {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn isomorphisms() {
        let g = crate::builders::gamma_zk(2, &[1, 1]).unwrap();
        assert!(find_isomorphism(&g, &z1z1()).is_some());
        assert!(find_isomorphism(&build_zn(3).unwrap(), &z1z1()).is_none());
        let z2 = build_zn(2).unwrap();
        let l3 = build_luk_mv(3).unwrap();
        // Z_n and Ł_{n+1} agree as MV-algebras.
        assert_eq!(find_mv_isomorphism(z2.mv(), l3.mv()), Some(vec![0, 1, 2]));
    }

    #[test]
    fn first_iso_examples() {
        let p = z1z1();
        let z1 = build_zn(1).unwrap();
        let z3 = build_zn(3).unwrap();
        let triv = MvwRig::derive("0", Carrier::numbered(1).unwrap(), &[0], &[0], &[0]).unwrap();

        let f = Homomorphism::new(&p, &z1, vec![0, 0, 1, 1]).unwrap();
        let fi = first_iso(&f).unwrap();
        assert_eq!(fi.quotient.rig.size(), 2);
        assert_eq!(fi.iso, vec![0, 1]);

        let fi = first_iso(&Homomorphism::identity(&z3)).unwrap();
        assert_eq!(fi.quotient.rig.size(), 4);

        let zero = Homomorphism::new(&z3, &triv, vec![0; 4]).unwrap();
        assert_eq!(first_iso(&zero).unwrap().quotient.rig.size(), 1);
    }

    #[test]
    fn first_iso_on_subalgebra_inclusion() {
        let z3 = build_zn(3).unwrap();
        let (sub, incl) = subalgebra_closure(&z3, &[3]).unwrap();
        let f = Homomorphism::new(&sub, &z3, incl).unwrap();
        assert!(f.is_injective());
        assert_eq!(first_iso(&f).unwrap().image.size(), 2);
    }

    #[test]
    fn correspondence_examples() {
        let l = Limits::default();
        let p = z1z1();
        let c = ideal_correspondence(&p, &ElemSet::from_elems(4, [0, 1]), &l).unwrap();
        assert_eq!(c.pairs.len(), 2);
        let z3 = build_zn(3).unwrap();
        let c = ideal_correspondence(&z3, &ElemSet::from_elems(4, [0]), &l).unwrap();
        assert!(c.pairs.iter().all(|(j, im)| j == im));
        let c = ideal_correspondence(&z3, &ElemSet::full(4), &l).unwrap();
        assert_eq!(c.pairs.len(), 1);
        assert_eq!(c.quotient.rig.size(), 1);
    }
}
