use crate::elemset::ElemSet;
use crate::error::{DeriveError, Error};
use crate::rig::{Carrier, Elem, MvAlgebra, MvwRig};

use super::{check_ideal, check_mv_ideal};

/// A partition of the carrier, stored as a class index per element.
///
/// Classes are numbered in order of their least element, so class 0 is the
/// class of zero and every class is represented by its least index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    class_of: Vec<usize>,
    reps: Vec<Elem>,
}

/// `(x ⊖ y) ⊕ (y ⊖ x)`
fn distance(mv: &MvAlgebra, x: Elem, y: Elem) -> Elem {
    mv.add(mv.monus(x, y), mv.monus(y, x))
}

impl Congruence {
    /// `x ≡ y` iff `(x ⊖ y) ⊕ (y ⊖ x) ∈ I`.
    pub fn from_ideal(mv: &MvAlgebra, ideal: &ElemSet) -> Congruence {
        let mut class_of = Vec::with_capacity(mv.size());
        let mut reps: Vec<Elem> = Vec::new();
        for x in mv.elements() {
            match reps.iter().position(|&r| ideal.contains(distance(mv, r, x))) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(reps.len());
                    reps.push(x);
                }
            }
        }
        Congruence { class_of, reps }
    }

    /// Accepts any labelling of the elements and checks that it is a
    /// congruence of `rig`, including compatibility with the product.
    pub fn from_partition(rig: &MvwRig, labels: &[usize]) -> Result<Congruence, Error> {
        let c = Self::from_mv_partition(rig.mv(), labels)?;
        for x in rig.elements() {
            for y in rig.elements().filter(|&y| c.related(x, y)) {
                for z in rig.elements() {
                    if !c.related(rig.mul(x, z), rig.mul(y, z)) || !c.related(rig.mul(z, x), rig.mul(z, y)) {
                        return Err(Error::NotACongruence { clause: "mul", witness: vec![x, y, z] });
                    }
                }
            }
        }
        Ok(c)
    }

    /// Like [`Congruence::from_partition`] without the product clause.
    pub fn from_mv_partition(mv: &MvAlgebra, labels: &[usize]) -> Result<Congruence, Error> {
        if labels.len() != mv.size() {
            return Err(Error::InvalidParameter(format!(
                "partition labels {} elements, carrier has {}",
                labels.len(),
                mv.size()
            )));
        }
        let mut class_of = Vec::with_capacity(labels.len());
        let mut seen: Vec<usize> = Vec::new();
        let mut reps = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            match seen.iter().position(|&s| s == l) {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(seen.len());
                    seen.push(l);
                    reps.push(x);
                }
            }
        }
        let c = Congruence { class_of, reps };
        let bad = |clause, witness| Err(Error::NotACongruence { clause, witness });
        for x in mv.elements() {
            for y in mv.elements().filter(|&y| c.related(x, y)) {
                if !c.related(mv.neg(x), mv.neg(y)) {
                    return bad("neg", vec![x, y]);
                }
                if let Some(z) = mv.elements().find(|&z| !c.related(mv.add(x, z), mv.add(y, z))) {
                    return bad("add", vec![x, y, z]);
                }
            }
        }
        for x in mv.elements() {
            for y in mv.elements() {
                if c.related(x, y) != c.related(distance(mv, x, y), 0) {
                    return bad("distance", vec![x, y]);
                }
            }
        }
        Ok(c)
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x]
    }

    /// The class index of every element; this is the projection onto the
    /// quotient.
    pub fn labels(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// Least element of class `c`.
    pub fn representative(&self, c: usize) -> Elem {
        self.reps[c]
    }

    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            out[c].push(x);
        }
        out
    }

    /// The class of 0.
    pub fn ideal(&self) -> ElemSet {
        ElemSet::from_elems(self.class_of.len(), (0..self.class_of.len()).filter(|&x| self.class_of[x] == 0))
    }
}

/// The quotient `A/I` with its projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRig {
    pub rig: MvwRig,
    pub ideal: ElemSet,
    pub congruence: Congruence,
}

impl QuotientRig {
    /// `x ↦ [x]`, as a value table.
    pub fn projection(&self) -> &[Elem] {
        self.congruence.labels()
    }
}

fn show_set(mv: &MvAlgebra, s: &ElemSet) -> String {
    let names: Vec<&str> = s.iter().map(|e| mv.elem_name(e)).collect();
    format!("{{{}}}", names.join(","))
}

fn quotient_tables(mv: &MvAlgebra, c: &Congruence) -> (Carrier, Vec<Elem>, Vec<Elem>) {
    let k = c.num_classes();
    let rep = |i| c.representative(i);
    let names = (0..k).map(|i| format!("[{}]", mv.elem_name(rep(i)))).collect();
    let neg = (0..k).map(|i| c.class_of(mv.neg(rep(i)))).collect();
    let mut add = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            add.push(c.class_of(mv.add(rep(i), rep(j))));
        }
    }
    (Carrier::new(names).expect("quotient of a nonempty carrier"), neg, add)
}

fn derive_error(e: DeriveError) -> Error {
    Error::Inconsistent(format!("quotient tables do not derive: {e}"))
}

/// `A/I` for an MV-ideal of an MV-algebra.
pub fn quotient_mv(mv: &MvAlgebra, ideal: &ElemSet) -> Result<(MvAlgebra, Congruence), Error> {
    if let Some(v) = check_mv_ideal(mv, ideal) {
        return Err(Error::NotAnIdeal(v));
    }
    let c = Congruence::from_ideal(mv, ideal);
    let (carrier, neg, add) = quotient_tables(mv, &c);
    let q = MvAlgebra::derive(format!("{}/{}", mv.name(), show_set(mv, ideal)), carrier, &neg, &add)
        .map_err(derive_error)?;
    Ok((q, c))
}

/// `A/I` with `¬[x] = [¬x]`, `[x] ⊕ [y] = [x ⊕ y]` and `[x][y] = [xy]`,
/// computed on class representatives.
pub fn quotient(rig: &MvwRig, ideal: &ElemSet) -> Result<QuotientRig, Error> {
    if let Some(v) = check_ideal(rig, ideal) {
        return Err(Error::NotAnIdeal(v));
    }
    let c = Congruence::from_ideal(rig.mv(), ideal);
    let (carrier, neg, add) = quotient_tables(rig.mv(), &c);
    let k = c.num_classes();
    let mut mul = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            mul.push(c.class_of(rig.mul(c.representative(i), c.representative(j))));
        }
    }
    let name = format!("{}/{}", rig.name(), show_set(rig.mv(), ideal));
    let q = MvwRig::derive(name, carrier, &neg, &add, &mul).map_err(derive_error)?;
    Ok(QuotientRig { rig: q, ideal: ideal.clone(), congruence: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_all;
    use crate::builders::{build_luk_mv, build_zn, direct_product, lift_trivial_product};
    use crate::ideals::enumerate_ideals;
    use crate::rig::Limits;

    #[test]
    fn identity_and_total_congruences() {
        let z3 = build_zn(3).unwrap();
        let id = Congruence::from_ideal(z3.mv(), &ElemSet::from_elems(4, [0]));
        assert_eq!(id.labels(), &[0, 1, 2, 3]);
        let all = Congruence::from_ideal(z3.mv(), &ElemSet::full(4));
        assert_eq!(all.num_classes(), 1);
    }

    #[test]
    fn round_trips_on_t3() {
        let t3 = lift_trivial_product(build_luk_mv(3).unwrap().mv()).unwrap();
        let c = Congruence::from_ideal(t3.mv(), &ElemSet::full(3));
        assert_eq!(c.num_classes(), 1);
        assert!(c.ideal().is_full());
    }

    #[test]
    fn bijection_round_trips() {
        let z1 = build_zn(1).unwrap();
        let z2 = build_zn(2).unwrap();
        let p = direct_product(&[&z1, &z2], &Limits::default()).unwrap();
        for i in enumerate_ideals(&p, &Limits::default()).unwrap() {
            let c = Congruence::from_ideal(p.mv(), &i);
            assert_eq!(c.ideal(), i);
            let again = Congruence::from_partition(&p, c.labels()).unwrap();
            assert_eq!(again, c);
        }
    }

    #[test]
    fn bad_partitions_are_rejected() {
        let z3 = build_zn(3).unwrap();
        // {0,1} {2,3}: ¬0 = 3 and ¬1 = 2 stay together, but 1 ⊕ 1 = 2 and 0 ⊕ 1 = 1 do not.
        let err = Congruence::from_partition(&z3, &[0, 0, 1, 1]).unwrap_err();
        assert_eq!(err, Error::NotACongruence { clause: "add", witness: vec![0, 1, 1] });
        assert!(matches!(
            Congruence::from_partition(&z3, &[0, 1, 2, 2]),
            Err(Error::NotACongruence { clause: "neg", witness }) if witness == vec![2, 3]
        ));
    }

    #[test]
    fn quotient_examples() {
        let z3 = build_zn(3).unwrap();
        let q = quotient(&z3, &ElemSet::from_elems(4, [0])).unwrap();
        assert_eq!(q.rig.add_table(), z3.add_table());
        assert_eq!(q.rig.mul_table(), z3.mul_table());
        assert_eq!(quotient(&z3, &ElemSet::full(4)).unwrap().rig.size(), 1);

        let z1 = build_zn(1).unwrap();
        let p = direct_product(&[&z1, &z1], &Limits::default()).unwrap();
        let q = quotient(&p, &ElemSet::from_elems(4, [0, 1])).unwrap();
        assert_eq!(q.rig.size(), 2);
        assert_eq!(q.rig.add_table(), z1.add_table());
        assert_eq!(q.rig.mul_table(), z1.mul_table());
        assert_eq!(q.projection(), &[0, 0, 1, 1]);
        assert!(check_all(&q.rig).passed());
        assert!(matches!(quotient(&z3, &ElemSet::from_elems(4, [0, 1])), Err(Error::NotAnIdeal(_))));
    }
}
