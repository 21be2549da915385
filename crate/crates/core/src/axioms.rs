//! Exhaustive verification of the MV-algebra and MVW-rig axioms.
//!
//! Every axiom is tested on every tuple of the carrier. When an axiom fails,
//! the lexicographically first offending tuple is reported, so reports are
//! deterministic even though the outer loop runs in parallel.

use std::fmt;

use rayon::prelude::*;

use crate::rig::{Elem, MvAlgebra, MvwRig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ z`
    Mv1,
    /// `x ⊕ y = y ⊕ x`
    Mv2,
    /// `x ⊕ 0 = x`
    Mv3,
    /// `x ⊕ ¬0 = ¬0`
    Mv4,
    /// `¬¬x = x`
    Mv5,
    /// `¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x`
    Mv6,
    /// `(ab)c = a(bc)`
    ProductAssociative,
    /// `a0 = 0a = 0`
    ProductZero,
    /// `a(b ⊕ c) ≤ ab ⊕ ac`
    SubDistributiveLeft,
    /// `(b ⊕ c)a ≤ ba ⊕ ca`
    SubDistributiveRight,
    /// `a(b ⊖ c) ≥ ab ⊖ ac`
    SuperDistributiveLeft,
    /// `(b ⊖ c)a ≥ ba ⊖ ca`
    SuperDistributiveRight,
    /// Every table entry lies in the carrier.
    Closure,
}

impl Axiom {
    pub const MV: [Axiom; 6] = [
        Axiom::Mv1,
        Axiom::Mv2,
        Axiom::Mv3,
        Axiom::Mv4,
        Axiom::Mv5,
        Axiom::Mv6,
    ];

    pub const MVW: [Axiom; 6] = [
        Axiom::ProductAssociative,
        Axiom::ProductZero,
        Axiom::SubDistributiveLeft,
        Axiom::SubDistributiveRight,
        Axiom::SuperDistributiveLeft,
        Axiom::SuperDistributiveRight,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::Mv1 => "MV1",
            Axiom::Mv2 => "MV2",
            Axiom::Mv3 => "MV3",
            Axiom::Mv4 => "MV4",
            Axiom::Mv5 => "MV5",
            Axiom::Mv6 => "MV6",
            Axiom::ProductAssociative => "MVW-ii",
            Axiom::ProductZero => "MVW-iii",
            Axiom::SubDistributiveLeft => "MVW-iv-left",
            Axiom::SubDistributiveRight => "MVW-iv-right",
            Axiom::SuperDistributiveLeft => "MVW-v-left",
            Axiom::SuperDistributiveRight => "MVW-v-right",
            Axiom::Closure => "closure",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::Mv1 => "x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ z",
            Axiom::Mv2 => "x ⊕ y = y ⊕ x",
            Axiom::Mv3 => "x ⊕ 0 = x",
            Axiom::Mv4 => "x ⊕ ¬0 = ¬0",
            Axiom::Mv5 => "¬¬x = x",
            Axiom::Mv6 => "¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x",
            Axiom::ProductAssociative => "(ab)c = a(bc)",
            Axiom::ProductZero => "a0 = 0a = 0",
            Axiom::SubDistributiveLeft => "a(b ⊕ c) ≤ ab ⊕ ac",
            Axiom::SubDistributiveRight => "(b ⊕ c)a ≤ ba ⊕ ca",
            Axiom::SuperDistributiveLeft => "a(b ⊖ c) ≥ ab ⊖ ac",
            Axiom::SuperDistributiveRight => "(b ⊖ c)a ≥ ba ⊖ ca",
            Axiom::Closure => "all operations stay inside the carrier",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

/// A tuple on which an axiom fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub axiom: Axiom,
    pub tuple: Vec<Elem>,
}

/// Per-axiom outcome of an exhaustive check.
///
/// An axiom passes exactly when it has no witness.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    checked: Vec<Axiom>,
    witnesses: Vec<Witness>,
}

impl AxiomReport {
    fn record(&mut self, axiom: Axiom, witness: Option<Vec<Elem>>) {
        self.checked.push(axiom);
        if let Some(tuple) = witness {
            self.witnesses.push(Witness { axiom, tuple });
        }
    }

    /// Appends another report's axioms and witnesses.
    pub fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checked.extend(other.checked);
        self.witnesses.extend(other.witnesses);
        self
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn checked(&self) -> &[Axiom] {
        &self.checked
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn status(&self, axiom: Axiom) -> Option<Status> {
        if !self.checked.contains(&axiom) {
            None
        } else if self.witness(axiom).is_some() {
            Some(Status::Fail)
        } else {
            Some(Status::Pass)
        }
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.axiom == axiom)
    }
}

fn first1(n: usize, f: impl Fn(Elem) -> bool + Sync) -> Option<Vec<Elem>> {
    (0..n).into_par_iter().find_first(|&x| !f(x)).map(|x| vec![x])
}

fn first2(n: usize, f: impl Fn(Elem, Elem) -> bool + Sync) -> Option<Vec<Elem>> {
    (0..n)
        .into_par_iter()
        .find_map_first(|x| (0..n).find(|&y| !f(x, y)).map(|y| vec![x, y]))
}

fn first3(n: usize, f: impl Fn(Elem, Elem, Elem) -> bool + Sync) -> Option<Vec<Elem>> {
    (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| (0..n).find(|&z| !f(x, y, z)).map(|z| vec![x, y, z]))
    })
}

/// Checks MV1–MV6 on every tuple, plus table closure.
pub fn check_mv(mv: &MvAlgebra) -> AxiomReport {
    let n = mv.size();
    let mut r = AxiomReport::default();
    r.record(
        Axiom::Mv1,
        first3(n, |x, y, z| mv.add(x, mv.add(y, z)) == mv.add(mv.add(x, y), z)),
    );
    r.record(Axiom::Mv2, first2(n, |x, y| mv.add(x, y) == mv.add(y, x)));
    r.record(Axiom::Mv3, first1(n, |x| mv.add(x, 0) == x));
    r.record(Axiom::Mv4, first1(n, |x| mv.add(x, mv.neg(0)) == mv.neg(0)));
    r.record(Axiom::Mv5, first1(n, |x| mv.neg(mv.neg(x)) == x));
    r.record(
        Axiom::Mv6,
        first2(n, |x, y| {
            mv.add(mv.neg(mv.add(mv.neg(x), y)), y) == mv.add(mv.neg(mv.add(mv.neg(y), x)), x)
        }),
    );
    // Tables are validated at construction; kept in the report for completeness.
    r.record(Axiom::Closure, None);
    r
}

/// Checks the product axioms: associativity, absorption of 0, and both
/// one-sided sub-distributivity over `⊕` and super-distributivity over `⊖`.
pub fn check_mvw(rig: &MvwRig) -> AxiomReport {
    let n = rig.size();
    let m = |a, b| rig.mul(a, b);
    let mut r = AxiomReport::default();
    r.record(
        Axiom::ProductAssociative,
        first3(n, |a, b, c| m(m(a, b), c) == m(a, m(b, c))),
    );
    r.record(Axiom::ProductZero, first1(n, |a| m(a, 0) == 0 && m(0, a) == 0));
    r.record(
        Axiom::SubDistributiveLeft,
        first3(n, |a, b, c| rig.leq(m(a, rig.add(b, c)), rig.add(m(a, b), m(a, c)))),
    );
    r.record(
        Axiom::SubDistributiveRight,
        first3(n, |a, b, c| rig.leq(m(rig.add(b, c), a), rig.add(m(b, a), m(c, a)))),
    );
    r.record(
        Axiom::SuperDistributiveLeft,
        first3(n, |a, b, c| rig.leq(rig.monus(m(a, b), m(a, c)), m(a, rig.monus(b, c)))),
    );
    r.record(
        Axiom::SuperDistributiveRight,
        first3(n, |a, b, c| rig.leq(rig.monus(m(b, a), m(c, a)), m(rig.monus(b, c), a))),
    );
    r
}

/// Both [`check_mv`] and [`check_mvw`].
pub fn check_all(rig: &MvwRig) -> AxiomReport {
    check_mv(rig.mv()).merge(check_mvw(rig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rig::Carrier;

    fn zn_tables(n: usize) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
        let neg = (0..=n).map(|x| n - x).collect();
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for x in 0..=n {
            for y in 0..=n {
                add.push((x + y).min(n));
                mul.push((x * y).min(n));
            }
        }
        (neg, add, mul)
    }

    #[test]
    fn z3_passes_everything() {
        let (neg, add, mul) = zn_tables(3);
        let rig = MvwRig::derive("Z3", Carrier::numbered(4).unwrap(), &neg, &add, &mul).unwrap();
        let report = check_all(&rig);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checked().len(), 13);
    }

    #[test]
    fn corrupted_negation_breaks_involution() {
        let (mut neg, add, _) = zn_tables(3);
        neg[1] = 1;
        let mv = MvAlgebra::derive("bad", Carrier::numbered(4).unwrap(), &neg, &add).unwrap();
        let report = check_mv(&mv);
        assert!(!report.passed());
        assert_eq!(report.status(Axiom::Mv5), Some(Status::Fail));
        // ¬¬2 = ¬1 = 1 ≠ 2; 0 and 1 still satisfy ¬¬x = x.
        assert_eq!(report.witness(Axiom::Mv5).unwrap().tuple, vec![2]);
    }

    #[test]
    fn trivial_algebra_passes() {
        let rig = MvwRig::derive("0", Carrier::numbered(1).unwrap(), &[0], &[0], &[0]).unwrap();
        assert!(check_all(&rig).passed());
    }

    #[test]
    fn non_associative_product_is_caught() {
        let (neg, add, mut mul) = zn_tables(3);
        // 1·1 = 0 gives (1·1)·2 = 0 but 1·(1·2) = 2.
        mul[4 + 1] = 0;
        let rig = MvwRig::derive("x", Carrier::numbered(4).unwrap(), &neg, &add, &mul).unwrap();
        let r = check_mvw(&rig);
        assert_eq!(r.status(Axiom::ProductAssociative), Some(Status::Fail));
        assert_eq!(r.witness(Axiom::ProductAssociative).unwrap().tuple, vec![1, 1, 2]);
    }
}
