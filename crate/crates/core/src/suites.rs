//! Named invariant checks, grouped into suites that can be run one by one
//! against any structure.
//!
//! Every check is exhaustive over the carrier. A check whose hypothesis
//! the structure does not meet (no product, not commutative, no unit)
//! reports [`Outcome::Skipped`] with the reason rather than passing.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::axioms::{check_mv, check_mvw, AxiomReport};
use crate::elemset::ElemSet;
use crate::error::Error;
use crate::ideals::{
    chang_embedding, check_homomorphism, classify_ideal, enumerate_homomorphisms, enumerate_ideals,
    enumerate_mv_ideals, first_iso, ideal_correspondence, ideal_product, is_ideal, is_mv_ideal, maximal_ideals,
    nilradical, prime_ideals, prime_witness, quotient, radical, radical_via_primes, Congruence, Homomorphism,
};
use crate::laws;
use crate::locale::{
    distributivity_violation, dotsum_closure, finite_subcover, frame, is_pfilter, pfilter_formula, pfilter_generated, pfilter_join,
    pfilter_meet, principal_pfilter, theta, FrameLA, THETA_MAX_CARRIER,
};
use crate::rig::{Elem, Limits, MvAlgebra, MvwRig, Structure};
use crate::spectrum::{
    base_law_violation, irreducible_iff_unique_maximal, is_topology, nilpotent_law_violation, radical_order_check,
    set_closure_violation, spec, specialization_violation, SpecSpace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Core,
    Ideals,
    Spectrum,
    Locale,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Core, Suite::Ideals, Suite::Spectrum, Suite::Locale];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Ideals => "ideals",
            Suite::Spectrum => "spectrum",
            Suite::Locale => "locale",
        }
    }

    /// `"all"` selects every suite.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().copied().find(|x| x.name() == s).map(|x| vec![x])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The law fails; the string names a witness.
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("PASS"),
            Outcome::Fail(w) => write!(f, "FAIL {w}"),
            Outcome::Skipped(r) => write!(f, "SKIPPED {r}"),
        }
    }
}

/// A named law with its statement.
#[derive(Clone, Copy)]
pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    pub statement: &'static str,
    run: fn(&Ctx<'_>) -> Outcome,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.suite, self.name)
    }
}

impl Check {
    pub fn run(&self, ctx: &Ctx<'_>) -> Outcome {
        (self.run)(ctx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub outcome: Outcome,
}

/// A structure plus lazily computed ideals, spectrum and frame shared by
/// the checks of one run.
pub struct Ctx<'a> {
    structure: &'a Structure,
    limits: Limits,
    ideals: OnceLock<Result<Vec<ElemSet>, Error>>,
    spec: OnceLock<Result<SpecSpace, Error>>,
    frame: OnceLock<Result<FrameLA, Error>>,
    endos: OnceLock<Vec<Vec<Elem>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(structure: &'a Structure, limits: Limits) -> Self {
        Ctx {
            structure,
            limits,
            ideals: OnceLock::new(),
            spec: OnceLock::new(),
            frame: OnceLock::new(),
            endos: OnceLock::new(),
        }
    }

    fn mv(&self) -> &MvAlgebra {
        self.structure.mv()
    }

    fn rig(&self) -> Result<&MvwRig, Outcome> {
        self.structure.rig().ok_or_else(|| Outcome::Skipped("no product".into()))
    }

    fn commutative(&self) -> Result<&MvwRig, Outcome> {
        let rig = self.rig()?;
        if rig.is_commutative() {
            Ok(rig)
        } else {
            Err(Outcome::Skipped("product is not commutative".into()))
        }
    }

    fn unital(&self) -> Result<&MvwRig, Outcome> {
        let rig = self.commutative()?;
        if rig.unit().is_some() {
            Ok(rig)
        } else {
            Err(Outcome::Skipped("no unit element".into()))
        }
    }

    /// Ideals of the rig, or MV-ideals when there is no product.
    fn ideals(&self) -> Result<&[ElemSet], Outcome> {
        self.ideals
            .get_or_init(|| match self.structure {
                Structure::Rig(r) => enumerate_ideals(r, &self.limits),
                Structure::Mv(m) => enumerate_mv_ideals(m, &self.limits),
            })
            .as_deref()
            .map_err(|e| Outcome::Skipped(e.to_string()))
    }

    fn spec(&self) -> Result<&SpecSpace, Outcome> {
        let rig = self.commutative()?;
        self.spec
            .get_or_init(|| spec(rig, &self.limits))
            .as_ref()
            .map_err(|e| Outcome::Skipped(e.to_string()))
    }

    fn frame(&self) -> Result<&FrameLA, Outcome> {
        let rig = self.rig()?;
        self.frame
            .get_or_init(|| frame(rig, &self.limits))
            .as_ref()
            .map_err(|e| Outcome::Skipped(e.to_string()))
    }

    /// Every endomorphism of the rig.
    fn endomorphisms(&self) -> Result<&[Vec<Elem>], Outcome> {
        let rig = self.rig()?;
        Ok(self.endos.get_or_init(|| enumerate_homomorphisms(rig, rig)))
    }

    fn show(&self, xs: &[Elem]) -> String {
        let names: Vec<&str> = xs.iter().map(|&x| self.mv().elem_name(x)).collect();
        format!("({})", names.join(", "))
    }

    fn show_set(&self, s: &ElemSet) -> String {
        let names: Vec<&str> = s.iter().map(|x| self.mv().elem_name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }

    fn law(&self, witness: Option<Vec<Elem>>) -> Outcome {
        match witness {
            None => Outcome::Pass,
            Some(w) => Outcome::Fail(self.show(&w)),
        }
    }

    fn report(&self, r: AxiomReport) -> Outcome {
        match r.witnesses().first() {
            None => Outcome::Pass,
            Some(w) => Outcome::Fail(format!("{} at {}", w.axiom, self.show(&w.tuple))),
        }
    }
}

/// Turns the `Err` side of a gate into the outcome to return.
macro_rules! gate {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(outcome) => return outcome,
        }
    };
}

/// Fails the check with a formatted witness when the condition is false.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Outcome::Fail(format!($($msg)+));
        }
    };
}

/// Unwraps a library result inside a check; an error is a failure of the
/// check, reported with its message.
macro_rules! tried {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    };
}

fn c(suite: Suite, name: &'static str, statement: &'static str, run: fn(&Ctx<'_>) -> Outcome) -> Check {
    Check { suite, name, statement, run }
}

/// Every check, in reporting order.
pub fn checks() -> Vec<Check> {
    use Suite::*;
    vec![
        c(Core, "mv-axioms", "MV1-MV6 hold for all tuples", core_mv_axioms),
        c(Core, "mvw-axioms", "product is associative, absorbs 0, sub-distributes over ⊕ and super-distributes over ⊖", core_mvw_axioms),
        c(Core, "lattice-order", "the ⊖-order is a bounded lattice with join ∨ and meet ∧", |x| x.law(laws::lattice_order(x.mv()))),
        c(Core, "residuation", "x ≤ y ⊕ z ⇔ x ⊖ z ≤ y", |x| x.law(laws::residuation(x.mv()))),
        c(Core, "monus-subadditive", "(x₁⊕x₂) ⊖ (y₁⊕y₂) ≤ (x₁⊖y₁) ⊕ (x₂⊖y₂)", |x| x.law(laws::monus_subadditive(x.mv()))),
        c(Core, "monus-subadditive-4", "(⊕ᵢxᵢ) ⊖ (⊕ᵢyᵢ) ≤ ⊕ᵢ(xᵢ⊖yᵢ) for up to 4 summands", |x| x.law(laws::monus_subadditive_nary(x.mv(), 4))),
        c(Core, "product-monotone", "a ≤ b ⇒ ac ≤ bc and ca ≤ cb", |x| x.law(laws::product_monotone(gate!(x.rig())))),
        c(Core, "product-over-join", "a(b∨c) ≥ ab ∨ ac", |x| x.law(laws::product_over_join(gate!(x.rig())))),
        c(Core, "product-over-meet", "a(b∧c) ≤ ab ∧ ac", |x| x.law(laws::product_over_meet(gate!(x.rig())))),
        c(Core, "power-over-join", "(a∨b)ⁿ ≥ aⁿ ∨ bⁿ for n ≤ 3", |x| x.law(laws::power_over_join(gate!(x.rig()), 3))),
        c(Core, "power-over-meet", "(a∧b)ⁿ ≤ aⁿ ∧ bⁿ for n ≤ 3", |x| x.law(laws::power_over_meet(gate!(x.rig()), 3))),
        c(Core, "unit-unique", "at most one element is a two-sided unit", core_unit_unique),
        c(Core, "derive-idempotent", "deriving the tables of a derived rig reproduces it", core_rederive),
        c(Ideals, "ideal-congruence", "I ↦ ≡_I ↦ [0] and ≡ ↦ [0] ↦ ≡_[0] are identities", ideals_congruence),
        c(Ideals, "quotient", "A/I satisfies the axioms and x ↦ [x] is a surjective homomorphism with kernel I", ideals_quotient),
        c(Ideals, "first-isomorphism", "A/ker f ≅ f(A) for every endomorphism and every projection", ideals_first_iso),
        c(Ideals, "order-kernel", "f(x) ≤ f(y) ⇔ x ⊖ y ∈ ker f for every endomorphism", ideals_order_kernel),
        c(Ideals, "prime-preimage", "the preimage of a proper prime under an endomorphism is a proper prime", ideals_prime_preimage),
        c(Ideals, "correspondence", "ideals J ⊇ I match the ideals of A/I, preserving inclusion", ideals_correspondence),
        c(Ideals, "maximal-prime", "every maximal ideal is prime (commutative, unital)", ideals_maximal_prime),
        c(Ideals, "nilradical", "N is an ideal inside every proper prime, equals their intersection, and A/N has no nonzero nilpotents", ideals_nilradical),
        c(Ideals, "radical", "I ⊆ √I, √ is monotone, √P = P for primes, √(I∩J) = √(IJ), √I = ⋂{P ⊇ I}", ideals_radical),
        c(Ideals, "prime-mv-prime", "when ab ≤ a∧b everywhere, prime ideals are MV-prime", ideals_prime_mv_prime),
        c(Ideals, "chang", "A embeds in the product of its quotients by MV-prime ideals, each a chain", ideals_chang),
        c(Spectrum, "base-laws", "V(a)∩V(b) = V(a⊕b) = V(a∨b), V(a)∪V(b) = V(ab), V(ab) ⊆ V(a∧b)", spectrum_base),
        c(Spectrum, "nilpotent-open", "V(a) = Spec A ⇔ a is nilpotent", spectrum_nilpotent),
        c(Spectrum, "topology", "opens contain ∅ and Spec A and are closed under ∪ and ∩", spectrum_topology),
        c(Spectrum, "t0", "distinct points are separated by an open set", spectrum_t0),
        c(Spectrum, "specialization", "Q ∈ closure{P} ⇔ Q ⊆ P", spectrum_specialization),
        c(Spectrum, "set-closure", "closure(U) contains everything below U, exactly so when U has one maximal point", spectrum_set_closure),
        c(Spectrum, "irreducible", "Spec A is irreducible ⇔ A has exactly one maximal ideal (unital)", spectrum_irreducible),
        c(Spectrum, "radical-order", "V(a) ⊆ V(b) ⇔ √⟨b⟩ ⊆ √⟨a⟩", spectrum_radical_order),
        c(Spectrum, "compact", "every cover by basic opens has a finite subcover whose P-filters join to A (unital)", spectrum_compact),
        c(Locale, "pfilter-formula", "⟨S⟩_P = {x : s₁⋯sₙ ≤ ⊕ᵢbᵢx} for every seed of one or two elements", locale_formula),
        c(Locale, "pfilter-union", "every P-filter is the union of the principal P-filters of its members", locale_union),
        c(Locale, "pfilter-meet", "the meet of two P-filters is a P-filter", locale_meet),
        c(Locale, "principal-meet", "F_a ∩ F_b = F_{a∨b}", locale_principal_meet),
        c(Locale, "principal-join", "F_a ∨ F_b = F_{ab}", locale_principal_join),
        c(Locale, "mixed-exponents", "⟨F_a ∪ F_b⟩ = {x : a^m b^n ≤ ⊕ᵢbᵢx for some m, n ≥ 1}", locale_mixed),
        c(Locale, "distributive", "F ∧ ⋁ F_aᵢ = ⋁ (F ∧ F_aᵢ) for every P-filter and every family of principal P-filters", locale_distributive),
        c(Locale, "theta", "V(a) ↦ F_a extends to a lattice isomorphism O(Spec A) ≅ L_A (commutative, unital)", locale_theta),
    ]
}

pub fn checks_in(suites: &[Suite]) -> Vec<Check> {
    checks().into_iter().filter(|c| suites.contains(&c.suite)).collect()
}

/// Runs the selected suites in parallel; results come back in the order
/// of [`checks`].
pub fn run(structure: &Structure, suites: &[Suite], limits: &Limits) -> Vec<CheckResult> {
    let ctx = Ctx::new(structure, *limits);
    checks_in(suites)
        .par_iter()
        .map(|c| CheckResult { suite: c.suite, name: c.name, outcome: c.run(&ctx) })
        .collect()
}

fn core_mv_axioms(x: &Ctx<'_>) -> Outcome {
    x.report(check_mv(x.mv()))
}

fn core_mvw_axioms(x: &Ctx<'_>) -> Outcome {
    x.report(check_mvw(gate!(x.rig())))
}

fn core_unit_unique(x: &Ctx<'_>) -> Outcome {
    let units = laws::units(gate!(x.rig()));
    ensure!(units.len() <= 1, "units {}", x.show(&units));
    Outcome::Pass
}

fn core_rederive(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let again = tried!(rig.rederive());
    ensure!(&again == rig, "re-derived tables differ");
    Outcome::Pass
}

/// Restricted growth strings of length `n`: every partition once.
fn partitions(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn go(labels: &mut Vec<usize>, n: usize, max: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if labels.len() == n {
            return f(labels);
        }
        for l in 0..=max + 1 {
            labels.push(l);
            let next = if l > max { l } else { max };
            let go_on = go(labels, n, next, f);
            labels.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if n == 0 {
        return;
    }
    let mut labels = vec![0];
    go(&mut labels, n, 0, &mut f);
}

/// Largest carrier whose partitions are all enumerated (Bell(9) = 21147).
const PARTITION_MAX: usize = 9;

fn ideals_congruence(x: &Ctx<'_>) -> Outcome {
    let mv = x.mv();
    for i in gate!(x.ideals()) {
        let c = Congruence::from_ideal(mv, i);
        let checked = match x.structure {
            Structure::Rig(r) => Congruence::from_partition(r, c.labels()),
            Structure::Mv(_) => Congruence::from_mv_partition(mv, c.labels()),
        };
        ensure!(checked.is_ok(), "≡ of {} is not a congruence: {}", x.show_set(i), checked.unwrap_err());
        ensure!(&c.ideal() == i, "[0] of ≡_I differs from I = {}", x.show_set(i));
    }
    if mv.size() > PARTITION_MAX {
        return Outcome::Pass;
    }
    let mut bad = None;
    partitions(mv.size(), |labels| {
        let c = match x.structure {
            Structure::Rig(r) => Congruence::from_partition(r, labels),
            Structure::Mv(_) => Congruence::from_mv_partition(mv, labels),
        };
        if let Ok(c) = c {
            let i = c.ideal();
            let is_i = match x.structure {
                Structure::Rig(r) => is_ideal(r, &i),
                Structure::Mv(_) => is_mv_ideal(mv, &i),
            };
            if !is_i || Congruence::from_ideal(mv, &i) != c {
                bad = Some(labels.to_vec());
                return false;
            }
        }
        true
    });
    ensure!(bad.is_none(), "congruence with labels {:?} does not round-trip", bad.unwrap_or_default());
    Outcome::Pass
}

fn ideals_quotient(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for i in gate!(x.ideals()) {
        let q = tried!(quotient(rig, i));
        let r = check_mv(q.rig.mv()).merge(check_mvw(&q.rig));
        ensure!(r.passed(), "A/{} fails {}", x.show_set(i), r.witnesses()[0].axiom);
        let proj = q.projection();
        tried!(check_homomorphism(rig, &q.rig, proj));
        let hit = ElemSet::from_elems(q.rig.size(), proj.iter().copied());
        ensure!(hit.is_full(), "projection onto A/{} is not surjective", x.show_set(i));
        let kernel = ElemSet::from_elems(rig.size(), rig.elements().filter(|&a| proj[a] == 0));
        ensure!(&kernel == i, "kernel of A → A/{} is {}", x.show_set(i), x.show_set(&kernel));
    }
    Outcome::Pass
}

fn ideals_first_iso(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for map in gate!(x.endomorphisms()) {
        let f = tried!(Homomorphism::new(rig, rig, map.clone()));
        ensure!(first_iso(&f).is_ok(), "fails for f = {}", x.show(map));
    }
    for i in gate!(x.ideals()) {
        let q = tried!(quotient(rig, i));
        let f = tried!(Homomorphism::new(rig, &q.rig, q.projection().to_vec()));
        let fi = tried!(first_iso(&f));
        ensure!(fi.image.size() == q.rig.size(), "projection onto A/{}", x.show_set(i));
    }
    Outcome::Pass
}

fn ideals_order_kernel(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for map in gate!(x.endomorphisms()) {
        let ker = ElemSet::from_elems(rig.size(), rig.elements().filter(|&a| map[a] == 0));
        for a in rig.elements() {
            for b in rig.elements() {
                ensure!(
                    rig.leq(map[a], map[b]) == ker.contains(rig.monus(a, b)),
                    "f = {} at {}",
                    x.show(map),
                    x.show(&[a, b])
                );
            }
        }
    }
    Outcome::Pass
}

fn ideals_prime_preimage(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let primes = tried!(prime_ideals(rig, &x.limits));
    for map in gate!(x.endomorphisms()) {
        for p in &primes {
            let pre = crate::ideals::preimage(map, p);
            ensure!(
                !pre.is_full() && prime_witness(rig, &pre).is_none(),
                "f = {}, P = {}",
                x.show(map),
                x.show_set(p)
            );
        }
    }
    Outcome::Pass
}

fn ideals_correspondence(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for i in gate!(x.ideals()) {
        ensure!(ideal_correspondence(rig, i, &x.limits).is_ok(), "I = {}", x.show_set(i));
    }
    Outcome::Pass
}

fn ideals_maximal_prime(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.unital());
    let maximal = match maximal_ideals(rig, &x.limits) {
        Ok(m) => m,
        Err(Error::Trivial) => return Outcome::Skipped("one-element rig".into()),
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    for m in &maximal {
        ensure!(prime_witness(rig, m).is_none(), "M = {}", x.show_set(m));
    }
    Outcome::Pass
}

fn ideals_nilradical(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.commutative());
    let n = tried!(nilradical(rig));
    ensure!(is_ideal(rig, &n), "N = {} is not an ideal", x.show_set(&n));
    let primes = tried!(prime_ideals(rig, &x.limits));
    let meet = primes.iter().fold(ElemSet::full(rig.size()), |acc, p| acc.intersection(p));
    ensure!(n == meet, "N = {} but ⋂ primes = {}", x.show_set(&n), x.show_set(&meet));
    let q = tried!(quotient(rig, &n));
    let bad = q.rig.elements().find(|&c| c != 0 && crate::ideals::is_nilpotent(&q.rig, c));
    ensure!(bad.is_none(), "A/N has the nonzero nilpotent {}", q.rig.elem_name(bad.unwrap_or_default()));
    Outcome::Pass
}

fn ideals_radical(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.commutative());
    let ideals = gate!(x.ideals());
    let mut rad = Vec::with_capacity(ideals.len());
    for i in ideals {
        let r = tried!(radical(rig, i));
        ensure!(i.is_subset(&r), "I ⊄ √I for I = {}", x.show_set(i));
        if !i.is_full() && prime_witness(rig, i).is_none() {
            ensure!(&r == i, "√P ≠ P for P = {}", x.show_set(i));
        }
        let via = tried!(radical_via_primes(rig, i, &x.limits));
        ensure!(r == via, "√I = {} but ⋂{{P ⊇ I}} = {} for I = {}", x.show_set(&r), x.show_set(&via), x.show_set(i));
        rad.push(r);
    }
    for (a, i) in ideals.iter().enumerate() {
        for (b, j) in ideals.iter().enumerate() {
            if i.is_subset(j) {
                ensure!(rad[a].is_subset(&rad[b]), "√ not monotone at {} ⊆ {}", x.show_set(i), x.show_set(j));
            }
            let meet = tried!(radical(rig, &i.intersection(j)));
            let prod = tried!(radical(rig, &tried!(ideal_product(rig, i, j))));
            ensure!(meet == prod, "√(I∩J) ≠ √(IJ) for I = {}, J = {}", x.show_set(i), x.show_set(j));
        }
    }
    Outcome::Pass
}

fn ideals_prime_mv_prime(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    if !rig.flags().product_below_meet {
        return Outcome::Skipped("ab ≤ a∧b does not hold everywhere".into());
    }
    for i in gate!(x.ideals()) {
        let cl = classify_ideal(rig, i);
        ensure!(!cl.prime || cl.mv_prime, "P = {}", x.show_set(i));
    }
    Outcome::Pass
}

fn ideals_chang(x: &Ctx<'_>) -> Outcome {
    match chang_embedding(x.mv(), &x.limits) {
        Ok(_) => Outcome::Pass,
        Err(Error::Trivial) => Outcome::Skipped("one-element algebra".into()),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn spectrum_base(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.commutative());
    match base_law_violation(rig, gate!(x.spec())) {
        None => Outcome::Pass,
        Some((law, a, b)) => Outcome::Fail(format!("{law} at {}", x.show(&[a, b]))),
    }
}

fn spectrum_nilpotent(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.commutative());
    x.law(nilpotent_law_violation(rig, gate!(x.spec())).map(|a| vec![a]))
}

fn spectrum_topology(x: &Ctx<'_>) -> Outcome {
    ensure!(is_topology(gate!(x.spec())), "opens are not a topology");
    Outcome::Pass
}

fn spectrum_t0(x: &Ctx<'_>) -> Outcome {
    match gate!(x.spec()).t0_witness() {
        None => Outcome::Pass,
        Some((p, q)) => Outcome::Fail(format!("points {p} and {q} are not separated")),
    }
}

fn spectrum_specialization(x: &Ctx<'_>) -> Outcome {
    match specialization_violation(gate!(x.spec())) {
        None => Outcome::Pass,
        Some((q, p)) => Outcome::Fail(format!("Q = point {q}, P = point {p}")),
    }
}

fn spectrum_set_closure(x: &Ctx<'_>) -> Outcome {
    let s = gate!(x.spec());
    if s.num_points() > 16 {
        return Outcome::Skipped(format!("{} points", s.num_points()));
    }
    match set_closure_violation(s) {
        None => Outcome::Pass,
        Some(u) => Outcome::Fail(format!("U = points {:?}", u.to_vec())),
    }
}

fn spectrum_irreducible(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.unital());
    match tried!(irreducible_iff_unique_maximal(rig, gate!(x.spec()), &x.limits)) {
        None => Outcome::Skipped("one-element rig".into()),
        Some(true) => Outcome::Pass,
        Some(false) => Outcome::Fail("irreducibility and the number of maximal ideals disagree".into()),
    }
}

fn spectrum_radical_order(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.commutative());
    let s = gate!(x.spec());
    for a in rig.elements() {
        for b in rig.elements() {
            let (top, alg) = tried!(radical_order_check(rig, s, a, b));
            ensure!(top == alg, "at {}", x.show(&[a, b]));
        }
    }
    Outcome::Pass
}

/// Largest number of distinct basic opens whose families are enumerated.
const COVER_MAX_OPENS: usize = 16;

fn spectrum_compact(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.unital());
    let s = gate!(x.spec());
    let mut opens: Vec<&ElemSet> = s.base().iter().collect();
    opens.sort();
    opens.dedup();
    if opens.len() > COVER_MAX_OPENS {
        return Outcome::Skipped(format!("{} distinct basic opens", opens.len()));
    }
    // Each family of basic opens, presented by every element naming one of them.
    for mask in 0u32..(1 << opens.len()) {
        let chosen: Vec<&ElemSet> = (0..opens.len()).filter(|&i| mask & (1 << i) != 0).map(|i| opens[i]).collect();
        let union = chosen.iter().fold(ElemSet::empty(s.num_points()), |acc, u| acc.union(u));
        if !union.is_full() {
            continue;
        }
        let gens: Vec<Elem> = rig.elements().filter(|&a| chosen.contains(&s.basic_open(a))).collect();
        let sub = tried!(finite_subcover(rig, &gens));
        ensure!(sub.iter().all(|g| gens.contains(g)), "subcover {} leaves the family", x.show(&sub));
        let covers = sub.iter().fold(ElemSet::empty(s.num_points()), |acc, &g| acc.union(s.basic_open(g)));
        ensure!(covers.is_full(), "subcover {} misses a point", x.show(&sub));
        let joined = if sub.is_empty() {
            crate::locale::least_pfilter(rig)
        } else {
            tried!(pfilter_generated(rig, &sub))
        };
        ensure!(joined.is_full(), "P-filters of {} join to a proper filter", x.show(&sub));
    }
    Outcome::Pass
}

fn locale_formula(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for a in rig.elements() {
        for b in a..rig.size() {
            let seed = [a, b];
            let closed = tried!(pfilter_generated(rig, &seed));
            let formula = tried!(pfilter_formula(rig, &seed));
            ensure!(
                closed == formula,
                "S = {}: closure {}, formula {}",
                x.show(&seed),
                x.show_set(&closed),
                x.show_set(&formula)
            );
        }
    }
    Outcome::Pass
}

fn locale_union(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    for f in gate!(x.frame()).filters() {
        let u = f.iter().fold(ElemSet::empty(rig.size()), |acc, a| acc.union(&principal_pfilter(rig, a)));
        ensure!(&u == f, "F = {}", x.show_set(f));
    }
    Outcome::Pass
}

fn locale_meet(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let fs = gate!(x.frame()).filters();
    for f in fs {
        for g in fs {
            let m = pfilter_meet(f, g);
            ensure!(is_pfilter(rig, &m), "F = {}, G = {}", x.show_set(f), x.show_set(g));
        }
    }
    Outcome::Pass
}

fn locale_principal_meet(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let fa: Vec<ElemSet> = rig.elements().map(|a| principal_pfilter(rig, a)).collect();
    for a in rig.elements() {
        for b in rig.elements() {
            ensure!(fa[a].intersection(&fa[b]) == fa[rig.join(a, b)], "at {}", x.show(&[a, b]));
        }
    }
    Outcome::Pass
}

fn locale_principal_join(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let fa: Vec<ElemSet> = rig.elements().map(|a| principal_pfilter(rig, a)).collect();
    for a in rig.elements() {
        for b in rig.elements() {
            let j = tried!(pfilter_join(rig, &fa[a], &fa[b]));
            ensure!(j == fa[rig.mul(a, b)], "at {}", x.show(&[a, b]));
        }
    }
    Outcome::Pass
}

fn locale_mixed(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.rig());
    let dotsums: Vec<ElemSet> = rig.elements().map(|y| dotsum_closure(rig, y)).collect();
    let fa: Vec<ElemSet> = rig.elements().map(|a| principal_pfilter(rig, a)).collect();
    for a in rig.elements() {
        for b in rig.elements() {
            let pa = rig.powers(a);
            let pb = rig.powers(b);
            let words: Vec<Elem> = pa.iter().flat_map(|&p| pb.iter().map(move |&q| rig.mul(p, q))).collect();
            let described = ElemSet::from_elems(
                rig.size(),
                rig.elements()
                    .filter(|&y| words.iter().any(|&w| dotsums[y].iter().any(|d| rig.leq(w, d)))),
            );
            let j = tried!(pfilter_join(rig, &fa[a], &fa[b]));
            ensure!(
                described == j,
                "at {}: description gives {}, join is {}",
                x.show(&[a, b]),
                x.show_set(&described),
                x.show_set(&j)
            );
        }
    }
    Outcome::Pass
}

fn locale_distributive(x: &Ctx<'_>) -> Outcome {
    let fr = gate!(x.frame());
    if fr.distinct_principals().len() > 20 {
        return Outcome::Skipped(format!("{} distinct principal P-filters", fr.distinct_principals().len()));
    }
    match distributivity_violation(fr) {
        None => Outcome::Pass,
        Some((f, family)) => Outcome::Fail(format!(
            "F = {} against {:?}",
            x.show_set(&fr.filters()[f]),
            family.iter().map(|&i| x.show_set(&fr.filters()[i])).collect::<Vec<_>>()
        )),
    }
}

fn locale_theta(x: &Ctx<'_>) -> Outcome {
    let rig = gate!(x.unital());
    if rig.size() > THETA_MAX_CARRIER {
        return Outcome::Skipped(format!("carrier of {} elements", rig.size()));
    }
    let s = gate!(x.spec());
    let fr = gate!(x.frame());
    ensure!(fr.len() == s.opens().len(), "|L_A| = {} but |O(Spec A)| = {}", fr.len(), s.opens().len());
    tried!(theta(rig, s, fr));
    Outcome::Pass
}
