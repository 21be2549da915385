//! Finite MV-algebras and MVW-rigs represented by operation tables.
//!
//! Elements are indices `0..size`. Index 0 is always the zero of the
//! algebra. Only `¬`, `⊕` and (for rigs) `·` are supplied by the caller;
//! everything else is derived once and cached:
//!
//! * `u = ¬0`
//! * `x ⊙ y = ¬(¬x ⊕ ¬y)`
//! * `x ⊖ y = ¬(¬x ⊕ y)`
//! * `x ≤ y` iff `x ⊖ y = 0`
//! * `x ∨ y = (x ⊖ y) ⊕ y` and `x ∧ y = ¬(¬x ∨ ¬y)`
//!
//! Derived structures are immutable, so they can be shared freely between
//! threads.

use std::ops::Deref;

use crate::error::{DeriveError, Error};

/// An element of a finite carrier, identified by its index.
pub type Elem = usize;

/// Cell type of the stored tables. Carriers are limited to `u16` range.
type Cell = u16;

const MAX_CARRIER: usize = Cell::MAX as usize + 1;

/// Default cap on constructed carriers (matrix and product builders,
/// enumeration routines). Exhaustive checks are cubic in the carrier size.
pub const DEFAULT_SIZE_BOUND: usize = 4096;

/// Environment variable that overrides [`DEFAULT_SIZE_BOUND`].
pub const SIZE_BOUND_ENV: &str = "MVW_SIZE_BOUND";

/// Resource bounds for builders and enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier a builder may produce.
    pub max_carrier: usize,
    /// Largest carrier whose P-filters are enumerated by subset search.
    pub max_frame_carrier: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_carrier: DEFAULT_SIZE_BOUND,
            max_frame_carrier: 64,
        }
    }
}

impl Limits {
    /// Defaults, with `max_carrier` taken from `MVW_SIZE_BOUND` when set.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(bound) = std::env::var(SIZE_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.max_carrier = bound;
        }
        limits
    }

    pub fn check_carrier(&self, size: usize) -> Result<(), Error> {
        if size > self.max_carrier {
            Err(Error::SizeBound {
                size,
                bound: self.max_carrier,
            })
        } else {
            Ok(())
        }
    }
}

/// Display names for the elements of a carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    names: Vec<String>,
}

impl Carrier {
    pub fn new(names: Vec<String>) -> Result<Self, DeriveError> {
        if names.is_empty() {
            return Err(DeriveError::EmptyCarrier);
        }
        if names.len() > MAX_CARRIER {
            return Err(DeriveError::CarrierTooLarge(names.len()));
        }
        Ok(Self { names })
    }

    /// Carrier `{0, 1, …, size-1}` named by the decimal indices.
    pub fn numbered(size: usize) -> Result<Self, DeriveError> {
        Self::new((0..size).map(|i| i.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Index of the element with the given display name.
    pub fn find(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|n| n == name)
    }
}

fn check_unary(table: &'static str, t: &[Elem], n: usize) -> Result<Vec<Cell>, DeriveError> {
    if t.len() != n {
        return Err(DeriveError::TableShape {
            table,
            expected: n,
            found: t.len(),
        });
    }
    t.iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < n {
                Ok(v as Cell)
            } else {
                Err(DeriveError::EntryOutOfRange {
                    table,
                    at: vec![i],
                    value: v,
                    size: n,
                })
            }
        })
        .collect()
}

fn check_binary(table: &'static str, t: &[Elem], n: usize) -> Result<Vec<Cell>, DeriveError> {
    if t.len() != n * n {
        return Err(DeriveError::TableShape {
            table,
            expected: n * n,
            found: t.len(),
        });
    }
    t.iter()
        .enumerate()
        .map(|(i, &v)| {
            if v < n {
                Ok(v as Cell)
            } else {
                Err(DeriveError::EntryOutOfRange {
                    table,
                    at: vec![i / n, i % n],
                    value: v,
                    size: n,
                })
            }
        })
        .collect()
}

/// A finite MV-algebra `(A, ⊕, ¬, 0)` with all derived tables.
///
/// Construction only guarantees that the tables are total and that the
/// `⊖`-induced relation is antisymmetric; whether the MV axioms hold is
/// decided by [`crate::axioms::check_mv`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvAlgebra {
    name: String,
    carrier: Carrier,
    neg: Vec<Cell>,
    add: Vec<Cell>,
    monus: Vec<Cell>,
    times: Vec<Cell>,
    join: Vec<Cell>,
    meet: Vec<Cell>,
}

impl MvAlgebra {
    /// Derives an MV-algebra from its negation and (row-major, flattened)
    /// sum tables. Element 0 is the zero.
    pub fn derive(
        name: impl Into<String>,
        carrier: Carrier,
        neg: &[Elem],
        add: &[Elem],
    ) -> Result<Self, DeriveError> {
        let n = carrier.size();
        let neg = check_unary("neg", neg, n)?;
        let add = check_binary("add", add, n)?;

        let ng = |x: usize| neg[x] as usize;
        let ad = |x: usize, y: usize| add[x * n + y] as usize;

        let mut monus = vec![0; n * n];
        let mut times = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                monus[x * n + y] = ng(ad(ng(x), y)) as Cell;
                times[x * n + y] = ng(ad(ng(x), ng(y))) as Cell;
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if monus[x * n + y] == 0 && monus[y * n + x] == 0 {
                    return Err(DeriveError::OrderNotAntisymmetric(x, y));
                }
            }
        }
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                join[x * n + y] = ad(monus[x * n + y] as usize, y) as Cell;
            }
        }
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = ng(join[ng(x) * n + ng(y)] as usize) as Cell;
            }
        }
        Ok(Self {
            name: name.into(),
            carrier,
            neg,
            add,
            monus,
            times,
            join,
            meet,
        })
    }

    /// Builds the tables by evaluating `neg` and `add` on every input.
    pub fn from_fns(
        name: impl Into<String>,
        carrier: Carrier,
        neg: impl Fn(Elem) -> Elem,
        add: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, DeriveError> {
        let n = carrier.size();
        let neg: Vec<Elem> = (0..n).map(neg).collect();
        let add = tabulate(n, add);
        Self::derive(name, carrier, &neg, &add)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn elem_name(&self, e: Elem) -> &str {
        self.carrier.name(e)
    }

    /// Checks that `e` is a valid index.
    pub fn elem(&self, e: Elem) -> Result<Elem, Error> {
        if e < self.size() {
            Ok(e)
        } else {
            Err(Error::ElementOutOfRange(e))
        }
    }

    pub fn zero(&self) -> Elem {
        0
    }

    /// The top element `u = ¬0`.
    pub fn top(&self) -> Elem {
        self.neg(0)
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x] as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.size() + y] as Elem
    }

    #[inline]
    pub fn monus(&self, x: Elem, y: Elem) -> Elem {
        self.monus[x * self.size() + y] as Elem
    }

    #[inline]
    pub fn times_mv(&self, x: Elem, y: Elem) -> Elem {
        self.times[x * self.size() + y] as Elem
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size() + y] as Elem
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size() + y] as Elem
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.monus(x, y) == 0
    }

    /// `⊕` folded over a slice; the empty sum is 0.
    pub fn sum(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.add(acc, x))
    }

    pub fn neg_table(&self) -> Vec<Elem> {
        self.neg.iter().map(|&v| v as Elem).collect()
    }

    /// Row-major flattened `⊕` table.
    pub fn add_table(&self) -> Vec<Elem> {
        self.add.iter().map(|&v| v as Elem).collect()
    }

    /// Whether the order is total.
    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.leq(x, y) || self.leq(y, x)))
    }
}

/// Structural facts about a rig's product, computed by exhaustive scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub commutative: bool,
    /// The element `s` with `sx = xs = x` for all `x`, when one exists.
    pub unit: Option<Elem>,
    /// Whether `ab ≤ a ∧ b` for all `a, b`.
    pub product_below_meet: bool,
    pub top: Elem,
}

/// A finite MVW-rig: an MV-algebra together with a product table.
///
/// Dereferences to its underlying [`MvAlgebra`], so all lattice and
/// MV accessors are available directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvwRig {
    mv: MvAlgebra,
    mul: Vec<Cell>,
    flags: Flags,
}

impl Deref for MvwRig {
    type Target = MvAlgebra;

    fn deref(&self) -> &MvAlgebra {
        &self.mv
    }
}

impl MvwRig {
    pub fn derive(
        name: impl Into<String>,
        carrier: Carrier,
        neg: &[Elem],
        add: &[Elem],
        mul: &[Elem],
    ) -> Result<Self, DeriveError> {
        let mv = MvAlgebra::derive(name, carrier, neg, add)?;
        Self::with_product(mv, mul)
    }

    /// Attaches a product table to an MV-algebra.
    pub fn with_product(mv: MvAlgebra, mul: &[Elem]) -> Result<Self, DeriveError> {
        let mul = check_binary("mul", mul, mv.size())?;
        let mut rig = Self {
            mv,
            mul,
            flags: Flags {
                commutative: true,
                unit: None,
                product_below_meet: true,
                top: 0,
            },
        };
        rig.flags = structural_flags(&rig);
        Ok(rig)
    }

    pub fn from_fns(
        name: impl Into<String>,
        carrier: Carrier,
        neg: impl Fn(Elem) -> Elem,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, DeriveError> {
        let n = carrier.size();
        let mul = tabulate(n, mul);
        let mv = MvAlgebra::from_fns(name, carrier, neg, add)?;
        Self::with_product(mv, &mul)
    }

    /// Rebuilds the rig from its own base tables. The result is always equal
    /// to `self`.
    pub fn rederive(&self) -> Result<Self, DeriveError> {
        Self::derive(
            self.name(),
            self.carrier().clone(),
            &self.neg_table(),
            &self.add_table(),
            &self.mul_table(),
        )
    }

    pub fn mv(&self) -> &MvAlgebra {
        &self.mv
    }

    pub fn into_mv(self) -> MvAlgebra {
        self.mv
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.mv.set_name(name);
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.set_name(name);
        self
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.size() + y] as Elem
    }

    /// Row-major flattened product table.
    pub fn mul_table(&self) -> Vec<Elem> {
        self.mul.iter().map(|&v| v as Elem).collect()
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_commutative(&self) -> bool {
        self.flags.commutative
    }

    pub fn unit(&self) -> Option<Elem> {
        self.flags.unit
    }

    /// `aⁿ`, the left-associated `n`-fold product. `n = 0` is rejected since
    /// the rig may have no unit.
    pub fn power(&self, a: Elem, n: usize) -> Result<Elem, Error> {
        self.elem(a)?;
        if n == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(self.power_unchecked(a, n))
    }

    pub(crate) fn power_unchecked(&self, a: Elem, n: usize) -> Elem {
        (1..n).fold(a, |acc, _| self.mul(acc, a))
    }

    /// The distinct values of `a, a², a³, …`. The sequence is eventually
    /// periodic within `size` steps, so this lists every power of `a`.
    pub fn powers(&self, a: Elem) -> Vec<Elem> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        let mut p = a;
        for _ in 0..self.size() {
            if !seen[p] {
                seen[p] = true;
                out.push(p);
            }
            p = self.mul(p, a);
        }
        out
    }

    /// Left-associated product of a nonempty list.
    pub fn product(&self, xs: &[Elem]) -> Option<Elem> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &x| self.mul(acc, x)))
    }
}

/// Scans the product table for commutativity, a unit and `ab ≤ a ∧ b`.
pub fn structural_flags(rig: &MvwRig) -> Flags {
    let elems = rig.elements();
    let commutative = elems
        .clone()
        .all(|x| (x..rig.size()).all(|y| rig.mul(x, y) == rig.mul(y, x)));
    // Two units s, w would satisfy s = sw = w, so the first hit is the only one.
    let unit = elems
        .clone()
        .find(|&s| rig.elements().all(|x| rig.mul(s, x) == x && rig.mul(x, s) == x));
    let product_below_meet = elems
        .clone()
        .all(|a| rig.elements().all(|b| rig.leq(rig.mul(a, b), rig.meet(a, b))));
    Flags {
        commutative,
        unit,
        product_below_meet,
        top: rig.top(),
    }
}

/// Evaluates a binary function into a flattened row-major table.
pub(crate) fn tabulate(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    let mut t = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            t.push(f(x, y));
        }
    }
    t
}

/// Either an MV-algebra without product or a full MVW-rig.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Mv(MvAlgebra),
    Rig(MvwRig),
}

impl Structure {
    pub fn mv(&self) -> &MvAlgebra {
        match self {
            Structure::Mv(mv) => mv,
            Structure::Rig(rig) => rig.mv(),
        }
    }

    pub fn rig(&self) -> Option<&MvwRig> {
        match self {
            Structure::Mv(_) => None,
            Structure::Rig(rig) => Some(rig),
        }
    }

    pub fn name(&self) -> &str {
        self.mv().name()
    }
}
