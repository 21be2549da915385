//! Constructions of concrete MVW-rigs.
//!
//! Builders never assume the axioms: callers run [`crate::axioms`] on the
//! result (the matrix builder does so itself and returns the report).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::axioms::{check_all, AxiomReport};
use crate::elemset::ElemSet;
use crate::error::Error;
use crate::rig::{Carrier, Elem, Limits, MvAlgebra, MvwRig, Structure};

/// `Z_n = {0, …, n}` with `x ⊕ y = min(n, x + y)`, `¬x = n − x` and
/// `xy = min(n, x·y)`.
pub fn build_zn(n: usize) -> Result<MvwRig, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("Z_n needs n >= 1".into()));
    }
    Ok(MvwRig::from_fns(
        format!("Z{n}"),
        Carrier::numbered(n + 1)?,
        |x| n - x,
        |x, y| (x + y).min(n),
        |x, y| (x * y).min(n),
    )?)
}

fn show_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// The Łukasiewicz chain `{0, 1/(n−1), …, 1}` with exact rational elements.
///
/// It carries no product; [`LukasiewiczChain::attach_real_product`] tries to
/// close it under ordinary multiplication.
#[derive(Debug, Clone)]
pub struct LukasiewiczChain {
    values: Vec<BigRational>,
    mv: MvAlgebra,
}

impl LukasiewiczChain {
    pub fn mv(&self) -> &MvAlgebra {
        &self.mv
    }

    pub fn into_mv(self) -> MvAlgebra {
        self.mv
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Attaches the product of the rationals. Fails with the first pair
    /// (in index order) whose product leaves the carrier.
    pub fn attach_real_product(&self) -> Result<MvwRig, Error> {
        let index = value_index(&self.values);
        let n = self.values.len();
        let mut mul = Vec::with_capacity(n * n);
        for x in &self.values {
            for y in &self.values {
                let p = x * y;
                match index.get(&p) {
                    Some(&i) => mul.push(i),
                    None => {
                        return Err(Error::ClosureViolation {
                            op: "mul",
                            inputs: vec![show_rational(x), show_rational(y)],
                            value: show_rational(&p),
                        })
                    }
                }
            }
        }
        Ok(MvwRig::with_product(self.mv.clone(), &mul)?)
    }
}

fn value_index(values: &[BigRational]) -> HashMap<BigRational, Elem> {
    values.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect()
}

/// The MV-algebra `Ł_n` for `n ≥ 2`, computed with exact rationals.
pub fn build_luk_mv(n: usize) -> Result<LukasiewiczChain, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter("Ł_n needs n >= 2".into()));
    }
    let den = BigInt::from(n - 1);
    let values: Vec<BigRational> = (0..n)
        .map(|k| BigRational::new(BigInt::from(k), den.clone()))
        .collect();
    let index = value_index(&values);
    let one = BigRational::one();
    let lookup = |q: &BigRational| index[q];
    let neg: Vec<Elem> = values.iter().map(|x| lookup(&(&one - x))).collect();
    let mut add = Vec::with_capacity(n * n);
    for x in &values {
        for y in &values {
            add.push(lookup(&(x + y).min(one.clone())));
        }
    }
    let carrier = Carrier::new(values.iter().map(show_rational).collect())?;
    let mv = MvAlgebra::derive(format!("L{n}"), carrier, &neg, &add)?;
    Ok(LukasiewiczChain { values, mv })
}

/// Equips an MV-algebra with the constant-zero product.
pub fn lift_trivial_product(mv: &MvAlgebra) -> Result<MvwRig, Error> {
    let n = mv.size();
    let mut rig = MvwRig::with_product(mv.clone(), &vec![0; n * n])?;
    rig.set_name(format!("T({})", mv.name()));
    Ok(rig)
}

fn checked_size(factors: impl IntoIterator<Item = usize>, limits: &Limits) -> Result<usize, Error> {
    let mut size: usize = 1;
    for f in factors {
        size = size.checked_mul(f).ok_or(Error::SizeBound {
            size: usize::MAX,
            bound: limits.max_carrier,
        })?;
        limits.check_carrier(size)?;
    }
    Ok(size)
}

/// Mixed-radix digits, most significant first.
fn digits(mut code: usize, radices: &[usize]) -> Vec<Elem> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = code % r;
        code /= r;
    }
    out
}

fn encode(ds: &[Elem], radices: &[usize]) -> usize {
    ds.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

/// The rig of `dim × dim` matrices over `base`: componentwise `⊕` and `¬`,
/// and `(AB)ᵢⱼ = ⊕ₖ aᵢₖ bₖⱼ`.
///
/// The result is checked against every axiom and the report is returned
/// alongside it, since the construction is not an MVW-rig for every base.
pub fn build_matrix_rig(base: &MvwRig, dim: usize, limits: &Limits) -> Result<(MvwRig, AxiomReport), Error> {
    if dim == 0 {
        return Err(Error::InvalidParameter("matrix dimension must be >= 1".into()));
    }
    let b = base.size();
    let entries = dim * dim;
    let size = checked_size(std::iter::repeat_n(b, entries), limits)?;
    let radices = vec![b; entries];
    let names = (0..size)
        .map(|code| {
            let d = digits(code, &radices);
            let rows: Vec<String> = d
                .chunks(dim)
                .map(|row| {
                    let cells: Vec<&str> = row.iter().map(|&e| base.elem_name(e)).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    let decoded: Vec<Vec<Elem>> = (0..size).map(|c| digits(c, &radices)).collect();
    let rig = MvwRig::from_fns(
        format!("M{dim}({})", base.name()),
        Carrier::new(names)?,
        |x| {
            let d: Vec<_> = decoded[x].iter().map(|&e| base.neg(e)).collect();
            encode(&d, &radices)
        },
        |x, y| {
            let d: Vec<_> = decoded[x]
                .iter()
                .zip(&decoded[y])
                .map(|(&p, &q)| base.add(p, q))
                .collect();
            encode(&d, &radices)
        },
        |x, y| {
            let (a, bm) = (&decoded[x], &decoded[y]);
            let mut d = vec![0; entries];
            for i in 0..dim {
                for j in 0..dim {
                    let terms: Vec<Elem> = (0..dim).map(|k| base.mul(a[i * dim + k], bm[k * dim + j])).collect();
                    d[i * dim + j] = base.sum(&terms);
                }
            }
            encode(&d, &radices)
        },
    )?;
    let report = check_all(&rig);
    Ok((rig, report))
}

/// Componentwise direct product; the first factor is the most significant
/// digit of the element index.
pub fn direct_product(rigs: &[&MvwRig], limits: &Limits) -> Result<MvwRig, Error> {
    if rigs.is_empty() {
        return Err(Error::InvalidParameter("direct product of an empty list".into()));
    }
    let radices: Vec<usize> = rigs.iter().map(|r| r.size()).collect();
    let size = checked_size(radices.iter().copied(), limits)?;
    let decoded: Vec<Vec<Elem>> = (0..size).map(|c| digits(c, &radices)).collect();
    let names = decoded
        .iter()
        .map(|d| {
            let parts: Vec<&str> = d.iter().zip(rigs).map(|(&e, r)| r.elem_name(e)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name = rigs.iter().map(|r| r.name()).collect::<Vec<_>>().join("x");
    let zip = |x: Elem, y: Elem, op: &dyn Fn(&MvwRig, Elem, Elem) -> Elem| {
        let d: Vec<_> = (0..rigs.len()).map(|i| op(rigs[i], decoded[x][i], decoded[y][i])).collect();
        encode(&d, &radices)
    };
    Ok(MvwRig::from_fns(
        name,
        Carrier::new(names)?,
        |x| {
            let d: Vec<_> = (0..rigs.len()).map(|i| rigs[i].neg(decoded[x][i])).collect();
            encode(&d, &radices)
        },
        |x, y| zip(x, y, &|r, a, b| r.add(a, b)),
        |x, y| zip(x, y, &|r, a, b| r.mul(a, b)),
    )?)
}

/// `Γ(ℤᵏ, u) = {x ∈ ℤᵏ : 0 ≤ x ≤ u}` with `x ⊕ y = (x + y) ∧ u`,
/// `¬x = u − x` and the componentwise product.
///
/// `u² ≤ u` in `ℤ` forces every `uᵢ` into `{0, 1}`.
pub fn gamma_zk(k: usize, unit: &[i64]) -> Result<MvwRig, Error> {
    if k == 0 || unit.len() != k {
        return Err(Error::InvalidParameter(format!(
            "Γ(ℤ^k, u) needs k >= 1 and a unit of length k, got k = {k}, |u| = {}",
            unit.len()
        )));
    }
    if let Some((index, &value)) = unit.iter().enumerate().find(|(_, &v)| v != 0 && v != 1) {
        return Err(Error::InvalidUnit { index, value });
    }
    let radices: Vec<usize> = unit.iter().map(|&v| v as usize + 1).collect();
    let size: usize = radices.iter().product();
    let vectors: Vec<Vec<i64>> = (0..size)
        .map(|c| digits(c, &radices).into_iter().map(|d| d as i64).collect())
        .collect();
    let encode_vec = |v: Vec<i64>| -> Elem {
        let ds: Vec<Elem> = v.into_iter().map(|d| d as Elem).collect();
        encode(&ds, &radices)
    };
    let names = vectors
        .iter()
        .map(|v| format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    let u_name = unit.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    Ok(MvwRig::from_fns(
        format!("Gamma(Z^{k},({u_name}))"),
        Carrier::new(names)?,
        |x| encode_vec(vectors[x].iter().zip(unit).map(|(&a, &u)| u - a).collect()),
        |x, y| {
            encode_vec(
                vectors[x]
                    .iter()
                    .zip(&vectors[y])
                    .zip(unit)
                    .map(|((&a, &b), &u)| (a + b).min(u))
                    .collect(),
            )
        },
        |x, y| encode_vec(vectors[x].iter().zip(&vectors[y]).map(|(&a, &b)| a * b).collect()),
    )?)
}

/// Restricts `rig` to `members`, which must be closed under `¬`, `⊕` and `·`
/// and contain 0. Returns the sub-rig and its inclusion map.
pub fn induced_subrig(rig: &MvwRig, members: &ElemSet) -> Result<(MvwRig, Vec<Elem>), Error> {
    let elems = members.to_vec();
    if elems.first() != Some(&0) {
        return Err(Error::Inconsistent("sub-rig must contain 0".into()));
    }
    let mut pos = vec![usize::MAX; rig.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let show = |e: &[Elem]| e.iter().map(|&x| rig.elem_name(x).to_string()).collect::<Vec<_>>();
    let look = |op: &'static str, args: &[Elem], v: Elem| -> Result<Elem, Error> {
        if pos[v] == usize::MAX {
            Err(Error::ClosureViolation {
                op,
                inputs: show(args),
                value: rig.elem_name(v).to_string(),
            })
        } else {
            Ok(pos[v])
        }
    };
    let m = elems.len();
    let mut neg = Vec::with_capacity(m);
    let mut add = Vec::with_capacity(m * m);
    let mut mul = Vec::with_capacity(m * m);
    for &x in &elems {
        neg.push(look("neg", &[x], rig.neg(x))?);
        for &y in &elems {
            add.push(look("add", &[x, y], rig.add(x, y))?);
            mul.push(look("mul", &[x, y], rig.mul(x, y))?);
        }
    }
    let names = elems.iter().map(|&e| rig.elem_name(e).to_string()).collect();
    let sub = MvwRig::derive(format!("sub({})", rig.name()), Carrier::new(names)?, &neg, &add, &mul)?;
    Ok((sub, elems))
}

/// Least subset containing `seed ∪ {0}` closed under `¬`, `⊕` and `·`.
pub fn closure_set(rig: &MvwRig, seed: &[Elem]) -> Result<ElemSet, Error> {
    let mut set = ElemSet::empty(rig.size());
    let mut queue = vec![0];
    for &s in seed {
        queue.push(rig.elem(s)?);
    }
    let mut members: Vec<Elem> = Vec::new();
    while let Some(x) = queue.pop() {
        if !set.insert(x) {
            continue;
        }
        members.push(x);
        queue.push(rig.neg(x));
        for &y in &members {
            queue.extend([rig.add(x, y), rig.mul(x, y), rig.mul(y, x)]);
        }
    }
    Ok(set)
}

/// The sub-rig generated by `seed`, with its inclusion into `rig`.
pub fn subalgebra_closure(rig: &MvwRig, seed: &[Elem]) -> Result<(MvwRig, Vec<Elem>), Error> {
    induced_subrig(rig, &closure_set(rig, seed)?)
}

/// A declarative description of one of the builders above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildRecipe {
    Zn(usize),
    LukMv(usize),
    TrivialProduct(Box<BuildRecipe>),
    Matrix { base: Box<BuildRecipe>, dim: usize },
    DirectProduct(Vec<BuildRecipe>),
    GammaZk(Vec<i64>),
    Subalgebra { base: Box<BuildRecipe>, seed: Vec<Elem> },
    /// An already constructed structure.
    Given(Box<Structure>),
}

impl BuildRecipe {
    pub fn build(&self, limits: &Limits) -> Result<Structure, Error> {
        let rig_of = |r: &BuildRecipe| -> Result<MvwRig, Error> {
            match r.build(limits)? {
                Structure::Rig(rig) => Ok(rig),
                Structure::Mv(mv) => Err(Error::InvalidParameter(format!(
                    "{} has no product; lift it with trivial(...) first",
                    mv.name()
                ))),
            }
        };
        let built = match self {
            BuildRecipe::Zn(n) => Structure::Rig(build_zn(*n)?),
            BuildRecipe::LukMv(n) => Structure::Mv(build_luk_mv(*n)?.into_mv()),
            BuildRecipe::TrivialProduct(inner) => Structure::Rig(lift_trivial_product(inner.build(limits)?.mv())?),
            BuildRecipe::Matrix { base, dim } => Structure::Rig(build_matrix_rig(&rig_of(base)?, *dim, limits)?.0),
            BuildRecipe::DirectProduct(factors) => {
                let rigs = factors.iter().map(rig_of).collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&MvwRig> = rigs.iter().collect();
                Structure::Rig(direct_product(&refs, limits)?)
            }
            BuildRecipe::GammaZk(u) => Structure::Rig(gamma_zk(u.len(), u)?),
            BuildRecipe::Subalgebra { base, seed } => Structure::Rig(subalgebra_closure(&rig_of(base)?, seed)?.0),
            BuildRecipe::Given(s) => (**s).clone(),
        };
        limits.check_carrier(built.mv().size())?;
        Ok(built)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_mv, check_mvw};

    #[test]
    fn zn_formulas() {
        let z = build_zn(3).unwrap();
        assert_eq!(z.add(2, 2), 3);
        assert_eq!(z.neg(1), 2);
        assert_eq!(z.mul(2, 2), 3);
        assert_eq!(z.unit(), Some(1));
        assert_ne!(z.unit(), Some(z.top()));
        assert!(build_zn(0).is_err());
    }

    #[test]
    fn z1_is_boolean_with_unit_top() {
        let z = build_zn(1).unwrap();
        assert_eq!(z.unit(), Some(1));
        assert_eq!(z.top(), 1);
        assert!(check_all(&z).passed());
    }

    #[test]
    fn luk3_is_not_closed_for_the_product() {
        let l3 = build_luk_mv(3).unwrap();
        assert!(check_mv(l3.mv()).passed());
        match l3.attach_real_product() {
            Err(Error::ClosureViolation { op, inputs, value }) => {
                assert_eq!(op, "mul");
                assert_eq!(inputs, vec!["1/2", "1/2"]);
                assert_eq!(value, "1/4");
            }
            other => panic!("expected closure violation, got {other:?}"),
        }
    }

    #[test]
    fn luk2_with_real_product_is_z1() {
        let r = build_luk_mv(2).unwrap().attach_real_product().unwrap();
        let z = build_zn(1).unwrap();
        assert_eq!(r.neg_table(), z.neg_table());
        assert_eq!(r.add_table(), z.add_table());
        assert_eq!(r.mul_table(), z.mul_table());
    }

    #[test]
    fn trivial_lifts() {
        let t3 = lift_trivial_product(build_luk_mv(3).unwrap().mv()).unwrap();
        assert!(t3.elements().all(|x| t3.power(x, 2) == Ok(0)));
        assert_eq!(t3.power(1, 2), Ok(0));
        let t4 = lift_trivial_product(build_luk_mv(4).unwrap().mv()).unwrap();
        assert!(check_all(&t4).passed());
        let f = t3.flags();
        assert!(f.commutative && f.product_below_meet);
        assert_eq!(f.unit, None);
    }

    #[test]
    fn boolean_matrices() {
        let z1 = build_zn(1).unwrap();
        let (m, report) = build_matrix_rig(&z1, 2, &Limits::default()).unwrap();
        assert_eq!(m.size(), 16);
        assert!(report.passed());
        assert_eq!(m.elem_name(m.top()), "[[1,1],[1,1]]");
        assert!(!m.is_commutative());
    }

    #[test]
    fn matrix_size_bound() {
        let z3 = build_zn(3).unwrap();
        let limits = Limits { max_carrier: 100, ..Limits::default() };
        assert!(matches!(build_matrix_rig(&z3, 2, &limits), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn matrices_over_trivial_rig_are_trivial() {
        let t = build_zn(1).unwrap();
        let (zero, _) = subalgebra_closure(&lift_trivial_product(t.mv()).unwrap(), &[]).unwrap();
        assert_eq!(zero.size(), 2); // {0, u}
        let triv = MvwRig::derive("0", Carrier::numbered(1).unwrap(), &[0], &[0], &[0]).unwrap();
        let (m, report) = build_matrix_rig(&triv, 3, &Limits::default()).unwrap();
        assert_eq!(m.size(), 1);
        assert!(report.passed());
    }

    #[test]
    fn boolean_square() {
        let z1 = build_zn(1).unwrap();
        let p = direct_product(&[&z1, &z1], &Limits::default()).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.elem_name(p.top()), "(1,1)");
        let a = p.carrier().find("(0,1)").unwrap();
        let b = p.carrier().find("(1,0)").unwrap();
        assert_eq!(p.mul(a, b), 0);
        assert!(check_all(&p).passed());
    }

    #[test]
    fn product_with_trivial_factor_is_unchanged() {
        let z3 = build_zn(3).unwrap();
        let triv = MvwRig::derive("0", Carrier::numbered(1).unwrap(), &[0], &[0], &[0]).unwrap();
        let p = direct_product(&[&z3, &triv], &Limits::default()).unwrap();
        assert_eq!(p.neg_table(), z3.neg_table());
        assert_eq!(p.add_table(), z3.add_table());
        assert_eq!(p.mul_table(), z3.mul_table());
    }

    #[test]
    fn gamma_shapes() {
        let g = gamma_zk(2, &[1, 1]).unwrap();
        let z1 = build_zn(1).unwrap();
        let p = direct_product(&[&z1, &z1], &Limits::default()).unwrap();
        assert_eq!(g.add_table(), p.add_table());
        assert_eq!(g.mul_table(), p.mul_table());
        assert_eq!(gamma_zk(1, &[0]).unwrap().size(), 1);
        let frozen = gamma_zk(3, &[1, 1, 0]).unwrap();
        assert_eq!(frozen.size(), 4);
        assert!(frozen.carrier().names().iter().all(|s| s.ends_with(",0)")));
        assert!(check_mvw(&frozen).passed());
        assert_eq!(gamma_zk(2, &[1, 2]), Err(Error::InvalidUnit { index: 1, value: 2 }));
        assert_eq!(gamma_zk(1, &[-1]), Err(Error::InvalidUnit { index: 0, value: -1 }));
    }

    #[test]
    fn subalgebras_of_z3() {
        let z3 = build_zn(3).unwrap();
        let (s, incl) = subalgebra_closure(&z3, &[3]).unwrap();
        assert_eq!(incl, vec![0, 3]);
        assert_eq!(s.size(), 2);
        let (full, incl) = subalgebra_closure(&z3, &[1]).unwrap();
        assert_eq!(full.size(), 4);
        assert_eq!(incl, vec![0, 1, 2, 3]);
        let (bottom, incl) = subalgebra_closure(&z3, &[]).unwrap();
        assert_eq!(incl, vec![0, 3]);
        assert!(check_all(&bottom).passed());
    }

    #[test]
    fn recipes_build() {
        let r = BuildRecipe::DirectProduct(vec![BuildRecipe::Zn(1), BuildRecipe::TrivialProduct(Box::new(BuildRecipe::LukMv(3)))]);
        let s = r.build(&Limits::default()).unwrap();
        assert_eq!(s.mv().size(), 6);
        let bad = BuildRecipe::Matrix { base: Box::new(BuildRecipe::LukMv(3)), dim: 2 };
        assert!(matches!(bad.build(&Limits::default()), Err(Error::InvalidParameter(_))));
    }
}
