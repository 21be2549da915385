//! Named example structures used by the test suites and the command line.

use crate::builders::{
    build_luk_mv, build_matrix_rig, build_zn, direct_product, gamma_zk, lift_trivial_product, subalgebra_closure,
};
use crate::rig::{Carrier, Limits, MvAlgebra, MvwRig, Structure};

pub fn trivial() -> MvwRig {
    MvwRig::derive("Trivial", Carrier::numbered(1).expect("one element"), &[0], &[0], &[0])
        .expect("the one-element tables derive")
}

pub fn zn(n: usize) -> MvwRig {
    build_zn(n).expect("n >= 1")
}

pub fn luk(n: usize) -> MvAlgebra {
    build_luk_mv(n).expect("n >= 2").into_mv()
}

/// `Ł_n` with the constant-zero product, named `Tn`.
pub fn tn(n: usize) -> MvwRig {
    lift_trivial_product(&luk(n)).expect("lift").with_name(format!("T{n}"))
}

/// 2×2 matrices over the Boolean rig `Z1`.
pub fn m2_z1() -> MvwRig {
    build_matrix_rig(&zn(1), 2, &Limits::default()).expect("16 elements").0
}

pub fn gamma(unit: &[i64]) -> MvwRig {
    let u: Vec<String> = unit.iter().map(i64::to_string).collect();
    gamma_zk(unit.len(), unit)
        .expect("0/1 unit")
        .with_name(format!("Gamma({})", u.join(",")))
}

pub fn product(a: &MvwRig, b: &MvwRig) -> MvwRig {
    direct_product(&[a, b], &Limits::default()).expect("within the default bound")
}

/// Every 0/1 unit vector of length 1 to 3.
pub fn gamma_units() -> Vec<Vec<i64>> {
    (1..=3usize)
        .flat_map(|k| {
            (0..1u32 << k).map(move |mask| (0..k).map(|i| i64::from((mask >> (k - 1 - i)) & 1)).collect())
        })
        .collect()
}

/// The base families of the axiom sweep: `Z1`–`Z6`, `T2`–`T5`, `M2(Z1)`
/// and every `Γ(ℤᵏ, u)` with `k ≤ 3`.
pub fn axiom_families() -> Vec<MvwRig> {
    let mut out: Vec<MvwRig> = (1..=6).map(zn).collect();
    out.extend((2..=5).map(tn));
    out.push(m2_z1());
    out.extend(gamma_units().iter().map(|u| gamma(u)));
    out
}

/// The shipped rigs, each with at most 16 elements.
pub fn shipped_rigs() -> Vec<MvwRig> {
    let z1 = zn(1);
    let z2 = zn(2);
    let z3 = zn(3);
    let mut out = vec![trivial()];
    out.extend((1..=6).map(zn));
    out.extend((2..=5).map(tn));
    out.push(m2_z1());
    for u in [&[1][..], &[1, 1], &[1, 1, 0], &[1, 1, 1]] {
        out.push(gamma(u));
    }
    out.push(product(&z1, &z1));
    out.push(product(&z1, &z2));
    out.push(product(&z2, &z2));
    out.push(product(&z1, &tn(3)));
    out.push(subalgebra_closure(&z3, &[3]).expect("seed in range").0.with_name("Sub(Z3,{3})"));
    out
}

/// Shipped structures without a product.
pub fn shipped_mv() -> Vec<MvAlgebra> {
    vec![luk(3), luk(4)]
}

pub fn shipped() -> Vec<Structure> {
    let mut out: Vec<Structure> = shipped_rigs().into_iter().map(Structure::Rig).collect();
    out.extend(shipped_mv().into_iter().map(Structure::Mv));
    out
}

pub fn by_name(name: &str) -> Option<Structure> {
    shipped().into_iter().find(|s| s.name() == name)
}
