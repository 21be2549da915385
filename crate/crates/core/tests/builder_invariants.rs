use num_bigint::BigInt;
use num_rational::BigRational;

use mvw::axioms::{check_all, check_mv};
use mvw::builders::{build_luk_mv, build_zn, gamma_zk};
use mvw::catalog;
use mvw::ideals::{check_mv_homomorphism, find_mv_isomorphism};

#[test]
fn zn_is_the_lukasiewicz_chain_with_one_more_element() {
    for n in 1..=8usize {
        let zn = build_zn(n).unwrap();
        let chain = build_luk_mv(n + 1).unwrap();
        // x ↦ x/n, located by exact rational value.
        let map: Vec<usize> = zn
            .elements()
            .map(|x| {
                let q = BigRational::new(BigInt::from(x), BigInt::from(n));
                chain.values().iter().position(|v| *v == q).unwrap()
            })
            .collect();
        check_mv_homomorphism(zn.mv(), chain.mv(), &map).unwrap();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), zn.size());
        assert_eq!(find_mv_isomorphism(zn.mv(), chain.mv()), Some(map));
    }
}

#[test]
fn zn_products_sit_above_both_factors() {
    for n in 1..=8 {
        let zn = build_zn(n).unwrap();
        for a in 1..=n {
            for b in 1..=n {
                assert!(zn.leq(zn.join(a, b), zn.mul(a, b)), "Z{n} at ({a},{b})");
            }
        }
    }
}

fn parse_vector(name: &str) -> Vec<i64> {
    name.trim_matches(|c| c == '(' || c == ')').split(',').map(|d| d.parse().unwrap()).collect()
}

#[test]
fn gamma_operations_match_integer_arithmetic() {
    for unit in catalog::gamma_units() {
        let g = gamma_zk(unit.len(), &unit).unwrap();
        let vec_of = |x: usize| parse_vector(g.elem_name(x));
        let find = |v: Vec<i64>| g.elements().find(|&e| vec_of(e) == v).unwrap();
        for x in g.elements() {
            let vx = vec_of(x);
            assert_eq!(g.neg(x), find(unit.iter().zip(&vx).map(|(u, a)| u - a).collect()));
            for y in g.elements() {
                let vy = vec_of(y);
                let sum = vx.iter().zip(&vy).zip(&unit).map(|((a, b), u)| (a + b).min(*u)).collect();
                let prod = vx.iter().zip(&vy).map(|(a, b)| a * b).collect();
                assert_eq!(g.add(x, y), find(sum));
                assert_eq!(g.mul(x, y), find(prod));
            }
        }
    }
}

#[test]
fn every_builder_output_is_an_mv_algebra() {
    for rig in catalog::shipped_rigs() {
        assert!(check_all(&rig).passed(), "{}", rig.name());
    }
    for n in 2..=7 {
        assert!(check_mv(build_luk_mv(n).unwrap().mv()).passed());
    }
}
