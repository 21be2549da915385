//! Derived laws of MV-algebras and MVW-rigs, checked exhaustively.
//!
//! Each check returns `None` when the law holds and otherwise the first
//! offending tuple.

use rayon::prelude::*;

use crate::rig::{Elem, MvAlgebra, MvwRig};

fn find2(n: usize, f: impl Fn(Elem, Elem) -> bool + Sync) -> Option<Vec<Elem>> {
    (0..n)
        .into_par_iter()
        .find_map_first(|x| (0..n).find(|&y| !f(x, y)).map(|y| vec![x, y]))
}

fn find3(n: usize, f: impl Fn(Elem, Elem, Elem) -> bool + Sync) -> Option<Vec<Elem>> {
    (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| (0..n).find(|&z| !f(x, y, z)).map(|z| vec![x, y, z]))
    })
}

/// `x ≤ y ⊕ z  ⇔  x ⊖ z ≤ y`.
pub fn residuation(mv: &MvAlgebra) -> Option<Vec<Elem>> {
    find3(mv.size(), |x, y, z| {
        mv.leq(x, mv.add(y, z)) == mv.leq(mv.monus(x, z), y)
    })
}

/// `(x₁ ⊕ x₂) ⊖ (y₁ ⊕ y₂) ≤ (x₁ ⊖ y₁) ⊕ (x₂ ⊖ y₂)`, witness `[x₁, y₁, x₂, y₂]`.
pub fn monus_subadditive(mv: &MvAlgebra) -> Option<Vec<Elem>> {
    let n = mv.size();
    (0..n).into_par_iter().find_map_first(|x1| {
        for y1 in 0..n {
            for x2 in 0..n {
                for y2 in 0..n {
                    let lhs = mv.monus(mv.add(x1, x2), mv.add(y1, y2));
                    let rhs = mv.add(mv.monus(x1, y1), mv.monus(x2, y2));
                    if !mv.leq(lhs, rhs) {
                        return Some(vec![x1, y1, x2, y2]);
                    }
                }
            }
        }
        None
    })
}

/// `⊕ᵢ xᵢ ⊖ ⊕ᵢ yᵢ ≤ ⊕ᵢ (xᵢ ⊖ yᵢ)` for every arity `1..=max_arity`.
///
/// The inequality only depends on the three running sums, so instead of
/// enumerating all `|A|^(2k)` tuples the check explores the reachable triples
/// `(⊕x, ⊕y, ⊕(x⊖y))` layer by layer. This visits exactly the values the
/// brute-force enumeration would produce. The witness is the interleaved
/// tuple `[x₁, y₁, x₂, y₂, …]`.
pub fn monus_subadditive_nary(mv: &MvAlgebra, max_arity: usize) -> Option<Vec<Elem>> {
    let n = mv.size();
    let idx = |x: Elem, y: Elem, d: Elem| (x * n + y) * n + d;
    let states = n * n * n;

    // Per layer: for each reached state, (previous state, x, y).
    let mut layers: Vec<Vec<Option<(usize, Elem, Elem)>>> = Vec::new();
    let mut first = vec![None; states];
    for x in 0..n {
        for y in 0..n {
            let s = idx(x, y, mv.monus(x, y));
            first[s].get_or_insert((usize::MAX, x, y));
        }
    }
    layers.push(first);

    for arity in 1..=max_arity {
        let layer = &layers[arity - 1];
        for (s, entry) in layer.iter().enumerate() {
            if entry.is_none() {
                continue;
            }
            let (sx, sy, d) = (s / (n * n), (s / n) % n, s % n);
            if !mv.leq(mv.monus(sx, sy), d) {
                return Some(trace(&layers, arity - 1, s));
            }
        }
        if arity == max_arity {
            break;
        }
        let mut next = vec![None; states];
        for (s, entry) in layer.iter().enumerate() {
            if entry.is_none() {
                continue;
            }
            let (sx, sy, d) = (s / (n * n), (s / n) % n, s % n);
            for x in 0..n {
                for y in 0..n {
                    let t = idx(mv.add(sx, x), mv.add(sy, y), mv.add(d, mv.monus(x, y)));
                    next[t].get_or_insert((s, x, y));
                }
            }
        }
        layers.push(next);
    }
    None
}

/// For each layer and state, the predecessor state and the pair that led here.
type Layers = [Vec<Option<(usize, Elem, Elem)>>];

fn trace(layers: &Layers, layer: usize, state: usize) -> Vec<Elem> {
    let mut out = Vec::new();
    let (mut l, mut s) = (layer as isize, state);
    while l >= 0 {
        let (prev, x, y) = layers[l as usize][s].expect("reached state has a predecessor");
        out.push(y);
        out.push(x);
        s = prev;
        l -= 1;
    }
    out.reverse();
    out
}

/// `a ≤ b ⇒ ac ≤ bc` and `ca ≤ cb`.
pub fn product_monotone(rig: &MvwRig) -> Option<Vec<Elem>> {
    find3(rig.size(), |a, b, c| {
        !rig.leq(a, b) || (rig.leq(rig.mul(a, c), rig.mul(b, c)) && rig.leq(rig.mul(c, a), rig.mul(c, b)))
    })
}

/// `a(b ∨ c) ≥ ab ∨ ac` and `(b ∨ c)a ≥ ba ∨ ca`.
pub fn product_over_join(rig: &MvwRig) -> Option<Vec<Elem>> {
    let m = |a, b| rig.mul(a, b);
    find3(rig.size(), |a, b, c| {
        rig.leq(rig.join(m(a, b), m(a, c)), m(a, rig.join(b, c)))
            && rig.leq(rig.join(m(b, a), m(c, a)), m(rig.join(b, c), a))
    })
}

/// `a(b ∧ c) ≤ ab ∧ ac` and `(b ∧ c)a ≤ ba ∧ ca`.
pub fn product_over_meet(rig: &MvwRig) -> Option<Vec<Elem>> {
    let m = |a, b| rig.mul(a, b);
    find3(rig.size(), |a, b, c| {
        rig.leq(m(a, rig.meet(b, c)), rig.meet(m(a, b), m(a, c)))
            && rig.leq(m(rig.meet(b, c), a), rig.meet(m(b, a), m(c, a)))
    })
}

/// `(a ∨ b)ⁿ ≥ aⁿ ∨ bⁿ` for `n = 1..=max_n`; witness `[a, b, n]`.
pub fn power_over_join(rig: &MvwRig, max_n: usize) -> Option<Vec<Elem>> {
    (1..=max_n).find_map(|k| {
        find2(rig.size(), |a, b| {
            let p = |x| rig.power_unchecked(x, k);
            rig.leq(rig.join(p(a), p(b)), p(rig.join(a, b)))
        })
        .map(|mut w| {
            w.push(k);
            w
        })
    })
}

/// `(a ∧ b)ⁿ ≤ aⁿ ∧ bⁿ` for `n = 1..=max_n`; witness `[a, b, n]`.
pub fn power_over_meet(rig: &MvwRig, max_n: usize) -> Option<Vec<Elem>> {
    (1..=max_n).find_map(|k| {
        find2(rig.size(), |a, b| {
            let p = |x| rig.power_unchecked(x, k);
            rig.leq(p(rig.meet(a, b)), rig.meet(p(a), p(b)))
        })
        .map(|mut w| {
            w.push(k);
            w
        })
    })
}

/// All elements `s` with `sx = xs = x` for every `x`.
pub fn units(rig: &MvwRig) -> Vec<Elem> {
    rig.elements()
        .filter(|&s| rig.elements().all(|x| rig.mul(s, x) == x && rig.mul(x, s) == x))
        .collect()
}

/// The `⊖`-order is a bounded lattice whose join and meet are the cached
/// `∨` and `∧` tables.
pub fn lattice_order(mv: &MvAlgebra) -> Option<Vec<Elem>> {
    let n = mv.size();
    let u = mv.top();
    if let Some(x) = mv.elements().find(|&x| !mv.leq(x, x) || !mv.leq(0, x) || !mv.leq(x, u)) {
        return Some(vec![x]);
    }
    find3(n, |x, y, z| {
        let transitive = !(mv.leq(x, y) && mv.leq(y, z)) || mv.leq(x, z);
        let j = mv.join(x, y);
        let m = mv.meet(x, y);
        let join_lub = mv.leq(x, j) && mv.leq(y, j) && (!(mv.leq(x, z) && mv.leq(y, z)) || mv.leq(j, z));
        let meet_glb = mv.leq(m, x) && mv.leq(m, y) && (!(mv.leq(z, x) && mv.leq(z, y)) || mv.leq(z, m));
        transitive && join_lub && meet_glb
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{build_luk_mv, build_zn};

    /// Direct enumeration of every `2k`-tuple; only usable on tiny carriers.
    fn nary_brute(mv: &MvAlgebra, arity: usize) -> bool {
        let n = mv.size();
        let total = n.pow(2 * arity as u32);
        (0..total).all(|mut code| {
            let mut t = Vec::with_capacity(2 * arity);
            for _ in 0..2 * arity {
                t.push(code % n);
                code /= n;
            }
            let xs: Vec<_> = t.iter().step_by(2).copied().collect();
            let ys: Vec<_> = t.iter().skip(1).step_by(2).copied().collect();
            let diffs: Vec<_> = xs.iter().zip(&ys).map(|(&x, &y)| mv.monus(x, y)).collect();
            mv.leq(mv.monus(mv.sum(&xs), mv.sum(&ys)), mv.sum(&diffs))
        })
    }

    #[test]
    fn nary_search_agrees_with_brute_force() {
        for n in 1..=3 {
            let z = build_zn(n).unwrap();
            for arity in 1..=3 {
                assert_eq!(monus_subadditive_nary(z.mv(), arity).is_none(), nary_brute(z.mv(), arity));
            }
        }
    }

    #[test]
    fn nary_search_finds_failures_on_a_broken_sum() {
        // ⊕ = max on a 3-chain with ¬x = 2 - x is not an MV-algebra; check
        // that both routes agree on whether the inequality fails.
        use crate::rig::Carrier;
        let mv = MvAlgebra::from_fns("max", Carrier::numbered(3).unwrap(), |x| 2 - x, |x, y| x.max(y)).unwrap();
        for arity in 1..=3 {
            let fast = monus_subadditive_nary(&mv, arity);
            assert_eq!(fast.is_none(), nary_brute(&mv, arity));
            if let Some(w) = fast {
                assert_eq!(w.len() % 2, 0);
                let xs: Vec<_> = w.iter().step_by(2).copied().collect();
                let ys: Vec<_> = w.iter().skip(1).step_by(2).copied().collect();
                let diffs: Vec<_> = xs.iter().zip(&ys).map(|(&x, &y)| mv.monus(x, y)).collect();
                assert!(!mv.leq(mv.monus(mv.sum(&xs), mv.sum(&ys)), mv.sum(&diffs)));
            }
        }
    }

    #[test]
    fn laws_hold_on_zn_and_chains() {
        for n in 1..=5 {
            let z = build_zn(n).unwrap();
            assert_eq!(residuation(z.mv()), None);
            assert_eq!(monus_subadditive(z.mv()), None);
            assert_eq!(product_monotone(&z), None);
            assert_eq!(product_over_join(&z), None);
            assert_eq!(product_over_meet(&z), None);
            assert_eq!(power_over_join(&z, 3), None);
            assert_eq!(power_over_meet(&z, 3), None);
            assert_eq!(lattice_order(z.mv()), None);
            assert_eq!(units(&z).len(), 1);
        }
        let l4 = build_luk_mv(4).unwrap();
        assert_eq!(residuation(l4.mv()), None);
        assert_eq!(monus_subadditive_nary(l4.mv(), 4), None);
    }
}
