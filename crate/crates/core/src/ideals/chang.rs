use crate::elemset::ElemSet;
use crate::error::Error;
use crate::rig::{Elem, Limits, MvAlgebra};

use super::{check_mv_homomorphism, enumerate_mv_ideals, mv_prime_witness, quotient_mv, Congruence};

/// Proper MV-ideals `P` with `a ∧ b ∈ P ⇒ a ∈ P or b ∈ P`.
pub fn mv_prime_ideals(mv: &MvAlgebra, limits: &Limits) -> Result<Vec<ElemSet>, Error> {
    Ok(enumerate_mv_ideals(mv, limits)?
        .into_iter()
        .filter(|p| !p.is_full() && mv_prime_witness(mv, p).is_none())
        .collect())
}

/// The subdirect representation `a ↦ ([a]_{P₁}, …, [a]_{Pₖ})` over all
/// MV-prime ideals.
#[derive(Debug, Clone)]
pub struct ChangEmbedding {
    pub primes: Vec<ElemSet>,
    /// `A/Pᵢ`, each a chain.
    pub factors: Vec<MvAlgebra>,
    pub congruences: Vec<Congruence>,
    /// `coordinates[a][i] = [a]_{Pᵢ}`.
    pub coordinates: Vec<Vec<Elem>>,
}

/// Builds the embedding and verifies it coordinatewise: every factor is
/// totally ordered, every projection is a surjective MV-homomorphism, and
/// distinct elements have distinct coordinate tuples.
pub fn chang_embedding(mv: &MvAlgebra, limits: &Limits) -> Result<ChangEmbedding, Error> {
    if mv.size() == 1 {
        return Err(Error::Trivial);
    }
    let primes = mv_prime_ideals(mv, limits)?;
    let mut factors = Vec::with_capacity(primes.len());
    let mut congruences = Vec::with_capacity(primes.len());
    for p in &primes {
        let (q, c) = quotient_mv(mv, p)?;
        if !q.is_chain() {
            return Err(Error::Inconsistent(format!("{} is not a chain", q.name())));
        }
        check_mv_homomorphism(mv, &q, c.labels())
            .map_err(|e| Error::Inconsistent(format!("projection onto {}: {e}", q.name())))?;
        if c.num_classes() != q.size() {
            return Err(Error::Inconsistent("projection is not surjective".into()));
        }
        factors.push(q);
        congruences.push(c);
    }
    let coordinates: Vec<Vec<Elem>> = mv
        .elements()
        .map(|a| congruences.iter().map(|c| c.class_of(a)).collect())
        .collect();
    let mut sorted = coordinates.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != mv.size() {
        return Err(Error::Inconsistent("the map into the product is not injective".into()));
    }
    Ok(ChangEmbedding { primes, factors, congruences, coordinates })
}
