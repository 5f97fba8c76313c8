//! Infinitely many inequivalent representations of the 4-cycle.

use std::collections::BTreeSet;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::{complete_bipartite, is_isomorphic};
use crate::sintring::{s_units_by_height, PrimeSet, SInteger};
use crate::unitgraph::{canonicalize, Representation};

/// Largest exponent box scanned, in units.
const BOX_LIMIT: usize = 200_000;

/// `count` pairwise inequivalent sets `(0, 1, w, 1 + w)` whose graph is
/// `K_{2,2}`: `w` runs over S-units in height order, skipping those with
/// `1 + w` or `1 - w` a unit and those equivalent to an earlier set.
///
/// The scan covers exponents up to the budget's bound, reduced so the box
/// holds at most 200000 units.
pub fn k22_representations(
    primes: &PrimeSet,
    count: usize,
    budget: &SearchBudget,
) -> Result<Vec<Representation>> {
    let k22 = complete_bipartite(2, 2)?;
    let one = SInteger::one(primes);
    let mut bound = budget.max_exponent;
    while bound > 0 && 2 * (2 * bound as usize + 1).pow(primes.len() as u32) > BOX_LIMIT {
        bound -= 1;
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut examined = 0u64;
    for w in s_units_by_height(primes, bound) {
        if out.len() == count {
            break;
        }
        examined += 1;
        if examined > budget.max_candidates {
            break;
        }
        let plus = one.checked_add(&w)?;
        let minus = one.checked_sub(&w)?;
        if plus.is_zero() || minus.is_zero() || plus.is_s_unit() || minus.is_s_unit() {
            continue;
        }
        let points = vec![SInteger::zero(primes), one.clone(), w, plus];
        let canonical = canonicalize(primes, &points)?;
        if !seen.insert(canonical) {
            continue;
        }
        let rep = Representation::new(primes.clone(), points)?;
        let map = is_isomorphic(&rep.graph(), &k22)
            .ok_or_else(|| Error::VerificationFailed("graph is not K_{2,2}".into()))?;
        out.push(rep.with_target(k22.clone(), map)?);
    }
    if out.len() < count {
        return Err(Error::SearchBudgetExceeded(format!(
            "found {} of {count} inequivalent K_{{2,2}} sets",
            out.len()
        )));
    }
    Ok(out)
}
