use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Solution of a congruence system: every `value + k * modulus` solves it,
/// and `value` is the least non-negative one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtSolution {
    pub value: BigInt,
    pub modulus: BigInt,
}

impl CrtSolution {
    /// The `index`-th non-negative solution, counting from `value`.
    pub fn nth(&self, index: u64) -> BigInt {
        &self.value + &self.modulus * BigInt::from(index)
    }
}

/// Solves `x ≡ rᵢ (mod mᵢ)` for pairwise coprime moduli. The empty system
/// yields `0 (mod 1)`.
pub fn crt_solve(congruences: &[(BigInt, BigInt)]) -> Result<CrtSolution> {
    let mut value = BigInt::zero();
    let mut modulus = BigInt::one();
    for (residue, m) in congruences {
        if m < &BigInt::one() {
            return Err(Error::InvalidModulus(m.clone()));
        }
        let eg = modulus.extended_gcd(m);
        if !eg.gcd.is_one() {
            return Err(Error::ModuliNotCoprime(modulus.clone(), m.clone()));
        }
        // modulus * eg.x ≡ 1 (mod m)
        let delta = (residue - &value).mod_floor(m);
        let k = (delta * eg.x).mod_floor(m);
        value += &modulus * k;
        modulus *= m;
        value = value.mod_floor(&modulus);
    }
    debug_assert!(!value.is_negative());
    Ok(CrtSolution { value, modulus })
}
