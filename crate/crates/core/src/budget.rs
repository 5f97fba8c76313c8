//! Limits for the bounded searches used by the constructions.

/// Environment variable read by [`SearchBudget::from_env`].
pub const BUDGET_ENV: &str = "SUNIT_SEARCH_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Exponent bound for S-unit scans in height order.
    pub max_exponent: u32,
    /// Candidate shifts tried when separating point sets.
    pub max_shifts: u64,
    /// Exponent profiles tried when rescaling edge labels.
    pub max_profiles: u32,
    /// Unit candidates examined when collecting inequivalent representations.
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::with_exponent(32)
    }
}

impl SearchBudget {
    /// Budget with the given exponent bound; the other limits scale with it.
    pub fn with_exponent(max_exponent: u32) -> Self {
        let scale = u64::from(max_exponent.max(1));
        SearchBudget {
            max_exponent,
            max_shifts: 2_000 * scale,
            max_profiles: max_exponent.max(1),
            max_candidates: 500 * scale,
        }
    }

    /// Default budget, overridden by `SUNIT_SEARCH_BUDGET=N` (an exponent
    /// bound) when that variable holds a number.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .map(SearchBudget::with_exponent)
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_scale_with_exponent() {
        let small = SearchBudget::with_exponent(2);
        let big = SearchBudget::with_exponent(20);
        assert!(small.max_shifts < big.max_shifts);
        assert!(small.max_candidates < big.max_candidates);
        assert_eq!(SearchBudget::default().max_exponent, 32);
    }
}
