use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default bound on enumerated rules and on team rule profiles.
pub const DEFAULT_CAP: usize = 4096;

/// A deterministic map from observation-symbol index to action index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PureRule {
    table: Vec<usize>,
}

impl PureRule {
    pub fn new(table: Vec<usize>) -> Self {
        PureRule { table }
    }

    pub fn constant(alphabet: usize, action: usize) -> Self {
        PureRule {
            table: vec![action; alphabet],
        }
    }

    #[inline]
    pub fn act(&self, symbol: usize) -> usize {
        self.table[symbol]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn alphabet(&self) -> usize {
        self.table.len()
    }
}

/// Every rule from a `k`-symbol alphabet to `m` actions, in lexicographic
/// order of the tables (symbol 0 most significant).
pub fn enumerate_rules(k: usize, m: usize, cap: usize) -> Result<Vec<PureRule>> {
    if k == 0 {
        return Err(Error::OutOfRange {
            name: "alphabet size",
            value: 0.0,
        });
    }
    if m == 0 {
        return Err(Error::OutOfRange {
            name: "action count",
            value: 0.0,
        });
    }
    let count = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::CapExceeded {
            context: "decision rules",
            count,
            cap: cap as u128,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut table = vec![0usize; k];
    loop {
        out.push(PureRule::new(table.clone()));
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            table[pos] += 1;
            if table[pos] < m {
                break;
            }
            table[pos] = 0;
        }
    }
}

/// Binary-alphabet, binary-action rules in the order identity, swap,
/// constant 0, constant 1 used by the worked binary-chain instance.
pub fn binary_rules_identity_first() -> Vec<PureRule> {
    vec![
        PureRule::new(vec![0, 1]),
        PureRule::new(vec![1, 0]),
        PureRule::new(vec![0, 0]),
        PureRule::new(vec![1, 1]),
    ]
}
