//! Cases whose published value is known to disagree with the computed one.

use serde::{Deserialize, Serialize};

use crate::config::Mode;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub cases: Vec<String>,
    /// Modes the entry applies to; empty means every mode.
    #[serde(default)]
    pub modes: Vec<Mode>,
    pub question: String,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
}

const BUNDLED: &str = include_str!("../data/known_discrepancies.json");

impl Ledger {
    pub fn bundled() -> Ledger {
        serde_json::from_str(BUNDLED).expect("bundled ledger parses")
    }

    pub fn entry(&self, case: &str, mode: Mode) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| {
            e.cases.iter().any(|c| c == case) && (e.modes.is_empty() || e.modes.contains(&mode))
        })
    }

    pub fn contains(&self, case: &str, mode: Mode) -> bool {
        self.entry(case, mode).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_entries() {
        let l = Ledger::bundled();
        assert!(l.contains("table1/row4", Mode::Corrected));
        assert!(!l.contains("table1/row4", Mode::PaperFaithful));
        assert!(l.contains("table3/r01c2", Mode::PaperFaithful));
        assert!(!l.contains("table3/r12c1", Mode::Corrected));
        assert!(!l.contains("zs/case2/none", Mode::Corrected));
    }
}
