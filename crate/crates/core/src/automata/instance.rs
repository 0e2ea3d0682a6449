use std::sync::Arc;

use super::{Alphabet, AutomataError, Dfa, Symbol};

/// An ordered, non-empty family of DFAs over one shared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionInstance {
    dfas: Vec<Dfa>,
    alphabet: Arc<Alphabet>,
}

impl IntersectionInstance {
    pub fn new(dfas: Vec<Dfa>) -> Result<Self, AutomataError> {
        let first = dfas.first().ok_or(AutomataError::EmptyInstance)?;
        let alphabet = first.alphabet().clone();
        if let Some(index) = dfas.iter().position(|d| **d.alphabet() != *alphabet) {
            return Err(AutomataError::AlphabetMismatch { index });
        }
        Ok(Self { dfas, alphabet })
    }

    pub fn dfas(&self) -> &[Dfa] {
        &self.dfas
    }

    pub fn into_dfas(self) -> Vec<Dfa> {
        self.dfas
    }

    pub fn len(&self) -> usize {
        self.dfas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dfas.is_empty()
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Product of member state counts, `None` if it does not fit in 128 bits.
    pub fn product_size(&self) -> Option<u128> {
        self.dfas
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(u128::from(d.num_states())))
    }

    pub fn max_states(&self) -> u32 {
        self.dfas.iter().map(Dfa::num_states).max().unwrap_or(0)
    }

    pub fn total_states(&self) -> u64 {
        self.dfas.iter().map(|d| u64::from(d.num_states())).sum()
    }

    pub fn encoded_bits(&self) -> u64 {
        self.dfas.iter().map(Dfa::encoded_bits).sum()
    }

    /// True when every member accepts `word`.
    pub fn accepts(&self, word: &[Symbol]) -> Result<bool, AutomataError> {
        for d in &self.dfas {
            if !d.accepts(word)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A word in the intersection of an instance's languages.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub symbols: Vec<Symbol>,
}

impl Witness {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.symbols.is_empty() {
            "ε".to_string()
        } else {
            alphabet.render_word(&self.symbols)
        }
    }
}
