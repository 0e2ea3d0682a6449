use std::collections::HashMap;
use std::fmt;

use super::AutomataError;

/// Index of a token within an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of pairwise distinct printable tokens.
///
/// Symbol order is significant: it fixes transition-table layout and the
/// tie-breaking order used when searching for shortest witnesses.
#[derive(Clone)]
pub struct Alphabet {
    tokens: Vec<String>,
    lookup: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self, AutomataError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            if tok.is_empty() || tok.contains(['"', '\n', '\r']) {
                return Err(AutomataError::InvalidToken(tok.clone()));
            }
            if lookup.insert(tok.clone(), Symbol(i as u32)).is_some() {
                return Err(AutomataError::DuplicateToken(tok.clone()));
            }
        }
        if tokens.is_empty() {
            return Err(AutomataError::EmptyAlphabet);
        }
        Ok(Self { tokens, lookup })
    }

    /// Alphabet of single-character tokens, in the order given.
    pub fn from_chars(chars: &str) -> Result<Self, AutomataError> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn symbol(&self, token: &str) -> Result<Symbol, AutomataError> {
        self.lookup
            .get(token)
            .copied()
            .ok_or_else(|| AutomataError::UnknownSymbol(token.to_string()))
    }

    pub fn token(&self, sym: Symbol) -> &str {
        &self.tokens[sym.index()]
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.tokens.len() as u32).map(Symbol)
    }

    /// True when every token is a single character, so words can be
    /// written without separators.
    pub fn is_single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one character per
    /// symbol; otherwise tokens are whitespace separated.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Symbol>, AutomataError> {
        if self.is_single_char() {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.symbol(c.encode_utf8(&mut [0; 4])))
                .collect()
        } else {
            text.split_whitespace().map(|t| self.symbol(t)).collect()
        }
    }

    pub fn render_word(&self, word: &[Symbol]) -> String {
        let sep = if self.is_single_char() { "" } else { " " };
        word.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.tokens == other.tokens
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.tokens).finish()
    }
}
