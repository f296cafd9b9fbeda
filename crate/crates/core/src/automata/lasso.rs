use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// An ultimately periodic word `prefix · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl Lasso {
    /// Panics if `cycle` is empty.
    pub fn new(prefix: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be non-empty");
        Lasso { prefix, cycle }
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Total number of positions before the word repeats.
    pub fn period_end(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        if pos < self.prefix.len() {
            self.prefix[pos]
        } else {
            self.cycle[(pos - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Position following `pos` in the folded representation
    /// `0 .. period_end()`.
    pub fn next_pos(&self, pos: usize) -> usize {
        if pos + 1 == self.period_end() {
            self.prefix.len()
        } else {
            pos + 1
        }
    }

    /// Parses `u(v)` notation, e.g. `ab(d)` for `a b d^ω`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Lasso> {
        let text = text.trim();
        let (u, v) = text
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(|| {
                Error::InvalidObservation(format!("`{text}` is not of the form u(v)"))
            })?;
        let prefix = if u.is_empty() {
            Vec::new()
        } else {
            alphabet.parse_word(u)?
        };
        let cycle = alphabet.parse_word(v)?;
        if cycle.is_empty() {
            return Err(Error::InvalidObservation("empty lasso cycle".into()));
        }
        Ok(Lasso { prefix, cycle })
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!(
            "{}({})",
            alphabet.render(&self.prefix),
            alphabet.render(&self.cycle)
        )
    }
}
