use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter inside an [`Alphabet`].
pub type Letter = usize;

/// A finite alphabet of named letters, stored sorted and duplicate-free so that
/// two alphabets over the same letters compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        letters.sort();
        letters.dedup();
        Alphabet { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.letters.binary_search_by(|l| l.as_str().cmp(name)).ok()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn letters(&self) -> std::ops::Range<Letter> {
        0..self.letters.len()
    }

    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.letters.clone(),
                right: other.letters.clone(),
            })
        }
    }

    /// Renders a word as space-free concatenation when all letters are single
    /// characters, and space-separated otherwise.
    pub fn render(&self, word: &[Letter]) -> String {
        let short = self.letters.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&l| self.name(l)).collect();
        if short {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    /// Parses a word written with single-character letters (`"abd"`) or
    /// space-separated letters.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        let tokens: Vec<String> = if text.contains(' ') {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.index(t)
                    .ok_or_else(|| Error::InvalidObservation(format!("unknown letter `{t}`")))
            })
            .collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(","))
    }
}

/// The observable part of an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    alphabet: Alphabet,
    observable: Vec<bool>,
}

impl Observation {
    pub fn new<S: AsRef<str>>(alphabet: &Alphabet, observable: &[S]) -> Result<Self> {
        if observable.is_empty() {
            return Err(Error::InvalidObservation(
                "observable set must be non-empty".into(),
            ));
        }
        let mut mask = vec![false; alphabet.len()];
        for name in observable {
            let idx = alphabet.index(name.as_ref()).ok_or_else(|| {
                Error::InvalidObservation(format!(
                    "letter `{}` is not in alphabet {alphabet}",
                    name.as_ref()
                ))
            })?;
            mask[idx] = true;
        }
        Ok(Observation {
            alphabet: alphabet.clone(),
            observable: mask,
        })
    }

    /// Observes every letter.
    pub fn full(alphabet: &Alphabet) -> Self {
        Observation {
            alphabet: alphabet.clone(),
            observable: vec![true; alphabet.len()],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn is_observable(&self, letter: Letter) -> bool {
        self.observable[letter]
    }

    /// The observable sub-alphabet.
    pub fn observed_alphabet(&self) -> Alphabet {
        Alphabet::new(
            self.alphabet
                .letters()
                .filter(|&l| self.observable[l])
                .map(|l| self.alphabet.name(l).to_owned()),
        )
    }

    /// Maps a letter of the full alphabet to its index in the observed
    /// alphabet, or `None` when it is hidden.
    pub fn project_letter(&self, letter: Letter) -> Option<Letter> {
        if !self.observable[letter] {
            return None;
        }
        Some(self.observable[..letter].iter().filter(|&&o| o).count())
    }

    /// Inverse of [`project_letter`](Self::project_letter).
    pub fn lift_letter(&self, observed: Letter) -> Letter {
        self.alphabet
            .letters()
            .filter(|&l| self.observable[l])
            .nth(observed)
            .expect("observed letter index out of range")
    }

    pub fn project_word(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter()
            .filter_map(|&l| self.project_letter(l))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_is_canonical() {
        let a = Alphabet::new(["d", "a", "c", "b", "a"]);
        assert_eq!(a.names(), &["a", "b", "c", "d"]);
        assert_eq!(a, Alphabet::new(["a", "b", "c", "d"]));
        assert_eq!(a.index("c"), Some(2));
        assert_eq!(a.render(&[0, 1, 3]), "abd");
        assert_eq!(a.parse_word("abd").unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn observation_projection() {
        let a = Alphabet::new(["a", "b", "c", "d"]);
        let o = Observation::new(&a, &["a", "c", "d"]).unwrap();
        assert_eq!(o.observed_alphabet().names(), &["a", "c", "d"]);
        assert_eq!(o.project_word(&[0, 1, 3, 3]), vec![0, 2, 2]);
        assert_eq!(o.lift_letter(1), 2);
        assert!(Observation::new(&a, &["z"]).is_err());
        assert!(Observation::new::<&str>(&a, &[]).is_err());
    }
}
