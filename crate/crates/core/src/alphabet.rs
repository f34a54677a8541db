//! Finite alphabets with dense symbol indices.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol in its [`Alphabet`].
pub type Symbol = usize;

/// A finite word, stored as symbol indices.
pub type Word = Vec<Symbol>;

/// An ordered list of distinct, printable symbol names.
///
/// All automata refer to symbols by their index in this list. Cloning is
/// cheap; the name table is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {i} (`{s}`) must be nonempty without whitespace or commas"
                )));
            }
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet {
            symbols: symbols.into(),
        })
    }

    /// Symbols `"1"` to `"n"`.
    pub fn numeric(n: usize) -> Result<Self> {
        Alphabet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.symbols[sym]
    }

    pub fn index_of(&self, name: &str) -> Result<Symbol> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// Checks that every index of `word` is in range.
    pub fn check_word(&self, word: &[Symbol]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.len()) {
            Some(&index) => Err(Error::SymbolOutOfRange {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// True if every symbol name is a single character.
    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Comma-separated symbol names are always accepted; if
    /// the text has no comma and every symbol is a single character, each
    /// character is one symbol. `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains(',') {
            text.split(',').map(|s| self.index_of(s.trim())).collect()
        } else if self.is_single_char() {
            text.chars()
                .map(|c| self.index_of(c.encode_utf8(&mut [0u8; 4])))
                .collect()
        } else {
            Ok(vec![self.index_of(text)?])
        }
    }

    /// Renders a word in the form [`Alphabet::parse_word`] reads back.
    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.is_single_char() { "" } else { "," };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of exactly `len` letters, in lexicographic order.
    pub fn words_of_len(&self, len: usize) -> WordsOfLen {
        WordsOfLen {
            size: self.len(),
            current: Some(vec![0; len]),
        }
    }

    /// All words of length `0..=max`, shortest first, each length in
    /// lexicographic order.
    pub fn words_up_to(&self, max: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max).flat_map(move |len| self.words_of_len(len))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// Iterator over the words of a fixed length.
pub struct WordsOfLen {
    size: usize,
    current: Option<Word>,
}

impl Iterator for WordsOfLen {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.size {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}
