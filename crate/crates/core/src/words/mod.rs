//! Words over small alphabets and the combinatorics-on-words toolkit built on
//! them: factors, primitive roots, Lyndon–Schützenberger decompositions,
//! bordered factors, the `σ_k` homomorphism words and the repeated-factor
//! codec.

mod border;
mod codec;
mod factors;
mod hom;
mod lyndon;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use border::{border_structure_find, BorderStructure};
pub use codec::{decode_repeat, encode_repeat, RepeatCode};
pub use factors::{longest_repeated_factor, occurrences, supp, unique_factor_check, UniqueFactorReport};
pub use hom::{build_ymk, make_pair_homs, sigma, Homomorphism, YmkParts};
pub use lyndon::{ls1_decompose, ls2_solve, primitive_root, Ls2Solution};

pub const MIN_ALPHABET: usize = 2;
pub const MAX_ALPHABET: usize = 10;

/// An immutable word over the alphabet `{0, .., s-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: u8,
    symbols: Vec<u8>,
}

fn check_alphabet(alphabet: usize) -> Result<()> {
    if (MIN_ALPHABET..=MAX_ALPHABET).contains(&alphabet) {
        Ok(())
    } else {
        Err(Error::InvalidAlphabet(alphabet))
    }
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet: usize) -> Result<Self> {
        check_alphabet(alphabet)?;
        if let Some(&bad) = symbols.iter().find(|&&c| c as usize >= alphabet) {
            return Err(Error::InvalidSymbol {
                symbol: bad as usize,
                alphabet,
            });
        }
        Ok(Word {
            alphabet: alphabet as u8,
            symbols,
        })
    }

    pub fn empty(alphabet: usize) -> Result<Self> {
        Word::new(Vec::new(), alphabet)
    }

    /// Parses a string of decimal digits, e.g. `"0110"`.
    pub fn parse(text: &str, alphabet: usize) -> Result<Self> {
        check_alphabet(alphabet)?;
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let digit = ch
                .to_digit(10)
                .ok_or_else(|| Error::precondition(format!("{ch:?} is not a digit symbol in {text:?}")))?;
            symbols.push(digit as u8);
        }
        Word::new(symbols, alphabet)
    }

    /// Every word of length `n`, in lexicographic order.
    pub fn all(n: usize, alphabet: usize) -> Result<impl Iterator<Item = Word>> {
        check_alphabet(alphabet)?;
        let total = (alphabet as u64)
            .checked_pow(n as u32)
            .ok_or_else(|| Error::precondition(format!("{alphabet}^{n} words do not fit in u64")))?;
        Ok((0..total).map(move |mut index| {
            let mut symbols = vec![0u8; n];
            for slot in symbols.iter_mut().rev() {
                *slot = (index % alphabet as u64) as u8;
                index /= alphabet as u64;
            }
            Word {
                alphabet: alphabet as u8,
                symbols,
            }
        }))
    }

    pub(crate) fn from_raw(symbols: Vec<u8>, alphabet: u8) -> Self {
        debug_assert!(symbols.iter().all(|&c| c < alphabet));
        Word { alphabet, symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet as usize
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// The factor `x[start .. start + len)`.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word::from_raw(self.symbols[start..start + len].to_vec(), self.alphabet)
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.factor(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.factor(start, self.len() - start)
    }

    /// Concatenation; the result lives over the larger of the two alphabets.
    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Word::from_raw(symbols, self.alphabet.max(other.alphabet))
    }

    pub fn pow(&self, times: usize) -> Word {
        Word::from_raw(self.symbols.repeat(times), self.alphabet)
    }

    pub fn reverse(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word::from_raw(symbols, self.alphabet)
    }

    /// Same symbols reinterpreted over another alphabet.
    pub fn with_alphabet(&self, alphabet: usize) -> Result<Word> {
        Word::new(self.symbols.clone(), alphabet)
    }

    pub fn is_constant(&self) -> bool {
        self.symbols.windows(2).all(|pair| pair[0] == pair[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
