//! A concrete compressor for words containing a repeated factor.
//!
//! A word `x = x1 z w x2` whose factor `z` reappears `|w|` positions later
//! (so `z w = w' z`) is stored as
//!
//! ```text
//! 0^m 1 c(|x1|) c(|z|) c(|w|) c(|x2|) x1 w x2
//! ```
//!
//! where `m` is the number of base-`k` digits of `|x|` and `c(n)` is `n`
//! written in exactly `m` base-`k` digits. The second copy of `z` is dropped;
//! it is rebuilt from `w` and `|z|` by solving `w' z = z w`.

use super::factors::longest_repeated_factor;
use super::Word;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatCode {
    pub alphabet: usize,
    pub m: usize,
    pub len_x1: usize,
    pub len_z: usize,
    pub len_w: usize,
    pub len_x2: usize,
    pub payload_x1: Word,
    pub payload_w: Word,
    pub payload_x2: Word,
}

/// Number of base-`k` digits of `n` (with `digits(0) = 1`).
fn digit_width(n: usize, k: usize) -> usize {
    let mut width = 1;
    let mut rest = n / k;
    while rest > 0 {
        width += 1;
        rest /= k;
    }
    width
}

impl RepeatCode {
    pub fn decoded_len(&self) -> usize {
        self.len_x1 + self.len_z + self.len_w + self.len_x2
    }

    pub fn encoded_len(&self) -> usize {
        5 * self.m + 1 + self.len_x1 + self.len_w + self.len_x2
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedCode(msg));
        if self.len_z == 0 || self.len_w == 0 {
            return bad("|z| and |w| must be positive".into());
        }
        if self.payload_x1.len() != self.len_x1
            || self.payload_w.len() != self.len_w
            || self.payload_x2.len() != self.len_x2
        {
            return bad("payload lengths disagree with the header".into());
        }
        let n = self.decoded_len();
        if self.m != digit_width(n, self.alphabet) {
            return bad(format!(
                "header width {} does not match length {n} in base {}",
                self.m, self.alphabet
            ));
        }
        Ok(())
    }

    /// Flattens the code into a single word over the source alphabet.
    pub fn to_word(&self) -> Word {
        let k = self.alphabet;
        let mut symbols = vec![0u8; self.m];
        symbols.push(1);
        for value in [self.len_x1, self.len_z, self.len_w, self.len_x2] {
            let mut digits = vec![0u8; self.m];
            let mut rest = value;
            for slot in digits.iter_mut().rev() {
                *slot = (rest % k) as u8;
                rest /= k;
            }
            symbols.extend(digits);
        }
        symbols.extend_from_slice(self.payload_x1.symbols());
        symbols.extend_from_slice(self.payload_w.symbols());
        symbols.extend_from_slice(self.payload_x2.symbols());
        Word::from_raw(symbols, k as u8)
    }

    pub fn from_word(code: &Word) -> Result<Self> {
        let k = code.alphabet_size();
        let s = code.symbols();
        let m = s.iter().take_while(|&&c| c == 0).count();
        if m == 0 || s.get(m) != Some(&1) {
            return Err(Error::MalformedCode("header must be 0^m 1 with m >= 1".into()));
        }
        let mut cursor = m + 1;
        let mut fields = [0usize; 4];
        for field in &mut fields {
            let digits = s
                .get(cursor..cursor + m)
                .ok_or_else(|| Error::MalformedCode("truncated length field".into()))?;
            *field = digits.iter().fold(0usize, |acc, &d| acc * k + d as usize);
            cursor += m;
        }
        let [len_x1, len_z, len_w, len_x2] = fields;
        if s.len() - cursor != len_x1 + len_w + len_x2 {
            return Err(Error::MalformedCode(format!(
                "payload has {} symbols, header promises {}",
                s.len() - cursor,
                len_x1 + len_w + len_x2
            )));
        }
        let take = |from: usize, len: usize| code.factor(from, len);
        let result = RepeatCode {
            alphabet: k,
            m,
            len_x1,
            len_z,
            len_w,
            len_x2,
            payload_x1: take(cursor, len_x1),
            payload_w: take(cursor + len_x1, len_w),
            payload_x2: take(cursor + len_x1 + len_w, len_x2),
        };
        result.validate()?;
        Ok(result)
    }
}

/// Encodes `x` around its longest repeated factor of length at least 2,
/// taking the lexicographically least pair of start positions.
pub fn encode_repeat(x: &Word) -> Option<RepeatCode> {
    let z_len = longest_repeated_factor(x);
    if z_len < 2 {
        return None;
    }
    let s = x.symbols();
    let n = s.len();
    let (first, second) = (0..=n - z_len).find_map(|first| {
        let z = &s[first..first + z_len];
        (first + 1..=n - z_len)
            .find(|&second| &s[second..second + z_len] == z)
            .map(|second| (first, second))
    })?;
    let end = second + z_len;
    Some(RepeatCode {
        alphabet: x.alphabet_size(),
        m: digit_width(n, x.alphabet_size()),
        len_x1: first,
        len_z: z_len,
        len_w: second - first,
        len_x2: n - end,
        payload_x1: x.prefix(first),
        payload_w: x.factor(first + z_len, second - first),
        payload_x2: x.suffix_from(end),
    })
}

/// Inverse of [`encode_repeat`].
pub fn decode_repeat(code: &RepeatCode) -> Result<Word> {
    code.validate()?;
    let w = &code.payload_w;
    let u_len = (code.len_z - 1) % w.len() + 1;
    let e = (code.len_z - u_len) / w.len();
    let v = w.prefix(w.len() - u_len);
    let u = w.suffix_from(w.len() - u_len);
    let z = u.concat(&v).pow(e).concat(&u);
    Ok(code.payload_x1.concat(&z).concat(w).concat(&code.payload_x2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn encodes_example() {
        let x = w("01010110");
        let code = encode_repeat(&x).unwrap();
        assert_eq!((code.len_x1, code.len_z, code.len_w, code.len_x2), (0, 4, 2, 2));
        assert_eq!(code.payload_w, w("01"));
        assert_eq!(code.payload_x2, w("10"));
        assert_eq!(code.m, 4);
        assert_eq!(code.encoded_len(), 25);
        assert_eq!(code.to_word().len(), 25);
        assert_eq!(decode_repeat(&code).unwrap(), x);
    }

    #[test]
    fn no_repeat_of_length_two() {
        assert_eq!(encode_repeat(&w("0110")), None);
    }

    #[test]
    fn decodes_overlapping_square() {
        let code = RepeatCode {
            alphabet: 2,
            m: 2,
            len_x1: 0,
            len_z: 2,
            len_w: 1,
            len_x2: 0,
            payload_x1: w(""),
            payload_w: w("0"),
            payload_x2: w(""),
        };
        assert_eq!(decode_repeat(&code).unwrap(), w("000"));
    }

    #[test]
    fn word_form_round_trips() {
        let code = encode_repeat(&w("1100110100")).unwrap();
        assert_eq!(RepeatCode::from_word(&code.to_word()).unwrap(), code);
    }

    #[test]
    fn malformed_codes() {
        assert!(RepeatCode::from_word(&w("1000")).is_err());
        assert!(RepeatCode::from_word(&w("001")).is_err());
        // valid header, payload one symbol short
        let code = encode_repeat(&w("01010110")).unwrap();
        let mut symbols = code.to_word().symbols().to_vec();
        symbols.pop();
        assert!(RepeatCode::from_word(&Word::new(symbols, 2).unwrap()).is_err());

        let mut broken = code.clone();
        broken.m = 7;
        assert!(decode_repeat(&broken).is_err());
        let mut broken = code;
        broken.len_w = 3;
        assert!(decode_repeat(&broken).is_err());
    }
}
