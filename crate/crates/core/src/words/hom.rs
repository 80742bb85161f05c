use super::Word;
use crate::error::{Error, Result};

/// All binary strings of length `k` in lexicographic order, each followed by
/// the separator symbol `2`. `|sigma(k)| = 2^k (k + 1)`.
pub fn sigma(k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::precondition("sigma needs k >= 1"));
    }
    if k > 24 {
        return Err(Error::precondition(format!("sigma({k}) is too long to materialize")));
    }
    let mut symbols = Vec::with_capacity((1usize << k) * (k + 1));
    for code in 0..(1u32 << k) {
        for bit in (0..k).rev() {
            symbols.push(((code >> bit) & 1) as u8);
        }
        symbols.push(2);
    }
    Ok(Word::from_raw(symbols, 3))
}

/// A string homomorphism given by the images of its source symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::precondition("homomorphism needs at least one image"));
        }
        Ok(Homomorphism { images })
    }

    /// `0 -> uv`, `1 -> vu`, `2 -> u^3 v^4` for a non-commuting pair of equal
    /// length.
    pub fn pair(u: &Word, v: &Word) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::precondition(format!(
                "pair homomorphism needs |u| = |v|, got {} and {}",
                u.len(),
                v.len()
            )));
        }
        let uv = u.concat(v);
        let vu = v.concat(u);
        if uv == vu {
            return Err(Error::precondition(format!("{u:?} and {v:?} commute")));
        }
        let tail = u.pow(3).concat(&v.pow(4));
        Homomorphism::new(vec![uv, vu, tail])
    }

    pub fn image(&self, symbol: u8) -> Option<&Word> {
        self.images.get(symbol as usize)
    }

    pub fn source_alphabet(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        let alphabet = self.images.iter().map(Word::alphabet_size).max().unwrap_or(2);
        let mut symbols = Vec::new();
        for &c in word.symbols() {
            let image = self.image(c).ok_or(Error::InvalidSymbol {
                symbol: c as usize,
                alphabet: self.images.len(),
            })?;
            symbols.extend_from_slice(image.symbols());
        }
        Ok(Word::from_raw(symbols, alphabet as u8))
    }
}

/// The two pair homomorphisms `g` (from `pair_g`) and `h` (from `pair_h`).
pub fn make_pair_homs(pair_g: (&Word, &Word), pair_h: (&Word, &Word)) -> Result<(Homomorphism, Homomorphism)> {
    Ok((
        Homomorphism::pair(pair_g.0, pair_g.1)?,
        Homomorphism::pair(pair_h.0, pair_h.1)?,
    ))
}

/// Inputs of the high-complexity word `y_{m,k}`.
#[derive(Debug, Clone)]
pub struct YmkParts {
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
    pub x: Word,
    pub y: Word,
    pub x2: Word,
    pub y2: Word,
}

/// `w1 g(σ_k) x^m w2 y^m reverse(h(σ_k)) w3`, with `g` built on the pair
/// `(x x2, x2 x)` and `h` on `(y y2, y2 y)`.
pub fn build_ymk(parts: &YmkParts, m: usize, k: usize) -> Result<Word> {
    if m == 0 || k == 0 {
        return Err(Error::precondition("y_{m,k} needs m >= 1 and k >= 1"));
    }
    if parts.x.len() != parts.x2.len() || parts.y.len() != parts.y2.len() {
        return Err(Error::precondition("y_{m,k} needs |x| = |x2| and |y| = |y2|"));
    }
    let g_pair = (parts.x.concat(&parts.x2), parts.x2.concat(&parts.x));
    let h_pair = (parts.y.concat(&parts.y2), parts.y2.concat(&parts.y));
    let (g, h) = make_pair_homs((&g_pair.0, &g_pair.1), (&h_pair.0, &h_pair.1))?;
    let s = sigma(k)?;
    Ok(parts
        .w1
        .concat(&g.apply(&s)?)
        .concat(&parts.x.pow(m))
        .concat(&parts.w2)
        .concat(&parts.y.pow(m))
        .concat(&h.apply(&s)?.reverse())
        .concat(&parts.w3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(2).unwrap().to_string(), "002012102112");
        assert_eq!(sigma(1).unwrap().to_string(), "0212");
        assert_eq!(sigma(3).unwrap().len(), 32);
        assert!(sigma(0).is_err());
    }

    #[test]
    fn pair_images() {
        let h = Homomorphism::pair(&w("01"), &w("10")).unwrap();
        assert_eq!(h.image(2).unwrap().to_string(), "01010110101010");
        let image = h.apply(&sigma(1).unwrap()).unwrap();
        assert_eq!(
            image.to_string(),
            ["0110", "01010110101010", "1001", "01010110101010"].concat()
        );
    }

    #[test]
    fn commuting_pair_rejected() {
        assert!(Homomorphism::pair(&w("01"), &w("01")).is_err());
        assert!(Homomorphism::pair(&w("0"), &w("00")).is_err());
    }

    #[test]
    fn ymk_small_instance() {
        let parts = YmkParts {
            w1: w(""),
            w2: w(""),
            w3: w(""),
            x: w("0"),
            y: w("1"),
            x2: w("1"),
            y2: w("0"),
        };
        let word = build_ymk(&parts, 1, 1).unwrap();
        let g = Homomorphism::pair(&w("01"), &w("10")).unwrap();
        let h = Homomorphism::pair(&w("10"), &w("01")).unwrap();
        let s = sigma(1).unwrap();
        let expected = g
            .apply(&s)
            .unwrap()
            .concat(&w("01"))
            .concat(&h.apply(&s).unwrap().reverse());
        assert_eq!(word, expected);
    }

    #[test]
    fn ymk_rejects_commuting_witness() {
        let parts = YmkParts {
            w1: w(""),
            w2: w(""),
            w3: w(""),
            x: w("0"),
            y: w("1"),
            x2: w("0"),
            y2: w("0"),
        };
        assert!(build_ymk(&parts, 1, 1).is_err());
    }
}
