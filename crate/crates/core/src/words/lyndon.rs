use super::Word;
use crate::error::{Error, Result};

/// Shortest `z` with `x = z^k`; `z` is primitive.
pub fn primitive_root(x: &Word) -> Result<(Word, usize)> {
    let n = x.len();
    if n == 0 {
        return Err(Error::precondition("the empty word has no primitive root"));
    }
    let s = x.symbols();
    let period = (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| s.chunks(d).all(|chunk| chunk == &s[..d]))
        .expect("d = n always divides");
    Ok((x.prefix(period), n / period))
}

/// `(z, k, l)` with `x = z^k`, `y = z^l` and `z` primitive, when `xy = yx`.
///
/// Both words empty yields `(ε, 0, 0)`.
pub fn ls1_decompose(x: &Word, y: &Word) -> Option<(Word, usize, usize)> {
    if x.concat(y) != y.concat(x) {
        return None;
    }
    let nonempty = if x.is_empty() { y } else { x };
    if nonempty.is_empty() {
        return Some((x.clone(), 0, 0));
    }
    let (root, _) = primitive_root(nonempty).ok()?;
    Some((root.clone(), x.len() / root.len(), y.len() / root.len()))
}

/// A solution of `xy = yz`: `x = uv`, `z = vu`, `y = (uv)^e u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ls2Solution {
    pub u: Word,
    pub v: Word,
    pub e: usize,
}

impl Ls2Solution {
    pub fn x(&self) -> Word {
        self.u.concat(&self.v)
    }

    pub fn z(&self) -> Word {
        self.v.concat(&self.u)
    }

    pub fn y(&self) -> Word {
        self.x().pow(self.e).concat(&self.u)
    }

    pub fn reconstructs(&self, x: &Word, y: &Word, z: &Word) -> bool {
        self.x().symbols() == x.symbols() && self.y().symbols() == y.symbols() && self.z().symbols() == z.symbols()
    }
}

/// Solves `xy = yz` in the form of the second Lyndon–Schützenberger theorem.
///
/// The exponent may be zero. `u` is non-empty whenever `y` is, and is pinned
/// by `|u| = ((|y| - 1) mod |x|) + 1`. For empty `y` the solution is
/// `u = ε, v = x, e = 0`. With `x` empty and `y` non-empty no solution of this
/// shape exists even though `xy = yz` holds trivially, so `None` is returned.
pub fn ls2_solve(x: &Word, y: &Word, z: &Word) -> Option<Ls2Solution> {
    if x.len() != z.len() || x.concat(y) != y.concat(z) {
        return None;
    }
    if y.is_empty() {
        return Some(Ls2Solution {
            u: x.prefix(0),
            v: x.clone(),
            e: 0,
        });
    }
    if x.is_empty() {
        return None;
    }
    let u_len = (y.len() - 1) % x.len() + 1;
    let e = (y.len() - u_len) / x.len();
    let solution = Ls2Solution {
        u: x.prefix(u_len),
        v: x.suffix_from(u_len),
        e,
    };
    debug_assert!(solution.reconstructs(x, y, z));
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn ls1_examples() {
        assert_eq!(ls1_decompose(&w("01"), &w("0101")), Some((w("01"), 1, 2)));
        assert_eq!(ls1_decompose(&w("01"), &w("10")), None);
        assert_eq!(ls1_decompose(&w("010101"), &w("0101")), Some((w("01"), 3, 2)));
        assert_eq!(ls1_decompose(&w(""), &w("11")), Some((w("1"), 0, 2)));
        assert_eq!(ls1_decompose(&w(""), &w("")), Some((w(""), 0, 0)));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(&w("0101")).unwrap(), (w("01"), 2));
        assert_eq!(primitive_root(&w("011")).unwrap(), (w("011"), 1));
        assert_eq!(primitive_root(&w("001001001")).unwrap(), (w("001"), 3));
        assert!(primitive_root(&w("")).is_err());
    }

    #[test]
    fn ls2_examples() {
        let s = ls2_solve(&w("01"), &w("0"), &w("10")).unwrap();
        assert_eq!((s.u, s.v, s.e), (w("0"), w("1"), 0));

        let s = ls2_solve(&w("0"), &w("0"), &w("0")).unwrap();
        assert_eq!((s.u, s.v, s.e), (w("0"), w(""), 0));

        assert_eq!(ls2_solve(&w("01"), &w("11"), &w("10")), None);
    }

    #[test]
    fn ls2_edge_cases() {
        let s = ls2_solve(&w("01"), &w(""), &w("01")).unwrap();
        assert!(s.reconstructs(&w("01"), &w(""), &w("01")));
        assert_eq!(ls2_solve(&w(""), &w("0"), &w("")), None);
        assert_eq!(ls2_solve(&w("0"), &w("0"), &w("00")), None);
    }
}
