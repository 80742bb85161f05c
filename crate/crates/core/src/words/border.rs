use super::Word;
use crate::error::{Error, Result};
use crate::rational::RationalQ;

/// A bordered factor `uw = wv` with `uwv` a proper factor of the host word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderStructure {
    pub w: Word,
    pub u: Word,
    pub v: Word,
    /// Start indices of `u`, `w` and `v` inside the `uwv` occurrence.
    pub positions: (usize, usize, usize),
}

impl BorderStructure {
    /// Re-checks every defining condition against `x` and `q` by direct
    /// substring comparison.
    pub fn holds_in(&self, x: &Word, q: RationalQ) -> bool {
        let (pu, pw, pv) = self.positions;
        let s = x.symbols();
        let (u, w, v) = (self.u.symbols(), self.w.symbols(), self.v.symbols());
        let span = u.len() + w.len() + v.len();
        !u.is_empty()
            && u.len() == v.len()
            && u.len() <= w.len()
            && pw == pu + u.len()
            && pv == pw + w.len()
            && pu + span <= s.len()
            && span < s.len()
            && &s[pu..pw] == u
            && &s[pw..pv] == w
            && &s[pv..pv + v.len()] == v
            && self.u.concat(&self.w) == self.w.concat(&self.v)
            && q.meets_border_bound(w.len() as u64, s.len() as u64)
    }
}

/// Finds `w`, `u`, `v` with `|u| = |v| <= |w|`, `uw = wv`, `uwv` a proper
/// factor of `x` and `|w| >= ((1 - 2q)/2) sqrt(|x|)`.
///
/// Scans by `|w|` ascending, then start of `uwv` ascending, then `|u|`
/// ascending, and returns the first hit.
pub fn border_structure_find(x: &Word, q: RationalQ) -> Result<Option<BorderStructure>> {
    let n = x.len();
    if n < 4 {
        return Err(Error::precondition(format!("border structure needs |x| >= 4, got {n}")));
    }
    let s = x.symbols();
    let min_w = (1..n)
        .find(|&len| q.meets_border_bound(len as u64, n as u64))
        .unwrap_or(n);
    for w_len in min_w..n {
        for start in 0..n {
            for u_len in 1..=w_len {
                let span = 2 * u_len + w_len;
                if span >= n || start + span > n {
                    break;
                }
                let left = &s[start..start + u_len + w_len];
                let right = &s[start + u_len..start + span];
                if left == right {
                    let pw = start + u_len;
                    let pv = pw + w_len;
                    return Ok(Some(BorderStructure {
                        u: x.factor(start, u_len),
                        w: x.factor(pw, w_len),
                        v: x.factor(pv, u_len),
                        positions: (start, pw, pv),
                    }));
                }
            }
        }
    }
    Ok(None)
}
