use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 || p % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= p {
        if p % d == 0 || p % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Smallest prime strictly greater than `h`.
pub fn next_prime(h: u64) -> u64 {
    (h + 1..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// Smallest prime in the open interval `(h, 2h)`.
pub fn bertrand_prime(h: u64) -> Result<u64> {
    if h <= 1 {
        return Err(Error::precondition(format!("bertrand_prime needs h > 1, got {h}")));
    }
    let p = next_prime(h);
    debug_assert!(p < 2 * h);
    Ok(p)
}
