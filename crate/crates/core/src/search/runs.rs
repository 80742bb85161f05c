/// Restricted-growth state sequences `q_0 .. q_n` with `q_0 = 0`, each new
/// label one more than the largest seen so far, using exactly `k` labels.
///
/// Every relabeling class of state sequences has exactly one such
/// representative. Yielded in lexicographic order.
pub fn enumerate_canonical_runs(n: usize, k: usize) -> CanonicalRuns {
    CanonicalRuns {
        k,
        current: if k == 0 { None } else { Some(vec![0; n + 1]) },
    }
}

pub struct CanonicalRuns {
    k: usize,
    current: Option<Vec<usize>>,
}

fn label_count(seq: &[usize]) -> usize {
    seq.iter().max().map_or(0, |&m| m + 1)
}

impl CanonicalRuns {
    /// Next restricted-growth sequence with labels below `k`.
    fn advance(seq: &mut [usize], k: usize) -> bool {
        for i in (1..seq.len()).rev() {
            let prefix_max = seq[..i].iter().copied().max().unwrap_or(0);
            if seq[i] <= prefix_max && seq[i] + 1 < k {
                seq[i] += 1;
                seq[i + 1..].iter_mut().for_each(|v| *v = 0);
                return true;
            }
        }
        false
    }
}

impl Iterator for CanonicalRuns {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            let seq = self.current.as_mut()?;
            let candidate = seq.clone();
            if !Self::advance(seq, self.k) {
                self.current = None;
            }
            if label_count(&candidate) == self.k {
                return Some(candidate);
            }
        }
    }
}
