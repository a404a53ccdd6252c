use std::cmp::Ordering;
use std::fmt;

/// Photon occupation numbers over `m` modes.
///
/// Ordering is colexicographic (last mode most significant), which is the
/// iteration order of every amplitude map in the workspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FockConfiguration(Vec<usize>);

impl FockConfiguration {
    pub fn new(occupations: Vec<usize>) -> Self {
        FockConfiguration(occupations)
    }

    pub fn vacuum(m: usize) -> Self {
        FockConfiguration(vec![0; m])
    }

    /// One photon in each of the first `n` of `m` modes.
    pub fn first_n(n: usize, m: usize) -> Self {
        assert!(n <= m);
        FockConfiguration((0..m).map(|i| usize::from(i < n)).collect())
    }

    pub fn modes(&self) -> usize {
        self.0.len()
    }

    pub fn photons(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn occupations(&self) -> &[usize] {
        &self.0
    }

    /// Mode index of every photon, e.g. `(2,0,1)` → `[0,0,2]`.
    pub fn mode_list(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect()
    }

    /// `Π_i occupations[i]!`
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&k| (1..=k).map(|v| v as f64).product::<f64>()).product()
    }
}

impl Ord for FockConfiguration {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for FockConfiguration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FockConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<usize>> for FockConfiguration {
    fn from(v: Vec<usize>) -> Self {
        FockConfiguration(v)
    }
}

/// All configurations of `n` photons in `m` modes, in colex order.
pub fn configurations(n: usize, m: usize) -> Vec<FockConfiguration> {
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(FockConfiguration(vec![]));
        }
        return out;
    }
    let mut cur = vec![0usize; m];
    fill(n, m - 1, &mut cur, &mut out);
    out
}

// Assign the most significant mode first so the output comes out sorted.
fn fill(left: usize, mode: usize, cur: &mut Vec<usize>, out: &mut Vec<FockConfiguration>) {
    if mode == 0 {
        cur[0] = left;
        out.push(FockConfiguration(cur.clone()));
        return;
    }
    for k in 0..=left {
        cur[mode] = k;
        fill(left - k, mode - 1, cur, out);
    }
    cur[mode] = 0;
}
