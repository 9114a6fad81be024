use std::fmt;

use crate::error::{Error, Result};

/// The isomorphism classes `(μ, d)` of irreducible modules, in canonical
/// order: `d` descending, then `μ` ascending. The endpoint is `ν = m - d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonSet {
    m: usize,
    pairs: Vec<(usize, usize)>,
}

/// `(μ, d)` with `0 <= d <= m` and `⌈(m-d)/2⌉ <= μ <= m-d`.
pub fn in_upsilon(m: usize, mu: usize, d: usize) -> bool {
    d <= m && (m - d).div_ceil(2) <= mu && mu <= m - d
}

/// Fails for `m < 3`, where the module classification is not claimed.
pub fn build_upsilon(m: usize) -> Result<UpsilonSet> {
    if m < 3 {
        return Err(Error::Unsupported(format!("module decomposition needs m >= 3, got m = {m}")));
    }
    let pairs = (0..=m)
        .rev()
        .flat_map(|d| ((m - d).div_ceil(2)..=m - d).map(move |mu| (mu, d)))
        .collect();
    Ok(UpsilonSet { m, pairs })
}

impl UpsilonSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, mu: usize, d: usize) -> bool {
        in_upsilon(self.m, mu, d)
    }

    pub fn position(&self, mu: usize, d: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (mu, d))
    }

    /// Pairs with `0 <= μ, d <= m` outside the set.
    pub fn complement(&self) -> Vec<(usize, usize)> {
        (0..=self.m)
            .rev()
            .flat_map(|d| (0..=self.m).map(move |mu| (mu, d)))
            .filter(|&(mu, d)| !self.contains(mu, d))
            .collect()
    }
}

impl fmt::Display for UpsilonSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(mu, d)| format!("({mu},{d})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_pairs() {
        let u = build_upsilon(3).unwrap();
        assert_eq!(u.pairs(), &[(0, 3), (1, 2), (1, 1), (2, 1), (2, 0), (3, 0)]);
        assert_eq!(u.to_string(), "{(0,3),(1,2),(1,1),(2,1),(2,0),(3,0)}");
    }

    #[test]
    fn small_m_rejected() {
        assert!(matches!(build_upsilon(2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sizes() {
        for m in 3..=8 {
            let u = build_upsilon(m).unwrap();
            assert_eq!(u.len(), (m + 2) * (m + 2) / 4);
            assert!(u.contains(0, m));
            assert_eq!(u.len() + u.complement().len(), (m + 1) * (m + 1));
        }
    }
}
