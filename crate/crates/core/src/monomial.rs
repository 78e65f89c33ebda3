//! Coordinate-block configurations (`ks <= n+1`), where `W` is spanned by
//! monomials and its dimension is a lattice count.
//!
//! Subspace `j` is `⟨e_{jk}, …, e_{jk+k-1}⟩`. A monomial of degree `n+1-k`
//! lies in `W` iff it has at least two indices in every block.

use crate::error::{Error, Result};
use crate::exterior::{binomial, monomials_of_grade};

/// Largest ambient dimension [`dim_w_bruteforce`] will enumerate.
pub const ENUMERATION_GUARD: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialCaseParams {
    ambient: usize,
    k: usize,
    s: usize,
}

impl MonomialCaseParams {
    pub fn new(ambient: usize, k: usize, s: usize) -> Result<Self> {
        if k < 2 || k >= ambient || s == 0 {
            return Err(Error::InvalidParams(format!(
                "need 2 <= k < n+1 and s >= 1, got n+1 = {ambient}, k = {k}, s = {s}"
            )));
        }
        if k * s > ambient {
            return Err(Error::NotMonomialCase { ks: k * s, ambient });
        }
        Ok(Self { ambient, k, s })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    fn block_mask(&self, j: usize) -> u64 {
        ((1u64 << self.k) - 1) << (j * self.k)
    }
}

/// `dim W` in closed form.
///
/// For `k = 2`, `W` is the degree `n-1` part of the principal ideal of
/// `e_0∧…∧e_{2s-1}`, of dimension `C(n-2s+1, 2)`. For `k >= 3`, `W = 0` when
/// `2s > n+1-k`, and otherwise its complement has exactly `s[k(n+1-k)+1]`
/// monomials.
pub fn dim_w_formula(p: &MonomialCaseParams) -> u64 {
    let (m, k, s) = (p.ambient, p.k, p.s);
    if k == 2 {
        // C(n-2s+1, 2) with n = m-1; m-2s >= 0 since ks <= m
        return binomial(m - 2 * s, 2);
    }
    if 2 * s > m - k {
        return 0;
    }
    binomial(m, k) - count_outside_formula(m, k, s)
}

fn count_outside_formula(ambient: usize, k: usize, s: usize) -> u64 {
    (s * (k * (ambient - k) + 1)) as u64
}

/// Number of indices of `bits` in each block.
fn block_counts(p: &MonomialCaseParams, bits: u64) -> impl Iterator<Item = u32> + '_ {
    (0..p.s).map(move |j| (bits & p.block_mask(j)).count_ones())
}

/// Counts the degree `n+1-k` monomials with at least two indices in every
/// block, enumerating whichever of the grades `n+1-k` and `k` is smaller.
pub fn dim_w_bruteforce(p: &MonomialCaseParams) -> Result<u64> {
    if p.ambient > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard(p.ambient, ENUMERATION_GUARD));
    }
    let degree = p.ambient - p.k;
    let count = if p.k < degree {
        // complement has <= k-2 indices in each block
        monomials_of_grade(p.ambient, p.k)
            .iter()
            .filter(|m| block_counts(p, m.bits()).all(|c| c as usize + 2 <= p.k))
            .count()
    } else {
        monomials_of_grade(p.ambient, degree)
            .iter()
            .filter(|m| block_counts(p, m.bits()).all(|c| c >= 2))
            .count()
    };
    Ok(count as u64)
}

/// `s[k(n+1-k)+1]`, the number of degree `n+1-k` monomials outside `W`, for
/// `k >= 3` and `2s <= n+1-k`.
pub fn count_outside_w(p: &MonomialCaseParams) -> Result<u64> {
    if p.k < 3 || 2 * p.s > p.ambient - p.k {
        return Err(Error::InvalidParams(format!(
            "outside count needs k >= 3 and 2s <= n+1-k, got n+1 = {}, k = {}, s = {}",
            p.ambient, p.k, p.s
        )));
    }
    Ok(count_outside_formula(p.ambient, p.k, p.s))
}

/// Enumerates the monomials outside `W` and, for each, how many blocks it
/// fails (has fewer than two indices in).
pub fn outside_block_failures(p: &MonomialCaseParams) -> Result<Vec<usize>> {
    if p.ambient > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard(p.ambient, ENUMERATION_GUARD));
    }
    Ok(monomials_of_grade(p.ambient, p.ambient - p.k)
        .iter()
        .map(|m| block_counts(p, m.bits()).filter(|&c| c < 2).count())
        .filter(|&failures| failures > 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: usize, k: usize, s: usize) -> MonomialCaseParams {
        MonomialCaseParams::new(a, k, s).unwrap()
    }

    #[test]
    fn formula_examples() {
        assert_eq!(dim_w_formula(&params(6, 3, 2)), 0);
        assert_eq!(dim_w_formula(&params(6, 2, 2)), 1);
        assert_eq!(dim_w_formula(&params(9, 3, 3)), 27);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(dim_w_bruteforce(&params(6, 2, 2)).unwrap(), 1);
        assert_eq!(dim_w_bruteforce(&params(6, 3, 2)).unwrap(), 0);
        assert_eq!(dim_w_bruteforce(&params(9, 3, 3)).unwrap(), 27);
    }

    #[test]
    fn outside_count_examples() {
        assert_eq!(count_outside_w(&params(9, 3, 3)).unwrap(), 57);
        assert_eq!(count_outside_w(&params(12, 3, 4)).unwrap(), 112);
        assert_eq!(count_outside_w(&params(8, 4, 2)).unwrap(), 34);
        for (a, k, s) in [(9, 3, 3), (12, 3, 4), (8, 4, 2)] {
            let p = params(a, k, s);
            let total = binomial(a, a - k);
            assert_eq!(
                total - dim_w_bruteforce(&p).unwrap(),
                count_outside_w(&p).unwrap()
            );
            assert_eq!(
                outside_block_failures(&p).unwrap().len() as u64,
                count_outside_w(&p).unwrap()
            );
        }
        assert!(count_outside_w(&params(6, 2, 2)).is_err());
        assert!(count_outside_w(&params(6, 3, 2)).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(
            MonomialCaseParams::new(7, 3, 3).unwrap_err(),
            Error::NotMonomialCase { ks: 9, ambient: 7 }
        );
        assert!(MonomialCaseParams::new(7, 1, 3).is_err());
        assert!(MonomialCaseParams::new(7, 3, 0).is_err());
        assert_eq!(
            dim_w_bruteforce(&params(21, 3, 2)).unwrap_err(),
            Error::EnumerationGuard(21, ENUMERATION_GUARD)
        );
    }

    #[test]
    fn formula_matches_bruteforce_exhaustively() {
        for a in 3..=13 {
            for k in 2..a {
                for s in 1..=a / k {
                    let p = params(a, k, s);
                    assert_eq!(
                        dim_w_formula(&p),
                        dim_w_bruteforce(&p).unwrap(),
                        "{a} {k} {s}"
                    );
                }
            }
        }
    }

    #[test]
    fn outside_monomials_fail_exactly_one_block() {
        for a in 6..=13 {
            for k in 3..=a / 2 {
                for s in 1..=a / k {
                    let p = params(a, k, s);
                    assert!(outside_block_failures(&p).unwrap().iter().all(|&f| f == 1));
                }
            }
        }
    }
}
