//! Sparse exact linear algebra over ℚ and over prime fields.

use std::collections::{BTreeMap, HashMap};

use crate::polyring::Rational;

/// Sparse vector: strictly increasing column indices with nonzero entries.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a^{-1} mod p` for prime `p` and `a ≢ 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

/// Row echelon form over ℚ built incrementally; every stored row has its
/// pivot (first column) normalized to one.
#[derive(Clone, Debug, Default)]
pub struct RationalEchelon {
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl RationalEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduce `v` so that none of its columns is a pivot.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v;
        }
        let mut acc: BTreeMap<usize, Rational> = v.into_iter().collect();
        let mut out: SparseVec = Vec::new();
        while let Some((c, a)) = acc.pop_first() {
            match self.pivots.get(&c) {
                None => out.push((c, a)),
                Some(&r) => {
                    for (c2, b) in &self.rows[r][1..] {
                        let e = acc.entry(*c2).or_insert_with(Rational::zero);
                        *e = &*e - &(&a * b);
                        if e.is_zero() {
                            acc.remove(c2);
                        }
                    }
                }
            }
        }
        out
    }

    /// Insert a vector already reduced by [`RationalEchelon::reduce`].
    /// Returns false if it is zero.
    pub fn insert_reduced(&mut self, v: SparseVec) -> bool {
        let Some((c, lead)) = v.first().cloned() else { return false };
        let inv = lead.recip();
        let row: SparseVec = v.into_iter().map(|(k, a)| (k, &a * &inv)).collect();
        self.pivots.insert(c, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Reduce and insert; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r)
    }
}

/// Basis of the kernel of the linear map whose `k`-th column is `cols[k]`
/// (entries indexed by row), as coefficient vectors over the columns.
pub fn kernel(cols: &[SparseVec]) -> Vec<SparseVec> {
    let offset = cols.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).max().map_or(0, |m| m + 1);
    let mut ech = RationalEchelon::new();
    let mut out = Vec::new();
    for (k, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        v.push((offset + k, Rational::one()));
        let r = ech.reduce(v);
        if r.first().is_none_or(|(c, _)| *c >= offset) {
            out.push(r.into_iter().map(|(c, a)| (c - offset, a)).collect());
        } else {
            ech.insert_reduced(r);
        }
    }
    out
}

/// Rank over ℚ.
pub fn rank(cols: &[SparseVec]) -> usize {
    let mut ech = RationalEchelon::new();
    cols.iter().filter(|c| ech.insert((*c).clone())).count()
}

/// Large prime below 2^31 for modular certificates.
pub const CERT_PRIME: u64 = 2_147_483_629;

/// Rank over `𝔽_p` of the reductions of `cols`, or `None` if some entry has a
/// denominator divisible by `p`. Always a lower bound for the rank over ℚ.
pub fn rank_mod_p(cols: &[SparseVec], p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    for col in cols {
        let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
        for (r, a) in col {
            let v = a.mod_prime(p)?;
            if v != 0 {
                acc.insert(*r, v);
            }
        }
        let mut reduced: Vec<(usize, u64)> = Vec::new();
        while let Some((c, a)) = acc.pop_first() {
            match pivots.get(&c) {
                None => {
                    reduced.push((c, a));
                    // Only the leading entry matters for the pivot; keep the rest.
                    reduced.extend(std::mem::take(&mut acc));
                    break;
                }
                Some(&ri) => {
                    for (c2, b) in &rows[ri][1..] {
                        let e = acc.entry(*c2).or_insert(0);
                        *e = (*e + p - (a * b) % p) % p;
                        if *e == 0 {
                            acc.remove(c2);
                        }
                    }
                }
            }
        }
        if let Some(&(c, lead)) = reduced.first() {
            let inv = inv_mod(lead, p);
            let row: Vec<(usize, u64)> = reduced.into_iter().map(|(k, a)| (k, a * inv % p)).collect();
            pivots.insert(c, rows.len());
            rows.push(row);
        }
    }
    Some(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn inverse_mod() {
        for a in [1u64, 2, 3, 12345, CERT_PRIME - 1] {
            assert_eq!(a * inv_mod(a, CERT_PRIME) % CERT_PRIME, 1);
        }
    }

    #[test]
    fn kernel_of_dependent_columns() {
        // columns (1,2), (2,4), (0,1)
        let cols = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(2)), (1, q(4))], vec![(1, q(1))]];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, q(-2)), (1, q(1))]);
        assert_eq!(rank(&cols), 2);
        assert_eq!(rank_mod_p(&cols, CERT_PRIME), Some(2));
    }

    #[test]
    fn modular_rank_is_lower_bound() {
        let cols = vec![vec![(0, q(5)), (1, q(1))], vec![(0, q(0)), (1, q(5))]];
        assert_eq!(rank_mod_p(&cols, 5), Some(1));
        assert_eq!(rank(&cols), 2);
        assert_eq!(rank_mod_p(&[vec![(0, Rational::new(1, 5))]], 5), None);
    }
}
