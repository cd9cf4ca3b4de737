//! Monomial keys over the doubled variable alphabet z_1..z_n, zb_1..zb_n
//! (zb_j denotes the conjugate of z_j), and the block structure that groups
//! variables by eigenvalue.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// Exponents of one monomial z^I zb^I': `hol` holds I, `antihol` holds I'.
///
/// The derived ordering (lexicographic on `hol`, then on `antihol`) is the
/// canonical term order used for all iteration and serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MonoKey {
    pub hol: Vec<u32>,
    pub antihol: Vec<u32>,
}

impl MonoKey {
    pub fn new(hol: Vec<u32>, antihol: Vec<u32>) -> Self {
        assert_eq!(hol.len(), antihol.len(), "mismatched exponent vector lengths");
        MonoKey { hol, antihol }
    }

    /// The constant monomial in `n` variables.
    pub fn unit(n: usize) -> Self {
        MonoKey { hol: vec![0; n], antihol: vec![0; n] }
    }

    /// The holomorphic variable z_j (0-based).
    pub fn var(n: usize, j: usize) -> Self {
        let mut k = MonoKey::unit(n);
        k.hol[j] = 1;
        k
    }

    /// The conjugate variable zb_j (0-based).
    pub fn antivar(n: usize, j: usize) -> Self {
        let mut k = MonoKey::unit(n);
        k.antihol[j] = 1;
        k
    }

    pub fn nvars(&self) -> usize {
        self.hol.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.hol.iter().sum::<u32>() + self.antihol.iter().sum::<u32>()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.antihol.iter().all(|&e| e == 0)
    }

    /// Conjugation swaps the holomorphic and antiholomorphic exponents.
    pub fn conj(&self) -> Self {
        MonoKey { hol: self.antihol.clone(), antihol: self.hol.clone() }
    }

    /// Product of monomials: exponent vectors add.
    pub fn mul(&self, other: &MonoKey) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "mismatched variable counts");
        MonoKey {
            hol: self.hol.iter().zip(&other.hol).map(|(a, b)| a + b).collect(),
            antihol: self.antihol.iter().zip(&other.antihol).map(|(a, b)| a + b).collect(),
        }
    }

    /// Exponent sums per block: (block degrees of I, block degrees of I').
    pub fn block_degrees(&self, layout: &BlockLayout) -> (Vec<u32>, Vec<u32>) {
        assert_eq!(self.nvars(), layout.nvars(), "layout does not match variable count");
        let mut hol = vec![0u32; layout.num_blocks()];
        let mut antihol = vec![0u32; layout.num_blocks()];
        for (j, (&a, &b)) in self.hol.iter().zip(&self.antihol).enumerate() {
            let nu = layout.block_of_var(j);
            hol[nu] += a;
            antihol[nu] += b;
        }
        (hol, antihol)
    }
}

/// Partition of the n variables into m consecutive blocks, one block per
/// eigenvalue. Block dimensions are at least one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlockLayout {
    dims: Vec<usize>,
}

impl BlockLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self, String> {
        if dims.is_empty() {
            return Err("block layout must have at least one block".into());
        }
        if dims.iter().any(|&d| d == 0) {
            return Err("block dimensions must be positive".into());
        }
        Ok(BlockLayout { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_blocks(&self) -> usize {
        self.dims.len()
    }

    pub fn nvars(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Block index of variable `j` (both 0-based).
    pub fn block_of_var(&self, j: usize) -> usize {
        let mut acc = 0;
        for (nu, &d) in self.dims.iter().enumerate() {
            acc += d;
            if j < acc {
                return nu;
            }
        }
        panic!("variable index {j} out of range");
    }

    /// Variable index range of block `nu`.
    pub fn var_range(&self, nu: usize) -> std::ops::Range<usize> {
        let start: usize = self.dims[..nu].iter().sum();
        start..start + self.dims[nu]
    }

    /// First variable of block `nu`.
    pub fn first_var(&self, nu: usize) -> usize {
        self.var_range(nu).start
    }
}

/// Ascending-degree then lexicographic comparison; handy for display where
/// low-degree terms should come first. Canonical storage order stays the
/// derived `Ord`.
pub fn degree_then_lex(a: &MonoKey, b: &MonoKey) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_lex_on_hol_then_antihol() {
        let a = MonoKey::new(vec![0, 2], vec![0, 0]);
        let b = MonoKey::new(vec![1, 0], vec![0, 0]);
        let c = MonoKey::new(vec![1, 0], vec![0, 1]);
        assert!(a < b && b < c);
    }

    #[test]
    fn conjugation_swaps_sides() {
        let k = MonoKey::new(vec![2, 0], vec![0, 1]);
        assert_eq!(k.conj(), MonoKey::new(vec![0, 1], vec![2, 0]));
        assert_eq!(k.conj().conj(), k);
        assert_eq!(k.total_degree(), 3);
        assert!(!k.is_holomorphic());
        assert!(MonoKey::new(vec![2, 1], vec![0, 0]).is_holomorphic());
    }

    #[test]
    fn block_degree_projection() {
        let layout = BlockLayout::new(vec![2, 1]).unwrap();
        let k = MonoKey::new(vec![1, 2, 3], vec![0, 1, 0]);
        assert_eq!(k.block_degrees(&layout), (vec![3, 3], vec![1, 0]));
        assert_eq!(layout.block_of_var(0), 0);
        assert_eq!(layout.block_of_var(1), 0);
        assert_eq!(layout.block_of_var(2), 1);
        assert_eq!(layout.var_range(1), 2..3);
        assert_eq!(layout.first_var(1), 2);
    }

    #[test]
    fn layout_rejects_degenerate_blocks() {
        assert!(BlockLayout::new(vec![]).is_err());
        assert!(BlockLayout::new(vec![1, 0]).is_err());
    }
}
