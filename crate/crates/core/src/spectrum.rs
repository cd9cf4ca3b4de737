//! Contracting eigenvalue data and exact resonance enumeration.
//!
//! A spectrum lists the distinct eigenvalues of the diagonal linear part of
//! a contraction germ, ordered by weakly decreasing modulus, together with
//! the dimensions of their eigenspaces (blocks). Two exactness modes are
//! supported:
//!
//! * `Exact` — eigenvalues are Gaussian rationals; every resonance identity
//!   is decided by exact arithmetic in Q(i).
//! * `PowerOfBase` — eigenvalues are powers lambda^{e_nu} of one real base
//!   lambda in (0,1). A product identity lambda^I conj(lambda)^{I'} =
//!   lambda_nu then holds iff the weighted exponent sums agree as integers,
//!   so enumeration is pure integer arithmetic and the answer is uniform in
//!   the base.
//!
//! A multi-index I (over blocks) is a resonance for block nu when
//! lambda^I = lambda_nu with |I| >= 2; an extended resonance is a pair
//! (I, I') with lambda^I * conj(lambda)^{I'} = lambda_nu and |I|+|I'| >= 2.
//! Because the germ contracts, both sets are finite: beyond the degree
//! bound every monomial has modulus strictly below the smallest eigenvalue
//! modulus.

use crate::polyring::{parse_rat, rat_to_string, BlockLayout, GaussRat, Rat};
use num_traits::{One, Signed};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("spectrum must contain at least one eigenvalue")]
    Empty,
    #[error("block_dims must list one positive dimension per eigenvalue")]
    BadBlocks,
    #[error("eigenvalue {0} is not contracting (modulus must be < 1)")]
    NotContracting(usize),
    #[error("eigenvalue {0} is zero")]
    ZeroEigenvalue(usize),
    #[error("eigenvalues {0} and {1} coincide; they must be pairwise distinct")]
    NotDistinct(usize, usize),
    #[error("eigenvalues out of order: modulus must weakly decrease, violated at position {0}")]
    BadOrder(usize),
    #[error("base must be a rational in (0, 1)")]
    BadBase,
    #[error("exponents must be positive and strictly increasing")]
    BadExponents,
    #[error("block index {0} out of range (spectrum has {1} blocks)")]
    BlockOutOfRange(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Mode {
    Exact { values: Vec<GaussRat> },
    PowerOfBase { base: Rat, exponents: Vec<u32> },
}

/// Eigenvalue data of a contracting diagonal linear part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Spectrum {
    mode: Mode,
    layout: BlockLayout,
}

/// Resonance multi-index over blocks: lambda^I = lambda_nu.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResonanceIndex {
    #[serde(rename = "I")]
    pub i: Vec<u32>,
}

/// Extended resonance pair over blocks:
/// lambda^I * conj(lambda)^{I'} = lambda_nu.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtResonanceIndex {
    #[serde(rename = "I")]
    pub i: Vec<u32>,
    #[serde(rename = "Iprime")]
    pub iprime: Vec<u32>,
}

impl ExtResonanceIndex {
    pub fn total_degree(&self) -> u32 {
        self.i.iter().sum::<u32>() + self.iprime.iter().sum::<u32>()
    }
}

impl Spectrum {
    pub fn exact(values: Vec<GaussRat>, block_dims: Vec<usize>) -> Result<Self, SpectrumError> {
        let layout = BlockLayout::new(block_dims).map_err(|_| SpectrumError::BadBlocks)?;
        if values.is_empty() {
            return Err(SpectrumError::Empty);
        }
        if layout.num_blocks() != values.len() {
            return Err(SpectrumError::BadBlocks);
        }
        let one = Rat::one();
        for (nu, v) in values.iter().enumerate() {
            if v.is_zero() {
                return Err(SpectrumError::ZeroEigenvalue(nu));
            }
            if v.norm_sqr() >= one {
                return Err(SpectrumError::NotContracting(nu));
            }
        }
        for nu in 1..values.len() {
            if values[nu].norm_sqr() > values[nu - 1].norm_sqr() {
                return Err(SpectrumError::BadOrder(nu));
            }
        }
        for a in 0..values.len() {
            for b in a + 1..values.len() {
                if values[a] == values[b] {
                    return Err(SpectrumError::NotDistinct(a, b));
                }
            }
        }
        Ok(Spectrum { mode: Mode::Exact { values }, layout })
    }

    pub fn power_of_base(
        base: Rat,
        exponents: Vec<u32>,
        block_dims: Vec<usize>,
    ) -> Result<Self, SpectrumError> {
        let layout = BlockLayout::new(block_dims).map_err(|_| SpectrumError::BadBlocks)?;
        if exponents.is_empty() {
            return Err(SpectrumError::Empty);
        }
        if layout.num_blocks() != exponents.len() {
            return Err(SpectrumError::BadBlocks);
        }
        if !base.is_positive() || base >= Rat::one() {
            return Err(SpectrumError::BadBase);
        }
        if exponents[0] == 0 || !exponents.windows(2).all(|w| w[0] < w[1]) {
            return Err(SpectrumError::BadExponents);
        }
        Ok(Spectrum { mode: Mode::PowerOfBase { base, exponents }, layout })
    }

    pub fn num_blocks(&self) -> usize {
        self.layout.num_blocks()
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars()
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    /// The eigenvalue of block `nu` as a concrete Gaussian rational.
    pub fn eigenvalue(&self, nu: usize) -> GaussRat {
        match &self.mode {
            Mode::Exact { values } => values[nu].clone(),
            Mode::PowerOfBase { base, exponents } => {
                GaussRat::from_rat(base.clone()).pow(exponents[nu])
            }
        }
    }

    /// Diagonal linear part over variables: entry j is the eigenvalue of
    /// the block containing variable j.
    pub fn per_var_linear(&self) -> Vec<GaussRat> {
        (0..self.nvars())
            .map(|j| self.eigenvalue(self.layout.block_of_var(j)))
            .collect()
    }

    pub fn is_real(&self, nu: usize) -> bool {
        match &self.mode {
            Mode::Exact { values } => values[nu].is_real(),
            Mode::PowerOfBase { .. } => true,
        }
    }

    fn check_block(&self, nu: usize) -> Result<(), SpectrumError> {
        if nu >= self.num_blocks() {
            return Err(SpectrumError::BlockOutOfRange(nu, self.num_blocks()));
        }
        Ok(())
    }

    /// Exact test of lambda^I * conj(lambda)^{I'} = lambda_nu over block
    /// multi-indices.
    pub fn eq_product(&self, nu: usize, i: &[u32], iprime: &[u32]) -> bool {
        assert_eq!(i.len(), self.num_blocks());
        assert_eq!(iprime.len(), self.num_blocks());
        match &self.mode {
            Mode::PowerOfBase { exponents, .. } => {
                // Powers of a fixed base in (0,1) are injective in the
                // exponent, so the identity reduces to integer arithmetic.
                let weighted: u64 = i
                    .iter()
                    .zip(iprime)
                    .zip(exponents)
                    .map(|((&a, &b), &e)| (a as u64 + b as u64) * e as u64)
                    .sum();
                weighted == exponents[nu] as u64
            }
            Mode::Exact { values } => {
                let mut prod = GaussRat::one();
                for (k, (&a, &b)) in i.iter().zip(iprime).enumerate() {
                    if a > 0 {
                        prod = &prod * &values[k].pow(a);
                    }
                    if b > 0 {
                        prod = &prod * &values[k].conj().pow(b);
                    }
                }
                prod == values[nu]
            }
        }
    }

    /// True when I is a resonance for block nu: |I| >= 2 and
    /// lambda^I = lambda_nu.
    pub fn is_resonance(&self, nu: usize, i: &[u32]) -> bool {
        i.iter().map(|&a| a as u64).sum::<u64>() >= 2
            && self.eq_product(nu, i, &vec![0; self.num_blocks()])
    }

    /// Least d >= 1 such that every monomial of total degree > d has
    /// modulus strictly below the smallest eigenvalue modulus. All
    /// resonances and extended resonances live in degrees 2..=d.
    pub fn degree_bound(&self) -> u32 {
        match &self.mode {
            Mode::PowerOfBase { exponents, .. } => {
                let e_first = exponents[0] as u64;
                let e_last = *exponents.last().unwrap() as u64;
                let mut d = 1u64;
                while (d + 1) * e_first <= e_last {
                    d += 1;
                }
                d as u32
            }
            Mode::Exact { values } => {
                let largest = values[0].norm_sqr();
                let smallest = values.last().unwrap().norm_sqr();
                let mut d = 1u32;
                let mut pow = &largest * &largest; // |lambda_1|^{2(d+1)} at d = 1
                while pow >= smallest {
                    d += 1;
                    pow *= &largest;
                }
                d
            }
        }
    }

    /// All resonance multi-indices for block nu, ascending lexicographic.
    pub fn resonances(&self, nu: usize) -> Result<Vec<ResonanceIndex>, SpectrumError> {
        self.check_block(nu)?;
        let ext = self.extended_resonances(nu)?;
        let zero = vec![0u32; self.num_blocks()];
        Ok(ext
            .into_iter()
            .filter(|p| p.iprime == zero)
            .map(|p| ResonanceIndex { i: p.i })
            .collect())
    }

    /// All extended resonance pairs for block nu, ascending lexicographic
    /// on the concatenation (I, I').
    pub fn extended_resonances(&self, nu: usize) -> Result<Vec<ExtResonanceIndex>, SpectrumError> {
        self.check_block(nu)?;
        let m = self.num_blocks();
        let mut found = Vec::new();
        match &self.mode {
            Mode::PowerOfBase { exponents, .. } => {
                // Bounded knapsack: distribute the target weight e_nu over
                // the 2m slots with weights e_0..e_{m-1}, e_0..e_{m-1}.
                let target = exponents[nu] as u64;
                let mut slots = vec![0u32; 2 * m];
                knapsack_power(exponents, target, 0, &mut slots, &mut found);
            }
            Mode::Exact { values } => {
                let bound = self.degree_bound();
                let target_norm = values[nu].norm_sqr();
                let mut slots = vec![0u32; 2 * m];
                dfs_exact(
                    values,
                    &values[nu],
                    &target_norm,
                    bound,
                    0,
                    GaussRat::one(),
                    &mut slots,
                    &mut found,
                );
            }
        }
        let mut out: Vec<ExtResonanceIndex> = found
            .into_iter()
            .map(|slots| ExtResonanceIndex {
                i: slots[..m].to_vec(),
                iprime: slots[m..].to_vec(),
            })
            .filter(|p| p.total_degree() >= 2)
            .collect();
        out.sort();
        // Soundness: re-verify each pair by an independent product of
        // concrete eigenvalues (in power mode the enumeration above only
        // ever compared integer weights).
        for p in &out {
            let mut prod = GaussRat::one();
            for k in 0..m {
                prod = &prod * &self.eigenvalue(k).pow(p.i[k]);
                prod = &prod * &self.eigenvalue(k).conj().pow(p.iprime[k]);
            }
            assert_eq!(
                prod,
                self.eigenvalue(nu),
                "enumerated index failed exact re-verification"
            );
        }
        Ok(out)
    }

    /// Blocks whose eigenvalue is real: the candidates for an invariant
    /// hypersurface tangent to {Re z = 0} in that block.
    pub fn admissible_tangent_indices(&self) -> Vec<usize> {
        (0..self.num_blocks()).filter(|&nu| self.is_real(nu)).collect()
    }
}

/// Power mode: exact cover of the weight target; slots 0..m are I, m..2m
/// are I'. Weight of slot s is exponents[s mod m].
fn knapsack_power(
    exponents: &[u32],
    remaining: u64,
    slot: usize,
    slots: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    let m = exponents.len();
    if slot == 2 * m {
        if remaining == 0 {
            found.push(slots.clone());
        }
        return;
    }
    let w = exponents[slot % m] as u64;
    let max_e = remaining / w;
    for e in 0..=max_e {
        slots[slot] = e as u32;
        knapsack_power(exponents, remaining - e * w, slot + 1, slots, found);
    }
    slots[slot] = 0;
}

/// Exact mode: depth-first search over exponent slots with modulus pruning.
/// Every eigenvalue has modulus < 1, so once the partial product drops
/// strictly below the target modulus no extension can recover.
#[allow(clippy::too_many_arguments)]
fn dfs_exact(
    values: &[GaussRat],
    target: &GaussRat,
    target_norm: &Rat,
    degree_left: u32,
    slot: usize,
    partial: GaussRat,
    slots: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    let m = values.len();
    if partial.norm_sqr() < *target_norm {
        return;
    }
    if slot == 2 * m {
        if &partial == target {
            found.push(slots.clone());
        }
        return;
    }
    let factor = if slot < m { values[slot].clone() } else { values[slot - m].conj() };
    let mut prod = partial;
    for e in 0..=degree_left {
        slots[slot] = e;
        dfs_exact(
            values,
            target,
            target_norm,
            degree_left - e,
            slot + 1,
            prod.clone(),
            slots,
            found,
        );
        if e < degree_left {
            prod = &prod * &factor;
            if prod.norm_sqr() < *target_norm {
                break;
            }
        }
    }
    slots[slot] = 0;
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumWire {
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponents: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<GaussRat>>,
    block_dims: Vec<usize>,
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = match &self.mode {
            Mode::PowerOfBase { base, exponents } => SpectrumWire {
                mode: "power".into(),
                base: Some(rat_to_string(base)),
                exponents: Some(exponents.clone()),
                values: None,
                block_dims: self.layout.dims().to_vec(),
            },
            Mode::Exact { values } => SpectrumWire {
                mode: "exact".into(),
                base: None,
                exponents: None,
                values: Some(values.clone()),
                block_dims: self.layout.dims().to_vec(),
            },
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SpectrumWire::deserialize(deserializer)?;
        let spectrum = match wire.mode.as_str() {
            "power" => {
                let base_str = wire
                    .base
                    .ok_or_else(|| D::Error::custom("field 'base' is required in power mode"))?;
                let exponents = wire.exponents.ok_or_else(|| {
                    D::Error::custom("field 'exponents' is required in power mode")
                })?;
                if wire.values.is_some() {
                    return Err(D::Error::custom("field 'values' is not allowed in power mode"));
                }
                let base = parse_rat(&base_str).map_err(D::Error::custom)?;
                Spectrum::power_of_base(base, exponents, wire.block_dims)
            }
            "exact" => {
                let values = wire
                    .values
                    .ok_or_else(|| D::Error::custom("field 'values' is required in exact mode"))?;
                if wire.base.is_some() || wire.exponents.is_some() {
                    return Err(D::Error::custom(
                        "fields 'base'/'exponents' are not allowed in exact mode",
                    ));
                }
                Spectrum::exact(values, wire.block_dims)
            }
            other => return Err(D::Error::custom(format!("unknown mode {other:?}"))),
        };
        spectrum.map_err(|e| D::Error::custom(e.to_string()))
    }
}
