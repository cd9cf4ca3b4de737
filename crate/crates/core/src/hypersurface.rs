//! Invariant real hypersurfaces of contraction germs in normal form.
//!
//! For a tangent block i with real eigenvalue lambda_i, the candidate
//! surfaces are graphs z_t + zb_t = rho(v, vb) over the remaining
//! variables, where z_t is the leading variable of block i and rho is a
//! real-valued polynomial supported on the extended resonances of block i.
//! Invariance under f reads, after substituting the defining equation into
//! the t-th component,
//!
//!   lambda_i * rho + (c0 + conj(c0)) = rho(f(z), conj(f(z)))
//!
//! with c0 the nonlinear part of component t. Expanding the right side
//! monomial by monomial turns this into a linear system in the ansatz
//! coefficients. Two structural facts keep the system finite and closed,
//! and both are re-checked on every run rather than assumed: substituting a
//! centralizer element into a resonant monomial only produces resonant
//! monomials (support closure), and the equation attached to a monomial's
//! conjugate is the conjugate of the equation (so the real/imaginary split
//! below is lossless).

use crate::linsys::{solve_rational, AffineSolution};
use crate::normalform::centralizer_member;
use crate::polyring::{GaussRat, JetError, JetMap, MonoKey, Rat, RealPoly};
use crate::spectrum::{Spectrum, SpectrumError};
use num_traits::Zero;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error("object spans {got} variables, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("tangent block {0} is out of range")]
    BlockOutOfRange(usize),
    #[error("eigenvalue of block {0} is not real; no admissible tangent direction")]
    TangentNotReal(usize),
    #[error("variable {0} is not the leading variable of its block")]
    NotBlockLeader(usize),
    #[error("defining polynomial is not real-valued")]
    NotRealValued,
    #[error("defining polynomial has a monomial of degree {0} < 2")]
    DegreeTooLow(u32),
    #[error("defining polynomial involves variable {0}, which it must not")]
    ForbiddenVariable(usize),
    #[error("jet linear part at variable {var} is {got}, spectrum requires {want}")]
    LinearMismatch { var: usize, got: String, want: String },
    #[error("jet is not in normal form (a nonlinear monomial is non-resonant)")]
    NotNormalForm,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Which real scalar an [`Unknown`] denotes.
///
/// A self-paired key (equal holomorphic and antiholomorphic exponents after
/// swapping) must carry a real coefficient and contributes one `Whole`
/// unknown. A properly paired key contributes `Re` and `Im` of the
/// coefficient at the lexicographically smaller member of the pair; the
/// coefficient at the other member is determined by conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnknownPart {
    Whole,
    Re,
    Im,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknown {
    pub key: MonoKey,
    pub part: UnknownPart,
}

/// The coefficient unknowns of the invariant-surface ansatz for one tangent
/// block: the per-variable extended-resonance support together with its
/// real coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz {
    nvars: usize,
    tangent_block: usize,
    tangent_var: usize,
    keys: Vec<MonoKey>,
    unknowns: Vec<Unknown>,
}

impl Ansatz {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn tangent_block(&self) -> usize {
        self.tangent_block
    }

    pub fn tangent_var(&self) -> usize {
        self.tangent_var
    }

    /// Full monomial support, ascending, both members of each conjugate
    /// pair included.
    pub fn keys(&self) -> &[MonoKey] {
        &self.keys
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    pub fn real_dimension(&self) -> usize {
        self.unknowns.len()
    }

    /// Reassembles a defining polynomial from real coordinates in the order
    /// of `unknowns`.
    pub fn assemble(&self, coords: &[Rat]) -> RealPoly {
        assert_eq!(coords.len(), self.unknowns.len(), "one coordinate per unknown");
        let mut rho = RealPoly::zero(self.nvars);
        let mut idx = 0;
        while idx < self.unknowns.len() {
            let u = &self.unknowns[idx];
            match u.part {
                UnknownPart::Whole => {
                    let c = GaussRat::new(coords[idx].clone(), Rat::zero());
                    rho.add_term(u.key.clone(), c);
                    idx += 1;
                }
                UnknownPart::Re => {
                    debug_assert_eq!(self.unknowns[idx + 1].part, UnknownPart::Im);
                    debug_assert_eq!(self.unknowns[idx + 1].key, u.key);
                    let c = GaussRat::new(coords[idx].clone(), coords[idx + 1].clone());
                    rho.add_term(u.key.clone(), c.clone());
                    rho.add_term(u.key.conj(), c.conj());
                    idx += 2;
                }
                UnknownPart::Im => unreachable!("Im is always consumed with its Re"),
            }
        }
        rho
    }
}

/// All exponent vectors of length `parts` summing to `total`, ascending.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    assert!(parts > 0);
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            let mut v = Vec::with_capacity(parts);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Expands a block-degree vector into all per-variable exponent vectors.
fn per_variable(layout: &crate::polyring::BlockLayout, block_deg: &[u32]) -> Vec<Vec<u32>> {
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for (nu, &b) in block_deg.iter().enumerate() {
        let choices = compositions(b, layout.dims()[nu]);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for prefix in &acc {
            for choice in &choices {
                let mut v = prefix.clone();
                v.extend_from_slice(choice);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn check_tangent_block(s: &Spectrum, i: usize) -> Result<(), HypersurfaceError> {
    if i >= s.num_blocks() {
        return Err(HypersurfaceError::BlockOutOfRange(i));
    }
    if !s.is_real(i) {
        return Err(HypersurfaceError::TangentNotReal(i));
    }
    Ok(())
}

/// The coefficient unknowns for tangent block `i` (0-based): one complex
/// unknown per conjugate pair of extended-resonance keys, one real unknown
/// per self-paired key.
pub fn ansatz(s: &Spectrum, i: usize) -> Result<Ansatz, HypersurfaceError> {
    check_tangent_block(s, i)?;
    let layout = s.layout();
    let mut keys = std::collections::BTreeSet::new();
    for pair in s.extended_resonances(i)? {
        for hol in per_variable(layout, &pair.i) {
            for antihol in per_variable(layout, &pair.iprime) {
                keys.insert(MonoKey::new(hol.clone(), antihol));
            }
        }
    }
    let keys: Vec<MonoKey> = keys.into_iter().collect();
    let mut unknowns = Vec::new();
    for key in &keys {
        let swapped = key.conj();
        if *key == swapped {
            unknowns.push(Unknown { key: key.clone(), part: UnknownPart::Whole });
        } else if *key < swapped {
            unknowns.push(Unknown { key: key.clone(), part: UnknownPart::Re });
            unknowns.push(Unknown { key: key.clone(), part: UnknownPart::Im });
        }
    }
    Ok(Ansatz {
        nvars: s.nvars(),
        tangent_block: i,
        tangent_var: layout.first_var(i),
        keys,
        unknowns,
    })
}

/// A concrete candidate surface z_t + zb_t = rho.
///
/// `tangent_var` is the 0-based index of the distinguished variable z_t
/// (1-based as `tangent_index` on the wire). The defining polynomial is
/// real-valued, has no terms of degree below 2, and never involves z_t
/// itself; block-level constraints are checked by the functions that also
/// receive the spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceModel {
    tangent_var: usize,
    rho: RealPoly,
}

impl HypersurfaceModel {
    pub fn new(tangent_var: usize, rho: RealPoly) -> Result<Self, HypersurfaceError> {
        if tangent_var >= rho.nvars() {
            return Err(HypersurfaceError::DimensionMismatch {
                got: tangent_var + 1,
                want: rho.nvars(),
            });
        }
        if !rho.is_real_valued() {
            return Err(HypersurfaceError::NotRealValued);
        }
        for (key, _) in rho.iter() {
            let deg = key.total_degree();
            if deg < 2 {
                return Err(HypersurfaceError::DegreeTooLow(deg));
            }
            if key.hol[tangent_var] > 0 || key.antihol[tangent_var] > 0 {
                return Err(HypersurfaceError::ForbiddenVariable(tangent_var));
            }
        }
        Ok(HypersurfaceModel { tangent_var, rho })
    }

    pub fn nvars(&self) -> usize {
        self.rho.nvars()
    }

    pub fn tangent_var(&self) -> usize {
        self.tangent_var
    }

    pub fn rho(&self) -> &RealPoly {
        &self.rho
    }

    /// Resolves the tangent block against a spectrum and checks the
    /// block-level preconditions: matching dimension, z_t leads its block,
    /// lambda_i real, and rho free of every variable of block i.
    pub fn tangent_block_for(&self, s: &Spectrum) -> Result<usize, HypersurfaceError> {
        if self.nvars() != s.nvars() {
            return Err(HypersurfaceError::DimensionMismatch {
                got: self.nvars(),
                want: s.nvars(),
            });
        }
        let layout = s.layout();
        let i = layout.block_of_var(self.tangent_var);
        if layout.first_var(i) != self.tangent_var {
            return Err(HypersurfaceError::NotBlockLeader(self.tangent_var));
        }
        check_tangent_block(s, i)?;
        for (key, _) in self.rho.iter() {
            for j in layout.var_range(i) {
                if key.hol[j] > 0 || key.antihol[j] > 0 {
                    return Err(HypersurfaceError::ForbiddenVariable(j));
                }
            }
        }
        Ok(i)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceTermWire {
    #[serde(rename = "I")]
    i: Vec<u32>,
    #[serde(rename = "Iprime")]
    iprime: Vec<u32>,
    coeff: GaussRat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HypersurfaceModelWire {
    tangent_index: usize,
    nvars: usize,
    terms: Vec<SurfaceTermWire>,
}

impl Serialize for HypersurfaceModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .rho
            .iter()
            .map(|(k, c)| SurfaceTermWire {
                i: k.hol.clone(),
                iprime: k.antihol.clone(),
                coeff: c.clone(),
            })
            .collect();
        HypersurfaceModelWire {
            tangent_index: self.tangent_var + 1,
            nvars: self.nvars(),
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HypersurfaceModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = HypersurfaceModelWire::deserialize(deserializer)?;
        if wire.tangent_index == 0 || wire.tangent_index > wire.nvars {
            return Err(D::Error::custom(format!(
                "tangent_index must be in 1..={}, got {}",
                wire.nvars, wire.tangent_index
            )));
        }
        let mut rho = RealPoly::zero(wire.nvars);
        for t in &wire.terms {
            if t.i.len() != wire.nvars || t.iprime.len() != wire.nvars {
                return Err(D::Error::custom(
                    "term exponent vectors must have nvars entries",
                ));
            }
            let key = MonoKey::new(t.i.clone(), t.iprime.clone());
            if !rho.coeff(&key).is_zero() {
                return Err(D::Error::custom("duplicate term key"));
            }
            rho.add_term(key, t.coeff.clone());
        }
        HypersurfaceModel::new(wire.tangent_index - 1, rho)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The invariance identity expanded into an exact real-linear system over
/// the ansatz unknowns: one row per real equation.
#[derive(Clone, Debug)]
pub struct InvarianceSystem {
    ansatz: Ansatz,
    matrix: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
}

impl InvarianceSystem {
    pub fn ansatz(&self) -> &Ansatz {
        &self.ansatz
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.rhs
    }

    pub fn num_equations(&self) -> usize {
        self.matrix.len()
    }

    pub fn num_unknowns(&self) -> usize {
        self.ansatz.real_dimension()
    }
}

fn check_jet_against(f: &JetMap, s: &Spectrum) -> Result<(), HypersurfaceError> {
    if f.n() != s.nvars() {
        return Err(HypersurfaceError::DimensionMismatch { got: f.n(), want: s.nvars() });
    }
    let want = s.per_var_linear();
    for (j, (got, want)) in f.linear().iter().zip(&want).enumerate() {
        if got != want {
            return Err(HypersurfaceError::LinearMismatch {
                var: j,
                got: got.to_string(),
                want: want.to_string(),
            });
        }
    }
    Ok(())
}

/// Assembles the invariance identity for tangent block `i` as a real-linear
/// system in the ansatz coefficients. `f` must be a normal form for `s`.
pub fn invariance_system(
    f: &JetMap,
    s: &Spectrum,
    i: usize,
) -> Result<InvarianceSystem, HypersurfaceError> {
    check_jet_against(f, s)?;
    if !centralizer_member(f, s).map_err(|e| HypersurfaceError::Internal(e.to_string()))? {
        return Err(HypersurfaceError::NotNormalForm);
    }
    let anz = ansatz(s, i)?;
    let lambda_i = s.eigenvalue(i);
    debug_assert!(lambda_i.is_real());

    let key_index: BTreeMap<&MonoKey, usize> =
        anz.keys.iter().enumerate().map(|(p, k)| (k, p)).collect();

    // forcing term from the tangent component
    let c0 = f.nonlinear_part(anz.tangent_var);
    let forcing = &c0 + &c0.conj();
    for (m, _) in forcing.iter() {
        if !key_index.contains_key(m) {
            return Err(HypersurfaceError::Internal(format!(
                "forcing monomial {m:?} escapes the resonance support"
            )));
        }
    }

    // image of each support monomial under substitution by f
    let images = f.components();
    let mut columns = Vec::with_capacity(anz.keys.len());
    for key in &anz.keys {
        let p = RealPoly::monomial(key.clone(), GaussRat::one()).substitute(images, None);
        for (m, _) in p.iter() {
            if !key_index.contains_key(m) {
                return Err(HypersurfaceError::Internal(format!(
                    "support closure violated: {m:?} from substituting into {key:?}"
                )));
            }
        }
        columns.push(p);
    }

    // complex rows gamma[M][K] = coeff of M in P_K minus lambda_i at K = M
    let nkeys = anz.keys.len();
    let mut gamma = vec![vec![GaussRat::zero(); nkeys]; nkeys];
    let mut rhs_c = vec![GaussRat::zero(); nkeys];
    for (mi, mkey) in anz.keys.iter().enumerate() {
        for (ki, col) in columns.iter().enumerate() {
            let mut g = col.coeff(mkey);
            if mi == ki {
                g = &g - &lambda_i;
            }
            gamma[mi][ki] = g;
        }
        rhs_c[mi] = forcing.coeff(mkey);
    }

    // conjugation consistency: the row at a swapped monomial must be the
    // conjugated row over swapped columns
    for (mi, mkey) in anz.keys.iter().enumerate() {
        let msw = key_index[&mkey.conj()];
        if rhs_c[msw] != rhs_c[mi].conj() {
            return Err(HypersurfaceError::Internal(
                "forcing term is not conjugation-symmetric".into(),
            ));
        }
        for (ki, kkey) in anz.keys.iter().enumerate() {
            let ksw = key_index[&kkey.conj()];
            if gamma[msw][ksw] != gamma[mi][ki].conj() {
                return Err(HypersurfaceError::Internal(
                    "system rows are not conjugation-consistent".into(),
                ));
            }
        }
    }

    // real split at representative monomials
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for (mi, mkey) in anz.keys.iter().enumerate() {
        let swapped = mkey.conj();
        if *mkey > swapped {
            continue;
        }
        let self_paired = *mkey == swapped;
        let mut row_re = vec![Rat::zero(); anz.unknowns.len()];
        let mut row_im = vec![Rat::zero(); anz.unknowns.len()];
        for (ui, u) in anz.unknowns.iter().enumerate() {
            let g_rep = &gamma[mi][key_index[&u.key]];
            match u.part {
                UnknownPart::Whole => {
                    row_re[ui] = g_rep.re.clone();
                    row_im[ui] = g_rep.im.clone();
                }
                UnknownPart::Re => {
                    let g_conj = &gamma[mi][key_index[&u.key.conj()]];
                    let sum = g_rep + g_conj;
                    row_re[ui] = sum.re;
                    row_im[ui] = sum.im;
                }
                UnknownPart::Im => {
                    let g_conj = &gamma[mi][key_index[&u.key.conj()]];
                    // coefficient of the imaginary coordinate is i*(g_rep - g_conj)
                    let diff = g_rep - g_conj;
                    row_re[ui] = -diff.im;
                    row_im[ui] = diff.re;
                }
            }
        }
        if self_paired {
            if row_im.iter().any(|x| !x.is_zero()) || !rhs_c[mi].im.is_zero() {
                return Err(HypersurfaceError::Internal(
                    "self-paired equation has a nonvanishing imaginary part".into(),
                ));
            }
            matrix.push(row_re);
            rhs.push(rhs_c[mi].re.clone());
        } else {
            matrix.push(row_re);
            rhs.push(rhs_c[mi].re.clone());
            matrix.push(row_im);
            rhs.push(rhs_c[mi].im.clone());
        }
    }

    Ok(InvarianceSystem { ansatz: anz, matrix, rhs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolutionStatus {
    Solvable,
    Inconsistent,
}

/// The affine space of all invariant surfaces for one tangent block:
/// `particular` plus real spans of `kernel_basis`. Every member reported
/// here has been re-verified against the invariance identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub status: SolutionStatus,
    pub particular: Option<HypersurfaceModel>,
    pub kernel_basis: Vec<HypersurfaceModel>,
    pub real_dimension: usize,
}

impl SolutionSpace {
    /// The member at the given kernel coordinates.
    pub fn instance(&self, coords: &[Rat]) -> Option<HypersurfaceModel> {
        let base = self.particular.as_ref()?;
        assert_eq!(coords.len(), self.kernel_basis.len(), "one coordinate per kernel vector");
        let mut rho = base.rho.clone();
        for (c, dir) in coords.iter().zip(&self.kernel_basis) {
            let scaled = dir.rho.scale(&GaussRat::new(c.clone(), Rat::zero()));
            rho = &rho + &scaled;
        }
        Some(HypersurfaceModel::new(base.tangent_var, rho).expect("affine combination stays valid"))
    }
}

impl Serialize for SolutionSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SolutionSpace", 4)?;
        let status = match self.status {
            SolutionStatus::Solvable => "Solvable",
            SolutionStatus::Inconsistent => "Inconsistent",
        };
        st.serialize_field("status", status)?;
        st.serialize_field("particular", &self.particular)?;
        st.serialize_field("kernel_basis", &self.kernel_basis)?;
        st.serialize_field("real_dimension", &self.real_dimension)?;
        st.end()
    }
}

/// Solves the invariance system for tangent block `i` and re-verifies every
/// reported generator before returning.
pub fn solve_invariant_surfaces(
    f: &JetMap,
    s: &Spectrum,
    i: usize,
) -> Result<SolutionSpace, HypersurfaceError> {
    let sys = invariance_system(f, s, i)?;
    let Some(AffineSolution { particular, kernel }) = solve_rational(&sys.matrix, &sys.rhs)
    else {
        return Ok(SolutionSpace {
            status: SolutionStatus::Inconsistent,
            particular: None,
            kernel_basis: Vec::new(),
            real_dimension: 0,
        });
    };
    let anz = &sys.ansatz;
    let tangent_var = anz.tangent_var();
    let base = HypersurfaceModel::new(tangent_var, anz.assemble(&particular))?;
    let mut kernel_models = Vec::with_capacity(kernel.len());
    for dir in &kernel {
        kernel_models.push(HypersurfaceModel::new(tangent_var, anz.assemble(dir))?);
    }

    // re-derive, never trust: the particular solution and the particular
    // solution shifted by each kernel generator must verify exactly
    let residual = verify_invariance(f, s, &base, None)?;
    if !residual.is_zero() {
        return Err(HypersurfaceError::Internal(
            "particular solution failed re-verification".into(),
        ));
    }
    for dir in &kernel_models {
        let shifted = HypersurfaceModel::new(tangent_var, &base.rho + &dir.rho)?;
        let residual = verify_invariance(f, s, &shifted, None)?;
        if !residual.is_zero() {
            return Err(HypersurfaceError::Internal(
                "kernel direction failed re-verification".into(),
            ));
        }
    }

    let real_dimension = kernel_models.len();
    Ok(SolutionSpace {
        status: SolutionStatus::Solvable,
        particular: Some(base),
        kernel_basis: kernel_models,
        real_dimension,
    })
}

/// Residual of the invariance identity for a candidate surface:
///
///   lambda_i * rho + (c0 + conj(c0)) - rho(f(z), conj(f(z)))
///
/// identically zero iff the surface is invariant at the polynomial level.
/// `order` truncates the residual at a total degree; `None` keeps it exact.
/// `f` must have the spectrum's linear part but need not be a normal form.
pub fn verify_invariance(
    f: &JetMap,
    s: &Spectrum,
    m: &HypersurfaceModel,
    order: Option<u32>,
) -> Result<RealPoly, HypersurfaceError> {
    check_jet_against(f, s)?;
    let i = m.tangent_block_for(s)?;
    let lambda_i = s.eigenvalue(i);
    let c0 = f.nonlinear_part(m.tangent_var());
    let forcing = &c0 + &c0.conj();
    let pushed = m.rho().substitute(f.components(), order);
    let residual = &(&m.rho().scale(&lambda_i) + &forcing) - &pushed;
    Ok(match order {
        Some(k) => residual.truncate(k),
        None => residual,
    })
}

/// Exact inertia (positive, negative, zero counts) of a Hermitian matrix,
/// by congruence reduction.
fn hermitian_inertia(mut h: Vec<Vec<GaussRat>>) -> (usize, usize, usize) {
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    while !h.is_empty() {
        let k = h.len();
        if h[0][0].is_zero() {
            if let Some(j) = (1..k).find(|&j| !h[j][j].is_zero()) {
                h.swap(0, j);
                for row in h.iter_mut() {
                    row.swap(0, j);
                }
            } else if let Some(j) = (1..k).find(|&j| !h[0][j].is_zero()) {
                // basis change e_0 <- e_0 + w e_j with w in {1, i} making
                // the new diagonal entry 2 Re(conj(w) h[0][j]) nonzero
                let w = if h[0][j].re.is_zero() { GaussRat::i() } else { GaussRat::one() };
                for c in 0..k {
                    let add = &w * &h[j][c];
                    h[0][c] = &h[0][c] + &add;
                }
                let wbar = w.conj();
                for r in 0..k {
                    let add = &wbar * &h[r][j];
                    h[r][0] = &h[r][0] + &add;
                }
            } else {
                // first row and column identically zero
                zero += 1;
                h.remove(0);
                for row in h.iter_mut() {
                    row.remove(0);
                }
                continue;
            }
        }
        let pivot = h[0][0].clone();
        assert!(!pivot.is_zero(), "pivot creation failed");
        assert!(pivot.is_real(), "Hermitian diagonal must be real");
        if pivot.re > Rat::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Schur complement on the trailing block
        let inv = pivot.inv();
        let mut next = Vec::with_capacity(h.len() - 1);
        for r in 1..h.len() {
            let mut row = Vec::with_capacity(h.len() - 1);
            for c in 1..h.len() {
                let correction = &(&h[r][0] * &inv) * &h[0][c];
                row.push(&h[r][c] - &correction);
            }
            next.push(row);
        }
        h = next;
    }
    (pos, neg, zero)
}

/// Diagnostic classification of a candidate surface against the quadric
/// models: is the full ansatz support quadratic, and what is the exact
/// inertia of the Hermitian part (coefficients of z_a zb_b over the
/// variables preceding the tangent block)?
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermitianReport {
    pub purely_quadratic: bool,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub label: String,
}

pub fn hermitian_report(
    s: &Spectrum,
    m: &HypersurfaceModel,
) -> Result<HermitianReport, HypersurfaceError> {
    let i = m.tangent_block_for(s)?;
    let purely_quadratic =
        s.extended_resonances(i)?.iter().all(|p| p.total_degree() == 2);

    let nprior = s.layout().first_var(i);
    let nvars = m.nvars();
    let mut h = vec![vec![GaussRat::zero(); nprior]; nprior];
    for (a, row) in h.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let mut hol = vec![0u32; nvars];
            let mut antihol = vec![0u32; nvars];
            hol[a] += 1;
            antihol[b] += 1;
            *entry = m.rho().coeff(&MonoKey::new(hol, antihol));
        }
    }
    for a in 0..nprior {
        for b in 0..nprior {
            if h[b][a] != h[a][b].conj() {
                return Err(HypersurfaceError::Internal(
                    "Hermitian part is not Hermitian despite reality of rho".into(),
                ));
            }
        }
    }
    let (positive, negative, zero) = hermitian_inertia(h);

    let label = if !purely_quadratic {
        "not purely quadratic"
    } else if zero == 0 && positive + negative > 0 && (positive == 0 || negative == 0) {
        "sphere model (up to definite Hermitian form)"
    } else if positive > 0 && negative > 0 {
        "hyperquadric, indefinite"
    } else {
        "degenerate Hermitian part"
    };
    Ok(HermitianReport {
        purely_quadratic,
        positive,
        negative,
        zero,
        label: label.to_string(),
    })
}
