//! Truncated polynomial self-maps of (C^n, 0) with diagonal linear part.
//!
//! A `JetMap` of order k is a tuple of holomorphic polynomials of degree at
//! most k with zero constant term, whose degree-1 part is diagonal:
//! component j starts with `linear[j] * z_j`. Composition is computed
//! exactly and truncated at total degree k, so jets form the arena in which
//! all normalization and conjugacy checks happen.

use super::coeff::GaussRat;
use super::mono::MonoKey;
use super::poly::RealPoly;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JetError {
    #[error("jet component {component}: {reason}")]
    BadComponent { component: usize, reason: String },
    #[error("expected {expected} components, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("mismatched dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("jet order must be at least 1")]
    BadOrder,
    #[error("linear part is singular (zero entry at component {0}); jet is not invertible")]
    SingularLinear(usize),
    #[error("inversion failed verification; this is a bug")]
    InversionFailed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetMap {
    n: usize,
    order: u32,
    linear: Vec<GaussRat>,
    /// Full components including the linear term.
    components: Vec<RealPoly>,
}

impl JetMap {
    /// Builds a jet from its diagonal linear part and the nonlinear tails.
    ///
    /// Each `nonlinear[j]` must be holomorphic with every term of total
    /// degree between 2 and `order`.
    pub fn new(
        linear: Vec<GaussRat>,
        nonlinear: Vec<RealPoly>,
        order: u32,
    ) -> Result<Self, JetError> {
        if order == 0 {
            return Err(JetError::BadOrder);
        }
        let n = linear.len();
        if nonlinear.len() != n {
            return Err(JetError::WrongArity { expected: n, got: nonlinear.len() });
        }
        let mut components = Vec::with_capacity(n);
        for (j, tail) in nonlinear.into_iter().enumerate() {
            if tail.nvars() != n {
                return Err(JetError::BadComponent {
                    component: j,
                    reason: format!("polynomial in {} variables, jet has {}", tail.nvars(), n),
                });
            }
            if !tail.is_holomorphic() {
                return Err(JetError::BadComponent {
                    component: j,
                    reason: "nonlinear part must be holomorphic".into(),
                });
            }
            for (key, _) in tail.iter() {
                let d = key.total_degree();
                if d < 2 {
                    return Err(JetError::BadComponent {
                        component: j,
                        reason: "nonlinear part contains a term of degree < 2".into(),
                    });
                }
                if d > order {
                    return Err(JetError::BadComponent {
                        component: j,
                        reason: format!("term of degree {d} exceeds jet order {order}"),
                    });
                }
            }
            let mut comp = tail;
            comp.add_term(MonoKey::var(n, j), linear[j].clone());
            components.push(comp);
        }
        Ok(JetMap { n, order, linear, components })
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let linear = vec![GaussRat::one(); n];
        let nonlinear = vec![RealPoly::zero(n); n];
        JetMap::new(linear, nonlinear, order).expect("identity jet is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn linear(&self) -> &[GaussRat] {
        &self.linear
    }

    /// Full component j, linear term included.
    pub fn component(&self, j: usize) -> &RealPoly {
        &self.components[j]
    }

    pub fn components(&self) -> &[RealPoly] {
        &self.components
    }

    /// Component j with the linear term removed.
    pub fn nonlinear_part(&self, j: usize) -> RealPoly {
        let mut p = self.components[j].clone();
        p.add_term(MonoKey::var(self.n, j), -&self.linear[j]);
        p
    }

    pub fn is_identity(&self) -> bool {
        self == &JetMap::identity(self.n, self.order)
    }

    /// Re-truncates every component at `order`.
    pub fn truncate(&self, order: u32) -> Result<Self, JetError> {
        if order == 0 {
            return Err(JetError::BadOrder);
        }
        let components = self.components.iter().map(|c| c.truncate(order)).collect();
        Ok(JetMap { n: self.n, order, linear: self.linear.clone(), components })
    }

    /// Exact composition self ∘ other, truncated at total degree `order`.
    pub fn compose(&self, other: &JetMap, order: u32) -> Result<JetMap, JetError> {
        if self.n != other.n {
            return Err(JetError::DimensionMismatch(self.n, other.n));
        }
        if order == 0 {
            return Err(JetError::BadOrder);
        }
        let components: Vec<RealPoly> = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components, Some(order)))
            .collect();
        let linear: Vec<GaussRat> =
            self.linear.iter().zip(&other.linear).map(|(a, b)| a * b).collect();
        // Both maps fix 0 with diagonal linear parts, so the composition
        // does too; rebuild through the constructor to keep the invariants
        // checked.
        let nonlinear: Vec<RealPoly> = components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut p = c.clone();
                p.add_term(MonoKey::var(self.n, j), -&linear[j]);
                p
            })
            .collect();
        JetMap::new(linear, nonlinear, order)
    }

    /// Compositional inverse modulo degree `order` + 1.
    ///
    /// Requires an invertible (all-nonzero) diagonal linear part. The
    /// result g satisfies self ∘ g ≡ g ∘ self ≡ id truncated at `order`,
    /// and this is verified before returning.
    pub fn inverse(&self, order: u32) -> Result<JetMap, JetError> {
        for (j, l) in self.linear.iter().enumerate() {
            if l.is_zero() {
                return Err(JetError::SingularLinear(j));
            }
        }
        let inv_linear: Vec<GaussRat> = self.linear.iter().map(GaussRat::inv).collect();
        // Solve f(g(z)) = z by fixed-point iteration:
        //   g  <-  L^{-1} (id - N(g))
        // where f = L + N. Each pass fixes one more degree, so `order`
        // passes are enough.
        let nonlinear: Vec<RealPoly> = (0..self.n).map(|j| self.nonlinear_part(j)).collect();
        let id_components: Vec<RealPoly> = (0..self.n).map(|j| RealPoly::var(self.n, j)).collect();
        let mut g: Vec<RealPoly> = (0..self.n)
            .map(|j| RealPoly::var(self.n, j).scale(&inv_linear[j]))
            .collect();
        for _ in 1..order {
            g = (0..self.n)
                .map(|j| {
                    let n_of_g = nonlinear[j].substitute(&g, Some(order));
                    (&id_components[j] - &n_of_g).scale(&inv_linear[j]).truncate(order)
                })
                .collect();
        }
        let g_nonlinear: Vec<RealPoly> = g
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut p = c.clone();
                p.add_term(MonoKey::var(self.n, j), -&inv_linear[j]);
                p
            })
            .collect();
        let inv = JetMap::new(inv_linear, g_nonlinear, order)?;
        let id = JetMap::identity(self.n, order);
        if self.compose(&inv, order)? != id || inv.compose(self, order)? != id {
            return Err(JetError::InversionFailed);
        }
        Ok(inv)
    }

    /// Componentwise difference of compositions, (self ∘ a) - (self' ∘ b)
    /// style residuals are built from this.
    pub fn sub_components(&self, other: &JetMap) -> Vec<RealPoly> {
        assert_eq!(self.n, other.n, "mismatched dimensions");
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect()
    }
}

/// Wire form of a jet. `components` hold only the nonlinear monomials;
/// the linear part lives in `linear` alone.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct JetWire {
    pub n: usize,
    pub order: u32,
    pub linear: Vec<GaussRat>,
    pub components: Vec<Vec<JetTermWire>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct JetTermWire {
    pub exponents: Vec<u32>,
    pub coeff: GaussRat,
}

impl JetMap {
    pub fn to_wire(&self) -> JetWire {
        let components = (0..self.n)
            .map(|j| {
                self.nonlinear_part(j)
                    .iter()
                    .map(|(k, c)| JetTermWire { exponents: k.hol.clone(), coeff: c.clone() })
                    .collect()
            })
            .collect();
        JetWire {
            n: self.n,
            order: self.order,
            linear: self.linear.clone(),
            components,
        }
    }

    pub fn from_wire(wire: &JetWire) -> Result<Self, String> {
        if wire.linear.len() != wire.n {
            return Err(format!(
                "field 'linear': expected {} entries, got {}",
                wire.n,
                wire.linear.len()
            ));
        }
        if wire.components.len() != wire.n {
            return Err(format!(
                "field 'components': expected {} entries, got {}",
                wire.n,
                wire.components.len()
            ));
        }
        let mut nonlinear = Vec::with_capacity(wire.n);
        for (j, terms) in wire.components.iter().enumerate() {
            let mut p = RealPoly::zero(wire.n);
            let mut seen = std::collections::BTreeSet::new();
            for t in terms {
                if t.exponents.len() != wire.n {
                    return Err(format!(
                        "field 'components[{j}]': exponent vector of length {}, expected {}",
                        t.exponents.len(),
                        wire.n
                    ));
                }
                if !seen.insert(t.exponents.clone()) {
                    return Err(format!(
                        "field 'components[{j}]': duplicate exponents {:?}",
                        t.exponents
                    ));
                }
                let key = MonoKey::new(t.exponents.clone(), vec![0; wire.n]);
                p.add_term(key, t.coeff.clone());
            }
            nonlinear.push(p);
        }
        JetMap::new(wire.linear.clone(), nonlinear, wire.order).map_err(|e| e.to_string())
    }
}

impl Serialize for JetMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JetMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = JetWire::deserialize(deserializer)?;
        JetMap::from_wire(&wire).map_err(serde::de::Error::custom)
    }
}
