//! Sparse polynomials in z_1..z_n and their conjugates, with exact
//! Gaussian-rational coefficients.
//!
//! Terms live in a BTreeMap keyed by [`MonoKey`], so iteration is always in
//! canonical (lexicographic) order and zero coefficients are never stored.
//! A polynomial is real-valued on C^n exactly when it equals its own
//! conjugate, i.e. coeff(I, I') = conj(coeff(I', I)) for every term.

use super::coeff::GaussRat;
use super::mono::{degree_then_lex, MonoKey};
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealPoly {
    nvars: usize,
    terms: BTreeMap<MonoKey, GaussRat>,
}

impl RealPoly {
    pub fn zero(nvars: usize) -> Self {
        RealPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = RealPoly::zero(nvars);
        p.add_term(MonoKey::unit(nvars), c);
        p
    }

    /// The variable z_j as a polynomial.
    pub fn var(nvars: usize, j: usize) -> Self {
        RealPoly::monomial(MonoKey::var(nvars, j), GaussRat::one())
    }

    /// The conjugate variable zb_j as a polynomial.
    pub fn antivar(nvars: usize, j: usize) -> Self {
        RealPoly::monomial(MonoKey::antivar(nvars, j), GaussRat::one())
    }

    pub fn monomial(key: MonoKey, coeff: GaussRat) -> Self {
        let mut p = RealPoly::zero(key.nvars());
        p.add_term(key, coeff);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (MonoKey, GaussRat)>,
    {
        let mut p = RealPoly::zero(nvars);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `key`, zero when absent.
    pub fn coeff(&self, key: &MonoKey) -> GaussRat {
        self.terms.get(key).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Adds `c` to the coefficient of `key`, dropping the term if the sum
    /// cancels to zero.
    pub fn add_term(&mut self, key: MonoKey, c: GaussRat) {
        assert_eq!(key.nvars(), self.nvars, "term has wrong variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&MonoKey, &GaussRat)> {
        self.terms.iter()
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(MonoKey::total_degree).max().unwrap_or(0)
    }

    /// True when every exponent on the antiholomorphic side is zero.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(MonoKey::is_holomorphic)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return RealPoly::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        RealPoly { nvars: self.nvars, terms }
    }

    /// The conjugate polynomial: conjugate every coefficient and swap each
    /// monomial's holomorphic and antiholomorphic exponents.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(k, v)| (k.conj(), v.conj())).collect();
        RealPoly { nvars: self.nvars, terms }
    }

    /// True iff the polynomial takes real values on all of C^n.
    pub fn is_real_valued(&self) -> bool {
        self == &self.conj()
    }

    /// Drops every term of total degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.total_degree() <= max_degree)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        RealPoly { nvars: self.nvars, terms }
    }

    /// The sum of all terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.total_degree() == d)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        RealPoly { nvars: self.nvars, terms }
    }

    fn mul_impl(&self, other: &RealPoly, max_degree: Option<u32>) -> RealPoly {
        assert_eq!(self.nvars, other.nvars, "mismatched variable counts");
        let mut out = RealPoly::zero(self.nvars);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if let Some(limit) = max_degree {
                    if ka.total_degree() + kb.total_degree() > limit {
                        continue;
                    }
                }
                out.add_term(ka.mul(kb), ca * cb);
            }
        }
        out
    }

    /// Product truncated at total degree `max_degree`.
    pub fn mul_truncated(&self, other: &RealPoly, max_degree: u32) -> RealPoly {
        self.mul_impl(other, Some(max_degree))
    }

    /// Substitutes z_j -> images[j] and zb_j -> conj(images[j]).
    ///
    /// Every image must be holomorphic (a component of a map into C^k); all
    /// images live in one common variable set, which becomes the variable
    /// set of the result (substituting curve components into a defining
    /// function changes the variable count). `max_degree` truncates the
    /// result and all intermediates; pass `None` for the full exact
    /// expansion.
    pub fn substitute(&self, images: &[RealPoly], max_degree: Option<u32>) -> RealPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        if images.is_empty() {
            return self.clone();
        }
        let out_nvars = images[0].nvars();
        for im in images {
            assert_eq!(im.nvars(), out_nvars, "images disagree on variable count");
            assert!(im.is_holomorphic(), "substitution images must be holomorphic");
        }
        // Cache powers of each image and of its conjugate as needed.
        let mut hol_pows: Vec<Vec<RealPoly>> = images
            .iter()
            .map(|im| vec![RealPoly::constant(out_nvars, GaussRat::one()), im.clone()])
            .collect();
        let mut anti_pows: Vec<Vec<RealPoly>> = images
            .iter()
            .map(|im| vec![RealPoly::constant(out_nvars, GaussRat::one()), im.conj()])
            .collect();
        let power = |tab: &mut Vec<RealPoly>, e: usize| -> RealPoly {
            while tab.len() <= e {
                let next = match max_degree {
                    Some(limit) => tab[tab.len() - 1].mul_truncated(&tab[1], limit),
                    None => tab[tab.len() - 1].mul_impl(&tab[1], None),
                };
                tab.push(next);
            }
            tab[e].clone()
        };
        let mut out = RealPoly::zero(out_nvars);
        for (key, c) in &self.terms {
            let mut acc = RealPoly::constant(out_nvars, c.clone());
            for (j, &e) in key.hol.iter().enumerate() {
                if e > 0 {
                    let p = power(&mut hol_pows[j], e as usize);
                    acc = match max_degree {
                        Some(limit) => acc.mul_truncated(&p, limit),
                        None => acc.mul_impl(&p, None),
                    };
                }
            }
            for (j, &e) in key.antihol.iter().enumerate() {
                if e > 0 {
                    let p = power(&mut anti_pows[j], e as usize);
                    acc = match max_degree {
                        Some(limit) => acc.mul_truncated(&p, limit),
                        None => acc.mul_impl(&p, None),
                    };
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Wire form: one `{hol, antihol, coeff}` record per term, in canonical
    /// order. Used by every JSON output that carries a bare polynomial.
    pub fn wire_terms(&self) -> Vec<PolyTermWire> {
        self.terms
            .iter()
            .map(|(k, c)| PolyTermWire {
                hol: k.hol.clone(),
                antihol: k.antihol.clone(),
                coeff: c.clone(),
            })
            .collect()
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        assert_eq!(self.nvars, rhs.nvars, "mismatched variable counts");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        assert_eq!(self.nvars, rhs.nvars, "mismatched variable counts");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        self.mul_impl(rhs, None)
    }
}

impl Neg for &RealPoly {
    type Output = RealPoly;
    fn neg(self) -> RealPoly {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect();
        RealPoly { nvars: self.nvars, terms }
    }
}

#[derive(Serialize, serde::Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolyTermWire {
    pub hol: Vec<u32>,
    pub antihol: Vec<u32>,
    pub coeff: GaussRat,
}

impl Serialize for RealPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = self.wire_terms();
        let mut seq = serializer.serialize_seq(Some(wire.len()))?;
        for t in &wire {
            seq.serialize_element(t)?;
        }
        seq.end()
    }
}

impl fmt::Display for RealPoly {
    /// Human-readable rendering, low degrees first: `1/2*z1 - 2*z1^2*zb2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&MonoKey> = self.terms.keys().collect();
        keys.sort_by(|a, b| degree_then_lex(a, b));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            let mut factors = Vec::new();
            for (j, &e) in key.hol.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("z{}", j + 1)),
                    _ => factors.push(format!("z{}^{}", j + 1, e)),
                }
            }
            for (j, &e) in key.antihol.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("zb{}", j + 1)),
                    _ => factors.push(format!("zb{}^{}", j + 1, e)),
                }
            }
            let coeff_str = c.to_string();
            let (sign, body) = match coeff_str.strip_prefix('-') {
                // only peel a leading minus off plain real/imaginary coefficients
                Some(rest) if c.re.is_zero() || c.im.is_zero() => ("-", rest.to_string()),
                _ => ("+", coeff_str),
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let needs_parens = body.contains('+') || body.contains('-');
            if factors.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else if needs_parens {
                write!(f, "({})*{}", body, factors.join("*"))?;
            } else {
                write!(f, "{}*{}", body, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::coeff::rat;
    use super::*;

    fn c(n: i64, d: i64) -> GaussRat {
        GaussRat::from_rat(rat(n, d))
    }

    #[test]
    fn no_zero_terms_survive_arithmetic() {
        let n = 1;
        let p = RealPoly::from_terms(n, [(MonoKey::var(n, 0), c(1, 1))]);
        let q = RealPoly::from_terms(n, [(MonoKey::var(n, 0), c(-1, 1))]);
        let sum = &p + &q;
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn product_of_conjugate_pair_is_real() {
        // (z1 + i*zb2)(conj) is real-valued
        let n = 2;
        let p = RealPoly::from_terms(
            n,
            [
                (MonoKey::var(n, 0), GaussRat::one()),
                (MonoKey::antivar(n, 1), GaussRat::i()),
            ],
        );
        let prod = &p * &p.conj();
        assert!(prod.is_real_valued());
        assert!(!p.is_real_valued());
    }

    #[test]
    fn real_valued_iff_conjugate_symmetric_coefficients() {
        let n = 1;
        // z1*zb1 + (1+i) z1^2 + (1-i) zb1^2 is real valued
        let mut p = RealPoly::zero(n);
        p.add_term(MonoKey::new(vec![1], vec![1]), GaussRat::one());
        p.add_term(MonoKey::new(vec![2], vec![0]), GaussRat::new(rat(1, 1), rat(1, 1)));
        p.add_term(MonoKey::new(vec![0], vec![2]), GaussRat::new(rat(1, 1), rat(-1, 1)));
        assert!(p.is_real_valued());
        // break the pairing
        p.add_term(MonoKey::new(vec![2], vec![0]), GaussRat::i());
        assert!(!p.is_real_valued());
    }

    #[test]
    fn substitute_into_hermitian_square() {
        // z1*zb1 under z1 -> z1/2 becomes z1*zb1/4
        let n = 1;
        let p = RealPoly::monomial(MonoKey::new(vec![1], vec![1]), GaussRat::one());
        let image = RealPoly::var(n, 0).scale(&c(1, 2));
        let q = p.substitute(&[image], None);
        assert_eq!(q, RealPoly::monomial(MonoKey::new(vec![1], vec![1]), c(1, 4)));
    }

    #[test]
    fn substitute_keeps_reality() {
        // p = z2 + zb2, image map (z1/2, z2/4 + z1^2)
        let n = 2;
        let p = RealPoly::from_terms(
            n,
            [
                (MonoKey::var(n, 1), GaussRat::one()),
                (MonoKey::antivar(n, 1), GaussRat::one()),
            ],
        );
        let f1 = RealPoly::var(n, 0).scale(&c(1, 2));
        let mut f2 = RealPoly::var(n, 1).scale(&c(1, 4));
        f2.add_term(MonoKey::new(vec![2, 0], vec![0, 0]), GaussRat::one());
        let q = p.substitute(&[f1, f2], None);
        let mut expected = RealPoly::zero(n);
        expected.add_term(MonoKey::var(n, 1), c(1, 4));
        expected.add_term(MonoKey::antivar(n, 1), c(1, 4));
        expected.add_term(MonoKey::new(vec![2, 0], vec![0, 0]), GaussRat::one());
        expected.add_term(MonoKey::new(vec![0, 0], vec![2, 0]), GaussRat::one());
        assert_eq!(q, expected);
        assert!(q.is_real_valued());
    }

    #[test]
    fn truncation_drops_high_degrees_only() {
        let n = 1;
        let mut p = RealPoly::zero(n);
        p.add_term(MonoKey::new(vec![1], vec![0]), c(1, 2));
        p.add_term(MonoKey::new(vec![2], vec![1]), c(1, 1));
        p.add_term(MonoKey::new(vec![1], vec![1]), c(3, 1));
        let t = p.truncate(2);
        assert_eq!(t.num_terms(), 2);
        assert_eq!(t.coeff(&MonoKey::new(vec![1], vec![0])), c(1, 2));
        assert_eq!(t.coeff(&MonoKey::new(vec![1], vec![1])), c(3, 1));
    }

    #[test]
    fn serialization_is_canonical_and_deterministic() {
        let n = 2;
        // insert in scrambled order; output must be sorted by (hol, antihol)
        let mut p = RealPoly::zero(n);
        p.add_term(MonoKey::new(vec![1, 1], vec![0, 0]), c(5, 1));
        p.add_term(MonoKey::new(vec![0, 0], vec![1, 0]), c(1, 3));
        p.add_term(MonoKey::new(vec![0, 2], vec![0, 0]), GaussRat::i());
        let a = serde_json::to_string(&p).unwrap();
        let b = serde_json::to_string(&p.clone()).unwrap();
        assert_eq!(a, b);
        let keys: Vec<Vec<u32>> = serde_json::from_str::<serde_json::Value>(&a)
            .unwrap()
            .as_array()
            .unwrap()
            .iter()
            .map(|t| {
                t["hol"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_u64().unwrap() as u32)
                    .collect()
            })
            .collect();
        assert_eq!(keys, vec![vec![0, 0], vec![0, 2], vec![1, 1]]);
    }

    #[test]
    fn display_reads_naturally() {
        let n = 2;
        let mut p = RealPoly::zero(n);
        p.add_term(MonoKey::var(n, 0), c(1, 2));
        p.add_term(MonoKey::new(vec![2, 0], vec![0, 1]), c(-2, 1));
        assert_eq!(p.to_string(), "1/2*z1 - 2*z1^2*zb2");
        assert_eq!(RealPoly::zero(1).to_string(), "0");
    }
}
