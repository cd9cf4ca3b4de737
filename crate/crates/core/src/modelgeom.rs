//! Geometry diagnostics on polynomial hypersurface models: weighted
//! homogeneity, formal curves, scaling limits, and a bounded monomial-curve
//! search.
//!
//! Everything here treats a model z_t + zb_t = rho(v, vb) as a standalone
//! real-algebraic object; no eigenvalue data enters. The curve search is an
//! explicitly bounded oracle: an empty answer means "no monomial curve up
//! to the degree bound", never a finite-type claim.

use crate::hypersurface::HypersurfaceModel;
use crate::linsys::solve_rational;
use crate::polyring::{GaussRat, MonoKey, Rat, RealPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelGeomError {
    #[error("object spans {got} variables, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("the zero curve has no scaling limit")]
    ZeroCurve,
    #[error("weight vector is invalid: {0}")]
    BadWeights(String),
    #[error("curve component {component}: {reason}")]
    BadCurve { component: usize, reason: String },
    #[error("degree bound must be at least 1")]
    BadDegreeBound,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Positive integer weights making the defining polynomial weighted
/// homogeneous: sum of r_j over a monomial's exponents equals `target`,
/// the weight of the tangent coordinate. `r` covers every variable and is
/// gcd-reduced as a whole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightVector {
    pub r: Vec<u32>,
    pub target: u32,
}

/// A polynomial curve C -> C^n through the origin: one polynomial per
/// component in a single variable t, each holomorphic with zero constant
/// term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalCurve {
    components: Vec<RealPoly>,
}

impl FormalCurve {
    pub fn new(components: Vec<RealPoly>) -> Result<Self, ModelGeomError> {
        for (j, c) in components.iter().enumerate() {
            if c.nvars() != 1 {
                return Err(ModelGeomError::BadCurve {
                    component: j,
                    reason: format!("expected one variable, got {}", c.nvars()),
                });
            }
            if !c.is_holomorphic() {
                return Err(ModelGeomError::BadCurve {
                    component: j,
                    reason: "components must be holomorphic in t".into(),
                });
            }
            if c.iter().any(|(k, _)| k.total_degree() == 0) {
                return Err(ModelGeomError::BadCurve {
                    component: j,
                    reason: "curve must pass through the origin".into(),
                });
            }
        }
        Ok(FormalCurve { components })
    }

    pub fn zero(n: usize) -> Self {
        FormalCurve { components: vec![RealPoly::zero(1); n] }
    }

    /// A single-monomial curve component c * t^deg placed at `var`.
    pub fn monomial(n: usize, var: usize, coeff: GaussRat, deg: u32) -> Self {
        let mut curve = FormalCurve::zero(n);
        curve.components[var] =
            RealPoly::monomial(MonoKey::new(vec![deg], vec![0]), coeff);
        curve
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, j: usize) -> &RealPoly {
        &self.components[j]
    }

    pub fn components(&self) -> &[RealPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RealPoly::is_zero)
    }

    /// Lowest degree present in component `j`; None for the zero component.
    pub fn vanishing_order(&self, j: usize) -> Option<u32> {
        self.components[j].iter().map(|(k, _)| k.total_degree()).min()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveTermWire {
    deg: u32,
    coeff: GaussRat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormalCurveWire {
    components: Vec<Vec<CurveTermWire>>,
}

impl Serialize for FormalCurve {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(k, v)| CurveTermWire { deg: k.total_degree(), coeff: v.clone() })
                    .collect()
            })
            .collect();
        FormalCurveWire { components }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalCurve {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = FormalCurveWire::deserialize(deserializer)?;
        let mut components = Vec::with_capacity(wire.components.len());
        for terms in &wire.components {
            let mut poly = RealPoly::zero(1);
            for t in terms {
                let key = MonoKey::new(vec![t.deg], vec![0]);
                if !poly.coeff(&key).is_zero() {
                    return Err(D::Error::custom("duplicate curve term degree"));
                }
                poly.add_term(key, t.coeff.clone());
            }
            components.push(poly);
        }
        FormalCurve::new(components).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Steps an odometer over the box `lo..=hi` per digit, first digit most
/// significant. Returns false once the odometer wraps past the last value.
fn odometer_step(digits: &mut [i64], lo: i64, hi: i64) -> bool {
    for d in digits.iter_mut().rev() {
        if *d < hi {
            *d += 1;
            return true;
        }
        *d = lo;
    }
    false
}

/// Recovers positive integer weights from the support of the defining
/// polynomial: solves sum_j r_j (I_j + I'_j) = target over all support
/// keys, then looks for a strictly positive point in the solution space by
/// scanning small integer combinations of the kernel basis. Returns the
/// gcd-reduced weight vector, with weight 1 for variables that do not occur
/// and the target weight for the tangent variable.
pub fn homogeneity_weights(m: &HypersurfaceModel) -> Option<WeightVector> {
    let rho = m.rho();
    if rho.is_zero() {
        return None;
    }
    let n = m.nvars();
    let occurring: Vec<usize> = (0..n)
        .filter(|&j| rho.iter().any(|(k, _)| k.hol[j] + k.antihol[j] > 0))
        .collect();

    // unknowns: weights of occurring variables, then the target
    let ncols = occurring.len() + 1;
    let mut matrix = Vec::new();
    for (key, _) in rho.iter() {
        let mut row = Vec::with_capacity(ncols);
        for &j in &occurring {
            row.push(Rat::from(BigInt::from(key.hol[j] + key.antihol[j])));
        }
        row.push(-Rat::one());
        matrix.push(row);
    }
    let rhs = vec![Rat::zero(); matrix.len()];
    let solution = solve_rational(&matrix, &rhs).expect("homogeneous system is solvable");

    let nullity = solution.kernel.len();
    if nullity == 0 {
        return None;
    }
    let mut digits = vec![-4i64; nullity];
    let combination = loop {
        let candidate: Vec<Rat> = (0..ncols)
            .map(|c| {
                digits
                    .iter()
                    .zip(&solution.kernel)
                    .map(|(&s, k)| Rat::from(BigInt::from(s)) * &k[c])
                    .sum()
            })
            .collect();
        if candidate.iter().all(|x| x.is_positive()) {
            break Some(candidate);
        }
        if !odometer_step(&mut digits, -4, 4) {
            break None;
        }
    }?;

    // clear denominators and reduce
    let lcm = combination
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> =
        combination.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    for x in &mut ints {
        *x /= &gcd;
    }

    let target = ints[ncols - 1].to_u32()?;
    let mut r = vec![1u32; n];
    for (pos, &j) in occurring.iter().enumerate() {
        r[j] = ints[pos].to_u32()?;
    }
    r[m.tangent_var()] = target;

    // exhaustive re-check of the weight equation on every support key
    for (key, _) in rho.iter() {
        let total: u64 = (0..n)
            .map(|j| u64::from(key.hol[j] + key.antihol[j]) * u64::from(r[j]))
            .sum();
        assert_eq!(total, u64::from(target), "weight recovery produced a non-solution");
    }
    Some(WeightVector { r, target })
}

/// Residual of the defining equation along a curve, as a polynomial in t
/// and its conjugate:
///
///   phi_t(t) + conj(phi_t)(t) - rho(phi(t), conj(phi(t)))
///
/// Zero residual certifies containment of the curve in the surface at the
/// polynomial level. `order` truncates the residual; `None` keeps it exact.
pub fn curve_membership(
    m: &HypersurfaceModel,
    phi: &FormalCurve,
    order: Option<u32>,
) -> Result<RealPoly, ModelGeomError> {
    if phi.n() != m.nvars() {
        return Err(ModelGeomError::DimensionMismatch { got: phi.n(), want: m.nvars() });
    }
    let pushed = m.rho().substitute(phi.components(), order);
    let tangent = phi.component(m.tangent_var());
    let residual = &(tangent + &tangent.conj()) - &pushed;
    Ok(match order {
        Some(k) => residual.truncate(k),
        None => residual,
    })
}

/// The weighted scaling limit of a curve: find the component minimizing the
/// ratio (vanishing order) / (weight), smallest index on ties, and keep in
/// every component exactly the monomials t^d sharing that minimal ratio
/// d / r_mu. This is the coefficientwise limit of the reparametrized curve
/// under the weighted dilations, and it is weighted-quasi-homogeneous by
/// construction.
pub fn scaling_limit_curve(
    phi: &FormalCurve,
    w: &WeightVector,
) -> Result<FormalCurve, ModelGeomError> {
    if phi.is_zero() {
        return Err(ModelGeomError::ZeroCurve);
    }
    if w.r.len() != phi.n() {
        return Err(ModelGeomError::DimensionMismatch { got: w.r.len(), want: phi.n() });
    }
    if w.r.iter().any(|&x| x == 0) || w.target == 0 {
        return Err(ModelGeomError::BadWeights("weights must be positive".into()));
    }

    // argmin of d_mu / r_mu by exact cross multiplication
    let mut best: Option<(usize, u32)> = None;
    for mu in 0..phi.n() {
        let Some(d) = phi.vanishing_order(mu) else { continue };
        best = match best {
            None => Some((mu, d)),
            Some((bmu, bd)) => {
                if u64::from(d) * u64::from(w.r[bmu]) < u64::from(bd) * u64::from(w.r[mu]) {
                    Some((mu, d))
                } else {
                    Some((bmu, bd))
                }
            }
        };
    }
    let (lmu, ld) = best.expect("nonzero curve has a vanishing order");

    let mut components = Vec::with_capacity(phi.n());
    for mu in 0..phi.n() {
        let mut kept = RealPoly::zero(1);
        for (key, c) in phi.component(mu).iter() {
            let d = key.total_degree();
            if u64::from(d) * u64::from(w.r[lmu]) == u64::from(ld) * u64::from(w.r[mu]) {
                kept.add_term(key.clone(), c.clone());
            }
        }
        components.push(kept);
    }
    FormalCurve::new(components)
}

const TRIAL_COEFFS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1)];

fn trial(idx: usize) -> GaussRat {
    let (re, im) = TRIAL_COEFFS[idx];
    GaussRat::new(Rat::from(BigInt::from(re)), Rat::from(BigInt::from(im)))
}

/// Bounded search for curves of the monomial form z_j = c_j t^{d_j} lying
/// exactly in the surface. Degree patterns run lexicographically over
/// {0..dmax}^n (0 meaning a zero component); for each pattern the
/// non-tangent coefficients are drawn from a fixed small trial set and the
/// tangent coefficient is solved for, and the first assignment that
/// verifies is kept. Every returned curve has been re-checked by
/// `curve_membership`, and when the model has recoverable weights its
/// scaling limit is re-checked too. An empty answer is evidence at this
/// bound, not a finite-type proof.
pub fn monomial_curve_search(
    m: &HypersurfaceModel,
    dmax: u32,
) -> Result<Vec<FormalCurve>, ModelGeomError> {
    if dmax == 0 {
        return Err(ModelGeomError::BadDegreeBound);
    }
    let n = m.nvars();
    let t = m.tangent_var();
    let weights = homogeneity_weights(m);

    let mut found = Vec::new();
    let mut pattern = vec![0i64; n];
    loop {
        if !odometer_step(&mut pattern, 0, i64::from(dmax)) {
            break;
        }
        let active: Vec<usize> =
            (0..n).filter(|&j| j != t && pattern[j] > 0).collect();
        let dt = pattern[t] as u32;
        if active.is_empty() && dt == 0 {
            continue;
        }

        let mut trial_idx = vec![0i64; active.len()];
        'assignments: loop {
            let mut images = vec![RealPoly::zero(1); n];
            for (pos, &j) in active.iter().enumerate() {
                images[j] = RealPoly::monomial(
                    MonoKey::new(vec![pattern[j] as u32], vec![0]),
                    trial(trial_idx[pos] as usize),
                );
            }
            let pushed = m.rho().substitute(&images, None);

            let candidate = if dt == 0 {
                pushed.is_zero().then(|| {
                    let mut comps = images.clone();
                    comps[t] = RealPoly::zero(1);
                    FormalCurve::new(comps).expect("monomial components are valid")
                })
            } else {
                let ct = pushed.coeff(&MonoKey::new(vec![dt], vec![0]));
                if ct.is_zero() {
                    None
                } else {
                    let mut expected = RealPoly::zero(1);
                    expected.add_term(MonoKey::new(vec![dt], vec![0]), ct.clone());
                    expected.add_term(MonoKey::new(vec![0], vec![dt]), ct.conj());
                    (pushed == expected).then(|| {
                        let mut comps = images.clone();
                        comps[t] =
                            RealPoly::monomial(MonoKey::new(vec![dt], vec![0]), ct);
                        FormalCurve::new(comps).expect("monomial components are valid")
                    })
                }
            };

            if let Some(curve) = candidate {
                let residual = curve_membership(m, &curve, None)?;
                if !residual.is_zero() {
                    return Err(ModelGeomError::Internal(
                        "search candidate failed the membership re-check".into(),
                    ));
                }
                if let Some(w) = &weights {
                    let limit = scaling_limit_curve(&curve, w)?;
                    let residual = curve_membership(m, &limit, None)?;
                    if !residual.is_zero() {
                        return Err(ModelGeomError::Internal(
                            "scaling limit of a member escaped the surface".into(),
                        ));
                    }
                }
                found.push(curve);
                break 'assignments;
            }
            if trial_idx.is_empty()
                || !odometer_step(&mut trial_idx, 0, TRIAL_COEFFS.len() as i64 - 1)
            {
                break 'assignments;
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo;

    fn sphere_model(n: usize) -> HypersurfaceModel {
        let mut rho = RealPoly::zero(n);
        for j in 0..n - 1 {
            let mut hol = vec![0u32; n];
            let mut antihol = vec![0u32; n];
            hol[j] = 1;
            antihol[j] = 1;
            rho.add_term(MonoKey::new(hol, antihol), GaussRat::one());
        }
        HypersurfaceModel::new(n - 1, rho).unwrap()
    }

    #[test]
    fn weights_of_the_demo_model() {
        let w = homogeneity_weights(&demo::surface()).unwrap();
        assert_eq!(w.r, vec![1, 2, 4]);
        assert_eq!(w.target, 4);
    }

    #[test]
    fn weights_of_the_sphere() {
        let w = homogeneity_weights(&sphere_model(3)).unwrap();
        assert_eq!(w.r, vec![1, 1, 2]);
        assert_eq!(w.target, 2);
    }

    #[test]
    fn incompatible_degrees_have_no_weights() {
        let mut rho = RealPoly::zero(2);
        rho.add_term(MonoKey::new(vec![1, 0], vec![1, 0]), GaussRat::one());
        rho.add_term(MonoKey::new(vec![2, 0], vec![2, 0]), GaussRat::one());
        let m = HypersurfaceModel::new(1, rho).unwrap();
        assert_eq!(homogeneity_weights(&m), None);
    }

    #[test]
    fn zero_model_has_no_weights() {
        let m = HypersurfaceModel::new(1, RealPoly::zero(2)).unwrap();
        assert_eq!(homogeneity_weights(&m), None);
    }

    #[test]
    fn demo_curve_lies_in_the_demo_surface() {
        let residual =
            curve_membership(&demo::surface(), &demo::curve(), None).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn sphere_obstructs_the_axis_disc() {
        let m = sphere_model(2);
        let phi = FormalCurve::monomial(2, 0, GaussRat::one(), 1);
        let residual = curve_membership(&m, &phi, None).unwrap();
        let expected =
            RealPoly::monomial(MonoKey::new(vec![1], vec![1]), GaussRat::from_int(-1));
        assert_eq!(residual, expected);
    }

    #[test]
    fn origin_lies_on_every_model() {
        let residual =
            curve_membership(&demo::surface(), &FormalCurve::zero(3), None).unwrap();
        assert!(residual.is_zero());
    }

    #[test]
    fn scaling_limit_picks_the_fastest_component() {
        let phi = FormalCurve::new(vec![
            RealPoly::monomial(MonoKey::new(vec![2], vec![0]), GaussRat::one()),
            RealPoly::monomial(MonoKey::new(vec![1], vec![0]), GaussRat::one()),
            RealPoly::zero(1),
        ])
        .unwrap();
        let w = WeightVector { r: vec![1, 2, 4], target: 4 };
        let limit = scaling_limit_curve(&phi, &w).unwrap();
        assert!(limit.component(0).is_zero());
        assert_eq!(
            limit.component(1),
            &RealPoly::monomial(MonoKey::new(vec![1], vec![0]), GaussRat::one())
        );
        assert!(limit.component(2).is_zero());
    }

    #[test]
    fn scaling_limit_keeps_ties() {
        let phi = FormalCurve::new(vec![
            RealPoly::monomial(MonoKey::new(vec![1], vec![0]), GaussRat::one()),
            RealPoly::monomial(MonoKey::new(vec![2], vec![0]), GaussRat::one()),
            RealPoly::zero(1),
        ])
        .unwrap();
        let w = WeightVector { r: vec![1, 2, 4], target: 4 };
        let limit = scaling_limit_curve(&phi, &w).unwrap();
        assert_eq!(&limit, &phi);
    }

    #[test]
    fn scaling_limit_of_an_already_leading_curve() {
        let phi = FormalCurve::monomial(2, 0, GaussRat::one(), 1);
        let w = WeightVector { r: vec![1, 1], target: 2 };
        assert_eq!(scaling_limit_curve(&phi, &w).unwrap(), phi);
    }

    #[test]
    fn zero_curve_has_no_scaling_limit() {
        let w = WeightVector { r: vec![1, 1], target: 2 };
        assert_eq!(
            scaling_limit_curve(&FormalCurve::zero(2), &w).unwrap_err(),
            ModelGeomError::ZeroCurve
        );
    }

    #[test]
    fn search_finds_the_demo_variety() {
        let curves = monomial_curve_search(&demo::surface(), 2).unwrap();
        assert!(curves.contains(&demo::curve()));
        for c in &curves {
            assert!(curve_membership(&demo::surface(), c, None).unwrap().is_zero());
        }
    }

    #[test]
    fn search_on_the_sphere_is_empty() {
        assert!(monomial_curve_search(&sphere_model(3), 6).unwrap().is_empty());
    }

    #[test]
    fn search_on_a_pluriharmonic_model_finds_the_parabola() {
        // z2 + zb2 = z1^2 + zb1^2
        let mut rho = RealPoly::zero(2);
        rho.add_term(MonoKey::new(vec![2, 0], vec![0, 0]), GaussRat::one());
        rho.add_term(MonoKey::new(vec![0, 0], vec![2, 0]), GaussRat::one());
        let m = HypersurfaceModel::new(1, rho).unwrap();
        let curves = monomial_curve_search(&m, 2).unwrap();
        let parabola = FormalCurve::new(vec![
            RealPoly::monomial(MonoKey::new(vec![1], vec![0]), GaussRat::one()),
            RealPoly::monomial(MonoKey::new(vec![2], vec![0]), GaussRat::one()),
        ])
        .unwrap();
        assert!(curves.contains(&parabola));
    }

    #[test]
    fn search_results_are_ordered_by_degree_pattern() {
        let curves = monomial_curve_search(&demo::surface(), 4).unwrap();
        assert!(!curves.is_empty());
        assert_eq!(&curves[0], &demo::curve());
        let patterns: Vec<Vec<Option<u32>>> = curves
            .iter()
            .map(|c| (0..c.n()).map(|j| c.vanishing_order(j)).collect())
            .collect();
        let mut sorted = patterns.clone();
        sorted.sort();
        assert_eq!(patterns, sorted);
    }

    #[test]
    fn curve_wire_round_trip() {
        let json = serde_json::to_string(&demo::curve()).unwrap();
        let back: FormalCurve = serde_json::from_str(&json).unwrap();
        assert_eq!(back, demo::curve());
        assert_eq!(
            json,
            r#"{"components":[[],[{"deg":1,"coeff":{"re":"1","im":"0"}}],[{"deg":2,"coeff":{"re":"1","im":"0"}}]]}"#
        );
    }

    #[test]
    fn curve_wire_rejects_bad_input() {
        let r: Result<FormalCurve, _> = serde_json::from_str(
            r#"{"components":[[{"deg":0,"coeff":{"re":"1","im":"0"}}]]}"#,
        );
        assert!(r.is_err());
        let r: Result<FormalCurve, _> = serde_json::from_str(
            r#"{"components":[[{"deg":1,"coeff":{"re":"1","im":"0"}},{"deg":1,"coeff":{"re":"2","im":"0"}}]]}"#,
        );
        assert!(r.is_err());
        let r: Result<FormalCurve, _> =
            serde_json::from_str(r#"{"components":[[]],"extra":0}"#);
        assert!(r.is_err());
    }

    #[test]
    fn weight_wire_round_trip() {
        let w = WeightVector { r: vec![1, 2, 4], target: 4 };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"r":[1,2,4],"target":4}"#);
        let back: WeightVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
        let r: Result<WeightVector, _> =
            serde_json::from_str(r#"{"r":[1],"target":2,"x":0}"#);
        assert!(r.is_err());
    }

    #[test]
    fn searched_curves_respect_scaling_limits() {
        // structural invariant: the search itself re-checks limits; this
        // test just pins one concrete limit
        let curves = monomial_curve_search(&demo::surface(), 2).unwrap();
        let w = homogeneity_weights(&demo::surface()).unwrap();
        for c in &curves {
            let limit = scaling_limit_curve(c, &w).unwrap();
            assert!(curve_membership(&demo::surface(), &limit, None)
                .unwrap()
                .is_zero());
        }
    }
}
