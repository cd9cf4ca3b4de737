//! A built-in worked example shared by tests, documentation, and the CLI
//! demo flag: the three-variable contraction with eigenvalues 1/2, 1/4,
//! 1/16 (powers 1, 2, 4 of the base 1/2).
//!
//! Block 3 carries the resonant monomials z2^2, z1^2 z2, z1^4 and block 2
//! carries z1^2, so the general normal form is
//!
//!   f(z) = (z1/2, z2/4 + D z1^2, z3/16 + A z2^2 + B z1^2 z2 + C z1^4).
//!
//! The fixture uses D = 1, A = 0, B = 1/2, C = 5/4, for which the invariant
//! surfaces z3 + zb3 = rho form a 6-dimensional real family; `surface`
//! picks the member with coefficient 1 on z1^2 z2 and z2^2 and coefficient
//! i on z1^2 zb2, which contains the variety z1 = 0, z3 = z2^2.

use crate::hypersurface::HypersurfaceModel;
use crate::modelgeom::FormalCurve;
use crate::polyring::{rat, GaussRat, JetMap, MonoKey, RealPoly};
use crate::spectrum::Spectrum;

/// The flag value under which the CLI exposes this fixture.
pub const NAME: &str = "powers-1-2-4";

pub fn spectrum() -> Spectrum {
    Spectrum::power_of_base(rat(1, 2), vec![1, 2, 4], vec![1, 1, 1])
        .expect("fixture spectrum is valid")
}

fn key(hol: [u32; 3], antihol: [u32; 3]) -> MonoKey {
    MonoKey::new(hol.to_vec(), antihol.to_vec())
}

fn jet(d: GaussRat, a: GaussRat, b: GaussRat, c: GaussRat) -> JetMap {
    let mut second = RealPoly::zero(3);
    second.add_term(key([2, 0, 0], [0, 0, 0]), d);
    let mut third = RealPoly::zero(3);
    third.add_term(key([0, 2, 0], [0, 0, 0]), a);
    third.add_term(key([2, 1, 0], [0, 0, 0]), b);
    third.add_term(key([4, 0, 0], [0, 0, 0]), c);
    JetMap::new(
        spectrum().per_var_linear(),
        vec![RealPoly::zero(3), second, third],
        4,
    )
    .expect("fixture jet is valid")
}

/// The constrained normal form: D = 1, A = 0, B = 1/2, C = 5/4.
pub fn contraction() -> JetMap {
    jet(
        GaussRat::one(),
        GaussRat::zero(),
        GaussRat::from_frac(1, 2),
        GaussRat::from_frac(5, 4),
    )
}

/// The linear diagonal contraction (all resonant coefficients zero).
pub fn free_contraction() -> JetMap {
    jet(GaussRat::zero(), GaussRat::zero(), GaussRat::zero(), GaussRat::zero())
}

/// The obstructed variant: coefficient 1 on z2^2 in the third component,
/// for which no invariant surface over block 3 exists.
pub fn obstructed_contraction() -> JetMap {
    jet(GaussRat::zero(), GaussRat::one(), GaussRat::zero(), GaussRat::zero())
}

/// An invariant surface of `contraction`: z3 + zb3 = z1^2 z2 + zb1^2 zb2
/// + i z1^2 zb2 - i zb1^2 z2 + z2^2 + zb2^2.
pub fn surface() -> HypersurfaceModel {
    let mut rho = RealPoly::zero(3);
    rho.add_term(key([2, 1, 0], [0, 0, 0]), GaussRat::one());
    rho.add_term(key([0, 0, 0], [2, 1, 0]), GaussRat::one());
    rho.add_term(key([2, 0, 0], [0, 1, 0]), GaussRat::i());
    rho.add_term(key([0, 1, 0], [2, 0, 0]), GaussRat::i().conj());
    rho.add_term(key([0, 2, 0], [0, 0, 0]), GaussRat::one());
    rho.add_term(key([0, 0, 0], [0, 2, 0]), GaussRat::one());
    HypersurfaceModel::new(2, rho).expect("fixture surface is valid")
}

/// The variety z1 = 0, z3 = z2^2 inside `surface`, as the curve
/// t -> (0, t, t^2).
pub fn curve() -> FormalCurve {
    FormalCurve::new(vec![
        RealPoly::zero(1),
        RealPoly::monomial(MonoKey::new(vec![1], vec![0]), GaussRat::one()),
        RealPoly::monomial(MonoKey::new(vec![2], vec![0]), GaussRat::one()),
    ])
    .expect("fixture curve is valid")
}
