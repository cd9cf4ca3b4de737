//! Exact polynomial arithmetic over Gaussian rationals: scalars, monomial
//! keys, sparse polynomials in z and conj(z), and truncated jets.

mod coeff;
mod jet;
mod mono;
mod poly;

pub use coeff::{parse_rat, rat, rat_int, rat_to_string, GaussRat, Rat};
pub use jet::{JetError, JetMap, JetTermWire, JetWire};
pub use mono::{degree_then_lex, BlockLayout, MonoKey};
pub use poly::{PolyTermWire, RealPoly};
