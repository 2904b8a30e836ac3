//! Graded supercommutative algebra: `H*(X)`, the tautological algebra `ℍ`,
//! Künneth and Chern calculus, the Whitney coproduct and Poincaré series.

mod algebra;
mod coproduct;
mod hpoly;
mod kunneth;
mod series;
mod xcoh;

pub use algebra::{
    format_coeff, koszul_sign, Coeff, EchelonBasis, Monomial, Poly, Render, TensorMono,
};
pub use coproduct::{
    coproduct, coproduct_at, counit_at, embed, flip, iterated_coproduct, substitute,
    substitute_tensor, TensorPoly, Whitney,
};
pub use hpoly::{
    generator, hpoly_mul, hpoly_one, is_unit_poly, parse_hpoly, Gen, HMono, HPoly, Rendered,
};
pub use kunneth::{
    chchar_to_chern, chern_to_chchar, free_slot_chern, k_difference, kunneth_total_chern,
    twist_class, universal_sheaf, KunnethClass, KunnethMono, SheafClass,
};
pub use series::{poincare_coh_positive_rank, poincare_coh_torsion, QSeries};
pub use xcoh::XBasis;
