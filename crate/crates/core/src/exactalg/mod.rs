//! Exact scalar, polynomial and matrix arithmetic over GF(p^k) and the
//! rationals.

mod field;
mod matrix;
mod poly;

pub use field::{field_make, is_prime, Field, GaloisField, Rationals};
pub use matrix::{
    all_vectors, annihilating_vector, char_poly, companion, gl_enumerate, gl_order, min_poly, row_span_dim,
    subalgebra_closure, Closure, Mat,
};
pub use poly::{monic_polys, Poly};
