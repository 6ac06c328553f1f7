//! Exact linear algebra over Q, F_p, and Z: row reduction, nullspaces,
//! Smith normal form, and minor gcds.

mod matrix;
mod scalar;
mod snf;

pub use matrix::{IntegerMatrix, ScalarMat, SpanBasis};
pub use scalar::{is_prime_u64, Field, Scalar};
pub use snf::{gcd_minors, gcd_minors_bruteforce, smith_normal_form, SmithForm};

use num_bigint::BigInt;

/// Componentwise vector sum.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise vector difference.
pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scale a vector by a scalar.
pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// Least common multiple of big integers, nonnegative.
pub fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / a.gcd(b)
}
