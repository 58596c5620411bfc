//! Exact rational linear algebra.
//!
//! The whole crate computes over `ℚ` with arbitrary precision — never over
//! floats — so ranks, kernels and solution spaces are exact. [`Scalar`] wraps
//! a big rational kept in lowest terms with positive denominator; [`Matrix`]
//! is a dense matrix of scalars with Gauss–Jordan elimination underneath
//! `rank` / `kernel_basis` / `solve`; [`LinearOp`] is a matrix read as a
//! linear map, columns being the images of the source basis vectors.

mod matrix;
mod scalar;

pub use matrix::{LinearOp, Matrix};
pub use scalar::Scalar;

/// A vector in `ℚ^n` is just an owned slice of scalars.
pub type Vector = Vec<Scalar>;

/// The zero vector of length `n`.
pub fn vec_zero(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`, in place.
pub fn vec_add_scaled(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    assert_eq!(acc.len(), a.len(), "vector length mismatch");
    if c.is_zero() {
        return;
    }
    for (t, x) in acc.iter_mut().zip(a) {
        *t = &*t + &(c * x);
    }
}

/// True when `a = λ b` or `b = λ a` for some scalar `λ`.
pub fn vec_proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if vec_is_zero(a) || vec_is_zero(b) {
        return vec_is_zero(a) && vec_is_zero(b);
    }
    // Cross-multiply: a_i b_j == a_j b_i for all i, j.
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            if &(&a[i] * &b[j]) != &(&a[j] * &b[i]) {
                return false;
            }
        }
    }
    true
}
