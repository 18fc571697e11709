//! Small integer-lattice helpers on top of the Smith decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::present::{smith_decomposition, smith_normal_form, IntMatrix};

pub(crate) fn gcd_of(coords: &[i64]) -> i64 {
    coords.iter().fold(0i64, |g, &c| g.gcd(&c))
}

/// Divides out the content of a nonzero vector.
pub(crate) fn primitive(coords: &[i64]) -> Vec<i64> {
    let g = gcd_of(coords);
    if g == 0 {
        return coords.to_vec();
    }
    coords.iter().map(|c| c / g).collect()
}

/// Matrix whose columns are the given vectors of length `dim`.
pub(crate) fn columns(dim: usize, vectors: &[&[i64]]) -> IntMatrix {
    let mut m = IntMatrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            m[(i, j)] = BigInt::from(x);
        }
    }
    m
}

pub(crate) fn rank(dim: usize, vectors: &[&[i64]]) -> usize {
    smith_normal_form(&columns(dim, vectors))
        .iter()
        .filter(|d| !d.is_zero())
        .count()
}

/// True iff the vectors are linearly independent and every elementary
/// divisor is 1, i.e. they extend to a lattice basis.
pub(crate) fn is_unimodular_family(dim: usize, vectors: &[&[i64]]) -> bool {
    if vectors.len() > dim {
        return false;
    }
    let divisors = smith_normal_form(&columns(dim, vectors));
    divisors.len() == vectors.len() && divisors.iter().all(|d| d.is_one())
}

/// For linearly independent columns spanning a saturated sublattice `L` of
/// `Z^dim`, returns a `(dim - k) x dim` integer matrix whose kernel is `L`
/// and which maps `Z^dim` onto `Z^(dim - k)`.
pub(crate) fn quotient_projection(dim: usize, vectors: &[&[i64]]) -> Vec<Vec<i64>> {
    let k = vectors.len();
    let sd = smith_decomposition(&columns(dim, vectors));
    let left = sd
        .left
        .to_i64_rows()
        .expect("unimodular transform fits in i64");
    left[k..].to_vec()
}

/// Inverse of a square unimodular integer matrix given by its columns.
pub(crate) fn unimodular_inverse(dim: usize, vectors: &[&[i64]]) -> Option<Vec<Vec<i64>>> {
    if vectors.len() != dim || !is_unimodular_family(dim, vectors) {
        return None;
    }
    // left * B * right = I  =>  B^{-1} = right * left
    let sd = smith_decomposition(&columns(dim, vectors));
    sd.right.mul(&sd.left).to_i64_rows()
}

pub(crate) fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
