//! Corank test for `2 x 2 x n` matrices via the rank of the quadratic form
//! `det(z_1 A_1 + ... + z_n A_n)` in the pencil coordinates, where the `A_i`
//! are the third-direction slices. Corank 1 is exactly rank 2.

use num_bigint::BigInt;

use crate::exactalg::{rat_big, Rational, RationalMatrix};
use crate::mdmatrix::MDMatrix;

use super::DetError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorankReport {
    /// Rank of the quadratic form of the slice pencil.
    pub rank: usize,
    pub corank_one: bool,
}

pub fn corank_22n(a: &MDMatrix) -> Result<CorankReport, DetError> {
    let dims = a.format().dims();
    if dims.len() != 3 || dims[0] != 2 || dims[1] != 2 {
        return Err(DetError::WrongFormat(format!(
            "corank test needs a 2 x 2 x n format, got {}",
            a.format()
        )));
    }
    let n = dims[2];
    let slice_det = |vals: &[Rational; 4]| -> Rational {
        &vals[0] * &vals[3] - &vals[1] * &vals[2]
    };
    let slice = |i: usize| -> Result<[Rational; 4], DetError> {
        Ok([
            a.value(&[1, 1, i as u16])?.clone(),
            a.value(&[1, 2, i as u16])?.clone(),
            a.value(&[2, 1, i as u16])?.clone(),
            a.value(&[2, 2, i as u16])?.clone(),
        ])
    };
    // Gram matrix by polarization: G_ii = det(A_i),
    // G_ij = (det(A_i + A_j) - det(A_i) - det(A_j)) / 2
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let mut gram = RationalMatrix::zero(n, n);
    let slices: Vec<[Rational; 4]> = (1..=n).map(slice).collect::<Result<_, _>>()?;
    for i in 0..n {
        gram[(i, i)] = slice_det(&slices[i]);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let sum = [
                &slices[i][0] + &slices[j][0],
                &slices[i][1] + &slices[j][1],
                &slices[i][2] + &slices[j][2],
                &slices[i][3] + &slices[j][3],
            ];
            let mixed =
                (slice_det(&sum) - &gram[(i, i)] - &gram[(j, j)]) * half.clone();
            gram[(i, j)] = mixed.clone();
            gram[(j, i)] = mixed;
        }
    }
    let rank = gram.symmetric_rank()?;
    Ok(CorankReport {
        rank,
        corank_one: rank == 2,
    })
}

/// 2 x 2 x n matrix whose first two slices are the diagonal idempotents and
/// the rest vanish; its pencil form is `z_1 z_2`, rank 2.
pub fn corank_one_instance(n: usize) -> MDMatrix {
    assert!(n >= 2);
    let f = crate::mdmatrix::Format::new(vec![2, 2, n]);
    let mut values = vec![rat_big(BigInt::from(0)); f.len()];
    values[f.offset(&[1, 1, 1])] = rat_big(BigInt::from(1));
    values[f.offset(&[2, 2, 2])] = rat_big(BigInt::from(1));
    MDMatrix::numeric(f, values)
}
