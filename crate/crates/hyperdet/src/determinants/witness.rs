//! Exact construction of degenerate matrices from the critical system.
//!
//! Fixing vectors `x^(1), ..., x^(d)` with nonzero coordinates, the critical
//! system is linear in the matrix entries: for every direction `k` and index
//! `i`, the sum over entries with `i_k = i` of the entry times the product
//! of the other vectors' coordinates vanishes. Any nonzero solution of that
//! system paired with the vectors is a certified point of the degeneracy
//! locus, independent of any determinant algorithm.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::rational::denominator_lcm;
use crate::exactalg::{rat, rat_big, Rational, RationalMatrix};
use crate::mdmatrix::{DegeneracyWitness, Format, MDMatrix};

use super::DetError;

/// Builds the critical-system coefficient matrix for fixed witness vectors:
/// one row per (direction, index), one column per entry.
fn critical_system(f: &Format, vectors: &[Vec<Rational>]) -> RationalMatrix {
    let d = f.d();
    let cols = f.len();
    let rows: usize = f.dims().iter().sum();
    let indices = f.indices();
    let mut m = RationalMatrix::zero(rows, cols);
    let mut row = 0;
    for k in 0..d {
        for i in 1..=f.dims()[k] as u16 {
            for idx in &indices {
                if idx[k] != i {
                    continue;
                }
                let mut coeff = Rational::one();
                for (j, &ij) in idx.iter().enumerate() {
                    if j != k {
                        coeff *= &vectors[j][ij as usize - 1];
                    }
                }
                m[(row, f.offset(idx))] = coeff;
            }
            row += 1;
        }
    }
    m
}

/// Samples witness vectors with coordinates in `[1, 20]`, solves the
/// critical system exactly, and returns a random integer combination of the
/// nullspace basis (scaled to integer entries) together with the witness.
pub fn make_degenerate(f: &Format, seed: u64) -> Result<(MDMatrix, DegeneracyWitness), DetError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vectors: Vec<Vec<Rational>> = f
        .dims()
        .iter()
        .map(|&n| (0..n).map(|_| rat(rng.gen_range(1i64..=20))).collect())
        .collect();
    let system = critical_system(f, &vectors);
    let basis = system.nullspace_exact();
    if basis.is_empty() {
        return Err(DetError::WrongFormat(format!(
            "critical system of {f} is injective; the format admits no degenerate matrix"
        )));
    }
    for _ in 0..32 {
        let mut entries = vec![Rational::zero(); f.len()];
        for v in &basis {
            let c = rat(rng.gen_range(-5i64..=5));
            if c.is_zero() {
                continue;
            }
            for (e, x) in entries.iter_mut().zip(v) {
                *e += &c * x;
            }
        }
        if entries.iter().all(|e| e.is_zero()) {
            continue;
        }
        // clear denominators and strip the content; degeneracy is scale-free
        let l = denominator_lcm(&entries);
        let mut ints: Vec<BigInt> = entries
            .iter()
            .map(|e| (e * rat_big(l.clone())).numer().clone())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::Integer::gcd(&g, c);
        }
        if !g.is_zero() && !g.is_one() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        let matrix = MDMatrix::numeric(f.clone(), ints.into_iter().map(rat_big).collect());
        let witness = DegeneracyWitness::new(vectors);
        debug_assert!(witness_check(&matrix, &witness)?);
        return Ok((matrix, witness));
    }
    Err(DetError::DegenerateSample)
}

/// Re-evaluates every equation of the critical system exactly.
pub fn witness_check(a: &MDMatrix, w: &DegeneracyWitness) -> Result<bool, DetError> {
    let f = a.format();
    if w.vectors.len() != f.d()
        || w.vectors
            .iter()
            .zip(f.dims())
            .any(|(v, &n)| v.len() != n)
    {
        return Err(DetError::WrongShape(
            "witness vector lengths do not match the format".into(),
        ));
    }
    let system = critical_system(f, &w.vectors);
    let values = a.values()?;
    Ok(system.apply(values).iter().all(Rational::is_zero))
}
