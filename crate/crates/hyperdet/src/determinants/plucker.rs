//! Hyperplucker coordinates of grassman-format matrices: the determinants
//! of all maximal boundary-format minors obtained by selecting `m_r` of the
//! `m` last-direction indices.

use crate::mdmatrix::{FormatClass, MDMatrix};

use super::pencil::column_subsets;
use super::{det_dispatch, DetError, DetOptions, DetResult};

/// The coordinate vector, one determinant per last-direction column subset,
/// in canonical subset order.
#[derive(Debug)]
pub struct PluckerVector {
    pub coords: Vec<(Vec<usize>, DetResult)>,
    pub minor_format: Vec<usize>,
}

impl PluckerVector {
    pub fn all_vanish(&self) -> bool {
        self.coords.iter().all(|(_, det)| det.value.is_zero())
    }
}

/// Computes the hyperplucker coordinates of a matrix of grassman format
/// `n_1 x ... x n_r x m`, with the oversized direction last.
pub fn hyperplucker(a: &MDMatrix, opts: &DetOptions) -> Result<PluckerVector, DetError> {
    let f = a.format();
    if !matches!(f.classify(), FormatClass::Grassman) {
        return Err(DetError::WrongFormat(format!(
            "{f} is not a grassman format"
        )));
    }
    let dims = f.dims();
    let d = dims.len();
    let m = dims[d - 1];
    let m_r = 1 + dims[..d - 1].iter().map(|&n| n - 1).sum::<usize>();
    if m <= m_r {
        return Err(DetError::WrongFormat(format!(
            "the oversized direction of {f} must come last (need last > {m_r})"
        )));
    }
    let mut coords = Vec::new();
    for subset in column_subsets(m, m_r) {
        let mut selections: Vec<Vec<usize>> =
            dims[..d - 1].iter().map(|&n| (1..=n).collect()).collect();
        selections.push(subset.clone());
        let minor = a.subtensor(&selections)?;
        let det = det_dispatch(&minor, opts)?;
        coords.push((subset, det));
    }
    Ok(PluckerVector {
        coords,
        minor_format: {
            let mut v = dims[..d - 1].to_vec();
            v.push(m_r);
            v
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Rational, RationalMatrix};
    use crate::mdmatrix::Format;

    fn opts() -> DetOptions {
        DetOptions::default()
    }

    #[test]
    fn coordinate_count() {
        let a = MDMatrix::random_rational(Format::new(vec![2, 2, 5]), 3, 5);
        let v = hyperplucker(&a, &opts()).unwrap();
        assert_eq!(v.coords.len(), 10); // C(5, 3)
        assert_eq!(v.minor_format, vec![2, 2, 3]);
    }

    #[test]
    fn rank_drop_construction_vanishes_everywhere() {
        // first-direction slices B1 (rank 1) and B2: the pencil hits rank
        // <= 1 at (1, 0), so every boundary minor vanishes
        let b1 = RationalMatrix::from_i64(2, 5, &[1, 2, -1, 3, 0, 2, 4, -2, 6, 0]);
        let b2 = RationalMatrix::from_i64(2, 5, &[0, 1, 1, 0, 2, 1, 0, 3, 1, 1]);
        let f = Format::new(vec![2, 2, 5]);
        let mut values = vec![rat(0); f.len()];
        for i2 in 1..=2u16 {
            for j in 1..=5u16 {
                values[f.offset(&[1, i2, j])] = b1[(i2 as usize - 1, j as usize - 1)].clone();
                values[f.offset(&[2, i2, j])] = b2[(i2 as usize - 1, j as usize - 1)].clone();
            }
        }
        let a = MDMatrix::numeric(f, values);
        let oracle = super::super::pencil_rank_drop_oracle(&b1, &b2).unwrap();
        assert!(oracle.exists);
        let v = hyperplucker(&a, &opts()).unwrap();
        assert!(v.all_vanish());
    }

    #[test]
    fn random_instances_do_not_vanish() {
        for seed in 0..5u64 {
            let a = MDMatrix::random_rational(Format::new(vec![2, 2, 5]), seed, 10);
            let v = hyperplucker(&a, &opts()).unwrap();
            assert!(!v.all_vanish(), "seed {seed}");
            assert!(v
                .coords
                .iter()
                .all(|(_, det)| matches!(det.value.as_scalar(), Some(Rational { .. }))));
        }
    }

    #[test]
    fn wrong_formats_are_rejected() {
        let inner = MDMatrix::random_rational(Format::new(vec![2, 2, 3]), 0, 5);
        assert!(hyperplucker(&inner, &opts()).is_err());
        // grassman but with the oversized direction not last
        let misplaced = MDMatrix::random_rational(Format::new(vec![5, 2, 2]), 0, 5);
        assert!(hyperplucker(&misplaced, &opts()).is_err());
    }
}
