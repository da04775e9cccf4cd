//! Pencil methods: the discriminant route to `n x n x 2` determinants, the
//! canonical shifted-identity pair, maximal minors of two-slice pencils, and
//! the exact rank-drop oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::unipoly::{univariate_discriminant, UniPoly};
use crate::exactalg::{rat, RatPoly, Rational, RationalMatrix};
use crate::exactalg::Polynomial;
use crate::mdmatrix::{Format, MDMatrix};

use super::{normalize_symbolic, DetError, DetMethod, DetNormalization, DetOptions, DetResult, DetValue};

/// Determinant of an `n x n x 2` matrix as the discriminant in `z` of
/// `det(A + zB)`, where `A` and `B` are the two third-direction slices.
/// The polynomial identity extends the generic `det(B) != 0` case.
pub fn det_pencil_nn2(a: &MDMatrix, _opts: &DetOptions) -> Result<DetResult, DetError> {
    let dims = a.format().dims();
    if dims.len() != 3 || dims[0] != dims[1] || dims[2] != 2 {
        return Err(DetError::WrongFormat(format!(
            "pencil method needs an n x n x 2 format, got {}",
            a.format()
        )));
    }
    let n = dims[0];
    if n > 4 {
        return Err(DetError::SizeGuard(format!(
            "pencil discriminant for n = {n} exceeds the supported desk scale"
        )));
    }
    // integer-scaled numeric entries keep the discriminant arithmetic in
    // the integral polynomial ring
    let (ints, scale) = if a.is_symbolic() {
        (Vec::new(), BigInt::one())
    } else {
        crate::mdmatrix::integer_entries(a)?
    };
    let entry = |i: u16, j: u16, k: u16| -> Result<Polynomial, DetError> {
        if a.is_symbolic() {
            Ok(Polynomial::var(a.variable(&[i, j, k])?.clone()))
        } else {
            Ok(Polynomial::constant(
                ints[a.format().offset(&[i, j, k])].clone(),
            ))
        }
    };
    let mut m = Vec::with_capacity(n);
    for i in 1..=n as u16 {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n as u16 {
            row.push(UniPoly::new(vec![entry(i, j, 1)?, entry(i, j, 2)?]));
        }
        m.push(row);
    }
    let char_poly = det_unipoly_matrix(m);
    if a.is_symbolic() {
        // the z^n coefficient is the second slice's determinant, which is a
        // nonzero polynomial, so the generic discriminant applies
        let disc = univariate_discriminant(&char_poly)?;
        let (poly, normalization) = normalize_symbolic(disc, None);
        Ok(DetResult {
            value: DetValue::Polynomial(poly),
            format: a.format().clone(),
            method: DetMethod::Pencil,
            normalization,
        })
    } else {
        // at a numeric specialization the leading coefficient may vanish and
        // the pencil polynomial drop degree; the determinant is still the
        // symbolic discriminant evaluated there, computed division-free at
        // the nominal degree
        let coeffs: Vec<BigInt> = (0..=n)
            .map(|k| char_poly.coeff(k).constant_term())
            .collect();
        let disc = fixed_degree_discriminant(&coeffs);
        // deg(disc) = 2n(n-1) in the entries
        let denom = num_traits::pow::pow(scale, 2 * n * (n - 1));
        Ok(DetResult {
            value: DetValue::Scalar(Rational::new(disc, denom)),
            format: a.format().clone(),
            method: DetMethod::Pencil,
            normalization: DetNormalization::trivial(),
        })
    }
}

/// Discriminant of a polynomial given by its full coefficient vector
/// `c_0..c_n` at nominal degree `n`, valid even when `c_n = 0`.
///
/// The first column of the Sylvester matrix of `(p, p')` is `(c_n, 0, ...,
/// n*c_n, 0, ...)`; replacing it by `(1, 0, ..., n, 0, ...)` divides the
/// determinant by `c_n` as a polynomial identity, which is exactly the
/// discriminant up to the usual sign.
fn fixed_degree_discriminant(coeffs: &[BigInt]) -> BigInt {
    let n = coeffs.len() - 1;
    debug_assert!(n >= 2);
    let size = 2 * n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    // n-1 rows of p, coefficients descending, shifted
    for row in 0..n - 1 {
        for k in 0..=n {
            m[row][row + n - k] = coeffs[k].clone();
        }
    }
    // n rows of p', likewise
    for row in 0..n {
        for k in 1..=n {
            m[n - 1 + row][row + n - k] = &coeffs[k] * BigInt::from(k as u64);
        }
    }
    // divide the first column by c_n
    m[0][0] = BigInt::one();
    m[n - 1][0] = BigInt::from(n as u64);
    let det = RationalMatrix::from_fn(size, size, |i, j| {
        Rational::from_integer(m[i][j].clone())
    })
    .det();
    debug_assert!(det.denom() == &BigInt::one());
    let signed = det.numer().clone();
    if (n * (n - 1) / 2) % 2 == 1 {
        -signed
    } else {
        signed
    }
}

/// Signed expansion determinant of a small matrix of univariate polynomials.
fn det_unipoly_matrix(m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    let mut det = UniPoly::zero();
    for (perm, sign) in crate::qpaths::permutations_with_parity(n) {
        let mut prod = UniPoly::from_constants(&[i64::from(sign)]);
        for (j, &pi) in perm.iter().enumerate() {
            prod = prod.mul(&m[pi as usize][j]);
        }
        det = det.add(&prod);
    }
    det
}

/// The shifted-identity canonical pair of `n x (n+1)` matrices.
pub fn kronecker_pair(n: usize) -> (RationalMatrix, RationalMatrix) {
    let a = RationalMatrix::from_fn(n, n + 1, |i, j| if i == j { rat(1) } else { rat(0) });
    let b = RationalMatrix::from_fn(n, n + 1, |i, j| if i + 1 == j { rat(1) } else { rat(0) });
    (a, b)
}

/// Stacks two `n x m` matrices into the `n x m x 2` matrix whose
/// third-direction slices they are.
pub fn pencil_from_slices(a: &RationalMatrix, b: &RationalMatrix) -> MDMatrix {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let f = Format::new(vec![a.rows(), a.cols(), 2]);
    let mut values = Vec::with_capacity(f.len());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            values.push(a[(i, j)].clone());
            values.push(b[(i, j)].clone());
        }
    }
    MDMatrix::numeric(f, values)
}

/// All maximal minors of `S(z) = sum z_i A_i` at an explicit point `z`,
/// exactly, in canonical column-subset order.
pub fn maximal_minors_pencil(
    slices: &[RationalMatrix],
    z: &[Rational],
) -> Result<Vec<Rational>, DetError> {
    if slices.is_empty() || z.len() != slices.len() {
        return Err(DetError::WrongShape(
            "need one coefficient per pencil slice".into(),
        ));
    }
    let n = slices[0].rows();
    let m = slices[0].cols();
    if slices.iter().any(|s| s.rows() != n || s.cols() != m) || n > m {
        return Err(DetError::WrongShape(
            "pencil slices must share an n x m shape with n <= m".into(),
        ));
    }
    let mut s = RationalMatrix::zero(n, m);
    for (a, c) in slices.iter().zip(z) {
        s = s.add(&a.scaled(c));
    }
    Ok(column_subsets(m, n)
        .into_iter()
        .map(|cols| {
            RationalMatrix::from_fn(n, n, |i, j| s[(i, cols[j] - 1)].clone()).det()
        })
        .collect())
}

/// Column subsets of size `k` in ascending lexicographic order, the order
/// minor vectors and coordinate vectors are reported in.
pub(crate) fn column_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    if k == 0 || k > m {
        return Vec::new();
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Witness for a pencil rank drop: an explicit rational point of the pencil
/// where the rank falls, or the gcd of the maximal-minor forms along with an
/// isolating interval for a real root when one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankDropWitness {
    Point(Rational, Rational),
    AlgebraicRoot {
        /// Primitive integer coefficients of the common factor, ascending.
        min_poly: Vec<BigInt>,
        /// Isolating interval for a real root (closed on the right); absent
        /// when all roots of the common factor are complex.
        real_interval: Option<(Rational, Rational)>,
    },
}

#[derive(Clone, Debug)]
pub struct RankDropOutcome {
    pub exists: bool,
    pub witness: Option<RankDropWitness>,
}

/// Decides exactly whether some nonzero `(z1, z2)` makes
/// `rank(z1 B1 + z2 B2) < n`, for `n x m` slices with `n < m`.
///
/// The maximal minors of the pencil are binary forms of degree `n`; a rank
/// drop at a point off `(1, 0)` is a common root of their dehomogenizations
/// at `z2 = 1`, detected by a nonconstant univariate gcd. The point `(1, 0)`
/// itself is a rank drop of `B1` and is checked separately.
pub fn pencil_rank_drop_oracle(
    b1: &RationalMatrix,
    b2: &RationalMatrix,
) -> Result<RankDropOutcome, DetError> {
    let (n, m) = (b1.rows(), b1.cols());
    if b2.rows() != n || b2.cols() != m || n >= m {
        return Err(DetError::WrongShape(
            "rank-drop oracle needs two n x m slices with n < m".into(),
        ));
    }
    // Scaling both slices by one positive integer leaves every rank and
    // every witness unchanged, and keeps the minor arithmetic integral.
    let mut all = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            all.push(b1[(i, j)].clone());
            all.push(b2[(i, j)].clone());
        }
    }
    let l = crate::exactalg::rational::denominator_lcm(&all);
    let scaled = |x: &Rational| (x * crate::exactalg::rat_big(l.clone())).numer().clone();
    // binary minor forms as univariate polynomials in t = z1 at z2 = 1:
    // minor(t) = det of the selected columns of t*B1 + B2
    let minors: Vec<RatPoly> = column_subsets(m, n)
        .into_iter()
        .map(|cols| {
            let entry = |i: usize, j: usize| {
                UniPoly::new(vec![
                    Polynomial::constant(scaled(&b2[(i, cols[j] - 1)])),
                    Polynomial::constant(scaled(&b1[(i, cols[j] - 1)])),
                ])
            };
            let mat: Vec<Vec<UniPoly>> =
                (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
            let up = det_unipoly_matrix(mat);
            RatPoly::new(
                (0..=up.degree().unwrap_or(0))
                    .map(|k| Rational::from_integer(up.coeff(k).constant_term()))
                    .collect(),
            )
        })
        .collect();

    if minors.iter().all(RatPoly::is_zero) {
        // the whole pencil is rank deficient
        return Ok(RankDropOutcome {
            exists: true,
            witness: Some(RankDropWitness::Point(rat(1), rat(1))),
        });
    }

    // rank(B1) < n exactly when every minor form vanishes at (1, 0), i.e.
    // all degree-n coefficients are zero
    let b1_drops = minors
        .iter()
        .all(|p| p.degree().is_none_or(|d| d < n));
    if b1_drops {
        return Ok(RankDropOutcome {
            exists: true,
            witness: Some(RankDropWitness::Point(rat(1), rat(0))),
        });
    }

    let mut gcd = RatPoly::zero();
    for p in &minors {
        gcd = gcd.gcd(p);
        if gcd.degree() == Some(0) {
            return Ok(RankDropOutcome {
                exists: false,
                witness: None,
            });
        }
    }
    if gcd.degree().unwrap_or(0) == 0 {
        return Ok(RankDropOutcome {
            exists: false,
            witness: None,
        });
    }
    if let Some(root) = gcd.rational_root() {
        return Ok(RankDropOutcome {
            exists: true,
            witness: Some(RankDropWitness::Point(root, rat(1))),
        });
    }
    Ok(RankDropOutcome {
        exists: true,
        witness: Some(RankDropWitness::AlgebraicRoot {
            real_interval: gcd.isolate_real_root(),
            min_poly: gcd.primitive_integer_coeffs(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::EntryVar;
    use crate::mdmatrix::MDMatrix;
    use num_traits::Zero;

    fn opts() -> DetOptions {
        DetOptions::default()
    }

    #[test]
    fn pencil_2x2x2_has_cayley_shape() {
        let a = MDMatrix::symbolic(Format::new(vec![2, 2, 2]));
        let det = det_pencil_nn2(&a, &opts()).unwrap();
        let p = det.polynomial();
        assert_eq!(p.num_terms(), 12);
        assert_eq!(p.total_degree(), 4);
        let mut coeffs: Vec<i64> = p
            .terms()
            .iter()
            .map(|(_, c)| i64::try_from(c).unwrap())
            .collect();
        coeffs.sort_unstable();
        assert_eq!(coeffs, vec![-2, -2, -2, -2, -2, -2, 1, 1, 1, 1, 4, 4]);
        // squared corner terms carry +1
        let sq = |i: [u16; 3], j: [u16; 3]| {
            crate::exactalg::Monomial::from_pairs([
                (EntryVar::new(i.to_vec()), 2u32),
                (EntryVar::new(j.to_vec()), 2u32),
            ])
        };
        assert_eq!(p.coefficient_of(&sq([1, 1, 1], [2, 2, 2])), BigInt::from(1));
        assert_eq!(p.coefficient_of(&sq([1, 1, 2], [2, 2, 1])), BigInt::from(1));
    }

    #[test]
    fn identity_pencil_is_degenerate() {
        // A = B = I: det(A + zB) = (1+z)^2 has a double root
        let a = MDMatrix::from_integers(
            Format::new(vec![2, 2, 2]),
            &[1, 1, 0, 0, 0, 0, 1, 1],
        );
        let det = det_pencil_nn2(&a, &opts()).unwrap();
        assert!(det.scalar().is_zero());
    }

    #[test]
    fn diagonal_pencil_discriminant() {
        // A = diag(1,2), B = I: disc of (1+z)(2+z) = z^2 + 3z + 2 is 1
        let a = MDMatrix::from_integers(
            Format::new(vec![2, 2, 2]),
            &[1, 1, 0, 0, 0, 0, 2, 1],
        );
        let det = det_pencil_nn2(&a, &opts()).unwrap();
        assert_eq!(det.scalar(), &rat(1));
    }

    #[test]
    fn degenerate_second_slice_still_evaluates() {
        // det(B) = 0 drops the pencil polynomial's degree at this sample;
        // the fixed-degree discriminant must still equal the symbolic
        // determinant evaluated there
        let a = MDMatrix::from_integers(
            Format::new(vec![2, 2, 2]),
            &[1, 1, 0, 0, 0, 0, 1, 0],
        );
        let num = det_pencil_nn2(&a, &opts()).unwrap();
        let sym = det_pencil_nn2(&MDMatrix::symbolic(a.format().clone()), &opts()).unwrap();
        let eval = sym.polynomial().eval(&a.assignment().unwrap()).unwrap();
        assert_eq!(num.scalar(), &eval);
        assert_eq!(num.scalar(), &rat(1));
    }

    #[test]
    fn kronecker_pair_has_no_rank_drop() {
        for n in 2..=3usize {
            let (a, b) = kronecker_pair(n);
            let out = pencil_rank_drop_oracle(&a, &b).unwrap();
            assert!(!out.exists, "canonical pair n = {n}");
        }
    }

    #[test]
    fn rank_one_slice_gives_point_witness() {
        let b1 = RationalMatrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let b2 = RationalMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]);
        let out = pencil_rank_drop_oracle(&b1, &b2).unwrap();
        assert!(out.exists);
        assert_eq!(out.witness, Some(RankDropWitness::Point(rat(1), rat(0))));
    }

    #[test]
    fn proportional_slices_drop_rank() {
        // (z1 + z2) B with invertible-rank B: drop at z = (1, -1)
        let b = RationalMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]);
        let out = pencil_rank_drop_oracle(&b, &b).unwrap();
        assert!(out.exists);
        match out.witness.unwrap() {
            RankDropWitness::Point(z1, z2) => {
                assert_eq!(z2, rat(1));
                assert_eq!(z1, rat(-1));
            }
            other => panic!("expected a rational point, got {other:?}"),
        }
    }

    #[test]
    fn witness_point_actually_drops_rank() {
        let b1 = RationalMatrix::from_i64(2, 3, &[1, 2, 0, 0, 1, 1]);
        let b2 = RationalMatrix::from_i64(2, 3, &[0, 1, 1, 1, 0, 2]);
        if let RankDropOutcome { exists: true, witness: Some(RankDropWitness::Point(z1, z2)) } =
            pencil_rank_drop_oracle(&b1, &b2).unwrap()
        {
            let s = b1.scaled(&z1).add(&b2.scaled(&z2));
            assert!(s.rank() < 2);
        }
    }

    #[test]
    fn maximal_minors_examples() {
        let a1 = RationalMatrix::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]);
        let a2 = RationalMatrix::from_i64(2, 3, &[0, 0, 1, 0, 0, 0]);
        let minors = maximal_minors_pencil(&[a1.clone(), a2], &[rat(1), rat(0)]).unwrap();
        assert_eq!(minors, vec![rat(1), rat(0), rat(0)]);
        let zeros = maximal_minors_pencil(&[a1.clone(), a1], &[rat(0), rat(0)]).unwrap();
        assert!(zeros.iter().all(Rational::is_zero));
    }
}
