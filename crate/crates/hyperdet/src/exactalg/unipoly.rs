//! Univariate polynomials in an auxiliary variable `z` whose coefficients
//! are themselves multivariate integer polynomials, plus the Sylvester
//! resultant and the univariate discriminant built on it.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::UniError;

/// Coefficients ascending in powers of `z`; trailing zeros are trimmed, the
/// zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Polynomial>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_constants(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Polynomial::constant(BigInt::from(x))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn leading(&self) -> Polynomial {
        self.coeffs.last().cloned().unwrap_or_else(Polynomial::zero)
    }

    /// Derivative with respect to `z`.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale(&BigInt::from(k as u64 + 1)))
                .collect(),
        )
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Polynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::new(out)
    }

    pub fn scale_poly(&self, c: &Polynomial) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k.mul(c)).collect())
    }
}

/// Determinant of a square matrix of multivariate polynomials by
/// fraction-free elimination; every division is exact in the ring.
pub fn det_poly_matrix(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n));
    let mut sign_neg = false;
    let mut prev = Polynomial::one();
    for r in 0..n {
        let Some(p) = (r..n).find(|&i| !m[i][r].is_zero()) else {
            return Polynomial::zero();
        };
        if p != r {
            m.swap(p, r);
            sign_neg = !sign_neg;
        }
        for i in (r + 1)..n {
            for j in (r + 1)..n {
                let num = m[r][r].mul(&m[i][j]).sub(&m[i][r].mul(&m[r][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][r] = Polynomial::zero();
        }
        prev = m[r][r].clone();
    }
    if sign_neg {
        prev.neg()
    } else {
        prev
    }
}

/// Resultant of `p` and `q` in `z` as the determinant of the Sylvester
/// matrix, with rows of `p`-coefficients first. Leading coefficients are
/// taken as given; no normalization is applied.
pub fn sylvester_resultant(p: &UniPoly, q: &UniPoly) -> Result<Polynomial, UniError> {
    let dp = p.degree().unwrap_or(0);
    let dq = q.degree().unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(UniError::BothConstant);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero());
    }
    let n = dp + dq;
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in p.coeffs().iter().enumerate() {
            // descending order: column of z^{dp-k} shifted right by `row`
            m[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in q.coeffs().iter().enumerate() {
            m[dq + row][row + dq - k] = c.clone();
        }
    }
    Ok(det_poly_matrix(m))
}

/// Discriminant of `p` in `z`:
/// `(-1)^{n(n-1)/2} * Res(p, p') / lc(p)` with the division exact.
///
/// At any scalar specialization where the leading coefficient does not
/// vanish, the result is zero exactly when `p` has a multiple root.
pub fn univariate_discriminant(p: &UniPoly) -> Result<Polynomial, UniError> {
    let n = p.degree().unwrap_or(0);
    if n < 2 {
        return Err(UniError::DegreeTooLow(n));
    }
    let lc = p.leading();
    if lc.is_zero() {
        return Err(UniError::ZeroLeadingCoefficient);
    }
    let res = sylvester_resultant(p, &p.derivative())?;
    let quo = res.exact_div(&lc)?;
    if (n * (n - 1) / 2) % 2 == 1 {
        Ok(quo.neg())
    } else {
        Ok(quo)
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::EntryVar;
    use super::*;

    fn pv(indices: &[u16]) -> Polynomial {
        Polynomial::var(EntryVar::new(indices.to_vec()))
    }

    #[test]
    fn resultant_of_two_linear_factors() {
        // Res(z - a, z - b) = a - b under the stated row convention.
        let p = UniPoly::new(vec![pv(&[1]).neg(), Polynomial::one()]);
        let q = UniPoly::new(vec![pv(&[2]).neg(), Polynomial::one()]);
        let r = sylvester_resultant(&p, &q).unwrap();
        assert_eq!(r, pv(&[1]).sub(&pv(&[2])));
    }

    #[test]
    fn resultant_hand_checked_three_by_three() {
        // Res(z^2, z + 1) = 1 by direct evaluation of the Sylvester matrix.
        let p = UniPoly::from_constants(&[0, 0, 1]);
        let q = UniPoly::from_constants(&[1, 1]);
        assert_eq!(sylvester_resultant(&p, &q).unwrap(), Polynomial::one());
    }

    #[test]
    fn resultant_with_self_vanishes() {
        let p = UniPoly::new(vec![pv(&[1]), Polynomial::one(), Polynomial::one()]);
        assert!(sylvester_resultant(&p, &p).unwrap().is_zero());
        let lin = UniPoly::new(vec![pv(&[2]), Polynomial::one()]);
        assert!(sylvester_resultant(&lin, &lin).unwrap().is_zero());
    }

    #[test]
    fn both_constant_is_rejected() {
        let c = UniPoly::from_constants(&[3]);
        assert!(matches!(sylvester_resultant(&c, &c), Err(UniError::BothConstant)));
    }

    #[test]
    fn quadratic_discriminant() {
        // D(z^2 + b z + c) = b^2 - 4c
        let b = pv(&[1]);
        let c = pv(&[2]);
        let p = UniPoly::new(vec![c.clone(), b.clone(), Polynomial::one()]);
        let d = univariate_discriminant(&p).unwrap();
        let expected = b.mul(&b).sub(&c.scale(&BigInt::from(4)));
        assert_eq!(d, expected);
    }

    #[test]
    fn double_root_has_zero_discriminant() {
        // (z - 1)^2 = z^2 - 2z + 1
        let p = UniPoly::from_constants(&[1, -2, 1]);
        assert!(univariate_discriminant(&p).unwrap().is_zero());
    }

    #[test]
    fn cubic_discriminant_matches_root_differences() {
        // z(z-1)(z-2) = z^3 - 3z^2 + 2z; product of squared root
        // differences is (0-1)^2 (0-2)^2 (1-2)^2 = 4.
        let p = UniPoly::from_constants(&[0, 2, -3, 1]);
        assert_eq!(
            univariate_discriminant(&p).unwrap(),
            Polynomial::constant(BigInt::from(4))
        );
    }
}
