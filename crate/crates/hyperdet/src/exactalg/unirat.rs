//! Univariate polynomials over the rationals: division, gcd, rational root
//! search, and Sturm-based real root isolation. Used by the pencil rank-drop
//! oracle to decide common roots of maximal-minor forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_big, Rational};

/// Coefficients ascending; trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k as u64 + 1)))
                .collect(),
        )
    }

    /// Monic scalar multiple (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// Euclidean remainder of `self` by `d`.
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let q = r[k].clone() / &lc;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    let delta = c * &q;
                    r[idx] -= delta;
                }
            }
            r.pop();
        }
        RatPoly::new(r)
    }

    /// Monic gcd by the Euclidean algorithm; gcd with 0 is the other input.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and divides by the integer content, giving
    /// primitive integer coefficients.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = super::rational::denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * rat_big(l.clone())).numer().clone())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() || g.is_one() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Finds a rational root via the rational root theorem, if one exists.
    pub fn rational_root(&self) -> Option<Rational> {
        let ints = self.primitive_integer_coeffs();
        if ints.is_empty() {
            return None;
        }
        if ints[0].is_zero() {
            return Some(Rational::zero());
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sgn in [1i64, -1] {
                    let cand = Rational::new(&p * BigInt::from(sgn), q.clone());
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Number of distinct real roots in `(lo, hi]` by Sturm's theorem.
    fn sturm_count(chain: &[RatPoly], lo: &Rational, hi: &Rational) -> i64 {
        let variations = |x: &Rational| {
            let mut last: Option<bool> = None;
            let mut v = 0i64;
            for p in chain {
                let y = p.eval(x);
                if y.is_zero() {
                    continue;
                }
                let s = y.is_positive();
                if let Some(prev) = last {
                    if prev != s {
                        v += 1;
                    }
                }
                last = Some(s);
            }
            v
        };
        variations(lo) - variations(hi)
    }

    fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        chain
    }

    /// Isolates one real root in a rational interval `(lo, hi]`, when the
    /// polynomial has any real root. Bisects until the interval contains
    /// exactly one root.
    pub fn isolate_real_root(&self) -> Option<(Rational, Rational)> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        // Cauchy bound on root magnitude.
        let lc = self.leading();
        let mut bound = Rational::one();
        for c in &self.coeffs[..d] {
            let t = (c / &lc).abs() + Rational::one();
            if t > bound {
                bound = t;
            }
        }
        let chain = self.sturm_chain();
        let mut lo = -bound.clone();
        let mut hi = bound;
        let mut count = Self::sturm_count(&chain, &lo, &hi);
        if self.eval(&lo).is_zero() {
            return Some((lo.clone(), lo));
        }
        if count == 0 {
            return None;
        }
        while count > 1 {
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            if self.eval(&mid).is_zero() {
                return Some((mid.clone(), mid));
            }
            let left = Self::sturm_count(&chain, &lo, &mid);
            if left > 0 {
                hi = mid;
                count = left;
            } else {
                lo = mid;
                count = Self::sturm_count(&chain, &lo, &hi);
            }
        }
        Some((lo, hi))
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // Trial division; inputs here are small minor values.
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}
