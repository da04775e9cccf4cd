//! Determinant and discriminant algorithms with their degeneracy oracles:
//! square determinants, the pencil-discriminant method for `n x n x 2`, the
//! boundary-format signed-sum engine, closed determinants, hyperplucker
//! coordinates, corank tests, and exact witness construction.

mod boundary;
mod closed;
mod corank;
mod pencil;
mod plucker;
mod witness;

pub use boundary::{
    calibrate_policy, calibration_report, det_boundary, CalibrationOutcome, EnginePolicy,
    LevelAlignment, TailSource,
};
pub use closed::{closed_det, quotient_identity_check, ClosedDetResult, QuotientReport};
pub use corank::{corank_22n, corank_one_instance, CorankReport};
pub use pencil::{
    det_pencil_nn2, kronecker_pair, maximal_minors_pencil, pencil_from_slices,
    pencil_rank_drop_oracle, RankDropOutcome, RankDropWitness,
};
pub use plucker::{hyperplucker, PluckerVector};
pub use witness::{make_degenerate, witness_check};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::{
    rat_big, LinalgError, Monomial, PolyError, Polynomial, Rational, RationalMatrix, UniError,
};
use crate::mdmatrix::{Format, FormatClass, MDMatrix, MatrixError};
use crate::qpaths::QError;

#[derive(Debug, Error)]
pub enum DetError {
    #[error("matrix does not reduce to a square 2-dimensional format")]
    NotSquare,
    #[error("wrong format: {0}")]
    WrongFormat(String),
    #[error("grassman format has no single determinant; use the hyperplucker map")]
    GrassmanFormat,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("engine interpretation failure: {0}")]
    Calibration(String),
    #[error("transform matrix is singular")]
    Singular,
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("sampled matrix degenerated to zero; retry with another seed")]
    DegenerateSample,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Uni(#[from] UniError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<QError> for DetError {
    fn from(e: QError) -> Self {
        match e {
            QError::SizeGuard { size, cap } => {
                DetError::SizeGuard(format!("enumeration size {size} exceeds cap {cap}"))
            }
            other => DetError::WrongFormat(other.to_string()),
        }
    }
}

/// Engine options shared by the determinant entry points.
#[derive(Clone, Debug)]
pub struct DetOptions {
    pub policy: EnginePolicy,
    /// Cap on generated products in the signed double sum.
    pub max_terms: u64,
    pub threads: usize,
}

impl Default for DetOptions {
    fn default() -> Self {
        DetOptions {
            policy: EnginePolicy::default(),
            max_terms: 10_000_000,
            threads: 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DetMethod {
    /// Single-entry determinant.
    Entry,
    /// Square 2-dimensional determinant.
    Square,
    /// Discriminant of the slice pencil (`n x n x 2`).
    Pencil,
    /// Boundary-format signed double sum.
    Boundary,
}

impl std::fmt::Display for DetMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetMethod::Entry => write!(f, "entry"),
            DetMethod::Square => write!(f, "square"),
            DetMethod::Pencil => write!(f, "pencil"),
            DetMethod::Boundary => write!(f, "boundary"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DetValue {
    Polynomial(Polynomial),
    Scalar(Rational),
}

impl DetValue {
    pub fn is_zero(&self) -> bool {
        match self {
            DetValue::Polynomial(p) => p.is_zero(),
            DetValue::Scalar(s) => s.is_zero(),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            DetValue::Polynomial(p) => Some(p),
            DetValue::Scalar(_) => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            DetValue::Scalar(s) => Some(s),
            DetValue::Polynomial(_) => None,
        }
    }
}

impl std::fmt::Display for DetValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DetValue::Polynomial(p) => write!(f, "{p}"),
            DetValue::Scalar(s) => write!(f, "{}", crate::exactalg::format_rational(s)),
        }
    }
}

/// How a symbolic result was brought to canonical form: the integer content
/// divided out and whether the overall sign was flipped to make the anchor
/// monomial positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DetNormalization {
    pub content: BigUint,
    pub sign_flipped: bool,
}

impl DetNormalization {
    fn trivial() -> Self {
        DetNormalization {
            content: BigUint::one(),
            sign_flipped: false,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DetResult {
    pub value: DetValue,
    pub format: Format,
    pub method: DetMethod,
    pub normalization: DetNormalization,
}

impl DetResult {
    pub fn scalar(&self) -> &Rational {
        self.value.as_scalar().expect("numeric determinant")
    }

    pub fn polynomial(&self) -> &Polynomial {
        self.value.as_polynomial().expect("symbolic determinant")
    }
}

/// Primitive part with the sign fixed so that the anchor monomial (when
/// present with nonzero coefficient) has a positive coefficient; otherwise
/// the least monomial's coefficient is made positive.
pub(crate) fn normalize_symbolic(
    p: Polynomial,
    anchor: Option<&Monomial>,
) -> (Polynomial, DetNormalization) {
    if p.is_zero() {
        return (
            p,
            DetNormalization {
                content: BigUint::zero(),
                sign_flipped: false,
            },
        );
    }
    let (prim, content) = p.primitive_part();
    let probe = anchor
        .map(|m| prim.coefficient_of(m))
        .filter(|c| !c.is_zero())
        .unwrap_or_else(|| prim.terms()[0].1.clone());
    if probe.is_negative() {
        (
            prim.neg(),
            DetNormalization {
                content,
                sign_flipped: true,
            },
        )
    } else {
        (
            prim,
            DetNormalization {
                content,
                sign_flipped: false,
            },
        )
    }
}

/// Determinant of a matrix whose reduced format is square 2-dimensional (or
/// a single entry). Symbolic results are the full signed permutation
/// expansion; numeric ones use fraction-free elimination.
pub fn det_2d(a: &MDMatrix) -> Result<DetResult, DetError> {
    let b = a.reduce();
    let dims = b.format().dims();
    if dims == [1] {
        return entry_det(a, &b);
    }
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(DetError::NotSquare);
    }
    let n = dims[0];
    if b.is_symbolic() {
        if n > 8 {
            return Err(DetError::SizeGuard(format!(
                "symbolic expansion of a {n}x{n} determinant"
            )));
        }
        let mut terms = std::collections::BTreeMap::new();
        for (perm, sign) in crate::qpaths::permutations_with_parity(n) {
            let mono = Monomial::from_pairs((0..n).map(|i| {
                let idx = [perm[i] as u16 + 1, i as u16 + 1];
                (b.variable(&idx).unwrap().clone(), 1u32)
            }));
            let e = terms.entry(mono).or_insert_with(BigInt::zero);
            *e += BigInt::from(sign);
        }
        let raw = Polynomial::from_term_map(terms);
        let anchor = Monomial::from_pairs(
            (1..=n as u16).map(|i| (b.variable(&[i, i]).unwrap().clone(), 1u32)),
        );
        let (value, normalization) = normalize_symbolic(raw, Some(&anchor));
        Ok(DetResult {
            value: DetValue::Polynomial(value),
            format: a.format().clone(),
            method: DetMethod::Square,
            normalization,
        })
    } else {
        let m = RationalMatrix::from_fn(n, n, |i, j| {
            b.value(&[i as u16 + 1, j as u16 + 1]).unwrap().clone()
        });
        Ok(DetResult {
            value: DetValue::Scalar(m.det()),
            format: a.format().clone(),
            method: DetMethod::Square,
            normalization: DetNormalization::trivial(),
        })
    }
}

fn entry_det(a: &MDMatrix, reduced: &MDMatrix) -> Result<DetResult, DetError> {
    let value = if reduced.is_symbolic() {
        DetValue::Polynomial(Polynomial::var(reduced.variable(&[1])?.clone()))
    } else {
        DetValue::Scalar(reduced.value(&[1])?.clone())
    };
    Ok(DetResult {
        value,
        format: a.format().clone(),
        method: DetMethod::Entry,
        normalization: DetNormalization::trivial(),
    })
}

/// Routes a matrix to the determinant method its reduced format admits.
pub fn det_dispatch(a: &MDMatrix, opts: &DetOptions) -> Result<DetResult, DetError> {
    let b = a.reduce();
    let dims = b.format().dims().to_vec();
    if dims == [1] {
        return entry_det(a, &b);
    }
    match b.format().classify() {
        FormatClass::Square2d => det_2d(a),
        FormatClass::Boundary { .. } => det_boundary(a, opts),
        FormatClass::Grassman => Err(DetError::GrassmanFormat),
        FormatClass::Inner => {
            if let Some(perm) = pencil_permutation(&dims) {
                let p = b.permute_directions(&perm);
                let mut r = det_pencil_nn2(&p, opts)?;
                r.format = a.format().clone();
                Ok(r)
            } else {
                Err(DetError::Unsupported(format!(
                    "no determinant method for inner format {}",
                    b.format()
                )))
            }
        }
    }
}

/// Permutation (new position -> old direction) turning `dims` into
/// `(n, n, 2)`, when the multiset allows it. The last direction of size 2
/// becomes the pencil direction.
fn pencil_permutation(dims: &[usize]) -> Option<Vec<usize>> {
    if dims.len() != 3 {
        return None;
    }
    let k = (1..=3).rev().find(|&k| dims[k - 1] == 2)?;
    let rest: Vec<usize> = (1..=3).filter(|&t| t != k).collect();
    if dims[rest[0] - 1] != dims[rest[1] - 1] {
        return None;
    }
    Some(vec![rest[0], rest[1], k])
}

/// Degree of the boundary-format determinant: `m_d! / prod (n_k - 1)!` with
/// the distinguished dimension last. Square 2-dimensional formats count as
/// boundary with the second direction distinguished.
pub fn degree_boundary(f: &Format) -> Result<BigUint, DetError> {
    let (dims, _) = f.reduced();
    if dims.is_empty() {
        // single entry: the determinant is the entry itself
        return Ok(BigUint::one());
    }
    if dims.len() < 2 {
        return Err(DetError::WrongFormat(format!(
            "{f} does not reduce to a boundary format"
        )));
    }
    let reduced = Format::new(dims.clone());
    let distinguished = match reduced.classify() {
        FormatClass::Boundary { distinguished } => distinguished,
        FormatClass::Square2d => 2,
        other => {
            return Err(DetError::WrongFormat(format!(
                "{f} classifies as {other}, not boundary"
            )))
        }
    };
    let levels: Vec<usize> = dims
        .iter()
        .enumerate()
        .filter(|(k, _)| k + 1 != distinguished)
        .map(|(_, &n)| n)
        .collect();
    Ok(crate::qpaths::QSpace::count_c(&levels))
}

/// Replaces the slices of direction `k` by `g`-combinations:
/// `a'_i = sum_j g[i][j] a_j`. Numeric matrices only.
pub fn gl_action(a: &MDMatrix, k: usize, g: &RationalMatrix) -> Result<MDMatrix, DetError> {
    let d = a.format().d();
    if k < 1 || k > d {
        return Err(DetError::WrongShape(format!("direction {k} out of range")));
    }
    let n = a.format().dims()[k - 1];
    if g.rows() != n || g.cols() != n {
        return Err(DetError::WrongShape(format!(
            "transform is {}x{}, direction {k} has size {n}",
            g.rows(),
            g.cols()
        )));
    }
    if g.det().is_zero() {
        return Err(DetError::Singular);
    }
    let values = a.values()?;
    let format = a.format().clone();
    let mut out = vec![Rational::zero(); values.len()];
    for idx in format.indices() {
        let i = idx[k - 1] as usize;
        let mut acc = Rational::zero();
        let mut src = idx.clone();
        for j in 1..=n {
            src[k - 1] = j as u16;
            acc += &g[(i - 1, j - 1)] * values[format.offset(&src)].clone();
        }
        out[format.offset(&idx)] = acc;
    }
    Ok(MDMatrix::numeric(format, out))
}

/// Seeded random integer matrix with determinant exactly 1, built from
/// elementary row operations.
pub fn random_unimodular(n: usize, seed: u64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = RationalMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..(4 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let lambda = rat_big(BigInt::from(rng.gen_range(-3i64..=3)));
        // row_i += lambda * row_j
        for c in 0..n {
            let add = &lambda * &m[(j, c)];
            m[(i, c)] += add;
        }
    }
    m
}

/// Checks that every monomial of `p` has the same partial degree in each
/// index value of each direction of `f`, and that this common value is
/// `deg / n_k`. Returns the per-direction partial degrees.
pub fn multidegree_profile(p: &Polynomial, f: &Format) -> Result<Vec<u32>, String> {
    if p.is_zero() {
        return Err("zero polynomial has no multidegree".into());
    }
    let deg = p.total_degree();
    let mut out = Vec::new();
    for (k, &n) in f.dims().iter().enumerate() {
        if !(deg as usize).is_multiple_of(n) {
            return Err(format!("degree {deg} not divisible by n_{} = {n}", k + 1));
        }
        let share = deg / n as u32;
        for v in 1..=n as u16 {
            for (m, _) in p.terms() {
                let partial = m.partial_degree(|var| var.indices()[k] == v);
                if partial != share {
                    return Err(format!(
                        "direction {} index {v}: partial degree {partial} != {share}",
                        k + 1
                    ));
                }
            }
        }
        out.push(share);
    }
    Ok(out)
}
