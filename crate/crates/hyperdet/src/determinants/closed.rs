//! Closed determinants: the product of the determinants of all minors of a
//! matrix, including the single entries and the matrix itself, and the
//! quotient identity relating the closed determinant to the plain one.

use crate::exactalg::{Polynomial, Rational};
use crate::mdmatrix::{enumerate_minor_subformats, Format, MDMatrix};

use super::{det_dispatch, DetError, DetOptions, DetResult, DetValue};

/// Factored and expanded closed determinant.
#[derive(Debug)]
pub struct ClosedDetResult {
    /// One factor per minor subformat, with the defining selections.
    pub factors: Vec<(Vec<Vec<usize>>, DetResult)>,
    pub expanded: DetValue,
}

/// Exact product of the determinants of all minors. Every minor, including
/// the full matrix when its format admits a determinant, must be
/// dispatchable.
pub fn closed_det(a: &MDMatrix, opts: &DetOptions) -> Result<ClosedDetResult, DetError> {
    let minors = enumerate_minor_subformats(a.format());
    let mut factors = Vec::with_capacity(minors.len());
    for (selection, _) in minors {
        let sub = a.subtensor(&selection)?;
        let det = det_dispatch(&sub, opts).map_err(|e| match e {
            DetError::GrassmanFormat | DetError::Unsupported(_) => DetError::Unsupported(format!(
                "minor {:?} of {} has no computable determinant: {e}",
                selection,
                a.format()
            )),
            other => other,
        })?;
        factors.push((selection, det));
    }
    // larger factors first keeps the factor list readable
    factors.sort_by(|x, y| {
        let deg = |r: &DetResult| match &r.value {
            DetValue::Polynomial(p) => p.total_degree(),
            DetValue::Scalar(_) => 0,
        };
        deg(&y.1).cmp(&deg(&x.1)).then_with(|| x.0.cmp(&y.0))
    });
    let expanded = if a.is_symbolic() {
        let mut acc = Polynomial::one();
        for (_, det) in &factors {
            acc = acc.mul(det.polynomial());
        }
        DetValue::Polynomial(acc)
    } else {
        let mut acc = Rational::from_integer(1.into());
        for (_, det) in &factors {
            acc *= det.scalar();
        }
        DetValue::Scalar(acc)
    };
    Ok(ClosedDetResult { factors, expanded })
}

#[derive(Debug, PartialEq, Eq)]
pub enum QuotientStatus {
    /// The closed determinant divided by all proper minors reproduced the
    /// determinant exactly.
    Passed,
    /// The full format admits no single determinant, so there is nothing to
    /// divide out.
    NotApplicable,
}

#[derive(Debug)]
pub struct QuotientReport {
    pub status: QuotientStatus,
    /// Total degrees of the closed-determinant factors, largest first.
    pub factor_degrees: Vec<u32>,
    pub quotient: Option<Polynomial>,
}

/// Verifies symbolically that the closed determinant divided by the product
/// of all proper minors equals the determinant itself.
pub fn quotient_identity_check(f: &Format, opts: &DetOptions) -> Result<QuotientReport, DetError> {
    let a = MDMatrix::symbolic(f.clone());
    let closed = closed_det(&a, opts)?;
    let factor_degrees: Vec<u32> = closed
        .factors
        .iter()
        .map(|(_, det)| det.polynomial().total_degree())
        .collect();

    // proper minors exclude the full-format selection
    let is_full = |sel: &Vec<Vec<usize>>| {
        sel.iter()
            .zip(f.dims())
            .all(|(s, &n)| s.len() == n)
    };
    let full = closed.factors.iter().find(|(sel, _)| is_full(sel));
    let Some((_, full_det)) = full else {
        return Ok(QuotientReport {
            status: QuotientStatus::NotApplicable,
            factor_degrees,
            quotient: None,
        });
    };
    let mut proper = Polynomial::one();
    for (sel, det) in &closed.factors {
        if !is_full(sel) {
            proper = proper.mul(det.polynomial());
        }
    }
    let expanded = closed
        .expanded
        .as_polynomial()
        .expect("symbolic closed determinant")
        .clone();
    let quotient = expanded.exact_div(&proper)?;
    if &quotient != full_det.polynomial() {
        return Err(DetError::Calibration(
            "closed-determinant quotient does not reproduce the determinant".into(),
        ));
    }
    Ok(QuotientReport {
        status: QuotientStatus::Passed,
        factor_degrees,
        quotient: Some(quotient),
    })
}
