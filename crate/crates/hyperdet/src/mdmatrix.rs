//! Multidimensional matrix values: formats and their taxonomy, slicing,
//! subtensor extraction, symbolic and random instance construction, and the
//! JSON file format.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::rational::{format_rational, parse_rational, rat_big};
use crate::exactalg::{EntryVar, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("index out of range: direction {direction}, index {index}")]
    IndexOutOfRange { direction: usize, index: usize },
    #[error("empty selection in direction {0}")]
    EmptySelection(usize),
    #[error("matrix file parse error: {0}")]
    Parse(String),
    #[error("operation needs a numeric matrix")]
    NumericRequired,
    #[error("operation needs a symbolic matrix")]
    SymbolicRequired,
}

/// A dimension vector `(n_1, ..., n_d)`, all entries at least 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Format {
    dims: Vec<usize>,
}

/// Taxonomy of formats, decided after dropping size-1 directions.
///
/// `Boundary` carries the distinguished direction (1-based, in the original
/// dimension list) whose size equals one plus the sum of the other sizes
/// minus one each.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormatClass {
    Square2d,
    Inner,
    Boundary { distinguished: usize },
    Grassman,
}

impl fmt::Display for FormatClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatClass::Square2d => write!(f, "square"),
            FormatClass::Inner => write!(f, "inner"),
            FormatClass::Boundary { .. } => write!(f, "boundary"),
            FormatClass::Grassman => write!(f, "grassman"),
        }
    }
}

impl Format {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(!dims.is_empty(), "format needs at least one direction");
        assert!(dims.iter().all(|&n| n >= 1), "dimensions must be >= 1");
        Format { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    /// Total number of entries.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The sequence `m_0, ..., m_d` with `m_0 = 1`,
    /// `m_k = m_{k-1} + n_k - 1`.
    pub fn m_sequence(&self) -> Vec<usize> {
        let mut m = Vec::with_capacity(self.d() + 1);
        m.push(1usize);
        for &n in &self.dims {
            m.push(m.last().unwrap() + n - 1);
        }
        m
    }

    /// Row-major offset with the first index slowest.
    pub fn offset(&self, idx: &[u16]) -> usize {
        debug_assert_eq!(idx.len(), self.d());
        let mut off = 0usize;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i >= 1 && (i as usize) <= self.dims[k]);
            off = off * self.dims[k] + (i as usize - 1);
        }
        off
    }

    /// All multi-indices in offset order.
    pub fn indices(&self) -> Vec<Vec<u16>> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = vec![1u16; self.d()];
        loop {
            out.push(cur.clone());
            let mut k = self.d();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if (cur[k] as usize) < self.dims[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 1;
            }
        }
    }

    /// Drops size-1 directions; returns the reduced format (if anything is
    /// left) and the surviving original directions (1-based).
    pub fn reduced(&self) -> (Vec<usize>, Vec<usize>) {
        let mut dims = Vec::new();
        let mut kept = Vec::new();
        for (k, &n) in self.dims.iter().enumerate() {
            if n > 1 {
                dims.push(n);
                kept.push(k + 1);
            }
        }
        (dims, kept)
    }

    /// Format classification. Size-1 directions are dropped first; a fully
    /// degenerate format (single entry) classifies as inner since the
    /// defining conditions hold vacuously.
    pub fn classify(&self) -> FormatClass {
        let (dims, kept) = self.reduced();
        if dims.is_empty() {
            return FormatClass::Inner;
        }
        if dims.len() == 2 && dims[0] == dims[1] {
            return FormatClass::Square2d;
        }
        let s: usize = dims.iter().map(|&n| n - 1).sum();
        let mut equality = None;
        for (j, &n) in dims.iter().enumerate() {
            let lhs = n - 1;
            let rhs = s - lhs;
            if lhs > rhs {
                return FormatClass::Grassman;
            }
            if lhs == rhs {
                equality = Some(kept[j]);
            }
        }
        match equality {
            Some(distinguished) => FormatClass::Boundary { distinguished },
            None => FormatClass::Inner,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, n) in self.dims.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MatrixEntries {
    Numeric(Vec<Rational>),
    /// Entry variables, one per cell. A freshly built symbolic matrix holds
    /// the canonical variables of its own format; slices and subtensors keep
    /// the variables of the matrix they came from.
    Symbolic(Vec<EntryVar>),
}

/// A multidimensional matrix: a format plus either exact rational entries or
/// symbolic entry variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MDMatrix {
    format: Format,
    entries: MatrixEntries,
}

impl MDMatrix {
    /// Fresh symbolic matrix with pairwise-distinct variables `a[i1,...,id]`.
    pub fn symbolic(format: Format) -> Self {
        let entries = format
            .indices()
            .into_iter()
            .map(EntryVar::new)
            .collect();
        MDMatrix {
            format,
            entries: MatrixEntries::Symbolic(entries),
        }
    }

    pub fn numeric(format: Format, values: Vec<Rational>) -> Self {
        assert_eq!(values.len(), format.len());
        MDMatrix {
            format,
            entries: MatrixEntries::Numeric(values),
        }
    }

    pub fn from_integers(format: Format, values: &[i64]) -> Self {
        Self::numeric(
            format,
            values.iter().map(|&v| crate::exactalg::rat(v)).collect(),
        )
    }

    /// Seeded uniform integer entries in `[-bound, bound]`; bit-reproducible
    /// for a given seed.
    pub fn random_rational(format: Format, seed: u64, bound: u32) -> Self {
        assert!(bound >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = format.len();
        let values = (0..n)
            .map(|_| crate::exactalg::rat(rng.gen_range(-(bound as i64)..=bound as i64)))
            .collect();
        Self::numeric(format, values)
    }

    pub fn format(&self) -> &Format {
        &self.format
    }

    pub fn entries(&self) -> &MatrixEntries {
        &self.entries
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.entries, MatrixEntries::Symbolic(_))
    }

    pub fn value(&self, idx: &[u16]) -> Result<&Rational, MatrixError> {
        match &self.entries {
            MatrixEntries::Numeric(v) => Ok(&v[self.format.offset(idx)]),
            MatrixEntries::Symbolic(_) => Err(MatrixError::NumericRequired),
        }
    }

    pub fn variable(&self, idx: &[u16]) -> Result<&EntryVar, MatrixError> {
        match &self.entries {
            MatrixEntries::Symbolic(v) => Ok(&v[self.format.offset(idx)]),
            MatrixEntries::Numeric(_) => Err(MatrixError::SymbolicRequired),
        }
    }

    pub fn values(&self) -> Result<&[Rational], MatrixError> {
        match &self.entries {
            MatrixEntries::Numeric(v) => Ok(v),
            MatrixEntries::Symbolic(_) => Err(MatrixError::NumericRequired),
        }
    }

    /// Assignment of every entry variable of the canonical symbolic matrix
    /// of this format to this matrix's values.
    pub fn assignment(&self) -> Result<BTreeMap<EntryVar, Rational>, MatrixError> {
        let values = self.values()?;
        Ok(self
            .format
            .indices()
            .into_iter()
            .zip(values.iter().cloned())
            .map(|(idx, v)| (EntryVar::new(idx), v))
            .collect())
    }

    fn check_direction(&self, k: usize) -> Result<(), MatrixError> {
        if k < 1 || k > self.format.d() {
            return Err(MatrixError::IndexOutOfRange {
                direction: k,
                index: 0,
            });
        }
        Ok(())
    }

    /// The `(d-1)`-dimensional slice with direction `k` pinned at `i`
    /// (both 1-based).
    pub fn slice(&self, k: usize, i: usize) -> Result<MDMatrix, MatrixError> {
        self.check_direction(k)?;
        if i < 1 || i > self.format.dims()[k - 1] {
            return Err(MatrixError::IndexOutOfRange {
                direction: k,
                index: i,
            });
        }
        let mut selections: Vec<Vec<usize>> = self
            .format
            .dims()
            .iter()
            .map(|&n| (1..=n).collect())
            .collect();
        selections[k - 1] = vec![i];
        let sub = self.subtensor(&selections)?;
        // drop the pinned direction entirely
        let mut dims = sub.format.dims.clone();
        dims.remove(k - 1);
        if dims.is_empty() {
            dims.push(1);
            // degenerate 1-dimensional wrapper around the single entry
            return Ok(MDMatrix {
                format: Format::new(dims),
                entries: sub.entries,
            });
        }
        Ok(MDMatrix {
            format: Format::new(dims),
            entries: sub.entries,
        })
    }

    /// Restriction to the chosen index grid, order-preserving.
    pub fn subtensor(&self, selections: &[Vec<usize>]) -> Result<MDMatrix, MatrixError> {
        assert_eq!(selections.len(), self.format.d());
        for (k, sel) in selections.iter().enumerate() {
            if sel.is_empty() {
                return Err(MatrixError::EmptySelection(k + 1));
            }
            for &i in sel {
                if i < 1 || i > self.format.dims()[k] {
                    return Err(MatrixError::IndexOutOfRange {
                        direction: k + 1,
                        index: i,
                    });
                }
            }
        }
        let new_format = Format::new(selections.iter().map(Vec::len).collect());
        let map_idx = |idx: &[u16]| -> Vec<u16> {
            idx.iter()
                .enumerate()
                .map(|(k, &i)| selections[k][i as usize - 1] as u16)
                .collect()
        };
        let entries = match &self.entries {
            MatrixEntries::Numeric(v) => MatrixEntries::Numeric(
                new_format
                    .indices()
                    .iter()
                    .map(|idx| v[self.format.offset(&map_idx(idx))].clone())
                    .collect(),
            ),
            MatrixEntries::Symbolic(v) => MatrixEntries::Symbolic(
                new_format
                    .indices()
                    .iter()
                    .map(|idx| v[self.format.offset(&map_idx(idx))].clone())
                    .collect(),
            ),
        };
        Ok(MDMatrix {
            format: new_format,
            entries,
        })
    }

    /// Reorders directions by `perm` (`perm[t]` = old direction, 1-based,
    /// placed at new position `t`).
    pub fn permute_directions(&self, perm: &[usize]) -> MDMatrix {
        assert_eq!(perm.len(), self.format.d());
        let new_format = Format::new(perm.iter().map(|&k| self.format.dims()[k - 1]).collect());
        let back = |idx: &[u16]| -> Vec<u16> {
            let mut old = vec![0u16; idx.len()];
            for (t, &k) in perm.iter().enumerate() {
                old[k - 1] = idx[t];
            }
            old
        };
        let entries = match &self.entries {
            MatrixEntries::Numeric(v) => MatrixEntries::Numeric(
                new_format
                    .indices()
                    .iter()
                    .map(|idx| v[self.format.offset(&back(idx))].clone())
                    .collect(),
            ),
            MatrixEntries::Symbolic(v) => MatrixEntries::Symbolic(
                new_format
                    .indices()
                    .iter()
                    .map(|idx| v[self.format.offset(&back(idx))].clone())
                    .collect(),
            ),
        };
        MDMatrix {
            format: new_format,
            entries,
        }
    }

    /// Drops size-1 directions (single-entry matrices keep one direction).
    pub fn reduce(&self) -> MDMatrix {
        let (dims, _) = self.format.reduced();
        let dims = if dims.is_empty() { vec![1] } else { dims };
        MDMatrix {
            format: Format::new(dims),
            entries: self.entries.clone(),
        }
    }
}

/// All per-direction index subsets whose reduced subformat admits a
/// determinant (single entries, squares, inner, or boundary formats), with
/// the subformat. Deterministic order: per-direction subsets sorted by size
/// then lexicographically, directions nested left to right.
pub fn enumerate_minor_subformats(f: &Format) -> Vec<(Vec<Vec<usize>>, Format)> {
    let per_direction: Vec<Vec<Vec<usize>>> = f
        .dims()
        .iter()
        .map(|&n| {
            let mut subs: Vec<Vec<usize>> = (1u32..(1 << n))
                .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
                .collect();
            subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            subs
        })
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![0usize; f.d()];
    'outer: loop {
        let selection: Vec<Vec<usize>> = stack
            .iter()
            .enumerate()
            .map(|(k, &i)| per_direction[k][i].clone())
            .collect();
        let sub = Format::new(selection.iter().map(Vec::len).collect());
        let admits = matches!(
            sub.classify(),
            FormatClass::Square2d | FormatClass::Inner | FormatClass::Boundary { .. }
        );
        if admits {
            out.push((selection, sub));
        }
        let mut k = f.d();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            if stack[k] + 1 < per_direction[k].len() {
                stack[k] += 1;
                break;
            }
            stack[k] = 0;
        }
    }
    out
}

/// Vectors `x^(1), ..., x^(d)` with all coordinates nonzero, certifying that
/// a matrix lies in the degeneracy locus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegeneracyWitness {
    pub vectors: Vec<Vec<Rational>>,
}

impl DegeneracyWitness {
    pub fn new(vectors: Vec<Vec<Rational>>) -> Self {
        assert!(vectors
            .iter()
            .all(|v| !v.is_empty() && v.iter().all(|x| !x.is_zero())));
        DegeneracyWitness { vectors }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    format: Vec<usize>,
    mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<EntryJson>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryJson {
    Int(i64),
    Text(String),
}

impl MDMatrix {
    pub fn to_json_string(&self) -> String {
        let json = match &self.entries {
            MatrixEntries::Symbolic(_) => MatrixJson {
                format: self.format.dims().to_vec(),
                mode: "symbolic".into(),
                entries: None,
            },
            MatrixEntries::Numeric(values) => MatrixJson {
                format: self.format.dims().to_vec(),
                mode: "numeric".into(),
                entries: Some(
                    values
                        .iter()
                        .map(|v| {
                            if v.denom().is_one() {
                                if let Ok(small) = i64::try_from(v.numer()) {
                                    return EntryJson::Int(small);
                                }
                            }
                            EntryJson::Text(format_rational(v))
                        })
                        .collect(),
                ),
            },
        };
        serde_json::to_string(&json).expect("matrix serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<MDMatrix, MatrixError> {
        let json: MatrixJson =
            serde_json::from_str(text).map_err(|e| MatrixError::Parse(e.to_string()))?;
        if json.format.is_empty() || json.format.contains(&0) {
            return Err(MatrixError::Parse("invalid format vector".into()));
        }
        let format = Format::new(json.format);
        match json.mode.as_str() {
            "symbolic" => Ok(MDMatrix::symbolic(format)),
            "numeric" => {
                let raw = json
                    .entries
                    .ok_or_else(|| MatrixError::Parse("numeric mode needs entries".into()))?;
                if raw.len() != format.len() {
                    return Err(MatrixError::Parse(format!(
                        "expected {} entries, got {}",
                        format.len(),
                        raw.len()
                    )));
                }
                let mut values = Vec::with_capacity(raw.len());
                for e in raw {
                    values.push(match e {
                        EntryJson::Int(v) => crate::exactalg::rat(v),
                        EntryJson::Text(s) => {
                            parse_rational(&s).map_err(|e| MatrixError::Parse(e.to_string()))?
                        }
                    });
                }
                Ok(MDMatrix::numeric(format, values))
            }
            other => Err(MatrixError::Parse(format!("unknown mode '{other}'"))),
        }
    }
}

/// Witness file form: one vector of rationals per direction.
pub fn witness_to_json_string(w: &DegeneracyWitness) -> String {
    #[derive(Serialize)]
    struct WitnessJson<'a> {
        vectors: Vec<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<&'a str>,
    }
    serde_json::to_string(&WitnessJson {
        vectors: w
            .vectors
            .iter()
            .map(|v| v.iter().map(format_rational).collect())
            .collect(),
        note: None,
    })
    .expect("witness serialization cannot fail")
}

pub fn witness_from_json_str(text: &str) -> Result<DegeneracyWitness, MatrixError> {
    #[derive(Deserialize)]
    struct WitnessJson {
        vectors: Vec<Vec<String>>,
    }
    let json: WitnessJson =
        serde_json::from_str(text).map_err(|e| MatrixError::Parse(e.to_string()))?;
    let mut vectors = Vec::new();
    for v in json.vectors {
        let mut row = Vec::new();
        for s in v {
            let x = parse_rational(&s).map_err(|e| MatrixError::Parse(e.to_string()))?;
            if x.is_zero() {
                return Err(MatrixError::Parse("witness coordinate is zero".into()));
            }
            row.push(x);
        }
        if row.is_empty() {
            return Err(MatrixError::Parse("empty witness vector".into()));
        }
        vectors.push(row);
    }
    Ok(DegeneracyWitness::new(vectors))
}

/// Scales numeric entries to integers (multiplying by the denominator lcm)
/// and returns them with the scale. Determinants of the scaled matrix relate
/// to the original by the scale raised to the determinant degree.
pub fn integer_entries(m: &MDMatrix) -> Result<(Vec<BigInt>, BigInt), MatrixError> {
    let values = m.values()?;
    let l = crate::exactalg::rational::denominator_lcm(values);
    let ints = values
        .iter()
        .map(|v| {
            let s = v * rat_big(l.clone());
            debug_assert!(s.denom().is_one());
            s.numer().clone()
        })
        .collect();
    Ok((ints, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_matches_taxonomy() {
        assert_eq!(
            Format::new(vec![2, 2, 3]).classify(),
            FormatClass::Boundary { distinguished: 3 }
        );
        assert_eq!(Format::new(vec![2, 2, 2]).classify(), FormatClass::Inner);
        assert_eq!(Format::new(vec![2, 2, 5]).classify(), FormatClass::Grassman);
        assert_eq!(Format::new(vec![3, 3]).classify(), FormatClass::Square2d);
        assert_eq!(Format::new(vec![2, 3]).classify(), FormatClass::Grassman);
        assert_eq!(
            Format::new(vec![2, 3, 2]).classify(),
            FormatClass::Boundary { distinguished: 2 }
        );
        // size-1 directions are dropped first
        assert_eq!(Format::new(vec![2, 1, 2]).classify(), FormatClass::Square2d);
        assert_eq!(
            Format::new(vec![1, 2, 1, 2, 3]).classify(),
            FormatClass::Boundary { distinguished: 5 }
        );
        assert_eq!(Format::new(vec![1, 1]).classify(), FormatClass::Inner);
        assert_eq!(Format::new(vec![5]).classify(), FormatClass::Grassman);
    }

    #[test]
    fn classify_invariant_under_permutation() {
        let base = Format::new(vec![2, 3, 4]);
        let class = |dims: Vec<usize>| Format::new(dims).classify();
        assert!(matches!(base.classify(), FormatClass::Boundary { .. }));
        for dims in [vec![4, 3, 2], vec![3, 4, 2], vec![4, 2, 3]] {
            assert!(matches!(class(dims), FormatClass::Boundary { .. }));
        }
    }

    #[test]
    fn m_sequence_values() {
        assert_eq!(Format::new(vec![2, 2, 2]).m_sequence(), vec![1, 2, 3, 4]);
        assert_eq!(Format::new(vec![7]).m_sequence(), vec![1, 7]);
        assert_eq!(Format::new(vec![2, 3]).m_sequence(), vec![1, 2, 4]);
    }

    #[test]
    fn m_sequence_invariants() {
        for dims in [vec![2, 2, 3], vec![3, 4], vec![2, 2, 2, 2], vec![5, 1, 2]] {
            let f = Format::new(dims.clone());
            let m = f.m_sequence();
            let d = f.d();
            assert_eq!(m[d] - m[d - 1], dims[d - 1] - 1);
            let total: usize = dims.iter().sum();
            assert_eq!(m[d], 1 + total - d);
        }
    }

    #[test]
    fn slice_of_symbolic_keeps_original_variables() {
        let a = MDMatrix::symbolic(Format::new(vec![2, 2, 2]));
        let s = a.slice(3, 1).unwrap();
        assert_eq!(s.format().dims(), &[2, 2]);
        let want: Vec<Vec<u16>> = vec![
            vec![1, 1, 1],
            vec![1, 2, 1],
            vec![2, 1, 1],
            vec![2, 2, 1],
        ];
        for (idx, w) in s.format().indices().iter().zip(want) {
            assert_eq!(s.variable(idx).unwrap().indices(), w.as_slice());
        }
    }

    #[test]
    fn slices_partition_numeric_matrix() {
        let a = MDMatrix::random_rational(Format::new(vec![2, 3, 2]), 5, 9);
        for k in 1..=3usize {
            let n = a.format().dims()[k - 1];
            for idx in a.format().indices() {
                let i = idx[k - 1] as usize;
                let mut sub_idx: Vec<u16> = idx.clone();
                sub_idx.remove(k - 1);
                let s = a.slice(k, i).unwrap();
                assert_eq!(s.value(&sub_idx).unwrap(), a.value(&idx).unwrap());
                assert!(i <= n);
            }
        }
        assert!(a.slice(4, 1).is_err());
        assert!(a.slice(2, 4).is_err());
    }

    #[test]
    fn subtensor_shapes() {
        let a = MDMatrix::symbolic(Format::new(vec![2, 2, 5]));
        let full: Vec<Vec<usize>> = vec![vec![1, 2], vec![1, 2], vec![1, 2, 3, 4, 5]];
        assert_eq!(a.subtensor(&full).unwrap(), a);
        let sub = a
            .subtensor(&[vec![1, 2], vec![1, 2], vec![1, 3, 4]])
            .unwrap();
        assert_eq!(sub.format().dims(), &[2, 2, 3]);
        let single = a.subtensor(&[vec![2], vec![1], vec![5]]).unwrap();
        assert_eq!(single.format().dims(), &[1, 1, 1]);
        assert_eq!(single.variable(&[1, 1, 1]).unwrap().indices(), &[2, 1, 5]);
        assert!(a.subtensor(&[vec![], vec![1], vec![1]]).is_err());
        assert!(a.subtensor(&[vec![3], vec![1], vec![1]]).is_err());
    }

    #[test]
    fn minor_subformat_counts() {
        assert_eq!(enumerate_minor_subformats(&Format::new(vec![2, 2, 2])).len(), 15);
        assert_eq!(enumerate_minor_subformats(&Format::new(vec![2, 2])).len(), 5);
        // reduced (1, n): single entries only
        assert_eq!(enumerate_minor_subformats(&Format::new(vec![1, 4])).len(), 4);
    }

    #[test]
    fn random_matrices_are_reproducible() {
        let f = Format::new(vec![2, 2, 3]);
        let a = MDMatrix::random_rational(f.clone(), 42, 10);
        let b = MDMatrix::random_rational(f.clone(), 42, 10);
        assert_eq!(a, b);
        let c = MDMatrix::random_rational(f, 43, 10);
        assert_ne!(a, c);
    }

    #[test]
    fn json_round_trip() {
        let a = MDMatrix::random_rational(Format::new(vec![2, 3]), 1, 10);
        let text = a.to_json_string();
        assert_eq!(MDMatrix::from_json_str(&text).unwrap(), a);

        let s = MDMatrix::symbolic(Format::new(vec![2, 2]));
        let text = s.to_json_string();
        assert!(!text.contains("entries"));
        assert_eq!(MDMatrix::from_json_str(&text).unwrap(), s);

        assert!(MDMatrix::from_json_str("{\"format\":[2],\"mode\":\"weird\"}").is_err());
        assert!(MDMatrix::from_json_str("not json").is_err());
    }

    #[test]
    fn permute_directions_round_trip() {
        let a = MDMatrix::random_rational(Format::new(vec![2, 3, 4]), 9, 5);
        let p = a.permute_directions(&[3, 1, 2]);
        assert_eq!(p.format().dims(), &[4, 2, 3]);
        for idx in a.format().indices() {
            let moved = [idx[2], idx[0], idx[1]];
            assert_eq!(p.value(&moved).unwrap(), a.value(&idx).unwrap());
        }
    }
}
