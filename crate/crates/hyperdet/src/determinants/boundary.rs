//! The boundary-format determinant engine: an exact signed double sum over
//! the permutation space and the map-choice space of the cut-sequence
//! combinatorics.
//!
//! For a boundary format `n_1 x ... x n_d x m_d` every product term picks,
//! for each cut sequence, one entry `a[i_1,...,i_d,j]`: `j` is the top path
//! ordinal of the sequence itself, and `i_k` reads the sequence's path
//! through a level-`k` map supplied by the map-choice component selected by
//! the engine policy. The default policy keys that component by the tail of
//! the *permuted* sequence; the alternatives are kept selectable because the
//! source formulation of the index bookkeeping is ambiguous, and the shipped
//! default is the unique interpretation that reproduces the signed
//! permutation expansion of square determinants and survives the witness
//! battery (see `calibration_report`).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::exactalg::{Monomial, Polynomial, Rational};
use crate::mdmatrix::{integer_entries, Format, FormatClass, MDMatrix, MatrixEntries};
use crate::qpaths::{GammaSpace, QSpace, SigmaSpace};

use super::{
    normalize_symbolic, DetError, DetMethod, DetNormalization, DetOptions, DetResult, DetValue,
};

/// Which sequence's tail keys a map-choice component.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TailSource {
    /// The sequence being read.
    Original,
    /// The sequence after the signed permutation acted on it.
    Permuted,
}

/// How the component level aligns with the map level it supplies.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelAlignment {
    /// The component keyed at one level below supplies the map (coherent:
    /// the key tail starts with the subset that defines admissibility).
    Shifted,
    /// Read the index bookkeeping verbatim: key the component at the same
    /// level. The component then supplies maps whose domain is one level
    /// too high, so this alignment cannot type-check.
    Literal,
}

/// Interpretation choices for the engine's map-choice lookup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnginePolicy {
    pub key_tail: TailSource,
    pub admissibility: TailSource,
    pub alignment: LevelAlignment,
}

impl Default for EnginePolicy {
    fn default() -> Self {
        EnginePolicy {
            key_tail: TailSource::Permuted,
            admissibility: TailSource::Permuted,
            alignment: LevelAlignment::Shifted,
        }
    }
}

impl EnginePolicy {
    pub fn name(&self) -> String {
        let t = |s: TailSource| match s {
            TailSource::Original => "original",
            TailSource::Permuted => "permuted",
        };
        let a = match self.alignment {
            LevelAlignment::Shifted => "shifted",
            LevelAlignment::Literal => "literal",
        };
        format!("{}-{}-{}", t(self.key_tail), t(self.admissibility), a)
    }

    pub fn from_name(name: &str) -> Option<EnginePolicy> {
        if name == "default" {
            return Some(EnginePolicy::default());
        }
        Self::all().into_iter().find(|p| p.name() == name)
    }

    /// The eight interpretation combinations.
    pub fn all() -> Vec<EnginePolicy> {
        let sources = [TailSource::Original, TailSource::Permuted];
        let aligns = [LevelAlignment::Shifted, LevelAlignment::Literal];
        let mut out = Vec::new();
        for &key_tail in &sources {
            for &admissibility in &sources {
                for &alignment in &aligns {
                    out.push(EnginePolicy {
                        key_tail,
                        admissibility,
                        alignment,
                    });
                }
            }
        }
        out
    }
}

/// Determinant of a boundary-format matrix by the exact signed double sum.
///
/// Square 2-dimensional formats are accepted as the one-level case. The
/// distinguished direction is moved last internally; results are expressed
/// in the matrix's own entries, so callers see original variable names.
pub fn det_boundary(a: &MDMatrix, opts: &DetOptions) -> Result<DetResult, DetError> {
    let reduced = a.reduce();
    let distinguished = match reduced.format().classify() {
        FormatClass::Boundary { distinguished } => distinguished,
        FormatClass::Square2d => 2,
        other => {
            return Err(DetError::WrongFormat(format!(
                "{} classifies as {other}, not boundary",
                reduced.format()
            )))
        }
    };
    let d_all = reduced.format().d();
    let perm: Vec<usize> = (1..=d_all)
        .filter(|&t| t != distinguished)
        .chain([distinguished])
        .collect();
    let b = reduced.permute_directions(&perm);
    let dims = b.format().dims().to_vec();
    let levels = &dims[..d_all - 1];
    let m_d = dims[d_all - 1];
    debug_assert_eq!(m_d, 1 + levels.iter().map(|&n| n - 1).sum::<usize>());

    let space = QSpace::new(levels, opts.max_terms)?;
    let sigma = SigmaSpace::new(&space);
    let gamma = GammaSpace::new(&space);
    let product = sigma.total() * gamma.total();
    if product.to_u64().is_none_or(|p| p > opts.max_terms) {
        return Err(DetError::SizeGuard(format!(
            "signed double sum has {product} products, cap is {}",
            opts.max_terms
        )));
    }
    if opts.policy.alignment == LevelAlignment::Literal {
        let k = 1;
        return Err(DetError::Calibration(format!(
            "literal level alignment: the level-{k} component supplies maps on {} elements \
             but the level needs domain size {}",
            space.m()[k],
            space.m()[k - 1]
        )));
    }

    let engine = Engine {
        space: &space,
        sigma: &sigma,
        gamma: &gamma,
        policy: opts.policy,
        dims: &dims,
    };
    let sigma_count = sigma.total().to_u64().expect("guard checked");
    let threads = opts.threads.max(1).min(sigma_count.max(1) as usize);

    if b.is_symbolic() {
        let proto = SymbolicAccum {
            terms: HashMap::new(),
            width: b.format().len(),
        };
        let merged = run_partitioned(&engine, sigma_count, threads, proto)?;
        let vars = match b.entries() {
            MatrixEntries::Symbolic(v) => v,
            MatrixEntries::Numeric(_) => unreachable!(),
        };
        let mut terms = std::collections::BTreeMap::new();
        for (exps, coeff) in merged.terms {
            if coeff.is_zero() {
                continue;
            }
            let mono = Monomial::from_pairs(
                exps.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(slot, &e)| (vars[slot].clone(), e)),
            );
            terms.insert(mono, coeff);
        }
        let raw = Polynomial::from_term_map(terms);
        // anchor: the product over all sequences of the entry read from the
        // sequence's own initial diagram
        let anchor = Monomial::from_pairs((0..space.len()).map(|i| {
            let q = space.qseq(i);
            let diagram = space.initial_diagram(&q);
            let read = space.path_over_diagram(&q, &diagram);
            let slot = engine.slot_of(&read, space.seq_data(i).path[space.d()]);
            (vars[slot].clone(), 1u32)
        }));
        let (poly, normalization) = normalize_symbolic(raw, Some(&anchor));
        Ok(DetResult {
            value: DetValue::Polynomial(poly),
            format: a.format().clone(),
            method: DetMethod::Boundary,
            normalization,
        })
    } else {
        let (ints, scale) = integer_entries(&b)?;
        let acc = run_partitioned(
            &engine,
            sigma_count,
            threads,
            NumericAccum {
                ints: &ints,
                total: BigInt::zero(),
            },
        )?;
        let mut denom = BigInt::one();
        for _ in 0..space.len() {
            denom *= &scale;
        }
        Ok(DetResult {
            value: DetValue::Scalar(Rational::new(acc.total, denom)),
            format: a.format().clone(),
            method: DetMethod::Boundary,
            normalization: DetNormalization {
                content: BigUint::one(),
                sign_flipped: false,
            },
        })
    }
}

struct Engine<'a> {
    space: &'a QSpace,
    sigma: &'a SigmaSpace,
    gamma: &'a GammaSpace,
    policy: EnginePolicy,
    dims: &'a [usize],
}

impl Engine<'_> {
    fn slot_of(&self, read: &[u8], j: u16) -> usize {
        let mut off = 0usize;
        for (k, &i) in read.iter().enumerate() {
            off = off * self.dims[k] + (i as usize - 1);
        }
        off * self.dims[self.dims.len() - 1] + (j as usize - 1)
    }
}

trait TermAccum: Send {
    fn term(&mut self, slots: &[usize], coeff: &BigInt);
    fn merge(&mut self, other: Self);
}

#[derive(Default)]
struct SymbolicAccum {
    terms: HashMap<Vec<u32>, BigInt>,
    width: usize,
}

impl TermAccum for SymbolicAccum {
    fn term(&mut self, slots: &[usize], coeff: &BigInt) {
        let mut exps = vec![0u32; self.width];
        for &s in slots {
            exps[s] += 1;
        }
        let e = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *e += coeff;
    }

    fn merge(&mut self, other: Self) {
        for (k, v) in other.terms {
            let e = self.terms.entry(k).or_insert_with(BigInt::zero);
            *e += v;
        }
    }
}

struct NumericAccum<'a> {
    ints: &'a [BigInt],
    total: BigInt,
}

impl TermAccum for NumericAccum<'_> {
    fn term(&mut self, slots: &[usize], coeff: &BigInt) {
        let mut prod = coeff.clone();
        for &s in slots {
            if prod.is_zero() {
                return;
            }
            prod *= &self.ints[s];
        }
        self.total += prod;
    }

    fn merge(&mut self, other: Self) {
        self.total += other.total;
    }
}

fn run_partitioned<A: TermAccum + Clone>(
    engine: &Engine<'_>,
    sigma_count: u64,
    threads: usize,
    proto: A,
) -> Result<A, DetError> {
    if threads <= 1 {
        let mut acc = proto;
        run_sigma_range(engine, 0, sigma_count, &mut acc)?;
        return Ok(acc);
    }
    let chunk = sigma_count.div_ceil(threads as u64);
    let mut results: Vec<Result<A, DetError>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for t in 0..threads {
            let start = chunk * t as u64;
            let end = (start + chunk).min(sigma_count);
            if start >= end {
                continue;
            }
            let mut acc = proto.clone();
            handles.push(scope.spawn(move || {
                run_sigma_range(engine, start, end, &mut acc)?;
                Ok(acc)
            }));
        }
        for h in handles {
            results.push(h.join().expect("engine worker panicked"));
        }
    });
    let mut merged = None;
    for r in results {
        let acc = r?;
        match &mut merged {
            None => merged = Some(acc),
            Some(m) => m.merge(acc),
        }
    }
    Ok(merged.expect("at least one worker"))
}

fn run_sigma_range<A: TermAccum>(
    engine: &Engine<'_>,
    start: u64,
    end: u64,
    acc: &mut A,
) -> Result<(), DetError> {
    let space = engine.space;
    let sigma = engine.sigma;
    let gamma = engine.gamma;
    let d = space.d();
    let nseq = space.len();
    let radices = sigma.radices();
    let mut digits = decode_mixed_radix(start, &radices);

    let gamma_sizes: Vec<usize> = (0..gamma.components().len())
        .map(|c| gamma.maps(space, c).len())
        .collect();
    let gamma_total: u64 = gamma.total().to_u64().expect("guard checked");

    // reusable buffers
    let mut sig_positions: Vec<Vec<usize>> = vec![vec![0; d]; nseq];
    let mut comp_per_read: Vec<usize> = vec![0; nseq * d];
    let mut touched: Vec<usize> = Vec::new();
    let mut slot_per_read: Vec<usize> = vec![0; nseq * d];
    let mut choices: Vec<usize> = Vec::new();
    let mut slots: Vec<usize> = vec![0; nseq];

    for index in start..end {
        if index > start {
            increment_mixed_radix(&mut digits, &radices);
        }
        let sign = sigma.sign(&digits);

        for (i, pos) in sig_positions.iter_mut().enumerate() {
            *pos = sigma.apply(&digits, space, i);
        }

        touched.clear();
        for i in 0..nseq {
            let data = space.seq_data(i);
            for k in 1..=d {
                let key_positions = match engine.policy.key_tail {
                    TailSource::Permuted => &sig_positions[i],
                    TailSource::Original => &data.positions,
                };
                let comp = gamma.component_id(space, key_positions, k, data.ordinals[k - 1]);
                if engine.policy.admissibility != engine.policy.key_tail {
                    let adm_positions = match engine.policy.admissibility {
                        TailSource::Permuted => &sig_positions[i],
                        TailSource::Original => &data.positions,
                    };
                    let required = adm_positions[k - 1];
                    if gamma.components()[comp].subset_pos != required {
                        return Err(DetError::Calibration(format!(
                            "map component keyed by the {} tail is admissible for subset \
                             position {} at level {k}, but the {} sequence needs position {}",
                            match engine.policy.key_tail {
                                TailSource::Permuted => "permuted",
                                TailSource::Original => "original",
                            },
                            gamma.components()[comp].subset_pos,
                            match engine.policy.admissibility {
                                TailSource::Permuted => "permuted",
                                TailSource::Original => "original",
                            },
                            required
                        )));
                    }
                }
                comp_per_read[i * d + (k - 1)] = comp;
            }
        }
        touched.extend_from_slice(&comp_per_read);
        touched.sort_unstable();
        touched.dedup();

        // components never consulted by this permutation contribute their
        // full choice count as a multiplicity
        let mut touched_product = 1u64;
        for &c in &touched {
            touched_product *= gamma_sizes[c] as u64;
        }
        let multiplier = BigInt::from(gamma_total / touched_product) * BigInt::from(sign);

        for (r, &comp) in comp_per_read.iter().enumerate() {
            slot_per_read[r] = touched.binary_search(&comp).expect("touched contains comp");
        }

        choices.clear();
        choices.resize(touched.len(), 0);
        loop {
            for i in 0..nseq {
                let data = space.seq_data(i);
                let mut read = [0u8; 8];
                for k in 1..=d {
                    let slot = slot_per_read[i * d + (k - 1)];
                    let map = &gamma.maps(space, touched[slot])[choices[slot]];
                    read[k - 1] = map[data.path[k - 1] as usize - 1];
                }
                slots[i] = engine.slot_of(&read[..d], data.path[d]);
            }
            acc.term(&slots, &multiplier);

            // odometer over the touched components
            let mut t = 0;
            loop {
                if t == touched.len() {
                    break;
                }
                choices[t] += 1;
                if choices[t] < gamma_sizes[touched[t]] {
                    break;
                }
                choices[t] = 0;
                t += 1;
            }
            if t == touched.len() {
                break;
            }
        }
    }
    Ok(())
}

fn decode_mixed_radix(mut index: u64, radices: &[u64]) -> Vec<usize> {
    let mut digits = Vec::with_capacity(radices.len());
    for &r in radices {
        digits.push((index % r) as usize);
        index /= r;
    }
    digits
}

fn increment_mixed_radix(digits: &mut [usize], radices: &[u64]) {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if (*d as u64) < r {
            return;
        }
        *d = 0;
    }
}

/// Outcome of checking one interpretation against the calibration contract.
#[derive(Debug)]
pub struct CalibrationOutcome {
    pub policy: EnginePolicy,
    pub result: Result<(), String>,
}

/// Runs every interpretation against the calibration contract.
pub fn calibration_report(max_terms: u64) -> Vec<CalibrationOutcome> {
    EnginePolicy::all()
        .into_iter()
        .map(|policy| CalibrationOutcome {
            result: calibrate_policy(&policy, max_terms),
            policy,
        })
        .collect()
}

/// Calibration contract: at one level the engine must reproduce the signed
/// permutation expansion of square determinants; on the smallest genuine
/// boundary format the result must have the right degree, uniform
/// multidegree, vanish on constructed degenerate matrices, and stay nonzero
/// on random integer matrices.
pub fn calibrate_policy(policy: &EnginePolicy, max_terms: u64) -> Result<(), String> {
    let opts = DetOptions {
        policy: *policy,
        max_terms,
        threads: 1,
    };
    for n in 2..=3usize {
        let a = MDMatrix::symbolic(Format::new(vec![n, n]));
        let ours = det_boundary(&a, &opts).map_err(|e| e.to_string())?;
        let leibniz = super::det_2d(&a).map_err(|e| e.to_string())?;
        if ours.polynomial() != leibniz.polynomial() {
            return Err(format!(
                "square case n={n}: engine disagrees with the permutation expansion"
            ));
        }
    }

    let f = Format::new(vec![2, 2, 3]);
    let sym = MDMatrix::symbolic(f.clone());
    let det = det_boundary(&sym, &opts).map_err(|e| e.to_string())?;
    let p = det.polynomial();
    if p.is_zero() {
        return Err("2x2x3 determinant collapsed to zero".into());
    }
    if p.total_degree() != 6 {
        return Err(format!("2x2x3 degree {} != 6", p.total_degree()));
    }
    super::multidegree_profile(p, &f)?;
    for seed in 0..3u64 {
        let (m, _) = super::make_degenerate(&f, seed).map_err(|e| e.to_string())?;
        let v = det_boundary(&m, &opts).map_err(|e| e.to_string())?;
        if !v.scalar().is_zero() {
            return Err(format!("degenerate witness sample (seed {seed}) gave nonzero value"));
        }
    }
    for seed in 100..102u64 {
        let m = MDMatrix::random_rational(f.clone(), seed, 10);
        let v = det_boundary(&m, &opts).map_err(|e| e.to_string())?;
        if v.scalar().is_zero() {
            return Err(format!("random sample (seed {seed}) unexpectedly vanished"));
        }
    }
    Ok(())
}

impl Clone for SymbolicAccum {
    fn clone(&self) -> Self {
        SymbolicAccum {
            terms: self.terms.clone(),
            width: self.width,
        }
    }
}

impl Clone for NumericAccum<'_> {
    fn clone(&self) -> Self {
        NumericAccum {
            ints: self.ints,
            total: self.total.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn opts() -> DetOptions {
        DetOptions::default()
    }

    #[test]
    fn one_level_matches_leibniz() {
        for n in 2..=4usize {
            let a = MDMatrix::symbolic(Format::new(vec![n, n]));
            let engine = det_boundary(&a, &opts()).unwrap();
            let leibniz = super::super::det_2d(&a).unwrap();
            assert_eq!(engine.polynomial(), leibniz.polynomial(), "n = {n}");
        }
    }

    #[test]
    fn numeric_one_level_matches_square_elimination() {
        for seed in 0..5u64 {
            let a = MDMatrix::random_rational(Format::new(vec![3, 3]), seed, 9);
            let engine = det_boundary(&a, &opts()).unwrap();
            let square = super::super::det_2d(&a).unwrap();
            assert_eq!(engine.scalar(), square.scalar(), "seed {seed}");
        }
    }

    #[test]
    fn numeric_matches_symbolic_evaluation() {
        let f = Format::new(vec![2, 2, 3]);
        let sym = det_boundary(&MDMatrix::symbolic(f.clone()), &opts()).unwrap();
        for seed in 0..3u64 {
            let m = MDMatrix::random_rational(f.clone(), seed, 6);
            let num = det_boundary(&m, &opts()).unwrap();
            let eval = sym.polynomial().eval(&m.assignment().unwrap()).unwrap();
            // symbolic result is normalized; raw numeric value may differ by
            // the removed content and flipped sign
            let content = rat(1) * crate::exactalg::rat_big(BigInt::from(sym.normalization.content.clone()));
            let sign = if sym.normalization.sign_flipped { rat(-1) } else { rat(1) };
            assert_eq!(num.scalar().clone() * sign, eval * content);
        }
    }

    #[test]
    fn transposed_formats_agree_up_to_sign() {
        let p = det_boundary(&MDMatrix::symbolic(Format::new(vec![2, 2, 3])), &opts()).unwrap();
        let q = det_boundary(&MDMatrix::symbolic(Format::new(vec![2, 3, 2])), &opts()).unwrap();
        let swapped = q.polynomial().rename_variables(|v| {
            let idx = v.indices();
            crate::exactalg::EntryVar::new(vec![idx[0], idx[2], idx[1]])
        });
        assert!(
            &swapped == p.polynomial() || &swapped.neg() == p.polynomial(),
            "index transposition must map one determinant to the other up to sign"
        );
    }

    #[test]
    fn threads_do_not_change_results() {
        let f = Format::new(vec![2, 2, 3]);
        let base = det_boundary(&MDMatrix::symbolic(f.clone()), &opts()).unwrap();
        for threads in [2usize, 8] {
            let alt = det_boundary(
                &MDMatrix::symbolic(f.clone()),
                &DetOptions {
                    threads,
                    ..DetOptions::default()
                },
            )
            .unwrap();
            assert_eq!(base.polynomial(), alt.polynomial());
        }
    }

    #[test]
    fn size_guard_rejects_large_formats() {
        let a = MDMatrix::symbolic(Format::new(vec![2, 2, 2, 4]));
        match det_boundary(&a, &opts()) {
            Err(DetError::SizeGuard(_)) => {}
            other => panic!("expected size guard, got {other:?}"),
        }
    }

    #[test]
    fn default_policy_passes_calibration() {
        assert!(calibrate_policy(&EnginePolicy::default(), 1_000_000).is_ok());
    }

    #[test]
    fn alternative_policies_fail_calibration() {
        for outcome in calibration_report(1_000_000) {
            if outcome.policy == EnginePolicy::default() {
                assert!(outcome.result.is_ok());
            } else {
                assert!(
                    outcome.result.is_err(),
                    "policy {} unexpectedly passed",
                    outcome.policy.name()
                );
            }
        }
    }
}
