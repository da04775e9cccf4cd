//! Subset-sequence combinatorics behind the boundary-format determinant:
//! ordered level sets, cut sequences and their induced paths, block
//! partitions, admissible block-labeling maps, diagrams, conjugacy classes
//! with ordinals, the signed permutation space and the map-choice space, and
//! diagonal monomials.
//!
//! For level sizes `n_1, ..., n_d` the level sets are `P_k = {1, ..., m_k}`
//! with `m_0 = 1` and `m_k = m_{k-1} + n_k - 1`. A cut sequence picks an
//! `(n_k - 1)`-subset `Q_k` of each `P_k`; removing it cuts `P_k` into `n_k`
//! contiguous blocks and leaves a unique order isomorphism from `P_{k-1}`
//! onto the complement, which transports the base point of `P_0` upward into
//! a path.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::exactalg::{EntryVar, Monomial};
use crate::mdmatrix::Format;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("enumeration size {size} exceeds the configured cap {cap}")]
    SizeGuard { size: String, cap: u64 },
    #[error("complement size does not match the domain")]
    SizeMismatch,
    #[error("map is not injective")]
    NotInjective,
    #[error("map value outside the allowed complement")]
    RangeViolation,
    #[error("format is not a boundary format with the distinguished direction last")]
    NotBoundary,
}

/// Sorted subset of a level set, elements 1-based.
pub type Subset = Vec<u16>;

/// A choice of one cut subset per level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSeq {
    pub subsets: Vec<Subset>,
}

impl fmt::Display for QSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.subsets.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{{")?;
            for (i, x) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// One admissible block-labeling map per level: `maps[k-1]` sends each
/// element of `P_{k-1}` (0-based slot) to a block index in `1..=n_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QDiagram {
    pub maps: Vec<Vec<u8>>,
}

/// Canonical order on equal-size sorted subsets: the set owning the largest
/// non-common element sorts first. Lifted to sequences by comparing the top
/// level first. This makes the `(n-1)`-subsets of an `n`-set sort in the
/// order of their complementary element.
pub fn dcolex_cmp(a: &Subset, b: &Subset) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn qseq_cmp(a: &QSeq, b: &QSeq) -> Ordering {
    debug_assert_eq!(a.subsets.len(), b.subsets.len());
    for k in (0..a.subsets.len()).rev() {
        let c = dcolex_cmp(&a.subsets[k], &b.subsets[k]);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// The unique order isomorphism from `{1..domain}` onto the complement of
/// `excluded` in `{1..codomain}`, as a value vector.
pub fn order_iso(domain: usize, codomain: usize, excluded: &Subset) -> Result<Vec<u16>, QError> {
    let complement: Vec<u16> = (1..=codomain as u16)
        .filter(|x| excluded.binary_search(x).is_err())
        .collect();
    if complement.len() != domain {
        return Err(QError::SizeMismatch);
    }
    Ok(complement)
}

/// All `(size)`-subsets of `{1..universe}` in canonical order.
fn subsets_in_order(universe: usize, size: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::new();
    let mut cur: Subset = (1..=size as u16).collect();
    if size == 0 {
        return vec![Vec::new()];
    }
    if size > universe {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next combination in plain lex order; re-sorted below
        let mut i = size;
        loop {
            if i == 0 {
                out.sort_by(dcolex_cmp);
                return out;
            }
            i -= 1;
            if cur[i] < (universe - (size - 1 - i)) as u16 {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The full cut-sequence space for level sizes `n_1..n_d`, with per-sequence
/// caches (paths, class ordinals) and the admissible-map tables.
pub struct QSpace {
    levels: Vec<usize>,
    m: Vec<usize>,
    c_sets: Vec<Vec<Subset>>,
    seqs: Vec<QSeqData>,
    /// `lsize[k]` = common size of conjugacy classes anchored at level `k`.
    lsize: Vec<usize>,
    /// `adm[k-1][pos]` = admissible maps for the level-`k` subset at `pos`.
    adm: Vec<Vec<Vec<Vec<u8>>>>,
}

#[derive(Clone, Debug)]
pub struct QSeqData {
    /// Position of each level's subset in the canonical order of its level.
    pub positions: Vec<usize>,
    /// Path elements `p_0..p_d`.
    pub path: Vec<u16>,
    /// Class ordinals `l_0..l_d` (1-based; `l_0 = 1`).
    pub ordinals: Vec<usize>,
}

impl QSpace {
    /// Computes `|C|` = product of binomials without enumerating.
    pub fn count_c(levels: &[usize]) -> BigUint {
        let mut m = 1usize;
        let mut total = BigUint::one();
        for &n in levels {
            total *= binomial(m + n - 1, n - 1);
            m += n - 1;
        }
        total
    }

    pub fn new(levels: &[usize], cap: u64) -> Result<QSpace, QError> {
        assert!(!levels.is_empty() && levels.iter().all(|&n| n >= 1));
        let total = Self::count_c(levels);
        let Some(total_u64) = total.to_u64() else {
            return Err(QError::SizeGuard { size: total.to_string(), cap });
        };
        if total_u64 > cap {
            return Err(QError::SizeGuard { size: total.to_string(), cap });
        }
        let d = levels.len();
        let mut m = vec![1usize];
        for &n in levels {
            m.push(m.last().unwrap() + n - 1);
        }
        let c_sets: Vec<Vec<Subset>> = (1..=d)
            .map(|k| subsets_in_order(m[k], levels[k - 1] - 1))
            .collect();

        let adm: Vec<Vec<Vec<Vec<u8>>>> = (1..=d)
            .map(|k| {
                c_sets[k - 1]
                    .iter()
                    .map(|q| admissible_maps_for(m[k - 1], levels[k - 1], m[k], q))
                    .collect()
            })
            .collect();

        // enumerate all sequences in canonical order (top level outermost)
        let mut seqs = Vec::with_capacity(total_u64 as usize);
        let mut positions = vec![0usize; d];
        let mut class_counters: HashMap<(usize, u64, u16), usize> = HashMap::new();
        loop {
            let path = path_of(&m, &c_sets, &positions);
            let mut ordinals = Vec::with_capacity(d + 1);
            for (k, &anchor) in path.iter().enumerate() {
                let key = (k, suffix_code(&c_sets, &positions, k + 1), anchor);
                let e = class_counters.entry(key).or_insert(0);
                *e += 1;
                ordinals.push(*e);
            }
            seqs.push(QSeqData {
                positions: positions.clone(),
                path,
                ordinals,
            });
            // odometer: level 1 (index 0) fastest, level d slowest
            let mut k = 0;
            loop {
                if k == d {
                    let mut lsize = vec![0usize; d + 1];
                    for s in &seqs {
                        for (slot, &l) in lsize.iter_mut().zip(&s.ordinals) {
                            *slot = (*slot).max(l);
                        }
                    }
                    return Ok(QSpace { levels: levels.to_vec(), m, c_sets, seqs, lsize, adm });
                }
                if positions[k] + 1 < c_sets[k].len() {
                    positions[k] += 1;
                    break;
                }
                positions[k] = 0;
                k += 1;
            }
        }
    }

    pub fn d(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn c_set(&self, k: usize) -> &[Subset] {
        &self.c_sets[k - 1]
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn seq_data(&self, i: usize) -> &QSeqData {
        &self.seqs[i]
    }

    pub fn seqs(&self) -> &[QSeqData] {
        &self.seqs
    }

    pub fn lsize(&self, k: usize) -> usize {
        self.lsize[k]
    }

    pub fn qseq(&self, i: usize) -> QSeq {
        self.qseq_from_positions(&self.seqs[i].positions)
    }

    pub fn qseq_from_positions(&self, positions: &[usize]) -> QSeq {
        QSeq {
            subsets: positions
                .iter()
                .enumerate()
                .map(|(k, &p)| self.c_sets[k][p].clone())
                .collect(),
        }
    }

    pub fn positions_of(&self, q: &QSeq) -> Option<Vec<usize>> {
        q.subsets
            .iter()
            .enumerate()
            .map(|(k, s)| self.c_sets[k].iter().position(|t| t == s))
            .collect()
    }

    pub fn index_of_positions(&self, positions: &[usize]) -> usize {
        suffix_code(&self.c_sets, positions, 1) as usize
    }

    /// Admissible maps for the level-`k` subset at canonical position `pos`.
    pub fn admissible_maps_at(&self, k: usize, pos: usize) -> &[Vec<u8>] {
        &self.adm[k - 1][pos]
    }

    /// The path `p_0..p_d` of a cut sequence.
    pub fn path(&self, q: &QSeq) -> Vec<u16> {
        let positions = self.positions_of(q).expect("sequence belongs to this space");
        path_of(&self.m, &self.c_sets, &positions)
    }

    /// Ordinal of the top path element (the last index of the implied
    /// entry); equals the element itself since `P_d = 1..m_d`.
    pub fn j_of(&self, q: &QSeq) -> u16 {
        *self.path(q).last().unwrap()
    }

    /// Block partition of `P_k` minus the subset, as `n_k` contiguous runs.
    pub fn blocks(&self, k: usize, q: &Subset) -> Vec<Vec<u16>> {
        let mut out = vec![Vec::new(); self.levels[k - 1]];
        for x in 1..=self.m[k] as u16 {
            if q.binary_search(&x).is_err() {
                let below = q.iter().filter(|&&c| c < x).count();
                out[below].push(x);
            }
        }
        out
    }

    /// Block label composed with an explicit injection into the complement.
    pub fn induced_map(&self, k: usize, phi: &[u16], q: &Subset) -> Result<Vec<u8>, QError> {
        if phi.len() != self.m[k - 1] {
            return Err(QError::SizeMismatch);
        }
        let mut seen = vec![false; self.m[k] + 1];
        let mut g = Vec::with_capacity(phi.len());
        for &y in phi {
            if y < 1 || (y as usize) > self.m[k] || q.binary_search(&y).is_ok() {
                return Err(QError::RangeViolation);
            }
            if seen[y as usize] {
                return Err(QError::NotInjective);
            }
            seen[y as usize] = true;
            let below = q.iter().filter(|&&c| c < y).count();
            g.push(below as u8 + 1);
        }
        Ok(g)
    }

    /// The diagram induced by the order isomorphisms themselves.
    pub fn initial_diagram(&self, q: &QSeq) -> QDiagram {
        let maps = (1..=self.d())
            .map(|k| {
                let iso = order_iso(self.m[k - 1], self.m[k], &q.subsets[k - 1])
                    .expect("cut subsets have complement of the right size");
                self.induced_map(k, &iso, &q.subsets[k - 1])
                    .expect("order isomorphism is an injection into the complement")
            })
            .collect();
        QDiagram { maps }
    }

    /// Index tuple of one sequence's path read over another's diagram:
    /// `i_k = g_k(p_{k-1})`.
    pub fn path_over_diagram(&self, q_path_owner: &QSeq, diagram: &QDiagram) -> Vec<u8> {
        let p = self.path(q_path_owner);
        (1..=self.d())
            .map(|k| diagram.maps[k - 1][p[k - 1] as usize - 1])
            .collect()
    }

    /// All sequences with the given tail above level `k` whose path passes
    /// through `anchor` at level `k`, in canonical order.
    pub fn conj_class(&self, k: usize, tail: &[Subset], anchor: u16) -> Vec<QSeq> {
        assert_eq!(tail.len(), self.d() - k);
        let tail_positions: Vec<usize> = tail
            .iter()
            .enumerate()
            .map(|(i, s)| {
                self.c_sets[k + i]
                    .iter()
                    .position(|t| t == s)
                    .expect("tail subsets belong to their levels")
            })
            .collect();
        let mut out = Vec::new();
        for s in &self.seqs {
            if s.positions[k..] == tail_positions[..] && s.path[k] == anchor {
                out.push(self.qseq_from_positions(&s.positions));
            }
        }
        out
    }

    /// Class ordinals `l_1..l_d` of a sequence.
    pub fn l_sequence(&self, q: &QSeq) -> Vec<usize> {
        let positions = self.positions_of(q).expect("sequence belongs to this space");
        let idx = self.index_of_positions(&positions);
        self.seqs[idx].ordinals[1..].to_vec()
    }

    /// Enumerates the whole space as sequences, canonical order.
    pub fn enumerate(&self) -> Vec<QSeq> {
        (0..self.len()).map(|i| self.qseq(i)).collect()
    }
}

fn path_of(m: &[usize], c_sets: &[Vec<Subset>], positions: &[usize]) -> Vec<u16> {
    let d = positions.len();
    let mut p = Vec::with_capacity(d + 1);
    p.push(1u16);
    for k in 0..d {
        let q = &c_sets[k][positions[k]];
        let iso = order_iso(m[k], m[k + 1], q).expect("cut subsets match level sizes");
        let prev = *p.last().unwrap();
        p.push(iso[prev as usize - 1]);
    }
    p
}

/// Mixed-radix code of the subset positions at levels `from..=d`; level
/// `from` is the fastest digit. The code over all levels is the canonical
/// enumeration index.
fn suffix_code(c_sets: &[Vec<Subset>], positions: &[usize], from: usize) -> u64 {
    let d = positions.len();
    let mut code = 0u64;
    for lv in (from..=d).rev() {
        code = code * c_sets[lv - 1].len() as u64 + positions[lv - 1] as u64;
    }
    code
}

/// All maps from `{1..domain}` to block labels `1..=n` whose fiber sizes are
/// bounded by the block sizes of the subset, in lexicographic order of the
/// value vectors. Every such map arises from an injection into the
/// complement by labeling each image element with its block.
pub fn admissible_maps_for(domain: usize, n: usize, universe: usize, q: &Subset) -> Vec<Vec<u8>> {
    let mut capacity = vec![0usize; n];
    for x in 1..=universe as u16 {
        if q.binary_search(&x).is_err() {
            let below = q.iter().filter(|&&c| c < x).count();
            capacity[below] += 1;
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(domain);
    fn dfs(
        domain: usize,
        capacity: &mut [usize],
        cur: &mut Vec<u8>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if cur.len() == domain {
            out.push(cur.clone());
            return;
        }
        for b in 0..capacity.len() {
            if capacity[b] > 0 {
                capacity[b] -= 1;
                cur.push(b as u8 + 1);
                dfs(domain, capacity, cur, out);
                cur.pop();
                capacity[b] += 1;
            }
        }
    }
    dfs(domain, &mut capacity, &mut cur, &mut out);
    out
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

fn factorial(n: usize) -> BigUint {
    let mut r = BigUint::one();
    for i in 2..=n {
        r *= BigUint::from(i);
    }
    r
}

/// The signed permutation space: one symmetric group per (coordinate level,
/// tail-above, class ordinal). An assignment picks one permutation per
/// component; its sign is the product of the component parities.
pub struct SigmaSpace {
    comps: Vec<SigmaComp>,
    /// lexicographic permutations with parity, per level (degree `|C_k|`).
    perms: Vec<Vec<(Vec<u8>, i8)>>,
    /// component id per sequence and coordinate level (depends only on the
    /// sequence, so it is cached here).
    comp_of: Vec<Vec<usize>>,
    total: BigUint,
}

#[derive(Clone, Copy, Debug)]
pub struct SigmaComp {
    /// Coordinate level this component permutes (1-based).
    pub level: usize,
    /// Number of subsets at that level.
    pub degree: usize,
}

impl SigmaSpace {
    pub fn new(space: &QSpace) -> SigmaSpace {
        let d = space.d();
        let mut base = Vec::with_capacity(d);
        let mut comps = Vec::new();
        let mut total = BigUint::one();
        for k in 1..=d {
            base.push(comps.len());
            let suffix: usize = (k + 1..=d).map(|lv| space.c_sets[lv - 1].len()).product();
            let count = suffix * space.lsize[k - 1];
            let degree = space.c_sets[k - 1].len();
            for _ in 0..count {
                comps.push(SigmaComp { level: k, degree });
            }
            total *= factorial(degree).pow(count as u32);
        }
        let perms = (1..=d)
            .map(|k| permutations_with_parity(space.c_sets[k - 1].len()))
            .collect();
        let comp_of = space
            .seqs
            .iter()
            .map(|s| {
                (1..=d)
                    .map(|k| {
                        base[k - 1]
                            + suffix_code(&space.c_sets, &s.positions, k + 1) as usize
                                * space.lsize[k - 1]
                            + (s.ordinals[k - 1] - 1)
                    })
                    .collect()
            })
            .collect();
        SigmaSpace { comps, perms, comp_of, total }
    }

    pub fn components(&self) -> &[SigmaComp] {
        &self.comps
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Radix of each component in an assignment (factorial of the degree).
    pub fn radices(&self) -> Vec<u64> {
        self.comps
            .iter()
            .map(|c| self.perms[c.level - 1].len() as u64)
            .collect()
    }

    /// Applies an assignment to the sequence with index `i`, replacing every
    /// coordinate by the action of its own component, all keyed by the
    /// original sequence.
    pub fn apply(&self, assignment: &[usize], space: &QSpace, i: usize) -> Vec<usize> {
        let s = &space.seqs[i];
        (0..space.d())
            .map(|k| {
                let comp = self.comp_of[i][k];
                let perm = &self.perms[self.comps[comp].level - 1][assignment[comp]].0;
                perm[s.positions[k]] as usize
            })
            .collect()
    }

    /// Parity product over all components.
    pub fn sign(&self, assignment: &[usize]) -> i8 {
        let mut sign = 1i8;
        for (c, &choice) in self.comps.iter().zip(assignment) {
            sign *= self.perms[c.level - 1][choice].1;
        }
        sign
    }

    pub fn component_of(&self, seq_index: usize, k: usize) -> usize {
        self.comp_of[seq_index][k - 1]
    }
}

/// All permutations of `{0..n}` in lexicographic order with parity.
pub fn permutations_with_parity(n: usize) -> Vec<(Vec<u8>, i8)> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::new();
    loop {
        let mut inversions = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if cur[i] > cur[j] {
                    inversions += 1;
                }
            }
        }
        out.push((cur.clone(), if inversions.is_multiple_of(2) { 1 } else { -1 }));
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// The map-choice space: one set of admissible maps per (map level,
/// tail-from-that-level, class ordinal). The first element of the component
/// tail fixes which subset the maps are admissible for.
pub struct GammaSpace {
    base: Vec<usize>,
    comps: Vec<GammaComp>,
    total: BigUint,
}

#[derive(Clone, Copy, Debug)]
pub struct GammaComp {
    /// Level of the maps this component supplies (1-based).
    pub level: usize,
    /// Canonical position of the level's subset inside the component tail.
    pub subset_pos: usize,
}

impl GammaSpace {
    pub fn new(space: &QSpace) -> GammaSpace {
        let d = space.d();
        let mut base = Vec::with_capacity(d);
        let mut comps = Vec::new();
        let mut total = BigUint::one();
        for k in 1..=d {
            base.push(comps.len());
            let tail_len: usize = (k..=d).map(|lv| space.c_sets[lv - 1].len()).product();
            for code in 0..tail_len {
                let subset_pos = code % space.c_sets[k - 1].len();
                for _ in 0..space.lsize[k - 1] {
                    comps.push(GammaComp { level: k, subset_pos });
                    total *= BigUint::from(space.adm[k - 1][subset_pos].len());
                }
            }
        }
        GammaSpace { base, comps, total }
    }

    pub fn components(&self) -> &[GammaComp] {
        &self.comps
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn maps<'a>(&self, space: &'a QSpace, comp: usize) -> &'a [Vec<u8>] {
        let c = self.comps[comp];
        space.admissible_maps_at(c.level, c.subset_pos)
    }

    /// Component id for the map of level `k` keyed by the tail of
    /// `source_positions` starting at level `k` and the given class ordinal.
    pub fn component_id(
        &self,
        space: &QSpace,
        source_positions: &[usize],
        k: usize,
        ordinal: usize,
    ) -> usize {
        self.base[k - 1]
            + suffix_code(&space.c_sets, source_positions, k) as usize * space.lsize[k - 1]
            + (ordinal - 1)
    }
}

/// Which determinant's diagonal monomial to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagonalVariant {
    /// Monomial of the closed determinant of the format itself: levels are
    /// all the dimensions, index tuples are the path-over-initial-diagram
    /// reads.
    Closed,
    /// Monomial of the boundary-format determinant: the last dimension must
    /// equal `m_d` of the others, and the top path ordinal is appended as
    /// the final index.
    Boundary,
}

/// The product over all cut sequences of the entry picked by each sequence's
/// path over its own initial diagram.
pub fn diagonal_monomial(f: &Format, variant: DiagonalVariant, cap: u64) -> Result<Monomial, QError> {
    let dims = f.dims();
    let levels: &[usize] = match variant {
        DiagonalVariant::Closed => dims,
        DiagonalVariant::Boundary => {
            if dims.len() < 2 {
                return Err(QError::NotBoundary);
            }
            let levels = &dims[..dims.len() - 1];
            let m_d = 1 + levels.iter().map(|&n| n - 1).sum::<usize>();
            if *dims.last().unwrap() != m_d {
                return Err(QError::NotBoundary);
            }
            levels
        }
    };
    let space = QSpace::new(levels, cap)?;
    let mut factors = Vec::with_capacity(space.len());
    for i in 0..space.len() {
        let q = space.qseq(i);
        let diagram = space.initial_diagram(&q);
        let read = space.path_over_diagram(&q, &diagram);
        let mut indices: Vec<u16> = read.iter().map(|&b| b as u16).collect();
        if variant == DiagonalVariant::Boundary {
            indices.push(*space.seq_data(i).path.last().unwrap());
        }
        factors.push((EntryVar::new(indices), 1u32));
    }
    Ok(Monomial::from_pairs(factors))
}

/// Plain-text rendering of a cut sequence: rows are the level sets from the
/// top down, crosses mark cut elements, stars mark the path. Debug aid; the
/// exact format is not a stable interface.
pub fn render_qseq(space: &QSpace, q: &QSeq) -> String {
    let d = space.d();
    let path = space.path(q);
    let width = 2 * space.m()[d];
    let mut out = String::new();
    for k in (0..=d).rev() {
        let mk = space.m()[k];
        let mut row = String::new();
        row.push_str(&format!("P{k} "));
        let pad = (width - 2 * mk) / 2;
        row.push_str(&" ".repeat(pad));
        for x in 1..=mk as u16 {
            let in_cut = k >= 1 && q.subsets[k - 1].binary_search(&x).is_ok();
            let on_path = path[k] == x;
            row.push(match (in_cut, on_path) {
                (true, _) => 'x',
                (false, true) => '*',
                (false, false) => 'o',
            });
            row.push(' ');
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Rendering of a diagram over the same layout: rows show the block labels
/// assigned to each element of the level below.
pub fn render_diagram(space: &QSpace, diagram: &QDiagram) -> String {
    let d = space.d();
    let width = 2 * space.m()[d];
    let mut out = String::new();
    for k in (1..=d).rev() {
        let mk = space.m()[k - 1];
        let mut row = String::new();
        row.push_str(&format!("P{} ", k - 1));
        let pad = (width - 2 * mk) / 2;
        row.push_str(&" ".repeat(pad));
        for x in 0..mk {
            row.push_str(&format!("{} ", diagram.maps[k - 1][x]));
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(levels: &[usize]) -> QSpace {
        QSpace::new(levels, 1 << 20).unwrap()
    }

    /// The worked four-level example with unit block sizes everywhere.
    fn fig_q(_space: &QSpace) -> QSeq {
        // positions of the crossed elements, bottom level first
        let crosses: [u16; 4] = [1, 3, 2, 2];
        QSeq {
            subsets: crosses.iter().map(|&x| vec![x]).collect(),
        }
    }

    #[test]
    fn counts_match_formula() {
        for levels in [vec![4], vec![2, 2], vec![2, 3], vec![2, 2, 2], vec![3, 2]] {
            let sp = space(&levels);
            let m_d = sp.m()[sp.d()];
            let mut expect = factorial(m_d);
            for &n in &levels {
                expect /= factorial(n - 1);
            }
            assert_eq!(BigUint::from(sp.len()), expect);
            assert_eq!(QSpace::count_c(&levels), expect);
        }
        assert_eq!(space(&[2, 2]).len(), 6);
        assert_eq!(space(&[2, 2, 2]).len(), 24);
    }

    #[test]
    fn size_guard_trips() {
        assert!(matches!(
            QSpace::new(&[5, 5, 5], 10),
            Err(QError::SizeGuard { .. })
        ));
    }

    #[test]
    fn singleton_level_identification() {
        // one level of size n: each cut subset leaves one survivor, and the
        // canonical position is the survivor's ordinal minus one
        let sp = space(&[4]);
        for (pos, q) in sp.c_set(1).iter().enumerate() {
            let qs = QSeq { subsets: vec![q.clone()] };
            assert_eq!(sp.j_of(&qs) as usize, pos + 1);
        }
    }

    #[test]
    fn worked_example_path_and_read() {
        let sp = space(&[2, 2, 2, 2]);
        let q = fig_q(&sp);
        assert_eq!(sp.path(&q), vec![1, 2, 2, 3, 4]);
        assert_eq!(sp.j_of(&q), 4);
        let diagram = sp.initial_diagram(&q);
        assert_eq!(diagram.maps[0], vec![2]);
        assert_eq!(diagram.maps[1], vec![1, 1]);
        assert_eq!(diagram.maps[2], vec![1, 2, 2]);
        assert_eq!(diagram.maps[3], vec![1, 2, 2, 2]);
        assert_eq!(sp.path_over_diagram(&q, &diagram), vec![2, 1, 2, 2]);
    }

    #[test]
    fn worked_example_order_isomorphisms() {
        // the full arrow diagram of the worked sequence: each level's order
        // isomorphism into the complement of the next cut
        let sp = space(&[2, 2, 2, 2]);
        let q = fig_q(&sp);
        let isos: Vec<Vec<u16>> = (0..4)
            .map(|k| order_iso(sp.m()[k], sp.m()[k + 1], &q.subsets[k]).unwrap())
            .collect();
        assert_eq!(isos[0], vec![2]);
        assert_eq!(isos[1], vec![1, 2]);
        assert_eq!(isos[2], vec![1, 3, 4]);
        assert_eq!(isos[3], vec![1, 3, 4, 5]);
    }

    #[test]
    fn top_cuts_pin_path_to_bottom() {
        let sp = space(&[3, 2, 2]);
        // cut subsets at the top of every level leave the bottom elements
        let q = QSeq {
            subsets: (1..=3usize)
                .map(|k| {
                    let size = sp.levels()[k - 1] - 1;
                    let mk = sp.m()[k] as u16;
                    ((mk - size as u16 + 1)..=mk).collect()
                })
                .collect(),
        };
        let p = sp.path(&q);
        assert!(p.iter().all(|&x| x == 1));
        assert_eq!(sp.j_of(&q), 1);
    }

    #[test]
    fn order_iso_basics() {
        assert_eq!(order_iso(3, 3, &vec![]).unwrap(), vec![1, 2, 3]);
        assert_eq!(order_iso(2, 3, &vec![2]).unwrap(), vec![1, 3]);
        assert!(order_iso(2, 3, &vec![]).is_err());
    }

    #[test]
    fn blocks_and_empty_blocks() {
        let sp = space(&[2, 2]);
        assert_eq!(sp.blocks(2, &vec![2]), vec![vec![1], vec![3]]);
        assert_eq!(sp.blocks(2, &vec![1]), vec![vec![], vec![2, 3]]);
    }

    #[test]
    fn block_sizes_sum_to_previous_level() {
        for levels in [vec![2, 2, 2], vec![2, 3], vec![3, 2]] {
            let sp = space(&levels);
            for k in 1..=sp.d() {
                for q in sp.c_set(k) {
                    let total: usize = sp.blocks(k, q).iter().map(Vec::len).sum();
                    assert_eq!(total, sp.m()[k - 1]);
                }
            }
        }
    }

    #[test]
    fn induced_map_checks() {
        let sp = space(&[2, 2]);
        // level 2: P_1 = {1,2} into P_2 \ {2} = {1,3}
        assert_eq!(sp.induced_map(2, &[1, 3], &vec![2]).unwrap(), vec![1, 2]);
        assert!(matches!(
            sp.induced_map(2, &[1, 1], &vec![2]),
            Err(QError::NotInjective)
        ));
        assert!(matches!(
            sp.induced_map(2, &[1, 2], &vec![2]),
            Err(QError::RangeViolation)
        ));
    }

    #[test]
    fn admissible_map_counts() {
        // blocks (1,1) with one source element: two maps
        assert_eq!(admissible_maps_for(1, 2, 3, &vec![2]).len(), 2);
        // blocks (0,2): the first block is unreachable
        assert_eq!(admissible_maps_for(1, 2, 3, &vec![1]), vec![vec![2]]);
        // fiber bounds hold for every generated map
        for q in [vec![1u16], vec![2], vec![3]] {
            for g in admissible_maps_for(2, 2, 3, &q) {
                let mut counts = [0usize; 2];
                for &b in &g {
                    counts[b as usize - 1] += 1;
                }
                let sizes: Vec<usize> = {
                    let mut c = [0usize; 2];
                    for x in 1..=3u16 {
                        if q.binary_search(&x).is_err() {
                            c[q.iter().filter(|&&v| v < x).count()] += 1;
                        }
                    }
                    c.to_vec()
                };
                assert!(counts[0] <= sizes[0] && counts[1] <= sizes[1]);
            }
        }
    }

    #[test]
    fn initial_diagram_is_admissible() {
        for levels in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
            let sp = space(&levels);
            for i in 0..sp.len() {
                let q = sp.qseq(i);
                let diagram = sp.initial_diagram(&q);
                for k in 1..=sp.d() {
                    let adm = admissible_maps_for(
                        sp.m()[k - 1],
                        sp.levels()[k - 1],
                        sp.m()[k],
                        &q.subsets[k - 1],
                    );
                    assert!(adm.contains(&diagram.maps[k - 1]));
                }
            }
        }
    }

    #[test]
    fn class_cardinalities_are_uniform() {
        // |class at level k| = (m_k - 1)! / prod (n_i - 1)! for i <= k
        for levels in [vec![2, 2], vec![2, 2, 2], vec![2, 3]] {
            let sp = space(&levels);
            for k in 1..=sp.d() {
                let mut expect = factorial(sp.m()[k] - 1);
                for &n in &sp.levels()[..k] {
                    expect /= factorial(n - 1);
                }
                // check every tail and anchor
                for i in 0..sp.len() {
                    let q = sp.qseq(i);
                    for anchor in 1..=sp.m()[k] as u16 {
                        let class = sp.conj_class(k, &q.subsets[k..], anchor);
                        assert_eq!(BigUint::from(class.len()), expect);
                        // canonical order within the class
                        for w in class.windows(2) {
                            assert_eq!(qseq_cmp(&w[0], &w[1]), Ordering::Less);
                        }
                    }
                }
                assert_eq!(BigUint::from(sp.lsize(k)), expect);
            }
            assert_eq!(sp.lsize(0), 1);
            assert_eq!(sp.lsize(1), 1);
        }
    }

    #[test]
    fn ordinal_matches_class_position() {
        let sp = space(&[2, 2, 2]);
        for i in 0..sp.len() {
            let q = sp.qseq(i);
            let ls = sp.l_sequence(&q);
            for k in 1..=sp.d() {
                let anchor = sp.seq_data(i).path[k];
                let class = sp.conj_class(k, &q.subsets[k..], anchor);
                let pos = class.iter().position(|c| *c == q).unwrap();
                assert_eq!(ls[k - 1], pos + 1);
            }
        }
    }

    #[test]
    fn sigma_structure() {
        let sp = space(&[2, 2]);
        let sigma = SigmaSpace::new(&sp);
        // 3 components of degree 2 at level 1, one of degree 3 at level 2
        assert_eq!(sigma.components().len(), 4);
        assert_eq!(sigma.total(), &BigUint::from(48u32));

        // identity assignment fixes everything with sign +1
        let id = vec![0usize; sigma.components().len()];
        assert_eq!(sigma.sign(&id), 1);
        for i in 0..sp.len() {
            assert_eq!(sigma.apply(&id, &sp, i), sp.seq_data(i).positions);
        }
    }

    #[test]
    fn sigma_component_action_law() {
        // applying a full assignment equals applying only the components the
        // sequence itself selects
        let sp = space(&[2, 2, 2]);
        let sigma = SigmaSpace::new(&sp);
        let radices = sigma.radices();
        let mut assignment: Vec<usize> = radices
            .iter()
            .enumerate()
            .map(|(i, &r)| (i as u64 * 7 + 3) as usize % r as usize)
            .collect();
        assignment[0] = (radices[0] - 1) as usize;
        for i in 0..sp.len() {
            let full = sigma.apply(&assignment, &sp, i);
            let mut restricted = vec![0usize; assignment.len()];
            for k in 1..=sp.d() {
                let c = sigma.component_of(i, k);
                restricted[c] = assignment[c];
            }
            assert_eq!(sigma.apply(&restricted, &sp, i), full);
        }
    }

    #[test]
    fn singleton_level_sigma_is_symmetric_group() {
        let sp = space(&[5]);
        let sigma = SigmaSpace::new(&sp);
        assert_eq!(sigma.components().len(), 1);
        assert_eq!(sigma.total(), &factorial(5));
        let gamma = GammaSpace::new(&sp);
        assert_eq!(gamma.total(), &BigUint::one());
        // every component supplies exactly one admissible map
        for c in 0..gamma.components().len() {
            assert_eq!(gamma.maps(&sp, c).len(), 1);
        }
    }

    #[test]
    fn gamma_sizes() {
        let sp = space(&[2, 2]);
        let gamma = GammaSpace::new(&sp);
        assert_eq!(gamma.total(), &BigUint::from(2u32));
        assert_eq!(gamma.components().len(), 6 + 3);
    }

    #[test]
    fn diagonal_monomials() {
        let f = Format::new(vec![2, 2, 2]);
        let m = diagonal_monomial(&f, DiagonalVariant::Closed, 1 << 20).unwrap();
        assert_eq!(m.total_degree(), 24);
        for idx in f.indices() {
            let v = EntryVar::new(idx.clone());
            let expect = if idx == vec![1, 1, 1] || idx == vec![2, 2, 2] { 6 } else { 2 };
            assert_eq!(m.exponent_of(&v), expect, "variable {v}");
        }

        // square-matrix main diagonal
        let sq = Format::new(vec![4, 4]);
        let m = diagonal_monomial(&sq, DiagonalVariant::Boundary, 1 << 20).unwrap();
        for j in 1..=4u16 {
            assert_eq!(m.exponent_of(&EntryVar::new(vec![j, j])), 1);
        }
        assert_eq!(m.total_degree(), 4);

        // the worked five-index example: the factor for the figure's cut
        // sequence is the entry (2,1,2,2,4)
        let big = Format::new(vec![2, 2, 2, 2, 5]);
        let sp = space(&[2, 2, 2, 2]);
        let q = fig_q(&sp);
        let diagram = sp.initial_diagram(&q);
        let mut read: Vec<u16> = sp
            .path_over_diagram(&q, &diagram)
            .iter()
            .map(|&b| b as u16)
            .collect();
        read.push(sp.j_of(&q));
        assert_eq!(read, vec![2, 1, 2, 2, 4]);
        let m = diagonal_monomial(&big, DiagonalVariant::Boundary, 1 << 20).unwrap();
        assert!(m.exponent_of(&EntryVar::new(read)) >= 1);

        assert!(diagonal_monomial(&Format::new(vec![2, 2, 4]), DiagonalVariant::Boundary, 1 << 20)
            .is_err());
    }

    #[test]
    fn renderers_produce_rows() {
        let sp = space(&[2, 2, 2, 2]);
        let q = fig_q(&sp);
        let picture = render_qseq(&sp, &q);
        assert_eq!(picture.lines().count(), 5);
        assert_eq!(picture.matches('x').count(), 4);
        let diagram = sp.initial_diagram(&q);
        let digits = render_diagram(&sp, &diagram);
        assert_eq!(digits.lines().count(), 4);
    }
}
