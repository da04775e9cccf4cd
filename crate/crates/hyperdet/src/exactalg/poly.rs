//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over matrix entry variables.
//!
//! Canonical form: terms are kept sorted strictly increasing in the monomial
//! order (lexicographic on exponent vectors, variables ordered by multi-index
//! lexicographic order), no zero coefficients are stored, and the zero
//! polynomial has an empty term list. The text rendering walks terms in this
//! canonical order, so serialization is bit-reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{rat_pow, Rational};
use super::PolyError;

/// A matrix entry variable `a[i1,...,id]` with 1-based positions.
///
/// Variables compare by multi-index lexicographic order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EntryVar {
    indices: Vec<u16>,
}

impl EntryVar {
    pub fn new(indices: Vec<u16>) -> Self {
        debug_assert!(indices.iter().all(|&i| i >= 1));
        EntryVar { indices }
    }

    pub fn indices(&self) -> &[u16] {
        &self.indices
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }
}

impl fmt::Display for EntryVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a[")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for EntryVar {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let bad = || PolyError::Parse(format!("invalid variable '{s}'"));
        let body = s
            .strip_prefix("a[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let mut indices = Vec::new();
        for part in body.split(',') {
            let i: u16 = part.trim().parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            indices.push(i);
        }
        if indices.is_empty() {
            return Err(bad());
        }
        Ok(EntryVar { indices })
    }
}

/// A power product of entry variables.
///
/// Stored as an association list sorted by variable, with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(EntryVar, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: EntryVar) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds from arbitrary (variable, exponent) pairs; merges duplicates,
    /// drops zero exponents, sorts.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (EntryVar, u32)>) -> Self {
        let mut map: BTreeMap<EntryVar, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial { factors: map.into_iter().collect() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(EntryVar, u32)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Sum of exponents of the variables selected by `pred`.
    pub fn partial_degree(&self, mut pred: impl FnMut(&EntryVar) -> bool) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| pred(v))
            .map(|(_, e)| e)
            .sum()
    }

    pub fn exponent_of(&self, v: &EntryVar) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                Ordering::Less => {
                    out.push(self.factors[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.factors[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.factors[i].0.clone(), self.factors[i].1 + other.factors[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Exact monomial quotient, `None` when some exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut i = 0;
        for (v, e) in &other.factors {
            loop {
                if i >= self.factors.len() {
                    return None;
                }
                match self.factors[i].0.cmp(v) {
                    Ordering::Less => {
                        out.push(self.factors[i].clone());
                        i += 1;
                    }
                    Ordering::Equal => {
                        if self.factors[i].1 < *e {
                            return None;
                        }
                        if self.factors[i].1 > *e {
                            out.push((v.clone(), self.factors[i].1 - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        Some(Monomial { factors: out })
    }
}

/// Lexicographic order on the implied dense exponent vectors: the first
/// variable position (in variable order) where the exponents differ decides,
/// larger exponent sorts greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                // `other` has a positive exponent at a position where `self`
                // has zero, so `other` is greater at the first difference.
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(v: EntryVar) -> Self {
        Polynomial { terms: vec![(Monomial::var(v), BigInt::one())] }
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Collects a term map into canonical form, dropping zeros.
    pub fn from_term_map(map: BTreeMap<Monomial, BigInt>) -> Self {
        Polynomial {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    /// The greatest term in the monomial order.
    pub fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    /// Maximum total degree over all terms; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .first()
            .filter(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coefficient_of(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// All distinct variables, in variable order.
    pub fn variables(&self) -> Vec<EntryVar> {
        let mut set: BTreeMap<&EntryVar, ()> = BTreeMap::new();
        for (m, _) in &self.terms {
            for (v, _) in m.factors() {
                set.insert(v, ());
            }
        }
        set.into_keys().cloned().collect()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let entry = map.entry(m).or_insert_with(BigInt::zero);
                *entry += c;
            }
        }
        Polynomial::from_term_map(map)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Exact division: returns `r` with `self = q * r` over the integers.
    ///
    /// Runs leading-term division in the monomial order; any failed step
    /// means no such quotient exists.
    pub fn exact_div(&self, q: &Polynomial) -> Result<Polynomial, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (qm, qc) = q.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().expect("nonzero remainder");
            let m = rm.try_div(qm).ok_or(PolyError::NotDivisible)?;
            let (c, r) = rc.div_rem(qc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let t = Polynomial::monomial(m.clone(), c.clone());
            rem = rem.sub(&t.mul(q));
            quot.insert(m, c);
        }
        Ok(Polynomial::from_term_map(quot))
    }

    /// Exact evaluation; the assignment must cover every variable.
    pub fn eval(&self, assignment: &BTreeMap<EntryVar, Rational>) -> Result<Rational, PolyError> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = Rational::from_integer(c.clone());
            for (var, e) in m.factors() {
                let x = assignment
                    .get(var)
                    .ok_or_else(|| PolyError::MissingVariable(var.to_string()))?;
                v *= rat_pow(x, *e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Positive gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigUint {
        let mut g = BigUint::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c.magnitude());
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content, returning the primitive part and the content.
    pub fn primitive_part(&self) -> (Polynomial, BigUint) {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return (self.clone(), g);
        }
        let gi = BigInt::from(g.clone());
        let p = Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &gi)).collect(),
        };
        (p, g)
    }

    /// Substitutes each variable via `map`, renaming only.
    pub fn rename_variables(&self, map: impl Fn(&EntryVar) -> EntryVar) -> Polynomial {
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            let nm = Monomial::from_pairs(m.factors().iter().map(|(v, e)| (map(v), *e)));
            let entry = out.entry(nm).or_insert_with(BigInt::zero);
            *entry += c;
        }
        Polynomial::from_term_map(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // leading term first
        for (m, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{}{}", sign, c.magnitude())?;
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Polynomial::zero());
        }
        let bad = |what: &str| PolyError::Parse(format!("invalid polynomial near '{what}'"));
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                _ => return Err(bad(&s[pos..])),
            };
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let body = &s[start..pos];
            let mut parts = body.split('*');
            let mag = parts.next().ok_or_else(|| bad(body))?;
            let mut coeff: BigInt = mag.trim().parse().map_err(|_| bad(mag))?;
            if coeff.is_negative() {
                return Err(bad(mag));
            }
            coeff *= sign;
            let mut factors = Vec::new();
            for part in parts {
                let part = part.trim();
                let (vs, e) = match part.split_once('^') {
                    None => (part, 1u32),
                    Some((v, e)) => (v, e.trim().parse().map_err(|_| bad(part))?),
                };
                if e == 0 {
                    return Err(bad(part));
                }
                factors.push((vs.parse::<EntryVar>()?, e));
            }
            let m = Monomial::from_pairs(factors);
            let entry = terms.entry(m).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        Ok(Polynomial::from_term_map(terms))
    }
}

/// Interchange form: variables listed once in canonical order, terms refer to
/// them by index.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolynomialJson {
    pub vars: Vec<Vec<u16>>,
    pub terms: Vec<PolyTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PolyTermJson {
    pub coeff: String,
    pub exps: Vec<(usize, u32)>,
}

impl Polynomial {
    pub fn to_json(&self) -> PolynomialJson {
        let vars = self.variables();
        let index: BTreeMap<&EntryVar, usize> =
            vars.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let terms = self
            .terms
            .iter()
            .rev() // leading term first, matching the text rendering
            .map(|(m, c)| PolyTermJson {
                coeff: c.to_string(),
                exps: m.factors().iter().map(|(v, e)| (index[v], *e)).collect(),
            })
            .collect();
        PolynomialJson {
            vars: vars.into_iter().map(|v| v.indices().to_vec()).collect(),
            terms,
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Polynomial, PolyError> {
        let vars: Vec<EntryVar> = json.vars.iter().map(|v| EntryVar::new(v.clone())).collect();
        let mut map: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for t in &json.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| PolyError::Parse(format!("invalid coefficient '{}'", t.coeff)))?;
            let mut factors = Vec::new();
            for &(vi, e) in &t.exps {
                let v = vars
                    .get(vi)
                    .ok_or_else(|| PolyError::Parse(format!("variable index {vi} out of range")))?;
                factors.push((v.clone(), e));
            }
            let entry = map.entry(Monomial::from_pairs(factors)).or_insert_with(BigInt::zero);
            *entry += c;
        }
        Ok(Polynomial::from_term_map(map))
    }
}
