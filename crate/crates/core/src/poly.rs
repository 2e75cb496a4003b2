//! Sparse exact polynomial arithmetic in `x_1..x_n`, `q_1..q_{n-1}` over
//! arbitrary-precision integers.
//!
//! A polynomial carries its rank `n`; all monomials store a full exponent
//! vector for the `n` position variables and the `n-1` quantum variables.
//! Canonical form: no zero coefficients, monomials deduplicated by the map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::GradingConfig;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("no substitution image for variable {0}")]
    MissingImage(Var),
    #[error("exact division failed: nonzero remainder")]
    InexactDivision,
    #[error("divisor is not monic and linear in the requested variable")]
    BadDivisor,
    #[error("variable index {0} out of range for rank {1}")]
    VarOutOfRange(usize, usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A variable of the rank-`n` polynomial ring: `X(i)` for `x_i`
/// (`1 <= i <= n`) or `Q(j)` for `q_j` (`1 <= j <= n-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Q(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Q(j) => write!(f, "q{j}"),
        }
    }
}

/// Exponent data of one term: `xexp[i-1]` is the exponent of `x_i`,
/// `qexp[j-1]` that of `q_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub xexp: Vec<u32>,
    pub qexp: Vec<u32>,
}

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial {
            xexp: vec![0; n],
            qexp: vec![0; n.saturating_sub(1)],
        }
    }

    pub fn total_exponent(&self) -> u32 {
        self.xexp.iter().sum::<u32>() + self.qexp.iter().sum::<u32>()
    }

    /// Graded degree under a grading: `x`-exponents count 1 each,
    /// `q_j`-exponents count `deg q_j`.
    pub fn degree(&self, grading: &GradingConfig) -> usize {
        let x: usize = self.xexp.iter().map(|&e| e as usize).sum();
        let q: usize = self
            .qexp
            .iter()
            .enumerate()
            .map(|(idx, &e)| e as usize * grading.q_degree(idx + 1))
            .sum();
        x + q
    }

    pub fn x_degree(&self) -> u32 {
        self.xexp.iter().sum()
    }

    pub fn q_degree_vector(&self) -> &[u32] {
        &self.qexp
    }

    pub fn is_unit(&self) -> bool {
        self.xexp.iter().all(|&e| e == 0) && self.qexp.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            xexp: self
                .xexp
                .iter()
                .zip(&other.xexp)
                .map(|(a, b)| a + b)
                .collect(),
            qexp: self
                .qexp
                .iter()
                .zip(&other.qexp)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

// Graded lexicographic order with x_1 > ... > x_n > q_1 > ... > q_{n-1}:
// compare total exponent, then exponent vectors. Used for canonical display
// and deterministic iteration; it carries no semantic weight.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_exponent()
            .cmp(&other.total_exponent())
            .then_with(|| self.xexp.cmp(&other.xexp))
            .then_with(|| self.qexp.cmp(&other.qexp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with `BigInt` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, BigInt::one())
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(n), c);
        }
        Polynomial { n, terms }
    }

    /// The variable `x_i`, `1 <= i <= n`.
    pub fn x(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "x{i} out of range for rank {n}");
        let mut m = Monomial::unit(n);
        m.xexp[i - 1] = 1;
        Polynomial::from_term(n, m, BigInt::one())
    }

    /// The variable `q_j`, `1 <= j <= n-1`.
    pub fn q(n: usize, j: usize) -> Self {
        assert!(j >= 1 && j < n, "q{j} out of range for rank {n}");
        let mut m = Monomial::unit(n);
        m.qexp[j - 1] = 1;
        Polynomial::from_term(n, m, BigInt::one())
    }

    pub fn var(n: usize, v: Var) -> Self {
        match v {
            Var::X(i) => Polynomial::x(n, i),
            Var::Q(j) => Polynomial::q(n, j),
        }
    }

    pub fn from_term(n: usize, m: Monomial, c: BigInt) -> Self {
        assert_eq!(m.xexp.len(), n);
        assert_eq!(m.qexp.len(), n - 1);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    /// Monomial `q^d` for a curve degree `d`.
    pub fn q_monomial(n: usize, d: &crate::perm::CurveDegree) -> Self {
        assert_eq!(d.rank(), n);
        let m = Monomial {
            xexp: vec![0; n],
            qexp: d.entries().to_vec(),
        };
        Polynomial::from_term(n, m, BigInt::one())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Ring-homomorphic substitution: every variable occurring in `self` must
    /// have an image of the same rank.
    pub fn substitute(&self, images: &BTreeMap<Var, Polynomial>) -> Result<Polynomial, PolyError> {
        for p in images.values() {
            if p.rank() != self.n {
                return Err(PolyError::RankMismatch(self.n, p.rank()));
            }
        }
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.n, c.clone());
            for i in 1..=self.n {
                let e = m.xexp[i - 1];
                if e > 0 {
                    let img = images
                        .get(&Var::X(i))
                        .ok_or(PolyError::MissingImage(Var::X(i)))?;
                    term = &term * &img.pow(e);
                }
            }
            for j in 1..self.n {
                let e = m.qexp[j - 1];
                if e > 0 {
                    let img = images
                        .get(&Var::Q(j))
                        .ok_or(PolyError::MissingImage(Var::Q(j)))?;
                    term = &term * &img.pow(e);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// The identity substitution map on all variables of rank `n`; override
    /// entries to build ring endomorphisms.
    pub fn identity_images(n: usize) -> BTreeMap<Var, Polynomial> {
        let mut map = BTreeMap::new();
        for i in 1..=n {
            map.insert(Var::X(i), Polynomial::x(n, i));
        }
        for j in 1..n {
            map.insert(Var::Q(j), Polynomial::q(n, j));
        }
        map
    }

    /// Set every quantum variable to zero.
    pub fn specialize_q_zero(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            if m.qexp.iter().all(|&e| e == 0) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// True when no quantum variable occurs.
    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(|m| m.qexp.iter().all(|&e| e == 0))
    }

    /// Common graded degree of all terms, or `None` if they disagree
    /// (zero counts as homogeneous of any degree and reports `Some(0)`).
    pub fn is_homogeneous(&self, grading: &GradingConfig) -> Option<usize> {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Some(0);
        };
        let d = first.degree(grading);
        for m in iter {
            if m.degree(grading) != d {
                return None;
            }
        }
        Some(d)
    }

    /// Split into graded components, keyed by degree.
    pub fn homogeneous_components(&self, grading: &GradingConfig) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree(grading))
                .or_insert_with(|| Polynomial::zero(self.n))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Exact division by `x_i - s`, where `s` must not involve `x_i`.
    /// Fails with `InexactDivision` if the remainder is nonzero.
    pub fn div_exact_by_x_minus(&self, i: usize, s: &Polynomial) -> Result<Polynomial, PolyError> {
        if i == 0 || i > self.n {
            return Err(PolyError::VarOutOfRange(i, self.n));
        }
        if s.rank() != self.n {
            return Err(PolyError::RankMismatch(self.n, s.rank()));
        }
        if s.terms.keys().any(|m| m.xexp[i - 1] > 0) {
            return Err(PolyError::BadDivisor);
        }
        // Collect coefficients A_k of x_i^k (with x_i stripped).
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.xexp[i - 1];
            let mut stripped = m.clone();
            stripped.xexp[i - 1] = 0;
            by_power
                .entry(k)
                .or_insert_with(|| Polynomial::zero(self.n))
                .insert_term(stripped, c.clone());
        }
        let top = by_power.keys().next_back().copied().unwrap_or(0);
        // Synthetic division: B_{k-1} = A_k + s * B_k, remainder A_0 + s * B_0.
        let mut quotient = Polynomial::zero(self.n);
        let mut carry = Polynomial::zero(self.n);
        for k in (1..=top).rev() {
            let a_k = by_power
                .remove(&k)
                .unwrap_or_else(|| Polynomial::zero(self.n));
            let b = &a_k + &(s * &carry);
            let mut xpow = Monomial::unit(self.n);
            xpow.xexp[i - 1] = k - 1;
            quotient = &quotient + &(&b * &Polynomial::from_term(self.n, xpow, BigInt::one()));
            carry = b;
        }
        let a_0 = by_power
            .remove(&0)
            .unwrap_or_else(|| Polynomial::zero(self.n));
        let remainder = &a_0 + &(s * &carry);
        if !remainder.is_zero() {
            return Err(PolyError::InexactDivision);
        }
        Ok(quotient)
    }

    /// Largest monomial (canonical order) and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Serialize to the JSON term list
    /// `[{"c": "3", "x": [2,0,0], "q": [0,1]}, ...]`
    /// with coefficients as decimal strings.
    pub fn to_json_terms(&self) -> serde_json::Value {
        let list: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                serde_json::json!({
                    "c": c.to_string(),
                    "x": m.xexp,
                    "q": m.qexp,
                })
            })
            .collect();
        serde_json::Value::Array(list)
    }

    pub fn from_json_terms(n: usize, value: &serde_json::Value) -> Result<Polynomial, PolyError> {
        let arr = value
            .as_array()
            .ok_or_else(|| PolyError::Parse("expected a JSON array of terms".into()))?;
        let mut out = Polynomial::zero(n);
        for item in arr {
            let c_str = item
                .get("c")
                .and_then(|v| v.as_str())
                .ok_or_else(|| PolyError::Parse("term missing string field \"c\"".into()))?;
            let c: BigInt = c_str
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient {c_str:?}")))?;
            let parse_exps = |key: &str, expect: usize| -> Result<Vec<u32>, PolyError> {
                let v = item
                    .get(key)
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| PolyError::Parse(format!("term missing array field {key:?}")))?;
                if v.len() != expect {
                    return Err(PolyError::Parse(format!(
                        "field {key:?} has length {} (expected {expect})",
                        v.len()
                    )));
                }
                v.iter()
                    .map(|e| {
                        e.as_u64()
                            .map(|x| x as u32)
                            .ok_or_else(|| PolyError::Parse("bad exponent".into()))
                    })
                    .collect()
            };
            let m = Monomial {
                xexp: parse_exps("x", n)?,
                qexp: parse_exps("q", n - 1)?,
            };
            out.insert_term(m, c);
        }
        Ok(out)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial rank mismatch in +");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial rank mismatch in -");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n, "polynomial rank mismatch in *");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form, e.g. `3*x1^2*q2 - q1*q2 + 5`; terms in descending
    /// canonical monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(abs.to_string());
            }
            for (idx, &e) in m.xexp.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("x{}", idx + 1));
                } else if e > 1 {
                    factors.push(format!("x{}^{}", idx + 1, e));
                }
            }
            for (idx, &e) in m.qexp.iter().enumerate() {
                if e == 1 {
                    factors.push(format!("q{}", idx + 1));
                } else if e > 1 {
                    factors.push(format!("q{}^{}", idx + 1, e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
