//! Quotient-ring presentations of the quantum cohomology of the flag variety
//! and of its smooth Schubert divisor, with exact reduction of polynomials to
//! the quantum-Schubert-class basis.
//!
//! Reduction strategy, per graded degree of the input: the classical ideal
//! slice (q = 0) is row-reduced once per x-degree; a monomial whose x-part is
//! a classical pivot is rewritten through the corresponding quantum generator
//! combination, which replaces it by residue monomials plus terms of strictly
//! higher q-degree and lower x-degree. Iterating yields a normal form in the
//! free module spanned by residue coordinates, where matching against the
//! normal forms of `q^d * S^q_w` is a small exact square solve. All
//! arithmetic is rational with integrality asserted on the output.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{coef_int, Coef, Echelon, Indexer, SparseVec};
use crate::matrix::NamedPolys;
use crate::perm::{CurveDegree, GradingConfig, PermError, Permutation, Space};
use crate::poly::{Monomial, PolyError, Polynomial, Var};
use crate::schubert::{classical_schubert_all, quantum_schubert_all};

#[derive(Debug, Error)]
pub enum RingError {
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("no Schubert-basis expansion exists modulo the ideal ({0})")]
    NoSolution(String),
    #[error("non-integral basis coefficient {0}")]
    NonIntegral(String),
    #[error("dependent basis column for pair ({0}, {1})")]
    DependentBasis(Permutation, CurveDegree),
    #[error("permutation {0} is not a class of the chosen space")]
    NotAClass(Permutation),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A finite integer combination of basis classes `q^d * gamma^w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertExpansion {
    space: Space,
    n: usize,
    terms: BTreeMap<(Permutation, CurveDegree), BigInt>,
}

impl SchubertExpansion {
    pub fn zero(space: Space, n: usize) -> Self {
        SchubertExpansion {
            space,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(space: Space, n: usize, w: Permutation) -> Self {
        let mut e = SchubertExpansion::zero(space, n);
        e.add_term(w, CurveDegree::zero(n), BigInt::one());
        e
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Permutation, CurveDegree), &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Permutation, d: &CurveDegree) -> BigInt {
        self.terms
            .get(&(w.clone(), d.clone()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, w: Permutation, d: CurveDegree, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, d)) {
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

    pub fn add(&mut self, other: &SchubertExpansion) {
        assert_eq!(self.space, other.space);
        assert_eq!(self.n, other.n);
        for ((w, d), c) in &other.terms {
            self.add_term(w.clone(), d.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &SchubertExpansion) {
        assert_eq!(self.space, other.space);
        assert_eq!(self.n, other.n);
        for ((w, d), c) in &other.terms {
            self.add_term(w.clone(), d.clone(), -c.clone());
        }
    }

    pub fn scale(&mut self, c: &BigInt) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// Multiply every term by `q^shift`.
    pub fn mul_q(&self, shift: &CurveDegree) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero(self.space, self.n);
        for ((w, d), c) in &self.terms {
            out.add_term(w.clone(), d.add(shift), c.clone());
        }
        out
    }

    /// `q = 0` part: the terms with zero curve degree.
    pub fn classical_part(&self) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero(self.space, self.n);
        for ((w, d), c) in &self.terms {
            if d.is_zero() {
                out.add_term(w.clone(), d.clone(), c.clone());
            }
        }
        out
    }

    /// Common graded degree `ℓ(w) + deg q^d` of all terms, if they agree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let grading = GradingConfig::new(self.space, self.n);
        let mut degree = None;
        for (w, d) in self.terms.keys() {
            let t = w.length() + grading.q_monomial_degree(d);
            match degree {
                None => degree = Some(t),
                Some(prev) if prev != t => return None,
                _ => {}
            }
        }
        degree
    }

    /// Polynomial representative `sum c * q^d * S_w` under a table of
    /// Schubert polynomials.
    pub fn to_polynomial(&self, schubert: &BTreeMap<Permutation, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for ((w, d), c) in &self.terms {
            let base = schubert.get(w).expect("class has a Schubert polynomial");
            out = &out + &(&Polynomial::q_monomial(self.n, d) * base).scale(c);
        }
        out
    }

    fn display_order(&self) -> Vec<(&(Permutation, CurveDegree), &BigInt)> {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by_key(|((w, d), _)| (d.total(), d.entries().to_vec(), w.one_line().to_vec()));
        items
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .display_order()
            .into_iter()
            .map(|((w, d), c)| {
                let coef = match i64::try_from(c.clone()) {
                    Ok(v) => serde_json::json!(v),
                    Err(_) => serde_json::json!(c.to_string()),
                };
                serde_json::json!({
                    "w": w.one_line(),
                    "d": d.entries(),
                    "c": coef,
                })
            })
            .collect();
        serde_json::json!({
            "space": self.space.to_string(),
            "n": self.n,
            "terms": terms,
        })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SchubertExpansion, RingError> {
        let bad = |msg: &str| RingError::Unsupported(format!("bad expansion JSON: {msg}"));
        let space = value
            .get("space")
            .and_then(|v| v.as_str())
            .and_then(Space::parse)
            .ok_or_else(|| bad("missing space"))?;
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| bad("missing n"))? as usize;
        let mut out = SchubertExpansion::zero(space, n);
        let terms = value
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| bad("missing terms"))?;
        for t in terms {
            let w: Vec<usize> = t
                .get("w")
                .and_then(|v| v.as_array())
                .ok_or_else(|| bad("missing w"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad w entry"))?;
            let d: Vec<u32> = t
                .get("d")
                .and_then(|v| v.as_array())
                .ok_or_else(|| bad("missing d"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad d entry"))?;
            let c: BigInt = match t.get("c") {
                Some(serde_json::Value::Number(num)) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("bad numeric coefficient"))?,
                Some(serde_json::Value::String(s)) => {
                    s.parse().map_err(|_| bad("bad string coefficient"))?
                }
                _ => return Err(bad("missing c")),
            };
            out.add_term(Permutation::new(w)?, CurveDegree::new(d), c);
        }
        Ok(out)
    }
}

impl fmt::Display for SchubertExpansion {
    /// Text form such as `S[3,1,2] + q1` or `S[1,4,3,2] + q2*q3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((w, d), c) in self.display_order() {
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
            if !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (idx, &e) in d.entries().iter().enumerate() {
                if e == 1 {
                    factors.push(format!("q{}", idx + 1));
                } else if e > 1 {
                    factors.push(format!("q{}^{}", idx + 1, e));
                }
            }
            if d.is_zero() || !w.is_identity() {
                let entries: Vec<String> = w.one_line().iter().map(|x| x.to_string()).collect();
                factors.push(format!("S[{}]", entries.join(",")));
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

type RatCombo = BTreeMap<Monomial, Coef>;

fn combo_insert(acc: &mut RatCombo, key: Monomial, value: Coef) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn combo_add_scaled(acc: &mut RatCombo, other: &RatCombo, factor: &Coef, qshift: Option<&[u32]>) {
    if factor.is_zero() {
        return;
    }
    for (m, c) in other {
        let key = match qshift {
            None => m.clone(),
            Some(shift) => {
                let mut k = m.clone();
                for (slot, &e) in k.qexp.iter_mut().zip(shift) {
                    *slot += e;
                }
                k
            }
        };
        combo_insert(acc, key, factor * c);
    }
}

/// Polynomial with rational coefficients; used for ideal-membership
/// certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    n: usize,
    terms: RatCombo,
}

impl RationalPolynomial {
    pub fn zero(n: usize) -> Self {
        RationalPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            terms.insert(m.clone(), coef_int(c.clone()));
        }
        RationalPolynomial { n: p.rank(), terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Coef) {
        combo_insert(&mut self.terms, m, c);
    }

    /// `self += factor * m * p` for an integer polynomial `p`.
    pub fn add_scaled_product(&mut self, factor: &Coef, m: &Monomial, p: &Polynomial) {
        for (pm, pc) in p.terms() {
            let mut key = pm.clone();
            for (slot, &e) in key.xexp.iter_mut().zip(&m.xexp) {
                *slot += e;
            }
            for (slot, &e) in key.qexp.iter_mut().zip(&m.qexp) {
                *slot += e;
            }
            self.add_term(key, factor * coef_int(pc.clone()));
        }
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = Polynomial::from_term(self.n, m.clone(), BigInt::one());
                format!("({c})*{}", mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Certificate that a polynomial lies in the generator ideal:
/// `p = sum multipliers[k] * generators[k]`.
#[derive(Debug, Clone)]
pub struct IdealCertificate {
    pub multipliers: Vec<RationalPolynomial>,
}

impl IdealCertificate {
    /// Exact replay of the decomposition.
    pub fn verify(&self, generators: &[Polynomial], p: &Polynomial) -> bool {
        let mut acc = RationalPolynomial::from_polynomial(p);
        for (mult, g) in self.multipliers.iter().zip(generators) {
            let terms: Vec<(Monomial, Coef)> = mult
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            for (m, c) in terms {
                acc.add_scaled_product(&(-c), &m, g);
            }
        }
        acc.is_zero()
    }
}

struct ClassicalSlice {
    rows: Indexer<Vec<u32>>,
    ech: Echelon,
    /// original column id -> (generator index, multiplier x-monomial)
    col_meta: Vec<(usize, Monomial)>,
    monomial_count: usize,
}

struct Matcher {
    pairs: Vec<(Permutation, CurveDegree)>,
    rows: Indexer<Monomial>,
    ech: Echelon,
}

#[derive(Default)]
struct Caches {
    classical: HashMap<usize, ClassicalSlice>,
    nf_memo: HashMap<Vec<u32>, RatCombo>,
    matchers: HashMap<usize, Matcher>,
}

/// A quotient-ring presentation of (quantum) cohomology: generators, grading,
/// and the Schubert-polynomial representatives of the additive basis.
pub struct Presentation {
    space: Space,
    n: usize,
    quantum: bool,
    generators: Vec<Polynomial>,
    classical_generators: Vec<Polynomial>,
    generator_diffs: Vec<Polynomial>,
    grading: GradingConfig,
    basis_perms: Vec<Permutation>,
    schubert: BTreeMap<Permutation, Polynomial>,
    caches: Mutex<Caches>,
}

impl Presentation {
    /// Quantum presentation: for the flag variety the generators are
    /// `E^n_1, ..., E^n_n`; for the divisor `Ehat^n_1, ..., Ehat^n_{n-1},
    /// E^{n-1}_{n-1}`, with basis classes `w(n) != 1`.
    pub fn quantum(space: Space, n: usize) -> Result<Presentation, RingError> {
        Presentation::new(space, n, true)
    }

    /// Classical limit: the same presentation with `q = 0` generators and
    /// classical Schubert polynomials.
    pub fn classical(space: Space, n: usize) -> Result<Presentation, RingError> {
        Presentation::new(space, n, false)
    }

    fn new(space: Space, n: usize, quantum: bool) -> Result<Presentation, RingError> {
        let min = match space {
            Space::FlagVariety => 2,
            Space::SchubertDivisorX => 3,
        };
        if n < min {
            return Err(RingError::Unsupported(format!(
                "space {space} needs rank >= {min}, got {n}"
            )));
        }
        let named = NamedPolys::new(n);
        let quantum_generators: Vec<Polynomial> = match space {
            Space::FlagVariety => (1..=n).map(|i| named.big_e(n, i).clone()).collect(),
            Space::SchubertDivisorX => {
                let mut g: Vec<Polynomial> = (1..n).map(|i| named.ehat(i).clone()).collect();
                g.push(named.big_e(n - 1, n - 1).clone());
                g
            }
        };
        let classical_generators: Vec<Polynomial> = quantum_generators
            .iter()
            .map(|g| g.specialize_q_zero())
            .collect();
        let generators = if quantum {
            quantum_generators
        } else {
            classical_generators.clone()
        };
        let generator_diffs = generators
            .iter()
            .zip(&classical_generators)
            .map(|(g, gc)| g - gc)
            .collect();
        let grading = GradingConfig::new(space, n);
        for g in &generators {
            assert!(
                g.is_homogeneous(&grading).is_some(),
                "presentation generators must be homogeneous"
            );
        }
        let basis_perms: Vec<Permutation> = Permutation::all(n)
            .into_iter()
            .filter(|w| space == Space::FlagVariety || w.in_x())
            .collect();
        let schubert = if quantum {
            quantum_schubert_all(n)
        } else {
            classical_schubert_all(n)
        };
        Ok(Presentation {
            space,
            n,
            quantum,
            generators,
            classical_generators,
            generator_diffs,
            grading,
            basis_perms,
            schubert,
            caches: Mutex::new(Caches::default()),
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_quantum(&self) -> bool {
        self.quantum
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn grading(&self) -> &GradingConfig {
        &self.grading
    }

    pub fn basis_perms(&self) -> &[Permutation] {
        &self.basis_perms
    }

    /// The Schubert polynomial representing the class of `w` in this
    /// presentation.
    pub fn schubert_polynomial(&self, w: &Permutation) -> Option<&Polynomial> {
        self.schubert.get(w)
    }

    pub fn expansion_polynomial(&self, e: &SchubertExpansion) -> Polynomial {
        e.to_polynomial(&self.schubert)
    }

    /// Express `[p]` in the basis `{[q^d S_w]}`: the unique integer
    /// coefficients with `p - sum c_{w,d} q^d S_w` in the generator ideal.
    /// Inhomogeneous inputs are reduced componentwise.
    pub fn reduce(&self, p: &Polynomial) -> Result<SchubertExpansion, RingError> {
        if p.rank() != self.n {
            return Err(RingError::Poly(PolyError::RankMismatch(p.rank(), self.n)));
        }
        let mut caches = self.caches.lock().unwrap();
        let mut out = SchubertExpansion::zero(self.space, self.n);
        for (degree, component) in p.homogeneous_components(&self.grading) {
            if component.is_zero() {
                continue;
            }
            self.ensure_matcher(&mut caches, degree)?;
            let nf = self.normal_form(&mut caches, &component);
            let matcher = caches.matchers.get(&degree).unwrap();
            let mut vec = SparseVec::new();
            for (m, c) in &nf {
                match matcher.rows.get(m) {
                    Some(row) => vec.add(row, c.clone()),
                    None => {
                        return Err(RingError::NoSolution(format!(
                            "residue coordinate {} not spanned at degree {degree}",
                            Polynomial::from_term(self.n, m.clone(), BigInt::one())
                        )))
                    }
                }
            }
            let (coeffs, rem) = matcher.ech.reduce(vec);
            if !rem.is_zero() {
                return Err(RingError::NoSolution(format!(
                    "nonzero residual of {} coordinates at degree {degree}",
                    rem.len()
                )));
            }
            for (pair_idx, c) in coeffs {
                if !c.is_integer() {
                    return Err(RingError::NonIntegral(c.to_string()));
                }
                let c = c.to_integer();
                if c.is_zero() {
                    continue;
                }
                let (w, d) = &matcher.pairs[pair_idx];
                out.add_term(w.clone(), d.clone(), c);
            }
        }
        Ok(out)
    }

    /// Ideal membership: true iff the Schubert expansion of `p` is empty.
    pub fn ideal_member(&self, p: &Polynomial) -> Result<bool, RingError> {
        Ok(self.reduce(p)?.is_empty())
    }

    /// Ideal membership with an explicit multiplier decomposition
    /// (`Some(certificate)` iff member). The certificate replays exactly:
    /// `p = sum multipliers[k] * generators[k]`.
    pub fn ideal_member_with_certificate(
        &self,
        p: &Polynomial,
    ) -> Result<Option<IdealCertificate>, RingError> {
        if p.rank() != self.n {
            return Err(RingError::Poly(PolyError::RankMismatch(p.rank(), self.n)));
        }
        let mut caches = self.caches.lock().unwrap();
        let mut remaining = RationalPolynomial::from_polynomial(p);
        let mut multipliers = vec![RationalPolynomial::zero(self.n); self.generators.len()];
        loop {
            // pick the reducible term of largest x-degree, then largest monomial
            let mut chosen: Option<(Monomial, Coef, usize, usize)> = None;
            for (m, c) in remaining.terms.iter().rev() {
                let dx: usize = m.xexp.iter().sum::<u32>() as usize;
                self.ensure_classical_slice(&mut caches, dx);
                let slice = caches.classical.get(&dx).unwrap();
                let Some(col) = slice
                    .rows
                    .get(&m.xexp)
                    .and_then(|row| slice.ech.pivot_column(row))
                else {
                    continue;
                };
                let key_deg = m.x_degree() as usize;
                if chosen
                    .as_ref()
                    .is_none_or(|(cm, _, _, _)| key_deg > cm.x_degree() as usize)
                {
                    chosen = Some((m.clone(), c.clone(), dx, col));
                }
            }
            let Some((m, c, dx, col)) = chosen else {
                break;
            };
            let slice = caches.classical.get(&dx).unwrap();
            let pivot_row = slice.ech.column_pivot(col);
            let pivot_val = slice.ech.column_vector(col).get(pivot_row).unwrap().clone();
            let factor = &c / &pivot_val;
            let expr: Vec<(usize, Monomial, Coef)> = slice
                .ech
                .column_expr(col)
                .map(|(orig, lam)| {
                    let (gi, mult) = &slice.col_meta[orig];
                    (*gi, mult.clone(), lam.clone())
                })
                .collect();
            // remaining -= factor * q^e * (sum lam * mult * g_q)
            let qshift = m.qexp.clone();
            for (gi, mult, lam) in expr {
                let coef = -(&factor * &lam);
                let mut shifted_mult = mult.clone();
                for (slot, &e) in shifted_mult.qexp.iter_mut().zip(&qshift) {
                    *slot += e;
                }
                remaining.add_scaled_product(&coef, &shifted_mult, &self.generators[gi]);
                // record the multiplier with the opposite sign (we subtracted)
                multipliers[gi].add_term(shifted_mult, &factor * &lam);
            }
        }
        if remaining.is_zero() {
            let cert = IdealCertificate { multipliers };
            debug_assert!(cert.verify(&self.generators, p));
            Ok(Some(cert))
        } else {
            Ok(None)
        }
    }

    /// Dimension of the degree-`d` component of the quotient, counted through
    /// the residue coordinates. Matches the number of basis pairs when the
    /// presentation is consistent.
    pub fn quotient_dimension(&self, degree: usize) -> usize {
        let mut caches = self.caches.lock().unwrap();
        let mut dim = 0;
        for qexp in self.q_exponents_up_to(degree) {
            let qdeg: usize = qexp
                .iter()
                .enumerate()
                .map(|(idx, &e)| e as usize * self.grading.q_degree(idx + 1))
                .sum();
            if qdeg > degree {
                continue;
            }
            let dx = degree - qdeg;
            self.ensure_classical_slice(&mut caches, dx);
            let slice = caches.classical.get(&dx).unwrap();
            dim += slice.monomial_count - slice.ech.rank();
        }
        dim
    }

    pub fn basis_pairs(&self, degree: usize) -> Vec<(Permutation, CurveDegree)> {
        let mut out = Vec::new();
        for w in &self.basis_perms {
            let lw = w.length();
            if lw > degree {
                continue;
            }
            let rem = degree - lw;
            if self.quantum {
                for d in degree_vectors_with_weight(self.n, &self.grading, rem) {
                    out.push((w.clone(), d));
                }
            } else if rem == 0 {
                out.push((w.clone(), CurveDegree::zero(self.n)));
            }
        }
        out
    }

    fn q_exponents_up_to(&self, degree: usize) -> Vec<Vec<u32>> {
        if !self.quantum {
            return vec![vec![0; self.n - 1]];
        }
        let mut out: Vec<Vec<u32>> = vec![vec![]];
        for j in 1..self.n {
            let w = self.grading.q_degree(j);
            let mut next = Vec::new();
            for prefix in &out {
                let used: usize = prefix
                    .iter()
                    .enumerate()
                    .map(|(idx, &e)| e as usize * self.grading.q_degree(idx + 1))
                    .sum();
                let mut e = 0u32;
                while used + (e as usize) * w <= degree {
                    let mut p = prefix.clone();
                    p.push(e);
                    next.push(p);
                    e += 1;
                }
            }
            out = next;
        }
        out
    }

    fn ensure_classical_slice(&self, caches: &mut Caches, dx: usize) {
        if caches.classical.contains_key(&dx) {
            return;
        }
        let mut rows = Indexer::new();
        let mut ech = Echelon::new(true);
        let mut col_meta = Vec::new();
        for (gi, gcl) in self.classical_generators.iter().enumerate() {
            let gdeg = gcl
                .leading_term()
                .map(|(m, _)| m.x_degree() as usize)
                .unwrap_or(0);
            if gdeg > dx {
                continue;
            }
            for mexp in enumerate_x_monomials(self.n, dx - gdeg) {
                let mono = Monomial {
                    xexp: mexp,
                    qexp: vec![0; self.n - 1],
                };
                let shifted = gcl_shift(gcl, &mono);
                let vec = SparseVec::from_entries(
                    shifted
                        .terms()
                        .map(|(m, c)| (rows.intern(m.xexp.clone()), coef_int(c.clone()))),
                );
                let id = col_meta.len();
                col_meta.push((gi, mono));
                // dependent multiples are simply skipped
                let _ = ech.insert(id, vec);
            }
        }
        caches.classical.insert(
            dx,
            ClassicalSlice {
                rows,
                ech,
                col_meta,
                monomial_count: count_x_monomials(self.n, dx),
            },
        );
    }

    /// Normal form of the x-monomial `x^a` in the free module of residue
    /// coordinates, memoized. Pivot monomials are rewritten through the
    /// quantum generators; the recursion descends in x-degree.
    fn normal_form_x(&self, caches: &mut Caches, xexp: &Vec<u32>) -> RatCombo {
        if let Some(hit) = caches.nf_memo.get(xexp) {
            return hit.clone();
        }
        let dx: usize = xexp.iter().sum::<u32>() as usize;
        self.ensure_classical_slice(caches, dx);
        let pivot_data = {
            let slice = caches.classical.get(&dx).unwrap();
            match slice
                .rows
                .get(xexp)
                .and_then(|row| slice.ech.pivot_column(row))
            {
                None => None,
                Some(col) => {
                    let pivot_row = slice.ech.column_pivot(col);
                    let vec = slice.ech.column_vector(col);
                    let pivot_val = vec.get(pivot_row).unwrap().clone();
                    let classical: Vec<(Vec<u32>, Coef)> = vec
                        .iter()
                        .filter(|&(r, _)| r != pivot_row)
                        .map(|(r, c)| (slice.rows.key(r).clone(), c.clone()))
                        .collect();
                    let expr: Vec<(usize, Monomial, Coef)> = slice
                        .ech
                        .column_expr(col)
                        .map(|(orig, lam)| {
                            let (gi, mult) = &slice.col_meta[orig];
                            (*gi, mult.clone(), lam.clone())
                        })
                        .collect();
                    Some((pivot_val, classical, expr))
                }
            }
        };
        let combo = match pivot_data {
            None => {
                let m = Monomial {
                    xexp: xexp.clone(),
                    qexp: vec![0; self.n - 1],
                };
                BTreeMap::from([(m, BigRational::one())])
            }
            Some((pivot_val, classical, expr)) => {
                let mut acc = RatCombo::new();
                for (rexp, coef) in classical {
                    let sub = self.normal_form_x(caches, &rexp);
                    combo_add_scaled(&mut acc, &sub, &(-(coef / &pivot_val)), None);
                }
                for (gi, mult, lam) in expr {
                    let diff = &self.generator_diffs[gi];
                    if diff.is_zero() {
                        continue;
                    }
                    let shifted = gcl_shift(diff, &mult);
                    for (mono, gamma) in shifted.terms() {
                        let sub = self.normal_form_x(caches, &mono.xexp);
                        let factor = -(&lam * coef_int(gamma.clone())) / &pivot_val;
                        combo_add_scaled(&mut acc, &sub, &factor, Some(&mono.qexp));
                    }
                }
                acc
            }
        };
        caches.nf_memo.insert(xexp.clone(), combo.clone());
        combo
    }

    fn normal_form(&self, caches: &mut Caches, p: &Polynomial) -> RatCombo {
        let mut out = RatCombo::new();
        for (m, c) in p.terms() {
            let sub = self.normal_form_x(caches, &m.xexp);
            combo_add_scaled(&mut out, &sub, &coef_int(c.clone()), Some(&m.qexp));
        }
        out
    }

    fn ensure_matcher(&self, caches: &mut Caches, degree: usize) -> Result<(), RingError> {
        if caches.matchers.contains_key(&degree) {
            return Ok(());
        }
        let pairs = self.basis_pairs(degree);
        let mut nf_vectors = Vec::with_capacity(pairs.len());
        for (w, d) in &pairs {
            let poly =
                &Polynomial::q_monomial(self.n, d) * self.schubert.get(w).expect("basis class");
            nf_vectors.push(self.normal_form(caches, &poly));
        }
        let mut rows = Indexer::new();
        let mut ech = Echelon::new(true);
        for (idx, combo) in nf_vectors.iter().enumerate() {
            let vec = SparseVec::from_entries(
                combo
                    .iter()
                    .map(|(m, c)| (rows.intern(m.clone()), c.clone())),
            );
            if ech.insert(idx, vec).is_none() {
                let (w, d) = &pairs[idx];
                return Err(RingError::DependentBasis(w.clone(), d.clone()));
            }
        }
        caches.matchers.insert(degree, Matcher { pairs, rows, ech });
        Ok(())
    }
}

/// Multiply a polynomial by a monomial (exponent shift).
fn gcl_shift(p: &Polynomial, m: &Monomial) -> Polynomial {
    if m.is_unit() {
        return p.clone();
    }
    &Polynomial::from_term(p.rank(), m.clone(), BigInt::one()) * p
}

pub(crate) fn enumerate_x_monomials(n: usize, degree: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for slot in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix.iter().map(|&e| e as usize).sum();
            if slot + 1 == n {
                let mut p = prefix.clone();
                p.push((degree - used) as u32);
                next.push(p);
            } else {
                for e in 0..=(degree - used) as u32 {
                    let mut p = prefix.clone();
                    p.push(e);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}

fn count_x_monomials(n: usize, degree: usize) -> usize {
    // C(degree + n - 1, n - 1)
    let mut num = 1usize;
    let mut den = 1usize;
    for k in 1..n {
        num *= degree + k;
        den *= k;
    }
    num / den
}

/// Enumerate curve degrees with the given graded weight.
pub(crate) fn degree_vectors_with_weight(
    n: usize,
    grading: &GradingConfig,
    target: usize,
) -> Vec<CurveDegree> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for j in 1..n {
        let w = grading.q_degree(j);
        let mut next = Vec::new();
        for prefix in &out {
            let used: usize = prefix
                .iter()
                .enumerate()
                .map(|(idx, &e)| e as usize * grading.q_degree(idx + 1))
                .sum();
            let mut e = 0u32;
            while used + (e as usize) * w <= target {
                let mut p = prefix.clone();
                p.push(e);
                next.push(p);
                e += 1;
            }
        }
        out = next;
    }
    out.into_iter()
        .filter(|d| {
            d.iter()
                .enumerate()
                .map(|(idx, &e)| e as usize * grading.q_degree(idx + 1))
                .sum::<usize>()
                == target
        })
        .map(CurveDegree::new)
        .collect()
}

/// The quantum Lefschetz substitution: `x_{n-1} -> x_{n-1} + q_{n-1}`,
/// `x_n -> x_n - q_{n-1}`, `q_{n-1} -> -q_{n-1} x_n + q_{n-1}^2`, all other
/// variables fixed.
pub fn lefschetz_images(n: usize) -> BTreeMap<Var, Polynomial> {
    let mut images = Polynomial::identity_images(n);
    let qn1 = Polynomial::q(n, n - 1);
    images.insert(Var::X(n - 1), &Polynomial::x(n, n - 1) + &qn1);
    images.insert(Var::X(n), &Polynomial::x(n, n) - &qn1);
    images.insert(
        Var::Q(n - 1),
        &(&qn1 * &qn1) - &(&qn1 * &Polynomial::x(n, n)),
    );
    images
}

#[derive(Debug, Clone)]
pub struct LefschetzCheck {
    pub label: String,
    pub ok: bool,
    pub difference: Option<Polynomial>,
}

#[derive(Debug, Clone)]
pub struct LefschetzReport {
    pub n: usize,
    pub checks: Vec<LefschetzCheck>,
}

impl LefschetzReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Verify that the Lefschetz substitution carries the flag-variety generators
/// to the divisor generators: image of `E^n_i` equals `chi_i = Ehat^n_i` for
/// `i < n`, and image of `E^n_n` equals `(x_n - q_{n-1}) E^{n-1}_{n-1}`.
pub fn verify_lefschetz_hom(n: usize) -> Result<LefschetzReport, RingError> {
    if n < 3 {
        return Err(RingError::Unsupported(format!(
            "the Lefschetz check needs rank >= 3, got {n}"
        )));
    }
    let named = NamedPolys::new(n);
    let images = lefschetz_images(n);
    let mut checks = Vec::new();
    let mut push = |label: String, lhs: &Polynomial, rhs: &Polynomial| {
        let diff = lhs - rhs;
        checks.push(LefschetzCheck {
            label,
            ok: diff.is_zero(),
            difference: if diff.is_zero() { None } else { Some(diff) },
        });
    };
    for i in 1..n {
        let image = named.big_e(n, i).substitute(&images)?;
        push(format!("image(E^{n}_{i}) = chi_{i}"), &image, named.chi(i));
        push(
            format!("chi_{i} = Ehat^{n}_{i}"),
            named.chi(i),
            named.ehat(i),
        );
    }
    let image_top = named.big_e(n, n).substitute(&images)?;
    let expected = &(&Polynomial::x(n, n) - &Polynomial::q(n, n - 1)) * named.big_e(n - 1, n - 1);
    push(
        format!(
            "image(E^{n}_{n}) = (x{n} - q{}) * E^{}_{}",
            n - 1,
            n - 1,
            n - 1
        ),
        &image_top,
        &expected,
    );
    Ok(LefschetzReport { n, checks })
}
