//! Classical and quantum Schubert polynomials.
//!
//! Two independent constructions of the quantum polynomial are provided: the
//! quantization of the elementary-symmetric-product expansion (replace each
//! `e^k_i` factor by `E^k_i`), and the transition-equation recursion grounded
//! at the identity. Their agreement is a core cross-check of the crate.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{coef_int, Echelon, Indexer, SparseVec};
use crate::matrix::NamedPolys;
use crate::perm::{CurveDegree, PermError, Permutation};
use crate::poly::{Monomial, PolyError, Polynomial};

#[derive(Debug, Error)]
pub enum SchubertError {
    #[error("operation requires a polynomial in the x-variables only")]
    QVariablesPresent,
    #[error("polynomial lies outside the elementary-product span; residual: {0}")]
    OutsideSpan(String),
    #[error("non-integral expansion coefficient {0} (basis inconsistency)")]
    NonIntegral(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Divided difference `∂_i f = (f - s_i f) / (x_i - x_{i+1})`, evaluated
/// monomial by monomial (the quotient is always exact). Only defined for
/// polynomials without quantum variables.
pub fn divided_difference(p: &Polynomial, i: usize) -> Result<Polynomial, SchubertError> {
    let n = p.rank();
    if i == 0 || i >= n {
        return Err(SchubertError::Poly(PolyError::VarOutOfRange(i, n)));
    }
    if !p.is_q_free() {
        return Err(SchubertError::QVariablesPresent);
    }
    let mut out = Polynomial::zero(n);
    for (m, c) in p.terms() {
        let a = m.xexp[i - 1];
        let b = m.xexp[i];
        if a == b {
            continue;
        }
        // ∂_i(x_i^a x_{i+1}^b) = sign * sum of x_i^* x_{i+1}^* along the
        // geometric telescope between the two exponents.
        let (hi, lo, sign) = if a > b {
            (a, b, BigInt::one())
        } else {
            (b, a, -BigInt::one())
        };
        for k in 0..hi - lo {
            let mut mm = m.clone();
            mm.xexp[i - 1] = hi - 1 - k;
            mm.xexp[i] = lo + k;
            out = &out + &Polynomial::from_term(n, mm, c * &sign);
        }
    }
    Ok(out)
}

/// The staircase monomial `x_1^{n-1} x_2^{n-2} ... x_{n-1}`, the classical
/// Schubert polynomial of the longest element.
pub fn staircase_monomial(n: usize) -> Polynomial {
    let m = Monomial {
        xexp: (0..n).map(|i| (n - 1 - i) as u32).collect(),
        qexp: vec![0; n - 1],
    };
    Polynomial::from_term(n, m, BigInt::one())
}

/// Reduced word for the descent chain from `w_0` down to `w`: a reduced word
/// of `w_0 w`, produced by peeling the smallest left descent. Applying the
/// divided differences in this order to the staircase monomial yields the
/// Schubert polynomial of `w`.
fn descent_chain(w: &Permutation) -> Vec<usize> {
    let n = w.rank();
    let mut z = Permutation::longest(n).compose(w).expect("same rank");
    let mut word = Vec::with_capacity(z.length());
    'outer: loop {
        let inv = z.inverse();
        for i in 1..n {
            if inv.apply(i) > inv.apply(i + 1) {
                word.push(i);
                z = Permutation::simple(n, i).unwrap().compose(&z).unwrap();
                continue 'outer;
            }
        }
        return word;
    }
}

/// Classical Schubert polynomial of `w`, computed by a divided-difference
/// chain from the staircase monomial. Independent of the chain.
pub fn schubert_poly(w: &Permutation) -> Polynomial {
    let mut p = staircase_monomial(w.rank());
    for i in descent_chain(w) {
        p = divided_difference(&p, i).expect("chain polynomials are q-free");
    }
    p
}

/// All classical Schubert polynomials of rank `n`, by breadth-first descent
/// from the longest element.
pub fn classical_schubert_all(n: usize) -> BTreeMap<Permutation, Polynomial> {
    let mut out: BTreeMap<Permutation, Polynomial> = BTreeMap::new();
    let w0 = Permutation::longest(n);
    out.insert(w0.clone(), staircase_monomial(n));
    let mut frontier = vec![w0];
    while let Some(w) = frontier.pop() {
        let p = out.get(&w).unwrap().clone();
        for i in w.descents() {
            let shorter = w.apply_simple_right(i).unwrap();
            if !out.contains_key(&shorter) {
                out.insert(shorter.clone(), divided_difference(&p, i).unwrap());
                frontier.push(shorter);
            }
        }
    }
    out
}

/// Expansion context for the basis of products
/// `e^1_{i_1} e^2_{i_2} ... e^{n-1}_{i_{n-1}}` with `0 <= i_j <= j`.
pub struct EBasis {
    n: usize,
    named: NamedPolys,
    tuples: Vec<Vec<u32>>,
    products: Vec<Polynomial>,
    blocks: RefCell<HashMap<u32, Block>>,
}

struct Block {
    rows: Indexer<Vec<u32>>,
    ech: Echelon,
}

impl EBasis {
    pub fn new(n: usize) -> Self {
        let named = NamedPolys::new(n);
        let mut tuples: Vec<Vec<u32>> = vec![vec![]];
        for j in 1..n {
            let mut next = Vec::new();
            for t in &tuples {
                for i in 0..=j as u32 {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push(t2);
                }
            }
            tuples = next;
        }
        let products = tuples
            .iter()
            .map(|t| {
                let mut p = Polynomial::one(n);
                for (j, &i) in t.iter().enumerate() {
                    if i > 0 {
                        p = &p * named.e(j + 1, i as usize);
                    }
                }
                p
            })
            .collect();
        EBasis {
            n,
            named,
            tuples,
            products,
            blocks: RefCell::new(HashMap::new()),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn named(&self) -> &NamedPolys {
        &self.named
    }

    fn block_degree(&self, degree: u32) -> std::cell::RefMut<'_, HashMap<u32, Block>> {
        {
            let mut blocks = self.blocks.borrow_mut();
            blocks.entry(degree).or_insert_with(|| {
                let mut rows = Indexer::new();
                let mut ech = Echelon::new(true);
                for (id, t) in self.tuples.iter().enumerate() {
                    if t.iter().sum::<u32>() != degree {
                        continue;
                    }
                    let vec = SparseVec::from_entries(
                        self.products[id]
                            .terms()
                            .map(|(m, c)| (rows.intern(m.xexp.clone()), coef_int(c.clone()))),
                    );
                    let inserted = ech.insert(id, vec);
                    assert!(
                        inserted.is_some(),
                        "elementary products of one degree must be independent"
                    );
                }
                Block { rows, ech }
            });
        }
        self.blocks.borrow_mut()
    }

    /// Expand a q-free polynomial in the product basis. Coefficients are
    /// exact integers; inputs outside the span report the residual.
    pub fn expand(&self, p: &Polynomial) -> Result<BTreeMap<Vec<u32>, BigInt>, SchubertError> {
        if !p.is_q_free() {
            return Err(SchubertError::QVariablesPresent);
        }
        if p.rank() != self.n {
            return Err(SchubertError::Poly(PolyError::RankMismatch(
                p.rank(),
                self.n,
            )));
        }
        // split by total x-degree; each graded block is solved separately
        let mut by_degree: BTreeMap<u32, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            by_degree
                .entry(m.x_degree())
                .or_default()
                .push((m.clone(), c.clone()));
        }
        let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (degree, terms) in by_degree {
            let mut blocks = self.block_degree(degree);
            let block = blocks.get_mut(&degree).unwrap();
            let mut vec = SparseVec::new();
            for (m, c) in terms {
                match block.rows.get(&m.xexp) {
                    Some(row) => vec.add(row, coef_int(c)),
                    None => {
                        return Err(SchubertError::OutsideSpan(
                            Polynomial::from_term(self.n, m, c).to_string(),
                        ))
                    }
                }
            }
            let (coeffs, rem) = block.ech.reduce(vec);
            if !rem.is_zero() {
                let mut residual = Polynomial::zero(self.n);
                for (row, c) in rem.iter() {
                    let m = Monomial {
                        xexp: block.rows.key(row).clone(),
                        qexp: vec![0; self.n - 1],
                    };
                    // report the numerator part of the residual
                    residual = &residual + &Polynomial::from_term(self.n, m, c.numer().clone());
                }
                return Err(SchubertError::OutsideSpan(residual.to_string()));
            }
            for (tuple_id, c) in coeffs {
                if !c.is_integer() {
                    return Err(SchubertError::NonIntegral(c.to_string()));
                }
                let c = c.to_integer();
                if !c.is_zero() {
                    out.insert(self.tuples[tuple_id].clone(), c);
                }
            }
        }
        Ok(out)
    }

    /// Rebuild a polynomial from expansion coefficients (classical factors).
    pub fn reconstruct(&self, coeffs: &BTreeMap<Vec<u32>, BigInt>) -> Polynomial {
        let mut p = Polynomial::zero(self.n);
        for (t, c) in coeffs {
            let id = self
                .tuples
                .iter()
                .position(|u| u == t)
                .expect("tuple in range");
            p = &p + &self.products[id].scale(c);
        }
        p
    }

    /// Substitute quantized factors: `sum alpha * E^1_{i_1} ... E^{n-1}_{i_{n-1}}`.
    pub fn quantize(&self, coeffs: &BTreeMap<Vec<u32>, BigInt>) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (t, c) in coeffs {
            let mut p = Polynomial::constant(self.n, c.clone());
            for (j, &i) in t.iter().enumerate() {
                if i > 0 {
                    p = &p * self.named.big_e(j + 1, i as usize);
                }
            }
            out = &out + &p;
        }
        out
    }
}

/// Expansion of a q-free polynomial in the elementary-product basis.
pub fn e_expansion(p: &Polynomial, n: usize) -> Result<BTreeMap<Vec<u32>, BigInt>, SchubertError> {
    EBasis::new(n).expand(p)
}

/// Quantum Schubert polynomial via quantization of the elementary-product
/// expansion of the classical polynomial.
pub fn quantum_schubert_poly(w: &Permutation) -> Polynomial {
    let basis = EBasis::new(w.rank());
    quantum_schubert_poly_with(&basis, w)
}

pub fn quantum_schubert_poly_with(basis: &EBasis, w: &Permutation) -> Polynomial {
    let classical = schubert_poly(w);
    let coeffs = basis
        .expand(&classical)
        .expect("Schubert polynomials lie in the elementary-product span");
    basis.quantize(&coeffs)
}

/// All quantum Schubert polynomials of rank `n` (quantization route).
pub fn quantum_schubert_all(n: usize) -> BTreeMap<Permutation, Polynomial> {
    let basis = EBasis::new(n);
    classical_schubert_all(n)
        .into_iter()
        .map(|(w, p)| {
            let coeffs = basis
                .expand(&p)
                .expect("Schubert polynomials lie in the elementary-product span");
            (w, basis.quantize(&coeffs))
        })
        .collect()
}

/// Right-hand side data of the transition equation at `w`: with `i` the last
/// descent and `u = w t_{ij}`, the equation reads
/// `S_w = x_i S_u + sum(classical) + sum(q_{hi} * plus) - sum(q_{ik} * minus)`.
#[derive(Debug, Clone)]
pub struct TransitionExpansion {
    pub i: usize,
    pub u: Permutation,
    pub classical: Vec<Permutation>,
    pub quantum_plus: Vec<(Permutation, CurveDegree)>,
    pub quantum_minus: Vec<(Permutation, CurveDegree)>,
}

impl TransitionExpansion {
    /// Every permutation on the right-hand side.
    pub fn all_permutations(&self) -> Vec<&Permutation> {
        let mut out = vec![&self.u];
        out.extend(self.classical.iter());
        out.extend(self.quantum_plus.iter().map(|(v, _)| v));
        out.extend(self.quantum_minus.iter().map(|(v, _)| v));
        out
    }
}

/// Compute the transition expansion of a non-identity permutation. The output
/// contract is checked: every right-hand-side permutation strictly precedes
/// `w`, and stays inside the divisor classes whenever `w` does.
pub fn transition_expand(w: &Permutation) -> Result<TransitionExpansion, SchubertError> {
    let n = w.rank();
    let (i, _j, u) = w.transition_data()?;
    let mut classical = Vec::new();
    let mut quantum_plus = Vec::new();
    for h in 1..i {
        if u.is_cover(h, i)? {
            classical.push(u.apply_transposition_right(h, i)?);
        }
        if u.is_quantum_cover(h, i)? {
            quantum_plus.push((
                u.apply_transposition_right(h, i)?,
                CurveDegree::alpha(n, h, i),
            ));
        }
    }
    let mut quantum_minus = Vec::new();
    for k in i + 1..=n {
        if u.is_quantum_cover(i, k)? {
            quantum_minus.push((
                u.apply_transposition_right(i, k)?,
                CurveDegree::alpha(n, i, k),
            ));
        }
    }
    let expansion = TransitionExpansion {
        i,
        u,
        classical,
        quantum_plus,
        quantum_minus,
    };
    for v in expansion.all_permutations() {
        assert!(
            v.precedes(w)?,
            "transition output {v} must precede the input {w}"
        );
        if w.in_x() {
            assert!(
                v.in_x(),
                "transition output {v} must stay in the divisor classes of {w}"
            );
        }
    }
    Ok(expansion)
}

/// Quantum Schubert polynomial via the transition recursion, grounded at the
/// identity. Must agree with [`quantum_schubert_poly`] exactly.
pub fn quantum_schubert_via_transition(w: &Permutation) -> Polynomial {
    let mut memo: HashMap<Permutation, Polynomial> = HashMap::new();
    transition_rec(w, &mut memo)
}

fn transition_rec(w: &Permutation, memo: &mut HashMap<Permutation, Polynomial>) -> Polynomial {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let n = w.rank();
    let result = if w.is_identity() {
        Polynomial::one(n)
    } else {
        let t = transition_expand(w).expect("non-identity input");
        let mut acc = &Polynomial::x(n, t.i) * &transition_rec(&t.u, memo);
        for v in &t.classical {
            acc = &acc + &transition_rec(v, memo);
        }
        for (v, d) in &t.quantum_plus {
            acc = &acc + &(&Polynomial::q_monomial(n, d) * &transition_rec(v, memo));
        }
        for (v, d) in &t.quantum_minus {
            acc = &acc - &(&Polynomial::q_monomial(n, d) * &transition_rec(v, memo));
        }
        acc
    };
    memo.insert(w.clone(), result.clone());
    result
}
