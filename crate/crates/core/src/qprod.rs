//! Quantum products in the Schubert basis: the quantum Monk formula for the
//! flag variety, the quantum Monk-Chevalley formula for the Schubert divisor,
//! general products through the transition recursion, and multiplication
//! tables.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::perm::{CurveDegree, PermError, Permutation, Space};
use crate::qring::SchubertExpansion;
use crate::schubert::transition_expand;

#[derive(Debug, Error)]
pub enum ProdError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
    #[error("permutation {0} has w(n) = 1: not a class of X")]
    NotAClassOfX(Permutation),
    #[error("rank {0} exceeds the table bound {1}")]
    BoundExceeded(usize, usize),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Quantum Monk formula in the flag variety:
/// `sigma^{s_r} * sigma^u = sum sigma^{u t_{ab}} + sum q_{ab} sigma^{u t_{ab}}`
/// over classical and quantum r-Bruhat covers; all coefficients are 1.
pub fn monk_fl(r: usize, u: &Permutation) -> Result<SchubertExpansion, ProdError> {
    let n = u.rank();
    if r == 0 || r >= n {
        return Err(ProdError::IndexOutOfRange(r, n));
    }
    let mut out = SchubertExpansion::zero(Space::FlagVariety, n);
    for (a, b) in u.k_covers(r, false)? {
        out.add_term(
            u.apply_transposition_right(a, b)?,
            CurveDegree::zero(n),
            BigInt::one(),
        );
    }
    for (a, b) in u.k_covers(r, true)? {
        out.add_term(
            u.apply_transposition_right(a, b)?,
            CurveDegree::alpha(n, a, b),
            BigInt::one(),
        );
    }
    Ok(out)
}

/// Quantum Monk-Chevalley formula in the Schubert divisor, assembled from
/// four parts: classical covers that stay in the divisor, quantum covers with
/// `b < n`, the corrected `q_{an}`-terms indexed by pairs `(w, a)` with
/// `w t_{an} <_k^q w` and `u <_{n-1} w t_{an}`, and `-delta_{k,n-1} q_{n-1}
/// xi^u`. Parts three and four may cancel; coefficients end up in {-1,0,1}.
pub fn chevalley_x(k: usize, u: &Permutation) -> Result<SchubertExpansion, ProdError> {
    let n = u.rank();
    if k == 0 || k >= n {
        return Err(ProdError::IndexOutOfRange(k, n));
    }
    if !u.in_x() {
        return Err(ProdError::NotAClassOfX(u.clone()));
    }
    let mut out = SchubertExpansion::zero(Space::SchubertDivisorX, n);
    // (1) classical covers, cut off to divisor classes
    for (a, b) in u.k_covers(k, false)? {
        let w = u.apply_transposition_right(a, b)?;
        if w.in_x() {
            out.add_term(w, CurveDegree::zero(n), BigInt::one());
        }
    }
    // (2) quantum covers avoiding the last position
    for (a, b) in u.k_covers(k, true)? {
        if b < n {
            let w = u.apply_transposition_right(a, b)?;
            debug_assert!(w.in_x());
            out.add_term(w, CurveDegree::alpha(n, a, b), BigInt::one());
        }
    }
    // (3) pairs (w, a): w t_{an} is an (n-1)-cover of u and drops back
    //     quantum-k-wise from w
    for c in 1..n {
        if !u.is_cover(c, n)? {
            continue;
        }
        let v = u.apply_transposition_right(c, n)?;
        for a in 1..=k {
            if v.is_quantum_cover(a, n)? {
                let w = v.apply_transposition_right(a, n)?;
                // redundancy of the divisor constraint: asserted, not filtered
                assert!(
                    w.in_x(),
                    "corrected quantum term {w} left the divisor classes"
                );
                out.add_term(w, CurveDegree::alpha(n, a, n), BigInt::one());
            }
        }
    }
    // (4) subtraction at k = n-1
    if k == n - 1 {
        out.add_term(u.clone(), CurveDegree::alpha(n, n - 1, n), -BigInt::one());
    }
    Ok(out)
}

/// Divisor-class product in the chosen space.
pub fn divisor_product(
    space: Space,
    r: usize,
    u: &Permutation,
) -> Result<SchubertExpansion, ProdError> {
    match space {
        Space::FlagVariety => monk_fl(r, u),
        Space::SchubertDivisorX => chevalley_x(r, u),
    }
}

/// Shared context for products: memoizes expansions keyed by `(u, v)` so that
/// the transition recursion over `v` reuses work across a table.
pub struct ProductCtx {
    space: Space,
    n: usize,
    memo: RefCell<HashMap<(Permutation, Permutation), SchubertExpansion>>,
}

impl ProductCtx {
    pub fn new(space: Space, n: usize) -> Self {
        ProductCtx {
            space,
            n,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    fn check_class(&self, w: &Permutation) -> Result<(), ProdError> {
        if w.rank() != self.n {
            return Err(ProdError::RankMismatch(w.rank(), self.n));
        }
        if self.space == Space::SchubertDivisorX && !w.in_x() {
            return Err(ProdError::NotAClassOfX(w.clone()));
        }
        Ok(())
    }

    /// `gamma^u * gamma^v`, by recursion on `v` in the transition order:
    /// divisor classes use the Monk / Monk-Chevalley formula directly, and a
    /// general `v` is expanded through its transition equation, with
    /// multiplication by `x_i` realized as the difference of two divisor
    /// products.
    pub fn product(
        &self,
        u: &Permutation,
        v: &Permutation,
    ) -> Result<SchubertExpansion, ProdError> {
        self.check_class(u)?;
        self.check_class(v)?;
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let result = if v.is_identity() {
            SchubertExpansion::single(self.space, self.n, u.clone())
        } else if v.length() == 1 {
            let r = v.descents()[0];
            divisor_product(self.space, r, u)?
        } else {
            let t = transition_expand(v).expect("non-identity class");
            let base = self.product(u, &t.u)?;
            let mut acc = self.xi_mul(t.i, &base)?;
            for w in &t.classical {
                acc.add(&self.product(u, w)?);
            }
            for (w, d) in &t.quantum_plus {
                acc.add(&self.product(u, w)?.mul_q(d));
            }
            for (w, d) in &t.quantum_minus {
                acc.sub(&self.product(u, w)?.mul_q(d));
            }
            acc
        };
        debug_assert_eq!(
            result
                .homogeneous_degree()
                .or(Some(u.length() + v.length())),
            Some(u.length() + v.length()),
            "product of {u} and {v} must be homogeneous of the sum degree"
        );
        self.memo.borrow_mut().insert(key, result.clone());
        Ok(result)
    }

    /// Multiplication by `x_i = gamma^{s_i} - gamma^{s_{i-1}}` (with
    /// `gamma^{s_0} = 0`), applied to an expansion.
    fn xi_mul(&self, i: usize, e: &SchubertExpansion) -> Result<SchubertExpansion, ProdError> {
        let mut out = self.divisor_apply(i, e)?;
        if i > 1 {
            out.sub(&self.divisor_apply(i - 1, e)?);
        }
        Ok(out)
    }

    fn divisor_apply(
        &self,
        r: usize,
        e: &SchubertExpansion,
    ) -> Result<SchubertExpansion, ProdError> {
        let mut out = SchubertExpansion::zero(self.space, self.n);
        for ((w, d), c) in e.terms() {
            let mut part = divisor_product(self.space, r, w)?.mul_q(d);
            part.scale(c);
            out.add(&part);
        }
        Ok(out)
    }
}

/// One-off product without a shared context.
pub fn general_product(
    u: &Permutation,
    v: &Permutation,
    space: Space,
) -> Result<SchubertExpansion, ProdError> {
    if u.rank() != v.rank() {
        return Err(ProdError::RankMismatch(u.rank(), v.rank()));
    }
    ProductCtx::new(space, u.rank()).product(u, v)
}

/// Full multiplication table over the basis classes of a space.
#[derive(Debug, Clone)]
pub struct ProductTable {
    space: Space,
    n: usize,
    entries: BTreeMap<(Permutation, Permutation), SchubertExpansion>,
}

pub const DEFAULT_TABLE_BOUND: usize = 4;

/// Compute every pairwise product over the basis classes; one triangle is
/// computed and mirrored. Guarded by `DEFAULT_TABLE_BOUND`.
pub fn multiplication_table(space: Space, n: usize) -> Result<ProductTable, ProdError> {
    multiplication_table_with_bound(space, n, DEFAULT_TABLE_BOUND)
}

pub fn multiplication_table_with_bound(
    space: Space,
    n: usize,
    bound: usize,
) -> Result<ProductTable, ProdError> {
    if n > bound {
        return Err(ProdError::BoundExceeded(n, bound));
    }
    let basis: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| space == Space::FlagVariety || w.in_x())
        .collect();
    let ctx = ProductCtx::new(space, n);
    let mut entries = BTreeMap::new();
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i..] {
            let e = ctx.product(u, v)?;
            entries.insert((u.clone(), v.clone()), e.clone());
            if u != v {
                entries.insert((v.clone(), u.clone()), e);
            }
        }
    }
    Ok(ProductTable { space, n, entries })
}

impl ProductTable {
    pub fn space(&self) -> Space {
        self.space
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, u: &Permutation, v: &Permutation) -> Option<&SchubertExpansion> {
        self.entries.get(&(u.clone(), v.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Permutation, Permutation), &SchubertExpansion)> {
        self.entries.iter()
    }

    /// TSV rows `u \t v \t w \t d \t c`, streamed.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> Result<(), ProdError> {
        writeln!(out, "u\tv\tw\td\tc")?;
        for ((u, v), e) in &self.entries {
            for ((w, d), c) in e.terms() {
                writeln!(out, "{u}\t{v}\t{w}\t{d}\t{c}")?;
            }
        }
        Ok(())
    }

    /// JSON object with one entry per pair, streamed.
    pub fn write_json<W: Write>(&self, mut out: W) -> Result<(), ProdError> {
        writeln!(out, "{{")?;
        writeln!(out, "  \"space\": \"{}\",", self.space)?;
        writeln!(out, "  \"n\": {},", self.n)?;
        writeln!(out, "  \"entries\": [")?;
        let total = self.entries.len();
        for (idx, ((u, v), e)) in self.entries.iter().enumerate() {
            let json = serde_json::json!({
                "u": u.one_line(),
                "v": v.one_line(),
                "product": e.to_json(),
            });
            let sep = if idx + 1 == total { "" } else { "," };
            writeln!(out, "    {json}{sep}")?;
        }
        writeln!(out, "  ]")?;
        writeln!(out, "}}")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(oneline: &[usize]) -> Permutation {
        Permutation::new(oneline.to_vec()).unwrap()
    }

    fn term(e: &SchubertExpansion, w: &[usize], d: &[u32]) -> BigInt {
        e.coefficient(&p(w), &CurveDegree::new(d.to_vec()))
    }

    #[test]
    fn monk_square_of_first_divisor() {
        let s1 = p(&[2, 1, 3]);
        let e = monk_fl(1, &s1).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(term(&e, &[3, 1, 2], &[0, 0]), BigInt::one());
        assert_eq!(term(&e, &[1, 2, 3], &[1, 0]), BigInt::one());
    }

    #[test]
    fn monk_unit_product() {
        for n in 2..=4 {
            for r in 1..n {
                let e = monk_fl(r, &Permutation::identity(n)).unwrap();
                assert_eq!(e.len(), 1);
                assert_eq!(
                    e.coefficient(&Permutation::simple(n, r).unwrap(), &CurveDegree::zero(n)),
                    BigInt::one()
                );
            }
        }
        assert!(monk_fl(3, &Permutation::identity(3)).is_err());
    }

    #[test]
    fn monk_coefficients_are_zero_or_one() {
        for n in 2..=4 {
            for u in Permutation::all(n) {
                for r in 1..n {
                    let e = monk_fl(r, &u).unwrap();
                    for (_, c) in e.terms() {
                        assert_eq!(c, &BigInt::one());
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_first_worked_example() {
        // xi^{s3 s2} * xi^{s3} = xi^{s3 s2 s3} + q2 q3
        let u = Permutation::parse("s:3,2", 4).unwrap();
        let e = chevalley_x(3, &u).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(term(&e, &[1, 4, 3, 2], &[0, 0, 0]), BigInt::one());
        assert_eq!(term(&e, &[1, 2, 3, 4], &[0, 1, 1]), BigInt::one());
    }

    #[test]
    fn chevalley_second_worked_example() {
        // xi^{s1 s3} * xi^{s3}
        //   = xi^{s2 s1 s3} + q3 xi^{s1 s2} + q3 xi^{s2 s1} - q3 xi^{s1 s3}
        let u = Permutation::parse("s:1,3", 4).unwrap();
        assert_eq!(u, p(&[2, 1, 4, 3]));
        let e = chevalley_x(3, &u).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(term(&e, &[3, 1, 4, 2], &[0, 0, 0]), BigInt::one());
        assert_eq!(term(&e, &[2, 3, 1, 4], &[0, 0, 1]), BigInt::one());
        assert_eq!(term(&e, &[3, 1, 2, 4], &[0, 0, 1]), BigInt::one());
        assert_eq!(term(&e, &[2, 1, 4, 3], &[0, 0, 1]), -BigInt::one());
    }

    #[test]
    fn chevalley_unit_product() {
        for n in 3..=4 {
            for k in 1..n {
                let e = chevalley_x(k, &Permutation::identity(n)).unwrap();
                assert_eq!(e.len(), 1, "k={k}, n={n}");
                assert_eq!(
                    e.coefficient(&Permutation::simple(n, k).unwrap(), &CurveDegree::zero(n)),
                    BigInt::one()
                );
            }
        }
    }

    #[test]
    fn chevalley_rejects_non_divisor_class() {
        let bad = p(&[2, 3, 4, 1]);
        assert!(matches!(
            chevalley_x(1, &bad),
            Err(ProdError::NotAClassOfX(_))
        ));
        let good = p(&[1, 2, 4, 3]);
        assert!(matches!(
            chevalley_x(4, &good),
            Err(ProdError::IndexOutOfRange(4, 4))
        ));
        assert!(matches!(
            chevalley_x(0, &good),
            Err(ProdError::IndexOutOfRange(0, 4))
        ));
    }

    #[test]
    fn chevalley_coefficients_within_unit_range() {
        for n in 3..=4 {
            for u in Permutation::all(n) {
                if !u.in_x() {
                    continue;
                }
                for k in 1..n {
                    let e = chevalley_x(k, &u).unwrap();
                    for ((w, d), c) in e.terms() {
                        let c: BigInt = c.clone();
                        assert!(c == BigInt::one() || c == -BigInt::one());
                        if c == -BigInt::one() {
                            assert_eq!(w, &u);
                            assert_eq!(d, &CurveDegree::alpha(n, n - 1, n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chevalley_cut_off_matches_monk() {
        // the d_{n-1} = 0 part equals the Monk formula restricted to X classes
        for n in 3..=4 {
            for u in Permutation::all(n) {
                if !u.in_x() {
                    continue;
                }
                for k in 1..n {
                    let chev = chevalley_x(k, &u).unwrap();
                    let monk = monk_fl(k, &u).unwrap();
                    let mut chev_cut = SchubertExpansion::zero(Space::SchubertDivisorX, n);
                    for ((w, d), c) in chev.terms() {
                        if d.entries()[n - 2] == 0 {
                            chev_cut.add_term(w.clone(), d.clone(), c.clone());
                        }
                    }
                    let mut monk_cut = SchubertExpansion::zero(Space::SchubertDivisorX, n);
                    for ((w, d), c) in monk.terms() {
                        if d.entries()[n - 2] == 0 && w.in_x() {
                            monk_cut.add_term(w.clone(), d.clone(), c.clone());
                        }
                    }
                    assert_eq!(chev_cut, monk_cut, "cut-off mismatch at u={u}, k={k}");
                }
            }
        }
    }

    #[test]
    fn general_product_unit_and_divisor_base() {
        let ctx = ProductCtx::new(Space::FlagVariety, 3);
        let id = Permutation::identity(3);
        let u = p(&[3, 1, 2]);
        let e = ctx.product(&id, &u).unwrap();
        assert_eq!(
            e,
            SchubertExpansion::single(Space::FlagVariety, 3, u.clone())
        );
        // base-case consistency with the divisor formula
        let s1 = p(&[2, 1, 3]);
        assert_eq!(ctx.product(&u, &s1).unwrap(), monk_fl(1, &u).unwrap());
    }

    #[test]
    fn general_product_matches_worked_example() {
        let u = Permutation::parse("s:3,2", 4).unwrap();
        let v = Permutation::parse("s:3", 4).unwrap();
        let e = general_product(&u, &v, Space::SchubertDivisorX).unwrap();
        assert_eq!(e, chevalley_x(3, &u).unwrap());
        // and with the arguments the other way around
        let e2 = general_product(&v, &u, Space::SchubertDivisorX).unwrap();
        assert_eq!(e, e2);
    }

    #[test]
    fn products_commute() {
        for n in 3..=4 {
            for space in [Space::FlagVariety, Space::SchubertDivisorX] {
                let ctx = ProductCtx::new(space, n);
                let basis: Vec<Permutation> = Permutation::all(n)
                    .into_iter()
                    .filter(|w| space == Space::FlagVariety || w.in_x())
                    .collect();
                for u in &basis {
                    for v in &basis {
                        assert_eq!(
                            ctx.product(u, v).unwrap(),
                            ctx.product(v, u).unwrap(),
                            "commutativity fails at {u}, {v} in {space}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn table_shapes() {
        let fl = multiplication_table(Space::FlagVariety, 3).unwrap();
        assert_eq!(fl.len(), 36);
        let s1 = p(&[2, 1, 3]);
        let diag = fl.entry(&s1, &s1).unwrap();
        assert_eq!(diag, &monk_fl(1, &s1).unwrap());

        let dx = multiplication_table(Space::SchubertDivisorX, 3).unwrap();
        assert_eq!(dx.len(), 16); // 4 divisor classes at rank 3
        assert!(multiplication_table(Space::FlagVariety, 5).is_err());

        for (_, e) in fl.iter() {
            assert!(e.homogeneous_degree().is_some());
        }
    }

    #[test]
    fn tsv_export_has_one_row_per_term() {
        let table = multiplication_table(Space::SchubertDivisorX, 3).unwrap();
        let mut buf = Vec::new();
        table.write_tsv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows = text.lines().count() - 1;
        let terms: usize = table.iter().map(|(_, e)| e.len()).sum();
        assert_eq!(rows, terms);
    }
}
