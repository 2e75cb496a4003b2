//! Sparse exact linear algebra over the rationals: incremental column
//! echelon forms with optional provenance tracking, used for basis
//! expansions and ideal reductions.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Coef = BigRational;

pub fn coef_one() -> Coef {
    BigRational::one()
}

pub fn coef_int(c: impl Into<BigInt>) -> Coef {
    BigRational::from_integer(c.into())
}

/// Sparse vector with rational entries indexed by `usize` rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: BTreeMap<usize, Coef>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(it: impl IntoIterator<Item = (usize, Coef)>) -> Self {
        let mut v = SparseVec::new();
        for (row, c) in it {
            v.add(row, c);
        }
        v
    }

    pub fn add(&mut self, row: usize, c: Coef) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(row) {
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

    pub fn get(&self, row: usize) -> Option<&Coef> {
        self.entries.get(&row)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Coef)> {
        self.entries.iter().map(|(&r, c)| (r, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self -= factor * other`.
    pub fn axpy_sub(&mut self, factor: &Coef, other: &SparseVec) {
        if factor.is_zero() {
            return;
        }
        for (row, c) in other.iter() {
            self.add(row, -(factor * c));
        }
    }
}

struct EchelonColumn {
    pivot_row: usize,
    vec: SparseVec,
    /// Expression of this reduced column in the original inserted columns,
    /// keyed by the caller-supplied column id. Present when recording.
    expr: Option<HashMap<usize, Coef>>,
}

/// Incremental column echelon: each stored column is reduced against all
/// previously chosen pivots, so a single ascending pass reduces any vector.
pub struct Echelon {
    record: bool,
    cols: Vec<EchelonColumn>,
    pivot_of_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(record: bool) -> Self {
        Echelon {
            record,
            cols: Vec::new(),
            pivot_of_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    /// Column index holding the pivot for `row`, if any.
    pub fn pivot_column(&self, row: usize) -> Option<usize> {
        self.pivot_of_row.get(&row).copied()
    }

    pub fn column_vector(&self, col: usize) -> &SparseVec {
        &self.cols[col].vec
    }

    pub fn column_pivot(&self, col: usize) -> usize {
        self.cols[col].pivot_row
    }

    /// Provenance of a stored column in original column ids (recording only).
    pub fn column_expr(&self, col: usize) -> impl Iterator<Item = (usize, &Coef)> {
        self.cols[col]
            .expr
            .as_ref()
            .expect("echelon built without recording")
            .iter()
            .map(|(&id, c)| (id, c))
    }

    /// Insert a column identified by `id`. Returns the new echelon column
    /// index, or `None` if the column is dependent on the previous ones.
    pub fn insert(&mut self, id: usize, v: SparseVec) -> Option<usize> {
        let (coeffs, reduced) = self.reduce(v);
        if reduced.is_zero() {
            return None;
        }
        let expr = if self.record {
            let mut e: HashMap<usize, Coef> = HashMap::new();
            e.insert(id, coef_one());
            for (other, c) in coeffs {
                let entry = e.entry(other).or_insert_with(Coef::zero);
                *entry -= c;
                if entry.is_zero() {
                    e.remove(&other);
                }
            }
            Some(e)
        } else {
            None
        };
        let pivot_row = choose_pivot(&reduced);
        let idx = self.cols.len();
        self.pivot_of_row.insert(pivot_row, idx);
        self.cols.push(EchelonColumn {
            pivot_row,
            vec: reduced,
            expr,
        });
        Some(idx)
    }

    /// Reduce `v` against the stored columns. Returns the coefficients in
    /// terms of the ORIGINAL column ids (empty unless recording) and the
    /// remainder, which has zeros at every pivot row.
    pub fn reduce(&self, mut v: SparseVec) -> (Vec<(usize, Coef)>, SparseVec) {
        let mut acc: HashMap<usize, Coef> = HashMap::new();
        for col in &self.cols {
            let Some(c) = v.get(col.pivot_row) else {
                continue;
            };
            let pivot_val = col.vec.get(col.pivot_row).expect("pivot entry present");
            let factor = c / pivot_val;
            v.axpy_sub(&factor, &col.vec);
            debug_assert!(v.get(col.pivot_row).is_none());
            if self.record {
                for (id, e) in col.expr.as_ref().unwrap() {
                    let entry = acc.entry(*id).or_insert_with(Coef::zero);
                    *entry += &factor * e;
                    if entry.is_zero() {
                        acc.remove(id);
                    }
                }
            }
        }
        let mut coeffs: Vec<(usize, Coef)> = acc.into_iter().collect();
        coeffs.sort_by_key(|(id, _)| *id);
        (coeffs, v)
    }
}

/// Pivot choice: prefer rows with a unit coefficient, then the largest row
/// index (rows are sorted monomials, so this mimics leading-term reduction).
fn choose_pivot(v: &SparseVec) -> usize {
    let mut best: Option<(bool, usize)> = None;
    for (row, c) in v.iter() {
        let unit = c.numer().magnitude() == c.denom().magnitude() || c.abs().is_one();
        let key = (unit, row);
        if best.is_none_or(|b| key > b) {
            best = Some(key);
        }
    }
    best.expect("nonzero vector").1
}

/// Bidirectional map between arbitrary keys and dense row/column ids.
#[derive(Debug, Clone, Default)]
pub struct Indexer<K: Hash + Eq + Clone> {
    list: Vec<K>,
    map: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Indexer<K> {
    pub fn new() -> Self {
        Indexer {
            list: Vec::new(),
            map: HashMap::new(),
        }
    }

    pub fn intern(&mut self, key: K) -> usize {
        if let Some(&id) = self.map.get(&key) {
            return id;
        }
        let id = self.list.len();
        self.list.push(key.clone());
        self.map.insert(key, id);
        id
    }

    pub fn get(&self, key: &K) -> Option<usize> {
        self.map.get(key).copied()
    }

    pub fn key(&self, id: usize) -> &K {
        &self.list[id]
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(r, c)| (r, coef_int(c))))
    }

    #[test]
    fn insert_and_detect_dependence() {
        let mut ech = Echelon::new(false);
        assert!(ech.insert(0, vec_of(&[(0, 1), (1, 2)])).is_some());
        assert!(ech.insert(1, vec_of(&[(1, 1)])).is_some());
        // dependent: 3*(first) - 6*(second)
        assert!(ech.insert(2, vec_of(&[(0, 3)])).is_none());
        assert!(ech.insert(3, vec_of(&[(0, 7), (2, 1)])).is_some());
        assert_eq!(ech.rank(), 3);
    }

    #[test]
    fn reduce_recovers_original_coefficients() {
        let mut ech = Echelon::new(true);
        let a = vec_of(&[(0, 1), (1, 1)]);
        let b = vec_of(&[(1, 1), (2, 1)]);
        let c = vec_of(&[(2, 1), (3, 7)]);
        ech.insert(10, a.clone()).unwrap();
        ech.insert(20, b.clone()).unwrap();
        ech.insert(30, c.clone()).unwrap();
        // v = 2a - 3b + c
        let mut v = SparseVec::new();
        v.axpy_sub(&coef_int(-2), &a);
        v.axpy_sub(&coef_int(3), &b);
        v.axpy_sub(&coef_int(-1), &c);
        let (coeffs, rem) = ech.reduce(v);
        assert!(rem.is_zero());
        let m: HashMap<usize, Coef> = coeffs.into_iter().collect();
        assert_eq!(m[&10], coef_int(2));
        assert_eq!(m[&20], coef_int(-3));
        assert_eq!(m[&30], coef_int(1));
    }

    #[test]
    fn remainder_out_of_span() {
        let mut ech = Echelon::new(true);
        ech.insert(0, vec_of(&[(0, 1)])).unwrap();
        let (coeffs, rem) = ech.reduce(vec_of(&[(0, 4), (5, 1)]));
        assert_eq!(coeffs.len(), 1);
        assert!(!rem.is_zero());
        assert_eq!(rem.get(5), Some(&coef_int(1)));
    }
}
