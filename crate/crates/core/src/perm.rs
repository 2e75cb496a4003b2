//! Symmetric-group combinatorics: lengths, Bruhat and quantum Bruhat covers,
//! Hecke products, curve-neighborhood permutations and the total order used
//! by the transition recursion.
//!
//! Conventions. A permutation `w` of rank `n` is stored in one-line notation:
//! position `p` holds `w(p)`, values `1..=n`. Composition is function
//! composition, `(uv)(x) = u(v(x))`, so right multiplication by the
//! transposition `t_{ab}` swaps the one-line entries at positions `a` and `b`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line notation {0:?} is not a permutation of 1..={1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("position pair ({a}, {b}) out of range for rank {n} (need 1 <= a < b <= n)")]
    BadPositions { a: usize, b: usize, n: usize },
    #[error("index {idx} out of range for rank {n}")]
    IndexOutOfRange { idx: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("identity permutation has no descent")]
    NoDescent,
    #[error("cannot parse permutation from {0:?}: {1}")]
    Parse(String, String),
}

/// Which of the two ambient spaces a computation refers to: the complete flag
/// variety or its smooth Schubert divisor `X` (classes `w` with `w(n) != 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    FlagVariety,
    SchubertDivisorX,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::FlagVariety => write!(f, "Fl"),
            Space::SchubertDivisorX => write!(f, "X"),
        }
    }
}

impl Space {
    pub fn parse(s: &str) -> Option<Space> {
        match s {
            "Fl" | "fl" | "FL" => Some(Space::FlagVariety),
            "X" | "x" => Some(Space::SchubertDivisorX),
            _ => None,
        }
    }
}

/// Grading data for the polynomial ring of a space of rank `n`:
/// every `x_i` has degree 1; `q_j` has degree 2 except that `q_{n-1}` has
/// degree 1 on the Schubert divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingConfig {
    pub space: Space,
    pub n: usize,
}

impl GradingConfig {
    pub fn new(space: Space, n: usize) -> Self {
        GradingConfig { space, n }
    }

    /// Degree of the quantum variable `q_j`, `1 <= j <= n-1`.
    pub fn q_degree(&self, j: usize) -> usize {
        debug_assert!((1..self.n).contains(&j));
        if self.space == Space::SchubertDivisorX && j == self.n - 1 {
            1
        } else {
            2
        }
    }

    /// Graded degree of the monomial `q^d`. This equals the pairing of the
    /// curve class `d` with the first Chern class of the space.
    pub fn q_monomial_degree(&self, d: &CurveDegree) -> usize {
        d.entries()
            .iter()
            .enumerate()
            .map(|(idx, &dj)| dj as usize * self.q_degree(idx + 1))
            .sum()
    }
}

/// An effective curve degree `d = (d_1, ..., d_{n-1})`, the exponent vector
/// of a monomial in the quantum variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveDegree {
    d: Vec<u32>,
}

impl CurveDegree {
    /// Degree vector with `n-1` entries for rank `n`.
    pub fn new(d: Vec<u32>) -> Self {
        CurveDegree { d }
    }

    pub fn zero(n: usize) -> Self {
        CurveDegree { d: vec![0; n - 1] }
    }

    /// The class `alpha_{ab} = [X_{s_a}] + ... + [X_{s_{b-1}}]`, i.e. the
    /// exponent vector of `q_a q_{a+1} ... q_{b-1}`.
    pub fn alpha(n: usize, a: usize, b: usize) -> Self {
        assert!(1 <= a && a < b && b <= n);
        let mut d = vec![0; n - 1];
        for entry in d.iter_mut().take(b - 1).skip(a - 1) {
            *entry = 1;
        }
        CurveDegree { d }
    }

    /// Rank of the ambient space (`entries` has length `n-1`).
    pub fn rank(&self) -> usize {
        self.d.len() + 1
    }

    pub fn entries(&self) -> &[u32] {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(|&x| x == 0)
    }

    /// Sum of the entries.
    pub fn total(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn add(&self, other: &CurveDegree) -> CurveDegree {
        assert_eq!(self.d.len(), other.d.len());
        CurveDegree {
            d: self.d.iter().zip(&other.d).map(|(&a, &b)| a + b).collect(),
        }
    }

    /// Componentwise subtraction; `None` if the result would not be effective.
    pub fn checked_sub(&self, other: &CurveDegree) -> Option<CurveDegree> {
        let mut out = Vec::with_capacity(self.d.len());
        for (&a, &b) in self.d.iter().zip(&other.d) {
            out.push(a.checked_sub(b)?);
        }
        Some(CurveDegree { d: out })
    }

    pub fn parse(s: &str, n: usize) -> Result<Self, PermError> {
        let d: Vec<u32> = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|e| PermError::Parse(s.to_string(), e.to_string()))?;
        if d.len() != n - 1 {
            return Err(PermError::Parse(
                s.to_string(),
                format!("expected {} entries for rank {}", n - 1, n),
            ));
        }
        Ok(CurveDegree { d })
    }
}

impl fmt::Display for CurveDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.d.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// The derived `Ord` is the lexicographic order on one-line words and is used
/// only as a container key; the semantically meaningful total order is
/// [`Permutation::precedes`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    oneline: Vec<usize>,
}

impl Permutation {
    pub fn new(oneline: Vec<usize>) -> Result<Self, PermError> {
        let n = oneline.len();
        let mut seen = vec![false; n + 1];
        for &v in &oneline {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotAPermutation(oneline.clone(), n));
            }
            seen[v] = true;
        }
        Ok(Permutation { oneline })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            oneline: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = n ... 2 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            oneline: (1..=n).rev().collect(),
        }
    }

    /// The simple reflection `s_i = t_{i,i+1}`, `1 <= i <= n-1`.
    pub fn simple(n: usize, i: usize) -> Result<Self, PermError> {
        if i == 0 || i >= n {
            return Err(PermError::IndexOutOfRange { idx: i, n });
        }
        let mut oneline: Vec<usize> = (1..=n).collect();
        oneline.swap(i - 1, i);
        Ok(Permutation { oneline })
    }

    /// The transposition `t_{ab}`, `1 <= a < b <= n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermError> {
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadPositions { a, b, n });
        }
        let mut oneline: Vec<usize> = (1..=n).collect();
        oneline.swap(a - 1, b - 1);
        Ok(Permutation { oneline })
    }

    pub fn rank(&self) -> usize {
        self.oneline.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.oneline
    }

    /// Value `w(p)` at position `p`, 1-based.
    pub fn apply(&self, p: usize) -> usize {
        self.oneline[p - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.oneline.len()];
        for (i, &v) in self.oneline.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { oneline: inv }
    }

    /// Function composition `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(Permutation {
            oneline: other.oneline.iter().map(|&v| self.oneline[v - 1]).collect(),
        })
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.oneline.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.oneline[i] > self.oneline[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w t_{ab}`: the one-line word with entries at positions `a`, `b`
    /// exchanged.
    pub fn apply_transposition_right(&self, a: usize, b: usize) -> Result<Permutation, PermError> {
        let n = self.rank();
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadPositions { a, b, n });
        }
        let mut oneline = self.oneline.clone();
        oneline.swap(a - 1, b - 1);
        Ok(Permutation { oneline })
    }

    /// `w s_i` (right multiplication by a simple reflection).
    pub fn apply_simple_right(&self, i: usize) -> Result<Permutation, PermError> {
        self.apply_transposition_right(i, i + 1)
    }

    /// Bruhat cover test `u ⋖ u t_{ab}`: true iff `u(a) < u(b)` and no
    /// intermediate position holds a value in the closed interval
    /// `[u(a), u(b)]`; equivalently the length goes up by exactly one.
    pub fn is_cover(&self, a: usize, b: usize) -> Result<bool, PermError> {
        let n = self.rank();
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadPositions { a, b, n });
        }
        let ua = self.oneline[a - 1];
        let ub = self.oneline[b - 1];
        if ua >= ub {
            return Ok(false);
        }
        Ok(!self.oneline[a..b - 1].iter().any(|&c| ua <= c && c <= ub))
    }

    /// Quantum cover test `u ⋖^q u t_{ab}`: true iff `u(a) > u(b)` and every
    /// intermediate value lies in `[u(b), u(a)]`; equivalently the length
    /// drops by exactly `ℓ(t_{ab}) = 2(b-a) - 1`.
    pub fn is_quantum_cover(&self, a: usize, b: usize) -> Result<bool, PermError> {
        let n = self.rank();
        if a == 0 || a >= b || b > n {
            return Err(PermError::BadPositions { a, b, n });
        }
        let ua = self.oneline[a - 1];
        let ub = self.oneline[b - 1];
        if ua <= ub {
            return Ok(false);
        }
        Ok(self.oneline[a..b - 1].iter().all(|&c| ub <= c && c <= ua))
    }

    /// All pairs `(a, b)` with `a <= k < b` that are (quantum) Bruhat covers
    /// of `self`.
    pub fn k_covers(&self, k: usize, quantum: bool) -> Result<Vec<(usize, usize)>, PermError> {
        let n = self.rank();
        if k == 0 || k >= n {
            return Err(PermError::IndexOutOfRange { idx: k, n });
        }
        let mut out = Vec::new();
        for a in 1..=k {
            for b in k + 1..=n {
                let hit = if quantum {
                    self.is_quantum_cover(a, b)?
                } else {
                    self.is_cover(a, b)?
                };
                if hit {
                    out.push((a, b));
                }
            }
        }
        Ok(out)
    }

    /// Membership in the Schubert divisor: `w(n) != 1`.
    pub fn in_x(&self) -> bool {
        self.oneline[self.rank() - 1] != 1
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.rank())
            .filter(|&i| self.oneline[i - 1] > self.oneline[i])
            .collect()
    }

    /// A canonical reduced word, read left to right as a product of simple
    /// reflections. Produced by repeatedly stripping the smallest right
    /// descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(w.length());
        while let Some(&i) = w.descents().first() {
            rev.push(i);
            w = w.apply_simple_right(i).expect("descent index in range");
        }
        rev.reverse();
        rev
    }

    /// Build a permutation from a word in simple reflections, multiplied left
    /// to right: `s_{i_1} s_{i_2} ... s_{i_k}` under `(uv)(x) = u(v(x))`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation, PermError> {
        let mut acc = Permutation::identity(n);
        for &i in word {
            acc = acc.compose(&Permutation::simple(n, i)?)?;
        }
        Ok(acc)
    }

    /// Hecke (Demazure) product `self • other`: fold `self` over a reduced
    /// word of `other`, where `w • s_i = w s_i` if the length goes up and `w`
    /// otherwise. Independent of the chosen reduced word.
    pub fn hecke_product(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch(self.rank(), other.rank()));
        }
        let mut acc = self.clone();
        for i in other.reduced_word() {
            acc = acc.hecke_simple(i);
        }
        Ok(acc)
    }

    fn hecke_simple(&self, i: usize) -> Permutation {
        // ℓ(w s_i) > ℓ(w) iff w(i) < w(i+1).
        if self.oneline[i - 1] < self.oneline[i] {
            self.apply_simple_right(i).expect("index in range")
        } else {
            self.clone()
        }
    }

    /// Strict total order used by the transition recursion: compare
    /// `(ℓ(u), -u(n), ..., -u(1))` lexicographically.
    pub fn precedes(&self, other: &Permutation) -> Result<bool, PermError> {
        if self.rank() != other.rank() {
            return Err(PermError::RankMismatch(self.rank(), other.rank()));
        }
        let (lu, lw) = (self.length(), other.length());
        if lu != lw {
            return Ok(lu < lw);
        }
        for p in (1..=self.rank()).rev() {
            let (a, b) = (self.oneline[p - 1], other.oneline[p - 1]);
            if a != b {
                // Comparing -u(p) < -w(p) means u(p) > w(p).
                return Ok(a > b);
            }
        }
        Ok(false)
    }

    /// Transition data of a non-identity permutation: `i` is the last descent,
    /// `j` the maximal position with `w(j) < w(i)`, and `u = w t_{ij}` covers
    /// up to `w` (`u ⋖ w`).
    pub fn transition_data(&self) -> Result<(usize, usize, Permutation), PermError> {
        let i = *self.descents().last().ok_or(PermError::NoDescent)?;
        let wi = self.oneline[i - 1];
        let j = (1..=self.rank())
            .rev()
            .find(|&p| self.oneline[p - 1] < wi)
            .expect("a descent guarantees a smaller value to the right");
        let u = self.apply_transposition_right(i, j)?;
        debug_assert!(u.is_cover(i, j).unwrap());
        Ok((i, j, u))
    }

    /// Parse `"1,4,2,3"` (one-line) or `"s:3,2"` (word in simple
    /// reflections, multiplied left to right).
    pub fn parse(s: &str, n: usize) -> Result<Permutation, PermError> {
        if let Some(word) = s.strip_prefix("s:") {
            let idx: Vec<usize> = word
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| PermError::Parse(s.to_string(), e.to_string()))?;
            return Permutation::from_word(n, &idx);
        }
        let oneline: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| PermError::Parse(s.to_string(), e.to_string()))?;
        if oneline.len() != n {
            return Err(PermError::Parse(
                s.to_string(),
                format!("expected {} entries", n),
            ));
        }
        Permutation::new(oneline)
    }

    /// All permutations of rank `n`, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                oneline: current.clone(),
            });
            // next_permutation in place
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.oneline.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The permutation `z_d` attached to an effective degree: greedily extract a
/// widest interval class `alpha_{ab}` still bounded by the remaining degree
/// (ties broken by smallest `(a, b)`) and Hecke-multiply the corresponding
/// transpositions. The result does not depend on the tie-breaking.
pub fn z_d(d: &CurveDegree) -> Permutation {
    let n = d.rank();
    let mut remaining = d.clone();
    let mut z = Permutation::identity(n);
    while let Some((a, b)) = widest_interval(&remaining) {
        let t = Permutation::transposition(n, a, b).expect("valid interval");
        z = z.hecke_product(&t).expect("same rank");
        remaining = remaining
            .checked_sub(&CurveDegree::alpha(n, a, b))
            .expect("interval bounded by remaining degree");
    }
    z
}

/// Widest interval `[a, b)` with all remaining entries positive; smallest
/// `(a, b)` among the widest. `None` once the degree is exhausted.
fn widest_interval(r: &CurveDegree) -> Option<(usize, usize)> {
    let entries = r.entries();
    let mut best: Option<(usize, usize)> = None;
    let mut a = 0;
    while a < entries.len() {
        if entries[a] == 0 {
            a += 1;
            continue;
        }
        let mut b = a;
        while b < entries.len() && entries[b] > 0 {
            b += 1;
        }
        // run of positive entries at positions a..b (0-based), i.e. the
        // interval class alpha_{a+1, b+1}
        let width = b - a;
        if best.is_none_or(|(ba, bb)| width > bb - ba) {
            best = Some((a + 1, b + 1));
        }
        a = b;
    }
    best
}

/// Label of the degree-`d` curve neighborhood of the Schubert variety indexed
/// by `u` in the flag variety: `u • z_d`.
pub fn curve_neighborhood(u: &Permutation, d: &CurveDegree) -> Result<Permutation, PermError> {
    u.hecke_product(&z_d(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(oneline: &[usize]) -> Permutation {
        Permutation::new(oneline.to_vec()).unwrap()
    }

    #[test]
    fn length_counts_inversions() {
        assert_eq!(p(&[1, 2, 3]).length(), 0);
        assert_eq!(p(&[4, 3, 2, 1]).length(), 6);
        assert_eq!(p(&[3, 1, 2]).length(), 2);
    }

    #[test]
    fn rejects_invalid_oneline() {
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1, 2]).is_err());
        assert!(Permutation::new(vec![1, 2, 4]).is_err());
    }

    #[test]
    fn right_transposition_swaps_positions() {
        assert_eq!(
            p(&[2, 1, 3]).apply_transposition_right(1, 3).unwrap(),
            p(&[3, 1, 2])
        );
        assert_eq!(
            p(&[1, 2, 3, 4]).apply_transposition_right(3, 4).unwrap(),
            p(&[1, 2, 4, 3])
        );
        let w = p(&[2, 4, 1, 3]);
        let twice = w
            .apply_transposition_right(2, 4)
            .unwrap()
            .apply_transposition_right(2, 4)
            .unwrap();
        assert_eq!(twice, w);
        assert!(w.apply_transposition_right(0, 2).is_err());
        assert!(w.apply_transposition_right(3, 3).is_err());
        assert!(w.apply_transposition_right(2, 5).is_err());
    }

    #[test]
    fn cover_examples() {
        assert!(p(&[1, 2, 3, 4]).is_cover(3, 4).unwrap());
        assert!(p(&[2, 1, 3]).is_cover(1, 3).unwrap());
        assert!(!p(&[1, 2, 3, 4]).is_cover(1, 3).unwrap());
    }

    #[test]
    fn quantum_cover_examples() {
        assert!(p(&[2, 1, 3]).is_quantum_cover(1, 2).unwrap());
        assert!(!p(&[1, 2, 3]).is_quantum_cover(1, 2).unwrap());
        assert!(p(&[3, 2, 1]).is_quantum_cover(1, 3).unwrap());
    }

    /// Length-based oracle for both cover notions.
    fn cover_by_length(u: &Permutation, a: usize, b: usize, quantum: bool) -> bool {
        let w = u.apply_transposition_right(a, b).unwrap();
        if quantum {
            let t_len = 2 * (b - a) - 1;
            u.length() >= t_len && w.length() == u.length() - t_len
        } else {
            w.length() == u.length() + 1
        }
    }

    #[test]
    fn cover_tests_match_length_oracle() {
        for n in 2..=5 {
            for u in Permutation::all(n) {
                for a in 1..=n - 1 {
                    for b in a + 1..=n {
                        assert_eq!(
                            u.is_cover(a, b).unwrap(),
                            cover_by_length(&u, a, b, false),
                            "classical cover mismatch at u={u}, a={a}, b={b}"
                        );
                        assert_eq!(
                            u.is_quantum_cover(a, b).unwrap(),
                            cover_by_length(&u, a, b, true),
                            "quantum cover mismatch at u={u}, a={a}, b={b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn k_covers_examples() {
        assert_eq!(p(&[2, 1, 3]).k_covers(1, false).unwrap(), vec![(1, 3)]);
        assert_eq!(p(&[2, 1, 3]).k_covers(1, true).unwrap(), vec![(1, 2)]);
        assert!(p(&[1, 2, 3]).k_covers(2, true).unwrap().is_empty());
        assert!(p(&[1, 2, 3]).k_covers(3, true).is_err());
    }

    #[test]
    fn in_x_examples() {
        assert!(p(&[1, 2, 4, 3]).in_x());
        assert!(!p(&[2, 3, 4, 1]).in_x());
        assert!(p(&[4, 3, 1, 2]).in_x());
    }

    #[test]
    fn longest_dominates_divisor() {
        // w_0 s_{n-1} is the top class of X
        for n in 2..=5 {
            let top = Permutation::longest(n).apply_simple_right(n - 1).unwrap();
            assert!(top.in_x());
            assert_eq!(top.length(), n * (n - 1) / 2 - 1);
        }
    }

    #[test]
    fn hecke_product_examples() {
        let s1 = p(&[2, 1, 3]);
        assert_eq!(s1.hecke_product(&s1).unwrap(), s1);
        let u = p(&[3, 1, 2]);
        assert_eq!(u.hecke_product(&Permutation::identity(3)).unwrap(), u);
        assert_eq!(s1.hecke_product(&p(&[1, 3, 2])).unwrap(), p(&[2, 3, 1]));
        assert!(s1.hecke_product(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn hecke_product_independent_of_reduced_word() {
        fn all_reduced_words(v: &Permutation) -> Vec<Vec<usize>> {
            if v.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in v.descents() {
                let shorter = v.apply_simple_right(i).unwrap();
                for mut word in all_reduced_words(&shorter) {
                    word.push(i);
                    out.push(word);
                }
            }
            out
        }
        for n in 2..=4 {
            for u in Permutation::all(n) {
                for v in Permutation::all(n) {
                    let expected = u.hecke_product(&v).unwrap();
                    for word in all_reduced_words(&v) {
                        let mut acc = u.clone();
                        for i in word {
                            acc = acc.hecke_simple(i);
                        }
                        assert_eq!(acc, expected, "u={u}, v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn hecke_product_is_associative_and_length_subadditive() {
        for n in 2..=4 {
            let all = Permutation::all(n);
            for u in &all {
                for v in &all {
                    let uv = u.hecke_product(v).unwrap();
                    assert!(uv.length() <= u.length() + v.length());
                    for w in &all {
                        let left = uv.hecke_product(w).unwrap();
                        let right = u.hecke_product(&v.hecke_product(w).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn hecke_simple_reflections_are_idempotent() {
        for n in 2..=5 {
            for u in Permutation::all(n) {
                for i in 1..n {
                    let s = Permutation::simple(n, i).unwrap();
                    let once = u.hecke_product(&s).unwrap();
                    assert_eq!(once.hecke_product(&s).unwrap(), once);
                }
            }
        }
    }

    #[test]
    fn z_d_examples() {
        assert_eq!(z_d(&CurveDegree::new(vec![1, 1])), p(&[3, 2, 1]));
        assert_eq!(z_d(&CurveDegree::new(vec![0, 2])), p(&[1, 3, 2]));
        assert_eq!(z_d(&CurveDegree::zero(4)), Permutation::identity(4));
    }

    #[test]
    fn z_d_independent_of_extraction_order() {
        // enumerate every sequence of maximal-width extractions
        fn explore(n: usize, r: &CurveDegree, z: &Permutation, out: &mut Vec<Permutation>) {
            let entries = r.entries();
            let mut candidates = Vec::new();
            let mut max_width = 0;
            let mut a = 0;
            while a < entries.len() {
                if entries[a] == 0 {
                    a += 1;
                    continue;
                }
                let mut b = a;
                while b < entries.len() && entries[b] > 0 {
                    b += 1;
                }
                candidates.push((a + 1, b + 1));
                max_width = max_width.max(b - a);
                a = b;
            }
            if candidates.is_empty() {
                out.push(z.clone());
                return;
            }
            for (a, b) in candidates {
                if b - a == max_width {
                    let t = Permutation::transposition(n, a, b).unwrap();
                    let z2 = z.hecke_product(&t).unwrap();
                    let r2 = r.checked_sub(&CurveDegree::alpha(n, a, b)).unwrap();
                    explore(n, &r2, &z2, out);
                }
            }
        }

        for n in 2..=5 {
            for d in all_degrees(n, 4) {
                let mut results = Vec::new();
                explore(n, &d, &Permutation::identity(n), &mut results);
                let canonical = z_d(&d);
                for r in results {
                    assert_eq!(r, canonical, "n={n}, d={d}");
                }
            }
        }
    }

    pub(crate) fn all_degrees(n: usize, max_total: u32) -> Vec<CurveDegree> {
        let mut out = vec![vec![]];
        for _ in 0..n - 1 {
            let mut next = Vec::new();
            for prefix in &out {
                let used: u32 = prefix.iter().sum();
                for v in 0..=(max_total - used) {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(CurveDegree::new).collect()
    }

    #[test]
    fn curve_neighborhood_examples() {
        let id = Permutation::identity(3);
        assert_eq!(
            curve_neighborhood(&id, &CurveDegree::new(vec![0, 1])).unwrap(),
            p(&[1, 3, 2])
        );
        let u = p(&[2, 3, 1]);
        assert_eq!(curve_neighborhood(&u, &CurveDegree::zero(3)).unwrap(), u);
        assert_eq!(
            curve_neighborhood(&p(&[3, 2, 1]), &CurveDegree::new(vec![1, 1])).unwrap(),
            p(&[3, 2, 1])
        );
    }

    #[test]
    fn z_d_length_bound_on_divisor() {
        // For d with d_{n-1} >= 2: ℓ(z_d) <= <d, c1(T_X)> - 1, equality only
        // for d = alpha_{in} + alpha_{n-1,n}.
        for n in 3..=6 {
            let grading = GradingConfig::new(Space::SchubertDivisorX, n);
            for d in all_degrees(n, 6) {
                if d.entries()[n - 2] < 2 {
                    continue;
                }
                let len = z_d(&d).length();
                let pairing = grading.q_monomial_degree(&d);
                assert!(len < pairing, "bound violated at n={n}, d={d}");
                if len + 1 == pairing {
                    let special = (1..=n - 1).any(|i| {
                        CurveDegree::alpha(n, i, n).add(&CurveDegree::alpha(n, n - 1, n)) == d
                    });
                    assert!(special, "equality at non-special degree n={n}, d={d}");
                }
            }
        }
    }

    #[test]
    fn precedes_examples() {
        assert!(p(&[1, 2, 3]).precedes(&p(&[2, 1, 3])).unwrap());
        let u = p(&[3, 1, 2]);
        assert!(!u.precedes(&u).unwrap());
        assert!(!p(&[1, 3, 2]).precedes(&p(&[2, 1, 3])).unwrap());
        assert!(p(&[2, 1, 3]).precedes(&p(&[1, 3, 2])).unwrap());
        assert_eq!(
            u.precedes(&Permutation::identity(4)).unwrap_err(),
            PermError::RankMismatch(3, 4)
        );
    }

    #[test]
    fn precedes_is_a_strict_total_order() {
        for n in 2..=4 {
            let all = Permutation::all(n);
            for u in &all {
                for w in &all {
                    let uw = u.precedes(w).unwrap();
                    let wu = w.precedes(u).unwrap();
                    if u == w {
                        assert!(!uw && !wu);
                    } else {
                        assert!(uw ^ wu, "exactly one of u≺w, w≺u for u={u}, w={w}");
                    }
                }
            }
            // transitivity
            for u in &all {
                for v in &all {
                    for w in &all {
                        if u.precedes(v).unwrap() && v.precedes(w).unwrap() {
                            assert!(u.precedes(w).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transition_data_examples() {
        let (i, j, u) = p(&[1, 2, 4, 3]).transition_data().unwrap();
        assert_eq!((i, j), (3, 4));
        assert_eq!(u, p(&[1, 2, 3, 4]));

        let (i, j, u) = p(&[1, 4, 3, 2]).transition_data().unwrap();
        assert_eq!((i, j), (3, 4));
        assert_eq!(u, p(&[1, 4, 2, 3]));

        let (i, j, u) = p(&[2, 1, 3]).transition_data().unwrap();
        assert_eq!((i, j), (1, 2));
        assert_eq!(u, p(&[1, 2, 3]));

        assert_eq!(
            Permutation::identity(3).transition_data().unwrap_err(),
            PermError::NoDescent
        );
    }

    #[test]
    fn transition_data_output_precedes_input() {
        for n in 2..=5 {
            for w in Permutation::all(n) {
                if w.is_identity() {
                    continue;
                }
                let (i, j, u) = w.transition_data().unwrap();
                assert!(u.precedes(&w).unwrap());
                assert_eq!(u.apply_transposition_right(i, j).unwrap(), w);
                assert!(u.is_cover(i, j).unwrap());
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Permutation::parse("1,4,2,3", 4).unwrap(), p(&[1, 4, 2, 3]));
        // s:3,2 composes as s_3 ∘ s_2 under (uv)(x) = u(v(x))
        assert_eq!(Permutation::parse("s:3,2", 4).unwrap(), p(&[1, 4, 2, 3]));
        assert!(Permutation::parse("1,2", 3).is_err());
        assert!(Permutation::parse("s:5", 4).is_err());
        assert!(Permutation::parse("1,x,2", 3).is_err());
    }

    #[test]
    fn grading_degrees() {
        let fl = GradingConfig::new(Space::FlagVariety, 4);
        let x = GradingConfig::new(Space::SchubertDivisorX, 4);
        assert_eq!(fl.q_degree(3), 2);
        assert_eq!(x.q_degree(3), 1);
        assert_eq!(x.q_degree(2), 2);
        let d = CurveDegree::new(vec![1, 0, 2]);
        assert_eq!(fl.q_monomial_degree(&d), 6);
        assert_eq!(x.q_monomial_degree(&d), 4);
    }

    #[test]
    fn reduced_word_roundtrip() {
        for n in 2..=5 {
            for w in Permutation::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(n, &word).unwrap(), w);
            }
        }
    }
}
