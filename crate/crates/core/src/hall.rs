//! Hall bases of free nilpotent Lie algebras.
//!
//! Elements of length `s` are ordered after all elements of smaller length,
//! and within a length by `(left rank, right rank)`. Generators come first in
//! the order `e1 < e2 < ... < em`. Structure constants are obtained by
//! expanding brackets into the free associative algebra truncated at degree
//! `k` and solving for coordinates in the expansions of the basis.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rref, Matrix, Rational};
use crate::liealg::LieAlgebra;

/// A bracket tree over the generators `e1..em` (1-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum HallTree {
    Gen(usize),
    Bracket(Box<HallTree>, Box<HallTree>),
}

impl HallTree {
    pub fn gen(i: usize) -> Self {
        HallTree::Gen(i)
    }

    pub fn bracket(left: HallTree, right: HallTree) -> Self {
        HallTree::Bracket(Box::new(left), Box::new(right))
    }

    pub fn length(&self) -> usize {
        match self {
            HallTree::Gen(_) => 1,
            HallTree::Bracket(l, r) => l.length() + r.length(),
        }
    }
}

impl fmt::Display for HallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HallTree::Gen(i) => write!(f, "e{i}"),
            HallTree::Bracket(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Gen(usize),
    Bracket(usize, usize),
}

/// Ordered Hall basis of the free `k`-step nilpotent Lie algebra on `m` generators.
#[derive(Clone, Debug)]
pub struct HallBasis {
    m: usize,
    k: usize,
    nodes: Vec<Node>,
    lengths: Vec<usize>,
    grading: Vec<Range<usize>>,
    index: HashMap<Node, usize>,
}

/// `d_m(s)`: the number of Hall basis elements of length `s`, from
/// `s d_m(s) = m^s - sum_{r | s, r < s} r d_m(r)`.
///
/// Panics if `m^s` overflows `u64`.
pub fn witt_dim(m: usize, s: usize) -> u64 {
    assert!(s >= 1, "length must be positive");
    let m = m as u64;
    let mut d: Vec<u64> = vec![0; s + 1];
    for t in 1..=s {
        let mut acc = m
            .checked_pow(t as u32)
            .expect("m^s overflows u64");
        for r in (1..t).filter(|r| t % r == 0) {
            acc -= r as u64 * d[r];
        }
        debug_assert_eq!(acc % t as u64, 0);
        d[t] = acc / t as u64;
    }
    d[s]
}

/// `dim n_{m,k} = sum_{s <= k} d_m(s)`.
pub fn free_dim(m: usize, k: usize) -> u64 {
    (1..=k).map(|s| witt_dim(m, s)).sum()
}

impl HallBasis {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if m < 2 || k < 1 {
            return Err(Error::InvalidArgument(format!(
                "Hall basis needs m >= 2 and k >= 1, got m={m}, k={k}"
            )));
        }
        let mut nodes: Vec<Node> = (1..=m).map(Node::Gen).collect();
        let mut lengths = vec![1; m];
        let mut grading: Vec<_> = std::iter::once(0..m).collect();
        for r in 2..=k {
            let mut fresh = Vec::new();
            // E > F forces len(E) >= len(F)
            for s in r.div_ceil(2)..r {
                for e in grading[s - 1].clone() {
                    for f in grading[r - s - 1].clone() {
                        if e <= f {
                            continue;
                        }
                        if let Node::Bracket(_, h) = nodes[e] {
                            if f < h {
                                continue;
                            }
                        }
                        fresh.push((e, f));
                    }
                }
            }
            fresh.sort_unstable();
            let start = nodes.len();
            for (e, f) in fresh {
                nodes.push(Node::Bracket(e, f));
                lengths.push(r);
            }
            grading.push(start..nodes.len());
        }
        let index = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        Ok(HallBasis {
            m,
            k,
            nodes,
            lengths,
            grading,
            index,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn length(&self, rank: usize) -> usize {
        self.lengths[rank]
    }

    /// Index ranges of `p(m, s)` for `s = 1..=k`.
    pub fn grading(&self) -> &[Range<usize>] {
        &self.grading
    }

    pub fn degree(&self, s: usize) -> Range<usize> {
        self.grading[s - 1].clone()
    }

    /// `(left, right)` ranks of a bracket element, `None` for generators.
    pub fn children(&self, rank: usize) -> Option<(usize, usize)> {
        match self.nodes[rank] {
            Node::Gen(_) => None,
            Node::Bracket(l, r) => Some((l, r)),
        }
    }

    pub fn tree(&self, rank: usize) -> HallTree {
        match self.nodes[rank] {
            Node::Gen(i) => HallTree::Gen(i),
            Node::Bracket(l, r) => HallTree::bracket(self.tree(l), self.tree(r)),
        }
    }

    pub fn trees(&self) -> Vec<HallTree> {
        (0..self.len()).map(|r| self.tree(r)).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.trees().iter().map(ToString::to_string).collect()
    }

    pub fn rank_of(&self, t: &HallTree) -> Option<usize> {
        let node = match t {
            HallTree::Gen(i) => Node::Gen(*i),
            HallTree::Bracket(l, r) => Node::Bracket(self.rank_of(l)?, self.rank_of(r)?),
        };
        self.index.get(&node).copied()
    }

    /// Checks conditions (1) `left > right` and (2) `right >= H` when
    /// `left = [G, H]`, recursively, against this basis' total order.
    pub fn satisfies_hall_conditions(&self, t: &HallTree) -> bool {
        self.check_tree(t).is_some()
    }

    fn check_tree(&self, t: &HallTree) -> Option<usize> {
        match t {
            HallTree::Gen(i) => (1..=self.m).contains(i).then(|| i - 1),
            HallTree::Bracket(l, r) => {
                let e = self.check_tree(l)?;
                let f = self.check_tree(r)?;
                if e <= f || t.length() > self.k {
                    return None;
                }
                if let Some((_, h)) = self.children(e) {
                    if f < h {
                        return None;
                    }
                }
                self.index.get(&Node::Bracket(e, f)).copied()
            }
        }
    }

    /// Rows are the expansions of the length-`s` elements, columns the words
    /// of length `s` in lexicographic order.
    pub fn expansion_matrix(&self, s: usize) -> (Matrix, Vec<Word>) {
        let exps = self.expansions();
        let range = self.degree(s);
        let words = all_words(self.m, s);
        let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut mat = Matrix::zeros(range.len(), words.len());
        for (row, rank) in range.enumerate() {
            for (w, c) in exps[rank].terms() {
                mat[(row, col[w])] = c.clone();
            }
        }
        (mat, words)
    }

    fn expansions(&self) -> Vec<NcPoly> {
        let mut out: Vec<NcPoly> = Vec::with_capacity(self.len());
        for rank in 0..self.len() {
            let p = match self.nodes[rank] {
                Node::Gen(i) => NcPoly::word(vec![i]),
                Node::Bracket(l, r) => out[l].commutator(&out[r], self.k),
            };
            out.push(p);
        }
        out
    }
}

pub fn hall_basis(m: usize, k: usize) -> Result<HallBasis> {
    HallBasis::new(m, k)
}

/// A word in the generators, 1-based.
pub type Word = Vec<usize>;

fn all_words(m: usize, s: usize) -> Vec<Word> {
    let mut words: Vec<Word> = vec![Vec::new()];
    for _ in 0..s {
        words = words
            .into_iter()
            .flat_map(|w| {
                (1..=m).map(move |g| {
                    let mut w = w.clone();
                    w.push(g);
                    w
                })
            })
            .collect();
    }
    words
}

/// Element of the free associative algebra: a finite sum of words with
/// nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        NcPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[usize]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Concatenation product, dropping words longer than `k`.
    pub fn mul_truncated(&self, other: &NcPoly, k: usize) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() + b.len() > k {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// `self * other - other * self`, truncated at degree `k`.
    pub fn commutator(&self, other: &NcPoly, k: usize) -> NcPoly {
        self.mul_truncated(other, k)
            .add(&other.mul_truncated(self, k).scale(&-Rational::one()))
    }
}

/// Image of a bracket tree in the free associative algebra truncated at `k`.
pub fn expand(t: &HallTree, k: usize) -> NcPoly {
    match t {
        HallTree::Gen(i) => NcPoly::word(vec![*i]),
        HallTree::Bracket(l, r) => expand(l, k).commutator(&expand(r, k), k),
    }
}

/// Solves `c * rows = target` for one homogeneous degree.
struct DegreeSolver {
    words: HashMap<Word, usize>,
    rows: Matrix,
    pivots: Vec<usize>,
    inverse: Matrix,
}

impl DegreeSolver {
    fn new(basis: &HallBasis, exps: &[NcPoly], s: usize) -> Result<Self> {
        let range = basis.degree(s);
        let mut words: HashMap<Word, usize> = HashMap::new();
        for rank in range.clone() {
            for (w, _) in exps[rank].terms() {
                let next = words.len();
                words.entry(w.clone()).or_insert(next);
            }
        }
        let mut rows = Matrix::zeros(range.len(), words.len());
        for (row, rank) in range.enumerate() {
            for (w, c) in exps[rank].terms() {
                rows[(row, words[w])] = c.clone();
            }
        }
        let r = rref(&rows);
        if r.rank != rows.rows() {
            return Err(Error::Inconsistent(format!(
                "Hall expansions of length {s} are linearly dependent (rank {} < {})",
                r.rank,
                rows.rows()
            )));
        }
        let square = Matrix::from_fn(rows.rows(), rows.rows(), |i, j| rows[(i, r.pivots[j])].clone());
        let inverse = square.inverse()?;
        Ok(DegreeSolver {
            words,
            rows,
            pivots: r.pivots,
            inverse,
        })
    }

    fn solve(&self, target: &NcPoly) -> Result<Vec<Rational>> {
        let mut rhs = vec![Rational::zero(); self.words.len()];
        for (w, c) in target.terms() {
            match self.words.get(w) {
                Some(&i) => rhs[i] = c.clone(),
                None => {
                    return Err(Error::Inconsistent(format!(
                        "word {w:?} is outside the span of the Hall expansions"
                    )))
                }
            }
        }
        let picked: Vec<Rational> = self.pivots.iter().map(|&p| rhs[p].clone()).collect();
        // c = picked * inverse
        let n = self.inverse.rows();
        let coeffs: Vec<Rational> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| &picked[i] * &self.inverse[(i, j)])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        let back = self.rows.transpose().mul_vec(&coeffs);
        if back != rhs {
            return Err(Error::Inconsistent(
                "bracket expansion is not a combination of Hall expansions".into(),
            ));
        }
        Ok(coeffs)
    }
}

/// The free `k`-step nilpotent Lie algebra `n_{m,k}` on its Hall basis.
pub fn structure_constants(m: usize, k: usize) -> Result<LieAlgebra> {
    let basis = HallBasis::new(m, k)?;
    structure_constants_for(&basis)
}

pub fn structure_constants_for(basis: &HallBasis) -> Result<LieAlgebra> {
    let exps = basis.expansions();
    let solvers = (1..=basis.k())
        .map(|s| DegreeSolver::new(basis, &exps, s))
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let mut table = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = basis.length(i) + basis.length(j);
            if s > basis.k() {
                continue;
            }
            let target = exps[i].commutator(&exps[j], basis.k());
            if target.is_zero() {
                continue;
            }
            let coeffs = solvers[s - 1].solve(&target)?;
            let offset = basis.degree(s).start;
            let terms: Vec<(usize, Rational)> = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (offset + l, c))
                .collect();
            table.push((i, j, terms));
        }
    }
    LieAlgebra::new(basis.names(), table)
}

/// The sets `U` (length 4) and `U~` (length `k`) of Hall elements built from
/// `[[[e_i, e_j], e_l], e_m]` with `j < i` and `l >= j`, then bracketed
/// `k - 4` more times with `e_m` on the right.
#[derive(Clone, Debug)]
pub struct TailSet {
    pub u: Vec<HallTree>,
    pub u_tilde: Vec<HallTree>,
}

pub fn tail_set(m: usize, k: usize) -> Result<TailSet> {
    if m < 2 || k < 5 {
        return Err(Error::InvalidArgument(format!(
            "tail set needs m >= 2 and k >= 5, got m={m}, k={k}"
        )));
    }
    let mut u = Vec::new();
    for j in 1..=m {
        for i in j + 1..=m {
            for l in j..=m {
                let t = HallTree::bracket(
                    HallTree::bracket(
                        HallTree::bracket(HallTree::gen(i), HallTree::gen(j)),
                        HallTree::gen(l),
                    ),
                    HallTree::gen(m),
                );
                u.push(t);
            }
        }
    }
    let u_tilde = u
        .iter()
        .map(|x| {
            let mut t = x.clone();
            for _ in 0..k - 4 {
                t = HallTree::bracket(t, HallTree::gen(m));
            }
            t
        })
        .collect();
    Ok(TailSet { u, u_tilde })
}

/// `sum_{j=1}^m (m - j + 1)(m - j)`, the size of `U`; equals `m(m^2 - 1)/3`.
pub fn tail_set_count(m: usize) -> u64 {
    (1..=m as u64).map(|j| (m as u64 - j + 1) * (m as u64 - j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn witt_dim_examples() {
        assert_eq!(witt_dim(3, 2), 3);
        assert_eq!(witt_dim(3, 3), 8);
        assert_eq!(witt_dim(2, 5), 6);
        assert_eq!(witt_dim(2, 1), 2);
        assert_eq!(witt_dim(3, 4), 18);
    }

    #[test]
    fn small_bases() {
        let b = hall_basis(2, 2).unwrap();
        assert_eq!(b.names(), vec!["e1", "e2", "[e2,e1]"]);

        let b = hall_basis(2, 3).unwrap();
        let lengths: Vec<usize> = (0..b.len()).map(|r| b.length(r)).collect();
        assert_eq!(lengths, vec![1, 1, 2, 3, 3]);
        assert_eq!(b.names()[3], "[[e2,e1],e1]");
        assert_eq!(b.names()[4], "[[e2,e1],e2]");

        assert_eq!(hall_basis(3, 2).unwrap().len(), 6);
        assert!(hall_basis(1, 2).is_err());
        assert!(hall_basis(2, 0).is_err());
    }

    #[test]
    fn expansion_examples() {
        let e1 = HallTree::gen(1);
        let e2 = HallTree::gen(2);
        assert_eq!(expand(&e1, 3), NcPoly::word(vec![1]));
        let c = HallTree::bracket(e2.clone(), e1.clone());
        assert_eq!(
            expand(&c, 3),
            NcPoly::from_terms([(vec![2, 1], rat(1)), (vec![1, 2], rat(-1))])
        );
        let cc = HallTree::bracket(c, e1);
        assert_eq!(
            expand(&cc, 3),
            NcPoly::from_terms([
                (vec![2, 1, 1], rat(1)),
                (vec![1, 2, 1], rat(-2)),
                (vec![1, 1, 2], rat(1)),
            ])
        );
        // truncation below the length kills everything
        assert!(expand(&cc, 2).is_zero());
    }

    #[test]
    fn heisenberg_from_hall() {
        let g = structure_constants(2, 2).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.nonzero_pairs().len(), 1);
        assert_eq!(g.bracket_basis(1, 0), vec![rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn n32_has_three_generator_brackets() {
        let g = structure_constants(3, 2).unwrap();
        assert_eq!(g.nonzero_pairs().len(), 3);
    }

    #[test]
    fn tail_set_sizes() {
        assert_eq!(tail_set(2, 5).unwrap().u_tilde.len(), 2);
        assert_eq!(tail_set(3, 5).unwrap().u_tilde.len(), 8);
        assert!(tail_set(3, 4).is_err());
        for m in 2..=4 {
            let t = tail_set(m, 6).unwrap();
            assert_eq!(t.u.len() as u64, tail_set_count(m));
            assert_eq!(t.u.len(), t.u_tilde.len());
            assert!(t.u_tilde.iter().all(|x| x.length() == 6));
        }
    }

    #[test]
    fn tail_elements_are_hall() {
        let b = hall_basis(3, 5).unwrap();
        let t = tail_set(3, 5).unwrap();
        for x in t.u.iter().chain(&t.u_tilde) {
            assert!(b.satisfies_hall_conditions(x), "{x}");
            assert!(b.rank_of(x).is_some());
        }
        // [e1,e2] violates condition (1)
        let bad = HallTree::bracket(HallTree::gen(1), HallTree::gen(2));
        assert!(!b.satisfies_hall_conditions(&bad));
        // [[e3,e2],e1] violates condition (2)
        let bad = HallTree::bracket(
            HallTree::bracket(HallTree::gen(3), HallTree::gen(2)),
            HallTree::gen(1),
        );
        assert!(!b.satisfies_hall_conditions(&bad));
    }
}
