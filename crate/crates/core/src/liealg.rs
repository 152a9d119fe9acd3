//! Lie algebras given by structure constants on an ordered basis.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    format_rational, is_zero_vec, kernel, parse_rational, rat, unit_vec, zero_vec, Matrix,
    Rational, Subspace,
};
use crate::hall;
use crate::metric::BilinearForm;

type Terms = Vec<(usize, Rational)>;

/// Finite-dimensional Lie algebra `[b_i, b_j] = sum_k c_ij^k b_k`.
///
/// The full antisymmetric table is stored; the Jacobi identity is checked
/// when the algebra is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    table: Vec<Vec<Terms>>,
}

fn normalize(terms: Terms, dim: usize) -> Result<Terms> {
    let mut dense = zero_vec(dim);
    for (k, c) in terms {
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "bracket term index {} out of range",
                k + 1
            )));
        }
        dense[k] += c;
    }
    Ok(sparse(&dense))
}

fn sparse(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Builds an algebra from `(i, j, terms)` entries, 0-based, meaning
    /// `[b_i, b_j] = sum terms`. Each unordered pair may appear at most once.
    pub fn new(names: Vec<String>, entries: Vec<(usize, usize, Terms)>) -> Result<Self> {
        let n = names.len();
        let mut table = vec![vec![Terms::new(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, terms) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "bracket pair ({}, {}) out of range",
                    i + 1,
                    j + 1
                )));
            }
            let terms = normalize(terms, n)?;
            if i == j {
                if !terms.is_empty() {
                    return Err(Error::InvalidArgument(format!(
                        "[b{0}, b{0}] must vanish",
                        i + 1
                    )));
                }
                continue;
            }
            if seen[i][j] {
                return Err(Error::InvalidArgument(format!(
                    "bracket pair ({}, {}) given twice",
                    i + 1,
                    j + 1
                )));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            table[j][i] = terms.iter().map(|(k, c)| (*k, -c)).collect();
            table[i][j] = terms;
        }
        let g = LieAlgebra { names, table };
        g.check_jacobi()?;
        Ok(g)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let a = self.bracket_terms_vec(&self.table[i][j], l);
                    let b = self.bracket_terms_vec(&self.table[j][l], i);
                    let c = self.bracket_terms_vec(&self.table[l][i], j);
                    let s: Vec<Rational> = (0..n).map(|p| &a[p] + &b[p] + &c[p]).collect();
                    if !is_zero_vec(&s) {
                        return Err(Error::Jacobi(i + 1, j + 1, l + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[sum terms, b_l]` as a dense vector.
    fn bracket_terms_vec(&self, terms: &Terms, l: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (k, c) in terms {
            for (p, d) in &self.table[*k][l] {
                out[*p] += c * d;
            }
        }
        out
    }

    pub fn abelian(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra::new(names, Vec::new()).expect("abelian algebra")
    }

    /// Builds an algebra with names `e1..en` from 1-based bracket rules
    /// `[e_i, e_j] = e_k` with unit coefficients.
    pub fn from_unit_brackets(n: usize, rules: &[(usize, usize, usize)]) -> Result<Self> {
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        let entries = rules
            .iter()
            .map(|&(i, j, k)| (i - 1, j - 1, vec![(k - 1, Rational::one())]))
            .collect();
        LieAlgebra::new(names, entries)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Sparse `[b_i, b_j]`.
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j]
            .iter()
            .find(|(p, _)| *p == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (k, c) in &self.table[i][j] {
            out[*k] = c.clone();
        }
        out
    }

    /// Pairs `i < j` with a nonzero bracket.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.table[i][j].is_empty() {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.nonzero_pairs().is_empty()
    }

    fn check_vec(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let mut out = zero_vec(self.dim());
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = &self.table[i][j];
                if t.is_empty() {
                    continue;
                }
                let s = xi * yj;
                for (k, c) in t {
                    out[*k] += &s * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`; column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[Rational]) -> Result<Matrix> {
        self.check_vec(x)?;
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.bracket(x, &unit_vec(n, j)))
            .collect::<Result<_>>()?;
        Ok(Matrix::from_columns(n, &cols))
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit_vec(self.dim(), i)).expect("basis vector")
    }

    /// `span{[s, t] : s in S, t in T}`.
    pub fn bracket_span(&self, s: &Subspace, t: &Subspace) -> Result<Subspace> {
        let mut vs = Vec::new();
        for a in s.basis_vectors() {
            for b in t.basis_vectors() {
                let c = self.bracket(&a, &b)?;
                if !is_zero_vec(&c) {
                    vs.push(c);
                }
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        let g = Subspace::full(self.dim());
        s.contains_subspace(&self.bracket_span(&g, s)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        s.contains_subspace(&self.bracket_span(s, s)?)
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_mod(&Subspace::zero(self.dim()))
    }

    /// `{x : [x, g] in S}`.
    fn centralizer_mod(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let proj = s.quotient_data().projection;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..n {
            let block = &proj * &self.ad_basis(j);
            rows.extend(block.row_vectors());
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        kernel(&Matrix::from_rows(rows).expect("uniform rows"))
    }

    pub fn series(&self) -> SeriesReport {
        let n = self.dim();
        let g = Subspace::full(n);
        let mut lower = vec![g.clone()];
        for _ in 0..=n {
            let last = lower.last().expect("nonempty");
            let next = self.bracket_span(&g, last).expect("same ambient");
            if &next == last {
                break;
            }
            lower.push(next);
        }
        let mut upper = vec![Subspace::zero(n)];
        for _ in 0..=n {
            let last = upper.last().expect("nonempty");
            let next = self.centralizer_mod(last);
            if &next == last {
                break;
            }
            upper.push(next);
        }
        let nilpotency_class = lower
            .last()
            .filter(|s| s.is_zero())
            .map(|_| lower.len() - 1);
        let two_step_solvable = self.derived(2).expect("order 2").is_zero();
        SeriesReport {
            lower,
            upper,
            nilpotency_class,
            two_step_solvable,
        }
    }

    /// `g' = [g, g]` for order 1, `g'' = [g', g']` for order 2.
    pub fn derived(&self, order: usize) -> Result<Subspace> {
        let g = Subspace::full(self.dim());
        let d1 = self.bracket_span(&g, &g)?;
        match order {
            1 => Ok(d1),
            2 => self.bracket_span(&d1, &d1),
            _ => Err(Error::InvalidArgument(format!(
                "derived order must be 1 or 2, got {order}"
            ))),
        }
    }

    /// `g / ideal` on the non-pivot coordinates of the ideal's basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: ideal.ambient_dim(),
            });
        }
        if !self.is_ideal(ideal)? {
            return Err(Error::NotIdeal);
        }
        let q = ideal.quotient_data();
        let names: Vec<String> = q.complement.iter().map(|&c| self.names[c].clone()).collect();
        let mut entries = Vec::new();
        for (a, &ca) in q.complement.iter().enumerate() {
            for (b, &cb) in q.complement.iter().enumerate().skip(a + 1) {
                let img = q.projection.mul_vec(&self.bracket_basis(ca, cb));
                let terms = sparse(&img);
                if !terms.is_empty() {
                    entries.push((a, b, terms));
                }
            }
        }
        let algebra = LieAlgebra::new(names, entries)?;
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = q.projection.mul_vec(&self.bracket_basis(i, j));
                let pi = q.projection.column(i);
                let pj = q.projection.column(j);
                if lhs != algebra.bracket(&pi, &pj)? {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        Ok(Quotient {
            algebra,
            projection: q.projection,
        })
    }

    /// Finds `phi(b_i) = sign_i * c_{perm_i}` that is an isomorphism onto `other`.
    /// Exhaustive with pruning; intended for small algebras.
    pub fn signed_relabeling(&self, other: &LieAlgebra) -> Option<Vec<(usize, i8)>> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut assign: Vec<(usize, i8)> = Vec::new();
        let mut used = vec![false; self.dim()];
        if self.relabel_search(other, &mut assign, &mut used) {
            Some(assign)
        } else {
            None
        }
    }

    fn relabel_search(
        &self,
        other: &LieAlgebra,
        assign: &mut Vec<(usize, i8)>,
        used: &mut [bool],
    ) -> bool {
        let t = assign.len();
        if t == self.dim() {
            return true;
        }
        for target in 0..self.dim() {
            if used[target] {
                continue;
            }
            for sign in [1i8, -1] {
                assign.push((target, sign));
                if self.relabel_consistent(other, assign) {
                    used[target] = true;
                    if self.relabel_search(other, assign, used) {
                        return true;
                    }
                    used[target] = false;
                }
                assign.pop();
            }
        }
        false
    }

    /// Checks every pair among the assigned indices whose bracket is
    /// supported on assigned indices.
    fn relabel_consistent(&self, other: &LieAlgebra, assign: &[(usize, i8)]) -> bool {
        let t = assign.len();
        let n = self.dim();
        let image = |terms: &[(usize, Rational)]| -> Option<Vec<Rational>> {
            let mut v = zero_vec(n);
            for (k, c) in terms {
                let (p, s) = assign.get(*k)?;
                v[*p] += c * rat(*s as i64);
            }
            Some(v)
        };
        for i in 0..t {
            for j in i + 1..t {
                let Some(lhs) = image(&self.table[i][j]) else {
                    continue;
                };
                let (pi, si) = assign[i];
                let (pj, sj) = assign[j];
                let s = rat((si * sj) as i64);
                let rhs: Vec<Rational> = other.bracket_basis(pi, pj).iter().map(|c| c * &s).collect();
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> AlgebraJson {
        let brackets = self
            .nonzero_pairs()
            .into_iter()
            .map(|(i, j)| BracketJson {
                i: i + 1,
                j: j + 1,
                terms: self.table[i][j]
                    .iter()
                    .map(|(k, c)| TermJson {
                        k: k + 1,
                        c: format_rational(c),
                    })
                    .collect(),
            })
            .collect();
        AlgebraJson {
            dim: self.dim(),
            basis: self.names.clone(),
            brackets,
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        if j.basis.len() != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                got: j.basis.len(),
            });
        }
        let one_based = |x: usize| -> Result<usize> {
            if x == 0 || x > j.dim {
                Err(Error::InvalidArgument(format!(
                    "index {x} outside 1..={}",
                    j.dim
                )))
            } else {
                Ok(x - 1)
            }
        };
        let mut entries = Vec::new();
        for b in &j.brackets {
            let terms = b
                .terms
                .iter()
                .map(|t| Ok((one_based(t.k)?, parse_rational(&t.c)?)))
                .collect::<Result<Terms>>()?;
            entries.push((one_based(b.i)?, one_based(b.j)?, terms));
        }
        LieAlgebra::new(j.basis.clone(), entries)
    }
}

/// Result of [`LieAlgebra::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub projection: Matrix,
}

/// Lower series `C^0 ⊇ C^1 ⊇ ...` and upper series `C_0 ⊆ C_1 ⊆ ...`,
/// each listed until it stabilizes.
#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub lower: Vec<Subspace>,
    pub upper: Vec<Subspace>,
    pub nilpotency_class: Option<usize>,
    pub two_step_solvable: bool,
}

impl SeriesReport {
    pub fn lower_at(&self, r: usize) -> &Subspace {
        &self.lower[r.min(self.lower.len() - 1)]
    }

    pub fn upper_at(&self, r: usize) -> &Subspace {
        &self.upper[r.min(self.upper.len() - 1)]
    }

    pub fn center(&self) -> &Subspace {
        self.upper_at(1)
    }

    /// Smallest index past which both series are constant.
    pub fn stable_length(&self) -> usize {
        self.lower.len().max(self.upper.len())
    }
}

/// JSON schema of a Lie algebra, 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    pub c: String,
}

/// `h_n`: basis `X1..Xn, Y1..Yn, Z` with `[X_i, Y_i] = Z`.
pub fn heisenberg(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("Heisenberg index must be >= 1".into()));
    }
    let mut names: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    names.extend((1..=n).map(|i| format!("Y{i}")));
    names.push("Z".into());
    let entries = (0..n)
        .map(|i| (i, n + i, vec![(2 * n, Rational::one())]))
        .collect();
    LieAlgebra::new(names, entries)
}

/// `n_{3,2}` from the table `[e1,e2]=e4, [e1,e3]=e5, [e2,e3]=e6`.
pub fn n32() -> LieAlgebra {
    LieAlgebra::from_unit_brackets(6, &[(1, 2, 4), (1, 3, 5), (2, 3, 6)]).expect("n32 table")
}

/// `n_{2,3}` from the table `[e1,e2]=e3, [e1,e3]=e4, [e2,e3]=e5`.
pub fn n23() -> LieAlgebra {
    LieAlgebra::from_unit_brackets(5, &[(1, 2, 3), (1, 3, 4), (2, 3, 5)]).expect("n23 table")
}

/// Free `k`-step nilpotent algebra on `m` generators, Hall basis.
pub fn free_nilpotent(m: usize, k: usize) -> Result<LieAlgebra> {
    hall::structure_constants(m, k)
}

/// Free metabelian `k`-step nilpotent algebra: `n_{m,k} / n_{m,k}''`.
pub fn free_metabelian(m: usize, k: usize) -> Result<LieAlgebra> {
    let g = free_nilpotent(m, k)?;
    let dd = g.derived(2)?;
    Ok(g.quotient(&dd)?.algebra)
}

/// `g ⋉ g*` via the coadjoint action, with the pairing `<(x,f),(y,h)> = f(y) + h(x)`.
pub fn cotangent_double(g: &LieAlgebra) -> (LieAlgebra, BilinearForm) {
    let n = g.dim();
    let mut names: Vec<String> = g.names().to_vec();
    names.extend(g.names().iter().map(|s| format!("{s}*")));
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let t = g.terms(i, j).to_vec();
            if !t.is_empty() {
                entries.push((i, j, t));
            }
        }
    }
    // [b_i, b^j] = -sum_l c_il^j b^l
    for i in 0..n {
        for j in 0..n {
            let terms: Terms = (0..n)
                .map(|l| (n + l, -g.structure_constant(i, l, j)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                entries.push((i, n + j, terms));
            }
        }
    }
    let double = LieAlgebra::new(names, entries).expect("cotangent double satisfies Jacobi");
    let gram = Matrix::from_fn(2 * n, 2 * n, |a, b| {
        if a + n == b || b + n == a {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let form = BilinearForm::new(gram).expect("symmetric pairing");
    (double, form)
}
