//! Ad-invariant symmetric bilinear forms.
//!
//! The invariance identity `<[x,y],z> + <y,[x,z]> = 0` is linear in the Gram
//! entries, so the invariant forms of an algebra are the kernel of an explicit
//! linear system. Whether that kernel contains a nondegenerate form is decided
//! by evaluating `det(sum_i l_i B_i)` on the grid `prod_i {0..r_i}` with
//! `r_i = rank B_i <= n`. The determinant has degree at most `r_i` in `l_i`,
//! so vanishing on that grid means it vanishes identically.
//!
//! Symmetric matrices are coordinatized by their upper-triangular entries in
//! row-major order.

use std::env;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{det, kernel, rref, zero_vec, Matrix, Rational, Subspace};
use crate::liealg::{free_metabelian, free_nilpotent, LieAlgebra};

pub const DEFAULT_GRID_BUDGET: u64 = 10_000_000;

const PROBES: usize = 32;
const PROBE_SEED: u64 = 0x5eed;

/// Reads `LIEFREE_GRID_BUDGET`, falling back to [`DEFAULT_GRID_BUDGET`].
pub fn grid_budget_from_env() -> u64 {
    env::var("LIEFREE_GRID_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GRID_BUDGET)
}

/// Symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pair(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.gram.mul_vec(y);
        x.iter()
            .zip(&gy)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn det(&self) -> Rational {
        det(&self.gram).expect("square gram")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// `S^⊥ = {x : <x, v> = 0 for all v in S}`.
    pub fn perp(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: s.ambient_dim(),
            });
        }
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        if s.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        let rows: Vec<Vec<Rational>> = s
            .basis_vectors()
            .iter()
            .map(|v| self.gram.mul_vec(v))
            .collect();
        Ok(kernel(&Matrix::from_rows(rows)?))
    }
}

/// Free function form of [`BilinearForm::perp`].
pub fn perp(form: &BilinearForm, s: &Subspace) -> Result<Subspace> {
    form.perp(s)
}

/// The normalized invariant metric on `n_{3,2}`: antidiagonal `(1, -1, 1, 1, -1, 1)`.
pub fn b32() -> BilinearForm {
    BilinearForm::new(Matrix::from_i64(&[
        &[0, 0, 0, 0, 0, 1],
        &[0, 0, 0, 0, -1, 0],
        &[0, 0, 0, 1, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, -1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
    ]))
    .expect("symmetric")
}

/// The normalized invariant metric on `n_{2,3}`: antidiagonal `(1, -1, 1, -1, 1)`.
pub fn b23() -> BilinearForm {
    BilinearForm::new(Matrix::from_i64(&[
        &[0, 0, 0, 0, 1],
        &[0, 0, 0, -1, 0],
        &[0, 0, 1, 0, 0],
        &[0, -1, 0, 0, 0],
        &[1, 0, 0, 0, 0],
    ]))
    .expect("symmetric")
}

pub fn sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Coordinate of the entry `(p, q)`, `p <= q`, among upper-triangular entries.
pub fn sym_index(n: usize, p: usize, q: usize) -> usize {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    p * (2 * n + 1 - p) / 2 + (q - p)
}

pub fn sym_from_coords(n: usize, coords: &[Rational]) -> Matrix {
    Matrix::from_fn(n, n, |p, q| coords[sym_index(n, p, q)].clone())
}

pub fn sym_coords(m: &Matrix) -> Vec<Rational> {
    let n = m.rows();
    let mut out = zero_vec(sym_dim(n));
    for p in 0..n {
        for q in p..n {
            out[sym_index(n, p, q)] = m[(p, q)].clone();
        }
    }
    out
}

pub fn is_adinvariant(g: &LieAlgebra, form: &BilinearForm) -> Result<bool> {
    let n = g.dim();
    if form.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: form.dim(),
        });
    }
    let b = form.gram();
    for i in 0..n {
        for j in 0..n {
            for l in j..n {
                let mut s = Rational::zero();
                for (p, c) in g.terms(i, j) {
                    s += c * &b[(*p, l)];
                }
                for (p, c) in g.terms(i, l) {
                    s += c * &b[(j, *p)];
                }
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All symmetric forms satisfying the invariance identity, as a subspace of
/// `K^{n(n+1)/2}`.
pub fn adinv_space(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let cols = sym_dim(n);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in j..n {
                let mut row = zero_vec(cols);
                for (p, c) in g.terms(i, j) {
                    row[sym_index(n, *p, l)] += c;
                }
                for (p, c) in g.terms(i, l) {
                    row[sym_index(n, j, *p)] += c;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(cols);
    }
    kernel(&Matrix::from_rows(rows).expect("uniform rows"))
}

/// Gram matrices of the canonical basis of [`adinv_space`].
pub fn adinv_basis(g: &LieAlgebra) -> Vec<Matrix> {
    adinv_space(g)
        .basis_vectors()
        .iter()
        .map(|v| sym_from_coords(g.dim(), v))
        .collect()
}

/// A form `sum l_i B_i` with nonzero determinant, `l in prod_i {0..rank B_i}`.
///
/// The all-ones point and a fixed set of seeded grid points are tried before
/// the full grid is scanned in lexicographic order (last coordinate fastest),
/// so the result is deterministic. `Ok(None)` means the determinant vanishes
/// on the whole grid, hence identically.
pub fn nondegenerate_witness(space: &Subspace, n: usize, budget: u64) -> Result<Option<BilinearForm>> {
    if space.ambient_dim() != sym_dim(n) {
        return Err(Error::DimensionMismatch {
            expected: sym_dim(n),
            got: space.ambient_dim(),
        });
    }
    if n == 0 {
        return Ok(Some(BilinearForm::new(Matrix::zeros(0, 0))?));
    }
    let basis: Vec<Matrix> = space
        .basis_vectors()
        .iter()
        .map(|v| sym_from_coords(n, v))
        .collect();
    let s = basis.len();
    if s == 0 {
        return Ok(None);
    }
    let sides: Vec<usize> = basis.iter().map(|b| rref(b).rank).collect();
    let grid = sides
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128 + 1))
        .unwrap_or(u128::MAX);
    let mut evaluated: u64 = 0;
    let mut eval = |point: &[usize]| -> Result<Option<BilinearForm>> {
        if evaluated >= budget {
            return Err(Error::BudgetExceeded { budget, grid });
        }
        evaluated += 1;
        let mut m = Matrix::zeros(n, n);
        for (lambda, b) in point.iter().zip(&basis) {
            if *lambda != 0 {
                m = &m + &b.scale(&Rational::from_integer((*lambda).into()));
            }
        }
        if det(&m)?.is_zero() {
            Ok(None)
        } else {
            Ok(Some(BilinearForm::new(m)?))
        }
    };

    // generic points first: a witness usually needs most coefficients nonzero
    let mut rng = ChaCha8Rng::seed_from_u64(PROBE_SEED);
    let mut probes = vec![vec![1usize; s]];
    probes.extend((0..PROBES).map(|_| sides.iter().map(|&r| rng.gen_range(0..=r)).collect()));
    for p in &probes {
        if let Some(b) = eval(p)? {
            return Ok(Some(b));
        }
    }

    let mut point = vec![0usize; s];
    loop {
        if point.iter().any(|&x| x != 0) {
            if let Some(b) = eval(&point)? {
                return Ok(Some(b));
            }
        }
        let mut pos = s;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            point[pos] += 1;
            if point[pos] <= sides[pos] {
                break;
            }
            point[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Witness(BilinearForm),
    /// `dim g != dim z(g) + dim C^1(g)`.
    FailsE1,
    /// `dim g != dim C^r(g) + dim C_r(g)` for this `r >= 2`.
    FailsE2(usize),
    /// Every invariant symmetric form is degenerate.
    DetIdenticallyZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricVerdict {
    pub admits: bool,
    pub reason: Reason,
    /// `None` when a dimension precheck already failed.
    pub solution_space: Option<Subspace>,
}

impl MetricVerdict {
    pub fn witness(&self) -> Option<&BilinearForm> {
        match &self.reason {
            Reason::Witness(b) => Some(b),
            _ => None,
        }
    }

    pub fn reason_label(&self) -> String {
        match &self.reason {
            Reason::Witness(_) => "witness".into(),
            Reason::FailsE1 => "fails_e1".into(),
            Reason::FailsE2(r) => format!("fails_e2({r})"),
            Reason::DetIdenticallyZero => "det_identically_zero".into(),
        }
    }

    pub fn summary(&self) -> VerdictSummary {
        VerdictSummary {
            admits: self.admits,
            reason: self.reason_label(),
            solution_space_dim: self.solution_space.as_ref().map(Subspace::dim),
            witness: self.witness().map(|b| b.gram().clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictSummary {
    pub admits: bool,
    pub reason: String,
    pub solution_space_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Matrix>,
}

/// Dimension identity `dim C^r + dim C_r = dim g` for every `r`, or the first
/// `r` where it fails.
pub fn series_duality_failure(g: &LieAlgebra) -> Option<usize> {
    let n = g.dim();
    let s = g.series();
    (1..=s.stable_length()).find(|&r| s.lower_at(r).dim() + s.upper_at(r).dim() != n)
}

pub fn admits_adinvariant(g: &LieAlgebra) -> Result<MetricVerdict> {
    admits_adinvariant_with_budget(g, DEFAULT_GRID_BUDGET)
}

pub fn admits_adinvariant_with_budget(g: &LieAlgebra, budget: u64) -> Result<MetricVerdict> {
    if let Some(r) = series_duality_failure(g) {
        return Ok(MetricVerdict {
            admits: false,
            reason: if r == 1 {
                Reason::FailsE1
            } else {
                Reason::FailsE2(r)
            },
            solution_space: None,
        });
    }
    let space = adinv_space(g);
    let verdict = match nondegenerate_witness(&space, g.dim(), budget)? {
        Some(b) => MetricVerdict {
            admits: true,
            reason: Reason::Witness(b),
            solution_space: Some(space),
        },
        None => MetricVerdict {
            admits: false,
            reason: Reason::DetIdenticallyZero,
            solution_space: Some(space),
        },
    };
    Ok(verdict)
}

/// One row of [`classify_free`]: verdicts for `n_{m,k}` and its metabelian quotient.
#[derive(Clone, Debug)]
pub struct ClassificationRow {
    pub m: usize,
    pub k: usize,
    pub free_dim: Option<usize>,
    pub metabelian_dim: Option<usize>,
    pub free: std::result::Result<MetricVerdict, Error>,
    pub metabelian: std::result::Result<MetricVerdict, Error>,
}

impl ClassificationRow {
    pub fn summary(&self) -> ClassificationSummary {
        let sum = |v: &std::result::Result<MetricVerdict, Error>| match v {
            Ok(v) => Outcome::Verdict(v.summary()),
            Err(e) => Outcome::Error { error: e.to_string() },
        };
        ClassificationSummary {
            m: self.m,
            k: self.k,
            free_dim: self.free_dim,
            metabelian_dim: self.metabelian_dim,
            free: sum(&self.free),
            metabelian: sum(&self.metabelian),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationSummary {
    pub m: usize,
    pub k: usize,
    pub free_dim: Option<usize>,
    pub metabelian_dim: Option<usize>,
    pub free: Outcome,
    pub metabelian: Outcome,
}

/// A verdict, or the error that prevented one.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Verdict(VerdictSummary),
    Error { error: String },
}

pub fn classify_free(instances: &[(usize, usize)], budget: u64) -> Vec<ClassificationRow> {
    instances
        .iter()
        .map(|&(m, k)| {
            let free = free_nilpotent(m, k);
            let meta = free_metabelian(m, k);
            ClassificationRow {
                m,
                k,
                free_dim: free.as_ref().ok().map(LieAlgebra::dim),
                metabelian_dim: meta.as_ref().ok().map(LieAlgebra::dim),
                free: free.and_then(|g| admits_adinvariant_with_budget(&g, budget)),
                metabelian: meta.and_then(|g| admits_adinvariant_with_budget(&g, budget)),
            }
        })
        .collect()
}
