//! Dense exact linear algebra: echelon forms, subspaces, linear maps and
//! linear systems.
//!
//! Every [`Subspace`] is stored through its reduced row-echelon basis, so two
//! subspaces are equal exactly when their stored bases are equal.

use crate::error::{PactError, Result};
use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(c * xi);
        }
    }
}

/// `sum_i coeffs[i] * vectors[i]` in an ambient space of dimension `n`.
pub fn combine(field: Field, n: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = zero_vector(field, n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}

/// Incrementally maintained reduced row-echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -&out[p];
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width, "echelon width mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        r = scale(&inv, &r);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Basis of `{x : row . x = 0 for every row}`.
    pub fn null_space(&self) -> Subspace {
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.width];
            for &p in &self.pivots {
                s[p] = true;
            }
            s
        };
        let mut basis = Vec::new();
        for f in (0..self.width).filter(|&c| !pivot_set[c]) {
            let mut x = zero_vector(self.field, self.width);
            x[f] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = -&row[f];
            }
            basis.push(x);
        }
        Subspace::span(self.field, self.width, &basis)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { field: self.field, ambient: self.width, basis: self.rows, pivots: self.pivots }
    }
}

/// A linear subspace of `field^ambient`, held in canonical echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Re-derives the canonical basis; a no-op on already canonical input.
    pub fn canonicalize(&self) -> Self {
        Subspace::span(self.field, self.ambient, &self.basis)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> Echelon {
        Echelon { field: self.field, width: self.ambient, rows: self.basis.clone(), pivots: self.pivots.clone() }
    }

    fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = -&out[p];
                axpy(&mut out, &c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The element with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> Vector {
        combine(self.field, self.ambient, coords, &self.basis)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(PactError::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        if self.field != other.field {
            return Err(PactError::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v);
        }
        Ok(e.into_subspace())
    }

    /// Intersection through the null space of `[U | -V]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let (du, dv) = (self.dim(), other.dim());
        let mut system = Echelon::new(self.field, du + dv);
        for coord in 0..self.ambient {
            let mut row = Vec::with_capacity(du + dv);
            row.extend(self.basis.iter().map(|u| u[coord].clone()));
            row.extend(other.basis.iter().map(|v| -&v[coord]));
            system.insert(&row);
        }
        let kernel = system.null_space();
        let vectors: Vec<Vector> = kernel
            .basis()
            .iter()
            .map(|ab| combine(self.field, self.ambient, &ab[..du], &self.basis))
            .collect();
        Ok(Subspace::span(self.field, self.ambient, &vectors))
    }
}

/// Dense matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn new(field: Field, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(PactError::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
        }
        Ok(Matrix { field, cols, rows })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::new(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn null_space(&self) -> Subspace {
        self.echelon().null_space()
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vector {
        self.rows
            .iter()
            .map(|r| r.iter().zip(x).fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }
}

/// Outcome of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Consistent { particular: Vector, null_space: Subspace },
}

/// Solves `A x = b` exactly.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Solution> {
    if b.len() != a.nrows() {
        return Err(PactError::DimensionMismatch(format!(
            "{} right-hand sides for {} equations",
            b.len(),
            a.nrows()
        )));
    }
    let n = a.ncols();
    let mut aug = Echelon::new(a.field, n + 1);
    for (row, rhs) in a.rows.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs.clone());
        aug.insert(&r);
    }
    if aug.pivots().contains(&n) {
        return Ok(Solution::Inconsistent);
    }
    let mut particular = zero_vector(a.field, n);
    for (row, &p) in aug.rows().iter().zip(aug.pivots()) {
        particular[p] = row[n].clone();
    }
    Ok(Solution::Consistent { particular, null_space: a.null_space() })
}

/// A linear map `field^domain -> field^codomain`, stored by the images of the
/// domain basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    field: Field,
    domain_dim: usize,
    codomain_dim: usize,
    columns: Vec<Vector>,
}

impl LinearMap {
    pub fn new(field: Field, domain_dim: usize, codomain_dim: usize, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != domain_dim {
            return Err(PactError::DimensionMismatch(format!(
                "{} images for a {domain_dim}-dimensional domain",
                columns.len()
            )));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != codomain_dim) {
            return Err(PactError::DimensionMismatch(format!(
                "image of length {} in a {codomain_dim}-dimensional codomain",
                c.len()
            )));
        }
        Ok(LinearMap { field, domain_dim, codomain_dim, columns })
    }

    pub fn identity(field: Field, n: usize) -> Self {
        LinearMap { field, domain_dim: n, codomain_dim: n, columns: (0..n).map(|i| unit_vector(field, n, i)).collect() }
    }

    pub fn zero(field: Field, domain_dim: usize, codomain_dim: usize) -> Self {
        LinearMap { field, domain_dim, codomain_dim, columns: vec![zero_vector(field, codomain_dim); domain_dim] }
    }

    /// Builds the map sending each basis vector `e_i` to `f(i)`.
    pub fn from_fn(field: Field, domain_dim: usize, codomain_dim: usize, f: impl FnMut(usize) -> Vector) -> Result<Self> {
        let columns: Vec<Vector> = (0..domain_dim).map(f).collect();
        LinearMap::new(field, domain_dim, codomain_dim, columns)
    }

    /// The unique map with `x_k -> y_k`, provided the `x_k` span the domain
    /// and the assignment is consistent.
    pub fn from_pairs(field: Field, domain_dim: usize, codomain_dim: usize, pairs: &[(Vector, Vector)]) -> Result<Self> {
        let mut e = Echelon::new(field, domain_dim + codomain_dim);
        for (x, y) in pairs {
            if x.len() != domain_dim || y.len() != codomain_dim {
                return Err(PactError::DimensionMismatch("pair of wrong length".into()));
            }
            let mut r = x.clone();
            r.extend(y.iter().cloned());
            e.insert(&r);
        }
        if e.pivots().iter().any(|&p| p >= domain_dim) {
            return Err(PactError::Inconsistent("a vanishing combination of sources has a nonzero image".into()));
        }
        if e.rank() != domain_dim {
            return Err(PactError::Inconsistent(format!(
                "sources span only {} of {domain_dim} dimensions",
                e.rank()
            )));
        }
        let columns = e.rows().iter().map(|r| r[domain_dim..].to_vec()).collect();
        LinearMap::new(field, domain_dim, codomain_dim, columns)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        debug_assert_eq!(x.len(), self.domain_dim);
        combine(self.field, self.codomain_dim, x, &self.columns)
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain_dim != self.domain_dim {
            return Err(PactError::DimensionMismatch(format!(
                "cannot compose {}->{} after {}->{}",
                self.domain_dim, self.codomain_dim, inner.domain_dim, inner.codomain_dim
            )));
        }
        let columns = inner.columns.iter().map(|c| self.apply(c)).collect();
        LinearMap::new(self.field, inner.domain_dim, self.codomain_dim, columns)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field, self.codomain_dim, &self.columns)
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    pub fn kernel(&self) -> Subspace {
        let mut e = Echelon::new(self.field, self.domain_dim);
        for i in 0..self.codomain_dim {
            let row: Vector = self.columns.iter().map(|c| c[i].clone()).collect();
            e.insert(&row);
        }
        e.null_space()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.domain_dim == self.codomain_dim && self.is_injective()
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        if !self.is_bijective() {
            return None;
        }
        let n = self.domain_dim;
        let pairs: Vec<(Vector, Vector)> =
            self.columns.iter().enumerate().map(|(i, c)| (c.clone(), unit_vector(self.field, n, i))).collect();
        LinearMap::from_pairs(self.field, n, n, &pairs).ok()
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.domain_dim != other.domain_dim || self.codomain_dim != other.codomain_dim {
            return Err(PactError::DimensionMismatch("adding maps of different shapes".into()));
        }
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| add(a, b)).collect();
        LinearMap::new(self.field, self.domain_dim, self.codomain_dim, columns)
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap { columns: self.columns.iter().map(|v| scale(c, v)).collect(), ..self.clone() }
    }
}

/// All subspaces of `GF(p)^n`, smallest dimension first.
///
/// Intended for exhaustive checks on tiny spaces; the count grows like
/// `p^(n^2/4)`.
pub fn enumerate_subspaces(field: Field, n: usize) -> Result<Vec<Subspace>> {
    let elems = field
        .elements()
        .ok_or_else(|| PactError::Unsupported("subspace enumeration needs a finite field".into()))?;
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free positions: (row r, column c) with c > pivot r and c not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| ((p + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let mut choice = vec![0usize; free.len()];
            loop {
                let mut rows: Vec<Vector> = pivots.iter().map(|&p| unit_vector(field, n, p)).collect();
                for (&(r, c), &v) in free.iter().zip(&choice) {
                    rows[r][c] = elems[v].clone();
                }
                out.push(Subspace { field, ambient: n, basis: rows, pivots: pivots.clone() });
                // odometer increment
                let mut i = 0;
                while i < choice.len() {
                    choice[i] += 1;
                    if choice[i] < elems.len() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
