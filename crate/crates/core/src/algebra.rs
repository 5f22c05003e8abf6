//! Finite-dimensional algebras given by structure constants, their ideals,
//! morphisms, units, annihilators and semiprimeness.

use rayon::prelude::*;

use crate::error::{PactError, Result};
use crate::field::{format_combination, Field, Scalar};
use crate::group::Group;
use crate::linalg::{
    axpy, enumerate_subspaces, solve_linear, unit_vector, zero_vector, Echelon, LinearMap, Matrix,
    Solution, Subspace, Vector,
};

/// Bilinear product on `field^dim`, stored sparsely per basis pair.
///
/// No associativity is assumed; [`Algebra`] adds that check on top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    field: Field,
    dim: usize,
    entries: Vec<Vec<(usize, Scalar)>>,
}

impl StructureTable {
    pub fn zero(field: Field, dim: usize) -> Self {
        StructureTable { field, dim, entries: vec![Vec::new(); dim * dim] }
    }

    /// Builds the table from dense products `products(i, j) = e_i e_j`.
    pub fn from_fn(field: Field, dim: usize, mut products: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut t = StructureTable::zero(field, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = products(i, j);
                t.set(i, j, &v);
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `e_i e_j = v`.
    pub fn set(&mut self, i: usize, j: usize, v: &[Scalar]) {
        self.entries[i * self.dim + j] =
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
    }

    /// Adds `c e_k` to `e_i e_j`.
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let slot = &mut self.entries[i * self.dim + j];
        match slot.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, old)) => *old = &*old + &c,
            None => slot.push((k, c)),
        }
        slot.retain(|(_, c)| !c.is_zero());
        slot.sort_by_key(|(k, _)| *k);
    }

    pub fn terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.entries[i * self.dim + j]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut out = zero_vector(self.field, self.dim);
        for (k, c) in self.terms(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (k, s) in self.terms(i, j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    /// First basis triple `(i, j, k)` in lexicographic order with
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        (0..d).into_par_iter().find_map_first(|i| {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul(&ij, &unit_vector(self.field, d, k));
                    let right = self.mul(&unit_vector(self.field, d, i), &self.basis_product(j, k));
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }
}

/// An associative algebra over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    table: StructureTable,
    unit: Option<Vector>,
    labels: Vec<String>,
}

impl Algebra {
    /// Checks associativity and the unit. With `unit = None` a unit is
    /// detected automatically when one exists.
    pub fn new(table: StructureTable, unit: Option<Vector>, labels: Vec<String>) -> Result<Algebra> {
        let dim = table.dim();
        if labels.len() != dim {
            return Err(PactError::DimensionMismatch(format!("{} labels for dimension {dim}", labels.len())));
        }
        if let Some((i, j, k)) = table.associativity_witness() {
            return Err(PactError::NonAssociative(i, j, k));
        }
        let mut alg = Algebra { table, unit: None, labels };
        match unit {
            Some(u) => {
                if u.len() != dim {
                    return Err(PactError::BadUnit(format!("unit of length {} in dimension {dim}", u.len())));
                }
                if let Some(i) = (0..dim).find(|&i| {
                    let e = alg.basis(i);
                    alg.mul(&u, &e) != e || alg.mul(&e, &u) != e
                }) {
                    return Err(PactError::BadUnit(format!("fails on basis element {}", alg.labels[i])));
                }
                alg.unit = Some(u);
            }
            None => alg.unit = alg.detect_unit(),
        }
        Ok(alg)
    }

    /// `entries` lists `(i, j, k, c)` meaning `e_i e_j` has coefficient `c` at `e_k`.
    pub fn from_constants(
        field: Field,
        dim: usize,
        entries: &[(usize, usize, usize, Scalar)],
        unit: Option<Vector>,
        labels: Vec<String>,
    ) -> Result<Algebra> {
        let mut t = StructureTable::zero(field, dim);
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(PactError::DimensionMismatch(format!("index out of range in e{}e{} -> e{}", i + 1, j + 1, k + 1)));
            }
            t.add_term(*i, *j, *k, c.clone());
        }
        Algebra::new(t, unit, labels)
    }

    fn detect_unit(&self) -> Option<Vector> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        // unknown e = sum_k x_k e_k; e e_i = e_i and e_i e = e_i
        for i in 0..d {
            for m in 0..d {
                rows.push((0..d).map(|k| self.coefficient(k, i, m)).collect());
                rhs.push(if i == m { self.field().one() } else { self.field().zero() });
                rows.push((0..d).map(|k| self.coefficient(i, k, m)).collect());
                rhs.push(if i == m { self.field().one() } else { self.field().zero() });
            }
        }
        let a = Matrix::new(self.field(), d, rows).ok()?;
        match solve_linear(&a, &rhs).ok()? {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    /// Coefficient of `e_m` in `e_i e_j`.
    pub fn coefficient(&self, i: usize, j: usize, m: usize) -> Scalar {
        self.table
            .terms(i, j)
            .iter()
            .find(|(k, _)| *k == m)
            .map_or_else(|| self.field().zero(), |(_, c)| c.clone())
    }

    pub fn field(&self) -> Field {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn unit(&self) -> Option<&Vector> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn require_unit(&self) -> Result<&Vector> {
        self.unit.as_ref().ok_or(PactError::NotUnital)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis(&self, i: usize) -> Vector {
        unit_vector(self.field(), self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field(), self.dim())
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.table.mul(x, y)
    }

    pub fn format(&self, v: &[Scalar]) -> String {
        format_combination(v, &self.labels)
    }

    /// Parses a label into its basis index.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (i..self.dim()).all(|j| self.table.terms(i, j) == self.table.terms(j, i)))
    }

    pub fn left_mult(&self, x: &[Scalar]) -> LinearMap {
        let cols = (0..self.dim()).map(|i| self.mul(x, &self.basis(i))).collect();
        LinearMap::new(self.field(), self.dim(), self.dim(), cols).expect("square")
    }

    pub fn right_mult(&self, x: &[Scalar]) -> LinearMap {
        let cols = (0..self.dim()).map(|i| self.mul(&self.basis(i), x)).collect();
        LinearMap::new(self.field(), self.dim(), self.dim(), cols).expect("square")
    }

    /// Span of all products `x y` with `x in u`, `y in v`.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut e = Echelon::new(self.field(), self.dim());
        for x in u.basis() {
            for y in v.basis() {
                e.insert(&self.mul(x, y));
            }
        }
        e.into_subspace()
    }

    /// Verifies that `space` is a two-sided ideal.
    pub fn ideal(&self, space: Subspace) -> Result<Ideal> {
        if space.ambient() != self.dim() {
            return Err(PactError::DimensionMismatch(format!(
                "subspace of dimension-{} space in a {}-dimensional algebra",
                space.ambient(),
                self.dim()
            )));
        }
        for x in space.basis() {
            for i in 0..self.dim() {
                let e = self.basis(i);
                for (p, side) in [(self.mul(&e, x), "left"), (self.mul(x, &e), "right")] {
                    if !space.contains(&p) {
                        return Err(PactError::NotAnIdeal(format!(
                            "{side} product of {} with {} leaves the subspace",
                            self.format(x),
                            self.labels[i]
                        )));
                    }
                }
            }
        }
        Ok(Ideal { space })
    }

    pub fn whole(&self) -> Ideal {
        Ideal { space: Subspace::full(self.field(), self.dim()) }
    }

    pub fn zero_ideal(&self) -> Ideal {
        Ideal { space: Subspace::zero(self.field(), self.dim()) }
    }

    /// Smallest two-sided ideal containing `generators`.
    pub fn ideal_generated(&self, generators: &[Vector]) -> Ideal {
        let mut e = Echelon::new(self.field(), self.dim());
        let mut queue: Vec<Vector> = generators.iter().filter(|g| e.insert(g)).cloned().collect();
        while let Some(x) = queue.pop() {
            for i in 0..self.dim() {
                let b = self.basis(i);
                for p in [self.mul(&b, &x), self.mul(&x, &b)] {
                    if e.insert(&p) {
                        queue.push(p);
                    }
                }
            }
        }
        Ideal { space: e.into_subspace() }
    }

    /// Smallest subalgebra containing `generators` (and the unit when `with_unit`).
    pub fn generated_subalgebra(&self, generators: &[Vector], with_unit: bool) -> Subspace {
        let mut e = Echelon::new(self.field(), self.dim());
        let mut found: Vec<Vector> = Vec::new();
        let unit = if with_unit { self.unit.clone() } else { None };
        for g in generators.iter().chain(unit.iter()) {
            if e.insert(g) {
                found.push(g.clone());
            }
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let x = found[frontier].clone();
            frontier += 1;
            for k in 0..frontier {
                let y = found[k].clone();
                for p in [self.mul(&x, &y), self.mul(&y, &x)] {
                    if e.insert(&p) {
                        found.push(p);
                    }
                }
            }
        }
        e.into_subspace()
    }

    /// The algebra structure on a subspace closed under multiplication, in
    /// its canonical basis, with the inclusion map.
    pub fn subalgebra(&self, space: &Subspace) -> Result<(Algebra, LinearMap)> {
        let basis = space.basis();
        let d = basis.len();
        let mut t = StructureTable::zero(self.field(), d);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let p = self.mul(x, y);
                let c = space.coords(&p).ok_or_else(|| {
                    PactError::NotASubalgebra(format!("{} * {} = {} leaves the subspace", self.format(x), self.format(y), self.format(&p)))
                })?;
                t.set(i, j, &c);
            }
        }
        let labels = basis.iter().map(|b| self.format(b)).collect();
        let inclusion = LinearMap::new(self.field(), d, self.dim(), basis.to_vec())?;
        Ok((Algebra::new(t, None, labels)?, inclusion))
    }

    /// An ideal viewed as an algebra in its own right.
    pub fn ideal_algebra(&self, ideal: &Ideal) -> Algebra {
        self.subalgebra(ideal.space()).expect("ideals are subalgebras").0
    }

    /// Left, right and two-sided annihilators of the algebra in itself:
    /// `{x : x A = 0}`, `{x : A x = 0}` and their intersection.
    pub fn annihilators(&self) -> Annihilators {
        let d = self.dim();
        let f = self.field();
        let mut left = Echelon::new(f, d);
        let mut right = Echelon::new(f, d);
        for j in 0..d {
            for m in 0..d {
                // coefficient of e_m in x e_j, resp. e_j x, as a row in x
                left.insert(&(0..d).map(|i| self.coefficient(i, j, m)).collect::<Vec<_>>());
                right.insert(&(0..d).map(|i| self.coefficient(j, i, m)).collect::<Vec<_>>());
            }
        }
        let left = left.null_space();
        let right = right.null_space();
        let both = left.intersect(&right).expect("same ambient");
        Annihilators { left, right, both }
    }

    /// Unit element of an ideal, if it has one.
    ///
    /// A unit of an ideal is always a central idempotent of the algebra; this
    /// is re-checked and a failure is reported as an error.
    pub fn unit_of_ideal(&self, ideal: &Ideal) -> Result<Option<Vector>> {
        let basis = ideal.space().basis();
        let k = basis.len();
        let d = self.dim();
        let f = self.field();
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs = Vec::new();
        for b in basis {
            let left_cols: Vec<Vector> = basis.iter().map(|x| self.mul(x, b)).collect();
            let right_cols: Vec<Vector> = basis.iter().map(|x| self.mul(b, x)).collect();
            for m in 0..d {
                rows.push(left_cols.iter().map(|c| c[m].clone()).collect());
                rhs.push(b[m].clone());
                rows.push(right_cols.iter().map(|c| c[m].clone()).collect());
                rhs.push(b[m].clone());
            }
        }
        let unit = if k == 0 {
            Some(self.zero())
        } else {
            match solve_linear(&Matrix::new(f, k, rows)?, &rhs)? {
                Solution::Consistent { particular, .. } => Some(ideal.space().element(&particular)),
                Solution::Inconsistent => None,
            }
        };
        if let Some(e) = &unit {
            if self.mul(e, e) != *e {
                return Err(PactError::VerificationFailed(format!("ideal unit {} is not idempotent", self.format(e))));
            }
            for i in 0..d {
                let b = self.basis(i);
                if self.mul(e, &b) != self.mul(&b, e) {
                    return Err(PactError::VerificationFailed(format!(
                        "ideal unit {} does not commute with {}",
                        self.format(e),
                        self.labels[i]
                    )));
                }
            }
        }
        Ok(unit)
    }

    /// `1_I + 1_J - 1_I 1_J`, checked to be the unit of `I + J`.
    pub fn sum_of_unital_ideals_unit(&self, i: &Ideal, j: &Ideal) -> Result<Vector> {
        let ui = self.unit_of_ideal(i)?;
        let uj = self.unit_of_ideal(j)?;
        let (ui, uj) = match (ui, uj) {
            (Some(a), Some(b)) => (a, b),
            (a, b) => {
                let mut missing = Vec::new();
                if a.is_none() {
                    missing.push("first ideal".to_string());
                }
                if b.is_none() {
                    missing.push("second ideal".to_string());
                }
                return Err(PactError::MissingUnits(missing));
            }
        };
        let mut e = crate::linalg::add(&ui, &uj);
        let p = self.mul(&ui, &uj);
        axpy(&mut e, &-&self.field().one(), &p);
        let sum = i.space().sum(j.space())?;
        for b in sum.basis() {
            if self.mul(&e, b) != *b || self.mul(b, &e) != *b {
                return Err(PactError::VerificationFailed("1_I + 1_J - 1_I 1_J is not a unit of I + J".into()));
            }
        }
        Ok(e)
    }

    /// All ideals, by exhaustive subspace enumeration over a finite field.
    pub fn all_ideals(&self) -> Result<Vec<Ideal>> {
        Ok(enumerate_subspaces(self.field(), self.dim())?
            .into_iter()
            .filter_map(|s| self.ideal(s).ok())
            .collect())
    }

    /// Semiprimeness of a unital algebra; see [`SemiprimeMethod`].
    pub fn is_semiprime(&self) -> Result<bool> {
        self.is_semiprime_with(DEFAULT_EXHAUSTIVE_BOUND).map(|(b, _)| b)
    }

    /// As [`Algebra::is_semiprime`] with an explicit dimension bound for the
    /// exhaustive path, also reporting the method used.
    pub fn is_semiprime_with(&self, exhaustive_bound: usize) -> Result<(bool, SemiprimeMethod)> {
        self.require_unit()?;
        let p = self.field().characteristic();
        if p == 0 || p as usize > self.dim() {
            return Ok((self.trace_radical().is_zero(), SemiprimeMethod::TraceForm));
        }
        if self.dim() <= exhaustive_bound {
            let nilpotent = self.all_ideals()?.into_iter().any(|i| {
                !i.space().is_zero() && self.product_space(i.space(), i.space()).is_zero()
            });
            return Ok((!nilpotent, SemiprimeMethod::Exhaustive));
        }
        Err(PactError::Unsupported(format!(
            "semiprimeness over {} in dimension {} (exhaustive bound {exhaustive_bound})",
            self.field(),
            self.dim()
        )))
    }

    /// The five equivalent conditions for a unital algebra, each evaluated
    /// independently over an exhaustive enumeration of ideals.
    pub fn semiprime_predicates(&self) -> Result<SemiprimePredicates> {
        self.require_unit()?;
        let ideals = self.all_ideals()?;
        let mut p = SemiprimePredicates {
            ideals: ideals.len(),
            all_non_degenerate: true,
            all_idempotent_or_non_degenerate: true,
            all_right_non_degenerate: true,
            all_left_non_degenerate: true,
            no_nilpotent_ideal: true,
        };
        for i in ideals.iter().filter(|i| !i.space().is_zero()) {
            let ann = self.ideal_algebra(i).annihilators();
            p.all_non_degenerate &= ann.non_degenerate();
            p.all_idempotent_or_non_degenerate &= ann.non_degenerate() || is_idempotent_ideal(self, i);
            p.all_right_non_degenerate &= ann.right_non_degenerate();
            p.all_left_non_degenerate &= ann.left_non_degenerate();
            p.no_nilpotent_ideal &= !self.product_space(i.space(), i.space()).is_zero();
        }
        Ok(p)
    }

    /// Radical of the form `(x, y) -> tr(L_{xy})`.
    pub fn trace_radical(&self) -> Subspace {
        let d = self.dim();
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                (0..d).fold(self.field().zero(), |acc, m| &acc + &self.coefficient(k, m, m))
            })
            .collect();
        let mut e = Echelon::new(self.field(), d);
        for j in 0..d {
            // row for y = e_j: tr(L_{e_i e_j}) over i
            let row: Vector = (0..d)
                .map(|i| {
                    self.table.terms(i, j).iter().fold(self.field().zero(), |acc, (k, c)| &acc + &(c * &traces[*k]))
                })
                .collect();
            e.insert(&row);
        }
        e.null_space()
    }

    /// `dim` copies of the ground field, componentwise product, labels `e1..en`.
    pub fn product_field(field: Field, n: usize) -> Algebra {
        let t = StructureTable::from_fn(field, n, |i, j| {
            if i == j {
                unit_vector(field, n, i)
            } else {
                zero_vector(field, n)
            }
        });
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        Algebra::new(t, Some(vec![field.one(); n]), labels).expect("product field")
    }

    /// `M_n(K)` with matrix units in row-major order, labels `e11, e12, ...`.
    pub fn matrix(field: Field, n: usize) -> Algebra {
        let trivial = Group::cyclic(1).expect("trivial group");
        let mut a = Algebra::matrix_over_group(field, n, &trivial);
        a.labels = (0..n * n).map(|k| matrix_label(n, k / n, k % n)).collect();
        a
    }

    /// `M_n(KH)` with basis `e_ij(h)` ordered by `(i, j)` row-major, then `h`.
    pub fn matrix_over_group(field: Field, n: usize, group: &Group) -> Algebra {
        let m = group.order();
        let d = n * n * m;
        let idx = |i: usize, j: usize, h: usize| (i * n + j) * m + h;
        let mut t = StructureTable::zero(field, d);
        for i in 0..n {
            for j in 0..n {
                for h in 0..m {
                    for k in 0..n {
                        for h2 in 0..m {
                            t.add_term(idx(i, j, h), idx(j, k, h2), idx(i, k, group.mul(h, h2)), field.one());
                        }
                    }
                }
            }
        }
        let mut unit = zero_vector(field, d);
        for i in 0..n {
            unit[idx(i, i, group.identity())] = field.one();
        }
        let labels = (0..d)
            .map(|k| format!("{}({})", matrix_label(n, k / m / n, k / m % n), group.label(k % m)))
            .collect();
        Algebra::new(t, Some(unit), labels).expect("matrix algebra")
    }

    /// Upper triangular `T(n, K)`: units `e_ij`, `i <= j`, row-major.
    pub fn upper(field: Field, n: usize) -> Algebra {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let d = pairs.len();
        let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("upper pair");
        let mut t = StructureTable::zero(field, d);
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for k in j..n {
                t.add_term(a, pos(j, k), pos(i, k), field.one());
            }
        }
        let mut unit = zero_vector(field, d);
        for i in 0..n {
            unit[pos(i, i)] = field.one();
        }
        let labels = pairs.iter().map(|&(i, j)| matrix_label(n, i, j)).collect();
        Algebra::new(t, Some(unit), labels).expect("triangular algebra")
    }

    /// Group algebra `KG` on the group elements in index order.
    pub fn group_algebra(field: Field, group: &Group) -> Algebra {
        let n = group.order();
        let t = StructureTable::from_fn(field, n, |a, b| unit_vector(field, n, group.mul(a, b)));
        Algebra::new(t, Some(unit_vector(field, n, group.identity())), group.labels().to_vec()).expect("group algebra")
    }

    /// Direct product of algebras; labels are `label[k]` with `k` the 1-based factor.
    pub fn direct_product(factors: &[Algebra]) -> Result<Algebra> {
        let field = factors.first().map_or(Field::Rationals, |a| a.field());
        if factors.iter().any(|a| a.field() != field) {
            return Err(PactError::FieldMismatch("factors over different fields".into()));
        }
        let offsets: Vec<usize> = factors
            .iter()
            .scan(0, |acc, a| {
                let o = *acc;
                *acc += a.dim();
                Some(o)
            })
            .collect();
        let d: usize = factors.iter().map(Algebra::dim).sum();
        let mut t = StructureTable::zero(field, d);
        let mut labels = Vec::with_capacity(d);
        let mut unit = Some(Vec::with_capacity(d));
        for (f, (a, &o)) in factors.iter().zip(&offsets).enumerate() {
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    for (k, c) in a.table.terms(i, j) {
                        t.add_term(o + i, o + j, o + k, c.clone());
                    }
                }
                labels.push(format!("{}[{}]", a.labels[i], f + 1));
            }
            unit = match (unit, a.unit()) {
                (Some(mut u), Some(v)) => {
                    u.extend(v.iter().cloned());
                    Some(u)
                }
                _ => None,
            };
        }
        Algebra::new(t, unit, labels)
    }

    /// Functions from a group of order `n` into this algebra: the `n`-fold product.
    pub fn function_algebra(&self, n: usize) -> Algebra {
        Algebra::direct_product(&vec![self.clone(); n]).expect("same field")
    }

    /// The four-dimensional algebra with basis `1, t, u, v`, `tv = vt = u`
    /// and all other products of `t, u, v` zero.
    pub fn counterexample(field: Field) -> Algebra {
        let one = field.one();
        let mut entries = vec![(1, 3, 2, one.clone()), (3, 1, 2, one.clone())];
        for i in 0..4 {
            entries.push((0, i, i, one.clone()));
            if i > 0 {
                entries.push((i, 0, i, one.clone()));
            }
        }
        let labels = ["1", "t", "u", "v"].iter().map(|s| s.to_string()).collect();
        Algebra::from_constants(field, 4, &entries, Some(unit_vector(field, 4, 0)), labels).expect("counterexample")
    }

    /// A `dim`-dimensional algebra with all products zero.
    pub fn zero_product(field: Field, dim: usize, labels: Vec<String>) -> Result<Algebra> {
        Algebra::new(StructureTable::zero(field, dim), None, labels)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        let t = StructureTable::from_fn(field, 1, |_, _| vec![field.one()]);
        Algebra::new(t, Some(vec![field.one()]), vec!["1".into()]).expect("ground field")
    }
}

fn matrix_label(n: usize, i: usize, j: usize) -> String {
    if n < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{},{}", i + 1, j + 1)
    }
}

/// Default dimension bound for exhaustive semiprimeness over small fields.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiprimeMethod {
    TraceForm,
    Exhaustive,
}

/// Conditions on all nonzero ideals, equivalent for unital algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiprimePredicates {
    pub ideals: usize,
    pub all_non_degenerate: bool,
    pub all_idempotent_or_non_degenerate: bool,
    pub all_right_non_degenerate: bool,
    pub all_left_non_degenerate: bool,
    /// No nonzero ideal has zero square.
    pub no_nilpotent_ideal: bool,
}

impl SemiprimePredicates {
    pub fn values(&self) -> [bool; 5] {
        [
            self.all_non_degenerate,
            self.all_idempotent_or_non_degenerate,
            self.all_right_non_degenerate,
            self.all_left_non_degenerate,
            self.no_nilpotent_ideal,
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// A verified two-sided ideal, held as a subspace of its parent algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.space.basis()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annihilators {
    /// `{x : x I = 0}`; zero exactly when `I` is right-non-degenerate.
    pub left: Subspace,
    /// `{x : I x = 0}`; zero exactly when `I` is left-non-degenerate.
    pub right: Subspace,
    /// Kernel of `I -> M(I)`; zero exactly when `I` is non-degenerate.
    pub both: Subspace,
}

impl Annihilators {
    pub fn non_degenerate(&self) -> bool {
        self.both.is_zero()
    }

    pub fn right_non_degenerate(&self) -> bool {
        self.left.is_zero()
    }

    pub fn left_non_degenerate(&self) -> bool {
        self.right.is_zero()
    }
}

/// Why a linear map failed to be an algebra morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismFailure {
    Shape,
    /// `f(e_i e_j) != f(e_i) f(e_j)`
    NotMultiplicative(usize, usize),
    UnitNotPreserved,
    NotInvertible,
}

/// Multiplicativity on basis pairs, plus unit preservation when `unital`.
pub fn verify_morphism(
    source: &Algebra,
    target: &Algebra,
    map: &LinearMap,
    unital: bool,
) -> std::result::Result<(), MorphismFailure> {
    if map.domain_dim() != source.dim() || map.codomain_dim() != target.dim() {
        return Err(MorphismFailure::Shape);
    }
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = map.apply(&source.table.basis_product(i, j));
            let rhs = target.mul(&map.columns()[i], &map.columns()[j]);
            if lhs != rhs {
                return Err(MorphismFailure::NotMultiplicative(i, j));
            }
        }
    }
    if unital {
        match (source.unit(), target.unit()) {
            (Some(u), Some(v)) if map.apply(u) == *v => {}
            _ => return Err(MorphismFailure::UnitNotPreserved),
        }
    }
    Ok(())
}

pub fn verify_isomorphism(
    source: &Algebra,
    target: &Algebra,
    map: &LinearMap,
) -> std::result::Result<(), MorphismFailure> {
    verify_morphism(source, target, map, false)?;
    if !map.is_bijective() {
        return Err(MorphismFailure::NotInvertible);
    }
    Ok(())
}

/// True when every product of basis elements vanishes.
pub fn has_zero_product(a: &Algebra) -> bool {
    (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.table.terms(i, j).is_empty()))
}

/// Is `space * space = space`?
pub fn is_idempotent_ideal(a: &Algebra, ideal: &Ideal) -> bool {
    a.product_space(ideal.space(), ideal.space()) == *ideal.space()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn vq(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn one_dimensional_field() {
        let one = q().one();
        let a = Algebra::from_constants(q(), 1, &[(0, 0, 0, one.clone())], Some(vec![one]), vec!["e1".into()]).unwrap();
        assert!(a.is_unital());
    }

    #[test]
    fn rejects_non_associative_with_witness() {
        // e1 e1 = e2, e2 e2 = e2: (e1e1)e2 = e2 but e1(e1e2) = 0
        let one = q().one();
        let err = Algebra::from_constants(
            q(),
            2,
            &[(0, 0, 1, one.clone()), (1, 1, 1, one)],
            None,
            vec!["e1".into(), "e2".into()],
        )
        .unwrap_err();
        assert_eq!(err, PactError::NonAssociative(0, 0, 1));
        assert_eq!(err.to_string(), "structure constants are not associative: (e1e1)e2 != e1(e1e2)");
    }

    #[test]
    fn bad_unit_rejected() {
        let a = Algebra::product_field(q(), 2);
        let err = Algebra::new(a.table().clone(), Some(vq(&[1, 0])), a.labels().to_vec()).unwrap_err();
        assert!(matches!(err, PactError::BadUnit(_)));
    }

    #[test]
    fn presets() {
        let t2 = Algebra::upper(q(), 2);
        assert_eq!(t2.dim(), 3);
        assert_eq!(t2.unit(), Some(&vq(&[1, 0, 1])));
        let gf5 = Field::prime(5).unwrap();
        let k3 = Algebra::product_field(gf5, 3);
        assert_eq!(k3.mul(&k3.basis(0), &k3.basis(1)), k3.zero());
        let h = Group::cyclic(2).unwrap();
        let m = Algebra::matrix_over_group(q(), 2, &h);
        assert_eq!(m.dim(), 8);
        assert_eq!(m.labels()[1], "e11(g)");
        assert!(!Algebra::matrix(q(), 2).is_commutative());
        let c = Algebra::counterexample(q());
        assert_eq!(c.mul(&c.basis(1), &c.basis(3)), c.basis(2));
        assert_eq!(c.mul(&c.basis(3), &c.basis(1)), c.basis(2));
        // auto-detected unit agrees with the declared one
        let again = Algebra::new(c.table().clone(), None, c.labels().to_vec()).unwrap();
        assert_eq!(again.unit(), c.unit());
    }

    #[test]
    fn generated_ideals() {
        let c = Algebra::counterexample(q());
        let i = c.ideal_generated(&[c.basis(3)]);
        assert_eq!(i.space(), &Subspace::span(q(), 4, &[c.basis(2), c.basis(3)]));
        assert_eq!(c.ideal_generated(&[c.unit().unwrap().clone()]).dim(), 4);
        let t3 = Algebra::upper(q(), 3);
        let e13 = t3.basis(t3.label_index("e13").unwrap());
        assert_eq!(t3.ideal_generated(&[e13.clone()]).space(), &Subspace::span(q(), 6, &[e13]));
    }

    #[test]
    fn annihilator_examples() {
        let z = Algebra::zero_product(q(), 2, vec!["x".into(), "y".into()]).unwrap();
        let ann = z.annihilators();
        assert_eq!(ann.both.dim(), 2);
        assert_eq!(ann.left.dim(), 2);
        let m = Algebra::matrix(q(), 2);
        assert!(m.annihilators().non_degenerate());
        let t2 = Algebra::upper(q(), 2);
        let rad = t2.ideal(Subspace::span(q(), 3, &[t2.basis(1)])).unwrap();
        let r = t2.ideal_algebra(&rad);
        assert_eq!(r.annihilators().both.dim(), 1);
        assert!(!is_idempotent_ideal(&t2, &rad));
    }

    #[test]
    fn ideal_units() {
        let k2 = Algebra::product_field(q(), 2);
        let i = k2.ideal(Subspace::span(q(), 2, &[k2.basis(0)])).unwrap();
        assert_eq!(k2.unit_of_ideal(&i).unwrap(), Some(k2.basis(0)));
        assert!(is_idempotent_ideal(&k2, &i));
        let t2 = Algebra::upper(q(), 2);
        let rad = t2.ideal(Subspace::span(q(), 3, &[t2.basis(1)])).unwrap();
        assert_eq!(t2.unit_of_ideal(&rad).unwrap(), None);
        let c = Algebra::counterexample(q());
        let uv = c.ideal_generated(&[c.basis(2)]);
        assert_eq!(uv.dim(), 1);
        let uv = c.ideal(Subspace::span(q(), 4, &[c.basis(2), c.basis(3)])).unwrap();
        assert_eq!(c.unit_of_ideal(&uv).unwrap(), None);
        assert!(!is_idempotent_ideal(&c, &uv));
    }

    #[test]
    fn unit_of_sum() {
        let k3 = Algebra::product_field(q(), 3);
        let i = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(1)])).unwrap();
        let j = k3.ideal(Subspace::span(q(), 3, &[k3.basis(1), k3.basis(2)])).unwrap();
        assert_eq!(k3.sum_of_unital_ideals_unit(&i, &j).unwrap(), vq(&[1, 1, 1]));
        assert_eq!(k3.sum_of_unital_ideals_unit(&i, &i).unwrap(), vq(&[1, 1, 0]));
        let k2 = Algebra::product_field(q(), 2);
        let a = k2.ideal(Subspace::span(q(), 2, &[k2.basis(0)])).unwrap();
        let b = k2.ideal(Subspace::span(q(), 2, &[k2.basis(1)])).unwrap();
        assert_eq!(k2.sum_of_unital_ideals_unit(&a, &b).unwrap(), vq(&[1, 1]));
        let t2 = Algebra::upper(q(), 2);
        let rad = t2.ideal(Subspace::span(q(), 3, &[t2.basis(1)])).unwrap();
        assert!(matches!(t2.sum_of_unital_ideals_unit(&rad, &t2.whole()), Err(PactError::MissingUnits(_))));
    }

    #[test]
    fn semiprime_examples() {
        assert!(Algebra::matrix(q(), 2).is_semiprime().unwrap());
        assert!(!Algebra::upper(q(), 3).is_semiprime().unwrap());
        assert_eq!(Algebra::upper(q(), 3).trace_radical().dim(), 3);
        assert!(!Algebra::counterexample(q()).is_semiprime().unwrap());
        let gf2 = Field::prime(2).unwrap();
        let (sp, method) = Algebra::matrix(gf2, 2).is_semiprime_with(5).unwrap();
        assert!(sp);
        assert_eq!(method, SemiprimeMethod::Exhaustive);
        // F_2[Z/2] has the nilpotent ideal spanned by 1 + g
        let z2 = Group::cyclic(2).unwrap();
        assert!(!Algebra::group_algebra(gf2, &z2).is_semiprime().unwrap());
        assert!(matches!(Algebra::matrix(gf2, 3).is_semiprime(), Err(PactError::Unsupported(_))));
        let p = Algebra::group_algebra(gf2, &z2).semiprime_predicates().unwrap();
        assert!(p.agree() && !p.no_nilpotent_ideal);
        let p = Algebra::matrix(gf2, 2).semiprime_predicates().unwrap();
        assert_eq!((p.agree(), p.ideals), (true, 2));
        let z = Algebra::zero_product(q(), 1, vec!["x".into()]).unwrap();
        assert_eq!(z.is_semiprime(), Err(PactError::NotUnital));
    }

    #[test]
    fn morphism_checks() {
        let m = Algebra::matrix(q(), 2);
        assert_eq!(verify_isomorphism(&m, &m, &LinearMap::identity(q(), 4)), Ok(()));
        let z = Algebra::zero_product(q(), 2, vec!["u".into(), "v".into()]).unwrap();
        let swap = LinearMap::new(q(), 2, 2, vec![vq(&[0, 1]), vq(&[1, 0])]).unwrap();
        assert_eq!(verify_isomorphism(&z, &z, &swap), Ok(()));
        let k = Algebra::ground(q());
        let zero = LinearMap::zero(q(), 1, 1);
        assert_eq!(verify_morphism(&k, &k, &zero, true), Err(MorphismFailure::UnitNotPreserved));
    }
}
