//! Multiplier algebras `M(I)`, the canonical maps into them and the
//! `(L,R)`-associativity test.

use crate::algebra::{verify_isomorphism, verify_morphism, Algebra, Ideal, StructureTable};
use crate::error::{PactError, Result};
use crate::field::Scalar;
use crate::linalg::{Echelon, LinearMap, Subspace, Vector};

/// A pair `(L, R)` of linear maps on an algebra `I` with `L(ab) = L(a)b`,
/// `R(ab) = aR(b)` and `R(a)b = aL(b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplier {
    pub left: LinearMap,
    pub right: LinearMap,
}

impl Multiplier {
    pub fn identity(algebra: &Algebra) -> Self {
        let id = LinearMap::identity(algebra.field(), algebra.dim());
        Multiplier { left: id.clone(), right: id }
    }

    /// `(L_x, R_x)`
    pub fn of_element(algebra: &Algebra, x: &[Scalar]) -> Self {
        Multiplier { left: algebra.left_mult(x), right: algebra.right_mult(x) }
    }

    /// `(L, R)(L', R') = (L ∘ L', R' ∘ R)`
    pub fn product(&self, other: &Multiplier) -> Multiplier {
        Multiplier {
            left: self.left.compose(&other.left).expect("same dimension"),
            right: other.right.compose(&self.right).expect("same dimension"),
        }
    }

    /// First basis pair `(a, b)` violating one of the three multiplier laws.
    pub fn violation(&self, algebra: &Algebra) -> Option<(usize, usize)> {
        let d = algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let (a, b) = (algebra.basis(i), algebra.basis(j));
                let ab = algebra.mul(&a, &b);
                let la = self.left.apply(&a);
                let ra = self.right.apply(&a);
                let ok = self.left.apply(&ab) == algebra.mul(&la, &b)
                    && self.right.apply(&ab) == algebra.mul(&a, &self.right.apply(&b))
                    && algebra.mul(&ra, &b) == algebra.mul(&a, &self.left.apply(&b));
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Flattened coordinates: columns of `L`, then columns of `R`.
    pub fn flatten(&self) -> Vector {
        self.left.columns().iter().chain(self.right.columns()).flatten().cloned().collect()
    }

    fn unflatten(algebra: &Algebra, v: &[Scalar]) -> Multiplier {
        let d = algebra.dim();
        let cols = |off: usize| (0..d).map(|i| v[off + i * d..off + (i + 1) * d].to_vec()).collect();
        let f = algebra.field();
        Multiplier {
            left: LinearMap::new(f, d, d, cols(0)).expect("square"),
            right: LinearMap::new(f, d, d, cols(d * d)).expect("square"),
        }
    }
}

/// `M(I)` with a basis of multipliers and its structure constants.
#[derive(Debug, Clone)]
pub struct MultiplierAlgebra {
    base: Algebra,
    space: Subspace,
    basis: Vec<Multiplier>,
    algebra: Algebra,
}

impl MultiplierAlgebra {
    /// Solves the linear multiplier conditions over pairs of `d x d` tables.
    pub fn new(base: &Algebra) -> Result<MultiplierAlgebra> {
        let d = base.dim();
        let f = base.field();
        let n = 2 * d * d;
        let l = |m: usize, i: usize| i * d + m;
        let r = |m: usize, i: usize| d * d + i * d + m;
        let c = |i: usize, j: usize, p: usize| base.coefficient(i, j, p);
        let mut e = Echelon::new(f, n);
        for i in 0..d {
            for j in 0..d {
                for p in 0..d {
                    let mut row1 = vec![f.zero(); n];
                    let mut row2 = vec![f.zero(); n];
                    let mut row3 = vec![f.zero(); n];
                    for k in 0..d {
                        let cij = c(i, j, k);
                        row1[l(p, k)] = &row1[l(p, k)] + &cij;
                        row2[r(p, k)] = &row2[r(p, k)] + &cij;
                    }
                    for m in 0..d {
                        row1[l(m, i)] = &row1[l(m, i)] - &c(m, j, p);
                        row2[r(m, j)] = &row2[r(m, j)] - &c(i, m, p);
                        row3[r(m, i)] = &row3[r(m, i)] + &c(m, j, p);
                        row3[l(m, j)] = &row3[l(m, j)] - &c(i, m, p);
                    }
                    e.insert(&row1);
                    e.insert(&row2);
                    e.insert(&row3);
                }
            }
        }
        let space = e.null_space();
        let basis: Vec<Multiplier> = space.basis().iter().map(|v| Multiplier::unflatten(base, v)).collect();
        let k = basis.len();
        let mut table = StructureTable::zero(f, k);
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let p = x.product(y);
                let coords = space
                    .coords(&p.flatten())
                    .ok_or_else(|| PactError::VerificationFailed("multipliers not closed under product".into()))?;
                table.set(a, b, &coords);
            }
        }
        let labels = (1..=k).map(|i| format!("m{i}")).collect();
        let algebra = Algebra::new(table, None, labels)?;
        let ma = MultiplierAlgebra { base: base.clone(), space, basis, algebra };
        let id = ma.coords(&Multiplier::identity(base)).ok_or_else(|| {
            PactError::VerificationFailed("identity multiplier missing".into())
        })?;
        if ma.algebra.unit() != Some(&id) {
            return Err(PactError::VerificationFailed("identity multiplier is not the unit of M(I)".into()));
        }
        Ok(ma)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Multiplier] {
        &self.basis
    }

    /// `M(I)` as an algebra in the multiplier basis.
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self, m: &Multiplier) -> Option<Vector> {
        self.space.coords(&m.flatten())
    }

    pub fn multiplier(&self, coords: &[Scalar]) -> Multiplier {
        Multiplier::unflatten(&self.base, &self.space.element(coords))
    }

    /// `phi: I -> M(I)`, `x -> (L_x, R_x)`.
    pub fn phi(&self) -> LinearMap {
        let d = self.base.dim();
        let cols = (0..d)
            .map(|i| self.coords(&Multiplier::of_element(&self.base, &self.base.basis(i))).expect("inner multiplier"))
            .collect();
        LinearMap::new(self.base.field(), d, self.dim(), cols).expect("shape")
    }

    /// `psi: A -> M(I)`, `a -> (L_a, R_a)` restricted to an ideal `I` of `A`;
    /// `self` must be the multiplier algebra of `ambient.ideal_algebra(ideal)`.
    pub fn psi(&self, ambient: &Algebra, ideal: &Ideal) -> Result<LinearMap> {
        let basis = ideal.basis();
        if basis.len() != self.base.dim() {
            return Err(PactError::DimensionMismatch("ideal does not match the multiplier base".into()));
        }
        let f = ambient.field();
        let k = basis.len();
        let restrict = |g: &dyn Fn(&Vector) -> Vector| -> Result<LinearMap> {
            let cols = basis
                .iter()
                .map(|b| ideal.space().coords(&g(b)).ok_or_else(|| PactError::NotAnIdeal("product leaves ideal".into())))
                .collect::<Result<Vec<_>>>()?;
            LinearMap::new(f, k, k, cols)
        };
        let mut cols = Vec::with_capacity(ambient.dim());
        for i in 0..ambient.dim() {
            let a = ambient.basis(i);
            let m = Multiplier {
                left: restrict(&|b: &Vector| ambient.mul(&a, b))?,
                right: restrict(&|b: &Vector| ambient.mul(b, &a))?,
            };
            cols.push(self.coords(&m).ok_or_else(|| PactError::VerificationFailed("psi(a) is not a multiplier".into()))?);
        }
        let map = LinearMap::new(f, ambient.dim(), self.dim(), cols)?;
        verify_morphism(ambient, &self.algebra, &map, false)
            .map_err(|e| PactError::VerificationFailed(format!("psi is not multiplicative: {e:?}")))?;
        Ok(map)
    }

    /// Image of `phi`, checked to be an ideal of `M(I)`.
    pub fn phi_image_ideal(&self) -> Result<Ideal> {
        self.algebra.ideal(self.phi().image())
    }

    /// First pair of basis multipliers `(m, m')` and basis vector `e_k` with
    /// `R' L (e_k) != L R' (e_k)`.
    pub fn lr_witness(&self) -> Option<(usize, usize, usize)> {
        for (a, m) in self.basis.iter().enumerate() {
            for (b, mp) in self.basis.iter().enumerate() {
                let lhs = mp.right.compose(&m.left).expect("square");
                let rhs = m.left.compose(&mp.right).expect("square");
                if let Some(k) = (0..self.base.dim()).find(|&k| lhs.columns()[k] != rhs.columns()[k]) {
                    return Some((a, b, k));
                }
            }
        }
        None
    }

    pub fn is_lr_associative(&self) -> bool {
        self.lr_witness().is_none()
    }

    /// Carries multipliers of `I` to `J` along an isomorphism `pi: I -> J`.
    pub fn transport(&self, target: &MultiplierAlgebra, pi: &LinearMap) -> Result<Transport> {
        verify_isomorphism(&self.base, &target.base, pi)
            .map_err(|e| PactError::NotAnIsomorphism(format!("{e:?}")))?;
        let inv = pi.inverse().expect("bijective");
        let mut cols = Vec::with_capacity(self.dim());
        for m in &self.basis {
            let t = transport_multiplier(pi, &inv, m);
            if let Some((i, j)) = t.violation(&target.base) {
                return Err(PactError::VerificationFailed(format!("transported multiplier fails at ({i}, {j})")));
            }
            cols.push(target.coords(&t).ok_or_else(|| PactError::VerificationFailed("transport left M(J)".into()))?);
        }
        let map = LinearMap::new(self.base.field(), self.dim(), target.dim(), cols)?;
        verify_isomorphism(&self.algebra, &target.algebra, &map)
            .map_err(|e| PactError::VerificationFailed(format!("transport is not an isomorphism: {e:?}")))?;
        Ok(Transport { map })
    }
}

/// `(pi L pi^-1, pi R pi^-1)`
pub fn transport_multiplier(pi: &LinearMap, pi_inv: &LinearMap, m: &Multiplier) -> Multiplier {
    let conj = |x: &LinearMap| pi.compose(&x.compose(pi_inv).expect("shape")).expect("shape");
    Multiplier { left: conj(&m.left), right: conj(&m.right) }
}

/// The induced isomorphism `M(I) -> M(J)` in multiplier-basis coordinates.
#[derive(Debug, Clone)]
pub struct Transport {
    pub map: LinearMap,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::linalg::Subspace;

    fn q() -> Field {
        Field::Rationals
    }

    fn zero2() -> Algebra {
        Algebra::zero_product(q(), 2, vec!["u".into(), "v".into()]).unwrap()
    }

    #[test]
    fn unital_multipliers_are_inner() {
        for a in [Algebra::matrix(q(), 2), Algebra::upper(q(), 2), Algebra::product_field(q(), 3)] {
            let m = MultiplierAlgebra::new(&a).unwrap();
            assert_eq!(m.dim(), a.dim());
            assert!(m.phi().is_bijective());
            assert!(m.is_lr_associative());
        }
    }

    #[test]
    fn zero_product_multipliers() {
        let m = MultiplierAlgebra::new(&zero2()).unwrap();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.phi().kernel().dim(), 2);
        assert!(m.lr_witness().is_some());
        m.phi_image_ideal().unwrap();
    }

    #[test]
    fn radical_of_upper_two() {
        let t2 = Algebra::upper(q(), 2);
        let rad = t2.ideal(Subspace::span(q(), 3, &[t2.basis(1)])).unwrap();
        let r = t2.ideal_algebra(&rad);
        let m = MultiplierAlgebra::new(&r).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.is_lr_associative());
        let psi = m.psi(&t2, &rad).unwrap();
        assert_eq!(psi.kernel(), Subspace::span(q(), 3, &[t2.basis(1)]));
    }

    #[test]
    fn transport_identity_and_swap() {
        let z = zero2();
        let m = MultiplierAlgebra::new(&z).unwrap();
        let id = LinearMap::identity(q(), 2);
        let t = m.transport(&m, &id).unwrap();
        assert_eq!(t.map, LinearMap::identity(q(), 8));
        let swap = LinearMap::new(q(), 2, 2, vec![vec![q().zero(), q().one()], vec![q().one(), q().zero()]]).unwrap();
        let proj_u = LinearMap::new(q(), 2, 2, vec![vec![q().one(), q().zero()], vec![q().zero(), q().zero()]]).unwrap();
        let mult = Multiplier { left: proj_u, right: LinearMap::zero(q(), 2, 2) };
        let moved = transport_multiplier(&swap, &swap, &mult);
        assert_eq!(moved.left.columns()[1], vec![q().zero(), q().one()]);
        assert_eq!(transport_multiplier(&swap, &swap, &Multiplier::identity(&z)), Multiplier::identity(&z));
        m.transport(&m, &swap).unwrap();
    }
}
