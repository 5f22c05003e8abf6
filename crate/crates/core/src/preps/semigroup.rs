//! The semigroup `S(G)` on symbols `[g]`, its semigroup algebra `K_par(G)`
//! and the crossed-product description of `K_par(G)`.

use std::collections::HashMap;

use super::{phi_pi, PartialRep, PhiPi};
use crate::algebra::{verify_morphism, Algebra, StructureTable};
use crate::error::{PactError, Result};
use crate::field::Field;
use crate::group::{Group, GroupSubset};
use crate::linalg::{unit_vector, LinearMap, Vector};

/// Largest group order accepted by [`ExelSemigroup::new`].
pub const MAX_ORDER: usize = 6;
/// Largest group order for which the word oracle is run.
pub const ORACLE_MAX_ORDER: usize = 4;

/// `S(G)` as pairs `(E, g)` with `{1, g} ⊆ E ⊆ G`, multiplied by
/// `(E, g)(F, h) = (E ∪ gF, gh)`.
#[derive(Debug, Clone)]
pub struct ExelSemigroup {
    group: Group,
    /// `E` as a bit mask over group indices, and `g`.
    elements: Vec<(u64, usize)>,
    table: Vec<Vec<usize>>,
}

impl ExelSemigroup {
    pub fn new(group: &Group) -> Result<ExelSemigroup> {
        let n = group.order();
        if n > MAX_ORDER {
            return Err(PactError::Unsupported(format!("S(G) is only built for |G| <= {MAX_ORDER}, got {n}")));
        }
        let e = group.identity();
        let mut elements = Vec::new();
        for g in group.elements_identity_first() {
            let required = (1u64 << e) | (1u64 << g);
            let mut masks: Vec<u64> = (0..1u64 << n).filter(|m| m & required == required).collect();
            masks.sort_by_key(|m| (m.count_ones(), *m));
            elements.extend(masks.into_iter().map(|m| (m, g)));
        }
        let index: HashMap<(u64, usize), usize> = elements.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let translate = |g: usize, m: u64| -> u64 {
            (0..n).filter(|&x| m >> x & 1 == 1).fold(0u64, |acc, x| acc | 1u64 << group.mul(g, x))
        };
        let table = elements
            .iter()
            .map(|&(em, g)| {
                elements
                    .iter()
                    .map(|&(fm, h)| index[&(em | translate(g, fm), group.mul(g, h))])
                    .collect()
            })
            .collect();
        Ok(ExelSemigroup { group: group.clone(), elements, table })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(n + 1) 2^(n - 2)` for `n = |G| >= 2`.
    pub fn expected_len(order: usize) -> usize {
        match order {
            0 => 0,
            1 => 1,
            n => (n + 1) << (n - 2),
        }
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn subset(&self, x: usize) -> GroupSubset {
        let m = self.elements[x].0;
        self.group.elements().filter(|&a| m >> a & 1 == 1).collect()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.elements[x].1
    }

    /// `[g] = ({1, g}, g)`.
    pub fn generator(&self, g: usize) -> usize {
        let m = (1u64 << self.group.identity()) | (1u64 << g);
        self.elements.iter().position(|&p| p == (m, g)).expect("generator present")
    }

    pub fn identity(&self) -> usize {
        self.generator(self.group.identity())
    }

    pub fn label(&self, x: usize) -> String {
        let g = self.degree(x);
        let e = self.group.identity();
        let s = self.subset(x);
        if x == self.generator(g) {
            if g == e {
                "1".into()
            } else {
                format!("[{}]", self.group.label(g))
            }
        } else {
            format!("({};{})", self.group.format_subset(&s), self.group.label(g))
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|x| self.label(x)).collect()
    }

    /// First triple with `(xy)z != x(yz)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        (0..n).find_map(|x| {
            (0..n).find_map(|y| {
                let xy = self.mul(x, y);
                (0..n).find(|&z| self.mul(xy, z) != self.mul(x, self.mul(y, z))).map(|z| (x, y, z))
            })
        })
    }

    /// The defining relations, checked on the generators.
    pub fn relations_hold(&self) -> bool {
        let grp = &self.group;
        let gen = |g: usize| self.generator(g);
        let one = self.identity();
        let identity_ok = (0..self.len()).all(|x| self.mul(one, x) == x && self.mul(x, one) == x);
        identity_ok
            && grp.elements().all(|g| {
                grp.elements().all(|h| {
                    let gi = grp.inv(g);
                    let hi = grp.inv(h);
                    let gh = grp.mul(g, h);
                    self.mul(self.mul(gen(gi), gen(g)), gen(h)) == self.mul(gen(gi), gen(gh))
                        && self.mul(self.mul(gen(g), gen(h)), gen(hi)) == self.mul(gen(gh), gen(hi))
                })
            })
    }

    /// `K_par(G) = K S(G)`.
    pub fn algebra(&self, field: Field) -> Algebra {
        let n = self.len();
        let t = StructureTable::from_fn(field, n, |x, y| unit_vector(field, n, self.mul(x, y)));
        Algebra::new(t, Some(unit_vector(field, n, self.identity())), self.labels()).expect("semigroup algebra")
    }
}

/// The monoid presented by generators `[g]`, `g != 1`, and the relations
/// `[g^-1][g][h] = [g^-1][gh]`, `[g][h][h^-1] = [gh][h^-1]` with `[1]`
/// erased, enumerated as its right Cayley graph by coset enumeration.
#[derive(Debug, Clone)]
pub struct PresentedMonoid {
    /// Generators as group indices.
    pub generators: Vec<usize>,
    /// `edges[node][k]`: right multiplication by `generators[k]`.
    pub edges: Vec<Vec<usize>>,
    /// A word in group indices reaching each node from the identity node 0.
    pub words: Vec<Vec<usize>>,
}

struct Enumerator {
    ngens: usize,
    parent: Vec<usize>,
    edges: Vec<Vec<Option<usize>>>,
}

impl Enumerator {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn fresh(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.edges.push(vec![None; self.ngens]);
        id
    }

    fn step(&mut self, node: usize, s: usize) -> usize {
        let node = self.find(node);
        match self.edges[node][s] {
            Some(t) => self.find(t),
            None => {
                let t = self.fresh();
                self.edges[node][s] = Some(t);
                t
            }
        }
    }

    fn trace(&mut self, node: usize, word: &[usize]) -> usize {
        word.iter().fold(node, |n, &s| self.step(n, s))
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop] = keep;
            for s in 0..self.ngens {
                if let Some(t) = self.edges[drop][s] {
                    match self.edges[keep][s] {
                        Some(u) => queue.push((u, t)),
                        None => self.edges[keep][s] = Some(t),
                    }
                }
            }
        }
    }
}

impl PresentedMonoid {
    /// Fails once more than `node_limit` nodes have been defined.
    pub fn enumerate(group: &Group, node_limit: usize) -> Result<PresentedMonoid> {
        let e = group.identity();
        let generators: Vec<usize> = group.elements().filter(|&g| g != e).collect();
        let pos = |g: usize| generators.iter().position(|&x| x == g);
        let word = |gs: &[usize]| -> Vec<usize> { gs.iter().filter_map(|&g| pos(g)).collect() };
        let mut relations = Vec::new();
        for g in group.elements() {
            for h in group.elements() {
                let (gi, hi, gh) = (group.inv(g), group.inv(h), group.mul(g, h));
                relations.push((word(&[gi, g, h]), word(&[gi, gh])));
                relations.push((word(&[g, h, hi]), word(&[gh, hi])));
            }
        }
        let mut en = Enumerator { ngens: generators.len(), parent: Vec::new(), edges: Vec::new() };
        en.fresh();
        let mut cursor = 0;
        while cursor < en.parent.len() {
            if en.find(cursor) == cursor {
                for (u, v) in &relations {
                    let a = en.trace(cursor, u);
                    let b = en.trace(cursor, v);
                    en.merge(a, b);
                    if en.find(cursor) != cursor {
                        break;
                    }
                }
                if en.find(cursor) == cursor {
                    for s in 0..generators.len() {
                        en.step(cursor, s);
                    }
                }
            }
            if en.parent.len() > node_limit {
                return Err(PactError::Unsupported(format!("coset enumeration exceeded {node_limit} nodes")));
            }
            cursor += 1;
        }
        // Breadth-first from the identity gives live nodes in a stable order
        // together with a word for each.
        let root = en.find(0);
        let mut order = vec![root];
        let mut words = vec![Vec::new()];
        let mut seen: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut k = 0;
        while k < order.len() {
            let node = order[k];
            for s in 0..generators.len() {
                let t = en.edges[node][s].map(|t| en.find(t)).expect("complete after enumeration");
                if let std::collections::hash_map::Entry::Vacant(v) = seen.entry(t) {
                    v.insert(order.len());
                    order.push(t);
                    let mut w = words[k].clone();
                    w.push(generators[s]);
                    words.push(w);
                }
            }
            k += 1;
        }
        let edges = order
            .iter()
            .map(|&node| {
                (0..generators.len())
                    .map(|s| seen[&en.find(en.edges[node][s].expect("complete"))])
                    .collect()
            })
            .collect();
        Ok(PresentedMonoid { generators, edges, words })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Does the presented monoid match the pair model, with each `[g]` going to
/// `({1, g}, g)`? Checks that the word map is a bijection intertwining
/// right multiplication by every generator.
pub fn agrees_with_pair_model(pairs: &ExelSemigroup, presented: &PresentedMonoid) -> bool {
    if pairs.len() != presented.len() {
        return false;
    }
    let eval = |w: &[usize]| w.iter().fold(pairs.identity(), |x, &g| pairs.mul(x, pairs.generator(g)));
    let image: Vec<usize> = presented.words.iter().map(|w| eval(w)).collect();
    let mut hit = vec![false; pairs.len()];
    for &x in &image {
        if hit[x] {
            return false;
        }
        hit[x] = true;
    }
    presented.edges.iter().enumerate().all(|(node, row)| {
        row.iter()
            .zip(&presented.generators)
            .all(|(&t, &g)| image[t] == pairs.mul(image[node], pairs.generator(g)))
    })
}

/// `φ_π̃` and `ψ` for `π̃: g -> [g]` into `K_par(G)`.
#[derive(Debug, Clone)]
pub struct KparIso {
    pub semigroup: ExelSemigroup,
    pub kpar: Algebra,
    pub rep: PartialRep,
    pub phi: PhiPi,
    /// `K_par(G)` into the crossed product, `[g] -> ε̃_g δ_g`.
    pub psi: LinearMap,
}

impl KparIso {
    pub fn dim(&self) -> usize {
        self.kpar.dim()
    }
}

pub fn kpar_iso(group: &Group, field: Field) -> Result<KparIso> {
    let semigroup = ExelSemigroup::new(group)?;
    let kpar = semigroup.algebra(field);
    let images = group.elements().map(|g| kpar.basis(semigroup.generator(g))).collect();
    let rep = PartialRep::checked(group.clone(), kpar.clone(), images)?;
    let phi = phi_pi(&rep)?;
    let cp = &phi.crossed;
    let eps = &phi.induced.epsilons;
    let gen_image = |g: usize| cp.element(g, &eps[g]).expect("ε_g lies in D_g");
    let eps_image = |g: usize| cp.mul(&gen_image(g), &gen_image(group.inv(g)));
    // (E, g) is the product of the ε_e over e in E followed by [g].
    let cols: Vec<Vector> = (0..semigroup.len())
        .map(|x| {
            let start = cp.element(group.identity(), &phi.induced.epsilons[group.identity()]).expect("unit");
            let prefix = semigroup.subset(x).into_iter().fold(start, |acc, e| cp.mul(&acc, &eps_image(e)));
            cp.mul(&prefix, &gen_image(semigroup.degree(x)))
        })
        .collect();
    let psi = LinearMap::new(field, kpar.dim(), cp.dim(), cols)?;
    let cp_alg = cp.to_algebra()?;
    if let Err(e) = verify_morphism(&kpar, &cp_alg, &psi, true) {
        return Err(PactError::VerificationFailed(format!("psi is not a unital morphism: {e:?}")));
    }
    if phi.map.compose(&psi)? != LinearMap::identity(field, kpar.dim()) {
        return Err(PactError::VerificationFailed("phi ∘ psi is not the identity".into()));
    }
    if psi.compose(&phi.map)? != LinearMap::identity(field, cp.dim()) {
        return Err(PactError::VerificationFailed("psi ∘ phi is not the identity".into()));
    }
    Ok(KparIso { semigroup, kpar, rep, phi, psi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_four() -> Vec<Group> {
        vec![Group::cyclic(4).unwrap(), Group::klein()]
    }

    #[test]
    fn sizes_match_count() {
        let mut groups: Vec<Group> = (1..=6).map(|n| Group::cyclic(n).unwrap()).collect();
        groups.push(Group::klein());
        groups.push(Group::symmetric(3).unwrap());
        for g in groups {
            let s = ExelSemigroup::new(&g).unwrap();
            assert_eq!(s.len(), ExelSemigroup::expected_len(g.order()));
            assert!(s.associativity_witness().is_none());
            assert!(s.relations_hold());
        }
        assert_eq!(ExelSemigroup::new(&Group::cyclic(2).unwrap()).unwrap().len(), 3);
        assert_eq!(ExelSemigroup::new(&Group::cyclic(3).unwrap()).unwrap().len(), 8);
        assert!(ExelSemigroup::new(&Group::cyclic(7).unwrap()).is_err());
    }

    #[test]
    fn z2_products() {
        let g = Group::cyclic(2).unwrap();
        let s = ExelSemigroup::new(&g).unwrap();
        let x = s.generator(1);
        let eps = s.mul(x, x);
        assert_eq!(s.mul(eps, x), x);
        assert_eq!(s.mul(s.mul(x, x), x), x);
        assert_eq!(s.labels(), vec!["1", "({1,g};1)", "[g]"]);
    }

    #[test]
    fn oracle_agrees() {
        let mut groups = vec![Group::cyclic(1).unwrap(), Group::cyclic(2).unwrap(), Group::cyclic(3).unwrap()];
        groups.extend(order_four());
        for g in groups {
            let pm = PresentedMonoid::enumerate(&g, 100_000).unwrap();
            let s = ExelSemigroup::new(&g).unwrap();
            assert_eq!(pm.len(), s.len());
            assert!(agrees_with_pair_model(&s, &pm));
        }
    }

    #[test]
    fn kpar_isomorphisms() {
        for (g, d) in [(Group::cyclic(2).unwrap(), 3), (Group::cyclic(3).unwrap(), 8)] {
            let k = kpar_iso(&g, Field::Rationals).unwrap();
            assert_eq!((k.dim(), k.phi.crossed.dim()), (d, d));
        }
        for g in order_four() {
            assert_eq!(kpar_iso(&g, Field::Rationals).unwrap().dim(), 20);
        }
        let z2 = kpar_iso(&Group::cyclic(2).unwrap(), Field::Rationals).unwrap();
        assert_eq!(z2.phi.induced.action.base().dim(), 2);
        assert_eq!(z2.phi.induced.action.domain(1).dim(), 1);
    }
}
