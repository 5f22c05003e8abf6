//! Finite groups given by Cayley tables, subsets and translate orbits.

use std::collections::BTreeSet;

use crate::error::{PactError, Result};

/// A set of group element indices.
pub type GroupSubset = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl Group {
    /// Validates a multiplication table `table[a][b] = a*b`.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(PactError::NotAGroup("empty table".into()));
        }
        if labels.len() != n {
            return Err(PactError::NotAGroup(format!("{} labels for {n} elements", labels.len())));
        }
        if let Some((i, _)) = table.iter().enumerate().find(|(_, r)| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(PactError::NotAGroup(format!("row {} is malformed", labels[i])));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| PactError::NotAGroup("no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| PactError::NotAGroup(format!("{} has no inverse", labels[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(PactError::NotAGroup(format!(
                            "({}{}){} != {}({}{})",
                            labels[a], labels[b], labels[c], labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(Group { table, identity, inverses, labels })
    }

    /// Z/n with elements `1, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(PactError::InvalidArgument("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Group::from_table(table, labels)
    }

    /// Z/2 x Z/2 with elements `1, a, b, ab`.
    pub fn klein() -> Group {
        let table = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
        let labels = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        Group::from_table(table, labels).expect("klein table")
    }

    /// The symmetric group on `n <= 4` points, with elements in lexicographic
    /// order of their image lists and `(st)(x) = s(t(x))`.
    pub fn symmetric(n: usize) -> Result<Group> {
        if n == 0 || n > 4 {
            return Err(PactError::InvalidArgument(format!("symmetric groups supported for 1 <= n <= 4, got {n}")));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&t.iter().map(|&x| s[x]).collect())).collect())
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        Group::from_table(table, labels)
    }

    /// `G x H` with index `i * |H| + j` and labels `(x,y)`.
    pub fn direct_product(g: &Group, h: &Group) -> Group {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|a| (0..m * n).map(|b| g.mul(a / n, b / n) * n + h.mul(a % n, b % n)).collect())
            .collect();
        let labels = (0..m * n).map(|a| format!("({},{})", g.labels[a / n], h.labels[a % n])).collect();
        Group::from_table(table, labels).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Elements with the identity first, then the rest in index order.
    pub fn elements_identity_first(&self) -> Vec<usize> {
        std::iter::once(self.identity).chain(self.elements().filter(|&g| g != self.identity)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn translate(&self, g: usize, set: &GroupSubset) -> GroupSubset {
        set.iter().map(|&a| self.mul(g, a)).collect()
    }

    pub fn format_subset(&self, set: &GroupSubset) -> String {
        let items: Vec<&str> = set.iter().map(|&a| self.label(a)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// Stabilizer `{h : hA = A}` of a subset under left translation.
    pub fn stabilizer(&self, set: &GroupSubset) -> Vec<usize> {
        self.elements().filter(|&h| &self.translate(h, set) == set).collect()
    }

    /// Stabilizer, distinct translates containing the identity, and chosen
    /// representatives of a subset `A` with `1 in A`.
    pub fn translate_orbit(&self, set: &GroupSubset) -> Result<TranslateOrbit> {
        if !set.contains(&self.identity) {
            return Err(PactError::InvalidArgument(format!(
                "subset {} does not contain the identity",
                self.format_subset(set)
            )));
        }
        let mut translates: Vec<GroupSubset> = Vec::new();
        let mut reps = Vec::new();
        for g in self.elements_identity_first() {
            if !set.contains(&self.inv(g)) {
                continue;
            }
            let t = self.translate(g, set);
            if !translates.contains(&t) {
                translates.push(t);
                reps.push(g);
            }
        }
        Ok(TranslateOrbit { stabilizer: self.stabilizer(set), translates, reps })
    }

    /// Checks `s` is a subgroup and returns it as a group with inherited labels.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Group> {
        let pos = |x: usize| elements.iter().position(|&e| e == x);
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                row.push(pos(self.mul(a, b)).ok_or_else(|| {
                    PactError::NotAGroup(format!("{}{} leaves the subset", self.label(a), self.label(b)))
                })?);
            }
            table.push(row);
        }
        Group::from_table(table, elements.iter().map(|&a| self.labels[a].clone()).collect())
    }
}

/// Data of the translates `A_i = g_i A` of a subset `A` containing 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateOrbit {
    /// `H = St(A)`, sorted.
    pub stabilizer: Vec<usize>,
    /// `A_1 = A, A_2, ..., A_n`, each containing the identity.
    pub translates: Vec<GroupSubset>,
    /// `g_i` with `g_i A = A_i`; `g_1` is the identity.
    pub reps: Vec<usize>,
}

impl TranslateOrbit {
    pub fn len(&self) -> usize {
        self.translates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.translates.is_empty()
    }

    /// Index `j` with `A_j = set`, if any.
    pub fn position(&self, set: &GroupSubset) -> Option<usize> {
        self.translates.iter().position(|t| t == set)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> GroupSubset {
        xs.iter().copied().collect()
    }

    #[test]
    fn constructors() {
        let z2 = Group::cyclic(2).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.mul(1, 1), 0);
        let v = Group::klein();
        assert_eq!(v.exponent(), 2);
        assert!(v.is_abelian());
        let s3 = Group::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.label(s3.identity()), "1");
        assert_eq!(Group::symmetric(4).unwrap().order(), 24);
        let p = Group::direct_product(&z2, &Group::cyclic(3).unwrap());
        assert_eq!(p.order(), 6);
        assert_eq!(p.exponent(), 6);
    }

    #[test]
    fn rejects_non_group() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(Group::from_table(bad, vec!["1".into(), "x".into()]).is_err());
    }

    #[test]
    fn orbit_cyclic_three() {
        let g = Group::cyclic(3).unwrap();
        let o = g.translate_orbit(&set(&[0, 1])).unwrap();
        assert_eq!(o.stabilizer, vec![0]);
        assert_eq!(o.translates, vec![set(&[0, 1]), set(&[0, 2])]);
        assert_eq!(o.reps, vec![0, 2]);
    }

    #[test]
    fn orbit_degenerate_cases() {
        let g = Group::cyclic(4).unwrap();
        let whole = g.translate_orbit(&set(&[0, 1, 2, 3])).unwrap();
        assert_eq!((whole.stabilizer.len(), whole.len()), (4, 1));
        let half = g.translate_orbit(&set(&[0, 2])).unwrap();
        assert_eq!(half.stabilizer, vec![0, 2]);
        assert_eq!(half.len(), 1);
        assert!(g.translate_orbit(&set(&[1])).is_err());
    }

    #[test]
    fn orbit_invariants_all_subsets() {
        for g in [Group::cyclic(4).unwrap(), Group::klein(), Group::symmetric(3).unwrap()] {
            let n = g.order();
            for mask in 0u32..(1 << n) {
                let a: GroupSubset = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                if !a.contains(&g.identity()) {
                    continue;
                }
                let o = g.translate_orbit(&a).unwrap();
                assert_eq!(a.len(), o.stabilizer.len() * o.len());
                for (t, &r) in o.translates.iter().zip(&o.reps) {
                    assert!(t.contains(&g.identity()));
                    assert_eq!(&g.translate(r, &a), t);
                    // St(A_i) = g_i H g_i^-1
                    let conj: BTreeSet<usize> =
                        o.stabilizer.iter().map(|&h| g.mul(g.mul(r, h), g.inv(r))).collect();
                    assert_eq!(conj, g.stabilizer(t).into_iter().collect());
                }
            }
        }
    }
}
