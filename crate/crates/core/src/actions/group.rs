//! Finite groups given by multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::pin::Permutation;
use crate::presentation::GroupOps;

use super::ActionError;

/// A finite group on elements `0..order`, with names for display and
/// serialization. The group axioms are validated once, at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupTable", into = "GroupTable")]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Serialized form: element names and the table `table[a][b] = a·b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTable {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl TryFrom<GroupTable> for FiniteGroup {
    type Error = ActionError;
    fn try_from(t: GroupTable) -> Result<Self, ActionError> {
        FiniteGroup::from_table(t.elements, t.table)
    }
}

impl From<FiniteGroup> for GroupTable {
    fn from(g: FiniteGroup) -> Self {
        GroupTable { elements: g.names, table: g.table }
    }
}

impl FiniteGroup {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, ActionError> {
        let n = names.len();
        let bad = |m: String| Err(ActionError::NotAGroup(m));
        if n == 0 {
            return bad("no elements".into());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&c| c >= n)) {
            return bad(format!("table must be {n}x{n} with entries below {n}"));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return bad(format!("duplicate element name '{a}'"));
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{} has no inverse", names[a])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad(format!("({0} {1}) {2} ≠ {0} ({1} {2})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        Ok(Self { names, table, identity, inverse })
    }

    /// Tabulates a group from a list of elements closed under `mul`, keyed
    /// by `key` for lookup.
    pub fn from_elements<T, K: Hash + Eq>(
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
        key: impl Fn(&T) -> K,
        name: impl Fn(&T) -> String,
    ) -> Result<Self, ActionError> {
        let index: HashMap<K, usize> = elements.iter().enumerate().map(|(i, x)| (key(x), i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let row = elements
                .iter()
                .map(|b| {
                    index.get(&key(&mul(a, b))).copied().ok_or_else(|| {
                        ActionError::NotAGroup(format!("{} · {} leaves the element list", name(a), name(b)))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(row);
        }
        Self::from_table(elements.iter().map(name).collect(), table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `ℤ/n` on `0..n`, element `k` named `k`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(names, table).expect("cyclic groups are groups")
    }

    /// `{±1}` under multiplication: `0 ↦ +1`, `1 ↦ −1`.
    pub fn signs() -> Self {
        Self::from_table(vec!["+1".into(), "-1".into()], vec![vec![0, 1], vec![1, 0]]).expect("{±1} is a group")
    }

    /// `Sym(n)` in the order of [`Permutation::all`], composing as maps.
    pub fn symmetric(n: usize) -> Self {
        let perms = Permutation::all(n);
        Self::from_elements(&perms, |a, b| a.compose(b), Clone::clone, ToString::to_string)
            .expect("Sym(n) is closed")
    }

    /// `A × B` with `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb).map(|i| format!("({},{})", a.name(i / nb), b.name(i % nb))).collect();
        let table = (0..na * nb)
            .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        Self::from_table(names, table).expect("products of groups are groups")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
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

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.is_central(a))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }

    /// A generating set chosen greedily in element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    /// Checks that `images[a]` defines a homomorphism into `target`.
    pub fn check_homomorphism(&self, target: &FiniteGroup, images: &[usize]) -> Result<(), String> {
        if images.len() != self.order() || images.iter().any(|&i| i >= target.order()) {
            return Err(format!("{} images into a group of order {}", images.len(), target.order()));
        }
        for a in self.elements() {
            for b in self.elements() {
                let l = images[self.mul(a, b)];
                let r = target.mul(images[a], images[b]);
                if l != r {
                    return Err(format!(
                        "f({} · {}) = {} but f({}) · f({}) = {}",
                        self.name(a),
                        self.name(b),
                        target.name(l),
                        self.name(a),
                        self.name(b),
                        target.name(r)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }

    pub fn from_json(src: &str) -> Result<Self, ActionError> {
        serde_json::from_str(src).map_err(|e| ActionError::Json(e.to_string()))
    }
}

impl GroupOps for FiniteGroup {
    type Elem = usize;
    fn identity(&self) -> usize {
        self.identity
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }
    fn inv(&self, a: &usize) -> usize {
        self.inverse[*a]
    }
    fn eq(&self, a: &usize, b: &usize) -> bool {
        a == b
    }
    fn describe(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{presentation_from_strs, verify_images};

    #[test]
    fn rejects_non_groups() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FiniteGroup::from_table(names.clone(), vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(names, vec![vec![0, 1]]).is_err());
        // Latin square without associativity: the loop of order 5 below.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let r = FiniteGroup::from_table((0..5).map(|i| i.to_string()).collect(), t);
        assert!(matches!(r, Err(ActionError::NotAGroup(m)) if m.contains('≠')));
    }

    #[test]
    fn standard_groups() {
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert!(!FiniteGroup::symmetric(3).is_abelian());
        let k = FiniteGroup::direct_product(&FiniteGroup::signs(), &FiniteGroup::cyclic(2));
        assert!(k.is_abelian());
        assert!(k.elements().all(|a| k.element_order(a) <= 2));
        assert_eq!(FiniteGroup::cyclic(6).generating_set(), vec![1]);
        assert_eq!(FiniteGroup::symmetric(4).generated(&FiniteGroup::symmetric(4).generating_set()).len(), 24);
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(FiniteGroup::from_json(r#"{"elements":["a"],"table":[[1]]}"#).is_err());
    }

    #[test]
    fn presentation_images_in_table_groups() {
        let s3 = FiniteGroup::symmetric(3);
        let p = presentation_from_strs(&["a", "b"], &["a^2", "b^2", "(a b)^3"]).unwrap();
        let a = s3.index_of("(1 2)").unwrap();
        let b = s3.index_of("(2 3)").unwrap();
        let checks = verify_images(&p, &[a, b], &s3).unwrap();
        assert!(checks.iter().all(|c| c.passed()));
    }
}
