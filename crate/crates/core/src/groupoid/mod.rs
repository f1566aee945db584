//! Finite groupoids: partially defined multiplication with sources, targets
//! and inverses, plus the standard constructions (`Δn`, `H[Δn]`, disjoint
//! unions, quotients by normal wide subgroupoids).

mod group;
mod order;

use std::collections::{HashMap, VecDeque};
use std::fmt;

pub use group::FiniteGroup;
pub use order::{GroupoidOrder, OrderReport, OrderWitness};

/// Hard cap on the number of elements; keeps exhaustive validation cheap.
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("groupoid must have at least one element")]
    Empty,
    #[error("groupoid has {0} elements, the cap is {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("multiplication table is not square")]
    Shape,
    #[error("element {0} has no left or right identity")]
    NoIdentity(String),
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("product {0}·{1} defined = {2} but t({0}) = s({1}) is {3}")]
    Composability(String, String, bool, bool),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("not a subgroupoid: {0}")]
    NotSubgroupoid(String),
    #[error("conjugation condition fails at {0}: g F_t(g) g^-1 != F_s(g)")]
    NormalityViolation(String),
}

/// A finite groupoid with named elements.
///
/// Elements are addressed by index `0..len()`; names are fixed at
/// construction and used in every report.
#[derive(Clone, PartialEq, Eq)]
pub struct Groupoid {
    names: Vec<String>,
    index: HashMap<String, usize>,
    mult: Vec<Option<usize>>,
    inverse: Vec<usize>,
    source: Vec<usize>,
    target: Vec<usize>,
    idempotents: Vec<usize>,
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Groupoid")
            .field("elements", &self.names)
            .field("idempotents", &self.idempotents.len())
            .finish()
    }
}

impl Groupoid {
    /// Builds a groupoid from a full multiplication table and checks every
    /// groupoid axiom exhaustively.
    pub fn from_table(
        names: Vec<String>,
        table: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, GroupoidError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupoidError::Empty);
        }
        if n > MAX_ELEMENTS {
            return Err(GroupoidError::TooLarge(n));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupoidError::Shape);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(GroupoidError::DuplicateName(name.clone()));
            }
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in &table {
            for entry in row {
                if let Some(k) = entry {
                    if *k >= n {
                        return Err(GroupoidError::Shape);
                    }
                }
                mult.push(*entry);
            }
        }
        let at = |a: usize, b: usize| mult[a * n + b];
        let idempotents: Vec<usize> = (0..n).filter(|&g| at(g, g) == Some(g)).collect();

        let mut source = vec![0; n];
        let mut target = vec![0; n];
        for g in 0..n {
            let s = idempotents.iter().copied().find(|&e| at(e, g) == Some(g));
            let t = idempotents.iter().copied().find(|&e| at(g, e) == Some(g));
            match (s, t) {
                (Some(s), Some(t)) => {
                    source[g] = s;
                    target[g] = t;
                }
                _ => return Err(GroupoidError::NoIdentity(names[g].clone())),
            }
        }
        let mut inverse = vec![0; n];
        for g in 0..n {
            let inv = (0..n).find(|&h| at(g, h) == Some(source[g]) && at(h, g) == Some(target[g]));
            match inv {
                Some(h) => inverse[g] = h,
                None => return Err(GroupoidError::NoInverse(names[g].clone())),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let defined = at(a, b).is_some();
                let composable = target[a] == source[b];
                if defined != composable {
                    return Err(GroupoidError::Composability(
                        names[a].clone(),
                        names[b].clone(),
                        defined,
                        composable,
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = at(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = at(b, c) else { continue };
                    if at(ab, c) != at(a, bc) {
                        return Err(GroupoidError::NotAssociative(
                            names[a].clone(),
                            names[b].clone(),
                            names[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Groupoid {
            names,
            index,
            mult,
            inverse,
            source,
            target,
            idempotents,
        })
    }

    /// The groupoid `Δn` of matrix units `e_ij`, with `e_ij·e_kl = e_il`
    /// exactly when `j = k`.
    pub fn delta(n: usize) -> Self {
        assert!(n >= 1, "delta(n) needs n >= 1");
        let names = (0..n * n).map(|k| delta_name(n, k / n, k % n)).collect();
        let table = (0..n * n)
            .map(|a| {
                (0..n * n)
                    .map(|b| {
                        let (i, j) = (a / n, a % n);
                        let (k, l) = (b / n, b % n);
                        (j == k).then_some(i * n + l)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, table).expect("delta(n) is a groupoid")
    }

    /// `H[Δn] = H × Δn` with `(h, e_ij)(h', e_kl) = (hh', e_il)` iff `j = k`.
    pub fn product_with_delta(group: &FiniteGroup, n: usize) -> Result<Self, GroupoidError> {
        assert!(n >= 1, "product_with_delta needs n >= 1");
        let m = group.order();
        let size = m * n * n;
        if size > MAX_ELEMENTS {
            return Err(GroupoidError::TooLarge(size));
        }
        // element (h, i, j) lives at h * n^2 + i * n + j
        let names = (0..size)
            .map(|k| {
                let (h, d) = (k / (n * n), k % (n * n));
                format!("({},{})", group.name(h), delta_name(n, d / n, d % n))
            })
            .collect();
        let table = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| {
                        let (ha, da) = (a / (n * n), a % (n * n));
                        let (hb, db) = (b / (n * n), b % (n * n));
                        let (i, j) = (da / n, da % n);
                        let (k, l) = (db / n, db % n);
                        (j == k).then(|| group.mul(ha, hb) * n * n + i * n + l)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(names, table)
    }

    /// A group viewed as a one-object groupoid.
    pub fn from_group(group: &FiniteGroup) -> Self {
        let m = group.order();
        let names = (0..m).map(|h| group.name(h).to_string()).collect();
        let table = (0..m)
            .map(|a| (0..m).map(|b| Some(group.mul(a, b))).collect())
            .collect();
        Self::from_table(names, table).expect("a group is a groupoid")
    }

    /// Disjoint union; element names get the given per-part prefixes.
    pub fn disjoint_union(parts: &[(&str, &Groupoid)]) -> Result<Self, GroupoidError> {
        let total: usize = parts.iter().map(|(_, g)| g.len()).sum();
        if total > MAX_ELEMENTS {
            return Err(GroupoidError::TooLarge(total));
        }
        let mut names = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(parts.len());
        for (prefix, g) in parts {
            offsets.push(names.len());
            names.extend(g.names.iter().map(|nm| format!("{prefix}{nm}")));
        }
        let mut table = vec![vec![None; total]; total];
        for ((_, g), &off) in parts.iter().zip(&offsets) {
            for a in 0..g.len() {
                for b in 0..g.len() {
                    table[off + a][off + b] = g.mul(a, b).map(|c| off + c);
                }
            }
        }
        Self::from_table(names, table)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lookup(&self, name: &str) -> Result<usize, GroupoidError> {
        self.index
            .get(name.trim())
            .copied()
            .ok_or_else(|| GroupoidError::UnknownElement(name.to_string()))
    }

    /// `g·g'`, or `None` when `t(g) != s(g')`.
    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        self.mult[g * self.len() + h]
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    #[inline]
    pub fn source(&self, g: usize) -> usize {
        self.source[g]
    }

    #[inline]
    pub fn target(&self, g: usize) -> usize {
        self.target[g]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, g: usize) -> bool {
        self.source[g] == g && self.target[g] == g
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    /// Some element with source `from` and target `to`.
    pub fn connecting(&self, from: usize, to: usize) -> Option<usize> {
        (0..self.len()).find(|&g| self.source[g] == from && self.target[g] == to)
    }

    /// Elements with source and target both equal to `e`.
    pub fn vertex_group(&self, e: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&g| self.source[g] == e && self.target[g] == e)
            .collect()
    }

    pub fn connected_components(&self) -> ConnectedPartition {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in 0..n {
            for other in [self.source[g], self.target[g]] {
                let (a, b) = (find(&mut parent, g), find(&mut parent, other));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_class = HashMap::new();
        for g in 0..n {
            let root = find(&mut parent, g);
            let c = *root_class.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of[g] = c;
            classes[c].push(g);
        }
        ConnectedPartition { class_of, classes }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().classes.len() == 1
    }

    /// Checks that `members` is closed under multiplication and inverses.
    pub fn check_subgroupoid(&self, members: &[bool]) -> Result<(), GroupoidError> {
        for g in 0..self.len() {
            if !members[g] {
                continue;
            }
            if !members[self.inverse[g]] {
                return Err(GroupoidError::NotSubgroupoid(format!(
                    "inverse of {} missing",
                    self.names[g]
                )));
            }
            for h in 0..self.len() {
                if members[h] {
                    if let Some(gh) = self.mul(g, h) {
                        if !members[gh] {
                            return Err(GroupoidError::NotSubgroupoid(format!(
                                "{}·{} = {} missing",
                                self.names[g], self.names[h], self.names[gh]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The subgroupoid on the given elements, keeping names. Returns it with
    /// the map from new to old indices.
    pub fn restrict(&self, elements: &[usize]) -> Result<(Groupoid, Vec<usize>), GroupoidError> {
        let mut members = vec![false; self.len()];
        for &g in elements {
            members[g] = true;
        }
        self.check_subgroupoid(&members)?;
        let old: Vec<usize> = (0..self.len()).filter(|&g| members[g]).collect();
        let mut new_of = vec![usize::MAX; self.len()];
        for (i, &g) in old.iter().enumerate() {
            new_of[g] = i;
        }
        let names = old.iter().map(|&g| self.names[g].clone()).collect();
        let table = old
            .iter()
            .map(|&a| old.iter().map(|&b| self.mul(a, b).map(|c| new_of[c])).collect())
            .collect();
        Ok((Groupoid::from_table(names, table)?, old))
    }

    /// Quotient `G/F` by a wide subgroupoid `F` with
    /// `g F_{t(g)} g^-1 = F_{s(g)}`; `g ~ h` iff `g = f_s h f_t` for some
    /// `f_s, f_t ∈ F`. Returns the quotient and the class of each element.
    pub fn quotient(&self, subgroupoid: &[usize]) -> Result<(Groupoid, Vec<usize>), GroupoidError> {
        let n = self.len();
        let mut members = vec![false; n];
        for &f in subgroupoid {
            members[f] = true;
        }
        for &e in &self.idempotents {
            if !members[e] {
                return Err(GroupoidError::NotSubgroupoid(format!(
                    "idempotent {} missing",
                    self.names[e]
                )));
            }
        }
        self.check_subgroupoid(&members)?;
        // normality: conjugation by g maps F_{t(g)} onto F_{s(g)}
        for g in 0..n {
            let (s, t) = (self.source[g], self.target[g]);
            let ginv = self.inverse[g];
            let mut image = vec![false; n];
            for f in 0..n {
                if members[f] && self.source[f] == t && self.target[f] == t {
                    let c = self.mul(g, f).and_then(|gf| self.mul(gf, ginv)).unwrap();
                    image[c] = true;
                }
            }
            for f in 0..n {
                let in_fs = members[f] && self.source[f] == s && self.target[f] == s;
                if in_fs != image[f] {
                    return Err(GroupoidError::NormalityViolation(self.names[g].clone()));
                }
            }
        }
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(start);
            class_of[start] = c;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for f in 0..n {
                    if !members[f] {
                        continue;
                    }
                    for y in [self.mul(f, x), self.mul(x, f)].into_iter().flatten() {
                        if class_of[y] == usize::MAX {
                            class_of[y] = c;
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        let k = reps.len();
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; k]; k];
        for a in 0..n {
            for b in 0..n {
                if let Some(ab) = self.mul(a, b) {
                    let slot = &mut table[class_of[a]][class_of[b]];
                    match slot {
                        None => *slot = Some(class_of[ab]),
                        Some(prev) if *prev != class_of[ab] => {
                            return Err(GroupoidError::NormalityViolation(format!(
                                "{}·{}",
                                self.names[a], self.names[b]
                            )))
                        }
                        _ => {}
                    }
                }
            }
        }
        let names = reps.iter().map(|&r| format!("[{}]", self.names[r])).collect();
        Ok((Groupoid::from_table(names, table)?, class_of))
    }
}

fn delta_name(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{}_{}", i + 1, j + 1)
    }
}

/// Partition of a groupoid into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedPartition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_products() {
        let d3 = Groupoid::delta(3);
        let (e12, e23, e13) = (d3.lookup("e12").unwrap(), d3.lookup("e23").unwrap(), d3.lookup("e13").unwrap());
        assert_eq!(d3.mul(e12, e23), Some(e13));
        assert_eq!(d3.mul(e12, e13), None);
        let d2 = Groupoid::delta(2);
        let idem: Vec<&str> = d2.idempotents().iter().map(|&e| d2.name(e)).collect();
        assert_eq!(idem, vec!["e11", "e22"]);
    }

    #[test]
    fn product_with_z2() {
        let g = Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap();
        let a = g.lookup("(1,e12)").unwrap();
        let b = g.lookup("(1,e21)").unwrap();
        assert_eq!(g.mul(a, b), Some(g.lookup("(0,e11)").unwrap()));
        assert!(matches!(g.lookup("(1,e13)"), Err(GroupoidError::UnknownElement(_))));
        assert_eq!(g.connected_components().classes.len(), 1);
    }

    #[test]
    fn trivial_group_product_is_delta() {
        let g = Groupoid::product_with_delta(&FiniteGroup::trivial(), 3).unwrap();
        let d = Groupoid::delta(3);
        assert_eq!(g.len(), d.len());
        for a in 0..d.len() {
            for b in 0..d.len() {
                assert_eq!(g.mul(a, b), d.mul(a, b));
            }
        }
    }

    #[test]
    fn components() {
        assert_eq!(Groupoid::delta(2).connected_components().classes.len(), 1);
        let (d1, d2) = (Groupoid::delta(1), Groupoid::delta(2));
        let u = Groupoid::disjoint_union(&[("a.", &d1), ("b.", &d2)]).unwrap();
        let parts = u.connected_components();
        assert_eq!(parts.classes.len(), 2);
        assert_eq!(parts.classes[0], vec![0]);
    }

    #[test]
    fn quotients() {
        let z4 = Groupoid::from_group(&FiniteGroup::cyclic(4));
        let (q, _) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.is_group());

        let d2 = Groupoid::delta(2);
        let (q, _) = d2.quotient(d2.idempotents()).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.idempotents().len(), 2);

        let g = Groupoid::product_with_delta(&FiniteGroup::cyclic(2), 2).unwrap();
        let f: Vec<usize> = ["(0,e11)", "(0,e22)", "(1,e11)", "(1,e22)"]
            .iter()
            .map(|s| g.lookup(s).unwrap())
            .collect();
        let (q, class_of) = g.quotient(&f).unwrap();
        assert_eq!(q.len(), 4);
        let d2 = Groupoid::delta(2);
        // q ≅ Δ2 via the class of (0, e_ij)
        for a in 0..4 {
            for b in 0..4 {
                let qa = class_of[a];
                let qb = class_of[b];
                assert_eq!(q.mul(qa, qb).is_some(), d2.mul(a, b).is_some());
            }
        }
    }

    #[test]
    fn quotient_errors() {
        let z4 = Groupoid::from_group(&FiniteGroup::cyclic(4));
        assert!(matches!(z4.quotient(&[0, 1]), Err(GroupoidError::NotSubgroupoid(_))));
        let d2 = Groupoid::delta(2);
        assert!(matches!(d2.quotient(&[0]), Err(GroupoidError::NotSubgroupoid(_))));
        // S3 with the non-normal subgroup {id, (12)}
        let s3 = Groupoid::from_group(&FiniteGroup::symmetric3());
        assert!(matches!(s3.quotient(&[0, 1]), Err(GroupoidError::NormalityViolation(_))));
    }

    #[test]
    fn rejects_non_groupoid_table() {
        let names = vec!["a".to_string(), "b".to_string()];
        let table = vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]];
        assert!(Groupoid::from_table(names, table).is_err());
    }
}
