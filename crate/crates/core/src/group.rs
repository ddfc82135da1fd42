//! Finite groups as multiplication tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_ORDER_CAP: usize = 24;

#[derive(Debug, Error, PartialEq)]
pub enum GroupError {
    #[error("group of order 0")]
    Empty,
    #[error("order {0} exceeds cap {1}")]
    TooLarge(usize, usize),
    #[error("table is not square or has out-of-range entries")]
    BadTable,
    #[error("no identity element")]
    NoIdentity,
    #[error("not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("unsupported group spec: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Dihedral { n: usize },
    Explicit { table: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// h g h⁻¹
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Validates a table and renormalises so that the identity is element 0.
    pub fn from_table(table: Vec<Vec<usize>>, cap: usize) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > cap {
            return Err(GroupError::TooLarge(n, cap));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::BadTable);
        }
        let e = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)).ok_or(GroupError::NoIdentity)?;
        // swap labels e <-> 0
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[relabel(a)][relabel(b)] = relabel(table[a][b]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if t[t[a][b]][c] != t[a][t[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| t[a][b] == 0 && t[b][a] == 0).ok_or(GroupError::NoInverse(a))?;
        }
        let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{}", i) }).collect();
        Ok(FiniteGroup { order: n, table: t, identity: 0, inverse, labels })
    }

    pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
        Self::build_with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<FiniteGroup, GroupError> {
        match spec {
            GroupSpec::Cyclic { n } => Self::cyclic_capped(*n, cap),
            GroupSpec::Symmetric { n } => Self::symmetric_capped(*n, cap),
            GroupSpec::Dihedral { n } => Self::dihedral_capped(*n, cap),
            GroupSpec::Explicit { table } => Self::from_table(table.clone(), cap),
        }
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        Self::cyclic_capped(n, usize::MAX).expect("cyclic group")
    }

    fn cyclic_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = Self::from_table(table, cap)?;
        g.labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{}", k),
            })
            .collect();
        Ok(g)
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        Self::symmetric_capped(n, usize::MAX).expect("symmetric group")
    }

    fn symmetric_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::Unsupported(format!("symmetric {}", n)));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        // (στ)(i) = σ(τ(i))
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&(0..n).map(|i| s[t[i]]).collect())).collect())
            .collect();
        let mut g = Self::from_table(table, cap)?;
        g.labels = perms.iter().map(|p| format!("[{}]", p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(""))).collect();
        Ok(g)
    }

    pub fn dihedral(n: usize) -> FiniteGroup {
        Self::dihedral_capped(n, usize::MAX).expect("dihedral group")
    }

    fn dihedral_capped(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        // r^a s^b has index a + n b
        let m = 2 * n;
        let table = (0..m)
            .map(|x| {
                let (a, b) = (x % n, x / n);
                (0..m)
                    .map(|y| {
                        let (c, d) = (y % n, y / n);
                        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                        rot + n * ((b + d) % 2)
                    })
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(table, cap)?;
        g.labels = (0..m).map(|x| format!("r{}s{}", x % n, x / n)).collect();
        Ok(g)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub centralizers: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_index(&self, g: usize) -> usize {
        self.class_of[g]
    }
}

/// Classes ordered by their minimal element, which is also the representative.
pub fn conjugacy_data(g: &FiniteGroup) -> ConjugacyData {
    let n = g.order;
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut cl: Vec<usize> = (0..n).map(|h| g.conj(h, x)).collect();
        cl.sort_unstable();
        cl.dedup();
        for &y in &cl {
            class_of[y] = classes.len();
        }
        classes.push(cl);
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let centralizers = reps.iter().map(|&c| (0..n).filter(|&h| g.mul(h, c) == g.mul(c, h)).collect()).collect();
    ConjugacyData { classes, reps, centralizers, class_of }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_and_trivial() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(z2.table, vec![vec![0, 1], vec![1, 0]]);
        let cd = conjugacy_data(&z2);
        assert_eq!(cd.classes, vec![vec![0], vec![1]]);
        assert!(cd.centralizers.iter().all(|c| c.len() == 2));
        let t = FiniteGroup::cyclic(1);
        assert_eq!(conjugacy_data(&t).classes.len(), 1);
    }

    #[test]
    fn s3_classes() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order, 6);
        let cd = conjugacy_data(&s3);
        let mut sizes: Vec<usize> = cd.classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let mut cs: Vec<usize> = cd.centralizers.iter().map(|c| c.len()).collect();
        cs.sort();
        assert_eq!(cs, vec![2, 3, 6]);
        // explicit table round trip
        let again = FiniteGroup::build(&GroupSpec::Explicit { table: s3.table.clone() }).unwrap();
        assert_eq!(again.table, s3.table);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(vec![], 24), Err(GroupError::Empty));
        // a 2x2 table with no identity
        assert_eq!(FiniteGroup::from_table(vec![vec![1, 1], vec![1, 1]], 24), Err(GroupError::NoIdentity));
        // identity 0 but a⋅a undefined inverse pattern: 3 elements, not a group
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 2]];
        assert!(FiniteGroup::from_table(t, 24).is_err());
        assert!(matches!(FiniteGroup::build(&GroupSpec::Cyclic { n: 30 }), Err(GroupError::TooLarge(30, 24))));
    }

    #[test]
    fn identity_renormalised() {
        // Z2 written with identity at index 1
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], 24).unwrap();
        assert_eq!(g.table[0], vec![0, 1]);
    }

    #[test]
    fn dihedral_orbit_stabilizer() {
        for g in [FiniteGroup::dihedral(4), FiniteGroup::symmetric(4), FiniteGroup::cyclic(5)] {
            let cd = conjugacy_data(&g);
            for (cl, z) in cd.classes.iter().zip(&cd.centralizers) {
                assert_eq!(cl.len() * z.len(), g.order);
            }
        }
    }
}
