//! Subspaces and quotients of an ambient coordinate space, each carried as a
//! (lift, proj) pair with `proj ∘ lift = id`, plus tensor-factor permutations.

use crate::exact::{LinMap, Rat, RatVector, RowSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SpaceKind {
    Free,
    Quotient,
    Sub,
}

#[derive(Clone, Debug)]
pub struct Space {
    pub kind: SpaceKind,
    pub ambient: usize,
    pub dim: usize,
    /// ambient × dim
    pub lift: LinMap,
    /// dim × ambient
    pub proj: LinMap,
    /// For quotients: canonical basis of the relation subspace.
    pub relations: Vec<RatVector>,
}

impl Space {
    pub fn free(n: usize) -> Space {
        Space {
            kind: SpaceKind::Free,
            ambient: n,
            dim: n,
            lift: LinMap::identity(n),
            proj: LinMap::identity(n),
            relations: Vec::new(),
        }
    }

    /// Quotient of k^n by the span of `rels`. The basis is the non-pivot
    /// coordinates of the relation echelon form, in increasing order.
    pub fn quotient(n: usize, rels: &[RatVector]) -> Space {
        let mut rs = RowSpace::new(n);
        for r in rels {
            rs.insert(r);
        }
        Space::quotient_from_rowspace(&rs)
    }

    pub fn quotient_from_rowspace(rs: &RowSpace) -> Space {
        let n = rs.ncols;
        let rows = rs.basis_with_pivots();
        let mut is_pivot = vec![false; n];
        for (p, _) in &rows {
            is_pivot[*p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut index = vec![usize::MAX; n];
        for (k, &j) in free.iter().enumerate() {
            index[j] = k;
        }
        let dim = free.len();
        let lift = LinMap::from_columns(n, free.iter().map(|&j| vec![(j, Rat::one())]).collect());
        let mut pcols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        for &j in &free {
            pcols[j] = vec![(index[j], Rat::one())];
        }
        for (p, row) in &rows {
            pcols[*p] = free.iter().filter(|&&j| !row[j].is_zero()).map(|&j| (index[j], -&row[j])).collect();
        }
        let proj = LinMap::from_columns(dim, pcols);
        Space { kind: SpaceKind::Quotient, ambient: n, dim, lift, proj, relations: rows.into_iter().map(|r| r.1).collect() }
    }

    /// Subspace spanned by `gens`, with the rref rows as basis.
    pub fn sub(n: usize, gens: &[RatVector]) -> Space {
        let mut rs = RowSpace::new(n);
        for g in gens {
            rs.insert(g);
        }
        let rows = rs.basis_with_pivots();
        let dim = rows.len();
        let lift = LinMap::from_dense_cols(n, &rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>());
        let mut pcols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        for (k, (p, _)) in rows.iter().enumerate() {
            pcols[*p] = vec![(k, Rat::one())];
        }
        let proj = LinMap::from_columns(dim, pcols);
        Space { kind: SpaceKind::Sub, ambient: n, dim, lift, proj, relations: Vec::new() }
    }

    pub fn is_free(&self) -> bool {
        self.kind == SpaceKind::Free
    }

    /// `proj ∘ lift` as a map on the space itself (identity by construction).
    pub fn idempotent(&self) -> LinMap {
        self.lift.compose(&self.proj)
    }

    /// Coordinates of an ambient vector, when it lies in the space (sub) or
    /// always (quotient/free).
    pub fn coords(&self, v: &[Rat]) -> Option<RatVector> {
        let c = self.proj.apply(v);
        if self.kind == SpaceKind::Sub && self.lift.apply(&c) != v {
            return None;
        }
        Some(c)
    }
}

/// Tensor-product space built from two factor spaces.
pub fn tensor_space(a: &Space, b: &Space) -> (LinMap, LinMap) {
    (a.lift.kron(&b.lift), a.proj.kron(&b.proj))
}

/// Checks that `f: ambient_in → ambient_out` descends to the spaces described by
/// `(lin, pin)` and `out`. Returns the induced map `pout ∘ f ∘ lin` or None.
pub fn descend(f: &LinMap, kind: SpaceKind, lin: &LinMap, pin: &LinMap, out: &Space) -> Option<LinMap> {
    let induced = out.proj.compose(&f.compose(lin));
    let ok = match kind {
        SpaceKind::Free => true,
        SpaceKind::Quotient => out.proj.compose(f) == induced.compose(pin),
        SpaceKind::Sub => f.compose(lin) == out.lift.compose(&induced),
    };
    ok.then_some(induced)
}

/// Permutation of tensor factors: the output's factor `j` is the input's
/// factor `perm[j]`. `dims[k]` is the dimension of input factor k.
pub fn tensor_perm(dims: &[usize], perm: &[usize]) -> LinMap {
    assert_eq!(dims.len(), perm.len());
    let k = dims.len();
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut columns = Vec::with_capacity(total);
    let mut idx = vec![0usize; k];
    for lin in 0..total {
        let mut rem = lin;
        for f in (0..k).rev() {
            idx[f] = rem % dims[f];
            rem /= dims[f];
        }
        let mut o = 0;
        for j in 0..k {
            o = o * out_dims[j] + idx[perm[j]];
        }
        columns.push(vec![(o, Rat::one())]);
    }
    LinMap { rows: total, cols: total, columns }
}

/// Plain flip `U⊗W → W⊗U`.
pub fn flip(du: usize, dw: usize) -> LinMap {
    tensor_perm(&[du, dw], &[1, 0])
}

/// Kronecker product of a list of maps.
pub fn kron_all(maps: &[&LinMap]) -> LinMap {
    let mut out = LinMap::identity(1);
    for m in maps {
        out = out.kron(m);
    }
    out
}

pub fn id(n: usize) -> LinMap {
    LinMap::identity(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::unit_vec;

    #[test]
    fn quotient_projection_kills_relations() {
        let rel = vec![Rat::one(), Rat::int(-1), Rat::zero()];
        let q = Space::quotient(3, &[rel.clone()]);
        assert_eq!(q.dim, 2);
        assert!(crate::exact::is_zero_vec(&q.proj.apply(&rel)));
        assert_eq!(q.proj.compose(&q.lift), LinMap::identity(2));
    }

    #[test]
    fn sub_roundtrip() {
        let s = Space::sub(3, &[vec![Rat::one(), Rat::one(), Rat::zero()]]);
        assert_eq!(s.dim, 1);
        assert_eq!(s.proj.compose(&s.lift), LinMap::identity(1));
        assert!(s.coords(&unit_vec(3, 0)).is_none());
    }

    #[test]
    fn perm_moves_factors() {
        // dims (2,3): e1⊗e2 -> e2⊗e1 in (3,2)
        let p = tensor_perm(&[2, 3], &[1, 0]);
        let v = p.apply(&unit_vec(6, 3 + 2));
        assert_eq!(v, unit_vec(6, 2 * 2 + 1));
        let cyc = tensor_perm(&[2, 2, 2], &[2, 0, 1]);
        // a⊗b⊗c -> c⊗a⊗b ; (1,0,0)=4 -> (0,1,0)=2
        assert_eq!(cyc.apply(&unit_vec(8, 4)), unit_vec(8, 2));
    }
}
