//! Right crossed modules (Drinfeld-Radford-Yetter modules) over a Hopf algebra.

use crate::exact::{preimage, LinMap, Rat, RatMatrix, RatVector};
use crate::group::FiniteGroup;
use crate::hopf::{HopfAlgebra, HopfKind};
use crate::report::{multi_index, Report};
use crate::space::{id, tensor_perm};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrossedError {
    #[error("grading incompatible with the action: element {h}, grade {g}, basis vector {v}")]
    Grading { h: usize, g: usize, v: usize },
    #[error("action is not a group action: {0}")]
    NotAnAction(String),
    #[error("crossed module over different Hopf algebras")]
    Mismatch,
    #[error("degenerate pairing (rank {0} < {1})")]
    DegeneratePairing(usize, usize),
    #[error("subquotient is not a crossed submodule: {0}")]
    NotInvariant(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub over: Arc<HopfAlgebra>,
    pub dim: usize,
    /// dim × (dim·m), column v·m + a is v◁a
    pub act: LinMap,
    /// (dim·m) × dim
    pub coact: LinMap,
    pub labels: Vec<String>,
}

impl CrossedModule {
    pub fn new(over: Arc<HopfAlgebra>, act: LinMap, coact: LinMap, labels: Vec<String>) -> Result<Self, CrossedError> {
        let d = labels.len();
        let m = over.dim;
        if (act.rows, act.cols) != (d, d * m) || (coact.rows, coact.cols) != (d * m, d) {
            return Err(CrossedError::Shape(format!("dim {} over dim {}", d, m)));
        }
        Ok(CrossedModule { over, dim: d, act, coact, labels })
    }

    pub fn zero(over: Arc<HopfAlgebra>) -> Self {
        let m = over.dim;
        CrossedModule { over, dim: 0, act: LinMap::zero(0, 0), coact: LinMap::zero(0, 0), labels: vec![] }.with_m(m)
    }

    fn with_m(mut self, _m: usize) -> Self {
        self.act = LinMap::zero(self.dim, 0);
        self.coact = LinMap::zero(0, self.dim);
        self
    }

    /// The trivial one-dimensional module (ε action, trivial coaction): the unit object.
    pub fn unit_object(over: Arc<HopfAlgebra>) -> Self {
        let m = over.dim;
        let act = LinMap::from_dense(&RatMatrix::from_rows(&[over.counit.clone()]));
        let coact = LinMap::from_dense_cols(m, &[over.unit.clone()]);
        CrossedModule { over, dim: 1, act, coact, labels: vec!["1".into()] }
    }

    pub fn m(&self) -> usize {
        self.over.dim
    }

    /// Matrix of v ↦ v◁a.
    pub fn action_of(&self, a: &[Rat]) -> LinMap {
        let av = LinMap::from_dense_cols(self.m(), &[a.to_vec()]);
        self.act.compose(&id(self.dim).kron(&av))
    }

    pub fn verify(&self) -> Report {
        let (d, m) = (self.dim, self.m());
        let h = &self.over;
        let mut r = Report::new();
        let dims3 = [d, m, m];
        let dec3 = multi_index(&dims3);
        let dims2 = [d, m];
        let dec2 = multi_index(&dims2);
        let dec1 = |j: usize| format!("[{}]", j);
        if d == 0 {
            for c in ["right module", "module unit", "right comodule", "comodule counit", "crossed compatibility"] {
                r.ok(c);
            }
            return r;
        }
        r.map_eq("right module", &self.act.compose(&self.act.kron(&id(m))), &self.act.compose(&id(d).kron(&h.mul)), &dec3);
        r.map_eq("module unit", &self.act.compose(&id(d).kron(&h.unit_map())), &id(d), &dec1);
        r.map_eq(
            "right comodule",
            &self.coact.kron(&id(m)).compose(&self.coact),
            &id(d).kron(&h.comul).compose(&self.coact),
            &dec1,
        );
        r.map_eq("comodule counit", &id(d).kron(&h.counit_map()).compose(&self.coact), &id(d), &dec1);
        let lhs = self.coact.compose(&self.act);
        // v⊗a -> v0⊗v1⊗a1⊗a2⊗a3 -> v0⊗a2⊗a1⊗v1⊗a3 -> v0◁a2 ⊗ S(a1) v1 a3
        let spread = self.coact.kron(&h.comul3());
        let perm = tensor_perm(&[d, m, m, m, m], &[0, 3, 2, 1, 4]);
        let tail = self.act.kron(&h.mul3().compose(&h.antipode.kron(&id(m * m))));
        r.map_eq("crossed compatibility", &lhs, &tail.compose(&perm).compose(&spread), &dec2);
        r
    }

    /// (v⊗w)◁a = v◁a₁⊗w◁a₂, Δ_R(v⊗w) = v₀⊗w₀⊗v₁w₁.
    pub fn tensor(&self, w: &CrossedModule) -> CrossedModule {
        let (dv, dw, m) = (self.dim, w.dim, self.m());
        let h = &self.over;
        let act = self
            .act
            .kron(&w.act)
            .compose(&tensor_perm(&[dv, dw, m, m], &[0, 2, 1, 3]))
            .compose(&id(dv * dw).kron(&h.comul));
        let coact = id(dv * dw)
            .kron(&h.mul)
            .compose(&tensor_perm(&[dv, m, dw, m], &[0, 2, 1, 3]))
            .compose(&self.coact.kron(&w.coact));
        let labels = self.labels.iter().flat_map(|a| w.labels.iter().map(move |b| format!("{}⊗{}", a, b))).collect();
        CrossedModule { over: self.over.clone(), dim: dv * dw, act, coact, labels }
    }

    pub fn tensor_power(&self, n: usize) -> CrossedModule {
        let mut out = CrossedModule::unit_object(self.over.clone());
        for _ in 0..n {
            out = out.tensor(self);
        }
        if n == 0 {
            return out;
        }
        out.labels = tensor_labels(&self.labels, n);
        out
    }

    /// Crossed module induced on a sub or quotient described by (lift, proj).
    pub fn induced(&self, lift: &LinMap, proj: &LinMap, labels: Vec<String>) -> Result<CrossedModule, CrossedError> {
        let m = self.m();
        let act = proj.compose(&self.act).compose(&lift.kron(&id(m)));
        let coact = proj.kron(&id(m)).compose(&self.coact).compose(lift);
        let out = CrossedModule { over: self.over.clone(), dim: lift.cols, act, coact, labels };
        // invariance: lift∘act' == act∘(lift⊗id) when a sub; proj∘act == act'∘(proj⊗id) when a quotient.
        let sub_ok = lift.compose(&out.act) == self.act.compose(&lift.kron(&id(m)))
            && lift.kron(&id(m)).compose(&out.coact) == self.coact.compose(lift);
        let quot_ok = proj.compose(&self.act) == out.act.compose(&proj.kron(&id(m)))
            && out.coact.compose(proj) == proj.kron(&id(m)).compose(&self.coact);
        if sub_ok || quot_ok {
            Ok(out)
        } else {
            Err(CrossedError::NotInvariant("action or coaction leaves the subquotient".into()))
        }
    }
}

pub fn tensor_labels(labels: &[String], n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out.iter().flat_map(|p| labels.iter().map(move |l| if p.is_empty() { l.clone() } else { format!("{}{}", p, l) })).collect();
    }
    if n == 0 {
        return vec!["1".into()];
    }
    out
}

/// Ψ(v⊗w) = w₀⊗v◁w₁ as a map V⊗W → W⊗V.
pub fn braiding(v: &CrossedModule, w: &CrossedModule) -> Result<LinMap, CrossedError> {
    if !Arc::ptr_eq(&v.over, &w.over) && v.over.mul != w.over.mul {
        return Err(CrossedError::Mismatch);
    }
    let (dv, dw, m) = (v.dim, w.dim, v.m());
    let step = id(dv).kron(&w.coact);
    let perm = tensor_perm(&[dv, dw, m], &[1, 0, 2]);
    Ok(id(dw).kron(&v.act).compose(&perm).compose(&step))
}

pub fn verify_morphism(f: &LinMap, v: &CrossedModule, w: &CrossedModule) -> Report {
    let m = v.m();
    let mut r = Report::new();
    if (f.rows, f.cols) != (w.dim, v.dim) {
        r.fail("shape", format!("{}x{} vs {}x{}", f.rows, f.cols, w.dim, v.dim));
        return r;
    }
    let dims = [v.dim, m];
    let dec = multi_index(&dims);
    r.map_eq("commutes with action", &f.compose(&v.act), &w.act.compose(&f.kron(&id(m))), &dec);
    r.map_eq("commutes with coaction", &w.coact.compose(f), &f.kron(&id(m)).compose(&v.coact), &|j| format!("[{}]", j));
    r
}

/// Λ_A = {η : η◁a = 0 for a in A⁺}.
pub fn invariant_subspace(v: &CrossedModule) -> Vec<RatVector> {
    let aug = v.over.augmentation();
    let maps: Vec<LinMap> = aug.plus_basis.iter().map(|a| v.action_of(a)).collect();
    if maps.is_empty() {
        return (0..v.dim).map(|i| crate::exact::unit_vec(v.dim, i)).collect();
    }
    LinMap::vstack_all(v.dim, &maps).kernel()
}

/// The two crossed structures on A⁺: regular action with adjoint coaction, and
/// adjoint action with regular coaction (used for codifferentials).
pub struct CanonicalCrossed {
    pub regular_adjoint: CrossedModule,
    pub adjoint_regular: CrossedModule,
}

pub fn canonical_crossed_structures(h: &Arc<HopfAlgebra>) -> CanonicalCrossed {
    let m = h.dim;
    let aug = h.augmentation();
    let labels: Vec<String> = (0..m.saturating_sub(1)).map(|i| format!("a+{}", i)).collect();
    // a◁b = ab
    let act1 = aug.pi.compose(&h.mul).compose(&aug.incl.kron(&id(m)));
    // Δ_R a = π(a₂)⊗S(a₁)a₃
    let perm = tensor_perm(&[m, m, m], &[1, 0, 2]);
    let coact1 = aug
        .pi
        .kron(&h.mul.compose(&h.antipode.kron(&id(m))))
        .compose(&perm)
        .compose(&h.comul3())
        .compose(&aug.incl);
    // a◁b = S(b₁) a b₂
    let act2 = h
        .mul3()
        .compose(&h.antipode.kron(&id(m * m)))
        .compose(&tensor_perm(&[m, m, m], &[1, 0, 2]))
        .compose(&id(m).kron(&h.comul));
    let act2 = aug.pi.compose(&act2).compose(&aug.incl.kron(&id(m)));
    let coact2 = aug.pi.kron(&id(m)).compose(&h.comul).compose(&aug.incl);
    CanonicalCrossed {
        regular_adjoint: CrossedModule { over: h.clone(), dim: m - 1, act: act1, coact: coact1, labels: labels.clone() },
        adjoint_regular: CrossedModule { over: h.clone(), dim: m - 1, act: act2, coact: coact2, labels },
    }
}

/// Dual crossed module V* over H for a pairing P (rows: H basis, cols: A basis),
/// characterised by ⟨φ◁h, v⟩ = ⟨φ, v₀⟩⟨v₁, h⟩ and ⟨φ, v◁a⟩ = ⟨φ₀, v⟩⟨a, φ₁⟩.
pub fn dual_crossed(v: &CrossedModule, h: &Arc<HopfAlgebra>, pairing: &LinMap) -> Result<CrossedModule, CrossedError> {
    let (d, m) = (v.dim, v.m());
    if (pairing.rows, pairing.cols) != (h.dim, m) || h.dim != m {
        return Err(CrossedError::Shape("pairing".into()));
    }
    let rank = pairing.rank();
    if rank < m {
        return Err(CrossedError::DegeneratePairing(rank, m));
    }
    // (φ_i◁h)(v_j) = Σ_a coact[(i,a), j] P[h][a]
    let mut act_cols = vec![Vec::new(); d * m];
    for j in 0..d {
        for (row, c) in &v.coact.columns[j] {
            let (i, a) = (row / m, row % m);
            for hh in 0..m {
                let p = pairing.entry(hh, a);
                if !p.is_zero() {
                    act_cols[i * m + hh].push((j, c * &p));
                }
            }
        }
    }
    let act = LinMap::from_columns(d, act_cols);
    // Δ_R φ_i = Σ_j φ_j ⊗ x_ij with ⟨x_ij, a⟩ = act[i][(j,a)] for all a.
    let pt = pairing.transpose().to_dense(); // A × H: pt[a][h] = ⟨h,a⟩
    let mut coact_cols = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            let f: RatVector = (0..m).map(|a| v.act.entry(i, j * m + a)).collect();
            if crate::exact::is_zero_vec(&f) {
                continue;
            }
            let x = preimage(&pt, &f).expect("pairing invertible");
            for (hh, val) in x.into_iter().enumerate() {
                if !val.is_zero() {
                    coact_cols[i].push((j * m + hh, val));
                }
            }
        }
    }
    let coact = LinMap::from_columns(d * m, coact_cols);
    let labels = v.labels.iter().map(|l| format!("{}*", l)).collect();
    Ok(CrossedModule { over: h.clone(), dim: d, act, coact, labels })
}

/// Checks the two mutual-adjointness identities with dual bases.
pub fn verify_mutual_adjoint(v: &CrossedModule, vstar: &CrossedModule, pairing: &LinMap) -> Report {
    let (d, m) = (v.dim, v.m());
    let mut r = Report::new();
    let mut ok1 = None;
    let mut ok2 = None;
    for i in 0..d {
        for j in 0..d {
            for hh in 0..m {
                // ⟨φ_i◁h, v_j⟩ = Σ_a coact_v[(i,a), j] P[h][a]
                let lhs = vstar.act.entry(j, i * m + hh);
                let mut rhs = Rat::zero();
                for a in 0..m {
                    rhs += &(&v.coact.entry(i * m + a, j) * &pairing.entry(hh, a));
                }
                if lhs != rhs && ok1.is_none() {
                    ok1 = Some(format!("φ{} h{} v{}", i, hh, j));
                }
            }
            for a in 0..m {
                // ⟨φ_i, v_j◁a⟩ = Σ_h coact_vstar[(j,h), i] P[h][a]
                let lhs = v.act.entry(i, j * m + a);
                let mut rhs = Rat::zero();
                for hh in 0..m {
                    rhs += &(&vstar.coact.entry(j * m + hh, i) * &pairing.entry(hh, a));
                }
                if lhs != rhs && ok2.is_none() {
                    ok2 = Some(format!("φ{} a{} v{}", i, a, j));
                }
            }
        }
    }
    match ok1 {
        None => r.ok("action dual to coaction"),
        Some(w) => r.fail("action dual to coaction", w),
    }
    match ok2 {
        None => r.ok("coaction dual to action"),
        Some(w) => r.fail("coaction dual to action", w),
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionSide {
    /// left G-action, used for k(G)
    Left,
    /// right G-action, used for kG
    Right,
}

#[derive(Clone, Debug)]
pub struct GroupGradedModule {
    pub group: FiniteGroup,
    pub degree: Vec<usize>,
    pub side: ActionSide,
    /// per group element, dim × dim, columns are images of basis vectors
    pub action: Vec<LinMap>,
    pub labels: Vec<String>,
}

impl GroupGradedModule {
    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    /// Completes an action given on generators by closing under products.
    pub fn from_generators(
        group: &FiniteGroup,
        degree: Vec<usize>,
        side: ActionSide,
        gens: &[(usize, LinMap)],
        labels: Vec<String>,
    ) -> Result<GroupGradedModule, CrossedError> {
        let d = degree.len();
        let n = group.order;
        let mut action: Vec<Option<LinMap>> = vec![None; n];
        action[0] = Some(id(d));
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for (g, mg) in gens {
                let y = group.mul(x, *g);
                let mx = action[x].clone().unwrap();
                // left: ρ(xg) = ρ(x)ρ(g); right: M_{xg} = M_g M_x
                let my = match side {
                    ActionSide::Left => mx.compose(mg),
                    ActionSide::Right => mg.compose(&mx),
                };
                match &action[y] {
                    Some(existing) => {
                        if *existing != my {
                            return Err(CrossedError::NotAnAction(format!("relation violated at element {}", y)));
                        }
                    }
                    None => {
                        action[y] = Some(my);
                        frontier.push(y);
                    }
                }
            }
        }
        if action.iter().any(|a| a.is_none()) {
            return Err(CrossedError::NotAnAction("generators do not generate the group".into()));
        }
        let gm = GroupGradedModule { group: group.clone(), degree, side, action: action.into_iter().map(|a| a.unwrap()).collect(), labels };
        gm.validate()?;
        Ok(gm)
    }

    pub fn validate(&self) -> Result<(), CrossedError> {
        let g = &self.group;
        let n = g.order;
        for a in 0..n {
            for b in 0..n {
                let lhs = &self.action[g.mul(a, b)];
                let rhs = match self.side {
                    ActionSide::Left => self.action[a].compose(&self.action[b]),
                    ActionSide::Right => self.action[b].compose(&self.action[a]),
                };
                if *lhs != rhs {
                    return Err(CrossedError::NotAnAction(format!("({},{})", a, b)));
                }
            }
        }
        for h in 0..n {
            for (v, col) in self.action[h].columns.iter().enumerate() {
                let g0 = self.degree[v];
                let target = match self.side {
                    ActionSide::Left => g.conj(h, g0),
                    ActionSide::Right => g.conj(g.inv(h), g0),
                };
                if col.iter().any(|(i, _)| self.degree[*i] != target) {
                    return Err(CrossedError::Grading { h, g: g0, v });
                }
            }
        }
        Ok(())
    }
}

/// Builds the generic crossed module from group-graded data over k(G) (left
/// action) or kG (right action).
pub fn crossed_from_graded(gm: &GroupGradedModule, over: &Arc<HopfAlgebra>) -> Result<CrossedModule, CrossedError> {
    gm.validate()?;
    let d = gm.dim();
    let n = gm.group.order;
    if over.dim != n {
        return Err(CrossedError::Mismatch);
    }
    let (act, coact) = match (gm.side, &over.kind) {
        (ActionSide::Left, HopfKind::FunctionAlgebra(_)) => {
            // v◁δ_g is the grade-g part; Δ_R v = Σ_h h▷v⊗δ_h
            let act = LinMap::from_columns(
                d,
                (0..d * n).map(|k| if gm.degree[k / n] == k % n { vec![(k / n, Rat::one())] } else { vec![] }).collect(),
            );
            let coact = LinMap::from_columns(
                d * n,
                (0..d)
                    .map(|j| {
                        (0..n).flat_map(|h| gm.action[h].columns[j].iter().map(move |(i, c)| (i * n + h, c.clone()))).collect()
                    })
                    .collect(),
            );
            (act, coact)
        }
        (ActionSide::Right, HopfKind::GroupAlgebra(_)) => {
            let act = LinMap::from_columns(d, (0..d * n).map(|k| gm.action[k % n].columns[k / n].clone()).collect());
            let coact = LinMap::from_columns(d * n, (0..d).map(|j| vec![(j * n + gm.degree[j], Rat::one())]).collect());
            (act, coact)
        }
        _ => return Err(CrossedError::Mismatch),
    };
    let labels = if gm.labels.len() == d { gm.labels.clone() } else { (0..d).map(|i| format!("v{}", i)).collect() };
    Ok(CrossedModule { over: over.clone(), dim: d, act, coact, labels })
}

/// Reads group-graded data back from a crossed module over k(G) or kG whose
/// basis is homogeneous; None otherwise.
pub fn graded_from_crossed(v: &CrossedModule) -> Option<GroupGradedModule> {
    let (d, n) = (v.dim, v.m());
    match &v.over.kind {
        HopfKind::FunctionAlgebra(g) => {
            let mut degree = Vec::with_capacity(d);
            for j in 0..d {
                let own = vec![(j, Rat::one())];
                degree.push((0..n).find(|&a| v.act.columns[j * n + a] == own)?);
            }
            let action = (0..n)
                .map(|h| LinMap::from_columns(d, (0..d).map(|j| v.coact.columns[j].iter().filter(|(r, _)| r % n == h).map(|(r, c)| (r / n, c.clone())).collect()).collect()))
                .collect();
            let gm = GroupGradedModule { group: g.clone(), degree, side: ActionSide::Left, action, labels: v.labels.clone() };
            gm.validate().ok()?;
            Some(gm)
        }
        HopfKind::GroupAlgebra(g) => {
            let mut degree = Vec::with_capacity(d);
            for j in 0..d {
                match v.coact.columns[j].as_slice() {
                    [(r, c)] if r / n == j && c.is_one() => degree.push(r % n),
                    _ => return None,
                }
            }
            let action = (0..n).map(|h| LinMap::from_columns(d, (0..d).map(|j| v.act.columns[j * n + h].clone()).collect())).collect();
            let gm = GroupGradedModule { group: g.clone(), degree, side: ActionSide::Right, action, labels: v.labels.clone() };
            gm.validate().ok()?;
            Some(gm)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::flip;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    /// The ℤ₂ k(G) module: two vectors in grade g, trivial action.
    pub fn z2_kofg_module() -> (Arc<HopfAlgebra>, CrossedModule) {
        let g = z2();
        let h = Arc::new(HopfAlgebra::function_algebra(&g));
        let gm = GroupGradedModule {
            group: g,
            degree: vec![1, 1],
            side: ActionSide::Left,
            action: vec![id(2), id(2)],
            labels: vec!["e1".into(), "e2".into()],
        };
        let v = crossed_from_graded(&gm, &h).unwrap();
        (h, v)
    }

    pub fn z2_kg_module(sign_literal: bool) -> (Arc<HopfAlgebra>, CrossedModule) {
        let g = z2();
        let h = Arc::new(HopfAlgebra::group_algebra(&g));
        let s = if sign_literal { -1 } else { 1 };
        let mg = LinMap::from_columns(3, vec![vec![(0, Rat::int(-1))], vec![(1, Rat::int(s))], vec![(2, Rat::int(-s))]]);
        let gm = GroupGradedModule::from_generators(&g, vec![0, 1, 1], ActionSide::Right, &[(1, mg)], vec!["γ".into(), "α1".into(), "α2".into()])
            .unwrap();
        let v = crossed_from_graded(&gm, &h).unwrap();
        (h, v)
    }

    #[test]
    fn z2_module_is_crossed_with_flip_braiding() {
        let (_, v) = z2_kofg_module();
        assert!(v.verify().all_pass(), "{}", v.verify());
        // e◁δ_e = 0
        assert!(v.action_of(&[Rat::one(), Rat::zero()]).is_zero());
        assert_eq!(braiding(&v, &v).unwrap(), flip(2, 2));
    }

    #[test]
    fn z2_kg_braiding_sign() {
        let (_, v) = z2_kg_module(false);
        assert!(v.verify().all_pass());
        let psi = braiding(&v, &v).unwrap();
        // Ψ(γ⊗α1) = α1⊗γ◁g = -α1⊗γ ; γ⊗α1 is index 0*3+1, α1⊗γ is 1*3+0
        assert_eq!(psi.columns[1], vec![(3, Rat::int(-1))]);
    }

    #[test]
    fn invariants() {
        let (h, v) = z2_kofg_module();
        // k(G): Λ_A = Λ_e = 0 here
        assert!(invariant_subspace(&v).is_empty());
        let _ = h;
        let (_, w) = z2_kg_module(false);
        // only α1 is fixed by g
        assert_eq!(invariant_subspace(&w), vec![vec![Rat::zero(), Rat::one(), Rat::zero()]]);
        let (_, lit) = z2_kg_module(true);
        assert_eq!(invariant_subspace(&lit), vec![vec![Rat::zero(), Rat::zero(), Rat::one()]]);
    }

    #[test]
    fn broken_action_detected() {
        let (h, mut v) = z2_kofg_module();
        let _ = h;
        v.act = v.act.scale(&Rat::int(2));
        let rep = v.verify();
        assert!(!rep.get("right module").unwrap().pass);
    }

    #[test]
    fn canonical_structures_verify() {
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3), FiniteGroup::cyclic(1)] {
            for h in [HopfAlgebra::function_algebra(&g), HopfAlgebra::group_algebra(&g)] {
                let h = Arc::new(h);
                let c = canonical_crossed_structures(&h);
                assert!(c.regular_adjoint.verify().all_pass(), "{}", c.regular_adjoint.verify());
                assert!(c.adjoint_regular.verify().all_pass(), "{}", c.adjoint_regular.verify());
            }
        }
        // kℤ₂ adjoint_regular: coaction (g-1) ↦ (g-1)⊗g
        let h = Arc::new(HopfAlgebra::group_algebra(&z2()));
        let c = canonical_crossed_structures(&h);
        assert_eq!(c.adjoint_regular.coact.columns[0], vec![(1, Rat::one())]);
        assert!(c.adjoint_regular.action_of(&[Rat::zero(), Rat::one()]) == id(1));
    }

    #[test]
    fn dual_of_z2_module() {
        let (_, v) = z2_kofg_module();
        let kg = Arc::new(HopfAlgebra::group_algebra(&z2()));
        let p = crate::hopf::group_duality_pairing(&z2());
        let vs = dual_crossed(&v, &kg, &p).unwrap();
        assert!(vs.verify().all_pass(), "{}", vs.verify());
        assert!(verify_mutual_adjoint(&v, &vs, &p).all_pass());
        // trivial action, grade g
        assert_eq!(vs.action_of(&[Rat::zero(), Rat::one()]), id(2));
        assert_eq!(vs.coact.columns[0], vec![(1, Rat::one())]);
        let kofg = v.over.clone();
        let back = dual_crossed(&vs, &kofg, &p.transpose()).unwrap();
        assert_eq!((back.act.clone(), back.coact.clone()), (v.act.clone(), v.coact.clone()));
    }

    #[test]
    fn grading_violation_reported() {
        let g = z2();
        // a kG right module moving grade e to grade g is illegal
        let m = LinMap::from_columns(2, vec![vec![(1, Rat::one())], vec![(0, Rat::one())]]);
        let r = GroupGradedModule::from_generators(&g, vec![0, 1], ActionSide::Right, &[(1, m)], vec![]);
        assert!(matches!(r, Err(CrossedError::Grading { .. })));
    }
}
