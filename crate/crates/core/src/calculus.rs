//! First-order bicovariant calculi (Λ¹, ω) and the exterior algebras built
//! from them.

use crate::braided::{nichols, shuffle_hopf, universal_theta, BraidedError, GradedBraidedHopf};
use crate::crossed::{braiding, canonical_crossed_structures, crossed_from_graded, verify_morphism, ActionSide, CrossedError, CrossedModule, GroupGradedModule};
use crate::exact::{is_zero_vec, preimage, LinMap, Rat, RatMatrix, RatVector};
use crate::hopf::HopfAlgebra;
use crate::report::Report;
use crate::space::{descend, id, SpaceKind};
use crate::superhopf::{bosonise, GradedSuperHopf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CalculusError {
    #[error("omega is not a crossed-module morphism: {0}")]
    NotMorphism(String),
    #[error("omega_c for class rep {0} is not fixed by its centralizer")]
    NotCentralizerInvariant(usize),
    #[error("omega_c for class rep {0} is not in grade {0}")]
    WrongGrade(usize),
    #[error("class data given for the identity class")]
    IdentityClass,
    #[error("cocycle identity fails at ({0},{1})")]
    NotCocycle(usize, usize),
    #[error("calculus is not inner")]
    NotInner,
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("delta does not preserve the subspace in degree {0}")]
    NotClosed(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Braided(#[from] BraidedError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

#[derive(Clone, Debug)]
pub struct FirstOrderCalculus {
    pub over: Arc<HopfAlgebra>,
    pub lambda1: CrossedModule,
    /// dim Λ¹ × dim A⁺, in the augmentation basis
    pub omega: LinMap,
    pub theta: Option<RatVector>,
}

impl FirstOrderCalculus {
    /// ω̃ = ω∘π : A → Λ¹
    pub fn omega_tilde(&self) -> LinMap {
        self.omega.compose(&self.over.augmentation().pi)
    }

    /// da = a₁⊗ω̃(a₂)
    pub fn d0(&self) -> LinMap {
        id(self.over.dim).kron(&self.omega_tilde()).compose(&self.over.comul)
    }

    /// Basis of the image of ω (the standard sub-calculus).
    pub fn standard_subcalculus(&self) -> Vec<RatVector> {
        self.omega.image_basis()
    }
}

pub fn first_order(v: &CrossedModule, omega: &LinMap) -> Result<FirstOrderCalculus, CalculusError> {
    let h = v.over.clone();
    let plus = h.dim - 1;
    if (omega.rows, omega.cols) != (v.dim, plus) {
        return Err(CalculusError::Shape(format!("omega {}x{}, expected {}x{}", omega.rows, omega.cols, v.dim, plus)));
    }
    let aplus = canonical_crossed_structures(&h).regular_adjoint;
    let rep = verify_morphism(omega, &aplus, v);
    if let Some(f) = rep.failures().first() {
        return Err(CalculusError::NotMorphism(format!("{} ({})", f.id, f.witness.clone().unwrap_or_default())));
    }
    let mut c = FirstOrderCalculus { over: h, lambda1: v.clone(), omega: omega.clone(), theta: None };
    c.theta = detect_inner(&c).theta;
    Ok(c)
}

/// k(G) calculus from class data (c, ω_c), c ≠ e, ω_c ∈ Λ¹_c fixed by Z_c.
pub fn first_order_kofg(gm: &GroupGradedModule, class_data: &[(usize, RatVector)]) -> Result<FirstOrderCalculus, CalculusError> {
    let g = &gm.group;
    let h = Arc::new(HopfAlgebra::function_algebra(g));
    let v = crossed_from_graded(gm, &h)?;
    let n = g.order;
    let d = gm.dim();
    let mut omega_g: Vec<RatVector> = vec![vec![Rat::zero(); d]; n];
    for (c, wc) in class_data {
        let c = *c;
        if c == 0 {
            return Err(CalculusError::IdentityClass);
        }
        if wc.len() != d {
            return Err(CalculusError::Shape("omega_c".into()));
        }
        if wc.iter().enumerate().any(|(i, x)| !x.is_zero() && gm.degree[i] != c) {
            return Err(CalculusError::WrongGrade(c));
        }
        for u in 0..n {
            if g.mul(u, c) == g.mul(c, u) && gm.action[u].apply(wc) != *wc {
                return Err(CalculusError::NotCentralizerInvariant(c));
            }
        }
        for hh in 0..n {
            omega_g[g.conj(hh, c)] = gm.action[hh].apply(wc);
        }
    }
    // A⁺ basis δ_x, x ≠ e
    let omega = LinMap::from_dense_cols(d, &omega_g[1..]);
    let mut c = first_order(&v, &omega)?;
    let mut theta = vec![Rat::zero(); d];
    for w in &omega_g[1..] {
        for (t, x) in theta.iter_mut().zip(w) {
            *t += x;
        }
    }
    c.theta = Some(theta);
    Ok(c)
}

/// kG calculus from a cocycle ω_{gh} = ω_h + ω_g◁h with values in Λ¹_e.
pub fn first_order_kg(gm: &GroupGradedModule, cocycle: &[RatVector]) -> Result<FirstOrderCalculus, CalculusError> {
    let g = &gm.group;
    let h = Arc::new(HopfAlgebra::group_algebra(g));
    let v = crossed_from_graded(gm, &h)?;
    let n = g.order;
    let d = gm.dim();
    if cocycle.len() != n || cocycle.iter().any(|w| w.len() != d) {
        return Err(CalculusError::Shape("cocycle".into()));
    }
    for a in 0..n {
        for b in 0..n {
            let lhs = &cocycle[g.mul(a, b)];
            let act = gm.action[b].apply(&cocycle[a]);
            let rhs: RatVector = cocycle[b].iter().zip(&act).map(|(x, y)| x + y).collect();
            if *lhs != rhs {
                return Err(CalculusError::NotCocycle(a, b));
            }
        }
    }
    let omega = LinMap::from_dense_cols(d, &cocycle[1..]);
    let mut c = first_order(&v, &omega)?;
    let mut theta = vec![Rat::zero(); d];
    for w in cocycle {
        for (t, x) in theta.iter_mut().zip(w) {
            *t -= x;
        }
    }
    let s = Rat::frac(1, n as i64);
    c.theta = Some(theta.iter().map(|x| x * &s).collect());
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerResult {
    pub theta: Option<RatVector>,
    pub bicovariant: bool,
}

/// Solves ω(a) = θ◁a on the A⁺ basis and checks Δ_Rθ − θ⊗1 ∈ Λ¹□A.
pub fn detect_inner(c: &FirstOrderCalculus) -> InnerResult {
    let v = &c.lambda1;
    let aug = c.over.augmentation();
    let d = v.dim;
    if aug.plus_basis.is_empty() {
        return InnerResult { theta: Some(vec![Rat::zero(); d]), bicovariant: true };
    }
    let blocks: Vec<LinMap> = aug.plus_basis.iter().map(|a| v.action_of(a)).collect();
    let system = LinMap::vstack_all(d, &blocks);
    let rhs: RatVector = (0..aug.plus_basis.len()).flat_map(|k| c.omega.dense_col(k)).collect();
    let Some(theta) = system.preimage(&rhs) else {
        return InnerResult { theta: None, bicovariant: false };
    };
    let bicovariant = in_cotensor(v, &bicovariance_defect(v, &theta));
    InnerResult { theta: Some(theta), bicovariant }
}

/// Δ_Rθ − θ⊗1
pub fn bicovariance_defect(v: &CrossedModule, theta: &[Rat]) -> RatVector {
    let m = v.m();
    let mut x = v.coact.apply(theta);
    for (i, t) in theta.iter().enumerate() {
        for (a, u) in v.over.unit.iter().enumerate() {
            x[i * m + a] -= &(t * u);
        }
    }
    x
}

/// x ∈ V□A: (◁a⊗id)x = (id⊗a▷)x with the left adjoint action, for all basis a.
pub fn in_cotensor(v: &CrossedModule, x: &[Rat]) -> bool {
    let h = &v.over;
    let m = h.dim;
    let ad = h.left_adjoint();
    (0..m).all(|a| {
        let ea = h.basis(a);
        let lhs = v.action_of(&ea).kron(&id(m)).apply(x);
        let av = LinMap::from_dense_cols(m, &[ea]);
        let ad_a = ad.compose(&av.kron(&id(m)));
        let rhs = id(v.dim).kron(&ad_a).apply(x);
        lhs == rhs
    })
}

/// μ with ε(μ) = 1 and ω̃(μa) = 0 for all a ∈ A⁺.
pub fn quasint_mu(c: &FirstOrderCalculus) -> Option<RatVector> {
    let h = &c.over;
    let aug = h.augmentation();
    let wt = c.omega_tilde();
    let mut rows = vec![h.counit.clone()];
    let mut rhs = vec![Rat::one()];
    for a in &aug.plus_basis {
        let av = LinMap::from_dense_cols(h.dim, &[a.clone()]);
        let map = wt.compose(&h.mul).compose(&id(h.dim).kron(&av));
        let dense = map.to_dense();
        for i in 0..dense.rows {
            rows.push(dense.row(i).to_vec());
            rhs.push(Rat::zero());
        }
    }
    preimage(&RatMatrix::from_rows(&rows), &rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerFlavor {
    Nichols,
    Quadratic,
    UniversalTheta,
}

/// Ψ(η⊗θ) = θ⊗η for all basis η.
pub fn theta_braids_trivially(v: &CrossedModule, theta: &[Rat]) -> Option<usize> {
    let d = v.dim;
    let psi = braiding(v, v).ok()?;
    (0..d).find(|&e| {
        let eta = crate::exact::unit_vec(d, e);
        psi.apply(&crate::braided::kron_vec(&eta, theta)) != crate::braided::kron_vec(theta, &eta)
    })
}

/// Ω = A·⋉Λ with d = [θ,·}.
pub fn inner_exterior(c: &FirstOrderCalculus, flavor: InnerFlavor, cap: usize) -> Result<GradedSuperHopf, CalculusError> {
    let theta = c.theta.clone().ok_or(CalculusError::NotInner)?;
    let v = &c.lambda1;
    if !in_cotensor(v, &bicovariance_defect(v, &theta)) {
        return Err(CalculusError::Hypothesis("Δ_Rθ − θ⊗1 not in Λ¹□A".into()));
    }
    let lam = match flavor {
        InnerFlavor::Nichols | InnerFlavor::Quadratic => {
            if let Some(e) = theta_braids_trivially(v, &theta) {
                return Err(CalculusError::Hypothesis(format!("Ψ(η⊗θ) ≠ θ⊗η for basis vector {}", v.labels[e])));
            }
            nichols(v, cap, flavor == InnerFlavor::Quadratic)?
        }
        InnerFlavor::UniversalTheta => universal_theta(v, &theta, cap)?,
    };
    let mut om = bosonise(&lam);
    let t = om.embed_lambda(1, &theta);
    if flavor == InnerFlavor::Quadratic && cap >= 3 {
        check_theta_square(&om, &theta)?;
    }
    om.d = Some(om.inner_d(&t));
    if om.d.as_ref().unwrap().first().map(|d0| *d0 != c.d0()).unwrap_or(false) {
        return Err(CalculusError::Hypothesis("[θ,·} differs from the first-order d".into()));
    }
    Ok(om)
}

/// θ²◁A⁺ = 0 and θ² central in Λ, checked in the quotient.
fn check_theta_square(om: &GradedSuperHopf, theta: &[Rat]) -> Result<(), CalculusError> {
    let lam = &om.lambda;
    let t2 = lam.product[1][1].apply(&crate::braided::kron_vec(theta, theta));
    let aug = lam.base.over.augmentation();
    for a in &aug.plus_basis {
        if !is_zero_vec(&lam.modules[2].action_of(a).apply(&t2)) {
            return Err(CalculusError::Hypothesis("θ²◁A⁺ ≠ 0".into()));
        }
    }
    for e in 0..lam.dim(1) {
        let eta = crate::exact::unit_vec(lam.dim(1), e);
        let l = lam.product[2][1].apply(&crate::braided::kron_vec(&t2, &eta));
        let r = lam.product[1][2].apply(&crate::braided::kron_vec(&eta, &t2));
        if l != r {
            return Err(CalculusError::Hypothesis("θ² not central".into()));
        }
    }
    Ok(())
}

/// Attaches d(a⊗η) = a₁⊗ω̃(a₂)•η + a⊗δη given δ on Λ.
pub fn with_delta(c: &FirstOrderCalculus, lam: &GradedBraidedHopf, delta: &[LinMap]) -> GradedSuperHopf {
    let mut om = bosonise(lam);
    let h = &c.over;
    let m = h.dim;
    let wt = c.omega_tilde();
    let d = (0..lam.cap)
        .map(|n| {
            let left = id(m).kron(&lam.product[1][n]).compose(&id(m).kron(&wt).kron(&id(lam.dim(n)))).compose(&h.comul.kron(&id(lam.dim(n))));
            left.add(&id(m).kron(&delta[n]))
        })
        .collect();
    om.d = Some(d);
    om
}

/// δₙ on V⊗n for the shuffle algebra:
/// δₙ = δₙ₋₁⊗id + (−1)ⁿ (id⊗ω̃)∘Δ_R on V⊗n.
pub fn shuffle_delta_ambient(c: &FirstOrderCalculus, cap: usize) -> Vec<LinMap> {
    let v = &c.lambda1;
    let d = v.dim;
    let wt = c.omega_tilde();
    let mut out = vec![LinMap::zero(d, 1)];
    let mut power = CrossedModule::unit_object(v.over.clone());
    for n in 1..cap {
        power = power.tensor(v);
        let size = d.pow(n as u32);
        let rec = out[n - 1].kron(&id(d));
        let tail = id(size).kron(&wt).compose(&power.coact).scale(&Rat::pow_sign(n));
        out.push(rec.add(&tail));
    }
    out
}

pub fn shuffle_exterior(c: &FirstOrderCalculus, cap: usize) -> Result<GradedSuperHopf, CalculusError> {
    let lam = shuffle_hopf(&c.lambda1, cap)?;
    shuffle_exterior_on(c, &lam)
}

/// Shuffle δ restricted to a sub-Hopf algebra of Sh₋ (or Sh₋ itself).
pub fn shuffle_exterior_on(c: &FirstOrderCalculus, lam: &GradedBraidedHopf) -> Result<GradedSuperHopf, CalculusError> {
    let amb = shuffle_delta_ambient(c, lam.cap);
    let mut delta = Vec::new();
    for n in 0..lam.cap {
        let s = &lam.spaces[n];
        let kind = if s.is_free() { SpaceKind::Free } else { s.kind };
        let dn = descend(&amb[n], kind, &s.lift, &s.proj, &lam.spaces[n + 1]).ok_or(CalculusError::NotClosed(n))?;
        delta.push(dn);
    }
    Ok(with_delta(c, lam, &delta))
}

/// θ with Ψ(v⊗θ) = θ⊗v, making the shuffle δ inner.
pub fn shuffle_inner(c: &FirstOrderCalculus) -> Option<RatVector> {
    let theta = c.theta.as_ref()?;
    theta_braids_trivially(&c.lambda1, theta).is_none().then(|| theta.clone())
}

#[derive(Clone, Debug)]
pub struct UniqueDelta {
    /// per degree n < cap: δₙ : Λⁿ → Λⁿ⁺¹, None when not well defined
    pub delta: Vec<Option<LinMap>>,
    /// the degree-1 answer does not depend on the preimage chosen
    pub independent: bool,
}

/// δη = −m∘[2,−Ψ]⁺(η₀⊗ω̃(η₁)) on degree 1 of B₋, extended as a super-derivation.
pub fn delta_unique_nichols(c: &FirstOrderCalculus, cap: usize) -> Result<Option<UniqueDelta>, CalculusError> {
    let v = &c.lambda1;
    let d = v.dim;
    let lam = nichols(v, cap.max(2), false)?;
    let wt = c.omega_tilde();
    let f2 = lam.ops.factorial(2)?.to_dense();
    let y_map = id(d).kron(&wt).compose(&v.coact);
    let p2 = &lam.spaces[2].proj;
    let mut cols = Vec::new();
    for e in 0..d {
        let y = y_map.dense_col(e);
        let Some(x) = preimage(&f2, &y) else { return Ok(None) };
        cols.push(p2.apply(&x).iter().map(|t| -t).collect::<RatVector>());
    }
    // any two preimages differ by ker[2,−Ψ]!, which the projection kills
    let independent = f2.kernel_basis().iter().all(|k| is_zero_vec(&p2.apply(k)));
    let delta1 = LinMap::from_dense_cols(lam.dim(2), &cols);
    // lift δ₁ to V→V⊗2 and extend as a super-derivation on V⊗n
    let l2 = lam.spaces[2].lift.compose(&delta1);
    let mut out = vec![Some(LinMap::zero(lam.dim(1), 1))];
    for n in 1..cap {
        let size_l = |k: usize| d.pow(k as u32);
        let mut amb = LinMap::zero(size_l(n + 1), size_l(n));
        for k in 0..n {
            let t = id(size_l(k)).kron(&l2).kron(&id(size_l(n - k - 1))).scale(&Rat::pow_sign(k));
            amb = amb.add(&t);
        }
        let s = &lam.spaces[n];
        out.push(descend(&amb, s.kind, &s.lift, &s.proj, &lam.spaces[n + 1]));
    }
    out.truncate(cap);
    Ok(Some(UniqueDelta { delta: out, independent }))
}

/// Standard sub-calculus inside Ω: checks A·image(ω) ⊆ Ω¹ is closed under
/// left and right multiplication by A and contains dA.
pub fn verify_standard_subcalculus(c: &FirstOrderCalculus, om: &GradedSuperHopf) -> Report {
    let mut r = Report::new();
    let m = c.over.dim;
    let img = c.standard_subcalculus();
    let gens: Vec<RatVector> = (0..m)
        .flat_map(|a| img.iter().map(move |w| crate::braided::kron_vec(&c.over.basis(a), w)))
        .collect();
    let mut rs = crate::exact::RowSpace::new(om.dims[1]);
    for g in &gens {
        rs.insert(g);
    }
    let d0 = c.d0();
    let da_ok = (0..m).all(|a| rs.contains(&d0.dense_col(a)));
    let mut closed = true;
    for g in &gens {
        for b in 0..m {
            let bv = c.over.basis(b);
            let l = om.m(0, 1).apply(&crate::braided::kron_vec(&bv, g));
            let rr = om.m(1, 0).apply(&crate::braided::kron_vec(g, &bv));
            closed &= rs.contains(&l) && rs.contains(&rr);
        }
    }
    if da_ok {
        r.ok("dA inside standard sub-calculus");
    } else {
        r.fail("dA inside standard sub-calculus", "d of a basis element escapes");
    }
    if closed {
        r.ok("standard sub-calculus is a bimodule");
    } else {
        r.fail("standard sub-calculus is a bimodule", "product escapes");
    }
    r
}

/// Group-graded module for kG from a right action on generators.
pub fn kg_module(group: &crate::group::FiniteGroup, degree: Vec<usize>, gens: &[(usize, LinMap)], labels: Vec<String>) -> Result<GroupGradedModule, CrossedError> {
    GroupGradedModule::from_generators(group, degree, ActionSide::Right, gens, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn z2_data() -> GroupGradedModule {
        GroupGradedModule { group: FiniteGroup::cyclic(2), degree: vec![1, 1], side: ActionSide::Left, action: vec![id(2), id(2)], labels: vec!["e1".into(), "e2".into()] }
    }

    fn z2_kg_calc() -> FirstOrderCalculus {
        let g = FiniteGroup::cyclic(2);
        let mg = LinMap::from_columns(3, vec![vec![(0, Rat::int(-1))], vec![(1, Rat::int(1))], vec![(2, Rat::int(-1))]]);
        let gm = kg_module(&g, vec![0, 1, 1], &[(1, mg)], vec!["γ".into(), "α1".into(), "α2".into()]).unwrap();
        // ω_g = γ◁g − γ = −2γ
        first_order_kg(&gm, &[vec![Rat::zero(); 3], vec![Rat::int(-2), Rat::zero(), Rat::zero()]]).unwrap()
    }

    #[test]
    fn z2_class_calculus_is_inner() {
        let c = first_order_kofg(&z2_data(), &[(1, vec![Rat::one(), Rat::zero()])]).unwrap();
        assert_eq!(c.theta, Some(vec![Rat::one(), Rat::zero()]));
        let det = detect_inner(&c);
        assert!(det.bicovariant);
        // ω(πδ_e) = −e1 : πδ_e = −δ_g
        let wt = c.omega_tilde();
        assert_eq!(wt.dense_col(0), vec![Rat::int(-1), Rat::zero()]);
        assert_eq!(quasint_mu(&c), Some(vec![Rat::one(), Rat::zero()]));
    }

    #[test]
    fn z2_kg_theta_gamma() {
        let c = z2_kg_calc();
        assert_eq!(c.theta, Some(vec![Rat::one(), Rat::zero(), Rat::zero()]));
        let det = detect_inner(&c);
        assert!(det.theta.is_some() && det.bicovariant);
        // dg = g⊗(−2γ): d0 column g, entry (g, γ) = 1*3+0
        let d0 = c.d0();
        assert_eq!(d0.columns[1], vec![(3, Rat::int(-2))]);
    }

    #[test]
    fn cocycle_rejected() {
        let g = FiniteGroup::cyclic(2);
        let mg = LinMap::from_columns(1, vec![vec![(0, Rat::int(1))]]);
        let gm = kg_module(&g, vec![0], &[(1, mg)], vec!["x".into()]).unwrap();
        // trivial action: ω_{g²}=ω_e=0 must equal 2ω_g
        assert!(matches!(first_order_kg(&gm, &[vec![Rat::zero()], vec![Rat::one()]]), Err(CalculusError::NotCocycle(1, 1))));
    }

    #[test]
    fn minimal_z2_exterior() {
        let c = first_order_kofg(&z2_data(), &[(1, vec![Rat::one(), Rat::zero()])]).unwrap();
        let om = inner_exterior(&c, InnerFlavor::Nichols, 3).unwrap();
        assert_eq!(om.dims, vec![2, 4, 2, 0]);
        assert!(om.verify_strong_bicovariance().all_pass(), "{}", om.verify_strong_bicovariance());
        let ud = delta_unique_nichols(&c, 3).unwrap().unwrap();
        assert!(ud.independent);
        let d = om.d.as_ref().unwrap();
        assert_eq!(ud.delta[1].as_ref().unwrap(), &om.delta_part(d, 1));
        assert!(verify_standard_subcalculus(&c, &om).all_pass());
        let u = inner_exterior(&c, InnerFlavor::UniversalTheta, 3).unwrap();
        assert!(u.verify_strong_bicovariance().all_pass(), "{}", u.verify_strong_bicovariance());
    }

    #[test]
    fn shuffle_exteriors() {
        let c = first_order_kofg(&z2_data(), &[(1, vec![Rat::one(), Rat::zero()])]).unwrap();
        let om = shuffle_exterior(&c, 3).unwrap();
        assert!(om.verify_strong_bicovariance().all_pass(), "{}", om.verify_strong_bicovariance());
        let c6 = z2_kg_calc();
        let om6 = shuffle_exterior(&c6, 3).unwrap();
        assert!(om6.verify_strong_bicovariance().all_pass(), "{}", om6.verify_strong_bicovariance());
        // δv = −v₀⊗ω̃(v₁): for γ (grade e) ω̃(e) = 0
        let delta = shuffle_delta_ambient(&c6, 2);
        assert!(delta[1].columns[0].is_empty());
    }

    #[test]
    fn corrupted_sign_breaks_coderivation() {
        let c = first_order_kofg(&z2_data(), &[(1, vec![Rat::one(), Rat::zero()])]).unwrap();
        let mut om = shuffle_exterior(&c, 3).unwrap();
        let mut d = om.d.take().unwrap();
        d[1] = d[1].neg();
        om.d = Some(d);
        let rep = om.verify_strong_bicovariance();
        assert!(!rep.get("d super-coderivation").unwrap().pass);
    }
}
