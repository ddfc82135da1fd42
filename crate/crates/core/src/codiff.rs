//! Codifferentials (degree −1 super-derivations), their extensions, and the
//! duality pairings relating d on one side to i on the other.

use crate::braided::{is_right_invariant_dual, kron_vec, subshuffle_theta, tensor_hopf, BraidedError, Flavor, GradedBraidedHopf};
use crate::calculus::{shuffle_exterior_on, CalculusError, FirstOrderCalculus};
use crate::crossed::{canonical_crossed_structures, verify_morphism, verify_mutual_adjoint, CrossedModule};
use crate::exact::{is_zero_vec, LinMap, Rat, RatMatrix, RatVector};
use crate::hopf::HopfAlgebra;
use crate::report::Report;
use crate::space::{id, SpaceKind};
use crate::superhopf::{bosonise, GradedSuperHopf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodiffError {
    #[error("i is not a crossed-module morphism into A⁺: {0}")]
    NotMorphism(String),
    #[error("theta* is not right-invariant")]
    ThetaStarNotInvariant,
    #[error("delta does not preserve B_θ*: {0}")]
    NotAugmentable(String),
    #[error("pairing: {0}")]
    Pairing(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Braided(#[from] BraidedError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

#[derive(Clone, Debug)]
pub struct Codifferential {
    pub over: Arc<HopfAlgebra>,
    pub lambda1: CrossedModule,
    /// dim A⁺ × dim Λ¹
    pub i1: LinMap,
    pub theta_star: Option<RatVector>,
}

impl Codifferential {
    /// i as a map Λ¹ → A
    pub fn i_tilde(&self) -> LinMap {
        self.over.augmentation().incl.compose(&self.i1)
    }
}

pub fn first_order_codiff(v: &CrossedModule, i1: &LinMap) -> Result<Codifferential, CodiffError> {
    let h = v.over.clone();
    if (i1.rows, i1.cols) != (h.dim - 1, v.dim) {
        return Err(CodiffError::Shape(format!("i {}x{}", i1.rows, i1.cols)));
    }
    let target = canonical_crossed_structures(&h).adjoint_regular;
    let rep = verify_morphism(i1, v, &target);
    if let Some(f) = rep.failures().first() {
        return Err(CodiffError::NotMorphism(format!("{} ({})", f.id, f.witness.clone().unwrap_or_default())));
    }
    let mut c = Codifferential { over: h, lambda1: v.clone(), i1: i1.clone(), theta_star: None };
    c.theta_star = detect_coinner(&c);
    Ok(c)
}

/// Codifferential from i as a map Λ¹ → A; it must land in A⁺.
pub fn codiff_from_map(v: &CrossedModule, i_tilde: &LinMap) -> Result<Codifferential, CodiffError> {
    let h = &v.over;
    let eps = h.counit_map().compose(i_tilde);
    if !eps.is_zero() {
        return Err(CodiffError::NotMorphism("ε∘i ≠ 0".into()));
    }
    first_order_codiff(v, &h.augmentation().pi.compose(i_tilde))
}

/// Solves i(η) = ⟨θ*,η₀⟩η₁ − ⟨θ*,η⟩1 for θ*.
pub fn detect_coinner(c: &Codifferential) -> Option<RatVector> {
    let v = &c.lambda1;
    let (d, m) = (v.dim, v.m());
    let it = c.i_tilde();
    let mut rows = Vec::with_capacity(d * m);
    let mut rhs = Vec::with_capacity(d * m);
    for j in 0..d {
        for a in 0..m {
            let row: RatVector = (0..d)
                .map(|k| {
                    let mut x = v.coact.entry(k * m + a, j);
                    if k == j {
                        x -= &v.over.unit[a];
                    }
                    x
                })
                .collect();
            rows.push(row);
            rhs.push(it.entry(a, j));
        }
    }
    if d == 0 {
        return Some(vec![]);
    }
    crate::exact::preimage(&RatMatrix::from_rows(&rows), &rhs)
}

/// Ω¹ → k, a⊗η ↦ ε(a)⟨θ*,η⟩
fn theta_hat(om: &GradedSuperHopf, theta_star: &[Rat]) -> LinMap {
    let ts = LinMap::from_dense(&RatMatrix::from_rows(&[theta_star.to_vec()]));
    om.base.counit_map().kron(&ts)
}

/// i = (θ̂⊗id)Δ_{1,n−1} + (−1)ⁿ(id⊗θ̂)Δ_{n−1,1}
pub fn coinner_i(om: &GradedSuperHopf, theta_star: &[Rat]) -> Vec<LinMap> {
    let th = theta_hat(om, theta_star);
    let mut out = vec![LinMap::zero(0, om.dims[0])];
    for n in 1..=om.cap {
        let a = th.kron(&id(om.dims[n - 1])).compose(om.delta(1, n - 1));
        let b = id(om.dims[n - 1]).kron(&th).compose(om.delta(n - 1, 1)).scale(&Rat::pow_sign(n));
        out.push(a.add(&b));
    }
    out
}

/// i(x·v) = i(x)·v + (−1)^{n−1} x·i(v) on A·⋉T₋Λ¹ (any quotient must be
/// handled by the caller).
pub fn tensor_i(om: &GradedSuperHopf, c: &Codifferential) -> Vec<LinMap> {
    let it = c.i_tilde();
    let d = c.lambda1.dim;
    let unit = LinMap::from_dense_cols(om.base.dim, &[om.base.unit.clone()]);
    let embed_v = unit.kron(&id(d));
    let mut out = vec![LinMap::zero(0, om.dims[0])];
    for n in 1..=om.cap {
        let mut t = om.m(n - 1, 0).compose(&id(om.dims[n - 1]).kron(&it)).scale(&Rat::pow_sign(n - 1));
        if n >= 2 {
            t = t.add(&om.m(n - 2, 1).compose(&out[n - 1].kron(&embed_v)));
        }
        out.push(t);
    }
    out
}

pub fn extend_codiff_tensor(c: &Codifferential, cap: usize) -> Result<GradedSuperHopf, CodiffError> {
    let lam = tensor_hopf(&c.lambda1, cap)?;
    let mut om = bosonise(&lam);
    om.i = Some(tensor_i(&om, c));
    Ok(om)
}

/// ⟨θ*,v⟩w = w₀⟨θ*, v◁w₁⟩ for all basis v, w.
pub fn tensor_coinner_condition(v: &CrossedModule, theta_star: &[Rat]) -> bool {
    let d = v.dim;
    let m = v.m();
    (0..d).all(|vi| {
        (0..d).all(|wi| {
            let mut rhs = vec![Rat::zero(); d];
            for (row, c) in &v.coact.columns[wi] {
                let (w0, a) = (row / m, row % m);
                let va = v.act.dense_col(vi * m + a);
                let t: Rat = va.iter().zip(theta_star).fold(Rat::zero(), |s, (x, y)| s + x * y);
                rhs[w0] += &(c * &t);
            }
            let mut lhs = vec![Rat::zero(); d];
            lhs[wi] = theta_star[vi].clone();
            lhs == rhs
        })
    })
}

/// c(u) = ⟨θ*,u₀⟩⟨θ*,ω̃(u₁)⟩ as a functional on Λ¹.
fn aug_functional(c: &FirstOrderCalculus, theta_star: &[Rat]) -> RatVector {
    let v = &c.lambda1;
    let wt = c.omega_tilde();
    let ts = LinMap::from_dense(&RatMatrix::from_rows(&[theta_star.to_vec()]));
    let f = ts.kron(&ts.compose(&wt)).compose(&v.coact);
    f.to_dense().row(0).to_vec()
}

/// The two augmentation conditions on B_θ*, as exact linear checks.
pub fn subshuffle_aug_conditions(c: &FirstOrderCalculus, lam: &GradedBraidedHopf, theta_star: &[Rat]) -> Report {
    let v = &c.lambda1;
    let (d, m) = (v.dim, v.m());
    let cf = aug_functional(c, theta_star);
    let cmap = LinMap::from_dense(&RatMatrix::from_rows(&[cf.clone()]));
    let mut r = Report::new();
    // (c⊗id)Δ_R w = c(w)1
    let lhs = cmap.kron(&id(m)).compose(&v.coact);
    let unit = LinMap::from_dense_cols(m, &[v.over.unit.clone()]);
    r.map_eq("augmentation condition on degree 1", &lhs, &unit.compose(&cmap), &|j| format!("[{}]", j));
    // (c⊗id^{n−1})x = (−1)^{n−1}(id^{n−1}⊗c)x on B_θ*ⁿ
    let mut bad = None;
    for n in 1..=lam.cap {
        let rest = id(d.pow((n - 1) as u32));
        let l = cmap.kron(&rest);
        let rr = rest.kron(&cmap).scale(&Rat::pow_sign(n - 1));
        if l.sub(&rr).compose(&lam.spaces[n].lift).is_zero() {
            continue;
        }
        bad.get_or_insert(format!("degree {}", n));
    }
    match bad {
        None => r.ok("augmentation condition in all degrees"),
        Some(w) => r.fail("augmentation condition in all degrees", w),
    }
    r
}

/// ĩ(w) = ⟨θ*,w₀⟩w₁ − ⟨θ*,w⟩1.
pub fn coinner_first_order(v: &CrossedModule, ts: &[Rat]) -> LinMap {
    let (d, m) = (v.dim, v.m());
    let unit = &v.over.unit;
    LinMap::from_dense_cols(
        m,
        &(0..d)
            .map(|j| {
                (0..m)
                    .map(|a| {
                        let mut x = Rat::zero();
                        for (k, t) in ts.iter().enumerate() {
                            x += &(t * &v.coact.entry(k * m + a, j));
                        }
                        x - &ts[j] * &unit[a]
                    })
                    .collect()
            })
            .collect::<Vec<_>>(),
    )
}

/// A·⋉B_θ*(Λ¹) with coinner i, and d from the shuffle δ when a first-order
/// calculus on the same Λ¹ is supplied.
pub fn coinner_subshuffle(v: &CrossedModule, theta_star: &[Rat], calc: Option<&FirstOrderCalculus>, cap: usize) -> Result<(GradedSuperHopf, Report), CodiffError> {
    if !is_right_invariant_dual(v, theta_star) {
        return Err(CodiffError::ThetaStarNotInvariant);
    }
    let lam = subshuffle_theta(v, theta_star, cap)?;
    let mut rep = Report::new();
    let mut om = match calc {
        Some(c) => {
            let conds = subshuffle_aug_conditions(c, &lam, theta_star);
            let ok = conds.all_pass();
            rep.merge("", conds);
            match shuffle_exterior_on(c, &lam) {
                Ok(om) if ok => om,
                Ok(_) => return Err(CodiffError::NotAugmentable("conditions fail while δ preserves B_θ*".into())),
                Err(CalculusError::NotClosed(n)) => return Err(CodiffError::NotAugmentable(format!("degree {}", n))),
                Err(e) => return Err(e.into()),
            }
        }
        None => bosonise(&lam),
    };
    om.i = Some(coinner_i(&om, theta_star));
    Ok((om, rep))
}

/// Checks 𝓛 = [i(θ),·] on degree 0 for an inner d with θ.
pub fn verify_lie_inner(om: &GradedSuperHopf, theta: &[Rat]) -> Report {
    let mut r = Report::new();
    let (Some(l), Some(i)) = (om.lie_derivative(), om.i.as_ref()) else {
        r.fail("𝓛 inner on degree 0", "needs d and i");
        return r;
    };
    let t = om.embed_lambda(1, theta);
    let it = i[1].apply(&t);
    let comm = om.left_mul(0, &it, 0).sub(&om.right_mul(0, &it, 0));
    r.map_eq("𝓛 = [i(θ),·] on degree 0", &l[0], &comm, &|j| format!("[{}]", j));
    r
}

#[derive(Clone, Debug)]
pub struct UniversalAugmentation {
    pub omega: GradedSuperHopf,
    pub report: Report,
    pub accepted: bool,
}

/// Extends i on Ω_θ by the tensor recursion; accepted iff θ◁i(θ) is graded
/// central.
pub fn augment_universal(om_theta: &GradedSuperHopf, theta: &[Rat], c: &Codifferential) -> Result<UniversalAugmentation, CodiffError> {
    let lam = &om_theta.lambda;
    if lam.flavor != Flavor::UniversalTheta {
        return Err(CodiffError::Shape("needs the universal_theta flavor".into()));
    }
    let cap = om_theta.cap;
    let tens = bosonise(&tensor_hopf(&lam.base, cap)?);
    let it = tensor_i(&tens, c);
    let m = om_theta.base.dim;
    let mut report = Report::new();
    let mut i = vec![LinMap::zero(0, om_theta.dims[0])];
    let mut descends = None;
    for n in 1..=cap {
        let (ln, pn) = (id(m).kron(&lam.spaces[n].lift), id(m).kron(&lam.spaces[n].proj));
        let pn1 = id(m).kron(&lam.spaces[n - 1].proj);
        let induced = pn1.compose(&it[n]).compose(&ln);
        if pn1.compose(&it[n]) != induced.compose(&pn) {
            descends.get_or_insert(format!("degree {}", n));
        }
        i.push(induced);
    }
    match &descends {
        None => report.ok("i descends to Ω_θ"),
        Some(w) => report.fail("i descends to Ω_θ", w.clone()),
    }
    let mut om = om_theta.clone();
    om.i = Some(i);
    let t = om.embed_lambda(1, theta);
    let itheta = c.i_tilde().apply(theta);
    let x = om.embed_lambda(1, &lam.base.action_of(&itheta).apply(theta));
    let mut central = true;
    for q in 0..=1.min(cap - 1) {
        let lhs = om.left_mul(1, &x, q);
        let rhs = om.right_mul(1, &x, q).scale(&Rat::pow_sign(q));
        central &= lhs == rhs;
    }
    if central {
        report.ok("θ◁i(θ) graded central");
    } else {
        report.fail("θ◁i(θ) graded central", "fails against degree 0 or 1");
    }
    if cap >= 2 {
        let t2 = om.m(1, 1).apply(&kron_vec(&t, &t));
        let lhs = om.i.as_ref().unwrap()[2].apply(&t2);
        let rhs: RatVector = x.iter().map(|v| -v).collect();
        if lhs == rhs {
            report.ok("i(θ²) = −θ◁i(θ)");
        } else {
            report.fail("i(θ²) = −θ◁i(θ)", "degree 2");
        }
    }
    let accepted = central && descends.is_none();
    Ok(UniversalAugmentation { omega: om, report, accepted })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Nichols,
    TensorShuffle,
    UniversalSubshuffle,
}

#[derive(Clone, Debug)]
pub struct DualityPairing {
    pub kind: PairKind,
    /// H × A
    pub base_pairing: LinMap,
    /// per degree: dim Λⁿ(right) × dim Λⁿ(left)
    pub degree: Vec<LinMap>,
}

impl DualityPairing {
    /// Pairing on Ωⁿ: ⟨h⊗φ, a⊗x⟩ = ⟨h,a⟩⟨φ,x⟩.
    pub fn omega(&self, n: usize) -> LinMap {
        self.base_pairing.kron(&self.degree[n])
    }
}

pub fn braided_pairing(left: &GradedBraidedHopf, right: &GradedBraidedHopf, base: &LinMap) -> Result<DualityPairing, CodiffError> {
    let kind = match (left.flavor, right.flavor) {
        (Flavor::Nichols, Flavor::Nichols) => PairKind::Nichols,
        (Flavor::Tensor, Flavor::Shuffle) => PairKind::TensorShuffle,
        (Flavor::UniversalTheta, Flavor::SubshuffleTheta) => PairKind::UniversalSubshuffle,
        (a, b) => return Err(CodiffError::Pairing(format!("illegal flavor pair ({}, {})", a.name(), b.name()))),
    };
    if left.base.dim != right.base.dim || left.cap != right.cap {
        return Err(CodiffError::Pairing("degree-1 dims or caps differ".into()));
    }
    let adj = verify_mutual_adjoint(&left.base, &right.base, base);
    if !adj.all_pass() {
        return Err(CodiffError::Pairing("degree-1 modules are not mutually adjoint".into()));
    }
    let mut degree = Vec::new();
    for n in 0..=left.cap {
        let (ll, rl) = (&left.spaces[n].lift, &right.spaces[n].lift);
        let amb = match kind {
            PairKind::Nichols => left.ops.factorial(n)?,
            _ => id(ll.rows),
        };
        let p = rl.transpose().compose(&amb).compose(ll);
        // the pairing must vanish on the relations of either quotient
        for (side, sp) in [("left", &left.spaces[n]), ("right", &right.spaces[n])] {
            if sp.kind == SpaceKind::Quotient {
                let other = if side == "left" { rl.transpose().compose(&amb) } else { ll.transpose().compose(&amb.transpose()) };
                if sp.relations.iter().any(|rel| !is_zero_vec(&other.apply(rel))) {
                    return Err(CodiffError::Pairing(format!("{} relations not killed in degree {}", side, n)));
                }
            }
        }
        degree.push(p);
    }
    Ok(DualityPairing { kind, base_pairing: base.clone(), degree })
}

/// Product/coproduct adjointness at the braided level and on Ω, plus
/// nondegeneracy.
pub fn verify_pairing(p: &DualityPairing, left: &GradedSuperHopf, right: &GradedSuperHopf) -> Report {
    let mut r = Report::new();
    let cap = left.cap.min(right.cap);
    let (bl, br) = (&left.lambda, &right.lambda);
    let mut bad = None;
    for a in 0..=cap {
        for b in 0..=cap - a {
            let n = a + b;
            let l1 = br.product[a][b].transpose().compose(&p.degree[n]);
            let r1 = p.degree[a].kron(&p.degree[b]).compose(&bl.coproduct[a][b]);
            let l2 = p.degree[n].compose(&bl.product[a][b]);
            let r2 = br.coproduct[a][b].transpose().compose(&p.degree[a].kron(&p.degree[b]));
            if bad.is_none() && (l1 != r1 || l2 != r2) {
                bad = Some(format!("braided bidegree ({},{})", a, b));
            }
            let (pa, pb, pn) = (p.omega(a), p.omega(b), p.omega(n));
            let l1 = right.m(a, b).transpose().compose(&pn);
            let r1 = pa.kron(&pb).compose(left.delta(a, b));
            let l2 = pn.compose(left.m(a, b));
            let r2 = right.delta(a, b).transpose().compose(&pa.kron(&pb));
            if bad.is_none() && (l1 != r1 || l2 != r2) {
                bad = Some(format!("Ω bidegree ({},{})", a, b));
            }
        }
    }
    match bad.take() {
        None => r.ok("pairing respects products and coproducts"),
        Some(w) => r.fail("pairing respects products and coproducts", w),
    }
    for n in 0..=cap {
        let pn = &p.degree[n];
        if !(pn.rows == pn.cols && pn.rank() == pn.rows) {
            bad.get_or_insert(format!("degree {} ({}x{}, rank {})", n, pn.rows, pn.cols, pn.rank()));
        }
    }
    match bad {
        None => r.ok("pairing nondegenerate"),
        Some(w) => r.fail("pairing nondegenerate", w),
    }
    r
}

/// ⟨i_right(φ), x⟩ = ⟨φ, d_left(x)⟩ and ⟨φ, i_left(x)⟩ = ⟨d_right(φ), x⟩.
pub fn verify_mutual_duality(p: &DualityPairing, left: &GradedSuperHopf, right: &GradedSuperHopf) -> Report {
    let mut r = Report::new();
    let cap = left.cap.min(right.cap);
    if let (Some(d), Some(i)) = (&left.d, &right.i) {
        let mut bad = None;
        for n in 0..cap {
            if i[n + 1].transpose().compose(&p.omega(n)) != p.omega(n + 1).compose(&d[n]) {
                bad.get_or_insert(format!("degree {}", n));
            }
        }
        match bad {
            None => r.ok("i on the right is adjoint to d on the left"),
            Some(w) => r.fail("i on the right is adjoint to d on the left", w),
        }
    }
    if let (Some(i), Some(d)) = (&left.i, &right.d) {
        let mut bad = None;
        for n in 0..cap {
            if p.omega(n).compose(&i[n + 1]) != d[n].transpose().compose(&p.omega(n + 1)) {
                bad.get_or_insert(format!("degree {}", n));
            }
        }
        match bad {
            None => r.ok("d on the right is adjoint to i on the left"),
            Some(w) => r.fail("d on the right is adjoint to i on the left", w),
        }
    }
    if r.checks.is_empty() {
        r.ok("no d/i pair to compare");
    }
    r
}

/// Builds the Ω-level inner d = [x,·} for a given degree-1 Λ vector.
pub fn attach_inner_d(om: &mut GradedSuperHopf, theta: &[Rat]) {
    let t = om.embed_lambda(1, theta);
    om.d = Some(om.inner_d(&t));
}
