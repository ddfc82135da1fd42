//! Super-bosonisation Ω = A·⋉Λ as per-bidegree matrices, with optional
//! differential d and codifferential i, and the verifiers for them.

use crate::braided::GradedBraidedHopf;
use crate::exact::{LinMap, Rat};
use crate::hopf::HopfAlgebra;
use crate::report::Report;
use crate::space::{id, tensor_perm};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct GradedSuperHopf {
    pub base: Arc<HopfAlgebra>,
    pub lambda: GradedBraidedHopf,
    pub cap: usize,
    /// dim Ωⁿ = dim A · dim Λⁿ; basis a⊗η with A-major index
    pub dims: Vec<usize>,
    pub product: Vec<Vec<LinMap>>,
    pub coproduct: Vec<Vec<LinMap>>,
    /// d[n]: Ωⁿ → Ωⁿ⁺¹ for n < cap
    pub d: Option<Vec<LinMap>>,
    /// i[n]: Ωⁿ → Ωⁿ⁻¹ for n ≥ 1 (i[0] is the empty map)
    pub i: Option<Vec<LinMap>>,
}

/// Builds A·⋉Λ with (a⊗η)(b⊗ζ) = ab₁⊗(η◁b₂)ζ and
/// Δ(a⊗η) = a₁⊗(η¹)₀ ⊗ a₂(η¹)₁⊗η².
pub fn bosonise(lam: &GradedBraidedHopf) -> GradedSuperHopf {
    let a = lam.base.over.clone();
    let m = a.dim;
    let cap = lam.cap;
    let ld = lam.dims();
    let dims: Vec<usize> = ld.iter().map(|x| x * m).collect();
    let mut product = vec![Vec::new(); cap + 1];
    let mut coproduct = vec![Vec::new(); cap + 1];
    for p in 0..=cap {
        for q in 0..=cap - p {
            let (dp, dq) = (ld[p], ld[q]);
            let spread = id(m * dp).kron(&a.comul).kron(&id(dq));
            let perm = tensor_perm(&[m, dp, m, m, dq], &[0, 2, 1, 3, 4]);
            let act = a.mul.kron(&lam.modules[p].act).kron(&id(dq));
            let prod = id(m).kron(&lam.product[p][q]).compose(&act).compose(&perm).compose(&spread);
            product[p].push(prod);

            let split = a.comul.kron(&lam.coproduct[p][q]);
            let co = id(m * m).kron(&lam.modules[p].coact).kron(&id(dq));
            let perm = tensor_perm(&[m, m, dp, m, dq], &[0, 2, 1, 3, 4]);
            let fin = id(m * dp).kron(&a.mul).kron(&id(dq));
            coproduct[p].push(fin.compose(&perm).compose(&co).compose(&split));
        }
    }
    GradedSuperHopf { base: a, lambda: lam.clone(), cap, dims, product, coproduct, d: None, i: None }
}

impl GradedSuperHopf {
    pub fn m(&self, p: usize, q: usize) -> &LinMap {
        &self.product[p][q]
    }

    pub fn delta(&self, p: usize, q: usize) -> &LinMap {
        &self.coproduct[p][q]
    }

    /// The element 1⊗η of Ωⁿ, for η given in Λⁿ coordinates.
    pub fn embed_lambda(&self, n: usize, eta: &[Rat]) -> Vec<Rat> {
        let dl = self.lambda.dim(n);
        let mut out = vec![Rat::zero(); self.dims[n]];
        for (a, u) in self.base.unit.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (k, x) in eta.iter().enumerate() {
                out[a * dl + k] = u * x;
            }
        }
        out
    }

    /// Left multiplication by a degree-p element x: Ω^q → Ω^{p+q}.
    pub fn left_mul(&self, p: usize, x: &[Rat], q: usize) -> LinMap {
        let xv = LinMap::from_dense_cols(self.dims[p], &[x.to_vec()]);
        self.m(p, q).compose(&xv.kron(&id(self.dims[q])))
    }

    pub fn right_mul(&self, q: usize, x: &[Rat], p: usize) -> LinMap {
        let xv = LinMap::from_dense_cols(self.dims[q], &[x.to_vec()]);
        self.m(p, q).compose(&id(self.dims[p]).kron(&xv))
    }

    /// Inner d = [x,·} for x of degree 1: dₙ = L_x − (−1)ⁿR_x.
    pub fn inner_d(&self, x: &[Rat]) -> Vec<LinMap> {
        (0..self.cap).map(|n| self.left_mul(1, x, n).sub(&self.right_mul(1, x, n).scale(&Rat::pow_sign(n)))).collect()
    }

    /// The Λ-part δ of d on degree n: δₙ = (ε⊗id)∘dₙ∘(1⊗·).
    pub fn delta_part(&self, dmaps: &[LinMap], n: usize) -> LinMap {
        let a = &self.base;
        let unit = LinMap::from_dense_cols(a.dim, &[a.unit.clone()]);
        a.counit_map().kron(&id(self.lambda.dim(n + 1))).compose(&dmaps[n]).compose(&unit.kron(&id(self.lambda.dim(n))))
    }

    pub fn verify_hopf(&self) -> Report {
        let cap = self.cap;
        let dims = &self.dims;
        let a = &self.base;
        let idn = |n: usize| id(dims[n]);
        let mut r = Report::new();
        let mut bad: Option<String> = None;
        let note = |r: &mut Report, name: &str, bad: &mut Option<String>| match bad.take() {
            None => r.ok(name),
            Some(w) => r.fail(name, w),
        };
        for p in 0..=cap {
            for q in 0..=cap - p {
                for s in 0..=cap - p - q {
                    let lhs = self.m(p + q, s).compose(&self.m(p, q).kron(&idn(s)));
                    let rhs = self.m(p, q + s).compose(&idn(p).kron(self.m(q, s)));
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("degrees ({},{},{})", p, q, s));
                    }
                    let lhs = self.delta(p, q).kron(&idn(s)).compose(self.delta(p + q, s));
                    let rhs = idn(p).kron(self.delta(q, s)).compose(self.delta(p, q + s));
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("coassociativity degrees ({},{},{})", p, q, s));
                    }
                }
            }
        }
        note(&mut r, "associativity and coassociativity", &mut bad);
        let unit = LinMap::from_dense_cols(a.dim, &[a.unit.clone()]);
        let eps = a.counit_map();
        for n in 0..=cap {
            if self.m(0, n).compose(&unit.kron(&idn(n))) != idn(n) || self.m(n, 0).compose(&idn(n).kron(&unit)) != idn(n) {
                bad.get_or_insert(format!("unit in degree {}", n));
            }
            if eps.kron(&idn(n)).compose(self.delta(0, n)) != idn(n) || idn(n).kron(&eps).compose(self.delta(n, 0)) != idn(n) {
                bad.get_or_insert(format!("counit in degree {}", n));
            }
        }
        note(&mut r, "unit and counit", &mut bad);
        if eps.compose(self.m(0, 0)) != eps.kron(&eps) || self.delta(0, 0).compose(&unit) != unit.kron(&unit) {
            bad = Some("degree 0".into());
        }
        note(&mut r, "counit multiplicative and coproduct unital", &mut bad);
        // Δ(xy) = Σ (m⊗m)(id⊗(−1)^{a2 b1} flip⊗id)(Δ⊗Δ)
        for p in 0..=cap {
            for q in 0..=cap - p {
                for c in 0..=p + q {
                    let e = p + q - c;
                    let lhs = self.delta(c, e).compose(self.m(p, q));
                    let mut rhs = LinMap::zero(lhs.rows, lhs.cols);
                    for a1 in c.saturating_sub(q)..=p.min(c) {
                        let (b1, a2) = (c - a1, p - a1);
                        let b2 = q - b1;
                        let fl = tensor_perm(&[dims[a2], dims[b1]], &[1, 0]).scale(&Rat::pow_sign(a2 * b1));
                        let mid = idn(a1).kron(&fl).kron(&idn(b2));
                        let t = self.m(a1, b1).kron(self.m(a2, b2)).compose(&mid).compose(&self.delta(a1, a2).kron(self.delta(b1, b2)));
                        rhs = rhs.add(&t);
                    }
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("({},{}) into ({},{})", p, q, c, e));
                    }
                }
            }
        }
        note(&mut r, "super bialgebra", &mut bad);
        r
    }

    /// Checks that maps f[n] of degree k (+1 for d, −1 for i) square to zero
    /// and are super-derivations and super-coderivations.
    fn verify_graded_operator(&self, name: &str, f: &[LinMap], k: i64) -> Report {
        let cap = self.cap as i64;
        let dims = &self.dims;
        let idn = |n: i64| id(dims[n as usize]);
        let get = |n: i64| -> Option<&LinMap> {
            if n < 0 || n > cap || n + k < 0 || n + k > cap {
                None
            } else {
                f.get(n as usize)
            }
        };
        let mut r = Report::new();
        let mut bad = None;
        for n in 0..=cap {
            if let (Some(f1), Some(f2)) = (get(n), get(n + k)) {
                if !f2.compose(f1).is_zero() && bad.is_none() {
                    bad = Some(format!("degree {}", n));
                }
            }
        }
        match bad.take() {
            None => r.ok(format!("{} squares to zero", name)),
            Some(w) => r.fail(format!("{} squares to zero", name), w),
        }
        // f m_{p,q} = m(f⊗id) + (−1)^p m(id⊗f)
        for p in 0..=cap {
            for q in 0..=cap - p {
                let n = p + q;
                let Some(fn_) = get(n) else { continue };
                let lhs = fn_.compose(self.m(p as usize, q as usize));
                let mut rhs = LinMap::zero(lhs.rows, lhs.cols);
                if let Some(fp) = get(p) {
                    rhs = rhs.add(&self.m((p + k) as usize, q as usize).compose(&fp.kron(&idn(q))));
                }
                if let Some(fq) = get(q) {
                    rhs = rhs.add(&self.m(p as usize, (q + k) as usize).compose(&idn(p).kron(fq)).scale(&Rat::pow_sign(p as usize)));
                }
                if lhs != rhs && bad.is_none() {
                    bad = Some(format!("bidegree ({},{})", p, q));
                }
            }
        }
        match bad.take() {
            None => r.ok(format!("{} super-derivation", name)),
            Some(w) => r.fail(format!("{} super-derivation", name), w),
        }
        // Δ_{p,q} f = (f⊗id)Δ_{p−k,q} + (−1)^p (id⊗f)Δ_{p,q−k}
        for p in 0..=cap {
            for q in 0..=cap - p {
                let n = p + q - k;
                let Some(fn_) = get(n) else { continue };
                let lhs = self.delta(p as usize, q as usize).compose(fn_);
                let mut rhs = LinMap::zero(lhs.rows, lhs.cols);
                if let Some(fp) = get(p - k) {
                    rhs = rhs.add(&fp.kron(&idn(q)).compose(self.delta((p - k) as usize, q as usize)));
                }
                if let Some(fq) = get(q - k) {
                    rhs = rhs.add(&idn(p).kron(fq).compose(self.delta(p as usize, (q - k) as usize)).scale(&Rat::pow_sign(p as usize)));
                }
                if lhs != rhs && bad.is_none() {
                    bad = Some(format!("bidegree ({},{})", p, q));
                }
            }
        }
        match bad.take() {
            None => r.ok(format!("{} super-coderivation", name)),
            Some(w) => r.fail(format!("{} super-coderivation", name), w),
        }
        r
    }

    pub fn verify_strong_bicovariance(&self) -> Report {
        let mut r = self.verify_hopf();
        match &self.d {
            Some(d) => r.merge("", self.verify_graded_operator("d", d, 1)),
            None => r.fail("d present", "no differential"),
        }
        r
    }

    pub fn verify_codifferential(&self) -> Report {
        let mut r = Report::new();
        match &self.i {
            Some(i) => r.merge("", self.verify_graded_operator("i", i, -1)),
            None => r.fail("i present", "no codifferential"),
        }
        r
    }

    /// 𝓛ₙ = d i + i d on degree n, for n < cap.
    pub fn lie_derivative(&self) -> Option<Vec<LinMap>> {
        let (d, i) = (self.d.as_ref()?, self.i.as_ref()?);
        Some(
            (0..self.cap)
                .map(|n| {
                    let id_part = i[n + 1].compose(&d[n]);
                    if n == 0 {
                        id_part
                    } else {
                        d[n - 1].compose(&i[n]).add(&id_part)
                    }
                })
                .collect(),
        )
    }

    /// 𝓛 derivation, coderivation, commuting with d and i.
    pub fn verify_augmentation(&self) -> Report {
        let mut r = Report::new();
        let Some(l) = self.lie_derivative() else {
            r.fail("augmentation present", "needs d and i");
            return r;
        };
        let lr = self.verify_graded_operator("𝓛", &l, 0);
        for c in lr.checks.into_iter().filter(|c| !c.id.contains("squares")) {
            r.checks.push(c);
        }
        let (d, i) = (self.d.as_ref().unwrap(), self.i.as_ref().unwrap());
        let mut bad = None;
        for n in 0..self.cap.saturating_sub(1) {
            if d[n].compose(&l[n]) != l[n + 1].compose(&d[n]) {
                bad.get_or_insert(format!("d at degree {}", n));
            }
        }
        for n in 1..self.cap {
            if i[n].compose(&l[n]) != l[n - 1].compose(&i[n]) {
                bad.get_or_insert(format!("i at degree {}", n));
            }
        }
        match bad {
            None => r.ok("𝓛 commutes with d and i"),
            Some(w) => r.fail("𝓛 commutes with d and i", w),
        }
        r
    }

    pub fn labels(&self, n: usize) -> Vec<String> {
        let al = &self.base.labels;
        let ll = &self.lambda.modules[n].labels;
        al.iter().flat_map(|a| ll.iter().map(move |l| if n == 0 { a.clone() } else { format!("{}⊗{}", a, l) })).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::{nichols, tensor_hopf};
    use crate::crossed::{crossed_from_graded, ActionSide, CrossedModule, GroupGradedModule};
    use crate::group::FiniteGroup;

    fn z2_kofg() -> CrossedModule {
        let g = FiniteGroup::cyclic(2);
        let h = Arc::new(HopfAlgebra::function_algebra(&g));
        let gm = GroupGradedModule { group: g, degree: vec![1, 1], side: ActionSide::Left, action: vec![id(2), id(2)], labels: vec!["e1".into(), "e2".into()] };
        crossed_from_graded(&gm, &h).unwrap()
    }

    #[test]
    fn grassmann_bosonisation() {
        let v = z2_kofg();
        let om = bosonise(&nichols(&v, 3, false).unwrap());
        assert_eq!(om.dims, vec![2, 4, 2, 0]);
        assert!(om.verify_hopf().all_pass(), "{}", om.verify_hopf());
        let theta = om.embed_lambda(1, &[Rat::one(), Rat::zero()]);
        let mut om = om;
        om.d = Some(om.inner_d(&theta));
        assert!(om.verify_strong_bicovariance().all_pass(), "{}", om.verify_strong_bicovariance());
    }

    #[test]
    fn tensor_bosonisation_and_corruption() {
        let v = z2_kofg();
        let mut om = bosonise(&tensor_hopf(&v, 3).unwrap());
        assert!(om.verify_hopf().all_pass());
        let theta = om.embed_lambda(1, &[Rat::one(), Rat::zero()]);
        let _ = theta;
        // d = 0 passes
        om.d = Some((0..3).map(|n| LinMap::zero(om.dims[n + 1], om.dims[n])).collect());
        assert!(om.verify_strong_bicovariance().all_pass());
    }
}
