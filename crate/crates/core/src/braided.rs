//! Braided binomials and factorials, and degree-truncated braided-super Hopf
//! algebras built on tensor powers of a crossed module.

use crate::crossed::{braiding, tensor_labels, CrossedError, CrossedModule};
use crate::exact::{LinMap, Rat, RatVector, RowSpace, SpVec};
use crate::report::Report;
use crate::space::{descend, id, tensor_perm, Space, SpaceKind};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 4;

#[derive(Debug, Error)]
pub enum BraidedError {
    #[error("degree {0} above cap {1}")]
    AboveCap(usize, usize),
    #[error("theta is not right-invariant")]
    ThetaNotInvariant,
    #[error("theta* is not right-invariant")]
    ThetaStarNotInvariant,
    #[error("{0} does not descend at bidegree ({1},{2})")]
    NotWellDefined(&'static str, usize, usize),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// [n r;Ψ]
    Left,
    /// (n r;Ψ)
    Right,
}

/// Ψ_i products, binomials and factorials on V⊗n for n ≤ cap, for a fixed
/// signed braiding sΨ on V⊗V.
#[derive(Clone, Debug)]
pub struct BraidedOperators {
    pub dim: usize,
    pub cap: usize,
    pub sign: i64,
    /// sΨ on V⊗V
    pub psi: LinMap,
    left: Vec<Vec<LinMap>>,
    right: Vec<Vec<LinMap>>,
    factorial: Vec<LinMap>,
}

impl BraidedOperators {
    pub fn new(v: &CrossedModule, sign: i64, cap: usize) -> Result<Self, BraidedError> {
        let psi = braiding(v, v)?;
        Ok(Self::from_psi(v.dim, &psi, sign, cap))
    }

    pub fn from_psi(dim: usize, psi: &LinMap, sign: i64, cap: usize) -> Self {
        let psi = psi.scale(&Rat::int(sign));
        let mut ops = BraidedOperators { dim, cap, sign, psi, left: vec![], right: vec![], factorial: vec![] };
        for n in 0..=cap {
            let size = dim.pow(n as u32);
            let mut lrow = Vec::with_capacity(n + 1);
            let mut rrow = Vec::with_capacity(n + 1);
            for r in 0..=n {
                if r == 0 || r == n {
                    lrow.push(id(size));
                    rrow.push(id(size));
                    continue;
                }
                // Ψ_r⋯Ψ_{n−1}([n−1 r−1]⊗id) + [n−1 r]⊗id
                let mut x = ops.left[n - 1][r - 1].kron(&id(dim));
                for i in (r..n).rev() {
                    x = ops.psi_at(n, i).compose(&x);
                }
                lrow.push(x.add(&ops.left[n - 1][r].kron(&id(dim))));
                // ((n−1 r−1)⊗id)Ψ_{n−1}⋯Ψ_r + (n−1 r)⊗id
                let mut y = id(size);
                for i in r..n {
                    y = ops.psi_at(n, i).compose(&y);
                }
                let y = ops.right[n - 1][r - 1].kron(&id(dim)).compose(&y);
                rrow.push(y.add(&ops.right[n - 1][r].kron(&id(dim))));
            }
            ops.left.push(lrow);
            ops.right.push(rrow);
            let f = if n <= 1 { id(size) } else { id(dim).kron(&ops.factorial[n - 1]).compose(&ops.left[n][1]) };
            ops.factorial.push(f);
        }
        ops
    }

    /// sΨ acting on factors i, i+1 (1-based) of V⊗n.
    pub fn psi_at(&self, n: usize, i: usize) -> LinMap {
        let d = self.dim;
        id(d.pow((i - 1) as u32)).kron(&self.psi).kron(&id(d.pow((n - i - 1) as u32)))
    }

    pub fn binomial(&self, n: usize, r: usize, conv: Convention) -> Result<LinMap, BraidedError> {
        if n > self.cap {
            return Err(BraidedError::AboveCap(n, self.cap));
        }
        if r > n {
            let s = self.dim.pow(n as u32);
            return Ok(LinMap::zero(s, s));
        }
        Ok(match conv {
            Convention::Left => self.left[n][r].clone(),
            Convention::Right => self.right[n][r].clone(),
        })
    }

    pub fn factorial(&self, n: usize) -> Result<LinMap, BraidedError> {
        if n > self.cap {
            return Err(BraidedError::AboveCap(n, self.cap));
        }
        Ok(self.factorial[n].clone())
    }

    /// [n;Ψ] = [n 1;Ψ]
    pub fn integer(&self, n: usize) -> Result<LinMap, BraidedError> {
        self.binomial(n, 1, Convention::Left)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Tensor,
    Shuffle,
    Nichols,
    Quadratic,
    UniversalTheta,
    SubshuffleTheta,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Tensor => "tensor",
            Flavor::Shuffle => "shuffle",
            Flavor::Nichols => "nichols",
            Flavor::Quadratic => "quadratic",
            Flavor::UniversalTheta => "universal_theta",
            Flavor::SubshuffleTheta => "subshuffle_theta",
        }
    }
}

/// Degree-truncated graded braided-super Hopf algebra. Degree n is a sub or
/// quotient of V⊗n; `product[p][q]` and `coproduct[p][q]` are defined for
/// p+q ≤ cap in the bases of the degree spaces.
#[derive(Clone, Debug)]
pub struct GradedBraidedHopf {
    pub base: CrossedModule,
    pub cap: usize,
    pub flavor: Flavor,
    pub ops: Arc<BraidedOperators>,
    pub spaces: Vec<Space>,
    pub modules: Vec<CrossedModule>,
    pub product: Vec<Vec<LinMap>>,
    pub coproduct: Vec<Vec<LinMap>>,
}

fn tensor_of(a: &Space, b: &Space) -> Space {
    let kind = match (a.kind, b.kind) {
        (SpaceKind::Free, k) | (k, SpaceKind::Free) => k,
        (SpaceKind::Quotient, SpaceKind::Quotient) => SpaceKind::Quotient,
        (SpaceKind::Sub, SpaceKind::Sub) => SpaceKind::Sub,
        _ => panic!("mixed sub and quotient tensor"),
    };
    Space { kind, ambient: a.ambient * b.ambient, dim: a.dim * b.dim, lift: a.lift.kron(&b.lift), proj: a.proj.kron(&b.proj), relations: vec![] }
}

fn space_labels(space: &Space, words: &[String]) -> Vec<String> {
    (0..space.dim)
        .map(|k| {
            let col = &space.lift.columns[k];
            match col.len() {
                0 => "0".to_string(),
                1 if col[0].1.is_one() => words[col[0].0].clone(),
                _ => format!("{}+…", words[col[0].0]),
            }
        })
        .collect()
}

enum Ambient {
    /// concatenation product, binomial coproduct
    Tensor,
    /// shuffle product, deconcatenation coproduct
    Shuffle,
}

impl GradedBraidedHopf {
    fn assemble(base: &CrossedModule, cap: usize, flavor: Flavor, ops: Arc<BraidedOperators>, spaces: Vec<Space>, amb: Ambient) -> Result<Self, BraidedError> {
        let mut modules = Vec::with_capacity(cap + 1);
        let mut power = CrossedModule::unit_object(base.over.clone());
        for n in 0..=cap {
            if n > 0 {
                power = power.tensor(base);
            }
            let words = tensor_labels(&base.labels, n);
            let sp = &spaces[n];
            modules.push(power.induced(&sp.lift, &sp.proj, space_labels(sp, &words))?);
        }
        let mut product = vec![Vec::new(); cap + 1];
        let mut coproduct = vec![Vec::new(); cap + 1];
        for p in 0..=cap {
            for q in 0..=cap - p {
                let n = p + q;
                let (m_amb, d_amb) = match amb {
                    Ambient::Tensor => (id(ops.dim.pow(n as u32)), ops.binomial(n, p, Convention::Left)?),
                    Ambient::Shuffle => (ops.binomial(n, p, Convention::Right)?, id(ops.dim.pow(n as u32))),
                };
                let inp = tensor_of(&spaces[p], &spaces[q]);
                let m = descend(&m_amb, inp.kind, &inp.lift, &inp.proj, &spaces[n]).ok_or(BraidedError::NotWellDefined("product", p, q))?;
                let d = descend(&d_amb, spaces[n].kind, &spaces[n].lift, &spaces[n].proj, &inp)
                    .ok_or(BraidedError::NotWellDefined("coproduct", p, q))?;
                product[p].push(m);
                coproduct[p].push(d);
            }
        }
        Ok(GradedBraidedHopf { base: base.clone(), cap, flavor, ops, spaces, modules, product, coproduct })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim
    }

    /// Braiding between degree spaces, unsigned.
    pub fn psi(&self, a: usize, b: usize) -> LinMap {
        braiding(&self.modules[a], &self.modules[b]).expect("same base")
    }

    pub fn verify(&self) -> Report {
        let cap = self.cap;
        let mut r = Report::new();
        let dims = self.dims();
        let m = |p: usize, q: usize| &self.product[p][q];
        let dl = |p: usize, q: usize| &self.coproduct[p][q];
        let idn = |n: usize| id(dims[n]);
        let fail_first = |r: &mut Report, name: &str, what: Option<String>| match what {
            None => r.ok(name),
            Some(w) => r.fail(name, w),
        };
        let mut bad = None;
        for p in 0..=cap {
            for q in 0..=cap - p {
                for s in 0..=cap - p - q {
                    let lhs = m(p + q, s).compose(&m(p, q).kron(&idn(s)));
                    let rhs = m(p, q + s).compose(&idn(p).kron(m(q, s)));
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("degrees ({},{},{})", p, q, s));
                    }
                }
            }
        }
        fail_first(&mut r, "associativity", bad.take());
        for p in 0..=cap {
            if bad.is_none() && (*m(0, p) != idn(p) || *m(p, 0) != idn(p)) {
                bad = Some(format!("degree {}", p));
            }
        }
        fail_first(&mut r, "unit", bad.take());
        for p in 0..=cap {
            for q in 0..=cap - p {
                for s in 0..=cap - p - q {
                    let lhs = dl(p, q).kron(&idn(s)).compose(dl(p + q, s));
                    let rhs = idn(p).kron(dl(q, s)).compose(dl(p, q + s));
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("degrees ({},{},{})", p, q, s));
                    }
                }
            }
        }
        fail_first(&mut r, "coassociativity", bad.take());
        for p in 0..=cap {
            if bad.is_none() && (*dl(0, p) != idn(p) || *dl(p, 0) != idn(p)) {
                bad = Some(format!("degree {}", p));
            }
        }
        fail_first(&mut r, "counit", bad.take());
        if dims[0] == 1 && *dl(0, 0) == id(1) && *m(0, 0) == id(1) {
            r.ok("coproduct of unit");
        } else {
            r.fail("coproduct of unit", "degree 0");
        }
        // Δ(xy) = Σ (m⊗m)(id⊗(−1)^{a2 b1}Ψ_{a2,b1}⊗id)(Δ⊗Δ)
        let mut psis = vec![vec![None; cap + 1]; cap + 1];
        for p in 0..=cap {
            for q in 0..=cap - p {
                for c in 0..=p + q {
                    let e = p + q - c;
                    let lhs = dl(c, e).compose(m(p, q));
                    let mut rhs = LinMap::zero(lhs.rows, lhs.cols);
                    for a1 in c.saturating_sub(q)..=p.min(c) {
                        let (b1, a2) = (c - a1, p - a1);
                        let b2 = q - b1;
                        let psi: &LinMap = psis[a2][b1].get_or_insert_with(|| self.psi(a2, b1).scale(&Rat::pow_sign(a2 * b1)));
                        let mid = idn(a1).kron(psi).kron(&idn(b2));
                        let t = m(a1, b1).kron(m(a2, b2)).compose(&mid).compose(&dl(a1, a2).kron(dl(b1, b2)));
                        rhs = rhs.add(&t);
                    }
                    if bad.is_none() && lhs != rhs {
                        bad = Some(format!("({},{}) into ({},{})", p, q, c, e));
                    }
                }
            }
        }
        fail_first(&mut r, "braided bialgebra", bad.take());
        for p in 0..=cap {
            for q in 0..=cap - p {
                let vw = self.modules[p].tensor(&self.modules[q]);
                let rm = crate::crossed::verify_morphism(m(p, q), &vw, &self.modules[p + q]);
                let rd = crate::crossed::verify_morphism(dl(p, q), &self.modules[p + q], &vw);
                if bad.is_none() && !(rm.all_pass() && rd.all_pass()) {
                    bad = Some(format!("bidegree ({},{})", p, q));
                }
            }
        }
        fail_first(&mut r, "structure maps are crossed morphisms", bad.take());
        r
    }
}

pub fn tensor_hopf(v: &CrossedModule, cap: usize) -> Result<GradedBraidedHopf, BraidedError> {
    let ops = Arc::new(BraidedOperators::new(v, -1, cap)?);
    let spaces = (0..=cap).map(|n| Space::free(v.dim.pow(n as u32))).collect();
    GradedBraidedHopf::assemble(v, cap, Flavor::Tensor, ops, spaces, Ambient::Tensor)
}

pub fn shuffle_hopf(v: &CrossedModule, cap: usize) -> Result<GradedBraidedHopf, BraidedError> {
    let ops = Arc::new(BraidedOperators::new(v, -1, cap)?);
    let spaces = (0..=cap).map(|n| Space::free(v.dim.pow(n as u32))).collect();
    GradedBraidedHopf::assemble(v, cap, Flavor::Shuffle, ops, spaces, Ambient::Shuffle)
}

/// B₋(V) = T₋V / ⊕ ker[n,−Ψ]!, or the quadratic version generated by ker(id−Ψ).
pub fn nichols(v: &CrossedModule, cap: usize, quadratic_only: bool) -> Result<GradedBraidedHopf, BraidedError> {
    let ops = Arc::new(BraidedOperators::new(v, -1, cap)?);
    let spaces = if quadratic_only {
        let rels = if cap >= 2 { ops.factorial(2)?.kernel() } else { vec![] };
        ideal_spaces(v.dim, cap, &[(2, rels)])
    } else {
        (0..=cap)
            .map(|n| {
                let size = v.dim.pow(n as u32);
                Space::quotient(size, &ops.factorial[n].kernel())
            })
            .collect()
    };
    let flavor = if quadratic_only { Flavor::Quadratic } else { Flavor::Nichols };
    GradedBraidedHopf::assemble(v, cap, flavor, ops, spaces, Ambient::Tensor)
}

/// Quotients of V⊗n by J_n = Σ V⊗p⊗R⊗V⊗q for generator sets R in given degrees.
pub fn ideal_spaces(d: usize, cap: usize, gens: &[(usize, Vec<RatVector>)]) -> Vec<Space> {
    (0..=cap)
        .map(|n| {
            let size = d.pow(n as u32);
            let mut rs = RowSpace::new(size);
            for (k, rels) in gens {
                if *k > n {
                    continue;
                }
                for p in 0..=n - k {
                    let left = d.pow(p as u32);
                    let right = d.pow((n - k - p) as u32);
                    let ksize = d.pow(*k as u32);
                    for rel in rels {
                        let nz: SpVec = rel.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
                        for u in 0..left {
                            for w in 0..right {
                                let vec: SpVec = nz.iter().map(|(i, x)| ((u * ksize + i) * right + w, x.clone())).collect();
                                rs.insert_sparse(&vec);
                            }
                        }
                    }
                }
            }
            Space::quotient_from_rowspace(&rs)
        })
        .collect()
}

pub fn is_right_invariant(v: &CrossedModule, theta: &[Rat]) -> bool {
    let m = v.m();
    let lhs = v.coact.apply(theta);
    let mut rhs = vec![Rat::zero(); v.dim * m];
    for (i, t) in theta.iter().enumerate() {
        for (a, u) in v.over.unit.iter().enumerate() {
            rhs[i * m + a] = t * u;
        }
    }
    lhs == rhs
}

/// Generators of the θ-relations: θ²◁a for a in A⁺, and θθη − ηθθ.
pub fn theta_relations(v: &CrossedModule, theta: &[Rat]) -> (Vec<RatVector>, Vec<RatVector>) {
    let d = v.dim;
    let theta2 = kron_vec(theta, theta);
    let v2 = v.tensor(v);
    let r2: Vec<RatVector> = v.over.augmentation().plus_basis.iter().map(|a| v2.action_of(a).apply(&theta2)).collect();
    let r3 = (0..d)
        .map(|e| {
            let eta = crate::exact::unit_vec(d, e);
            let a = kron_vec(&theta2, &eta);
            let b = kron_vec(&eta, &theta2);
            a.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();
    (r2, r3)
}

pub fn kron_vec(a: &[Rat], b: &[Rat]) -> RatVector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

pub fn universal_theta(v: &CrossedModule, theta: &[Rat], cap: usize) -> Result<GradedBraidedHopf, BraidedError> {
    if theta.len() != v.dim {
        return Err(BraidedError::Shape("theta".into()));
    }
    if !is_right_invariant(v, theta) {
        return Err(BraidedError::ThetaNotInvariant);
    }
    let ops = Arc::new(BraidedOperators::new(v, -1, cap)?);
    let (r2, r3) = theta_relations(v, theta);
    let spaces = ideal_spaces(v.dim, cap, &[(2, r2), (3, r3)]);
    GradedBraidedHopf::assemble(v, cap, Flavor::UniversalTheta, ops, spaces, Ambient::Tensor)
}

/// ⟨θ*, v◁a⟩ = ε(a)⟨θ*, v⟩
pub fn is_right_invariant_dual(v: &CrossedModule, theta_star: &[Rat]) -> bool {
    let m = v.m();
    (0..v.dim).all(|j| {
        (0..m).all(|a| {
            let col = v.act.dense_col(j * m + a);
            let lhs: Rat = col.iter().zip(theta_star).fold(Rat::zero(), |s, (x, t)| s + x * t);
            lhs == &v.over.counit[a] * &theta_star[j]
        })
    })
}

/// Φ(b⊗c) = ⟨θ*,b₀⟩⟨θ*,c₀⟩b₁c₁ as a map V⊗V → A.
pub fn phi_map(v: &CrossedModule, theta_star: &[Rat]) -> LinMap {
    let (d, m) = (v.dim, v.m());
    let ts = LinMap::from_dense(&crate::exact::RatMatrix::from_rows(&[theta_star.to_vec()]));
    ts.kron(&ts)
        .kron(&v.over.mul)
        .compose(&tensor_perm(&[d, m, d, m], &[0, 2, 1, 3]))
        .compose(&v.coact.kron(&v.coact))
}

/// Membership space of B_{θ*} in degree n (a subspace of V⊗n); uses only the
/// coaction and θ*.
pub fn subshuffle_membership(v: &CrossedModule, theta_star: &[Rat], n: usize) -> Vec<RatVector> {
    let (d, m) = (v.dim, v.m());
    let size = d.pow(n as u32);
    if n < 2 {
        return (0..size).map(|i| crate::exact::unit_vec(size, i)).collect();
    }
    let ts = LinMap::from_dense(&crate::exact::RatMatrix::from_rows(&[theta_star.to_vec()]));
    let tau = ts.kron(&ts);
    let utau = LinMap::from_dense_cols(m, &[v.over.unit.clone()]).compose(&tau);
    let a_cond = phi_map(v, theta_star).sub(&utau);
    let mut eqs = Vec::new();
    for k in 0..=n - 2 {
        let (l, rr) = (id(d.pow(k as u32)), id(d.pow((n - k - 2) as u32)));
        eqs.push(l.kron(&a_cond).kron(&rr));
        if k > 0 {
            let lhs = l.kron(&tau).kron(&rr);
            let rhs = tau.kron(&id(d.pow((n - 2) as u32)));
            eqs.push(lhs.sub(&rhs));
        }
    }
    let stacked = LinMap::vstack_all(size, &eqs);
    stacked.kernel()
}

pub fn subshuffle_theta(v: &CrossedModule, theta_star: &[Rat], cap: usize) -> Result<GradedBraidedHopf, BraidedError> {
    if theta_star.len() != v.dim {
        return Err(BraidedError::Shape("theta*".into()));
    }
    if !is_right_invariant_dual(v, theta_star) {
        return Err(BraidedError::ThetaStarNotInvariant);
    }
    let ops = Arc::new(BraidedOperators::new(v, -1, cap)?);
    let spaces = (0..=cap)
        .map(|n| {
            let size = v.dim.pow(n as u32);
            if n < 2 {
                Space::free(size)
            } else {
                Space::sub(size, &subshuffle_membership(v, theta_star, n))
            }
        })
        .collect::<Vec<_>>();
    // degree 0 and 1 are free; tensor_of needs uniform kinds so relabel them as subs
    let spaces = spaces
        .into_iter()
        .map(|s| if s.is_free() { Space { kind: SpaceKind::Sub, ..s } } else { s })
        .collect();
    GradedBraidedHopf::assemble(v, cap, Flavor::SubshuffleTheta, ops, spaces, Ambient::Shuffle)
}
