//! Finite-dimensional Hopf algebras by structure constants.

use crate::exact::{preimage, LinMap, Rat, RatMatrix, RatVector};
use crate::group::FiniteGroup;
use crate::report::{multi_index, Report};
use crate::space::{flip, id, tensor_perm};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HopfError {
    #[error("structure constants have the wrong shape: {0}")]
    Shape(String),
    #[error("Hopf axiom fails: {0}")]
    Axiom(String),
    #[error("antipode is not bijective")]
    AntipodeNotBijective,
}

#[derive(Clone, Debug, PartialEq)]
pub enum HopfKind {
    FunctionAlgebra(FiniteGroup),
    GroupAlgebra(FiniteGroup),
    Raw,
}

#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pub dim: usize,
    /// dim × dim²
    pub mul: LinMap,
    pub unit: RatVector,
    /// dim² × dim
    pub comul: LinMap,
    pub counit: RatVector,
    pub antipode: LinMap,
    pub labels: Vec<String>,
    pub kind: HopfKind,
}

#[derive(Clone, Debug)]
pub struct AugmentationData {
    pub plus_basis: Vec<RatVector>,
    /// dim × (dim-1), columns are `plus_basis`
    pub incl: LinMap,
    /// (dim-1) × dim, a ↦ coordinates of a − ε(a)1
    pub pi: LinMap,
}

impl HopfAlgebra {
    /// Builds from raw structure constants and rejects anything failing the axioms.
    pub fn from_structure(
        mul: LinMap,
        unit: RatVector,
        comul: LinMap,
        counit: RatVector,
        antipode: LinMap,
        labels: Vec<String>,
    ) -> Result<HopfAlgebra, HopfError> {
        let m = unit.len();
        if (mul.rows, mul.cols) != (m, m * m)
            || (comul.rows, comul.cols) != (m * m, m)
            || counit.len() != m
            || (antipode.rows, antipode.cols) != (m, m)
            || labels.len() != m
        {
            return Err(HopfError::Shape(format!("dim {}", m)));
        }
        let h = HopfAlgebra { dim: m, mul, unit, comul, counit, antipode, labels, kind: HopfKind::Raw };
        let rep = h.verify();
        if let Some(f) = rep.failures().first() {
            return Err(HopfError::Axiom(format!("{} {}", f.id, f.witness.clone().unwrap_or_default())));
        }
        if h.antipode.rank() != m {
            return Err(HopfError::AntipodeNotBijective);
        }
        Ok(h)
    }

    /// k(G): basis δ_x.
    pub fn function_algebra(g: &FiniteGroup) -> HopfAlgebra {
        let n = g.order;
        let mul = LinMap::from_columns(
            n,
            (0..n * n).map(|k| if k / n == k % n { vec![(k / n, Rat::one())] } else { vec![] }).collect(),
        );
        let comul = LinMap::from_columns(
            n * n,
            (0..n).map(|x| (0..n).map(|u| (u * n + g.mul(g.inv(u), x), Rat::one())).collect()).collect(),
        );
        let mut counit = vec![Rat::zero(); n];
        counit[0] = Rat::one();
        let antipode = LinMap::from_columns(n, (0..n).map(|x| vec![(g.inv(x), Rat::one())]).collect());
        HopfAlgebra {
            dim: n,
            mul,
            unit: vec![Rat::one(); n],
            comul,
            counit,
            antipode,
            labels: g.labels.iter().map(|l| format!("δ_{}", l)).collect(),
            kind: HopfKind::FunctionAlgebra(g.clone()),
        }
    }

    /// kG: basis the group elements.
    pub fn group_algebra(g: &FiniteGroup) -> HopfAlgebra {
        let n = g.order;
        let mul = LinMap::from_columns(n, (0..n * n).map(|k| vec![(g.mul(k / n, k % n), Rat::one())]).collect());
        let comul = LinMap::from_columns(n * n, (0..n).map(|x| vec![(x * n + x, Rat::one())]).collect());
        let mut unit = vec![Rat::zero(); n];
        unit[0] = Rat::one();
        let antipode = LinMap::from_columns(n, (0..n).map(|x| vec![(g.inv(x), Rat::one())]).collect());
        HopfAlgebra {
            dim: n,
            mul,
            unit,
            comul,
            counit: vec![Rat::one(); n],
            antipode,
            labels: g.labels.clone(),
            kind: HopfKind::GroupAlgebra(g.clone()),
        }
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.kind {
            HopfKind::FunctionAlgebra(g) | HopfKind::GroupAlgebra(g) => Some(g),
            HopfKind::Raw => None,
        }
    }

    pub fn unit_map(&self) -> LinMap {
        LinMap::from_dense_cols(self.dim, &[self.unit.clone()])
    }

    pub fn counit_map(&self) -> LinMap {
        LinMap::from_dense(&RatMatrix::from_rows(&[self.counit.clone()]))
    }

    pub fn id(&self) -> LinMap {
        id(self.dim)
    }

    /// a⊗b⊗c ↦ abc
    pub fn mul3(&self) -> LinMap {
        self.mul.compose(&self.mul.kron(&self.id()))
    }

    /// a ↦ a₁⊗a₂⊗a₃
    pub fn comul3(&self) -> LinMap {
        self.comul.kron(&self.id()).compose(&self.comul)
    }

    pub fn mul_elems(&self, a: &[Rat], b: &[Rat]) -> RatVector {
        let t: Vec<Rat> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        self.mul.apply(&t)
    }

    pub fn counit_of(&self, a: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (x, e) in a.iter().zip(&self.counit) {
            s += &(x * e);
        }
        s
    }

    pub fn basis(&self, i: usize) -> RatVector {
        crate::exact::unit_vec(self.dim, i)
    }

    pub fn antipode_inverse(&self) -> LinMap {
        let s = self.antipode.to_dense();
        let cols: Vec<RatVector> =
            (0..self.dim).map(|j| preimage(&s, &crate::exact::unit_vec(self.dim, j)).expect("antipode bijective")).collect();
        LinMap::from_dense_cols(self.dim, &cols)
    }

    /// Left adjoint action a⊗w ↦ a₁ w S(a₂).
    pub fn left_adjoint(&self) -> LinMap {
        let m = self.dim;
        // a⊗w -> a1⊗a2⊗w -> a1⊗w⊗a2 -> a1⊗w⊗Sa2 -> product
        let step1 = self.comul.kron(&id(m));
        let step2 = id(m).kron(&flip(m, m));
        let step3 = id(m * m).kron(&self.antipode);
        self.mul3().compose(&step3).compose(&step2).compose(&step1)
    }

    pub fn augmentation(&self) -> AugmentationData {
        let eps = RatMatrix::from_rows(&[self.counit.clone()]);
        let plus_basis = eps.kernel_basis();
        let incl = LinMap::from_dense_cols(self.dim, &plus_basis);
        let dense_incl = incl.to_dense();
        let cols: Vec<RatVector> = (0..self.dim)
            .map(|j| {
                let e = self.counit[j].clone();
                let w: RatVector = (0..self.dim)
                    .map(|i| {
                        let base = if i == j { Rat::one() } else { Rat::zero() };
                        &base - &(&e * &self.unit[i])
                    })
                    .collect();
                preimage(&dense_incl, &w).expect("a - ε(a)1 lies in the augmentation ideal")
            })
            .collect();
        let pi = LinMap::from_dense_cols(self.dim - 1, &cols);
        AugmentationData { plus_basis, incl, pi }
    }

    pub fn verify(&self) -> Report {
        let m = self.dim;
        let mut r = Report::new();
        let i = self.id();
        let d3 = [m, m, m];
        let dec3 = multi_index(&d3);
        let d2 = [m, m];
        let dec2 = multi_index(&d2);
        let dec1 = |j: usize| format!("[{}]", j);
        r.map_eq("associativity", &self.mul.compose(&self.mul.kron(&i)), &self.mul.compose(&i.kron(&self.mul)), &dec3);
        let u = self.unit_map();
        r.map_eq("left unit", &self.mul.compose(&u.kron(&i)), &i, &dec1);
        r.map_eq("right unit", &self.mul.compose(&i.kron(&u)), &i, &dec1);
        r.map_eq("coassociativity", &self.comul.kron(&i).compose(&self.comul), &i.kron(&self.comul).compose(&self.comul), &dec1);
        let e = self.counit_map();
        r.map_eq("left counit", &e.kron(&i).compose(&self.comul), &i, &dec1);
        r.map_eq("right counit", &i.kron(&e).compose(&self.comul), &i, &dec1);
        let mid = tensor_perm(&[m, m, m, m], &[0, 2, 1, 3]);
        let rhs = self.mul.kron(&self.mul).compose(&mid).compose(&self.comul.kron(&self.comul));
        r.map_eq("coproduct multiplicative", &self.comul.compose(&self.mul), &rhs, &dec2);
        r.map_eq("counit multiplicative", &e.compose(&self.mul), &e.kron(&e), &dec2);
        r.map_eq("coproduct of unit", &self.comul.compose(&u), &u.kron(&u), &dec1);
        r.map_eq("counit of unit", &e.compose(&u), &LinMap::identity(1), &dec1);
        let ue = u.compose(&e);
        r.map_eq("antipode left", &self.mul.compose(&self.antipode.kron(&i)).compose(&self.comul), &ue, &dec1);
        r.map_eq("antipode right", &self.mul.compose(&i.kron(&self.antipode)).compose(&self.comul), &ue, &dec1);
        if self.antipode.rank() == m {
            r.ok("antipode bijective");
        } else {
            r.fail("antipode bijective", "rank deficient");
        }
        r
    }
}

/// Evaluation pairing matrix ⟨δ_x, g⟩ = δ_{x,g} between k(G) (rows) and kG (columns).
pub fn group_duality_pairing(g: &FiniteGroup) -> LinMap {
    LinMap::identity(g.order)
}

/// Checks a pairing matrix P (rows: H basis, cols: A basis) is a Hopf pairing:
/// ⟨hk, a⟩ = ⟨h⊗k, Δa⟩, ⟨h, ab⟩ = ⟨Δh, a⊗b⟩, units and counits match.
pub fn verify_hopf_pairing(h: &HopfAlgebra, a: &HopfAlgebra, p: &LinMap) -> Report {
    let mut r = Report::new();
    let dec = |j: usize| format!("column {}", j);
    // P[h][a] = ⟨h,a⟩
    let l1 = h.mul.transpose().compose(p);
    let r1 = p.kron(p).compose(&a.comul);
    r.map_eq("product dual to coproduct", &l1, &r1, &dec);
    let l2 = p.compose(&a.mul);
    let r2 = h.comul.transpose().compose(&p.kron(p));
    r.map_eq("coproduct dual to product", &l2, &r2, &dec);
    let u_h = h.unit_map().transpose().compose(p);
    r.map_eq("unit pairs with counit", &u_h, &a.counit_map(), &dec);
    let u_a = p.compose(&a.unit_map());
    r.map_eq("counit pairs with unit", &u_a, &h.counit_map().transpose(), &dec);
    r
}
