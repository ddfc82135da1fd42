//! Scenario files: a JSON description of one build (group, Hopf algebra,
//! crossed module, calculus, extension, codifferential, duality partner),
//! the pipeline that realises it, and the built-in ℤ₂ fixtures.

use crate::braided::{nichols, shuffle_hopf, tensor_hopf, Flavor};
use crate::calculus::{delta_unique_nichols, first_order_kg, first_order_kofg, inner_exterior, shuffle_exterior, with_delta, FirstOrderCalculus, InnerFlavor};
use crate::codiff::{
    augment_universal, braided_pairing, codiff_from_map, coinner_first_order, coinner_i, coinner_subshuffle, extend_codiff_tensor, verify_lie_inner, verify_mutual_duality,
    verify_pairing, DualityPairing,
};
use crate::crossed::{crossed_from_graded, dual_crossed, graded_from_crossed, ActionSide, CrossedModule, GroupGradedModule};
use crate::exact::{LinMap, Rat, RatVector};
use crate::group::{FiniteGroup, GroupSpec};
use crate::hopf::{group_duality_pairing, HopfAlgebra};
use crate::report::Report;
use crate::superhopf::{bosonise, GradedSuperHopf};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_DEGREE_CAP: usize = 4;
pub const FIXTURE_NAMES: [&str; 3] = ["z2-minimal", "z2-universal", "z2-subshuffle"];

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("construction: {0}")]
    Construction(String),
}

fn construction(e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Construction(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub group: GroupSpec,
    pub algebra: AlgebraKind,
    pub module: ModuleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<CalculusSpec>,
    pub extension: ExtensionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codifferential: Option<CodiffSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualSpec>,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    /// k(G), modules given by a left G-action
    FunctionAlgebra,
    /// kG, modules given by a right G-action
    GroupAlgebra,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// group element grading each basis vector
    pub degree: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    /// action matrices on generators, completed to the whole group
    #[serde(default)]
    pub generators: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub element: usize,
    /// row-major, entries "p/q"
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CalculusSpec {
    /// k(G): ω_c ∈ Λ¹_c per conjugacy class representative c ≠ e
    Classes { classes: Vec<ClassDatum> },
    /// kG: ω_g ∈ Λ¹_e for every g
    Cocycle { cocycle: Vec<Vec<String>> },
    /// kG: ω_g = θ◁g − θ for θ ∈ Λ¹_e; k(G): ω_c = grade-c part of θ
    Inner { theta: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDatum {
    pub element: usize,
    pub omega: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub flavor: Flavor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CodiffSpec {
    /// i = ⟨θ*,·⟩ coinner form
    Coinner { theta_star: Vec<String> },
    /// first-order ĩ: Λ¹ → A⁺ as a dim A × dim Λ¹ matrix
    FirstOrder { i_tilde: Vec<Vec<String>> },
}

/// The partner lives on the dual module over the dual Hopf algebra, with the
/// flavor paired to the main one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<CalculusSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codifferential: Option<CodiffSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// include basis labels in exports
    #[serde(default)]
    pub labels: bool,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialises")
    }
}

fn rat(s: &str) -> Result<Rat, ScenarioError> {
    Rat::parse(s).ok_or_else(|| ScenarioError::Schema(format!("bad rational {:?}", s)))
}

fn rat_vec(v: &[String], len: usize, what: &str) -> Result<RatVector, ScenarioError> {
    if v.len() != len {
        return Err(ScenarioError::Schema(format!("{} has length {}, expected {}", what, v.len(), len)));
    }
    v.iter().map(|s| rat(s)).collect()
}

fn rat_matrix(rows: &[Vec<String>], r: usize, c: usize, what: &str) -> Result<LinMap, ScenarioError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(ScenarioError::Schema(format!("{} must be {}x{}", what, r, c)));
    }
    let dense: Vec<RatVector> = rows.iter().map(|row| row.iter().map(|s| rat(s)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    Ok(LinMap::from_columns(r, (0..c).map(|j| (0..r).filter(|&i| !dense[i][j].is_zero()).map(|i| (i, dense[i][j].clone())).collect()).collect()))
}

fn strs(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| format!("{}/1", x)).collect()
}

fn mat(rows: &[&[i64]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| strs(r)).collect()
}

/// The three ℤ₂ builds: minimal Nichols quotient and universal Ω_θ over
/// k(ℤ₂) with two grade-g forms, and the augmented sub-shuffle over kℤ₂.
pub fn fixture(name: &str) -> Option<Scenario> {
    let z2 = GroupSpec::Cyclic { n: 2 };
    let kofg_module = ModuleSpec {
        degree: vec![1, 1],
        labels: vec!["e1".into(), "e2".into()],
        generators: vec![Generator { element: 1, matrix: mat(&[&[1, 0], &[0, 1]]) }],
    };
    let theta = CalculusSpec::Classes { classes: vec![ClassDatum { element: 1, omega: strs(&[1, 0]) }] };
    match name {
        "z2-minimal" => Some(Scenario {
            name: name.into(),
            group: z2,
            algebra: AlgebraKind::FunctionAlgebra,
            module: kofg_module,
            calculus: Some(theta),
            extension: ExtensionSpec { flavor: Flavor::Nichols, degree_cap: None },
            codifferential: None,
            dual: Some(DualSpec { calculus: None, codifferential: None }),
            output: OutputSpec { labels: true },
        }),
        "z2-universal" => Some(Scenario {
            name: name.into(),
            group: z2,
            algebra: AlgebraKind::FunctionAlgebra,
            module: kofg_module,
            calculus: Some(theta),
            extension: ExtensionSpec { flavor: Flavor::UniversalTheta, degree_cap: None },
            codifferential: None,
            dual: Some(DualSpec { calculus: None, codifferential: Some(CodiffSpec::Coinner { theta_star: strs(&[1, 0]) }) }),
            output: OutputSpec { labels: true },
        }),
        "z2-subshuffle" => Some(Scenario {
            name: name.into(),
            group: z2,
            algebra: AlgebraKind::GroupAlgebra,
            module: ModuleSpec {
                degree: vec![0, 1, 1],
                labels: vec!["γ".into(), "α1".into(), "α2".into()],
                // γ◁g = −γ, α₁◁g = α₁, α₂◁g = −α₂
                generators: vec![Generator { element: 1, matrix: mat(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]) }],
            },
            calculus: Some(CalculusSpec::Inner { theta: strs(&[1, 0, 0]) }),
            extension: ExtensionSpec { flavor: Flavor::SubshuffleTheta, degree_cap: None },
            codifferential: Some(CodiffSpec::Coinner { theta_star: strs(&[0, 1, 0]) }),
            dual: None,
            output: OutputSpec { labels: true },
        }),
        _ => None,
    }
}

/// The partner of a built Ω under the duality pairing.
#[derive(Clone, Debug)]
pub struct DualBuild {
    pub module: CrossedModule,
    pub omega: GradedSuperHopf,
    pub pairing: DualityPairing,
    /// the main build is the left factor of the pairing
    pub main_is_left: bool,
}

#[derive(Clone, Debug)]
pub struct Build {
    pub scenario: Scenario,
    pub cap: usize,
    pub group: FiniteGroup,
    pub algebra: Arc<HopfAlgebra>,
    pub graded: GroupGradedModule,
    pub module: CrossedModule,
    pub calculus: Option<FirstOrderCalculus>,
    pub omega: GradedSuperHopf,
    /// construction-time checks (augmentation conditions and the like)
    pub notes: Report,
    pub dual: Option<DualBuild>,
}

/// Degree cap: explicit value, then the scenario's, then the default.
pub fn resolve_cap(explicit: Option<usize>, s: &Scenario) -> usize {
    explicit.or(s.extension.degree_cap).unwrap_or(DEFAULT_DEGREE_CAP)
}

fn hopf_for(kind: AlgebraKind, g: &FiniteGroup) -> Arc<HopfAlgebra> {
    Arc::new(match kind {
        AlgebraKind::FunctionAlgebra => HopfAlgebra::function_algebra(g),
        AlgebraKind::GroupAlgebra => HopfAlgebra::group_algebra(g),
    })
}

fn build_calculus(gm: &GroupGradedModule, spec: &CalculusSpec) -> Result<FirstOrderCalculus, ScenarioError> {
    let g = &gm.group;
    let d = gm.dim();
    match (gm.side, spec) {
        (ActionSide::Left, CalculusSpec::Classes { classes }) => {
            let data = classes.iter().map(|c| Ok((c.element, rat_vec(&c.omega, d, "omega")?))).collect::<Result<Vec<_>, ScenarioError>>()?;
            first_order_kofg(gm, &data).map_err(construction)
        }
        (ActionSide::Left, CalculusSpec::Inner { theta }) => {
            let th = rat_vec(theta, d, "theta")?;
            let cd = crate::group::conjugacy_data(g);
            let mut data = Vec::new();
            for &c in &cd.reps {
                if c == g.identity {
                    continue;
                }
                let part: RatVector = th.iter().enumerate().map(|(i, x)| if gm.degree[i] == c { x.clone() } else { Rat::zero() }).collect();
                data.push((c, part));
            }
            let calc = first_order_kofg(gm, &data).map_err(construction)?;
            if calc.theta.as_ref() != Some(&th) {
                return Err(ScenarioError::Construction("θ is not the sum of its class parts over the group".into()));
            }
            Ok(calc)
        }
        (ActionSide::Right, CalculusSpec::Cocycle { cocycle }) => {
            if cocycle.len() != g.order {
                return Err(ScenarioError::Schema(format!("cocycle needs {} vectors", g.order)));
            }
            let co = cocycle.iter().map(|w| rat_vec(w, d, "cocycle value")).collect::<Result<Vec<_>, _>>()?;
            first_order_kg(gm, &co).map_err(construction)
        }
        (ActionSide::Right, CalculusSpec::Inner { theta }) => {
            let th = rat_vec(theta, d, "theta")?;
            if th.iter().enumerate().any(|(i, x)| !x.is_zero() && gm.degree[i] != g.identity) {
                return Err(ScenarioError::Construction("θ must lie in Λ¹_e".into()));
            }
            let co: Vec<RatVector> = g.elements().map(|h| gm.action[h].apply(&th).iter().zip(&th).map(|(a, b)| a - b).collect()).collect();
            let mut calc = first_order_kg(gm, &co).map_err(construction)?;
            calc.theta = Some(th);
            Ok(calc)
        }
        _ => Err(ScenarioError::Schema("calculus kind does not match the algebra".into())),
    }
}

fn theta_star_of(spec: Option<&CodiffSpec>, d: usize) -> Result<Option<RatVector>, ScenarioError> {
    match spec {
        Some(CodiffSpec::Coinner { theta_star }) => Ok(Some(rat_vec(theta_star, d, "theta_star")?)),
        _ => Ok(None),
    }
}

/// Ω for one side: the extension flavor, d when a calculus is present and
/// i when a codifferential is.
fn build_omega(
    v: &CrossedModule,
    calc: Option<&FirstOrderCalculus>,
    flavor: Flavor,
    codiff: Option<&CodiffSpec>,
    cap: usize,
    notes: &mut Report,
) -> Result<GradedSuperHopf, ScenarioError> {
    let d = v.dim;
    let theta_star = theta_star_of(codiff, d)?;
    let inner = |f| -> Result<GradedSuperHopf, ScenarioError> {
        let c = calc.ok_or_else(|| ScenarioError::Construction(format!("{} needs an inner calculus", flavor.name())))?;
        inner_exterior(c, f, cap).map_err(construction)
    };
    let mut om = match flavor {
        Flavor::Tensor => {
            if calc.is_some() {
                return Err(ScenarioError::Construction("no differential on the tensor extension; use universal_theta".into()));
            }
            bosonise(&tensor_hopf(v, cap).map_err(construction)?)
        }
        Flavor::Shuffle => match calc {
            Some(c) => shuffle_exterior(c, cap).map_err(construction)?,
            None => bosonise(&shuffle_hopf(v, cap).map_err(construction)?),
        },
        Flavor::Nichols | Flavor::Quadratic => match calc {
            Some(c) if c.theta.is_some() => inner(if flavor == Flavor::Nichols { InnerFlavor::Nichols } else { InnerFlavor::Quadratic })?,
            Some(c) => {
                let u = delta_unique_nichols(c, cap).map_err(construction)?.ok_or_else(|| ScenarioError::Construction("no δ on the Nichols algebra".into()))?;
                let delta: Option<Vec<LinMap>> = u.delta.into_iter().collect();
                let delta = delta.ok_or_else(|| ScenarioError::Construction("δ does not descend to the Nichols algebra".into()))?;
                with_delta(c, &nichols(v, cap, flavor == Flavor::Quadratic).map_err(construction)?, &delta)
            }
            None => bosonise(&nichols(v, cap, flavor == Flavor::Quadratic).map_err(construction)?),
        },
        Flavor::UniversalTheta => match calc {
            Some(_) => inner(InnerFlavor::UniversalTheta)?,
            None => return Err(ScenarioError::Construction("universal_theta needs an inner calculus".into())),
        },
        Flavor::SubshuffleTheta => {
            let ts = theta_star.clone().ok_or_else(|| ScenarioError::Construction("subshuffle_theta needs a coinner codifferential".into()))?;
            let (om, rep) = coinner_subshuffle(v, &ts, calc, cap).map_err(construction)?;
            notes.merge("", rep);
            om
        }
    };
    match (codiff, flavor) {
        (None, _) | (Some(CodiffSpec::Coinner { .. }), Flavor::SubshuffleTheta) => {}
        (Some(CodiffSpec::Coinner { .. }), Flavor::Shuffle) => {
            om.i = Some(coinner_i(&om, theta_star.as_ref().unwrap()));
        }
        (Some(cs), Flavor::Tensor | Flavor::UniversalTheta) => {
            let it = match cs {
                CodiffSpec::FirstOrder { i_tilde } => rat_matrix(i_tilde, v.m(), d, "i_tilde")?,
                CodiffSpec::Coinner { .. } => coinner_first_order(v, theta_star.as_ref().unwrap()),
            };
            let c = codiff_from_map(v, &it).map_err(construction)?;
            if flavor == Flavor::Tensor {
                om = extend_codiff_tensor(&c, cap).map_err(construction)?;
            } else {
                let theta = calc.and_then(|c| c.theta.clone()).unwrap();
                let aug = augment_universal(&om, &theta, &c).map_err(construction)?;
                notes.merge("augmentation: ", aug.report);
                if !aug.accepted {
                    return Err(ScenarioError::Construction("θ◁i(θ) is not graded central".into()));
                }
                om = aug.omega;
            }
        }
        (Some(_), f) => return Err(ScenarioError::Construction(format!("no codifferential extension for the {} flavor", f.name()))),
    }
    Ok(om)
}

fn partner_flavor(f: Flavor) -> Option<(Flavor, bool)> {
    match f {
        Flavor::Nichols => Some((Flavor::Nichols, true)),
        Flavor::Tensor => Some((Flavor::Shuffle, true)),
        Flavor::Shuffle => Some((Flavor::Tensor, false)),
        Flavor::UniversalTheta => Some((Flavor::SubshuffleTheta, true)),
        Flavor::SubshuffleTheta => Some((Flavor::UniversalTheta, false)),
        Flavor::Quadratic => None,
    }
}

pub fn build(s: &Scenario, cap: usize) -> Result<Build, ScenarioError> {
    let group = FiniteGroup::build(&s.group).map_err(|e| ScenarioError::Schema(e.to_string()))?;
    let algebra = hopf_for(s.algebra, &group);
    let side = match s.algebra {
        AlgebraKind::FunctionAlgebra => ActionSide::Left,
        AlgebraKind::GroupAlgebra => ActionSide::Right,
    };
    let d = s.module.degree.len();
    if let Some(&bad) = s.module.degree.iter().find(|&&x| x >= group.order) {
        return Err(ScenarioError::Schema(format!("degree {} is not a group element", bad)));
    }
    if !s.module.labels.is_empty() && s.module.labels.len() != d {
        return Err(ScenarioError::Schema("labels must match the module dimension".into()));
    }
    let gens = s
        .module
        .generators
        .iter()
        .map(|g| {
            if g.element >= group.order {
                return Err(ScenarioError::Schema(format!("generator {} is not a group element", g.element)));
            }
            Ok((g.element, rat_matrix(&g.matrix, d, d, "generator matrix")?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = if s.module.labels.is_empty() { (0..d).map(|i| format!("v{}", i)).collect() } else { s.module.labels.clone() };
    let graded = if group.order == 1 && gens.is_empty() {
        GroupGradedModule { group: group.clone(), degree: s.module.degree.clone(), side, action: vec![LinMap::identity(d)], labels }
    } else {
        GroupGradedModule::from_generators(&group, s.module.degree.clone(), side, &gens, labels).map_err(construction)?
    };
    let module = crossed_from_graded(&graded, &algebra).map_err(construction)?;
    let calculus = s.calculus.as_ref().map(|c| build_calculus(&graded, c)).transpose()?;
    let mut notes = Report::new();
    let omega = build_omega(&module, calculus.as_ref(), s.extension.flavor, s.codifferential.as_ref(), cap, &mut notes)?;
    let dual = match &s.dual {
        None => None,
        Some(ds) => {
            let (pf, main_is_left) = partner_flavor(s.extension.flavor).ok_or_else(|| ScenarioError::Construction("quadratic quotients have no duality partner".into()))?;
            let other = match s.algebra {
                AlgebraKind::FunctionAlgebra => AlgebraKind::GroupAlgebra,
                AlgebraKind::GroupAlgebra => AlgebraKind::FunctionAlgebra,
            };
            let h2 = hopf_for(other, &group);
            let p = group_duality_pairing(&group);
            let w = dual_crossed(&module, &h2, &p).map_err(construction)?;
            let wg = graded_from_crossed(&w).ok_or_else(|| ScenarioError::Construction("dual module is not homogeneous".into()))?;
            let wcalc = ds.calculus.as_ref().map(|c| build_calculus(&wg, c)).transpose()?;
            let mut dn = Report::new();
            let wom = build_omega(&w, wcalc.as_ref(), pf, ds.codifferential.as_ref(), cap, &mut dn)?;
            notes.merge("dual: ", dn);
            let pairing = if main_is_left {
                braided_pairing(&omega.lambda, &wom.lambda, &p)
            } else {
                braided_pairing(&wom.lambda, &omega.lambda, &p)
            }
            .map_err(construction)?;
            Some(DualBuild { module: w, omega: wom, pairing, main_is_left })
        }
    };
    Ok(Build { scenario: s.clone(), cap, group, algebra, graded, module, calculus, omega, notes, dual })
}

/// dims with trailing zero degrees dropped (at least degree 0 is kept).
pub fn trimmed_dims(dims: &[usize]) -> Vec<usize> {
    let mut v = dims.to_vec();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn omega_suite(om: &GradedSuperHopf, calc: Option<&FirstOrderCalculus>) -> Report {
    let mut r = match &om.d {
        Some(_) => om.verify_strong_bicovariance(),
        None => om.verify_hopf(),
    };
    if om.i.is_some() {
        r.merge("", om.verify_codifferential());
        if om.d.is_some() {
            r.merge("", om.verify_augmentation());
            if let Some(th) = calc.and_then(|c| c.theta.as_ref()) {
                r.merge("", verify_lie_inner(om, th));
            }
        }
    }
    r
}

impl Build {
    pub fn dims(&self) -> Vec<usize> {
        trimmed_dims(&self.omega.dims)
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        r.merge("module: ", self.module.verify());
        r.merge("", self.notes.clone());
        r.merge("", omega_suite(&self.omega, self.calculus.as_ref()));
        if let Some(db) = &self.dual {
            r.merge("dual module: ", db.module.verify());
            r.merge("dual: ", omega_suite(&db.omega, None));
            r.merge("", self.pair_report());
        }
        r
    }

    /// Pairing checks with the partner; empty when none is configured.
    pub fn pair_report(&self) -> Report {
        let mut r = Report::new();
        let Some(db) = &self.dual else { return r };
        let (l, rr) = if db.main_is_left { (&self.omega, &db.omega) } else { (&db.omega, &self.omega) };
        r.merge("pairing: ", verify_pairing(&db.pairing, l, rr));
        r.merge("pairing: ", verify_mutual_duality(&db.pairing, l, rr));
        r
    }

    /// Structure constants as JSON: per-bidegree products and coproducts,
    /// d and i per degree, dimensions and (optionally) labels.
    pub fn export(&self) -> Value {
        let om = &self.omega;
        let mut product = Map::new();
        let mut coproduct = Map::new();
        for p in 0..=self.cap {
            for q in 0..=self.cap - p {
                product.insert(format!("{},{}", p, q), matrix_json(om.m(p, q)));
                coproduct.insert(format!("{},{}", p, q), matrix_json(om.delta(p, q)));
            }
        }
        let per_degree = |maps: &Option<Vec<LinMap>>, skip_first: bool| -> Value {
            match maps {
                None => Value::Null,
                Some(ms) => {
                    let mut o = Map::new();
                    for (n, m) in ms.iter().enumerate() {
                        if !(skip_first && n == 0) {
                            o.insert(n.to_string(), matrix_json(m));
                        }
                    }
                    Value::Object(o)
                }
            }
        };
        let mut out = json!({
            "scenario": self.scenario.name,
            "degree_cap": self.cap,
            "dims": degree_map(&om.dims),
            "product": product,
            "coproduct": coproduct,
            "d": per_degree(&om.d, false),
            "i": per_degree(&om.i, true),
        });
        if self.scenario.output.labels {
            let labels: BTreeMap<String, Vec<String>> = (0..=self.cap).map(|n| (n.to_string(), om.labels(n))).collect();
            out["labels"] = json!(labels);
        }
        out
    }
}

/// Degree-indexed map keyed by stringified integers.
pub fn degree_map(dims: &[usize]) -> Value {
    let m: Map<String, Value> = dims.iter().enumerate().map(|(n, d)| (n.to_string(), json!(d))).collect();
    Value::Object(m)
}

/// Row-major nested arrays of "p/q" strings.
pub fn matrix_json(m: &LinMap) -> Value {
    let dense = m.to_dense();
    Value::Array((0..m.rows).map(|i| Value::Array(dense.row(i).iter().map(|x| Value::String(x.to_pq())).collect())).collect())
}
