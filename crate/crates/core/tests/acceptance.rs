//! Acceptance run: one line per criterion, all comparisons exact.
//!
//! A criterion whose stated value disagrees with a value that the same
//! construction forces (Leibniz, invariance) is printed as FAIL with the
//! literal value, the computed value and the reason; the process only exits
//! nonzero when a self-consistent check fails.

mod common;

use std::sync::Arc;
use std::time::Instant;

use hqc_core::braided::{kron_vec, nichols, subshuffle_membership, BraidedOperators, Convention};
use hqc_core::calculus::{
    delta_unique_nichols, first_order_kg, first_order_kofg, inner_exterior, shuffle_exterior, with_delta, FirstOrderCalculus, InnerFlavor,
};
use hqc_core::codiff::{augment_universal, codiff_from_map, coinner_first_order, coinner_subshuffle, extend_codiff_tensor, CodiffError};
use hqc_core::crossed::{braiding, crossed_from_graded, ActionSide, CrossedModule, GroupGradedModule};
use hqc_core::exact::{is_zero_vec, unit_vec, LinMap, Rat, RatVector};
use hqc_core::group::FiniteGroup;
use hqc_core::hopf::HopfAlgebra;
use hqc_core::quiver::{
    classify, finite_set_calculus, laplacian_quantisation, omega_theta_path, path_super_hopf, right_handed_codiff, HopfQuiverTriple, PathBasis,
    Quiver,
};
use hqc_core::report::Report;
use hqc_core::scenario::{build, fixture};
use hqc_core::space::{flip, id};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    /// every self-consistent check passed
    consistent: bool,
    /// literal values that differ from what the construction forces
    literal: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { consistent: true, literal: vec![], detail: String::new() }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.consistent = false;
            self.note(&format!("failed: {}", what));
        }
    }

    fn report(&mut self, what: &str, r: &Report) {
        if !r.all_pass() {
            let f = r.failures();
            self.check(&format!("{}: {} ({})", what, f[0].id, f[0].witness.clone().unwrap_or_default()), false);
        }
    }

    fn literal(&mut self, what: String) {
        self.literal.push(what);
    }

    fn note(&mut self, s: &str) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(s);
    }
}

fn add(a: &[Rat], b: &[Rat]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rat], b: &[Rat]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Rat], s: i64) -> RatVector {
    a.iter().map(|x| x * &Rat::int(s)).collect()
}

fn show(v: &[Rat], labels: &dyn Fn(usize) -> String) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if c.is_one() { labels(i) } else { format!("({})·{}", c.to_pq(), labels(i)) })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn dims_str(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

// ---------------------------------------------------------------------------
// ℤ₂ example on Λ¹ = span{γ, α₁, α₂}

fn z2_kg_graded(literal_sign: bool) -> GroupGradedModule {
    let g = FiniteGroup::cyclic(2);
    let s = if literal_sign { -1 } else { 1 };
    let mg = LinMap::from_columns(3, vec![vec![(0, Rat::int(-1))], vec![(1, Rat::int(s))], vec![(2, Rat::int(-s))]]);
    GroupGradedModule::from_generators(&g, vec![0, 1, 1], ActionSide::Right, &[(1, mg)], vec!["γ".into(), "α1".into(), "α2".into()]).unwrap()
}

fn criterion1() -> Outcome {
    let mut o = Outcome::new();
    let want = vec![2, 6, 18, 50, 138];
    let b = build(&fixture("z2-subshuffle").unwrap(), 4).unwrap();
    let dims = b.omega.dims.clone();
    o.check(&format!("dims {} (expected {})", dims_str(&dims), dims_str(&want)), dims == want);
    o.report("strong bicovariance and augmentation", &b.verify());
    o.note(&format!("corrected action γ◁g=−γ, α₁◁g=α₁, α₂◁g=−α₂: dims {}", dims_str(&dims)));
    // the sub-shuffle itself only sees the coaction and θ*
    let h = Arc::new(HopfAlgebra::group_algebra(&FiniteGroup::cyclic(2)));
    let lit = crossed_from_graded(&z2_kg_graded(true), &h).unwrap();
    let ts = vec![Rat::zero(), Rat::one(), Rat::zero()];
    let lit_dims: Vec<usize> = (0..=4).map(|n| 2 * if n < 2 { 3usize.pow(n as u32) } else { subshuffle_membership(&lit, &ts, n).len() }).collect();
    o.check("literal-action sub-shuffle dims", lit_dims == want);
    o.note(&format!("literal action α_i◁g=(−1)^iα_i: sub-shuffle dims {}", dims_str(&lit_dims)));
    if hqc_core::braided::is_right_invariant_dual(&lit, &ts) {
        o.note("α₁* invariant under the literal action");
    } else {
        o.literal("literal action leaves α₁* non-invariant (α₁◁g = −α₁), so i is not defined on it; the corrected action is used for the augmented build".into());
    }
    o
}

struct KgExample {
    rh: hqc_core::quiver::RightHandedCodiff,
    pb: PathBasis,
    al: [usize; 3],
    be: [usize; 3],
    ga: usize,
    rho: usize,
}

fn z2_kg_triple() -> KgExample {
    let g = FiniteGroup::cyclic(2);
    let t0 = HopfQuiverTriple::canonical(&g, &[1, 2], &[false, true], ActionSide::Right).unwrap();
    let al = [0, t0.arrow(0, 1, 1), t0.arrow(0, 1, 2)];
    let be = [0, t0.arrow(1, 1, 1), t0.arrow(1, 1, 2)];
    let (ga, rho) = (t0.arrow(0, 0, 1), t0.arrow(1, 0, 1));
    let na = t0.quiver.num_arrows();
    // α_i◁g = ±β_i, γ◁g = −ρ: restricts to the canonical action on the digraph arrows
    let mut cols = vec![Vec::new(); na];
    for i in 1..=2 {
        let s = if i == 1 { Rat::one() } else { Rat::int(-1) };
        cols[al[i]] = vec![(be[i], s.clone())];
        cols[be[i]] = vec![(al[i], s)];
    }
    cols[ga] = vec![(rho, Rat::int(-1))];
    cols[rho] = vec![(ga, Rat::int(-1))];
    let t = HopfQuiverTriple::from_generators(&g, &[1, 2], &[false, true], ActionSide::Right, &[(1, LinMap::from_columns(na, cols))]).unwrap();
    let rh = right_handed_codiff(&t, Some(&[Rat::one(), Rat::zero(), Rat::zero()]), 2).unwrap();
    let pb = rh.paths.clone();
    KgExample { rh, pb, al, be, ga, rho }
}

fn criterion2() -> Outcome {
    let mut o = Outcome::new();
    let x = z2_kg_triple();
    let (pb, rh) = (&x.pb, &x.rh);
    o.report("triple, transport and calculus", &rh.report);
    let lab = |n: usize| move |i: usize| pb.label(n, i);
    let p = |arrows: &[usize]| pb.element(arrows);
    let (e, g) = (pb.vertex(0), pb.vertex(1));
    let (a, b, ga, rho) = (x.al, x.be, x.ga, x.rho);
    let zero0 = vec![Rat::zero(); pb.dim(0)];
    let zero1 = vec![Rat::zero(); pb.dim(1)];
    let zero2 = vec![Rat::zero(); pb.dim(2)];
    let mut matched = 0;
    let mut total = 0;
    let mut expect = |o: &mut Outcome, name: &str, got: Option<RatVector>, want: RatVector, deg: usize| {
        total += 1;
        match got {
            None => o.check(&format!("{} defined on the transported sub-Hopf algebra", name), false),
            Some(v) if v == want => matched += 1,
            Some(v) => {
                let l = lab(deg);
                o.literal(format!("{}: stated {}, computed {}", name, show(&want, &l), show(&v, &l)));
            }
        }
    };
    expect(&mut o, "i(α₁)", rh.i_of(1, &p(&[a[1]])), sub(&g, &e), 0);
    expect(&mut o, "i(β₁)", rh.i_of(1, &p(&[b[1]])), sub(&e, &g), 0);
    expect(&mut o, "i(γ)", rh.i_of(1, &p(&[ga])), zero0.clone(), 0);
    expect(&mut o, "i(α₂)", rh.i_of(1, &p(&[a[2]])), zero0.clone(), 0);
    expect(&mut o, "i(β₂)", rh.i_of(1, &p(&[b[2]])), zero0.clone(), 0);
    expect(&mut o, "i(α₁β₁)", rh.i_of(2, &p(&[a[1], b[1]])), add(&p(&[b[1]]), &p(&[a[1]])), 1);
    expect(&mut o, "i(α₁β₂)", rh.i_of(2, &p(&[a[1], b[2]])), p(&[b[2]]), 1);
    expect(&mut o, "i(α₁ρ)", rh.i_of(2, &p(&[a[1], rho])), p(&[rho]), 1);
    expect(&mut o, "de", rh.d_of(0, &e), zero1.clone(), 1);
    expect(&mut o, "dg", rh.d_of(0, &g), scale(&p(&[rho]), -2), 1);
    expect(&mut o, "dγ", rh.d_of(1, &p(&[ga])), zero2.clone(), 2);
    expect(&mut o, "dρ", rh.d_of(1, &p(&[rho])), zero2.clone(), 2);
    for i in 1..=2 {
        expect(&mut o, &format!("dα{}", i), rh.d_of(1, &p(&[a[i]])), scale(&p(&[a[i], rho]), 2), 2);
        let s = if i == 1 { -2 } else { 2 };
        expect(&mut o, &format!("dβ{}", i), rh.d_of(1, &p(&[b[i]])), scale(&p(&[rho, b[i]]), s), 2);
    }
    // d = [θ,·} with θ = 1⊗γ = γ (the unit of kG is e), and d² = 0
    let theta = p(&[ga]);
    let mut inner_ok = true;
    for k in 0..pb.dim(0) {
        let v = unit_vec(pb.dim(0), k);
        let want = sub(&rh.mul_paths(1, &theta, 0, &v).unwrap(), &rh.mul_paths(0, &v, 1, &theta).unwrap());
        inner_ok &= rh.d_of(0, &v).unwrap() == want;
    }
    for arrows in [[a[1]], [a[2]], [b[1]], [b[2]], [ga], [rho]] {
        let v = p(&arrows);
        let want = add(&rh.mul_paths(1, &theta, 1, &v).unwrap(), &rh.mul_paths(1, &v, 1, &theta).unwrap());
        inner_ok &= rh.d_of(1, &v).unwrap() == want;
    }
    let dd = rh.omega.d.as_ref().unwrap();
    o.check("d² = 0 on Ω⁰", dd[1].compose(&dd[0]).is_zero());
    o.check("d agrees with the graded commutator with θ = γ in path products", inner_ok);
    o.report("strong bicovariance", &rh.omega.verify_strong_bicovariance());
    o.report("codifferential", &rh.omega.verify_codifferential());
    o.note(&format!("{}/{} stated values matched in the path presentation", matched, total));
    if !o.literal.is_empty() {
        o.note("the computed d is the graded commutator with θ = γ and squares to zero, and gives dβ_i = −2ρβ_i for both i, so the stated (−1)^i is not reproducible");
    }
    o
}

fn criterion3() -> Outcome {
    let mut o = Outcome::new();
    let g = FiniteGroup::cyclic(2);
    let t = HopfQuiverTriple::canonical(&g, &[0, 2], &[false, true], ActionSide::Left).unwrap();
    let ps = path_super_hopf(&t, 3).unwrap();
    o.report("path super-Hopf transport", &ps.report);
    let pb = &ps.paths;
    let a = |i| t.arrow(0, 1, i);
    let b = |i| t.arrow(1, 1, i);
    let (de, dg) = (pb.vertex(0), pb.vertex(1));
    let p = |arrows: &[usize]| pb.element(arrows);
    let mul = |x: &[Rat], px: usize, y: &[Rat], py: usize| ps.product[px][py].apply(&kron_vec(x, y));
    o.check("δ_e² = δ_e", mul(&de, 0, &de, 0) == de);
    for i in 1..=2 {
        o.check("δ_eα_i = α_i", mul(&de, 0, &p(&[a(i)]), 1) == p(&[a(i)]));
        o.check("α_iδ_e = 0", is_zero_vec(&mul(&p(&[a(i)]), 1, &de, 0)));
        o.check("δ_eβ_i = 0", is_zero_vec(&mul(&de, 0, &p(&[b(i)]), 1)));
        o.check("β_iδ_e = β_i", mul(&p(&[b(i)]), 1, &de, 0) == p(&[b(i)]));
        for j in 1..=2 {
            o.check("α_iα_j = 0", is_zero_vec(&mul(&p(&[a(i)]), 1, &p(&[a(j)]), 1)));
            o.check("β_iβ_j = 0", is_zero_vec(&mul(&p(&[b(i)]), 1, &p(&[b(j)]), 1)));
        }
        // Δα_i = δ_e⊗α_i + δ_g⊗β_i + α_i⊗δ_e + β_i⊗δ_g, and the mirror for β_i
        for (x, y) in [(a(i), b(i)), (b(i), a(i))] {
            let (vx, vy) = (p(&[x]), p(&[y]));
            let left = add(&kron_vec(&de, &vx), &kron_vec(&dg, &vy));
            let right = add(&kron_vec(&vx, &de), &kron_vec(&vy, &dg));
            o.check("listed coproduct of an arrow", ps.coproduct[1][0].apply(&vx) == left && ps.coproduct[1][1].apply(&vx) == right);
        }
    }
    o.check("Δδ_e = δ_e⊗δ_e + δ_g⊗δ_g", ps.coproduct[0][0].apply(&de) == add(&kron_vec(&de, &de), &kron_vec(&dg, &dg)));

    // Ω_θ
    let ot = omega_theta_path(&t, None, 3).unwrap();
    o.report("Ω_θ transport", &ot.report);
    let r1 = sub(&p(&[a(1), b(1), a(2)]), &p(&[a(2), b(1), a(1)]));
    let r2 = sub(&p(&[b(1), a(1), b(2)]), &p(&[b(2), a(1), b(1)]));
    o.check("α₁β₁α₂ = α₂β₁α₁ in Ω_θ", ot.in_ideal(3, &r1));
    o.check("β₁α₁β₂ = β₂α₁β₁ in Ω_θ", ot.in_ideal(3, &r2));
    let t2 = add(&p(&[a(1), b(1)]), &p(&[b(1), a(1)]));
    o.check("θ² = α₁β₁ + β₁α₁", ot.theta_sq == t2);
    let mut central = sub(&mul(&t2, 2, &de, 0), &mul(&de, 0, &t2, 2));
    let mut ok = ot.in_ideal(2, &central);
    for arrow in 0..pb.dim(1) {
        let x = unit_vec(pb.dim(1), arrow);
        central = sub(&mul(&t2, 2, &x, 1), &mul(&x, 1, &t2, 2));
        ok &= ot.in_ideal(3, &central);
    }
    o.check("θ² central in Ω_θ", ok);
    o.check("dδ_e = β₁ − α₁ in Ω_θ", ot.d_path[0].apply(&de) == sub(&p(&[b(1)]), &p(&[a(1)])));

    // minimal quotient k(ℤ₂)·⋉B₋(Λ¹), Λ¹ = span{e⁽¹⁾, e⁽²⁾}
    let bm = build(&fixture("z2-minimal").unwrap(), 3).unwrap();
    let om = &bm.omega;
    let dims: Vec<usize> = om.dims.clone();
    o.check(&format!("minimal dims {}", dims_str(&dims)), dims.iter().take(3).copied().collect::<Vec<_>>() == vec![2, 4, 2] && dims[3..].iter().all(|&x| x == 0));
    o.report("minimal strong bicovariance", &bm.verify());
    let base = |x: usize| unit_vec(2, x);
    let gen = |x: usize, i: usize| om.m(0, 1).apply(&kron_vec(&base(x), &om.embed_lambda(1, &unit_vec(2, i - 1))));
    let (al, be) = (|i| gen(0, i), |i| gen(1, i));
    let m11 = |x: &[Rat], y: &[Rat]| om.m(1, 1).apply(&kron_vec(x, y));
    o.check("α₂β₁ = −α₁β₂", is_zero_vec(&add(&m11(&al(2), &be(1)), &m11(&al(1), &be(2)))));
    o.check("β₂α₁ = −β₁α₂", is_zero_vec(&add(&m11(&be(2), &al(1)), &m11(&be(1), &al(2)))));
    for i in 1..=2 {
        o.check("α_iβ_i = β_iα_i = 0", is_zero_vec(&m11(&al(i), &be(i))) && is_zero_vec(&m11(&be(i), &al(i))));
    }
    let theta = add(&al(1), &be(1));
    o.check("θ² = 0", is_zero_vec(&m11(&theta, &theta)));
    let d = om.d.as_ref().unwrap();
    o.check("dδ_e = β₁ − α₁", d[0].apply(&base(0)) == sub(&be(1), &al(1)));
    o.check("dα₁ = dβ₁ = 0", is_zero_vec(&d[1].apply(&al(1))) && is_zero_vec(&d[1].apply(&be(1))));
    // Leibniz on α₂ = δ_e e⁽²⁾ with δe⁽²⁾ = 0 forces dα₂ = (β₁ − α₁)(α₂ + β₂)
    let da2 = d[1].apply(&al(2));
    let db2 = d[1].apply(&be(2));
    let forced = sub(&m11(&be(1), &al(2)), &m11(&al(1), &be(2)));
    o.check("dα₂ = β₁α₂ − α₁β₂ (Leibniz)", da2 == forced);
    o.check("dβ₂ = −dα₂ (Leibniz, δ_g = 1 − δ_e)", db2 == scale(&da2, -1));
    let stated = add(&m11(&be(1), &al(2)), &m11(&al(1), &be(2)));
    if da2 != stated || db2 != stated {
        o.literal(format!(
            "dα₂ = dβ₂ = β₁α₂ + α₁β₂ stated; computed dα₂ = β₁α₂ − α₁β₂ and dβ₂ = −dα₂ (differs by 2α₁β₂ ≠ 0, dim Ω² = {})",
            dims[2]
        ));
    }
    o.note(&format!("Ω_θ path dims {}; minimal dims {}", dims_str(&ot.quotient.iter().map(|q| q.dim).collect::<Vec<_>>()), dims_str(&dims[..3])));
    o
}

// ---------------------------------------------------------------------------
// random instances

struct Instance {
    name: String,
    graded: GroupGradedModule,
    module: CrossedModule,
    calc: FirstOrderCalculus,
    function_algebra: bool,
}

fn random_instances(count_per: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = [("ℤ₂", FiniteGroup::cyclic(2)), ("ℤ₃", FiniteGroup::cyclic(3)), ("S₃", FiniteGroup::symmetric(3))];
    let mut out = Vec::new();
    for (gname, g) in &groups {
        for function_algebra in [true, false] {
            let h = Arc::new(if function_algebra { HopfAlgebra::function_algebra(g) } else { HopfAlgebra::group_algebra(g) });
            let mut made = 0;
            while made < count_per {
                let side = if function_algebra { ActionSide::Left } else { ActionSide::Right };
                let gm = common::random_graded(g, side, 3, &mut rng);
                let calc = if function_algebra {
                    first_order_kofg(&gm, &common::random_class_data(&gm, &mut rng))
                } else {
                    let th = common::random_grade_e(&gm, &mut rng);
                    first_order_kg(&gm, &common::coboundary(&gm, &th))
                };
                let Ok(calc) = calc else { continue };
                let module = crossed_from_graded(&gm, &h).unwrap();
                let name = format!("{} {} dim {} #{}", if function_algebra { "k(G)" } else { "kG" }, gname, gm.dim(), made);
                out.push(Instance { name, graded: gm, module, calc, function_algebra });
                made += 1;
                let _ = rng.gen::<u8>();
            }
        }
    }
    out
}

fn criterion4() -> Outcome {
    let mut o = Outcome::new();
    let mut built = 0;
    for name in ["z2-minimal", "z2-universal", "z2-subshuffle"] {
        let b = build(&fixture(name).unwrap(), 3).unwrap();
        o.report(name, &b.omega.verify_strong_bicovariance());
        built += 1;
    }
    let inst = random_instances(4, 2024);
    let mut inner = 0;
    for x in &inst {
        match shuffle_exterior(&x.calc, 3) {
            Ok(om) => {
                o.report(&format!("{} shuffle", x.name), &om.verify_strong_bicovariance());
                built += 1;
            }
            Err(e) => o.check(&format!("{} shuffle exterior: {}", x.name, e), false),
        }
        if x.calc.theta.is_some() {
            for flavor in [InnerFlavor::UniversalTheta, InnerFlavor::Nichols] {
                if let Ok(om) = inner_exterior(&x.calc, flavor, 3) {
                    o.report(&format!("{} inner {:?}", x.name, flavor), &om.verify_strong_bicovariance());
                    built += 1;
                    inner += 1;
                }
            }
        }
    }
    o.check("at least 20 random instances", inst.len() >= 20);
    o.note(&format!("{} random instances over ℤ₂, ℤ₃, S₃ (k(G) and kG), {} exterior algebras checked to cap 3 ({} inner)", inst.len(), built, inner));
    o
}

fn criterion5() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let inst = random_instances(4, 2025);
    let (mut tensor, mut subsh, mut augmented, mut zero_lie, mut nontrivial) = (0, 0, 0, 0, 0);
    for x in &inst {
        let ts = if x.function_algebra { common::random_grade_e(&x.graded, &mut rng) } else { common::random_invariant_dual(&x.graded, &mut rng) };
        let it = coinner_first_order(&x.module, &ts);
        let c = match codiff_from_map(&x.module, &it) {
            Ok(c) => c,
            Err(e) => {
                o.check(&format!("{} coinner first-order i: {}", x.name, e), false);
                continue;
            }
        };
        match extend_codiff_tensor(&c, 3) {
            Ok(om) => {
                o.report(&format!("{} tensor i", x.name), &om.verify_codifferential());
                tensor += 1;
            }
            Err(e) => o.check(&format!("{} tensor extension: {}", x.name, e), false),
        }
        let sub = match coinner_subshuffle(&x.module, &ts, Some(&x.calc), 3) {
            Err(CodiffError::NotAugmentable(_)) => coinner_subshuffle(&x.module, &ts, None, 3),
            r => r,
        };
        match sub {
            Ok((om, _)) => {
                o.report(&format!("{} sub-shuffle i", x.name), &om.verify_codifferential());
                if om.d.is_some() {
                    o.report(&format!("{} sub-shuffle augmentation", x.name), &om.verify_augmentation());
                    augmented += 1;
                }
                subsh += 1;
            }
            Err(e) => o.check(&format!("{} sub-shuffle: {}", x.name, e), false),
        }
        if x.function_algebra {
            let Some(theta) = x.calc.theta.clone() else { continue };
            let Ok(om) = inner_exterior(&x.calc, InnerFlavor::UniversalTheta, 3) else { continue };
            let aug = augment_universal(&om, &theta, &c).unwrap();
            if aug.accepted {
                let l = aug.omega.lie_derivative().unwrap();
                o.check(&format!("{} 𝓛 = 0 on degrees 0,1", x.name), l[0].is_zero() && l[1].is_zero());
                o.report(&format!("{} augmented Ω_θ", x.name), &aug.omega.verify_augmentation());
                o.report(&format!("{} augmented Ω_θ i", x.name), &aug.omega.verify_codifferential());
                augmented += 1;
                zero_lie += 1;
                if !it.is_zero() {
                    nontrivial += 1;
                }
            }
        }
    }
    let b = build(&fixture("z2-subshuffle").unwrap(), 3).unwrap();
    o.report("z2-subshuffle codifferential", &b.omega.verify_codifferential());
    o.report("z2-subshuffle augmentation", &b.omega.verify_augmentation());
    augmented += 1;
    let b = build(&fixture("z2-universal").unwrap(), 3).unwrap();
    if let Some(db) = &b.dual {
        o.report("z2-universal partner codifferential", &db.omega.verify_codifferential());
        subsh += 1;
        if db.omega.d.is_some() {
            o.report("z2-universal partner augmentation", &db.omega.verify_augmentation());
            augmented += 1;
        }
    }
    o.check("some k(G) augmented first-order calculus", zero_lie > 0);
    o.note(&format!(
        "{} tensor and {} sub-shuffle extensions; {} augmentations; 𝓛 = 0 on degrees 0,1 in {} k(G) cases ({} with i ≠ 0)",
        tensor, subsh, augmented, zero_lie, nontrivial
    ));
    o
}

// ---------------------------------------------------------------------------
// braided operators, checked against sums over permutations

fn psi_at(dim: usize, psi: &LinMap, n: usize, i: usize) -> LinMap {
    id(dim.pow((i - 1) as u32)).kron(psi).kron(&id(dim.pow((n - i - 1) as u32)))
}

/// Σ_σ Ψ_σ over S_n, each σ lifted along a reduced word.
fn symmetriser(dim: usize, psi: &LinMap, n: usize) -> LinMap {
    let size = dim.pow(n as u32);
    let mut total = LinMap::zero(size, size);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // bubble sort records a reduced word
        let mut p = perm.clone();
        let mut word = Vec::new();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for k in 0..n.saturating_sub(1) {
                if p[k] > p[k + 1] {
                    p.swap(k, k + 1);
                    word.push(k + 1);
                    swapped = true;
                }
            }
        }
        let mut m = id(size);
        for &k in &word {
            m = psi_at(dim, psi, n, k).compose(&m);
        }
        total = total.add(&m);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// [n;Ψ] = Σ_k Ψ_1∘⋯∘Ψ_k
fn braided_integer(dim: usize, psi: &LinMap, n: usize) -> LinMap {
    let size = dim.pow(n as u32);
    let mut total = id(size);
    let mut m = id(size);
    for k in 1..n {
        m = m.compose(&psi_at(dim, psi, n, k));
        total = total.add(&m);
    }
    total
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion6() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)];
    let mut cases = 0;
    for g in &groups {
        for function_algebra in [true, false] {
            let h = Arc::new(if function_algebra { HopfAlgebra::function_algebra(g) } else { HopfAlgebra::group_algebra(g) });
            let side = if function_algebra { ActionSide::Left } else { ActionSide::Right };
            for _ in 0..2 {
                let gm = common::random_graded(g, side, 3, &mut rng);
                let v = crossed_from_graded(&gm, &h).unwrap();
                let psi = braiding(&v, &v).unwrap();
                let d = v.dim;
                for sign in [1i64, -1] {
                    let ops = BraidedOperators::from_psi(d, &psi, sign, 4);
                    let opst = BraidedOperators::from_psi(d, &psi.transpose(), sign, 4);
                    let spsi = psi.scale(&Rat::int(sign));
                    for n in 1..=4 {
                        let f = ops.factorial(n).unwrap();
                        o.check("[n;Ψ] matches the sum of braid words", ops.integer(n).unwrap() == braided_integer(d, &spsi, n));
                        o.check("[n]! = (id⊗[n−1]!)∘[n;Ψ]", n == 1 || f == id(d).kron(&ops.factorial(n - 1).unwrap()).compose(&braided_integer(d, &spsi, n)));
                        o.check("[n]! = Σ_σ Ψ_σ", f == symmetriser(d, &spsi, n));
                        o.check("[n,Ψ]!ᵀ = [n,Ψᵀ]!", f.transpose() == opst.factorial(n).unwrap());
                        o.check("binomial conventions agree at r = n", ops.binomial(n, n, Convention::Left).unwrap() == ops.binomial(n, n, Convention::Right).unwrap());
                    }
                }
                let lam = nichols(&v, 4, false).unwrap();
                let ops = BraidedOperators::new(&v, -1, 4).unwrap();
                for n in 0..=4 {
                    o.check("dim B₋ⁿ = rank [n,−Ψ]!", lam.dim(n) == ops.factorial(n).unwrap().rank());
                }
                cases += 1;
            }
        }
    }
    for d in 1..=3 {
        let ops = BraidedOperators::from_psi(d, &flip(d, d), -1, 4);
        for n in 0..=4 {
            o.check("trivial braiding gives binomial dims", ops.factorial(n).unwrap().rank() == binomial(d, n));
        }
        // a kG module concentrated in grade e with trivial action has Ψ = flip
        let g = FiniteGroup::cyclic(2);
        let h = Arc::new(HopfAlgebra::group_algebra(&g));
        let gm = GroupGradedModule { group: g, degree: vec![0; d], side: ActionSide::Right, action: vec![id(d), id(d)], labels: vec![] };
        let v = crossed_from_graded(&gm, &h).unwrap();
        let lam = nichols(&v, 4, false).unwrap();
        o.check("Grassmann algebra dims", (0..=4).all(|n| lam.dim(n) == binomial(d, n)));
    }
    o.note(&format!("{} random crossed modules of dim ≤ 3, both signs, n ≤ 4; Grassmann check for dim 1..3", cases));
    o
}

fn criterion7() -> Outcome {
    let mut o = Outcome::new();
    for name in ["z2-minimal", "z2-universal"] {
        let b = build(&fixture(name).unwrap(), 3).unwrap();
        let Some(db) = &b.dual else {
            o.check(&format!("{} has a duality partner", name), false);
            continue;
        };
        let r = b.pair_report();
        o.report(name, &r);
        o.check(&format!("{} pairing checks present", name), r.checks.len() >= 3);
        o.note(&format!("{}: {} checks, partner dims {}", name, r.checks.len(), dims_str(&db.omega.dims)));
    }
    o
}

fn criterion8() -> Outcome {
    let mut o = Outcome::new();
    let inst = random_instances(4, 88);
    let mut tested = 0;
    let mut undefined = 0;
    for x in &inst {
        let Ok(om_inner) = inner_exterior(&x.calc, InnerFlavor::Nichols, 3) else { continue };
        match delta_unique_nichols(&x.calc, 3).unwrap() {
            None => undefined += 1,
            Some(ud) => {
                o.check(&format!("{} independent of the preimage", x.name), ud.independent);
                let delta: Option<Vec<LinMap>> = ud.delta.iter().cloned().collect();
                let Some(delta) = delta else {
                    o.check(&format!("{} δ defined in every degree", x.name), false);
                    continue;
                };
                let lam = nichols(&x.calc.lambda1, 3, false).unwrap();
                let om = with_delta(&x.calc, &lam, &delta);
                let (dw, di) = (om.d.as_ref().unwrap(), om_inner.d.as_ref().unwrap());
                o.check(&format!("{} δ = [θ,·}} on degree 1", x.name), dw[1] == di[1]);
                o.check(&format!("{} δ = [θ,·}} on all degrees", x.name), dw == di);
                tested += 1;
            }
        }
    }
    for name in ["z2-minimal"] {
        let b = build(&fixture(name).unwrap(), 3).unwrap();
        let c = b.calculus.as_ref().unwrap();
        let ud = delta_unique_nichols(c, 3).unwrap().unwrap();
        let om_inner = inner_exterior(c, InnerFlavor::Nichols, 3).unwrap();
        let lam = nichols(&c.lambda1, 3, false).unwrap();
        let delta: Vec<LinMap> = ud.delta.iter().map(|d| d.clone().unwrap()).collect();
        let om = with_delta(c, &lam, &delta);
        o.check("z2-minimal δ = [θ,·}", om.d == om_inner.d && ud.independent);
        tested += 1;
    }
    o.check("at least one inner nichols build", tested > 0);
    o.note(&format!("{} inner nichols builds compared; {} with no [2,−Ψ]-preimage", tested, undefined));
    o
}

fn criterion9() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let trials = 30;
    for _ in 0..trials {
        let n = rng.gen_range(1..=4);
        let mut ram = vec![vec![0; n]; n];
        let mut dig = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                ram[x][y] = rng.gen_range(0..=3);
                dig[x][y] = x != y && ram[x][y] > 0 && rng.gen_bool(0.5);
            }
        }
        let q = Quiver::canonical(&ram, &dig).unwrap();
        let c = finite_set_calculus(&q).unwrap();
        let dim = c.calc.dim;
        let mut p = id(dim);
        for _ in 0..2 * dim {
            let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
            if i != j {
                let mut e = vec![vec![]; dim];
                e[j] = vec![(i, Rat::int(rng.gen_range(-2..=2)))];
                p = id(dim).add(&LinMap::from_columns(dim, e)).compose(&p);
            }
        }
        let p = LinMap::from_columns(dim, (0..dim).map(|k| vec![(k, Rat::int(rng.gen_range(1..=3)))]).collect()).compose(&p);
        let moved = c.calc.transform(&p).unwrap();
        let cl = classify(&moved).unwrap();
        o.report("classification isomorphism", &cl.report);
        o.check("ramification recovered", cl.quiver.ramification() == ram);
        o.check("digraph recovered", cl.quiver.digraph() == dig);
    }
    let w = vec![((0, 1), Rat::one()), ((1, 0), Rat::int(2)), ((1, 2), Rat::one()), ((2, 1), Rat::frac(1, 3))];
    for lam in [Rat::zero(), Rat::frac(3, 2), Rat::int(-1)] {
        let lq = laplacian_quantisation(3, &w, &lam).unwrap();
        o.report(&format!("Laplacian λ = {}", lam.to_pq()), &lq.verify());
        // Δ(fg) = (Δf)g + fΔg + 2(df,dg) on basis pairs, recomputed here
        for a in 0..3 {
            for b in 0..3 {
                let (f, g) = (unit_vec(3, a), unit_vec(3, b));
                let fg: RatVector = f.iter().zip(&g).map(|(x, y)| x * y).collect();
                let (lf, lg, m) = (lq.laplacian(&f), lq.laplacian(&g), lq.metric(&f, &g));
                let rhs: RatVector = (0..3).map(|x| &lf[x] * &g[x] + &f[x] * &lg[x] + &m[x] * &Rat::int(2)).collect();
                o.check("Δ(fg) identity", lq.laplacian(&fg) == rhs);
            }
        }
        let q = &lq.classification.quiver;
        o.check("self-loop at every vertex", (0..3).all(|x| q.ramification()[x][x] == 1));
    }
    o.note(&format!("{} random quivers (≤ 4 vertices, ≤ 3 parallel arrows) under random basis changes; 3-vertex graph at λ = 0, 3/2, −1", trials));
    o
}

fn main() {
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "kℤ₂·⋉B_θ*(Λ¹) degree dims 2,6,18,50,138", criterion1),
        (2, "ℤ₂ kG example: i and d values in the path presentation", criterion2),
        (3, "ℤ₂ path super-Hopf algebra, Ω_θ and minimal quotient", criterion3),
        (4, "strong bicovariance suite", criterion4),
        (5, "codifferential and augmentation suite", criterion5),
        (6, "braided-operator identities", criterion6),
        (7, "duality pairings", criterion7),
        (8, "δ from the [2,−Ψ] preimage equals [θ,·}", criterion8),
        (9, "finite-set calculi and quivers", criterion9),
    ];
    let mut hard_fail = false;
    for (n, title, f) in criteria {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f);
        let secs = t.elapsed().as_secs_f64();
        match out {
            Err(_) => {
                hard_fail = true;
                println!("criterion {}: FAIL [tolerance exact] {} ({:.2}s): panicked", n, title, secs);
            }
            Ok(o) => {
                let status = if o.consistent && o.literal.is_empty() { "PASS" } else { "FAIL" };
                let mut line = format!("criterion {}: {} [tolerance exact] {} ({:.2}s): {}", n, status, title, secs, o.detail);
                if !o.literal.is_empty() {
                    line.push_str(&format!("; stated value not reproducible: {}", o.literal.join("; ")));
                }
                println!("{}", line);
                hard_fail |= !o.consistent;
            }
        }
    }
    if hard_fail {
        std::process::exit(1);
    }
}
