//! Random group-graded crossed modules and calculus data for the test
//! targets, drawn from a seeded generator so failures are reproducible.
#![allow(dead_code)]

use hqc_core::crossed::{ActionSide, GroupGradedModule};
use hqc_core::exact::{LinMap, Rat, RatVector};
use hqc_core::group::{conjugacy_data, FiniteGroup};
use hqc_core::space::id;
use rand::Rng;

/// All homomorphisms G → {±1}.
pub fn sign_characters(g: &FiniteGroup) -> Vec<Vec<i64>> {
    let n = g.order;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let chi: Vec<i64> = (0..n).map(|x| if mask >> x & 1 == 1 { -1 } else { 1 }).collect();
        if chi[g.identity] == 1 && g.elements().all(|a| g.elements().all(|b| chi[g.mul(a, b)] == chi[a] * chi[b])) {
            out.push(chi);
        }
    }
    out
}

fn small_rat(rng: &mut impl Rng, lo: i64, hi: i64) -> Rat {
    Rat::int(rng.gen_range(lo..=hi))
}

/// A grade-preserving invertible change of basis: shears inside each grade
/// and a positive diagonal.
fn graded_basis_change(degree: &[usize], rng: &mut impl Rng) -> LinMap {
    let d = degree.len();
    let mut p = id(d);
    for _ in 0..2 * d {
        if d < 2 {
            break;
        }
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i != j && degree[i] == degree[j] {
            let mut cols = vec![Vec::new(); d];
            cols[j] = vec![(i, small_rat(rng, -2, 2))];
            p = id(d).add(&LinMap::from_columns(d, cols)).compose(&p);
        }
    }
    let diag = LinMap::from_columns(d, (0..d).map(|k| vec![(k, small_rat(rng, 1, 2))]).collect());
    diag.compose(&p)
}

/// A random graded module of dimension 1..=max_dim: conjugacy-class orbits
/// twisted by sign characters, plus the rational 2-dimensional
/// representation of ℤ₃ on a single grade, in a random graded basis.
pub fn random_graded(g: &FiniteGroup, side: ActionSide, max_dim: usize, rng: &mut impl Rng) -> GroupGradedModule {
    let cd = conjugacy_data(g);
    let chars = sign_characters(g);
    let target = rng.gen_range(1..=max_dim);
    let mut degree: Vec<usize> = Vec::new();
    let mut blocks: Vec<Vec<LinMap>> = Vec::new();
    let mut guard = 0;
    while degree.len() < target && guard < 50 {
        guard += 1;
        let room = target - degree.len();
        let z3_rep = g.order == 3 && g.is_abelian() && room >= 2 && rng.gen_bool(0.3);
        if z3_rep {
            let c = rng.gen_range(0..3);
            // generator 1 acts by the rotation of order 3
            let r = LinMap::from_columns(2, vec![vec![(1, Rat::one())], vec![(0, Rat::int(-1)), (1, Rat::int(-1))]]);
            let mut powers = vec![id(2)];
            for k in 1..3 {
                powers.push(powers[k - 1].compose(&r));
            }
            let gen = if g.mul(1, 1) == 2 { 1 } else { 2 };
            let mats: Vec<LinMap> = g.elements().map(|x| {
                let k = (0..3).find(|&k| {
                    let mut y = g.identity;
                    for _ in 0..k {
                        y = g.mul(y, gen);
                    }
                    y == x
                }).unwrap();
                powers[k].clone()
            }).collect();
            degree.extend([c, c]);
            blocks.push(mats);
            continue;
        }
        let k = rng.gen_range(0..cd.classes.len());
        let class = &cd.classes[k];
        if class.len() > room {
            continue;
        }
        let chi = &chars[rng.gen_range(0..chars.len())];
        let pos = |x: usize| class.iter().position(|&y| y == x).unwrap();
        let mats: Vec<LinMap> = g
            .elements()
            .map(|h| {
                LinMap::from_columns(
                    class.len(),
                    class
                        .iter()
                        .map(|&x| {
                            let y = match side {
                                ActionSide::Left => g.conj(h, x),
                                ActionSide::Right => g.conj(g.inv(h), x),
                            };
                            vec![(pos(y), Rat::int(chi[h]))]
                        })
                        .collect(),
                )
            })
            .collect();
        degree.extend(class.iter().copied());
        blocks.push(mats);
    }
    let d = degree.len();
    let action: Vec<LinMap> = g
        .elements()
        .map(|h| {
            let mut cols: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(d);
            let mut off = 0;
            for b in &blocks {
                let m = &b[h];
                for c in &m.columns {
                    cols.push(c.iter().map(|(i, v)| (i + off, v.clone())).collect());
                }
                off += m.rows;
            }
            LinMap::from_columns(d, cols)
        })
        .collect();
    let p = graded_basis_change(&degree, rng);
    let pinv = p.inverse().expect("invertible");
    let action = action.iter().map(|m| pinv.compose(m).compose(&p)).collect();
    let labels = (0..d).map(|i| format!("v{}", i)).collect();
    let gm = GroupGradedModule { group: g.clone(), degree, side, action, labels };
    gm.validate().expect("random module is graded");
    gm
}

/// Random Z_c-invariant ω_c in grade c for each nontrivial class.
pub fn random_class_data(gm: &GroupGradedModule, rng: &mut impl Rng) -> Vec<(usize, RatVector)> {
    let g = &gm.group;
    let cd = conjugacy_data(g);
    let d = gm.dim();
    let mut out = Vec::new();
    for (k, &c) in cd.reps.iter().enumerate() {
        if c == g.identity {
            continue;
        }
        // fixed vectors of the centralizer inside grade c
        let mut rows = LinMap::zero(0, d);
        for &u in &cd.centralizers[k] {
            rows = rows.vstack(&gm.action[u].sub(&id(d)));
        }
        for i in (0..d).filter(|&i| gm.degree[i] != c) {
            let mut e = vec![Vec::new(); d];
            e[i] = vec![(0, Rat::one())];
            rows = rows.vstack(&LinMap::from_columns(1, e));
        }
        let fixed = rows.kernel();
        if fixed.is_empty() {
            continue;
        }
        let mut w = vec![Rat::zero(); d];
        for f in &fixed {
            let a = small_rat(rng, -1, 2);
            for (x, y) in w.iter_mut().zip(f) {
                *x += &(&a * y);
            }
        }
        out.push((c, w));
    }
    out
}

/// Random vector supported on grade e.
pub fn random_grade_e(gm: &GroupGradedModule, rng: &mut impl Rng) -> RatVector {
    (0..gm.dim()).map(|i| if gm.degree[i] == gm.group.identity { small_rat(rng, -1, 2) } else { Rat::zero() }).collect()
}

/// Random θ* with ⟨θ*, v◁h⟩ = ⟨θ*, v⟩ on a right kG-module.
pub fn random_invariant_dual(gm: &GroupGradedModule, rng: &mut impl Rng) -> RatVector {
    let d = gm.dim();
    let mut rows = LinMap::zero(0, d);
    for h in gm.group.elements() {
        rows = rows.vstack(&gm.action[h].transpose().sub(&id(d)));
    }
    let mut w = vec![Rat::zero(); d];
    for f in rows.kernel() {
        let a = small_rat(rng, -1, 2);
        for (x, y) in w.iter_mut().zip(&f) {
            *x += &(&a * y);
        }
    }
    w
}

/// ω_h = θ◁h − θ.
pub fn coboundary(gm: &GroupGradedModule, theta: &[Rat]) -> Vec<RatVector> {
    gm.group.elements().map(|h| gm.action[h].apply(theta).iter().zip(theta).map(|(a, b)| a - b).collect()).collect()
}
