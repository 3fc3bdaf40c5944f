//! Brute-force coverage oracle built from closed forms, shared by the
//! engine tests and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use floorsum::atoms::{AtomKind, AtomSpec, Domain, Rational, Var};
use floorsum::coverage::{CrossConstraint, Rounding, TermPart, TermSpec};
use floorsum::ternary::CongruenceConstraint;
use proptest::prelude::*;

pub const CROSS: [CrossConstraint; 6] = [
    CrossConstraint::None,
    CrossConstraint::AtLeastOneTermOdd,
    CrossConstraint::AtLeastOneTermEven,
    CrossConstraint::SortedMiddleTermOdd,
    CrossConstraint::DistinctTermValues,
    CrossConstraint::DistinctAndOneEven,
];

pub fn atoms() -> Vec<AtomSpec> {
    vec![
        AtomSpec::square(),
        AtomSpec::pronic(),
        AtomSpec::triangular(),
        AtomSpec::polygonal(5).unwrap(),
        AtomSpec::polygonal(8).unwrap(),
        AtomSpec::floored_linear(Rational::new(1, 2).unwrap()),
        AtomSpec::floored_linear(Rational::new(3, 2).unwrap()),
        AtomSpec::cube(),
        AtomSpec::square().on(Domain::Naturals).unwrap(),
    ]
}

pub fn naive_atom(atom: &AtomSpec, x: i128) -> Option<i128> {
    let ok = match atom.domain() {
        Domain::AllIntegers => true,
        Domain::Naturals => x >= 0,
        Domain::PositiveIntegers => x >= 1,
    };
    if !ok {
        return None;
    }
    Some(match atom.kind() {
        AtomKind::Quadratic { u, v } => u * x * x + v * x,
        AtomKind::Polygonal(m) => ((m - 2) * x * x - (m - 4) * x) / 2,
        AtomKind::Cube => x * x * x,
        AtomKind::FourthPower => x * x * x * x,
        AtomKind::FlooredLinearQuadratic(a) => x * x + (a.num() * x).div_euclid(a.den()),
    })
}

/// Arguments whose atom value can matter below `limit`.
pub fn arguments(atom: &AtomSpec, limit: i128) -> Vec<i128> {
    let mut xs = Vec::new();
    for dir in [1i128, -1] {
        let mut x = if dir == 1 { 0 } else { -1 };
        loop {
            match naive_atom(atom, x) {
                Some(v) if v > limit && x.abs() > 3 => break,
                None if x.abs() > 3 => break,
                Some(_) => xs.push(x),
                None => {}
            }
            x += dir;
        }
    }
    xs
}

pub fn round(rounding: Rounding, num: i128, d: i128) -> Option<i128> {
    match rounding {
        Rounding::Floor => Some(num.div_euclid(d)),
        Rounding::Ceil => Some(-(-num).div_euclid(d)),
        Rounding::Exact => (num.rem_euclid(d) == 0).then(|| num / d),
    }
}

#[derive(Clone, Debug)]
pub struct Plan {
    pub rounding: Rounding,
    pub parts: Vec<(i128, usize)>,
    pub den: i128,
    pub congruence: Option<(i128, Vec<i128>)>,
}

#[derive(Clone, Debug)]
pub struct Case {
    pub terms: Vec<TermSpec>,
    pub plans: Vec<Plan>,
    pub cross: CrossConstraint,
    pub lo: i128,
    pub hi: i128,
}

/// Every value of one term up to `cap`, found by enumerating its arguments.
pub fn naive_values(plan: &Plan, atoms: &[AtomSpec], cap: i128) -> BTreeSet<i128> {
    let limit = plan.den * (cap + 60) + 60;
    let args: Vec<Vec<i128>> = plan.parts.iter().map(|&(_, a)| arguments(&atoms[a], limit)).collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; args.len()];
    loop {
        let xs: Vec<i128> = idx.iter().zip(&args).map(|(&i, a)| a[i]).collect();
        let admissible = match &plan.congruence {
            Some((m, rs)) => rs.contains(&xs[0].rem_euclid(*m)),
            None => true,
        };
        if admissible {
            let num: i128 =
                plan.parts.iter().zip(&xs).map(|(&(k, a), &x)| k * naive_atom(&atoms[a], x).unwrap()).sum();
            if let Some(v) = round(plan.rounding, num, plan.den) {
                if v <= cap {
                    out.insert(v);
                }
            }
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return out;
            }
            idx[j] += 1;
            if idx[j] < args[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

pub fn accepts(cross: CrossConstraint, v: &[i128]) -> bool {
    let odd = |x: &i128| x.rem_euclid(2) == 1;
    let distinct = (0..v.len()).all(|i| (0..i).all(|j| v[i] != v[j]));
    match cross {
        CrossConstraint::None => true,
        CrossConstraint::AtLeastOneTermOdd => v.iter().any(odd),
        CrossConstraint::AtLeastOneTermEven => v.iter().any(|x| !odd(x)),
        CrossConstraint::SortedMiddleTermOdd => {
            let mut s = v.to_vec();
            s.sort();
            odd(&s[1])
        }
        CrossConstraint::DistinctTermValues => distinct,
        CrossConstraint::DistinctAndOneEven => distinct && v.iter().any(|x| !odd(x)),
    }
}

pub fn naive_gaps(case: &Case) -> Vec<i128> {
    let atoms = atoms();
    // Loose cap first to learn each term's minimum, then the real one.
    let loose: Vec<BTreeSet<i128>> = case.plans.iter().map(|p| naive_values(p, &atoms, case.hi)).collect();
    let mins: Vec<i128> = loose.iter().map(|s| *s.iter().next().unwrap_or(&0)).collect();
    let total_min: i128 = mins.iter().sum();
    let sets: Vec<Vec<i128>> = case
        .plans
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let cap = case.hi - (total_min - mins[i]);
            naive_values(p, &atoms, cap).into_iter().collect()
        })
        .collect();
    let width = (case.hi - case.lo + 1) as usize;
    let mut hit = vec![false; width];
    let mut tuple = vec![0i128; sets.len()];
    fn walk(sets: &[Vec<i128>], depth: usize, acc: i128, tuple: &mut [i128], case: &Case, hit: &mut [bool]) {
        if depth == sets.len() {
            if acc >= case.lo && acc <= case.hi && accepts(case.cross, tuple) {
                hit[(acc - case.lo) as usize] = true;
            }
            return;
        }
        for &v in &sets[depth] {
            if acc + v > case.hi + 1000 {
                break;
            }
            tuple[depth] = v;
            walk(sets, depth + 1, acc + v, tuple, case, hit);
        }
    }
    walk(&sets, 0, 0, &mut tuple, case, &mut hit);
    (0..width).filter(|&i| !hit[i]).map(|i| case.lo + i as i128).collect()
}

pub fn plan_strategy() -> impl Strategy<Value = Plan> {
    let n_atoms = atoms().len();
    let rounding = prop_oneof![Just(Rounding::Floor), Just(Rounding::Ceil), Just(Rounding::Exact)];
    let single = (rounding.clone(), 1i128..=3, 0..n_atoms, 1i128..=6)
        .prop_map(|(rounding, k, a, den)| Plan { rounding, parts: vec![(k, a)], den, congruence: None });
    let grouped = (
        prop_oneof![Just(Rounding::Floor), Just(Rounding::Ceil)],
        1i128..=3,
        0..n_atoms,
        1i128..=3,
        0..n_atoms,
        2i128..=6,
    )
        .prop_map(|(rounding, k1, a1, k2, a2, den)| Plan {
            rounding,
            parts: vec![(k1, a1), (k2, a2)],
            den,
            congruence: None,
        });
    let congruence = proptest::option::weighted(0.3, (2i128..=4, 0i128..4));
    (prop_oneof![4 => single, 1 => grouped], congruence).prop_map(|(mut p, c)| {
        p.congruence = c.map(|(m, r)| (m, vec![r % m]));
        p
    })
}

pub fn case_strategy() -> impl Strategy<Value = Case> {
    (0..CROSS.len(), proptest::collection::vec(plan_strategy(), 3), 0usize..2, 0i128..40, 200i128..=2000)
        .prop_map(|(ci, mut plans, drop_one, lo, hi)| {
            let cross = CROSS[ci];
            if drop_one == 1 && cross != CrossConstraint::SortedMiddleTermOdd {
                plans.pop();
            }
            let atoms = atoms();
            let names = ['x', 'y', 'z', 'u', 'v', 'w'];
            let mut next = 0;
            let terms = plans
                .iter()
                .map(|p| {
                    let parts: Vec<TermPart> = p
                        .parts
                        .iter()
                        .map(|&(k, a)| {
                            next += 1;
                            TermPart { coefficient: k, atom: atoms[a], var: Var(names[next - 1]) }
                        })
                        .collect();
                    let first = parts[0].var;
                    let mut t = TermSpec::group(p.rounding, parts, p.den).unwrap();
                    if let Some((m, rs)) = &p.congruence {
                        t = t.with_constraint(CongruenceConstraint::new(first, *m, rs).unwrap()).unwrap();
                    }
                    t
                })
                .collect();
            Case { terms, plans, cross, lo, hi }
        })
}

