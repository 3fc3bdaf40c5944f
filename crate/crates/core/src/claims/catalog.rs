use std::sync::OnceLock;

use super::search::QuarticBounds;
use super::{Check, ClaimKind, ClaimSpec, CountKind, Expected, Family, IdentityKind, LemmaKind, Standing};
use crate::atoms::{AtomSpec, Domain, Rational};
use crate::coverage::{
    combined_floor, shifted_three_squares_problem, CrossConstraint, DivisorFamily, DivisorTemplate, TableKind, TermSpec,
};
use crate::ternary::CongruenceConstraint;

const WIDE: i128 = 100_000;
const NARROW: i128 = 10_000;

// Builders for static data. Every input below is a literal, so a failure
// here is a typo in this file.

fn sq() -> AtomSpec {
    AtomSpec::square()
}

fn pron() -> AtomSpec {
    AtomSpec::pronic()
}

fn tri() -> AtomSpec {
    AtomSpec::triangular()
}

fn poly(m: i128) -> AtomSpec {
    AtomSpec::polygonal(m).expect("valid polygonal order")
}

fn nat(a: AtomSpec) -> AtomSpec {
    a.on(Domain::Naturals).expect("valid domain")
}

fn quarter() -> AtomSpec {
    AtomSpec::floored_linear(ratio(1, 2))
}

fn ratio(p: i128, q: i128) -> Rational {
    Rational::new(p, q).expect("valid rational")
}

fn k(coefficient: i128, atom: AtomSpec, v: char) -> TermSpec {
    TermSpec::scaled(coefficient, atom, v).expect("valid term")
}

fn id(atom: AtomSpec, v: char) -> TermSpec {
    k(1, atom, v)
}

fn fl(atom: AtomSpec, v: char, d: i128) -> TermSpec {
    TermSpec::floor(atom, v, d).expect("valid term")
}

fn ce(atom: AtomSpec, v: char, d: i128) -> TermSpec {
    TermSpec::ceil(atom, v, d).expect("valid term")
}

fn ex(atom: AtomSpec, v: char, d: i128) -> TermSpec {
    TermSpec::exact(atom, v, d).expect("valid term")
}

fn residues(t: TermSpec, modulus: i128, res: &[i128]) -> TermSpec {
    let v = t.parts[0].var;
    t.with_constraint(CongruenceConstraint::new(v, modulus, res).expect("valid constraint"))
        .expect("constraint on the term's variable")
}

fn odd(t: TermSpec) -> TermSpec {
    residues(t, 2, &[1])
}

fn label(terms: &[TermSpec]) -> String {
    terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + ")
}

fn fam(terms: Vec<TermSpec>, start: i128) -> Family {
    Family::new(label(&terms), terms, start)
}

fn fam_x(terms: Vec<TermSpec>, cross: CrossConstraint, start: i128) -> Family {
    fam(terms, start).with_cross(cross)
}

fn combined(atom: AtomSpec, items: &[(char, i128)]) -> TermSpec {
    combined_floor(atom, items).expect("valid grouped term")
}

/// `a <= b <= c <= max`.
fn triples(max: i128) -> Vec<(i128, i128, i128)> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in a..=max {
            for c in b..=max {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn without(list: Vec<(i128, i128, i128)>, skip: &[(i128, i128, i128)]) -> Vec<(i128, i128, i128)> {
    list.into_iter().filter(|t| !skip.contains(t)).collect()
}

/// Separate floors, left pair combined, right pair combined.
fn floor_variants(atom: AtomSpec, (a, b, c): (i128, i128, i128)) -> Vec<Family> {
    vec![
        fam(vec![fl(atom, 'x', a), fl(atom, 'y', b), fl(atom, 'z', c)], 0),
        fam(vec![combined(atom, &[('x', a), ('y', b)]), fl(atom, 'z', c)], 0),
        fam(vec![fl(atom, 'x', a), combined(atom, &[('y', b), ('z', c)])], 0),
    ]
}

fn separate(round: fn(AtomSpec, char, i128) -> TermSpec, atom: AtomSpec, (a, b, c): (i128, i128, i128)) -> Family {
    fam(vec![round(atom, 'x', a), round(atom, 'y', b), round(atom, 'z', c)], 0)
}

fn all_combined(atom: AtomSpec, (a, b, c): (i128, i128, i128)) -> Family {
    fam(vec![combined(atom, &[('x', a), ('y', b), ('z', c)])], 0)
}

/// `a x^2 + b y^2 + t` with `t` the third term.
fn binary_plus(a: i128, b: i128, third: TermSpec) -> Vec<TermSpec> {
    vec![k(a, sq(), 'x'), k(b, sq(), 'y'), third]
}

struct Builder(Vec<ClaimSpec>);

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn add(
        &mut self,
        id: &str,
        summary: &str,
        standing: Standing,
        kind: ClaimKind,
        check: Check,
        expected: Expected,
        bound: i128,
    ) {
        self.0.push(ClaimSpec {
            id: id.to_string(),
            summary: summary.to_string(),
            standing,
            kind,
            check,
            expected,
            default_bound: bound,
        });
    }

    fn theorem(&mut self, id: &str, summary: &str, families: Vec<Family>, bound: i128) {
        self.add(id, summary, Standing::Theorem, ClaimKind::Coverage, Check::Coverage(families), Expected::NoGaps, bound);
    }

    fn fact(&mut self, id: &str, summary: &str, families: Vec<Family>, bound: i128) {
        self.add(id, summary, Standing::Fact, ClaimKind::Coverage, Check::Coverage(families), Expected::NoGaps, bound);
    }

    fn conjecture(&mut self, id: &str, summary: &str, families: Vec<Family>, bound: i128) {
        self.add(id, summary, Standing::Conjecture, ClaimKind::Coverage, Check::Coverage(families), Expected::NoGaps, bound);
    }

    /// The excluded cases of a statement really do have gaps.
    fn exceptions(&mut self, id: &str, summary: &str, families: Vec<Family>, bound: i128) {
        self.add(id, summary, Standing::Fact, ClaimKind::Coverage, Check::Coverage(families), Expected::EveryCaseFails, bound);
    }
}

/// Every registered claim, in a fixed order.
pub fn catalog() -> &'static [ClaimSpec] {
    static CATALOG: OnceLock<Vec<ClaimSpec>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

fn build() -> Vec<ClaimSpec> {
    let mut b = Builder(Vec::new());
    background(&mut b);
    floor_squares(&mut b);
    ceilings(&mut b);
    grouped(&mut b);
    octagonal(&mut b);
    lemmas_and_counts(&mut b);
    identities(&mut b);
    further(&mut b);
    tables(&mut b);
    b.0
}

fn background(b: &mut Builder) {
    b.fact("fact.floor8", "three floor(x^2/8) cover N", vec![separate(fl, sq(), (8, 8, 8))], WIDE);
    b.fact(
        "fact.farhi.solved",
        "three floor(x^2/a) cover N for the settled a",
        [3, 4, 7, 8, 9].into_iter().map(|a| separate(fl, sq(), (a, a, a))).collect(),
        WIDE,
    );
    b.conjecture(
        "farhi.open",
        "three floor(x^2/a) cover N for the remaining a",
        (10..=20).map(|a| separate(fl, sq(), (a, a, a))).collect(),
        WIDE,
    );
    b.fact("fact.triangular", "T+T+T cover N", vec![separate(ex, tri(), (1, 1, 1))], WIDE);
    b.add(
        "fact.gauss-legendre",
        "sums of three squares are exactly the n outside 4^k(8l+7)",
        Standing::Theorem,
        ClaimKind::ExceptionalSet,
        Check::ThreeSquares,
        Expected::FormulaMatches,
        WIDE,
    );
}

fn floor_squares(b: &mut Builder) {
    let plain = |m| vec![fam(binary_plus(1, 1, fl(sq(), 'z', m)), 0)];
    for m in [4, 6] {
        b.theorem(
            &format!("thm1.1.i.m{m}"),
            &format!("x^2+(2y)^2+floor(z^2/{m}) covers N"),
            vec![fam(binary_plus(1, 4, fl(sq(), 'z', m)), 0)],
            WIDE,
        );
    }
    b.theorem(
        "thm1.1.i.m5odd",
        "x^2+y^2+floor(z^2/5) with y odd covers the positive integers",
        vec![fam(vec![id(sq(), 'x'), odd(id(sq(), 'y')), fl(sq(), 'z', 5)], 1)],
        NARROW,
    );
    for (d, name) in [(0, "even"), (1, "odd")] {
        let y = residues(id(sq(), 'y'), 2, &[d]);
        b.theorem(
            &format!("thm1.1.ii.d{d}"),
            &format!("x^2+y^2+floor(z^2/8) with y {name} covers the positive integers"),
            vec![fam(vec![id(sq(), 'x'), y, fl(sq(), 'z', 8)], 1)],
            NARROW,
        );
    }
    for m in [2, 3, 9, 21] {
        b.theorem(&format!("thm1.1.iii.m{m}"), &format!("x^2+y^2+floor(z^2/{m}) covers N"), plain(m), WIDE);
    }
    for m in [3, 4, 6] {
        b.theorem(
            &format!("thm1.1.iii.pronic.m{m}"),
            &format!("x^2+y^2+floor(z(z+1)/{m}) covers N"),
            vec![fam(binary_plus(1, 1, fl(pron(), 'z', m)), 0)],
            WIDE,
        );
    }
    for m in [5, 6, 15] {
        b.theorem(
            &format!("thm1.1.iv.m{m}"),
            &format!("x^2+floor(y^2/{m})+floor(z^2/{m}) and three floor(x^2/{m}) cover N"),
            vec![
                fam(vec![id(sq(), 'x'), fl(sq(), 'y', m), fl(sq(), 'z', m)], 0),
                separate(fl, sq(), (m, m, m)),
            ],
            WIDE,
        );
    }
    b.theorem(
        "thm1.1.v.tri",
        "T+T+floor(T/3) and three floor(T/3) cover N",
        vec![fam(vec![id(tri(), 'x'), id(tri(), 'y'), fl(tri(), 'z', 3)], 0), separate(fl, tri(), (3, 3, 3))],
        WIDE,
    );
    b.theorem(
        "thm1.1.v.pronic",
        "x(x+1)+y(y+1)+floor(z(z+1)/4) covers N",
        vec![fam(vec![id(pron(), 'x'), id(pron(), 'y'), fl(pron(), 'z', 4)], 0)],
        WIDE,
    );
    b.fact("rmk1.1.m9", "three floor(x^2/9) cover N", vec![separate(fl, sq(), (9, 9, 9))], WIDE);
    b.fact(
        "rmk1.1.half",
        "T+T+T/2 with T/2 an integer covers N",
        vec![fam(vec![id(tri(), 'x'), id(tri(), 'y'), ex(tri(), 'z', 2)], 0)],
        WIDE,
    );
    b.add(
        "rmk1.1.twenty",
        "20n+9 = 5x^2+5y^2+z^2 with z odd",
        Standing::Conjecture,
        ClaimKind::Coverage,
        Check::Progression {
            family: fam(vec![k(5, sq(), 'x'), k(5, sq(), 'y'), odd(id(sq(), 'z'))], 0),
            modulus: 20,
            residue: 9,
        },
        Expected::NoGaps,
        NARROW,
    );
    b.conjecture(
        "rmk1.1.pronic.m5",
        "x^2+y^2+floor(z(z+1)/5) covers N",
        vec![fam(binary_plus(1, 1, fl(pron(), 'z', 5)), 0)],
        WIDE,
    );
    b.fact(
        "rmk1.2",
        "x^2+(2y)^2+T and x^2+(2y)^2+2T cover N",
        vec![
            fam(binary_plus(1, 4, id(tri(), 'z')), 0),
            fam(binary_plus(1, 4, k(2, tri(), 'z')), 0),
        ],
        WIDE,
    );

    let sq_triples = without(triples(4), &[(1, 1, 1), (2, 2, 2)]);
    b.conjecture(
        "conj1.1.floor",
        "three floor(q/a) square variants, a<=b<=c<=4",
        sq_triples.iter().flat_map(|&t| floor_variants(sq(), t)).collect(),
        NARROW,
    );
    b.exceptions(
        "conj1.1.floor.exceptions",
        "the excluded square triples have gaps",
        vec![separate(fl, sq(), (1, 1, 1)), separate(fl, sq(), (2, 2, 2))],
        NARROW,
    );
    b.conjecture(
        "conj1.1.tri",
        "three floor(T/a) variants, a<=b<=c<=4",
        triples(4).into_iter().flat_map(|t| floor_variants(tri(), t)).collect(),
        NARROW,
    );
    let pronic_skip = [(1, 1, 1), (1, 1, 3), (1, 1, 7), (1, 3, 3), (1, 7, 7), (3, 3, 3)];
    b.conjecture(
        "conj1.1.pronic",
        "three floor(x(x+1)/a) variants, a<=b<=c<=4 outside the exceptions",
        without(triples(4), &pronic_skip).into_iter().flat_map(|t| floor_variants(pron(), t)).collect(),
        NARROW,
    );
    b.exceptions(
        "conj1.1.pronic.exceptions",
        "the excluded pronic triples have gaps",
        // (1,7,7) shows no gap through 10^5 in any floor grouping.
        without(pronic_skip.to_vec(), &[(1, 7, 7)]).into_iter().map(|t| separate(fl, pron(), t)).collect(),
        NARROW,
    );
    b.conjecture(
        "conj1.2.i",
        "x^2+y^2+floor(z^2/m) with y = delta mod 2, 7<=m<=16",
        (7..=16)
            .flat_map(|m| {
                (0..=1).map(move |d| fam(vec![id(sq(), 'x'), residues(id(sq(), 'y'), 2, &[d]), fl(sq(), 'z', m)], 1))
            })
            .collect(),
        NARROW,
    );
    b.conjecture(
        "conj1.2.ii.even",
        "x^2+(2y)^2+floor(z(z+1)/m), 3<=m<=16",
        (3..=16).map(|m| fam(binary_plus(1, 4, fl(pron(), 'z', m)), 0)).collect(),
        WIDE,
    );
    b.conjecture(
        "conj1.2.ii.odd",
        "x^2+y^2+floor(z(z+1)/m) with y odd, 4<=m<=16",
        (4..=16).map(|m| fam(vec![id(sq(), 'x'), odd(id(sq(), 'y')), fl(pron(), 'z', m)], 1)).collect(),
        NARROW,
    );

    for m in [2, 3, 4, 5] {
        b.theorem(
            &format!("thm1.2.i.m{m}"),
            &format!("x^2+2y^2+floor(z^2/{m}) covers N"),
            vec![fam(binary_plus(1, 2, fl(sq(), 'z', m)), 0)],
            WIDE,
        );
    }
    for m in [3, 4, 6, 8] {
        b.theorem(
            &format!("thm1.2.ii.m{m}"),
            &format!("x^2+3y^2+floor(z^2/{m}) covers N"),
            vec![fam(binary_plus(1, 3, fl(sq(), 'z', m)), 0)],
            WIDE,
        );
    }
    b.theorem("thm1.2.iii.a", "x^2+5y^2+floor(z^2/8) covers N", vec![fam(binary_plus(1, 5, fl(sq(), 'z', 8)), 0)], WIDE);
    b.theorem("thm1.2.iii.b", "x^2+6y^2+floor(z^2/4) covers N", vec![fam(binary_plus(1, 6, fl(sq(), 'z', 4)), 0)], WIDE);
    b.theorem("thm1.2.iv.a", "2x^2+2y^2+floor(z^2/8) covers N", vec![fam(binary_plus(2, 2, fl(sq(), 'z', 8)), 0)], WIDE);
    b.theorem("thm1.2.iv.b", "2x^2+3y^2+floor(z^2/3) covers N", vec![fam(binary_plus(2, 3, fl(sq(), 'z', 3)), 0)], WIDE);
    b.theorem(
        "thm1.2.iv.c",
        "2x^2+floor(y^2/2)+floor(z^2/3) covers N",
        vec![fam(vec![k(2, sq(), 'x'), fl(sq(), 'y', 2), fl(sq(), 'z', 3)], 0)],
        WIDE,
    );
    b.add(
        "rmk1.3",
        "first gap of x^2+3y^2+floor(z^2/10)",
        Standing::Fact,
        ClaimKind::Coverage,
        Check::Coverage(vec![fam(binary_plus(1, 3, fl(sq(), 'z', 10)), 0)]),
        Expected::FirstGap(20142),
        25_000,
    );
}

fn ceilings(b: &mut Builder) {
    let ceil_skip = [(1, 1, 1), (1, 1, 2), (1, 1, 5)];
    b.conjecture(
        "conj1.3.ceil",
        "three ceil(x^2/a), a<=b<=c<=6 outside the exceptions",
        without(triples(6), &ceil_skip).into_iter().map(|t| separate(ce, sq(), t)).collect(),
        NARROW,
    );
    b.exceptions(
        "conj1.3.ceil.exceptions",
        "the excluded ceiling triples have gaps",
        ceil_skip.iter().map(|&t| separate(ce, sq(), t)).collect(),
        NARROW,
    );
    b.conjecture(
        "conj1.3.tri",
        "three ceil(T/a), a<=b<=c<=4",
        triples(4).into_iter().map(|t| separate(ce, tri(), t)).collect(),
        NARROW,
    );
    b.conjecture(
        "conj1.3.pronic",
        "three ceil(x(x+1)/a), a<=b<=c<=4 outside the exceptions",
        without(triples(4), &[(1, 1, 1), (1, 1, 3)]).into_iter().map(|t| separate(ce, pron(), t)).collect(),
        NARROW,
    );
    b.exceptions(
        "conj1.3.pronic.exceptions",
        "the excluded pronic ceiling triples have gaps",
        [(1, 1, 1), (1, 1, 3)].iter().map(|&t| separate(ce, pron(), t)).collect(),
        NARROW,
    );
    for m in [2, 3, 4, 5, 6, 15] {
        b.theorem(
            &format!("thm1.3.i.m{m}"),
            &format!("three ceil(x^2/{m}) cover N"),
            vec![separate(ce, sq(), (m, m, m))],
            WIDE,
        );
    }
    for m in [2, 10] {
        b.theorem(
            &format!("thm1.3.ii.m{m}"),
            &format!("x^2+3y^2+ceil(z^2/{m}) covers N"),
            vec![fam(binary_plus(1, 3, ce(sq(), 'z', m)), 0)],
            WIDE,
        );
    }
    b.theorem(
        "thm1.3.iii.a",
        "x(x+1)+y(y+1)/3+ceil(z(z+1)/3) covers N",
        vec![fam(vec![id(pron(), 'x'), ex(pron(), 'y', 3), ce(pron(), 'z', 3)], 0)],
        WIDE,
    );
    let q31 = AtomSpec::quadratic(3, 1).expect("valid atom");
    b.theorem(
        "thm1.3.iii.b",
        "x(3x+1)+y(3y+1)+ceil(z(z+1)/3) covers N",
        vec![fam(vec![id(q31, 'x'), id(q31, 'y'), ce(pron(), 'z', 3)], 0)],
        WIDE,
    );
    b.theorem(
        "thm1.3.iii.c",
        "three ceil(x(x+1)/3) cover N",
        vec![separate(ce, pron(), (3, 3, 3))],
        WIDE,
    );
}

fn grouped(b: &mut Builder) {
    b.theorem(
        "thm1.4.i.squares",
        "floor((x^2+y^2+z^2)/a) covers N, 2<=a<=12",
        (2..=12).map(|a| all_combined(sq(), (a, a, a))).collect(),
        NARROW,
    );
    b.theorem(
        "thm1.4.i.pronic",
        "floor((x(x+1)+y(y+1)+z(z+1))/a) covers N, 2<=a<=12",
        (2..=12).map(|a| all_combined(pron(), (a, a, a))).collect(),
        NARROW,
    );
    let shifted = |e, d| {
        let p = shifted_three_squares_problem(e, d, 0, 1).expect("valid shifted problem");
        fam(p.terms, 0)
    };
    b.theorem(
        "thm1.4.ii.half",
        "x^2+y^2+z^2+floor(a(x+y+z)/2) covers N for odd a <= 7",
        [1, 3, 5, 7].into_iter().map(|e| shifted(e, 2)).collect(),
        NARROW,
    );
    b.theorem(
        "thm1.4.ii.third",
        "x^2+y^2+z^2+floor(a(x+y+z)/3) covers N for a <= 8 prime to 3",
        [1, 2, 4, 5, 7, 8].into_iter().map(|e| shifted(e, 3)).collect(),
        NARROW,
    );
    b.theorem(
        "thm1.4.iii",
        "p8(x)/2 + ceil(p8(y)/2) + ceil(p8(z)/2) covers N",
        vec![fam(vec![ex(poly(8), 'x', 2), ce(poly(8), 'y', 2), ce(poly(8), 'z', 2)], 0)],
        WIDE,
    );
    let s = AtomSpec::quadratic(3, 2).expect("valid atom");
    b.theorem("thm1.4.iii.s", "s(x)+s(y)+s(z) covers N", vec![separate(ce, s, (2, 2, 2))], WIDE);
    b.add(
        "rmk1.4",
        "111 is missed by x^2+y^2+z^2+floor((x+y+z)/m), m = 19, 20",
        Standing::Fact,
        ClaimKind::Coverage,
        Check::Coverage(vec![shifted(1, 19), shifted(1, 20)]),
        Expected::GapsInclude(vec![111]),
        2_000,
    );
}

fn octagonal(b: &mut Builder) {
    let p8 = poly(8);
    b.add(
        "thm1.5.i",
        "p8+p8+2p8 represents exactly the n outside the excluded set",
        Standing::Theorem,
        ClaimKind::ExceptionalSet,
        Check::Octagonal,
        Expected::FormulaMatches,
        NARROW,
    );
    b.add(
        "thm1.5.i.even",
        "p8+2p8+4p8 represents every even number",
        Standing::Theorem,
        ClaimKind::Coverage,
        Check::Progression { family: fam(vec![id(p8, 'x'), k(2, p8, 'y'), k(4, p8, 'z')], 0), modulus: 2, residue: 0 },
        Expected::NoGaps,
        WIDE / 2,
    );
    b.theorem(
        "thm1.5.i.halves",
        "p8(x)+floor(p8(y)/2)+floor(p8(z)/2) covers N",
        vec![fam(vec![id(p8, 'x'), fl(p8, 'y', 2), fl(p8, 'z', 2)], 0)],
        WIDE,
    );
    b.theorem("thm1.5.i.squares", "floor(x^2/3)+floor(y^2/6)+floor(z^2/6) covers N", vec![separate(fl, sq(), (3, 6, 6))], WIDE);
    b.theorem(
        "thm1.5.ii.half",
        "p8+p8+floor(p8/2) covers N",
        vec![fam(vec![id(p8, 'x'), id(p8, 'y'), fl(p8, 'z', 2)], 0)],
        WIDE,
    );
    b.theorem(
        "thm1.5.ii.eighth",
        "p8+p8+floor(p8/8) covers N",
        vec![fam(vec![id(p8, 'x'), id(p8, 'y'), fl(p8, 'z', 8)], 0)],
        WIDE,
    );
    b.theorem("thm1.5.ii.squares", "floor(x^2/3)+floor(y^2/3)+floor(z^2/6) covers N", vec![separate(fl, sq(), (3, 3, 6))], WIDE);
    b.theorem(
        "thm1.5.iii",
        "p8+p8+p8/4 with p8/4 an integer covers N",
        vec![fam(vec![id(p8, 'x'), id(p8, 'y'), ex(p8, 'z', 4)], 0)],
        WIDE,
    );
    b.theorem(
        "thm1.5.iv.fifth",
        "p8+p8+floor(p8/5) covers N",
        vec![fam(vec![id(p8, 'x'), id(p8, 'y'), fl(p8, 'z', 5)], 0)],
        WIDE,
    );
    b.theorem("thm1.5.iv.squares", "floor(x^2/3)+floor(y^2/3)+floor(z^2/15) covers N", vec![separate(fl, sq(), (3, 3, 15))], WIDE);
}

fn lemmas_and_counts(b: &mut Builder) {
    let lemmas = [
        ("lem2.1", "proper points on x^2+y^2+z^2 = n^2, n not a power of two", LemmaKind::SphereThreeSquares),
        ("lem2.2.i", "u^2+v^2 divisible by 5 rewritten with 5 not dividing xy", LemmaKind::TwoSquaresAvoidFive),
        ("lem2.2.ii", "5x^2+5y^2+z^2 with z odd for n = 6, 14 mod 20", LemmaKind::FiveFiveOneOddZ),
        ("lem2.3", "5x^2+5y^2+z^2 with the parity split", LemmaKind::FiveFiveOneSplitParity),
        ("lem4.1", "proper points on x^2+y^2+2z^2 = n^2, n > 1", LemmaKind::SphereOneOneTwo),
        ("lem4.2", "proper points on x^2+y^2+5z^2 = n^2, n not a power of two", LemmaKind::SphereOneOneFive),
    ];
    for (id, summary, kind) in lemmas {
        b.add(id, summary, Standing::Theorem, ClaimKind::Search, Check::Lemma(kind), Expected::WitnessExists, 500);
    }
    let counts = [
        ("count.hurwitz", "solutions of x^2+y^2+z^2 = n^2 equal 6H", CountKind::Hurwitz),
        ("count.cooper-lam", "solutions of x^2+y^2+2z^2 = n^2 equal 4H or 12H", CountKind::CooperLam),
        ("count.gpq", "solutions of x^2+y^2+5z^2 = n^2 equal 2(5^(e+1)-3)H", CountKind::Gpq),
    ];
    for (id, summary, kind) in counts {
        b.add(id, summary, Standing::Theorem, ClaimKind::CountFormula, Check::Count(kind), Expected::FormulaMatches, 100);
    }
    b.add(
        "count.h-bound",
        "H is at least the product of p^ord_p(n) over the relevant primes",
        Standing::Fact,
        ClaimKind::CountFormula,
        Check::HBound,
        Expected::FormulaMatches,
        NARROW,
    );
    b.add(
        "dickson",
        "catalogued exceptional sets of regular diagonal forms",
        Standing::Fact,
        ClaimKind::ExceptionalSet,
        Check::Dickson,
        Expected::FormulaMatches,
        NARROW,
    );
}

fn identities(b: &mut Builder) {
    let list = [
        ("identity.octagonal", "octagonal floor identities with the 8m denominator, m <= 20", IdentityKind::OctagonalShift, 1_000),
        ("identity.triangular-floor", "T_k = floor((2k+1)^2/8)", IdentityKind::TriangularFloor, NARROW),
        ("identity.s-function", "ceil(p8(-x)/2) = x + ceil(1.5x^2)", IdentityKind::SFunction, NARROW),
        ("identity.polygonal", "p3 = T and p4 = x^2", IdentityKind::PolygonalBasics, NARROW),
        ("identity.hexagonal", "triangular numbers are the p6(-x)", IdentityKind::HexagonalTriangular, WIDE),
        ("identity.quarter-pronic", "x^2+floor(x/2) values are the floor(k(k+1)/4)", IdentityKind::QuarterPronicSet, WIDE),
        ("identity.twin-sets", "both descriptions of the twin floor set agree", IdentityKind::TwinSets, WIDE),
        ("identity.scaling", "floor((ax)^2/a) = ax^2, a <= 20", IdentityKind::ScalingEmbedding, 1_000),
    ];
    for (id, summary, kind, bound) in list {
        b.add(id, summary, Standing::Fact, ClaimKind::Identity, Check::Identity(kind), Expected::FormulaMatches, bound);
    }
    b.add(
        "identity.octagonal.as-printed",
        "the octagonal identity with a 4m denominator fails",
        Standing::Fact,
        ClaimKind::Identity,
        Check::Identity(IdentityKind::OctagonalShiftAsPrinted),
        Expected::LiteralFails,
        1_000,
    );
}

fn alpha_atom(r: Rational) -> AtomSpec {
    AtomSpec::floored_linear(r)
}

/// The grid condition read literally: at least two of the parameters
/// differ from 1, or the multiset is `{1/m, 1, 1}`.
fn alpha_condition(t: &[Rational; 3]) -> bool {
    let one = Rational::integer(1);
    let off = t.iter().filter(|&&r| r != one).count();
    if off >= 2 {
        return true;
    }
    off == 1 && t.iter().any(|r| *r != one && r.num() == 1 && r.den() >= 2)
}

fn further(b: &mut Builder) {
    let conj = Standing::Conjecture;
    b.add(
        "conj5.1.i",
        "8n+3 = x^2+y^2+z^2 over N with x = 1, 3 mod 8",
        conj,
        ClaimKind::Coverage,
        Check::Progression {
            family: fam(vec![residues(id(nat(sq()), 'x'), 8, &[1, 3]), id(sq(), 'y'), id(sq(), 'z')], 0),
            modulus: 8,
            residue: 3,
        },
        Expected::NoGaps,
        NARROW,
    );
    let shifted = || fam(vec![residues(id(sq(), 'x'), 8, &[3, 5]), id(sq(), 'y'), id(sq(), 'z')], 0);
    // 3 = 1+1+1 leaves no room for |x| >= 3, so the literal statement fails at n = 0.
    b.add(
        "conj5.1.ii.literal",
        "8n+3 = x^2+y^2+z^2 with x = 3, 5 mod 8 for all n != 20, n >= 0",
        conj,
        ClaimKind::Coverage,
        Check::Progression { family: shifted(), modulus: 8, residue: 3 },
        Expected::LiteralFails,
        NARROW,
    );
    let mut from_one = shifted();
    from_one.start = 1;
    b.add(
        "conj5.1.ii",
        "8n+3 = x^2+y^2+z^2 with x = 3, 5 mod 8 fails only at n = 20 among n >= 1",
        conj,
        ClaimKind::Coverage,
        Check::Progression { family: from_one, modulus: 8, residue: 3 },
        Expected::GapsExactly(vec![20]),
        NARROW,
    );
    b.conjecture(
        "conj5.2",
        "three floor(x^2/a), one odd, cover the positive integers",
        [3, 5, 7, 8, 9, 10, 11, 12]
            .into_iter()
            .map(|a| fam_x(vec![fl(sq(), 'x', a), fl(sq(), 'y', a), fl(sq(), 'z', a)], CrossConstraint::AtLeastOneTermOdd, 1))
            .collect(),
        NARROW,
    );
    b.conjecture(
        "conj5.3.i",
        "r+s+t from x^2+floor(x/2) with r<=s<=t and s odd",
        vec![fam_x(
            vec![id(quarter(), 'x'), id(quarter(), 'y'), id(quarter(), 'z')],
            CrossConstraint::SortedMiddleTermOdd,
            2,
        )],
        NARROW,
    );
    b.conjecture(
        "conj5.3.ii",
        "x+by+cz from x^2+floor(x/2) for the listed pairs",
        [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 8), (1, 9), (2, 2), (2, 3)]
            .into_iter()
            .map(|(p, q)| fam(vec![id(quarter(), 'x'), k(p, quarter(), 'y'), k(q, quarter(), 'z')], 0))
            .collect(),
        WIDE,
    );
    let one_odd = |r: Rational| {
        let a = alpha_atom(r);
        fam_x(vec![id(a, 'x'), id(a, 'y'), id(a, 'z')], CrossConstraint::AtLeastOneTermOdd, 1)
    };
    b.conjecture(
        "conj5.4.i",
        "three elements of S(alpha), one odd, for alpha on a grid",
        [(1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (5, 4), (4, 3), (3, 2)]
            .into_iter()
            .map(|(p, q)| one_odd(ratio(p, q)))
            .collect(),
        NARROW,
    );
    let grid: Vec<Rational> = [(1, 3), (1, 2), (2, 3), (1, 1), (5, 4), (3, 2)].into_iter().map(|(p, q)| ratio(p, q)).collect();
    let mut alpha_fams = Vec::new();
    for i in 0..grid.len() {
        for j in i..grid.len() {
            for l in j..grid.len() {
                let t = [grid[i], grid[j], grid[l]];
                if alpha_condition(&t) {
                    alpha_fams.push(fam(vec![id(alpha_atom(t[0]), 'x'), id(alpha_atom(t[1]), 'y'), id(alpha_atom(t[2]), 'z')], 0));
                }
            }
        }
    }
    b.conjecture("conj5.4.ii", "x^2+y^2+z^2 plus three floored linear terms, on a grid", alpha_fams, NARROW);
    b.conjecture(
        "conj5.4.ii.integers",
        "x^2+y^2+z^2+floor(x/a)+floor(y/b)+floor(z/c), a<=b<=c<=5 not all 1",
        without(triples(5), &[(1, 1, 1)])
            .into_iter()
            .map(|(p, q, r)| {
                fam(vec![id(alpha_atom(ratio(1, p)), 'x'), id(alpha_atom(ratio(1, q)), 'y'), id(alpha_atom(ratio(1, r)), 'z')], 0)
            })
            .collect(),
        NARROW,
    );
    let s114 = alpha_atom(ratio(11, 4));
    b.add(
        "rmk5.4.a",
        "2 is not a sum of three elements of S(11/4)",
        Standing::Fact,
        ClaimKind::Coverage,
        Check::Coverage(vec![fam(vec![id(s114, 'x'), id(s114, 'y'), id(s114, 'z')], 1)]),
        Expected::GapsInclude(vec![2]),
        100,
    );
    b.add(
        "rmk5.4.b",
        "4 is not a sum of three elements of S(8/5) with one odd",
        Standing::Fact,
        ClaimKind::Coverage,
        Check::Coverage(vec![one_odd(ratio(8, 5))]),
        Expected::GapsInclude(vec![4]),
        100,
    );
    b.add(
        "conj5.5",
        "n = p + floor(k(k+1)/4)",
        conj,
        ClaimKind::Search,
        Check::QuarterPronic,
        Expected::WitnessExists,
        WIDE,
    );
    b.add(
        "rmk5.5",
        "216 is the only n that is not p + T_x, p prime or zero",
        conj,
        ClaimKind::Search,
        Check::PrimeTriangular,
        Expected::GapsExactly(vec![216]),
        NARROW,
    );
    b.conjecture(
        "conj5.6.p5",
        "three floor(p5/a) cover N, a<=b<=c<=3",
        triples(3).into_iter().map(|t| separate(fl, poly(5), t)).collect(),
        WIDE,
    );
    let p7_skip = [(1, 1, 1), (1, 1, 2), (2, 2, 2)];
    let p8_skip = [(1, 1, 1), (2, 2, 2)];
    b.conjecture(
        "conj5.6.p7",
        "three floor(p7/a) cover N, a<=b<=c<=3 outside the exceptions",
        without(triples(3), &p7_skip).into_iter().map(|t| separate(fl, poly(7), t)).collect(),
        WIDE,
    );
    b.conjecture(
        "conj5.6.p8",
        "three floor(p8/a) cover N, a<=b<=c<=3 outside the exceptions",
        without(triples(3), &p8_skip).into_iter().map(|t| separate(fl, poly(8), t)).collect(),
        WIDE,
    );
    b.exceptions(
        "conj5.6.exceptions",
        "the excluded polygonal triples have gaps",
        p7_skip
            .iter()
            .map(|&t| separate(fl, poly(7), t))
            .chain(p8_skip.iter().map(|&t| separate(fl, poly(8), t)))
            .collect(),
        NARROW,
    );

    let kinds = [TableKind::SStar, TableKind::SLower, TableKind::TStar, TableKind::TLower];
    let mut tails = Vec::new();
    for (a1, b1) in [(1, 1), (1, 2), (1, 3), (2, 3), (1, 5)] {
        for kind in kinds {
            let t = DivisorFamily { kind, a: a1, b: b1 }.template().expect("valid template");
            for c in 13..=30 {
                let p = t.instantiate(c, 0, 1).expect("valid instance");
                tails.push(fam(p.terms, 0));
            }
        }
    }
    b.conjecture("conj5.7.i", "ax^2+by^2 plus a rounded z term, 13<=c<=30", tails, NARROW);
    let four_four = |atom: AtomSpec| {
        DivisorTemplate::new(vec![k(4, sq(), 'x'), k(4, sq(), 'y'), fl(atom, 'z', 1)], 2).expect("valid template")
    };
    b.add(
        "conj5.7.quad42",
        "4x^2+4y^2+floor(z^2/c): only c = 42 fails for 42<=c<=60, first at 179",
        conj,
        ClaimKind::ExceptionalSet,
        Check::Divisor { label: "4x^2+4y^2+floor(z^2/c)".into(), template: four_four(sq()), c_lo: 42, c_hi: 60 },
        Expected::SetEquals { members: vec![42], first_gaps: vec![(42, 179)] },
        NARROW,
    );
    b.add(
        "conj5.7.pronic27",
        "4x^2+4y^2+floor(z(z+1)/c): only c = 27 fails for 27<=c<=60, first at 29",
        conj,
        ClaimKind::ExceptionalSet,
        Check::Divisor { label: "4x^2+4y^2+floor(z(z+1)/c)".into(), template: four_four(pron()), c_lo: 27, c_hi: 60 },
        Expected::SetEquals { members: vec![27], first_gaps: vec![(27, 29)] },
        NARROW,
    );
    let ii = |a: i128, p: i128, q: i128| fam(vec![k(a, sq(), 'x'), fl(sq(), 'y', p), fl(sq(), 'z', q)], 0);
    let mut literal = Vec::new();
    let mut amended = Vec::new();
    for a in 1..=6 {
        for p in 1..=6 {
            for q in 1..=6 {
                if 2 * a > p + q {
                    continue;
                }
                if ![(1, 1, 1), (3, 3, 3), (4, 2, 6)].contains(&(a, p, q)) {
                    literal.push(ii(a, p, q));
                }
                if p <= q && ![(1, 1, 1), (2, 2, 2), (3, 3, 3), (4, 2, 6)].contains(&(a, p, q)) {
                    amended.push(ii(a, p, q));
                }
            }
        }
    }
    b.add(
        "conj5.7.ii.literal",
        "ax^2+floor(y^2/b)+floor(z^2/c) with 2a<=b+c, exceptions as printed",
        conj,
        ClaimKind::Coverage,
        Check::Coverage(literal),
        Expected::LiteralFails,
        NARROW,
    );
    b.conjecture("conj5.7.ii", "ax^2+floor(y^2/b)+floor(z^2/c) with 2a<=b+c, b<=c, amended exceptions", amended, NARROW);
    b.conjecture(
        "conj5.8.squares",
        "floor(x^2/a+y^2/b+z^2/c) covers N, a<=b<=c<=4, c>1",
        triples(4).into_iter().filter(|t| t.2 > 1).map(|t| all_combined(sq(), t)).collect(),
        NARROW,
    );
    let p58_skip = [(1, 1, 1), (1, 1, 3), (1, 1, 7), (1, 3, 3)];
    b.conjecture(
        "conj5.8.pronic",
        "floor(x(x+1)/a+y(y+1)/b+z(z+1)/c) covers N, a<=b<=c<=4, outside the exceptions",
        without(triples(4), &p58_skip).into_iter().map(|t| all_combined(pron(), t)).collect(),
        NARROW,
    );
    b.exceptions(
        "conj5.8.exceptions",
        "the excluded combined triples have gaps",
        std::iter::once(all_combined(sq(), (1, 1, 1)))
            .chain(p58_skip.iter().map(|&t| all_combined(pron(), t)))
            .collect(),
        NARROW,
    );
    let cube = AtomSpec::cube();
    for (claim, ds) in [("conj5.9.a", [2, 3, 4]), ("conj5.9.b", [2, 4, 8])] {
        b.conjecture(
            claim,
            &format!("w^3+floor(x^3/{})+floor(y^3/{})+floor(z^3/{}) over N", ds[0], ds[1], ds[2]),
            vec![fam(vec![id(cube, 'w'), fl(cube, 'x', ds[0]), fl(cube, 'y', ds[1]), fl(cube, 'z', ds[2])], 0)],
            WIDE,
        );
    }
    let mut pairs = Vec::new();
    for a in 1..=4 {
        for c in a..=4 {
            if a + c > 2 {
                pairs.push((a, c));
            }
        }
    }
    b.add(
        "conj5.10",
        "n = floor(p/a) + floor(q/b) with p, q prime",
        conj,
        ClaimKind::Search,
        Check::Goldbach(pairs),
        Expected::WitnessExists,
        NARROW,
    );
    b.add("conj5.11.i", "sum of two distinct twin floor elements, one even", conj, ClaimKind::Search, Check::TwinSum, Expected::WitnessExists, NARROW);
    b.add(
        "conj5.11.ii",
        "twin floor element plus a positive generalized pentagonal number",
        conj,
        ClaimKind::Search,
        Check::TwinPentagonal,
        Expected::WitnessExists,
        NARROW,
    );
    b.add(
        "conj5.12.i",
        "x^2+y^2+phi(z^2) with max(x,y) or z prime",
        conj,
        ClaimKind::Search,
        Check::PhiSquare,
        Expected::WitnessExists,
        NARROW,
    );
    b.conjecture(
        "conj5.12.ii",
        "x^3+y^2+T_z with x, y natural and z positive",
        vec![fam(
            vec![id(cube, 'x'), id(nat(sq()), 'y'), id(tri().on(Domain::PositiveIntegers).expect("valid domain"), 'z')],
            1,
        )],
        WIDE,
    );
    b.add(
        "conj5.13.witnesses",
        "the quoted x^4-y^3+z^2 representations",
        Standing::Fact,
        ClaimKind::Search,
        Check::QuarticWitnesses(vec![(0, 4, 8, 16), (6, 36, 139, 1003), (11019, 4325, 71383, 3719409)]),
        Expected::WitnessExists,
        1,
    );
    b.add(
        "conj5.13",
        "every m with |m| <= N is x^4-y^3+z^2 inside the search box",
        conj,
        ClaimKind::Search,
        Check::QuarticSearch(QuarticBounds::default()),
        Expected::WitnessExists,
        30,
    );
    let fourth = nat(AtomSpec::fourth_power());
    b.conjecture(
        "conj5.14.a",
        "w^2+x^3+y^4+2z^4 over N",
        vec![fam(vec![id(nat(sq()), 'w'), id(cube, 'x'), id(fourth, 'y'), k(2, fourth, 'z')], 0)],
        WIDE,
    );
    b.conjecture(
        "conj5.14.b",
        "w^2+2x^2+y^3+2z^3 over N",
        vec![fam(vec![id(nat(sq()), 'w'), k(2, nat(sq()), 'x'), id(cube, 'y'), k(2, cube, 'z')], 0)],
        WIDE,
    );
}

/// The quoted exceptional sets, restricted to `c <= 12`.
pub(crate) const TABLES: &[(TableKind, i128, i128, &[i128])] = &[
    (TableKind::SStar, 1, 1, &[1, 2, 5]),
    (TableKind::SStar, 1, 2, &[1, 3]),
    (TableKind::SStar, 1, 3, &[1, 4]),
    (TableKind::SStar, 1, 4, &[1, 2, 3, 5]),
    (TableKind::SStar, 1, 5, &[1, 2, 3, 5]),
    (TableKind::SStar, 1, 6, &[1, 2, 3, 4]),
    (TableKind::SStar, 1, 7, &[1, 2, 4, 8]),
    (TableKind::SStar, 1, 8, &[1, 2, 3, 4, 5, 6, 9]),
    (TableKind::SStar, 1, 9, &[1, 2, 3, 4, 5, 6]),
    (TableKind::SStar, 1, 10, &[1, 2, 3, 4, 5, 6, 8, 12]),
    (TableKind::SStar, 2, 2, &[1, 2, 3, 4, 5, 9, 10]),
    (TableKind::SStar, 2, 3, &[1, 2, 8]),
    (TableKind::SLower, 1, 2, &[1]),
    (TableKind::SLower, 1, 3, &[1, 2, 10]),
    (TableKind::SLower, 1, 4, &[1, 2, 3, 5]),
    (TableKind::SLower, 1, 5, &[1, 2, 3, 4, 5]),
    (TableKind::SLower, 1, 6, &[1, 3]),
    (TableKind::SLower, 1, 7, &[1, 2, 3, 4, 5]),
    (TableKind::SLower, 1, 8, &[1, 2, 3, 5, 9]),
    (TableKind::SLower, 1, 9, &[1, 2, 3, 4, 5, 7]),
    (TableKind::SLower, 1, 10, &[1, 2, 3, 4, 12]),
    (TableKind::SLower, 1, 11, &[1, 2, 3, 4, 5, 6, 9]),
    (TableKind::SLower, 1, 12, &[1, 2, 3, 4, 5, 6, 10]),
    (TableKind::SLower, 2, 2, &[1, 2, 3, 4, 5, 6, 10]),
    (TableKind::SLower, 2, 3, &[1, 2, 8]),
    (TableKind::SLower, 2, 4, &[1, 2, 5, 6]),
    (TableKind::SLower, 2, 5, &[1, 2, 3, 5]),
    (TableKind::TStar, 1, 1, &[]),
    (TableKind::TStar, 1, 2, &[]),
    (TableKind::TStar, 1, 3, &[1]),
    (TableKind::TStar, 1, 4, &[3]),
    (TableKind::TStar, 1, 5, &[1, 2]),
    (TableKind::TStar, 1, 6, &[1, 2]),
    (TableKind::TStar, 1, 7, &[1, 2, 4]),
    (TableKind::TStar, 1, 8, &[1]),
    (TableKind::TStar, 1, 9, &[1, 2, 3]),
    (TableKind::TStar, 1, 10, &[1, 2, 3]),
    (TableKind::TStar, 1, 11, &[1, 2, 3]),
    (TableKind::TStar, 2, 2, &[1, 3]),
    (TableKind::TStar, 2, 3, &[1, 2]),
    (TableKind::TStar, 2, 4, &[1, 2, 3]),
    (TableKind::TStar, 3, 4, &[1, 2, 3]),
    (TableKind::TLower, 1, 2, &[]),
    (TableKind::TLower, 1, 3, &[1]),
    (TableKind::TLower, 1, 5, &[1, 2, 3]),
    (TableKind::TLower, 1, 6, &[1, 2]),
    (TableKind::TLower, 1, 7, &[1, 2, 4]),
    (TableKind::TLower, 1, 8, &[1]),
    (TableKind::TLower, 1, 10, &[1, 2, 3]),
    (TableKind::TLower, 2, 3, &[1, 2, 3]),
];

fn table_slug(kind: TableKind) -> &'static str {
    match kind {
        TableKind::SStar => "sstar",
        TableKind::SLower => "slower",
        TableKind::TStar => "tstar",
        TableKind::TLower => "tlower",
    }
}

/// Catalog id of a quoted table entry.
pub fn table_id(kind: TableKind, a: i128, b: i128) -> String {
    format!("table.{}.{a}.{b}", table_slug(kind))
}

/// The catalog table whose family is `template`, if any: its claim id and
/// the quoted set of failing `c <= 12`.
pub fn table_for(template: &DivisorTemplate) -> Option<(String, &'static [i128])> {
    TABLES.iter().find_map(|&(kind, a, b, members)| {
        let t = DivisorFamily { kind, a, b }.template().ok()?;
        (t == *template).then(|| (table_id(kind, a, b), members))
    })
}

fn tables(b: &mut Builder) {
    for &(kind, a, c, members) in TABLES {
        let family = DivisorFamily { kind, a, b: c };
        let template = family.template().expect("valid template");
        b.add(
            &table_id(kind, a, c),
            &format!("{}({a},{c}) for c <= 12", kind.name()),
            Standing::Conjecture,
            ClaimKind::ExceptionalSet,
            Check::Divisor { label: template.to_string(), template, c_lo: 1, c_hi: 12 },
            Expected::SetEquals { members: members.to_vec(), first_gaps: Vec::new() },
            WIDE,
        );
    }
}
