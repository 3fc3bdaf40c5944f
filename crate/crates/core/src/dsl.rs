//! A small expression language for ad-hoc families.
//!
//! ```text
//! family  := term ('+' term)*
//! term    := marker '(' inner ')' | item
//! marker  := 'floor' | 'ceil' | 'exact'
//! inner   := item ('+' item)*
//! item    := part ['/' den] | '(' part ('+' part)* ')' '/' den
//! part    := [int ['*']] atom
//! atom    := v'^2' | v'^3' | v'^4' | v'(' v '+1)' | 'T(' v ')' | 'p' m '(' v ')'
//! den     := int | 'c'
//! ```
//!
//! A term without a marker and without a denominator is an exact multiple;
//! one with a denominator takes the caller's default rounding. Inside a
//! marker several fractions are put over a common denominator, so
//! `floor(x^2/2 + y^2/3)` is `floor((3x^2 + 2y^2)/6)`. The letter `c` as a
//! denominator marks the free divisor of an exceptional-set family.

use crate::arith::{gcd, mul};
use crate::atoms::{AtomSpec, Var};
use crate::coverage::{CrossConstraint, DivisorTemplate, Rounding, TermPart, TermSpec};
use crate::error::{Error, Result};
use crate::ternary::CongruenceConstraint;

/// A parsed family; `free` is the term whose denominator was `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFamily {
    pub terms: Vec<TermSpec>,
    pub free: Option<usize>,
}

impl ParsedFamily {
    /// The family as a divisor template; fails without a `c`.
    pub fn template(&self) -> Result<DivisorTemplate> {
        let free = self.free.ok_or_else(|| Error::invalid("family has no free denominator `c`"))?;
        DivisorTemplate::new(self.terms.clone(), free)
    }
}

pub fn parse_family(src: &str, default_rounding: Rounding) -> Result<ParsedFamily> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, default_rounding };
    let family = p.family()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("expected `+` or end of input"));
    }
    let mut seen: Vec<Var> = Vec::new();
    for t in &family.terms {
        for v in t.vars() {
            if seen.contains(&v) {
                return Err(Error::Parse { pos: 1, message: format!("variable `{v}` is used in more than one term") });
            }
            seen.push(v);
        }
    }
    Ok(family)
}

/// Parses `one-odd`, `middle-odd` and similar names.
pub fn parse_cross(name: &str) -> Result<CrossConstraint> {
    Ok(match name.trim() {
        "none" => CrossConstraint::None,
        "one-odd" => CrossConstraint::AtLeastOneTermOdd,
        "one-even" => CrossConstraint::AtLeastOneTermEven,
        "middle-odd" => CrossConstraint::SortedMiddleTermOdd,
        "distinct" => CrossConstraint::DistinctTermValues,
        "distinct-one-even" => CrossConstraint::DistinctAndOneEven,
        other => return Err(Error::invalid(format!("unknown cross constraint `{other}`"))),
    })
}

/// Parses a congruence such as `y=1 mod 2` or `x=3,5 mod 8`.
pub fn parse_congruence(src: &str) -> Result<CongruenceConstraint> {
    let bad = || Error::invalid(format!("expected `VAR=R[,R...] mod M`, got `{src}`"));
    let (lhs, rhs) = src.split_once('=').ok_or_else(bad)?;
    let var = lhs.trim();
    let mut chars = var.chars();
    let (Some(v), None) = (chars.next(), chars.next()) else { return Err(bad()) };
    if !v.is_ascii_lowercase() {
        return Err(bad());
    }
    let (residues, modulus) = rhs.split_once("mod").ok_or_else(bad)?;
    let modulus: i128 = modulus.trim().parse().map_err(|_| bad())?;
    let residues = residues
        .split(',')
        .map(|r| r.trim().parse::<i128>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    CongruenceConstraint::new(Var(v), modulus, &residues)
}

/// Attaches `c` to the term that mentions its variable.
pub fn attach_congruence(terms: &mut [TermSpec], c: CongruenceConstraint) -> Result<()> {
    let slot = terms
        .iter()
        .position(|t| t.vars().contains(&c.var))
        .ok_or_else(|| Error::invalid(format!("no term uses variable `{}`", c.var)))?;
    terms[slot] = terms[slot].clone().with_constraint(c)?;
    Ok(())
}

#[derive(Debug)]
enum Den {
    Value(i128),
    Free,
}

struct Item {
    parts: Vec<TermPart>,
    den: Den,
    explicit: bool,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    default_rounding: Rounding,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let w = word.as_bytes();
        let follows_paren = rest.len() > w.len() && rest[w.len()..].iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'(');
        if rest.starts_with(w) && follows_paren {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { pos: start + 1, message: format!("integer `{text}` is too large") })
    }

    fn var(&mut self) -> Result<char> {
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                Ok(c as char)
            }
            _ => Err(self.error("expected a variable letter")),
        }
    }

    fn family(&mut self) -> Result<ParsedFamily> {
        let mut terms = Vec::new();
        let mut free = None;
        loop {
            self.skip_ws();
            let start = self.pos;
            let (term, is_free) = self.term()?;
            if is_free {
                if free.is_some() {
                    return Err(Error::Parse { pos: start + 1, message: "only one term may have denominator `c`".into() });
                }
                free = Some(terms.len());
            }
            terms.push(term);
            if !self.eat(b'+') {
                break;
            }
        }
        Ok(ParsedFamily { terms, free })
    }

    fn term(&mut self) -> Result<(TermSpec, bool)> {
        self.skip_ws();
        let start = self.pos;
        let marker = if self.keyword("floor") {
            Some(Rounding::Floor)
        } else if self.keyword("ceil") {
            Some(Rounding::Ceil)
        } else if self.keyword("exact") {
            Some(Rounding::Exact)
        } else {
            None
        };
        let items = match marker {
            Some(_) => {
                self.expect(b'(')?;
                let mut items = vec![self.item()?];
                while self.eat(b'+') {
                    items.push(self.item()?);
                }
                self.expect(b')')?;
                items
            }
            None => vec![self.item()?],
        };
        let at = |message: String| Error::Parse { pos: start + 1, message };
        let free = items.iter().any(|i| matches!(i.den, Den::Free));
        if free && items.len() > 1 {
            return Err(at("denominator `c` must apply to the whole term".into()));
        }
        let rounding = match marker {
            Some(r) => r,
            None if items[0].explicit => self.default_rounding,
            None => Rounding::Exact,
        };
        let (parts, den) = if free {
            (items.into_iter().next().expect("one item").parts, 1)
        } else {
            common_denominator(items).map_err(|e| at(e.to_string()))?
        };
        let term = TermSpec::group(rounding, parts, den).map_err(|e| at(e.to_string()))?;
        Ok((term, free))
    }

    fn item(&mut self) -> Result<Item> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut parts = vec![self.part()?];
            while self.eat(b'+') {
                parts.push(self.part()?);
            }
            self.expect(b')')?;
            self.expect(b'/')?;
            let den = self.den()?;
            return Ok(Item { parts, den, explicit: true });
        }
        let part = self.part()?;
        if self.eat(b'/') {
            let den = self.den()?;
            Ok(Item { parts: vec![part], den, explicit: true })
        } else {
            Ok(Item { parts: vec![part], den: Den::Value(1), explicit: false })
        }
    }

    fn den(&mut self) -> Result<Den> {
        if self.peek() == Some(b'c') {
            self.pos += 1;
            return Ok(Den::Free);
        }
        let at = self.pos;
        let d = self.integer()?;
        if d < 1 {
            return Err(Error::Parse { pos: at + 1, message: "denominator must be positive".into() });
        }
        Ok(Den::Value(d))
    }

    fn part(&mut self) -> Result<TermPart> {
        let coefficient = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let at = self.pos;
            let k = self.integer()?;
            if k < 1 {
                return Err(Error::Parse { pos: at + 1, message: "coefficient must be positive".into() });
            }
            self.eat(b'*');
            k
        } else {
            1
        };
        let (atom, var) = self.atom()?;
        Ok(TermPart { coefficient, atom, var: Var(var) })
    }

    fn atom(&mut self) -> Result<(AtomSpec, char)> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let next = |p: &Self, k: usize| p.src.get(p.pos + k).copied();
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let v = self.var()?;
                self.expect(b')')?;
                Ok((AtomSpec::triangular(), v))
            }
            Some(b'p') if next(self, 1).is_some_and(|c| c.is_ascii_digit()) => {
                self.pos += 1;
                let m = self.integer()?;
                let atom = AtomSpec::polygonal(m).map_err(|e| Error::Parse { pos: start + 1, message: e.to_string() })?;
                self.expect(b'(')?;
                let v = self.var()?;
                self.expect(b')')?;
                Ok((atom, v))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let v = self.var()?;
                if self.eat(b'^') {
                    let at = self.pos;
                    let atom = match self.integer()? {
                        2 => AtomSpec::square(),
                        3 => AtomSpec::cube(),
                        4 => AtomSpec::fourth_power(),
                        e => return Err(Error::Parse { pos: at + 1, message: format!("unsupported exponent {e}") }),
                    };
                    Ok((atom, v))
                } else if self.eat(b'(') {
                    let at = self.pos;
                    let w = self.var()?;
                    if w != v {
                        return Err(Error::Parse { pos: at + 1, message: format!("expected `{v}({v}+1)`") });
                    }
                    self.expect(b'+')?;
                    let at = self.pos;
                    if self.integer()? != 1 {
                        return Err(Error::Parse { pos: at + 1, message: "only x(x+1) is supported".into() });
                    }
                    self.expect(b')')?;
                    Ok((AtomSpec::pronic(), v))
                } else {
                    Err(self.error(format!("expected `^` or `(` after `{v}`")))
                }
            }
            _ => Err(Error::Parse { pos: start + 1, message: "expected an atom such as x^2, x(x+1), T(x) or p5(x)".into() }),
        }
    }
}

/// Rewrites a sum of fractions over their least common denominator.
fn common_denominator(items: Vec<Item>) -> Result<(Vec<TermPart>, i128)> {
    let dens: Vec<i128> = items
        .iter()
        .map(|i| match i.den {
            Den::Value(d) => d,
            Den::Free => unreachable!("free denominators are handled by the caller"),
        })
        .collect();
    let mut l = 1i128;
    for &d in &dens {
        l = mul(l / gcd(l, d), d)?;
    }
    let mut parts = Vec::new();
    for (item, d) in items.into_iter().zip(dens) {
        for mut p in item.parts {
            p.coefficient = mul(p.coefficient, l / d)?;
            parts.push(p);
        }
    }
    Ok((parts, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ParsedFamily {
        parse_family(s, Rounding::Floor).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn parse_err(s: &str) -> usize {
        match parse_family(s, Rounding::Floor) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn plain_and_rounded_terms() {
        let sq = AtomSpec::square();
        let f = parse("x^2 + 3y^2 + floor(z^2/10)");
        assert_eq!(
            f.terms,
            vec![
                TermSpec::scaled(1, sq, 'x').unwrap(),
                TermSpec::scaled(3, sq, 'y').unwrap(),
                TermSpec::floor(sq, 'z', 10).unwrap(),
            ]
        );
        assert_eq!(f.free, None);
        let g = parse("ceil(x^2/1)+ceil(y^2/1)+ceil(z^2/5)");
        assert_eq!(g.terms[2], TermSpec::ceil(sq, 'z', 5).unwrap());
        let h = parse_family("x^2/4 + y(y+1) + 2*T(z)", Rounding::Exact).unwrap();
        assert_eq!(h.terms[0], TermSpec::exact(sq, 'x', 4).unwrap());
        assert_eq!(h.terms[1], TermSpec::scaled(1, AtomSpec::pronic(), 'y').unwrap());
        assert_eq!(h.terms[2], TermSpec::scaled(2, AtomSpec::triangular(), 'z').unwrap());
    }

    #[test]
    fn grouped_numerators() {
        let sq = AtomSpec::square();
        let f = parse("floor(x^2/2 + y^2/3) + z^2");
        let parts = vec![
            TermPart { coefficient: 3, atom: sq, var: Var('x') },
            TermPart { coefficient: 2, atom: sq, var: Var('y') },
        ];
        assert_eq!(f.terms[0], TermSpec::group(Rounding::Floor, parts.clone(), 6).unwrap());
        let g = parse("floor((3x^2 + 2y^2)/6) + z^2");
        assert_eq!(g.terms[0], f.terms[0]);
        let p = parse("p8(x) + p5(y) + p7(z) + w^3 + v^4");
        assert_eq!(p.terms[0].parts[0].atom, AtomSpec::polygonal(8).unwrap());
        assert_eq!(p.terms[3].parts[0].atom, AtomSpec::cube());
        assert_eq!(p.terms[4].parts[0].atom, AtomSpec::fourth_power());
    }

    #[test]
    fn free_denominator_matches_table_template() {
        use crate::coverage::{DivisorFamily, TableKind};
        let f = parse("2x^2 + 3y^2 + floor(z^2/c)");
        assert_eq!(f.free, Some(2));
        let want = DivisorFamily { kind: TableKind::SLower, a: 2, b: 3 }.template().unwrap();
        assert_eq!(f.template().unwrap(), want);
        let t = parse("x^2 + y^2 + ceil(z(z+1)/c)");
        assert_eq!(t.template().unwrap(), DivisorFamily { kind: TableKind::TStar, a: 1, b: 1 }.template().unwrap());
        assert!(parse("x^2").template().is_err());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_err("x^2 + y^5"), 9);
        assert_eq!(parse_err("x^2 + + y^2"), 7);
        assert_eq!(parse_err("floor(x^2/0)"), 11);
        assert_eq!(parse_err("x^2 y^2"), 5);
        assert_eq!(parse_err("x(y+1)"), 3);
        assert_eq!(parse_err("floor(x^2/c + y^2/2)"), 1);
        assert_eq!(parse_err("x^2/c + y^2/c"), 9);
        assert!(matches!(parse_family("x^2 + x^2", Rounding::Floor), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("floor(x^2/2", Rounding::Floor), Err(Error::Parse { pos: 12, .. })));
    }

    #[test]
    fn constraints() {
        let mut f = parse("x^2 + y^2 + floor(z^2/8)").terms;
        attach_congruence(&mut f, parse_congruence("y = 1 mod 2").unwrap()).unwrap();
        assert_eq!(f[1].constraints.len(), 1);
        assert!(attach_congruence(&mut f, parse_congruence("w=1 mod 2").unwrap()).is_err());
        assert!(parse_congruence("y 1 mod 2").is_err());
        assert!(parse_congruence("x=3,5 mod 8").is_ok());
        assert_eq!(parse_cross("one-odd").unwrap(), CrossConstraint::AtLeastOneTermOdd);
        assert!(parse_cross("sideways").is_err());
    }
}
