use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, ceil_div, floor_div};
use crate::atoms::{AtomSpec, Var, Witness};
use crate::bitarray::BitArray;
use crate::error::{Error, Result};
use crate::ternary::CongruenceConstraint;

/// Default cap on enumeration work for grouped numerators.
pub const DEFAULT_NODE_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rounding {
    Floor,
    Ceil,
    /// Only numerators divisible by the denominator contribute.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermPart {
    pub coefficient: i128,
    pub atom: AtomSpec,
    pub var: Var,
}

/// One summand `round(sum coefficient * atom(var) / denominator)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermSpec {
    pub rounding: Rounding,
    pub parts: Vec<TermPart>,
    pub denominator: i128,
    pub constraints: Vec<CongruenceConstraint>,
}

/// A value of a term with one assignment producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermValue {
    pub value: i128,
    pub witness: Witness,
}

impl TermSpec {
    pub fn group(rounding: Rounding, parts: Vec<TermPart>, denominator: i128) -> Result<Self> {
        let t = TermSpec { rounding, parts, denominator, constraints: Vec::new() };
        t.validate()?;
        Ok(t)
    }

    pub fn single(rounding: Rounding, coefficient: i128, atom: AtomSpec, var: char, denominator: i128) -> Result<Self> {
        Self::group(rounding, vec![TermPart { coefficient, atom, var: Var(var) }], denominator)
    }

    pub fn floor(atom: AtomSpec, var: char, denominator: i128) -> Result<Self> {
        Self::single(Rounding::Floor, 1, atom, var, denominator)
    }

    pub fn ceil(atom: AtomSpec, var: char, denominator: i128) -> Result<Self> {
        Self::single(Rounding::Ceil, 1, atom, var, denominator)
    }

    pub fn exact(atom: AtomSpec, var: char, denominator: i128) -> Result<Self> {
        Self::single(Rounding::Exact, 1, atom, var, denominator)
    }

    /// `coefficient * atom(var)` with no division.
    pub fn scaled(coefficient: i128, atom: AtomSpec, var: char) -> Result<Self> {
        Self::single(Rounding::Exact, coefficient, atom, var, 1)
    }

    pub fn with_constraint(mut self, c: CongruenceConstraint) -> Result<Self> {
        self.constraints.push(c);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::invalid("term without parts"));
        }
        if self.denominator < 1 {
            return Err(Error::invalid(format!("denominator {} must be positive", self.denominator)));
        }
        for (i, p) in self.parts.iter().enumerate() {
            if p.coefficient < 1 {
                return Err(Error::invalid(format!("coefficient {} must be positive", p.coefficient)));
            }
            if self.parts[..i].iter().any(|q| q.var == p.var) {
                return Err(Error::invalid(format!("variable {} repeated in one term", p.var)));
            }
        }
        for c in &self.constraints {
            if !self.parts.iter().any(|p| p.var == c.var) {
                return Err(Error::invalid(format!("constraint on {} which the term does not use", c.var)));
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> Vec<Var> {
        self.parts.iter().map(|p| p.var).collect()
    }

    fn admits(&self, var: Var, x: i128) -> bool {
        self.constraints.iter().filter(|c| c.var == var).all(|c| c.admits(x))
    }

    pub fn round(&self, numerator: i128) -> Option<i128> {
        let d = self.denominator;
        match self.rounding {
            Rounding::Floor => Some(floor_div(numerator, d)),
            Rounding::Ceil => Some(ceil_div(numerator, d)),
            Rounding::Exact => (numerator % d == 0).then(|| numerator / d),
        }
    }

    /// Numerators whose rounding can land in `[lo, hi]`.
    fn numerator_window(&self, lo: i128, hi: i128) -> Result<(i128, i128)> {
        let d = self.denominator;
        use arith::{add, mul, sub};
        Ok(match self.rounding {
            Rounding::Floor => (mul(d, lo)?, sub(mul(d, add(hi, 1)?)?, 1)?),
            Rounding::Ceil => (add(mul(d, sub(lo, 1)?)?, 1)?, mul(d, hi)?),
            Rounding::Exact => (mul(d, lo)?, mul(d, hi)?),
        })
    }

    fn part_minima(&self) -> Result<Vec<i128>> {
        self.parts.iter().map(|p| arith::mul(p.coefficient, p.atom.minimum()?)).collect()
    }

    /// A value no larger than any value the term takes.
    pub fn lower_bound(&self) -> Result<i128> {
        let s = self.part_minima()?.into_iter().try_fold(0i128, arith::add)?;
        Ok(match self.rounding {
            Rounding::Floor | Rounding::Exact => floor_div(s, self.denominator),
            Rounding::Ceil => ceil_div(s, self.denominator),
        })
    }

    /// The term's value under `w`, or `None` when a variable is missing, a
    /// constraint or domain fails, or an exact division does not go through.
    pub fn evaluate(&self, w: &Witness) -> Result<Option<i128>> {
        let mut num = 0i128;
        for p in &self.parts {
            let Some(x) = w.get(p.var) else { return Ok(None) };
            if !p.atom.domain().contains(x) || !self.admits(p.var, x) {
                return Ok(None);
            }
            num = arith::add(num, arith::mul(p.coefficient, p.atom.eval(x)?)?)?;
        }
        Ok(self.round(num))
    }

    pub(crate) fn prepare(&self, lo: i128, hi: i128, budget: u128) -> Result<PreparedTerm> {
        self.validate()?;
        let lo = lo.max(self.lower_bound()?);
        let (kmin, kmax) = self.numerator_window(lo, hi)?;
        let mut values = BitArray::new(lo, hi);
        if lo > hi {
            return Ok(PreparedTerm { term: self.clone(), values, source: Source::Empty });
        }
        if self.parts.len() == 1 {
            let p = &self.parts[0];
            let first = self.contributions(p, kmin, kmax)?;
            for &k in first.keys() {
                if let Some(v) = self.round(k) {
                    values.set(v);
                }
            }
            let mut preimage = HashMap::new();
            for (&k, &x) in &first {
                if let Some(v) = self.round(k) {
                    if (lo..=hi).contains(&v) {
                        let e = preimage.entry(v).or_insert(x);
                        if order_key(x) < order_key(*e) {
                            *e = x;
                        }
                    }
                }
            }
            return Ok(PreparedTerm { term: self.clone(), values, source: Source::Single { var: p.var, preimage } });
        }

        // Grouped numerator: sumset of part contributions.
        let mins = self.part_minima()?;
        let total_min: i128 = mins.iter().sum();
        let mut lists = Vec::with_capacity(self.parts.len());
        for (i, p) in self.parts.iter().enumerate() {
            let upper = kmax - (total_min - mins[i]);
            let contrib = self.contributions(p, mins[i], upper)?;
            let mut list: Vec<(i128, i128)> = contrib.into_iter().collect();
            list.sort_unstable();
            lists.push(list);
        }
        let words = ((kmax - total_min).max(0) as u128) / 64 + 1;
        let projected: u128 = lists.iter().map(|l| l.len() as u128).sum::<u128>() * words;
        if projected > budget {
            return Err(Error::GroupTooLarge { projected, budget });
        }
        let mut prefixes: Vec<BitArray> = Vec::with_capacity(lists.len());
        let mut acc_min = 0i128;
        for (i, list) in lists.iter().enumerate() {
            acc_min += mins[i];
            let rest_min: i128 = mins[i + 1..].iter().sum();
            let mut next = BitArray::new(acc_min, kmax - rest_min);
            if i == 0 {
                list.iter().for_each(|&(k, _)| next.set(k));
            } else {
                let prev = &prefixes[i - 1];
                for &(k, _) in list {
                    next.or_shifted(prev, k);
                }
            }
            prefixes.push(next);
        }
        for k in prefixes.last().expect("nonempty").iter_ones() {
            if k >= kmin {
                if let Some(v) = self.round(k) {
                    values.set(v);
                }
            }
        }
        let vars = self.vars();
        Ok(PreparedTerm { term: self.clone(), values, source: Source::Group { vars, lists, prefixes } })
    }

    /// Distinct `coefficient * atom(x)` in `[kmin, kmax]` for admissible `x`,
    /// each with its preferred preimage.
    fn contributions(&self, p: &TermPart, kmin: i128, kmax: i128) -> Result<HashMap<i128, i128>> {
        let mut out: HashMap<i128, i128> = HashMap::new();
        let Some((a, b)) = p.atom.argument_range(floor_div(kmax, p.coefficient))? else {
            return Ok(out);
        };
        for x in a..=b {
            if !self.admits(p.var, x) {
                continue;
            }
            let k = arith::mul(p.coefficient, p.atom.eval(x)?)?;
            if (kmin..=kmax).contains(&k) {
                let e = out.entry(k).or_insert(x);
                if order_key(x) < order_key(*e) {
                    *e = x;
                }
            }
        }
        Ok(out)
    }
}

/// Preimage preference: smaller `|x|`, positive first.
fn order_key(x: i128) -> (i128, bool) {
    (x.abs(), x < 0)
}

impl fmt::Display for TermSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| {
                let body = p.atom.to_string().replace('x', &p.var.to_string());
                if p.coefficient == 1 { body } else { format!("{}*{}", p.coefficient, body) }
            })
            .collect();
        let inner = parts.join("+");
        let s = match (self.rounding, self.denominator) {
            (Rounding::Exact, 1) => inner,
            (Rounding::Exact, d) => format!("({inner})/{d}"),
            (Rounding::Floor, d) => format!("floor(({inner})/{d})"),
            (Rounding::Ceil, d) => format!("ceil(({inner})/{d})"),
        };
        write!(f, "{s}")?;
        for c in &self.constraints {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Source {
    Empty,
    Single { var: Var, preimage: HashMap<i128, i128> },
    Group { vars: Vec<Var>, lists: Vec<Vec<(i128, i128)>>, prefixes: Vec<BitArray> },
}

/// A term's value set over a bounded range, with witness recovery.
#[derive(Clone, Debug)]
pub(crate) struct PreparedTerm {
    pub term: TermSpec,
    pub values: BitArray,
    source: Source,
}

impl PreparedTerm {
    pub fn witness(&self, value: i128) -> Option<Witness> {
        if !self.values.get(value) {
            return None;
        }
        match &self.source {
            Source::Empty => None,
            Source::Single { var, preimage } => preimage.get(&value).map(|&x| Witness::single(*var, x)),
            Source::Group { vars, lists, prefixes } => {
                let (a, b) = self.term.numerator_window(value, value).ok()?;
                let last = prefixes.last()?;
                let k = (a..=b).find(|&k| last.get(k) && self.term.round(k) == Some(value))?;
                let mut xs = vec![0i128; vars.len()];
                let mut rem = k;
                for i in (0..vars.len()).rev() {
                    let found = if i == 0 {
                        lists[0].binary_search_by_key(&rem, |&(c, _)| c).ok().map(|j| lists[0][j])
                    } else {
                        lists[i].iter().copied().find(|&(c, _)| prefixes[i - 1].get(rem - c))
                    };
                    let (c, x) = found?;
                    xs[i] = x;
                    rem -= c;
                }
                Some(Witness::new(vars.iter().copied().zip(xs).collect()))
            }
        }
    }
}

/// Distinct values of `term` in `[lo, hi]`, ascending, each with a witness.
pub fn term_values(term: &TermSpec, lo: i128, hi: i128) -> Result<Vec<TermValue>> {
    term_values_with_budget(term, lo, hi, DEFAULT_NODE_BUDGET)
}

pub fn term_values_with_budget(term: &TermSpec, lo: i128, hi: i128, budget: u128) -> Result<Vec<TermValue>> {
    let prepared = term.prepare(lo, hi, budget)?;
    prepared
        .values
        .iter_ones()
        .map(|value| {
            let witness = prepared
                .witness(value)
                .ok_or_else(|| Error::invalid(format!("lost witness for term value {value}")))?;
            Ok(TermValue { value, witness })
        })
        .collect()
}
