//! Exceptional sets of regular diagonal ternary forms, stored as data.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::FormTriple;
use crate::error::{Error, Result};

/// One family of natural numbers missed by a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionFamily {
    /// `{modulus*l + residue : l in N}`.
    Residue { modulus: i128, residue: i128 },
    /// `{base^k (modulus*l + residue) : k, l in N}`.
    Scaled { base: i128, modulus: i128, residue: i128 },
}

impl ExceptionFamily {
    pub fn contains(&self, n: i128) -> bool {
        match *self {
            ExceptionFamily::Residue { modulus, residue } => n >= 0 && n % modulus == residue,
            ExceptionFamily::Scaled { base, modulus, residue } => {
                let mut m = n;
                while m > 0 {
                    if m % modulus == residue {
                        return true;
                    }
                    if m % base != 0 {
                        return false;
                    }
                    m /= base;
                }
                false
            }
        }
    }
}

impl fmt::Display for ExceptionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionFamily::Residue { modulus, residue } => write!(f, "{modulus}l+{residue}"),
            ExceptionFamily::Scaled { base, modulus, residue } => {
                write!(f, "{base}^k({modulus}l+{residue})")
            }
        }
    }
}

/// A finite union of [`ExceptionFamily`] members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub families: Vec<ExceptionFamily>,
}

impl ExceptionalSet {
    pub fn contains(&self, n: i128) -> bool {
        self.families.iter().any(|f| f.contains(n))
    }
}

impl fmt::Display for ExceptionalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.families.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

macro_rules! forms {
    ($( $id:ident = ($a:expr, $b:expr, $c:expr) : [$($fam:expr),* $(,)?] ;)*) => {
        /// The forms with a tabulated exceptional set.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum DicksonFormId { $($id),* }

        impl DicksonFormId {
            pub const ALL: &'static [DicksonFormId] = &[$(DicksonFormId::$id),*];

            pub fn triple(self) -> FormTriple {
                match self { $(DicksonFormId::$id => FormTriple { a: $a, b: $b, c: $c }),* }
            }

            pub fn exceptional_set(self) -> ExceptionalSet {
                match self { $(DicksonFormId::$id => ExceptionalSet { families: vec![$($fam),*] }),* }
            }
        }
    };
}

const fn r(modulus: i128, residue: i128) -> ExceptionFamily {
    ExceptionFamily::Residue { modulus, residue }
}

const fn s(base: i128, modulus: i128, residue: i128) -> ExceptionFamily {
    ExceptionFamily::Scaled { base, modulus, residue }
}

forms! {
    F111 = (1, 1, 1): [s(4, 8, 7)];
    F112 = (1, 1, 2): [s(4, 16, 14)];
    F113 = (1, 1, 3): [s(9, 9, 6)];
    F115 = (1, 1, 5): [s(4, 8, 3)];
    F116 = (1, 1, 6): [s(9, 9, 3)];
    F126 = (1, 2, 6): [s(4, 8, 5)];
    F133 = (1, 3, 3): [s(9, 3, 2)];
    F136 = (1, 3, 6): [r(3, 2), s(4, 16, 14)];
    F148 = (1, 4, 8): [r(4, 2), r(4, 3), s(4, 16, 14)];
    F1412 = (1, 4, 12): [r(4, 2), r(4, 3), s(9, 9, 6)];
    F1416 = (1, 4, 16): [r(4, 2), r(4, 3), r(16, 12), s(4, 8, 7)];
    F1424 = (1, 4, 24): [r(4, 2), r(4, 3), s(9, 9, 3)];
    F155 = (1, 5, 5): [r(5, 2), r(5, 3), s(4, 8, 7)];
    F1510 = (1, 5, 10): [s(25, 5, 2), s(25, 5, 3)];
    F169 = (1, 6, 9): [r(3, 2), s(9, 9, 3)];
    F1618 = (1, 6, 18): [r(3, 2), r(9, 3), s(4, 8, 5)];
    F1624 = (1, 6, 24): [r(8, 3), r(8, 5), r(32, 12), s(9, 3, 2)];
    F1840 = (1, 8, 40): [r(4, 2), r(4, 3), r(8, 5), r(32, 28), s(25, 25, 5), s(25, 25, 20)];
    F11030 = (1, 10, 30): [s(4, 8, 5), s(9, 9, 6), s(25, 5, 2), s(25, 5, 3)];
    F11212 = (1, 12, 12): [r(4, 2), r(4, 3), s(9, 3, 2)];
    F12121 = (1, 21, 21): [s(4, 8, 7), s(9, 3, 2), s(49, 7, 3), s(49, 7, 5), s(49, 7, 6)];
    F233 = (2, 3, 3): [s(9, 3, 1)];
}

impl DicksonFormId {
    /// Look up a form by its coefficients in any order.
    pub fn lookup(t: &FormTriple) -> Result<Self> {
        let key = t.sorted();
        DicksonFormId::ALL
            .iter()
            .copied()
            .find(|id| id.triple() == key)
            .ok_or_else(|| Error::UnknownForm(t.to_string()))
    }
}

/// Whether `n` lies in the tabulated exceptional set of `id`.
pub fn dickson_exceptional(id: DicksonFormId, n: i128) -> bool {
    id.exceptional_set().contains(n)
}

pub fn dickson_exceptional_for(t: &FormTriple, n: i128) -> Result<bool> {
    Ok(dickson_exceptional(DicksonFormId::lookup(t)?, n))
}
