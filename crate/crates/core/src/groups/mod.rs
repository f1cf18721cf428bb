//! Exact arithmetic in the lamplighter group, `BS(p, q)` and the Heisenberg
//! group, each with a canonical element form so that equality of elements is
//! equality of values.

mod baumslag_solitar;
mod heisenberg;
mod lamplighter;

use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::words::{Letter, Word};

pub use baumslag_solitar::{BaumslagSolitar, BsNormalForm, HnnLetter, TSign};
pub use heisenberg::{Heisenberg, HeisenbergTriple};
pub use lamplighter::{Lamplighter, LamplighterElement, RfParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("letter {letter} is not a generator of {group}")]
    ForeignLetter { letter: Letter, group: String },
    #[error("BS(p, q) needs 1 <= p < q, got p = {p}, q = {q}")]
    BadParameters { p: u32, q: u32 },
    #[error("elements of BS({0}, {1}) and BS({2}, {3}) cannot be combined")]
    ParameterMismatch(u32, u32, u32, u32),
    #[error("bad element literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// A finitely generated group with a canonical element representation.
pub trait Group: Send + Sync {
    type Element: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;

    fn identity(&self) -> Self::Element;

    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;

    fn inverse(&self, g: &Self::Element) -> Self::Element;

    /// Right multiplication by the group element a letter names.
    fn act(&self, g: &Self::Element, letter: Letter) -> Result<Self::Element, GroupError>;

    /// Generating set of the word metric, without `e` and without inverses.
    fn metric_generators(&self) -> Vec<Letter>;

    fn parse_element(&self, literal: &str) -> Result<Self::Element, GroupError>;

    fn format_element(&self, g: &Self::Element) -> String;

    /// The natural evaluation `π`: left-to-right product of the letters.
    fn evaluate(&self, w: &Word) -> Result<Self::Element, GroupError> {
        let mut g = self.identity();
        for &l in w.iter() {
            g = self.act(&g, l)?;
        }
        Ok(g)
    }

    /// `g1^-1 g2`, whose word length is the distance between `g1` and `g2`.
    fn difference(&self, g1: &Self::Element, g2: &Self::Element) -> Self::Element {
        self.multiply(&self.inverse(g1), g2)
    }
}

fn foreign(letter: Letter, group: &impl Group) -> GroupError {
    GroupError::ForeignLetter {
        letter,
        group: group.name(),
    }
}

/// Splits `k1=v1<sep>k2=v2...` into pairs.
fn literal_fields<'a>(literal: &'a str, sep: char) -> Result<Vec<(&'a str, &'a str)>, GroupError> {
    literal
        .split(sep)
        .filter(|f| !f.trim().is_empty())
        .map(|f| {
            f.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad_literal(literal, format!("field {f:?} lacks `=`")))
        })
        .collect()
}

fn bad_literal(literal: &str, reason: impl Into<String>) -> GroupError {
    GroupError::BadLiteral {
        literal: literal.to_string(),
        reason: reason.into(),
    }
}
