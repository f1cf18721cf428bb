//! Cayley automatic representations: a regular language `L`, a bijection
//! `ψ: L → G` (decode) with inverse encode, and one synchronous two-tape
//! automaton per generator recognizing `{(ψ⁻¹(g), ψ⁻¹(g·a))}`.

mod baumslag_solitar;
mod heisenberg;
mod lamplighter;
mod reencode;

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::automata::{check_against_support, synchronize, AutomatonError, OracleCheckReport, SyncAutomaton, Transducer};
use crate::groups::{Group, GroupError};
use crate::words::{ConvolvedWord, Letter, Word, WordError};

pub use baumslag_solitar::BsRepresentation;
pub use heisenberg::H3Representation;
pub use lamplighter::LamplighterRepresentation;
pub use reencode::Reencoded;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepresentationError {
    #[error("{word:?} is not in the language (at letter {pos}): {reason}")]
    NotInLanguage { word: String, pos: usize, reason: String },
    #[error("{0} is not a multiplier generator of this representation")]
    UnsupportedGenerator(Letter),
    #[error("letter map is not usable: {0}")]
    BadLetterMap(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Word(#[from] WordError),
}

pub(crate) fn not_in_language(word: &Word, pos: usize, reason: impl Into<String>) -> RepresentationError {
    RepresentationError::NotInLanguage {
        word: word.to_string(),
        pos,
        reason: reason.into(),
    }
}

pub type Element<R> = <<R as Representation>::G as Group>::Element;

pub trait Representation: Send + Sync {
    type G: Group;

    fn group(&self) -> &Self::G;

    fn label(&self) -> String;

    /// Letters that occur in words of `L`, in letter order.
    fn alphabet(&self) -> Vec<Letter>;

    fn encode(&self, g: &Element<Self>) -> Word;

    /// `ψ`; fails exactly on words outside `L`.
    fn decode(&self, w: &Word) -> Result<Element<Self>, RepresentationError>;

    fn is_member(&self, w: &Word) -> bool {
        self.decode(w).is_ok()
    }

    /// `L^{≤n}` in shortlex order, produced by sweeping group elements.
    fn enumerate(&self, n: usize) -> Vec<Word>;

    /// The words of `L` of length exactly `len`, in shortlex order.
    fn enumerate_exact(&self, len: usize) -> Vec<Word> {
        self.enumerate(len).into_iter().filter(|w| w.len() == len).collect()
    }

    /// One-tape automaton recognizing `L`.
    fn language_automaton(&self) -> SyncAutomaton;

    /// The generating set `A` whose relations `R_a` are regular.
    fn multiplier_generators(&self) -> Vec<Letter>;

    fn multiplier(&self, generator: Letter) -> Result<SyncAutomaton, RepresentationError>;

    /// `ψ⁻¹(ψ(w)·a)` computed in the group; the semantic oracle for `R_a`.
    fn multiply_encoded(&self, w: &Word, generator: Letter) -> Result<Word, RepresentationError> {
        let g = self.decode(w)?;
        let h = self.group().act(&g, generator)?;
        Ok(self.encode(&h))
    }
}

pub(crate) fn sort_shortlex(words: &mut Vec<Word>) {
    words.sort_by(|a, b| a.shortlex_cmp(b));
    words.dedup();
}

/// Synchronizes a multiplier transducer and restricts both tapes to `L`.
pub(crate) fn compile_multiplier<T: Transducer>(
    transducer: &T,
    alphabet: &[Letter],
    max_lag: usize,
    language: &SyncAutomaton,
) -> Result<SyncAutomaton, RepresentationError> {
    let relation = synchronize(transducer, alphabet, max_lag);
    let tapes = vec![alphabet.to_vec(); 2];
    let on_input = language.lift_to_tape(0, tapes.clone())?;
    let on_output = language.lift_to_tape(1, tapes)?;
    Ok(relation.intersect(&on_input)?.intersect(&on_output)?.trim())
}

/// Copies its input; the multiplier for `e`.
pub(crate) struct Copy;

impl Transducer for Copy {
    type State = bool;

    fn initial(&self) -> bool {
        false
    }

    fn moves(&self, done: &bool, input: Option<Letter>) -> Vec<(bool, Vec<Letter>)> {
        match (done, input) {
            (false, Some(l)) => vec![(false, vec![l])],
            (false, None) => vec![(true, Vec::new())],
            _ => Vec::new(),
        }
    }

    fn is_final(&self, done: &bool) -> bool {
        *done
    }
}

/// Violations found by [`validate_representation`].
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub max_len: usize,
    pub words_checked: usize,
    /// Words of the sweep that fail to decode, or decode to an element whose
    /// encoding is a different word.
    pub round_trip_failures: Vec<Word>,
    /// Pairs of distinct words decoding to one element.
    pub collisions: Vec<(Word, Word)>,
    /// Words on which the sweep and the language automaton disagree.
    pub language_mismatches: Vec<Word>,
    pub multipliers: BTreeMap<Letter, OracleCheckReport>,
    pub multiplier_errors: Vec<(Letter, String)>,
}

impl ValidationReport {
    pub fn violations(&self) -> usize {
        self.round_trip_failures.len()
            + self.collisions.len()
            + self.language_mismatches.len()
            + self
                .multipliers
                .values()
                .map(|r| r.false_accepts.len() + r.false_rejects.len())
                .sum::<usize>()
            + self.multiplier_errors.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violations() == 0
    }
}

/// Exhaustive check of bijectivity and multiplier correctness on `L^{≤n}`.
pub fn validate_representation<R: Representation>(rep: &R, n: usize) -> ValidationReport {
    let words = rep.enumerate(n);
    let mut report = ValidationReport {
        max_len: n,
        words_checked: words.len(),
        ..Default::default()
    };
    let decoded: Vec<Option<Element<R>>> = words.par_iter().map(|w| rep.decode(w).ok()).collect();
    let mut seen: std::collections::HashMap<&Element<R>, &Word> = std::collections::HashMap::new();
    for (w, g) in words.iter().zip(&decoded) {
        match g {
            Some(g) if rep.encode(g) == *w => {
                if let Some(prev) = seen.insert(g, w) {
                    report.collisions.push((prev.clone(), w.clone()));
                }
            }
            _ => report.round_trip_failures.push(w.clone()),
        }
    }
    let swept: HashSet<&Word> = words.iter().collect();
    let accepted = accepted_words(&rep.language_automaton(), n);
    let accepted_set: HashSet<&Word> = accepted.iter().collect();
    report.language_mismatches.extend(accepted.iter().filter(|w| !swept.contains(w)).cloned());
    report
        .language_mismatches
        .extend(words.iter().filter(|w| !accepted_set.contains(w)).cloned());

    for generator in rep.multiplier_generators() {
        match rep.multiplier(generator) {
            Ok(automaton) => {
                let support: Vec<Vec<Word>> = words
                    .par_iter()
                    .filter_map(|w| rep.multiply_encoded(w, generator).ok().map(|v| vec![w.clone(), v]))
                    .collect();
                let oracle = |ws: &[Word]| rep.multiply_encoded(&ws[0], generator).is_ok_and(|v| v == ws[1]);
                let check = check_against_support(&automaton, oracle, &support, n);
                report.multipliers.insert(generator, check);
            }
            Err(e) => report.multiplier_errors.push((generator, e.to_string())),
        }
    }
    report
}

/// Convenience for tests and the CLI: does `R_a` accept the pair?
pub fn multiplier_accepts(automaton: &SyncAutomaton, input: &Word, output: &Word) -> bool {
    automaton.accepts_words(&[input.clone(), output.clone()]).unwrap_or(false)
}

/// Words accepted by a one-tape automaton, as words.
pub fn accepted_words(automaton: &SyncAutomaton, n: usize) -> Vec<Word> {
    automaton
        .enumerate_accepted(n)
        .iter()
        .map(ConvolvedWord::deconvolve)
        .map(|mut ws| ws.remove(0))
        .collect()
}
