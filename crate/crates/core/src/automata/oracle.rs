//! Bounded-exhaustive comparison of an automaton against a semantic oracle.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{words_up_to, SyncAutomaton};
use crate::words::{convolve, ConvolvedWord, Word};

/// Outcome of comparing an automaton with an oracle over every tuple-word of
/// length at most `max_len`. Witness lists are in enumeration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleCheckReport {
    pub max_len: usize,
    /// Tuple-words accepted by both the automaton and the oracle.
    pub accepted_correct: usize,
    pub false_accepts: Vec<ConvolvedWord>,
    pub false_rejects: Vec<ConvolvedWord>,
}

impl OracleCheckReport {
    pub fn is_clean(&self) -> bool {
        self.false_accepts.is_empty() && self.false_rejects.is_empty()
    }

    fn sort(&mut self) {
        let key = |a: &ConvolvedWord, b: &ConvolvedWord| a.len().cmp(&b.len()).then_with(|| a.symbols().cmp(b.symbols()));
        self.false_accepts.sort_by(key);
        self.false_rejects.sort_by(key);
    }
}

/// Brute force: runs the automaton and the oracle on every tuple of words
/// over the automaton's per-tape alphabets with lengths at most `max_len`.
///
/// Cost grows as the product of the per-tape word counts; intended for small
/// alphabets and lengths.
pub fn check_against_oracle<F>(automaton: &SyncAutomaton, oracle: F, max_len: usize) -> OracleCheckReport
where
    F: Fn(&[Word]) -> bool + Sync,
{
    let dfa = automaton.determinize();
    let per_tape: Vec<Vec<Word>> = dfa.alphabet().iter().map(|a| words_up_to(a, max_len)).collect();
    let first = &per_tape[0];
    let rest = &per_tape[1..];
    let partial: Vec<(usize, Vec<ConvolvedWord>, Vec<ConvolvedWord>)> = first
        .par_iter()
        .map(|w0| {
            let mut correct = 0;
            let mut fa = Vec::new();
            let mut fr = Vec::new();
            let mut tuple = vec![w0.clone()];
            visit_tuples(rest, &mut tuple, &mut |words| {
                let cw = convolve(words).expect("non-empty");
                let got = dfa.accepts(&cw).expect("alphabet matches");
                let want = oracle(words);
                match (got, want) {
                    (true, false) => fa.push(cw),
                    (false, true) => fr.push(cw),
                    (true, true) => correct += 1,
                    (false, false) => {}
                }
            });
            (correct, fa, fr)
        })
        .collect();
    let mut report = OracleCheckReport {
        max_len,
        ..Default::default()
    };
    for (c, fa, fr) in partial {
        report.accepted_correct += c;
        report.false_accepts.extend(fa);
        report.false_rejects.extend(fr);
    }
    report.sort();
    report
}

fn visit_tuples(rest: &[Vec<Word>], tuple: &mut Vec<Word>, f: &mut impl FnMut(&[Word])) {
    match rest.split_first() {
        None => f(tuple),
        Some((words, tail)) => {
            for w in words {
                tuple.push(w.clone());
                visit_tuples(tail, tuple, f);
                tuple.pop();
            }
        }
    }
}

/// Same verdict as [`check_against_oracle`] when `support` lists exactly the
/// tuples (all components of length at most `max_len`) on which `oracle`
/// holds: false rejects are searched in `support`, false accepts among the
/// automaton's accepted tuple-words. Scales with the languages rather than
/// with all tuples over the alphabet.
pub fn check_against_support<F>(
    automaton: &SyncAutomaton,
    oracle: F,
    support: &[Vec<Word>],
    max_len: usize,
) -> OracleCheckReport
where
    F: Fn(&[Word]) -> bool + Sync,
{
    let dfa = automaton.determinize();
    let mut report = OracleCheckReport {
        max_len,
        ..Default::default()
    };
    let in_range: Vec<&Vec<Word>> = support.iter().filter(|t| t.iter().all(|w| w.len() <= max_len)).collect();
    let verdicts: Vec<(ConvolvedWord, bool)> = in_range
        .par_iter()
        .map(|t| {
            let cw = convolve(t).expect("non-empty");
            let ok = dfa.accepts(&cw).unwrap_or(false);
            (cw, ok)
        })
        .collect();
    let mut supported: BTreeSet<ConvolvedWord> = BTreeSet::new();
    for (cw, ok) in verdicts {
        if ok {
            report.accepted_correct += 1;
        } else {
            report.false_rejects.push(cw.clone());
        }
        supported.insert(cw);
    }
    let accepted = dfa.enumerate_accepted(max_len);
    report.false_accepts = accepted
        .into_par_iter()
        .filter(|cw| !supported.contains(cw) && !oracle(&cw.deconvolve()))
        .collect();
    report.sort();
    report
}
