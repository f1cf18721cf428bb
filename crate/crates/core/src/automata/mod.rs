//! Synchronous n-tape automata over padded tuple alphabets.
//!
//! An automaton reads a [`ConvolvedWord`] one tuple per step. Automata are
//! nondeterministic by default; [`SyncAutomaton::determinize`] runs the subset
//! construction on demand. States are dense integer ids and transitions are
//! stored grouped by source state, sorted by symbol code.

mod build;
mod json;
mod oracle;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::words::{ConvolvedWord, Letter, TupleSymbol, Word, WordError};

pub use build::{explore, synchronize, Transducer};
pub use json::AutomatonJson;
pub use oracle::{check_against_oracle, check_against_support, OracleCheckReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("tape count mismatch: expected {expected}, found {found}")]
    TapeMismatch { expected: usize, found: usize },
    #[error("symbol {0} is outside the automaton alphabet")]
    AlphabetMismatch(String),
    #[error("state {0} is out of range")]
    InvalidState(usize),
    #[error("transitions may not carry the all-padding symbol")]
    AllPaddingTransition,
    #[error("automaton needs at least one tape")]
    NoTapes,
    #[error("invalid automaton json: {0}")]
    Json(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncAutomaton {
    tapes: usize,
    /// Sorted, deduplicated alphabet of each tape.
    alphabet: Vec<Vec<Letter>>,
    initial: usize,
    accepting: Vec<bool>,
    /// `transitions[src]` holds `(symbol code, dst)` sorted.
    transitions: Vec<Vec<(u32, u32)>>,
}

/// Mixed-radix tuple codec; digit 0 is padding.
#[derive(Clone, Debug)]
struct SymbolCodec {
    alphabet: Vec<Vec<Letter>>,
    radix: Vec<u32>,
    count: u32,
}

impl SymbolCodec {
    fn new(alphabet: Vec<Vec<Letter>>) -> SymbolCodec {
        let mut radix = Vec::with_capacity(alphabet.len());
        let mut count = 1u32;
        for a in &alphabet {
            radix.push(count);
            count *= a.len() as u32 + 1;
        }
        SymbolCodec {
            alphabet,
            radix,
            count,
        }
    }

    fn encode(&self, symbol: &[Option<Letter>]) -> Option<u32> {
        if symbol.len() != self.alphabet.len() {
            return None;
        }
        let mut code = 0;
        for (tape, s) in symbol.iter().enumerate() {
            let digit = match s {
                None => 0,
                Some(l) => self.alphabet[tape].binary_search(l).ok()? as u32 + 1,
            };
            code += digit * self.radix[tape];
        }
        Some(code)
    }

    fn decode(&self, code: u32) -> TupleSymbol {
        self.alphabet
            .iter()
            .enumerate()
            .map(|(tape, a)| {
                let digit = (code / self.radix[tape]) % (a.len() as u32 + 1);
                if digit == 0 {
                    None
                } else {
                    Some(a[digit as usize - 1])
                }
            })
            .collect()
    }

    /// Every tuple symbol except the all-padding one, in tuple order.
    fn all_symbols(&self) -> Vec<(u32, TupleSymbol)> {
        let mut out: Vec<(u32, TupleSymbol)> = (1..self.count).map(|c| (c, self.decode(c))).collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

fn normalize_alphabet(letters: &[Letter]) -> Vec<Letter> {
    let set: BTreeSet<Letter> = letters.iter().copied().collect();
    set.into_iter().collect()
}

impl SyncAutomaton {
    pub fn new(
        alphabet: Vec<Vec<Letter>>,
        states: usize,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, TupleSymbol, usize)>,
    ) -> Result<SyncAutomaton, AutomatonError> {
        if alphabet.is_empty() {
            return Err(AutomatonError::NoTapes);
        }
        if initial >= states {
            return Err(AutomatonError::InvalidState(initial));
        }
        let alphabet: Vec<Vec<Letter>> = alphabet.iter().map(|a| normalize_alphabet(a)).collect();
        let codec = SymbolCodec::new(alphabet.clone());
        let mut acc = vec![false; states];
        for s in accepting {
            *acc.get_mut(s).ok_or(AutomatonError::InvalidState(s))? = true;
        }
        let mut trans = vec![Vec::new(); states];
        for (src, sym, dst) in transitions {
            if src >= states {
                return Err(AutomatonError::InvalidState(src));
            }
            if dst >= states {
                return Err(AutomatonError::InvalidState(dst));
            }
            if sym.len() != alphabet.len() {
                return Err(AutomatonError::TapeMismatch {
                    expected: alphabet.len(),
                    found: sym.len(),
                });
            }
            if sym.iter().all(Option::is_none) {
                return Err(AutomatonError::AllPaddingTransition);
            }
            let code = codec
                .encode(&sym)
                .ok_or_else(|| AutomatonError::AlphabetMismatch(crate::words::format_tuple(&sym)))?;
            trans[src].push((code, dst as u32));
        }
        for t in &mut trans {
            t.sort_unstable();
            t.dedup();
        }
        Ok(SyncAutomaton {
            tapes: alphabet.len(),
            alphabet,
            initial,
            accepting: acc,
            transitions: trans,
        })
    }

    fn from_parts(
        alphabet: Vec<Vec<Letter>>,
        initial: usize,
        accepting: Vec<bool>,
        mut transitions: Vec<Vec<(u32, u32)>>,
    ) -> SyncAutomaton {
        for t in &mut transitions {
            t.sort_unstable();
            t.dedup();
        }
        SyncAutomaton {
            tapes: alphabet.len(),
            alphabet,
            initial,
            accepting,
            transitions,
        }
    }

    /// One-state automaton accepting every well-formed tuple-word.
    pub fn universal(alphabet: Vec<Vec<Letter>>) -> SyncAutomaton {
        let alphabet: Vec<Vec<Letter>> = alphabet.iter().map(|a| normalize_alphabet(a)).collect();
        let codec = SymbolCodec::new(alphabet.clone());
        let trans = (1..codec.count).map(|c| (c, 0)).collect();
        SyncAutomaton::from_parts(alphabet, 0, vec![true], vec![trans])
    }

    /// Automaton with no accepting state.
    pub fn empty_language(alphabet: Vec<Vec<Letter>>) -> SyncAutomaton {
        let alphabet: Vec<Vec<Letter>> = alphabet.iter().map(|a| normalize_alphabet(a)).collect();
        SyncAutomaton::from_parts(alphabet, 0, vec![false], vec![Vec::new()])
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn alphabet(&self) -> &[Vec<Letter>] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i)
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    fn codec(&self) -> SymbolCodec {
        SymbolCodec::new(self.alphabet.clone())
    }

    /// All transitions as `(src, symbol, dst)`, grouped by source.
    pub fn transitions(&self) -> Vec<(usize, TupleSymbol, usize)> {
        let codec = self.codec();
        let mut out = Vec::with_capacity(self.num_transitions());
        for (src, ts) in self.transitions.iter().enumerate() {
            for &(code, dst) in ts {
                out.push((src, codec.decode(code), dst as usize));
            }
        }
        out
    }

    fn targets(&self, state: usize, code: u32) -> &[(u32, u32)] {
        let ts = &self.transitions[state];
        let lo = ts.partition_point(|&(c, _)| c < code);
        let hi = ts.partition_point(|&(c, _)| c <= code);
        &ts[lo..hi]
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions
            .iter()
            .all(|ts| ts.windows(2).all(|w| w[0].0 != w[1].0))
    }

    fn encode_word(&self, cw: &ConvolvedWord) -> Result<Vec<u32>, AutomatonError> {
        if cw.tapes() != self.tapes {
            return Err(AutomatonError::TapeMismatch {
                expected: self.tapes,
                found: cw.tapes(),
            });
        }
        let codec = self.codec();
        cw.symbols()
            .iter()
            .map(|s| {
                codec
                    .encode(s)
                    .ok_or_else(|| AutomatonError::AlphabetMismatch(crate::words::format_tuple(s)))
            })
            .collect()
    }

    pub fn accepts(&self, cw: &ConvolvedWord) -> Result<bool, AutomatonError> {
        let codes = self.encode_word(cw)?;
        Ok(self.run_codes(&codes))
    }

    /// Convolves `words` and runs the automaton.
    pub fn accepts_words(&self, words: &[Word]) -> Result<bool, AutomatonError> {
        self.accepts(&crate::words::convolve(words)?)
    }

    fn run_codes(&self, codes: &[u32]) -> bool {
        let n = self.num_states();
        let mut current = vec![self.initial];
        let mut seen = vec![usize::MAX; n];
        for (step, &code) in codes.iter().enumerate() {
            let mut next = Vec::new();
            for &s in &current {
                for &(_, d) in self.targets(s, code) {
                    let d = d as usize;
                    if seen[d] != step {
                        seen[d] = step;
                        next.push(d);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|&s| self.accepting[s])
    }

    /// Subset construction over reachable subsets; state 0 is initial.
    pub fn determinize(&self) -> SyncAutomaton {
        if self.is_deterministic() {
            return self.clone();
        }
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        let start = vec![self.initial as u32];
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut transitions: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let subset = subsets[i].clone();
            accepting.push(subset.iter().any(|&s| self.accepting[s as usize]));
            let mut by_code: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
            for &s in &subset {
                for &(code, d) in &self.transitions[s as usize] {
                    by_code.entry(code).or_default().insert(d);
                }
            }
            let mut out = Vec::with_capacity(by_code.len());
            for (code, dsts) in by_code {
                let key: Vec<u32> = dsts.into_iter().collect();
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(key.clone(), id);
                        subsets.push(key);
                        id
                    }
                };
                out.push((code, id as u32));
            }
            transitions.push(out);
            i += 1;
        }
        SyncAutomaton::from_parts(self.alphabet.clone(), 0, accepting, transitions)
    }

    /// Re-expresses this automaton over a larger per-tape alphabet.
    fn widen(&self, alphabet: &[Vec<Letter>]) -> SyncAutomaton {
        if alphabet == self.alphabet.as_slice() {
            return self.clone();
        }
        let old = self.codec();
        let new = SymbolCodec::new(alphabet.to_vec());
        let transitions = self
            .transitions
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|&(c, d)| (new.encode(&old.decode(c)).expect("superset alphabet"), d))
                    .collect()
            })
            .collect();
        SyncAutomaton::from_parts(alphabet.to_vec(), self.initial, self.accepting.clone(), transitions)
    }

    fn joint_alphabet(&self, other: &SyncAutomaton) -> Result<Vec<Vec<Letter>>, AutomatonError> {
        if self.tapes != other.tapes {
            return Err(AutomatonError::TapeMismatch {
                expected: self.tapes,
                found: other.tapes,
            });
        }
        Ok(self
            .alphabet
            .iter()
            .zip(&other.alphabet)
            .map(|(a, b)| normalize_alphabet(&[a.as_slice(), b.as_slice()].concat()))
            .collect())
    }

    /// Product automaton accepting the intersection of both languages.
    pub fn intersect(&self, other: &SyncAutomaton) -> Result<SyncAutomaton, AutomatonError> {
        let alphabet = self.joint_alphabet(other)?;
        let a = self.widen(&alphabet);
        let b = other.widen(&alphabet);
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs = vec![(a.initial as u32, b.initial as u32)];
        index.insert(pairs[0], 0);
        let mut transitions = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            accepting.push(a.accepting[p as usize] && b.accepting[q as usize]);
            let mut out = Vec::new();
            for &(code, pd) in &a.transitions[p as usize] {
                for &(_, qd) in b.targets(q as usize, code) {
                    let key = (pd, qd);
                    let id = *index.entry(key).or_insert_with(|| {
                        pairs.push(key);
                        pairs.len() - 1
                    });
                    out.push((code, id as u32));
                }
            }
            transitions.push(out);
            i += 1;
        }
        Ok(SyncAutomaton::from_parts(alphabet, 0, accepting, transitions))
    }

    /// Disjoint union with a fresh initial state.
    pub fn union(&self, other: &SyncAutomaton) -> Result<SyncAutomaton, AutomatonError> {
        let alphabet = self.joint_alphabet(other)?;
        let a = self.widen(&alphabet);
        let b = other.widen(&alphabet);
        let offset_a = 1u32;
        let offset_b = 1 + a.num_states() as u32;
        let mut transitions = vec![Vec::new()];
        let mut accepting = vec![a.accepting[a.initial] || b.accepting[b.initial]];
        for &(c, d) in &a.transitions[a.initial] {
            transitions[0].push((c, d + offset_a));
        }
        for &(c, d) in &b.transitions[b.initial] {
            transitions[0].push((c, d + offset_b));
        }
        for (m, off) in [(&a, offset_a), (&b, offset_b)] {
            for (s, ts) in m.transitions.iter().enumerate() {
                transitions.push(ts.iter().map(|&(c, d)| (c, d + off)).collect());
                accepting.push(m.accepting[s]);
            }
        }
        Ok(SyncAutomaton::from_parts(alphabet, 0, accepting, transitions))
    }

    /// Complement relative to the well-formed padded tuple-words over this
    /// automaton's alphabet.
    pub fn complement(&self) -> SyncAutomaton {
        let dfa = self.determinize();
        let codec = dfa.codec();
        let symbols = codec.all_symbols();
        // (dfa state or sink, mask of tapes already padded)
        let mut index: HashMap<(Option<u32>, u32), usize> = HashMap::new();
        let start = (Some(dfa.initial as u32), 0u32);
        let mut nodes = vec![start];
        index.insert(start, 0);
        let mut transitions = Vec::new();
        let mut accepting = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let (state, mask) = nodes[i];
            accepting.push(match state {
                None => true,
                Some(s) => !dfa.accepting[s as usize],
            });
            let mut out = Vec::new();
            for (code, sym) in &symbols {
                let Some(next_mask) = padded_mask_step(mask, sym) else {
                    continue;
                };
                let next_state = state.and_then(|s| dfa.targets(s as usize, *code).first().map(|&(_, d)| d));
                let key = (next_state, next_mask);
                let id = *index.entry(key).or_insert_with(|| {
                    nodes.push(key);
                    nodes.len() - 1
                });
                out.push((*code, id as u32));
            }
            transitions.push(out);
            i += 1;
        }
        SyncAutomaton::from_parts(dfa.alphabet.clone(), 0, accepting, transitions)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for &(_, d) in &self.transitions[s] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    queue.push_back(d as usize);
                }
            }
        }
        seen
    }

    /// Distance (in symbols) from each state to the nearest accepting state.
    fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let n = self.num_states();
        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (s, ts) in self.transitions.iter().enumerate() {
            for &(_, d) in ts {
                reverse[d as usize].push(s);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for s in self.accepting_states() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            let ds = dist[s].unwrap();
            for &p in &reverse[s] {
                if dist[p].is_none() {
                    dist[p] = Some(ds + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !self.accepting_states().any(|s| reach[s])
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> SyncAutomaton {
        let reach = self.reachable();
        let live = self.distance_to_accept();
        let keep: Vec<bool> = (0..self.num_states())
            .map(|s| s == self.initial || (reach[s] && live[s].is_some()))
            .collect();
        let mut remap = vec![u32::MAX; self.num_states()];
        let mut next = 0u32;
        // initial first so it gets id 0
        let order = std::iter::once(self.initial).chain((0..self.num_states()).filter(|&s| s != self.initial));
        for s in order {
            if keep[s] {
                remap[s] = next;
                next += 1;
            }
        }
        let mut transitions = vec![Vec::new(); next as usize];
        let mut accepting = vec![false; next as usize];
        for s in 0..self.num_states() {
            if !keep[s] {
                continue;
            }
            let ns = remap[s] as usize;
            accepting[ns] = self.accepting[s];
            transitions[ns] = self.transitions[s]
                .iter()
                .filter(|&&(_, d)| keep[d as usize] && live[d as usize].is_some())
                .map(|&(c, d)| (c, remap[d as usize]))
                .collect();
        }
        SyncAutomaton::from_parts(self.alphabet.clone(), 0, accepting, transitions)
    }

    /// Accepted well-formed tuple-words of length at most `max_len`,
    /// ordered by length, then lexicographically (padding before letters).
    pub fn enumerate_accepted(&self, max_len: usize) -> Vec<ConvolvedWord> {
        let dfa = self.determinize();
        let dist = dfa.distance_to_accept();
        let codec = dfa.codec();
        let mut out = Vec::new();
        let mut path: Vec<TupleSymbol> = Vec::new();
        dfa.enumerate_from(dfa.initial, 0, max_len, &dist, &codec, &mut path, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.symbols().cmp(b.symbols())));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_from(
        &self,
        state: usize,
        mask: u32,
        max_len: usize,
        dist: &[Option<usize>],
        codec: &SymbolCodec,
        path: &mut Vec<TupleSymbol>,
        out: &mut Vec<ConvolvedWord>,
    ) {
        if self.accepting[state] {
            out.push(ConvolvedWord::new(self.tapes, path.clone()).expect("well-formed by construction"));
        }
        if path.len() == max_len {
            return;
        }
        for &(code, d) in &self.transitions[state] {
            let d = d as usize;
            match dist[d] {
                Some(k) if path.len() + 1 + k <= max_len => {}
                _ => continue,
            }
            let sym = codec.decode(code);
            let Some(next_mask) = padded_mask_step(mask, &sym) else {
                continue;
            };
            path.push(sym);
            self.enumerate_from(d, next_mask, max_len, dist, codec, path, out);
            path.pop();
        }
    }

    /// Embeds a one-tape automaton as a constraint on `tape` of a
    /// `alphabet.len()`-tape automaton; other tapes are unconstrained.
    pub fn lift_to_tape(&self, tape: usize, alphabet: Vec<Vec<Letter>>) -> Result<SyncAutomaton, AutomatonError> {
        if self.tapes != 1 {
            return Err(AutomatonError::TapeMismatch {
                expected: 1,
                found: self.tapes,
            });
        }
        let alphabet: Vec<Vec<Letter>> = alphabet.iter().map(|a| normalize_alphabet(a)).collect();
        let own = self.codec();
        let automaton = self;
        Ok(explore(
            alphabet,
            (automaton.initial, false),
            |&(s, ended): &(usize, bool), sym: &[Option<Letter>]| match sym[tape] {
                None => vec![(s, true)],
                Some(_) if ended => Vec::new(),
                Some(l) => match own.encode(&[Some(l)]) {
                    Some(code) => automaton
                        .targets(s, code)
                        .iter()
                        .map(|&(_, d)| (d as usize, false))
                        .collect(),
                    None => Vec::new(),
                },
            },
            |&(s, _)| automaton.accepting[s],
        ))
    }

    /// Replaces every letter on every tape by its image under `map`,
    /// expanding each transition into a chain of `map.image_len()` steps.
    pub fn substitute(&self, map: &crate::words::LetterMap) -> Result<SyncAutomaton, AutomatonError> {
        let len = map.image_len();
        if len == 0 {
            return Err(AutomatonError::AlphabetMismatch("empty letter images".into()));
        }
        let codec = self.codec();
        let mut alphabet: Vec<Vec<Letter>> = Vec::with_capacity(self.tapes);
        for tape_letters in &self.alphabet {
            let mut letters = Vec::new();
            for l in tape_letters {
                let image = map.image(l).ok_or(WordError::MissingKey(*l))?;
                letters.extend_from_slice(image);
            }
            alphabet.push(normalize_alphabet(&letters));
        }
        let mut states = self.num_states();
        let mut accepting = self.accepting.clone();
        let mut triples = Vec::new();
        for (src, ts) in self.transitions.iter().enumerate() {
            for &(code, dst) in ts {
                let sym = codec.decode(code);
                let images: Vec<Option<&Word>> = sym.iter().map(|s| s.map(|l| map.image(&l).expect("checked"))).collect();
                let mut prev = src;
                for k in 0..len {
                    let step: TupleSymbol = images.iter().map(|img| img.map(|w| w[k])).collect();
                    let next = if k + 1 == len {
                        dst as usize
                    } else {
                        states += 1;
                        accepting.push(false);
                        states - 1
                    };
                    triples.push((prev, step, next));
                    prev = next;
                }
            }
        }
        SyncAutomaton::new(
            alphabet,
            states,
            self.initial,
            accepting.iter().enumerate().filter(|(_, &a)| a).map(|(i, _)| i),
            triples,
        )
    }
}

/// Updates the set of padded tapes; `None` if the symbol breaks
/// well-formedness (letter after padding, or all padding).
pub(crate) fn padded_mask_step(mask: u32, sym: &[Option<Letter>]) -> Option<u32> {
    let mut next = mask;
    let mut any_letter = false;
    for (tape, s) in sym.iter().enumerate() {
        match s {
            None => next |= 1 << tape,
            Some(_) if mask & (1 << tape) != 0 => return None,
            Some(_) => any_letter = true,
        }
    }
    any_letter.then_some(next)
}

/// All words over `alphabet` of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let alphabet = normalize_alphabet(alphabet);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &l in &alphabet {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::convolve;

    fn ab() -> Vec<Letter> {
        vec![Letter::A, Letter::T]
    }

    /// One tape: words over {a, t} containing an even number of `a`.
    fn even_a() -> SyncAutomaton {
        SyncAutomaton::new(
            vec![ab()],
            2,
            0,
            [0],
            [
                (0, vec![Some(Letter::A)], 1),
                (1, vec![Some(Letter::A)], 0),
                (0, vec![Some(Letter::T)], 0),
                (1, vec![Some(Letter::T)], 1),
            ],
        )
        .unwrap()
    }

    /// One tape, nondeterministic: words ending in `t a`.
    fn ends_ta() -> SyncAutomaton {
        SyncAutomaton::new(
            vec![ab()],
            3,
            0,
            [2],
            [
                (0, vec![Some(Letter::A)], 0),
                (0, vec![Some(Letter::T)], 0),
                (0, vec![Some(Letter::T)], 1),
                (1, vec![Some(Letter::A)], 2),
            ],
        )
        .unwrap()
    }

    fn a_star() -> SyncAutomaton {
        SyncAutomaton::new(vec![vec![Letter::A]], 1, 0, [0], [(0, vec![Some(Letter::A)], 0)]).unwrap()
    }

    fn lang(a: &SyncAutomaton, n: usize) -> BTreeSet<Word> {
        words_up_to(&ab(), n)
            .into_iter()
            .filter(|w| a.accepts_words(std::slice::from_ref(w)).unwrap())
            .collect()
    }

    #[test]
    fn universal_accepts_everything() {
        let u = SyncAutomaton::universal(vec![ab(), ab()]);
        for w in words_up_to(&ab(), 3) {
            assert!(u.accepts_words(&[w.clone(), Word::power(Letter::A, 2)]).unwrap());
        }
    }

    #[test]
    fn rejects_all_padding_and_bad_states() {
        let err = SyncAutomaton::new(vec![ab(), ab()], 1, 0, [0], [(0, vec![None, None], 0)]);
        assert_eq!(err, Err(AutomatonError::AllPaddingTransition));
        let err = SyncAutomaton::new(vec![ab()], 1, 0, [3], []);
        assert_eq!(err, Err(AutomatonError::InvalidState(3)));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let w: Word = "s".parse().unwrap();
        assert!(matches!(
            even_a().accepts_words(&[w]),
            Err(AutomatonError::AlphabetMismatch(_))
        ));
        let cw = convolve(&[Word::empty(), Word::empty()]).unwrap();
        assert!(matches!(even_a().accepts(&cw), Err(AutomatonError::TapeMismatch { .. })));
    }

    #[test]
    fn determinize_preserves_membership() {
        for a in [even_a(), ends_ta()] {
            let d = a.determinize();
            assert!(d.is_deterministic());
            assert_eq!(lang(&a, 8), lang(&d, 8));
        }
    }

    #[test]
    fn complement_laws() {
        for a in [even_a(), ends_ta()] {
            assert!(a.intersect(&a.complement()).unwrap().is_empty());
            let all: BTreeSet<Word> = words_up_to(&ab(), 8).into_iter().collect();
            let expected: BTreeSet<Word> = all.difference(&lang(&a, 8)).cloned().collect();
            assert_eq!(lang(&a.complement(), 8), expected);
        }
    }

    #[test]
    fn de_morgan_exhaustive() {
        let (a, b) = (even_a(), ends_ta());
        let left = a.union(&b).unwrap().complement();
        let right = a.complement().intersect(&b.complement()).unwrap();
        assert_eq!(lang(&left, 8), lang(&right, 8));
        let left = a.intersect(&b).unwrap().complement();
        let right = a.complement().union(&b.complement()).unwrap();
        assert_eq!(lang(&left, 8), lang(&right, 8));
    }

    #[test]
    fn intersect_with_universal_is_identity() {
        let u = SyncAutomaton::universal(vec![ab()]);
        for a in [even_a(), ends_ta()] {
            assert_eq!(lang(&u.intersect(&a).unwrap(), 8), lang(&a, 8));
        }
    }

    #[test]
    fn enumerate_a_star() {
        let words: Vec<Vec<Word>> = a_star().enumerate_accepted(2).iter().map(|c| c.deconvolve()).collect();
        assert_eq!(words.len(), 3);
        assert_eq!(words[2][0].to_string(), "aa");
        assert!(SyncAutomaton::empty_language(vec![ab()]).enumerate_accepted(5).is_empty());
    }

    #[test]
    fn enumeration_is_well_formed_and_nested() {
        let u = SyncAutomaton::universal(vec![ab(), vec![Letter::A]]);
        let mut prev: BTreeSet<ConvolvedWord> = BTreeSet::new();
        for n in 0..5 {
            let cur: BTreeSet<ConvolvedWord> = u.enumerate_accepted(n).into_iter().collect();
            assert!(prev.is_subset(&cur));
            for cw in &cur {
                assert!(ConvolvedWord::new(2, cw.symbols().to_vec()).is_ok());
            }
            prev = cur;
        }
        // pairs (u, a^j) with |u| <= 4 and j <= 4
        assert_eq!(prev.len(), (1 + 2 + 4 + 8 + 16) * 5);
    }

    #[test]
    fn lift_constrains_only_its_tape() {
        let lifted = even_a().lift_to_tape(1, vec![ab(), ab()]).unwrap();
        let aa = Word::power(Letter::A, 2);
        let a = Word::power(Letter::A, 1);
        assert!(lifted.accepts_words(&[a.clone(), aa.clone()]).unwrap());
        assert!(!lifted.accepts_words(&[aa, a]).unwrap());
    }

    #[test]
    fn trim_keeps_language() {
        let a = ends_ta().union(&SyncAutomaton::empty_language(vec![ab()])).unwrap();
        let t = a.trim();
        assert!(t.num_states() <= a.num_states());
        assert_eq!(lang(&a, 6), lang(&t, 6));
    }
}
