//! Materializing automata from step functions over finite state types.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use super::{normalize_alphabet, SymbolCodec, SyncAutomaton};
use crate::words::Letter;

/// Breadth-first materialization of the automaton whose states are the
/// values of `S` reachable from `initial` under `step`.
///
/// `step` is called once per (state, tuple symbol) pair, for every symbol
/// except the all-padding one, and returns the successor states. The state
/// type must have finitely many reachable values.
pub fn explore<S, F, G>(alphabet: Vec<Vec<Letter>>, initial: S, mut step: F, mut accepting: G) -> SyncAutomaton
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, &[Option<Letter>]) -> Vec<S>,
    G: FnMut(&S) -> bool,
{
    let alphabet: Vec<Vec<Letter>> = alphabet.iter().map(|a| normalize_alphabet(a)).collect();
    let codec = SymbolCodec::new(alphabet.clone());
    let symbols = codec.all_symbols();
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states = vec![initial.clone()];
    index.insert(initial, 0);
    let mut transitions = Vec::new();
    let mut acc = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let s = states[i].clone();
        acc.push(accepting(&s));
        let mut out = Vec::new();
        for (code, sym) in &symbols {
            for next in step(&s, sym) {
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(next.clone(), id);
                        states.push(next);
                        id
                    }
                };
                out.push((*code, id as u32));
            }
        }
        transitions.push(out);
        i += 1;
    }
    SyncAutomaton::from_parts(alphabet, 0, acc, transitions)
}

/// A one-way nondeterministic transducer: reads letters, writes words.
pub trait Transducer {
    type State: Clone + Eq + Hash;

    fn initial(&self) -> Self::State;

    /// Moves from `state` that consume `input`, or consume nothing when
    /// `input` is `None`. Each move yields the next state and the letters
    /// written.
    fn moves(&self, state: &Self::State, input: Option<Letter>) -> Vec<(Self::State, Vec<Letter>)>;

    fn is_final(&self, state: &Self::State) -> bool;
}

/// Letters written but not yet seen on the output tape (`ahead`), or seen on
/// the output tape but not yet written (`!ahead`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Pending {
    ahead: bool,
    letters: Vec<Letter>,
}

impl Pending {
    fn balanced() -> Pending {
        Pending {
            ahead: true,
            letters: Vec::new(),
        }
    }

    fn write(&self, out: &[Letter]) -> Option<Pending> {
        if self.ahead || self.letters.is_empty() {
            let mut letters = self.letters.clone();
            letters.extend_from_slice(out);
            return Some(Pending { ahead: true, letters });
        }
        let common = self.letters.len().min(out.len());
        if self.letters[..common] != out[..common] {
            return None;
        }
        Some(if out.len() >= self.letters.len() {
            Pending {
                ahead: true,
                letters: out[common..].to_vec(),
            }
        } else {
            Pending {
                ahead: false,
                letters: self.letters[common..].to_vec(),
            }
        })
    }

    fn see(&self, y: Letter) -> Option<Pending> {
        if self.ahead && !self.letters.is_empty() {
            (self.letters[0] == y).then(|| Pending {
                ahead: true,
                letters: self.letters[1..].to_vec(),
            })
        } else {
            let mut letters = self.letters.clone();
            letters.push(y);
            Some(Pending { ahead: false, letters })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Config<S> {
    state: S,
    pending: Pending,
    input_done: bool,
    output_done: bool,
}

/// Two-tape synchronous automaton for the relation computed by `t`,
/// tape 0 carrying the input and tape 1 the output.
///
/// The transducer consumes input in lockstep with tape 0; its output may run
/// ahead of or behind tape 1 by at most `max_lag` letters. Pairs that need a
/// larger lag are not accepted.
pub fn synchronize<T: Transducer>(t: &T, alphabet: &[Letter], max_lag: usize) -> SyncAutomaton {
    let start = Config {
        state: t.initial(),
        pending: Pending::balanced(),
        input_done: false,
        output_done: false,
    };
    let mut accept_cache: HashMap<(T::State, Vec<Letter>), bool> = HashMap::new();
    let mut owed_cache: HashMap<(T::State, Vec<Letter>, bool), bool> = HashMap::new();
    let automaton = explore(
        vec![alphabet.to_vec(), alphabet.to_vec()],
        start,
        |c: &Config<T::State>, sym| {
            let mut next = sync_step(t, c, sym, max_lag);
            // drop configurations holding output letters the transducer can never write
            next.retain(|c| {
                if c.pending.ahead || c.pending.letters.is_empty() {
                    return true;
                }
                let key = (c.state.clone(), c.pending.letters.clone(), c.input_done);
                *owed_cache
                    .entry(key)
                    .or_insert_with(|| can_write(t, &c.state, &c.pending.letters, alphabet, !c.input_done))
            });
            next
        },
        |c| {
            if c.pending.ahead && !c.pending.letters.is_empty() {
                return false;
            }
            let key = (c.state.clone(), c.pending.letters.clone());
            if let Some(&hit) = accept_cache.get(&key) {
                return hit;
            }
            let hit = can_finish(t, &c.state, &c.pending.letters);
            accept_cache.insert(key, hit);
            hit
        },
    );
    automaton.trim()
}

fn epsilon_closure<T: Transducer>(t: &T, state: &T::State, pending: &Pending, limit: usize) -> Vec<(T::State, Pending)> {
    let mut seen: HashSet<(T::State, Pending)> = HashSet::new();
    let mut queue = VecDeque::from([(state.clone(), pending.clone())]);
    seen.insert((state.clone(), pending.clone()));
    while let Some((s, p)) = queue.pop_front() {
        for (next, out) in t.moves(&s, None) {
            let Some(np) = p.write(&out) else { continue };
            if np.letters.len() > limit {
                continue;
            }
            let key = (next, np);
            if seen.insert(key.clone()) {
                queue.push_back(key);
            }
        }
    }
    seen.into_iter().collect()
}

fn sync_step<T: Transducer>(t: &T, c: &Config<T::State>, sym: &[Option<Letter>], max_lag: usize) -> Vec<Config<T::State>> {
    let (x, y) = (sym[0], sym[1]);
    if (c.input_done && x.is_some()) || (c.output_done && y.is_some()) {
        return Vec::new();
    }
    let input_done = c.input_done || x.is_none();
    let output_done = c.output_done || y.is_none();
    let limit = max_lag + 1;
    let before = epsilon_closure(t, &c.state, &c.pending, limit);
    let mut after_input = Vec::new();
    match x {
        Some(x) => {
            for (s, p) in &before {
                for (next, out) in t.moves(s, Some(x)) {
                    if let Some(np) = p.write(&out) {
                        if np.letters.len() <= limit {
                            after_input.push((next, np));
                        }
                    }
                }
            }
        }
        None => after_input = before,
    }
    let mut out = Vec::new();
    for (s, p) in after_input {
        let p = match y {
            Some(y) => match p.see(y) {
                Some(p) => p,
                None => continue,
            },
            None => p,
        };
        if p.letters.len() > max_lag {
            continue;
        }
        if output_done && p.ahead && !p.letters.is_empty() {
            continue;
        }
        let cfg = Config {
            state: s,
            pending: p,
            input_done,
            output_done,
        };
        if !out.contains(&cfg) {
            out.push(cfg);
        }
    }
    out
}

/// Whether some run from `state`, reading input only if `more_input`, can
/// write a word starting with `owed`.
fn can_write<T: Transducer>(t: &T, state: &T::State, owed: &[Letter], alphabet: &[Letter], more_input: bool) -> bool {
    let inputs: Vec<Option<Letter>> = std::iter::once(None)
        .chain(alphabet.iter().copied().map(Some).filter(|_| more_input))
        .collect();
    let mut seen: HashSet<(T::State, usize)> = HashSet::new();
    let mut queue = VecDeque::from([(state.clone(), 0usize)]);
    seen.insert((state.clone(), 0));
    while let Some((s, done)) = queue.pop_front() {
        for &x in &inputs {
            for (next, out) in t.moves(&s, x) {
                let rest = &owed[done..];
                let n = rest.len().min(out.len());
                if rest[..n] != out[..n] {
                    continue;
                }
                if done + n == owed.len() {
                    return true;
                }
                if seen.insert((next.clone(), done + n)) {
                    queue.push_back((next, done + n));
                }
            }
        }
    }
    false
}

/// Whether epsilon moves from `state` can write exactly `owed` and stop in a
/// final state.
fn can_finish<T: Transducer>(t: &T, state: &T::State, owed: &[Letter]) -> bool {
    let mut seen: HashSet<(T::State, usize)> = HashSet::new();
    let mut queue = VecDeque::from([(state.clone(), 0usize)]);
    seen.insert((state.clone(), 0));
    while let Some((s, done)) = queue.pop_front() {
        if done == owed.len() && t.is_final(&s) {
            return true;
        }
        for (next, out) in t.moves(&s, None) {
            let end = done + out.len();
            if end <= owed.len() && owed[done..end] == out[..] && seen.insert((next.clone(), end)) {
                queue.push_back((next, end));
            }
        }
    }
    false
}
