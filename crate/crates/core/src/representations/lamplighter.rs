//! `w = u v`: `u` walks the nonnegative lamps left to right over `{a, t}`,
//! `v` walks the negative lamps right to left over `{a, t⁻¹}`. At each visited
//! position `a` marks a lit lamp, `aa` the lamplighter on an unlit lamp and
//! `aaa` the lamplighter on a lit lamp.

use std::sync::OnceLock;

use super::{compile_multiplier, not_in_language, sort_shortlex, Representation, RepresentationError};
use crate::automata::{explore, SyncAutomaton, Transducer};
use crate::groups::{Lamplighter, LamplighterElement};
use crate::words::{Letter, Word};

const A: Letter = Letter::A;
const T: Letter = Letter::T;

fn t_inv() -> Letter {
    Letter::T.inverse()
}

#[derive(Debug, Default)]
pub struct LamplighterRepresentation {
    group: Lamplighter,
    language: OnceLock<SyncAutomaton>,
}

impl LamplighterRepresentation {
    pub fn new() -> LamplighterRepresentation {
        LamplighterRepresentation::default()
    }
}

/// Block written at a visited position: number of `a` letters.
fn block_len(g: &LamplighterElement, pos: i64) -> usize {
    match (g.marker == pos, g.lit.contains(&pos)) {
        (true, true) => 3,
        (true, false) => 2,
        (false, true) => 1,
        (false, false) => 0,
    }
}

pub fn encode_lamplighter(g: &LamplighterElement) -> Word {
    let mut out = Vec::new();
    let right = g.lit.iter().copied().filter(|&x| x >= 0).chain((g.marker >= 0).then_some(g.marker)).max();
    if let Some(end) = right {
        for pos in 0..=end {
            if pos > 0 {
                out.push(T);
            }
            out.extend(std::iter::repeat(A).take(block_len(g, pos)));
        }
    }
    let left = g.lit.iter().copied().filter(|&x| x < 0).chain((g.marker < 0).then_some(g.marker)).min();
    if let Some(end) = left {
        for pos in (end..0).rev() {
            out.push(t_inv());
            out.extend(std::iter::repeat(A).take(block_len(g, pos)));
        }
    }
    Word::new(out)
}

pub fn decode_lamplighter(w: &Word) -> Result<LamplighterElement, RepresentationError> {
    let mut g = LamplighterElement::default();
    let mut marker = None;
    let mut pos = 0i64;
    let mut in_v = false;
    let mut run = 0usize;
    let mut close_run = |pos: i64, run: usize, at: usize| -> Result<(), RepresentationError> {
        if run >= 2 {
            if marker.is_some() {
                return Err(not_in_language(w, at, "second lamplighter block"));
            }
            marker = Some(pos);
        }
        match run {
            0 | 2 => {}
            1 | 3 => {
                g.lit.insert(pos);
            }
            _ => return Err(not_in_language(w, at, "a-block longer than aaa")),
        }
        Ok(())
    };
    for (i, l) in w.iter().enumerate() {
        if *l == A {
            run += 1;
            continue;
        }
        close_run(pos, run, i)?;
        run = 0;
        if *l == T {
            if in_v {
                return Err(not_in_language(w, i, "t after t-"));
            }
            pos += 1;
        } else if *l == t_inv() {
            if !in_v {
                in_v = true;
                pos = 0;
            }
            pos -= 1;
        } else {
            return Err(not_in_language(w, i, format!("letter {l} outside {{a, t, t-}}")));
        }
    }
    close_run(pos, run, w.len())?;
    g.marker = marker.ok_or_else(|| not_in_language(w, w.len(), "no lamplighter block"))?;
    let canonical = encode_lamplighter(&g);
    if canonical != *w {
        let pos = canonical.iter().zip(w.iter()).take_while(|(x, y)| x == y).count();
        return Err(not_in_language(w, pos, format!("canonical form is {canonical}")));
    }
    Ok(g)
}

/// Block sequences (lengths 0..=3 per position) for one side of the walk,
/// with their letter counts, up to `budget` letters.
fn sweep_side(budget: usize, first_step_free: bool) -> Vec<(Vec<usize>, usize)> {
    let mut out = vec![(Vec::new(), 0)];
    let mut stack = vec![(Vec::<usize>::new(), 0usize, false)];
    while let Some((blocks, cost, has_marker)) = stack.pop() {
        let step = if blocks.is_empty() && first_step_free { 0 } else { 1 };
        for b in 0..=3 {
            let marker = b >= 2;
            if marker && has_marker {
                continue;
            }
            let c = cost + step + b;
            if c > budget {
                continue;
            }
            let mut next = blocks.clone();
            next.push(b);
            if b > 0 {
                out.push((next.clone(), c));
            }
            // extending past an empty block still needs content further out
            if c < budget {
                stack.push((next, c, has_marker || marker));
            }
        }
    }
    out
}

fn apply_blocks(g: &mut LamplighterElement, blocks: &[usize], position: impl Fn(usize) -> i64) {
    for (i, &b) in blocks.iter().enumerate() {
        let pos = position(i);
        if b == 1 || b == 3 {
            g.lit.insert(pos);
        }
        if b >= 2 {
            g.marker = pos;
        }
    }
}

impl Representation for LamplighterRepresentation {
    type G = Lamplighter;

    fn group(&self) -> &Lamplighter {
        &self.group
    }

    fn label(&self) -> String {
        "lamplighter".into()
    }

    fn alphabet(&self) -> Vec<Letter> {
        vec![A, T, t_inv()]
    }

    fn encode(&self, g: &LamplighterElement) -> Word {
        encode_lamplighter(g)
    }

    fn decode(&self, w: &Word) -> Result<LamplighterElement, RepresentationError> {
        decode_lamplighter(w)
    }

    fn enumerate(&self, n: usize) -> Vec<Word> {
        let right = sweep_side(n, true);
        let left = sweep_side(n, false);
        let has_marker = |blocks: &[usize]| blocks.iter().any(|&b| b >= 2);
        let mut words = Vec::new();
        for (u, cu) in &right {
            for (v, cv) in &left {
                if cu + cv > n || has_marker(u) == has_marker(v) {
                    continue;
                }
                let mut g = LamplighterElement::default();
                apply_blocks(&mut g, u, |i| i as i64);
                apply_blocks(&mut g, v, |i| -(i as i64) - 1);
                let w = encode_lamplighter(&g);
                if w.len() <= n {
                    words.push(w);
                }
            }
        }
        sort_shortlex(&mut words);
        words
    }

    fn language_automaton(&self) -> SyncAutomaton {
        self.language.get_or_init(language_automaton).clone()
    }

    fn multiplier_generators(&self) -> Vec<Letter> {
        vec![A, T]
    }

    fn multiplier(&self, generator: Letter) -> Result<SyncAutomaton, RepresentationError> {
        let language = self.language_automaton();
        let alphabet = self.alphabet();
        match generator {
            A => compile_multiplier(&Toggle, &alphabet, 4, &language),
            T => compile_multiplier(&Shift, &alphabet, 6, &language),
            other => Err(RepresentationError::UnsupportedGenerator(other)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct ScanState {
    in_v: bool,
    /// Last letter was `t` or `t-`, so an `a` must come next.
    need_a: bool,
    run: u8,
    marker: bool,
}

impl ScanState {
    fn close_run(self) -> Option<ScanState> {
        if self.run >= 2 {
            if self.marker {
                return None;
            }
            return Some(ScanState {
                marker: true,
                run: 0,
                ..self
            });
        }
        Some(ScanState { run: 0, ..self })
    }
}

fn language_automaton() -> SyncAutomaton {
    let start = ScanState {
        in_v: false,
        need_a: false,
        run: 0,
        marker: false,
    };
    explore(
        vec![vec![A, T, t_inv()]],
        start,
        |s: &ScanState, sym| {
            let next = match sym[0] {
                Some(A) if s.run < 3 => Some(ScanState {
                    need_a: false,
                    run: s.run + 1,
                    ..*s
                }),
                Some(T) if !s.in_v => s.close_run().map(|c| ScanState { need_a: true, ..c }),
                Some(l) if l == t_inv() && !(s.need_a && !s.in_v) => s.close_run().map(|c| ScanState {
                    need_a: true,
                    in_v: true,
                    ..c
                }),
                _ => None,
            };
            next.into_iter().collect()
        },
        |s| !s.need_a && s.close_run().is_some_and(|c| c.marker),
    )
    .trim()
}

fn a_run(n: usize) -> Vec<Letter> {
    vec![A; n]
}

/// Right multiplication by `a`: the lamplighter block switches between `aa`
/// and `aaa`.
struct Toggle;

#[derive(Clone, PartialEq, Eq, Hash)]
enum ToggleState {
    Run(usize),
    Done,
}

fn toggled(run: usize) -> Vec<Letter> {
    match run {
        2 => a_run(3),
        3 => a_run(2),
        n => a_run(n),
    }
}

impl Transducer for Toggle {
    type State = ToggleState;

    fn initial(&self) -> ToggleState {
        ToggleState::Run(0)
    }

    fn moves(&self, s: &ToggleState, input: Option<Letter>) -> Vec<(ToggleState, Vec<Letter>)> {
        let ToggleState::Run(c) = *s else {
            return Vec::new();
        };
        match input {
            Some(A) if c < 3 => vec![(ToggleState::Run(c + 1), Vec::new())],
            Some(A) => Vec::new(),
            Some(l) => {
                let mut out = toggled(c);
                out.push(l);
                vec![(ToggleState::Run(0), out)]
            }
            None => vec![(ToggleState::Done, toggled(c))],
        }
    }

    fn is_final(&self, s: &ToggleState) -> bool {
        *s == ToggleState::Done
    }
}

/// Right multiplication by `t`: the lamplighter moves one position right.
struct Shift;

/// What precedes the current `a`-run in `v` and has not been written yet.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Held {
    /// The first `t-` of `v`.
    First,
    /// A `t-` preceded by another `t-`: the previous position is empty.
    Step,
    /// A lamp `a` followed by `t-`.
    LampStep,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ShiftState {
    Start,
    /// In `u` before the lamplighter block, with `run` unwritten `a`s.
    U(usize),
    /// Consumed the lamplighter block (lit or not) and one `t`.
    AfterMarker(bool),
    /// In `v` before the lamplighter block.
    V(Held, usize),
    /// The lamplighter sits at `-1` and moves to `0`: `u` gains a block at
    /// its start, `v` loses one.
    CrossStart,
    CrossLamp0,
    CrossU,
    CrossV(usize),
    Copy,
    Done,
}

fn held_letters(h: Held) -> Vec<Letter> {
    match h {
        Held::First | Held::Step => vec![t_inv()],
        Held::LampStep => vec![A, t_inv()],
    }
}

fn lamp_prefix(lit: bool) -> Vec<Letter> {
    if lit {
        vec![A]
    } else {
        Vec::new()
    }
}

fn cat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.concat()
}

impl Transducer for Shift {
    type State = ShiftState;

    fn initial(&self) -> ShiftState {
        ShiftState::Start
    }

    fn moves(&self, s: &ShiftState, input: Option<Letter>) -> Vec<(ShiftState, Vec<Letter>)> {
        use ShiftState::*;
        let ti = t_inv();
        match (s, input) {
            (Start, None) => vec![(U(0), Vec::new()), (CrossStart, Vec::new())],

            (U(c), Some(A)) if *c < 3 => vec![(U(c + 1), Vec::new())],
            (U(c), Some(T)) if *c <= 1 => vec![(U(0), cat(&[&a_run(*c), &[T]]))],
            (U(c), Some(T)) if *c >= 2 => vec![(AfterMarker(*c == 3), Vec::new())],
            (U(c), Some(l)) if l == ti && *c <= 1 => vec![(V(Held::First, 0), a_run(*c))],
            (U(c), Some(l)) if l == ti && *c >= 2 => {
                vec![(Copy, cat(&[&lamp_prefix(*c == 3), &[T, A, A, ti]]))]
            }
            (U(c), None) if *c >= 2 => vec![(Done, cat(&[&lamp_prefix(*c == 3), &[T, A, A]]))],

            (AfterMarker(lit), Some(A)) => vec![(Copy, cat(&[&lamp_prefix(*lit), &[T, A, A, A]]))],
            (AfterMarker(lit), Some(T)) => vec![(Copy, cat(&[&lamp_prefix(*lit), &[T, A, A, T]]))],

            (V(h, c), Some(A)) if *c < 3 => vec![(V(*h, c + 1), Vec::new())],
            (V(h, 0), Some(l)) if l == ti => vec![(V(Held::Step, 0), held_letters(*h))],
            (V(h, 1), Some(l)) if l == ti => vec![(V(Held::LampStep, 0), held_letters(*h))],
            (V(h, c), Some(l)) if l == ti && *c >= 2 => match marker_in_v(*h, *c == 3, true) {
                Some(out) => vec![(Copy, out)],
                None => Vec::new(),
            },
            (V(h, c), None) if *c >= 2 => match marker_in_v(*h, *c == 3, false) {
                Some(out) => vec![(Done, out)],
                None => Vec::new(),
            },

            (CrossStart, Some(A)) => vec![(CrossLamp0, a_run(3))],
            (CrossStart, Some(T)) => vec![(CrossU, vec![A, A, T])],
            (CrossStart, Some(l)) if l == ti => vec![(CrossV(0), a_run(2))],
            (CrossLamp0, Some(T)) => vec![(CrossU, vec![T])],
            (CrossLamp0, Some(l)) if l == ti => vec![(CrossV(0), Vec::new())],
            (CrossU, Some(l)) if l != ti => vec![(CrossU, vec![l])],
            (CrossU, Some(l)) if l == ti => vec![(CrossV(0), Vec::new())],
            (CrossV(c), Some(A)) if *c < 3 => vec![(CrossV(c + 1), Vec::new())],
            (CrossV(2), Some(l)) if l == ti => vec![(Copy, vec![ti, ti])],
            (CrossV(3), Some(l)) if l == ti => vec![(Copy, vec![ti, A, ti])],
            (CrossV(2), None) => vec![(Done, Vec::new())],
            (CrossV(3), None) => vec![(Done, vec![ti, A])],

            (Copy, Some(l)) => vec![(Copy, vec![l])],
            (Copy, None) => vec![(Done, Vec::new())],
            _ => Vec::new(),
        }
    }

    fn is_final(&self, s: &ShiftState) -> bool {
        *s == ShiftState::Done
    }
}

/// Rewrites `held · marker block` when the lamplighter, at position `m <= -2`,
/// moves to `m + 1`. With `more`, the `t-` that follows the block in the
/// input has been consumed and is written too.
fn marker_in_v(h: Held, lit: bool, more: bool) -> Option<Vec<Letter>> {
    let ti = t_inv();
    let mut out = match h {
        Held::First => return None,
        Held::Step => vec![A, A],
        Held::LampStep => vec![A, A, A],
    };
    match (lit, more) {
        (false, false) => {}
        (true, false) => out.extend([ti, A]),
        (false, true) => out.extend([ti, ti]),
        (true, true) => out.extend([ti, A, ti]),
    }
    Some(out)
}
