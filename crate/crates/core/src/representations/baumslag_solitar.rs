//! `w = u v`: `u` spells the stem of the normal form, each HNN letter
//! `a^i t^{±1}` as `a_i t^{±1}` (no `a_i` when `i = 0`); `v` spells `|k|` in
//! base `q`, least significant digit first, digit `0` as `e` and digit `d` as
//! `a_d` (`a_d⁻¹` when `k < 0`), without a most significant zero.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{compile_multiplier, not_in_language, sort_shortlex, Copy, Representation, RepresentationError};
use crate::automata::{explore, SyncAutomaton, Transducer};
use crate::groups::{BaumslagSolitar, BsNormalForm, HnnLetter, TSign};
use crate::words::{Base, Letter, Word};

#[derive(Debug)]
pub struct BsRepresentation {
    group: BaumslagSolitar,
    language: OnceLock<SyncAutomaton>,
}

impl BsRepresentation {
    pub fn new(group: BaumslagSolitar) -> BsRepresentation {
        BsRepresentation {
            group,
            language: OnceLock::new(),
        }
    }

    fn p(&self) -> u32 {
        self.group.p()
    }

    fn q(&self) -> u32 {
        self.group.q()
    }

    pub fn encode_bs(&self, g: &BsNormalForm) -> Word {
        let mut out = Vec::new();
        for l in &g.stem {
            if l.a_exp > 0 {
                out.push(Letter::indexed(l.a_exp));
            }
            out.push(l.sign.letter());
        }
        let negative = g.tail.is_negative();
        let q = BigInt::from(self.q());
        let mut k = g.tail.abs();
        while !k.is_zero() {
            let (rest, digit) = k.div_rem(&q);
            out.push(digit_letter(digit.to_u32().expect("digit below q"), negative));
            k = rest;
        }
        Word::new(out)
    }

    pub fn decode_bs(&self, w: &Word) -> Result<BsNormalForm, RepresentationError> {
        let letters = w.as_slice();
        let split = letters.iter().rposition(|l| l.base() == Base::T).map_or(0, |i| i + 1);
        let mut stem = Vec::new();
        let mut i = 0;
        while i < split {
            let l = letters[i];
            if l.base() == Base::T {
                stem.push(HnnLetter::new(0, t_sign(l)));
                i += 1;
                continue;
            }
            let exp = match digit_value(l) {
                Some((d, false)) if d > 0 => d,
                _ => return Err(not_in_language(w, i, format!("{l} cannot start a stem letter"))),
            };
            match letters.get(i + 1) {
                Some(&t) if t.base() == Base::T => stem.push(HnnLetter::new(exp, t_sign(t))),
                _ => return Err(not_in_language(w, i + 1, "stem letter a_i must be followed by t or t-")),
            }
            i += 2;
        }
        let mut tail = BigInt::zero();
        let mut place = BigInt::from(1);
        let mut sign = None;
        for (offset, &l) in letters[split..].iter().enumerate() {
            let pos = split + offset;
            let (d, negative) = digit_value(l)
                .filter(|&(d, _)| d < self.q())
                .ok_or_else(|| not_in_language(w, pos, format!("{l} is not a base-{} digit", self.q())))?;
            if d > 0 {
                if sign.is_some_and(|s| s != negative) {
                    return Err(not_in_language(w, pos, "digits of mixed sign"));
                }
                sign = Some(negative);
            }
            tail += &place * d;
            place *= self.q();
        }
        if letters.len() > split && letters.last() == Some(&Letter::E) {
            return Err(not_in_language(w, letters.len() - 1, "most significant digit is zero"));
        }
        if sign == Some(true) {
            tail = -tail;
        }
        let g = self
            .group
            .normal_form(stem, tail)
            .map_err(|reason| not_in_language(w, 0, reason))?;
        if self.encode_bs(&g) != *w {
            return Err(not_in_language(w, 0, "not a canonical encoding"));
        }
        Ok(g)
    }

    fn stems(&self, budget: usize) -> Vec<(Vec<HnnLetter>, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::<HnnLetter>::new(), 0usize)];
        while let Some((stem, cost)) = stack.pop() {
            for (sign, bound) in [(TSign::Plus, self.q()), (TSign::Minus, self.p())] {
                for a_exp in 0..bound {
                    if a_exp == 0 && stem.last().is_some_and(|l| l.sign == sign.flip()) {
                        continue;
                    }
                    let c = cost + if a_exp > 0 { 2 } else { 1 };
                    if c <= budget {
                        let mut next = stem.clone();
                        next.push(HnnLetter::new(a_exp, sign));
                        stack.push((next, c));
                    }
                }
            }
            out.push((stem, cost));
        }
        out
    }
}

fn t_sign(l: Letter) -> TSign {
    if l.is_inverted() {
        TSign::Minus
    } else {
        TSign::Plus
    }
}

fn digit_letter(d: u32, negative: bool) -> Letter {
    let l = Letter::indexed(d);
    if negative {
        l.inverse()
    } else {
        l
    }
}

/// `(d, negative)` for `e`, `a_d` and `a_d⁻¹`.
fn digit_value(l: Letter) -> Option<(u32, bool)> {
    let power = l.a_power()?;
    Some((power.unsigned_abs() as u32, power < 0))
}

impl Representation for BsRepresentation {
    type G = BaumslagSolitar;

    fn group(&self) -> &BaumslagSolitar {
        &self.group
    }

    fn label(&self) -> String {
        format!("bs({},{})", self.p(), self.q())
    }

    fn alphabet(&self) -> Vec<Letter> {
        let mut out = vec![Letter::E];
        for d in 1..self.q() {
            out.push(Letter::indexed(d));
            out.push(Letter::indexed(d).inverse());
        }
        out.extend([Letter::T, Letter::T.inverse()]);
        out
    }

    fn encode(&self, g: &BsNormalForm) -> Word {
        self.encode_bs(g)
    }

    fn decode(&self, w: &Word) -> Result<BsNormalForm, RepresentationError> {
        self.decode_bs(w)
    }

    fn enumerate(&self, n: usize) -> Vec<Word> {
        let mut words = Vec::new();
        let q = BigInt::from(self.q());
        for (stem, cost) in self.stems(n) {
            let digits = n - cost;
            let bound: BigInt = num_traits::pow(q.clone(), digits);
            let mut k: BigInt = 1 - &bound;
            while k < bound {
                let g = self.group.normal_form(stem.clone(), k.clone()).expect("sweep yields normal forms");
                let w = self.encode_bs(&g);
                if w.len() <= n {
                    words.push(w);
                }
                k += 1;
            }
        }
        sort_shortlex(&mut words);
        words
    }

    fn language_automaton(&self) -> SyncAutomaton {
        self.language.get_or_init(|| language_automaton(self.p(), self.q(), self.alphabet())).clone()
    }

    fn multiplier_generators(&self) -> Vec<Letter> {
        let mut out = vec![Letter::E];
        out.extend((1..self.q()).map(Letter::indexed));
        out.push(Letter::T);
        out
    }

    fn multiplier(&self, generator: Letter) -> Result<SyncAutomaton, RepresentationError> {
        let language = self.language_automaton();
        let alphabet = self.alphabet();
        if generator == Letter::E {
            return compile_multiplier(&Copy, &alphabet, 1, &language);
        }
        if generator == Letter::T {
            let t = Multiplier {
                p: self.p(),
                q: self.q(),
                gen: Gen::T,
            };
            return compile_multiplier(&t, &alphabet, 4, &language);
        }
        match digit_value(generator) {
            Some((i, false)) if (1..self.q()).contains(&i) => {
                let m = Multiplier {
                    p: self.p(),
                    q: self.q(),
                    gen: Gen::A(i),
                };
                compile_multiplier(&m, &alphabet, 4, &language)
            }
            _ => Err(RepresentationError::UnsupportedGenerator(generator)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Scan {
    Stem(Option<TSign>),
    /// A positive `a_j` that is either a stem prefix or the first digit.
    Pending(u32),
    /// Digits so far: sign if a nonzero digit was seen, and whether the last
    /// digit was zero.
    Digits(Option<bool>, bool),
}

fn language_automaton(p: u32, q: u32, alphabet: Vec<Letter>) -> SyncAutomaton {
    explore(
        vec![alphabet],
        Scan::Stem(None),
        |s: &Scan, sym| {
            let l = sym[0].expect("one tape");
            let digit = digit_value(l).filter(|&(d, _)| d < q);
            let next = match (*s, l.base(), digit) {
                (Scan::Stem(last), Base::T, _) => {
                    let sign = t_sign(l);
                    (last != Some(sign.flip())).then_some(Scan::Stem(Some(sign)))
                }
                (Scan::Stem(_), _, Some((0, _))) => Some(Scan::Digits(None, true)),
                (Scan::Stem(_), _, Some((d, false))) => Some(Scan::Pending(d)),
                (Scan::Stem(_), _, Some((_, true))) => Some(Scan::Digits(Some(true), false)),
                (Scan::Pending(j), Base::T, _) => {
                    (!l.is_inverted() || j < p).then_some(Scan::Stem(Some(t_sign(l))))
                }
                (Scan::Pending(_), _, Some((0, _))) => Some(Scan::Digits(Some(false), true)),
                (Scan::Pending(_), _, Some((_, false))) => Some(Scan::Digits(Some(false), false)),
                (Scan::Digits(sign, _), _, Some((0, _))) => Some(Scan::Digits(sign, true)),
                (Scan::Digits(sign, _), _, Some((_, neg))) if sign != Some(!neg) => {
                    Some(Scan::Digits(Some(neg), false))
                }
                _ => None,
            };
            next.into_iter().collect()
        },
        |s| !matches!(s, Scan::Digits(_, true)),
    )
    .trim()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Gen {
    A(u32),
    T,
}

/// Streams the digits of `mult · X + carry` in base `q`, `X` being the value
/// of the input digits. The carry starts small and stays small.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Affine {
    mult: i64,
    carry: i64,
    in_negative: bool,
    out_negative: bool,
    /// Trailing zero digits are being dropped; everything left must be zero.
    dropping: bool,
    last_zero: bool,
}

impl Affine {
    fn new(mult: u32, carry: i64, in_negative: bool, out_negative: bool) -> Affine {
        Affine {
            mult: mult as i64,
            carry,
            in_negative,
            out_negative,
            dropping: false,
            last_zero: false,
        }
    }

    /// Emits one output digit: either written, or (when zero) dropped.
    fn emit(self, digit: i64, q: u32) -> Vec<(Affine, Vec<Letter>)> {
        let mut out = Vec::new();
        if digit == 0 {
            if !self.dropping {
                out.push((
                    Affine {
                        last_zero: true,
                        ..self
                    },
                    vec![Letter::E],
                ));
            }
            out.push((
                Affine {
                    dropping: true,
                    ..self
                },
                Vec::new(),
            ));
        } else if !self.dropping {
            debug_assert!(digit < q as i64);
            out.push((
                Affine {
                    last_zero: false,
                    ..self
                },
                vec![digit_letter(digit as u32, self.out_negative)],
            ));
        }
        out
    }

    fn read(self, l: Letter, q: u32) -> Vec<(Affine, Vec<Letter>)> {
        let Some((d, negative)) = digit_value(l).filter(|&(d, _)| d < q) else {
            return Vec::new();
        };
        if d > 0 && negative != self.in_negative {
            return Vec::new();
        }
        let v = self.mult * d as i64 + self.carry;
        let next = Affine {
            carry: v.div_euclid(q as i64),
            ..self
        };
        next.emit(v.rem_euclid(q as i64), q)
    }

    /// Output still owed once the input ends, if the result is valid.
    fn finish(self, q: u32) -> Option<Vec<Letter>> {
        if self.carry < 0 {
            return None;
        }
        let mut out = Vec::new();
        let mut carry = self.carry;
        let mut last_zero = self.last_zero;
        while carry > 0 {
            if self.dropping {
                return None;
            }
            let d = carry % q as i64;
            out.push(digit_letter(d as u32, self.out_negative));
            last_zero = d == 0;
            carry /= q as i64;
        }
        (self.dropping || !last_zero).then_some(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum State {
    /// Copying the stem; `boundary` after `t^{±1}` or at the start.
    Stem { boundary: bool, last: Option<TSign> },
    Digits(Affine),
    /// `k < 0` and `|k| < i`: one negative digit becomes one positive digit.
    SmallNegative,
    /// Deciding the first digit for right multiplication by `t`.
    TFirst(Option<TSign>),
    /// Consumed `a_j` of a final stem letter `a^j t⁻¹` that `t` cancels.
    CancelA(u32),
    CancelT(u32),
    End,
}

struct Multiplier {
    p: u32,
    q: u32,
    gen: Gen,
}

impl Transducer for Multiplier {
    type State = State;

    fn initial(&self) -> State {
        State::Stem {
            boundary: true,
            last: None,
        }
    }

    fn moves(&self, s: &State, input: Option<Letter>) -> Vec<(State, Vec<Letter>)> {
        let (p, q) = (self.p, self.q);
        let mut out = Vec::new();
        match (*s, input) {
            (State::Stem { .. }, Some(l)) if l.base() == Base::T => {
                out.push((
                    State::Stem {
                        boundary: true,
                        last: Some(t_sign(l)),
                    },
                    vec![l],
                ));
                if self.gen == Gen::T && l.is_inverted() {
                    out.push((State::CancelT(0), Vec::new()));
                }
            }
            (State::Stem { last, .. }, Some(l)) => {
                if let Some((j, false)) = digit_value(l).filter(|&(j, _)| j > 0 && j < q) {
                    out.push((State::Stem { boundary: false, last }, vec![l]));
                    if self.gen == Gen::T && j < p {
                        out.push((State::CancelA(j), Vec::new()));
                    }
                }
            }
            (State::Stem { boundary: true, last }, None) => match self.gen {
                Gen::A(i) => {
                    out.push((State::Digits(Affine::new(1, i as i64, false, false)), Vec::new()));
                    out.push((State::Digits(Affine::new(1, -(i as i64), true, true)), Vec::new()));
                    out.push((State::SmallNegative, Vec::new()));
                }
                Gen::T => out.push((State::TFirst(last), Vec::new())),
            },
            (State::Digits(a), Some(l)) => {
                out.extend(a.read(l, q).into_iter().map(|(a, w)| (State::Digits(a), w)));
            }
            (State::Digits(a), None) => {
                if let Some(w) = a.finish(q) {
                    out.push((State::End, w));
                }
            }
            (State::SmallNegative, Some(l)) => {
                if let (Gen::A(i), Some((d, true))) = (self.gen, digit_value(l)) {
                    if d > 0 && d < i {
                        out.push((State::End, vec![digit_letter(i - d, false)]));
                    }
                }
            }
            (State::TFirst(last), None) => {
                if last != Some(TSign::Minus) {
                    out.push((State::End, vec![Letter::T]));
                }
            }
            (State::TFirst(last), Some(l)) => match digit_value(l).filter(|&(d, _)| d < q) {
                Some((0, _)) if last != Some(TSign::Minus) => {
                    for negative in [false, true] {
                        out.push((State::Digits(Affine::new(p, 0, negative, negative)), vec![Letter::T]));
                    }
                }
                Some((d, false)) if d > 0 => {
                    out.push((State::Digits(Affine::new(p, 0, false, false)), vec![l, Letter::T]));
                }
                Some((d, true)) if d > 0 => {
                    let r = Letter::indexed(q - d);
                    out.push((State::Digits(Affine::new(p, p as i64, true, true)), vec![r, Letter::T]));
                }
                _ => {}
            },
            (State::CancelA(j), Some(l)) if l == Letter::T.inverse() => out.push((State::CancelT(j), Vec::new())),
            (State::CancelT(j), None) => {
                let w = if j > 0 { vec![Letter::indexed(j)] } else { Vec::new() };
                out.push((State::End, w));
            }
            (State::CancelT(j), Some(Letter::E)) => {
                out.push((State::Digits(Affine::new(p, j as i64, false, false)), Vec::new()));
                out.push((State::Digits(Affine::new(p, -(j as i64), true, true)), Vec::new()));
            }
            _ => {}
        }
        out
    }

    fn is_final(&self, s: &State) -> bool {
        *s == State::End
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Group;

    fn rep(p: u32, q: u32) -> BsRepresentation {
        BsRepresentation::new(BaumslagSolitar::new(p, q).unwrap())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        let r = rep(1, 2);
        let g = r.group;
        assert_eq!(r.encode(&g.normal_form(vec![], 5).unwrap()), w("aea"));
        assert_eq!(r.encode(&g.normal_form(vec![HnnLetter::new(0, TSign::Plus)], 0).unwrap()), w("t"));
        assert_eq!(r.encode(&g.evaluate(&w("ta-")).unwrap()), w("ta-"));
        assert_eq!(r.encode(&g.identity()), Word::empty());
    }

    #[test]
    fn decode_examples() {
        let r = rep(1, 2);
        assert_eq!(r.decode(&w("aea")).unwrap(), r.group.normal_form(vec![], 5).unwrap());
        assert_eq!(r.decode(&Word::empty()).unwrap(), r.group.identity());
        for bad in ["e", "ae", "aa-", "at-", "tt-", "a2", "aat", "ea t"] {
            assert!(r.decode(&w(bad)).is_err(), "{bad}");
        }
    }

    #[test]
    fn short_language() {
        let r = rep(1, 2);
        let words: Vec<String> = r.enumerate(1).iter().map(Word::to_string).collect();
        assert_eq!(words, ["", "a", "a-", "t", "t-"]);
    }

    #[test]
    fn sweep_matches_language_automaton() {
        for (p, q) in [(1, 2), (1, 3), (2, 3)] {
            let r = rep(p, q);
            for n in 0..=6 {
                let mut accepted = super::super::accepted_words(&r.language_automaton(), n);
                sort_shortlex(&mut accepted);
                assert_eq!(r.enumerate(n), accepted, "BS({p},{q}) n = {n}");
            }
        }
    }

    #[test]
    fn multipliers_agree_with_group() {
        for (p, q) in [(1, 2), (1, 3), (2, 3)] {
            let r = rep(p, q);
            for generator in r.multiplier_generators() {
                let m = r.multiplier(generator).unwrap();
                for word in r.enumerate(5) {
                    let g = r.decode(&word).unwrap();
                    let image = r.encode(&r.group.act(&g, generator).unwrap());
                    assert!(
                        m.accepts_words(&[word.clone(), image.clone()]).unwrap(),
                        "BS({p},{q}) {generator}: {word} -> {image}"
                    );
                }
            }
        }
    }
}
