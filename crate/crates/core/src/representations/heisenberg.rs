//! `w = u v` with `u = p^y` and `v` the least-significant-first binary
//! digits of `|x|` and `|z|` read in parallel, each digit pair written as a
//! two-letter block `ee`, `eq`, `se` or `sq`. `s` is inverted when `x < 0`,
//! `q` when `z < 0`; the last block is never `ee`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{compile_multiplier, not_in_language, sort_shortlex, Copy, Representation, RepresentationError};
use crate::automata::{explore, SyncAutomaton, Transducer};
use crate::groups::{Heisenberg, HeisenbergTriple};
use crate::words::{Base, Letter, Word};

#[derive(Debug, Default)]
pub struct H3Representation {
    group: Heisenberg,
    language: OnceLock<SyncAutomaton>,
}

impl H3Representation {
    pub fn new() -> H3Representation {
        H3Representation::default()
    }
}

fn signed(l: Letter, negative: bool) -> Letter {
    if negative {
        l.inverse()
    } else {
        l
    }
}

fn bits(v: &BigInt) -> Vec<bool> {
    let mag = v.magnitude();
    (0..mag.bits()).map(|i| mag.bit(i)).collect()
}

pub fn encode_h3(g: &HeisenbergTriple) -> Word {
    let mut out = Vec::new();
    let p = signed(Letter::P, g.y.is_negative());
    let y: u64 = g.y.magnitude().try_into().expect("|y| fits in memory");
    out.extend(std::iter::repeat(p).take(y as usize));
    let (xb, zb) = (bits(&g.x), bits(&g.z));
    let s = signed(Letter::S, g.x.is_negative());
    let q = signed(Letter::Q, g.z.is_negative());
    for i in 0..xb.len().max(zb.len()) {
        out.push(if xb.get(i) == Some(&true) { s } else { Letter::E });
        out.push(if zb.get(i) == Some(&true) { q } else { Letter::E });
    }
    Word::new(out)
}

pub fn decode_h3(w: &Word) -> Result<HeisenbergTriple, RepresentationError> {
    let letters = w.as_slice();
    let split = letters.iter().position(|l| l.base() != Base::P).unwrap_or(letters.len());
    let mut g = HeisenbergTriple::default();
    for (i, l) in letters[..split].iter().enumerate() {
        if l.is_inverted() != letters[0].is_inverted() {
            return Err(not_in_language(w, i, "p and p- mixed"));
        }
    }
    if split > 0 {
        g.y = BigInt::from(split);
        if letters[0].is_inverted() {
            g.y = -g.y;
        }
    }
    let v = &letters[split..];
    if v.len() % 2 == 1 {
        return Err(not_in_language(w, letters.len(), "odd number of letters after the p-run"));
    }
    let mut x_sign = None;
    let mut z_sign = None;
    for (b, block) in v.chunks(2).enumerate() {
        let pos = split + 2 * b;
        for (offset, (letter, base, sign, value)) in [
            (block[0], Base::S, &mut x_sign, &mut g.x),
            (block[1], Base::Q, &mut z_sign, &mut g.z),
        ]
        .into_iter()
        .enumerate()
        {
            if letter == Letter::E {
                continue;
            }
            if letter.base() != base {
                return Err(not_in_language(w, pos + offset, format!("unexpected letter {letter}")));
            }
            if sign.is_some_and(|s| s != letter.is_inverted()) {
                return Err(not_in_language(w, pos + offset, "letters of mixed sign"));
            }
            *sign = Some(letter.is_inverted());
            value.set_bit(b as u64, true);
        }
    }
    if v.len() >= 2 && v[v.len() - 2..] == [Letter::E, Letter::E] {
        return Err(not_in_language(w, letters.len() - 2, "trailing zero block"));
    }
    if x_sign == Some(true) {
        g.x = -g.x;
    }
    if z_sign == Some(true) {
        g.z = -g.z;
    }
    Ok(g)
}

impl Representation for H3Representation {
    type G = Heisenberg;

    fn group(&self) -> &Heisenberg {
        &self.group
    }

    fn label(&self) -> String {
        "h3".into()
    }

    fn alphabet(&self) -> Vec<Letter> {
        let mut out = vec![Letter::E];
        for l in [Letter::S, Letter::P, Letter::Q] {
            out.extend([l, l.inverse()]);
        }
        out
    }

    fn encode(&self, g: &HeisenbergTriple) -> Word {
        encode_h3(g)
    }

    fn decode(&self, w: &Word) -> Result<HeisenbergTriple, RepresentationError> {
        decode_h3(w)
    }

    fn enumerate(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|len| self.enumerate_exact(len)).collect()
    }

    fn enumerate_exact(&self, len: usize) -> Vec<Word> {
        let mut words = Vec::new();
        for y_abs in (len % 2..=len).step_by(2) {
            let blocks = (len - y_abs) / 2;
            let bound = 1i64 << blocks.min(62);
            let low = if blocks == 0 { 0 } else { bound / 2 };
            for y in if y_abs == 0 { vec![0] } else { vec![y_abs as i64, -(y_abs as i64)] } {
                for x in (1 - bound)..bound {
                    for z in (1 - bound)..bound {
                        if x.abs() >= low || z.abs() >= low {
                            words.push(encode_h3(&HeisenbergTriple::new(x, y, z)));
                        }
                    }
                }
            }
        }
        sort_shortlex(&mut words);
        words
    }

    fn language_automaton(&self) -> SyncAutomaton {
        self.language.get_or_init(|| language_automaton(self.alphabet())).clone()
    }

    fn multiplier_generators(&self) -> Vec<Letter> {
        vec![Letter::E, Letter::S, Letter::P, Letter::Q]
    }

    fn multiplier(&self, generator: Letter) -> Result<SyncAutomaton, RepresentationError> {
        let language = self.language_automaton();
        let alphabet = self.alphabet();
        let op = match generator {
            Letter::E => return compile_multiplier(&Copy, &alphabet, 1, &language),
            Letter::S => Op::IncX,
            Letter::Q => Op::IncZ,
            Letter::P => Op::AddXToZ,
            other => return Err(RepresentationError::UnsupportedGenerator(other)),
        };
        compile_multiplier(&Multiplier { op }, &alphabet, 4, &language)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Scan {
    /// In the `p`-run; sign once known.
    Prefix(Option<bool>),
    /// Inside the block section: signs of `s` and `q` once known, whether a
    /// block is half read, whether the last complete block was `ee`.
    Blocks {
        x_sign: Option<bool>,
        z_sign: Option<bool>,
        half: Option<bool>,
        last_zero: bool,
    },
}

fn language_automaton(alphabet: Vec<Letter>) -> SyncAutomaton {
    let start_blocks = Scan::Blocks {
        x_sign: None,
        z_sign: None,
        half: None,
        last_zero: false,
    };
    explore(
        vec![alphabet],
        Scan::Prefix(None),
        |s: &Scan, sym| {
            let l = sym[0].expect("one tape");
            let next = match *s {
                Scan::Prefix(sign) if l.base() == Base::P => {
                    (sign != Some(!l.is_inverted())).then_some(Scan::Prefix(Some(l.is_inverted())))
                }
                Scan::Prefix(_) => block_step(start_blocks, l),
                blocks => block_step(blocks, l),
            };
            next.into_iter().collect()
        },
        |s| match s {
            Scan::Prefix(_) => true,
            Scan::Blocks { half, last_zero, .. } => half.is_none() && !last_zero,
        },
    )
    .trim()
}

fn block_step(s: Scan, l: Letter) -> Option<Scan> {
    let Scan::Blocks {
        mut x_sign,
        mut z_sign,
        half,
        ..
    } = s
    else {
        return None;
    };
    let (base, sign) = match half {
        None => (Base::S, &mut x_sign),
        Some(_) => (Base::Q, &mut z_sign),
    };
    let zero = l == Letter::E;
    if !zero {
        if l.base() != base || *sign == Some(!l.is_inverted()) {
            return None;
        }
        *sign = Some(l.is_inverted());
    }
    Some(match half {
        None => Scan::Blocks {
            x_sign,
            z_sign,
            half: Some(zero),
            last_zero: false,
        },
        Some(first_zero) => Scan::Blocks {
            x_sign,
            z_sign,
            half: None,
            last_zero: first_zero && zero,
        },
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    IncX,
    IncZ,
    AddXToZ,
}

/// Bitwise `coef_x·|x| + coef_z·|z| + carry`, written to one track while the
/// other track is copied.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Arith {
    coef_x: i8,
    coef_z: i8,
    carry: i8,
    /// The computed track is `z` (else `x`).
    to_z: bool,
    x_negative: bool,
    z_negative: bool,
    out_negative: bool,
    dropping: bool,
    last_zero: bool,
}

impl Arith {
    fn letters(&self, xb: bool, zb: bool) -> (bool, bool, Letter, Letter) {
        let (x_neg, z_neg) = if self.to_z {
            (self.x_negative, self.out_negative)
        } else {
            (self.out_negative, self.z_negative)
        };
        let s = if xb { signed(Letter::S, x_neg) } else { Letter::E };
        let q = if zb { signed(Letter::Q, z_neg) } else { Letter::E };
        (xb, zb, s, q)
    }

    fn emit(self, xb: bool, zb: bool) -> Vec<(Arith, Vec<Letter>)> {
        let (xb, zb, s, q) = self.letters(xb, zb);
        if xb || zb {
            return if self.dropping {
                Vec::new()
            } else {
                vec![(
                    Arith {
                        last_zero: false,
                        ..self
                    },
                    vec![s, q],
                )]
            };
        }
        let mut out = vec![(
            Arith {
                dropping: true,
                ..self
            },
            Vec::new(),
        )];
        if !self.dropping {
            out.push((
                Arith {
                    last_zero: true,
                    ..self
                },
                vec![s, q],
            ));
        }
        out
    }

    fn block(self, first: Letter, second: Letter) -> Vec<(Arith, Vec<Letter>)> {
        let read = |l: Letter, base: Base, negative: bool| -> Option<bool> {
            if l == Letter::E {
                Some(false)
            } else if l.base() == base && l.is_inverted() == negative {
                Some(true)
            } else {
                None
            }
        };
        let (Some(xb), Some(zb)) = (read(first, Base::S, self.x_negative), read(second, Base::Q, self.z_negative)) else {
            return Vec::new();
        };
        let v = self.coef_x * xb as i8 + self.coef_z * zb as i8 + self.carry;
        let bit = v.rem_euclid(2) == 1;
        let next = Arith {
            carry: v.div_euclid(2),
            ..self
        };
        if self.to_z {
            next.emit(xb, bit)
        } else {
            next.emit(bit, zb)
        }
    }

    fn finish(self) -> Option<Vec<Letter>> {
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
            let bit = carry % 2 == 1;
            let (_, _, s, q) = if self.to_z {
                self.letters(false, bit)
            } else {
                self.letters(bit, false)
            };
            out.extend([s, q]);
            last_zero = !bit;
            carry /= 2;
        }
        (self.dropping || !last_zero).then_some(out)
    }
}

/// The ways to compute the new track, one per guess of the input signs.
fn cases(op: Op) -> Vec<Arith> {
    let base = Arith {
        coef_x: 0,
        coef_z: 0,
        carry: 0,
        to_z: false,
        x_negative: false,
        z_negative: false,
        out_negative: false,
        dropping: false,
        last_zero: false,
    };
    let mut out = Vec::new();
    for x_negative in [false, true] {
        for z_negative in [false, true] {
            let b = Arith {
                x_negative,
                z_negative,
                ..base
            };
            match op {
                Op::IncX => out.push(Arith {
                    coef_x: 1,
                    carry: if x_negative { -1 } else { 1 },
                    out_negative: x_negative,
                    ..b
                }),
                Op::IncZ => out.push(Arith {
                    coef_z: 1,
                    carry: if z_negative { -1 } else { 1 },
                    out_negative: z_negative,
                    to_z: true,
                    ..b
                }),
                Op::AddXToZ if x_negative == z_negative => out.push(Arith {
                    coef_x: 1,
                    coef_z: 1,
                    out_negative: z_negative,
                    to_z: true,
                    ..b
                }),
                Op::AddXToZ => {
                    out.push(Arith {
                        coef_x: -1,
                        coef_z: 1,
                        out_negative: z_negative,
                        to_z: true,
                        ..b
                    });
                    out.push(Arith {
                        coef_x: 1,
                        coef_z: -1,
                        out_negative: x_negative,
                        to_z: true,
                        ..b
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum State {
    /// In the `p`-run: its sign once known, and whether one `p-` was
    /// already dropped.
    Prefix(Option<bool>, bool),
    Blocks(Arith, Option<Letter>),
    End,
}

struct Multiplier {
    op: Op,
}

impl Transducer for Multiplier {
    type State = State;

    fn initial(&self) -> State {
        State::Prefix(None, false)
    }

    fn moves(&self, s: &State, input: Option<Letter>) -> Vec<(State, Vec<Letter>)> {
        let mut out = Vec::new();
        match (*s, input) {
            (State::Prefix(sign, dropped), Some(l)) if l.base() == Base::P => {
                let neg = l.is_inverted();
                if sign == Some(!neg) {
                    return out;
                }
                let drop = self.op == Op::AddXToZ && neg && !dropped;
                let written = if drop { Vec::new() } else { vec![l] };
                out.push((State::Prefix(Some(neg), dropped || drop), written));
            }
            (State::Prefix(sign, dropped), None) => {
                let extra = if self.op == Op::AddXToZ {
                    match sign {
                        Some(true) if dropped => Some(Vec::new()),
                        Some(true) => None,
                        _ => Some(vec![Letter::P]),
                    }
                } else {
                    Some(Vec::new())
                };
                if let Some(extra) = extra {
                    out.extend(cases(self.op).into_iter().map(|a| (State::Blocks(a, None), extra.clone())));
                }
            }
            (State::Blocks(a, None), Some(l)) => out.push((State::Blocks(a, Some(l)), Vec::new())),
            (State::Blocks(a, Some(first)), Some(l)) => {
                out.extend(a.block(first, l).into_iter().map(|(a, w)| (State::Blocks(a, None), w)));
            }
            (State::Blocks(a, None), None) => {
                if let Some(w) = a.finish() {
                    out.push((State::End, w));
                }
            }
            _ => {}
        }
        out
    }

    fn is_final(&self, s: &State) -> bool {
        *s == State::End
    }
}
