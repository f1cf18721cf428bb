//! Letters, words, free reduction, letter substitutions and the convolution of
//! several words into one word over a tuple alphabet.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot convolve an empty sequence of words")]
    EmptyConvolution,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed convolution: {0}")]
    MalformedConvolution(String),
    #[error("letter {0} has no image in the letter map")]
    MissingKey(Letter),
    #[error("letter map images must share one length (found {0} and {1})")]
    UnequalImageLengths(usize, usize),
}

/// Generator symbol without orientation.
///
/// `Indexed(i)` is the BS digit letter `a_i` for `i >= 2`; `a_1` is plain `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    E,
    A,
    Indexed(u32),
    T,
    S,
    P,
    Q,
}

/// A generator or a formal inverse of one.
///
/// The derived order is the fixed letter order used for every enumeration:
/// `e < a < a- < a2 < a2- < ... < t < t- < s < s- < p < p- < q < q-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    base: Base,
    inverted: bool,
}

impl Letter {
    pub const E: Letter = Letter::plain(Base::E);
    pub const A: Letter = Letter::plain(Base::A);
    pub const T: Letter = Letter::plain(Base::T);
    pub const S: Letter = Letter::plain(Base::S);
    pub const P: Letter = Letter::plain(Base::P);
    pub const Q: Letter = Letter::plain(Base::Q);

    const fn plain(base: Base) -> Letter {
        Letter {
            base,
            inverted: false,
        }
    }

    /// `a_i`; index 1 is the letter `a` itself and index 0 is `e`.
    pub fn indexed(i: u32) -> Letter {
        match i {
            0 => Letter::E,
            1 => Letter::A,
            _ => Letter::plain(Base::Indexed(i)),
        }
    }

    pub fn new(base: Base, inverted: bool) -> Letter {
        match base {
            Base::E => Letter::E,
            Base::Indexed(i) => Letter::indexed(i).with_inversion(inverted),
            _ => Letter { base, inverted },
        }
    }

    fn with_inversion(self, inverted: bool) -> Letter {
        if inverted {
            self.inverse()
        } else {
            self
        }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    pub fn inverse(&self) -> Letter {
        if self.base == Base::E {
            *self
        } else {
            Letter {
                base: self.base,
                inverted: !self.inverted,
            }
        }
    }

    /// The `a`-power carried by `a`, `a_i` and their inverses; `e` counts as 0.
    pub fn a_power(&self) -> Option<i64> {
        let magnitude = match self.base {
            Base::E => 0,
            Base::A => 1,
            Base::Indexed(i) => i as i64,
            _ => return None,
        };
        Some(if self.inverted { -magnitude } else { magnitude })
    }

    /// True for `x` followed by `x^-1`; `e` never cancels.
    pub fn cancels_with(&self, other: &Letter) -> bool {
        self.base != Base::E && self.base == other.base && self.inverted != other.inverted
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::E => f.write_str("e")?,
            Base::A => f.write_str("a")?,
            Base::Indexed(i) => write!(f, "a{i}")?,
            Base::T => f.write_str("t")?,
            Base::S => f.write_str("s")?,
            Base::P => f.write_str("p")?,
            Base::Q => f.write_str("q")?,
        }
        if self.inverted {
            f.write_str("-")?;
        }
        Ok(())
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let word: Word = s.parse()?;
        match word.as_slice() {
            [letter] => Ok(*letter),
            _ => Err(WordError::Parse {
                pos: 0,
                msg: format!("expected exactly one letter, got {:?}", s),
            }),
        }
    }
}

/// A finite sequence of letters; the empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `letter^exponent`, using the inverse letter for negative exponents.
    pub fn power(letter: Letter, exponent: i64) -> Word {
        let l = if exponent < 0 { letter.inverse() } else { letter };
        Word(vec![l; exponent.unsigned_abs() as usize])
    }

    /// Formal inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    /// Length-lexicographic comparison key.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses concatenated tokens `[a-z][0-9]*-?`, skipping ASCII whitespace.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            let base = match c {
                b'e' => Base::E,
                b'a' => Base::A,
                b't' => Base::T,
                b's' => Base::S,
                b'p' => Base::P,
                b'q' => Base::Q,
                _ => {
                    return Err(WordError::Parse {
                        pos: i,
                        msg: format!("unknown letter {:?}", c as char),
                    })
                }
            };
            i += 1;
            let digits_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let base = if i > digits_start {
                if base != Base::A {
                    return Err(WordError::Parse {
                        pos: digits_start,
                        msg: "only `a` takes an index".into(),
                    });
                }
                let index: u32 = s[digits_start..i].parse().map_err(|_| WordError::Parse {
                    pos: digits_start,
                    msg: "index out of range".into(),
                })?;
                if index == 0 {
                    return Err(WordError::Parse {
                        pos: digits_start,
                        msg: "index 0 is written `e`".into(),
                    });
                }
                Base::Indexed(index)
            } else {
                base
            };
            let inverted = i < bytes.len() && bytes[i] == b'-';
            if inverted {
                i += 1;
                if base == Base::E {
                    return Err(WordError::Parse {
                        pos: start,
                        msg: "`e` has no inverse token".into(),
                    });
                }
            }
            letters.push(Letter::new(base, inverted));
        }
        Ok(Word(letters))
    }
}

/// Removes adjacent `x x^-1` pairs until none remain. `e` is kept.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.iter() {
        match out.last() {
            Some(prev) if prev.cancels_with(&l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

/// Symbol of a convolution: `None` is the padding symbol.
pub type TupleSymbol = Vec<Option<Letter>>;

pub fn format_tuple(symbol: &[Option<Letter>]) -> String {
    let parts: Vec<String> = symbol
        .iter()
        .map(|s| s.map_or_else(|| "#".to_string(), |l| l.to_string()))
        .collect();
    format!("({})", parts.join(","))
}

/// Several words read in lockstep, shorter ones padded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConvolvedWord {
    tapes: usize,
    symbols: Vec<TupleSymbol>,
}

impl ConvolvedWord {
    /// Validates arity, the all-padding ban and that padding is never
    /// followed by a letter on the same tape.
    pub fn new(tapes: usize, symbols: Vec<TupleSymbol>) -> Result<ConvolvedWord, WordError> {
        if tapes == 0 {
            return Err(WordError::MalformedConvolution("zero tapes".into()));
        }
        let mut ended = vec![false; tapes];
        for (k, sym) in symbols.iter().enumerate() {
            if sym.len() != tapes {
                return Err(WordError::MalformedConvolution(format!(
                    "symbol {k} has arity {}, expected {tapes}",
                    sym.len()
                )));
            }
            if sym.iter().all(Option::is_none) {
                return Err(WordError::MalformedConvolution(format!(
                    "symbol {k} is all padding"
                )));
            }
            for (tape, s) in sym.iter().enumerate() {
                match s {
                    None => ended[tape] = true,
                    Some(_) if ended[tape] => {
                        return Err(WordError::MalformedConvolution(format!(
                            "tape {tape} resumes after padding at position {k}"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(ConvolvedWord { tapes, symbols })
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn symbols(&self) -> &[TupleSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn deconvolve(&self) -> Vec<Word> {
        (0..self.tapes)
            .map(|tape| self.symbols.iter().filter_map(|s| s[tape]).collect())
            .collect()
    }
}

impl fmt::Display for ConvolvedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "ε^{}", self.tapes);
        }
        for s in &self.symbols {
            f.write_str(&format_tuple(s))?;
        }
        Ok(())
    }
}

/// `w_1 ⊗ ... ⊗ w_n`.
pub fn convolve(words: &[Word]) -> Result<ConvolvedWord, WordError> {
    if words.is_empty() {
        return Err(WordError::EmptyConvolution);
    }
    let len = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let symbols = (0..len)
        .map(|k| words.iter().map(|w| w.get(k).copied()).collect())
        .collect();
    Ok(ConvolvedWord {
        tapes: words.len(),
        symbols,
    })
}

pub fn deconvolve(cw: &ConvolvedWord) -> Vec<Word> {
    cw.deconvolve()
}

/// Letter substitution whose images all have one common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    images: BTreeMap<Letter, Word>,
    image_len: usize,
}

impl LetterMap {
    pub fn new(images: BTreeMap<Letter, Word>) -> Result<LetterMap, WordError> {
        let mut lengths = images.values().map(|w| w.len());
        let image_len = lengths.next().unwrap_or(0);
        if let Some(other) = lengths.find(|&l| l != image_len) {
            return Err(WordError::UnequalImageLengths(image_len, other));
        }
        Ok(LetterMap { images, image_len })
    }

    pub fn identity(letters: &[Letter]) -> LetterMap {
        LetterMap {
            images: letters.iter().map(|&l| (l, Word::new(vec![l]))).collect(),
            image_len: 1,
        }
    }

    /// Parses `a=ae,t=te,t-=t-e`.
    pub fn parse(s: &str) -> Result<LetterMap, WordError> {
        let mut images = BTreeMap::new();
        for (idx, entry) in s.split(',').filter(|e| !e.trim().is_empty()).enumerate() {
            let (key, image) = entry.split_once('=').ok_or_else(|| WordError::Parse {
                pos: idx,
                msg: format!("entry {entry:?} lacks `=`"),
            })?;
            images.insert(key.trim().parse::<Letter>()?, image.trim().parse::<Word>()?);
        }
        LetterMap::new(images)
    }

    pub fn image_len(&self) -> usize {
        self.image_len
    }

    pub fn image(&self, letter: &Letter) -> Option<&Word> {
        self.images.get(letter)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Word)> {
        self.images.iter()
    }
}

pub fn apply_homomorphism(w: &Word, map: &LetterMap) -> Result<Word, WordError> {
    let mut out = Vec::with_capacity(w.len() * map.image_len());
    for l in w.iter() {
        let image = map.image(l).ok_or(WordError::MissingKey(*l))?;
        out.extend_from_slice(image);
    }
    Ok(Word(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints_tokens() {
        let word = w("ataatat-a");
        assert_eq!(word.len(), 8);
        assert_eq!(word.to_string(), "ataatat-a");
        assert_eq!(w("a3-a1e").to_string(), "a3-ae");
        assert!("x".parse::<Word>().is_err());
        assert!("e-".parse::<Word>().is_err());
        assert!("t3".parse::<Word>().is_err());
        assert!("a0".parse::<Word>().is_err());
    }

    #[test]
    fn letter_order_matches_enumeration_order() {
        let mut letters: Vec<Letter> = "q- p t- a2 a- e s a q a2- t s- p-"
            .split(' ')
            .map(|t| t.parse().unwrap())
            .collect();
        letters.sort();
        let rendered: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
        assert_eq!(
            rendered.join(" "),
            "e a a- a2 a2- t t- s s- p p- q q-"
        );
    }

    #[test]
    fn convolve_examples() {
        let ab = Word::new(vec![Letter::A, Letter::T]);
        let cw = convolve(&[ab.clone(), w("a")]).unwrap();
        assert_eq!(
            cw.symbols(),
            &[
                vec![Some(Letter::A), Some(Letter::A)],
                vec![Some(Letter::T), None]
            ]
        );
        assert!(convolve(&[w(""), w("")]).unwrap().is_empty());
        let cw = convolve(&[w("t"), w("aa")]).unwrap();
        assert_eq!(cw.to_string(), "(t,a)(#,a)");
        assert_eq!(convolve(&[]), Err(WordError::EmptyConvolution));
    }

    #[test]
    fn deconvolve_examples() {
        let cw = ConvolvedWord::new(
            2,
            vec![
                vec![Some(Letter::A), Some(Letter::A)],
                vec![Some(Letter::T), None],
            ],
        )
        .unwrap();
        assert_eq!(cw.deconvolve(), vec![w("at"), w("a")]);
        let empty = ConvolvedWord::new(2, vec![]).unwrap();
        assert_eq!(empty.deconvolve(), vec![w(""), w("")]);
        let cw = ConvolvedWord::new(
            2,
            vec![
                vec![Some(Letter::T), Some(Letter::A)],
                vec![None, Some(Letter::A)],
            ],
        )
        .unwrap();
        assert_eq!(deconvolve(&cw), vec![w("t"), w("aa")]);
    }

    #[test]
    fn rejects_malformed_padding() {
        let bad = ConvolvedWord::new(
            2,
            vec![vec![None, Some(Letter::A)], vec![Some(Letter::A), Some(Letter::A)]],
        );
        assert!(matches!(bad, Err(WordError::MalformedConvolution(_))));
        let all_pad = ConvolvedWord::new(2, vec![vec![None, None]]);
        assert!(all_pad.is_err());
        let arity = ConvolvedWord::new(2, vec![vec![Some(Letter::A)]]);
        assert!(arity.is_err());
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(free_reduce(&w("tt-a")), w("a"));
        assert_eq!(free_reduce(&w("ataat-tta")), w("ataata"));
        assert_eq!(free_reduce(&w("")), w(""));
        assert_eq!(free_reduce(&w("ee")), w("ee"));
        assert_eq!(free_reduce(&w("a t t- a-")), w(""));
    }

    #[test]
    fn homomorphism_examples() {
        let id = LetterMap::identity(&[Letter::A, Letter::T]);
        assert_eq!(apply_homomorphism(&w("at"), &id).unwrap(), w("at"));
        let pad = LetterMap::parse("a=ae,t=te").unwrap();
        assert_eq!(apply_homomorphism(&w("at"), &pad).unwrap(), w("aete"));
        assert_eq!(
            apply_homomorphism(&w("t-"), &pad),
            Err(WordError::MissingKey(Letter::T.inverse()))
        );
        assert!(matches!(
            LetterMap::parse("a=ae,t=t"),
            Err(WordError::UnequalImageLengths(_, _))
        ));
    }
}
