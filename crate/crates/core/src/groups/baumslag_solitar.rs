use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{bad_literal, foreign, literal_fields, Group, GroupError};
use crate::words::{Base, Letter};

/// `BS(p, q) = <a, t | t a^p t^-1 = a^q>` for `1 <= p < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaumslagSolitar {
    p: u32,
    q: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TSign {
    Plus,
    Minus,
}

impl TSign {
    pub fn flip(self) -> TSign {
        match self {
            TSign::Plus => TSign::Minus,
            TSign::Minus => TSign::Plus,
        }
    }

    pub fn letter(self) -> Letter {
        match self {
            TSign::Plus => Letter::T,
            TSign::Minus => Letter::T.inverse(),
        }
    }
}

/// `a^a_exp t^sign`, with `a_exp < q` for `Plus` and `a_exp < p` for `Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnnLetter {
    pub a_exp: u32,
    pub sign: TSign,
}

impl HnnLetter {
    pub fn new(a_exp: u32, sign: TSign) -> HnnLetter {
        HnnLetter { a_exp, sign }
    }
}

/// `stem · a^tail`, the stem a freely reduced product of HNN letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BsNormalForm {
    p: u32,
    q: u32,
    pub stem: Vec<HnnLetter>,
    pub tail: BigInt,
}

impl BsNormalForm {
    pub fn params(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn is_identity(&self) -> bool {
        self.stem.is_empty() && self.tail.is_zero()
    }
}

impl BaumslagSolitar {
    pub fn new(p: u32, q: u32) -> Result<BaumslagSolitar, GroupError> {
        if p == 0 || p >= q {
            return Err(GroupError::BadParameters { p, q });
        }
        Ok(BaumslagSolitar { p, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Builds a normal form after checking digit ranges and free reduction.
    pub fn normal_form(&self, stem: Vec<HnnLetter>, tail: impl Into<BigInt>) -> Result<BsNormalForm, String> {
        for (i, l) in stem.iter().enumerate() {
            let bound = match l.sign {
                TSign::Plus => self.q,
                TSign::Minus => self.p,
            };
            if l.a_exp >= bound {
                return Err(format!("stem letter {i} has a-exponent {} outside [0, {})", l.a_exp, bound));
            }
            if i > 0 && l.a_exp == 0 && stem[i - 1].sign == l.sign.flip() {
                return Err(format!("stem is not freely reduced at letter {i}"));
            }
        }
        Ok(BsNormalForm {
            p: self.p,
            q: self.q,
            stem,
            tail: tail.into(),
        })
    }

    fn check(&self, g: &BsNormalForm) -> Result<(), GroupError> {
        if (g.p, g.q) != (self.p, self.q) {
            return Err(GroupError::ParameterMismatch(self.p, self.q, g.p, g.q));
        }
        Ok(())
    }

    /// `g · a^n`.
    pub fn add_tail(&self, g: &BsNormalForm, n: impl Into<BigInt>) -> BsNormalForm {
        let mut out = g.clone();
        out.tail += n.into();
        out
    }

    /// `g · t^sign`.
    pub fn right_multiply_t(&self, g: &BsNormalForm, sign: TSign) -> BsNormalForm {
        // a^(m d) t^s = t^s a^(n d) with (m, n) = (q, p) for t and (p, q) for t^-1
        let (m, n) = match sign {
            TSign::Plus => (self.q, self.p),
            TSign::Minus => (self.p, self.q),
        };
        let (d, r) = g.tail.div_mod_floor(&BigInt::from(m));
        let mut out = g.clone();
        if r.is_zero() {
            if let Some(last) = g.stem.last().filter(|l| l.sign == sign.flip()) {
                out.tail = BigInt::from(last.a_exp) + d * n;
                out.stem.pop();
                return out;
            }
        }
        let r = u32::try_from(r).expect("remainder below q");
        out.stem.push(HnnLetter::new(r, sign));
        out.tail = d * n;
        out
    }

    pub fn right_multiply_letter(&self, g: &BsNormalForm, x: Letter) -> Result<BsNormalForm, GroupError> {
        if let Some(n) = x.a_power() {
            return Ok(self.add_tail(g, n));
        }
        match x.base() {
            Base::T if x.is_inverted() => Ok(self.right_multiply_t(g, TSign::Minus)),
            Base::T => Ok(self.right_multiply_t(g, TSign::Plus)),
            _ => Err(foreign(x, self)),
        }
    }

    pub fn try_multiply(&self, g: &BsNormalForm, h: &BsNormalForm) -> Result<BsNormalForm, GroupError> {
        self.check(g)?;
        self.check(h)?;
        let mut out = g.clone();
        for l in &h.stem {
            out.tail += l.a_exp;
            out = self.right_multiply_t(&out, l.sign);
        }
        out.tail += &h.tail;
        Ok(out)
    }

    pub fn try_inverse(&self, g: &BsNormalForm) -> Result<BsNormalForm, GroupError> {
        self.check(g)?;
        let mut out = self.identity();
        out.tail = -&g.tail;
        for l in g.stem.iter().rev() {
            out = self.right_multiply_t(&out, l.sign.flip());
            out.tail -= l.a_exp;
        }
        Ok(out)
    }
}

impl Group for BaumslagSolitar {
    type Element = BsNormalForm;

    fn name(&self) -> String {
        format!("BS({}, {})", self.p, self.q)
    }

    fn identity(&self) -> BsNormalForm {
        BsNormalForm {
            p: self.p,
            q: self.q,
            stem: Vec::new(),
            tail: BigInt::zero(),
        }
    }

    /// Panics when either argument belongs to another `BS(p, q)`; see
    /// [`BaumslagSolitar::try_multiply`].
    fn multiply(&self, g: &BsNormalForm, h: &BsNormalForm) -> BsNormalForm {
        self.try_multiply(g, h).expect("elements of this group")
    }

    fn inverse(&self, g: &BsNormalForm) -> BsNormalForm {
        self.try_inverse(g).expect("element of this group")
    }

    fn act(&self, g: &BsNormalForm, letter: Letter) -> Result<BsNormalForm, GroupError> {
        self.check(g)?;
        self.right_multiply_letter(g, letter)
    }

    fn metric_generators(&self) -> Vec<Letter> {
        (1..self.q).map(Letter::indexed).chain([Letter::T]).collect()
    }

    /// `stem=0+,1-;k=5`
    fn parse_element(&self, literal: &str) -> Result<BsNormalForm, GroupError> {
        let mut stem = Vec::new();
        let mut tail = None;
        for (key, value) in literal_fields(literal, ';')? {
            match key {
                "stem" => {
                    for item in value.split(',').map(str::trim).filter(|v| !v.is_empty()) {
                        let (digits, sign) = match item.as_bytes().last() {
                            Some(b'+') => (&item[..item.len() - 1], TSign::Plus),
                            Some(b'-') => (&item[..item.len() - 1], TSign::Minus),
                            _ => return Err(bad_literal(literal, format!("stem letter {item:?} lacks a sign"))),
                        };
                        let a_exp = digits
                            .parse()
                            .map_err(|_| bad_literal(literal, format!("bad a-exponent in {item:?}")))?;
                        stem.push(HnnLetter::new(a_exp, sign));
                    }
                }
                "k" => {
                    tail = Some(
                        value
                            .parse::<BigInt>()
                            .map_err(|_| bad_literal(literal, format!("bad integer {value:?}")))?,
                    )
                }
                other => return Err(bad_literal(literal, format!("unknown field {other:?}"))),
            }
        }
        self.normal_form(stem, tail.unwrap_or_default())
            .map_err(|reason| bad_literal(literal, reason))
    }

    fn format_element(&self, g: &BsNormalForm) -> String {
        let stem: Vec<String> = g
            .stem
            .iter()
            .map(|l| format!("{}{}", l.a_exp, if l.sign == TSign::Plus { '+' } else { '-' }))
            .collect();
        format!("stem={};k={}", stem.join(","), g.tail)
    }
}
