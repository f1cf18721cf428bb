use std::collections::BTreeSet;

use super::{bad_literal, foreign, literal_fields, Group, GroupError};
use crate::words::{Base, Letter};

/// `Z_2 wr Z` generated by `a` (toggle the current lamp) and `t` (move right).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Lamplighter;

/// Finite set of lit lamps plus the lamplighter position.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LamplighterElement {
    pub lit: BTreeSet<i64>,
    pub marker: i64,
}

/// Parameters of the right-first normal form
/// `a_{i_1} ... a_{i_k} a_{-j_1} ... a_{-j_l} t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfParams {
    pub k: usize,
    pub l: usize,
    /// Nonnegative lit positions, increasing.
    pub i: Vec<i64>,
    /// Absolute values of negative lit positions, increasing.
    pub j: Vec<i64>,
    pub m: i64,
}

impl LamplighterElement {
    pub fn new(lit: impl IntoIterator<Item = i64>, marker: i64) -> LamplighterElement {
        LamplighterElement {
            lit: lit.into_iter().collect(),
            marker,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lit.is_empty() && self.marker == 0
    }

    pub fn rf_params(&self) -> RfParams {
        let i: Vec<i64> = self.lit.iter().copied().filter(|&x| x >= 0).collect();
        let mut j: Vec<i64> = self.lit.iter().filter(|&&x| x < 0).map(|x| -x).collect();
        j.sort_unstable();
        RfParams {
            k: i.len(),
            l: j.len(),
            i,
            j,
            m: self.marker,
        }
    }
}

/// Wreath product law: `(L, m)(L', m') = (L Δ (L' + m), m + m')`.
pub fn lamp_multiply(g: &LamplighterElement, h: &LamplighterElement) -> LamplighterElement {
    let shifted: BTreeSet<i64> = h.lit.iter().map(|x| x + g.marker).collect();
    LamplighterElement {
        lit: g.lit.symmetric_difference(&shifted).copied().collect(),
        marker: g.marker + h.marker,
    }
}

impl Group for Lamplighter {
    type Element = LamplighterElement;

    fn name(&self) -> String {
        "lamplighter".into()
    }

    fn identity(&self) -> LamplighterElement {
        LamplighterElement::default()
    }

    fn multiply(&self, g: &LamplighterElement, h: &LamplighterElement) -> LamplighterElement {
        lamp_multiply(g, h)
    }

    fn inverse(&self, g: &LamplighterElement) -> LamplighterElement {
        LamplighterElement {
            lit: g.lit.iter().map(|x| x - g.marker).collect(),
            marker: -g.marker,
        }
    }

    fn act(&self, g: &LamplighterElement, letter: Letter) -> Result<LamplighterElement, GroupError> {
        let mut out = g.clone();
        match letter.base() {
            Base::E => {}
            Base::A => {
                if !out.lit.remove(&g.marker) {
                    out.lit.insert(g.marker);
                }
            }
            Base::T => out.marker += if letter.is_inverted() { -1 } else { 1 },
            _ => return Err(foreign(letter, self)),
        }
        Ok(out)
    }

    fn metric_generators(&self) -> Vec<Letter> {
        vec![Letter::A, Letter::T]
    }

    /// `lamps=-1,0,2;m=1`
    fn parse_element(&self, literal: &str) -> Result<LamplighterElement, GroupError> {
        let mut lit = BTreeSet::new();
        let mut marker = None;
        for (key, value) in literal_fields(literal, ';')? {
            match key {
                "lamps" => {
                    for v in value.split(',').filter(|v| !v.trim().is_empty()) {
                        let x: i64 = v.trim().parse().map_err(|_| bad_literal(literal, format!("bad lamp {v:?}")))?;
                        if !lit.insert(x) {
                            return Err(bad_literal(literal, format!("lamp {x} listed twice")));
                        }
                    }
                }
                "m" => marker = Some(value.parse().map_err(|_| bad_literal(literal, "bad marker"))?),
                other => return Err(bad_literal(literal, format!("unknown field {other:?}"))),
            }
        }
        Ok(LamplighterElement {
            lit,
            marker: marker.ok_or_else(|| bad_literal(literal, "missing m"))?,
        })
    }

    fn format_element(&self, g: &LamplighterElement) -> String {
        let lamps: Vec<String> = g.lit.iter().map(i64::to_string).collect();
        format!("lamps={};m={}", lamps.join(","), g.marker)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn eval(s: &str) -> LamplighterElement {
        Lamplighter.evaluate(&s.parse::<Word>().unwrap()).unwrap()
    }

    #[test]
    fn conjugate_lights_a_remote_lamp() {
        assert_eq!(eval("tat-"), LamplighterElement::new([1], 0));
    }

    #[test]
    fn multiply_examples() {
        let id = Lamplighter.identity();
        let a = eval("a");
        assert_eq!(lamp_multiply(&id, &a), LamplighterElement::new([0], 0));
        assert_eq!(lamp_multiply(&a, &a), id);
        let g = LamplighterElement::new([1], 0);
        let h = LamplighterElement::new([0], 0);
        assert_eq!(lamp_multiply(&g, &h), LamplighterElement::new([0, 1], 0));
        assert_eq!(lamp_multiply(&g, &h), eval("tat-a"));
    }

    #[test]
    fn rf_params_examples() {
        let g = LamplighterElement::new([-1, 0, 2], 1);
        let rf = g.rf_params();
        assert_eq!((rf.k, rf.l, rf.i.clone(), rf.j.clone(), rf.m), (2, 1, vec![0, 2], vec![1], 1));
        let rf = Lamplighter.identity().rf_params();
        assert_eq!((rf.k, rf.l, rf.m), (0, 0, 0));
        assert!(rf.i.is_empty() && rf.j.is_empty());
        let rf = LamplighterElement::new([-3], -3).rf_params();
        assert_eq!((rf.k, rf.l, rf.j.clone(), rf.m), (0, 1, vec![3], -3));
    }

    #[test]
    fn foreign_letters_rejected() {
        assert!(Lamplighter.evaluate(&"s".parse().unwrap()).is_err());
        assert_eq!(eval("e"), Lamplighter.identity());
    }

    #[test]
    fn literal_round_trip() {
        let g = Lamplighter.parse_element("lamps=-1,0,2;m=1").unwrap();
        assert_eq!(g, LamplighterElement::new([-1, 0, 2], 1));
        assert_eq!(Lamplighter.format_element(&g), "lamps=-1,0,2;m=1");
        assert!(Lamplighter.parse_element("lamps=1").is_err());
        assert!(Lamplighter.parse_element("lamps=1,1;m=0").is_err());
    }
}
