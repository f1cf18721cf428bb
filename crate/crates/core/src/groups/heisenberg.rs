use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bad_literal, foreign, literal_fields, Group, GroupError};
use crate::words::{Base, Letter};

/// `H_3(Z)`: upper unitriangular integer 3x3 matrices, generated by
/// `s = (1,0,0)`, `p = (0,1,0)`, `q = (0,0,1)` (and `e`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Heisenberg;

/// The matrix `[[1, x, z], [0, 1, y], [0, 0, 1]]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisenbergTriple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl HeisenbergTriple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> HeisenbergTriple {
        HeisenbergTriple {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }
}

/// `(x1,y1,z1)(x2,y2,z2) = (x1+x2, y1+y2, z1+z2+x1*y2)`.
pub fn h3_multiply(g: &HeisenbergTriple, h: &HeisenbergTriple) -> HeisenbergTriple {
    HeisenbergTriple {
        x: &g.x + &h.x,
        y: &g.y + &h.y,
        z: &g.z + &h.z + &g.x * &h.y,
    }
}

/// `(x,y,z)^-1 = (-x, -y, xy - z)`.
pub fn h3_inverse(g: &HeisenbergTriple) -> HeisenbergTriple {
    HeisenbergTriple {
        x: -&g.x,
        y: -&g.y,
        z: &g.x * &g.y - &g.z,
    }
}

impl Group for Heisenberg {
    type Element = HeisenbergTriple;

    fn name(&self) -> String {
        "h3".into()
    }

    fn identity(&self) -> HeisenbergTriple {
        HeisenbergTriple::default()
    }

    fn multiply(&self, g: &HeisenbergTriple, h: &HeisenbergTriple) -> HeisenbergTriple {
        h3_multiply(g, h)
    }

    fn inverse(&self, g: &HeisenbergTriple) -> HeisenbergTriple {
        h3_inverse(g)
    }

    fn act(&self, g: &HeisenbergTriple, letter: Letter) -> Result<HeisenbergTriple, GroupError> {
        let sign = if letter.is_inverted() { -BigInt::one() } else { BigInt::one() };
        let mut out = g.clone();
        match letter.base() {
            Base::E => {}
            Base::S => out.x += sign,
            Base::P => {
                out.y += &sign;
                out.z += &g.x * sign;
            }
            Base::Q => out.z += sign,
            _ => return Err(foreign(letter, self)),
        }
        Ok(out)
    }

    fn metric_generators(&self) -> Vec<Letter> {
        vec![Letter::S, Letter::P, Letter::Q]
    }

    /// `x=3,y=-3,z=-4`
    fn parse_element(&self, literal: &str) -> Result<HeisenbergTriple, GroupError> {
        let mut coords: [Option<BigInt>; 3] = [None, None, None];
        for (key, value) in literal_fields(literal, ',')? {
            let slot = match key {
                "x" => 0,
                "y" => 1,
                "z" => 2,
                other => return Err(bad_literal(literal, format!("unknown field {other:?}"))),
            };
            let v: BigInt = value.parse().map_err(|_| bad_literal(literal, format!("bad integer {value:?}")))?;
            if coords[slot].replace(v).is_some() {
                return Err(bad_literal(literal, format!("field {key} given twice")));
            }
        }
        let [x, y, z] = coords;
        Ok(HeisenbergTriple {
            x: x.unwrap_or_else(BigInt::zero),
            y: y.unwrap_or_else(BigInt::zero),
            z: z.unwrap_or_else(BigInt::zero),
        })
    }

    fn format_element(&self, g: &HeisenbergTriple) -> String {
        format!("x={},y={},z={}", g.x, g.y, g.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn eval(s: &str) -> HeisenbergTriple {
        Heisenberg.evaluate(&s.parse::<Word>().unwrap()).unwrap()
    }

    #[test]
    fn generator_actions() {
        assert_eq!(eval("s"), HeisenbergTriple::new(1, 0, 0));
        assert_eq!(eval("sp"), HeisenbergTriple::new(1, 1, 1));
        assert_eq!(eval("ssp-"), HeisenbergTriple::new(2, -1, -2));
        assert_eq!(eval("eqe"), HeisenbergTriple::new(0, 0, 1));
    }

    #[test]
    fn product_law_examples() {
        let s = HeisenbergTriple::new(1, 0, 0);
        let p = HeisenbergTriple::new(0, 1, 0);
        assert_eq!(h3_multiply(&s, &p), HeisenbergTriple::new(1, 1, 1));
        let g = HeisenbergTriple::new(4, -7, 11);
        assert_eq!(h3_multiply(&Heisenberg.identity(), &g), g);
        assert_eq!(h3_multiply(&g, &h3_inverse(&g)), Heisenberg.identity());
        assert_eq!(eval("sspps-s-p-p-"), HeisenbergTriple::new(0, 0, 4));
    }

    #[test]
    fn literal_round_trip() {
        let g = Heisenberg.parse_element("x=3,y=-3,z=-4").unwrap();
        assert_eq!(g, HeisenbergTriple::new(3, -3, -4));
        assert_eq!(Heisenberg.format_element(&g), "x=3,y=-3,z=-4");
        assert!(Heisenberg.parse_element("x=1,w=2").is_err());
        assert!(Heisenberg.parse_element("x=one").is_err());
    }
}
