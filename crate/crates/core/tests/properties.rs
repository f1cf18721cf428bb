use cayley_automatic::groups::{
    BaumslagSolitar, BsNormalForm, Group, Heisenberg, HeisenbergTriple, Lamplighter, LamplighterElement, TSign,
};
use cayley_automatic::representations::{BsRepresentation, H3Representation, LamplighterRepresentation, Representation};
use cayley_automatic::words::{apply_homomorphism, free_reduce, Letter, LetterMap, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn word_over(letters: Vec<Letter>, max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(proptest::sample::select(letters), 0..=max_len).prop_map(Word::new)
}

fn lamplighter_letters() -> Vec<Letter> {
    vec![Letter::A, Letter::T, Letter::T.inverse()]
}

fn h3_letters() -> Vec<Letter> {
    [Letter::S, Letter::P, Letter::Q].into_iter().flat_map(|l| [l, l.inverse()]).collect()
}

fn bs_letters(q: u32) -> Vec<Letter> {
    (1..q)
        .map(Letter::indexed)
        .chain([Letter::T])
        .flat_map(|l| [l, l.inverse()])
        .collect()
}

fn lamp_element() -> impl Strategy<Value = LamplighterElement> {
    (proptest::collection::btree_set(-8i64..8, 0..6), -10i64..10).prop_map(|(lit, m)| LamplighterElement::new(lit, m))
}

fn h3_element() -> impl Strategy<Value = HeisenbergTriple> {
    (-5000i64..5000, -40i64..40, -100_000i64..100_000).prop_map(|(x, y, z)| HeisenbergTriple::new(x, y, z))
}

/// `x ↦ m x + b` on the rationals, acting on the right: `a` adds 1 and `t`
/// divides by `q`, a faithful picture of `BS(1, q)`.
#[derive(Clone, Debug, PartialEq)]
struct Affine {
    m: BigRational,
    b: BigRational,
}

impl Affine {
    fn identity() -> Affine {
        Affine {
            m: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    fn then(&self, other: &Affine) -> Affine {
        Affine {
            m: &other.m * &self.m,
            b: &other.m * &self.b + &other.b,
        }
    }

    fn letter(q: u32, l: Letter) -> Affine {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let q = r(q as i64);
        match (l.a_power(), l.is_inverted()) {
            (Some(k), _) => Affine {
                m: BigRational::one(),
                b: r(k),
            },
            (None, false) => Affine {
                m: BigRational::one() / q,
                b: BigRational::zero(),
            },
            (None, true) => Affine {
                m: q,
                b: BigRational::zero(),
            },
        }
    }

    fn of_word(q: u32, w: &Word) -> Affine {
        w.iter().fold(Affine::identity(), |acc, &l| acc.then(&Affine::letter(q, l)))
    }
}

/// Writes a normal form out as a word: `a^i t^±` per stem letter, then `a^k`.
fn spell(g: &BsNormalForm) -> Word {
    let mut w = Word::empty();
    for h in &g.stem {
        w.extend_from(&Word::power(Letter::A, h.a_exp as i64));
        w.push(match h.sign {
            TSign::Plus => Letter::T,
            TSign::Minus => Letter::T.inverse(),
        });
    }
    w.extend_from(&Word::power(Letter::A, g.tail.to_i64().unwrap()));
    w
}

fn check_group_laws<G: Group>(group: &G, x: &G::Element, y: &G::Element, z: &G::Element) {
    let e = group.identity();
    assert_eq!(group.multiply(&group.multiply(x, y), z), group.multiply(x, &group.multiply(y, z)));
    assert_eq!(&group.multiply(x, &e), x);
    assert_eq!(&group.multiply(&e, x), x);
    assert_eq!(group.multiply(x, &group.inverse(x)), e);
    assert_eq!(group.multiply(&group.inverse(x), x), e);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lamplighter_group_laws(u in word_over(lamplighter_letters(), 16), v in word_over(lamplighter_letters(), 16), w in word_over(lamplighter_letters(), 16)) {
        let g = Lamplighter;
        let (x, y, z) = (g.evaluate(&u).unwrap(), g.evaluate(&v).unwrap(), g.evaluate(&w).unwrap());
        check_group_laws(&g, &x, &y, &z);
        prop_assert_eq!(g.evaluate(&u.concat(&v)).unwrap(), g.multiply(&x, &y));
        prop_assert_eq!(g.evaluate(&u.inverse()).unwrap(), g.inverse(&x));
    }

    #[test]
    fn h3_group_laws(u in word_over(h3_letters(), 16), v in word_over(h3_letters(), 16), w in word_over(h3_letters(), 16)) {
        let g = Heisenberg;
        let (x, y, z) = (g.evaluate(&u).unwrap(), g.evaluate(&v).unwrap(), g.evaluate(&w).unwrap());
        check_group_laws(&g, &x, &y, &z);
        prop_assert_eq!(g.evaluate(&u.concat(&v)).unwrap(), g.multiply(&x, &y));
        prop_assert_eq!(g.evaluate(&free_reduce(&u)).unwrap(), x);
    }

    #[test]
    fn bs_group_laws(pq in proptest::sample::select(vec![(1u32, 2u32), (1, 3), (2, 3)]), seed in proptest::collection::vec(0usize..64, 0..45)) {
        let (p, q) = pq;
        let g = BaumslagSolitar::new(p, q).unwrap();
        let letters = bs_letters(q);
        let words: Vec<Word> = seed.chunks(15).map(|c| c.iter().map(|&i| letters[i % letters.len()]).collect()).collect();
        let elems: Vec<BsNormalForm> = words.iter().map(|w| g.evaluate(w).unwrap()).collect();
        let pick = |i: usize| elems.get(i).cloned().unwrap_or_else(|| g.identity());
        check_group_laws(&g, &pick(0), &pick(1), &pick(2));
        let u = words.first().cloned().unwrap_or_default();
        let v = words.get(1).cloned().unwrap_or_default();
        prop_assert_eq!(g.evaluate(&u.concat(&v)).unwrap(), g.multiply(&pick(0), &pick(1)));
    }

    /// The normal form, the affine picture and the spelled-out normal form
    /// all agree in `BS(1, 2)` and `BS(1, 3)`.
    #[test]
    fn bs_affine_oracle(q in 2u32..4, u in word_over(bs_letters(3), 20), v in word_over(bs_letters(3), 20)) {
        let keep = |w: &Word| -> Word { w.iter().copied().filter(|l| l.a_power().map_or(true, |k| k.unsigned_abs() < q as u64)).collect() };
        let (u, v) = (keep(&u), keep(&v));
        let g = BaumslagSolitar::new(1, q).unwrap();
        let (x, y) = (g.evaluate(&u).unwrap(), g.evaluate(&v).unwrap());
        prop_assert_eq!(Affine::of_word(q, &spell(&x)), Affine::of_word(q, &u));
        prop_assert_eq!(x == y, Affine::of_word(q, &u) == Affine::of_word(q, &v));
    }

    #[test]
    fn lamplighter_round_trip(g in lamp_element()) {
        let r = LamplighterRepresentation::new();
        let w = r.encode(&g);
        prop_assert!(r.is_member(&w));
        prop_assert_eq!(r.decode(&w).unwrap(), g);
    }

    #[test]
    fn h3_round_trip(g in h3_element()) {
        let r = H3Representation::new();
        prop_assert_eq!(r.decode(&r.encode(&g)).unwrap(), g);
    }

    #[test]
    fn bs_round_trip(pq in proptest::sample::select(vec![(1u32, 2u32), (1, 3), (2, 3)]), w in word_over(bs_letters(3), 24)) {
        let (p, q) = pq;
        let g = BaumslagSolitar::new(p, q).unwrap();
        let w: Word = w.iter().copied().filter(|l| l.a_power().map_or(true, |k| k.unsigned_abs() < q as u64)).collect();
        let x = g.evaluate(&w).unwrap();
        let r = BsRepresentation::new(g);
        prop_assert_eq!(r.decode(&r.encode(&x)).unwrap(), x);
    }

    /// Lamps at nonnegative positions with the marker at or right of all of
    /// them: the representation word spells the element.
    #[test]
    fn lamplighter_coincidence(lit in proptest::collection::btree_set(0i64..10, 0..6), extra in 0i64..5) {
        let m = lit.iter().copied().max().unwrap_or(0) + extra;
        let g = LamplighterElement::new(lit, m);
        let r = LamplighterRepresentation::new();
        prop_assert_eq!(Lamplighter.evaluate(&r.encode(&g)).unwrap(), g);
    }

    #[test]
    fn h3_coincidence(y in -50i64..50) {
        let g = HeisenbergTriple::new(0, y, 0);
        prop_assert_eq!(Heisenberg.evaluate(&H3Representation::new().encode(&g)).unwrap(), g);
    }

    #[test]
    fn reencoding_keeps_evaluation(g in lamp_element()) {
        let map = LetterMap::parse("a=ae,t=te").unwrap();
        let r = cayley_automatic::representations::Reencoded::new(LamplighterRepresentation::new(), &map).unwrap();
        let plain = LamplighterRepresentation::new().encode(&g);
        let w = r.encode(&g);
        prop_assert_eq!(Lamplighter.evaluate(&w).unwrap(), Lamplighter.evaluate(&plain).unwrap());
        prop_assert_eq!(&w, &apply_homomorphism(&plain, r.letter_map()).unwrap());
    }
}

#[test]
fn bs_relations() {
    for (p, q) in [(1u32, 2u32), (1, 3), (2, 3)] {
        let g = BaumslagSolitar::new(p, q).unwrap();
        let lhs = Word::new(vec![Letter::T])
            .concat(&Word::power(Letter::A, p as i64))
            .concat(&Word::new(vec![Letter::T.inverse()]));
        assert_eq!(g.evaluate(&lhs).unwrap(), g.evaluate(&Word::power(Letter::A, q as i64)).unwrap());
    }
}
