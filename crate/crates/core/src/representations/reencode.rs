//! Moving a representation to another alphabet by a uniform-length letter
//! substitution `ξ`: `L' = ξ(L)` and `ψ' = ψ ∘ ξ⁻¹`.

use std::collections::{BTreeMap, HashMap};

use super::{not_in_language, sort_shortlex, Element, Representation, RepresentationError};
use crate::automata::SyncAutomaton;
use crate::groups::Group;
use crate::words::{apply_homomorphism, Letter, LetterMap, Word};

pub struct Reencoded<R: Representation> {
    inner: R,
    map: LetterMap,
    /// Image word back to the letter it replaces.
    preimage: HashMap<Word, Letter>,
}

impl<R: Representation> Reencoded<R> {
    /// Wraps `inner`. A letter of the old alphabet missing from `map` is sent
    /// to the formal inverse of its inverse's image. Fails if some letter
    /// still has no image, if two letters share an image, or if an image does
    /// not evaluate to the letter it replaces.
    pub fn new(inner: R, map: &LetterMap) -> Result<Reencoded<R>, RepresentationError> {
        let mut images: BTreeMap<Letter, Word> = BTreeMap::new();
        for l in inner.alphabet() {
            let image = match (map.image(&l), map.image(&l.inverse())) {
                (Some(w), _) => w.clone(),
                (None, Some(w)) => w.inverse(),
                (None, None) => return Err(RepresentationError::BadLetterMap(format!("no image for {l}"))),
            };
            images.insert(l, image);
        }
        let map = LetterMap::new(images.clone())?;
        if map.image_len() == 0 {
            return Err(RepresentationError::BadLetterMap("images are empty".into()));
        }
        let group = inner.group();
        let mut preimage = HashMap::new();
        for (l, image) in images {
            if group.evaluate(&image)? != group.evaluate(&Word::new(vec![l]))? {
                return Err(RepresentationError::BadLetterMap(format!(
                    "{image} does not evaluate to {l}"
                )));
            }
            if let Some(other) = preimage.insert(image.clone(), l) {
                return Err(RepresentationError::BadLetterMap(format!(
                    "{other} and {l} share the image {image}, so the substitution is not injective"
                )));
            }
        }
        Ok(Reencoded { inner, map, preimage })
    }

    pub fn inner(&self) -> &R {
        &self.inner
    }

    pub fn letter_map(&self) -> &LetterMap {
        &self.map
    }

    fn substitute(&self, w: &Word) -> Word {
        apply_homomorphism(w, &self.map).expect("map covers the alphabet")
    }

    /// `ξ⁻¹` on words made of whole image blocks.
    pub fn unsubstitute(&self, w: &Word) -> Result<Word, RepresentationError> {
        let len = self.map.image_len();
        if w.len() % len != 0 {
            return Err(not_in_language(w, w.len() - w.len() % len, "length is not a multiple of the image length"));
        }
        w.chunks(len)
            .enumerate()
            .map(|(i, block)| {
                self.preimage
                    .get(&Word::new(block.to_vec()))
                    .copied()
                    .ok_or_else(|| not_in_language(w, i * len, "block is not the image of a letter"))
            })
            .collect()
    }
}

impl<R: Representation> Representation for Reencoded<R> {
    type G = R::G;

    fn group(&self) -> &R::G {
        self.inner.group()
    }

    fn label(&self) -> String {
        format!("{} reencoded", self.inner.label())
    }

    fn alphabet(&self) -> Vec<Letter> {
        let mut letters: Vec<Letter> = self.preimage.keys().flat_map(|w| w.iter().copied()).collect();
        letters.sort();
        letters.dedup();
        letters
    }

    fn encode(&self, g: &Element<Self>) -> Word {
        self.substitute(&self.inner.encode(g))
    }

    fn decode(&self, w: &Word) -> Result<Element<Self>, RepresentationError> {
        let original = self.unsubstitute(w)?;
        self.inner.decode(&original).map_err(|e| match e {
            RepresentationError::NotInLanguage { pos, reason, .. } => {
                not_in_language(w, pos * self.map.image_len(), reason)
            }
            other => other,
        })
    }

    fn enumerate(&self, n: usize) -> Vec<Word> {
        let mut words: Vec<Word> = self
            .inner
            .enumerate(n / self.map.image_len())
            .iter()
            .map(|w| self.substitute(w))
            .collect();
        sort_shortlex(&mut words);
        words
    }

    fn language_automaton(&self) -> SyncAutomaton {
        self.inner
            .language_automaton()
            .substitute(&self.map)
            .expect("map covers the alphabet")
    }

    fn multiplier_generators(&self) -> Vec<Letter> {
        self.inner.multiplier_generators()
    }

    fn multiplier(&self, generator: Letter) -> Result<SyncAutomaton, RepresentationError> {
        Ok(self.inner.multiplier(generator)?.substitute(&self.map)?)
    }
}
