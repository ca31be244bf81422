//! The semigroup `K_n`, with elements represented by their canonical words.

use std::fmt;

use crate::error::{Error, Result};
use crate::rewrite::{canonical_concat, canonical_form};
use crate::words::{check_rank, idempotent_word, mirror, LetterSet, Word};

/// An element of `K_n`. The wrapped word is always canonical, so equality and
/// ordering are those of the canonical words (length-lexicographic).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    canonical: Word,
}

impl Element {
    /// The element represented by `w`.
    pub fn from_word(w: &Word) -> Element {
        Element {
            canonical: canonical_form(w),
        }
    }

    /// Wraps a word the caller knows to be canonical.
    pub(crate) fn from_canonical_unchecked(canonical: Word) -> Element {
        debug_assert!(crate::words::is_canonical(&canonical));
        Element { canonical }
    }

    /// Parses a word in textual form and canonicalises it.
    pub fn parse(text: &str, rank: usize) -> Result<Element> {
        Ok(Element::from_word(&Word::parse(text, rank)?))
    }

    /// The unit `e`.
    pub fn identity(rank: usize) -> Result<Element> {
        Ok(Element {
            canonical: Word::empty(rank)?,
        })
    }

    /// The zero `f = a_n a_{n−1} ⋯ a_1`.
    pub fn zero(rank: usize) -> Result<Element> {
        Ok(Element::idempotent(&LetterSet::full(rank)?))
    }

    /// The generator `a_i`.
    pub fn generator(i: usize, rank: usize) -> Result<Element> {
        Ok(Element {
            canonical: Word::from_indices([i as u64], rank)?,
        })
    }

    /// The idempotent `e_X`: the decreasing product of the generators in `X`.
    pub fn idempotent(set: &LetterSet) -> Element {
        Element {
            canonical: idempotent_word(set),
        }
    }

    /// The canonical word `ζ(x)`.
    pub fn word(&self) -> &Word {
        &self.canonical
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.canonical.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        let n = self.canonical.rank_u8();
        self.canonical.len() == usize::from(n)
            && self
                .canonical
                .letters()
                .iter()
                .zip((1..=n).rev())
                .all(|(&a, b)| a == b)
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.canonical.rank_u8(),
                right: other.canonical.rank_u8(),
            });
        }
        let letters = canonical_concat(self.canonical.letters(), other.canonical.letters());
        Ok(Element {
            canonical: Word::from_raw(self.canonical.rank_u8(), letters),
        })
    }

    /// Right multiplication by the generator `a_i`; `i` must be in range.
    pub(crate) fn times_generator(&self, i: u8) -> Element {
        let letters = canonical_concat(self.canonical.letters(), &[i]);
        Element {
            canonical: Word::from_raw(self.canonical.rank_u8(), letters),
        }
    }

    /// The content `c(x)`: letters occurring in `ζ(x)`.
    pub fn content(&self) -> LetterSet {
        self.canonical.letter_set()
    }

    /// The antiautomorphism `τ` extending `a_i ↦ a_{n−i+1}`.
    pub fn antiautomorphism(&self) -> Element {
        Element::from_word(&mirror(&self.canonical).reversed())
    }

    /// `m(x)`: the least `i ∈ {0, …, n}` with `x · e_{1..i} = f`.
    pub fn m_value(&self) -> usize {
        let n = self.rank();
        (0..=n)
            .find(|&i| {
                let e = Element::idempotent(&LetterSet::range(1, i, n).expect("rank checked"));
                self.multiply(&e).expect("same rank").is_zero()
            })
            .expect("x · f = f, so i = n always qualifies")
    }

    /// The prefix map `π` on `K_n¹`: the element spelled by the part of `ζ(x)`
    /// before its single letter `1`.
    pub fn pi(&self) -> Result<Element> {
        let ls = self.canonical.letters();
        let Some(pos) = ls.iter().position(|&l| l == 1) else {
            return Err(Error::Domain(format!(
                "π undefined outside K_n¹: {} does not contain the letter 1",
                self
            )));
        };
        Ok(Element {
            canonical: self.canonical.factor(0, pos),
        })
    }

    /// Whether `c(x) ⊆ allowed`, i.e. `x` lies in the submonoid generated by
    /// the letters of `allowed` (the unit included).
    pub fn in_submonoid(&self, allowed: &LetterSet) -> bool {
        self.content().is_subset(allowed)
    }
}

/// Product of a sequence of elements, all of the given rank.
pub fn product<'a, I>(rank: usize, factors: I) -> Result<Element>
where
    I: IntoIterator<Item = &'a Element>,
{
    check_rank(rank)?;
    factors
        .into_iter()
        .try_fold(Element::identity(rank)?, |acc, x| acc.multiply(x))
}

/// Human-readable form: the canonical word, with the unit shown as `e`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.canonical.is_empty() {
            f.write_str("e")
        } else {
            write!(f, "{}", self.canonical)
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({:?}, n={})", self.canonical.to_string(), self.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(text: &str, n: usize) -> Element {
        Element::parse(text, n).unwrap()
    }

    #[test]
    fn from_word_examples() {
        assert_eq!(el("1 2 1", 2).word().to_string(), "2 1");
        assert!(el("", 3).is_identity());
        assert_eq!(el("3 2 1 1", 3), Element::zero(3).unwrap());
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(Element::identity(3).unwrap().word().to_string(), "");
        assert_eq!(Element::zero(3).unwrap().word().to_string(), "3 2 1");
        assert_eq!(Element::zero(1).unwrap().word().to_string(), "1");
        assert!(Element::zero(4).unwrap().is_zero());
        assert!(!el("3 2", 3).is_zero());
        assert!(!el("1 2", 2).is_zero());
        assert_eq!(Element::identity(2).unwrap().to_string(), "e");
    }

    #[test]
    fn multiply_examples() {
        let x = el("2", 2).multiply(&el("1 2", 2)).unwrap();
        assert_eq!(x, el("2 1", 2));
        assert!(matches!(
            el("1", 2).multiply(&el("1", 3)),
            Err(Error::RankMismatch { .. })
        ));
        assert_eq!(
            product(3, [&el("3", 3), &el("2", 3), &el("1", 3)]).unwrap(),
            Element::zero(3).unwrap()
        );
    }

    #[test]
    fn idempotent_examples() {
        let n = 3;
        assert_eq!(
            Element::idempotent(&LetterSet::full(n).unwrap()),
            Element::zero(n).unwrap()
        );
        assert_eq!(
            Element::idempotent(&LetterSet::empty(n).unwrap()),
            Element::identity(n).unwrap()
        );
        for set in LetterSet::all_subsets(n).unwrap() {
            let e = Element::idempotent(&set);
            assert_eq!(e.multiply(&e).unwrap(), e);
        }
    }

    #[test]
    fn content_examples() {
        assert!(Element::identity(3).unwrap().content().is_empty());
        assert_eq!(Element::zero(4).unwrap().content(), LetterSet::full(4).unwrap());
        assert_eq!(el("2 1", 2).content().to_string(), "{1,2}");
    }

    #[test]
    fn antiautomorphism_examples() {
        for n in 1..=5 {
            let f = Element::zero(n).unwrap();
            assert_eq!(f.antiautomorphism(), f);
            for i in 1..=n {
                let a = Element::generator(i, n).unwrap();
                assert_eq!(a.antiautomorphism(), Element::generator(n - i + 1, n).unwrap());
            }
        }
        // τ(a₁a₂) = τ(a₂)τ(a₁) = a₁a₂ in K_2.
        assert_eq!(el("1 2", 2).antiautomorphism().word().to_string(), "1 2");
        assert_eq!(el("2 1", 2).antiautomorphism().word().to_string(), "2 1");
    }

    #[test]
    fn m_value_examples() {
        for n in 1..=4 {
            assert_eq!(Element::zero(n).unwrap().m_value(), 0);
            let e2n = Element::idempotent(&LetterSet::range(2, n, n).unwrap());
            if n >= 2 {
                assert_eq!(e2n.m_value(), 1);
            }
            assert_eq!(Element::identity(n).unwrap().m_value(), n);
        }
    }

    #[test]
    fn pi_examples() {
        assert!(el("1", 2).pi().unwrap().is_identity());
        assert_eq!(el("2 1", 2).pi().unwrap(), el("2", 2));
        assert!(el("1 2", 2).pi().unwrap().is_identity());
        let err = el("2", 2).pi().unwrap_err();
        assert!(err.to_string().contains("π undefined outside K_n¹"));
        // π is not multiplicative.
        let (x, y) = (el("1 2", 2), el("1", 2));
        let xy = x.multiply(&y).unwrap();
        assert_eq!(xy, el("2 1", 2));
        assert_eq!(xy.pi().unwrap(), el("2", 2));
        assert_ne!(
            xy.pi().unwrap(),
            x.pi().unwrap().multiply(&y.pi().unwrap()).unwrap()
        );
    }

    fn letters(n: usize, max_len: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(1..=n as u8, 0..=max_len)
    }

    proptest! {
        // a_i φ(w) a_i = a_i φ(w) for w below i, and = φ(w) a_i for w above i.
        #[test]
        fn deletion_identities(n in 1usize..=5, i_pick in 0usize..5, raw in letters(5, 10)) {
            let i = (i_pick % n) as u8 + 1;
            let ai = Element::generator(i as usize, n).unwrap();
            let below: Vec<u8> = raw.iter().copied().filter(|&l| l < i).collect();
            let above: Vec<u8> = raw.iter().copied().filter(|&l| l > i && (l as usize) <= n).collect();
            let wb = Element::from_word(&Word::from_indices(below, n).unwrap());
            let wa = Element::from_word(&Word::from_indices(above, n).unwrap());
            let lhs = product(n, [&ai, &wb, &ai]).unwrap();
            prop_assert_eq!(lhs, ai.multiply(&wb).unwrap());
            let lhs = product(n, [&ai, &wa, &ai]).unwrap();
            prop_assert_eq!(lhs, wa.multiply(&ai).unwrap());
        }

        #[test]
        fn associativity_and_laws(n in 1usize..=5, a in letters(5, 8), b in letters(5, 8), c in letters(5, 8)) {
            let mk = |v: &Vec<u8>| {
                let v: Vec<u8> = v.iter().map(|&l| (l - 1) % n as u8 + 1).collect();
                Element::from_word(&Word::from_indices(v, n).unwrap())
            };
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
            let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let e = Element::identity(n).unwrap();
            let f = Element::zero(n).unwrap();
            prop_assert_eq!(e.multiply(&x).unwrap(), x.clone());
            prop_assert_eq!(x.multiply(&e).unwrap(), x.clone());
            prop_assert_eq!(f.multiply(&x).unwrap(), f.clone());
            prop_assert_eq!(x.multiply(&f).unwrap(), f.clone());
            let xy = x.multiply(&y).unwrap();
            prop_assert_eq!(xy.content(), x.content().union(&y.content()).unwrap());
            prop_assert_eq!(xy.antiautomorphism(), y.antiautomorphism().multiply(&x.antiautomorphism()).unwrap());
            prop_assert_eq!(x.antiautomorphism().antiautomorphism(), x);
        }
    }
}
