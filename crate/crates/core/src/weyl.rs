//! Weyl group actions on weights and the dominance order.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

#[cfg(test)]
use crate::error::Error;
use crate::error::Result;
use crate::rootdata::{RootDatum, Weight};

/// Product `s_{l_1} s_{l_2} ⋯ s_{l_k}` of simple reflections, 1-based
/// letters. The rightmost letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> WeylWord {
        WeylWord(letters)
    }

    pub fn identity() -> WeylWord {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.0.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        self.0.iter().try_for_each(|&i| datum.check_index(i))
    }

    /// `self · other`.
    pub fn compose(&self, other: &WeylWord) -> WeylWord {
        WeylWord(self.0.iter().chain(&other.0).copied().collect())
    }

    /// The inverse element (reversed word).
    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

/// Applies `s_i` (0-based) in place: `λ ← λ − λ_i α_i`.
#[inline]
pub fn reflect_in_place(datum: &RootDatum, i: usize, coords: &mut [i64]) {
    let c = coords[i];
    if c != 0 {
        for &(r, v) in datum.simple_root_column(i) {
            coords[r] -= c * v;
        }
    }
}

/// `s_i(λ)` with 1-based `i`.
pub fn reflect(datum: &RootDatum, i: usize, lambda: &Weight) -> Result<Weight> {
    datum.check_index(i)?;
    datum.check_weight(lambda)?;
    let mut out = lambda.clone();
    reflect_in_place(datum, i - 1, out.coords_mut());
    Ok(out)
}

/// `w(λ)`.
pub fn apply_word(datum: &RootDatum, word: &WeylWord, lambda: &Weight) -> Result<Weight> {
    word.validate(datum)?;
    datum.check_weight(lambda)?;
    let mut out = lambda.clone();
    for &i in word.letters().iter().rev() {
        reflect_in_place(datum, i - 1, out.coords_mut());
    }
    Ok(out)
}

/// Result of [`make_dominant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantForm {
    pub dominant: Weight,
    /// `word` applied to the input gives `dominant`.
    pub word: WeylWord,
    /// False when the dominant representative lies on a wall.
    pub regular: bool,
}

/// Greedy leftmost-negative reflection to the dominant chamber; returns the
/// number of reflections used. Hot-loop form of [`make_dominant`].
#[inline]
pub fn dominate_in_place(datum: &RootDatum, coords: &mut [i64]) -> usize {
    let mut steps = 0;
    while let Some(i) = coords.iter().position(|&c| c < 0) {
        reflect_in_place(datum, i, coords);
        steps += 1;
    }
    steps
}

pub fn make_dominant(datum: &RootDatum, lambda: &Weight) -> DominantForm {
    let mut coords = lambda.clone();
    let mut applied = Vec::new();
    while let Some(i) = coords.coords().iter().position(|&c| c < 0) {
        reflect_in_place(datum, i, coords.coords_mut());
        applied.push(i + 1);
    }
    applied.reverse();
    let regular = coords.coords().iter().all(|&c| c != 0);
    DominantForm {
        dominant: coords,
        word: WeylWord(applied),
        regular,
    }
}

/// Dominant representative of the orbit.
pub fn dominant_representative(datum: &RootDatum, lambda: &Weight) -> Weight {
    let mut out = lambda.clone();
    dominate_in_place(datum, out.coords_mut());
    out
}

/// Word for the longest element: the one taking `−ρ` to `ρ`.
pub fn longest_word(datum: &RootDatum) -> WeylWord {
    make_dominant(datum, &-datum.weyl_vector()).word
}

/// `w₀(λ)`; for dominant `λ` this is `−(−λ)⁺`, `(·)⁺` the dominant representative.
pub fn w0_action(datum: &RootDatum, lambda: &Weight) -> Weight {
    if lambda.is_dominant() {
        let dual = dominant_representative(datum, &-lambda);
        return -&dual;
    }
    let mut out = lambda.clone();
    for &i in longest_word(datum).letters().iter().rev() {
        reflect_in_place(datum, i - 1, out.coords_mut());
    }
    out
}

/// Highest weight `λ*` of the dual module.
pub fn dual_weight(datum: &RootDatum, lambda: &Weight) -> Result<Weight> {
    datum.check_dominant(lambda)?;
    Ok(dominant_representative(datum, &-lambda))
}

/// `μ ⪯ λ`: `λ − μ` is a non-negative integer combination of simple roots.
pub fn dominance_leq(datum: &RootDatum, mu: &Weight, lambda: &Weight) -> bool {
    let diff = lambda - mu;
    let det = datum.determinant();
    datum
        .scaled_root_coordinates(diff.coords())
        .iter()
        .all(|&n| n >= 0 && n % det == 0)
}

/// Slice form of [`dominance_leq`] without allocation of a [`Weight`].
#[inline]
pub fn dominance_leq_coords(datum: &RootDatum, mu: &[i64], lambda: &[i64]) -> bool {
    let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    let det = datum.determinant();
    datum
        .scaled_root_coordinates(&diff)
        .iter()
        .all(|&n| n >= 0 && n % det == 0)
}

/// W-orbit of a dominant weight, generated downward from it.
pub fn orbit(datum: &RootDatum, dominant: &Weight) -> Vec<Weight> {
    debug_assert!(dominant.is_dominant());
    let mut seen: HashSet<Weight> = HashSet::from([dominant.clone()]);
    let mut out = vec![dominant.clone()];
    let mut frontier = vec![dominant.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for i in 0..datum.rank() {
                if x[i] > 0 {
                    let mut y = x.clone();
                    reflect_in_place(datum, i, y.coords_mut());
                    if seen.insert(y.clone()) {
                        next.push(y.clone());
                        out.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// Orbit size `|W·λ|` for dominant `λ`.
pub fn orbit_size(datum: &RootDatum, dominant: &Weight) -> usize {
    orbit(datum, dominant).len()
}

/// Orbit of a regular dominant weight with the sign of the unique element
/// reaching each point.
pub fn signed_orbit(datum: &RootDatum, regular: &Weight) -> Vec<(Weight, i64)> {
    debug_assert!(regular.coords().iter().all(|&c| c > 0));
    let mut sign: HashMap<Weight, i64> = HashMap::from([(regular.clone(), 1)]);
    let mut out = vec![(regular.clone(), 1)];
    let mut frontier = vec![(regular.clone(), 1i64)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (x, s) in &frontier {
            for i in 0..datum.rank() {
                if x[i] > 0 {
                    let mut y = x.clone();
                    reflect_in_place(datum, i, y.coords_mut());
                    if !sign.contains_key(&y) {
                        sign.insert(y.clone(), -s);
                        next.push((y.clone(), -s));
                        out.push((y, -s));
                    }
                }
            }
        }
        frontier = next;
    }
    out
}

/// One word for every element of `W`, found through the free orbit of ρ.
/// Only sensible for small groups.
pub fn group_elements(datum: &RootDatum) -> Vec<WeylWord> {
    let rho = datum.weyl_vector().clone();
    let mut words: HashMap<Weight, WeylWord> = HashMap::from([(rho.clone(), WeylWord::identity())]);
    let mut order = vec![rho.clone()];
    let mut frontier = vec![rho];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            let word = words[x].clone();
            for i in 0..datum.rank() {
                if x[i] > 0 {
                    let mut y = x.clone();
                    reflect_in_place(datum, i, y.coords_mut());
                    if !words.contains_key(&y) {
                        let w = WeylWord(
                            std::iter::once(i + 1)
                                .chain(word.0.iter().copied())
                                .collect(),
                        );
                        words.insert(y.clone(), w);
                        order.push(y.clone());
                        next.push(y);
                    }
                }
            }
        }
        frontier = next;
    }
    order
        .into_iter()
        .map(|y| words.remove(&y).expect("recorded"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(t: &str) -> RootDatum {
        RootDatum::simply_connected(t).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn reflection_examples() {
        assert_eq!(
            reflect(&sc("A3"), 2, &w(&[0, 1, 0])).unwrap(),
            w(&[1, -1, 1])
        );
        assert_eq!(
            reflect(&sc("D5"), 5, &w(&[1, 1, 1, 1, 1])).unwrap(),
            w(&[1, 1, 2, 1, -1])
        );
        assert_eq!(reflect(&sc("G2"), 1, &w(&[0, 0])).unwrap(), w(&[0, 0]));
        assert!(matches!(
            reflect(&sc("A2"), 3, &w(&[1, 0])),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        ));
        assert!(matches!(
            reflect(&sc("A2"), 0, &w(&[1, 0])),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn make_dominant_examples() {
        let a1 = sc("A1");
        let f = make_dominant(&a1, &w(&[-3]));
        assert_eq!(
            f,
            DominantForm {
                dominant: w(&[3]),
                word: WeylWord::new(vec![1]),
                regular: true
            }
        );

        let a2 = sc("A2");
        let f = make_dominant(&a2, &w(&[-1, -1]));
        assert_eq!(f.dominant, w(&[1, 1]));
        assert_eq!(f.word.len(), 3);
        assert_eq!(f.word.sign(), -1);
        assert!(f.regular);
        assert_eq!(apply_word(&a2, &f.word, &w(&[-1, -1])).unwrap(), f.dominant);

        let f = make_dominant(&a2, &w(&[1, -1]));
        assert!(!f.regular);
        assert_eq!(f.dominant, w(&[0, 1]));
    }

    #[test]
    fn w0_examples() {
        assert_eq!(w0_action(&sc("A2"), &w(&[1, 0])), w(&[0, -1]));
        let e6 = sc("E6");
        assert_eq!(
            w0_action(&e6, &w(&[0, 1, 0, 0, 0, 0])),
            w(&[0, -1, 0, 0, 0, 0])
        );
        assert_eq!(
            w0_action(&e6, &w(&[1, 0, 0, 0, 0, 0])),
            w(&[0, 0, 0, 0, 0, -1])
        );
        let b2 = sc("B2");
        for l in [w(&[1, 0]), w(&[2, 3]), w(&[-1, 4])] {
            assert_eq!(w0_action(&b2, &l), -&l);
        }
        let a2 = sc("A2");
        assert_eq!(w0_action(&a2, &w(&[2, -1])), w(&[1, -2]));
        assert_eq!(longest_word(&sc("E6")).len(), 36);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(&sc("A2"), &w(&[1, 0])).unwrap(), w(&[0, 1]));
        assert_eq!(
            dual_weight(&sc("D4"), &w(&[1, 0, 0, 0])).unwrap(),
            w(&[1, 0, 0, 0])
        );
        assert_eq!(
            dual_weight(&sc("D5"), &w(&[0, 0, 0, 1, 0])).unwrap(),
            w(&[0, 0, 0, 0, 1])
        );
        assert_eq!(
            dual_weight(&sc("F4"), &Weight::zero(4)).unwrap(),
            Weight::zero(4)
        );
        assert!(matches!(
            dual_weight(&sc("A2"), &w(&[1, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn dominance_examples() {
        let a1 = sc("A1");
        assert!(dominance_leq(&a1, &w(&[0]), &w(&[2])));
        assert!(!dominance_leq(&a1, &w(&[1]), &w(&[2])));
        assert!(dominance_leq(&sc("A2"), &w(&[0, 0]), &w(&[1, 1])));
        assert!(dominance_leq(
            &sc("E6"),
            &w(&[1, 2, 0, 0, 3, 1]),
            &w(&[1, 2, 0, 0, 3, 1])
        ));
    }

    #[test]
    fn group_orders() {
        for (t, n) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A1xA1", 4),
            ("A3", 24),
            ("B3", 48),
        ] {
            let d = sc(t);
            let elems = group_elements(&d);
            assert_eq!(elems.len(), n, "{t}");
            let images: HashSet<Weight> = elems
                .iter()
                .map(|e| apply_word(&d, e, d.weyl_vector()).unwrap())
                .collect();
            assert_eq!(images.len(), n);
        }
        assert_eq!(orbit_size(&sc("E6"), &w(&[1, 1, 1, 1, 1, 1])), 51_840);
    }

    #[test]
    fn signed_orbit_signs_match_words() {
        let d = sc("B2");
        let rho = d.weyl_vector().clone();
        let signs: HashMap<Weight, i64> = signed_orbit(&d, &rho).into_iter().collect();
        for e in group_elements(&d) {
            assert_eq!(signs[&apply_word(&d, &e, &rho).unwrap()], e.sign());
        }
    }
}
