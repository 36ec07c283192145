//! Weight systems `Π(λ)` with exact multiplicities.
//!
//! Multiplicities come from Freudenthal's recursion
//!
//! ```text
//! (|λ+ρ|² − |μ+ρ|²) n_μ = 2 Σ_{α>0} Σ_{k≥1} (μ+kα, α) n_{μ+kα}
//! ```
//!
//! evaluated on dominant representatives only. The form is the datum's
//! integral scaling of the invariant form; both sides scale alike.
//! `n_μ` for dominant `μ` only depends on the dominant weights of the
//! interval `[μ, λ]`, which [`WeightMultiplicities`] fills on demand.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};
use crate::weyl::{dominance_leq_coords, dominate_in_place, orbit};

/// Dominant weights `μ ⪯ λ` with `λ − μ ∈ Q`, sorted lexicographically.
pub fn dominant_weights_below(datum: &RootDatum, lambda: &Weight) -> Result<Vec<Weight>> {
    datum.check_dominant(lambda)?;
    let mut out = dominant_interval(datum, lambda, None);
    out.sort();
    Ok(out)
}

/// Dominant weights between `floor` and `top` (all below `top` when `floor`
/// is `None`). Every dominant `μ < λ` lies below some dominant `λ − α`,
/// `α > 0`, so walking down by positive roots through dominant weights
/// reaches the whole interval.
fn dominant_interval(datum: &RootDatum, top: &Weight, floor: Option<&Weight>) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([top.clone()]);
    let mut queue = VecDeque::from([top.clone()]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for root in datum.positive_roots() {
            let y = &x - &root.weight;
            if !y.is_dominant() || seen.contains(&y) {
                continue;
            }
            if let Some(f) = floor {
                if !dominance_leq_coords(datum, f.coords(), y.coords()) {
                    continue;
                }
            }
            seen.insert(y.clone());
            queue.push_back(y);
        }
        out.push(x);
    }
    out
}

/// Lazily evaluated multiplicities `n_μ(λ)` of a fixed highest weight.
#[derive(Clone, Debug)]
pub struct WeightMultiplicities<'a> {
    datum: &'a RootDatum,
    highest: Weight,
    top_norm: i64,
    /// `F·α` per positive root, so `(μ, α)` is a dot product.
    root_forms: Vec<Vec<i64>>,
    /// Scaled `|α|²` per positive root.
    root_norms: Vec<i64>,
    memo: HashMap<Weight, i64>,
}

impl<'a> WeightMultiplicities<'a> {
    pub fn new(datum: &'a RootDatum, highest: &Weight) -> Result<WeightMultiplicities<'a>> {
        datum.check_dominant(highest)?;
        let shifted = highest + datum.weyl_vector();
        let top_norm = datum.scaled_form(shifted.coords(), shifted.coords());
        let rank = datum.rank();
        let root_forms = datum
            .positive_roots()
            .iter()
            .map(|r| {
                (0..rank)
                    .map(|i| {
                        let mut e = vec![0; rank];
                        e[i] = 1;
                        datum.scaled_form(&e, r.weight.coords())
                    })
                    .collect()
            })
            .collect();
        let root_norms = datum
            .positive_roots()
            .iter()
            .map(|r| r.norm2 * datum.determinant())
            .collect();
        let mut memo = HashMap::new();
        memo.insert(highest.clone(), 1);
        Ok(WeightMultiplicities {
            datum,
            highest: highest.clone(),
            top_norm,
            root_forms,
            root_norms,
            memo,
        })
    }

    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    /// Whether the dominant weight `d` lies in `Π(λ)`.
    #[inline]
    fn contains_dominant(&self, d: &[i64]) -> bool {
        dominance_leq_coords(self.datum, d, self.highest.coords())
    }

    /// `n_μ(λ)` for an arbitrary weight; zero outside `Π(λ)`.
    pub fn multiplicity(&mut self, mu: &Weight) -> i64 {
        let mut d = mu.clone();
        dominate_in_place(self.datum, d.coords_mut());
        self.dominant_multiplicity(&d)
    }

    fn dominant_multiplicity(&mut self, d: &Weight) -> i64 {
        if let Some(&m) = self.memo.get(d) {
            return m;
        }
        if !self.contains_dominant(d.coords()) {
            return 0;
        }
        let mut todo: Vec<Weight> = dominant_interval(self.datum, &self.highest, Some(d))
            .into_iter()
            .filter(|x| !self.memo.contains_key(x))
            .collect();
        self.evaluate(&mut todo);
        self.memo[d]
    }

    /// Fills the whole dominant part of `Π(λ)`.
    pub fn fill_all(&mut self) {
        let mut todo: Vec<Weight> = dominant_interval(self.datum, &self.highest, None)
            .into_iter()
            .filter(|x| !self.memo.contains_key(x))
            .collect();
        self.evaluate(&mut todo);
    }

    /// Evaluates weights closest to the top first, so every term of the
    /// recursion is already known.
    fn evaluate(&mut self, todo: &mut [Weight]) {
        let datum = self.datum;
        let depth = |x: &Weight| {
            datum
                .height((&self.highest - x).coords())
                .expect("same Q-class")
        };
        todo.sort_by_cached_key(|x| depth(x));
        let rho = datum.weyl_vector();
        for mu in todo.iter() {
            let shifted = mu + rho;
            let denom = self.top_norm - datum.scaled_form(shifted.coords(), shifted.coords());
            let mut numer: i128 = 0;
            for (ri, root) in datum.positive_roots().iter().enumerate() {
                let base: i64 = mu
                    .coords()
                    .iter()
                    .zip(&self.root_forms[ri])
                    .map(|(a, b)| a * b)
                    .sum();
                let mut y = mu.clone();
                let mut k = 1i64;
                loop {
                    for (c, a) in y.coords_mut().iter_mut().zip(root.weight.coords()) {
                        *c += a;
                    }
                    let mut d = y.clone();
                    dominate_in_place(datum, d.coords_mut());
                    if !self.contains_dominant(d.coords()) {
                        break;
                    }
                    let n = *self
                        .memo
                        .get(&d)
                        .expect("interval element evaluated in order");
                    numer += i128::from(base + k * self.root_norms[ri]) * i128::from(n);
                    k += 1;
                }
            }
            numer *= 2;
            assert!(denom > 0, "Freudenthal denominator must be positive");
            let denom = i128::from(denom);
            assert_eq!(
                numer % denom,
                0,
                "Freudenthal quotient is not integral at {mu}"
            );
            let m = i64::try_from(numer / denom).expect("multiplicity fits in i64");
            self.memo.insert(mu.clone(), m);
        }
    }

    /// Snapshot of the dominant multiplicities computed so far.
    pub fn into_character(mut self) -> Character {
        self.fill_all();
        Character::from_map(self.memo.into_iter().filter(|(_, m)| *m > 0).collect())
    }
}

/// Dominant weights with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    entries: BTreeMap<Weight, i64>,
}

#[derive(Serialize, Deserialize)]
struct CharacterEntry {
    weight: Weight,
    mult: i64,
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (w, &m) in &self.entries {
            seq.serialize_element(&CharacterEntry {
                weight: w.clone(),
                mult: m,
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<CharacterEntry>::deserialize(d)?;
        Ok(Character {
            entries: entries.into_iter().map(|e| (e.weight, e.mult)).collect(),
        })
    }
}

impl Character {
    /// Builds from dominant keys; zero entries are dropped.
    pub fn from_map(entries: BTreeMap<Weight, i64>) -> Character {
        Character {
            entries: entries.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    pub fn get(&self, mu: &Weight) -> i64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, i64> {
        &self.entries
    }

    /// `Σ mult(μ)·|W·μ|`.
    pub fn dimension(&self, datum: &RootDatum) -> BigUint {
        self.entries
            .iter()
            .map(|(w, &m)| BigUint::from(m as u64) * BigUint::from(orbit(datum, w).len()))
            .sum()
    }

    /// Every weight of the module with its multiplicity.
    pub fn expand(&self, datum: &RootDatum) -> HashMap<Weight, i64> {
        let mut out = HashMap::new();
        for (w, &m) in &self.entries {
            for x in orbit(datum, w) {
                out.insert(x, m);
            }
        }
        out
    }

    /// Inverse of [`Character::expand`]: keeps the dominant entries.
    pub fn collapse(full: &HashMap<Weight, i64>) -> Character {
        Character::from_map(
            full.iter()
                .filter(|(w, _)| w.is_dominant())
                .map(|(w, &m)| (w.clone(), m))
                .collect(),
        )
    }
}

pub fn character(datum: &RootDatum, lambda: &Weight) -> Result<Character> {
    Ok(WeightMultiplicities::new(datum, lambda)?.into_character())
}

/// `Π_{α>0} ⟨λ+ρ, α∨⟩ / ⟨ρ, α∨⟩`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<BigUint> {
    datum.check_dominant(lambda)?;
    let shifted = lambda + datum.weyl_vector();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for root in datum.positive_roots() {
        num *= BigUint::from(root.pair(shifted.coords()) as u64);
        den *= BigUint::from(root.pair(datum.weyl_vector().coords()) as u64);
    }
    let (q, r) = (&num / &den, &num % &den);
    if r != BigUint::ZERO {
        return Err(Error::Internal(format!(
            "Weyl dimension of {lambda} is not integral"
        )));
    }
    Ok(q)
}

/// Saturation under root strings: `λ − iα ∈ S` for `0 ≤ i ≤ ⟨λ, α∨⟩`,
/// for every root `α` of either sign.
pub fn is_saturated_weight_set(datum: &RootDatum, set: &HashSet<Weight>) -> bool {
    set.iter().all(|lambda| {
        datum.positive_roots().iter().all(|root| {
            let c = root.pair(lambda.coords());
            let step = if c >= 0 {
                -&root.weight
            } else {
                root.weight.clone()
            };
            let mut x = lambda.clone();
            for _ in 0..c.abs() {
                x = &x + &step;
                if !set.contains(&x) {
                    return false;
                }
            }
            true
        })
    })
}
