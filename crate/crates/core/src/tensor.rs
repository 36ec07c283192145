//! Decomposition of `L(λ) ⊗ L(μ)` into irreducibles.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::charcalc::{character, weyl_dimension, Character, WeightMultiplicities};
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::rootdata::{RootDatum, Weight};
use crate::weyl::{apply_word, dominate_in_place, make_dominant, signed_orbit, WeylWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDecomposition {
    pub lhs: Weight,
    pub rhs: Weight,
    /// `ν ↦ m^ν_{λ,μ}`.
    pub summands: Character,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, nu: &Weight) -> i64 {
        self.summands.get(nu)
    }

    pub fn support(&self) -> BTreeSet<Weight> {
        self.summands.weights().cloned().collect()
    }
}

pub fn tensor_decompose(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
) -> Result<TensorDecomposition> {
    tensor_decompose_with(datum, lambda, mu, Strategy::default())
}

/// Brauer–Klimyk: `Σ_{λ'∈Π(small)} n_{λ'} ε(w) L(w(λ'+big+ρ)−ρ)` over the
/// factor of smaller dimension.
pub fn tensor_decompose_with(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
    strategy: Strategy,
) -> Result<TensorDecomposition> {
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    let (small, big) = if weyl_dimension(datum, lambda)? <= weyl_dimension(datum, mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let weights: Vec<(Weight, i64)> = character(datum, small)?.expand(datum).into_iter().collect();
    let shift = big + datum.weyl_vector();
    let rho = datum.weyl_vector().coords();
    let totals = par::fold(
        strategy,
        &weights,
        HashMap::<Weight, i64>::new,
        |mut acc, (w, n)| {
            let mut xi = w + &shift;
            let steps = dominate_in_place(datum, xi.coords_mut());
            if xi.coords().iter().all(|&c| c > 0) {
                for (c, r) in xi.coords_mut().iter_mut().zip(rho) {
                    *c -= r;
                }
                let sign = if steps % 2 == 0 { 1 } else { -1 };
                *acc.entry(xi).or_insert(0) += sign * n;
            }
            acc
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let mut summands = BTreeMap::new();
    for (nu, m) in totals {
        if m < 0 {
            return Err(Error::Internal(format!(
                "negative tensor multiplicity {m} at {nu}"
            )));
        }
        if m > 0 {
            summands.insert(nu, m);
        }
    }
    Ok(TensorDecomposition {
        lhs: lambda.clone(),
        rhs: mu.clone(),
        summands: Character::from_map(summands),
    })
}

/// The set `X(λ, μ)` of highest weights of summands.
pub fn x_support(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<BTreeSet<Weight>> {
    Ok(tensor_decompose(datum, lambda, mu)?.support())
}

/// Dominant representative of `λ + w(μ)`.
pub fn prv_component(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
    word: &WeylWord,
) -> Result<Weight> {
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    let moved = apply_word(datum, word, mu)?;
    Ok(make_dominant(datum, &(lambda + &moved)).dominant)
}

/// When `λ + μ'` is dominant for every weight `μ'` of `L(μ)`, the product is
/// `⊕ L(λ+μ')^{n_{μ'}(μ)}`. Errors if that regime does not apply.
pub fn stable_multiplicity_check(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<bool> {
    datum.check_dominant(lambda)?;
    let expanded = character(datum, mu)?.expand(datum);
    let mut predicted = BTreeMap::new();
    for (w, n) in &expanded {
        let sum = lambda + w;
        if !sum.is_dominant() {
            return Err(Error::Precondition(format!(
                "{lambda} + {w} = {sum} is not dominant"
            )));
        }
        predicted.insert(sum, *n);
    }
    let actual = tensor_decompose(datum, lambda, mu)?;
    Ok(actual.summands.entries() == &predicted)
}

/// Single multiplicity `m^ν_{λ,μ} = Σ_{w∈W} ε(w) n_{w(ν+ρ)−ρ−μ}(λ)`,
/// evaluated without decomposing the whole product.
pub fn tensor_multiplicity(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
) -> Result<i64> {
    let mut engine = WeightMultiplicities::new(datum, lambda)?;
    tensor_multiplicity_with(datum, &mut engine, mu, nu)
}

/// As [`tensor_multiplicity`], reusing the weight multiplicities of `λ`.
pub fn tensor_multiplicity_with(
    datum: &RootDatum,
    engine: &mut WeightMultiplicities<'_>,
    mu: &Weight,
    nu: &Weight,
) -> Result<i64> {
    datum.check_dominant(mu)?;
    datum.check_dominant(nu)?;
    let shifted = nu + datum.weyl_vector();
    let offset = mu + datum.weyl_vector();
    let mut total = 0i64;
    for (y, sign) in signed_orbit(datum, &shifted) {
        let kappa = &y - &offset;
        let mut d = kappa.clone();
        dominate_in_place(datum, d.coords_mut());
        // cheap rejection before touching the engine
        if !crate::weyl::dominance_leq_coords(datum, d.coords(), engine.highest().coords()) {
            continue;
        }
        total += sign * engine.multiplicity(&d);
    }
    Ok(total)
}
