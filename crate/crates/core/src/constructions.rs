//! Explicit PRV-chain constructions inside a perfect submonoid.
//!
//! Every weight produced here is either a generator, a sum of two earlier
//! weights, or a PRV component `λ + w(μ)` of two earlier weights, so it
//! lies in any perfect submonoid containing the generators. Traces record
//! the derivations so they can be replayed and checked independently.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::charcalc::WeightMultiplicities;
use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::rootdata::{Family, RootDatum, SimpleType, Weight};
use crate::tensor::tensor_multiplicity_with;
use crate::weyl::{apply_word, make_dominant, orbit, reflect, WeylWord};

/// How a trace weight was obtained from earlier ones (0-based step indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    Generator,
    Sum {
        left: usize,
        right: usize,
    },
    /// Dominant representative of `steps[left] + word(steps[right])`.
    Prv {
        left: usize,
        word: WeylWord,
        right: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub weight: Weight,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final")]
    pub final_weight: Weight,
    /// `μ + step` for every step, when the trace was built against a fixed `μ`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shadow: Vec<Weight>,
}

impl ConstructionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.steps.iter().map(|s| &s.weight)
    }

    /// Number of PRV steps.
    pub fn prv_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s.derivation, Derivation::Prv { .. }))
            .count()
    }
}

/// Append-only trace under construction.
struct Builder<'a> {
    datum: &'a RootDatum,
    steps: Vec<TraceStep>,
}

impl<'a> Builder<'a> {
    fn new(datum: &'a RootDatum, start: Weight) -> Builder<'a> {
        Builder {
            datum,
            steps: vec![TraceStep {
                weight: start,
                derivation: Derivation::Generator,
            }],
        }
    }

    fn last(&self) -> usize {
        self.steps.len() - 1
    }

    fn weight(&self, i: usize) -> &Weight {
        &self.steps[i].weight
    }

    fn sum(&mut self, left: usize, right: usize) -> usize {
        let weight = self.weight(left) + self.weight(right);
        self.steps.push(TraceStep {
            weight,
            derivation: Derivation::Sum { left, right },
        });
        self.last()
    }

    /// Records `steps[left] + word(steps[right])`, which the constructions
    /// expect to be dominant already.
    fn prv(&mut self, left: usize, letters: Vec<usize>, right: usize) -> Result<usize> {
        let word = WeylWord::new(letters);
        let moved = apply_word(self.datum, &word, self.weight(right))?;
        let weight = self.weight(left) + &moved;
        if !weight.is_dominant() {
            return Err(Error::Internal(format!(
                "step {} + {:?}({}) = {weight} is not dominant",
                self.weight(left),
                word.letters(),
                self.weight(right)
            )));
        }
        self.steps.push(TraceStep {
            weight,
            derivation: Derivation::Prv { left, word, right },
        });
        Ok(self.last())
    }

    /// `k · steps[i]` by repeated addition; returns the index of the result.
    fn multiple(&mut self, i: usize, k: i64) -> usize {
        let mut cur = i;
        for _ in 1..k {
            cur = self.sum(cur, i);
        }
        cur
    }

    fn finish(self) -> ConstructionTrace {
        let final_weight = self.steps.last().expect("nonempty").weight.clone();
        ConstructionTrace {
            steps: self.steps,
            final_weight,
            shadow: Vec::new(),
        }
    }
}

/// Smallest `j ∈ supp(λ)` (1-based) joined to a vertex outside the support
/// within the same factor.
pub fn growth_index(datum: &RootDatum, lambda: &Weight) -> Option<usize> {
    let support: BTreeSet<usize> = lambda.support().into_iter().collect();
    support
        .iter()
        .find(|&&j| {
            datum
                .factor_range(datum.factor_of(j))
                .any(|i| !support.contains(&i) && datum.adjacent(i, j))
        })
        .map(|&j| j + 1)
}

/// `μ = 2λ + s_j(λ)` for the smallest eligible `j`; dominant with strictly
/// larger support.
pub fn support_growing_step(datum: &RootDatum, lambda: &Weight) -> Result<Weight> {
    datum.check_dominant(lambda)?;
    if lambda.is_zero() {
        return Err(Error::Precondition("weight is zero".into()));
    }
    let j = growth_index(datum, lambda).ok_or_else(|| {
        Error::Precondition(format!("{lambda} already has full support on its factors"))
    })?;
    Ok(&lambda.scale(2) + &reflect(datum, j, lambda)?)
}

/// A weight regular on every factor `λ` touches, with the multiplier `m`
/// such that `μ' + m·ω_λ` is dominant for every weight `μ'` of `L(λ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaLambda {
    pub trace: ConstructionTrace,
    pub multiplier: i64,
}

pub fn omega_lambda(datum: &RootDatum, lambda: &Weight) -> Result<OmegaLambda> {
    datum.check_dominant(lambda)?;
    let mut b = Builder::new(datum, lambda.clone());
    let mut cur = 0;
    while let Some(j) = growth_index(datum, b.weight(cur)) {
        let doubled = b.sum(cur, cur);
        cur = b.prv(doubled, vec![j], cur)?;
    }
    let omega = b.weight(cur).clone();
    let mut multiplier = 1;
    for x in orbit(datum, lambda) {
        for (i, &c) in x.coords().iter().enumerate() {
            if c < 0 {
                let o = omega[i];
                if o <= 0 {
                    return Err(Error::Internal(format!(
                        "{omega} is not regular at {}",
                        i + 1
                    )));
                }
                multiplier = multiplier.max((-c + o - 1) / o);
            }
        }
    }
    Ok(OmegaLambda {
        trace: b.finish(),
        multiplier,
    })
}

/// Runs the recipe for factor `k` (0-based) starting from `steps[start]`.
/// Reflections of the factor fix all other coordinates, so the same recipe
/// acts on a weight carrying other factors.
fn factor_recipe(b: &mut Builder<'_>, k: usize, start: usize) -> Result<usize> {
    let datum = b.datum;
    let simple: SimpleType = datum.cartan_type().factors()[k];
    let off = datum.factor_range(k).start;
    let g = |i: usize| off + i; // local 1-based -> global 1-based
    match simple.family {
        _ if simple.w0_is_minus_one() => Ok(start),
        Family::D => {
            let n = simple.rank;
            let nu1 = b.prv(start, vec![g(n)], start)?;
            b.prv(nu1, vec![g(n - 1)], nu1)
        }
        Family::E => {
            let nu1 = b.prv(start, vec![g(6)], start)?;
            let nu2 = b.prv(nu1, vec![g(5)], nu1)?;
            let nu3 = b.prv(nu2, vec![g(6), g(5)], nu1)?;
            let nu4 = b.prv(nu3, vec![g(1)], nu3)?;
            let nu5 = b.prv(nu4, vec![g(3)], nu4)?;
            b.prv(nu5, vec![g(1), g(3)], nu4)
        }
        Family::A => {
            let n = simple.rank;
            // ζ_{i+1,m} = ζ_{i+1,m-1} + s_{i-m+2}⋯s_i(ζ_i)
            let mut zeta = start;
            for i in 1..n {
                let mut cur = zeta;
                for m in 2..=i + 1 {
                    cur = b.prv(cur, (i + 2 - m..=i).map(g).collect(), zeta)?;
                }
                zeta = cur;
            }
            // θ_{i+1,m} = θ_{i+1,m-1} + s_{n+1-i+m-2}⋯s_{n+1-i}(θ_i)
            let mut theta = start;
            for i in 1..n {
                let mut cur = theta;
                for m in 2..=i + 1 {
                    cur = b.prv(
                        cur,
                        (n + 1 - i..=n - i + m - 1).rev().map(g).collect(),
                        theta,
                    )?;
                }
                theta = cur;
            }
            let a = b.weight(zeta)[g(n) - 1];
            let bb = b.weight(theta)[g(1) - 1];
            let zeta_b = b.multiple(zeta, bb);
            let theta_a = b.multiple(theta, a);
            Ok(b.sum(zeta_b, theta_a))
        }
        _ => Ok(start),
    }
}

fn check_factor_regular(
    datum: &RootDatum,
    omega: &Weight,
    factors: &BTreeSet<usize>,
) -> Result<()> {
    let inside = datum.factor_indices(factors);
    for (i, &c) in omega.coords().iter().enumerate() {
        let ok = if inside.contains(&i) { c > 0 } else { c == 0 };
        if !ok {
            return Err(Error::Precondition(format!(
                "{omega} must be positive on factors {factors:?} and zero elsewhere"
            )));
        }
    }
    Ok(())
}

/// Sequence `ω = ν₀, ν₁, …, ν_r` of dominant weights with
/// `w₀(ν_r) = −ν_r`, for one simple factor (1-based).
pub fn lemma_a1_sequence(
    datum: &RootDatum,
    factor: usize,
    omega: &Weight,
) -> Result<ConstructionTrace> {
    datum.check_dominant(omega)?;
    if factor == 0 || factor > datum.factor_count() {
        return Err(Error::IndexOutOfRange {
            index: factor,
            rank: datum.factor_count(),
        });
    }
    check_factor_regular(datum, omega, &BTreeSet::from([factor]))?;
    let mut b = Builder::new(datum, omega.clone());
    factor_recipe(&mut b, factor - 1, 0)?;
    Ok(b.finish())
}

/// A weight `η` with `w₀(η) = −η`, built from `ω` factor by factor over its
/// component support. The shadow records `μ + ν` for every step `ν`.
pub fn w0_antifixed_weight(
    datum: &RootDatum,
    omega: &Weight,
    mu: &Weight,
) -> Result<ConstructionTrace> {
    datum.check_dominant(omega)?;
    datum.check_dominant(mu)?;
    let support: BTreeSet<usize> = omega
        .support()
        .into_iter()
        .map(|i| datum.factor_of(i) + 1)
        .collect();
    check_factor_regular(datum, omega, &support)?;
    let inside = datum.factor_indices(&support);
    if mu.support().iter().any(|i| !inside.contains(i)) {
        return Err(Error::Precondition(format!(
            "{mu} is not supported inside {support:?}"
        )));
    }
    let mut b = Builder::new(datum, omega.clone());
    let mut cur = 0;
    for &k in &support {
        cur = factor_recipe(&mut b, k - 1, cur)?;
    }
    let mut trace = b.finish();
    trace.shadow = trace.steps.iter().map(|s| mu + &s.weight).collect();
    if let Some(bad) = trace.shadow.iter().find(|w| !w.is_dominant()) {
        return Err(Error::Internal(format!(
            "shadow weight {bad} is not dominant"
        )));
    }
    Ok(trace)
}

/// Replays a trace: recorded weights must match their derivations, and
/// every PRV step must be a summand of the product of its parents.
/// Malformed traces are errors; wrong weights give `Ok(false)`.
pub fn verify_prv_chain(datum: &RootDatum, trace: &ConstructionTrace) -> Result<bool> {
    verify_prv_chain_with(datum, trace, Strategy::default())
}

pub fn verify_prv_chain_with(
    datum: &RootDatum,
    trace: &ConstructionTrace,
    strategy: Strategy,
) -> Result<bool> {
    for (pos, step) in trace.steps.iter().enumerate() {
        datum.check_weight(&step.weight)?;
        let parents = match &step.derivation {
            Derivation::Generator => vec![],
            Derivation::Sum { left, right } => vec![*left, *right],
            Derivation::Prv { left, word, right } => {
                word.validate(datum)?;
                vec![*left, *right]
            }
        };
        if let Some(&p) = parents.iter().find(|&&p| p >= pos) {
            return Err(Error::MalformedTrace(format!(
                "step {pos} refers to step {p}"
            )));
        }
    }
    datum.check_weight(&trace.final_weight)?;
    if trace.steps.last().map(|s| &s.weight) != Some(&trace.final_weight) {
        return Ok(false);
    }
    let steps = &trace.steps;
    let checks = par::map(strategy, steps, |step| match &step.derivation {
        Derivation::Generator => step.weight.is_dominant(),
        Derivation::Sum { left, right } => {
            step.weight == &steps[*left].weight + &steps[*right].weight
        }
        Derivation::Prv { left, word, right } => {
            let (lambda, moved_from) = (&steps[*left].weight, &steps[*right].weight);
            let moved = apply_word(datum, word, moved_from).expect("validated");
            let nu = make_dominant(datum, &(lambda + &moved)).dominant;
            nu == step.weight && lambda.is_dominant() && moved_from.is_dominant() && {
                // the weight system of the moved factor is sampled only near
                // its extremal weight, which keeps large chains cheap
                let mut engine = WeightMultiplicities::new(datum, moved_from).expect("dominant");
                tensor_multiplicity_with(datum, &mut engine, lambda, &nu).expect("dominant") > 0
            }
        }
    });
    Ok(checks.into_iter().all(|ok| ok))
}
