//! Perfect submonoids of dominant weights: monoids `L` with
//! `λ, μ ∈ L ⇒ X(λ, μ) ⊆ L`.
//!
//! A perfect submonoid with component support `Ξ₀` is the set of dominant
//! weights supported on `Ξ₀` whose class in `P/Q` lies in a fixed subgroup
//! of `(X ∩ P_{Ξ₀})/Q_{Ξ₀}`. Set-level computations are truncated to a
//! [`WeightBox`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::charcalc::{dominant_weights_below, WeightMultiplicities};
use crate::error::{Error, Result};
use crate::latticecalc::{enumerate_subgroups, Element, Subgroup};
use crate::par::{self, Strategy};
use crate::rootdata::{LatticeSpec, RootDatum, Weight};
use crate::tensor::tensor_multiplicity_with;
use crate::weyl::dominance_leq_coords;

pub const DEFAULT_BOX: i64 = 4;

/// Dominant weights with every fundamental coordinate at most `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightBox {
    pub bound: i64,
}

impl Default for WeightBox {
    fn default() -> Self {
        WeightBox { bound: DEFAULT_BOX }
    }
}

impl WeightBox {
    pub fn new(bound: i64) -> WeightBox {
        WeightBox { bound }
    }

    pub fn contains(&self, lambda: &Weight) -> bool {
        lambda
            .coords()
            .iter()
            .all(|&c| (0..=self.bound).contains(&c))
    }

    /// All `(B+1)^rank` points, lexicographically.
    pub fn members(&self, rank: usize) -> Vec<Weight> {
        if self.bound < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0i64; rank];
        loop {
            out.push(Weight::new(idx.clone()));
            let mut p = rank;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                if idx[p] < self.bound {
                    idx[p] += 1;
                    break;
                }
                idx[p] = 0;
            }
        }
    }
}

/// A finite generating set of dominant lattice weights.
#[derive(Clone, Debug)]
pub struct MonoidSpec {
    pub datum: RootDatum,
    pub generators: BTreeSet<Weight>,
}

#[derive(Serialize, Deserialize)]
struct MonoidFile {
    #[serde(rename = "type")]
    cartan_type: String,
    #[serde(default = "default_lattice")]
    lattice: LatticeSpec,
    generators: Vec<Weight>,
}

fn default_lattice() -> LatticeSpec {
    LatticeSpec::SimplyConnected
}

impl MonoidSpec {
    pub fn new(
        datum: RootDatum,
        generators: impl IntoIterator<Item = Weight>,
    ) -> Result<MonoidSpec> {
        let generators: BTreeSet<Weight> = generators.into_iter().collect();
        for g in &generators {
            datum.check_dominant(g)?;
            if !datum.in_lattice(g) {
                return Err(Error::NotInLattice(g.clone()));
            }
        }
        Ok(MonoidSpec { datum, generators })
    }

    /// Parses `{"type": "A2", "lattice": {...}, "generators": [[...], ...]}`.
    pub fn from_json(text: &str) -> Result<MonoidSpec> {
        let file: MonoidFile =
            serde_json::from_str(text).map_err(|e| Error::Usage(format!("monoid spec: {e}")))?;
        MonoidSpec::new(
            RootDatum::new(&file.cartan_type, file.lattice)?,
            file.generators,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MonoidFile {
            cartan_type: self.datum.cartan_type().to_string(),
            lattice: self.datum.lattice().clone(),
            generators: self.generators.iter().cloned().collect(),
        })
        .expect("monoid spec serializes")
    }
}

/// Symbolic description of a perfect submonoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectDescriptor {
    /// 1-based factor indices.
    pub support: BTreeSet<usize>,
    /// Image of the monoid in `P/Q`.
    pub cocenter_subgroup: Subgroup,
    /// Subgroup of the simply connected center on which every member acts
    /// trivially, in dual coordinates.
    pub center_subgroup: Subgroup,
}

impl PerfectDescriptor {
    fn from_subgroup(
        datum: &RootDatum,
        support: BTreeSet<usize>,
        image: Subgroup,
    ) -> PerfectDescriptor {
        let center_subgroup = image.annihilator(datum.cocenter());
        PerfectDescriptor {
            support,
            cocenter_subgroup: image,
            center_subgroup,
        }
    }

    /// Membership in the (unbounded) monoid.
    pub fn contains(&self, datum: &RootDatum, lambda: &Weight) -> bool {
        if lambda.len() != datum.rank() || !lambda.is_dominant() {
            return false;
        }
        let on_support = datum.factor_indices(&self.support);
        let outside_zero = lambda
            .coords()
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || on_support.contains(&i));
        outside_zero
            && datum.in_lattice(lambda)
            && self
                .cocenter_subgroup
                .contains(&datum.cocenter().project(lambda.coords()))
    }
}

/// 1-based factors on which some generator is nonzero.
pub fn component_support(spec: &MonoidSpec) -> BTreeSet<usize> {
    weights_support(&spec.datum, spec.generators.iter())
}

fn weights_support<'a>(
    datum: &RootDatum,
    weights: impl Iterator<Item = &'a Weight>,
) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for g in weights {
        for i in g.support() {
            out.insert(datum.factor_of(i) + 1);
        }
    }
    out
}

pub fn classify(spec: &MonoidSpec) -> PerfectDescriptor {
    let group = spec.datum.cocenter();
    let images: Vec<Element> = spec
        .generators
        .iter()
        .map(|g| group.project(g.coords()))
        .collect();
    PerfectDescriptor::from_subgroup(
        &spec.datum,
        component_support(spec),
        Subgroup::generated(group, &images),
    )
}

pub fn predicted_members(
    datum: &RootDatum,
    desc: &PerfectDescriptor,
    bx: WeightBox,
) -> BTreeSet<Weight> {
    bx.members(datum.rank())
        .into_iter()
        .filter(|w| desc.contains(datum, w))
        .collect()
}

/// In-box dominant points grouped by class in `P/Q`.
struct BoxClasses {
    class_of: HashMap<Weight, Element>,
}

impl BoxClasses {
    fn new(datum: &RootDatum, bx: WeightBox) -> BoxClasses {
        let class_of = bx.members(datum.rank()).into_iter().map(|w| {
            let c = datum.cocenter().project(w.coords());
            (w, c)
        });
        BoxClasses {
            class_of: class_of.collect(),
        }
    }

    /// In-box weights outside `set`, grouped by class.
    fn missing(&self, set: &BTreeSet<Weight>) -> HashMap<Element, Vec<Weight>> {
        let mut out: HashMap<Element, Vec<Weight>> = HashMap::new();
        for (w, c) in &self.class_of {
            if !set.contains(w) {
                out.entry(c.clone()).or_default().push(w.clone());
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }
}

/// Members of `candidates` that occur in `L(λ) ⊗ L(μ)`. Only weights
/// `ν ⪯ λ+μ` can occur, so the rest are skipped before any multiplicity is
/// evaluated.
fn summands_among(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
    candidates: &[Weight],
) -> Vec<Weight> {
    let top = lambda + mu;
    let below: Vec<&Weight> = candidates
        .iter()
        .filter(|nu| dominance_leq_coords(datum, nu.coords(), top.coords()))
        .collect();
    if below.is_empty() {
        return Vec::new();
    }
    // the character side should be the one with the smaller weight system
    let (small, big) = if lambda.coordinate_sum() <= mu.coordinate_sum() {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let mut engine = WeightMultiplicities::new(datum, small).expect("dominant");
    below
        .into_iter()
        .filter(|nu| tensor_multiplicity_with(datum, &mut engine, big, nu).expect("dominant") > 0)
        .cloned()
        .collect()
}

/// Groups pairs by their smaller factor (lowest coordinate sum), so each
/// group shares one table of weight multiplicities.
fn group_pairs(pairs: Vec<(Weight, Weight)>) -> Vec<(Weight, Vec<Weight>)> {
    let mut groups: BTreeMap<Weight, Vec<Weight>> = BTreeMap::new();
    for (x, y) in pairs {
        let (small, big) = if (x.coordinate_sum(), &x) <= (y.coordinate_sum(), &y) {
            (x, y)
        } else {
            (y, x)
        };
        groups.entry(small).or_default().push(big);
    }
    groups
        .into_iter()
        .map(|(small, mut bigs)| {
            bigs.sort_by_key(|b| (b.coordinate_sum(), b.clone()));
            (small, bigs)
        })
        .collect()
}

pub fn bounded_perfect_closure(spec: &MonoidSpec, bx: WeightBox) -> Result<BTreeSet<Weight>> {
    bounded_perfect_closure_with(spec, bx, Strategy::default())
}

/// Least box-truncated fixed point containing the generators and 0.
///
/// Rounds pair every new member with every member; a pair is skipped
/// outright when no missing in-box weight of its class lies below `λ+μ`,
/// and a weight found by one pair is not tested again in the same round.
pub fn bounded_perfect_closure_with(
    spec: &MonoidSpec,
    bx: WeightBox,
    strategy: Strategy,
) -> Result<BTreeSet<Weight>> {
    let datum = &spec.datum;
    for g in &spec.generators {
        if !bx.contains(g) {
            return Err(Error::OutsideBox(g.clone()));
        }
    }
    let classes = BoxClasses::new(datum, bx);
    let mut members: BTreeSet<Weight> = spec.generators.iter().cloned().collect();
    members.insert(Weight::zero(datum.rank()));
    let mut fresh: Vec<Weight> = members.iter().cloned().collect();
    while !fresh.is_empty() {
        let missing = classes.missing(&members);
        let old: Vec<Weight> = members
            .iter()
            .filter(|w| !fresh.contains(w))
            .cloned()
            .collect();
        let mut pairs: Vec<(Weight, Weight)> = Vec::new();
        for (a, x) in fresh.iter().enumerate() {
            for y in fresh[a..].iter().chain(old.iter()) {
                pairs.push((x.clone(), y.clone()));
            }
        }
        let groups = group_pairs(pairs);
        let found: Mutex<BTreeSet<Weight>> = Mutex::new(BTreeSet::new());
        par::map(strategy, &groups, |(small, bigs)| {
            let mut engine: Option<WeightMultiplicities<'_>> = None;
            for big in bigs {
                let top = small + big;
                let Some(cands) = missing.get(&datum.cocenter().project(top.coords())) else {
                    continue;
                };
                for nu in cands {
                    if !dominance_leq_coords(datum, nu.coords(), top.coords())
                        || found.lock().unwrap().contains(nu)
                    {
                        continue;
                    }
                    let e = engine.get_or_insert_with(|| {
                        WeightMultiplicities::new(datum, small).expect("dominant")
                    });
                    if tensor_multiplicity_with(datum, e, big, nu).expect("dominant") > 0 {
                        found.lock().unwrap().insert(nu.clone());
                    }
                }
            }
        });
        fresh = Vec::new();
        for w in found.into_inner().unwrap() {
            if members.insert(w.clone()) {
                fresh.push(w);
            }
        }
        fresh.sort();
    }
    Ok(members)
}

/// Perfectness inside the box: `X(λ, μ) ∩ box ⊆ S` for all `λ, μ ∈ S`
/// (this includes `λ+μ` whenever it fits).
pub fn is_perfect_in_box(datum: &RootDatum, set: &BTreeSet<Weight>, bx: WeightBox) -> bool {
    is_perfect_in_box_with(datum, set, bx, Strategy::default())
}

pub fn is_perfect_in_box_with(
    datum: &RootDatum,
    set: &BTreeSet<Weight>,
    bx: WeightBox,
    strategy: Strategy,
) -> bool {
    if set
        .iter()
        .any(|w| w.len() != datum.rank() || !bx.contains(w))
    {
        return false;
    }
    let missing = BoxClasses::new(datum, bx).missing(set);
    let items: Vec<&Weight> = set.iter().collect();
    let pairs: Vec<(usize, usize)> = (0..items.len())
        .flat_map(|i| (i..items.len()).map(move |j| (i, j)))
        .collect();
    let bad = par::fold(
        strategy,
        &pairs,
        || false,
        |acc, &(i, j)| {
            acc || {
                let (x, y) = (items[i], items[j]);
                let class = datum.cocenter().project((x + y).coords());
                missing
                    .get(&class)
                    .is_some_and(|c| !summands_among(datum, x, y, c).is_empty())
            }
        },
        |a, b| a || b,
    );
    !bad
}

/// Outcome of comparing the box closure with the symbolic prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub equal: bool,
    /// Closure elements the prediction misses; always a defect.
    pub missing_from_prediction: Vec<Weight>,
    /// Predicted elements the box closure has not reached.
    pub unreached_in_box: Vec<Weight>,
    pub descriptor: PerfectDescriptor,
}

impl VerifyReport {
    /// Soundness holds when the closure lies inside the prediction.
    pub fn sound(&self) -> bool {
        self.missing_from_prediction.is_empty()
    }
}

pub fn verify_theorem_a(spec: &MonoidSpec, bx: WeightBox) -> Result<VerifyReport> {
    verify_theorem_a_with(spec, bx, Strategy::default())
}

pub fn verify_theorem_a_with(
    spec: &MonoidSpec,
    bx: WeightBox,
    strategy: Strategy,
) -> Result<VerifyReport> {
    let closure = bounded_perfect_closure_with(spec, bx, strategy)?;
    let descriptor = classify(spec);
    let predicted = predicted_members(&spec.datum, &descriptor, bx);
    let missing_from_prediction: Vec<Weight> = closure.difference(&predicted).cloned().collect();
    let unreached_in_box: Vec<Weight> = predicted.difference(&closure).cloned().collect();
    Ok(VerifyReport {
        equal: missing_from_prediction.is_empty() && unreached_in_box.is_empty(),
        missing_from_prediction,
        unreached_in_box,
        descriptor,
    })
}

/// One descriptor per perfect submonoid with component support exactly
/// `support` (1-based factors). These correspond to the subgroups of
/// `(X ∩ P_{Ξ₀})/Q_{Ξ₀}` inside `P/Q`.
pub fn enumerate_perfect(
    datum: &RootDatum,
    support: &BTreeSet<usize>,
) -> Result<Vec<PerfectDescriptor>> {
    for &k in support {
        if k == 0 || k > datum.factor_count() {
            return Err(Error::IndexOutOfRange {
                index: k,
                rank: datum.factor_count(),
            });
        }
    }
    let group = datum.cocenter();
    let fundamentals: Vec<Element> = datum
        .factor_indices(support)
        .into_iter()
        .map(|i| {
            let mut e = vec![0; datum.rank()];
            e[i] = 1;
            group.project(&e)
        })
        .collect();
    let restricted = Subgroup::generated(group, &fundamentals);
    let allowed = restricted.intersection(datum.lattice_subgroup());
    Ok(enumerate_subgroups(group)?
        .into_iter()
        .filter(|h| h.is_subgroup_of(&allowed))
        .map(|h| PerfectDescriptor::from_subgroup(datum, support.clone(), h))
        .collect())
}

/// Every perfect submonoid, over all component supports.
pub fn enumerate_all_perfect(datum: &RootDatum) -> Result<Vec<PerfectDescriptor>> {
    let n = datum.factor_count();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let support: BTreeSet<usize> = (0..n)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| k + 1)
            .collect();
        out.extend(enumerate_perfect(datum, &support)?);
    }
    Ok(out)
}

/// Saturation: `nλ ∈ S` with `n > 1` forces `λ ∈ S`, over lattice weights
/// of the box.
pub fn is_saturated_monoid(datum: &RootDatum, set: &BTreeSet<Weight>, bx: WeightBox) -> bool {
    saturation_witness(datum, set, bx).is_none()
}

/// A pair `(λ, n)` with `nλ ∈ S` and `λ ∉ S`, if one exists.
pub fn saturation_witness(
    datum: &RootDatum,
    set: &BTreeSet<Weight>,
    bx: WeightBox,
) -> Option<(Weight, i64)> {
    for lambda in bx.members(datum.rank()) {
        if lambda.is_zero() || set.contains(&lambda) || !datum.in_lattice(&lambda) {
            continue;
        }
        let mut n = 2;
        loop {
            let multiple = lambda.scale(n);
            if !bx.contains(&multiple) {
                break;
            }
            if set.contains(&multiple) {
                return Some((lambda, n));
            }
            n += 1;
        }
    }
    None
}

/// Dominant part of `Π(λ)` that fits in the box.
pub fn dominant_weights_in_box(
    datum: &RootDatum,
    lambda: &Weight,
    bx: WeightBox,
) -> Result<Vec<Weight>> {
    Ok(dominant_weights_below(datum, lambda)?
        .into_iter()
        .filter(|w| bx.contains(w))
        .collect())
}
