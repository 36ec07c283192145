//! Reference computations that avoid the Freudenthal and Brauer–Klimyk code
//! paths: Kostant's multiplicity formula and naive character algebra.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use weightlab::weyl::{apply_word, group_elements, orbit};
use weightlab::{RootDatum, Weight, WeylWord};

pub fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec())
}

pub fn sc(t: &str) -> RootDatum {
    RootDatum::simply_connected(t).unwrap()
}

pub fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, max: i64) -> Weight {
    Weight::new((0..rank).map(|_| rng.gen_range(0..=max)).collect())
}

/// Kostant multiplicities `n_μ(λ) = Σ_w ε(w) P(w(λ+ρ) − (μ+ρ))`.
pub struct Kostant<'a> {
    datum: &'a RootDatum,
    group: Vec<(WeylWord, i64)>,
    roots: Vec<Vec<i64>>,
    memo: HashMap<(Vec<i64>, usize), u64>,
}

impl<'a> Kostant<'a> {
    pub fn new(datum: &'a RootDatum) -> Kostant<'a> {
        let group = group_elements(datum).into_iter().map(|g| {
            let s = g.sign();
            (g, s)
        });
        let roots = datum
            .positive_roots()
            .iter()
            .map(|r| r.root_coords.clone())
            .collect();
        Kostant {
            datum,
            group: group.collect(),
            roots,
            memo: HashMap::new(),
        }
    }

    /// Number of ways to write `v` (root coordinates) with the first `k`
    /// positive roots.
    fn partitions(&mut self, v: &[i64], k: usize) -> u64 {
        if v.iter().any(|&c| c < 0) {
            return 0;
        }
        if k == 0 {
            return u64::from(v.iter().all(|&c| c == 0));
        }
        if let Some(&p) = self.memo.get(&(v.to_vec(), k)) {
            return p;
        }
        let beta = self.roots[k - 1].clone();
        let mut total = 0;
        let mut cur = v.to_vec();
        while cur.iter().all(|&c| c >= 0) {
            total += self.partitions(&cur, k - 1);
            for (c, b) in cur.iter_mut().zip(&beta) {
                *c -= b;
            }
        }
        self.memo.insert((v.to_vec(), k), total);
        total
    }

    pub fn multiplicity(&mut self, lambda: &Weight, mu: &Weight) -> i64 {
        let rho = self.datum.weyl_vector().clone();
        let top = lambda + &rho;
        let bottom = mu + &rho;
        let mut total = 0i64;
        for (g, s) in self.group.clone() {
            let moved = apply_word(self.datum, &g, &top).unwrap();
            let diff = &moved - &bottom;
            if let Some(k) = self.datum.integral_root_coordinates(diff.coords()) {
                let n = self.roots.len();
                total += s * self.partitions(&k, n) as i64;
            }
        }
        total
    }

    /// All weights of `L(λ)` with multiplicities.
    pub fn full_character(&mut self, lambda: &Weight) -> HashMap<Weight, i64> {
        let mut out = HashMap::new();
        for mu in dominant_below_by_scan(self.datum, lambda) {
            let m = self.multiplicity(lambda, &mu);
            if m > 0 {
                for x in orbit(self.datum, &mu) {
                    out.insert(x, m);
                }
            }
        }
        out
    }
}

/// Dominant weights `μ ⪯ λ` by scanning the box `0 ≤ μ_i ≤ Σ λ-bound`.
pub fn dominant_below_by_scan(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let rank = datum.rank();
    let det = datum.determinant();
    // every coordinate of a dominant μ ⪯ λ is bounded by the largest
    // coordinate over Π(λ), which is at most that of the orbit of λ
    let bound = orbit(datum, lambda)
        .iter()
        .flat_map(|x| x.coords().to_vec())
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    let mut idx = vec![0i64; rank];
    loop {
        let diff: Vec<i64> = lambda
            .coords()
            .iter()
            .zip(&idx)
            .map(|(a, b)| a - b)
            .collect();
        if datum
            .scaled_root_coordinates(&diff)
            .iter()
            .all(|&n| n >= 0 && n % det == 0)
        {
            out.push(Weight::new(idx.clone()));
        }
        let mut p = 0;
        while p < rank && idx[p] == bound {
            idx[p] = 0;
            p += 1;
        }
        if p == rank {
            return out;
        }
        idx[p] += 1;
    }
}

/// Product of two full characters.
pub fn multiply(a: &HashMap<Weight, i64>, b: &HashMap<Weight, i64>) -> HashMap<Weight, i64> {
    let mut out = HashMap::new();
    for (x, m) in a {
        for (y, n) in b {
            *out.entry(x + y).or_insert(0) += m * n;
        }
    }
    out
}

/// Decomposes a full character by stripping highest weights.
pub fn strip(
    datum: &RootDatum,
    kostant: &mut Kostant<'_>,
    mut chi: HashMap<Weight, i64>,
) -> BTreeMap<Weight, i64> {
    let height = |x: &Weight| {
        datum
            .scaled_root_coordinates(x.coords())
            .iter()
            .sum::<i64>()
    };
    let mut out = BTreeMap::new();
    loop {
        chi.retain(|_, m| *m != 0);
        let Some(top) = chi
            .keys()
            .max_by_key(|x| (height(x), x.coords().to_vec()))
            .cloned()
        else {
            return out;
        };
        assert!(
            top.is_dominant(),
            "highest remaining weight {top} is not dominant"
        );
        let m = chi[&top];
        assert!(m > 0, "negative leading multiplicity at {top}");
        out.insert(top.clone(), m);
        for (x, n) in kostant.full_character(&top) {
            *chi.entry(x).or_insert(0) -= m * n;
        }
    }
}

/// `L(λ) ⊗ L(μ)` by naive multiplication and stripping.
pub fn brute_force_tensor(
    datum: &RootDatum,
    lambda: &Weight,
    mu: &Weight,
) -> BTreeMap<Weight, i64> {
    let mut k = Kostant::new(datum);
    let a = k.full_character(lambda);
    let b = k.full_character(mu);
    strip(datum, &mut k, multiply(&a, &b))
}
