//! The cocenter `P/Q`, its subgroups, and the pairing with the center.
//!
//! `P/Q ≅ ⊕ Z/d_i` is read off the Smith normal form `U·C·V = diag(d)` of
//! the Cartan matrix: the class of `λ` has coordinates `(U·λ)_i mod d_i`.
//! Unit invariant factors carry no information and are dropped.
//!
//! The center `Z` of the simply connected group is identified with the dual
//! group `Hom(P/Q, Q/Z)`, which has the same invariants. An element `y` of
//! the dual pairs with a class `x` by `Σ x_i y_i / d_i mod 1`, so central
//! characters and annihilators need no field elements.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, Weight};

/// Subgroup enumeration refuses groups larger than this by default.
pub const DEFAULT_SUBGROUP_BOUND: u64 = 256;

/// Element of a finite abelian group in invariant-factor coordinates.
pub type Element = Vec<i64>;

/// Smith normal form of a square integer matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries `d_1 | d_2 | …`, non-negative.
    pub diagonal: Vec<i64>,
    /// Unimodular `U` with `U·M·V = D`.
    pub left: Vec<Vec<i64>>,
    /// `U⁻¹`.
    pub left_inverse: Vec<Vec<i64>>,
}

/// Row/column reduction keeping the left transform and its inverse.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let n = m.len();
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let identity = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut u = identity(n);
    let mut uinv = identity(n);

    // row_i += c·row_j, mirrored on U and U⁻¹
    let add_row = |a: &mut Vec<Vec<i64>>,
                   u: &mut Vec<Vec<i64>>,
                   uinv: &mut Vec<Vec<i64>>,
                   i: usize,
                   j: usize,
                   c: i64| {
        for k in 0..n {
            a[i][k] += c * a[j][k];
            u[i][k] += c * u[j][k];
        }
        for row in uinv.iter_mut() {
            row[j] -= c * row[i];
        }
    };
    let swap_rows = |a: &mut Vec<Vec<i64>>,
                     u: &mut Vec<Vec<i64>>,
                     uinv: &mut Vec<Vec<i64>>,
                     i: usize,
                     j: usize| {
        a.swap(i, j);
        u.swap(i, j);
        for row in uinv.iter_mut() {
            row.swap(i, j);
        }
    };

    for t in 0..n {
        loop {
            // smallest nonzero pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                swap_rows(&mut a, &mut u, &mut uinv, pi, t);
            }
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(pj, t);
                }
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(p);
                if q != 0 {
                    add_row(&mut a, &mut u, &mut uinv, i, t, -q);
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(p);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => add_row(&mut a, &mut u, &mut uinv, t, i, 1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for k in 0..n {
                a[t][k] = -a[t][k];
                u[t][k] = -u[t][k];
            }
            for row in uinv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    SmithForm {
        diagonal: (0..n).map(|i| a[i][i]).collect(),
        left: u,
        left_inverse: uinv,
    }
}

/// Finite abelian group `⊕ Z/d_i`, realized as the cocenter of a Cartan
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    invariants: Vec<i64>,
    /// Row `i`: coefficients giving the `i`-th coordinate of `p(ω_j)`.
    basis_map: Vec<Vec<i64>>,
    /// Column `i`: a weight whose class is the `i`-th unit element.
    lift_map: Vec<Weight>,
}

impl FinAbGroup {
    pub fn from_cartan(cartan: &[Vec<i64>]) -> FinAbGroup {
        let snf = smith_normal_form(cartan);
        let n = cartan.len();
        let nontrivial: Vec<usize> = (0..n).filter(|&i| snf.diagonal[i] != 1).collect();
        FinAbGroup {
            invariants: nontrivial.iter().map(|&i| snf.diagonal[i]).collect(),
            basis_map: nontrivial.iter().map(|&i| snf.left[i].clone()).collect(),
            lift_map: nontrivial
                .iter()
                .map(|&i| Weight::new((0..n).map(|r| snf.left_inverse[r][i]).collect()))
                .collect(),
        }
    }

    /// Nontrivial invariant factors, each dividing the next.
    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().map(|&d| d as u64).product()
    }

    /// Exponent (largest invariant), 1 for the trivial group.
    pub fn exponent(&self) -> i64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn basis_map(&self) -> &[Vec<i64>] {
        &self.basis_map
    }

    pub fn zero(&self) -> Element {
        vec![0; self.invariants.len()]
    }

    pub fn is_element(&self, x: &[i64]) -> bool {
        x.len() == self.invariants.len()
            && x.iter()
                .zip(&self.invariants)
                .all(|(&v, &d)| (0..d).contains(&v))
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.invariants)
            .map(|((a, b), d)| (a + b).rem_euclid(*d))
            .collect()
    }

    pub fn neg(&self, x: &[i64]) -> Element {
        x.iter()
            .zip(&self.invariants)
            .map(|(a, d)| (-a).rem_euclid(*d))
            .collect()
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |v| {
                        let mut e = prefix.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Class `p(λ)` of a weight given in the coordinates this group was
    /// built from.
    pub fn project(&self, lambda: &[i64]) -> Element {
        self.basis_map
            .iter()
            .zip(&self.invariants)
            .map(|(row, d)| {
                row.iter()
                    .zip(lambda)
                    .map(|(a, l)| a * l)
                    .sum::<i64>()
                    .rem_euclid(*d)
            })
            .collect()
    }

    /// A weight whose class is `x`.
    pub fn lift(&self, x: &[i64]) -> Weight {
        let n = self.lift_map.first().map_or(0, |w| w.len());
        let mut out = vec![0i64; n];
        for (col, &c) in self.lift_map.iter().zip(x) {
            for (o, v) in out.iter_mut().zip(col.coords()) {
                *o += c * v;
            }
        }
        Weight::new(out)
    }

    /// Pairing of a class `x ∈ P/Q` with `y` in the dual, as an integer
    /// modulo the exponent.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let e = self.exponent();
        x.iter()
            .zip(y)
            .zip(&self.invariants)
            .map(|((a, b), d)| a * b * (e / d))
            .sum::<i64>()
            .rem_euclid(e)
    }
}

/// Subgroup stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    invariants: Vec<i64>,
    elements: Vec<Element>,
}

impl Subgroup {
    fn from_set(group: &FinAbGroup, set: impl IntoIterator<Item = Element>) -> Subgroup {
        let elements: BTreeSet<Element> = set.into_iter().collect();
        Subgroup {
            invariants: group.invariants.clone(),
            elements: elements.into_iter().collect(),
        }
    }

    pub fn trivial(group: &FinAbGroup) -> Subgroup {
        Subgroup::from_set(group, [group.zero()])
    }

    pub fn full(group: &FinAbGroup) -> Subgroup {
        Subgroup::from_set(group, group.elements())
    }

    /// Subgroup generated by `gens` (entries are reduced modulo the invariants).
    pub fn generated(group: &FinAbGroup, gens: &[Element]) -> Subgroup {
        let gens: Vec<Element> = gens.iter().map(|g| group.add(g, &group.zero())).collect();
        let mut seen: HashSet<Element> = HashSet::from([group.zero()]);
        let mut stack = vec![group.zero()];
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = group.add(&x, g);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        Subgroup::from_set(group, seen)
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(x))
            .is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            invariants: self.invariants.clone(),
            elements: self
                .elements
                .iter()
                .filter(|e| other.contains(e))
                .cloned()
                .collect(),
        }
    }

    /// Closure check: contains 0, closed under addition and negation.
    pub fn is_valid_in(&self, group: &FinAbGroup) -> bool {
        self.invariants == group.invariants
            && self.contains(&group.zero())
            && self
                .elements
                .iter()
                .all(|x| group.is_element(x) && self.contains(&group.neg(x)))
            && self.elements.iter().all(|x| {
                self.elements
                    .iter()
                    .all(|y| self.contains(&group.add(x, y)))
            })
    }

    /// `{y in the dual : ⟨x, y⟩ = 0 for all x ∈ self}`.
    pub fn annihilator(&self, group: &FinAbGroup) -> Subgroup {
        Subgroup::from_set(
            group,
            group
                .elements()
                .into_iter()
                .filter(|y| self.elements.iter().all(|x| group.pairing(x, y) == 0)),
        )
    }

    fn canonical_key(&self) -> (usize, &[Element]) {
        (self.elements.len(), &self.elements)
    }
}

/// `P/Q` of the datum's simply connected cover.
pub fn fundamental_group(datum: &RootDatum) -> FinAbGroup {
    datum.cocenter().clone()
}

pub fn project_to_cocenter(group: &FinAbGroup, lambda: &Weight) -> Element {
    group.project(lambda.coords())
}

/// All subgroups, ordered by size then elements.
pub fn enumerate_subgroups(group: &FinAbGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_bounded(group, DEFAULT_SUBGROUP_BOUND)
}

pub fn enumerate_subgroups_bounded(group: &FinAbGroup, bound: u64) -> Result<Vec<Subgroup>> {
    let order = group.order();
    if order > bound {
        return Err(Error::GroupTooLarge { order, bound });
    }
    let elements = group.elements();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let trivial = Subgroup::trivial(group);
    seen.insert(trivial.clone());
    let mut stack = vec![trivial];
    while let Some(h) = stack.pop() {
        for g in &elements {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.elements.clone();
            gens.push(g.clone());
            let bigger = Subgroup::generated(group, &gens);
            if !seen.contains(&bigger) {
                seen.insert(bigger.clone());
                stack.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().collect();
    out.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    Ok(out)
}

/// Subgroups containing `z`; these correspond to the subgroups of the
/// quotient by `z`.
pub fn quotient_subgroups(group: &FinAbGroup, z: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(enumerate_subgroups(group)?
        .into_iter()
        .filter(|h| z.is_subgroup_of(h))
        .collect())
}

/// Whether the central character of `λ` is trivial on `h` (given in dual
/// coordinates).
pub fn weight_kills_subgroup(group: &FinAbGroup, lambda: &Weight, h: &Subgroup) -> bool {
    let x = group.project(lambda.coords());
    h.elements().iter().all(|y| group.pairing(&x, y) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootDatum;

    fn group(t: &str) -> FinAbGroup {
        fundamental_group(&RootDatum::simply_connected(t).unwrap())
    }

    fn cyclic(n: i64) -> FinAbGroup {
        // A_{n-1} has cocenter Z/n
        group(&format!("A{}", n - 1))
    }

    #[test]
    fn snf_diagonals() {
        assert_eq!(
            smith_normal_form(&[vec![2, -1], vec![-1, 2]]).diagonal,
            vec![1, 3]
        );
        assert_eq!(group("A2").invariants(), &[3]);
        assert_eq!(group("D4").invariants(), &[2, 2]);
        assert_eq!(group("A1xA1").invariants(), &[2, 2]);
        assert_eq!(group("D5").invariants(), &[4]);
        assert_eq!(group("E6").invariants(), &[3]);
        assert_eq!(group("E7").invariants(), &[2]);
        assert!(group("E8").invariants().is_empty());
        assert!(group("G2").invariants().is_empty());
        assert_eq!(group("A1xA2").invariants(), &[6]);
    }

    #[test]
    fn snf_transform_is_consistent() {
        for t in ["A4", "B3", "C4", "D6", "E6", "E7", "A1xA3", "D4xA2"] {
            let d = RootDatum::simply_connected(t).unwrap();
            let snf = smith_normal_form(d.cartan());
            let n = d.rank();
            let prod: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|k| snf.left[i][k] * snf.left_inverse[k][j])
                                .sum()
                        })
                        .collect()
                })
                .collect();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(prod[i][j], i64::from(i == j), "{t}");
                }
            }
            let order: i64 = snf.diagonal.iter().product();
            assert_eq!(order, d.determinant(), "{t}");
            for k in 1..snf.diagonal.len() {
                assert_eq!(snf.diagonal[k] % snf.diagonal[k - 1], 0);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let g = group("A2");
        let p10 = project_to_cocenter(&g, &Weight::new(vec![1, 0]));
        let p01 = project_to_cocenter(&g, &Weight::new(vec![0, 1]));
        assert_ne!(p10, g.zero());
        assert_eq!(p01, g.add(&p10, &p10));
        assert_eq!(project_to_cocenter(&g, &Weight::new(vec![1, 1])), g.zero());
        assert_eq!(project_to_cocenter(&g, &Weight::zero(2)), g.zero());
    }

    #[test]
    fn lift_inverts_projection() {
        for t in ["A3", "D4", "A1xA1xA2", "E6"] {
            let g = group(t);
            for x in g.elements() {
                assert_eq!(g.project(g.lift(&x).coords()), x, "{t}");
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(enumerate_subgroups(&cyclic(3)).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(&group("D4")).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&cyclic(4)).unwrap().len(), 3);
        let subs = enumerate_subgroups(&group("A1xA1xA1")).unwrap();
        // subgroups of (Z/2)^3: 1 + 7 + 7 + 1
        assert_eq!(subs.len(), 16);
        for s in &subs {
            assert!(s.is_valid_in(&group("A1xA1xA1")));
        }
    }

    #[test]
    fn subgroup_bound() {
        let g = group("A1xA1xA1");
        assert!(matches!(
            enumerate_subgroups_bounded(&g, 4),
            Err(Error::GroupTooLarge { order: 8, bound: 4 })
        ));
    }

    #[test]
    fn quotient_examples() {
        let z4 = cyclic(4);
        let two = Subgroup::generated(&z4, &[vec![2]]);
        let above = quotient_subgroups(&z4, &two).unwrap();
        assert_eq!(above.len(), 2);
        assert_eq!(above[0], two);
        assert_eq!(above[1], Subgroup::full(&z4));
        let v4 = group("A1xA1");
        assert_eq!(
            quotient_subgroups(&v4, &Subgroup::trivial(&v4))
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            quotient_subgroups(&v4, &Subgroup::full(&v4)).unwrap().len(),
            1
        );
    }

    #[test]
    fn central_character_examples() {
        let a1 = group("A1");
        let full = Subgroup::full(&a1);
        assert!(!weight_kills_subgroup(&a1, &Weight::new(vec![1]), &full));
        assert!(weight_kills_subgroup(&a1, &Weight::new(vec![2]), &full));
        assert!(weight_kills_subgroup(
            &a1,
            &Weight::new(vec![1]),
            &Subgroup::trivial(&a1)
        ));
        let a2 = group("A2");
        assert!(!weight_kills_subgroup(
            &a2,
            &Weight::new(vec![1, 0]),
            &Subgroup::full(&a2)
        ));
    }

    #[test]
    fn annihilator_index() {
        for t in ["A3", "D4", "A1xA3", "A5"] {
            let g = group(t);
            for h in enumerate_subgroups(&g).unwrap() {
                let ann = h.annihilator(&g);
                assert_eq!(ann.order() * h.order(), g.order() as usize, "{t}");
                assert_eq!(ann.annihilator(&g), h, "{t}");
            }
        }
    }
}
