//! Cartan types, root data and the character lattice.
//!
//! Weights are stored in fundamental-weight coordinates of the simply
//! connected cover: entry `i` is the pairing with the `i`-th simple coroot.
//! Simple roots are the columns of the Cartan matrix in these coordinates.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latticecalc::{FinAbGroup, Subgroup};

/// Rational number used for root coordinates.
pub type Rational = Ratio<i64>;

// ---------------------------------------------------------------------------
// Cartan types

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// One simple factor of a Cartan type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<SimpleType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::RankOutOfRange {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Whether the longest Weyl element acts as `-1`.
    pub fn w0_is_minus_one(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank % 2 == 0,
            Family::E => self.rank != 6,
            _ => true,
        }
    }

    /// Squared lengths of the simple roots (short roots have length 2) and
    /// the edges of the Dynkin diagram, Bourbaki numbering, 0-based.
    fn dynkin(&self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |m: usize| {
            (0..m.saturating_sub(1))
                .map(|i| (i, i + 1))
                .collect::<Vec<_>>()
        };
        match self.family {
            Family::A => (vec![2; n], chain(n)),
            Family::B => {
                let mut lens = vec![4; n];
                lens[n - 1] = 2;
                (lens, chain(n))
            }
            Family::C => {
                let mut lens = vec![2; n];
                lens[n - 1] = 4;
                (lens, chain(n))
            }
            Family::D => {
                let mut edges = chain(n - 1);
                edges.push((n - 3, n - 1));
                (vec![2; n], edges)
            }
            Family::E => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
                (vec![2; n], edges)
            }
            Family::F => (vec![4, 4, 2, 2], chain(4)),
            Family::G => (vec![2, 6], chain(2)),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Ordered product of simple types, written `A2xD4xE6`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<SimpleType>,
}

impl CartanType {
    pub fn new(factors: Vec<SimpleType>) -> Result<CartanType> {
        if factors.is_empty() {
            return Err(Error::TypeParse(String::new()));
        }
        Ok(CartanType { factors })
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CartanType> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::TypeParse(s.to_string()));
        }
        let mut factors = Vec::new();
        for part in trimmed.split(['x', 'X']) {
            let mut chars = part.chars();
            let letter = chars
                .next()
                .ok_or_else(|| Error::TypeParse(s.to_string()))?;
            let family = Family::from_char(letter.to_ascii_uppercase())
                .ok_or_else(|| Error::UnknownFamily(letter.to_string()))?;
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::TypeParse(s.to_string()));
            }
            let rank: usize = digits
                .parse()
                .map_err(|_| Error::TypeParse(s.to_string()))?;
            factors.push(SimpleType::new(family, rank)?);
        }
        CartanType::new(factors)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, factor) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Weights

/// Integer weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Weight {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Weight {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Sum of coordinates; the queue priority of the closure iteration.
    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Indices with strictly positive coordinate (0-based).
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

impl Index<usize> for Weight {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Weight {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

// ---------------------------------------------------------------------------
// Lattices

/// Character lattice `X` with `Q ⊆ X ⊆ P`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum LatticeSpec {
    #[default]
    SimplyConnected,
    Adjoint,
    /// `X = p⁻¹(H)` for the subgroup `H` of `P/Q` generated by these
    /// cocenter elements.
    Subgroup(Vec<Vec<i64>>),
}

#[derive(Serialize, Deserialize)]
struct LatticeSpecRepr {
    mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<i64>>>,
}

impl Serialize for LatticeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            LatticeSpec::SimplyConnected => LatticeSpecRepr {
                mode: "sc".into(),
                generators: None,
            },
            LatticeSpec::Adjoint => LatticeSpecRepr {
                mode: "adjoint".into(),
                generators: None,
            },
            LatticeSpec::Subgroup(g) => LatticeSpecRepr {
                mode: "subgroup".into(),
                generators: Some(g.clone()),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = LatticeSpecRepr::deserialize(d)?;
        match repr.mode.as_str() {
            "sc" => Ok(LatticeSpec::SimplyConnected),
            "adjoint" => Ok(LatticeSpec::Adjoint),
            "subgroup" => Ok(LatticeSpec::Subgroup(repr.generators.unwrap_or_default())),
            other => Err(serde::de::Error::custom(format!(
                "unknown lattice mode {other:?}"
            ))),
        }
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    /// Accepts `sc`, `adjoint`, or a JSON object.
    fn from_str(s: &str) -> Result<LatticeSpec> {
        match s.trim() {
            "sc" => Ok(LatticeSpec::SimplyConnected),
            "adjoint" => Ok(LatticeSpec::Adjoint),
            other => serde_json::from_str(other).map_err(|e| Error::InvalidLattice(e.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Root data

/// A positive root with its cached coordinates.
#[derive(Clone, Debug)]
pub struct Root {
    /// Fundamental coordinates.
    pub weight: Weight,
    /// Coefficients in the simple roots.
    pub root_coords: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots; `⟨λ, α∨⟩ = Σ c_j λ_j`.
    pub coroot: Vec<i64>,
    /// Squared length, short roots normalized to 2 in each factor.
    pub norm2: i64,
    pub height: i64,
}

impl Root {
    /// `⟨λ, α∨⟩`.
    #[inline]
    pub fn pair(&self, lambda: &[i64]) -> i64 {
        self.coroot.iter().zip(lambda).map(|(c, l)| c * l).sum()
    }
}

/// Root datum of a semisimple group: Cartan data of the simply connected
/// cover plus the chosen character lattice.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    simple_norm2: Vec<i64>,
    offsets: Vec<usize>,
    factor_of: Vec<usize>,
    columns: Vec<Vec<(usize, i64)>>,
    positive_roots: Vec<Root>,
    weyl_vector: Weight,
    det: i64,
    adjugate: Vec<Vec<i64>>,
    form: Vec<Vec<i64>>,
    lattice: LatticeSpec,
    cocenter: FinAbGroup,
    lattice_subgroup: Subgroup,
}

impl RootDatum {
    /// Parses `type_string` and builds the datum for `lattice`.
    pub fn new(type_string: &str, lattice: LatticeSpec) -> Result<RootDatum> {
        let cartan_type: CartanType = type_string.parse()?;
        RootDatum::from_type(cartan_type, lattice)
    }

    pub fn simply_connected(type_string: &str) -> Result<RootDatum> {
        RootDatum::new(type_string, LatticeSpec::SimplyConnected)
    }

    pub fn from_type(cartan_type: CartanType, lattice: LatticeSpec) -> Result<RootDatum> {
        let rank = cartan_type.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut simple_norm2 = vec![0i64; rank];
        let mut offsets = Vec::with_capacity(cartan_type.factors().len());
        let mut factor_of = vec![0usize; rank];
        let mut start = 0;
        for (k, factor) in cartan_type.factors().iter().enumerate() {
            offsets.push(start);
            let (lens, edges) = factor.dynkin();
            for i in 0..factor.rank {
                cartan[start + i][start + i] = 2;
                simple_norm2[start + i] = lens[i];
                factor_of[start + i] = k;
            }
            for &(i, j) in &edges {
                // (α_i, α_j) = -max(|α_i|², |α_j|²)/2 for joined vertices
                let ip = -lens[i].max(lens[j]) / 2;
                cartan[start + i][start + j] = 2 * ip / lens[i];
                cartan[start + j][start + i] = 2 * ip / lens[j];
            }
            start += factor.rank;
        }

        let columns = (0..rank)
            .map(|j| {
                (0..rank)
                    .filter(|&i| cartan[i][j] != 0)
                    .map(|i| (i, cartan[i][j]))
                    .collect()
            })
            .collect();

        let (det, adjugate) = integer_inverse(&cartan);
        // (ω_i, ω_j) = (C⁻¹)_{ji} |α_j|²/2, scaled by det to stay integral
        let form = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| adjugate[j][i] * simple_norm2[j] / 2)
                    .collect()
            })
            .collect();

        let cocenter = FinAbGroup::from_cartan(&cartan);
        let lattice_subgroup = match &lattice {
            LatticeSpec::SimplyConnected => Subgroup::full(&cocenter),
            LatticeSpec::Adjoint => Subgroup::trivial(&cocenter),
            LatticeSpec::Subgroup(gens) => {
                for g in gens {
                    if !cocenter.is_element(g) {
                        return Err(Error::InvalidLattice(format!(
                            "generator {g:?} is not an element of P/Q with invariants {:?}",
                            cocenter.invariants()
                        )));
                    }
                }
                Subgroup::generated(&cocenter, gens)
            }
        };

        let mut datum = RootDatum {
            cartan_type,
            cartan,
            simple_norm2,
            offsets,
            factor_of,
            columns,
            positive_roots: Vec::new(),
            weyl_vector: Weight(vec![1; rank]),
            det,
            adjugate,
            form,
            lattice,
            cocenter,
            lattice_subgroup,
        };
        datum.positive_roots = datum.generate_positive_roots();
        Ok(datum)
    }

    /// Closure of the simple roots under simple reflections, keeping the
    /// positive ones. Ordered by height, then lexicographically.
    fn generate_positive_roots(&self) -> Vec<Root> {
        let rank = self.rank();
        let mut seen = std::collections::HashSet::new();
        let mut queue = std::collections::VecDeque::new();
        for i in 0..rank {
            let mut k = vec![0i64; rank];
            k[i] = 1;
            seen.insert(k.clone());
            queue.push_back(k);
        }
        while let Some(k) = queue.pop_front() {
            let fund = self.from_root_coords(&k);
            for i in 0..rank {
                let c = fund[i];
                if c == 0 {
                    continue;
                }
                let mut next = k.clone();
                next[i] -= c;
                if next.iter().all(|&x| x >= 0)
                    && next.iter().any(|&x| x > 0)
                    && seen.insert(next.clone())
                {
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<Root> = seen
            .into_iter()
            .map(|k| {
                let norm2: i64 = (0..rank)
                    .flat_map(|i| (0..rank).map(move |j| (i, j)))
                    .map(|(i, j)| k[i] * k[j] * self.cartan[i][j] * self.simple_norm2[i] / 2)
                    .sum::<i64>();
                let coroot = (0..rank)
                    .map(|j| k[j] * self.simple_norm2[j] / norm2)
                    .collect();
                let height = k.iter().sum();
                Root {
                    weight: self.from_root_coords(&k),
                    root_coords: k,
                    coroot,
                    norm2,
                    height,
                }
            })
            .collect();
        roots.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then_with(|| b.root_coords.cmp(&a.root_coords))
        });
        roots
    }

    fn from_root_coords(&self, k: &[i64]) -> Weight {
        let rank = self.rank();
        Weight(
            (0..rank)
                .map(|i| (0..rank).map(|j| self.cartan[i][j] * k[j]).sum())
                .collect(),
        )
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `C[i][j] = ⟨α_j, α_i∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared lengths of the simple roots.
    pub fn simple_norm2(&self) -> &[i64] {
        &self.simple_norm2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn weyl_vector(&self) -> &Weight {
        &self.weyl_vector
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    /// `P/Q` of the simply connected cover.
    pub fn cocenter(&self) -> &FinAbGroup {
        &self.cocenter
    }

    /// `X/Q` as a subgroup of the cocenter.
    pub fn lattice_subgroup(&self) -> &Subgroup {
        &self.lattice_subgroup
    }

    /// `|det C| = |P/Q|`.
    pub fn determinant(&self) -> i64 {
        self.det
    }

    pub fn factor_count(&self) -> usize {
        self.offsets.len()
    }

    /// Coordinate range of factor `k` (0-based).
    pub fn factor_range(&self, k: usize) -> std::ops::Range<usize> {
        let start = self.offsets[k];
        start..start + self.cartan_type.factors()[k].rank
    }

    /// 0-based factor containing simple index `i` (0-based).
    pub fn factor_of(&self, i: usize) -> usize {
        self.factor_of[i]
    }

    /// Nonzero entries of the `j`-th Cartan column, i.e. `α_j` (0-based).
    #[inline]
    pub fn simple_root_column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    /// `α_i` as a weight, 1-based `i`.
    pub fn simple_root(&self, i: usize) -> Result<Weight> {
        self.check_index(i)?;
        Ok(Weight(
            (0..self.rank()).map(|r| self.cartan[r][i - 1]).collect(),
        ))
    }

    /// Whether Dynkin vertices `i` and `j` (0-based) are joined.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.len() != self.rank() {
            Err(Error::RankMismatch {
                expected: self.rank(),
                got: lambda.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_dominant(&self, lambda: &Weight) -> Result<()> {
        self.check_weight(lambda)?;
        if lambda.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(lambda.clone()))
        }
    }

    /// `det · C⁻¹ · λ`; the integer numerators of the root coordinates.
    pub fn scaled_root_coordinates(&self, lambda: &[i64]) -> Vec<i64> {
        self.adjugate
            .iter()
            .map(|row| row.iter().zip(lambda).map(|(a, l)| a * l).sum())
            .collect()
    }

    /// Root coordinates `k` with `C·k = λ`.
    pub fn root_coordinates(&self, lambda: &Weight) -> Vec<Rational> {
        self.scaled_root_coordinates(lambda.coords())
            .into_iter()
            .map(|n| Rational::new(n, self.det))
            .collect()
    }

    /// Integer root coordinates, if `λ ∈ Q`.
    pub fn integral_root_coordinates(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        let scaled = self.scaled_root_coordinates(lambda);
        if scaled.iter().all(|n| n % self.det == 0) {
            Some(scaled.into_iter().map(|n| n / self.det).collect())
        } else {
            None
        }
    }

    /// Height `Σ k_i` of a weight in `Q`.
    pub fn height(&self, lambda: &[i64]) -> Option<i64> {
        self.integral_root_coordinates(lambda)
            .map(|k| k.iter().sum())
    }

    /// Invariant form scaled by `det C`: `(λ, μ)·det = Σ λ_i F_ij μ_j`.
    #[inline]
    pub fn scaled_form(&self, lambda: &[i64], mu: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &l) in lambda.iter().enumerate() {
            if l != 0 {
                acc += l * self.form[i].iter().zip(mu).map(|(f, m)| f * m).sum::<i64>();
            }
        }
        acc
    }

    /// `(λ, μ)` exactly.
    pub fn inner_product(&self, lambda: &Weight, mu: &Weight) -> Rational {
        Rational::new(self.scaled_form(lambda.coords(), mu.coords()), self.det)
    }

    /// Membership in the chosen sublattice `X`.
    pub fn in_lattice(&self, lambda: &Weight) -> bool {
        let class = self.cocenter.project(lambda.coords());
        self.lattice_subgroup.contains(&class)
    }

    /// 0-based global indices of the coordinates of the given 1-based factors.
    pub fn factor_indices(&self, factors: &std::collections::BTreeSet<usize>) -> Vec<usize> {
        factors
            .iter()
            .filter(|&&k| k >= 1 && k <= self.factor_count())
            .flat_map(|&k| self.factor_range(k - 1))
            .collect()
    }

    /// Cartan submatrix on the given 0-based indices.
    pub fn cartan_submatrix(&self, indices: &[usize]) -> Vec<Vec<i64>> {
        indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.cartan[i][j]).collect())
            .collect()
    }
}

/// `(|det M|, adj)` with `adj = |det M| · M⁻¹`, by exact rational elimination.
fn integer_inverse(m: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c] * f;
                    a[r][c] -= v;
                }
            }
        }
    }
    let det = det.abs();
    debug_assert!(det.is_integer());
    let d = det.to_integer();
    let adj = a
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let v = *x * Rational::from_integer(d);
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    (d, adj)
}

/// Free-function form of [`RootDatum::new`].
pub fn build_root_datum(type_string: &str, lattice: LatticeSpec) -> Result<RootDatum> {
    RootDatum::new(type_string, lattice)
}

/// Free-function form of [`RootDatum::root_coordinates`].
pub fn root_coordinates(datum: &RootDatum, lambda: &Weight) -> Vec<Rational> {
    datum.root_coordinates(lambda)
}

/// Free-function form of [`RootDatum::in_lattice`].
pub fn in_lattice(datum: &RootDatum, lambda: &Weight) -> bool {
    datum.in_lattice(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn type_strings_round_trip() {
        for s in ["A2xD4", "A1", "E6xG2xF4", "B3xC2", "D5"] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        assert_eq!("A2xD4".parse::<CartanType>().unwrap().rank(), 6);
    }

    #[test]
    fn type_errors() {
        assert!(matches!(
            "H3".parse::<CartanType>(),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            "E9".parse::<CartanType>(),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            "D2".parse::<CartanType>(),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            "B1".parse::<CartanType>(),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!(matches!(
            "A0".parse::<CartanType>(),
            Err(Error::RankOutOfRange { .. })
        ));
        assert!("A".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
        assert!("A2x".parse::<CartanType>().is_err());
    }

    #[test]
    fn bourbaki_cartan_entries() {
        let b2 = RootDatum::simply_connected("B2").unwrap();
        assert_eq!(b2.cartan(), &[vec![2, -1], vec![-2, 2]]);
        let g2 = RootDatum::simply_connected("G2").unwrap();
        assert_eq!(g2.cartan(), &[vec![2, -3], vec![-1, 2]]);
        let d5 = RootDatum::simply_connected("D5").unwrap();
        assert_eq!(d5.simple_root(5).unwrap(), w(&[0, 0, -1, 0, 2]));
        let e6 = RootDatum::simply_connected("E6").unwrap();
        assert_eq!(e6.simple_root(2).unwrap(), w(&[0, 2, 0, -1, 0, 0]));
        assert_eq!(e6.simple_root(6).unwrap(), w(&[0, 0, 0, 0, -1, 2]));
    }

    #[test]
    fn positive_root_counts() {
        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(a2.positive_roots().len(), 3);
        let g2 = RootDatum::simply_connected("G2").unwrap();
        assert_eq!(g2.positive_roots().len(), 6);
        let aa = RootDatum::simply_connected("A1xA1").unwrap();
        assert_eq!(aa.cartan(), &[vec![2, 0], vec![0, 2]]);
        assert_eq!(aa.positive_roots().len(), 2);
    }

    #[test]
    fn root_coordinate_examples() {
        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(a2.root_coordinates(&w(&[1, 0])), vec![r(2, 3), r(1, 3)]);
        let e6 = RootDatum::simply_connected("E6").unwrap();
        let omega2 = w(&[0, 1, 0, 0, 0, 0]);
        let expected: Vec<Rational> = [1, 2, 2, 3, 2, 1].iter().map(|&x| r(x, 1)).collect();
        assert_eq!(e6.root_coordinates(&omega2), expected);
        assert!(e6
            .root_coordinates(&Weight::zero(6))
            .iter()
            .all(|x| x.is_zero()));
    }

    #[test]
    fn e6_fundamental_weights_match_table() {
        // rows are ω_i in α-coordinates (α1..α6), times 3
        let e6 = RootDatum::simply_connected("E6").unwrap();
        let table = [
            [4, 3, 5, 6, 4, 2],
            [3, 6, 6, 9, 6, 3],
            [5, 6, 10, 12, 8, 4],
            [6, 9, 12, 18, 12, 6],
            [4, 6, 8, 12, 10, 5],
            [2, 3, 4, 6, 5, 4],
        ];
        for (i, row) in table.iter().enumerate() {
            let mut omega = vec![0; 6];
            omega[i] = 1;
            let got = e6.root_coordinates(&w(&omega));
            let want: Vec<Rational> = row.iter().map(|&x| r(x, 3)).collect();
            assert_eq!(got, want, "ω{}", i + 1);
        }
    }

    #[test]
    fn lattice_membership() {
        let a1 = RootDatum::new("A1", LatticeSpec::Adjoint).unwrap();
        assert!(!a1.in_lattice(&w(&[1])));
        assert!(a1.in_lattice(&w(&[2])));
        let a2 = RootDatum::new("A2", LatticeSpec::Adjoint).unwrap();
        assert!(a2.in_lattice(&w(&[1, 1])));
        assert!(!a2.in_lattice(&w(&[1, 0])));
        let sc = RootDatum::simply_connected("B3").unwrap();
        assert!(sc.in_lattice(&w(&[0, 0, 1])));
    }

    #[test]
    fn subgroup_lattice_validation() {
        let d4 = RootDatum::simply_connected("D4").unwrap();
        assert_eq!(d4.cocenter().invariants(), &[2, 2]);
        assert!(RootDatum::new("D4", LatticeSpec::Subgroup(vec![vec![1, 0]])).is_ok());
        assert!(matches!(
            RootDatum::new("D4", LatticeSpec::Subgroup(vec![vec![1]])),
            Err(Error::InvalidLattice(_))
        ));
        assert!(matches!(
            RootDatum::new("D4", LatticeSpec::Subgroup(vec![vec![3, 0]])),
            Err(Error::InvalidLattice(_))
        ));
    }

    #[test]
    fn lattice_spec_json() {
        let spec: LatticeSpec = r#"{"mode":"subgroup","generators":[[1,0]]}"#.parse().unwrap();
        assert_eq!(spec, LatticeSpec::Subgroup(vec![vec![1, 0]]));
        assert_eq!(
            serde_json::to_string(&LatticeSpec::Adjoint).unwrap(),
            r#"{"mode":"adjoint"}"#
        );
        assert_eq!(
            "sc".parse::<LatticeSpec>().unwrap(),
            LatticeSpec::SimplyConnected
        );
        assert!("bogus".parse::<LatticeSpec>().is_err());
    }

    #[test]
    fn form_is_symmetric_and_positive() {
        for t in ["A3", "B3", "C3", "G2", "F4", "D4", "E6", "A1xB2"] {
            let d = RootDatum::simply_connected(t).unwrap();
            let n = d.rank();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(d.form[i][j], d.form[j][i], "{t}");
                }
            }
            // short simple roots have squared length 2
            for (i, root) in d.positive_roots().iter().enumerate().take(n) {
                let _ = i;
                let s = d.scaled_form(root.weight.coords(), root.weight.coords());
                assert_eq!(s, root.norm2 * d.determinant(), "{t}");
            }
        }
    }
}
