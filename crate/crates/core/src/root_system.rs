//! Finite crystallographic root systems in integer coordinates.
//!
//! Roots are stored by their coefficients in the simple-root basis; weights
//! are stored in the fundamental-weight basis. With these two bases every
//! quantity used downstream (pairings with coroots, reflections, affine
//! levels) is an integer, so no rational arithmetic is needed.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(Self { series, rank })
        } else {
            Err(invalid!("no root system of type {:?}{}", series, rank))
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(invalid!("unknown type tag {s:?}")),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| invalid!("unknown type tag {s:?}"))?;
        CartanType::new(series, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// A root given as an index into the positive roots together with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootRef {
    pub index: usize,
    pub positive: bool,
}

impl RootRef {
    pub fn pos(index: usize) -> Self {
        Self { index, positive: true }
    }

    pub fn neg_of(index: usize) -> Self {
        Self { index, positive: false }
    }

    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// `|α|`.
    pub fn abs(&self) -> Self {
        Self::pos(self.index)
    }
}

impl Neg for RootRef {
    type Output = RootRef;
    fn neg(self) -> RootRef {
        RootRef { index: self.index, positive: !self.positive }
    }
}

#[derive(Debug, Clone)]
pub struct PositiveRoot {
    /// Coefficients in the simple-root basis.
    pub coeffs: Vec<i64>,
    /// Coefficients of the coroot in the simple-coroot basis.
    pub coroot: Vec<i64>,
    /// The root written in fundamental-weight coordinates.
    pub weight: Weight,
    pub height: i64,
    pub coroot_height: i64,
    pub sq_len: i64,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    /// `cartan[i][j] = <α_i, α_j^∨>`.
    pub cartan: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots (short roots have length 2).
    pub simple_sq_len: Vec<i64>,
    pub positive: Vec<PositiveRoot>,
    pub rho: Weight,
    /// Index of the highest root.
    pub highest: usize,
    simple_index: Vec<usize>,
    lookup: HashMap<Weight, RootRef>,
}

fn cartan_matrix(t: CartanType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut sq = vec![2i64; n];
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t.series {
        Series::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Series::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // α_n = ε_n is short.
            c[n - 2][n - 1] = -2;
            c[n - 1][n - 2] = -1;
            for s in sq.iter_mut().take(n - 1) {
                *s = 4;
            }
        }
        Series::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // α_n = 2ε_n is long.
            c[n - 2][n - 1] = -1;
            c[n - 1][n - 2] = -2;
            sq[n - 1] = 4;
        }
        Series::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Series::E => {
            // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Series::F => {
            link(&mut c, 0, 1);
            link(&mut c, 2, 3);
            c[1][2] = -2;
            c[2][1] = -1;
            sq = vec![4, 4, 2, 2];
        }
        Series::G => {
            // α_1 short, α_2 long.
            c[0][1] = -1;
            c[1][0] = -3;
            sq = vec![2, 6];
        }
    }
    (c, sq)
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Self {
        let (cartan, simple_sq_len) = cartan_matrix(cartan_type);
        let n = cartan_type.rank;

        // Closure of the simple roots under simple reflections.
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        let mut seen: HashSet<Vec<i64>> = (0..n).map(unit).collect();
        let mut frontier: Vec<Vec<i64>> = (0..n).map(unit).collect();
        while let Some(beta) = frontier.pop() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if image.iter().all(|&x| x >= 0) && seen.insert(image.clone()) {
                    frontier.push(image);
                }
            }
        }
        let mut coeffs: Vec<Vec<i64>> = seen.into_iter().collect();
        coeffs.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        let mut positive = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let sq_len: i64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| c[i] * c[j] * cartan[i][j] * simple_sq_len[j])
                .sum::<i64>()
                / 2;
            let coroot: Vec<i64> = (0..n).map(|i| c[i] * simple_sq_len[i] / sq_len).collect();
            let weight = Weight((0..n).map(|j| (0..n).map(|i| c[i] * cartan[i][j]).sum()).collect());
            positive.push(PositiveRoot {
                height: c.iter().sum(),
                coroot_height: coroot.iter().sum(),
                coeffs: c,
                coroot,
                weight,
                sq_len,
            });
        }

        let mut lookup = HashMap::new();
        for (k, r) in positive.iter().enumerate() {
            lookup.insert(r.weight.clone(), RootRef::pos(k));
            lookup.insert(-&r.weight, RootRef::neg_of(k));
        }
        let simple_index = (0..n)
            .map(|i| positive.iter().position(|r| r.coeffs == unit(i)).unwrap())
            .collect();
        // 2ρ = sum of positive roots; in ω-coordinates ρ = (1, …, 1).
        let rho = Weight(vec![1; n]);
        let highest = positive.len() - 1;
        RootSystem { cartan_type, cartan, simple_sq_len, positive, rho, highest, simple_index, lookup }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(Self::new(tag.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Index of the simple root `α_i` (0-based `i`) among the positive roots.
    pub fn simple(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    pub fn simple_position(&self, root: usize) -> Option<usize> {
        self.simple_index.iter().position(|&k| k == root)
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Weight(v)
    }

    /// `α_p` for `1 ≤ p ≤ rank`, and `θ = −α̃` for `p = 0`.
    pub fn affine_simple(&self, p: usize) -> RootRef {
        if p == 0 {
            RootRef::neg_of(self.highest)
        } else {
            RootRef::pos(self.simple(p - 1))
        }
    }

    pub fn root_weight(&self, r: RootRef) -> Weight {
        let w = &self.positive[r.index].weight;
        if r.positive {
            w.clone()
        } else {
            -w
        }
    }

    pub fn lookup(&self, w: &Weight) -> Option<RootRef> {
        self.lookup.get(w).copied()
    }

    /// `<v, α^∨>`.
    pub fn pair(&self, v: &Weight, r: RootRef) -> i64 {
        let c = &self.positive[r.index].coroot;
        r.sign() * c.iter().zip(&v.0).map(|(a, b)| a * b).sum::<i64>()
    }

    /// `<β, α^∨>` for two roots.
    pub fn root_pair(&self, beta: RootRef, alpha: RootRef) -> i64 {
        self.pair(&self.root_weight(beta), alpha)
    }

    /// The affine reflection `s_{α,k}(v) = v − (<v, α^∨> − k) α`.
    pub fn reflect_affine(&self, v: &Weight, alpha: RootRef, k: i64) -> Weight {
        let c = self.pair(v, alpha) - k;
        v - &(c * &self.root_weight(alpha))
    }

    pub fn reflect(&self, v: &Weight, alpha: RootRef) -> Weight {
        self.reflect_affine(v, alpha, 0)
    }

    pub fn reflect_root(&self, beta: RootRef, alpha: RootRef) -> RootRef {
        let img = self.reflect(&self.root_weight(beta), alpha);
        self.lookup(&img).expect("root system is closed under reflections")
    }

    pub fn max_sq_len(&self) -> i64 {
        self.positive.iter().map(|r| r.sq_len).max().unwrap()
    }

    pub fn is_long(&self, root: usize) -> bool {
        self.positive[root].sq_len == self.max_sq_len()
    }

    /// Quantum-root test by the long/short criterion: long roots are quantum,
    /// and a short root is quantum iff its support avoids the long simple
    /// roots.
    pub fn is_quantum_root(&self, root: usize) -> bool {
        if self.is_long(root) {
            return true;
        }
        let max = self.max_sq_len();
        self.positive[root]
            .coeffs
            .iter()
            .zip(&self.simple_sq_len)
            .all(|(&c, &len)| c == 0 || len != max)
    }

    /// `ℓ(s_α)`, computed as the number of positive roots sent negative.
    pub fn reflection_length(&self, root: usize) -> usize {
        let a = RootRef::pos(root);
        (0..self.num_positive())
            .filter(|&k| !self.reflect_root(RootRef::pos(k), a).positive)
            .count()
    }

    /// Coefficients `(x, y)` with `γ = xα + yβ`, if integral.
    fn integer_combination(&self, gamma: &[i64], a: &[i64], b: &[i64]) -> Option<(i64, i64)> {
        let n = a.len();
        for i in 0..n {
            for j in i + 1..n {
                let det = a[i] * b[j] - a[j] * b[i];
                if det == 0 {
                    continue;
                }
                let xn = gamma[i] * b[j] - gamma[j] * b[i];
                let yn = a[i] * gamma[j] - a[j] * gamma[i];
                if xn % det != 0 || yn % det != 0 {
                    return None;
                }
                let (x, y) = (xn / det, yn / det);
                let ok = (0..n).all(|k| x * a[k] + y * b[k] == gamma[k]);
                return ok.then_some((x, y));
            }
        }
        None
    }

    fn signed_coeffs(&self, r: RootRef) -> Vec<i64> {
        self.positive[r.index].coeffs.iter().map(|c| r.sign() * c).collect()
    }

    /// The rank-two subsystem `(Zα + Zβ) ∩ Φ`.
    pub fn rank2_subsystem(&self, alpha: RootRef, beta: RootRef) -> Result<Rank2Subsystem> {
        let a = self.signed_coeffs(alpha);
        let b = self.signed_coeffs(beta);
        let proportional = (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]));
        if proportional {
            return Err(invalid!("roots {alpha:?} and {beta:?} are proportional"));
        }
        let roots: Vec<usize> = (0..self.num_positive())
            .filter(|&k| self.integer_combination(&self.positive[k].coeffs, &a, &b).is_some())
            .collect();
        Rank2Subsystem::from_positive_roots(self, roots)
    }

    /// Enumerates every rank-two subsystem `(Zα+Zβ) ∩ Φ` exactly once.
    pub fn all_rank2_subsystems(&self) -> Vec<Rank2Subsystem> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let n = self.num_positive();
        for i in 0..n {
            for j in i + 1..n {
                if let Ok(sub) = self.rank2_subsystem(RootRef::pos(i), RootRef::pos(j)) {
                    if seen.insert(sub.positive.clone()) {
                        out.push(sub);
                    }
                }
            }
        }
        out
    }

    /// Ambient `ε`-coordinates of a weight in type A (normalised so the last
    /// coordinate is 0).
    pub fn type_a_coords(&self, v: &Weight) -> Option<Vec<i64>> {
        if self.cartan_type.series != Series::A {
            return None;
        }
        let n = self.rank() + 1;
        Some((0..n).map(|j| if j + 1 < n { v.0[j..].iter().sum() } else { 0 }).collect())
    }

    /// The pair `(i, j)` with `α = ε_i − ε_j` (1-based) in type A.
    pub fn type_a_pair(&self, root: usize) -> Option<(usize, usize)> {
        if self.cartan_type.series != Series::A {
            return None;
        }
        let c = &self.positive[root].coeffs;
        let first = c.iter().position(|&x| x != 0)?;
        let last = c.iter().rposition(|&x| x != 0)?;
        Some((first + 1, last + 2))
    }

    pub fn type_a_root(&self, i: usize, j: usize) -> Option<usize> {
        if self.cartan_type.series != Series::A || !(1 <= i && i < j && j <= self.rank() + 1) {
            return None;
        }
        let coeffs: Vec<i64> = (1..=self.rank()).map(|k| i64::from(i <= k && k < j)).collect();
        self.positive.iter().position(|r| r.coeffs == coeffs)
    }

    /// Human-readable root label: `(i,j)` in type A, simple coordinates otherwise.
    pub fn root_label(&self, root: usize) -> String {
        match self.type_a_pair(root) {
            Some((i, j)) => format!("({i},{j})"),
            None => format!("{:?}", self.positive[root].coeffs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank2Kind {
    A1xA1,
    A2,
    B2,
    G2,
}

impl Rank2Kind {
    /// Order of the rotation subgroup; also the number of positive roots.
    pub fn q(&self) -> usize {
        match self {
            Rank2Kind::A1xA1 => 2,
            Rank2Kind::A2 => 3,
            Rank2Kind::B2 => 4,
            Rank2Kind::G2 => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Subsystem {
    pub kind: Rank2Kind,
    /// Positive roots (indices into the ambient system), sorted.
    pub positive: Vec<usize>,
    /// The two simple roots of the subsystem.
    pub simple: [usize; 2],
}

impl Rank2Subsystem {
    /// Builds the subsystem from its full set of positive roots; checks that
    /// the set is closed under its own reflections.
    pub fn from_positive_roots(rs: &RootSystem, mut roots: Vec<usize>) -> Result<Self> {
        roots.sort_unstable();
        roots.dedup();
        let kind = match roots.len() {
            2 => Rank2Kind::A1xA1,
            3 => Rank2Kind::A2,
            4 => Rank2Kind::B2,
            6 => Rank2Kind::G2,
            k => return Err(invalid!("{k} roots do not form a rank-two positive system")),
        };
        let set: HashSet<usize> = roots.iter().copied().collect();
        for &a in &roots {
            for &b in &roots {
                let img = rs.reflect_root(RootRef::pos(b), RootRef::pos(a));
                if !set.contains(&img.index) {
                    return Err(invalid!("root set {roots:?} is not closed under reflections"));
                }
            }
        }
        // Simple roots are the indecomposable ones.
        let sums: HashSet<Vec<i64>> = roots
            .iter()
            .flat_map(|&a| roots.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| {
                rs.positive[a].coeffs.iter().zip(&rs.positive[b].coeffs).map(|(x, y)| x + y).collect()
            })
            .collect();
        let simple: Vec<usize> = roots.iter().copied().filter(|&r| !sums.contains(&rs.positive[r].coeffs)).collect();
        if simple.len() != 2 {
            return Err(invalid!("root set {roots:?} has {} indecomposable roots", simple.len()));
        }
        let sub = Rank2Subsystem { kind, positive: roots, simple: [simple[0], simple[1]] };
        if sub.reflection_ordering(rs, sub.simple[0]).len() != sub.positive.len() {
            return Err(invalid!("root set {:?} is not a dihedral positive system", sub.positive));
        }
        Ok(sub)
    }

    pub fn contains(&self, root: usize) -> bool {
        self.positive.binary_search(&root).is_ok()
    }

    /// The reflection ordering `α, s_α(β), s_α s_β(α), …, β` starting at the
    /// simple root `first`.
    pub fn reflection_ordering(&self, rs: &RootSystem, first: usize) -> Vec<usize> {
        let (a, b) = if first == self.simple[0] {
            (self.simple[0], self.simple[1])
        } else {
            (self.simple[1], self.simple[0])
        };
        let ord = self.ordering_unchecked(rs, RootRef::pos(a), RootRef::pos(b));
        let distinct: HashSet<usize> = ord.iter().copied().collect();
        if distinct.len() == ord.len() && ord.iter().all(|&r| self.contains(r)) {
            ord
        } else {
            Vec::new()
        }
    }

    fn ordering_unchecked(&self, rs: &RootSystem, ra: RootRef, rb: RootRef) -> Vec<usize> {
        (0..self.kind.q())
            .map(|k| {
                // k alternating reflections s_α s_β … applied to α (k even) or β (k odd)
                let mut root = if k % 2 == 0 { ra } else { rb };
                for step in (0..k).rev() {
                    let refl = if step % 2 == 0 { ra } else { rb };
                    root = rs.reflect_root(root, refl);
                }
                root.index
            })
            .collect()
    }

    /// Writes `β^∨ = a·β_first^∨ + b·β_last^∨` for a root of the subsystem.
    pub fn coroot_coordinates(&self, rs: &RootSystem, root: usize, first: usize, last: usize) -> Option<(i64, i64)> {
        rs.integer_combination(&rs.positive[root].coroot, &rs.positive[first].coroot, &rs.positive[last].coroot)
    }

    /// Height of `β^∨` in the subsystem's own coroot system.
    pub fn coroot_height(&self, rs: &RootSystem, root: usize) -> i64 {
        let (a, b) = self
            .coroot_coordinates(rs, root, self.simple[0], self.simple[1])
            .expect("subsystem coroots are integral combinations of simple coroots");
        a + b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(tag: &str) -> RootSystem {
        RootSystem::from_tag(tag).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for (tag, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(rs(tag).num_positive(), n, "{tag}");
        }
    }

    #[test]
    fn highest_root_height_a2() {
        let a2 = rs("A2");
        assert_eq!(a2.positive[a2.highest].height, 2);
    }

    #[test]
    fn rejects_unknown_tags() {
        for bad in ["X3", "D3", "B1", "E9", "F3", "G3", "A0", "", "A"] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn fundamental_weights_dual_to_simple_coroots() {
        for tag in ["A3", "B3", "C4", "D5", "G2", "F4", "E6"] {
            let r = rs(tag);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let v = r.pair(&r.fundamental_weight(i), RootRef::pos(r.simple(j)));
                    assert_eq!(v, i64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn rho_is_half_sum_and_closure_holds() {
        for tag in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(tag);
            let two_rho = r.positive.iter().fold(Weight::zero(r.rank()), |acc, p| &acc + &p.weight);
            assert_eq!(two_rho, 2 * &r.rho, "{tag}");
            for i in 0..r.rank() {
                for k in 0..r.num_positive() {
                    let img = r.reflect_root(RootRef::pos(k), RootRef::pos(r.simple(i)));
                    assert!(img.index < r.num_positive());
                }
            }
            for p in &r.positive {
                // α^∨ = 2α/<α,α> ⇔ <α, α^∨> = 2.
                assert_eq!(r.pair(&p.weight, r.lookup(&p.weight).unwrap()), 2);
            }
        }
    }

    #[test]
    fn reflect_weight_examples() {
        let a2 = rs("A2");
        let a1 = RootRef::pos(a2.simple(0));
        let w1 = a2.fundamental_weight(0);
        let w2 = a2.fundamental_weight(1);
        assert_eq!(a2.reflect(&w1, a1), &w1 - &a2.root_weight(a1));
        assert_eq!(a2.reflect(&w2, a1), w2);
        let m = -&w1;
        assert_eq!(a2.pair(&m, a1), -1);
        assert_eq!(a2.reflect_affine(&m, a1, -1), m);
    }

    #[test]
    fn rank2_examples() {
        let a3 = rs("A3");
        let sub = a3
            .rank2_subsystem(RootRef::pos(a3.type_a_root(1, 2).unwrap()), RootRef::pos(a3.type_a_root(2, 3).unwrap()))
            .unwrap();
        assert_eq!((sub.kind, sub.positive.len()), (Rank2Kind::A2, 3));

        let c2 = rs("C2");
        let sub = c2.rank2_subsystem(RootRef::pos(c2.simple(0)), RootRef::pos(c2.simple(1))).unwrap();
        assert_eq!((sub.kind, sub.positive.len()), (Rank2Kind::B2, 4));

        let d4 = rs("D4");
        // ε1−ε2 = α1, ε3−ε4 = α3.
        let sub = d4.rank2_subsystem(RootRef::pos(d4.simple(0)), RootRef::pos(d4.simple(2))).unwrap();
        assert_eq!((sub.kind, sub.positive.len()), (Rank2Kind::A1xA1, 2));

        assert!(a3.rank2_subsystem(RootRef::pos(0), RootRef::neg_of(0)).is_err());
    }

    #[test]
    fn reflection_ordering_a2() {
        let a2 = rs("A2");
        let sub = a2.rank2_subsystem(RootRef::pos(0), RootRef::pos(1)).unwrap();
        let ord = sub.reflection_ordering(&a2, a2.simple(0));
        let labels: Vec<_> = ord.iter().map(|&r| a2.type_a_pair(r).unwrap()).collect();
        assert_eq!(labels, vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn quantum_root_examples() {
        let c2 = rs("C2");
        let non_quantum: Vec<usize> = (0..4).filter(|&k| !c2.is_quantum_root(k)).collect();
        assert_eq!(non_quantum.len(), 1);
        // α1 + α2 in Bourbaki C2 labelling.
        assert_eq!(c2.positive[non_quantum[0]].coeffs, vec![1, 1]);
        for tag in ["A3", "D4", "E6"] {
            let r = rs(tag);
            assert!((0..r.num_positive()).all(|k| r.is_quantum_root(k)));
        }
        let g2 = rs("G2");
        assert!((0..6).filter(|&k| g2.is_long(k)).all(|k| g2.is_quantum_root(k)));
    }

    #[test]
    fn quantum_root_criterion_matches_length_formula() {
        for tag in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"] {
            let r = rs(tag);
            for k in 0..r.num_positive() {
                let len = r.reflection_length(k) as i64;
                let bound = 2 * r.positive[k].coroot_height - 1;
                assert!(len <= bound, "{tag} root {k}");
                assert_eq!(r.is_quantum_root(k), len == bound, "{tag} root {k}");
            }
        }
    }

    #[test]
    fn type_a_roots_roundtrip() {
        let a3 = rs("A3");
        for k in 0..a3.num_positive() {
            let (i, j) = a3.type_a_pair(k).unwrap();
            assert_eq!(a3.type_a_root(i, j), Some(k));
        }
    }
}
