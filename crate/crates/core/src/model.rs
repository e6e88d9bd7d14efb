//! Admissible subsets of a λ-chain and the crystal operators on them.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{AffineMap, LambdaChain};
use crate::error::{Error, Result};
use crate::root_system::{RootRef, RootSystem, Weight};
use crate::weyl::{EdgeKind, ElemId, WeylGroup};

pub const DEFAULT_CRYSTAL_BUDGET: usize = 2_000_000;

/// Derived data of a subset `J` (positions are 1-based throughout).
#[derive(Debug, Clone)]
pub struct Folding {
    /// `γ_k` for every position.
    pub gamma: Vec<RootRef>,
    /// `l_k^J` for every position.
    pub levels: Vec<i64>,
    pub gamma_inf: Weight,
    pub mu: Weight,
    /// `w_0 = 1, w_1, …, w_s`.
    pub path: Vec<ElemId>,
}

impl Folding {
    pub fn end(&self) -> ElemId {
        *self.path.last().unwrap()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Symbol {
    Plus,
    Minus,
    PlusMinus,
    MinusPlus,
}

impl Symbol {
    fn from_signs(first: i64, second: i64) -> Self {
        match (first, second) {
            (1, 1) => Symbol::Plus,
            (-1, -1) => Symbol::Minus,
            (1, -1) => Symbol::PlusMinus,
            _ => Symbol::MinusPlus,
        }
    }

    /// Slopes on the two half-steps.
    pub fn signs(self) -> (i64, i64) {
        match self {
            Symbol::Plus => (1, 1),
            Symbol::Minus => (-1, -1),
            Symbol::PlusMinus => (1, -1),
            Symbol::MinusPlus => (-1, 1),
        }
    }
}

/// The word encoding `g_{α_p}`: one symbol per position of `I_{α_p}` plus
/// the terminal slope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignWord {
    pub positions: Vec<usize>,
    pub symbols: Vec<Symbol>,
    pub terminal: i64,
    /// `2·g(0)`.
    pub start: i64,
}

impl SignWord {
    /// `g(k − ½)` for `k = 1..=n+1`, the last entry being the value at ∞.
    pub fn values(&self) -> Vec<i64> {
        let mut g2 = self.start;
        let mut out = Vec::with_capacity(self.symbols.len() + 1);
        for s in &self.symbols {
            let (a, b) = s.signs();
            g2 += a;
            out.push(g2 / 2);
            g2 += b;
        }
        out.push((g2 + self.terminal) / 2);
        out
    }

    /// Every non-terminal `+` or `∓` is followed by `+` or `±`.
    pub fn follows_pattern(&self) -> bool {
        self.symbols.windows(2).all(|w| {
            !matches!(w[0], Symbol::Plus | Symbol::MinusPlus) || matches!(w[1], Symbol::Plus | Symbol::PlusMinus)
        })
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(match s {
                Symbol::Plus => "+",
                Symbol::Minus => "-",
                Symbol::PlusMinus => "±",
                Symbol::MinusPlus => "∓",
            })?;
        }
        f.write_str(if self.terminal > 0 { "+" } else { "-" })
    }
}

pub struct Model<'a> {
    pub group: &'a WeylGroup,
    pub chain: &'a LambdaChain,
}

impl<'a> Model<'a> {
    pub fn new(group: &'a WeylGroup, chain: &'a LambdaChain) -> Self {
        Model { group, chain }
    }

    fn rs(&self) -> &RootSystem {
        &self.group.rs
    }

    pub fn fold(&self, j: &[usize]) -> Folding {
        let rs = self.rs();
        let mut map = AffineMap::identity(rs.rank());
        let mut w = WeylGroup::IDENTITY;
        let mut path = vec![w];
        let mut gamma = Vec::with_capacity(self.chain.len());
        let mut levels = Vec::with_capacity(self.chain.len());
        let mut next = j.iter().peekable();
        for (k, (&beta, &l)) in self.chain.roots.iter().zip(&self.chain.levels).enumerate() {
            gamma.push(self.group.act_root(w, RootRef::pos(beta)));
            let (_, level, _) = map.hyperplane_image(rs, beta, -l);
            levels.push(-level);
            if next.peek() == Some(&&(k + 1)) {
                next.next();
                map.then_reflect(rs, beta, -l);
                w = self.group.times_reflection(w, beta);
                path.push(w);
            }
        }
        let gamma_inf = self.group.act_weight(w, &rs.rho);
        let mu = &self.group.act_weight(w, &self.chain.lambda) - &map.t;
        Folding { gamma, levels, gamma_inf, mu, path }
    }

    /// The first step of `J` that is not an edge of the quantum Bruhat graph,
    /// as `(step, position)`.
    pub fn first_bad_step(&self, j: &[usize]) -> Option<(usize, usize)> {
        let mut w = WeylGroup::IDENTITY;
        for (step, &pos) in j.iter().enumerate() {
            if pos == 0 || pos > self.chain.len() || (step > 0 && pos <= j[step - 1]) {
                return Some((step + 1, pos));
            }
            let beta = self.chain.roots[pos - 1];
            if self.group.qb_edge(w, beta).is_none() {
                return Some((step + 1, pos));
            }
            w = self.group.times_reflection(w, beta);
        }
        None
    }

    pub fn is_admissible(&self, j: &[usize]) -> bool {
        self.first_bad_step(j).is_none()
    }

    /// Kinds of the steps of the path of an admissible subset.
    pub fn step_kinds(&self, j: &[usize]) -> Vec<EdgeKind> {
        let mut w = WeylGroup::IDENTITY;
        j.iter()
            .map(|&pos| {
                let beta = self.chain.roots[pos - 1];
                let kind = self.group.qb_edge(w, beta).expect("admissible subset");
                w = self.group.times_reflection(w, beta);
                kind
            })
            .collect()
    }

    pub fn height(&self, j: &[usize]) -> i64 {
        self.height_from(j, &self.fold(j))
    }

    pub fn height_from(&self, j: &[usize], folding: &Folding) -> i64 {
        j.iter().filter(|&&pos| !folding.gamma[pos - 1].positive).map(|&pos| self.chain.colevels[pos - 1]).sum()
    }

    pub fn sign_word(&self, j: &[usize], p: usize) -> SignWord {
        self.sign_word_from(j, p, &self.fold(j))
    }

    pub fn sign_word_from(&self, j: &[usize], p: usize, folding: &Folding) -> SignWord {
        let rs = self.rs();
        let alpha = rs.affine_simple(p);
        let mut positions = Vec::new();
        let mut symbols = Vec::new();
        for (k, g) in folding.gamma.iter().enumerate() {
            if g.index == alpha.index {
                let sigma = if g.positive == alpha.positive { 1 } else { -1 };
                let eps = if j.binary_search(&(k + 1)).is_ok() { -1 } else { 1 };
                positions.push(k + 1);
                symbols.push(Symbol::from_signs(sigma, eps * sigma));
            }
        }
        let terminal = rs.pair(&folding.gamma_inf, alpha).signum();
        SignWord { positions, symbols, terminal, start: -alpha.sign() }
    }

    fn delta(p: usize) -> i64 {
        i64::from(p == 0)
    }

    pub fn f(&self, j: &[usize], p: usize) -> Option<Vec<usize>> {
        let word = self.sign_word(j, p);
        let vals = word.values();
        let max = *vals.iter().max().unwrap();
        if max <= Self::delta(p) {
            return None;
        }
        let m = vals.iter().position(|&v| v == max).unwrap();
        if m == 0 {
            return None;
        }
        let k = word.positions[m - 1];
        let mut out: Vec<usize> = j.iter().copied().filter(|&x| m == word.positions.len() || x != word.positions[m]).collect();
        out.push(k);
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    pub fn e(&self, j: &[usize], p: usize) -> Option<Vec<usize>> {
        let folding = self.fold(j);
        let word = self.sign_word_from(j, p, &folding);
        let vals = word.values();
        let max = *vals.iter().max().unwrap();
        let pairing = self.rs().pair(&folding.mu, self.rs().affine_simple(p));
        if !(max > pairing && max >= Self::delta(p)) {
            return None;
        }
        let n = word.positions.len();
        let k = (0..n).rev().find(|&i| vals[i] == max)?;
        let mut out: Vec<usize> = j.iter().copied().filter(|&x| x != word.positions[k]).collect();
        if k + 1 < n {
            out.push(word.positions[k + 1]);
        }
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// `(φ_p, ε_p)`.
    pub fn string_lengths(&self, j: &[usize], p: usize) -> (i64, i64) {
        let folding = self.fold(j);
        let max = *self.sign_word_from(j, p, &folding).values().iter().max().unwrap();
        if max >= Self::delta(p) {
            (max - Self::delta(p), max - self.rs().pair(&folding.mu, self.rs().affine_simple(p)))
        } else {
            (0, 0)
        }
    }

    /// All admissible subsets in lexicographic order.
    pub fn enumerate_admissible(&self, budget: usize) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend(WeylGroup::IDENTITY, 0, &mut current, &mut out, budget)?;
        Ok(out)
    }

    fn extend(
        &self,
        w: ElemId,
        from: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        if out.len() >= budget {
            return Err(Error::Resource(format!("more than {budget} admissible subsets")));
        }
        out.push(current.clone());
        for pos in from..self.chain.len() {
            let beta = self.chain.roots[pos];
            if self.group.qb_edge(w, beta).is_some() {
                current.push(pos + 1);
                self.extend(self.group.times_reflection(w, beta), pos + 1, current, out, budget)?;
                current.pop();
            }
        }
        Ok(())
    }

    pub fn build_crystal(&self, budget: usize) -> Result<CrystalGraph> {
        let vertices = self.enumerate_admissible(budget)?;
        let index: HashMap<Vec<usize>, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let rank = self.rs().rank();
        let per_vertex: Vec<(Weight, i64, Vec<(usize, usize)>)> = vertices
            .par_iter()
            .map(|j| {
                let folding = self.fold(j);
                let arrows = (0..=rank).filter_map(|p| self.f(j, p).map(|t| (p, t))).map(|(p, t)| (p, index[&t])).collect();
                (folding.mu.clone(), self.height_from(j, &folding), arrows)
            })
            .collect();
        let mut edges = Vec::new();
        let mut weights = Vec::with_capacity(vertices.len());
        let mut heights = Vec::with_capacity(vertices.len());
        for (src, (mu, h, arrows)) in per_vertex.into_iter().enumerate() {
            weights.push(mu);
            heights.push(h);
            edges.extend(arrows.into_iter().map(|(color, dst)| CrystalEdge { src, dst, color }));
        }
        Ok(CrystalGraph { vertices, index, weights, heights, edges })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrystalEdge {
    pub src: usize,
    pub dst: usize,
    pub color: usize,
}

#[derive(Debug, Clone)]
pub struct CrystalGraph {
    pub vertices: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    pub weights: Vec<Weight>,
    pub heights: Vec<i64>,
    pub edges: Vec<CrystalEdge>,
}

impl CrystalGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().enumerate().map(|(i, j)| serde_json::json!({
                "id": i,
                "J": j,
                "weight": self.weights[i].0,
                "height": self.heights[i],
            })).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph crystal {\n");
        for (i, j) in self.vertices.iter().enumerate() {
            let set: Vec<String> = j.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("  {i} [label=\"{{{}}}\\nh={}\"];\n", set.join(","), self.heights[i]));
        }
        for e in &self.edges {
            let style = if e.color == 0 { ", style=dashed" } else { "" };
            s.push_str(&format!("  {} -> {} [label=\"{}\"{style}];\n", e.src, e.dst, e.color));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::chain_for_columns;

    fn setup(tag: &str, cols: &[usize]) -> (WeylGroup, LambdaChain) {
        let rs = RootSystem::from_tag(tag).unwrap();
        (WeylGroup::new(&rs).unwrap(), chain_for_columns(&rs, cols).unwrap())
    }

    #[test]
    fn inadmissible_subset() {
        let (g, c) = setup("A2", &[1, 2, 2, 1]);
        let m = Model::new(&g, &c);
        let bad = (1..=c.len()).find(|&p| !m.is_admissible(&[1, p])).expect("some two-step path leaves QB(W)");
        assert_eq!(m.first_bad_step(&[1, bad]), Some((2, bad)));
        assert!(!m.is_admissible(&[2, 1]));
    }

    #[test]
    fn empty_subset() {
        let (g, c) = setup("A2", &[1, 2]);
        let m = Model::new(&g, &c);
        let f = m.fold(&[]);
        assert_eq!(f.mu, c.lambda);
        assert_eq!(f.gamma.iter().map(|r| r.index).collect::<Vec<_>>(), c.roots);
        assert!(m.is_admissible(&[]));
        assert_eq!(m.height(&[]), 0);
    }

    #[test]
    fn single_column_a2() {
        let (g, c) = setup("A2", &[1]);
        let m = Model::new(&g, &c);
        let rs = &g.rs;
        let a1 = rs.root_weight(RootRef::pos(rs.simple(0)));
        assert_eq!(m.fold(&[1]).mu, &c.lambda - &a1);
        assert_eq!(m.f(&[], 1), Some(vec![1]));
        assert_eq!(m.e(&[1], 1), Some(vec![]));
        assert_eq!(m.f(&[], 2), None);
        assert_eq!(m.string_lengths(&[], 1), (1, 0));
        assert_eq!(m.enumerate_admissible(100).unwrap().len(), 3);
        let w = m.sign_word(&[], 1);
        assert_eq!(w.to_string(), "++");
    }

    #[test]
    fn example_sign_word() {
        // (α,-1), (-α,1), (α,1), (α,1), (α,-1), (-α,1), (α,-1), (α,1) with terminal +
        let pairs = [(1, -1), (-1, 1), (1, 1), (1, 1), (1, -1), (-1, 1), (1, -1), (1, 1)];
        let w = SignWord {
            positions: (1..=8).collect(),
            symbols: pairs.iter().map(|&(s, e)| Symbol::from_signs(s, s * e)).collect(),
            terminal: 1,
            start: -1,
        };
        assert_eq!(w.to_string(), "±−++±−±++".replace('−', "-"));
        assert!(w.follows_pattern());
    }

    #[test]
    fn counts() {
        let (g, c) = setup("A2", &[1, 2, 2, 1]);
        assert_eq!(Model::new(&g, &c).enumerate_admissible(1000).unwrap().len(), 81);
        let rs = RootSystem::from_tag("A2").unwrap();
        let empty = LambdaChain::from_roots(&rs, Weight::zero(2), vec![], vec![]).unwrap();
        assert_eq!(Model::new(&g, &empty).enumerate_admissible(10).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn crystal_b11() {
        let (g, c) = setup("A2", &[1]);
        let cr = Model::new(&g, &c).build_crystal(100).unwrap();
        assert_eq!(cr.len(), 3);
        let mut colors: Vec<usize> = cr.edges.iter().map(|e| e.color).collect();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2]);
    }

    #[test]
    fn example_subset_admissible() {
        let (g, c) = setup("A2", &[1, 2, 2, 1]);
        let m = Model::new(&g, &c);
        assert!(m.is_admissible(&[1, 2, 3, 6, 7, 8]));
    }
}
