//! Weyl group arithmetic and the quantum Bruhat graph.
//!
//! Elements are identified by the images of the fundamental weights, which
//! makes equality and hashing O(rank²) and independent of reduced words. The
//! whole group is enumerated once; all products used downstream go through
//! precomputed tables.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::root_system::{Rank2Subsystem, RootRef, RootSystem, Weight};

pub const DEFAULT_GROUP_BUDGET: usize = 10_000_000;

/// Canonical form: column `j` holds `w(ω_j)` in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    images: Vec<i64>,
}

impl WeylElement {
    pub(crate) fn identity(rank: usize) -> Self {
        let mut images = vec![0; rank * rank];
        for j in 0..rank {
            images[j * rank + j] = 1;
        }
        Self { rank, images }
    }

    fn image_of_fundamental(&self, j: usize) -> &[i64] {
        &self.images[j * self.rank..(j + 1) * self.rank]
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        let mut out = vec![0; self.rank];
        for (j, &c) in v.0.iter().enumerate() {
            if c != 0 {
                for (o, x) in out.iter_mut().zip(self.image_of_fundamental(j)) {
                    *o += c * x;
                }
            }
        }
        Weight(out)
    }

    /// `w · s_α`, using `s_α(ω_j) = ω_j − <ω_j, α^∨> α`.
    pub(crate) fn times_reflection(&self, rs: &RootSystem, alpha: usize) -> Self {
        let w_alpha = self.apply(&rs.positive[alpha].weight);
        let mut images = self.images.clone();
        for (j, &c) in rs.positive[alpha].coroot.iter().enumerate() {
            if c != 0 {
                for i in 0..self.rank {
                    images[j * self.rank + i] -= c * w_alpha.0[i];
                }
            }
        }
        Self { rank: self.rank, images }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

pub type ElemId = usize;

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub rs: RootSystem,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, ElemId>,
    length: Vec<usize>,
    words: Vec<Vec<usize>>,
    /// `root_image[w][k] = w(β_k)`.
    root_image: Vec<Vec<RootRef>>,
    /// `times_refl[w][k] = w · s_{β_k}`.
    times_refl: Vec<Vec<ElemId>>,
}

impl WeylGroup {
    pub const IDENTITY: ElemId = 0;

    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_budget(rs, DEFAULT_GROUP_BUDGET)
    }

    /// Breadth-first closure under right multiplication by simple reflections.
    pub fn with_budget(rs: &RootSystem, budget: usize) -> Result<Self> {
        let rank = rs.rank();
        let id = WeylElement::identity(rank);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..rank {
                let next = elements[cur].times_reflection(rs, rs.simple(i));
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= budget {
                    return Err(Error::Resource(format!(
                        "Weyl group of {} exceeds the budget of {budget} elements",
                        rs.cartan_type
                    )));
                }
                let mut word = words[cur].clone();
                word.push(i);
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                words.push(word);
            }
        }

        let root_image: Vec<Vec<RootRef>> = elements
            .iter()
            .map(|w| {
                rs.positive
                    .iter()
                    .map(|r| rs.lookup(&w.apply(&r.weight)).expect("W permutes the roots"))
                    .collect()
            })
            .collect();
        let length = root_image.iter().map(|img| img.iter().filter(|r| !r.positive).count()).collect();
        let times_refl = elements
            .iter()
            .map(|w| (0..rs.num_positive()).map(|k| index[&w.times_reflection(rs, k)]).collect())
            .collect();
        Ok(WeylGroup { rs: rs.clone(), elements, index, length, words, root_image, times_refl })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, w: ElemId) -> &WeylElement {
        &self.elements[w]
    }

    pub fn id_of(&self, w: &WeylElement) -> Option<ElemId> {
        self.index.get(w).copied()
    }

    pub fn length(&self, w: ElemId) -> usize {
        self.length[w]
    }

    /// A reduced word, as 0-based simple reflection indices.
    pub fn reduced_word(&self, w: ElemId) -> &[usize] {
        &self.words[w]
    }

    pub fn longest(&self) -> ElemId {
        (0..self.order()).max_by_key(|&w| self.length[w]).unwrap()
    }

    pub fn act_root(&self, w: ElemId, r: RootRef) -> RootRef {
        let img = self.root_image[w][r.index];
        if r.positive {
            img
        } else {
            -img
        }
    }

    pub fn act_weight(&self, w: ElemId, v: &Weight) -> Weight {
        self.elements[w].apply(v)
    }

    pub fn times_reflection(&self, w: ElemId, root: usize) -> ElemId {
        self.times_refl[w][root]
    }

    pub fn reflection(&self, root: usize) -> ElemId {
        self.times_refl[Self::IDENTITY][root]
    }

    pub fn from_word(&self, word: &[usize]) -> ElemId {
        word.iter().fold(Self::IDENTITY, |w, &i| self.times_refl[w][self.rs.simple(i)])
    }

    pub fn multiply(&self, a: ElemId, b: ElemId) -> ElemId {
        self.words[b].iter().fold(a, |w, &i| self.times_refl[w][self.rs.simple(i)])
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.words[w].iter().rev().fold(Self::IDENTITY, |x, &i| self.times_refl[x][self.rs.simple(i)])
    }

    /// Classifies the potential edge `w → w s_α` of the quantum Bruhat graph.
    pub fn qb_edge(&self, w: ElemId, root: usize) -> Option<EdgeKind> {
        let target = self.times_refl[w][root];
        let (lw, lt) = (self.length[w] as i64, self.length[target] as i64);
        if lt == lw + 1 {
            Some(EdgeKind::Up)
        } else if lt == lw - 2 * self.rs.positive[root].coroot_height + 1 {
            Some(EdgeKind::Down)
        } else {
            None
        }
    }

    /// A reflection ordering of all positive roots, read off from the
    /// reduced word of the longest element.
    pub fn reflection_ordering(&self) -> Vec<usize> {
        let word = self.reduced_word(self.longest());
        let mut prefix = Self::IDENTITY;
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            let simple = RootRef::pos(self.rs.simple(i));
            out.push(self.act_root(prefix, simple).index);
            prefix = self.times_refl[prefix][self.rs.simple(i)];
        }
        out
    }

    /// Every path from `v` whose labels are strictly monotone with respect
    /// to `ordering` (only labels appearing in `ordering` are used), grouped
    /// by endpoint.
    pub fn monotone_paths_from(
        &self,
        v: ElemId,
        ordering: &[usize],
        direction: Direction,
    ) -> HashMap<ElemId, Vec<Vec<usize>>> {
        self.monotone_paths_by(v, ordering, direction, &|w, r| self.qb_edge(w, r))
    }

    /// As [`Self::monotone_paths_from`], over an arbitrary edge relation.
    pub fn monotone_paths_by(
        &self,
        v: ElemId,
        ordering: &[usize],
        direction: Direction,
        edge: &dyn Fn(ElemId, usize) -> Option<EdgeKind>,
    ) -> HashMap<ElemId, Vec<Vec<usize>>> {
        let ord: Vec<usize> = match direction {
            Direction::Increasing => ordering.to_vec(),
            Direction::Decreasing => ordering.iter().rev().copied().collect(),
        };
        let mut out: HashMap<ElemId, Vec<Vec<usize>>> = HashMap::new();
        let mut labels = Vec::new();
        self.extend_monotone(v, &ord, 0, edge, &mut labels, &mut out);
        out
    }

    fn extend_monotone(
        &self,
        cur: ElemId,
        ord: &[usize],
        from: usize,
        edge: &dyn Fn(ElemId, usize) -> Option<EdgeKind>,
        labels: &mut Vec<usize>,
        out: &mut HashMap<ElemId, Vec<Vec<usize>>>,
    ) {
        out.entry(cur).or_default().push(labels.clone());
        for (pos, &root) in ord.iter().enumerate().skip(from) {
            if edge(cur, root).is_some() {
                labels.push(root);
                self.extend_monotone(self.times_refl[cur][root], ord, pos + 1, edge, labels, out);
                labels.pop();
            }
        }
    }

    /// The unique path from `v` to `w` with strictly monotone labels. Zero
    /// or several such paths is reported as a theorem violation.
    pub fn shellable_path(&self, v: ElemId, w: ElemId, ordering: &[usize], direction: Direction) -> Result<Vec<usize>> {
        self.shellable_path_by(v, w, ordering, direction, &|x, r| self.qb_edge(x, r))
    }

    pub fn shellable_path_by(
        &self,
        v: ElemId,
        w: ElemId,
        ordering: &[usize],
        direction: Direction,
        edge: &dyn Fn(ElemId, usize) -> Option<EdgeKind>,
    ) -> Result<Vec<usize>> {
        let paths = self.monotone_paths_by(v, ordering, direction, edge);
        match paths.get(&w).map(|p| p.as_slice()) {
            Some([one]) => Ok(one.clone()),
            Some(many) => Err(Error::TheoremViolation(format!(
                "{} monotone paths from {:?} to {:?}",
                many.len(),
                self.words[v],
                self.words[w]
            ))),
            None => Err(Error::TheoremViolation(format!(
                "no monotone path from {:?} to {:?}",
                self.words[v], self.words[w]
            ))),
        }
    }

    /// Among all shortest paths from `v` to `w`, the lexicographically
    /// minimal (or maximal) label sequence, comparing labels by their
    /// position in `ordering`.
    pub fn lex_extremal_shortest_path(&self, v: ElemId, w: ElemId, ordering: &[usize], minimal: bool) -> Vec<usize> {
        let pos: HashMap<usize, usize> = ordering.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        // Distances to w, by breadth-first search on reversed edges.
        let mut dist = vec![usize::MAX; self.order()];
        dist[w] = 0;
        let mut queue = VecDeque::from([w]);
        let mut preds: Vec<Vec<ElemId>> = vec![Vec::new(); self.order()];
        for x in 0..self.order() {
            for &r in ordering {
                if self.qb_edge(x, r).is_some() {
                    preds[self.times_refl[x][r]].push(x);
                }
            }
        }
        while let Some(x) = queue.pop_front() {
            for &p in &preds[x] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[x] + 1;
                    queue.push_back(p);
                }
            }
        }
        let mut cur = v;
        let mut out = Vec::new();
        while cur != w {
            let mut options: Vec<usize> = ordering
                .iter()
                .copied()
                .filter(|&r| self.qb_edge(cur, r).is_some() && dist[self.times_refl[cur][r]] + 1 == dist[cur])
                .collect();
            options.sort_by_key(|r| pos[r]);
            let pick = if minimal { options[0] } else { *options.last().unwrap() };
            out.push(pick);
            cur = self.times_refl[cur][pick];
        }
        out
    }

    pub fn build_qbg(&self) -> QBGraph {
        let n = self.rs.num_positive();
        let edges = (0..self.order())
            .flat_map(|w| (0..n).map(move |k| (w, k)))
            .filter_map(|(w, k)| {
                self.qb_edge(w, k).map(|kind| QbEdge { src: w, dst: self.times_refl[w][k], root: k, kind })
            })
            .collect();
        QBGraph { vertices: self.order(), edges }
    }

    /// The elements of the reflection subgroup generated by a subsystem.
    pub fn subgroup(&self, sub: &Rank2Subsystem) -> Vec<ElemId> {
        let mut seen = vec![false; self.order()];
        seen[Self::IDENTITY] = true;
        let mut out = vec![Self::IDENTITY];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &r in &sub.positive {
                let y = self.times_refl[x][r];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// Length in the subgroup: `|{β ∈ Φ̄+ : x(β) < 0}|`.
    pub fn sub_length(&self, sub: &Rank2Subsystem, x: ElemId) -> usize {
        sub.positive.iter().filter(|&&r| !self.root_image[x][r].positive).count()
    }

    /// Edge of `QB(W̄)` from `x ∈ W̄` along `α ∈ Φ̄+`, with lengths and
    /// coroot heights taken inside the subsystem.
    pub fn sub_qb_edge(&self, sub: &Rank2Subsystem, x: ElemId, root: usize) -> Option<EdgeKind> {
        let y = self.times_refl[x][root];
        let (lx, ly) = (self.sub_length(sub, x) as i64, self.sub_length(sub, y) as i64);
        if ly == lx + 1 {
            Some(EdgeKind::Up)
        } else if ly == lx - 2 * sub.coroot_height(&self.rs, root) + 1 {
            Some(EdgeKind::Down)
        } else {
            None
        }
    }

    /// `w = ⌊w⌋ · w̄` with `⌊w⌋` the element of `w W̄` sending every root of
    /// `Φ̄+` to a positive root.
    pub fn coset_floor(&self, w: ElemId, sub: &Rank2Subsystem) -> Result<(ElemId, ElemId)> {
        let floor = self
            .subgroup(sub)
            .into_iter()
            .map(|x| self.multiply(w, x))
            .filter(|&y| sub.positive.iter().all(|&r| self.root_image[y][r].positive))
            .collect::<Vec<_>>();
        match floor.as_slice() {
            [f] => Ok((*f, self.multiply(self.inverse(*f), w))),
            _ => Err(Error::TheoremViolation(format!(
                "coset of {:?} has {} minimal candidates",
                self.words[w],
                floor.len()
            ))),
        }
    }

    /// One-line notation of a type-A element (1-based values).
    pub fn one_line(&self, w: ElemId) -> Option<Vec<usize>> {
        let n = self.rs.rank() + 1;
        self.rs.type_a_pair(0)?;
        let mut perm: Vec<usize> = (1..=n).collect();
        for &i in &self.words[w] {
            // right multiplication by s_i swaps positions i, i+1
            perm.swap(i, i + 1);
        }
        Some(perm)
    }

    pub fn from_one_line(&self, perm: &[usize]) -> Result<ElemId> {
        let n = self.rs.rank() + 1;
        if self.rs.type_a_pair(0).is_none() || perm.len() != n {
            return Err(invalid!("one-line notation {perm:?} does not fit {}", self.rs.cartan_type));
        }
        (0..self.order())
            .find(|&w| self.one_line(w).as_deref() == Some(perm))
            .ok_or_else(|| invalid!("{perm:?} is not a permutation of 1..{n}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QbEdge {
    pub src: ElemId,
    pub dst: ElemId,
    pub root: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone)]
pub struct QBGraph {
    pub vertices: usize,
    pub edges: Vec<QbEdge>,
}

impl QBGraph {
    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn to_dot(&self, group: &WeylGroup) -> String {
        let mut s = String::from("digraph qbg {\n");
        for v in 0..self.vertices {
            let word: Vec<String> = group.reduced_word(v).iter().map(|i| format!("s{}", i + 1)).collect();
            let label = if word.is_empty() { "e".to_string() } else { word.join("") };
            s.push_str(&format!("  {v} [label=\"{label}\"];\n"));
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Up => "solid",
                EdgeKind::Down => "dashed",
            };
            let label = format!("{:?}", group.rs.positive[e.root].coeffs);
            s.push_str(&format!("  {} -> {} [label=\"{label}\", style={style}];\n", e.src, e.dst));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, group: &WeylGroup) -> serde_json::Value {
        serde_json::json!({
            "vertices": (0..self.vertices).map(|v| serde_json::json!({
                "id": v,
                "word": group.reduced_word(v).iter().map(|i| i + 1).collect::<Vec<_>>(),
                "length": group.length(v),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "src": e.src,
                "dst": e.dst,
                "root": group.rs.positive[e.root].coeffs,
                "kind": e.kind,
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(tag: &str) -> WeylGroup {
        WeylGroup::new(&RootSystem::from_tag(tag).unwrap()).unwrap()
    }

    #[test]
    fn group_orders() {
        for (tag, n) in [("A1", 2), ("A2", 6), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152)] {
            assert_eq!(group(tag).order(), n, "{tag}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let rs = RootSystem::from_tag("B3").unwrap();
        assert!(matches!(WeylGroup::with_budget(&rs, 10), Err(Error::Resource(_))));
    }

    #[test]
    fn length_matches_reduced_word() {
        let g = group("B3");
        for w in 0..g.order() {
            assert_eq!(g.length(w), g.reduced_word(w).len());
            assert_eq!(g.from_word(g.reduced_word(w)), w);
            assert_eq!(g.multiply(w, g.inverse(w)), WeylGroup::IDENTITY);
        }
    }

    #[test]
    fn qb_edge_examples_a2() {
        let g = group("A2");
        let theta = g.rs.highest;
        assert_eq!(g.qb_edge(WeylGroup::IDENTITY, g.rs.simple(0)), Some(EdgeKind::Up));
        assert_eq!(g.qb_edge(g.longest(), theta), Some(EdgeKind::Down));
        assert_eq!(g.qb_edge(WeylGroup::IDENTITY, theta), None);
    }

    #[test]
    fn identity_has_no_down_edges() {
        for tag in ["A3", "C3", "G2"] {
            let g = group(tag);
            let qbg = g.build_qbg();
            assert!(!qbg.edges.iter().any(|e| e.src == WeylGroup::IDENTITY && e.kind == EdgeKind::Down));
        }
    }

    #[test]
    fn one_line_notation() {
        let g = group("A2");
        assert_eq!(g.one_line(g.longest()).unwrap(), vec![3, 2, 1]);
        let s1 = g.from_word(&[0]);
        assert_eq!(g.one_line(s1).unwrap(), vec![2, 1, 3]);
        assert_eq!(g.from_one_line(&[2, 1, 3]).unwrap(), s1);
        assert!(g.from_one_line(&[1, 1, 3]).is_err());
    }

    #[test]
    fn reflection_ordering_is_a_permutation_of_positive_roots() {
        for tag in ["A3", "B3", "G2"] {
            let g = group(tag);
            let mut ord = g.reflection_ordering();
            ord.sort_unstable();
            assert_eq!(ord, (0..g.rs.num_positive()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn shellable_path_trivial_and_a2() {
        let g = group("A2");
        let ord = g.reflection_ordering();
        for v in 0..g.order() {
            assert!(g.shellable_path(v, v, &ord, Direction::Increasing).unwrap().is_empty());
        }
        let path = g.shellable_path(WeylGroup::IDENTITY, g.longest(), &ord, Direction::Increasing).unwrap();
        assert!(!path.is_empty());
    }

    #[test]
    fn coset_floor_identity_case() {
        let g = group("A2");
        let sub = g.rs.rank2_subsystem(RootRef::pos(0), RootRef::pos(1)).unwrap();
        for w in 0..g.order() {
            let (floor, bar) = g.coset_floor(w, &sub).unwrap();
            assert_eq!(floor, WeylGroup::IDENTITY);
            assert_eq!(bar, w);
        }
    }
}
