//! λ-chains: reduced alcove paths from the fundamental alcove to `A_{-λ}`,
//! their levels, segment reversals, and braid-move connections.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::root_system::{Rank2Subsystem, RootRef, RootSystem, Weight};
use crate::weyl::WeylElement;

pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

/// `x ↦ w(x) + t` for `w ∈ W` and `t` in the root lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub w: WeylElement,
    pub t: Weight,
}

impl AffineMap {
    pub fn identity(rank: usize) -> Self {
        Self { w: WeylElement::identity(rank), t: Weight::zero(rank) }
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        &self.w.apply(v) + &self.t
    }

    /// Right composition with the affine reflection `s_{β,k}`.
    pub fn then_reflect(&mut self, rs: &RootSystem, beta: usize, k: i64) {
        let w_beta = self.w.apply(&rs.positive[beta].weight);
        self.t = &self.t + &(k * &w_beta);
        self.w = self.w.times_reflection(rs, beta);
    }

    /// Image of `H_{β,k}`, normalised to a positive root: `(|γ|, k', sgn γ)`
    /// with the image equal to `H_{|γ|, k'}`.
    pub fn hyperplane_image(&self, rs: &RootSystem, beta: usize, k: i64) -> (usize, i64, bool) {
        let gamma = rs.lookup(&self.w.apply(&rs.positive[beta].weight)).expect("W permutes the roots");
        let level = k + rs.pair(&self.t, gamma);
        if gamma.positive {
            (gamma.index, level, true)
        } else {
            (gamma.index, -level, false)
        }
    }
}

/// The root whose coroot is the highest coroot. The alcove walls come from
/// the affine Weyl group of the dual system, so in non-simply-laced types
/// this is the highest short root rather than the highest root.
pub fn top_wall_root(rs: &RootSystem) -> usize {
    (0..rs.num_positive()).max_by_key(|&r| rs.positive[r].coroot_height).expect("nonempty root system")
}

/// The walls of the fundamental alcove: face 0 is `H_{φ,1}` with `φ` from
/// [`top_wall_root`], face `a ≥ 1` is `H_{α_a,0}`.
fn face(rs: &RootSystem, a: usize) -> (usize, i64) {
    if a == 0 {
        (top_wall_root(rs), 1)
    } else {
        (rs.simple(a - 1), 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaChain {
    pub lambda: Weight,
    pub roots: Vec<usize>,
    pub levels: Vec<i64>,
    pub colevels: Vec<i64>,
    /// Column index (1-based fundamental weight) and length of each ω-block,
    /// when the chain is a concatenation of ω-chains.
    pub blocks: Vec<(usize, usize)>,
    pub affine_word: Vec<usize>,
}

impl LambdaChain {
    /// Validates reducedness and computes levels and the affine word.
    pub fn from_roots(rs: &RootSystem, lambda: Weight, roots: Vec<usize>, blocks: Vec<(usize, usize)>) -> Result<Self> {
        if !lambda.is_dominant() || lambda.0.len() != rs.rank() {
            return Err(invalid!("{:?} is not a dominant weight of {}", lambda.0, rs.cartan_type));
        }
        let mut seen = vec![0i64; rs.num_positive()];
        let mut levels = Vec::with_capacity(roots.len());
        for &r in &roots {
            levels.push(seen[r]);
            seen[r] += 1;
        }
        for (r, &count) in seen.iter().enumerate() {
            if count != rs.pair(&lambda, RootRef::pos(r)) {
                return Err(Error::Internal(format!(
                    "root {} occurs {count} times, expected <λ, α∨> = {}",
                    rs.root_label(r),
                    rs.pair(&lambda, RootRef::pos(r))
                )));
            }
        }
        let colevels = roots.iter().zip(&levels).map(|(&r, l)| rs.pair(&lambda, RootRef::pos(r)) - l).collect();
        let mut chain = LambdaChain { lambda, roots, levels, colevels, blocks, affine_word: Vec::new() };
        chain.affine_word = encode_word(rs, &chain)?;
        Ok(chain)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root_labels(&self, rs: &RootSystem) -> Vec<String> {
        self.roots.iter().map(|&r| rs.root_label(r)).collect()
    }
}

fn encode_word(rs: &RootSystem, chain: &LambdaChain) -> Result<Vec<usize>> {
    let mut map = AffineMap::identity(rs.rank());
    let mut word = Vec::with_capacity(chain.len());
    for (i, (&beta, &l)) in chain.roots.iter().zip(&chain.levels).enumerate() {
        let faces: Vec<usize> = (0..=rs.rank())
            .filter(|&a| {
                let (root, k) = face(rs, a);
                let (img, level, _) = map.hyperplane_image(rs, root, k);
                img == beta && level == -l
            })
            .collect();
        let [a] = faces[..] else {
            return Err(Error::Internal(format!(
                "position {}: H_({},{}) is not a wall of the current alcove",
                i + 1,
                rs.root_label(beta),
                -l
            )));
        };
        let (root, k) = face(rs, a);
        map.then_reflect(rs, root, k);
        word.push(a);
    }
    Ok(word)
}

/// Reads a chain back from an affine word; non-reduced words are rejected.
pub fn decode_word(rs: &RootSystem, lambda: &Weight, word: &[usize]) -> Result<LambdaChain> {
    let mut map = AffineMap::identity(rs.rank());
    let mut roots = Vec::with_capacity(word.len());
    let mut seen = vec![0i64; rs.num_positive()];
    for (i, &a) in word.iter().enumerate() {
        if a > rs.rank() {
            return Err(invalid!("letter {a} is not an affine node of {}", rs.cartan_type));
        }
        let (root, k) = face(rs, a);
        let (beta, level, _) = map.hyperplane_image(rs, root, k);
        if level > 0 || -level != seen[beta] {
            return Err(Error::Internal(format!("word is not reduced at letter {}", i + 1)));
        }
        seen[beta] += 1;
        roots.push(beta);
        map.then_reflect(rs, root, k);
    }
    LambdaChain::from_roots(rs, lambda.clone(), roots, Vec::new())
}

/// The ω_k-chain read off from a straight segment `x₀ → x₀ − ω_k`, with
/// `x₀ = ε·v` for a fixed generic `v` and infinitesimal `ε`.
pub fn omega_chain(rs: &RootSystem, k: usize) -> Result<LambdaChain> {
    if k == 0 || k > rs.rank() {
        return Err(invalid!("fundamental weight index {k} outside 1..={}", rs.rank()));
    }
    let r = rs.rank();
    let v: Vec<i128> = (0..r).map(|i| 100i128.pow((r - 1 - i) as u32)).collect();
    // A crossing of H_{α,-j} happens at time (j + ε<v,α∨>) / c with c = <ω_k, α∨>.
    let mut crossings: Vec<(usize, i128, i128, i128)> = Vec::new();
    for (idx, root) in rs.positive.iter().enumerate() {
        let c = root.coroot[k - 1] as i128;
        let pv: i128 = root.coroot.iter().zip(&v).map(|(&a, b)| a as i128 * b).sum();
        for j in 0..c {
            crossings.push((idx, j, pv, c));
        }
    }
    let cmp = |a: &(usize, i128, i128, i128), b: &(usize, i128, i128, i128)| {
        (a.1 * b.3).cmp(&(b.1 * a.3)).then((a.2 * b.3).cmp(&(b.2 * a.3)))
    };
    crossings.sort_by(cmp);
    if crossings.windows(2).any(|w| cmp(&w[0], &w[1]) == Ordering::Equal) {
        return Err(Error::Internal(format!("segment for ω_{k} passes through a codimension-two face")));
    }
    let roots: Vec<usize> = crossings.iter().map(|c| c.0).collect();
    let n = roots.len();
    LambdaChain::from_roots(rs, rs.fundamental_weight(k - 1), roots, vec![(k, n)])
}

pub fn concat_chains(rs: &RootSystem, chains: &[LambdaChain]) -> Result<LambdaChain> {
    let mut lambda = Weight::zero(rs.rank());
    let mut roots = Vec::new();
    let mut blocks = Vec::new();
    for c in chains {
        lambda = &lambda + &c.lambda;
        roots.extend_from_slice(&c.roots);
        blocks.extend_from_slice(&c.blocks);
    }
    LambdaChain::from_roots(rs, lambda, roots, blocks)
}

/// `Γ(p_1) ⋯ Γ(p_k)` for a composition of 1-based column indices.
pub fn chain_for_columns(rs: &RootSystem, columns: &[usize]) -> Result<LambdaChain> {
    let chains = columns.iter().map(|&k| omega_chain(rs, k)).collect::<Result<Vec<_>>>()?;
    concat_chains(rs, &chains)
}

/// Reversal of the window `[start, start + q)` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChainMove {
    pub start: usize,
    pub q: usize,
}

impl ChainMove {
    pub fn window(&self) -> std::ops::Range<usize> {
        self.start - 1..self.start - 1 + self.q
    }
}

/// The rank-two subsystem whose positive roots fill the window in a
/// reflection ordering, or an error explaining why the window is invalid.
pub fn move_subsystem(rs: &RootSystem, chain: &LambdaChain, mv: ChainMove) -> Result<Rank2Subsystem> {
    if mv.start == 0 || mv.start - 1 + mv.q > chain.len() {
        return Err(invalid!("window {mv:?} outside a chain of length {}", chain.len()));
    }
    let seg = &chain.roots[mv.window()];
    let sub = Rank2Subsystem::from_positive_roots(rs, seg.to_vec())?;
    if sub.positive.len() != mv.q || sub.reflection_ordering(rs, seg[0]) != seg {
        return Err(invalid!("window {mv:?} is not a reflection-ordered rank-two positive system"));
    }
    Ok(sub)
}

pub fn apply_reversal(rs: &RootSystem, chain: &LambdaChain, mv: ChainMove) -> Result<LambdaChain> {
    move_subsystem(rs, chain, mv)?;
    let mut roots = chain.roots.clone();
    roots[mv.window()].reverse();
    LambdaChain::from_roots(rs, chain.lambda.clone(), roots, Vec::new())
}

/// Every valid reversal window of the chain.
pub fn valid_moves(rs: &RootSystem, chain: &LambdaChain) -> Vec<ChainMove> {
    let mut out = Vec::new();
    for q in [2, 3, 4, 6] {
        for start in 1..=chain.len().saturating_sub(q - 1) {
            let mv = ChainMove { start, q };
            if move_subsystem(rs, chain, mv).is_ok() {
                out.push(mv);
            }
        }
    }
    out.sort_by_key(|m| (m.start, m.q));
    out
}

/// Inside a valid window with `β_i∨ = a β_1∨ + b β_q∨`, checks
/// `l_i = a l_1 + b l_q` for every position.
pub fn window_levels_linear(rs: &RootSystem, chain: &LambdaChain, mv: ChainMove) -> bool {
    let w = mv.window();
    let (first, last) = (chain.roots[w.start], chain.roots[w.end - 1]);
    let (l1, lq) = (chain.levels[w.start], chain.levels[w.end - 1]);
    w.clone().all(|i| {
        let Some(sub) = Rank2Subsystem::from_positive_roots(rs, chain.roots[w.clone()].to_vec()).ok() else {
            return false;
        };
        match sub.coroot_coordinates(rs, chain.roots[i], first, last) {
            Some((a, b)) => chain.levels[i] == a * l1 + b * lq,
            None => false,
        }
    })
}

/// Braid-relation lengths `m_ab` of the affine Coxeter graph (0 = none).
fn braid_lengths(rs: &RootSystem) -> Vec<Vec<usize>> {
    let n = rs.rank() + 1;
    let top = top_wall_root(rs);
    let node_root = |a: usize| if a == 0 { RootRef::neg_of(top) } else { RootRef::pos(rs.simple(a - 1)) };
    let mut m = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let prod = rs.root_pair(node_root(a), node_root(b)) * rs.root_pair(node_root(b), node_root(a));
                m[a][b] = match prod {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    _ => 0,
                };
            }
        }
    }
    m
}

/// Braid moves applicable to a word, as `(position, q)` with 0-based position.
fn braid_moves(m: &[Vec<usize>], word: &[u8]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..word.len().saturating_sub(1) {
        let (a, b) = (word[i] as usize, word[i + 1] as usize);
        if a == b {
            continue;
        }
        let q = m[a][b];
        if q == 0 || i + q > word.len() {
            continue;
        }
        if (0..q).all(|k| word[i + k] as usize == if k % 2 == 0 { a } else { b }) {
            out.push((i, q));
        }
    }
    out
}

fn apply_braid(word: &mut [u8], pos: usize, q: usize) {
    let (a, b) = (word[pos], word[pos + 1]);
    for k in 0..q {
        word[pos + k] = if k % 2 == 0 { b } else { a };
    }
}

/// Moves available on a chain, found through braid relations on its word.
pub fn braid_moves_of(rs: &RootSystem, chain: &LambdaChain) -> Vec<ChainMove> {
    let m = braid_lengths(rs);
    let word: Vec<u8> = chain.affine_word.iter().map(|&a| a as u8).collect();
    braid_moves(&m, &word).into_iter().map(|(p, q)| ChainMove { start: p + 1, q }).collect()
}

/// A sequence of reversals turning `from` into `to`, found by breadth-first
/// search over braid moves on the differing middle part of the two words.
pub fn connect_chains(rs: &RootSystem, from: &LambdaChain, to: &LambdaChain, budget: usize) -> Result<Vec<ChainMove>> {
    if from.lambda != to.lambda {
        return Err(invalid!("chains are for different weights {:?} and {:?}", from.lambda.0, to.lambda.0));
    }
    let a: Vec<u8> = from.affine_word.iter().map(|&x| x as u8).collect();
    let b: Vec<u8> = to.affine_word.iter().map(|&x| x as u8).collect();
    let prefix = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    let suffix = a[prefix..].iter().rev().zip(b[prefix..].iter().rev()).take_while(|(x, y)| x == y).count();
    let (src, dst) = (a[prefix..a.len() - suffix].to_vec(), b[prefix..b.len() - suffix].to_vec());

    let m = braid_lengths(rs);
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, usize, usize)>> = HashMap::from([(src.clone(), None)]);
    let mut queue = VecDeque::from([src]);
    let mut found = false;
    while let Some(word) = queue.pop_front() {
        if word == dst {
            found = true;
            break;
        }
        for (pos, q) in braid_moves(&m, &word) {
            let mut next = word.clone();
            apply_braid(&mut next, pos, q);
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budget {
                return Err(Error::Resource(format!(
                    "braid search explored {} words of length {} without reaching the target",
                    parent.len(),
                    word.len()
                )));
            }
            parent.insert(next.clone(), Some((word.clone(), pos, q)));
            queue.push_back(next);
        }
    }
    if !found {
        return Err(Error::Internal("words of the two chains are not braid-equivalent".into()));
    }
    let mut moves = Vec::new();
    let mut cur = dst;
    while let Some(Some((prev, pos, q))) = parent.get(&cur) {
        moves.push(ChainMove { start: prefix + pos + 1, q: *q });
        cur = prev.clone();
    }
    moves.reverse();
    let end = replay(rs, from, &moves)?;
    if end.roots != to.roots {
        return Err(Error::Internal("replayed moves do not reproduce the target chain".into()));
    }
    Ok(moves)
}

pub fn replay(rs: &RootSystem, chain: &LambdaChain, moves: &[ChainMove]) -> Result<LambdaChain> {
    let mut cur = chain.clone();
    for &mv in moves {
        cur = apply_reversal(rs, &cur, mv)?;
    }
    Ok(cur)
}

/// Moves realising `Γ(p) → Γ(p')` for a permutation of the columns, built
/// from adjacent block swaps (bubble sort) so each search stays small.
pub fn connect_compositions(
    rs: &RootSystem,
    columns: &[usize],
    target: &[usize],
    budget: usize,
) -> Result<(LambdaChain, LambdaChain, Vec<ChainMove>)> {
    let mut sorted_a = columns.to_vec();
    let mut sorted_b = target.to_vec();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Err(invalid!("{target:?} is not a permutation of {columns:?}"));
    }
    let start = chain_for_columns(rs, columns)?;
    let goal = chain_for_columns(rs, target)?;
    let mut cur_cols = columns.to_vec();
    let mut cur = start.clone();
    let mut moves = Vec::new();
    for (i, &want) in target.iter().enumerate() {
        let j = i + cur_cols[i..].iter().position(|&c| c == want).expect("same multiset");
        for k in (i..j).rev() {
            let mut next_cols = cur_cols.clone();
            next_cols.swap(k, k + 1);
            let next = chain_for_columns(rs, &next_cols)?;
            let step = connect_chains(rs, &cur, &next, budget)?;
            moves.extend(step);
            cur = next;
            cur_cols = next_cols;
        }
    }
    debug_assert_eq!(cur.roots, goal.roots);
    Ok((start, goal, moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(rs: &RootSystem, pairs: &[(usize, usize)]) -> Vec<usize> {
        pairs.iter().map(|&(i, j)| rs.type_a_root(i, j).unwrap()).collect()
    }

    #[test]
    fn omega_chains_a2() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g1 = omega_chain(&rs, 1).unwrap();
        assert_eq!(g1.roots, a(&rs, &[(1, 2), (1, 3)]));
        assert_eq!(g1.levels, vec![0, 0]);
        let g2 = omega_chain(&rs, 2).unwrap();
        assert_eq!(g2.roots, a(&rs, &[(2, 3), (1, 3)]));
    }

    #[test]
    fn omega_chain_length_g2() {
        let rs = RootSystem::from_tag("G2").unwrap();
        for k in 1..=2 {
            let expected: i64 = (0..rs.num_positive()).map(|r| rs.positive[r].coroot[k - 1]).sum();
            assert_eq!(omega_chain(&rs, k).unwrap().len() as i64, expected);
        }
    }

    #[test]
    fn concatenation_levels() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = chain_for_columns(&rs, &[1, 2, 2, 1]).unwrap();
        assert_eq!(g.roots, a(&rs, &[(1, 2), (1, 3), (2, 3), (1, 3), (2, 3), (1, 3), (1, 2), (1, 3)]));
        assert_eq!((g.levels[4], g.colevels[4]), (1, 1));
        assert_eq!(g.affine_word.len(), 8);
    }

    #[test]
    fn word_roundtrip() {
        for (tag, cols) in [("A2", vec![1]), ("A2", vec![1, 2, 2, 1]), ("C2", vec![2, 1, 2]), ("G2", vec![1, 2])] {
            let rs = RootSystem::from_tag(tag).unwrap();
            let g = chain_for_columns(&rs, &cols).unwrap();
            let back = decode_word(&rs, &g.lambda, &g.affine_word).unwrap();
            assert_eq!(back.roots, g.roots);
            assert_eq!(back.levels, g.levels);
        }
        let rs = RootSystem::from_tag("A2").unwrap();
        let empty = decode_word(&rs, &Weight::zero(2), &[]).unwrap();
        assert!(empty.is_empty());
        assert!(decode_word(&rs, &Weight(vec![1, 0]), &[1, 1]).is_err());
    }

    #[test]
    fn reversal_example() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = chain_for_columns(&rs, &[1, 2, 2, 1]).unwrap();
        let gp = chain_for_columns(&rs, &[1, 2, 1, 2]).unwrap();
        let mv = ChainMove { start: 5, q: 3 };
        assert_eq!(apply_reversal(&rs, &gp, mv).unwrap().roots, g.roots);
        assert_eq!(apply_reversal(&rs, &g, mv).unwrap().roots, gp.roots);
        assert_eq!(connect_chains(&rs, &gp, &g, DEFAULT_SEARCH_BUDGET).unwrap(), vec![mv]);
        assert!(connect_chains(&rs, &g, &g, DEFAULT_SEARCH_BUDGET).unwrap().is_empty());
        assert!(apply_reversal(&rs, &g, ChainMove { start: 2, q: 3 }).is_err());
    }

    #[test]
    fn orthogonal_swap() {
        let rs = RootSystem::from_tag("A3").unwrap();
        let g = chain_for_columns(&rs, &[2]).unwrap();
        let moves: Vec<ChainMove> = valid_moves(&rs, &g).into_iter().filter(|m| m.q == 2).collect();
        assert!(!moves.is_empty());
        for mv in moves {
            let h = apply_reversal(&rs, &g, mv).unwrap();
            let w = mv.window();
            assert_eq!(h.roots[w.start], g.roots[w.start + 1]);
            assert_eq!(apply_reversal(&rs, &h, mv).unwrap().roots, g.roots);
        }
    }

    #[test]
    fn swap_blocks_a2() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let (start, goal, moves) = connect_compositions(&rs, &[1, 2], &[2, 1], DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(replay(&rs, &start, &moves).unwrap().roots, goal.roots);
    }
}
