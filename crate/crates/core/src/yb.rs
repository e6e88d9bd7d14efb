//! Quantum Yang-Baxter moves and the combinatorial R-matrix.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{self, apply_reversal, move_subsystem, ChainMove, LambdaChain};
use crate::error::{Error, Result};
use crate::model::Model;
use crate::root_system::{Rank2Subsystem, RootSystem};
use crate::weyl::{Direction, EdgeKind, ElemId, WeylGroup};

/// Follows the labels from `u`; `None` if some step is not an edge.
pub fn follow_labels(group: &WeylGroup, u: ElemId, labels: &[usize]) -> Option<(ElemId, Vec<EdgeKind>)> {
    let mut w = u;
    let mut kinds = Vec::with_capacity(labels.len());
    for &root in labels {
        kinds.push(group.qb_edge(w, root)?);
        w = group.times_reflection(w, root);
    }
    Some((w, kinds))
}

/// `Y_{u,w}` on window indices: `chosen` indexes `window` (1-based, in
/// window order); the result indexes the reversed window.
pub fn local_move(group: &WeylGroup, u: ElemId, window: &[usize], chosen: &[usize]) -> Result<Vec<(usize, EdgeKind)>> {
    let labels: Vec<usize> = chosen.iter().map(|&i| window[i - 1]).collect();
    let (w, _) = follow_labels(group, u, &labels)
        .ok_or_else(|| Error::InvalidInput(format!("window subset {chosen:?} is not a path from the given vertex")))?;
    let reversed: Vec<usize> = window.iter().rev().copied().collect();
    let path = group.shellable_path(u, w, &reversed, Direction::Increasing)?;
    let (_, kinds) = follow_labels(group, u, &path).expect("shellable path consists of edges");
    Ok(path
        .iter()
        .zip(kinds)
        .map(|(root, kind)| (reversed.iter().position(|r| r == root).unwrap() + 1, kind))
        .collect())
}

/// One elementary move `Γ → Γ'` acting on admissible subsets.
pub struct YBContext<'a> {
    pub group: &'a WeylGroup,
    pub chain: &'a LambdaChain,
    pub target: LambdaChain,
    pub mv: ChainMove,
    pub subsystem: Rank2Subsystem,
}

impl<'a> YBContext<'a> {
    pub fn new(group: &'a WeylGroup, chain: &'a LambdaChain, mv: ChainMove) -> Result<Self> {
        let subsystem = move_subsystem(&group.rs, chain, mv)?;
        let target = apply_reversal(&group.rs, chain, mv)?;
        Ok(YBContext { group, chain, target, mv, subsystem })
    }

    /// `u = w(J ∩ prefix)` and `w = w(J ∩ (prefix ∪ window))`.
    pub fn endpoints(&self, j: &[usize]) -> (ElemId, ElemId) {
        let win = self.mv.window();
        let mut u = WeylGroup::IDENTITY;
        let mut w = WeylGroup::IDENTITY;
        for &pos in j {
            if pos <= win.start {
                u = self.group.times_reflection(u, self.chain.roots[pos - 1]);
                w = u;
            } else if pos <= win.end {
                w = self.group.times_reflection(w, self.chain.roots[pos - 1]);
            }
        }
        (u, w)
    }

    pub fn apply(&self, j: &[usize]) -> Result<Vec<usize>> {
        let win = self.mv.window();
        let (u, _) = self.endpoints(j);
        let chosen: Vec<usize> = j.iter().filter(|&&p| p > win.start && p <= win.end).map(|p| p - win.start).collect();
        let window = &self.chain.roots[win.clone()];
        let replaced = local_move(self.group, u, window, &chosen)?;
        let mut out: Vec<usize> = j.iter().copied().filter(|&p| p <= win.start || p > win.end).collect();
        out.extend(replaced.iter().map(|(i, _)| win.start + i));
        out.sort_unstable();
        Ok(out)
    }
}

/// Applies the moves in turn, carrying `J` along.
pub fn r_matrix(group: &WeylGroup, chain: &LambdaChain, moves: &[ChainMove], j: &[usize]) -> Result<Vec<usize>> {
    let mut cur_chain = chain.clone();
    let mut cur = j.to_vec();
    for &mv in moves {
        let ctx = YBContext::new(group, &cur_chain, mv)?;
        cur = ctx.apply(&cur)?;
        cur_chain = ctx.target;
    }
    Ok(cur)
}

/// [`r_matrix`] over many subsets, building each move's context once.
pub fn r_matrix_all(group: &WeylGroup, chain: &LambdaChain, moves: &[ChainMove], subsets: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut chains = vec![chain.clone()];
    for &mv in moves {
        let next = apply_reversal(&group.rs, chains.last().unwrap(), mv)?;
        chains.push(next);
    }
    let contexts: Vec<YBContext> =
        moves.iter().zip(&chains).map(|(&mv, c)| YBContext::new(group, c, mv)).collect::<Result<_>>()?;
    subsets
        .par_iter()
        .map(|j| {
            let mut cur = j.clone();
            for ctx in &contexts {
                cur = ctx.apply(&cur)?;
            }
            Ok(cur)
        })
        .collect()
}

/// `Y_{ū,w̄}` computed inside `QB(W̄)`: the same as [`local_move`] but with
/// lengths and down edges of the dihedral group `W̄`.
pub fn dihedral_local_move(
    group: &WeylGroup,
    sub: &Rank2Subsystem,
    ubar: ElemId,
    window: &[usize],
    chosen: &[usize],
) -> Result<Vec<(usize, EdgeKind)>> {
    let edge = |x: ElemId, r: usize| group.sub_qb_edge(sub, x, r);
    let mut w = ubar;
    for &i in chosen {
        edge(w, window[i - 1])
            .ok_or_else(|| Error::InvalidInput(format!("window subset {chosen:?} is not a path in the dihedral graph")))?;
        w = group.times_reflection(w, window[i - 1]);
    }
    let reversed: Vec<usize> = window.iter().rev().copied().collect();
    let path = group.shellable_path_by(ubar, w, &reversed, Direction::Increasing, &edge)?;
    let mut x = ubar;
    Ok(path
        .iter()
        .map(|&root| {
            let kind = edge(x, root).expect("shellable path consists of edges");
            x = group.times_reflection(x, root);
            (reversed.iter().position(|&r| r == root).unwrap() + 1, kind)
        })
        .collect())
}

/// `B^{k,1}` is perfect exactly when `α_k` is a long simple root.
pub fn all_factors_perfect(rs: &RootSystem, columns: &[usize]) -> bool {
    columns.iter().all(|&k| rs.is_long(rs.simple(k - 1)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Disagreement {
    pub subset: Vec<usize>,
    pub reference_moves: Vec<ChainMove>,
    pub other_moves: Vec<ChainMove>,
    pub reference_image: Vec<usize>,
    pub other_image: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub pairs: usize,
    pub vertices: usize,
    pub disagreements: Vec<Disagreement>,
}

/// Compares the composed moves along a reference sequence with distinct
/// sequences obtained by first wandering through random moves. Disagreements are
/// collected, not treated as errors.
pub fn probe_sequence_independence(
    group: &WeylGroup,
    columns: &[usize],
    target: &[usize],
    pairs: usize,
    seed: u64,
    budget: usize,
) -> Result<ProbeReport> {
    let rs = &group.rs;
    let (start, goal, reference) = chains::connect_compositions(rs, columns, target, budget)?;
    let model = Model::new(group, &start);
    let subsets = model.enumerate_admissible(usize::MAX)?;
    let reference_images = r_matrix_all(group, &start, &reference, &subsets)?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut tested = 0;
    let mut attempts = 0;
    while tested < pairs {
        attempts += 1;
        if attempts > 500 * pairs.max(1) {
            return Err(Error::Resource(format!("found only {tested} distinct move sequences")));
        }
        let steps = rng.gen_range(1..=16);
        let mut detour = Vec::new();
        let mut cur = start.clone();
        for _ in 0..steps {
            let Some(&mv) = chains::braid_moves_of(rs, &cur).choose(&mut rng) else { break };
            cur = apply_reversal(rs, &cur, mv)?;
            detour.push(mv);
        }
        let Ok(rest) = chains::connect_chains(rs, &cur, &goal, budget) else { continue };
        let mut other = detour;
        other.extend(rest);
        if other == reference || !seen.insert(other.clone()) {
            continue;
        }
        tested += 1;
        let images = r_matrix_all(group, &start, &other, &subsets)?;
        for ((j, reference_image), image) in subsets.iter().zip(&reference_images).zip(images) {
            if &image != reference_image {
                disagreements.push(Disagreement {
                    subset: j.clone(),
                    reference_moves: reference.clone(),
                    other_moves: other.clone(),
                    reference_image: reference_image.clone(),
                    other_image: image,
                });
            }
        }
    }
    Ok(ProbeReport { pairs: tested, vertices: subsets.len(), disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::chain_for_columns;

    #[test]
    fn window_move_example() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let window: Vec<usize> = [(1, 2), (1, 3), (2, 3)].iter().map(|&(i, j)| rs.type_a_root(i, j).unwrap()).collect();
        let u = g.from_one_line(&[3, 2, 1]).unwrap();
        let out: Vec<usize> = local_move(&g, u, &window, &[1, 3]).unwrap().into_iter().map(|x| x.0).collect();
        assert_eq!(out, vec![2, 3]);
    }

    #[test]
    fn full_move_example() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let gp = chain_for_columns(&rs, &[1, 2, 1, 2]).unwrap();
        let ctx = YBContext::new(&g, &gp, ChainMove { start: 5, q: 3 }).unwrap();
        let j = [1, 2, 3, 5, 7, 8];
        let (u, w) = ctx.endpoints(&j);
        assert_eq!(g.one_line(u).unwrap(), vec![3, 2, 1]);
        assert_eq!(g.one_line(w).unwrap(), vec![2, 1, 3]);
        assert_eq!(ctx.apply(&j).unwrap(), vec![1, 2, 3, 6, 7, 8]);
    }

    #[test]
    fn identity_when_window_untouched() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let gp = chain_for_columns(&rs, &[1, 2, 1, 2]).unwrap();
        let ctx = YBContext::new(&g, &gp, ChainMove { start: 5, q: 3 }).unwrap();
        assert_eq!(ctx.apply(&[1, 8]).unwrap(), vec![1, 8]);
        assert_eq!(r_matrix(&g, &gp, &[], &[1, 8]).unwrap(), vec![1, 8]);
    }

    #[test]
    fn perfectness() {
        let c2 = RootSystem::from_tag("C2").unwrap();
        assert!(all_factors_perfect(&c2, &[2]));
        assert!(!all_factors_perfect(&c2, &[1, 2]));
        let a2 = RootSystem::from_tag("A2").unwrap();
        assert!(all_factors_perfect(&a2, &[1, 2]));
    }
}
