//! Exhaustive verification suites. Each check reports a statement, whether
//! it held, and a short detail (counts, or the first counterexample).

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::chains::{self, chain_for_columns, valid_moves, window_levels_linear, LambdaChain};
use crate::error::{invalid, Result};
use crate::model::Model;
use crate::root_system::{Rank2Kind, RootRef, RootSystem};
use crate::tables::{classical_moves, non_classical_table, MarkedSet};
use crate::type_a::{self, charge, dual_demazure_crystal, permute_factors, sfill, verify_isomorphism};
use crate::weyl::{Direction, EdgeKind, ElemId, WeylGroup};
use crate::yb::{self, dihedral_local_move, follow_labels, local_move, YBContext};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SUITES: &[&str] = &["examples", "tables", "shell", "yb", "typeA", "counts", "energy", "structure", "qbg", "probe"];

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "examples" => examples_suite()?,
        "tables" => tables_suite()?,
        "shell" => shell_suite()?,
        "yb" => yb_suite()?,
        "typeA" => type_a_suite()?,
        "counts" => counts_suite()?,
        "energy" => energy_suite()?,
        "structure" => structure_suite()?,
        "qbg" => qbg_suite()?,
        "probe" => probe_suite(seed)?,
        other => return Err(invalid!("unknown suite {other:?}; expected one of {}", SUITES.join(", "))),
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}

fn check(statement: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { statement: statement.into(), passed, detail: detail.into() }
}

/// A check that passes when no failures were collected among `total` cases.
fn tally(statement: impl Into<String>, total: usize, failures: &[String]) -> Check {
    let detail = match failures.first() {
        None => format!("{total} cases"),
        Some(first) => format!("{} of {total} cases fail; first: {first}", failures.len()),
    };
    check(statement, failures.is_empty(), detail)
}

/// All compositions with entries in `1..=rank` and at most `max_len` parts.
pub fn compositions(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.into_iter().flat_map(|c| (1..=rank).map(move |k| [c.clone(), vec![k]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The exhaustive scale for moves and structure: A2 (1,2,2,1), C2 up to
/// three columns, G2 up to two, A3 up to three.
pub fn move_cases() -> Vec<(&'static str, Vec<usize>)> {
    let mut out = vec![("A2", vec![1, 2, 2, 1])];
    out.extend(compositions(2, 3).into_iter().map(|c| ("C2", c)));
    out.extend(compositions(2, 2).into_iter().map(|c| ("G2", c)));
    out.extend(compositions(3, 3).into_iter().map(|c| ("A3", c)));
    out
}

fn group(tag: &str) -> Result<WeylGroup> {
    WeylGroup::new(&RootSystem::from_tag(tag)?)
}

fn examples_suite() -> Result<Vec<Check>> {
    let g = group("A2")?;
    let rs = &g.rs;
    let gamma = chain_for_columns(rs, &[1, 2, 2, 1])?;
    let gamma2 = chain_for_columns(rs, &[1, 2, 1, 2])?;
    let mut out = Vec::new();

    let (start, goal, moves) = chains::connect_compositions(rs, &[1, 2, 2, 1], &[1, 2, 1, 2], chains::DEFAULT_SEARCH_BUDGET)?;
    let forward = yb::r_matrix(&g, &start, &moves, &[1, 2, 3, 6, 7, 8])?;
    out.push(check(
        "R-matrix sends {1,2,3,6,7,8} in Γ(1,2,2,1) to {1,2,3,5,7,8} in Γ(1,2,1,2)",
        start == gamma && goal == gamma2 && forward == vec![1, 2, 3, 5, 7, 8],
        format!("moves {moves:?}, image {forward:?}"),
    ));
    let (_, _, back_moves) = chains::connect_compositions(rs, &[1, 2, 1, 2], &[1, 2, 2, 1], chains::DEFAULT_SEARCH_BUDGET)?;
    let back = yb::r_matrix(&g, &gamma2, &back_moves, &[1, 2, 3, 5, 7, 8])?;
    out.push(check(
        "R-matrix sends {1,2,3,5,7,8} in Γ(1,2,1,2) back to {1,2,3,6,7,8}",
        back == vec![1, 2, 3, 6, 7, 8],
        format!("moves {back_moves:?}, image {back:?}"),
    ));

    let window: Vec<usize> = [(1, 2), (1, 3), (2, 3)].iter().map(|&(i, j)| rs.type_a_root(i, j).unwrap()).collect();
    let u = g.from_one_line(&[3, 2, 1])?;
    let moved: Vec<usize> = local_move(&g, u, &window, &[1, 3])?.into_iter().map(|x| x.0).collect();
    let (w, _) = follow_labels(&g, u, &[window[0], window[2]]).expect("path");
    out.push(check(
        "window move from u = 321 sends {1,3} to {2,3}, ending at w = 213",
        moved == vec![2, 3] && g.one_line(w) == Some(vec![2, 1, 3]),
        format!("{moved:?}, w = {:?}", g.one_line(w)),
    ));

    let b = sfill(rs, &gamma, &[1, 2, 3, 6, 7, 8])?;
    let b2 = sfill(rs, &gamma2, &[1, 2, 3, 5, 7, 8])?;
    let shown = |b: &[type_a::Column]| type_a::tensor_to_string(b);
    out.push(check(
        "filling of {1,2,3,6,7,8} is 3 ⊗ 23 ⊗ 12 ⊗ 3 and of {1,2,3,5,7,8} is 3 ⊗ 23 ⊗ 2 ⊗ 13",
        shown(&b) == "3 ⊗ 23 ⊗ 12 ⊗ 3" && shown(&b2) == "3 ⊗ 23 ⊗ 2 ⊗ 13",
        format!("{} and {}", shown(&b), shown(&b2)),
    ));
    let slid = permute_factors(&b, &[1, 2, 1, 2], 3)?;
    out.push(check(
        "jeu de taquin on the last two columns gives the second filling",
        slid == b2,
        shown(&slid),
    ));
    Ok(out)
}

fn marked(path: &[(usize, EdgeKind)]) -> MarkedSet {
    let mut v: MarkedSet = path.iter().map(|&(i, k)| (i, k == EdgeKind::Down)).collect();
    v.sort_unstable();
    v
}

fn tables_suite() -> Result<Vec<Check>> {
    let table = non_classical_table();
    let mut out = Vec::new();
    for (tag, kind) in [("A2", Rank2Kind::A2), ("B2", Rank2Kind::B2), ("C2", Rank2Kind::B2), ("G2", Rank2Kind::G2)] {
        let g = group(tag)?;
        let rs = &g.rs;
        let short = (0..2).min_by_key(|&i| (rs.simple_sq_len[i], i)).unwrap();
        let sub = rs.rank2_subsystem(RootRef::pos(rs.simple(0)), RootRef::pos(rs.simple(1)))?;
        let window = sub.reflection_ordering(rs, rs.simple(short));
        let reversed: Vec<usize> = window.iter().rev().copied().collect();
        let q = window.len();
        let gens = [window[0], window[q - 1]];
        let entries: Vec<_> = table.iter().filter(|e| e.kind == kind).collect();
        let mut row_failures = Vec::new();
        let mut rows = 0;
        let mut complete_failures = Vec::new();
        let mut classical_failures = Vec::new();
        let mut classical_total = 0;
        for u in 0..g.order() {
            let matching: Vec<_> = entries
                .iter()
                .filter(|e| e.word.iter().fold(WeylGroup::IDENTITY, |x, &l| g.times_reflection(x, gens[l - 1])) == u)
                .collect();
            if u != WeylGroup::IDENTITY && matching.len() != 1 {
                complete_failures.push(format!("{} table rows for the element {:?}", matching.len(), g.reduced_word(u)));
                continue;
            }
            let (tops, bottoms) = match matching.first() {
                Some(e) => (e.top.clone(), e.bottom.clone()),
                None => (Vec::new(), Vec::new()),
            };
            let word = matching.first().map(|e| e.word.clone()).unwrap_or_default();
            for (top, bottom) in tops.iter().zip(&bottoms) {
                rows += 1;
                let labels: Vec<usize> = top.iter().map(|x| x.0).collect();
                let back: Vec<usize> = bottom.iter().map(|x| x.0).collect();
                let fwd = local_move(&g, u, &window, &labels).map(|p| marked(&p));
                let rev = local_move(&g, u, &reversed, &back).map(|p| marked(&p));
                let dihedral = dihedral_local_move(&g, &sub, u, &window, &labels).map(|p| marked(&p));
                let top_kinds = follow_labels(&g, u, &labels.iter().map(|&i| window[i - 1]).collect::<Vec<_>>())
                    .map(|(_, k)| labels.iter().zip(k).map(|(&i, k)| (i, k == EdgeKind::Down)).collect::<MarkedSet>());
                if fwd.as_ref().ok() != Some(bottom) || rev.as_ref().ok() != Some(top) || dihedral.as_ref().ok() != Some(bottom) || top_kinds.as_ref() != Some(top) {
                    row_failures.push(format!("{tag} word {word:?} row {top:?} ↔ {bottom:?}: got {fwd:?} / {rev:?}"));
                }
            }
            for (order, rows_expected) in [(&window, &tops), (&reversed, &bottoms)] {
                let paths = g.monotone_paths_from(u, order, Direction::Increasing);
                let mut found = HashSet::new();
                for (&w, list) in &paths {
                    for labels in list {
                        let (_, kinds) = follow_labels(&g, u, labels).expect("monotone paths consist of edges");
                        let idx: Vec<usize> = labels.iter().map(|r| order.iter().position(|x| x == r).unwrap() + 1).collect();
                        if kinds.contains(&EdgeKind::Down) {
                            found.insert(idx.iter().copied().zip(kinds.iter().map(|&k| k == EdgeKind::Down)).collect::<MarkedSet>());
                        } else if std::ptr::eq(order, &window) {
                            classical_total += 1;
                            let image: Vec<usize> = local_move(&g, u, &window, &idx)?.into_iter().map(|x| x.0).collect();
                            let forms = classical_moves(q, g.length(u), g.length(w));
                            let ok = forms.iter().any(|(a, b)| (a == &idx && b == &image) || (b == &idx && a == &image));
                            if !ok {
                                classical_failures.push(format!("{tag} u {:?}: {idx:?} → {image:?}", g.reduced_word(u)));
                            }
                        }
                    }
                }
                let listed: HashSet<MarkedSet> = rows_expected.iter().cloned().collect();
                if found != listed {
                    complete_failures.push(format!("{tag} word {word:?}: search finds {found:?}, table lists {listed:?}"));
                }
            }
        }
        out.push(tally(format!("{tag}: every non-classical table row is reproduced in both directions, with down markers"), rows, &row_failures));
        out.push(tally(format!("{tag}: the non-classical rows are exactly the label-monotone paths with a down step"), g.order(), &complete_failures));
        out.push(tally(format!("{tag}: up-only moves match the closed classical forms"), classical_total, &classical_failures));
    }
    Ok(out)
}

fn shell_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tag in ["A2", "C2", "G2", "A3", "B3"] {
        let g = group(tag)?;
        let ord = g.reflection_ordering();
        let failures: Vec<String> = (0..g.order())
            .into_par_iter()
            .flat_map_iter(|v| {
                let inc = g.monotone_paths_from(v, &ord, Direction::Increasing);
                let dec = g.monotone_paths_from(v, &ord, Direction::Decreasing);
                let mut bad = Vec::new();
                for w in 0..g.order() {
                    let (i, d) = (inc.get(&w).map_or(0, Vec::len), dec.get(&w).map_or(0, Vec::len));
                    if i != 1 || d != 1 {
                        bad.push(format!("{v}→{w}: {i} increasing, {d} decreasing"));
                        continue;
                    }
                    if inc[&w][0] != g.lex_extremal_shortest_path(v, w, &ord, true) {
                        bad.push(format!("{v}→{w}: increasing path is not the lex-minimal shortest path"));
                    }
                }
                bad
            })
            .collect();
        out.push(tally(format!("{tag}: each ordered pair has exactly one increasing and one decreasing path, the increasing one lex-minimal among shortest"), g.order() * g.order(), &failures));

        if g.rs.rank() > 2 {
            let mut failures = Vec::new();
            let mut pairs = 0;
            for sub in g.rs.all_rank2_subsystems() {
                let filtered: Vec<usize> = ord.iter().copied().filter(|&r| sub.contains(r)).collect();
                let is_order = sub.reflection_ordering(&g.rs, sub.simple[0]) == filtered
                    || sub.reflection_ordering(&g.rs, sub.simple[1]) == filtered;
                if !is_order {
                    failures.push(format!("restriction {filtered:?} is not a dihedral reflection ordering"));
                }
                let elems = g.subgroup(&sub);
                let edge = |x: ElemId, r: usize| g.sub_qb_edge(&sub, x, r);
                for &v in &elems {
                    let inc = g.monotone_paths_by(v, &filtered, Direction::Increasing, &edge);
                    let dec = g.monotone_paths_by(v, &filtered, Direction::Decreasing, &edge);
                    for &w in &elems {
                        pairs += 1;
                        let (i, d) = (inc.get(&w).map_or(0, Vec::len), dec.get(&w).map_or(0, Vec::len));
                        if i != 1 || d != 1 {
                            failures.push(format!("subsystem {:?}, {v}→{w}: {i} increasing, {d} decreasing", sub.positive));
                        }
                    }
                }
            }
            out.push(tally(format!("{tag}: in every rank-two subsystem the restricted ordering is dihedral and paths are unique"), pairs, &failures));
        }
    }
    Ok(out)
}

fn counts_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (tag, expected) in [("F4", vec![(Rank2Kind::A2, 32), (Rank2Kind::B2, 18)]), ("E6", vec![(Rank2Kind::A2, 120)])] {
        let rs = RootSystem::from_tag(tag)?;
        let subs = rs.all_rank2_subsystems();
        for (kind, n) in expected {
            let got = subs.iter().filter(|s| s.kind == kind).count();
            out.push(check(format!("{tag} has {n} rank-two subsystems of type {kind:?}"), got == n, format!("found {got}")));
        }
    }
    Ok(out)
}

/// Sum of the coroots of the down steps of a window path.
fn down_coroot_sum(rs: &RootSystem, labels: &[usize], kinds: &[EdgeKind]) -> Vec<i64> {
    let mut sum = vec![0; rs.rank()];
    for (&r, &k) in labels.iter().zip(kinds) {
        if k == EdgeKind::Down {
            for (s, c) in sum.iter_mut().zip(&rs.positive[r].coroot) {
                *s += c;
            }
        }
    }
    sum
}

#[derive(Default)]
struct MoveTally {
    moves: usize,
    vertices: usize,
    bijection: Vec<String>,
    endpoint: Vec<String>,
    weight: Vec<String>,
    height: Vec<String>,
    commute: Vec<String>,
    dihedral: Vec<String>,
    coroots: Vec<String>,
}

impl MoveTally {
    fn merge(mut self, other: MoveTally) -> MoveTally {
        self.moves += other.moves;
        self.vertices += other.vertices;
        self.bijection.extend(other.bijection);
        self.endpoint.extend(other.endpoint);
        self.weight.extend(other.weight);
        self.height.extend(other.height);
        self.commute.extend(other.commute);
        self.dihedral.extend(other.dihedral);
        self.coroots.extend(other.coroots);
        self
    }
}

fn check_moves(g: &WeylGroup, chain: &LambdaChain, label: &str) -> Result<MoveTally> {
    let rs = &g.rs;
    let model = Model::new(g, chain);
    let subsets = model.enumerate_admissible(usize::MAX)?;
    let mut t = MoveTally::default();
    for mv in valid_moves(rs, chain) {
        let ctx = YBContext::new(g, chain, mv)?;
        let target = Model::new(g, &ctx.target);
        let images: Vec<Vec<usize>> = subsets.iter().map(|j| ctx.apply(j)).collect::<Result<_>>()?;
        let image_of: HashMap<&Vec<usize>, &Vec<usize>> = subsets.iter().zip(&images).collect();
        t.moves += 1;
        t.vertices += subsets.len();
        let at = |j: &[usize]| format!("{label} move {mv:?} at {j:?}");
        let distinct: HashSet<&Vec<usize>> = images.iter().collect();
        let target_count = target.enumerate_admissible(usize::MAX)?.len();
        if distinct.len() != subsets.len() || target_count != subsets.len() {
            t.bijection.push(format!("{label} move {mv:?}: {} images, {target_count} targets", distinct.len()));
        }
        let win = mv.window();
        let window = &chain.roots[win.clone()];
        let reversed: Vec<usize> = window.iter().rev().copied().collect();
        let sub = ctx.subsystem.clone();
        for (j, y) in subsets.iter().zip(&images) {
            if !target.is_admissible(y) {
                t.bijection.push(format!("{}: image {y:?} not admissible", at(j)));
                continue;
            }
            let (fa, fb) = (model.fold(j), target.fold(y));
            if fa.end() != fb.end() {
                t.endpoint.push(at(j));
            }
            if fa.mu != fb.mu {
                t.weight.push(at(j));
            }
            if model.height_from(j, &fa) != target.height_from(y, &fb) {
                t.height.push(at(j));
            }
            for p in 0..=rs.rank() {
                let lhs = model.f(j, p).map(|fj| image_of[&fj].clone());
                let rhs = target.f(y, p);
                if lhs != rhs {
                    t.commute.push(format!("{} with f_{p}: {lhs:?} vs {rhs:?}", at(j)));
                }
            }
            let (u, _) = ctx.endpoints(j);
            let chosen: Vec<usize> = j.iter().filter(|&&p| p > win.start && p <= win.end).map(|p| p - win.start).collect();
            let full = local_move(g, u, window, &chosen)?;
            let (_, ubar) = g.coset_floor(u, &sub)?;
            match dihedral_local_move(g, &sub, ubar, window, &chosen) {
                Ok(d) if d == full => {}
                other => t.dihedral.push(format!("{}: {full:?} vs {other:?}", at(j))),
            }
            let labels: Vec<usize> = chosen.iter().map(|&i| window[i - 1]).collect();
            let new_labels: Vec<usize> = full.iter().map(|&(i, _)| reversed[i - 1]).collect();
            let (_, k1) = follow_labels(g, u, &labels).expect("admissible window path");
            let k2: Vec<EdgeKind> = full.iter().map(|x| x.1).collect();
            if down_coroot_sum(rs, &labels, &k1) != down_coroot_sum(rs, &new_labels, &k2) {
                t.coroots.push(at(j));
            }
        }
    }
    Ok(t)
}

fn yb_suite() -> Result<Vec<Check>> {
    let cases = move_cases();
    let groups: HashMap<&str, WeylGroup> =
        ["A2", "C2", "G2", "A3"].iter().map(|&t| Ok((t, group(t)?))).collect::<Result<_>>()?;
    let tallies: Vec<MoveTally> = cases
        .par_iter()
        .map(|(tag, cols)| {
            let g = &groups[tag];
            let chain = chain_for_columns(&g.rs, cols)?;
            check_moves(g, &chain, &format!("{tag} {cols:?}"))
        })
        .collect::<Result<_>>()?;
    let t = tallies.into_iter().fold(MoveTally::default(), MoveTally::merge);
    let scope = format!("{} chains, {} moves, {} subset-move pairs", cases.len(), t.moves, t.vertices);
    let n = t.vertices;
    let mut out = vec![check("scope", true, scope)];
    out.push(tally("each move is a bijection onto the admissible subsets of the reversed chain", n, &t.bijection));
    out.push(tally("each move keeps the end of the quantum Bruhat path", n, &t.endpoint));
    out.push(tally("each move preserves the weight", n, &t.weight));
    out.push(tally("each move preserves the height", n, &t.height));
    out.push(tally("each move commutes with every f_p, including definedness", n, &t.commute));
    out.push(tally("the move computed in W equals the move computed in the dihedral group from the coset representative", n, &t.dihedral));
    out.push(tally("down steps before and after a move have equal coroot sums", n, &t.coroots));
    Ok(out)
}

fn distinct_rearrangements(cols: &[usize]) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut HashSet<Vec<usize>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut set = HashSet::new();
    rec(&mut cols.to_vec(), &mut Vec::new(), &mut set);
    let mut out: Vec<Vec<usize>> = set.into_iter().collect();
    out.sort();
    out
}

/// Every other arrangement of the columns.
fn rmatrix_targets(cols: &[usize]) -> Vec<Vec<usize>> {
    let mut out = distinct_rearrangements(cols);
    out.retain(|t| t != cols);
    out
}

fn type_a_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tag in ["A2", "A3"] {
        let g = group(tag)?;
        let rs = &g.rs;
        let n = rs.rank() + 1;
        let comps = compositions(rs.rank(), 4);
        let results: Vec<(usize, Vec<String>, usize, Vec<String>)> = comps
            .par_iter()
            .map(|cols| {
                let chain = chain_for_columns(rs, cols)?;
                let model = Model::new(&g, &chain);
                let crystal = model.build_crystal(usize::MAX)?;
                let report = verify_isomorphism(&model, &crystal)?;
                let iso: Vec<String> = report.violations.iter().map(|v| format!("{cols:?}: {v}")).collect();
                let mut rm = Vec::new();
                let mut rm_total = 0;
                for target in rmatrix_targets(cols) {
                    let (start, goal, moves) = chains::connect_compositions(rs, cols, &target, chains::DEFAULT_SEARCH_BUDGET)?;
                    let images = yb::r_matrix_all(&g, &start, &moves, &crystal.vertices)?;
                    for (j, y) in crystal.vertices.iter().zip(&images) {
                        rm_total += 1;
                        let lhs = sfill(rs, &goal, y)?;
                        let rhs = permute_factors(&sfill(rs, &start, j)?, &target, n)?;
                        if lhs != rhs {
                            rm.push(format!("{cols:?} → {target:?} at {j:?}"));
                        }
                    }
                }
                Ok((report.vertices, iso, rm_total, rm))
            })
            .collect::<Result<_>>()?;
        let vertices: usize = results.iter().map(|r| r.0).sum();
        let iso: Vec<String> = results.iter().flat_map(|r| r.1.clone()).collect();
        let rm_total: usize = results.iter().map(|r| r.2).sum();
        let rm: Vec<String> = results.iter().flat_map(|r| r.3.clone()).collect();
        out.push(tally(
            format!("{tag}, all {} compositions with ≤ 4 columns: the filling map is a weight-preserving bijection onto the dual Demazure tableau crystal, intertwines every arrow and sends height to charge", comps.len()),
            vertices,
            &iso,
        ));
        out.push(tally(format!("{tag}: filling after the R-matrix equals column jeu de taquin after filling"), rm_total, &rm));
    }
    Ok(out)
}

fn energy_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [3usize, 4] {
        let comps = compositions(n - 1, 4);
        let failures: Vec<String> = comps
            .par_iter()
            .flat_map_iter(|cols| {
                let crystal = dual_demazure_crystal(n, cols);
                let charges: Vec<i64> = crystal.vertices.iter().map(|b| charge(b, n) as i64).collect();
                let mut bad = Vec::new();
                for &(s, d, i) in &crystal.edges {
                    let step = charges[d] - charges[s];
                    let want = if i == 0 { 1 } else { 0 };
                    if step != want {
                        bad.push(format!(
                            "n = {n}, {cols:?}: f_{i} on {} changes charge by {step}",
                            type_a::tensor_to_string(&crystal.vertices[s])
                        ));
                    }
                }
                bad
            })
            .collect();
        let arrows: usize = comps.iter().map(|c| dual_demazure_crystal(n, c).edges.len()).sum();
        out.push(tally(
            format!("n = {n}, ≤ 4 columns: energy (minus charge) is constant along classical arrows and drops by exactly 1 along surviving 0-arrows"),
            arrows,
            &failures,
        ));
    }
    Ok(out)
}

#[derive(Default)]
struct StructureTally {
    subsets: usize,
    reduced: Vec<String>,
    linear: Vec<String>,
    crossing: Vec<String>,
    pattern: Vec<String>,
    path_change: Vec<String>,
    graph: Vec<String>,
    operators: Vec<String>,
}

fn structure_of(g: &WeylGroup, chain: &LambdaChain, label: &str) -> Result<StructureTally> {
    let rs = &g.rs;
    let mut t = StructureTally::default();
    let expected: i64 = (0..rs.num_positive()).map(|r| rs.pair(&chain.lambda, RootRef::pos(r))).sum();
    if chain.len() as i64 != expected || chains::decode_word(rs, &chain.lambda, &chain.affine_word)?.roots != chain.roots {
        t.reduced.push(format!("{label}: length {} vs {expected}", chain.len()));
    }
    for mv in valid_moves(rs, chain) {
        if !window_levels_linear(rs, chain, mv) {
            t.linear.push(format!("{label} move {mv:?}"));
        }
    }
    let model = Model::new(g, chain);
    let subsets = model.enumerate_admissible(usize::MAX)?;
    let index: HashSet<&Vec<usize>> = subsets.iter().collect();
    t.subsets = subsets.len();
    for j in &subsets {
        let folding = model.fold(j);
        for p in 0..=rs.rank() {
            let alpha = rs.affine_simple(p);
            let at = format!("{label} {j:?} p = {p}");
            // Inverse path images of a simple root turn negative only after
            // passing a folded root equal to it.
            let mut last_positive = 0;
            for b in (if p == 0 { j.len() + 1 } else { 1 })..=j.len() {
                let img = g.act_root(g.inverse(folding.path[b]), alpha);
                if img.positive {
                    last_positive = b;
                } else if !(last_positive + 1..=b).any(|i| folding.gamma[j[i - 1] - 1] == alpha) {
                    t.crossing.push(at.clone());
                    break;
                }
            }
            let word = model.sign_word_from(j, p, &folding);
            if !word.follows_pattern() {
                t.pattern.push(format!("{at}: {word}"));
            }
            let vals = word.values();
            let sign = alpha.sign();
            let levels_ok = word.positions.iter().zip(&vals).all(|(&pos, &v)| sign * folding.levels[pos - 1] == v);
            if !levels_ok || *vals.last().unwrap() != rs.pair(&folding.mu, alpha) {
                t.graph.push(format!("{at}: {word} {vals:?}"));
            }
            let (phi, eps) = model.string_lengths(j, p);
            let fj = model.f(j, p);
            let ok = match &fj {
                Some(x) => {
                    index.contains(x)
                        && model.e(x, p).as_ref() == Some(j)
                        && model.fold(x).mu == &folding.mu - &rs.root_weight(alpha)
                        && phi > 0
                }
                None => phi == 0,
            } && (model.e(j, p).is_some() == (eps > 0));
            if !ok {
                t.operators.push(at.clone());
            }
            if let Some(x) = fj {
                if let Some(bad) = path_change_failure(g, j, &x, &folding.path, &model.fold(&x).path, alpha) {
                    t.path_change.push(format!("{at}: {bad}"));
                }
            }
        }
    }
    Ok(t)
}

/// `f_p` replaces `w_a → … → w_{b-1} → w_b` by `w_a → s_p w_a → … → s_p w_{b-1} = w_b`.
fn path_change_failure(g: &WeylGroup, j: &[usize], fj: &[usize], path: &[ElemId], fpath: &[ElemId], alpha: RootRef) -> Option<String> {
    let added: Vec<usize> = fj.iter().copied().filter(|x| !j.contains(x)).collect();
    let removed: Vec<usize> = j.iter().copied().filter(|x| !fj.contains(x)).collect();
    let [k] = added.as_slice() else { return Some(format!("added {added:?}")) };
    let a = j.iter().filter(|&&x| x < *k).count();
    let b = match removed.as_slice() {
        [m] => j.iter().position(|x| x == m).unwrap() + 1,
        [] => j.len() + 1,
        _ => return Some(format!("removed {removed:?}")),
    };
    let sp = g.reflection(alpha.index);
    let mut expected: Vec<ElemId> = path[..=a].to_vec();
    expected.extend(path[a..b].iter().map(|&w| g.multiply(sp, w)));
    if b <= j.len() {
        if g.multiply(sp, path[b - 1]) != path[b] {
            return Some("s_p w_{b-1} ≠ w_b".into());
        }
        expected.extend_from_slice(&path[b + 1..]);
    }
    (expected != fpath).then(|| format!("expected {expected:?}, got {fpath:?}"))
}

fn structure_suite() -> Result<Vec<Check>> {
    let cases = move_cases();
    let groups: HashMap<&str, WeylGroup> =
        ["A2", "C2", "G2", "A3"].iter().map(|&t| Ok((t, group(t)?))).collect::<Result<_>>()?;
    let tallies: Vec<StructureTally> = cases
        .par_iter()
        .map(|(tag, cols)| {
            let g = &groups[tag];
            structure_of(g, &chain_for_columns(&g.rs, cols)?, &format!("{tag} {cols:?}"))
        })
        .collect::<Result<_>>()?;
    let collect = |f: fn(&StructureTally) -> &Vec<String>| -> Vec<String> { tallies.iter().flat_map(|t| f(t).clone()).collect() };
    let subsets: usize = tallies.iter().map(|t| t.subsets).sum();
    let mut out = vec![
        tally("every chain is reduced: its length is Σ<λ,α∨> and its affine word decodes back to it", cases.len(), &collect(|t| &t.reduced)),
        tally("levels along every valid window are linear in the coroot coordinates", cases.len(), &collect(|t| &t.linear)),
        tally("for simple α_p: whenever the inverse path image of α_p turns negative, some folded root in between equals α_p", subsets, &collect(|t| &t.crossing)),
        tally("in every sign word a non-terminal + or ∓ is followed by + or ±", subsets, &collect(|t| &t.pattern)),
        tally("f_p changes the path by left multiplication with s_p between k and m", subsets, &collect(|t| &t.path_change)),
        tally("sign-word values equal the signed levels, ending at <μ, α_p∨>", subsets, &collect(|t| &t.graph)),
        tally("f_p and e_p are mutually inverse, shift the weight by α_p and agree with φ_p, ε_p", subsets, &collect(|t| &t.operators)),
    ];
    let mut quantum = Vec::new();
    let mut roots = 0;
    for tag in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4"] {
        let rs = RootSystem::from_tag(tag)?;
        for r in 0..rs.num_positive() {
            roots += 1;
            let by_length = rs.reflection_length(r) as i64 == 2 * rs.positive[r].coroot_height - 1;
            if by_length != rs.is_quantum_root(r) {
                quantum.push(format!("{tag} root {}", rs.root_label(r)));
            }
        }
    }
    out.push(tally("the long/short quantum-root criterion agrees with ℓ(s_α) = 2 ht(α∨) − 1 in all types of rank ≤ 4", roots, &quantum));
    Ok(out)
}

fn qbg_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for tag in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let g = group(tag)?;
        let rs = &g.rs;
        let qbg = g.build_qbg();
        let identity_down = qbg.edges.iter().filter(|e| e.src == WeylGroup::IDENTITY && e.kind == EdgeKind::Down).count();
        out.push(check(format!("{tag}: no down edge leaves the identity"), identity_down == 0, format!("{} edges", qbg.edges.len())));
        let bad: Vec<String> = qbg
            .edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Down && !rs.is_quantum_root(e.root))
            .map(|e| format!("{} → {} along {}", e.src, e.dst, rs.root_label(e.root)))
            .chain((0..rs.num_positive()).filter_map(|r| {
                let has = g.qb_edge(g.reflection(r), r) == Some(EdgeKind::Down);
                (has != rs.is_quantum_root(r)).then(|| format!("s_α → 1 for {}", rs.root_label(r)))
            }))
            .collect();
        out.push(tally(format!("{tag}: down edges are labelled exactly by quantum roots"), qbg.edges.len(), &bad));

        let mut projection = Vec::new();
        let mut kinds = Vec::new();
        let mut order = Vec::new();
        let mut additive_failures = 0;
        let mut total = 0;
        for sub in rs.all_rank2_subsystems() {
            for w in 0..g.order() {
                let (floor, wbar) = g.coset_floor(w, &sub)?;
                if g.length(w) != g.length(floor) + g.length(wbar) {
                    additive_failures += 1;
                }
                for &a in &sub.positive {
                    total += 1;
                    let up_w = g.length(g.times_reflection(w, a)) > g.length(w);
                    let up_bar = g.sub_length(&sub, g.times_reflection(wbar, a)) > g.sub_length(&sub, wbar);
                    if up_w != up_bar {
                        order.push(format!("w = {:?}, root {}", g.reduced_word(w), rs.root_label(a)));
                    }
                    if let Some(kind) = g.qb_edge(w, a) {
                        match g.sub_qb_edge(&sub, wbar, a) {
                            None => projection.push(format!("w = {:?}, root {}", g.reduced_word(w), rs.root_label(a))),
                            Some(k) if k != kind => kinds.push(format!("w = {:?}, root {}: {kind:?} vs {k:?}", g.reduced_word(w), rs.root_label(a))),
                            _ => {}
                        }
                    }
                }
            }
        }
        out.push(tally(format!("{tag}: coset representatives preserve the Bruhat direction of every subsystem reflection"), total, &order));
        out.push(tally(format!("{tag}: every edge of QB(W) inside a coset projects to an edge of QB(W̄)"), total, &projection));
        out.push(tally(format!("{tag}: projected edges keep their up/down kind"), total, &kinds));
        if tag == "A3" {
            out.push(check(
                "A3: some coset factorisation w = ⌊w⌋ w̄ is not length-additive",
                additive_failures > 0,
                format!("{additive_failures} non-additive factorisations"),
            ));
        }
    }
    Ok(out)
}

/// Desk-scale cases for comparing move sequences.
pub fn probe_cases() -> Vec<(&'static str, Vec<usize>, Vec<usize>)> {
    vec![
        ("A2", vec![1, 2, 2, 1], vec![1, 2, 1, 2]),
        ("A2", vec![2, 1, 1], vec![1, 1, 2]),
        ("C2", vec![1, 2], vec![2, 1]),
        ("C2", vec![2, 2, 1], vec![1, 2, 2]),
        ("G2", vec![1, 2], vec![2, 1]),
        ("A3", vec![2, 1, 3], vec![3, 1, 2]),
    ]
}

pub const PROBE_PAIRS: usize = 100;

fn probe_suite(seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (tag, cols, target) in probe_cases() {
        let g = group(tag)?;
        let statement = format!("{tag} {cols:?} → {target:?}: composed moves from distinct sequences agree, or the disagreement is reported");
        let report = match yb::probe_sequence_independence(&g, &cols, &target, PROBE_PAIRS, seed, chains::DEFAULT_SEARCH_BUDGET) {
            Ok(r) => r,
            Err(e) => {
                out.push(check(statement, false, e.to_string()));
                continue;
            }
        };
        let perfect = yb::all_factors_perfect(&g.rs, &cols);
        let mut detail = format!(
            "{} sequence pairs over {} vertices, {} disagreements{}",
            report.pairs,
            report.vertices,
            report.disagreements.len(),
            if perfect { "" } else { " (non-perfect factors: R-matrix candidate)" }
        );
        if !report.disagreements.is_empty() {
            detail.push_str(": ");
            detail.push_str(&serde_json::to_string(&report.disagreements).expect("serializable"));
        }
        out.push(check(
            statement,
            report.pairs >= PROBE_PAIRS,
            detail,
        ));
    }
    Ok(out)
}
