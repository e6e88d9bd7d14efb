//! Independent type-A tableau model: column crystals, promotion 0-arrows,
//! the filling map, charge and two-column jeu de taquin.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::chains::LambdaChain;
use crate::error::{invalid, Result};
use crate::model::{CrystalGraph, Model};
use crate::root_system::RootSystem;

/// A strictly increasing column over `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Column(pub Vec<usize>);

impl Column {
    pub fn new(mut entries: Vec<usize>, n: usize) -> Result<Self> {
        entries.sort_unstable();
        if entries.windows(2).any(|w| w[0] == w[1]) || entries.iter().any(|&e| e == 0 || e > n) {
            return Err(invalid!("{entries:?} is not a column over [{n}]"));
        }
        Ok(Column(entries))
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    fn phi(&self, i: usize) -> i64 {
        i64::from(self.contains(i) && !self.contains(i + 1))
    }

    fn epsilon(&self, i: usize) -> i64 {
        i64::from(self.contains(i + 1) && !self.contains(i))
    }

    fn replace(&self, from: usize, to: usize) -> Column {
        let mut v: Vec<usize> = self.0.iter().map(|&x| if x == from { to } else { x }).collect();
        v.sort_unstable();
        Column(v)
    }

    /// Adds one to every entry, `n` wrapping to 1.
    pub fn promote(&self, n: usize) -> Column {
        let mut v: Vec<usize> = self.0.iter().map(|&x| x % n + 1).collect();
        v.sort_unstable();
        Column(v)
    }

    pub fn demote(&self, n: usize) -> Column {
        let mut v: Vec<usize> = self.0.iter().map(|&x| (x + n - 2) % n + 1).collect();
        v.sort_unstable();
        Column(v)
    }
}

impl std::fmt::Display for Column {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(""))
    }
}

/// `b_1 ⊗ ⋯ ⊗ b_k`, with `f_i(b_1 ⊗ b_2) = f_i(b_1) ⊗ b_2` when
/// `ε_i(b_1) ≥ φ_i(b_2)`.
pub type TensorElement = Vec<Column>;

pub fn tensor_to_string(b: &[Column]) -> String {
    b.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ⊗ ")
}

/// `(φ_i, ε_i)` of each suffix `b_k ⊗ ⋯ ⊗ b_last`; entry `len` is `(0, 0)`.
fn suffix_strings(b: &[Column], i: usize) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 0); b.len() + 1];
    for k in (0..b.len()).rev() {
        let (p1, e1) = (b[k].phi(i), b[k].epsilon(i));
        let (p2, e2) = out[k + 1];
        out[k] = (p1 + (p2 - e1).max(0), e2 + (e1 - p2).max(0));
    }
    out
}

fn classical_f(b: &[Column], i: usize) -> Option<TensorElement> {
    let suf = suffix_strings(b, i);
    for k in 0..b.len() {
        if b[k].epsilon(i) >= suf[k + 1].0 {
            if b[k].phi(i) == 0 {
                return None;
            }
            let mut out = b.to_vec();
            out[k] = b[k].replace(i, i + 1);
            return Some(out);
        }
    }
    None
}

fn classical_e(b: &[Column], i: usize) -> Option<TensorElement> {
    let suf = suffix_strings(b, i);
    for k in 0..b.len() {
        if suf[k + 1].0 < b[k].epsilon(i) {
            let mut out = b.to_vec();
            out[k] = b[k].replace(i + 1, i);
            return Some(out);
        }
    }
    None
}

fn promote_all(b: &[Column], n: usize) -> TensorElement {
    b.iter().map(|c| c.promote(n)).collect()
}

fn demote_all(b: &[Column], n: usize) -> TensorElement {
    b.iter().map(|c| c.demote(n)).collect()
}

/// `f_i` for `i ∈ {0, …, n−1}`; `f_0` is `f_1` conjugated by promotion.
pub fn tensor_f(b: &[Column], i: usize, n: usize) -> Option<TensorElement> {
    if i == 0 {
        classical_f(&promote_all(b, n), 1).map(|x| demote_all(&x, n))
    } else {
        classical_f(b, i)
    }
}

pub fn tensor_e(b: &[Column], i: usize, n: usize) -> Option<TensorElement> {
    if i == 0 {
        classical_e(&promote_all(b, n), 1).map(|x| demote_all(&x, n))
    } else {
        classical_e(b, i)
    }
}

pub fn tensor_phi(b: &[Column], i: usize, n: usize) -> i64 {
    if i == 0 {
        suffix_strings(&promote_all(b, n), 1)[0].0
    } else {
        suffix_strings(b, i)[0].0
    }
}

pub fn tensor_epsilon(b: &[Column], i: usize, n: usize) -> i64 {
    if i == 0 {
        suffix_strings(&promote_all(b, n), 1)[0].1
    } else {
        suffix_strings(b, i)[0].1
    }
}

/// Content vector `(c_1, …, c_n)`.
pub fn tensor_weight(b: &[Column], n: usize) -> Vec<i64> {
    let mut w = vec![0; n];
    for c in b {
        for &x in &c.0 {
            w[x - 1] += 1;
        }
    }
    w
}

fn columns_of_height(n: usize, h: usize) -> Vec<Column> {
    fn rec(start: usize, n: usize, h: usize, cur: &mut Vec<usize>, out: &mut Vec<Column>) {
        if cur.len() == h {
            out.push(Column(cur.clone()));
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, h, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, h, &mut Vec::new(), &mut out);
    out
}

/// Every element of `B^{p_1,1} ⊗ ⋯ ⊗ B^{p_k,1}`, in lexicographic order.
pub fn all_tensors(n: usize, heights: &[usize]) -> Vec<TensorElement> {
    let mut out: Vec<TensorElement> = vec![Vec::new()];
    for &h in heights {
        let cols = columns_of_height(n, h);
        out = out.into_iter().flat_map(|b| cols.iter().map(move |c| [b.clone(), vec![c.clone()]].concat())).collect();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct TableauCrystal {
    pub n: usize,
    pub vertices: Vec<TensorElement>,
    /// `(src, dst, color)`.
    pub edges: Vec<(usize, usize, usize)>,
}

/// The affine crystal on the tensor product, keeping the dual Demazure
/// arrows only: all classical arrows and the 0-arrows with `φ_0 ≥ 2`.
pub fn dual_demazure_crystal(n: usize, heights: &[usize]) -> TableauCrystal {
    let vertices = all_tensors(n, heights);
    let index: HashMap<&TensorElement, usize> = vertices.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut edges = Vec::new();
    for (k, b) in vertices.iter().enumerate() {
        for i in 0..n {
            if i == 0 && tensor_phi(b, 0, n) < 2 {
                continue;
            }
            if let Some(fb) = tensor_f(b, i, n) {
                edges.push((k, index[&fb], i));
            }
        }
    }
    TableauCrystal { n, vertices, edges }
}

/// Columns of the filling of `J`, each sorted: `C_i = π_i[1, λ'_i]` where
/// `π_i` composes the transpositions of `J` up to the end of block `i`.
pub fn sfill(rs: &RootSystem, chain: &LambdaChain, j: &[usize]) -> Result<TensorElement> {
    let n = rs.rank() + 1;
    if rs.type_a_pair(0).is_none() {
        return Err(invalid!("the filling map needs type A, got {}", rs.cartan_type));
    }
    if chain.blocks.iter().map(|b| b.1).sum::<usize>() != chain.len() || chain.blocks.is_empty() && !chain.roots.is_empty() {
        return Err(invalid!("the chain has no column factorisation"));
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(chain.blocks.len());
    let mut pos = 0;
    let mut it = j.iter().peekable();
    for &(col, len) in &chain.blocks {
        let end = pos + len;
        while let Some(&&p) = it.peek() {
            if p > end {
                break;
            }
            let (a, b) = rs.type_a_pair(chain.roots[p - 1]).expect("type A root");
            perm.swap(a - 1, b - 1);
            it.next();
        }
        pos = end;
        let mut c = perm[..col].to_vec();
        c.sort_unstable();
        out.push(Column(c));
    }
    Ok(out)
}

/// Lascoux-Schützenberger charge of a word with partition content, by
/// repeatedly extracting standard subwords (scanning leftwards, cyclically).
pub fn word_charge(word: &[usize]) -> Result<u64> {
    let max = word.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; max + 1];
    for &x in word {
        counts[x] += 1;
    }
    if (1..max).any(|i| counts[i] < counts[i + 1]) {
        return Err(invalid!("word {word:?} does not have partition content"));
    }
    let mut alive = vec![true; word.len()];
    let mut remaining = word.len();
    let mut total = 0u64;
    while remaining > 0 {
        let top = (1..=max).rev().find(|&r| word.iter().zip(&alive).any(|(&x, &a)| a && x == r)).unwrap();
        let mut cur = word.len();
        let mut index = 0u64;
        for r in 1..=top {
            let left = (0..cur).rev().find(|&k| alive[k] && word[k] == r);
            let k = match left {
                Some(k) => k,
                None => {
                    if r > 1 {
                        index += 1;
                    }
                    (0..word.len()).rev().find(|&k| alive[k] && word[k] == r).unwrap()
                }
            };
            total += index;
            alive[k] = false;
            remaining -= 1;
            cur = k;
        }
    }
    Ok(total)
}

/// Columns read bottom to top, left factor first.
pub fn reading_word(b: &[Column]) -> Vec<usize> {
    b.iter().flat_map(|c| c.0.iter().rev().copied()).collect()
}

/// Lascoux-Schützenberger reflection on the letters `i`, `i+1`: bracket each
/// `i+1` with a later `i`, then swap the numbers of unbracketed letters.
pub fn reflect_letters(word: &mut [usize], i: usize) {
    let mut open = Vec::new();
    let mut paired = vec![false; word.len()];
    for k in 0..word.len() {
        if word[k] == i + 1 {
            open.push(k);
        } else if word[k] == i {
            if let Some(o) = open.pop() {
                paired[o] = true;
                paired[k] = true;
            }
        }
    }
    let free: Vec<usize> = (0..word.len()).filter(|&k| !paired[k] && (word[k] == i || word[k] == i + 1)).collect();
    let big = free.iter().filter(|&&k| word[k] == i + 1).count();
    for (t, &k) in free.iter().enumerate() {
        word[k] = if t < big { i } else { i + 1 };
    }
}

/// Records factor indices: entries `x` from `n` down to 1, and for each `x`
/// the factors containing it from right to left.
pub fn factor_word(b: &[Column], n: usize) -> Vec<usize> {
    let mut w = Vec::new();
    for x in (1..=n).rev() {
        w.extend((0..b.len()).rev().filter(|&i| b[i].contains(x)).map(|i| i + 1));
    }
    w
}

/// Charge of a tensor of columns: the charge of its factor word, after
/// letter reflections bring the content into partition order.
pub fn charge(b: &[Column], n: usize) -> u64 {
    let mut w = factor_word(b, n);
    loop {
        let mut counts = vec![0usize; b.len() + 2];
        for &x in &w {
            counts[x] += 1;
        }
        match (1..b.len()).find(|&i| counts[i] < counts[i + 1]) {
            Some(i) => reflect_letters(&mut w, i),
            None => break,
        }
    }
    word_charge(&w).expect("sorted content is a partition")
}

/// Row-insertion tableau of a word.
pub fn insertion_tableau(word: &[usize]) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in word {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            match rows[r].iter().position(|&y| y > x) {
                Some(k) => {
                    std::mem::swap(&mut rows[r][k], &mut x);
                    r += 1;
                }
                None => {
                    rows[r].push(x);
                    break;
                }
            }
        }
    }
    rows
}

/// Exchanges the heights of two adjacent columns keeping the rectification:
/// the unique pair whose reading word is Knuth equivalent to the input's.
pub fn jdt_two_columns(left: &Column, right: &Column, n: usize) -> Result<(Column, Column)> {
    let target = insertion_tableau(&reading_word(&[left.clone(), right.clone()]));
    let mut found = None;
    for a in columns_of_height(n, right.height()) {
        for b in columns_of_height(n, left.height()) {
            if insertion_tableau(&reading_word(&[a.clone(), b.clone()])) == target {
                if found.is_some() {
                    return Err(crate::error::Error::Internal(format!("two rectification partners for {left} ⊗ {right}")));
                }
                found = Some((a.clone(), b));
            }
        }
    }
    found.ok_or_else(|| crate::error::Error::Internal(format!("no rectification partner for {left} ⊗ {right}")))
}

/// Brings the factor heights into `target` order by adjacent swaps.
pub fn permute_factors(b: &[Column], target: &[usize], n: usize) -> Result<TensorElement> {
    let mut cur = b.to_vec();
    let mut heights: Vec<usize> = cur.iter().map(Column::height).collect();
    let mut sorted_heights = heights.clone();
    let mut sorted_target = target.to_vec();
    sorted_heights.sort_unstable();
    sorted_target.sort_unstable();
    if sorted_heights != sorted_target {
        return Err(invalid!("{target:?} is not a rearrangement of {heights:?}"));
    }
    for i in 0..target.len() {
        let j = (i..heights.len()).find(|&j| heights[j] == target[i]).unwrap();
        for k in (i..j).rev() {
            let (l, r) = jdt_two_columns(&cur[k], &cur[k + 1], n)?;
            cur[k] = l;
            cur[k + 1] = r;
            heights.swap(k, k + 1);
        }
    }
    Ok(cur)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IsomorphismReport {
    pub vertices: usize,
    pub arrows: usize,
    pub violations: Vec<String>,
}

impl IsomorphismReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `sfill` is a weight- and arrow-preserving bijection onto the
/// dual Demazure crystal that sends height to charge.
pub fn verify_isomorphism(model: &Model, crystal: &CrystalGraph) -> Result<IsomorphismReport> {
    let rs = &model.group.rs;
    let n = rs.rank() + 1;
    let chain = model.chain;
    let heights: Vec<usize> = chain.blocks.iter().map(|b| b.0).collect();
    let mut report = IsomorphismReport { vertices: crystal.len(), ..Default::default() };
    let images: Vec<TensorElement> = crystal.vertices.iter().map(|j| sfill(rs, chain, j)).collect::<Result<_>>()?;
    let tableaux = dual_demazure_crystal(n, &heights);
    let distinct: HashSet<&TensorElement> = images.iter().collect();
    if distinct.len() != images.len() {
        report.violations.push("sfill is not injective".into());
    }
    if tableaux.vertices.len() != images.len() {
        report.violations.push(format!("{} admissible subsets but {} tensor elements", images.len(), tableaux.vertices.len()));
    }
    for (k, (j, b)) in crystal.vertices.iter().zip(&images).enumerate() {
        let expected = rs.type_a_coords(&crystal.weights[k]).expect("type A");
        let content = tensor_weight(b, n);
        let normalised: Vec<i64> = content.iter().map(|c| c - content[n - 1]).collect();
        if normalised != expected {
            report.violations.push(format!("weight of {j:?}: {expected:?} vs {}", tensor_to_string(b)));
        }
        let ch = charge(b, n) as i64;
        if ch != crystal.heights[k] {
            report.violations.push(format!("height {} of {j:?} but charge {ch}", crystal.heights[k]));
        }
        for p in 0..n {
            let tableau_arrow = if p == 0 && tensor_phi(b, 0, n) < 2 { None } else { tensor_f(b, p, n) };
            match (model.f(j, p), tableau_arrow) {
                (None, None) => {}
                (Some(fj), Some(fb)) => {
                    report.arrows += 1;
                    if sfill(rs, chain, &fj)? != fb {
                        report.violations.push(format!("f_{p} of {j:?} does not intertwine"));
                    }
                }
                (Some(_), None) => report.violations.push(format!("f_{p} defined on {j:?} but not on its filling")),
                (None, Some(_)) => report.violations.push(format!("f_{p} defined on the filling of {j:?} only")),
            }
        }
    }
    let tableau_arrows = tableaux.edges.len();
    if tableau_arrows != report.arrows {
        report.violations.push(format!("{} matched arrows but {tableau_arrows} dual Demazure arrows", report.arrows));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::chain_for_columns;
    use crate::weyl::WeylGroup;

    fn col(v: &[usize]) -> Column {
        Column(v.to_vec())
    }

    #[test]
    fn single_box() {
        assert_eq!(tensor_f(&[col(&[1])], 1, 3), Some(vec![col(&[2])]));
        assert_eq!(tensor_f(&[col(&[3])], 0, 3), Some(vec![col(&[1])]));
        assert_eq!(tensor_f(&[col(&[1])], 0, 3), None);
    }

    #[test]
    fn tensor_rule_two_boxes() {
        // ε_1(1) = 0 ≥ φ_1(1) = 1 fails, so f_1 acts on the right factor.
        assert_eq!(tensor_f(&[col(&[1]), col(&[1])], 1, 2), Some(vec![col(&[1]), col(&[2])]));
        assert_eq!(tensor_f(&[col(&[1]), col(&[2])], 1, 2), Some(vec![col(&[2]), col(&[2])]));
    }

    #[test]
    fn filling_of_empty_set() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let c = chain_for_columns(&rs, &[1, 2, 2, 1]).unwrap();
        assert_eq!(sfill(&rs, &c, &[]).unwrap(), vec![col(&[1]), col(&[1, 2]), col(&[1, 2]), col(&[1])]);
        assert_eq!(charge(&sfill(&rs, &c, &[]).unwrap(), 3), 0);
    }

    #[test]
    fn example_fillings() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = chain_for_columns(&rs, &[1, 2, 2, 1]).unwrap();
        let gp = chain_for_columns(&rs, &[1, 2, 1, 2]).unwrap();
        let b = sfill(&rs, &g, &[1, 2, 3, 6, 7, 8]).unwrap();
        assert_eq!(b, vec![col(&[3]), col(&[2, 3]), col(&[1, 2]), col(&[3])]);
        let bp = sfill(&rs, &gp, &[1, 2, 3, 5, 7, 8]).unwrap();
        assert_eq!(bp, vec![col(&[3]), col(&[2, 3]), col(&[2]), col(&[1, 3])]);
        assert_eq!(permute_factors(&b, &[1, 2, 1, 2], 3).unwrap(), bp);
        assert_eq!(charge(&b, 3), charge(&bp, 3));
    }

    #[test]
    fn charge_small_words() {
        assert_eq!(word_charge(&[2, 1]).unwrap(), 0);
        assert_eq!(word_charge(&[1, 2]).unwrap(), 1);
        assert_eq!(word_charge(&[1, 1]).unwrap(), 0);
        assert!(word_charge(&[2, 2, 1]).is_err());
    }

    #[test]
    fn jdt_slide() {
        assert_eq!(jdt_two_columns(&col(&[1, 2]), &col(&[3]), 3).unwrap(), (col(&[2]), col(&[1, 3])));
        assert_eq!(jdt_two_columns(&col(&[1]), &col(&[1]), 3).unwrap(), (col(&[1]), col(&[1])));
    }

    #[test]
    fn promotion_weight_shift() {
        for b in all_tensors(3, &[1, 2]) {
            if let Some(fb) = tensor_f(&b, 0, 3) {
                let (w, fw) = (tensor_weight(&b, 3), tensor_weight(&fb, 3));
                assert_eq!((fw[0] - w[0], fw[1] - w[1], fw[2] - w[2]), (1, 0, -1));
                assert_eq!(tensor_e(&fb, 0, 3), Some(b));
            }
        }
    }

    #[test]
    fn demazure_filter() {
        assert!(dual_demazure_crystal(3, &[1]).edges.iter().all(|e| e.2 != 0));
        assert!(dual_demazure_crystal(2, &[1, 1]).edges.iter().any(|e| e.2 == 0));
    }

    #[test]
    fn isomorphism_small() {
        let rs = RootSystem::from_tag("A2").unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let c = chain_for_columns(&rs, &[1, 2]).unwrap();
        let m = Model::new(&g, &c);
        let cr = m.build_crystal(usize::MAX).unwrap();
        let r = verify_isomorphism(&m, &cr).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }
}
