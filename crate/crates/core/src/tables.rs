//! Hand-transcribed rank-two quantum Yang-Baxter moves, kept as an oracle
//! for the general path-search implementation.
//!
//! Labels are window indices: in a top row index `i` stands for `β_i`, in a
//! bottom row for `β'_i = β_{q+1-i}`. A trailing `*` marks a down step.
//! Words are in `s1 = s_{β_1}` and `s2 = s_{β_q}`, with `β_1` the short
//! simple root in types C2 and G2.

use crate::root_system::Rank2Kind;

/// A label set with down-step markers, sorted by index.
pub type MarkedSet = Vec<(usize, bool)>;

#[derive(Debug, Clone)]
pub struct TableEntry {
    pub kind: Rank2Kind,
    /// Word of `ū` as a sequence of 1s and 2s.
    pub word: Vec<usize>,
    pub top: Vec<MarkedSet>,
    pub bottom: Vec<MarkedSet>,
}

const RAW: &[(Rank2Kind, &str, &str, &str)] = &[
    (Rank2Kind::A2, "s1", "{1*},{1*,3 }", "{3*},{2 ,3*}"),
    (Rank2Kind::A2, "s1s2", "{1 ,2*},{3*},{1 ,2*,3 },{1 ,3*}", "{1*,3*},{1*},{1*,2 ,3*},{1*,2 }"),
    (Rank2Kind::A2, "s1s2s1", "{2*},{1*,3*},{1*},{2*,3 },{3*}", "{2*},{2*,3 },{3*},{1*,3*},{1*}"),
    (Rank2Kind::A2, "s2", "{3*},{2 ,3*}", "{1*},{1*,3 }"),
    (Rank2Kind::A2, "s2s1", "{1*,3*},{1*,2 ,3*},{1*,2 },{1*}", "{1 ,2*},{1 ,2*,3 },{1 ,3*},{3*}"),
    (Rank2Kind::B2, "s1", "{1*},{1*,4 }", "{4*},{3 ,4*}"),
    (Rank2Kind::B2, "s1s2", "{1 ,2*},{4*},{1 ,2*,4 },{2 ,4*}", "{1*,4*},{1*},{1*,3 ,4*},{1*,3 }"),
    (
        Rank2Kind::B2,
        "s1s2s1",
        "{2*},{1*,4*},{1*},{2*,4 },{1*,2 ,4*},{1*,2 }",
        "{3*},{3*,4 },{4*},{1 ,3*},{1 ,3*,4 },{1 ,4*}",
    ),
    (Rank2Kind::B2, "s2", "{4*},{3 ,4*}", "{1*},{1*,4 }"),
    (Rank2Kind::B2, "s2s1", "{1*,4*},{1*,3 ,4*},{1*,3 },{1*}", "{2 ,3*},{2 ,3*,4 },{2 ,4*},{4*}"),
    (
        Rank2Kind::B2,
        "s2s1s2",
        "{1 ,2*,4*},{1 ,2*,3 ,4*},{1 ,2*,3 },{1 ,4*},{1 ,2*},{4*}",
        "{1*,2 ,3*},{1*,2 ,3*,4 },{1*,2 ,4*},{1*,2 },{1*,4*},{1*}",
    ),
    (
        Rank2Kind::B2,
        "s2s1s2s1",
        "{2*,4*},{2*,3 ,4*},{2*,3 },{4*},{2*},{1*,4*},{1*}",
        "{1*,3*},{1*,3*,4 },{1*,4*},{1*},{3*},{3*,4 },{4*}",
    ),
    (Rank2Kind::G2, "s1", "{1*},{1*,6 }", "{6*},{5 ,6*}"),
    (Rank2Kind::G2, "s1s2", "{1 ,2*},{6*},{1 ,2*,6 },{4 ,6*}", "{1*,6*},{1*},{1*,5 ,6*},{1*,5 }"),
    (
        Rank2Kind::G2,
        "s1s2s1",
        "{2*},{1*,6*},{1*},{2*,6 },{1*,4 ,6*},{1*,4 }",
        "{5*},{5*,6 },{6*},{3 ,5*},{3 ,5*,6 },{3 ,6*}",
    ),
    (
        Rank2Kind::G2,
        "s1s2s1s2",
        "{2 ,4*},{1 ,2*,6*},{1 ,2*},{6*},{2 ,4*,6 },{1 ,2*,4 ,6*},{1 ,2*,4 },{2 ,6*}",
        "{1*,5*},{1*,5*,6 },{1*,6*},{1*},{1*,3 ,5*},{1*,3 ,5*,6 },{1*,3 ,6*},{1*,3 }",
    ),
    (
        Rank2Kind::G2,
        "s1s2s1s2s1",
        "{1*,2 ,4*},{2*,6*},{2*},{1*,6*},{1*},{1*,2 ,4*,6 },{2*,4 ,6*},{2*,4 },{1*,2 ,6*},{1*,2 }",
        "{1 ,3*,6*},{1 ,3*},{5*},{5*,6 },{6*},{1 ,3*,5 ,6*},{1 ,3*,5 },{1 ,5*},{1 ,5*,6 },{1 ,6*}",
    ),
    (Rank2Kind::G2, "s2", "{6*},{5 ,6*}", "{1*},{1*,6 }"),
    (Rank2Kind::G2, "s2s1", "{1*,6*},{1*,5 ,6*},{1*,5 },{1*}", "{4 ,5*},{4 ,5*,6 },{4 ,6*},{6*}"),
    (
        Rank2Kind::G2,
        "s2s1s2",
        "{1 ,2*,6*},{1 ,2*,5 ,6*},{1 ,2*,5 },{3 ,6*},{1 ,2*},{6*}",
        "{1*,4 ,5*},{1*,4 ,5*,6 },{1*,4 ,6*},{1*,4 },{1*,6*},{1*}",
    ),
    (
        Rank2Kind::G2,
        "s2s1s2s1",
        "{2*,6*},{2*,5 ,6*},{2*,5 },{1*,3 ,6*},{1*,3 },{2*},{1*,6*},{1*}",
        "{1 ,3*},{1 ,3*,6 },{2 ,5*},{2 ,5*,6 },{2 ,6*},{5*},{5*,6 },{6*}",
    ),
    (
        Rank2Kind::G2,
        "s2s1s2s1s2",
        "{4*},{1 ,4*},{1 ,4*,6 },{1 ,2*,3 ,6*},{1 ,2*,3 },{1 ,6*},{4*,6 },{1 ,2*,6*},{1 ,2*},{6*}",
        "{3*},{3*,6 },{1*,2 ,5*},{1*,2 ,5*,6 },{1*,2 ,6*},{1*,2 },{1*,5*},{1*,5*,6 },{1*,6*},{1*}",
    ),
    (
        Rank2Kind::G2,
        "s2s1s2s1s2s1",
        "{1*,4*},{4*},{4*,6 },{2*,3 ,6*},{2*,3 },{6*},{1*,4*,6 },{2*,6*},{2*},{1*,6*},{1*}",
        "{3*,6*},{3*},{1*,5*},{1*,5*,6 },{1*,6*},{1*},{3*,5 ,6*},{3*,5 },{5*},{5*,6 },{6*}",
    ),
];

fn parse_word(s: &str) -> Vec<usize> {
    s.split('s').filter(|t| !t.is_empty()).map(|t| t.parse().expect("table word")).collect()
}

fn parse_sets(s: &str) -> Vec<MarkedSet> {
    s.split('}')
        .map(|chunk| chunk.trim_start_matches(',').trim())
        .filter(|chunk| !chunk.is_empty())
        .map(|chunk| {
            chunk
                .trim_start_matches('{')
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    let down = tok.ends_with('*');
                    (tok.trim_end_matches('*').parse().expect("table label"), down)
                })
                .collect()
        })
        .collect()
}

pub fn non_classical_table() -> Vec<TableEntry> {
    RAW.iter()
        .map(|&(kind, word, top, bottom)| {
            let entry = TableEntry { kind, word: parse_word(word), top: parse_sets(top), bottom: parse_sets(bottom) };
            assert_eq!(entry.top.len(), entry.bottom.len(), "unbalanced table row {word}");
            entry
        })
        .collect()
}

/// Looks up the partner of `labels` (read as a top row when `from_top`,
/// otherwise as a bottom row) among the moves starting at `ū`.
pub fn rank2_table_lookup(kind: Rank2Kind, word: &[usize], labels: &MarkedSet, from_top: bool) -> Option<MarkedSet> {
    let kind = if kind == Rank2Kind::A1xA1 { return None } else { kind };
    let entry = non_classical_table().into_iter().find(|e| e.kind == kind && e.word == word)?;
    let (from, to) = if from_top { (&entry.top, &entry.bottom) } else { (&entry.bottom, &entry.top) };
    from.iter().position(|s| s == labels).map(|i| to[i].clone())
}

/// The closed-form classical moves, as unordered pairs of label sets, for
/// `a = ℓ(ū)`, `b = ℓ(w̄)` in a dihedral group with `q` positive roots.
pub fn classical_moves(q: usize, a: usize, b: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    if a == b {
        out.push((vec![], vec![]));
    }
    if a + 1 == b && b <= q {
        out.push((vec![1], vec![q]));
        if 0 < a && a < q - 1 {
            out.push((vec![q - a], vec![a + 1]));
        }
    }
    if a + 2 <= b && b < q {
        let mut left = vec![1];
        left.extend(a + 2..=b);
        let mut right: Vec<usize> = (a + 1..b).collect();
        right.push(q);
        out.push((left, right));
    }
    if 0 < a && a + 2 <= b && b <= q {
        let mut left = vec![1];
        left.extend(a + 2..b);
        left.push(q);
        out.push((left, (a + 1..=b).collect()));
    }
    if a == 0 && b == q {
        out.push(((1..=q).collect(), (1..=q).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows() {
        let t = non_classical_table();
        assert_eq!(t.len(), 23);
        let c2 = t.iter().find(|e| e.kind == Rank2Kind::B2 && e.word == vec![2, 1, 2, 1]).unwrap();
        assert_eq!(c2.top[0], vec![(2, true), (4, true)]);
        assert_eq!(c2.bottom[0], vec![(1, true), (3, true)]);
    }

    #[test]
    fn lookups() {
        assert_eq!(rank2_table_lookup(Rank2Kind::A2, &[1], &vec![(1, true)], true), Some(vec![(3, true)]));
        assert_eq!(
            rank2_table_lookup(Rank2Kind::B2, &[2, 1, 2, 1], &vec![(2, true), (4, true)], true),
            Some(vec![(1, true), (3, true)])
        );
        assert_eq!(rank2_table_lookup(Rank2Kind::A2, &[1], &vec![(2, true)], true), None);
    }

    #[test]
    fn classical_case_one() {
        assert!(classical_moves(3, 0, 1).contains(&(vec![1], vec![3])));
    }
}
