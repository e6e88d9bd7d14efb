use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use qam_core::chains::chain_for_columns;
use qam_core::model::{Model, DEFAULT_CRYSTAL_BUDGET};
use qam_core::root_system::RootSystem;
use qam_core::weyl::{EdgeKind, WeylGroup};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out
}

fn inversions(p: &[usize]) -> i64 {
    let mut c = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                c += 1;
            }
        }
    }
    c
}

type PermEdge = (Vec<usize>, Vec<usize>, (usize, usize), bool);

// Quantum Bruhat graph of S_n straight from the definition on permutations.
fn brute_force_qbg(n: usize) -> BTreeSet<PermEdge> {
    let mut edges = BTreeSet::new();
    for w in permutations(n) {
        let lw = inversions(&w);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = w.clone();
                v.swap(i, j);
                let lv = inversions(&v);
                let height = (j - i) as i64;
                if lv == lw + 1 {
                    edges.insert((w.clone(), v, (i + 1, j + 1), true));
                } else if lv == lw - 2 * height + 1 {
                    edges.insert((w.clone(), v, (i + 1, j + 1), false));
                }
            }
        }
    }
    edges
}

#[test]
fn quantum_bruhat_graph_matches_permutation_definition() {
    for rank in 1..=4 {
        let rs = RootSystem::from_tag(&format!("A{rank}")).unwrap();
        let g = WeylGroup::new(&rs).unwrap();
        let qbg = g.build_qbg();
        let ours: BTreeSet<PermEdge> = qbg
            .edges
            .iter()
            .map(|e| {
                (
                    g.one_line(e.src).unwrap(),
                    g.one_line(e.dst).unwrap(),
                    rs.type_a_pair(e.root).unwrap(),
                    e.kind == EdgeKind::Up,
                )
            })
            .collect();
        assert_eq!(ours.len(), qbg.edges.len());
        assert_eq!(ours, brute_force_qbg(rank + 1), "A{rank}");
    }
}

#[test]
fn bruhat_covers_of_s3() {
    let rs = RootSystem::from_tag("A2").unwrap();
    let qbg = WeylGroup::new(&rs).unwrap().build_qbg();
    // the Hasse diagram of the Bruhat order on S_3 has 8 edges
    assert_eq!(qbg.count(EdgeKind::Up), 8);
}

type Q = Ratio<i64>;

struct Forms {
    cartan: Vec<Vec<i64>>,
    sq: Vec<i64>,
    positive: Vec<Vec<i64>>,
}

impl Forms {
    fn new(rs: &RootSystem) -> Self {
        Forms {
            cartan: rs.cartan.clone(),
            sq: rs.simple_sq_len.clone(),
            positive: rs.positive.iter().map(|r| r.weight.0.clone()).collect(),
        }
    }

    // simple-root coordinates of a weight given in fundamental coordinates
    fn root_coords(&self, v: &[i64]) -> Vec<Q> {
        let n = v.len();
        // solve x · cartan = v
        let mut m: Vec<Vec<Q>> = (0..n)
            .map(|j| {
                let mut row: Vec<Q> = (0..n).map(|i| Q::from(self.cartan[i][j])).collect();
                row.push(Q::from(v[j]));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != Q::from(0)).unwrap();
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let x = self.root_coords(a);
        (0..a.len()).map(|i| x[i] * Q::new(b[i] * self.sq[i], 2)).sum()
    }

    // Freudenthal's multiplicity formula
    fn character(&self, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
        let n = lambda.len();
        let rho = vec![1i64; n];
        let add = |a: &[i64], b: &[i64], k: i64| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + k * y).collect() };
        let lr = add(lambda, &rho, 1);
        let top = self.inner(&lr, &lr);
        let depth_bound: i64 = {
            let x = self.root_coords(lambda);
            let m = x.iter().map(|q| q.ceil().to_integer()).max().unwrap_or(0);
            2 * m * n as i64 + 1
        };
        let simple_weights: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[i][j]).collect()).collect();
        let mut mult: HashMap<Vec<i64>, i64> = HashMap::new();
        mult.insert(lambda.to_vec(), 1);
        let mut layer = vec![lambda.to_vec()];
        for _ in 0..depth_bound {
            let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
            for mu in &layer {
                for a in &simple_weights {
                    next.insert(add(mu, a, -1));
                }
            }
            let mut kept = Vec::new();
            for mu in next {
                let mr = add(&mu, &rho, 1);
                let denom = top - self.inner(&mr, &mr);
                if denom == Q::from(0) {
                    continue;
                }
                let mut num = Q::from(0);
                for alpha in &self.positive {
                    let mut k = 1;
                    loop {
                        let up = add(&mu, alpha, k);
                        match mult.get(&up) {
                            Some(&m) => num += Q::from(m) * self.inner(&up, alpha),
                            None if k > depth_bound => break,
                            None => {}
                        }
                        k += 1;
                        if k > depth_bound {
                            break;
                        }
                    }
                }
                let m = Q::from(2) * num / denom;
                assert!(m.is_integer(), "non-integral multiplicity");
                if m.to_integer() > 0 {
                    mult.insert(mu.clone(), m.to_integer());
                    kept.push(mu);
                } else {
                    kept.push(mu);
                }
            }
            // only weights that can still lead to nonzero multiplicities are kept
            layer = kept
                .into_iter()
                .filter(|mu| mult.contains_key(mu) || self.inner(mu, mu) <= self.inner(lambda, lambda))
                .collect();
            if layer.is_empty() {
                break;
            }
        }
        mult.into_iter().filter(|(_, m)| *m > 0).collect()
    }
}

fn convolve(a: &BTreeMap<Vec<i64>, i64>, b: &BTreeMap<Vec<i64>, i64>) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    for (x, m) in a {
        for (y, k) in b {
            let w: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *out.entry(w).or_insert(0) += m * k;
        }
    }
    out
}

fn unit(rank: usize, k: usize) -> Vec<i64> {
    (1..=rank).map(|i| i64::from(i == k)).collect()
}

// classical decomposition of the single-column Kirillov-Reshetikhin module
fn column_highest_weights(tag: &str, k: usize) -> Vec<Vec<i64>> {
    let rank: usize = tag[1..].parse().unwrap();
    let zero = vec![0; rank];
    match (&tag[..1], k) {
        ("A", _) => vec![unit(rank, k)],
        ("C", _) if k == rank => vec![unit(rank, k)],
        ("C", _) if k == 1 => vec![unit(rank, 1)],
        ("B", _) if k == rank => vec![unit(rank, k)],
        ("B", 1) => vec![unit(rank, 1)],
        ("B", 2) => vec![unit(rank, 2), zero],
        ("G", 1) => vec![unit(2, 1)],
        ("G", 2) => vec![unit(2, 2), zero],
        _ => panic!("no decomposition recorded for {tag} column {k}"),
    }
}

fn crystal_character(tag: &str, columns: &[usize]) -> BTreeMap<Vec<i64>, i64> {
    let rs = RootSystem::from_tag(tag).unwrap();
    let g = WeylGroup::new(&rs).unwrap();
    let chain = chain_for_columns(&rs, columns).unwrap();
    let crystal = Model::new(&g, &chain).build_crystal(DEFAULT_CRYSTAL_BUDGET).unwrap();
    let mut out = BTreeMap::new();
    for w in &crystal.weights {
        *out.entry(w.0.clone()).or_insert(0) += 1;
    }
    out
}

fn expected_character(tag: &str, columns: &[usize]) -> BTreeMap<Vec<i64>, i64> {
    let rs = RootSystem::from_tag(tag).unwrap();
    let forms = Forms::new(&rs);
    let mut acc: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(vec![0; rs.rank()], 1)]);
    for &k in columns {
        let mut column = BTreeMap::new();
        for hw in column_highest_weights(tag, k) {
            for (w, m) in forms.character(&hw) {
                *column.entry(w).or_insert(0) += m;
            }
        }
        acc = convolve(&acc, &column);
    }
    acc
}

#[test]
fn freudenthal_dimensions() {
    let cases: &[(&str, Vec<i64>, i64)] = &[
        ("A2", vec![1, 1], 8),
        ("B3", vec![0, 1, 0], 21),
        ("B3", vec![0, 0, 1], 8),
        ("C2", vec![0, 1], 5),
        ("G2", vec![1, 0], 7),
        ("G2", vec![0, 1], 14),
    ];
    for (tag, hw, dim) in cases {
        let forms = Forms::new(&RootSystem::from_tag(tag).unwrap());
        let total: i64 = forms.character(hw).values().sum();
        assert_eq!(total, *dim, "{tag} {hw:?}");
    }
}

#[test]
fn crystal_weights_match_classical_characters() {
    let cases: &[(&str, &[usize])] = &[
        ("A2", &[1, 2, 2, 1]),
        ("A3", &[2, 1, 3]),
        ("C2", &[1, 2, 1]),
        ("C2", &[2, 2]),
        ("G2", &[1, 2]),
        ("G2", &[2]),
        ("B3", &[3, 1]),
        ("B3", &[2]),
    ];
    for (tag, columns) in cases {
        assert_eq!(crystal_character(tag, columns), expected_character(tag, columns), "{tag} {columns:?}");
    }
}
