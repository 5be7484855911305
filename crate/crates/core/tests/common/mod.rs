//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use headplace::FreeTree;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Decodes a Prüfer sequence over vertices `1..=n` (length `n - 2`).
fn prufer_tree(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// AHU encoding of the tree rooted at `root`.
fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode(adj, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical form of a free tree: minimum encoding over its centers.
fn canonical(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n + 1];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // peel leaves to find the center(s)
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (1..=n).filter(|&v| deg[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            deg[v] = 0;
        }
        for &v in &layer {
            for &u in &adj[v] {
                if deg[u] == 0 {
                    continue;
                }
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| encode(&adj, c, 0)).min().unwrap()
}

/// One representative of every unlabeled free tree on `n` vertices.
pub fn unlabeled_trees(n: usize) -> Vec<FreeTree> {
    if n == 1 {
        return vec![FreeTree::new(1, vec![], None).unwrap()];
    }
    if n == 2 {
        return vec![FreeTree::path(2)];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![1usize; n - 2];
    loop {
        let edges = prufer_tree(n, &seq);
        if seen.insert(canonical(n, &edges)) {
            out.push(FreeTree::new(n, edges, None).unwrap());
        }
        // odometer over 1..=n
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] <= n {
                break;
            }
            seq[i] = 1;
            i += 1;
        }
    }
}

/// Exact `P(X >= s)` for `X ~ Binomial(n, num/den)` in integer arithmetic:
/// `sum_k C(n,k) num^k (den-num)^(n-k) / den^n`.
pub fn exact_right_tail(s: u64, n: u64, num: u64, den: u64) -> BigRational {
    let a = BigInt::from(num);
    let b = BigInt::from(den - num);
    let mut total = BigInt::zero();
    let mut coef = BigInt::one();
    for k in 0..=n {
        if k >= s {
            total += &coef
                * num_traits::pow(a.clone(), k as usize)
                * num_traits::pow(b.clone(), (n - k) as usize);
        }
        coef = coef * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    BigRational::new(total, num_traits::pow(BigInt::from(den), n as usize))
}

/// log10 of a positive rational, accurate far below the f64 range.
pub fn log10_rational(r: &BigRational) -> f64 {
    let num = r.numer().to_string();
    let den = r.denom().to_string();
    let lead = |s: &str| -> f64 {
        let head: f64 = s[..s.len().min(17)].parse::<f64>().unwrap();
        head.log10() + (s.len() - s.len().min(17)) as f64
    };
    lead(&num) - lead(&den)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

/// Swap distance by counting discordant pairs directly, `O(m^2)`.
pub fn brute_swap_distance(a: &[char], b: &[char]) -> u64 {
    let pos: HashMap<char, usize> = b.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut count = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if pos[&a[i]] > pos[&a[j]] {
                count += 1;
            }
        }
    }
    count
}

/// Shortest number of adjacent swaps from `a` to `b` by breadth-first search.
pub fn bfs_swap_distance(a: &[char], b: &[char]) -> u64 {
    let mut seen: HashMap<Vec<char>, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(a.to_vec(), 0);
    queue.push_back(a.to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = seen[&cur];
        if cur == b {
            return d;
        }
        for i in 0..cur.len().saturating_sub(1) {
            let mut next = cur.clone();
            next.swap(i, i + 1);
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("permutations of one alphabet are connected")
}
