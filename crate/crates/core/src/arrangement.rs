//! Free trees, linear arrangements and exact sums of dependency distances.
//!
//! Vertices are numbered `1..=n`. Positions in an arrangement are also `1..=n`.
//! All arithmetic here is integer (or exact rational for degree moments).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Undirected tree on vertices `1..=n`, optionally with a designated head (root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTree {
    n: usize,
    edges: Vec<(usize, usize)>,
    head: Option<usize>,
}

impl FreeTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, head: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a tree needs at least one vertex"));
        }
        if edges.len() != n - 1 {
            return Err(Error::domain(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let in_range = |v: usize| (1..=n).contains(&v);
        if let Some(h) = head {
            if !in_range(h) {
                return Err(Error::domain(format!(
                    "head {h} is not a vertex in 1..={n}"
                )));
            }
        }
        // union-find: n-1 edges joining everything means no cycle
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &edges {
            if !in_range(u) || !in_range(v) {
                return Err(Error::domain(format!(
                    "edge {u}-{v} has an endpoint outside 1..={n}"
                )));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::domain(format!("edge {u}-{v} closes a cycle")));
            }
            parent[ru] = rv;
        }
        Ok(FreeTree { n, edges, head })
    }

    /// Star tree with vertex 1 as hub and head.
    pub fn star(n: usize) -> Self {
        let edges = (2..=n).map(|v| (1, v)).collect();
        FreeTree::new(n.max(1), edges, Some(1)).expect("star is a tree")
    }

    /// Path `1-2-...-n`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v, v + 1)).collect();
        FreeTree::new(n.max(1), edges, None).expect("path is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn head(&self) -> Option<usize> {
        self.head
    }

    /// Degree of each vertex; index 0 is vertex 1.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    pub fn is_star(&self) -> bool {
        self.n < 3 || self.degrees().iter().filter(|&&d| d == self.n - 1).count() == 1
    }
}

impl fmt::Display for FreeTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}; edges=", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        if let Some(h) = self.head {
            write!(f, "; head={h}")?;
        }
        Ok(())
    }
}

/// Parses the one-line tree form `n=4; edges=1-2,1-3,1-4; head=1`.
///
/// Fields are separated by `;` and may appear in any order; `head` is optional
/// and `edges` may be empty only when `n=1`. The shorthands `star:N` and
/// `path:N` are also accepted.
impl FromStr for FreeTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: String| Error::parse(None, msg);
        if let Some((kind, n)) = s.split_once(':') {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad vertex count in {s:?}")))?;
            if n == 0 {
                return Err(bad("a tree needs at least one vertex".into()));
            }
            return match kind.trim() {
                "star" => Ok(FreeTree::star(n)),
                "path" => Ok(FreeTree::path(n)),
                other => Err(bad(format!("unknown tree shorthand {other:?}"))),
            };
        }
        let mut n = None;
        let mut edges = None;
        let mut head = None;
        for field in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {field:?}")))?;
            let value = value.trim();
            match key.trim() {
                "n" => {
                    n = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad vertex count {value:?}")))?,
                    )
                }
                "edges" => {
                    let mut list = Vec::new();
                    for e in value.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                        let (u, v) = e
                            .split_once('-')
                            .ok_or_else(|| bad(format!("bad edge {e:?}, expected u-v")))?;
                        let u = u
                            .trim()
                            .parse()
                            .map_err(|_| bad(format!("bad edge {e:?}")))?;
                        let v = v
                            .trim()
                            .parse()
                            .map_err(|_| bad(format!("bad edge {e:?}")))?;
                        list.push((u, v));
                    }
                    edges = Some(list);
                }
                "head" => {
                    head = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad head {value:?}")))?,
                    )
                }
                other => return Err(bad(format!("unknown field {other:?}"))),
            }
        }
        let n = n.ok_or_else(|| bad("missing field n".into()))?;
        FreeTree::new(n, edges.unwrap_or_default(), head)
    }
}

/// A bijection from vertices to positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearArrangement {
    // positions[v - 1] is the position of vertex v
    positions: Vec<usize>,
}

impl LinearArrangement {
    pub fn from_positions(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        let mut seen = vec![false; n];
        for &p in &positions {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::domain(format!(
                    "positions {positions:?} are not a permutation of 1..={n}"
                )));
            }
        }
        Ok(LinearArrangement { positions })
    }

    /// Builds the arrangement that lists `sequence[0]` first, `sequence[1]` second, ...
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        let mut positions = vec![0; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v == 0 || v > n || positions[v - 1] != 0 {
                return Err(Error::domain(format!(
                    "sequence {sequence:?} is not a permutation of 1..={n}"
                )));
            }
            positions[v - 1] = i + 1;
        }
        Ok(LinearArrangement { positions })
    }

    pub fn identity(n: usize) -> Self {
        LinearArrangement {
            positions: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position(&self, vertex: usize) -> usize {
        self.positions[vertex - 1]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Mirror image: position `p` becomes `n + 1 - p`.
    pub fn mirrored(&self) -> Self {
        let n = self.positions.len();
        LinearArrangement {
            positions: self.positions.iter().map(|&p| n + 1 - p).collect(),
        }
    }
}

/// D together with its bounds for the tree it was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DependencyDistanceSummary {
    pub d: u64,
    pub d_min: u64,
    pub d_max: u64,
}

/// Sum over edges of `|pos(u) - pos(v)|`.
pub fn sum_dependency_distances(tree: &FreeTree, arrangement: &LinearArrangement) -> Result<u64> {
    if tree.n() != arrangement.len() {
        return Err(Error::domain(format!(
            "arrangement covers {} vertices but the tree has {}",
            arrangement.len(),
            tree.n()
        )));
    }
    Ok(sum_distances_unchecked(
        tree.edges(),
        arrangement.positions(),
    ))
}

#[inline]
pub(crate) fn sum_distances_unchecked(edges: &[(usize, usize)], positions: &[usize]) -> u64 {
    edges
        .iter()
        .map(|&(u, v)| positions[u - 1].abs_diff(positions[v - 1]) as u64)
        .sum()
}

fn check_head_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!(
            "single-head structures need n >= 2, got {n}"
        )));
    }
    Ok(())
}

/// D of a star on `n` vertices whose hub sits at `head_position`:
/// `pi^2 - (n+1) pi + (n+1) n / 2`.
pub fn single_head_d(n: u64, head_position: u64) -> Result<u64> {
    check_head_n(n)?;
    if !(1..=n).contains(&head_position) {
        return Err(Error::domain(format!(
            "head position {head_position} outside 1..={n}"
        )));
    }
    let pi = head_position as i128;
    let n = n as i128;
    Ok((pi * pi - (n + 1) * pi + (n + 1) * n / 2) as u64)
}

/// `C(n, 2)`, reached with the head at either end.
pub fn d_max_single_head(n: u64) -> Result<u64> {
    check_head_n(n)?;
    Ok(n * (n - 1) / 2)
}

/// `floor(n^2 / 4)`, reached with the head at the center.
pub fn d_min_single_head(n: u64) -> Result<u64> {
    check_head_n(n)?;
    Ok(n * n / 4)
}

pub fn single_head_summary(n: u64, head_position: u64) -> Result<DependencyDistanceSummary> {
    Ok(DependencyDistanceSummary {
        d: single_head_d(n, head_position)?,
        d_min: d_min_single_head(n)?,
        d_max: d_max_single_head(n)?,
    })
}

/// `<k^2> = (1/n) * sum of squared degrees`.
pub fn degree_second_moment(tree: &FreeTree) -> BigRational {
    let sum: u64 = tree.degrees().iter().map(|&d| (d * d) as u64).sum();
    BigRational::new(BigInt::from(sum), BigInt::from(tree.n()))
}
