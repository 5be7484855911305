//! Swap distance between constituent orders and the graph of orders one
//! adjacent swap apart. For three constituents that graph is a 6-cycle.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of distinct single-character constituents, e.g. `SOV`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstituentOrder(Vec<char>);

impl ConstituentOrder {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        let mut seen = HashSet::new();
        if let Some(c) = symbols.iter().find(|c| !seen.insert(**c)) {
            return Err(Error::domain(format!("symbol {c:?} repeated in order")));
        }
        Ok(ConstituentOrder(symbols))
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromStr for ConstituentOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstituentOrder::new(s.trim().chars().collect())
    }
}

impl fmt::Display for ConstituentOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// Minimal number of adjacent swaps turning `a` into `b`, i.e. the number of
/// symbol pairs the two orders rank differently. `O(m log m)` by merge sort.
pub fn swap_distance(a: &ConstituentOrder, b: &ConstituentOrder) -> Result<u64> {
    let mut sa = a.0.clone();
    let mut sb = b.0.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Err(Error::domain(format!("{a} and {b} use different symbols")));
    }
    // rank of each symbol in b, read in a's order
    let mut ranks: Vec<usize> =
        a.0.iter()
            .map(|c| b.0.iter().position(|d| d == c).expect("same alphabet"))
            .collect();
    let mut scratch = vec![0; ranks.len()];
    Ok(count_inversions(&mut ranks, &mut scratch))
}

fn count_inversions(xs: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = xs.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        count_inversions(left, sl) + count_inversions(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            scratch[k] = xs[i];
            i += 1;
        } else {
            scratch[k] = xs[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&scratch[..n]);
    count
}

pub fn adjacent(a: &ConstituentOrder, b: &ConstituentOrder) -> Result<bool> {
    Ok(swap_distance(a, b)? == 1)
}

/// All orders of an alphabet joined when one adjacent swap apart.
#[derive(Debug, Clone, PartialEq)]
pub struct PermutationRing {
    nodes: Vec<ConstituentOrder>,
    edges: Vec<(usize, usize)>,
    frequencies: Vec<Option<f64>>,
}

impl PermutationRing {
    /// Nodes in layout order: around the cycle for three symbols, starting at
    /// the alphabet as given and moving first to the order that swaps its last
    /// two symbols.
    pub fn nodes(&self) -> &[ConstituentOrder] {
        &self.nodes
    }

    /// Index pairs into [`nodes`](Self::nodes).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn frequency(&self, node: usize) -> Option<f64> {
        self.frequencies[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == node || b == node)
            .count()
    }

    /// True when the graph is a single cycle through every node.
    pub fn is_ring(&self) -> bool {
        let m = self.nodes.len();
        m >= 3 && self.edges.len() == m && (0..m).all(|v| self.degree(v) == 2) && {
            let mut seen = vec![false; m];
            let mut stack = vec![0];
            while let Some(v) = stack.pop() {
                if std::mem::replace(&mut seen[v], true) {
                    continue;
                }
                for &(a, b) in &self.edges {
                    if a == v {
                        stack.push(b);
                    } else if b == v {
                        stack.push(a);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        }
    }

    /// Angle in degrees, clockwise from the top, of each node in layout order.
    pub fn angles(&self) -> Vec<f64> {
        let m = self.nodes.len() as f64;
        (0..self.nodes.len())
            .map(|i| 360.0 * i as f64 / m)
            .collect()
    }

    /// `source,target` rows.
    pub fn write_edges_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["source", "target"])?;
        for &(a, b) in &self.edges {
            w.write_record([self.nodes[a].to_string(), self.nodes[b].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// `node,angle,frequency` rows; `frequency` is empty when not supplied.
    pub fn write_layout_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node", "angle", "frequency"])?;
        for ((node, angle), f) in self.nodes.iter().zip(self.angles()).zip(&self.frequencies) {
            w.write_record([
                node.to_string(),
                angle.to_string(),
                f.map(|f| f.to_string()).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn permutations(alphabet: &[char]) -> Vec<ConstituentOrder> {
    let mut idx: Vec<usize> = (0..alphabet.len()).collect();
    let mut out = Vec::new();
    loop {
        out.push(ConstituentOrder(idx.iter().map(|&i| alphabet[i]).collect()));
        let Some(i) = (0..idx.len().saturating_sub(1))
            .rev()
            .find(|&i| idx[i] < idx[i + 1])
        else {
            break;
        };
        let j = (i + 1..idx.len()).rev().find(|&j| idx[j] > idx[i]).unwrap();
        idx.swap(i, j);
        idx[i + 1..].reverse();
    }
    out
}

/// Builds the swap-distance-1 graph over every order of `alphabet`, with
/// optional frequency annotations keyed by order string.
///
/// For more than three symbols the graph is the adjacent-transposition graph
/// rather than a ring; check [`PermutationRing::is_ring`].
pub fn build_ring(
    alphabet: &[char],
    frequencies: Option<&BTreeMap<String, f64>>,
) -> Result<PermutationRing> {
    ConstituentOrder::new(alphabet.to_vec())?;
    if alphabet.len() < 2 {
        return Err(Error::domain("a ring needs at least two symbols"));
    }
    if alphabet.len() > 8 {
        return Err(Error::Resource {
            what: "permutation graph construction",
            cap: 8,
            n: alphabet.len(),
        });
    }
    let mut nodes = permutations(alphabet);
    let is_adj = |a: &ConstituentOrder, b: &ConstituentOrder| {
        swap_distance(a, b).map(|d| d == 1).unwrap_or(false)
    };

    let edges = if alphabet.len() == 3 {
        // walk the cycle: from the start, first swap the last pair
        let start = nodes[0].clone();
        let mut first = start.0.clone();
        first.swap(1, 2);
        let mut cycle = vec![start, ConstituentOrder(first)];
        while cycle.len() < nodes.len() {
            let last = cycle.last().unwrap();
            let prev = &cycle[cycle.len() - 2];
            let next = nodes
                .iter()
                .find(|c| *c != prev && is_adj(last, c))
                .expect("each order has two neighbours")
                .clone();
            cycle.push(next);
        }
        nodes = cycle;
        let m = nodes.len();
        (0..m).map(|i| (i, (i + 1) % m)).collect()
    } else {
        let mut edges = Vec::new();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if is_adj(&nodes[i], &nodes[j]) {
                    edges.push((i, j));
                }
            }
        }
        edges
    };

    let mut annotated = vec![None; nodes.len()];
    if let Some(freqs) = frequencies {
        for (key, &f) in freqs {
            let pos = nodes
                .iter()
                .position(|n| n.to_string() == *key)
                .ok_or_else(|| {
                    Error::domain(format!(
                        "frequency key {key:?} is not an order of the alphabet"
                    ))
                })?;
            annotated[pos] = Some(f);
        }
    }
    Ok(PermutationRing {
        nodes,
        edges,
        frequencies: annotated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> ConstituentOrder {
        s.parse().unwrap()
    }

    #[test]
    fn distances() {
        assert_eq!(swap_distance(&o("SOV"), &o("SVO")).unwrap(), 1);
        assert_eq!(swap_distance(&o("SVO"), &o("VOS")).unwrap(), 2);
        assert_eq!(swap_distance(&o("SOV"), &o("SOV")).unwrap(), 0);
        assert_eq!(swap_distance(&o("SOV"), &o("VOS")).unwrap(), 3);
        assert_eq!(swap_distance(&o("ABCDE"), &o("EDCBA")).unwrap(), 10);
        assert!(swap_distance(&o("SOV"), &o("SOX")).is_err());
        assert!(swap_distance(&o("SOV"), &o("SO")).is_err());
        assert!("SSV".parse::<ConstituentOrder>().is_err());
    }

    #[test]
    fn adjacency() {
        assert!(adjacent(&o("SOV"), &o("SVO")).unwrap());
        assert!(!adjacent(&o("SOV"), &o("VOS")).unwrap());
        assert!(!adjacent(&o("VSO"), &o("VSO")).unwrap());
    }

    #[test]
    fn sov_ring() {
        let ring = build_ring(&['S', 'O', 'V'], None).unwrap();
        let names: Vec<String> = ring.nodes().iter().map(|n| n.to_string()).collect();
        assert_eq!(names, ["SOV", "SVO", "VSO", "VOS", "OVS", "OSV"]);
        assert_eq!(ring.edges().len(), 6);
        assert!(ring.is_ring());
        assert!((0..6).all(|v| ring.degree(v) == 2));
    }

    #[test]
    fn two_symbols() {
        let ring = build_ring(&['A', 'B'], None).unwrap();
        assert_eq!(ring.nodes().len(), 2);
        assert_eq!(ring.edges(), &[(0, 1)]);
        assert!(!ring.is_ring());
    }

    #[test]
    fn four_symbols_is_not_a_ring() {
        let ring = build_ring(&['A', 'B', 'C', 'D'], None).unwrap();
        assert_eq!(ring.nodes().len(), 24);
        assert!((0..24).all(|v| ring.degree(v) == 3));
        assert!(!ring.is_ring());
    }

    #[test]
    fn annotations() {
        let mut f = BTreeMap::new();
        f.insert("SOV".to_string(), 10.0);
        f.insert("VSO".to_string(), 2.5);
        let ring = build_ring(&['S', 'O', 'V'], Some(&f)).unwrap();
        assert_eq!(ring.frequency(0), Some(10.0));
        assert_eq!(ring.frequency(2), Some(2.5));
        assert_eq!(ring.frequency(1), None);
        f.insert("SOX".to_string(), 1.0);
        assert!(build_ring(&['S', 'O', 'V'], Some(&f)).is_err());
        assert!(build_ring(&['S'], None).is_err());
        assert!(build_ring(&['S', 'S'], None).is_err());
    }

    #[test]
    fn layout_csv() {
        let ring = build_ring(&['S', 'O', 'V'], None).unwrap();
        let mut buf = Vec::new();
        ring.write_layout_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(
            text.starts_with("node,angle,frequency\nSOV,0,\nSVO,60,\n"),
            "{text}"
        );
    }
}
