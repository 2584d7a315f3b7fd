//! Finite partial orders: width, chain partitions, the Rado structure and
//! chain decompositions of sequence prefixes.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::relations::Containment;

/// Exhaustive antichain search is used up to this many elements.
pub const EXHAUSTIVE_LIMIT: usize = 25;
pub const MAX_ELEMENTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitePoset {
    labels: Vec<String>,
    le: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Checks reflexivity, antisymmetry and transitivity of `le`.
    pub fn new(labels: Vec<String>, le: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if le.len() != n || le.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(
                "order matrix does not match the element count".into(),
            ));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::budget("poset elements", n, MAX_ELEMENTS));
        }
        for a in 0..n {
            if !le[a][a] {
                return Err(Error::Invalid(format!("not reflexive at {}", labels[a])));
            }
            for b in 0..n {
                if a != b && le[a][b] && le[b][a] {
                    return Err(Error::Invalid(format!(
                        "not antisymmetric: {} and {}",
                        labels[a], labels[b]
                    )));
                }
                if !le[a][b] {
                    continue;
                }
                for c in 0..n {
                    if le[b][c] && !le[a][c] {
                        return Err(Error::Invalid(format!(
                            "not transitive: {} <= {} <= {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, le })
    }

    /// The reflexive-transitive closure of `pairs`, which must be
    /// antisymmetric.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("pair ({a}, {b}) out of range")));
            }
            le[a][b] = true;
        }
        close(&mut le);
        Self::new(labels, le)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le[a][b] || self.le[b][a]
    }

    pub fn is_antichain(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.comparable(a, b)))
    }

    pub fn is_chain(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Maximum antichain by branch and bound; small posets only.
    pub fn max_antichain(&self) -> Result<Vec<usize>> {
        let n = self.len();
        if n > EXHAUSTIVE_LIMIT {
            return Err(Error::budget(
                "exhaustive antichain search",
                n,
                EXHAUSTIVE_LIMIT,
            ));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        // incomparability masks
        let inc: Vec<u32> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && !self.comparable(a, b))
                    .fold(0u32, |m, b| m | (1 << b))
            })
            .collect();
        // branch on the least element of each antichain
        let best = (0..n)
            .into_par_iter()
            .map(|first| {
                let later = inc[first] & !((1u32 << (first + 1)) - 1);
                let mut best = 1u32 << first;
                grow(&inc, 1u32 << first, later, &mut best);
                best
            })
            .reduce_with(|a, b| {
                if b.count_ones() > a.count_ones() || (b.count_ones() == a.count_ones() && b < a) {
                    b
                } else {
                    a
                }
            })
            .unwrap_or(0);
        Ok((0..n).filter(|&i| best & (1 << i) != 0).collect())
    }

    /// `len - maximum matching` in the strict comparability bipartite graph.
    pub fn width_by_matching(&self) -> usize {
        self.len() - matching(self).iter().filter(|m| m.is_some()).count()
    }

    pub fn width(&self) -> usize {
        if self.len() <= EXHAUSTIVE_LIMIT {
            self.max_antichain().map(|a| a.len()).unwrap_or(0)
        } else {
            self.width_by_matching()
        }
    }

    /// A partition into `width` chains, each listed bottom-up.
    pub fn chain_partition(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let next = matching(self);
        let mut has_pred = vec![false; n];
        for s in next.iter().flatten() {
            has_pred[*s] = true;
        }
        let mut chains = Vec::new();
        for start in 0..n {
            if has_pred[start] {
                continue;
            }
            let mut chain = vec![start];
            let mut cur = start;
            while let Some(s) = next[cur] {
                chain.push(s);
                cur = s;
            }
            chains.push(chain);
        }
        chains
    }

    /// `elem` lines followed by `le` lines for each strict relation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            writeln!(s, "elem {l}").unwrap();
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.le[a][b] {
                    writeln!(s, "le {} {}", self.labels[a], self.labels[b]).unwrap();
                }
            }
        }
        s
    }

    /// Parses the text format; the `le` pairs are closed reflexively and
    /// transitively.
    pub fn parse(input: &str) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut pairs = Vec::new();
        for (i, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["elem", l] => {
                    if labels.iter().any(|x| x == l) {
                        return Err(err(format!("duplicate element `{l}`")));
                    }
                    labels.push(l.to_string());
                }
                ["le", a, b] => {
                    let find = |x: &str| {
                        labels
                            .iter()
                            .position(|l| l == x)
                            .ok_or_else(|| err(format!("unknown element `{x}`")))
                    };
                    pairs.push((find(a)?, find(b)?));
                }
                _ => return Err(err(format!("unexpected line `{line}`"))),
            }
        }
        Self::from_pairs(labels, &pairs)
    }
}

fn close(le: &mut [Vec<bool>]) {
    let n = le.len();
    for k in 0..n {
        for a in 0..n {
            if le[a][k] {
                for b in 0..n {
                    if le[k][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
    }
}

fn grow(inc: &[u32], current: u32, cand: u32, best: &mut u32) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    if current.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u32 << v;
    grow(inc, current | bit, cand & inc[v], best);
    grow(inc, current, cand & !bit, best);
}

/// Successor of each element in a maximum matching of `a < b` pairs.
fn matching(p: &FinitePoset) -> Vec<Option<usize>> {
    let n = p.len();
    let mut succ_of: Vec<Option<usize>> = vec![None; n];
    let mut pred_of: Vec<Option<usize>> = vec![None; n];
    fn augment(
        p: &FinitePoset,
        a: usize,
        seen: &mut [bool],
        succ_of: &mut [Option<usize>],
        pred_of: &mut [Option<usize>],
    ) -> bool {
        for b in 0..p.len() {
            if a == b || !p.le(a, b) || seen[b] {
                continue;
            }
            seen[b] = true;
            let free = match pred_of[b] {
                None => true,
                Some(other) => augment(p, other, seen, succ_of, pred_of),
            };
            if free {
                succ_of[a] = Some(b);
                pred_of[b] = Some(a);
                return true;
            }
        }
        false
    }
    for a in 0..n {
        let mut seen = vec![false; n];
        augment(p, a, &mut seen, &mut succ_of, &mut pred_of);
    }
    succ_of
}

/// A pair `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RadoElement {
    pub i: usize,
    pub j: usize,
}

impl RadoElement {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i >= j {
            return Err(Error::Invalid(format!(
                "rado element needs i < j, got ({i}, {j})"
            )));
        }
        Ok(RadoElement { i, j })
    }
}

pub fn rado_order(a: RadoElement, b: RadoElement) -> bool {
    (a.i == b.i && a.j <= b.j) || a.j < b.i
}

pub fn rado_elements(n: usize) -> Vec<RadoElement> {
    let mut out = Vec::new();
    for j in 1..=n {
        for i in 0..j {
            out.push(RadoElement { i, j });
        }
    }
    out.sort();
    out
}

/// All pairs `0 <= i < j <= n` under the Rado order.
pub fn rado_truncation(n: usize) -> Result<FinitePoset> {
    if n < 2 {
        return Err(Error::InvalidIndex {
            what: "rado truncation".into(),
            index: n,
            min: 2,
        });
    }
    let elems = rado_elements(n);
    let labels = elems.iter().map(|e| format!("{},{}", e.i, e.j)).collect();
    let le = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| rado_order(a, b)).collect())
        .collect();
    FinitePoset::new(labels, le)
}

/// `a <=* b`: every element of `b` lies above some element of `a`.
pub fn star_le<T: Copy>(le: impl Fn(T, T) -> bool, a: &[T], b: &[T]) -> bool {
    b.iter().all(|&y| a.iter().any(|&x| le(x, y)))
}

/// Whether the sets are pairwise incomparable under the Rado `<=*`.
pub fn rado_family_incomparable(sets: &[Vec<RadoElement>]) -> bool {
    sets.iter().enumerate().all(|(x, a)| {
        sets.iter()
            .enumerate()
            .all(|(y, b)| x == y || !star_le(rado_order, a, b))
    })
}

/// Column `j` of the truncation: `{(i, j) : i < j}`.
pub fn rado_column(j: usize) -> Vec<RadoElement> {
    (0..j).map(|i| RadoElement { i, j }).collect()
}

/// Row `i` of the truncation at `n`: `{(i, j) : i < j <= n}`.
pub fn rado_row(i: usize, n: usize) -> Vec<RadoElement> {
    (i + 1..=n).map(|j| RadoElement { i, j }).collect()
}

/// The last `m` columns of the truncation at `n` are pairwise
/// incomparable under `<=*`.
pub fn rado_star_antichain_witness(m: usize, n: usize) -> Result<bool> {
    if m >= n {
        return Err(Error::Invalid(format!(
            "witness needs m < n, got m = {m}, n = {n}"
        )));
    }
    let sets: Vec<Vec<RadoElement>> = (n - m + 1..=n).map(rado_column).collect();
    Ok(rado_family_incomparable(&sets))
}

/// A sequence prefix as a poset: one element per equivalence class.
#[derive(Debug, Clone, Serialize)]
pub struct PrefixPoset {
    pub poset: FinitePoset,
    /// Prefix positions in each class, ascending.
    pub classes: Vec<Vec<usize>>,
}

pub fn prefix_poset(prefix: &[MultiGraph], c: &Containment) -> Result<PrefixPoset> {
    let n = prefix.len();
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            le[a][b] = a == b || c.contains(&prefix[a], &prefix[b])?;
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..n).filter(|&b| le[a][b] && le[b][a]).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    let q: Vec<Vec<bool>> = classes
        .iter()
        .map(|x| classes.iter().map(|y| le[x[0]][y[0]]).collect())
        .collect();
    let labels = classes
        .iter()
        .map(|m| {
            m.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("=")
        })
        .collect();
    Ok(PrefixPoset {
        poset: FinitePoset::new(labels, q)?,
        classes,
    })
}

/// Width of a sequence prefix after identifying equivalent members.
pub fn sequence_width(prefix: &[MultiGraph], c: &Containment) -> Result<usize> {
    Ok(prefix_poset(prefix, c)?.poset.width())
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainInfo {
    /// Prefix positions, ascending.
    pub members: Vec<usize>,
    /// Heuristic: the chain's last member lies in the final quarter.
    pub growing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Rationalization {
    pub chains: Vec<ChainInfo>,
    /// Growing chains minimal under "every member lies below a member of
    /// the other chain".
    pub minimal_growing: Vec<usize>,
}

pub fn rationalize(prefix: &[MultiGraph], c: &Containment) -> Result<Rationalization> {
    let pp = prefix_poset(prefix, c)?;
    let len = prefix.len();
    let mut chains: Vec<ChainInfo> = pp
        .poset
        .chain_partition()
        .into_iter()
        .map(|nodes| {
            let mut members: Vec<usize> =
                nodes.iter().flat_map(|&x| pp.classes[x].clone()).collect();
            members.sort_unstable();
            let last = *members.last().expect("chains are non-empty");
            ChainInfo {
                members,
                growing: 4 * last >= 3 * len.saturating_sub(1),
            }
        })
        .collect();
    chains.sort_by_key(|ch| ch.members[0]);
    let class_of = |i: usize| {
        pp.classes
            .iter()
            .position(|m| m.contains(&i))
            .expect("covered")
    };
    let below = |a: &ChainInfo, b: &ChainInfo| {
        a.members.iter().all(|&x| {
            b.members
                .iter()
                .any(|&y| pp.poset.le(class_of(x), class_of(y)))
        })
    };
    let growing: Vec<usize> = (0..chains.len()).filter(|&i| chains[i].growing).collect();
    let minimal_growing = growing
        .iter()
        .copied()
        .filter(|&a| {
            !growing
                .iter()
                .any(|&b| b != a && below(&chains[b], &chains[a]) && !below(&chains[a], &chains[b]))
        })
        .collect();
    Ok(Rationalization {
        chains,
        minimal_growing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn rado_comparisons() {
        let e = |i, j| RadoElement::new(i, j).unwrap();
        assert!(rado_order(e(1, 2), e(1, 5)));
        assert!(rado_order(e(1, 2), e(3, 4)));
        assert!(!rado_order(e(1, 3), e(2, 3)));
        assert!(!rado_order(e(2, 3), e(1, 3)));
        assert!(RadoElement::new(3, 3).is_err());
    }

    #[test]
    fn small_truncations() {
        let p = rado_truncation(2).unwrap();
        assert_eq!(p.labels(), ["0,1", "0,2", "1,2"]);
        assert!(rado_truncation(1).is_err());
    }

    #[test]
    fn diamond_chain_antichain() {
        let d = FinitePoset::from_pairs(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(d.width(), 2);
        assert_eq!(d.chain_partition().len(), 2);
        let c = FinitePoset::from_pairs(labels(5), &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!((c.width(), c.chain_partition().len()), (1, 1));
        let a = FinitePoset::from_pairs(labels(4), &[]).unwrap();
        assert_eq!(a.width(), 4);
        assert!(a.chain_partition().iter().all(|ch| ch.len() == 1));
    }

    #[test]
    fn axiom_violations() {
        assert!(FinitePoset::from_pairs(labels(2), &[(0, 1), (1, 0)]).is_err());
        let mut le = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(FinitePoset::new(labels(3), le.clone()).is_err());
        le[0][2] = true;
        assert!(FinitePoset::new(labels(3), le).is_ok());
        assert!(FinitePoset::new(labels(2), vec![vec![false, false], vec![false, true]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = rado_truncation(3).unwrap();
        assert_eq!(FinitePoset::parse(&p.to_text()).unwrap(), p);
        assert!(FinitePoset::parse("elem a\nle a b\n").is_err());
        assert!(FinitePoset::parse("elem a\nelem a\n").is_err());
        assert!(FinitePoset::parse("node a\n").is_err());
    }

    #[test]
    fn witness_edges() {
        assert!(rado_star_antichain_witness(1, 2).unwrap());
        assert!(rado_star_antichain_witness(3, 3).is_err());
    }
}
