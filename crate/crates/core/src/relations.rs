//! The four containment quasi-orders and set-level operators built on them.
//!
//! Every test works on bitmask adjacency (`u128`), so hosts are limited to
//! 128 vertices regardless of the configured budget.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form, sort_enum_order, CanonicalForm, Mode, MultiGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Subgraph,
    TopologicalMinor,
    Minor,
    Immersion,
}

pub const ALL_RELATIONS: [Relation; 4] = [
    Relation::Subgraph,
    Relation::TopologicalMinor,
    Relation::Minor,
    Relation::Immersion,
];

impl Relation {
    /// Minor-type relations compare simple graphs, immersion compares
    /// multigraphs.
    pub fn default_mode(self) -> Mode {
        match self {
            Relation::Immersion => Mode::Multigraph,
            _ => Mode::Simple,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Relation::Subgraph => "subgraph",
            Relation::TopologicalMinor => "topological_minor",
            Relation::Minor => "minor",
            Relation::Immersion => "immersion",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "subgraph" | "sub" => Ok(Relation::Subgraph),
            "topological_minor" | "topminor" | "tp" => Ok(Relation::TopologicalMinor),
            "minor" | "m" => Ok(Relation::Minor),
            "immersion" | "i" => Ok(Relation::Immersion),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Hard caps for a single containment test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_pattern: usize,
    pub max_host: usize,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pattern: 8,
            max_host: 16,
            time_limit: None,
        }
    }
}

impl Budget {
    /// Only the bitmask width limits the host.
    pub fn unlimited() -> Self {
        Budget {
            max_pattern: usize::MAX,
            max_host: 128,
            time_limit: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }
}

/// A configured containment test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Containment {
    pub relation: Relation,
    pub mode: Mode,
    pub budget: Budget,
}

impl Containment {
    pub fn new(relation: Relation) -> Self {
        Containment {
            relation,
            mode: relation.default_mode(),
            budget: Budget::default(),
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Whether `h` is contained in `g`.
    pub fn contains(&self, h: &MultiGraph, g: &MultiGraph) -> Result<bool> {
        let h = h.in_mode(self.mode);
        let g = g.in_mode(self.mode);
        if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
            return Ok(false);
        }
        if h.vertex_count() > self.budget.max_pattern {
            return Err(Error::budget(
                "pattern vertex count",
                h.vertex_count(),
                self.budget.max_pattern,
            ));
        }
        let host_limit = self.budget.max_host.min(128);
        if g.vertex_count() > host_limit {
            return Err(Error::budget(
                "host vertex count",
                g.vertex_count(),
                host_limit,
            ));
        }
        if h.vertex_count() == 0 {
            return Ok(true);
        }
        let clock = Clock::new(self.budget.time_limit);
        match self.relation {
            Relation::Subgraph => subgraph(&h, &g, &clock),
            Relation::TopologicalMinor => {
                if subgraph(&h, &g, &clock)? {
                    return Ok(true);
                }
                topological_minor(&h, &g, &clock)
            }
            Relation::Minor => {
                if subgraph(&h, &g, &clock)? {
                    return Ok(true);
                }
                minor(&h, &g, self.mode, &clock)
            }
            Relation::Immersion => {
                if subgraph(&h, &g, &clock)? {
                    return Ok(true);
                }
                immersion(&h, &g, &clock)
            }
        }
    }
}

/// `h <= g` under `relation` with its default mode and budget.
pub fn contains(relation: Relation, h: &MultiGraph, g: &MultiGraph) -> Result<bool> {
    Containment::new(relation).contains(h, g)
}

struct Clock {
    deadline: Option<Instant>,
    ticks: std::cell::Cell<u32>,
}

impl Clock {
    fn new(limit: Option<Duration>) -> Self {
        Clock {
            deadline: limit.map(|d| Instant::now() + d),
            ticks: std::cell::Cell::new(0),
        }
    }

    fn tick(&self) -> Result<()> {
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout("containment search"));
                }
            }
        }
        Ok(())
    }
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn adjacency_masks(g: &MultiGraph) -> Vec<u128> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).fold(0u128, |acc, (u, _)| acc | bit(u)))
        .collect()
}

/// Pattern vertices in search order: larger components first, each started
/// at a vertex of maximum degree and grown by most placed neighbours.
/// Isolated vertices are returned separately.
fn pattern_order(h: &MultiGraph) -> (Vec<usize>, usize) {
    let mut comps = h.components();
    comps.retain(|c| c.len() > 1);
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut order = Vec::new();
    let mut placed = vec![false; h.vertex_count()];
    for comp in comps {
        let start = *comp
            .iter()
            .max_by(|&&a, &&b| h.degree(a).cmp(&h.degree(b)).then(b.cmp(&a)))
            .expect("non-empty component");
        placed[start] = true;
        order.push(start);
        for _ in 1..comp.len() {
            let next = *comp
                .iter()
                .filter(|&&v| !placed[v])
                .max_by(|&&a, &&b| {
                    let pa = h.neighbors(a).filter(|&(u, _)| placed[u]).count();
                    let pb = h.neighbors(b).filter(|&(u, _)| placed[u]).count();
                    pa.cmp(&pb)
                        .then(h.degree(a).cmp(&h.degree(b)))
                        .then(b.cmp(&a))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
    }
    (order, h.isolated_count())
}

// ---------------------------------------------------------------------------
// subgraph

fn subgraph(h: &MultiGraph, g: &MultiGraph, clock: &Clock) -> Result<bool> {
    let (order, isolated) = pattern_order(h);
    let gadj = adjacency_masks(g);
    let mut map = vec![usize::MAX; h.vertex_count()];
    let mut used = 0u128;
    let free_needed = isolated;
    fn rec(
        i: usize,
        order: &[usize],
        h: &MultiGraph,
        g: &MultiGraph,
        gadj: &[u128],
        map: &mut [usize],
        used: &mut u128,
        free_needed: usize,
        clock: &Clock,
    ) -> Result<bool> {
        clock.tick()?;
        if i == order.len() {
            let free = g.vertex_count() - used.count_ones() as usize;
            return Ok(free >= free_needed);
        }
        let u = order[i];
        let anchor = h
            .neighbors(u)
            .map(|(w, _)| w)
            .find(|&w| map[w] != usize::MAX);
        let cands: u128 = match anchor {
            Some(w) => gadj[map[w]] & !*used,
            None => {
                let all = if g.vertex_count() == 128 {
                    u128::MAX
                } else {
                    bit(g.vertex_count()) - 1
                };
                all & !*used
            }
        };
        for x in bits(cands) {
            if g.degree(x) < h.degree(u) || g.edge_degree(x) < h.edge_degree(u) {
                continue;
            }
            let fits = h
                .neighbors(u)
                .filter(|&(w, _)| map[w] != usize::MAX)
                .all(|(w, m)| g.multiplicity(x, map[w]) >= m);
            if !fits {
                continue;
            }
            map[u] = x;
            *used |= bit(x);
            if rec(i + 1, order, h, g, gadj, map, used, free_needed, clock)? {
                return Ok(true);
            }
            *used &= !bit(x);
            map[u] = usize::MAX;
        }
        Ok(false)
    }
    rec(
        0,
        &order,
        h,
        g,
        &gadj,
        &mut map,
        &mut used,
        free_needed,
        clock,
    )
}

// ---------------------------------------------------------------------------
// minor

/// Removes host vertices that no minimal model can use.
fn reduce_host(h: &MultiGraph, g: &MultiGraph, mode: Mode) -> MultiGraph {
    let min_deg = (0..h.vertex_count())
        .map(|v| h.degree(v))
        .min()
        .unwrap_or(0);
    let mut g = g.clone();
    if min_deg < 2 {
        return g;
    }
    loop {
        if let Some(x) = (0..g.vertex_count()).find(|&x| g.degree(x) <= 1) {
            g = g.delete_vertex(x).expect("vertex in range");
            continue;
        }
        if min_deg >= 3 && mode == Mode::Simple {
            if let Some(x) = (0..g.vertex_count()).find(|&x| g.degree(x) == 2) {
                let a = g.neighbors(x).next().expect("degree two").0;
                g = g.contract_edge(a, x, Mode::Simple).expect("edge present");
                continue;
            }
        }
        return g;
    }
}

struct MinorSearch<'a> {
    h: &'a MultiGraph,
    g: MultiGraph,
    mode: Mode,
    gadj: Vec<u128>,
    order: Vec<usize>,
    pos: Vec<usize>,
    isolated: usize,
    branch: Vec<u128>,
    clock: &'a Clock,
}

fn minor(h: &MultiGraph, g: &MultiGraph, mode: Mode, clock: &Clock) -> Result<bool> {
    // both properties survive deletion and contraction
    if g.max_degree() <= 2 && h.max_degree() > 2 {
        return Ok(false);
    }
    if g.is_forest() && !h.is_forest() {
        return Ok(false);
    }
    let g = reduce_host(h, g, mode);
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    let (order, isolated) = pattern_order(h);
    let mut pos = vec![usize::MAX; h.vertex_count()];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    let gadj = adjacency_masks(&g);
    let all = if g.vertex_count() == 128 {
        u128::MAX
    } else {
        bit(g.vertex_count()) - 1
    };
    let mut s = MinorSearch {
        h,
        gadj,
        mode,
        branch: vec![0; order.len()],
        order,
        pos,
        isolated,
        g,
        clock,
    };
    s.place(0, all)
}

impl MinorSearch<'_> {
    fn edges_between(&self, a: u128, b: u128) -> u32 {
        let mut total = 0;
        for x in bits(a) {
            for y in bits(b & self.gadj[x]) {
                total += self.g.multiplicity(x, y);
            }
        }
        total
    }

    fn connected(&self, s: u128) -> bool {
        if s == 0 {
            return true;
        }
        let mut seen = s & s.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in bits(frontier) {
                next |= self.gadj[v] & s;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == s
    }

    fn non_cut_count(&self, s: u128) -> usize {
        bits(s).filter(|&x| self.connected(s & !bit(x))).count()
    }

    /// Need for pattern vertex `u`: distinct neighbours in simple mode,
    /// incident edge units in multigraph mode.
    fn need(&self, u: usize) -> usize {
        match self.mode {
            Mode::Simple => self.h.degree(u),
            Mode::Multigraph => self.h.edge_degree(u),
        }
    }

    fn components(&self, mut free: u128) -> Vec<u128> {
        let mut out = Vec::new();
        while free != 0 {
            let start = free & free.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u128;
                for v in bits(frontier) {
                    next |= self.gadj[v] & free;
                }
                frontier = next & !comp;
                comp |= next;
            }
            out.push(comp);
            free &= !comp;
        }
        out
    }

    fn neighbourhood(&self, s: u128) -> u128 {
        bits(s).fold(0u128, |acc, v| acc | self.gadj[v]) & !s
    }

    /// Every later pattern vertex must still fit in some free component
    /// adjacent to all of its placed neighbours.
    fn feasible(&self, i: usize, free: u128) -> bool {
        let remaining = self.order.len() - i;
        if (free.count_ones() as usize) < remaining + self.isolated {
            return false;
        }
        let comps = self.components(free);
        for &u in &self.order[i..] {
            let placed: Vec<u128> = self
                .h
                .neighbors(u)
                .filter(|&(w, _)| self.pos[w] < i)
                .map(|(w, _)| self.neighbourhood(self.branch[self.pos[w]]))
                .collect();
            if placed.is_empty() {
                continue;
            }
            if !comps.iter().any(|&c| placed.iter().all(|&nb| nb & c != 0)) {
                return false;
            }
        }
        true
    }

    fn place(&mut self, i: usize, free: u128) -> Result<bool> {
        self.clock.tick()?;
        if i == self.order.len() {
            return Ok(free.count_ones() as usize >= self.isolated);
        }
        let u = self.order[i];
        let earlier: Vec<(usize, u32)> = self
            .h
            .neighbors(u)
            .filter(|&(w, _)| self.pos[w] < i)
            .map(|(w, m)| (self.pos[w], m))
            .collect();
        let later_needed = self.order.len() - i - 1 + self.isolated;
        let limit = (free.count_ones() as usize).saturating_sub(later_needed);
        if limit == 0 {
            return Ok(false);
        }
        let anchors: u128 = match earlier.first() {
            Some(&(j, _)) => self.neighbourhood(self.branch[j]) & free,
            None => free,
        };
        let mut excluded = 0u128;
        for r in bits(anchors) {
            let cand = self.gadj[r] & free & !excluded;
            let found = self.grow(i, u, &earlier, free, bit(r), cand, excluded | bit(r), limit)?;
            if found {
                return Ok(true);
            }
            excluded |= bit(r);
        }
        Ok(false)
    }

    /// Enumerates connected sets `s` of free vertices (each once) and tries
    /// each as the branch set of `u`.
    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        i: usize,
        u: usize,
        earlier: &[(usize, u32)],
        free: u128,
        s: u128,
        mut cand: u128,
        mut excluded: u128,
        limit: usize,
    ) -> Result<bool> {
        self.clock.tick()?;
        if self.try_set(i, u, earlier, free, s)? {
            return Ok(true);
        }
        if s.count_ones() as usize >= limit {
            return Ok(false);
        }
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= !bit(v);
            excluded |= bit(v);
            let s2 = s | bit(v);
            let next = cand | (self.gadj[v] & free & !s2 & !excluded);
            if self.grow(i, u, earlier, free, s2, next, excluded, limit)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn try_set(
        &mut self,
        i: usize,
        u: usize,
        earlier: &[(usize, u32)],
        free: u128,
        s: u128,
    ) -> Result<bool> {
        if s.count_ones() >= 2 && self.non_cut_count(s) > self.need(u) {
            return Ok(false);
        }
        for &(j, m) in earlier {
            let b = self.branch[j];
            let ok = match self.mode {
                Mode::Simple => self.neighbourhood(s) & b != 0,
                Mode::Multigraph => self.edges_between(s, b) >= m,
            };
            if !ok {
                return Ok(false);
            }
        }
        let rest = free & !s;
        self.branch[i] = s;
        if !self.feasible(i + 1, rest) {
            return Ok(false);
        }
        self.place(i + 1, rest)
    }
}

// ---------------------------------------------------------------------------
// topological minor

struct TopSearch<'a> {
    h: &'a MultiGraph,
    g: &'a MultiGraph,
    gadj: Vec<u128>,
    order: Vec<usize>,
    isolated: usize,
    map: Vec<usize>,
    /// Vertices used as branch vertices or path interiors.
    used: u128,
    /// Remaining capacity of each host pair for direct edges.
    cap: Vec<u32>,
    clock: &'a Clock,
}

fn topological_minor(h: &MultiGraph, g: &MultiGraph, clock: &Clock) -> Result<bool> {
    let (order, isolated) = pattern_order(h);
    let n = g.vertex_count();
    let mut cap = vec![0u32; n * n];
    for (a, b, m) in g.edges() {
        cap[a * n + b] = m;
        cap[b * n + a] = m;
    }
    let mut s = TopSearch {
        h,
        g,
        gadj: adjacency_masks(g),
        order,
        isolated,
        map: vec![usize::MAX; h.vertex_count()],
        used: 0,
        cap,
        clock,
    };
    s.place(0)
}

impl TopSearch<'_> {
    fn place(&mut self, i: usize) -> Result<bool> {
        self.clock.tick()?;
        let n = self.g.vertex_count();
        if i == self.order.len() {
            return Ok(n - self.used.count_ones() as usize >= self.isolated);
        }
        let u = self.order[i];
        let targets: Vec<(usize, u32)> = self
            .h
            .neighbors(u)
            .filter(|&(w, _)| self.map[w] != usize::MAX)
            .map(|(w, m)| (self.map[w], m))
            .collect();
        for x in 0..n {
            if self.used & bit(x) != 0
                || self.g.degree(x) < self.h.degree(u)
                || self.g.edge_degree(x) < self.h.edge_degree(u)
            {
                continue;
            }
            self.map[u] = x;
            self.used |= bit(x);
            if self.route_pairs(i, x, &targets, 0)? {
                return Ok(true);
            }
            self.used &= !bit(x);
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }

    fn route_pairs(
        &mut self,
        i: usize,
        x: usize,
        targets: &[(usize, u32)],
        k: usize,
    ) -> Result<bool> {
        if k == targets.len() {
            return self.place(i + 1);
        }
        let (y, m) = targets[k];
        let paths = self.paths(x, y);
        self.route_units(i, x, targets, k, &paths, m, 0)
    }

    /// Chooses `left` internally disjoint paths for one pair, in
    /// nondecreasing index order, from the paths available before the pair
    /// was routed.
    #[allow(clippy::too_many_arguments)]
    fn route_units(
        &mut self,
        i: usize,
        x: usize,
        targets: &[(usize, u32)],
        k: usize,
        paths: &[Vec<usize>],
        left: u32,
        from: usize,
    ) -> Result<bool> {
        if left == 0 {
            return self.route_pairs(i, x, targets, k + 1);
        }
        let n = self.g.vertex_count();
        let y = targets[k].0;
        for (idx, p) in paths.iter().enumerate().skip(from) {
            self.clock.tick()?;
            if p.len() == 2 {
                if self.cap[x * n + y] == 0 {
                    continue;
                }
                self.cap[x * n + y] -= 1;
                self.cap[y * n + x] -= 1;
                let ok = self.route_units(i, x, targets, k, paths, left - 1, idx)?;
                self.cap[x * n + y] += 1;
                self.cap[y * n + x] += 1;
                if ok {
                    return Ok(true);
                }
            } else {
                let interior = p[1..p.len() - 1].iter().fold(0u128, |acc, &v| acc | bit(v));
                if interior & self.used != 0 {
                    continue;
                }
                self.used |= interior;
                let ok = self.route_units(i, x, targets, k, paths, left - 1, idx + 1)?;
                self.used &= !interior;
                if ok {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Simple paths from `x` to `y` whose interiors avoid used vertices.
    fn paths(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = vec![x];
        fn dfs(
            s: &TopSearch<'_>,
            y: usize,
            path: &mut Vec<usize>,
            on: u128,
            out: &mut Vec<Vec<usize>>,
        ) {
            let v = *path.last().expect("non-empty path");
            for w in bits(s.gadj[v]) {
                if w == y {
                    let mut p = path.clone();
                    p.push(y);
                    out.push(p);
                } else if on & bit(w) == 0 && s.used & bit(w) == 0 {
                    path.push(w);
                    dfs(s, y, path, on | bit(w), out);
                    path.pop();
                }
            }
        }
        dfs(self, y, &mut path, bit(x), &mut out);
        out.sort_by_key(|p| p.len());
        out
    }
}

// ---------------------------------------------------------------------------
// immersion

struct ImmersionSearch<'a> {
    h: &'a MultiGraph,
    g: &'a MultiGraph,
    order: Vec<usize>,
    isolated: usize,
    map: Vec<usize>,
    used: u128,
    cap: Vec<u32>,
    clock: &'a Clock,
}

/// Units of flow from `s` to `t` (at most `want`) in the multigraph given by
/// a capacity matrix, by shortest augmenting paths.
fn max_flow(cap: &[u32], n: usize, s: usize, t: usize, want: u32) -> u32 {
    let mut res = cap.to_vec();
    let mut flow = 0;
    while flow < want {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for w in 0..n {
                if prev[w] == usize::MAX && res[v * n + w] > 0 {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut w = t;
        while w != s {
            let v = prev[w];
            res[v * n + w] -= 1;
            res[w * n + v] += 1;
            w = v;
        }
        flow += 1;
    }
    flow
}

/// Exact answers by flow for patterns whose edges all meet one vertex:
/// a single parallel class, or a star with simple edges. Isolated pattern
/// vertices are free because the host has at least as many vertices.
fn immersion_by_flow(h: &MultiGraph, g: &MultiGraph, clock: &Clock) -> Result<Option<bool>> {
    let edges: Vec<(usize, usize, u32)> = h.edges().collect();
    let n = g.vertex_count();
    let mut cap = vec![0u32; n * n];
    for (a, b, m) in g.edges() {
        cap[a * n + b] = m;
        cap[b * n + a] = m;
    }
    if let [(_, _, k)] = edges.as_slice() {
        for x in 0..n {
            for y in x + 1..n {
                clock.tick()?;
                if max_flow(&cap, n, x, y, *k) >= *k {
                    return Ok(Some(true));
                }
            }
        }
        return Ok(Some(false));
    }
    let hub = (0..h.vertex_count()).find(|&c| edges.iter().all(|&(a, b, _)| a == c || b == c));
    let Some(hub) = hub else { return Ok(None) };
    if edges.iter().any(|e| e.2 > 1) {
        return Ok(None);
    }
    let k = edges.len() as u32;
    // extra sink vertex fed by every host vertex with capacity one
    let m = n + 1;
    let mut ext = vec![0u32; m * m];
    for a in 0..n {
        for b in 0..n {
            ext[a * m + b] = cap[a * n + b];
        }
    }
    for x in 0..n {
        clock.tick()?;
        if g.edge_degree(x) < h.edge_degree(hub) {
            continue;
        }
        let mut e = ext.clone();
        for y in 0..n {
            if y != x {
                e[y * m + n] = 1;
            }
        }
        if max_flow(&e, m, x, n, k) >= k {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

fn immersion(h: &MultiGraph, g: &MultiGraph, clock: &Clock) -> Result<bool> {
    if let Some(answer) = immersion_by_flow(h, g, clock)? {
        return Ok(answer);
    }
    let (order, isolated) = pattern_order(h);
    let n = g.vertex_count();
    let mut cap = vec![0u32; n * n];
    for (a, b, m) in g.edges() {
        cap[a * n + b] = m;
        cap[b * n + a] = m;
    }
    let mut s = ImmersionSearch {
        h,
        g,
        order,
        isolated,
        map: vec![usize::MAX; h.vertex_count()],
        used: 0,
        cap,
        clock,
    };
    s.place(0)
}

impl ImmersionSearch<'_> {
    fn residual_degree(&self, x: usize) -> usize {
        let n = self.g.vertex_count();
        (0..n).map(|y| self.cap[x * n + y] as usize).sum()
    }

    fn place(&mut self, i: usize) -> Result<bool> {
        self.clock.tick()?;
        let n = self.g.vertex_count();
        if i == self.order.len() {
            return Ok(n - self.used.count_ones() as usize >= self.isolated);
        }
        let u = self.order[i];
        let targets: Vec<(usize, u32)> = self
            .h
            .neighbors(u)
            .filter(|&(w, _)| self.map[w] != usize::MAX)
            .map(|(w, m)| (self.map[w], m))
            .collect();
        for x in 0..n {
            if self.used & bit(x) != 0 || self.residual_degree(x) < self.h.edge_degree(u) {
                continue;
            }
            self.map[u] = x;
            self.used |= bit(x);
            if self.route_pairs(i, x, &targets, 0)? {
                return Ok(true);
            }
            self.used &= !bit(x);
            self.map[u] = usize::MAX;
        }
        Ok(false)
    }

    fn route_pairs(
        &mut self,
        i: usize,
        x: usize,
        targets: &[(usize, u32)],
        k: usize,
    ) -> Result<bool> {
        if k == targets.len() {
            return self.place(i + 1);
        }
        let (y, m) = targets[k];
        let paths = self.paths(x, y);
        self.route_units(i, x, targets, k, &paths, m, 0)
    }

    /// Chooses `left` paths for one pair as a multiset (nondecreasing
    /// indices) from the paths available before the pair was routed.
    #[allow(clippy::too_many_arguments)]
    fn route_units(
        &mut self,
        i: usize,
        x: usize,
        targets: &[(usize, u32)],
        k: usize,
        paths: &[Vec<usize>],
        left: u32,
        from: usize,
    ) -> Result<bool> {
        if left == 0 {
            return self.route_pairs(i, x, targets, k + 1);
        }
        let n = self.g.vertex_count();
        for (idx, p) in paths.iter().enumerate().skip(from) {
            self.clock.tick()?;
            if p.windows(2).any(|w| self.cap[w[0] * n + w[1]] == 0) {
                continue;
            }
            for w in p.windows(2) {
                self.cap[w[0] * n + w[1]] -= 1;
                self.cap[w[1] * n + w[0]] -= 1;
            }
            let ok = self.route_units(i, x, targets, k, paths, left - 1, idx)?;
            for w in p.windows(2) {
                self.cap[w[0] * n + w[1]] += 1;
                self.cap[w[1] * n + w[0]] += 1;
            }
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Simple paths from `x` to `y` over pairs with remaining capacity.
    fn paths(&self, x: usize, y: usize) -> Vec<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut out = Vec::new();
        let mut path = vec![x];
        fn dfs(
            s: &ImmersionSearch<'_>,
            n: usize,
            y: usize,
            path: &mut Vec<usize>,
            on: u128,
            out: &mut Vec<Vec<usize>>,
        ) {
            let v = *path.last().expect("non-empty path");
            for w in 0..n {
                if s.cap[v * n + w] == 0 || on & bit(w) != 0 {
                    continue;
                }
                path.push(w);
                if w == y {
                    out.push(path.clone());
                } else {
                    dfs(s, n, y, path, on | bit(w), out);
                }
                path.pop();
            }
        }
        dfs(self, n, y, &mut path, bit(x), &mut out);
        out.sort_by_key(|p| p.len());
        out
    }
}

/// Reference immersion test straight from the lifting definition: search
/// every graph reachable from `g` by vertex deletions, edge-unit deletions
/// and liftings. Exponential; meant for graphs on a handful of vertices.
pub fn contains_by_lifting(h: &MultiGraph, g: &MultiGraph) -> bool {
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return false;
    }
    let target = canonical_form(h);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back(g.clone());
    while let Some(x) = queue.pop_front() {
        if x.vertex_count() == h.vertex_count()
            && x.edge_count() == h.edge_count()
            && canonical_form(&x) == target
        {
            return true;
        }
        for y in x.single_step_reductions(false, Mode::Multigraph) {
            if y.vertex_count() < h.vertex_count() || y.edge_count() < h.edge_count() {
                continue;
            }
            if seen.insert(canonical_form(&y)) {
                queue.push_back(y);
            }
        }
    }
    false
}

/// Reference minor test: search every graph reachable by single minor steps.
pub fn contains_by_reductions(h: &MultiGraph, g: &MultiGraph, mode: Mode) -> bool {
    let h = h.in_mode(mode);
    let g = g.in_mode(mode);
    if h.vertex_count() > g.vertex_count() || h.edge_count() > g.edge_count() {
        return false;
    }
    let target = canonical_form(&h);
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(canonical_form(&g));
    queue.push_back(g);
    while let Some(x) = queue.pop_front() {
        if x.vertex_count() == h.vertex_count() && canonical_form(&x) == target {
            return true;
        }
        for y in x.single_step_reductions(true, mode) {
            if y.vertex_count() < h.vertex_count() || y.edge_count() < h.edge_count() {
                continue;
            }
            if seen.insert(canonical_form(&y)) {
                queue.push_back(y);
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// graph sets

/// A finite set of graphs, one per isomorphism class, kept in enumeration
/// order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphSet {
    members: Vec<MultiGraph>,
}

impl GraphSet {
    pub fn new() -> Self {
        GraphSet::default()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiGraph> {
        self.members.iter()
    }

    pub fn as_slice(&self) -> &[MultiGraph] {
        &self.members
    }

    pub fn into_vec(self) -> Vec<MultiGraph> {
        self.members
    }

    /// Whether some member is isomorphic to `g`.
    pub fn contains_graph(&self, g: &MultiGraph) -> bool {
        let f = canonical_form(g);
        self.members.iter().any(|m| {
            m.vertex_count() == g.vertex_count()
                && m.edge_count() == g.edge_count()
                && canonical_form(m) == f
        })
    }

    /// Isomorphism classes as canonical forms, for set comparisons.
    pub fn forms(&self) -> Vec<CanonicalForm> {
        let mut v: Vec<CanonicalForm> = self.members.iter().map(canonical_form).collect();
        v.sort();
        v
    }

    pub fn is_subset_of(&self, other: &GraphSet) -> bool {
        let theirs: HashSet<CanonicalForm> = other.forms().into_iter().collect();
        self.forms().iter().all(|f| theirs.contains(f))
    }

    pub fn same_classes(&self, other: &GraphSet) -> bool {
        self.forms() == other.forms()
    }
}

impl FromIterator<MultiGraph> for GraphSet {
    fn from_iter<I: IntoIterator<Item = MultiGraph>>(iter: I) -> Self {
        let mut seen = HashSet::new();
        let mut members: Vec<MultiGraph> = iter
            .into_iter()
            .filter(|g| seen.insert(canonical_form(g)))
            .collect();
        sort_enum_order(&mut members);
        GraphSet { members }
    }
}

impl<'a> IntoIterator for &'a GraphSet {
    type Item = &'a MultiGraph;
    type IntoIter = std::slice::Iter<'a, MultiGraph>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// The minimal members of `s`.
pub fn min_elements(c: &Containment, s: &GraphSet) -> Result<GraphSet> {
    let keep: Vec<Result<bool>> = s
        .members
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            for (j, y) in s.members.iter().enumerate() {
                if i != j && c.contains(y, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect();
    let mut out = Vec::new();
    for (g, k) in s.members.iter().zip(keep) {
        if k? {
            out.push(g.clone());
        }
    }
    Ok(GraphSet { members: out })
}

/// `a <=* b`: every member of `b` contains some member of `a`.
pub fn set_dominates(c: &Containment, a: &GraphSet, b: &GraphSet) -> Result<bool> {
    let each: Vec<Result<bool>> = b
        .members
        .par_iter()
        .map(|y| {
            for x in &a.members {
                if c.contains(x, y)? {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect();
    for r in each {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn filter_universe(
    universe: &GraphSet,
    keep: impl Fn(&MultiGraph) -> Result<bool> + Sync,
) -> Result<GraphSet> {
    let flags: Vec<Result<bool>> = universe.members.par_iter().map(&keep).collect();
    let mut out = Vec::new();
    for (g, f) in universe.members.iter().zip(flags) {
        if f? {
            out.push(g.clone());
        }
    }
    Ok(GraphSet { members: out })
}

/// Members of `universe` containing no member of `obstructions`.
pub fn excl_within(
    c: &Containment,
    obstructions: &GraphSet,
    universe: &GraphSet,
) -> Result<GraphSet> {
    filter_universe(universe, |g| {
        for o in &obstructions.members {
            if c.contains(o, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Members of `universe` below some seed.
pub fn down_closure_within(
    c: &Containment,
    seeds: &GraphSet,
    universe: &GraphSet,
) -> Result<GraphSet> {
    filter_universe(universe, |g| {
        for s in &seeds.members {
            if c.contains(g, s)? {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

/// Members of `universe` above some seed.
pub fn up_closure_within(
    c: &Containment,
    seeds: &GraphSet,
    universe: &GraphSet,
) -> Result<GraphSet> {
    filter_universe(universe, |g| {
        for s in &seeds.members {
            if c.contains(s, g)? {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        complete, complete_bipartite, cycle, grid, path, star, ternary_tree, theta,
    };
    use crate::graph::enumerate_graphs;

    fn minor() -> Containment {
        Containment::new(Relation::Minor)
    }

    #[test]
    fn relation_names_round_trip() {
        for r in ALL_RELATIONS {
            assert_eq!(r.name().parse::<Relation>().unwrap(), r);
        }
        assert!("nope".parse::<Relation>().is_err());
        assert_eq!(Relation::Immersion.default_mode(), Mode::Multigraph);
        assert_eq!(Relation::Minor.default_mode(), Mode::Simple);
    }

    #[test]
    fn minor_examples() {
        assert!(contains(Relation::Minor, &complete(3), &cycle(5)).unwrap());
        let wide = minor().with_budget(Budget::unlimited());
        assert!(!wide
            .contains(&complete(3), &ternary_tree(3).unwrap())
            .unwrap());
        assert!(contains(Relation::Minor, &complete(4), &grid(3).unwrap()).unwrap());
        assert!(!contains(Relation::Minor, &complete(5), &grid(4).unwrap()).unwrap());
        assert!(!contains(
            Relation::Minor,
            &complete_bipartite(3, 3),
            &grid(4).unwrap()
        )
        .unwrap());
        assert!(contains(Relation::Minor, &complete(4), &complete_bipartite(3, 3)).unwrap());
        assert!(contains(Relation::Minor, &complete(5), &complete(6)).unwrap());
    }

    #[test]
    fn minor_with_isolated_pattern_vertices() {
        let k3_k1 = complete(3).disjoint_union(&MultiGraph::new(1));
        assert!(!contains(Relation::Minor, &k3_k1, &complete(3)).unwrap());
        assert!(!contains(Relation::Minor, &k3_k1, &cycle(4)).unwrap());
        let mut pendant = cycle(4);
        let x = pendant.add_vertex();
        pendant.add_edge(0, x, 1).unwrap();
        assert!(contains(Relation::Minor, &k3_k1, &pendant).unwrap());
        assert!(contains(Relation::Minor, &MultiGraph::new(3), &path(3)).unwrap());
        assert!(!contains(Relation::Minor, &MultiGraph::new(4), &path(3)).unwrap());
    }

    #[test]
    fn multigraph_minor_needs_parallel_edges() {
        let c = minor().with_mode(Mode::Multigraph);
        let t2 = theta(2).unwrap();
        assert!(c.contains(&t2, &complete(3)).unwrap());
        assert!(!c.contains(&t2, &path(4)).unwrap());
        assert!(c.contains(&theta(3).unwrap(), &complete(4)).unwrap());
        // two halves of K4 span four edges
        assert!(c.contains(&theta(4).unwrap(), &complete(4)).unwrap());
        assert!(!c.contains(&theta(5).unwrap(), &complete(4)).unwrap());
    }

    #[test]
    fn immersion_examples() {
        let t2 = theta(2).unwrap();
        assert!(contains(Relation::Immersion, &t2, &complete(3)).unwrap());
        assert!(contains_by_lifting(&t2, &complete(3)));
        assert!(!contains(Relation::Immersion, &t2, &star(5)).unwrap());
        assert!(contains(Relation::Immersion, &star(2), &path(3)).unwrap());
        assert!(!contains(Relation::Immersion, &star(3), &path(6)).unwrap());
        // K_{1,4} into K5: the centre keeps four incident edges
        assert!(contains(Relation::Immersion, &star(4), &complete(5)).unwrap());
        assert!(contains(Relation::Immersion, &complete(4), &complete(5)).unwrap());
    }

    #[test]
    fn flow_shortcut_matches_lifting() {
        let c = Containment::new(Relation::Immersion).with_budget(Budget::unlimited());
        let hosts = enumerate_graphs(4, 2, None).unwrap();
        let mut patterns: Vec<MultiGraph> = (1..=4).map(|k| theta(k).unwrap()).collect();
        patterns.extend((1..=3).map(star));
        patterns.push(star(2).disjoint_union(&MultiGraph::new(1)));
        for h in &patterns {
            for g in &hosts {
                assert_eq!(
                    c.contains(h, g).unwrap(),
                    contains_by_lifting(h, g),
                    "{h:?} in {g:?}"
                );
            }
        }
    }

    #[test]
    fn topological_minor_examples() {
        assert!(contains(Relation::TopologicalMinor, &complete(3), &cycle(6)).unwrap());
        assert!(!contains(
            Relation::TopologicalMinor,
            &star(4),
            &ternary_tree(2).unwrap()
        )
        .unwrap());
        assert!(contains(Relation::Minor, &star(4), &ternary_tree(2).unwrap()).unwrap());
        assert!(contains(Relation::TopologicalMinor, &complete(4), &grid(3).unwrap()).is_ok());
    }

    #[test]
    fn size_rejection_precedes_budget() {
        let big = complete(9);
        assert!(!contains(Relation::Minor, &big, &complete(5)).unwrap());
        assert!(matches!(
            contains(Relation::Minor, &big, &complete(10)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            contains(Relation::Minor, &complete(3), &cycle(17)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn timeout_is_reported() {
        let c =
            minor().with_budget(Budget::unlimited().with_time_limit(Some(Duration::from_nanos(1))));
        let r = c.contains(&complete(6), &grid(6).unwrap());
        assert!(matches!(r, Err(Error::Timeout(_)) | Ok(false)));
    }

    #[test]
    fn minor_agrees_with_reduction_oracle() {
        let small = enumerate_graphs(5, 1, None).unwrap();
        let patterns: Vec<_> = small.iter().filter(|g| g.vertex_count() <= 4).collect();
        for h in &patterns {
            for g in &small {
                assert_eq!(
                    contains(Relation::Minor, h, g).unwrap(),
                    contains_by_reductions(h, g, Mode::Simple),
                    "{h:?} in {g:?}"
                );
            }
        }
    }

    #[test]
    fn set_operations() {
        let c = minor();
        let s: GraphSet = [complete(3), complete(4), cycle(5)].into_iter().collect();
        let m = min_elements(&c, &s).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.contains_graph(&complete(3)));
        let k3: GraphSet = [complete(3)].into_iter().collect();
        let big: GraphSet = [complete(4), cycle(5)].into_iter().collect();
        assert!(set_dominates(&c, &k3, &big).unwrap());
        let k4: GraphSet = [complete(4)].into_iter().collect();
        assert!(!set_dominates(&c, &k4, &k3).unwrap());
        assert!(set_dominates(&c, &GraphSet::new(), &GraphSet::new()).unwrap());

        let imm = Containment::new(Relation::Immersion);
        let th: GraphSet = [theta(2).unwrap(), theta(3).unwrap()].into_iter().collect();
        let m = min_elements(&imm, &th).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.contains_graph(&theta(2).unwrap()));
    }

    #[test]
    fn excl_of_triangle_is_forests() {
        let c = minor();
        let u: GraphSet = enumerate_graphs(4, 1, None).unwrap().into_iter().collect();
        let k3: GraphSet = [complete(3)].into_iter().collect();
        let got = excl_within(&c, &k3, &u).unwrap();
        let forests: GraphSet = u.iter().filter(|g| g.is_forest()).cloned().collect();
        assert!(got.same_classes(&forests));
        assert!(excl_within(&c, &GraphSet::new(), &u)
            .unwrap()
            .same_classes(&u));
    }

    #[test]
    fn closures() {
        let c = minor();
        let u: GraphSet = enumerate_graphs(3, 1, None).unwrap().into_iter().collect();
        let k3: GraphSet = [complete(3)].into_iter().collect();
        // every graph on at most three vertices is a minor of K3
        assert_eq!(down_closure_within(&c, &k3, &u).unwrap().len(), 8);
        let forests: GraphSet = u.iter().filter(|g| g.is_forest()).cloned().collect();
        assert!(up_closure_within(&c, &k3, &forests).unwrap().is_empty());
        assert!(down_closure_within(&c, &GraphSet::new(), &u)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn graph_set_deduplicates() {
        let a = path(3);
        let b = MultiGraph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        let s: GraphSet = [a, b, complete(2)].into_iter().collect();
        assert_eq!(s.len(), 2);
        assert_eq!(s.as_slice()[0], complete(2));
    }
}
