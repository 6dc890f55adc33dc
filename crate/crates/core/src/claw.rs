//! Small graphs, their independent sets, and the depth-two claw `T_n`.
//!
//! `T_n` uses a fixed layout over the ground set `[2n + 1]`: `x_0` is element
//! 1, `x_i` is element `1 + i` and `y_i` is element `1 + n + i`. `X_n` is
//! therefore the contiguous mask of bits `1..=n`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::labeled::LabeledUniverse;
use crate::sets::{self, binomial, binomial_i, low_bits, BitIter, Family, SetMask, MAX_GROUND};

/// Output guard for [`independent_sets`] and [`enumerate_itn`].
pub const MAX_INDEPENDENT_SETS: u128 = 10_000_000;
/// Vertex guard for [`mu`].
pub const MAX_MU_VERTICES: usize = 24;
/// Largest claw accepted by [`build_tn`].
pub const MAX_CLAW_LEAVES: usize = 30;

/// Simple undirected graph on vertices `1..=m`, adjacency as bitmasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<u64>,
}

impl Graph {
    pub fn edgeless(vertex_count: usize) -> Result<Self> {
        if vertex_count > MAX_GROUND {
            return Err(Error::size_limit("vertex count", vertex_count as u128, MAX_GROUND as u128));
        }
        Ok(Graph {
            adj: vec![0; vertex_count],
        })
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(vertex_count)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(vertex_count: usize) -> Result<Self> {
        let mut g = Self::edgeless(vertex_count)?;
        let all = low_bits(vertex_count);
        for (v, a) in g.adj.iter_mut().enumerate() {
            *a = all & !(1 << v);
        }
        Ok(g)
    }

    /// Adds the edge `uv` (1-based). Loops are rejected; repeats are no-ops.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let m = self.vertex_count();
        if u == 0 || v == 0 || u > m || v > m {
            return Err(Error::domain(format!("edge {u} {v} leaves vertex range [{m}]")));
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        self.adj[u - 1] |= 1 << (v - 1);
        self.adj[v - 1] |= 1 << (u - 1);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Neighbours of 1-based vertex `v` as a mask over `[m]`.
    pub fn neighbors(&self, v: usize) -> SetMask {
        SetMask::from_raw(self.adj[v - 1], self.vertex_count())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, &a) in self.adj.iter().enumerate() {
            for v in BitIter(a >> (u + 1)) {
                out.push((u + 1, u + v + 2));
            }
        }
        out
    }

    pub fn is_independent(&self, bits: u64) -> bool {
        BitIter(bits).all(|v| self.adj[v] & bits == 0)
    }

    /// Graph text format: `vertices=<m>` then one `u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices={}\n", self.vertex_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `vertices=<m>` header"))?;
        let m: usize = header
            .strip_prefix("vertices=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(hl, format!("expected `vertices=<m>`, found `{header}`")))?;
        let mut g = Graph::edgeless(m).map_err(|e| Error::parse(hl, e.to_string()))?;
        for (lineno, line) in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            let (Some(Ok(u)), Some(Ok(v)), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::parse(lineno, format!("expected `u v`, found `{line}`")));
            };
            g.add_edge(u, v).map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        Ok(g)
    }
}

/// Vertex layout of `T_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClawLayout {
    n: usize,
}

impl ClawLayout {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_CLAW_LEAVES {
            return Err(Error::size_limit("claw leaves", n as u128, MAX_CLAW_LEAVES as u128));
        }
        Ok(ClawLayout { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_size(&self) -> usize {
        2 * self.n + 1
    }

    pub fn x0(&self) -> usize {
        1
    }

    pub fn x(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        1 + i
    }

    pub fn y(&self, i: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i));
        1 + self.n + i
    }

    #[inline]
    pub fn x0_bit(&self) -> u64 {
        1
    }

    /// Mask of `X_n = {x_1, ..., x_n}`.
    #[inline]
    pub fn x_mask(&self) -> u64 {
        low_bits(self.n) << 1
    }

    #[inline]
    pub fn y_mask(&self) -> u64 {
        low_bits(self.n) << (self.n + 1)
    }

    /// Symbolic name of a 1-based vertex: `x0`, `x3`, `y2`, ...
    pub fn name(&self, element: usize) -> String {
        match element {
            1 => "x0".into(),
            e if e <= self.n + 1 => format!("x{}", e - 1),
            e => format!("y{}", e - 1 - self.n),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (1..=self.ground_size()).map(|e| self.name(e)).collect()
    }

    pub fn format_set(&self, bits: u64) -> String {
        if bits == 0 {
            return "-".into();
        }
        let parts: Vec<String> = BitIter(bits).map(|b| self.name(b + 1)).collect();
        parts.join(",")
    }

    /// Sidecar header line naming the vertices of a family over `T_n`.
    pub fn sidecar_header(&self) -> String {
        let parts: Vec<String> = (1..=self.ground_size())
            .map(|e| format!("{e}={}", self.name(e)))
            .collect();
        format!("# vertices: {}", parts.join(" "))
    }

    /// Independence in `T_n` without materialising the graph.
    #[inline]
    pub fn is_independent(&self, bits: u64) -> bool {
        let xs = (bits & self.x_mask()) >> 1;
        let ys = (bits & self.y_mask()) >> (self.n + 1);
        xs & ys == 0 && (bits & self.x0_bit() == 0 || ys == 0)
    }

    /// The `x_1` star size of `I_{T_n}^(r)`:
    /// `C(n-1, r-1) 2^(r-1) + C(n-1, r-2)`.
    pub fn x1_star_size(&self, r: usize) -> u128 {
        if r == 0 {
            return 0;
        }
        let n = self.n as i64;
        let r = r as i64;
        binomial_i(n - 1, r - 1) * (1u128 << (r - 1)) + binomial_i(n - 1, r - 2)
    }

    /// Re-encodes an `x_0`-free set of `T_n` (a member of `L_{n,2}`) in the
    /// labeled universe `[n] x [2]`: `x_i -> (i, 1)`, `y_i -> (i, 2)`.
    pub fn to_labeled(&self, bits: u64) -> u64 {
        debug_assert!(bits & self.x0_bit() == 0);
        let xs = (bits & self.x_mask()) >> 1;
        let ys = (bits & self.y_mask()) >> (self.n + 1);
        let mut out = 0;
        for b in BitIter(xs) {
            out |= 1 << (2 * b);
        }
        for b in BitIter(ys) {
            out |= 1 << (2 * b + 1);
        }
        out
    }

    pub fn from_labeled(&self, bits: u64) -> u64 {
        let mut out = 0;
        for b in BitIter(bits) {
            let (i, j) = (b / 2, b % 2);
            out |= if j == 0 { 1 << (i + 1) } else { 1 << (i + self.n + 1) };
        }
        out
    }

    pub fn labeled_universe(&self) -> LabeledUniverse {
        LabeledUniverse::new(self.n, 2).expect("claw leaves fit the labeled ground set")
    }

    fn check_family(&self, family: &Family) -> Result<()> {
        if family.ground_size() != self.ground_size() {
            return Err(Error::domain(format!(
                "family ground size {} does not match 2n+1 = {}",
                family.ground_size(),
                self.ground_size()
            )));
        }
        Ok(())
    }

    /// Checks `family ⊆ I_{T_n}^(r)` for a single `r`.
    fn check_uniform_independent(&self, family: &Family) -> Result<()> {
        self.check_family(family)?;
        if family.uniform_size().is_none() {
            return Err(Error::domain("family mixes set sizes; expected one slice I_{T_n}^(r)"));
        }
        if let Some(&bad) = family.masks().iter().find(|&&m| !self.is_independent(m)) {
            return Err(Error::domain(format!(
                "{{{}}} is not independent in T_{}",
                self.format_set(bad),
                self.n
            )));
        }
        Ok(())
    }
}

/// `T_n` with its layout.
pub fn build_tn(n: usize) -> Result<(Graph, ClawLayout)> {
    let layout = ClawLayout::new(n)?;
    let mut g = Graph::edgeless(layout.ground_size())?;
    for i in 1..=n {
        g.add_edge(layout.x0(), layout.y(i))?;
        g.add_edge(layout.x(i), layout.y(i))?;
    }
    Ok((g, layout))
}

/// Every `r`-element independent set of `graph`, by backtracking over
/// vertices in index order.
pub fn independent_sets(graph: &Graph, r: usize) -> Result<Family> {
    independent_sets_with_limit(graph, r, MAX_INDEPENDENT_SETS)
}

pub fn independent_sets_with_limit(graph: &Graph, r: usize, limit: u128) -> Result<Family> {
    struct Walk<'a> {
        adj: &'a [u64],
        r: usize,
        limit: u128,
        out: Vec<u64>,
    }

    impl Walk<'_> {
        fn go(&mut self, chosen: u64, size: usize, available: u64) -> Result<()> {
            if size == self.r {
                if self.out.len() as u128 >= self.limit {
                    return Err(Error::size_limit(
                        "independent set count",
                        self.out.len() as u128 + 1,
                        self.limit,
                    ));
                }
                self.out.push(chosen);
                return Ok(());
            }
            let mut avail = available;
            while avail != 0 {
                if (avail.count_ones() as usize) < self.r - size {
                    break;
                }
                let v = avail.trailing_zeros() as usize;
                avail &= avail - 1;
                self.go(chosen | 1 << v, size + 1, avail & !self.adj[v])?;
            }
            Ok(())
        }
    }

    let m = graph.vertex_count();
    let mut walk = Walk {
        adj: &graph.adj,
        r,
        limit,
        out: Vec::new(),
    };
    if r <= m {
        walk.go(0, 0, low_bits(m))?;
    }
    let mut out = walk.out;
    out.sort_unstable();
    Ok(Family::from_sorted(m, out))
}

/// `I_{T_n}^(r)` built from its two parts: `L_{n,2}^(r)` and the sets
/// `{x_0} ∪ A` with `A` an `(r-1)`-subset of `X_n`.
pub fn enumerate_itn(n: usize, r: usize) -> Result<Family> {
    let layout = ClawLayout::new(n)?;
    let g = layout.ground_size();
    if r > n + 1 {
        return Ok(Family::from_sorted(g, Vec::new()));
    }
    let count = binomial(n as u64, r as u64) * (1u128 << r.min(n))
        + if r >= 1 { binomial(n as u64, r as u64 - 1) } else { 0 };
    if count > MAX_INDEPENDENT_SETS {
        return Err(Error::size_limit("I_{T_n}^(r) member count", count, MAX_INDEPENDENT_SETS));
    }
    let mut out = Vec::with_capacity(count as usize);
    for idx in sets::r_subsets_of_low_bits(n, r) {
        // every submask of idx picks the indices labelled y
        let mut ys = idx;
        loop {
            out.push(((idx & !ys) << 1) | (ys << (n + 1)));
            if ys == 0 {
                break;
            }
            ys = (ys - 1) & idx;
        }
    }
    if r >= 1 {
        for xs in sets::r_subsets_of_low_bits(n, r - 1) {
            out.push(layout.x0_bit() | xs << 1);
        }
    }
    out.sort_unstable();
    Ok(Family::from_sorted(g, out))
}

/// Size of a smallest maximal independent set.
pub fn mu(graph: &Graph) -> Result<usize> {
    let m = graph.vertex_count();
    if m > MAX_MU_VERTICES {
        return Err(Error::size_limit("mu vertex count", m as u128, MAX_MU_VERTICES as u128));
    }
    let closed: Vec<u64> = (0..m).map(|v| graph.adj[v] | 1 << v).collect();

    // Every maximal independent set extending the current one contains a
    // vertex of N[u] for any still-addable u, so branching over P ∩ N[u]
    // reaches all of them.
    fn go(closed: &[u64], size: usize, cand: u64, excl: u64, best: &mut usize) {
        if cand == 0 && excl == 0 {
            *best = (*best).min(size);
            return;
        }
        if size + 1 >= *best || cand == 0 {
            return;
        }
        let pivot = BitIter(cand | excl)
            .min_by_key(|&u| (cand & closed[u]).count_ones())
            .expect("non-empty");
        let mut cand = cand;
        let mut excl = excl;
        for v in BitIter(cand & closed[pivot]) {
            go(closed, size + 1, cand & !closed[v], excl & !closed[v], best);
            cand &= !(1 << v);
            excl |= 1 << v;
        }
    }

    let mut best = m;
    go(&closed, 0, low_bits(m), 0, &mut best);
    Ok(best)
}

/// `gamma`: move `x_0` to `y_1` when `y_1` is absent and the image stays in `R`.
pub fn gamma(layout: &ClawLayout, set: SetMask, family_r: &Family) -> Result<SetMask> {
    layout.check_family(family_r)?;
    if set.ground_size() != layout.ground_size() || !family_r.contains(set) {
        return Err(Error::domain(format!(
            "{{{}}} is not a member of R",
            layout.format_set(set.bits())
        )));
    }
    let image = gamma_image(layout, set.bits());
    let out = if image != set.bits() && family_r.contains_mask(image) {
        image
    } else {
        set.bits()
    };
    Ok(SetMask::from_raw(out, layout.ground_size()))
}

#[inline]
fn gamma_image(layout: &ClawLayout, bits: u64) -> u64 {
    let y1 = 1u64 << (layout.y(1) - 1);
    if bits & layout.x0_bit() != 0 && bits & y1 == 0 {
        (bits & !layout.x0_bit()) | y1
    } else {
        bits
    }
}

/// `gamma` with `R = I_{T_n}^(|A|)`, decided by the independence test.
#[inline]
pub(crate) fn gamma_in_itn(layout: &ClawLayout, bits: u64) -> u64 {
    let image = gamma_image(layout, bits);
    if image != bits && layout.is_independent(image) {
        image
    } else {
        bits
    }
}

/// `Gamma` on a subfamily of `I_{T_n}^(r)`.
pub fn gamma_compress(layout: &ClawLayout, family: &Family) -> Result<Family> {
    layout.check_uniform_independent(family)?;
    let mut out: Vec<u64> = family
        .masks()
        .iter()
        .map(|&a| {
            let g = gamma_in_itn(layout, a);
            if g != a && family.contains_mask(g) {
                a
            } else {
                g
            }
        })
        .collect();
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(Family::from_sorted(family.ground_size(), out))
}

/// The `x_0` split of a subfamily of `I_{T_n}^(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X0Split {
    /// Members without `x_0`, over `[2n + 1]`.
    pub without_x0: Family,
    /// Members with `x_0`, over `[2n + 1]`.
    pub with_x0: Family,
    /// `{H \ {x_0}}` for members with `x_0`, re-encoded over `[n]` by `x_i -> i`.
    pub with_x0_removed: Family,
}

pub fn split_x0(layout: &ClawLayout, family: &Family) -> Result<X0Split> {
    layout.check_family(family)?;
    let x0 = layout.x0_bit();
    let without_x0 = family.filter(|m| m & x0 == 0);
    let with_x0 = family.filter(|m| m & x0 != 0);
    let removed = Family::new(
        layout.n(),
        with_x0.masks().iter().map(|&m| (m & layout.x_mask()) >> 1),
    )?;
    Ok(X0Split {
        without_x0,
        with_x0,
        with_x0_removed: removed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{is_intersecting, power_set};

    fn claw_set(l: &ClawLayout, names: &[&str]) -> u64 {
        names.iter().fold(0, |acc, name| {
            let (kind, idx) = name.split_at(1);
            let i: usize = idx.parse().unwrap();
            let e = match (kind, i) {
                ("x", 0) => l.x0(),
                ("x", i) => l.x(i),
                ("y", i) => l.y(i),
                _ => unreachable!(),
            };
            acc | 1 << (e - 1)
        })
    }

    /// Every vertex subset, filtered for size and independence.
    fn brute_independent(g: &Graph, r: usize) -> Family {
        let p = power_set(g.vertex_count()).unwrap();
        p.filter(|m| m.count_ones() as usize == r && g.is_independent(m))
    }

    /// Minimum over independent sets that no vertex can extend.
    fn brute_mu(g: &Graph) -> usize {
        let m = g.vertex_count();
        let p = power_set(m).unwrap();
        p.masks()
            .iter()
            .filter(|&&s| g.is_independent(s))
            .filter(|&&s| (0..m).all(|v| s >> v & 1 == 1 || !g.is_independent(s | 1 << v)))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn build_examples() {
        let (g, l) = build_tn(1).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(l.ground_size(), 3);
        let (g, l) = build_tn(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (7, 6));
        assert_eq!(g.degree(l.x0()), 3);
        let (g, l) = build_tn(2).unwrap();
        let y1 = g.neighbors(l.y(1));
        assert_eq!(y1.elements().collect::<Vec<_>>(), vec![l.x0(), l.x(1)]);
        assert!(build_tn(0).is_err());
        assert!(build_tn(31).is_err());
        assert!(build_tn(30).is_ok());
    }

    #[test]
    fn independent_set_examples() {
        let g = Graph::edgeless(5).unwrap();
        assert_eq!(independent_sets(&g, 2).unwrap().len(), 10);
        let tri = Graph::complete(3).unwrap();
        assert!(independent_sets(&tri, 2).unwrap().is_empty());
        let (t3, _) = build_tn(3).unwrap();
        assert_eq!(independent_sets(&t3, 2).unwrap().len(), 15);
        assert_eq!(independent_sets(&g, 0).unwrap().masks(), &[0]);
        assert!(independent_sets(&g, 6).unwrap().is_empty());
        assert!(matches!(
            independent_sets_with_limit(&g, 2, 9),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn independent_sets_match_brute_force() {
        let (t3, _) = build_tn(3).unwrap();
        let pent = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        for g in [t3, pent, Graph::complete(4).unwrap()] {
            for r in 0..=g.vertex_count() {
                assert_eq!(independent_sets(&g, r).unwrap(), brute_independent(&g, r));
            }
        }
    }

    #[test]
    fn itn_examples() {
        assert_eq!(enumerate_itn(3, 2).unwrap().len(), 15);
        let l = ClawLayout::new(3).unwrap();
        let top = enumerate_itn(3, 4).unwrap();
        assert_eq!(top.masks(), &[claw_set(&l, &["x0", "x1", "x2", "x3"])]);
        assert_eq!(enumerate_itn(4, 0).unwrap().masks(), &[0]);
        assert!(enumerate_itn(3, 5).unwrap().is_empty());
    }

    #[test]
    fn itn_formula_matches_generic_enumeration() {
        for n in 1..=6 {
            let (g, _) = build_tn(n).unwrap();
            for r in 0..=n + 2 {
                let f = enumerate_itn(n, r).unwrap();
                assert_eq!(f, independent_sets(&g, r).unwrap(), "n={n} r={r}");
                let want = if r > n + 1 {
                    0
                } else {
                    (binomial(n as u64, r as u64) << r) + binomial_i(n as i64, r as i64 - 1)
                };
                assert_eq!(f.len() as u128, want);
            }
        }
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&Graph::edgeless(4).unwrap()).unwrap(), 4);
        assert_eq!(mu(&Graph::from_edges(2, &[(1, 2)]).unwrap()).unwrap(), 1);
        let (t3, _) = build_tn(3).unwrap();
        assert_eq!(brute_mu(&t3), 3);
        assert_eq!(mu(&t3).unwrap(), 3);
        assert_eq!(mu(&Graph::edgeless(0).unwrap()).unwrap(), 0);
        assert!(mu(&Graph::edgeless(25).unwrap()).is_err());
    }

    #[test]
    fn mu_matches_brute_force() {
        let pent = Graph::from_edges(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let star = Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        let mut graphs = vec![pent, star, Graph::complete(5).unwrap()];
        for n in 1..=5 {
            graphs.push(build_tn(n).unwrap().0);
        }
        // a few pseudo-random graphs on 9 vertices
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..20 {
            let mut g = Graph::edgeless(9).unwrap();
            for u in 1..=9 {
                for v in u + 1..=9 {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if state % 3 == 0 {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            graphs.push(g);
        }
        for g in &graphs {
            assert_eq!(mu(g).unwrap(), brute_mu(g), "{}", g.to_text());
        }
    }

    #[test]
    fn gamma_examples() {
        let l = ClawLayout::new(3).unwrap();
        let r = enumerate_itn(3, 2).unwrap();
        let m = |names: &[&str]| SetMask::new(claw_set(&l, names), 7).unwrap();
        assert_eq!(gamma(&l, m(&["x0", "x2"]), &r).unwrap(), m(&["y1", "x2"]));
        assert_eq!(gamma(&l, m(&["x0", "x1"]), &r).unwrap(), m(&["x0", "x1"]));
        assert_eq!(gamma(&l, m(&["y1", "x2"]), &r).unwrap(), m(&["y1", "x2"]));
        assert!(gamma(&l, m(&["x0", "y2"]), &r).is_err());
    }

    #[test]
    fn gamma_fixpoints_match_characterisation() {
        for n in 1..=5 {
            let l = ClawLayout::new(n).unwrap();
            for r in 0..=n + 1 {
                let fam = enumerate_itn(n, r).unwrap();
                for s in fam.iter() {
                    let moved = gamma(&l, s, &fam).unwrap() != s;
                    let b = s.bits();
                    let x1 = 1u64 << (l.x(1) - 1);
                    let y1 = 1u64 << (l.y(1) - 1);
                    let predicted = b & 1 != 0 && b & x1 == 0 && b & y1 == 0;
                    assert_eq!(moved, predicted, "n={n} {}", l.format_set(b));
                    assert_eq!(gamma_in_itn(&l, b), gamma(&l, s, &fam).unwrap().bits());
                }
            }
        }
    }

    #[test]
    fn gamma_compress_examples() {
        let l = ClawLayout::new(3).unwrap();
        let f = Family::new(7, [claw_set(&l, &["x0", "x2"])]).unwrap();
        let want = Family::new(7, [claw_set(&l, &["y1", "x2"])]).unwrap();
        assert_eq!(gamma_compress(&l, &f).unwrap(), want);
        let f = Family::new(7, [claw_set(&l, &["x0", "x2"]), claw_set(&l, &["y1", "x2"])]).unwrap();
        assert_eq!(gamma_compress(&l, &f).unwrap(), f);
        let e = Family::empty(7).unwrap();
        assert_eq!(gamma_compress(&l, &e).unwrap(), e);
        let bad = Family::new(7, [claw_set(&l, &["x1", "y1"])]).unwrap();
        assert!(gamma_compress(&l, &bad).is_err());
    }

    #[test]
    fn split_examples() {
        let l = ClawLayout::new(2).unwrap();
        let h = enumerate_itn(2, 2).unwrap();
        let s = split_x0(&l, &h).unwrap();
        assert_eq!(s.without_x0.len(), 4);
        assert_eq!(s.with_x0.len(), 2);
        assert_eq!(s.with_x0_removed, Family::new(2, [0b01, 0b10]).unwrap());
        let no_x0 = h.filter(|m| m & 1 == 0);
        let s = split_x0(&l, &no_x0).unwrap();
        assert!(s.with_x0.is_empty() && s.with_x0_removed.is_empty());
        assert_eq!(s.without_x0.len() + s.with_x0.len(), no_x0.len());
    }

    #[test]
    fn labeled_reencoding_round_trips() {
        let l = ClawLayout::new(4).unwrap();
        let u = l.labeled_universe();
        let h0 = enumerate_itn(4, 3).unwrap().filter(|m| m & 1 == 0);
        for &m in h0.masks() {
            let lab = l.to_labeled(m);
            assert!(u.has_distinct_indices(lab));
            assert_eq!(l.from_labeled(lab), m);
            // X_n maps onto the label-1 layer
            assert_eq!(l.to_labeled(m & l.x_mask()), lab & u.x_mask());
        }
    }

    #[test]
    fn names_and_sidecar() {
        let l = ClawLayout::new(2).unwrap();
        assert_eq!(l.names(), vec!["x0", "x1", "x2", "y1", "y2"]);
        assert_eq!(l.sidecar_header(), "# vertices: 1=x0 2=x1 3=x2 4=y1 5=y2");
        assert_eq!(l.format_set(claw_set(&l, &["x0", "x2"])), "x0,x2");
        assert_eq!(l.x1_star_size(2), 3);
        assert!(is_intersecting(&Family::new(5, [0b11]).unwrap()));
    }

    #[test]
    fn graph_text_round_trip() {
        let (g, _) = build_tn(3).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("vertices=7\n1 5\n"));
        assert_eq!(Graph::parse_text(&text).unwrap(), g);
        assert!(Graph::parse_text("vertices=3\n1 1\n").is_err());
        assert!(Graph::parse_text("vertices=3\n1 4\n").is_err());
        assert!(Graph::parse_text("vertices=3\n1\n").is_err());
        assert!(Graph::parse_text("v=3\n").is_err());
    }
}
