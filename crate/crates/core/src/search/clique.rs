//! Exact maximum clique by branch and bound over bitsets.
//!
//! The clique number of every vertex suffix is computed from the top down
//! (each new vertex raises it by at most one), then a final pass looks for
//! a clique of that size in ascending branch order. Cliques are met in
//! lexicographic order of their sorted vertex lists, so the first one found
//! is the lexicographically first maximum clique. Both passes prune with
//! the suffix clique numbers and with a greedy colouring built from the
//! largest candidate down; both bounds shrink as the loop advances, so the
//! loop stops at the first failing vertex.

#[derive(Debug, Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Builds the graph with `i ~ j` whenever `i != j` and `compatible(i, j)`.
    pub fn from_relation(n: usize, mut compatible: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if compatible(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j);
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Ascending vertex list.
    pub clique: Vec<usize>,
    pub nodes: u64,
}

/// Lexicographically first maximum clique among the vertices of `allowed`.
///
/// `known_lower` is the size of some clique known to exist; it only seeds
/// the incumbent of the value search.
pub fn max_clique(graph: &BitGraph, allowed: &[usize], known_lower: usize) -> CliqueOutcome {
    let words = graph.words;
    let mut order = allowed.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut root = vec![0u64; words];
    for &v in &order {
        root[v / 64] |= 1 << (v % 64);
    }
    let mut lower = known_lower.min(order.len());
    loop {
        let (omega, value_nodes) = clique_number(graph, &order, lower);
        let mut search = Search {
            g: graph,
            current: Vec::new(),
            nodes: value_nodes,
            scratch: Vec::new(),
        };
        if omega == 0 || search.find(&root, omega, 0) {
            return CliqueOutcome {
                clique: search.current,
                nodes: search.nodes,
            };
        }
        // the claimed lower bound was not attained
        lower = 0;
    }
}

/// Clique number of the induced subgraph on `verts`, or `lower` if nothing
/// larger exists. Returns it with the node count.
fn clique_number(graph: &BitGraph, verts: &[usize], lower: usize) -> (usize, u64) {
    // renumber so that high degree comes first in the colouring order
    let mut order = verts.to_vec();
    let degree = |v: usize| {
        verts
            .iter()
            .filter(|&&u| u != v && graph.has_edge(u, v))
            .count()
    };
    let degrees: Vec<usize> = order.iter().map(|&v| degree(v)).collect();
    let mut idx: Vec<usize> = (0..order.len()).collect();
    idx.sort_by_key(|&i| (std::cmp::Reverse(degrees[i]), order[i]));
    order = idx.iter().map(|&i| verts[i]).collect();
    let m = order.len();
    let local = BitGraph::from_relation(m, |i, j| graph.has_edge(order[i], order[j]));
    let mut root = vec![0u64; local.words];
    for v in 0..m {
        root[v / 64] |= 1 << (v % 64);
    }
    let mut value = ValueSearch {
        g: &local,
        best: lower,
        nodes: 0,
        scratch: Vec::new(),
    };
    value.expand(&root, 0, 0);
    (value.best, value.nodes)
}

#[derive(Default)]
struct ValueScratch {
    verts: Vec<usize>,
    colour: Vec<usize>,
    classes: Vec<u64>,
    refuted: Vec<bool>,
    spent: Vec<bool>,
    rest: Vec<u64>,
    next: Vec<u64>,
    branch: Vec<usize>,
    up: Propagation,
}

/// Colour-ordered branch and bound with the colouring bound tightened by
/// unit propagation over the colour classes.
struct ValueSearch<'a> {
    g: &'a BitGraph,
    best: usize,
    nodes: u64,
    scratch: Vec<ValueScratch>,
}

impl ValueSearch<'_> {
    fn expand(&mut self, cand: &[u64], size: usize, depth: usize) {
        self.nodes += 1;
        let words = self.g.words;
        if size + popcount(cand) <= self.best {
            return;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(ValueScratch::default());
        }
        let mut s = std::mem::take(&mut self.scratch[depth]);

        s.verts.clear();
        push_bits(cand, &mut s.verts);
        s.colour.clear();
        s.classes.clear();
        let mut colours = 0;
        for &v in &s.verts {
            let row = self.g.row(v);
            let c = (0..colours)
                .find(|&c| {
                    s.classes[c * words..(c + 1) * words]
                        .iter()
                        .zip(row)
                        .all(|(a, b)| a & b == 0)
                })
                .unwrap_or_else(|| {
                    s.classes.resize((colours + 1) * words, 0);
                    colours += 1;
                    colours - 1
                });
            s.classes[c * words + v / 64] |= 1 << (v % 64);
            s.colour.push(c);
        }

        // classes below `keep` can never complete a better clique alone;
        // each further class stays out of branching if it, together with
        // them, is refuted by a contradiction disjoint from earlier ones
        let keep = self.best.saturating_sub(size);
        if colours > keep {
            s.refuted.clear();
            s.refuted.resize(colours, false);
            s.spent.clear();
            s.spent.resize(colours, false);
            for c in keep..colours {
                let members: Vec<usize> = (0..c)
                    .filter(|&d| (d < keep || s.refuted[d]) && !s.spent[d])
                    .chain(std::iter::once(c))
                    .collect();
                if members.len() < 2 {
                    continue;
                }
                if let Some(conflict) = s.up.refute(self.g, &s.classes, &members) {
                    s.refuted[c] = true;
                    for d in conflict {
                        s.spent[d] = true;
                    }
                }
            }

            s.rest.clear();
            s.rest.extend_from_slice(cand);
            s.next.resize(words, 0);
            // highest colour first; the vertices left behind need no branch
            s.branch.clear();
            s.branch.extend((0..s.verts.len()).filter(|&i| {
                let c = s.colour[i];
                c >= keep && !s.refuted[c]
            }));
            s.branch.sort_by_key(|&i| std::cmp::Reverse(s.colour[i]));
            for bi in 0..s.branch.len() {
                let i = s.branch[bi];
                let v = s.verts[i];
                s.rest[v / 64] &= !(1 << (v % 64));
                let row = self.g.row(v);
                for w in 0..words {
                    s.next[w] = s.rest[w] & row[w];
                }
                let next = std::mem::take(&mut s.next);
                if next.iter().all(|&w| w == 0) {
                    self.best = self.best.max(size + 1);
                } else {
                    self.expand(&next, size + 1, depth + 1);
                }
                s.next = next;
            }
        }
        self.scratch[depth] = s;
    }
}

/// Unit propagation over colour classes. A clique with one vertex in each
/// class forces the vertex of a singleton class, which trims every other
/// class to its neighbours; a class trimmed to nothing refutes the set of
/// classes that took part in emptying it.
#[derive(Default)]
struct Propagation {
    work: Vec<u64>,
    reason: Vec<u64>,
    done: Vec<bool>,
}

impl Propagation {
    fn refute(&mut self, g: &BitGraph, classes: &[u64], members: &[usize]) -> Option<Vec<usize>> {
        let words = g.words;
        let k = members.len();
        let rw = k.div_ceil(64);
        self.work.clear();
        for &c in members {
            self.work.extend_from_slice(&classes[c * words..(c + 1) * words]);
        }
        self.reason.clear();
        self.reason.resize(k * rw, 0);
        self.done.clear();
        self.done.resize(k, false);
        loop {
            let unit = (0..k)
                .find(|&i| !self.done[i] && popcount(&self.work[i * words..(i + 1) * words]) == 1)?;
            self.done[unit] = true;
            let w = (0..words).find(|&w| self.work[unit * words + w] != 0).unwrap();
            let u = w * 64 + self.work[unit * words + w].trailing_zeros() as usize;
            let row = g.row(u);
            for d in 0..k {
                if self.done[d] {
                    continue;
                }
                let slot = &mut self.work[d * words..(d + 1) * words];
                if slot.iter().zip(row).all(|(a, b)| a & !b == 0) {
                    continue;
                }
                let mut left = 0;
                for (x, r) in slot.iter_mut().zip(row) {
                    *x &= r;
                    left |= *x;
                }
                for x in 0..rw {
                    let carried = self.reason[unit * rw + x];
                    self.reason[d * rw + x] |= carried;
                }
                self.reason[d * rw + unit / 64] |= 1 << (unit % 64);
                if left == 0 {
                    self.reason[d * rw + d / 64] |= 1 << (d % 64);
                    let mut out = Vec::new();
                    for i in 0..k {
                        if self.reason[d * rw + i / 64] >> (i % 64) & 1 == 1 {
                            out.push(members[i]);
                        }
                    }
                    return Some(out);
                }
            }
        }
    }
}

fn push_bits(bits: &[u64], out: &mut Vec<usize>) {
    for (w, &word) in bits.iter().enumerate() {
        let mut b = word;
        while b != 0 {
            out.push(w * 64 + b.trailing_zeros() as usize);
            b &= b - 1;
        }
    }
}

#[derive(Default)]
struct Scratch {
    verts: Vec<usize>,
    bound: Vec<usize>,
    classes: Vec<u64>,
    cand: Vec<u64>,
    next: Vec<u64>,
    suffix: Vec<u64>,
    work: Vec<u64>,
}

struct Search<'a> {
    g: &'a BitGraph,
    current: Vec<usize>,
    nodes: u64,
    scratch: Vec<Scratch>,
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

impl Search<'_> {
    /// Extends `current` with candidates, in ascending order, to the first
    /// clique of size `target`. On success `current` holds it.
    fn find(&mut self, cand_in: &[u64], target: usize, depth: usize) -> bool {
        self.nodes += 1;
        let words = self.g.words;
        if self.current.len() >= target {
            return true;
        }
        if self.current.len() + popcount(cand_in) < target {
            return false;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(Scratch {
                cand: vec![0; words],
                next: vec![0; words],
                ..Scratch::default()
            });
        }
        let mut s = std::mem::take(&mut self.scratch[depth]);

        s.verts.clear();
        push_bits(cand_in, &mut s.verts);

        // greedy colouring, largest vertex first
        let k = s.verts.len();
        s.bound.clear();
        s.bound.resize(k, 0);
        s.classes.clear();
        let mut colours = 0usize;
        for idx in (0..k).rev() {
            let v = s.verts[idx];
            let row = self.g.row(v);
            let mut placed = false;
            for c in 0..colours {
                let class = &mut s.classes[c * words..(c + 1) * words];
                if class.iter().zip(row).all(|(a, b)| a & b == 0) {
                    class[v / 64] |= 1 << (v % 64);
                    placed = true;
                    break;
                }
            }
            if !placed {
                s.classes.resize((colours + 1) * words, 0);
                s.classes[colours * words + v / 64] |= 1 << (v % 64);
                colours += 1;
            }
            s.bound[idx] = colours;
        }

        let have = self.current.len();
        let mut stop = (0..k)
            .find(|&idx| have + s.bound[idx] < target)
            .unwrap_or(k);
        // a suffix whose colouring is one too large may still be refuted:
        // a clique of the target size would take one vertex from every class
        if stop > 0 && have + s.bound[stop - 1] == target {
            s.suffix.clear();
            s.suffix.resize(words, 0);
            for &v in &s.verts[stop..] {
                s.suffix[v / 64] |= 1 << (v % 64);
            }
            while stop > 0 && have + s.bound[stop - 1] == target {
                let v = s.verts[stop - 1];
                s.suffix[v / 64] |= 1 << (v % 64);
                if !self.classes_refuted(&s.classes[..colours * words], &s.suffix, &mut s.work) {
                    break;
                }
                stop -= 1;
            }
        }

        s.cand.copy_from_slice(cand_in);
        let mut found = false;
        for idx in 0..stop {
            let v = s.verts[idx];
            s.cand[v / 64] &= !(1 << (v % 64));
            let row = self.g.row(v);
            for w in 0..words {
                s.next[w] = s.cand[w] & row[w];
            }
            self.current.push(v);
            let next = std::mem::take(&mut s.next);
            found = self.find(&next, target, depth + 1);
            s.next = next;
            if found {
                break;
            }
            self.current.pop();
        }

        self.scratch[depth] = s;
        found
    }

    /// True when no clique meets every class restricted to `within`.
    /// Singleton classes force their vertex, which trims the other classes
    /// to its neighbours; a class emptied this way is a contradiction. When
    /// propagation stalls, each vertex of the smallest class is tried once.
    fn classes_refuted(&self, classes: &[u64], within: &[u64], work: &mut Vec<u64>) -> bool {
        let words = self.g.words;
        work.clear();
        for class in classes.chunks(words) {
            if class.iter().zip(within).any(|(a, b)| a & b != 0) {
                work.extend(class.iter().zip(within).map(|(a, b)| a & b));
            }
        }
        if propagate(self.g, work, words) {
            return true;
        }
        // failed literals on the smallest open class
        let Some(c) = work
            .chunks(words)
            .enumerate()
            .filter(|(_, cl)| popcount(cl) > 1)
            .min_by_key(|(_, cl)| popcount(cl))
            .map(|(c, _)| c)
        else {
            return false;
        };
        let class: Vec<u64> = work[c * words..(c + 1) * words].to_vec();
        let mut trial = Vec::with_capacity(work.len());
        for (w, &bits) in class.iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                let u = w * 64 + b.trailing_zeros() as usize;
                b &= b - 1;
                trial.clear();
                trial.extend_from_slice(work);
                trial[c * words..(c + 1) * words].iter_mut().for_each(|x| *x = 0);
                trial[c * words + u / 64] = 1 << (u % 64);
                if !propagate(self.g, &mut trial, words) {
                    return false;
                }
            }
        }
        true
    }
}

/// Unit propagation over class bitsets; cleared classes are satisfied.
/// Returns true on a contradiction.
fn propagate(g: &BitGraph, work: &mut [u64], words: usize) -> bool {
    let m = work.len() / words;
    let mut open = m;
    let mut done = vec![false; m];
    while open > 0 {
        let Some(c) = (0..m).find(|&c| !done[c] && popcount(&work[c * words..(c + 1) * words]) == 1) else {
            return false;
        };
        let w = (0..words).find(|&w| work[c * words + w] != 0).unwrap();
        let u = w * 64 + work[c * words + w].trailing_zeros() as usize;
        done[c] = true;
        open -= 1;
        let row = g.row(u);
        for d in 0..m {
            if done[d] {
                continue;
            }
            let mut any = 0;
            for w in 0..words {
                work[d * words + w] &= row[w];
                any |= work[d * words + w];
            }
            if any == 0 {
                return true;
            }
        }
    }
    false
}
