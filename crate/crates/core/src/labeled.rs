//! The labeled universe `[n] x [k]`, partial transversals `L_{n,k}` and the
//! label compressions that push every label towards 1.
//!
//! The pair `(i, j)` is element `(i - 1) * k + j` of the ground set
//! `[n * k]`, so bit `(i - 1) * k + (j - 1)`. Indices occupy contiguous blocks
//! of `k` bits; the label-1 layer `X_n` is the lowest bit of every block.

use crate::error::{Error, Result};
use crate::sets::{self, binomial, low_bits, BitIter, Family, SetMask, MAX_GROUND};

/// Largest member count produced by [`enumerate_lnk`].
pub const MAX_LNK_MEMBERS: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabeledUniverse {
    n: usize,
    k: usize,
}

impl LabeledUniverse {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("label count k must be at least 1"));
        }
        if n * k > MAX_GROUND {
            return Err(Error::size_limit("labeled ground size n*k", (n * k) as u128, MAX_GROUND as u128));
        }
        Ok(LabeledUniverse { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ground_size(&self) -> usize {
        self.n * self.k
    }

    /// 1-based ground element of `(i, j)`.
    pub fn encode(&self, i: usize, j: usize) -> Result<usize> {
        self.check_pair(i, j)?;
        Ok((i - 1) * self.k + j)
    }

    pub fn decode(&self, element: usize) -> Result<(usize, usize)> {
        if element == 0 || element > self.ground_size() {
            return Err(Error::domain(format!(
                "element {element} is outside [{}]",
                self.ground_size()
            )));
        }
        let b = element - 1;
        Ok((b / self.k + 1, b % self.k + 1))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > self.n || j == 0 || j > self.k {
            return Err(Error::domain(format!(
                "({i},{j}) is outside [{}] x [{}]",
                self.n, self.k
            )));
        }
        Ok(())
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> u64 {
        1u64 << ((i - 1) * self.k + (j - 1))
    }

    #[inline]
    fn block(&self, i: usize) -> u64 {
        low_bits(self.k) << ((i - 1) * self.k)
    }

    /// Mask of `X_n = {(i, 1) : i in [n]}`.
    pub fn x_mask(&self) -> u64 {
        (1..=self.n).fold(0, |acc, i| acc | self.bit(i, 1))
    }

    /// No index carries two labels, i.e. the set lies in `L_{n,k}`.
    pub fn has_distinct_indices(&self, bits: u64) -> bool {
        (1..=self.n).all(|i| (bits & self.block(i)).count_ones() <= 1)
    }

    pub fn set_from_pairs(&self, pairs: &[(usize, usize)]) -> Result<SetMask> {
        let mut bits = 0;
        for &(i, j) in pairs {
            self.check_pair(i, j)?;
            bits |= self.bit(i, j);
        }
        Ok(SetMask::from_raw(bits, self.ground_size()))
    }

    /// `(index, label)` pairs of a set, ascending.
    pub fn pairs(&self, bits: u64) -> Vec<(usize, usize)> {
        BitIter(bits).map(|b| (b / self.k + 1, b % self.k + 1)).collect()
    }

    pub fn format_set(&self, bits: u64) -> String {
        if bits == 0 {
            return "-".into();
        }
        let parts: Vec<String> = self
            .pairs(bits)
            .into_iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        parts.join(",")
    }

    /// Labeled-set text format: `n=<n> k=<k>` header, then one set per line.
    pub fn to_text(&self, family: &Family) -> String {
        let mut out = format!("n={} k={}\n", self.n, self.k);
        for &m in family.masks() {
            out.push_str(&self.format_set(m));
            out.push('\n');
        }
        out
    }

    /// Parses the labeled-set text format, returning the universe from the header.
    pub fn parse_text(text: &str) -> Result<(LabeledUniverse, Family)> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n=<n> k=<k>` header"))?;
        let mut n = None;
        let mut k = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = v.parse().ok();
            } else if let Some(v) = tok.strip_prefix("k=") {
                k = v.parse().ok();
            }
        }
        let (Some(n), Some(k)) = (n, k) else {
            return Err(Error::parse(hl, format!("expected `n=<n> k=<k>`, found `{header}`")));
        };
        let u = LabeledUniverse::new(n, k).map_err(|e| Error::parse(hl, e.to_string()))?;
        let mut members = Vec::new();
        for (lineno, line) in lines {
            let bits = u.parse_set(line).map_err(|m| Error::parse(lineno, m))?;
            if members.last().is_some_and(|&last| bits <= last) {
                return Err(Error::parse(lineno, "sets out of canonical order or repeated"));
            }
            members.push(bits);
        }
        Ok((u, Family::from_sorted(u.ground_size(), members)))
    }

    fn parse_set(&self, line: &str) -> std::result::Result<u64, String> {
        if line == "-" {
            return Ok(0);
        }
        if line.is_empty() {
            return Err("empty line; write the empty set as `-`".into());
        }
        let mut bits = 0u64;
        let mut rest = line;
        loop {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| format!("expected `(i,j)` at `{rest}`"))?;
            let close = open.find(')').ok_or("unclosed pair")?;
            let (inner, tail) = open.split_at(close);
            let (i, j) = inner.split_once(',').ok_or("pair needs two components")?;
            let i: usize = i.trim().parse().map_err(|_| format!("bad index `{i}`"))?;
            let j: usize = j.trim().parse().map_err(|_| format!("bad label `{j}`"))?;
            self.check_pair(i, j).map_err(|e| e.to_string())?;
            let b = self.bit(i, j);
            if b <= bits {
                return Err("pairs must be strictly increasing".into());
            }
            bits |= b;
            rest = &tail[1..];
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix(',').ok_or("pairs must be comma-separated")?;
        }
        Ok(bits)
    }

    fn check_family(&self, family: &Family) -> Result<()> {
        if family.ground_size() != self.ground_size() {
            return Err(Error::domain(format!(
                "family ground size {} does not match n*k = {}",
                family.ground_size(),
                self.ground_size()
            )));
        }
        Ok(())
    }

    /// Checks `family` is contained in a single slice `L_{n,k}^(r)`.
    fn check_uniform_lnk(&self, family: &Family) -> Result<()> {
        self.check_family(family)?;
        if family.uniform_size().is_none() {
            return Err(Error::domain("family mixes set sizes; compressions act on one slice"));
        }
        if let Some(&bad) = family.masks().iter().find(|&&m| !self.has_distinct_indices(m)) {
            return Err(Error::domain(format!(
                "{} repeats an index and is not in L_{{n,k}}",
                self.format_set(bad)
            )));
        }
        Ok(())
    }
}

/// `L_{n,k}^(r)`: `r` labeled elements with pairwise distinct indices.
pub fn enumerate_lnk(u: &LabeledUniverse, r: usize) -> Result<Family> {
    if r > u.n {
        return Ok(Family::from_sorted(u.ground_size(), Vec::new()));
    }
    let count = binomial(u.n as u64, r as u64) * (u.k as u128).pow(r as u32);
    if count > MAX_LNK_MEMBERS {
        return Err(Error::size_limit("L_{n,k}^(r) member count", count, MAX_LNK_MEMBERS));
    }
    let mut out = Vec::with_capacity(count as usize);
    for idx in sets::r_subsets_of_low_bits(u.n, r) {
        let indices: Vec<usize> = BitIter(idx).map(|b| b + 1).collect();
        // odometer over label choices
        let mut labels = vec![1usize; r];
        loop {
            out.push(
                indices
                    .iter()
                    .zip(&labels)
                    .fold(0u64, |acc, (&i, &j)| acc | u.bit(i, j)),
            );
            let mut pos = 0;
            while pos < r && labels[pos] == u.k {
                labels[pos] = 1;
                pos += 1;
            }
            if pos == r {
                break;
            }
            labels[pos] += 1;
        }
    }
    out.sort_unstable();
    Ok(Family::from_sorted(u.ground_size(), out))
}

/// `delta_{i,j}`: swap `(i, j)` for `(i, 1)` when present.
pub fn delta(u: &LabeledUniverse, i: usize, j: usize, set: SetMask) -> Result<SetMask> {
    check_compression(u, i, j)?;
    if set.ground_size() != u.ground_size() {
        return Err(Error::domain("set ground size does not match n*k"));
    }
    if !u.has_distinct_indices(set.bits()) {
        return Err(Error::domain(format!(
            "{} repeats an index and is not in L_{{n,k}}",
            u.format_set(set.bits())
        )));
    }
    Ok(SetMask::from_raw(delta_bits(u, i, j, set.bits()), u.ground_size()))
}

fn check_compression(u: &LabeledUniverse, i: usize, j: usize) -> Result<()> {
    u.check_pair(i, j)?;
    if j < 2 {
        return Err(Error::domain(format!("compression label must be at least 2, got {j}")));
    }
    Ok(())
}

#[inline]
fn delta_bits(u: &LabeledUniverse, i: usize, j: usize, bits: u64) -> u64 {
    let from = u.bit(i, j);
    if bits & from != 0 {
        (bits & !from) | u.bit(i, 1)
    } else {
        bits
    }
}

/// `Delta_{i,j}` on a uniform subfamily of `L_{n,k}`.
pub fn compress_family(u: &LabeledUniverse, i: usize, j: usize, family: &Family) -> Result<Family> {
    check_compression(u, i, j)?;
    u.check_uniform_lnk(family)?;
    Ok(compress_unchecked(u, i, j, family))
}

fn compress_unchecked(u: &LabeledUniverse, i: usize, j: usize, family: &Family) -> Family {
    let mut out: Vec<u64> = family
        .masks()
        .iter()
        .map(|&a| {
            let d = delta_bits(u, i, j, a);
            if d != a && family.contains_mask(d) {
                a
            } else {
                d
            }
        })
        .collect();
    out.sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "compression collided");
    Family::from_sorted(family.ground_size(), out)
}

/// The order in which [`full_compress`] applies the compressions: ascending
/// index, and ascending label within an index.
pub fn default_order(u: &LabeledUniverse) -> Vec<(usize, usize)> {
    (1..=u.n)
        .flat_map(|i| (2..=u.k).map(move |j| (i, j)))
        .collect()
}

/// Applies `Delta_{1,2}` first and `Delta_{n,k}` last.
pub fn full_compress(u: &LabeledUniverse, family: &Family) -> Result<Family> {
    full_compress_with_order(u, family, &default_order(u))
}

/// Applies the compressions in `order`, first to last. Any order may be given;
/// nothing here claims the result is independent of it.
pub fn full_compress_with_order(
    u: &LabeledUniverse,
    family: &Family,
    order: &[(usize, usize)],
) -> Result<Family> {
    u.check_uniform_lnk(family)?;
    if !sets::is_intersecting(family) {
        return Err(Error::domain("full compression expects an intersecting family"));
    }
    for &(i, j) in order {
        check_compression(u, i, j)?;
    }
    let mut current = family.clone();
    for &(i, j) in order {
        current = compress_unchecked(u, i, j, &current);
    }
    Ok(current)
}

/// `{E ∩ X_n : E in F}` as a family over `[n]`, element `i` standing for `(i, 1)`.
pub fn trace_xn(u: &LabeledUniverse, family: &Family) -> Result<Family> {
    u.check_family(family)?;
    Family::new(u.n, family.masks().iter().map(|&m| project_xn(u, m)))
}

/// `E ∩ X_n` re-encoded over `[n]`.
pub fn project_xn(u: &LabeledUniverse, bits: u64) -> u64 {
    let mut out = 0;
    for i in 1..=u.n {
        if bits & u.bit(i, 1) != 0 {
            out |= 1 << (i - 1);
        }
    }
    out
}

/// `|A ∩ B ∩ X_n| >= 1` for every pair of members, itself included.
pub fn pairs_meet_in_xn(u: &LabeledUniverse, family: &Family) -> bool {
    let x = u.x_mask();
    let m = family.masks();
    m.iter()
        .enumerate()
        .all(|(p, &a)| m[p..].iter().all(|&b| a & b & x != 0))
}
