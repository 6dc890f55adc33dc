//! Bitmask kernel for subsets of `[n]` and families of them.
//!
//! Element `e` of `[n]` lives at bit `e - 1`. Every public entry point that
//! takes or yields elements uses the 1-based numbering; bit positions only
//! show up through [`SetMask::bits`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 62;
/// Largest `n` accepted by [`power_set`].
pub const MAX_POWER_SET_N: usize = 20;
/// Largest member count produced by [`k_subsets`].
pub const MAX_K_SUBSETS: u128 = 10_000_000;

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// `binomial` extended to signed arguments, zero outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::size_limit("ground size", n as u128, MAX_GROUND as u128))
    } else {
        Ok(())
    }
}

/// A subset of `[n]`, `n <= 62`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetMask {
    bits: u64,
    ground: u8,
}

impl SetMask {
    pub fn new(bits: u64, ground_size: usize) -> Result<Self> {
        check_ground(ground_size)?;
        if bits & !low_bits(ground_size) != 0 {
            return Err(Error::domain(format!(
                "mask {bits:#x} has bits outside a ground set of size {ground_size}"
            )));
        }
        Ok(SetMask {
            bits,
            ground: ground_size as u8,
        })
    }

    pub(crate) fn from_raw(bits: u64, ground_size: usize) -> Self {
        debug_assert!(bits & !low_bits(ground_size) == 0);
        SetMask {
            bits,
            ground: ground_size as u8,
        }
    }

    pub fn empty(ground_size: usize) -> Result<Self> {
        Self::new(0, ground_size)
    }

    /// The whole ground set `[n]`.
    pub fn full(ground_size: usize) -> Result<Self> {
        check_ground(ground_size)?;
        Ok(Self::from_raw(low_bits(ground_size), ground_size))
    }

    /// Builds a set from 1-based elements; order and repeats are irrelevant.
    pub fn from_elements(elements: &[usize], ground_size: usize) -> Result<Self> {
        check_ground(ground_size)?;
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > ground_size {
                return Err(Error::domain(format!(
                    "element {e} is outside [{ground_size}]"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self::from_raw(bits, ground_size))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn ground_size(self) -> usize {
        self.ground as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= self.ground_size() && self.bits >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn intersects(self, other: SetMask) -> bool {
        self.bits & other.bits != 0
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        BitIter(self.bits).map(|b| b + 1)
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Iterates the set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}

/// A duplicate-free family of subsets of `[n]`, kept in increasing numeric
/// order of the masks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    ground: u8,
    members: Vec<u64>,
}

impl Family {
    /// Builds a family from arbitrary masks, sorting and deduplicating.
    pub fn new(ground_size: usize, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        check_ground(ground_size)?;
        let limit = low_bits(ground_size);
        let mut members: Vec<u64> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|&&m| m & !limit != 0) {
            return Err(Error::domain(format!(
                "mask {bad:#x} has bits outside a ground set of size {ground_size}"
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family {
            ground: ground_size as u8,
            members,
        })
    }

    pub fn from_sets(ground_size: usize, sets: impl IntoIterator<Item = SetMask>) -> Result<Self> {
        let mut bits = Vec::new();
        for s in sets {
            if s.ground_size() != ground_size {
                return Err(Error::domain(format!(
                    "set over ground size {} in a family over {ground_size}",
                    s.ground_size()
                )));
            }
            bits.push(s.bits());
        }
        Self::new(ground_size, bits)
    }

    /// Caller guarantees `members` is strictly increasing and within the ground set.
    pub(crate) fn from_sorted(ground_size: usize, members: Vec<u64>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|&m| m & !low_bits(ground_size) == 0));
        Family {
            ground: ground_size as u8,
            members,
        }
    }

    pub fn empty(ground_size: usize) -> Result<Self> {
        Self::new(ground_size, std::iter::empty())
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.ground as usize
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Raw masks in canonical order.
    #[inline]
    pub fn masks(&self) -> &[u64] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SetMask> + '_ {
        let g = self.ground_size();
        self.members.iter().map(move |&b| SetMask::from_raw(b, g))
    }

    #[inline]
    pub fn contains_mask(&self, bits: u64) -> bool {
        self.members.binary_search(&bits).is_ok()
    }

    pub fn contains(&self, set: SetMask) -> bool {
        set.ground_size() == self.ground_size() && self.contains_mask(set.bits())
    }

    /// Position of `bits` in canonical order.
    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.members.binary_search(&bits).ok()
    }

    /// Union of all members.
    pub fn union_mask(&self) -> u64 {
        self.members.iter().fold(0, |acc, &m| acc | m)
    }

    /// Subfamily keeping members that satisfy `pred`.
    pub fn filter(&self, mut pred: impl FnMut(u64) -> bool) -> Family {
        Family::from_sorted(
            self.ground_size(),
            self.members.iter().copied().filter(|&m| pred(m)).collect(),
        )
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.ground == other.ground && self.members.iter().all(|&m| other.contains_mask(m))
    }

    /// Sizes of the members, if all share one; `None` for an empty family.
    pub fn uniform_size(&self) -> Option<Option<usize>> {
        let mut sizes = self.members.iter().map(|m| m.count_ones() as usize);
        match sizes.next() {
            None => Some(None),
            Some(first) => {
                if sizes.all(|s| s == first) {
                    Some(Some(first))
                } else {
                    None
                }
            }
        }
    }

    /// Renders the family text format: a `n=<ground>` header followed by one
    /// set per line, `-` for the empty set.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.ground);
        for s in self.iter() {
            out.push_str(&format_set(s));
            out.push('\n');
        }
        out
    }

    /// Parses the family text format. Lines starting with `#` are sidecar
    /// annotations and are skipped. Members must appear in canonical order.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.starts_with('#'));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n=<ground_size>` header"))?;
        let ground = parse_header_n(header).ok_or_else(|| {
            Error::parse(hline, format!("expected `n=<ground_size>`, found `{header}`"))
        })?;
        if ground > MAX_GROUND {
            return Err(Error::parse(hline, format!("ground size {ground} exceeds {MAX_GROUND}")));
        }
        let mut members = Vec::new();
        for (lineno, line) in lines {
            let set = parse_set(line, ground).map_err(|m| Error::parse(lineno, m))?;
            if let Some(&last) = members.last() {
                if set.bits() <= last {
                    return Err(Error::parse(lineno, "sets out of canonical order or repeated"));
                }
            }
            members.push(set.bits());
        }
        Ok(Family::from_sorted(ground, members))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}) ", self.ground)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

fn parse_header_n(line: &str) -> Option<usize> {
    line.trim().strip_prefix("n=")?.trim().parse().ok()
}

/// One set line: `-` or comma-separated increasing 1-based elements.
pub fn format_set(s: SetMask) -> String {
    if s.is_empty() {
        return "-".to_string();
    }
    let parts: Vec<String> = s.elements().map(|e| e.to_string()).collect();
    parts.join(",")
}

pub fn parse_set(line: &str, ground: usize) -> std::result::Result<SetMask, String> {
    let line = line.trim();
    if line == "-" {
        return Ok(SetMask::from_raw(0, ground));
    }
    if line.is_empty() {
        return Err("empty line; write the empty set as `-`".into());
    }
    let mut bits = 0u64;
    let mut prev = 0usize;
    for tok in line.split(',') {
        let e: usize = tok
            .trim()
            .parse()
            .map_err(|_| format!("`{tok}` is not an element"))?;
        if e == 0 || e > ground {
            return Err(format!("element {e} is outside [{ground}]"));
        }
        if e <= prev {
            return Err("elements must be strictly increasing".into());
        }
        prev = e;
        bits |= 1 << (e - 1);
    }
    Ok(SetMask::from_raw(bits, ground))
}

/// All `2^n` subsets of `[n]`.
pub fn power_set(n: usize) -> Result<Family> {
    if n > MAX_POWER_SET_N {
        return Err(Error::size_limit("power set ground size", n as u128, MAX_POWER_SET_N as u128));
    }
    Ok(Family::from_sorted(n, (0..1u64 << n).collect()))
}

/// All `r`-element subsets of `[n]`; empty when `r > n`.
pub fn k_subsets(n: usize, r: usize) -> Result<Family> {
    check_ground(n)?;
    if r > n {
        return Ok(Family::from_sorted(n, Vec::new()));
    }
    let count = binomial(n as u64, r as u64);
    if count > MAX_K_SUBSETS {
        return Err(Error::size_limit("k-subset count", count, MAX_K_SUBSETS));
    }
    Ok(Family::from_sorted(n, r_subsets_of_low_bits(n, r)))
}

/// Gosper's hack: every `r`-bit word below `2^n`, ascending.
pub(crate) fn r_subsets_of_low_bits(n: usize, r: usize) -> Vec<u64> {
    if r > n {
        return Vec::new();
    }
    if r == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n as u64, r as u64) as usize);
    let end = 1u64 << n;
    let mut v = low_bits(r);
    while v < end {
        out.push(v);
        let t = v | (v - 1);
        v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
    }
    out
}

/// The `r`-element members of `family`.
pub fn slice(family: &Family, r: usize) -> Family {
    family.filter(|m| m.count_ones() as usize == r)
}

/// `F(x)`: members containing element `x`.
pub fn star(family: &Family, x: usize) -> Result<Family> {
    if x == 0 || x > family.ground_size() {
        return Err(Error::domain(format!(
            "element {x} is outside [{}]",
            family.ground_size()
        )));
    }
    let bit = 1u64 << (x - 1);
    Ok(family.filter(|m| m & bit != 0))
}

/// Every two members (a member with itself included) intersect.
pub fn is_intersecting(family: &Family) -> bool {
    let m = family.masks();
    m.iter().enumerate().all(|(i, &a)| m[i..].iter().all(|&b| a & b != 0))
}

/// Every member of `a` meets every member of `b`.
pub fn are_cross_intersecting(a: &Family, b: &Family) -> Result<bool> {
    if a.ground_size() != b.ground_size() {
        return Err(Error::domain(format!(
            "ground sizes differ: {} vs {}",
            a.ground_size(),
            b.ground_size()
        )));
    }
    Ok(a.masks().iter().all(|&x| b.masks().iter().all(|&y| x & y != 0)))
}
