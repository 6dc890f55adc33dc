//! Exact extremal searches and replays of the counting arguments.

pub mod case2;
pub mod clique;
pub mod proof;
pub mod weighted;

use serde::{Serialize, Serializer};

use crate::claw::{enumerate_itn, ClawLayout};
use crate::error::{Error, Result};
use crate::sets::Family;
use crate::weights::{rational_to_string, Rational};

pub use case2::{thm5_case2_bound, Case2Report};
pub use proof::thm2_proof_trace;
pub use weighted::{max_weighted_pair, PairMode};

/// Member guard for [`max_intersecting`].
pub const MAX_SEARCH_MEMBERS: usize = 5000;

/// Either a member count or an exact weighted value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Count(u64),
    Exact(Rational),
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Count(c) => s.serialize_u64(*c),
            Scalar::Exact(r) => s.serialize_str(&rational_to_string(r)),
        }
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Count(c) => write!(f, "{c}"),
            Scalar::Exact(r) => f.write_str(&rational_to_string(r)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StarProperty {
    Holds,
    Fails,
}

impl StarProperty {
    pub fn as_str(self) -> &'static str {
        match self {
            StarProperty::Holds => "holds",
            StarProperty::Fails => "fails",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarInfo {
    pub element: usize,
    pub size: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Family(Family),
    Pair(Family, Family),
}

pub(crate) fn family_lines(f: &Family) -> Vec<String> {
    f.to_text().lines().map(str::to_owned).collect()
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Witness::Family(f) => family_lines(f).serialize(s),
            Witness::Pair(a, b) => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("a", &family_lines(a))?;
                m.serialize_entry("b", &family_lines(b))?;
                m.end()
            }
        }
    }
}

/// Outcome of an exact search. `nodes` counts branch-and-bound nodes or
/// evaluated candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchVerdict {
    pub optimum: Scalar,
    pub witness: Witness,
    pub largest_star: Option<StarInfo>,
    pub star_property: StarProperty,
    pub nodes: u64,
    pub seed: Option<u64>,
}

impl SearchVerdict {
    pub fn witness_family(&self) -> Option<&Family> {
        match &self.witness {
            Witness::Family(f) => Some(f),
            Witness::Pair(..) => None,
        }
    }

    pub fn optimum_count(&self) -> Option<u64> {
        match self.optimum {
            Scalar::Count(c) => Some(c),
            Scalar::Exact(_) => None,
        }
    }
}

/// Element with the largest star (smallest element on ties) and its size.
pub fn largest_star(family: &Family) -> Result<(usize, usize)> {
    if family.union_mask() == 0 {
        return Err(Error::domain("family has no non-empty member, so no star"));
    }
    let mut counts = vec![0usize; family.ground_size()];
    for &m in family.masks() {
        let mut b = m;
        while b != 0 {
            counts[b.trailing_zeros() as usize] += 1;
            b &= b - 1;
        }
    }
    let (idx, size) = counts
        .iter()
        .enumerate()
        .fold((0, 0), |(bi, bs), (i, &c)| if c > bs { (i, c) } else { (bi, bs) });
    Ok((idx + 1, size))
}

/// Largest intersecting subfamily, lexicographically first among the
/// optima in canonical member order.
pub fn max_intersecting(family: &Family) -> Result<SearchVerdict> {
    max_intersecting_with_limit(family, MAX_SEARCH_MEMBERS)
}

pub fn max_intersecting_with_limit(family: &Family, limit: usize) -> Result<SearchVerdict> {
    if family.len() > limit {
        return Err(Error::size_limit("search family size", family.len() as u128, limit as u128));
    }
    let masks = family.masks();
    let star = largest_star(family).ok();
    let graph = clique::BitGraph::from_relation(masks.len(), |i, j| masks[i] & masks[j] != 0);
    let allowed: Vec<usize> = (0..masks.len()).filter(|&i| masks[i] != 0).collect();
    let outcome = clique::max_clique(&graph, &allowed, star.map_or(0, |(_, s)| s));
    let optimum = outcome.clique.len();
    let witness = Family::from_sorted(
        family.ground_size(),
        outcome.clique.iter().map(|&i| masks[i]).collect(),
    );
    let star_size = star.map_or(0, |(_, s)| s);
    debug_assert!(optimum >= star_size);
    Ok(SearchVerdict {
        optimum: Scalar::Count(optimum as u64),
        witness: Witness::Family(witness),
        largest_star: star.map(|(element, size)| StarInfo {
            element,
            size: Scalar::Count(size as u64),
        }),
        star_property: if optimum == star_size {
            StarProperty::Holds
        } else {
            StarProperty::Fails
        },
        nodes: outcome.nodes,
        seed: None,
    })
}

/// Star-property verdict for `I_{T_n}^(r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FjtVerdict {
    pub n: usize,
    pub r: usize,
    pub family_size: usize,
    pub verdict: SearchVerdict,
    /// `C(n-1, r-1) 2^(r-1) + C(n-1, r-2)`
    pub x1_star_size: u64,
    /// The `x_1` star attains the optimum.
    pub x1_star_optimal: bool,
    /// `r <= n - 1`, where the star property is a theorem.
    pub conjecture_range: bool,
}

pub fn fjt_verdict(n: usize, r: usize) -> Result<FjtVerdict> {
    fjt_verdict_with_limit(n, r, MAX_SEARCH_MEMBERS)
}

pub fn fjt_verdict_with_limit(n: usize, r: usize, limit: usize) -> Result<FjtVerdict> {
    let layout = ClawLayout::new(n)?;
    if r == 0 || r > n + 1 {
        return Err(Error::domain(format!("star-property check needs 1 <= r <= n+1, got n={n} r={r}")));
    }
    let family = enumerate_itn(n, r)?;
    let verdict = max_intersecting_with_limit(&family, limit)?;
    let x1 = layout.x1_star_size(r) as u64;
    let x1_star_optimal = verdict.optimum == Scalar::Count(x1);
    Ok(FjtVerdict {
        n,
        r,
        family_size: family.len(),
        verdict,
        x1_star_size: x1,
        x1_star_optimal,
        conjecture_range: r < n,
    })
}
