//! Maximum of the weighted sum over cross-intersecting pairs `(A, B)` with
//! `A` intersecting.
//!
//! Weights are non-negative, so once `A` is fixed the best `B` is every
//! non-empty set meeting all of `A`. The exhaustive mode therefore walks the
//! intersecting families `A` only.

use super::{Scalar, SearchVerdict, StarInfo, StarProperty, Witness};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::sample::random_valid_pair;
use crate::sets::Family;
use crate::weights::{star_rhs, thm2_condition_violation, weighted_sum, Rational, WeightVector};

/// Largest `n` for the exhaustive walk (`2^15 - 1` candidate members would
/// already be far too many at `n = 5`).
pub const MAX_EXHAUSTIVE_PAIR_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    Exhaustive,
    /// Best of `trials` random valid pairs drawn from `seed`.
    Sampled { seed: u64, trials: u64 },
}

fn validate(n: usize, a: &WeightVector, b: &WeightVector) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("pairs of non-empty families need n >= 1"));
    }
    if a.n() != n || b.n() != n {
        return Err(Error::domain(format!(
            "weights are for n={} and n={}, expected n={n}",
            a.n(),
            b.n()
        )));
    }
    if let Some(v) = thm2_condition_violation(a, b)? {
        return Err(Error::domain(format!("weights fail the hypotheses: {v:?}")));
    }
    Ok(())
}

pub fn max_weighted_pair(
    n: usize,
    a: &WeightVector,
    b: &WeightVector,
    mode: PairMode,
) -> Result<SearchVerdict> {
    validate(n, a, b)?;
    let star = star_rhs(a, b)?;
    let (best, nodes, seed) = match mode {
        PairMode::Exhaustive => {
            let walk = Walk::new(n, a, b)?;
            let mut best: Option<(Rational, u32, u32)> = None;
            let mut nodes = 0;
            walk.run(|fa, fb, value| {
                nodes += 1;
                if best.as_ref().is_none_or(|(v, _, _)| value > v) {
                    best = Some((value.clone(), fa, fb));
                }
            });
            let (v, fa, fb) = best.expect("the family {[n]} is always visited");
            ((v, walk.family(fa), walk.family(fb)), nodes, None)
        }
        PairMode::Sampled { seed, trials } => {
            if trials == 0 {
                return Err(Error::domain("sampled mode needs at least one trial"));
            }
            let mut rng = SplitMix64::new(seed);
            let mut best: Option<(Rational, Family, Family)> = None;
            for _ in 0..trials {
                let (fa, fb) = random_valid_pair(&mut rng, n)?;
                let value = weighted_sum(&fa, a)? + weighted_sum(&fb, b)?;
                if best.as_ref().is_none_or(|(v, _, _)| &value > v) {
                    best = Some((value, fa, fb));
                }
            }
            (best.unwrap(), trials, Some(seed))
        }
    };
    let (value, fa, fb) = best;
    Ok(SearchVerdict {
        star_property: if value <= star {
            StarProperty::Holds
        } else {
            StarProperty::Fails
        },
        optimum: Scalar::Exact(value),
        witness: Witness::Pair(fa, fb),
        largest_star: Some(StarInfo {
            element: 1,
            size: Scalar::Exact(star),
        }),
        nodes,
        seed,
    })
}

/// Every intersecting `A` attaining the exhaustive optimum, in canonical
/// order, with its full compatible partner.
pub fn weighted_pair_optima(
    n: usize,
    a: &WeightVector,
    b: &WeightVector,
) -> Result<(Rational, Vec<(Family, Family)>)> {
    validate(n, a, b)?;
    let walk = Walk::new(n, a, b)?;
    let mut best: Option<Rational> = None;
    let mut optima: Vec<(u32, u32)> = Vec::new();
    walk.run(|fa, fb, value| match best.as_ref().map(|v| value.cmp(v)) {
        None | Some(std::cmp::Ordering::Greater) => {
            best = Some(value.clone());
            optima.clear();
            optima.push((fa, fb));
        }
        Some(std::cmp::Ordering::Equal) => optima.push((fa, fb)),
        Some(std::cmp::Ordering::Less) => {}
    });
    let pairs = optima
        .into_iter()
        .map(|(fa, fb)| (walk.family(fa), walk.family(fb)))
        .collect();
    Ok((best.unwrap(), pairs))
}

/// Families over `[n]`, `n <= 4`, as bitsets indexed by member mask.
struct Walk {
    n: usize,
    /// `meets[s]`: the sets meeting `s`
    meets: Vec<u32>,
    wa: Vec<Rational>,
    wb: Vec<Rational>,
}

impl Walk {
    fn new(n: usize, a: &WeightVector, b: &WeightVector) -> Result<Self> {
        if n > MAX_EXHAUSTIVE_PAIR_N {
            return Err(Error::size_limit(
                "exhaustive pair search ground size",
                n as u128,
                MAX_EXHAUSTIVE_PAIR_N as u128,
            ));
        }
        let sets = 1usize << n;
        let meets = (0..sets)
            .map(|s| (0..sets).filter(|&t| s & t != 0).fold(0u32, |acc, t| acc | 1 << t))
            .collect();
        let size = |s: usize| s.count_ones() as usize;
        Ok(Walk {
            n,
            meets,
            wa: (0..sets).map(|s| a.get(size(s)).clone()).collect(),
            wb: (0..sets).map(|s| b.get(size(s)).clone()).collect(),
        })
    }

    fn family(&self, bits: u32) -> Family {
        Family::from_sorted(self.n, (0..32).filter(|&s| bits >> s & 1 == 1).collect())
    }

    fn value(&self, fa: u32, fb: u32) -> Rational {
        let mut v = Rational::default();
        for s in 0..self.meets.len() {
            if fa >> s & 1 == 1 {
                v += &self.wa[s];
            }
            if fb >> s & 1 == 1 {
                v += &self.wb[s];
            }
        }
        v
    }

    /// Calls `visit(A, B, value)` for every non-empty intersecting `A`, in
    /// lexicographic order of member lists, with `B` its compatible family.
    fn run(&self, mut visit: impl FnMut(u32, u32, &Rational)) {
        let all = (1u64 << self.meets.len()) as u32 - 1;
        // the empty set meets nothing, so start the candidates at mask 1
        self.descend(0, all & !1, all & !1, &mut visit);
    }

    fn descend(&self, fa: u32, cand: u32, compat: u32, visit: &mut impl FnMut(u32, u32, &Rational)) {
        let mut rest = cand;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next_a = fa | 1 << s;
            let next_compat = compat & self.meets[s];
            visit(next_a, next_compat, &self.value(next_a, next_compat));
            self.descend(next_a, rest & self.meets[s], next_compat, visit);
        }
    }
}
