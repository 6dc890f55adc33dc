//! Seeded random instances for the sampled suites.

use crate::rng::SplitMix64;
use crate::sets::{power_set, Family};
use crate::weights::{rational, Rational, WeightVector};
use crate::error::Result;

/// A random intersecting subfamily of the non-empty members of `family`.
///
/// Members are visited in a shuffled order and kept, with a per-call
/// acceptance rate, whenever they meet everything kept so far. The first
/// visited member is always kept, so the result is empty only when
/// `family` has no non-empty member.
pub fn random_intersecting_subfamily(rng: &mut SplitMix64, family: &Family) -> Family {
    let mut order: Vec<u64> = family.masks().iter().copied().filter(|&m| m != 0).collect();
    rng.shuffle(&mut order);
    let rate = rng.range_inclusive(1, 4);
    let mut kept: Vec<u64> = Vec::new();
    for m in order {
        if !kept.is_empty() && !rng.chance(rate, 4) {
            continue;
        }
        if kept.iter().all(|&k| k & m != 0) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    Family::from_sorted(family.ground_size(), kept)
}

/// Non-empty subsets of `[n]` meeting every member of `a`.
pub fn compatible_family(n: usize, a: &Family) -> Result<Family> {
    Ok(power_set(n)?.filter(|s| s != 0 && a.masks().iter().all(|&m| m & s != 0)))
}

/// A random `B` cross-intersecting with `a`. It is never empty: `[n]` is
/// added when the draw keeps nothing.
pub fn random_cross_partner(rng: &mut SplitMix64, n: usize, a: &Family) -> Result<Family> {
    let compatible = compatible_family(n, a)?;
    let rate = rng.range_inclusive(1, 4);
    let mut kept: Vec<u64> = compatible
        .masks()
        .iter()
        .copied()
        .filter(|_| rng.chance(rate, 4))
        .collect();
    if kept.is_empty() {
        kept.push(crate::sets::low_bits(n));
    }
    Ok(Family::from_sorted(n, kept))
}

/// A random pair of non-empty families of subsets of `[n]` with `A`
/// intersecting and `(A, B)` cross-intersecting.
pub fn random_valid_pair(rng: &mut SplitMix64, n: usize) -> Result<(Family, Family)> {
    let a = random_intersecting_subfamily(rng, &power_set(n)?);
    let b = random_cross_partner(rng, n, &a)?;
    Ok((a, b))
}

/// Numerator in `0..=20`, denominator in `1..=6`.
fn random_weight(rng: &mut SplitMix64) -> Rational {
    rational(rng.range_inclusive(0, 20) as i64, rng.range_inclusive(1, 6) as i64)
}

/// A random weight pair satisfying both hypotheses of the weighted bound.
///
/// For each `i <= n/2` with `j = n - i`, the upper weights `a_j, b_j` are
/// drawn first, then `b_i` as a fraction of `a_j` in steps of sixths, then
/// `a_i` as the least value keeping `a_i + b_i >= a_j + b_j` plus a random
/// surplus.
pub fn random_weight_pair(rng: &mut SplitMix64, n: usize) -> (WeightVector, WeightVector) {
    let zero = Rational::default();
    let mut a = vec![zero.clone(); n + 1];
    let mut b = vec![zero.clone(); n + 1];
    for i in 0..=n / 2 {
        let j = n - i;
        let fraction = rational(rng.range_inclusive(0, 6) as i64, 6);
        if i == j {
            a[i] = random_weight(rng);
            b[i] = a[i].clone() * fraction;
            continue;
        }
        a[j] = random_weight(rng);
        b[j] = random_weight(rng);
        b[i] = a[j].clone() * fraction;
        let floor = a[j].clone() + &b[j] - &b[i];
        let floor = if floor < zero { zero.clone() } else { floor };
        a[i] = floor + random_weight(rng);
    }
    (
        WeightVector::new(a).expect("weights are non-negative"),
        WeightVector::new(b).expect("weights are non-negative"),
    )
}
