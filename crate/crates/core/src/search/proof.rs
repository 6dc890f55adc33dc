//! Step-by-step replay of the weighted cross-intersecting bound for one pair.

use crate::error::{Error, Result};
use crate::sets::{are_cross_intersecting, binomial, is_intersecting, Family};
use crate::weights::{
    integer, rational_to_string, size_profile, star_rhs, weighted_sum, Inequality, ProofStep,
    ProofTrace, Rational, WeightVector,
};

/// Recomputes every inequality of the counting argument for `(A, B)`
/// under weights `(a, b)`. The weights are not required to satisfy the
/// hypotheses; if they do not, the affected inequalities are recorded as
/// failing.
pub fn thm2_proof_trace(
    fa: &Family,
    fb: &Family,
    a: &WeightVector,
    b: &WeightVector,
) -> Result<ProofTrace> {
    let n = fa.ground_size();
    if fb.ground_size() != n || a.n() != n || b.n() != n {
        return Err(Error::domain(format!(
            "ground sizes differ: A over [{}], B over [{}], weights for n={} and n={}",
            n,
            fb.ground_size(),
            a.n(),
            b.n()
        )));
    }
    if fa.is_empty() || fb.is_empty() {
        return Err(Error::domain("both families must be non-empty"));
    }
    if !is_intersecting(fa) {
        return Err(Error::domain("A is not intersecting"));
    }
    if !are_cross_intersecting(fa, fb)? {
        return Err(Error::domain("A and B are not cross-intersecting"));
    }

    let pa = size_profile(fa);
    let pb = size_profile(fb);
    let count = |x: u64| integer(x.into());
    let c: Vec<Rational> = (0..=n)
        .map(|i| count(pa[i]) * a.get(i) + count(pb[i]) * b.get(i))
        .collect();
    // |B^(i) \ A^(i)|
    let b_only: Vec<u64> = (0..=n)
        .map(|i| {
            fb.masks()
                .iter()
                .filter(|&&m| m.count_ones() as usize == i && !fa.contains_mask(m))
                .count() as u64
        })
        .collect();

    let mut steps = Vec::new();
    let mut telescoped = a.get(n) + b.get(n);
    for r in 1..=n / 2 {
        let s = n - r;
        let total = integer(binomial(n as u64, r as u64));
        let ekr = integer(binomial(n as u64 - 1, r as u64 - 1));
        let ar = count(pa[r]);
        let bo = count(b_only[r]);
        let (a_r, b_r, a_s, b_s) = (a.get(r), b.get(r), a.get(s), b.get(s));

        let a_complement_bound = Inequality::le(&count(pa[s]), &(total.clone() - &ar - &bo));
        let b_complement_bound = Inequality::le(&count(pb[s]), &(total.clone() - &ar));
        let ekr_bound = Inequality::le(&ar, &ekr);

        let lhs = c[r].clone() + &c[s];
        let counting = ar.clone() * a_r
            + ar.clone() * b_r
            + bo.clone() * b_r
            + (total.clone() - &ar - &bo) * a_s
            + (total.clone() - &ar) * b_s;
        // the same quantity regrouped, where the hypotheses make the first
        // coefficient non-negative and the second non-positive
        let lead = a_r + b_r - a_s - b_s;
        let regrouped =
            ar.clone() * &lead - bo.clone() * (a_s - b_r) + total.clone() * (a_s + b_s);
        debug_assert_eq!(counting, regrouped);
        let substituted = ekr.clone() * &lead + total.clone() * (a_s + b_s);
        let tail = integer(binomial(n as u64 - 1, s as u64 - 1));
        let combined = ekr.clone() * (a_r + b_r) + tail * (a_s + b_s);

        let counting_bound = Inequality::le(&lhs, &counting);
        let ekr_substitution = Inequality::le(&regrouped, &substituted);
        let pascal_identity = Inequality::eq(&substituted, &combined);
        let combined_bound = Inequality::le(&lhs, &combined);
        let half_bound = (2 * r == n).then(|| Inequality::le(&c[r], &(ekr.clone() * (a_r + b_r))));
        if 2 * r == n {
            telescoped += ekr * (a_r + b_r);
        } else {
            telescoped += &combined;
        }

        let pass = [
            &a_complement_bound,
            &b_complement_bound,
            &ekr_bound,
            &counting_bound,
            &ekr_substitution,
            &pascal_identity,
            &combined_bound,
        ]
        .iter()
        .all(|q| q.holds)
            && half_bound.as_ref().is_none_or(|q| q.holds);
        steps.push(ProofStep {
            r,
            c_r: rational_to_string(&c[r]),
            c_n_minus_r: rational_to_string(&c[s]),
            a_complement_bound,
            b_complement_bound,
            ekr_bound,
            counting_bound,
            ekr_substitution,
            pascal_identity,
            combined_bound,
            half_bound,
            pass,
        });
    }

    let sum_c = c.iter().fold(Rational::default(), |acc, x| acc + x);
    let value = weighted_sum(fa, a)? + weighted_sum(fb, b)?;
    let c0_zero = c[0] == Rational::default();
    let top_bound = Inequality::le(&c[n], &(a.get(n) + b.get(n)));
    let total_decomposition = Inequality::eq(&value, &sum_c);
    let telescoped_bound = Inequality::le(&sum_c, &telescoped);
    let star_identity = Inequality::eq(&telescoped, &star_rhs(a, b)?);
    let pass = c0_zero
        && top_bound.holds
        && total_decomposition.holds
        && telescoped_bound.holds
        && star_identity.holds
        && steps.iter().all(|s| s.pass);
    Ok(ProofTrace {
        n,
        c: c.iter().map(rational_to_string).collect(),
        c0_zero,
        steps,
        top_bound,
        total_decomposition,
        telescoped_bound,
        star_identity,
        pass,
    })
}
