//! Replay of the weighted counting bound for intersecting subfamilies of
//! `I_{T_n}^(r)` when `n <= 2r - 3`.

use serde::Serialize;

use super::family_lines;
use super::proof::thm2_proof_trace;
use crate::claw::{enumerate_itn, split_x0, ClawLayout};
use crate::error::{Error, Result};
use crate::labeled::{full_compress, pairs_meet_in_xn, project_xn};
use crate::sets::{is_intersecting, low_bits, Family};
use crate::weights::{
    check_thm2_conditions, integer, proof_weights_unchecked, rational_to_string, star_rhs,
    weighted_sum, Inequality, ProofTrace,
};

fn lines<S: serde::Serializer>(f: &Family, s: S) -> std::result::Result<S::Ok, S::Error> {
    family_lines(f).serialize(s)
}

/// Every intermediate quantity of the pipeline. Families over `X_n` are
/// written over `[n]` with `i` standing for `x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case2Report {
    pub n: usize,
    pub r: usize,
    /// `r = n`, where the star property is false and the hypotheses of the
    /// weighted bound fail for these weights; the replay still runs.
    pub outside_theorem: bool,
    pub e_size: usize,
    pub e0_size: usize,
    pub e1_size: usize,
    /// `|E_0'|`, equal to `|E_0|` since compressions preserve size.
    pub e0_compressed_size: usize,
    /// Any two members of `E_0'`, equal ones included, meet in `X_n`.
    pub e0_pairs_meet_in_xn: bool,
    /// Every member of `E_0'` meets every member of `E_1'` in `X_n`.
    pub e0_e1_meet_in_xn: bool,
    #[serde(serialize_with = "lines")]
    pub trace_family: Family,
    #[serde(serialize_with = "lines")]
    pub partner_family: Family,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub conditions_hold: bool,
    /// `|{E in E_0' : E ∩ X_n = T}| <= a_{|T|}` for every trace `T`.
    pub fibres_within_weights: bool,
    /// `|E_0| <= sum of a over the trace family`
    pub e0_bound: Inequality,
    /// `|E_1| = sum of b over the partner family`
    pub e1_identity: Inequality,
    /// The weighted bound applied to the two families.
    pub weighted_bound: Inequality,
    /// `|F_0| + |F_1|` computed from the star of `x_1` in `I_{T_n}^(r)`
    /// against the weighted value of the star of `x_1` in `X_n`.
    pub star_identity: Inequality,
    /// `|E| <= |F|`
    pub final_bound: Inequality,
    pub trace: ProofTrace,
    pub pass: bool,
}

/// Runs the pipeline on an intersecting `E ⊆ I_{T_n}^(r)` with
/// `n <= 2r - 3` and `r <= n`.
pub fn thm5_case2_bound(n: usize, r: usize, e: &Family) -> Result<Case2Report> {
    let layout = ClawLayout::new(n)?;
    if r > n || n + 3 > 2 * r {
        return Err(Error::domain(format!(
            "this bound covers n <= 2r-3 and r <= n, got n={n} r={r}"
        )));
    }
    let itn = enumerate_itn(n, r)?;
    if !e.is_subfamily_of(&itn) {
        return Err(Error::domain(format!("E is not a subfamily of I_T{n}^({r})")));
    }
    if !is_intersecting(e) {
        return Err(Error::domain("E is not intersecting"));
    }

    let split = split_x0(&layout, e)?;
    let universe = layout.labeled_universe();
    let e0 = Family::new(
        universe.ground_size(),
        split.without_x0.masks().iter().map(|&m| layout.to_labeled(m)),
    )?;
    let e0c = full_compress(&universe, &e0)?;
    let e1c = &split.with_x0_removed;
    let xn = universe.x_mask();
    let proof1 = pairs_meet_in_xn(&universe, &e0c);
    // E_1' lives over [n]; the trace of E_0' is compared there
    let proof2 = e0c
        .masks()
        .iter()
        .all(|&m| e1c.masks().iter().all(|&f| project_xn(&universe, m) & f != 0));
    debug_assert!(e0c.masks().iter().all(|&m| m & xn != 0) || e0c.is_empty());

    let traces: Vec<u64> = e0c.masks().iter().map(|&m| project_xn(&universe, m)).collect();
    let trace_family = Family::new(n, traces.iter().copied())?;
    let partner_family = e1c.clone();

    let (a, b) = proof_weights_unchecked(n, r);
    let conditions_hold = check_thm2_conditions(&a, &b)?;
    let fibres_within_weights = trace_family.masks().iter().all(|&t| {
        let fibre = traces.iter().filter(|&&x| x == t).count() as u128;
        integer(fibre) <= *a.get(t.count_ones() as usize)
    });

    let sum_a = weighted_sum(&trace_family, &a)?;
    let sum_b = weighted_sum(&partner_family, &b)?;
    let e0_bound = Inequality::le(&integer(split.without_x0.len() as u128), &sum_a);
    let e1_identity = Inequality::eq(&integer(split.with_x0.len() as u128), &sum_b);
    let star_value = star_rhs(&a, &b)?;
    let weighted_bound = Inequality::le(&(sum_a.clone() + &sum_b), &star_value);
    let x1 = layout.x(1);
    let f_size = itn.masks().iter().filter(|&&m| m >> (x1 - 1) & 1 == 1).count();
    debug_assert_eq!(f_size as u128, layout.x1_star_size(r));
    let star_identity = Inequality::eq(&integer(f_size as u128), &star_value);
    let final_bound = Inequality::le(&integer(e.len() as u128), &integer(f_size as u128));

    // an empty side is replaced by {X_n}, which meets every non-empty set
    // and carries weight a_n = b_n = 0 here, so no sum changes
    let full = Family::from_sorted(n, vec![low_bits(n)]);
    let ta = if trace_family.is_empty() { &full } else { &trace_family };
    let tb = if partner_family.is_empty() { &full } else { &partner_family };
    let trace = thm2_proof_trace(ta, tb, &a, &b)?;

    let outside_theorem = r == n;
    let pass = e0c.len() == split.without_x0.len()
        && proof1
        && proof2
        && fibres_within_weights
        && e0_bound.holds
        && e1_identity.holds
        && weighted_bound.holds
        && star_identity.holds
        && final_bound.holds
        && (outside_theorem || (conditions_hold && trace.pass));
    Ok(Case2Report {
        n,
        r,
        outside_theorem,
        e_size: e.len(),
        e0_size: split.without_x0.len(),
        e1_size: split.with_x0.len(),
        e0_compressed_size: e0c.len(),
        e0_pairs_meet_in_xn: proof1,
        e0_e1_meet_in_xn: proof2,
        trace_family,
        partner_family,
        a: a.as_slice().iter().map(rational_to_string).collect(),
        b: b.as_slice().iter().map(rational_to_string).collect(),
        conditions_hold,
        fibres_within_weights,
        e0_bound,
        e1_identity,
        weighted_bound,
        star_identity,
        final_bound,
        trace,
        pass,
    })
}
