//! Theorem suites and their JSON, CSV and text renderings.
//!
//! Every suite is deterministic: all randomness comes from the configured
//! seed and nothing depends on timing, so equal configurations give
//! byte-identical output.

use serde::Serialize;

use crate::claw::{build_tn, enumerate_itn, gamma_compress, independent_sets, split_x0, ClawLayout};
use crate::error::{Error, Result};
use crate::labeled::{enumerate_lnk, full_compress, pairs_meet_in_xn, LabeledUniverse};
use crate::rng::SplitMix64;
use crate::sample::{random_intersecting_subfamily, random_valid_pair, random_weight_pair};
use crate::search::weighted::weighted_pair_optima;
use crate::search::{
    family_lines, max_intersecting_with_limit, max_weighted_pair, thm2_proof_trace, PairMode,
    StarProperty, MAX_SEARCH_MEMBERS,
};
use crate::sets::{binomial, binomial_i, is_intersecting, k_subsets, power_set, star, Family};
use crate::weights::{
    proof_weights, rational_to_string, star_rhs, weighted_sum, Rational, WeightVector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Ekr,
    Thm2,
    Fjt,
    Lemma6,
    Gamma,
    Eq1,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Ekr,
        Suite::Thm2,
        Suite::Fjt,
        Suite::Lemma6,
        Suite::Gamma,
        Suite::Eq1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ekr => "ekr",
            Suite::Thm2 => "thm2",
            Suite::Fjt => "fjt",
            Suite::Lemma6 => "lemma6",
            Suite::Gamma => "gamma",
            Suite::Eq1 => "eq1",
        }
    }

    /// The invariant the suite checks, as `module: statement`.
    pub fn invariant(self) -> &'static str {
        match self {
            Suite::Ekr => {
                "extremal-search: for 1 <= r <= n/2, the largest intersecting subfamily \
                 of ([n] choose r) has C(n-1, r-1) members"
            }
            Suite::Thm2 => {
                "extremal-search: under the weight hypotheses, no cross-intersecting pair \
                 (A, B) with A intersecting beats the star of 1, and every proof inequality holds"
            }
            Suite::Fjt => {
                "extremal-search: I_T_n^(r) has the star property for 2 <= r <= n-1, \
                 attained at x_1, and loses it at r = n"
            }
            Suite::Lemma6 => {
                "labeled-families: full compression of an intersecting subfamily of \
                 L_n,k^(r) keeps its size and makes every two members meet in X_n"
            }
            Suite::Gamma => {
                "claw-graphs: Gamma keeps the size of an intersecting E in I_T_n^(r) and \
                 both halves of the x_0 split of Gamma(E) are intersecting"
            }
            Suite::Eq1 => {
                "claw-graphs: the formula enumeration of I_T_n^(r) equals independent-set \
                 backtracking and has C(n,r) 2^r + C(n,r-1) members"
            }
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    fn default_n_max(self) -> Option<usize> {
        match self {
            Suite::Ekr => Some(10),
            Suite::Fjt => Some(6),
            Suite::Gamma => Some(5),
            Suite::Eq1 => Some(7),
            Suite::Thm2 | Suite::Lemma6 => None,
        }
    }

    fn default_trials(self) -> Option<u64> {
        match self {
            Suite::Thm2 => Some(10_000),
            Suite::Lemma6 | Suite::Gamma => Some(200),
            _ => None,
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest `n`; `None` uses the suite default.
    pub n_max: Option<usize>,
    pub seed: u64,
    /// Random instances per case; `None` uses the suite default.
    pub trials: Option<u64>,
    pub max_members: usize,
}

pub const DEFAULT_SEED: u64 = 20_240_601;

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: None,
            seed: DEFAULT_SEED,
            trials: None,
            max_members: MAX_SEARCH_MEMBERS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkrRow {
    pub n: usize,
    pub r: usize,
    pub family_size: usize,
    pub optimum: u64,
    /// `C(n-1, r-1)`
    pub expected: u64,
    pub star_property: StarProperty,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FjtRow {
    pub n: usize,
    pub r: usize,
    pub family_size: usize,
    pub optimum: u64,
    /// `C(n-1,r-1) 2^(r-1) + C(n-1,r-2)`
    pub x1_star_size: u64,
    pub largest_star_size: u64,
    pub star_property: StarProperty,
    /// Empty where nothing is asserted (`n = r = 2`).
    pub expected: Option<StarProperty>,
    /// `n >= 2r - 1`
    pub small_r_range: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm2Row {
    pub n: usize,
    /// `exhaustive`, `brute-force` (all pairs, no reduction) or `sampled`
    pub mode: &'static str,
    pub weights: String,
    /// Families `A` walked, pairs compared, or pairs sampled.
    pub instances: u64,
    pub optimum: String,
    pub star_rhs: String,
    /// Number of optimal `A` (exhaustive rows only).
    pub optima: Option<usize>,
    /// `A = B = S_n` attains the star value.
    pub star_attains: Option<bool>,
    /// Sampled pairs whose proof replay passed.
    pub traces_passed: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma6Row {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub trials: u64,
    pub size_preserved: bool,
    pub intersecting: bool,
    pub meet_in_xn: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaRow {
    pub n: usize,
    pub r: usize,
    pub trials: u64,
    pub size_preserved: bool,
    pub g0_intersecting: bool,
    pub g1_intersecting: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eq1Row {
    pub n: usize,
    pub r: usize,
    pub formula_size: usize,
    pub backtrack_size: usize,
    /// `C(n,r) 2^r + C(n,r-1)`
    pub expected_size: u128,
    pub families_equal: bool,
    /// Only for `r = n + 1`: the family is `{{x_0, ..., x_n}}`.
    pub single_top_set: Option<bool>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Rows {
    Ekr(Vec<EkrRow>),
    Thm2(Vec<Thm2Row>),
    Fjt(Vec<FjtRow>),
    Lemma6(Vec<Lemma6Row>),
    Gamma(Vec<GammaRow>),
    Eq1(Vec<Eq1Row>),
}

impl Rows {
    pub fn len(&self) -> usize {
        match self {
            Rows::Ekr(v) => v.len(),
            Rows::Thm2(v) => v.len(),
            Rows::Fjt(v) => v.len(),
            Rows::Lemma6(v) => v.len(),
            Rows::Gamma(v) => v.len(),
            Rows::Eq1(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The first instance that broke a suite assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub family: Vec<String>,
    pub partner: Option<Vec<String>>,
}

impl Counterexample {
    fn new(case: String, family: &Family, partner: Option<&Family>) -> Self {
        Counterexample {
            case,
            family: family_lines(family),
            partner: partner.map(family_lines),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub invariant: &'static str,
    pub seed: Option<u64>,
    pub pass: bool,
    pub rows: Rows,
    pub counterexample: Option<Counterexample>,
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Report> {
    let n_max = config.n_max.or(suite.default_n_max());
    if config.n_max.is_some() && suite.default_n_max().is_none() {
        return Err(Error::domain(format!("suite {suite} takes no --n-max")));
    }
    if config.trials.is_some() && suite.default_trials().is_none() {
        return Err(Error::domain(format!("suite {suite} takes no --trials")));
    }
    let trials = config.trials.or(suite.default_trials());
    if trials == Some(0) {
        return Err(Error::domain("--trials must be positive"));
    }
    let mut rng = SplitMix64::new(config.seed);
    let mut ce = None;
    let rows = match suite {
        Suite::Ekr => Rows::Ekr(ekr(n_max.unwrap(), config.max_members, &mut ce)?),
        Suite::Fjt => Rows::Fjt(fjt(n_max.unwrap(), config.max_members, &mut ce)?),
        Suite::Thm2 => Rows::Thm2(thm2(trials.unwrap(), &mut rng, &mut ce)?),
        Suite::Lemma6 => Rows::Lemma6(lemma6(trials.unwrap(), &mut rng, &mut ce)?),
        Suite::Gamma => Rows::Gamma(gamma_suite(n_max.unwrap(), trials.unwrap(), &mut rng, &mut ce)?),
        Suite::Eq1 => Rows::Eq1(eq1(n_max.unwrap(), &mut ce)?),
    };
    let seeded = matches!(suite, Suite::Thm2 | Suite::Lemma6 | Suite::Gamma);
    Ok(Report {
        suite: suite.name(),
        invariant: suite.invariant(),
        seed: seeded.then_some(config.seed),
        pass: ce.is_none(),
        rows,
        counterexample: ce,
    })
}

fn note(ce: &mut Option<Counterexample>, make: impl FnOnce() -> Counterexample) {
    if ce.is_none() {
        *ce = Some(make());
    }
}

fn ekr(n_max: usize, guard: usize, ce: &mut Option<Counterexample>) -> Result<Vec<EkrRow>> {
    if n_max == 0 {
        return Err(Error::domain("--n-max must be at least 1 for suite ekr"));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        for r in 1..=n / 2 {
            let f = k_subsets(n, r)?;
            let v = max_intersecting_with_limit(&f, guard)?;
            let optimum = v.optimum_count().unwrap();
            let expected = binomial(n as u64 - 1, r as u64 - 1) as u64;
            let pass = optimum == expected;
            if !pass {
                note(ce, || {
                    Counterexample::new(format!("n={n} r={r}"), v.witness_family().unwrap(), None)
                });
            }
            rows.push(EkrRow {
                n,
                r,
                family_size: f.len(),
                optimum,
                expected,
                star_property: v.star_property,
                pass,
            });
        }
    }
    Ok(rows)
}

fn fjt(n_max: usize, guard: usize, ce: &mut Option<Counterexample>) -> Result<Vec<FjtRow>> {
    if n_max < 2 {
        return Err(Error::domain("--n-max must be at least 2 for suite fjt"));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let layout = ClawLayout::new(n)?;
        for r in 2..=n {
            let f = enumerate_itn(n, r)?;
            let v = max_intersecting_with_limit(&f, guard)?;
            let optimum = v.optimum_count().unwrap();
            let x1 = layout.x1_star_size(r) as u64;
            let largest = v.largest_star.as_ref().map_or(0, |s| match s.size {
                crate::search::Scalar::Count(c) => c,
                crate::search::Scalar::Exact(_) => unreachable!(),
            });
            let expected = if r < n {
                Some(StarProperty::Holds)
            } else if n >= 3 {
                Some(StarProperty::Fails)
            } else {
                None
            };
            let pass = match expected {
                Some(StarProperty::Holds) => v.star_property == StarProperty::Holds && optimum == x1,
                Some(StarProperty::Fails) => v.star_property == StarProperty::Fails && optimum > largest,
                None => true,
            };
            if !pass {
                note(ce, || {
                    Counterexample::new(format!("n={n} r={r}"), v.witness_family().unwrap(), None)
                });
            }
            rows.push(FjtRow {
                n,
                r,
                family_size: f.len(),
                optimum,
                x1_star_size: x1,
                largest_star_size: largest,
                star_property: v.star_property,
                expected,
                small_r_range: n + 1 >= 2 * r,
                pass,
            });
        }
    }
    Ok(rows)
}

/// Weight corpus for an exhaustive row set: the proof weights, when they
/// meet the hypotheses, then `extra` seeded random pairs.
fn weight_corpus(
    n: usize,
    proof_r: usize,
    extra: usize,
    rng: &mut SplitMix64,
) -> Result<Vec<(String, WeightVector, WeightVector)>> {
    let (a, b) = proof_weights(n, proof_r)?;
    let mut out = vec![(format!("proof({n},{proof_r})"), a, b)];
    for i in 0..extra {
        let (a, b) = random_weight_pair(rng, n);
        out.push((format!("random#{i}"), a, b));
    }
    Ok(out)
}

/// Maximum over every pair of non-empty families over `[3]`, with no
/// reduction on `B`. Returns the value, a maximizing pair and the number
/// of valid pairs.
fn brute_pairs_three(a: &WeightVector, b: &WeightVector) -> (Rational, (Family, Family), u64) {
    // families are 7-bit sets over the non-empty masks 1..=7
    let sum = |fam: u32, w: &WeightVector| {
        (0..7)
            .filter(|i| fam >> i & 1 == 1)
            .fold(Rational::default(), |acc, i| acc + w.get((i as u32 + 1).count_ones() as usize))
    };
    let value_a: Vec<Rational> = (0u32..128).map(|f| sum(f, a)).collect();
    let value_b: Vec<Rational> = (0u32..128).map(|f| sum(f, b)).collect();
    let members = |fam: u32| (0..7u32).filter(move |i| fam >> i & 1 == 1).map(|i| i + 1);
    let cross = |x: u32, y: u32| members(x).all(|s| members(y).all(|t| s & t != 0));
    let mut best: Option<(Rational, u32, u32)> = None;
    let mut pairs = 0;
    for x in 1u32..128 {
        if !cross(x, x) {
            continue;
        }
        for y in 1u32..128 {
            if cross(x, y) {
                pairs += 1;
                let v = value_a[x as usize].clone() + &value_b[y as usize];
                if best.as_ref().is_none_or(|(w, _, _)| &v > w) {
                    best = Some((v, x, y));
                }
            }
        }
    }
    let (value, x, y) = best.expect("({[3]}, {[3]}) is a valid pair");
    let fam = |f: u32| Family::new(3, members(f).map(u64::from)).expect("masks fit [3]");
    (value, (fam(x), fam(y)), pairs)
}

fn thm2(trials: u64, rng: &mut SplitMix64, ce: &mut Option<Counterexample>) -> Result<Vec<Thm2Row>> {
    let mut rows = Vec::new();
    let corpus3 = weight_corpus(3, 2, 50, rng)?;
    let corpus4 = weight_corpus(4, 3, 50, rng)?;

    for (label, a, b) in &corpus3 {
        let star = star_rhs(a, b)?;
        let (value, (fa, fb), pairs) = brute_pairs_three(a, b);
        let pass = value == star;
        if !pass {
            note(ce, || Counterexample::new(format!("n=3 brute-force weights {label}"), &fa, Some(&fb)));
        }
        rows.push(Thm2Row {
            n: 3,
            mode: "brute-force",
            weights: label.clone(),
            instances: pairs,
            optimum: rational_to_string(&value),
            star_rhs: rational_to_string(&star),
            optima: None,
            star_attains: None,
            traces_passed: None,
            pass,
        });
    }
    // the reduction is only used once the brute force agreed everywhere
    let reduction_ok = rows.iter().all(|r| r.pass);
    for (n, corpus) in [(3, &corpus3), (4, &corpus4)] {
        if !reduction_ok {
            break;
        }
        let s_n = star(&power_set(n)?, 1)?;
        for (label, a, b) in corpus {
            let star_value = star_rhs(a, b)?;
            let v = max_weighted_pair(n, a, b, PairMode::Exhaustive)?;
            let (value, optima) = weighted_pair_optima(n, a, b)?;
            let attains = weighted_sum(&s_n, a)? + weighted_sum(&s_n, b)? == star_value;
            let pass = value == star_value && attains && v.star_property == StarProperty::Holds;
            if !pass {
                if let crate::search::Witness::Pair(fa, fb) = &v.witness {
                    note(ce, || Counterexample::new(format!("n={n} weights {label}"), fa, Some(fb)));
                }
            }
            rows.push(Thm2Row {
                n,
                mode: "exhaustive",
                weights: label.clone(),
                instances: v.nodes,
                optimum: rational_to_string(&value),
                star_rhs: rational_to_string(&star_value),
                optima: Some(optima.len()),
                star_attains: Some(attains),
                traces_passed: None,
                pass,
            });
        }
    }

    for n in [4, 5] {
        let mut worst: Option<Rational> = None;
        let mut traces = 0;
        let mut all_ok = true;
        for _ in 0..trials {
            let (a, b) = random_weight_pair(rng, n);
            let (fa, fb) = random_valid_pair(rng, n)?;
            let star_value = star_rhs(&a, &b)?;
            let excess = weighted_sum(&fa, &a)? + weighted_sum(&fb, &b)? - &star_value;
            let trace = thm2_proof_trace(&fa, &fb, &a, &b)?;
            if trace.pass {
                traces += 1;
            }
            let ok = trace.pass && excess <= Rational::default();
            if !ok {
                all_ok = false;
                note(ce, || Counterexample::new(format!("n={n} sampled pair"), &fa, Some(&fb)));
            }
            if worst.as_ref().is_none_or(|w| &excess > w) {
                worst = Some(excess);
            }
        }
        rows.push(Thm2Row {
            n,
            mode: "sampled",
            weights: "random".into(),
            instances: trials,
            // the largest value minus star value seen
            optimum: rational_to_string(&worst.unwrap()),
            star_rhs: "0".into(),
            optima: None,
            star_attains: None,
            traces_passed: Some(traces),
            pass: all_ok,
        });
    }
    Ok(rows)
}

fn lemma6(trials: u64, rng: &mut SplitMix64, ce: &mut Option<Counterexample>) -> Result<Vec<Lemma6Row>> {
    let mut rows = Vec::new();
    for (n, k, r) in [(3, 2, 2), (4, 2, 3), (3, 3, 2)] {
        let u = LabeledUniverse::new(n, k)?;
        let family = enumerate_lnk(&u, r)?;
        let (mut size, mut inter, mut meet) = (true, true, true);
        for _ in 0..trials {
            let e = random_intersecting_subfamily(rng, &family);
            let c = full_compress(&u, &e)?;
            let ok = (c.len() == e.len(), is_intersecting(&c), pairs_meet_in_xn(&u, &c));
            size &= ok.0;
            inter &= ok.1;
            meet &= ok.2;
            if ok != (true, true, true) {
                note(ce, || Counterexample::new(format!("n={n} k={k} r={r}"), &e, None));
            }
        }
        rows.push(Lemma6Row {
            n,
            k,
            r,
            trials,
            size_preserved: size,
            intersecting: inter,
            meet_in_xn: meet,
            pass: size && inter && meet,
        });
    }
    Ok(rows)
}

fn gamma_suite(
    n_max: usize,
    trials: u64,
    rng: &mut SplitMix64,
    ce: &mut Option<Counterexample>,
) -> Result<Vec<GammaRow>> {
    if n_max == 0 {
        return Err(Error::domain("--n-max must be at least 1 for suite gamma"));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let layout = ClawLayout::new(n)?;
        for r in 1..=n + 1 {
            let family = enumerate_itn(n, r)?;
            let (mut size, mut g0, mut g1) = (true, true, true);
            for _ in 0..trials {
                let e = random_intersecting_subfamily(rng, &family);
                let g = gamma_compress(&layout, &e)?;
                let split = split_x0(&layout, &g)?;
                let ok = (
                    g.len() == e.len(),
                    is_intersecting(&split.without_x0),
                    is_intersecting(&split.with_x0_removed),
                );
                size &= ok.0;
                g0 &= ok.1;
                g1 &= ok.2;
                if ok != (true, true, true) {
                    note(ce, || Counterexample::new(format!("n={n} r={r}"), &e, None));
                }
            }
            rows.push(GammaRow {
                n,
                r,
                trials,
                size_preserved: size,
                g0_intersecting: g0,
                g1_intersecting: g1,
                pass: size && g0 && g1,
            });
        }
    }
    Ok(rows)
}

fn eq1(n_max: usize, ce: &mut Option<Counterexample>) -> Result<Vec<Eq1Row>> {
    if n_max == 0 {
        return Err(Error::domain("--n-max must be at least 1 for suite eq1"));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let (graph, layout) = build_tn(n)?;
        for r in 0..=n + 1 {
            let formula = enumerate_itn(n, r)?;
            let backtrack = independent_sets(&graph, r)?;
            let (n_, r_) = (n as i64, r as i64);
            let expected = (binomial_i(n_, r_) << r) + binomial_i(n_, r_ - 1);
            let single_top_set = (r == n + 1)
                .then(|| formula.masks() == [layout.x0_bit() | layout.x_mask()]);
            let equal = formula == backtrack;
            let pass = equal && formula.len() as u128 == expected && single_top_set != Some(false);
            if !pass {
                note(ce, || Counterexample::new(format!("n={n} r={r}"), &formula, Some(&backtrack)));
            }
            rows.push(Eq1Row {
                n,
                r,
                formula_size: formula.len(),
                backtrack_size: backtrack.len(),
                expected_size: expected,
                families_equal: equal,
                single_top_set,
                pass,
            });
        }
    }
    Ok(rows)
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("report serializes") + "\n"),
            Format::Csv => csv_rows(&self.rows),
            Format::Text => {
                let table = csv_rows(&self.rows)?;
                let mut out = format!("suite {}: {}\n", self.suite, self.invariant);
                if let Some(seed) = self.seed {
                    out += &format!("seed {seed}\n");
                }
                out += &align(&table);
                out += &format!(
                    "result: {} ({} rows)\n",
                    if self.pass { "pass" } else { "FALSIFIED" },
                    self.rows.len()
                );
                if let Some(c) = &self.counterexample {
                    out += &format!("counterexample at {}:\n", c.case);
                    for line in &c.family {
                        out += &format!("  {line}\n");
                    }
                    if let Some(p) = &c.partner {
                        out += "partner:\n";
                        for line in p {
                            out += &format!("  {line}\n");
                        }
                    }
                }
                Ok(out)
            }
        }
    }
}

fn csv_rows(rows: &Rows) -> Result<String> {
    fn write<T: Serialize>(rows: &[T]) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in rows {
            w.serialize(row).map_err(|e| Error::domain(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::domain(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
    match rows {
        Rows::Ekr(v) => write(v),
        Rows::Thm2(v) => write(v),
        Rows::Fjt(v) => write(v),
        Rows::Lemma6(v) => write(v),
        Rows::Gamma(v) => write(v),
        Rows::Eq1(v) => write(v),
    }
}

/// Space-padded columns from CSV text whose cells contain no commas.
fn align(table: &str) -> String {
    let cells: Vec<Vec<&str>> = table.lines().map(|l| l.split(',').collect()).collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = width[c]))
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}
