//! Acceptance criteria, one line each. Every expected value is recomputed
//! here by a brute-force or textbook oracle that shares no code with the
//! library.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use famlab::claw::{enumerate_itn, gamma_compress};
use famlab::labeled::{enumerate_lnk, full_compress, LabeledUniverse};
use famlab::report::{run_suite, Format, Suite, SuiteConfig, DEFAULT_SEED};
use famlab::rng::SplitMix64;
use famlab::sample::{random_intersecting_subfamily, random_valid_pair, random_weight_pair};
use famlab::search::{fjt_verdict, max_intersecting, max_weighted_pair, thm2_proof_trace, PairMode, Scalar, StarProperty};
use famlab::sets::k_subsets;
use famlab::weights::{check_thm2_conditions, proof_weights, Rational, WeightVector};
use famlab::Family;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- oracles

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn intersecting(sets: &[u64]) -> bool {
    sets.iter().all(|&a| sets.iter().all(|&b| a & b != 0))
}

fn cross(a: &[u64], b: &[u64]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| x & y != 0))
}

/// Textbook colour-bounded maximum clique (Tomita's MCQ) on at most 64
/// vertices, given as adjacency bitsets.
fn mcq(adj: &[u64]) -> usize {
    fn expand(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        // greedy colouring of cand in index order
        let mut order = Vec::new();
        let mut uncoloured = cand;
        let mut colour = 0;
        while uncoloured != 0 {
            colour += 1;
            let mut q = uncoloured;
            while q != 0 {
                let v = q.trailing_zeros() as usize;
                q &= !(1u64 << v) & !adj[v];
                uncoloured &= !(1u64 << v);
                order.push((v, colour));
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if size + c <= *best {
                return;
            }
            let next = cand & adj[v];
            if next == 0 {
                *best = (*best).max(size + 1);
            } else {
                expand(adj, next, size + 1, best);
            }
            cand &= !(1u64 << v);
        }
    }
    let mut best = 0;
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    if adj.is_empty() {
        return 0;
    }
    expand(adj, all, 0, &mut best);
    best
}

fn meet_graph(sets: &[u64]) -> Vec<u64> {
    (0..sets.len())
        .map(|i| {
            (0..sets.len())
                .filter(|&j| j != i && sets[i] & sets[j] != 0)
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect()
}

/// Largest intersecting subfamily by checking every subfamily (at most 20
/// sets). A subfamily is intersecting iff removing its lowest member leaves
/// an intersecting subfamily that the lowest member meets entirely.
fn brute_max_intersecting(sets: &[u64]) -> usize {
    assert!(sets.len() <= 20);
    let adj = meet_graph(sets);
    let mut ok = vec![false; 1 << sets.len()];
    ok[0] = true;
    let mut best = 0;
    for s in 1usize..1 << sets.len() {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        ok[s] = sets[v] != 0 && ok[rest] && (rest as u64) & !adj[v] == 0;
        if ok[s] {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// Own claw: x0 = 1, x_i = 1 + i, y_i = 1 + n + i; edges x0 y_i and x_i y_i.
fn claw_edges(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| [(1, 1 + n + i), (1 + i, 1 + n + i)]).collect()
}

/// Independent r-sets of the claw by plain backtracking over vertices.
fn claw_independent_sets(n: usize, r: usize) -> Vec<u64> {
    let v = 2 * n + 1;
    let mut nbr = vec![0u64; v + 1];
    for (a, b) in claw_edges(n) {
        nbr[a] |= 1 << (b - 1);
        nbr[b] |= 1 << (a - 1);
    }
    fn go(next: usize, v: usize, r: usize, cur: u64, nbr: &[u64], out: &mut Vec<u64>) {
        if cur.count_ones() as usize == r {
            out.push(cur);
            return;
        }
        if next > v {
            return;
        }
        if nbr[next] & cur == 0 {
            go(next + 1, v, r, cur | 1 << (next - 1), nbr, out);
        }
        go(next + 1, v, r, cur, nbr, out);
    }
    let mut out = Vec::new();
    go(1, v, r, 0, &nbr, &mut out);
    out.sort_unstable();
    out
}

fn star_count(sets: &[u64], element: usize) -> usize {
    sets.iter().filter(|&&s| s >> (element - 1) & 1 == 1).count()
}

/// Weights scaled to integers by a common denominator.
struct Scaled {
    a: Vec<i128>,
    b: Vec<i128>,
    scale: i128,
}

impl Scaled {
    fn new(a: &WeightVector, b: &WeightVector) -> Scaled {
        let lcm = |x: i128, y: i128| {
            let (mut p, mut q) = (x, y);
            while q != 0 {
                (p, q) = (q, p % q);
            }
            x / p * y
        };
        let all: Vec<&Rational> = a.as_slice().iter().chain(b.as_slice()).collect();
        let scale = all.iter().fold(1i128, |acc, w| lcm(acc, w.denom().to_i128().unwrap()));
        let conv = |w: &Rational| (w.numer() * BigInt::from(scale) / w.denom()).to_i128().unwrap();
        Scaled {
            a: a.as_slice().iter().map(conv).collect(),
            b: b.as_slice().iter().map(conv).collect(),
            scale,
        }
    }

    fn n(&self) -> usize {
        self.a.len() - 1
    }

    fn value(&self, fa: &[u64], fb: &[u64]) -> i128 {
        fa.iter().map(|s| self.a[s.count_ones() as usize]).sum::<i128>()
            + fb.iter().map(|s| self.b[s.count_ones() as usize]).sum::<i128>()
    }

    /// Hypotheses spelled out: for every i <= n/2, a_i + b_i >= a_{n-i} + b_{n-i}
    /// and a_{n-i} >= b_i, with all weights non-negative.
    fn hypotheses(&self) -> bool {
        let n = self.n();
        self.a.iter().chain(&self.b).all(|&w| w >= 0)
            && (0..=n / 2).all(|i| self.a[i] + self.b[i] >= self.a[n - i] + self.b[n - i] && self.a[n - i] >= self.b[i])
    }

    /// Both families equal to the star of element 1.
    fn star_value(&self) -> i128 {
        let star: Vec<u64> = (1u64..1 << self.n()).filter(|s| s & 1 == 1).collect();
        self.value(&star, &star)
    }

    fn as_rational(&self, v: i128) -> Rational {
        Rational::new(BigInt::from(v), BigInt::from(self.scale))
    }
}

fn members(bits: u32, sets: &[u64]) -> Vec<u64> {
    (0..sets.len()).filter(|i| bits >> i & 1 == 1).map(|i| sets[i]).collect()
}

/// Maximum over every pair of non-empty families (A, B) of subsets of [n]
/// with A intersecting and A, B cross-intersecting. Also returns whether the
/// star pair attains it.
fn brute_pair_max(w: &Scaled) -> (i128, bool) {
    let sets: Vec<u64> = (0u64..1 << w.n()).collect();
    let m = sets.len();
    assert!(m <= 8);
    let mut best = i128::MIN;
    for ab in 1u32..1 << m {
        let fa = members(ab, &sets);
        if !intersecting(&fa) {
            continue;
        }
        for bb in 1u32..1 << m {
            let fb = members(bb, &sets);
            if cross(&fa, &fb) {
                best = best.max(w.value(&fa, &fb));
            }
        }
    }
    (best, best == w.star_value())
}

/// Same maximum, taking B to be every non-empty set meeting all of A.
fn reduced_pair_max(w: &Scaled) -> i128 {
    let sets: Vec<u64> = (1u64..1 << w.n()).collect();
    let m = sets.len();
    let meets: Vec<u32> = sets
        .iter()
        .map(|&s| (0..m).filter(|&j| sets[j] & s != 0).fold(0u32, |acc, j| acc | 1 << j))
        .collect();
    let mut best = i128::MIN;
    for ab in 1u32..1 << m {
        let mut compat = (1u32 << m) - 1;
        let mut b = ab;
        while b != 0 {
            compat &= meets[b.trailing_zeros() as usize];
            b &= b - 1;
        }
        // A is intersecting iff it lies inside its own compatible sets
        if ab & !compat != 0 || compat == 0 {
            continue;
        }
        best = best.max(w.value(&members(ab, &sets), &members(compat, &sets)));
    }
    best
}

fn weight_corpus(n: usize, proof_r: usize, seed: u64, extra: usize) -> Result<Vec<(WeightVector, WeightVector)>, String> {
    let mut out = vec![lib(proof_weights(n, proof_r))?];
    let mut rng = SplitMix64::new(seed);
    while out.len() < extra + 1 {
        out.push(random_weight_pair(&mut rng, n));
    }
    Ok(out)
}

fn exact(s: &Scalar) -> Option<&Rational> {
    match s {
        Scalar::Exact(r) => Some(r),
        Scalar::Count(_) => None,
    }
}

// --------------------------------------------------------------- criteria

fn ekr() -> Check {
    let mut cases = 0;
    let mut oracle_runs = 0;
    for n in 1..=10usize {
        for r in 1..=n / 2 {
            let f = lib(k_subsets(n, r))?;
            let want = binom(n as u64 - 1, r as u64 - 1) as usize;
            let v = lib(max_intersecting(&f))?;
            ensure(v.optimum == Scalar::Count(want as u64), || format!("n={n} r={r}: optimum {} != {want}", v.optimum))?;
            let w = v.witness_family().unwrap().masks().to_vec();
            ensure(
                w.len() == want && intersecting(&w) && w.iter().all(|s| s.count_ones() as usize == r && s >> n == 0),
                || format!("n={n} r={r}: bad witness"),
            )?;
            if f.len() <= 56 {
                let got = mcq(&meet_graph(f.masks()));
                ensure(got == want, || format!("n={n} r={r}: clique oracle {got} != {want}"))?;
                oracle_runs += 1;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, r) cases, {oracle_runs} cross-checked by an independent clique search"))
}

fn fjt() -> Check {
    let mut cases = 0;
    for n in 2..=6usize {
        for r in 2..n {
            let sets = claw_independent_sets(n, r);
            let x1 = star_count(&sets, 2);
            let formula = binom(n as u64 - 1, r as u64 - 1) * (1 << (r - 1)) + binom(n as u64 - 1, r as u64 - 2);
            ensure(x1 as u64 == formula, || format!("n={n} r={r}: x1 star {x1} != formula {formula}"))?;
            let v = lib(fjt_verdict(n, r))?;
            ensure(v.verdict.star_property == StarProperty::Holds, || format!("n={n} r={r}: star property fails"))?;
            ensure(v.verdict.optimum == Scalar::Count(formula), || format!("n={n} r={r}: optimum {} != {formula}", v.verdict.optimum))?;
            let w = v.verdict.witness_family().unwrap().masks().to_vec();
            ensure(intersecting(&w) && w.iter().all(|s| sets.binary_search(s).is_ok()), || format!("n={n} r={r}: bad witness"))?;
            if sets.len() <= 64 {
                let got = mcq(&meet_graph(&sets));
                ensure(got as u64 == formula, || format!("n={n} r={r}: clique oracle {got} != {formula}"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, r) cases hold with optimum equal to the x1 star"))
}

fn failure_at_r_equal_n() -> Check {
    let mut notes = Vec::new();
    for n in [3usize, 4] {
        let sets = claw_independent_sets(n, n);
        let brute = brute_max_intersecting(&sets);
        let best_star = (1..=2 * n + 1).map(|e| star_count(&sets, e)).max().unwrap();
        ensure(brute > best_star, || format!("n={n}: oracle optimum {brute} does not beat star {best_star}"))?;
        if n == 3 {
            ensure(brute == 7 && best_star == 6, || format!("n=3: oracle gives {brute} and {best_star}"))?;
        }
        let v = lib(fjt_verdict(n, n))?;
        ensure(v.verdict.optimum == Scalar::Count(brute as u64), || format!("n={n}: search optimum {}", v.verdict.optimum))?;
        ensure(v.verdict.star_property == StarProperty::Fails, || format!("n={n}: no failure reported"))?;
        let star = v.verdict.largest_star.as_ref().unwrap();
        ensure(star.size == Scalar::Count(best_star as u64), || format!("n={n}: largest star {}", star.size))?;
        notes.push(format!("n={n}: {brute} > {best_star}"));
    }
    Ok(notes.join(", "))
}

fn thm2_exhaustive() -> Check {
    let corpus3 = weight_corpus(3, 2, DEFAULT_SEED, 50)?;
    for (idx, (a, b)) in corpus3.iter().enumerate() {
        let w = Scaled::new(a, b);
        ensure(w.hypotheses() && lib(check_thm2_conditions(a, b))?, || format!("n=3 pair {idx}: hypotheses fail"))?;
        let (brute, star_attains) = brute_pair_max(&w);
        ensure(brute == w.star_value() && star_attains, || format!("n=3 pair {idx}: brute max {brute} vs star {}", w.star_value()))?;
        ensure(reduced_pair_max(&w) == brute, || format!("n=3 pair {idx}: reduction disagrees with brute force"))?;
        let v = lib(max_weighted_pair(3, a, b, PairMode::Exhaustive))?;
        ensure(exact(&v.optimum) == Some(&w.as_rational(brute)), || format!("n=3 pair {idx}: search optimum {}", v.optimum))?;
    }
    let corpus4 = weight_corpus(4, 3, DEFAULT_SEED ^ 4, 50)?;
    for (idx, (a, b)) in corpus4.iter().enumerate() {
        let w = Scaled::new(a, b);
        ensure(w.hypotheses(), || format!("n=4 pair {idx}: hypotheses fail"))?;
        let best = reduced_pair_max(&w);
        ensure(best == w.star_value(), || format!("n=4 pair {idx}: reduced max {best} vs star {}", w.star_value()))?;
        let v = lib(max_weighted_pair(4, a, b, PairMode::Exhaustive))?;
        ensure(exact(&v.optimum) == Some(&w.as_rational(best)), || format!("n=4 pair {idx}: search optimum {}", v.optimum))?;
    }
    Ok(format!(
        "n=3: {} weight pairs by brute force over all (A, B); n=4: {} by the optimal-B reduction",
        corpus3.len(),
        corpus4.len()
    ))
}

fn thm2_sampled() -> Check {
    const TRIALS: usize = 10_000;
    let mut halves = 0;
    for n in [4usize, 5] {
        let mut rng = SplitMix64::new(DEFAULT_SEED.wrapping_add(n as u64));
        for t in 0..TRIALS {
            let (a, b) = random_weight_pair(&mut rng, n);
            let (fa, fb) = lib(random_valid_pair(&mut rng, n))?;
            let w = Scaled::new(&a, &b);
            let (sa, sb) = (fa.masks(), fb.masks());
            ensure(w.hypotheses(), || format!("n={n} trial {t}: hypotheses fail"))?;
            ensure(
                !sa.is_empty() && !sb.is_empty() && intersecting(sa) && cross(sa, sb),
                || format!("n={n} trial {t}: invalid pair"),
            )?;
            ensure(w.value(sa, sb) <= w.star_value(), || format!("n={n} trial {t}: value exceeds the star"))?;
            let trace = lib(thm2_proof_trace(&fa, &fb, &a, &b))?;
            ensure(trace.pass, || format!("n={n} trial {t}: proof trace fails"))?;
            if n % 2 == 0 {
                let h = n / 2;
                let c = sa.iter().filter(|s| s.count_ones() as usize == h).count() as i128 * w.a[h]
                    + sb.iter().filter(|s| s.count_ones() as usize == h).count() as i128 * w.b[h];
                let bound = binom(n as u64 - 1, h as u64 - 1) as i128 * (w.a[h] + w.b[h]);
                ensure(c <= bound, || format!("n={n} trial {t}: half bound fails"))?;
                let step = trace.steps.iter().find(|s| s.r == h).ok_or("no r = n/2 step")?;
                ensure(step.half_bound.as_ref().is_some_and(|i| i.holds), || format!("n={n} trial {t}: half bound missing"))?;
                halves += 1;
            }
        }
    }
    Ok(format!("{TRIALS} pairs per n in {{4, 5}}, every trace passes, {halves} half bounds checked"))
}

fn lemma6() -> Check {
    const TRIALS: usize = 200;
    for (n, k, r) in [(3usize, 2usize, 2usize), (4, 2, 3), (3, 3, 2)] {
        let u = lib(LabeledUniverse::new(n, k))?;
        // (i, j) is element (i-1)k + j; X_n holds the label-1 elements
        let bit = |i: usize, j: usize| 1u64 << ((i - 1) * k + j - 1);
        let xn = (1..=n).fold(0u64, |acc, i| acc | bit(i, 1));
        let mut own: Vec<u64> = (0u64..1 << (n * k))
            .filter(|&s| s.count_ones() as usize == r && (1..=n).all(|i| (1..=k).filter(|&j| s & bit(i, j) != 0).count() <= 1))
            .collect();
        own.sort_unstable();
        let family = lib(enumerate_lnk(&u, r))?;
        ensure(family.masks() == own.as_slice(), || format!("({n},{k},{r}): L_n,k^(r) differs from the direct enumeration"))?;
        let mut rng = SplitMix64::new(DEFAULT_SEED ^ (n * 100 + k * 10 + r) as u64);
        for t in 0..TRIALS {
            let e = random_intersecting_subfamily(&mut rng, &family);
            ensure(intersecting(e.masks()), || format!("({n},{k},{r}) trial {t}: sample not intersecting"))?;
            let out = lib(full_compress(&u, &e))?;
            let m = out.masks();
            ensure(m.len() == e.len(), || format!("({n},{k},{r}) trial {t}: size {} -> {}", e.len(), m.len()))?;
            ensure(intersecting(m), || format!("({n},{k},{r}) trial {t}: output not intersecting"))?;
            ensure(m.iter().all(|&a| m.iter().all(|&b| a & b & xn != 0)), || format!("({n},{k},{r}) trial {t}: a pair misses X_n"))?;
            ensure(m.iter().all(|s| own.binary_search(s).is_ok()), || format!("({n},{k},{r}) trial {t}: output leaves L_n,k^(r)"))?;
        }
    }
    Ok(format!("{TRIALS} samples for each of 3 triples"))
}

fn eq1() -> Check {
    let mut cases = 0;
    for n in 1..=7usize {
        for r in 0..=n + 1 {
            let own = claw_independent_sets(n, r);
            let got = lib(enumerate_itn(n, r))?;
            ensure(got.masks() == own.as_slice(), || format!("n={n} r={r}: enumeration differs from backtracking"))?;
            let formula = binom(n as u64, r as u64) * (1 << r) + if r == 0 { 0 } else { binom(n as u64, r as u64 - 1) };
            ensure(own.len() as u64 == formula, || format!("n={n} r={r}: {} members, formula {formula}", own.len()))?;
            if r == n + 1 {
                let top = (0..=n).fold(0u64, |acc, i| acc | 1 << i);
                ensure(own == [top], || format!("n={n}: top slice is not {{x0, ..., x_n}}"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, r) cases including every r = n + 1 top set"))
}

fn gamma() -> Check {
    const TRIALS: usize = 200;
    let mut cases = 0;
    for n in 1..=5usize {
        let layout = lib(famlab::claw::ClawLayout::new(n))?;
        for r in 1..=n + 1 {
            let rfam = Family::new(2 * n + 1, claw_independent_sets(n, r)).map_err(|e| e.to_string())?;
            let mut rng = SplitMix64::new(DEFAULT_SEED ^ (n * 16 + r) as u64);
            for t in 0..TRIALS {
                let e = random_intersecting_subfamily(&mut rng, &rfam);
                ensure(intersecting(e.masks()), || format!("n={n} r={r} trial {t}: sample not intersecting"))?;
                let g = lib(gamma_compress(&layout, &e))?;
                ensure(g.len() == e.len(), || format!("n={n} r={r} trial {t}: size {} -> {}", e.len(), g.len()))?;
                ensure(g.masks().iter().all(|s| rfam.contains_mask(*s)), || format!("n={n} r={r} trial {t}: leaves the family"))?;
                let g0: Vec<u64> = g.masks().iter().copied().filter(|s| s & 1 == 0).collect();
                let g1: Vec<u64> = g.masks().iter().filter(|s| *s & 1 == 1).map(|s| s & !1).collect();
                ensure(intersecting(&g0), || format!("n={n} r={r} trial {t}: G0 not intersecting"))?;
                ensure(intersecting(&g1), || format!("n={n} r={r} trial {t}: G1' not intersecting"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{TRIALS} samples for each of {cases} (n, r) cases"))
}

fn determinism() -> Check {
    let config = SuiteConfig::default();
    let mut sizes = Vec::new();
    for suite in Suite::ALL {
        let first = lib(lib(run_suite(suite, &config))?.render(Format::Json))?;
        let second = lib(lib(run_suite(suite, &config))?.render(Format::Json))?;
        ensure(first == second, || format!("{suite}: reports differ between runs"))?;
        let report: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
        ensure(report["pass"] == true, || format!("{suite}: suite does not pass"))?;
        sizes.push(format!("{suite} {}B", first.len()));
    }
    Ok(sizes.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("EKR optimum is C(n-1, r-1) for n <= 10", ekr),
        ("star property of I_T_n^(r) for 2 <= r <= n-1, n <= 6", fjt),
        ("star property fails at r = n for n in {3, 4}", failure_at_r_equal_n),
        ("weighted pair bound, exhaustive at n = 3 and n = 4", thm2_exhaustive),
        ("weighted pair bound, sampled at n in {4, 5}", thm2_sampled),
        ("full compression keeps size and meets in X_n", lemma6),
        ("formula enumeration of I_T_n^(r) equals backtracking", eq1),
        ("Gamma keeps size and both x0 halves intersect", gamma),
        ("suite reports are byte-identical across runs", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
