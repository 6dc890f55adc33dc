//! Weight vectors indexed by set size and the weighted cross-intersecting
//! bound built on them. All arithmetic is exact.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{binomial, binomial_i, Family};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: u128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `"7"` for integers, `"7/2"` otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `num/den` or a bare integer.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(num, den))
}

/// Non-negative weights `w_0, ..., w_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    w: Vec<Rational>,
}

impl WeightVector {
    pub fn new(w: Vec<Rational>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::domain("a weight vector needs at least w_0"));
        }
        if let Some(i) = w.iter().position(|x| x.is_negative()) {
            return Err(Error::domain(format!("weight w_{i} is negative")));
        }
        Ok(WeightVector { w })
    }

    pub fn from_integers(w: &[u64]) -> Self {
        WeightVector {
            w: w.iter().map(|&x| integer(x.into())).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        WeightVector {
            w: vec![Rational::zero(); n + 1],
        }
    }

    pub fn ones(n: usize) -> Self {
        WeightVector {
            w: vec![Rational::one(); n + 1],
        }
    }

    /// Ground size `n` (the vector has `n + 1` entries).
    pub fn n(&self) -> usize {
        self.w.len() - 1
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.w[i]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.w
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        WeightVector::new(self.w.iter().map(|x| x * factor).collect())
    }

    /// Text format: `n=<n>` then `i num/den` per entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for (i, x) in self.w.iter().enumerate() {
            let _ = writeln!(out, "{i} {}/{}", x.numer(), x.denom());
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n=<n>` header"))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(hl, format!("expected `n=<n>`, found `{header}`")))?;
        let mut w = Vec::with_capacity(n + 1);
        for (lineno, line) in lines {
            let (idx, val) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::parse(lineno, "expected `i num/den`"))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad index `{idx}`")))?;
            if idx != w.len() {
                return Err(Error::parse(lineno, format!("expected index {}, found {idx}", w.len())));
            }
            w.push(parse_rational(val).map_err(|m| Error::parse(lineno, m))?);
        }
        if w.len() != n + 1 {
            return Err(Error::parse(hl, format!("expected {} entries, found {}", n + 1, w.len())));
        }
        WeightVector::new(w).map_err(|e| Error::parse(hl, e.to_string()))
    }

    pub fn to_json(&self) -> WeightVectorJson {
        WeightVectorJson {
            n: self.n(),
            w: self.w.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect(),
        }
    }

    pub fn from_json(json: &WeightVectorJson) -> Result<Self> {
        if json.w.len() != json.n + 1 {
            return Err(Error::domain(format!(
                "expected {} weights for n={}, found {}",
                json.n + 1,
                json.n,
                json.w.len()
            )));
        }
        let w = json
            .w
            .iter()
            .map(|s| parse_rational(s).map_err(Error::Domain))
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(w)
    }
}

/// JSON mirror of [`WeightVector`], rationals as `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVectorJson {
    pub n: usize,
    pub w: Vec<String>,
}

fn same_n(a: &WeightVector, b: &WeightVector) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::domain(format!(
            "weight vectors have different lengths ({} vs {})",
            a.w.len(),
            b.w.len()
        )));
    }
    Ok(a.n())
}

/// Which hypothesis of the weighted bound fails, and where.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ConditionViolation {
    /// `a_i + b_i < a_{n-i} + b_{n-i}`
    SumOrder { i: usize },
    /// `a_{n-i} < b_i`
    Domination { i: usize },
}

/// First `i <= n/2` at which a hypothesis fails.
pub fn thm2_condition_violation(
    a: &WeightVector,
    b: &WeightVector,
) -> Result<Option<ConditionViolation>> {
    let n = same_n(a, b)?;
    for i in 0..=n / 2 {
        let j = n - i;
        if a.w[i].clone() + &b.w[i] < a.w[j].clone() + &b.w[j] {
            return Ok(Some(ConditionViolation::SumOrder { i }));
        }
        if a.w[j] < b.w[i] {
            return Ok(Some(ConditionViolation::Domination { i }));
        }
    }
    Ok(None)
}

/// `a_i + b_i >= a_{n-i} + b_{n-i}` and `a_{n-i} >= b_i` for every integer `i <= n/2`.
pub fn check_thm2_conditions(a: &WeightVector, b: &WeightVector) -> Result<bool> {
    Ok(thm2_condition_violation(a, b)?.is_none())
}

/// Member count per size, `0..=n`.
pub fn size_profile(family: &Family) -> Vec<u64> {
    let mut counts = vec![0u64; family.ground_size() + 1];
    for &m in family.masks() {
        counts[m.count_ones() as usize] += 1;
    }
    counts
}

/// `sum_{A in F} w_{|A|}`.
pub fn weighted_sum(family: &Family, w: &WeightVector) -> Result<Rational> {
    if family.ground_size() != w.n() {
        return Err(Error::domain(format!(
            "family over [{}] with weights for n={}",
            family.ground_size(),
            w.n()
        )));
    }
    Ok(profile_sum(&size_profile(family), w))
}

pub(crate) fn profile_sum(profile: &[u64], w: &WeightVector) -> Rational {
    profile
        .iter()
        .zip(&w.w)
        .filter(|(&c, _)| c > 0)
        .map(|(&c, x)| x * integer(c.into()))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Weighted value of the full star `S_n = {A ⊆ [n] : 1 in A}` counted once
/// with `a` and once with `b`: `sum_{i=1}^n C(n-1, i-1) (a_i + b_i)`.
pub fn star_rhs(a: &WeightVector, b: &WeightVector) -> Result<Rational> {
    let n = same_n(a, b)?;
    Ok((1..=n)
        .map(|i| integer(binomial(n as u64 - 1, i as u64 - 1)) * (a.w[i].clone() + &b.w[i]))
        .fold(Rational::zero(), |acc, x| acc + x))
}

/// The weights used to bound the `x_0`-free part of an intersecting
/// subfamily of `I_{T_n}^(r)`: `a_i = C(n-i, r-i)` for `i <= r` (zero after),
/// `b_{r-1} = 1` and every other `b_i = 0`. Requires `2 <= r <= n - 1`.
pub fn proof_weights(n: usize, r: usize) -> Result<(WeightVector, WeightVector)> {
    if r < 2 || r + 1 > n {
        return Err(Error::domain(format!(
            "proof weights need 2 <= r <= n-1, got n={n} r={r}"
        )));
    }
    Ok(proof_weights_unchecked(n, r))
}

/// Same construction without the range check; used to replay the argument
/// outside its hypotheses (e.g. `r = n`).
pub(crate) fn proof_weights_unchecked(n: usize, r: usize) -> (WeightVector, WeightVector) {
    let a = (0..=n)
        .map(|i| {
            if i <= r {
                integer(binomial_i((n - i) as i64, r as i64 - i as i64))
            } else {
                Rational::zero()
            }
        })
        .collect();
    let b = (0..=n)
        .map(|i| if i + 1 == r { Rational::one() } else { Rational::zero() })
        .collect();
    (WeightVector { w: a }, WeightVector { w: b })
}

/// One recorded inequality `lhs <= rhs` (or `lhs == rhs` for identities).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Inequality {
    pub fn le(lhs: &Rational, rhs: &Rational) -> Self {
        Inequality {
            lhs: rational_to_string(lhs),
            rhs: rational_to_string(rhs),
            holds: lhs <= rhs,
        }
    }

    pub fn eq(lhs: &Rational, rhs: &Rational) -> Self {
        Inequality {
            lhs: rational_to_string(lhs),
            rhs: rational_to_string(rhs),
            holds: lhs == rhs,
        }
    }
}

/// Ledger for one `r` with `1 <= r <= n/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofStep {
    pub r: usize,
    pub c_r: String,
    pub c_n_minus_r: String,
    /// `|A^(n-r)| <= C(n,r) - |A^(r)| - |B^(r) \ A^(r)|`
    pub a_complement_bound: Inequality,
    /// `|B^(n-r)| <= C(n,r) - |A^(r)|`
    pub b_complement_bound: Inequality,
    /// `|A^(r)| <= C(n-1, r-1)`
    pub ekr_bound: Inequality,
    /// `c_r + c_{n-r}` against the expression obtained from the two
    /// complement bounds.
    pub counting_bound: Inequality,
    /// The counting expression against its value after the EKR substitution.
    pub ekr_substitution: Inequality,
    /// The substituted value equals
    /// `C(n-1,r-1)(a_r+b_r) + C(n-1,n-r-1)(a_{n-r}+b_{n-r})`.
    pub pascal_identity: Inequality,
    /// `c_r + c_{n-r}` against the combined bound.
    pub combined_bound: Inequality,
    /// Only for `r = n/2`: `c_{n/2} <= C(n-1, n/2-1)(a_{n/2} + b_{n/2})`.
    pub half_bound: Option<Inequality>,
    pub pass: bool,
}

/// Full replay of the counting argument for one pair `(A, B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub n: usize,
    /// `c_i = |A^(i)| a_i + |B^(i)| b_i` for `i = 0..=n`.
    pub c: Vec<String>,
    /// `c_0 == 0`
    pub c0_zero: bool,
    pub steps: Vec<ProofStep>,
    /// `c_n <= a_n + b_n`
    pub top_bound: Inequality,
    /// The weighted sum of the pair equals `sum_i c_i`.
    pub total_decomposition: Inequality,
    /// `sum_i c_i <= a_n + b_n + sum of the per-r bounds`
    pub telescoped_bound: Inequality,
    /// The telescoped bound equals the star value.
    pub star_identity: Inequality,
    pub pass: bool,
}
