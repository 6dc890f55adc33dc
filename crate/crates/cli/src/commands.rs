use std::process::ExitCode;

use serde_json::{json, Value};

use famlab::claw::{enumerate_itn, ClawLayout};
use famlab::labeled::{enumerate_lnk, full_compress, pairs_meet_in_xn, LabeledUniverse};
use famlab::report::{run_suite, Format, Suite, SuiteConfig, DEFAULT_SEED};
use famlab::rng::SplitMix64;
use famlab::sample::random_intersecting_subfamily;
use famlab::search::{max_intersecting_with_limit, SearchVerdict, MAX_SEARCH_MEMBERS};
use famlab::sets::{is_intersecting, k_subsets, power_set};
use famlab::Family;

use crate::{Cli, Command, CompressArgs, FormatArg, SearchArgs, SuiteArg, Target, TargetArgs, VerifyArgs};

enum Failure {
    Usage(String),
    Io(String),
    Lib(famlab::Error),
}

impl From<famlab::Error> for Failure {
    fn from(e: famlab::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
            Failure::Lib(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Rendered output and whether the run falsified a suite.
struct Done {
    text: String,
    falsified: bool,
}

impl Done {
    fn ok(text: String) -> Self {
        Done { text, falsified: false }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let output = match &cli.command {
        Command::Enumerate(a) => &a.output,
        Command::StarProperty(a) | Command::MaxIntersecting(a) => &a.output,
        Command::Compress(a) => &a.output,
        Command::Verify(a) => &a.output,
    };
    let (format, out) = (output.format, output.out.clone());
    let result = match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::StarProperty(a) => search(a, true),
        Command::MaxIntersecting(a) => search(a, false),
        Command::Compress(a) => compress(a),
        Command::Verify(a) => verify(a),
    };
    let result = result.and_then(|done| {
        match &out {
            Some(path) => std::fs::write(path, &done.text)
                .map_err(|e| Failure::Io(format!("cannot write --out {}: {e}", path.display())))?,
            None => print!("{}", done.text),
        }
        Ok(done.falsified)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(f) => {
            eprintln!("error: {}", f.message());
            if format == FormatArg::Json {
                println!("{}", error_json(f.kind(), &f.message()));
            }
            ExitCode::from(1)
        }
    }
}

fn to_format(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

/// How a family's members are best written out.
enum Labels {
    Plain,
    Claw(ClawLayout),
    Labeled(LabeledUniverse),
}

impl Labels {
    fn text(&self, family: &Family) -> String {
        match self {
            Labels::Plain => family.to_text(),
            Labels::Claw(l) => format!("{}\n{}", l.sidecar_header(), family.to_text()),
            Labels::Labeled(u) => u.to_text(family),
        }
    }

    fn set(&self, bits: u64) -> String {
        match self {
            Labels::Plain => famlab::sets::format_set(famlab::SetMask::new(bits, 62).expect("fits")),
            Labels::Claw(l) => l.format_set(bits),
            Labels::Labeled(u) => u.format_set(bits),
        }
    }
}

fn lines(text: &str) -> Vec<String> {
    text.lines().map(str::to_owned).collect()
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn build_target(
    target: Target,
    n: usize,
    r: Option<usize>,
    k: Option<usize>,
) -> Result<(Family, Labels), Failure> {
    let need_r = || r.ok_or_else(|| usage(format!("--r is required with --target {}", name(target))));
    let no_k = || match k {
        Some(_) => Err(usage(format!("--k is only used with --target lnk, not {}", name(target)))),
        None => Ok(()),
    };
    match target {
        Target::Knr => {
            no_k()?;
            let r = need_r()?;
            if r > n {
                return Err(usage(format!("--r {r} exceeds --n {n}")));
            }
            Ok((k_subsets(n, r)?, Labels::Plain))
        }
        Target::Lnk => {
            let r = need_r()?;
            let k = k.ok_or_else(|| usage("--k is required with --target lnk"))?;
            let u = LabeledUniverse::new(n, k)?;
            Ok((enumerate_lnk(&u, r)?, Labels::Labeled(u)))
        }
        Target::Itn => {
            no_k()?;
            let r = need_r()?;
            let layout = ClawLayout::new(n)?;
            Ok((enumerate_itn(n, r)?, Labels::Claw(layout)))
        }
        Target::Powerset => {
            no_k()?;
            if r.is_some() {
                return Err(usage("--r is not used with --target powerset"));
            }
            Ok((power_set(n)?, Labels::Plain))
        }
    }
}

fn name(t: Target) -> &'static str {
    match t {
        Target::Knr => "knr",
        Target::Lnk => "lnk",
        Target::Itn => "itn",
        Target::Powerset => "powerset",
    }
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read --input {}: {e}", path.display())))
}

fn enumerate(a: &TargetArgs) -> Result<Done, Failure> {
    let (family, labels) = build_target(a.target, a.n, a.r, a.k)?;
    let text = match a.output.format {
        FormatArg::Text => labels.text(&family),
        FormatArg::Json => pretty(&json!({
            "target": name(a.target),
            "n": a.n,
            "r": a.r,
            "k": a.k,
            "ground_size": family.ground_size(),
            "size": family.len(),
            "family": lines(&family.to_text()),
        })),
        FormatArg::Csv => {
            let rows: Vec<Vec<String>> = family
                .masks()
                .iter()
                .enumerate()
                .map(|(i, &m)| vec![i.to_string(), m.count_ones().to_string(), labels.set(m)])
                .collect();
            csv_table(&["index", "size", "set"], &rows)
        }
    };
    Ok(Done::ok(text))
}

fn search(a: &SearchArgs, verdict_only: bool) -> Result<Done, Failure> {
    let (family, labels) = match (&a.input, a.target) {
        (Some(path), _) => {
            for (flag, set) in [("--n", a.n.is_some()), ("--r", a.r.is_some()), ("--k", a.k.is_some())] {
                if set {
                    return Err(usage(format!("{flag} cannot be combined with --input")));
                }
            }
            (Family::parse_text(&read(path)?)?, Labels::Plain)
        }
        (None, Some(target)) => {
            let n = a.n.ok_or_else(|| usage("--n is required with --target"))?;
            build_target(target, n, a.r, a.k)?
        }
        (None, None) => return Err(usage("either --target or --input is required")),
    };
    let guard = a.max_members.unwrap_or(MAX_SEARCH_MEMBERS);
    let v = max_intersecting_with_limit(&family, guard)?;
    let text = match a.output.format {
        FormatArg::Json => serde_json::to_string_pretty(&v).expect("verdicts serialize") + "\n",
        FormatArg::Csv => {
            let star = v.largest_star.as_ref();
            let row = vec![
                v.optimum.to_string(),
                star.map_or(String::new(), |s| s.element.to_string()),
                star.map_or(String::new(), |s| s.size.to_string()),
                v.star_property.as_str().to_owned(),
                v.nodes.to_string(),
            ];
            csv_table(
                &["optimum", "largest_star_element", "largest_star_size", "star_property", "nodes"],
                &[row],
            )
        }
        FormatArg::Text => verdict_text(&v, &labels, verdict_only),
    };
    Ok(Done::ok(text))
}

fn verdict_text(v: &SearchVerdict, labels: &Labels, verdict_only: bool) -> String {
    let mut out = format!("star property: {}\noptimum: {}\n", v.star_property.as_str(), v.optimum);
    match &v.largest_star {
        Some(s) => {
            let named = match labels {
                Labels::Plain => String::new(),
                Labels::Claw(l) => format!(" ({})", l.name(s.element)),
                Labels::Labeled(u) => match u.decode(s.element) {
                    Ok((i, j)) => format!(" (({i},{j}))"),
                    Err(_) => String::new(),
                },
            };
            out += &format!("largest star: {} at element {}{named}\n", s.size, s.element);
        }
        None => out += "largest star: none\n",
    }
    out += &format!("nodes: {}\n", v.nodes);
    if !verdict_only {
        if let Some(w) = v.witness_family() {
            out += "witness:\n";
            out += &labels.text(w);
        }
    }
    out
}

fn compress(a: &CompressArgs) -> Result<Done, Failure> {
    let (u, family, seed) = match &a.input {
        Some(path) => {
            let (u, f) = LabeledUniverse::parse_text(&read(path)?)?;
            (u, f, None)
        }
        None => {
            let (n, k, r) = (a.n.unwrap(), a.k.unwrap(), a.r.unwrap());
            let u = LabeledUniverse::new(n, k)?;
            let seed = a.seed.unwrap_or(DEFAULT_SEED);
            let mut rng = SplitMix64::new(seed);
            let f = random_intersecting_subfamily(&mut rng, &enumerate_lnk(&u, r)?);
            (u, f, Some(seed))
        }
    };
    if !is_intersecting(&family) {
        return Err(usage("the --input family is not intersecting"));
    }
    let out = full_compress(&u, &family)?;
    let meet = pairs_meet_in_xn(&u, &out);
    let text = match a.output.format {
        FormatArg::Text => u.to_text(&out),
        FormatArg::Json => pretty(&json!({
            "n": u.n(),
            "k": u.k(),
            "seed": seed,
            "input_size": family.len(),
            "output_size": out.len(),
            "intersecting": is_intersecting(&out),
            "meet_in_xn": meet,
            "input": lines(&u.to_text(&family)),
            "family": lines(&u.to_text(&out)),
        })),
        FormatArg::Csv => {
            let rows: Vec<Vec<String>> = out
                .masks()
                .iter()
                .enumerate()
                .map(|(i, &m)| vec![i.to_string(), u.format_set(m)])
                .collect();
            csv_table(&["index", "set"], &rows)
        }
    };
    Ok(Done::ok(text))
}

fn suite(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Ekr => Suite::Ekr,
        SuiteArg::Thm2 => Suite::Thm2,
        SuiteArg::Fjt => Suite::Fjt,
        SuiteArg::Lemma6 => Suite::Lemma6,
        SuiteArg::Gamma => Suite::Gamma,
        SuiteArg::Eq1 => Suite::Eq1,
    }
}

fn verify(a: &VerifyArgs) -> Result<Done, Failure> {
    if a.list {
        return Ok(Done::ok(list(a.output.format)));
    }
    let s = suite(a.suite.expect("clap requires --suite without --list"));
    let config = SuiteConfig {
        n_max: a.n_max,
        seed: a.seed.unwrap_or(DEFAULT_SEED),
        trials: a.trials,
        max_members: a.max_members.unwrap_or(MAX_SEARCH_MEMBERS),
    };
    // configuration problems come back naming their flag
    let report = run_suite(s, &config).map_err(|e| match e {
        famlab::Error::Domain(m) if m.contains("--") => usage(m),
        other => Failure::Lib(other),
    })?;
    Ok(Done {
        text: report.render(to_format(a.output.format))?,
        falsified: !report.pass,
    })
}

fn list(format: FormatArg) -> String {
    match format {
        FormatArg::Json => pretty(&Value::Array(
            Suite::ALL
                .iter()
                .map(|s| json!({ "suite": s.name(), "invariant": s.invariant() }))
                .collect(),
        )),
        FormatArg::Csv => {
            let rows: Vec<Vec<String>> = Suite::ALL
                .iter()
                .map(|s| vec![s.name().to_owned(), s.invariant().to_owned()])
                .collect();
            csv_table(&["suite", "invariant"], &rows)
        }
        FormatArg::Text => Suite::ALL
            .iter()
            .map(|s| format!("{:<7} {}\n", s.name(), s.invariant()))
            .collect(),
    }
}
