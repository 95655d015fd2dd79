use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use jucys::algebra::format_class_terms;
use jucys::appendix::{
    appendix_verify, embedded_expansions, embedded_tables, parse_expansions, parse_tables, verify_expansions,
    verify_tables, VerifyReport,
};
use jucys::class_expansion::{class_polys, class_vector, interpolate_class_poly, top_coeff_f, top_coeff_l};
use jucys::json::{polynomial_json, rational_function_repr, JsonForm};
use jucys::montecarlo::validate;
use jucys::partitions::enumerate_partitions;
use jucys::perm::parse_permutation;
use jucys::poly::RationalFunctionQ;
use jucys::rational::{q, to_f64, Q};
use jucys::symfun::SymFunSpec;
use jucys::transition::transition_check;
use jucys::weingarten::{
    correlator_from_generating_function, correlator_symbolic, cyclic_closed_form, expansion_series,
    general_correlator, gram_determinant, one_fixed_point_gf, weingarten_symbolic, wick_decompose, CorrelatorQuery,
};
use jucys::Partition;

#[derive(Parser)]
#[command(name = "jucys", version, about = "Exact Haar-unitary correlators and Jucys-Murphy class expansions")]
struct Cli {
    /// Output format; `mc-check` defaults to json, everything else to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for the library's parallel loops.
    #[arg(long, global = true, env = "JUCYS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: jucys::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Exact correlator <u_{i1 j1} conj(u_{i'1 j'1}) ... > of a Haar unitary of size N.
    Correlator {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        i: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        j: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        iprime: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        jprime: Vec<usize>,
        /// Print the correlator as a rational function of N (valid for N >= n).
        #[arg(long)]
        symbolic: bool,
    },
    /// Weingarten function of a permutation (or reduced cycle type) as a rational function of N.
    Weingarten {
        #[arg(long)]
        n: usize,
        /// Permutation in one-line ("[2,3,1]") or cycle ("(1 2 3)") notation.
        #[arg(long, conflicts_with = "mu")]
        perm: Option<String>,
        /// Reduced cycle type.
        #[arg(long, value_parser = partition)]
        mu: Option<Partition>,
        /// Also evaluate at this N (needs N >= n).
        #[arg(long = "N")]
        big_n: Option<usize>,
    },
    /// Class expansion of f(J_1, ..., J_n) at a fixed n.
    ClassExpand {
        /// Symmetric function, e.g. h3, e2*h1, m2,1, p4.
        #[arg(long)]
        f: String,
        #[arg(long)]
        n: usize,
        /// Evaluate the interpolated class polynomials at n, keeping classes empty at this n.
        #[arg(long)]
        formal: bool,
    },
    /// Class coefficients of f as polynomials in n.
    ClassPoly {
        #[arg(long)]
        f: String,
        #[arg(long, value_parser = partition)]
        mu: Option<Partition>,
    },
    /// Table of leading coefficients L^l_m for |l| = |m| = k, with the SUM row.
    TopTable {
        #[arg(long)]
        k: usize,
    },
    /// Coefficients F^{|mu|+2g}_mu(n), g = 0..=gmax, of the 1/N expansion.
    Series {
        #[arg(long, value_parser = partition)]
        mu: Partition,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        gmax: usize,
    },
    /// Closed form of the full-cycle correlator.
    Cyclic {
        #[arg(long)]
        n: usize,
    },
    /// Generating function and correlator for permutations with one fixed point.
    OneFixedPoint {
        #[arg(long)]
        n: usize,
    },
    /// Check the leading-coefficient table against series reversion.
    TransitionCheck {
        #[arg(long)]
        k: usize,
    },
    /// Recompute the embedded golden expansions and tables.
    AppendixVerify {
        /// Only check the table of this size.
        #[arg(long)]
        k: Option<usize>,
        /// Read class expansions from this file instead of the embedded copy.
        #[arg(long)]
        expansions: Option<PathBuf>,
        /// Read leading-coefficient tables from this file instead of the embedded copy.
        #[arg(long)]
        tables: Option<PathBuf>,
    },
    /// Monte Carlo estimate of a correlator, compared with the exact value.
    McCheck {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',')]
        i: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        j: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        iprime: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        jprime: Option<Vec<usize>>,
    },
    /// Determinant of the symbolic Gram matrix (z^{#cycles(s t^-1)}).
    GramDet {
        #[arg(long)]
        n: usize,
    },
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn symfun(s: &str) -> Result<SymFunSpec> {
    s.parse().with_context(|| format!("cannot parse symmetric function {s:?}"))
}

fn query(n: usize, big_n: usize, i: &[usize], j: &[usize], ip: &[usize], jp: &[usize]) -> Result<CorrelatorQuery> {
    for (name, t) in [("i", i), ("j", j), ("iprime", ip), ("jprime", jp)] {
        if t.len() != n {
            bail!("--{name} has {} entries, expected n = {n}", t.len());
        }
    }
    Ok(CorrelatorQuery::from_vecs(big_n, i, j, ip, jp)?)
}

fn rational_json(x: &Q) -> Value {
    json!(x.to_string())
}

fn correlator(n: usize, big_n: usize, q: CorrelatorQuery, symbolic: bool) -> Result<Output> {
    if symbolic {
        if big_n < n {
            bail!("the rational function in N is valid only for N >= n (got N = {big_n}, n = {n})");
        }
        let r = correlator_symbolic(&q)?;
        let factored = r.factored_string("N");
        let value = r.eval(&q_of(big_n))?;
        let text = format!("{factored}\nat N = {big_n}: {value}");
        let json = json!({"n": n, "N": big_n, "factored": factored, "function": rational_function_repr(&r, "N"), "value": rational_json(&value)});
        return Ok(Output::ok(text, json));
    }
    let (value, route) = if big_n >= n { (wick_decompose(&q)?, "characters") } else { (general_correlator(&q)?, "gram") };
    let decimal = to_f64(&value);
    let text = format!("{value}\napprox {decimal:.12e}\nroute: {route}");
    Ok(Output::ok(text, json!({"n": n, "N": big_n, "value": rational_json(&value), "decimal": decimal, "route": route})))
}

fn q_of(n: usize) -> Q {
    q(n as i64)
}

fn weingarten(n: usize, perm: Option<String>, mu: Option<Partition>, big_n: Option<usize>) -> Result<Output> {
    let m = match (perm, mu) {
        (Some(p), None) => parse_permutation(&p, Some(n))?.reduced_cycle_type(),
        (None, Some(m)) => m,
        _ => bail!("give exactly one of --perm or --mu"),
    };
    let r = weingarten_symbolic(&m, n)?;
    let factored = r.factored_string("N");
    let mut text = format!("Wg(mu = {m}, n = {n}) = {factored}");
    let mut js = json!({"n": n, "mu": m.to_string(), "factored": factored, "function": rational_function_repr(&r, "N")});
    if let Some(big_n) = big_n {
        if big_n < n {
            bail!("evaluation needs N >= n (got N = {big_n}, n = {n})");
        }
        let v = r.eval(&q_of(big_n))?;
        text.push_str(&format!("\nat N = {big_n}: {v}"));
        js["value"] = rational_json(&v);
    }
    Ok(Output::ok(text, js))
}

fn sort_classes<T>(v: &mut [(Partition, T)]) {
    v.sort_by(|a, b| b.0.size().cmp(&a.0.size()).then_with(|| b.0.cmp(&a.0)));
}

fn class_expand(f: &str, n: usize, formal: bool) -> Result<Output> {
    let spec = symfun(f)?;
    if !formal {
        let v = class_vector(&spec, n)?;
        return Ok(Output::ok(v.to_string(), v.to_json()));
    }
    let mut terms: Vec<(Partition, Q)> = class_polys(&spec)?
        .into_iter()
        .map(|(m, p)| (m, p.eval(&q_of(n))))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    sort_classes(&mut terms);
    let text = format_class_terms(terms.iter().map(|(m, c)| (m, c)));
    let coeffs: Vec<Value> = terms
        .iter()
        .map(|(m, c)| json!({"mu": m.to_string(), "num": c.numer().to_string(), "den": c.denom().to_string()}))
        .collect();
    Ok(Output::ok(text, json!({"n": n, "formal": true, "coeffs": coeffs})))
}

fn class_poly(f: &str, mu: Option<Partition>) -> Result<Output> {
    let spec = symfun(f)?;
    let mut polys: Vec<(Partition, _)> = match mu {
        Some(m) => vec![(m.clone(), interpolate_class_poly(&spec, &m)?)],
        None => class_polys(&spec)?.into_iter().collect(),
    };
    sort_classes(&mut polys);
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    for (m, p) in &polys {
        let factored = p.factored_string("t");
        lines.push(format!("c({m}): {p}    [{factored}]"));
        entries.push(json!({"mu": m.to_string(), "poly": polynomial_json(p, "t"), "factored": factored}));
    }
    Ok(Output::ok(lines.join("\n"), json!({"f": spec.to_string(), "var": "t", "classes": entries})))
}

fn label(p: &Partition) -> String {
    p.to_string()
}

fn top_table(k: usize) -> Result<Output> {
    if k == 0 {
        bail!("k must be positive");
    }
    let parts = enumerate_partitions(k);
    let mut rows = Vec::new();
    for l in &parts {
        let entries = parts.iter().map(|m| top_coeff_l(l, m)).collect::<jucys::Result<Vec<_>>>()?;
        rows.push((l.clone(), entries));
    }
    let sums: Vec<_> = parts.iter().map(top_coeff_f).collect();
    let width = parts.iter().map(|p| label(p).len()).max().unwrap_or(1).max(5);
    let cell = |s: String| format!("{s:>width$}");
    let mut text = String::new();
    text.push_str(&cell("l\\m".into()));
    for m in &parts {
        text.push_str(&format!(" {}", cell(label(m))));
    }
    for (l, entries) in &rows {
        text.push('\n');
        text.push_str(&cell(label(l)));
        for e in entries {
            text.push_str(&format!(" {}", cell(e.to_string())));
        }
    }
    text.push('\n');
    text.push_str(&cell("SUM".into()));
    for s in &sums {
        text.push_str(&format!(" {}", cell(s.to_string())));
    }
    let js = json!({
        "k": k,
        "columns": parts.iter().map(label).collect::<Vec<_>>(),
        "rows": rows.iter().map(|(l, e)| json!({"lambda": label(l), "entries": e.iter().map(|x| x.to_string()).collect::<Vec<_>>()})).collect::<Vec<_>>(),
        "sum": sums.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, js))
}

fn series(mu: Partition, n: usize, gmax: usize) -> Result<Output> {
    let s = expansion_series(&mu, n, gmax)?;
    let k0 = mu.size();
    let text = s
        .iter()
        .enumerate()
        .map(|(g, c)| format!("g={g}  F^{}_{{{mu}}}({n}) = {c}", k0 + 2 * g))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::ok(text, json!({"mu": mu.to_string(), "n": n, "gmax": gmax, "coeffs": s.iter().map(rational_json).collect::<Vec<_>>()})))
}

fn rational_function_output(r: &RationalFunctionQ, var: &str, extra: Value) -> (String, Value) {
    let factored = r.factored_string(var);
    let mut js = json!({"factored": factored, "function": rational_function_repr(r, var)});
    if let (Value::Object(a), Value::Object(b)) = (&mut js, extra) {
        a.extend(b);
    }
    (factored, js)
}

fn cyclic(n: usize) -> Result<Output> {
    let r = cyclic_closed_form(n)?;
    let (text, js) = rational_function_output(&r, "N", json!({"n": n}));
    Ok(Output::ok(text, js))
}

fn one_fixed_point(n: usize) -> Result<Output> {
    let res = one_fixed_point_gf(n)?;
    let corr = correlator_from_generating_function(&res.generating_function, n)?;
    let a_text = res.a.iter().map(|(j, a)| format!("a_{j} = {a}")).collect::<Vec<_>>().join(", ");
    let gf = res.generating_function.factored_string("z");
    let cf = corr.factored_string("N");
    let text = format!("{a_text}\ngenerating function: {gf}\ncorrelator: {cf}");
    let js = json!({
        "n": n,
        "a": res.a.iter().map(|(j, a)| json!({"j": j, "value": rational_json(a)})).collect::<Vec<_>>(),
        "generating_function": {"factored": gf, "function": rational_function_repr(&res.generating_function, "z")},
        "correlator": {"factored": cf, "function": rational_function_repr(&corr, "N")},
    });
    Ok(Output::ok(text, js))
}

fn transition(k: usize) -> Result<Output> {
    if k == 0 {
        bail!("k must be positive");
    }
    let rep = transition_check(k)?;
    let status = if rep.passed() { "PASS" } else { "FAIL" };
    let mut text = format!("transition check k = {k}: {status} ({} columns)", rep.partitions.len());
    for m in &rep.mismatches {
        text.push_str(&format!("\n  {m}"));
    }
    let js = json!({"k": k, "passed": rep.passed(), "columns": rep.partitions.iter().map(label).collect::<Vec<_>>(), "column_ok": rep.column_ok, "mismatches": rep.mismatches});
    Ok(Output { text, json: js, ok: rep.passed() })
}

fn report_json(r: &VerifyReport) -> Value {
    json!({"blocks": r.blocks, "cells": r.cells, "passed": r.passed(), "mismatches": r.mismatches.iter().map(|m| json!({"location": m.location, "expected": m.expected, "computed": m.computed})).collect::<Vec<_>>()})
}

fn appendix(k: Option<usize>, expansions: Option<PathBuf>, tables: Option<PathBuf>) -> Result<Output> {
    let read = |p: &PathBuf| std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()));
    let (a1, a2) = if expansions.is_none() && tables.is_none() {
        appendix_verify(k)?
    } else {
        let a1 = match (&expansions, k) {
            (_, Some(_)) => VerifyReport::default(),
            (Some(p), None) => verify_expansions(&parse_expansions(&read(p)?)?)?,
            (None, None) => verify_expansions(&embedded_expansions())?,
        };
        let t = match &tables {
            Some(p) => parse_tables(&read(p)?)?,
            None => embedded_tables(),
        };
        (a1, verify_tables(&t, k)?)
    };
    let ok = a1.passed() && a2.passed();
    let mut lines = Vec::new();
    if k.is_none() {
        lines.push(format!("class expansions: {} blocks, {} coefficients: {}", a1.blocks, a1.cells, pass(a1.passed())));
    }
    lines.push(format!("leading-coefficient tables: {} tables, {} cells: {}", a2.blocks, a2.cells, pass(a2.passed())));
    if a2.blocks == 0 {
        bail!("no golden table for k = {}", k.unwrap_or_default());
    }
    for m in a1.mismatches.iter().chain(&a2.mismatches) {
        lines.push(format!("  mismatch {m}"));
    }
    lines.push(pass(ok).to_string());
    let js = json!({"passed": ok, "expansions": report_json(&a1), "tables": report_json(&a2)});
    Ok(Output { text: lines.join("\n"), json: js, ok })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[allow(clippy::too_many_arguments)]
fn mc_check(
    n: usize,
    big_n: usize,
    samples: usize,
    seed: u64,
    i: Option<Vec<usize>>,
    j: Option<Vec<usize>>,
    ip: Option<Vec<usize>>,
    jp: Option<Vec<usize>>,
) -> Result<Output> {
    if n == 0 || big_n == 0 {
        bail!("n and N must be positive");
    }
    let diagonal: Vec<usize> = (0..n).map(|k| k % big_n + 1).collect();
    let pick = |v: Option<Vec<usize>>| v.unwrap_or_else(|| diagonal.clone());
    let q = query(n, big_n, &pick(i), &pick(j), &pick(ip), &pick(jp))?;
    let rep = validate(&q, samples, seed)?;
    let z = rep.z_score.unwrap_or(0.0);
    let text = format!(
        "mean {:.6e} {:+.6e}i, standard error {:.3e}, samples {}, target {}, z {:.2}: {}",
        rep.mean.re,
        rep.mean.im,
        rep.standard_error,
        rep.samples,
        rep.target.as_ref().map(Q::to_string).unwrap_or_default(),
        z,
        pass(!rep.flagged())
    );
    Ok(Output { text, json: rep.to_json(), ok: !rep.flagged() })
}

fn gram_det(n: usize) -> Result<Output> {
    let rep = gram_determinant(n)?;
    let agree = rep.routes_agree();
    let factored = rep.factored();
    let exps: Vec<String> = rep.exponents.iter().map(|e| e.to_string()).collect();
    let text = format!(
        "det G(z) = {factored}\nexponents a_0..a_{}: {}\ntotal degree {}\nsum of a_k: {}\ndirect determinant: {}",
        n - 1,
        exps.join(" "),
        rep.total_degree,
        rep.exponent_sum(),
        match agree {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "not computed (n > 4)",
        }
    );
    let js = json!({
        "n": n,
        "factored": factored,
        "determinant": polynomial_json(&rep.by_tableaux, "z"),
        "exponents": exps,
        "total_degree": rep.total_degree,
        "exponent_sum": rep.exponent_sum().to_string(),
        "routes_agree": agree,
    });
    Ok(Output { text, json: js, ok: agree != Some(false) })
}

fn run(cli: Cli) -> Result<(Output, Format)> {
    let default = match cli.command {
        Command::McCheck { .. } => Format::Json,
        _ => Format::Text,
    };
    let format = cli.format.unwrap_or(default);
    let out = match cli.command {
        Command::Correlator { n, big_n, i, j, iprime, jprime, symbolic } => {
            let q = query(n, big_n, &i, &j, &iprime, &jprime)?;
            correlator(n, big_n, q, symbolic)?
        }
        Command::Weingarten { n, perm, mu, big_n } => weingarten(n, perm, mu, big_n)?,
        Command::ClassExpand { f, n, formal } => class_expand(&f, n, formal)?,
        Command::ClassPoly { f, mu } => class_poly(&f, mu)?,
        Command::TopTable { k } => top_table(k)?,
        Command::Series { mu, n, gmax } => series(mu, n, gmax)?,
        Command::Cyclic { n } => cyclic(n)?,
        Command::OneFixedPoint { n } => one_fixed_point(n)?,
        Command::TransitionCheck { k } => transition(k)?,
        Command::AppendixVerify { k, expansions, tables } => appendix(k, expansions, tables)?,
        Command::McCheck { n, big_n, samples, seed, i, j, iprime, jprime } => {
            mc_check(n, big_n, samples, seed, i, j, iprime, jprime)?
        }
        Command::GramDet { n } => gram_det(n)?,
    };
    Ok((out, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {}", anyhow!(e));
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, format)) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
