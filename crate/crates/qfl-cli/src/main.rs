//! Command-line front end: family listings, single-polynomial printing,
//! and the verification suites with machine-readable reports.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qfl::census::{normal_form_count, plain_forest_count, run_suite, SUITES};
use qfl::forest::{
    enumerate_plain_forests, enumerate_trees, forest_for_nc, parse_word, strip_trailing,
    word_to_string, BnForest,
};
use qfl::permnc::{enumerate_nc, Perm};
use qfl::polyalg::eqsym::fundamental_double;
use qfl::polyalg::forestpoly::forest_poly;
use qfl::polyalg::mpoly::Expo;
use qfl::polyalg::schubert::schubert_double;
use qfl::MPoly;

#[derive(Parser)]
#[command(name = "qfl", version, about = "Exact combinatorics, operator calculus, and geometry of the quasisymmetric flag variety")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List a combinatorial family
    Enum {
        #[arg(value_enum)]
        what: Family,
        /// Size parameter; nc, trees, forests, counts allow 1..=8, faces 1..=7
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SortOrder::Lex)]
        order: SortOrder,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write to this path instead of stdout
        #[arg(long)]
        out: Option<String>,
    },
    /// Print a single polynomial
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Run a verification suite and write its report
    Verify {
        /// One of the registered suite names
        suite: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to the number of cores
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report path
        #[arg(long, default_value = "qfl-report.json")]
        out: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Noncrossing permutations in one-line form
    Nc,
    /// Plain trees on n leaves
    Trees,
    /// Plain forests on n leaves
    Forests,
    /// Face counts of the n-th variety by dimension
    Faces,
    /// Forest node census c_{n,k}
    Counts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SortOrder {
    Lex,
    /// Coxeter length or node count first, then lexicographic
    Length,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, String> {
    match cmd {
        Cmd::Enum { what, n, order, format, out } => {
            let table = enumerate_family(what, n, order)?;
            emit(&render(&table, format), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Poly(kind) => {
            let (poly, format, out) = resolve_poly(kind)?;
            emit(&render_poly(&poly, format), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { suite, n, seed, jobs, format, out } => verify(&suite, n, seed, jobs, format, &out),
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn emit(text: &str, out: Option<&str>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {path}: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn enumerate_family(what: Family, n: usize, order: SortOrder) -> Result<Table, String> {
    let cap = if what == Family::Faces { 7 } else { 8 };
    if n == 0 || n > cap {
        return Err(format!("--n {n} is out of range; this family allows 1..={cap}"));
    }
    let table = match what {
        Family::Nc => {
            let mut perms = enumerate_nc(n);
            match order {
                SortOrder::Lex => perms.sort(),
                SortOrder::Length => perms.sort_by_key(|w| (w.length(), w.clone())),
            }
            Table {
                header: vec!["one_line", "length", "blocks"],
                rows: perms
                    .iter()
                    .map(|w| {
                        let merges: usize = w.cycles().iter().map(|c| c.len() - 1).sum();
                        vec![
                            w.to_string(),
                            w.length().to_string(),
                            (n - merges).to_string(),
                        ]
                    })
                    .collect(),
            }
        }
        Family::Trees => forest_table(enumerate_trees(n), order),
        Family::Forests => forest_table(enumerate_plain_forests(n).to_vec(), order),
        Family::Faces => Table {
            header: vec!["dim", "count"],
            rows: (0..n)
                .map(|k| vec![k.to_string(), normal_form_count(n, k).to_string()])
                .collect(),
        },
        Family::Counts => Table {
            header: vec!["nodes", "count"],
            rows: (0..n)
                .map(|k| vec![k.to_string(), plain_forest_count(n, k).to_string()])
                .collect(),
        },
    };
    Ok(table)
}

fn forest_table(mut list: Vec<BnForest>, order: SortOrder) -> Table {
    let key = |f: &BnForest| word_to_string(&f.canonical_word());
    match order {
        SortOrder::Lex => list.sort_by_key(key),
        SortOrder::Length => list.sort_by_key(|f| (f.internal_count(), key(f))),
    }
    Table {
        header: vec!["word", "nodes"],
        rows: list
            .iter()
            .map(|f| vec![key(f), f.internal_count().to_string()])
            .collect(),
    }
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Double Schubert polynomial of a one-line permutation, up to S_6
    Schubert {
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Double forest polynomial of a plain class, up to 7 leaves
    Forest {
        /// Building word such as "r1- e1 e2"
        #[arg(long)]
        reseq: Option<String>,
        /// Noncrossing permutation in one-line form
        #[arg(long)]
        nc: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
    /// Double fundamental of a composition at level n; parts sum to at most 4
    Fundamental {
        /// Comma-separated positive parts, e.g. 2,1
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u8>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
    },
}

fn resolve_poly(kind: PolyCmd) -> Result<(MPoly, Format, Option<String>), String> {
    match kind {
        PolyCmd::Schubert { w, format, out } => {
            let w = Perm::parse(&w).map_err(|e| format!("--w: {e}"))?;
            if w.n() > 6 {
                return Err(format!("--w names a permutation of {} letters; 6 is the cap", w.n()));
            }
            Ok(((*schubert_double(&w)).clone(), format, out))
        }
        PolyCmd::Forest { reseq, nc, format, out } => {
            let class = match (reseq, nc) {
                (Some(word), None) => {
                    let word = parse_word(&word).map_err(|e| format!("--reseq: {e}"))?;
                    if word.len() > 7 {
                        return Err(format!(
                            "--reseq builds {} leaves; 7 is the cap",
                            word.len()
                        ));
                    }
                    let mut f = BnForest::empty();
                    for l in word {
                        f.apply_letter(l).map_err(|e| format!("--reseq: {e}"))?;
                    }
                    let f = strip_trailing(&f);
                    if !f.is_plain() {
                        return Err("--reseq names a class with white nodes; forest polynomials are indexed by plain classes".into());
                    }
                    f
                }
                (None, Some(line)) => {
                    let w = Perm::parse(&line).map_err(|e| format!("--nc: {e}"))?;
                    if w.n() > 6 {
                        return Err(format!("--nc names a permutation of {} letters; 6 is the cap", w.n()));
                    }
                    forest_for_nc(&w).ok_or_else(|| format!("--nc: {w} is not noncrossing"))?
                }
                _ => return Err("pass exactly one of --reseq or --nc".into()),
            };
            Ok(((*forest_poly(&class)).clone(), format, out))
        }
        PolyCmd::Fundamental { alpha, n, format, out } => {
            if alpha.is_empty() || alpha.contains(&0) {
                return Err("--alpha needs positive comma-separated parts".into());
            }
            let degree: u32 = alpha.iter().map(|&a| a as u32).sum();
            if degree > 4 {
                return Err(format!("--alpha sums to {degree}; 4 is the cap"));
            }
            if n == 0 || n > 5 || alpha.len() > n {
                return Err(format!(
                    "--n {n} must lie in 1..=5 and admit {} parts",
                    alpha.len()
                ));
            }
            Ok((fundamental_double(&alpha, n), format, out))
        }
    }
}

fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Text => {
            let mut widths: Vec<usize> = table.header.iter().map(|h| h.len()).collect();
            for row in &table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            let mut out = line(table.header.clone());
            for row in &table.rows {
                out.push('\n');
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = table.header.join(",");
            for row in &table.rows {
                out.push('\n');
                out.push_str(&row.join(","));
            }
            out.push('\n');
            out
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    table
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| ((*h).to_string(), serde_json::Value::from(c.clone())))
                        .collect::<serde_json::Map<_, _>>()
                        .into()
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
            out
        }
    }
}

fn mono_string(e: &Expo) -> String {
    let mut parts = Vec::new();
    for (i, &exp) in e.xs.iter().enumerate() {
        match exp {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, exp)),
        }
    }
    for (i, &exp) in e.ts.iter().enumerate() {
        match exp {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, exp)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn render_poly(p: &MPoly, format: Format) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => {
            let val = serde_json::json!({
                "display": p.to_string(),
                "poly": p,
            });
            let mut out = serde_json::to_string_pretty(&val).expect("polynomial serializes");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = String::from("monomial,coefficient");
            for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
                out.push('\n');
                out.push_str(&mono_string(e));
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
            out
        }
    }
}

fn verify(
    suite: &str,
    n: usize,
    seed: u64,
    jobs: Option<usize>,
    format: Format,
    out: &str,
) -> Result<ExitCode, String> {
    if n == 0 || n > 8 {
        return Err(format!("--n {n} is out of range; suites allow 1..=8"));
    }
    if let Some(j) = jobs {
        if j == 0 {
            return Err("--jobs must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| format!("--jobs: {e}"))?;
    }
    let report = run_suite(suite, n, seed).ok_or_else(|| {
        format!("unknown suite {suite:?}; valid names: {}", SUITES.join(", "))
    })?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    fs::write(out, &json).map_err(|e| format!("writing {out}: {e}"))?;
    match format {
        Format::Text => {
            println!(
                "{} n={} seed={}: {} cases, {} failures [{}]",
                report.suite,
                report.n,
                report.seed,
                report.cases,
                report.failures.len(),
                if report.passed() { "pass" } else { "FAIL" },
            );
            for f in &report.failures {
                println!("  {f}");
            }
            println!("report written to {out}");
        }
        Format::Json => print!("{json}"),
        Format::Csv => {
            println!("suite,n,seed,cases,failures");
            println!(
                "{},{},{},{},{}",
                report.suite,
                report.n,
                report.seed,
                report.cases,
                report.failures.len()
            );
        }
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
