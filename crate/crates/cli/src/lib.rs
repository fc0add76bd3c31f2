//! Command-line front end: single-query classification, the family table,
//! verification sweeps, cohomology queries and the catalog dump, each in
//! both human-readable and JSON form.
//!
//! Exit codes: 0 ok, 1 sweep discrepancy, 2 invalid input, 3 inference
//! incomplete (an Unknown blocked the requested conclusion).

use clap::{ArgGroup, Args, Parser, Subcommand};
use hilbfano_core::catalog::{self, CurveQuality, DimFormula};
use hilbfano_core::classifier::{self, CurveCase, DeformationReport, MumfordFamilyRow, SweepReport};
use hilbfano_core::cohomology::{self, Entry};
use hilbfano_core::{EType, Error, LatticeContext};
use serde::{Deserialize, Serialize};
use std::io::IsTerminal;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISCREPANCY: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_INFERENCE_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hilbfano",
    version,
    about = "Deformation invariants of curves on K3 surfaces in prime Fano 3-folds",
    long_about = "Computes, in exact integer arithmetic, the degree, genus, flag-scheme and \
Hilbert-scheme dimensions of a curve C on an anticanonical K3 surface S in a prime Fano \
3-fold V, and decides obstructedness, stable degeneracy and membership in a generically \
non-reduced component."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the deformation behavior of a curve class on S
    Classify(ClassifyArgs),
    /// Print the per-genus family table and the cross-index ledger
    #[command(visible_alias = "mumford")]
    Table1(TableArgs),
    /// Run the dual-path verification sweep over a grid of cases
    Sweep(SweepArgs),
    /// Cohomology dimensions of a line bundle on S
    Coh(CohArgs),
    /// Dump the classification of prime Fano 3-folds and curve types
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("case").required(true).args(["ci", "line", "conic"])))]
pub struct ClassifyArgs {
    /// Genus of the prime Fano 3-fold (2..=10 or 12)
    #[arg(long)]
    pub genus: i64,
    /// Complete intersection C ~ n h
    #[arg(long, value_name = "N", allow_negative_numbers = true)]
    pub ci: Option<i64>,
    /// C ~ a h + b E with E a line
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub line: Option<Vec<i64>>,
    /// C ~ a h + b E with E a conic
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub conic: Option<Vec<i64>>,
    /// Emit the machine-readable envelope instead of text
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Print the rows for every cataloged genus (the default)
    #[arg(long)]
    pub all_genera: bool,
    /// Restrict to a single genus
    #[arg(long, conflicts_with = "all_genera")]
    pub genus: Option<i64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Inclusive genus range, e.g. 2..12 (non-catalog genera are skipped)
    #[arg(long, default_value = "2..12")]
    pub genus_range: String,
    /// Upper bound for n (complete intersections) and a (conic cases);
    /// line cases sweep a up to twice this bound
    #[arg(long, default_value_t = 6)]
    pub a_max: i64,
    /// Upper bound for the E-coefficient b
    #[arg(long, default_value_t = 6)]
    pub b_max: i64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CohArgs {
    #[arg(long)]
    pub genus: i64,
    /// Kind of the curve E: line or conic
    #[arg(long, value_parser = parse_e_type)]
    pub e_type: EType,
    /// Coefficient of h
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: i64,
    /// Coefficient of E
    #[arg(long, allow_negative_numbers = true)]
    pub beta: i64,
    /// Fail (exit 3) if any of h0, h1, h2 stays unknown
    #[arg(long)]
    pub require_known: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[arg(long)]
    pub json: bool,
}

fn parse_e_type(s: &str) -> Result<EType, String> {
    match s {
        "line" => Ok(EType::Line),
        "conic" => Ok(EType::Conic),
        other => Err(format!("unknown curve kind '{other}', expected line or conic")),
    }
}

/// Echo of the parsed query, embedded in every envelope.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus_range: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub require_known: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvalidInput,
    InferenceIncomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub message: String,
}

/// JSON-friendly mirror of a catalog family row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub genus: i64,
    pub anticanonical_degree: i64,
    pub model_description: String,
    pub hyperelliptic: bool,
    pub embedding_target_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub footnote: Option<String>,
}

/// JSON-friendly mirror of a ledger row, with the index-1 formula expanded
/// per cataloged genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub index: i64,
    pub surface_class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve_class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_kind: Option<String>,
    pub dim_w: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub dim_w_by_genus: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveTypeRow {
    pub kind: String,
    pub splitting: (i64, i64),
    pub quality: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultBody {
    Classification(DeformationReport),
    Table {
        families: Vec<MumfordFamilyRow>,
        ledger: Vec<LedgerRow>,
    },
    Cohomology {
        genus: i64,
        e_type: String,
        alpha: i64,
        beta: i64,
        chi: i64,
        h0: Entry,
        h1: Entry,
        h2: Entry,
        h0_min: i64,
    },
    Sweep(SweepReport),
    Catalog {
        families: Vec<FamilyRow>,
        curve_types: Vec<CurveTypeRow>,
        ledger: Vec<LedgerRow>,
    },
}

/// The one output shape of every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: u32,
    pub query: Query,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<ResultBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
    pub derivation: Vec<String>,
}

impl ReportEnvelope {
    fn ok(query: Query, result: ResultBody, derivation: Vec<String>) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION,
            query,
            status: Status::Ok,
            result: Some(result),
            error: None,
            derivation,
        }
    }

    fn failed(query: Query, status: Status, message: String) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION,
            query,
            status,
            result: None,
            error: Some(ErrorBody { message }),
            derivation: Vec::new(),
        }
    }
}

fn status_of(err: &Error) -> (Status, i32) {
    match err {
        Error::InferenceIncomplete { .. } => (Status::InferenceIncomplete, EXIT_INFERENCE_INCOMPLETE),
        _ => (Status::InvalidInput, EXIT_INVALID_INPUT),
    }
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

fn paint(text: &str, code: &str) -> String {
    if use_color() {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn ledger_rows() -> Vec<LedgerRow> {
    catalog::mumford_table()
        .into_iter()
        .map(|row| {
            let dim_w_by_genus = if row.dim_w == DimFormula::PrimeFanoGenus {
                classifier::catalog_genera()
                    .into_iter()
                    .map(|g| (g, row.dim_w.eval(g)))
                    .collect()
            } else {
                Vec::new()
            };
            LedgerRow {
                index: row.index,
                surface_class: row.surface_class.to_string(),
                curve_class: row.curve_class.map(str::to_string),
                e_kind: row.e_kind.map(|k| k.to_string()),
                dim_w: row.dim_w.display(),
                dim_w_by_genus,
            }
        })
        .collect()
}

fn emit(envelope: &ReportEnvelope, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(envelope).expect("envelope serializes")
        );
    } else {
        print_human(envelope);
    }
    if let Some(err) = &envelope.error {
        if !json {
            eprintln!("error: {}", err.message);
        }
    }
}

fn entry_cell(e: Entry) -> String {
    match e {
        Entry::Known(v) => v.to_string(),
        Entry::Unknown => "unknown".to_string(),
    }
}

fn print_human(envelope: &ReportEnvelope) {
    match &envelope.result {
        Some(ResultBody::Classification(r)) => print_classification(r),
        Some(ResultBody::Table { families, ledger }) => print_table(families, ledger),
        Some(ResultBody::Cohomology {
            genus,
            e_type,
            alpha,
            beta,
            chi,
            h0,
            h1,
            h2,
            h0_min,
        }) => {
            println!("O_S({alpha}h{beta:+}E) on the K3 in a genus-{genus} Fano 3-fold (E a {e_type})");
            println!("  chi = {chi}");
            let h0_note = match (h0, h0_min) {
                (Entry::Unknown, m) if *m > 0 => format!("unknown (>= {m})"),
                (e, _) => entry_cell(*e),
            };
            println!("  h0  = {h0_note}");
            println!("  h1  = {}", entry_cell(*h1));
            println!("  h2  = {}", entry_cell(*h2));
            println!("  derivation:");
            for step in &envelope.derivation {
                println!("    - {step}");
            }
        }
        Some(ResultBody::Sweep(s)) => print_sweep(s),
        Some(ResultBody::Catalog {
            families,
            curve_types,
            ledger,
        }) => {
            println!("prime Fano 3-folds (degree = 2g-2, anticanonical image in P^(g+1)):");
            for f in families {
                println!(
                    "  g={:<2} deg={:<2} {}{}",
                    f.genus,
                    f.anticanonical_degree,
                    f.model_description,
                    if f.hyperelliptic { "  [hyperelliptic]" } else { "" }
                );
                if let Some(note) = &f.footnote {
                    println!("        note: {note}");
                }
            }
            println!("\nnormal bundle types of lines and conics:");
            for t in curve_types {
                println!(
                    "  {:<5} N_E/V = O({}) + O({})  [{}]",
                    t.kind, t.splitting.0, t.splitting.1, t.quality
                );
            }
            println!();
            print_ledger(ledger);
        }
        None => {}
    }
}

fn print_classification(r: &DeformationReport) {
    println!("curve {} on S in a genus-{} prime Fano 3-fold", r.case, r.genus);
    for notice in &r.notices {
        println!("  notice: {notice}");
    }
    println!("  degree d(C)             {}", r.degree);
    println!("  genus g(C)              {}", r.genus_c);
    println!("  chi of flag pair        {}", r.chi_flag);
    println!("  h1 of flag pair         {}", entry_cell(r.h1_flag));
    println!("  h1(S, D)                {}", entry_cell(r.h1_sd));
    println!("  dim flag scheme         {}", r.dim_flag);
    println!("  dim Hilb at [C]         {}", r.dim_hilb_at_c);
    println!("  h0(N_C/V)               {}", entry_cell(r.h0_nc));
    println!(
        "  stably degenerate       {}",
        if r.stably_degenerate { "yes" } else { "no" }
    );
    let obstructed = if r.obstructed {
        paint("yes", "31")
    } else {
        paint("no", "32")
    };
    println!("  obstructed              {obstructed}");
    println!(
        "  non-reduced component   {}",
        if r.non_reduced_component { "yes" } else { "no" }
    );
    println!("  derivation:");
    for step in &r.derivation {
        println!("    - {step}");
    }
}

fn print_table(families: &[MumfordFamilyRow], ledger: &[LedgerRow]) {
    println!("non-reduced component families (conics -> pairs -> curves):");
    println!("  g   dim conics  dim pairs  dim W   d(C)  g(C)  h0(N_C/V)");
    for f in families {
        println!(
            "  {:<3} {:<11} {:<10} {:<7} {:<5} {:<5} {}",
            f.genus, f.dim_conic_family, f.dim_pair_family, f.dim_w, f.degree, f.genus_c, f.h0_nc
        );
    }
    println!();
    print_ledger(ledger);
}

fn print_ledger(ledger: &[LedgerRow]) {
    println!("non-reduced components of this type across Fano indices:");
    println!("  r   S class   C class        E      dim W");
    for row in ledger {
        println!(
            "  {:<3} {:<9} {:<14} {:<6} {}",
            row.index,
            row.surface_class,
            row.curve_class.as_deref().unwrap_or("-"),
            row.e_kind.as_deref().unwrap_or("-"),
            row.dim_w
        );
        if !row.dim_w_by_genus.is_empty() {
            let expansion: Vec<String> = row
                .dim_w_by_genus
                .iter()
                .map(|(g, d)| format!("g={g}: {d}"))
                .collect();
            println!("      {}", expansion.join(", "));
        }
    }
}

fn print_sweep(s: &SweepReport) {
    println!(
        "sweep over genera {:?}, n,a <= {} (lines up to a <= {}), b <= {}",
        s.genera,
        s.a_max,
        2 * s.a_max,
        s.b_max
    );
    println!(
        "  cases checked: {} ({} normalization notices)",
        s.cases_total, s.normalization_notices
    );
    println!("  counts by kind and obstructedness:");
    for c in &s.counts {
        println!(
            "    {:<22} obstructed={:<5} {}",
            c.kind, c.obstructed, c.count
        );
    }
    if s.discrepancies.is_empty() {
        println!("  result: {} — 0 discrepancies", paint("PASS", "32"));
    } else {
        let first = &s.discrepancies[0];
        println!(
            "  result: {} — {} discrepancies; first: g={} {} field {} ({} vs {})",
            paint("FAIL", "31"),
            s.discrepancies.len(),
            first.genus,
            first.case,
            first.field,
            first.via_chi_path,
            first.via_closed_form
        );
    }
}

fn parse_genus_range(spec: &str) -> Result<(i64, i64), String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range '{spec}'"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range '{spec}'"))?;
        if lo > hi {
            return Err(format!("empty range '{spec}'"));
        }
        Ok((lo, hi))
    } else {
        let g: i64 = spec.trim().parse().map_err(|_| format!("bad range '{spec}'"))?;
        Ok((g, g))
    }
}

/// Execute one parsed invocation; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Classify(args) => run_classify(args),
        Command::Table1(args) => run_table(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Coh(args) => run_coh(args),
        Command::Catalog(args) => run_catalog(args),
    }
}

fn run_classify(args: ClassifyArgs) -> i32 {
    let (case, kind) = if let Some(n) = args.ci {
        (CurveCase::CompleteIntersection { n }, "ci")
    } else if let Some(ab) = &args.line {
        (CurveCase::WithLine { a: ab[0], b: ab[1] }, "line")
    } else {
        let ab = args.conic.as_ref().expect("clap enforces the case group");
        (CurveCase::WithConic { a: ab[0], b: ab[1] }, "conic")
    };
    let (alpha, beta) = case.class_coefficients();
    let query = Query {
        command: "classify".into(),
        genus: Some(args.genus),
        case_kind: Some(kind.into()),
        n: args.ci,
        a: if args.ci.is_none() { Some(alpha) } else { None },
        b: if args.ci.is_none() { Some(beta) } else { None },
        ..Query::default()
    };
    match hilbfano_core::classify(args.genus, case) {
        Ok(report) => {
            let derivation = report.derivation.clone();
            let envelope =
                ReportEnvelope::ok(query, ResultBody::Classification(report), derivation);
            emit(&envelope, args.json);
            EXIT_OK
        }
        Err(err) => {
            let (status, code) = status_of(&err);
            let envelope = ReportEnvelope::failed(query, status, err.to_string());
            emit(&envelope, args.json);
            code
        }
    }
}

fn run_table(args: TableArgs) -> i32 {
    let genera = match args.genus {
        Some(g) => vec![g],
        None => classifier::catalog_genera(),
    };
    let query = Query {
        command: "table1".into(),
        genus: args.genus,
        ..Query::default()
    };
    let mut families = Vec::new();
    for g in genera {
        match classifier::mumford_family_row(g) {
            Ok(row) => families.push(row),
            Err(err) => {
                let (status, code) = status_of(&err);
                let envelope = ReportEnvelope::failed(query, status, err.to_string());
                emit(&envelope, args.json);
                return code;
            }
        }
    }
    let derivation = vec![
        "dim W = dim(conic family) + (g-2) + (4g+1) = 5g+1, a tower of projective bundles".into(),
        "h0(N_C/V) = dim W + 1 since h1(S, D) is one-dimensional on this family".into(),
    ];
    let envelope = ReportEnvelope::ok(
        query,
        ResultBody::Table {
            families,
            ledger: ledger_rows(),
        },
        derivation,
    );
    emit(&envelope, args.json);
    EXIT_OK
}

fn run_sweep(args: SweepArgs) -> i32 {
    let query = Query {
        command: "sweep".into(),
        genus_range: Some(args.genus_range.clone()),
        a_max: Some(args.a_max),
        b_max: Some(args.b_max),
        ..Query::default()
    };
    let (lo, hi) = match parse_genus_range(&args.genus_range) {
        Ok(bounds) => bounds,
        Err(msg) => {
            let envelope = ReportEnvelope::failed(query, Status::InvalidInput, msg);
            emit(&envelope, args.json);
            return EXIT_INVALID_INPUT;
        }
    };
    let genera: Vec<i64> = (lo..=hi).collect();
    let report = classifier::cross_check(&genera, args.a_max, args.b_max);
    let clean = report.is_clean();
    let derivation = vec![
        "path A: degree, genus and dimensions from the lattice pairing and flag chi".into(),
        "path B: per-case closed forms in (g, n, a, b)".into(),
        "every report field compared cell by cell".into(),
    ];
    let envelope = ReportEnvelope::ok(query, ResultBody::Sweep(report), derivation);
    emit(&envelope, args.json);
    if clean {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    }
}

fn run_coh(args: CohArgs) -> i32 {
    let query = Query {
        command: "coh".into(),
        genus: Some(args.genus),
        e_type: Some(args.e_type.to_string()),
        alpha: Some(args.alpha),
        beta: Some(args.beta),
        require_known: Some(args.require_known),
        ..Query::default()
    };
    let ctx = match LatticeContext::new(args.genus, args.e_type) {
        Ok(ctx) => ctx,
        Err(err) => {
            let (status, code) = status_of(&err);
            let envelope = ReportEnvelope::failed(query, status, err.to_string());
            emit(&envelope, args.json);
            return code;
        }
    };
    let d = ctx.divisor(args.alpha, args.beta);
    let dims = cohomology::coh_dims(&d);
    let derivation: Vec<String> = dims.trace.iter().map(|s| s.to_string()).collect();
    let unknown_fields: Vec<&str> = [("h0", dims.h0), ("h1", dims.h1), ("h2", dims.h2)]
        .iter()
        .filter(|(_, e)| !e.is_known())
        .map(|(name, _)| *name)
        .collect();
    let body = ResultBody::Cohomology {
        genus: args.genus,
        e_type: args.e_type.to_string(),
        alpha: args.alpha,
        beta: args.beta,
        chi: cohomology::chi_rr(&d),
        h0: dims.h0,
        h1: dims.h1,
        h2: dims.h2,
        h0_min: dims.h0_min,
    };
    let mut envelope = ReportEnvelope::ok(query, body, derivation);
    if args.require_known && !unknown_fields.is_empty() {
        envelope.status = Status::InferenceIncomplete;
        envelope.error = Some(ErrorBody {
            message: format!(
                "no rule pinned {} for {}h{:+}E",
                unknown_fields.join(", "),
                args.alpha,
                args.beta
            ),
        });
        emit(&envelope, args.json);
        return EXIT_INFERENCE_INCOMPLETE;
    }
    emit(&envelope, args.json);
    EXIT_OK
}

fn run_catalog(args: CatalogArgs) -> i32 {
    let query = Query {
        command: "catalog".into(),
        ..Query::default()
    };
    let families = catalog::catalog_rows()
        .into_iter()
        .map(|f| FamilyRow {
            genus: f.genus,
            anticanonical_degree: f.anticanonical_degree,
            model_description: f.model_description.to_string(),
            hyperelliptic: f.hyperelliptic,
            embedding_target_dim: f.embedding_target_dim,
            footnote: f.footnote.map(str::to_string),
        })
        .collect();
    let curve_types = catalog::rational_curve_types()
        .into_iter()
        .map(|t| CurveTypeRow {
            kind: t.kind.to_string(),
            splitting: t.splitting,
            quality: match t.quality {
                CurveQuality::Good => "good".to_string(),
                CurveQuality::Intermediate => "intermediate".to_string(),
                CurveQuality::Bad => "bad".to_string(),
            },
        })
        .collect();
    let envelope = ReportEnvelope::ok(
        query,
        ResultBody::Catalog {
            families,
            curve_types,
            ledger: ledger_rows(),
        },
        vec!["static classification data; every row satisfies degree = 2g-2".into()],
    );
    emit(&envelope, args.json);
    EXIT_OK
}
