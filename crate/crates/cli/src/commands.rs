//! The four subcommands: spectrum reports, theorem verification tables,
//! conjecture evidence tables, and matrix/graph exports.
//!
//! Exit-code contract: 0 when every asserted claim certified, 1 when a
//! verification failed, 2 for usage, size-cap, and I/O trouble. Output is
//! byte-identical across runs with the same arguments and seed (spectrum
//! reports carry a wall-clock `runtime_ms` field, which is exempt).

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use prefix_spectra::cayley::{CayleyGraph, GeneratorChoice, DEFAULT_VERTEX_CAP};
use prefix_spectra::circulant::{block_determinant, shift_both_singular, shift_up, CirculantMatrix};
use prefix_spectra::exact;
use prefix_spectra::matrix::ExactMatrix;
use prefix_spectra::partition::{
    check_equitable, position_partition, quotient_identity_holds, Direction, EquitableOutcome,
};
use prefix_spectra::reversal::{closed_form, generator_sum, reversal_matrix};
use prefix_spectra::spectra::{
    audit_families, build_report, certify_claimed, cheeger_bounds, claim_matrix, claim_window,
    claimed_integer_spectrum, integer_multiplicities, jacobi, spectral_gap, AuditStatus,
    ReportOptions, Scope,
};
use prefix_spectra::{Error, PrefixReversal, Variant};

use crate::grid::{default_threads, grid_points, parallel_map, RangeList};

/// Graph order up to which the exact expansion ratio is attempted.
const EXACT_CHEEGER_CAP: usize = 20;

const SILVESTER_TRIALS: u32 = 50;

const BOTH_VARIANTS: [Variant; 2] = [Variant::Undirected, Variant::Directed];

#[derive(Debug)]
pub enum Failure {
    /// At least one asserted claim did not certify; the table or report
    /// already says which.
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::Usage(message)
    }
}

#[derive(Parser)]
#[command(
    name = "prefix-spectra",
    version,
    about = "Exact spectral certificates for prefix-reversal graphs of colored permutations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Certify the claimed integer eigenvalues at each grid point and
    /// write JSON reports.
    Spectrum(SpectrumArgs),
    /// Re-run one theorem's verification suite over a parameter grid.
    Verify(VerifyArgs),
    /// Emit conjecture evidence tables as CSV (no pass/fail semantics).
    Conjecture(ConjectureArgs),
    /// Export matrices and graphs as CSV or DOT.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Undirected,
    Directed,
}

impl VariantArg {
    fn to_variant(self) -> Variant {
        match self {
            VariantArg::Undirected => Variant::Undirected,
            VariantArg::Directed => Variant::Directed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Quotient,
    Full,
}

impl ScopeArg {
    fn to_scope(self) -> Scope {
        match self {
            ScopeArg::Quotient => Scope::Quotient,
            ScopeArg::Full => Scope::Full,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Structure,
    CirculantSingularity,
    Silvester,
    Equitable,
    UndirectedSpectrum,
    DirectedSpectrum,
    EigenvectorFamilies,
    DalfoFiol,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Gap,
    Multiplicity,
    Cheeger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    /// Summed reversal matrix (quotient) as CSV.
    Sum,
    /// Circulant-block closed form of the sum as CSV.
    ClosedForm,
    /// One reversal matrix P(r) as CSV; needs --index and --sign.
    Reversal,
    /// Graph adjacency matrix as CSV.
    Adjacency,
    /// Graph edge list as CSV with src,dst,generator header.
    Edges,
    /// Graph in DOT format.
    Dot,
}

#[derive(clap::Args)]
pub struct SpectrumArgs {
    /// Colors per symbol: a value, inclusive range "3..6", or list "3,5".
    #[arg(long)]
    pub m: RangeList,
    /// Symbols: same syntax as --m.
    #[arg(long)]
    pub n: RangeList,
    #[arg(long, value_enum, default_value = "undirected")]
    pub variant: VariantArg,
    /// quotient certifies against the summed reversal matrix; full also
    /// lifts every kernel vector to the graph and re-verifies it there.
    #[arg(long, value_enum, default_value = "quotient")]
    pub scope: ScopeArg,
    /// Include exact kernel vectors (decimal strings) in the JSON.
    #[arg(long)]
    pub with_vectors: bool,
    /// Vertex cap for full-scope graph construction; overrides the
    /// PREFIX_SPECTRA_CAP environment variable.
    #[arg(long)]
    pub cap: Option<u128>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Seed for the randomized exact rank checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub theorem: Theorem,
    /// Grid override; every theorem has its own default. For
    /// circulant-singularity this is the circulant order.
    #[arg(long)]
    pub m: Option<RangeList>,
    #[arg(long)]
    pub n: Option<RangeList>,
    /// Restrict theorems that default to both variants, or pick the
    /// variant for eigenvector-families (default undirected).
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Vertex cap for theorems that build graphs; overrides
    /// PREFIX_SPECTRA_CAP.
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ConjectureArgs {
    #[arg(long, value_enum)]
    pub table: Table,
    #[arg(long)]
    pub m: Option<RangeList>,
    #[arg(long)]
    pub n: Option<RangeList>,
    /// gap and multiplicity tables accept a variant (default undirected);
    /// the cheeger table is undirected by construction.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Add exact expansion ratios to the cheeger table where the graph
    /// has at most 20 vertices.
    #[arg(long)]
    pub exact_cheeger: bool,
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub object: Object,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "undirected")]
    pub variant: VariantArg,
    /// Prefix length for --object reversal.
    #[arg(long)]
    pub index: Option<usize>,
    /// "+" (or "flip") raises colors, "-" (or "flop") lowers them.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
    /// Build the graph on the classical involution generators: flips
    /// only, undirected, and with m=1 the trivial top flip dropped.
    #[arg(long)]
    pub classical: bool,
    #[arg(long)]
    pub cap: Option<u128>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Conjecture(args) => cmd_conjecture(args),
        Command::Export(args) => cmd_export(args),
    }
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<(), Failure> {
    let cap = resolve_cap(args.cap)?;
    let points = grid_points(&args.m, &args.n)?;
    let threads = args.threads.unwrap_or_else(default_threads);
    let variant = args.variant.to_variant();
    let scope = args.scope.to_scope();
    let opts = ReportOptions {
        with_vectors: args.with_vectors,
        seed: args.seed,
        vertex_cap: cap,
    };
    let results = parallel_map(&points, threads, |&(m, n)| {
        build_report(m, n, variant, scope, &opts)
    });
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r?);
    }
    let all_certified = reports.iter().all(|r| r.all_certified());
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .map_err(|e| Failure::Usage(format!("cannot serialize report: {e}")))?;
    write_output(&args.output, &(text + "\n"))?;
    if all_certified {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

enum Outcome {
    Pass,
    /// A formula yielded no testable pair here; counted, never fatal.
    Recorded(String),
    Fail(String),
}

struct Row {
    label: String,
    outcome: Outcome,
}

fn render_rows(rows: &[Row]) -> (String, usize) {
    let mut text = String::new();
    let (mut pass, mut recorded, mut failed) = (0usize, 0usize, 0usize);
    for row in rows {
        match &row.outcome {
            Outcome::Pass => {
                pass += 1;
                text.push_str(&format!("{}: pass\n", row.label));
            }
            Outcome::Recorded(reason) => {
                recorded += 1;
                text.push_str(&format!("{}: recorded ({reason})\n", row.label));
            }
            Outcome::Fail(detail) => {
                failed += 1;
                text.push_str(&format!("{}: FAIL ({detail})\n", row.label));
            }
        }
    }
    text.push_str(&format!(
        "summary: {} instances, {pass} pass, {recorded} recorded, {failed} fail\n",
        rows.len()
    ));
    (text, failed)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let threads = args.threads.unwrap_or_else(default_threads);
    let variants: Vec<Variant> = match args.variant {
        Some(v) => vec![v.to_variant()],
        None => BOTH_VARIANTS.to_vec(),
    };
    let grid = |arg: &Option<RangeList>, lo: u64, hi: u64| {
        arg.clone().unwrap_or_else(|| RangeList::inclusive(lo, hi))
    };
    let rows = match args.theorem {
        Theorem::Structure => structure_rows(
            &grid(&args.m, 3, 8),
            &grid(&args.n, 1, 6),
            &variants,
            threads,
        )?,
        Theorem::CirculantSingularity => circulant_rows(&grid(&args.m, 3, 64))?,
        Theorem::Silvester => silvester_rows(args.seed)?,
        Theorem::Equitable => equitable_rows(
            &grid(&args.m, 3, 4),
            &grid(&args.n, 2, 3),
            &variants,
            resolve_cap(args.cap)?,
            threads,
        )?,
        Theorem::UndirectedSpectrum => certificate_rows(
            &grid(&args.m, 3, 8),
            &grid(&args.n, 2, 6),
            Variant::Undirected,
            args.seed,
            threads,
            "undirected-spectrum",
        )?,
        Theorem::DirectedSpectrum => certificate_rows(
            &grid(&args.m, 3, 8),
            &grid(&args.n, 2, 6),
            Variant::Directed,
            args.seed,
            threads,
            "directed-spectrum",
        )?,
        Theorem::EigenvectorFamilies => family_rows(
            &grid(&args.m, 3, 4),
            &grid(&args.n, 2, 6),
            args.variant.unwrap_or(VariantArg::Undirected).to_variant(),
            threads,
        )?,
        Theorem::DalfoFiol => {
            let ms = grid(&args.m, 1, 2);
            if ms.values().iter().any(|&m| m > 2) {
                return Err(Failure::Usage(
                    "dalfo-fiol covers the classical cases m=1 and m=2 only".into(),
                ));
            }
            certificate_rows(
                &ms,
                &grid(&args.n, 2, 7),
                Variant::Undirected,
                args.seed,
                threads,
                "dalfo-fiol",
            )?
        }
    };
    let (text, failed) = render_rows(&rows);
    write_output(&args.output, &text)?;
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn flatten(results: Vec<Result<Vec<Row>, Failure>>) -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

fn structure_rows(
    ms: &RangeList,
    ns: &RangeList,
    variants: &[Variant],
    threads: usize,
) -> Result<Vec<Row>, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<Vec<Row>, Failure> {
        let mut rows = Vec::new();
        for &variant in variants {
            let sum = generator_sum(m, n, variant)?;
            let closed = closed_form(m, n, variant)?;
            rows.push(Row {
                label: format!("structure m={m} n={n} {}", variant.as_str()),
                outcome: if sum == closed {
                    Outcome::Pass
                } else {
                    Outcome::Fail("generator sum differs from the circulant-block form".into())
                },
            });
        }
        Ok(rows)
    });
    flatten(results)
}

fn circulant_rows(orders: &RangeList) -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    for &order in orders.values() {
        let order = usize::try_from(order)
            .map_err(|_| Failure::Usage(format!("order {order} does not fit in usize")))?;
        let singular = shift_both_singular(order)?;
        let expected = order % 4 == 0;
        let det_up = shift_up(order)?.det();
        let outcome = if singular != expected {
            Outcome::Fail(format!(
                "two-way shift singular={singular}, expected singular={expected}"
            ))
        } else if !matches!(det_up.to_i64(), Some(1) | Some(-1)) {
            Outcome::Fail(format!("one-way shift determinant {det_up} is not a unit"))
        } else {
            Outcome::Pass
        };
        rows.push(Row {
            label: format!("circulant-singularity m={order}"),
            outcome,
        });
    }
    Ok(rows)
}

fn silvester_rows(seed: u64) -> Result<Vec<Row>, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for trial in 0..SILVESTER_TRIALS {
        let bm = rng.gen_range(1..=4usize);
        let bn = rng.gen_range(1..=3usize);
        let blocks: Vec<Vec<CirculantMatrix>> = (0..bn)
            .map(|_| {
                (0..bn)
                    .map(|_| {
                        let row: Vec<i64> = (0..bm).map(|_| rng.gen_range(-3..=3)).collect();
                        CirculantMatrix::from_i64(&row).expect("first row is nonempty")
                    })
                    .collect()
            })
            .collect();
        let expanded: Vec<Vec<ExactMatrix>> = blocks
            .iter()
            .map(|r| r.iter().map(CirculantMatrix::expand).collect())
            .collect();
        let full = ExactMatrix::from_fn(bn * bm, bn * bm, |r, c| {
            expanded[r / bm][c / bm].get(r % bm, c % bm).clone()
        });
        let via_blocks = block_determinant(&blocks)?;
        let via_full = exact::det(&full)?;
        rows.push(Row {
            label: format!("silvester trial={trial:02} m={bm} n={bn}"),
            outcome: if via_blocks == via_full {
                Outcome::Pass
            } else {
                Outcome::Fail(format!(
                    "block determinant {via_blocks} != expanded determinant {via_full}"
                ))
            },
        });
    }
    Ok(rows)
}

fn equitable_rows(
    ms: &RangeList,
    ns: &RangeList,
    variants: &[Variant],
    cap: u128,
    threads: usize,
) -> Result<Vec<Row>, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<Vec<Row>, Failure> {
        let mut rows = Vec::new();
        for &variant in variants {
            let g = CayleyGraph::build_with(m, n, GeneratorChoice::Standard(variant), cap)?;
            let p = position_partition(&g)?;
            rows.push(Row {
                label: format!("equitable m={m} n={n} {}", variant.as_str()),
                outcome: equitable_outcome(&g, &p, m, n, variant)?,
            });
        }
        Ok(rows)
    });
    flatten(results)
}

fn equitable_outcome(
    g: &CayleyGraph,
    p: &prefix_spectra::partition::VertexPartition,
    m: u32,
    n: usize,
    variant: Variant,
) -> Result<Outcome, Failure> {
    let quotient = match check_equitable(g, p, Direction::Out)? {
        EquitableOutcome::Equitable { quotient } => quotient,
        EquitableOutcome::Violation(v) => {
            return Ok(Outcome::Fail(format!(
                "vertex {} of class {} reaches class {} {} times, representative reaches it {}",
                v.vertex, v.class, v.target_class, v.found, v.expected
            )))
        }
    };
    if quotient != generator_sum(m, n, variant)? {
        return Ok(Outcome::Fail(
            "out-quotient differs from the summed reversal matrix".into(),
        ));
    }
    if !quotient_identity_holds(g, p, &quotient) {
        return Ok(Outcome::Fail(
            "adjacency times characteristic matrix differs from characteristic times quotient"
                .into(),
        ));
    }
    match check_equitable(g, p, Direction::In)? {
        EquitableOutcome::Equitable { quotient: inward } => {
            if inward != quotient.transpose() {
                return Ok(Outcome::Fail(
                    "in-quotient is not the transpose of the out-quotient".into(),
                ));
            }
        }
        EquitableOutcome::Violation(_) => {
            return Ok(Outcome::Fail("in-orientation is not equitable".into()))
        }
    }
    Ok(Outcome::Pass)
}

fn certificate_rows(
    ms: &RangeList,
    ns: &RangeList,
    variant: Variant,
    seed: u64,
    threads: usize,
    title: &'static str,
) -> Result<Vec<Row>, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<Vec<Row>, Failure> {
        let certs = certify_claimed(m, n, variant, seed)?;
        let lambdas: Vec<String> = certs.iter().map(|c| c.lambda.to_string()).collect();
        let outcome = match certs.iter().find(|c| !c.verified) {
            None => Outcome::Pass,
            Some(c) => Outcome::Fail(format!(
                "no exact kernel certificate for lambda={}",
                c.lambda
            )),
        };
        Ok(vec![Row {
            label: format!("{title} m={m} n={n} claimed {{{}}}", lambdas.join(",")),
            outcome,
        }])
    });
    flatten(results)
}

fn family_rows(
    ms: &RangeList,
    ns: &RangeList,
    variant: Variant,
    threads: usize,
) -> Result<Vec<Row>, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<Vec<Row>, Failure> {
        let audits = audit_families(m, n, variant)?;
        Ok(audits
            .into_iter()
            .map(|audit| {
                let mut label = format!(
                    "eigenvector-families m={m} n={n} {} {}",
                    variant.as_str(),
                    audit.kind.name()
                );
                if let Some(i) = audit.index {
                    label.push_str(&format!(" i={i}"));
                }
                if let Some(lambda) = audit.claimed_lambda {
                    label.push_str(&format!(" lambda={lambda}"));
                }
                let outcome = match audit.status {
                    AuditStatus::Verified => Outcome::Pass,
                    AuditStatus::Inapplicable { reason } => Outcome::Recorded(reason),
                    AuditStatus::Failed { row } => Outcome::Fail(format!(
                        "matrix-vector product misses the claim first at row {row}"
                    )),
                };
                Row { label, outcome }
            })
            .collect())
    });
    flatten(results)
}

fn cmd_conjecture(args: ConjectureArgs) -> Result<(), Failure> {
    let threads = args.threads.unwrap_or_else(default_threads);
    let grid = |arg: &Option<RangeList>, lo: u64, hi: u64| {
        arg.clone().unwrap_or_else(|| RangeList::inclusive(lo, hi))
    };
    let variant = args
        .variant
        .map_or(Variant::Undirected, VariantArg::to_variant);
    let text = match args.table {
        Table::Gap => gap_table(
            &grid(&args.m, 3, 6),
            &grid(&args.n, 2, 5),
            variant,
            threads,
        )?,
        Table::Multiplicity => multiplicity_table(
            &grid(&args.m, 3, 4),
            &grid(&args.n, 2, 4),
            variant,
            args.seed,
            threads,
        )?,
        Table::Cheeger => {
            if args.variant == Some(VariantArg::Directed) {
                return Err(Failure::Usage(
                    "the cheeger table is defined on the undirected graphs".into(),
                ));
            }
            cheeger_table(
                &grid(&args.m, 3, 6),
                &grid(&args.n, 2, 2),
                args.exact_cheeger,
                resolve_cap(args.cap)?,
                threads,
            )?
        }
    };
    write_output(&args.output, &text)
}

fn gap_table(
    ms: &RangeList,
    ns: &RangeList,
    variant: Variant,
    threads: usize,
) -> Result<String, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<String, Failure> {
        match variant {
            Variant::Undirected => {
                let matrix = claim_matrix(m, n, variant)?;
                let degree = matrix.row_sums()[0]
                    .to_u64()
                    .ok_or_else(|| Failure::Usage(format!("degree at m={m} n={n} overflows")))?;
                let spectrum = jacobi::eigenvalues(&matrix)?;
                let gap = spectral_gap(&spectrum, degree)?;
                Ok(format!("{m},{n},undirected,gap,{gap:.12}\n"))
            }
            Variant::Directed => {
                // The claimed integers are certified eigenvalues, so the
                // distance from the top one bounds the gap from above.
                let claimed = claimed_integer_spectrum(m, n, variant)?;
                let top = claimed[claimed.len() - 1];
                let second = claimed[claimed.len() - 2];
                let bound = (top - second) as f64;
                Ok(format!("{m},{n},directed,gap-upper-bound,{bound:.12}\n"))
            }
        }
    });
    let mut text = String::from("m,n,variant,quantity,value\n");
    for chunk in results {
        text.push_str(&chunk?);
    }
    Ok(text)
}

fn multiplicity_table(
    ms: &RangeList,
    ns: &RangeList,
    variant: Variant,
    seed: u64,
    threads: usize,
) -> Result<String, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<String, Failure> {
        let matrix = claim_matrix(m, n, variant)?;
        let (lo, hi) = claim_window(m, n, variant)?;
        let mut chunk = String::new();
        for (lambda, mult) in integer_multiplicities(&matrix, lo, hi, seed)? {
            chunk.push_str(&format!(
                "{m},{n},{},{lambda},{mult}\n",
                variant.as_str()
            ));
        }
        Ok(chunk)
    });
    let mut text = String::from("m,n,variant,lambda,multiplicity\n");
    for chunk in results {
        text.push_str(&chunk?);
    }
    Ok(text)
}

fn cheeger_table(
    ms: &RangeList,
    ns: &RangeList,
    exact_cheeger: bool,
    cap: u128,
    threads: usize,
) -> Result<String, Failure> {
    let points = grid_points(ms, ns)?;
    let results = parallel_map(&points, threads, |&(m, n)| -> Result<String, Failure> {
        let g = CayleyGraph::build_with(m, n, GeneratorChoice::Standard(Variant::Undirected), cap)?;
        let spectrum = jacobi::eigenvalues(&g.adjacency_matrix())?;
        if spectrum.len() < 2 {
            return Err(Failure::Usage(format!(
                "graph at m={m} n={n} has a single vertex, no gap to bound"
            )));
        }
        let lambda2 = spectrum[1];
        let (lower, upper) = cheeger_bounds(g.degree() as f64, lambda2)?;
        let exact = if exact_cheeger && g.vertex_count() <= EXACT_CHEEGER_CAP {
            g.expansion_ratio_exact(EXACT_CHEEGER_CAP)?.ratio.to_string()
        } else {
            String::new()
        };
        Ok(format!(
            "{m},{n},{},{lambda2:.12},{lower:.12},{upper:.12},{exact}\n",
            g.degree()
        ))
    });
    let mut text = String::from("m,n,d,lambda2,lower,upper,exact\n");
    for chunk in results {
        text.push_str(&chunk?);
    }
    Ok(text)
}

fn cmd_export(args: ExportArgs) -> Result<(), Failure> {
    let variant = args.variant.to_variant();
    let text = match args.object {
        Object::Sum => generator_sum(args.m, args.n, variant)?.to_csv(),
        Object::ClosedForm => closed_form(args.m, args.n, variant)?.to_csv(),
        Object::Reversal => {
            let index = args
                .index
                .ok_or_else(|| Failure::Usage("--object reversal needs --index".into()))?;
            let r = match args.sign.as_str() {
                "+" | "flip" => PrefixReversal::flip(index),
                "-" | "flop" => PrefixReversal::flop(index),
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown sign '{other}', use + or - (or flip/flop)"
                    )))
                }
            };
            reversal_matrix(r, args.m, args.n)?.to_csv()
        }
        Object::Adjacency | Object::Edges | Object::Dot => {
            let choice = if args.classical {
                GeneratorChoice::Classical
            } else {
                GeneratorChoice::Standard(variant)
            };
            let g = CayleyGraph::build_with(args.m, args.n, choice, resolve_cap(args.cap)?)?;
            match args.object {
                Object::Adjacency => g.adjacency_matrix().to_csv(),
                Object::Edges => g.to_edge_csv(),
                Object::Dot => g.to_dot(),
                _ => unreachable!("matched a matrix object in the graph arm"),
            }
        }
    };
    write_output(&args.output, &text)
}

fn resolve_cap(flag: Option<u128>) -> Result<u128, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("PREFIX_SPECTRA_CAP") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("PREFIX_SPECTRA_CAP is not an integer: '{text}'"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_VERTEX_CAP),
        Err(e) => Err(Failure::Usage(format!("PREFIX_SPECTRA_CAP unreadable: {e}"))),
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
