//! The `omega-cofrob` command line.
//!
//! Exit codes: 0 success, 1 a check failed (a witness is printed), 2 bad
//! input, 3 a homology cell was truncated.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cobar::{check_d_squared, BasisCache, CACHE_ENV};
use crate::cofrob::{check_coassoc, chi_of, counit_check};
use crate::correspondence::{check_relations, check_theorem, family_to_weyl, weyl_to_family, FamilyFile, RelationVerdict};
use crate::graded::{format_scalar, GradedBasis};
use crate::homology::{betti_grid, relation_statuses, Limits};
use crate::weyl::random::{random_chain_basis, random_reduced_element, random_square_zero_element};
use crate::weyl::{check_circ_k_exhaustive, pq_product, square_zero_report, star, weyl_to_pq, OperatorFile, SquareZeroVerdict, Truncation, WeylElement, WeylError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATED: i32 = 3;

/// Seed for the randomised suites when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Parser)]
#[command(name = "omega-cofrob", version, about = "Star products, the coFrob cobar complex and its homology")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads; all output is identical for any value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached graph bases.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Star product of two operator files.
    Star {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long, default_value_t = 6)]
        arity_max: usize,
    },
    /// Whether `H⋆H` vanishes within the cutoff.
    SquareZero {
        h: PathBuf,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long, default_value_t = 3)]
        arity_max: usize,
    },
    /// Runs one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest arity (coassoc, compare-circk, theorem) or largest `r + t`
        /// (dsq).
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_genus: usize,
        /// Most vertices per graph (dsq).
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        /// Random elements to draw (theorem).
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
    /// Betti numbers of one cell or a grid of cells.
    Homology {
        #[arg(long, requires_all = ["t", "g"], conflicts_with = "grid")]
        r: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        g: Option<usize>,
        /// Every cell with `r + t ≤ max_total` (or `r, t ≤ max_arity`) and
        /// genus `≤ gmax`.
        #[arg(long)]
        grid: bool,
        #[arg(long, conflicts_with = "max_arity")]
        max_total: Option<usize>,
        #[arg(long)]
        max_arity: Option<usize>,
        #[arg(long, default_value_t = 2)]
        gmax: usize,
        #[arg(long, default_value_t = Limits::default().p_max)]
        pmax: usize,
        #[arg(long, default_value_t = Limits::default().max_basis)]
        max_basis: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        allow_truncated: bool,
    },
    /// Basis sizes of one cell, read from and written to the cache.
    Basis {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
    },
    /// Operator file of `H` from a family file.
    ToWeyl { family: PathBuf },
    /// Family file from an operator file of `H`.
    ToFamily { h: PathBuf },
    /// Checks the quadratic relations of a family file.
    Relations {
        family: PathBuf,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long, default_value_t = 3)]
        arity_max: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coassoc,
    Dsq,
    CompareCirck,
    Theorem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A failed run: the exit code and a message for stderr.
struct Failure(i32, String);

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_operator(path: &Path) -> Result<(GradedBasis, WeylElement), Failure> {
    OperatorFile::from_json(&read(path)?).and_then(|f| f.to_weyl()).map_err(input_error)
}

/// Parses `args` and runs the command, writing results to `out`. Returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = config.threads {
        // only the first call in a process can size the global pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut text = String::new();
    let code = match execute(&config, &mut text) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            code
        }
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_INPUT;
    }
    code
}

fn execute(config: &RunConfig, out: &mut String) -> Result<i32, Failure> {
    match &config.command {
        Command::Star { a, b, gmax, arity_max } => {
            let (basis, f) = load_operator(a)?;
            let (basis_b, g) = load_operator(b)?;
            if basis != basis_b {
                return Err(input_error(WeylError::BasisMismatch));
            }
            let cutoff = Truncation::new(*gmax, *arity_max);
            let product = star(&basis, &f, &g, cutoff);
            let coordinates = weyl_to_pq(&basis, &product);
            let oracle = pq_product(&basis, &weyl_to_pq(&basis, &f), &weyl_to_pq(&basis, &g)).truncated(cutoff);
            writeln!(out, "{}", coordinates.format(&basis)).unwrap();
            writeln!(out, "oracle_agreement: {}", oracle == coordinates).unwrap();
            writeln!(out, "{}", OperatorFile::from_weyl(&basis, &product).to_json()).unwrap();
            Ok(if oracle == coordinates { EXIT_OK } else { EXIT_FAILED })
        }
        Command::SquareZero { h, gmax, arity_max } => {
            let (basis, h) = load_operator(h)?;
            match square_zero_report(&basis, &h, Truncation::new(*gmax, *arity_max)).map_err(input_error)? {
                SquareZeroVerdict::Zero { .. } => {
                    writeln!(out, "H⋆H = 0 for genus ≤ {gmax}, arities ≤ {arity_max}").unwrap();
                    Ok(EXIT_OK)
                }
                SquareZeroVerdict::NonZero { genus, arity_in, arity_out, input, output } => {
                    writeln!(out, "H⋆H ≠ 0: component ħ^{genus} S^{arity_in}→S^{arity_out}").unwrap();
                    let image: Vec<String> =
                        output.iter().map(|(m, c)| format!("{} {}", format_scalar(c), basis.format_monomial(m))).collect();
                    writeln!(out, "  {} ↦ {}", basis.format_monomial(&input), image.join(" + ")).unwrap();
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Verify { suite, max_arity, max_genus, pmax, cases } => verify(config.seed, *suite, *max_arity, *max_genus, *pmax, *cases, out),
        Command::Homology { r, t, g, grid, max_total, max_arity, gmax, pmax, max_basis, format, allow_truncated } => {
            let cells: Vec<(usize, usize, usize)> = match (r, t, g, grid) {
                (Some(r), Some(t), Some(g), false) => vec![(*r, *t, *g)],
                (None, _, _, true) => grid_cells(*max_total, *max_arity, *gmax),
                _ => return Err(input_error("give either --r --t --g or --grid")),
            };
            if cells.iter().any(|&(r, t, _)| r == 0 || t == 0) {
                return Err(input_error("arities start at 1"));
            }
            let mut table = betti_grid(&cells, Limits { p_max: *pmax, max_basis: *max_basis });
            table.relations = relation_statuses(&cells, *pmax).map_err(input_error)?;
            match format {
                Format::Csv => {
                    out.push_str(&table.to_csv());
                    for rel in &table.relations {
                        eprintln!("{} in ({},{},{}): cycle {}, boundary {}", rel.relation, rel.r, rel.t, rel.g, rel.cycle, rel.boundary);
                    }
                }
                Format::Json => out.push_str(&table.to_json()),
            }
            if !table.is_complete() && !allow_truncated {
                return Err(Failure(EXIT_TRUNCATED, "some cells are truncated; pass --allow-truncated to accept".into()));
            }
            Ok(if table.relations.iter().all(|r| r.cycle && r.boundary) { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Basis { r, t, g, pmax } => {
            let levels = match config.cache.as_ref().map(BasisCache::new) {
                Some(cache) => cache.and_then(|c| c.levels(*r, *t, *g, *pmax)).map_err(input_error)?,
                None => crate::cobar::enumerate_levels(*r, *t, *g, *pmax),
            };
            for (p, level) in levels.iter().enumerate() {
                writeln!(out, "p={} graphs={}", p + 1, level.len()).unwrap();
            }
            Ok(EXIT_OK)
        }
        Command::ToWeyl { family } => {
            let (basis, family) = FamilyFile::from_json(&read(family)?).and_then(|f| f.to_family()).map_err(input_error)?;
            writeln!(out, "{}", OperatorFile::from_weyl(&basis, &family_to_weyl(&basis, &family)).to_json()).unwrap();
            Ok(EXIT_OK)
        }
        Command::ToFamily { h } => {
            let (basis, h) = load_operator(h)?;
            let family = weyl_to_family(&basis, &h).map_err(input_error)?;
            writeln!(out, "{}", FamilyFile::from_family(&basis, &family).to_json()).unwrap();
            Ok(EXIT_OK)
        }
        Command::Relations { family, gmax, arity_max } => {
            let (basis, family) = FamilyFile::from_json(&read(family)?).and_then(|f| f.to_family()).map_err(input_error)?;
            match check_relations(&basis, &family, Truncation::new(*gmax, *arity_max)) {
                RelationVerdict::Zero { .. } => {
                    writeln!(out, "all relations hold for genus ≤ {gmax}, arities ≤ {arity_max}").unwrap();
                    Ok(EXIT_OK)
                }
                RelationVerdict::NonZero { r, t, g, input, output } => {
                    let image: Vec<String> =
                        output.iter().map(|(w, c)| format!("{} {}", format_scalar(c), basis.format_word(w))).collect();
                    writeln!(out, "relation ({r},{t},{g}) fails: {} ↦ {}", basis.format_word(&input), image.join(" + ")).unwrap();
                    Ok(EXIT_FAILED)
                }
            }
        }
    }
}

/// Cells of a grid, ordered by genus, then `r + t`, then `r`. The empty
/// cell `(1,1,0)` is left out.
pub fn grid_cells(max_total: Option<usize>, max_arity: Option<usize>, g_max: usize) -> Vec<(usize, usize, usize)> {
    let admits = |r: usize, t: usize| match (max_total, max_arity) {
        (_, Some(a)) => r <= a && t <= a,
        (Some(s), None) => r + t <= s,
        (None, None) => r + t <= 6,
    };
    let bound = max_arity.map_or(max_total.unwrap_or(6), |a| 2 * a);
    let mut cells = Vec::new();
    for g in 0..=g_max {
        for total in 2..=bound {
            for r in 1..total {
                if admits(r, total - r) && (r, total - r, g) != (1, 1, 0) {
                    cells.push((r, total - r, g));
                }
            }
        }
    }
    cells
}

fn verify(seed: u64, suite: Suite, max_arity: Option<usize>, max_genus: usize, pmax: usize, cases: usize, out: &mut String) -> Result<i32, Failure> {
    let mut failures = 0usize;
    match suite {
        Suite::Coassoc => {
            let a = max_arity.unwrap_or(4);
            for g in 0..=max_genus as u32 {
                for m in 1..=a {
                    for n in 1..=a {
                        let chi = chi_of(m, n, g);
                        let report = check_coassoc(m, n, chi, usize::MAX).map_err(input_error)?;
                        let counit = counit_check(m, n, chi).map_err(input_error)?;
                        let ok = report.agrees && counit;
                        failures += usize::from(!ok);
                        writeln!(out, "coassoc ({m},{n},g={g}): {} three-level graphs, counit {counit}: {}", report.three_level_graphs, verdict(ok)).unwrap();
                    }
                }
            }
        }
        Suite::Dsq => {
            let total = max_arity.unwrap_or(6);
            for (r, t, g) in grid_cells(Some(total), None, max_genus) {
                match check_d_squared(r, t, g, pmax) {
                    Ok(n) => writeln!(out, "d² ({r},{t},{g}) p≤{pmax}: {n} graphs: ok").unwrap(),
                    Err(bad) => {
                        failures += 1;
                        writeln!(out, "d² ({r},{t},{g}) p≤{pmax}: FAIL on {bad}").unwrap();
                    }
                }
            }
        }
        Suite::CompareCirck => {
            let a = max_arity.unwrap_or(3);
            for pairs in [&[("e", 0)][..], &[("x", 1)], &[("e", 0), ("x", 1)], &[("e", 2), ("x", -1)]] {
                let basis = GradedBasis::from_pairs(pairs).expect("distinct names");
                let label: Vec<String> = pairs.iter().map(|(n, d)| format!("{n}:{d}")).collect();
                match check_circ_k_exhaustive(&basis, a) {
                    Ok(n) => writeln!(out, "compare-circk [{}] arities ≤ {a}: {n} comparisons: ok", label.join(" ")).unwrap(),
                    Err(w) => {
                        failures += 1;
                        writeln!(out, "compare-circk [{}]: FAIL {w}", label.join(" ")).unwrap();
                    }
                }
            }
        }
        Suite::Theorem => {
            let a = max_arity.unwrap_or(3);
            let bounds = Truncation::new(max_genus as u32, a);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for case in 0..cases {
                let (basis, h) = loop {
                    let dim = rng.gen_range(2..=3);
                    let basis = random_chain_basis(&mut rng, dim);
                    let h = if case % 2 == 0 {
                        random_reduced_element(&mut rng, &basis, max_genus as u32, a, 3, 0.6)
                    } else {
                        random_square_zero_element(&mut rng, &basis, max_genus as u32, a, 3, 0.6)
                    };
                    if !h.is_zero() {
                        break (basis, h);
                    }
                };
                let check = check_theorem(&basis, &h, bounds).map_err(input_error)?;
                failures += usize::from(!check.passed());
                writeln!(
                    out,
                    "theorem case {case}: dim {} square_zero {} relations_zero {} nonzero relations {}: {}",
                    basis.dim(),
                    check.square_zero,
                    check.relations_zero,
                    check.nonzero_cells,
                    verdict(check.passed())
                )
                .unwrap();
            }
        }
    }
    writeln!(out, "{}", if failures == 0 { "all passed".to_string() } else { format!("{failures} failed") }).unwrap();
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
