//! Subcommand implementations. Each writes its report to `out` and returns
//! the process exit status.

use std::cmp::Ordering;
use std::io::{self, Write};

use qgraph::asymptotics::{CheckOptions, ClusterReport, Parity};
use qgraph::spectral::{find_eigenvalues_with, SearchOptions};
use qgraph::{
    ambarzumian_check, assemble_matrix, cluster_polynomial, effective_resistance,
    equal_resistance_precondition, extract_cluster, weakened_check, Error, MetricGraph, Verdict,
};

use crate::{CliError, OutputFormat, ParityArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;

/// Shortest formatting that still round-trips: 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn scan(
    g: &MetricGraph,
    lmin: f64,
    lmax: f64,
    step: f64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if lmin.partial_cmp(&lmax) != Some(Ordering::Less) {
        return Err(CliError::Usage(format!(
            "empty range: lmin = {lmin} >= lmax = {lmax}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!(
            "step must be positive, got {step}"
        )));
    }
    let n = ((lmax - lmin) / step + 1e-9).floor() as usize;
    writeln!(out, "lambda,det,sigma_min")?;
    for i in 0..=n {
        let lambda = lmin + i as f64 * step;
        let m = assemble_matrix(g, lambda)?;
        let sigma = m.singular_values()[0];
        writeln!(
            out,
            "{},{},{}",
            fmt_num(lambda),
            fmt_num(m.determinant()),
            fmt_num(sigma)
        )?;
    }
    Ok(EXIT_OK)
}

pub fn eigs(
    g: &MetricGraph,
    lmin: f64,
    lmax: f64,
    grid_step: f64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    if lmin.partial_cmp(&lmax) != Some(Ordering::Less) {
        return Err(CliError::Usage(format!(
            "empty range: lmin = {lmin} >= lmax = {lmax}"
        )));
    }
    let opts = SearchOptions {
        grid_step,
        ..SearchOptions::default()
    };
    let found = find_eigenvalues_with(g, lmin, lmax, opts)?;
    match format {
        OutputFormat::Csv => {
            writeln!(out, "lambda,multiplicity")?;
            for r in &found {
                writeln!(out, "{},{}", fmt_num(r.lambda), r.multiplicity)?;
            }
        }
        OutputFormat::Table => {
            writeln!(out, "{:>24}  {:>12}", "lambda", "multiplicity")?;
            for r in &found {
                writeln!(
                    out,
                    "{:>24.12}  {:>12}",
                    unsigned_zero(r.lambda, 1e-12),
                    r.multiplicity
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn resolve_parity(g: &MetricGraph, parity: ParityArg) -> Result<Parity, CliError> {
    match parity {
        ParityArg::Auto => Ok(Parity::auto(g)),
        ParityArg::Even => Ok(Parity::Even),
        ParityArg::All => {
            if qgraph::is_bipartite(g).is_none() {
                Err(CliError::Precondition(
                    "precondition not met: --parity all requires a bipartite graph".into(),
                ))
            } else {
                Ok(Parity::All)
            }
        }
    }
}

pub fn clusters(
    g: &MetricGraph,
    ks: &[u32],
    parity: ParityArg,
    window: f64,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let parity = resolve_parity(g, parity)?;
    let reports = ks
        .iter()
        .map(|&k| extract_cluster(g, k, parity, window))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        OutputFormat::Csv => {
            writeln!(out, "k,center,shift,multiplicity")?;
            for r in &reports {
                for &(s, m) in &r.shifts {
                    writeln!(out, "{},{},{},{}", r.k, fmt_num(r.center), fmt_num(s), m)?;
                }
            }
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "parity: {}, expected cluster size |E|-|V|+2 = {}",
                match parity {
                    Parity::Even => "even ((2k pi)^2)",
                    Parity::All => "all ((k pi)^2)",
                },
                g.cluster_size()
            )?;
            for r in &reports {
                write_cluster_table(r, out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_cluster_table(r: &ClusterReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "k = {}: center {:.9}, total multiplicity {}",
        r.k, r.center, r.total_multiplicity
    )?;
    writeln!(out, "  {:>16}  {:>4}", "shift", "mult")?;
    for &(s, m) in &r.shifts {
        writeln!(out, "  {:>16.9}  {m:>4}", unsigned_zero(s, 1e-9))?;
    }
    for m in &r.matched {
        writeln!(
            out,
            "  matched shift {:.9} to root {:.9} (distance {:.3e})",
            unsigned_zero(m.shift, 1e-9),
            unsigned_zero(m.root, 1e-9),
            m.distance
        )?;
    }
    for root in &r.unmatched_roots {
        writeln!(out, "  unmatched root {root:.9}")?;
    }
    for s in &r.unmatched_shifts {
        writeln!(out, "  unmatched shift {s:.9}")?;
    }
    Ok(())
}

pub fn poly(g: &MetricGraph, format: OutputFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let cp = cluster_polynomial(g)?;
    match format {
        OutputFormat::Csv => {
            writeln!(out, "item,index,re,im")?;
            for (i, c) in cp.tree_factor.coeffs().iter().enumerate() {
                writeln!(out, "T,{i},{},0", fmt_num(*c))?;
            }
            for (i, c) in cp.p.coeffs().iter().enumerate() {
                writeln!(out, "p,{i},{},0", fmt_num(*c))?;
            }
            for r in &cp.roots {
                writeln!(
                    out,
                    "root,{},{},{}",
                    r.multiplicity,
                    fmt_num(r.value.re),
                    fmt_num(r.value.im)
                )?;
            }
            writeln!(out, "mean_value_root,1,{},0", fmt_num(cp.mean_value_root()))?;
        }
        OutputFormat::Table => {
            writeln!(out, "spanning trees: {}", cp.tree_count)?;
            writeln!(out, "Q = sum of edge integrals = {}", cp.total)?;
            writeln!(out, "T(d) = {}", cp.tree_factor)?;
            writeln!(out, "p(d) = {}", cp.p)?;
            writeln!(out, "roots:")?;
            for r in &cp.roots {
                if r.value.im == 0.0 {
                    writeln!(out, "  {:.12}  multiplicity {}", r.value.re, r.multiplicity)?;
                } else {
                    writeln!(
                        out,
                        "  {:.12} {:+.12}i  multiplicity {}",
                        r.value.re, r.value.im, r.multiplicity
                    )?;
                }
            }
            writeln!(out, "mean-value root Q/|E| = {}", cp.mean_value_root())?;
        }
    }
    Ok(EXIT_OK)
}

pub fn resistance(
    g: &MetricGraph,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let pre = equal_resistance_precondition(g);
    match format {
        OutputFormat::Csv => writeln!(out, "edge,resistance")?,
        OutputFormat::Table => writeln!(out, "{:<12} {:>10}", "edge", "r")?,
    }
    for (j, e) in g.edges().iter().enumerate() {
        let r = effective_resistance(g, j);
        match format {
            OutputFormat::Csv => writeln!(out, "{},{}", e.id, r)?,
            OutputFormat::Table => writeln!(out, "{:<12} {:>10}", e.id, r.to_string())?,
        }
    }
    if format == OutputFormat::Table {
        let verdict = if pre.holds { "holds" } else { "fails" };
        match pre.r {
            Some(r) => writeln!(out, "equal resistance r < 1: {verdict} (r = {r})")?,
            None if pre.holds => {
                writeln!(out, "equal resistance r < 1: {verdict} (no non-loop edges)")?
            }
            None => writeln!(
                out,
                "equal resistance r < 1: {verdict} (resistances differ)"
            )?,
        }
    }
    Ok(EXIT_OK)
}

pub struct CheckArgs {
    pub ks: Vec<u32>,
    pub tol_zero: f64,
    pub tol_shift: f64,
    pub window: f64,
    pub weakened: bool,
    pub parity: ParityArg,
}

pub fn check(g: &MetricGraph, args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = CheckOptions {
        tol_zero: args.tol_zero,
        tol_shift: args.tol_shift,
        window: args.window,
        parity: resolve_parity(g, args.parity)?,
    };
    let verdict = if args.weakened {
        weakened_check(g, &args.ks, &opts)?
    } else {
        ambarzumian_check(g, &args.ks, &opts)?
    };
    write_verdict(&verdict, out)?;
    Ok(if verdict.consistent() {
        EXIT_OK
    } else {
        EXIT_VIOLATED
    })
}

fn write_verdict(v: &Verdict, out: &mut dyn Write) -> io::Result<()> {
    match v.smallest_eigenvalue {
        Some(l) => writeln!(
            out,
            "smallest eigenvalue: {} ({})",
            fmt_num(l),
            ok(v.zero_is_bottom)
        )?,
        None => writeln!(out, "smallest eigenvalue: none found (fail)")?,
    }
    for c in &v.clusters {
        writeln!(
            out,
            "cluster k={}: {} near 0 of {} required, total {} ({})",
            c.k,
            c.near_zero,
            c.required,
            c.total,
            ok(c.holds)
        )?;
    }
    match v.witness() {
        None => writeln!(out, "verdict: consistent with q = 0")?,
        Some(w) => writeln!(out, "verdict: hypotheses violated: {w}")?,
    }
    Ok(())
}

/// Drops the sign of values that print as zero at the given precision.
fn unsigned_zero(x: f64, resolution: f64) -> f64 {
    if x.abs() < 0.5 * resolution {
        0.0
    } else {
        x
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fail"
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotBipartite | Error::PreconditionNotMet(_) | Error::WindowCollision { .. } => {
                CliError::Precondition(e.to_string())
            }
            Error::EmptyGraph
            | Error::DisconnectedGraph { .. }
            | Error::DanglingEndpoint { .. }
            | Error::DuplicateId(_)
            | Error::UnknownEdge(_)
            | Error::InvalidPotential(_)
            | Error::EmptyInterval { .. }
            | Error::XOutOfRange(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}
