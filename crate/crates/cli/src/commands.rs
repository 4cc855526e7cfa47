//! Subcommand bodies. Each handler writes to the context's sink in the
//! selected format and returns whether the requested checks passed, so the
//! binary can map outcomes onto exit codes.

use std::fs::File;
use std::io::Write;
use std::path::Path;
use std::time::Duration;

use clap::ValueEnum;
use serde_json::json;

use symsuper::combinatorics::{self, Partition};
use symsuper::exactlinalg::ExactMatrix;
use symsuper::liesuper::{self, ClosureOutcome};
use symsuper::perm::{PermTable, Permutation};
use symsuper::specht::{intertwiner, seminormal_rep};
use symsuper::supermod::{self, TnVerdict};
use symsuper::verify::{run_all, RunOptions};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] symsuper::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for failed checks and plumbing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(symsuper::Error::Parse(_) | symsuper::Error::InvalidArgument(_)) => 2,
            _ => 1,
        }
    }
}

type CmdResult = Result<bool, CliError>;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

pub struct Ctx<'a> {
    pub format: Format,
    pub budget_secs: Option<u64>,
    pub out: &'a mut dyn Write,
}

pub enum GroupFamily {
    Symmetric,
    Dihedral,
}

pub enum MatrixFamily {
    Sl,
    Sq,
}

pub fn partitions(ctx: &mut Ctx, n: usize, classify: bool) -> CmdResult {
    let shapes = combinatorics::partitions(n)?;
    if !classify {
        match ctx.format {
            Format::Json => {
                let names: Vec<String> = shapes.iter().map(ToString::to_string).collect();
                emit_json(ctx, &json!(names))?;
            }
            Format::Csv => {
                writeln!(ctx.out, "shape")?;
                for s in &shapes {
                    writeln!(ctx.out, "{}", csv_field(&s.to_string()))?;
                }
            }
            Format::Pretty => {
                for s in &shapes {
                    writeln!(ctx.out, "{s}")?;
                }
                writeln!(ctx.out, "-- {} partitions of {n}", shapes.len())?;
            }
        }
        return Ok(true);
    }
    let table = combinatorics::classify(n)?;
    // one row per shape, tagged with the class it falls into
    let rows: Vec<(String, String, String)> = shapes
        .iter()
        .map(|s| {
            let rep = s.clone().max(s.conjugate());
            let kind = table.entry(&rep).expect("every shape has a class").kind;
            (s.to_string(), rep.to_string(), kind.to_string())
        })
        .collect();
    match ctx.format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(s, rep, kind)| json!({"shape": s, "representative": rep, "kind": kind}))
                .collect();
            emit_json(
                ctx,
                &json!({
                    "n": n,
                    "shapes": items,
                    "classes": table.classes().len(),
                    "m": table.num_m(),
                    "q": table.num_q(),
                }),
            )?;
        }
        Format::Csv => {
            writeln!(ctx.out, "shape,representative,kind")?;
            for (s, rep, kind) in &rows {
                writeln!(ctx.out, "{},{},{kind}", csv_field(s), csv_field(rep))?;
            }
        }
        Format::Pretty => {
            let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
            for (s, rep, kind) in &rows {
                writeln!(ctx.out, "{s:<width$}  {kind}  class of {rep}")?;
            }
            writeln!(
                ctx.out,
                "-- {} shapes in {} classes: {} M, {} Q",
                rows.len(),
                table.classes().len(),
                table.num_m(),
                table.num_q()
            )?;
        }
    }
    Ok(true)
}

pub fn tableaux(ctx: &mut Ctx, shape: &Partition) -> CmdResult {
    let tabs = combinatorics::standard_tableaux(shape);
    match ctx.format {
        Format::Json => {
            let items: Vec<_> = tabs
                .iter()
                .map(|t| json!({"rows": t.rows(), "contents": t.content_vector()}))
                .collect();
            emit_json(
                ctx,
                &json!({"shape": shape.to_string(), "count": tabs.len(), "tableaux": items}),
            )?;
        }
        Format::Csv => {
            writeln!(ctx.out, "index,rows,contents")?;
            for (i, t) in tabs.iter().enumerate() {
                let rows: Vec<String> = t.rows().iter().map(|r| join_spaced(r)).collect();
                writeln!(
                    ctx.out,
                    "{i},{},{}",
                    csv_field(&rows.join("|")),
                    csv_field(&join_spaced(&t.content_vector()))
                )?;
            }
        }
        Format::Pretty => {
            for (i, t) in tabs.iter().enumerate() {
                writeln!(ctx.out, "#{i}  contents {}", join_spaced(&t.content_vector()))?;
                for line in t.to_string().lines() {
                    writeln!(ctx.out, "    {line}")?;
                }
            }
            writeln!(ctx.out, "-- {} standard tableaux of {shape}", tabs.len())?;
        }
    }
    Ok(true)
}

pub fn rep(ctx: &mut Ctx, shape: &Partition, generator: Option<usize>, perm: Option<&str>) -> CmdResult {
    let n = shape.n();
    let r = seminormal_rep(shape);
    let (sigma, matrix) = match (generator, perm) {
        (Some(i), None) => {
            if i == 0 || i >= n {
                return Err(CliError::Usage(format!(
                    "generator index must lie in 1..={} for a shape of {n}",
                    n.saturating_sub(1)
                )));
            }
            (Permutation::adjacent(n, i - 1), r.gen(i - 1).clone())
        }
        (None, Some(s)) => {
            let p = Permutation::parse(n, s)?;
            let m = r.rep_of_permutation(&p)?;
            (p, m)
        }
        _ => unreachable!("clap requires exactly one of --gen/--perm"),
    };
    match ctx.format {
        Format::Json => emit_json(
            ctx,
            &json!({
                "shape": shape.to_string(),
                "dim": r.dim(),
                "element": sigma.cycle_string(),
                "matrix": matrix,
            }),
        )?,
        Format::Csv => write_matrix_csv(ctx, &matrix)?,
        Format::Pretty => {
            writeln!(ctx.out, "image of {} on {shape} (dim {}):", sigma.cycle_string(), r.dim())?;
            write!(ctx.out, "{matrix}")?;
        }
    }
    Ok(true)
}

pub fn jm(ctx: &mut Ctx, shape: &Partition, j: usize) -> CmdResult {
    let r = seminormal_rep(shape);
    let m = r.jucys_murphy(j)?;
    match ctx.format {
        Format::Json => {
            emit_json(ctx, &json!({"shape": shape.to_string(), "j": j, "matrix": m}))?
        }
        Format::Csv => write_matrix_csv(ctx, &m)?,
        Format::Pretty => {
            writeln!(ctx.out, "L_{j} on {shape} (dim {}):", r.dim())?;
            write!(ctx.out, "{m}")?;
        }
    }
    Ok(true)
}

pub fn phi(ctx: &mut Ctx, shape: &Partition) -> CmdResult {
    let iw = intertwiner(shape);
    match ctx.format {
        Format::Json => emit_json(
            ctx,
            &json!({
                "source": iw.source.to_string(),
                "target": iw.target.to_string(),
                "selfsquare": iw.selfsquare.to_string(),
                "matrix": iw.matrix,
            }),
        )?,
        Format::Csv => write_matrix_csv(ctx, &iw.matrix)?,
        Format::Pretty => {
            writeln!(ctx.out, "sign-twisted map {} → {}", iw.source, iw.target)?;
            writeln!(ctx.out, "composition square: {}", iw.selfsquare)?;
            write!(ctx.out, "{}", iw.matrix)?;
        }
    }
    Ok(true)
}

pub fn supermodule(ctx: &mut Ctx, shape: &Partition) -> CmdResult {
    let w = supermod::supermodule(shape)?;
    let action = match w.tn_image()?.verdict {
        TnVerdict::ScalarOfJ { factor } => format!("{factor}·J"),
        TnVerdict::Zero => "0".to_string(),
    };
    let tabs = shape.hook_length_count();
    match ctx.format {
        Format::Json => emit_json(
            ctx,
            &json!({
                "shape": w.shape().to_string(),
                "conjugate": shape.conjugate().to_string(),
                "kind": w.kind().to_string(),
                "dim": w.dim(),
                "tableaux": tabs,
                "residue_sum": shape.residue_sum(),
                "transposition_sum": action,
            }),
        )?,
        Format::Csv => {
            writeln!(ctx.out, "shape,conjugate,kind,dim,tableaux,residue_sum,transposition_sum")?;
            writeln!(
                ctx.out,
                "{},{},{},{},{tabs},{},{}",
                csv_field(&w.shape().to_string()),
                csv_field(&shape.conjugate().to_string()),
                w.kind(),
                w.dim(),
                shape.residue_sum(),
                csv_field(&action)
            )?;
        }
        Format::Pretty => {
            writeln!(ctx.out, "shape:              {}", w.shape())?;
            writeln!(ctx.out, "conjugate:          {}", shape.conjugate())?;
            writeln!(ctx.out, "kind:               {}", w.kind())?;
            writeln!(ctx.out, "dimension:          {}", w.dim())?;
            writeln!(ctx.out, "standard tableaux:  {tabs}")?;
            writeln!(ctx.out, "residue sum:        {}", shape.residue_sum())?;
            writeln!(ctx.out, "transposition sum acts as: {action}")?;
        }
    }
    Ok(true)
}

pub fn branch(ctx: &mut Ctx, shape: &Partition) -> CmdResult {
    let w = supermod::supermodule(shape)?;
    let report = w.branch()?;
    let total: usize = report.summands.iter().map(|s| s.dim).sum();
    match ctx.format {
        Format::Json => {
            let items: Vec<_> = report
                .summands
                .iter()
                .map(|s| {
                    json!({
                        "cover": s.mu.to_string(),
                        "residue": s.residue,
                        "multiplicity": s.multiplicity,
                        "dim": s.dim,
                        "intertwiner_scale": s.intertwiner_scale.to_string(),
                    })
                })
                .collect();
            emit_json(
                ctx,
                &json!({"shape": report.shape.to_string(), "dim": w.dim(), "summands": items}),
            )?;
        }
        Format::Csv => {
            writeln!(ctx.out, "cover,residue,multiplicity,dim,intertwiner_scale")?;
            for s in &report.summands {
                writeln!(
                    ctx.out,
                    "{},{},{},{},{}",
                    csv_field(&s.mu.to_string()),
                    s.residue,
                    s.multiplicity,
                    s.dim,
                    csv_field(&s.intertwiner_scale.to_string())
                )?;
            }
        }
        Format::Pretty => {
            writeln!(ctx.out, "restriction of {} (dim {}):", report.shape, w.dim())?;
            for s in &report.summands {
                writeln!(
                    ctx.out,
                    "  cover {:<10} residue {:>3}  ×{}  dim {:>4}  scale {}",
                    s.mu.to_string(),
                    s.residue,
                    s.multiplicity,
                    s.dim,
                    s.intertwiner_scale
                )?;
            }
            writeln!(ctx.out, "-- {} summands, total dim {total}", report.summands.len())?;
        }
    }
    Ok(true)
}

pub fn closure(ctx: &mut Ctx, n: usize, json_path: Option<&Path>) -> CmdResult {
    if n < 2 {
        return Err(CliError::Usage("the transpositions need at least 2 letters".into()));
    }
    let table = PermTable::new(n);
    let gens = liesuper::transpositions(n);
    let outcome = liesuper::closure(&table, &gens, budget_for(n, ctx.budget_secs), false)?;
    let value = closure_value(n, gens.len(), &outcome);
    if let Some(path) = json_path {
        write_json_file(path, &value)?;
    }
    match ctx.format {
        Format::Json => emit_json(ctx, &value)?,
        Format::Csv => {
            writeln!(ctx.out, "n,generators,even,odd,total,passes,brackets,complete")?;
            writeln!(
                ctx.out,
                "{n},{},{},{},{},{},{},{}",
                gens.len(),
                outcome.space.even_dim(),
                outcome.space.odd_dim(),
                outcome.space.dim(),
                outcome.passes,
                outcome.brackets,
                outcome.complete
            )?;
        }
        Format::Pretty => {
            writeln!(ctx.out, "closure of the {} transpositions on {n} letters:", gens.len())?;
            writeln!(
                ctx.out,
                "  even {}, odd {}, total {}",
                outcome.space.even_dim(),
                outcome.space.odd_dim(),
                outcome.space.dim()
            )?;
            let status = if outcome.complete {
                "complete".to_string()
            } else {
                "budget exhausted — dimensions are a lower bound".to_string()
            };
            writeln!(ctx.out, "  {} passes, {} brackets, {status}", outcome.passes, outcome.brackets)?;
        }
    }
    Ok(outcome.complete)
}

pub fn blocks(ctx: &mut Ctx, family: GroupFamily, n: usize) -> CmdResult {
    let (label, group) = match family {
        GroupFamily::Symmetric => (format!("S_{n}"), liesuper::FiniteSuperGroup::symmetric(n)?),
        GroupFamily::Dihedral => (format!("D_{n}"), liesuper::FiniteSuperGroup::dihedral(n)?),
    };
    let census = liesuper::block_census(&group)?;
    match ctx.format {
        Format::Json => emit_json(
            ctx,
            &json!({
                "group": label,
                "order": group.size(),
                "blocks": census.blocks,
                "m": census.num_m,
                "q": census.num_q,
            }),
        )?,
        Format::Csv => {
            writeln!(ctx.out, "group,order,blocks,m,q")?;
            writeln!(
                ctx.out,
                "{label},{},{},{},{}",
                group.size(),
                census.blocks,
                census.num_m,
                census.num_q
            )?;
        }
        Format::Pretty => writeln!(
            ctx.out,
            "{label} (order {}): {} blocks, {} of kind M, {} of kind Q",
            group.size(),
            census.blocks,
            census.num_m,
            census.num_q
        )?,
    }
    Ok(true)
}

pub fn matrixlie(ctx: &mut Ctx, family: MatrixFamily, m: usize) -> CmdResult {
    if m == 0 {
        return Err(CliError::Usage("block size must be positive".into()));
    }
    let (label, gens) = match family {
        MatrixFamily::Sl => (format!("sl({m}|{m})"), liesuper::odd_unit_generators(m)),
        MatrixFamily::Sq => (format!("sq({m})"), liesuper::queer_traceless_generators(m)),
    };
    let budget = ctx.budget_secs.or_else(env_budget).map(Duration::from_secs);
    let outcome = liesuper::matrix_closure(m, &gens, budget, false)?;
    match ctx.format {
        Format::Json => emit_json(
            ctx,
            &json!({
                "model": label,
                "generators": gens.len(),
                "even": outcome.space.even_dim(),
                "odd": outcome.space.odd_dim(),
                "total": outcome.space.dim(),
                "passes": outcome.passes,
                "brackets": outcome.brackets,
                "complete": outcome.complete,
            }),
        )?,
        Format::Csv => {
            writeln!(ctx.out, "model,generators,even,odd,total,passes,brackets,complete")?;
            writeln!(
                ctx.out,
                "{},{},{},{},{},{},{},{}",
                csv_field(&label),
                gens.len(),
                outcome.space.even_dim(),
                outcome.space.odd_dim(),
                outcome.space.dim(),
                outcome.passes,
                outcome.brackets,
                outcome.complete
            )?;
        }
        Format::Pretty => {
            writeln!(
                ctx.out,
                "odd generation of {label}: even {}, odd {}, total {} ({})",
                outcome.space.even_dim(),
                outcome.space.odd_dim(),
                outcome.space.dim(),
                if outcome.complete { "complete" } else { "budget exhausted" }
            )?;
        }
    }
    Ok(outcome.complete)
}

pub fn verify(ctx: &mut Ctx, max_n: usize, include_seven: bool, json_path: Option<&Path>) -> CmdResult {
    let options =
        RunOptions { include_seven, budget_secs: ctx.budget_secs, progress: false };
    let report = run_all(max_n, options)?;
    if let Some(path) = json_path {
        write_json_file(path, &serde_json::to_value(&report)?)?;
    }
    match ctx.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *ctx.out, &report)?;
            writeln!(ctx.out)?;
        }
        Format::Csv => {
            writeln!(ctx.out, "name,expected,actual,pass,millis")?;
            for c in &report.checks {
                writeln!(
                    ctx.out,
                    "{},{},{},{},{}",
                    csv_field(&c.name),
                    csv_field(&c.expected),
                    csv_field(&c.actual),
                    c.pass,
                    c.millis
                )?;
            }
        }
        Format::Pretty => {
            let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &report.checks {
                if c.pass {
                    writeln!(ctx.out, "pass  {:<width$}  {}  ({} ms)", c.name, c.actual, c.millis)?;
                } else {
                    writeln!(
                        ctx.out,
                        "FAIL  {:<width$}  expected {}, got {}  ({} ms)",
                        c.name, c.expected, c.actual, c.millis
                    )?;
                }
            }
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            let total_ms: u64 = report.checks.iter().map(|c| c.millis).sum();
            if failed == 0 {
                writeln!(
                    ctx.out,
                    "-- {} checks up to n = {} in {:.1} s, all passing",
                    report.checks.len(),
                    report.n,
                    total_ms as f64 / 1000.0
                )?;
            } else {
                writeln!(ctx.out, "-- {failed} of {} checks FAILING", report.checks.len())?;
            }
        }
    }
    Ok(report.pass)
}

fn closure_value(n: usize, generators: usize, outcome: &ClosureOutcome) -> serde_json::Value {
    json!({
        "n": n,
        "generators": generators,
        "even": outcome.space.even_dim(),
        "odd": outcome.space.odd_dim(),
        "total": outcome.space.dim(),
        "passes": outcome.passes,
        "brackets": outcome.brackets,
        "complete": outcome.complete,
    })
}

/// Flag, then the environment, then an hour once n = 7 makes runs long.
fn budget_for(n: usize, flag: Option<u64>) -> Option<Duration> {
    match flag.or_else(env_budget) {
        Some(secs) => Some(Duration::from_secs(secs)),
        None if n >= 7 => Some(Duration::from_secs(3600)),
        None => None,
    }
}

fn env_budget() -> Option<u64> {
    std::env::var("SYMSUPER_BUDGET_SECS").ok().and_then(|v| v.trim().parse().ok())
}

fn emit_json(ctx: &mut Ctx, value: &serde_json::Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *ctx.out, value)?;
    writeln!(ctx.out)?;
    Ok(())
}

fn write_json_file(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}

fn write_matrix_csv(ctx: &mut Ctx, m: &ExactMatrix) -> Result<(), CliError> {
    for i in 0..m.nrows() {
        let cells: Vec<String> = m.row(i).iter().map(|e| csv_field(&e.to_string())).collect();
        writeln!(ctx.out, "{}", cells.join(","))?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join_spaced<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
