use std::io::Write;
use std::path::Path;

use serde::Serialize;

use critset::canon::{atlas, atlas_up_to};
use critset::critical::{four_params_with, Prop1Check, QuadWitnesses};
use critset::hardness::{reduce, verify_reduction_small, Variant, VerifyMode};
use critset::sudoku::{
    certify_fair_puzzle, count_completions, emit_puzzle, mnc_exhaustive, parse_puzzle, sudoku_graph, trial_campaign,
};
use critset::{chromatic_number, emit_graph6, exec, is_uniquely_colorable, parse_graph6, Error, Graph};

use crate::source::parse_source;
use crate::{CliError, Command, Ctx, Format, ModeArg, ScanCheck, SudokuCommand, VariantArg};

/// Largest vertex count accepted by `table`.
const TABLE_CAP: usize = 7;

type Out<'a> = &'a mut dyn Write;

pub(crate) fn dispatch(ctx: &Ctx, cmd: &Command, out: Out, err: Out) -> Result<(), CliError> {
    match cmd {
        Command::Params { source } => params(ctx, &parse_source(source)?, out),
        Command::Table { n, nonbipartite } => table(ctx, *n, *nonbipartite, out),
        Command::Atlas { n, up_to } => atlas_cmd(ctx, *n, *up_to, out),
        Command::Scan { file, check } => scan(ctx, file, *check, out),
        Command::Sudoku(sub) => sudoku(ctx, sub, out, err),
        Command::Reduce { variant, source, out: path, verify, mode, samples } => {
            let variant = match variant {
                VariantArg::Ulcs => Variant::Ulcs,
                VariantArg::Olcs => Variant::Olcs,
            };
            let mode = match mode {
                ModeArg::Auto => VerifyMode::Auto,
                ModeArg::Full => VerifyMode::Full,
                ModeArg::Certificate => VerifyMode::Certificate,
            };
            reduce_cmd(ctx, variant, &parse_source(source)?, path.as_deref(), verify.then_some((mode, *samples)), out)
        }
    }
}

fn json(out: Out, value: &impl Serialize) -> Result<(), CliError> {
    let text =
        serde_json::to_string_pretty(value).map_err(|e| CliError::breach(format!("serialization failed: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Serialize)]
struct Row {
    graph6: String,
    n: usize,
    edges: usize,
    chi: usize,
    uscs: usize,
    oscs: usize,
    ulcs: usize,
    olcs: usize,
    uniform: Option<usize>,
}

const ROW_HEADER: &str = "graph6,n,edges,chi,uscs,oscs,ulcs,olcs,uniform";

impl Row {
    fn compute(ctx: &Ctx, g: &Graph, mode: exec::Execution) -> Result<(Row, Option<QuadWitnesses>), Error> {
        let q = four_params_with(g, &ctx.limits, mode)?;
        let row = Row {
            graph6: emit_graph6(g),
            n: g.vertex_count(),
            edges: g.edge_count(),
            chi: chromatic_number(g, &ctx.limits)?,
            uscs: q.uscs,
            oscs: q.oscs,
            ulcs: q.ulcs,
            olcs: q.olcs,
            uniform: q.uniform_value(),
        };
        Ok((row, q.witnesses))
    }

    fn csv(&self) -> String {
        let u = self.uniform.map_or(String::new(), |u| u.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{u}",
            self.graph6, self.n, self.edges, self.chi, self.uscs, self.oscs, self.ulcs, self.olcs
        )
    }
}

#[derive(Serialize)]
struct ParamsReport {
    #[serde(flatten)]
    row: Row,
    witnesses: Option<QuadWitnesses>,
}

fn params(ctx: &Ctx, g: &Graph, out: Out) -> Result<(), CliError> {
    let (row, witnesses) = Row::compute(ctx, g, ctx.mode)?;
    match ctx.format {
        Format::Json => json(out, &ParamsReport { row, witnesses })?,
        Format::Csv => writeln!(out, "{ROW_HEADER}\n{}", row.csv())?,
        Format::Text => {
            writeln!(out, "graph6: {}", row.graph6)?;
            writeln!(out, "vertices: {}, edges: {}, chi: {}", row.n, row.edges, row.chi)?;
            writeln!(out, "uscs,oscs,ulcs,olcs: {},{},{},{}", row.uscs, row.oscs, row.ulcs, row.olcs)?;
            match row.uniform {
                Some(k) => writeln!(out, "critically {k}-uniform")?,
                None => writeln!(out, "not critically uniform")?,
            }
            if let Some(w) = witnesses {
                for (name, wit) in [("uscs", &w.uscs), ("oscs", &w.oscs), ("ulcs", &w.ulcs), ("olcs", &w.olcs)] {
                    writeln!(out, "{name} witness: coloring {} critical set {}", wit.coloring, wit.set)?;
                }
            }
        }
    }
    Ok(())
}

fn table(ctx: &Ctx, n: usize, nonbipartite: bool, out: Out) -> Result<(), CliError> {
    if n > TABLE_CAP {
        return Err(Error::SizeLimit { what: "table vertex count", n, cap: TABLE_CAP }.into());
    }
    let graphs: Vec<Graph> = atlas(n, ctx.mode)?.into_iter().filter(|g| !nonbipartite || !g.is_bipartite()).collect();
    let rows = exec::map(ctx.mode, &graphs, |g| Row::compute(ctx, g, exec::Execution::Sequential).map(|r| r.0));
    let rows: Vec<Row> = rows.into_iter().collect::<Result<_, _>>()?;
    match ctx.format {
        Format::Json => json(out, &rows)?,
        Format::Csv => {
            writeln!(out, "{ROW_HEADER}")?;
            for r in &rows {
                writeln!(out, "{}", r.csv())?;
            }
        }
        Format::Text => {
            writeln!(
                out,
                "{:<12} {:>5} {:>3} {:>4} {:>4} {:>4} {:>4}  uniform",
                "graph6", "edges", "chi", "uscs", "oscs", "ulcs", "olcs"
            )?;
            for r in &rows {
                let u = r.uniform.map_or("-".to_string(), |u| u.to_string());
                writeln!(
                    out,
                    "{:<12} {:>5} {:>3} {:>4} {:>4} {:>4} {:>4}  {u}",
                    r.graph6, r.edges, r.chi, r.uscs, r.oscs, r.ulcs, r.olcs
                )?;
            }
            writeln!(out, "{} classes", rows.len())?;
        }
    }
    Ok(())
}

fn atlas_cmd(ctx: &Ctx, n: usize, up_to: bool, out: Out) -> Result<(), CliError> {
    let graphs = if up_to { atlas_up_to(n, ctx.mode)? } else { atlas(n, ctx.mode)? };
    let codes: Vec<String> = graphs.iter().map(emit_graph6).collect();
    match ctx.format {
        Format::Json => json(out, &codes)?,
        Format::Text | Format::Csv => {
            for c in &codes {
                writeln!(out, "{c}")?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ScanRecord {
    line: usize,
    #[serde(flatten)]
    row: Row,
    uniquely_colorable: bool,
    holds: bool,
}

#[derive(Serialize)]
struct LineError {
    line: usize,
    message: String,
}

#[derive(Serialize)]
struct ScanReport {
    check: &'static str,
    graphs: usize,
    counterexamples: Vec<String>,
    errors: Vec<LineError>,
    records: Vec<ScanRecord>,
}

fn scan(ctx: &Ctx, file: &Path, check: ScanCheck, out: Out) -> Result<(), CliError> {
    let text =
        std::fs::read_to_string(file).map_err(|e| CliError::input(format!("cannot read {}: {e}", file.display())))?;
    let mut errors = Vec::new();
    let mut jobs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line == ">>graph6<<" {
            continue;
        }
        match parse_graph6(line) {
            Ok(g) => jobs.push((i + 1, g)),
            Err(e) => errors.push(LineError { line: i + 1, message: e.to_string() }),
        }
    }
    let results = exec::map(ctx.mode, &jobs, |(line, g)| {
        let (row, _) = Row::compute(ctx, g, exec::Execution::Sequential)?;
        let uc = is_uniquely_colorable(g, &ctx.limits)?;
        let p = Prop1Check { chi: row.chi, uniquely_colorable: uc, uniform: row.uniform };
        let holds = match check {
            ScanCheck::Prop1 => p.prop1_holds(),
            ScanCheck::Converse => p.converse_holds(),
            ScanCheck::Uniform => row.uniform.is_some(),
        };
        Ok::<_, Error>(ScanRecord { line: *line, row, uniquely_colorable: uc, holds })
    });
    let mut records = Vec::new();
    for ((line, _), r) in jobs.iter().zip(results) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(LineError { line: *line, message: e.to_string() }),
        }
    }
    errors.sort_by_key(|e| e.line);
    let report = ScanReport {
        check: match check {
            ScanCheck::Prop1 => "prop1",
            ScanCheck::Converse => "converse",
            ScanCheck::Uniform => "uniform",
        },
        graphs: records.len(),
        counterexamples: records.iter().filter(|r| !r.holds).map(|r| r.row.graph6.clone()).collect(),
        errors,
        records,
    };
    match ctx.format {
        Format::Json => json(out, &report)?,
        Format::Csv => {
            writeln!(out, "line,{ROW_HEADER},uniquely_colorable,holds")?;
            for r in &report.records {
                writeln!(out, "{},{},{},{}", r.line, r.row.csv(), r.uniquely_colorable, r.holds)?;
            }
        }
        Format::Text => {
            writeln!(out, "check: {}", report.check)?;
            writeln!(out, "graphs: {}", report.graphs)?;
            writeln!(out, "errors: {}", report.errors.len())?;
            writeln!(out, "counterexamples: {}", report.counterexamples.len())?;
            for r in report.records.iter().filter(|r| !r.holds) {
                writeln!(
                    out,
                    "  line {}: {} params {},{},{},{} uniquely colorable {}",
                    r.line, r.row.graph6, r.row.uscs, r.row.oscs, r.row.ulcs, r.row.olcs, r.uniquely_colorable
                )?;
            }
            for e in &report.errors {
                writeln!(out, "  line {}: error: {}", e.line, e.message)?;
            }
        }
    }
    Ok(())
}

fn sudoku(ctx: &Ctx, cmd: &SudokuCommand, out: Out, err: Out) -> Result<(), CliError> {
    match cmd {
        SudokuCommand::Gen { n } => {
            let s = sudoku_graph(*n)?;
            let g = s.graph();
            #[derive(Serialize)]
            struct Gen {
                n: usize,
                vertices: usize,
                edges: usize,
                degree: Option<usize>,
                graph6: String,
            }
            let r = Gen {
                n: *n,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                degree: g.regular_degree(),
                graph6: emit_graph6(g),
            };
            match ctx.format {
                Format::Json => json(out, &r)?,
                Format::Csv => writeln!(
                    out,
                    "n,vertices,edges,degree,graph6\n{},{},{},{},{}",
                    r.n,
                    r.vertices,
                    r.edges,
                    r.degree.unwrap_or(0),
                    r.graph6
                )?,
                Format::Text => {
                    writeln!(
                        out,
                        "Sud_{}: {} vertices, {} edges, {}-regular",
                        r.n,
                        r.vertices,
                        r.edges,
                        r.degree.unwrap_or(0)
                    )?;
                    writeln!(out, "{}", r.graph6)?;
                }
            }
        }
        SudokuCommand::Trials { n, count } => {
            let stats = trial_campaign(*n, *count, ctx.seed, ctx.mode)?;
            match ctx.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Trials<'a> {
                        #[serde(flatten)]
                        stats: &'a critset::sudoku::TrialStats,
                        removed_per_n_ten_thirds: Option<f64>,
                    }
                    json(out, &Trials { stats: &stats, removed_per_n_ten_thirds: stats.removed_per_n_ten_thirds() })?
                }
                Format::Csv | Format::Text => {
                    write!(out, "{}", stats.to_csv())?;
                    if ctx.format == Format::Text {
                        if let (Some(mean), Some(min), Some(max)) = (stats.mean, stats.min, stats.max) {
                            writeln!(
                                err,
                                "{} trials on Sud_{n}: mean {mean:.3}, min {min}, max {max}, (n^4 - mean)/n^(10/3) = {:.3}",
                                stats.trials(),
                                stats.removed_per_n_ten_thirds().unwrap_or(f64::NAN)
                            )?;
                        }
                    }
                }
            }
        }
        SudokuCommand::Mnc { n, symmetry } => {
            let r = mnc_exhaustive(*n, *symmetry, ctx.mode)?;
            let s = sudoku_graph(*n)?;
            if !certify_fair_puzzle(&s, &r.witness_board, &r.witness_clues)? {
                return Err(CliError::breach("minimum-clue witness failed certification"));
            }
            match ctx.format {
                Format::Json => json(out, &r)?,
                Format::Csv => writeln!(
                    out,
                    "minimum,witness_clues,fair_at_minimum\n{},\"{}\",{}",
                    r.minimum, r.witness_clues, r.fair_at_minimum
                )?,
                Format::Text => {
                    writeln!(out, "minimum clues: {}", r.minimum)?;
                    for x in &r.exhausted {
                        writeln!(
                            out,
                            "no fair puzzle with {} clues ({} boards, {} clue sets checked)",
                            x.clues, x.boards, x.sets_checked
                        )?;
                    }
                    writeln!(out, "fair puzzles with {} clues: {}", r.minimum, r.fair_at_minimum)?;
                    writeln!(out, "witness puzzle (certified fair):")?;
                    write!(out, "{}", emit_puzzle(s.side(), &r.witness_board.restrict(&r.witness_clues)))?;
                }
            }
        }
        SudokuCommand::Certify { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", file.display())))?;
            let (n, puzzle) = parse_puzzle(&text)?;
            let s = sudoku_graph(n)?;
            let cap = ctx.cap.max(2);
            let count = count_completions(&s, &puzzle, cap)?;
            #[derive(Serialize)]
            struct Cert {
                n: usize,
                clues: usize,
                completions: u64,
                capped: bool,
                fair: bool,
            }
            let r =
                Cert { n, clues: puzzle.support().len(), completions: count, capped: count >= cap, fair: count == 1 };
            match ctx.format {
                Format::Json => json(out, &r)?,
                Format::Csv => writeln!(
                    out,
                    "n,clues,completions,capped,fair\n{},{},{},{},{}",
                    r.n, r.clues, r.completions, r.capped, r.fair
                )?,
                Format::Text => match count {
                    1 => writeln!(out, "fair: exactly one completion")?,
                    0 => writeln!(out, "unfair: no completion")?,
                    c if c >= cap => writeln!(out, "unfair: at least {c} completions")?,
                    c => writeln!(out, "unfair: {c} completions")?,
                },
            }
        }
    }
    Ok(())
}

fn reduce_cmd(
    ctx: &Ctx,
    variant: Variant,
    h: &Graph,
    path: Option<&Path>,
    verify: Option<(VerifyMode, usize)>,
    out: Out,
) -> Result<(), CliError> {
    let inst = reduce(h, variant);
    let g6 = emit_graph6(&inst.graph);
    if let Some(p) = path {
        std::fs::write(p.with_extension("g6"), format!("{g6}\n"))?;
        let roles = serde_json::to_string_pretty(&inst.role_map_json())
            .map_err(|e| CliError::breach(format!("serialization failed: {e}")))?;
        std::fs::write(p.with_extension("roles.json"), roles + "\n")?;
    }
    let report = match verify {
        Some((mode, samples)) => {
            Some(verify_reduction_small(h, variant, mode, samples, ctx.seed, &ctx.limits, ctx.mode)?)
        }
        None => None,
    };
    match ctx.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Reduce<'a> {
                variant: Variant,
                vertices: usize,
                edges: usize,
                k: usize,
                graph6: &'a str,
                roles: serde_json::Value,
                verification: Option<&'a critset::hardness::VerificationReport>,
            }
            json(
                out,
                &Reduce {
                    variant,
                    vertices: inst.graph.vertex_count(),
                    edges: inst.graph.edge_count(),
                    k: inst.k,
                    graph6: &g6,
                    roles: inst.role_map_json(),
                    verification: report.as_ref(),
                },
            )?
        }
        Format::Csv => {
            writeln!(out, "variant,vertices,edges,k,consistent")?;
            let c = report.as_ref().map_or(String::new(), |r| r.consistent.to_string());
            writeln!(out, "{variant},{},{},{},{c}", inst.graph.vertex_count(), inst.graph.edge_count(), inst.k)?;
        }
        Format::Text => {
            writeln!(
                out,
                "{variant} instance: {} vertices, {} edges, k = {}",
                inst.graph.vertex_count(),
                inst.graph.edge_count(),
                inst.k
            )?;
            match path {
                Some(p) => writeln!(
                    out,
                    "wrote {} and {}",
                    p.with_extension("g6").display(),
                    p.with_extension("roles.json").display()
                )?,
                None => writeln!(out, "{g6}")?,
            }
            if let Some(r) = &report {
                writeln!(out, "{}", r.detail)?;
            }
        }
    }
    match report {
        Some(r) if !r.consistent => Err(CliError::breach(format!("reduction check failed: {}", r.detail))),
        _ => Ok(()),
    }
}
