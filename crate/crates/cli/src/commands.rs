use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use qube_core::enumerate::{for_each_cycle_from, parse_prefixes, prefixes_to_text, split_prefixes};
use qube_core::mis::{equi_independence_limited, hypercube_equi_independence_limited};
use qube_core::{
    brute_force_equi, equi_reduction, find_squares, first_square, for_each_cycle, is_balanced, is_independent,
    BipartiteGraph, EquiMethod, HamiltonianCycle, PruneConfig,
};
use rayon::prelude::*;
use serde_json::json;

use crate::args::{Command, CorpusArgs, EnumerateArgs, EquiArgs, GraphSource, Method, Prune, Table, VerifyArgs};
use crate::corpus::{read_cycles, read_text, write_cycles, write_text};
use crate::table::{computed_table, pigeonhole_report, published_table, table_row};
use crate::verify::{self, CorpusKind, VerifyJob};
use crate::{CliError, Outcome, Workers};

pub(crate) fn run(cmd: Command, workers: &Workers, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Gray { n } => {
            writeln!(out, "{}", HamiltonianCycle::gray_code(n)?.to_json())?;
            Ok(Outcome::Holds)
        }
        Command::Enumerate(args) => enumerate(args, workers, out, err),
        Command::Analyze { input, dim } => analyze(&input, dim, out),
        Command::Squares { input, first_only } => {
            for h in read_cycles(&input)? {
                let line = if first_only {
                    serde_json::to_string(&first_square(&h))
                } else {
                    serde_json::to_string(&find_squares(&h))
                };
                writeln!(out, "{}", line.expect("squares serialize"))?;
            }
            Ok(Outcome::Holds)
        }
        Command::Verify(args) => verify(args, workers, out, err),
        Command::Equiind(args) => equiind(args, out),
        Command::Reduce { source, out: path } => {
            let (b, label) = load_graph(&source)?;
            let r = equi_reduction(&b);
            let mut text = format!("c pair graph of {label}\n");
            for (p, (u, v)) in r.pair_labels.iter().enumerate() {
                text.push_str(&format!("c pair {p} {u} {v}\n"));
            }
            text.push_str(&r.graph.to_text());
            write_text(&path, &text)?;
            let summary = json!({
                "source": label,
                "vertices": r.graph.vertex_count(),
                "edges": r.graph.edge_count(),
                "out": path.display().to_string(),
            });
            writeln!(out, "{summary}")?;
            Ok(Outcome::Holds)
        }
        Command::Table1 { max_n, reduction_max_n } => table1(max_n, reduction_max_n, out, err),
        Command::Pigeonhole { n, table } => {
            let report = match table {
                Table::Computed => pigeonhole_report(n, computed_table)?,
                Table::Published => pigeonhole_report(n, published_table)?,
            };
            writeln!(err, "{}", report.message)?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
            Ok(Outcome::Holds)
        }
    }
}

fn prunes(p: Prune) -> PruneConfig {
    match p {
        Prune::All => PruneConfig::all(),
        Prune::None => PruneConfig::none(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn enumerate(args: EnumerateArgs, workers: &Workers, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let n = args.n;
    let prunes = prunes(args.prune);
    if let (Some(depth), Some(path)) = (args.split_depth, &args.prefixes_out) {
        let prefixes = split_prefixes(n, depth, prunes)?;
        write_text(path, &prefixes_to_text(&prefixes))?;
        writeln!(out, "{}", json!({ "n": n, "depth": depth, "prefixes": prefixes.len() }))?;
        return Ok(Outcome::Holds);
    }
    let prefixes = match &args.from_prefixes {
        Some(path) => Some(parse_prefixes(&read_text(path)?)?),
        None => None,
    };
    if args.count_only {
        let count = match &prefixes {
            Some(list) => workers.install(|| {
                list.par_iter()
                    .map(|p| {
                        let mut c = 0u64;
                        for_each_cycle_from(n, p, prunes, |_| {
                            c += 1;
                            true
                        })
                        .map(|_| c)
                    })
                    .try_reduce(|| 0, |a, b| Ok(a + b))
            })?,
            None => workers.install(|| qube_core::enumerate::count_parallel(n, prunes, n + 2))?,
        };
        writeln!(out, "{}", json!({ "n": n, "prune": format!("{:?}", args.prune).to_lowercase(), "count": count }))?;
        return Ok(Outcome::Holds);
    }
    let mut sink: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(create(path)?),
        None => Box::new(&mut *out),
    };
    let mut emitted = 0u64;
    let mut failure: Option<std::io::Error> = None;
    let mut emit = |w: &[u32]| {
        let h = HamiltonianCycle::new(n, w.to_vec()).expect("enumerated cycles are valid");
        match writeln!(sink, "{}", h.to_json()) {
            Ok(()) => {
                emitted += 1;
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    };
    match &prefixes {
        Some(list) => {
            for p in list {
                for_each_cycle_from(n, p, prunes, &mut emit)?;
            }
        }
        None => for_each_cycle(n, prunes, &mut emit)?,
    }
    if let Some(e) = failure {
        return Err(e.into());
    }
    sink.flush()?;
    drop(sink);
    writeln!(err, "emitted {emitted} cycles of Q_{n}")?;
    Ok(Outcome::Holds)
}

fn analyze(input: &Path, dim: Option<usize>, out: &mut dyn Write) -> Result<Outcome, CliError> {
    for h in read_cycles(input)? {
        let n = h.n();
        let dims: Vec<usize> = match dim {
            Some(i) if i >= n => return Err(qube_core::Error::IndexOutOfRange { index: i, n }.into()),
            Some(i) => vec![i],
            None => (0..n).collect(),
        };
        let c = h.chromatic_vector();
        let mut profiles = Vec::new();
        for i in dims {
            let p = h.dimension_profile(i)?;
            profiles.push(json!({
                "dim": i,
                "index_list": p.index_list,
                "start_vertices": p.start_vertices.iter().map(|v| v.value()).collect::<Vec<_>>(),
                "edge_list": p.edge_list.iter().map(|e| [e.base().value(), e.top().value()]).collect::<Vec<_>>(),
                "segments": p.segments,
                "parity_list": p.parity_list,
                "parity_recurrence": p.parity_recurrence,
                "balanced": p.is_balanced(),
                "recurrence_consistent": p.recurrence_consistent(),
                "segment_sums_balanced": p.segment_sums_balanced(),
            }));
        }
        let doc = json!({
            "n": n,
            "chromatic_vector": c.counts,
            "conditions": c.check_conditions(n),
            "profiles": profiles,
        });
        writeln!(out, "{doc}")?;
    }
    Ok(Outcome::Holds)
}

fn corpus_kind(c: &CorpusArgs, seed: Option<u64>) -> CorpusKind {
    match (c.sample, seed, &c.input) {
        (Some(k), Some(seed), _) => CorpusKind::Sample { k, seed },
        (_, _, Some(path)) => CorpusKind::File { path: path.display().to_string() },
        _ => CorpusKind::Exhaustive,
    }
}

fn verify(args: VerifyArgs, workers: &Workers, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    if args.seed.is_some() && args.corpus.sample.is_none() {
        return Err(CliError::Usage("--seed only applies to --sample".into()));
    }
    let job = VerifyJob {
        n: args.n,
        property: args.property,
        corpus: corpus_kind(&args.corpus, args.seed),
        mode: args.mode,
        table: args.table,
    };
    let (report, bad) = verify::run(&job, workers)?;
    if args.property == crate::args::Property::Squares && !bad.is_empty() {
        let mut f = create(&args.persist)?;
        write_cycles(&mut f, &bad)?;
        f.flush()?;
        writeln!(err, "square-free cycles written to {}", args.persist.display())?;
    }
    writeln!(
        err,
        "{} n={} {}: checked {}, violations {} ({:.3} s)",
        report.property, report.n, report.corpus, report.checked, report.violations, report.seconds
    )?;
    writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    Ok(if report.holds() { Outcome::Holds } else { Outcome::Violated })
}

fn load_graph(source: &GraphSource) -> Result<(BipartiteGraph, String), CliError> {
    match (source.hypercube, &source.graph) {
        (Some(n), _) => Ok((BipartiteGraph::hypercube(n)?, format!("Q_{n}"))),
        (None, Some(path)) => Ok((BipartiteGraph::parse_text(&read_text(path)?)?, path.display().to_string())),
        (None, None) => Err(CliError::Usage("one of --hypercube or --graph is required".into())),
    }
}

fn equiind(args: EquiArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let (b, label) = load_graph(&args.source)?;
    let method_name = format!("{:?}", args.method).to_lowercase();
    let doc = match args.method {
        Method::Oracle => {
            let size = brute_force_equi(&b)?;
            json!({ "graph": label, "method": method_name, "vertices": b.vertex_count(), "size": size, "witness": null })
        }
        Method::Direct | Method::Reduction => {
            let method = if args.method == Method::Direct { EquiMethod::Direct } else { EquiMethod::Reduction };
            let s = match args.source.hypercube {
                Some(n) => hypercube_equi_independence_limited(n, method, args.size_limit)?,
                None => equi_independence_limited(&b, method, args.size_limit)?,
            };
            let independent = is_independent(b.graph(), &s.vertices);
            let balanced = is_balanced(&b, &s.vertices);
            if !(independent && balanced) {
                writeln!(out, "{}", json!({ "graph": label, "method": method_name, "invalid_witness": s.vertices }))?;
                return Ok(Outcome::Violated);
            }
            json!({
                "graph": label,
                "method": method_name,
                "vertices": b.vertex_count(),
                "size": s.size,
                "witness": s.vertices,
                "independent": independent,
                "balanced": balanced,
            })
        }
    };
    writeln!(out, "{doc}")?;
    Ok(Outcome::Holds)
}

fn table1(max_n: usize, reduction_max_n: usize, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    if max_n < 3 {
        return Err(CliError::Usage("--max-n must be at least 3".into()));
    }
    let mut rows = Vec::new();
    writeln!(err, "{:>2} {:>9} {:>9} {:>8} {:>9}  flags", "n", "alpha_eq", "published", "|V'|", "|E'|")?;
    for n in 3..=max_n {
        let row = table_row(n, n <= reduction_max_n)?;
        let published = row.published.as_ref().map_or("-".to_string(), |p| p.alpha_eq.to_string());
        writeln!(
            err,
            "{:>2} {:>9} {:>9} {:>8} {:>9}  {}",
            row.n,
            row.alpha_eq,
            published,
            row.pair_vertices,
            row.pair_edges,
            row.flags.join("; ")
        )?;
        rows.push(row);
    }
    writeln!(out, "{}", serde_json::to_string(&json!({ "rows": rows })).expect("rows serialize"))?;
    Ok(Outcome::Holds)
}
