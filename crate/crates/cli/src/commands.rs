use crate::manifest::Recorder;
use crate::*;
use extremal_spectra::bounds::{self, BoundValue, TableKind};
use extremal_spectra::constructions::{self, inertia_report, sk_certify, CertifiedSk, CertifyMode, Family};
use extremal_spectra::graphs::{self, BlowupSpec, Sign, ZeroDiag};
use extremal_spectra::hadamard::{self, HadamardMatrix};
use extremal_spectra::io::{parse_adj, parse_pmm, write_adj, write_pmm};
use extremal_spectra::lab::{self, LabConfig};
use extremal_spectra::latin::{self, LatinKind};
use extremal_spectra::linalg::{Graph, PmOneMatrix};
use extremal_spectra::report::{render, render_pretty, round_sig};
use extremal_spectra::search::{self, SearchConfig, SearchStatus};
use extremal_spectra::spectra::{default_tolerance, eigen_sym};
use serde_json::json;
use std::path::Path;

type Result<T> = std::result::Result<T, CliError>;

const SEARCH_CHUNK: u64 = 1_000_000;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io {
            path: "stdout".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(x: &T) -> Result<()> {
    emit(&(render_pretty(x).map_err(CliError::invalid)? + "\n"))
}

fn read_pmm(rec: &mut Recorder, path: &Path) -> Result<PmOneMatrix> {
    let text = rec.read(path).map_err(io_err(path))?;
    parse_pmm(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn read_adj(rec: &mut Recorder, path: &Path) -> Result<Graph> {
    let text = rec.read(path).map_err(io_err(path))?;
    parse_adj(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn write(rec: &mut Recorder, path: &Path, text: &str) -> Result<()> {
    rec.write(path, text).map_err(io_err(path))
}

pub fn dispatch(cli: Cli, argv: &[String]) -> Result<()> {
    let name = argv.get(1).cloned().unwrap_or_default();
    let mut rec = Recorder::new(&name, argv);
    let out = match cli.command {
        Command::Construct(a) => construct(&mut rec, a),
        Command::Certify(a) => certify(&mut rec, a),
        Command::Spectrum(a) => spectrum(&mut rec, a),
        Command::Graph(a) => graph(&mut rec, a),
        Command::ConstructGraph(a) => construct_graph(&mut rec, a),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Search(a) => search_cmd(&mut rec, a),
        Command::Lab(a) => lab_cmd(a, cli.seed),
        Command::Latin(a) => latin_cmd(a),
        Command::Hadamard(a) => hadamard_cmd(&mut rec, a),
    };
    // a manifest is written even when the command reports a failure verdict
    rec.finish().map_err(|e| CliError::Io {
        path: "manifest".into(),
        source: e,
    })?;
    out
}

fn construct(rec: &mut Recorder, a: ConstructArgs) -> Result<()> {
    let family: Family = a.family.parse().map_err(CliError::Validation)?;
    let c = constructions::build(family, a.s, a.n).map_err(CliError::invalid)?;
    write(rec, &a.out, &write_pmm(&c.matrix))?;
    let inertia = inertia_report(&c).map_err(CliError::invalid)?;
    print_json(&json!({ "recipe": c.recipe, "inertia": inertia }))
}

fn certify(rec: &mut Recorder, a: CertifyArgs) -> Result<()> {
    let b = read_pmm(rec, &a.file)?;
    let mode = if a.float { CertifyMode::Float } else { CertifyMode::Exact };
    let cert = sk_certify(&b, a.k, mode).map_err(CliError::invalid)?;
    let text = render_pretty(&cert).map_err(CliError::invalid)?;
    if let Some(path) = &a.report {
        write(rec, path, &(text.clone() + "\n"))?;
    }
    emit(&(text + "\n"))?;
    if cert.is_member() {
        Ok(())
    } else {
        Err(CliError::Certification(format!("{} is not in S_{}", a.file.display(), a.k)))
    }
}

fn spectrum(rec: &mut Recorder, a: SpectrumArgs) -> Result<()> {
    let text = rec.read(&a.file).map_err(io_err(&a.file))?;
    let m = if text.starts_with("PMM") {
        parse_pmm(&text).map_err(CliError::invalid)?.into_sym()
    } else {
        parse_adj(&text).map_err(CliError::invalid)?.into_sym()
    };
    let s = eigen_sym(&m, default_tolerance(m.order())).map_err(CliError::invalid)?;
    let report = s.report(&a.ky_fan).map_err(CliError::invalid)?;
    print_json(&json!({
        "report": report,
        "grouped": s.grouped(s.cluster_tolerance()),
        "inertia": s.inertia(s.cluster_tolerance()),
    }))
}

fn graph(rec: &mut Recorder, a: GraphArgs) -> Result<()> {
    if let Some(from) = &a.from {
        let b = read_pmm(rec, from)?;
        match a.transform.as_deref() {
            Some("double") => {
                let d = graphs::doubling(&b);
                write(rec, &a.out, &write_pmm(&d))?;
                return print_json(&json!({ "transform": "double", "order": d.order() }));
            }
            Some("half-shift") => {
                let sign = match &a.sign {
                    Some(s) => s.parse::<Sign>().map_err(CliError::Validation)?,
                    None if b.order() > 0 && b.get(0, 0) == 1 => Sign::Minus,
                    None => Sign::Plus,
                };
                let zd: ZeroDiag = a.zero_diag.parse().map_err(CliError::Validation)?;
                let g = graphs::half_shift(&b, a.t, sign, zd).map_err(CliError::invalid)?;
                write(rec, &a.out, &write_adj(&g))?;
                return print_json(&json!({
                    "transform": "half-shift",
                    "t": a.t,
                    "sign": sign.value(),
                    "order": g.order(),
                    "edges": g.edge_count(),
                }));
            }
            _ => return Err(CliError::invalid("--from needs --transform")),
        }
    }
    let (Some(kind), Some(input)) = (&a.blowup, &a.input) else {
        return Err(CliError::invalid("give either --from with --transform, or --blowup with --in"));
    };
    let g = read_adj(rec, input)?;
    let spec = BlowupSpec {
        t: a.t,
        closed: kind == "closed",
    };
    let h = graphs::blowup(&g, spec).map_err(CliError::invalid)?;
    write(rec, &a.out, &write_adj(&h))?;
    print_json(&json!({ "blowup": kind, "t": a.t, "order": h.order(), "edges": h.edge_count() }))
}

fn need<T>(x: Option<T>, flag: &str, family: &str) -> Result<T> {
    x.ok_or_else(|| CliError::Validation(format!("--family {family} needs --{flag}")))
}

fn certified_input(rec: &mut Recorder, a: &ConstructGraphArgs) -> Result<CertifiedSk> {
    let path = need(a.from.as_ref(), "from", &a.family)?;
    let k = need(a.k, "k", &a.family)?;
    let b = read_pmm(rec, path)?;
    CertifiedSk::certify(b, k).map_err(|e| CliError::Certification(e.to_string()))
}

fn construct_graph(rec: &mut Recorder, a: ConstructGraphArgs) -> Result<()> {
    let f = a.family.as_str();
    let built = match f {
        "thng" => {
            let pair = match &a.from {
                Some(_) => graphs::build_thng_pair_from(&certified_input(rec, &a)?, a.t),
                None => graphs::build_thng_pair(need(a.k, "k", f)?, a.t),
            }
            .map_err(CliError::invalid)?;
            let v = pair.verify(a.tolerance).map_err(CliError::invalid)?;
            let stem = a.out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let comp_path = a.out.with_file_name(format!("{stem}.complement.adj"));
            write(rec, &a.out, &write_adj(&pair.graph))?;
            write(rec, &comp_path, &write_adj(&pair.complement))?;
            print_json(&json!({ "certificate": pair.certificate, "verification": v }))?;
            return if v.passed() {
                Ok(())
            } else {
                Err(CliError::Certification("claimed values not attained".into()))
            };
        }
        "thp" => graphs::build_thp(need(a.s, "s", f)?, a.t),
        "thck" => graphs::build_thck(need(a.s, "s", f)?, a.n, a.t),
        "thck1" => graphs::build_thck1(&certified_input(rec, &a)?, a.t),
        "thmx" => graphs::build_thmx(&certified_input(rec, &a)?, a.t),
        "kyfan-hadamard" => {
            let h = match &a.hadamard {
                Some(p) => HadamardMatrix::new(read_pmm(rec, p)?).map_err(CliError::invalid)?,
                None => graphs::regular_hadamard_4(),
            };
            graphs::build_kyfan_hadamard(&h, a.n.unwrap_or(a.t))
        }
        other => return Err(CliError::Validation(format!("unknown family {other}"))),
    }
    .map_err(CliError::invalid)?;
    let v = built.verify(a.tolerance).map_err(CliError::invalid)?;
    write(rec, &a.out, &write_adj(&built.graph))?;
    print_json(&json!({ "certificate": built.certificate, "verification": v }))?;
    if v.passed() {
        Ok(())
    } else {
        Err(CliError::Certification("claimed values not attained".into()))
    }
}

fn plain(v: &BoundValue) -> String {
    match v {
        BoundValue::Exact(q) => q.to_string(),
        BoundValue::Float(x) => round_sig(*x).to_string(),
        BoundValue::Interval { lo, hi } => format!("[{}, {}]", round_sig(*lo), round_sig(*hi)),
        BoundValue::Asymptotic(s) => s.clone(),
    }
}

fn bounds_cmd(a: BoundsArgs) -> Result<()> {
    if let Some(kind) = &a.table {
        let kind: TableKind = kind.parse().map_err(CliError::Validation)?;
        let rows = bounds::table(kind, a.k_max.unwrap_or(20));
        if a.json {
            return print_json(&rows);
        }
        let cell = |x: Option<f64>| x.map_or("-".to_string(), |x| round_sig(x).to_string());
        let mut text = String::from("k\tlower\tlower_source\tupper\n");
        for r in rows {
            let src = r.lower_source.as_deref().unwrap_or("-");
            text += &format!("{}\t{}\t{}\t{}\n", r.k, cell(r.lower), src, cell(r.upper));
        }
        return emit(&text);
    }
    let name = a.name.as_deref().expect("clap requires --name");
    let k = a.k.expect("clap requires --k");
    let reports = bounds::evaluate(name, k, a.n).map_err(CliError::invalid)?;
    if a.json {
        return print_json(&reports);
    }
    let text: String = match reports.as_slice() {
        [one] => format!("{}\n", plain(&one.value)),
        many => many.iter().map(|r| format!("{}: {}\n", r.name, plain(&r.value))).collect(),
    };
    emit(&text)
}

fn search_cmd(rec: &mut Recorder, a: SearchArgs) -> Result<()> {
    let mut token = match &a.resume {
        Some(p) => Some(rec.read(p).map_err(io_err(p))?.trim().to_string()),
        None => None,
    };
    let mut left = a.budget;
    let result = loop {
        let chunk = left.min(SEARCH_CHUNK);
        let cfg = SearchConfig {
            k: a.k,
            order: a.order,
            budget: chunk.max(1),
            symmetry_reduction: !a.no_symmetry,
            resume_token: token.take(),
        };
        let r = search::search_sk(&cfg).map_err(CliError::invalid)?;
        left -= chunk;
        eprintln!("search k={} order={}: {} nodes, status {:?}", a.k, a.order, r.nodes_expanded, r.status);
        if r.status != SearchStatus::BudgetExceeded || left == 0 {
            break r;
        }
        token = r.resume_token.clone();
    };
    print_json(&result)?;
    if result.status == SearchStatus::BudgetExceeded {
        if let (Some(path), Some(t)) = (&a.checkpoint, &result.resume_token) {
            write(rec, path, &(t.clone() + "\n"))?;
        }
        return Err(CliError::Budget {
            nodes: result.nodes_expanded,
        });
    }
    Ok(())
}

fn lab_cmd(a: LabArgs, seed: u64) -> Result<()> {
    let cfg = LabConfig {
        n_max: a.n_max,
        samples: a.samples,
        seed,
        ..LabConfig::default()
    };
    let runs = lab::run_property(&a.property, &cfg).map_err(CliError::invalid)?;
    if a.json {
        print_json(&runs)?;
    } else {
        for r in &runs {
            let universe = render(&r.universe).map_err(CliError::invalid)?;
            let n = r.violations.len();
            emit(&format!("{}\t{universe}\t{} instances\t{n} violations\n", r.property_name, r.instances))?;
            for v in &r.violations {
                eprintln!("violation of {} at k={}: {} vs {}\n{}", v.statement, v.k, v.lhs, v.rhs, v.graph);
            }
        }
    }
    let bad: usize = runs.iter().map(|r| r.violations.len()).sum();
    if bad == 0 {
        Ok(())
    } else {
        Err(CliError::Certification(format!("{bad} violations")))
    }
}

fn latin_cmd(a: LatinArgs) -> Result<()> {
    let kind = if a.kind == "const-diag" { LatinKind::ConstDiag } else { LatinKind::BackCirculant };
    let l = latin::build(kind, a.s).map_err(CliError::invalid)?;
    emit(&l.to_text())
}

fn hadamard_cmd(rec: &mut Recorder, a: HadamardArgs) -> Result<()> {
    let (h, source) = match (a.sylvester, a.paley) {
        (Some(m), _) => (hadamard::sylvester(m), format!("sylvester({m})")),
        (None, Some(q)) => (hadamard::paley2(q), format!("paley2({q})")),
        (None, None) => return Err(CliError::invalid("give --sylvester M or --paley Q")),
    };
    let mut h = h.map_err(CliError::invalid)?;
    if a.normalize {
        h = hadamard::normalize(&h);
    }
    write(rec, &a.out, &write_pmm(h.matrix()))?;
    print_json(&json!({ "source": source, "order": h.order(), "normalized": h.is_normalized() }))
}
