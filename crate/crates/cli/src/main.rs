use clap::{Args, Parser, Subcommand, ValueEnum};
use dioph::campaigns::{
    brute_force_search, merge_reports, run_campaign_with_progress, run_notes, CampaignError, ReportFile, RunMetadata,
    RunOptions, Shard,
};
use dioph::linforms::{self, BoundCertificate, LinformsError, PREC};
use dioph::reduction::reduce_triple;
use dioph::{CampaignKind, CampaignReport, CampaignSpec, DiophantineTriple, Integer};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_FAIL: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_USAGE: u8 = 4;
const EXIT_QUINTUPLE: u8 = 5;

#[derive(Parser)]
#[command(name = "dioph", version, about = "Verification campaigns and bound certificates for Diophantine tuples")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a reduction campaign.
    Verify {
        #[command(subcommand)]
        which: VerifyTarget,
    },
    /// Certify a bound chain.
    Bounds {
        which: BoundsTarget,
        /// Replace the 0.46·B3 term of |log γ1| by this slack over β1 (0.06 reproduces the published chain).
        #[arg(long)]
        log_gamma1_slack: Option<f64>,
        /// Working precision floor in bits.
        #[arg(long, env = "DIOPH_PRECISION_FLOOR", default_value_t = PREC)]
        precision: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Inspect one triple.
    Triple {
        a: String,
        b: String,
        c: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exhaustive search for tuples with largest element at most --max.
    Search {
        #[arg(long = "max")]
        limit: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Merge shard reports written by `verify --shard-index`.
    Merge {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    Euler(CampaignArgs),
    Degree1(CampaignArgs),
    Case {
        /// I, II, III, IV or V.
        #[arg(long)]
        id: String,
        #[command(flatten)]
        args: CampaignArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsTarget {
    Prop1,
    Prop2,
    Euler,
    MatveevConst,
}

#[derive(Clone, Copy, Default, ValueEnum, PartialEq)]
enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    r_min: Option<u64>,
    #[arg(long)]
    r_max: Option<u64>,
    #[arg(long)]
    m_cap: Option<u64>,
    /// Pell cases: override the bound on U.
    #[arg(long)]
    u_cap: Option<u64>,
    #[arg(long, default_value_t = 1)]
    shards: u32,
    /// Run only this shard; without it all shards run and are merged.
    #[arg(long)]
    shard_index: Option<u32>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Units per checkpoint.
    #[arg(long, default_value_t = 256)]
    chunk: usize,
    /// Enumerate and count only.
    #[arg(long)]
    dry_run: bool,
    #[arg(long)]
    quiet: bool,
    #[command(flatten)]
    out: OutArgs,
}

enum Failure {
    Usage(String),
    Io(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<CampaignError> for Failure {
    fn from(e: CampaignError) -> Self {
        match e {
            CampaignError::Spec(m) | CampaignError::Merge(m) => Failure::Usage(m),
            CampaignError::CheckpointMismatch => Failure::Usage(e.to_string()),
            other => Failure::Io(other.to_string()),
        }
    }
}

fn emit(out: &OutArgs, body: &str) -> Result<(), Failure> {
    match &out.output {
        Some(p) => std::fs::write(p, body)?,
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                so.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn build_spec(kind: CampaignKind, a: &CampaignArgs) -> Result<CampaignSpec, Failure> {
    let mut spec = CampaignSpec::full(kind);
    spec.r_lo = a.r_min.unwrap_or(spec.r_lo);
    spec.r_hi = a.r_max.unwrap_or(spec.r_hi);
    if let Some(m) = a.m_cap {
        spec.m_cap = m;
    }
    if a.u_cap.is_some() {
        spec.u_cap = a.u_cap;
    }
    spec.dry_run = a.dry_run;
    if a.shards == 0 {
        return Err(Failure::Usage("--shards must be positive".into()));
    }
    if a.chunk == 0 {
        return Err(Failure::Usage("--chunk must be positive".into()));
    }
    if let Some(i) = a.shard_index {
        spec.shard = Shard { index: i, total: a.shards };
    }
    spec.validate()?;
    Ok(spec)
}

fn host() -> String {
    std::env::var("HOSTNAME").unwrap_or_else(|_| "unknown".into())
}

fn report_text(r: &CampaignReport, meta: &RunMetadata) -> String {
    let mut s = format!(
        "campaign {:?}, r in [{}, {}]{}\n",
        r.spec.kind,
        r.spec.r_lo,
        r.spec.r_hi,
        if r.spec.shard.total > 1 {
            format!(", shard {}/{}", r.spec.shard.index, r.spec.shard.total)
        } else {
            String::new()
        }
    );
    s += &format!("pairs            {}\n", r.pairs_checked);
    s += &format!(
        "triples          {} (raw {}, nondegenerate {})\n",
        r.triples_checked, r.triples_raw, r.triples_nondegenerate
    );
    if r.spec.dry_run {
        s += "reduction        skipped (dry run)\n";
    } else {
        s += &format!(
            "max J            {} (nondegenerate {}), contradiction below {}\n",
            r.max_j_threshold, r.max_j_nondegenerate, r.contradiction_threshold
        );
        let hist: Vec<String> = r.j_histogram.iter().map(|(j, n)| format!("{j}:{n}")).collect();
        s += &format!("J histogram      {}\n", hist.join(" "));
    }
    for f in &r.failures {
        s += &format!("FAILURE r={} {}\n", f.r, f.detail);
    }
    s += &format!("result           {}\n", if r.success() { "success" } else { "FAILED" });
    s += &format!("wall time        {:.1}s on {} workers\n", meta.wall_time_secs, meta.workers);
    for n in &meta.notes {
        s += &format!("note             {n}\n");
    }
    s
}

fn write_report(out: &OutArgs, file: &ReportFile) -> Result<(), Failure> {
    let body = match out.format {
        Format::Json => json(file),
        Format::Csv => format!("{}\n{}\n", CampaignReport::CSV_HEADER, file.report.csv_row()),
        Format::Text => report_text(&file.report, &file.metadata),
    };
    emit(out, &body)
}

fn cmd_verify(kind: CampaignKind, a: &CampaignArgs) -> Result<u8, Failure> {
    let spec = build_spec(kind, a)?;
    let start = Instant::now();
    let quiet = a.quiet;
    let progress = move |done: u64, total: u64| {
        if quiet {
            return;
        }
        let el = start.elapsed().as_secs_f64();
        let eta = if done > 0 { el * (total - done) as f64 / done as f64 } else { 0.0 };
        eprintln!("progress {done}/{total} units, {el:.0}s elapsed, eta {eta:.0}s");
    };
    let run = |spec: &CampaignSpec, checkpoint: Option<PathBuf>| {
        let opts = RunOptions { workers: a.workers, checkpoint, chunk: a.chunk, stop_after: None };
        run_campaign_with_progress(spec, &opts, &progress)
    };
    let (report, merged_from) = if a.shard_index.is_some() || a.shards == 1 {
        (run(&spec, a.checkpoint.clone())?, vec![spec.shard])
    } else {
        let mut parts = Vec::new();
        for i in 0..a.shards {
            let s = spec.clone().with_shard(i, a.shards);
            let cp = a.checkpoint.as_ref().map(|p| p.with_extension(format!("shard{i}.json")));
            parts.push(run(&s, cp)?);
        }
        let shards = parts.iter().map(|p| p.spec.shard).collect();
        (merge_reports(&parts)?, shards)
    };
    let workers = if a.workers == 0 { rayon_threads() } else { a.workers };
    let metadata = RunMetadata {
        wall_time_secs: start.elapsed().as_secs_f64(),
        workers,
        host: host(),
        merged_from,
        notes: run_notes(kind),
    };
    let ok = report.success();
    write_report(&a.out, &ReportFile { report, metadata })?;
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn cmd_merge(inputs: &[PathBuf], out: &OutArgs) -> Result<u8, Failure> {
    let mut files = Vec::new();
    for p in inputs {
        let bytes = std::fs::read(p)?;
        let f: ReportFile = serde_json::from_slice(&bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
        files.push(f);
    }
    let parts: Vec<CampaignReport> = files.iter().map(|f| f.report.clone()).collect();
    let report = merge_reports(&parts)?;
    let metadata = RunMetadata {
        wall_time_secs: files.iter().map(|f| f.metadata.wall_time_secs).sum(),
        workers: files.iter().map(|f| f.metadata.workers).max().unwrap_or(1),
        host: host(),
        merged_from: parts.iter().map(|p| p.spec.shard).collect(),
        notes: parts.first().map(|p| run_notes(p.spec.kind)).unwrap_or_default(),
    };
    let ok = report.success();
    write_report(out, &ReportFile { report, metadata })?;
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn cmd_bounds(which: BoundsTarget, slack: Option<f64>, precision: u32, out: &OutArgs) -> Result<u8, Failure> {
    let prec = precision.max(PREC);
    let chain = || -> Result<Vec<BoundCertificate>, LinformsError> {
        Ok(match which {
            BoundsTarget::Prop1 => linforms::prop1_chain_at(prec)?.certificates,
            BoundsTarget::Prop2 => linforms::prop2_chain_with(prec, slack)?.1,
            BoundsTarget::Euler => linforms::euler_case_bounds_with(prec, slack)?,
            BoundsTarget::MatveevConst => linforms::prop1_chain_at(prec)?.certificates.into_iter().take(2).collect(),
        })
    };
    let certs = match chain() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("bound chain aborted: {e}");
            return Ok(EXIT_FAIL);
        }
    };
    let body = match out.format {
        Format::Json => json(&certs),
        Format::Csv => {
            let mut s = String::from("name,claimed,recomputed_lo,recomputed_hi,tolerance,status\n");
            for c in &certs {
                s += &format!(
                    "\"{}\",{:e},{:e},{:e},{},{:?}\n",
                    c.name, c.claimed, c.recomputed_lo, c.recomputed_hi, c.tolerance, c.status
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &certs {
                s += &format!(
                    "{:4} {:<40} claimed {:<12.6e} recomputed <= {:.6e}\n",
                    if c.passed() { "ok" } else { "FAIL" },
                    c.name,
                    c.claimed,
                    c.recomputed_hi
                );
                if let Some(n) = &c.notes {
                    s += &format!("     note: {n}\n");
                }
            }
            s
        }
    };
    emit(out, &body)?;
    Ok(if linforms::all_pass(&certs) { 0 } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct TripleInfo {
    triple: [String; 3],
    r: String,
    s: String,
    t: String,
    d_plus: String,
    d_minus: String,
    euler: bool,
    degree: usize,
    chain: Vec<String>,
    extension_roots: [String; 3],
    j_threshold: Option<u64>,
}

fn cmd_triple(a: &str, b: &str, c: &str, out: &OutArgs) -> Result<u8, Failure> {
    let parse = |s: &str| s.parse::<Integer>().map_err(|_| Failure::Usage(format!("not an integer: {s}")));
    let t = DiophantineTriple::new(parse(a)?, parse(b)?, parse(c)?)
        .map_err(|e| Failure::Usage(format!("not a Diophantine triple: {e}")))?;
    let cls = t.classify();
    let ext = t.extend_regular();
    let j = reduce_triple(&t, &Integer::from(dioph::campaigns::M_CAP)).ok().map(|o| o.j_threshold);
    let info = TripleInfo {
        triple: t.elements().map(|e| e.to_string()),
        r: t.r().to_string(),
        s: t.s().to_string(),
        t: t.t().to_string(),
        d_plus: ext.d.to_string(),
        d_minus: t.d_minus().to_string(),
        euler: t.is_euler(),
        degree: cls.degree,
        chain: cls.chain.iter().map(|x| x.to_string()).collect(),
        extension_roots: [ext.x.to_string(), ext.y.to_string(), ext.z.to_string()],
        j_threshold: j,
    };
    let body = match out.format {
        Format::Json => json(&info),
        Format::Csv => format!(
            "a,b,c,r,s,t,d_plus,d_minus,euler,degree\n{},{},{},{},{},{},{},{},{},{}\n",
            info.triple[0],
            info.triple[1],
            info.triple[2],
            info.r,
            info.s,
            info.t,
            info.d_plus,
            info.d_minus,
            info.euler,
            info.degree
        ),
        Format::Text => {
            let mut s = format!("triple      {t}\n");
            s += &format!("roots       r = {}, s = {}, t = {}\n", info.r, info.s, info.t);
            s += &format!("d+          {}\n", info.d_plus);
            s += &format!("  roots     {}, {}, {}\n", ext.x, ext.y, ext.z);
            s += &format!("d-          {}\n", info.d_minus);
            s += &format!("euler       {}\n", info.euler);
            s += &format!("degree      {}\n", info.degree);
            s += &format!("chain       {}\n", info.chain.join(" -> "));
            match j {
                Some(j) => s += &format!("J bound     {j} (M = 1.9e16)\n"),
                None => s += "J bound     reduction did not succeed\n",
            }
            s
        }
    };
    emit(out, &body)?;
    Ok(0)
}

fn cmd_search(limit: u64, out: &OutArgs) -> Result<u8, Failure> {
    if limit >= u32::MAX as u64 {
        return Err(Failure::Usage("--max must fit in 32 bits".into()));
    }
    let res = brute_force_search(limit);
    let body = match out.format {
        Format::Json => json(&res),
        Format::Csv => {
            let mut s = String::from("size,elements,regular\n");
            for q in &res.quadruples {
                let e: Vec<String> = q.elements.iter().map(u64::to_string).collect();
                s += &format!("4,{},{}\n", e.join(" "), q.regular);
            }
            for q in &res.quintuples {
                let e: Vec<String> = q.iter().map(u64::to_string).collect();
                s += &format!("5,{},\n", e.join(" "));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "limit {}: {} pairs, {} triples, {} quadruples, {} quintuples\n",
                limit,
                res.pairs,
                res.triples.len(),
                res.quadruples.len(),
                res.quintuples.len()
            );
            for q in &res.quadruples {
                let [a, b, c, d] = q.elements;
                s += &format!("{{{a}, {b}, {c}, {d}}} {}\n", if q.regular { "regular" } else { "irregular" });
            }
            for q in &res.quintuples {
                s += &format!("QUINTUPLE {q:?}\n");
            }
            s
        }
    };
    emit(out, &body)?;
    Ok(if res.quintuples.is_empty() { 0 } else { EXIT_QUINTUPLE })
}

fn dispatch(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Verify { which } => match which {
            VerifyTarget::Euler(a) => cmd_verify(CampaignKind::Euler, &a),
            VerifyTarget::Degree1(a) => cmd_verify(CampaignKind::Degree1, &a),
            VerifyTarget::Case { id, args } => {
                let kind = match CampaignKind::parse(&id) {
                    Some(
                        k @ (CampaignKind::CaseI
                        | CampaignKind::CaseII
                        | CampaignKind::CaseIII
                        | CampaignKind::CaseIV
                        | CampaignKind::CaseV),
                    ) => k,
                    _ => return Err(Failure::Usage(format!("unknown case id {id}"))),
                };
                cmd_verify(kind, &args)
            }
        },
        Cmd::Bounds { which, log_gamma1_slack, precision, out } => cmd_bounds(which, log_gamma1_slack, precision, &out),
        Cmd::Triple { a, b, c, out } => cmd_triple(&a, &b, &c, &out),
        Cmd::Search { limit, out } => cmd_search(limit, &out),
        Cmd::Merge { inputs, out } => cmd_merge(&inputs, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("I/O error: {m}");
            ExitCode::from(EXIT_IO)
        }
    }
}
