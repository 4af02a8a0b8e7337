//! `mineq`: checks matroid inequalities from the command line.
//!
//! Exit codes: 0 holds/certified, 1 falsified (witness printed),
//! 2 unknown or inconclusive, 3 usage or input error.

mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use matroid_ineq::catalog::{self, Provenance};
use matroid_ineq::genpoly::{
    check_condition, check_prop46, kirchhoff_conductance, mason_levels, rayleigh_diff, ConditionId,
    ConditionOutcome, ConditionReport, ConditionWitness, SetStatus, WeightAssignment,
};
use matroid_ineq::hpp::{hpp_sample_test, parse_matrix, sixth_root_verify, HppVerdict};
use matroid_ineq::matroid::io::{
    format_graph, format_matroid, parse_graph, parse_matroid_or_graph,
};
use matroid_ineq::positivity::{
    format_certificate, orthant_nonneg, parse_certificates, Certificate, LabeledCertificate,
    SamplerConfig, Verdict,
};
use matroid_ineq::rational::{parse_rational, Rational};
use matroid_ineq::{ElementSet, Graph, MPoly, Matroid, VarId};

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "mineq",
    version,
    about = "Exact checks of matroid inequalities"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every sampling stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Total sampling budget of a run.
    #[arg(long, global = true, default_value_t = 1000,
          value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Sampled weights lie in [2^-B, 2^B].
    #[arg(long = "log2-range", global = true, default_value_t = 6)]
    log2_range: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `file:PATH` or `catalog:NAME`.
    #[arg(long, global = true)]
    matroid: Option<String>,
    /// Write every certificate produced to this file.
    #[arg(long = "cert-out", global = true)]
    cert_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one condition on the matroid given by --matroid.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Recompute the rank-3 coefficient tables and compare with the printed ones.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: Option<u8>,
    },
    /// List or export built-in matroids.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
    /// Check that a matrix over Q(w) is a sixth-root-of-unity representation.
    Sixthroot {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Effective conductance between two vertices of a graph.
    Conductance {
        /// `file:PATH` or `catalog:NAME` (a graphic entry).
        #[arg(long)]
        graph: String,
        #[arg(long)]
        source: usize,
        #[arg(long)]
        sink: usize,
        /// Edge conductances such as `0=1,1=3/2`; defaults to all ones.
        #[arg(long)]
        weights: Option<WeightAssignment>,
    },
    /// Independent-set counts, their log-concavity, and the free-extension identity.
    Mason {
        /// Number of added points.
        #[arg(long)]
        ell: Option<usize>,
        /// Truncation rank; defaults to the rank of the matroid.
        #[arg(long, requires = "ell")]
        truncate: Option<usize>,
    },
    /// Replay every certificate in a file.
    VerifyCert {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// M_e^f M_f^e >= M_ef M^ef, for one pair or all pairs.
    Rayleigh {
        #[arg(long, requires = "f")]
        e: Option<usize>,
        #[arg(long, requires = "e")]
        f: Option<usize>,
    },
    /// Psi_k >= lambda Psi_(k+1) on every 2k-subset.
    Lray {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
    },
    /// Real-rootedness of the slice polynomials, on every subset of size up to the level.
    Rz {
        #[arg(long, short = 'm')]
        level: usize,
    },
    /// Binomial log-concavity of the slice coefficients, up to the level.
    Blc {
        #[arg(long, short = 'm')]
        level: usize,
    },
    /// Strict BLC with the smaller square-root constant, up to the level.
    Sqrtblc {
        #[arg(long, short = 'm')]
        level: usize,
    },
    /// Strict log-concavity of the slice coefficients, up to the level.
    Slc {
        #[arg(long, short = 'm')]
        level: usize,
    },
    /// Search for a non-real-rooted specialization M(a x + b).
    Hpp,
    /// M_A^B M_B^A >= M_(A+b)^(B-b) M_(B-b)^(A+b), optionally specialized.
    Prop46 {
        #[arg(long, value_parser = set_arg)]
        a: ElementSet,
        #[arg(long = "b-set", value_parser = set_arg)]
        b_set: ElementSet,
        #[arg(long)]
        b: usize,
        /// Substitutions such as `5=1,7=1,6=y4`.
        #[arg(long, value_parser = substitutions_arg)]
        specialize: Option<BTreeMap<VarId, MPoly>>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Print an entry in the matroid (or graph) file format.
    Export {
        name: String,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// `0,1`, `{0,1}` or `{}`.
fn set_arg(s: &str) -> Result<ElementSet, String> {
    let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .ok()
                .filter(|&e| e < 64)
                .ok_or_else(|| format!("bad element `{t}`"))
        })
        .collect()
}

fn var_arg(s: &str) -> Result<VarId, String> {
    let t = s.trim();
    t.strip_prefix('y')
        .unwrap_or(t)
        .parse()
        .map_err(|_| format!("bad variable `{t}`"))
}

fn substitutions_arg(s: &str) -> Result<BTreeMap<VarId, MPoly>, String> {
    s.split(',')
        .map(|pair| {
            let (v, p) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected `var=value`, got `{pair}`"))?;
            let p: MPoly = p.trim().parse().map_err(|e| format!("{e}"))?;
            Ok((var_arg(v)?, p))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Holds,
    Falsified,
    Unknown,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Holds => 0,
            Status::Falsified => 1,
            Status::Unknown => 2,
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Falsified => "falsified",
            Status::Unknown => "unknown",
        }
    }
}

struct Ctx {
    rep: Report,
    cfg: SamplerConfig,
    certs: Vec<LabeledCertificate>,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_matroid(spec: Option<&str>) -> Result<(Matroid, Option<Graph>), String> {
    let spec = spec.ok_or("--matroid is required (file:PATH or catalog:NAME)")?;
    if let Some(path) = spec.strip_prefix("file:") {
        return parse_matroid_or_graph(&read(Path::new(path))?).map_err(|e| format!("{path}: {e}"));
    }
    let entry = catalog::builtin(spec.strip_prefix("catalog:").unwrap_or(spec))
        .map_err(|e| e.to_string())?;
    let graph = match entry.provenance {
        Provenance::Graphic(g) => Some(g),
        _ => None,
    };
    Ok((entry.matroid, graph))
}

fn load_graph(spec: &str) -> Result<Graph, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        return parse_graph(&read(Path::new(path))?).map_err(|e| format!("{path}: {e}"));
    }
    let name = spec.strip_prefix("catalog:").unwrap_or(spec);
    match catalog::builtin(name)
        .map_err(|e| e.to_string())?
        .provenance
    {
        Provenance::Graphic(g) => Ok(g),
        _ => Err(format!("catalog entry `{name}` is not a graph")),
    }
}

fn matroid_label(m: &Matroid) -> String {
    m.name().unwrap_or("matroid").to_string()
}

fn cert_kind(c: &Option<Certificate>) -> &'static str {
    c.as_ref().map_or("trivial", Certificate::kind)
}

fn index_text(index: Option<usize>) -> String {
    index.map_or_else(String::new, |j| format!(" j={j}"))
}

fn report_witness(ctx: &mut Ctx, w: &ConditionWitness) {
    let value = w.value.as_ref().map(ToString::to_string);
    ctx.rep.text(format!(
        "witness: S={}{} at {}{}",
        w.set,
        index_text(w.index),
        w.point,
        value
            .as_ref()
            .map_or_else(String::new, |v| format!(", value {v}"))
    ));
    if let Some(d) = &w.detail {
        ctx.rep.text(format!("  {d}"));
    }
    let mut fields = vec![("set", w.set.to_string())];
    if let Some(j) = w.index {
        fields.push(("index", j.to_string()));
    }
    fields.push(("point", w.point.to_string()));
    if let Some(v) = value {
        fields.push(("value", v));
    }
    if let Some(d) = &w.detail {
        fields.push(("detail", d.clone()));
    }
    ctx.rep.record("witness", &fields);
}

fn report_condition(ctx: &mut Ctx, label: &str, m: &Matroid, r: &ConditionReport) -> Status {
    for rec in &r.records {
        let (status, kind) = match &rec.status {
            SetStatus::Holds(c) => ("certified", cert_kind(c)),
            SetStatus::Fails(_) => ("falsified", "-"),
            SetStatus::Unknown => ("unknown", "-"),
        };
        ctx.rep.text(format!(
            "  S={}{}: {status} ({kind})",
            rec.set,
            index_text(rec.index)
        ));
        let mut fields = vec![
            ("condition", label.to_string()),
            ("set", rec.set.to_string()),
        ];
        if let Some(j) = rec.index {
            fields.push(("index", j.to_string()));
        }
        fields.push(("status", status.to_string()));
        fields.push(("cert", kind.to_string()));
        ctx.rep.record("set", &fields);
        if let (SetStatus::Holds(Some(c)), Some(p)) = (&rec.status, &rec.poly) {
            ctx.certs.push(LabeledCertificate {
                label: Some(format!(
                    "{label} {} S={}{}",
                    matroid_label(m),
                    rec.set,
                    index_text(rec.index)
                )),
                poly: p.clone(),
                certificate: c.clone(),
            });
        }
    }
    let status = match &r.outcome {
        ConditionOutcome::Certified => Status::Holds,
        ConditionOutcome::Falsified(_) => Status::Falsified,
        ConditionOutcome::Unknown => Status::Unknown,
    };
    let certified = r.count(|s| matches!(s, SetStatus::Holds(_)));
    let unknown = r.count(|s| matches!(s, SetStatus::Unknown));
    ctx.rep.text(format!(
        "{label} on {}: {} ({certified} of {} items certified, {unknown} unknown, {} trials per item)",
        matroid_label(m),
        r.outcome.kind(),
        r.records.len(),
        r.trials_per_item
    ));
    ctx.rep.record(
        "outcome",
        &[
            ("condition", label.to_string()),
            ("matroid", matroid_label(m)),
            ("outcome", r.outcome.kind().to_string()),
            ("items", r.records.len().to_string()),
            ("certified", certified.to_string()),
            ("unknown", unknown.to_string()),
            ("trials_per_item", r.trials_per_item.to_string()),
        ],
    );
    if let ConditionOutcome::Falsified(w) = &r.outcome {
        report_witness(ctx, w);
    }
    status
}

fn report_verdict(ctx: &mut Ctx, label: &str, p: &MPoly, v: &Verdict) -> Status {
    ctx.rep.text(format!("{label}: {}", v.kind()));
    ctx.rep.text(format!("  polynomial: {p}"));
    let mut fields = vec![
        ("label", label.to_string()),
        ("outcome", v.kind().to_string()),
        ("poly", p.to_string()),
    ];
    match v {
        Verdict::NonnegCertified(c) => {
            ctx.rep.text(format!("  certificate: {}", c.kind()));
            fields.push(("cert", c.kind().to_string()));
            ctx.certs.push(LabeledCertificate {
                label: Some(label.to_string()),
                poly: p.clone(),
                certificate: c.clone(),
            });
        }
        Verdict::Falsified(w) => {
            ctx.rep
                .text(format!("  witness: {} value {}", w.point, w.value));
            fields.push(("point", w.point.to_string()));
            fields.push(("value", w.value.to_string()));
        }
        Verdict::Unknown => {}
    }
    ctx.rep.record("verdict", &fields);
    match v {
        Verdict::NonnegCertified(_) => Status::Holds,
        Verdict::Falsified(_) => Status::Falsified,
        Verdict::Unknown => Status::Unknown,
    }
}

fn run_check(ctx: &mut Ctx, g: &Global, what: &CheckCmd) -> Result<Status, String> {
    let (m, _) = load_matroid(g.matroid.as_deref())?;
    let condition = |c: ConditionId| -> (String, ConditionId) { (c.to_string(), c) };
    let (label, id) = match what {
        CheckCmd::Rayleigh {
            e: Some(e),
            f: Some(f),
        } => {
            let p = rayleigh_diff(&m, *e, *f).map_err(|err| err.to_string())?;
            let v = orthant_nonneg(&p, &ctx.cfg);
            let label = format!("rayleigh {} e={e} f={f}", matroid_label(&m));
            return Ok(report_verdict(ctx, &label, &p, &v));
        }
        // Psi_1 - 2 Psi_2 is twice the Rayleigh difference
        CheckCmd::Rayleigh { .. } => (
            "rayleigh".to_string(),
            ConditionId::LRay {
                k: 1,
                lambda: Rational::from_integer(2.into()),
            },
        ),
        CheckCmd::Lray { k, lambda } => condition(ConditionId::LRay {
            k: *k,
            lambda: lambda.clone(),
        }),
        CheckCmd::Rz { level } => condition(ConditionId::Rz(*level)),
        CheckCmd::Blc { level } => condition(ConditionId::Blc(*level)),
        CheckCmd::Sqrtblc { level } => condition(ConditionId::SqrtBlc(*level)),
        CheckCmd::Slc { level } => condition(ConditionId::Slc(*level)),
        CheckCmd::Hpp => return Ok(run_hpp(ctx, &m)),
        CheckCmd::Prop46 {
            a,
            b_set,
            b,
            specialize,
        } => {
            let subs = specialize.clone().unwrap_or_default();
            let r = check_prop46(&m, *a, *b_set, *b, &subs, &ctx.cfg).map_err(|e| e.to_string())?;
            ctx.rep.text(format!("difference: {}", r.full));
            let label = format!("prop46 {} A={a} B={b_set} b={b}", matroid_label(&m));
            return Ok(report_verdict(ctx, &label, &r.specialized, &r.verdict));
        }
    };
    if matches!(id, ConditionId::LRay { k: 0, .. })
        || matches!(
            id,
            ConditionId::Rz(0)
                | ConditionId::Blc(0)
                | ConditionId::SqrtBlc(0)
                | ConditionId::Slc(0)
        )
    {
        return Err("the level must be at least 1".into());
    }
    let r = check_condition(&m, &id, &ctx.cfg);
    Ok(report_condition(ctx, &label, &m, &r))
}

fn run_hpp(ctx: &mut Ctx, m: &Matroid) -> Status {
    let r = hpp_sample_test(m, &ctx.cfg);
    let name = matroid_label(m);
    match &r.verdict {
        HppVerdict::Falsified(w) => {
            let fmt = |v: &BTreeMap<VarId, Rational>| {
                v.iter()
                    .map(|(k, x)| format!("y{k}={x}"))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            ctx.rep.text(format!(
                "hpp on {name}: falsified after {} trials",
                r.trials_run
            ));
            ctx.rep.text(format!("  a = {}", fmt(&w.a)));
            ctx.rep.text(format!("  b = {}", fmt(&w.b)));
            ctx.rep
                .text(format!("  M(a x + b) = {} is not real-rooted", w.poly));
            ctx.rep.record(
                "hpp",
                &[
                    ("matroid", name),
                    ("outcome", "falsified".into()),
                    ("trials_run", r.trials_run.to_string()),
                    ("a", fmt(&w.a)),
                    ("b", fmt(&w.b)),
                    ("poly", w.poly.to_string()),
                ],
            );
            Status::Falsified
        }
        HppVerdict::NoCounterexampleFound => {
            ctx.rep.text(format!(
                "hpp on {name}: no counterexample found in {} trials",
                r.trials_run
            ));
            ctx.rep.record(
                "hpp",
                &[
                    ("matroid", name),
                    ("outcome", "no_counterexample".into()),
                    ("trials_run", r.trials_run.to_string()),
                ],
            );
            Status::Unknown
        }
    }
}

fn run_tables(ctx: &mut Ctx, which: Option<u8>) -> Status {
    let triple = |r: &catalog::TableRow| format!("{},{},{}", r.psi2, r.psi3, r.combo);
    let mut all_explained = true;
    for t in which.map_or(vec![1, 2], |w| vec![w]) {
        ctx.rep
            .text(format!("Table {t}: (psi2, psi3, 2 psi2 - 3 psi3)"));
        for row in catalog::table_rows(t) {
            let explained = row.matches() || row.printed_inconsistent;
            all_explained &= explained;
            let note = if row.matches() {
                "ok".to_string()
            } else if row.printed_inconsistent {
                format!(
                    "differs in {}; printed row is inconsistent",
                    row.mismatched.join(",")
                )
            } else {
                format!("MISMATCH in {}", row.mismatched.join(","))
            };
            ctx.rep.text(format!(
                "  {:<14} printed ({:>10})  computed ({:>10})  {note}",
                row.expected.label(),
                triple(&row.expected),
                triple(&row.computed)
            ));
            ctx.rep.record(
                "row",
                &[
                    ("table", t.to_string()),
                    ("row", row.expected.label()),
                    ("printed", triple(&row.expected)),
                    ("computed", triple(&row.computed)),
                    ("match", row.matches().to_string()),
                    ("printed_inconsistent", row.printed_inconsistent.to_string()),
                ],
            );
        }
    }
    if all_explained {
        Status::Holds
    } else {
        Status::Falsified
    }
}

fn run_catalog(ctx: &mut Ctx, action: &CatalogCmd) -> Result<Status, String> {
    match action {
        CatalogCmd::List => {
            for name in catalog::list() {
                let m = catalog::builtin(name).map_err(|e| e.to_string())?.matroid;
                ctx.rep.text(format!(
                    "{name:<8} elements {:>2}  rank {}  bases {}",
                    m.nelems(),
                    m.rank(),
                    m.bases().len()
                ));
                ctx.rep.record(
                    "entry",
                    &[
                        ("name", name.to_string()),
                        ("elements", m.nelems().to_string()),
                        ("rank", m.rank().to_string()),
                        ("bases", m.bases().len().to_string()),
                    ],
                );
            }
            ctx.rep.text("(W<n>, K<n> and U<r>,<n> accept other sizes)");
        }
        CatalogCmd::Export { name } => {
            let entry = catalog::builtin(name).map_err(|e| e.to_string())?;
            let text = match &entry.provenance {
                Provenance::Graphic(g) => format_graph(g),
                _ => format_matroid(&entry.matroid),
            };
            // the file format is the output in both modes
            print!("{text}");
        }
    }
    Ok(Status::Holds)
}

fn run_sixthroot(ctx: &mut Ctx, g: &Global, path: &Path) -> Result<Status, String> {
    let (m, _) = load_matroid(g.matroid.as_deref())?;
    let a = parse_matrix(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let (rep, unimodular) = sixth_root_verify(&a, &m).map_err(|e| e.to_string())?;
    ctx.rep
        .text(format!("represents {}: {rep}", matroid_label(&m)));
    ctx.rep.text(format!(
        "all nonzero maximal minors are sixth roots of unity: {unimodular}"
    ));
    ctx.rep.record(
        "sixthroot",
        &[
            ("matroid", matroid_label(&m)),
            ("representation", rep.to_string()),
            ("unimodular", unimodular.to_string()),
        ],
    );
    Ok(if rep && unimodular {
        Status::Holds
    } else {
        Status::Falsified
    })
}

fn run_conductance(
    ctx: &mut Ctx,
    spec: &str,
    source: usize,
    sink: usize,
    weights: Option<&WeightAssignment>,
) -> Result<Status, String> {
    let g = load_graph(spec)?;
    let ones;
    let w = match weights {
        Some(w) => w,
        None => {
            ones = WeightAssignment::uniform(0..g.edges().len(), Rational::from_integer(1.into()))
                .map_err(|e| e.to_string())?;
            &ones
        }
    };
    let c = kirchhoff_conductance(&g, source, sink, w).map_err(|e| e.to_string())?;
    ctx.rep
        .text(format!("effective conductance {source} -> {sink}: {c}"));
    ctx.rep.record(
        "conductance",
        &[
            ("source", source.to_string()),
            ("sink", sink.to_string()),
            ("weights", w.to_string()),
            ("value", c.to_string()),
        ],
    );
    Ok(Status::Holds)
}

fn run_mason(
    ctx: &mut Ctx,
    g: &Global,
    ell: Option<usize>,
    truncate: Option<usize>,
) -> Result<Status, String> {
    let (m, _) = load_matroid(g.matroid.as_deref())?;
    let profile = m.independence_profile();
    let check = m.mason_check();
    let joined = profile
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    ctx.rep.text(format!("independent-set counts: {joined}"));
    ctx.rep.text(match check.first_violation {
        None => "log-concave: yes".to_string(),
        Some(j) => format!("log-concave: no (first violation at j={j})"),
    });
    let mut fields = vec![
        ("matroid", matroid_label(&m)),
        ("profile", joined),
        ("log_concave", check.holds.to_string()),
    ];
    if let Some(j) = check.first_violation {
        fields.push(("first_violation", j.to_string()));
    }
    ctx.rep.record("mason", &fields);
    let mut ok = check.holds;
    if let Some(ell) = ell {
        let r = truncate.unwrap_or(m.rank());
        let levels = mason_levels(&m, ell, r).map_err(|e| e.to_string())?;
        ctx.rep.text(format!(
            "T_{r}(M + U_{ell},{ell}), S = the {ell} added points:"
        ));
        for l in &levels {
            let same = l.observed == l.expected;
            ok &= same;
            ctx.rep.text(format!(
                "  L_{}(S,1) = {}  C({ell},{}) I_{} = {}  {}",
                l.j,
                l.observed,
                l.j,
                r as i64 - l.j as i64,
                l.expected,
                if same { "ok" } else { "MISMATCH" }
            ));
            ctx.rep.record(
                "level",
                &[
                    ("ell", ell.to_string()),
                    ("rank", r.to_string()),
                    ("j", l.j.to_string()),
                    ("observed", l.observed.to_string()),
                    ("expected", l.expected.to_string()),
                ],
            );
        }
    }
    Ok(if ok { Status::Holds } else { Status::Falsified })
}

fn run_verify(ctx: &mut Ctx, path: &Path) -> Result<Status, String> {
    let certs = parse_certificates(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut failed = 0;
    for (i, c) in certs.iter().enumerate() {
        let ok = c.verify();
        failed += usize::from(!ok);
        let label = c.label.clone().unwrap_or_else(|| format!("#{}", i + 1));
        ctx.rep.text(format!(
            "{label}: {} ({})",
            if ok { "ok" } else { "FAILED" },
            c.certificate.kind()
        ));
        ctx.rep.record(
            "cert",
            &[
                ("label", label),
                ("kind", c.certificate.kind().into()),
                ("valid", ok.to_string()),
            ],
        );
    }
    ctx.rep
        .text(format!("{} certificates, {failed} failed", certs.len()));
    Ok(if failed == 0 {
        Status::Holds
    } else {
        Status::Falsified
    })
}

fn run(cli: &Cli, ctx: &mut Ctx) -> Result<Status, String> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { what } => run_check(ctx, g, what),
        Command::Tables { which } => Ok(run_tables(ctx, *which)),
        Command::Catalog { action } => run_catalog(ctx, action),
        Command::Sixthroot { matrix } => run_sixthroot(ctx, g, matrix),
        Command::Conductance {
            graph,
            source,
            sink,
            weights,
        } => run_conductance(ctx, graph, *source, *sink, weights.as_ref()),
        Command::Mason { ell, truncate } => run_mason(ctx, g, *ell, *truncate),
        Command::VerifyCert { file } => run_verify(ctx, file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let start = Instant::now();
    let g = &cli.global;
    let cfg = SamplerConfig {
        seed: g.seed,
        trials: g.trials,
        log2_range: g.log2_range,
        ..SamplerConfig::default()
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut ctx = Ctx {
        rep: Report::new(g.format),
        cfg,
        certs: Vec::new(),
    };
    ctx.rep.text(format!(
        "mineq {} (seed {}, trials {})",
        argv.join(" "),
        g.seed,
        g.trials
    ));
    ctx.rep.record(
        "command",
        &[
            ("argv", argv.join(" ")),
            ("seed", g.seed.to_string()),
            ("trials", g.trials.to_string()),
            ("log2_range", g.log2_range.to_string()),
        ],
    );
    let result = run(&cli, &mut ctx);
    let status = match result {
        Ok(s) => s,
        Err(msg) => {
            print!("{}", ctx.rep.finish());
            eprintln!("error: {msg}");
            return ExitCode::from(3);
        }
    };
    if let Some(path) = &g.cert_out {
        let text: String = ctx.certs.iter().map(format_certificate).collect();
        if let Err(e) = fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(3);
        }
        ctx.rep.text(format!(
            "wrote {} certificates to {}",
            ctx.certs.len(),
            path.display()
        ));
    }
    ctx.rep.text(format!("result: {}", status.word()));
    ctx.rep.record(
        "result",
        &[
            ("status", status.word().to_string()),
            ("exit", status.code().to_string()),
        ],
    );
    print!("{}", ctx.rep.finish());
    let elapsed = start.elapsed().as_secs_f64();
    match g.format {
        Format::Text => println!("runtime: {elapsed:.3}s"),
        Format::Records => println!("# runtime {elapsed:.3}s"),
    }
    ExitCode::from(status.code())
}
