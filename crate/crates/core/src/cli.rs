//! Batch front end: `trisect <verb> [flags]`, JSON by default, CSV on request.
//!
//! Exit codes: 0 success, 1 a check was falsified, 2 bad arguments, 3 cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algdeg::{
    angle_degree, cn_degree_check, dn_angle, identity_suite, tower_checks, AngleNumber, CnReport, IdentityReport,
    TowerReport,
};
use crate::arith::{Elem, Field, Rational};
use crate::ball::{count_ball, count_ball_interval, qbox, HeightBall, QBoxReport, QBoxSpec, Window};
use crate::coprime::{lehmer_report, CountBox, CountReport, Side};
use crate::error::Error;
use crate::nsect::nonsectability_cert;
use crate::suite::verify_suite;
use crate::trisect::{decide_trisection, density_experiment, nonconstructible_witness, Certificate};

/// Overrides the default enumeration cap.
pub const CAP_ENV: &str = "TRISECT_CAP";
pub const DEFAULT_CAP: u128 = 1_000_000_000;
pub const DEFAULT_DEGREE_CAP: u64 = 4096;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_BAD_ARGS: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "trisect", version, about = "Trisection numbers, counting kernels and certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker shards for the enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    pub shards: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Enumeration cap; defaults to $TRISECT_CAP, then 10^9.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// Q
    Q,
    /// Q(sqrt d)
    Quad,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    #[arg(long, value_enum, default_value_t = FieldKind::Q)]
    pub field: FieldKind,
    /// Squarefree radicand for `--field quad`.
    #[arg(long)]
    pub d: Option<i64>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<Field, Error> {
        match (self.field, self.d) {
            (FieldKind::Q, None) => Ok(Field::Rational),
            (FieldKind::Q, Some(_)) => Err(Error::BadParameters("--d needs --field quad".into())),
            (FieldKind::Quad, Some(d)) => Field::quadratic(d),
            (FieldKind::Quad, None) => Err(Error::BadParameters("--field quad needs --d".into())),
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Is `a` a trisection number over the field?
    Decide {
        #[command(flatten)]
        field: FieldArgs,
        /// `p/q`, or `(a1+a2*sqrt(d))/b`
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Density of trisection numbers in the height ball, per radius.
    Density {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "R", value_delimiter = ',', required = true)]
        radii: Vec<i64>,
    },
    /// Coprime lattice points in a box.
    Lehmer {
        /// Rational sides, e.g. `4,4` or `7/2,10,3`
        #[arg(long, value_delimiter = ',', required = true)]
        sides: Vec<String>,
    },
    /// Height-ball counts and the inner box Q(R).
    Boxcount {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "R")]
        radius: i64,
        /// Sample size when Q(R) is too large to check exhaustively.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Certificate that arccos(c/d) cannot be p-sected.
    Nsect {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long)]
        d: i64,
    },
    /// Degrees of 2cos(pi/2^n) and 2cos(pi/3 ± pi/2^n), with the doubling identities.
    Algdeg {
        #[arg(long)]
        n: u32,
    },
    /// Odd-degree trisection number f(q^(1/m)).
    Witness {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        q: u64,
    },
    /// Run the invariant suite.
    Verify,
}

/// Parsed, validated inputs for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub field: Option<Field>,
    pub radii: Vec<i64>,
    pub cap: u128,
    pub degree_cap: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub shards: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: Cli, env_cap: Option<String>) -> Result<Self, Error> {
        let c = cli.common;
        let cap = match (c.cap, env_cap) {
            (Some(v), _) => v,
            (None, Some(s)) => s.trim().parse().map_err(|_| Error::BadParameters(format!("{CAP_ENV}={s}")))?,
            (None, None) => DEFAULT_CAP,
        };
        if cap == 0 || c.degree_cap == 0 {
            return Err(Error::BadParameters("caps must be positive".into()));
        }
        if c.shards == 0 {
            return Err(Error::BadParameters("shard count must be at least 1".into()));
        }
        let field = match &cli.command {
            Command::Decide { field, .. } | Command::Density { field, .. } | Command::Boxcount { field, .. } => {
                Some(field.resolve()?)
            }
            _ => None,
        };
        let radii = match &cli.command {
            Command::Density { radii, .. } => radii.clone(),
            Command::Boxcount { radius, .. } => vec![*radius],
            _ => vec![],
        };
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadParameters("radii must be strictly increasing".into()));
        }
        if radii.iter().any(|&r| r < 1) {
            return Err(Error::BadParameters("radii must be positive".into()));
        }
        Ok(RunConfig {
            command: cli.command,
            field,
            radii,
            cap,
            degree_cap: c.degree_cap,
            out: c.out,
            format: c.format,
            shards: c.shards,
            seed: c.seed,
        })
    }
}

/// Rendered output plus whether any reported check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub falsified: bool,
}

#[derive(Serialize)]
struct BoxcountReport {
    field: String,
    #[serde(rename = "R")]
    radius: i64,
    ball: u128,
    ball_in_interval: u128,
    qbox: QBoxReport,
}

#[derive(Serialize)]
struct AlgdegReport {
    n: u32,
    tower: TowerReport,
    a_n: AngleNumber,
    c_n: CnReport,
    d_n: AngleNumber,
    identities: IdentityReport,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r);
        s.push('\n');
    }
    s
}

fn bool_csv(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn cert_output(cert: &Certificate, format: Format) -> Output {
    let ok = cert.verify();
    let text = match format {
        Format::Json => json(cert),
        Format::Csv => {
            let row = match cert {
                Certificate::NonconstructibleWitness { m, q, degree, approx, minpoly, .. } => {
                    format!("{m},{q},{degree},{approx},{minpoly}")
                }
                other => serde_json::to_string(other).expect("serializable"),
            };
            csv("m,q,degree,approx,minpoly", [row])
        }
    };
    Output { text, falsified: !ok }
}

pub fn run(cfg: &RunConfig) -> Result<Output, Error> {
    let fmt = cfg.format;
    match &cfg.command {
        Command::Decide { a, .. } => {
            let field = cfg.field.expect("resolved");
            let a: Elem = a.parse()?;
            let a = field.embed(&a)?;
            let v = decide_trisection(field, &a)?;
            let falsified = v.certificate.as_ref().is_some_and(|c| !c.verify());
            let text = match fmt {
                Format::Json => json(&v),
                Format::Csv => csv(
                    "a,field,member,witness,method",
                    [format!(
                        "{},{},{},{},{}",
                        v.a,
                        v.field,
                        bool_csv(v.member),
                        v.witness.clone().unwrap_or_default(),
                        serde_json::to_value(v.method).expect("serializable").as_str().unwrap_or_default()
                    )],
                ),
            };
            Ok(Output { text, falsified })
        }
        Command::Density { .. } => {
            let field = cfg.field.expect("resolved");
            let rep = density_experiment(field, &cfg.radii, cfg.shards, cfg.cap)?;
            let bad = rep.points.windows(2).any(|w| w[1].num < w[0].num || w[1].den < w[0].den)
                || rep.points.iter().any(|p| !(0.0..=1.0).contains(&p.delta));
            let text = match fmt {
                Format::Json => json(&rep),
                Format::Csv => csv(crate::trisect::DensityReport::CSV_HEADER, rep.csv_rows()),
            };
            Ok(Output { text, falsified: bad })
        }
        Command::Lehmer { sides } => {
            let sides =
                sides.iter().map(|s| s.parse::<Rational>().map(Side::rational)).collect::<Result<Vec<_>, _>>()?;
            let b = CountBox::new(sides)?;
            let rep: CountReport = lehmer_report(&b);
            let text = match fmt {
                Format::Json => json(&rep),
                Format::Csv => csv(CountReport::CSV_HEADER, [rep.csv_row()]),
            };
            // f_k bounds the error only up to an unspecified constant, so nothing to falsify here
            Ok(Output { text, falsified: false })
        }
        Command::Boxcount { samples, .. } => {
            let field = cfg.field.expect("resolved");
            let r = cfg.radii[0];
            let ball = HeightBall::with_int(field, r);
            let total = count_ball(&ball);
            let in_interval = count_ball_interval(field, r, &Window::symmetric(2), cfg.shards);
            let spec = QBoxSpec::new(field, Rational::from_int(r))?;
            let rep = BoxcountReport {
                field: field.name(),
                radius: r,
                ball: total,
                ball_in_interval: in_interval,
                qbox: qbox(&spec, cfg.cap, *samples, cfg.seed),
            };
            let text = match fmt {
                Format::Json => json(&rep),
                Format::Csv => csv(
                    "field,R,ball,ball_in_interval,qbox_count,qbox_main_term,qbox_ratio,checked,exhaustive,violations",
                    [format!(
                        "{},{},{},{},{},{},{},{},{},{}",
                        rep.field,
                        r,
                        total,
                        in_interval,
                        rep.qbox.count,
                        rep.qbox.main_term,
                        rep.qbox.ratio,
                        rep.qbox.checked,
                        bool_csv(rep.qbox.exhaustive),
                        rep.qbox.violations
                    )],
                ),
            };
            Ok(Output { text, falsified: rep.qbox.violations > 0 })
        }
        Command::Nsect { p, c, d } => {
            let cert = nonsectability_cert(*p, *c, *d)?;
            let ok = cert.eisenstein && cert.verify();
            let text = match fmt {
                Format::Json => json(&cert),
                Format::Csv => csv(
                    "p,c,d,cos_alpha,eisenstein,polynomial",
                    [format!("{},{},{},{},{},{}", p, c, d, cert.cos_alpha, bool_csv(cert.eisenstein), cert.polynomial)],
                ),
            };
            Ok(Output { text, falsified: !ok })
        }
        Command::Algdeg { n } => {
            let n = *n;
            if n == 0 {
                return Err(Error::BadParameters("n must be at least 1".into()));
            }
            let tower = tower_checks(n, cfg.degree_cap)?;
            let c_n = cn_degree_check(n, cfg.degree_cap)?;
            let (j, m) = dn_angle(n);
            let rep = AlgdegReport {
                n,
                a_n: angle_degree(1, 2u64 << n)?,
                d_n: angle_degree(j, m)?,
                identities: identity_suite(n),
                tower,
                c_n,
            };
            let ok = rep.tower.all_ok()
                && rep.c_n.ok
                && rep.a_n.degree == 1 << (n - 1)
                && rep.a_n.root_verified
                && rep.d_n.degree == 1 << n
                && rep.d_n.root_verified
                && rep.identities.all_ok();
            let text = match fmt {
                Format::Json => json(&rep),
                Format::Csv => csv(
                    "identity,n,method,residual_bound,ok",
                    rep.identities.checks.iter().map(|c| {
                        format!("\"{}\",{},{},{},{}", c.identity, c.n, c.method, c.residual_bound, bool_csv(c.ok))
                    }),
                ),
            };
            Ok(Output { text, falsified: !ok })
        }
        Command::Witness { m, q } => Ok(cert_output(&nonconstructible_witness(*m, *q)?, fmt)),
        Command::Verify => {
            let rep = verify_suite(cfg.seed);
            let text = match fmt {
                Format::Json => json(&rep),
                Format::Csv => csv(
                    "check,ok,detail",
                    rep.checks
                        .iter()
                        .map(|c| format!("\"{}\",{},\"{}\"", c.name, bool_csv(c.ok), c.detail.replace('"', "'"))),
                ),
            };
            Ok(Output { text, falsified: !rep.all_ok() })
        }
    }
}

/// Write `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::GcdBoundViolated { .. } => EXIT_FALSIFIED,
        _ => EXIT_BAD_ARGS,
    }
}

/// Parse `args`, run, emit output; returns the process exit code.
pub fn main_with<I, T>(args: I, env_cap: Option<String>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_ARGS } else { EXIT_OK };
        }
    };
    let cfg = match RunConfig::from_cli(cli, env_cap) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BAD_ARGS;
        }
    };
    let out = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.out {
        Some(p) => write_atomic(p, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_BAD_ARGS;
    }
    if out.falsified {
        eprintln!("falsified: see output");
        EXIT_FALSIFIED
    } else {
        EXIT_OK
    }
}

pub fn main_from_env() -> i32 {
    main_with(std::env::args_os(), std::env::var(CAP_ENV).ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, Error> {
        let cli = Cli::try_parse_from(std::iter::once("trisect").chain(args.iter().copied())).expect("parses");
        RunConfig::from_cli(cli, None)
    }

    fn run_args(args: &[&str]) -> Output {
        run(&cfg(args).unwrap()).unwrap()
    }

    #[test]
    fn decide_three_halves() {
        let out = run_args(&["decide", "--field", "q", "--a", "3/2"]);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["member"], false);
        assert_eq!(v["certificate"]["kind"], "eisenstein-3rs");
        assert!(!out.falsified);
        let out = run_args(&["decide", "--a", "-2", "--format", "csv"]);
        assert!(out.text.lines().nth(1).unwrap().starts_with("-2,Q,true,"));
    }

    #[test]
    fn lehmer_four_by_four() {
        let out = run_args(&["lehmer", "--sides", "4,4"]);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["count"], 11);
        let csv = run_args(&["lehmer", "--sides", "4,4", "--format", "csv"]).text;
        assert_eq!(csv.lines().nth(1).unwrap().split(',').count(), 7);
    }

    #[test]
    fn config_validation() {
        assert!(matches!(cfg(&["density", "--R", "10,5"]), Err(Error::BadParameters(_))));
        assert!(matches!(cfg(&["density", "--R", "10", "--shards", "0"]), Err(Error::BadParameters(_))));
        assert!(matches!(cfg(&["density", "--field", "quad", "--R", "10"]), Err(Error::BadParameters(_))));
        assert!(cfg(&["density", "--field", "quad", "--d", "4", "--R", "10"]).is_err());
        assert!(matches!(cfg(&["verify", "--cap", "0"]), Err(Error::BadParameters(_))));
        let cli = Cli::try_parse_from(["trisect", "verify"]).unwrap();
        assert_eq!(RunConfig::from_cli(cli, Some("77".into())).unwrap().cap, 77);
        let cli = Cli::try_parse_from(["trisect", "verify", "--cap", "5"]).unwrap();
        assert_eq!(RunConfig::from_cli(cli, Some("77".into())).unwrap().cap, 5);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with(["trisect", "frobnicate"], None), EXIT_BAD_ARGS);
        assert_eq!(main_with(["trisect", "decide", "--a", "7/2"], None), EXIT_BAD_ARGS);
        assert_eq!(main_with(["trisect", "witness", "--m", "3", "--q", "2"], None), EXIT_BAD_ARGS);
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d.json");
        let out_s = out.to_str().unwrap();
        assert_eq!(main_with(["trisect", "density", "--R", "1000", "--out", out_s], Some("10".into())), EXIT_CAP);
        assert!(!out.exists());
        assert_eq!(main_with(["trisect", "density", "--R", "10,20", "--out", out_s], None), EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["points"][0]["num"], 5);
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn shard_count_does_not_change_output() {
        let a = run_args(&["density", "--field", "quad", "--d", "3", "--R", "4,6,9", "--shards", "1"]);
        for s in ["4", "8"] {
            let b = run_args(&["density", "--field", "quad", "--d", "3", "--R", "4,6,9", "--shards", s]);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn other_verbs() {
        let out = run_args(&["nsect", "--p", "3", "--c", "3", "--d", "4"]);
        assert!(!out.falsified);
        let out = run_args(&["witness", "--m", "5", "--q", "2"]);
        assert!(!out.falsified && out.text.contains("\"degree\": 5"));
        let out = run_args(&["algdeg", "--n", "4"]);
        assert!(!out.falsified, "{}", out.text);
        let out = run_args(&["boxcount", "--R", "100", "--seed", "3"]);
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["qbox"]["violations"], 0);
        assert!(!out.falsified);
    }
}
