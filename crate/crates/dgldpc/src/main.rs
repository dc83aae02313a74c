//! Command-line front end: ensemble reports, growth-rate sweeps with CSV and
//! gnuplot emission, the relative minimum distance, and the oracle suite.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dgldpc::config::{CodeSpec, EnsembleConfig};
use dgldpc::ensemble::Ensemble;
use dgldpc::error::{Error, Result};
use dgldpc::gf2::BinaryLinearCode;
use dgldpc::oracle;
use dgldpc::saddle::{self, AlphaStar, GrowthCurve};

#[derive(Parser)]
#[command(
    name = "dgldpc",
    version,
    about = "Weight-distribution growth rates of D-GLDPC code ensembles"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact enumerator tables for a component code.
    CodeInfo {
        #[command(subcommand)]
        code: CodeCommand,
    },
    /// Print ensemble parameters, weight-2 criterion and classification.
    EnsembleInfo { config: PathBuf },
    /// Sweep the growth rate over a log-spaced grid; emits CSV and a gnuplot
    /// script when --out is given.
    Growth {
        config: PathBuf,
        /// Number of grid points.
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Smallest relative weight (default 1e-5).
        #[arg(long)]
        alpha_min: Option<f64>,
        /// Largest relative weight (default 0.99 * alpha_max).
        #[arg(long)]
        alpha_max: Option<f64>,
        /// CSV output path; a .gp gnuplot script is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate the ensemble relative minimum distance.
    AlphaStar { config: PathBuf },
    /// Re-emit a parsed config in normalized JSON form.
    EmitConfig { config: PathBuf },
    /// Exact-arithmetic verification oracles.
    Oracle {
        #[command(subcommand)]
        oracle: OracleCommand,
    },
}

#[derive(Subcommand, Clone)]
enum CodeCommand {
    /// Length-q repetition code.
    Repetition { q: usize },
    /// Length-q single parity-check code (form: systematic|cyclic|antisystematic).
    Spc {
        q: usize,
        #[arg(default_value = "cyclic")]
        form: String,
    },
    /// The (7,4) Hamming code.
    Hamming74,
    /// Code with explicit generator rows given as bitstrings.
    Explicit { rows: Vec<String> },
}

impl CodeCommand {
    fn to_spec(&self) -> Result<CodeSpec> {
        Ok(match self {
            CodeCommand::Repetition { q } => CodeSpec::Repetition { q: *q },
            CodeCommand::Spc { q, form } => CodeSpec::Spc { q: *q, form: form.parse()? },
            CodeCommand::Hamming74 => CodeSpec::Hamming74,
            CodeCommand::Explicit { rows } => CodeSpec::Explicit { rows: rows.clone() },
        })
    }
}

#[derive(Subcommand, Clone)]
enum OracleCommand {
    /// Finite-l gap of the univariate coefficient limit (exact path).
    Lemma1 {
        /// Normalized weight xi; accepts decimals or fractions like 1/7.
        #[arg(long)]
        xi: String,
        #[arg(long)]
        ell: u64,
        #[command(subcommand)]
        code: CodeCommand,
    },
    /// Finite-l gap of the bivariate coefficient limit (exact path).
    Lemma2 {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        ell: u64,
        #[command(subcommand)]
        code: CodeCommand,
    },
    /// Exact expected weight spectrum at one instance size.
    FiniteN {
        config: PathBuf,
        /// Number of VNs (must give integer node counts).
        #[arg(long)]
        n: u64,
        /// Report a single relative weight instead of the full spectrum.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Brute-force spectrum over all edge permutations, cross-checked
    /// against the generating-function route.
    Brute {
        config: PathBuf,
        #[arg(long)]
        n: u64,
    },
    /// Direct grid maximization of the apportionment objective.
    MaxS {
        config: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 15)]
        resolution: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::CodeInfo { code } => {
            cmd_code_info(code, cli.format)?;
        }
        Command::EnsembleInfo { config } => {
            cmd_ensemble_info(config, cli.format)?;
        }
        Command::Growth { config, points, alpha_min, alpha_max, out } => {
            return cmd_growth(config, *points, *alpha_min, *alpha_max, out.as_deref());
        }
        Command::AlphaStar { config } => {
            cmd_alpha_star(config, cli.format)?;
        }
        Command::EmitConfig { config } => {
            let cfg = EnsembleConfig::from_file(config)?;
            cfg.to_ensemble()?; // validate before echoing
            println!("{}", cfg.to_json_pretty());
        }
        Command::Oracle { oracle } => {
            cmd_oracle(oracle, cli.format)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Renders a weight enumerator as a readable polynomial in z.
fn wef_string(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (u, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = match (u, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "z".to_string(),
            (1, c) => format!("{c} z"),
            (u, 1) => format!("z^{u}"),
            (u, c) => format!("{c} z^{u}"),
        };
        parts.push(term);
    }
    parts.join(" + ")
}

/// Renders an IO enumerator as a polynomial in x (input) and y (output).
fn iowef_string(rows: &[Vec<u64>]) -> String {
    let mut parts = Vec::new();
    for (u, row) in rows.iter().enumerate() {
        for (v, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = String::new();
            if c != 1 || (u == 0 && v == 0) {
                term.push_str(&c.to_string());
            }
            for (sym, deg) in [("x", u), ("y", v)] {
                match deg {
                    0 => {}
                    1 => {
                        if !term.is_empty() {
                            term.push(' ');
                        }
                        term.push_str(sym);
                    }
                    d => {
                        if !term.is_empty() {
                            term.push(' ');
                        }
                        term.push_str(&format!("{sym}^{d}"));
                    }
                }
            }
            parts.push(term);
        }
    }
    parts.join(" + ")
}

fn cmd_code_info(code: &CodeCommand, format: Format) -> Result<()> {
    let spec = code.to_spec()?;
    let code: BinaryLinearCode = spec.build()?;
    let wef = code.weight_enumerator();
    let io = code.io_weight_enumerator();
    match format {
        Format::Table => {
            println!("code:         {}", code.label());
            println!("length q:     {}", code.length());
            println!("dimension k:  {}", code.dimension());
            println!("min distance: {}", wef.min_distance());
            println!("generator rows:");
            for row in code.row_strings() {
                println!("  {row}");
            }
            println!("A(z)   = {}", wef_string(wef.coeffs()));
            println!("B(x,y) = {}", iowef_string(io.rows()));
            println!("B(u,v) table (rows u = 0..k, columns v = 0..q):");
            for row in io.rows() {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>6}")).collect();
                println!("  {}", cells.join(" "));
            }
        }
        Format::Csv => {
            println!("u,v,count");
            for (u, row) in io.rows().iter().enumerate() {
                for (v, &c) in row.iter().enumerate() {
                    if c != 0 {
                        println!("{u},{v},{c}");
                    }
                }
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "label": code.label(),
                "length": code.length(),
                "dimension": code.dimension(),
                "min_distance": wef.min_distance(),
                "generator_rows": code.row_strings(),
                "wef": wef.coeffs(),
                "iowef": io.rows(),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(())
}

/// Compares a computed value against an optional published reference.
fn reference_note(computed: f64, reference: Option<f64>, tol: f64) -> String {
    match reference {
        None => String::new(),
        Some(r) if (computed - r).abs() <= tol * 1.0f64.max(r.abs()) => {
            format!("  (reference {r}, agrees)")
        }
        Some(r) => format!("  (reference {r}, DISCREPANCY)"),
    }
}

fn load(config: &Path) -> Result<(EnsembleConfig, Ensemble)> {
    let cfg = EnsembleConfig::from_file(config)?;
    let ens = cfg.to_ensemble()?;
    Ok((cfg, ens))
}

fn cmd_ensemble_info(config: &Path, format: Format) -> Result<()> {
    let (cfg, ens) = load(config)?;
    let reference = cfg.reference.clone().unwrap_or_default();
    match format {
        Format::Table => {
            if let Some(name) = &cfg.name {
                println!("ensemble:     {name}");
            }
            println!("VN types:");
            for (t, d) in ens.vn_types().iter().zip(ens.delta()) {
                println!(
                    "  {:24} lambda = {:.6}  delta = {:.6}  (q={}, k={}, d_min={})",
                    t.code().label(),
                    t.lambda(),
                    d,
                    t.code().length(),
                    t.code().dimension(),
                    t.min_distance(),
                );
            }
            println!("CN types:");
            for (t, g) in ens.cn_types().iter().zip(ens.gamma()) {
                println!(
                    "  {:24} rho    = {:.6}  gamma = {:.6}  (s={}, h={}, d_min={})",
                    t.code().label(),
                    t.rho(),
                    g,
                    t.code().length(),
                    t.code().dimension(),
                    t.min_distance(),
                );
            }
            println!("int lambda:   {:.9}", ens.int_lambda());
            println!("int rho:      {:.9}", ens.int_rho());
            println!("bits per VN:  {:.9}", ens.bits_per_vn());
            println!(
                "design rate:  {:.6}{}",
                ens.rate(),
                reference_note(ens.rate(), reference.rate, 5e-3)
            );
            match ens.c_param() {
                Some(c) => println!("C:            {c:.6}"),
                None => println!("C:            absent (no distance-2 CN types)"),
            }
            match ens.v_param() {
                Some(v) => println!("V:            {v:.6}"),
                None => println!("V:            absent (no distance-2 VN types)"),
            }
            match ens.cv_product() {
                Some(cv) => println!(
                    "C*V:          {cv:.6}{}",
                    reference_note(cv, reference.cv, 5e-3)
                ),
                None => println!("C*V:          absent"),
            }
            println!("class:        {}", ens.classification());
        }
        Format::Csv => {
            println!("key,value");
            println!("rate,{}", ens.rate());
            println!("int_lambda,{}", ens.int_lambda());
            println!("int_rho,{}", ens.int_rho());
            println!("bits_per_vn,{}", ens.bits_per_vn());
            println!("c,{}", ens.c_param().map_or(String::new(), |v| v.to_string()));
            println!("v,{}", ens.v_param().map_or(String::new(), |v| v.to_string()));
            println!("cv,{}", ens.cv_product().map_or(String::new(), |v| v.to_string()));
            println!("class,{}", ens.classification());
        }
        Format::Json => {
            let value = serde_json::json!({
                "name": cfg.name,
                "rate": ens.rate(),
                "int_lambda": ens.int_lambda(),
                "int_rho": ens.int_rho(),
                "bits_per_vn": ens.bits_per_vn(),
                "c": ens.c_param(),
                "v": ens.v_param(),
                "cv": ens.cv_product(),
                "class": ens.classification().to_string(),
                "reference": reference,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
    }
    Ok(())
}

fn curve_csv(curve: &GrowthCurve) -> String {
    let mut out = String::from("alpha,G,x0,y0,z0,beta,residual_max,converged\n");
    for p in &curve.points {
        match &p.result {
            Ok(sp) => out.push_str(&format!(
                "{},{},{},{},{},{},{},true\n",
                sp.alpha, sp.g_value, sp.x0, sp.y0, sp.z0, sp.beta, sp.residual_max()
            )),
            Err(_) => out.push_str(&format!("{},nan,nan,nan,nan,nan,nan,false\n", p.alpha)),
        }
    }
    out
}

fn gnuplot_script(csv_path: &Path, title: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 'alpha'\n\
         set ylabel 'Growth rate G(alpha)'\n\
         set grid\n\
         set key left top\n\
         plot '{}' skip 1 using 1:2 with lines lw 2 title '{}', \\\n\
         \x20    0 with lines dt 2 lc 'black' notitle\n",
        csv_path.display(),
        title
    )
}

fn cmd_growth(
    config: &Path,
    points: usize,
    alpha_min: Option<f64>,
    alpha_max: Option<f64>,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (cfg, ens) = load(config)?;
    let lo = alpha_min.unwrap_or(1e-5);
    let hi = alpha_max.unwrap_or(0.99 * ens.alpha_max());
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Validation(format!("bad sweep range [{lo}, {hi}]")));
    }
    let grid = saddle::log_spaced_grid(lo, hi, points);
    let curve = saddle::sweep(&ens, &grid)?;
    let csv = curve_csv(&curve);
    if let Some(path) = out {
        std::fs::write(path, &csv)?;
        let gp = path.with_extension("gp");
        let title = cfg.name.clone().unwrap_or_else(|| "ensemble".into());
        std::fs::write(&gp, gnuplot_script(path, &title))?;
        eprintln!("wrote {} and {}", path.display(), gp.display());
    } else {
        print!("{csv}");
    }
    eprintln!(
        "evaluated {} points in {:.2} s ({} converged)",
        curve.points.len(),
        curve.elapsed.as_secs_f64(),
        curve.converged()
    );
    if curve.converged() == 0 {
        return Err(Error::Solver(dgldpc::error::SolverFailure {
            alpha: f64::NAN,
            best_residual: f64::NAN,
            residuals: [f64::NAN; 4],
            detail: "no sweep point converged".into(),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_alpha_star(config: &Path, format: Format) -> Result<()> {
    let (cfg, ens) = load(config)?;
    let reference = cfg.reference.clone().unwrap_or_default();
    let star = saddle::alpha_star(&ens)?;
    let (value, how) = match star {
        AlphaStar::Zero => (0.0, "weight-2 criterion (C*V >= 1)"),
        AlphaStar::Crossing(a) => (a, "sign change of G, refined by bisection"),
    };
    match format {
        Format::Table => {
            if let Some(name) = &cfg.name {
                println!("ensemble:   {name}");
            }
            match ens.cv_product() {
                Some(cv) => println!("C*V:        {cv:.6}"),
                None => println!("C*V:        absent (one side has no distance-2 types)"),
            }
            println!("class:      {}", ens.classification());
            println!(
                "alpha*:     {value:.9e}{}",
                reference_note(value, reference.alpha_star, 5e-4)
            );
            println!("method:     {how}");
        }
        Format::Csv => {
            println!("key,value");
            println!("alpha_star,{value}");
            println!("class,{}", ens.classification());
        }
        Format::Json => {
            let out = serde_json::json!({
                "name": cfg.name,
                "alpha_star": value,
                "class": ens.classification().to_string(),
                "method": how,
                "reference": reference.alpha_star,
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
    }
    Ok(())
}

/// Parses "0.25" or "1/7" into a double.
fn parse_fraction(s: &str) -> Result<f64> {
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad fraction {s:?}")))?;
        let d: f64 = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad fraction {s:?}")))?;
        if d == 0.0 {
            return Err(Error::InvalidParameter("zero denominator".into()));
        }
        Ok(n / d)
    } else {
        s.trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad number {s:?}")))
    }
}

fn cmd_oracle(cmd: &OracleCommand, format: Format) -> Result<()> {
    match cmd {
        OracleCommand::Lemma1 { xi, ell, code } => {
            let xi = parse_fraction(xi)?;
            let code = code.to_spec()?.build()?;
            let gap = oracle::lemma1_gap(&code.weight_enumerator(), xi, *ell)?;
            println!("lemma1 gap at l={ell}, xi={xi}: {gap:+.6e}");
        }
        OracleCommand::Lemma2 { xi, theta, ell, code } => {
            let xi = parse_fraction(xi)?;
            let theta = parse_fraction(theta)?;
            let code = code.to_spec()?.build()?;
            let gap = oracle::lemma2_gap(&code.io_weight_enumerator(), xi, theta, *ell)?;
            println!("lemma2 gap at l={ell}, xi={xi}, theta={theta}: {gap:+.6e}");
        }
        OracleCommand::FiniteN { config, n, alpha } => {
            let (_, ens) = load(config)?;
            let inst = ens.instantiate(*n)?;
            let spec = oracle::exact_expected_spectrum(&inst)?;
            match alpha {
                Some(a) => {
                    let w = oracle::weight_for_alpha(&inst, *a)?;
                    println!(
                        "n={n} w={w}: (1/n) ln E[N_w] = {:.9}",
                        spec.log_normalized(w)
                    );
                }
                None => {
                    println!("w,log_normalized");
                    for w in 0..spec.values().len() {
                        println!("{w},{}", spec.log_normalized(w));
                    }
                }
            }
        }
        OracleCommand::Brute { config, n } => {
            let (_, ens) = load(config)?;
            let inst = ens.instantiate(*n)?;
            let brute = oracle::brute_force_spectrum(&inst)?;
            let exact = oracle::exact_expected_spectrum(&inst)?;
            let agree = brute.values() == exact.values();
            if format == Format::Csv {
                println!("w,expected");
                for (w, v) in brute.values().iter().enumerate() {
                    println!("{w},{v}");
                }
            } else {
                println!("w  E[N_w] (exact rational)");
                for (w, v) in brute.values().iter().enumerate() {
                    println!("{w:>3}  {v}");
                }
            }
            println!("matches generating-function spectrum: {agree}");
            if !agree {
                return Err(Error::Validation(
                    "brute-force and generating-function spectra disagree".into(),
                ));
            }
        }
        OracleCommand::MaxS { config, alpha, resolution } => {
            let (_, ens) = load(config)?;
            let (s, app) = oracle::maximize_s(&ens, *alpha, *resolution)?;
            let g = saddle::solve_at(&ens, *alpha)?.g_value;
            println!("direct maximization S = {s:.9}");
            println!("saddle solver      G = {g:.9}");
            println!("difference           = {:+.3e}", s - g);
            println!("type apportionment:");
            for (i, (a, b)) in app.alpha.iter().zip(&app.beta).enumerate() {
                let coord = match (app.x0[i], app.y0[i]) {
                    (Some(x), Some(y)) => format!("x0={x:.6}, y0={y:.6}"),
                    _ => "ray support (x/y split not identifiable)".into(),
                };
                println!("  VN type {i}: alpha_t={a:.6}, beta_t={b:.6}, {coord}");
            }
            println!("  common z0 = {:.6}", app.z0);
            for (i, e) in app.eps.iter().enumerate() {
                println!("  CN type {i}: eps_t = {e:.6}");
            }
        }
    }
    Ok(())
}
