use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use pnc::diffs::{CharDifference, DiffSets};
use pnc::gaussint::{is_rational_prime, parse_complex};
use pnc::mapping::{cosets, mapping_from_cluster, vector_dual_mapping, NcMapping};
use pnc::metrics::{dmin_at_gain, l_min, zero_lmin_gains, ChannelGain};
use pnc::sim::{compare_sweep, estimate_ser, ChannelConfig};
use pnc::verify::{verify, verify_passes, Suite};
use pnc::voronoi::{write_surface_csv, SurfaceMetric, VoronoiDiagram, Window};
use pnc::{GInt, PncError, ResidueField};

/// Optimal complex linear physical-layer network coding over Z[i]/q.
#[derive(Parser, Debug)]
#[command(name = "pnc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the residue field Z[i]/q as JSON.
    Field {
        #[arg(long, value_parser = gint)]
        q: GInt,
    },
    /// Print the coset partition of the mapping (alpha, beta) as JSON.
    Cosets {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long, value_parser = gint, allow_hyphen_values = true)]
        alpha: GInt,
        #[arg(long, value_parser = gint, allow_hyphen_values = true)]
        beta: GInt,
    },
    /// Dual mapping of the vector formulation over Z_q x Z_q for a rational
    /// prime q, or the complex mapping for a Gaussian prime q.
    DualMap {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long = "dA", value_parser = gint, allow_hyphen_values = true)]
        da: GInt,
        #[arg(long = "dB", value_parser = gint, allow_hyphen_values = true, default_value = "1")]
        db: GInt,
    },
    /// Print the characteristic differences as JSON lines.
    Chardiffs {
        #[arg(long, value_parser = gint)]
        q: GInt,
    },
    /// Print the zero-l_min gains with |eta| <= radius as JSON lines.
    Gains {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
    },
    /// Print l_min at eta and its minimizing characteristic difference.
    Lmin {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long, value_parser = complex, allow_hyphen_values = true)]
        eta: Complex64,
    },
    /// Sample l_min or d_min over a square window as CSV.
    Voronoi {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long, default_value_t = 2.0)]
        radius: f64,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Metric::Dmin)]
        metric: Metric,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<String>,
    },
    /// Print each Voronoi cell with its optimal mapping and neighbours as JSON.
    Adjacency {
        #[arg(long, value_parser = gint)]
        q: GInt,
    },
    /// Estimate the relay SER of one mapping as JSON.
    Simulate {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long = "hA", value_parser = complex, allow_hyphen_values = true)]
        h_a: Complex64,
        #[arg(long = "hB", value_parser = complex, allow_hyphen_values = true, default_value = "1")]
        h_b: Complex64,
        #[arg(long = "snr-db", allow_hyphen_values = true)]
        snr_db: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `alpha,beta`, e.g. `i,-i`.
        #[arg(long, value_parser = mapping_arg, allow_hyphen_values = true)]
        mapping: (GInt, GInt),
    },
    /// Simulate every canonical mapping over an SNR sweep as CSV.
    Compare {
        #[arg(long, value_parser = gint)]
        q: GInt,
        #[arg(long = "hA", value_parser = complex, allow_hyphen_values = true)]
        h_a: Complex64,
        #[arg(long = "hB", value_parser = complex, allow_hyphen_values = true, default_value = "1")]
        h_b: Complex64,
        /// `start:step:stop` in dB.
        #[arg(long = "snr-sweep", value_parser = sweep, allow_hyphen_values = true)]
        snr_sweep: Sweep,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run oracle suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_parser = gint)]
        q: GInt,
        /// field-axioms, cosets, theorem1, theorem2, theorem3, theorem4,
        /// qcriteria, symmetry, convex, lemma-bounds or all.
        #[arg(long, value_parser = suite, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Lmin,
    Dmin,
}

fn gint(s: &str) -> Result<GInt, String> {
    s.parse().map_err(|e: PncError| e.to_string())
}

fn complex(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

fn suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: PncError| e.to_string())
}

fn mapping_arg(s: &str) -> Result<(GInt, GInt), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected alpha,beta, got {s:?}"))?;
    Ok((gint(a)?, gint(b)?))
}

#[derive(Clone, Debug)]
struct Sweep(Vec<f64>);

fn sweep(s: &str) -> Result<Sweep, String> {
    let bad = || format!("expected start:step:stop, got {s:?}");
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [start, step, stop] = parts[..] else {
        return Err(bad());
    };
    if ![start, step, stop].iter().all(|v| v.is_finite()) || step <= 0.0 || stop < start {
        return Err(bad());
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok(Sweep((0..=n).map(|k| start + step * k as f64).collect()))
}

fn pair(cd: &CharDifference) -> Value {
    json!([[cd.da.re, cd.da.im], [cd.db.re, cd.db.im]])
}

fn gain(g: &ChannelGain) -> Value {
    match g.finite() {
        Some(v) => json!([v.re + 0.0, v.im + 0.0]),
        None => Value::Null,
    }
}

fn output(path: &Option<String>) -> Result<Box<dyn Write>, PncError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| PncError::InvalidArgument(format!("{p}: {e}")))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cmd: Command) -> Result<bool, PncError> {
    let mut out = BufWriter::new(io::stdout().lock());
    match cmd {
        Command::Field { q } => {
            let f = ResidueField::new(q)?;
            let v = json!({"q": q, "norm": q.norm(), "elements": f.elements(), "mu": f.mu()});
            writeln!(out, "{v}")?;
        }
        Command::Cosets { q, alpha, beta } => {
            let f = ResidueField::new(q)?;
            let part = cosets(NcMapping::new(alpha, beta, &f)?, &f);
            writeln!(out, "{}", serde_json::to_string(&part).expect("serializable"))?;
        }
        Command::DualMap { q, da, db } => {
            if q.im == 0 && is_rational_prime(q.re) {
                match vector_dual_mapping(q.re, da, db)? {
                    Some(d) => {
                        let v = json!({"q": d.q, "alpha": [d.alpha_re, d.alpha_im], "matrix": d.matrix()});
                        writeln!(out, "{v}")?;
                    }
                    None => writeln!(out, "NO_DUAL_MAPPING")?,
                }
            } else {
                let f = ResidueField::new(q)?;
                let m = mapping_from_cluster(da, db, &f)?;
                writeln!(out, "{}", json!({"q": q, "alpha": m.alpha, "beta": m.beta}))?;
            }
        }
        Command::Chardiffs { q } => {
            let sets = DiffSets::new(&ResidueField::new(q)?);
            for cd in sets.characteristic() {
                let v = json!({"char": pair(cd), "eta": gain(&cd.generator())});
                writeln!(out, "{v}")?;
            }
        }
        Command::Gains { q, radius } => {
            let sets = DiffSets::new(&ResidueField::new(q)?);
            for z in zero_lmin_gains(&sets, radius)? {
                let v = json!({"eta": gain(&z.gain), "char": pair(&z.cd), "dmin_opt": dmin_at_gain(&z.cd)});
                writeln!(out, "{v}")?;
            }
        }
        Command::Lmin { q, eta } => {
            let sets = DiffSets::new(&ResidueField::new(q)?);
            let (value, cd) = l_min(eta, &sets);
            writeln!(
                out,
                "{}",
                json!({"eta": [eta.re, eta.im], "lmin": value, "argmin": pair(&cd)})
            )?;
        }
        Command::Voronoi {
            q,
            radius,
            resolution,
            metric,
            out: path,
        } => {
            if radius.is_nan() || radius <= 0.0 {
                return Err(PncError::InvalidArgument(format!(
                    "radius must be positive, got {radius}"
                )));
            }
            let diagram = VoronoiDiagram::from_field(&ResidueField::new(q)?);
            let metric = match metric {
                Metric::Lmin => SurfaceMetric::Lmin,
                Metric::Dmin => SurfaceMetric::Dmin,
            };
            let points = diagram.sample_surface(Window::square(radius), resolution, metric)?;
            write_surface_csv(&points, output(&path)?)?;
        }
        Command::Adjacency { q } => {
            let diagram = VoronoiDiagram::from_field(&ResidueField::new(q)?);
            let cells: Vec<Value> = (0..diagram.generators().len())
                .map(|i| {
                    let c = diagram.cell(i);
                    json!({
                        "generator": pair(&c.generator),
                        "mapping": c.optimal_mapping,
                        "adjacent": c.adjacent.iter().map(pair).collect::<Vec<_>>(),
                    })
                })
                .collect();
            writeln!(out, "{}", Value::Array(cells))?;
        }
        Command::Simulate {
            q,
            h_a,
            h_b,
            snr_db,
            trials,
            seed,
            mapping,
        } => {
            let f = ResidueField::new(q)?;
            let m = NcMapping::new(mapping.0, mapping.1, &f)?;
            let est = estimate_ser(&ChannelConfig::new(&f, h_a, h_b, snr_db)?, m, trials, seed)?;
            let v = json!({"trials": est.trials, "errors": est.errors, "ser": est.ser, "ci95": est.half_width_95});
            writeln!(out, "{v}")?;
        }
        Command::Compare {
            q,
            h_a,
            h_b,
            snr_sweep,
            trials,
            seed,
            out: path,
        } => {
            let f = ResidueField::new(q)?;
            let config = ChannelConfig::new(&f, h_a, h_b, snr_sweep.0[0])?;
            let sweep = compare_sweep(&config, &snr_sweep.0, trials, seed)?;
            let mut w = csv::Writer::from_writer(output(&path)?);
            w.write_record([
                "snr_db",
                "mapping",
                "ser",
                "ci95",
                "dmin",
                "dmin_argmax",
                "voronoi_optimal",
            ])?;
            for (snr, rows) in sweep {
                for r in rows {
                    w.write_record([
                        snr.to_string(),
                        format!("{},{}", r.mapping.alpha, r.mapping.beta),
                        r.estimate.ser.to_string(),
                        r.estimate.half_width_95.to_string(),
                        format!("{:.12}", r.dmin),
                        r.dmin_argmax.to_string(),
                        r.voronoi_optimal.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Command::Verify { q, suite } => {
            let f = ResidueField::new(q)?;
            let reports = verify(&f, suite);
            for r in &reports {
                writeln!(out, "{} {} (q = {q})", if r.pass { "PASS" } else { "FAIL" }, r.suite)?;
                for d in &r.details {
                    writeln!(out, "  {d}")?;
                }
            }
            let ok = verify_passes(&reports);
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            out.flush()?;
            return Ok(ok);
        }
    }
    out.flush()?;
    Ok(true)
}

fn init_threads() -> Result<(), PncError> {
    let Ok(v) = std::env::var("PNC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| PncError::InvalidArgument(format!("PNC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| PncError::InvalidArgument(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let result = init_threads().and_then(|_| run(cli.command));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(PncError::Io(io::ErrorKind::BrokenPipe, _)) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
