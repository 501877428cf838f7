//! Command-line front end: flag parsing, dispatch, and file output.
//!
//! Exit codes: 0 on success (and on a holding inequality), 1 when an
//! inequality check fails (a reproduction file is written first), 2 on
//! usage or input errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};

use crate::error::Result;
use crate::report::float17;
use crate::{constants, families, halfstrip, inequality, report, trigpoly};

#[derive(Parser)]
#[command(
    name = "conjugate-sharp",
    version,
    about = "Sharp conjugate-function inequality toolkit: constants, majorants, kernels, certified minima, and verification sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sharp constant: A_p for a given p, or Catalan's constant
    #[command(group(ArgGroup::new("which").required(true).args(["p", "catalan"])))]
    Constant {
        /// Exponent p > 1 for A_p
        #[arg(long)]
        p: Option<f64>,
        /// Print Catalan's constant instead
        #[arg(long)]
        catalan: bool,
    },
    /// Evaluate the half-strip majorant U_p (and W_p) at a point
    Majorant {
        #[arg(long)]
        p: f64,
        /// Distance into the strip, x > 0
        #[arg(long)]
        x: f64,
        /// Height in [-1, 1]
        #[arg(long)]
        y: f64,
        /// Series truncation J; defaults to max(50, ceil(12/x))
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Kernel closed form vs truncated series, with tail bound and slack
    Kernel {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 50)]
        truncation: usize,
    },
    /// Ratios g_p(x)/x on a decreasing log-spaced grid, approaching A_p
    Sharpness {
        #[arg(long)]
        p: f64,
        #[arg(long = "x-min")]
        x_min: f64,
        #[arg(long = "x-max")]
        x_max: f64,
        #[arg(long, default_value_t = 9)]
        points: usize,
    },
    /// Check the minimum inequality for a polynomial read from JSON
    Check {
        /// Polynomial file: {"terms":[{"n":..,"re":..,"im":..},..]}
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Grid size K (power of two); defaults to max(4096, 16 * max frequency)
        #[arg(long)]
        grid: Option<usize>,
        /// How the conjugate p-mean is obtained: "pmean" (trapezoid
        /// quadrature, any p) or "parseval" (exact orthogonality, p = 2 only)
        #[arg(long, default_value = "pmean")]
        route: String,
        /// Also write the report line to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the reproduction file on a failed verdict
        #[arg(long, default_value = "repro.json")]
        repro: PathBuf,
    },
    /// Family sweeps: order-sharpness CSV or randomized inequality checks
    Sweep {
        /// rudin-shapiro | random-phase | random-sign
        #[arg(long)]
        family: String,
        /// Largest size: powers of two up to this for rudin-shapiro,
        /// size cap for random families
        #[arg(long = "max-n")]
        max_n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv (the only format currently emitted by sweeps)
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long, default_value = "repro.json")]
        repro: PathBuf,
    },
    /// Certified global minimum of the real part of a polynomial
    Minimize {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
}

/// Parse arguments and dispatch; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    print!("{content}");
    if let Some(path) = out {
        std::fs::write(path, content)?;
    }
    Ok(())
}

fn load_poly(path: &Path) -> Result<trigpoly::TrigPoly> {
    let body = std::fs::read_to_string(path)?;
    trigpoly::TrigPoly::from_json(&body)
}

/// Strictly decreasing log-spaced grid from `hi` down to `lo`.
fn log_spaced_desc(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (lhi + (llo - lhi) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Constant { p, catalan } => {
            let line = if catalan {
                let g = constants::catalan();
                format!(
                    r#"{{"name":"catalan","value":{},"abs_error_estimate":{},"method":"{}"}}"#,
                    float17(g.value),
                    float17(g.abs_error_estimate),
                    g.method.as_str()
                )
            } else {
                let p = p.expect("clap group guarantees one of --p/--catalan");
                let c = constants::sharp_constant_ap(p)?;
                format!(
                    r#"{{"name":"a_p","p":{},"value":{},"abs_error_estimate":{},"method":"{}"}}"#,
                    float17(p),
                    float17(c.value),
                    float17(c.abs_error_estimate),
                    c.method.as_str()
                )
            };
            write_output(None, &format!("{line}\n"))?;
            Ok(0)
        }
        Command::Majorant {
            p,
            x,
            y,
            truncation,
        } => {
            if !(x > 0.0) {
                return Err(crate::error::Error::NonpositiveX { x });
            }
            let j = truncation.unwrap_or_else(|| halfstrip::default_truncation(x));
            let series = halfstrip::MajorantSeries::build(p, j)?;
            let w = series.w(x, y)?;
            let line = format!(
                r#"{{"p":{},"x":{},"y":{},"u":{},"w":{},"tail_bound":{},"truncation":{}}}"#,
                float17(p),
                float17(x),
                float17(y),
                float17(1.0 - w.value),
                float17(w.value),
                float17(w.tail_bound),
                j
            );
            write_output(None, &format!("{line}\n"))?;
            Ok(0)
        }
        Command::Kernel { x, y, truncation } => {
            let closed = halfstrip::kernel_closed(x, y)?;
            let series = halfstrip::kernel_series(x, y, truncation)?;
            let bound = if y > 0.0 {
                let chk = halfstrip::kernel_bound_check(x, y)?;
                format!(
                    r#","bound_slack":{},"certificate":{}"#,
                    float17(chk.slack),
                    float17(chk.certificate)
                )
            } else {
                String::new()
            };
            let line = format!(
                r#"{{"x":{},"y":{},"closed":{},"series":{},"tail_bound":{},"truncation":{}{}}}"#,
                float17(x),
                float17(y),
                float17(closed),
                float17(series.value),
                float17(series.tail_bound),
                truncation,
                bound
            );
            write_output(None, &format!("{line}\n"))?;
            Ok(0)
        }
        Command::Sharpness {
            p,
            x_min,
            x_max,
            points,
        } => {
            if !(x_min > 0.0 && x_max > x_min && points >= 2) {
                return Err(crate::error::Error::InvalidRatioSequence);
            }
            let ap = constants::sharp_constant_ap(p)?;
            let series = halfstrip::MajorantSeries::build(p, halfstrip::default_truncation(x_min))?;
            let xs = log_spaced_desc(x_min, x_max, points);
            let ratios = halfstrip::sharpness_ratios(&series, &xs)?;
            let mut body = String::new();
            for (x, ratio) in xs.iter().zip(&ratios) {
                body.push_str(&format!(
                    "{{\"p\":{},\"x\":{},\"ratio\":{},\"a_p\":{}}}\n",
                    float17(p),
                    float17(*x),
                    float17(*ratio),
                    float17(ap.value)
                ));
            }
            write_output(None, &body)?;
            Ok(0)
        }
        Command::Check {
            poly,
            p,
            grid,
            route,
            out,
            repro,
        } => {
            let polynomial = load_poly(&poly)?;
            let k = grid.unwrap_or_else(|| trigpoly::default_grid(polynomial.max_frequency()));
            let rep = match route.as_str() {
                "pmean" => inequality::check_minimum_inequality(&polynomial, p, k)?,
                "parseval" => {
                    if p != 2.0 {
                        return Err(crate::error::Error::InvalidFamily {
                            reason: "the Parseval route requires p = 2".to_string(),
                        });
                    }
                    inequality::check_parseval_route(&polynomial, k)?
                }
                other => {
                    return Err(crate::error::Error::InvalidFamily {
                        reason: format!("unknown route {other}; use pmean or parseval"),
                    })
                }
            };
            let line = format!("{}\n", report::report_json(&rep));
            write_output(out.as_deref(), &line)?;
            if rep.holds {
                Ok(0)
            } else {
                inequality::write_reproduction(&repro, &polynomial, &rep, k)?;
                eprintln!(
                    "inequality FAILED (slack {}); reproduction written to {}",
                    rep.slack,
                    repro.display()
                );
                Ok(1)
            }
        }
        Command::Sweep {
            family,
            max_n,
            seed,
            count,
            p,
            out,
            format,
            repro,
        } => {
            if format != "csv" {
                return Err(crate::error::Error::InvalidFamily {
                    reason: format!("unknown format {format}; sweeps emit csv"),
                });
            }
            match family.as_str() {
                "rudin-shapiro" => {
                    let sizes: Vec<u32> = (0..32)
                        .map(|m| 1u32 << m)
                        .take_while(|&n| n <= max_n)
                        .collect();
                    let rows = families::sharpness_sweep(&sizes, families::DEFAULT_SWEEP_CAP)?;
                    write_output(out.as_deref(), &report::sweep_csv(&rows))?;
                    Ok(0)
                }
                "random-phase" | "random-sign" => {
                    let kind = if family == "random-phase" {
                        families::FamilyKind::RandomPhase
                    } else {
                        families::FamilyKind::RandomSign
                    };
                    let size_cap = max_n.max(1);
                    let mut body = String::from(
                        "index,seed,size,p,m_lower,sup_conj_upper,pmean_conj,a_p,rhs,slack,holds\n",
                    );
                    let mut failure = None;
                    for i in 0..count {
                        let instance_seed = seed.wrapping_add(i as u64);
                        let mut sizer =
                            <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(
                                instance_seed ^ 0x5eed_5eed,
                            );
                        let size = rand::Rng::random_range(&mut sizer, 1..=size_cap);
                        let spec = families::FamilySpec {
                            kind,
                            size,
                            seed: instance_seed,
                            frequency_set: None,
                            frequency_cap: None,
                        };
                        let polynomial = families::random_family(&spec)?;
                        let k = trigpoly::default_grid(polynomial.max_frequency());
                        let rep = inequality::check_minimum_inequality(&polynomial, p, k)?;
                        body.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{}\n",
                            i,
                            instance_seed,
                            size,
                            float17(p),
                            float17(rep.m_lower),
                            float17(rep.sup_conj_upper),
                            float17(rep.pmean_conj),
                            float17(rep.a_p),
                            float17(rep.rhs),
                            float17(rep.slack),
                            rep.holds
                        ));
                        if !rep.holds && failure.is_none() {
                            inequality::write_reproduction(&repro, &polynomial, &rep, k)?;
                            failure = Some(i);
                        }
                    }
                    write_output(out.as_deref(), &body)?;
                    match failure {
                        None => Ok(0),
                        Some(i) => {
                            eprintln!(
                                "instance {i} FAILED; reproduction written to {}",
                                repro.display()
                            );
                            Ok(1)
                        }
                    }
                }
                other => Err(crate::error::Error::InvalidFamily {
                    reason: format!(
                        "unknown family {other}; use rudin-shapiro, random-phase, or random-sign"
                    ),
                }),
            }
        }
        Command::Minimize { poly, grid } => {
            let polynomial = load_poly(&poly)?;
            let k = grid.unwrap_or_else(|| trigpoly::default_grid(polynomial.max_frequency()));
            let c = trigpoly::certified_min(&polynomial.real_part(), k)?;
            let (lo, hi) = c.certified_interval();
            let line = format!(
                r#"{{"grid":{},"grid_value":{},"refined_value":{},"error_radius":{},"arg":{},"lower":{},"upper":{}}}"#,
                k,
                float17(c.grid_value),
                float17(c.refined_value),
                float17(c.error_radius),
                float17(c.arg),
                float17(lo),
                float17(hi)
            );
            write_output(None, &format!("{line}\n"))?;
            Ok(0)
        }
    }
}
