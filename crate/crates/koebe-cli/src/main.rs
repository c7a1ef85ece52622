//! `koebe` — evaluate, verify, and render the generalized harmonic
//! quasiconformal Koebe family `f_{a,λ} = h + conj(g)`.
//!
//! Exit codes: 0 success, 1 verification-check failure, 2 usage/config error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use koebe_cli::cplx::{format_complex, parse_complex, parse_rational, parse_real};
use koebe_cli::render::{render_mesh, svg_document, Mapper, MeshSpec, Preset};
use koebe_cli::verify::run_suite;
use koebe_core::bounds::{area_bounds, area_empirical, area_series, growth_bounds, Regime};
use koebe_core::coeffs::coeff_closed_forms;
use koebe_core::differential::{norm_bound, norm_estimate, OperatorKind};
use koebe_core::numkit::{rational_to_f64, QuadSpec};
use koebe_core::shear::{eval_f, hg_series};
use koebe_core::univalence::{injectivity_scan, ScanOutcome, Verdict};
use koebe_core::Params;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "koebe",
    version,
    about = "Generalized harmonic quasiconformal Koebe family: evaluation, verification suites, SVG rendering"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FamilyArgs {
    /// Exponent a (decimal or p/q)
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Dilatation slope lambda in [0, 1) (decimal or p/q)
    #[arg(long)]
    lambda: String,
}

impl FamilyArgs {
    fn reals(&self) -> Result<(f64, f64), String> {
        let a = parse_real(&self.a)?;
        let lam = parse_real(&self.lambda)?;
        if !(0.0..1.0).contains(&lam) {
            return Err(format!("lambda must lie in [0, 1), got {lam}"));
        }
        Ok((a, lam))
    }

    fn params(&self) -> Result<Params, String> {
        let (a, lam) = self.reals()?;
        Ok(Params::new(a, lam))
    }

    fn rationals(&self) -> Result<(BigRational, BigRational), String> {
        let a = parse_rational(&self.a)?;
        let lam = parse_rational(&self.lambda)?;
        let l = rational_to_f64(&lam);
        if !(0.0..1.0).contains(&l) {
            return Err(format!("lambda must lie in [0, 1), got {lam}"));
        }
        Ok((a, lam))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Coeffs,
    Shear,
    Norms,
    Growth,
    Area,
    Univalence,
    Hyp,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Coeffs => "coeffs",
            Suite::Shear => "shear",
            Suite::Norms => "norms",
            Suite::Growth => "growth",
            Suite::Area => "area",
            Suite::Univalence => "univalence",
            Suite::Hyp => "hyp",
            Suite::All => "all",
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate f_{a,lambda}(z) = h + conj(g) by the quadrature path
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        /// Point inside the unit disk, "<re>(+|-)<im>i"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Quadrature tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Taylor coefficients of (h, g) and the order-four closed forms
    Coeffs {
        #[command(flatten)]
        family: FamilyArgs,
        /// Series order N (coefficients up to z^N)
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Exact rational mode (a, lambda read as rationals)
        #[arg(long)]
        exact: bool,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Pre-Schwarzian and Schwarzian norm estimates vs the theorem bounds
    Norms {
        #[command(flatten)]
        family: FamilyArgs,
        /// Search radius r_max (default 0.999)
        #[arg(long)]
        r: Option<f64>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Two-sided growth bounds for |f| on |z| = r
    Growth {
        #[command(flatten)]
        family: FamilyArgs,
        /// Circle radius in (0, 1)
        #[arg(long)]
        r: f64,
        /// Quadrature tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Image area of |z| < r: theorem bounds, quadrature, coefficient series
    Area {
        #[command(flatten)]
        family: FamilyArgs,
        /// Disk radius in (0, 1)
        #[arg(long)]
        r: f64,
        /// Series truncation order (default 80)
        #[arg(long, default_value_t = 80)]
        order: usize,
        /// Quadrature tolerance override
        #[arg(long)]
        tol: Option<f64>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Univalence verdict, witness pair, and optional injectivity scan
    Univalence {
        #[command(flatten)]
        family: FamilyArgs,
        /// Run an injectivity scan of the image of |z| = r
        #[arg(long)]
        r: Option<f64>,
        /// Scan sample count (default 1024, minimum 256)
        #[arg(long)]
        order: Option<usize>,
        /// Emit JSON
        #[arg(long)]
        json: bool,
    },
    /// Render the image of the unit disk as deterministic SVG
    Render {
        /// Figure preset fig1..fig6
        #[arg(long, conflicts_with_all = ["a", "lambda"])]
        preset: Option<String>,
        /// Exponent a (decimal or p/q)
        #[arg(long, allow_hyphen_values = true, requires = "lambda")]
        a: Option<String>,
        /// Dilatation slope lambda in [0, 1)
        #[arg(long, requires = "a")]
        lambda: Option<String>,
        /// Mesh radius r_max override
        #[arg(long)]
        r: Option<f64>,
        /// Output path (stdout if omitted)
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Emit JSON metadata (requires -o)
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and report machine-readable checks
    Verify {
        /// Suite to run
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Emit the JSON report on stdout
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to a file
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader closes the pipe (`koebe ... | head`)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Eval { family, z, tol, json } => {
            let mut p = family.params()?;
            if let Some(t) = tol {
                if !t.is_finite() || t <= 0.0 {
                    return Err("tolerance must be positive".into());
                }
                p = p.with_quad(QuadSpec::with_tols(t, t));
            }
            let z = parse_complex(&z)?;
            let v = eval_f(&p, z).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "a": p.a,
                        "lambda": p.lambda,
                        "z": format_complex(z),
                        "h": format_complex(v.h),
                        "g": format_complex(v.g),
                        "f": format_complex(v.f),
                        "err": v.err,
                        "flagged": v.flagged,
                    })
                );
            } else {
                println!("f_{{{}, {}}} at z = {}", p.a, p.lambda, format_complex(z));
                println!("  h   = {}", format_complex(v.h));
                println!("  g   = {}", format_complex(v.g));
                println!("  f   = {}", format_complex(v.f));
                println!("  err = {:.3e}{}", v.err, if v.flagged { "  (budget exhausted)" } else { "" });
            }
            Ok(0)
        }

        Cmd::Coeffs { family, order, exact, json } => {
            if order < 1 {
                return Err("order must be at least 1".into());
            }
            if exact {
                let (a, lam) = family.rationals()?;
                let pair = hg_series::<BigRational>(a.clone(), lam.clone(), order)
                    .map_err(|e| e.to_string())?;
                let table = coeff_closed_forms::<BigRational>(a.clone(), lam.clone());
                let fmt = |q: &BigRational| q.to_string();
                if json {
                    let a_c: Vec<String> = pair.a_coeffs.coeffs().iter().map(fmt).collect();
                    let b_c: Vec<String> = pair.b_coeffs.coeffs().iter().map(fmt).collect();
                    println!(
                        "{}",
                        json!({
                            "a": fmt(&a),
                            "lambda": fmt(&lam),
                            "order": order,
                            "exact": true,
                            "a_coeffs": a_c,
                            "b_coeffs": b_c,
                            "closed_forms": {
                                "a2": fmt(&table.a2), "a3": fmt(&table.a3), "a4": fmt(&table.a4),
                                "b2": fmt(&table.b2), "b3": fmt(&table.b3), "b4": fmt(&table.b4),
                                "bounds": {
                                    "a2": fmt(&table.bounds.a2), "a3": fmt(&table.bounds.a3),
                                    "a4": fmt(&table.bounds.a4), "b2": fmt(&table.bounds.b2),
                                    "b3": fmt(&table.bounds.b3), "b4": fmt(&table.bounds.b4),
                                },
                            },
                        })
                    );
                } else {
                    println!("exact coefficients, a = {a}, lambda = {lam}");
                    println!("{:>3}  {:>24}  {:>24}", "n", "a_n", "b_n");
                    for n in 0..=order {
                        println!(
                            "{:>3}  {:>24}  {:>24}",
                            n,
                            fmt(&pair.a_coeffs.coeff(n)),
                            fmt(&pair.b_coeffs.coeff(n))
                        );
                    }
                    println!(
                        "closed forms: a2 = {}, a3 = {}, a4 = {}, b2 = {}, b3 = {}, b4 = {}",
                        fmt(&table.a2), fmt(&table.a3), fmt(&table.a4),
                        fmt(&table.b2), fmt(&table.b3), fmt(&table.b4)
                    );
                    println!(
                        "moduli bounds: |a2| <= {}, |a3| <= {}, |a4| <= {}, |b2| <= {}, |b3| <= {}, |b4| <= {}",
                        fmt(&table.bounds.a2), fmt(&table.bounds.a3), fmt(&table.bounds.a4),
                        fmt(&table.bounds.b2), fmt(&table.bounds.b3), fmt(&table.bounds.b4)
                    );
                }
            } else {
                let (a, lam) = family.reals()?;
                let pair = hg_series::<f64>(a, lam, order).map_err(|e| e.to_string())?;
                let table = coeff_closed_forms::<f64>(a, lam);
                if json {
                    println!(
                        "{}",
                        json!({
                            "a": a,
                            "lambda": lam,
                            "order": order,
                            "exact": false,
                            "a_coeffs": pair.a_coeffs.coeffs(),
                            "b_coeffs": pair.b_coeffs.coeffs(),
                            "closed_forms": {
                                "a2": table.a2, "a3": table.a3, "a4": table.a4,
                                "b2": table.b2, "b3": table.b3, "b4": table.b4,
                                "bounds": {
                                    "a2": table.bounds.a2, "a3": table.bounds.a3,
                                    "a4": table.bounds.a4, "b2": table.bounds.b2,
                                    "b3": table.bounds.b3, "b4": table.bounds.b4,
                                },
                            },
                        })
                    );
                } else {
                    println!("coefficients, a = {a}, lambda = {lam}");
                    println!("{:>3}  {:>24}  {:>24}", "n", "a_n", "b_n");
                    for n in 0..=order {
                        println!(
                            "{:>3}  {:>24}  {:>24}",
                            n,
                            pair.a_coeffs.coeff(n),
                            pair.b_coeffs.coeff(n)
                        );
                    }
                    println!(
                        "closed forms: a2 = {}, a3 = {}, a4 = {}, b2 = {}, b3 = {}, b4 = {}",
                        table.a2, table.a3, table.a4, table.b2, table.b3, table.b4
                    );
                }
            }
            Ok(0)
        }

        Cmd::Norms { family, r, json } => {
            let p = family.params()?;
            let r_max = r.unwrap_or(0.999);
            if !(0.0 < r_max && r_max < 1.0) {
                return Err(format!("r must lie in (0, 1), got {r_max}"));
            }
            let mut blocks = Vec::new();
            for (kind, label) in [
                (OperatorKind::PreSchwarzian, "pre_schwarzian"),
                (OperatorKind::Schwarzian, "schwarzian"),
            ] {
                let rep = norm_estimate(kind, &p, r_max);
                let bound = norm_bound(kind, &p);
                blocks.push((label, rep, bound));
            }
            if json {
                let mut obj = json!({ "a": p.a, "lambda": p.lambda, "r_max": r_max });
                for (label, rep, bound) in &blocks {
                    obj[label] = json!({
                        "estimate": rep.estimate,
                        "argmax": format_complex(rep.argmax),
                        "bound": bound,
                        "within_bound": rep.estimate <= bound + 1e-9,
                    });
                }
                println!("{obj}");
            } else {
                println!("weighted sup-norms, a = {}, lambda = {}, r_max = {}", p.a, p.lambda, r_max);
                for (label, rep, bound) in &blocks {
                    println!(
                        "  {:<15} estimate {:.9} at z = {}  (theorem bound {:.9}, within: {})",
                        label,
                        rep.estimate,
                        format_complex(rep.argmax),
                        bound,
                        rep.estimate <= bound + 1e-9
                    );
                }
            }
            Ok(0)
        }

        Cmd::Growth { family, r, tol, json } => {
            let mut p = family.params()?;
            if let Some(t) = tol {
                if !t.is_finite() || t <= 0.0 {
                    return Err("tolerance must be positive".into());
                }
                p = p.with_quad(QuadSpec::with_tols(t, t));
            }
            if !(0.0 < r && r < 1.0) {
                return Err(format!("r must lie in (0, 1), got {r}"));
            }
            let b = growth_bounds(&p, r);
            if json {
                println!(
                    "{}",
                    json!({
                        "a": p.a, "lambda": p.lambda, "r": r,
                        "lo": b.lo, "hi": b.hi,
                        "lo_err": b.lo_err, "hi_err": b.hi_err,
                        "regime": regime_name(b.regime),
                    })
                );
            } else {
                println!(
                    "|f| on |z| = {} lies in [{:.12}, {:.12}]  (regime {}, errs {:.2e}/{:.2e})",
                    r, b.lo, b.hi, regime_name(b.regime), b.lo_err, b.hi_err
                );
            }
            Ok(0)
        }

        Cmd::Area { family, r, order, tol, json } => {
            let mut p = family.params()?;
            if let Some(t) = tol {
                if !t.is_finite() || t <= 0.0 {
                    return Err("tolerance must be positive".into());
                }
                p = p.with_quad(QuadSpec::with_tols(t, t));
            }
            if !(0.0 < r && r < 1.0) {
                return Err(format!("r must lie in (0, 1), got {r}"));
            }
            if order < 1 {
                return Err("order must be at least 1".into());
            }
            let b = area_bounds(&p, r);
            let emp = area_empirical(&p, r);
            let series = area_series(&p, r, order);
            if json {
                println!(
                    "{}",
                    json!({
                        "a": p.a, "lambda": p.lambda, "r": r,
                        "bounds": { "lo": b.lo, "hi": b.hi, "lo_err": b.lo_err, "hi_err": b.hi_err },
                        "empirical": emp.value,
                        "empirical_err": emp.err,
                        "series": series,
                        "series_terms": order,
                    })
                );
            } else {
                println!("image area of |z| < {r}, a = {}, lambda = {}", p.a, p.lambda);
                println!("  bounds    [{:.12}, {:.12}]", b.lo, b.hi);
                println!("  empirical {:.12}  (err {:.2e})", emp.value, emp.err);
                println!("  series    {:.12}  ({} terms)", series, order);
            }
            Ok(0)
        }

        Cmd::Univalence { family, r, order, json } => {
            let p = family.params()?;
            let mut rep = koebe_core::univalence::univalence_verdict(&p);
            if let Some(r_scan) = r {
                if !(0.0 < r_scan && r_scan < 1.0) {
                    return Err(format!("r must lie in (0, 1), got {r_scan}"));
                }
                let n = order.unwrap_or(1024);
                if n < 256 {
                    return Err("scan needs at least 256 samples".into());
                }
                rep.scan = Some(injectivity_scan(&p, r_scan, n).map_err(|e| e.to_string())?);
                rep.r_scan = r_scan;
                rep.samples = n;
            }
            let verdict = match rep.verdict {
                Verdict::Univalent => "univalent",
                Verdict::NotUnivalent => "not univalent",
            };
            if json {
                let witness: Value = match rep.witness {
                    None => Value::Null,
                    Some(w) => json!({
                        "z1": format_complex(w.z1),
                        "z2": format_complex(w.z2),
                        "f_gap": w.f_gap,
                        "separation": w.separation,
                    }),
                };
                let scan: Value = match rep.scan {
                    None => Value::Null,
                    Some(ScanOutcome::Passed) => json!({
                        "outcome": "passed", "r": rep.r_scan, "samples": rep.samples,
                    }),
                    Some(ScanOutcome::CrossingFound { theta_i, theta_j }) => json!({
                        "outcome": "crossing_found", "r": rep.r_scan, "samples": rep.samples,
                        "theta_i": theta_i, "theta_j": theta_j,
                    }),
                };
                println!(
                    "{}",
                    json!({
                        "a": p.a, "lambda": p.lambda,
                        "verdict": verdict.replace(' ', "_"),
                        "witness": witness,
                        "scan": scan,
                    })
                );
            } else {
                println!("a = {}, lambda = {}: {verdict}", p.a, p.lambda);
                if let Some(w) = rep.witness {
                    println!(
                        "  witness: z1 = {}, z2 = {}, |f(z1)-f(z2)| = {:.3e}, |z1-z2| = {:.6}",
                        format_complex(w.z1),
                        format_complex(w.z2),
                        w.f_gap,
                        w.separation
                    );
                }
                match rep.scan {
                    None => {}
                    Some(ScanOutcome::Passed) => println!(
                        "  scan (r = {}, n = {}): no self-intersection",
                        rep.r_scan, rep.samples
                    ),
                    Some(ScanOutcome::CrossingFound { theta_i, theta_j }) => println!(
                        "  scan (r = {}, n = {}): crossing between theta = {:.6} and theta = {:.6}",
                        rep.r_scan, rep.samples, theta_i, theta_j
                    ),
                }
            }
            Ok(0)
        }

        Cmd::Render { preset, a, lambda, r, out, json } => {
            let mapper = match (&preset, &a, &lambda) {
                (Some(name), None, None) => Preset::from_name(name)
                    .ok_or_else(|| format!("unknown preset {name:?} (expected fig1..fig6)"))?
                    .mapper(),
                (None, Some(a), Some(lambda)) => {
                    let fam = FamilyArgs { a: a.clone(), lambda: lambda.clone() };
                    Mapper::Family(fam.params()?)
                }
                _ => return Err("render needs either --preset or both --a and --lambda".into()),
            };
            let mut mesh = MeshSpec::default();
            if let Some(r_max) = r {
                if !(0.0 < r_max && r_max < 1.0) {
                    return Err(format!("r must lie in (0, 1), got {r_max}"));
                }
                mesh.r_max = r_max;
            }
            if json && out.is_none() {
                return Err("--json for render requires -o (SVG would share stdout)".into());
            }
            let rendering = render_mesh(&mapper, &mesh).map_err(|e| e.to_string())?;
            let svg = svg_document(&rendering);
            match &out {
                Some(path) => {
                    std::fs::write(path, &svg)
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    if json {
                        println!(
                            "{}",
                            json!({
                                "target": rendering.description,
                                "path": path.display().to_string(),
                                "bytes": svg.len(),
                                "flagged": rendering.flagged,
                            })
                        );
                    } else {
                        println!(
                            "wrote {} ({} bytes, {})",
                            path.display(),
                            svg.len(),
                            rendering.description
                        );
                    }
                }
                None => print!("{svg}"),
            }
            Ok(0)
        }

        Cmd::Verify { suite, json, out } => {
            let report = run_suite(suite.name()).expect("all enum names are valid suites");
            if let Some(path) = &out {
                let pretty = serde_json::to_string_pretty(&report)
                    .expect("report serialization is infallible");
                std::fs::write(path, pretty)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            if json {
                println!("{}", serde_json::to_string(&report).expect("infallible"));
            } else {
                for c in &report.checks {
                    println!(
                        "{} {} [{}] measured={} expected={} tol={:e}",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.params,
                        c.measured,
                        c.bound_or_expected,
                        c.tol
                    );
                }
                let passed = report.checks.iter().filter(|c| c.pass).count();
                println!(
                    "suite {}: {passed}/{} checks passed in {} ms",
                    report.suite,
                    report.checks.len(),
                    report.elapsed_ms
                );
            }
            Ok(if report.all_pass() { 0 } else { 1 })
        }
    }
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Upper => "upper",
        Regime::Middle => "middle",
        Regime::Lower => "lower",
    }
}
