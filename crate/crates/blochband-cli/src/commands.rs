//! The five subcommands: eigenvalue, gap, and band reports, the asymptotics
//! convergence study, and the cross-validation suite.

use blochband::asymptotics::{condition_c, eigen_asym, gap_prediction, MidpointVariant};
use blochband::oracle::{bands_and_gaps, find_eigen, monodromy, piece_propagator, BoundaryCondition};
use blochband::series::g_map;
use blochband::solver::{check_applicability, solve, solve_pair, EigenSolution};
use blochband::{Condition, LocalizationInterval, SectorIndex, SectorKind};
use serde::Serialize;

use crate::config::{self, CommonArgs, FormatKind, Resolved, RunConfig};
use crate::failure::Failure;
use crate::render;

fn kind_label(kind: SectorKind) -> &'static str {
    match kind {
        SectorKind::First => "first",
        SectorKind::Periodic => "periodic",
        SectorKind::Antiperiodic => "antiperiodic",
    }
}

fn condition_label(condition: Condition) -> &'static str {
    match condition {
        Condition::Strict => "strict",
        Condition::Relaxed => "relaxed",
        Condition::Violated => "violated",
    }
}

/// Solve the first eigenvalue and every pair up to n_max in merged spectral
/// order, pairing branch outputs by position.
fn solve_merged(res: &Resolved) -> Result<Vec<EigenSolution>, Failure> {
    let relaxed = res.run.relaxed;
    let mut out = vec![
        solve(&res.potential, &res.params, SectorIndex::first(), relaxed)
            .map_err(Failure::from_solver)?,
    ];
    for n in 1..=res.run.n_max {
        for kind in [SectorKind::Antiperiodic, SectorKind::Periodic] {
            let (lo, hi) = solve_pair(&res.potential, &res.params, n, kind, relaxed)
                .map_err(Failure::from_solver)?;
            out.push(lo);
            out.push(hi);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct EigenRow {
    sector: &'static str,
    n: u32,
    j: u8,
    value: f64,
    bound: f64,
    iterations: u32,
    condition: &'static str,
}

#[derive(Serialize)]
struct GapRow {
    k: u32,
    length: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<f64>,
    first_order: f64,
    second_order: f64,
}

#[derive(Serialize)]
struct BandRow {
    k: u32,
    lower: f64,
    upper: f64,
}

/// Fixed-schema report shared by eigen, gaps, and bands.
#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    eigenvalues: Vec<EigenRow>,
    gaps: Vec<GapRow>,
    bands: Vec<BandRow>,
}

#[derive(Serialize)]
struct AsymRow {
    k: u32,
    sector: &'static str,
    n: u32,
    j: u8,
    oracle: f64,
    predicted: f64,
    scaled_residual: f64,
    first_order: f64,
    condition_c: bool,
}

/// Report schema of the asymptotics study.
#[derive(Serialize)]
struct StudyReport<'a> {
    config: &'a RunConfig,
    study: Vec<AsymRow>,
}

/// Solve and report eigenvalues with bounds and iteration counts.
pub fn eigen(args: &CommonArgs) -> Result<(), Failure> {
    let res = config::resolve(args)?;
    let scale = res.display_scale();
    let rows: Vec<EigenRow> = solve_merged(&res)?
        .iter()
        .map(|sol| EigenRow {
            sector: kind_label(sol.sector.kind()),
            n: sol.sector.n(),
            j: sol.sector.j(),
            value: sol.value * scale,
            bound: sol.total_bound * scale,
            iterations: sol.iterations,
            condition: condition_label(sol.condition),
        })
        .collect();

    let header = ["sector", "n", "j", "value", "bound", "iterations", "condition"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.sector.to_string(),
                r.n.to_string(),
                r.j.to_string(),
                render::sig12(r.value),
                render::sig12(r.bound),
                r.iterations.to_string(),
                r.condition.to_string(),
            ]
        })
        .collect();
    let content = match res.format {
        FormatKind::Table => render::table(&header, &cells),
        FormatKind::Csv => render::csv(&header, &cells)?,
        FormatKind::Json => render::json(&Report {
            config: &res.run,
            eigenvalues: rows,
            gaps: Vec::new(),
            bands: Vec::new(),
        })?,
    };
    render::emit(res.output.as_ref(), &content)
}

/// Report gap lengths with asymptotic predictions and optional oracle values.
pub fn gaps(args: &CommonArgs) -> Result<(), Failure> {
    let res = config::resolve(args)?;
    let scale = res.display_scale();

    let oracle_gaps = if res.oracle && res.run.n_max > 0 {
        let table = bands_and_gaps(&res.potential, 2 * res.run.n_max as usize)
            .map_err(|err| Failure::Condition(err.to_string()))?;
        Some(table.gaps)
    } else {
        None
    };

    let mut rows = Vec::new();
    for n in 1..=res.run.n_max {
        for kind in [SectorKind::Antiperiodic, SectorKind::Periodic] {
            let (lo, hi) = solve_pair(&res.potential, &res.params, n, kind, res.run.relaxed)
                .map_err(Failure::from_solver)?;
            let k = u32::try_from(lo.sector.resonant_index()).unwrap();
            let predicted = gap_prediction(&res.potential, k);
            rows.push(GapRow {
                k,
                length: (hi.value - lo.value) * scale,
                oracle: oracle_gaps
                    .as_ref()
                    .map(|gaps| gaps[(k - 1) as usize].1 * scale),
                first_order: predicted.first_order * scale,
                second_order: predicted.second_order * scale,
            });
        }
    }
    rows.sort_by_key(|r| r.k);

    let header: Vec<&str> = if res.oracle {
        vec!["k", "length", "oracle", "first_order", "second_order"]
    } else {
        vec!["k", "length", "first_order", "second_order"]
    };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.k.to_string(), render::sig12(r.length)];
            if let Some(oracle) = r.oracle {
                row.push(render::sig12(oracle));
            }
            row.push(render::sig12(r.first_order));
            row.push(render::sig12(r.second_order));
            row
        })
        .collect();
    let content = match res.format {
        FormatKind::Table => render::table(&header, &cells),
        FormatKind::Csv => render::csv(&header, &cells)?,
        FormatKind::Json => render::json(&Report {
            config: &res.run,
            eigenvalues: Vec::new(),
            gaps: rows,
            bands: Vec::new(),
        })?,
    };
    render::emit(res.output.as_ref(), &content)
}

/// Report band intervals of the merged spectrum.
pub fn bands(args: &CommonArgs) -> Result<(), Failure> {
    let res = config::resolve(args)?;
    let scale = res.display_scale();

    let rows: Vec<BandRow> = if res.run.n_max == 0 {
        Vec::new()
    } else if res.oracle {
        let table = bands_and_gaps(&res.potential, 2 * res.run.n_max as usize)
            .map_err(|err| Failure::Condition(err.to_string()))?;
        table
            .bands
            .iter()
            .map(|(k, lo, hi)| BandRow {
                k: *k,
                lower: lo * scale,
                upper: hi * scale,
            })
            .collect()
    } else {
        let edges: Vec<f64> = solve_merged(&res)?.iter().map(|sol| sol.value).collect();
        (1..=2 * res.run.n_max as usize)
            .map(|k| BandRow {
                k: u32::try_from(k).unwrap(),
                lower: edges[2 * k - 2] * scale,
                upper: edges[2 * k - 1] * scale,
            })
            .collect()
    };

    let header = ["k", "lower", "upper"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                render::sig12(r.lower),
                render::sig12(r.upper),
            ]
        })
        .collect();
    let content = match res.format {
        FormatKind::Table => render::table(&header, &cells),
        FormatKind::Csv => render::csv(&header, &cells)?,
        FormatKind::Json => render::json(&Report {
            config: &res.run,
            eigenvalues: Vec::new(),
            gaps: Vec::new(),
            bands: rows,
        })?,
    };
    render::emit(res.output.as_ref(), &content)
}

/// Convergence study: band-edge asymptotics against the oracle.
pub fn asym(args: &CommonArgs) -> Result<(), Failure> {
    let res = config::resolve(args)?;
    let scale = res.display_scale();
    let p = &res.potential;
    let n_max = res.run.n_max as usize;

    let (per, anti) = if n_max > 0 {
        (
            find_eigen(p, BoundaryCondition::Periodic, 2 * n_max + 1)
                .map_err(|err| Failure::Condition(err.to_string()))?,
            find_eigen(p, BoundaryCondition::Antiperiodic, 2 * n_max)
                .map_err(|err| Failure::Condition(err.to_string()))?,
        )
    } else {
        (Vec::new(), Vec::new())
    };

    let mut rows = Vec::new();
    for n in 1..=res.run.n_max {
        for kind in [SectorKind::Antiperiodic, SectorKind::Periodic] {
            for j in 1..=2u8 {
                let sector = match kind {
                    SectorKind::Periodic => SectorIndex::periodic(n, j).unwrap(),
                    _ => SectorIndex::antiperiodic(n, j).unwrap(),
                };
                let k = u32::try_from(sector.resonant_index()).unwrap();
                let idx = n as usize;
                let reference = match kind {
                    SectorKind::Periodic => per[2 * idx + j as usize - 2],
                    _ => anti[2 * idx + j as usize - 3],
                };
                let predicted = eigen_asym(p, sector, MidpointVariant::Leading);
                rows.push(AsymRow {
                    k,
                    sector: kind_label(kind),
                    n,
                    j,
                    oracle: reference * scale,
                    predicted: predicted * scale,
                    scaled_residual: f64::from(n * n) * (predicted - reference).abs() * scale,
                    first_order: gap_prediction(p, k).first_order * scale,
                    condition_c: condition_c(p, k, res.eps),
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.k, r.j));

    let header = [
        "k",
        "sector",
        "n",
        "j",
        "oracle",
        "predicted",
        "scaled_residual",
        "first_order",
        "condition_c",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.sector.to_string(),
                r.n.to_string(),
                r.j.to_string(),
                render::sig12(r.oracle),
                render::sig12(r.predicted),
                render::sig12(r.scaled_residual),
                render::sig12(r.first_order),
                r.condition_c.to_string(),
            ]
        })
        .collect();
    let content = match res.format {
        FormatKind::Table => render::table(&header, &cells),
        FormatKind::Csv => render::csv(&header, &cells)?,
        FormatKind::Json => render::json(&StudyReport {
            config: &res.run,
            study: rows,
        })?,
    };
    render::emit(res.output.as_ref(), &content)
}

/// One line of the verification report.
struct CheckLine {
    status: &'static str,
    text: String,
}

/// Cross-validation suite: certificates, reality, unimodularity, ordering.
pub fn verify(args: &CommonArgs) -> Result<(), Failure> {
    let res = config::resolve(args)?;
    let p = &res.potential;
    let relaxed = res.run.relaxed;
    let n_max = res.run.n_max as usize;
    let mut lines: Vec<CheckLine> = Vec::new();

    // Solve every sector, skipping those whose hypotheses are violated.
    let mut solutions: Vec<EigenSolution> = Vec::new();
    let record_violation = |lines: &mut Vec<CheckLine>, sector: SectorIndex| {
        lines.push(CheckLine {
            status: "SKIP",
            text: format!("{sector}: hypotheses violated for M = {}", p.m()),
        });
    };
    match check_applicability(p, SectorIndex::first(), relaxed) {
        Condition::Violated => record_violation(&mut lines, SectorIndex::first()),
        _ => match solve(p, &res.params, SectorIndex::first(), relaxed) {
            Ok(sol) => solutions.push(sol),
            Err(err) => lines.push(CheckLine {
                status: "FAIL",
                text: format!("{}: {err}", SectorIndex::first()),
            }),
        },
    }
    for n in 1..=res.run.n_max {
        for kind in [SectorKind::Antiperiodic, SectorKind::Periodic] {
            let probe = match kind {
                SectorKind::Periodic => SectorIndex::periodic(n, 1).unwrap(),
                _ => SectorIndex::antiperiodic(n, 1).unwrap(),
            };
            if check_applicability(p, probe, relaxed) == Condition::Violated {
                record_violation(&mut lines, probe);
                continue;
            }
            match solve_pair(p, &res.params, n, kind, relaxed) {
                Ok((lo, hi)) => {
                    solutions.push(lo);
                    solutions.push(hi);
                }
                Err(err) => lines.push(CheckLine {
                    status: "FAIL",
                    text: format!("{probe}: {err}"),
                }),
            }
        }
    }

    // Certificates against the transfer-matrix oracle.
    let oracle = if n_max > 0 || !solutions.is_empty() {
        match (
            find_eigen(p, BoundaryCondition::Periodic, 2 * n_max + 1),
            find_eigen(p, BoundaryCondition::Antiperiodic, (2 * n_max).max(1)),
        ) {
            (Ok(per), Ok(anti)) => Some((per, anti)),
            (Err(err), _) | (_, Err(err)) => {
                lines.push(CheckLine {
                    status: "FAIL",
                    text: format!("transfer-matrix bracketing: {err}"),
                });
                None
            }
        }
    } else {
        None
    };
    if let Some((per, anti)) = &oracle {
        for sol in &solutions {
            let sector = sol.sector;
            let n = sector.n() as usize;
            let j = sector.j() as usize;
            let reference = match sector.kind() {
                SectorKind::First => per[0],
                SectorKind::Periodic => per[2 * n + j - 2],
                SectorKind::Antiperiodic => anti[2 * n + j - 3],
            };
            let diff = (sol.value - reference).abs();
            if sol.certified() {
                let ok = diff <= sol.total_bound;
                lines.push(CheckLine {
                    status: if ok { "PASS" } else { "FAIL" },
                    text: format!(
                        "{sector}: |solver - oracle| = {diff:.3e} vs certificate {:.3e}",
                        sol.total_bound
                    ),
                });
            } else {
                let tolerance = 1e-6 * (1.0 + reference.abs());
                let ok = diff <= tolerance;
                lines.push(CheckLine {
                    status: if ok { "PASS" } else { "FAIL" },
                    text: format!(
                        "{sector}: uncertified oracle agreement {diff:.3e} vs {tolerance:.3e}"
                    ),
                });
            }
        }
    }

    // Reality of the rotated sums along each sector's window.
    let mut reality_ok = true;
    let mut reality_detail = String::from("rotated sums stay real across sampled windows");
    'reality: for sol in &solutions {
        let window = LocalizationInterval::new(p, sol.sector);
        for frac in [-0.3, 0.0, 0.3] {
            let x = window.center() + frac * window.half_width();
            if let Err(err) = g_map(p, &res.params, sol.sector, x) {
                reality_ok = false;
                reality_detail = format!("{}: {err}", sol.sector);
                break 'reality;
            }
        }
    }
    lines.push(CheckLine {
        status: if reality_ok { "PASS" } else { "FAIL" },
        text: reality_detail,
    });

    // Unimodularity and the free-potential trace on deterministic grids.
    let mut det_worst = 0.0f64;
    for i in 0..200 {
        let lambda = -p.m() - 5.0 + f64::from(i) * (805.0 + p.m()) / 200.0;
        det_worst = det_worst.max((monodromy(p, lambda).det() - 1.0).abs());
    }
    lines.push(CheckLine {
        status: if det_worst < 1e-10 { "PASS" } else { "FAIL" },
        text: format!("monodromy determinant stays within {det_worst:.3e} of one"),
    });
    let mut trace_worst = 0.0f64;
    for i in 1..=200 {
        let lambda = f64::from(i) * 4.0;
        let free = 2.0 * lambda.sqrt().cos();
        trace_worst = trace_worst.max((piece_propagator(0.0, 1.0, lambda).trace() - free).abs());
    }
    lines.push(CheckLine {
        status: if trace_worst < 1e-10 { "PASS" } else { "FAIL" },
        text: format!("free propagator trace matches 2 cos(sqrt(lambda)) within {trace_worst:.3e}"),
    });

    // Ordering and localization of whatever was solved.
    let ordered = solutions.windows(2).all(|w| w[0].value <= w[1].value);
    lines.push(CheckLine {
        status: if ordered { "PASS" } else { "FAIL" },
        text: "merged eigenvalues interlace".into(),
    });
    let localized = solutions
        .iter()
        .all(|sol| LocalizationInterval::new(p, sol.sector).contains(sol.value));
    lines.push(CheckLine {
        status: if localized { "PASS" } else { "FAIL" },
        text: "eigenvalues sit inside their localization intervals".into(),
    });

    let passed = lines.iter().filter(|l| l.status == "PASS").count();
    let failed = lines.iter().filter(|l| l.status == "FAIL").count();
    let skipped = lines.iter().filter(|l| l.status == "SKIP").count();
    let mut content = String::new();
    for line in &lines {
        content.push_str(&format!("{}  {}\n", line.status, line.text));
    }
    content.push_str(&format!(
        "verification: {passed} passed, {failed} failed, {skipped} skipped\n"
    ));
    render::emit(res.output.as_ref(), &content)?;

    if failed > 0 {
        return Err(Failure::Condition(format!(
            "verification failed: {failed} of {} checks",
            passed + failed
        )));
    }
    Ok(())
}
