//! k0 sweeps and their CSV output.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};

use rayon::prelude::*;
use spinscatter::{density_matrices, scatter, ScatterProblem};

use crate::config::SweepConfig;
use crate::peaks::{argmax, local_maxima, refine_max};
use crate::CliError;

pub const CSV_HEADER: &str = "k0,E,R,T,neg_R,neg_T,neg_total";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub k0: f64,
    pub energy: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub neg_r: f64,
    pub neg_t: f64,
    pub neg_total: f64,
}

impl SweepRow {
    fn failed(k0: f64, energy: f64) -> Self {
        SweepRow {
            k0,
            energy,
            reflection: f64::NAN,
            transmission: f64::NAN,
            neg_r: f64::NAN,
            neg_t: f64::NAN,
            neg_total: f64::NAN,
        }
    }

    pub fn is_nan(&self) -> bool {
        self.transmission.is_nan()
    }
}

fn problem(cfg: &SweepConfig, k0: f64) -> ScatterProblem {
    ScatterProblem::new(cfg.lattice(), cfg.m, k0, cfg.initial.into())
}

/// One grid point. Band-edge and singular points come back as `nan` rows.
pub fn evaluate(cfg: &SweepConfig, k0: f64) -> SweepRow {
    let energy = cfg.lattice().dispersion(k0);
    let Ok(out) = scatter(&problem(cfg, k0)) else {
        return SweepRow::failed(k0, energy);
    };
    let Ok(rep) = density_matrices(&out.reflected, &out.transmitted, cfg.combine_mode) else {
        return SweepRow::failed(k0, energy);
    };
    SweepRow {
        k0,
        energy: out.energy,
        reflection: out.reflection,
        transmission: out.transmission,
        neg_r: rep.neg_r,
        neg_t: rep.neg_t,
        neg_total: rep.neg_total,
    }
}

/// Evaluates the whole grid on the current rayon pool; rows come back in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    cfg.grid().par_iter().map(|&k| evaluate(cfg, k)).collect()
}

fn field(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn write_csv(rows: &[SweepRow], mut out: impl Write) -> io::Result<()> {
    let mut buf = String::with_capacity(rows.len() * 180 + 64);
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for r in rows {
        let fields = [
            r.k0,
            r.energy,
            r.reflection,
            r.transmission,
            r.neg_r,
            r.neg_t,
            r.neg_total,
        ];
        let line: Vec<String> = fields.into_iter().map(field).collect();
        buf.push_str(&line.join(","));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub k0: f64,
    pub value: f64,
}

/// Local maxima of T on the grid, each refined by golden-section search
/// between its neighbouring grid points.
pub fn transmission_peaks(cfg: &SweepConfig, rows: &[SweepRow]) -> Vec<Peak> {
    let t: Vec<f64> = rows.iter().map(|r| r.transmission).collect();
    local_maxima(&t)
        .into_iter()
        .map(|i| {
            let f = |k: f64| {
                scatter(&problem(cfg, k))
                    .map(|o| o.transmission)
                    .unwrap_or(f64::NEG_INFINITY)
            };
            let (k0, value) = refine_max(f, rows[i - 1].k0, rows[i + 1].k0, 1e-10);
            if value >= t[i] {
                Peak { k0, value }
            } else {
                Peak {
                    k0: rows[i].k0,
                    value: t[i],
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub points: usize,
    pub nan_points: usize,
    pub max_t: Option<Peak>,
    pub max_neg_total: Option<Peak>,
    pub t_peaks: Vec<Peak>,
}

pub fn summarize(cfg: &SweepConfig, rows: &[SweepRow]) -> Summary {
    let pick = |values: Vec<f64>| {
        argmax(&values).map(|i| Peak {
            k0: rows[i].k0,
            value: values[i],
        })
    };
    Summary {
        points: rows.len(),
        nan_points: rows.iter().filter(|r| r.is_nan()).count(),
        max_t: pick(rows.iter().map(|r| r.transmission).collect()),
        max_neg_total: pick(rows.iter().map(|r| r.neg_total).collect()),
        t_peaks: transmission_peaks(cfg, rows),
    }
}

impl Summary {
    pub fn line(&self, cfg: &SweepConfig) -> String {
        let show = |p: &Option<Peak>| match p {
            Some(p) => format!("{:.6} at k0 = {:.6}", p.value, p.k0),
            None => "n/a".to_string(),
        };
        let mut s = format!(
            "{} m={} U'={} initial={} mode={}: {} points ({} nan); max T {}; max neg_total {}; T peaks:",
            cfg.model,
            cfg.m,
            cfg.u_prime,
            cfg.initial,
            cfg.combine_mode,
            self.points,
            self.nan_points,
            show(&self.max_t),
            show(&self.max_neg_total),
        );
        if self.t_peaks.is_empty() {
            s.push_str(" none");
        }
        for p in &self.t_peaks {
            let _ = write!(s, " {:.6}@{:.6}", p.value, p.k0);
        }
        s
    }
}

/// Runs the sweep, writes the CSV to `cfg.output` and returns the summary.
pub fn run_to_file(cfg: &SweepConfig) -> Result<Summary, CliError> {
    cfg.validate()?;
    let rows = run_sweep(cfg);
    if let Some(dir) = cfg.output.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let file = fs::File::create(&cfg.output)?;
    write_csv(&rows, io::BufWriter::new(file))?;
    Ok(summarize(cfg, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ModelKind;

    #[test]
    fn csv_layout() {
        let rows = [
            SweepRow {
                k0: 0.5,
                energy: -1.0,
                reflection: 0.25,
                transmission: 0.75,
                neg_r: 0.0,
                neg_t: 0.125,
                neg_total: 1.0 / 3.0,
            },
            SweepRow::failed(0.75, 2.0),
        ];
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "5.0000000000000000e-1,-1.0000000000000000e0,2.5000000000000000e-1,7.5000000000000000e-1,0.0000000000000000e0,1.2500000000000000e-1,3.3333333333333331e-1"
        );
        assert_eq!(
            lines[2],
            "7.5000000000000000e-1,2.0000000000000000e0,nan,nan,nan,nan,nan"
        );
        assert!(text.ends_with('\n'));
        let third: f64 = lines[1].split(',').next_back().unwrap().parse().unwrap();
        assert_eq!(third, 1.0 / 3.0);
    }

    #[test]
    fn zero_coupling_rows() {
        for model in [ModelKind::Chain, ModelKind::Zpnr] {
            let cfg = SweepConfig {
                model,
                u_prime: 0.0,
                k_steps: 50,
                ..SweepConfig::default()
            };
            for r in run_sweep(&cfg) {
                assert_eq!((r.reflection, r.transmission), (0.0, 1.0));
                assert_eq!((r.neg_r, r.neg_t, r.neg_total), (0.0, 0.0, 0.0));
            }
        }
    }

    #[test]
    fn polarized_chain_resonances() {
        for (m, count) in [(2, 1), (5, 4)] {
            let cfg = SweepConfig {
                m,
                initial: spinscatter::SpinLabel::parse("uuu").unwrap(),
                ..SweepConfig::default()
            };
            let rows = run_sweep(&cfg);
            let summary = summarize(&cfg, &rows);
            let unit: Vec<_> = summary.t_peaks.iter().filter(|p| p.value > 0.999).collect();
            assert_eq!(unit.len(), count, "{}", summary.line(&cfg));
            assert_eq!(summary.nan_points, 0);
        }
    }

    #[test]
    fn peak_locations_are_stable_under_refinement() {
        let cfg = SweepConfig::default();
        let coarse = summarize(&cfg, &run_sweep(&cfg));
        let fine_cfg = SweepConfig {
            k_steps: 2 * cfg.k_steps,
            ..cfg.clone()
        };
        let fine = summarize(&fine_cfg, &run_sweep(&fine_cfg));
        let spacing = (cfg.k_max - cfg.k_min) / (cfg.k_steps - 1) as f64;
        for (a, b) in [
            (coarse.max_t, fine.max_t),
            (coarse.max_neg_total, fine.max_neg_total),
        ] {
            assert!((a.unwrap().k0 - b.unwrap().k0).abs() <= spacing);
        }
    }
}
