//! Presets reproducing the transmission and negativity curves.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use spinscatter::{CombineMode, SpinLabel};

use crate::config::{ModelKind, SweepConfig};
use crate::sweep::{run_to_file, Summary};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Chain transmission, m ∈ {2, 5}, initial ∈ {udd, uuu}, U' = 10.
    Fig4,
    /// Same as `Fig4` on the phosphorene edge.
    Fig5,
    /// Chain vs phosphorene transmission, coincident impurities, udd, U' = 10.
    Fig6,
    /// Negativity, both lattices, m ∈ {2, 5}, udd, U' = 10.
    Fig7,
    /// Phosphorene negativity, m = 2, udd, U' ∈ {10, 100}.
    Fig8,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
        }
    }

    /// `(file name, configuration)` of every curve, output paths relative to `dir`.
    pub fn curves(self, dir: &Path, base: &SweepConfig) -> Vec<(String, SweepConfig)> {
        let curve = |model: ModelKind, m: usize, initial: &str, u_prime: f64, suffix: &str| {
            let file = format!("{}_{}_m{}_{}{}.csv", self.name(), model, m, initial, suffix);
            let cfg = SweepConfig {
                model,
                m,
                u_prime,
                initial: SpinLabel::parse(initial).expect("valid label"),
                output: dir.join(&file),
                ..base.clone()
            };
            (file, cfg)
        };
        let models = [ModelKind::Chain, ModelKind::Zpnr];
        match self {
            Preset::Fig4 | Preset::Fig5 => {
                let model = if self == Preset::Fig4 {
                    ModelKind::Chain
                } else {
                    ModelKind::Zpnr
                };
                [2, 5]
                    .into_iter()
                    .flat_map(|m| ["udd", "uuu"].map(|init| curve(model, m, init, 10.0, "")))
                    .collect()
            }
            Preset::Fig6 => models
                .map(|model| curve(model, 0, "udd", 10.0, ""))
                .to_vec(),
            Preset::Fig7 => models
                .into_iter()
                .flat_map(|model| [2, 5].map(|m| curve(model, m, "udd", 10.0, "")))
                .collect(),
            Preset::Fig8 => [10.0, 100.0]
                .map(|u| curve(ModelKind::Zpnr, 2, "udd", u, &format!("_u{u}")))
                .to_vec(),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown preset {s:?} (expected fig4..fig8)")))
    }
}

/// Writes every curve of `preset` into `dir`.
pub fn run_figure(
    preset: Preset,
    dir: &Path,
    k_steps: usize,
    combine_mode: CombineMode,
) -> Result<Vec<(PathBuf, Summary, SweepConfig)>, CliError> {
    let base = SweepConfig {
        k_steps,
        combine_mode,
        ..SweepConfig::default()
    };
    preset
        .curves(dir, &base)
        .into_iter()
        .map(|(_, cfg)| {
            let summary = run_to_file(&cfg)?;
            Ok((cfg.output.clone(), summary, cfg))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: Preset) -> Vec<String> {
        p.curves(Path::new("out"), &SweepConfig::default())
            .into_iter()
            .map(|(n, _)| n)
            .collect()
    }

    #[test]
    fn preset_file_sets() {
        assert_eq!(
            names(Preset::Fig4),
            [
                "fig4_chain_m2_udd.csv",
                "fig4_chain_m2_uuu.csv",
                "fig4_chain_m5_udd.csv",
                "fig4_chain_m5_uuu.csv"
            ]
        );
        assert_eq!(names(Preset::Fig5).len(), 4);
        assert!(names(Preset::Fig5)
            .iter()
            .all(|n| n.starts_with("fig5_zpnr_")));
        assert_eq!(
            names(Preset::Fig6),
            ["fig6_chain_m0_udd.csv", "fig6_zpnr_m0_udd.csv"]
        );
        assert_eq!(
            names(Preset::Fig7),
            [
                "fig7_chain_m2_udd.csv",
                "fig7_chain_m5_udd.csv",
                "fig7_zpnr_m2_udd.csv",
                "fig7_zpnr_m5_udd.csv"
            ]
        );
        assert_eq!(
            names(Preset::Fig8),
            ["fig8_zpnr_m2_udd_u10.csv", "fig8_zpnr_m2_udd_u100.csv"]
        );
    }

    #[test]
    fn fig8_curves_differ_only_in_coupling() {
        let curves = Preset::Fig8.curves(Path::new("."), &SweepConfig::default());
        assert_eq!(curves[0].1.u_prime, 10.0);
        assert_eq!(curves[1].1.u_prime, 100.0);
        for (_, c) in &curves {
            assert_eq!(
                (c.model, c.m, c.initial.to_string().as_str()),
                (ModelKind::Zpnr, 2, "udd")
            );
            assert_eq!(c.output.parent().unwrap(), Path::new("."));
        }
    }

    #[test]
    fn preset_names_parse() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig9".parse::<Preset>().is_err());
    }
}
