//! Oracle checks behind the `verify` subcommand.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use spinscatter::oracles::{
    quadrature_green, spinless_transfer, wave_matching, Incidence, QuadratureSpec,
};
use spinscatter::{scatter, Lattice, ScatterProblem, SpinLabel, ZpnrParams};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Chain,
    Zpnr,
    Greens,
}

impl FromStr for Scope {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "all" => Ok(Scope::All),
            "chain" => Ok(Scope::Chain),
            "zpnr" => Ok(Scope::Zpnr),
            "greens" => Ok(Scope::Greens),
            _ => Err(CliError::Config(format!(
                "unknown scope {s:?} (expected all, chain, zpnr or greens)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.max_deviation < self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} max deviation {:.3e}  tolerance {:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.max_deviation,
            self.tolerance
        )
    }
}

fn grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.01 + (std::f64::consts::PI - 0.02) * i as f64 / (n - 1) as f64)
        .collect()
}

fn max_over<T: Sync>(items: &[T], f: impl Fn(&T) -> f64 + Sync + Send) -> f64 {
    items.par_iter().map(f).reduce(
        || 0.0,
        |a, b| {
            if a.is_nan() || b.is_nan() {
                f64::NAN
            } else {
                a.max(b)
            }
        },
    )
}

fn cases(
    lattice_of: fn(f64) -> Lattice,
    ms: &[usize],
    us: &[f64],
    k: usize,
) -> Vec<ScatterProblem> {
    let mut out = Vec::new();
    for &m in ms {
        for &u in us {
            for init in SpinLabel::all() {
                for &k0 in &grid(k) {
                    out.push(ScatterProblem::new(lattice_of(u), m, k0, init.into()));
                }
            }
        }
    }
    out
}

fn unitarity(name: &'static str, lattice_of: fn(f64) -> Lattice) -> Check {
    let problems = cases(lattice_of, &[0, 1, 2, 5], &[1.0, 10.0, 100.0], 512);
    Check {
        name,
        max_deviation: max_over(&problems, |p| match scatter(p) {
            Ok(o) => (o.reflection + o.transmission - 1.0).abs(),
            Err(_) => f64::NAN,
        }),
        tolerance: 1e-10,
    }
}

fn chain_checks() -> Vec<Check> {
    let problems = cases(Lattice::chain_with_u_prime, &[0, 1, 2, 5], &[1.0, 10.0], 32);
    let wave = Check {
        name: "chain wave matching",
        max_deviation: max_over(&problems, |p| {
            let (Ok(e), Ok(w)) = (scatter(p), wave_matching(p, Incidence::Left)) else {
                return f64::NAN;
            };
            [
                (e.reflection - w.reflection).abs(),
                (e.transmission - w.transmission).abs(),
                (e.reflected - w.reflected).norm_sqr().sqrt(),
                (e.transmitted - w.transmitted).norm_sqr().sqrt(),
            ]
            .into_iter()
            .fold(0.0, f64::max)
        }),
        tolerance: 1e-10,
    };
    let polarized: Vec<(ScatterProblem, f64)> = ["uuu", "ddd"]
        .into_iter()
        .flat_map(|init| {
            let label = SpinLabel::parse(init).expect("valid label");
            [0usize, 1, 2, 5].into_iter().flat_map(move |m| {
                [1.0, 10.0, 100.0].into_iter().flat_map(move |u| {
                    grid(512).into_iter().map(move |k| {
                        (
                            ScatterProblem::new(Lattice::chain_with_u_prime(u), m, k, label.into()),
                            u,
                        )
                    })
                })
            })
        })
        .collect();
    let spinless = Check {
        name: "chain spinless reduction",
        max_deviation: max_over(&polarized, |(p, u)| {
            match (
                scatter(p),
                spinless_transfer(1.0, u / 4.0, p.separation, p.k0),
            ) {
                (Ok(e), Ok(t)) => (e.transmission - t).abs(),
                _ => f64::NAN,
            }
        }),
        tolerance: 1e-10,
    };
    vec![
        wave,
        spinless,
        unitarity("chain unitarity", Lattice::chain_with_u_prime),
    ]
}

fn greens_checks() -> Vec<Check> {
    let params = ZpnrParams::default();
    let spec = QuadratureSpec::default();
    let mut closed_dev = 0.0f64;
    let mut halving_ratio = 0.0f64;
    for k0 in [0.5, 1.0, std::f64::consts::FRAC_PI_2, 2.0, 2.5] {
        for m in [0u64, 1, 2, 5] {
            let closed = if m == 0 {
                params.green_diag(k0)
            } else {
                params.green_offdiag(m, k0)
            };
            match (closed, quadrature_green(&params, m, k0, &spec)) {
                (Ok(c), Ok(q)) => {
                    closed_dev = closed_dev.max((q.value - c).norm());
                    let d0 = (q.raw[0].1 - c).norm();
                    let d1 = (q.raw[1].1 - c).norm();
                    halving_ratio = halving_ratio.max(d1 / d0);
                }
                _ => {
                    closed_dev = f64::NAN;
                    halving_ratio = f64::NAN;
                }
            }
        }
    }
    vec![
        Check {
            name: "zpnr green vs quadrature",
            max_deviation: closed_dev,
            tolerance: 1e-3,
        },
        // Ratio of the errors at eta/2 and eta; below one means convergence in eta.
        Check {
            name: "zpnr quadrature eta halving",
            max_deviation: halving_ratio,
            tolerance: 1.0,
        },
    ]
}

pub fn run_verify(scope: Scope) -> Vec<Check> {
    let mut checks = Vec::new();
    if matches!(scope, Scope::All | Scope::Chain) {
        checks.extend(chain_checks());
    }
    if matches!(scope, Scope::All | Scope::Zpnr) {
        checks.push(unitarity("zpnr unitarity", Lattice::zpnr_with_u_prime));
    }
    if matches!(scope, Scope::All | Scope::Greens) {
        checks.extend(greens_checks());
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails_a_check() {
        let c = Check {
            name: "x",
            max_deviation: f64::NAN,
            tolerance: 1.0,
        };
        assert!(!c.passed());
        assert!(c.to_string().starts_with("FAIL"));
    }

    #[test]
    fn chain_scope_passes() {
        let checks = run_verify(Scope::Chain);
        assert_eq!(checks.len(), 3);
        for c in checks {
            assert!(c.passed(), "{c}");
        }
    }

    #[test]
    fn scope_names() {
        assert_eq!("greens".parse::<Scope>().unwrap(), Scope::Greens);
        assert!("everything".parse::<Scope>().is_err());
    }
}
