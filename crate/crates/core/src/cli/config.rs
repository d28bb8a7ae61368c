//! Problem files: flat `key = value` lines with dotted sections.
//!
//! ```text
//! # quartic benchmark
//! interval.a = 0
//! interval.b = 1
//! gfun.kind = power
//! gfun.dimension = 1
//! gfun.exponent = 2
//! gfun.coefficient = 0.5
//! F.kind = g_of_v
//! V.kind = neg_power
//! V.kappa = 1
//! V.theta = 4
//! f.kind = zero
//! witness.theta_F = 2
//! witness.theta_V = 4
//! witness.Lambda = 1
//! witness.r0 = 1
//! witness.rho0 = 0.5
//! witness.g.kind = constant
//! witness.g.value = 0.0625
//! grid.n = 64
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::path::Path;
use std::sync::Arc;

use crate::gfun::{GFunctionSpec, Regime};
use crate::orlicz::read_csv;
use crate::problem::{
    CatalogKinetic, CatalogPotential, Forcing, KineticKind, PotentialKind, ProblemSpec, Profile, Witnesses,
};

use super::CliError;

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub spec: ProblemSpec,
    /// `grid.n`, 64 when absent.
    pub grid_n: usize,
}

const DEFAULT_GRID_N: usize = 64;

const KNOWN_KEYS: &[&str] = &[
    "interval.a",
    "interval.b",
    "gfun.kind",
    "gfun.dimension",
    "gfun.exponent",
    "gfun.coefficient",
    "gfun.exponents",
    "gfun.coefficients",
    "gfun.regime",
    "F.kind",
    "F.c",
    "F.epsilon",
    "V.kind",
    "V.kappa",
    "V.theta",
    "V.kappa1",
    "V.kappa2",
    "f.kind",
    "f.value",
    "f.path",
    "witness.theta_F",
    "witness.theta_V",
    "witness.Lambda",
    "witness.r0",
    "witness.rho0",
    "witness.a.kind",
    "witness.a.value",
    "witness.a.coefficients",
    "witness.b.kind",
    "witness.b.value",
    "witness.b.coefficients",
    "witness.g.kind",
    "witness.g.value",
    "witness.g.coefficients",
    "grid.n",
];

struct Entries {
    map: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                });
            }
            if map
                .insert(key.to_string(), (line_no, value.trim().to_string()))
                .is_some()
            {
                return Err(CliError::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        Ok(Self { map })
    }

    fn raw(&self, key: &str) -> Option<&(usize, String)> {
        self.map.get(key)
    }

    fn text(&self, key: &str) -> Result<&str, CliError> {
        self.raw(key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| CliError::Missing(key.into()))
    }

    fn text_or<'a>(&'a self, key: &str, default: &'a str) -> &'a str {
        self.raw(key).map_or(default, |(_, v)| v.as_str())
    }

    fn number_at(line: usize, key: &str, s: &str) -> Result<f64, CliError> {
        s.trim().parse::<f64>().map_err(|_| CliError::Parse {
            line,
            message: format!("`{key}`: `{s}` is not a number"),
        })
    }

    fn number(&self, key: &str) -> Result<f64, CliError> {
        let (line, v) = self.raw(key).ok_or_else(|| CliError::Missing(key.into()))?;
        Self::number_at(*line, key, v)
    }

    fn number_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        if self.raw(key).is_some() {
            self.number(key)
        } else {
            Ok(default)
        }
    }

    fn list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let (line, v) = self.raw(key).ok_or_else(|| CliError::Missing(key.into()))?;
        v.split(',').map(|s| Self::number_at(*line, key, s)).collect()
    }

    fn count(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.raw(key) {
            None => Ok(default),
            Some((line, v)) => v.parse::<usize>().map_err(|_| CliError::Parse {
                line: *line,
                message: format!("`{key}`: `{v}` is not a nonnegative integer"),
            }),
        }
    }

    fn unknown_kind(&self, key: &str, allowed: &str) -> CliError {
        let (line, v) = self.raw(key).cloned().unwrap_or((0, String::new()));
        CliError::Parse {
            line,
            message: format!("`{key}`: unknown kind `{v}` (expected one of {allowed})"),
        }
    }
}

fn invalid(field: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid {
        field: field.into(),
        message: e.to_string(),
    }
}

fn gfun(e: &Entries) -> Result<GFunctionSpec, CliError> {
    let kind = e.text("gfun.kind")?;
    let g = match kind {
        "power" | "power_log" => {
            let dim = e.count("gfun.dimension", 1)?;
            let p = e.number("gfun.exponent")?;
            let c = e.number_or("gfun.coefficient", 1.0 / p)?;
            let built = if kind == "power" {
                GFunctionSpec::power(dim, p, c)
            } else {
                GFunctionSpec::power_log(dim, p, c)
            };
            built.map_err(|err| invalid("gfun.exponent", err))?
        }
        "sum_power" => {
            let p = e.list("gfun.exponents")?;
            let c = match e.raw("gfun.coefficients") {
                Some(_) => e.list("gfun.coefficients")?,
                None => p.iter().map(|pi| 1.0 / pi).collect(),
            };
            GFunctionSpec::sum_power(p, c).map_err(|err| invalid("gfun.exponents", err))?
        }
        _ => return Err(e.unknown_kind("gfun.kind", "power, sum_power, power_log")),
    };
    match e.raw("gfun.regime") {
        None => Ok(g),
        Some((_, r)) => Ok(g.with_regime(r.parse::<Regime>().map_err(|err| invalid("gfun.regime", err))?)),
    }
}

fn profile(e: &Entries, name: &str, default: f64) -> Result<Profile, CliError> {
    let kind_key = format!("witness.{name}.kind");
    match e.text_or(&kind_key, "constant") {
        "constant" => Ok(Profile::Constant(
            e.number_or(&format!("witness.{name}.value"), default)?,
        )),
        "polynomial" => Ok(Profile::Polynomial(e.list(&format!("witness.{name}.coefficients"))?)),
        _ => Err(e.unknown_kind(&kind_key, "constant, polynomial")),
    }
}

fn forcing(e: &Entries, dim: usize, interval: (f64, f64), base: &Path) -> Result<Forcing, CliError> {
    match e.text_or("f.kind", "zero") {
        "zero" => Ok(Forcing::Zero),
        "constant" => Ok(Forcing::Constant(e.list("f.value")?)),
        "samples" => {
            let rel = e.text("f.path")?;
            let path = base.join(rel);
            let file = File::open(&path).map_err(|err| CliError::Io {
                path: path.clone(),
                message: err.to_string(),
            })?;
            let g = read_csv(file).map_err(|err| invalid("f.path", err))?;
            if g.dim() != dim || (g.a(), g.b()) != interval {
                return Err(invalid(
                    "f.path",
                    format!(
                        "samples must cover [{}, {}] with {dim} components",
                        interval.0, interval.1
                    ),
                ));
            }
            Ok(Forcing::Samples(g))
        }
        _ => Err(e.unknown_kind("f.kind", "zero, constant, samples")),
    }
}

/// Parses problem-file text. Relative sample paths resolve against `base`.
pub fn parse_problem(text: &str, base: &Path) -> Result<ProblemFile, CliError> {
    let e = Entries::parse(text)?;
    let interval = (e.number("interval.a")?, e.number("interval.b")?);
    let g = gfun(&e)?;
    let dim = g.dimension();

    let kinetic_kind = match e.text_or("F.kind", "g_of_v") {
        "g_of_v" => KineticKind::GOfV,
        "scaled_g" => KineticKind::ScaledG { c: e.number("F.c")? },
        "x_modulated" => KineticKind::XModulated {
            epsilon: e.number("F.epsilon")?,
        },
        _ => return Err(e.unknown_kind("F.kind", "g_of_v, scaled_g, x_modulated")),
    };
    let kinetic = CatalogKinetic::new(kinetic_kind, g.clone()).map_err(invalid_problem)?;

    let potential_kind = match e.text_or("V.kind", "zero") {
        "zero" => PotentialKind::Zero,
        "neg_power" => PotentialKind::NegPower {
            kappa: e.number("V.kappa")?,
            theta: e.number("V.theta")?,
        },
        "well" => PotentialKind::Well {
            kappa1: e.number("V.kappa1")?,
            kappa2: e.number("V.kappa2")?,
            theta: e.number("V.theta")?,
        },
        _ => return Err(e.unknown_kind("V.kind", "zero, neg_power, well")),
    };
    let potential = CatalogPotential::new(potential_kind, dim).map_err(invalid_problem)?;

    let d = Witnesses::default();
    let witnesses = Witnesses {
        a: profile(&e, "a", 1.0)?,
        b: profile(&e, "b", 0.0)?,
        theta_f: e.number("witness.theta_F")?,
        theta_v: e.number("witness.theta_V")?,
        lambda: e.number_or("witness.Lambda", d.lambda)?,
        r0: e.number("witness.r0")?,
        rho0: e.number("witness.rho0")?,
        g: profile(&e, "g", 0.0)?,
    };
    let f = forcing(&e, dim, interval, base)?;
    let spec =
        ProblemSpec::new(interval, g, Arc::new(kinetic), Arc::new(potential), f, witnesses).map_err(invalid_problem)?;
    let grid_n = e.count("grid.n", DEFAULT_GRID_N)?;
    if grid_n < 2 {
        return Err(invalid("grid.n", "need n >= 2"));
    }
    Ok(ProblemFile { spec, grid_n })
}

fn invalid_problem(e: crate::error::ProblemError) -> CliError {
    match e {
        crate::error::ProblemError::Invariant { field, message } => CliError::Invalid { field, message },
        other => CliError::Invalid {
            field: "problem".into(),
            message: other.to_string(),
        },
    }
}

pub fn load_problem_file(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_problem(&text, &base)
}

/// Reads and validates a problem file.
pub fn load_problem(path: &Path) -> Result<ProblemSpec, CliError> {
    load_problem_file(path).map(|p| p.spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTIC: &str = "interval.a = 0\ninterval.b = 1\ngfun.kind = power\ngfun.exponent = 2\n\
        gfun.coefficient = 0.5\nF.kind = g_of_v\nV.kind = neg_power\nV.kappa = 1\nV.theta = 4\n\
        f.kind = zero\nwitness.theta_F = 2\nwitness.theta_V = 4\nwitness.Lambda = 1\n\
        witness.r0 = 1\nwitness.rho0 = 0.5\nwitness.g.kind = constant\nwitness.g.value = 0.0625\n";

    fn parse(text: &str) -> Result<ProblemFile, CliError> {
        parse_problem(text, Path::new("."))
    }

    #[test]
    fn quartic_file() {
        let p = parse(QUARTIC).unwrap();
        let w = p.spec.witnesses();
        assert_eq!((w.theta_f, w.theta_v, w.rho0), (2.0, 4.0, 0.5));
        assert_eq!(p.grid_n, 64);
        assert_eq!(p.spec.kinetic().label(), "g_of_v");
        assert_eq!(p.spec.potential().label(), "neg_power");
    }

    #[test]
    fn theta_order_is_enforced() {
        let text = QUARTIC.replace("witness.theta_V = 4", "witness.theta_V = 1.5");
        let err = parse(&text).unwrap_err();
        assert!(err.to_string().contains("θ_V > θ_F required"), "{err}");
        assert!(matches!(err, CliError::Invalid { ref field, .. } if field == "theta_V"));
    }

    #[test]
    fn bad_exponent_is_rejected() {
        let err = parse(&QUARTIC.replace("gfun.exponent = 2", "gfun.exponent = 0.5")).unwrap_err();
        assert!(
            matches!(err, CliError::Invalid { ref field, .. } if field == "gfun.exponent"),
            "{err}"
        );
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = parse(&format!("{QUARTIC}V.kapa = 2\n")).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 18, .. }), "{err:?}");
        let err = parse(&QUARTIC.replace("V.kappa = 1", "V.kappa = one")).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 8, .. }), "{err:?}");
        let err = parse(&format!("{QUARTIC}grid.n\n")).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 18, .. }), "{err:?}");
    }

    #[test]
    fn vector_forcing_and_anisotropic_g() {
        let text = QUARTIC
            .replace("gfun.exponent = 2\ngfun.coefficient = 0.5", "gfun.exponents = 2,3")
            .replace("gfun.kind = power", "gfun.kind = sum_power")
            .replace("f.kind = zero", "f.kind = constant\nf.value = 0.01,0")
            .replace("witness.theta_F = 2", "witness.theta_F = 3");
        let p = parse(&text).unwrap();
        assert_eq!(p.spec.dimension(), 2);
        assert_eq!(p.spec.forcing_at(0.5), vec![0.01, 0.0]);
    }
}
