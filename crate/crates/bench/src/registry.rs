//! Name parsing for problems and transforms.
//!
//! Names take optional inline parameters: `euler-divergent:z=3`,
//! `osada:theta=1/2`, `model-linear:xi=0.5,eta=-1,coeffs=1;0.5`.

use std::collections::BTreeMap;

use seqaccel::problems::ProblemKind;
use seqaccel::TransformSpec;

use crate::error::BenchError;

/// Pseudo-transform reporting the untransformed partial sums.
pub const PARTIAL_SUMS: &str = "partial-sums";

pub const TRANSFORM_NAMES: [&str; 10] = [
    PARTIAL_SUMS,
    "seps",
    "epsilon",
    "rho",
    "osada",
    "theta",
    "iterated-theta",
    "iterated-aitken",
    "levin-u",
    "levin-v",
];

/// Fallback parameter values for names given without inline parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defaults {
    pub beta: f64,
    pub theta: f64,
    pub z: f64,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults {
            beta: 1.0,
            theta: 1.0,
            z: 1.0,
        }
    }
}

/// A transform selected by name.
#[derive(Debug, Clone)]
pub enum Method {
    PartialSums,
    Transform(TransformSpec),
}

/// Parse `p` or `p/q`.
pub fn parse_number(s: &str) -> Result<f64, BenchError> {
    let bad = || BenchError::Config(format!("not a number: {s:?}"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn split(spec: &str) -> Result<(&str, BTreeMap<String, String>), BenchError> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), Some(r)),
        None => (spec.trim(), None),
    };
    let mut params = BTreeMap::new();
    for pair in rest.into_iter().flat_map(|r| r.split(',')).filter(|p| !p.trim().is_empty()) {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| BenchError::Config(format!("parameter {pair:?} in {spec:?} lacks '='")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name, params))
}

struct Params<'a> {
    spec: &'a str,
    map: BTreeMap<String, String>,
}

impl Params<'_> {
    fn number(&mut self, key: &str, default: Option<f64>) -> Result<f64, BenchError> {
        match self.map.remove(key) {
            Some(v) => parse_number(&v),
            None => default.ok_or_else(|| {
                BenchError::Config(format!("{:?} needs parameter {key}", self.spec))
            }),
        }
    }

    fn list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>, BenchError> {
        match self.map.remove(key) {
            Some(v) => v.split(';').map(parse_number).collect(),
            None => Ok(default.to_vec()),
        }
    }

    fn finish(self) -> Result<(), BenchError> {
        match self.map.keys().next() {
            Some(k) => Err(BenchError::Config(format!("unknown parameter {k:?} in {:?}", self.spec))),
            None => Ok(()),
        }
    }
}

fn suggestions(name: &str, known: &[&str]) -> Vec<String> {
    let mut scored: Vec<(f64, &str)> = known
        .iter()
        .map(|k| (strsim::jaro_winkler(name, k), *k))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(b.1)));
    scored.into_iter().map(|(_, k)| k.to_string()).collect()
}

pub fn parse_problem(spec: &str, defaults: &Defaults) -> Result<ProblemKind, BenchError> {
    let (name, map) = split(spec)?;
    let mut p = Params { spec, map };
    let kind = match name {
        "alt-ln2" => ProblemKind::AltLn2,
        "mono-ln5" => ProblemKind::MonoLn5,
        "euler-gamma" => ProblemKind::EulerGamma,
        "lemniscate" => ProblemKind::Lemniscate,
        "rbf-invz" => ProblemKind::RbfInvZ {
            z: p.number("z", Some(defaults.z))?,
        },
        "euler-divergent" => ProblemKind::EulerDivergent {
            z: p.number("z", Some(defaults.z))?,
        },
        "geometric" => ProblemKind::Geometric {
            z: p.number("z", Some(0.5))?,
        },
        "model-log" => ProblemKind::ModelLog {
            eta: p.number("eta", Some(-1.0))?,
            coeffs: p.list("coeffs", &[1.0])?,
        },
        "model-linear" => ProblemKind::ModelLinear {
            xi: p.number("xi", Some(0.5))?,
            eta: p.number("eta", Some(-1.0))?,
            coeffs: p.list("coeffs", &[1.0])?,
        },
        "model-hyper" => ProblemKind::ModelHyper {
            xi: p.number("xi", Some(1.0))?,
            r: p.number("r", Some(1.0))?,
            eta: p.number("eta", Some(0.0))?,
            coeffs: p.list("coeffs", &[1.0])?,
        },
        _ => {
            return Err(BenchError::UnknownProblem {
                name: name.to_string(),
                suggestions: suggestions(name, &ProblemKind::NAMES),
            })
        }
    };
    p.finish()?;
    Ok(kind)
}

pub fn parse_transform(spec: &str, defaults: &Defaults) -> Result<Method, BenchError> {
    let (name, map) = split(spec)?;
    let mut p = Params { spec, map };
    let m = match name {
        PARTIAL_SUMS => Method::PartialSums,
        "seps" => Method::Transform(TransformSpec::Seps),
        "epsilon" => Method::Transform(TransformSpec::Epsilon),
        "rho" => Method::Transform(TransformSpec::RhoStandard),
        "osada" => Method::Transform(TransformSpec::RhoOsada {
            theta: p.number("theta", Some(defaults.theta))?,
        }),
        "theta" => Method::Transform(TransformSpec::Theta),
        "iterated-theta" => Method::Transform(TransformSpec::IteratedTheta),
        "iterated-aitken" => Method::Transform(TransformSpec::IteratedAitken),
        "levin-u" => Method::Transform(TransformSpec::LevinU {
            beta: p.number("beta", Some(defaults.beta))?,
        }),
        "levin-v" => Method::Transform(TransformSpec::LevinV {
            beta: p.number("beta", Some(defaults.beta))?,
        }),
        _ => {
            return Err(BenchError::UnknownTransform {
                name: name.to_string(),
                suggestions: suggestions(name, &TRANSFORM_NAMES),
            })
        }
    };
    p.finish()?;
    if let Method::Transform(t) = &m {
        t.validate()?;
    }
    Ok(m)
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

/// Canonical label of a problem, with all parameters spelled out.
pub fn problem_label(kind: &ProblemKind) -> String {
    let name = kind.name();
    match kind {
        ProblemKind::RbfInvZ { z } | ProblemKind::EulerDivergent { z } | ProblemKind::Geometric { z } => {
            format!("{name}:z={z}")
        }
        ProblemKind::ModelLog { eta, coeffs } => format!("{name}:coeffs={},eta={eta}", fmt_list(coeffs)),
        ProblemKind::ModelLinear { xi, eta, coeffs } => {
            format!("{name}:coeffs={},eta={eta},xi={xi}", fmt_list(coeffs))
        }
        ProblemKind::ModelHyper { xi, r, eta, coeffs } => {
            format!("{name}:coeffs={},eta={eta},r={r},xi={xi}", fmt_list(coeffs))
        }
        _ => name.to_string(),
    }
}

/// Canonical label of a transform.
pub fn method_label(m: &Method) -> String {
    match m {
        Method::PartialSums => PARTIAL_SUMS.to_string(),
        Method::Transform(t) => {
            let name = t.name();
            match t {
                TransformSpec::RhoOsada { theta } => format!("{name}:theta={theta}"),
                TransformSpec::LevinU { beta } | TransformSpec::LevinV { beta } => {
                    format!("{name}:beta={beta}")
                }
                _ => name.to_string(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_parameters() {
        let d = Defaults::default();
        let k = parse_problem("euler-divergent:z=1/2", &d).unwrap();
        assert_eq!(k, ProblemKind::EulerDivergent { z: 0.5 });
        assert_eq!(problem_label(&k), "euler-divergent:z=0.5");
        let m = parse_transform("osada:theta=1/2", &d).unwrap();
        assert_eq!(method_label(&m), "osada:theta=0.5");
        let k = parse_problem("model-linear:xi=0.5,coeffs=1;0.5", &d).unwrap();
        assert_eq!(
            k,
            ProblemKind::ModelLinear {
                xi: 0.5,
                eta: -1.0,
                coeffs: vec![1.0, 0.5]
            }
        );
    }

    #[test]
    fn defaults_fill_missing_parameters() {
        let d = Defaults {
            beta: 2.0,
            theta: 0.25,
            z: 3.0,
        };
        assert_eq!(
            parse_problem("euler-divergent", &d).unwrap(),
            ProblemKind::EulerDivergent { z: 3.0 }
        );
        assert_eq!(method_label(&parse_transform("osada", &d).unwrap()), "osada:theta=0.25");
        assert_eq!(method_label(&parse_transform("levin-u", &d).unwrap()), "levin-u:beta=2");
    }

    #[test]
    fn unknown_names() {
        let d = Defaults::default();
        match parse_transform("epsilom", &d) {
            Err(BenchError::UnknownTransform { suggestions, .. }) => assert_eq!(suggestions[0], "epsilon"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_problem("alt-ln3", &d),
            Err(BenchError::UnknownProblem { .. })
        ));
        assert!(parse_transform("seps:x=1", &d).is_err());
        assert!(parse_transform("osada:theta=-1", &d).is_err());
    }
}
