//! `bounds <id> [--case C] [--params k=v ...] [--key value ...]`.
//!
//! Keys are matched after mapping `_` to `-`; `R` and `reg` both name the
//! regularity. Any key a theorem does not read is rejected.

use std::collections::BTreeMap;

use pfaff_core::bounds::{
    decomposable_bound, flag_degree_check, isolated_flag_verdict, logarithmic_bounds,
    logarithmic_stability, p3_distribution_stability, pullback_bounds, pullback_stability,
    split_distribution_check, BoundError, BoundReport, DecomposableVariant, EchoValue,
    FlagExclusion, LogarithmicCase, LogarithmicData, P3Stability, PullbackCase, PullbackData,
    Stability,
};
use serde_json::{Map, Value};

use crate::output::{rational, Format, Report};
use crate::{CliError, Produced};

pub const THEOREMS: [&str; 10] = [
    "cor1.2", "cor1.4", "cor1.5", "cor1.7", "thm6.1", "cor6.2", "thm6.3", "cor6.4", "thm6.5",
    "cor6.6",
];

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Params {
    values: BTreeMap<String, String>,
    case: Option<String>,
    format: Option<Format>,
}

impl Params {
    fn parse(args: &[String]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut case = None;
        let mut format = None;
        let mut insert = |key: &str, value: &str| -> Result<(), CliError> {
            let key = match key.replace('_', "-").as_str() {
                "R" | "reg" | "regularity" => "reg".to_owned(),
                k => k.to_owned(),
            };
            if values.insert(key.clone(), value.to_owned()).is_some() {
                return Err(usage(format!("parameter {key} given twice")));
            }
            Ok(())
        };
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            let Some(flag) = arg.strip_prefix("--") else {
                return Err(usage(format!("unexpected argument {arg:?}")));
            };
            let (flag, inline) = match flag.split_once('=') {
                Some((f, v)) => (f, Some(v.to_owned())),
                None => (flag, None),
            };
            let mut value = || -> Result<String, CliError> {
                match &inline {
                    Some(v) => Ok(v.clone()),
                    None => it
                        .next()
                        .cloned()
                        .ok_or_else(|| usage(format!("--{flag} needs a value"))),
                }
            };
            match flag {
                "case" => case = Some(value()?),
                "format" => {
                    let v = value()?;
                    format = Some(
                        <Format as clap::ValueEnum>::from_str(&v, true)
                            .map_err(|_| usage(format!("unknown format {v:?}")))?,
                    );
                }
                "params" => {
                    let mut any = false;
                    if let Some(v) = &inline {
                        any = true;
                        for kv in v.split(',') {
                            let (k, v) = kv
                                .split_once('=')
                                .ok_or_else(|| usage(format!("expected key=value, got {kv:?}")))?;
                            insert(k, v)?;
                        }
                    }
                    while let Some(next) = it.peek() {
                        if next.starts_with("--") {
                            break;
                        }
                        let kv = it.next().expect("peeked");
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| usage(format!("expected key=value, got {kv:?}")))?;
                        insert(k, v)?;
                        any = true;
                    }
                    if !any {
                        return Err(usage("--params needs at least one key=value"));
                    }
                }
                key => {
                    let v = value()?;
                    insert(key, &v)?;
                }
            }
        }
        Ok(Params {
            values,
            case,
            format,
        })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    fn opt_u64(&mut self, key: &str) -> Result<Option<u64>, CliError> {
        self.take(key)
            .map(|v| {
                v.trim()
                    .parse()
                    .map_err(|_| usage(format!("{key} must be a natural number, got {v:?}")))
            })
            .transpose()
    }

    fn u64(&mut self, key: &str) -> Result<u64, CliError> {
        self.opt_u64(key)?
            .ok_or_else(|| usage(format!("missing parameter {key}")))
    }

    fn i64(&mut self, key: &str) -> Result<i64, CliError> {
        let v = self
            .take(key)
            .ok_or_else(|| usage(format!("missing parameter {key}")))?;
        v.trim()
            .parse()
            .map_err(|_| usage(format!("{key} must be an integer, got {v:?}")))
    }

    fn opt_list(&mut self, key: &str) -> Result<Option<Vec<u64>>, CliError> {
        self.take(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim()
                            .parse()
                            .map_err(|_| usage(format!("{key} must be a comma separated list of naturals")))
                    })
                    .collect()
            })
            .transpose()
    }

    fn finish(self) -> Result<(), CliError> {
        if let Some(k) = self.values.keys().next() {
            return Err(usage(format!("unknown parameter {k}")));
        }
        if let Some(c) = self.case {
            return Err(usage(format!("this theorem takes no --case (got {c:?})")));
        }
        Ok(())
    }

    fn take_case(&mut self) -> Result<String, CliError> {
        self.case
            .take()
            .map(|c| c.to_ascii_lowercase().replace(['-', '_'], ""))
            .ok_or_else(|| usage("--case is required"))
    }
}

fn bound_error(e: BoundError) -> CliError {
    match e {
        BoundError::DegreeOneDistribution => CliError::Compute(e.to_string()),
        _ => usage(e.to_string()),
    }
}

fn echo_value(v: &EchoValue) -> Value {
    match v {
        EchoValue::Int(x) => Value::from(*x),
        EchoValue::List(xs) => Value::from(xs.clone()),
    }
}

fn report_bound(id: &str, b: &BoundReport) -> Report {
    let mut r = Report::new("bounds");
    let inputs: Map<String, Value> = b
        .inputs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), echo_value(v)))
        .collect();
    r.set("theorem", id)
        .set("case", b.case.name())
        .set("lhs", rational(&b.lhs))
        .set("rhs", rational(&b.rhs))
        .set("holds", b.holds)
        .set("inputs", Value::Object(inputs))
        .set("notes", b.notes.clone());
    r
}

fn report_verdict(id: &str, verdict: &str, inputs: &[(&str, i64)]) -> Report {
    let mut r = Report::new("bounds");
    let inputs: Map<String, Value> = inputs
        .iter()
        .map(|(k, v)| ((*k).to_owned(), Value::from(*v)))
        .collect();
    r.set("theorem", id)
        .set("verdict", verdict)
        .set("inputs", Value::Object(inputs));
    r
}

fn stability_name(s: Stability) -> &'static str {
    match s {
        Stability::Stable => "Stable",
        Stability::Semistable => "Semistable",
        Stability::Inconclusive => "Inconclusive",
    }
}

fn signed(x: u64) -> i64 {
    x as i64
}

fn indices(list: Option<Vec<u64>>) -> Vec<usize> {
    list.unwrap_or_default().into_iter().map(|i| i as usize).collect()
}

pub(crate) fn run(args: &[String]) -> Result<Produced, CliError> {
    let (id, rest) = args.split_first().ok_or_else(|| usage("missing theorem id"))?;
    let id = id.to_ascii_lowercase();
    let mut p = Params::parse(rest)?;
    let format = p.format;
    let report = match id.as_str() {
        "cor1.2" => {
            let f = p.u64("deg-f")?;
            let g = p.i64("deg-g")?;
            p.finish()?;
            report_bound(&id, &flag_degree_check(f, g))
        }
        "cor1.4" => {
            let dd = p.u64("deg-d")?;
            let dim = p.u64("dim-d")?;
            let g = p.i64("deg-g")?;
            p.finish()?;
            report_bound(&id, &split_distribution_check(dd, dim, g).map_err(bound_error)?)
        }
        "cor1.5" => {
            let n = p.u64("n")?;
            let f = p.u64("deg-f")?;
            let g = p.u64("deg-g")?;
            p.finish()?;
            let v = match isolated_flag_verdict(n, f, g) {
                FlagExclusion::NoSuchFlag => "NoSuchFlag",
                FlagExclusion::NotExcluded => "NotExcluded",
            };
            report_verdict(&id, v, &[("n", signed(n)), ("deg_f", signed(f)), ("deg_g", signed(g))])
        }
        "cor1.7" => {
            let m = p.u64("m")?;
            p.finish()?;
            let v = match p3_distribution_stability(m).map_err(bound_error)? {
                P3Stability::Stable => "Stable",
                P3Stability::SemistableOnly => "SemistableOnly",
            };
            report_verdict(&id, v, &[("m", signed(m))])
        }
        "thm6.1" => {
            let case = match p.take_case()?.as_str() {
                "smoothhypersurface" | "smooth" => LogarithmicCase::SmoothHypersurface,
                "normalcrossing" | "nc" => LogarithmicCase::NormalCrossing,
                "curvesmooth" => LogarithmicCase::CurveSmooth,
                "curvenodal" => LogarithmicCase::CurveNodal,
                "ciregularity" => LogarithmicCase::CiRegularity,
                "cinonsingcodim1" => LogarithmicCase::CiNonsingCodim1,
                c => return Err(usage(format!("unknown case {c:?} for thm6.1"))),
            };
            let mut sel = indices(p.opt_list("i")?);
            if let Some(more) = p.opt_list("indices")? {
                if !sel.is_empty() {
                    return Err(usage("give either i or indices"));
                }
                sel = indices(Some(more));
            }
            let data = LogarithmicData {
                n: p.u64("n")?,
                p: p.u64("p")?,
                degrees: p
                    .opt_list("degrees")?
                    .ok_or_else(|| usage("missing parameter degrees"))?,
                selected: sel,
                regularity: p.opt_u64("reg")?,
                deg_f: p.u64("deg-f")?,
            };
            p.finish()?;
            report_bound(&id, &logarithmic_bounds(&data, case).map_err(bound_error)?)
        }
        "cor6.2" => {
            let n = p.u64("n")?;
            let abs_d = p.u64("abs-d")?;
            let di = p.u64("d-i")?;
            p.finish()?;
            let v = stability_name(logarithmic_stability(n, abs_d, di));
            report_verdict(&id, v, &[("n", signed(n)), ("abs_d", signed(abs_d)), ("d_i", signed(di))])
        }
        "thm6.3" => {
            let case = match p.take_case()?.as_str() {
                "invariantsmooth" => PullbackCase::InvariantSmooth,
                "invariantnc" => PullbackCase::InvariantNc,
                "singcompintregularity" => PullbackCase::CiRegularity,
                "singcompintnonsingcodim1" => PullbackCase::CiNonsingCodim1,
                c => return Err(usage(format!("unknown case {c:?} for thm6.3"))),
            };
            let data = PullbackData {
                n: p.u64("n")?,
                m: p.u64("m")?,
                k: p.u64("k")?,
                r: p.u64("r")?,
                hypersurface_degree: p.opt_u64("d")?,
                component_degrees: p.opt_list("degrees")?,
                regularity: p.opt_u64("reg")?,
                deg_f: p.u64("deg-f")?,
            };
            p.finish()?;
            report_bound(&id, &pullback_bounds(&data, case).map_err(bound_error)?)
        }
        "cor6.4" => {
            let case = match p.take_case()?.as_str() {
                "regularity" | "singcompintregularity" => PullbackCase::CiRegularity,
                "nonsingcodim1" | "singcompintnonsingcodim1" => PullbackCase::CiNonsingCodim1,
                c => return Err(usage(format!("unknown case {c:?} for cor6.4"))),
            };
            let data = PullbackData::point_preimage(
                p.u64("n")?,
                p.u64("m")?,
                p.u64("k")?,
                p.u64("deg-f")?,
                p.opt_u64("reg")?,
            );
            p.finish()?;
            report_bound(&id, &pullback_bounds(&data, case).map_err(bound_error)?)
        }
        "thm6.5" => {
            let variant = match p.take_case()?.as_str() {
                "general" => DecomposableVariant::General,
                "completeintersection" | "ci" => DecomposableVariant::CompleteIntersection,
                "equaldegrees" => DecomposableVariant::EqualDegrees,
                c => return Err(usage(format!("unknown case {c:?} for thm6.5"))),
            };
            let dd = p.u64("deg-d")?;
            let degrees = p
                .opt_list("omega-degrees")?
                .ok_or_else(|| usage("missing parameter omega-degrees"))?;
            p.finish()?;
            report_bound(&id, &decomposable_bound(dd, &degrees, variant).map_err(bound_error)?)
        }
        "cor6.6" => {
            let n = p.u64("n")?;
            let k = p.u64("k")?;
            let d = p.u64("d")?;
            p.finish()?;
            let v = stability_name(pullback_stability(n, k, d).map_err(bound_error)?);
            report_verdict(&id, v, &[("n", signed(n)), ("k", signed(k)), ("d", signed(d))])
        }
        other => {
            return Err(usage(format!(
                "unknown theorem id {other:?}; expected one of {}",
                THEOREMS.join(", ")
            )))
        }
    };
    Ok(Produced {
        report,
        failed: false,
        format,
    })
}
