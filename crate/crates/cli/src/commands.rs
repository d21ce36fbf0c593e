use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pfaff_core::bott::{Branch, CohomologyQuery};
use pfaff_core::counting::{
    example_field, oracle_pfaff_count, oracle_vf_count, pfaff_count, random_field,
    random_projective_form, vf_count, vf_oracle_columns, CountError, PfaffCountQuery, VfCountQuery,
};
use pfaff_core::flags::{
    check_decomposable_2form, check_integrability_codim1, check_vf_form_flag, degree_of_pfaff,
    example_5_1, sample_kernel_containment, FlagError,
};
use pfaff_core::polyforms::FormBasis;
use pfaff_core::{PolyForm, PolyVectorField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::output::{natural, rational, Report};
use crate::serial::{read_field, read_form, FieldJson, FormJson};
use crate::{
    bounds_args, grid, BottArgs, CheckFlagArgs, Cli, CliError, Command, CountFieldsArgs,
    CountFormsArgs, ExampleArgs, ExampleKind, ExampleSpec, FormOnly, FormOrExample,
    OracleFieldsArgs, OracleFormsArgs, Produced, Sheaf, SlopeArgs,
};

pub(crate) fn execute(cli: &Cli) -> Result<Produced, CliError> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Bott(a) => bott(a)?.into(),
        Command::CountForms(a) => count_forms(a)?.into(),
        Command::CountFields(a) => count_fields(a)?.into(),
        Command::OracleForms(a) => oracle_forms(a, seed)?.into(),
        Command::OracleFields(a) => oracle_fields(a, seed)?.into(),
        Command::CheckFlag(a) => check_flag(a, seed)?.into(),
        Command::CheckIntegrable(a) => check_integrable(a)?.into(),
        Command::CheckDecomposable(a) => check_decomposable(a)?.into(),
        Command::Bounds(a) => bounds_args::run(&a.args)?,
        Command::Slope(a) => slope(a)?.into(),
        Command::VerifyGrid(a) => grid::run(a, seed)?,
        Command::Example(a) => example(a, seed)?.into(),
    })
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn compute(e: impl ToString) -> CliError {
    CliError::Compute(e.to_string())
}

fn count_error(e: CountError) -> CliError {
    match e {
        CountError::InvalidQuery(_)
        | CountError::EvenDimension(_)
        | CountError::CoefficientCount { .. }
        | CountError::ZeroCoefficient => usage(e.to_string()),
        _ => compute(e),
    }
}

fn flag_error(e: FlagError) -> CliError {
    match e {
        FlagError::ZeroDegree | FlagError::ZeroCoefficient => usage(e.to_string()),
        _ => compute(e),
    }
}

fn load_form(path: &Path) -> Result<PolyForm, CliError> {
    read_form(path).map_err(|e| usage(e.to_string()))
}

fn load_field(path: &Path) -> Result<PolyVectorField, CliError> {
    read_field(path).map_err(|e| usage(e.to_string()))
}

/// Parses `3`, `-2` or `1/2`.
pub(crate) fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || usage(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_coefficients(items: &[String], default: Vec<BigRational>) -> Result<Vec<BigRational>, CliError> {
    if items.is_empty() {
        return Ok(default);
    }
    items.iter().map(|s| parse_rational(s)).collect()
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// `1, -1, 2, 3, 4, 5, ...`, the paired-field coefficients used by default.
fn default_paired(n: usize) -> Vec<BigRational> {
    (0..=n as i64)
        .map(|i| if i == 1 { int(-1) } else { int(i.max(1)) })
        .collect()
}

fn pencil(spec: &ExampleSpec) -> Result<(PolyVectorField, PolyForm), CliError> {
    match spec.example.as_deref() {
        Some("5.1") => {}
        Some(other) => return Err(usage(format!("unknown example {other:?}; expected 5.1"))),
        None => return Err(usage("no input given")),
    }
    let d = spec.d.ok_or_else(|| usage("--example 5.1 needs --d"))?;
    let a = parse_coefficients(&spec.a, vec![BigRational::one(); 4])?;
    let a: [BigRational; 4] = a
        .try_into()
        .map_err(|v: Vec<_>| usage(format!("--a needs 4 coefficients, got {}", v.len())))?;
    example_5_1(d, &a).map_err(flag_error)
}

fn bott(a: &BottArgs) -> Result<Report, CliError> {
    let q = CohomologyQuery::new(a.n, a.q, a.p, a.k).map_err(|e| usage(e.to_string()))?;
    let (branch, dim, keys) = match a.sheaf {
        Sheaf::Omega => (q.omega_branch(), q.h_omega(), ["q", "p", "k"]),
        Sheaf::Tangent => (q.tangent_branch(), q.h_tangent(), ["s", "r", "t"]),
    };
    let mut r = Report::new("bott");
    r.set("sheaf", if a.sheaf == Sheaf::Omega { "omega" } else { "tangent" })
        .set("n", a.n)
        .set(keys[0], a.q)
        .set(keys[1], a.p)
        .set(keys[2], a.k)
        .set(
            "branch",
            match branch {
                Branch::Sections => "sections",
                Branch::Diagonal => "diagonal",
                Branch::Top => "top",
                Branch::Vanishing => "vanishing",
            },
        )
        .set("dimension", natural(&dim));
    Ok(r)
}

fn count_forms(a: &CountFormsArgs) -> Result<Report, CliError> {
    let q = PfaffCountQuery::new(a.n, a.d, a.m, a.r).map_err(count_error)?;
    let mut r = Report::new("count-forms");
    r.set("n", a.n)
        .set("d", a.d)
        .set("m", a.m)
        .set("r", a.r)
        .set("count", natural(&pfaff_count(&q)));
    Ok(r)
}

fn count_fields(a: &CountFieldsArgs) -> Result<Report, CliError> {
    let q = VfCountQuery::new(a.n, a.m, a.d).map_err(count_error)?;
    let count = vf_count(&q).map_err(count_error)?;
    let mut r = Report::new("count-fields");
    r.set("n", a.n)
        .set("m", a.m)
        .set("d", a.d)
        .set("count", natural(&count));
    Ok(r)
}

fn oracle_forms(a: &OracleFormsArgs, seed: u64) -> Result<Report, CliError> {
    let (x, source) = if let Some(path) = &a.field {
        (load_field(path)?, "file")
    } else {
        let n = a.n.ok_or_else(|| usage("--n is required without --field"))?;
        let d = a.d.ok_or_else(|| usage("--d is required without --field"))?;
        if a.paired {
            let coeffs = parse_coefficients(&a.a, default_paired(n))?;
            (example_field(n, d, &coeffs).map_err(count_error)?, "paired")
        } else {
            if d == 0 {
                return Err(usage("--d must be at least 1"));
            }
            (random_field(n, d, &mut rng(seed)), "random")
        }
    };
    let n = x.n();
    let d = x
        .homogeneous_degree()
        .ok_or_else(|| compute(CountError::NotHomogeneous))?;
    if a.r < 1 || a.r + 2 > n {
        return Err(usage("r must satisfy 1 <= r <= n-2"));
    }
    let columns = u32::try_from(a.m + 1).map_or(0, |c| FormBasis::dimension(n, a.r, c));
    if columns > a.max_columns {
        return Err(compute(format!(
            "refusing: {columns} columns exceeds --max-columns {}",
            a.max_columns
        )));
    }
    let o = oracle_pfaff_count(&x, a.m, a.r).map_err(count_error)?;
    let mut r = Report::new("oracle-forms");
    r.set("field_source", source)
        .set("n", n)
        .set("d", d)
        .set("m", a.m)
        .set("r", a.r)
        .set("count", o.count)
        .set("twisted_dimension", o.twisted_dimension)
        .set("columns", natural(&columns.into()));
    if let Ok(q) = PfaffCountQuery::new(n, d, a.m, a.r) {
        let f = pfaff_count(&q);
        r.set("matches", f == o.count.into()).set("formula", natural(&f));
    }
    if a.emit_kernel {
        let kernel: Vec<Value> = o
            .kernel
            .iter()
            .map(|w| serde_json::to_value(FormJson::from_form(w)).expect("serializable"))
            .collect();
        r.set("kernel", kernel);
    }
    Ok(r)
}

fn oracle_fields(a: &OracleFieldsArgs, seed: u64) -> Result<Report, CliError> {
    let (w, source) = if let Some(path) = &a.form {
        (load_form(path)?, "file")
    } else {
        let n = a.n.ok_or_else(|| usage("--n is required without --form"))?;
        let m = a.m.ok_or_else(|| usage("--m is required without --form"))?;
        let w = random_projective_form(n, 1, i64::from(m), &mut rng(seed))
            .ok_or_else(|| compute("no projective 1-forms of this degree"))?;
        (w, "random")
    };
    let n = w.n();
    let columns = vf_oracle_columns(n, a.d);
    if columns > a.max_columns {
        return Err(compute(format!(
            "refusing: {columns} columns exceeds --max-columns {}",
            a.max_columns
        )));
    }
    let o = oracle_vf_count(&w, a.d).map_err(count_error)?;
    let m = degree_of_pfaff(&w).map_err(flag_error)?;
    let mut r = Report::new("oracle-fields");
    r.set("form_source", source)
        .set("n", n)
        .set("m", m)
        .set("d", a.d)
        .set("count", o.count)
        .set("kernel_dimension", o.kernel_dimension)
        .set("radial_dimension", o.radial_dimension)
        .set("columns", natural(&columns.into()));
    if let (Ok(m), true) = (u32::try_from(m), n >= 3) {
        let q = VfCountQuery::new(n, m, i64::from(a.d)).map_err(count_error)?;
        match vf_count(&q) {
            Ok(f) => {
                r.set("matches", f == o.count.into()).set("formula", natural(&f));
            }
            Err(e) => {
                r.set("formula", Value::Null).set("formula_status", e.to_string());
            }
        }
    }
    Ok(r)
}

fn check_flag(a: &CheckFlagArgs, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("check-flag");
    if a.example.example.is_some() {
        let (x, w) = pencil(&a.example)?;
        let flag = check_vf_form_flag(&x, &w).map_err(flag_error)?;
        r.set("kind", "vf_form")
            .set("flag", flag)
            .set("field_degree", x.homogeneous_degree().unwrap_or(0))
            .set("form_degree", degree_of_pfaff(&w).map_err(flag_error)?);
        return Ok(r);
    }
    let upper = load_form(a.form.as_deref().ok_or_else(|| usage("--form is required"))?)?;
    if let Some(path) = &a.field {
        let x = load_field(path)?;
        let flag = check_vf_form_flag(&x, &upper).map_err(flag_error)?;
        r.set("kind", "vf_form").set("flag", flag);
    } else if let Some(path) = &a.lower_form {
        let lower = load_form(path)?;
        let s = sample_kernel_containment(&lower, &upper, a.samples, &mut rng(seed))
            .map_err(flag_error)?;
        r.set("kind", "form_form_pointwise")
            .set("flag", s.consistent)
            .set("points_checked", s.points_checked);
        if let Some(p) = s.counterexample {
            r.set("counterexample", p.iter().map(rational).collect::<Vec<_>>());
        }
    } else {
        return Err(usage("give --field or --lower-form"));
    }
    Ok(r)
}

fn form_or_example(a: &FormOrExample) -> Result<PolyForm, CliError> {
    match &a.form {
        Some(path) => load_form(path),
        None => Ok(pencil(&a.example)?.1),
    }
}

fn check_integrable(a: &FormOrExample) -> Result<Report, CliError> {
    let w = form_or_example(a)?;
    let ok = check_integrability_codim1(&w).map_err(flag_error)?;
    let mut r = Report::new("check-integrable");
    r.set("integrable", ok);
    Ok(r)
}

fn check_decomposable(a: &FormOnly) -> Result<Report, CliError> {
    let w = load_form(&a.form)?;
    let ok = check_decomposable_2form(&w).map_err(flag_error)?;
    let mut r = Report::new("check-decomposable");
    r.set("decomposable", ok);
    Ok(r)
}

fn slope(a: &SlopeArgs) -> Result<Report, CliError> {
    let s = pfaff_core::bounds::slope(a.dim, a.deg).map_err(|e| usage(e.to_string()))?;
    let mut r = Report::new("slope");
    r.set("dim", a.dim).set("deg", a.deg).set("slope", rational(&s));
    Ok(r)
}

fn example(a: &ExampleArgs, seed: u64) -> Result<Report, CliError> {
    let need = |v: Option<u32>, name: &str| v.ok_or_else(|| usage(format!("--{name} is required")));
    let field_value = |x: &PolyVectorField| serde_json::to_value(FieldJson::from_field(x)).expect("serializable");
    let form_value = |w: &PolyForm| serde_json::to_value(FormJson::from_form(w)).expect("serializable");
    let mut r = Report::new("example");
    match a.kind {
        ExampleKind::Pencil => {
            let spec = ExampleSpec {
                example: Some("5.1".into()),
                d: a.d,
                a: a.a.clone(),
            };
            let (x, w) = pencil(&spec)?;
            r.set("field", field_value(&x)).set("form", form_value(&w));
        }
        ExampleKind::Paired => {
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            let d = need(a.d, "d")?;
            let coeffs = parse_coefficients(&a.a, default_paired(n))?;
            r.set("field", field_value(&example_field(n, d, &coeffs).map_err(count_error)?));
        }
        ExampleKind::RandomField => {
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let d = need(a.d, "d")?;
            r.set("field", field_value(&random_field(n, d, &mut rng(seed))));
        }
        ExampleKind::RandomForm => {
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            let rr = a.r.ok_or_else(|| usage("--r is required"))?;
            let m = a.m.ok_or_else(|| usage("--m is required"))?;
            if rr == 0 || rr > n {
                return Err(usage("--r must satisfy 1 <= r <= n"));
            }
            let w = random_projective_form(n, rr, m, &mut rng(seed))
                .ok_or_else(|| compute("no twisted forms with these parameters"))?;
            r.set("form", form_value(&w));
        }
    }
    Ok(r)
}
