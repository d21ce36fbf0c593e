//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use pfaff_core::bott::h_omega;
use pfaff_core::bounds::slope;
use pfaff_core::counting::{
    example_field, oracle_pfaff_count, oracle_vf_count, pfaff_count, pfaff_count_piecewise,
    random_field, random_projective_form, vf_count, CountError, PfaffCountQuery, VfCountQuery,
};
use pfaff_core::flags::{
    check_integrability_codim1, check_vf_form_flag, contracted_volume, degree_of_pfaff,
    example_5_1, sample_kernel_containment,
};
use pfaff_core::polyforms::twisted_form_basis;
use pfaff_core::PolyForm;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Check = Result<String, String>;

const MAX_RESAMPLES: usize = 5;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn binom(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    (0..b).fold(BigUint::from(1u32), |acc, i| acc * (a - i) / (i + 1))
}

/// Kernel elements collected by the grids of criteria 1 and 2, with the `m`
/// and field degree they were computed for.
struct Kernels(Vec<(PolyForm, i64, u32)>);

fn criterion_1(kernels: &mut Kernels) -> Check {
    let start = Instant::now();
    let a: Vec<_> = [1, -1, 2, 3].into_iter().map(q).collect();
    let mut largest = 0;
    for d in 1..=2 {
        let x = example_field(3, d, &a).map_err(|e| e.to_string())?;
        for m in 0..=5 {
            let expected = pfaff_count(&PfaffCountQuery::new(3, d, m, 1).unwrap());
            let o = oracle_pfaff_count(&x, m, 1).map_err(|e| e.to_string())?;
            if BigUint::from(o.count) != expected {
                return Err(format!("d={d} m={m}: oracle {} formula {expected}", o.count));
            }
            largest = largest.max(o.ambient_columns);
            kernels.0.extend(o.kernel.into_iter().map(|w| (w, m, d)));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 120.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("12 cells, largest matrix {largest} columns, {secs:.2}s"))
}

fn criterion_2(kernels: &mut Kernels) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut resamples = 0;
    for r in 1..=2 {
        for m in 0..=3 {
            let expected = pfaff_count(&PfaffCountQuery::new(4, 1, m, r).unwrap());
            let mut seen = Vec::new();
            let mut matched = false;
            for _ in 0..=MAX_RESAMPLES {
                let x = random_field(4, 1, &mut rng);
                if x.is_zero() || x.homogeneous_degree() != Some(1) {
                    return Err("sampled field is not a nonzero degree-1 field".into());
                }
                let o = oracle_pfaff_count(&x, m, r).map_err(|e| e.to_string())?;
                seen.push(o.count);
                if BigUint::from(o.count) == expected {
                    kernels.0.extend(o.kernel.into_iter().map(|w| (w, m, 1)));
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Err(format!("r={r} m={m}: formula {expected}, oracle gave {seen:?}"));
            }
            resamples += seen.len() - 1;
        }
    }
    Ok(format!("8 cells, {resamples} resamples"))
}

fn criterion_3() -> Check {
    let mut cells = 0;
    for n in 3..=6 {
        for d in 1..=4 {
            for m in 0..=10 {
                for r in 1..=n - 2 {
                    let qy = PfaffCountQuery::new(n, d, m, r).unwrap();
                    let (a, b) = (pfaff_count(&qy), pfaff_count_piecewise(&qy));
                    if a != b {
                        return Err(format!("n={n} d={d} m={m} r={r}: {a} vs {b}"));
                    }
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn criterion_4(kernels: &Kernels) -> Check {
    let mut cells = 0;
    for n in 3..=6 {
        for d in 1..=4u32 {
            for m in 0..i64::from(d) {
                for r in 1..=n - 2 {
                    let c = pfaff_count(&PfaffCountQuery::new(n, d, m, r).unwrap());
                    if c != BigUint::from(0u32) {
                        return Err(format!("n={n} d={d} m={m} r={r}: count {c}"));
                    }
                    cells += 1;
                }
            }
        }
    }
    for (w, m, d) in &kernels.0 {
        let deg = degree_of_pfaff(w).map_err(|e| e.to_string())?;
        if deg != *m || deg < i64::from(*d) {
            return Err(format!("kernel form of degree {deg} for m={m}, d={d}"));
        }
    }
    if kernels.0.is_empty() {
        return Err("no kernel elements were produced".into());
    }
    Ok(format!("{cells} zero cells, {} kernel forms checked", kernels.0.len()))
}

fn criterion_5() -> Check {
    let mut cells = 0;
    for n in 3..=6usize {
        for d in 1..=4u32 {
            for r in 1..=n - 2 {
                let c = pfaff_count(&PfaffCountQuery::new(n, d, i64::from(d), r).unwrap());
                let want = binom(n as u64 + 1, r as u64 + 2);
                if c != want {
                    return Err(format!("n={n} d={d} r={r}: {c}, expected {want}"));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

fn window_cubic(m: u32, d: u32) -> BigUint {
    let e = u64::from(d - m);
    BigUint::from((e + 3) * (e + 2) * e / 2)
}

fn sampled_field_count(m: u32, d: u32, want: &BigUint, rng: &mut ChaCha8Rng) -> Result<Vec<usize>, String> {
    let mut seen = Vec::new();
    for _ in 0..=MAX_RESAMPLES {
        let w = random_projective_form(3, 1, i64::from(m), rng).ok_or("no projective 1-form")?;
        let got = oracle_vf_count(&w, d).map_err(|e| e.to_string())?.count;
        seen.push(got);
        if BigUint::from(got) == *want {
            return Ok(seen);
        }
    }
    Err(format!("m={m} d={d}: expected {want}, oracle gave {seen:?}"))
}

fn criterion_6() -> Check {
    for m in 1..=5u32 {
        for d in m + 1..=2 * m {
            let c = vf_count(&VfCountQuery::new(3, m, i64::from(d)).unwrap())
                .map_err(|e| format!("m={m} d={d}: {e}"))?;
            if c != window_cubic(m, d) {
                return Err(format!("m={m} d={d}: {c} vs cubic {}", window_cubic(m, d)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut notes = Vec::new();
    for m in 1..=2u32 {
        for d in m + 1..=m + 2 {
            match vf_count(&VfCountQuery::new(3, m, i64::from(d)).unwrap()) {
                Ok(want) => {
                    sampled_field_count(m, d, &want, &mut rng)?;
                }
                Err(CountError::PreconditionViolated(_)) => {
                    // d = 2m + 1: the count leaves the cubic, so the formula is
                    // refused and the oracle must disagree with the cubic.
                    let w = random_projective_form(3, 1, i64::from(m), &mut rng).ok_or("no form")?;
                    let got = oracle_vf_count(&w, d).map_err(|e| e.to_string())?.count;
                    if BigUint::from(got) == window_cubic(m, d) {
                        return Err(format!("m={m} d={d}: excluded cell agrees with the cubic"));
                    }
                    notes.push(format!("m={m} d={d} refused, oracle {got} vs cubic {}", window_cubic(m, d)));
                }
                Err(e) => return Err(format!("m={m} d={d}: {e}")),
            }
        }
    }
    for m in 2..=3u32 {
        for d in (0..m + 1).filter(|&d| d + 1 != m) {
            sampled_field_count(m, d, &BigUint::from(0u32), &mut rng)?;
        }
    }
    Ok(if notes.is_empty() {
        "all cells match".into()
    } else {
        notes.join("; ")
    })
}

fn criterion_7() -> Check {
    let mut cells = 0;
    for n in 3..=4usize {
        for p in 1..n {
            for k in p as i64 + 1..=p as i64 + 5 {
                let h = h_omega(n, 0, p, k).map_err(|e| e.to_string())?;
                let len = twisted_form_basis(n, p, k - p as i64 - 1).len();
                if h != BigUint::from(len) {
                    return Err(format!("n={n} p={p} k={k}: h={h}, basis {len}"));
                }
                cells += 1;
            }
        }
    }
    for n in 3..=4usize {
        for qd in 0..=n {
            for p in 0..=n {
                for k in -8..=8 {
                    let a = h_omega(n, qd, p, k).map_err(|e| e.to_string())?;
                    let b = h_omega(n, n - qd, n - p, -k).map_err(|e| e.to_string())?;
                    if a != b {
                        return Err(format!("Serre duality fails at n={n} q={qd} p={p} k={k}"));
                    }
                }
            }
        }
    }
    Ok(format!("{cells} kernel cells, duality over k in -8..=8"))
}

fn criterion_8() -> Check {
    let choices = [[1, 1, 1, 1], [2, -1, 3, 5]];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in 1..=3u32 {
        for a in &choices {
            let a = a.map(q);
            let (x, w) = example_5_1(d, &a).map_err(|e| e.to_string())?;
            let tag = format!("d={d} a={:?}", a.iter().map(ToString::to_string).collect::<Vec<_>>());
            if !check_vf_form_flag(&x, &w).map_err(|e| e.to_string())? {
                return Err(format!("{tag}: i_X w != 0"));
            }
            if !check_integrability_codim1(&w).map_err(|e| e.to_string())? {
                return Err(format!("{tag}: w ^ dw != 0"));
            }
            if x.homogeneous_degree() != Some(d) {
                return Err(format!("{tag}: field degree {:?}", x.homogeneous_degree()));
            }
            let deg = degree_of_pfaff(&w).map_err(|e| e.to_string())?;
            if deg != 2 * i64::from(d) {
                return Err(format!("{tag}: form degree {deg}"));
            }
            let lower = contracted_volume(3, &[&x]).map_err(|e| e.to_string())?;
            let s = sample_kernel_containment(&lower, &w, 20, &mut rng).map_err(|e| e.to_string())?;
            if !s.consistent || s.points_checked != 20 {
                return Err(format!("{tag}: containment fails at {:?}", s.counterexample));
            }
        }
    }
    Ok("6 flags, 20 points each".into())
}

/// `(argv after "bounds", expected fields)`; values worked out by hand.
fn bound_fixtures() -> Vec<(&'static str, Value)> {
    vec![
        ("cor1.2 --deg-f 2 --deg-g 4", json!({"lhs": 2, "rhs": 4, "holds": true})),
        ("cor1.2 --deg-f 5 --deg-g 3", json!({"lhs": 5, "rhs": 3, "holds": false})),
        ("cor1.4 --deg-d 5 --dim-d 2 --deg-g 2", json!({"lhs": 5, "rhs": 4, "holds": false})),
        ("cor1.4 --deg-d 3 --dim-d 2 --deg-g 2", json!({"lhs": 3, "rhs": 4, "holds": true})),
        ("cor1.5 --n 3 --deg-f 1 --deg-g 2", json!({"verdict": "NotExcluded"})),
        ("cor1.5 --n 4 --deg-f 1 --deg-g 2", json!({"verdict": "NoSuchFlag"})),
        ("cor1.5 --n 5 --deg-f 2 --deg-g 2", json!({"verdict": "NoSuchFlag"})),
        ("cor1.5 --n 5 --deg-f 3 --deg-g 2", json!({"verdict": "NotExcluded"})),
        ("cor1.7 --m 2", json!({"verdict": "SemistableOnly"})),
        ("cor1.7 --m 3", json!({"verdict": "Stable"})),
        (
            "thm6.1 --case SmoothHypersurface --params n=3 p=1 degrees=2,3 i=1 deg_f=3",
            json!({"lhs": 3, "rhs": 5, "holds": true}),
        ),
        (
            "thm6.1 --case NormalCrossing --params n=3 p=1 degrees=2,3 i=2 deg_f=1",
            json!({"lhs": 3, "rhs": 4, "holds": true}),
        ),
        (
            "thm6.1 --case CurveSmooth --params n=3 p=1 degrees=1,2,2 i=1,2 deg_f=0",
            json!({"lhs": 3, "rhs": 2, "holds": false}),
        ),
        (
            "thm6.1 --case CurveNodal --params n=3 p=1 degrees=1,2,2 i=1,2 deg_f=0",
            json!({"lhs": 3, "rhs": 3, "holds": true}),
        ),
        (
            "thm6.1 --case CI_Regularity --params n=4 p=1 degrees=2,2,3 i=1,2 R=1 deg_f=2",
            json!({"lhs": 5, "rhs": 5, "holds": true}),
        ),
        (
            "thm6.1 --case CI_Regularity --params n=4 p=1 degrees=2,2,3 i=1,2 R=4 deg_f=2",
            json!({"lhs": 5, "rhs": "13/2", "holds": true}),
        ),
        (
            "thm6.1 --case CI_NonsingCodim1 --params n=4 p=1 degrees=2,2,3 i=1,2 deg_f=2",
            json!({"lhs": 5, "rhs": 6, "holds": true}),
        ),
        ("cor6.2 --n 4 --abs-d 5 --d-i 3", json!({"verdict": "Semistable"})),
        ("cor6.2 --n 5 --abs-d 5 --d-i 3", json!({"verdict": "Stable"})),
        ("cor6.2 --n 3 --abs-d 5 --d-i 3", json!({"verdict": "Inconclusive"})),
        (
            "thm6.3 --case InvariantSmooth --params n=4 m=2 k=1 r=1 d=2 deg_f=3",
            json!({"lhs": 4, "rhs": 4, "holds": true}),
        ),
        (
            "thm6.3 --case InvariantNC --params n=4 m=2 k=1 r=1 d=2 deg_f=3",
            json!({"lhs": 4, "rhs": "17/2", "holds": true}),
        ),
        (
            "thm6.3 --case SingCompIntRegularity --params n=4 m=2 k=1 r=1 degrees=1,2 R=3 deg_f=2",
            json!({"lhs": 4, "rhs": 2, "holds": false}),
        ),
        (
            "thm6.3 --case SingCompIntRegularity --params n=4 m=2 k=1 r=1 degrees=1,2 R=5 deg_f=2",
            json!({"lhs": 4, "rhs": 4, "holds": true}),
        ),
        (
            "thm6.3 --case SingCompIntNonsingCodim1 --params n=4 m=2 k=1 r=1 degrees=1,2 deg_f=2",
            json!({"lhs": 4, "rhs": 3, "holds": false}),
        ),
        (
            "cor6.4 --case regularity --params n=3 m=2 k=1 R=1 deg_f=2",
            json!({"lhs": 4, "rhs": 4, "holds": true}),
        ),
        (
            "cor6.4 --case nonsingcodim1 --params n=3 m=2 k=1 deg_f=2",
            json!({"lhs": 4, "rhs": "11/2", "holds": true}),
        ),
        (
            "thm6.5 --case General --params deg_d=2 omega_degrees=3,4",
            json!({"lhs": 3, "rhs": 3, "holds": true}),
        ),
        (
            "thm6.5 --case General --params deg_d=1 omega_degrees=4,4",
            json!({"lhs": 4, "rhs": 2, "holds": false}),
        ),
        (
            "thm6.5 --case CompleteIntersection --params deg_d=2 omega_degrees=3,4",
            json!({"lhs": 2, "rhs": 2, "holds": true}),
        ),
        (
            "thm6.5 --case EqualDegrees --params deg_d=1 omega_degrees=2,2",
            json!({"lhs": 3, "rhs": 3, "holds": true}),
        ),
        ("cor6.6 --n 4 --k 1 --d 2", json!({"verdict": "Stable"})),
        ("cor6.6 --n 3 --k 1 --d 2", json!({"verdict": "Semistable"})),
        ("cor6.6 --n 3 --k 1 --d 1", json!({"verdict": "Inconclusive"})),
    ]
}

fn criterion_9() -> Check {
    let fixtures = bound_fixtures();
    for (args, want) in &fixtures {
        let argv = ["pfaffcount", "bounds"].into_iter().chain(args.split_whitespace());
        let out = pfaffcount::run(argv);
        if out.code != 0 {
            return Err(format!("{args}: exit {} {}", out.code, out.stderr.trim()));
        }
        let got: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
        for (k, v) in want.as_object().unwrap() {
            if got.get(k) != Some(v) {
                return Err(format!("{args}: {k} = {:?}, expected {v}", got.get(k)));
            }
        }
    }
    for d in -3..=5i64 {
        if slope(1, d).unwrap() != q(1 - d) {
            return Err(format!("slope(1, {d}) != {}", 1 - d));
        }
    }
    for m in 0..=6i64 {
        if slope(2, m).unwrap() != BigRational::new((2 - m).into(), 2.into()) {
            return Err(format!("slope(2, {m}) != ({}) / 2", 2 - m));
        }
    }
    Ok(format!("{} fixtures, both slope forms", fixtures.len()))
}

fn main() -> ExitCode {
    let mut kernels = Kernels(Vec::new());
    let results = [
        ("1", "form count vs oracle on P^3, fixed field", criterion_1(&mut kernels)),
        ("2", "form count vs oracle on P^4, sampled fields", criterion_2(&mut kernels)),
        ("3", "piecewise and unified counts agree", criterion_3()),
        ("4", "no invariant forms below the field degree", criterion_4(&kernels)),
        ("5", "count at m = d is C(n+1, r+2)", criterion_5()),
        ("6", "tangent field count on P^3", criterion_6()),
        ("7", "Bott dimensions vs kernels, Serre duality", criterion_7()),
        ("8", "pencil flag end to end", criterion_8()),
        ("9", "bound fixtures and slopes", criterion_9()),
    ];
    let mut failed = 0;
    for (id, name, res) in &results {
        match res {
            Ok(detail) => println!("PASS criterion {id}: {name} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
