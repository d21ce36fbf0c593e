//! Degree inequalities and stability verdicts for flags of foliations.
//!
//! Every bound is evaluated over the rationals; nothing is rounded. Geometric
//! hypotheses (smoothness, normal crossings, reducedness and so on) are
//! caller assertions: they select a case and are echoed in the report, but
//! are never checked.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("invalid data: {0}")]
    InvalidData(&'static str),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("a distribution of degree 1 on P^3 cannot have only isolated singularities")]
    DegreeOneDistribution,
    #[error("empty list of form degrees")]
    EmptyDegrees,
    #[error("form degrees are not all equal")]
    UnequalDegrees,
}

/// Which inequality a [`BoundReport`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundCase {
    /// `deg F <= deg G` for a foliation by curves inside a Pfaff system.
    FlagDegree,
    /// `deg D <= dim D * deg G` for a split distribution.
    SplitDistribution,
    LogSmoothHypersurface,
    LogNormalCrossing,
    LogCurveSmooth,
    LogCurveNodal,
    LogCiRegularity,
    LogCiNonsingCodim1,
    PullbackInvariantSmooth,
    PullbackInvariantNc,
    PullbackCiRegularity,
    PullbackCiNonsingCodim1,
    DecomposableGeneral,
    DecomposableCompleteIntersection,
    DecomposableEqualDegrees,
}

impl BoundCase {
    pub fn name(self) -> &'static str {
        match self {
            BoundCase::FlagDegree => "FlagDegree",
            BoundCase::SplitDistribution => "SplitDistribution",
            BoundCase::LogSmoothHypersurface => "SmoothHypersurface",
            BoundCase::LogNormalCrossing => "NormalCrossing",
            BoundCase::LogCurveSmooth => "CurveSmooth",
            BoundCase::LogCurveNodal => "CurveNodal",
            BoundCase::LogCiRegularity => "CI_Regularity",
            BoundCase::LogCiNonsingCodim1 => "CI_NonsingCodim1",
            BoundCase::PullbackInvariantSmooth => "InvariantSmooth",
            BoundCase::PullbackInvariantNc => "InvariantNC",
            BoundCase::PullbackCiRegularity => "SingCompIntRegularity",
            BoundCase::PullbackCiNonsingCodim1 => "SingCompIntNonsingCodim1",
            BoundCase::DecomposableGeneral => "General",
            BoundCase::DecomposableCompleteIntersection => "CompleteIntersection",
            BoundCase::DecomposableEqualDegrees => "EqualDegrees",
        }
    }
}

/// One echoed input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EchoValue {
    Int(i64),
    List(Vec<u64>),
}

/// An evaluated inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub case: BoundCase,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    pub inputs: Vec<(&'static str, EchoValue)>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(case: BoundCase, lhs: BigRational, rhs: BigRational) -> Self {
        BoundReport {
            case,
            holds: lhs <= rhs,
            lhs,
            rhs,
            inputs: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn echo(mut self, key: &'static str, value: i64) -> Self {
        self.inputs.push((key, EchoValue::Int(value)));
        self
    }

    fn echo_list(mut self, key: &'static str, value: &[u64]) -> Self {
        self.inputs.push((key, EchoValue::List(value.to_vec())));
        self
    }

    fn note(mut self, text: &str) -> Self {
        self.notes.push(text.into());
        self
    }
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn signed(x: u64) -> i64 {
    i64::try_from(x).expect("parameter fits in i64")
}

/// Slope `(dim - deg) / dim` of a tangent sheaf.
pub fn slope(dim: u64, deg: i64) -> Result<BigRational, BoundError> {
    if dim == 0 {
        return Err(BoundError::ZeroDimension);
    }
    Ok(frac(signed(dim) - deg, signed(dim)))
}

/// `deg F <= deg G` for a flag whose smaller leg is a foliation by curves
/// with isolated singularities.
pub fn flag_degree_check(deg_f: u64, deg_g: i64) -> BoundReport {
    BoundReport::new(BoundCase::FlagDegree, int(signed(deg_f)), int(deg_g))
        .echo("deg_f", signed(deg_f))
        .echo("deg_g", deg_g)
}

/// `deg D <= dim D * deg G` for a distribution whose tangent sheaf splits
/// into foliations by curves.
pub fn split_distribution_check(deg_d: u64, dim_d: u64, deg_g: i64) -> Result<BoundReport, BoundError> {
    if dim_d == 0 {
        return Err(BoundError::ZeroDimension);
    }
    Ok(BoundReport::new(
        BoundCase::SplitDistribution,
        int(signed(deg_d)),
        int(signed(dim_d) * deg_g),
    )
    .echo("deg_d", signed(deg_d))
    .echo("dim_d", signed(dim_d))
    .echo("deg_g", deg_g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagExclusion {
    NoSuchFlag,
    NotExcluded,
}

/// Whether a flag of a foliation by curves inside a codimension one
/// distribution, both with isolated singularities, is ruled out.
pub fn isolated_flag_verdict(n: u64, deg_f: u64, deg_g: u64) -> FlagExclusion {
    let (n, f, g) = (signed(n), signed(deg_f), signed(deg_g));
    if n % 2 == 0 || f != ((n - 1) / 2) * g - 1 {
        FlagExclusion::NoSuchFlag
    } else {
        FlagExclusion::NotExcluded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P3Stability {
    Stable,
    SemistableOnly,
}

/// Stability of a codimension one distribution of degree `m` on `P^3` with
/// isolated singularities.
pub fn p3_distribution_stability(m: u64) -> Result<P3Stability, BoundError> {
    match m {
        1 => Err(BoundError::DegreeOneDistribution),
        2 => Ok(P3Stability::SemistableOnly),
        _ => Ok(P3Stability::Stable),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Semistable,
    Inconclusive,
}

/// Stability of a logarithmic foliation with a smooth component of degree
/// `d_i`, from the sign of `(n - 2) - (|d| - d_i)`.
pub fn logarithmic_stability(n: u64, abs_d: u64, d_i: u64) -> Stability {
    let (lhs, rhs) = (signed(n) - 2, signed(abs_d) - signed(d_i));
    match lhs.cmp(&rhs) {
        core::cmp::Ordering::Greater => Stability::Stable,
        core::cmp::Ordering::Equal => Stability::Semistable,
        core::cmp::Ordering::Less => Stability::Inconclusive,
    }
}

/// Stability of a pull-back of a degree-`k` foliation by curves on
/// `P^{n-1}` that leaves invariant a degree-`d` hypersurface with smooth
/// preimage.
pub fn pullback_stability(n: u64, k: u64, d: u64) -> Result<Stability, BoundError> {
    if d == 0 {
        return Err(BoundError::InvalidData("d must be at least 1"));
    }
    if n < 3 {
        return Err(BoundError::InvalidData("n must be at least 3"));
    }
    let (n, k, d) = (signed(n), signed(k), signed(d));
    Ok(if n - 2 <= 2 * d - k - 1 {
        if n == 3 {
            Stability::Semistable
        } else {
            Stability::Stable
        }
    } else {
        Stability::Inconclusive
    })
}

/// Logarithmic foliation given by a `p`-form with poles along hypersurfaces
/// of degrees `degrees`, plus the data of the foliation by curves or of the
/// smaller foliation in the flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogarithmicData {
    pub n: u64,
    pub p: u64,
    pub degrees: Vec<u64>,
    /// 1-based indices: one for the hypersurface cases, `p + 1` strictly
    /// increasing ones for the complete intersection cases.
    pub selected: Vec<usize>,
    /// Regularity of the singular set of the complete intersection.
    pub regularity: Option<u64>,
    pub deg_f: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogarithmicCase {
    SmoothHypersurface,
    NormalCrossing,
    CurveSmooth,
    CurveNodal,
    CiRegularity,
    CiNonsingCodim1,
}

impl LogarithmicData {
    fn validate(&self) -> Result<(), BoundError> {
        if self.p == 0 {
            return Err(BoundError::InvalidData("p must be at least 1"));
        }
        if (self.degrees.len() as u64) < self.p + 1 {
            return Err(BoundError::InvalidData("need at least p+1 hypersurfaces"));
        }
        if self.n < self.p + 2 {
            return Err(BoundError::InvalidData("n must be at least p+2"));
        }
        if self.degrees.contains(&0) {
            return Err(BoundError::InvalidData("hypersurface degrees must be at least 1"));
        }
        Ok(())
    }

    fn abs_d(&self) -> i64 {
        self.degrees.iter().map(|&d| signed(d)).sum()
    }

    fn single_degree(&self) -> Result<i64, BoundError> {
        match self.selected.as_slice() {
            [] => Err(BoundError::MissingParameter("i")),
            [i] if (1..=self.degrees.len()).contains(i) => Ok(signed(self.degrees[i - 1])),
            [_] => Err(BoundError::InvalidData("index i out of range")),
            _ => Err(BoundError::InvalidData("expected a single index i")),
        }
    }

    fn selected_sum(&self) -> Result<i64, BoundError> {
        if self.selected.is_empty() {
            return Err(BoundError::MissingParameter("indices"));
        }
        if self.selected.len() as u64 != self.p + 1 {
            return Err(BoundError::InvalidData("need exactly p+1 indices"));
        }
        if self.selected.windows(2).any(|w| w[0] >= w[1])
            || self.selected[0] == 0
            || *self.selected.last().expect("nonempty") > self.degrees.len()
        {
            return Err(BoundError::InvalidData("indices must be increasing within 1..=r"));
        }
        Ok(self.selected.iter().map(|&i| signed(self.degrees[i - 1])).sum())
    }

    fn require_curve(&self) -> Result<(), BoundError> {
        if self.n != self.p + 2 {
            return Err(BoundError::InvalidData("curve cases need n = p+2"));
        }
        Ok(())
    }
}

/// Bound on the degree `|d| - p - 1` of a logarithmic foliation containing
/// the given foliation.
pub fn logarithmic_bounds(data: &LogarithmicData, case: LogarithmicCase) -> Result<BoundReport, BoundError> {
    data.validate()?;
    let (n, p, f, abs_d) = (signed(data.n), signed(data.p), signed(data.deg_f), data.abs_d());
    let lhs = int(abs_d - p - 1);
    let mut notes: Vec<&str> = Vec::new();
    let (bcase, rhs) = match case {
        LogarithmicCase::SmoothHypersurface => {
            let di = data.single_degree()?;
            (BoundCase::LogSmoothHypersurface, int(f + abs_d - di - p))
        }
        LogarithmicCase::NormalCrossing => {
            let di = data.single_degree()?;
            (BoundCase::LogNormalCrossing, int(f + abs_d - di + n - p - 1))
        }
        LogarithmicCase::CurveSmooth => {
            data.require_curve()?;
            let s = data.selected_sum()?;
            (BoundCase::LogCurveSmooth, int(f + abs_d - s))
        }
        LogarithmicCase::CurveNodal => {
            data.require_curve()?;
            let s = data.selected_sum()?;
            (BoundCase::LogCurveNodal, int(f + abs_d - s + 1))
        }
        LogarithmicCase::CiRegularity => {
            let s = data.selected_sum()?;
            let reg = signed(data.regularity.ok_or(BoundError::MissingParameter("R"))?);
            if reg <= s - p - 2 {
                notes.push("small regularity branch");
                (BoundCase::LogCiRegularity, int(f + abs_d - s))
            } else {
                notes.push("large regularity branch");
                (BoundCase::LogCiRegularity, frac(f + reg + 1, 2) + int(abs_d - s))
            }
        }
        LogarithmicCase::CiNonsingCodim1 => {
            let s = data.selected_sum()?;
            (BoundCase::LogCiNonsingCodim1, int(f + abs_d - s + 1))
        }
    };
    let mut report = BoundReport::new(bcase, lhs, rhs)
        .echo("n", n)
        .echo("p", p)
        .echo_list("degrees", &data.degrees)
        .echo("deg_f", f);
    let sel: Vec<u64> = data.selected.iter().map(|&i| i as u64).collect();
    if !sel.is_empty() {
        report = report.echo_list("indices", &sel);
    }
    if let Some(reg) = data.regularity {
        report = report.echo("R", signed(reg));
    }
    for n in notes {
        report = report.note(n);
    }
    Ok(report)
}

/// Pull-back of a degree-`k` foliation by curves on `P^{r+1}` under a
/// degree-`m` rational map from `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackData {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub r: u64,
    /// Degree of the invariant hypersurface (hypersurface cases).
    pub hypersurface_degree: Option<u64>,
    /// Degrees of the complete intersection singular component; its
    /// codimension `s` is the length.
    pub component_degrees: Option<Vec<u64>>,
    pub regularity: Option<u64>,
    pub deg_f: u64,
}

impl PullbackData {
    /// Preimage of an isolated singular point of a foliation on `P^2`: a
    /// complete intersection of two hyperplanes pulled back, so `r = 1`,
    /// `s = 2` and `|d| = 2`.
    pub fn point_preimage(n: u64, m: u64, k: u64, deg_f: u64, regularity: Option<u64>) -> Self {
        PullbackData {
            n,
            m,
            k,
            r: 1,
            hypersurface_degree: None,
            component_degrees: Some(alloc::vec![1, 1]),
            regularity,
            deg_f,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackCase {
    InvariantSmooth,
    InvariantNc,
    CiRegularity,
    CiNonsingCodim1,
}

/// Bound on the degree `m(k + r + 1) - r - 1` of a pull-back foliation
/// containing the given foliation.
pub fn pullback_bounds(data: &PullbackData, case: PullbackCase) -> Result<BoundReport, BoundError> {
    if data.n < data.r + 2 {
        return Err(BoundError::InvalidData("n must be at least r+2"));
    }
    let (n, m, k, r, f) = (
        signed(data.n),
        signed(data.m),
        signed(data.k),
        signed(data.r),
        signed(data.deg_f),
    );
    let lhs = int(m * (k + r + 1) - r - 1);
    let hyper = || -> Result<i64, BoundError> {
        match data.hypersurface_degree {
            None => Err(BoundError::MissingParameter("d")),
            Some(0) => Err(BoundError::InvalidData("d must be at least 1")),
            Some(d) => Ok(signed(d)),
        }
    };
    let component = || -> Result<(i64, i64), BoundError> {
        let ds = data
            .component_degrees
            .as_ref()
            .ok_or(BoundError::MissingParameter("degrees"))?;
        if ds.len() < 2 {
            return Err(BoundError::InvalidData("component codimension s must be at least 2"));
        }
        if ds.contains(&0) {
            return Err(BoundError::InvalidData("component degrees must be at least 1"));
        }
        Ok((ds.len() as i64, ds.iter().map(|&d| signed(d)).sum()))
    };
    let mut note = None;
    let (bcase, rhs) = match case {
        PullbackCase::InvariantSmooth => {
            let d = hyper()?;
            (BoundCase::PullbackInvariantSmooth, frac(k + r + 1, d) * int(f + 1) - int(r + 1))
        }
        PullbackCase::InvariantNc => {
            let d = hyper()?;
            (BoundCase::PullbackInvariantNc, frac(k + r + 1, d) * int(f + n) - int(r + 1))
        }
        PullbackCase::CiRegularity => {
            let (s, abs_d) = component()?;
            let reg = signed(data.regularity.ok_or(BoundError::MissingParameter("R"))?);
            let rhs = if reg <= m * abs_d - s - 1 {
                note = Some("small regularity branch");
                frac(k + r + 1, abs_d) * int(f + s) - int(r + 1)
            } else {
                note = Some("large regularity branch");
                frac(k + r + 1, 2 * abs_d) * int(f + reg + 2 * s + 1) - int(r + 1)
            };
            (BoundCase::PullbackCiRegularity, rhs)
        }
        PullbackCase::CiNonsingCodim1 => {
            let (s, abs_d) = component()?;
            (
                BoundCase::PullbackCiNonsingCodim1,
                frac(k + r + 1, abs_d) * int(f + s + 1) - int(r + 1),
            )
        }
    };
    let mut report = BoundReport::new(bcase, lhs, rhs)
        .echo("n", n)
        .echo("m", m)
        .echo("k", k)
        .echo("r", r)
        .echo("deg_f", f);
    if let Some(d) = data.hypersurface_degree {
        report = report.echo("d", signed(d));
    }
    if let Some(ds) = &data.component_degrees {
        report = report.echo_list("degrees", ds);
    }
    if let Some(reg) = data.regularity {
        report = report.echo("R", signed(reg));
    }
    if let Some(t) = note {
        report = report.note(t);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomposableVariant {
    General,
    CompleteIntersection,
    EqualDegrees,
}

/// Bounds for a distribution with split tangent sheaf of degree `deg_d`
/// inside a Pfaff system given by `w_1 ^ ... ^ w_k`. Form degrees are
/// coefficient degrees: a 1-form with coefficients of degree `c` defines a
/// codimension one system of degree `c - 1`, and the wedge of `k` forms of
/// common degree `c` defines one of degree `kc - 1`.
pub fn decomposable_bound(
    deg_d: u64,
    omega_degrees: &[u64],
    variant: DecomposableVariant,
) -> Result<BoundReport, BoundError> {
    let min = *omega_degrees.iter().min().ok_or(BoundError::EmptyDegrees)?;
    let (dd, min) = (signed(deg_d), signed(min));
    let report = match variant {
        DecomposableVariant::General => {
            BoundReport::new(BoundCase::DecomposableGeneral, int(min), int(dd + 1))
        }
        DecomposableVariant::CompleteIntersection => {
            BoundReport::new(BoundCase::DecomposableCompleteIntersection, int(min - 1), int(dd))
                .note("lhs is the least codimension one degree, coefficient degree minus 1")
        }
        DecomposableVariant::EqualDegrees => {
            if omega_degrees.iter().any(|&c| signed(c) != min) {
                return Err(BoundError::UnequalDegrees);
            }
            let k = omega_degrees.len() as i64;
            BoundReport::new(
                BoundCase::DecomposableEqualDegrees,
                int(k * min - 1),
                int(k * dd + k - 1),
            )
            .note("lhs = k*c - 1: coefficient degrees add under wedge")
        }
    };
    Ok(report.echo("deg_d", dd).echo_list("omega_degrees", omega_degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn log(n: u64, p: u64, degrees: Vec<u64>, selected: Vec<usize>, reg: Option<u64>, f: u64) -> LogarithmicData {
        LogarithmicData {
            n,
            p,
            degrees,
            selected,
            regularity: reg,
            deg_f: f,
        }
    }

    #[test]
    fn slopes() {
        assert_eq!(slope(1, 3).unwrap(), int(-2));
        assert_eq!(slope(2, 3).unwrap(), frac(-1, 2));
        assert_eq!(slope(4, 4).unwrap(), int(0));
        assert_eq!(slope(0, 1), Err(BoundError::ZeroDimension));
    }

    #[test]
    fn flag_degrees() {
        assert!(flag_degree_check(2, 4).holds);
        let eq = flag_degree_check(3, 3);
        assert!(eq.holds && eq.lhs == eq.rhs);
        assert!(!flag_degree_check(3, 2).holds);
        let r = split_distribution_check(4, 2, 2).unwrap();
        assert!(r.holds && r.lhs == r.rhs);
        assert!(!split_distribution_check(5, 2, 2).unwrap().holds);
        assert!(split_distribution_check(1, 0, 2).is_err());
    }

    #[test]
    fn verdicts() {
        assert_eq!(isolated_flag_verdict(4, 1, 3), FlagExclusion::NoSuchFlag);
        assert_eq!(isolated_flag_verdict(3, 1, 2), FlagExclusion::NotExcluded);
        assert_eq!(isolated_flag_verdict(3, 2, 2), FlagExclusion::NoSuchFlag);
        assert_eq!(p3_distribution_stability(3), Ok(P3Stability::Stable));
        assert_eq!(p3_distribution_stability(2), Ok(P3Stability::SemistableOnly));
        assert!(p3_distribution_stability(1).is_err());
        assert_eq!(logarithmic_stability(6, 5, 2), Stability::Stable);
        assert_eq!(logarithmic_stability(5, 5, 2), Stability::Semistable);
        assert_eq!(logarithmic_stability(4, 5, 2), Stability::Inconclusive);
        assert_eq!(pullback_stability(3, 1, 2), Ok(Stability::Semistable));
        assert_eq!(pullback_stability(4, 1, 3), Ok(Stability::Stable));
        assert_eq!(pullback_stability(5, 3, 2), Ok(Stability::Inconclusive));
        assert!(pullback_stability(4, 1, 0).is_err());
    }

    #[test]
    fn logarithmic_cases() {
        let r = logarithmic_bounds(&log(4, 1, vec![2, 3], vec![1], None, 3), LogarithmicCase::SmoothHypersurface)
            .unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(3), int(5), true));
        let r = logarithmic_bounds(&log(3, 1, vec![1, 1], vec![1], None, 1), LogarithmicCase::NormalCrossing)
            .unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(0), int(3)));

        let small = log(3, 1, vec![2, 3, 1], vec![1, 2], Some(2), 1);
        let r = logarithmic_bounds(&small, LogarithmicCase::CiRegularity).unwrap();
        assert_eq!(r.rhs, int(1 + 6 - 5));
        let large = log(3, 1, vec![2, 3, 1], vec![1, 2], Some(4), 1);
        let r = logarithmic_bounds(&large, LogarithmicCase::CiRegularity).unwrap();
        assert_eq!(r.rhs, frac(6, 2) + int(1));
        assert_eq!(r.notes, vec![String::from("large regularity branch")]);
    }

    #[test]
    fn logarithmic_preconditions() {
        let curve = log(4, 1, vec![2, 3], vec![1, 2], None, 3);
        assert!(logarithmic_bounds(&curve, LogarithmicCase::CurveSmooth).is_err());
        let no_r = log(3, 1, vec![2, 3], vec![1, 2], None, 3);
        assert_eq!(
            logarithmic_bounds(&no_r, LogarithmicCase::CiRegularity),
            Err(BoundError::MissingParameter("R"))
        );
        let few = log(3, 1, vec![2], vec![1], None, 3);
        assert!(logarithmic_bounds(&few, LogarithmicCase::SmoothHypersurface).is_err());
        let unsorted = log(3, 1, vec![2, 3], vec![2, 1], None, 3);
        assert!(logarithmic_bounds(&unsorted, LogarithmicCase::CurveSmooth).is_err());
    }

    #[test]
    fn pullback_cases() {
        let data = PullbackData {
            n: 4,
            m: 1,
            k: 1,
            r: 1,
            hypersurface_degree: Some(1),
            component_degrees: None,
            regularity: None,
            deg_f: 2,
        };
        let r = pullback_bounds(&data, PullbackCase::InvariantSmooth).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(1), int(7), true));
        assert_eq!(
            pullback_bounds(&data, PullbackCase::CiRegularity),
            Err(BoundError::MissingParameter("degrees"))
        );
        let trivial = PullbackData { m: 1, k: 0, ..data };
        assert_eq!(pullback_bounds(&trivial, PullbackCase::InvariantSmooth).unwrap().lhs, int(0));
    }

    #[test]
    fn point_preimage_matches_closed_forms() {
        for k in 0..5i64 {
            for f in 0..6i64 {
                for m in 1..4i64 {
                    for reg in 0..8i64 {
                        let d = PullbackData::point_preimage(5, m as u64, k as u64, f as u64, Some(reg as u64));
                        let r = pullback_bounds(&d, PullbackCase::CiRegularity).unwrap();
                        let expect = if reg <= 2 * m - 3 {
                            frac(k + 2, 2) * int(f) + int(k)
                        } else {
                            frac(k + 2, 4) * int(f + reg + 1) + int(k)
                        };
                        assert_eq!(r.rhs, expect);
                        let r = pullback_bounds(&d, PullbackCase::CiNonsingCodim1).unwrap();
                        assert_eq!(r.rhs, frac(k + 2, 2) * int(f + 1) + int(k));
                    }
                }
            }
        }
    }

    #[test]
    fn decomposable_variants() {
        let r = decomposable_bound(2, &[3, 4], DecomposableVariant::General).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(3), int(3), true));
        let r = decomposable_bound(2, &[2, 2], DecomposableVariant::CompleteIntersection).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), int(2)));
        let r = decomposable_bound(1, &[2, 2], DecomposableVariant::EqualDegrees).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (int(3), int(3), true));
        assert_eq!(
            decomposable_bound(1, &[2, 3], DecomposableVariant::EqualDegrees),
            Err(BoundError::UnequalDegrees)
        );
        assert_eq!(
            decomposable_bound(1, &[], DecomposableVariant::General),
            Err(BoundError::EmptyDegrees)
        );
    }
}
