//! Dimensions of cohomology of twisted forms and polyvector fields on `P^n`.
//!
//! Both functions evaluate the classical closed forms branch by branch. Branch
//! guards are tested before any binomial is formed, so binomial tops are never
//! negative inside a firing branch.

use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BottError {
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("degree {value} out of range 0..={n}")]
    OutOfRange { value: usize, n: usize },
}

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Global sections with positive twist.
    Sections,
    /// The single class in the middle (`k = 0`, `p = q` for forms;
    /// `t = -n-1`, `s = n - r` for polyvectors).
    Diagonal,
    /// Top cohomology with very negative twist.
    Top,
    Vanishing,
}

/// A cohomology dimension query `h^q(P^n, Omega^p(k))` or
/// `h^s(P^n, wedge^r T(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologyQuery {
    pub n: usize,
    /// `q` or `s`.
    pub cohomological_degree: usize,
    /// `p` or `r`.
    pub rank: usize,
    /// `k` or `t`.
    pub twist: i64,
}

impl CohomologyQuery {
    pub fn new(n: usize, cohomological_degree: usize, rank: usize, twist: i64) -> Result<Self, BottError> {
        if n == 0 {
            return Err(BottError::ZeroDimension);
        }
        for value in [cohomological_degree, rank] {
            if value > n {
                return Err(BottError::OutOfRange { value, n });
            }
        }
        Ok(CohomologyQuery {
            n,
            cohomological_degree,
            rank,
            twist,
        })
    }

    pub fn omega_branch(&self) -> Branch {
        let (n, q, p, k) = self.signed();
        if q == 0 && k > p {
            Branch::Sections
        } else if k == 0 && p == q {
            Branch::Diagonal
        } else if q == n && k < p - n {
            Branch::Top
        } else {
            Branch::Vanishing
        }
    }

    pub fn tangent_branch(&self) -> Branch {
        let (n, s, r, t) = self.signed();
        if s == 0 && t + r >= 0 {
            Branch::Sections
        } else if t == -n - 1 && n - r == s {
            Branch::Diagonal
        } else if s == n && t + n + r + 2 <= 0 {
            Branch::Top
        } else {
            Branch::Vanishing
        }
    }

    /// `h^q(P^n, Omega^p(k))`.
    pub fn h_omega(&self) -> BigUint {
        let (n, _, p, k) = self.signed();
        match self.omega_branch() {
            Branch::Sections => binomial(k + n - p, k) * binomial(k - 1, p),
            Branch::Diagonal => BigUint::one(),
            Branch::Top => binomial(-k + p, -k) * binomial(-k - 1, n - p),
            Branch::Vanishing => BigUint::zero(),
        }
    }

    /// `h^s(P^n, wedge^r T(t))`.
    pub fn h_tangent(&self) -> BigUint {
        let (n, _, r, t) = self.signed();
        match self.tangent_branch() {
            Branch::Sections => binomial(t + n + r + 1, t + n + 1) * binomial(t + n, n - r),
            Branch::Diagonal => BigUint::one(),
            Branch::Top => binomial(-t + r - 1, -t - n - 1) * binomial(-t - n - 2, r),
            Branch::Vanishing => BigUint::zero(),
        }
    }

    fn signed(&self) -> (i64, i64, i64, i64) {
        (
            self.n as i64,
            self.cohomological_degree as i64,
            self.rank as i64,
            self.twist,
        )
    }
}

/// `C(a, b)`, taken to be 0 when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// `h^q(P^n, Omega^p(k))`.
pub fn h_omega(n: usize, q: usize, p: usize, k: i64) -> Result<BigUint, BottError> {
    Ok(CohomologyQuery::new(n, q, p, k)?.h_omega())
}

/// `h^s(P^n, wedge^r T(t))`.
pub fn h_tangent(n: usize, s: usize, r: usize, t: i64) -> Result<BigUint, BottError> {
    Ok(CohomologyQuery::new(n, s, r, t)?.h_tangent())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(6, 4), u(15));
        assert_eq!(binomial(3, -1), u(0));
        assert_eq!(binomial(3, 4), u(0));
        assert_eq!(binomial(-1, 3), u(0));
        assert_eq!(binomial(0, 0), u(1));
        assert_eq!(binomial(60, 30), "118264581564861424".parse().unwrap());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(h_omega(3, 0, 1, 4).unwrap(), u(45));
        assert_eq!(h_omega(3, 0, 1, 2).unwrap(), u(6));
        assert_eq!(h_omega(3, 1, 1, 5).unwrap(), u(0));
        for n in 1..6 {
            for p in 0..=n {
                assert_eq!(h_omega(n, p, p, 0).unwrap(), u(1));
            }
        }
    }

    #[test]
    fn tangent_examples() {
        assert_eq!(h_tangent(3, 0, 2, 1).unwrap(), u(84));
        assert_eq!(h_tangent(3, 2, 1, 0).unwrap(), u(0));
        for n in 1..6usize {
            for r in 0..=n {
                assert_eq!(h_tangent(n, n - r, r, -(n as i64) - 1).unwrap(), u(1));
            }
        }
        // Euler sequence: h^0(T) = (n+1)^2 - 1
        assert_eq!(h_tangent(3, 0, 1, 0).unwrap(), u(15));
    }

    #[test]
    fn out_of_range_arguments() {
        assert_eq!(h_omega(0, 0, 0, 1), Err(BottError::ZeroDimension));
        assert_eq!(h_omega(3, 4, 0, 1), Err(BottError::OutOfRange { value: 4, n: 3 }));
        assert_eq!(h_tangent(3, 0, 5, 1), Err(BottError::OutOfRange { value: 5, n: 3 }));
    }

    #[test]
    fn branches_are_disjoint_on_grid() {
        // every branch predicate written out independently; exactly one holds
        for n in 1..=6i64 {
            for q in 0..=n {
                for p in 0..=n {
                    for k in -14..=14i64 {
                        let preds = [q == 0 && k > p, k == 0 && p == q, q == n && k < p - n];
                        assert!(preds.iter().filter(|b| **b).count() <= 1);
                        let tp = [
                            q == 0 && k + p >= 0,
                            k == -n - 1 && n - p == q,
                            q == n && k + n + p + 2 <= 0,
                        ];
                        assert!(tp.iter().filter(|b| **b).count() <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn serre_duality() {
        for n in 1..=6usize {
            for q in 0..=n {
                for p in 0..=n {
                    for k in -12..=12i64 {
                        assert_eq!(
                            h_omega(n, q, p, k).unwrap(),
                            h_omega(n, n - q, n - p, -k).unwrap(),
                            "n={n} q={q} p={p} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sections_generating_sharp_flags() {
        // h^0(Omega^{k+1}(k+2)) = C(n+1, k+2)
        for n in 2..=7usize {
            for k in 0..n - 1 {
                assert_eq!(
                    h_omega(n, 0, k + 1, k as i64 + 2).unwrap(),
                    binomial(n as i64 + 1, k as i64 + 2)
                );
            }
        }
    }
}
