//! Continuous triangular norms as first-class values.
//!
//! A t-norm is an associative, commutative binary operation on `[0,1]` that
//! is monotone in each argument and has unit 1. Only continuous t-norms are
//! admitted: custom rules are screened at construction both for the axioms
//! (sampled on a grid) and for continuity (the maximal jump between
//! neighbouring samples must shrink as the grid refines), which rejects the
//! drastic t-norm.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ARITHMETIC_TOL;

/// Grid resolution used to screen custom rules at construction.
const SCREEN_GRID_K: u32 = 50;
/// Tolerance for custom-rule screening.
const SCREEN_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone)]
pub enum TNormError {
    #[error("argument {value} outside [0,1]")]
    DomainError { value: f64 },
    #[error("custom rule {name:?} violates the t-norm axioms: {first}")]
    AxiomViolation { name: String, first: String },
    #[error("custom rule {name:?} does not look continuous: max jump {jump} at grid {grid_k} did not shrink from {previous}")]
    NotContinuous {
        name: String,
        grid_k: u32,
        jump: f64,
        previous: f64,
    },
    #[error("unknown t-norm name {0:?}")]
    UnknownName(String),
}

type Rule = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct CustomTNorm {
    name: Arc<str>,
    rule: Rule,
}

/// A triangular norm: one of the three built-ins or a screened custom rule.
#[derive(Clone)]
pub enum TNorm {
    Min,
    Product,
    Lukasiewicz,
    Custom(CustomTNorm),
}

impl fmt::Debug for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TNorm({})", self.name())
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl TNorm {
    pub fn name(&self) -> &str {
        match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
            TNorm::Custom(c) => &c.name,
        }
    }

    /// Resolves the built-in names used in serialized game specs.
    pub fn by_name(name: &str) -> Result<TNorm, TNormError> {
        match name {
            "min" => Ok(TNorm::Min),
            "product" => Ok(TNorm::Product),
            "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            other => Err(TNormError::UnknownName(other.to_string())),
        }
    }

    /// Wraps a rule without any screening. Intended for feeding deliberately
    /// broken rules to [`verify_axioms`].
    pub fn custom_unchecked(
        name: impl Into<String>,
        rule: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> TNorm {
        TNorm::Custom(CustomTNorm {
            name: name.into().into(),
            rule: Arc::new(rule),
        })
    }

    /// Wraps a user rule after screening the axioms on a 51x51(x51) grid at
    /// tolerance 1e-9 and sampling a modulus of continuity on refining grids.
    pub fn custom(
        name: impl Into<String>,
        rule: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<TNorm, TNormError> {
        let t = Self::custom_unchecked(name, rule);
        let report = verify_axioms(&t, SCREEN_GRID_K);
        if let Some(first) = report.violations.first() {
            return Err(TNormError::AxiomViolation {
                name: t.name().to_string(),
                first: format!("{first:?}"),
            });
        }
        let mut prev = max_neighbour_jump(&t, SCREEN_GRID_K);
        for grid_k in [2 * SCREEN_GRID_K, 4 * SCREEN_GRID_K] {
            let jump = max_neighbour_jump(&t, grid_k);
            if jump > 0.75 * prev + SCREEN_TOL {
                return Err(TNormError::NotContinuous {
                    name: t.name().to_string(),
                    grid_k,
                    jump,
                    previous: prev,
                });
            }
            prev = jump;
        }
        Ok(t)
    }

    /// Applies the norm after checking the domain: arguments drifting past
    /// `[0,1]` by more than 1e-12 are an error, smaller drift is clamped.
    pub fn apply(&self, a: f64, b: f64) -> Result<f64, TNormError> {
        for v in [a, b] {
            if !v.is_finite() || !(-ARITHMETIC_TOL..=1.0 + ARITHMETIC_TOL).contains(&v) {
                return Err(TNormError::DomainError { value: v });
            }
        }
        Ok(self.eval(a.clamp(0.0, 1.0), b.clamp(0.0, 1.0)))
    }

    /// Evaluation on arguments already known to lie in `[0,1]`.
    ///
    /// Unit arguments are handled up front so that `s * 1 = s` holds exactly
    /// in floating point for every variant.
    pub(crate) fn eval(&self, a: f64, b: f64) -> f64 {
        debug_assert!((-1e-9..=1.0 + 1e-9).contains(&a), "a = {a}");
        debug_assert!((-1e-9..=1.0 + 1e-9).contains(&b), "b = {b}");
        if a == 1.0 {
            return b;
        }
        if b == 1.0 {
            return a;
        }
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
            TNorm::Custom(c) => (c.rule)(a, b).clamp(0.0, 1.0),
        }
    }

    fn is_builtin(&self) -> bool {
        !matches!(self, TNorm::Custom(_))
    }
}

/// Largest jump of the rule between horizontally or vertically adjacent
/// points of the `(grid_k+1)^2` grid.
fn max_neighbour_jump(t: &TNorm, grid_k: u32) -> f64 {
    let k = grid_k as usize;
    let at = |i: usize| i as f64 / k as f64;
    let mut worst = 0.0f64;
    for i in 0..=k {
        for j in 0..k {
            let h = (t.eval(at(i), at(j)) - t.eval(at(i), at(j + 1))).abs();
            let v = (t.eval(at(j), at(i)) - t.eval(at(j + 1), at(i))).abs();
            worst = worst.max(h).max(v);
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub enum AxiomViolation {
    Commutativity { a: f64, b: f64, ab: f64, ba: f64 },
    Associativity {
        a: f64,
        b: f64,
        c: f64,
        left: f64,
        right: f64,
    },
    Monotonicity {
        a: f64,
        a_up: f64,
        b: f64,
        value: f64,
        value_up: f64,
    },
    Unit { a: f64, value: f64 },
    Range { a: f64, b: f64, value: f64 },
}

#[derive(Debug, Clone)]
pub struct TNormAxiomReport {
    pub grid_k: u32,
    pub violations: Vec<AxiomViolation>,
}

impl TNormAxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks associativity on the grid `{0, 1/k, ..., 1}^3` and commutativity,
/// monotonicity, the unit law and the range on the corresponding squares.
/// Violations are reported with witnesses, not raised as errors.
///
/// The built-in norms are evaluated in exact rational arithmetic over the
/// grid, so their report is exact; f64 evaluation would show spurious
/// one-ulp associativity defects for the product and Lukasiewicz norms on
/// non-dyadic grids. Custom rules are checked in f64 at tolerance 1e-9.
pub fn verify_axioms(t: &TNorm, grid_k: u32) -> TNormAxiomReport {
    assert!(grid_k >= 2, "grid_k must be at least 2");
    if t.is_builtin() {
        verify_exact(t, grid_k)
    } else {
        verify_float(t, grid_k, SCREEN_TOL)
    }
}

/// Fraction with positive denominator; enough arithmetic for the built-ins.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    fn grid(i: u32, k: u32) -> Frac {
        Frac {
            num: i as i64,
            den: k as i64,
        }
    }

    fn zero() -> Frac {
        Frac { num: 0, den: 1 }
    }

    fn cmp(self, other: Frac) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    fn eq_val(self, other: Frac) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }

    fn min(self, other: Frac) -> Frac {
        if self.cmp(other) == std::cmp::Ordering::Greater {
            other
        } else {
            self
        }
    }

    fn reduce(self) -> Frac {
        fn gcd(a: i64, b: i64) -> i64 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.num, self.den).max(1);
        Frac {
            num: self.num / g,
            den: self.den / g,
        }
    }

    fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn eval_frac(t: &TNorm, a: Frac, b: Frac) -> Frac {
    match t {
        TNorm::Min => a.min(b),
        TNorm::Product => Frac {
            num: a.num * b.num,
            den: a.den * b.den,
        }
        .reduce(),
        TNorm::Lukasiewicz => {
            let num = a.num * b.den + b.num * a.den - a.den * b.den;
            if num <= 0 {
                Frac::zero()
            } else {
                Frac {
                    num,
                    den: a.den * b.den,
                }
                .reduce()
            }
        }
        TNorm::Custom(_) => unreachable!("exact path is for built-ins"),
    }
}

fn verify_exact(t: &TNorm, k: u32) -> TNormAxiomReport {
    let mut violations = Vec::new();
    let g = |i: u32| Frac::grid(i, k);
    let one = Frac::grid(k, k);
    for i in 0..=k {
        let a = g(i);
        let ua = eval_frac(t, a, one);
        if !ua.eq_val(a) {
            violations.push(AxiomViolation::Unit {
                a: a.to_f64(),
                value: ua.to_f64(),
            });
        }
        for j in 0..=k {
            let b = g(j);
            let ab = eval_frac(t, a, b);
            let ba = eval_frac(t, b, a);
            if ab.num < 0 || ab.cmp(one) == std::cmp::Ordering::Greater {
                violations.push(AxiomViolation::Range {
                    a: a.to_f64(),
                    b: b.to_f64(),
                    value: ab.to_f64(),
                });
            }
            if !ab.eq_val(ba) {
                violations.push(AxiomViolation::Commutativity {
                    a: a.to_f64(),
                    b: b.to_f64(),
                    ab: ab.to_f64(),
                    ba: ba.to_f64(),
                });
            }
            if i < k {
                let a_up = g(i + 1);
                let up = eval_frac(t, a_up, b);
                if ab.cmp(up) == std::cmp::Ordering::Greater {
                    violations.push(AxiomViolation::Monotonicity {
                        a: a.to_f64(),
                        a_up: a_up.to_f64(),
                        b: b.to_f64(),
                        value: ab.to_f64(),
                        value_up: up.to_f64(),
                    });
                }
            }
            for l in 0..=k {
                let c = g(l);
                let left = eval_frac(t, ab, c);
                let right = eval_frac(t, a, eval_frac(t, b, c));
                if !left.eq_val(right) {
                    violations.push(AxiomViolation::Associativity {
                        a: a.to_f64(),
                        b: b.to_f64(),
                        c: c.to_f64(),
                        left: left.to_f64(),
                        right: right.to_f64(),
                    });
                }
            }
        }
    }
    TNormAxiomReport {
        grid_k: k,
        violations,
    }
}

fn verify_float(t: &TNorm, k: u32, tol: f64) -> TNormAxiomReport {
    let mut violations = Vec::new();
    let g = |i: u32| i as f64 / k as f64;
    for i in 0..=k {
        let a = g(i);
        let ua = t.eval(a, 1.0);
        if (ua - a).abs() > tol {
            violations.push(AxiomViolation::Unit { a, value: ua });
        }
        for j in 0..=k {
            let b = g(j);
            let ab = t.eval(a, b);
            let ba = t.eval(b, a);
            if !(-tol..=1.0 + tol).contains(&ab) {
                violations.push(AxiomViolation::Range { a, b, value: ab });
            }
            if (ab - ba).abs() > tol {
                violations.push(AxiomViolation::Commutativity { a, b, ab, ba });
            }
            if i < k {
                let a_up = g(i + 1);
                let up = t.eval(a_up, b);
                if ab > up + tol {
                    violations.push(AxiomViolation::Monotonicity {
                        a,
                        a_up,
                        b,
                        value: ab,
                        value_up: up,
                    });
                }
            }
            for l in 0..=k {
                let c = g(l);
                let left = t.eval(ab.clamp(0.0, 1.0), c);
                let right = t.eval(a, t.eval(b, c).clamp(0.0, 1.0));
                if (left - right).abs() > tol {
                    violations.push(AxiomViolation::Associativity {
                        a,
                        b,
                        c,
                        left,
                        right,
                    });
                }
            }
        }
    }
    TNormAxiomReport {
        grid_k: k,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        assert_eq!(TNorm::Min.apply(0.3, 0.8).unwrap(), 0.3);
        assert!((TNorm::Product.apply(0.3, 0.8).unwrap() - 0.24).abs() < 1e-12);
        assert!((TNorm::Lukasiewicz.apply(0.3, 0.8).unwrap() - 0.1).abs() < 1e-12);
    }

    #[test]
    fn unit_law_is_exact() {
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            for i in 0..=37 {
                let a = i as f64 / 37.0;
                assert_eq!(t.eval(a, 1.0), a, "{t} failed at {a}");
                assert_eq!(t.eval(1.0, a), a);
            }
        }
    }

    #[test]
    fn domain_checked() {
        assert!(matches!(
            TNorm::Min.apply(1.1, 0.5),
            Err(TNormError::DomainError { .. })
        ));
        assert!(matches!(
            TNorm::Min.apply(0.5, -0.1),
            Err(TNormError::DomainError { .. })
        ));
        // Drift within 1e-12 is clamped.
        assert_eq!(TNorm::Min.apply(1.0 + 5e-13, 0.5).unwrap(), 0.5);
    }

    #[test]
    fn builtin_axioms_exact_on_grid() {
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            let report = verify_axioms(&t, 10);
            assert!(report.passed(), "{t}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn asymmetric_rule_reported() {
        let t = TNorm::custom_unchecked("a*b^2", |a, b| a * b * b);
        let report = verify_axioms(&t, 10);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Commutativity { .. })));
        // The pair (0.5, 1) is a witness: 0.5*1 = 0.5 but 1*0.5 = 0.25.
        assert_eq!(t.eval(0.5, 1.0), 0.5);
        assert_eq!(t.eval(1.0, 0.5), 0.5); // unit shortcut applies
        let raw = |a: f64, b: f64| a * b * b;
        assert_eq!(raw(0.5, 1.0), 0.5);
        assert_eq!(raw(1.0, 0.5), 0.25);
        assert!(TNorm::custom("a*b^2", raw).is_err());
    }

    #[test]
    fn drastic_rule_rejected_as_discontinuous() {
        let drastic = |a: f64, b: f64| {
            if a == 1.0 {
                b
            } else if b == 1.0 {
                a
            } else {
                0.0
            }
        };
        match TNorm::custom("drastic", drastic) {
            Err(TNormError::NotContinuous { .. }) => {}
            other => panic!("expected continuity rejection, got {other:?}"),
        }
    }

    #[test]
    fn honest_custom_rule_accepted() {
        // Hamacher product, a continuous t-norm.
        let t = TNorm::custom("hamacher", |a, b| {
            if a == 0.0 && b == 0.0 {
                0.0
            } else {
                a * b / (a + b - a * b)
            }
        })
        .unwrap();
        assert!((t.apply(0.5, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn distributes_over_max_on_grid() {
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            for i in 0..=10 {
                for j in 0..=10 {
                    for l in 0..=10 {
                        let (c, a, b) = (i as f64 / 10.0, j as f64 / 10.0, l as f64 / 10.0);
                        assert_eq!(
                            t.eval(c, a.max(b)),
                            t.eval(c, a).max(t.eval(c, b)),
                            "{t} at ({c},{a},{b})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_by_min_on_grid() {
        for t in [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz] {
            for i in 0..=20 {
                for j in 0..=20 {
                    let (a, b) = (i as f64 / 20.0, j as f64 / 20.0);
                    assert!(t.eval(a, b) <= a.min(b), "{t} at ({a},{b})");
                }
            }
        }
    }
}
