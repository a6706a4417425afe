//! Fuzzy numbers as discretized alpha-level interval families.
//!
//! A fuzzy number is stored as one interval `[lower[i], upper[i]]` per grid
//! level. Normality, fuzzy convexity and upper semicontinuity translate, at
//! grid resolution, into three invariants checked by [`FuzzyNumber::validate`]:
//! `lower` nondecreasing in alpha, `upper` nonincreasing in alpha, and
//! `lower <= upper` at every level, with all entries finite.

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::AlphaGrid;

/// Which endpoint array a violation was found in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Lower => write!(f, "lower"),
            Side::Upper => write!(f, "upper"),
        }
    }
}

/// First violated invariant found by [`FuzzyNumber::validate`], with the
/// offending level index.
#[derive(Debug, Clone, PartialEq)]
pub enum InvariantViolation {
    NonFinite { side: Side, index: usize, value: f64 },
    LowerDecreasing { index: usize },
    UpperIncreasing { index: usize },
    LowerAboveUpper { index: usize },
}

impl InvariantViolation {
    /// Grid level the violation was detected at.
    pub fn index(&self) -> usize {
        match self {
            InvariantViolation::NonFinite { index, .. }
            | InvariantViolation::LowerDecreasing { index }
            | InvariantViolation::UpperIncreasing { index }
            | InvariantViolation::LowerAboveUpper { index } => *index,
        }
    }
}

impl std::fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvariantViolation::NonFinite { side, index, value } => {
                write!(f, "{side} endpoint at level {index} is not finite ({value})")
            }
            InvariantViolation::LowerDecreasing { index } => {
                write!(f, "lower endpoints decrease at level {index}")
            }
            InvariantViolation::UpperIncreasing { index } => {
                write!(f, "upper endpoints increase at level {index}")
            }
            InvariantViolation::LowerAboveUpper { index } => {
                write!(f, "lower > upper at level {index}")
            }
        }
    }
}

/// A fuzzy number over an [`AlphaGrid`]: per-level interval endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    grid: AlphaGrid,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl FuzzyNumber {
    /// Wraps endpoint arrays without checking the fuzzy-number invariants
    /// (lengths are checked). Use [`FuzzyNumber::validate`] to check the rest;
    /// arithmetic on validated inputs produces validated outputs.
    pub fn from_endpoints(grid: AlphaGrid, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != grid.len() || upper.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        Ok(Self { grid, lower, upper })
    }

    /// The crisp embedding of a real number: every alpha-cut is `{r}`.
    pub fn crisp(r: f64, grid: &AlphaGrid) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite { what: "crisp value", value: r });
        }
        Ok(Self {
            grid: grid.clone(),
            lower: vec![r; grid.len()],
            upper: vec![r; grid.len()],
        })
    }

    pub fn grid(&self) -> &AlphaGrid {
        &self.grid
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Checks the invariants, reporting the first violation in level order.
    /// Scan order per level: finiteness (lower, upper), monotonicity against
    /// the previous level (lower, upper), then `lower <= upper`.
    pub fn validate(&self) -> std::result::Result<(), InvariantViolation> {
        for i in 0..self.grid.len() {
            if !self.lower[i].is_finite() {
                return Err(InvariantViolation::NonFinite {
                    side: Side::Lower,
                    index: i,
                    value: self.lower[i],
                });
            }
            if !self.upper[i].is_finite() {
                return Err(InvariantViolation::NonFinite {
                    side: Side::Upper,
                    index: i,
                    value: self.upper[i],
                });
            }
            if i > 0 {
                if self.lower[i] < self.lower[i - 1] {
                    return Err(InvariantViolation::LowerDecreasing { index: i });
                }
                if self.upper[i] > self.upper[i - 1] {
                    return Err(InvariantViolation::UpperIncreasing { index: i });
                }
            }
            if self.lower[i] > self.upper[i] {
                return Err(InvariantViolation::LowerAboveUpper { index: i });
            }
        }
        Ok(())
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Level-set addition: endpoint-wise sums.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        let lower = self.lower.iter().zip(&other.lower).map(|(a, b)| a + b).collect();
        let upper = self.upper.iter().zip(&other.upper).map(|(a, b)| a + b).collect();
        Ok(Self { grid: self.grid.clone(), lower, upper })
    }

    /// Scalar multiplication of every alpha-cut. A negative factor swaps the
    /// roles of the endpoints (interval arithmetic: k[a,b] = [kb, ka] for k < 0).
    pub fn scale(&self, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite { what: "scale factor", value: k });
        }
        let (lower, upper) = if k >= 0.0 {
            (
                self.lower.iter().map(|a| k * a).collect(),
                self.upper.iter().map(|b| k * b).collect(),
            )
        } else {
            (
                self.upper.iter().map(|b| k * b).collect(),
                self.lower.iter().map(|a| k * a).collect(),
            )
        };
        Ok(Self { grid: self.grid.clone(), lower, upper })
    }

    /// The supremum metric D: the largest endpoint deviation over the grid
    /// (the sup over grid levels of the Hausdorff distance between alpha-cuts).
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        let mut d = 0.0f64;
        for i in 0..self.grid.len() {
            d = d.max((self.lower[i] - other.lower[i]).abs());
            d = d.max((self.upper[i] - other.upper[i]).abs());
        }
        Ok(d)
    }

    /// Partial order: true iff both endpoints are <= at every level.
    /// Incomparable pairs yield false in both directions.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_grid(other)?;
        for i in 0..self.grid.len() {
            if self.lower[i] > other.lower[i] || self.upper[i] > other.upper[i] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `self` below `other` after padding `other` by the crisp epsilon.
    pub fn leq_eps(&self, other: &Self, eps: f64) -> Result<bool> {
        if !eps.is_finite() {
            return Err(Error::NonFinite { what: "epsilon", value: eps });
        }
        if eps < 0.0 {
            return Err(Error::NegativeEpsilon(eps));
        }
        let padded = other.add(&Self::crisp(eps, &other.grid)?)?;
        self.leq(&padded)
    }

    /// True when every endpoint is exactly zero (the crisp zero).
    pub fn is_zero(&self) -> bool {
        self.lower.iter().all(|&a| a == 0.0) && self.upper.iter().all(|&b| b == 0.0)
    }

    /// Negative fuzzy number at grid scale: upper endpoint strictly below
    /// zero at every level (membership vanishes on [0, inf)).
    pub fn is_strictly_negative(&self) -> bool {
        self.upper.iter().all(|&b| b < 0.0)
    }
}

impl Serialize for FuzzyNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("FuzzyNumber", 3)?;
        st.serialize_field("alpha", self.grid.levels())?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FuzzyNumber {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            alpha: Vec<f64>,
            lower: Vec<f64>,
            upper: Vec<f64>,
        }
        let w = Wire::deserialize(deserializer)?;
        let grid = AlphaGrid::from_levels(w.alpha).map_err(D::Error::custom)?;
        FuzzyNumber::from_endpoints(grid, w.lower, w.upper).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> AlphaGrid {
        AlphaGrid::uniform(n).unwrap()
    }

    /// Triangular number with alpha-cuts [alpha, 2 - alpha].
    fn triangular(g: &AlphaGrid) -> FuzzyNumber {
        let lower = g.levels().to_vec();
        let upper = g.levels().iter().map(|a| 2.0 - a).collect();
        FuzzyNumber::from_endpoints(g.clone(), lower, upper).unwrap()
    }

    #[test]
    fn crisp_is_constant_and_valid() {
        let g = grid(9);
        for r in [0.0, 1.0, -3.25, 7e5] {
            let u = FuzzyNumber::crisp(r, &g).unwrap();
            assert!(u.lower().iter().all(|&a| a == r));
            assert!(u.upper().iter().all(|&b| b == r));
            assert!(u.validate().is_ok());
        }
        assert!(FuzzyNumber::crisp(f64::NAN, &g).is_err());
        assert!(FuzzyNumber::crisp(f64::INFINITY, &g).is_err());
    }

    #[test]
    fn add_zero_is_identity() {
        let g = grid(17);
        let u = triangular(&g);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        assert_eq!(u.add(&zero).unwrap(), u);
        assert_eq!(zero.add(&u).unwrap(), u);
    }

    #[test]
    fn add_doubles_triangular_levels() {
        let g = grid(17);
        let u = triangular(&g);
        let sum = u.add(&u).unwrap();
        for (i, &a) in g.levels().iter().enumerate() {
            assert_eq!(sum.lower()[i], 2.0 * a);
            assert_eq!(sum.upper()[i], 4.0 - 2.0 * a);
        }
        assert!(sum.validate().is_ok());
    }

    #[test]
    fn crisp_addition_matches_reals() {
        let g = grid(5);
        let one = FuzzyNumber::crisp(1.0, &g).unwrap();
        let two = FuzzyNumber::crisp(2.0, &g).unwrap();
        let three = FuzzyNumber::crisp(3.0, &g).unwrap();
        assert_eq!(one.add(&two).unwrap(), three);
    }

    #[test]
    fn add_rejects_grid_mismatch() {
        let u = FuzzyNumber::crisp(1.0, &grid(5)).unwrap();
        let v = FuzzyNumber::crisp(1.0, &grid(9)).unwrap();
        assert!(matches!(u.add(&v), Err(Error::GridMismatch)));
        assert!(matches!(u.distance(&v), Err(Error::GridMismatch)));
        assert!(matches!(u.leq(&v), Err(Error::GridMismatch)));
    }

    #[test]
    fn scale_by_one_and_zero() {
        let g = grid(17);
        let u = triangular(&g);
        assert_eq!(u.scale(1.0).unwrap(), u);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        assert_eq!(u.scale(0.0).unwrap(), zero);
        assert!(u.scale(f64::NAN).is_err());
    }

    #[test]
    fn negative_scale_swaps_endpoints() {
        // -[alpha, 2 - alpha] = [alpha - 2, -alpha]
        let g = grid(17);
        let u = triangular(&g);
        let neg = u.scale(-1.0).unwrap();
        for (i, &a) in g.levels().iter().enumerate() {
            assert_eq!(neg.lower()[i], a - 2.0);
            assert_eq!(neg.upper()[i], -a);
        }
        assert!(neg.validate().is_ok());
    }

    #[test]
    fn distance_examples() {
        let g = grid(17);
        let u = triangular(&g);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        let one = FuzzyNumber::crisp(1.0, &g).unwrap();
        assert_eq!(u.distance(&u).unwrap(), 0.0);
        assert_eq!(zero.distance(&one).unwrap(), 1.0);
        // sup attained at the alpha = 0 upper endpoint: |2 - 0| = 2
        assert_eq!(u.distance(&zero).unwrap(), 2.0);
    }

    #[test]
    fn partial_order_examples() {
        let g = grid(9);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        let one = FuzzyNumber::crisp(1.0, &g).unwrap();
        assert!(zero.leq(&one).unwrap());
        assert!(!one.leq(&zero).unwrap());
        assert!(one.leq(&one).unwrap());

        // constant-level [0,2] vs [-1,3]: incomparable both ways
        let u = FuzzyNumber::from_endpoints(g.clone(), vec![0.0; 9], vec![2.0; 9]).unwrap();
        let v = FuzzyNumber::from_endpoints(g.clone(), vec![-1.0; 9], vec![3.0; 9]).unwrap();
        assert!(!u.leq(&v).unwrap());
        assert!(!v.leq(&u).unwrap());
    }

    #[test]
    fn leq_eps_examples() {
        let g = grid(9);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        let one = FuzzyNumber::crisp(1.0, &g).unwrap();
        assert!(one.leq_eps(&one, 0.0).unwrap());
        // 1 <= 0 + 0.5 fails
        assert!(!one.leq_eps(&zero, 0.5).unwrap());
        assert!(one.leq_eps(&zero, 1.0).unwrap());
        assert!(matches!(one.leq_eps(&zero, -0.1), Err(Error::NegativeEpsilon(_))));
    }

    #[test]
    fn validate_reports_first_violation() {
        let g = grid(2);
        let u = FuzzyNumber::from_endpoints(g.clone(), vec![0.0, 0.5], vec![0.4, 0.6]).unwrap();
        assert_eq!(u.validate(), Err(InvariantViolation::UpperIncreasing { index: 1 }));

        let v = FuzzyNumber::from_endpoints(g.clone(), vec![0.0, 1.0], vec![2.0, 0.5]).unwrap();
        assert_eq!(v.validate(), Err(InvariantViolation::LowerAboveUpper { index: 1 }));

        let w = FuzzyNumber::from_endpoints(g.clone(), vec![0.0, f64::NAN], vec![2.0, 1.0]).unwrap();
        assert!(matches!(
            w.validate(),
            Err(InvariantViolation::NonFinite { side: Side::Lower, index: 1, .. })
        ));

        let x = FuzzyNumber::from_endpoints(g, vec![1.0, 0.5], vec![2.0, 2.0]).unwrap();
        assert_eq!(x.validate(), Err(InvariantViolation::LowerDecreasing { index: 1 }));
    }

    #[test]
    fn endpoint_length_checked() {
        let g = grid(5);
        assert!(matches!(
            FuzzyNumber::from_endpoints(g, vec![0.0; 4], vec![0.0; 5]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn json_wire_format_roundtrip() {
        let g = grid(3);
        let u = triangular(&g);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, r#"{"alpha":[0.0,0.5,1.0],"lower":[0.0,0.5,1.0],"upper":[2.0,1.5,1.0]}"#);
        let back: FuzzyNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn negativity_predicates() {
        let g = grid(5);
        let zero = FuzzyNumber::crisp(0.0, &g).unwrap();
        let neg = FuzzyNumber::crisp(-1.0, &g).unwrap();
        assert!(zero.is_zero());
        assert!(!zero.is_strictly_negative());
        assert!(neg.is_strictly_negative());
        assert!(!neg.is_zero());
    }
}
