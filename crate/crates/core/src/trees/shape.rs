use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Edge from source index `i` into layer `j`; stands for the kernel `Ḡ_{j-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    j: usize,
    i: usize,
}

impl EdgeLabel {
    pub fn new(j: usize, i: usize) -> Result<Self> {
        if i == 0 || i > j {
            return Err(Error::InvalidArgument(format!(
                "edge label needs 1 <= i <= j, got (j={j}, i={i})"
            )));
        }
        Ok(Self { j, i })
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn i(self) -> usize {
        self.i
    }

    /// Order of the kernel `Ḡ_{j-i}` on this edge.
    pub fn kernel_order(self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TreeShape {
    /// `I[Ξ]`
    One,
    /// `I'[Ξ]`
    OneD,
    /// `I'[Ξ] I'[Ξ]`
    Two,
    /// `I[<2>]`
    TwoZero,
    /// `I'[<2>]`
    TwoD,
    /// `I'[<2>] I'[Ξ]`
    TwoOne,
    /// `I'[Ξ]²` grafted twice onto a root product
    FourZero,
    /// `I'[<21>] I'[Ξ]`
    TwoOneOne,
    /// `I[<21>]`
    TwoOneZero,
    /// `I'[<21>]`
    TwoOneD,
    /// `I[I'[Ξ]]`
    OneZero,
    /// `I'[I'[Ξ]]`
    OneDD,
    /// `I'[I'[Ξ]] I'[Ξ]`
    OneOne,
}

/// A slot taking part in an index constraint: the `j` or the `i` of an edge.
#[derive(Debug, Clone, Copy)]
enum Slot {
    J(usize),
    I(usize),
}

use Slot::{I, J};

impl TreeShape {
    pub const ALL: [TreeShape; 13] = [
        Self::One,
        Self::OneD,
        Self::Two,
        Self::TwoZero,
        Self::TwoD,
        Self::TwoOne,
        Self::FourZero,
        Self::TwoOneOne,
        Self::TwoOneZero,
        Self::TwoOneD,
        Self::OneZero,
        Self::OneDD,
        Self::OneOne,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::One => "<1>",
            Self::OneD => "<d>",
            Self::Two => "<2>",
            Self::TwoZero => "<20>",
            Self::TwoD => "<2d>",
            Self::TwoOne => "<21>",
            Self::FourZero => "<40>",
            Self::TwoOneOne => "<211>",
            Self::TwoOneZero => "<210>",
            Self::TwoOneD => "<21d>",
            Self::OneZero => "<10>",
            Self::OneDD => "<1d>",
            Self::OneOne => "<11>",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.symbol() == s)
    }

    /// (noises, thick edges `I`, thin edges `I'`).
    fn counts(self) -> (usize, usize, usize) {
        match self {
            Self::One => (1, 1, 0),
            Self::OneD => (1, 0, 1),
            Self::Two => (2, 0, 2),
            Self::TwoZero => (2, 1, 2),
            Self::TwoD => (2, 0, 3),
            Self::TwoOne => (3, 0, 4),
            Self::TwoOneZero => (3, 1, 4),
            Self::TwoOneD => (3, 0, 5),
            Self::FourZero | Self::TwoOneOne => (4, 0, 6),
            Self::OneZero => (1, 1, 1),
            Self::OneDD => (1, 0, 2),
            Self::OneOne => (2, 0, 3),
        }
    }

    /// Number of labelled edges.
    pub fn arity(self) -> usize {
        let (_, thick, thin) = self.counts();
        thick + thin
    }

    /// Groups of slots that must carry equal indices. Edges are numbered
    /// left to right, top to bottom.
    fn constraints(self) -> &'static [&'static [Slot]] {
        match self {
            Self::One | Self::OneD => &[],
            Self::Two => &[&[J(0), J(1)]],
            Self::TwoZero | Self::TwoD => &[&[J(0), J(1), I(2)]],
            Self::TwoOne => &[&[J(0), J(1), I(2)], &[J(2), J(3)]],
            Self::TwoOneZero | Self::TwoOneD => &[&[J(0), J(1), I(2)], &[J(2), J(3), I(4)]],
            Self::TwoOneOne => &[&[J(0), J(1), I(2)], &[J(2), J(3), I(4)], &[J(4), J(5)]],
            Self::FourZero => &[&[J(0), J(1), I(4)], &[J(2), J(3), I(5)], &[J(4), J(5)]],
            Self::OneZero | Self::OneDD => &[&[J(0), I(1)]],
            Self::OneOne => &[&[J(0), I(1)], &[J(1), J(2)]],
        }
    }

    pub fn homogeneity(self) -> Homogeneity {
        let (noises, thick, thin) = self.counts();
        let n = noises as i64;
        Homogeneity {
            constant: BigRational::ratio(-3 * n, 2)
                + BigRational::from_i64(2 * thick as i64 + thin as i64),
            kappa: BigRational::from_i64(-n),
        }
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Whether `labels` is admissible for `shape`; inadmissible trees denote 0.
pub fn rule_allows(shape: TreeShape, labels: &[EdgeLabel]) -> Result<bool> {
    if labels.len() != shape.arity() {
        return Err(Error::ArityMismatch {
            shape: shape.symbol(),
            expected: shape.arity(),
            got: labels.len(),
        });
    }
    let value = |s: &Slot| match *s {
        J(k) => labels[k].j,
        I(k) => labels[k].i,
    };
    Ok(shape.constraints().iter().all(|group| {
        let first = value(&group[0]);
        group.iter().all(|s| value(s) == first)
    }))
}

/// `constant + kappa·κ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogeneity {
    pub constant: BigRational,
    pub kappa: BigRational,
}

impl Homogeneity {
    pub fn zero() -> Self {
        Self { constant: BigRational::zero(), kappa: BigRational::zero() }
    }
}

impl Add for Homogeneity {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { constant: self.constant + rhs.constant, kappa: self.kappa + rhs.kappa }
    }
}

impl fmt::Display for Homogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        if self.kappa.is_zero() {
            return Ok(());
        }
        let sign = if self.kappa.is_negative() { '-' } else { '+' };
        let mag = self.kappa.abs();
        if mag.is_one() {
            write!(f, " {sign} κ")
        } else {
            write!(f, " {sign} {mag}κ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[(usize, usize)]) -> Vec<EdgeLabel> {
        v.iter().map(|&(j, i)| EdgeLabel::new(j, i).unwrap()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn edge_label_bounds() {
        assert!(EdgeLabel::new(2, 3).is_err());
        assert!(EdgeLabel::new(2, 0).is_err());
        assert_eq!(EdgeLabel::new(5, 2).unwrap().kernel_order(), 3);
    }

    #[test]
    fn product_constraint() {
        assert!(rule_allows(TreeShape::Two, &labels(&[(2, 1), (2, 2)])).unwrap());
        assert!(!rule_allows(TreeShape::Two, &labels(&[(2, 1), (3, 2)])).unwrap());
    }

    #[test]
    fn tall_tree_constraint() {
        let l = labels(&[(1, 1), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3)]);
        assert!(rule_allows(TreeShape::TwoOneOne, &l).unwrap());
        let bad = labels(&[(1, 1), (1, 1), (2, 1), (2, 2), (3, 1), (3, 3)]);
        assert!(!rule_allows(TreeShape::TwoOneOne, &bad).unwrap());
    }

    #[test]
    fn wide_tree_constraint() {
        let l = labels(&[(2, 1), (2, 2), (1, 1), (1, 1), (3, 2), (3, 1)]);
        assert!(rule_allows(TreeShape::FourZero, &l).unwrap());
        let bad = labels(&[(2, 1), (2, 2), (1, 1), (1, 1), (3, 2), (4, 1)]);
        assert!(!rule_allows(TreeShape::FourZero, &bad).unwrap());
    }

    #[test]
    fn arity_mismatch() {
        let err = rule_allows(TreeShape::TwoOneOne, &labels(&[(1, 1)])).unwrap_err();
        assert_eq!(err, Error::ArityMismatch { shape: "<211>", expected: 6, got: 1 });
    }

    #[test]
    fn homogeneities() {
        let h = |s: TreeShape| s.homogeneity();
        assert_eq!(h(TreeShape::OneD), Homogeneity { constant: q(-1, 2), kappa: q(-1, 1) });
        assert_eq!(h(TreeShape::Two), Homogeneity { constant: q(-1, 1), kappa: q(-2, 1) });
        assert_eq!(h(TreeShape::One), Homogeneity { constant: q(1, 2), kappa: q(-1, 1) });
        assert_eq!(h(TreeShape::One).to_string(), "1/2 - κ");
        assert_eq!(h(TreeShape::TwoZero).to_string(), "1 - 2κ");
        // the two log-divergent fourth-order trees
        assert_eq!(h(TreeShape::TwoOneOne).constant, q(0, 1));
        assert_eq!(h(TreeShape::FourZero).constant, q(0, 1));
    }

    #[test]
    fn homogeneity_is_additive() {
        // <2> = <d>·<d>; <21> = <2d>·<d>
        let d = TreeShape::OneD.homogeneity();
        assert_eq!(d.clone() + d.clone(), TreeShape::Two.homogeneity());
        assert_eq!(TreeShape::TwoD.homogeneity() + d, TreeShape::TwoOne.homogeneity());
    }

    #[test]
    fn symbols_round_trip() {
        for s in TreeShape::ALL {
            assert_eq!(TreeShape::from_symbol(s.symbol()), Some(s));
        }
    }
}
