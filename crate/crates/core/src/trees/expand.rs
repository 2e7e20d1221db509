//! Brute-force expansion of the first layers of the mild solution, tree by
//! tree, at the level of `(j,i)` edge labels. Kernels `Ḡ_{j-i}` are then
//! expanded into `G_m` through the convolution algebra, independently of the
//! binomial closed forms in [`super::coeff`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::shape::{rule_allows, EdgeLabel, Homogeneity, TreeShape};
use crate::error::{Error, Result};
use crate::kernel::ConvPolynomial;
use crate::scalar::Scalar;

/// A tree with `(j,i)` labels and an integer multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTree {
    pub shape: TreeShape,
    pub labels: Vec<EdgeLabel>,
    pub multiplicity: i64,
}

/// A tree whose edges carry kernel orders `m` (edge kernel `G_m`).
#[derive(Debug, Clone, PartialEq)]
pub struct DecoratedTree<S> {
    pub shape: TreeShape,
    pub labels: Vec<usize>,
    pub multiplicity: S,
}

impl<S: Scalar> DecoratedTree<S> {
    pub fn homogeneity(&self) -> Homogeneity {
        self.shape.homogeneity()
    }
}

impl<S: Scalar> fmt::Display for DecoratedTree<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(ToString::to_string).collect();
        write!(f, "{}[{}] x {}", self.shape, labels.join(","), self.multiplicity)
    }
}

fn edge(j: usize, i: usize) -> EdgeLabel {
    EdgeLabel::new(j, i).expect("constructed with 1 <= i <= j")
}

type RawMap = BTreeMap<(TreeShape, Vec<EdgeLabel>), i64>;

fn push(map: &mut RawMap, shape: TreeShape, labels: Vec<EdgeLabel>, mult: i64) {
    debug_assert_eq!(rule_allows(shape, &labels), Ok(true));
    *map.entry((shape, labels)).or_insert(0) += mult;
}

fn into_trees(map: RawMap) -> Vec<LabelledTree> {
    map.into_iter()
        .filter(|(_, m)| *m != 0)
        .map(|((shape, labels), multiplicity)| LabelledTree { shape, labels, multiplicity })
        .collect()
}

/// `h_n^(0) = Σ_i Ḡ_{n-i} Ξ`.
fn raw_h0(n: usize) -> RawMap {
    let mut out = RawMap::new();
    for i in 1..=n {
        push(&mut out, TreeShape::One, vec![edge(n, i)], 1);
    }
    out
}

/// `h_n^(1) = Σ_i Ḡ_{n-i} (∂h_i^(0))²`.
fn raw_h1(n: usize) -> RawMap {
    let mut out = RawMap::new();
    for i in 1..=n {
        let h0 = raw_h0(i);
        for ((_, a), ma) in &h0 {
            for ((_, b), mb) in &h0 {
                push(&mut out, TreeShape::TwoZero, vec![a[0], b[0], edge(n, i)], ma * mb);
            }
        }
    }
    out
}

/// `h_n^(2)`: the part of `Σ_i Ḡ_{n-i} (∂h_i)²` with one factor from
/// `h_i^(0)` and one from `h_i^(1)`. Both orders of the product occur; each
/// is brought to the form `<21>` with the `<2>` branch first.
fn raw_h2(n: usize) -> RawMap {
    let mut out = RawMap::new();
    for i in 1..=n {
        let h0 = raw_h0(i);
        let h1 = raw_h1(i);
        for ((_, a), ma) in &h0 {
            for ((_, b), mb) in &h1 {
                for _order in [(a, b), (b, a)] {
                    let labels = vec![b[0], b[1], b[2], a[0], edge(n, i)];
                    push(&mut out, TreeShape::TwoOneZero, labels, ma * mb);
                }
            }
        }
    }
    out
}

fn raw_layer(n: usize, order: usize) -> Result<RawMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("layers start at 1".into()));
    }
    match order {
        0 => Ok(raw_h0(n)),
        1 => Ok(raw_h1(n)),
        2 => Ok(raw_h2(n)),
        _ => Err(Error::InvalidArgument(format!("expansion order {order} not in 0..=2"))),
    }
}

/// The trees of `h_n^(order)` with `(j,i)` labels.
pub fn labelled_layer(n: usize, order: usize) -> Result<Vec<LabelledTree>> {
    raw_layer(n, order).map(into_trees)
}

/// Log-divergent products in the right-hand side `(∂h_n)²` of layer `n`:
/// `<211>` from the cross terms `∂h_n^(0) ∂h_n^(2)`, `<40>` from `(∂h_n^(1))²`.
pub fn labelled_rhs(n: usize, shape: TreeShape) -> Result<Vec<LabelledTree>> {
    if n == 0 {
        return Err(Error::InvalidArgument("layers start at 1".into()));
    }
    let mut out = RawMap::new();
    match shape {
        TreeShape::TwoOneOne => {
            let h0 = raw_h0(n);
            let h2 = raw_h2(n);
            for ((_, a), ma) in &h0 {
                for ((_, b), mb) in &h2 {
                    for _order in [(a, b), (b, a)] {
                        let mut labels = b.clone();
                        labels.push(a[0]);
                        push(&mut out, shape, labels, ma * mb);
                    }
                }
            }
        }
        TreeShape::FourZero => {
            let h1 = raw_h1(n);
            for ((_, a), ma) in &h1 {
                for ((_, b), mb) in &h1 {
                    let labels = vec![a[0], a[1], b[0], b[1], a[2], b[2]];
                    push(&mut out, shape, labels, ma * mb);
                }
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "right-hand side expansion is available for <211> and <40>, not {other}"
            )))
        }
    }
    Ok(into_trees(out))
}

/// `Ḡ_j` as integer weights on `G_m`, read off the convolution algebra.
struct GbarWeights(Vec<Vec<(usize, BigInt)>>);

impl GbarWeights {
    fn new(max_j: usize) -> Self {
        let rows = (0..=max_j)
            .map(|j| {
                let combo = ConvPolynomial::<BigRational>::gbar(j)
                    .to_kernel_combo()
                    .expect("Ḡ carries a G prefactor");
                combo
                    .iter()
                    .map(|(basis, c)| {
                        assert!(c.is_integer(), "Ḡ weights are integers");
                        (basis.k, c.to_integer())
                    })
                    .collect()
            })
            .collect();
        Self(rows)
    }
}

fn to_kernel_orders<S: Scalar>(trees: &[LabelledTree], max_j: usize) -> Vec<DecoratedTree<S>> {
    let weights = GbarWeights::new(max_j);
    let mut acc: BTreeMap<(TreeShape, Vec<usize>), BigInt> = BTreeMap::new();
    for tree in trees {
        // Cartesian product of the per-edge expansions
        let mut partial: Vec<(Vec<usize>, BigInt)> = vec![(Vec::new(), BigInt::from(tree.multiplicity))];
        for label in &tree.labels {
            let row = &weights.0[label.kernel_order()];
            partial = partial
                .into_iter()
                .flat_map(|(ms, w)| {
                    row.iter().map(move |(m, c)| {
                        let mut ms = ms.clone();
                        ms.push(*m);
                        (ms, &w * c)
                    })
                })
                .collect();
        }
        for (ms, w) in partial {
            *acc.entry((tree.shape, ms)).or_insert_with(BigInt::zero) += w;
        }
    }
    acc.into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|((shape, labels), w)| DecoratedTree { shape, labels, multiplicity: S::from_bigint(w) })
        .collect()
}

/// Brings sibling edges into a fixed order so that decorations differing
/// only by a swap of interchangeable edges are merged.
pub fn canonical_labels(shape: TreeShape, labels: &[usize]) -> Vec<usize> {
    let mut l = labels.to_vec();
    let sort_pair = |l: &mut Vec<usize>, a: usize, b: usize| {
        if l[a] > l[b] {
            l.swap(a, b);
        }
    };
    match shape {
        TreeShape::Two | TreeShape::TwoZero | TreeShape::TwoD => sort_pair(&mut l, 0, 1),
        TreeShape::TwoOne | TreeShape::TwoOneZero | TreeShape::TwoOneD | TreeShape::TwoOneOne => {
            sort_pair(&mut l, 0, 1)
        }
        TreeShape::FourZero => {
            sort_pair(&mut l, 0, 1);
            sort_pair(&mut l, 2, 3);
            let left = (l[0], l[1], l[4]);
            let right = (l[2], l[3], l[5]);
            if left > right {
                l = vec![right.0, right.1, left.0, left.1, right.2, left.2];
            }
        }
        _ => {}
    }
    l
}

fn canonicalize<S: Scalar>(trees: Vec<DecoratedTree<S>>) -> Vec<DecoratedTree<S>> {
    let mut acc: BTreeMap<(TreeShape, Vec<usize>), S> = BTreeMap::new();
    for t in trees {
        let key = (t.shape, canonical_labels(t.shape, &t.labels));
        let entry = acc.entry(key).or_insert_with(S::zero);
        *entry = entry.clone() + t.multiplicity;
    }
    acc.into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|((shape, labels), multiplicity)| DecoratedTree { shape, labels, multiplicity })
        .collect()
}

/// `h_n^(order)` as trees with kernel-order labels in the order the edges
/// are written (no sibling merging).
pub fn expand_layer_ordered<S: Scalar>(n: usize, order: usize) -> Result<Vec<DecoratedTree<S>>> {
    let raw = labelled_layer(n, order)?;
    Ok(to_kernel_orders(&raw, n))
}

/// `h_n^(order)` with symmetric decorations merged.
pub fn expand_layer<S: Scalar>(n: usize, order: usize) -> Result<Vec<DecoratedTree<S>>> {
    expand_layer_ordered(n, order).map(canonicalize)
}

/// Kernel-order form of [`labelled_rhs`], without sibling merging.
pub fn expand_rhs<S: Scalar>(n: usize, shape: TreeShape) -> Result<Vec<DecoratedTree<S>>> {
    let raw = labelled_rhs(n, shape)?;
    Ok(to_kernel_orders(&raw, n))
}

/// Multiplicity of a given decoration in an expansion (zero if absent).
pub fn multiplicity_of<S: Scalar>(trees: &[DecoratedTree<S>], labels: &[usize]) -> S {
    let mut found = HashMap::new();
    for t in trees {
        found.insert(t.labels.as_slice(), t.multiplicity.clone());
    }
    found.get(labels).cloned().unwrap_or_else(S::zero)
}

impl<S: Scalar> DecoratedTree<S> {
    pub fn is_unit(&self) -> bool {
        self.multiplicity == S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::coeff::{coeff_10, coeff_20, coeff_210, coeff_211, coeff_40};

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn single_layer_noise() {
        let t = expand_layer::<Q>(1, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].labels, vec![0]);
        assert!(t[0].is_unit());
    }

    #[test]
    fn second_layer_noise() {
        let t = expand_layer::<Q>(2, 0).unwrap();
        assert_eq!(multiplicity_of(&t, &[0]), q(1));
        assert_eq!(multiplicity_of(&t, &[1]), q(1));
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn second_layer_quadratic() {
        let t = expand_layer::<Q>(2, 1).unwrap();
        assert_eq!(multiplicity_of(&t, &[0, 0, 1]), q(1));
        assert_eq!(multiplicity_of(&t, &[0, 1, 1]), q(0));
    }

    #[test]
    fn bad_arguments() {
        assert!(expand_layer::<Q>(0, 0).is_err());
        assert!(expand_layer::<Q>(2, 3).is_err());
        assert!(expand_rhs::<Q>(2, TreeShape::Two).is_err());
    }

    #[test]
    fn emitted_trees_are_admissible_and_subcritical() {
        for n in 1..=4 {
            for order in 0..=2 {
                for t in labelled_layer(n, order).unwrap() {
                    assert!(rule_allows(t.shape, &t.labels).unwrap());
                    assert!(t.shape.homogeneity().constant > q(-3) / q(2));
                }
            }
        }
    }

    #[test]
    fn oracle_small_layers() {
        for n in 1..=3 {
            for t in expand_layer_ordered::<Q>(n, 0).unwrap() {
                assert_eq!(t.multiplicity, coeff_10(n, t.labels[0]));
            }
            for t in expand_layer_ordered::<Q>(n, 1).unwrap() {
                let l = &t.labels;
                assert_eq!(t.multiplicity, coeff_20(n, l[0], l[1], l[2]));
            }
            for t in expand_layer_ordered::<Q>(n, 2).unwrap() {
                let l = &t.labels;
                assert_eq!(t.multiplicity, q(2) * coeff_210::<Q>(n, [l[0], l[1], l[2], l[3]], l[4]));
            }
            for t in expand_rhs::<Q>(n, TreeShape::TwoOneOne).unwrap() {
                let m: [usize; 6] = t.labels.clone().try_into().unwrap();
                assert_eq!(t.multiplicity, q(4) * coeff_211::<Q>(n, m));
            }
            for t in expand_rhs::<Q>(n, TreeShape::FourZero).unwrap() {
                let m: [usize; 6] = t.labels.clone().try_into().unwrap();
                assert_eq!(t.multiplicity, coeff_40::<Q>(n, m));
            }
        }
    }

    #[test]
    fn canonical_wide_tree() {
        assert_eq!(canonical_labels(TreeShape::FourZero, &[2, 1, 0, 3, 4, 5]), vec![0, 3, 1, 2, 5, 4]);
        assert_eq!(canonical_labels(TreeShape::TwoZero, &[1, 0, 2]), vec![0, 1, 2]);
    }
}
