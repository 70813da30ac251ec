//! Iterated partial wreath powers of `IS_d`, read as partial automorphisms of
//! the `n`-level `d`-regular rooted tree.
//!
//! A level-`n` element is a pair `(f, a)`: a top partial bijection `a` of the
//! root's children, and for each `x ∈ dom(a)` a level-`(n-1)` element `f(x)`
//! acting on the subtree below `x`. The product is
//! `(f, a)·(g, b) = (x ↦ f(x)·g(a(x)), a·b)`, applied left to right.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat;
use crate::error::{Error, Result};
use crate::iscore::{self, PartialBijection};

/// Upper bound on `|P_n|` accepted by [`enumerate_tree`].
pub const MAX_ENUMERATION: u64 = 1_000_000;

/// Upper bound on `d^n` for operations that materialize the leaf action.
pub const MAX_LEAVES: usize = 1 << 22;

/// A partial automorphism of the `level`-level `degree`-regular rooted tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreePA {
    degree: usize,
    level: usize,
    /// `None` exactly at level 0.
    top: Option<PartialBijection>,
    /// Indexed by point; `Some` exactly on `dom(top)`.
    children: Vec<Option<TreePA>>,
}

impl TreePA {
    /// The unique level-0 element (the root mapped to itself).
    pub fn root(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Self {
            degree,
            level: 0,
            top: None,
            children: Vec::new(),
        }
    }

    /// Builds a level `n >= 1` element from its top map and the children on
    /// `dom(top)`. `children[x]` must be `Some` exactly when `x ∈ dom(top)`.
    pub fn new(top: PartialBijection, children: Vec<Option<TreePA>>) -> Result<Self> {
        let degree = top.degree();
        if children.len() != degree {
            return Err(Error::InvalidTree(format!(
                "expected {degree} child slots, got {}",
                children.len()
            )));
        }
        let mut level = None;
        for (x, child) in children.iter().enumerate() {
            match (top.in_domain(x), child) {
                (true, Some(c)) => {
                    if c.degree != degree {
                        return Err(Error::InvalidTree(format!(
                            "child {} has degree {}, expected {degree}",
                            x + 1,
                            c.degree
                        )));
                    }
                    match level {
                        None => level = Some(c.level),
                        Some(l) if l != c.level => {
                            return Err(Error::InvalidTree("children have different levels".into()))
                        }
                        _ => {}
                    }
                }
                (true, None) => {
                    return Err(Error::InvalidTree(format!("missing child for point {}", x + 1)))
                }
                (false, Some(_)) => {
                    return Err(Error::InvalidTree(format!(
                        "child given for point {} outside the top domain",
                        x + 1
                    )))
                }
                (false, None) => {}
            }
        }
        let level = match level {
            Some(l) => l + 1,
            None => {
                return Err(Error::InvalidTree(
                    "cannot infer level from an empty top; use TreePA::with_empty_top".into(),
                ))
            }
        };
        Ok(Self {
            degree,
            level,
            top: Some(top),
            children,
        })
    }

    /// Level-`n` element whose top map is empty (domain is the root alone).
    pub fn with_empty_top(degree: usize, level: usize) -> Self {
        if level == 0 {
            return Self::root(degree);
        }
        Self {
            degree,
            level,
            top: Some(PartialBijection::empty(degree)),
            children: vec![None; degree],
        }
    }

    /// The identity automorphism of the whole tree.
    pub fn identity(degree: usize, level: usize) -> Self {
        if level == 0 {
            return Self::root(degree);
        }
        let child = Self::identity(degree, level - 1);
        Self {
            degree,
            level,
            top: Some(PartialBijection::identity(degree)),
            children: vec![Some(child); degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Top partial bijection; `None` at level 0.
    pub fn top(&self) -> Option<&PartialBijection> {
        self.top.as_ref()
    }

    pub fn child(&self, x: usize) -> Option<&TreePA> {
        self.children.get(x).and_then(Option::as_ref)
    }

    /// Number of leaves, `d^n`.
    pub fn num_leaves(&self) -> Option<usize> {
        self.degree.checked_pow(self.level as u32)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.level != other.level {
            return Err(Error::ShapeMismatch {
                left_degree: self.degree,
                left_level: self.level,
                right_degree: other.degree,
                right_level: other.level,
            });
        }
        Ok(())
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &Self) -> Self {
        let (Some(a), Some(b)) = (&self.top, &other.top) else {
            return self.clone();
        };
        let top = a.compose_unchecked(b);
        let children = (0..self.degree)
            .map(|x| {
                top.get(x).map(|_| {
                    let ax = a.get(x).expect("x in dom(ab) implies x in dom(a)");
                    let f = self.children[x].as_ref().expect("child on domain");
                    let g = other.children[ax].as_ref().expect("child on domain");
                    f.compose_unchecked(g)
                })
            })
            .collect();
        Self {
            degree: self.degree,
            level: self.level,
            top: Some(top),
            children,
        }
    }

    /// The semigroup inverse: reverses every arrow of the tree map.
    pub fn inverse(&self) -> Self {
        let Some(a) = &self.top else {
            return self.clone();
        };
        let mut children = vec![None; self.degree];
        for (x, ax) in a.arrows() {
            children[ax] = self.children[x].as_ref().map(TreePA::inverse);
        }
        Self {
            degree: self.degree,
            level: self.level,
            top: Some(a.inverse()),
            children,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        match &self.top {
            None => true,
            Some(a) => a.is_idempotent() && self.children.iter().flatten().all(TreePA::is_idempotent),
        }
    }

    /// True when every vertex of the tree is in the domain.
    pub fn is_full(&self) -> bool {
        match &self.top {
            None => true,
            Some(a) => a.is_total() && self.children.iter().flatten().all(TreePA::is_full),
        }
    }

    /// Image of a leaf, or `None` when the leaf is outside the domain.
    pub fn apply_to_path(&self, path: &LeafPath) -> Result<Option<LeafPath>> {
        if path.len() != self.level {
            return Err(Error::PathLength {
                expected: self.level,
                got: path.len(),
            });
        }
        if let Some(&bad) = path.0.iter().find(|&&x| x >= self.degree) {
            return Err(Error::InvalidTree(format!(
                "path digit {} outside 1..={}",
                bad + 1,
                self.degree
            )));
        }
        let mut out = Vec::with_capacity(self.level);
        let mut node = self;
        for &x in &path.0 {
            let top = node.top.as_ref().expect("level > 0 along the path");
            let Some(ax) = top.get(x) else {
                return Ok(None);
            };
            out.push(ax);
            node = node.children[x].as_ref().expect("child on domain");
        }
        Ok(Some(LeafPath(out)))
    }

    /// Leaf action as a table over 0-based lexicographic leaf indices.
    pub fn leaf_map(&self) -> Result<Vec<Option<usize>>> {
        let leaves = self
            .num_leaves()
            .filter(|&l| l <= MAX_LEAVES)
            .ok_or_else(|| Error::TooLarge {
                what: "leaf count",
                size: format!("{}^{}", self.degree, self.level),
                limit: MAX_LEAVES.to_string(),
            })?;
        let mut out = vec![None; leaves];
        self.fill_leaf_map(&mut out, 0, 0);
        Ok(out)
    }

    fn fill_leaf_map(&self, out: &mut [Option<usize>], src_offset: usize, dst_offset: usize) {
        let Some(a) = &self.top else {
            out[src_offset] = Some(dst_offset);
            return;
        };
        let block = self.degree.pow(self.level as u32 - 1);
        for (x, ax) in a.arrows() {
            let child = self.children[x].as_ref().expect("child on domain");
            child.fill_leaf_map(out, src_offset + x * block, dst_offset + ax * block);
        }
    }

    /// Number of leaves in the domain.
    pub fn leaf_rank(&self) -> u64 {
        match &self.top {
            None => 1,
            Some(_) => self.children.iter().flatten().map(TreePA::leaf_rank).sum(),
        }
    }

    /// Leaves lying in the domain of every power `y^m`, as 0-based indices.
    ///
    /// Computed as the fixed point of `D ↦ {v ∈ D₁ : y(v) ∈ D}` starting
    /// from the leaf domain `D₁`.
    pub fn survivor_indices(&self) -> Result<Vec<usize>> {
        let map = self.leaf_map()?;
        let mut alive: Vec<bool> = map.iter().map(Option::is_some).collect();
        loop {
            let next: Vec<bool> = map
                .iter()
                .map(|t| t.is_some_and(|t| alive[t]))
                .collect();
            if next == alive {
                break;
            }
            alive = next;
        }
        Ok(alive
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
            .collect())
    }

    pub fn survivor_set(&self) -> Result<Vec<LeafPath>> {
        Ok(self
            .survivor_indices()?
            .into_iter()
            .map(|i| LeafPath::from_index(self.degree, self.level, i))
            .collect())
    }

    /// Ultimate rank via the cycle/chain recursion: chains of the top map
    /// contribute nothing, and a top cycle `(x₁ … x_k)` contributes
    /// `k · rk(y_{x₁} ⋯ y_{x_k})`.
    pub fn ultimate_rank(&self) -> u64 {
        let Some(a) = &self.top else {
            return 1;
        };
        a.decompose()
            .cycles
            .iter()
            .map(|cycle| {
                let product = self.cycle_product(cycle);
                cycle.len() as u64 * product.ultimate_rank()
            })
            .sum()
    }

    /// Product of the children along a top cycle, starting at its first point.
    fn cycle_product(&self, cycle: &[usize]) -> TreePA {
        let child = |x: usize| self.children[x].as_ref().expect("cycle point in domain");
        cycle[1..]
            .iter()
            .fold(child(cycle[0]).clone(), |acc, &x| acc.compose_unchecked(child(x)))
    }

    /// Identity restricted to the domain of `self`.
    pub fn domain_idempotent(&self) -> Self {
        let Some(a) = &self.top else {
            return self.clone();
        };
        Self {
            degree: self.degree,
            level: self.level,
            top: Some(PartialBijection::partial_identity(self.degree, a.domain())),
            children: self
                .children
                .iter()
                .map(|c| c.as_ref().map(TreePA::domain_idempotent))
                .collect(),
        }
    }

    /// A full automorphism agreeing with `self` on its domain. Top maps are
    /// completed by [`PartialBijection::extend_to_permutation`] and subtrees
    /// off the domain get the identity.
    pub fn extend_to_automorphism(&self) -> Self {
        let Some(a) = &self.top else {
            return self.clone();
        };
        let sub_identity = Self::identity(self.degree, self.level - 1);
        Self {
            degree: self.degree,
            level: self.level,
            top: Some(a.extend_to_permutation()),
            children: self
                .children
                .iter()
                .map(|c| {
                    Some(match c {
                        Some(c) => c.extend_to_automorphism(),
                        None => sub_identity.clone(),
                    })
                })
                .collect(),
        }
    }

    /// `y = e · σ` with `e` the idempotent on `dom(y)` and `σ` a full automorphism.
    pub fn decompose_idempotent_automorphism(&self) -> (Self, Self) {
        (self.domain_idempotent(), self.extend_to_automorphism())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_repr()).expect("tree serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: TreeRepr = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_repr(&repr)
    }

    fn to_repr(&self) -> TreeRepr {
        TreeRepr {
            d: self.degree,
            n: self.level,
            top: self.top.as_ref().map(PartialBijection::arrows_string),
            children: self.top.as_ref().map(|a| {
                a.domain()
                    .map(|x| (x + 1, self.children[x].as_ref().unwrap().to_repr()))
                    .collect()
            }),
        }
    }

    fn from_repr(repr: &TreeRepr) -> Result<Self> {
        if repr.d == 0 {
            return Err(Error::ZeroDegree);
        }
        if repr.n == 0 {
            if repr.top.is_some() || repr.children.as_ref().is_some_and(|c| !c.is_empty()) {
                return Err(Error::InvalidTree("level-0 element has no top map".into()));
            }
            return Ok(Self::root(repr.d));
        }
        let top = PartialBijection::parse_arrows(repr.d, repr.top.as_deref().unwrap_or(""))?;
        let mut children = vec![None; repr.d];
        for (&key, child) in repr.children.iter().flatten() {
            if key == 0 || key > repr.d {
                return Err(Error::InvalidTree(format!("child key {key} outside 1..={}", repr.d)));
            }
            let child = Self::from_repr(child)?;
            if child.level + 1 != repr.n {
                return Err(Error::InvalidTree(format!(
                    "child {key} has level {}, expected {}",
                    child.level,
                    repr.n - 1
                )));
            }
            children[key - 1] = Some(child);
        }
        if top.rank() == 0 {
            if children.iter().any(Option::is_some) {
                return Err(Error::InvalidTree("children given for an empty top".into()));
            }
            return Ok(Self::with_empty_top(repr.d, repr.n));
        }
        Self::new(top, children)
    }
}

impl fmt::Debug for TreePA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

impl Serialize for TreePA {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreePA {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TreeRepr::deserialize(deserializer)?;
        Self::from_repr(&repr).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    d: usize,
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<BTreeMap<usize, TreeRepr>>,
}

/// A leaf `v^n_j` given by its digits `(x₁, …, x_n)`, each in `0..d`.
///
/// Leaves are numbered lexicographically: index `j = Σ x_k d^{n-k}`, so the
/// 1-based vertex number is `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafPath(pub Vec<usize>);

impl LeafPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, degree: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * degree + x)
    }

    pub fn from_index(degree: usize, level: usize, mut index: usize) -> Self {
        let mut digits = vec![0; level];
        for slot in digits.iter_mut().rev() {
            *slot = index % degree;
            index /= degree;
        }
        Self(digits)
    }
}

/// Exact sizes `N_0, …, N_max` of the partial wreath powers, with the
/// per-rank weights `C(d,i)² i! N_{k-1}^i` used by the sampler.
#[derive(Clone, Debug)]
pub struct CountTable {
    degree: usize,
    counts: Vec<BigUint>,
    /// `weights[k][i]`: number of level-`k` elements whose top has rank `i`.
    weights: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(degree: usize, max_level: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        let class_sizes: Vec<BigUint> = (0..=degree)
            .map(|i| combinat::rank_class_size(degree, i))
            .collect();
        let mut counts = vec![BigUint::one()];
        let mut weights = vec![Vec::new()];
        for _ in 1..=max_level {
            let prev = counts.last().unwrap();
            let mut power = BigUint::one();
            let mut level_weights = Vec::with_capacity(degree + 1);
            for size in &class_sizes {
                level_weights.push(size * &power);
                power *= prev;
            }
            counts.push(level_weights.iter().sum());
            weights.push(level_weights);
        }
        Self {
            degree,
            counts,
            weights,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn max_level(&self) -> usize {
        self.counts.len() - 1
    }

    /// `N_n`; panics if `n` exceeds the table.
    pub fn count(&self, level: usize) -> &BigUint {
        &self.counts[level]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Number of level-`n` elements with top rank `i`, for `i = 0..=d`.
    pub fn rank_weights(&self, level: usize) -> &[BigUint] {
        &self.weights[level]
    }

    /// Draws a uniformly distributed element of `P_n`.
    pub fn sample<R: Rng + ?Sized>(&self, level: usize, rng: &mut R) -> TreePA {
        assert!(level <= self.max_level(), "level {level} beyond count table");
        if level == 0 {
            return TreePA::root(self.degree);
        }
        let rank = combinat::sample_weighted(&self.weights[level], rng);
        let top = iscore::sample_with_rank(self.degree, rank, rng);
        if rank == 0 {
            return TreePA::with_empty_top(self.degree, level);
        }
        let children = (0..self.degree)
            .map(|x| top.get(x).map(|_| self.sample(level - 1, rng)))
            .collect();
        TreePA {
            degree: self.degree,
            level,
            top: Some(top),
            children,
        }
    }
}

/// `N_n = |P_n|`.
pub fn count_elements(degree: usize, level: usize) -> BigUint {
    CountTable::new(degree, level).count(level).clone()
}

/// Draws a uniformly distributed element of `P_n`.
pub fn sample_uniform_tree<R: Rng + ?Sized>(degree: usize, level: usize, rng: &mut R) -> TreePA {
    CountTable::new(degree, level).sample(level, rng)
}

/// Every element of `P_n`, ordered by top map (as in
/// [`iscore::enumerate_all`]) and then lexicographically by the children
/// at increasing domain points.
pub fn enumerate_tree(degree: usize, level: usize) -> Result<Vec<TreePA>> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let count = count_elements(degree, level);
    if count.to_u64().is_none_or(|c| c > MAX_ENUMERATION) {
        return Err(Error::TooLarge {
            what: "element count for enumeration",
            size: count.to_string(),
            limit: MAX_ENUMERATION.to_string(),
        });
    }
    Ok(enumerate_level(degree, level, &iscore::enumerate_all(degree)?))
}

fn enumerate_level(degree: usize, level: usize, tops: &[PartialBijection]) -> Vec<TreePA> {
    if level == 0 {
        return vec![TreePA::root(degree)];
    }
    let prev = enumerate_level(degree, level - 1, tops);
    let mut out = Vec::new();
    for top in tops {
        let dom: Vec<usize> = top.domain().collect();
        if dom.is_empty() {
            out.push(TreePA::with_empty_top(degree, level));
            continue;
        }
        // mixed-radix counter over prev^rank, last domain point fastest
        let mut digits = vec![0usize; dom.len()];
        loop {
            let mut children = vec![None; degree];
            for (&x, &k) in dom.iter().zip(&digits) {
                children[x] = Some(prev[k].clone());
            }
            out.push(TreePA {
                degree,
                level,
                top: Some(top.clone()),
                children,
            });
            let Some(pos) = digits.iter().rposition(|&k| k + 1 < prev.len()) else {
                break;
            };
            digits[pos] += 1;
            for k in &mut digits[pos + 1..] {
                *k = 0;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Top swaps the two level-1 vertices; below vertex 1 the identity of
    /// level 1, below vertex 2 only the vertex itself.
    pub(crate) fn example_element() -> TreePA {
        let swap: PartialBijection = "d=2: 1>2; 2>1".parse().unwrap();
        TreePA::new(
            swap,
            vec![
                Some(TreePA::identity(2, 1)),
                Some(TreePA::with_empty_top(2, 1)),
            ],
        )
        .unwrap()
    }

    fn path(digits: &[usize]) -> LeafPath {
        LeafPath(digits.iter().map(|x| x - 1).collect())
    }

    #[test]
    fn example_leaf_action() {
        let y = example_element();
        assert_eq!(y.apply_to_path(&path(&[1, 1])).unwrap(), Some(path(&[2, 1])));
        assert_eq!(y.apply_to_path(&path(&[1, 2])).unwrap(), Some(path(&[2, 2])));
        assert_eq!(y.apply_to_path(&path(&[2, 1])).unwrap(), None);
        assert_eq!(y.apply_to_path(&path(&[2, 2])).unwrap(), None);
        assert_eq!(y.leaf_map().unwrap(), vec![Some(2), Some(3), None, None]);
        assert_eq!(y.leaf_rank(), 2);
        assert!(y.survivor_set().unwrap().is_empty());
        assert_eq!(y.ultimate_rank(), 0);
        let yy = y.compose(&y).unwrap();
        assert_eq!(yy.leaf_map().unwrap(), vec![None; 4]);
    }

    #[test]
    fn identity_cases() {
        let id = TreePA::identity(2, 2);
        for i in 0..4 {
            let p = LeafPath::from_index(2, 2, i);
            assert_eq!(id.apply_to_path(&p).unwrap(), Some(p.clone()));
        }
        assert_eq!(id.leaf_rank(), 4);
        assert_eq!(id.survivor_indices().unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(TreePA::identity(3, 3).ultimate_rank(), 27);
        assert_eq!(TreePA::with_empty_top(3, 2).leaf_rank(), 0);
        for y in enumerate_tree(2, 2).unwrap() {
            assert_eq!(id.compose(&y).unwrap(), y);
            assert_eq!(y.compose(&id).unwrap(), y);
        }
    }

    #[test]
    fn path_length_is_checked() {
        let err = TreePA::identity(2, 2).apply_to_path(&LeafPath(vec![0])).unwrap_err();
        assert_eq!(err, Error::PathLength { expected: 2, got: 1 });
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let e = TreePA::identity(2, 2).compose(&TreePA::identity(2, 3));
        assert!(matches!(e, Err(Error::ShapeMismatch { .. })));
        let e = TreePA::identity(2, 1).compose(&TreePA::identity(3, 1));
        assert!(matches!(e, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn constructor_validates_children() {
        let swap: PartialBijection = "d=2: 1>2; 2>1".parse().unwrap();
        assert!(TreePA::new(swap.clone(), vec![Some(TreePA::root(2)), None]).is_err());
        assert!(TreePA::new(
            swap.clone(),
            vec![Some(TreePA::root(2)), Some(TreePA::identity(2, 1))]
        )
        .is_err());
        let half: PartialBijection = "d=2: 1>1".parse().unwrap();
        assert!(TreePA::new(half, vec![Some(TreePA::root(2)), Some(TreePA::root(2))]).is_err());
    }

    #[test]
    fn counts_match_small_values() {
        for n in 0..=5 {
            assert_eq!(count_elements(1, n), BigUint::from(n as u64 + 1));
        }
        assert_eq!(count_elements(2, 0), BigUint::one());
        assert_eq!(count_elements(2, 1), BigUint::from(7u32));
        assert_eq!(count_elements(2, 2), BigUint::from(127u32));
        assert_eq!(count_elements(2, 3), BigUint::from(32767u32));
        assert_eq!(count_elements(3, 1), BigUint::from(34u32));
        let t = CountTable::new(3, 3);
        assert!(t.counts().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_matches_counts() {
        for (d, n, expected) in [(2, 1, 7), (2, 2, 127), (1, 3, 4), (3, 1, 34), (1, 5, 6)] {
            let all = enumerate_tree(d, n).unwrap();
            assert_eq!(all.len(), expected);
            let distinct: std::collections::HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), expected);
        }
        assert!(matches!(enumerate_tree(3, 3), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn ultimate_rank_matches_survivors_exhaustively() {
        for (d, n) in [(2, 1), (2, 2), (1, 4), (3, 1)] {
            for y in enumerate_tree(d, n).unwrap() {
                assert_eq!(y.ultimate_rank(), y.survivor_indices().unwrap().len() as u64, "{y:?}");
            }
        }
    }

    #[test]
    fn level_one_ultimate_rank_is_cycle_support() {
        for a in iscore::enumerate_all(3).unwrap() {
            let y = if a.rank() == 0 {
                TreePA::with_empty_top(3, 1)
            } else {
                let children = (0..3).map(|x| a.get(x).map(|_| TreePA::root(3))).collect();
                TreePA::new(a.clone(), children).unwrap()
            };
            let support: usize = a.decompose().cycle_lengths().iter().sum();
            assert_eq!(y.ultimate_rank(), support as u64);
        }
    }

    #[test]
    fn inverse_semigroup_axioms_on_p2() {
        let all = enumerate_tree(2, 2).unwrap();
        for y in &all {
            let yi = y.inverse();
            assert_eq!(y.compose(&yi).unwrap().compose(y).unwrap(), *y);
            assert_eq!(yi.compose(y).unwrap().compose(&yi).unwrap(), yi);
            assert_eq!(yi.inverse(), *y);
        }
    }

    #[test]
    fn factorization_examples() {
        let full = TreePA::identity(2, 2);
        let (e, s) = full.decompose_idempotent_automorphism();
        assert_eq!(e, full);
        assert_eq!(s, full);

        let empty = TreePA::with_empty_top(2, 3);
        let (e, s) = empty.decompose_idempotent_automorphism();
        assert_eq!(e, empty);
        assert_eq!(s, TreePA::identity(2, 3));

        for y in enumerate_tree(2, 2).unwrap() {
            let (e, s) = y.decompose_idempotent_automorphism();
            assert!(e.is_idempotent());
            assert!(s.is_full());
            assert_eq!(e.compose(&s).unwrap(), y);
        }
    }

    #[test]
    fn leaf_paths_index_lexicographically() {
        assert_eq!(LeafPath(vec![1, 0]).index(2), 2);
        assert_eq!(LeafPath::from_index(3, 3, 14), LeafPath(vec![1, 1, 2]));
        for i in 0..27 {
            assert_eq!(LeafPath::from_index(3, 3, i).index(3), i);
        }
    }

    #[test]
    fn json_form() {
        assert_eq!(TreePA::root(2).to_json(), r#"{"d":2,"n":0}"#);
        let y = example_element();
        assert_eq!(
            y.to_json(),
            r#"{"d":2,"n":2,"top":"1>2;2>1","children":{"1":{"d":2,"n":1,"top":"1>1;2>2","children":{"1":{"d":2,"n":0},"2":{"d":2,"n":0}}},"2":{"d":2,"n":1,"top":"","children":{}}}}"#
        );
        assert_eq!(TreePA::from_json(&y.to_json()).unwrap(), y);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let table = CountTable::new(3, 4);
        for _ in 0..200 {
            let z = table.sample(4, &mut rng);
            assert_eq!(TreePA::from_json(&z.to_json()).unwrap(), z);
        }
        assert!(TreePA::from_json(r#"{"d":2,"n":1,"top":"1>2","children":{}}"#).is_err());
        assert!(TreePA::from_json(r#"{"d":2,"n":1,"top":"","children":{"1":{"d":2,"n":0}}}"#).is_err());
        assert!(TreePA::from_json(r#"{"d":2,"n":2,"top":"1>1","children":{"1":{"d":2,"n":0}}}"#).is_err());
    }

    #[test]
    fn sampler_small_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let table = CountTable::new(1, 1);
        let ones = (0..10_000).filter(|_| table.sample(1, &mut rng).leaf_rank() == 1).count();
        // p = 1/2, sd = 50
        assert!((ones as f64 - 5_000.0).abs() < 250.0, "{ones}");

        let table = CountTable::new(2, 1);
        let empty = (0..70_000)
            .filter(|_| table.sample(1, &mut rng).top().unwrap().rank() == 0)
            .count();
        // p = 1/7, sd ≈ 92.6
        assert!((empty as f64 - 10_000.0).abs() < 500.0, "{empty}");
    }
}
