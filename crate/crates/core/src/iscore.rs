//! The symmetric inverse semigroup `IS_d`: partial bijections of a `d`-point set.
//!
//! Points are `0..d` in the Rust API. The text form uses `1..=d`, e.g.
//! `"d=3: 1>2; 2>1"`.
//!
//! Composition is applied left to right: `f.compose(&g)` first applies `f`,
//! then `g`, so `dom(fg) = dom(f) ∩ f⁻¹(dom(g))` and `(fg)(x) = g(f(x))`.
//! The same order is used for tree elements and action matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;

use crate::combinat;
use crate::error::{Error, Result};

/// Largest degree accepted by [`enumerate_all`].
pub const MAX_ENUMERATION_DEGREE: usize = 6;

/// An injective partial map of `{0, .., d-1}` into itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialBijection {
    map: Vec<Option<usize>>,
}

impl PartialBijection {
    /// Builds a partial bijection from its table; `map[x]` is the image of `x`.
    pub fn new(map: Vec<Option<usize>>) -> Result<Self> {
        let d = map.len();
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = vec![false; d];
        for (x, y) in map.iter().enumerate() {
            if let Some(y) = *y {
                if y >= d {
                    return Err(Error::InvalidPartialBijection(format!(
                        "image {} of point {} outside 1..={d}",
                        y + 1,
                        x + 1
                    )));
                }
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidPartialBijection(format!(
                        "point {} has two preimages",
                        y + 1
                    )));
                }
            }
        }
        Ok(Self { map })
    }

    /// Builds a partial bijection from `(source, target)` arrows.
    pub fn from_arrows(d: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut map = vec![None; d];
        for &(x, y) in arrows {
            if x >= d {
                return Err(Error::InvalidPartialBijection(format!(
                    "source {} outside 1..={d}",
                    x + 1
                )));
            }
            if map[x].replace(y).is_some() {
                return Err(Error::InvalidPartialBijection(format!(
                    "point {} mapped twice",
                    x + 1
                )));
            }
        }
        Self::new(map)
    }

    pub fn empty(d: usize) -> Self {
        assert!(d >= 1, "degree must be at least 1");
        Self { map: vec![None; d] }
    }

    pub fn identity(d: usize) -> Self {
        assert!(d >= 1, "degree must be at least 1");
        Self {
            map: (0..d).map(Some).collect(),
        }
    }

    /// Identity restricted to `points`.
    pub fn partial_identity(d: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::empty(d);
        for x in points {
            p.map[x] = Some(x);
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.map
    }

    pub fn in_domain(&self, x: usize) -> bool {
        self.get(x).is_some()
    }

    /// Domain points in ascending order.
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|_| x))
    }

    /// Image points in ascending order.
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.map.iter().flatten().copied().collect();
        im.sort_unstable();
        im
    }

    /// `(source, target)` pairs ordered by source.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }

    /// Size of the domain.
    pub fn rank(&self) -> usize {
        self.map.iter().filter(|y| y.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn is_idempotent(&self) -> bool {
        self.arrows().all(|(x, y)| x == y)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            map: self
                .map
                .iter()
                .map(|y| y.and_then(|y| other.map[y]))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.degree()];
        for (x, y) in self.arrows() {
            map[y] = Some(x);
        }
        Self { map }
    }

    pub fn decompose(&self) -> CycleChainDecomposition {
        let d = self.degree();
        let mut in_image = vec![false; d];
        for y in self.map.iter().flatten() {
            in_image[*y] = true;
        }
        let mut visited = vec![false; d];
        let mut chains = Vec::new();
        // every chain starts at a point outside the image
        for start in (0..d).filter(|&x| !in_image[x]) {
            let mut chain = vec![start];
            visited[start] = true;
            let mut cur = start;
            while let Some(next) = self.map[cur] {
                chain.push(next);
                visited[next] = true;
                cur = next;
            }
            chains.push(chain);
        }
        let mut cycles = Vec::new();
        for start in 0..d {
            if visited[start] {
                continue;
            }
            let mut cycle = vec![start];
            visited[start] = true;
            let mut cur = self.map[start].expect("unvisited point lies on a cycle");
            while cur != start {
                cycle.push(cur);
                visited[cur] = true;
                cur = self.map[cur].expect("unvisited point lies on a cycle");
            }
            cycles.push(cycle);
        }
        CycleChainDecomposition { cycles, chains }
    }

    /// Completes `self` to a permutation. Points outside the domain are matched
    /// to points outside the image in ascending order.
    pub fn extend_to_permutation(&self) -> Self {
        let d = self.degree();
        let mut in_image = vec![false; d];
        for y in self.map.iter().flatten() {
            in_image[*y] = true;
        }
        let mut free_targets = (0..d).filter(|&y| !in_image[y]);
        let map = self
            .map
            .iter()
            .map(|y| y.or_else(|| free_targets.next()))
            .collect();
        Self { map }
    }

    /// Compact arrow list in 1-based form, e.g. `"1>2;2>1"`. Empty map gives `""`.
    pub fn arrows_string(&self) -> String {
        self.arrows()
            .map(|(x, y)| format!("{}>{}", x + 1, y + 1))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses a 1-based arrow list such as `"1>2; 2>1"` for the given degree.
    pub fn parse_arrows(d: usize, s: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("expected `x>y`, got `{part}`")))?;
            let parse_point = |t: &str| -> Result<usize> {
                let v: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point `{}`", t.trim())))?;
                if v == 0 {
                    return Err(Error::Parse("points are numbered from 1".into()));
                }
                Ok(v - 1)
            };
            arrows.push((parse_point(a)?, parse_point(b)?));
        }
        Self::from_arrows(d, &arrows)
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}:", self.degree())?;
        let mut first = true;
        for (x, y) in self.arrows() {
            write!(f, "{}{}>{}", if first { " " } else { "; " }, x + 1, y + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialBijection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing `d=..:` prefix in `{s}`")))?;
        let d: usize = head
            .trim()
            .strip_prefix("d=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad degree header `{}`", head.trim())))?;
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        Self::parse_arrows(d, body)
    }
}

/// Orbit structure of a partial bijection.
///
/// Cycles start at their smallest point and are listed by that point. Chains
/// run from a point outside the image to a point outside the domain; a point
/// in neither is a chain of length one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleChainDecomposition {
    pub cycles: Vec<Vec<usize>>,
    pub chains: Vec<Vec<usize>>,
}

impl CycleChainDecomposition {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Rebuilds the partial map described by the decomposition.
    pub fn to_partial_bijection(&self, d: usize) -> Result<PartialBijection> {
        let mut arrows = Vec::new();
        for cycle in &self.cycles {
            for (i, &x) in cycle.iter().enumerate() {
                arrows.push((x, cycle[(i + 1) % cycle.len()]));
            }
        }
        for chain in &self.chains {
            arrows.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        PartialBijection::from_arrows(d, &arrows)
    }
}

/// `|IS_d| = Σ_i C(d,i)² i!`.
pub fn order(d: usize) -> BigUint {
    (0..=d).map(|i| combinat::rank_class_size(d, i)).sum()
}

/// Every element of `IS_d`, rank-major, then lexicographic by domain, image
/// and the assignment of sorted image points to sorted domain points.
pub fn enumerate_all(d: usize) -> Result<Vec<PartialBijection>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d > MAX_ENUMERATION_DEGREE {
        return Err(Error::TooLarge {
            what: "degree for enumeration",
            size: d.to_string(),
            limit: MAX_ENUMERATION_DEGREE.to_string(),
        });
    }
    let mut out = Vec::new();
    for i in 0..=d {
        let subsets = combinat::combinations(d, i);
        for dom in &subsets {
            for img in &subsets {
                for targets in combinat::permutations(img) {
                    let mut map = vec![None; d];
                    for (&x, &y) in dom.iter().zip(&targets) {
                        map[x] = Some(y);
                    }
                    out.push(PartialBijection { map });
                }
            }
        }
    }
    Ok(out)
}

/// Draws a uniformly distributed element of `IS_d`.
pub fn sample_uniform<R: Rng + ?Sized>(d: usize, rng: &mut R) -> PartialBijection {
    let weights: Vec<BigUint> = (0..=d).map(|i| combinat::rank_class_size(d, i)).collect();
    let rank = combinat::sample_weighted(&weights, rng);
    sample_with_rank(d, rank, rng)
}

/// Uniform element among the partial bijections of the given rank.
pub fn sample_with_rank<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> PartialBijection {
    let dom = combinat::sample_subset(d, rank, rng);
    let targets = combinat::sample_arrangement(d, rank, rng);
    let mut map = vec![None; d];
    for (x, y) in dom.into_iter().zip(targets) {
        map[x] = Some(y);
    }
    PartialBijection { map }
}
