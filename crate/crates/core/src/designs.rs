//! Block designs: verification, resolutions, affine planes, Hadamard designs.
//!
//! Points are the integers `0..v`. A design stores its blocks as sorted point
//! lists together with the verified parameter tuple (v, b, r, k, λ). A
//! [`Resolution`] partitions the block indices into parallel classes, each of
//! which partitions the point set.

use crate::algebra::{gaussian_binomial, FiniteField};
use crate::error::{Error, Result};

/// Verified parameters of a 2-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

/// A block design over points `0..v` with uniform block size, replication,
/// and pair coverage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceDesign {
    v: usize,
    blocks: Vec<Vec<usize>>,
    params: DesignParams,
}

/// A partition of a design's block indices into parallel classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    classes: Vec<Vec<usize>>,
}

/// Outcome of the affine-resolvability check: the constant intersection
/// number m of nonparallel blocks and the four parameter relations it forces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineResolvableReport {
    /// Intersection size of any two nonparallel blocks; `None` when the
    /// design has a single parallel class and the condition is vacuous.
    pub m: Option<usize>,
    /// m·v = k²
    pub intersection_relation: bool,
    /// λ(v−k) = k(k−1)
    pub pair_relation: bool,
    /// r = k + λ
    pub replication_relation: bool,
    /// b = v + r − 1
    pub block_count_relation: bool,
}

impl AffineResolvableReport {
    pub fn all_hold(&self) -> bool {
        self.intersection_relation
            && self.pair_relation
            && self.replication_relation
            && self.block_count_relation
    }
}

impl IncidenceDesign {
    /// Checks that `blocks` form a 2-design over `0..v` and derives its
    /// parameters. Uniformity failures name the offending point or pair.
    pub fn verify(v: usize, blocks: &[Vec<usize>]) -> Result<IncidenceDesign> {
        if blocks.is_empty() || v == 0 {
            return Err(Error::EmptyDesign);
        }
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (bi, block) in blocks.iter().enumerate() {
            let mut sb = block.clone();
            sb.sort_unstable();
            if sb.iter().any(|&p| p >= v) {
                let point = *sb.iter().find(|&&p| p >= v).unwrap();
                return Err(Error::PointOutOfRange { block: bi, point, v });
            }
            if sb.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicatePoint { block: bi });
            }
            sorted_blocks.push(sb);
        }

        let k = sorted_blocks[0].len();
        if k == 0 {
            return Err(Error::EmptyDesign);
        }
        for (bi, block) in sorted_blocks.iter().enumerate() {
            if block.len() != k {
                return Err(Error::NonUniformBlockSize { block: bi, expected: k, got: block.len() });
            }
        }

        let mut replication = vec![0usize; v];
        let mut pair_count = vec![0usize; v * v];
        for block in &sorted_blocks {
            for (i, &p) in block.iter().enumerate() {
                replication[p] += 1;
                for &q in &block[i + 1..] {
                    pair_count[p * v + q] += 1;
                }
            }
        }
        let r = replication[0];
        for (point, &got) in replication.iter().enumerate() {
            if got != r {
                return Err(Error::NonUniformReplication { point, expected: r, got });
            }
        }
        let lambda = if v > 1 { pair_count[1] } else { 0 };
        for p in 0..v {
            for q in p + 1..v {
                let got = pair_count[p * v + q];
                if got != lambda {
                    return Err(Error::NonUniformPairCoverage { pair: (p, q), expected: lambda, got });
                }
            }
        }

        let b = sorted_blocks.len();
        // Standard identities, cross-multiplied to stay in integers and to
        // remain meaningful for degenerate k = 1 designs.
        if lambda * (v - 1) != r * (k - 1) {
            return Err(Error::ParameterRelation { relation: format!("λ(v−1) = r(k−1): {lambda}·{} ≠ {r}·{}", v - 1, k - 1) });
        }
        if b * k != v * r {
            return Err(Error::ParameterRelation { relation: format!("bk = vr: {b}·{k} ≠ {v}·{r}") });
        }

        Ok(IncidenceDesign {
            v,
            blocks: sorted_blocks,
            params: DesignParams { v, b, r, k, lambda },
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &[usize] {
        &self.blocks[index]
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn block_contains(&self, block: usize, point: usize) -> bool {
        self.blocks[block].binary_search(&point).is_ok()
    }

    fn intersection_size(&self, a: usize, b: usize) -> usize {
        self.blocks[a].iter().filter(|p| self.block_contains(b, **p)).count()
    }

    /// Finds a partition of the blocks into parallel classes by deterministic
    /// backtracking (always extending from the lowest unused block index).
    pub fn find_resolution(&self) -> Result<Resolution> {
        let DesignParams { v, k, .. } = self.params;
        if v % k != 0 {
            return Err(Error::NotResolvable);
        }
        let mut unused: Vec<bool> = vec![true; self.blocks.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        if self.resolve_rec(&mut unused, &mut classes) {
            Ok(Resolution { classes })
        } else {
            Err(Error::NotResolvable)
        }
    }

    fn resolve_rec(&self, unused: &mut Vec<bool>, classes: &mut Vec<Vec<usize>>) -> bool {
        let Some(seed) = unused.iter().position(|&u| u) else {
            return true;
        };
        let mut covered = vec![false; self.v];
        for &p in &self.blocks[seed] {
            covered[p] = true;
        }
        unused[seed] = false;
        let mut class = vec![seed];
        let ok = self.extend_class(unused, classes, &mut class, &mut covered);
        if !ok {
            unused[seed] = true;
        }
        ok
    }

    /// Exact-cover step: pick the lowest uncovered point, try every unused
    /// block through it that avoids covered points, in index order.
    fn extend_class(
        &self,
        unused: &mut Vec<bool>,
        classes: &mut Vec<Vec<usize>>,
        class: &mut Vec<usize>,
        covered: &mut Vec<bool>,
    ) -> bool {
        let Some(target) = covered.iter().position(|&c| !c) else {
            classes.push(class.clone());
            if self.resolve_rec(unused, classes) {
                return true;
            }
            classes.pop();
            return false;
        };
        for bi in 0..self.blocks.len() {
            if !unused[bi]
                || !self.block_contains(bi, target)
                || self.blocks[bi].iter().any(|&p| covered[p])
            {
                continue;
            }
            unused[bi] = false;
            class.push(bi);
            for &p in &self.blocks[bi] {
                covered[p] = true;
            }
            if self.extend_class(unused, classes, class, covered) {
                return true;
            }
            for &p in &self.blocks[bi] {
                covered[p] = false;
            }
            class.pop();
            unused[bi] = true;
        }
        false
    }

    /// Checks that nonparallel blocks meet in a constant number of points and
    /// reports the four parameter relations of affine resolvable designs.
    pub fn affine_resolvable_check(&self, res: &Resolution) -> Result<AffineResolvableReport> {
        res.validate(self)?;
        let class_of = res.class_of_blocks(self.blocks.len());
        let mut m: Option<usize> = None;
        for a in 0..self.blocks.len() {
            for b in a + 1..self.blocks.len() {
                if class_of[a] == class_of[b] {
                    continue;
                }
                let got = self.intersection_size(a, b);
                match m {
                    None => m = Some(got),
                    Some(expected) if expected != got => {
                        return Err(Error::NonConstantIntersection { pair: (a, b), expected, got });
                    }
                    _ => {}
                }
            }
        }
        let DesignParams { v, b, r, k, lambda } = self.params;
        Ok(AffineResolvableReport {
            m,
            intersection_relation: m.map(|m| m * v == k * k).unwrap_or(true),
            pair_relation: lambda * (v - k) == k * (k - 1),
            replication_relation: r == k + lambda,
            block_count_relation: b == v + r - 1,
        })
    }

    /// The unique block disjoint from `block` that contains `point`
    /// (the parallel of `block` through `point`).
    pub fn parallel_block_through(
        &self,
        res: &Resolution,
        block: usize,
        point: usize,
    ) -> Result<usize> {
        if self.block_contains(block, point) {
            return Err(Error::PointOnBlock { point, block });
        }
        let class = res
            .classes()
            .iter()
            .find(|c| c.contains(&block))
            .ok_or(Error::NotResolvable)?;
        class
            .iter()
            .copied()
            .find(|&c| self.block_contains(c, point))
            .ok_or(Error::NotResolvable)
    }
}

impl Resolution {
    pub fn new(classes: Vec<Vec<usize>>) -> Self {
        Resolution { classes }
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Maps block index → class index.
    pub fn class_of_blocks(&self, block_count: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; block_count];
        for (ci, class) in self.classes.iter().enumerate() {
            for &b in class {
                out[b] = ci;
            }
        }
        out
    }

    /// The class index of one block.
    pub fn class_of(&self, block: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&block))
    }

    /// Position of a block inside its class.
    pub fn position_in_class(&self, block: usize) -> Option<usize> {
        let ci = self.class_of(block)?;
        self.classes[ci].iter().position(|&b| b == block)
    }

    /// Checks that every class partitions the point set, that there are r
    /// classes, and that each class holds v/k blocks.
    pub fn validate(&self, design: &IncidenceDesign) -> Result<()> {
        let DesignParams { v, r, k, .. } = design.params();
        if self.classes.len() != r {
            return Err(Error::ParameterRelation {
                relation: format!("resolution has {} classes, expected r = {r}", self.classes.len()),
            });
        }
        let mut seen_block = vec![false; design.blocks().len()];
        for class in &self.classes {
            if class.len() != v / k {
                return Err(Error::ParameterRelation {
                    relation: format!("class holds {} blocks, expected v/k = {}", class.len(), v / k),
                });
            }
            let mut covered = vec![false; v];
            for &bi in class {
                if seen_block[bi] {
                    return Err(Error::ParameterRelation {
                        relation: format!("block {bi} appears in two classes"),
                    });
                }
                seen_block[bi] = true;
                for &p in design.block(bi) {
                    if covered[p] {
                        return Err(Error::ParameterRelation {
                            relation: format!("class blocks overlap at point {p}"),
                        });
                    }
                    covered[p] = true;
                }
            }
            if covered.iter().any(|&c| !c) {
                return Err(Error::ParameterRelation {
                    relation: "class does not cover every point".into(),
                });
            }
        }
        Ok(())
    }
}

/// The affine plane AG(2,q): points are pairs of field elements, lines are
/// the verticals x = c and the graphs y = s·x + t.
///
/// The point (x, y) gets index `x·q + y` (field elements in enumeration
/// order). Class 0 of the resolution is the vertical class; class 1 + i
/// collects the lines of slope `element(i)`, each ordered by intercept.
pub fn affine_plane(q: u64) -> Result<(IncidenceDesign, Resolution)> {
    let field = FiniteField::from_order(q)?;
    let n = q as usize;
    let elems = field.elements();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n * n + n);
    let mut classes: Vec<Vec<usize>> = Vec::with_capacity(n + 1);

    // vertical lines x = c
    classes.push((0..n).collect());
    for c in 0..n {
        blocks.push((0..n).map(|y| c * n + y).collect());
    }
    // lines y = s·x + t, grouped by slope
    for s in &elems {
        let start = blocks.len();
        classes.push((start..start + n).collect());
        for t in &elems {
            let line = elems
                .iter()
                .map(|x| {
                    let y = s.mul(x).unwrap().add(t).unwrap();
                    (x.index() as usize) * n + y.index() as usize
                })
                .collect();
            blocks.push(line);
        }
    }

    let design = IncidenceDesign::verify(n * n, &blocks)?;
    let res = Resolution::new(classes);
    res.validate(&design)?;
    Ok((design, res))
}

/// The Sylvester Hadamard matrix H₂^{⊗k} of size 2^k, entries ±1.
pub fn sylvester_hadamard(k: u32) -> Result<Vec<Vec<i32>>> {
    if k < 1 || 1usize << k > 64 {
        return Err(Error::BadHadamardOrder(1usize << k));
    }
    let mut h = vec![vec![1, 1], vec![1, -1]];
    for _ in 1..k {
        let n = h.len();
        let mut next = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..2 * n {
            for j in 0..2 * n {
                next[i][j] = h[i % n][j % n] * if i >= n && j >= n { -1 } else { 1 };
            }
        }
        h = next;
    }
    Ok(h)
}

fn check_hadamard(h: &[Vec<i32>]) -> Result<()> {
    let n = h.len();
    for i in 0..n {
        if h[i].len() != n {
            return Err(Error::BadHadamardOrder(n));
        }
        for j in 0..n {
            let dot: i64 = (0..n).map(|c| (h[i][c] * h[j][c]) as i64).sum();
            let expected = if i == j { n as i64 } else { 0 };
            if dot != expected {
                return Err(Error::NotHadamard(i, j));
            }
        }
    }
    Ok(())
}

/// Reads the affine (n, 2n−2, n−1, n/2, n/2−1) design off a Hadamard matrix.
///
/// Points are the columns. Each row other than the all-ones row yields a
/// parallel pair of blocks: its "+" positions and its "−" positions, in row
/// order with the plus block first. Columns are negated as needed to
/// normalize the first row to all ones.
pub fn hadamard_design(h: &[Vec<i32>]) -> Result<(IncidenceDesign, Resolution)> {
    let n = h.len();
    if !(n == 2 || (n >= 4 && n.is_multiple_of(4))) || n > 64 {
        return Err(Error::BadHadamardOrder(n));
    }
    check_hadamard(h)?;
    let mut blocks = Vec::with_capacity(2 * n - 2);
    let mut classes = Vec::with_capacity(n - 1);
    for i in 1..n {
        let plus: Vec<usize> = (0..n).filter(|&j| h[i][j] * h[0][j] > 0).collect();
        let minus: Vec<usize> = (0..n).filter(|&j| h[i][j] * h[0][j] < 0).collect();
        classes.push(vec![blocks.len(), blocks.len() + 1]);
        blocks.push(plus);
        blocks.push(minus);
    }
    let design = IncidenceDesign::verify(n, &blocks)?;
    let res = Resolution::new(classes);
    res.validate(&design)?;
    Ok((design, res))
}

/// Parameter row (v, b, r, k, λ) of the design of d-flats of the affine
/// space AG(m, q); only the parameters are computed.
pub fn affine_space_parameters(m: i64, d: i64, q: u64) -> Result<(u128, u128, u128, u128, u128)> {
    if d < 1 || d >= m {
        return Err(Error::BinomialRange { m, d });
    }
    let qp = |e: i64| (q as u128).pow(e as u32);
    let r = gaussian_binomial(m, d, q)?;
    Ok((
        qp(m),
        qp(m - d) * r,
        r,
        qp(d),
        gaussian_binomial(m - 1, d - 1, q)?,
    ))
}
