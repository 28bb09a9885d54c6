//! Partitions written with weakly increasing parts, skew shapes, strips and
//! ribbons, together with the box weights used by the branching rules.
//!
//! Row 1 is the first (smallest) part and is drawn on top. When two
//! partitions of different lengths are compared the shorter one is padded
//! with leading zeros, so parts stay right-aligned against the last row.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, Variable};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct PartitionShape {
    parts: Vec<u32>,
}

impl PartitionShape {
    pub fn new(parts: Vec<u32>) -> Result<PartitionShape> {
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly increasing: {parts:?}"
            )));
        }
        Ok(PartitionShape { parts })
    }

    pub fn empty() -> PartitionShape {
        PartitionShape::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts, zeros included.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Parts padded on the left with zeros up to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.parts.len() > n {
            return Err(Error::DimensionMismatch(format!(
                "partition {:?} has more than {n} parts",
                self.parts
            )));
        }
        let mut v = vec![0; n - self.parts.len()];
        v.extend_from_slice(&self.parts);
        Ok(v)
    }

    /// `self + 1^len`.
    pub fn plus_ones(&self) -> PartitionShape {
        PartitionShape {
            parts: self.parts.iter().map(|p| p + 1).collect(),
        }
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl TryFrom<Vec<u32>> for PartitionShape {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<PartitionShape> {
        PartitionShape::new(v)
    }
}

impl From<PartitionShape> for Vec<u32> {
    fn from(p: PartitionShape) -> Vec<u32> {
        p.parts
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewLabel {
    HorizontalStrip,
    VerticalStrip,
    Ribbon,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TerminalBox {
    pub row: usize,
    pub col: usize,
    pub above_another: bool,
}

/// Per-box factors and their product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxWeighting {
    pub factors: Vec<((usize, usize), LaurentPoly)>,
    pub product: LaurentPoly,
}

impl BoxWeighting {
    fn from_factors(factors: Vec<((usize, usize), LaurentPoly)>) -> BoxWeighting {
        let product = factors.iter().map(|(_, w)| w).product();
        BoxWeighting { factors, product }
    }
}

/// The skew diagram `outer / inner`, with `inner` padded to the length of `outer`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: PartitionShape,
    inner: PartitionShape,
}

impl SkewShape {
    pub fn new(outer: PartitionShape, inner: PartitionShape) -> Result<SkewShape> {
        let padded = inner.padded(outer.len())?;
        if padded.iter().zip(outer.parts()).any(|(a, b)| a > b) {
            return Err(Error::InvalidPartition(format!(
                "{inner} is not contained in {outer}"
            )));
        }
        Ok(SkewShape {
            outer,
            inner: PartitionShape { parts: padded },
        })
    }

    pub fn from_parts(outer: &[u32], inner: &[u32]) -> Result<SkewShape> {
        SkewShape::new(
            PartitionShape::new(outer.to_vec())?,
            PartitionShape::new(inner.to_vec())?,
        )
    }

    pub fn outer(&self) -> &PartitionShape {
        &self.outer
    }

    /// The inner partition, padded to the length of the outer one.
    pub fn inner(&self) -> &PartitionShape {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Boxes `(row, col)` in reading order, rows from the top, both 1-based.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (&a, &b)) in self.inner.parts.iter().zip(&self.outer.parts).enumerate() {
            for j in a + 1..=b {
                out.push((i + 1, j as usize));
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.outer.size() as usize - self.inner.size() as usize
    }

    pub fn contains_box(&self, (row, col): (usize, usize)) -> bool {
        if row == 0 || row > self.rows() {
            return false;
        }
        let lo = self.inner.parts[row - 1] as usize;
        let hi = self.outer.parts[row - 1] as usize;
        col > lo && col <= hi
    }

    /// No two boxes in the same column.
    pub fn is_horizontal_strip(&self) -> bool {
        self.boxes()
            .iter()
            .all(|&(i, j)| !self.contains_box((i + 1, j)))
    }

    /// No two boxes in the same row.
    pub fn is_vertical_strip(&self) -> bool {
        self.boxes()
            .iter()
            .all(|&(i, j)| !self.contains_box((i, j + 1)))
    }

    /// No 2×2 block of boxes.
    pub fn is_ribbon(&self) -> bool {
        self.boxes().iter().all(|&(i, j)| {
            !(self.contains_box((i, j + 1))
                && self.contains_box((i + 1, j))
                && self.contains_box((i + 1, j + 1)))
        })
    }

    pub fn classify(&self) -> BTreeSet<SkewLabel> {
        let mut labels = BTreeSet::new();
        if self.is_horizontal_strip() {
            labels.insert(SkewLabel::HorizontalStrip);
        }
        if self.is_vertical_strip() {
            labels.insert(SkewLabel::VerticalStrip);
        }
        if self.is_ribbon() {
            labels.insert(SkewLabel::Ribbon);
        }
        if labels.is_empty() {
            labels.insert(SkewLabel::Other);
        }
        labels
    }

    /// `ĉ(i, j) = i + j - 1`: boxes are numbered along anti-diagonals,
    /// starting with 1 in the top-left corner of the outer diagram.
    pub fn shifted_content(&self, (row, col): (usize, usize)) -> Result<u32> {
        if row == 0 || row > self.rows() || col == 0 || col > self.outer.parts[row - 1] as usize {
            return Err(Error::BoxOutOfShape(row, col));
        }
        Ok((row + col - 1) as u32)
    }

    /// The rightmost box of each nonempty row.
    pub fn terminal_boxes(&self) -> Result<Vec<TerminalBox>> {
        if !self.is_ribbon() {
            return Err(Error::NotARibbon);
        }
        let mut out = Vec::new();
        for row in 1..=self.rows() {
            let lo = self.inner.parts[row - 1] as usize;
            let hi = self.outer.parts[row - 1] as usize;
            if hi > lo {
                out.push(TerminalBox {
                    row,
                    col: hi,
                    above_another: self.contains_box((row + 1, hi)),
                });
            }
        }
        Ok(out)
    }

    /// Ribbon weights: `x - y_ĉ` on non-terminal boxes, `y_ĉ` on terminal
    /// boxes lying above another box, `x` on the remaining terminal boxes.
    pub fn theta_weighting(&self, x: Variable) -> Result<BoxWeighting> {
        if !self.is_ribbon() {
            return Err(Error::NotARibbon);
        }
        let factors = self
            .boxes()
            .into_iter()
            .map(|(i, j)| {
                let y = Variable::y((i + j - 1) as u32);
                let w = if self.contains_box((i, j + 1)) {
                    LaurentPoly::difference(x, y)
                } else if self.contains_box((i + 1, j)) {
                    LaurentPoly::var(y)
                } else {
                    LaurentPoly::var(x)
                };
                ((i, j), w)
            })
            .collect();
        Ok(BoxWeighting::from_factors(factors))
    }

    pub fn theta_weight(&self, x: Variable) -> Result<LaurentPoly> {
        Ok(self.theta_weighting(x)?.product)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

fn padded_skew(outer: &PartitionShape, inner: &PartitionShape, r: usize) -> Result<SkewShape> {
    let outer = PartitionShape::new(outer.padded(r)?)?;
    SkewShape::new(outer, inner.clone())
}

/// `∏ (x - y_ĉ)` over the horizontal strip `λ/μ`, both drawn with `r` rows.
pub fn psi_h(
    lambda: &PartitionShape,
    mu: &PartitionShape,
    r: usize,
    x: Variable,
) -> Result<LaurentPoly> {
    let s = padded_skew(lambda, mu, r)?;
    if !s.is_horizontal_strip() {
        return Err(Error::NotHorizontalStrip);
    }
    Ok(s.boxes()
        .into_iter()
        .map(|(i, j)| LaurentPoly::difference(x, Variable::y((i + j - 1) as u32)))
        .product())
}

/// `∏ y_ĉ` over the vertical strip `ζ/μ`, both drawn with `r` rows.
pub fn psi_v(zeta: &PartitionShape, mu: &PartitionShape, r: usize) -> Result<LaurentPoly> {
    let s = padded_skew(zeta, mu, r)?;
    if !s.is_vertical_strip() {
        return Err(Error::NotVerticalStrip);
    }
    Ok(s.boxes()
        .into_iter()
        .map(|(i, j)| LaurentPoly::var(Variable::y((i + j - 1) as u32)))
        .product())
}

/// All partitions `μ` with `len` parts and `λ/μ` a horizontal strip
/// (`λ` padded to `len + 1` rows), in lexicographic order.
pub fn horizontal_strip_predecessors(
    lambda: &PartitionShape,
    len: usize,
) -> Result<Vec<PartitionShape>> {
    let l = lambda.padded(len + 1)?;
    // interlacing: l[i] <= mu[i] <= l[i+1] for the padded mu = [0, mu...]
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(l: &[u32], i: usize, len: usize, cur: &mut Vec<u32>, out: &mut Vec<PartitionShape>) {
        if i == len {
            out.push(PartitionShape { parts: cur.clone() });
            return;
        }
        for m in l[i]..=l[i + 1] {
            cur.push(m);
            rec(l, i + 1, len, cur, out);
            cur.pop();
        }
    }
    rec(&l, 0, len, &mut current, &mut out);
    Ok(out)
}

/// All partitions `μ` with as many parts as `ζ` and `ζ/μ` a vertical strip.
pub fn vertical_strip_predecessors(zeta: &PartitionShape) -> Vec<PartitionShape> {
    let z = zeta.parts();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(z.len());
    fn rec(z: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut Vec<PartitionShape>) {
        if i == z.len() {
            out.push(PartitionShape { parts: cur.clone() });
            return;
        }
        let lo = z[i].saturating_sub(1).max(cur.last().copied().unwrap_or(0));
        for m in lo..=z[i] {
            cur.push(m);
            rec(z, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(z, 0, &mut current, &mut out);
    out
}

/// All partitions `μ` with `len` parts such that `ζ/μ` (μ padded to the
/// length of `ζ`) is a ribbon, in lexicographic order.
pub fn ribbon_predecessors(zeta: &PartitionShape, len: usize) -> Result<Vec<PartitionShape>> {
    let z = zeta.padded(len + 1)?;
    let mut out = Vec::new();
    let mut current = vec![0u32];
    fn rec(z: &[u32], cur: &mut Vec<u32>, out: &mut Vec<PartitionShape>) {
        let i = cur.len();
        if i == z.len() {
            out.push(PartitionShape {
                parts: cur[1..].to_vec(),
            });
            return;
        }
        let prev = cur[i - 1];
        for m in prev..=z[i] {
            // rows i-1 and i (0-based) share a 2×2 block iff two consecutive
            // columns lie in both rows
            let lo = m.max(cur[i - 1]);
            let hi = z[i - 1].min(z[i]);
            if hi >= lo + 2 {
                continue;
            }
            cur.push(m);
            rec(z, cur, out);
            cur.pop();
        }
    }
    rec(&z, &mut current, &mut out);
    Ok(out)
}

/// All weakly increasing lists of length `len` with entries in `0..=max`.
pub fn partitions_in_box(len: usize, max: u32) -> Vec<PartitionShape> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(len: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionShape>) {
        if cur.len() == len {
            out.push(PartitionShape { parts: cur.clone() });
            return;
        }
        let start = cur.last().copied().unwrap_or(0);
        for m in start..=max {
            cur.push(m);
            rec(len, max, cur, out);
            cur.pop();
        }
    }
    rec(len, max, &mut current, &mut out);
    out
}
