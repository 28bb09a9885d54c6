//! Columns, staircases and alternating sign matrices.
//!
//! A staircase is drawn as a tableau whose columns are bottom-aligned; the
//! entry at height `h` of a column (height 1 is the bottom) is compared with
//! the entries at heights `h` and `h + 1` of the column on its left.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, Monomial, Variable};
use crate::shapes::{PartitionShape, SkewShape};

/// Default bound on the number of staircases produced by one enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "SCHUBICE_ENUM_CAP";

/// The enumeration cap from the environment, or the default.
pub fn enum_cap_from_env() -> u64 {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Column {
    entries: Vec<u32>,
}

impl Column {
    pub fn new(entries: Vec<u32>) -> Result<Column> {
        if entries.last() == Some(&0) || entries.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidColumn(entries));
        }
        Ok(Column { entries })
    }

    pub fn empty() -> Column {
        Column::default()
    }

    /// `[n, n-1, ..., 1]`.
    pub fn full(n: u32) -> Column {
        Column {
            entries: (1..=n).rev().collect(),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest entry, 0 for the empty column.
    pub fn top(&self) -> u32 {
        self.entries.first().copied().unwrap_or(0)
    }

    /// Entry at height `h` (1 = bottom).
    pub fn at_height(&self, h: usize) -> Option<u32> {
        if h == 0 || h > self.len() {
            None
        } else {
            Some(self.entries[self.len() - h])
        }
    }

    /// `{1..n} \ u`, increasing.
    pub fn complement(&self, n: u32) -> Vec<u32> {
        (1..=n).filter(|k| !self.entries.contains(k)).collect()
    }

    /// The entries in increasing order.
    pub fn reversed(&self) -> Vec<u32> {
        self.entries.iter().rev().copied().collect()
    }

    /// The column made of the increasing list `set`.
    pub fn from_set(set: &[u32]) -> Result<Column> {
        Column::new(set.iter().rev().copied().collect())
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl TryFrom<Vec<u32>> for Column {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Column> {
        Column::new(v)
    }
}

impl From<Column> for Vec<u32> {
    fn from(c: Column) -> Vec<u32> {
        c.entries
    }
}

/// `u_i <= v_i` and `v_{i+1} <= u_i` for all `i`: `v u` is a staircase.
pub fn interleaves(v: &Column, u: &Column) -> Result<bool> {
    if v.len() != u.len() + 1 {
        return Err(Error::LengthMismatch(v.len(), u.len()));
    }
    Ok(interleaves_unchecked(v.entries(), u.entries()))
}

fn interleaves_unchecked(v: &[u32], u: &[u32]) -> bool {
    u.iter()
        .enumerate()
        .all(|(i, &ui)| ui <= v[i] && v[i + 1] <= ui)
}

/// All strictly decreasing lists with `lo[i] <= w_i <= hi[i]`, ordered
/// lexicographically on their increasing rewriting.
fn bounded_columns(lo: &[u32], hi: &[u32]) -> Vec<Column> {
    let len = lo.len();
    let mut out = Vec::new();
    let mut current = vec![0u32; len];
    // fill from the bottom entry upwards so that the increasing rewriting
    // is produced in lexicographic order
    fn rec(lo: &[u32], hi: &[u32], pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Column>) {
        if pos == 0 {
            out.push(Column {
                entries: cur.clone(),
            });
            return;
        }
        let i = pos - 1;
        let floor = if i + 1 < cur.len() {
            lo[i].max(cur[i + 1] + 1)
        } else {
            lo[i]
        };
        for w in floor..=hi[i] {
            cur[i] = w;
            rec(lo, hi, i, cur, out);
        }
    }
    rec(lo, hi, len, &mut current, &mut out);
    out
}

/// All `v` with `v_1 <= n` such that `v u` is a staircase.
pub fn enumerate_predecessors(u: &Column, n: u32) -> Result<Vec<Column>> {
    if u.top() > n {
        return Err(Error::ColumnOutOfRange(u.entries.clone(), n));
    }
    let e = u.entries();
    let l = e.len();
    let lo: Vec<u32> = (0..=l).map(|i| if i < l { e[i] } else { 1 }).collect();
    let hi: Vec<u32> = (0..=l).map(|i| if i == 0 { n } else { e[i - 1] }).collect();
    Ok(bounded_columns(&lo, &hi))
}

/// All `u` such that `v u` is a staircase.
pub fn enumerate_successors(v: &Column) -> Vec<Column> {
    let e = v.entries();
    if e.is_empty() {
        return Vec::new();
    }
    let l = e.len() - 1;
    let lo: Vec<u32> = (0..l).map(|i| e[i + 1]).collect();
    let hi: Vec<u32> = (0..l).map(|i| e[i]).collect();
    bounded_columns(&lo, &hi)
}

/// Necessary condition for `target` to be reachable from `w` in
/// `w.len() - target.len()` steps: `w_{i+d} <= target_i <= w_i`.
fn reachable(w: &[u32], target: &[u32]) -> bool {
    let d = w.len() - target.len();
    target
        .iter()
        .enumerate()
        .all(|(i, &t)| t <= w[i] && w[i + d] <= t)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Column>", try_from = "Vec<Column>")]
pub struct Staircase {
    columns: Vec<Column>,
}

impl Staircase {
    /// Checks that lengths drop by one and consecutive columns interleave.
    pub fn new(columns: Vec<Column>) -> Result<Staircase> {
        if columns.is_empty() {
            return Err(Error::InvalidStaircase("no columns".into()));
        }
        for (j, w) in columns.windows(2).enumerate() {
            if w[0].len() != w[1].len() + 1 {
                return Err(Error::InvalidStaircase(format!(
                    "column {} has length {}, column {} has length {}",
                    j + 1,
                    w[0].len(),
                    j + 2,
                    w[1].len()
                )));
            }
            if !interleaves_unchecked(w[0].entries(), w[1].entries()) {
                return Err(Error::InvalidStaircase(format!(
                    "columns {} and {} do not interleave",
                    w[0], w[1]
                )));
            }
        }
        Ok(Staircase { columns })
    }

    pub fn from_lists(lists: &[Vec<u32>]) -> Result<Staircase> {
        Staircase::new(
            lists
                .iter()
                .map(|l| Column::new(l.clone()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn first(&self) -> &Column {
        &self.columns[0]
    }

    pub fn last(&self) -> &Column {
        self.columns.last().expect("nonempty")
    }

    /// Tableau rows from the top, columns bottom-aligned.
    pub fn tableau_rows(&self) -> Vec<Vec<u32>> {
        let height = self.first().len();
        (1..=height)
            .rev()
            .map(|h| self.columns.iter().filter_map(|c| c.at_height(h)).collect())
            .collect()
    }

    /// Product of the entry weights; `vars[j]` attaches to column `j + 2`.
    pub fn weight(&self, vars: &[Variable]) -> Result<LaurentPoly> {
        if vars.len() + 1 != self.columns.len() {
            return Err(Error::InvalidStaircase(format!(
                "{} columns need {} variables, got {}",
                self.columns.len(),
                self.columns.len() - 1,
                vars.len()
            )));
        }
        Ok(self
            .columns
            .windows(2)
            .zip(vars)
            .map(|(w, &x)| pair_weight(&w[0], &w[1], x))
            .product())
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl TryFrom<Vec<Column>> for Staircase {
    type Error = Error;
    fn try_from(v: Vec<Column>) -> Result<Staircase> {
        Staircase::new(v)
    }
}

impl From<Staircase> for Vec<Column> {
    fn from(s: Staircase) -> Vec<Column> {
        s.columns
    }
}

/// Weight of the entries of `right` given its left neighbour `left`:
/// with `a` the left entry at the same height and `c` the one above it,
/// `x/y_b - 1` if `a = b`, `x/y_b` if `a < b < c`, and `1` if `b = c`.
pub fn pair_weight(left: &Column, right: &Column, x: Variable) -> LaurentPoly {
    let mut w = LaurentPoly::one();
    for (h, b) in (1..=right.len()).map(|h| (h, right.at_height(h).expect("in range"))) {
        let a = left.at_height(h).expect("interleaving");
        let c = left.at_height(h + 1).expect("interleaving");
        let ratio = LaurentPoly::monomial(Monomial::from_pairs([(x, 1), (Variable::y(b), -1)]));
        if a == b {
            w *= &(ratio - LaurentPoly::one());
        } else if b < c {
            w *= &ratio;
        }
    }
    w
}

/// Staircases with a given first and last column.
///
/// Produced depth-first, trying successor columns in lexicographic order of
/// their increasing rewriting.
pub struct StaircaseIter {
    last: Column,
    stack: Vec<(Column, Vec<Column>)>,
    cap: u64,
    produced: u64,
    done: bool,
}

impl StaircaseIter {
    pub fn with_cap(mut self, cap: u64) -> StaircaseIter {
        self.cap = cap;
        self
    }

    fn candidates(&self, from: &Column) -> Vec<Column> {
        let mut next = enumerate_successors(from);
        next.retain(|c| reachable(c.entries(), self.last.entries()));
        next.reverse();
        next
    }
}

impl Iterator for StaircaseIter {
    type Item = Result<Staircase>;

    fn next(&mut self) -> Option<Result<Staircase>> {
        if self.done {
            return None;
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.0.len() == self.last.len() {
                let found = self.stack.iter().map(|(c, _)| c.clone()).collect();
                self.stack.pop();
                if self.produced >= self.cap {
                    self.done = true;
                    return Some(Err(Error::CapExceeded(self.cap)));
                }
                self.produced += 1;
                return Some(Ok(Staircase { columns: found }));
            }
            match top.1.pop() {
                Some(col) => {
                    let cands = if col.len() == self.last.len() {
                        Vec::new()
                    } else {
                        self.candidates(&col)
                    };
                    if col.len() == self.last.len() && col != self.last {
                        continue;
                    }
                    self.stack.push((col, cands));
                }
                None => {
                    self.stack.pop();
                }
            }
        }
    }
}

/// The staircases from `first` to `last` with entries at most `n`.
pub fn enumerate_staircases(first: &Column, last: &Column, n: u32) -> Result<StaircaseIter> {
    if first.len() <= last.len() && first != last {
        return Err(Error::InvalidStaircase(format!(
            "first column {first} must be longer than last column {last}"
        )));
    }
    if first.top() > n {
        return Err(Error::ColumnOutOfRange(first.entries.clone(), n));
    }
    if last.top() > n {
        return Err(Error::ColumnOutOfRange(last.entries.clone(), n));
    }
    let mut it = StaircaseIter {
        last: last.clone(),
        stack: Vec::new(),
        cap: enum_cap_from_env(),
        produced: 0,
        done: false,
    };
    if reachable(first.entries(), last.entries()) {
        let cands = if first.len() == last.len() {
            Vec::new()
        } else {
            it.candidates(first)
        };
        it.stack.push((first.clone(), cands));
    }
    Ok(it)
}

/// A square matrix over `{-1, 0, 1}` with alternating-sign rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i8>>", try_from = "Vec<Vec<i8>>")]
pub struct AsmMatrix {
    rows: Vec<Vec<i8>>,
}

fn alternating(line: impl Iterator<Item = i8>) -> bool {
    let mut partial = 0i32;
    for e in line {
        if !(-1..=1).contains(&e) {
            return false;
        }
        partial += e as i32;
        if !(0..=1).contains(&partial) {
            return false;
        }
    }
    partial == 1
}

impl AsmMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<AsmMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotAnAsm("matrix is not square".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if !alternating(r.iter().copied()) {
                return Err(Error::NotAnAsm(format!("row {} is not alternating", i + 1)));
            }
        }
        for j in 0..n {
            if !alternating(rows.iter().map(|r| r[j])) {
                return Err(Error::NotAnAsm(format!(
                    "column {} is not alternating",
                    j + 1
                )));
            }
        }
        Ok(AsmMatrix { rows })
    }

    pub fn identity(n: usize) -> AsmMatrix {
        AsmMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i8::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    /// Row `i` of the result is the sum of rows `1..=i`.
    pub fn partial_sums(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        let mut acc = vec![0i8; n];
        self.rows
            .iter()
            .map(|r| {
                for (a, e) in acc.iter_mut().zip(r) {
                    *a += e;
                }
                acc.iter().map(|&a| a as u8).collect()
            })
            .collect()
    }

    pub fn minus_ones(&self) -> usize {
        self.rows.iter().flatten().filter(|&&e| e == -1).count()
    }

    /// All `n × n` ASMs, by choosing the successive partial-sum rows.
    pub fn all(n: usize) -> Vec<AsmMatrix> {
        let mut out = Vec::new();
        let mut rows = Vec::with_capacity(n);
        fn rec(n: usize, prev: &[i8], rows: &mut Vec<Vec<i8>>, out: &mut Vec<AsmMatrix>) {
            let i = rows.len();
            if i == n {
                out.push(AsmMatrix { rows: rows.clone() });
                return;
            }
            // choose the next partial-sum row: a 0/1 vector with i+1 ones
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != i + 1 {
                    continue;
                }
                let row: Vec<i8> = (0..n)
                    .map(|j| ((mask >> (n - 1 - j)) & 1) as i8 - prev[j])
                    .collect();
                if alternating(row.iter().copied()) {
                    let next: Vec<i8> = prev.iter().zip(&row).map(|(a, b)| a + b).collect();
                    rows.push(row);
                    rec(n, &next, rows, out);
                    rows.pop();
                }
            }
        }
        rec(n, &vec![0; n], &mut rows, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for AsmMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|e| format!("{e:>2}")).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<i8>>> for AsmMatrix {
    type Error = Error;
    fn try_from(v: Vec<Vec<i8>>) -> Result<AsmMatrix> {
        AsmMatrix::new(v)
    }
}

impl From<AsmMatrix> for Vec<Vec<i8>> {
    fn from(a: AsmMatrix) -> Vec<Vec<i8>> {
        a.rows
    }
}

/// Column `k` of the staircase lists the positions of the 1s in row
/// `n + 1 - k` of the partial-sum matrix.
pub fn asm_to_staircase(a: &AsmMatrix) -> Staircase {
    let n = a.size();
    let sums = a.partial_sums();
    let columns = (1..=n)
        .map(|k| {
            let row = &sums[n - k];
            Column {
                entries: (1..=n as u32)
                    .rev()
                    .filter(|&j| row[j as usize - 1] == 1)
                    .collect(),
            }
        })
        .collect();
    Staircase { columns }
}

pub fn staircase_to_asm(t: &Staircase) -> Result<AsmMatrix> {
    let n = t.first().len();
    let full = t.columns.len() == n
        && *t.first() == Column::full(n as u32)
        && t.columns.iter().enumerate().all(|(k, c)| c.len() == n - k);
    if !full {
        return Err(Error::NotFullStaircase);
    }
    let mut prev = vec![0i8; n];
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let col = &t.columns[n - i];
        let mut cur = vec![0i8; n];
        for &e in col.entries() {
            cur[e as usize - 1] = 1;
        }
        rows.push(cur.iter().zip(&prev).map(|(a, b)| a - b).collect());
        prev = cur;
    }
    AsmMatrix::new(rows)
}

/// Completes `t` into a staircase whose columns have lengths `n, ..., 1, 0`
/// minus the final empty column, so that every added entry has weight 1.
///
/// On the right, columns are extended by deleting bottom entries. On the
/// left, the only weight-neutral columns are `[n, ..., j]`; the completion
/// exists iff the first column of `t` interleaves with the shortest of them.
pub fn canonical_completion(t: &Staircase, n: u32) -> Result<Staircase> {
    let first = t.first();
    if first.top() > n || first.len() > n as usize {
        return Err(Error::NoCanonicalCompletion(format!(
            "first column {first} does not fit in 1..{n}"
        )));
    }
    let mut columns = Vec::new();
    let m = first.len() as u32;
    if m < n {
        for j in 1..=n - m {
            columns.push(Column {
                entries: (j..=n).rev().collect(),
            });
        }
        let neighbour = columns.last().expect("nonempty");
        if !interleaves_unchecked(neighbour.entries(), first.entries()) {
            return Err(Error::NoCanonicalCompletion(format!(
                "{first} does not follow {neighbour}"
            )));
        }
    }
    columns.extend(t.columns.iter().cloned());
    while columns.last().expect("nonempty").len() > 1 {
        let mut next = columns.last().expect("nonempty").clone();
        next.entries.pop();
        columns.push(next);
    }
    Ok(Staircase { columns })
}

/// `⟨u⟩_m = #{j : u_j > m}` for `m = 1..u_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LevelSequence {
    pub levels: Vec<u32>,
}

impl LevelSequence {
    /// Levels padded with zeros (or truncated) to length `len`.
    pub fn padded(&self, len: usize) -> Vec<i32> {
        let mut v: Vec<i32> = self.levels.iter().map(|&l| l as i32).collect();
        v.resize(len, 0);
        v
    }

    /// Levels without trailing zeros.
    pub fn trimmed(&self) -> Vec<u32> {
        let mut v = self.levels.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// `y^{⟨u⟩}` with `y_m` raised to the `m`-th level.
    pub fn y_monomial(&self) -> Monomial {
        Monomial::from_pairs(
            self.levels
                .iter()
                .enumerate()
                .map(|(m, &l)| (Variable::y(m as u32 + 1), l as i32)),
        )
    }
}

pub fn level_sequence(u: &Column) -> Result<LevelSequence> {
    if u.is_empty() {
        return Err(Error::EmptyColumn);
    }
    Ok(level_sequence_or_empty(u))
}

/// As [`level_sequence`], with the empty column mapped to the empty sequence.
pub fn level_sequence_or_empty(u: &Column) -> LevelSequence {
    LevelSequence {
        levels: (1..=u.top())
            .map(|m| u.entries().iter().filter(|&&e| e > m).count() as u32)
            .collect(),
    }
}

/// `p(u, n) = [ũ_1 - 1, ..., ũ_k - k]`.
pub fn p_map(u: &Column, n: u32) -> Result<PartitionShape> {
    if u.top() > n {
        return Err(Error::ColumnOutOfRange(u.entries.clone(), n));
    }
    PartitionShape::new(
        u.complement(n)
            .iter()
            .enumerate()
            .map(|(i, &c)| c - 1 - i as u32)
            .collect(),
    )
}

/// Inverse of [`p_map`] for a given `n`.
pub fn p_map_inverse(mu: &PartitionShape, n: u32) -> Result<Column> {
    let comp: Vec<u32> = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| m + 1 + i as u32)
        .collect();
    if comp.last().is_some_and(|&c| c > n) {
        return Err(Error::InvalidPartition(format!(
            "{mu} does not fit n = {n}"
        )));
    }
    Ok(Column {
        entries: (1..=n).rev().filter(|k| !comp.contains(k)).collect(),
    })
}

/// The ribbon `(p(u, n) + 1^k) / p(v, n)` attached to an interleaving pair.
pub fn column_ribbon_bijection(v: &Column, u: &Column, n: u32) -> Result<SkewShape> {
    if !interleaves(v, u)? || v.top() > n {
        return Err(Error::NotInterleaving(v.entries.clone(), u.entries.clone()));
    }
    let zeta = p_map(u, n)?.plus_ones();
    let shape = SkewShape::new(zeta, p_map(v, n)?)?;
    debug_assert!(shape.is_ribbon());
    Ok(shape)
}

/// Recovers `v` from the ribbon `(p(u, n) + 1^k) / μ`.
pub fn ribbon_to_column(shape: &SkewShape, u: &Column, n: u32) -> Result<Column> {
    let zeta = p_map(u, n)?.plus_ones();
    if *shape.outer() != zeta || !shape.is_ribbon() {
        return Err(Error::NotARibbon);
    }
    let inner = shape.inner().parts();
    if inner.first().is_some_and(|&p| p != 0) {
        return Err(Error::NotARibbon);
    }
    let mu = PartitionShape::new(inner.get(1..).unwrap_or(&[]).to_vec())?;
    p_map_inverse(&mu, n)
}

/// All columns with entries in `1..=n` of length `len`, decreasing.
pub fn columns_of_length(n: u32, len: usize) -> Vec<Column> {
    let lo = vec![1; len];
    let hi = vec![n; len];
    bounded_columns(&lo, &hi)
}

/// All columns with entries in `1..=n`.
pub fn all_columns(n: u32) -> Vec<Column> {
    (0..=n as usize)
        .flat_map(|l| columns_of_length(n, l))
        .collect()
}
