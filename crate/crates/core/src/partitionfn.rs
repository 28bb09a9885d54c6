//! Partition functions of staircases with fixed end columns: brute-force
//! sums, closed forms in terms of Schubert polynomials and multi-Schur
//! determinants, and the verification suites comparing the two.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, Family, LaurentPoly, Monomial, Rational, Variable};
use crate::permutation::Permutation;
use crate::schubert::{
    at_zero_negated_y, multi_schur, multi_schur_matrix, schubert, shift_y, AlphabetExpr,
    SchubertCache,
};
use crate::staircase::{
    all_columns, asm_to_staircase, column_ribbon_bijection, columns_of_length,
    enumerate_predecessors, enumerate_staircases, level_sequence_or_empty, ribbon_to_column,
    staircase_to_asm, AsmMatrix, Column,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QueryKind {
    /// Staircases from `[n, ..., 1]` to `u`.
    FullToColumn { n: u32, u: Column },
    /// Staircases from `u` to `v`, entries at most `n`.
    ColumnToColumn { u: Column, v: Column, n: u32 },
    /// Staircases from `u` to the empty column.
    ColumnToEmpty { u: Column },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFunctionQuery {
    pub kind: QueryKind,
    /// One variable per column step.
    pub variables: Vec<Variable>,
}

fn family_prefix(family: Family, k: usize) -> Vec<Variable> {
    (1..=k as u32).map(|i| Variable::new(family, i)).collect()
}

impl PartitionFunctionQuery {
    /// `F(n, u)` in `x_1, ..., x_r`, `r = n - ℓ(u)`.
    pub fn full_to_column(n: u32, u: Column) -> Result<PartitionFunctionQuery> {
        if u.top() > n {
            return Err(Error::ColumnOutOfRange(u.entries().to_vec(), n));
        }
        let steps = n as usize - u.len();
        Ok(PartitionFunctionQuery {
            kind: QueryKind::FullToColumn { n, u },
            variables: family_prefix(Family::X, steps),
        })
    }

    /// `F(u, v)` in `z_1, ..., z_r`, `r = ℓ(u) - ℓ(v)`.
    pub fn column_to_column(u: Column, v: Column, n: u32) -> Result<PartitionFunctionQuery> {
        if u.top() > n {
            return Err(Error::ColumnOutOfRange(u.entries().to_vec(), n));
        }
        if v.top() > n {
            return Err(Error::ColumnOutOfRange(v.entries().to_vec(), n));
        }
        if u.len() <= v.len() {
            return Err(Error::InvalidQuery(format!(
                "first column {u} must be longer than last column {v}"
            )));
        }
        let steps = u.len() - v.len();
        Ok(PartitionFunctionQuery {
            kind: QueryKind::ColumnToColumn { u, v, n },
            variables: family_prefix(Family::Z, steps),
        })
    }

    /// `F(u, [])` in `x_1, ..., x_r`, `r = ℓ(u)`.
    pub fn column_to_empty(u: Column) -> Result<PartitionFunctionQuery> {
        let steps = u.len();
        Ok(PartitionFunctionQuery {
            kind: QueryKind::ColumnToEmpty { u },
            variables: family_prefix(Family::X, steps),
        })
    }

    pub fn with_variables(mut self, variables: Vec<Variable>) -> Result<PartitionFunctionQuery> {
        if variables.len() != self.steps() {
            return Err(Error::InvalidQuery(format!(
                "{} variables given, {} needed",
                variables.len(),
                self.steps()
            )));
        }
        self.variables = variables;
        Ok(self)
    }

    pub fn steps(&self) -> usize {
        self.first_column().len() - self.last_column().len()
    }

    pub fn n(&self) -> u32 {
        match &self.kind {
            QueryKind::FullToColumn { n, .. } | QueryKind::ColumnToColumn { n, .. } => *n,
            QueryKind::ColumnToEmpty { u } => u.top(),
        }
    }

    pub fn first_column(&self) -> Column {
        match &self.kind {
            QueryKind::FullToColumn { n, .. } => Column::full(*n),
            QueryKind::ColumnToColumn { u, .. } | QueryKind::ColumnToEmpty { u } => u.clone(),
        }
    }

    pub fn last_column(&self) -> Column {
        match &self.kind {
            QueryKind::FullToColumn { u, .. } => u.clone(),
            QueryKind::ColumnToColumn { v, .. } => v.clone(),
            QueryKind::ColumnToEmpty { .. } => Column::empty(),
        }
    }

    /// The family a closed form is written in before renaming to `variables`.
    fn native_family(&self) -> Family {
        match self.kind {
            QueryKind::ColumnToColumn { .. } => Family::Z,
            _ => Family::X,
        }
    }

    /// Renames the native letters `x_i` (or `z_i`) to `variables[i - 1]`.
    fn rename(&self, p: &LaurentPoly) -> LaurentPoly {
        let family = self.native_family();
        p.map_vars(|v| {
            if v.family() == family && (v.index() as usize) <= self.variables.len() {
                self.variables[v.index() as usize - 1]
            } else {
                v
            }
        })
    }
}

impl fmt::Display for PartitionFunctionQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            QueryKind::FullToColumn { n, u } => write!(f, "F({n},{u})"),
            QueryKind::ColumnToColumn { u, v, n } => write!(f, "F({u},{v}) n={n}"),
            QueryKind::ColumnToEmpty { u } => write!(f, "F({u},[])"),
        }
    }
}

/// Sum of the weights of all staircases described by the query.
pub fn f_brute(q: &PartitionFunctionQuery) -> Result<LaurentPoly> {
    let mut total = LaurentPoly::zero();
    for t in enumerate_staircases(&q.first_column(), &q.last_column(), q.n())? {
        total += &t?.weight(&q.variables)?;
    }
    Ok(total)
}

/// Number of staircases described by the query.
pub fn count_staircases(q: &PartitionFunctionQuery) -> Result<u64> {
    let mut count = 0;
    for t in enumerate_staircases(&q.first_column(), &q.last_column(), q.n())? {
        t?;
        count += 1;
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClosedTerm {
    /// `X_σ(x, y)`, optionally at `x = 0, y -> -y` and with `y_i -> y_{i + y_shift}`.
    Schubert {
        permutation: Permutation,
        at_zero_negated_y: bool,
        y_shift: u32,
    },
    /// `det |S_{α_j - λ_i + j - i}(C_j + F_i)|`.
    MultiSchur {
        beta: Vec<u32>,
        alpha: Vec<i64>,
        gamma: Vec<i64>,
        lower: Vec<i64>,
        columns: Vec<AlphabetExpr>,
        flags: Vec<AlphabetExpr>,
    },
}

/// A closed form split into its factors.
///
/// `assembled = prefactor · normalization · value`, where `value` is the
/// evaluated Schubert polynomial or determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCertificate {
    pub query: PartitionFunctionQuery,
    pub prefactor: LaurentPoly,
    pub normalization: LaurentPoly,
    pub term: ClosedTerm,
    pub value: LaurentPoly,
    pub assembled: LaurentPoly,
}

impl ClosedFormCertificate {
    fn build(
        query: &PartitionFunctionQuery,
        prefactor: LaurentPoly,
        normalization: LaurentPoly,
        term: ClosedTerm,
        value: LaurentPoly,
    ) -> ClosedFormCertificate {
        let prefactor = query.rename(&prefactor);
        let normalization = query.rename(&normalization);
        let value = query.rename(&value);
        let assembled = &(&prefactor * &normalization) * &value;
        ClosedFormCertificate {
            query: query.clone(),
            prefactor,
            normalization,
            term,
            value,
            assembled,
        }
    }

    /// `prefactor · value`, leaving out the normalization monomial.
    pub fn without_normalization(&self) -> LaurentPoly {
        &self.prefactor * &self.value
    }
}

/// `x^{ρ_r} = x_1^{r-1} x_2^{r-2} ⋯ x_{r-1}` in the given family.
pub fn rho_monomial(family: Family, r: usize) -> Monomial {
    Monomial::from_pairs((1..=r).map(|i| (Variable::new(family, i as u32), (r - i) as i32)))
}

fn y_levels(levels: &[i32]) -> Monomial {
    Monomial::from_pairs(
        levels
            .iter()
            .enumerate()
            .map(|(m, &e)| (Variable::y(m as u32 + 1), e)),
    )
}

fn negated(levels: Vec<i32>) -> Vec<i32> {
    levels.into_iter().map(|l| -l).collect()
}

/// `F(n, u) = x^{ρ_r} y^{-⟨ũ⟩} X_{[ũ, u^ω]}(x, y)`, `ũ` the complement of
/// `u` in `1..n`, `u^ω` the entries of `u` in increasing order.
pub fn f_full_closed(n: u32, u: &Column) -> Result<ClosedFormCertificate> {
    let q = PartitionFunctionQuery::full_to_column(n, u.clone())?;
    f_full_closed_for(&q)
}

fn f_full_closed_for(q: &PartitionFunctionQuery) -> Result<ClosedFormCertificate> {
    let QueryKind::FullToColumn { n, u } = &q.kind else {
        return Err(Error::InvalidQuery(format!(
            "{q} is not of the form F(n,u)"
        )));
    };
    let r = *n as usize - u.len();
    let comp = u.complement(*n);
    let sigma = Permutation::concat(&comp, &u.reversed())?;
    let comp_col = Column::from_set(&comp)?;
    let levels = level_sequence_or_empty(&comp_col).padded(*n as usize);
    let prefactor =
        LaurentPoly::monomial(&rho_monomial(Family::X, r) * &y_levels(&negated(levels)));
    let value = schubert(&sigma);
    Ok(ClosedFormCertificate::build(
        q,
        prefactor,
        LaurentPoly::one(),
        ClosedTerm::Schubert {
            permutation: sigma,
            at_zero_negated_y: false,
            y_shift: 0,
        },
        value,
    ))
}

/// Parameters of the two-column determinant: `β = [ṽ_j - 1]`,
/// `α_i = β_i + r - i + 1`, `γ = [ũ_i - i]`.
pub struct TwoColumnData {
    pub k: usize,
    pub r: usize,
    pub beta: Vec<u32>,
    pub alpha: Vec<i64>,
    pub gamma: Vec<i64>,
}

pub fn two_column_data(u: &Column, v: &Column, n: u32) -> Result<TwoColumnData> {
    let nn = n as usize;
    if u.len() >= nn || v.len() >= u.len() || u.top() > n || v.top() > n {
        return Err(Error::InvalidQuery(format!(
            "need ℓ(v) < ℓ(u) < n, got u={u}, v={v}, n={n}"
        )));
    }
    let k = nn - u.len();
    let r = u.len() - v.len();
    let beta: Vec<u32> = v.complement(n).iter().map(|&c| c - 1).collect();
    let alpha = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b as i64 + r as i64 - i as i64)
        .collect();
    let gamma = u
        .complement(n)
        .iter()
        .enumerate()
        .map(|(i, &c)| c as i64 - 1 - i as i64)
        .collect();
    Ok(TwoColumnData {
        k,
        r,
        beta,
        alpha,
        gamma,
    })
}

/// `F(u, v; z)` as `z^{ρ_r} y^{⟨v⟩-⟨u⟩} (z_1 ⋯ z_r)^{-r} D`, where `D` is the
/// flagged determinant `S_{α/[0^r, γ]}(z - y^{β_1}, ..., z - y^{β_{k+r}})`
/// with flags `0, ..., 0, y^{1+γ_1}, ..., y^{k+γ_k}` added to the rows.
///
/// The determinant carries an extra factor `(z_1 ⋯ z_r)^r` coming from the
/// index shift `β -> α`; the normalization monomial removes it.
pub fn f_two_column_closed(u: &Column, v: &Column, n: u32) -> Result<ClosedFormCertificate> {
    let q = PartitionFunctionQuery::column_to_column(u.clone(), v.clone(), n)?;
    f_two_column_closed_for(&q)
}

fn f_two_column_closed_for(q: &PartitionFunctionQuery) -> Result<ClosedFormCertificate> {
    let QueryKind::ColumnToColumn { u, v, n } = &q.kind else {
        return Err(Error::InvalidQuery(format!(
            "{q} is not of the form F(u,v)"
        )));
    };
    let d = two_column_data(u, v, *n)?;
    let zs = AlphabetExpr::prefix(Family::Z, d.r as u32);
    let columns: Vec<AlphabetExpr> = d
        .beta
        .iter()
        .map(|&b| AlphabetExpr::difference(zs.clone(), AlphabetExpr::prefix(Family::Y, b)))
        .collect();
    let mut flags = vec![AlphabetExpr::empty(); d.r];
    let mut lower = vec![0i64; d.r];
    for (i, &g) in d.gamma.iter().enumerate() {
        flags.push(AlphabetExpr::difference(
            AlphabetExpr::prefix(Family::Y, (i as i64 + 1 + g) as u32),
            vec![],
        ));
        lower.push(g);
    }
    let value = multi_schur(&d.alpha, &lower, &columns, &flags)?;
    let len = *n as usize;
    let lv = level_sequence_or_empty(v).padded(len);
    let lu = level_sequence_or_empty(u).padded(len);
    let diff: Vec<i32> = lv.iter().zip(&lu).map(|(a, b)| a - b).collect();
    let prefactor = LaurentPoly::monomial(&rho_monomial(Family::Z, d.r) * &y_levels(&diff));
    let normalization = LaurentPoly::monomial(Monomial::from_pairs(
        (1..=d.r as u32).map(|i| (Variable::z(i), -(d.r as i32))),
    ));
    Ok(ClosedFormCertificate::build(
        q,
        prefactor,
        normalization,
        ClosedTerm::MultiSchur {
            beta: d.beta,
            alpha: d.alpha,
            gamma: d.gamma,
            lower,
            columns,
            flags,
        },
        value,
    ))
}

/// The matrix of the two-column determinant, for display.
pub fn two_column_matrix(cert: &ClosedFormCertificate) -> Result<Vec<Vec<LaurentPoly>>> {
    match &cert.term {
        ClosedTerm::MultiSchur {
            alpha,
            lower,
            columns,
            flags,
            ..
        } => multi_schur_matrix(alpha, lower, columns, flags),
        _ => Err(Error::InvalidQuery("not a determinant certificate".into())),
    }
}

/// `F(u, []) = x^{ρ_r} y^{-⟨u⟩} X_{[u^ω, ũ]}(0, -y)` when the last entry
/// of `u` is 1, `ũ` the complement of `u` in `1..u_1`. When the last entry
/// is `k > 1`, the value for `u - (k - 1)` with every `y_i` moved to
/// `y_{i+k-1}`.
pub fn f_to_empty_closed(u: &Column) -> Result<ClosedFormCertificate> {
    f_to_empty_closed_with_n(u, u.top())
}

/// As [`f_to_empty_closed`], taking complements in `1..n` for some `n >= u_1`.
pub fn f_to_empty_closed_with_n(u: &Column, n: u32) -> Result<ClosedFormCertificate> {
    if u.is_empty() {
        return Err(Error::EmptyColumn);
    }
    if n < u.top() {
        return Err(Error::ColumnOutOfRange(u.entries().to_vec(), n));
    }
    let q = PartitionFunctionQuery::column_to_empty(u.clone())?;
    let r = u.len();
    let shift = u.entries()[r - 1] - 1;
    let base = Column::new(u.entries().iter().map(|&e| e - shift).collect())?;
    let sigma = Permutation::concat(&base.reversed(), &base.complement(n - shift))?;
    let levels = level_sequence_or_empty(&base).padded(base.top() as usize);
    let y_part = shift_y(&LaurentPoly::monomial(y_levels(&negated(levels))), shift);
    let prefactor = &LaurentPoly::monomial(rho_monomial(Family::X, r)) * &y_part;
    let value = shift_y(&at_zero_negated_y(&schubert(&sigma))?, shift);
    Ok(ClosedFormCertificate::build(
        &q,
        prefactor,
        LaurentPoly::one(),
        ClosedTerm::Schubert {
            permutation: sigma,
            at_zero_negated_y: true,
            y_shift: shift,
        },
        value,
    ))
}

/// The closed form matching the shape of the query.
pub fn closed_form(q: &PartitionFunctionQuery) -> Result<ClosedFormCertificate> {
    match &q.kind {
        QueryKind::FullToColumn { .. } => f_full_closed_for(q),
        QueryKind::ColumnToColumn { .. } => f_two_column_closed_for(q),
        QueryKind::ColumnToEmpty { u } => {
            let mut cert = f_to_empty_closed(u)?;
            let renamed = |p: &LaurentPoly| q.rename(p);
            cert.prefactor = renamed(&cert.prefactor);
            cert.normalization = renamed(&cert.normalization);
            cert.value = renamed(&cert.value);
            cert.assembled = renamed(&cert.assembled);
            cert.query = q.clone();
            Ok(cert)
        }
    }
}

/// `x_i -> 2` (every spectral letter, whatever its family) and `y_i -> 1`.
pub fn two_point(p: &LaurentPoly) -> Result<Rational> {
    let assignment: BTreeMap<Variable, Rational> = p
        .variables()
        .into_iter()
        .map(|v| {
            (
                v,
                if v.family() == Family::Y {
                    rat(1)
                } else {
                    rat(2)
                },
            )
        })
        .collect();
    let value = p.evaluate(&assignment)?;
    Ok(value.as_constant().expect("all variables assigned"))
}

/// The query's partition function at `x = 2, y = 1`.
pub fn two_enumeration(q: &PartitionFunctionQuery) -> Result<Rational> {
    two_point(&f_brute(q)?)
}

/// A set of `n × n` ASMs whose staircases go through fixed columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsmClass {
    pub n: u32,
    pub through: Vec<Column>,
}

impl AsmClass {
    pub fn contains(&self, a: &AsmMatrix) -> bool {
        let t = asm_to_staircase(a);
        let n = self.n as usize;
        self.through
            .iter()
            .all(|c| c.is_empty() || (c.len() <= n && t.columns()[n - c.len()] == *c))
    }
}

/// `Σ 2^{#(-1)}` over the ASMs of the class.
pub fn asm_two_weight_sum(class: &AsmClass) -> u64 {
    AsmMatrix::all(class.n as usize)
        .iter()
        .filter(|a| class.contains(a))
        .map(|a| 1u64 << a.minus_ones())
        .sum()
}

/// `F(n, u) F(u, v) F(v, [])` at `x = 2, y = 1`.
pub fn class_two_enumeration(n: u32, u: &Column, v: &Column) -> Result<Rational> {
    let left = two_enumeration(&PartitionFunctionQuery::full_to_column(n, u.clone())?)?;
    let middle = if u == v {
        rat(1)
    } else {
        two_enumeration(&PartitionFunctionQuery::column_to_column(
            u.clone(),
            v.clone(),
            n,
        )?)?
    };
    let right = two_enumeration(&PartitionFunctionQuery::column_to_empty(v.clone())?)?;
    Ok(left * middle * right)
}

/// Weighted sum over full staircases through `u` and `v`, in `x_1, ..., x_{n-1}`.
pub fn weight_through(n: u32, u: &Column, v: &Column) -> Result<LaurentPoly> {
    let vars: Vec<Variable> = (1..n).map(Variable::x).collect();
    let nn = n as usize;
    let mut total = LaurentPoly::zero();
    for t in enumerate_staircases(&Column::full(n), &Column::empty(), n)? {
        let t = t?;
        let cols = t.columns();
        if cols[nn - u.len()] == *u && cols[nn - v.len()] == *v {
            let trimmed = crate::staircase::Staircase::new(cols[..nn].to_vec())?;
            total += &trimmed.weight(&vars)?;
        }
    }
    Ok(total)
}

/// `F(n, u; x_1..x_k) F(u, v; x_{k+1}..x_{k+r}) F(v, []; x_{k+r+1}..)`.
pub fn factorized_weight(n: u32, u: &Column, v: &Column) -> Result<LaurentPoly> {
    let k = n as usize - u.len();
    let r = u.len() - v.len();
    let xs = |from: usize, count: usize| -> Vec<Variable> {
        (from + 1..=from + count)
            .map(|i| Variable::x(i as u32))
            .collect()
    };
    let left = f_brute(&PartitionFunctionQuery::full_to_column(n, u.clone())?)?;
    let middle = if r == 0 {
        LaurentPoly::one()
    } else {
        f_brute(
            &PartitionFunctionQuery::column_to_column(u.clone(), v.clone(), n)?
                .with_variables(xs(k, r))?,
        )?
    };
    // the step into the empty column has no entries, so its variable never appears
    let right = if v.is_empty() {
        LaurentPoly::one()
    } else {
        f_brute(
            &PartitionFunctionQuery::column_to_empty(v.clone())?
                .with_variables(xs(k + r, v.len()))?,
        )?
    };
    Ok(&(&left * &middle) * &right)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Theorem3,
    Appendix,
    Bijections,
    Symmetry,
    TwoEnum,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "theorem1",
        "theorem2",
        "theorem3",
        "appendix",
        "bijections",
        "symmetry",
        "two_enum",
        "all",
    ];

    pub fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Theorem1,
                Suite::Theorem2,
                Suite::Theorem3,
                Suite::Appendix,
                Suite::Bijections,
                Suite::Symmetry,
                Suite::TwoEnum,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        let all = [
            Suite::Theorem1,
            Suite::Theorem2,
            Suite::Theorem3,
            Suite::Appendix,
            Suite::Bijections,
            Suite::Symmetry,
            Suite::TwoEnum,
            Suite::All,
        ];
        all.into_iter()
            .find(|x| x.name() == s || x.name().replace('_', "-") == s)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub suite: String,
    pub case: String,
    pub status: Status,
    /// On failure, what differed.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerifyReport {
    pub cases: Vec<CaseResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, suite: Suite) -> usize {
        self.cases
            .iter()
            .filter(|c| c.suite == suite.name())
            .count()
    }
}

type Check = Box<dyn Fn() -> Result<Option<String>> + Send + Sync>;

fn case(suite: Suite, name: String, check: Check) -> (Suite, String, Check) {
    (suite, name, check)
}

fn equal_or_witness(what: &str, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs} != {rhs}"))
}

fn full_to_column_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for u in all_columns(n) {
            out.push(case(
                Suite::Theorem1,
                format!("n={n} u={u}"),
                Box::new(move || {
                    let q = PartitionFunctionQuery::full_to_column(n, u.clone())?;
                    let brute = f_brute(&q)?;
                    let closed = f_full_closed_for(&q)?;
                    Ok(equal_or_witness(
                        "brute vs closed",
                        &brute,
                        &closed.assembled,
                    ))
                }),
            ));
        }
    }
    out
}

fn two_column_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for k in 1..n as usize {
            for r in 1..=n as usize - k {
                for u in columns_of_length(n, n as usize - k) {
                    for v in columns_of_length(n, n as usize - k - r) {
                        let u = u.clone();
                        out.push(case(
                            Suite::Theorem2,
                            format!("n={n} u={u} v={v}"),
                            Box::new(move || {
                                let q = PartitionFunctionQuery::column_to_column(
                                    u.clone(),
                                    v.clone(),
                                    n,
                                )?;
                                let brute = f_brute(&q)?;
                                let closed = f_two_column_closed_for(&q)?;
                                Ok(equal_or_witness(
                                    "brute vs closed",
                                    &brute,
                                    &closed.assembled,
                                ))
                            }),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn to_empty_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for top in 1..=max_n {
        for u in all_columns(top) {
            if u.top() != top {
                continue;
            }
            out.push(case(
                Suite::Theorem3,
                format!("u={u}"),
                Box::new(move || {
                    let q = PartitionFunctionQuery::column_to_empty(u.clone())?;
                    let brute = f_brute(&q)?;
                    let closed = f_to_empty_closed(&u)?;
                    if let Some(w) = equal_or_witness("brute vs closed", &brute, &closed.assembled)
                    {
                        return Ok(Some(w));
                    }
                    let wider = f_to_empty_closed_with_n(&u, top + 1)?;
                    Ok(equal_or_witness(
                        "complement in 1..u_1+1",
                        &closed.assembled,
                        &wider.assembled,
                    ))
                }),
            ));
        }
    }
    out
}

fn appendix_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    use crate::schubert::{
        branch_last_variable, grassmannian_schubert, ribbon_expand, strip_composition,
        sum_grassmannian_terms, vertical_strip_expand,
    };
    use crate::shapes::partitions_in_box;
    let mut out = Vec::new();
    for r in 1..=max_n.min(3) as usize {
        for nu in partitions_in_box(r, 3) {
            out.push(case(
                Suite::Appendix,
                format!("r={r} nu={nu}"),
                Box::new(move || {
                    let target = grassmannian_schubert(&nu, r)?;
                    let branched = sum_grassmannian_terms(&branch_last_variable(&nu, r)?)?;
                    if let Some(w) = equal_or_witness("branching", &target, &branched) {
                        return Ok(Some(w));
                    }
                    let x_prod: LaurentPoly = (1..=r as u32)
                        .map(|i| LaurentPoly::var(Variable::x(i)))
                        .product();
                    let lhs = &x_prod * &target;
                    let vertical = sum_grassmannian_terms(&vertical_strip_expand(&nu)?)?;
                    if let Some(w) = equal_or_witness("vertical strips", &lhs, &vertical) {
                        return Ok(Some(w));
                    }
                    let ribbons = ribbon_expand(&nu)?;
                    let zeta = nu.plus_ones();
                    for (mu, theta) in &ribbons {
                        let comp = strip_composition(&zeta, mu)?;
                        if let Some(w) =
                            equal_or_witness(&format!("ribbon {zeta}/{mu}"), theta, &comp)
                        {
                            return Ok(Some(w));
                        }
                    }
                    let via_ribbons = sum_grassmannian_terms(&ribbons)?;
                    Ok(equal_or_witness("ribbons", &lhs, &via_ribbons))
                }),
            ));
        }
    }
    out
}

fn bijection_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(case(
            Suite::Bijections,
            format!("asm n={n}"),
            Box::new(move || {
                let asms = AsmMatrix::all(n as usize);
                for a in &asms {
                    let t = asm_to_staircase(a);
                    if staircase_to_asm(&t)? != *a {
                        return Ok(Some(format!("ASM round trip failed on\n{a}")));
                    }
                }
                let mut count = 0;
                for t in enumerate_staircases(&Column::full(n), &Column::empty(), n)? {
                    let t = t?;
                    let cols = t.columns()[..n as usize].to_vec();
                    let t = crate::staircase::Staircase::new(cols)?;
                    if asm_to_staircase(&staircase_to_asm(&t)?) != t {
                        return Ok(Some(format!("staircase round trip failed on {t}")));
                    }
                    count += 1;
                }
                if count != asms.len() {
                    return Ok(Some(format!("{count} staircases but {} ASMs", asms.len())));
                }
                Ok(None)
            }),
        ));
        out.push(case(
            Suite::Bijections,
            format!("ribbons n={n}"),
            Box::new(move || {
                for u in all_columns(n) {
                    if u.len() == n as usize {
                        continue;
                    }
                    let preds = enumerate_predecessors(&u, n)?;
                    let k = n as usize - u.len();
                    let zeta = crate::staircase::p_map(&u, n)?.plus_ones();
                    let ribbons = crate::shapes::ribbon_predecessors(&zeta, k - 1)?;
                    if preds.len() != ribbons.len() {
                        return Ok(Some(format!(
                            "u={u}: {} columns, {} ribbons",
                            preds.len(),
                            ribbons.len()
                        )));
                    }
                    for v in preds {
                        let s = column_ribbon_bijection(&v, &u, n)?;
                        if !s.is_ribbon() || ribbon_to_column(&s, &u, n)? != v {
                            return Ok(Some(format!("u={u} v={v}: round trip failed")));
                        }
                    }
                }
                Ok(None)
            }),
        ));
        if n >= 2 {
            for u in all_columns(n) {
                for v in all_columns(n) {
                    if v.len() >= u.len() || u.len() > n as usize {
                        continue;
                    }
                    let u = u.clone();
                    out.push(case(
                        Suite::Bijections,
                        format!("factorization n={n} u={u} v={v}"),
                        Box::new(move || {
                            let through = weight_through(n, &u, &v)?;
                            let product = factorized_weight(n, &u, &v)?;
                            Ok(equal_or_witness("factorization", &through, &product))
                        }),
                    ));
                }
            }
        }
    }
    out
}

fn symmetry_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for u in all_columns(n) {
            out.push(case(
                Suite::Symmetry,
                format!("F(n,u) n={n} u={u}"),
                Box::new(move || {
                    let q = PartitionFunctionQuery::full_to_column(n, u.clone())?;
                    let r = q.steps();
                    let f = f_brute(&q)?;
                    let g = f.mul_monomial(&rho_monomial(Family::X, r).inverse());
                    let xs: Vec<Variable> = (1..=r as u32).map(Variable::x).collect();
                    Ok((!g.is_symmetric_in(&xs)).then(|| format!("not symmetric: {g}")))
                }),
            ));
        }
        for u in all_columns(n) {
            if u.len() < 2 {
                continue;
            }
            for v in columns_of_length(n, u.len() - 2) {
                let u = u.clone();
                out.push(case(
                    Suite::Symmetry,
                    format!("F(u,v) n={n} u={u} v={v}"),
                    Box::new(move || {
                        let q = PartitionFunctionQuery::column_to_column(u.clone(), v.clone(), n)?;
                        let f = f_brute(&q)?;
                        let g = f.mul_monomial(&Monomial::power(Variable::z(1), -1));
                        let zs = [Variable::z(1), Variable::z(2)];
                        Ok((!g.is_symmetric_in(&zs)).then(|| format!("not symmetric: {g}")))
                    }),
                ));
            }
        }
    }
    out
}

fn two_enum_cases(max_n: u32) -> Vec<(Suite, String, Check)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(case(
            Suite::TwoEnum,
            format!("total n={n}"),
            Box::new(move || {
                let class = AsmClass { n, through: vec![] };
                let total = asm_two_weight_sum(&class);
                let expect = 1u64 << (n * (n - 1) / 2);
                let q = PartitionFunctionQuery::full_to_column(n, Column::empty())?;
                let f = two_enumeration(&q)?;
                if total != expect || f != rat(expect as i64) {
                    return Ok(Some(format!(
                        "ASM sum {total}, specialized F {f}, expected {expect}"
                    )));
                }
                Ok(None)
            }),
        ));
        for u in all_columns(n) {
            for v in all_columns(n) {
                if v.len() > u.len() {
                    continue;
                }
                if v.len() == u.len() && u != v {
                    continue;
                }
                let u = u.clone();
                out.push(case(
                    Suite::TwoEnum,
                    format!("class n={n} u={u} v={v}"),
                    Box::new(move || {
                        let class = AsmClass {
                            n,
                            through: vec![u.clone(), v.clone()],
                        };
                        let sum = asm_two_weight_sum(&class);
                        let f = class_two_enumeration(n, &u, &v)?;
                        Ok((f != rat(sum as i64))
                            .then(|| format!("ASM sum {sum}, specialized product {f}")))
                    }),
                ));
            }
        }
    }
    out
}

/// Runs a verification suite over all inputs up to `max_n`.
///
/// Cases run in parallel; the report lists them in generation order.
pub fn verify(suite: Suite, max_n: u32) -> VerifyReport {
    let mut cases = Vec::new();
    for s in suite.members() {
        cases.extend(match s {
            Suite::Theorem1 => full_to_column_cases(max_n),
            Suite::Theorem2 => two_column_cases(max_n),
            Suite::Theorem3 => to_empty_cases(max_n),
            Suite::Appendix => appendix_cases(max_n),
            Suite::Bijections => bijection_cases(max_n),
            Suite::Symmetry => symmetry_cases(max_n),
            Suite::TwoEnum => two_enum_cases(max_n),
            Suite::All => unreachable!(),
        });
    }
    let cases = cases
        .into_par_iter()
        .map(|(suite, name, check)| {
            let (status, witness) = match check() {
                Ok(None) => (Status::Pass, None),
                Ok(Some(w)) => (Status::Fail, Some(w)),
                Err(e) => (Status::Fail, Some(format!("error: {e}"))),
            };
            CaseResult {
                suite: suite.name().to_string(),
                case: name,
                status,
                witness,
            }
        })
        .collect();
    VerifyReport { cases }
}

/// A shared memo for sweeps that evaluate many Schubert polynomials.
pub fn schubert_cache() -> SchubertCache {
    SchubertCache::new()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(v: &[u32]) -> Column {
        Column::new(v.to_vec()).unwrap()
    }

    fn poly(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_brute_values() {
        let q = PartitionFunctionQuery::full_to_column(3, col(&[1])).unwrap();
        assert_eq!(count_staircases(&q).unwrap(), 2);
        assert_eq!(
            f_brute(&q).unwrap(),
            poly("(x1*y1^-1 - 1)*(x2*y1^-1 - 1)*x1*y2^-1")
        );
        let q = PartitionFunctionQuery::column_to_empty(col(&[1])).unwrap();
        assert!(f_brute(&q).unwrap().is_one());
        let q = PartitionFunctionQuery::column_to_empty(col(&[2, 1])).unwrap();
        assert_eq!(f_brute(&q).unwrap(), poly("x1*y1^-1"));
    }

    #[test]
    fn full_closed_examples() {
        let c = f_full_closed(3, &col(&[1])).unwrap();
        assert_eq!(c.assembled, poly("x1*y1^-2*y2^-1*(x1 - y1)*(x2 - y1)"));
        let q = PartitionFunctionQuery::full_to_column(3, col(&[1])).unwrap();
        assert_eq!(c.assembled, f_brute(&q).unwrap());

        let c = f_full_closed(6, &col(&[5, 2])).unwrap();
        assert_eq!(
            c.term,
            ClosedTerm::Schubert {
                permutation: perm(&[1, 3, 4, 6, 2, 5]),
                at_zero_negated_y: false,
                y_shift: 0
            }
        );
        assert_eq!(
            c.prefactor,
            poly("x1^3*x2^2*x3*y1^-3*y2^-3*y3^-2*y4^-1*y5^-1")
        );

        let c = f_full_closed(6, &col(&[6, 5, 3, 1])).unwrap();
        let ClosedTerm::Schubert { permutation, .. } = &c.term else {
            panic!()
        };
        assert_eq!(*permutation, perm(&[2, 4, 1, 3, 5, 6]));
        assert_eq!(c.prefactor, poly("x1*y1^-2*y2^-1*y3^-1"));
    }

    #[test]
    fn two_column_parameters() {
        let d = two_column_data(&col(&[6, 5, 3, 1]), &col(&[5, 2]), 6).unwrap();
        assert_eq!(d.beta, vec![0, 2, 3, 5]);
        assert_eq!(d.alpha, vec![2, 3, 3, 4]);
        assert_eq!(d.gamma, vec![1, 2]);
        assert_eq!((d.k, d.r), (2, 2));
    }

    #[test]
    fn two_column_worked_example() {
        let (u, v) = (col(&[6, 5, 3, 1]), col(&[5, 2]));
        let c = f_two_column_closed(&u, &v, 6).unwrap();
        assert_eq!(c.prefactor, poly("z1*y1^-1*y2^-2*y3^-1*y4^-1*y5^-1"));
        assert_eq!(c.normalization, poly("z1^-2*z2^-2"));
        let q = PartitionFunctionQuery::column_to_column(u, v, 6).unwrap();
        assert_eq!(c.assembled, f_brute(&q).unwrap());
        assert_ne!(c.without_normalization(), c.assembled);
        let m = two_column_matrix(&c).unwrap();
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn two_column_small_sweep() {
        let report = verify(Suite::Theorem2, 4);
        assert!(report.passed(), "{:?}", report.failures().next());
    }

    #[test]
    fn to_empty_examples() {
        let c = f_to_empty_closed(&col(&[5, 3, 1])).unwrap();
        assert_eq!(
            c.term,
            ClosedTerm::Schubert {
                permutation: perm(&[1, 3, 5, 2, 4]),
                at_zero_negated_y: true,
                y_shift: 0
            }
        );
        assert_eq!(c.prefactor, poly("x1^2*x2*y1^-2*y2^-2*y3^-1*y4^-1"));
        let q = PartitionFunctionQuery::column_to_empty(col(&[5, 3, 1])).unwrap();
        assert_eq!(c.assembled, f_brute(&q).unwrap());

        let shifted = f_to_empty_closed(&col(&[6, 4, 2])).unwrap();
        assert_eq!(shifted.value, shift_y(&c.value, 1));
        let q = PartitionFunctionQuery::column_to_empty(col(&[6, 4, 2])).unwrap();
        assert_eq!(shifted.assembled, f_brute(&q).unwrap());

        assert_eq!(
            f_to_empty_closed(&col(&[2, 1])).unwrap().assembled,
            poly("x1*y1^-1")
        );
        assert_eq!(
            f_to_empty_closed(&col(&[])),
            Err(Error::EmptyColumn).map(|_: ()| unreachable!())
        );
    }

    #[test]
    fn wider_complement_leaves_value_unchanged() {
        for top in 1..=5 {
            for u in all_columns(top).into_iter().filter(|u| u.top() == top) {
                let a = f_to_empty_closed(&u).unwrap();
                let b = f_to_empty_closed_with_n(&u, top + 2).unwrap();
                assert_eq!(a.assembled, b.assembled);
            }
        }
    }

    #[test]
    fn renamed_variables() {
        let q = PartitionFunctionQuery::column_to_column(col(&[3, 1]), col(&[2]), 3)
            .unwrap()
            .with_variables(vec![Variable::x(7)])
            .unwrap();
        let c = closed_form(&q).unwrap();
        assert_eq!(c.assembled, f_brute(&q).unwrap());
        assert!(c.assembled.variables().contains(&Variable::x(7)));
        assert!(PartitionFunctionQuery::column_to_empty(col(&[2, 1]))
            .unwrap()
            .with_variables(vec![Variable::x(1)])
            .is_err());
    }

    #[test]
    fn two_enumeration_examples() {
        assert_eq!(
            asm_two_weight_sum(&AsmClass {
                n: 3,
                through: vec![]
            }),
            8
        );
        assert_eq!(
            asm_two_weight_sum(&AsmClass {
                n: 4,
                through: vec![]
            }),
            64
        );
        let q = PartitionFunctionQuery::full_to_column(3, col(&[1])).unwrap();
        assert_eq!(two_enumeration(&q).unwrap(), rat(2));
        let class = AsmClass {
            n: 3,
            through: vec![col(&[1])],
        };
        assert_eq!(asm_two_weight_sum(&class), 2);
    }

    #[test]
    fn suites_pass_on_small_sizes() {
        for suite in [
            Suite::Theorem1,
            Suite::Theorem3,
            Suite::Appendix,
            Suite::Bijections,
            Suite::Symmetry,
            Suite::TwoEnum,
        ] {
            let report = verify(suite, 4);
            assert!(report.count(suite) > 0);
            assert!(report.passed(), "{suite}: {:?}", report.failures().next());
        }
    }

    #[test]
    fn full_to_column_case_count() {
        let report = verify(Suite::Theorem1, 4);
        let columns: usize = (1..=4).map(|n| all_columns(n).len()).sum();
        assert_eq!(report.cases.len(), columns);
    }

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("theorem9".parse::<Suite>().is_err());
    }
}
