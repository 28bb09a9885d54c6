//! Divided differences, double Schubert polynomials, complete functions of
//! alphabet differences and the determinants built from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{Family, LaurentPoly, Rational, Variable};
use crate::permutation::{Code, Permutation};
use crate::shapes::{
    horizontal_strip_predecessors, psi_h, psi_v, ribbon_predecessors, vertical_strip_predecessors,
    PartitionShape, SkewShape,
};

/// A formal difference of alphabets `A - B`, with multiset semantics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetExpr {
    pub plus: Vec<Variable>,
    pub minus: Vec<Variable>,
}

impl AlphabetExpr {
    pub fn new(plus: Vec<Variable>, minus: Vec<Variable>) -> AlphabetExpr {
        AlphabetExpr { plus, minus }
    }

    pub fn empty() -> AlphabetExpr {
        AlphabetExpr::default()
    }

    /// The first `k` letters of a family, e.g. `x^3 = {x1, x2, x3}`.
    pub fn prefix(family: Family, k: u32) -> Vec<Variable> {
        (1..=k).map(|i| Variable::new(family, i)).collect()
    }

    /// `x^r - y^k`.
    pub fn difference(plus: Vec<Variable>, minus: Vec<Variable>) -> AlphabetExpr {
        AlphabetExpr { plus, minus }
    }

    /// Union of formal differences: `(A - B) + (C - D) = (A + C) - (B + D)`.
    pub fn union(&self, other: &AlphabetExpr) -> AlphabetExpr {
        let mut plus = self.plus.clone();
        plus.extend_from_slice(&other.plus);
        let mut minus = self.minus.clone();
        minus.extend_from_slice(&other.minus);
        AlphabetExpr { plus, minus }
    }

    /// Total number of letters, positive and negative.
    pub fn cardinality(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }
}

impl fmt::Display for AlphabetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for v in &self.plus {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        for v in &self.minus {
            write!(f, "-{v}")?;
        }
        Ok(())
    }
}

/// A Schubert polynomial index: `X_σ` by permutation or `Y_c` by code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchubertIndex {
    Permutation(Permutation),
    Code(Code),
}

impl SchubertIndex {
    pub fn permutation(&self) -> Result<Permutation> {
        match self {
            SchubertIndex::Permutation(p) => Ok(p.clone()),
            SchubertIndex::Code(c) => Permutation::from_code(c),
        }
    }
}

/// `∂_i f = (f - f^{s_i}) / (x_i - x_{i+1})`.
///
/// Computed term by term: `(a^p b^q - a^q b^p) / (a - b)` is a geometric sum,
/// valid for negative exponents as well.
pub fn divided_difference(f: &LaurentPoly, i: u32) -> LaurentPoly {
    let a = Variable::x(i);
    let b = Variable::x(i + 1);
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let p = m.exponent(a);
        let q = m.exponent(b);
        if p == q {
            continue;
        }
        let rest = m.with_exponent(a, 0).with_exponent(b, 0);
        let (hi, lo, coeff) = if p > q {
            (p, q, c.clone())
        } else {
            (q, p, -c.clone())
        };
        // (a^hi b^lo - a^lo b^hi)/(a-b) = sum_{k=0}^{hi-lo-1} a^{hi-1-k} b^{lo+k}
        for k in 0..hi - lo {
            let mono = rest.with_exponent(a, hi - 1 - k).with_exponent(b, lo + k);
            out.add_term(mono, coeff.clone());
        }
    }
    out
}

/// `∂_{i_1} ∘ ... ∘ ∂_{i_l}` for the word `[i_1, ..., i_l]`; `∂_{i_l}` acts first.
pub fn divided_difference_word(f: &LaurentPoly, word: &[u32]) -> LaurentPoly {
    word.iter()
        .rev()
        .fold(f.clone(), |g, &i| divided_difference(&g, i))
}

/// `∂_σ` along the lex-min reduced word of `σ`.
pub fn divided_difference_perm(f: &LaurentPoly, sigma: &Permutation) -> LaurentPoly {
    divided_difference_word(f, &sigma.reduced_word())
}

/// `Σ_{w ∈ S_n} (-1)^{ℓ(w)} f^w / ∏_{i<j} (x_i - x_j)`.
pub fn max_divided_difference(f: &LaurentPoly, n: usize) -> Result<LaurentPoly> {
    let mut antisym = LaurentPoly::zero();
    for w in Permutation::all(n) {
        let image = f.map_vars(|v| {
            if v.family() == Family::X && (v.index() as usize) <= n {
                Variable::x(w.apply(v.index()))
            } else {
                v
            }
        });
        if w.length() % 2 == 0 {
            antisym += &image;
        } else {
            antisym -= &image;
        }
    }
    for i in 1..=n as u32 {
        for j in i + 1..=n as u32 {
            antisym = antisym.exact_div_difference(Variable::x(i), Variable::x(j))?;
        }
    }
    Ok(antisym)
}

/// `Y_v = ∏_i ∏_{j ≤ v_i} (x_i - y_j)` for a weakly decreasing code `v`.
pub fn dominant_schubert(v: &Code) -> Result<LaurentPoly> {
    if !v.is_weakly_decreasing() {
        return Err(Error::NotDominant(v.entries().to_vec()));
    }
    Ok(v.entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &vi)| {
            (1..=vi)
                .map(move |j| LaurentPoly::difference(Variable::x(i as u32 + 1), Variable::y(j)))
        })
        .product())
}

/// Memo table for double Schubert polynomials.
///
/// `X_σ` is obtained from `X_{σ s_i} ` by `∂_i` at the first ascent `i` of
/// `σ`, stopping at the first dominant permutation met on the way.
#[derive(Default)]
pub struct SchubertCache {
    table: HashMap<Permutation, LaurentPoly>,
}

impl SchubertCache {
    pub fn new() -> SchubertCache {
        SchubertCache::default()
    }

    pub fn get(&mut self, sigma: &Permutation) -> LaurentPoly {
        if let Some(p) = self.table.get(sigma) {
            return p.clone();
        }
        let code = sigma.code();
        let value = if code.is_weakly_decreasing() {
            dominant_schubert(&code).expect("dominant")
        } else {
            let line = sigma.one_line();
            let i = (0..line.len() - 1)
                .find(|&i| line[i] < line[i + 1])
                .expect("non-dominant permutation has an ascent");
            let up = sigma.times_simple(i as u32 + 1);
            divided_difference(&self.get(&up), i as u32 + 1)
        };
        self.table.insert(sigma.clone(), value.clone());
        value
    }
}

/// The double Schubert polynomial `X_σ(x, y)`.
pub fn schubert(sigma: &Permutation) -> LaurentPoly {
    SchubertCache::new().get(sigma)
}

pub fn schubert_index(idx: &SchubertIndex) -> Result<LaurentPoly> {
    Ok(schubert(&idx.permutation()?))
}

/// `X_σ = ∂_{σ^{-1} ω_n} Y_{[n-1, ..., 1, 0]}` with `n` the support of `σ`;
/// slower than [`schubert`], kept as a reference route.
pub fn schubert_from_longest(sigma: &Permutation) -> LaurentPoly {
    let n = sigma.support();
    let omega = Permutation::longest(n);
    let top = dominant_schubert(&omega.code()).expect("dominant");
    divided_difference_perm(&top, &sigma.inverse().compose(&omega))
}

/// `S_m(A - B)`: the coefficient of `t^m` in `∏_B (1 - t b) / ∏_A (1 - t a)`.
pub fn complete_function(m: i64, alphabet: &AlphabetExpr) -> LaurentPoly {
    if m < 0 {
        return LaurentPoly::zero();
    }
    let m = m as usize;
    let mut c = vec![LaurentPoly::zero(); m + 1];
    c[0] = LaurentPoly::one();
    for &a in &alphabet.plus {
        let a = LaurentPoly::var(a);
        for j in 1..=m {
            let add = &a * &c[j - 1];
            c[j] += &add;
        }
    }
    for &b in &alphabet.minus {
        let b = LaurentPoly::var(b);
        for j in (1..=m).rev() {
            let sub = &b * &c[j - 1];
            c[j] -= &sub;
        }
    }
    c.swap_remove(m)
}

/// Determinant by Laplace expansion, memoized over column subsets.
pub fn determinant(matrix: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    assert!(n < 32, "determinant size {n} too large");
    // minors[S] = det of the first |S| rows restricted to the columns in S
    let mut minors: HashMap<u32, LaurentPoly> = HashMap::new();
    minors.insert(0, LaurentPoly::one());
    for entries in matrix {
        let mut next: HashMap<u32, LaurentPoly> = HashMap::new();
        for (&set, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for (col, entry) in entries.iter().enumerate() {
                if set & (1 << col) != 0 || entry.is_zero() {
                    continue;
                }
                // sign of moving column `col` past the later columns of the minor
                let later = (set >> col).count_ones();
                let term = entry * minor;
                let slot = next.entry(set | (1 << col)).or_default();
                if later % 2 == 0 {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        minors = next;
    }
    Ok(minors.remove(&((1u32 << n) - 1)).unwrap_or_default())
}

/// `S_I(A_1, ..., A_n) = det |S_{I_j + j - i}(A_j)|`.
pub fn multi_schur_columns(index: &[i64], columns: &[AlphabetExpr]) -> Result<LaurentPoly> {
    let n = index.len();
    if columns.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} indices but {} column alphabets",
            columns.len()
        )));
    }
    let matrix: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| complete_function(index[j] + j as i64 - i as i64, &columns[j]))
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// The flagged multi-Schur function `det |S_{v_j - u_i + j - i}(C_j + F_i)|`,
/// where `C_j` is the alphabet of column `j` and `F_i` the flag of row `i`.
pub fn multi_schur(
    v: &[i64],
    u: &[i64],
    columns: &[AlphabetExpr],
    flags: &[AlphabetExpr],
) -> Result<LaurentPoly> {
    determinant(&multi_schur_matrix(v, u, columns, flags)?)
}

/// The matrix whose determinant is [`multi_schur`].
pub fn multi_schur_matrix(
    v: &[i64],
    u: &[i64],
    columns: &[AlphabetExpr],
    flags: &[AlphabetExpr],
) -> Result<Vec<Vec<LaurentPoly>>> {
    let n = v.len();
    if u.len() != n || columns.len() != n || flags.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "multi-Schur sizes v={}, u={}, columns={}, flags={}",
            n,
            u.len(),
            columns.len(),
            flags.len()
        )));
    }
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let m = v[j] - u[i] + j as i64 - i as i64;
                    complete_function(m, &columns[j].union(&flags[i]))
                })
                .collect()
        })
        .collect())
}

/// Compares the flagged multi-Schur function with its unflagged version.
///
/// The flag of row `i` (1-based) must have at most `n - i` letters. The
/// identity holds for flags entering with a minus sign (letters removed
/// from the row alphabet) and `u = 0`, which is the form used when
/// trimming a common alphabet from the rows of a Schubert determinant.
pub fn flag_drop_check(
    v: &[i64],
    u: &[i64],
    columns: &[AlphabetExpr],
    flags: &[AlphabetExpr],
) -> Result<bool> {
    let n = flags.len();
    for (i, flag) in flags.iter().enumerate() {
        if flag.cardinality() > n - 1 - i {
            return Err(Error::PreconditionViolated(format!(
                "flag of row {} has {} letters, at most {} allowed",
                i + 1,
                flag.cardinality(),
                n - 1 - i
            )));
        }
    }
    let flagged = multi_schur(v, u, columns, flags)?;
    let plain = multi_schur(v, u, columns, &vec![AlphabetExpr::empty(); n])?;
    Ok(flagged == plain)
}

/// The partition data `v = [σ_1 - 1, ..., σ_r - 1]` of a permutation whose
/// only descent (if any) is at `r`.
pub fn grassmannian_data(sigma: &Permutation, r: usize) -> Result<Vec<u32>> {
    if r == 0 || !sigma.has_descent_at_most_at(r) {
        return Err(Error::NotGrassmannian(sigma.one_line().to_vec(), r));
    }
    Ok(sigma.padded(r)[..r].iter().map(|s| s - 1).collect())
}

fn grassmannian_columns(v: &[u32], r: usize) -> Vec<AlphabetExpr> {
    v.iter()
        .map(|&vj| {
            AlphabetExpr::difference(
                AlphabetExpr::prefix(Family::X, r as u32),
                AlphabetExpr::prefix(Family::Y, vj),
            )
        })
        .collect()
}

/// `det |S_{v_j + 1 - i}(x^r - y^{v_j})|` for `σ` with its descent at `r`.
pub fn grassmannian_determinant(sigma: &Permutation, r: usize) -> Result<LaurentPoly> {
    let v = grassmannian_data(sigma, r)?;
    let index: Vec<i64> = v
        .iter()
        .enumerate()
        .map(|(j, &vj)| vj as i64 - j as i64)
        .collect();
    multi_schur_columns(&index, &grassmannian_columns(&v, r))
}

/// The same determinant with every index raised by one; equals
/// `x_1 ⋯ x_r X_σ`.
pub fn shift_grassmannian(sigma: &Permutation, r: usize) -> Result<LaurentPoly> {
    let v = grassmannian_data(sigma, r)?;
    let index: Vec<i64> = v
        .iter()
        .enumerate()
        .map(|(j, &vj)| vj as i64 - j as i64 + 1)
        .collect();
    multi_schur_columns(&index, &grassmannian_columns(&v, r))
}

/// Coefficients `c_σ = ∂_σ(f)|_{x=y}` of `f = Σ c_σ X_σ`, for `f` a
/// polynomial in `x_1..x_n`.
pub fn newton_expand(f: &LaurentPoly, n: usize) -> Result<BTreeMap<Permutation, LaurentPoly>> {
    for v in f.variables() {
        if v.family() == Family::X && v.index() as usize > n {
            return Err(Error::PreconditionViolated(format!(
                "{v} is not among x1..x{n}"
            )));
        }
    }
    let mut out = BTreeMap::new();
    let mut level: BTreeMap<Permutation, LaurentPoly> = BTreeMap::new();
    level.insert(Permutation::identity(), f.clone());
    while !level.is_empty() {
        let mut next = BTreeMap::new();
        for (sigma, g) in &level {
            let c = specialize_x_to_y(g)?;
            if !c.is_zero() {
                out.insert(sigma.clone(), c);
            }
            let top = g
                .variables()
                .into_iter()
                .filter(|v| v.family() == Family::X)
                .map(|v| v.index())
                .max()
                .unwrap_or(0);
            for i in 1..=top {
                // ∂_i ∂_σ = ∂_{s_i σ} when i comes before i+1 in σ
                let inv = sigma.inverse();
                if inv.apply(i) > inv.apply(i + 1) {
                    continue;
                }
                let h = divided_difference(g, i);
                if h.is_zero() {
                    continue;
                }
                let tau = Permutation::from_word(&[i]).compose(sigma);
                next.entry(tau).or_insert(h);
            }
        }
        level = next;
    }
    Ok(out)
}

/// `x_i -> y_i` for every `i`.
pub fn specialize_x_to_y(g: &LaurentPoly) -> Result<LaurentPoly> {
    let assignment: BTreeMap<Variable, LaurentPoly> = g
        .variables()
        .into_iter()
        .filter(|v| v.family() == Family::X)
        .map(|v| (v, LaurentPoly::var(Variable::y(v.index()))))
        .collect();
    g.substitute(&assignment)
}

/// `Y_λ` for a code given as a weakly increasing list padded to `r` entries.
pub fn grassmannian_schubert(lambda: &PartitionShape, r: usize) -> Result<LaurentPoly> {
    let code = Code::new(lambda.padded(r)?);
    Ok(schubert(&Permutation::from_code(&code)?))
}

/// Branching on the last variable: the terms `(μ, ψ^h(λ/μ; r))` with
/// `Y_λ(x^r, y) = Σ ψ^h(λ/μ; r) Y_μ(x^{r-1}, y)`.
pub fn branch_last_variable(
    lambda: &PartitionShape,
    r: usize,
) -> Result<Vec<(PartitionShape, LaurentPoly)>> {
    if r == 0 {
        return Err(Error::PreconditionViolated("r must be positive".into()));
    }
    let x = Variable::x(r as u32);
    horizontal_strip_predecessors(lambda, r - 1)?
        .into_iter()
        .map(|mu| {
            let w = psi_h(lambda, &mu, r, x)?;
            Ok((mu, w))
        })
        .collect()
}

/// Every 0/1 removal `ζ - ε` from `ζ`, flagged by whether it is a partition.
pub fn vertical_strip_removals(zeta: &PartitionShape) -> Vec<(Vec<u32>, bool)> {
    let z = zeta.parts();
    let r = z.len();
    let mut out = Vec::with_capacity(1 << r);
    for mask in 0u32..(1 << r) {
        let mu: Vec<u32> = (0..r)
            .map(|i| z[i] - ((mask >> (r - 1 - i)) & 1).min(z[i]))
            .collect();
        if (0..r).any(|i| (mask >> (r - 1 - i)) & 1 == 1 && z[i] == 0) {
            continue;
        }
        let conform = mu.windows(2).all(|w| w[0] <= w[1]);
        out.push((mu, conform));
    }
    out
}

/// The terms `(μ, ψ^v(ζ/μ; r))` of `x_1 ⋯ x_r Y_ν = Σ ψ^v(ζ/μ; r) Y_μ`,
/// with `ζ = ν + 1^r`.
pub fn vertical_strip_expand(nu: &PartitionShape) -> Result<Vec<(PartitionShape, LaurentPoly)>> {
    let r = nu.len();
    let zeta = nu.plus_ones();
    vertical_strip_predecessors(&zeta)
        .into_iter()
        .map(|mu| {
            let w = psi_v(&zeta, &mu, r)?;
            Ok((mu, w))
        })
        .collect()
}

/// The terms `(μ, θ(ζ/μ))` of
/// `x_1 ⋯ x_r Y_ν(x^r, y) = Σ θ(ζ/μ) Y_μ(x^{r-1}, y)` with `ζ = ν + 1^r`,
/// where θ uses the letter `x_r`.
pub fn ribbon_expand(nu: &PartitionShape) -> Result<Vec<(PartitionShape, LaurentPoly)>> {
    let r = nu.len();
    if r == 0 {
        return Ok(vec![(PartitionShape::empty(), LaurentPoly::one())]);
    }
    let zeta = nu.plus_ones();
    let x = Variable::x(r as u32);
    ribbon_predecessors(&zeta, r - 1)?
        .into_iter()
        .map(|mu| {
            let w = SkewShape::new(zeta.clone(), mu.clone())?.theta_weight(x)?;
            Ok((mu, w))
        })
        .collect()
}

/// `Σ_η ψ^v(ζ/η; r) ψ^h(η/μ; r)` over the `η` with `ζ/η` a vertical strip
/// and `η/μ` a horizontal strip; `ζ` has `r` parts and `μ` has `r - 1`.
pub fn strip_composition(zeta: &PartitionShape, mu: &PartitionShape) -> Result<LaurentPoly> {
    let r = zeta.len();
    let x = Variable::x(r as u32);
    let mut total = LaurentPoly::zero();
    for eta in vertical_strip_predecessors(zeta) {
        let Ok(inner) = SkewShape::new(eta.clone(), mu.clone()) else {
            continue;
        };
        if !inner.is_horizontal_strip() {
            continue;
        }
        total += &(psi_v(zeta, &eta, r)? * psi_h(&eta, mu, r, x)?);
    }
    Ok(total)
}

/// Evaluates `Σ c · Y_μ(x^{len μ}, y)` for a list of terms.
pub fn sum_grassmannian_terms(terms: &[(PartitionShape, LaurentPoly)]) -> Result<LaurentPoly> {
    let mut cache = SchubertCache::new();
    let mut total = LaurentPoly::zero();
    for (mu, c) in terms {
        let code = Code::new(mu.parts().to_vec());
        total += &(c * &cache.get(&Permutation::from_code(&code)?));
    }
    Ok(total)
}

/// Substitutes `y_i -> y_{i + shift}` in every term.
pub fn shift_y(f: &LaurentPoly, shift: u32) -> LaurentPoly {
    f.map_vars(|v| {
        if v.family() == Family::Y {
            Variable::y(v.index() + shift)
        } else {
            v
        }
    })
}

/// `x_i -> 0`, `y_i -> -y_i`.
pub fn at_zero_negated_y(f: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        if m.iter().any(|(v, _)| v.family() == Family::X) {
            if m.iter().any(|(v, e)| v.family() == Family::X && e < 0) {
                return Err(Error::DivisionByZero);
            }
            continue;
        }
        let odd: i64 = m
            .iter()
            .filter(|(v, _)| v.family() == Family::Y)
            .map(|(_, e)| e as i64)
            .sum();
        let coeff: Rational = if odd.rem_euclid(2) == 1 {
            -c.clone()
        } else {
            c.clone()
        };
        out.add_term(m.clone(), coeff);
    }
    Ok(out)
}
