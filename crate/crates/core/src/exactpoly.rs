//! Sparse Laurent polynomials with exact rational coefficients.
//!
//! Variables come in three indexed families `x1, x2, ...`, `y1, y2, ...` and
//! `z1, z2, ...`. Exponents are signed, so `y1^-1` is an ordinary monomial.
//! Terms are kept in a canonical map (no zero coefficients, no zero
//! exponents), which makes structural equality coincide with polynomial
//! equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational coefficient, always kept in lowest terms.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    Z,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        match c {
            'x' => Some(Family::X),
            'y' => Some(Family::Y),
            'z' => Some(Family::Z),
            _ => None,
        }
    }
}

/// An indexed variable such as `x3`. Ordered by family, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Variable {
    family: Family,
    index: u32,
}

impl Variable {
    /// Panics if `index` is zero; variables are 1-based.
    pub fn new(family: Family, index: u32) -> Variable {
        assert!(index >= 1, "variable indices start at 1");
        Variable { family, index }
    }

    pub fn x(index: u32) -> Variable {
        Variable::new(Family::X, index)
    }

    pub fn y(index: u32) -> Variable {
        Variable::new(Family::Y, index)
    }

    pub fn z(index: u32) -> Variable {
        Variable::new(Family::Z, index)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Same family, index moved by `delta`. Returns `None` below index 1.
    pub fn shifted(&self, delta: i64) -> Option<Variable> {
        let idx = self.index as i64 + delta;
        (idx >= 1).then(|| Variable::new(self.family, idx as u32))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

impl From<Variable> for String {
    fn from(v: Variable) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for Variable {
    type Error = Error;
    fn try_from(s: String) -> Result<Variable> {
        s.parse()
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variable> {
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::Parse(format!("bad variable `{s}`")))?;
        let index: u32 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in `{s}`")))?;
        if index == 0 {
            return Err(Error::Parse(format!(
                "variable index must be positive in `{s}`"
            )));
        }
        Ok(Variable::new(family, index))
    }
}

/// A Laurent monomial: sorted `(variable, exponent)` pairs, exponents nonzero.
///
/// The `Ord` impl is graded lexicographic: total degree first, then the
/// exponent of the smallest variable where the two monomials differ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Variable, i32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial { exps: vec![(v, 1)] }
    }

    pub fn power(v: Variable, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, i32)>>(pairs: I) -> Monomial {
        let mut map: BTreeMap<Variable, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            exps: map.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    /// `prod vars[i]^exps[i]`, convenient for `x^rho` style prefactors.
    pub fn from_exponents(family: Family, exps: &[i32]) -> Monomial {
        Monomial::from_pairs(
            exps.iter()
                .enumerate()
                .map(|(i, &e)| (Variable::new(family, i as u32 + 1), e)),
        )
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        match self.exps.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    /// Copy with the exponent of `v` replaced by `e`.
    pub fn with_exponent(&self, v: Variable, e: i32) -> Monomial {
        let mut exps: Vec<(Variable, i32)> =
            self.exps.iter().copied().filter(|&(w, _)| w != v).collect();
        if e != 0 {
            let pos = exps.partition_point(|&(w, _)| w < v);
            exps.insert(pos, (v, e));
        }
        Monomial { exps }
    }

    fn mul_ref(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = self.exps[i];
            let (b, eb) = other.exps[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((a, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    fn map_vars<F: Fn(Variable) -> Variable>(&self, f: F) -> Monomial {
        Monomial::from_pairs(self.exps.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        self.mul_ref(rhs)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            let a = self.exps.get(i);
            let b = other.exps.get(j);
            let (va, ea, vb, eb) = match (a, b) {
                (None, None) => return Ordering::Equal,
                (Some(&(va, ea)), None) => (va, ea, va, 0),
                (None, Some(&(vb, eb))) => (vb, 0, vb, eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => (va, ea, va, 0),
                    Ordering::Greater => (vb, 0, vb, eb),
                    Ordering::Equal => (va, ea, vb, eb),
                },
            };
            if ea != eb {
                return ea.cmp(&eb);
            }
            if a.map(|p| p.0) == Some(va) {
                i += 1;
            }
            if b.map(|p| p.0) == Some(vb) {
                j += 1;
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Output flavour for [`LaurentPoly::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Latex,
}

/// Sparse Laurent polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<TermRecord>", try_from = "Vec<TermRecord>")]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> LaurentPoly {
        LaurentPoly::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> LaurentPoly {
        LaurentPoly::constant(rat(n))
    }

    pub fn var(v: Variable) -> LaurentPoly {
        LaurentPoly::term(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial) -> LaurentPoly {
        LaurentPoly::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `a - b` for two variables, the workhorse factor `x_i - y_j`.
    pub fn difference(a: Variable, b: Variable) -> LaurentPoly {
        let mut p = LaurentPoly::var(a);
        p.add_term(Monomial::var(b), -Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// The single term `(monomial, coefficient)` if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (k * m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power; negative powers need a single-term base.
    pub fn pow_signed(&self, e: i32) -> Result<LaurentPoly> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let inv = self.inverse()?;
        Ok(inv.pow(e.unsigned_abs()))
    }

    /// Inverse in the Laurent ring, which exists only for nonzero single terms.
    pub fn inverse(&self) -> Result<LaurentPoly> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (m, c) = self.as_term().ok_or(Error::NotInvertible)?;
        Ok(LaurentPoly::term(m.inverse(), c.recip()))
    }

    /// Renames variables; colliding images are merged.
    pub fn map_vars<F: Fn(Variable) -> Variable>(&self, f: F) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f), c.clone());
        }
        out
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: Variable, b: Variable) -> LaurentPoly {
        self.map_vars(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// The image `f^{s_i}` under the exchange of `x_i` and `x_{i+1}`.
    pub fn swap_x(&self, i: u32) -> LaurentPoly {
        self.swap_vars(Variable::x(i), Variable::x(i + 1))
    }

    /// Simultaneous substitution of variables by polynomials.
    ///
    /// A variable carrying a negative exponent must be sent to a nonzero
    /// single term; sending it to zero is `DivisionByZero`.
    pub fn substitute(&self, assignment: &BTreeMap<Variable, LaurentPoly>) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        // powers of the images, cached per (variable, exponent)
        let mut cache: BTreeMap<(Variable, i32), LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = LaurentPoly::constant(c.clone());
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    None => kept.push((v, e)),
                    Some(image) => {
                        let factor = match cache.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = image.pow_signed(e)?;
                                cache.insert((v, e), p.clone());
                                p
                            }
                        };
                        acc = &acc * &factor;
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if !acc.is_zero() {
                out += &acc.mul_monomial(&Monomial::from_pairs(kept));
            }
        }
        Ok(out)
    }

    /// Substitution by rational constants.
    pub fn evaluate(&self, assignment: &BTreeMap<Variable, Rational>) -> Result<LaurentPoly> {
        let lifted = assignment
            .iter()
            .map(|(v, c)| (*v, LaurentPoly::constant(c.clone())))
            .collect();
        self.substitute(&lifted)
    }

    /// Sends every variable of `family` occurring in `self` to `value`.
    pub fn specialize_family(&self, family: Family, value: &LaurentPoly) -> Result<LaurentPoly> {
        let assignment = self
            .variables()
            .into_iter()
            .filter(|v| v.family() == family)
            .map(|v| (v, value.clone()))
            .collect();
        self.substitute(&assignment)
    }

    /// Exact quotient by `a - b`, where `a` and `b` are distinct variables.
    ///
    /// Negative powers of `a` and `b` are first cleared by a monomial factor;
    /// the remaining polynomial is divided in `a` by synthetic division with
    /// root `b`. A nonzero remainder is reported as `NotDivisible`.
    pub fn exact_div_difference(&self, a: Variable, b: Variable) -> Result<LaurentPoly> {
        assert_ne!(a, b);
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let min_a = self
            .terms
            .keys()
            .map(|m| m.exponent(a))
            .min()
            .unwrap_or(0)
            .min(0);
        let min_b = self
            .terms
            .keys()
            .map(|m| m.exponent(b))
            .min()
            .unwrap_or(0)
            .min(0);
        let clearing = Monomial::from_pairs([(a, -min_a), (b, -min_b)]);
        let cleared = self.mul_monomial(&clearing);

        // coefficients of powers of `a`
        let mut by_power: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &cleared.terms {
            let e = m.exponent(a);
            by_power
                .entry(e)
                .or_default()
                .add_term(m.with_exponent(a, 0), c.clone());
        }
        let top = *by_power.keys().next_back().expect("nonzero");
        let root = LaurentPoly::var(b);
        let mut quotient = LaurentPoly::zero();
        let mut carry = LaurentPoly::zero();
        for e in (0..=top).rev() {
            let coeff = by_power.remove(&e).unwrap_or_default();
            let current = &coeff + &(&carry * &root);
            if e == 0 {
                if !current.is_zero() {
                    return Err(Error::NotDivisible);
                }
            } else {
                quotient += &current.mul_monomial(&Monomial::power(a, e - 1));
                carry = current;
            }
        }
        Ok(quotient.mul_monomial(&clearing.inverse()))
    }

    /// Exact quotient by `x_i - x_{i+1}`.
    pub fn exact_div_linear(&self, i: u32) -> Result<LaurentPoly> {
        self.exact_div_difference(Variable::x(i), Variable::x(i + 1))
    }

    /// True iff invariant under every adjacent transposition of `vars`.
    pub fn is_symmetric_in(&self, vars: &[Variable]) -> bool {
        vars.windows(2).all(|w| self.swap_vars(w[0], w[1]) == *self)
    }

    /// Canonical rendering, terms in descending graded-lex order.
    pub fn render(&self, format: RenderFormat) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let body = match format {
                RenderFormat::Text => render_term_text(m, &abs),
                RenderFormat::Latex => render_term_latex(m, &abs),
            };
            out.push_str(&body);
        }
        out
    }

    /// Parses the text format produced by [`LaurentPoly::render`]; also
    /// accepts parentheses and products of sums.
    pub fn parse(input: &str) -> Result<LaurentPoly> {
        parse::Parser::new(input).parse_all()
    }
}

fn render_rational_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_term_text(m: &Monomial, c: &Rational) -> String {
    if m.is_one() {
        return render_rational_text(c);
    }
    let mut parts = Vec::new();
    if !c.is_one() {
        parts.push(render_rational_text(c));
    }
    for (v, e) in m.iter() {
        if e == 1 {
            parts.push(v.to_string());
        } else {
            parts.push(format!("{v}^{e}"));
        }
    }
    parts.join("*")
}

fn render_term_latex(m: &Monomial, c: &Rational) -> String {
    let coeff = if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    };
    if m.is_one() {
        return coeff;
    }
    let mut parts = Vec::new();
    if !c.is_one() {
        parts.push(coeff);
    }
    for (v, e) in m.iter() {
        let base = format!("{}_{{{}}}", v.family().letter(), v.index());
        if e == 1 {
            parts.push(base);
        } else {
            parts.push(format!("{base}^{{{e}}}"));
        }
    }
    parts.join(" ")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderFormat::Text))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<LaurentPoly> {
        LaurentPoly::parse(s)
    }
}

impl From<Variable> for LaurentPoly {
    fn from(v: Variable) -> LaurentPoly {
        LaurentPoly::var(v)
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> LaurentPoly {
        LaurentPoly::monomial(m)
    }
}

/// Structured serialization of one term: `{"coeff": "p/q", "exps": {"x1": 2}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exps: BTreeMap<String, i32>,
}

impl From<LaurentPoly> for Vec<TermRecord> {
    fn from(p: LaurentPoly) -> Vec<TermRecord> {
        p.terms
            .iter()
            .rev()
            .map(|(m, c)| TermRecord {
                coeff: format!("{}/{}", c.numer(), c.denom()),
                exps: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect()
    }
}

impl TryFrom<Vec<TermRecord>> for LaurentPoly {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for rec in records {
            let coeff = parse_rational(&rec.coeff)?;
            let mut pairs = Vec::with_capacity(rec.exps.len());
            for (name, e) in rec.exps {
                pairs.push((name.parse::<Variable>()?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(p)
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(
            s.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big += small;
        big
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma * mb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for p in iter {
            acc = &acc * &p;
        }
        acc
    }
}

impl<'a> std::iter::Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl<'a> std::iter::Product<&'a LaurentPoly> for LaurentPoly {
    fn product<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for p in iter {
            acc = &acc * p;
        }
        acc
    }
}

mod parse {
    use super::*;

    pub(super) struct Parser<'a> {
        src: &'a str,
        pos: usize,
    }

    impl<'a> Parser<'a> {
        pub(super) fn new(src: &'a str) -> Parser<'a> {
            Parser { src, pos: 0 }
        }

        fn err(&self, what: &str) -> Error {
            Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
        }

        fn skip_ws(&mut self) {
            while self.peek().is_some_and(|c| c.is_whitespace()) {
                self.pos += 1;
            }
        }

        fn peek(&self) -> Option<char> {
            self.src[self.pos..].chars().next()
        }

        fn eat(&mut self, c: char) -> bool {
            self.skip_ws();
            if self.peek() == Some(c) {
                self.pos += c.len_utf8();
                true
            } else {
                false
            }
        }

        pub(super) fn parse_all(mut self) -> Result<LaurentPoly> {
            let p = self.expr()?;
            self.skip_ws();
            if self.pos != self.src.len() {
                return Err(self.err("trailing input"));
            }
            Ok(p)
        }

        fn expr(&mut self) -> Result<LaurentPoly> {
            let mut acc = if self.eat('-') {
                -self.term()?
            } else {
                self.eat('+');
                self.term()?
            };
            loop {
                if self.eat('+') {
                    acc += &self.term()?;
                } else if self.eat('-') {
                    acc -= &self.term()?;
                } else {
                    return Ok(acc);
                }
            }
        }

        fn term(&mut self) -> Result<LaurentPoly> {
            let mut acc = self.factor()?;
            while self.eat('*') {
                acc = &acc * &self.factor()?;
            }
            Ok(acc)
        }

        fn factor(&mut self) -> Result<LaurentPoly> {
            let base = self.atom()?;
            if self.eat('^') {
                let neg = self.eat('-');
                let digits = self.digits();
                let e: i32 = digits.parse().map_err(|_| self.err("bad exponent"))?;
                base.pow_signed(if neg { -e } else { e })
            } else {
                Ok(base)
            }
        }

        fn digits(&mut self) -> &'a str {
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            &self.src[start..self.pos]
        }

        fn atom(&mut self) -> Result<LaurentPoly> {
            self.skip_ws();
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.err("expected `)`"));
                    }
                    Ok(inner)
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits().to_string();
                    let mut text = num;
                    if self.peek() == Some('/') {
                        self.pos += 1;
                        let den = self.digits();
                        if den.is_empty() {
                            return Err(self.err("expected denominator"));
                        }
                        text = format!("{text}/{den}");
                    }
                    Ok(LaurentPoly::constant(parse_rational(&text)?))
                }
                Some(c) if Family::from_letter(c).is_some() => {
                    let start = self.pos;
                    self.pos += 1;
                    let idx = self.digits();
                    if idx.is_empty() {
                        return Err(self.err("expected variable index"));
                    }
                    let v: Variable = self.src[start..self.pos].parse()?;
                    Ok(LaurentPoly::var(v))
                }
                _ => Err(self.err("unexpected token")),
            }
        }
    }
}
