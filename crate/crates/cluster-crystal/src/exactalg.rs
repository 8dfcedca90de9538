//! Exact sparse Laurent-polynomial arithmetic over the integers.
//!
//! Every value the library manipulates (matrix entries, cluster variables,
//! crystal sums) is a [`LaurentPoly`]: an integer combination of Laurent
//! monomials in the torus variables `a[i]` and the doubly indexed crystal
//! variables `Y[s,j]`. All arithmetic is exact; there is no floating point
//! anywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors raised by the arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    /// Exact division failed. In this crate that always signals a convention
    /// bug or a violation of the Laurent phenomenon, so callers should treat
    /// it as fatal.
    #[error("not exactly divisible: {0}")]
    NotDivisible(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("substitution map does not cover {0}")]
    UnmappedVariable(String),
    #[error("evaluation point assigns zero to {0}")]
    ZeroSubstitution(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A variable: either a torus coordinate `a[i]` (i in [1, r+1]) or a crystal
/// variable `Y[s,j]` with arbitrary integer row `s` and column `j >= 1`.
///
/// The derived order (`Torus` by index, then `Y` by `(row, col)`) is the
/// global variable order used by the monomial order and by all serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Torus(u32),
    Y { row: i32, col: u32 },
}

impl VarId {
    pub fn torus(i: usize) -> Self {
        assert!(i >= 1, "torus index must be >= 1");
        VarId::Torus(i as u32)
    }

    pub fn y(row: i32, col: usize) -> Self {
        assert!(col >= 1, "Y column must be >= 1");
        VarId::Y { row, col: col as u32 }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Torus(i) => write!(f, "a[{i}]"),
            VarId::Y { row, col } => write!(f, "Y[{row},{col}]"),
        }
    }
}

/// A Laurent monomial: a sparse exponent map with no zero entries.
///
/// Monomials form a group under multiplication. The `Ord` impl is the graded
/// lexicographic order over the global variable order, so `BTreeMap`s keyed
/// by monomials iterate in ascending monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentMono {
    exps: BTreeMap<VarId, i64>,
}

impl LaurentMono {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        let mut exps = BTreeMap::new();
        exps.insert(v, 1);
        LaurentMono { exps }
    }

    /// `Y[s,j]` as a monomial, collapsing out-of-range columns to the unit
    /// monomial (the boundary convention `Y[s,0] = Y[s,j] = 1` for `j > r`).
    pub fn y_var(rank: usize, row: i32, col: i64) -> Self {
        if col < 1 || col > rank as i64 {
            Self::unit()
        } else {
            Self::var(VarId::y(row, col as usize))
        }
    }

    pub fn torus_var(i: usize) -> Self {
        Self::var(VarId::torus(i))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i64)>) -> Self {
        let mut m = Self::unit();
        for (v, e) in pairs {
            m.mul_assign_var(v, e);
        }
        m
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp_of(&self, v: VarId) -> i64 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.values().sum()
    }

    fn mul_assign_var(&mut self, v: VarId, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.exps.entry(v).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.exps.remove(&v);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, e) in &other.exps {
            out.mul_assign_var(*v, *e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        LaurentMono {
            exps: self.exps.iter().map(|(v, e)| (*v, -e)).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::unit();
        }
        LaurentMono {
            exps: self.exps.iter().map(|(v, e)| (*v, e * n)).collect(),
        }
    }

    /// Componentwise quotient `self / other`; None if any exponent of the
    /// quotient would be negative (used by polynomial division).
    fn div_nonneg(&self, other: &Self) -> Option<Self> {
        let q = self.mul(&other.inv());
        if q.exps.values().any(|e| *e < 0) {
            None
        } else {
            Some(q)
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.keys().copied()
    }
}

impl Ord for LaurentMono {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.total_degree().cmp(&other.total_degree());
        if d != Ordering::Equal {
            return d;
        }
        // Lexicographic tie-break: earlier variables are more significant.
        let mut it1 = self.exps.iter().peekable();
        let mut it2 = other.exps.iter().peekable();
        loop {
            match (it1.peek(), it2.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((v1, e1)), Some((v2, e2))) => match v1.cmp(v2) {
                    Ordering::Equal => {
                        if e1 != e2 {
                            return e1.cmp(e2);
                        }
                        it1.next();
                        it2.next();
                    }
                    // self has an exponent on an earlier variable that other
                    // lacks (other's exponent there is 0).
                    Ordering::Less => return self.exps[v1].cmp(&0),
                    Ordering::Greater => return 0.cmp(&other.exps[v2]),
                },
                (Some((v1, _)), None) => return self.exps[v1].cmp(&0),
                (None, Some((v2, _))) => return 0.cmp(&other.exps[v2]),
            }
        }
    }
}

impl PartialOrd for LaurentMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaurentMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse Laurent polynomial with exact integer coefficients.
///
/// Canonical form: no zero coefficients are stored, so structural equality
/// and hashing coincide with ring equality. The derived order is an
/// arbitrary but fixed total order used for deterministic set storage.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<LaurentMono, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_term(BigInt::from(c), LaurentMono::unit())
    }

    pub fn from_mono(m: LaurentMono) -> Self {
        Self::from_term(BigInt::one(), m)
    }

    pub fn from_term(c: BigInt, m: LaurentMono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentMono, &BigInt)> {
        self.terms.iter()
    }

    /// The single monomial of a one-term polynomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&LaurentMono> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(m);
            }
        }
        None
    }

    fn add_term(&mut self, m: LaurentMono, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &LaurentMono) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&LaurentMono, &BigInt)> {
        self.terms.last_key_value()
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// The componentwise minimum exponent over all terms (absent entries
    /// count as 0). Dividing by this monomial yields a genuine polynomial
    /// whose per-variable minimum exponent is exactly 0.
    fn content_shift(&self) -> LaurentMono {
        let mut shift: BTreeMap<VarId, i64> = BTreeMap::new();
        for v in self.vars() {
            // exp_of returns 0 for absent variables, so the minimum already
            // accounts for terms not containing v.
            let min = self.terms.keys().map(|m| m.exp_of(v)).min().unwrap_or(0);
            if min != 0 {
                shift.insert(v, min);
            }
        }
        LaurentMono { exps: shift }
    }

    /// Exact division: returns `h` with `h * q == self`, or `NotDivisible`.
    ///
    /// Both operands are shifted to polynomial support with per-variable
    /// minimum exponent 0; in that normal form an exact Laurent quotient is
    /// itself a polynomial, so greedy leading-term elimination under the
    /// graded-lex order is sound and total.
    pub fn divide_exact(&self, q: &Self) -> Result<Self, ArithError> {
        if q.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let sp = self.content_shift();
        let sq = q.content_shift();
        let p_norm = self.mul_mono(&sp.inv());
        let q_norm = q.mul_mono(&sq.inv());

        let (qm, qc) = q_norm.leading().unwrap();
        let (qm, qc) = (qm.clone(), qc.clone());
        let mut rem = p_norm;
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let t = rm.div_nonneg(&qm).ok_or_else(|| {
                ArithError::NotDivisible(format!("leading monomial {rm} not divisible by {qm}"))
            })?;
            let (c, r0) = (rc / &qc, rc % &qc);
            if !r0.is_zero() {
                return Err(ArithError::NotDivisible(format!(
                    "coefficient {rc} not divisible by {qc}"
                )));
            }
            let piece = Self::from_term(c, t);
            rem = rem.sub(&piece.mul(&q_norm));
            quot = quot.add(&piece);
        }
        Ok(quot.mul_mono(&sp.mul(&sq.inv())))
    }

    /// Homomorphic substitution of monomials for variables. The map must
    /// cover every variable of `self`.
    pub fn substitute(
        &self,
        sigma: &BTreeMap<VarId, LaurentMono>,
    ) -> Result<Self, ArithError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut image = LaurentMono::unit();
            for (v, e) in m.exps() {
                let img = sigma
                    .get(&v)
                    .ok_or_else(|| ArithError::UnmappedVariable(v.to_string()))?;
                image = image.mul(&img.pow(e));
            }
            out.add_term(image, c);
        }
        Ok(out)
    }

    /// Exact rational evaluation; every variable must be assigned a nonzero
    /// rational (negative exponents are evaluated by inversion).
    pub fn eval_rational(
        &self,
        point: &BTreeMap<VarId, BigRational>,
    ) -> Result<BigRational, ArithError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut val = BigRational::from(c.clone());
            for (v, e) in m.exps() {
                let x = point
                    .get(&v)
                    .ok_or_else(|| ArithError::UnmappedVariable(v.to_string()))?;
                if x.is_zero() {
                    return Err(ArithError::ZeroSubstitution(v.to_string()));
                }
                let p = if e >= 0 {
                    num_traits::pow::pow(x.clone(), e as usize)
                } else {
                    num_traits::pow::pow(x.clone(), (-e) as usize).recip()
                };
                val *= p;
            }
            total += val;
        }
        Ok(total)
    }

    /// First term (in descending graded-lex order) where the two polynomials
    /// differ; diagnostic aid for equality failures.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let d = self.sub(other);
        d.terms
            .last_key_value()
            .map(|(m, c)| format!("{c}*{m}"))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

// ---------------------------------------------------------------------------
// Text form parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ArithError> {
        Err(ArithError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), ArithError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn integer(&mut self) -> Result<i64, ArithError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .map_or_else(|| self.err("integer out of range"), Ok)
    }

    fn bigint(&mut self) -> Result<BigInt, ArithError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') || self.bytes.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected integer");
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse::<BigInt>().ok())
            .map_or_else(|| self.err("bad integer"), Ok)
    }

    fn atom(&mut self) -> Result<VarId, ArithError> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                self.eat(b'[')?;
                let i = self.integer()?;
                self.eat(b']')?;
                if i < 1 || i > u32::MAX as i64 {
                    return self.err("torus index out of range");
                }
                Ok(VarId::Torus(i as u32))
            }
            Some(b'Y') => {
                self.pos += 1;
                self.eat(b'[')?;
                let s = self.integer()?;
                self.eat(b',')?;
                let j = self.integer()?;
                self.eat(b']')?;
                if s < i32::MIN as i64 || s > i32::MAX as i64 {
                    return self.err("Y row out of range");
                }
                if j < 1 || j > u32::MAX as i64 {
                    return self.err("Y column out of range");
                }
                Ok(VarId::Y {
                    row: s as i32,
                    col: j as u32,
                })
            }
            _ => self.err("expected variable 'a[i]' or 'Y[s,j]'"),
        }
    }

    /// factor := atom ('^' integer)?
    fn factor(&mut self) -> Result<(VarId, i64), ArithError> {
        let v = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            Ok((v, e))
        } else {
            Ok((v, 1))
        }
    }

    /// term := integer ('*' factor)* | factor ('*' factor)*
    fn term(&mut self) -> Result<(BigInt, LaurentMono), ArithError> {
        let mut coef = BigInt::one();
        let mut mono = LaurentMono::unit();
        let mut saw_any = false;
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'-' || b == b'+' => {
                coef = self.bigint()?;
                saw_any = true;
            }
            _ => {}
        }
        loop {
            if saw_any {
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            let (v, e) = self.factor()?;
            mono = mono.mul(&LaurentMono::var(v).pow(e));
            saw_any = true;
        }
        Ok((coef, mono))
    }

    fn poly(&mut self) -> Result<LaurentPoly, ArithError> {
        let mut out = LaurentPoly::zero();
        let mut sign = BigInt::one();
        if self.peek() == Some(b'+') {
            self.pos += 1;
        } else if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -BigInt::one();
        }
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, &(c * &sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigInt::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigInt::one();
                }
                None => break,
                _ => return self.err("trailing input"),
            }
            if self.peek().is_none() {
                return self.err("dangling operator");
            }
        }
        Ok(out)
    }
}

/// Parse the canonical text form of a polynomial.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, ArithError> {
    let mut p = Parser::new(s);
    let out = p.poly()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parse a single Laurent monomial (a product of variable powers, optionally
/// with an explicit coefficient of 1).
pub fn parse_mono(s: &str) -> Result<LaurentMono, ArithError> {
    let mut p = Parser::new(s);
    let (c, m) = p.term()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    if !c.is_one() {
        return Err(ArithError::Parse {
            pos: 0,
            msg: "not a monomial (coefficient must be 1)".into(),
        });
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// JSON form
// ---------------------------------------------------------------------------

/// JSON representation: a list of `{coef, exps}` objects in descending
/// monomial order. Coefficients are decimal strings so arbitrary precision
/// round-trips bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coef: String,
    pub exps: Vec<(String, i64)>,
}

pub type PolyJson = Vec<TermJson>;

impl LaurentPoly {
    pub fn to_json(&self) -> PolyJson {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coef: c.to_string(),
                exps: m.exps().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect()
    }

    pub fn from_json(j: &PolyJson) -> Result<Self, ArithError> {
        let mut out = Self::zero();
        for t in j {
            let c: BigInt = t.coef.parse().map_err(|_| ArithError::Parse {
                pos: 0,
                msg: format!("bad coefficient {:?}", t.coef),
            })?;
            let mut m = LaurentMono::unit();
            for (vs, e) in &t.exps {
                let mut p = Parser::new(vs);
                let v = p.atom()?;
                p.skip_ws();
                if p.pos != p.bytes.len() {
                    return Err(ArithError::Parse {
                        pos: p.pos,
                        msg: "trailing input in variable".into(),
                    });
                }
                m = m.mul(&LaurentMono::var(v).pow(*e));
            }
            out.add_term(m, &c);
        }
        Ok(out)
    }
}
