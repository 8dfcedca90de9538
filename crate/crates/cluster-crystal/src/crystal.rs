//! Monomial realization of type A_r crystals: statistics wt, eps_i, phi_i
//! on Laurent monomials in the Y variables, Kashiwara operators acting by
//! multiplication with A_{s,i}^{±1}, and Demazure subsets generated by
//! lowering-operator strings along a reduced word.
//!
//! The position set fixing the realization comes from the cyclic sequence
//! with the even indices first, matching the squared-Coxeter word.

use crate::exactalg::{LaurentMono, LaurentPoly, VarId};
use crate::roots::Weight;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrystalError {
    #[error("monomial contains a non-Y variable: {0}")]
    NotYMonomial(String),
    #[error("not a highest-weight monomial: eps_{i}(m) = {eps} != 0", i = .0, eps = .1)]
    NotHighestWeight(usize, i64),
    #[error("column {0} out of range")]
    ColumnOutOfRange(usize),
}

/// A Laurent monomial supported on Y variables, with its crystal statistics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalMonomial {
    mono: LaurentMono,
}

impl CrystalMonomial {
    pub fn new(mono: LaurentMono) -> Result<Self, CrystalError> {
        if let Some(v) = mono.vars().find(|v| matches!(v, VarId::Torus(_))) {
            return Err(CrystalError::NotYMonomial(v.to_string()));
        }
        Ok(CrystalMonomial { mono })
    }

    pub fn highest(r: usize, col: usize) -> Result<Self, CrystalError> {
        if col < 1 || col > r {
            return Err(CrystalError::ColumnOutOfRange(col));
        }
        Ok(CrystalMonomial {
            mono: LaurentMono::var(VarId::y(1, col)),
        })
    }

    pub fn mono(&self) -> &LaurentMono {
        &self.mono
    }

    pub fn into_mono(self) -> LaurentMono {
        self.mono
    }

    /// Exponents of column i, sorted by row.
    fn column(&self, i: usize) -> Vec<(i32, i64)> {
        self.mono
            .exps()
            .filter_map(|(v, e)| match v {
                VarId::Y { row, col } if col as usize == i => Some((row, e)),
                _ => None,
            })
            .collect()
    }

    /// wt = sum_{s,i} zeta_{s,i} Lambda_i.
    pub fn weight(&self, r: usize) -> Weight {
        let mut w = Weight::zero(r);
        for (v, e) in self.mono.exps() {
            if let VarId::Y { col, .. } = v {
                let c = col as usize;
                debug_assert!(c >= 1 && c <= r, "column out of range in weight");
                w.0[c - 1] += e;
            }
        }
        w
    }

    /// phi_i = max over s of the prefix sums of column i (at least 0).
    pub fn phi(&self, i: usize) -> i64 {
        let col = self.column(i);
        let mut best = 0;
        let mut acc = 0;
        for (_, e) in col {
            acc += e;
            best = best.max(acc);
        }
        best
    }

    /// eps_i = phi_i - <wt, h_i>; always nonnegative.
    pub fn eps(&self, r: usize, i: usize) -> i64 {
        self.phi(i) - self.weight(r).pair(i)
    }

    /// The minimal row n with prefix(n) = phi_i (only meaningful when
    /// phi_i > 0, where it is attained at a row carrying a nonzero exponent).
    fn n_f(&self, i: usize) -> i32 {
        let col = self.column(i);
        let phi = self.phi(i);
        let mut acc = 0;
        for (row, e) in &col {
            acc += e;
            if acc == phi {
                return *row;
            }
        }
        unreachable!("n_f called with phi_i = 0")
    }

    /// The maximal row n with prefix(n) = phi_i. The running sum equals
    /// phi_i on a half-open interval of rows; the maximum is one below the
    /// next row with a nonzero exponent (or unbounded, which cannot happen
    /// when eps_i > 0).
    fn n_e(&self, i: usize) -> i32 {
        let col = self.column(i);
        let phi = self.phi(i);
        let mut acc = 0;
        let mut last_hit: Option<i32> = None;
        for t in 0..col.len() {
            acc += col[t].1;
            if acc == phi {
                // sum stays at phi until the next nonzero row
                last_hit = Some(if t + 1 < col.len() {
                    col[t + 1].0 - 1
                } else {
                    // phi equals the total sum; eps_i = 0 and the caller
                    // must not ask for n_e
                    unreachable!("n_e called with eps_i = 0")
                });
            }
        }
        if phi == 0 {
            // prefix is phi before the first positive dip; the maximum row
            // with prefix 0 is just below the first row whose running sum
            // drops away for good. Walk from the top.
            let mut acc = 0;
            let mut best: Option<i32> = None;
            for t in 0..col.len() {
                if acc == 0 {
                    best = Some(col[t].0 - 1);
                }
                acc += col[t].1;
            }
            return best.expect("n_e with empty column");
        }
        last_hit.expect("n_e: phi never attained")
    }
}

/// The exponent set fixing the realization: with the even-first cyclic
/// sequence, p_{j,i} = 1 exactly when j is even and i is odd.
pub fn position(j: usize, i: usize) -> i32 {
    debug_assert!(j != i);
    if j % 2 == 0 && i % 2 == 1 {
        1
    } else {
        0
    }
}

/// A_{s,i} = Y_{s,i} Y_{s+1,i} prod_{j ~ i} Y_{s+p_{j,i},j}^{-1}, with
/// out-of-range columns collapsing to 1.
pub fn a_monomial(r: usize, s: i32, i: usize) -> LaurentMono {
    assert!(i >= 1 && i <= r, "A_{{s,i}} needs i in [1,r]");
    let mut m = LaurentMono::var(VarId::y(s, i)).mul(&LaurentMono::var(VarId::y(s + 1, i)));
    for j in [i as i64 - 1, i as i64 + 1] {
        if j >= 1 && j <= r as i64 {
            let p = position(j as usize, i);
            m = m.mul(&LaurentMono::var(VarId::y(s + p, j as usize)).inv());
        }
    }
    m
}

/// Kashiwara lowering operator: multiply by A_{n_f,i}^{-1} when phi_i > 0.
pub fn kashiwara_f(r: usize, i: usize, m: &CrystalMonomial) -> Option<CrystalMonomial> {
    if m.phi(i) == 0 {
        return None;
    }
    let n = m.n_f(i);
    Some(CrystalMonomial {
        mono: m.mono.mul(&a_monomial(r, n, i).inv()),
    })
}

/// Kashiwara raising operator: multiply by A_{n_e,i} when eps_i > 0.
pub fn kashiwara_e(r: usize, i: usize, m: &CrystalMonomial) -> Option<CrystalMonomial> {
    if m.eps(r, i) == 0 {
        return None;
    }
    let n = m.n_e(i);
    Some(CrystalMonomial {
        mono: m.mono.mul(&a_monomial(r, n, i)),
    })
}

/// One Demazure summand: a highest-weight monomial and a reduced word.
/// The rightmost letter of the word acts first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureSpec {
    pub highest: CrystalMonomial,
    pub word: Vec<usize>,
}

impl DemazureSpec {
    pub fn new(highest: CrystalMonomial, word: Vec<usize>) -> Self {
        DemazureSpec { highest, word }
    }
}

/// Generate the Demazure subset by exhausting lowering strings letter by
/// letter from the right end of the word.
pub fn demazure_set(
    r: usize,
    spec: &DemazureSpec,
) -> Result<BTreeSet<CrystalMonomial>, CrystalError> {
    for i in 1..=r {
        let eps = spec.highest.eps(r, i);
        if eps != 0 {
            return Err(CrystalError::NotHighestWeight(i, eps));
        }
    }
    let mut current: BTreeSet<CrystalMonomial> = BTreeSet::new();
    current.insert(spec.highest.clone());
    for &letter in spec.word.iter().rev() {
        let mut next = current.clone();
        let mut frontier: VecDeque<CrystalMonomial> = current.into_iter().collect();
        while let Some(m) = frontier.pop_front() {
            if let Some(fm) = kashiwara_f(r, letter, &m) {
                if next.insert(fm.clone()) {
                    frontier.push_back(fm);
                }
            }
        }
        current = next;
    }
    Ok(current)
}

/// The total sum over the Demazure subset, every monomial with coefficient 1.
pub fn demazure_sum(r: usize, spec: &DemazureSpec) -> Result<LaurentPoly, CrystalError> {
    let set = demazure_set(r, spec)?;
    let mut out = LaurentPoly::zero();
    for m in set {
        out = out.add(&LaurentPoly::from_mono(m.into_mono()));
    }
    Ok(out)
}

/// DOT rendering of the crystal graph restricted to the Demazure subset:
/// nodes are canonical monomial strings, edges are labelled by the operator
/// index.
pub fn crystal_graph_dot(r: usize, spec: &DemazureSpec) -> Result<String, CrystalError> {
    let set = demazure_set(r, spec)?;
    let nodes: Vec<&CrystalMonomial> = set.iter().collect();
    let index: BTreeMap<&CrystalMonomial, usize> =
        nodes.iter().enumerate().map(|(t, m)| (*m, t)).collect();
    let mut out = String::from("digraph demazure_crystal {\n");
    out.push_str("    rankdir=LR;\n");
    for (t, m) in nodes.iter().enumerate() {
        let _ = writeln!(out, "    n{t} [label=\"{}\"];", m.mono());
    }
    for m in &nodes {
        for i in 1..=r {
            if let Some(fm) = kashiwara_f(r, i, m) {
                if let Some(&target) = index.get(&fm) {
                    let _ = writeln!(out, "    n{} -> n{} [label=\"{}\"];", index[*m], target, i);
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Number of edges the DOT rendering of the subset contains.
pub fn crystal_graph_edges(
    r: usize,
    spec: &DemazureSpec,
) -> Result<Vec<(CrystalMonomial, usize, CrystalMonomial)>, CrystalError> {
    let set = demazure_set(r, spec)?;
    let mut edges = Vec::new();
    for m in &set {
        for i in 1..=r {
            if let Some(fm) = kashiwara_f(r, i, m) {
                if set.contains(&fm) {
                    edges.push((m.clone(), i, fm));
                }
            }
        }
    }
    Ok(edges)
}
