//! Symbolic SL(r+1) matrices over Laurent polynomials: one-parameter
//! subgroups, the factorization product for the squared Coxeter word, the
//! monomial change of variables between the two parametrizations, and
//! generalized minors.

use crate::exactalg::{LaurentMono, LaurentPoly, VarId};
use crate::roots::{cxx_word, ReducedWord, RootsError, WeylElement};
use std::collections::{BTreeMap, HashMap};

/// A dense square matrix over [`LaurentPoly`]. Indices are 1-based to match
/// the row/column labels of minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl SymbolicMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = SymbolicMatrix {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 1..=n {
            *m.entry_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = SymbolicMatrix {
            n: self.n,
            entries: vec![LaurentPoly::zero(); self.n * self.n],
        };
        for i in 1..=self.n {
            for k in 1..=self.n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=self.n {
                    let b = other.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    *out.entry_mut(i, j) = out.entry(i, j).add(&prod);
                }
            }
        }
        out
    }

    /// Determinant of the submatrix with the given 1-based rows and columns,
    /// by Laplace expansion along the first remaining row with memoization
    /// on the column subset.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly {
        assert_eq!(rows.len(), cols.len());
        let mut memo: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
        self.minor_rec(rows, cols, &mut memo)
    }

    fn minor_rec(
        &self,
        rows: &[usize],
        cols: &[usize],
        memo: &mut HashMap<Vec<usize>, LaurentPoly>,
    ) -> LaurentPoly {
        if rows.is_empty() {
            return LaurentPoly::one();
        }
        // rows form a fixed chain: the remaining rows are determined by the
        // recursion depth, so the column subset alone keys the memo.
        if let Some(hit) = memo.get(cols) {
            return hit.clone();
        }
        let row = rows[0];
        let mut acc = LaurentPoly::zero();
        for (t, &col) in cols.iter().enumerate() {
            let e = self.entry(row, col);
            if e.is_zero() {
                continue;
            }
            let sub: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| c != col)
                .collect();
            let inner = self.minor_rec(&rows[1..], &sub, memo);
            let signed = if t % 2 == 0 { e.mul(&inner) } else { e.mul(&inner).neg() };
            acc = acc.add(&signed);
        }
        memo.insert(cols.to_vec(), acc.clone());
        acc
    }

    pub fn determinant(&self) -> LaurentPoly {
        let all: Vec<usize> = (1..=self.n).collect();
        self.minor(&all, &all)
    }
}

/// x_i(t) = exp(t e_i): identity plus t in entry (i, i+1).
pub fn elem_upper(n: usize, i: usize, t: &LaurentPoly) -> SymbolicMatrix {
    assert!(i >= 1 && i < n);
    let mut m = SymbolicMatrix::identity(n);
    *m.entry_mut(i, i + 1) = t.clone();
    m
}

/// y_i(t) = exp(t f_i): identity plus t in entry (i+1, i).
pub fn elem_lower(n: usize, i: usize, t: &LaurentPoly) -> SymbolicMatrix {
    assert!(i >= 1 && i < n);
    let mut m = SymbolicMatrix::identity(n);
    *m.entry_mut(i + 1, i) = t.clone();
    m
}

/// The coweight torus element t^{h_i}: diagonal with t at slot i, t^{-1} at
/// slot i+1.
pub fn coweight_diag(n: usize, i: usize, t: &LaurentMono) -> SymbolicMatrix {
    assert!(i >= 1 && i < n);
    let mut m = SymbolicMatrix::identity(n);
    *m.entry_mut(i, i) = LaurentPoly::from_mono(t.clone());
    *m.entry_mut(i + 1, i + 1) = LaurentPoly::from_mono(t.inv());
    m
}

/// The representative of the simple reflection: x_i(-1) y_i(1) x_i(-1).
pub fn simple_reflection_rep(n: usize, i: usize) -> SymbolicMatrix {
    let minus_one = LaurentPoly::from_int(-1);
    let one = LaurentPoly::one();
    elem_upper(n, i, &minus_one)
        .mul(&elem_lower(n, i, &one))
        .mul(&elem_upper(n, i, &minus_one))
}

/// diag(a_1, ..., a_{r+1}) with free torus variables.
pub fn torus_diag(r: usize) -> SymbolicMatrix {
    let mut m = SymbolicMatrix::identity(r + 1);
    for i in 1..=r + 1 {
        *m.entry_mut(i, i) = LaurentPoly::from_mono(LaurentMono::torus_var(i));
    }
    m
}

/// The monomial change of variables between the two factorization
/// parametrizations: `forward` turns the plain product coordinates into the
/// twisted ones, `backward` inverts it. Both maps send every variable
/// (torus and crystal) to a Laurent monomial.
#[derive(Debug, Clone)]
pub struct TwistMap {
    pub forward: BTreeMap<VarId, LaurentMono>,
    pub backward: BTreeMap<VarId, LaurentMono>,
}

fn phi_1(r: usize, l: usize) -> LaurentMono {
    let li = l as i64;
    let mut m = LaurentMono::unit();
    if l % 2 == 0 {
        for (row, col) in [(1, li - 1), (2, li - 1), (1, li + 1), (2, li + 1)] {
            m = m.mul(&LaurentMono::y_var(r, row, col));
        }
    } else {
        for (row, col) in [(2, li - 1), (2, li + 1)] {
            m = m.mul(&LaurentMono::y_var(r, row, col));
        }
    }
    m.mul(&LaurentMono::y_var(r, 1, li).inv())
        .mul(&LaurentMono::y_var(r, 2, li).pow(-2))
}

fn phi_2(r: usize, l: usize) -> LaurentMono {
    let li = l as i64;
    if l % 2 == 0 {
        LaurentMono::y_var(r, 2, li - 1)
            .mul(&LaurentMono::y_var(r, 2, li + 1))
            .mul(&LaurentMono::y_var(r, 2, li).inv())
    } else {
        LaurentMono::y_var(r, 2, li).inv()
    }
}

/// The printed closed form of the inverse map at interior columns
/// (l-2 >= 1 and l+2 <= r). At boundary columns the naive collapse of the
/// printed products drops compensating factors, so the real backward map is
/// computed by inverting the exponent lattice instead; this form survives
/// as a cross-check.
#[cfg(test)]
fn psi_1_interior(r: usize, l: usize) -> LaurentMono {
    let li = l as i64;
    let pairs: &[(i32, i64)] = if l % 2 == 0 {
        &[
            (1, li - 1),
            (1, li),
            (1, li + 1),
            (2, li - 3),
            (2, li - 2),
            (2, li + 2),
            (2, li + 3),
        ]
    } else {
        &[(1, li), (2, li - 2), (2, li - 1), (2, li + 1), (2, li + 2)]
    };
    let mut m = LaurentMono::unit();
    for &(row, col) in pairs {
        m = m.mul(&LaurentMono::y_var(r, row, col));
    }
    m.inv()
}

#[cfg(test)]
fn psi_2_interior(r: usize, l: usize) -> LaurentMono {
    let li = l as i64;
    if l % 2 == 0 {
        LaurentMono::y_var(r, 2, li - 1)
            .mul(&LaurentMono::y_var(r, 2, li))
            .mul(&LaurentMono::y_var(r, 2, li + 1))
            .inv()
    } else {
        LaurentMono::y_var(r, 2, li).inv()
    }
}

/// The image of the torus coordinate a_m under left multiplication by
/// prod_i alpha_i^vee(Y_{1,i}) alpha_i^vee(Y_{2,i}): each coweight factor
/// contributes its argument to slot i and its inverse to slot i+1.
fn torus_image(r: usize, m: usize) -> LaurentMono {
    let mut factor = LaurentMono::unit();
    if m <= r {
        factor = factor
            .mul(&LaurentMono::y_var(r, 1, m as i64))
            .mul(&LaurentMono::y_var(r, 2, m as i64));
    }
    if m >= 2 {
        factor = factor
            .mul(&LaurentMono::y_var(r, 1, m as i64 - 1).inv())
            .mul(&LaurentMono::y_var(r, 2, m as i64 - 1).inv());
    }
    LaurentMono::torus_var(m).mul(&factor)
}

/// Invert a monomial substitution exactly over the exponent lattice: the
/// map must be a unimodular change of variables on the listed variables.
fn invert_monomial_map(
    vars: &[VarId],
    forward: &BTreeMap<VarId, LaurentMono>,
) -> Option<BTreeMap<VarId, LaurentMono>> {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    let n = vars.len();
    let index: BTreeMap<VarId, usize> = vars.iter().enumerate().map(|(t, v)| (*v, t)).collect();
    // column j of M = exponent vector of forward(vars[j])
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); 2 * n]; n];
    for (j, v) in vars.iter().enumerate() {
        for (w, e) in forward.get(v)?.exps() {
            m[*index.get(&w)?][j] = BigRational::from_integer(e.into());
        }
    }
    // augment with the identity and invert by Gauss-Jordan
    for (i, row) in m.iter_mut().enumerate() {
        row[n + i] = BigRational::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= p.clone();
        }
        for row in 0..n {
            if row != col && !m[row][col].is_zero() {
                let f = m[row][col].clone();
                for x in 0..2 * n {
                    let sub = &m[col][x] * &f;
                    m[row][x] -= sub;
                }
            }
        }
    }
    // read the inverse back as monomials; every entry must be an integer
    let mut backward = BTreeMap::new();
    for (j, v) in vars.iter().enumerate() {
        let mut pairs = Vec::new();
        for (i, w) in vars.iter().enumerate() {
            let x = &m[i][n + j];
            if !x.is_zero() {
                if !x.is_integer() {
                    return None;
                }
                let e: i64 = i64::try_from(x.to_integer()).ok()?;
                pairs.push((*w, e));
            }
        }
        backward.insert(*v, LaurentMono::from_pairs(pairs));
    }
    Some(backward)
}

/// Build the forward/backward monomial maps for rank r. The forward images
/// follow the printed even/odd case split; the backward map is the exact
/// inverse of the forward map on the exponent lattice (the printed inverse
/// formulas only hold at interior columns).
pub fn twist_map(r: usize) -> Result<TwistMap, RootsError> {
    cxx_word(r)?; // validates the rank
    let mut forward = BTreeMap::new();
    let mut vars: Vec<VarId> = Vec::new();
    for l in 1..=r {
        forward.insert(VarId::y(1, l), phi_1(r, l));
        forward.insert(VarId::y(2, l), phi_2(r, l));
        vars.push(VarId::y(1, l));
        vars.push(VarId::y(2, l));
    }
    for m in 1..=r + 1 {
        forward.insert(VarId::torus(m), torus_image(r, m));
        vars.push(VarId::torus(m));
    }
    let backward = invert_monomial_map(&vars, &forward)
        .expect("the factorization change of variables is unimodular");
    Ok(TwistMap { forward, backward })
}

/// The twisted factorization product for the squared Coxeter word:
/// a * prod_{k=r..1} x_{j_k}(Y_{1,j_k}) alpha_{j_k}^vee(Y_{1,j_k})
///   * prod_{k=r..1} x_{j_k}(Y_{2,j_k}) alpha_{j_k}^vee(Y_{2,j_k}).
/// Every entry is a Laurent polynomial in (a; Y).
pub fn xbar(r: usize) -> Result<SymbolicMatrix, RootsError> {
    let word = cxx_word(r)?;
    let n = r + 1;
    let mut m = torus_diag(r);
    for row in [1i32, 2] {
        for k in (1..=r).rev() {
            let j = word.j(k);
            let t = LaurentMono::var(VarId::y(row, j));
            m = m
                .mul(&elem_upper(n, j, &LaurentPoly::from_mono(t.clone())))
                .mul(&coweight_diag(n, j, &t));
        }
    }
    Ok(m)
}

/// The untwisted product x^G for the same word, with the slot variables
/// named by the same Y variables: a * prod x_{j_k}(Y_{row,j_k}).
pub fn xg_product(r: usize) -> Result<SymbolicMatrix, RootsError> {
    let word = cxx_word(r)?;
    let n = r + 1;
    let mut m = torus_diag(r);
    for row in [1i32, 2] {
        for k in (1..=r).rev() {
            let j = word.j(k);
            let t = LaurentPoly::from_mono(LaurentMono::var(VarId::y(row, j)));
            m = m.mul(&elem_upper(n, j, &t));
        }
    }
    Ok(m)
}

/// The generalized minor for the i-th fundamental weight twisted by w: in
/// type A this is the ordinary minor on rows [1, i] and columns w([1, i]).
pub fn generalized_minor(m: &SymbolicMatrix, i: usize, w: &WeylElement) -> LaurentPoly {
    let rows: Vec<usize> = (1..=i).collect();
    let cols = w.image_of_prefix(i);
    m.minor(&rows, &cols)
}

/// Convenience: the word for c^2 at rank r (re-exported for callers that
/// need the letter positions j_k).
pub fn squared_coxeter_word(r: usize) -> Result<ReducedWord, RootsError> {
    cxx_word(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn one_parameter_subgroup() {
        let t = parse_poly("Y[1,1]").unwrap();
        let s = parse_poly("Y[2,1]").unwrap();
        let lhs = elem_upper(4, 1, &t).mul(&elem_upper(4, 1, &s));
        let rhs = elem_upper(4, 1, &t.add(&s));
        assert_eq!(lhs, rhs);
        assert_eq!(elem_upper(4, 1, &LaurentPoly::zero()), SymbolicMatrix::identity(4));
    }

    #[test]
    fn coweight_shape() {
        let t = LaurentMono::var(VarId::y(1, 1));
        let m = coweight_diag(4, 1, &t);
        assert_eq!(m.entry(1, 1), &LaurentPoly::from_mono(t.clone()));
        assert_eq!(m.entry(2, 2), &LaurentPoly::from_mono(t.inv()));
        assert_eq!(m.entry(3, 3), &LaurentPoly::one());
        assert_eq!(m.entry(4, 4), &LaurentPoly::one());
    }

    #[test]
    fn commutation_relations() {
        // alpha_j^vee(s) x_i(t) = x_i(s^2 t) alpha_j^vee(s)   if i = j
        //                       = x_i(s^{-1} t) alpha_j^vee(s) if |i-j| = 1
        //                       = x_i(t) alpha_j^vee(s)        otherwise
        for r in 3..=8 {
            let n = r + 1;
            let s = LaurentMono::var(VarId::y(2, 2));
            let t = parse_poly("Y[1,1]").unwrap();
            for i in 1..=r {
                for j in 1..=r {
                    let lhs = coweight_diag(n, j, &s).mul(&elem_upper(n, i, &t));
                    let scale = if i == j {
                        LaurentMono::from_pairs(s.exps().map(|(v, e)| (v, 2 * e)))
                    } else if i.abs_diff(j) == 1 {
                        s.inv()
                    } else {
                        LaurentMono::unit()
                    };
                    let rhs = elem_upper(n, i, &t.mul_mono(&scale)).mul(&coweight_diag(n, j, &s));
                    assert_eq!(lhs, rhs, "commutation failed at r={r}, i={i}, j={j}");
                }
            }
        }
    }

    #[test]
    fn reflection_rep_2x2() {
        let m = simple_reflection_rep(2, 1);
        assert_eq!(m.entry(1, 1), &LaurentPoly::zero());
        assert_eq!(m.entry(1, 2), &LaurentPoly::from_int(-1));
        assert_eq!(m.entry(2, 1), &LaurentPoly::one());
        assert_eq!(m.entry(2, 2), &LaurentPoly::zero());
    }

    #[test]
    fn reflection_rep_square_is_order_four_lift() {
        let m = simple_reflection_rep(4, 2);
        let sq = m.mul(&m);
        let mut expected = SymbolicMatrix::identity(4);
        *expected.entry_mut(2, 2) = LaurentPoly::from_int(-1);
        *expected.entry_mut(3, 3) = LaurentPoly::from_int(-1);
        assert_eq!(sq, expected);
    }

    #[test]
    fn xbar_intro_minors_r3() {
        let m = xbar(3).unwrap();
        let word = cxx_word(3).unwrap();
        // D_{1,2}: i = 1, w = suffix after dropping all but one letter group
        let w = word.suffix(3, 2 * 3 - 2).unwrap(); // c^2_{>2r-k}, k = 2 (j_2 = 1)
        let d12 = generalized_minor(&m, 1, &w);
        assert_eq!(
            d12,
            parse_poly("a[1]*Y[1,1] + a[1]*Y[2,2]*Y[2,1]^-1").unwrap()
        );

        let w = word.suffix(3, 2 * 3 - 3).unwrap(); // k = 3 (j_3 = 2)
        let d1224 = generalized_minor(&m, 2, &w);
        assert_eq!(
            d1224,
            parse_poly(
                "a[1]*a[2]*Y[1,2] + a[1]*a[2]*Y[1,1]*Y[1,3]*Y[2,2]^-1 \
                 + a[1]*a[2]*Y[1,3]*Y[2,1]^-1 + a[1]*a[2]*Y[2,2]*Y[2,1]^-1*Y[2,3]^-1 \
                 + a[1]*a[2]*Y[1,1]*Y[2,3]^-1"
            )
            .unwrap()
        );

        let w = word.suffix(3, 2 * 3 - 1).unwrap(); // k = 1 (j_1 = 3)
        let d123124 = generalized_minor(&m, 3, &w);
        assert_eq!(
            d123124,
            parse_poly("a[1]*a[2]*a[3]*Y[1,3] + a[1]*a[2]*a[3]*Y[2,2]*Y[2,3]^-1").unwrap()
        );
    }

    #[test]
    fn xbar_determinant_is_torus() {
        for r in 3..=5 {
            let m = xbar(r).unwrap();
            let det = m.determinant();
            let mut expected = LaurentMono::unit();
            for i in 1..=r + 1 {
                expected = expected.mul(&LaurentMono::torus_var(i));
            }
            assert_eq!(det, LaurentPoly::from_mono(expected));
        }
    }

    #[test]
    fn twist_composition_is_identity() {
        for r in 3..=8 {
            let tw = twist_map(r).unwrap();
            // psi after phi fixes every Y variable ...
            for l in 1..=r {
                for row in [1i32, 2] {
                    let v = VarId::y(row, l);
                    let psi_img = LaurentPoly::from_mono(tw.backward[&v].clone());
                    let composed = psi_img.substitute(&tw.forward).unwrap();
                    assert_eq!(
                        composed,
                        LaurentPoly::from_mono(LaurentMono::var(v)),
                        "psi.phi != id at r={r}, Y[{row},{l}]"
                    );
                }
            }
            // ... and every torus coordinate.
            for m in 1..=r + 1 {
                let v = VarId::torus(m);
                let psi_img = LaurentPoly::from_mono(tw.backward[&v].clone());
                let composed = psi_img.substitute(&tw.forward).unwrap();
                assert_eq!(
                    composed,
                    LaurentPoly::from_mono(LaurentMono::var(v)),
                    "psi.phi != id at r={r}, a[{m}]"
                );
            }
        }
    }

    #[test]
    fn factorization_identity_small() {
        for r in 3..=5 {
            let tw = twist_map(r).unwrap();
            let xg = xg_product(r).unwrap();
            let xb = xbar(r).unwrap();
            for i in 1..=r + 1 {
                for j in 1..=r + 1 {
                    let img = xg.entry(i, j).substitute(&tw.forward).unwrap();
                    assert_eq!(&img, xb.entry(i, j), "entry ({i},{j}) differs at r={r}");
                }
            }
        }
    }

    #[test]
    fn phi_images_match_parity_split() {
        let tw = twist_map(4).unwrap();
        // odd l: Phi_{2,l} = Y_{2,l}^{-1}
        assert_eq!(
            tw.forward[&VarId::y(2, 3)],
            LaurentMono::var(VarId::y(2, 3)).inv()
        );
        // even l: Phi_{2,l} = Y_{2,l-1} Y_{2,l+1} / Y_{2,l}
        assert_eq!(
            tw.forward[&VarId::y(2, 2)],
            LaurentMono::from_pairs([
                (VarId::y(2, 1), 1),
                (VarId::y(2, 3), 1),
                (VarId::y(2, 2), -1),
            ])
        );
    }

    #[test]
    fn backward_matches_printed_inverse_at_interior_columns() {
        for r in 5..=8 {
            let tw = twist_map(r).unwrap();
            for l in 3..=r - 2 {
                assert_eq!(tw.backward[&VarId::y(1, l)], psi_1_interior(r, l), "r={r} l={l}");
                assert_eq!(tw.backward[&VarId::y(2, l)], psi_2_interior(r, l), "r={r} l={l}");
            }
        }
    }

    #[test]
    fn minor_torus_covariance() {
        // The product a * M scales the minor by a^{Lambda_i} = a_1 ... a_i.
        let r = 4;
        let m = xbar(r).unwrap();
        let am = torus_diag(r).mul(&m);
        let word = cxx_word(r).unwrap();
        for i in 1..=r {
            let w = word.suffix(r, r - 1).unwrap();
            let lhs = generalized_minor(&am, i, &w);
            let mut scale = LaurentMono::unit();
            for t in 1..=i {
                scale = scale.mul(&LaurentMono::torus_var(t));
            }
            let rhs = generalized_minor(&m, i, &w).mul_mono(&scale);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn principal_minor_right_invariance() {
        let r = 4;
        let m = xbar(r).unwrap();
        let e = WeylElement::identity(r + 1);
        let t = parse_poly("Y[1,1]^2 + 3").unwrap();
        for j in 1..=r {
            let mx = m.mul(&elem_upper(r + 1, j, &t));
            for i in 1..=r {
                assert_eq!(
                    generalized_minor(&mx, i, &e),
                    generalized_minor(&m, i, &e),
                    "right invariance failed i={i}, j={j}"
                );
            }
        }
    }
}
