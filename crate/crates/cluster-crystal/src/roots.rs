//! Type A_r root and weight combinatorics: Cartan data, the Weyl group as
//! permutations of [1, r+1], the squared-Coxeter reduced word, almost
//! positive roots, and the reduced words indexing Demazure summands.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("rank {0} too small (need r >= 3)")]
    RankTooSmall(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid case parameters: {0}")]
    InvalidCaseParams(String),
}

/// The type A_r Cartan matrix, stored implicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CartanA {
    pub r: usize,
}

impl CartanA {
    pub fn new(r: usize) -> Self {
        CartanA { r }
    }

    /// Entry a_{i,j} for 1-based i, j in [1, r].
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        assert!(i >= 1 && i <= self.r && j >= 1 && j <= self.r);
        if i == j {
            2
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    }
}

/// An integral weight in the fundamental-weight basis: coords[i-1] is the
/// coefficient of Lambda_i, equivalently the pairing with h_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(r: usize) -> Self {
        Weight(vec![0; r])
    }

    /// Lambda_i; indices outside [1, r] give the zero weight (the boundary
    /// convention used throughout).
    pub fn fundamental(r: usize, i: i64) -> Self {
        let mut w = Weight::zero(r);
        if i >= 1 && i <= r as i64 {
            w.0[(i - 1) as usize] = 1;
        }
        w
    }

    /// The simple root alpha_i expanded in the Lambda basis: its j-th coord
    /// is a_{j,i}. Indices outside [1, r] give zero (alpha_s = 0 for s <= 0).
    pub fn simple_root(r: usize, i: i64) -> Self {
        let mut w = Weight::zero(r);
        if i >= 1 && i <= r as i64 {
            let cartan = CartanA::new(r);
            let i = i as usize;
            for j in 1..=r {
                w.0[j - 1] = cartan.entry(j, i);
            }
        }
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Pairing <self, h_i> for 1-based i.
    pub fn pair(&self, i: usize) -> i64 {
        self.0[i - 1]
    }
}

/// A Weyl group element of type A_r as a permutation of [1, r+1],
/// stored in one-line notation (`perm[i-1] = w(i)`, all 1-based).
///
/// Products of simple reflections apply the rightmost factor first, so
/// `s_3 s_1 s_2` sends 1 to 2 and 2 to 4 when r = 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (1..=n).collect(),
        }
    }

    pub fn simple_reflection(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "reflection index out of range");
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.swap(i - 1, i);
        WeylElement { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.perm[x - 1]
    }

    /// Function composition: (self * other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        WeylElement {
            perm: (1..=self.n()).map(|x| self.apply(other.apply(x))).collect(),
        }
    }

    /// Evaluate a word of simple reflections, rightmost letter first:
    /// the word `[i_1, ..., i_m]` read left to right denotes the product
    /// s_{i_1} ... s_{i_m}.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut w = Self::identity(n);
        for &i in word.iter().rev() {
            w = Self::simple_reflection(n, i).compose(&w);
        }
        w
    }

    /// Image of the column set [1, i].
    pub fn image_of_prefix(&self, i: usize) -> Vec<usize> {
        let mut cols: Vec<usize> = (1..=i).map(|x| self.apply(x)).collect();
        cols.sort_unstable();
        cols
    }

    /// Coxeter length = inversion count of the permutation.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.perm.len() {
            for j in i + 1..self.perm.len() {
                if self.perm[i] > self.perm[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn one_line(&self) -> &[usize] {
        &self.perm
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.perm
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A reduced word, indexed from the right: `j(k)` is the k-th letter from
/// the right (1-based), matching the index convention of the seed labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    /// letters_from_right[k-1] = j_k
    letters_from_right: Vec<usize>,
}

impl ReducedWord {
    pub fn from_right(letters_from_right: Vec<usize>) -> Self {
        ReducedWord { letters_from_right }
    }

    pub fn len(&self) -> usize {
        self.letters_from_right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters_from_right.is_empty()
    }

    /// j_k, 1-based from the right.
    pub fn j(&self, k: usize) -> usize {
        self.letters_from_right[k - 1]
    }

    /// The word as printed left to right: (j_n, ..., j_1).
    pub fn printed(&self) -> Vec<usize> {
        self.letters_from_right.iter().rev().copied().collect()
    }

    /// The suffix product v_{>k} = s_{j_1} s_{j_2} ... s_{j_{n-k}} as a
    /// permutation of [1, r+1].
    pub fn suffix(&self, r: usize, k: usize) -> Result<WeylElement, RootsError> {
        let n = self.len();
        if k > n {
            return Err(RootsError::IndexOutOfRange(k));
        }
        let mut w = WeylElement::identity(r + 1);
        // s_{j_1} is leftmost in the product, so it is applied last.
        for m in (1..=n - k).rev() {
            w = WeylElement::simple_reflection(r + 1, self.j(m)).compose(&w);
        }
        Ok(w)
    }
}

/// The reduced word of c^2 for the fixed Coxeter element: evens descending,
/// then odds descending, repeated twice (reading from the right).
pub fn cxx_word(r: usize) -> Result<ReducedWord, RootsError> {
    if r < 3 {
        return Err(RootsError::RankTooSmall(r));
    }
    let mut half: Vec<usize> = Vec::with_capacity(r);
    if r % 2 == 0 {
        // j_1..j_{r/2} = r-1, r-3, ..., 1; then r, r-2, ..., 2
        let mut j = r - 1;
        loop {
            half.push(j);
            if j < 2 {
                break;
            }
            j -= 2;
        }
        let mut j = r;
        while j >= 2 {
            half.push(j);
            j -= 2;
        }
    } else {
        // j_1..j_{(r+1)/2} = r, r-2, ..., 1; then r-1, r-3, ..., 2
        let mut j = r;
        loop {
            half.push(j);
            if j < 2 {
                break;
            }
            j -= 2;
        }
        let mut j = r - 1;
        while j >= 2 {
            half.push(j);
            j -= 2;
        }
    }
    let mut letters = half.clone();
    letters.extend(half);
    Ok(ReducedWord::from_right(letters))
}

/// An almost positive root of type A_r: a negative simple root or the
/// interval root alpha_a + ... + alpha_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlmostPositiveRoot {
    NegSimple(usize),
    Interval(usize, usize),
}

impl fmt::Display for AlmostPositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlmostPositiveRoot::NegSimple(i) => write!(f, "-alpha[{i}]"),
            AlmostPositiveRoot::Interval(a, b) => {
                if a == b {
                    write!(f, "alpha[{a}]")
                } else {
                    write!(f, "alpha[{a}..{b}]")
                }
            }
        }
    }
}

/// All almost positive roots; r(r+3)/2 of them.
pub fn almost_positive_roots(r: usize) -> Vec<AlmostPositiveRoot> {
    let mut out = Vec::with_capacity(r * (r + 3) / 2);
    for i in 1..=r {
        out.push(AlmostPositiveRoot::NegSimple(i));
    }
    for a in 1..=r {
        for b in a..=r {
            out.push(AlmostPositiveRoot::Interval(a, b));
        }
    }
    out
}

/// Which reduced word of the main theorem to build. The `bc` field, when
/// present, carries the interleaved index family whose intervals remove
/// letters from the product, together with the Kronecker-delta letter drops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DemazureWordCase {
    /// prod_{q in [0,l-1]} s_{j-2q-2}; bc removes q-values in its intervals.
    W1 { j: i64, l: i64, bc: Vec<(i64, i64)> },
    /// s_{j-2l-3} s_{j-2l-2}^{1-delta(c_p,l)} prod_{q in [0,l-1]\bc}.
    W2 { j: i64, l: i64, bc: Vec<(i64, i64)> },
    /// s_{j+2} s_{j+1}^{1-delta(b_1,0)} prod_{q in [1,l+1]\bc} s_{j-2q+1}.
    W3 { j: i64, l: i64, bc: Vec<(i64, i64)> },
    /// s_{j+2} s_{j+1}^{..} s_{j-2l-4} s_{j-2l-3}^{1-delta(c_p,l+2)} prod.
    W4 { j: i64, l: i64, bc: Vec<(i64, i64)> },
    /// prod_{q in [1,l+1]\bc} s_{2q}.
    W5 { l: i64, bc: Vec<(i64, i64)> },
    /// s_{2l+5} s_{2l+4}^{1-delta(c_p,l+2)} prod_{q in [1,l+1]\bc} s_{2q}.
    W6 { l: i64, bc: Vec<(i64, i64)> },
    /// prod_{q in [1,(r-1)/2]\bc} s_{2q} (odd rank tail case).
    OddR { bc: Vec<(i64, i64)> },
}

fn in_intervals(q: i64, bc: &[(i64, i64)]) -> bool {
    bc.iter().any(|&(b, c)| b <= q && q <= c)
}

fn push_letter(out: &mut Vec<usize>, r: usize, letter: i64) {
    // letters outside [1, r] denote the identity reflection and are dropped
    if letter >= 1 && letter <= r as i64 {
        out.push(letter as usize);
    }
}

/// Build the reduced word (left-to-right) for one Demazure summand of the
/// main theorem. The commuting tail products are emitted with ascending
/// letters; the rightmost letter acts first when generating the crystal.
pub fn demazure_word(r: usize, case: &DemazureWordCase) -> Result<Vec<usize>, RootsError> {
    let mut out: Vec<usize> = Vec::new();
    match case {
        DemazureWordCase::W1 { j, l, bc } => {
            for q in (0..*l).rev() {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, j - 2 * q - 2);
                }
            }
        }
        DemazureWordCase::W2 { j, l, bc } => {
            push_letter(&mut out, r, j - 2 * l - 3);
            let delta = bc.last().is_some_and(|&(_, c)| c == *l);
            if !delta {
                push_letter(&mut out, r, j - 2 * l - 2);
            }
            for q in (0..*l).rev() {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, j - 2 * q - 2);
                }
            }
        }
        DemazureWordCase::W3 { j, l, bc } => {
            push_letter(&mut out, r, j + 2);
            let delta = bc.first().is_some_and(|&(b, _)| b == 0);
            if !delta {
                push_letter(&mut out, r, j + 1);
            }
            for q in 1..=(l + 1) {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, j - 2 * q + 1);
                }
            }
        }
        DemazureWordCase::W4 { j, l, bc } => {
            push_letter(&mut out, r, j + 2);
            if !bc.first().is_some_and(|&(b, _)| b == 0) {
                push_letter(&mut out, r, j + 1);
            }
            push_letter(&mut out, r, j - 2 * l - 4);
            if !bc.last().is_some_and(|&(_, c)| c == *l + 2) {
                push_letter(&mut out, r, j - 2 * l - 3);
            }
            for q in 1..=(l + 1) {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, j - 2 * q + 1);
                }
            }
        }
        DemazureWordCase::W5 { l, bc } => {
            for q in 1..=(l + 1) {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, 2 * q);
                }
            }
        }
        DemazureWordCase::W6 { l, bc } => {
            push_letter(&mut out, r, 2 * l + 5);
            if !bc.last().is_some_and(|&(_, c)| c == *l + 2) {
                push_letter(&mut out, r, 2 * l + 4);
            }
            for q in 1..=(l + 1) {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, 2 * q);
                }
            }
        }
        DemazureWordCase::OddR { bc } => {
            if r % 2 == 0 {
                return Err(RootsError::InvalidCaseParams(
                    "odd-rank word requested for even rank".into(),
                ));
            }
            let top = ((r - 1) / 2) as i64;
            for q in 1..=top {
                if !in_intervals(q, bc) {
                    push_letter(&mut out, r, 2 * q);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cxx_word_r3() {
        let w = cxx_word(3).unwrap();
        assert_eq!(w.printed(), vec![2, 1, 3, 2, 1, 3]);
        assert_eq!(w.j(1), 3);
    }

    #[test]
    fn cxx_word_r4() {
        let w = cxx_word(4).unwrap();
        assert_eq!(w.printed(), vec![2, 4, 1, 3, 2, 4, 1, 3]);
    }

    #[test]
    fn cxx_word_r5() {
        let w = cxx_word(5).unwrap();
        assert_eq!(w.printed(), vec![2, 4, 1, 3, 5, 2, 4, 1, 3, 5]);
    }

    #[test]
    fn cxx_word_rank_too_small() {
        assert!(matches!(cxx_word(2), Err(RootsError::RankTooSmall(2))));
    }

    #[test]
    fn cxx_word_letters_twice() {
        for r in 3..=9 {
            let w = cxx_word(r).unwrap();
            assert_eq!(w.len(), 2 * r);
            for j in 1..=r {
                assert_eq!(
                    w.printed().iter().filter(|&&x| x == j).count(),
                    2,
                    "letter {j} must appear twice for r={r}"
                );
            }
        }
    }

    #[test]
    fn suffix_empty_is_identity() {
        let w = cxx_word(3).unwrap();
        assert_eq!(w.suffix(3, 6).unwrap(), WeylElement::identity(4));
    }

    #[test]
    fn suffix_intro_column_sets() {
        // r = 3, word (2,1,3) = c: the product s_3 s_1 s_2 sends 1 -> 2,
        // 2 -> 4; the intro's minors D_{1,2}, D_{12,24}, D_{123,124}.
        let c = ReducedWord::from_right(vec![3, 1, 2]);
        let w = c.suffix(3, 0).unwrap();
        assert_eq!(w.apply(1), 2);
        assert_eq!(w.apply(2), 4);
        assert_eq!(w.image_of_prefix(1), vec![2]);
        assert_eq!(w.image_of_prefix(2), vec![2, 4]);
        assert_eq!(w.image_of_prefix(3), vec![1, 2, 4]);
    }

    #[test]
    fn suffix_step_relation() {
        // suffix(v,k) * s_{j_{n-k}} = suffix(v,k-1)
        let v = cxx_word(4).unwrap();
        let n = v.len();
        for k in 1..=n {
            let lhs = v
                .suffix(4, k)
                .unwrap()
                .compose(&WeylElement::simple_reflection(5, v.j(n - k + 1)));
            let rhs = v.suffix(4, k - 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn almost_positive_counts() {
        assert_eq!(almost_positive_roots(3).len(), 9);
        assert_eq!(almost_positive_roots(1).len(), 2);
        assert_eq!(almost_positive_roots(6).len(), 27);
    }

    #[test]
    fn alpha_in_lambda_basis() {
        // alpha_2 for r=3 is -Lambda_1 + 2 Lambda_2 - Lambda_3
        assert_eq!(Weight::simple_root(3, 2), Weight(vec![-1, 2, -1]));
        assert_eq!(Weight::simple_root(3, 0), Weight::zero(3));
        assert_eq!(Weight::simple_root(3, 9), Weight::zero(3));
    }

    #[test]
    fn w1_empty_range() {
        let w = demazure_word(10, &DemazureWordCase::W1 { j: 10, l: 0, bc: vec![] }).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn w2_example_r10() {
        // r=10, k=6 (j=10), l=2: w_2 = s_3 s_4 s_6 s_8
        let w = demazure_word(10, &DemazureWordCase::W2 { j: 10, l: 2, bc: vec![] }).unwrap();
        assert_eq!(w, vec![3, 4, 6, 8]);
        // with c_p = l the letter s_4 is dropped
        let w = demazure_word(
            10,
            &DemazureWordCase::W2 { j: 10, l: 2, bc: vec![(0, 2)] },
        )
        .unwrap();
        assert_eq!(w, vec![3]);
        // (b,c) = ((0),(1)): drop q in [0,1]
        let w = demazure_word(
            10,
            &DemazureWordCase::W2 { j: 10, l: 2, bc: vec![(0, 1)] },
        )
        .unwrap();
        assert_eq!(w, vec![3, 4]);
    }

    #[test]
    fn generated_words_are_reduced() {
        for r in 3..=8 {
            let rr = r as i64;
            for j in 1..=rr {
                for l in 0..=2 {
                    for case in [
                        DemazureWordCase::W1 { j, l, bc: vec![] },
                        DemazureWordCase::W2 { j, l, bc: vec![] },
                        DemazureWordCase::W3 { j, l, bc: vec![] },
                        DemazureWordCase::W4 { j, l, bc: vec![] },
                        DemazureWordCase::W5 { l, bc: vec![] },
                        DemazureWordCase::W6 { l, bc: vec![] },
                    ] {
                        let w = demazure_word(r, &case).unwrap();
                        let perm = WeylElement::from_word(r + 1, &w);
                        assert_eq!(
                            perm.length(),
                            w.len(),
                            "word {w:?} not reduced (r={r}, case {case:?})"
                        );
                    }
                }
            }
        }
    }
}
