//! Closed-form builders for every cluster variable and the end-to-end
//! verifiers: each variable is produced three independent ways (seed
//! mutation, closed formula, Demazure-crystal sum) and the results are
//! compared exactly.

use crate::cluster::{build_initial_seed, mutate_path, ClusterError, Seed, SeedLabel};
use crate::crystal::{demazure_sum, CrystalError, CrystalMonomial, DemazureSpec};
use crate::exactalg::{LaurentMono, LaurentPoly, VarId};
use crate::roots::{
    cxx_word, demazure_word, AlmostPositiveRoot, DemazureWordCase, RootsError, Weight,
};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("invalid case parameters: {0}")]
    InvalidCaseParams(String),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("verification failed for {case}: {detail}")]
    VerificationFailed { case: String, detail: String },
}

/// Interleaved index families (b, c) with 0 <= b_1 < c_1 < ... < b_p < c_p <= l.
pub fn enumerate_rpl(p: usize, l: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    if p == 0 {
        return out;
    }
    let mut current: Vec<i64> = Vec::with_capacity(2 * p);
    fn rec(out: &mut Vec<(Vec<i64>, Vec<i64>)>, current: &mut Vec<i64>, need: usize, min: i64, l: i64) {
        if need == 0 {
            let b: Vec<i64> = current.iter().step_by(2).copied().collect();
            let c: Vec<i64> = current.iter().skip(1).step_by(2).copied().collect();
            out.push((b, c));
            return;
        }
        for v in min..=l {
            current.push(v);
            rec(out, current, need - 1, v + 1, l);
            current.pop();
        }
    }
    rec(&mut out, &mut current, 2 * p, 0, l);
    out
}

/// All (p, b, c) families for p >= 1 at level l.
pub fn all_rpl(l: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut out = Vec::new();
    let mut p = 1;
    loop {
        let batch = enumerate_rpl(p, l);
        if batch.is_empty() {
            break;
        }
        out.extend(batch);
        p += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rpl_examples() {
        assert_eq!(enumerate_rpl(1, 1), vec![(vec![0], vec![1])]);
        assert!(enumerate_rpl(2, 1).is_empty());
        assert_eq!(
            enumerate_rpl(1, 2),
            vec![
                (vec![0], vec![1]),
                (vec![0], vec![2]),
                (vec![1], vec![2])
            ]
        );
        assert!(enumerate_rpl(2, 2).is_empty());
        assert_eq!(enumerate_rpl(2, 3), vec![(vec![0, 2], vec![1, 3])]);
        // empty when 2p > l+1
        assert!(enumerate_rpl(3, 4).is_empty());
    }
}
