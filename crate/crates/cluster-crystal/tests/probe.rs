//! Temporary probe used while pinning the closed-form boundary conventions.

use cluster_crystal::cluster::{build_initial_seed, mutate_path};
use cluster_crystal::crystal::CrystalMonomial;
use cluster_crystal::exactalg::{LaurentMono, LaurentPoly, VarId};

fn strip_torus(p: &LaurentPoly) -> (LaurentMono, LaurentPoly) {
    // factor out the common torus monomial
    let mut torus: Option<LaurentMono> = None;
    for (m, _) in p.terms() {
        let t = LaurentMono::from_pairs(
            m.exps().filter(|(v, _)| matches!(v, VarId::Torus(_))),
        );
        match &torus {
            None => torus = Some(t),
            Some(prev) => assert_eq!(prev, &t, "non-uniform torus factor"),
        }
    }
    let t = torus.unwrap();
    (t.clone(), p.mul_mono(&t.inv()))
}

fn dominants(r: usize, p: &LaurentPoly) -> Vec<String> {
    p.terms()
        .filter_map(|(m, _)| {
            let cm = CrystalMonomial::new(m.clone()).ok()?;
            if (1..=r).all(|i| cm.eps(r, i) == 0) {
                Some(m.to_string())
            } else {
                None
            }
        })
        .collect()
}

#[test]
fn probe_mu1_even_r4() {
    let r = 4;
    let seed = build_initial_seed(r).unwrap();
    let s = mutate_path(&seed, &[1]).unwrap();
    let (t, body) = strip_torus(&s.vars[&1]);
    println!("== r=4 mu_1 (j=3=r-1), torus {t}");
    println!("   body ({} terms) = {body}", body.num_terms());
    println!("   dominants: {:?}", dominants(r, &body));
}

#[test]
fn probe_init_even_top_r4() {
    let r = 4;
    let seed = build_initial_seed(r).unwrap();
    let (t, body) = strip_torus(&seed.vars[&3]);
    println!("== r=4 init k=3 (j=4=r), torus {t}");
    println!("   body ({} terms) = {body}", body.num_terms());
    println!("   dominants: {:?}", dominants(r, &body));
}

#[test]
fn probe_oddr_r5() {
    let r = 5;
    let seed = build_initial_seed(r).unwrap();
    // candidate A: mu''[0] then mu_4 then mu_1 (applied order)
    let a = mutate_path(&seed, &[3, 5, 4, 2, 4, 1]).unwrap();
    let (ta, ba) = strip_torus(&a.vars[&1]);
    println!("== r=5 odd-r candidate A [3,5,4,2,4,1]: torus {ta}");
    println!("   body ({} terms) = {ba}", ba.num_terms());
    println!("   dominants: {:?}", dominants(r, &ba));
    // candidate B: mu[0] with k=4, then mu_4, then mu_1
    let b = mutate_path(&seed, &[4, 5, 2, 4, 1]).unwrap();
    let (tb, bb) = strip_torus(&b.vars[&1]);
    println!("== r=5 odd-r candidate B [4,5,2,4,1]: torus {tb}");
    println!("   body ({} terms) = {bb}", bb.num_terms());
    println!("   dominants: {:?}", dominants(r, &bb));
}

#[test]
fn probe_remainb_extension_r5() {
    let r = 5;
    let seed = build_initial_seed(r).unwrap();
    // k = (r+1)/2 + 1 = 4 (j_4 = 4): path mu_4 then mu_{4 - floor(r/2) - 1} = mu_1
    let s = mutate_path(&seed, &[4, 1]).unwrap();
    let (t, body) = strip_torus(&s.vars[&1]);
    println!("== r=5 remain-b extension [4,1] target 1: torus {t}");
    println!("   body ({} terms) = {body}", body.num_terms());
}

#[test]
fn probe_1b_r8() {
    let r = 8;
    let seed = build_initial_seed(r).unwrap();
    // case (1b): k=5 (j_5 = 8), l=2: mu[2] = groups q=0..2 then mu_{k+l+1}=mu_8
    // mu[l] applied order: for q: [k+q, k+q+1, k - floor(r/2) + q]
    let mut path = Vec::new();
    let k = 5i64;
    for q in 0..=2i64 {
        path.extend([k + q, k + q + 1, k - 4 + q]);
    }
    path.push(k + 3);
    let s = mutate_path(&seed, &path).unwrap();
    let (t, body) = strip_torus(&s.vars[&8]);
    println!("== r=8 case 1b k=5 l=2 path {path:?}: torus {t}");
    println!("   body ({} terms)", body.num_terms());
    println!("   dominants: {:?}", dominants(r, &body));
}
