//! Acceptance suite: the twelve end-to-end criteria, each printing one
//! pass/fail line. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines for passing criteria too).

use entsym::deform::{check_dual_lemmas, deform_five_term, four_term_element};
use entsym::diagram::{
    build_chain_merge_dist, build_merge_tree, jmath, wall_absorb, Diagram, Generator, StrandState,
};
use entsym::entropy::{
    chain_decompose, conditional_entropy, defect_symmetry_residuals, four_term_residual,
    joint_decompose, joint_entropy, mutual_information_all, shannon, Axis, Distribution,
    JointTable, Mode,
};
use entsym::exact::{dual_bracket, rat, star_action, DualNumber};
use entsym::symbols::{
    beta_term, beta_to_j, chi, d_map, eval_entropy_real, j_symbol,
};
use entsym::Rat;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::{rand_core::SeedableRng, ChaCha8Rng};

const SEED: u64 = 0xacce97;

fn trial_rng(suite: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&SEED.to_le_bytes());
    key[8..16].copy_from_slice(&suite.to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n: i64 = rng.gen_range(-200..=200);
    let d: i64 = rng.gen_range(1..=200);
    Rat::new(n.into(), d.into())
}

fn rand_rat_where(rng: &mut ChaCha8Rng, ok: impl Fn(&Rat) -> bool) -> Rat {
    loop {
        let r = rand_rat(rng);
        if ok(&r) {
            return r;
        }
    }
}

fn rand_distribution(rng: &mut ChaCha8Rng, n: usize) -> Distribution {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=50)).collect();
    let total: i64 = w.iter().sum();
    let probs = w.into_iter().map(|x| Rat::new(x.into(), total.into())).collect();
    Distribution::new(probs, Mode::Strict).unwrap()
}

fn rand_table(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> JointTable {
    let w: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(1..=50)).collect();
    let total: i64 = w.iter().sum();
    let p = w.into_iter().map(|x| Rat::new(x.into(), total.into())).collect();
    JointTable::new(rows, cols, p).unwrap()
}

fn verdict(n: usize, name: &str, pass: bool) {
    println!("acceptance {n:2}: {name} ... {}", if pass { "pass" } else { "FAIL" });
    assert!(pass, "acceptance criterion {n} ({name}) failed");
}

#[test]
fn criterion_01_cocycle_chi_zero() {
    let mut ok = true;
    for trial in 0..1000 {
        let rng = &mut trial_rng(1, trial);
        let a = rand_rat_where(rng, |r| !r.is_zero());
        let b = rand_rat_where(rng, |r| !r.is_zero() && (&a + r) != Rat::zero());
        let c = rand_rat_where(rng, |r| {
            !r.is_zero() && (&b + r) != Rat::zero() && (&a + &b + r) != Rat::zero()
        });
        let combo = j_symbol(a.clone(), &b + &c) + j_symbol(b.clone(), c.clone())
            - j_symbol(&a + &b, c.clone())
            - j_symbol(a, b);
        ok &= chi(&combo).unwrap().is_zero();
    }
    verdict(1, "2-cocycle relation, chi exactly zero (1000 triples)", ok);
}

#[test]
fn criterion_02_four_term_beta_dmap_zero() {
    let mut ok = true;
    for trial in 0..500 {
        let rng = &mut trial_rng(2, trial);
        let a = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one());
        let b = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one() && r != &a);
        let e = four_term_element(&a, &b).unwrap();
        ok &= d_map(&e).unwrap().is_zero();
    }
    // hand-checkable instance: (2,4) collapses to [2]−[4]+2[2]−[3]
    let e = four_term_element(&rat(2, 1), &rat(4, 1)).unwrap();
    let expect = beta_term(rat(3, 1), rat(2, 1)).unwrap()
        - beta_term(Rat::one(), rat(4, 1)).unwrap()
        - beta_term(Rat::one(), rat(3, 1)).unwrap();
    ok &= e == expect && d_map(&e).unwrap().is_zero();
    verdict(2, "4-term beta relation, d_map exactly zero (500 pairs + (2,4))", ok);
}

#[test]
fn criterion_03_four_term_entropy_residual() {
    let mut ok = true;
    for trial in 0..100_000u64 {
        let rng = &mut trial_rng(3, trial);
        let r = loop {
            let p: f64 = rng.gen_range(-2.0..3.0);
            let q: f64 = rng.gen_range(-2.0..3.0);
            if let Ok(r) = four_term_residual(p, q, std::f64::consts::E) {
                break r;
            }
        };
        ok &= r.abs() <= 1e-10;
    }
    verdict(3, "4-term entropy equation, |residual| <= 1e-10 (1e5 pairs)", ok);
}

/// All sequences of merge positions that reduce n strands to one.
fn all_merge_shapes(n: usize) -> Vec<Vec<usize>> {
    let mut shapes = vec![Vec::new()];
    for k in 0..n - 1 {
        let choices = n - k - 1; // positions 0..=(strands-2)
        shapes = shapes
            .into_iter()
            .flat_map(|s| {
                (0..choices).map(move |p| {
                    let mut t = s.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    shapes
}

#[test]
fn criterion_04_chain_decomposition_and_merge_trees() {
    let mut ok = true;
    for trial in 0..200 {
        let rng = &mut trial_rng(4, trial);
        let n = rng.gen_range(2..=8usize);
        let d = rand_distribution(rng, n);
        let e = chain_decompose(&d).unwrap();
        let residual = (shannon(&d, std::f64::consts::E)
            - eval_entropy_real(&e, std::f64::consts::E))
        .abs();
        ok &= residual <= 1e-12 * n as f64;
    }
    // every merge-tree order over the same labels is chi-equal, n <= 6
    for n in 3..=6usize {
        let rng = &mut trial_rng(40, n as u64);
        let d = rand_distribution(rng, n);
        let reference = chi(&chain_decompose(&d).unwrap()).unwrap();
        for shape in all_merge_shapes(n) {
            let t = build_merge_tree(d.probs(), &shape).unwrap();
            ok &= chi(&jmath(&t).unwrap()).unwrap() == reference;
        }
    }
    verdict(4, "chain decomposition (n<=8) + all merge-tree orders chi-equal (n<=6)", ok);
}

#[test]
fn criterion_05_joint_decomposition() {
    let base = std::f64::consts::E;
    let mut ok = true;
    for trial in 0..200 {
        let rng = &mut trial_rng(5, trial);
        let (n, m) = (rng.gen_range(2..=4usize), rng.gen_range(2..=4usize));
        let t = rand_table(rng, n, m);
        let residual =
            (joint_entropy(&t, base) - eval_entropy_real(&joint_decompose(&t), base)).abs();
        ok &= residual <= 1e-12 * (n * m) as f64;
    }
    // 2x2 termwise: <p11,p21> + <p12,p22> + <p11+p21, p12+p22>
    let rng = &mut trial_rng(50, 0);
    let t = rand_table(rng, 2, 2);
    let (p11, p21, p12, p22) =
        (t.get(0, 0).clone(), t.get(1, 0).clone(), t.get(0, 1).clone(), t.get(1, 1).clone());
    let expect = j_symbol(p11.clone(), p21.clone())
        + j_symbol(p12.clone(), p22.clone())
        + j_symbol(&p11 + &p21, &p12 + &p22);
    ok &= joint_decompose(&t) == expect;
    verdict(5, "joint decomposition (n,m<=4) + 2x2 termwise form", ok);
}

#[test]
fn criterion_06_chain_rule_and_mutual_information() {
    let base = std::f64::consts::E;
    let mut ok = true;
    for trial in 0..200 {
        let rng = &mut trial_rng(6, trial);
        let (n, m) = (rng.gen_range(2..=5usize), rng.gen_range(2..=5usize));
        let t = rand_table(rng, n, m);
        let hxy = joint_entropy(&t, base);
        let hx = shannon(&Distribution::new(t.row_marginals(), Mode::Lenient).unwrap(), base);
        let hyx = conditional_entropy(&t, Axis::X, base).unwrap();
        ok &= (hxy - hyx - hx).abs() <= 1e-12;
        let mi = mutual_information_all(&t, base).unwrap();
        ok &= (mi[0] - mi[1]).abs() <= 1e-12
            && (mi[0] - mi[2]).abs() <= 1e-12
            && (mi[1] - mi[2]).abs() <= 1e-12;
    }
    verdict(6, "chain rule + three mutual-information formulas (tables <= 5x5)", ok);
}

#[test]
fn criterion_07_diagram_invariance() {
    let mut ok = true;
    // three merge networks over the same four lines (left chain, balanced,
    // right chain) must carry chi-identical invariants
    let rng = &mut trial_rng(7, 0);
    let d = rand_distribution(rng, 4);
    let shapes: [&[usize]; 3] = [&[0, 0, 0], &[0, 1, 0], &[2, 1, 0]];
    let invariants: Vec<_> = shapes
        .iter()
        .map(|s| chi(&jmath(&build_merge_tree(d.probs(), s).unwrap()).unwrap()).unwrap())
        .collect();
    ok &= invariants[0] == invariants[1] && invariants[1] == invariants[2];
    // the two associations of three lines (the diagrammatic 2-cocycle)
    let d3 = rand_distribution(rng, 3);
    let left = chi(&jmath(&build_merge_tree(d3.probs(), &[0, 0]).unwrap()).unwrap()).unwrap();
    let right = chi(&jmath(&build_merge_tree(d3.probs(), &[1, 0]).unwrap()).unwrap()).unwrap();
    ok &= left == right;
    // merge then split back: invariant is the zero JExpr
    let (a, b) = (rat(3, 7), rat(2, 5));
    let merge_split = Diagram {
        name: "merge-split".into(),
        inputs: vec![StrandState::Add(a.clone()), StrandState::Add(b)],
        slices: vec![Generator::Merge { pos: 0 }, Generator::Split { pos: 0, left: a }],
    };
    ok &= jmath(&merge_split).unwrap().is_structurally_zero();
    verdict(7, "diagram invariance: merge networks chi-identical, merge-split zero", ok);
}

#[test]
fn criterion_08_boundary_wall() {
    let base = std::f64::consts::E;
    let mut ok = true;
    // full absorption of a chain merge gives back the entropy
    for trial in 0..50 {
        let rng = &mut trial_rng(8, trial);
        let n = rng.gen_range(2..=8usize);
        let d = rand_distribution(rng, n);
        let absorbed = wall_absorb(&build_chain_merge_dist(&d).unwrap()).unwrap();
        let v = eval_entropy_real(&beta_to_j(&absorbed), base);
        ok &= (v - shannon(&d, base)).abs() <= 1e-12 * n as f64;
    }
    // emitted defect sum of the absorbed network equals [b] under d_map
    for trial in 0..200 {
        let rng = &mut trial_rng(80, trial);
        let a = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one());
        let b = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one() && r != &a);
        let one = Rat::one();
        let defects = beta_term(a.clone(), &b / &a).unwrap()
            + beta_term(&one - &a, (&one - &b) / (&one - &a)).unwrap()
            + beta_term(one.clone(), a.clone()).unwrap();
        ok &= d_map(&defects).unwrap() == d_map(&beta_term(one, b).unwrap()).unwrap();
    }
    verdict(8, "boundary wall: chain absorption = H(p_X), defect sum d_map-equal [b]", ok);
}

#[test]
fn criterion_09_dual_number_lemmas() {
    let mut ok = true;
    for trial in 0..1000 {
        let rng = &mut trial_rng(9, trial);
        let a = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one());
        let b = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one() && r != &a);
        ok &= check_dual_lemmas(&a, &b).unwrap().all_pass();
    }
    // spot instance (2,3): <3>/<2> = 3/2 - 3/2 t = 2 * <3/2>
    let q = dual_bracket(&rat(3, 1)).unwrap().div(&dual_bracket(&rat(2, 1)).unwrap()).unwrap();
    ok &= q == DualNumber::new(rat(3, 2), rat(-3, 2));
    ok &= q == star_action(&rat(2, 1), &dual_bracket(&rat(3, 2)).unwrap()).unwrap();
    verdict(9, "dual-number lemmas exact (1000 pairs + (2,3) spot check)", ok);
}

#[test]
fn criterion_10_deformation() {
    let mut ok = true;
    for trial in 0..500 {
        let rng = &mut trial_rng(10, trial);
        let a = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one());
        let b = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one() && r != &a);
        let lin = deform_five_term(&a, &b).unwrap();
        ok &= lin == four_term_element(&a, &b).unwrap();
        ok &= d_map(&lin).unwrap().is_zero();
    }
    verdict(10, "5-term deformation = 4-term element, d_map zero (500 pairs)", ok);
}

#[test]
fn criterion_11_defect_symmetry() {
    let base = std::f64::consts::E;
    let mut ok = true;
    for trial in 0..10_000u64 {
        let rng = &mut trial_rng(11, trial);
        let (r1, r2) = loop {
            let p: f64 = rng.gen_range(-2.0..3.0);
            let q: f64 = rng.gen_range(-2.0..3.0);
            if let Ok((r1, r2, _)) = defect_symmetry_residuals(p, q, base) {
                break (r1, r2);
            }
        };
        ok &= r1.abs() <= 1e-10 && r2.abs() <= 1e-10;
    }
    let (_, _, common) = defect_symmetry_residuals(3.0, 2.0, base).unwrap();
    ok &= (common - 2.0 * std::f64::consts::LN_2).abs() <= 1e-12;
    verdict(11, "defect symmetry residuals <= 1e-10 (1e4 pairs), (3,2) -> 2 ln 2", ok);
}

#[test]
fn criterion_12_scaling_coherence() {
    let mut ok = true;
    for trial in 0..500 {
        let rng = &mut trial_rng(12, trial);
        let c = rand_rat_where(rng, |r| !r.is_zero());
        let a = rand_rat_where(rng, |r| !r.is_zero());
        let b = rand_rat_where(rng, |r| !r.is_zero() && (&a + r) != Rat::zero());
        let combo = j_symbol(&c * &a, &c * &b) - j_symbol(a.clone(), b.clone()) * c.clone();
        ok &= chi(&combo).unwrap().is_zero();
        // diagram level: mscale before the merge vs after
        let before = Diagram {
            name: "before".into(),
            inputs: vec![StrandState::Add(a.clone()), StrandState::Add(b.clone())],
            slices: vec![
                Generator::MScale { factor: c.clone() },
                Generator::Merge { pos: 0 },
            ],
        };
        let after = Diagram {
            name: "after".into(),
            inputs: vec![StrandState::Add(a), StrandState::Add(b)],
            slices: vec![Generator::Merge { pos: 0 }, Generator::MScale { factor: c }],
        };
        ok &= chi(&jmath(&before).unwrap()).unwrap() == chi(&jmath(&after).unwrap()).unwrap();
    }
    verdict(12, "scaling coherence chi-zero (500 triples) + MScale before/after", ok);
}
