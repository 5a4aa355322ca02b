//! The randomized identity suites behind `entsym identities`.

use entsym::deform::four_term_element;
use entsym::entropy::{
    chain_decompose, conditional_entropy, four_term_residual, h_extended, joint_decompose,
    joint_entropy, mutual_information_all, shannon, Axis, Distribution, JointTable, Mode,
};
use entsym::symbols::{
    beta_term, beta_to_j, chi, d_map, eval_entropy_real, j_symbol, rat_to_f64, BetaExpr,
};
use entsym::Rat;
use num_traits::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::random::{
    rand_distribution, rand_rat_unit_avoiding, rand_rat_where, rand_table, trial_rng,
};
use crate::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Exact,
    Numeric,
}

pub struct SuiteResult {
    pub name: &'static str,
    pub kind: SuiteKind,
    pub trials: u64,
    pub passes: u64,
    pub counterexample: Option<Value>,
}

impl SuiteResult {
    pub fn all_pass(&self) -> bool {
        self.passes == self.trials
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "kind": match self.kind { SuiteKind::Exact => "exact", SuiteKind::Numeric => "numeric" },
            "trials": self.trials,
            "passes": self.passes,
            "pass": self.all_pass(),
            "counterexample": self.counterexample,
        })
    }
}

/// Run `trials` trials of `check`; each trial gets its own substream.
fn run_suite(
    name: &'static str,
    kind: SuiteKind,
    suite_id: u64,
    cfg: &RunConfig,
    check: impl Fn(&mut rand_chacha::ChaCha8Rng) -> Result<(), Value>,
) -> SuiteResult {
    let mut passes = 0;
    let mut counterexample = None;
    for trial in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, suite_id, trial);
        match check(&mut rng) {
            Ok(()) => passes += 1,
            Err(payload) => {
                if counterexample.is_none() {
                    counterexample = Some(json!({"trial": trial, "payload": payload}));
                }
            }
        }
    }
    SuiteResult { name, kind, trials: cfg.trials, passes, counterexample }
}

fn fail(vals: &[(&str, String)], detail: &str) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in vals {
        m.insert((*k).to_string(), Value::String(v.clone()));
    }
    m.insert("detail".into(), Value::String(detail.into()));
    Value::Object(m)
}

fn within(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

pub fn exact_suites(cfg: &RunConfig) -> Vec<SuiteResult> {
    let mut out = Vec::new();

    out.push(run_suite("cocycle-chi-zero", SuiteKind::Exact, 1, cfg, |rng| {
        // all intermediate symbols defined: no argument or pair-sum vanishes
        let a = rand_rat_where(rng, |r| !r.is_zero());
        let b = rand_rat_where(rng, |r| !r.is_zero() && (&a + r) != Rat::zero());
        let c = rand_rat_where(rng, |r| {
            !r.is_zero() && (&b + r) != Rat::zero() && (&a + &b + r) != Rat::zero()
        });
        let combo = j_symbol(a.clone(), &b + &c) + j_symbol(b.clone(), c.clone())
            - j_symbol(&a + &b, c.clone())
            - j_symbol(a.clone(), b.clone());
        let t = chi(&combo).map_err(|e| {
            fail(&[("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())], &e.to_string())
        })?;
        if t.is_zero() {
            Ok(())
        } else {
            Err(fail(
                &[("a", a.to_string()), ("b", b.to_string()), ("c", c.to_string())],
                "chi of cocycle combination is nonempty",
            ))
        }
    }));

    out.push(run_suite("four-term-beta-dmap-zero", SuiteKind::Exact, 2, cfg, |rng| {
        let a = rand_rat_unit_avoiding(rng);
        let b = rand_rat_where(rng, |r| !r.is_zero() && !r.is_one() && r != &a);
        let ctx = [("a", a.to_string()), ("b", b.to_string())];
        let e = four_term_element(&a, &b).map_err(|e| fail(&ctx, &e.to_string()))?;
        let t = d_map(&e).map_err(|e| fail(&ctx, &e.to_string()))?;
        if t.is_zero() {
            Ok(())
        } else {
            Err(fail(&ctx, "d_map of 4-term combination is nonempty"))
        }
    }));

    out.push(run_suite("chi-symmetry", SuiteKind::Exact, 3, cfg, |rng| {
        let a = rand_rat_where(rng, |r| !r.is_zero());
        let b = rand_rat_where(rng, |r| !r.is_zero() && (&a + r) != Rat::zero());
        let ctx = [("a", a.to_string()), ("b", b.to_string())];
        let lhs = chi(&j_symbol(a.clone(), b.clone())).map_err(|e| fail(&ctx, &e.to_string()))?;
        let rhs = chi(&j_symbol(b.clone(), a.clone())).map_err(|e| fail(&ctx, &e.to_string()))?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(fail(&ctx, "chi(<a,b>) != chi(<b,a>)"))
        }
    }));

    out.push(run_suite("isomorphism-commutes-with-D", SuiteKind::Exact, 4, cfg, |rng| {
        // random 3-term BetaExpr
        let mut e = BetaExpr::zero();
        let mut args = Vec::new();
        for _ in 0..3 {
            let c = rand_rat_where(rng, |r| !r.is_zero());
            let a = rand_rat_unit_avoiding(rng);
            args.push(format!("{c}·[{a}]"));
            e = e + beta_term(c, a).expect("argument validated");
        }
        let ctx = [("e", args.join(" + "))];
        let lhs = chi(&beta_to_j(&e)).map_err(|err| fail(&ctx, &err.to_string()))?;
        let rhs = d_map(&e).map_err(|err| fail(&ctx, &err.to_string()))?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(fail(&ctx, "chi(beta_to_j(e)) != d_map(e)"))
        }
    }));

    out.push(run_suite("beta-reflection-dmap", SuiteKind::Exact, 5, cfg, |rng| {
        let a = rand_rat_unit_avoiding(rng);
        let ctx = [("a", a.to_string())];
        let lhs = d_map(&beta_term(Rat::one(), a.clone()).unwrap())
            .map_err(|e| fail(&ctx, &e.to_string()))?;
        let rhs = d_map(&beta_term(Rat::one(), Rat::one() - &a).unwrap())
            .map_err(|e| fail(&ctx, &e.to_string()))?;
        if lhs == rhs {
            Ok(())
        } else {
            Err(fail(&ctx, "d_map([a]) != d_map([1-a])"))
        }
    }));

    out.push(run_suite("beta-inversion-dmap", SuiteKind::Exact, 6, cfg, |rng| {
        let a = rand_rat_unit_avoiding(rng);
        let ctx = [("a", a.to_string())];
        let e = beta_term(a.clone(), a.recip()).unwrap() + beta_term(Rat::one(), a.clone()).unwrap();
        let t = d_map(&e).map_err(|e| fail(&ctx, &e.to_string()))?;
        if t.is_zero() {
            Ok(())
        } else {
            Err(fail(&ctx, "d_map(a·[1/a] + [a]) is nonempty"))
        }
    }));

    out
}

pub fn numeric_suites(cfg: &RunConfig) -> Vec<SuiteResult> {
    let base = cfg.base;
    let mut out = Vec::new();

    out.push(run_suite("zero-element-evaluates-to-zero", SuiteKind::Numeric, 7, cfg, |rng| {
        // a d_map-zero element must evaluate to numeric zero as well
        let bounded = |r: &Rat| !r.is_zero() && !r.is_one() && rat_to_f64(r).abs() <= 100.0;
        let a = rand_rat_where(rng, bounded);
        let b = rand_rat_where(rng, |r| bounded(r) && r != &a);
        let ctx = [("a", a.to_string()), ("b", b.to_string())];
        let e = four_term_element(&a, &b).map_err(|e| fail(&ctx, &e.to_string()))?;
        let v = eval_entropy_real(&beta_to_j(&e), base);
        if v.abs() <= cfg.tolerance {
            Ok(())
        } else {
            Err(fail(&ctx, &format!("zero element evaluates to {v}")))
        }
    }));

    out.push(run_suite("h-reflection", SuiteKind::Numeric, 8, cfg, |rng| {
        let a: f64 = rng.gen_range(-3.0..4.0);
        let (lhs, rhs) = (h_extended(a, base), h_extended(1.0 - a, base));
        if within(lhs, rhs, 1e-12) {
            Ok(())
        } else {
            Err(fail(&[("a", a.to_string())], &format!("H(a)={lhs} vs H(1-a)={rhs}")))
        }
    }));

    out.push(run_suite("h-inversion", SuiteKind::Numeric, 9, cfg, |rng| {
        let mut a: f64 = rng.gen_range(-3.0..4.0);
        while a.abs() < 1e-3 {
            a = rng.gen_range(-3.0..4.0);
        }
        let (lhs, rhs) = (h_extended(1.0 / a, base), -h_extended(a, base) / a);
        if (lhs - rhs).abs() <= cfg.tolerance * lhs.abs().max(1.0) {
            Ok(())
        } else {
            Err(fail(&[("a", a.to_string())], &format!("H(1/a)={lhs} vs -(1/a)H(a)={rhs}")))
        }
    }));

    out.push(run_suite("four-term-entropy-residual", SuiteKind::Numeric, 10, cfg, |rng| {
        let (p, q, r) = loop {
            let p: f64 = rng.gen_range(-2.0..3.0);
            let q: f64 = rng.gen_range(-2.0..3.0);
            if let Ok(r) = four_term_residual(p, q, base) {
                break (p, q, r);
            }
        };
        if r.abs() <= cfg.tolerance {
            Ok(())
        } else {
            Err(fail(
                &[("p", p.to_string()), ("q", q.to_string())],
                &format!("residual {r}"),
            ))
        }
    }));

    out.push(run_suite("chain-decomposition", SuiteKind::Numeric, 11, cfg, |rng| {
        let n = rng.gen_range(2..=8usize);
        let d = rand_distribution(rng, n);
        let ctx = [("dist", format!("{:?}", d.probs().iter().map(|p| p.to_string()).collect::<Vec<_>>()))];
        let e = chain_decompose(&d).map_err(|e| fail(&ctx, &e.to_string()))?;
        let (h, v) = (shannon(&d, base), eval_entropy_real(&e, base));
        if within(h, v, 1e-12 * n as f64) {
            Ok(())
        } else {
            Err(fail(&ctx, &format!("shannon {h} vs decomposition {v}")))
        }
    }));

    out.push(run_suite("joint-decomposition", SuiteKind::Numeric, 12, cfg, |rng| {
        let (n, m) = (rng.gen_range(2..=4usize), rng.gen_range(2..=4usize));
        let t = rand_table(rng, n, m);
        let ctx = [("shape", format!("{n}x{m}"))];
        let (h, v) = (joint_entropy(&t, base), eval_entropy_real(&joint_decompose(&t), base));
        if within(h, v, 1e-12 * (n * m) as f64) {
            Ok(())
        } else {
            Err(fail(&ctx, &format!("joint entropy {h} vs decomposition {v}")))
        }
    }));

    out.push(run_suite("chain-rule-and-mutual-information", SuiteKind::Numeric, 13, cfg, |rng| {
        let (n, m) = (rng.gen_range(2..=5usize), rng.gen_range(2..=5usize));
        let t = rand_table(rng, n, m);
        let ctx = [("shape", format!("{n}x{m}"))];
        let hxy = joint_entropy(&t, base);
        let hx = shannon(
            &Distribution::new(t.row_marginals(), Mode::Lenient).unwrap(),
            base,
        );
        let hyx = conditional_entropy(&t, Axis::X, base).map_err(|e| fail(&ctx, &e.to_string()))?;
        if !within(hxy, hyx + hx, 1e-12) {
            return Err(fail(&ctx, &format!("chain rule residual {}", hxy - hyx - hx)));
        }
        let mi = mutual_information_all(&t, base).map_err(|e| fail(&ctx, &e.to_string()))?;
        for i in 0..3 {
            for j in i + 1..3 {
                if !within(mi[i], mi[j], 1e-12) {
                    return Err(fail(&ctx, &format!("I formulas disagree: {:?}", mi)));
                }
            }
        }
        Ok(())
    }));

    out.push(run_suite("u-variable-flattening", SuiteKind::Numeric, 14, cfg, |rng| {
        // 2x2x2 tensor flattened to one axis must reproduce the triple sum
        let weights: Vec<i64> = (0..8).map(|_| rng.gen_range(1..=50)).collect();
        let total: i64 = weights.iter().sum();
        let probs: Vec<Rat> = weights
            .iter()
            .map(|&w| Rat::new(w.into(), total.into()))
            .collect();
        let t = JointTable::new(1, 8, probs.clone()).unwrap();
        let direct: f64 = probs
            .iter()
            .map(|p| {
                let x = rat_to_f64(p);
                -x * x.ln() / base.ln()
            })
            .sum();
        let h = joint_entropy(&t, base);
        if within(h, direct, 1e-12) {
            Ok(())
        } else {
            Err(fail(&[("weights", format!("{weights:?}"))], &format!("{h} vs {direct}")))
        }
    }));

    out
}
