//! The `verify` subcommand: closed-form-vs-oracle suites, the chain
//! inequality, the D_1 identity, and the sup-lemma / averaging spot checks.

use greedylab_core::closedform::{
    l1_indicator_d, lemma_min, lemma_min_bruteforce, lp_indicator_d, LpIndicatorCase,
};
use greedylab_core::constants::{verify_averaging_inequality, verify_sup_lemma};
use greedylab_core::functionals::{
    d_m_capped, d_star_m_capped, hilbert_d_closed, sigma_m_capped, Caps,
};
use greedylab_core::greedy::greedy_residual;
use greedylab_core::{CoeffVector, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: f64,
    pub max_scope: u32,
    pub samples: usize,
    /// Negative-control shift added to every closed-form value.
    pub tamper: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

struct Suite {
    name: String,
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Suite {
    fn new(name: &str) -> Self {
        Suite {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, universe: u32, max_support: usize) -> CoeffVector {
    let size = rng.gen_range(1..=max_support.min(universe as usize));
    let mut idx: Vec<u32> = (1..=universe).collect();
    for i in (1..idx.len()).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    idx.truncate(size);
    idx.sort_unstable();
    let pairs: Vec<(u32, f64)> = idx
        .into_iter()
        .map(|i| {
            let mut c = 0.0f64;
            while c.abs() < 0.05 {
                c = rng.gen_range(-2.0..2.0);
            }
            (i, c)
        })
        .collect();
    CoeffVector::from_pairs(pairs).expect("random values are valid")
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport, greedylab_core::Error> {
    let caps = Caps {
        max_scope: config.max_scope,
        ..Caps::default()
    };
    let tol = config.tol;
    let mut suites = Vec::new();

    // 1. lp indicator closed forms vs the oracles
    let mut suite = Suite::new("lp_closed_form");
    for p in [1.25, 1.5, 2.0, 3.0] {
        for n in 1..=4u32 {
            for m in 1..=8u32 {
                let closed = lp_indicator_d(&LpIndicatorCase { p, n, m })? + config.tamper;
                let set: Vec<u32> = (1..=n).collect();
                let x = greedylab_core::space::indicator(&set)?;
                let space = SpaceSpec::Lp { p };
                let scope = n + m;
                let d = d_m_capped(&space, &x, m as usize, scope, &caps)?.value;
                let ds = d_star_m_capped(&space, &x, m as usize, scope, &caps)?.value;
                suite.check((closed - d).abs() <= tol && (closed - ds).abs() <= tol, || {
                    format!("p={p} N={n} m={m}: closed={closed} D={d} D*={ds}")
                });
            }
        }
    }
    suites.push(suite.finish());

    // 2. l1 piecewise values
    let mut suite = Suite::new("l1_piecewise");
    for n in 1..=4u32 {
        for m in 1..=10u32 {
            let closed = l1_indicator_d(n, m) + config.tamper;
            let set: Vec<u32> = (1..=n).collect();
            let x = greedylab_core::space::indicator(&set)?;
            let scope = n + m;
            let d = d_m_capped(&SpaceSpec::Lp { p: 1.0 }, &x, m as usize, scope, &caps)?.value;
            suite.check((closed - d).abs() <= tol, || {
                format!("N={n} m={m}: closed={closed} D={d}")
            });
        }
    }
    suites.push(suite.finish());

    // 3. lemma minimum vs its brute force
    let mut suite = Suite::new("lemma_bruteforce");
    for p in [1.25, 1.5, 2.0, 3.0] {
        for n in 1..=3u32 {
            for m in n..=6u32 {
                let closed = lemma_min(p, m, n)? + config.tamper;
                let brute = lemma_min_bruteforce(p, m, n, 64)?;
                suite.check((closed - brute).abs() <= tol, || {
                    format!("p={p} N={n} m={m}: closed={closed} brute={brute}")
                });
            }
        }
    }
    suites.push(suite.finish());

    // 4. Hilbert closed form vs the oracles
    let mut suite = Suite::new("hilbert_closed_form");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..25 {
        let x = random_vector(&mut rng, 6, 6);
        for m in 1..=4usize {
            let scope = 6 + m as u32;
            let closed_d = hilbert_d_closed(&x, m, false);
            let closed_ds = hilbert_d_closed(&x, m, true);
            let d = d_m_capped(&SpaceSpec::Hilbert, &x, m, scope, &caps)?.value;
            let ds = d_star_m_capped(&SpaceSpec::Hilbert, &x, m, scope, &caps)?.value;
            suite.check(
                (closed_d - d).abs() <= 1e-8 && (closed_ds - ds).abs() <= 1e-8,
                || format!("x={:?} m={m}: closed=({closed_d},{closed_ds}) oracle=({d},{ds})", Vec::<(u32, f64)>::from(x.clone())),
            );
        }
    }
    suites.push(suite.finish());

    // 5. the chain sigma_m <= D*_m <= D_m <= ||x||
    let mut suite = Suite::new("chain");
    let spaces: Vec<SpaceSpec> = vec![
        SpaceSpec::Lp { p: 1.5 },
        SpaceSpec::Lp { p: 2.5 },
        SpaceSpec::weighted_lp(1.0, (0..8).map(|k| 0.5f64.powi(k)).collect())?,
        SpaceSpec::Hilbert,
        SpaceSpec::SummingC0,
    ];
    let per_space = (config.samples / spaces.len()).max(1);
    for space in &spaces {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
        for _ in 0..per_space {
            let x = random_vector(&mut rng, 5, 4);
            let norm = space.norm(&x)?;
            let scope = 7;
            for m in 1..=x.support_size() {
                let s = sigma_m_capped(space, &x, m, scope, &caps)?.value;
                let ds = d_star_m_capped(space, &x, m, scope, &caps)?.value;
                let d = d_m_capped(space, &x, m, scope, &caps)?.value;
                suite.check(
                    s <= ds + tol && ds <= d + tol && d <= norm + tol,
                    || {
                        format!(
                            "{space:?} x={:?} m={m}: sigma={s} D*={ds} D={d} norm={norm}",
                            Vec::<(u32, f64)>::from(x.clone())
                        )
                    },
                );
            }
        }
    }
    suites.push(suite.finish());

    // 6. D_1 = D*_1 = first greedy residual on Lp / Hilbert
    let mut suite = Suite::new("d1_identity");
    for space in [
        SpaceSpec::Lp { p: 1.3 },
        SpaceSpec::Lp { p: 2.0 },
        SpaceSpec::Lp { p: 3.0 },
        SpaceSpec::Hilbert,
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xd1);
        for _ in 0..25 {
            let x = random_vector(&mut rng, 6, 5);
            let res = space.norm(&greedy_residual(&x, 1))?;
            let d = d_m_capped(&space, &x, 1, 7, &caps)?.value;
            let ds = d_star_m_capped(&space, &x, 1, 7, &caps)?.value;
            suite.check((d - res).abs() <= tol && (ds - res).abs() <= tol, || {
                format!(
                    "{space:?} x={:?}: residual={res} D_1={d} D*_1={ds}",
                    Vec::<(u32, f64)>::from(x.clone())
                )
            });
        }
    }
    suites.push(suite.finish());

    // 7. sup-lemma spot checks
    let mut suite = Suite::new("sup_lemma");
    let sup_spaces = vec![
        SpaceSpec::Lp { p: 1.0 },
        SpaceSpec::Lp { p: 2.0 },
        SpaceSpec::weighted_lp(1.0, (0..8).map(|k| 0.5f64.powi(k)).collect())?,
        SpaceSpec::Hilbert,
        SpaceSpec::SummingC0,
    ];
    let xs = vec![
        CoeffVector::empty(),
        CoeffVector::from_dense(&[1.0, -0.5]).unwrap(),
        CoeffVector::from_dense(&[1.0, -1.0, 1.0]).unwrap(),
    ];
    for space in &sup_spaces {
        for x in &xs {
            for a in [vec![4u32, 5], vec![4, 5, 6], vec![5]] {
                let r = verify_sup_lemma(space, x, &a, config.samples.min(50), config.seed, tol)?;
                suite.check(r.pass(), || {
                    format!(
                        "{space:?} x={:?} A={a:?}: I1={} I2={} I3={}",
                        Vec::<(u32, f64)>::from(x.clone()),
                        r.i1,
                        r.i2,
                        r.i3_max_sample
                    )
                });
            }
        }
    }
    suites.push(suite.finish());

    // 8. averaging inequality with K_su = 1 on lp
    let mut suite = Suite::new("averaging");
    for p in [1.0, 2.0, 3.0] {
        let space = SpaceSpec::Lp { p };
        let x = CoeffVector::from_dense(&[3.0, -2.0, 1.0, -0.5]).unwrap();
        for a in [vec![1u32], vec![3], vec![2, 4]] {
            let t_max = a.iter().map(|&i| x.get(i).abs()).fold(f64::INFINITY, f64::min);
            for b in [vec![], x.support_vec().into_iter().filter(|i| !a.contains(i)).collect::<Vec<u32>>()] {
                for t in [t_max, 0.5 * t_max] {
                    let r = verify_averaging_inequality(&space, &x, &a, &b, t, 1.0, tol)?;
                    suite.check(r.pass, || {
                        format!("p={p} A={a:?} B={b:?} t={t}: lhs={} bound={}", r.lhs, r.bound)
                    });
                }
            }
        }
    }
    suites.push(suite.finish());

    let pass = suites.iter().all(|s| s.failures == 0);
    Ok(VerifyReport {
        seed: config.seed,
        tol,
        samples: config.samples,
        suites,
        pass,
    })
}
