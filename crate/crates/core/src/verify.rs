//! Verification suites and the records they emit.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chern::{ComparisonReport, ECheck, MorphismCheck, TildeCheck};
use crate::error::Result;
use crate::expr::format_monomial;
use crate::gen;
use crate::kha::LaurentElement;
use crate::quiver::{DimVector, Quiver, VarContext};
use crate::todd::{check_todd_identities, sqrt_td_m_g_is_invariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Todd,
    Sqrt,
    TildeMorphism,
    EMorphism,
    Morphism,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Todd => "todd",
            Suite::Sqrt => "sqrt",
            Suite::TildeMorphism => "tilde-morphism",
            Suite::EMorphism => "e-morphism",
            Suite::Morphism => "morphism",
            Suite::All => "all",
        }
    }

    /// The concrete suites this one expands to.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Todd, Suite::Sqrt, Suite::TildeMorphism, Suite::EMorphism, Suite::Morphism],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "todd" => Suite::Todd,
            "sqrt" => Suite::Sqrt,
            "tilde-morphism" => Suite::TildeMorphism,
            "e-morphism" => Suite::EMorphism,
            "morphism" => Suite::Morphism,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite '{s}'")),
        })
    }
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<String>,
    pub quiver: String,
    pub gamma1: String,
    pub gamma2: String,
    pub degree: u32,
    pub seed: u64,
    pub trial: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch_monomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.pass { "PASS" } else { "FAIL" }, self.suite)?;
        if let Some(c) = &self.check {
            write!(f, " {c}")?;
        }
        write!(
            f,
            " quiver={} gamma1={} gamma2={} degree={} seed={} trial={}",
            self.quiver, self.gamma1, self.gamma2, self.degree, self.seed, self.trial
        )?;
        if let Some(m) = &self.mismatch_monomial {
            write!(f, " mismatch={m}")?;
        }
        if let Some(e) = &self.error {
            write!(f, " error=\"{e}\"")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub quiver: Arc<Quiver>,
    /// Label used in records, typically the quiver file stem.
    pub quiver_name: String,
    pub gamma1: DimVector,
    pub gamma2: DimVector,
    pub degree: u32,
    pub seed: u64,
    pub trials: u64,
}

impl SuiteConfig {
    fn record(&self, suite: Suite, check: Option<&str>, trial: u64) -> CheckRecord {
        CheckRecord {
            suite: suite.name().into(),
            check: check.map(str::to_string),
            quiver: self.quiver_name.clone(),
            gamma1: self.gamma1.to_string(),
            gamma2: self.gamma2.to_string(),
            degree: self.degree,
            seed: self.seed,
            trial,
            pass: false,
            mismatch_monomial: None,
            error: None,
        }
    }

    fn failed(&self, suite: Suite, check: Option<&str>, trial: u64, err: &crate::Error) -> CheckRecord {
        CheckRecord { error: Some(err.to_string()), ..self.record(suite, check, trial) }
    }
}

fn from_report(cfg: &SuiteConfig, suite: Suite, trial: u64, rep: Result<ComparisonReport>) -> CheckRecord {
    match rep {
        Ok(rep) => CheckRecord {
            pass: rep.pass,
            mismatch_monomial: rep.mismatch_monomial(),
            ..cfg.record(suite, None, trial)
        },
        Err(e) => cfg.failed(suite, None, trial, &e),
    }
}

fn todd_records(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    match check_todd_identities(&cfg.quiver, &cfg.gamma1, &cfg.gamma2, cfg.degree) {
        Ok(rep) => {
            for c in &rep.checks {
                out.push(CheckRecord {
                    pass: c.pass,
                    mismatch_monomial: c.mismatch.as_ref().map(|e| format_monomial(&rep.joint, e, 'x')),
                    ..cfg.record(Suite::Todd, Some(c.name), 0)
                });
            }
        }
        Err(e) => out.push(cfg.failed(Suite::Todd, None, 0, &e)),
    }
    let name = "sqrt_td_m_g_invariant";
    let joint = cfg.gamma1.checked_add(&cfg.gamma2).and_then(|g| VarContext::new(cfg.quiver.clone(), g));
    match joint.and_then(|ctx| sqrt_td_m_g_is_invariant(&ctx, cfg.degree)) {
        Ok(pass) => out.push(CheckRecord { pass, ..cfg.record(Suite::Todd, Some(name), 0) }),
        Err(e) => out.push(cfg.failed(Suite::Todd, Some(name), 0, &e)),
    }
    out
}

/// `sqrt(mu)^2 = mu` and `sqrt(mu nu) = sqrt(mu) sqrt(nu)` on random unit
/// series in the joint alphabet.
pub fn sqrt_axioms(ctx: &Arc<VarContext>, seed: u64, trial: u64, order: u32) -> Result<bool> {
    let mut rng = gen::rng_for(seed, trial);
    let mu = gen::unit_series(&mut rng, ctx, order, 3);
    let nu = gen::unit_series(&mut rng, ctx, order, 3);
    let r = mu.sqrt()?;
    let square = r.mul(&r)? == mu;
    let product = mu.mul(&nu)?.sqrt()? == r.mul(&nu.sqrt()?)?;
    Ok(square && product)
}

fn sqrt_records(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let ctx = match cfg.gamma1.checked_add(&cfg.gamma2).and_then(|g| VarContext::new(cfg.quiver.clone(), g)) {
        Ok(c) => c,
        Err(e) => return vec![cfg.failed(Suite::Sqrt, None, 0, &e)],
    };
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| match sqrt_axioms(&ctx, cfg.seed, t, cfg.degree) {
            Ok(pass) => CheckRecord { pass, ..cfg.record(Suite::Sqrt, None, t) },
            Err(e) => cfg.failed(Suite::Sqrt, None, t, &e),
        })
        .collect()
}

fn laurent_pair(
    cfg: &SuiteConfig,
    first: &Arc<VarContext>,
    second: &Arc<VarContext>,
    trial: u64,
    invariant: bool,
) -> (LaurentElement, LaurentElement) {
    let mut rng = gen::rng_for(cfg.seed, trial);
    let (p1, p2) = if invariant {
        (gen::invariant_laurent(&mut rng, first), gen::invariant_laurent(&mut rng, second))
    } else {
        (gen::laurent(&mut rng, first, 2), gen::laurent(&mut rng, second, 2))
    };
    (LaurentElement::new(first, p1).expect("context"), LaurentElement::new(second, p2).expect("context"))
}

fn morphism_records(cfg: &SuiteConfig, suite: Suite) -> Vec<CheckRecord> {
    type Runner = Box<dyn Fn(&LaurentElement, &LaurentElement) -> Result<ComparisonReport> + Sync>;
    let built: Result<(Runner, Arc<VarContext>, Arc<VarContext>)> = (|| {
        let (q, g1, g2, n) = (&cfg.quiver, &cfg.gamma1, &cfg.gamma2, cfg.degree);
        Ok(match suite {
            Suite::TildeMorphism => {
                let c = TildeCheck::new(q, g1, g2, n)?;
                let (a, b) = (c.split().first().clone(), c.split().second().clone());
                (Box::new(move |f1: &LaurentElement, f2: &LaurentElement| c.run(f1, f2)) as Runner, a, b)
            }
            Suite::EMorphism => {
                let c = ECheck::new(q, g1, g2, n)?;
                let (a, b) = (c.split().first().clone(), c.split().second().clone());
                (Box::new(move |f1: &LaurentElement, f2: &LaurentElement| c.run(f1, f2)) as Runner, a, b)
            }
            _ => {
                let c = MorphismCheck::new(q, g1, g2, n)?;
                let (a, b) = (c.split().first().clone(), c.split().second().clone());
                (Box::new(move |f1: &LaurentElement, f2: &LaurentElement| c.run(f1, f2)) as Runner, a, b)
            }
        })
    })();
    let (runner, first, second) = match built {
        Ok(b) => b,
        Err(e) => return vec![cfg.failed(suite, None, 0, &e)],
    };
    let invariant = suite == Suite::Morphism;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let (f1, f2) = laurent_pair(cfg, &first, &second, t, invariant);
            from_report(cfg, suite, t, runner(&f1, &f2).map(|r| r.with_seed(cfg.seed)))
        })
        .collect()
}

/// Run one suite (or all of them) on a single configuration. Records come
/// back in suite order, then trial order.
pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for s in suite.expand() {
        match s {
            Suite::Todd => out.extend(todd_records(cfg)),
            Suite::Sqrt => out.extend(sqrt_records(cfg)),
            _ => out.extend(morphism_records(cfg, s)),
        }
    }
    out
}

/// Symmetric quivers with at most two vertices and at most two arrows
/// between any ordered pair of vertices.
pub fn small_quivers() -> Vec<Quiver> {
    let mut out = Vec::new();
    for a in 0..=2 {
        out.push(Quiver::one_vertex(a));
    }
    for a11 in 0..=2 {
        for a22 in 0..=2 {
            for a12 in 0..=2 {
                out.push(Quiver::new(vec![vec![a11, a12], vec![a12, a22]]).expect("symmetric"));
            }
        }
    }
    out
}

/// All dimension vectors of length `n` with total at most `max_total`.
pub fn dimension_vectors(n: usize, max_total: u32) -> Vec<DimVector> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<DimVector>) {
        if prefix.len() == n {
            out.push(DimVector::new(prefix.clone()));
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            rec(n, left - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_total, &mut Vec::new(), &mut out);
    out
}

/// Pairs `(gamma1, gamma2)` with `|gamma1| + |gamma2| <= max_total`.
pub fn dimension_pairs(n: usize, max_total: u32) -> Vec<(DimVector, DimVector)> {
    let mut out = Vec::new();
    for g1 in dimension_vectors(n, max_total) {
        for g2 in dimension_vectors(n, max_total - g1.total()) {
            out.push((g1.clone(), g2));
        }
    }
    out
}

/// Pairs of nonzero dimension vectors with `|gamma_i| <= max_each`.
pub fn nonzero_pairs(n: usize, max_each: u32) -> Vec<(DimVector, DimVector)> {
    let vs: Vec<DimVector> = dimension_vectors(n, max_each).into_iter().filter(|g| !g.is_zero()).collect();
    let mut out = Vec::new();
    for a in &vs {
        for b in &vs {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}
