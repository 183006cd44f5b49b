//! Executable checks of the nil clean ideal theory.
//!
//! Each registered check ranges over instances generated from a family of
//! rings, filters them by the result's hypotheses and tests its conclusion.
//! For equivalences both implications are counted separately. A
//! counterexample verdict means the engine is wrong, not the mathematics.

mod checks;
mod context;
mod explore;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::ring::FiniteRing;
use crate::spec::RingSpec;

pub use context::{CheckConfig, Context, Instance, DEFAULT_IDEAL_CAP};
pub use explore::{explore_noncommutative, Finding};

/// Environment variable bounding the number of worker threads.
pub const THREADS_ENV: &str = "NILCLEAN_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Counterexample,
    Vacuous,
    Error,
}

/// A fully serialized instance on which a conclusion failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ideal: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<usize>,
    pub reason: String,
}

impl Witness {
    pub fn ring(ring: &FiniteRing, reason: impl Into<String>) -> Witness {
        Witness {
            ring: ring.label().to_string(),
            ideal: None,
            element: None,
            reason: reason.into(),
        }
    }

    pub fn ideal(ideal: &Ideal, reason: impl Into<String>) -> Witness {
        Witness {
            ideal: Some(ideal.to_vec()),
            ..Witness::ring(ideal.ring(), reason)
        }
    }

    pub fn with_element(mut self, x: usize) -> Witness {
        self.element = Some(x);
        self
    }
}

/// How many instances exercised each implication of an equivalence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Directions {
    pub forward: usize,
    pub converse: usize,
}

/// Verdict of one reading of a statement that admits several.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reading {
    pub name: String,
    pub verdict: Verdict,
    pub hypotheses_met: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub directions: Option<Directions>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub paper_result: String,
    pub instances_tested: usize,
    pub hypotheses_met: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub directions: Option<Directions>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub readings: Vec<Reading>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub millis: Option<u64>,
}

/// Accumulates instance counts and the first counterexample of one check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    tested: usize,
    met: usize,
    directions: Option<Directions>,
    witness: Option<Witness>,
    readings: Vec<Reading>,
    notes: Vec<String>,
}

impl Tally {
    /// An instance that fails the structural hypotheses.
    pub(crate) fn skip(&mut self) {
        self.tested += 1;
    }

    pub(crate) fn skip_n(&mut self, n: usize) {
        self.tested += n;
    }

    /// `hypothesis => conclusion`; `conclusion` returns a witness on failure.
    pub(crate) fn implies(
        &mut self,
        hypothesis: bool,
        conclusion: impl FnOnce() -> Option<Witness>,
    ) {
        self.tested += 1;
        if !hypothesis {
            return;
        }
        self.met += 1;
        if let Some(w) = conclusion() {
            self.fail(w);
        }
    }

    /// `lhs <=> rhs` on an instance satisfying the structural hypotheses.
    pub(crate) fn iff(&mut self, lhs: bool, rhs: bool, witness: impl FnOnce() -> Witness) {
        self.tested += 1;
        self.met += 1;
        let d = self.directions.get_or_insert_with(Directions::default);
        d.forward += lhs as usize;
        d.converse += rhs as usize;
        if lhs != rhs {
            let mut w = witness();
            let dir = if lhs { "forward" } else { "converse" };
            w.reason = format!("{dir} implication fails: {}", w.reason);
            self.fail(w);
        }
    }

    /// Records a failed auxiliary assertion on an already counted instance.
    pub(crate) fn fail(&mut self, w: Witness) {
        if self.witness.is_none() {
            self.witness = Some(w);
        }
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn verdict(&self) -> Verdict {
        if self.witness.is_some() {
            Verdict::Counterexample
        } else if self.met == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Verified
        }
    }

    pub(crate) fn into_reading(self, name: &str) -> Reading {
        Reading {
            name: name.to_string(),
            verdict: self.verdict(),
            hypotheses_met: self.met,
            directions: self.directions,
            witness: self.witness,
        }
    }

    /// Folds a sub-reading into this tally; a failing reading fails the check.
    pub(crate) fn absorb(&mut self, sub: Tally, name: &str) {
        self.tested = self.tested.max(sub.tested);
        self.met = self.met.max(sub.met);
        if let Some(w) = &sub.witness {
            let mut w = w.clone();
            w.reason = format!("{name} reading: {}", w.reason);
            self.fail(w);
        }
        self.readings.push(sub.into_reading(name));
    }
}

type CheckFn = fn(&Context, &mut Tally) -> Result<()>;

/// One registered check.
pub struct TheoremCheck {
    pub id: &'static str,
    pub paper_result: &'static str,
    /// Non-commutative instances are counted but never meet the hypotheses.
    pub commutative_only: bool,
    run: CheckFn,
}

impl std::fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TheoremCheck")
            .field("id", &self.id)
            .finish()
    }
}

impl TheoremCheck {
    pub fn run(&self, ctx: &Context) -> TheoremReport {
        let start = Instant::now();
        let mut tally = Tally::default();
        let outcome = (self.run)(ctx, &mut tally);
        let millis = ctx
            .config()
            .record_timings
            .then(|| start.elapsed().as_millis() as u64);
        let (verdict, error) = match outcome {
            Ok(()) => (tally.verdict(), None),
            Err(e) => (Verdict::Error, Some(e.to_string())),
        };
        TheoremReport {
            id: self.id.to_string(),
            paper_result: self.paper_result.to_string(),
            instances_tested: tally.tested,
            hypotheses_met: tally.met,
            directions: tally.directions,
            verdict,
            witness: tally.witness,
            readings: tally.readings,
            notes: tally.notes,
            error,
            millis,
        }
    }
}

/// Every registered check in its fixed report order.
pub fn registry() -> &'static [TheoremCheck] {
    checks::REGISTRY
}

pub fn find_check(id: &str) -> Result<&'static TheoremCheck> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// The family the suite runs over unless overridden.
pub fn default_family() -> Vec<RingSpec> {
    [
        "Z2",
        "Z3",
        "Z4",
        "Z6",
        "Z8",
        "Z9",
        "Z12",
        "Z16",
        "Z27",
        "Z4xZ3",
        "T2(Z2)",
        "T2(Z4)",
        "T3(Z2)",
        "Id(4,2)",
        "Id(8,2)",
        "Id(4,4)",
        "MZ(4,2,2)",
        "MZ(2,2,2)",
    ]
    .iter()
    .map(|s| RingSpec::parse(s).expect("default family parses"))
    .collect()
}

fn thread_count(config: &CheckConfig) -> Option<usize> {
    config.threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
    })
}

/// Runs the checks named in `ids` (all when `None`) in registry order.
///
/// Building the family, including axiom verification of every ring, happens
/// before any check runs; a failure there aborts the whole run.
pub fn run_checks(ids: Option<&[String]>, config: &CheckConfig) -> Result<Vec<TheoremReport>> {
    let selected: Vec<&TheoremCheck> = match ids {
        None => registry().iter().collect(),
        Some(ids) => {
            let mut sel = ids
                .iter()
                .map(|id| find_check(id))
                .collect::<Result<Vec<_>>>()?;
            sel.sort_by_key(|c| registry().iter().position(|r| r.id == c.id));
            sel.dedup_by_key(|c| c.id);
            sel
        }
    };
    let ctx = Context::new(config.clone())?;
    let run = || -> Vec<TheoremReport> { selected.par_iter().map(|c| c.run(&ctx)).collect() };
    match thread_count(config) {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::BadParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

pub fn run_all(config: &CheckConfig) -> Result<Vec<TheoremReport>> {
    run_checks(None, config)
}

pub fn run_check(id: &str, config: &CheckConfig) -> Result<TheoremReport> {
    let check = find_check(id)?;
    let ctx = Context::new(config.clone())?;
    Ok(check.run(&ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_unique_ids() {
        let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), 27);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn unknown_check() {
        assert!(matches!(
            run_check("nope", &CheckConfig::empty()),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn empty_family_is_vacuous() {
        let reports = run_all(&CheckConfig::empty()).unwrap();
        assert_eq!(reports.len(), 27);
        for r in &reports {
            assert_eq!(r.verdict, Verdict::Vacuous, "{}", r.id);
        }
    }

    #[test]
    fn commutative_filter() {
        let config = CheckConfig::with_family(&["T2(Z2)"]);
        let r = run_check("mmm", &config).unwrap();
        assert_eq!(r.verdict, Verdict::Vacuous);
        assert!(r.instances_tested > 0);
    }

    #[test]
    fn tally_iff_directions() {
        let mut t = Tally::default();
        t.iff(true, true, || unreachable!());
        t.iff(false, false, || unreachable!());
        t.iff(false, true, || Witness {
            ring: "Z2".into(),
            ideal: None,
            element: None,
            reason: "x".into(),
        });
        assert_eq!(
            t.directions,
            Some(Directions {
                forward: 1,
                converse: 2
            })
        );
        assert_eq!(t.verdict(), Verdict::Counterexample);
        assert!(t.witness.unwrap().reason.starts_with("converse"));
    }
}
