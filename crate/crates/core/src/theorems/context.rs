use std::sync::{Arc, OnceLock};

use crate::classify::{jacobson_radical, DEFAULT_COMPLETE_SET_SIZE};
use crate::constructors::DEFAULT_ORDER_CAP;
use crate::constructors::{make_product, make_quotient, make_upper_triangular, Projection};
use crate::error::{Error, Result};
use crate::ideals::{all_ideals, Ideal};
use crate::ring::{AxiomMode, FiniteRing, Structure, EXHAUSTIVE_AXIOM_LIMIT};
use crate::spec::RingSpec;

use super::default_family;

pub const DEFAULT_IDEAL_CAP: usize = 512;

/// Rings and caps a suite run ranges over.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub family: Vec<RingSpec>,
    /// Rings without a spec (e.g. imported tables); they pass the same axiom gate.
    pub extra_rings: Vec<Arc<FiniteRing>>,
    /// `2` in `Z_{2^n}` is checked for `n = 1..=nil_index_sweep`.
    pub nil_index_sweep: u32,
    pub order_cap: usize,
    pub ideal_cap: usize,
    /// Largest order of triangular rings built over family members.
    pub derived_cap: usize,
    /// Largest order of pairwise products built from family members.
    pub product_cap: usize,
    pub complete_set_size: usize,
    pub record_timings: bool,
    /// Worker threads; falls back to `NILCLEAN_THREADS`, then rayon's default.
    pub threads: Option<usize>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            family: default_family(),
            extra_rings: Vec::new(),
            nil_index_sweep: 10,
            order_cap: DEFAULT_ORDER_CAP,
            ideal_cap: DEFAULT_IDEAL_CAP,
            derived_cap: 64,
            product_cap: 48,
            complete_set_size: DEFAULT_COMPLETE_SET_SIZE,
            record_timings: false,
            threads: None,
        }
    }
}

impl CheckConfig {
    /// No rings and no parameter sweeps: every check is vacuous.
    pub fn empty() -> Self {
        CheckConfig {
            family: Vec::new(),
            nil_index_sweep: 0,
            ..CheckConfig::default()
        }
    }

    /// Default caps over the given spec strings; panics on a bad spec.
    pub fn with_family(specs: &[&str]) -> Self {
        CheckConfig {
            family: specs
                .iter()
                .map(|s| RingSpec::parse(s).expect("valid ring spec"))
                .collect(),
            nil_index_sweep: 0,
            ..CheckConfig::default()
        }
    }
}

type QuotientSlot = OnceLock<Result<(Arc<FiniteRing>, Projection)>>;

/// A ring together with lazily computed ideal data.
pub struct Instance {
    ring: Arc<FiniteRing>,
    ideal_cap: usize,
    ideals: OnceLock<Result<Vec<Ideal>>>,
    quotients: OnceLock<Vec<QuotientSlot>>,
}

impl Instance {
    pub fn new(ring: Arc<FiniteRing>, ideal_cap: usize) -> Instance {
        Instance {
            ring,
            ideal_cap,
            ideals: OnceLock::new(),
            quotients: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn ideals(&self) -> Result<&[Ideal]> {
        match self
            .ideals
            .get_or_init(|| all_ideals(&self.ring, self.ideal_cap))
        {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn jacobson(&self) -> Result<Ideal> {
        jacobson_radical(&self.ring)
    }

    pub fn ideal_index(&self, ideal: &Ideal) -> Result<usize> {
        self.ideals()?
            .iter()
            .position(|i| i == ideal)
            .ok_or_else(|| Error::InternalInvariantViolation("ideal missing from lattice".into()))
    }

    /// `R/I` for the ideal at position `k` of [`Instance::ideals`].
    pub fn quotient(&self, k: usize) -> Result<&(Arc<FiniteRing>, Projection)> {
        let ideals = self.ideals()?;
        let slots = self
            .quotients
            .get_or_init(|| (0..ideals.len()).map(|_| OnceLock::new()).collect());
        match slots[k].get_or_init(|| make_quotient(&self.ring, &ideals[k])) {
            Ok(q) => Ok(q),
            Err(e) => Err(e.clone()),
        }
    }

    pub fn quotient_by(&self, ideal: &Ideal) -> Result<&(Arc<FiniteRing>, Projection)> {
        self.quotient(self.ideal_index(ideal)?)
    }
}

pub(crate) struct ProductInstance {
    pub inst: Instance,
    pub parts: Vec<Arc<FiniteRing>>,
}

pub(crate) struct TriangularInstance {
    pub ring: Arc<FiniteRing>,
    pub size: usize,
    /// Index of the base ring in the family.
    pub base: usize,
}

/// Shared state of one suite run: the verified family and derived rings.
pub struct Context {
    config: CheckConfig,
    family: Vec<Instance>,
    products: OnceLock<Result<Vec<ProductInstance>>>,
    triangulars: OnceLock<Result<Vec<TriangularInstance>>>,
}

impl Context {
    /// Builds every family ring and gates it on the ring axioms.
    pub fn new(config: CheckConfig) -> Result<Context> {
        let mut rings = config
            .family
            .iter()
            .map(|s| s.build(config.order_cap))
            .collect::<Result<Vec<_>>>()?;
        rings.extend(config.extra_rings.iter().cloned());
        for ring in &rings {
            let mode = if ring.order() <= EXHAUSTIVE_AXIOM_LIMIT {
                AxiomMode::Exhaustive
            } else {
                AxiomMode::Sampled(100_000)
            };
            let report = ring.verify_axioms(mode)?;
            if !report.passed() {
                return Err(Error::AxiomFailure(Box::new(report)));
            }
        }
        let family = rings
            .into_iter()
            .map(|r| Instance::new(r, config.ideal_cap))
            .collect();
        Ok(Context {
            config,
            family,
            products: OnceLock::new(),
            triangulars: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &CheckConfig {
        &self.config
    }

    pub fn family(&self) -> &[Instance] {
        &self.family
    }

    /// Family rings that are products, then pairwise products of family rings
    /// up to `product_cap`.
    pub(crate) fn products(&self) -> Result<&[ProductInstance]> {
        let built = self.products.get_or_init(|| {
            let mut out: Vec<ProductInstance> = Vec::new();
            for inst in &self.family {
                if let Structure::Product { parts } = inst.ring().structure() {
                    out.push(ProductInstance {
                        inst: Instance::new(Arc::clone(inst.ring()), self.config.ideal_cap),
                        parts: parts.clone(),
                    });
                }
            }
            for i in 0..self.family.len() {
                for j in i..self.family.len() {
                    let (a, b) = (self.family[i].ring(), self.family[j].ring());
                    if a.order() * b.order() > self.config.product_cap {
                        continue;
                    }
                    let parts = vec![Arc::clone(a), Arc::clone(b)];
                    let ring = make_product(&parts, self.config.order_cap)?;
                    if out.iter().any(|p| p.inst.ring().label() == ring.label()) {
                        continue;
                    }
                    out.push(ProductInstance {
                        inst: Instance::new(ring, self.config.ideal_cap),
                        parts,
                    });
                }
            }
            Ok(out)
        });
        match built {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// `T_n(R)` for family rings `R` and `n` in `{2, 3}` up to `derived_cap`.
    pub(crate) fn triangulars(&self) -> Result<&[TriangularInstance]> {
        let built = self.triangulars.get_or_init(|| {
            let mut out = Vec::new();
            for (b, inst) in self.family.iter().enumerate() {
                for size in [2usize, 3] {
                    let order = (inst.ring().order() as u128).pow((size * (size + 1) / 2) as u32);
                    if order > self.config.derived_cap as u128 {
                        continue;
                    }
                    let ring = make_upper_triangular(inst.ring(), size, self.config.order_cap)?;
                    out.push(TriangularInstance {
                        ring,
                        size,
                        base: b,
                    });
                }
            }
            Ok(out)
        });
        match built {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }
}
