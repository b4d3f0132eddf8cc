//! Assembly of per-locus weights and the sum over fixed loci.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;
use unram_exact::{AlphaMonomial, BigRational, PsiLinear};

use crate::contributions::{
    base_contribution, end_contribution, node_smoothing, psi_dual_pairing, psi_integral,
    ruled_contribution, ContributionError,
};
use crate::fixedpoints::{
    base_tangent_weight, enumerate_chains, source_tangent_weight, Chain, Configuration,
    EnumerationError, NodeEnd, Shape,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalizeError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Contribution(#[from] ContributionError),
    #[error("factors of `{0}` do not multiply to a single monomial")]
    MixedPowers(String),
    #[error("fixed locus `{label}` has total {total}, not of alpha-degree 0")]
    NonzeroDegree {
        label: String,
        total: Box<AlphaMonomial>,
    },
}

/// Pole of the base component a chain hangs from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Zero,
    Infinity,
}

impl Side {
    fn prefix(self) -> &'static str {
        match self {
            Side::Zero => "zero",
            Side::Infinity => "infinity",
        }
    }
}

/// One labelled factor of a fixed-locus weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub label: String,
    pub value: PsiLinear,
}

/// Product of all factors along one chain, with each family's ψ integrated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEvaluation {
    pub chain: Arc<Chain>,
    pub factors: Vec<TraceEntry>,
    pub value: AlphaMonomial,
}

fn entry(label: String, value: PsiLinear) -> TraceEntry {
    TraceEntry { label, value }
}

fn scalar(q: BigRational) -> PsiLinear {
    PsiLinear::constant(AlphaMonomial::scalar(q))
}

/// Multiplies out one chain on the given side. Factors on the ∞ side are the
/// α ↦ −α images of the 0-side factors.
pub fn evaluate_chain(chain: Arc<Chain>, side: Side) -> Result<ChainEvaluation, LocalizeError> {
    let steps = chain.steps();
    let d = steps[0].degree();
    let mut factors = Vec::with_capacity(5 * steps.len());
    let mut value = AlphaMonomial::one();
    let mut left = base_tangent_weight(d);
    for (i, kind) in steps.iter().enumerate() {
        let n = i + 1;
        let node = node_smoothing(&left, &source_tangent_weight(kind, NodeEnd::In))?;
        value = &value * &node;
        factors.push(entry(format!("node{n}"), PsiLinear::constant(node)));

        let bundle = if kind.is_end_bubble() {
            end_contribution(kind)?
        } else {
            ruled_contribution(kind)?
        };
        factors.push(entry(format!("main{n}"), bundle.main.clone()));
        let mut step = bundle.main.const_part.clone();
        if bundle.main.has_psi() {
            let integral = match kind.shape() {
                Shape::Family { h, .. } if !kind.is_end_bubble() => {
                    factors.push(entry(
                        format!("psi{n}"),
                        scalar(psi_integral(kind.degree(), h)?),
                    ));
                    psi_integral(kind.degree(), h)?
                }
                _ => {
                    let q = psi_dual_pairing(kind)?;
                    factors.push(entry(format!("dual{n}"), scalar(q.clone())));
                    q
                }
            };
            step = step
                .checked_add(&bundle.main.psi_part.scale(&integral))
                .ok_or_else(|| LocalizeError::MixedPowers(chain.to_string()))?;
        }
        value = &value * &step;
        if bundle.auxiliary != AlphaMonomial::one() {
            value = &value * &bundle.auxiliary;
            factors.push(entry(
                format!("aux{n}"),
                PsiLinear::constant(bundle.auxiliary),
            ));
        }
        if !bundle.automorphism_scale.is_one() {
            value = value.scale(&bundle.automorphism_scale);
            factors.push(entry(format!("aut{n}"), scalar(bundle.automorphism_scale)));
        }
        left = source_tangent_weight(kind, NodeEnd::Out);
    }
    if side == Side::Infinity {
        value = value.alpha_flip();
        for f in &mut factors {
            f.value = f.value.alpha_flip();
        }
    }
    Ok(ChainEvaluation {
        chain,
        factors,
        value,
    })
}

/// Weight of one fixed locus with its full factor trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationReport {
    pub configuration: Configuration,
    pub per_factor_trace: Vec<TraceEntry>,
    pub total: AlphaMonomial,
}

fn assemble(
    configuration: Configuration,
    zero: &ChainEvaluation,
    infinity: &ChainEvaluation,
) -> Result<ConfigurationReport, LocalizeError> {
    let base = base_contribution(configuration.cover_degree);
    let total = &(&base * &zero.value) * &infinity.value;
    let mut trace = vec![entry("base".to_string(), PsiLinear::constant(base))];
    for (side, ev) in [(Side::Zero, zero), (Side::Infinity, infinity)] {
        for f in &ev.factors {
            trace.push(entry(
                format!("{}.{}", side.prefix(), f.label),
                f.value.clone(),
            ));
        }
    }
    if total.power() != 0 {
        let label = format!(
            "{} | {}",
            configuration.chain_zero, configuration.chain_infinity
        );
        return Err(LocalizeError::NonzeroDegree {
            label,
            total: Box::new(total),
        });
    }
    Ok(ConfigurationReport {
        configuration,
        per_factor_trace: trace,
        total,
    })
}

/// Multiplies out one fixed locus: base, both chains and every node.
pub fn configuration_contribution(
    cfg: &Configuration,
) -> Result<ConfigurationReport, LocalizeError> {
    let zero = evaluate_chain(Arc::clone(&cfg.chain_zero), Side::Zero)?;
    let infinity = evaluate_chain(Arc::clone(&cfg.chain_infinity), Side::Infinity)?;
    assemble(cfg.clone(), &zero, &infinity)
}

/// Serial or data-parallel evaluation. Both give bit-identical results.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Evaluation {
    Serial,
    #[default]
    Parallel,
}

/// All chains of one degree, evaluated on both sides.
pub struct SideTable {
    pub degree: u32,
    pub zero: Vec<ChainEvaluation>,
    pub infinity: Vec<ChainEvaluation>,
}

impl SideTable {
    pub fn new(d: u32, mode: Evaluation) -> Result<Self, LocalizeError> {
        let chains: Vec<Arc<Chain>> = enumerate_chains(d)?.into_iter().map(Arc::new).collect();
        let eval = |side: Side| -> Result<Vec<ChainEvaluation>, LocalizeError> {
            match mode {
                Evaluation::Serial => chains
                    .iter()
                    .map(|c| evaluate_chain(Arc::clone(c), side))
                    .collect(),
                Evaluation::Parallel => chains
                    .par_iter()
                    .map(|c| evaluate_chain(Arc::clone(c), side))
                    .collect(),
            }
        };
        Ok(Self {
            degree: d,
            zero: eval(Side::Zero)?,
            infinity: eval(Side::Infinity)?,
        })
    }

    pub fn len(&self) -> usize {
        self.zero.len() * self.infinity.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Report for the configuration with chain `i` over 0 and chain `j` over ∞.
    pub fn report(&self, i: usize, j: usize) -> Result<ConfigurationReport, LocalizeError> {
        let cfg = Configuration {
            cover_degree: self.degree,
            chain_zero: Arc::clone(&self.zero[i].chain),
            chain_infinity: Arc::clone(&self.infinity[j].chain),
        };
        assemble(cfg, &self.zero[i], &self.infinity[j])
    }

    /// Sum of all configuration weights. Each configuration's product is
    /// formed over a common denominator per side and accumulated as an exact
    /// integer, so the result does not depend on summation order.
    pub fn total(&self, mode: Evaluation) -> Result<BigRational, LocalizeError> {
        let base = base_contribution(self.degree);
        let (zn, zd, zp) = common_denominator(&self.zero)?;
        let (inn, ind, ip) = common_denominator(&self.infinity)?;
        if base.power() + zp + ip != 0 {
            let label = format!("degree {} sum", self.degree);
            let total = AlphaMonomial::new(BigRational::one(), base.power() + zp + ip);
            return Err(LocalizeError::NonzeroDegree {
                label,
                total: Box::new(total),
            });
        }
        let row = |a: &BigInt| inn.iter().fold(BigInt::zero(), |acc, b| acc + a * b);
        let numer: BigInt = match mode {
            Evaluation::Serial => zn.iter().map(row).fold(BigInt::zero(), |acc, x| acc + x),
            Evaluation::Parallel => zn.par_iter().map(row).reduce(BigInt::zero, |a, b| a + b),
        };
        Ok(base.coeff() * BigRational::new(numer, zd * ind))
    }
}

/// Integer numerators over the least common denominator, plus that
/// denominator and the shared α-power.
fn common_denominator(
    evals: &[ChainEvaluation],
) -> Result<(Vec<BigInt>, BigInt, i64), LocalizeError> {
    let power = evals.first().map_or(0, |e| e.value.power());
    let mut lcm = BigInt::one();
    for e in evals {
        if !e.value.is_zero() && e.value.power() != power {
            return Err(LocalizeError::MixedPowers(e.chain.to_string()));
        }
        lcm = lcm.lcm(e.value.coeff().denom());
    }
    let nums = evals
        .iter()
        .map(|e| e.value.coeff().numer() * (&lcm / e.value.coeff().denom()))
        .collect();
    Ok((nums, lcm, power))
}

/// Sum over all chains on one side, before pairing with the base.
pub fn side_sum(d: u32, side: Side) -> Result<PsiLinear, LocalizeError> {
    let mut acc = AlphaMonomial::zero();
    for chain in enumerate_chains(d)? {
        let ev = evaluate_chain(Arc::new(chain), side)?;
        acc = acc
            .checked_add(&ev.value)
            .ok_or_else(|| LocalizeError::MixedPowers(ev.chain.to_string()))?;
    }
    Ok(PsiLinear::constant(acc))
}

/// Sum of configuration weights for an explicit list, in the given order.
pub fn sum_configurations(
    configs: &[Configuration],
    mode: Evaluation,
) -> Result<BigRational, LocalizeError> {
    let coeff = |c: &Configuration| configuration_contribution(c).map(|r| r.total.coeff().clone());
    match mode {
        Evaluation::Serial => configs.iter().map(coeff).sum(),
        Evaluation::Parallel => configs
            .par_iter()
            .map(coeff)
            .try_reduce(BigRational::zero, |a, b| Ok(a + b)),
    }
}

/// The degree-d multiple-cover invariant: the sum over every fixed locus.
pub fn multiple_cover_invariant(d: u32) -> Result<BigRational, LocalizeError> {
    multiple_cover_invariant_with(d, Evaluation::Parallel)
}

pub fn multiple_cover_invariant_with(
    d: u32,
    mode: Evaluation,
) -> Result<BigRational, LocalizeError> {
    SideTable::new(d, mode)?.total(mode)
}
