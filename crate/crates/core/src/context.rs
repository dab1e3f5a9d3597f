use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Float, Rational};

use crate::asymptotic::{build_lambda_terms, TermPoly};
use crate::constants::{ConstantKind, ConstantRecord};
use crate::error::Result;
use crate::mpcore::{BernoulliCache, PrecisionContext};

/// How the constants `L_k` are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ConstantStrategy {
    /// Pick `(w, tail terms)` so that the error bound meets the target.
    #[default]
    Auto,
    /// Use exactly this trial point and tail length.
    Fixed { w: u64, tail_terms: usize },
}

type ConstKey = (ConstantKind, i64, u32, ConstantStrategy);

#[derive(Debug, Default)]
pub(crate) struct Memo {
    terms: RwLock<HashMap<(i32, usize), Arc<TermPoly>>>,
    constants: RwLock<HashMap<ConstKey, ConstantRecord>>,
}

impl Memo {
    fn global() -> Arc<Memo> {
        static GLOBAL: OnceLock<Arc<Memo>> = OnceLock::new();
        GLOBAL.get_or_init(|| Arc::new(Memo::default())).clone()
    }
}

/// Everything a computation needs: precision, the Bernoulli table, the memo
/// of constants and expansions, and any parameter overrides.
///
/// Cloning is cheap; clones share their caches.
#[derive(Debug, Clone)]
pub struct Context {
    precision: PrecisionContext,
    bernoulli: Arc<BernoulliCache>,
    memo: Arc<Memo>,
    strategy: ConstantStrategy,
    lambda_terms: Option<usize>,
}

impl Context {
    pub fn new(target_digits: u32) -> Result<Self> {
        Ok(Self::with_precision(PrecisionContext::new(target_digits)?))
    }

    pub fn with_precision(precision: PrecisionContext) -> Self {
        Self {
            precision,
            bernoulli: BernoulliCache::global(),
            memo: Memo::global(),
            strategy: ConstantStrategy::Auto,
            lambda_terms: None,
        }
    }

    pub fn with_strategy(mut self, strategy: ConstantStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Fixes the number of tail terms used when evaluating expansions at
    /// shifted arguments. `None` selects it from the precision.
    pub fn with_lambda_terms(mut self, terms: Option<usize>) -> Self {
        self.lambda_terms = terms;
        self
    }

    /// Same settings, but `B_n` reads as `value`. Gets private caches so
    /// the shared ones stay clean.
    pub fn with_corrupted_bernoulli(mut self, n: usize, value: Rational) -> Self {
        self.bernoulli = Arc::new(BernoulliCache::with_corrupted(n, value));
        self.memo = Arc::new(Memo::default());
        self
    }

    pub fn precision(&self) -> &PrecisionContext {
        &self.precision
    }

    pub fn target_digits(&self) -> u32 {
        self.precision.target_digits()
    }

    pub fn bits(&self) -> u32 {
        self.precision.bits()
    }

    pub fn strategy(&self) -> ConstantStrategy {
        self.strategy
    }

    pub fn lambda_terms(&self) -> Option<usize> {
        self.lambda_terms
    }

    pub fn bernoulli(&self) -> &BernoulliCache {
        &self.bernoulli
    }

    pub fn real<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    /// Smallest argument at which the expansions are evaluated directly;
    /// anything below is shifted up to it.
    pub fn asymptotic_threshold(&self) -> u64 {
        let scaled = (0.9 * self.target_digits() as f64).ceil() as u64;
        scaled.max(20)
    }

    /// Tail length used at shifted arguments when none is fixed.
    pub fn auto_lambda_terms(&self) -> usize {
        self.lambda_terms
            .unwrap_or_else(|| (self.precision.working_digits() as usize).clamp(20, 200))
    }

    pub(crate) fn term_poly(&self, k: i32, tail_terms: usize) -> Result<Arc<TermPoly>> {
        if let Some(p) = self
            .memo
            .terms
            .read()
            .expect("memo poisoned")
            .get(&(k, tail_terms))
        {
            return Ok(p.clone());
        }
        let poly = Arc::new(build_lambda_terms(&self.bernoulli, k, tail_terms)?);
        self.memo
            .terms
            .write()
            .expect("memo poisoned")
            .entry((k, tail_terms))
            .or_insert_with(|| poly.clone());
        Ok(poly)
    }

    pub(crate) fn cached_constant(&self, kind: ConstantKind, k: i64) -> Option<ConstantRecord> {
        self.memo
            .constants
            .read()
            .expect("memo poisoned")
            .get(&(kind, k, self.bits(), self.strategy))
            .cloned()
    }

    pub(crate) fn store_constant(&self, record: &ConstantRecord) {
        self.memo
            .constants
            .write()
            .expect("memo poisoned")
            .insert(
                (record.kind, record.k, self.bits(), self.strategy),
                record.clone(),
            );
    }
}
