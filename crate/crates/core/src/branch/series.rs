use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite Puiseux series `sum c_k t^{e_k} + O(t^T)` with exact rational
/// exponents and coefficients. `truncation_order == None` means the listed
/// terms are the whole series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<BigRational, BigRational>,
    truncation_order: Option<BigRational>,
}

impl TruncatedSeries {
    pub fn new(terms: Vec<(BigRational, BigRational)>, truncation_order: Option<BigRational>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut last: Option<&BigRational> = None;
        for (e, _) in &terms {
            if e.is_negative() {
                return Err(Error::Parse(format!("negative exponent {}", e)));
            }
            if let Some(prev) = last {
                if e <= prev {
                    return Err(Error::Parse("series exponents must be strictly increasing".into()));
                }
            }
            if let Some(t) = &truncation_order {
                if e >= t {
                    return Err(Error::Parse(format!("exponent {} is not below the truncation order {}", e, t)));
                }
            }
            last = Some(e);
        }
        for (e, c) in terms {
            if !c.is_zero() {
                map.insert(e, c);
            }
        }
        Ok(TruncatedSeries { terms: map, truncation_order })
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigRational::zero(), c);
        }
        TruncatedSeries { terms, truncation_order: None }
    }

    pub fn monomial(coefficient: BigRational, exponent: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        TruncatedSeries { terms, truncation_order: None }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    pub fn truncation_order(&self) -> Option<&BigRational> {
        self.truncation_order.as_ref()
    }

    /// Lower bound for the valuation of the true series: the first known
    /// exponent, or the truncation order when nothing is known below it.
    /// `None` means the series is exactly zero.
    fn valuation_bound(&self) -> Option<BigRational> {
        match (self.terms.keys().next(), &self.truncation_order) {
            (Some(e), _) => Some(e.clone()),
            (None, t) => t.clone(),
        }
    }

    /// Exponent of the leading term, if it is determined by the known terms.
    pub fn order(&self) -> Option<&BigRational> {
        self.terms.keys().next()
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = min_opt(&self.truncation_order, &other.truncation_order);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        finish(terms, trunc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return TruncatedSeries { terms: BTreeMap::new(), truncation_order: None };
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        TruncatedSeries { terms, truncation_order: self.truncation_order.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // the error of a product is governed by the other factor's valuation
        let bound = |t: &Option<BigRational>, v: Option<BigRational>| match (t, v) {
            (Some(t), Some(v)) => Some(t + v),
            _ => None,
        };
        let trunc = min_opt(
            &bound(&self.truncation_order, other.valuation_bound()),
            &bound(&other.truncation_order, self.valuation_bound()),
        );
        let mut terms: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                *terms.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        finish(terms, trunc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = TruncatedSeries::constant(BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

fn min_opt(a: &Option<BigRational>, b: &Option<BigRational>) -> Option<BigRational> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

fn finish(mut terms: BTreeMap<BigRational, BigRational>, trunc: Option<BigRational>) -> TruncatedSeries {
    terms.retain(|e, c| !c.is_zero() && trunc.as_ref().map_or(true, |t| e < t));
    TruncatedSeries { terms, truncation_order: trunc }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({})t^({})", c, e)).collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match &self.truncation_order {
            Some(t) => write!(f, "{} + O(t^{})", body, t),
            None => write!(f, "{}", body),
        }
    }
}

pub(crate) fn ratio(num: i64, den: i64) -> Result<BigRational> {
    if den == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}
