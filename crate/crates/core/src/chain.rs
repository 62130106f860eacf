//! Integer chains over a named basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a basis element.
pub type Id = String;

/// A formal integer combination of basis elements of one degree.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    deg: usize,
    coeffs: BTreeMap<Id, i64>,
}

fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("chain coefficient overflow")
}

impl Chain {
    pub fn zero(deg: usize) -> Self {
        Chain { deg, coeffs: BTreeMap::new() }
    }

    pub fn basis(deg: usize, id: impl Into<Id>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(id.into(), 1);
        Chain { deg, coeffs }
    }

    /// Builds a chain from (id, coefficient) terms, summing repeats and
    /// dropping zeros.
    pub fn from_terms<I, S>(deg: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<Id>,
    {
        let mut c = Chain::zero(deg);
        for (id, k) in terms {
            c.add_term(id.into(), k);
        }
        c
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn coeff(&self, id: &str) -> i64 {
        self.coeffs.get(id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Id, i64)> + '_ {
        self.coeffs.iter().map(|(k, v)| (k, *v))
    }

    pub fn support(&self) -> impl Iterator<Item = &Id> + '_ {
        self.coeffs.keys()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.coeffs.values().all(|&v| v > 0)
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> i64 {
        self.coeffs.values().copied().fold(0, add_coeff)
    }

    /// The single basis element when `self` is exactly `1·b`.
    pub fn as_basis_element(&self) -> Option<&Id> {
        match self.coeffs.iter().next() {
            Some((id, 1)) if self.coeffs.len() == 1 => Some(id),
            _ => None,
        }
    }

    pub fn add_term(&mut self, id: Id, k: i64) {
        if k == 0 {
            return;
        }
        let v = add_coeff(self.coeff(&id), k);
        if v == 0 {
            self.coeffs.remove(&id);
        } else {
            self.coeffs.insert(id, v);
        }
    }

    fn check_deg(&self, other: &Chain) -> Result<()> {
        if self.deg != other.deg {
            return Err(Error::DegreeMismatch(format!(
                "chains of degree {} and {}",
                self.deg, other.deg
            )));
        }
        Ok(())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &Chain, k: i64) -> Result<Chain> {
        self.check_deg(other)?;
        let mut out = self.clone();
        for (id, v) in other.iter() {
            out.add_term(id.clone(), v.checked_mul(k).expect("chain coefficient overflow"));
        }
        Ok(out)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add_scaled(other, -1)
    }

    pub fn neg(&self) -> Chain {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero(self.deg);
        }
        Chain {
            deg: self.deg,
            coeffs: self
                .coeffs
                .iter()
                .map(|(id, v)| (id.clone(), v.checked_mul(k).expect("chain coefficient overflow")))
                .collect(),
        }
    }

    /// The positive part `(x)_+`.
    pub fn positive_part(&self) -> Chain {
        Chain {
            deg: self.deg,
            coeffs: self.coeffs.iter().filter(|(_, v)| **v > 0).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// The negative part `(x)_-`, itself a positive chain.
    pub fn negative_part(&self) -> Chain {
        Chain {
            deg: self.deg,
            coeffs: self.coeffs.iter().filter(|(_, v)| **v < 0).map(|(k, v)| (k.clone(), -*v)).collect(),
        }
    }

    /// `(positive, negative)` with `self = positive - negative`.
    pub fn parts(&self) -> (Chain, Chain) {
        (self.positive_part(), self.negative_part())
    }

    /// Coefficientwise minimum `x ∧ y`.
    pub fn meet(&self, other: &Chain) -> Result<Chain> {
        self.check_deg(other)?;
        let mut out = Chain::zero(self.deg);
        let ids: std::collections::BTreeSet<&Id> = self.support().chain(other.support()).collect();
        for id in ids {
            out.add_term(id.clone(), self.coeff(id).min(other.coeff(id)));
        }
        Ok(out)
    }

    /// True when `self ∧ other ≠ 0` for positive chains, i.e. they share a
    /// basis element.
    pub fn meets(&self, other: &Chain) -> bool {
        self.coeffs.keys().any(|k| other.coeffs.contains_key(k))
    }

    /// Restriction to the basis elements satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> Chain {
        Chain {
            deg: self.deg,
            coeffs: self.coeffs.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// Renames every basis element.
    pub fn map_ids(&self, mut f: impl FnMut(&str) -> Id) -> Chain {
        Chain::from_terms(self.deg, self.coeffs.iter().map(|(k, v)| (f(k), *v)))
    }

    pub(crate) fn coeff_map(&self) -> &BTreeMap<Id, i64> {
        &self.coeffs
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (id, v) in &self.coeffs {
            let (sign, mag) = if *v < 0 { ("-", -v) } else { ("+", *v) };
            if first {
                if *v < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{id}")?;
            first = false;
        }
        Ok(())
    }
}
