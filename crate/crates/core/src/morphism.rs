//! Morphisms of based complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::adc::{atom, is_strong_steiner, BasedADC, SteinerArray};
use crate::chain::{Chain, Id};
use crate::error::{Error, Result};

/// A positive augmented chain map, stored on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ADCMorphism {
    source: Arc<BasedADC>,
    target: Arc<BasedADC>,
    map: BTreeMap<Id, Chain>,
}

impl ADCMorphism {
    /// Validates degree preservation, positivity, and compatibility with `∂`
    /// and `e`. Source elements missing from `map` go to zero.
    pub fn new(
        source: Arc<BasedADC>,
        target: Arc<BasedADC>,
        map: BTreeMap<Id, BTreeMap<Id, i64>>,
    ) -> Result<Self> {
        let mut chains = BTreeMap::new();
        for (id, terms) in map {
            let d = source.deg(&id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            chains.insert(id, Chain::from_terms(d, terms));
        }
        Self::from_chains(source, target, chains)
    }

    pub fn from_chains(source: Arc<BasedADC>, target: Arc<BasedADC>, mut map: BTreeMap<Id, Chain>) -> Result<Self> {
        for b in source.basis() {
            let c = map.entry(b.id.clone()).or_insert_with(|| Chain::zero(b.deg));
            if c.deg() != b.deg {
                return Err(Error::DegreeMismatch(format!("`{}` is sent to degree {}", b.id, c.deg())));
            }
        }
        if let Some(extra) = map.keys().find(|k| !source.contains(k)) {
            return Err(Error::UnknownBasisElement(extra.clone()));
        }
        for (id, c) in &map {
            target.check_chain(c)?;
            if !c.is_positive() {
                return Err(Error::NotPositive { witness: id.clone() });
            }
        }
        let f = ADCMorphism { source, target, map };
        for b in f.source.basis() {
            if b.deg == 0 {
                let e = f.source.aug_of(&b.id).unwrap();
                if f.target.augment(&f.map[&b.id]) != e {
                    return Err(Error::NotAugmented { witness: b.id });
                }
            } else {
                let lhs = f.apply(f.source.diff_of(&b.id).unwrap())?;
                let rhs = f.target.boundary(&f.map[&b.id])?;
                if lhs != rhs {
                    return Err(Error::NotChainMap { witness: b.id });
                }
            }
        }
        Ok(f)
    }

    pub fn identity(k: Arc<BasedADC>) -> Self {
        let map = k.basis().map(|b| (b.id.clone(), Chain::basis(b.deg, b.id))).collect();
        ADCMorphism { source: k.clone(), target: k, map }
    }

    pub fn source(&self) -> &Arc<BasedADC> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BasedADC> {
        &self.target
    }

    /// Image of a basis element.
    pub fn image(&self, id: &str) -> Option<&Chain> {
        self.map.get(id)
    }

    pub fn table(&self) -> &BTreeMap<Id, Chain> {
        &self.map
    }

    /// Linear extension to chains of the source.
    pub fn apply(&self, x: &Chain) -> Result<Chain> {
        let mut out = Chain::zero(x.deg());
        for (id, k) in x.iter() {
            let c = self.map.get(id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            out = out.add_scaled(c, k)?;
        }
        Ok(out)
    }

    pub fn apply_array(&self, a: &SteinerArray) -> Result<SteinerArray> {
        let rows = a
            .rows
            .iter()
            .map(|(m, p)| Ok((self.apply(m)?, self.apply(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SteinerArray { rows })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ADCMorphism) -> Result<ADCMorphism> {
        compose_morphism(g, self)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.map.iter().all(|(k, c)| c.as_basis_element().is_some_and(|i| i == k))
    }

    /// Nested-map form of the table (zero images omitted).
    pub fn map_table(&self) -> BTreeMap<Id, BTreeMap<Id, i64>> {
        self.map
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.clone(), c.coeff_map().clone()))
            .collect()
    }
}

/// `g ∘ f`.
pub fn compose_morphism(g: &ADCMorphism, f: &ADCMorphism) -> Result<ADCMorphism> {
    if f.target != g.source && *f.target != *g.source {
        return Err(Error::SourceTargetMismatch);
    }
    let map = f
        .map
        .iter()
        .map(|(k, c)| Ok((k.clone(), g.apply(c)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ADCMorphism { source: f.source.clone(), target: g.target.clone(), map })
}

/// Checks that every basis element goes to zero or to a basis element whose
/// atom is the image of the original atom. Returns the first failing element.
pub fn quasirigid_witness(f: &ADCMorphism) -> Result<Option<Id>> {
    if !is_strong_steiner(&f.source) || !is_strong_steiner(&f.target) {
        return Err(Error::PreconditionViolated("quasi-rigidity needs strong Steiner complexes".into()));
    }
    for b in f.source.ids() {
        let img = &f.map[b];
        if img.is_zero() {
            continue;
        }
        let Some(c) = img.as_basis_element() else {
            return Ok(Some(b.clone()));
        };
        let lhs = f.apply_array(&atom(&f.source, b)?)?;
        if lhs != atom(&f.target, c)? {
            return Ok(Some(b.clone()));
        }
    }
    Ok(None)
}

pub fn is_quasirigid(f: &ADCMorphism) -> Result<bool> {
    Ok(quasirigid_witness(f)?.is_none())
}
