//! Gray operations on based complexes.
//!
//! Basis naming: `b⊗c` for tensors (factors containing `⊗` or `⋆` are
//! parenthesized), `b⊗{0}`, `b⊗{1}`, `b⊗[1]` for cylinders, `∅⋆1`, `b⋆∅`,
//! `b⋆1` for cones, `1⋆∅`, `∅⋆b`, `1⋆b` for ◦-cones, `{0}`, `{1}`, `[b,1]`
//! for suspensions and `{2}`, `e1@wedge` for the extra pole and segment of a
//! wedge.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::adc::BasedADC;
use crate::chain::{Chain, Id};
use crate::error::Result;
use crate::morphism::ADCMorphism;

pub const CONE_TIP: &str = "∅⋆1";
pub const COCONE_TIP: &str = "1⋆∅";
pub const POLE0: &str = "{0}";
pub const POLE1: &str = "{1}";
pub const POLE2: &str = "{2}";
pub const WEDGE_SEGMENT: &str = "e1@wedge";

/// A complex with named degree-0 basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedADC {
    pub complex: BasedADC,
    pub marks: BTreeMap<String, Id>,
}

impl PointedADC {
    fn new(complex: BasedADC, marks: &[(&str, &str)]) -> Self {
        let marks = marks.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        PointedADC { complex, marks }
    }

    pub fn mark(&self, name: &str) -> Option<&Id> {
        self.marks.get(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }
}

fn wrap(s: &str) -> String {
    if s.contains('⊗') || s.contains('⋆') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub fn tensor_name(b: &str, c: &str) -> Id {
    format!("{}⊗{}", wrap(b), wrap(c))
}

pub fn cone_name(b: &str, top: bool) -> Id {
    format!("{}⋆{}", wrap(b), if top { "1" } else { "∅" })
}

pub fn cocone_name(b: &str, top: bool) -> Id {
    format!("{}⋆{}", if top { "1" } else { "∅" }, wrap(b))
}

pub fn susp_name(b: &str) -> Id {
    format!("[{b},1]")
}

fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The point λD₀ with basis `pt`.
pub fn point() -> BasedADC {
    BasedADC::builder().point("pt").build().expect("valid")
}

/// λ[1] with basis `{0}`, `{1}`, `[1]`.
pub fn interval() -> BasedADC {
    BasedADC::builder().point(POLE0).point(POLE1).arrow("[1]", 1, POLE0, POLE1).build().expect("valid")
}

/// Gray tensor product with the Leibniz differential
/// `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`.
pub fn tensor(k: &BasedADC, l: &BasedADC) -> BasedADC {
    let mut basis = BTreeMap::new();
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::new();
    for b in k.basis() {
        for c in l.basis() {
            let id = tensor_name(&b.id, &c.id);
            let deg = b.deg + c.deg;
            basis.insert(id.clone(), deg);
            if deg == 0 {
                aug.insert(id, k.aug_of(&b.id).unwrap() * l.aug_of(&c.id).unwrap());
                continue;
            }
            let mut d = Chain::zero(deg - 1);
            if b.deg > 0 {
                for (x, v) in k.diff_of(&b.id).unwrap().iter() {
                    d.add_term(tensor_name(x, &c.id), v);
                }
            }
            if c.deg > 0 {
                for (y, v) in l.diff_of(&c.id).unwrap().iter() {
                    d.add_term(tensor_name(&b.id, y), sign(b.deg) * v);
                }
            }
            diff.insert(id, d);
        }
    }
    BasedADC::from_chains(basis, diff, aug).expect("tensor of valid complexes is valid")
}

/// The Gray cylinder `K ⊗ λ[1]`.
pub fn cylinder(k: &BasedADC) -> BasedADC {
    tensor(k, &interval())
}

/// `K → K⊗[1]`, `x ↦ x⊗{end}`.
pub fn cylinder_end(k: &BasedADC, end: u8) -> ADCMorphism {
    let pole = if end == 0 { POLE0 } else { POLE1 };
    let map = k.basis().map(|b| (b.id.clone(), Chain::basis(b.deg, tensor_name(&b.id, pole)))).collect();
    ADCMorphism::from_chains(Arc::new(k.clone()), Arc::new(cylinder(k)), map).expect("valid inclusion")
}

pub(crate) fn cone_impl(k: &BasedADC, flip: bool) -> Result<PointedADC> {
    let mut basis = BTreeMap::from([(CONE_TIP.to_string(), 0)]);
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::from([(CONE_TIP.to_string(), 1)]);
    for b in k.basis() {
        let base = cone_name(&b.id, false);
        let top = cone_name(&b.id, true);
        basis.insert(base.clone(), b.deg);
        basis.insert(top.clone(), b.deg + 1);
        let mut dt = Chain::zero(b.deg);
        if b.deg == 0 {
            let e = k.aug_of(&b.id).unwrap();
            aug.insert(base.clone(), e);
            dt.add_term(CONE_TIP.to_string(), e);
            dt.add_term(base, -1);
        } else {
            let d = k.diff_of(&b.id).unwrap();
            diff.insert(base.clone(), d.map_ids(|x| cone_name(x, false)));
            for (x, v) in d.iter() {
                dt.add_term(cone_name(x, true), v);
            }
            let s = if flip { sign(b.deg) } else { -sign(b.deg) };
            dt.add_term(base, s);
        }
        diff.insert(top, dt);
    }
    let c = BasedADC::from_chains(basis, diff, aug)?;
    Ok(PointedADC::new(c, &[("tip", CONE_TIP)]))
}

/// `K⋆1`: the cylinder with `K⊗{1}` collapsed to the tip `∅⋆1`.
pub fn cone(k: &BasedADC) -> PointedADC {
    cone_impl(k, false).expect("cone of a valid complex is valid")
}

/// `1 co⋆ K`: the cylinder with `K⊗{0}` collapsed to the tip `1⋆∅`.
pub fn cocone(k: &BasedADC) -> PointedADC {
    let mut basis = BTreeMap::from([(COCONE_TIP.to_string(), 0)]);
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::from([(COCONE_TIP.to_string(), 1)]);
    for b in k.basis() {
        let base = cocone_name(&b.id, false);
        let top = cocone_name(&b.id, true);
        basis.insert(base.clone(), b.deg);
        basis.insert(top.clone(), b.deg + 1);
        let mut dt = Chain::zero(b.deg);
        if b.deg == 0 {
            let e = k.aug_of(&b.id).unwrap();
            aug.insert(base.clone(), e);
            dt.add_term(base, 1);
            dt.add_term(COCONE_TIP.to_string(), -e);
        } else {
            let d = k.diff_of(&b.id).unwrap();
            diff.insert(base.clone(), d.map_ids(|x| cocone_name(x, false)));
            for (x, v) in d.iter() {
                dt.add_term(cocone_name(x, true), v);
            }
            dt.add_term(base, sign(b.deg));
        }
        diff.insert(top, dt);
    }
    let c = BasedADC::from_chains(basis, diff, aug).expect("cocone of a valid complex is valid");
    PointedADC::new(c, &[("tip", COCONE_TIP)])
}

/// `[K,1]`: poles `{0}`, `{1}` and a shifted copy `[b,1]` of each generator.
pub fn suspend(k: &BasedADC) -> PointedADC {
    let c = suspension_between(k, POLE0, POLE1, &[]);
    PointedADC::new(c, &[("0", POLE0), ("1", POLE1)])
}

/// Suspension of `k` spanning `lo → hi`, plus extra generators given as
/// `(id, deg, boundary)`.
fn suspension_between(k: &BasedADC, lo: &str, hi: &str, extra: &[(&str, usize, &[(&str, i64)])]) -> BasedADC {
    let mut b = BasedADC::builder().point(POLE0).point(POLE1);
    for (id, deg, bd) in extra {
        if *deg == 0 {
            b = b.point(id);
        } else {
            b = b.cell(id, *deg, bd);
        }
    }
    let mut basis: Vec<(Id, usize)> = Vec::new();
    let mut diff: BTreeMap<Id, BTreeMap<Id, i64>> = BTreeMap::new();
    for g in k.basis() {
        let id = susp_name(&g.id);
        basis.push((id.clone(), g.deg + 1));
        let terms = if g.deg == 0 {
            let e = k.aug_of(&g.id).unwrap();
            BTreeMap::from([(hi.to_string(), e), (lo.to_string(), -e)])
        } else {
            k.diff_of(&g.id).unwrap().iter().map(|(x, v)| (susp_name(x), v)).collect()
        };
        diff.insert(id, terms);
    }
    let base = b.build().expect("valid poles");
    let mut all: Vec<(Id, usize)> = base.basis().map(|e| (e.id, e.deg)).collect();
    all.extend(basis);
    let mut d = base.diff_table();
    d.extend(diff);
    BasedADC::new(all, d, base.aug_table().clone()).expect("suspension of a valid complex is valid")
}

/// The wedge `[K,1]∨[1]` (right) or `[1]∨[K,1]` (left) on poles
/// `{0}`, `{1}`, `{2}`.
pub fn wedge(k: &BasedADC, side: Side) -> PointedADC {
    let c = match side {
        Side::Right => suspension_between(
            k,
            POLE0,
            POLE1,
            &[(POLE2, 0, &[]), (WEDGE_SEGMENT, 1, &[(POLE2, 1), (POLE1, -1)])],
        ),
        Side::Left => suspension_between(
            k,
            POLE1,
            POLE2,
            &[(POLE2, 0, &[]), (WEDGE_SEGMENT, 1, &[(POLE1, 1), (POLE0, -1)])],
        ),
    };
    PointedADC::new(c, &[("0", POLE0), ("1", POLE1), ("2", POLE2)])
}

/// The whiskering `▽: [K,1] → wedge(K, side)`: poles `{0} ↦ {0}`,
/// `{1} ↦ {2}`, and `[x,1] ↦ [x,1] + e(x)·e1@wedge` in degree 0.
pub fn whisker(k: &BasedADC, side: Side) -> ADCMorphism {
    let s = suspend(k).complex;
    let w = wedge(k, side).complex;
    let mut map = BTreeMap::new();
    map.insert(POLE0.to_string(), Chain::basis(0, POLE0));
    map.insert(POLE1.to_string(), Chain::basis(0, POLE2));
    for g in k.basis() {
        let id = susp_name(&g.id);
        let mut c = Chain::basis(g.deg + 1, id.clone());
        if g.deg == 0 {
            c.add_term(WEDGE_SEGMENT.to_string(), k.aug_of(&g.id).unwrap());
        }
        map.insert(id, c);
    }
    ADCMorphism::from_chains(Arc::new(s), Arc::new(w), map).expect("whiskering is a morphism")
}

/// `[f,1]: [K,1] → [L,1]`.
pub fn suspend_morphism(f: &ADCMorphism) -> ADCMorphism {
    let s = suspend(f.source()).complex;
    let t = suspend(f.target()).complex;
    let mut map = BTreeMap::new();
    map.insert(POLE0.to_string(), Chain::basis(0, POLE0));
    map.insert(POLE1.to_string(), Chain::basis(0, POLE1));
    for (id, c) in f.table() {
        map.insert(susp_name(id), Chain::from_terms(c.deg() + 1, c.iter().map(|(x, v)| (susp_name(x), v))));
    }
    ADCMorphism::from_chains(Arc::new(s), Arc::new(t), map).expect("suspension of a morphism is a morphism")
}

/// `K → K⋆1`, `x ↦ x⋆∅`.
pub fn cone_base(k: &BasedADC) -> ADCMorphism {
    let map = k.basis().map(|b| (b.id.clone(), Chain::basis(b.deg, cone_name(&b.id, false)))).collect();
    ADCMorphism::from_chains(Arc::new(k.clone()), Arc::new(cone(k).complex), map).expect("valid inclusion")
}

/// `K → 1 co⋆ K`, `x ↦ ∅⋆x`.
pub fn cocone_base(k: &BasedADC) -> ADCMorphism {
    let map = k.basis().map(|b| (b.id.clone(), Chain::basis(b.deg, cocone_name(&b.id, false)))).collect();
    ADCMorphism::from_chains(Arc::new(k.clone()), Arc::new(cocone(k).complex), map).expect("valid inclusion")
}

/// The collapse `K⊗[1] → K⋆1` of `K⊗{1}` onto the tip.
pub fn cone_quotient(k: &BasedADC) -> ADCMorphism {
    let mut map = BTreeMap::new();
    for b in k.basis() {
        map.insert(tensor_name(&b.id, POLE0), Chain::basis(b.deg, cone_name(&b.id, false)));
        map.insert(tensor_name(&b.id, "[1]"), Chain::basis(b.deg + 1, cone_name(&b.id, true)));
        let far = if b.deg == 0 {
            Chain::from_terms(0, [(CONE_TIP.to_string(), k.aug_of(&b.id).unwrap())])
        } else {
            Chain::zero(b.deg)
        };
        map.insert(tensor_name(&b.id, POLE1), far);
    }
    ADCMorphism::from_chains(Arc::new(cylinder(k)), Arc::new(cone(k).complex), map).expect("valid collapse")
}

/// The collapse `K⊗[1] → 1 co⋆ K` of `K⊗{0}` onto the tip.
pub fn cocone_quotient(k: &BasedADC) -> ADCMorphism {
    let mut map = BTreeMap::new();
    for b in k.basis() {
        map.insert(tensor_name(&b.id, POLE1), Chain::basis(b.deg, cocone_name(&b.id, false)));
        map.insert(tensor_name(&b.id, "[1]"), Chain::basis(b.deg + 1, cocone_name(&b.id, true)));
        let far = if b.deg == 0 {
            Chain::from_terms(0, [(COCONE_TIP.to_string(), k.aug_of(&b.id).unwrap())])
        } else {
            Chain::zero(b.deg)
        };
        map.insert(tensor_name(&b.id, POLE0), far);
    }
    ADCMorphism::from_chains(Arc::new(cylinder(k)), Arc::new(cocone(k).complex), map).expect("valid collapse")
}

/// `K⊗[1] → [K,1]`: collapses both ends.
pub fn cylinder_to_suspension(k: &BasedADC) -> ADCMorphism {
    let mut map = BTreeMap::new();
    for b in k.basis() {
        map.insert(tensor_name(&b.id, "[1]"), Chain::basis(b.deg + 1, susp_name(&b.id)));
        for (end, pole) in [(POLE0, POLE0), (POLE1, POLE1)] {
            let img = if b.deg == 0 {
                Chain::from_terms(0, [(pole.to_string(), k.aug_of(&b.id).unwrap())])
            } else {
                Chain::zero(b.deg)
            };
            map.insert(tensor_name(&b.id, end), img);
        }
    }
    ADCMorphism::from_chains(Arc::new(cylinder(k)), Arc::new(suspend(k).complex), map).expect("valid collapse")
}

/// `K⋆1 → [K,1]`: tip to `{1}`, base to `{0}`.
pub fn cone_to_suspension(k: &BasedADC) -> ADCMorphism {
    let mut map = BTreeMap::from([(CONE_TIP.to_string(), Chain::basis(0, POLE1))]);
    for b in k.basis() {
        map.insert(cone_name(&b.id, true), Chain::basis(b.deg + 1, susp_name(&b.id)));
        let img = if b.deg == 0 {
            Chain::from_terms(0, [(POLE0.to_string(), k.aug_of(&b.id).unwrap())])
        } else {
            Chain::zero(b.deg)
        };
        map.insert(cone_name(&b.id, false), img);
    }
    ADCMorphism::from_chains(Arc::new(cone(k).complex), Arc::new(suspend(k).complex), map).expect("valid collapse")
}

/// `1 co⋆ K → [K,1]`: tip to `{0}`, base to `{1}`.
pub fn cocone_to_suspension(k: &BasedADC) -> ADCMorphism {
    let mut map = BTreeMap::from([(COCONE_TIP.to_string(), Chain::basis(0, POLE0))]);
    for b in k.basis() {
        map.insert(cocone_name(&b.id, true), Chain::basis(b.deg + 1, susp_name(&b.id)));
        let img = if b.deg == 0 {
            Chain::from_terms(0, [(POLE1.to_string(), k.aug_of(&b.id).unwrap())])
        } else {
            Chain::zero(b.deg)
        };
        map.insert(cocone_name(&b.id, false), img);
    }
    ADCMorphism::from_chains(Arc::new(cocone(k).complex), Arc::new(suspend(k).complex), map).expect("valid collapse")
}

/// The map from the point picking a degree-0 basis element.
pub fn point_at(k: &BasedADC, id: &str) -> Result<ADCMorphism> {
    let map = BTreeMap::from([("pt".to_string(), BTreeMap::from([(id.to_string(), 1)]))]);
    ADCMorphism::new(Arc::new(point()), Arc::new(k.clone()), map)
}

/// The unique map to the point.
pub fn to_point(k: &BasedADC) -> ADCMorphism {
    let map = k
        .basis()
        .map(|b| {
            let c = if b.deg == 0 {
                Chain::from_terms(0, [("pt".to_string(), k.aug_of(&b.id).unwrap())])
            } else {
                Chain::zero(b.deg)
            };
            (b.id, c)
        })
        .collect();
    ADCMorphism::from_chains(Arc::new(k.clone()), Arc::new(point()), map).expect("augmentation map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::{dual, is_strong_steiner, Duality};

    fn d1() -> BasedADC {
        BasedADC::builder().point("e0m").point("e0p").arrow("e1", 1, "e0m", "e0p").build().unwrap()
    }

    fn ch(deg: usize, t: &[(&str, i64)]) -> Chain {
        Chain::from_terms(deg, t.iter().map(|(a, b)| (a.to_string(), *b)))
    }

    #[test]
    fn tensor_leibniz() {
        let t = tensor(&d1(), &interval());
        assert_eq!(t.degree_counts(), vec![4, 4, 1]);
        assert_eq!(
            t.diff_of("e1⊗[1]").unwrap(),
            &ch(1, &[("e0p⊗[1]", 1), ("e0m⊗[1]", -1), ("e1⊗{1}", -1), ("e1⊗{0}", 1)])
        );
        assert!(is_strong_steiner(&t));
    }

    #[test]
    fn cone_of_an_arrow() {
        let c = cone(&d1()).complex;
        assert_eq!(c.degree_counts(), vec![3, 3, 1]);
        assert_eq!(c.diff_of("e1⋆1").unwrap(), &ch(1, &[("e0p⋆1", 1), ("e0m⋆1", -1), ("e1⋆∅", 1)]));
        assert!(is_strong_steiner(&c));
    }

    #[test]
    fn flipped_cone_is_rejected() {
        assert!(matches!(
            cone_impl(&d1(), true),
            Err(crate::Error::DifferentialNotSquareZero { .. })
        ));
    }

    #[test]
    fn suspension_and_wedges() {
        let s = suspend(&d1()).complex;
        assert_eq!(s.degree_counts(), vec![2, 2, 1]);
        let w = wedge(&point(), Side::Right).complex;
        assert_eq!(w.degree_counts(), vec![3, 2]);
        assert_eq!(w.diff_of("[pt,1]").unwrap(), &ch(0, &[("{1}", 1), ("{0}", -1)]));
        let w = wedge(&point(), Side::Left).complex;
        assert_eq!(w.diff_of(WEDGE_SEGMENT).unwrap(), &ch(0, &[("{1}", 1), ("{0}", -1)]));
        assert!(suspend(&BasedADC::empty()).complex.degree_counts() == vec![2]);
    }

    #[test]
    fn whiskers_are_morphisms() {
        let w = whisker(&point(), Side::Left);
        assert_eq!(w.image("[pt,1]").unwrap(), &ch(1, &[("[pt,1]", 1), (WEDGE_SEGMENT, 1)]));
        assert_eq!(w.image("{1}").unwrap(), &ch(0, &[("{2}", 1)]));
        let w = whisker(&d1(), Side::Right);
        assert_eq!(w.image("[e1,1]").unwrap(), &ch(2, &[("[e1,1]", 1)]));
        assert!(!crate::morphism::is_quasirigid(&w).unwrap());
    }

    #[test]
    fn collapse_maps_validate() {
        for k in [point(), d1(), BasedADC::empty()] {
            cone_quotient(&k);
            cocone_quotient(&k);
            cylinder_to_suspension(&k);
            cone_to_suspension(&k);
            cocone_to_suspension(&k);
            cone_base(&k);
            cocone_base(&k);
            cylinder_end(&k, 0);
            cylinder_end(&k, 1);
        }
        let c = cocone(&d1()).complex;
        assert_eq!(dual(&dual(&c, &Duality::Full), &Duality::Full), c);
    }
}
