//! JSON formats for complexes, morphisms, cells, zigzags and squares.
//!
//! Wherever a complex is expected, either an inline object or a path string
//! (resolved against the directory of the enclosing file) is accepted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adc::{BasedADC, SteinerArray};
use crate::chain::{Chain, Id};
use crate::colim::{Square, Zigzag};
use crate::error::{Error, Result};
use crate::morphism::ADCMorphism;

type Table = BTreeMap<Id, BTreeMap<Id, i64>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AdcFile {
    basis: Vec<BasisEntry>,
    #[serde(default)]
    diff: Table,
    #[serde(default)]
    aug: BTreeMap<Id, i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisEntry {
    id: Id,
    deg: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AdcRef {
    Path(String),
    Inline(Value),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    source: AdcRef,
    target: AdcRef,
    map: Table,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZigzagFile {
    x: Vec<AdcRef>,
    y: Vec<AdcRef>,
    f: Vec<Table>,
    g: Vec<Table>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareFile {
    a: AdcRef,
    b: AdcRef,
    m: AdcRef,
    n: AdcRef,
    ab: Table,
    am: Table,
    bn: Table,
    mn: Table,
}

pub fn adc_from_value(v: Value) -> Result<BasedADC> {
    let f: AdcFile = serde_json::from_value(v)?;
    BasedADC::new(f.basis.into_iter().map(|b| (b.id, b.deg)), f.diff, f.aug)
}

pub fn adc_from_str(s: &str) -> Result<BasedADC> {
    adc_from_value(serde_json::from_str(s)?)
}

/// Zero entries are omitted, so the output is canonical.
pub fn adc_to_value(k: &BasedADC) -> Value {
    let f = AdcFile {
        basis: k.basis().map(|b| BasisEntry { id: b.id, deg: b.deg }).collect(),
        diff: k.diff_table().into_iter().filter(|(_, t)| !t.is_empty()).collect(),
        aug: k.aug_table().iter().filter(|(_, &e)| e != 0).map(|(i, &e)| (i.clone(), e)).collect(),
    };
    serde_json::to_value(f).expect("serializable")
}

pub fn read_adc(path: &Path) -> Result<BasedADC> {
    adc_from_str(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn resolve(r: AdcRef, base: &Path) -> Result<Arc<BasedADC>> {
    match r {
        AdcRef::Path(p) => {
            let mut full = PathBuf::from(base);
            full.push(p);
            read_adc(&full).map(Arc::new)
        }
        AdcRef::Inline(v) => adc_from_value(v).map(Arc::new),
    }
}

/// `base` is the directory against which path references are resolved.
pub fn morphism_from_value(v: Value, base: &Path) -> Result<ADCMorphism> {
    let f: MorphismFile = serde_json::from_value(v)?;
    ADCMorphism::new(resolve(f.source, base)?, resolve(f.target, base)?, f.map)
}

pub fn morphism_to_value(f: &ADCMorphism) -> Value {
    serde_json::json!({
        "source": adc_to_value(f.source()),
        "target": adc_to_value(f.target()),
        "map": f.map_table(),
    })
}

pub fn read_morphism(path: &Path) -> Result<ADCMorphism> {
    morphism_from_value(serde_json::from_str(&read(path)?)?, parent(path))
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

/// Row `i` is the pair `[minus, plus]` of chains of degree `i`.
pub fn cell_from_value(v: Value) -> Result<SteinerArray> {
    let rows: Vec<(BTreeMap<Id, i64>, BTreeMap<Id, i64>)> = serde_json::from_value(v)?;
    if rows.is_empty() {
        return Err(Error::Format("a cell has at least one row".into()));
    }
    Ok(SteinerArray::new(
        rows.into_iter()
            .enumerate()
            .map(|(i, (m, p))| (Chain::from_terms(i, m), Chain::from_terms(i, p)))
            .collect(),
    ))
}

pub fn cell_to_value(c: &SteinerArray) -> Value {
    let terms = |x: &Chain| x.iter().map(|(i, v)| (i.clone(), v)).collect::<BTreeMap<_, _>>();
    Value::Array(c.rows.iter().map(|(m, p)| serde_json::json!([terms(m), terms(p)])).collect())
}

pub fn read_cell(path: &Path) -> Result<SteinerArray> {
    cell_from_value(serde_json::from_str(&read(path)?)?)
}

/// `{"x": [X_0..X_r], "y": [Y_0..Y_{r-1}], "f": [...], "g": [...]}` with
/// `f_j : Y_j → X_j` and `g_j : Y_j → X_{j+1}` given as maps.
pub fn zigzag_from_value(v: Value, base: &Path) -> Result<Zigzag> {
    let z: ZigzagFile = serde_json::from_value(v)?;
    if z.y.len() + 1 != z.x.len() || z.f.len() != z.y.len() || z.g.len() != z.y.len() {
        return Err(Error::ShapeMismatch("zigzag needs |x| = |y| + 1 = |f| + 1 = |g| + 1".into()));
    }
    let xs = z.x.into_iter().map(|r| resolve(r, base)).collect::<Result<Vec<_>>>()?;
    let ys = z.y.into_iter().map(|r| resolve(r, base)).collect::<Result<Vec<_>>>()?;
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for (j, (f, g)) in z.f.into_iter().zip(z.g).enumerate() {
        fs.push(ADCMorphism::new(ys[j].clone(), xs[j].clone(), f)?);
        gs.push(ADCMorphism::new(ys[j].clone(), xs[j + 1].clone(), g)?);
    }
    Zigzag::new(xs, fs, gs)
}

pub fn read_zigzag(path: &Path) -> Result<Zigzag> {
    zigzag_from_value(serde_json::from_str(&read(path)?)?, parent(path))
}

pub fn zigzag_to_value(z: &Zigzag) -> Value {
    serde_json::json!({
        "x": z.xs.iter().map(|x| adc_to_value(x)).collect::<Vec<_>>(),
        "y": z.fs.iter().map(|f| adc_to_value(f.source())).collect::<Vec<_>>(),
        "f": z.fs.iter().map(ADCMorphism::map_table).collect::<Vec<_>>(),
        "g": z.gs.iter().map(ADCMorphism::map_table).collect::<Vec<_>>(),
    })
}

/// The square `A → B → N`, `A → M → N`.
pub fn square_from_value(v: Value, base: &Path) -> Result<Square> {
    let s: SquareFile = serde_json::from_value(v)?;
    let (a, b) = (resolve(s.a, base)?, resolve(s.b, base)?);
    let (m, n) = (resolve(s.m, base)?, resolve(s.n, base)?);
    Square::new(
        ADCMorphism::new(a.clone(), b.clone(), s.ab)?,
        ADCMorphism::new(a, m.clone(), s.am)?,
        ADCMorphism::new(b, n.clone(), s.bn)?,
        ADCMorphism::new(m, n, s.mn)?,
    )
}

pub fn read_square(path: &Path) -> Result<Square> {
    square_from_value(serde_json::from_str(&read(path)?)?, parent(path))
}

pub fn square_to_value(sq: &Square) -> Value {
    serde_json::json!({
        "a": adc_to_value(sq.a()),
        "b": adc_to_value(sq.b()),
        "m": adc_to_value(sq.m()),
        "n": adc_to_value(sq.n()),
        "ab": sq.ab.map_table(),
        "am": sq.am.map_table(),
        "bn": sq.bn.map_table(),
        "mn": sq.mn.map_table(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gray;

    #[test]
    fn adc_round_trip() {
        let k = gray::cylinder(&gray::interval());
        let back = adc_from_value(adc_to_value(&k)).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"basis":[{"id":"x","deg":0}],"aug":{"x":1},"extra":1}"#;
        assert!(adc_from_str(bad).is_err());
        let bad = r#"{"basis":[{"id":"x","deg":0,"colour":2}]}"#;
        assert!(adc_from_str(bad).is_err());
    }

    #[test]
    fn malformed_input_errors() {
        for s in ["", "[]", "{", r#"{"basis":[{"id":"x","deg":-1}]}"#, r#"{"basis":[{"id":"x","deg":1}],"diff":{"x":{"y":1}}}"#] {
            assert!(adc_from_str(s).is_err(), "{s}");
        }
    }

    #[test]
    fn cell_round_trip() {
        let k = gray::interval();
        let c = crate::adc::atom(&k, "[1]").unwrap();
        assert_eq!(cell_from_value(cell_to_value(&c)).unwrap(), c);
    }

    #[test]
    fn morphism_round_trip() {
        let f = gray::cylinder_end(&gray::interval(), 1);
        let back = morphism_from_value(morphism_to_value(&f), Path::new(".")).unwrap();
        assert_eq!(back, f);
    }
}
