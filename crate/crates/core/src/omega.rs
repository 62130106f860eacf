//! Cells of ν(K): coherent Steiner arrays.

use std::collections::HashMap;

use crate::adc::{BasedADC, Sign, SteinerArray};
use crate::chain::Chain;
use crate::error::{Error, Result};

/// A coherent Steiner array over some complex.
pub type Cell = SteinerArray;

/// Checks positivity, boundary compatibility, top equality and coherence,
/// reporting the first failure.
pub fn is_cell(k: &BasedADC, a: &SteinerArray) -> std::result::Result<(), String> {
    a.check(k)?;
    for (c, s) in [(&a.rows[0].0, '-'), (&a.rows[0].1, '+')] {
        let e = k.augment(c);
        if e != 1 {
            return Err(format!("row 0{s} has augmentation {e}"));
        }
    }
    Ok(())
}

pub fn check_cell(k: &BasedADC, a: &SteinerArray) -> Result<()> {
    is_cell(k, a).map_err(Error::NotACell)
}

/// `d^α_k`: keep rows below `k` and replace row `k` by `(x_k^α, x_k^α)`.
pub fn boundary(c: &Cell, k: usize, sign: Sign) -> Result<Cell> {
    if k >= c.dim() {
        return Err(Error::IndexOutOfRange(format!("boundary {k} of a {}-cell", c.dim())));
    }
    let mut rows = c.rows[..k].to_vec();
    let x = c.row(k, sign).clone();
    rows.push((x.clone(), x));
    Ok(SteinerArray { rows })
}

/// `x *_k y`, defined when `d^-_k x = d^+_k y`.
pub fn compose_cells(x: &Cell, y: &Cell, k: usize) -> Result<Cell> {
    let n = x.dim();
    if y.dim() != n || k >= n {
        return Err(Error::NotComposable(format!(
            "cannot {k}-compose cells of dimensions {} and {}",
            n,
            y.dim()
        )));
    }
    for i in 0..k {
        if x.rows[i] != y.rows[i] {
            return Err(Error::NotComposable(format!("row {i} differs")));
        }
    }
    if x.rows[k].0 != y.rows[k].1 {
        return Err(Error::NotComposable(format!("source of the first and target of the second differ at row {k}")));
    }
    let mut rows = x.rows[..k].to_vec();
    rows.push((y.rows[k].0.clone(), x.rows[k].1.clone()));
    for i in k + 1..=n {
        rows.push((x.rows[i].0.add(&y.rows[i].0)?, x.rows[i].1.add(&y.rows[i].1)?));
    }
    Ok(SteinerArray { rows })
}

/// `1^m_x`: pads `x` with zero rows up to dimension `m`.
pub fn unit_cell(x: &Cell, m: usize) -> Result<Cell> {
    if m < x.dim() {
        return Err(Error::BadDimension(format!("unit of dimension {m} on a {}-cell", x.dim())));
    }
    let mut rows = x.rows.clone();
    for i in x.dim() + 1..=m {
        rows.push((Chain::zero(i), Chain::zero(i)));
    }
    Ok(SteinerArray { rows })
}

/// The counit: the top chain of a cell.
pub fn cell_class(c: &Cell) -> Chain {
    c.top().clone()
}

/// Positive chains of one degree with total at most a bound, grouped by
/// boundary (or listed by augmentation in degree 0).
struct Preimages {
    by_boundary: HashMap<Chain, Vec<Chain>>,
}

fn positive_chains(ids: &[String], deg: usize, bound: usize) -> Vec<Chain> {
    fn go(ids: &[String], i: usize, left: usize, cur: &mut Vec<i64>, deg: usize, out: &mut Vec<Chain>) {
        if i == ids.len() {
            out.push(Chain::from_terms(deg, ids.iter().cloned().zip(cur.iter().copied())));
            return;
        }
        for v in 0..=left {
            cur.push(v as i64);
            go(ids, i + 1, left - v, cur, deg, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ids, 0, bound, &mut Vec::new(), deg, &mut out);
    out
}

impl Preimages {
    fn new(k: &BasedADC, deg: usize, bound: usize) -> Self {
        let mut by_boundary: HashMap<Chain, Vec<Chain>> = HashMap::new();
        for c in positive_chains(k.ids_of_deg(deg), deg, bound) {
            let key = if deg == 0 {
                Chain::from_terms(0, [("#aug".to_string(), k.augment(&c))])
            } else {
                k.boundary(&c).expect("positive degree")
            };
            by_boundary.entry(key).or_default().push(c);
        }
        Preimages { by_boundary }
    }

    fn with_boundary(&self, t: &Chain) -> &[Chain] {
        self.by_boundary.get(t).map_or(&[], |v| v.as_slice())
    }

    fn coherent(&self) -> &[Chain] {
        self.with_boundary(&Chain::from_terms(0, [("#aug".to_string(), 1)]))
    }
}

/// All cells of dimension `dim` whose row entries have coefficient sums at
/// most `bound`, sorted.
pub fn enumerate_cells(k: &BasedADC, dim: usize, bound: usize) -> Vec<Cell> {
    let pre: Vec<Preimages> = (0..=dim).map(|d| Preimages::new(k, d, bound)).collect();
    let mut out = Vec::new();
    let mut rows = Vec::new();
    fill(&pre, dim, &mut rows, &mut out);
    out.sort();
    out
}

fn fill(pre: &[Preimages], dim: usize, rows: &mut Vec<(Chain, Chain)>, out: &mut Vec<Cell>) {
    let i = rows.len();
    let cands: &[Chain] = if i == 0 {
        pre[0].coherent()
    } else {
        let (m, p) = &rows[i - 1];
        let t = p.sub(m).expect("same degree");
        pre[i].with_boundary(&t)
    };
    if i == dim {
        for x in cands {
            rows.push((x.clone(), x.clone()));
            out.push(SteinerArray { rows: rows.clone() });
            rows.pop();
        }
        return;
    }
    for m in cands {
        for p in cands {
            rows.push((m.clone(), p.clone()));
            fill(pre, dim, rows, out);
            rows.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::atom;

    fn simplex2() -> BasedADC {
        BasedADC::builder()
            .point("v0")
            .point("v1")
            .point("v2")
            .arrow("v01", 1, "v0", "v1")
            .arrow("v12", 1, "v1", "v2")
            .arrow("v02", 1, "v0", "v2")
            .cell("v012", 2, &[("v02", -1), ("v01", 1), ("v12", 1)])
            .build()
            .unwrap()
    }

    fn path2() -> BasedADC {
        BasedADC::builder()
            .point("v0")
            .point("v1")
            .point("v2")
            .arrow("v01", 1, "v0", "v1")
            .arrow("v12", 1, "v1", "v2")
            .build()
            .unwrap()
    }

    fn ch(deg: usize, t: &[(&str, i64)]) -> Chain {
        Chain::from_terms(deg, t.iter().map(|(a, b)| (a.to_string(), *b)))
    }

    #[test]
    fn composite_of_segments() {
        let k = path2();
        let c = compose_cells(&atom(&k, "v12").unwrap(), &atom(&k, "v01").unwrap(), 0).unwrap();
        let want = SteinerArray::new(vec![
            (ch(0, &[("v0", 1)]), ch(0, &[("v2", 1)])),
            (ch(1, &[("v01", 1), ("v12", 1)]), ch(1, &[("v01", 1), ("v12", 1)])),
        ]);
        assert_eq!(c, want);
        assert!(is_cell(&k, &c).is_ok());
        assert_eq!(boundary(&c, 0, Sign::Plus).unwrap(), SteinerArray::new(vec![(ch(0, &[("v2", 1)]), ch(0, &[("v2", 1)]))]));
    }

    #[test]
    fn units_pad_with_zero() {
        let k = path2();
        let a = atom(&k, "v01").unwrap();
        let u = unit_cell(&a, 2).unwrap();
        assert_eq!(u.rows[2], (Chain::zero(2), Chain::zero(2)));
        assert!(is_cell(&k, &u).is_ok());
        assert_eq!(unit_cell(&a, 1).unwrap(), a);
        assert_eq!(compose_cells(&u, &u, 1).unwrap(), u);
        assert_eq!(boundary(&u, 1, Sign::Minus).unwrap(), a);
        assert!(cell_class(&u).is_zero());
        assert!(matches!(unit_cell(&u, 1), Err(Error::BadDimension(_))));
    }

    #[test]
    fn simplex_counts() {
        let k = path2();
        assert_eq!(enumerate_cells(&k, 1, 3).len(), 6);
        assert_eq!(enumerate_cells(&k, 0, 1).len(), 3);
        assert!(enumerate_cells(&simplex2(), 2, 3).iter().all(|c| is_cell(&simplex2(), c).is_ok()));
    }

    #[test]
    fn not_composable_reports_row() {
        let k = path2();
        let a = atom(&k, "v01").unwrap();
        assert!(matches!(compose_cells(&a, &a, 0), Err(Error::NotComposable(_))));
        assert!(matches!(boundary(&a, 1, Sign::Minus), Err(Error::IndexOutOfRange(_))));
    }
}
