//! Decompositions of 2-cells of complexes concentrated in degrees ≤ 2.

use std::collections::BTreeSet;

use crate::adc::{atom, is_strong_steiner, BasedADC, Sign, SteinerArray};
use crate::chain::{Chain, Id};
use crate::error::{Error, Result};
use crate::omega::{check_cell, compose_cells, Cell};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub level: u8,
    pub elems: BTreeSet<Id>,
}

/// A strict order given by its transitively closed set of pairs; `(c, d)`
/// means `c < d`, i.e. `c` comes after `d` in composition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Precedence {
    pub level: u8,
    pub elems: BTreeSet<Id>,
    pub pairs: BTreeSet<(Id, Id)>,
    pub is_partial_order: bool,
}

impl Precedence {
    pub fn less(&self, c: &str, d: &str) -> bool {
        self.pairs.contains(&(c.to_string(), d.to_string()))
    }

    pub fn comparable(&self, c: &str, d: &str) -> bool {
        self.less(c, d) || self.less(d, c)
    }
}

fn check_input(k: &BasedADC, v: &Cell) -> Result<()> {
    if k.dim().is_some_and(|d| d > 2) {
        return Err(Error::PreconditionViolated("complex has generators above degree 2".into()));
    }
    if !is_strong_steiner(k) {
        return Err(Error::PreconditionViolated("complex is not strong Steiner".into()));
    }
    if v.dim() != 2 {
        return Err(Error::PreconditionViolated(format!("expected a 2-cell, got a {}-cell", v.dim())));
    }
    check_cell(k, v).map_err(|e| Error::PreconditionViolated(e.to_string()))
}

/// The 2-support and 1-support of a 2-cell.
pub fn supports(k: &BasedADC, v: &Cell) -> Result<(Support, Support)> {
    check_input(k, v)?;
    let b2: BTreeSet<Id> = v.top().support().cloned().collect();
    let via = |row: Sign, part: Sign| -> BTreeSet<Id> {
        let mut s: BTreeSet<Id> = v.row(1, row).support().cloned().collect();
        for b in &b2 {
            let a = atom(k, b).expect("support element");
            s.extend(a.row(1, part).support().cloned());
        }
        s
    };
    let b1 = via(Sign::Plus, Sign::Minus);
    let other = via(Sign::Minus, Sign::Plus);
    if b1 != other {
        return Err(Error::ValidationFailed("the two descriptions of the 1-support differ".into()));
    }
    Ok((Support { level: 2, elems: b2 }, Support { level: 1, elems: b1 }))
}

/// Transitive closure of `c < d ⇔ ⟨c⟩^-_level ∧ ⟨d⟩^+_level ≠ 0` on `elems`.
fn relation(k: &BasedADC, elems: &BTreeSet<Id>, level: u8) -> Precedence {
    let ids: Vec<&Id> = elems.iter().collect();
    let rows: Vec<(Chain, Chain)> = ids
        .iter()
        .map(|b| {
            let a = atom(k, b).expect("basis element");
            let l = usize::from(level);
            (a.row(l, Sign::Minus).clone(), a.row(l, Sign::Plus).clone())
        })
        .collect();
    let n = ids.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = rows[i].0.meets(&rows[j].1);
        }
    }
    for l in 0..n {
        for i in 0..n {
            if m[i][l] {
                for j in 0..n {
                    if m[l][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if m[i][j] {
                pairs.insert((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    let is_partial_order = (0..n).all(|i| !m[i][i]);
    Precedence { level, elems: elems.clone(), pairs, is_partial_order }
}

/// `<_1` on the 2-support (level 1) or `<_0` on the 1-support (level 0).
pub fn precedence(k: &BasedADC, v: &Cell, level: u8) -> Result<Precedence> {
    let (b2, b1) = supports(k, v)?;
    match level {
        0 => Ok(relation(k, &b1.elems, 0)),
        1 => Ok(relation(k, &b2.elems, 1)),
        _ => Err(Error::BadIndices(format!("precedence level {level}"))),
    }
}

/// All linear extensions of a strict order (`a < b` puts `a` first), in
/// lexicographic order.
pub fn linear_extensions(p: &Precedence) -> Result<Vec<Vec<Id>>> {
    if !p.is_partial_order {
        let bad = p.pairs.iter().find(|(a, b)| a == b).map(|(a, _)| a.clone()).unwrap_or_default();
        return Err(Error::NotPartialOrder(bad));
    }
    let mut out = Vec::new();
    let mut left: BTreeSet<Id> = p.elems.clone();
    let mut cur = Vec::new();
    fn go(p: &Precedence, left: &mut BTreeSet<Id>, cur: &mut Vec<Id>, out: &mut Vec<Vec<Id>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        let ready: Vec<Id> = left.iter().filter(|a| !left.iter().any(|b| p.less(b, a))).cloned().collect();
        for a in ready {
            left.remove(&a);
            cur.push(a.clone());
            go(p, left, cur, out);
            cur.pop();
            left.insert(a);
        }
    }
    go(p, &mut left, &mut cur, &mut out);
    Ok(out)
}

/// Orderings of the 2-support of `v`.
pub fn orderings(k: &BasedADC, v: &Cell) -> Result<Vec<Vec<Id>>> {
    linear_extensions(&precedence(k, v, 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Upper,
    Middle,
    Lower,
}

/// Splits `u = v *_level w *_level t` given a classification of the basis
/// elements in rows above `level`, following the explicit array formulas.
fn split_level(k: &BasedADC, u: &Cell, level: usize, class: impl Fn(&str) -> Part) -> Result<(Cell, Cell, Cell)> {
    let n = u.dim();
    let zero_rows = || vec![(Chain::zero(0), Chain::zero(0)); n + 1];
    let (mut v, mut w, mut t) = (zero_rows(), zero_rows(), zero_rows());
    for j in level + 1..=n {
        for (s, idx) in [(Sign::Minus, 0), (Sign::Plus, 1)] {
            let row = u.row(j, s);
            let pick = |p: Part| row.restrict(|b| class(b) == p);
            set(&mut v[j], idx, pick(Part::Upper));
            set(&mut w[j], idx, pick(Part::Middle));
            set(&mut t[j], idx, pick(Part::Lower));
        }
    }
    let bd = |c: &Chain| -> Result<Chain> { k.boundary(c) };
    let vp = u.row(level, Sign::Plus).clone();
    let vm = vp.sub(&bd(&v[level + 1].0)?)?;
    let wp = vm.clone();
    let wm = wp.sub(&bd(&w[level + 1].0)?)?;
    let tp = wm.clone();
    let tm = u.row(level, Sign::Minus).clone();
    v[level] = (vm, vp);
    w[level] = (wm, wp);
    t[level] = (tm, tp);
    for j in 0..level {
        v[j] = u.rows[j].clone();
        w[j] = u.rows[j].clone();
        t[j] = u.rows[j].clone();
    }
    let (v, w, t) = (SteinerArray { rows: v }, SteinerArray { rows: w }, SteinerArray { rows: t });
    for (name, c) in [("upper", &v), ("middle", &w), ("lower", &t)] {
        check_cell(k, c).map_err(|e| Error::NotDecomposable(format!("{name} part: {e}")))?;
    }
    let back = compose_cells(&compose_cells(&v, &w, level)?, &t, level)
        .map_err(|e| Error::NotDecomposable(format!("parts do not compose: {e}")))?;
    if back != *u {
        return Err(Error::NotDecomposable("parts do not recompose to the cell".into()));
    }
    Ok((v, w, t))
}

fn set(row: &mut (Chain, Chain), idx: usize, c: Chain) {
    if idx == 0 {
        row.0 = c;
    } else {
        row.1 = c;
    }
}

/// The three-way split of `u` around `x` relative to the reference cell `r`.
///
/// At level 1 the upper part carries the 2-generators `b <_1 x`, the lower
/// part those with `x <_1 b`. At level 0 the split is along `<_0` and
/// requires every other 2-generator of `u` to be `<_1`-incomparable with `x`.
pub fn split3(k: &BasedADC, u: &Cell, x: &str, r: &Cell, level: u8) -> Result<(Cell, Cell, Cell)> {
    check_input(k, u)?;
    let (rb2, rb1) = supports(k, r)?;
    let (ub2, ub1) = supports(k, u)?;
    if !rb2.elems.contains(x) {
        return Err(Error::PreconditionViolated(format!("`{x}` is not in the 2-support of the reference cell")));
    }
    if !ub1.elems.is_subset(&rb1.elems) {
        return Err(Error::PreconditionViolated("1-support is not contained in that of the reference cell".into()));
    }
    match level {
        1 => {
            let p = relation(k, &rb2.elems, 1);
            split_level(k, u, 1, |b| {
                if p.less(b, x) {
                    Part::Upper
                } else if p.less(x, b) {
                    Part::Lower
                } else {
                    Part::Middle
                }
            })
        }
        0 => {
            let p1 = relation(k, &rb2.elems, 1);
            if let Some(b) = ub2.elems.iter().find(|b| b.as_str() != x && p1.comparable(b, x)) {
                return Err(Error::PreconditionViolated(format!("`{b}` is comparable with `{x}` at level 1")));
            }
            let all: BTreeSet<Id> = rb1.elems.union(&rb2.elems).cloned().collect();
            let p0 = relation(k, &all, 0);
            split_level(k, u, 0, |b| {
                if p0.less(b, x) {
                    Part::Upper
                } else if p0.less(x, b) {
                    Part::Lower
                } else {
                    Part::Middle
                }
            })
        }
        _ => Err(Error::BadIndices(format!("split level {level}"))),
    }
}

/// Decomposes `v = v_0 *_1 … *_1 v_n` following `ordering`, each block a
/// whiskering of one 2-generator by 1-cells. A unit gives the empty list.
pub fn decompose(k: &BasedADC, v: &Cell, ordering: &[Id]) -> Result<Vec<Cell>> {
    let (b2, b1) = supports(k, v)?;
    let given: BTreeSet<Id> = ordering.iter().cloned().collect();
    if given != b2.elems || given.len() != ordering.len() {
        return Err(Error::PreconditionViolated("ordering is not a bijection onto the 2-support".into()));
    }
    let p = relation(k, &b2.elems, 1);
    for (i, a) in ordering.iter().enumerate() {
        if let Some(b) = ordering[i + 1..].iter().find(|b| p.less(b, a)) {
            return Err(Error::PreconditionViolated(format!("`{b}` precedes `{a}` but comes later")));
        }
    }
    if let Some((id, c)) = v.top().iter().find(|(_, c)| *c > 1) {
        return Err(Error::NotDecomposable(format!("`{id}` occurs {c} times")));
    }
    let mut blocks = Vec::new();
    let mut rest = v.clone();
    for w0 in ordering {
        let (block, mid, lower) = split_level(k, &rest, 1, |b| if b == w0 { Part::Upper } else { Part::Lower })?;
        debug_assert!(mid.top().is_zero());
        let (left, core, right) = split3(k, &block, w0, v, 0)?;
        let core_ok = core == atom(k, w0)?;
        if !core_ok || !left.top().is_zero() || !right.top().is_zero() {
            return Err(Error::NotDecomposable(format!("block of `{w0}` is not a whiskered generator")));
        }
        blocks.push(block);
        rest = lower;
    }
    if !blocks.is_empty() {
        let mut seen = BTreeSet::new();
        for c in &blocks {
            for s in [Sign::Minus, Sign::Plus] {
                seen.extend(c.row(1, s).support().cloned());
            }
        }
        if let Some(z) = b1.elems.iter().find(|z| !seen.contains(*z)) {
            return Err(Error::NotDecomposable(format!("`{z}` appears in no block boundary")));
        }
        let back = recompose(&blocks)?;
        if back != *v {
            return Err(Error::NotDecomposable("blocks do not recompose".into()));
        }
    }
    Ok(blocks)
}

/// `c_0 *_1 c_1 *_1 … *_1 c_n`.
pub fn recompose(blocks: &[Cell]) -> Result<Cell> {
    let mut it = blocks.iter().rev();
    let mut acc = it.next().ok_or_else(|| Error::PreconditionViolated("nothing to compose".into()))?.clone();
    for c in it {
        acc = compose_cells(c, &acc, 1)?;
    }
    Ok(acc)
}

/// True when `b` is in the 2-support of `v` and `<_1`-incomparable with every
/// other element of it.
pub fn is_0_comparable(k: &BasedADC, v: &Cell, b: &str) -> Result<bool> {
    let p = precedence(k, v, 1)?;
    if !p.elems.contains(b) {
        return Ok(false);
    }
    Ok(p.elems.iter().all(|c| c == b || !p.comparable(c, b)))
}

/// Blocks grouped with their generator, for reporting.
pub fn block_generators(blocks: &[Cell]) -> Vec<Id> {
    blocks
        .iter()
        .map(|c| c.top().support().next().cloned().unwrap_or_default())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{lambda_gs, parse_gs};

    /// λ([[[2]],1]): 1-cells f, g, h and 2-cells α: f ⇒ g, β: g ⇒ h.
    fn stack() -> BasedADC {
        lambda_gs(&parse_gs("[[*,*]]").unwrap()).rename(|id| {
            match id {
                "0.0" => "f",
                "0.1" => "g",
                "0.2" => "h",
                "0.0.0" => "alpha",
                "0.1.0" => "beta",
                other => other,
            }
            .to_string()
        })
        .unwrap()
    }

    #[test]
    fn vertical_pair() {
        let k = stack();
        let (a, b) = (atom(&k, "alpha").unwrap(), atom(&k, "beta").unwrap());
        let v = compose_cells(&b, &a, 1).unwrap();
        let (s2, s1) = supports(&k, &v).unwrap();
        assert_eq!(s2.elems.len(), 2);
        assert_eq!(s1.elems, ["f", "g", "h"].iter().map(|s| s.to_string()).collect());
        let p = precedence(&k, &v, 1).unwrap();
        assert!(p.less("beta", "alpha"));
        assert_eq!(orderings(&k, &v).unwrap(), vec![vec!["beta".to_string(), "alpha".to_string()]]);
        assert_eq!(decompose(&k, &v, &["beta".into(), "alpha".into()]).unwrap(), vec![b.clone(), a.clone()]);
        let (x, y, z) = split3(&k, &v, "alpha", &v, 1).unwrap();
        assert_eq!(x, b);
        assert_eq!(y, a);
        assert!(z.top().is_zero());
        assert!(!is_0_comparable(&k, &v, "alpha").unwrap());
    }

    #[test]
    fn units_decompose_to_nothing() {
        let k = stack();
        let f = crate::omega::unit_cell(&atom(&k, "f").unwrap(), 2).unwrap();
        assert!(decompose(&k, &f, &[]).unwrap().is_empty());
        let (s2, s1) = supports(&k, &f).unwrap();
        assert!(s2.elems.is_empty());
        assert_eq!(s1.elems.len(), 1);
    }

    #[test]
    fn side_by_side() {
        let k = lambda_gs(&parse_gs("[[*],[*]]").unwrap());
        let (a, b) = (atom(&k, "0.0.0").unwrap(), atom(&k, "1.0.0").unwrap());
        let v = compose_cells(&b, &a, 0).unwrap();
        assert!(precedence(&k, &v, 1).unwrap().pairs.is_empty());
        assert_eq!(orderings(&k, &v).unwrap().len(), 2);
        assert!(is_0_comparable(&k, &v, "0.0.0").unwrap());
        assert!(!is_0_comparable(&k, &v, "0.0").unwrap());
        let (x, y, z) = split3(&k, &v, "0.0.0", &v, 0).unwrap();
        assert_eq!((x, y), (b.clone(), a.clone()));
        assert_eq!(z, crate::omega::unit_cell(&atom(&k, "0").unwrap(), 2).unwrap());
        for ord in orderings(&k, &v).unwrap() {
            let blocks = decompose(&k, &v, &ord).unwrap();
            assert_eq!(block_generators(&blocks), ord);
            assert_eq!(recompose(&blocks).unwrap(), v);
        }
    }

    #[test]
    fn level0_order_matches_composability() {
        let k = lambda_gs(&parse_gs("[[*],[*]]").unwrap());
        let v = compose_cells(&atom(&k, "1.0.0").unwrap(), &atom(&k, "0.0.0").unwrap(), 0).unwrap();
        let p = precedence(&k, &v, 0).unwrap();
        assert!(p.less("1.0", "0.1") && p.less("1.1", "0.0"));
        assert!(!p.less("0.0", "1.0") && !p.comparable("0.0", "0.1"));
    }
}
