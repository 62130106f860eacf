//! Based augmented directed complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::chain::{Chain, Id};
use crate::error::{Error, Result};

/// Orientation of a boundary: source (`Minus`) or target (`Plus`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub id: Id,
    pub deg: usize,
}

/// A free augmented chain complex with a distinguished basis.
///
/// The positivity submonoid is the ℕ-span of the basis. Every basis element
/// of degree ≥ 1 has a stored boundary (possibly zero) and every degree-0
/// element a stored augmentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedADC {
    degs: BTreeMap<Id, usize>,
    by_deg: Vec<Vec<Id>>,
    diff: BTreeMap<Id, Chain>,
    aug: BTreeMap<Id, i64>,
}

impl BasedADC {
    /// Validates and builds a complex.
    ///
    /// `diff` lists boundaries of elements of degree ≥ 1 and `aug` the
    /// augmentation of degree-0 elements; omitted entries are zero.
    pub fn new<B, S>(
        basis: B,
        diff: BTreeMap<Id, BTreeMap<Id, i64>>,
        aug: BTreeMap<Id, i64>,
    ) -> Result<Self>
    where
        B: IntoIterator<Item = (S, usize)>,
        S: Into<Id>,
    {
        let mut degs = BTreeMap::new();
        for (id, deg) in basis {
            let id: Id = id.into();
            if id.is_empty() {
                return Err(Error::Format("empty basis id".into()));
            }
            if degs.insert(id.clone(), deg).is_some() {
                return Err(Error::DuplicateId(id));
            }
        }
        let mut stored = BTreeMap::new();
        for (id, terms) in diff {
            let d = *degs.get(&id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            if d == 0 {
                if terms.values().all(|&v| v == 0) {
                    continue;
                }
                return Err(Error::DegreeMismatch(format!("degree-0 element `{id}` has a boundary")));
            }
            for t in terms.keys() {
                match degs.get(t) {
                    None => return Err(Error::UnknownBasisElement(t.clone())),
                    Some(&e) if e + 1 != d => {
                        return Err(Error::DegreeMismatch(format!(
                            "boundary of `{id}` (degree {d}) mentions `{t}` of degree {e}"
                        )))
                    }
                    _ => {}
                }
            }
            stored.insert(id, Chain::from_terms(d - 1, terms));
        }
        let mut stored_aug = BTreeMap::new();
        for (id, v) in aug {
            match degs.get(&id) {
                None => return Err(Error::UnknownBasisElement(id)),
                Some(&0) => {
                    stored_aug.insert(id, v);
                }
                Some(&d) if v == 0 => {
                    let _ = d;
                }
                Some(&d) => {
                    return Err(Error::DegreeMismatch(format!(
                        "augmentation given on `{id}` of degree {d}"
                    )))
                }
            }
        }
        Self::assemble(degs, stored, stored_aug)
    }

    fn assemble(
        degs: BTreeMap<Id, usize>,
        mut diff: BTreeMap<Id, Chain>,
        mut aug: BTreeMap<Id, i64>,
    ) -> Result<Self> {
        let top = degs.values().copied().max().map_or(0, |d| d + 1);
        let mut by_deg = vec![Vec::new(); top];
        for (id, &d) in &degs {
            by_deg[d].push(id.clone());
            if d == 0 {
                aug.entry(id.clone()).or_insert(0);
            } else {
                diff.entry(id.clone()).or_insert_with(|| Chain::zero(d - 1));
            }
        }
        let k = BasedADC { degs, by_deg, diff, aug };
        k.check_axioms()?;
        Ok(k)
    }

    fn check_axioms(&self) -> Result<()> {
        for (id, &d) in &self.degs {
            if d >= 2 {
                let dd = self.boundary(&self.diff[id]).expect("degree checked");
                if !dd.is_zero() {
                    return Err(Error::DifferentialNotSquareZero { witness: id.clone() });
                }
            } else if d == 1 && self.augment(&self.diff[id]) != 0 {
                return Err(Error::AugmentationNotAnnihilating { witness: id.clone() });
            }
        }
        Ok(())
    }

    pub fn builder() -> AdcBuilder {
        AdcBuilder::default()
    }

    /// The initial (empty) complex.
    pub fn empty() -> Self {
        BasedADC { degs: BTreeMap::new(), by_deg: Vec::new(), diff: BTreeMap::new(), aug: BTreeMap::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.degs.is_empty()
    }

    /// Number of basis elements.
    pub fn len(&self) -> usize {
        self.degs.len()
    }

    /// Highest degree of a basis element, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_deg.len().checked_sub(1)
    }

    pub fn deg(&self, id: &str) -> Option<usize> {
        self.degs.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.degs.contains_key(id)
    }

    /// All basis elements in canonical (lexicographic) order.
    pub fn basis(&self) -> impl Iterator<Item = BasisElement> + '_ {
        self.degs.iter().map(|(id, &deg)| BasisElement { id: id.clone(), deg })
    }

    pub fn ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.degs.keys()
    }

    /// Basis elements of degree `n`, sorted.
    pub fn ids_of_deg(&self, n: usize) -> &[Id] {
        self.by_deg.get(n).map_or(&[], |v| v.as_slice())
    }

    /// Number of basis elements in each degree `0..=dim`.
    pub fn degree_counts(&self) -> Vec<usize> {
        self.by_deg.iter().map(Vec::len).collect()
    }

    /// Boundary of a basis element of degree ≥ 1.
    pub fn diff_of(&self, id: &str) -> Option<&Chain> {
        self.diff.get(id)
    }

    /// Augmentation of a degree-0 basis element.
    pub fn aug_of(&self, id: &str) -> Option<i64> {
        self.aug.get(id).copied()
    }

    /// Linear extension of the differential; errors on degree-0 chains.
    pub fn boundary(&self, x: &Chain) -> Result<Chain> {
        if x.deg() == 0 {
            return Err(Error::DegreeMismatch("boundary of a degree-0 chain".into()));
        }
        let mut out = Chain::zero(x.deg() - 1);
        for (id, k) in x.iter() {
            let d = self.diff.get(id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            out = out.add_scaled(d, k)?;
        }
        Ok(out)
    }

    /// Linear extension of the augmentation to degree-0 chains.
    pub fn augment(&self, x: &Chain) -> i64 {
        debug_assert_eq!(x.deg(), 0);
        x.iter().map(|(id, k)| self.aug.get(id).copied().unwrap_or(0) * k).sum()
    }

    /// Checks that every element of `x` is a basis element of degree `x.deg()`.
    pub fn check_chain(&self, x: &Chain) -> Result<()> {
        for id in x.support() {
            match self.degs.get(id) {
                None => return Err(Error::UnknownBasisElement(id.clone())),
                Some(&d) if d != x.deg() => {
                    return Err(Error::DegreeMismatch(format!(
                        "`{id}` has degree {d}, chain has degree {}",
                        x.deg()
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// `1·b` as a chain.
    pub fn gen(&self, id: &str) -> Result<Chain> {
        let d = self.deg(id).ok_or_else(|| Error::UnknownBasisElement(id.to_string()))?;
        Ok(Chain::basis(d, id))
    }

    /// The (positive, negative) parts of `∂b`.
    pub fn diff_parts(&self, id: &str) -> Option<(Chain, Chain)> {
        self.diff.get(id).map(Chain::parts)
    }

    /// Renames every basis element; `f` must be injective.
    pub fn rename(&self, mut f: impl FnMut(&str) -> Id) -> Result<Self> {
        let names: BTreeMap<Id, Id> = self.degs.keys().map(|k| (k.clone(), f(k))).collect();
        let degs: BTreeMap<Id, usize> = self.degs.iter().map(|(k, &d)| (names[k].clone(), d)).collect();
        if degs.len() != self.degs.len() {
            return Err(Error::DuplicateId("renaming is not injective".into()));
        }
        let diff = self.diff.iter().map(|(k, c)| (names[k].clone(), c.map_ids(|i| names[i].clone()))).collect();
        let aug = self.aug.iter().map(|(k, &v)| (names[k].clone(), v)).collect();
        Self::assemble(degs, diff, aug)
    }

    /// Restriction to a set of basis elements closed under taking boundaries.
    pub fn restrict(&self, keep: &BTreeSet<Id>) -> Result<Self> {
        let mut degs = BTreeMap::new();
        let mut diff = BTreeMap::new();
        let mut aug = BTreeMap::new();
        for id in keep {
            let d = self.deg(id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            degs.insert(id.clone(), d);
            if d == 0 {
                aug.insert(id.clone(), self.aug[id]);
            } else {
                let c = &self.diff[id];
                if let Some(bad) = c.support().find(|t| !keep.contains(*t)) {
                    return Err(Error::PreconditionViolated(format!(
                        "`{id}` has `{bad}` in its boundary but `{bad}` is not kept"
                    )));
                }
                diff.insert(id.clone(), c.clone());
            }
        }
        Self::assemble(degs, diff, aug)
    }

    /// Disjoint union, prefixing ids with `left` and `right`.
    pub fn disjoint_union(&self, other: &BasedADC, left: &str, right: &str) -> Result<Self> {
        let a = self.rename(|i| format!("{left}{i}"))?;
        let b = other.rename(|i| format!("{right}{i}"))?;
        let mut degs = a.degs;
        for (k, d) in b.degs {
            if degs.insert(k.clone(), d).is_some() {
                return Err(Error::DuplicateId(k));
            }
        }
        let mut diff = a.diff;
        diff.extend(b.diff);
        let mut aug = a.aug;
        aug.extend(b.aug);
        Self::assemble(degs, diff, aug)
    }

    /// Builds a complex from already-formed chains, checking degrees and axioms.
    pub(crate) fn from_chains(
        basis: BTreeMap<Id, usize>,
        diff: BTreeMap<Id, Chain>,
        aug: BTreeMap<Id, i64>,
    ) -> Result<Self> {
        for (id, c) in &diff {
            let d = *basis.get(id).ok_or_else(|| Error::UnknownBasisElement(id.clone()))?;
            if d == 0 || c.deg() + 1 != d {
                return Err(Error::DegreeMismatch(format!("boundary of `{id}`")));
            }
            for t in c.support() {
                match basis.get(t) {
                    None => return Err(Error::UnknownBasisElement(t.clone())),
                    Some(&e) if e + 1 != d => {
                        return Err(Error::DegreeMismatch(format!("boundary of `{id}` mentions `{t}`")))
                    }
                    _ => {}
                }
            }
        }
        for id in aug.keys() {
            if basis.get(id) != Some(&0) {
                return Err(Error::DegreeMismatch(format!("augmentation on `{id}`")));
            }
        }
        Self::assemble(basis, diff, aug)
    }

    /// Boundary table as nested maps, the inverse of [`BasedADC::new`].
    pub fn diff_table(&self) -> BTreeMap<Id, BTreeMap<Id, i64>> {
        self.diff
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.clone(), c.coeff_map().clone()))
            .collect()
    }

    pub fn aug_table(&self) -> &BTreeMap<Id, i64> {
        &self.aug
    }
}

/// Incremental construction of small complexes.
#[derive(Default, Clone, Debug)]
pub struct AdcBuilder {
    basis: Vec<(Id, usize)>,
    diff: BTreeMap<Id, BTreeMap<Id, i64>>,
    aug: BTreeMap<Id, i64>,
}

impl AdcBuilder {
    /// A degree-0 element with augmentation 1.
    pub fn point(self, id: &str) -> Self {
        self.point_aug(id, 1)
    }

    pub fn point_aug(mut self, id: &str, e: i64) -> Self {
        self.basis.push((id.to_string(), 0));
        self.aug.insert(id.to_string(), e);
        self
    }

    /// An element of degree `deg ≥ 1` with the given boundary terms.
    pub fn cell(mut self, id: &str, deg: usize, boundary: &[(&str, i64)]) -> Self {
        self.basis.push((id.to_string(), deg));
        let e = self.diff.entry(id.to_string()).or_default();
        for (t, k) in boundary {
            *e.entry(t.to_string()).or_insert(0) += k;
        }
        self
    }

    /// An arrow `id: src → tgt` between elements of degree `deg - 1`.
    pub fn arrow(self, id: &str, deg: usize, src: &str, tgt: &str) -> Self {
        self.cell(id, deg, &[(tgt, 1), (src, -1)])
    }

    pub fn build(self) -> Result<BasedADC> {
        BasedADC::new(self.basis, self.diff, self.aug)
    }
}

/// A set of dimensions in which a duality reverses cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Duality {
    /// Odd dimensions.
    Op,
    /// Positive even dimensions.
    Co,
    /// Every positive dimension.
    Full,
    /// Dimension 1 only.
    T,
    Dims(BTreeSet<usize>),
}

impl Duality {
    pub fn contains(&self, n: usize) -> bool {
        match self {
            Duality::Op => n % 2 == 1,
            Duality::Co => n > 0 && n.is_multiple_of(2),
            Duality::Full => n > 0,
            Duality::T => n == 1,
            Duality::Dims(s) => s.contains(&n),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "op" => Ok(Duality::Op),
            "co" => Ok(Duality::Co),
            "full" | "coop" => Ok(Duality::Full),
            "t" => Ok(Duality::T),
            other => {
                let dims = other
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<std::result::Result<BTreeSet<_>, _>>()
                    .map_err(|_| Error::Format(format!("unknown duality `{other}`")))?;
                if dims.contains(&0) {
                    return Err(Error::Format("dualities act in positive dimensions".into()));
                }
                Ok(Duality::Dims(dims))
            }
        }
    }
}

/// The dual complex: same basis and augmentation, boundary negated in the
/// degrees of `s`.
pub fn dual(k: &BasedADC, s: &Duality) -> BasedADC {
    let mut out = k.clone();
    for (id, c) in out.diff.iter_mut() {
        if s.contains(k.degs[id]) {
            *c = c.neg();
        }
    }
    out
}

/// A double sequence of positive chains `(x_i^-, x_i^+)` for `i ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SteinerArray {
    pub rows: Vec<(Chain, Chain)>,
}

impl SteinerArray {
    pub fn new(rows: Vec<(Chain, Chain)>) -> Self {
        assert!(!rows.is_empty(), "an array has at least one row");
        SteinerArray { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, i: usize, s: Sign) -> &Chain {
        match s {
            Sign::Minus => &self.rows[i].0,
            Sign::Plus => &self.rows[i].1,
        }
    }

    /// The top chain `x_n`.
    pub fn top(&self) -> &Chain {
        &self.rows[self.dim()].1
    }

    /// Positivity, boundary compatibility and top equality.
    pub fn check(&self, k: &BasedADC) -> std::result::Result<(), String> {
        let n = self.dim();
        for (i, (m, p)) in self.rows.iter().enumerate() {
            for (c, s) in [(m, '-'), (p, '+')] {
                if c.deg() != i {
                    return Err(format!("row {i}{s} has degree {}", c.deg()));
                }
                k.check_chain(c).map_err(|e| format!("row {i}{s}: {e}"))?;
                if !c.is_positive() {
                    return Err(format!("row {i}{s} is not positive"));
                }
            }
        }
        if self.rows[n].0 != self.rows[n].1 {
            return Err(format!("top row {n} has different source and target"));
        }
        for i in 1..=n {
            let want = self.rows[i - 1].1.sub(&self.rows[i - 1].0).expect("same degree");
            for (c, s) in [(&self.rows[i].0, '-'), (&self.rows[i].1, '+')] {
                if k.boundary(c).expect("degree ≥ 1") != want {
                    return Err(format!("boundary of row {i}{s} differs from row {} difference", i - 1));
                }
            }
        }
        Ok(())
    }

    /// Applies a chain map rowwise.
    pub fn map(&self, f: impl Fn(&Chain) -> Chain) -> SteinerArray {
        SteinerArray { rows: self.rows.iter().map(|(m, p)| (f(m), f(p))).collect() }
    }
}

impl fmt::Display for SteinerArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (m, p)) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({m},{p})")?;
        }
        write!(f, ")")
    }
}

/// The atom `⟨b⟩`: `⟨b⟩^α_k = ∂^α ⟨b⟩^α_{k+1}` below the top row `(b, b)`.
pub fn atom(k: &BasedADC, b: &str) -> Result<SteinerArray> {
    let n = k.deg(b).ok_or_else(|| Error::UnknownBasisElement(b.to_string()))?;
    let mut rows = vec![(Chain::zero(0), Chain::zero(0)); n + 1];
    rows[n] = (Chain::basis(n, b), Chain::basis(n, b));
    for i in (0..n).rev() {
        let m = k.boundary(&rows[i + 1].0)?.negative_part();
        let p = k.boundary(&rows[i + 1].1)?.positive_part();
        rows[i] = (m, p);
    }
    Ok(SteinerArray { rows })
}

/// Outcome of a basis predicate, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A cycle of the generating relation, first element repeated at the end.
    Cycle(Vec<Id>),
    /// The basis element at which the predicate fails.
    Witness(Id),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Generating relation of loop-freeness: `a ⊙ b` when `b ∈ ⟨a⟩^-_{|a|-1}`
/// or `a ∈ ⟨b⟩^+_{|b|-1}`. Returned as adjacency lists.
pub fn loop_relation(k: &BasedADC) -> BTreeMap<Id, BTreeSet<Id>> {
    let mut rel: BTreeMap<Id, BTreeSet<Id>> = k.ids().map(|i| (i.clone(), BTreeSet::new())).collect();
    for a in k.ids() {
        if k.deg(a) == Some(0) {
            continue;
        }
        let (p, m) = k.diff_parts(a).expect("positive degree");
        for b in m.support() {
            rel.get_mut(a).unwrap().insert(b.clone());
        }
        for b in p.support() {
            rel.get_mut(b).unwrap().insert(a.clone());
        }
    }
    rel
}

/// Searches for a directed cycle, starting at the smallest element lying on
/// one and following a shortest path back.
pub(crate) fn find_cycle(rel: &BTreeMap<Id, BTreeSet<Id>>) -> Option<Vec<Id>> {
    for start in rel.keys() {
        let mut prev: BTreeMap<&Id, &Id> = BTreeMap::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        let mut seen = BTreeSet::new();
        while let Some(u) = queue.pop_front() {
            for v in &rel[u] {
                if v == start {
                    let mut back = vec![u.clone()];
                    let mut cur = u;
                    while cur != start {
                        cur = prev[cur];
                        back.push(cur.clone());
                    }
                    back.reverse();
                    back.push(start.clone());
                    return Some(back);
                }
                if seen.insert(v) {
                    prev.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
    }
    None
}

pub fn is_loopfree(k: &BasedADC) -> Verdict {
    match find_cycle(&loop_relation(k)) {
        None => Verdict::Holds,
        Some(c) => Verdict::Cycle(c),
    }
}

pub fn is_unitary(k: &BasedADC) -> Verdict {
    for b in k.ids() {
        let a = atom(k, b).expect("basis element");
        if k.augment(&a.rows[0].0) != 1 || k.augment(&a.rows[0].1) != 1 {
            return Verdict::Witness(b.clone());
        }
    }
    Verdict::Holds
}

pub fn is_strong_steiner(k: &BasedADC) -> bool {
    is_loopfree(k).holds() && is_unitary(k).holds()
}
