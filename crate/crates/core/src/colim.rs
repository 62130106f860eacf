//! Colimits and limits of based complexes, and isomorphism search.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::adc::BasedADC;
use crate::chain::{Chain, Id};
use crate::error::{Error, Result};
use crate::linalg::{image_lattice, is_unimodular, kernel, rank, smith, solve, Mat};
use crate::morphism::{compose_morphism, quasirigid_witness, ADCMorphism};
use crate::omega::enumerate_cells;

/// Default node budget of the isomorphism search.
pub const ISO_BUDGET: u64 = 1_000_000;

fn chain_vec(k: &BasedADC, c: &Chain) -> Vec<BigInt> {
    k.ids_of_deg(c.deg()).iter().map(|id| BigInt::from(c.coeff(id))).collect()
}

/// Matrix of a morphism in degree `d` (rows: target basis, columns: source
/// basis, both sorted).
pub fn morphism_matrix(f: &ADCMorphism, d: usize) -> Mat {
    let src = f.source().ids_of_deg(d);
    let tgt = f.target().ids_of_deg(d);
    let mut m = Mat::zeros(tgt.len(), src.len());
    for (j, s) in src.iter().enumerate() {
        let img = f.image(s).expect("total map");
        for (i, t) in tgt.iter().enumerate() {
            m.data[i][j] = BigInt::from(img.coeff(t));
        }
    }
    m
}

fn vstack(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.cols, b.cols);
    let mut data = a.data.clone();
    data.extend(b.data.iter().cloned());
    Mat::from_rows(data, a.cols)
}

fn neg(a: &Mat) -> Mat {
    Mat::from_rows(a.data.iter().map(|r| r.iter().map(|x| -x).collect()).collect(), a.cols)
}

fn top_degree(ks: &[&BasedADC]) -> usize {
    ks.iter().filter_map(|k| k.dim()).max().unwrap_or(0)
}

// ---------------------------------------------------------------- isomorphisms

struct Incidence {
    ids: Vec<Id>,
    down: Vec<Vec<(i64, usize)>>,
    up: Vec<Vec<(i64, usize)>>,
    base: Vec<(usize, i64)>,
}

impl Incidence {
    fn new(k: &BasedADC) -> Self {
        let ids: Vec<Id> = k.ids().cloned().collect();
        let index: HashMap<Id, usize> = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let mut down = vec![Vec::new(); ids.len()];
        let mut up = vec![Vec::new(); ids.len()];
        let mut base = Vec::new();
        for (i, id) in ids.iter().enumerate() {
            let d = k.deg(id).unwrap();
            base.push((d, if d == 0 { k.aug_of(id).unwrap() } else { 0 }));
            if d > 0 {
                for (t, v) in k.diff_of(id).unwrap().iter() {
                    down[i].push((v, index[t]));
                    up[index[t]].push((v, i));
                }
            }
        }
        Incidence { ids, down, up, base }
    }
}

/// Joint colour refinement of two incidence structures.
fn refine(a: &Incidence, b: &Incidence) -> (Vec<usize>, Vec<usize>) {
    type Sig = (usize, (usize, i64), Vec<(i64, usize)>, Vec<(i64, usize)>);
    let mut ca: Vec<usize> = vec![0; a.ids.len()];
    let mut cb: Vec<usize> = vec![0; b.ids.len()];
    let mut classes = 0usize;
    for round in 0..=a.ids.len().max(b.ids.len()) {
        let mut table: BTreeMap<Sig, usize> = BTreeMap::new();
        let sig = |inc: &Incidence, col: &[usize], i: usize| -> Sig {
            let mut d: Vec<(i64, usize)> = inc.down[i].iter().map(|&(v, j)| (v, col[j])).collect();
            let mut u: Vec<(i64, usize)> = inc.up[i].iter().map(|&(v, j)| (v, col[j])).collect();
            d.sort();
            u.sort();
            (col[i], inc.base[i], d, u)
        };
        let sa: Vec<Sig> = (0..a.ids.len()).map(|i| sig(a, &ca, i)).collect();
        let sb: Vec<Sig> = (0..b.ids.len()).map(|i| sig(b, &cb, i)).collect();
        for s in sa.iter().chain(&sb) {
            let n = table.len();
            table.entry(s.clone()).or_insert(n);
        }
        ca = sa.iter().map(|s| table[s]).collect();
        cb = sb.iter().map(|s| table[s]).collect();
        if round > 0 && table.len() == classes {
            break;
        }
        classes = table.len();
    }
    (ca, cb)
}

/// All isomorphisms `k → l`, sorted by their tables.
pub fn isos(k: &BasedADC, l: &BasedADC) -> Result<Vec<ADCMorphism>> {
    isos_with_budget(k, l, ISO_BUDGET)
}

pub fn isos_with_budget(k: &BasedADC, l: &BasedADC, budget: u64) -> Result<Vec<ADCMorphism>> {
    if k.degree_counts() != l.degree_counts() {
        return Ok(Vec::new());
    }
    let a = Incidence::new(k);
    let b = Incidence::new(l);
    let (ca, cb) = refine(&a, &b);
    let mut ha: Vec<usize> = ca.clone();
    let mut hb: Vec<usize> = cb.clone();
    ha.sort();
    hb.sort();
    if ha != hb {
        return Ok(Vec::new());
    }
    let mut class_size: HashMap<usize, usize> = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_default() += 1;
    }
    // breadth-first order, restarting at the rarest unvisited colour
    let n = a.ids.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&i| (class_size[&ca[i]], i));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            let mut nb: Vec<usize> = a.down[x].iter().chain(&a.up[x]).map(|p| p.1).collect();
            nb.sort_by_key(|&i| (class_size[&ca[i]], i));
            for y in nb {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    let mut st = Search {
        a: &a,
        b: &b,
        ca: &ca,
        cb: &cb,
        order: &order,
        fwd: vec![usize::MAX; n],
        bwd: vec![usize::MAX; n],
        nodes: 0,
        budget,
        found: Vec::new(),
    };
    st.go(0)?;
    let ka = Arc::new(k.clone());
    let la = Arc::new(l.clone());
    let mut out = Vec::new();
    for m in st.found {
        let map = (0..n)
            .map(|i| {
                let d = a.base[i].0;
                (a.ids[i].clone(), Chain::basis(d, b.ids[m[i]].clone()))
            })
            .collect();
        out.push(ADCMorphism::from_chains(ka.clone(), la.clone(), map)?);
    }
    out.sort_by_key(|f| f.map_table());
    Ok(out)
}

struct Search<'a> {
    a: &'a Incidence,
    b: &'a Incidence,
    ca: &'a [usize],
    cb: &'a [usize],
    order: &'a [usize],
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        let coeff = |list: &[(i64, usize)], t: usize| list.iter().find(|p| p.1 == t).map_or(0, |p| p.0);
        for (adj_a, adj_b) in [(&self.a.down, &self.b.down), (&self.a.up, &self.b.up)] {
            for &(v, z) in &adj_a[x] {
                let w = self.fwd[z];
                if w != usize::MAX && coeff(&adj_b[y], w) != v {
                    return false;
                }
            }
            for &(v, w) in &adj_b[y] {
                let z = self.bwd[w];
                if z != usize::MAX && coeff(&adj_a[x], z) != v {
                    return false;
                }
            }
        }
        true
    }

    fn go(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if depth == self.order.len() {
            self.found.push(self.fwd.clone());
            return Ok(());
        }
        let x = self.order[depth];
        for y in 0..self.b.ids.len() {
            if self.cb[y] != self.ca[x] || self.bwd[y] != usize::MAX || !self.consistent(x, y) {
                continue;
            }
            self.fwd[x] = y;
            self.bwd[y] = x;
            self.go(depth + 1)?;
            self.fwd[x] = usize::MAX;
            self.bwd[y] = usize::MAX;
        }
        Ok(())
    }
}

/// True when `f` is a bijection on bases commuting with everything.
pub fn is_isomorphism(f: &ADCMorphism) -> bool {
    let mut hit = BTreeSet::new();
    for c in f.table().values() {
        match c.as_basis_element() {
            Some(t) if hit.insert(t.clone()) => {}
            _ => return false,
        }
    }
    hit.len() == f.target().len() && f.source().len() == f.target().len()
}

// ---------------------------------------------------------------- squares

/// A commuting square
///
/// ```text
///   A --ab--> B
///   |         |
///   am        bn
///   v         v
///   M --mn--> N
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub ab: ADCMorphism,
    pub am: ADCMorphism,
    pub bn: ADCMorphism,
    pub mn: ADCMorphism,
}

impl Square {
    pub fn new(ab: ADCMorphism, am: ADCMorphism, bn: ADCMorphism, mn: ADCMorphism) -> Result<Self> {
        let same = |x: &Arc<BasedADC>, y: &Arc<BasedADC>| **x == **y;
        if !same(ab.source(), am.source())
            || !same(ab.target(), bn.source())
            || !same(am.target(), mn.source())
            || !same(bn.target(), mn.target())
        {
            return Err(Error::SourceTargetMismatch);
        }
        let p = compose_morphism(&bn, &ab)?;
        let q = compose_morphism(&mn, &am)?;
        if let Some(id) = p.table().iter().find(|(k, c)| q.image(k) != Some(c)).map(|(k, _)| k) {
            return Err(Error::ValidationFailed(format!("square does not commute at `{id}`")));
        }
        Ok(Square { ab, am, bn, mn })
    }

    pub fn a(&self) -> &BasedADC {
        self.ab.source()
    }
    pub fn b(&self) -> &BasedADC {
        self.ab.target()
    }
    pub fn m(&self) -> &BasedADC {
        self.am.target()
    }
    pub fn n(&self) -> &BasedADC {
        self.bn.target()
    }
}

/// A Smith decomposition `u · matrix · v = d`, kept so it can be re-checked.
#[derive(Clone, Debug)]
pub struct SmithTrace {
    pub degree: usize,
    pub matrix: Mat,
    pub u: Mat,
    pub d: Mat,
    pub v: Mat,
}

impl SmithTrace {
    fn of(degree: usize, matrix: Mat) -> Self {
        let s = smith(&matrix);
        SmithTrace { degree, matrix, u: s.u, d: s.d, v: s.v }
    }

    /// Recomputes the product, unimodularity and diagonal shape.
    pub fn revalidate(&self) -> bool {
        let diag = self
            .d
            .data
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        diag && is_unimodular(&self.u) && is_unimodular(&self.v) && self.u.mul(&self.matrix).mul(&self.v) == self.d
    }
}

/// Verdict of a square check with the failing degree and reason, if any.
#[derive(Clone, Debug)]
pub struct SquareCheck {
    pub failure: Option<String>,
    pub traces: Vec<SmithTrace>,
}

impl SquareCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Pushout criterion: `coker(A → B ⊕ M) → N` is an isomorphism in every
/// degree and the basis of `N` is hit by basis elements of `B` or `M`.
pub fn check_cocartesian(sq: &Square) -> SquareCheck {
    let mut traces = Vec::new();
    for d in 0..=top_degree(&[sq.a(), sq.b(), sq.m(), sq.n()]) {
        let dm = vstack(&morphism_matrix(&sq.ab, d), &neg(&morphism_matrix(&sq.am, d)));
        let s = morphism_matrix(&sq.bn, d).hcat(&morphism_matrix(&sq.mn, d));
        let fail = |msg: String| SquareCheck { failure: Some(format!("degree {d}: {msg}")), traces: Vec::new() };
        if !s.mul(&dm).is_zero() {
            return fail("square does not commute".into());
        }
        for (i, id) in sq.n().ids_of_deg(d).iter().enumerate() {
            let hit = (0..s.cols).any(|j| (0..s.rows).all(|r| *s.get(r, j) == BigInt::from(i64::from(r == i))));
            if !hit {
                return fail(format!("basis element `{id}` is not the image of a basis element"));
            }
        }
        if image_lattice(&dm) != kernel(&s) {
            return fail("kernel of B ⊕ M → N differs from the image of A".into());
        }
        traces.push(SmithTrace::of(d, dm));
    }
    SquareCheck { failure: None, traces }
}

pub fn is_cocartesian(sq: &Square) -> bool {
    check_cocartesian(sq).holds()
}

fn positive_vectors(dim: usize, bound: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    fn go(dim: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v as i64);
            go(dim, left - v, cur, out);
            cur.pop();
        }
    }
    go(dim, bound, &mut Vec::new(), &mut out);
    out
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Pullback criterion: `A → B ×_N M` is an isomorphism of groups in every
/// degree, and every positive pair with coefficient sums at most `bound`
/// lifts to a positive element of `A`.
pub fn check_cartesian(sq: &Square, bound: usize) -> SquareCheck {
    let mut traces = Vec::new();
    for d in 0..=top_degree(&[sq.a(), sq.b(), sq.m(), sq.n()]) {
        let (ab, am) = (morphism_matrix(&sq.ab, d), morphism_matrix(&sq.am, d));
        let (bn, mn) = (morphism_matrix(&sq.bn, d), morphism_matrix(&sq.mn, d));
        let j = vstack(&ab, &am);
        let t = bn.hcat(&neg(&mn));
        let fail = |msg: String| SquareCheck { failure: Some(format!("degree {d}: {msg}")), traces: Vec::new() };
        if !t.mul(&j).is_zero() {
            return fail("square does not commute".into());
        }
        if rank(&j) != j.cols {
            return fail("A → B ×_N M is not injective".into());
        }
        if image_lattice(&j) != kernel(&t) {
            return fail("A → B ×_N M is not surjective".into());
        }
        let mut by_image: HashMap<Vec<BigInt>, Vec<Vec<i64>>> = HashMap::new();
        for m in positive_vectors(mn.cols, bound) {
            by_image.entry(mn.mul_vec(&to_big(&m))).or_default().push(m);
        }
        for b in positive_vectors(bn.cols, bound) {
            let img = bn.mul_vec(&to_big(&b));
            for m in by_image.get(&img).map_or(&[][..], |v| v.as_slice()) {
                let mut pair = to_big(&b);
                pair.extend(to_big(m));
                match solve(&j, &pair) {
                    Some(a) if a.iter().all(|x| !x.is_negative()) => {}
                    _ => return fail(format!("positive pair {b:?}, {m:?} does not lift to a positive element")),
                }
            }
        }
        traces.push(SmithTrace::of(d, j));
    }
    SquareCheck { failure: None, traces }
}

pub fn is_cartesian(sq: &Square, bound: usize) -> bool {
    check_cartesian(sq, bound).holds()
}

/// Pullback criterion on cells: in every dimension, cells of `A` correspond
/// bijectively to pairs of cells of `B` and `M` with equal image in `N`
/// (all enumerated with row sums at most `bound`).
pub fn check_nu_cartesian(sq: &Square, bound: usize) -> SquareCheck {
    for n in 0..=top_degree(&[sq.a(), sq.b(), sq.m(), sq.n()]) {
        let fail = |msg: String| SquareCheck { failure: Some(format!("dimension {n}: {msg}")), traces: Vec::new() };
        let mut by_image: HashMap<crate::adc::SteinerArray, Vec<crate::adc::SteinerArray>> = HashMap::new();
        for m in enumerate_cells(sq.m(), n, bound) {
            let img = sq.mn.apply_array(&m).expect("cell of the source");
            by_image.entry(img).or_default().push(m);
        }
        let mut pairs = BTreeSet::new();
        for b in enumerate_cells(sq.b(), n, bound) {
            let img = sq.bn.apply_array(&b).expect("cell of the source");
            for m in by_image.get(&img).into_iter().flatten() {
                pairs.insert((b.clone(), m.clone()));
            }
        }
        let mut lifted = BTreeSet::new();
        for a in enumerate_cells(sq.a(), n, bound) {
            let p = (sq.ab.apply_array(&a).unwrap(), sq.am.apply_array(&a).unwrap());
            if !lifted.insert(p) {
                return fail(format!("two cells of A have the same image, one of them {a}"));
            }
        }
        if let Some((b, m)) = pairs.iter().find(|p| !lifted.contains(*p)) {
            return fail(format!("pair ({b}, {m}) does not lift"));
        }
    }
    SquareCheck { failure: None, traces: Vec::new() }
}

pub fn is_nu_cartesian(sq: &Square, bound: usize) -> bool {
    check_nu_cartesian(sq, bound).holds()
}

// ---------------------------------------------------------------- pushouts

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The pushout of `L ←f K →g M` along quasi-rigid maps, computed on bases.
/// Basis elements keep their `L` name (or their `M` name, with a `#2`
/// suffix on clashes).
pub fn pushout_basis(f: &ADCMorphism, g: &ADCMorphism) -> Result<(BasedADC, ADCMorphism, ADCMorphism)> {
    if **f.source() != **g.source() {
        return Err(Error::SourceTargetMismatch);
    }
    for h in [f, g] {
        if let Some(w) = quasirigid_witness(h)? {
            return Err(Error::NotQuasiRigid { witness: w });
        }
    }
    let (l, m) = (f.target().clone(), g.target().clone());
    let lids: Vec<Id> = l.ids().cloned().collect();
    let mids: Vec<Id> = m.ids().cloned().collect();
    // node 0 is zero, then L, then M
    let node_l = |i: usize| 1 + i;
    let node_m = |i: usize| 1 + lids.len() + i;
    let lix: HashMap<&Id, usize> = lids.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mix: HashMap<&Id, usize> = mids.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut uf = UnionFind((0..1 + lids.len() + mids.len()).collect());
    for k in f.source().ids() {
        let node = |c: &Chain, left: bool| match c.as_basis_element() {
            None => 0,
            Some(t) if left => node_l(lix[t]),
            Some(t) => node_m(mix[t]),
        };
        let a = node(f.image(k).unwrap(), true);
        let b = node(g.image(k).unwrap(), false);
        uf.union(a, b);
    }
    let zero = uf.find(0);
    let mut names: BTreeMap<usize, Id> = BTreeMap::new();
    let mut used: BTreeSet<Id> = BTreeSet::new();
    let mut degs: BTreeMap<Id, usize> = BTreeMap::new();
    for (i, id) in lids.iter().enumerate() {
        let r = uf.find(node_l(i));
        if r != zero && !names.contains_key(&r) {
            names.insert(r, id.clone());
            used.insert(id.clone());
            degs.insert(id.clone(), l.deg(id).unwrap());
        }
    }
    for (i, id) in mids.iter().enumerate() {
        let r = uf.find(node_m(i));
        if r != zero && !names.contains_key(&r) {
            let mut name = id.clone();
            let mut k = 2;
            while used.contains(&name) {
                name = format!("{id}#{k}");
                k += 1;
            }
            names.insert(r, name.clone());
            used.insert(name.clone());
            degs.insert(name, m.deg(id).unwrap());
        }
    }
    let mut push_l = BTreeMap::new();
    let mut push_m = BTreeMap::new();
    for (i, id) in lids.iter().enumerate() {
        let r = uf.find(node_l(i));
        let d = l.deg(id).unwrap();
        push_l.insert(id.clone(), names.get(&r).map_or(Chain::zero(d), |n| Chain::basis(d, n.clone())));
    }
    for (i, id) in mids.iter().enumerate() {
        let r = uf.find(node_m(i));
        let d = m.deg(id).unwrap();
        push_m.insert(id.clone(), names.get(&r).map_or(Chain::zero(d), |n| Chain::basis(d, n.clone())));
    }
    let image = |table: &BTreeMap<Id, Chain>, c: &Chain| {
        let mut out = Chain::zero(c.deg());
        for (x, v) in c.iter() {
            out = out.add_scaled(&table[x], v).expect("same degree");
        }
        out
    };
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::new();
    for (r, name) in &names {
        let (src, table) = if *r <= lids.len() {
            (&l, &push_l)
        } else {
            (&m, &push_m)
        };
        let orig = if *r <= lids.len() { &lids[*r - 1] } else { &mids[*r - 1 - lids.len()] };
        let d = src.deg(orig).unwrap();
        if d == 0 {
            aug.insert(name.clone(), src.aug_of(orig).unwrap());
        } else {
            diff.insert(name.clone(), image(table, src.diff_of(orig).unwrap()));
        }
    }
    let p = Arc::new(BasedADC::from_chains(degs, diff, aug).map_err(|e| Error::ValidationFailed(e.to_string()))?);
    let in_l = ADCMorphism::from_chains(l, p.clone(), push_l).map_err(|e| Error::ValidationFailed(e.to_string()))?;
    let in_m = ADCMorphism::from_chains(m, p.clone(), push_m).map_err(|e| Error::ValidationFailed(e.to_string()))?;
    let sq = Square::new(f.clone(), g.clone(), in_l.clone(), in_m.clone())?;
    if let Some(why) = check_cocartesian(&sq).failure {
        return Err(Error::ValidationFailed(why));
    }
    Ok(((*p).clone(), in_l, in_m))
}

// ---------------------------------------------------------------- zigzags

/// `X_0 ←f_0 Y_0 →g_0 X_1 ←f_1 Y_1 → … → X_r`.
#[derive(Clone, Debug)]
pub struct Zigzag {
    pub xs: Vec<Arc<BasedADC>>,
    pub fs: Vec<ADCMorphism>,
    pub gs: Vec<ADCMorphism>,
}

impl Zigzag {
    pub fn new(xs: Vec<Arc<BasedADC>>, fs: Vec<ADCMorphism>, gs: Vec<ADCMorphism>) -> Result<Self> {
        if xs.is_empty() || fs.len() + 1 != xs.len() || gs.len() != fs.len() {
            return Err(Error::ShapeMismatch("a zigzag alternates n+1 objects with n spans".into()));
        }
        for j in 0..fs.len() {
            if **fs[j].source() != **gs[j].source() || **fs[j].target() != *xs[j] || **gs[j].target() != *xs[j + 1] {
                return Err(Error::SourceTargetMismatch);
            }
        }
        Ok(Zigzag { xs, fs, gs })
    }

    pub fn single(x: BasedADC) -> Self {
        Zigzag { xs: vec![Arc::new(x)], fs: Vec::new(), gs: Vec::new() }
    }
}

/// A degreewise colimit in quotient coordinates.
struct Quotient {
    offsets: Vec<usize>,
    u_rows: Vec<Vec<BigInt>>,
}

impl Quotient {
    fn coords(&self, i: usize, local: &[BigInt]) -> Vec<BigInt> {
        let off = self.offsets[i];
        self.u_rows
            .iter()
            .map(|r| r[off..off + local.len()].iter().zip(local).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn sums_up_to(s: &[Vec<BigInt>], depth: usize, cap: usize) -> HashSet<Vec<BigInt>> {
    let mut all = HashSet::new();
    let mut layer: HashSet<Vec<BigInt>> = s.iter().cloned().collect();
    for _ in 2..=depth {
        let mut next = HashSet::new();
        for v in &layer {
            for t in s {
                next.insert(v.iter().zip(t).map(|(a, b)| a + b).collect::<Vec<_>>());
            }
        }
        all.extend(next.iter().cloned());
        if all.len() > cap {
            break;
        }
        layer = next;
    }
    all
}

/// The colimit of a zigzag, with a basis extracted from images of the
/// objects' bases. Fails when the result is not free or not based.
pub fn colim_zigzag(z: &Zigzag) -> Result<BasedADC> {
    let top = top_degree(&z.xs.iter().map(|x| x.as_ref()).collect::<Vec<_>>());
    let mut quotients = Vec::new();
    for d in 0..=top {
        let sizes: Vec<usize> = z.xs.iter().map(|x| x.ids_of_deg(d).len()).collect();
        let mut offsets = vec![0];
        for s in &sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let total = offsets[sizes.len()];
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for (j, (f, g)) in z.fs.iter().zip(&z.gs).enumerate() {
            let (fm, gm) = (morphism_matrix(f, d), morphism_matrix(g, d));
            for c in 0..fm.cols {
                let mut col = vec![BigInt::zero(); total];
                for r in 0..fm.rows {
                    col[offsets[j] + r] += fm.get(r, c);
                }
                for r in 0..gm.rows {
                    col[offsets[j + 1] + r] -= gm.get(r, c);
                }
                cols.push(col);
            }
        }
        let dm = Mat::from_rows(cols, total).transpose();
        let dm = if dm.rows == total { dm } else { Mat::zeros(total, 0) };
        let s = smith(&dm);
        if s.invariants().iter().any(|x| !x.is_one()) {
            return Err(Error::TorsionInColimit { deg: d });
        }
        let u_rows = s.u.data[s.rank..].to_vec();
        quotients.push(Quotient { offsets, u_rows });
    }
    // images of basis elements, in (object, id) order
    let mut bases: Vec<Vec<(Vec<BigInt>, Id)>> = Vec::new();
    for (d, q) in quotients.iter().enumerate() {
        let r = q.u_rows.len();
        let mut images: Vec<(Vec<BigInt>, usize, Id)> = Vec::new();
        for (i, x) in z.xs.iter().enumerate() {
            for id in x.ids_of_deg(d) {
                let v = q.coords(i, &chain_vec(x, &Chain::basis(d, id.clone())));
                if v.iter().any(|c| !c.is_zero()) {
                    images.push((v, i, id.clone()));
                }
            }
        }
        let mut distinct: Vec<(Vec<BigInt>, Id)> = Vec::new();
        for (v, i, id) in &images {
            if !distinct.iter().any(|(w, _)| w == v) {
                distinct.push((v.clone(), format!("{i}:{id}")));
            }
        }
        let vecs: Vec<Vec<BigInt>> = distinct.iter().map(|p| p.0.clone()).collect();
        let sums = sums_up_to(&vecs, vecs.len().min(6), 100_000);
        let basis: Vec<(Vec<BigInt>, Id)> = distinct.into_iter().filter(|(v, _)| !sums.contains(v)).collect();
        let nobasis = |msg: &str| Error::NoBasisFound { deg: d, msg: msg.to_string() };
        if basis.len() != r {
            return Err(nobasis(&format!("{} irreducible images for rank {r}", basis.len())));
        }
        let bm = Mat::from_rows(basis.iter().map(|p| p.0.clone()).collect(), r).transpose();
        if !is_unimodular(&bm) {
            return Err(nobasis("irreducible images do not form a basis"));
        }
        for (v, _, id) in &images {
            let c = solve(&bm, v).expect("unimodular");
            if c.iter().any(Signed::is_negative) {
                return Err(nobasis(&format!("image of `{id}` is not positive")));
            }
        }
        bases.push(basis);
    }
    let mut degs = BTreeMap::new();
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::new();
    for (d, basis) in bases.iter().enumerate() {
        for (_, name) in basis {
            degs.insert(name.clone(), d);
            let (i, id) = name.split_once(':').expect("colimit name");
            let i: usize = i.parse().expect("object index");
            let x = &z.xs[i];
            if d == 0 {
                aug.insert(name.clone(), x.aug_of(id).unwrap());
            } else {
                let bd = x.diff_of(id).unwrap();
                let v = quotients[d - 1].coords(i, &chain_vec(x, bd));
                let prev = &bases[d - 1];
                let bm = Mat::from_rows(prev.iter().map(|p| p.0.clone()).collect(), prev.len()).transpose();
                let c = if prev.is_empty() { Vec::new() } else { solve(&bm, &v).expect("unimodular") };
                let terms = prev.iter().zip(c).map(|((_, n), k)| (n.clone(), k.to_i64().expect("small coefficient")));
                diff.insert(name.clone(), Chain::from_terms(d - 1, terms));
            }
        }
    }
    BasedADC::from_chains(degs, diff, aug)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gray::{point, point_at};
    use crate::theta::{globe_adc, lambda_gs, parse_gs, simplex_adc};

    #[test]
    fn rigid_globes() {
        let d2 = globe_adc(2);
        assert_eq!(isos(&d2, &d2).unwrap().len(), 1);
        let two = point().disjoint_union(&point(), "a", "b").unwrap();
        assert_eq!(isos(&two, &two).unwrap().len(), 2);
        let l = lambda_gs(&parse_gs("D2").unwrap());
        assert_eq!(isos(&l, &d2).unwrap().len(), 1);
    }

    #[test]
    fn gluing_two_arrows() {
        let d1 = globe_adc(1);
        let f = point_at(&d1, "e0p").unwrap();
        let g = point_at(&d1, "e0m").unwrap();
        let (p, _, _) = pushout_basis(&f, &g).unwrap();
        assert_eq!(isos(&p, &simplex_adc(2)).unwrap().len(), 1);
        let z = Zigzag::new(vec![Arc::new(d1.clone()), Arc::new(d1)], vec![f], vec![g]).unwrap();
        let c = colim_zigzag(&z).unwrap();
        assert_eq!(isos(&c, &p).unwrap().len(), 1);
    }

    #[test]
    fn single_object_colimit() {
        let k = globe_adc(2);
        let c = colim_zigzag(&Zigzag::single(k.clone())).unwrap();
        assert_eq!(isos(&c, &k).unwrap().len(), 1);
    }

    #[test]
    fn torsion_is_reported() {
        let two = BasedADC::builder().point("a").point_aug("b", 0).build().unwrap();
        let one = Arc::new(BasedADC::builder().point_aug("z", 0).build().unwrap());
        let twice = BTreeMap::from([("z".into(), BTreeMap::from([("b".into(), 2)]))]);
        let f = ADCMorphism::new(one.clone(), Arc::new(two.clone()), twice).unwrap();
        let g = ADCMorphism::new(one, Arc::new(BasedADC::empty()), BTreeMap::new()).unwrap();
        let z = Zigzag::new(vec![Arc::new(two), Arc::new(BasedADC::empty())], vec![f], vec![g]).unwrap();
        assert_eq!(colim_zigzag(&z), Err(Error::TorsionInColimit { deg: 0 }));
    }
}
