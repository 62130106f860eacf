use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{lambda_gs, parse_gs, GlobularSum};
use crate::adc::Sign;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::morphism::ADCMorphism;

/// A morphism `[a, n] → [b, m]`: a monotone map `f: [n] → [m]` and, for each
/// source segment `i`, one morphism `a_i → b_k` per `f(i) ≤ k < f(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMorphism {
    pub src: GlobularSum,
    pub tgt: GlobularSum,
    pub f: Vec<usize>,
    pub comps: Vec<Vec<ThetaMorphism>>,
}

impl ThetaMorphism {
    /// Checks the shape invariants.
    pub fn new(src: GlobularSum, tgt: GlobularSum, f: Vec<usize>, comps: Vec<Vec<ThetaMorphism>>) -> Result<Self> {
        let m = ThetaMorphism { src, tgt, f, comps };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.src.segments();
        let m = self.tgt.segments();
        let bad = |s: String| Err(Error::ShapeMismatch(s));
        if self.f.len() != n + 1 {
            return bad(format!("map on objects has {} values for {} objects", self.f.len(), n + 1));
        }
        if self.f.iter().any(|&v| v > m) {
            return bad(format!("object map exceeds target objects 0..={m}"));
        }
        if self.f.windows(2).any(|w| w[0] > w[1]) {
            return bad("object map is not monotone".into());
        }
        if self.comps.len() != n {
            return bad(format!("{} component lists for {n} segments", self.comps.len()));
        }
        for i in 0..n {
            let cs = &self.comps[i];
            if cs.len() != self.f[i + 1] - self.f[i] {
                return bad(format!("segment {i} has {} components, expected {}", cs.len(), self.f[i + 1] - self.f[i]));
            }
            for (j, c) in cs.iter().enumerate() {
                if c.src != self.src.branches[i] || c.tgt != self.tgt.branches[self.f[i] + j] {
                    return bad(format!("component ({i},{}) has the wrong endpoints", self.f[i] + j));
                }
                c.validate()?;
            }
        }
        Ok(())
    }

    pub fn identity(g: &GlobularSum) -> Self {
        ThetaMorphism {
            src: g.clone(),
            tgt: g.clone(),
            f: (0..=g.segments()).collect(),
            comps: g.branches.iter().map(|b| vec![ThetaMorphism::identity(b)]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt && *self == ThetaMorphism::identity(&self.src)
    }

    /// The map `[0] → b` picking object `p`.
    pub fn point(b: &GlobularSum, p: usize) -> Self {
        ThetaMorphism { src: GlobularSum::point(), tgt: b.clone(), f: vec![p], comps: Vec::new() }
    }

    /// The unique map `a → [0]`.
    pub fn terminal(a: &GlobularSum) -> Self {
        ThetaMorphism {
            src: a.clone(),
            tgt: GlobularSum::point(),
            f: vec![0; a.segments() + 1],
            comps: vec![Vec::new(); a.segments()],
        }
    }

    /// `[self, 1]` as a morphism `[a,1] → [b,1]`.
    pub fn suspend(&self) -> Self {
        ThetaMorphism {
            src: self.src.suspend(),
            tgt: self.tgt.suspend(),
            f: vec![0, 1],
            comps: vec![vec![self.clone()]],
        }
    }

    /// JSON form: `{"src", "tgt", "f", "comps"}` with nested components as
    /// `{"f", "comps"}`.
    pub fn to_json(&self) -> Value {
        let mut v = self.body_json();
        v["src"] = json!(self.src.to_string());
        v["tgt"] = json!(self.tgt.to_string());
        v
    }

    fn body_json(&self) -> Value {
        json!({
            "f": self.f,
            "comps": self.comps.iter().map(|cs| cs.iter().map(|c| c.body_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Format("Θ-morphism must be an object".into()))?;
        for k in obj.keys() {
            if !["src", "tgt", "f", "comps"].contains(&k.as_str()) {
                return Err(Error::Format(format!("unknown key `{k}` in Θ-morphism")));
            }
        }
        let gs = |k: &str| -> Result<GlobularSum> {
            let s = obj.get(k).and_then(Value::as_str).ok_or_else(|| Error::Format(format!("missing `{k}`")))?;
            parse_gs(s)
        };
        let m = Self::body_from_json(v, &gs("src")?, &gs("tgt")?)?;
        m.validate()?;
        Ok(m)
    }

    fn body_from_json(v: &Value, src: &GlobularSum, tgt: &GlobularSum) -> Result<Self> {
        let f: Vec<usize> = serde_json::from_value(v.get("f").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::Format(format!("`f`: {e}")))?;
        let raw = match v.get("comps") {
            None => Vec::new(),
            Some(Value::Array(a)) => a.clone(),
            Some(_) => return Err(Error::Format("`comps` must be an array".into())),
        };
        if f.len() != src.segments() + 1 || raw.len() != src.segments() {
            return Err(Error::ShapeMismatch(format!("encoding does not fit source {src}")));
        }
        let mut comps = Vec::new();
        for (i, cs) in raw.iter().enumerate() {
            let cs = cs.as_array().ok_or_else(|| Error::Format("component list must be an array".into()))?;
            let mut out = Vec::new();
            for (j, c) in cs.iter().enumerate() {
                let k = f[i] + j;
                let b = tgt.branches.get(k).ok_or_else(|| Error::ShapeMismatch(format!("no target segment {k}")))?;
                out.push(Self::body_from_json(c, &src.branches[i], b)?);
            }
            comps.push(out);
        }
        Ok(ThetaMorphism { src: src.clone(), tgt: tgt.clone(), f, comps })
    }
}

impl fmt::Display for ThetaMorphism {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}", self.f)?;
        if self.comps.iter().any(|c| !c.is_empty()) {
            write!(fm, "{{")?;
            for (i, cs) in self.comps.iter().enumerate() {
                if i > 0 {
                    write!(fm, ";")?;
                }
                for (j, c) in cs.iter().enumerate() {
                    if j > 0 {
                        write!(fm, ",")?;
                    }
                    write!(fm, "{c}")?;
                }
            }
            write!(fm, "}}")?;
        }
        Ok(())
    }
}

/// `g ∘ f`.
pub fn compose_tm(g: &ThetaMorphism, f: &ThetaMorphism) -> Result<ThetaMorphism> {
    if f.tgt != g.src {
        return Err(Error::ShapeMismatch(format!("cannot compose: {} ≠ {}", f.tgt, g.src)));
    }
    Ok(compose_unchecked(g, f))
}

fn compose_unchecked(g: &ThetaMorphism, f: &ThetaMorphism) -> ThetaMorphism {
    let fv: Vec<usize> = f.f.iter().map(|&v| g.f[v]).collect();
    let mut comps = Vec::with_capacity(f.comps.len());
    for i in 0..f.comps.len() {
        let mut cs = Vec::new();
        for j in f.f[i]..f.f[i + 1] {
            let inner = &f.comps[i][j - f.f[i]];
            for gc in &g.comps[j] {
                cs.push(compose_unchecked(gc, inner));
            }
        }
        comps.push(cs);
    }
    ThetaMorphism { src: f.src.clone(), tgt: g.tgt.clone(), f: fv, comps }
}

fn image_of(f: &ThetaMorphism, id: &str) -> Chain {
    match id.split_once('.') {
        None => {
            let p: usize = id.parse().expect("λ object id");
            Chain::basis(0, f.f[p].to_string())
        }
        Some((i, rest)) => {
            let i: usize = i.parse().expect("λ segment id");
            let deg = id.matches('.').count();
            let mut out = Chain::zero(deg);
            for k in f.f[i]..f.f[i + 1] {
                let inner = image_of(&f.comps[i][k - f.f[i]], rest);
                for (x, v) in inner.iter() {
                    out.add_term(format!("{k}.{x}"), v);
                }
            }
            out
        }
    }
}

/// The morphism `λ(f): λ(a) → λ(b)`.
pub fn tm_to_adc(f: &ThetaMorphism) -> Result<ADCMorphism> {
    let s = lambda_gs(&f.src);
    let t = lambda_gs(&f.tgt);
    let map = s.ids().map(|id| (id.clone(), image_of(f, id))).collect::<BTreeMap<_, _>>();
    ADCMorphism::from_chains(Arc::new(s), Arc::new(t), map)
}

/// All morphisms `a → b`, sorted.
pub fn enumerate_hom(a: &GlobularSum, b: &GlobularSum) -> Vec<ThetaMorphism> {
    let mut memo = HashMap::new();
    hom_memo(a, b, &mut memo).as_ref().clone()
}

type Memo = HashMap<(GlobularSum, GlobularSum), Arc<Vec<ThetaMorphism>>>;

fn hom_memo(a: &GlobularSum, b: &GlobularSum, memo: &mut Memo) -> Arc<Vec<ThetaMorphism>> {
    if let Some(v) = memo.get(&(a.clone(), b.clone())) {
        return v.clone();
    }
    let n = a.segments();
    let m = b.segments();
    let mut out = Vec::new();
    for fv in monotone_maps(n, m) {
        // per segment: the list of choices, each a tuple of components
        let mut per_segment: Vec<Vec<Vec<ThetaMorphism>>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut tuples: Vec<Vec<ThetaMorphism>> = vec![Vec::new()];
            for k in fv[i]..fv[i + 1] {
                let hs = hom_memo(&a.branches[i], &b.branches[k], memo);
                tuples = tuples
                    .iter()
                    .flat_map(|t| {
                        hs.iter().map(move |h| {
                            let mut t = t.clone();
                            t.push(h.clone());
                            t
                        })
                    })
                    .collect();
            }
            per_segment.push(tuples);
        }
        let mut choice: Vec<Vec<Vec<ThetaMorphism>>> = vec![Vec::new()];
        for seg in &per_segment {
            choice = choice
                .iter()
                .flat_map(|c| {
                    seg.iter().map(move |t| {
                        let mut c = c.clone();
                        c.push(t.clone());
                        c
                    })
                })
                .collect();
        }
        for comps in choice {
            out.push(ThetaMorphism { src: a.clone(), tgt: b.clone(), f: fv.clone(), comps });
        }
    }
    out.sort();
    let out = Arc::new(out);
    memo.insert((a.clone(), b.clone()), out.clone());
    out
}

/// Monotone maps `[n] → [m]` in lexicographic order.
pub(crate) fn monotone_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn go(n: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=m {
            cur.push(v);
            go(n, m, v, cur, out);
            cur.pop();
        }
    }
    go(n, m, 0, &mut cur, &mut out);
    out
}

/// The globe inclusions indexing the spine of `g`.
pub fn spine(g: &GlobularSum) -> Vec<ThetaMorphism> {
    if g.is_point() {
        return vec![ThetaMorphism::identity(g)];
    }
    let mut out = Vec::new();
    for (i, b) in g.branches.iter().enumerate() {
        for inner in spine(b) {
            out.push(ThetaMorphism {
                src: inner.src.suspend(),
                tgt: g.clone(),
                f: vec![i, i + 1],
                comps: vec![vec![inner]],
            });
        }
    }
    out
}

/// `s_n(g)` (sign `-`) or `t_n(g)` (sign `+`) with its inclusion into `g`.
pub fn truncate(g: &GlobularSum, n: usize, sign: Sign) -> (GlobularSum, ThetaMorphism) {
    if n == 0 {
        let p = match sign {
            Sign::Minus => 0,
            Sign::Plus => g.segments(),
        };
        return (GlobularSum::point(), ThetaMorphism::point(g, p));
    }
    let parts: Vec<(GlobularSum, ThetaMorphism)> = g.branches.iter().map(|b| truncate(b, n - 1, sign)).collect();
    let s = GlobularSum::new(parts.iter().map(|p| p.0.clone()).collect());
    let inc = ThetaMorphism {
        src: s.clone(),
        tgt: g.clone(),
        f: (0..=g.segments()).collect(),
        comps: parts.into_iter().map(|p| vec![p.1]).collect(),
    };
    (s, inc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    /// The collapse `D_n → D_{n-1}`.
    Unit,
    /// `▽_{k,n}: D_n → D_n ⊔_{D_k} D_n`.
    Comp,
}

fn glue(n: usize, k: usize) -> GlobularSum {
    if k == 0 {
        GlobularSum::new(vec![GlobularSum::globe(n - 1); 2])
    } else {
        glue(n - 1, k - 1).suspend()
    }
}

/// The unit `D_n → D_{n-1}` or the composition map `▽_{k,n}`.
pub fn structural_map(kind: Structural, n: usize, k: usize) -> Result<ThetaMorphism> {
    match kind {
        Structural::Unit => {
            if n == 0 {
                return Err(Error::BadIndices("the unit needs n ≥ 1".into()));
            }
            let mut m = ThetaMorphism::terminal(&GlobularSum::globe(1));
            for _ in 1..n {
                m = m.suspend();
            }
            Ok(m)
        }
        Structural::Comp => {
            if k >= n {
                return Err(Error::BadIndices(format!("composition needs k < n, got k = {k}, n = {n}")));
            }
            if k == 0 {
                let d = GlobularSum::globe(n - 1);
                let id = ThetaMorphism::identity(&d);
                Ok(ThetaMorphism { src: GlobularSum::globe(n), tgt: glue(n, 0), f: vec![0, 2], comps: vec![vec![id.clone(), id]] })
            } else {
                Ok(structural_map(Structural::Comp, n - 1, k - 1)?.suspend())
            }
        }
    }
}
