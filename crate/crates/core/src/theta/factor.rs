use super::morphism::{compose_tm, enumerate_hom, ThetaMorphism};
use super::GlobularSum;

/// Classification flags of a Θ-morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Flags {
    pub globular: bool,
    pub degenerate: bool,
    pub mono: bool,
    pub algebraic: bool,
    pub conduche: bool,
}

fn is_globular(f: &ThetaMorphism) -> bool {
    f.f.windows(2).all(|w| w[1] == w[0] + 1) && f.comps.iter().flatten().all(is_globular)
}

fn is_degenerate(f: &ThetaMorphism) -> bool {
    if f.tgt.is_point() {
        return true;
    }
    let surjective = f.f[0] == 0 && f.f[f.f.len() - 1] == f.tgt.segments() && {
        let mut hit = vec![false; f.tgt.segments() + 1];
        for &v in &f.f {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    };
    surjective && f.comps.iter().flatten().all(is_degenerate)
}

/// Globular morphisms into `b` (all of them, point inclusions included).
pub fn globular_into(b: &GlobularSum) -> Vec<ThetaMorphism> {
    let m = b.segments();
    let mut out: Vec<ThetaMorphism> = (0..=m).map(|p| ThetaMorphism::point(b, p)).collect();
    for start in 0..m {
        for len in 1..=m - start {
            // each segment start+j receives a globular map from some shape
            let mut partial: Vec<Vec<ThetaMorphism>> = vec![Vec::new()];
            for k in start..start + len {
                let options = globular_into(&b.branches[k]);
                partial = partial
                    .iter()
                    .flat_map(|p| {
                        options.iter().map(move |o| {
                            let mut p = p.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            for comps in partial {
                let src = GlobularSum::new(comps.iter().map(|c| c.src.clone()).collect());
                out.push(ThetaMorphism {
                    src,
                    tgt: b.clone(),
                    f: (start..=start + len).collect(),
                    comps: comps.into_iter().map(|c| vec![c]).collect(),
                });
            }
        }
    }
    out
}

fn is_algebraic(f: &ThetaMorphism) -> bool {
    for i in globular_into(&f.tgt) {
        if i.is_identity() {
            continue;
        }
        if enumerate_hom(&f.src, &i.src).iter().any(|g| compose_tm(&i, g).as_ref() == Ok(f)) {
            return false;
        }
    }
    true
}

pub fn classify(f: &ThetaMorphism) -> Flags {
    let globular = is_globular(f);
    let (d, _) = factor_reedy(f);
    Flags {
        globular,
        degenerate: is_degenerate(f),
        mono: d.is_identity(),
        algebraic: is_algebraic(f),
        conduche: globular,
    }
}

/// `f = glob ∘ alg` with `alg` algebraic and `glob` globular.
pub fn factor_alg_glob(f: &ThetaMorphism) -> (ThetaMorphism, ThetaMorphism) {
    let n = f.src.segments();
    if n == 0 {
        return (ThetaMorphism::identity(&f.src), f.clone());
    }
    let (lo, hi) = (f.f[0], f.f[n]);
    let mut alg_comps: Vec<Vec<ThetaMorphism>> = vec![Vec::new(); n];
    let mut glob_comps = Vec::new();
    let mut mid = Vec::new();
    for i in 0..n {
        for c in &f.comps[i] {
            let (a, g) = factor_alg_glob(c);
            mid.push(a.tgt.clone());
            alg_comps[i].push(a);
            glob_comps.push(vec![g]);
        }
    }
    let c = GlobularSum::new(mid);
    let alg = ThetaMorphism { src: f.src.clone(), tgt: c.clone(), f: f.f.iter().map(|v| v - lo).collect(), comps: alg_comps };
    let glob = ThetaMorphism { src: c, tgt: f.tgt.clone(), f: (lo..=hi).collect(), comps: glob_comps };
    (alg, glob)
}

/// `f = mono ∘ degen` with `degen` degenerate and `mono` a monomorphism.
pub fn factor_reedy(f: &ThetaMorphism) -> (ThetaMorphism, ThetaMorphism) {
    let (d, mut ms) = reedy_multi(&f.src, std::slice::from_ref(f));
    (d, ms.pop().expect("one leg"))
}

/// Joint factorization of a family `hs_j: a → b_j` through a degenerate
/// `a → c`, returning the degenerate part and the induced maps `c → b_j`.
fn reedy_multi(a: &GlobularSum, hs: &[ThetaMorphism]) -> (ThetaMorphism, Vec<ThetaMorphism>) {
    if a.is_point() {
        return (ThetaMorphism::identity(a), hs.to_vec());
    }
    if hs.is_empty() {
        return (ThetaMorphism::terminal(a), Vec::new());
    }
    let n = a.segments();
    let survives: Vec<bool> = (0..n).map(|i| hs.iter().any(|h| h.f[i] < h.f[i + 1])).collect();
    let mut collapse = vec![0usize; n + 1];
    for i in 0..n {
        collapse[i + 1] = collapse[i] + usize::from(survives[i]);
    }
    let mut mid = Vec::new();
    let mut degen_comps: Vec<Vec<ThetaMorphism>> = vec![Vec::new(); n];
    // for each surviving segment, the mono parts of all legs' components
    let mut parts: Vec<Vec<ThetaMorphism>> = Vec::new();
    for i in 0..n {
        if !survives[i] {
            continue;
        }
        let tuple: Vec<ThetaMorphism> = hs.iter().flat_map(|h| h.comps[i].iter().cloned()).collect();
        let (d, ms) = reedy_multi(&a.branches[i], &tuple);
        mid.push(d.tgt.clone());
        degen_comps[i].push(d);
        parts.push(ms);
    }
    let c = GlobularSum::new(mid);
    let degen = ThetaMorphism { src: a.clone(), tgt: c.clone(), f: collapse.clone(), comps: degen_comps };
    let mut offsets = vec![0usize; parts.len()];
    let mut monos = Vec::with_capacity(hs.len());
    for h in hs {
        let mut fv = vec![0usize; c.segments() + 1];
        for i in 0..=n {
            fv[collapse[i]] = h.f[i];
        }
        let mut comps = Vec::with_capacity(c.segments());
        let mut s = 0;
        for i in 0..n {
            if !survives[i] {
                continue;
            }
            let cnt = h.f[i + 1] - h.f[i];
            comps.push(parts[s][offsets[s]..offsets[s] + cnt].to_vec());
            offsets[s] += cnt;
            s += 1;
        }
        monos.push(ThetaMorphism { src: c.clone(), tgt: h.tgt.clone(), f: fv, comps });
    }
    (degen, monos)
}
