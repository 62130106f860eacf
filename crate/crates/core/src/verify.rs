//! Executable checks of the structural identities, each backed by a
//! certificate that is re-validated before a pass is reported.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::adc::{atom, dual, BasedADC, Duality, Sign};
use crate::chain::Chain;
use crate::colim::{
    check_cartesian, check_cocartesian, check_nu_cartesian, colim_zigzag, is_isomorphism, isos, SmithTrace, Square,
    Zigzag,
};
use crate::error::{Error, Result};
use crate::gray::{self, Side};
use crate::morphism::ADCMorphism;
use crate::omega::{boundary, compose_cells, enumerate_cells, unit_cell, Cell};
use crate::theta::{
    classify, enumerate_hom, factor_alg_glob, factor_reedy, globe_adc, lambda_gs, parse_gs, compose_tm, GlobularSum,
};
use crate::twodim;

pub const MAX_DIM: usize = 3;
pub const MAX_BASIS: usize = 64;
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const SQUARE_BOUND: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub target: String,
    pub outcome: Outcome,
    /// Always present on failure.
    pub witness: Option<String>,
    pub wall_ms: Option<u128>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "name": self.name,
            "target": self.target,
            "verdict": self.outcome.to_string(),
            "witness": self.witness,
        });
        if let Some(ms) = self.wall_ms {
            v["wall_ms"] = json!(ms);
        }
        v
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<7} {} [{}]", self.outcome, self.name, self.target)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// Evidence behind a pass.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// A unique isomorphism, for each identity checked.
    Isomorphisms(Vec<ADCMorphism>),
    Smith(Vec<SmithTrace>),
    /// Pairs that must be equal cells of the given complex.
    Cells(Arc<BasedADC>, Vec<(Cell, Cell)>),
    /// Pairs of independently obtained counts.
    Counts(Vec<(usize, usize)>),
    Vacuous,
}

impl Certificate {
    pub fn revalidate(&self) -> bool {
        match self {
            Certificate::Isomorphisms(fs) => fs.iter().all(is_isomorphism),
            Certificate::Smith(ts) => ts.iter().all(SmithTrace::revalidate),
            Certificate::Cells(k, ps) => {
                ps.iter().all(|(a, b)| a == b && crate::omega::is_cell(k, a).is_ok())
            }
            Certificate::Counts(cs) => cs.iter().all(|(a, b)| a == b),
            Certificate::Vacuous => true,
        }
    }
}

enum Failure {
    Fail(String),
    Skip(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Skip(e.to_string()),
            e => Failure::Fail(e.to_string()),
        }
    }
}

type Checked = std::result::Result<Certificate, Failure>;

fn report(name: &str, target: String, res: Checked) -> CheckReport {
    let (outcome, witness) = match res {
        Ok(c) if c.revalidate() => (Outcome::Pass, None),
        Ok(_) => (Outcome::Fail, Some("certificate failed re-validation".to_string())),
        Err(Failure::Fail(w)) => (Outcome::Fail, Some(w)),
        Err(Failure::Skip(w)) => (Outcome::Skipped, Some(w)),
    };
    CheckReport { name: name.to_string(), target, outcome, witness, wall_ms: None }
}

fn within_caps(what: &str, k: &BasedADC) -> std::result::Result<(), Failure> {
    if k.len() > MAX_BASIS {
        return Err(Failure::Skip(format!("{what} has {} basis elements (cap {MAX_BASIS})", k.len())));
    }
    Ok(())
}

fn gs_caps(g: &GlobularSum) -> std::result::Result<BasedADC, Failure> {
    if g.dim() > MAX_DIM {
        return Err(Failure::Skip(format!("dimension {} exceeds the cap {MAX_DIM}", g.dim())));
    }
    let a = lambda_gs(g);
    within_caps("input", &a)?;
    Ok(a)
}

fn unique_iso(what: &str, k: &BasedADC, l: &BasedADC) -> std::result::Result<ADCMorphism, Failure> {
    let mut found = isos(k, l)?;
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        n => Err(Failure::Fail(format!("{what}: {n} isomorphisms, expected exactly one"))),
    }
}

fn arc(k: BasedADC) -> Arc<BasedADC> {
    Arc::new(k)
}

// ---------------------------------------------------------------- formulas

/// `[1]∨[A,1] ← [A,1] → [A⊗[1],1] ← [A,1] → [A,1]∨[1]`, legs the
/// whiskerings and the suspended cylinder ends.
pub fn cylinder_zigzag(a: &BasedADC) -> Result<Zigzag> {
    let wl = gray::whisker(a, Side::Left);
    let wr = gray::whisker(a, Side::Right);
    let e0 = gray::suspend_morphism(&gray::cylinder_end(a, 0));
    let e1 = gray::suspend_morphism(&gray::cylinder_end(a, 1));
    let xs = vec![wl.target().clone(), e0.target().clone(), wr.target().clone()];
    Zigzag::new(xs, vec![wl, e1], vec![e0, wr])
}

/// `[1]∨[A,1] ← [A,1] → [A⋆1,1]`.
pub fn cocone_zigzag(a: &BasedADC) -> Result<Zigzag> {
    let wl = gray::whisker(a, Side::Left);
    let s = gray::suspend_morphism(&gray::cone_base(a));
    Zigzag::new(vec![wl.target().clone(), s.target().clone()], vec![wl], vec![s])
}

/// `[1 co⋆ A,1] ← [A,1] → [A,1]∨[1]`.
pub fn cone_zigzag(a: &BasedADC) -> Result<Zigzag> {
    let s = gray::suspend_morphism(&gray::cocone_base(a));
    let wr = gray::whisker(a, Side::Right);
    Zigzag::new(vec![s.target().clone(), wr.target().clone()], vec![s], vec![wr])
}

/// `[A,1]⊗[1]` against the colimit of the five-term zigzag.
pub fn check_cylinder_formula(g: &GlobularSum) -> CheckReport {
    let run = || -> Checked {
        let a = gs_caps(g)?;
        let lhs = gray::cylinder(&gray::suspend(&a).complex);
        within_caps("[A,1]⊗[1]", &lhs)?;
        let rhs = colim_zigzag(&cylinder_zigzag(&a)?)?;
        Ok(Certificate::Isomorphisms(vec![unique_iso("cylinder formula", &rhs, &lhs)?]))
    };
    report("cylinder_formula", g.to_string(), run())
}

/// `1 co⋆ [A,1]` and `[A,1]⋆1` against their three-term zigzags, plus the
/// full duality exchanging the two.
pub fn check_star_formulas(g: &GlobularSum) -> CheckReport {
    let run = || -> Checked {
        let a = gs_caps(g)?;
        let sa = gray::suspend(&a).complex;
        let co = gray::cocone(&sa).complex;
        let cone = gray::cone(&sa).complex;
        within_caps("1 co⋆ [A,1]", &co)?;
        let first = unique_iso("1 co⋆ [A,1]", &colim_zigzag(&cocone_zigzag(&a)?)?, &co)?;
        let second = unique_iso("[A,1]⋆1", &colim_zigzag(&cone_zigzag(&a)?)?, &cone)?;
        let a_dual = dual(&a, &Duality::Full);
        let swapped = gray::cone(&gray::suspend(&a_dual).complex).complex;
        let third = unique_iso("duality", &dual(&co, &Duality::Full), &swapped)?;
        Ok(Certificate::Isomorphisms(vec![first, second, third]))
    };
    report("star_formulas", g.to_string(), run())
}

fn globe_name(n: usize, j: usize, s: Sign) -> String {
    match (n, j == n, s) {
        (0, _, _) => "pt".into(),
        (_, true, _) => format!("e{n}"),
        (_, false, Sign::Minus) => format!("e{j}m"),
        (_, false, Sign::Plus) => format!("e{j}p"),
    }
}

/// The composite of the explicit formula for `π^sign(e^ε_m⊗[1])` in
/// `λ(Dₙ⊗[1])`.
pub fn globe_cylinder_composite(c: &BasedADC, n: usize, x: &str, m: usize, sign: Sign) -> Result<Cell> {
    let even = m.is_multiple_of(2);
    let center_pole = match (sign, even) {
        (Sign::Minus, true) | (Sign::Plus, false) => gray::POLE0,
        _ => gray::POLE1,
    };
    let mut acc = atom(c, &gray::tensor_name(x, center_pole))?;
    for j in 0..m {
        let same = (m - j).is_multiple_of(2);
        let left = if sign == Sign::Minus { same } else { !same };
        if left {
            let t = unit_cell(&atom(c, &gray::tensor_name(&globe_name(n, j, Sign::Plus), "[1]"))?, m)?;
            acc = compose_cells(&t, &acc, j)?;
        } else {
            let t = unit_cell(&atom(c, &gray::tensor_name(&globe_name(n, j, Sign::Minus), "[1]"))?, m)?;
            acc = compose_cells(&acc, &t, j)?;
        }
    }
    Ok(acc)
}

/// Every source and target of a generator of `λ(Dₙ⊗[1])` against the
/// explicit composites.
pub fn check_globe_cylinder(n: usize) -> CheckReport {
    let run = || -> Checked {
        if n > MAX_DIM {
            return Err(Failure::Skip(format!("n = {n} exceeds the cap {MAX_DIM}")));
        }
        let k = globe_adc(n);
        let c = gray::cylinder(&k);
        let mut pairs = Vec::new();
        for b in k.basis() {
            let m = b.deg;
            let gen = atom(&c, &gray::tensor_name(&b.id, "[1]"))?;
            for s in [Sign::Minus, Sign::Plus] {
                let expected = globe_cylinder_composite(&c, n, &b.id, m, s)?;
                let actual = boundary(&gen, m, s)?;
                if expected != actual {
                    return Err(Failure::Fail(format!("π^{}({}⊗[1]): composite {expected} but atom gives {actual}", s.symbol(), b.id)));
                }
                pairs.push((expected, actual));
                if m > 0 {
                    for pole in [gray::POLE0, gray::POLE1] {
                        let end = atom(&c, &gray::tensor_name(&b.id, pole))?;
                        let expected = atom(&c, &gray::tensor_name(&globe_name(n, m - 1, s), pole))?;
                        pairs.push((expected, boundary(&end, m - 1, s)?));
                    }
                }
            }
        }
        Ok(Certificate::Cells(arc(c), pairs))
    };
    report("globe_cylinder", n.to_string(), run())
}

// ---------------------------------------------------------------- squares

fn sq(ab: ADCMorphism, am: ADCMorphism, bn: ADCMorphism, mn: ADCMorphism) -> Result<Square> {
    Square::new(ab, am, bn, mn)
}

/// The five squares relating `C⊗[1]`, `C⋆1`, `1 co⋆ C` and `[C,1]`, named
/// by their corners.
pub fn five_squares(c: &BasedADC) -> Result<Vec<(&'static str, Square)>> {
    let cone = gray::cone(c).complex;
    let cocone = gray::cocone(c).complex;
    let susp = gray::suspend(c).complex;
    let tip = |k: &BasedADC, id: &str| gray::point_at(k, id);
    Ok(vec![
        (
            "C⊗{1} → 1 → C⋆1 ← C⊗[1]",
            sq(gray::to_point(c), gray::cylinder_end(c, 1), tip(&cone, gray::CONE_TIP)?, gray::cone_quotient(c))?,
        ),
        (
            "C⊗{0} → 1 → 1co⋆C ← C⊗[1]",
            sq(gray::to_point(c), gray::cylinder_end(c, 0), tip(&cocone, gray::COCONE_TIP)?, gray::cocone_quotient(c))?,
        ),
        (
            "C⊗[1] → C⋆1 → [C,1] ← 1co⋆C",
            sq(gray::cone_quotient(c), gray::cocone_quotient(c), gray::cone_to_suspension(c), gray::cocone_to_suspension(c))?,
        ),
        (
            "C → 1co⋆C → [C,1] ← {1}",
            sq(gray::cocone_base(c), gray::to_point(c), gray::cocone_to_suspension(c), tip(&susp, gray::POLE1)?)?,
        ),
        (
            "C → C⋆1 → [C,1] ← {0}",
            sq(gray::cone_base(c), gray::to_point(c), gray::cone_to_suspension(c), tip(&susp, gray::POLE0)?)?,
        ),
    ])
}

/// `1 → 1co⋆C` over `{0} → [C,1]` and `1 → C⋆1` over `{1} → [C,1]`.
pub fn slice_squares(c: &BasedADC) -> Result<Vec<(&'static str, Square)>> {
    let cone = gray::cone(c).complex;
    let cocone = gray::cocone(c).complex;
    let susp = gray::suspend(c).complex;
    let id = || ADCMorphism::identity(arc(gray::point()));
    Ok(vec![
        (
            "1 → 1co⋆C over {0}",
            sq(gray::point_at(&cocone, gray::COCONE_TIP)?, id(), gray::cocone_to_suspension(c), gray::point_at(&susp, gray::POLE0)?)?,
        ),
        (
            "1 → C⋆1 over {1}",
            sq(gray::point_at(&cone, gray::CONE_TIP)?, id(), gray::cone_to_suspension(c), gray::point_at(&susp, gray::POLE1)?)?,
        ),
    ])
}

/// `C⊗{0,1} → C⊗[1]` over the two poles of `[C,1]`.
pub fn suspension_square(c: &BasedADC) -> Result<Square> {
    let ends = BasedADC::builder().point(gray::POLE0).point(gray::POLE1).build()?;
    let a = arc(gray::tensor(c, &ends));
    let cyl = arc(gray::cylinder(c));
    let ends = arc(ends);
    let susp = arc(gray::suspend(c).complex);
    let mut ab = BTreeMap::new();
    let mut am = BTreeMap::new();
    for b in c.basis() {
        for pole in [gray::POLE0, gray::POLE1] {
            let id = gray::tensor_name(&b.id, pole);
            ab.insert(id.clone(), Chain::basis(b.deg, id.clone()));
            let img = if b.deg == 0 {
                Chain::from_terms(0, [(pole.to_string(), c.aug_of(&b.id).unwrap())])
            } else {
                Chain::zero(b.deg)
            };
            am.insert(id, img);
        }
    }
    let pole_map = [gray::POLE0, gray::POLE1].map(|p| (p.to_string(), Chain::basis(0, p))).into_iter().collect();
    Square::new(
        ADCMorphism::from_chains(a.clone(), cyl, ab)?,
        ADCMorphism::from_chains(a, ends.clone(), am)?,
        gray::cylinder_to_suspension(c),
        ADCMorphism::from_chains(ends, susp, pole_map)?,
    )
}

/// The five squares are cocartesian and cartesian (bound 4), the slice
/// squares are cartesian on cells, and the suspension square is cocartesian.
pub fn check_squares(g: &GlobularSum) -> CheckReport {
    let run = || -> Checked {
        let c = gs_caps(g)?;
        within_caps("C⊗[1]", &gray::cylinder(&c))?;
        let mut traces = Vec::new();
        let mut take = |name: &str, kind: &str, r: crate::colim::SquareCheck| match r.failure {
            None => {
                traces.extend(r.traces);
                Ok(())
            }
            Some(why) => Err(Failure::Fail(format!("{name} is not {kind}: {why}"))),
        };
        for (name, s) in five_squares(&c)? {
            take(name, "cocartesian", check_cocartesian(&s))?;
            take(name, "cartesian", check_cartesian(&s, SQUARE_BOUND))?;
        }
        for (name, s) in slice_squares(&c)? {
            take(name, "cartesian", check_nu_cartesian(&s, SQUARE_BOUND))?;
        }
        take("suspension square", "cocartesian", check_cocartesian(&suspension_square(&c)?))?;
        Ok(Certificate::Smith(traces))
    };
    report("squares", g.to_string(), run())
}

// ---------------------------------------------------------------- theta

/// `|Hom(Dₙ, g)|` against the number of `n`-cells of `ν(λg)`.
pub fn check_theta_counts(g: &GlobularSum, nmax: usize) -> CheckReport {
    let run = || -> Checked {
        let k = gs_caps(g)?;
        let bound = k.degree_counts().into_iter().max().unwrap_or(1).max(1);
        let mut counts = Vec::new();
        for n in 0..=nmax {
            let homs = enumerate_hom(&GlobularSum::globe(n), g).len();
            let cells = enumerate_cells(&k, n, bound).len();
            if homs != cells {
                return Err(Failure::Fail(format!("n = {n}: {homs} morphisms but {cells} cells")));
            }
            counts.push((homs, cells));
        }
        Ok(Certificate::Counts(counts))
    };
    report("theta_counts", format!("{g} n≤{nmax}"), run())
}

/// Both factorizations of every `Dₙ → g` recompose with the expected flags.
pub fn check_factorizations(g: &GlobularSum, n: usize) -> CheckReport {
    let run = || -> Checked {
        gs_caps(g)?;
        let mut counts = Vec::new();
        for f in enumerate_hom(&GlobularSum::globe(n), g) {
            let (alg, glob) = factor_alg_glob(&f);
            let (deg, mono) = factor_reedy(&f);
            for (what, outer, inner, ok) in [
                ("algebraic/globular", &glob, &alg, classify(&alg).algebraic && classify(&glob).globular),
                ("degenerate/mono", &mono, &deg, classify(&deg).degenerate && classify(&mono).mono),
            ] {
                if compose_tm(outer, inner)? != f || !ok {
                    return Err(Failure::Fail(format!("{what} factorization of {f} is wrong")));
                }
            }
            counts.push((1, 1));
        }
        Ok(Certificate::Counts(counts))
    };
    report("factorizations", format!("{g} n={n}"), run())
}

/// `λg` has only the identity automorphism.
pub fn check_rigidity(g: &GlobularSum) -> CheckReport {
    let run = || -> Checked {
        let k = gs_caps(g)?;
        let f = unique_iso("automorphisms", &k, &k)?;
        if !f.is_identity() {
            return Err(Failure::Fail("the only automorphism is not the identity".into()));
        }
        Ok(Certificate::Isomorphisms(vec![f]))
    };
    report("rigidity", g.to_string(), run())
}

/// Every 2-cell of `λg` up to `bound` recomposes from its decomposition
/// along every ordering.
pub fn check_decompositions(g: &GlobularSum, bound: usize) -> CheckReport {
    let run = || -> Checked {
        let k = gs_caps(g)?;
        if g.dim() > 2 {
            return Err(Failure::Skip("decompositions need a complex of dimension at most 2".into()));
        }
        let mut pairs = Vec::new();
        for v in enumerate_cells(&k, 2, bound) {
            for ord in twodim::orderings(&k, &v)? {
                let blocks = twodim::decompose(&k, &v, &ord)?;
                let back = if blocks.is_empty() { v.clone() } else { twodim::recompose(&blocks)? };
                if back != v {
                    return Err(Failure::Fail(format!("{v} does not recompose along {ord:?}")));
                }
                pairs.push((back, v.clone()));
            }
        }
        Ok(Certificate::Cells(arc(k), pairs))
    };
    report("decompositions", format!("{g} bound {bound}"), run())
}

// ---------------------------------------------------------------- fuzzing

/// A construction of a complex from globular sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Lambda(GlobularSum),
    Tensor(Box<Recipe>, Box<Recipe>),
    Cylinder(Box<Recipe>),
    Cone(Box<Recipe>),
    Cocone(Box<Recipe>),
    Suspend(Box<Recipe>),
    Wedge(Box<Recipe>, Side),
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Lambda(g) => write!(f, "λ{g}"),
            Recipe::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            Recipe::Cylinder(a) => write!(f, "{a}⊗[1]"),
            Recipe::Cone(a) => write!(f, "{a}⋆1"),
            Recipe::Cocone(a) => write!(f, "1co⋆{a}"),
            Recipe::Suspend(a) => write!(f, "[{a},1]"),
            Recipe::Wedge(a, Side::Left) => write!(f, "[1]∨[{a},1]"),
            Recipe::Wedge(a, Side::Right) => write!(f, "[{a},1]∨[1]"),
        }
    }
}

impl Recipe {
    /// `faulty_cone` flips a sign in the cone differential.
    pub fn build(&self, faulty_cone: bool) -> Result<BasedADC> {
        Ok(match self {
            Recipe::Lambda(g) => lambda_gs(g),
            Recipe::Tensor(a, b) => gray::tensor(&a.build(faulty_cone)?, &b.build(faulty_cone)?),
            Recipe::Cylinder(a) => gray::cylinder(&a.build(faulty_cone)?),
            Recipe::Cone(a) => gray::cone_impl(&a.build(faulty_cone)?, faulty_cone)?.complex,
            Recipe::Cocone(a) => gray::cocone(&a.build(faulty_cone)?).complex,
            Recipe::Suspend(a) => gray::suspend(&a.build(faulty_cone)?).complex,
            Recipe::Wedge(a, s) => gray::wedge(&a.build(faulty_cone)?, *s).complex,
        })
    }
}

/// The seed from `OMEGAC_SEED`, or the default.
pub fn seed_from_env() -> u64 {
    std::env::var("OMEGAC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Random constructions of dimension at most 3 and at most 64 generators.
pub fn fuzz_corpus(seed: u64, cases: usize) -> Vec<(Recipe, BasedADC)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: Vec<GlobularSum> = GlobularSum::all_up_to(4).into_iter().filter(|g| g.dim() <= 2).collect();
    let mut out = Vec::with_capacity(cases);
    while out.len() < cases {
        let mut r = Recipe::Lambda(shapes.choose(&mut rng).unwrap().clone());
        let mut k = r.build(false).expect("λ is valid");
        for _ in 0..rng.gen_range(0..=2) {
            let b = Box::new(r.clone());
            let next = match rng.gen_range(0..6) {
                0 => {
                    let small: Vec<&GlobularSum> = shapes.iter().filter(|g| g.size() <= 3).collect();
                    Recipe::Tensor(b, Box::new(Recipe::Lambda((*small.choose(&mut rng).unwrap()).clone())))
                }
                1 => Recipe::Cylinder(b),
                2 => Recipe::Cone(b),
                3 => Recipe::Cocone(b),
                4 => Recipe::Suspend(b),
                _ => Recipe::Wedge(b, if rng.gen() { Side::Left } else { Side::Right }),
            };
            let nk = next.build(false).expect("constructions are valid");
            if nk.dim().unwrap_or(0) <= MAX_DIM && nk.len() <= MAX_BASIS {
                r = next;
                k = nk;
            }
        }
        out.push((r, k));
    }
    out
}

/// First violation of `∂∂ = 0` or `e∂ = 0`, recomputed from the tables.
pub fn axiom_violation(k: &BasedADC) -> Option<String> {
    let diff = k.diff_table();
    let aug = k.aug_table();
    for (id, d) in &diff {
        let mut dd: BTreeMap<&str, i64> = BTreeMap::new();
        let mut e = 0;
        for (y, v) in d {
            if let Some(a) = aug.get(y) {
                e += v * a;
            }
            for (z, w) in diff.get(y).into_iter().flatten() {
                *dd.entry(z).or_insert(0) += v * w;
            }
        }
        if dd.values().any(|&x| x != 0) {
            return Some(format!("∂∂({id}) ≠ 0"));
        }
        if e != 0 {
            return Some(format!("e∂({id}) = {e}"));
        }
    }
    None
}

/// ADC axioms on every output of the fuzz corpus.
pub fn check_axioms(seed: u64, cases: usize, faulty_cone: bool) -> CheckReport {
    let run = || -> Checked {
        let mut counts = Vec::new();
        for (r, _) in fuzz_corpus(seed, cases) {
            let k = match r.build(faulty_cone) {
                Ok(k) => k,
                Err(e) => return Err(Failure::Fail(format!("{r}: {e}"))),
            };
            if let Some(w) = axiom_violation(&k) {
                return Err(Failure::Fail(format!("{r}: {w}")));
            }
            counts.push((0, 0));
        }
        Ok(Certificate::Counts(counts))
    };
    report("adc_axioms", format!("{cases} cases, seed {seed}"), run())
}

// ---------------------------------------------------------------- suite

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ThetaTarget {
    pub gs: String,
    pub n: usize,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DecomposeTarget {
    pub gs: String,
    pub bound: usize,
}

/// Targets of a suite run; every list defaults to empty.
#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub axioms: Option<usize>,
    pub cylinder: Vec<String>,
    pub star: Vec<String>,
    pub globe_cylinder: Vec<usize>,
    pub squares: Vec<String>,
    pub theta_counts: Vec<ThetaTarget>,
    pub factorizations: Vec<ThetaTarget>,
    pub rigidity: Vec<String>,
    pub decompositions: Vec<DecomposeTarget>,
    /// `"cone-sign"` flips a sign in the cone differential.
    pub fault: Option<String>,
    pub seed: Option<u64>,
}

impl SuiteConfig {
    pub fn standard() -> Self {
        let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let fixtures = ["*", "[*]", "[[*]]", "[*,*]", "[[*],*]"];
        let theta = |xs: &[(&str, usize)]| xs.iter().map(|(g, n)| ThetaTarget { gs: g.to_string(), n: *n }).collect();
        SuiteConfig {
            axioms: Some(500),
            cylinder: s(&fixtures),
            star: s(&fixtures),
            globe_cylinder: vec![0, 1, 2, 3],
            squares: s(&["*", "[*]", "[[*]]"]),
            theta_counts: theta(&[("*", 1), ("[*]", 2), ("[[*]]", 3), ("[*,*]", 2), ("[[*],*]", 3), ("[[[*,*]],*]", 4)]),
            factorizations: theta(&[("[[*]]", 1), ("[[*]]", 2), ("[*,*]", 1), ("[*,*]", 2), ("[[*],*]", 1), ("[[*],*]", 2), ("[[*,*]]", 2)]),
            rigidity: s(&["*", "[*]", "[[*]]", "[*,*]", "[[*],*]", "[[[*,*]],*]"]),
            decompositions: vec![
                DecomposeTarget { gs: "[[*,*]]".into(), bound: 3 },
                DecomposeTarget { gs: "[[*,*],[*]]".into(), bound: 3 },
            ],
            fault: None,
            seed: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: SuiteConfig = serde_json::from_str(s)?;
        if let Some(f) = &c.fault {
            if f != "cone-sign" {
                return Err(Error::Format(format!("unknown fault `{f}`")));
            }
        }
        Ok(c)
    }
}

fn parsed(name: &str, expr: &str, f: impl FnOnce(&GlobularSum) -> CheckReport) -> CheckReport {
    match parse_gs(expr) {
        Ok(g) => f(&g),
        Err(e) => report(name, expr.to_string(), Err(Failure::Fail(e.to_string()))),
    }
}

/// Runs every check of `config` in canonical order.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckReport> {
    suite(config, false)
}

/// As [`run_suite`], recording the wall time of each check.
pub fn run_suite_timed(config: &SuiteConfig) -> Vec<CheckReport> {
    suite(config, true)
}

fn suite(config: &SuiteConfig, timed: bool) -> Vec<CheckReport> {
    let seed = config.seed.unwrap_or_else(seed_from_env);
    let faulty = config.fault.is_some();
    let mut out = Vec::new();
    let mut push = |f: &dyn Fn() -> CheckReport| {
        let start = std::time::Instant::now();
        let mut r = f();
        if timed {
            r.wall_ms = Some(start.elapsed().as_millis());
        }
        out.push(r);
    };
    if let Some(cases) = config.axioms.or(faulty.then_some(500)) {
        push(&|| check_axioms(seed, cases, faulty));
    }
    for &n in &config.globe_cylinder {
        push(&|| check_globe_cylinder(n));
    }
    for g in &config.cylinder {
        push(&|| parsed("cylinder_formula", g, check_cylinder_formula));
    }
    for g in &config.star {
        push(&|| parsed("star_formulas", g, check_star_formulas));
    }
    for g in &config.squares {
        push(&|| parsed("squares", g, check_squares));
    }
    for t in &config.theta_counts {
        push(&|| parsed("theta_counts", &t.gs, |g| check_theta_counts(g, t.n)));
    }
    for t in &config.factorizations {
        push(&|| parsed("factorizations", &t.gs, |g| check_factorizations(g, t.n)));
    }
    for g in &config.rigidity {
        push(&|| parsed("rigidity", g, check_rigidity));
    }
    for t in &config.decompositions {
        push(&|| parsed("decompositions", &t.gs, |g| check_decompositions(g, t.bound)));
    }
    out
}

/// 0 when everything passed, 1 on any failure, 3 when something was skipped.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.outcome == Outcome::Fail) {
        1
    } else if reports.iter().any(|r| r.outcome == Outcome::Skipped) {
        3
    } else {
        0
    }
}

pub fn summary(reports: &[CheckReport]) -> String {
    let count = |o| reports.iter().filter(|r| r.outcome == o).count();
    format!(
        "{} checks: {} passed, {} failed, {} skipped",
        reports.len(),
        count(Outcome::Pass),
        count(Outcome::Fail),
        count(Outcome::Skipped)
    )
}
