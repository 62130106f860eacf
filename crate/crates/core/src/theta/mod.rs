//! Globular sums and the category Θ.

mod factor;
mod morphism;

pub use factor::{classify, factor_alg_glob, factor_reedy, globular_into, Flags};
pub use morphism::{compose_tm, enumerate_hom, spine, structural_map, tm_to_adc, truncate, Structural, ThetaMorphism};

use std::collections::BTreeMap;
use std::fmt;

use crate::adc::BasedADC;
use crate::chain::Id;
use crate::error::{Error, Result};

/// A globular sum `[a_0, …, a_{n-1}]`; no branches is the point `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GlobularSum {
    pub branches: Vec<GlobularSum>,
}

impl GlobularSum {
    pub fn point() -> Self {
        GlobularSum { branches: Vec::new() }
    }

    pub fn new(branches: Vec<GlobularSum>) -> Self {
        GlobularSum { branches }
    }

    /// The globe `D_n`.
    pub fn globe(n: usize) -> Self {
        (0..n).fold(Self::point(), |g, _| GlobularSum { branches: vec![g] })
    }

    /// The linear order `[n]` seen as a globular sum of dimension ≤ 1.
    pub fn simplex(n: usize) -> Self {
        GlobularSum { branches: vec![Self::point(); n] }
    }

    pub fn is_point(&self) -> bool {
        self.branches.is_empty()
    }

    /// Number of segments `n` in `[a, n]`; objects are `0..=n`.
    pub fn segments(&self) -> usize {
        self.branches.len()
    }

    pub fn dim(&self) -> usize {
        self.branches.iter().map(|b| b.dim() + 1).max().unwrap_or(0)
    }

    /// Number of tree nodes.
    pub fn size(&self) -> usize {
        1 + self.branches.iter().map(GlobularSum::size).sum::<usize>()
    }

    /// `[self, 1]`.
    pub fn suspend(&self) -> Self {
        GlobularSum { branches: vec![self.clone()] }
    }

    /// All globular sums with at most `size` tree nodes, sorted.
    pub fn all_up_to(size: usize) -> Vec<GlobularSum> {
        // forests[s] = ordered lists of trees with s nodes in total
        let mut forests: Vec<Vec<Vec<GlobularSum>>> = vec![vec![Vec::new()]];
        let mut trees: Vec<Vec<GlobularSum>> = vec![Vec::new()];
        for s in 1..=size {
            let t: Vec<GlobularSum> = forests[s - 1].iter().map(|f| GlobularSum::new(f.clone())).collect();
            trees.push(t);
            let mut fs = Vec::new();
            for first in 1..=s {
                for tr in &trees[first] {
                    for rest in &forests[s - first] {
                        let mut v = vec![tr.clone()];
                        v.extend(rest.iter().cloned());
                        fs.push(v);
                    }
                }
            }
            forests.push(fs);
        }
        let mut out: Vec<GlobularSum> = trees.into_iter().flatten().collect();
        out.sort();
        out
    }
}

impl fmt::Display for GlobularSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.branches.is_empty() {
            return write!(f, "*");
        }
        write!(f, "[")?;
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

impl std::str::FromStr for GlobularSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gs(s)
    }
}

/// Parses `gs := "*" | "[" gs ("," gs)* "]" | "D" digits`.
pub fn parse_gs(expr: &str) -> Result<GlobularSum> {
    let chars: Vec<(usize, char)> = expr.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars: &chars, i: 0, len: expr.len() };
    let g = p.gs()?;
    if p.i < chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    chars: &'a [(usize, char)],
    i: usize,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |c| c.0)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos(), msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn gs(&mut self) -> Result<GlobularSum> {
        match self.peek() {
            Some('*') => {
                self.i += 1;
                Ok(GlobularSum::point())
            }
            Some('D') => {
                self.i += 1;
                let start = self.i;
                let mut n = 0usize;
                while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
                    n = n.checked_mul(10).and_then(|n| n.checked_add(d as usize)).ok_or_else(|| self.err("globe dimension too large"))?;
                    self.i += 1;
                }
                if self.i == start {
                    return Err(self.err("expected digits after `D`"));
                }
                Ok(GlobularSum::globe(n))
            }
            Some('[') => {
                self.i += 1;
                let mut branches = vec![self.gs()?];
                loop {
                    match self.peek() {
                        Some(',') => {
                            self.i += 1;
                            branches.push(self.gs()?);
                        }
                        Some(']') => {
                            self.i += 1;
                            return Ok(GlobularSum { branches });
                        }
                        _ => return Err(self.err("expected `,` or `]`")),
                    }
                }
            }
            Some(_) => Err(self.err("expected `*`, `[` or `D`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Generator list of λ(g): ids are `"i"` for objects and `"i.x"` for the
/// shifted copy of generator `x` of the `i`-th branch.
fn lambda_gens(g: &GlobularSum, out: &mut Vec<(Id, usize, Vec<(Id, i64)>)>, prefix: &str) {
    let n = g.segments();
    for p in 0..=n {
        out.push((format!("{prefix}{p}"), 0, Vec::new()));
    }
    for (i, b) in g.branches.iter().enumerate() {
        let mut inner = Vec::new();
        lambda_gens(b, &mut inner, "");
        for (id, deg, bd) in inner {
            let bd = if deg == 0 {
                vec![(format!("{prefix}{}", i + 1), 1), (format!("{prefix}{i}"), -1)]
            } else {
                bd.into_iter().map(|(x, v)| (format!("{prefix}{i}.{x}"), v)).collect()
            };
            out.push((format!("{prefix}{i}.{id}"), deg + 1, bd));
        }
    }
}

/// The complex λ(g): objects `0..=n` and, for each branch, its suspension
/// spanning the adjacent objects.
pub fn lambda_gs(g: &GlobularSum) -> BasedADC {
    let mut gens = Vec::new();
    lambda_gens(g, &mut gens, "");
    let mut basis = Vec::new();
    let mut diff = BTreeMap::new();
    let mut aug = BTreeMap::new();
    for (id, deg, bd) in gens {
        if deg == 0 {
            aug.insert(id.clone(), 1);
        } else {
            diff.insert(id.clone(), bd.into_iter().collect());
        }
        basis.push((id, deg));
    }
    BasedADC::new(basis, diff, aug).expect("λ of a globular sum is valid")
}

/// λD_n with ids `e0m, e0p, …, e{n-1}m, e{n-1}p, e{n}` (`pt` for n = 0).
pub fn globe_adc(n: usize) -> BasedADC {
    if n == 0 {
        return crate::gray::point();
    }
    let mut b = BasedADC::builder().point("e0m").point("e0p");
    for k in 1..n {
        let (s, t) = (format!("e{}m", k - 1), format!("e{}p", k - 1));
        b = b.arrow(&format!("e{k}m"), k, &s, &t).arrow(&format!("e{k}p"), k, &s, &t);
    }
    let (s, t) = (format!("e{}m", n - 1), format!("e{}p", n - 1));
    b.arrow(&format!("e{n}"), n, &s, &t).build().expect("valid globe")
}

/// λ[n] with ids `v0, …, vn` and `v01, v12, …`.
pub fn simplex_adc(n: usize) -> BasedADC {
    let mut b = BasedADC::builder();
    for i in 0..=n {
        b = b.point(&format!("v{i}"));
    }
    for i in 0..n {
        b = b.arrow(&format!("v{}{}", i, i + 1), 1, &format!("v{i}"), &format!("v{}", i + 1));
    }
    b.build().expect("valid path")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_gs("D2").unwrap(), GlobularSum::globe(2));
        assert_eq!(parse_gs("[*,*]").unwrap(), GlobularSum::simplex(2));
        let g = parse_gs("[[*], *]").unwrap();
        assert_eq!(g.to_string(), "[[*],*]");
        assert_eq!(g.dim(), 2);
        assert_eq!(parse_gs("D0").unwrap(), GlobularSum::point());
        assert!(matches!(parse_gs("[*,"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_gs("[]"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_gs("**"), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn lambda_counts() {
        assert_eq!(lambda_gs(&parse_gs("[[*],*]").unwrap()).degree_counts(), vec![3, 3, 1]);
        assert_eq!(lambda_gs(&GlobularSum::simplex(2)).degree_counts(), vec![3, 2]);
        assert_eq!(lambda_gs(&GlobularSum::globe(3)).degree_counts(), vec![2, 2, 2, 1]);
        assert!(crate::adc::is_strong_steiner(&lambda_gs(&parse_gs("[[*,*],[*]]").unwrap())));
    }

    #[test]
    fn enumerate_shapes() {
        let all = GlobularSum::all_up_to(4);
        // plane trees with 1..=4 nodes: 1 + 1 + 2 + 5
        assert_eq!(all.len(), 9);
        assert_eq!(GlobularSum::all_up_to(1), vec![GlobularSum::point()]);
    }
}
