//! Globalization of a set-level partial action through the quotient of `Γ × X`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Dilation;
use crate::error::{Error, Result};
use crate::fdalg::Tolerance;
use crate::grouplink::{pullback, DisconnectedPartialAction, SetPartialAction};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller root so classes are named by their first member.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitGlobalization {
    pub dilation: Dilation,
    /// The global action on the classes.
    pub global: SetPartialAction,
    /// A representative `(g, x)` of each class.
    pub representatives: Vec<(usize, usize)>,
}

/// `Y = (Γ × X)/∼` with `(g, x) ∼ (h, α_{h⁻¹g}(x))` whenever `x ∈ D_{g⁻¹h}`,
/// acted on by `h·[g, x] = [hg, x]`, with `ι(x) = [e, x]`.
pub fn orbit_globalization(pa: &DisconnectedPartialAction, tol: Tolerance) -> Result<OrbitGlobalization> {
    let s = pa
        .set_level()
        .ok_or_else(|| Error::Precondition("the orbit construction needs a set-level partial action".into()))?;
    let group = s.group();
    let (m, n) = (group.order(), s.len());
    let at = |g: usize, x: usize| g * n + x;
    let mut uf = UnionFind::new(m * n);
    for g in 0..m {
        for h in 0..m {
            let k = group.mul(group.inv(h), g);
            for x in 0..n {
                if let Some(y) = s.apply(k, x) {
                    uf.union(at(g, x), at(h, y));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; m * n];
    let mut representatives = Vec::new();
    for i in 0..m * n {
        let r = uf.find(i);
        if class_of[r] == usize::MAX {
            class_of[r] = representatives.len();
            representatives.push((i / n, i % n));
        }
        class_of[i] = class_of[r];
    }
    let classes = representatives.len();
    let mut perms = vec![vec![usize::MAX; classes]; m];
    for h in 0..m {
        for g in 0..m {
            for x in 0..n {
                let (from, to) = (class_of[at(g, x)], class_of[at(group.mul(h, g), x)]);
                if perms[h][from] == usize::MAX {
                    perms[h][from] = to;
                } else if perms[h][from] != to {
                    return Err(Error::PartialAction(format!(
                        "translation by {} is not well defined on the class of ({}, {})",
                        group.name(h),
                        group.name(g),
                        s.points()[x]
                    )));
                }
            }
        }
    }
    let e = group.identity();
    let mut to_source = vec![None; classes];
    for x in 0..n {
        let y = class_of[at(e, x)];
        if to_source[y].is_some() {
            return Err(Error::PartialAction(format!("two points are identified with {}", s.points()[x])));
        }
        to_source[y] = Some(x);
    }
    let names: Vec<String> = representatives.iter().map(|&(g, x)| format!("[{},{}]", group.name(g), s.points()[x])).collect();
    let global = SetPartialAction::global(group.clone(), names, &perms)?;
    let coaction = DisconnectedPartialAction::from_set_action(&global, tol)?.to_coaction(tol)?;
    let dilation = Dilation::new(coaction, pullback(n, &to_source), tol)?;
    Ok(OrbitGlobalization { dilation, global, representatives })
}
