use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite set with an associative multiplication given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    elements: Vec<String>,
    table: Vec<usize>,
}

impl Semigroup {
    /// Validates shape, range and associativity. `table[a][b]` is the index of `ab`.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidTable("no elements".into()));
        }
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(Error::InvalidTable(format!("duplicate element name {a:?}")));
            }
        }
        if table.len() != n {
            return Err(Error::InvalidTable(format!("table has {} rows, expected {n}", table.len())));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry ({i}, {j}) = {v} is out of range")));
                }
                flat.push(v);
            }
        }
        let s = Semigroup { elements, table: flat };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({}, {}, {})",
                            s.elements[a], s.elements[b], s.elements[c]
                        )));
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect()
    }
}

/// A finite group given by a validated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    law: Semigroup,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_semigroup(Semigroup::new(elements, table)?)
    }

    pub fn from_semigroup(law: Semigroup) -> Result<Self> {
        let identity = law.identity().ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        let n = law.len();
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| law.mul(a, b) == identity && law.mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidTable(format!("element {} has no inverse", law.name(a))))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { law, identity, inverses })
    }

    pub fn order(&self) -> usize {
        self.law.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.law.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> &[String] {
        self.law.elements()
    }

    pub fn name(&self, i: usize) -> &str {
        self.law.name(i)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.law.index_of(name)
    }

    pub fn as_semigroup(&self) -> &Semigroup {
        &self.law
    }

    /// Whether the subset given as a bitmask over element order is a subgroup.
    pub fn is_subgroup(&self, mask: u64) -> bool {
        let n = self.order();
        let has = |i: usize| mask >> i & 1 == 1;
        if !has(self.identity) {
            return false;
        }
        (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(self.mul(a, b))))
    }

    /// All subgroups as bitmasks, in increasing mask order.
    pub fn subgroups(&self) -> Vec<u64> {
        assert!(self.order() < 64, "subset enumeration needs fewer than 64 elements");
        (0..1u64 << self.order()).filter(|&m| self.is_subgroup(m)).collect()
    }

    /// `Z/n` with elements `e, a, a2, ...`; for `n = 2` the generator is `t`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let elements = (0..n)
            .map(|k| match (k, n) {
                (0, _) => "e".to_string(),
                (1, 2) => "t".to_string(),
                (1, _) => "a".to_string(),
                _ => format!("a{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(elements, table).expect("cyclic group table")
    }

    /// `S_3` with elements `e, r, r2, s, sr, sr2`, where `r = (0 1 2)` and `s = (1 2)`.
    pub fn symmetric3() -> Self {
        let compose = |g: [usize; 3], h: [usize; 3]| [g[h[0]], g[h[1]], g[h[2]]];
        let e = [0, 1, 2];
        let r = [1, 2, 0];
        let s = [0, 2, 1];
        let r2 = compose(r, r);
        let perms = [e, r, r2, s, compose(s, r), compose(s, r2)];
        let names = ["e", "r", "r2", "s", "sr", "sr2"];
        let table = perms
            .iter()
            .map(|&g| perms.iter().map(|&h| perms.iter().position(|&k| k == compose(g, h)).unwrap()).collect())
            .collect();
        FiniteGroup::new(names.iter().map(|s| s.to_string()).collect(), table).expect("S3 table")
    }

    /// Named presets `Z2`, `Z3`, `Z4`, `S3`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "Z2" => Some(Self::cyclic(2)),
            "Z3" => Some(Self::cyclic(3)),
            "Z4" => Some(Self::cyclic(4)),
            "S3" => Some(Self::symmetric3()),
            _ => None,
        }
    }
}

/// The five-element inverse semigroup `{0, v, v*, vv*, v*v}` of 2x2 matrix units,
/// with `v = e_21`.
pub fn gamma5() -> Semigroup {
    // Each element as a 0/1 matrix [[a, b], [c, d]].
    let mats: [[u8; 4]; 5] = [[0, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]];
    let names = ["0", "v", "v*", "vv*", "v*v"];
    let mul = |x: [u8; 4], y: [u8; 4]| {
        [x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]]
    };
    let table: Vec<Vec<usize>> = mats
        .iter()
        .map(|&x| mats.iter().map(|&y| mats.iter().position(|&z| z == mul(x, y)).expect("closed under products")).collect())
        .collect();
    Semigroup::new(names.iter().map(|s| s.to_string()).collect(), table).expect("gamma5 table")
}

/// Cayley table of `Z/n` as nested vectors.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    let mut t = vec![vec![0; n]; n];
    for (a, row) in t.iter_mut().enumerate() {
        for (b, v) in row.iter_mut().enumerate() {
            *v = (a + b) % n;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_groups_with_expected_subgroups() {
        let counts: Vec<usize> = ["Z2", "Z3", "Z4", "S3"].iter().map(|n| FiniteGroup::preset(n).unwrap().subgroups().len()).collect();
        assert_eq!(counts, vec![2, 2, 3, 6]);
    }

    #[test]
    fn nonassociative_triple_is_named() {
        // A commutative loop-like table on {0,1,2} that fails associativity.
        let table = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        let err = Semigroup::new(vec!["x".into(), "y".into(), "z".into()], table).unwrap_err();
        match err {
            Error::InvalidTable(msg) => assert!(msg.contains("not associative at")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gamma5_products() {
        let g = gamma5();
        let i = |n: &str| g.index_of(n).unwrap();
        assert_eq!(g.mul(i("v*"), i("v")), i("v*v"));
        assert_eq!(g.mul(i("v"), i("v*")), i("vv*"));
        assert_eq!(g.mul(i("v"), i("v")), i("0"));
        assert_eq!(g.identity(), None);
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = FiniteGroup::symmetric3();
        let (r, s) = (g.index_of("r").unwrap(), g.index_of("s").unwrap());
        assert_ne!(g.mul(r, s), g.mul(s, r));
        assert_eq!(g.inv(r), g.index_of("r2").unwrap());
        assert_eq!(FiniteGroup::cyclic(4).as_semigroup().table(), cyclic_table(4));
    }
}
