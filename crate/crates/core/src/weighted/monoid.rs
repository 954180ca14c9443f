//! Finite commutative monoids given by Cayley tables, and their endomorphisms.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidHom {
    map: Vec<usize>,
}

/// On-disk monoid description. `hom` is optional and defaults to the identity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidDocument {
    pub elements: Vec<Value>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<Vec<usize>>,
}

impl FiniteMonoid {
    pub fn new(name: impl Into<String>, labels: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: String| Err(Error::InvalidMonoid(msg));
        if n == 0 {
            return bad("a monoid needs at least one element".into());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad(format!("table must be {n}x{n}"));
        }
        if let Some(v) = table.iter().flatten().find(|&&v| v >= n) {
            return bad(format!("table entry {v} is not an element index"));
        }
        if unit >= n {
            return bad(format!("unit {unit} is not an element index"));
        }
        for x in 0..n {
            if table[unit][x] != x || table[x][unit] != x {
                return bad(format!("element {unit} is not a two-sided unit (fails at {x})"));
            }
            for y in 0..n {
                if table[x][y] != table[y][x] {
                    return bad(format!("not commutative at ({x}, {y})"));
                }
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return bad(format!("not associative at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(FiniteMonoid { name: name.into(), labels, table, unit })
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::new("trivial", vec!["e".into()], vec![vec![0]], 0).unwrap()
    }

    /// ℤ/n under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMonoid("Z/0 is not finite".into()));
        }
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::new(format!("z{n}"), (0..n).map(|x| x.to_string()).collect(), table, 0)
    }

    /// Subsets of {0, 1} under union, elements ordered ∅, {0}, {1}, {0,1} (bitmasks 0..4).
    pub fn subsets_union() -> Self {
        let labels = ["{}", "{0}", "{1}", "{0,1}"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|x| (0..4).map(|y| x | y).collect()).collect();
        Self::new("union2", labels, table, 0).unwrap()
    }

    pub fn from_document(name: impl Into<String>, doc: &MonoidDocument) -> Result<(Self, Option<MonoidHom>)> {
        let labels = doc
            .elements
            .iter()
            .map(|v| match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        let m = Self::new(name, labels, doc.table.clone(), doc.unit)?;
        let hom = doc.hom.as_ref().map(|h| MonoidHom::new(&m, h.clone())).transpose()?;
        Ok((m, hom))
    }

    pub fn from_json(name: impl Into<String>, text: &str) -> Result<(Self, Option<MonoidHom>)> {
        let doc: MonoidDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidMonoid(format!("bad monoid JSON: {e}")))?;
        Self::from_document(name, &doc)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// `c`-fold sum `x + … + x` (the unit when `c = 0`).
    pub fn times(&self, c: u64, x: usize) -> usize {
        // orbits are eventually periodic with period ≤ |X|, so reduce large c first
        let n = self.size() as u64;
        let c = if c > 2 * n { n + (c - n) % self.period(x) as u64 } else { c };
        (0..c).fold(self.unit, |acc, _| self.op(acc, x))
    }

    // period of k ↦ k·x once it enters its cycle
    fn period(&self, x: usize) -> usize {
        let n = self.size();
        let mut seen = vec![usize::MAX; n];
        let mut cur = self.unit;
        for k in 0.. {
            if seen[cur] != usize::MAX {
                return k - seen[cur];
            }
            seen[cur] = k;
            cur = self.op(cur, x);
        }
        unreachable!()
    }

    pub fn sum(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.unit, |a, b| self.op(a, b))
    }

    /// Every endomorphism, in lexicographic order of the map.
    pub fn all_homs(&self) -> Vec<MonoidHom> {
        let n = self.size();
        let mut out = Vec::new();
        let mut map = vec![0usize; n];
        loop {
            if let Ok(h) = MonoidHom::new(self, map.clone()) {
                out.push(h);
            }
            let Some(i) = (0..n).rev().find(|&i| map[i] + 1 < n) else { break };
            map[i] += 1;
            for v in map.iter_mut().skip(i + 1) {
                *v = 0;
            }
        }
        out
    }

    pub fn to_document(&self, hom: Option<&MonoidHom>) -> MonoidDocument {
        MonoidDocument {
            elements: self.labels.iter().map(|l| Value::String(l.clone())).collect(),
            table: self.table.clone(),
            unit: self.unit,
            hom: hom.map(|h| h.map.clone()),
        }
    }
}

impl MonoidHom {
    pub fn new(monoid: &FiniteMonoid, map: Vec<usize>) -> Result<Self> {
        let n = monoid.size();
        if map.len() != n || map.iter().any(|&v| v >= n) {
            return Err(Error::InvalidHom(format!("map must send each of the {n} elements to an element")));
        }
        if map[monoid.unit] != monoid.unit {
            return Err(Error::InvalidHom("unit is not preserved".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if map[monoid.op(x, y)] != monoid.op(map[x], map[y]) {
                    return Err(Error::InvalidHom(format!("product of {x} and {y} is not preserved")));
                }
            }
        }
        Ok(MonoidHom { map })
    }

    pub fn identity(monoid: &FiniteMonoid) -> Self {
        MonoidHom { map: (0..monoid.size()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `h^d` as a lookup table.
    pub fn power(&self, d: usize) -> Vec<usize> {
        let mut cur: Vec<usize> = (0..self.map.len()).collect();
        for _ in 0..d {
            cur = cur.iter().map(|&x| self.map[x]).collect();
        }
        cur
    }

    /// Compact name such as `id` or `[0 2 1]`.
    pub fn label(&self) -> String {
        if self.is_identity() {
            "id".into()
        } else {
            format!("[{}]", self.map.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        }
    }
}

/// The monoids used by the invariant table, in a fixed order.
pub fn registered_monoids() -> Vec<FiniteMonoid> {
    vec![
        FiniteMonoid::cyclic(2).unwrap(),
        FiniteMonoid::cyclic(3).unwrap(),
        FiniteMonoid::cyclic(4).unwrap(),
        FiniteMonoid::subsets_union(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_tables() {
        // x·y = x is associative and has no unit
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteMonoid::new("bad", vec!["a".into(), "b".into()], t, 0).is_err());
        assert!(FiniteMonoid::cyclic(0).is_err());
    }

    #[test]
    fn homs_of_small_cyclic_groups() {
        // End(ℤ/n) ≅ ℤ/n as a set
        assert_eq!(FiniteMonoid::cyclic(3).unwrap().all_homs().len(), 3);
        assert_eq!(FiniteMonoid::cyclic(4).unwrap().all_homs().len(), 4);
        let z2 = FiniteMonoid::cyclic(2).unwrap();
        assert!(MonoidHom::new(&z2, vec![1, 0]).is_err());
    }

    #[test]
    fn repeated_addition() {
        let z3 = FiniteMonoid::cyclic(3).unwrap();
        assert_eq!(z3.times(0, 2), 0);
        assert_eq!(z3.times(5, 1), 2);
        assert_eq!(z3.times(1_000_000_001, 1), 1_000_000_001 % 3);
        let u = FiniteMonoid::subsets_union();
        assert_eq!(u.times(7, 2), 2);
    }

    #[test]
    fn json_round_trip() {
        let u = FiniteMonoid::subsets_union();
        let text = serde_json::to_string(&u.to_document(None)).unwrap();
        let (back, hom) = FiniteMonoid::from_json("union2", &text).unwrap();
        assert_eq!(back, u);
        assert!(hom.is_none());
        let doc = r#"{"elements":[0,1],"table":[[0,1],[1,0]],"unit":0,"hom":[0,0]}"#;
        let (m, h) = FiniteMonoid::from_json("z2", doc).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(h.unwrap().map(), &[0, 0]);
        assert!(FiniteMonoid::from_json("x", r#"{"elements":[0,1],"table":[[0,1],[1,0]],"unit":0,"hom":[1,0]}"#).is_err());
    }
}
