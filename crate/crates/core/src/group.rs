//! Finite groups as explicit Cayley tables, their subgroups, and matched pairs.
//!
//! Catalog element orderings (labels in reports depend on these):
//!
//! * `cyclic n`: `0..n` under addition mod `n`, labelled `0`, `1`, ...
//! * `dihedral n` (order `2n`): `r^a s^b` with `a < n`, `b < 2`, ordered
//!   lexicographically in `(b, a)`, i.e. index `b·n + a`. Multiplication
//!   follows `s r = r⁻¹ s`. Labels `e`, `r`, `r^2`, ..., `s`, `rs`, `r^2s`, ...
//! * `symmetric n` (`n ≤ 5`): permutations of `{1..n}` in lexicographic
//!   one-line order, labelled by their one-line word (`123`, `132`, ...).
//!   The product is composition, `(στ)(x) = σ(τ(x))`.
//! * `direct_product(G, H)`: pairs `(g, h)` at index `g·|H| + h`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    pub labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let labels = if labels.is_empty() { (0..n).map(|i| format!("g{i}")).collect() } else { labels };
        if labels.len() != n {
            return Err(Error::InvalidGroup(format!("{} labels for {n} elements", labels.len())));
        }
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != n {
            return Err(Error::InvalidGroup("labels are not unique".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("no inverse for element {x}")))?;
            inverse.push(inv);
        }
        Ok(Self { order: n, mult: table, identity, inverse, labels })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedCatalog("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table, (0..n).map(|i| i.to_string()).collect())
    }

    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::UnsupportedCatalog("dihedral group needs n >= 1".into()));
        }
        let idx = |a: usize, b: usize| b * n + a;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for b in 0..2 {
            for a in 0..n {
                for d in 0..2 {
                    for c in 0..n {
                        // r^a s^b r^c s^d = r^(a ± c) s^(b + d)
                        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                        table[idx(a, b)][idx(c, d)] = idx(rot, (b + d) % 2);
                    }
                }
            }
        }
        let label = |a: usize, b: usize| -> String {
            let r = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{a}"),
            };
            match (r.is_empty(), b) {
                (true, 0) => "e".to_string(),
                (_, 0) => r,
                (_, _) => format!("{r}s"),
            }
        };
        let labels = (0..2).flat_map(|b| (0..n).map(move |a| (a, b))).map(|(a, b)| label(a, b)).collect();
        Self::from_table(table, labels)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::UnsupportedCatalog(format!("symmetric group on {n} points (supported: 1..=5)")));
        }
        let perms = permutations(n);
        let position = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation listed");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let composed: Vec<usize> = (0..n).map(|x| s[t[x]]).collect();
                        position(&composed)
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| p.iter().map(|x| (x + 1).to_string()).collect()).collect();
        Self::from_table(table, labels)
    }

    pub fn direct_product(g: &Self, h: &Self) -> Result<Self> {
        let m = h.order;
        let n = g.order * m;
        let table = (0..n)
            .map(|x| (0..n).map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m)).collect())
            .collect();
        let labels =
            (0..n).map(|x| format!("({},{})", g.labels[x / m], h.labels[x % m])).collect();
        Self::from_table(table, labels)
    }

    /// Subgroup spanned by `members` viewed as a group in its own right,
    /// with elements in ascending parent order.
    pub fn induced(&self, sub: &Subgroup) -> Result<Self> {
        let pos = |x: usize| sub.members.binary_search(&x).expect("closed subgroup");
        let table = sub.members.iter().map(|&a| sub.members.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        let labels = sub.members.iter().map(|&a| self.labels[a].clone()).collect();
        Self::from_table(table, labels)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Named catalog entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum CatalogName {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    DirectProduct { factors: Vec<CatalogName> },
}

impl CatalogName {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            CatalogName::Cyclic { n } => FiniteGroup::cyclic(*n),
            CatalogName::Dihedral { n } => FiniteGroup::dihedral(*n),
            CatalogName::Symmetric { n } => FiniteGroup::symmetric(*n),
            CatalogName::DirectProduct { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::UnsupportedCatalog("empty direct product".into()))?
                    .build()?;
                it.try_fold(first, |acc, f| FiniteGroup::direct_product(&acc, &f.build()?))
            }
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Cyclic { n } => write!(f, "cyclic {n}"),
            CatalogName::Dihedral { n } => write!(f, "dihedral {n}"),
            CatalogName::Symmetric { n } => write!(f, "symmetric {n}"),
            CatalogName::DirectProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "direct_product({})", parts.join(", "))
            }
        }
    }
}

impl FromStr for CatalogName {
    type Err = Error;

    /// Accepts `cyclic 4`, `dihedral 3`, `symmetric 3`, and
    /// `direct_product(cyclic 2, cyclic 2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("direct_product(").and_then(|r| r.strip_suffix(')')) {
            let factors = split_top_level(inner).into_iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
            return Ok(CatalogName::DirectProduct { factors });
        }
        let (family, n) = s
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("catalog name `{s}` needs a size")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad size in `{s}`")))?;
        match family {
            "cyclic" => Ok(CatalogName::Cyclic { n }),
            "dihedral" => Ok(CatalogName::Dihedral { n }),
            "symmetric" => Ok(CatalogName::Symmetric { n }),
            _ => Err(Error::UnsupportedCatalog(format!("unknown family `{family}`"))),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// A subgroup, stored as the ascending list of its member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    /// Checks closure, identity and inverses against `g`.
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if set.iter().any(|&x| x >= g.order) {
            return Err(Error::InvalidGroup("subgroup member out of range".into()));
        }
        if !set.contains(&g.identity) {
            return Err(Error::InvalidGroup("subset does not contain the identity".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::InvalidGroup(format!("subset not closed under inverse at {}", g.labels[a])));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::InvalidGroup(format!(
                        "subset not closed under products at ({}, {})",
                        g.labels[a], g.labels[b]
                    )));
                }
            }
        }
        Ok(Self { members: set.into_iter().collect() })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self { members: vec![g.identity] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self { members: g.elements().collect() }
    }

    /// Closure of a generating set.
    pub fn generated(g: &FiniteGroup, generators: &[usize]) -> Result<Self> {
        if let Some(&bad) = generators.iter().find(|&&x| x >= g.order) {
            return Err(Error::InvalidGroup(format!("generator index {bad} out of range")));
        }
        let mut set: BTreeSet<usize> = BTreeSet::from([g.identity]);
        let mut frontier: Vec<usize> = vec![g.identity];
        while let Some(x) = frontier.pop() {
            for &s in generators {
                for y in [g.mul(x, s), g.mul(x, g.inv(s))] {
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        Ok(Self { members: set.into_iter().collect() })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|x| self.members.iter().all(|&h| self.contains(g.mul(g.mul(x, h), g.inv(x)))))
    }

    /// Double cosets `HpH`, each sorted, ordered by their smallest element.
    pub fn double_cosets(&self, g: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order];
        let mut out = Vec::new();
        for p in g.elements() {
            if seen[p] {
                continue;
            }
            let mut coset = BTreeSet::new();
            for &a in &self.members {
                for &b in &self.members {
                    coset.insert(g.mul(g.mul(a, p), b));
                }
            }
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset.into_iter().collect());
        }
        out
    }

    pub fn label(&self, g: &FiniteGroup) -> String {
        let names: Vec<&str> = self.members.iter().map(|&x| g.labels[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Every subgroup of `g`, sorted by (order, members).
///
/// Each subgroup is the join of its cyclic subgroups, so repeatedly joining
/// cyclic subgroups onto known ones reaches all of them.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut cyclic: BTreeSet<Subgroup> = BTreeSet::new();
    for x in g.elements() {
        cyclic.insert(Subgroup::generated(g, &[x]).expect("valid index"));
    }
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut found: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = cyclic.clone();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.members.iter().all(|&x| h.contains(x)) {
                continue;
            }
            let gens: Vec<usize> = h.members.iter().chain(&c.members).copied().collect();
            let joined = Subgroup::generated(g, &gens).expect("valid indices");
            if found.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Groups `(G₁, G₂)` with a left action `r ▷ u` of `G₁` on the set `G₂` and
/// a right action `r ◁ u` of `G₂` on the set `G₁`.
///
/// Tables are indexed `[r][u]`: `left_action[r][u] = r ▷ u ∈ G₂` and
/// `right_action[r][u] = r ◁ u ∈ G₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub g1: FiniteGroup,
    pub g2: FiniteGroup,
    pub left_action: Vec<Vec<usize>>,
    pub right_action: Vec<Vec<usize>>,
}

impl MatchedPair {
    pub fn new(
        g1: FiniteGroup,
        g2: FiniteGroup,
        left_action: Vec<Vec<usize>>,
        right_action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let mp = Self { g1, g2, left_action, right_action };
        mp.validate()?;
        Ok(mp)
    }

    /// Both actions trivial: the direct-product matched pair.
    pub fn trivial(g1: FiniteGroup, g2: FiniteGroup) -> Result<Self> {
        let left = (0..g1.order).map(|_| (0..g2.order).collect()).collect();
        let right = (0..g1.order).map(|r| vec![r; g2.order]).collect();
        Self::new(g1, g2, left, right)
    }

    /// The matched pair of an exact factorization `G = G₂G₁` with
    /// `G₁ ∩ G₂ = {e}`: every product `r u` (r ∈ G₁, u ∈ G₂) factors
    /// uniquely as `(r ▷ u)(r ◁ u)`.
    pub fn from_factorization(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Result<Self> {
        if h1.order() * h2.order() != g.order {
            return Err(Error::InvalidMatchedPair(format!(
                "|G1|·|G2| = {}·{} does not equal |G| = {}",
                h1.order(),
                h2.order(),
                g.order
            )));
        }
        if h1.members.iter().any(|&x| x != g.identity && h2.contains(x)) {
            return Err(Error::InvalidMatchedPair("G1 and G2 intersect nontrivially".into()));
        }
        // factor[x] = (u, r) with x = u r.
        let mut factor = vec![None; g.order];
        for (ui, &u) in h2.members.iter().enumerate() {
            for (ri, &r) in h1.members.iter().enumerate() {
                factor[g.mul(u, r)] = Some((ui, ri));
            }
        }
        let mut left = vec![vec![0; h2.order()]; h1.order()];
        let mut right = vec![vec![0; h2.order()]; h1.order()];
        for (ri, &r) in h1.members.iter().enumerate() {
            for (ui, &u) in h2.members.iter().enumerate() {
                let (u2, r2) = factor[g.mul(r, u)].expect("factorization covers G");
                left[ri][ui] = u2;
                right[ri][ui] = r2;
            }
        }
        Self::new(g.induced(h1)?, g.induced(h2)?, left, right)
    }

    pub fn act_left(&self, r: usize, u: usize) -> usize {
        self.left_action[r][u]
    }

    pub fn act_right(&self, r: usize, u: usize) -> usize {
        self.right_action[r][u]
    }

    pub fn validate(&self) -> Result<()> {
        let (n1, n2) = (self.g1.order, self.g2.order);
        let bad = |m: String| Err(Error::InvalidMatchedPair(m));
        if self.left_action.len() != n1 || self.left_action.iter().any(|r| r.len() != n2 || r.iter().any(|&u| u >= n2))
        {
            return bad("left action table has the wrong shape".into());
        }
        if self.right_action.len() != n1
            || self.right_action.iter().any(|r| r.len() != n2 || r.iter().any(|&x| x >= n1))
        {
            return bad("right action table has the wrong shape".into());
        }
        let (g1, g2) = (&self.g1, &self.g2);
        let (e1, e2) = (g1.identity, g2.identity);
        for u in 0..n2 {
            if self.act_left(e1, u) != u {
                return bad(format!("e ▷ u != u at u = {}", g2.labels[u]));
            }
            if self.act_right(e1, u) != e1 {
                return bad(format!("e ◁ u != e at u = {}", g2.labels[u]));
            }
        }
        for r in 0..n1 {
            if self.act_left(r, e2) != e2 {
                return bad(format!("r ▷ e != e at r = {}", g1.labels[r]));
            }
            if self.act_right(r, e2) != r {
                return bad(format!("r ◁ e != r at r = {}", g1.labels[r]));
            }
        }
        // Action laws.
        for s in 0..n1 {
            for t in 0..n1 {
                for u in 0..n2 {
                    if self.act_left(g1.mul(s, t), u) != self.act_left(s, self.act_left(t, u)) {
                        return bad(format!("▷ is not a left action at ({s}, {t}, {u})"));
                    }
                }
            }
        }
        for r in 0..n1 {
            for u in 0..n2 {
                for v in 0..n2 {
                    if self.act_right(r, g2.mul(u, v)) != self.act_right(self.act_right(r, u), v) {
                        return bad(format!("◁ is not a right action at ({r}, {u}, {v})"));
                    }
                }
            }
        }
        // s ▷ (uv) = (s ▷ u)((s ◁ u) ▷ v)
        for s in 0..n1 {
            for u in 0..n2 {
                for v in 0..n2 {
                    let lhs = self.act_left(s, g2.mul(u, v));
                    let rhs = g2.mul(self.act_left(s, u), self.act_left(self.act_right(s, u), v));
                    if lhs != rhs {
                        return bad(format!("s ▷ (uv) compatibility fails at ({s}, {u}, {v})"));
                    }
                }
            }
        }
        // (st) ◁ u = (s ◁ (t ▷ u))(t ◁ u)
        for s in 0..n1 {
            for t in 0..n1 {
                for u in 0..n2 {
                    let lhs = self.act_right(g1.mul(s, t), u);
                    let rhs = g1.mul(self.act_right(s, self.act_left(t, u)), self.act_right(t, u));
                    if lhs != rhs {
                        return bad(format!("(st) ◁ u compatibility fails at ({s}, {t}, {u})"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn right_action_trivial(&self) -> bool {
        self.right_action.iter().enumerate().all(|(r, row)| row.iter().all(|&x| x == r))
    }

    /// Orbits of the right action of `G₂` on `G₁`, ordered by least element.
    pub fn right_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.g1.order];
        let mut out = Vec::new();
        for r in 0..self.g1.order {
            if seen[r] {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..self.g2.order).map(|u| self.act_right(r, u)).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    /// The pair `(Z₃, Z₂)` from the factorization of `S₃` into its rotation
    /// subgroup and the reflection subgroup generated by `132`.
    pub fn s3_example() -> Self {
        let s3 = FiniteGroup::symmetric(3).expect("catalog");
        let three_cycle = s3.index_of("231").expect("label");
        let transposition = s3.index_of("132").expect("label");
        let g1 = Subgroup::generated(&s3, &[three_cycle]).expect("valid");
        let g2 = Subgroup::generated(&s3, &[transposition]).expect("valid");
        Self::from_factorization(&s3, &g1, &g2).expect("exact factorization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism search over all bijections.
    fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
        if a.order != b.order {
            return false;
        }
        permutations(a.order).iter().any(|f| {
            a.elements().all(|x| a.elements().all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y])))
        })
    }

    #[test]
    fn table_validation() {
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], vec![]).unwrap();
        assert_eq!((z2.order, z2.identity), (2, 0));
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], vec![]).unwrap_err();
        assert!(err.to_string().contains("no inverse for element 1"), "{err}");
        assert!(FiniteGroup::from_table(vec![vec![0, 1]], vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], vec!["a".into(), "a".into()]).is_err());
        // Latin square without associativity.
        let t = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table(t, vec![]).is_err());
    }

    #[test]
    fn s3_from_its_table_is_nonabelian() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let rebuilt = FiniteGroup::from_table(s3.mult.clone(), s3.labels.clone()).unwrap();
        assert_eq!(rebuilt.order, 6);
        let noncommuting = (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).filter(|&(a, b)| s3.mul(a, b) != s3.mul(b, a));
        assert!(noncommuting.count() > 0);
        assert!(!rebuilt.is_abelian());
    }

    #[test]
    fn catalog_orders_and_isomorphisms() {
        assert_eq!(FiniteGroup::cyclic(4).unwrap().order, 4);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(d3.order, 6);
        assert_eq!(s3.order, 6);
        assert!(isomorphic(&d3, &s3));
        assert!(!isomorphic(&FiniteGroup::cyclic(6).unwrap(), &s3));
        assert_eq!(FiniteGroup::symmetric(5).unwrap().order, 120);
        assert!(FiniteGroup::symmetric(6).is_err());
        assert_eq!(d3.labels, ["e", "r", "r^2", "s", "rs", "r^2s"]);
        assert_eq!(s3.labels, ["123", "132", "213", "231", "312", "321"]);
        let v4: CatalogName = "direct_product(cyclic 2, cyclic 2)".parse().unwrap();
        let v4 = v4.build().unwrap();
        assert_eq!(v4.order, 4);
        assert!(v4.is_abelian());
        assert!(!isomorphic(&v4, &FiniteGroup::cyclic(4).unwrap()));
    }

    #[test]
    fn catalog_groups_pass_axioms() {
        for name in ["cyclic 1", "cyclic 7", "dihedral 4", "dihedral 6", "symmetric 4"] {
            let g: CatalogName = name.parse().unwrap();
            let g = g.build().unwrap();
            // from_table re-validates associativity, identity and inverses.
            FiniteGroup::from_table(g.mult.clone(), g.labels.clone()).unwrap();
        }
    }

    #[test]
    fn generated_subgroups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = Subgroup::generated(&s3, &[s3.index_of("213").unwrap()]).unwrap();
        assert_eq!(t.order(), 2);
        assert!(!t.is_normal(&s3));
        let c = Subgroup::generated(&s3, &[s3.index_of("231").unwrap()]).unwrap();
        assert_eq!(c.order(), 3);
        // g H g⁻¹ = H for every g.
        for g in s3.elements() {
            let conj: BTreeSet<usize> = c.members.iter().map(|&h| s3.mul(s3.mul(g, h), s3.inv(g))).collect();
            assert_eq!(conj.into_iter().collect::<Vec<_>>(), c.members);
        }
        assert!(c.is_normal(&s3));
        assert_eq!(Subgroup::generated(&s3, &[]).unwrap(), Subgroup::trivial(&s3));
        assert!(Subgroup::new(&s3, [0, 3]).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let counts = [
            ("cyclic 6", 4),
            ("cyclic 8", 4),
            ("symmetric 3", 6),
            ("dihedral 4", 10),
            ("dihedral 6", 16),
            ("symmetric 4", 30),
        ];
        for (name, expected) in counts {
            let g = name.parse::<CatalogName>().unwrap().build().unwrap();
            assert_eq!(all_subgroups(&g).len(), expected, "{name}");
        }
    }

    #[test]
    fn double_cosets_of_order_two_subgroup_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[s3.index_of("213").unwrap()]).unwrap();
        let dc = h.double_cosets(&s3);
        assert_eq!(dc.len(), 2);
        assert_eq!(dc[0], h.members);
        assert_eq!(dc[1].len(), 4);
    }

    #[test]
    fn s3_matched_pair_is_valid() {
        let mp = MatchedPair::s3_example();
        assert_eq!((mp.g1.order, mp.g2.order), (3, 2));
        assert!(!mp.right_action_trivial());
        // validate() already checked every compatibility tuple; the orbits
        // of Z₂ on Z₃ are {e} and the two nontrivial rotations.
        assert_eq!(mp.right_orbits().len(), 2);
        let trivial = MatchedPair::trivial(mp.g1.clone(), mp.g2.clone()).unwrap();
        assert!(trivial.right_action_trivial());
    }

    #[test]
    fn matched_pair_rejects_bad_actions() {
        let mp = MatchedPair::s3_example();
        let mut left = mp.left_action.clone();
        left[1][1] = 0;
        assert!(MatchedPair::new(mp.g1.clone(), mp.g2.clone(), left, mp.right_action.clone()).is_err());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let h = Subgroup::generated(&s3, &[1]).unwrap();
        assert!(MatchedPair::from_factorization(&s3, &h, &h).is_err());
    }
}
