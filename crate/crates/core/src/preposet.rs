//! Preposets on `[n]` and their Hasse diagrams.
//!
//! A [`Preposet`] is kept in quotient form: a partition of `[n]` into
//! equivalence classes plus the cover relation of the induced order on
//! classes. Classes are sorted by their minimum element and covers are sorted
//! lexicographically by class index, so two equal preposets always have equal
//! representations.

use std::fmt;
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The relation `lo ⪯ hi` on 1-based elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Relation {
    pub lo: usize,
    pub hi: usize,
}

impl Relation {
    pub fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }
}

impl From<(usize, usize)> for Relation {
    fn from((lo, hi): (usize, usize)) -> Self {
        Self { lo, hi }
    }
}

impl From<[usize; 2]> for Relation {
    fn from([lo, hi]: [usize; 2]) -> Self {
        Self { lo, hi }
    }
}

impl From<Relation> for [usize; 2] {
    fn from(r: Relation) -> Self {
        [r.lo, r.hi]
    }
}

/// A cover edge `lower -> upper`, given as indices into [`Preposet::classes`].
pub type Cover = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Properties {
    pub connected: bool,
    pub antisymmetric: bool,
    pub tree: bool,
    pub linear_order: bool,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Preposet {
    n: usize,
    classes: Vec<Vec<usize>>,
    covers: Vec<Cover>,
}

impl Preposet {
    /// Reflexive-transitive closure of `rels`, quotiented by mutual
    /// comparability and reduced to its Hasse diagram.
    pub fn from_relations<I, R>(n: usize, rels: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: Into<Relation>,
    {
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for r in rels {
            let r = r.into();
            if r.lo == 0 || r.hi == 0 || r.lo > n || r.hi > n {
                return Err(Error::InvalidRelation {
                    lo: r.lo,
                    hi: r.hi,
                    n,
                });
            }
            reach[r.lo - 1][r.hi - 1] = true;
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &r) in row.iter_mut().zip(&via) {
                    *cell |= r;
                }
            }
        }
        Ok(Self::from_closure(n, &reach))
    }

    fn from_closure(n: usize, reach: &[Vec<bool>]) -> Self {
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let block: Vec<usize> = (i..n).filter(|&j| reach[i][j] && reach[j][i]).collect();
            for &j in &block {
                class_of[j] = classes.len();
            }
            classes.push(block.into_iter().map(|j| j + 1).collect());
        }

        let m = classes.len();
        let lt = |a: usize, b: usize| a != b && reach[classes[a][0] - 1][classes[b][0] - 1];
        let mut covers = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if lt(a, b) && !(0..m).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        Self { n, classes, covers }
    }

    /// The chain `order[0] ⪯ order[1] ⪯ ...`.
    pub fn chain(order: &[usize]) -> Result<Self> {
        Self::from_relations(order.len(), order.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Dimension of the labeled cone: one less than the number of classes.
    pub fn dimension(&self) -> usize {
        self.classes.len() - 1
    }

    /// Index of the class containing the 1-based `element`.
    pub fn class_of(&self, element: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&element))
            .expect("element in [n]")
    }

    /// Class index of the class whose minimum element is `min`, if any.
    pub fn class_with_min(&self, min: usize) -> Option<usize> {
        self.classes.iter().position(|c| c[0] == min)
    }

    /// A generating set of relations: each class as a cycle through its
    /// minimum, and each cover between class minima.
    pub fn relations(&self) -> Vec<Relation> {
        let mut rels = Vec::new();
        for class in &self.classes {
            for &x in &class[1..] {
                rels.push(Relation::new(class[0], x));
                rels.push(Relation::new(x, class[0]));
            }
        }
        for &(a, b) in &self.covers {
            rels.push(Relation::new(self.classes[a][0], self.classes[b][0]));
        }
        rels.sort();
        rels
    }

    /// Whether `i ⪯ j` holds (1-based elements).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.class_of(i), self.class_of(j));
        let mut seen = vec![false; self.classes.len()];
        let mut stack = vec![a];
        while let Some(c) = stack.pop() {
            if c == b {
                return true;
            }
            if std::mem::replace(&mut seen[c], true) {
                continue;
            }
            stack.extend(self.covers.iter().filter(|e| e.0 == c).map(|e| e.1));
        }
        false
    }

    pub fn is_connected(&self) -> bool {
        let m = self.classes.len();
        let mut uf = UnionFind::<usize>::new(m);
        let mut merged = 0;
        for &(a, b) in &self.covers {
            if uf.union(a, b) {
                merged += 1;
            }
        }
        merged + 1 == m
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.classes.len() == self.n
    }

    /// Connected with a tree-shaped Hasse diagram.
    pub fn is_tree(&self) -> bool {
        self.covers.len() + 1 == self.classes.len() && self.is_connected()
    }

    pub fn is_tree_poset(&self) -> bool {
        self.is_antisymmetric() && self.is_tree()
    }

    pub fn is_linear_order(&self) -> bool {
        self.is_tree_poset()
            && self
                .degrees()
                .iter()
                .all(|&(down, up)| down <= 1 && up <= 1)
    }

    pub fn properties(&self) -> Properties {
        Properties {
            connected: self.is_connected(),
            antisymmetric: self.is_antisymmetric(),
            tree: self.is_tree(),
            linear_order: self.is_linear_order(),
        }
    }

    /// `(down_degree, up_degree)` of every class.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); self.classes.len()];
        for &(a, b) in &self.covers {
            deg[a].1 += 1;
            deg[b].0 += 1;
        }
        deg
    }

    /// `P^op`: same classes, every cover reversed.
    pub fn opposite(&self) -> Self {
        let mut covers: Vec<Cover> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        Self {
            n: self.n,
            classes: self.classes.clone(),
            covers,
        }
    }

    fn check_covers(&self, edges: &[Cover]) -> Result<()> {
        match edges.iter().find(|e| !self.covers.contains(e)) {
            Some(&(lower, upper)) => Err(Error::InvalidEdge { lower, upper }),
            None => Ok(()),
        }
    }

    /// Merge the two endpoint classes of every edge in `edges`.
    pub fn contract(&self, edges: &[Cover]) -> Result<Self> {
        self.check_covers(edges)?;
        let mut rels = self.relations();
        rels.extend(
            edges
                .iter()
                .map(|&(a, b)| Relation::new(self.classes[b][0], self.classes[a][0])),
        );
        Self::from_relations(self.n, rels)
    }

    /// Every contraction of a tree preposet, one per subset of covers.
    pub fn all_contractions(&self) -> Result<Vec<Self>> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        let m = self.covers.len();
        let mut out = (0u64..1 << m)
            .map(|mask| {
                let edges: Vec<Cover> = (0..m)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.covers[i])
                    .collect();
                self.contract(&edges)
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_by(|a, b| b.classes.len().cmp(&a.classes.len()).then_with(|| a.cmp(b)));
        out.dedup();
        Ok(out)
    }

    /// Whether `self` is obtained from `p` by contracting some set of its
    /// cover edges.
    ///
    /// The only candidate edge set is the covers of `p` whose endpoints land
    /// in the same class of `self`; contracting it must reproduce `self`.
    pub fn is_contraction_of(&self, p: &Preposet) -> Result<bool> {
        if self.n != p.n {
            return Err(Error::DimensionMismatch {
                expected: p.n,
                found: self.n,
            });
        }
        if self.classes.len() > p.classes.len() {
            return Ok(false);
        }
        let mine: Vec<usize> = p.classes.iter().map(|c| self.class_of(c[0])).collect();
        let internal: Vec<Cover> = p
            .covers
            .iter()
            .copied()
            .filter(|&(a, b)| mine[a] == mine[b])
            .collect();
        Ok(p.contract(&internal)? == *self)
    }

    /// Component index of every class once `cuts` are removed from the
    /// Hasse tree; components are numbered by their minimum element.
    pub(crate) fn component_ids(&self, cuts: &[Cover]) -> Result<Vec<usize>> {
        if !self.is_tree() {
            return Err(Error::NotATree);
        }
        self.check_covers(cuts)?;
        let m = self.classes.len();
        let mut uf = UnionFind::<usize>::new(m);
        for e in self.covers.iter().filter(|e| !cuts.contains(e)) {
            uf.union(e.0, e.1);
        }
        // Classes are sorted by minimum, so first appearance orders components.
        let mut roots = Vec::new();
        let ids = (0..m)
            .map(|c| {
                let root = uf.find(c);
                roots.iter().position(|&r| r == root).unwrap_or_else(|| {
                    roots.push(root);
                    roots.len() - 1
                })
            })
            .collect();
        Ok(ids)
    }

    /// Partition of `[n]` into the element sets of the components of the
    /// Hasse tree with `cuts` removed.
    pub fn split_components(&self, cuts: &[Cover]) -> Result<Vec<Vec<usize>>> {
        let ids = self.component_ids(cuts)?;
        let count = ids.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); count];
        for (c, &id) in ids.iter().enumerate() {
            parts[id].extend_from_slice(&self.classes[c]);
        }
        for part in &mut parts {
            part.sort_unstable();
        }
        Ok(parts)
    }

    /// Calls `f` on every linear extension, listed lowest element first, in
    /// lexicographic order.
    pub fn for_each_linear_extension<F: FnMut(&[usize])>(&self, mut f: F) -> Result<()> {
        if !self.is_antisymmetric() {
            return Err(Error::NotAPoset);
        }
        let mut indeg = vec![0usize; self.n];
        let mut succ = vec![Vec::new(); self.n];
        for &(a, b) in &self.covers {
            indeg[b] += 1;
            succ[a].push(b);
        }
        let mut order = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n];
        extend(&mut order, &mut used, &mut indeg, &succ, &mut f);
        Ok(())
    }

    pub fn linear_extensions(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.for_each_linear_extension(|o| out.push(o.to_vec()))?;
        Ok(out)
    }

    /// Graphviz rendering of the Hasse diagram, lower classes drawn below.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {name} {{");
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  edge [dir=none];");
        for (i, class) in self.classes.iter().enumerate() {
            let _ = writeln!(s, "  c{i} [label=\"{}\"];", block_label(class));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(s, "  c{a} -> c{b};");
        }
        s.push_str("}\n");
        s
    }
}

// Classes of a poset are singletons, so class indices are elements - 1.
fn extend<F: FnMut(&[usize])>(
    order: &mut Vec<usize>,
    used: &mut [bool],
    indeg: &mut [usize],
    succ: &[Vec<usize>],
    f: &mut F,
) {
    if order.len() == used.len() {
        f(order);
        return;
    }
    for c in 0..used.len() {
        if used[c] || indeg[c] != 0 {
            continue;
        }
        used[c] = true;
        order.push(c + 1);
        for &s in &succ[c] {
            indeg[s] -= 1;
        }
        extend(order, used, indeg, succ, f);
        for &s in &succ[c] {
            indeg[s] += 1;
        }
        order.pop();
        used[c] = false;
    }
}

fn block_label(block: &[usize]) -> String {
    let items: Vec<String> = block.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Debug for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self.classes.iter().map(|c| block_label(c)).collect();
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{}<{}", classes[a], classes[b]))
            .collect();
        write!(
            f,
            "[n={}; {}; {}]",
            self.n,
            classes.join(" "),
            covers.join(" ")
        )
    }
}
