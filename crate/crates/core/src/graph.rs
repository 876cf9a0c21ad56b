//! Finite simple graphs on dense integer labels and the constructions used to
//! build them: circulants, complete graphs, disjoint unions, lexicographical
//! products and expansions.
//!
//! Every combinator fixes an explicit label map, so two graphs are "equal"
//! exactly when their edge sets coincide. Nothing here tests isomorphism.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A finite simple graph on vertices `0…n-1`.
///
/// Edges are stored as `(a, b)` with `a < b`, sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl Graph {
    /// Builds a graph, orienting each edge as `a < b` and dropping duplicates.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Loop(a));
            }
            if let Some(vertex) = [a, b].into_iter().find(|&v| v >= n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Graph {
            n,
            edges: normalized,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
        }
    }

    /// The complete graph `K_m`.
    pub fn complete(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyComplete);
        }
        let edges = (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .collect();
        Ok(Graph { n: m, edges })
    }

    /// The circulant `C_n(S)`: `{a, b}` is an edge iff `|a-b|` or `n-|a-b|`
    /// lies in `S`.
    pub fn circulant(spec: &CirculantSpec) -> Self {
        let n = spec.n;
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let d = b - a;
                if spec.connection.contains(&d) || spec.connection.contains(&(n - d)) {
                    edges.push((a, b));
                }
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Neighbourhoods as bitsets; only available up to 128 vertices.
    pub fn adjacency(&self) -> Result<Vec<VertexSet>> {
        if self.n > VertexSet::CAPACITY {
            return Err(Error::TooManyVertices {
                got: self.n,
                max: VertexSet::CAPACITY,
            });
        }
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for &(a, b) in &self.edges {
            adj[a] = adj[a].with(b);
            adj[b] = adj[b].with(a);
        }
        Ok(adj)
    }

    /// `G ⊔ H` with the vertices of `H` shifted by `n_G`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)))
            .collect();
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Lexicographical product `G[H]`.
    ///
    /// The pair `(i, j) ∈ V_G × V_H` gets label `i + n_G·j`; `(w,x) ~ (y,z)`
    /// iff `{w,y} ∈ E_G`, or `w = y` and `{x,z} ∈ E_H`.
    pub fn lex_product(&self, h: &Graph) -> Graph {
        let ng = self.n;
        let nh = h.n;
        let label = |i: usize, j: usize| i + ng * j;
        let mut edges = Vec::with_capacity(self.edges.len() * nh * nh + ng * h.edges.len());
        for &(w, y) in &self.edges {
            for x in 0..nh {
                for z in 0..nh {
                    edges.push((label(w, x), label(y, z)));
                }
            }
        }
        for w in 0..ng {
            for &(x, z) in &h.edges {
                edges.push((label(w, x), label(w, z)));
            }
        }
        Graph::new(ng * nh, edges).expect("product labels are in range")
    }

    /// The `(s_1,…,s_n)`-expansion: vertex `i` becomes a clique of `s_i`
    /// copies, labeled consecutively in block order.
    pub fn expansion(&self, s: &ExpansionVector) -> Result<Graph> {
        if s.len() != self.n {
            return Err(Error::ExpansionLength {
                expected: self.n,
                got: s.len(),
            });
        }
        let offsets = s.offsets();
        let block = |i: usize| offsets[i]..offsets[i] + s.0[i];
        let mut edges = Vec::new();
        for i in 0..self.n {
            let copies = block(i);
            for a in copies.clone() {
                for b in a + 1..copies.end {
                    edges.push((a, b));
                }
            }
        }
        for &(i, k) in &self.edges {
            for a in block(i) {
                for b in block(k) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(s.total(), edges)
    }

    /// Every labeled graph on `n` vertices, in the order of the edge bitmask
    /// over the pairs `(0,1), (0,2), …, (n-2,n-1)`.
    pub fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        assert!(pairs.len() < 64, "too many labeled graphs to enumerate");
        (0u64..1 << pairs.len()).map(move |mask| Graph {
            n,
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        })
    }

    /// Compact text label used in reports, e.g. `n3[0-1,1-2]`.
    pub fn descriptor(&self) -> String {
        let mut s = format!("n{}[", self.n);
        for (k, (a, b)) in self.edges.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{a}-{b}");
        }
        s.push(']');
        s
    }

    /// Graphviz rendering with the vertices pinned on a circle.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let radius = 1.0_f64.max(self.n as f64 / 4.0);
        let _ = writeln!(out, "graph \"{name}\" {{");
        let _ = writeln!(out, "  layout=neato;");
        let _ = writeln!(out, "  node [shape=circle];");
        for v in 0..self.n {
            let theta = std::f64::consts::TAU * v as f64 / self.n.max(1) as f64;
            let (x, y) = (radius * theta.sin(), radius * theta.cos());
            let _ = writeln!(out, "  {v} [pos=\"{x:.4},{y:.4}!\"];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Generator data `(n, S)` of a circulant graph, normalized so that
/// `S ⊆ {1,…,⌊n/2⌋}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    n: usize,
    connection: BTreeSet<usize>,
}

impl CirculantSpec {
    /// Reduces every entry mod `n`, folds `d ↦ min(d, n-d)` and drops zeros.
    pub fn new(n: usize, connection: impl IntoIterator<Item = i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCirculant);
        }
        let modulus = n as i64;
        let connection = connection
            .into_iter()
            .map(|d| {
                let r = d.rem_euclid(modulus) as usize;
                r.min(n - r)
            })
            .filter(|&d| d != 0)
            .collect();
        Ok(CirculantSpec { n, connection })
    }

    /// `K_m = C_m({1,…,⌊m/2⌋})`.
    pub fn complete(m: usize) -> Result<Self> {
        Self::new(m, 1..=(m / 2) as i64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn connection(&self) -> &BTreeSet<usize> {
        &self.connection
    }

    pub fn graph(&self) -> Graph {
        Graph::circulant(self)
    }

    /// Connection set of `C_n(S₁)[C_m(S₂)]` viewed as a circulant on `n·m`
    /// vertices under the label map `(i, j) ↦ i + n·j`.
    ///
    /// A difference `d` joins two vertices from different `G`-blocks exactly
    /// when `d mod n` is a `G`-difference, and two vertices in one block
    /// when `n | d` and `d/n mod m` is an `H`-difference.
    pub fn lex_connection(&self, other: &CirculantSpec) -> CirculantSpec {
        let (n, m) = (self.n, other.n);
        let total = n * m;
        let in_symmetric = |set: &BTreeSet<usize>, modulus: usize, r: usize| {
            set.contains(&r) || (r != 0 && set.contains(&(modulus - r)))
        };
        let connection = (1..=total / 2)
            .filter(|&d| {
                in_symmetric(&self.connection, n, d % n)
                    || (d % n == 0 && in_symmetric(&other.connection, m, (d / n) % m))
            })
            .collect();
        CirculantSpec {
            n: total,
            connection,
        }
    }

    /// All normalized specs on `n` vertices, one per subset of `{1,…,⌊n/2⌋}`.
    pub fn all_normalized(n: usize) -> Vec<CirculantSpec> {
        let half = n / 2;
        (0u64..1 << half)
            .map(|mask| CirculantSpec {
                n,
                connection: (1..=half).filter(|d| mask >> (d - 1) & 1 == 1).collect(),
            })
            .collect()
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}(", self.n)?;
        for (k, d) in self.connection.iter().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            write!(f, "{d}")?;
        }
        f.write_char(')')
    }
}

impl fmt::Debug for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CirculantSpec {
    type Err = Error;

    /// Parses the shorthand `C<n>(<d1>,<d2>,…)`, e.g. `C16(1,4,8)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected circulant shorthand like C16(1,4,8), got {s:?}"));
        let body = s.trim().strip_prefix('C').ok_or_else(bad)?;
        let (n, rest) = body.split_once('(').ok_or_else(bad)?;
        let list = rest.strip_suffix(')').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let connection = list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        CirculantSpec::new(n, connection)
    }
}

/// Multiplicities `(s_1,…,s_n)` of an expansion, all at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpansionVector(Vec<usize>);

impl ExpansionVector {
    pub fn new(s: Vec<usize>) -> Result<Self> {
        if let Some(i) = s.iter().position(|&k| k == 0) {
            return Err(Error::ZeroMultiplicity(i));
        }
        Ok(ExpansionVector(s))
    }

    pub fn uniform(n: usize, m: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Label of `x_{i,1}`, i.e. `Σ_{k<i} s_k`.
    pub fn offsets(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &k| {
                let start = *acc;
                *acc += k;
                Some(start)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn circulant_four_cycle() {
        let c4 = CirculantSpec::new(4, [1]).unwrap().graph();
        assert_eq!(c4, g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]));
    }

    #[test]
    fn circulant_c16_is_five_regular() {
        let c = "C16(1,4,8)".parse::<CirculantSpec>().unwrap().graph();
        assert!((0..16).all(|v| c.degree(v) == 5));
        assert_eq!(c.edge_count(), 40);
    }

    #[test]
    fn circulant_full_connection_is_complete() {
        for n in 1..=12 {
            assert_eq!(
                CirculantSpec::complete(n).unwrap().graph(),
                Graph::complete(n).unwrap()
            );
        }
    }

    #[test]
    fn circulant_rejects_zero_vertices() {
        assert!(matches!(
            CirculantSpec::new(0, [1]),
            Err(Error::EmptyCirculant)
        ));
    }

    #[test]
    fn normalization_identifies_equal_specs() {
        let a = CirculantSpec::new(10, [1, 9, 11, 10, 3]).unwrap();
        let b = CirculantSpec::new(10, [7, 1, -1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "C10(1,3)");
    }

    #[test]
    fn shorthand_parsing() {
        assert_eq!(
            "C5()".parse::<CirculantSpec>().unwrap().graph(),
            Graph::edgeless(5)
        );
        assert!("K5".parse::<CirculantSpec>().is_err());
        assert!("C5(1,x)".parse::<CirculantSpec>().is_err());
        assert!("C0(1)".parse::<CirculantSpec>().is_err());
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(Graph::complete(1).unwrap(), Graph::edgeless(1));
        assert_eq!(Graph::complete(2).unwrap().edge_count(), 1);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
        assert!(matches!(Graph::complete(0), Err(Error::EmptyComplete)));
    }

    #[test]
    fn disjoint_unions() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(k2.disjoint_union(&k2), g(4, &[(0, 1), (2, 3)]));
        assert_eq!(
            Graph::edgeless(2).disjoint_union(&Graph::edgeless(1)),
            Graph::edgeless(3)
        );
        assert_eq!(k2.disjoint_union(&Graph::edgeless(1)), g(3, &[(0, 1)]));
    }

    #[test]
    fn lex_product_examples() {
        let k2 = Graph::complete(2).unwrap();
        // (0,0)=0 (1,0)=1 (0,1)=2 (1,1)=3; edges across the K2, none inside a copy
        assert_eq!(
            k2.lex_product(&Graph::edgeless(2)),
            g(4, &[(0, 1), (0, 3), (1, 2), (2, 3)])
        );
        assert_eq!(k2.lex_product(&k2), Graph::complete(4).unwrap());
    }

    #[test]
    fn lex_product_with_edgeless_base_is_disjoint_copies() {
        let h = g(3, &[(0, 1), (1, 2)]);
        let product = Graph::edgeless(2).lex_product(&h);
        // copy w of H sits on labels {w, w+2, w+4}
        assert_eq!(product, g(6, &[(0, 2), (2, 4), (1, 3), (3, 5)]));
    }

    #[test]
    fn expansion_examples() {
        let k2 = Graph::complete(2).unwrap();
        let ones = ExpansionVector::uniform(2, 1).unwrap();
        assert_eq!(k2.expansion(&ones).unwrap(), k2);
        let s = ExpansionVector::new(vec![2, 1]).unwrap();
        assert_eq!(k2.expansion(&s).unwrap(), Graph::complete(3).unwrap());
        let s = ExpansionVector::new(vec![2, 2]).unwrap();
        assert_eq!(
            Graph::edgeless(2).expansion(&s).unwrap(),
            g(4, &[(0, 1), (2, 3)])
        );
    }

    #[test]
    fn expansion_errors() {
        let k2 = Graph::complete(2).unwrap();
        assert!(matches!(
            ExpansionVector::new(vec![1, 0]),
            Err(Error::ZeroMultiplicity(1))
        ));
        let s = ExpansionVector::new(vec![1, 1, 1]).unwrap();
        assert!(matches!(
            k2.expansion(&s),
            Err(Error::ExpansionLength {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn lex_connection_examples() {
        let c4 = CirculantSpec::new(4, [1]).unwrap();
        let k2 = CirculantSpec::new(2, [1]).unwrap();
        let e2 = CirculantSpec::new(2, []).unwrap();
        assert_eq!(c4.lex_connection(&k2), CirculantSpec::new(8, [1, 3, 4]).unwrap());
        assert_eq!(k2.lex_connection(&k2), CirculantSpec::new(4, [1, 2]).unwrap());
        assert_eq!(k2.lex_connection(&e2), CirculantSpec::new(4, [1]).unwrap());
    }

    #[test]
    fn graph_validation() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::Loop(1))));
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert_eq!(Graph::new(3, [(2, 0), (0, 2)]).unwrap().edges(), &[(0, 2)]);
    }

    #[test]
    fn json_format() {
        let c4 = CirculantSpec::new(4, [1]).unwrap().graph();
        let text = serde_json::to_string(&c4).unwrap();
        assert_eq!(text, r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        let back: Graph = serde_json::from_str(r#"{"n":2,"edges":[[1,0]]}"#).unwrap();
        assert_eq!(back, Graph::complete(2).unwrap());
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }

    #[test]
    fn dot_export_counts() {
        let dot = "C16(1,4,8)".parse::<CirculantSpec>().unwrap().graph().to_dot("C16");
        assert_eq!(dot.matches(" -- ").count(), 40);
        assert_eq!(dot.matches("pos=").count(), 16);
    }

    #[test]
    fn labeled_enumeration_counts() {
        assert_eq!(Graph::all_labeled(0).count(), 1);
        assert_eq!(Graph::all_labeled(3).count(), 8);
        assert_eq!(Graph::all_labeled(4).count(), 64);
    }
}
