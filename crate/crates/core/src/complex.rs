//! Simplicial complexes stored by their facets, and the independence complex
//! of a graph.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub type Face = VertexSet;

/// A simplicial complex on the vertex range `0…vertex_count-1`, given by its
/// facets.
///
/// Facets are pairwise incomparable, deduplicated and sorted canonically
/// (by size, then lexicographically). The void complex has no facets; the
/// complex `{∅}` has the single empty facet. They are different complexes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct Complex {
    vertex_count: usize,
    facets: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Vec<Face>,
}

impl TryFrom<ComplexJson> for Complex {
    type Error = Error;

    fn try_from(raw: ComplexJson) -> Result<Self> {
        Complex::from_faces(raw.n, raw.facets)
    }
}

impl From<Complex> for ComplexJson {
    fn from(c: Complex) -> Self {
        ComplexJson {
            n: c.vertex_count,
            facets: c.facets,
        }
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n > VertexSet::CAPACITY {
        return Err(Error::TooManyVertices {
            got: n,
            max: VertexSet::CAPACITY,
        });
    }
    Ok(())
}

/// Keeps the inclusion-maximal members of `faces`.
fn maximal(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|&g| f.is_subset(g)) {
            kept.push(f);
        }
    }
    kept
}

impl Complex {
    /// The complex generated by `faces`; non-maximal faces are discarded.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self> {
        check_vertex_count(vertex_count)?;
        let range = VertexSet::full(vertex_count);
        let faces: Vec<Face> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| !f.is_subset(range)) {
            return Err(Error::VertexOutOfRange {
                vertex: f.difference(range).first().unwrap_or_default(),
                n: vertex_count,
            });
        }
        Ok(Self::from_maximal(vertex_count, maximal(faces)))
    }

    /// Caller guarantees the facets are pairwise incomparable and in range.
    pub(crate) fn from_maximal(vertex_count: usize, mut facets: Vec<Face>) -> Self {
        facets.sort_unstable_by(VertexSet::canonical_cmp);
        Complex {
            vertex_count,
            facets,
        }
    }

    pub fn void(vertex_count: usize) -> Self {
        Complex {
            vertex_count,
            facets: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face(vertex_count: usize) -> Self {
        Complex {
            vertex_count,
            facets: vec![Face::EMPTY],
        }
    }

    pub fn simplex(vertex_count: usize, face: Face) -> Result<Self> {
        Self::from_faces(vertex_count, [face])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn into_facets(self) -> Vec<Face> {
        self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// A single facet (including `{∅}`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// All facets have the same cardinality. The void complex and `{∅}`
    /// are pure.
    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Vertices appearing in at least one facet.
    pub fn vertices(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn contains_face(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face.is_subset(f))
    }

    /// `link_Δ(F) = {G ∈ Δ : G ∩ F = ∅, G ∪ F ∈ Δ}`.
    pub fn link(&self, face: Face) -> Result<Complex> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace(face));
        }
        // distinct facets containing F stay incomparable once F is removed
        let facets = self
            .facets
            .iter()
            .filter(|&&f| face.is_subset(f))
            .map(|&f| f.difference(face))
            .collect();
        Ok(Complex::from_maximal(self.vertex_count, facets))
    }

    /// `del_Δ(x)`: all faces avoiding `x`, re-maximalized.
    pub fn deletion(&self, x: usize) -> Result<Complex> {
        if x >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: self.vertex_count,
            });
        }
        let faces = self.facets.iter().map(|&f| f.without(x)).collect();
        Ok(Complex::from_maximal(self.vertex_count, maximal(faces)))
    }

    /// Every face of the complex grouped by cardinality: entry `k` holds the
    /// faces of size `k` (dimension `k-1`) in ascending bit order.
    pub fn faces_by_size(&self, cap: usize) -> Result<Vec<Vec<Face>>> {
        let Some(dim) = self.dimension() else {
            return Ok(Vec::new());
        };
        let mut seen: HashSet<Face> = HashSet::new();
        for &facet in &self.facets {
            // subsets of a facet via the standard submask walk
            let bits = facet.bits();
            let mut sub = bits;
            loop {
                if seen.insert(VertexSet::from_bits(sub)) && seen.len() > cap {
                    return Err(Error::FaceLimit { cap });
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & bits;
            }
        }
        let mut by_size = vec![Vec::new(); (dim + 2) as usize];
        for f in seen {
            by_size[f.len()].push(f);
        }
        for layer in &mut by_size {
            layer.sort_unstable();
        }
        Ok(by_size)
    }

    /// Face counts `f_{-1}, f_0, …, f_d`.
    pub fn f_vector(&self, cap: usize) -> Result<Vec<usize>> {
        Ok(self.faces_by_size(cap)?.iter().map(Vec::len).collect())
    }
}

/// `Ind(G)`: facets are the maximal independent sets of `G`.
///
/// Maximal independent sets are the maximal cliques of the complement, found
/// with Bron–Kerbosch and Tomita pivoting.
pub fn independence_complex(g: &Graph) -> Result<Complex> {
    let n = g.vertex_count();
    let adj = g.adjacency()?;
    let all = VertexSet::full(n);
    let comp: Vec<VertexSet> = adj
        .iter()
        .enumerate()
        .map(|(v, &nb)| all.difference(nb).without(v))
        .collect();
    let mut facets = Vec::new();
    bron_kerbosch(&comp, VertexSet::EMPTY, all, VertexSet::EMPTY, &mut facets);
    Ok(Complex::from_maximal(n, facets))
}

fn bron_kerbosch(
    comp: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<Face>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(x)
        .iter()
        .max_by_key(|&u| p.intersection(comp[u]).len())
        .expect("p is nonempty");
    for v in p.difference(comp[pivot]) {
        bron_kerbosch(
            comp,
            r.with(v),
            p.intersection(comp[v]),
            x.intersection(comp[v]),
            out,
        );
        p = p.without(v);
        x = x.with(v);
    }
}

/// Independence number `α(G)`, the largest facet size of `Ind(G)`.
pub fn alpha(g: &Graph) -> Result<usize> {
    let adj = g.adjacency()?;
    Ok(max_independent(&adj, VertexSet::full(g.vertex_count())))
}

fn max_independent(adj: &[VertexSet], p: VertexSet) -> usize {
    if p.is_empty() {
        return 0;
    }
    let degree = |v: usize| adj[v].intersection(p).len();
    let (low, low_deg) = p.iter().map(|v| (v, degree(v))).min_by_key(|&(_, d)| d).unwrap();
    // a vertex of degree at most one lies in some maximum independent set
    if low_deg <= 1 {
        return 1 + max_independent(adj, p.without(low).difference(adj[low]));
    }
    let high = p.iter().max_by_key(|&v| degree(v)).unwrap();
    let without = max_independent(adj, p.without(high));
    let with = 1 + max_independent(adj, p.without(high).difference(adj[high]));
    without.max(with)
}
