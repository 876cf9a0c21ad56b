//! Vertex decomposability of pure complexes.
//!
//! A pure complex is vertex decomposable when it is a simplex, or some
//! vertex `x` has `del(x)` pure of the same dimension and `link(x)` pure,
//! both vertex decomposable. The void complex and `{∅}` count as simplices.
//!
//! The search memoizes on the exact labeled facet family and returns a
//! [`ShedTree`] that [`verify_shed_tree`] rechecks with the generic
//! link/deletion operations of [`Complex`].

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{CheckOutcome, Counters, SearchOptions, Verdict};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Witness of vertex decomposability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "TreeJson", into = "TreeJson")]
pub enum ShedTree {
    Simplex,
    Void,
    EmptyFace,
    Node {
        shed: usize,
        del: Box<ShedTree>,
        link: Box<ShedTree>,
    },
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum TreeJson {
    Leaf {
        leaf: LeafKind,
    },
    Node {
        shed: usize,
        del: Box<ShedTree>,
        link: Box<ShedTree>,
    },
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum LeafKind {
    Simplex,
    Void,
    EmptyFace,
}

impl From<TreeJson> for ShedTree {
    fn from(raw: TreeJson) -> Self {
        match raw {
            TreeJson::Leaf { leaf } => match leaf {
                LeafKind::Simplex => ShedTree::Simplex,
                LeafKind::Void => ShedTree::Void,
                LeafKind::EmptyFace => ShedTree::EmptyFace,
            },
            TreeJson::Node { shed, del, link } => ShedTree::Node { shed, del, link },
        }
    }
}

impl From<ShedTree> for TreeJson {
    fn from(t: ShedTree) -> Self {
        match t {
            ShedTree::Simplex => TreeJson::Leaf {
                leaf: LeafKind::Simplex,
            },
            ShedTree::Void => TreeJson::Leaf {
                leaf: LeafKind::Void,
            },
            ShedTree::EmptyFace => TreeJson::Leaf {
                leaf: LeafKind::EmptyFace,
            },
            ShedTree::Node { shed, del, link } => TreeJson::Node { shed, del, link },
        }
    }
}

impl ShedTree {
    /// Relabels every shedding vertex by `v ↦ (v + shift) mod n`.
    pub fn rotate(self, n: usize, shift: usize) -> ShedTree {
        match self {
            ShedTree::Node { shed, del, link } => ShedTree::Node {
                shed: (shed + shift) % n,
                del: Box::new(del.rotate(n, shift)),
                link: Box::new(link.rotate(n, shift)),
            },
            leaf => leaf,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ShedTree::Node { del, link, .. } => 1 + del.depth().max(link.depth()),
            _ => 0,
        }
    }
}

/// Replays a shedding tree against `d`. Malformed trees are rejected.
pub fn verify_shed_tree(d: &Complex, t: &ShedTree) -> bool {
    match t {
        ShedTree::Void => d.is_void(),
        ShedTree::EmptyFace => d.facets() == [Face::EMPTY],
        ShedTree::Simplex => d.facets().len() == 1 && !d.facets()[0].is_empty(),
        ShedTree::Node { shed, del, link } => {
            let x = *shed;
            if x >= d.vertex_count() || !d.is_pure() || !d.vertices().contains(x) {
                return false;
            }
            let (Ok(deletion), Ok(link_x)) = (d.deletion(x), d.link(Face::singleton(x))) else {
                return false;
            };
            deletion.is_pure()
                && deletion.dimension() == d.dimension()
                && link_x.is_pure()
                && verify_shed_tree(&deletion, del)
                && verify_shed_tree(&link_x, link)
        }
    }
}

/// Decides vertex decomposability of a pure complex by exhaustive search.
///
/// Candidate shedding vertices are tried in ascending label order. With
/// `opts.threads > 1` the top-level candidates run on a worker pool sharing
/// one memo table; the verdict does not depend on the schedule.
pub fn vertex_decomposition(d: &Complex, opts: &SearchOptions) -> Result<CheckOutcome<ShedTree>> {
    if !d.is_pure() {
        return Err(Error::NotPure);
    }
    let search = Search {
        n: d.vertex_count(),
        counters: Counters::new(opts.budget),
        memo: DashMap::new(),
        symmetry: opts.rotation_symmetry && d.vertex_count() > 0,
    };
    let tree = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
        pool.install(|| search.decompose(d.facets(), true))?
    } else {
        search.decompose(d.facets(), false)?
    };
    Ok(CheckOutcome {
        verdict: tree.map_or(Verdict::No, Verdict::Yes),
        stats: search.counters.snapshot(),
    })
}

struct Search {
    n: usize,
    counters: Counters,
    /// Keyed by the canonical facet family; trees are stored in the labels
    /// of the key.
    memo: DashMap<Vec<Face>, Option<ShedTree>>,
    symmetry: bool,
}

impl Search {
    fn decompose(&self, facets: &[Face], parallel: bool) -> Result<Option<ShedTree>> {
        match facets {
            [] => return Ok(Some(ShedTree::Void)),
            [f] if f.is_empty() => return Ok(Some(ShedTree::EmptyFace)),
            [_] => return Ok(Some(ShedTree::Simplex)),
            _ => {}
        }
        self.counters.visit()?;
        let (key, shift) = self.key(facets);
        if let Some(hit) = self.memo.get(&key) {
            self.counters.memo_hit();
            let back = (self.n - shift) % self.n.max(1);
            return Ok(hit.clone().map(|t| t.rotate(self.n, back)));
        }
        let found = self.search(facets, parallel)?;
        self.memo
            .insert(key, found.clone().map(|t| t.rotate(self.n, shift)));
        Ok(found)
    }

    fn search(&self, facets: &[Face], parallel: bool) -> Result<Option<ShedTree>> {
        let union = facets.iter().fold(Face::EMPTY, |a, &f| a.union(f));
        let common = facets.iter().fold(union, |a, &f| a.intersection(f));
        for _ in common.iter() {
            self.counters.cone_point();
        }
        let stabilizer = if self.symmetry {
            self.stabilizer(facets)
        } else {
            Vec::new()
        };
        let candidates: Vec<usize> = union
            .difference(common)
            .iter()
            .filter(|&x| {
                // an equivalent smaller vertex has already been tried
                !stabilizer
                    .iter()
                    .any(|&r| (x + self.n - r) % self.n < x)
            })
            .collect();
        if parallel {
            candidates
                .par_iter()
                .map(|&x| self.try_shed(facets, x))
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                })
                .unwrap_or(Ok(None))
        } else {
            for x in candidates {
                if let Some(t) = self.try_shed(facets, x)? {
                    return Ok(Some(t));
                }
            }
            Ok(None)
        }
    }

    fn try_shed(&self, facets: &[Face], x: usize) -> Result<Option<ShedTree>> {
        let (with_x, without_x): (Vec<Face>, Vec<Face>) =
            facets.iter().partition(|f| f.contains(x));
        // del(x) keeps the dimension and stays pure exactly when every
        // F \ {x} lies in a facet avoiding x; then its facets are `without_x`
        let shedding = with_x
            .iter()
            .all(|f| without_x.iter().any(|&g| f.without(x).is_subset(g)));
        if !shedding {
            return Ok(None);
        }
        // removing a common vertex preserves the canonical order
        let link: Vec<Face> = with_x.iter().map(|f| f.without(x)).collect();
        let Some(del_tree) = self.decompose(&without_x, false)? else {
            return Ok(None);
        };
        let Some(link_tree) = self.decompose(&link, false)? else {
            return Ok(None);
        };
        Ok(Some(ShedTree::Node {
            shed: x,
            del: Box::new(del_tree),
            link: Box::new(link_tree),
        }))
    }

    fn rotated(&self, facets: &[Face], shift: usize) -> Vec<Face> {
        let mut out: Vec<Face> = facets.iter().map(|f| f.rotate(self.n, shift)).collect();
        out.sort_unstable_by(VertexSet::canonical_cmp);
        out
    }

    /// Memo key and the rotation taking `facets` onto it.
    fn key(&self, facets: &[Face]) -> (Vec<Face>, usize) {
        if !self.symmetry {
            return (facets.to_vec(), 0);
        }
        (0..self.n)
            .map(|r| (self.rotated(facets, r), r))
            .min()
            .expect("n >= 1")
    }

    fn stabilizer(&self, facets: &[Face]) -> Vec<usize> {
        (1..self.n)
            .filter(|&r| self.rotated(facets, r) == facets)
            .collect()
    }
}
