//! Pure shellability: exhaustive backtracking over facet orders, and an
//! independent verifier for the resulting certificates.
//!
//! An order `F_1,…,F_s` of the facets is a shelling when for all `j < i`
//! there are `x ∈ F_i \ F_j` and `k < i` with `F_i \ F_k = {x}`. Writing
//! `R(F_i)` for the vertices `x` with `F_i \ F_k = {x}` for some earlier
//! `F_k`, the condition reads: `R(F_i) ⊄ F_j` for every earlier `F_j`.
//! Whether a facet may come next depends only on the *set* of facets already
//! placed, which lets the search remember dead prefixes by their set.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::budget::{CheckOutcome, Counters, SearchOptions, Verdict};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A facet order, as indices into [`Complex::facets`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub order: Vec<usize>,
}

/// Checks the shelling condition directly on the ordered facets.
///
/// Returns `Ok(false)` for a non-pure complex and an error when `order` is
/// not a permutation of the facet indices.
pub fn verify_shelling(d: &Complex, cert: &ShellingCertificate) -> Result<bool> {
    let s = d.facets().len();
    if cert.order.len() != s {
        return Err(Error::MalformedCertificate(format!(
            "order has {} entries for {s} facets",
            cert.order.len()
        )));
    }
    let mut seen = vec![false; s];
    for &i in &cert.order {
        if i >= s || std::mem::replace(&mut seen[i], true) {
            return Err(Error::MalformedCertificate(format!(
                "order is not a permutation of 0..{s}"
            )));
        }
    }
    if !d.is_pure() {
        return Ok(false);
    }
    let ordered: Vec<Face> = cert.order.iter().map(|&i| d.facets()[i]).collect();
    for (i, &fi) in ordered.iter().enumerate().skip(1) {
        // every x with {x} = F_i \ F_k for some k < i
        let witnesses = ordered[..i]
            .iter()
            .map(|&fk| fi.difference(fk))
            .filter(|diff| diff.len() == 1)
            .fold(VertexSet::EMPTY, VertexSet::union);
        if ordered[..i]
            .iter()
            .any(|&fj| fi.difference(fj).intersection(witnesses).is_empty())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides shellability of a pure complex.
///
/// Facets are seeded in canonical order; at each step the legal next facets
/// are tried most-attached first (largest `R(F)`, then canonical index).
/// A disconnected facet-ridge graph is rejected before searching, since
/// every shelling prefix is ridge-connected.
pub fn shelling(d: &Complex, opts: &SearchOptions) -> Result<CheckOutcome<ShellingCertificate>> {
    if !d.is_pure() {
        return Err(Error::NotPure);
    }
    let counters = Counters::new(opts.budget);
    let facets = d.facets();
    let s = facets.len();
    if s <= 1 {
        return Ok(CheckOutcome {
            verdict: Verdict::Yes(ShellingCertificate {
                order: (0..s).collect(),
            }),
            stats: counters.snapshot(),
        });
    }
    let ridges = ridge_graph(facets);
    if !is_connected(&ridges) {
        counters.visit()?;
        return Ok(CheckOutcome {
            verdict: Verdict::No,
            stats: counters.snapshot(),
        });
    }
    let mut search = Search::new(facets, ridges, &counters);
    let verdict = if search.extend()? {
        Verdict::Yes(ShellingCertificate {
            order: search.order,
        })
    } else {
        Verdict::No
    };
    Ok(CheckOutcome {
        verdict,
        stats: counters.snapshot(),
    })
}

/// For each facet `F_i`, the facets `F_k` meeting it in a ridge together with
/// the vertex `x` such that `F_k \ F_i = {x}`.
fn ridge_graph(facets: &[Face]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); facets.len()];
    for i in 0..facets.len() {
        for k in i + 1..facets.len() {
            let a = facets[i].difference(facets[k]);
            if a.len() == 1 {
                let b = facets[k].difference(facets[i]);
                adj[i].push((k, b.first().unwrap()));
                adj[k].push((i, a.first().unwrap()));
            }
        }
    }
    adj
}

fn is_connected(adj: &[Vec<(usize, usize)>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for &(k, _) in &adj[i] {
            if !seen[k] {
                seen[k] = true;
                count += 1;
                stack.push(k);
            }
        }
    }
    count == adj.len()
}

struct Search<'a> {
    facets: &'a [Face],
    ridges: Vec<Vec<(usize, usize)>>,
    counters: &'a Counters,
    order: Vec<usize>,
    placed: Vec<u64>,
    /// `R(F)` for every facet against the current prefix.
    attached: Vec<VertexSet>,
    undo: Vec<(usize, VertexSet)>,
    dead: HashSet<Vec<u64>>,
}

impl<'a> Search<'a> {
    fn new(facets: &'a [Face], ridges: Vec<Vec<(usize, usize)>>, counters: &'a Counters) -> Self {
        let s = facets.len();
        Search {
            facets,
            ridges,
            counters,
            order: Vec::with_capacity(s),
            placed: vec![0; s.div_ceil(64)],
            attached: vec![VertexSet::EMPTY; s],
            undo: Vec::new(),
            dead: HashSet::new(),
        }
    }

    fn is_placed(&self, i: usize) -> bool {
        self.placed[i / 64] >> (i % 64) & 1 == 1
    }

    fn legal(&self, i: usize) -> bool {
        let r = self.attached[i];
        !r.is_empty() && self.order.iter().all(|&j| !r.is_subset(self.facets[j]))
    }

    fn place(&mut self, i: usize) -> usize {
        let mark = self.undo.len();
        self.placed[i / 64] |= 1 << (i % 64);
        self.order.push(i);
        for idx in 0..self.ridges[i].len() {
            let (k, x) = self.ridges[i][idx];
            if !self.is_placed(k) {
                self.undo.push((k, self.attached[k]));
                self.attached[k] = self.attached[k].with(x);
            }
        }
        mark
    }

    fn unplace(&mut self, i: usize, mark: usize) {
        while self.undo.len() > mark {
            let (k, old) = self.undo.pop().unwrap();
            self.attached[k] = old;
        }
        self.order.pop();
        self.placed[i / 64] &= !(1 << (i % 64));
    }

    fn extend(&mut self) -> Result<bool> {
        let s = self.facets.len();
        if self.order.len() == s {
            return Ok(true);
        }
        self.counters.visit()?;
        if self.dead.contains(&self.placed) {
            self.counters.memo_hit();
            return Ok(false);
        }
        let mut candidates: Vec<usize> = if self.order.is_empty() {
            (0..s).collect()
        } else {
            (0..s).filter(|&i| !self.is_placed(i) && self.legal(i)).collect()
        };
        candidates.sort_by_key(|&i| (std::cmp::Reverse(self.attached[i].len()), i));
        for i in candidates {
            let mark = self.place(i);
            if self.extend()? {
                return Ok(true);
            }
            self.unplace(i, mark);
        }
        self.dead.insert(self.placed.clone());
        Ok(false)
    }
}
