//! Reduced simplicial homology over the integers and the Cohen–Macaulay test
//! by Reisner's criterion over the rationals.

mod smith;

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::time::Instant;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::budget::{Budget, SearchStats};
use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

pub const DEFAULT_FACE_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    /// Largest number of faces a single complex may enumerate.
    pub face_cap: usize,
    pub budget: Budget,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            face_cap: DEFAULT_FACE_CAP,
            budget: Budget::unlimited(),
        }
    }
}

/// `∂_i : C_i → C_{i-1}` in column-sparse form.
///
/// Columns are the `i`-faces and rows the `(i-1)`-faces, each layer in
/// ascending bit order; removing the `k`-th smallest vertex contributes
/// `(-1)^k`. The augmentation `∂_0` maps every vertex to the empty face.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub dim: isize,
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Whether `self ∘ upper` vanishes, i.e. `∂_{i} ∘ ∂_{i+1} = 0`.
    pub fn composes_to_zero(&self, upper: &BoundaryMatrix) -> bool {
        upper.columns.iter().all(|col| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(mid, a) in col {
                for &(row, b) in &self.columns[mid] {
                    *acc.entry(row).or_default() += a as i64 * b as i64;
                }
            }
            acc.values().all(|&v| v == 0)
        })
    }
}

/// Boundary maps `∂_0, …, ∂_d` of a nonvoid complex.
pub fn boundary_matrices(d: &Complex, face_cap: usize) -> Result<Vec<BoundaryMatrix>> {
    if d.is_void() {
        return Err(Error::VoidComplex);
    }
    let layers = d.faces_by_size(face_cap)?;
    Ok(boundaries_of(&layers))
}

fn boundaries_of(layers: &[Vec<Face>]) -> Vec<BoundaryMatrix> {
    (1..layers.len())
        .map(|size| {
            let lower = &layers[size - 1];
            let columns = layers[size]
                .iter()
                .map(|&face| {
                    let mut col: Vec<(usize, i8)> = face
                        .iter()
                        .enumerate()
                        .map(|(k, v)| {
                            let row = lower
                                .binary_search(&face.without(v))
                                .expect("faces are closed under removal");
                            (row, if k % 2 == 0 { 1 } else { -1 })
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            BoundaryMatrix {
                dim: size as isize - 1,
                rows: lower.len(),
                columns,
            }
        })
        .collect()
}

/// Reduced Betti numbers and torsion coefficients in dimensions
/// `-1, 0, …, dim Δ`, together with the face counts they were computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    f_vector: Vec<usize>,
    betti: Vec<u64>,
    torsion: Vec<Vec<u64>>,
}

impl HomologyProfile {
    pub fn dimension(&self) -> isize {
        self.betti.len() as isize - 2
    }

    /// `b̃_i`; zero outside `-1…dim`.
    pub fn betti(&self, i: isize) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.betti.get(k).copied())
            .unwrap_or(0)
    }

    /// Invariant factors of the torsion of `H̃_i`.
    pub fn torsion(&self, i: isize) -> &[u64] {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.torsion.get(k))
            .map_or(&[], Vec::as_slice)
    }

    /// `f_{-1}, f_0, …, f_d`.
    pub fn f_vector(&self) -> &[usize] {
        &self.f_vector
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// `Σ (-1)^i f_i = Σ (-1)^i b̃_i` over `i ≥ -1`.
    pub fn satisfies_euler_relation(&self) -> bool {
        let alternating = |v: &mut dyn Iterator<Item = i64>| {
            v.enumerate()
                .map(|(k, x)| if k % 2 == 0 { -x } else { x })
                .sum::<i64>()
        };
        alternating(&mut self.f_vector.iter().map(|&f| f as i64))
            == alternating(&mut self.betti.iter().map(|&b| b as i64))
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct ByDim<'a, T>(&'a [T]);
        impl<T: Serialize> Serialize for ByDim<'_, T> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, v) in self.0.iter().enumerate() {
                    map.serialize_entry(&(k as isize - 1).to_string(), v)?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("betti", &ByDim(&self.betti))?;
        map.serialize_entry("torsion", &ByDim(&self.torsion))?;
        map.end()
    }
}

/// Reduced homology of a nonvoid complex from integer diagonal forms of all
/// boundary maps.
pub fn reduced_homology(d: &Complex, opts: &HomologyOptions) -> Result<HomologyProfile> {
    if d.is_void() {
        return Err(Error::VoidComplex);
    }
    let layers = d.faces_by_size(opts.face_cap)?;
    profile_of(&layers, opts.budget)
}

fn profile_of(layers: &[Vec<Face>], budget: Budget) -> Result<HomologyProfile> {
    let started = Instant::now();
    let f_vector: Vec<usize> = layers.iter().map(Vec::len).collect();
    // ranks[k] and torsion[k] belong to the map out of the size-k layer
    let mut ranks = vec![0usize; layers.len() + 1];
    let mut torsion_of_map = vec![Vec::new(); layers.len() + 1];
    for (k, boundary) in boundaries_of(layers).into_iter().enumerate() {
        if budget.is_exhausted() {
            return Err(Error::Timeout(SearchStats {
                nodes: k as u64,
                elapsed: started.elapsed(),
                ..SearchStats::default()
            }));
        }
        let diag = smith::diagonal(boundary.rows, &boundary.columns);
        ranks[k + 1] = diag.len();
        torsion_of_map[k + 1] = smith::invariant_factors(&diag)
            .iter()
            .map(|v| smith::to_u64(v).ok_or(Error::TorsionOverflow))
            .collect::<Result<Vec<u64>>>()?;
    }
    let betti = (0..layers.len())
        .map(|k| (f_vector[k] - ranks[k] - ranks[k + 1]) as u64)
        .collect();
    // torsion of H̃ at size k comes from the image of the map out of size k+1
    let torsion = (0..layers.len())
        .map(|k| std::mem::take(&mut torsion_of_map[k + 1]))
        .collect();
    Ok(HomologyProfile {
        f_vector,
        betti,
        torsion,
    })
}

/// Reisner's criterion over the rationals: `Δ` is nonvoid and for every face
/// `F` (including `∅`) the reduced rational homology of `link(F)` vanishes
/// below `dim link(F)`. Non-pure complexes fail.
///
/// Faces are visited from the largest down; identical links are decided
/// once.
pub fn is_cohen_macaulay(d: &Complex, opts: &HomologyOptions) -> Result<bool> {
    Ok(cohen_macaulay_obstruction(d, opts)?.is_none() && !d.is_void() && d.is_pure())
}

/// A face whose link has nonvanishing rational homology below its top
/// dimension, if any. Returns `None` for void and non-pure complexes, which
/// [`is_cohen_macaulay`] rejects on their own.
pub fn cohen_macaulay_obstruction(d: &Complex, opts: &HomologyOptions) -> Result<Option<Face>> {
    if d.is_void() || !d.is_pure() {
        return Ok(None);
    }
    let started = Instant::now();
    let layers = d.faces_by_size(opts.face_cap)?;
    let mut decided: HashMap<Vec<Face>, bool> = HashMap::new();
    let mut visited = 0u64;
    for layer in layers.iter().rev() {
        for &face in layer {
            visited += 1;
            if opts.budget.is_exhausted() {
                return Err(Error::Timeout(SearchStats {
                    nodes: visited,
                    elapsed: started.elapsed(),
                    ..SearchStats::default()
                }));
            }
            let link = d.link(face)?;
            let dim = link.dimension().expect("links of faces are nonvoid");
            // only b̃_{-1} lies below a 0-dimensional link, and it vanishes
            if dim <= 0 {
                continue;
            }
            let ok = match decided.get(link.facets()) {
                Some(&ok) => ok,
                None => {
                    let profile = reduced_homology(&link, opts)?;
                    let ok = (-1..dim).all(|i| profile.betti(i) == 0);
                    decided.insert(link.facets().to_vec(), ok);
                    ok
                }
            };
            if !ok {
                return Ok(Some(face));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::graph::{CirculantSpec, Graph};

    fn ind(spec: &str) -> Complex {
        independence_complex(&spec.parse::<CirculantSpec>().unwrap().graph()).unwrap()
    }

    fn opts() -> HomologyOptions {
        HomologyOptions::default()
    }

    #[test]
    fn simplex_is_acyclic() {
        for k in 1..=5 {
            let d = Complex::simplex(k, Face::full(k)).unwrap();
            let p = reduced_homology(&d, &opts()).unwrap();
            assert!((-1..=k as isize).all(|i| p.betti(i) == 0));
            assert!(p.is_torsion_free());
        }
    }

    #[test]
    fn two_points() {
        let p = reduced_homology(&independence_complex(&Graph::complete(2).unwrap()).unwrap(), &opts())
            .unwrap();
        assert_eq!((p.betti(-1), p.betti(0)), (0, 1));
    }

    #[test]
    fn five_cycle_is_a_circle() {
        let p = reduced_homology(&ind("C5(1)"), &opts()).unwrap();
        assert_eq!((p.betti(-1), p.betti(0), p.betti(1)), (0, 0, 1));
        assert!(p.satisfies_euler_relation());
    }

    #[test]
    fn empty_face_complex() {
        let p = reduced_homology(&Complex::empty_face(3), &opts()).unwrap();
        assert_eq!(p.betti(-1), 1);
        assert!(p.satisfies_euler_relation());
        assert!(matches!(
            reduced_homology(&Complex::void(3), &opts()),
            Err(Error::VoidComplex)
        ));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let d = ind("C9(1,3)");
        let maps = boundary_matrices(&d, DEFAULT_FACE_CAP).unwrap();
        for pair in maps.windows(2) {
            assert!(pair[0].composes_to_zero(&pair[1]));
        }
    }

    #[test]
    fn profile_json() {
        let p = reduced_homology(&ind("C5(1)"), &opts()).unwrap();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"betti":{"-1":0,"0":0,"1":1},"torsion":{"-1":[],"0":[],"1":[]}}"#
        );
    }

    #[test]
    fn face_cap_is_enforced() {
        let d = Complex::simplex(20, Face::full(20)).unwrap();
        let capped = HomologyOptions {
            face_cap: 1000,
            ..opts()
        };
        assert!(matches!(
            reduced_homology(&d, &capped),
            Err(Error::FaceLimit { cap: 1000 })
        ));
    }

    #[test]
    fn cohen_macaulay_examples() {
        let simplex = Complex::simplex(4, Face::full(4)).unwrap();
        assert!(is_cohen_macaulay(&simplex, &opts()).unwrap());
        let p3 = independence_complex(&Graph::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert!(!is_cohen_macaulay(&p3, &opts()).unwrap());
        assert!(is_cohen_macaulay(&ind("C5(1)"), &opts()).unwrap());
        // two disjoint edges: disconnected, b̃_0 = 1 below dimension 1
        assert!(!is_cohen_macaulay(&ind("C4(1)"), &opts()).unwrap());
        assert!(!is_cohen_macaulay(&Complex::void(2), &opts()).unwrap());
        assert!(is_cohen_macaulay(&Complex::empty_face(2), &opts()).unwrap());
    }
}
