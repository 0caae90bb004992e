//! Labeled barycentric subdivision.
//!
//! The first derived complex of K has one vertex per simplex of K (its
//! barycentre) and one k-simplex per strictly increasing face chain
//! A_0 < A_1 < ... < A_k of K. Subdivision vertices are freshly numbered
//! 0..N-1 in global-id order of the simplexes they subdivide, so a chain is
//! automatically a strictly increasing vertex tuple. Provenance is kept in
//! the origin maps rather than encoded in labels.

use std::collections::BTreeSet;

use crate::error::{Result, TopologyError};
use crate::simplicial::{SimplicialComplex, Subcomplex, Vertex};

/// The first derived complex together with the barycentre provenance maps.
#[derive(Clone, Debug)]
pub struct LabeledSubdivision {
    /// K^(1). Vertex labels are 0..N-1 where N is the simplex count of K.
    pub complex: SimplicialComplex,
    /// Global id in K of the simplex each subdivision vertex is the
    /// barycentre of, indexed by vertex label.
    origin: Vec<usize>,
    /// Dimension of that simplex.
    origin_dim: Vec<usize>,
}

impl LabeledSubdivision {
    /// Builds the labeled subdivision of a nonempty complex.
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if k.is_empty() {
            return Err(TopologyError::EmptyComplex);
        }
        let n = k.simplex_count();
        let mut closed: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        // chains_ending[id] lists every face chain whose maximum is id.
        let mut chains_ending: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); n];
        for id in 0..n {
            let mut chains = vec![vec![id as Vertex]];
            for fid in proper_faces(k, id) {
                for c in &chains_ending[fid] {
                    let mut longer = c.clone();
                    longer.push(id as Vertex);
                    chains.push(longer);
                }
            }
            for c in &chains {
                closed.insert(c.clone());
            }
            chains_ending[id] = chains;
        }
        let complex = SimplicialComplex::from_closed_set(closed);
        let origin: Vec<usize> = (0..n).collect();
        let origin_dim: Vec<usize> = (0..n).map(|id| k.dim_of(id)).collect();
        Ok(LabeledSubdivision { complex, origin, origin_dim })
    }

    /// The K-simplex id whose barycentre is subdivision vertex `v`.
    pub fn vertex_origin(&self, v: Vertex) -> usize {
        self.origin[v as usize]
    }

    /// Dimension of the simplex of K that `v` subdivides.
    pub fn vertex_dim(&self, v: Vertex) -> usize {
        self.origin_dim[v as usize]
    }

    /// Mask of the full subcomplex on barycentres of the given dimensions:
    /// simplexes of K^(1) all of whose vertices subdivide simplexes with
    /// dimension in `dims`.
    pub fn full_subcomplex_mask(&self, dims: &BTreeSet<usize>) -> Subcomplex {
        let mut mask = Subcomplex::empty(&self.complex);
        for id in 0..self.complex.simplex_count() {
            let t = self.complex.simplex(id);
            if t.iter().all(|&v| dims.contains(&self.vertex_dim(v))) {
                mask.insert(id);
            }
        }
        mask
    }

    /// Materialized form of [`Self::full_subcomplex_mask`].
    pub fn full_subcomplex(&self, dims: &BTreeSet<usize>) -> SimplicialComplex {
        self.full_subcomplex_mask(dims).materialize(&self.complex)
    }

    /// The subdivision of a subcomplex of K, as a mask on K^(1): all chains
    /// whose members lie in the given mask.
    pub fn subdivide_mask(&self, sub_of_base: &Subcomplex) -> Subcomplex {
        let mut mask = Subcomplex::empty(&self.complex);
        for id in 0..self.complex.simplex_count() {
            let t = self.complex.simplex(id);
            if t.iter().all(|&v| sub_of_base.contains(self.vertex_origin(v))) {
                mask.insert(id);
            }
        }
        mask
    }
}

/// The labeled barycentric subdivision of a nonempty complex.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<LabeledSubdivision> {
    LabeledSubdivision::new(k)
}

/// Number of simplexes the barycentric subdivision would have, i.e. the
/// number of nonempty face chains, computed without building it.
pub fn flag_count(k: &SimplicialComplex) -> usize {
    let n = k.simplex_count();
    // count[id] = number of chains with maximum id.
    let mut count = vec![0usize; n];
    let mut total = 0usize;
    for id in 0..n {
        let mut c = 1usize;
        for fid in proper_faces(k, id) {
            c += count[fid];
        }
        count[id] = c;
        total += c;
    }
    total
}

/// The r-fold iterated barycentric subdivision as a plain complex, guarded
/// by an optional simplex-count limit on every stage built.
pub fn iterated_subdivision(
    k: &SimplicialComplex,
    r: usize,
    limit: Option<usize>,
) -> Result<SimplicialComplex> {
    let mut current = k.clone();
    for _ in 0..r {
        if current.is_empty() {
            return Err(TopologyError::EmptyComplex);
        }
        let next_count = flag_count(&current);
        if let Some(limit) = limit {
            if next_count > limit {
                return Err(TopologyError::SizeLimit { count: next_count, limit });
            }
        }
        current = LabeledSubdivision::new(&current)?.complex;
    }
    Ok(current)
}

fn proper_faces(k: &SimplicialComplex, id: usize) -> Vec<usize> {
    let t = k.simplex(id);
    let m = t.len();
    let mut out = Vec::new();
    let mut sub = Vec::with_capacity(m);
    for bits in 1u32..((1 << m) - 1) {
        sub.clear();
        for (i, &v) in t.iter().enumerate() {
            if bits >> i & 1 == 1 {
                sub.push(v);
            }
        }
        out.push(k.id_of(&sub).expect("face-closed"));
    }
    out
}
