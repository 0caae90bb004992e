//! Finite abstract simplicial complexes.
//!
//! A complex stores, for each dimension, a lexicographically sorted list of
//! strictly increasing vertex tuples, closed under taking faces. Every
//! simplex has a stable *global id*: simplexes are numbered by dimension
//! first, then lexicographically within a dimension. All downstream
//! computations (boundary matrices, subdivisions, subcomplex masks) refer to
//! simplexes by these ids, which makes outputs deterministic.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Result, TopologyError};

/// Vertex labels are arbitrary integers.
pub type Vertex = i64;

/// A finite abstract simplicial complex, closed under faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    /// `by_dim[k]` is the sorted list of k-simplexes, each a strictly
    /// increasing vertex tuple of length k+1.
    by_dim: Vec<Vec<Vec<Vertex>>>,
    /// `offsets[k]` is the global id of the first k-simplex.
    offsets: Vec<usize>,
    total: usize,
    /// Facet ids per simplex, ordered by dropped-vertex position, so the
    /// boundary of column `s` has sign (-1)^i at `facets[s][i]`.
    facets: Vec<Vec<usize>>,
    /// All cofaces (including the simplex itself), built on first use.
    stars: OnceLock<Vec<Vec<usize>>>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(dim {}, counts {:?})", self.dim(), self.counts_by_dim())
    }
}

fn is_strictly_increasing(t: &[Vertex]) -> bool {
    t.windows(2).all(|w| w[0] < w[1])
}

impl SimplicialComplex {
    /// The empty complex (dimension -1).
    pub fn empty() -> Self {
        Self::from_closed_set(BTreeSet::new())
    }

    /// Builds the face closure of the given maximal simplexes.
    ///
    /// Tuples may be unsorted; a repeated vertex inside one tuple is an
    /// error.
    pub fn from_maximal<I, T>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Vertex]>,
    {
        let mut closed: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for tuple in maximal {
            let mut t = tuple.as_ref().to_vec();
            let orig = t.clone();
            t.sort_unstable();
            if !is_strictly_increasing(&t) || t.is_empty() {
                return Err(TopologyError::MalformedSimplex(orig));
            }
            insert_with_faces(&mut closed, &t);
        }
        Ok(Self::from_closed_set(closed))
    }

    /// Builds a complex from a face-closed set of sorted tuples.
    pub(crate) fn from_closed_set(closed: BTreeSet<Vec<Vertex>>) -> Self {
        let max_dim = closed.iter().map(|t| t.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); max_dim];
        for t in closed {
            let k = t.len() - 1;
            by_dim[k].push(t);
        }
        // BTreeSet iteration is sorted by tuple, which within a fixed length
        // is lexicographic order.
        let mut offsets = Vec::with_capacity(by_dim.len());
        let mut total = 0;
        for list in &by_dim {
            offsets.push(total);
            total += list.len();
        }
        let mut cx = SimplicialComplex { by_dim, offsets, total, facets: Vec::new(), stars: OnceLock::new() };
        cx.build_facets();
        cx
    }

    fn build_facets(&mut self) {
        let mut facets = vec![Vec::new(); self.total];
        for k in 1..self.by_dim.len() {
            for (idx, t) in self.by_dim[k].iter().enumerate() {
                let id = self.offsets[k] + idx;
                let mut fs = Vec::with_capacity(t.len());
                let mut face = t.clone();
                for drop in 0..t.len() {
                    face.remove(drop);
                    let fid = self.id_of(&face).expect("complex is face-closed");
                    fs.push(fid);
                    face.insert(drop, t[drop]);
                }
                facets[id] = fs;
            }
        }
        self.facets = facets;
    }

    /// Dimension of the complex; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn simplex_count(&self) -> usize {
        self.total
    }

    /// Number of k-simplexes per dimension k.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        self.by_dim.iter().map(|l| l.len()).collect()
    }

    /// The sorted list of k-simplexes; empty slice when out of range.
    pub fn simplexes(&self, k: usize) -> &[Vec<Vertex>] {
        self.by_dim.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.simplexes(0).iter().map(|t| t[0])
    }

    /// Global id of a sorted tuple, if present.
    pub fn id_of(&self, tuple: &[Vertex]) -> Option<usize> {
        if tuple.is_empty() {
            return None;
        }
        let k = tuple.len() - 1;
        let list = self.by_dim.get(k)?;
        list.binary_search_by(|probe| probe.as_slice().cmp(tuple))
            .ok()
            .map(|idx| self.offsets[k] + idx)
    }

    /// Resolves an arbitrary (possibly unsorted) tuple to its id.
    pub fn resolve(&self, tuple: &[Vertex]) -> Result<usize> {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        if !is_strictly_increasing(&t) || t.is_empty() {
            return Err(TopologyError::MalformedSimplex(tuple.to_vec()));
        }
        self.id_of(&t).ok_or_else(|| TopologyError::MissingSimplex(tuple.to_vec()))
    }

    pub fn contains(&self, tuple: &[Vertex]) -> bool {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        self.id_of(&t).is_some()
    }

    /// The vertex tuple of a global id.
    pub fn simplex(&self, id: usize) -> &[Vertex] {
        let k = self.dim_of(id);
        &self.by_dim[k][id - self.offsets[k]]
    }

    /// Dimension of the simplex with the given id.
    pub fn dim_of(&self, id: usize) -> usize {
        debug_assert!(id < self.total);
        match self.offsets.binary_search(&id) {
            Ok(k) => k,
            Err(k) => k - 1,
        }
    }

    /// Global ids of all k-simplexes.
    pub fn ids_of_dim(&self, k: usize) -> std::ops::Range<usize> {
        if k >= self.by_dim.len() {
            return 0..0;
        }
        let start = self.offsets[k];
        start..start + self.by_dim[k].len()
    }

    /// Facet ids of `id`, ordered so that position i carries sign (-1)^i in
    /// the boundary.
    pub fn facets(&self, id: usize) -> &[usize] {
        &self.facets[id]
    }

    /// All cofaces of `id` (simplexes containing it), including `id` itself,
    /// in ascending id order.
    pub fn star(&self, id: usize) -> &[usize] {
        &self.stars()[id]
    }

    fn stars(&self) -> &Vec<Vec<usize>> {
        self.stars.get_or_init(|| {
            let mut stars = vec![Vec::new(); self.total];
            let mut sub = Vec::new();
            for id in 0..self.total {
                let t = self.simplex(id);
                // Enumerate every nonempty subset of t.
                let m = t.len();
                for bits in 1u32..(1 << m) {
                    sub.clear();
                    for (i, &v) in t.iter().enumerate() {
                        if bits >> i & 1 == 1 {
                            sub.push(v);
                        }
                    }
                    let fid = self.id_of(&sub).expect("face-closed");
                    stars[fid].push(id);
                }
            }
            stars
        })
    }

    /// True iff every simplex is a face of a top-dimensional simplex.
    pub fn is_principal(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(TopologyError::EmptyComplex);
        }
        let n = self.dim() as usize;
        for id in 0..self.total {
            if !self.star(id).iter().any(|&c| self.dim_of(c) == n) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First witness that the complex fails to be principal, if any.
    pub fn principality_witness(&self) -> Result<Option<Vec<Vertex>>> {
        if self.is_empty() {
            return Err(TopologyError::EmptyComplex);
        }
        let n = self.dim() as usize;
        for id in 0..self.total {
            if !self.star(id).iter().any(|&c| self.dim_of(c) == n) {
                return Ok(Some(self.simplex(id).to_vec()));
            }
        }
        Ok(None)
    }

    /// Errors unless the complex is principal.
    pub fn require_principal(&self) -> Result<()> {
        match self.principality_witness()? {
            None => Ok(()),
            Some(w) => Err(TopologyError::NotPrincipal { simplex: w, dim: self.dim() as usize }),
        }
    }

    /// Discards maximal simplexes below the top dimension. The result is the
    /// principal part: all faces of top-dimensional simplexes. This changes
    /// the complex and must be invoked explicitly by the caller.
    pub fn principalize(&self) -> SimplicialComplex {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.dim() as usize;
        let mut closed = BTreeSet::new();
        for t in self.simplexes(n) {
            insert_with_faces(&mut closed, t);
        }
        Self::from_closed_set(closed)
    }

    /// All simplexes of dimension <= j. Negative j yields the empty complex.
    pub fn skeleton(&self, j: isize) -> SimplicialComplex {
        if j < 0 {
            return SimplicialComplex::empty();
        }
        let j = (j as usize).min(self.by_dim.len().saturating_sub(1));
        let mut closed = BTreeSet::new();
        for k in 0..=j {
            for t in self.simplexes(k) {
                closed.insert(t.clone());
            }
        }
        Self::from_closed_set(closed)
    }

    /// The link of a simplex: all tau with tau disjoint from sigma and
    /// tau + sigma in the complex.
    pub fn link(&self, sigma: &[Vertex]) -> Result<SimplicialComplex> {
        let id = self.resolve(sigma)?;
        let s = self.simplex(id);
        let mut closed = BTreeSet::new();
        for &coface in self.star(id) {
            let t = self.simplex(coface);
            let tau: Vec<Vertex> = t.iter().copied().filter(|v| !s.contains(v)).collect();
            if !tau.is_empty() {
                closed.insert(tau);
            }
        }
        Ok(Self::from_closed_set(closed))
    }

    /// The complement of the open star: all simplexes that do not contain
    /// sigma. This is the simplicial model of removing a point interior to
    /// sigma.
    pub fn complement_of_open_star(&self, sigma: &[Vertex]) -> Result<SimplicialComplex> {
        let mask = self.complement_star_mask(sigma)?;
        Ok(mask.materialize(self))
    }

    /// Mask form of [`Self::complement_of_open_star`].
    pub fn complement_star_mask(&self, sigma: &[Vertex]) -> Result<Subcomplex> {
        let id = self.resolve(sigma)?;
        Ok(self.complement_star_mask_of(id))
    }

    /// Mask of the complement of the open star of the simplex with this id.
    pub fn complement_star_mask_of(&self, id: usize) -> Subcomplex {
        let mut mask = Subcomplex::full(self);
        for &c in self.star(id) {
            mask.remove(c);
        }
        mask
    }

    /// Resolves every simplex of `other` in `self`, returning the subcomplex
    /// mask, or an error naming the first simplex that is missing.
    pub fn resolve_subcomplex(&self, other: &SimplicialComplex) -> Result<Subcomplex> {
        let mut mask = Subcomplex::empty(self);
        for k in 0..other.by_dim.len() {
            for t in other.simplexes(k) {
                match self.id_of(t) {
                    Some(id) => mask.insert(id),
                    None => {
                        return Err(TopologyError::NotASubcomplex(format!(
                            "simplex {:?} is not in the ambient complex",
                            t
                        )))
                    }
                }
            }
        }
        Ok(mask)
    }

    /// Simplexes with no proper coface, in canonical order.
    pub fn maximal_simplexes(&self) -> Vec<Vec<Vertex>> {
        (0..self.total)
            .filter(|&id| self.star(id).len() == 1)
            .map(|id| self.simplex(id).to_vec())
            .collect()
    }

    /// Alternating sum of simplex counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts_by_dim()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

fn insert_with_faces(closed: &mut BTreeSet<Vec<Vertex>>, tuple: &[Vertex]) {
    let m = tuple.len();
    let mut sub = Vec::with_capacity(m);
    for bits in 1u32..(1 << m) {
        sub.clear();
        for (i, &v) in tuple.iter().enumerate() {
            if bits >> i & 1 == 1 {
                sub.push(v);
            }
        }
        if !closed.contains(&sub) {
            closed.insert(sub.clone());
        }
    }
}

/// A subcomplex of a fixed ambient complex, stored as a membership mask over
/// global ids. The mask is only meaningful together with the complex it was
/// built from; `len` guards against accidental mixing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subcomplex {
    bits: Vec<bool>,
    count: usize,
}

impl std::fmt::Debug for Subcomplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subcomplex({} of {})", self.count, self.bits.len())
    }
}

impl Subcomplex {
    pub fn empty(parent: &SimplicialComplex) -> Self {
        Subcomplex { bits: vec![false; parent.simplex_count()], count: 0 }
    }

    pub fn full(parent: &SimplicialComplex) -> Self {
        Subcomplex { bits: vec![true; parent.simplex_count()], count: parent.simplex_count() }
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(parent: &SimplicialComplex, ids: I) -> Self {
        let mut s = Self::empty(parent);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn contains(&self, id: usize) -> bool {
        self.bits[id]
    }

    pub fn insert(&mut self, id: usize) {
        if !self.bits[id] {
            self.bits[id] = true;
            self.count += 1;
        }
    }

    pub fn remove(&mut self, id: usize) {
        if self.bits[id] {
            self.bits[id] = false;
            self.count -= 1;
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        debug_assert_eq!(self.bits.len(), other.bits.len());
        self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        debug_assert_eq!(self.bits.len(), other.bits.len());
        let bits: Vec<bool> = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        let count = bits.iter().filter(|&&b| b).count();
        Subcomplex { bits, count }
    }

    pub fn minus(&self, other: &Subcomplex) -> Subcomplex {
        debug_assert_eq!(self.bits.len(), other.bits.len());
        let bits: Vec<bool> = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && !*b).collect();
        let count = bits.iter().filter(|&&b| b).count();
        Subcomplex { bits, count }
    }

    /// True iff every face of every member is a member.
    pub fn is_face_closed(&self, parent: &SimplicialComplex) -> bool {
        self.ids().all(|id| parent.facets(id).iter().all(|&f| self.contains(f)))
    }

    /// Dimension of the subcomplex; -1 when empty.
    pub fn dim(&self, parent: &SimplicialComplex) -> isize {
        self.ids().map(|id| parent.dim_of(id) as isize).max().unwrap_or(-1)
    }

    pub fn counts_by_dim(&self, parent: &SimplicialComplex) -> Vec<usize> {
        let mut counts = vec![0usize; (parent.dim().max(-1) + 1) as usize];
        for id in self.ids() {
            counts[parent.dim_of(id)] += 1;
        }
        counts
    }

    /// Builds a standalone complex with the same vertex labels.
    pub fn materialize(&self, parent: &SimplicialComplex) -> SimplicialComplex {
        let closed: BTreeSet<Vec<Vertex>> = self.ids().map(|id| parent.simplex(id).to_vec()).collect();
        SimplicialComplex::from_closed_set(closed)
    }
}
