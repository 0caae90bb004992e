//! Exact integral simplicial homology of complexes and pairs.
//!
//! Boundary matrices use the ascending-vertex orientation with alternating
//! signs. Homology groups are computed from Smith normal forms; when
//! explicit generators are needed (for inclusion-induced maps and image
//! subgroups) the SNF transforms are kept and generators are represented by
//! explicit cycle vectors, so induced maps are computed by coordinate
//! change rather than re-derivation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{lattice_subquotient, FgAbGroup, Subquotient};
use crate::error::Result;
use crate::matrix::{smith_normal_form, Snf, SnfOptions, SparseMat};
use crate::simplicial::{SimplicialComplex, Subcomplex};

/// A sparse chain with local column indices.
pub type Chain = Vec<(usize, BigInt)>;

/// The chain complex of a subcomplex of an ambient complex, possibly
/// relative to a further subcomplex, with basis lists tying local indices
/// back to global simplex ids.
pub struct ChainComplex {
    /// `basis[k]` lists the global ids of the k-simplexes in the space but
    /// not in the relative part, ascending.
    pub basis: Vec<Vec<usize>>,
    /// `boundary[k]` maps degree k to degree k-1; `boundary[0]` is the
    /// augmentation row when `reduced`, otherwise a 0 x n matrix.
    pub boundary: Vec<SparseMat>,
    positions: Vec<HashMap<usize, usize>>,
}

impl ChainComplex {
    /// Builds the chain complex of `space`, relative to `rel` when given.
    /// `rel` must be a subcomplex of `space`; only membership is used.
    pub fn build(
        k: &SimplicialComplex,
        space: &Subcomplex,
        rel: Option<&Subcomplex>,
        reduced: bool,
    ) -> ChainComplex {
        let in_basis = |id: usize| space.contains(id) && rel.is_none_or(|r| !r.contains(id));
        let top = space.dim(k).max(-1);
        let degrees = (top + 1).max(0) as usize;
        let mut basis: Vec<Vec<usize>> = vec![Vec::new(); degrees];
        for id in space.ids() {
            if in_basis(id) {
                basis[k.dim_of(id)].push(id);
            }
        }
        let positions: Vec<HashMap<usize, usize>> = basis
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, &id)| (id, i)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(degrees);
        for deg in 0..degrees {
            if deg == 0 {
                let cols = basis[0].len();
                if reduced {
                    let mut m = SparseMat::zero(1, cols);
                    for c in 0..cols {
                        m.set(0, c, BigInt::one());
                    }
                    boundary.push(m);
                } else {
                    boundary.push(SparseMat::zero(0, cols));
                }
                continue;
            }
            let rows = basis[deg - 1].len();
            let cols = basis[deg].len();
            let mut m = SparseMat::zero(rows, cols);
            for (c, &id) in basis[deg].iter().enumerate() {
                for (i, &fid) in k.facets(id).iter().enumerate() {
                    if let Some(&r) = positions[deg - 1].get(&fid) {
                        let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        m.set(r, c, sign);
                    }
                }
            }
            boundary.push(m);
        }
        ChainComplex { basis, boundary, positions }
    }

    /// Number of degrees (top dimension + 1).
    pub fn degrees(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_at(&self, k: usize) -> usize {
        self.basis.get(k).map(|b| b.len()).unwrap_or(0)
    }

    /// Local index of a global id in degree k, if present.
    pub fn position(&self, k: usize, id: usize) -> Option<usize> {
        self.positions.get(k).and_then(|m| m.get(&id)).copied()
    }

    /// Translates a local chain to (global id, coefficient) pairs.
    pub fn to_global(&self, k: usize, chain: &Chain) -> Vec<(usize, BigInt)> {
        chain.iter().map(|(i, v)| (self.basis[k][*i], v.clone())).collect()
    }

    /// Translates a global chain into local coordinates, dropping ids
    /// outside the basis (they are relations of the relative complex).
    pub fn from_global(&self, k: usize, chain: &[(usize, BigInt)]) -> Chain {
        chain
            .iter()
            .filter_map(|(id, v)| self.position(k, *id).map(|i| (i, v.clone())))
            .collect()
    }

    /// The boundary of a local degree-k chain, as a local degree k-1 chain.
    pub fn boundary_of(&self, k: usize, chain: &Chain) -> Chain {
        self.boundary[k].mul_vec(chain)
    }
}

/// The homology of one degree of a chain complex together with explicit
/// generating cycles and the data needed to express arbitrary cycles in
/// those generators.
pub struct HomologyBasis {
    pub degree: usize,
    pub group: FgAbGroup,
    /// Generator orders: torsion (>= 2, divisor chain) first, then zeros for
    /// free generators.
    pub orders: Vec<BigInt>,
    /// Representing cycles in local chain coordinates, parallel to `orders`.
    pub gens: Vec<Chain>,
    n: usize,
    rank_d: usize,
    vinv: SparseMat,
    uprime: SparseMat,
    kept: Vec<usize>,
}

impl HomologyBasis {
    /// Computes homology with generators at degree k.
    pub fn compute(cc: &ChainComplex, k: usize) -> HomologyBasis {
        let n = cc.dim_at(k);
        if k >= cc.degrees() || n == 0 {
            return HomologyBasis {
                degree: k,
                group: FgAbGroup::trivial(),
                orders: Vec::new(),
                gens: Vec::new(),
                n,
                rank_d: 0,
                vinv: SparseMat::identity(n),
                uprime: SparseMat::zero(0, 0),
                kept: Vec::new(),
            };
        }
        let dk = &cc.boundary[k];
        let snf1 = smith_normal_form(dk, SnfOptions { u: false, uinv: false, v: true, vinv: true });
        let r = snf1.rank();
        let t = n - r;
        let v = snf1.v.as_ref().unwrap();
        let vinv = snf1.vinv.unwrap();
        // Kernel basis: columns r..n of v.
        let kernel = v.col_slice(r..n);
        // Relations: boundaries of (k+1)-chains in kernel coordinates, i.e.
        // rows r..n of vinv * d_{k+1}.
        let dk1 = if k + 1 < cc.degrees() {
            cc.boundary[k + 1].clone()
        } else {
            SparseMat::zero(n, 0)
        };
        let vinv_d = vinv.mul(&dk1);
        let mut rels = SparseMat::zero(t, dk1.ncols());
        for c in 0..vinv_d.ncols() {
            for (row, val) in vinv_d.col(c) {
                assert!(*row >= r, "boundaries must be cycles");
                rels.set(row - r, c, val.clone());
            }
        }
        let snf2 =
            smith_normal_form(&rels, SnfOptions { u: true, uinv: true, v: false, vinv: false });
        let uprime = snf2.u.clone().unwrap();
        let u2inv = snf2.uinv.as_ref().unwrap();
        let mut orders = Vec::new();
        let mut gens = Vec::new();
        let mut kept = Vec::new();
        for j in 0..t {
            let order = if j < snf2.rank() { snf2.diag[j].clone() } else { BigInt::zero() };
            if order.is_one() {
                continue;
            }
            let coords: Vec<(usize, BigInt)> =
                u2inv.col(j).to_vec();
            gens.push(kernel.mul_vec(&coords));
            orders.push(order);
            kept.push(j);
        }
        let group = FgAbGroup::from_parts(t - snf2.rank(), snf2.diag.iter().cloned());
        HomologyBasis { degree: k, group, orders, gens, n, rank_d: r, vinv, uprime, kept }
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    /// Coordinates of the homology class of a local cycle in the kept
    /// generators, with torsion coordinates reduced into [0, d). Returns
    /// None if the chain is not a cycle.
    pub fn class_coords(&self, cycle: &Chain) -> Option<Vec<BigInt>> {
        if self.n == 0 {
            return if cycle.is_empty() { Some(Vec::new()) } else { None };
        }
        let x = self.vinv.mul_vec(cycle);
        let mut kernel_coords: Chain = Vec::new();
        for (row, v) in x {
            if row < self.rank_d {
                return None;
            }
            kernel_coords.push((row - self.rank_d, v));
        }
        let y = self.uprime.mul_vec(&kernel_coords);
        let y_map: HashMap<usize, BigInt> = y.into_iter().collect();
        let mut out = Vec::with_capacity(self.kept.len());
        for (pos, &j) in self.kept.iter().enumerate() {
            let mut c = y_map.get(&j).cloned().unwrap_or_else(BigInt::zero);
            let d = &self.orders[pos];
            if !d.is_zero() {
                c = c.mod_floor(d);
            }
            out.push(c);
        }
        Some(out)
    }
}

/// A map of finitely generated abelian groups presented on the canonical
/// generators of source and target. Columns index source generators, rows
/// index target generators; entries are well defined modulo the target
/// orders.
pub struct HomologyMap {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub source_orders: Vec<BigInt>,
    pub target_orders: Vec<BigInt>,
    pub matrix: SparseMat,
}

impl HomologyMap {
    fn target_relation_matrix(&self) -> SparseMat {
        relation_matrix(&self.target_orders)
    }

    pub fn is_zero(&self) -> bool {
        for c in 0..self.matrix.ncols() {
            for (r, v) in self.matrix.col(c) {
                let d = &self.target_orders[*r];
                if d.is_zero() {
                    if !v.is_zero() {
                        return false;
                    }
                } else if !v.mod_floor(d).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the map is surjective: together with the target relations,
    /// the image columns span the whole generator lattice.
    pub fn is_surjective(&self) -> bool {
        let t = self.target_orders.len();
        if t == 0 {
            return true;
        }
        let stacked = self.matrix.hstack(&self.target_relation_matrix());
        let snf = smith_normal_form(&stacked, SnfOptions::none());
        snf.rank() == t && snf.diag.iter().all(|d| d.is_one())
    }

    /// True iff the map is an isomorphism. Finitely generated abelian
    /// groups are Hopfian, so a surjection between abstractly isomorphic
    /// groups is an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source == self.target && self.is_surjective()
    }

    /// The image subgroup of the target, with generators in target
    /// coordinates.
    pub fn image(&self) -> Subquotient {
        let rels = self.target_relation_matrix();
        let l1 = self.matrix.hstack(&rels);
        lattice_subquotient(self.target_orders.len(), &l1, &rels)
    }

    /// Isomorphism type of the image subgroup.
    pub fn image_group(&self) -> FgAbGroup {
        self.image().group
    }
}

/// Diagonal-style relation matrix for a list of generator orders: one
/// column d_j * e_j per torsion generator.
pub fn relation_matrix(orders: &[BigInt]) -> SparseMat {
    let torsion: Vec<(usize, BigInt)> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| (i, d.clone()))
        .collect();
    let mut m = SparseMat::zero(orders.len(), torsion.len());
    for (c, (r, d)) in torsion.into_iter().enumerate() {
        m.set(r, c, d);
    }
    m
}

/// Homology groups of a chain complex without generator extraction: the
/// cheap path used when only isomorphism types are needed. SNFs of the
/// boundary matrices are shared between adjacent degrees.
pub struct GroupCalc<'a> {
    cc: &'a ChainComplex,
    snfs: Vec<std::cell::OnceCell<Snf>>,
}

impl<'a> GroupCalc<'a> {
    pub fn new(cc: &'a ChainComplex) -> Self {
        let mut snfs = Vec::new();
        snfs.resize_with(cc.degrees() + 1, std::cell::OnceCell::new);
        GroupCalc { cc, snfs }
    }

    fn snf(&self, k: usize) -> &Snf {
        self.snfs[k].get_or_init(|| {
            let m = if k < self.cc.degrees() {
                self.cc.boundary[k].clone()
            } else {
                SparseMat::zero(self.cc.dim_at(k.saturating_sub(1)), 0)
            };
            smith_normal_form(&m, SnfOptions::none())
        })
    }

    pub fn group(&self, k: isize) -> FgAbGroup {
        if k < 0 || k as usize >= self.cc.degrees() {
            return FgAbGroup::trivial();
        }
        let k = k as usize;
        let n = self.cc.dim_at(k);
        let r_k = self.snf(k).rank();
        let snf_up = self.snf(k + 1);
        let rank = n - r_k - snf_up.rank();
        FgAbGroup::from_parts(rank, snf_up.torsion_divisors())
    }

    pub fn all_groups(&self) -> Vec<FgAbGroup> {
        (0..self.cc.degrees() as isize).map(|k| self.group(k)).collect()
    }
}

/// The full boundary-matrix chain complex of a complex.
pub fn boundary_matrices(k: &SimplicialComplex) -> ChainComplex {
    ChainComplex::build(k, &Subcomplex::full(k), None, false)
}

/// H_i(K) with integer coefficients.
pub fn homology(k: &SimplicialComplex, i: isize) -> FgAbGroup {
    if k.is_empty() {
        return FgAbGroup::trivial();
    }
    let cc = ChainComplex::build(k, &Subcomplex::full(k), None, false);
    GroupCalc::new(&cc).group(i)
}

/// All homology groups of K in degrees 0..=dim.
pub fn homology_groups(k: &SimplicialComplex) -> Vec<FgAbGroup> {
    if k.is_empty() {
        return Vec::new();
    }
    let cc = ChainComplex::build(k, &Subcomplex::full(k), None, false);
    GroupCalc::new(&cc).all_groups()
}

/// Reduced homology; degree -1 is Z exactly for the empty complex.
pub fn reduced_homology(k: &SimplicialComplex, i: isize) -> FgAbGroup {
    if k.is_empty() {
        return if i == -1 { FgAbGroup::free(1) } else { FgAbGroup::trivial() };
    }
    if i == -1 {
        return FgAbGroup::trivial();
    }
    let cc = ChainComplex::build(k, &Subcomplex::full(k), None, true);
    GroupCalc::new(&cc).group(i)
}

/// H_i(K, L) for a subcomplex L of K given as a standalone complex; errors
/// when L is not a subcomplex.
pub fn relative_homology(k: &SimplicialComplex, l: &SimplicialComplex, i: isize) -> Result<FgAbGroup> {
    let mask = k.resolve_subcomplex(l)?;
    Ok(relative_homology_masks(k, &Subcomplex::full(k), &mask, i))
}

/// H_i(space, rel) for subcomplex masks of a common ambient complex.
pub fn relative_homology_masks(
    k: &SimplicialComplex,
    space: &Subcomplex,
    rel: &Subcomplex,
    i: isize,
) -> FgAbGroup {
    let cc = ChainComplex::build(k, space, Some(rel), false);
    GroupCalc::new(&cc).group(i)
}

/// The map H_i(A) -> H_i(B) induced by an inclusion of subcomplexes A <= B
/// of a common ambient complex.
pub fn inclusion_induced_map(
    k: &SimplicialComplex,
    a: &Subcomplex,
    b: &Subcomplex,
    i: usize,
) -> HomologyMap {
    assert!(a.is_subset_of(b), "inclusion violated");
    let cc_a = ChainComplex::build(k, a, None, false);
    let cc_b = ChainComplex::build(k, b, None, false);
    let src = HomologyBasis::compute(&cc_a, i);
    let tgt = HomologyBasis::compute(&cc_b, i);
    map_on_generators(&cc_a, &src, &cc_b, &tgt)
}

/// The map H_i(K, A) -> H_i(K, B) induced by an inclusion of pairs with
/// A <= B <= K.
pub fn pair_induced_map(
    k: &SimplicialComplex,
    a: &Subcomplex,
    b: &Subcomplex,
    i: usize,
) -> HomologyMap {
    assert!(a.is_subset_of(b), "inclusion violated");
    let full = Subcomplex::full(k);
    let cc_a = ChainComplex::build(k, &full, Some(a), false);
    let cc_b = ChainComplex::build(k, &full, Some(b), false);
    let src = HomologyBasis::compute(&cc_a, i);
    let tgt = HomologyBasis::compute(&cc_b, i);
    map_on_generators(&cc_a, &src, &cc_b, &tgt)
}

/// Expresses the images of source generators in target generators for a
/// chain-level map that is the identity on simplexes (inclusion or
/// quotient projection). Source cycles are pushed through global ids; ids
/// absent from the target basis die in the quotient.
pub fn map_on_generators(
    cc_src: &ChainComplex,
    src: &HomologyBasis,
    cc_tgt: &ChainComplex,
    tgt: &HomologyBasis,
) -> HomologyMap {
    let k = src.degree;
    let mut matrix = SparseMat::zero(tgt.gen_count(), src.gen_count());
    for (c, cycle) in src.gens.iter().enumerate() {
        let global = cc_src.to_global(k, cycle);
        let local = cc_tgt.from_global(k, &global);
        let coords = tgt
            .class_coords(&local)
            .expect("image of a cycle under a chain map is a cycle");
        for (r, v) in coords.into_iter().enumerate() {
            matrix.set(r, c, v);
        }
    }
    HomologyMap {
        source: src.group.clone(),
        target: tgt.group.clone(),
        source_orders: src.orders.clone(),
        target_orders: tgt.orders.clone(),
        matrix,
    }
}

/// Decides whether H_i(K, A) -> H_i(K, B) is an isomorphism in every degree
/// 0..=dim K, by the vanishing criterion H_*(B, A) = 0 from the long exact
/// sequence of the triple (K, B, A).
pub fn pair_map_is_iso(k: &SimplicialComplex, a: &Subcomplex, b: &Subcomplex) -> bool {
    assert!(a.is_subset_of(b), "inclusion violated");
    let cc = ChainComplex::build(k, b, Some(a), false);
    let calc = GroupCalc::new(&cc);
    (0..cc.degrees() as isize).all(|i| calc.group(i).is_trivial())
}

/// The same decision computed directly: every induced map of pairs is an
/// isomorphism. Kept as an independent cross-check of `pair_map_is_iso`.
pub fn pair_map_is_iso_direct(k: &SimplicialComplex, a: &Subcomplex, b: &Subcomplex) -> bool {
    let top = k.dim().max(0) as usize;
    (0..=top).all(|i| pair_induced_map(k, a, b, i).is_isomorphism())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_traits::Signed;

    fn full_cc(k: &SimplicialComplex) -> ChainComplex {
        ChainComplex::build(k, &Subcomplex::full(k), None, false)
    }

    #[test]
    fn boundary_matrix_of_an_edge() {
        let k = corpus::simplex(1);
        let cc = full_cc(&k);
        let d1 = &cc.boundary[1];
        assert_eq!((d1.nrows(), d1.ncols()), (2, 1));
        assert_eq!(d1.get(0, 0), Some(&(-BigInt::one())));
        assert_eq!(d1.get(1, 0), Some(&BigInt::one()));
    }

    #[test]
    fn boundary_squares_to_zero() {
        for k in [corpus::sphere(2), corpus::torus7(), corpus::book3(), corpus::x_pp()] {
            let cc = full_cc(&k);
            for deg in 1..cc.degrees() {
                let prod = cc.boundary[deg - 1].mul(&cc.boundary[deg]);
                assert!(prod.is_zero(), "dd != 0 at degree {deg}");
            }
        }
    }

    #[test]
    fn sphere_triangle_columns_have_three_entries() {
        let k = corpus::sphere(2);
        let cc = full_cc(&k);
        let d2 = &cc.boundary[2];
        assert_eq!((d2.nrows(), d2.ncols()), (6, 4));
        for c in 0..4 {
            let s: BigInt = d2.col(c).iter().map(|(_, v)| v.abs()).sum();
            assert_eq!(s, BigInt::from(3));
        }
    }

    #[test]
    fn homology_of_spheres() {
        let g = homology_groups(&corpus::sphere(2));
        assert_eq!(format!("{g:?}"), "[Z, 0, Z]");
        let g = homology_groups(&corpus::sphere(1));
        assert_eq!(format!("{g:?}"), "[Z, Z]");
        let g = homology_groups(&corpus::sphere(3));
        assert_eq!(format!("{g:?}"), "[Z, 0, 0, Z]");
    }

    #[test]
    fn homology_of_torus_and_rp2() {
        let g = homology_groups(&corpus::torus7());
        assert_eq!(format!("{g:?}"), "[Z, Z^2, Z]");
        let g = homology_groups(&corpus::rp2_6());
        assert_eq!(format!("{g:?}"), "[Z, Z/2, 0]");
    }

    #[test]
    fn homology_of_x_pp() {
        let g = homology_groups(&corpus::x_pp());
        assert_eq!(format!("{g:?}"), "[Z, Z, Z^2]");
    }

    #[test]
    fn out_of_range_degrees_are_trivial() {
        let k = corpus::sphere(2);
        assert!(homology(&k, -1).is_trivial());
        assert!(homology(&k, 3).is_trivial());
        assert!(homology(&k, 10).is_trivial());
    }

    #[test]
    fn reduced_homology_conventions() {
        let empty = SimplicialComplex::empty();
        assert_eq!(reduced_homology(&empty, -1).to_string(), "Z");
        assert!(reduced_homology(&empty, 0).is_trivial());
        let pt = corpus::simplex(0);
        assert!(reduced_homology(&pt, -1).is_trivial());
        assert!(reduced_homology(&pt, 0).is_trivial());
        let two = SimplicialComplex::from_maximal([[0i64], [5]]).unwrap();
        assert_eq!(reduced_homology(&two, 0).to_string(), "Z");
    }

    #[test]
    fn relative_homology_examples() {
        // H_*(D^2, S^1) = (0, 0, Z).
        let disc = corpus::simplex(2);
        let boundary = disc.skeleton(1);
        assert!(relative_homology(&disc, &boundary, 0).unwrap().is_trivial());
        assert!(relative_homology(&disc, &boundary, 1).unwrap().is_trivial());
        assert_eq!(relative_homology(&disc, &boundary, 2).unwrap().to_string(), "Z");
        // H_*(K, K) = 0.
        for i in 0..=2 {
            assert!(relative_homology(&disc, &disc, i).unwrap().is_trivial());
        }
        // Contractible pair: H_*(edge, endpoint) = 0.
        let edge = corpus::simplex(1);
        let pt = SimplicialComplex::from_maximal([[0i64]]).unwrap();
        for i in 0..=1 {
            assert!(relative_homology(&edge, &pt, i).unwrap().is_trivial());
        }
        // Not a subcomplex.
        let other = SimplicialComplex::from_maximal([[9i64]]).unwrap();
        assert!(relative_homology(&disc, &other, 0).is_err());
    }

    #[test]
    fn disc_kills_the_circle() {
        let disc = corpus::simplex(2);
        let full = Subcomplex::full(&disc);
        let boundary = disc.resolve_subcomplex(&disc.skeleton(1)).unwrap();
        let m = inclusion_induced_map(&disc, &boundary, &full, 1);
        assert_eq!(m.source.to_string(), "Z");
        assert!(m.target.is_trivial());
        assert!(m.is_zero());
        assert!(m.image_group().is_trivial());
    }

    #[test]
    fn moebius_boundary_has_index_two() {
        let band = corpus::moebius();
        let full = Subcomplex::full(&band);
        let bd = band.resolve_subcomplex(&corpus::moebius_boundary()).unwrap();
        let m = inclusion_induced_map(&band, &bd, &full, 1);
        assert_eq!(m.source.to_string(), "Z");
        assert_eq!(m.target.to_string(), "Z");
        // The boundary circle wraps the core circle twice.
        let entry = m.matrix.get(0, 0).expect("nonzero matrix");
        assert_eq!(entry.abs(), BigInt::from(2));
        assert_eq!(m.image_group().to_string(), "Z");
        assert!(!m.is_isomorphism());
        // Cross-check through the long exact sequence of the pair:
        // H_1(band, boundary) must be the cokernel Z/2.
        assert_eq!(
            relative_homology(&band, &corpus::moebius_boundary(), 1).unwrap().to_string(),
            "Z/2"
        );
    }

    #[test]
    fn identity_inclusion_is_identity() {
        let k = corpus::torus7();
        let full = Subcomplex::full(&k);
        for i in 0..=2 {
            let m = inclusion_induced_map(&k, &full, &full, i);
            assert!(m.is_isomorphism(), "degree {i}");
        }
    }

    #[test]
    fn image_of_identity_on_torsion_group() {
        let k = corpus::rp2_6();
        let full = Subcomplex::full(&k);
        let m = inclusion_induced_map(&k, &full, &full, 1);
        assert_eq!(m.image_group().to_string(), "Z/2");
    }

    #[test]
    fn pair_iso_examples() {
        let k = corpus::simplex(2);
        let full = Subcomplex::full(&k);
        // A = B.
        assert!(pair_map_is_iso(&k, &full, &full));
        // A = one vertex, B = an edge containing it: contractible pair.
        let a = Subcomplex::from_ids(&k, [k.id_of(&[0]).unwrap()]);
        let b = Subcomplex::from_ids(
            &k,
            [k.id_of(&[0]).unwrap(), k.id_of(&[1]).unwrap(), k.id_of(&[0, 1]).unwrap()],
        );
        assert!(pair_map_is_iso(&k, &a, &b));
        assert!(pair_map_is_iso_direct(&k, &a, &b));
        // Book: complement of a vertex star vs complement of the spine star.
        let book = corpus::book3();
        let ca = book.complement_star_mask(&[0]).unwrap();
        let cb = book.complement_star_mask(&[0, 1]).unwrap();
        assert!(ca.is_subset_of(&cb));
        assert!(!pair_map_is_iso(&book, &ca, &cb));
        assert!(!pair_map_is_iso_direct(&book, &ca, &cb));
    }

    #[test]
    fn euler_characteristic_equals_alternating_betti_sum() {
        for k in [
            corpus::sphere(2),
            corpus::sphere(3),
            corpus::torus7(),
            corpus::rp2_6(),
            corpus::moebius(),
            corpus::book3(),
            corpus::x_pp(),
            corpus::cone_torus(),
        ] {
            let betti: i64 = homology_groups(&k)
                .iter()
                .enumerate()
                .map(|(i, g)| if i % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
                .sum();
            assert_eq!(betti, k.euler_characteristic(), "{k:?}");
        }
    }

    #[test]
    fn generator_cycles_really_are_cycles() {
        let k = corpus::torus7();
        let cc = full_cc(&k);
        for deg in 0..cc.degrees() {
            let basis = HomologyBasis::compute(&cc, deg);
            for gen in &basis.gens {
                let b = cc.boundary_of(deg, gen);
                assert!(b.is_empty(), "generator at degree {deg} is not a cycle");
            }
            // Each generator's own class coordinates form a standard basis
            // vector.
            for (i, gen) in basis.gens.iter().enumerate() {
                let coords = basis.class_coords(gen).unwrap();
                for (j, c) in coords.iter().enumerate() {
                    let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                    let reduced = if basis.orders[j].is_zero() {
                        c.clone()
                    } else {
                        c.mod_floor(&basis.orders[j])
                    };
                    assert_eq!(reduced, expect);
                }
            }
        }
    }
}
