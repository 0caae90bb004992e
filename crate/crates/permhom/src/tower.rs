//! Permutation skeleta of the first derived complex and permutation
//! homology.
//!
//! For a principal n-complex K and a permutation pi of {0..n}, the i-th
//! permutation skeleton is the full subcomplex of the barycentric
//! subdivision spanned by barycentres of simplexes whose dimension lies in
//! pi(0), ..., pi(i). The groups H^pi_i are computed two independent ways:
//!
//! * as the image of the inclusion-induced map
//!   H_i(K^pi_i) -> H_i(K^pi_{i+1}), and
//! * as the homology of the chain complex of relative groups
//!   H_i(K^pi_i, K^pi_{i-1}) with connecting maps of triples.
//!
//! The two must agree; the test suites check this across the corpus.
//! Intersection homology with a perversity is the image-path computation at
//! the corresponding V-shaped permutation.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{lattice_subquotient, preimage_lattice, FgAbGroup, Subquotient};
use crate::error::{Result, TopologyError};
use crate::homology::{
    map_on_generators, relation_matrix, Chain, ChainComplex, HomologyBasis, HomologyMap,
};
use crate::matrix::SparseMat;
use crate::perm::{Permutation, Perversity};
use crate::simplicial::{SimplicialComplex, Subcomplex};
use crate::subdivision::{flag_count, iterated_subdivision, LabeledSubdivision};

/// Which of the two equivalent computation paths produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Image of H_i(K^pi_i) -> H_i(K^pi_{i+1}).
    Image,
    /// Homology of the chain complex of relative groups of the tower.
    Chain,
}

/// Permutation homology groups of one complex for one permutation.
#[derive(Clone, Debug)]
pub struct PermHomologyResult {
    pub permutation: Permutation,
    pub method: Method,
    /// Groups in degrees 0..=n.
    pub groups: Vec<FgAbGroup>,
    /// Simplex counts of the base complex, as a complex identifier.
    pub base_counts: Vec<usize>,
}

/// The skeleton tower of one principal complex: its labeled subdivision
/// plus caches of chain complexes and homology bases keyed by the set of
/// barycentre dimensions. Towers for different permutations share the
/// caches, because a permutation skeleton depends only on that set.
pub struct Tower<'k> {
    pub base: &'k SimplicialComplex,
    pub sub: LabeledSubdivision,
    n: usize,
    cc_cache: Mutex<HashMap<(u32, u32), Arc<ChainComplex>>>,
    basis_cache: Mutex<HashMap<(u32, u32, usize), Arc<HomologyBasis>>>,
}

/// Bitmask key for a set of dimensions.
fn dims_key(dims: impl IntoIterator<Item = usize>) -> u32 {
    dims.into_iter().fold(0u32, |acc, d| acc | 1 << d)
}

const NO_REL: u32 = u32::MAX;

impl<'k> Tower<'k> {
    /// Builds the tower of a nonempty principal complex.
    pub fn new(base: &'k SimplicialComplex) -> Result<Self> {
        Self::with_limit(base, None)
    }

    /// As [`Self::new`], but refuses to build a subdivision larger than
    /// `limit` simplexes.
    pub fn with_limit(base: &'k SimplicialComplex, limit: Option<usize>) -> Result<Self> {
        if base.is_empty() {
            return Err(TopologyError::EmptyComplex);
        }
        base.require_principal()?;
        if let Some(limit) = limit {
            let count = flag_count(base);
            if count > limit {
                return Err(TopologyError::SizeLimit { count, limit });
            }
        }
        let sub = LabeledSubdivision::new(base)?;
        let n = base.dim() as usize;
        Ok(Tower {
            base,
            sub,
            n,
            cc_cache: Mutex::new(HashMap::new()),
            basis_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_pi(&self, pi: &Permutation) -> Result<()> {
        if pi.n() != self.n {
            return Err(TopologyError::InvalidPermutation(format!(
                "permutation of 0..={} does not match complex dimension {}",
                pi.n(),
                self.n
            )));
        }
        Ok(())
    }

    fn prefix_key(&self, pi: &Permutation, i: usize) -> u32 {
        dims_key(pi.values()[..=i.min(self.n)].iter().copied())
    }

    fn mask_for_key(&self, key: u32) -> Subcomplex {
        let dims: BTreeSet<usize> = (0..=self.n).filter(|d| key >> d & 1 == 1).collect();
        self.sub.full_subcomplex_mask(&dims)
    }

    fn cc(&self, space_key: u32, rel_key: u32) -> Arc<ChainComplex> {
        let mut cache = self.cc_cache.lock().unwrap();
        if let Some(cc) = cache.get(&(space_key, rel_key)) {
            return Arc::clone(cc);
        }
        let space = self.mask_for_key(space_key);
        let cc = if rel_key == NO_REL {
            ChainComplex::build(&self.sub.complex, &space, None, false)
        } else {
            let rel = self.mask_for_key(rel_key);
            ChainComplex::build(&self.sub.complex, &space, Some(&rel), false)
        };
        let cc = Arc::new(cc);
        cache.insert((space_key, rel_key), Arc::clone(&cc));
        cc
    }

    fn basis(&self, space_key: u32, rel_key: u32, degree: usize) -> Arc<HomologyBasis> {
        {
            let cache = self.basis_cache.lock().unwrap();
            if let Some(b) = cache.get(&(space_key, rel_key, degree)) {
                return Arc::clone(b);
            }
        }
        let cc = self.cc(space_key, rel_key);
        let b = Arc::new(HomologyBasis::compute(&cc, degree));
        self.basis_cache.lock().unwrap().insert((space_key, rel_key, degree), Arc::clone(&b));
        b
    }

    /// Mask of the permutation skeleton K^pi_i inside the subdivision.
    pub fn skeleton_mask(&self, pi: &Permutation, i: usize) -> Result<Subcomplex> {
        self.check_pi(pi)?;
        Ok(self.mask_for_key(self.prefix_key(pi, i)))
    }

    /// The permutation skeleton as a standalone complex.
    pub fn perm_skeleton(&self, pi: &Permutation, i: usize) -> Result<SimplicialComplex> {
        Ok(self.skeleton_mask(pi, i)?.materialize(&self.sub.complex))
    }

    /// The complementary skeleton: the full subcomplex on barycentres of
    /// dimensions not in pi[0, i]. Empty when i = n.
    pub fn co_skeleton_mask(&self, pi: &Permutation, i: usize) -> Result<Subcomplex> {
        self.check_pi(pi)?;
        let used = self.prefix_key(pi, i);
        let all = dims_key(0..=self.n);
        let co = all & !used;
        if co == 0 {
            return Ok(Subcomplex::empty(&self.sub.complex));
        }
        Ok(self.mask_for_key(co))
    }

    pub fn co_perm_skeleton(&self, pi: &Permutation, i: usize) -> Result<SimplicialComplex> {
        Ok(self.co_skeleton_mask(pi, i)?.materialize(&self.sub.complex))
    }

    /// The inductive cone-attachment description of the skeleton: start
    /// from the barycentres of dimension pi(0), then for each barycentre
    /// a of dimension pi(step) attach the cone from a over the part of the
    /// current complex lying in its subdivision link. Used as a cross-check
    /// of the full-subcomplex definition.
    pub fn perm_skeleton_inductive(&self, pi: &Permutation, i: usize) -> Result<Subcomplex> {
        self.check_pi(pi)?;
        let kx = &self.sub.complex;
        let mut cur = Subcomplex::empty(kx);
        for v in kx.vertices() {
            if self.sub.vertex_dim(v) == pi.apply(0) {
                cur.insert(kx.id_of(&[v]).unwrap());
            }
        }
        for step in 1..=i.min(self.n) {
            let d = pi.apply(step);
            let mut added = Vec::new();
            for v in kx.vertices() {
                if self.sub.vertex_dim(v) != d {
                    continue;
                }
                let vid = kx.id_of(&[v]).unwrap();
                added.push(vid);
                for &coface in kx.star(vid) {
                    if coface == vid {
                        continue;
                    }
                    let tau: Vec<i64> =
                        kx.simplex(coface).iter().copied().filter(|&w| w != v).collect();
                    let tid = kx.id_of(&tau).unwrap();
                    if cur.contains(tid) {
                        added.push(coface);
                    }
                }
            }
            for id in added {
                cur.insert(id);
            }
        }
        Ok(cur)
    }

    /// H^pi_i as the image of H_i(K^pi_i) -> H_i(K^pi_{i+1}), reading
    /// K^pi_{n+1} as K^pi_n.
    pub fn homology_via_image(&self, pi: &Permutation, i: isize) -> Result<FgAbGroup> {
        Ok(self.image_subquotient(pi, i)?.map(|sq| sq.group).unwrap_or_else(FgAbGroup::trivial))
    }

    fn image_subquotient(&self, pi: &Permutation, i: isize) -> Result<Option<Subquotient>> {
        self.check_pi(pi)?;
        if i < 0 || i as usize > self.n {
            return Ok(None);
        }
        let i = i as usize;
        let m = self.inclusion_map(pi, i)?;
        Ok(Some(m.image()))
    }

    /// The inclusion-induced map H_i(K^pi_i) -> H_i(K^pi_{i+1}).
    pub fn inclusion_map(&self, pi: &Permutation, i: usize) -> Result<HomologyMap> {
        self.check_pi(pi)?;
        let key_a = self.prefix_key(pi, i);
        let key_b = self.prefix_key(pi, (i + 1).min(self.n));
        let cc_a = self.cc(key_a, NO_REL);
        let cc_b = self.cc(key_b, NO_REL);
        let src = self.basis(key_a, NO_REL, i);
        let tgt = self.basis(key_b, NO_REL, i);
        Ok(map_on_generators(&cc_a, &src, &cc_b, &tgt))
    }

    /// H^pi_i as the homology of the chain complex of relative groups
    /// H_i(K^pi_i, K^pi_{i-1}) with the connecting maps of triples.
    pub fn homology_via_chain(&self, pi: &Permutation, i: isize) -> Result<FgAbGroup> {
        self.check_pi(pi)?;
        if i < 0 || i as usize > self.n {
            return Ok(FgAbGroup::trivial());
        }
        let i = i as usize;
        // Bases of the three relevant relative groups.
        let g_cur = self.rel_group(pi, i);
        let t_cur = g_cur.gen_count();
        let f_down = if i == 0 {
            SparseMat::zero(0, t_cur)
        } else {
            self.connecting_matrix(pi, i, &g_cur)
        };
        let f_up = if i < self.n {
            let g_up = self.rel_group(pi, i + 1);
            self.connecting_matrix(pi, i + 1, &g_up)
        } else {
            SparseMat::zero(t_cur, 0)
        };
        let rel_down = if i == 0 {
            SparseMat::zero(0, 0)
        } else {
            relation_matrix(&self.rel_group(pi, i - 1).orders)
        };
        let kernel = preimage_lattice(&f_down, &rel_down);
        let l2 = f_up.hstack(&relation_matrix(&g_cur.orders));
        Ok(lattice_subquotient(t_cur, &kernel, &l2).group)
    }

    fn rel_group(&self, pi: &Permutation, j: usize) -> Arc<HomologyBasis> {
        let space = self.prefix_key(pi, j);
        let rel = if j == 0 { NO_REL } else { self.prefix_key(pi, j - 1) };
        self.basis(space, rel, j)
    }

    /// Matrix of the connecting map H_j(K^pi_j, K^pi_{j-1}) ->
    /// H_{j-1}(K^pi_{j-1}, K^pi_{j-2}) on generators: represent, take the
    /// chain boundary, and express in the target pair.
    fn connecting_matrix(&self, pi: &Permutation, j: usize, src: &HomologyBasis) -> SparseMat {
        debug_assert!(j >= 1);
        let space_key = self.prefix_key(pi, j);
        let rel_key = if j == 1 { NO_REL } else { self.prefix_key(pi, j - 2) };
        let src_cc = self.cc(space_key, if j == 0 { NO_REL } else { self.prefix_key(pi, j - 1) });
        let abs_cc = self.cc(space_key, NO_REL);
        let tgt_cc = self.cc(self.prefix_key(pi, j - 1), rel_key);
        let tgt = self.basis(self.prefix_key(pi, j - 1), rel_key, j - 1);
        let mut m = SparseMat::zero(tgt.gen_count(), src.gen_count());
        for (c, cycle) in src.gens.iter().enumerate() {
            // Lift the relative cycle to the absolute chain complex of the
            // same skeleton, take its boundary there, and read the class in
            // the target pair.
            let global = src_cc.to_global(j, cycle);
            let lifted = abs_cc.from_global(j, &global);
            debug_assert_eq!(lifted.len(), global.len());
            let boundary = abs_cc.boundary_of(j, &lifted);
            let boundary_global = abs_cc.to_global(j - 1, &boundary);
            let local = tgt_cc.from_global(j - 1, &boundary_global);
            let coords = tgt
                .class_coords(&local)
                .expect("boundary of a relative cycle is a relative cycle");
            for (r, v) in coords.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    /// The natural comparison map from H^pi_i to the ordinary homology of
    /// the subdivision: release the restriction on cycles and boundaries.
    pub fn natural_map_to_ordinary(&self, pi: &Permutation, i: usize) -> Result<HomologyMap> {
        self.check_pi(pi)?;
        let sq = self
            .image_subquotient(pi, i as isize)?
            .expect("degree within 0..=n");
        // Generators of the image live in coordinates of H_i(K^pi_{i+1}).
        let key_b = self.prefix_key(pi, (i + 1).min(self.n));
        let cc_b = self.cc(key_b, NO_REL);
        let mid = self.basis(key_b, NO_REL, i);
        let all = dims_key(0..=self.n);
        let cc_full = self.cc(all, NO_REL);
        let full = self.basis(all, NO_REL, i);
        let mut matrix = SparseMat::zero(full.gen_count(), sq.gens.len());
        for (c, gen) in sq.gens.iter().enumerate() {
            // Assemble a representing cycle in K^pi_{i+1} coordinates.
            let mut cycle: HashMap<usize, BigInt> = HashMap::new();
            for (gidx, coeff) in gen {
                for (pos, v) in &mid.gens[*gidx] {
                    *cycle.entry(*pos).or_insert_with(BigInt::zero) += coeff * v;
                }
            }
            let mut chain: Chain =
                cycle.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            chain.sort_by_key(|(p, _)| *p);
            let global = cc_b.to_global(i, &chain);
            let local = cc_full.from_global(i, &global);
            let coords = full.class_coords(&local).expect("cycles include into the subdivision");
            for (r, v) in coords.into_iter().enumerate() {
                matrix.set(r, c, v);
            }
        }
        Ok(HomologyMap {
            source: sq.group.clone(),
            target: full.group.clone(),
            source_orders: sq.orders.clone(),
            target_orders: full.orders.clone(),
            matrix,
        })
    }

    /// All groups in degrees 0..=n by the requested method.
    pub fn profile(&self, pi: &Permutation, method: Method) -> Result<PermHomologyResult> {
        let mut groups = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n as isize {
            let g = match method {
                Method::Image => self.homology_via_image(pi, i)?,
                Method::Chain => self.homology_via_chain(pi, i)?,
            };
            groups.push(g);
        }
        Ok(PermHomologyResult {
            permutation: pi.clone(),
            method,
            groups,
            base_counts: self.base.counts_by_dim(),
        })
    }
}

/// Intersection homology of K with the given perversity in degree i,
/// realized as permutation homology at the corresponding V-shaped
/// permutation.
pub fn intersection_homology(
    k: &SimplicialComplex,
    p: &Perversity,
    i: isize,
) -> Result<FgAbGroup> {
    let tower = Tower::new(k)?;
    if p.n() != tower.n() {
        return Err(TopologyError::InvalidPerversity(format!(
            "perversity of length {} does not match complex dimension {}",
            p.n() + 1,
            tower.n()
        )));
    }
    tower.homology_via_image(&p.to_permutation(), i)
}

/// Per-degree comparison of H^pi between a complex and its r-fold
/// barycentric subdivision.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub permutation: Permutation,
    pub depth: usize,
    /// Per degree: the group of K and the group of K^(r).
    pub degrees: Vec<(FgAbGroup, FgAbGroup)>,
}

impl InvarianceReport {
    pub fn all_agree(&self) -> bool {
        self.degrees.iter().all(|(a, b)| a == b)
    }

    /// Degrees where the two sides differ.
    pub fn mismatches(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Computes H^pi of K and of its r-fold subdivision and compares them per
/// degree. `limit` bounds the size of every subdivision stage, including
/// the one the tower of K^(r) builds internally.
pub fn subdivision_invariance_check(
    k: &SimplicialComplex,
    pi: &Permutation,
    depth: usize,
    limit: Option<usize>,
) -> Result<InvarianceReport> {
    let tower = Tower::with_limit(k, limit)?;
    let base_profile = tower.profile(pi, Method::Image)?;
    let subdivided = iterated_subdivision(k, depth, limit)?;
    let tower_r = Tower::with_limit(&subdivided, limit)?;
    let sub_profile = tower_r.profile(pi, Method::Image)?;
    Ok(InvarianceReport {
        permutation: pi.clone(),
        depth,
        degrees: base_profile.groups.into_iter().zip(sub_profile.groups).collect(),
    })
}

/// Experimental: relative permutation homology of a pair (K, L), with the
/// tower term T_i the union of K^pi_i with the subdivision of L, and the
/// groups taken as images of the relative inclusion maps
/// H_i(T_i, L^(1)) -> H_i(T_{i+1}, L^(1)).
pub mod experimental {
    use super::*;

    fn tower_masks(
        tower: &Tower<'_>,
        l_sub: &Subcomplex,
        pi: &Permutation,
    ) -> Result<Vec<Subcomplex>> {
        let n = tower.n();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let skel = tower.skeleton_mask(pi, i)?;
            out.push(skel.union(l_sub));
        }
        Ok(out)
    }

    /// Relative H^pi_i(K, L) by the image construction. `l_mask` is a
    /// subcomplex mask on K.
    pub fn relative_via_image(
        k: &SimplicialComplex,
        l_mask: &Subcomplex,
        pi: &Permutation,
        i: isize,
    ) -> Result<FgAbGroup> {
        let tower = Tower::new(k)?;
        if i < 0 || i as usize > tower.n() {
            return Ok(FgAbGroup::trivial());
        }
        let i = i as usize;
        let l_sub = tower.sub.subdivide_mask(l_mask);
        let masks = tower_masks(&tower, &l_sub, pi)?;
        let kx = &tower.sub.complex;
        let a = &masks[i];
        let b = &masks[(i + 1).min(tower.n())];
        let cc_a = ChainComplex::build(kx, a, Some(&l_sub), false);
        let cc_b = ChainComplex::build(kx, b, Some(&l_sub), false);
        let src = HomologyBasis::compute(&cc_a, i);
        let tgt = HomologyBasis::compute(&cc_b, i);
        Ok(map_on_generators(&cc_a, &src, &cc_b, &tgt).image_group())
    }

    /// Relative H^pi_i(K, L) by the chain-of-relative-groups construction,
    /// with T_{-1} = L^(1). Cross-checks `relative_via_image`.
    pub fn relative_via_chain(
        k: &SimplicialComplex,
        l_mask: &Subcomplex,
        pi: &Permutation,
        i: isize,
    ) -> Result<FgAbGroup> {
        let tower = Tower::new(k)?;
        if i < 0 || i as usize > tower.n() {
            return Ok(FgAbGroup::trivial());
        }
        let i = i as usize;
        let n = tower.n();
        let l_sub = tower.sub.subdivide_mask(l_mask);
        let masks = tower_masks(&tower, &l_sub, pi)?;
        let kx = &tower.sub.complex;
        let rel_of = |j: usize| -> &Subcomplex { if j == 0 { &l_sub } else { &masks[j - 1] } };
        let pair_basis = |j: usize| -> (ChainComplex, HomologyBasis) {
            let cc = ChainComplex::build(kx, &masks[j], Some(rel_of(j)), false);
            let b = HomologyBasis::compute(&cc, j);
            (cc, b)
        };
        let connecting = |j: usize, src_cc: &ChainComplex, src: &HomologyBasis| -> SparseMat {
            let abs_cc = ChainComplex::build(kx, &masks[j], None, false);
            let tgt_cc = ChainComplex::build(kx, &masks[j - 1], Some(rel_of(j - 1)), false);
            let tgt = HomologyBasis::compute(&tgt_cc, j - 1);
            let mut m = SparseMat::zero(tgt.gen_count(), src.gen_count());
            for (c, cycle) in src.gens.iter().enumerate() {
                let global = src_cc.to_global(j, cycle);
                let lifted = abs_cc.from_global(j, &global);
                let boundary = abs_cc.boundary_of(j, &lifted);
                let bglobal = abs_cc.to_global(j - 1, &boundary);
                let local = tgt_cc.from_global(j - 1, &bglobal);
                let coords = tgt.class_coords(&local).expect("relative cycle boundary");
                for (r, v) in coords.into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            m
        };
        let (cc_cur, g_cur) = pair_basis(i);
        let t_cur = g_cur.gen_count();
        let f_down =
            if i == 0 { SparseMat::zero(0, t_cur) } else { connecting(i, &cc_cur, &g_cur) };
        let f_up = if i < n {
            let (cc_up, g_up) = pair_basis(i + 1);
            connecting(i + 1, &cc_up, &g_up)
        } else {
            SparseMat::zero(t_cur, 0)
        };
        let rel_down = if i == 0 {
            SparseMat::zero(0, 0)
        } else {
            relation_matrix(&pair_basis(i - 1).1.orders)
        };
        let kernel = preimage_lattice(&f_down, &rel_down);
        let l2 = f_up.hstack(&relation_matrix(&g_cur.orders));
        Ok(lattice_subquotient(t_cur, &kernel, &l2).group)
    }

    /// Experimental local permutation homology at a simplex: the relative
    /// permutation homology of (K, complement of the open star of sigma).
    pub fn local_perm_homology(
        k: &SimplicialComplex,
        pi: &Permutation,
        sigma: &[i64],
        i: isize,
    ) -> Result<FgAbGroup> {
        let mask = k.complement_star_mask(sigma)?;
        relative_via_image(k, &mask, pi, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::homology;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn profile_str(tower: &Tower<'_>, pi: &Permutation, method: Method) -> String {
        let p = tower.profile(pi, method).unwrap();
        format!("{:?}", p.groups)
    }

    #[test]
    fn identity_permutation_gives_subdivided_skeleta() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        let id = Permutation::identity(2);
        for i in 0..=2isize {
            let skel = tower.perm_skeleton(&id, i as usize).unwrap();
            // The subdivided i-skeleton has one j-simplex per length-(j+1)
            // chain of the i-skeleton.
            let expected = LabeledSubdivision::new(&k.skeleton(i)).unwrap().complex;
            assert_eq!(skel.counts_by_dim(), expected.counts_by_dim());
        }
    }

    #[test]
    fn reversal_skeleton_is_the_dual_skeleton() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        let rev = Permutation::reversal(2);
        // Dual 0-skeleton: the four triangle barycentres.
        let s0 = tower.perm_skeleton(&rev, 0).unwrap();
        assert_eq!(s0.counts_by_dim(), vec![4]);
        // Dual 1-skeleton: triangle and edge barycentres.
        let s1 = tower.perm_skeleton(&rev, 1).unwrap();
        assert_eq!(s1.counts_by_dim(), vec![10, 12]);
    }

    #[test]
    fn tripod_skeleton_inside_the_triangle() {
        // For the solid triangle and pi = (0,2,1), the 1-skeleton is the
        // cone from the triangle barycentre to the three vertices.
        let k = corpus::simplex(2);
        let tower = Tower::new(&k).unwrap();
        let s1 = tower.perm_skeleton(&perm("0,2,1"), 1).unwrap();
        assert_eq!(s1.counts_by_dim(), vec![4, 3]);
    }

    #[test]
    fn skeleta_nest_and_top_is_everything() {
        let k = corpus::x_pp();
        let tower = Tower::new(&k).unwrap();
        for pi in Permutation::all(2) {
            let mut prev: Option<Subcomplex> = None;
            for i in 0..=2 {
                let cur = tower.skeleton_mask(&pi, i).unwrap();
                if let Some(p) = prev {
                    assert!(p.is_subset_of(&cur));
                }
                prev = Some(cur);
            }
            assert_eq!(prev.unwrap().count(), tower.sub.complex.simplex_count());
        }
    }

    #[test]
    fn skeleton_matches_inductive_cone_description() {
        for k in [corpus::simplex(2), corpus::sphere(2), corpus::book3()] {
            let tower = Tower::new(&k).unwrap();
            for pi in Permutation::all(2) {
                for i in 0..=2 {
                    let direct = tower.skeleton_mask(&pi, i).unwrap();
                    let inductive = tower.perm_skeleton_inductive(&pi, i).unwrap();
                    assert_eq!(direct, inductive, "{pi:?} at level {i}");
                }
            }
        }
    }

    #[test]
    fn skeleton_is_principal_of_dimension_i() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        for pi in Permutation::all(2) {
            for i in 0..=2 {
                let skel = tower.perm_skeleton(&pi, i).unwrap();
                assert_eq!(skel.dim(), i as isize);
                assert!(skel.is_principal().unwrap(), "{pi:?} at {i}");
            }
        }
    }

    #[test]
    fn co_skeleton_complements_the_vertex_set() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        for pi in Permutation::all(2) {
            for i in 0..=2 {
                let a = tower.skeleton_mask(&pi, i).unwrap();
                let b = tower.co_skeleton_mask(&pi, i).unwrap();
                // Vertices split between the two.
                let kx = &tower.sub.complex;
                for v in kx.vertices() {
                    let id = kx.id_of(&[v]).unwrap();
                    assert_ne!(a.contains(id), b.contains(id));
                }
                // The co-skeleton is the skeleton of the domain-reversed
                // permutation at the complementary level: its first n - i
                // values are exactly the unused dimensions. (The value
                // complement k -> n - pi(k) does not do this in general;
                // pi = (0,2,1) at i = 0 is a counterexample.)
                if i < 2 {
                    let rev: Vec<usize> = pi.values().iter().rev().copied().collect();
                    let sigma = Permutation::new(rev).unwrap();
                    let alt = tower.skeleton_mask(&sigma, 2 - i - 1).unwrap();
                    assert_eq!(b, alt);
                } else {
                    assert!(b.is_empty());
                }
            }
        }
    }

    #[test]
    fn join_decomposition_on_the_sphere() {
        // Every simplex of the subdivision is the join of its skeleton part
        // and its co-skeleton part, uniquely determined by the vertex split.
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        let kx = &tower.sub.complex;
        for pi in Permutation::all(2) {
            for i in 0..=2 {
                let a = tower.skeleton_mask(&pi, i).unwrap();
                let b = tower.co_skeleton_mask(&pi, i).unwrap();
                for id in 0..kx.simplex_count() {
                    let t = kx.simplex(id);
                    let in_a: Vec<i64> =
                        t.iter().copied().filter(|&v| a.contains(kx.id_of(&[v]).unwrap())).collect();
                    let in_b: Vec<i64> =
                        t.iter().copied().filter(|&v| b.contains(kx.id_of(&[v]).unwrap())).collect();
                    assert_eq!(in_a.len() + in_b.len(), t.len());
                    if !in_a.is_empty() {
                        assert!(a.contains(kx.id_of(&in_a).unwrap()));
                    }
                    if !in_b.is_empty() {
                        assert!(b.contains(kx.id_of(&in_b).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_has_ordinary_homology_for_every_permutation() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        for pi in Permutation::all(2) {
            assert_eq!(profile_str(&tower, &pi, Method::Image), "[Z, 0, Z]", "{pi:?}");
        }
    }

    #[test]
    fn x_pp_reversal_separates_components() {
        let k = corpus::x_pp();
        let tower = Tower::new(&k).unwrap();
        let rev = Permutation::reversal(2);
        assert_eq!(profile_str(&tower, &rev, Method::Image), "[Z^2, 0, Z^2]");
        assert_eq!(profile_str(&tower, &rev, Method::Chain), "[Z^2, 0, Z^2]");
        // The identity permutation recovers ordinary homology.
        let id = Permutation::identity(2);
        assert_eq!(profile_str(&tower, &id, Method::Image), "[Z, Z, Z^2]");
    }

    #[test]
    fn book_reversal_is_connected_and_acyclic() {
        let k = corpus::book3();
        let tower = Tower::new(&k).unwrap();
        let rev = Permutation::reversal(2);
        assert_eq!(profile_str(&tower, &rev, Method::Image), "[Z, 0, 0]");
        assert_eq!(profile_str(&tower, &rev, Method::Chain), "[Z, 0, 0]");
    }

    #[test]
    fn image_and_chain_definitions_agree_on_small_corpus() {
        for k in [corpus::simplex(2), corpus::sphere(2), corpus::rp2_6(), corpus::moebius()] {
            let tower = Tower::new(&k).unwrap();
            for pi in Permutation::all(2) {
                let a = profile_str(&tower, &pi, Method::Image);
                let b = profile_str(&tower, &pi, Method::Chain);
                assert_eq!(a, b, "{pi:?} on {k:?}");
            }
        }
    }

    #[test]
    fn dimension_interface_matches_the_d_table() {
        // The span of barycentres of dimension <= j inside K^pi_i has
        // dimension exactly d[i][j] on principal complexes with a top
        // simplex: empty exactly when d = -1.
        let solids = (1..=3).map(corpus::simplex);
        let spheres = (1..=3).map(corpus::sphere);
        for k in solids.chain(spheres) {
            let n = k.dim() as usize;
            let tower = Tower::new(&k).unwrap();
            for pi in Permutation::all(n) {
                let d = pi.d_table();
                for i in 0..=n {
                    for j in 0..=n {
                        let dims: BTreeSet<usize> =
                            pi.values()[..=i].iter().copied().filter(|&v| v <= j).collect();
                        let mask = tower.sub.full_subcomplex_mask(&dims);
                        let dim = mask.dim(&tower.sub.complex);
                        assert_eq!(dim, d.get(i, j) as isize, "{pi:?} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn natural_map_is_iso_on_the_sphere() {
        let k = corpus::sphere(2);
        let tower = Tower::new(&k).unwrap();
        for pi in Permutation::all(2) {
            for i in 0..=2 {
                let phi = tower.natural_map_to_ordinary(&pi, i).unwrap();
                assert!(phi.is_isomorphism(), "{pi:?} degree {i}");
            }
        }
    }

    #[test]
    fn natural_map_on_x_pp_reversal() {
        let k = corpus::x_pp();
        let tower = Tower::new(&k).unwrap();
        let rev = Permutation::reversal(2);
        // Degree 1: the source vanishes, so the map is zero into Z.
        let phi = tower.natural_map_to_ordinary(&rev, 1).unwrap();
        assert!(phi.source.is_trivial());
        assert_eq!(phi.target.to_string(), "Z");
        // Degree 0: two dual components map onto one path component.
        let phi = tower.natural_map_to_ordinary(&rev, 0).unwrap();
        assert_eq!(phi.source.to_string(), "Z^2");
        assert_eq!(phi.target.to_string(), "Z");
        assert!(phi.is_surjective());
        assert!(!phi.is_isomorphism());
    }

    #[test]
    fn intersection_homology_by_perversity() {
        let k = corpus::x_pp();
        // Zero perversity: reversal permutation.
        let zero = Perversity::zero(2);
        assert_eq!(intersection_homology(&k, &zero, 0).unwrap().to_string(), "Z^2");
        assert_eq!(intersection_homology(&k, &zero, 1).unwrap().to_string(), "0");
        assert_eq!(intersection_homology(&k, &zero, 2).unwrap().to_string(), "Z^2");
        // Maximal perversity: ordinary homology.
        let max = Perversity::maximal(2);
        let ordinary = homology::homology_groups(&k);
        for i in 0..=2isize {
            assert_eq!(
                intersection_homology(&k, &max, i).unwrap(),
                ordinary[i as usize],
                "degree {i}"
            );
        }
        // Length mismatch is an error.
        assert!(intersection_homology(&k, &Perversity::zero(3), 0).is_err());
    }

    #[test]
    fn non_principal_input_is_rejected() {
        let k = SimplicialComplex::from_maximal(vec![vec![0i64, 1, 2], vec![3, 4]]).unwrap();
        assert!(matches!(Tower::new(&k), Err(TopologyError::NotPrincipal { .. })));
    }

    #[test]
    fn size_limit_is_respected() {
        let k = corpus::sphere(2);
        assert!(matches!(
            Tower::with_limit(&k, Some(10)),
            Err(TopologyError::SizeLimit { count: 74, limit: 10 })
        ));
        assert!(Tower::with_limit(&k, Some(74)).is_ok());
    }

    #[test]
    fn subdivision_invariance_on_small_complexes() {
        let k = corpus::sphere(2);
        for pi in Permutation::all(2) {
            let report = subdivision_invariance_check(&k, &pi, 1, Some(100_000)).unwrap();
            assert!(report.all_agree(), "{pi:?}: {:?}", report.degrees);
        }
        let book = corpus::book3();
        let report =
            subdivision_invariance_check(&book, &Permutation::reversal(2), 1, Some(100_000))
                .unwrap();
        assert!(report.all_agree());
    }

    #[test]
    fn experimental_local_perm_homology_on_manifold_matches_local_homology() {
        // On a manifold the local permutation homology profile at any
        // simplex agrees with ordinary local homology.
        let k = corpus::sphere(2);
        let rev = Permutation::reversal(2);
        for sigma in [vec![0i64], vec![0, 1], vec![0, 1, 2]] {
            for i in 0..=2isize {
                let g = experimental::local_perm_homology(&k, &rev, &sigma, i).unwrap();
                let expected = crate::stratify::local_homology(&k, &sigma, i).unwrap();
                assert_eq!(g, expected, "sigma {sigma:?} degree {i}");
            }
        }
    }

    #[test]
    fn experimental_relative_definitions_agree() {
        let k = corpus::x_pp();
        let rev = Permutation::reversal(2);
        let mask = k.complement_star_mask(&[0]).unwrap();
        for i in 0..=2isize {
            let a = experimental::relative_via_image(&k, &mask, &rev, i).unwrap();
            let b = experimental::relative_via_chain(&k, &mask, &rev, i).unwrap();
            assert_eq!(a, b, "degree {i}");
        }
    }
}
