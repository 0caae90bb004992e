//! Randomized invariants: complex combinatorics, Smith normal form
//! transforms, exactness bookkeeping, and the equivalence of the two
//! pair-isomorphism decision procedures.

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use permhom::homology::{
    homology_groups, inclusion_induced_map, pair_map_is_iso, pair_map_is_iso_direct,
    relative_homology_masks, ChainComplex, GroupCalc,
};
use permhom::matrix::{smith_normal_form, SnfOptions, SparseMat};
use permhom::perm::Permutation;
use permhom::simplicial::{SimplicialComplex, Subcomplex};
use permhom::subdivision::{flag_count, LabeledSubdivision};

/// Random small complexes: up to five maximal simplexes on seven vertices.
fn complexes() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0i64..7, 1..=4), 1..=5)
        .prop_map(|tuples| {
            let maximal: Vec<Vec<i64>> =
                tuples.into_iter().map(|s| s.into_iter().collect()).collect();
            SimplicialComplex::from_maximal(maximal).unwrap()
        })
}

/// A random face-closed subcomplex mask: close a random subset of the
/// simplexes under faces.
fn subcomplex_of(k: &SimplicialComplex, seed: &[bool]) -> Subcomplex {
    let mut mask = Subcomplex::empty(k);
    let mut queue: Vec<usize> =
        (0..k.simplex_count()).filter(|&id| seed[id % seed.len()]).collect();
    while let Some(id) = queue.pop() {
        if !mask.contains(id) {
            mask.insert(id);
            queue.extend(k.facets(id).iter().copied());
        }
    }
    mask
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_closure(k in complexes()) {
        for id in 0..k.simplex_count() {
            for &f in k.facets(id) {
                prop_assert!(f < k.simplex_count());
            }
            // Every subset tuple is present.
            let t = k.simplex(id).to_vec();
            for drop in 0..t.len() {
                if t.len() > 1 {
                    let mut face = t.clone();
                    face.remove(drop);
                    prop_assert!(k.contains(&face));
                }
            }
        }
    }

    #[test]
    fn complement_of_open_star_is_monotone(k in complexes()) {
        for tau in 0..k.simplex_count() {
            let ct = k.complement_star_mask_of(tau);
            for &sigma in k.facets(tau) {
                let cs = k.complement_star_mask_of(sigma);
                prop_assert!(cs.is_subset_of(&ct));
            }
        }
    }

    #[test]
    fn link_star_duality(k in complexes()) {
        for sid in 0..k.simplex_count() {
            let sigma = k.simplex(sid).to_vec();
            let link = k.link(&sigma).unwrap();
            for tid in 0..k.simplex_count() {
                let tau = k.simplex(tid);
                let disjoint = tau.iter().all(|v| !sigma.contains(v));
                let mut joined: Vec<i64> =
                    sigma.iter().copied().chain(tau.iter().copied()).collect();
                joined.sort_unstable();
                prop_assert_eq!(link.contains(tau), disjoint && k.contains(&joined));
            }
        }
    }

    #[test]
    fn subdivision_counts_flags(k in complexes()) {
        let sd = LabeledSubdivision::new(&k).unwrap();
        prop_assert_eq!(sd.complex.simplex_count(), flag_count(&k));
        // One vertex per simplex of the base.
        prop_assert_eq!(sd.complex.counts_by_dim()[0], k.simplex_count());
    }

    #[test]
    fn euler_characteristic_is_alternating_betti_sum(k in complexes()) {
        let betti: i64 = homology_groups(&k)
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 0 { g.rank() as i64 } else { -(g.rank() as i64) })
            .sum();
        prop_assert_eq!(betti, k.euler_characteristic());
    }

    #[test]
    fn boundary_squares_to_zero(k in complexes()) {
        let cc = ChainComplex::build(&k, &Subcomplex::full(&k), None, false);
        for deg in 1..cc.degrees() {
            prop_assert!(cc.boundary[deg - 1].mul(&cc.boundary[deg]).is_zero());
        }
    }

    #[test]
    fn long_exact_sequence_rank_bookkeeping(k in complexes(), seed in prop::collection::vec(any::<bool>(), 8)) {
        // ... -> H_i(L) -a-> H_i(K) -b-> H_i(K, L) -d-> H_{i-1}(L) -a'-> ...
        // Exactness forces rank H_i(K,L) = rank coker(a_i) + rank ker(a_{i-1}).
        let l = subcomplex_of(&k, &seed);
        if l.is_empty() {
            return Ok(());
        }
        let full = Subcomplex::full(&k);
        let top = k.dim() as usize;
        let rank_im: Vec<usize> = (0..=top)
            .map(|i| inclusion_induced_map(&k, &l, &full, i).image_group().rank())
            .collect();
        let cc_l = ChainComplex::build(&k, &l, None, false);
        let calc_l = GroupCalc::new(&cc_l);
        for i in 0..=top {
            let rel = relative_homology_masks(&k, &full, &l, i as isize);
            let h_k = homology_groups(&k)[i].rank();
            let h_l_prev =
                if i == 0 { 0 } else { calc_l.group(i as isize - 1).rank() };
            let coker = h_k - rank_im[i];
            let ker_prev = if i == 0 { 0 } else { h_l_prev - rank_im[i - 1] };
            prop_assert_eq!(rel.rank(), coker + ker_prev, "degree {}", i);
        }
    }

    #[test]
    fn pair_iso_decisions_agree(k in complexes(), seed_a in prop::collection::vec(any::<bool>(), 8), seed_b in prop::collection::vec(any::<bool>(), 8)) {
        // The vanishing criterion H_*(B, A) = 0 and the direct comparison of
        // induced maps must decide identically.
        let a = subcomplex_of(&k, &seed_a);
        let b0 = subcomplex_of(&k, &seed_b);
        let b = a.union(&b0);
        prop_assert_eq!(
            pair_map_is_iso(&k, &a, &b),
            pair_map_is_iso_direct(&k, &a, &b)
        );
    }

    #[test]
    fn smith_normal_form_contract(entries in prop::collection::vec((0usize..5, 0usize..6, -9i64..10), 0..14)) {
        let m = SparseMat::from_triplets(
            5,
            6,
            entries.into_iter().map(|(r, c, v)| (r, c, BigInt::from(v))),
        );
        let snf = smith_normal_form(&m, SnfOptions::all());
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        prop_assert!(u.mul(snf.uinv.as_ref().unwrap()).is_identity());
        prop_assert!(v.mul(snf.vinv.as_ref().unwrap()).is_identity());
        prop_assert_eq!(u.mul(&m).mul(v), snf.diag_matrix());
        for w in snf.diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn d_table_laws_at_larger_n(values in prop::collection::vec(any::<u16>(), 9)) {
        // Build a permutation of {0..8} by sorting keys.
        let n = values.len() - 1;
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by_key(|&i| (values[i], i));
        let pi = Permutation::new(idx).unwrap();
        let d = pi.d_table();
        for i in 0..=n {
            prop_assert_eq!(d.get(n, i), i as i64);
            prop_assert_eq!(d.get(i, n), i as i64);
            for j in 0..=n {
                prop_assert!(d.get(i, j) <= i.min(j) as i64);
            }
        }
        prop_assert_eq!(pi.is_allowable(), pi.is_v_shaped());
    }
}
