//! Finitely generated abelian groups in canonical form, and lattice
//! subquotients.
//!
//! Groups are stored as a free rank plus a torsion divisor chain
//! d1 | d2 | ... with every entry at least 2. The subquotient routine turns
//! a pair of lattices L2 <= L1 <= Z^t into the isomorphism type of L1/L2
//! together with generator vectors in ambient coordinates; it is the common
//! engine behind image subgroups and homology of complexes of presented
//! groups.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::{smith_normal_form, SnfOptions, SparseMat};

/// A finitely generated abelian group: `Z^rank + Z/d1 + Z/d2 + ...` with
/// d1 | d2 | ... and each di >= 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    /// Builds a group from a free rank and torsion divisors. Divisors equal
    /// to one are dropped; the rest must already form a divisor chain.
    pub fn from_parts<I: IntoIterator<Item = BigInt>>(rank: usize, divisors: I) -> Self {
        let torsion: Vec<BigInt> = divisors.into_iter().filter(|d| !d.is_one()).collect();
        for d in &torsion {
            assert!(d.abs() >= BigInt::from(2), "torsion divisor must be >= 2, got {d}");
        }
        for w in torsion.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "torsion is not a divisor chain");
        }
        FgAbGroup { rank, torsion }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 2);
        FgAbGroup { rank: 0, torsion: vec![BigInt::from(order)] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum.
    pub fn plus(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut divisors: Vec<BigInt> =
            self.torsion.iter().chain(other.torsion.iter()).cloned().collect();
        // Restore a divisor chain by repeated pairwise gcd/lcm.
        loop {
            let mut changed = false;
            divisors.sort();
            for i in 1..divisors.len() {
                let (a, b) = (divisors[i - 1].clone(), divisors[i].clone());
                if !(&b % &a).is_zero() {
                    let g = num_integer::gcd(a.clone(), b.clone());
                    let l = &a * &b / &g;
                    divisors[i - 1] = g;
                    divisors[i] = l;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        FgAbGroup::from_parts(self.rank + other.rank, divisors)
    }
}

impl std::fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl std::fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// A subquotient L1/L2 of Z^t presented on explicit generators.
pub struct Subquotient {
    pub group: FgAbGroup,
    /// One ambient vector per kept generator, parallel to `orders`.
    pub gens: Vec<Vec<(usize, BigInt)>>,
    /// Generator orders: 0 for free generators, otherwise >= 2. Torsion
    /// generators come first in divisor-chain order, then free generators.
    pub orders: Vec<BigInt>,
}

/// Isomorphism type and generators of L1/L2, where L1 is spanned by the
/// columns of `l1` (plus nothing else), L2 by the columns of `l2`, and
/// L2 <= L1 <= Z^t must hold. Panics if L2 is not contained in L1, which
/// callers guarantee structurally.
pub fn lattice_subquotient(t: usize, l1: &SparseMat, l2: &SparseMat) -> Subquotient {
    assert_eq!(l1.nrows(), t);
    assert_eq!(l2.nrows(), t);
    // Basis of L1 from the column SNF: with u m v = d, the image of m is
    // spanned by d_i * (uinv column i).
    let snf1 = smith_normal_form(l1, SnfOptions { u: true, uinv: true, v: false, vinv: false });
    let rho = snf1.rank();
    let u1 = snf1.u.as_ref().unwrap();
    let u1inv = snf1.uinv.as_ref().unwrap();
    let mut basis = SparseMat::zero(t, rho);
    for i in 0..rho {
        for (r, val) in u1inv.col(i) {
            basis.set(*r, i, val * &snf1.diag[i]);
        }
    }
    // Coordinates of L2 in that basis: x = diag^-1 (u1 l2) restricted to the
    // first rho rows; rows beyond rho must vanish and the division must be
    // exact, both of which certify L2 <= L1.
    let ul2 = u1.mul(l2);
    let mut coords = SparseMat::zero(rho, l2.ncols());
    for c in 0..ul2.ncols() {
        for (r, val) in ul2.col(c) {
            assert!(*r < rho, "relation lattice escapes the generator lattice");
            let (q, rem) = num_integer::div_rem(val.clone(), snf1.diag[*r].clone());
            assert!(rem.is_zero(), "relation lattice escapes the generator lattice");
            coords.set(*r, c, q);
        }
    }
    // SNF of the coordinates gives the quotient.
    let snf2 = smith_normal_form(&coords, SnfOptions { u: true, uinv: true, v: false, vinv: false });
    let u2inv = snf2.uinv.as_ref().unwrap();
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    for j in 0..rho {
        let order = if j < snf2.rank() { snf2.diag[j].clone() } else { BigInt::zero() };
        if order.is_one() {
            continue;
        }
        // Generator vector: basis * (u2inv column j).
        let col: Vec<(usize, BigInt)> = u2inv.col(j).to_vec();
        gens.push(basis.mul_vec(&col));
        orders.push(order);
    }
    let free = rho - snf2.rank();
    let group = FgAbGroup::from_parts(free, snf2.diag.iter().cloned());
    Subquotient { group, gens, orders }
}

/// Generators of the lattice {x : f x lies in the column span of rels},
/// i.e. the kernel of the induced map Z^s -> Z^t / span(rels). Returned as
/// the columns of a matrix with s rows.
pub fn preimage_lattice(f: &SparseMat, rels: &SparseMat) -> SparseMat {
    assert_eq!(f.nrows(), rels.nrows());
    let s = f.ncols();
    let stacked = f.hstack(rels);
    let snf = smith_normal_form(&stacked, SnfOptions { u: false, uinv: false, v: true, vinv: false });
    let v = snf.v.as_ref().unwrap();
    let kernel_cols = stacked.ncols() - snf.rank();
    let mut out = SparseMat::zero(s, kernel_cols);
    for (i, c) in (snf.rank()..stacked.ncols()).enumerate() {
        for (r, val) in v.col(c) {
            if *r < s {
                out.set(*r, i, val.clone());
            }
        }
    }
    out
}
