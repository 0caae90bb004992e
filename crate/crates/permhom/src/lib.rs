//! Permutation homology, intersection homology, and homology stratifications
//! of finite simplicial complexes, computed exactly over the integers.
//!
//! The crate is organized bottom-up:
//!
//! * [`simplicial`] - finite abstract simplicial complexes, links, stars,
//!   skeleta, and subcomplex masks.
//! * [`subdivision`] - labeled barycentric subdivision (the first derived
//!   complex) and full subcomplexes spanned by barycentre dimensions.
//! * [`matrix`] - sparse exact-integer matrices and Smith normal form with
//!   unimodular transforms.
//! * [`abelian`] - finitely generated abelian groups in canonical form and
//!   lattice subquotients.
//! * [`homology`] - simplicial chain complexes, absolute and relative
//!   homology with explicit generators, inclusion-induced maps, and image
//!   subgroups.
//! * [`perm`] - the combinatorics of permutations: d-tables, allowability,
//!   V-shapes, perversities, and reductions.
//! * [`tower`] - permutation skeleta of the first derived complex and the
//!   permutation homology groups computed two independent ways, plus
//!   intersection homology by perversity and subdivision-invariance checks.
//! * [`stratify`] - local homology, homology-manifold detection, the
//!   intrinsic homology stratification, and stratification strength checks.
//! * [`corpus`] - the built-in example complexes.

pub mod abelian;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod matrix;
pub mod perm;
pub mod simplicial;
pub mod stratify;
pub mod subdivision;
pub mod tower;

pub use abelian::FgAbGroup;
pub use error::{Result, TopologyError};
pub use perm::{DTable, Permutation, Perversity};
pub use simplicial::{SimplicialComplex, Subcomplex};
pub use subdivision::LabeledSubdivision;
