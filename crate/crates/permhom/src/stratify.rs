//! Local homology, homology-manifold detection, and homology
//! stratifications.
//!
//! The local homology of a space at a point interior to a simplex sigma is
//! modelled simplicially as H_*(K, C(sigma)), where C(sigma) is the
//! complement of the open star. For a face sigma <= tau the inclusion
//! C(sigma) <= C(tau) induces the comparison map q between the local
//! groups at the two simplexes; q is an isomorphism in all degrees exactly
//! when H_*(C(tau), C(sigma)) vanishes, which is the criterion used
//! throughout. "Close to" a simplex means: in the interior of one of its
//! cofaces.

use std::collections::{BTreeSet, HashMap};

use crate::abelian::FgAbGroup;
use crate::error::{Result, TopologyError};
use crate::homology::{pair_map_is_iso, reduced_homology, relative_homology_masks, ChainComplex, GroupCalc};
use crate::simplicial::{SimplicialComplex, Subcomplex, Vertex};

/// A nested chain of subcomplexes X_0 <= X_1 <= ... <= X_n = K.
#[derive(Clone, Debug)]
pub struct Filtration {
    levels: Vec<Subcomplex>,
}

impl Filtration {
    /// Builds a filtration from level masks X_0..=X_n and validates it.
    pub fn new(k: &SimplicialComplex, levels: Vec<Subcomplex>) -> Result<Filtration> {
        let f = Filtration { levels };
        f.validate(k)?;
        Ok(f)
    }

    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let n = k.dim();
        if n < 0 {
            return Err(TopologyError::EmptyComplex);
        }
        if self.levels.len() != (n + 1) as usize {
            return Err(TopologyError::InvalidFiltration(format!(
                "expected {} levels for a complex of dimension {n}, got {}",
                n + 1,
                self.levels.len()
            )));
        }
        for (j, level) in self.levels.iter().enumerate() {
            if level.universe_len() != k.simplex_count() {
                return Err(TopologyError::InvalidFiltration(
                    "level mask does not match the complex".into(),
                ));
            }
            if !level.is_face_closed(k) {
                return Err(TopologyError::InvalidFiltration(format!(
                    "level {j} is not a subcomplex"
                )));
            }
            if level.dim(k) > j as isize {
                return Err(TopologyError::InvalidFiltration(format!(
                    "level {j} has dimension {}",
                    level.dim(k)
                )));
            }
            if j > 0 && !self.levels[j - 1].is_subset_of(level) {
                return Err(TopologyError::InvalidFiltration(format!(
                    "level {} is not contained in level {j}",
                    j - 1
                )));
            }
        }
        if self.levels.last().unwrap().count() != k.simplex_count() {
            return Err(TopologyError::InvalidFiltration("top level must be the whole complex".into()));
        }
        Ok(())
    }

    /// The trivial one-stratum filtration.
    pub fn one_stratum(k: &SimplicialComplex) -> Filtration {
        let n = k.dim().max(0) as usize;
        let mut levels = vec![Subcomplex::empty(k); n];
        levels.push(Subcomplex::full(k));
        Filtration { levels }
    }

    /// The skeleton filtration X_j = j-skeleton.
    pub fn skeleta(k: &SimplicialComplex) -> Filtration {
        let n = k.dim().max(0) as usize;
        let levels = (0..=n)
            .map(|j| {
                Subcomplex::from_ids(k, (0..=j).flat_map(|d| k.ids_of_dim(d)))
            })
            .collect();
        Filtration { levels }
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, j: usize) -> &Subcomplex {
        &self.levels[j]
    }

    pub fn levels(&self) -> &[Subcomplex] {
        &self.levels
    }

    /// The j-th stratum X_j minus X_{j-1} (as a set of simplex interiors).
    pub fn stratum(&self, j: usize) -> Subcomplex {
        if j == 0 {
            self.levels[0].clone()
        } else {
            self.levels[j].minus(&self.levels[j - 1])
        }
    }

    /// Levels j with a nonempty stratum.
    pub fn occupancy(&self) -> BTreeSet<usize> {
        (0..=self.n()).filter(|&j| !self.stratum(j).is_empty()).collect()
    }
}

/// Cached local-homology comparisons over one ambient complex.
pub struct LocalCalc<'k> {
    pub k: &'k SimplicialComplex,
    complements: HashMap<usize, Subcomplex>,
    iso: HashMap<(usize, usize), bool>,
    profiles: HashMap<usize, Vec<FgAbGroup>>,
}

impl<'k> LocalCalc<'k> {
    pub fn new(k: &'k SimplicialComplex) -> Self {
        LocalCalc { k, complements: HashMap::new(), iso: HashMap::new(), profiles: HashMap::new() }
    }

    fn complement(&mut self, id: usize) -> Subcomplex {
        if let Some(c) = self.complements.get(&id) {
            return c.clone();
        }
        let c = self.k.complement_star_mask_of(id);
        self.complements.insert(id, c.clone());
        c
    }

    /// Whether q: H_*(K, C(sigma)) -> H_*(K, C(tau)) is an isomorphism in
    /// every degree, for sigma a face of tau.
    pub fn q_is_iso(&mut self, sigma: usize, tau: usize) -> bool {
        if sigma == tau {
            return true;
        }
        if let Some(&v) = self.iso.get(&(sigma, tau)) {
            return v;
        }
        let cs = self.complement(sigma);
        let ct = self.complement(tau);
        let v = pair_map_is_iso(self.k, &cs, &ct);
        self.iso.insert((sigma, tau), v);
        v
    }

    /// Local homology profile H_k(K, C(sigma)) for k in 0..=n.
    pub fn profile(&mut self, id: usize) -> Vec<FgAbGroup> {
        if let Some(p) = self.profiles.get(&id) {
            return p.clone();
        }
        let n = self.k.dim().max(0) as usize;
        let c = self.complement(id);
        let full = Subcomplex::full(self.k);
        let cc = ChainComplex::build(self.k, &full, Some(&c), false);
        let calc = GroupCalc::new(&cc);
        let p: Vec<FgAbGroup> = (0..=n as isize).map(|d| calc.group(d)).collect();
        self.profiles.insert(id, p.clone());
        p
    }

    /// Local constancy at sigma within a level: q is an isomorphism into
    /// every coface of sigma that lies in the level.
    pub fn is_locally_constant(&mut self, sigma: usize, level: &Subcomplex) -> bool {
        let cofaces: Vec<usize> = self
            .k
            .star(sigma)
            .iter()
            .copied()
            .filter(|&t| t != sigma && level.contains(t))
            .collect();
        cofaces.into_iter().all(|t| self.q_is_iso(sigma, t))
    }
}

/// H_k(K, K - x) for x interior to sigma, computed as H_k(K, C(sigma)).
pub fn local_homology(k: &SimplicialComplex, sigma: &[Vertex], deg: isize) -> Result<FgAbGroup> {
    let id = k.resolve(sigma)?;
    let c = k.complement_star_mask_of(id);
    Ok(relative_homology_masks(k, &Subcomplex::full(k), &c, deg))
}

/// The full local homology profile at sigma, degrees 0..=dim K.
pub fn local_profile(k: &SimplicialComplex, sigma: &[Vertex]) -> Result<Vec<FgAbGroup>> {
    let id = k.resolve(sigma)?;
    Ok(LocalCalc::new(k).profile(id))
}

/// Whether the comparison map q between the local homology at sigma and at
/// its coface tau is an isomorphism in every degree.
pub fn local_map_is_iso(k: &SimplicialComplex, sigma: &[Vertex], tau: &[Vertex]) -> Result<bool> {
    let sid = k.resolve(sigma)?;
    let tid = k.resolve(tau)?;
    let s = k.simplex(sid);
    let t = k.simplex(tid);
    if !s.iter().all(|v| t.contains(v)) {
        return Err(TopologyError::NotAFace(sigma.to_vec(), tau.to_vec()));
    }
    Ok(LocalCalc::new(k).q_is_iso(sid, tid))
}

/// Whether local homology is constant near sigma within the given level
/// (all comparison maps into cofaces inside the level are isomorphisms).
pub fn is_locally_constant(
    k: &SimplicialComplex,
    sigma: &[Vertex],
    level: &Subcomplex,
) -> Result<bool> {
    let id = k.resolve(sigma)?;
    if !level.contains(id) {
        return Err(TopologyError::MissingSimplex(sigma.to_vec()));
    }
    Ok(LocalCalc::new(k).is_locally_constant(id, level))
}

/// The intrinsic homology stratification: X_n = K, and descending one level
/// at a time, a simplex stays in X_{j-1} unless it lies in a j-simplex of
/// X_j and the local homology of K is locally constant at it on X_j. The
/// kept set is face-closed at every step without repair; this is asserted,
/// not repaired.
pub fn intrinsic_stratification(k: &SimplicialComplex) -> Result<Filtration> {
    k.require_principal()?;
    let n = k.dim() as usize;
    let mut calc = LocalCalc::new(k);
    let mut levels = vec![Subcomplex::empty(k); n + 1];
    levels[n] = Subcomplex::full(k);
    for j in (1..=n).rev() {
        let xj = levels[j].clone();
        let mut next = Subcomplex::empty(k);
        for sigma in xj.ids() {
            let in_top = k
                .star(sigma)
                .iter()
                .any(|&t| k.dim_of(t) == j && xj.contains(t));
            let excluded = in_top && calc.is_locally_constant(sigma, &xj);
            if !excluded {
                next.insert(sigma);
            }
        }
        assert!(
            next.is_face_closed(k),
            "the non-constant locus failed to be face-closed at level {j}"
        );
        assert!(next.dim(k) < j as isize, "level {} exceeds dimension {}", j - 1, j - 1);
        levels[j - 1] = next;
    }
    Ok(Filtration { levels })
}

/// Whether K is a homology n-manifold: the link of every simplex has the
/// reduced homology of a sphere of the complementary dimension.
pub fn is_homology_manifold(k: &SimplicialComplex) -> Result<bool> {
    k.require_principal()?;
    let n = k.dim() as usize;
    for id in 0..k.simplex_count() {
        let m = n as isize - k.dim_of(id) as isize - 1;
        let link = k.link(k.simplex(id))?;
        let top = link.dim().max(m);
        for deg in -1..=top {
            let g = reduced_homology(&link, deg);
            let expect_z = deg == m;
            if expect_z && g != FgAbGroup::free(1) {
                return Ok(false);
            }
            if !expect_z && !g.is_trivial() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same decision via local homology profiles; used to cross-check the
/// link route.
pub fn is_homology_manifold_via_profiles(k: &SimplicialComplex) -> Result<bool> {
    k.require_principal()?;
    let n = k.dim() as usize;
    let mut calc = LocalCalc::new(k);
    for id in 0..k.simplex_count() {
        let profile = calc.profile(id);
        for (deg, g) in profile.iter().enumerate() {
            let expect_z = deg == n;
            if expect_z && *g != FgAbGroup::free(1) {
                return Ok(false);
            }
            if !expect_z && !g.is_trivial() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the filtration is a homology stratification: the ambient local
/// homology is locally constant on every stratum.
pub fn check_h_stratification(k: &SimplicialComplex, f: &Filtration) -> Result<bool> {
    f.validate(k)?;
    let mut calc = LocalCalc::new(k);
    for j in 0..=f.n() {
        let stratum = f.stratum(j);
        for sigma in stratum.ids() {
            for &tau in k.star(sigma) {
                if tau != sigma && stratum.contains(tau) && !calc.q_is_iso(sigma, tau) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Local constancy of the local homology of the complex X_k on the j-th
/// stratum of the filtration. Pairs of simplexes are carried into the
/// materialized level complex.
fn stratum_constant_in_level(
    k: &SimplicialComplex,
    f: &Filtration,
    j: usize,
    level_idx: usize,
) -> bool {
    let stratum = f.stratum(j);
    if stratum.is_empty() {
        return true;
    }
    let level = f.level(level_idx).materialize(k);
    let mut calc = LocalCalc::new(&level);
    for sigma in stratum.ids() {
        let s_in_level = level.id_of(k.simplex(sigma)).expect("stratum lies in every higher level");
        for &tau in k.star(sigma) {
            if tau == sigma || !stratum.contains(tau) {
                continue;
            }
            let t_in_level = level.id_of(k.simplex(tau)).expect("stratum lies in every higher level");
            if !calc.q_is_iso(s_in_level, t_in_level) {
                return false;
            }
        }
    }
    true
}

/// Strong stratification: both the ambient local homology and the local
/// homology of the level complex X_j are locally constant on each stratum.
pub fn check_strong(k: &SimplicialComplex, f: &Filtration) -> Result<bool> {
    if !check_h_stratification(k, f)? {
        return Ok(false);
    }
    for j in 0..=f.n() {
        if !stratum_constant_in_level(k, f, j, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Very strong stratification: the local homology of every level complex
/// X_k with k >= j is locally constant on the j-th stratum.
pub fn check_very_strong(k: &SimplicialComplex, f: &Filtration) -> Result<bool> {
    f.validate(k)?;
    for j in 0..=f.n() {
        for level_idx in j..=f.n() {
            if !stratum_constant_in_level(k, f, j, level_idx) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the open j-th stratum is a homology j-manifold along its own
/// simplexes, judged inside the level complex X_j. None when the stratum is
/// empty.
pub fn stratum_is_homology_manifold(
    k: &SimplicialComplex,
    f: &Filtration,
    j: usize,
) -> Option<bool> {
    let stratum = f.stratum(j);
    if stratum.is_empty() {
        return None;
    }
    let level = f.level(j).materialize(k);
    let mut calc = LocalCalc::new(&level);
    for sigma in stratum.ids() {
        let sid = level.id_of(k.simplex(sigma)).expect("stratum lies in its level");
        let profile = calc.profile(sid);
        for (deg, g) in profile.iter().enumerate() {
            let expect_z = deg == j;
            if expect_z && *g != FgAbGroup::free(1) {
                return Some(false);
            }
            if !expect_z && !g.is_trivial() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Distinct local homology profiles on a stratum, each with the first
/// simplex realizing it.
pub fn stratum_profiles(
    k: &SimplicialComplex,
    f: &Filtration,
    j: usize,
) -> Vec<(Vec<Vertex>, Vec<FgAbGroup>)> {
    let mut calc = LocalCalc::new(k);
    let mut seen: Vec<(Vec<Vertex>, Vec<FgAbGroup>)> = Vec::new();
    for sigma in f.stratum(j).ids() {
        let p = calc.profile(sigma);
        if !seen.iter().any(|(_, q)| *q == p) {
            seen.push((k.simplex(sigma).to_vec(), p));
        }
    }
    seen
}

/// Maximal simplexes of a level: members with no proper coface in the level.
pub fn level_maximal_simplexes(k: &SimplicialComplex, level: &Subcomplex) -> Vec<Vec<Vertex>> {
    level
        .ids()
        .filter(|&id| k.star(id).iter().all(|&t| t == id || !level.contains(t)))
        .map(|id| k.simplex(id).to_vec())
        .collect()
}

/// One nonempty stratum of a stratification report.
#[derive(Clone, Debug)]
pub struct StratumReport {
    pub level: usize,
    pub open_simplex_count: usize,
    /// Distinct ambient local homology profiles on the stratum, each with
    /// the first simplex realizing it.
    pub profiles: Vec<(Vec<Vertex>, Vec<FgAbGroup>)>,
    /// Whether the open stratum is a homology manifold of its dimension.
    pub homology_manifold: Option<bool>,
}

/// The intrinsic stratification of a complex together with per-stratum
/// local data and the stratification-strength flags. All flags are
/// recomputable from the filtration via the checker functions.
#[derive(Clone, Debug)]
pub struct StratificationReport {
    pub filtration: Filtration,
    pub strata: Vec<StratumReport>,
    pub is_h_stratification: bool,
    /// Present when strength checks were requested.
    pub is_strong: Option<bool>,
    pub is_very_strong: Option<bool>,
    /// Whether the whole complex is a homology manifold.
    pub homology_manifold: bool,
}

/// Computes the intrinsic stratification and assembles the report.
pub fn stratification_report(
    k: &SimplicialComplex,
    with_strong: bool,
    with_very_strong: bool,
) -> Result<StratificationReport> {
    let f = intrinsic_stratification(k)?;
    let mut strata = Vec::new();
    for j in 0..=f.n() {
        let stratum = f.stratum(j);
        if stratum.is_empty() {
            continue;
        }
        strata.push(StratumReport {
            level: j,
            open_simplex_count: stratum.count(),
            profiles: stratum_profiles(k, &f, j),
            homology_manifold: stratum_is_homology_manifold(k, &f, j),
        });
    }
    let is_h = check_h_stratification(k, &f)?;
    let is_strong = if with_strong { Some(check_strong(k, &f)?) } else { None };
    let is_very_strong = if with_very_strong { Some(check_very_strong(k, &f)?) } else { None };
    let homology_manifold = is_homology_manifold(k)?;
    Ok(StratificationReport {
        filtration: f,
        strata,
        is_h_stratification: is_h,
        is_strong,
        is_very_strong,
        homology_manifold,
    })
}
