//! Permutations of {0..n}, their d-tables, allowability, V-shapes,
//! perversities, and reductions.
//!
//! The d-table entry d[i][j] counts the values at most j among the first
//! i+1 values of the permutation, minus one. Closed forms for d can fall
//! below -1 where the definitional value bottoms out at -1; any such bound
//! means "empty" as a dimension, so comparisons clamp closed-form values
//! at -1.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::error::{Result, TopologyError};

/// A permutation of {0, ..., n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.one_line())
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n1 = values.len();
        if n1 == 0 {
            return Err(TopologyError::InvalidPermutation("empty value list".into()));
        }
        let mut seen = vec![false; n1];
        for &v in &values {
            if v >= n1 || seen[v] {
                return Err(TopologyError::InvalidPermutation(format!(
                    "{values:?} is not a bijection of 0..={}",
                    n1 - 1
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (0..=n).collect() }
    }

    /// The reversal k -> n - k, corresponding to the zero perversity.
    pub fn reversal(n: usize) -> Self {
        Permutation { values: (0..=n).rev().collect() }
    }

    /// Ambient dimension n (the permutation acts on 0..=n).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn apply(&self, k: usize) -> usize {
        self.values[k]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// The set {pi(0), ..., pi(i)}.
    pub fn prefix_set(&self, i: usize) -> BTreeSet<usize> {
        self.values[..=i].iter().copied().collect()
    }

    pub fn one_line(&self) -> String {
        self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Enumerates all permutations of {0..n} in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut values: Vec<usize> = (0..=n).collect();
        loop {
            out.push(Permutation { values: values.clone() });
            // Next lexicographic permutation.
            let mut i = values.len() - 1;
            while i > 0 && values[i - 1] >= values[i] {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            let mut j = values.len() - 1;
            while values[j] <= values[i - 1] {
                j -= 1;
            }
            values.swap(i - 1, j);
            values[i..].reverse();
        }
        out
    }

    pub fn d_table(&self) -> DTable {
        DTable::of(self)
    }

    /// Condition (*): whenever 0 <= d[i][j] < j, the next row steps up,
    /// d[i+1][j] = d[i][j] + 1. Returns the first failing (i, j) otherwise.
    pub fn allowability_witness(&self) -> Option<(usize, usize)> {
        let d = self.d_table();
        let n = self.n();
        for i in 0..n {
            for j in 0..=n {
                let dij = d.get(i, j);
                if dij >= 0 && dij < j as i64 && d.get(i + 1, j) != dij + 1 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_allowable(&self) -> bool {
        self.allowability_witness().is_none()
    }

    /// Condition (*) restricted to the occupied levels of a filtration:
    /// only values of j with a nonempty j-th stratum are checked.
    pub fn is_filtration_allowable(&self, occupancy: &BTreeSet<usize>) -> bool {
        let d = self.d_table();
        let n = self.n();
        for i in 0..n {
            for &j in occupancy {
                let dij = d.get(i, j);
                if dij >= 0 && dij < j as i64 && d.get(i + 1, j) != dij + 1 {
                    return false;
                }
            }
        }
        true
    }

    /// V-shape data: monotone decreasing down to the unique zero at
    /// position `pivot`, then monotone increasing. None when not V-shaped.
    pub fn v_shape(&self) -> Option<VShapeData> {
        let u = self.values.iter().position(|&v| v == 0).expect("bijection contains 0");
        for w in self.values[..=u].windows(2) {
            if w[0] <= w[1] {
                return None;
            }
        }
        for w in self.values[u..].windows(2) {
            if w[0] >= w[1] {
                return None;
            }
        }
        let s: BTreeSet<usize> = self.values[..u].iter().copied().collect();
        let n = self.n();
        let q = (0..=n).map(|j| s.iter().filter(|&&v| v > j).count() as i64).collect();
        Some(VShapeData { pivot: u, s, q })
    }

    pub fn is_v_shaped(&self) -> bool {
        self.v_shape().is_some()
    }

    /// Removes 0 from the codomain and its preimage from the domain, then
    /// reindexes both order-preservingly.
    pub fn reduce(&self) -> Result<Permutation> {
        if self.n() == 0 {
            return Err(TopologyError::CannotReduce);
        }
        let values: Vec<usize> =
            self.values.iter().filter(|&&v| v != 0).map(|&v| v - 1).collect();
        Permutation::new(values)
    }

    /// The complementary permutation k -> n - pi(k).
    pub fn complement(&self) -> Permutation {
        let n = self.n();
        Permutation { values: self.values.iter().map(|&v| n - v).collect() }
    }

    /// The perversity corresponding to a V-shaped permutation; errors on
    /// permutations that are not V-shaped.
    pub fn to_perversity(&self) -> Result<Perversity> {
        let vs = self
            .v_shape()
            .ok_or_else(|| TopologyError::NotVShaped(self.values.clone()))?;
        let n = self.n();
        // p_{n-j} = n - j - q_j.
        let p: Vec<i64> = (0..=n).map(|c| c as i64 - vs.q[n - c]).collect();
        Perversity::new(p)
    }
}

impl FromStr for Permutation {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self> {
        let values: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse::<usize>()).collect();
        match values {
            Ok(v) => Permutation::new(v),
            Err(e) => Err(TopologyError::InvalidPermutation(format!("{s:?}: {e}"))),
        }
    }
}

/// The matrix d[i][j] = |pi[0,i] cap [0,j]| - 1 for 0 <= i, j <= n.
#[derive(Clone, PartialEq, Eq)]
pub struct DTable {
    n: usize,
    d: Vec<Vec<i64>>,
}

impl DTable {
    pub fn of(pi: &Permutation) -> DTable {
        let n = pi.n();
        let mut d = vec![vec![0i64; n + 1]; n + 1];
        // counts[j] tracks |pi[0,i] cap [0,j]| incrementally over i.
        let mut counts = vec![0i64; n + 1];
        for i in 0..=n {
            let v = pi.apply(i);
            for j in v..=n {
                counts[j] += 1;
            }
            for j in 0..=n {
                d[i][j] = counts[j] - 1;
            }
        }
        DTable { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.d
    }
}

impl std::fmt::Display for DTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.d {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Data of a V-shaped permutation: the pivot position of 0, the set of
/// values before the pivot, and q_j = |S cap [j+1, n]|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VShapeData {
    pub pivot: usize,
    pub s: BTreeSet<usize>,
    pub q: Vec<i64>,
}

/// A perversity: nondecreasing integers p_0 = 0 <= p_1 <= ... <= p_n with
/// unit steps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perversity {
    p: Vec<i64>,
}

impl std::fmt::Debug for Perversity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.one_line())
    }
}

impl std::fmt::Display for Perversity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

impl Perversity {
    pub fn new(p: Vec<i64>) -> Result<Self> {
        if p.is_empty() {
            return Err(TopologyError::InvalidPerversity("empty sequence".into()));
        }
        if p[0] != 0 {
            return Err(TopologyError::InvalidPerversity(format!("p_0 must be 0, got {}", p[0])));
        }
        for w in p.windows(2) {
            if w[1] - w[0] != 0 && w[1] - w[0] != 1 {
                return Err(TopologyError::InvalidPerversity(format!(
                    "steps must be 0 or 1, got {} -> {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Perversity { p })
    }

    /// The zero perversity on 0..=n.
    pub fn zero(n: usize) -> Self {
        Perversity { p: vec![0; n + 1] }
    }

    /// The maximal perversity p_c = c on 0..=n.
    pub fn maximal(n: usize) -> Self {
        Perversity { p: (0..=n as i64).collect() }
    }

    pub fn n(&self) -> usize {
        self.p.len() - 1
    }

    pub fn get(&self, c: usize) -> i64 {
        self.p[c]
    }

    pub fn values(&self) -> &[i64] {
        &self.p
    }

    pub fn one_line(&self) -> String {
        self.p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Enumerates all perversities on 0..=n (one per subset of step
    /// positions).
    pub fn all(n: usize) -> Vec<Perversity> {
        let mut out = Vec::new();
        for bits in 0u64..(1 << n) {
            let mut p = Vec::with_capacity(n + 1);
            let mut cur = 0i64;
            p.push(0);
            for step in 0..n {
                if bits >> step & 1 == 1 {
                    cur += 1;
                }
                p.push(cur);
            }
            out.push(Perversity { p });
        }
        out
    }

    /// The unique V-shaped permutation whose d-table realizes this
    /// perversity: values before the pivot are S = {j : p_{n-j} = p_{n-j+1},
    /// j > 0} in decreasing order, then 0, then the rest increasing.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.n();
        let s: BTreeSet<usize> =
            (1..=n).filter(|&j| self.p[n - j] == self.p[n - j + 1]).collect();
        let mut values: Vec<usize> = s.iter().rev().copied().collect();
        values.push(0);
        for v in 1..=n {
            if !s.contains(&v) {
                values.push(v);
            }
        }
        Permutation::new(values).expect("construction yields a bijection")
    }

    /// The closed-form d-value max(-1, min(j, i + j - n + p_{n-j})).
    pub fn d_formula(&self, i: usize, j: usize) -> i64 {
        let n = self.n() as i64;
        let raw = (i as i64 + j as i64 - n + self.p[self.n() - j]).min(j as i64);
        raw.max(-1)
    }
}

impl FromStr for Perversity {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Self> {
        let values: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        match values {
            Ok(v) => Perversity::new(v),
            Err(e) => Err(TopologyError::InvalidPerversity(format!("{s:?}: {e}"))),
        }
    }
}
