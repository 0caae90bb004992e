//! Sparse exact-integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision integers throughout; intermediate entry
//! growth during elimination must never overflow silently. Matrices are
//! stored in both row-major and column-major sorted vectors so that row and
//! column operations both run as linear merges, and the reduction selects
//! pivots by a minimum-fill heuristic (shortest row or column first, unit
//! entries preferred), which keeps boundary-matrix reductions close to
//! linear in practice.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse matrix over the integers. Row and column views are kept in
/// sync and both carry the values.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, BigInt)>>,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl std::fmt::Debug for SparseMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseMat({}x{}, nnz {})", self.nrows, self.ncols, self.nnz())
    }
}

/// value += add on a sorted sparse vector, erasing zeros.
fn vec_add_at(v: &mut Vec<(usize, BigInt)>, idx: usize, add: &BigInt) {
    match v.binary_search_by_key(&idx, |e| e.0) {
        Ok(pos) => {
            v[pos].1 += add;
            if v[pos].1.is_zero() {
                v.remove(pos);
            }
        }
        Err(pos) => {
            if !add.is_zero() {
                v.insert(pos, (idx, add.clone()));
            }
        }
    }
}

fn vec_set_at(v: &mut Vec<(usize, BigInt)>, idx: usize, val: BigInt) {
    match v.binary_search_by_key(&idx, |e| e.0) {
        Ok(pos) => {
            if val.is_zero() {
                v.remove(pos);
            } else {
                v[pos].1 = val;
            }
        }
        Err(pos) => {
            if !val.is_zero() {
                v.insert(pos, (idx, val));
            }
        }
    }
}

/// coeff * v with fast paths for the dominant unit coefficients.
#[derive(Clone, Copy)]
enum Coeff<'a> {
    One,
    MinusOne,
    Big(&'a BigInt),
}

impl<'a> Coeff<'a> {
    fn of(c: &'a BigInt) -> Coeff<'a> {
        if c.is_one() {
            Coeff::One
        } else if (-c).is_one() {
            Coeff::MinusOne
        } else {
            Coeff::Big(c)
        }
    }

    fn times(&self, v: &BigInt) -> BigInt {
        match self {
            Coeff::One => v.clone(),
            Coeff::MinusOne => -v,
            Coeff::Big(c) => *c * v,
        }
    }

    fn add_into(&self, acc: &mut BigInt, v: &BigInt) {
        match self {
            Coeff::One => *acc += v,
            Coeff::MinusOne => *acc -= v,
            Coeff::Big(c) => *acc += *c * v,
        }
    }
}

/// dst += coeff * src as sorted sparse vectors. Consumes dst so untouched
/// entries are moved, not cloned. A short source is folded in by point
/// updates instead of a full remerge, which keeps repeated accumulation
/// onto one long line from going quadratic.
fn vec_merge_add(mut dst: Vec<(usize, BigInt)>, src: &[(usize, BigInt)], coeff: &BigInt) -> Vec<(usize, BigInt)> {
    if src.is_empty() || coeff.is_zero() {
        return dst;
    }
    if src.len() * 16 < dst.len() {
        let unit = Coeff::of(coeff);
        for (idx, v) in src {
            let add = unit.times(v);
            vec_add_at(&mut dst, *idx, &add);
        }
        return dst;
    }
    let coeff = Coeff::of(coeff);
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut di = dst.into_iter().peekable();
    let mut sj = src.iter().peekable();
    loop {
        match (di.peek(), sj.peek()) {
            (Some(a), Some(b)) if a.0 == b.0 => {
                let (idx, mut v) = di.next().unwrap();
                coeff.add_into(&mut v, &sj.next().unwrap().1);
                if !v.is_zero() {
                    out.push((idx, v));
                }
            }
            (Some(a), Some(b)) if a.0 < b.0 => out.push(di.next().unwrap()),
            (Some(_), Some(_)) => {
                let b = sj.next().unwrap();
                out.push((b.0, coeff.times(&b.1)));
            }
            (Some(_), None) => out.push(di.next().unwrap()),
            (None, Some(_)) => {
                let b = sj.next().unwrap();
                out.push((b.0, coeff.times(&b.1)));
            }
            (None, None) => break,
        }
    }
    out
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, cols: vec![Vec::new(); ncols], rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = Self::zero(nrows, ncols);
        for (r, c, v) in triplets {
            m.set(r, c, v);
        }
        m
    }

    pub fn from_dense(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Self::zero(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(r, c, BigInt::from(v));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&BigInt> {
        self.cols[c].binary_search_by_key(&r, |e| e.0).ok().map(|pos| &self.cols[c][pos].1)
    }

    /// Sets an entry, erasing it when the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        debug_assert!(r < self.nrows && c < self.ncols);
        vec_set_at(&mut self.cols[c], r, v.clone());
        vec_set_at(&mut self.rows[r], c, v);
    }

    /// Column entries as (row, value), sorted by row.
    pub fn col(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols[c]
    }

    /// Row entries as (col, value), sorted by column.
    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.rows[r]
    }

    pub fn col_nnz(&self, c: usize) -> usize {
        self.cols[c].len()
    }

    pub fn row_nnz(&self, r: usize) -> usize {
        self.rows[r].len()
    }

    /// col[dst] += coeff * col[src]
    pub fn add_mul_col(&mut self, dst: usize, src: usize, coeff: &BigInt) {
        debug_assert_ne!(dst, src);
        if coeff.is_zero() {
            return;
        }
        let unit = Coeff::of(coeff);
        let src_col = std::mem::take(&mut self.cols[src]);
        let dst_col = std::mem::take(&mut self.cols[dst]);
        self.cols[dst] = vec_merge_add(dst_col, &src_col, coeff);
        for (r, v) in &src_col {
            let add = unit.times(v);
            vec_add_at(&mut self.rows[*r], dst, &add);
        }
        self.cols[src] = src_col;
    }

    /// row[dst] += coeff * row[src]
    pub fn add_mul_row(&mut self, dst: usize, src: usize, coeff: &BigInt) {
        debug_assert_ne!(dst, src);
        if coeff.is_zero() {
            return;
        }
        let unit = Coeff::of(coeff);
        let src_row = std::mem::take(&mut self.rows[src]);
        let dst_row = std::mem::take(&mut self.rows[dst]);
        self.rows[dst] = vec_merge_add(dst_row, &src_row, coeff);
        for (c, v) in &src_row {
            let add = unit.times(v);
            vec_add_at(&mut self.cols[*c], dst, &add);
        }
        self.rows[src] = src_row;
    }

    pub fn negate_col(&mut self, c: usize) {
        for (r, v) in self.cols[c].iter_mut() {
            *v = -std::mem::take(v);
            let row = &mut self.rows[*r];
            let pos = row.binary_search_by_key(&c, |e| e.0).expect("views agree");
            row[pos].1 = -std::mem::take(&mut row[pos].1);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for (c, v) in self.rows[r].iter_mut() {
            *v = -std::mem::take(v);
            let col = &mut self.cols[*c];
            let pos = col.binary_search_by_key(&r, |e| e.0).expect("views agree");
            col[pos].1 = -std::mem::take(&mut col[pos].1);
        }
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols, other.nrows);
        let mut out = SparseMat::zero(self.nrows, other.ncols);
        for c in 0..other.ncols {
            let mut acc: Vec<(usize, BigInt)> = Vec::new();
            for (k, w) in &other.cols[c] {
                acc = vec_merge_add(acc, &self.cols[*k], w);
            }
            for (r, v) in &acc {
                vec_set_at(&mut out.rows[*r], c, v.clone());
            }
            out.cols[c] = acc;
        }
        out
    }

    /// self * v for a sparse column vector of (index, value) pairs.
    pub fn mul_vec(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: Vec<(usize, BigInt)> = Vec::new();
        for (k, w) in v {
            acc = vec_merge_add(acc, &self.cols[*k], w);
        }
        acc
    }

    /// Reorders rows: entry (r, c) moves to (perm[r], c).
    pub fn permute_rows(&self, perm: &[usize]) -> SparseMat {
        let mut out = SparseMat::zero(self.nrows, self.ncols);
        for c in 0..self.ncols {
            for (r, v) in &self.cols[c] {
                out.set(perm[*r], c, v.clone());
            }
        }
        out
    }

    /// Reorders columns: entry (r, c) moves to (r, perm[c]).
    pub fn permute_cols(&self, perm: &[usize]) -> SparseMat {
        let mut out = SparseMat::zero(self.nrows, self.ncols);
        for c in 0..self.ncols {
            for (r, v) in &self.cols[c] {
                out.set(*r, perm[c], v.clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat {
            nrows: self.ncols,
            ncols: self.nrows,
            cols: self.rows.clone(),
            rows: self.cols.clone(),
        }
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.nrows, other.nrows);
        let mut out = SparseMat::zero(self.nrows, self.ncols + other.ncols);
        for c in 0..self.ncols {
            for (r, v) in &self.cols[c] {
                out.set(*r, c, v.clone());
            }
        }
        for c in 0..other.ncols {
            for (r, v) in &other.cols[c] {
                out.set(*r, self.ncols + c, v.clone());
            }
        }
        out
    }

    /// Columns `range` as a new matrix.
    pub fn col_slice(&self, range: std::ops::Range<usize>) -> SparseMat {
        let mut out = SparseMat::zero(self.nrows, range.len());
        for (i, c) in range.enumerate() {
            for (r, v) in &self.cols[c] {
                out.set(*r, i, v.clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        if self.nnz() != self.nrows {
            return false;
        }
        (0..self.nrows).all(|i| self.get(i, i).map(|v| v.is_one()).unwrap_or(false))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for c in 0..self.ncols {
            for (r, v) in &self.cols[c] {
                out[*r][c] = v.clone();
            }
        }
        out
    }
}

/// Which unimodular transforms to keep while reducing. `u * m * v = d`.
#[derive(Clone, Copy, Default)]
pub struct SnfOptions {
    pub u: bool,
    pub uinv: bool,
    pub v: bool,
    pub vinv: bool,
}

impl SnfOptions {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn all() -> Self {
        SnfOptions { u: true, uinv: true, v: true, vinv: true }
    }
}

/// Result of a Smith normal form computation: `u * m * v` is diagonal with
/// positive entries `diag` forming a divisor chain d1 | d2 | ... placed at
/// positions (0,0), (1,1), ...; `u` and `v` are unimodular.
pub struct Snf {
    pub nrows: usize,
    pub ncols: usize,
    pub diag: Vec<BigInt>,
    pub u: Option<SparseMat>,
    pub uinv: Option<SparseMat>,
    pub v: Option<SparseMat>,
    pub vinv: Option<SparseMat>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The diagonal as a full matrix of the original shape.
    pub fn diag_matrix(&self) -> SparseMat {
        let mut d = SparseMat::zero(self.nrows, self.ncols);
        for (i, v) in self.diag.iter().enumerate() {
            d.set(i, i, v.clone());
        }
        d
    }

    /// Divisors greater than one.
    pub fn torsion_divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &SparseMat, opts: SnfOptions) -> Snf {
    SmithCalc::new(m.clone(), opts).run()
}

/// Transform accumulator storing only the lines an elimination ever
/// touches: rows for u and vinv, columns for uinv and v. One merge per
/// elementary operation, no cross-index maintenance.
struct LineMat {
    lines: Vec<Vec<(usize, BigInt)>>,
}

impl LineMat {
    fn identity(n: usize) -> Self {
        LineMat { lines: (0..n).map(|i| vec![(i, BigInt::one())]).collect() }
    }

    fn add_mul_line(&mut self, dst: usize, src: usize, coeff: &BigInt) {
        let src_line = std::mem::take(&mut self.lines[src]);
        let dst_line = std::mem::take(&mut self.lines[dst]);
        self.lines[dst] = vec_merge_add(dst_line, &src_line, coeff);
        self.lines[src] = src_line;
    }

    fn negate_line(&mut self, i: usize) {
        for (_, v) in self.lines[i].iter_mut() {
            *v = -std::mem::take(v);
        }
    }

    /// Assembles a matrix whose ROW `perm[i]` is line i, in one linear
    /// pass per direction.
    fn into_rows(self, ncols: usize, perm: &[usize]) -> SparseMat {
        let n = self.lines.len();
        let mut rows = vec![Vec::new(); n];
        for (i, line) in self.lines.into_iter().enumerate() {
            rows[perm[i]] = line;
        }
        let mut cols: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMat { nrows: n, ncols, cols, rows }
    }

    /// Assembles a matrix whose COLUMN `perm[i]` is line i.
    fn into_cols(self, nrows: usize, perm: &[usize]) -> SparseMat {
        let n = self.lines.len();
        let mut cols = vec![Vec::new(); n];
        for (i, line) in self.lines.into_iter().enumerate() {
            cols[perm[i]] = line;
        }
        let mut rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); nrows];
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMat { nrows, ncols: n, cols, rows }
    }
}

struct SmithCalc {
    m: SparseMat,
    u: Option<LineMat>,
    uinv: Option<LineMat>,
    v: Option<LineMat>,
    vinv: Option<LineMat>,
    /// Active rows and columns ordered by occupancy, for pivot selection.
    active_cols: BTreeSet<(usize, usize)>,
    active_rows: BTreeSet<(usize, usize)>,
    col_done: Vec<bool>,
    row_done: Vec<bool>,
    pivots: Vec<(usize, usize)>,
}

impl SmithCalc {
    fn new(m: SparseMat, opts: SnfOptions) -> Self {
        let (nr, nc) = (m.nrows(), m.ncols());
        let mut active_cols = BTreeSet::new();
        for c in 0..nc {
            if m.col_nnz(c) > 0 {
                active_cols.insert((m.col_nnz(c), c));
            }
        }
        let mut active_rows = BTreeSet::new();
        for r in 0..nr {
            if m.row_nnz(r) > 0 {
                active_rows.insert((m.row_nnz(r), r));
            }
        }
        SmithCalc {
            m,
            u: opts.u.then(|| LineMat::identity(nr)),
            uinv: opts.uinv.then(|| LineMat::identity(nr)),
            v: opts.v.then(|| LineMat::identity(nc)),
            vinv: opts.vinv.then(|| LineMat::identity(nc)),
            active_cols,
            active_rows,
            col_done: vec![false; nc],
            row_done: vec![false; nr],
            pivots: Vec::new(),
        }
    }

    fn touch_col(&mut self, c: usize, old_nnz: usize) {
        if self.col_done[c] {
            return;
        }
        let new_nnz = self.m.col_nnz(c);
        if old_nnz != new_nnz {
            self.active_cols.remove(&(old_nnz, c));
            if new_nnz > 0 {
                self.active_cols.insert((new_nnz, c));
            }
        }
    }

    fn touch_row(&mut self, r: usize, old_nnz: usize) {
        if self.row_done[r] {
            return;
        }
        let new_nnz = self.m.row_nnz(r);
        if old_nnz != new_nnz {
            self.active_rows.remove(&(old_nnz, r));
            if new_nnz > 0 {
                self.active_rows.insert((new_nnz, r));
            }
        }
    }

    /// row[dst] += coeff * row[src], mirrored into u and uinv.
    fn row_op(&mut self, dst: usize, src: usize, coeff: &BigInt) {
        let affected: Vec<(usize, usize)> =
            self.m.row(src).iter().map(|(c, _)| (*c, self.m.col_nnz(*c))).collect();
        let old_dst = self.m.row_nnz(dst);
        self.m.add_mul_row(dst, src, coeff);
        self.touch_row(dst, old_dst);
        for (c, old) in affected {
            self.touch_col(c, old);
        }
        if let Some(u) = self.u.as_mut() {
            u.add_mul_line(dst, src, coeff);
        }
        if let Some(uinv) = self.uinv.as_mut() {
            let neg = -coeff;
            uinv.add_mul_line(src, dst, &neg);
        }
    }

    /// col[dst] += coeff * col[src], mirrored into v and vinv.
    fn col_op(&mut self, dst: usize, src: usize, coeff: &BigInt) {
        let affected: Vec<(usize, usize)> =
            self.m.col(src).iter().map(|(r, _)| (*r, self.m.row_nnz(*r))).collect();
        let old_dst = self.m.col_nnz(dst);
        self.m.add_mul_col(dst, src, coeff);
        self.touch_col(dst, old_dst);
        for (r, old) in affected {
            self.touch_row(r, old);
        }
        if let Some(v) = self.v.as_mut() {
            v.add_mul_line(dst, src, coeff);
        }
        if let Some(vinv) = self.vinv.as_mut() {
            let neg = -coeff;
            vinv.add_mul_line(src, dst, &neg);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        if let Some(u) = self.u.as_mut() {
            u.negate_line(r);
        }
        if let Some(uinv) = self.uinv.as_mut() {
            uinv.negate_line(r);
        }
    }

    /// Reduces until the pivot is the unique nonzero in its row and column.
    /// The pivot may migrate while the euclidean descent runs; the final
    /// position is returned.
    fn isolate(&mut self, mut pr: usize, mut pc: usize) -> (usize, usize) {
        loop {
            // Column phase: clear column pc with row operations.
            loop {
                let entries: Vec<(usize, BigInt)> = self.m.col(pc).to_vec();
                if entries.len() <= 1 {
                    break;
                }
                // Smallest magnitude becomes the pivot.
                let (best_r, best_v) = entries
                    .iter()
                    .min_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)))
                    .map(|(r, v)| (*r, v.clone()))
                    .unwrap();
                pr = best_r;
                for (r, v) in entries {
                    if r == pr {
                        continue;
                    }
                    let q = v.div_floor(&best_v);
                    if !q.is_zero() {
                        let neg = -q;
                        self.row_op(r, pr, &neg);
                    }
                }
            }
            // Row phase: clear row pr with column operations. While the
            // pivot stays in column pc these touch only row pr, because
            // column pc is a singleton by now; if the pivot migrates, the
            // outer loop re-runs the column phase.
            loop {
                let entries: Vec<(usize, BigInt)> = self.m.row(pr).to_vec();
                if entries.len() <= 1 {
                    break;
                }
                let (best_c, best_v) = entries
                    .iter()
                    .min_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(&b.0)))
                    .map(|(c, v)| (*c, v.clone()))
                    .unwrap();
                pc = best_c;
                for (c, v) in entries {
                    if c == pc {
                        continue;
                    }
                    let q = v.div_floor(&best_v);
                    if !q.is_zero() {
                        let neg = -q;
                        self.col_op(c, pc, &neg);
                    }
                }
            }
            if self.m.col_nnz(pc) == 1 && self.m.row_nnz(pr) == 1 {
                break;
            }
        }
        if self.m.get(pr, pc).unwrap().is_negative() {
            self.negate_row(pr);
        }
        (pr, pc)
    }

    /// Best entry of a column by (unit magnitude, then sparse crossing row,
    /// then row index); returns the row and its occupancy. Symmetric helper
    /// below for rows.
    fn pick_in_col(&self, c: usize) -> (usize, usize) {
        let mut pick: Option<(bool, usize, usize)> = None;
        for (r, v) in self.m.col(c) {
            let cand = (v.abs().is_one(), self.m.row_nnz(*r), *r);
            let better = match pick {
                None => true,
                Some((unit, nnz, row)) => {
                    (cand.0 && !unit)
                        || (cand.0 == unit && (cand.1 < nnz || (cand.1 == nnz && cand.2 < row)))
                }
            };
            if better {
                pick = Some(cand);
            }
        }
        let (_, nnz, row) = pick.expect("column is nonempty");
        (row, nnz)
    }

    fn pick_in_row(&self, r: usize) -> (usize, usize) {
        let mut pick: Option<(bool, usize, usize)> = None;
        for (c, v) in self.m.row(r) {
            let cand = (v.abs().is_one(), self.m.col_nnz(*c), *c);
            let better = match pick {
                None => true,
                Some((unit, nnz, col)) => {
                    (cand.0 && !unit)
                        || (cand.0 == unit && (cand.1 < nnz || (cand.1 == nnz && cand.2 < col)))
                }
            };
            if better {
                pick = Some(cand);
            }
        }
        let (_, nnz, col) = pick.expect("row is nonempty");
        (col, nnz)
    }

    fn eliminate(&mut self) {
        loop {
            let by_col = self.active_cols.iter().next().copied();
            let by_row = self.active_rows.iter().next().copied();
            // Pivot in whichever direction offers the shortest line;
            // singleton rows and columns are free pivots and cascade first.
            let (pr, pc) = match (by_col, by_row) {
                (None, None) => break,
                (Some((_, c)), None) => (self.pick_in_col(c).0, c),
                (None, Some((_, r))) => (r, self.pick_in_row(r).0),
                (Some((cn, c)), Some((rn, r))) => {
                    if rn <= cn {
                        (r, self.pick_in_row(r).0)
                    } else {
                        (self.pick_in_col(c).0, c)
                    }
                }
            };
            let (pr, pc) = self.isolate(pr, pc);
            self.active_cols.remove(&(1, pc));
            self.active_rows.remove(&(1, pr));
            self.col_done[pc] = true;
            self.row_done[pr] = true;
            self.pivots.push((pr, pc));
        }
    }

    /// Repairs the divisor chain by pairwise gcd/lcm passes over the
    /// diagonal pivots.
    fn fix_divisibility(&mut self) {
        loop {
            let mut changed = false;
            for i in 1..self.pivots.len() {
                let (r_prev, c_prev) = self.pivots[i - 1];
                let (r_cur, c_cur) = self.pivots[i];
                let a = self.m.get(r_prev, c_prev).unwrap().clone();
                let b = self.m.get(r_cur, c_cur).unwrap().clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                // Bring b into the previous pivot's row, then re-isolate.
                self.row_op(r_prev, r_cur, &BigInt::one());
                let (nr, nc) = self.isolate(r_prev, c_prev);
                // The companion entry is the unique remaining nonzero in the
                // other row of the pair.
                let other_row = if nr == r_prev { r_cur } else { r_prev };
                let other_col = self.m.row(other_row).first().expect("companion pivot survives").0;
                if self.m.get(other_row, other_col).unwrap().is_negative() {
                    self.negate_row(other_row);
                }
                self.pivots[i - 1] = (nr, nc);
                self.pivots[i] = (other_row, other_col);
                changed = true;
            }
            if !changed {
                break;
            }
        }
    }

    fn run(mut self) -> Snf {
        self.eliminate();
        self.fix_divisibility();

        let (nr, nc) = (self.m.nrows(), self.m.ncols());
        // Send pivot k to diagonal position k; fill the rest in order.
        let mut row_perm = vec![usize::MAX; nr];
        let mut col_perm = vec![usize::MAX; nc];
        for (k, &(r, c)) in self.pivots.iter().enumerate() {
            row_perm[r] = k;
            col_perm[c] = k;
        }
        let mut next = self.pivots.len();
        for r in 0..nr {
            if row_perm[r] == usize::MAX {
                row_perm[r] = next;
                next += 1;
            }
        }
        let mut next = self.pivots.len();
        for c in 0..nc {
            if col_perm[c] == usize::MAX {
                col_perm[c] = next;
                next += 1;
            }
        }

        let diag: Vec<BigInt> =
            self.pivots.iter().map(|&(r, c)| self.m.get(r, c).unwrap().clone()).collect();

        // With P_r sending row r_k to position k and P_c sending column c_k
        // to position k: u' = P_r u (row i lands at row_perm[i]), uinv' =
        // uinv P_r^-1 (column c lands at row_perm[c]), v' = v P_c, and
        // vinv' = P_c^-1 vinv (row r lands at col_perm[r]).
        let u = self.u.map(|u| u.into_rows(nr, &row_perm));
        let uinv = self.uinv.map(|uinv| uinv.into_cols(nr, &row_perm));
        let v = self.v.map(|v| v.into_cols(nc, &col_perm));
        let vinv = self.vinv.map(|vinv| vinv.into_rows(nc, &col_perm));

        Snf { nrows: nr, ncols: nc, diag, u, uinv, v, vinv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_transforms(m: &SparseMat, snf: &Snf) {
        let u = snf.u.as_ref().unwrap();
        let v = snf.v.as_ref().unwrap();
        assert!(u.mul(snf.uinv.as_ref().unwrap()).is_identity(), "u * uinv != id");
        assert!(v.mul(snf.vinv.as_ref().unwrap()).is_identity(), "v * vinv != id");
        let d = u.mul(m).mul(v);
        assert_eq!(d, snf.diag_matrix(), "u*m*v is not the stated diagonal");
        for w in snf.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain violated: {:?}", snf.diag);
        }
        for d in &snf.diag {
            assert!(d.is_positive());
        }
    }

    #[test]
    fn row_and_column_views_agree() {
        let mut m = SparseMat::from_dense(&[&[1, 0, 2], &[0, -3, 4]]);
        m.add_mul_row(0, 1, &BigInt::from(2));
        m.add_mul_col(2, 0, &BigInt::from(-1));
        m.negate_row(1);
        for r in 0..m.nrows() {
            for (c, v) in m.row(r) {
                assert_eq!(m.get(r, *c), Some(v));
            }
        }
        let t = m.transpose();
        for c in 0..m.ncols() {
            for (r, v) in m.col(c) {
                assert_eq!(t.get(c, *r), Some(v));
            }
        }
    }

    #[test]
    fn identity_matrix() {
        let m = SparseMat::identity(2);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert_eq!(snf.diag, vec![BigInt::from(1), BigInt::from(1)]);
        check_transforms(&m, &snf);
    }

    #[test]
    fn zero_matrix() {
        let m = SparseMat::zero(3, 2);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert!(snf.diag.is_empty());
        check_transforms(&m, &snf);
    }

    #[test]
    fn determinant_divisor_oracle() {
        // d1 = gcd of entries = 2 and d1*d2 = |det| = |2*8 - 4*6| = 8.
        let m = SparseMat::from_dense(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(4)]);
        check_transforms(&m, &snf);
    }

    #[test]
    fn torsion_matrix() {
        // diag(2, 6) has snf (2, 6); diag(4, 6) has snf (2, 12).
        let m = SparseMat::from_dense(&[&[2, 0], &[0, 6]]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(6)]);
        check_transforms(&m, &snf);

        let m = SparseMat::from_dense(&[&[4, 0], &[0, 6]]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(12)]);
        check_transforms(&m, &snf);
    }

    #[test]
    fn rectangular_and_negative() {
        let m = SparseMat::from_dense(&[&[0, -3, 0], &[6, 0, 9]]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        assert_eq!(snf.diag, vec![BigInt::from(3), BigInt::from(3)]);
        check_transforms(&m, &snf);
    }

    #[test]
    fn known_4x4() {
        let m = SparseMat::from_dense(&[
            &[2, 4, 4, 0],
            &[-6, 6, 12, 0],
            &[10, 4, 16, 0],
            &[0, 0, 0, 0],
        ]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        // Determinant divisors of the nonzero 3x3 block: D1 = gcd of the
        // entries = 2, D2 = gcd of the 2x2 minors = 4, D3 = |det| = 624,
        // so the chain is D1, D2/D1, D3/D2 = 2, 2, 156.
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
        check_transforms(&m, &snf);
    }

    #[test]
    fn big_entries_stay_exact() {
        // Entries that overflow i64 during naive elimination.
        let big = i64::MAX / 3;
        let m = SparseMat::from_dense(&[&[big, big - 1], &[big - 2, big - 3]]);
        let snf = smith_normal_form(&m, SnfOptions::all());
        check_transforms(&m, &snf);
        let det = BigInt::from(big) * BigInt::from(big - 3) - BigInt::from(big - 1) * BigInt::from(big - 2);
        let prod: BigInt = snf.diag.iter().product();
        assert_eq!(prod, det.abs());
    }
}
