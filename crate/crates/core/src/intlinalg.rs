//! Exact integer linear algebra: Smith normal form, cokernels, and the
//! finite-odd-order predicate on finitely generated abelian groups.
//!
//! Everything here works over arbitrary-precision integers, so intermediate
//! growth during elimination is a non-issue at the scales this crate works
//! at.

use std::cmp::min;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense m×n integer matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        &mut self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Entrywise congruence modulo `modulus`.
    pub fn congruent_mod(&self, other: &IntMatrix, modulus: &BigInt) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| ((a - b) % modulus).is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        IntMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.entry(i, k) * other.entry(k, j)).sum()
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor · row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * self.entry(source, j);
            *self.entry_mut(target, j) += delta;
        }
    }

    /// col[target] += factor · col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * self.entry(i, source);
            *self.entry_mut(i, target) += delta;
        }
    }

    fn negate_row(&mut self, row: usize) {
        for j in 0..self.cols {
            let v = -self.entry(row, j).clone();
            *self.entry_mut(row, j) = v;
        }
    }

    /// Replaces columns (a, b) by (m00·Ca + m10·Cb, m01·Ca + m11·Cb).
    /// The caller guarantees the 2×2 coefficient matrix is unimodular.
    fn col_pair_transform(&mut self, a: usize, b: usize, m: &[[BigInt; 2]; 2]) {
        for i in 0..self.rows {
            let ca = self.entry(i, a).clone();
            let cb = self.entry(i, b).clone();
            *self.entry_mut(i, a) = &m[0][0] * &ca + &m[1][0] * &cb;
            *self.entry_mut(i, b) = &m[0][1] * &ca + &m[1][1] * &cb;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row =
                self.row(i).iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ");
            writeln!(f, "[ {row} ]")?;
        }
        Ok(())
    }
}

/// The diagonal of a Smith normal form: positive invariant factors
/// d1 | d2 | … | dr, optionally together with the unimodular transforms
/// (U, V) such that U·A·V is the diagonal matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    diag: Vec<BigInt>,
    transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithForm {
    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn transforms(&self) -> Option<(&IntMatrix, &IntMatrix)> {
        self.transforms.as_ref().map(|(u, v)| (u, v))
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    smith(a, false)
}

/// Like [`smith_normal_form`] but also accumulates the row/column transforms.
/// Accumulation is off by default because nothing in the pipeline needs it;
/// it exists for the unimodularity checks in the test suite and for callers
/// that want explicit bases.
pub fn smith_normal_form_with_transforms(a: &IntMatrix) -> SmithForm {
    smith(a, true)
}

struct Reducer {
    b: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn new(a: &IntMatrix, keep: bool) -> Self {
        Reducer {
            b: a.clone(),
            u: keep.then(|| IntMatrix::identity(a.rows())),
            v: keep.then(|| IntMatrix::identity(a.cols())),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.b.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.b.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.b.add_row_multiple(target, source, factor);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, factor);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.b.add_col_multiple(target, source, factor);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, factor);
        }
    }

    fn negate_row(&mut self, row: usize) {
        self.b.negate_row(row);
        if let Some(u) = &mut self.u {
            u.negate_row(row);
        }
    }

    fn col_pair_transform(&mut self, a: usize, b: usize, m: &[[BigInt; 2]; 2]) {
        self.b.col_pair_transform(a, b, m);
        if let Some(v) = &mut self.v {
            v.col_pair_transform(a, b, m);
        }
    }

    /// Position of a nonzero entry of minimum absolute value in the trailing
    /// submatrix starting at (t, t).
    fn min_abs_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.b.rows() {
            for j in t..self.b.cols() {
                let e = self.b.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.b.entry(b.0, b.1).magnitude() <= e.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Folds the adjacent diagonal pair (d, e) at positions t, t+1 into
    /// (gcd, lcm) by unimodular operations, assuming both are positive and
    /// all other entries in their rows/columns vanish.
    fn fold_diagonal_pair(&mut self, t: usize) {
        let d = self.b.entry(t, t).clone();
        let e = self.b.entry(t + 1, t + 1).clone();
        // copy e into row t: block [[d, e], [0, e]]
        self.add_row_multiple(t, t + 1, &BigInt::one());
        let ext = d.extended_gcd(&e);
        let (g, x, y) = (ext.gcd, ext.x, ext.y);
        // unimodular column mix sending the block to [[g, 0], [y·e, d·e/g]]
        let m = [[x, -(&e / &g)], [y, &d / &g]];
        self.col_pair_transform(t, t + 1, &m);
        // clear the (t+1, t) entry; it is an exact multiple of g
        let q = self.b.entry(t + 1, t) / self.b.entry(t, t);
        self.add_row_multiple(t + 1, t, &-q);
        debug_assert!(self.b.entry(t + 1, t).is_zero());
        debug_assert!(self.b.entry(t, t + 1).is_zero());
    }
}

/// Diagonalization with minimum-absolute-value pivoting, then a gcd-folding
/// pass that repairs the divisibility chain. Negative pivots are normalized
/// by row negation, so all invariant factors come out positive.
fn smith(a: &IntMatrix, keep_transforms: bool) -> SmithForm {
    let mut r = Reducer::new(a, keep_transforms);
    let (rows, cols) = (a.rows(), a.cols());
    let limit = min(rows, cols);
    let mut t = 0;

    while t < limit {
        let Some(_) = r.min_abs_nonzero(t) else { break };
        loop {
            let (pi, pj) = r.min_abs_nonzero(t).expect("nonzero entry persists");
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let mut dirty = false;
            for i in t + 1..rows {
                if !r.b.entry(i, t).is_zero() {
                    let q = r.b.entry(i, t) / r.b.entry(t, t);
                    if !q.is_zero() {
                        r.add_row_multiple(i, t, &-q);
                    }
                    if !r.b.entry(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !r.b.entry(t, j).is_zero() {
                    let q = r.b.entry(t, j) / r.b.entry(t, t);
                    if !q.is_zero() {
                        r.add_col_multiple(j, t, &-q);
                    }
                    if !r.b.entry(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        if r.b.entry(t, t).is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }

    // repair divisibility by folding adjacent pairs until the chain holds
    if t > 1 {
        loop {
            let mut changed = false;
            for i in 0..t - 1 {
                if !(r.b.entry(i + 1, i + 1) % r.b.entry(i, i)).is_zero() {
                    r.fold_diagonal_pair(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
    }

    let diag = (0..t).map(|i| r.b.entry(i, i).clone()).collect();
    SmithForm { diag, transforms: r.u.zip(r.v) }
}

/// The structure of a finitely generated abelian group in canonical form:
/// invariant torsion factors (each ≥ 2, forming a divisibility chain) plus a
/// free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

/// Order of an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigInt),
    Infinite,
}

impl GroupOrder {
    pub fn as_finite(&self) -> Option<&BigInt> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl AbelianGroup {
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        for (i, d) in torsion.iter().enumerate() {
            assert!(*d >= BigInt::from(2), "torsion factors must be at least 2");
            if i > 0 {
                assert!((d % &torsion[i - 1]).is_zero(), "torsion factors must form a chain");
            }
        }
        AbelianGroup { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        AbelianGroup { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn order(&self) -> GroupOrder {
        if self.free_rank > 0 {
            GroupOrder::Infinite
        } else {
            GroupOrder::Finite(self.torsion.iter().product())
        }
    }

    /// True iff the group is finite and of odd order, i.e. the free rank
    /// vanishes and every invariant factor is odd.
    pub fn is_finite_odd(&self) -> bool {
        self.free_rank == 0 && self.torsion.iter().all(Integer::is_odd)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of the map Z^n → Z^m whose matrix (m rows, n columns) is `a`:
/// the quotient of the row space Z^m by the image. Torsion comes from the
/// nontrivial invariant factors and the free rank is m − rank.
pub fn cokernel(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let torsion =
        snf.diag().iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianGroup { torsion, free_rank: a.rows() - snf.rank() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    // ---- independent oracles -------------------------------------------

    /// Naive diagonalization: always grabs the first nonzero entry in
    /// reading order as pivot and eliminates with plain Euclidean steps. No
    /// divisibility repair; invariant factors are reassembled afterwards from
    /// prime factorizations of the diagonal.
    fn oracle_cokernel(a: &IntMatrix) -> (Vec<BigInt>, usize) {
        let mut b: Vec<Vec<BigInt>> =
            (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let (m, n) = (a.rows(), a.cols());
        let mut diag: Vec<BigInt> = Vec::new();
        let mut t = 0;
        'outer: while t < m.min(n) {
            // first nonzero in reading order
            let mut pivot = None;
            for i in t..m {
                for j in t..n {
                    if !b[i][j].is_zero() {
                        pivot = Some((i, j));
                        break;
                    }
                }
                if pivot.is_some() {
                    break;
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            b.swap(t, pi);
            for row in b.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut dirty = false;
                for i in t + 1..m {
                    while !b[i][t].is_zero() {
                        let q = &b[i][t] / &b[t][t];
                        if q.is_zero() {
                            b.swap(t, i);
                            dirty = true;
                        } else {
                            for j in 0..n {
                                let d = &q * &b[t][j];
                                b[i][j] -= d;
                            }
                        }
                    }
                }
                for j in t + 1..n {
                    while !b[t][j].is_zero() {
                        let q = &b[t][j] / &b[t][t];
                        if q.is_zero() {
                            for row in b.iter_mut() {
                                row.swap(t, j);
                            }
                            dirty = true;
                        } else {
                            for row in b.iter_mut() {
                                let d = &q * &row[t];
                                row[j] -= d;
                            }
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            diag.push(b[t][t].abs());
            t += 1;
        }
        let rank = diag.len();
        (reassemble_invariant_factors(&diag), m - rank)
    }

    /// Rebuilds the invariant-factor chain of ⊕ Z/d from per-prime exponent
    /// multisets: sort each prime's exponents ascending, right-aligned.
    fn reassemble_invariant_factors(diag: &[BigInt]) -> Vec<BigInt> {
        use std::collections::BTreeMap;
        let r = diag.len();
        let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (idx, d) in diag.iter().enumerate() {
            let mut value = d.clone();
            let mut p = 2u64;
            while BigInt::from(p) * BigInt::from(p) <= value {
                let mut e = 0;
                while (&value % p).is_zero() {
                    value /= p;
                    e += 1;
                }
                if e > 0 {
                    per_prime.entry(p).or_insert_with(|| vec![0; r])[idx] = e;
                }
                p += 1;
            }
            if value > BigInt::one() {
                use num_traits::ToPrimitive;
                let p = value.to_u64().expect("small test values");
                per_prime.entry(p).or_insert_with(|| vec![0; r])[idx] += 1;
            }
        }
        let mut factors = vec![BigInt::one(); r];
        for (p, mut exps) in per_prime {
            exps.sort_unstable();
            for (k, e) in exps.into_iter().enumerate() {
                factors[k] *= BigInt::from(p).pow(e);
            }
        }
        factors.retain(|f| !f.is_one());
        factors
    }

    /// Determinant by cofactor expansion along the first row.
    fn cofactor_det(a: &IntMatrix) -> BigInt {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return a.entry(0, 0).clone();
        }
        let mut det = BigInt::zero();
        for j in 0..n {
            let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                a.entry(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = a.entry(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                det += term;
            } else {
                det -= term;
            }
        }
        det
    }

    fn gcd_of_k_minors(a: &IntMatrix, k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rows in (0..a.rows()).combinations(k) {
            for cols in (0..a.cols()).combinations(k) {
                let sub = IntMatrix::from_fn(k, k, |i, j| a.entry(rows[i], cols[j]).clone());
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        g
    }

    // ---- frozen examples ------------------------------------------------

    #[test]
    fn snf_of_diag_2_3() {
        let a = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diag(), &[BigInt::from(1), BigInt::from(6)]);
        // forced by the minor gcds: entries have gcd 1, the single 2x2 minor is 6
        assert_eq!(gcd_of_k_minors(&a, 1), BigInt::from(1));
        assert_eq!(gcd_of_k_minors(&a, 2), BigInt::from(6));
        let (torsion, free) = oracle_cokernel(&a);
        assert_eq!(torsion, vec![BigInt::from(6)]);
        assert_eq!(free, 0);

        // this input forces a gcd fold; the transforms must track it exactly
        let with = smith_normal_form_with_transforms(&a);
        let (u, v) = with.transforms().unwrap();
        let d = u.mul(&a).mul(v);
        assert_eq!(d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
        assert!(cofactor_det(u).abs().is_one());
        assert!(cofactor_det(v).abs().is_one());
    }

    #[test]
    fn snf_of_identity() {
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(snf.diag(), &[BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn snf_of_wide_row() {
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&[&[3, 0]]));
        assert_eq!(snf.diag(), &[BigInt::from(3)]);
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&[&[4, 6]]));
        assert_eq!(snf.diag(), &[BigInt::from(2)]);
    }

    #[test]
    fn snf_handles_empty_shapes() {
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 3)).rank(), 0);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(3, 0)).rank(), 0);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)).rank(), 0);
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&IntMatrix::from_i64_rows(&[&[3, 0]]));
        assert_eq!(g.torsion(), &[BigInt::from(3)]);
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.order(), GroupOrder::Finite(BigInt::from(3)));

        let g = cokernel(&IntMatrix::from_i64_rows(&[&[0]]));
        assert!(g.torsion().is_empty());
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.order(), GroupOrder::Infinite);

        let g = cokernel(&IntMatrix::from_i64_rows(&[&[5, 2]]));
        assert!(g.is_trivial());
        assert_eq!(g.order(), GroupOrder::Finite(BigInt::from(1)));
    }

    #[test]
    fn cokernel_of_empty_shapes() {
        // no relators: the map Z^n -> Z^0 has trivial cokernel
        assert!(cokernel(&IntMatrix::zeros(0, 2)).is_trivial());
        // no generators: Z^0 -> Z^m leaves all of Z^m
        let g = cokernel(&IntMatrix::zeros(2, 0));
        assert_eq!(g.free_rank(), 2);
    }

    #[test]
    fn order_and_parity_predicates() {
        let z3 = AbelianGroup::new(vec![BigInt::from(3)], 0);
        assert_eq!(z3.order(), GroupOrder::Finite(BigInt::from(3)));
        assert!(z3.is_finite_odd());

        let z2 = AbelianGroup::new(vec![BigInt::from(2)], 0);
        assert!(!z2.is_finite_odd());

        let trivial = AbelianGroup::trivial();
        assert_eq!(trivial.order(), GroupOrder::Finite(BigInt::from(1)));
        assert!(trivial.is_finite_odd());

        let mixed = AbelianGroup::new(vec![BigInt::from(2)], 1);
        assert_eq!(mixed.order(), GroupOrder::Infinite);
        assert!(!mixed.is_finite_odd());
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::new(vec![], 1).to_string(), "Z");
        assert_eq!(
            AbelianGroup::new(vec![BigInt::from(2), BigInt::from(6)], 2).to_string(),
            "Z^2 + Z/2 + Z/6"
        );
    }

    // ---- randomized properties -----------------------------------------

    fn arb_matrix(max_dim: usize, max_abs: i64) -> impl Strategy<Value = IntMatrix> {
        (1..=max_dim, 1..=max_dim).prop_flat_map(move |(m, n)| {
            prop::collection::vec(-max_abs..=max_abs, m * n).prop_map(move |vals| {
                IntMatrix::from_fn(m, n, |i, j| BigInt::from(vals[i * n + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn snf_agrees_with_naive_oracle(a in arb_matrix(4, 5)) {
            let g = cokernel(&a);
            let (torsion, free) = oracle_cokernel(&a);
            prop_assert_eq!(g.torsion(), &torsion[..]);
            prop_assert_eq!(g.free_rank(), free);
        }

        #[test]
        fn snf_divisibility_and_minor_gcds(a in arb_matrix(3, 4)) {
            let snf = smith_normal_form(&a);
            let d = snf.diag();
            for i in 1..d.len() {
                prop_assert!((&d[i] % &d[i - 1]).is_zero());
            }
            if !a.is_zero() {
                prop_assert_eq!(&d[0], &gcd_of_k_minors(&a, 1));
            }
            let mut product = BigInt::one();
            for (k, dk) in d.iter().enumerate() {
                product *= dk;
                prop_assert_eq!(&product, &gcd_of_k_minors(&a, k + 1));
            }
        }

        #[test]
        fn transforms_are_unimodular_and_exact(a in arb_matrix(4, 5)) {
            let snf = smith_normal_form_with_transforms(&a);
            let (u, v) = snf.transforms().unwrap();
            prop_assert!(cofactor_det(u).abs().is_one());
            prop_assert!(cofactor_det(v).abs().is_one());
            let d = u.mul(&a).mul(v);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    let expected = if i == j && i < snf.rank() {
                        snf.diag()[i].clone()
                    } else {
                        BigInt::zero()
                    };
                    prop_assert_eq!(d.entry(i, j), &expected);
                }
            }
        }

        #[test]
        fn square_nonsingular_order_is_det(a in arb_matrix(4, 5)) {
            if a.rows() == a.cols() {
                let det = cofactor_det(&a);
                if !det.is_zero() {
                    let g = cokernel(&a);
                    prop_assert_eq!(g.order(), GroupOrder::Finite(det.abs()));
                }
            }
        }

        #[test]
        fn odd_cokernel_is_stable_mod_2(a in arb_matrix(3, 4), e in arb_matrix(3, 4)) {
            // perturb by an even matrix of the same shape
            if a.rows() == e.rows() && a.cols() == e.cols() {
                let b = IntMatrix::from_fn(a.rows(), a.cols(), |i, j| {
                    a.entry(i, j) + BigInt::from(2) * e.entry(i, j)
                });
                prop_assert_eq!(cokernel(&a).is_finite_odd(), cokernel(&b).is_finite_odd());
            }
        }
    }
}
