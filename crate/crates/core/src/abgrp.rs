//! Finitely generated abelian groups presented by integer matrices.
//!
//! Everything here is exact: matrices hold arbitrary-precision integers,
//! Smith normal form is computed with unimodular row/column operations
//! (pivot rule: smallest absolute value, ties broken row-major), and
//! cochain complexes of free abelian groups get their cohomology from
//! kernel/image lattices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AbError {
    #[error("matrix dimensions {0}x{1} incompatible with {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("not a complex: d^{degree}+1 ∘ d^{degree} has nonzero entry at ({row},{col})")]
    NotAComplex { degree: usize, row: usize, col: usize },
    #[error("torsion list {0:?} is not a divisor chain of integers >= 2")]
    BadTorsion(String),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Stack the columns of `self` above nothing; extract a block of rows.
    pub fn row_submatrix(&self, from: usize, to: usize) -> IntMatrix {
        assert!(from <= to && to <= self.rows);
        let mut out = IntMatrix::zero(to - from, self.cols);
        for r in from..to {
            for c in 0..self.cols {
                out.set(r - from, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !m.get(r, k).is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn row_addmul(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j) + c * self.get(source, j);
            self.set(target, j, v);
        }
    }

    /// col[target] += c * col[source]
    fn col_addmul(&mut self, target: usize, source: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target) + c * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, c);
            self.set(i, c, v);
        }
    }
}

/// Result of a Smith normal form computation: `s = u * m * v` with
/// `u`, `v` unimodular; inverses are tracked alongside.
pub struct SmithResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        (0..self.s.rows().min(self.s.cols())).take_while(|&i| !self.s.get(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries d1 | d2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Smith normal form over Z. Pivot rule: smallest nonzero absolute value,
/// ties broken by row-major position.
pub fn smith_normal_form(m: &IntMatrix) -> SmithResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // elementary operations mirrored on the transforms
    macro_rules! swap_r {
        ($a:expr, $b:expr) => {{
            s.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! swap_c {
        ($a:expr, $b:expr) => {{
            s.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! addmul_r {
        ($t:expr, $src:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.row_addmul($t, $src, &c);
            u.row_addmul($t, $src, &c);
            u_inv.col_addmul($src, $t, &(-&c));
        }};
    }
    macro_rules! addmul_c {
        ($t:expr, $src:expr, $c:expr) => {{
            let c: BigInt = $c;
            s.col_addmul($t, $src, &c);
            v.col_addmul($t, $src, &c);
            v_inv.row_addmul($src, $t, &(-&c));
        }};
    }

    let mut t = 0;
    while t < rows && t < cols {
        // pivot: smallest absolute value among nonzero entries of the submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s.get(i, j).is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if s.get(i, j).abs() < s.get(pi, pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_r!(t, pi);
        swap_c!(t, pj);

        'reduce: loop {
            // clear column t
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t) / s.get(t, t);
                addmul_r!(i, t, -q);
                if !s.get(i, t).is_zero() {
                    // remainder became the smaller pivot
                    swap_r!(t, i);
                    continue 'reduce;
                }
            }
            // clear row t
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j) / s.get(t, t);
                addmul_c!(j, t, -q);
                if !s.get(t, j).is_zero() {
                    swap_c!(t, j);
                    continue 'reduce;
                }
            }
            // divisibility of the remaining block by the pivot
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(s.get(i, j) % s.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    addmul_r!(t, i, BigInt::one());
                    continue 'reduce;
                }
                None => break 'reduce,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }

    SmithResult { s, u, v, u_inv, v_inv }
}

/// Basis of the integer kernel of `m`, as columns.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let n = m.cols();
    let mut out = IntMatrix::zero(n, n - r);
    for (k, j) in (r..n).enumerate() {
        for i in 0..n {
            out.set(i, k, snf.v.get(i, j).clone());
        }
    }
    out
}

/// Solve `a * x = b` columnwise over Z. Returns None if any column is
/// unsolvable.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows());
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let ub = snf.u.mul(b);
    let mut y = IntMatrix::zero(a.cols(), b.cols());
    for c in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = ub.get(i, c);
            if i < r {
                let d = snf.s.get(i, i);
                if !(rhs % d).is_zero() {
                    return None;
                }
                y.set(i, c, rhs / d);
            } else if !rhs.is_zero() {
                return None;
            }
        }
    }
    let x = snf.v.mul(&y);
    if a.mul(&x) == *b {
        Some(x)
    } else {
        None
    }
}

/// A finitely generated abelian group, as a value (rank, torsion) with an
/// identity label. Torsion entries are >= 2 and form a divisor chain.
/// Label equality is the literal "=" of coefficient-system values;
/// [`FGAbGroup::iso_eq`] is isomorphism (equal invariant factors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGAbGroup {
    pub label: String,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn new(label: impl Into<String>, rank: usize, torsion: Vec<BigInt>) -> Result<Self, AbError> {
        let two = BigInt::from(2);
        for (i, d) in torsion.iter().enumerate() {
            if d < &two {
                return Err(AbError::BadTorsion(format!("{torsion:?}")));
            }
            if i + 1 < torsion.len() && !(&torsion[i + 1] % d).is_zero() {
                return Err(AbError::BadTorsion(format!("{torsion:?}")));
            }
        }
        Ok(FGAbGroup { label: label.into(), rank, torsion })
    }

    pub fn free(label: impl Into<String>, rank: usize) -> Self {
        FGAbGroup { label: label.into(), rank, torsion: Vec::new() }
    }

    pub fn zero(label: impl Into<String>) -> Self {
        Self::free(label, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Total number of generators in the presentation (free then torsion).
    pub fn generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Isomorphism of values: equal rank and invariant factors.
    pub fn iso_eq(&self, other: &FGAbGroup) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }

    /// Canonical display such as "Z^2 + Z/4" or "0".
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// A cochain complex of free abelian groups: `diffs[n]` maps degree n to
/// degree n+1 and has shape ranks[n+1] x ranks[n].
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub ranks: Vec<usize>,
    pub diffs: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self, AbError> {
        assert!(
            diffs.len() + 1 == ranks.len() || (ranks.is_empty() && diffs.is_empty()),
            "need one differential per adjacent pair of degrees"
        );
        for (n, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[n + 1] || d.cols() != ranks[n] {
                return Err(AbError::DimensionMismatch(d.rows(), d.cols(), ranks[n + 1], ranks[n]));
            }
        }
        for n in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[n + 1].mul(&diffs[n]);
            for r in 0..dd.rows() {
                for c in 0..dd.cols() {
                    if !dd.get(r, c).is_zero() {
                        return Err(AbError::NotAComplex { degree: n, row: r, col: c });
                    }
                }
            }
        }
        Ok(CochainComplex { ranks, diffs })
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }
}

/// Cohomology of a complex of free abelian groups, degree by degree:
/// H^n = ker d^n / im d^{n-1}, via Smith normal form.
pub fn cohomology_of_complex(complex: &CochainComplex) -> Result<Vec<FGAbGroup>, AbError> {
    let n_degrees = complex.ranks.len();
    let mut out = Vec::with_capacity(n_degrees);
    for n in 0..n_degrees {
        let rank_n = complex.ranks[n];
        let d_n = if n < complex.diffs.len() {
            complex.diffs[n].clone()
        } else {
            IntMatrix::zero(0, rank_n)
        };
        let d_prev = if n > 0 { complex.diffs[n - 1].clone() } else { IntMatrix::zero(rank_n, 0) };

        let snf_n = smith_normal_form(&d_n);
        let r = snf_n.rank();
        let k = rank_n - r; // rank of the kernel
        let w = snf_n.v_inv.mul(&d_prev);
        // the image lies in the kernel, so coordinates 0..r vanish
        for i in 0..r {
            for c in 0..w.cols() {
                if !w.get(i, c).is_zero() {
                    return Err(AbError::NotAComplex { degree: n.saturating_sub(1), row: i, col: c });
                }
            }
        }
        let y = w.row_submatrix(r, rank_n);
        let snf_y = smith_normal_form(&y);
        let factors = snf_y.invariant_factors();
        let torsion: Vec<BigInt> = factors.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let free_rank = k - factors.len();
        out.push(FGAbGroup::new(format!("H^{n}"), free_rank, torsion)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        IntMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::from(entries[r])
            } else {
                BigInt::zero()
            }
        })
    }

    /// Independent oracle for invariant factors via determinant divisors:
    /// d1...dk = gcd of all k x k minors.
    fn minor_gcd_factors(m: &IntMatrix) -> Vec<BigInt> {
        fn minors_gcd(m: &IntMatrix, k: usize) -> BigInt {
            fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
                if k == 0 {
                    return vec![vec![]];
                }
                let mut out = Vec::new();
                for first in 0..n {
                    for mut rest in combos(n, k - 1) {
                        if rest.iter().all(|&x| x > first) {
                            let mut v = vec![first];
                            v.append(&mut rest);
                            out.push(v);
                        }
                    }
                }
                out
            }
            let mut g = BigInt::zero();
            for rs in combos(m.rows(), k) {
                for cs in combos(m.cols(), k) {
                    let sub = IntMatrix::from_fn(k, k, |i, j| m.get(rs[i], cs[j]).clone());
                    g = num_integer::Integer::gcd(&g, &sub.det());
                }
            }
            g
        }
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=m.rows().min(m.cols()) {
            let g = minors_gcd(m, k);
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn snf_single_entry() {
        let m = IntMatrix::from_rows(&[vec![-7]]);
        let r = smith_normal_form(&m);
        assert_eq!(r.s, IntMatrix::from_rows(&[vec![7]]));
        assert_eq!(r.u.mul(&m).mul(&r.v), r.s);
    }

    #[test]
    fn snf_diag_2_3() {
        // expected value computed by the determinant-divisor oracle:
        // gcd of entries = 1, gcd of 2x2 minors = 6, so factors (1, 6)
        let m = diag(&[2, 3]);
        assert_eq!(minor_gcd_factors(&m), vec![BigInt::from(1), BigInt::from(6)]);
        let r = smith_normal_form(&m);
        assert_eq!(r.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(r.u.mul(&m).mul(&r.v), r.s);
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zero(2, 3);
        let r = smith_normal_form(&m);
        assert!(r.s.is_zero());
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn cohomology_single_z() {
        // 0 -> Z -> 0
        let complex = CochainComplex::new(vec![1], vec![]).unwrap();
        let h = cohomology_of_complex(&complex).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].rank, 1);
        assert!(h[0].torsion.is_empty());
    }

    #[test]
    fn cohomology_of_difference_map() {
        // Z^2 --[1 -1]--> Z : H^0 = Z, H^1 = 0
        let d0 = IntMatrix::from_rows(&[vec![1, -1]]);
        let complex = CochainComplex::new(vec![2, 1], vec![d0]).unwrap();
        let h = cohomology_of_complex(&complex).unwrap();
        assert_eq!((h[0].rank, h[0].torsion.len()), (1, 0));
        assert_eq!((h[1].rank, h[1].torsion.len()), (0, 0));
    }

    #[test]
    fn cohomology_with_torsion() {
        // Z --0--> Z --2--> Z.
        // SNF oracle: H^0 = ker 0 = Z; H^1 = ker(2)/im(0) = 0; H^2 = Z/2.
        let d0 = IntMatrix::from_rows(&[vec![0]]);
        let d1 = IntMatrix::from_rows(&[vec![2]]);
        let complex = CochainComplex::new(vec![1, 1, 1], vec![d0, d1]).unwrap();
        let h = cohomology_of_complex(&complex).unwrap();
        assert_eq!((h[0].rank, h[0].torsion.clone()), (1, vec![]));
        assert_eq!((h[1].rank, h[1].torsion.clone()), (0, vec![]));
        assert_eq!((h[2].rank, h[2].torsion.clone()), (0, vec![BigInt::from(2)]));
    }

    #[test]
    fn not_a_complex_is_reported() {
        let d0 = IntMatrix::from_rows(&[vec![1]]);
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        assert!(matches!(
            CochainComplex::new(vec![1, 1, 1], vec![d0, d1]),
            Err(AbError::NotAComplex { degree: 0, .. })
        ));
    }

    #[test]
    fn all_zero_differentials_give_free_groups() {
        let ranks = vec![3, 5, 2];
        let diffs = vec![IntMatrix::zero(5, 3), IntMatrix::zero(2, 5)];
        let complex = CochainComplex::new(ranks.clone(), diffs).unwrap();
        let h = cohomology_of_complex(&complex).unwrap();
        for (n, g) in h.iter().enumerate() {
            assert_eq!(g.rank, ranks[n]);
            assert!(g.torsion.is_empty());
        }
    }

    #[test]
    fn solve_works() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let b = IntMatrix::from_rows(&[vec![4], vec![9]]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b_bad = IntMatrix::from_rows(&[vec![1], vec![0]]);
        assert!(solve(&a, &b_bad).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |data| {
                let mut m = IntMatrix::zero(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m.set(i, j, BigInt::from(data[i * c + j]));
                    }
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn snf_factorization_and_unimodularity(m in small_matrix()) {
            let r = smith_normal_form(&m);
            prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.s.clone());
            prop_assert_eq!(r.u.mul(&r.u_inv), IntMatrix::identity(m.rows()));
            prop_assert_eq!(r.v.mul(&r.v_inv), IntMatrix::identity(m.cols()));
            let du = r.u.det();
            let dv = r.v.det();
            prop_assert!(du.abs() == BigInt::one());
            prop_assert!(dv.abs() == BigInt::one());
            // diagonal, divisor chain
            for i in 0..r.s.rows() {
                for j in 0..r.s.cols() {
                    if i != j {
                        prop_assert!(r.s.get(i, j).is_zero());
                    }
                }
            }
            let f = r.invariant_factors();
            for w in f.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert_eq!(f, minor_gcd_factors(&m));
        }

        #[test]
        fn kernel_columns_are_killed(m in small_matrix()) {
            let k = kernel_basis(&m);
            let prod = m.mul(&k);
            prop_assert!(prod.is_zero());
        }
    }
}
