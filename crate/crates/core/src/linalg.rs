//! Exact integer matrices, Smith normal form and lattice quotients.
//!
//! Everything downstream (coboundary solving, H^1 presentations, invariant
//! factors) reduces to the two primitives here: `Snf` and
//! `QuotientPresentation`. Entries are `BigInt` so intermediate growth during
//! elimination can never overflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<BigInt>;

pub fn vec_from_i64(v: &[i64]) -> Vector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
            }
        }
        m
    }

    pub fn from_cols(cols: Vec<Vector>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), r, "ragged cols");
            for (i, v) in col.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
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

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.a[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.a[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vector {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dim mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = lik * other.at(k, j);
                    *out.at_mut(i, j) += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vector {
        assert_eq!(self.cols, v.len(), "dim mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..other.cols {
                *out.at_mut(i, self.cols + j) = other.at(i, j).clone();
            }
        }
        out
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols);
        let mut out = IntMat::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                *out.at_mut(self.rows + i, j) = other.at(i, j).clone();
            }
        }
        out
    }

    pub fn submatrix_cols(&self, from: usize, to: usize) -> IntMat {
        let mut out = IntMat::zero(self.rows, to - from);
        for i in 0..self.rows {
            for j in from..to {
                *out.at_mut(i, j - from) = self.at(i, j).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = q * self.at(k, c);
            *self.at_mut(i, c) -= t;
        }
    }

    /// col_i -= q * col_k
    fn col_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = q * self.at(r, k);
            *self.at_mut(r, i) -= t;
        }
    }

    /// col_i += q * col_k
    fn col_add(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let t = q * self.at(r, k);
            *self.at_mut(r, i) += t;
        }
    }

    /// row_i += q * row_k
    fn row_add(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = q * self.at(k, c);
            *self.at_mut(i, c) += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.at(i, c).clone();
            *self.at_mut(i, c) = v;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, j).clone();
            *self.at_mut(r, j) = v;
        }
    }
}

/// Smith normal form `u * a * v = d`, with `u`, `v` unimodular and `d`
/// diagonal, nonnegative, each entry dividing the next. Inverse transforms
/// are tracked alongside so solve/quotient routines never re-factorize.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    pub rank: usize,
}

impl Snf {
    pub fn diag(&self, i: usize) -> &BigInt {
        self.d.at(i, i)
    }
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMat::identity(m);
    let mut u_inv = IntMat::identity(m);
    let mut v = IntMat::identity(n);
    let mut v_inv = IntMat::identity(n);

    let mut k = 0usize;
    while k < m.min(n) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if !d.at(i, j).is_zero() {
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if d.at(i, j).abs() < d.at(pi, pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        // Clear row and column k; restart on any nonzero remainder.
        let mut clean = true;
        for i in (k + 1)..m {
            let q = round_quotient(d.at(i, k), d.at(k, k));
            d.row_sub(i, k, &q);
            u.row_sub(i, k, &q);
            u_inv.col_add(k, i, &q);
            if !d.at(i, k).is_zero() {
                clean = false;
            }
        }
        for j in (k + 1)..n {
            let q = round_quotient(d.at(k, j), d.at(k, k));
            d.col_sub(j, k, &q);
            v.col_sub(j, k, &q);
            v_inv.row_add(k, j, &q);
            if !d.at(k, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // Divisibility: d[k][k] must divide every trailing entry.
        let mut fixed = true;
        'scan: for i in (k + 1)..m {
            for j in (k + 1)..n {
                if !(d.at(i, j) % d.at(k, k)).is_zero() {
                    let one = BigInt::one();
                    d.row_add(k, i, &one);
                    u.row_add(k, i, &one);
                    u_inv.col_sub(i, k, &one);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }

        if d.at(k, k).is_negative() {
            d.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        k += 1;
    }

    let rank = (0..m.min(n)).take_while(|&i| !d.at(i, i).is_zero()).count();
    Snf {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

/// Quotient q with |a - q*b| minimized (b != 0).
fn round_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_mod_floor(a, b);
    // div_mod_floor leaves r with the sign of b and |r| < |b|; stepping q up
    // by one replaces r with r - b, which is smaller whenever |2r| > |b|.
    let two_r = &r + &r;
    if two_r.abs() > b.abs() {
        q += 1;
    }
    q
}

impl Snf {
    /// One solution of `a * x = b`, if any.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vector> {
        let m = self.u.rows();
        let n = self.v.rows();
        assert_eq!(b.len(), m);
        let y = self.u.mul_vec(b);
        let mut w = vec![BigInt::zero(); n];
        for i in 0..m {
            if i < self.rank {
                let di = self.diag(i);
                if (&y[i] % di).is_zero() {
                    w[i] = &y[i] / di;
                } else {
                    return None;
                }
            } else if !y[i].is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&w))
    }

    /// Basis of the integer kernel {x : a*x = 0}, as matrix columns.
    pub fn kernel_basis(&self) -> IntMat {
        let n = self.v.rows();
        self.v.submatrix_cols(self.rank, n)
    }

    /// Basis of the column span of `a`, as matrix columns (the row count is
    /// preserved even for rank 0).
    pub fn column_basis(&self) -> IntMat {
        let m = self.u_inv.rows();
        let mut out = IntMat::zero(m, self.rank);
        for i in 0..self.rank {
            for r in 0..m {
                *out.at_mut(r, i) = self.u_inv.at(r, i) * self.diag(i);
            }
        }
        out
    }
}

/// Solve `a * x = b` from scratch.
pub fn solve_exact(a: &IntMat, b: &[BigInt]) -> Option<Vector> {
    smith_normal_form(a).solve(b)
}

/// Solve `a * x ≡ b` where row i is taken modulo `moduli[i]`
/// (modulus 0 means an exact integer equation).
pub fn solve_congruences(a: &IntMat, b: &[BigInt], moduli: &[BigInt]) -> Option<Vector> {
    assert_eq!(a.rows(), moduli.len());
    assert_eq!(a.rows(), b.len());
    let aug = augment_with_moduli(a, moduli);
    let x = solve_exact(&aug, b)?;
    Some(x[..a.cols()].to_vec())
}

/// Columns spanning the solution lattice {x : a*x ≡ 0 (moduli)}.
pub fn congruence_kernel(a: &IntMat, moduli: &[BigInt]) -> IntMat {
    assert_eq!(a.rows(), moduli.len());
    let aug = augment_with_moduli(a, moduli);
    let ker = smith_normal_form(&aug).kernel_basis();
    // Project away the slack coordinates; the projected columns still span.
    let mut out = IntMat::zero(a.cols(), ker.cols());
    for i in 0..a.cols() {
        for j in 0..ker.cols() {
            *out.at_mut(i, j) = ker.at(i, j).clone();
        }
    }
    out
}

fn augment_with_moduli(a: &IntMat, moduli: &[BigInt]) -> IntMat {
    let slack: Vec<usize> = (0..a.rows()).filter(|&i| !moduli[i].is_zero()).collect();
    let mut aug = IntMat::zero(a.rows(), a.cols() + slack.len());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            *aug.at_mut(i, j) = a.at(i, j).clone();
        }
    }
    for (jj, &i) in slack.iter().enumerate() {
        *aug.at_mut(i, a.cols() + jj) = moduli[i].clone();
    }
    aug
}

/// A finitely generated abelian group presented as L / L' for lattices
/// L' ⊆ L ⊆ Z^n, in invariant-factor coordinates.
///
/// `factors[i]` is the order of the i-th cyclic coordinate (0 for a free
/// coordinate); entries come out of the Smith form so they divide in order.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    basis: IntMat,
    basis_snf: Snf,
    w_snf: Snf,
    pub factors: Vec<BigInt>,
}

impl QuotientPresentation {
    /// `lattice_gens` spans L, `sub_gens` spans L' (both as columns; every
    /// column of `sub_gens` must lie in L).
    pub fn new(lattice_gens: &IntMat, sub_gens: &IntMat) -> Self {
        let basis = smith_normal_form(lattice_gens).column_basis();
        let basis_snf = smith_normal_form(&basis);
        let k = basis.cols();
        let mut w_cols = Vec::new();
        for j in 0..sub_gens.cols() {
            let c = sub_gens.col(j);
            let y = basis_snf
                .solve(&c)
                .expect("sublattice generator outside the ambient lattice");
            w_cols.push(y);
        }
        let w = if w_cols.is_empty() {
            IntMat::zero(k, 0)
        } else {
            IntMat::from_cols(w_cols)
        };
        let w_snf = smith_normal_form(&w);
        let mut factors = vec![BigInt::zero(); k];
        for i in 0..w_snf.rank {
            factors[i] = w_snf.diag(i).clone();
        }
        QuotientPresentation {
            basis,
            basis_snf,
            w_snf,
            factors,
        }
    }

    /// Quotient of Z^n by the columns of `sub_gens`.
    pub fn of_ambient(n: usize, sub_gens: &IntMat) -> Self {
        Self::new(&IntMat::identity(n), sub_gens)
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Number of coordinates (free + finite).
    pub fn num_coords(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors > 1, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Order of the quotient (finite case).
    pub fn order(&self) -> BigInt {
        assert!(self.is_finite());
        let mut o = BigInt::one();
        for d in &self.factors {
            o *= d;
        }
        o
    }

    /// Coordinates of x ∈ L in the quotient (None if x ∉ L). Coordinate i is
    /// reduced mod factors[i] when finite.
    pub fn coords_of(&self, x: &[BigInt]) -> Option<Vector> {
        let y = self.basis_snf.solve(x)?;
        let mut z = self.w_snf.u.mul_vec(&y);
        for (i, d) in self.factors.iter().enumerate() {
            if !d.is_zero() {
                z[i] = num_integer::Integer::mod_floor(&z[i], d);
            }
        }
        Some(z)
    }

    pub fn is_trivial_class(&self, x: &[BigInt]) -> Option<bool> {
        self.coords_of(x).map(|c| c.iter().all(|v| v.is_zero()))
    }

    /// A representative in Z^n of coordinate-vector `c`.
    pub fn rep_of_coords(&self, c: &[BigInt]) -> Vector {
        assert_eq!(c.len(), self.num_coords());
        let y = self.w_snf.u_inv.mul_vec(c);
        self.basis.mul_vec(&y)
    }

    /// Representative of the i-th coordinate generator.
    pub fn generator_rep(&self, i: usize) -> Vector {
        let mut c = vec![BigInt::zero(); self.num_coords()];
        c[i] = BigInt::one();
        self.rep_of_coords(&c)
    }

    /// Indices of coordinates that are nontrivial (factor != 1).
    pub fn nontrivial_coords(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| !self.factors[i].is_one())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMat) {
        let f = smith_normal_form(a);
        assert_eq!(f.u.mul(a).mul(&f.v), f.d, "u*a*v != d");
        assert_eq!(f.u.mul(&f.u_inv), IntMat::identity(a.rows()));
        assert_eq!(f.v.mul(&f.v_inv), IntMat::identity(a.cols()));
        for i in 0..f.rank.saturating_sub(1) {
            assert!((f.diag(i + 1) % f.diag(i)).is_zero(), "divisibility chain");
        }
        for i in 0..a.rows().min(a.cols()) {
            for j in 0..a.rows().min(a.cols()) {
                if i != j {
                    assert!(f.d.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_known_diagonal() {
        let a = IntMat::from_rows_i64(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        check_snf(&a);
        let f = smith_normal_form(&a);
        let diag: Vec<i64> = (0..4)
            .map(|i| {
                use num_traits::ToPrimitive;
                f.d.at(i, i).to_i64().unwrap()
            })
            .collect();
        assert_eq!(diag, vec![1, 3, 21, 0]);
    }

    #[test]
    fn snf_random_shapes() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for rows in 0..5 {
            for cols in 0..5 {
                for _ in 0..8 {
                    let mut a = IntMat::zero(rows, cols);
                    for i in 0..rows {
                        for j in 0..cols {
                            *a.at_mut(i, j) = BigInt::from((rnd() % 21) as i64 - 10);
                        }
                    }
                    check_snf(&a);
                }
            }
        }
    }

    #[test]
    fn solve_identity_and_parity() {
        // identity: x = b
        let a = IntMat::identity(3);
        let b = vec_from_i64(&[4, -2, 7]);
        assert_eq!(solve_exact(&a, &b), Some(b.clone()));
        // 2x = 1 mod 4: unsolvable
        let a = IntMat::from_rows_i64(&[vec![2]]);
        assert!(solve_congruences(&a, &vec_from_i64(&[1]), &vec_from_i64(&[4])).is_none());
        // 2x = 2 mod 4: solvable, solution is 1 or 3 mod 4
        let x = solve_congruences(&a, &vec_from_i64(&[2]), &vec_from_i64(&[4])).unwrap();
        let r = num_integer::Integer::mod_floor(&x[0], &BigInt::from(4));
        assert!(r == BigInt::from(1) || r == BigInt::from(3));
    }

    #[test]
    fn smith_solve_matches_exhaustive_small_moduli() {
        // all systems over Z/d, d <= 8, up to 3 unknowns, random matrices
        let mut state = 0xdeadbeefcafef00du64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for d in 1..=8u64 {
            for unknowns in 1..=3usize {
                for _ in 0..12 {
                    let rows = 1 + (rnd() % 3) as usize;
                    let mut a = IntMat::zero(rows, unknowns);
                    let mut b = Vec::new();
                    for i in 0..rows {
                        for j in 0..unknowns {
                            *a.at_mut(i, j) = BigInt::from(rnd() % d);
                        }
                        b.push(BigInt::from(rnd() % d));
                    }
                    let moduli = vec![BigInt::from(d); rows];
                    let got = solve_congruences(&a, &b, &moduli);
                    // exhaustive search
                    let mut found = false;
                    let total = d.pow(unknowns as u32);
                    'outer: for mask in 0..total {
                        let mut x = Vec::new();
                        let mut m = mask;
                        for _ in 0..unknowns {
                            x.push(BigInt::from(m % d));
                            m /= d;
                        }
                        for i in 0..rows {
                            let mut s = BigInt::zero();
                            for j in 0..unknowns {
                                s += a.at(i, j) * &x[j];
                            }
                            if !num_integer::Integer::mod_floor(&(&s - &b[i]), &BigInt::from(d))
                                .is_zero()
                            {
                                continue 'outer;
                            }
                        }
                        found = true;
                        break;
                    }
                    assert_eq!(got.is_some(), found, "d={} unk={}", d, unknowns);
                    if let Some(x) = got {
                        for i in 0..rows {
                            let mut s = BigInt::zero();
                            for j in 0..unknowns {
                                s += a.at(i, j) * &x[j];
                            }
                            assert!(num_integer::Integer::mod_floor(
                                &(&s - &b[i]),
                                &BigInt::from(d)
                            )
                            .is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quotient_presentation_z_mod_lattice() {
        // Z^2 / <(2,0),(0,4)> = Z/2 x Z/4
        let sub = IntMat::from_rows_i64(&[vec![2, 0], vec![0, 4]]);
        let q = QuotientPresentation::of_ambient(2, &sub);
        let fs: Vec<i64> = q
            .invariant_factors()
            .iter()
            .map(|d| {
                use num_traits::ToPrimitive;
                d.to_i64().unwrap()
            })
            .collect();
        assert_eq!(fs, vec![2, 4]);
        assert!(q.is_finite());
        assert_eq!(q.order(), BigInt::from(8));
        // (1,1) + (2,0) maps to the same class as (1,1); (2,4) is trivial
        let c1 = q.coords_of(&vec_from_i64(&[1, 1])).unwrap();
        let c2 = q.coords_of(&vec_from_i64(&[3, 1])).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(q.is_trivial_class(&vec_from_i64(&[2, 4])), Some(true));
        assert_eq!(q.is_trivial_class(&vec_from_i64(&[1, 0])), Some(false));
        // generator reps round-trip
        for i in 0..q.num_coords() {
            let rep = q.generator_rep(i);
            let c = q.coords_of(&rep).unwrap();
            for (j, v) in c.iter().enumerate() {
                if j == i {
                    assert!(v.is_one());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn quotient_with_free_part() {
        // Z^2 / <(0,3)> = Z x Z/3
        let sub = IntMat::from_cols(vec![vec_from_i64(&[0, 3])]);
        let q = QuotientPresentation::of_ambient(2, &sub);
        assert_eq!(q.free_rank(), 1);
        assert_eq!(q.invariant_factors(), vec![BigInt::from(3)]);
        assert!(!q.is_finite());
    }

    #[test]
    fn congruence_kernel_spans_solutions() {
        // x + y = 0 mod 2, over Z^2: solutions lattice has index 2
        let a = IntMat::from_rows_i64(&[vec![1, 1]]);
        let k = congruence_kernel(&a, &[BigInt::from(2)]);
        let q = QuotientPresentation::new(&IntMat::identity(2), &k);
        assert_eq!(q.invariant_factors(), vec![BigInt::from(2)]);
    }
}
