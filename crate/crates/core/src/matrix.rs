//! Dense matrices over the rational-function field `F(D)`.
//!
//! Code dimensions are tiny (a handful of rows and columns), so everything is
//! dense and exact. Elimination steps check intermediate degrees against
//! [`Limits::max_degree`] so that runaway growth surfaces as an error.

use std::fmt;

use crate::dense;
use crate::error::AlgebraError;
use crate::field::{Field, Gf2, Gf4};
use crate::poly::Poly;
use crate::rational::RatFn;

/// Guards for exact elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 512 }
    }
}

fn guard<F: Field>(limits: &Limits, r: &RatFn<F>) -> Result<(), AlgebraError> {
    let degree = r.num().degree().unwrap_or(0).max(r.den().degree().unwrap_or(0));
    if degree > limits.max_degree {
        return Err(AlgebraError::DegreeCap { cap: limits.max_degree, degree });
    }
    Ok(())
}

fn guard_poly<F: Field>(limits: &Limits, p: &Poly<F>) -> Result<(), AlgebraError> {
    let degree = p.degree().unwrap_or(0);
    if degree > limits.max_degree {
        return Err(AlgebraError::DegreeCap { cap: limits.max_degree, degree });
    }
    Ok(())
}

/// Substitutions applied entry-wise by [`RatMatrix::substitute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    /// `D → D²`
    Square,
    /// `D → 1/D`
    Reflect,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<RatFn<F>>,
}

impl<F: Field> RatMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![RatFn::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFn::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFn<F>>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_poly_rows(rows: Vec<Vec<Poly<F>>>) -> Result<Self, AlgebraError> {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(RatFn::from).collect()).collect())
    }

    /// Parses rows of entries in the canonical text syntax, e.g. `[["1+D^2", "1+D+D^2"]]`.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self, crate::error::ParseError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<RatFn<F>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed).map_err(|e| crate::error::ParseError::new(e.to_string()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn<F> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFn<F>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFn<F>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn row_mut(&mut self, i: usize) -> &mut [RatFn<F>] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFn<F>> {
        self.data.iter()
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<Vec<RatFn<F>>> = idx.into_iter().map(|i| self.row(i).to_vec()).collect();
        let n = rows.len();
        let mut m = Self::from_rows(rows).expect("rows share width");
        if n == 0 {
            m.cols = self.cols;
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect());
        let mut m = Self::from_rows(rows.collect()).expect("rows share width");
        m.rows = self.rows;
        m.cols = idx.len();
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RatFn::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(AlgebraError::DimensionMismatch("addition".into()));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn map(&self, f: impl Fn(&RatFn<F>) -> RatFn<F>) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Entry-wise substitution followed by canonicalization.
    pub fn substitute(&self, s: Substitution) -> Self {
        match s {
            Substitution::Square => self.map(|r| r.compose_power(2)),
            Substitution::Reflect => self.map(|r| r.reflect()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_polynomial(&self) -> bool {
        self.data.iter().all(|x| x.is_polynomial())
    }

    /// Every entry realizable by a causal circuit.
    pub fn is_causal(&self) -> bool {
        self.data.iter().all(|x| x.is_causal())
    }

    /// Polynomial entries, or an error if any entry has a nontrivial denominator.
    pub fn poly_rows(&self) -> Result<Vec<Vec<Poly<F>>>, AlgebraError> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.as_poly().cloned().ok_or(AlgebraError::NotPolynomial))
                    .collect()
            })
            .collect()
    }

    /// Largest entry degree in each row (numerator or denominator).
    pub fn row_orders(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.order()).max().unwrap_or(0)).collect()
    }

    /// Multiplies every entry by `D^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|x| x.shift(k))
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Smallest `a ≥ 0` such that `D^a · self` is causal.
    pub fn causal_shift(&self) -> usize {
        self.data.iter().map(|x| x.den_valuation()).max().unwrap_or(0)
    }

    // ------------------------------------------------------------------
    // elimination

    /// Reduced row echelon form over `F(D)`, with pivot columns.
    pub fn rref_with(&self, limits: &Limits) -> Result<(Self, Vec<usize>), AlgebraError> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = pick_pivot(&m, r, c) else { continue };
            m.swap_rows(r, p);
            eliminate(&mut m, r, c, limits)?;
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn rref(&self) -> Result<(Self, Vec<usize>), AlgebraError> {
        self.rref_with(&Limits::default())
    }

    pub fn rank(&self) -> Result<usize, AlgebraError> {
        Ok(self.rref()?.1.len())
    }

    /// Gauss–Jordan on `[self | I]` over the first `cols` columns.
    ///
    /// Returns `U` (`rows × rows`, invertible) with `U · self = [I; 0]`.
    fn column_reducer(&self, limits: &Limits) -> Result<Self, AlgebraError> {
        let (n, r) = (self.rows, self.cols);
        let mut aug = Self::zeros(n, r + n);
        for i in 0..n {
            for j in 0..r {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, r + i, RatFn::one());
        }
        for c in 0..r {
            let Some(p) = pick_pivot(&aug, c, c) else {
                let found = self.rank()?;
                return Err(AlgebraError::RankDeficient { expected: r, found });
            };
            aug.swap_rows(c, p);
            eliminate(&mut aug, c, c, limits)?;
        }
        Ok(aug.select_cols(&(r..r + n).collect::<Vec<_>>()))
    }

    /// Left inverse `L` (`cols × rows`) with `L · self = I`, by elimination over `F(D)`.
    ///
    /// Requires full column rank.
    pub fn left_inverse_with(&self, limits: &Limits) -> Result<Self, AlgebraError> {
        let u = self.column_reducer(limits)?;
        Ok(u.select_rows(0..self.cols))
    }

    pub fn left_inverse(&self) -> Result<Self, AlgebraError> {
        self.left_inverse_with(&Limits::default())
    }

    /// Left inverse by the Moore–Penrose formula `(AᵀA)⁻¹Aᵀ`.
    ///
    /// In characteristic 2 the Gram matrix `AᵀA` can be singular even when `A`
    /// has full column rank; that case is reported as [`AlgebraError::SingularGram`].
    pub fn left_inverse_moore_penrose(&self) -> Result<Self, AlgebraError> {
        let t = self.transpose();
        let gram = t.mul(self)?;
        let inv = gram.inverse().map_err(|e| match e {
            AlgebraError::RankDeficient { .. } => AlgebraError::SingularGram,
            other => other,
        })?;
        inv.mul(&t)
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        self.left_inverse()
    }

    pub fn det(&self) -> Result<RatFn<F>, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = RatFn::one();
        for c in 0..m.cols {
            let Some(p) = pick_pivot(&m, c, c) else { return Ok(RatFn::zero()) };
            m.swap_rows(c, p); // sign is irrelevant in characteristic 2
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            for i in c + 1..m.rows {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis `G` (`(rows − cols) × rows`) of the left null space, `G · self = 0`.
    ///
    /// The basis is the reduced row echelon form of the kernel (canonical for the
    /// row space), then each row is cleared of denominators and divided by the
    /// gcd of its entries. Requires full column rank.
    pub fn null_space_basis_with(&self, limits: &Limits) -> Result<Self, AlgebraError> {
        let u = self.column_reducer(limits)?;
        let kernel = u.select_rows(self.cols..self.rows);
        if kernel.rows == 0 {
            return Ok(kernel);
        }
        let (canon, _) = kernel.rref_with(limits)?;
        Ok(canon.normalize_rows())
    }

    pub fn null_space_basis(&self) -> Result<Self, AlgebraError> {
        self.null_space_basis_with(&Limits::default())
    }

    /// Clears each row to coprime polynomial entries whose first nonzero entry is monic.
    pub fn normalize_rows(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(Poly::one(), |acc, x| acc.lcm(x.den()));
            let nums: Vec<Poly<F>> = row
                .iter()
                .map(|x| &x.num().clone() * &lcm.exact_div(x.den()).expect("lcm divisible"))
                .collect();
            let g = nums.iter().fold(Poly::zero(), |acc, p| acc.gcd(p));
            if g.is_zero() {
                continue;
            }
            let mut cleared: Vec<Poly<F>> = nums.iter().map(|p| p.exact_div(&g).unwrap()).collect();
            if let Some(first) = cleared.iter().find(|p| !p.is_zero()) {
                let inv = first.lead().inv().unwrap();
                cleared = cleared.iter().map(|p| p.scale(inv)).collect();
            }
            for (j, p) in cleared.into_iter().enumerate() {
                out.set(i, j, RatFn::from(p));
            }
        }
        out
    }

    /// Monic gcd of all maximal (`rows × rows`) minors of a polynomial matrix with `rows ≤ cols`.
    pub fn minors_gcd(&self) -> Result<Poly<F>, AlgebraError> {
        if !self.is_polynomial() {
            return Err(AlgebraError::NotPolynomial);
        }
        let k = self.rows;
        let mut g = Poly::zero();
        for cols in combinations(self.cols, k) {
            let d = self.select_cols(&cols).det()?;
            let d = d.as_poly().cloned().ok_or(AlgebraError::NotPolynomial)?;
            g = g.gcd(&d);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// A polynomial generator is non-catastrophic when its maximal minors share
    /// no factor other than a power of `D`.
    pub fn is_non_catastrophic(&self) -> Result<bool, AlgebraError> {
        let g = self.minors_gcd()?;
        Ok(g.is_monomial())
    }

    /// Polynomial row reduction by unimodular operations.
    ///
    /// For a polynomial `self` (`n × r`, full column rank) returns `(U, T)` with `U`
    /// unimodular, `U · self = [T; 0]` and `T` upper triangular. The bottom
    /// `n − r` rows of `U` form a basic (non-catastrophic) kernel basis, and
    /// `T⁻¹ · U[..r]` is a left inverse with no denominator beyond `det T`.
    pub fn unimodular_reduction(&self, limits: &Limits) -> Result<(Self, Self), AlgebraError> {
        let (n, r) = (self.rows, self.cols);
        let mut a = self.poly_rows()?;
        let mut u: Vec<Vec<Poly<F>>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect();
        for c in 0..r {
            loop {
                let live: Vec<usize> = (c..n).filter(|&i| !a[i][c].is_zero()).collect();
                let Some(&p) = live.iter().min_by_key(|&&i| (a[i][c].degree(), i)) else {
                    let found = self.rank()?;
                    return Err(AlgebraError::RankDeficient { expected: r, found });
                };
                if live.len() == 1 {
                    a.swap(c, p);
                    u.swap(c, p);
                    break;
                }
                for &i in &live {
                    if i == p {
                        continue;
                    }
                    let (q, _) = a[i][c].div_rem(&a[p][c]);
                    for j in 0..r {
                        let v = &a[i][j] - &(&q * &a[p][j]);
                        guard_poly(limits, &v)?;
                        a[i][j] = v;
                    }
                    for j in 0..n {
                        let v = &u[i][j] - &(&q * &u[p][j]);
                        guard_poly(limits, &v)?;
                        u[i][j] = v;
                    }
                }
            }
        }
        let um = Self::from_poly_rows(u)?;
        let t = Self::from_poly_rows(a[..r].to_vec())?;
        Ok((um, t))
    }

    // ------------------------------------------------------------------
    // polynomial generator helpers

    /// Row degrees of a polynomial matrix (zero rows report 0).
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| self.row(i).iter().filter_map(|x| x.num().degree()).max().unwrap_or(0))
            .collect()
    }

    fn leading_rows(rows: &[Vec<Poly<F>>], degs: &[usize]) -> Vec<Vec<F>> {
        rows.iter().zip(degs).map(|(r, &d)| r.iter().map(|p| p.coeff(d)).collect()).collect()
    }

    /// Turns a full-row-rank polynomial matrix into row-reduced form (its
    /// leading-coefficient matrix has full rank) by unimodular row operations.
    /// For a basic input the result is a minimal basis of the same row module.
    pub fn row_reduced(&self) -> Result<Self, AlgebraError> {
        let mut rows = self.poly_rows()?;
        loop {
            if rows.iter().any(|r| r.iter().all(|p| p.is_zero())) {
                return Err(AlgebraError::RankDeficient { expected: self.rows, found: self.rank()? });
            }
            let degs: Vec<usize> =
                rows.iter().map(|r| r.iter().filter_map(|p| p.degree()).max().unwrap()).collect();
            let lead = Self::leading_rows(&rows, &degs);
            let Some(a) = dense::dependency(&lead) else { break };
            // replace the highest-degree row taking part in the dependency
            let star = (0..rows.len()).filter(|&i| !a[i].is_zero()).max_by_key(|&i| (degs[i], i)).unwrap();
            let inv = a[star].inv().unwrap();
            let mut new_row = vec![Poly::zero(); self.cols];
            for (i, r) in rows.iter().enumerate() {
                if a[i].is_zero() {
                    continue;
                }
                let coef = a[i] * inv;
                for (acc, p) in new_row.iter_mut().zip(r) {
                    *acc = &*acc + &p.shift(degs[star] - degs[i]).scale(coef);
                }
            }
            rows[star] = new_row;
        }
        Self::from_poly_rows(rows)
    }

    /// Reduces a polynomial row modulo the row module of a row-reduced basis,
    /// returning a representative of least degree.
    pub fn reduce_row_modulo(&self, row: &[Poly<F>]) -> Result<Vec<Poly<F>>, AlgebraError> {
        let basis = self.poly_rows()?;
        let degs: Vec<usize> = self.row_degrees();
        let mut row = row.to_vec();
        loop {
            let Some(e) = row.iter().filter_map(|p| p.degree()).max() else { break };
            let usable: Vec<usize> = (0..basis.len()).filter(|&i| degs[i] <= e).collect();
            let lead: Vec<Vec<F>> =
                usable.iter().map(|&i| basis[i].iter().map(|p| p.coeff(degs[i])).collect()).collect();
            let target: Vec<F> = row.iter().map(|p| p.coeff(e)).collect();
            let Some(a) = dense::solve_combination(&lead, &target) else { break };
            for (&i, &ai) in usable.iter().zip(&a) {
                if ai.is_zero() {
                    continue;
                }
                for (acc, p) in row.iter_mut().zip(&basis[i]) {
                    *acc = &*acc - &p.shift(e - degs[i]).scale(ai);
                }
            }
        }
        Ok(row)
    }
}

impl RatMatrix<Gf2> {
    /// Embeds a binary matrix into GF(4)(D).
    pub fn lift(&self) -> RatMatrix<Gf4> {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| RatFn::new(x.num().lift(), x.den().lift()).expect("nonzero denominator"))
                .collect(),
        }
    }
}

fn pick_pivot<F: Field>(m: &RatMatrix<F>, from_row: usize, col: usize) -> Option<usize> {
    (from_row..m.rows)
        .filter(|&i| !m.get(i, col).is_zero())
        .min_by_key(|&i| (m.get(i, col).complexity(), i))
}

/// Scales row `r` so that `(r, c)` is one and clears column `c` in every other row.
fn eliminate<F: Field>(
    m: &mut RatMatrix<F>,
    r: usize,
    c: usize,
    limits: &Limits,
) -> Result<(), AlgebraError> {
    let inv = m.get(r, c).inv().expect("pivot is nonzero");
    for x in m.row_mut(r).iter_mut() {
        *x = &*x * &inv;
        guard(limits, x)?;
    }
    let pivot_row = m.row(r).to_vec();
    for i in 0..m.rows {
        if i == r || m.get(i, c).is_zero() {
            continue;
        }
        let f = m.get(i, c).clone();
        for (j, pv) in pivot_row.iter().enumerate() {
            if pv.is_zero() {
                continue;
            }
            let v = m.get(i, j) - &(&f * pv);
            guard(limits, &v)?;
            m.set(i, j, v);
        }
    }
    Ok(())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl<F: Field> fmt::Display for RatMatrix<F> {
    /// One row per line, entries separated by `, `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for RatMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix<{}>[{}x{}]\n{}", F::NAME, self.rows, self.cols, self)
    }
}
