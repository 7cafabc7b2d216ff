//! Exact sparse linear algebra over a [`Field`]: matrices, canonical
//! row-reduced subspaces, and the quotient complexes `K_•(M; (U_i))`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Field, Scalar};

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `a - f·b`.
pub fn row_axpy(field: &Field, a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> SparseRow {
    if f.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, field.mul(f, &b[j].1).neg()));
            j += 1;
        } else {
            let v = field.sub_mul(&a[i].1, f, &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_scale(field: &Field, r: &[(usize, Scalar)], f: &Scalar) -> SparseRow {
    if f.is_zero() {
        return Vec::new();
    }
    r.iter().map(|(c, v)| (*c, field.mul(f, v))).collect()
}

fn row_get(r: &[(usize, Scalar)], c: usize) -> Option<&Scalar> {
    r.binary_search_by_key(&c, |x| x.0).ok().map(|k| &r[k].1)
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(c, s)| (c, s.clone())).collect()
}

pub fn sparse_to_dense(r: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut v = alloc::vec![Scalar::zero(); len];
    for (c, s) in r {
        v[*c] = s.clone();
    }
    v
}

/// Accumulates linear combinations of sparse rows.
struct Accumulator {
    vals: Vec<Scalar>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator { vals: alloc::vec![Scalar::zero(); len], touched: Vec::new(), mark: alloc::vec![false; len] }
    }

    fn add_scaled(&mut self, field: &Field, f: &Scalar, r: &[(usize, Scalar)]) {
        let nf = f.neg();
        for (c, v) in r {
            if !self.mark[*c] {
                self.mark[*c] = true;
                self.touched.push(*c);
            }
            self.vals[*c] = field.sub_mul(&self.vals[*c], &nf, v);
        }
    }

    fn take(&mut self) -> SparseRow {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            self.mark[c] = false;
            let v = core::mem::take(&mut self.vals[c]);
            if !v.is_zero() {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// A matrix stored as sparse rows. Acts on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<alloc::string::String> =
                (0..self.cols).map(|c| self.get(r, c).to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: alloc::vec![Vec::new(); rows] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &Scalar::one())
    }

    pub fn scalar(field: &Field, n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        if !s.is_zero() {
            for r in 0..n {
                m.data[r].push((r, s.clone()));
            }
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, data: Vec<SparseRow>) -> Matrix {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, v)| *c < cols && !v.is_zero())));
        Matrix { field: field.clone(), rows: data.len(), cols, data }
    }

    pub fn from_dense(field: &Field, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix".into()));
        }
        let data = rows.iter().map(|r| dense_to_sparse(&field_reduce_row(field, r))).collect();
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Matrix from a function of `(row, col)`.
    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let data = (0..rows)
            .map(|r| (0..cols).filter_map(|c| Some((c, f(r, c))).filter(|x| !x.1.is_zero())).collect())
            .collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Matrix whose columns are the given sparse vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[SparseRow]) -> Matrix {
        let mut data = alloc::vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        Matrix { field: field.clone(), rows, cols: columns.len(), data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseRow] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        row_get(&self.data[r], c).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |x| x.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (c, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().enumerate().find_map(|(r, row)| row.first().map(|x| (r, x.0)))
    }

    fn same_field(&self, o: &Matrix) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        self.same_field(o)?;
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols,
                o.rows,
                o.cols
            )));
        }
        let mut acc = Accumulator::new(o.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, v) in row {
                    acc.add_scaled(&self.field, v, &o.data[*k]);
                }
                acc.take()
            })
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: o.cols, data })
    }

    fn check_shape(&self, o: &Matrix) -> Result<()> {
        self.same_field(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(alloc::format!(
                "{}x{} versus {}x{}",
                self.rows,
                self.cols,
                o.rows,
                o.cols
            )));
        }
        Ok(())
    }

    /// `self - f·o`.
    pub fn sub_scaled(&self, f: &Scalar, o: &Matrix) -> Result<Matrix> {
        self.check_shape(o)?;
        let data =
            self.data.iter().zip(&o.data).map(|(a, b)| row_axpy(&self.field, a, f, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.sub_scaled(&Scalar::from_int(-1), o)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.sub_scaled(&Scalar::one(), o)
    }

    pub fn scale(&self, f: &Scalar) -> Matrix {
        let data = self.data.iter().map(|r| row_scale(&self.field, r, f)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = alloc::vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Kronecker product; row index `(i, k) ↦ i·o.rows + k`.
    pub fn kron(&self, o: &Matrix) -> Result<Matrix> {
        self.same_field(o)?;
        let mut data = Vec::with_capacity(self.rows * o.rows);
        for ra in &self.data {
            for rb in &o.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ca, va) in ra {
                    for (cb, vb) in rb {
                        row.push((ca * o.cols + cb, self.field.mul(va, vb)));
                    }
                }
                data.push(row);
            }
        }
        Ok(Matrix { field: self.field.clone(), rows: self.rows * o.rows, cols: self.cols * o.cols, data })
    }

    /// `I_a ⊗ self ⊗ I_b` for square `self`.
    pub fn embed(&self, a: usize, b: usize) -> Matrix {
        let (m, n) = (self.rows, self.cols);
        let mut data = Vec::with_capacity(a * m * b);
        for x in 0..a {
            for row in &self.data {
                for y in 0..b {
                    data.push(row.iter().map(|(c, v)| ((x * n + c) * b + y, v.clone())).collect());
                }
            }
        }
        Matrix { field: self.field.clone(), rows: a * m * b, cols: a * n * b, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter().fold(Scalar::zero(), |acc, (c, x)| {
                    self.field.sub_mul(&acc, &x.neg(), &v[*c])
                })
            })
            .collect())
    }

    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> SparseRow {
        // column access through the transpose would be faster; vectors here are short
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let (mut i, mut j) = (0, 0);
            let mut acc = Scalar::zero();
            while i < row.len() && j < v.len() {
                if row[i].0 < v[j].0 {
                    i += 1;
                } else if v[j].0 < row[i].0 {
                    j += 1;
                } else {
                    acc = self.field.sub_mul(&acc, &row[i].1.neg(), &v[j].1);
                    i += 1;
                    j += 1;
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        out
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> SparseRow {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row_get(row, c).map(|v| (r, v.clone())))
            .collect()
    }

    /// `P·self·P⁻¹` for the coordinate permutation `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Matrix {
        let mut data = alloc::vec![Vec::new(); self.rows];
        for (r, row) in self.data.iter().enumerate() {
            let mut nr: SparseRow = row.iter().map(|(c, v)| (perm[*c], v.clone())).collect();
            nr.sort_unstable_by_key(|x| x.0);
            data[perm[r]] = nr;
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(Subspace::span(&self.field, self.cols, self.data.iter().cloned())?.dim())
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let aug = self.data.iter().enumerate().map(|(r, row)| {
            let mut v = row.clone();
            v.push((n + r, Scalar::one()));
            v
        });
        let s = Subspace::span(&self.field, 2 * n, aug)?;
        if s.pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) || s.dim() < n {
            return Err(Error::DivisionByZero);
        }
        let data = s.basis.into_iter().map(|row| row.into_iter().filter(|x| x.0 >= n).map(|(c, v)| (c - n, v)).collect()).collect();
        Ok(Matrix { field: self.field.clone(), rows: n, cols: n, data })
    }
}

fn field_reduce_row(field: &Field, r: &[Scalar]) -> Vec<Scalar> {
    r.iter().map(|s| field.reduce(s.coeffs())).collect()
}

/// Row-echelon builder: rows kept with distinct leading columns.
struct Echelon {
    field: Field,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    fn new(field: &Field, ambient: usize) -> Self {
        Echelon { field: field.clone(), rows: Vec::new(), pivot_row: alloc::vec![None; ambient] }
    }

    /// Reduces leading terms until the row vanishes or has a new leading column.
    fn insert(&mut self, mut row: SparseRow) -> Result<bool> {
        while let Some((c, v)) = row.first() {
            match self.pivot_row[*c] {
                Some(k) => {
                    let v = v.clone();
                    row = row_axpy(&self.field, &row, &v, &self.rows[k]);
                }
                None => {
                    let inv = self.field.inv(v)?;
                    let c = *c;
                    let row = row_scale(&self.field, &row, &inv);
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Back-substitutes into reduced row-echelon form.
    fn finish(self) -> (Vec<SparseRow>, Vec<usize>) {
        let Echelon { field, mut rows, pivot_row } = self;
        let mut order: Vec<(usize, usize)> =
            pivot_row.iter().enumerate().filter_map(|(c, k)| k.map(|k| (c, k))).collect();
        order.reverse();
        for &(p, k) in &order {
            let mut row = core::mem::take(&mut rows[k]);
            let mut idx = 1;
            while idx < row.len() {
                let c = row[idx].0;
                match pivot_row[c] {
                    Some(j) if c > p => {
                        let v = row[idx].1.clone();
                        row = row_axpy(&field, &row, &v, &rows[j]);
                    }
                    _ => idx += 1,
                }
            }
            rows[k] = row;
        }
        order.reverse();
        let pivots = order.iter().map(|x| x.0).collect();
        let basis = order.iter().map(|&(_, k)| core::mem::take(&mut rows[k])).collect();
        (basis, pivots)
    }
}

/// A subspace of `k^ambient`, stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<SparseRow>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}, pivots {:?})", self.dim(), self.ambient, self.pivots)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient).map(|c| alloc::vec![(c, Scalar::one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary sparse vectors.
    pub fn span(field: &Field, ambient: usize, rows: impl IntoIterator<Item = SparseRow>) -> Result<Subspace> {
        let mut e = Echelon::new(field, ambient);
        for r in rows {
            if let Some((c, _)) = r.last() {
                if *c >= ambient {
                    return Err(Error::DimensionMismatch("vector exceeds ambient dimension".into()));
                }
            }
            e.insert(r)?;
        }
        let (basis, pivots) = e.finish();
        Ok(Subspace { field: field.clone(), ambient, basis, pivots })
    }

    pub fn span_dense(field: &Field, ambient: usize, rows: &[Vec<Scalar>]) -> Result<Subspace> {
        Subspace::span(field, ambient, rows.iter().map(|r| dense_to_sparse(r)))
    }

    /// Trusted constructor for rows already in reduced row-echelon form.
    fn from_rref(field: &Field, ambient: usize, basis: Vec<SparseRow>) -> Subspace {
        let pivots = basis.iter().map(|r| r[0].0).collect();
        Subspace { field: field.clone(), ambient, basis, pivots }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseRow] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = alloc::vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn compatible(&self, o: &Subspace) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != o.ambient {
            return Err(Error::DimensionMismatch(alloc::format!(
                "ambient {} versus {}",
                self.ambient,
                o.ambient
            )));
        }
        Ok(())
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseRow {
        let mut row: SparseRow = v.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Some(f) = row_get(&row, p).cloned() {
                row = row_axpy(&self.field, &row, &f, &self.basis[k]);
            }
        }
        row
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` in the echelon basis.
    pub fn coords(&self, v: &[(usize, Scalar)]) -> Result<Vec<Scalar>> {
        if !self.contains(v) {
            return Err(Error::NotInSubspace(alloc::format!("vector outside subspace of dim {}", self.dim())));
        }
        Ok(self.pivots.iter().map(|&p| row_get(v, p).cloned().unwrap_or_default()).collect())
    }

    pub fn is_subspace_of(&self, o: &Subspace) -> Result<bool> {
        self.compatible(o)?;
        Ok(self.basis.iter().all(|r| o.contains(r)))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.compatible(o)?;
        if o.dim() == 0 {
            return Ok(self.clone());
        }
        if self.dim() == 0 {
            return Ok(o.clone());
        }
        Subspace::span(&self.field, self.ambient, self.basis.iter().chain(&o.basis).cloned())
    }

    /// Annihilator under the standard coordinate pairing.
    pub fn orthogonal_complement(&self) -> Result<Subspace> {
        let free = self.free_columns();
        let mut col_entries: Vec<SparseRow> = alloc::vec![Vec::new(); self.ambient];
        for (k, row) in self.basis.iter().enumerate() {
            for (c, v) in row.iter().skip(1) {
                col_entries[*c].push((self.pivots[k], v.neg()));
            }
        }
        let rows = free.into_iter().map(|f| {
            let mut r = core::mem::take(&mut col_entries[f]);
            r.push((f, Scalar::one()));
            r.sort_unstable_by_key(|x| x.0);
            r
        });
        Subspace::span(&self.field, self.ambient, rows)
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.compatible(o)?;
        if self.dim() == 0 || o.dim() == self.ambient {
            return Ok(self.clone());
        }
        if o.dim() == 0 || self.dim() == self.ambient {
            return Ok(o.clone());
        }
        self.orthogonal_complement()?.sum(&o.orthogonal_complement()?)?.orthogonal_complement()
    }

    /// `self ⊗ k^b`, with coordinates `(i, y) ↦ i·b + y`.
    pub fn tensor_right(&self, b: usize) -> Subspace {
        let basis = self
            .basis
            .iter()
            .flat_map(|r| (0..b).map(move |y| r.iter().map(|(c, v)| (c * b + y, v.clone())).collect()))
            .collect();
        Subspace::from_rref(&self.field, self.ambient * b, basis)
    }

    /// `k^a ⊗ self`.
    pub fn tensor_left(&self, a: usize) -> Subspace {
        let m = self.ambient;
        let basis = (0..a)
            .flat_map(|x| self.basis.iter().map(move |r| r.iter().map(|(c, v)| (x * m + c, v.clone())).collect()))
            .collect();
        Subspace::from_rref(&self.field, a * m, basis)
    }

    /// `k^a ⊗ self ⊗ k^b`.
    pub fn embed(&self, a: usize, b: usize) -> Subspace {
        self.tensor_left(a).tensor_right(b)
    }

    /// `self ⊗ o`.
    pub fn tensor(&self, o: &Subspace) -> Subspace {
        let m = o.ambient;
        let mut basis = Vec::with_capacity(self.dim() * o.dim());
        for r in &self.basis {
            for s in &o.basis {
                let mut row = Vec::with_capacity(r.len() * s.len());
                for (c, v) in r {
                    for (d, w) in s {
                        row.push((c * m + d, self.field.mul(v, w)));
                    }
                }
                basis.push(row);
            }
        }
        Subspace::from_rref(&self.field, self.ambient * m, basis)
    }

    /// Image under `m`.
    pub fn map(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map source dimension".into()));
        }
        Subspace::span(&self.field, m.rows(), self.basis.iter().map(|r| m.apply_sparse(r)))
    }

    /// `{v : m·v ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace> {
        if m.rows() != self.ambient {
            return Err(Error::DimensionMismatch("preimage target dimension".into()));
        }
        let ann = self.orthogonal_complement()?;
        let c = Matrix::from_rows(&self.field, self.ambient, ann.basis.clone());
        kernel(&c.mul(m)?)
    }

    /// Coordinate permutation `perm[old] = new`.
    pub fn permute(&self, perm: &[usize]) -> Result<Subspace> {
        Subspace::span(
            &self.field,
            self.ambient,
            self.basis.iter().map(|r| {
                let mut nr: SparseRow = r.iter().map(|(c, v)| (perm[*c], v.clone())).collect();
                nr.sort_unstable_by_key(|x| x.0);
                nr
            }),
        )
    }

    /// Basis rows as a matrix (one basis vector per row).
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, self.ambient, self.basis.clone())
    }
}

/// Row-reduces `m`, returning its row space and rank.
pub fn rref(m: &Matrix) -> Result<(Subspace, usize)> {
    let s = Subspace::span(m.field(), m.cols(), m.row_data().iter().cloned())?;
    let r = s.dim();
    Ok((s, r))
}

/// `{v : m·v = 0}`.
pub fn kernel(m: &Matrix) -> Result<Subspace> {
    rref(m)?.0.orthogonal_complement()
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Result<Subspace> {
    Ok(rref(&m.transpose())?.0)
}

pub fn orthogonal_complement(u: &Subspace) -> Result<Subspace> {
    u.orthogonal_complement()
}

/// Coordinates on `Υ/W` given by the free columns of `W` in `Υ`-coordinates.
#[derive(Clone, Debug)]
struct QuotientChart {
    upsilon: Subspace,
    w_local: Subspace,
    free: Vec<usize>,
}

impl QuotientChart {
    fn new(upsilon: Subspace, w: &Subspace) -> Result<QuotientChart> {
        let rows: Result<Vec<SparseRow>> =
            w.basis().iter().map(|r| upsilon.coords(r).map(|c| dense_to_sparse(&c))).collect();
        let w_local = Subspace::span(upsilon.field(), upsilon.dim(), rows?)?;
        let free = w_local.free_columns();
        Ok(QuotientChart { upsilon, w_local, free })
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    fn project(&self, v: &[(usize, Scalar)]) -> Result<Vec<Scalar>> {
        let local = dense_to_sparse(&self.upsilon.coords(v)?);
        let red = sparse_to_dense(&self.w_local.reduce(&local), self.upsilon.dim());
        Ok(self.free.iter().map(|&c| red[c].clone()).collect())
    }

    fn lift(&self, k: usize) -> SparseRow {
        self.upsilon.basis()[self.free[k]].clone()
    }
}

/// The complex `K_•(M; (U_i))` with `K_i = Υ_i / (Υ_i ∩ Σ_i)` for `0 ≤ i ≤ n`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    charts: Vec<QuotientChart>,
    /// `diffs[i-1]` is `∂_i : K_i → K_{i-1}`.
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `dim K_i` for `i = 0..=n`.
    pub fn dims(&self) -> Vec<usize> {
        self.charts.iter().map(|c| c.dim()).collect()
    }

    pub fn top(&self) -> usize {
        self.charts.len() - 1
    }

    /// `∂_i`, for `1 ≤ i ≤ n`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.diffs[i - 1]
    }

    pub fn upsilon(&self, i: usize) -> &Subspace {
        &self.charts[i].upsilon
    }

    /// Class in `K_i` of a vector of `Υ_i`.
    pub fn project(&self, i: usize, v: &[(usize, Scalar)]) -> Result<Vec<Scalar>> {
        self.charts[i].project(v)
    }

    /// Representative in `M` of the `k`-th basis vector of `K_i`.
    pub fn lift(&self, i: usize, k: usize) -> SparseRow {
        self.charts[i].lift(k)
    }

    /// Matrix `K_i → K_j` induced by `op` acting on `M`.
    pub fn induced_map(&self, i: usize, j: usize, op: &Matrix) -> Result<Matrix> {
        let cols: Result<Vec<SparseRow>> = (0..self.charts[i].dim())
            .map(|k| self.project(j, &op.apply_sparse(&self.lift(i, k))).map(|c| dense_to_sparse(&c)))
            .collect();
        Ok(Matrix::from_columns(&self.field, self.charts[j].dim(), &cols?))
    }

    pub fn is_complex(&self) -> Result<bool> {
        for i in 2..=self.top() {
            if !self.diffs[i - 2].mul(&self.diffs[i - 1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Builds `K_•(M; (U_1, ..., U_{n-1}))` inside `M = k^ambient`.
pub fn quotient_complex(field: &Field, ambient: usize, subspaces: &[Subspace]) -> Result<ChainComplex> {
    let n = subspaces.len() + 1;
    for u in subspaces {
        if u.ambient() != ambient || u.field() != field {
            return Err(Error::DimensionMismatch("subspace not in the ambient module".into()));
        }
    }
    // Υ_0 = Υ_1 = M, Υ_i = U_1 ∩ ... ∩ U_{i-1}
    let mut ups = alloc::vec![Subspace::full(field, ambient); 2];
    for i in 2..=n {
        let next = ups[i - 1].intersect(&subspaces[i - 2])?;
        ups.push(next);
    }
    // Σ_i = U_{i+1} + ... + U_{n-1}
    let mut sig = alloc::vec![Subspace::zero(field, ambient); n + 1];
    for i in (0..n.saturating_sub(1)).rev() {
        sig[i] = sig[i + 1].sum(&subspaces[i])?;
    }
    let mut charts = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let w = ups[i].intersect(&sig[i])?;
        charts.push(QuotientChart::new(ups[i].clone(), &w)?);
    }
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        let cols: Result<Vec<SparseRow>> = (0..charts[i].dim())
            .map(|k| charts[i - 1].project(&charts[i].lift(k)).map(|c| dense_to_sparse(&c)))
            .collect();
        diffs.push(Matrix::from_columns(field, charts[i - 1].dim(), &cols?));
    }
    Ok(ChainComplex { field: field.clone(), charts, diffs })
}

/// `dim H_i` for `i = 0..=n`.
pub fn homology_dims(c: &ChainComplex) -> Result<Vec<usize>> {
    if !c.is_complex()? {
        return Err(Error::Unsupported("differentials do not square to zero".into()));
    }
    let n = c.top();
    let ranks: Result<Vec<usize>> = (1..=n).map(|i| c.differential(i).rank()).collect();
    let ranks = ranks?;
    let dims = c.dims();
    Ok((0..=n)
        .map(|i| {
            let out = if i >= 1 { ranks[i - 1] } else { 0 };
            let inc = if i < n { ranks[i] } else { 0 };
            dims[i] - out - inc
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::FieldSpec;
    use alloc::vec;

    fn q() -> Field {
        Field::rationals()
    }

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn dense(rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
        Matrix::from_dense(&q(), &rows).unwrap()
    }

    #[test]
    fn zero_multiples_store_no_zeros() {
        let m = dense(&[&[1, 0], &[0, 1]]);
        let n = dense(&[&[0, 3], &[5, 0]]);
        assert_eq!(n.sub_scaled(&s(0), &m).unwrap(), n);
        assert!(n.sub_scaled(&s(0), &m).unwrap().row_data().iter().all(|r| r.iter().all(|x| !x.1.is_zero())));
    }

    #[test]
    fn rref_examples() {
        let (sp, r) = rref(&dense(&[&[2, 4], &[1, 2]])).unwrap();
        assert_eq!(r, 1);
        assert_eq!(sp.basis()[0], vec![(0, s(1)), (1, s(2))]);
        let (sp, r) = rref(&Matrix::identity(&q(), 3)).unwrap();
        assert_eq!((r, sp), (3, Subspace::full(&q(), 3)));
        assert_eq!(rref(&Matrix::zeros(&q(), 2, 2)).unwrap().1, 0);
    }

    #[test]
    fn intersection_and_sum() {
        let f = q();
        let x = Subspace::span_dense(&f, 3, &[vec![s(1), s(0), s(0)], vec![s(0), s(1), s(0)]]).unwrap();
        let y = Subspace::span_dense(&f, 3, &[vec![s(0), s(1), s(0)], vec![s(0), s(0), s(1)]]).unwrap();
        let i = x.intersect(&y).unwrap();
        assert_eq!(i, Subspace::span_dense(&f, 3, &[vec![s(0), s(1), s(0)]]).unwrap());
        assert_eq!(x.sum(&y).unwrap().dim(), 3);
    }

    #[test]
    fn kernel_image_of_projection() {
        let p = dense(&[&[1, 0], &[0, 0]]);
        assert_eq!(kernel(&p).unwrap().basis()[0], vec![(1, s(1))]);
        assert_eq!(image(&p).unwrap().basis()[0], vec![(0, s(1))]);
        let z = Subspace::zero(&q(), 4);
        assert_eq!(z.orthogonal_complement().unwrap(), Subspace::full(&q(), 4));
    }

    #[test]
    fn gaussian_kernel() {
        // R - q·Id for the rank-one quantum plane relation at q = 2
        let f = FieldSpec::rational(2);
        let m = Matrix::from_fn(f.field(), 4, 4, |r, c| match (r, c) {
            (0, 0) | (3, 3) => s(0),
            (2, 1) => s(1),
            (1, 2) => s(2),
            (2, 2) => s(-1),
            (1, 1) => s(-2),
            _ => s(0),
        });
        assert_eq!(kernel(&m).unwrap().dim(), 3);
        assert_eq!(image(&m).unwrap().dim(), 1);
    }

    #[test]
    fn complex_conventions() {
        let f = q();
        let c = quotient_complex(&f, 3, &[]).unwrap();
        assert_eq!(c.dims(), vec![3, 3]);
        assert_eq!(homology_dims(&c).unwrap(), vec![0, 0]);
        let z = Subspace::zero(&f, 2);
        let c = quotient_complex(&f, 2, &[z.clone(), z]).unwrap();
        assert_eq!(c.dims(), vec![2, 2, 0, 0]);
        assert_eq!(homology_dims(&c).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = dense(&[&[0, 2], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q(), 2));
        assert!(dense(&[&[1, 1], &[1, 1]]).inverse().is_err());
    }
}
