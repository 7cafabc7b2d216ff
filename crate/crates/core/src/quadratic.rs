//! Quadratic algebras `T(V)/(U)`: graded components, Koszul complexes,
//! quadratic duals, Hilbert series and Frobenius pairings.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hecke::{element_operator, parabolic_alt_sum};
use crate::linalg::{homology_dims, quotient_complex, sparse_to_dense, ChainComplex, Matrix, SparseRow, Subspace};
use crate::scalars::{Field, FieldSpec, Scalar};
use crate::symcomb::Composition;

/// `T(V)/(U)` with `dim V = d` and `U ⊆ V ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    d: usize,
    spec: FieldSpec,
    relations: Subspace,
    label: String,
}

/// Dimensions and Koszul homology through a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    /// `dim A_0, ..., dim A_N`.
    pub dims: Vec<usize>,
    /// `dim Υ^(0), ..., dim Υ^(N)`.
    pub upsilon_dims: Vec<usize>,
    /// `homology[n]` lists `dim H_i` of the degree-`n` Koszul complex for `i = 0..=n`;
    /// empty for `n < 2`.
    pub homology: Vec<Vec<usize>>,
}

impl GradedReport {
    /// True when every Koszul complex in degrees `2..=N` is exact.
    pub fn koszul_through(&self) -> bool {
        self.homology.iter().all(|h| h.iter().all(|&x| x == 0))
    }
}

/// Degrees `n ≤ N` with their Koszul homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub max_degree: usize,
    /// `(n, dim H_0, ..., dim H_n)` for `2 ≤ n ≤ N`.
    pub homology: Vec<(usize, Vec<usize>)>,
}

impl KoszulReport {
    pub fn exact(&self) -> bool {
        self.homology.iter().all(|(_, h)| h.iter().all(|&x| x == 0))
    }

    /// First degree with nonzero homology in some position.
    pub fn first_failure(&self) -> Option<usize> {
        self.homology.iter().find(|(_, h)| h.iter().any(|&x| x != 0)).map(|(n, _)| *n)
    }
}

/// Outcome of `Σ_i (-1)^i B_i A_{n-i} = δ_{n,0}` for `n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub holds: bool,
    pub first_failure: Option<usize>,
    /// The convolution coefficients for `n = 0..=N`.
    pub convolution: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusStatus {
    Frobenius,
    Degenerate,
    /// `dim A_n ≠ 1` or `A_{n+1} ≠ 0`.
    HypothesisFails,
}

/// Pairings `A_k × A_{n-k} → A_n` for `0 ≤ k ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub top: usize,
    pub status: FrobeniusStatus,
    pub dims: Vec<usize>,
    /// `(dim A_k, dim A_{n-k}, rank)` per `k`; empty when the hypothesis fails.
    pub pairings: Vec<(usize, usize, usize)>,
}

/// The inclusion `y_k L_k ⊆ V L_{k-1}` for each `0 < k < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    pub n: usize,
    /// `(k, dim L_k, holds)`.
    pub steps: Vec<(usize, usize, bool)>,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(|s| s.2)
    }
}

fn pow(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

impl QuadraticAlgebra {
    pub fn new(d: usize, spec: &FieldSpec, relations: Subspace, label: &str) -> Result<QuadraticAlgebra> {
        if relations.ambient() != d * d {
            return Err(Error::DimensionMismatch(alloc::format!(
                "relations live in dimension {}, expected {}",
                relations.ambient(),
                d * d
            )));
        }
        if relations.field() != spec.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadraticAlgebra { d, spec: spec.clone(), relations, label: label.into() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        self.spec.field()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> QuadraticAlgebra {
        self.label = label.into();
        self
    }

    /// `U_i^(n) = V^{⊗(i-1)} ⊗ U ⊗ V^{⊗(n-i-1)}`.
    pub fn shifted_relations(&self, n: usize, i: usize) -> Result<Subspace> {
        if n < 2 || i == 0 || i >= n {
            return Err(Error::DimensionMismatch(alloc::format!("need 1 ≤ i < n, got i = {i}, n = {n}")));
        }
        Ok(self.relations.embed(pow(self.d, i - 1), pow(self.d, n - i - 1)))
    }

    /// `I_0, ..., I_N` with `I_n = Σ_i U_i^(n)`.
    pub fn ideal_components(&self, max: usize) -> Result<Vec<Subspace>> {
        let f = self.field();
        let mut out = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let next = match n {
                0 => Subspace::zero(f, 1),
                1 => Subspace::zero(f, self.d),
                2 => self.relations.clone(),
                _ => {
                    let prev: &Subspace = &out[n - 1];
                    prev.tensor_right(self.d).sum(&self.shifted_relations(n, n - 1)?)?
                }
            };
            out.push(next);
        }
        Ok(out)
    }

    /// `dim A_n = d^n - dim I_n` for `n ≤ N`.
    pub fn component_dims(&self, max: usize) -> Result<Vec<usize>> {
        Ok(self.ideal_components(max)?.iter().map(|i| i.ambient() - i.dim()).collect())
    }

    /// `Υ^(0), ..., Υ^(N)`, with `Υ^(n) = ∩_i U_i^(n)`.
    pub fn upsilons(&self, max: usize) -> Result<Vec<Subspace>> {
        let f = self.field();
        let mut out: Vec<Subspace> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let next = match n {
                0 => Subspace::full(f, 1),
                1 => Subspace::full(f, self.d),
                2 => self.relations.clone(),
                _ => out[n - 1].tensor_right(self.d).intersect(&self.shifted_relations(n, n - 1)?)?,
            };
            out.push(next);
        }
        Ok(out)
    }

    pub fn upsilon(&self, n: usize) -> Result<Subspace> {
        Ok(self.upsilons(n)?.pop().expect("nonempty"))
    }

    /// The degree-`n` Koszul complex `K_•(V^{⊗n}; (U_i^(n)))`.
    pub fn koszul_complex(&self, n: usize) -> Result<ChainComplex> {
        let subs: Result<Vec<Subspace>> = (1..n).map(|i| self.shifted_relations(n, i)).collect();
        quotient_complex(self.field(), pow(self.d, n), &subs?)
    }

    /// Homology of the Koszul complex in each degree `2 ≤ n ≤ N`.
    pub fn koszul_exactness(&self, max: usize) -> Result<KoszulReport> {
        let mut homology = Vec::new();
        for n in 2..=max {
            homology.push((n, self.koszul_homology(n)?));
        }
        Ok(KoszulReport { max_degree: max, homology })
    }

    pub fn koszul_homology(&self, n: usize) -> Result<Vec<usize>> {
        homology_dims(&self.koszul_complex(n)?)
    }

    pub fn graded_report(&self, max: usize) -> Result<GradedReport> {
        let dims = self.component_dims(max)?;
        let upsilon_dims = self.upsilons(max)?.iter().map(|u| u.dim()).collect();
        let mut homology = Vec::with_capacity(max + 1);
        for n in 0..=max {
            homology.push(if n < 2 { Vec::new() } else { self.koszul_homology(n)? });
        }
        Ok(GradedReport { dims, upsilon_dims, homology })
    }

    /// `A^! = T(V*)/(U^⊥)`.
    pub fn quadratic_dual(&self) -> Result<QuadraticAlgebra> {
        let label = alloc::format!("dual of {}", self.label);
        QuadraticAlgebra::new(self.d, &self.spec, self.relations.orthogonal_complement()?, &label)
    }

    /// `L_k = {a ∈ T_k : a T_{n-k} ⊆ I_n}` for `0 ≤ k < n`.
    pub fn left_annihilator_spaces(&self, n: usize) -> Result<Vec<Subspace>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        let i_n = self.ideal_components(n)?.pop().expect("nonempty");
        self.annihilators_from(&i_n, n)
    }

    fn annihilators_from(&self, i_n: &Subspace, n: usize) -> Result<Vec<Subspace>> {
        let perp = i_n.orthogonal_complement()?;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let tail = pow(self.d, n - k);
            // each functional on T_n, reshaped to T_k × T_{n-k}, contributes its columns
            let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
            for f in perp.basis() {
                let mut per_col: Vec<SparseRow> = alloc::vec![Vec::new(); tail];
                for (c, v) in f {
                    per_col[c % tail].push((c / tail, v.clone()));
                }
                cols.extend(per_col.into_iter().filter(|r| !r.is_empty()));
            }
            let span = Subspace::span(self.field(), pow(self.d, k), cols)?;
            out.push(span.orthogonal_complement()?);
        }
        Ok(out)
    }

    /// Nondegeneracy of the multiplication pairings into the top degree `n`.
    pub fn frobenius_check(&self, n: usize) -> Result<FrobeniusReport> {
        let ideals = self.ideal_components(n + 1)?;
        let dims: Vec<usize> = ideals.iter().map(|i| i.ambient() - i.dim()).collect();
        if dims[n] != 1 || dims[n + 1] != 0 {
            return Ok(FrobeniusReport { top: n, status: FrobeniusStatus::HypothesisFails, dims, pairings: Vec::new() });
        }
        let top = &ideals[n];
        let top_col = top.free_columns()[0];
        let f = self.field();
        let mut pairings = Vec::with_capacity(n + 1);
        let mut ok = true;
        for k in 0..=n {
            let left = ideals[k].free_columns();
            let right = ideals[n - k].free_columns();
            let tail = pow(self.d, n - k);
            let m = Matrix::from_fn(f, left.len(), right.len(), |a, b| {
                let w = left[a] * tail + right[b];
                sparse_to_dense(&top.reduce(&[(w, Scalar::one())]), top.ambient())[top_col].clone()
            });
            let rank = m.rank()?;
            if left.len() != right.len() || rank != left.len() {
                ok = false;
            }
            pairings.push((left.len(), right.len(), rank));
        }
        let status = if ok { FrobeniusStatus::Frobenius } else { FrobeniusStatus::Degenerate };
        Ok(FrobeniusReport { top: n, status, dims, pairings })
    }

    /// Checks `y_k L_k ⊆ V L_{k-1}` for `0 < k < n`, with `T_i` acting on
    /// `V^{⊗k}` as `r` on positions `i, i+1`; `r` only needs the braid relation.
    pub fn annihilator_inclusion(&self, r: &Matrix, spec: &FieldSpec, n: usize) -> Result<InclusionReport> {
        let d = self.d;
        if r.rows() != d * d || r.cols() != d * d {
            return Err(Error::DimensionMismatch("operator on V ⊗ V expected".into()));
        }
        let ls = self.left_annihilator_spaces(n)?;
        let mut steps = Vec::new();
        for k in 1..n {
            let dim = pow(d, k);
            let y = if k == 1 {
                Matrix::identity(self.field(), dim)
            } else {
                let gens: Vec<Matrix> = (1..k).map(|i| r.embed(pow(d, i - 1), pow(d, k - i - 1))).collect();
                let yk = parabolic_alt_sum(&Composition::new(&[1, k - 1])?, spec)?;
                element_operator(&gens, dim, &yk)?
            };
            let target = ls[k - 1].tensor_left(d);
            let holds = ls[k].basis().iter().all(|a| target.contains(&y.apply_sparse(a)));
            steps.push((k, ls[k].dim(), holds));
        }
        Ok(InclusionReport { n, steps })
    }
}

/// Compares `h_A(t) h_B(-t)` with `1` through degree `N`.
pub fn hilbert_duality_check(a: &[usize], b: &[usize], max: usize) -> Result<DualityReport> {
    if a.len() <= max || b.len() <= max {
        return Err(Error::DimensionMismatch(alloc::format!("need {} coefficients", max + 1)));
    }
    let mut convolution = Vec::with_capacity(max + 1);
    let mut first_failure = None;
    for n in 0..=max {
        let mut s = 0i64;
        for i in 0..=n {
            let t = b[i] as i64 * a[n - i] as i64;
            s += if i % 2 == 0 { t } else { -t };
        }
        let want = if n == 0 { 1 } else { 0 };
        if s != want && first_failure.is_none() {
            first_failure = Some(n);
        }
        convolution.push(s);
    }
    Ok(DualityReport { holds: first_failure.is_none(), first_failure, convolution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense_to_sparse;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn alg(rows: &[Vec<i64>], label: &str) -> QuadraticAlgebra {
        let spec = FieldSpec::rational(1);
        let rows: Vec<SparseRow> = rows.iter().map(|r| dense_to_sparse(&r.iter().map(|&x| s(x)).collect::<Vec<_>>())).collect();
        let u = Subspace::span(spec.field(), 4, rows).unwrap();
        QuadraticAlgebra::new(2, &spec, u, label).unwrap()
    }

    // basis xx, xy, yx, yy
    fn polynomial() -> QuadraticAlgebra {
        alg(&[vec![0, 1, -1, 0]], "k[x,y]")
    }

    fn exterior() -> QuadraticAlgebra {
        alg(&[vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]], "exterior")
    }

    #[test]
    fn shifted_relation_dims() {
        let e = exterior();
        assert_eq!(e.shifted_relations(2, 1).unwrap(), *e.relations());
        assert_eq!(e.shifted_relations(3, 1).unwrap().dim(), 6);
        assert_eq!(e.shifted_relations(4, 2).unwrap().dim(), 12);
        assert!(e.shifted_relations(3, 3).is_err());
    }

    #[test]
    fn polynomial_and_exterior_dims() {
        assert_eq!(polynomial().component_dims(5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(exterior().component_dims(4).unwrap(), vec![1, 2, 1, 0, 0]);
        let free = alg(&[], "free");
        assert_eq!(free.component_dims(3).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(free.quadratic_dual().unwrap().relations().dim(), 4);
    }

    #[test]
    fn dual_pairs_and_koszulness() {
        let p = polynomial();
        let dual = p.quadratic_dual().unwrap();
        assert_eq!(dual.relations(), exterior().relations());
        assert_eq!(dual.quadratic_dual().unwrap().relations(), p.relations());
        let up: Vec<usize> = p.upsilons(4).unwrap().iter().map(|u| u.dim()).collect();
        assert_eq!(up, vec![1, 2, 1, 0, 0]);
        let rep = p.graded_report(4).unwrap();
        assert!(rep.koszul_through());
        let dd = hilbert_duality_check(&rep.dims, &exterior().component_dims(4).unwrap(), 4).unwrap();
        assert!(dd.holds);
        assert_eq!(dd.convolution, vec![1, 0, 0, 0, 0]);
        assert!(exterior().koszul_exactness(4).unwrap().exact());
    }

    #[test]
    fn non_koszul_example() {
        // relations xx, xy
        let a = alg(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], "xx, xy");
        let dims = a.component_dims(4).unwrap();
        assert_eq!(dims[2], 2);
        let rep = a.koszul_exactness(4).unwrap();
        let dual = a.quadratic_dual().unwrap().component_dims(4).unwrap();
        let dd = hilbert_duality_check(&dims, &dual, 4).unwrap();
        if rep.exact() {
            assert!(dd.holds);
        }
    }

    #[test]
    fn duality_trivial_and_failing() {
        let one = [1, 0, 0, 0];
        assert!(hilbert_duality_check(&one, &one, 3).unwrap().holds);
        let r = hilbert_duality_check(&[1, 2, 2, 0, 0], &[1, 2, 2, 0, 0], 4).unwrap();
        assert_eq!(r.convolution, vec![1, 0, 0, 0, 4]);
        assert_eq!(r.first_failure, Some(4));
        assert!(hilbert_duality_check(&one, &one, 4).is_err());
    }

    #[test]
    fn annihilators_and_frobenius() {
        let e = exterior();
        let ls = e.left_annihilator_spaces(2).unwrap();
        assert_eq!(ls.iter().map(|l| l.dim()).collect::<Vec<_>>(), vec![0, 0]);
        let fr = e.frobenius_check(2).unwrap();
        assert_eq!(fr.status, FrobeniusStatus::Frobenius);
        assert_eq!(fr.pairings, vec![(1, 1, 1), (2, 2, 2), (1, 1, 1)]);
        assert_eq!(polynomial().frobenius_check(2).unwrap().status, FrobeniusStatus::HypothesisFails);
        let flip = Matrix::from_fn(&Field::rationals(), 4, 4, |r, c| {
            if c == (r % 2) * 2 + r / 2 { Scalar::one() } else { Scalar::zero() }
        });
        let inc = e.annihilator_inclusion(&flip, &FieldSpec::rational(1), 3).unwrap();
        assert!(inc.holds());
    }
}
