//! The Hecke algebra `H_n(q)` in the standard basis, induced modules from
//! one-dimensional representations of parabolic subalgebras, Mackey
//! restriction, Hom spaces, and the special elements used by the complexes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{image, kernel, quotient_complex, ChainComplex, Matrix, SparseRow, Subspace};
use crate::scalars::{FieldSpec, Scalar};
use crate::symcomb::{
    coset_step, dist_reps, double_dist_reps, index_map, left_dist_reps, reduced_word, trivial_intersection_reps,
    young_elements,
    Composition, CosetStep, Perm,
};

/// Finite linear combination of standard basis elements `T_σ`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElt {
    n: usize,
    spec: FieldSpec,
    terms: BTreeMap<Perm, Scalar>,
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(p, c)| alloc::format!("({})·T[{}]", c.to_text(), p)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl HeckeElt {
    pub fn zero(n: usize, spec: &FieldSpec) -> HeckeElt {
        HeckeElt { n, spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn one(n: usize, spec: &FieldSpec) -> HeckeElt {
        HeckeElt::basis(spec, &Perm::identity(n))
    }

    pub fn basis(spec: &FieldSpec, s: &Perm) -> HeckeElt {
        HeckeElt::monomial(spec, s, Scalar::one())
    }

    pub fn monomial(spec: &FieldSpec, s: &Perm, c: Scalar) -> HeckeElt {
        let mut e = HeckeElt::zero(s.n(), spec);
        e.add_term(s, &c);
        e
    }

    /// The generator `T_i`.
    pub fn gen(n: usize, i: usize, spec: &FieldSpec) -> HeckeElt {
        HeckeElt::basis(spec, &Perm::gen(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Perm, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, s: &Perm) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, s: &Perm, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.get(s).map_or_else(|| c.clone(), |old| old.add(c));
        if v.is_zero() {
            self.terms.remove(s);
        } else {
            self.terms.insert(s.clone(), v);
        }
    }

    fn compatible(&self, o: &HeckeElt) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch(alloc::format!("H_{} versus H_{}", self.n, o.n)));
        }
        if self.spec != o.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &HeckeElt) -> Result<HeckeElt> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (s, c) in &o.terms {
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &HeckeElt) -> Result<HeckeElt> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> HeckeElt {
        let f = self.spec.field();
        let mut out = HeckeElt::zero(self.n, &self.spec);
        for (s, v) in &self.terms {
            out.add_term(s, &f.mul(c, v));
        }
        out
    }

    pub fn neg(&self) -> HeckeElt {
        self.scale(&Scalar::from_int(-1))
    }

    /// `T_i · self`.
    pub fn left_mul_gen(&self, i: usize) -> HeckeElt {
        let f = self.spec.field();
        let q = self.spec.q();
        let qm1 = q.sub(&Scalar::one());
        let mut out = HeckeElt::zero(self.n, &self.spec);
        for (s, c) in &self.terms {
            let t = s.left_gen(i);
            if s.left_gen_raises(i) {
                out.add_term(&t, c);
            } else {
                out.add_term(s, &f.mul(&qm1, c));
                out.add_term(&t, &f.mul(q, c));
            }
        }
        out
    }

    pub fn mul(&self, o: &HeckeElt) -> Result<HeckeElt> {
        self.compatible(o)?;
        let f = self.spec.field();
        let mut out = HeckeElt::zero(self.n, &self.spec);
        for (s, c) in &self.terms {
            let mut acc = o.clone();
            for &i in reduced_word(s).iter().rev() {
                acc = acc.left_mul_gen(i);
            }
            for (t, d) in &acc.terms {
                out.add_term(t, &f.mul(c, d));
            }
        }
        Ok(out)
    }

    /// Image under the involution `T_i ↦ q - 1 - T_i`.
    pub fn tilde_twist(&self) -> HeckeElt {
        let qm1 = self.spec.q().sub(&Scalar::one());
        let mut out = HeckeElt::zero(self.n, &self.spec);
        for (s, c) in &self.terms {
            let mut acc = HeckeElt::monomial(&self.spec, &Perm::identity(self.n), c.clone());
            for &i in reduced_word(s).iter().rev() {
                let t = acc.left_mul_gen(i);
                acc = acc.scale(&qm1).sub(&t).expect("same algebra");
            }
            for (t, d) in &acc.terms {
                out.add_term(t, d);
            }
        }
        out
    }
}

pub fn hecke_mul(a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
    a.mul(b)
}

pub fn tilde_twist(a: &HeckeElt) -> HeckeElt {
    a.tilde_twist()
}

/// Value of a one-dimensional representation on one block of a Young subgroup.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BlockSign {
    /// `T_i ↦ q`.
    Trivial,
    /// `T_i ↦ -1`.
    Alternating,
}

impl BlockSign {
    fn flip(self) -> BlockSign {
        match self {
            BlockSign::Trivial => BlockSign::Alternating,
            BlockSign::Alternating => BlockSign::Trivial,
        }
    }

    pub fn value(self, spec: &FieldSpec) -> Scalar {
        match self {
            BlockSign::Trivial => spec.q().clone(),
            BlockSign::Alternating => Scalar::from_int(-1),
        }
    }
}

/// A one-dimensional representation of `H_λ`, stored per block of `λ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneDimRep {
    lambda: Composition,
    blocks: Vec<BlockSign>,
}

impl fmt::Debug for OneDimRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for OneDimRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .blocks
            .iter()
            .map(|b| match b {
                BlockSign::Trivial => "t",
                BlockSign::Alternating => "a",
            })
            .collect();
        write!(f, "({}; {})", self.lambda, parts.join(","))
    }
}

impl OneDimRep {
    /// Blocks of size one carry no generator and are normalized to trivial.
    pub fn new(lambda: &Composition, blocks: &[BlockSign]) -> Result<OneDimRep> {
        if blocks.len() != lambda.parts().len() {
            return Err(Error::InvalidRepresentation(alloc::format!(
                "{} block values for composition {}",
                blocks.len(),
                lambda
            )));
        }
        let blocks = blocks
            .iter()
            .zip(lambda.parts())
            .map(|(&b, &p)| if p > 1 { b } else { BlockSign::Trivial })
            .collect();
        Ok(OneDimRep { lambda: lambda.clone(), blocks })
    }

    pub fn trivial(lambda: &Composition) -> OneDimRep {
        OneDimRep { lambda: lambda.clone(), blocks: alloc::vec![BlockSign::Trivial; lambda.parts().len()] }
    }

    pub fn alternating(lambda: &Composition) -> OneDimRep {
        let blocks: Vec<BlockSign> = alloc::vec![BlockSign::Alternating; lambda.parts().len()];
        OneDimRep::new(lambda, &blocks).expect("matching length")
    }

    /// Validates per-generator values `χ(T_j)`, listed in `young_generators` order.
    pub fn from_values(lambda: &Composition, values: &[Scalar], spec: &FieldSpec) -> Result<OneDimRep> {
        let gens = lambda.young_generators();
        if gens.len() != values.len() {
            return Err(Error::InvalidRepresentation("one value per Young generator expected".into()));
        }
        let minus_one = Scalar::from_int(-1);
        let mut blocks: Vec<Option<BlockSign>> = alloc::vec![None; lambda.parts().len()];
        for (&j, v) in gens.iter().zip(values) {
            let sign = if v == spec.q() {
                BlockSign::Trivial
            } else if *v == minus_one {
                BlockSign::Alternating
            } else {
                return Err(Error::InvalidRepresentation(alloc::format!(
                    "χ(T_{j}) = {} is neither q nor -1",
                    v.to_text()
                )));
            };
            let b = lambda.block_of(j);
            match blocks[b] {
                Some(old) if old.value(spec) != sign.value(spec) => {
                    return Err(Error::InvalidRepresentation(alloc::format!(
                        "values not constant on block {}",
                        b + 1
                    )))
                }
                Some(_) => {}
                None => blocks[b] = Some(sign),
            }
        }
        let blocks: Vec<BlockSign> = blocks.into_iter().map(|b| b.unwrap_or(BlockSign::Trivial)).collect();
        OneDimRep::new(lambda, &blocks)
    }

    /// Every one-dimensional representation of `H_λ`.
    pub fn all(lambda: &Composition) -> Vec<OneDimRep> {
        let big: Vec<usize> =
            lambda.parts().iter().enumerate().filter(|(_, &p)| p > 1).map(|(k, _)| k).collect();
        (0..1usize << big.len())
            .map(|mask| {
                let mut blocks = alloc::vec![BlockSign::Trivial; lambda.parts().len()];
                for (bit, &k) in big.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        blocks[k] = BlockSign::Alternating;
                    }
                }
                OneDimRep { lambda: lambda.clone(), blocks }
            })
            .collect()
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn blocks(&self) -> &[BlockSign] {
        &self.blocks
    }

    /// Sign on the block containing the generator `τ_j`.
    pub fn sign_at(&self, j: usize) -> BlockSign {
        self.blocks[self.lambda.block_of(j)]
    }

    /// `χ(T_j)` for `τ_j ∈ B_λ`.
    pub fn value_at(&self, j: usize, spec: &FieldSpec) -> Scalar {
        self.sign_at(j).value(spec)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|&b| b == BlockSign::Trivial)
    }

    /// `χ̃(T_i) = q - 1 - χ(T_i)`.
    pub fn tilde(&self) -> OneDimRep {
        let blocks: Vec<BlockSign> = self.blocks.iter().map(|b| b.flip()).collect();
        OneDimRep::new(&self.lambda, &blocks).expect("matching length")
    }
}

/// Matrix of `G_{i_1} ⋯ G_{i_l}` along the reduced word of `σ`.
pub fn perm_operator(gens: &[Matrix], dim: usize, spec: &FieldSpec, s: &Perm) -> Result<Matrix> {
    let mut m = Matrix::identity(spec.field(), dim);
    for &i in reduced_word(s).iter().rev() {
        m = gens[i - 1].mul(&m)?;
    }
    Ok(m)
}

/// Matrix of a Hecke element under generator matrices `gens`.
pub fn element_operator(gens: &[Matrix], dim: usize, a: &HeckeElt) -> Result<Matrix> {
    let spec = a.spec();
    let mut out = Matrix::zeros(spec.field(), dim, dim);
    for (s, c) in a.terms() {
        let m = perm_operator(gens, dim, spec, s)?;
        out = out.sub_scaled(&c.neg(), &m)?;
    }
    Ok(out)
}

/// Left `H_n`-module given by the matrices of `T_1, ..., T_{n-1}`.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    n: usize,
    spec: FieldSpec,
    dim: usize,
    gens: Vec<Matrix>,
}

impl ModuleRep {
    /// Checks the quadratic and braid relations.
    pub fn new(spec: &FieldSpec, n: usize, dim: usize, gens: Vec<Matrix>) -> Result<ModuleRep> {
        let m = ModuleRep { n, spec: spec.clone(), dim, gens };
        m.check_relations()?;
        Ok(m)
    }

    pub fn check_relations(&self) -> Result<()> {
        if self.gens.len() != self.n.saturating_sub(1) {
            return Err(Error::DimensionMismatch("need n - 1 generator matrices".into()));
        }
        let f = self.spec.field();
        for (k, g) in self.gens.iter().enumerate() {
            if g.rows() != self.dim || g.cols() != self.dim || g.field() != f {
                return Err(Error::DimensionMismatch(alloc::format!("generator {} has wrong shape", k + 1)));
            }
            let id = Matrix::identity(f, self.dim);
            let quad = g.sub_scaled(self.spec.q(), &id)?.mul(&g.add(&id)?)?;
            if !quad.is_zero() {
                return Err(Error::InvalidRepresentation(alloc::format!(
                    "(T_{0} - q)(T_{0} + 1) ≠ 0",
                    k + 1
                )));
            }
        }
        check_braid(&self.gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    /// Matrix of `T_i`.
    pub fn gen(&self, i: usize) -> &Matrix {
        &self.gens[i - 1]
    }

    pub fn act_perm(&self, s: &Perm) -> Result<Matrix> {
        perm_operator(&self.gens, self.dim, &self.spec, s)
    }

    pub fn act(&self, a: &HeckeElt) -> Result<Matrix> {
        if a.n() != self.n || a.spec() != &self.spec {
            return Err(Error::FieldMismatch);
        }
        element_operator(&self.gens, self.dim, a)
    }

    /// The module with every `T_i` replaced by `q - 1 - T_i`.
    pub fn tilde_twisted(&self) -> ModuleRep {
        let f = self.spec.field();
        let qm1 = Matrix::scalar(f, self.dim, &self.spec.q().sub(&Scalar::one()));
        let gens = self.gens.iter().map(|g| qm1.sub(g).expect("same shape")).collect();
        ModuleRep { n: self.n, spec: self.spec.clone(), dim: self.dim, gens }
    }
}

/// Braid relations among consecutive and distant generators.
pub fn check_braid(gens: &[Matrix]) -> Result<()> {
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let (x, y) = (&gens[a], &gens[b]);
            let ok = if b == a + 1 {
                x.mul(y)?.mul(x)? == y.mul(x)?.mul(y)?
            } else {
                x.mul(y)? == y.mul(x)?
            };
            if !ok {
                return Err(Error::InvalidRepresentation(alloc::format!(
                    "braid relation fails for T_{} and T_{}",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    Ok(())
}

/// `H_n ⊗_{H_λ} k(χ)` with basis `T_σ c`, `σ ∈ D_λ`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub chi: OneDimRep,
    pub basis: Vec<Perm>,
    pub module: ModuleRep,
}

impl InducedModule {
    pub fn lambda(&self) -> &Composition {
        self.chi.lambda()
    }
}

pub fn induced_module(chi: &OneDimRep, spec: &FieldSpec) -> Result<InducedModule> {
    let lambda = chi.lambda();
    let n = lambda.n();
    let basis = dist_reps(lambda);
    let idx = index_map(&basis);
    let lg = lambda.young_generators();
    let f = spec.field();
    let q = spec.q();
    let qm1 = q.sub(&Scalar::one());
    let dim = basis.len();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut cols: Vec<SparseRow> = Vec::with_capacity(dim);
        for (k, s) in basis.iter().enumerate() {
            let mut col = match coset_step(&lg, s, i) {
                CosetStep::Up => alloc::vec![(idx[&s.left_gen(i)], Scalar::one())],
                CosetStep::Down => alloc::vec![(k, qm1.clone()), (idx[&s.left_gen(i)], q.clone())],
                CosetStep::Fixed(j) => alloc::vec![(k, chi.value_at(j, spec))],
            };
            col.retain(|x| !x.1.is_zero());
            col.sort_unstable_by_key(|x| x.0);
            cols.push(col);
        }
        gens.push(Matrix::from_columns(f, dim, &cols));
    }
    let module = ModuleRep::new(spec, n, dim, gens)?;
    Ok(InducedModule { chi: chi.clone(), basis, module })
}

/// One summand `M(π)` of the restriction of an induced module to `H_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyBlock {
    pub rep: Perm,
    pub nu: Composition,
    pub nu_generators: Vec<usize>,
    /// `χ_π(T_i) = χ(T_{π⁻¹(i)})` on `H_ν`.
    pub chi_pi: OneDimRep,
    /// Positions in the basis of the induced module.
    pub basis: Vec<usize>,
}

pub fn mackey_restrict(m: &InducedModule, mu: &Composition) -> Result<Vec<MackeyBlock>> {
    let lambda = m.lambda();
    let data = double_dist_reps(mu, lambda)?;
    let mut blocks = Vec::with_capacity(data.len());
    for d in data {
        let mut signs = alloc::vec![BlockSign::Trivial; d.nu.parts().len()];
        for &i in &d.nu_generators {
            let j = d.rep.conjugate_gen(i).expect("generator conjugates into B_λ");
            signs[d.nu.block_of(i)] = m.chi.sign_at(j);
        }
        let chi_pi = OneDimRep::new(&d.nu, &signs)?;
        let basis = m
            .basis
            .iter()
            .enumerate()
            .filter(|(_, s)| crate::symcomb::double_coset_min(mu, lambda, s) == d.rep)
            .map(|(k, _)| k)
            .collect();
        blocks.push(MackeyBlock { rep: d.rep, nu: d.nu, nu_generators: d.nu_generators, chi_pi, basis });
    }
    Ok(blocks)
}

/// `dim Hom(H_n ⊗ k(ζ), H_n ⊗ k(χ))` by counting double cosets with matching characters.
pub fn hom_dim_formula(zeta: &OneDimRep, chi: &OneDimRep, spec: &FieldSpec) -> Result<usize> {
    spec.require_nonzero_q("the Hom-dimension formula")?;
    let mut count = 0;
    for d in double_dist_reps(zeta.lambda(), chi.lambda())? {
        let ok = d.nu_generators.iter().all(|&i| {
            let j = d.rep.conjugate_gen(i).expect("generator conjugates into B_λ");
            zeta.value_at(i, spec) == chi.value_at(j, spec)
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Connected components of the coordinates under the supports of `gens`.
pub fn coordinate_blocks(dim: usize, gens: &[Matrix]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in gens {
        for (r, row) in g.row_data().iter().enumerate() {
            for (c, _) in row {
                let (a, b) = (find(&mut parent, r), find(&mut parent, *c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..dim {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

/// Intertwiners `Φ : N → M` (so `Φ G_i(N) = G_i(M) Φ`), as vectors of length
/// `dim M · dim N` indexed row-major by `(a, b) ↦ a·dim N + b`.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<Subspace> {
    if m.n != n.n {
        return Err(Error::DimensionMismatch(alloc::format!("H_{} versus H_{}", m.n, n.n)));
    }
    if m.spec != n.spec {
        return Err(Error::FieldMismatch);
    }
    let f = m.spec.field();
    let (dm, dn) = (m.dim, n.dim);
    let n_cols: Vec<Matrix> = n.gens.iter().map(|g| g.transpose()).collect();
    let bm = coordinate_blocks(dm, &m.gens);
    let bn = coordinate_blocks(dn, &n.gens);
    let mut pos_m = alloc::vec![0; dm];
    for blk in &bm {
        for (k, &a) in blk.iter().enumerate() {
            pos_m[a] = k;
        }
    }
    let mut pos_n = alloc::vec![0; dn];
    for blk in &bn {
        for (k, &b) in blk.iter().enumerate() {
            pos_n[b] = k;
        }
    }
    let mut rows: Vec<SparseRow> = Vec::new();
    for p in &bm {
        for qb in &bn {
            let w = qb.len();
            let local = |a: usize, b: usize| pos_m[a] * w + pos_n[b];
            let mut eqs: Vec<SparseRow> = Vec::new();
            for (gm, gnt) in m.gens.iter().zip(&n_cols) {
                for &a in p {
                    for &b in qb {
                        // (Φ G_N)[a][b] - (G_M Φ)[a][b]
                        let mut e: SparseRow = Vec::new();
                        for (b2, v) in gnt.row(b) {
                            e.push((local(a, *b2), v.clone()));
                        }
                        for (a2, v) in gm.row(a) {
                            e.push((local(*a2, b), v.neg()));
                        }
                        e.sort_unstable_by_key(|x| x.0);
                        let mut merged: SparseRow = Vec::with_capacity(e.len());
                        for (c, v) in e {
                            match merged.last_mut() {
                                Some(last) if last.0 == c => last.1 = last.1.add(&v),
                                _ => merged.push((c, v)),
                            }
                        }
                        merged.retain(|x| !x.1.is_zero());
                        if !merged.is_empty() {
                            eqs.push(merged);
                        }
                    }
                }
            }
            let sol = Subspace::span(f, p.len() * w, eqs)?.orthogonal_complement()?;
            for r in sol.basis() {
                rows.push(r.iter().map(|(c, v)| (p[c / w] * dn + qb[c % w], v.clone())).collect());
            }
        }
    }
    for r in rows.iter_mut() {
        r.sort_unstable_by_key(|x| x.0);
    }
    Subspace::span(f, dm * dn, rows)
}

/// Reads an intertwiner vector as a `dim M × dim N` matrix.
pub fn hom_vector_to_matrix(spec: &FieldSpec, dm: usize, dn: usize, v: &[(usize, Scalar)]) -> Matrix {
    let mut data: Vec<SparseRow> = alloc::vec![Vec::new(); dm];
    for (c, x) in v {
        data[c / dn].push((c % dn, x.clone()));
    }
    Matrix::from_rows(spec.field(), dn, data)
}

fn sum_over(spec: &FieldSpec, n: usize, items: impl IntoIterator<Item = (Perm, Scalar)>) -> HeckeElt {
    let mut e = HeckeElt::zero(n, spec);
    for (s, c) in items {
        e.add_term(&s, &c);
    }
    e
}

fn sign(l: usize) -> Scalar {
    Scalar::from_int(if l.is_multiple_of(2) { 1 } else { -1 })
}

/// `(x_i, y_i)` for `0 ≤ i < n`.
pub fn homotopy_elements(n: usize, i: usize, spec: &FieldSpec) -> Result<(HeckeElt, HeckeElt)> {
    if i >= n {
        return Err(Error::DimensionMismatch(alloc::format!("need 0 ≤ i < n, got i = {i}, n = {n}")));
    }
    let ones = |k: usize| alloc::vec![1usize; k];
    // S_{i+1} ⊇ S_i inside S_n, generated by τ_j with j ≤ i, resp. j < i
    let big = Composition::new(&[alloc::vec![i + 1], ones(n - i - 1)].concat())?;
    let small_gens: Vec<usize> = (1..i).collect();
    let x_reps = young_elements(&big)
        .into_iter()
        .filter(|s| small_gens.iter().all(|&j| s.right_gen_raises(j)));
    let x = sum_over(spec, n, x_reps.map(|s| (s, Scalar::one())));
    // S^▽_i ⊇ S^▽_{i+1}, generated by τ_j with j > i, resp. j > i + 1
    let big_y = Composition::new(&[ones(i), alloc::vec![n - i]].concat())?;
    let f = spec.field();
    let mut terms = Vec::new();
    for s in young_elements(&big_y) {
        if (i + 2..n).all(|j| s.left_gen_raises(j)) {
            let l = s.length();
            let c = f.mul(&sign(l), &spec.q_pow((n - 1 - i - l) as i64)?);
            terms.push((s, c));
        }
    }
    Ok((x, sum_over(spec, n, terms)))
}

/// `Σ (-1)^{ℓ(σ)} q^{m - ℓ(σ)} T_σ` over `D(S_λ \ S_n)`, `m` the maximal length.
pub fn parabolic_alt_sum(lambda: &Composition, spec: &FieldSpec) -> Result<HeckeElt> {
    let reps = left_dist_reps(lambda);
    let m = reps.iter().map(|s| s.length()).max().unwrap_or(0);
    let f = spec.field();
    let mut terms = Vec::with_capacity(reps.len());
    for s in reps {
        let l = s.length();
        terms.push((s, f.mul(&sign(l), &spec.q_pow((m - l) as i64)?)));
    }
    Ok(sum_over(spec, lambda.n(), terms))
}

/// `x_μ = Σ_{σ ∈ S_μ} T_σ`.
pub fn x_parabolic(mu: &Composition, spec: &FieldSpec) -> HeckeElt {
    sum_over(spec, mu.n(), young_elements(mu).into_iter().map(|s| (s, Scalar::one())))
}

/// The 0-Hecke operators on the span of `v_{x,y}`, `x ∈ D_λ`, `y ∈ D_μ`
/// (index `x·|D_μ| + y`); `chi_prime` is read with parameter `q⁻¹`.
pub fn zero_hecke_gr_action(chi: &OneDimRep, chi_prime: &OneDimRep, spec: &FieldSpec) -> Result<Vec<Matrix>> {
    spec.require_nonzero_q("the graded 0-Hecke action")?;
    let (lambda, mu) = (chi.lambda(), chi_prime.lambda());
    if lambda.n() != mu.n() {
        return Err(Error::DimensionMismatch("compositions of different n".into()));
    }
    let spec_inv = spec.inverse_parameter()?;
    let f = spec.field();
    let n = lambda.n();
    let (dl, dm) = (dist_reps(lambda), dist_reps(mu));
    let (il, im) = (index_map(&dl), index_map(&dm));
    let (gl, gm) = (lambda.young_generators(), mu.young_generators());
    let w = dm.len();
    let dim = dl.len() * w;
    let one = Scalar::one();
    let minus_one = Scalar::from_int(-1);
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut cols: Vec<SparseRow> = Vec::with_capacity(dim);
        for (xi, x) in dl.iter().enumerate() {
            let sx = coset_step(&gl, x, i);
            let tx = match sx {
                CosetStep::Fixed(_) => xi,
                _ => il[&x.left_gen(i)],
            };
            for (yi, y) in dm.iter().enumerate() {
                let sy = coset_step(&gm, y, i);
                let ty = match sy {
                    CosetStep::Fixed(_) => yi,
                    _ => im[&y.left_gen(i)],
                };
                let v = xi * w + yi;
                let tv = tx * w + ty;
                use CosetStep::*;
                let col = match (sx, sy) {
                    (Up, Up | Fixed(_)) | (Fixed(_), Up) => alloc::vec![(tv, one.clone())],
                    (Up, Down) => Vec::new(),
                    (Down, Up) => {
                        let mut c = alloc::vec![(v, minus_one.clone()), (tv, spec.q().clone())];
                        c.sort_unstable_by_key(|x| x.0);
                        c
                    }
                    (Down, Down | Fixed(_)) | (Fixed(_), Down) => alloc::vec![(v, minus_one.clone())],
                    (Fixed(j), Fixed(k)) => {
                        let prod = f.mul(&chi.value_at(j, spec), &chi_prime.value_at(k, &spec_inv));
                        if prod == one {
                            Vec::new()
                        } else {
                            alloc::vec![(v, minus_one.clone())]
                        }
                    }
                };
                cols.push(col);
            }
        }
        out.push(Matrix::from_columns(f, dim, &cols));
    }
    Ok(out)
}

/// Checks `G_i² = -G_i` and the braid relations.
pub fn check_zero_hecke(gens: &[Matrix]) -> Result<()> {
    for (k, g) in gens.iter().enumerate() {
        if g.mul(g)? != g.neg() {
            return Err(Error::InvalidRepresentation(alloc::format!("T_{0}² ≠ -T_{0}", k + 1)));
        }
    }
    check_braid(gens)
}

/// Which subspaces `U_i ⊆ M` feed the complex `K_•(M; (U_i))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubspaceChoice {
    /// `Ker(T_i - q)`.
    KerTMinusQ,
    /// `Im(T_i + 1)`.
    ImTPlusOne,
    /// `(T_i - q)M`.
    ImTMinusQ,
}

impl SubspaceChoice {
    pub const ALL: [SubspaceChoice; 3] =
        [SubspaceChoice::KerTMinusQ, SubspaceChoice::ImTPlusOne, SubspaceChoice::ImTMinusQ];

    pub fn name(self) -> &'static str {
        match self {
            SubspaceChoice::KerTMinusQ => "ker(T-q)",
            SubspaceChoice::ImTPlusOne => "im(T+1)",
            SubspaceChoice::ImTMinusQ => "im(T-q)",
        }
    }
}

pub fn generator_subspaces(m: &ModuleRep, choice: SubspaceChoice) -> Result<Vec<Subspace>> {
    let f = m.spec().field();
    let id = Matrix::identity(f, m.dim());
    m.gens()
        .iter()
        .map(|g| match choice {
            SubspaceChoice::KerTMinusQ => kernel(&g.sub_scaled(m.spec().q(), &id)?),
            SubspaceChoice::ImTPlusOne => image(&g.add(&id)?),
            SubspaceChoice::ImTMinusQ => image(&g.sub_scaled(m.spec().q(), &id)?),
        })
        .collect()
}

pub fn module_complex(m: &ModuleRep, choice: SubspaceChoice) -> Result<ChainComplex> {
    quotient_complex(m.spec().field(), m.dim(), &generator_subspaces(m, choice)?)
}

/// Checks `∂_{i+1} s_i + s_{i-1} ∂_i = [n]_q` on every `K_i` of the
/// `Ker(T_i - q)` complex, with `s_i` induced by `x_i y_i`; one flag per `i = 0..=n`.
pub fn homotopy_check(m: &ModuleRep) -> Result<Vec<bool>> {
    let n = m.n();
    let spec = m.spec();
    let c = module_complex(m, SubspaceChoice::KerTMinusQ)?;
    let dims = c.dims();
    let f = spec.field();
    let mut s = Vec::with_capacity(n);
    for i in 0..n {
        let (x, y) = homotopy_elements(n, i, spec)?;
        s.push(c.induced_map(i, i + 1, &m.act(&x.mul(&y)?)?)?);
    }
    let qn = spec.q_integer(n);
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut lhs = Matrix::zeros(f, dims[i], dims[i]);
        if i < n {
            lhs = lhs.add(&c.differential(i + 1).mul(&s[i])?)?;
        }
        if i > 0 {
            lhs = lhs.add(&s[i - 1].mul(c.differential(i))?)?;
        }
        out.push(lhs == Matrix::scalar(f, dims[i], &qn));
    }
    Ok(out)
}

/// Quotient `(M' ⊗ M)/Σ` for `M = Ind_λ(triv)` over `H_n(q)` and
/// `M' = Ind_μ(triv)` over `H_n(q⁻¹)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialSourceQuotient {
    pub quotient_dim: usize,
    pub trivial_intersection_count: usize,
    /// Whether `y⁻¹(Σ_1) = Σ`.
    pub preimage_equal: bool,
}

pub fn trivial_source_quotient(lambda: &Composition, mu: &Composition, spec: &FieldSpec) -> Result<TrivialSourceQuotient> {
    let n = lambda.n();
    if mu.n() != n {
        return Err(Error::DimensionMismatch("compositions of different n".into()));
    }
    let m = induced_module(&OneDimRep::trivial(lambda), spec)?;
    let spec_inv = spec.inverse_parameter()?;
    let mp = induced_module(&OneDimRep::trivial(mu), &spec_inv)?;
    let f = spec.field();
    let dim = m.module.dim() * mp.module.dim();
    let gens: Vec<Matrix> = (1..n)
        .map(|i| mp.module.gen(i).kron(m.module.gen(i)))
        .collect::<Result<_>>()?;
    let id = Matrix::identity(f, dim);
    let us: Vec<Subspace> = gens.iter().map(|g| kernel(&g.sub(&id)?)).collect::<Result<_>>()?;
    let mut sigma1 = Subspace::zero(f, dim);
    for u in us.iter().skip(1) {
        sigma1 = sigma1.sum(u)?;
    }
    let sigma = match us.first() {
        Some(u) => sigma1.sum(u)?,
        None => sigma1.clone(),
    };
    let y = if n <= 1 {
        Matrix::identity(f, dim)
    } else {
        let alt = parabolic_alt_sum(&Composition::new(&[1, n - 1])?, &spec.with_q(Scalar::one()))?;
        element_operator(&gens, dim, &alt)?
    };
    let pre = sigma1.preimage(&y)?;
    Ok(TrivialSourceQuotient {
        quotient_dim: dim - sigma.dim(),
        trivial_intersection_count: trivial_intersection_reps(mu, lambda)?.len(),
        preimage_equal: pre == sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::linalg::homology_dims;

    fn c(v: &[usize]) -> Composition {
        Composition::new(v).unwrap()
    }

    fn p(v: &[usize]) -> Perm {
        Perm::from_one_line(v).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f = FieldSpec::rational(2);
        let t1 = HeckeElt::gen(2, 1, &f);
        let sq = t1.mul(&t1).unwrap();
        assert_eq!(sq.coeff(&Perm::gen(2, 1)), Scalar::from_int(1));
        assert_eq!(sq.coeff(&Perm::identity(2)), Scalar::from_int(2));
        let a = HeckeElt::gen(3, 1, &f).mul(&HeckeElt::gen(3, 2, &f)).unwrap();
        assert_eq!(a, HeckeElt::basis(&f, &Perm::from_word(3, &[1, 2])));
        let s = HeckeElt::basis(&f, &p(&[3, 1, 2]));
        assert_eq!(s.mul(&HeckeElt::one(3, &f)).unwrap(), s);
        assert!(s.mul(&t1).is_err());
    }

    #[test]
    fn tilde_examples() {
        let f = FieldSpec::gaussian();
        let e = HeckeElt::one(3, &f);
        assert_eq!(e.tilde_twist(), e);
        let t1 = HeckeElt::gen(3, 1, &f);
        let expect = HeckeElt::monomial(&f, &Perm::identity(3), f.q().sub(&Scalar::one())).sub(&t1).unwrap();
        assert_eq!(t1.tilde_twist(), expect);
        let t12 = t1.mul(&HeckeElt::gen(3, 2, &f)).unwrap();
        assert_eq!(t12.tilde_twist().tilde_twist(), t12);
    }

    #[test]
    fn induced_examples() {
        let f = FieldSpec::rational(2);
        let m = induced_module(&OneDimRep::trivial(&c(&[2])), &f).unwrap();
        assert_eq!(m.module.dim(), 1);
        assert_eq!(m.module.gen(1).get(0, 0), Scalar::from_int(2));
        let m = induced_module(&OneDimRep::trivial(&c(&[1, 1])), &f).unwrap();
        let g = m.module.gen(1);
        assert_eq!(
            (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1)),
            (Scalar::zero(), Scalar::from_int(2), Scalar::one(), Scalar::one())
        );
        assert_eq!(induced_module(&OneDimRep::trivial(&c(&[2, 1])), &f).unwrap().module.dim(), 3);
        let bad = OneDimRep::from_values(&c(&[2]), &[Scalar::from_int(5)], &f);
        assert!(matches!(bad, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn mackey_examples() {
        let f = FieldSpec::rational(2);
        let m = induced_module(&OneDimRep::trivial(&c(&[2, 1])), &f).unwrap();
        let b = mackey_restrict(&m, &c(&[3])).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].basis, vec![0, 1, 2]);
        let b = mackey_restrict(&m, &c(&[1, 1, 1])).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.basis.len() == 1));
        let b = mackey_restrict(&m, &c(&[1, 2])).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.iter().map(|x| x.basis.len()).sum::<usize>(), 3);
    }

    #[test]
    fn hom_formula_examples() {
        let f = FieldSpec::rational(2);
        let reg = OneDimRep::trivial(&c(&[1, 1, 1]));
        assert_eq!(hom_dim_formula(&reg, &reg, &f).unwrap(), 6);
        let t = OneDimRep::trivial(&c(&[2]));
        assert_eq!(hom_dim_formula(&t, &t, &f).unwrap(), 1);
        assert_eq!(hom_dim_formula(&OneDimRep::alternating(&c(&[2])), &t, &f).unwrap(), 0);
        assert!(hom_dim_formula(&t, &t, &FieldSpec::rational(0)).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let f = FieldSpec::rational(2);
        let t = induced_module(&OneDimRep::trivial(&c(&[2])), &f).unwrap().module;
        assert_eq!(hom_space(&t, &t).unwrap().dim(), 1);
        let reg = induced_module(&OneDimRep::trivial(&c(&[1, 1])), &f).unwrap().module;
        assert_eq!(hom_space(&reg, &reg).unwrap().dim(), 2);
        let m = induced_module(&OneDimRep::trivial(&c(&[2, 1])), &f).unwrap().module;
        let reg3 = induced_module(&OneDimRep::trivial(&c(&[1, 1, 1])), &f).unwrap().module;
        assert_eq!(hom_space(&m, &reg3).unwrap().dim(), 3);
    }

    #[test]
    fn special_elements() {
        let f = FieldSpec::rational(3);
        let n = 4;
        let (x0, _) = homotopy_elements(n, 0, &f).unwrap();
        assert_eq!(x0, HeckeElt::one(n, &f));
        let (_, y_last) = homotopy_elements(n, n - 1, &f).unwrap();
        assert_eq!(y_last, HeckeElt::one(n, &f));
        let (x1, _) = homotopy_elements(n, 1, &f).unwrap();
        assert_eq!(x1, HeckeElt::one(n, &f).add(&HeckeElt::gen(n, 1, &f)).unwrap());
        let (_, y) = homotopy_elements(n, n - 2, &f).unwrap();
        let expect = HeckeElt::one(n, &f).scale(f.q()).sub(&HeckeElt::gen(n, n - 1, &f)).unwrap();
        assert_eq!(y, expect);
        assert_eq!(parabolic_alt_sum(&c(&[3]), &f).unwrap(), HeckeElt::one(3, &f));
        let y2 = parabolic_alt_sum(&c(&[1, 1]), &f).unwrap();
        assert_eq!(y2, HeckeElt::one(2, &f).scale(f.q()).sub(&HeckeElt::gen(2, 1, &f)).unwrap());
        assert_eq!(parabolic_alt_sum(&c(&[1, 1, 1]), &f).unwrap().terms().len(), 6);
        assert_eq!(x_parabolic(&c(&[1, 1]), &f), HeckeElt::one(2, &f));
        assert_eq!(x_parabolic(&c(&[3]), &f).terms().len(), 6);
    }

    #[test]
    fn zero_hecke_examples() {
        let f = FieldSpec::rational(2);
        let l = c(&[1, 1]);
        let g = zero_hecke_gr_action(&OneDimRep::trivial(&l), &OneDimRep::trivial(&l), &f).unwrap();
        assert_eq!(g[0].rows(), 4);
        check_zero_hecke(&g).unwrap();
        let g = zero_hecke_gr_action(&OneDimRep::trivial(&c(&[2, 1])), &OneDimRep::trivial(&c(&[1, 2])), &f)
            .unwrap();
        assert_eq!(g[0].rows(), 9);
        check_zero_hecke(&g).unwrap();
        let t = OneDimRep::trivial(&c(&[2]));
        let g = zero_hecke_gr_action(&t, &t, &f).unwrap();
        assert!(g[0].is_zero());
    }

    #[test]
    fn module_complexes_are_exact() {
        for spec in [FieldSpec::rational(2), FieldSpec::rational(-1)] {
            for lam in [c(&[1, 1, 1]), c(&[2, 1]), c(&[1, 2])] {
                for chi in OneDimRep::all(&lam) {
                    let m = induced_module(&chi, &spec).unwrap().module;
                    for choice in SubspaceChoice::ALL {
                        let h = homology_dims(&module_complex(&m, choice).unwrap()).unwrap();
                        assert!(h.iter().skip(1).all(|&x| x == 0), "{chi} {choice:?} {h:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn homotopy_identity_regular_module() {
        let spec = FieldSpec::rational(2);
        let m = induced_module(&OneDimRep::trivial(&c(&[1, 1, 1])), &spec).unwrap().module;
        assert_eq!(homotopy_check(&m).unwrap(), vec![true; 4]);
    }

    #[test]
    fn trivial_source_quotients() {
        let spec = FieldSpec::rational(2);
        let r = trivial_source_quotient(&c(&[1, 1]), &c(&[1, 1]), &spec).unwrap();
        assert_eq!(r.quotient_dim, 2);
        assert_eq!(r.trivial_intersection_count, 2);
        assert!(r.preimage_equal);
        let r = trivial_source_quotient(&c(&[2, 1]), &c(&[1, 2]), &spec).unwrap();
        assert_eq!(r.quotient_dim, r.trivial_intersection_count);
        assert!(r.preimage_equal);
    }
}
