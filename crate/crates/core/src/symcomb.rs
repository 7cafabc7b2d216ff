//! Symmetric-group combinatorics: lengths, reduced words, Young subgroups,
//! distinguished coset and double-coset representatives.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation (stored 0-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from 1-based one-line images.
    pub fn from_one_line(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format_line(images)));
            }
            seen[v - 1] = true;
        }
        Ok(Perm(images.iter().map(|&v| (v - 1) as u8).collect()))
    }

    /// The basic transposition `τ_i = (i, i+1)` in `S_n`.
    pub fn gen(n: usize, i: usize) -> Perm {
        assert!(i >= 1 && i < n, "generator index out of range");
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// `τ_{i_1} ⋯ τ_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        let mut p = Perm::identity(n);
        for &i in word {
            p = p.right_gen(i);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    /// `self ∘ o`, i.e. `(self·o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&k| self.0[k as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = alloc::vec![0u8; self.0.len()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize] = k as u8;
        }
        Perm(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut c = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    c += 1;
                }
            }
        }
        c
    }

    /// `τ_i · self`: swaps the values `i` and `i+1`.
    pub fn left_gen(&self, i: usize) -> Perm {
        let (a, b) = ((i - 1) as u8, i as u8);
        Perm(
            self.0
                .iter()
                .map(|&v| if v == a { b } else if v == b { a } else { v })
                .collect(),
        )
    }

    /// `self · τ_i`: swaps positions `i` and `i+1`.
    pub fn right_gen(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.0.swap(i - 1, i);
        p
    }

    /// Whether `ℓ(τ_i σ) > ℓ(σ)`.
    pub fn left_gen_raises(&self, i: usize) -> bool {
        let (mut pa, mut pb) = (0, 0);
        for (k, &v) in self.0.iter().enumerate() {
            if v as usize == i - 1 {
                pa = k;
            } else if v as usize == i {
                pb = k;
            }
        }
        pa < pb
    }

    /// Whether `ℓ(σ τ_i) > ℓ(σ)`.
    pub fn right_gen_raises(&self, i: usize) -> bool {
        self.0[i - 1] < self.0[i]
    }

    /// If `σ⁻¹ τ_i σ` is a basic transposition `τ_j`, returns `j`.
    pub fn conjugate_gen(&self, i: usize) -> Option<usize> {
        let inv = self.inverse();
        let (a, b) = (inv.0[i - 1] as usize, inv.0[i] as usize);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        (hi == lo + 1).then_some(lo + 1)
    }

    /// Orders by length, then lexicographically in one-line notation.
    pub fn cmp_length_lex(&self, o: &Perm) -> core::cmp::Ordering {
        self.length().cmp(&o.length()).then_with(|| self.0.cmp(&o.0))
    }
}

fn format_line(images: &[usize]) -> String {
    let parts: Vec<String> = images.iter().map(|v| v.to_string()).collect();
    parts.join(" ")
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_line(&self.one_line()))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl core::str::FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        let images: core::result::Result<Vec<usize>, _> =
            s.split_whitespace().map(|t| t.parse::<usize>()).collect();
        let images = images.map_err(|_| Error::Parse(String::from("invalid permutation: ") + s))?;
        Perm::from_one_line(&images)
    }
}

pub fn perm_length(w: &Perm) -> usize {
    w.length()
}

/// Reduced word `i_1 ... i_l` with `w = τ_{i_1} ⋯ τ_{i_l}`, always peeling off
/// the smallest left descent.
pub fn reduced_word(w: &Perm) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = w.clone();
    'outer: loop {
        for i in 1..cur.n() {
            if !cur.left_gen_raises(i) {
                word.push(i);
                cur = cur.left_gen(i);
                continue 'outer;
            }
        }
        return word;
    }
}

/// All permutations of `S_n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = alloc::vec![Perm(cur.clone())];
    loop {
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            return out;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).expect("successor exists");
        cur.swap(k, l);
        cur[k + 1..].reverse();
        out.push(Perm(cur.clone()));
    }
}

/// A finite sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: &[usize]) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format_parts(parts)));
        }
        Ok(Composition(parts.to_vec()))
    }

    /// The composition whose Young subgroup is generated by the given `τ_j`.
    pub fn from_generators(n: usize, gens: &[usize]) -> Composition {
        let mut parts = Vec::new();
        let mut run = 1;
        for j in 1..n {
            if gens.contains(&j) {
                run += 1;
            } else {
                parts.push(run);
                run = 1;
            }
        }
        if n > 0 {
            parts.push(run);
        }
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Indices `j` in `1..n` that are not partial sums.
    pub fn young_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut start = 1;
        for &p in &self.0 {
            out.extend(start..start + p - 1);
            start += p;
        }
        out
    }

    /// Half-open 1-based position ranges of the blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 1;
        for &p in &self.0 {
            out.push((start, start + p));
            start += p;
        }
        out
    }

    /// Block containing position `j`.
    pub fn block_of(&self, j: usize) -> usize {
        let mut end = 0;
        for (b, &p) in self.0.iter().enumerate() {
            end += p;
            if j <= end {
                return b;
            }
        }
        panic!("position beyond composition")
    }

    /// `|S_λ| = Π λ_k!`.
    pub fn young_order(&self) -> usize {
        self.0.iter().map(|&p| (1..=p).product::<usize>()).product()
    }

    /// Whether `σ` lies in `S_λ`.
    pub fn contains(&self, s: &Perm) -> bool {
        (1..=s.n()).all(|j| self.block_of(j) == self.block_of(s.image(j)))
    }
}

fn format_parts(parts: &[usize]) -> String {
    let v: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    v.join(",")
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_parts(&self.0))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl core::str::FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Composition> {
        let parts: core::result::Result<Vec<usize>, _> =
            s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|_| Error::Parse(String::from("invalid composition: ") + s))?;
        Composition::new(&parts)
    }
}

/// All compositions of `n`, in lexicographic order of parts.
pub fn all_compositions(n: usize) -> Vec<Composition> {
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

pub fn young_generators(lambda: &Composition) -> Vec<usize> {
    lambda.young_generators()
}

fn sort_length_lex(v: &mut [Perm]) {
    v.sort_by(|a, b| a.cmp_length_lex(b));
}

/// Minimal-length representatives of the left cosets `σ S_λ`.
pub fn dist_reps(lambda: &Composition) -> Vec<Perm> {
    let gens = lambda.young_generators();
    let mut out: Vec<Perm> = all_perms(lambda.n())
        .into_iter()
        .filter(|p| gens.iter().all(|&j| p.right_gen_raises(j)))
        .collect();
    sort_length_lex(&mut out);
    out
}

/// Minimal-length representatives of the right cosets `S_μ σ`.
pub fn left_dist_reps(mu: &Composition) -> Vec<Perm> {
    let gens = mu.young_generators();
    let mut out: Vec<Perm> = all_perms(mu.n())
        .into_iter()
        .filter(|p| gens.iter().all(|&j| p.left_gen_raises(j)))
        .collect();
    sort_length_lex(&mut out);
    out
}

/// Elements of `S_λ`, sorted by length then one-line order.
pub fn young_elements(lambda: &Composition) -> Vec<Perm> {
    let mut out: Vec<Perm> =
        all_perms(lambda.n()).into_iter().filter(|p| lambda.contains(p)).collect();
    sort_length_lex(&mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetDatum {
    pub rep: Perm,
    /// `τ_i ∈ B_μ` with `π⁻¹ τ_i π ∈ B_λ`.
    pub nu_generators: Vec<usize>,
    pub nu: Composition,
}

fn check_same_n(mu: &Composition, lambda: &Composition) -> Result<()> {
    if mu.n() != lambda.n() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "compositions {mu} and {lambda} have different sums"
        )));
    }
    Ok(())
}

fn nu_datum(mu: &Composition, lambda: &Composition, rep: Perm) -> DoubleCosetDatum {
    let bl = lambda.young_generators();
    let nu_generators: Vec<usize> = mu
        .young_generators()
        .into_iter()
        .filter(|&i| rep.conjugate_gen(i).is_some_and(|j| bl.contains(&j)))
        .collect();
    let nu = Composition::from_generators(rep.n(), &nu_generators);
    DoubleCosetDatum { rep, nu_generators, nu }
}

/// Distinguished representatives of `S_μ \ S_n / S_λ`, found by orbit closure.
pub fn double_dist_reps(mu: &Composition, lambda: &Composition) -> Result<Vec<DoubleCosetDatum>> {
    check_same_n(mu, lambda)?;
    let (bm, bl) = (mu.young_generators(), lambda.young_generators());
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for p in all_perms(mu.n()) {
        if seen.contains(&p) {
            continue;
        }
        let mut orbit = alloc::vec![p.clone()];
        seen.insert(p.clone());
        let mut k = 0;
        while k < orbit.len() {
            let s = orbit[k].clone();
            k += 1;
            let nbrs = bm.iter().map(|&i| s.left_gen(i)).chain(bl.iter().map(|&j| s.right_gen(j)));
            for t in nbrs {
                if seen.insert(t.clone()) {
                    orbit.push(t);
                }
            }
        }
        reps.push(orbit.into_iter().min_by(|a, b| a.cmp_length_lex(b)).expect("nonempty"));
    }
    sort_length_lex(&mut reps);
    Ok(reps.into_iter().map(|r| nu_datum(mu, lambda, r)).collect())
}

/// The shortest element of `S_μ σ S_λ`, reached by descending greedily.
pub fn double_coset_min(mu: &Composition, lambda: &Composition, s: &Perm) -> Perm {
    let (bm, bl) = (mu.young_generators(), lambda.young_generators());
    let mut cur = s.clone();
    loop {
        if let Some(&i) = bm.iter().find(|&&i| !cur.left_gen_raises(i)) {
            cur = cur.left_gen(i);
        } else if let Some(&j) = bl.iter().find(|&&j| !cur.right_gen_raises(j)) {
            cur = cur.right_gen(j);
        } else {
            return cur;
        }
    }
}

/// Three-way split of `D_λ` relative to `τ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeodharSplit {
    /// `σ` with `τ_iσ ∈ D_λ` and `τ_iσ > σ`.
    pub a_set: Vec<Perm>,
    /// `τ_iσ` for `σ` in `a_set`, in the same order.
    pub tau_a_set: Vec<Perm>,
    /// `(σ, j)` with `τ_iσ = στ_j`, `τ_j ∈ B_λ`.
    pub b_set: Vec<(Perm, usize)>,
}

/// Classification of one element of `D_λ` under left multiplication by `τ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetStep {
    Up,
    Down,
    Fixed(usize),
}

/// How `τ_i` moves the coset `σ S_λ`, for `σ ∈ D_λ`.
pub fn coset_step(lambda_gens: &[usize], s: &Perm, i: usize) -> CosetStep {
    match s.conjugate_gen(i) {
        Some(j) if lambda_gens.contains(&j) => CosetStep::Fixed(j),
        _ if s.left_gen_raises(i) => CosetStep::Up,
        _ => CosetStep::Down,
    }
}

pub fn deodhar_partition(lambda: &Composition, i: usize) -> Result<DeodharSplit> {
    let n = lambda.n();
    if i == 0 || i >= n {
        return Err(Error::InvalidPermutation(alloc::format!("generator {i} outside 1..{n}")));
    }
    let gens = lambda.young_generators();
    let mut split = DeodharSplit { a_set: Vec::new(), tau_a_set: Vec::new(), b_set: Vec::new() };
    for s in dist_reps(lambda) {
        match coset_step(&gens, &s, i) {
            CosetStep::Up => {
                split.tau_a_set.push(s.left_gen(i));
                split.a_set.push(s);
            }
            CosetStep::Down => {}
            CosetStep::Fixed(j) => split.b_set.push((s, j)),
        }
    }
    Ok(split)
}

/// `(w_n, w_λ, d_λ = w_n w_λ)`.
pub fn longest_elements(lambda: &Composition) -> (Perm, Perm, Perm) {
    let n = lambda.n();
    let wn = Perm((0..n as u8).rev().collect());
    let mut wl = Vec::with_capacity(n);
    for (a, b) in lambda.blocks() {
        wl.extend((a - 1..b - 1).rev().map(|v| v as u8));
    }
    let wl = Perm(wl);
    let dl = wn.compose(&wl);
    (wn, wl, dl)
}

/// Representatives whose double coset has trivial stabilizer intersection.
pub fn trivial_intersection_reps(mu: &Composition, lambda: &Composition) -> Result<Vec<Perm>> {
    Ok(double_dist_reps(mu, lambda)?
        .into_iter()
        .filter(|d| d.nu_generators.is_empty())
        .map(|d| d.rep)
        .collect())
}

/// Position lookup for a fixed enumeration of permutations.
pub fn index_map(list: &[Perm]) -> BTreeMap<Perm, usize> {
    list.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(v: &[usize]) -> Perm {
        Perm::from_one_line(v).unwrap()
    }

    fn c(v: &[usize]) -> Composition {
        Composition::new(v).unwrap()
    }

    #[test]
    fn lengths_and_words() {
        assert_eq!(perm_length(&Perm::identity(4)), 0);
        assert_eq!(perm_length(&p(&[3, 2, 1])), 3);
        assert_eq!(perm_length(&p(&[2, 1, 4, 3])), 2);
        assert!(reduced_word(&Perm::identity(3)).is_empty());
        assert_eq!(reduced_word(&Perm::gen(3, 2)), vec![2]);
        let w = reduced_word(&p(&[3, 2, 1]));
        assert_eq!(w.len(), 3);
        assert_eq!(Perm::from_word(3, &w), p(&[3, 2, 1]));
    }

    #[test]
    fn parse_and_display() {
        let s: Perm = "3 1 2".parse().unwrap();
        assert_eq!(s.to_string(), "3 1 2");
        assert!("1 1 2".parse::<Perm>().is_err());
        let l: Composition = "2,1,1".parse().unwrap();
        assert_eq!(l.to_string(), "2,1,1");
        assert!("2,0".parse::<Composition>().is_err());
    }

    #[test]
    fn young_generator_examples() {
        assert_eq!(c(&[4]).young_generators(), vec![1, 2, 3]);
        assert!(c(&[1, 1, 1]).young_generators().is_empty());
        assert_eq!(c(&[2, 2]).young_generators(), vec![1, 3]);
        assert_eq!(Composition::from_generators(4, &[1, 3]), c(&[2, 2]));
    }

    #[test]
    fn dist_rep_examples() {
        assert_eq!(dist_reps(&c(&[1, 1])), vec![Perm::identity(2), Perm::gen(2, 1)]);
        assert_eq!(dist_reps(&c(&[2, 1])).len(), 3);
        assert_eq!(dist_reps(&c(&[2, 2])).len(), 6);
    }

    #[test]
    fn double_coset_examples() {
        let d = double_dist_reps(&c(&[3]), &c(&[3])).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[0].rep.is_identity());
        assert_eq!(d[0].nu, c(&[3]));
        let d = double_dist_reps(&c(&[2, 1]), &c(&[2, 1])).unwrap();
        assert_eq!(d.iter().map(|x| x.rep.clone()).collect::<Vec<_>>(), vec![p(&[1, 2, 3]), p(&[1, 3, 2])]);
        assert!(d[1].nu_generators.is_empty());
        assert_eq!(double_dist_reps(&c(&[1, 1]), &c(&[1, 1])).unwrap().len(), 2);
        assert!(double_dist_reps(&c(&[2]), &c(&[1, 2])).is_err());
        assert_eq!(trivial_intersection_reps(&c(&[2, 1]), &c(&[2, 1])).unwrap(), vec![Perm::gen(3, 2)]);
        assert!(trivial_intersection_reps(&c(&[2]), &c(&[2])).unwrap().is_empty());
        assert_eq!(trivial_intersection_reps(&c(&[1, 1, 1]), &c(&[1, 1, 1])).unwrap().len(), 6);
    }

    #[test]
    fn deodhar_examples() {
        let s = deodhar_partition(&c(&[2]), 1).unwrap();
        assert!(s.a_set.is_empty() && s.tau_a_set.is_empty());
        assert_eq!(s.b_set, vec![(Perm::identity(2), 1)]);
        let s = deodhar_partition(&c(&[1, 1]), 1).unwrap();
        assert_eq!(s.a_set, vec![Perm::identity(2)]);
        assert_eq!(s.tau_a_set, vec![Perm::gen(2, 1)]);
        assert!(s.b_set.is_empty());
        let s = deodhar_partition(&c(&[2, 1]), 2).unwrap();
        assert_eq!(s.a_set.len() * 2 + s.b_set.len(), 3);
    }

    #[test]
    fn longest_element_examples() {
        let (w, _, d) = longest_elements(&c(&[1, 1, 1]));
        assert_eq!(d, p(&[3, 2, 1]));
        assert_eq!(w, d);
        assert!(longest_elements(&c(&[2])).2.is_identity());
        let (_, _, d) = longest_elements(&c(&[2, 2]));
        assert_eq!(d.length(), 4);
        let reps = dist_reps(&c(&[2, 2]));
        assert_eq!(reps.last(), Some(&d));
    }
}
