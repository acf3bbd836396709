//! Lie algebras given by structure constants over Q, and the basic calculus on them.

use crate::linalg::{self, complement_check, is_zero_vec, unit, Matrix, Subspace, Vector};
use crate::rational::{q, zero, Q};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub defect: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension {0} exceeds the cap of {MAX_DIM}")]
    DimensionCap(usize),
    #[error("bracket index ({0}, {1}) out of range")]
    IndexOutOfRange(usize, usize),
    #[error("bracket [e{0}, e{0}] must not be given")]
    Diagonal(usize),
    #[error("bracket [e{0}, e{1}] given twice")]
    Duplicate(usize, usize),
    #[error("coefficient vector of [e{0}, e{1}] has wrong length")]
    CoeffLength(usize, usize),
    #[error("{} basis labels for dimension {}", .0, .1)]
    LabelCount(usize, usize),
    #[error("Jacobi identity fails on {} triple(s), first {:?}", .0.len(), .0.first().map(|d| d.triple))]
    Jacobi(Vec<JacobiDefect>),
    #[error("vector of length {got} where {expected} was expected")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("commutator of generators {0} and {1} leaves their span")]
    NotClosed(usize, usize),
    #[error("generators are linearly dependent")]
    Dependent,
    #[error("generators must be square matrices of one common size")]
    BadGenerators,
    #[error("basis change is singular")]
    Singular,
}

#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    consts: BTreeMap<(usize, usize), Vector>,
    table: Vec<Vector>,
}

/// Equality of structure constants; labels are cosmetic.
impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.consts == other.consts
    }
}
impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}", self.dim)?;
        for ((i, j), c) in &self.consts {
            write!(f, ", [{},{}]={}", self.labels[*i], self.labels[*j], self.show(c))?;
        }
        write!(f, ")")
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommutatorClass {
    Zero,
    R,
    R2CenterZero,
    R2CenterNonzero,
    R3,
    H3,
    Other,
}

impl CommutatorClass {
    pub fn label(&self) -> &'static str {
        match self {
            CommutatorClass::Zero => "0",
            CommutatorClass::R => "R",
            CommutatorClass::R2CenterZero => "R2, z=0",
            CommutatorClass::R2CenterNonzero => "R2, z!=0",
            CommutatorClass::R3 => "R3",
            CommutatorClass::H3 => "h3",
            CommutatorClass::Other => "other",
        }
    }
}

#[derive(Debug, Clone)]
pub struct StructuralInvariants {
    pub derived_series: Vec<Subspace>,
    pub lower_central_series: Vec<Subspace>,
    pub center: Subspace,
    pub unimodular_kernel: Subspace,
    pub commutator_class: CommutatorClass,
    pub center_cap_derived: Subspace,
    /// g / z(g′), when z(g′) is a proper ideal.
    pub quotient_by_center_of_derived: Option<LieAlgebra>,
}

impl LieAlgebra {
    /// Validated constructor. Entries are (i, j, coefficients of [eᵢ, eⱼ]); i > j is
    /// accepted and stored negated.
    pub fn new(dim: usize, entries: Vec<(usize, usize, Vector)>) -> Result<Self, AlgebraError> {
        let g = Self::new_unchecked(dim, entries)?;
        let defects = g.validate();
        if defects.is_empty() {
            Ok(g)
        } else {
            Err(AlgebraError::Jacobi(defects))
        }
    }

    /// Constructor that skips the Jacobi check, for tamper tests and defect reporting.
    pub fn new_unchecked(dim: usize, entries: Vec<(usize, usize, Vector)>) -> Result<Self, AlgebraError> {
        if dim > MAX_DIM {
            return Err(AlgebraError::DimensionCap(dim));
        }
        let mut consts = BTreeMap::new();
        for (i, j, c) in entries {
            if i >= dim || j >= dim {
                return Err(AlgebraError::IndexOutOfRange(i, j));
            }
            if i == j {
                return Err(AlgebraError::Diagonal(i));
            }
            if c.len() != dim {
                return Err(AlgebraError::CoeffLength(i, j));
            }
            let (a, b, v) = if i < j { (i, j, c) } else { (j, i, linalg::scale(&q(-1), &c)) };
            if consts.contains_key(&(a, b)) {
                return Err(AlgebraError::Duplicate(a, b));
            }
            if !is_zero_vec(&v) {
                consts.insert((a, b), v);
            }
        }
        Ok(Self::from_map(dim, consts))
    }

    fn from_map(dim: usize, consts: BTreeMap<(usize, usize), Vector>) -> Self {
        let mut table = vec![vec![zero(); dim]; dim * dim];
        for ((i, j), c) in &consts {
            table[i * dim + j] = c.clone();
            table[j * dim + i] = linalg::scale(&q(-1), c);
        }
        LieAlgebra { dim, labels: default_labels(dim), consts, table }
    }

    /// Sparse helper: each bracket given as (i, j, [(k, coefficient)]).
    pub fn from_sparse(dim: usize, entries: &[(usize, usize, Vec<(usize, Q)>)]) -> Result<Self, AlgebraError> {
        Self::new(dim, Self::expand(dim, entries))
    }

    pub fn expand(dim: usize, entries: &[(usize, usize, Vec<(usize, Q)>)]) -> Vec<(usize, usize, Vector)> {
        entries
            .iter()
            .map(|(i, j, cs)| {
                let mut v = vec![zero(); dim];
                for (k, c) in cs {
                    v[*k] += c;
                }
                (*i, *j, v)
            })
            .collect()
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_map(dim, BTreeMap::new())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.dim {
            return Err(AlgebraError::LabelCount(labels.len(), self.dim));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.consts
    }

    pub fn show(&self, v: &[Q]) -> String {
        let mut parts = Vec::new();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coef = if *c == q(1) {
                String::new()
            } else if *c == q(-1) {
                "-".into()
            } else {
                format!("{}*", crate::rational::to_text(c))
            };
            parts.push(format!("{coef}{}", self.labels[k]));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    fn check_len(&self, v: &[Q]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            Err(AlgebraError::DimensionMismatch { expected: self.dim, got: v.len() })
        } else {
            Ok(())
        }
    }

    pub fn try_bracket(&self, x: &[Q], y: &[Q]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket(x, y))
    }

    /// Bilinear antisymmetric extension of the structure constants. Panics on length mismatch.
    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vector {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length mismatch");
        let mut out = vec![zero(); self.dim];
        for ((i, j), c) in &self.consts {
            let w = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            linalg::axpy(&mut out, &w, c);
        }
        out
    }

    pub fn validate(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let a = self.bracket(&ei, self.bracket_basis(j, k));
                    let b = self.bracket(&ej, self.bracket_basis(k, i));
                    let c = self.bracket(&ek, self.bracket_basis(i, j));
                    let s = linalg::add(&linalg::add(&a, &b), &c);
                    if !is_zero_vec(&s) {
                        out.push(JacobiDefect { triple: (i, j, k), defect: s });
                    }
                }
            }
        }
        out
    }

    /// ad(x): column j is [x, eⱼ].
    pub fn ad(&self, x: &[Q]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        Matrix::from_cols(&cols, n)
    }

    pub fn chi(&self, x: &[Q]) -> Q {
        self.ad(x).trace()
    }

    /// χ(eᵢ) for each basis vector.
    pub fn chi_vector(&self) -> Vector {
        (0..self.dim).map(|i| self.chi(&unit(self.dim, i))).collect()
    }

    pub fn unimodular_kernel(&self) -> Subspace {
        let row = Matrix::from_rows(&[self.chi_vector()]);
        Subspace::span(self.dim, &row.kernel())
    }

    pub fn is_unimodular(&self) -> bool {
        is_zero_vec(&self.chi_vector())
    }

    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                vs.push(self.bracket(a, b));
            }
        }
        Subspace::span(self.dim, &vs)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.dim)
    }

    pub fn derived(&self) -> Subspace {
        let vs: Vec<Vector> = self.consts.values().cloned().collect();
        Subspace::span(self.dim, &vs)
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.whole()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.whole()];
        let g = self.whole();
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(&g, last);
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().dim() == 0
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().dim() == 0
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.is_empty()
    }

    /// Elements commuting with all of `s`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let rows: Vec<Vector> = s.basis().iter().flat_map(|v| self.ad(v).row_vecs()).collect();
        if rows.is_empty() {
            return self.whole();
        }
        Subspace::span(self.dim, &Matrix::from_rows(&rows).kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.whole())
    }

    /// Center of the subalgebra `s` (elements of s commuting with s).
    pub fn center_of(&self, s: &Subspace) -> Subspace {
        s.intersect(&self.centralizer(s))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_space(&self.bracket_spaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_space(&self.bracket_spaces(&self.whole(), s))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_spaces(s, s).dim() == 0
    }

    /// Structure constants of the subalgebra spanned by `vs`, in that basis.
    pub fn restrict_to(&self, vs: &[Vector]) -> Result<LieAlgebra, AlgebraError> {
        let k = vs.len();
        let m = Matrix::from_cols(vs, self.dim);
        if m.rank() < k {
            return Err(AlgebraError::Dependent);
        }
        let mut entries = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let br = self.bracket(&vs[a], &vs[b]);
                let c = m.solve(&br).ok_or(AlgebraError::NotSubalgebra)?;
                entries.push((a, b, c));
            }
        }
        LieAlgebra::new_unchecked(k, entries)
    }

    pub fn restrict(&self, s: &Subspace) -> Result<LieAlgebra, AlgebraError> {
        self.restrict_to(s.basis())
    }

    /// The same algebra written in the basis given by the columns of `p`.
    pub fn transform(&self, p: &Matrix) -> Result<LieAlgebra, AlgebraError> {
        let inv = p.inverse().ok_or(AlgebraError::Singular)?;
        let cols = p.col_vecs();
        let mut consts = BTreeMap::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                let v = inv.apply(&self.bracket(&cols[a], &cols[b]));
                if !is_zero_vec(&v) {
                    consts.insert((a, b), v);
                }
            }
        }
        Ok(Self::from_map(self.dim, consts))
    }

    /// g / I for an ideal I, in the basis of the lexicographically first complementary units.
    pub fn quotient(&self, ideal: &Subspace) -> Result<LieAlgebra, AlgebraError> {
        if !self.is_ideal(ideal) {
            return Err(AlgebraError::NotSubalgebra);
        }
        let comp = ideal.complement_units();
        let mut cols: Vec<Vector> = ideal.basis().to_vec();
        cols.extend(comp.iter().map(|&i| unit(self.dim, i)));
        let m = Matrix::from_cols(&cols, self.dim);
        let off = ideal.dim();
        let k = comp.len();
        let mut entries = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let br = self.bracket_basis(comp[a], comp[b]);
                let c = m.solve(br).expect("basis spans");
                entries.push((a, b, c[off..].to_vec()));
            }
        }
        LieAlgebra::new_unchecked(k, entries)
    }

    pub fn structural_invariants(&self) -> StructuralInvariants {
        let derived_series = self.derived_series();
        let lower_central_series = self.lower_central_series();
        let center = self.center();
        let gp = self.derived();
        let center_cap_derived = center.intersect(&gp);
        let z_gp = self.center_of(&gp);
        let quotient_by_center_of_derived = if z_gp.dim() > 0 && z_gp.dim() < self.dim {
            self.quotient(&z_gp).ok()
        } else {
            None
        };
        StructuralInvariants {
            commutator_class: self.commutator_class(),
            unimodular_kernel: self.unimodular_kernel(),
            derived_series,
            lower_central_series,
            center,
            center_cap_derived,
            quotient_by_center_of_derived,
        }
    }

    pub fn commutator_class(&self) -> CommutatorClass {
        let gp = self.derived();
        let abelian = self.is_abelian_subspace(&gp);
        match (gp.dim(), abelian) {
            (0, _) => CommutatorClass::Zero,
            (1, _) => CommutatorClass::R,
            (2, true) => {
                if self.center().dim() == 0 {
                    CommutatorClass::R2CenterZero
                } else {
                    CommutatorClass::R2CenterNonzero
                }
            }
            (3, true) => CommutatorClass::R3,
            (3, false) => {
                let z = self.center_of(&gp);
                if z.dim() == 1 && self.bracket_spaces(&gp, &gp) == z {
                    CommutatorClass::H3
                } else {
                    CommutatorClass::Other
                }
            }
            _ => CommutatorClass::Other,
        }
    }

    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.apply(self.bracket_basis(i, j));
                let rhs = linalg::add(
                    &self.bracket(&d.col(i), &unit(n, j)),
                    &self.bracket(&unit(n, i), &d.col(j)),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Basis of Der(g) as matrices, canonical (reduced row-echelon over the flattened entries).
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        let idx = |k: usize, l: usize| k * n + l;
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let cij = self.bracket_basis(i, j);
                for m in 0..n {
                    let mut row = vec![zero(); n * n];
                    for (l, c) in cij.iter().enumerate() {
                        if !c.is_zero() {
                            row[idx(m, l)] += c;
                        }
                    }
                    for k in 0..n {
                        let ckj = &self.bracket_basis(k, j)[m];
                        if !ckj.is_zero() {
                            row[idx(k, i)] -= ckj;
                        }
                        let cik = &self.bracket_basis(i, k)[m];
                        if !cik.is_zero() {
                            row[idx(k, j)] -= cik;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = if rows.is_empty() {
            (0..n * n).map(|i| unit(n * n, i)).collect()
        } else {
            Matrix::from_rows(&rows).kernel()
        };
        Subspace::span(n * n, &kernel)
            .basis()
            .iter()
            .map(|v| Matrix::from_rows(&v.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>()))
            .collect()
    }

    /// Lie algebra spanned by matrices under the commutator, in the given generator basis.
    pub fn from_matrices(mats: &[Matrix]) -> Result<LieAlgebra, AlgebraError> {
        let Some(first) = mats.first() else {
            return Ok(LieAlgebra::abelian(0));
        };
        let m = first.rows();
        if mats.iter().any(|a| !a.is_square() || a.rows() != m) {
            return Err(AlgebraError::BadGenerators);
        }
        if mats.len() > MAX_DIM {
            return Err(AlgebraError::DimensionCap(mats.len()));
        }
        let flat: Vec<Vector> = mats.iter().map(|a| a.entries().to_vec()).collect();
        let span = Matrix::from_cols(&flat, m * m);
        if span.rank() < mats.len() {
            return Err(AlgebraError::Dependent);
        }
        let mut entries = Vec::new();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let c = mats[i].mul(&mats[j]).sub(&mats[j].mul(&mats[i]));
                let coords = span.solve(c.entries()).ok_or(AlgebraError::NotClosed(i, j))?;
                entries.push((i, j, coords));
            }
        }
        LieAlgebra::new(mats.len(), entries)
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim + other.dim;
        let mut consts = BTreeMap::new();
        for ((i, j), c) in &self.consts {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(zero(), other.dim));
            consts.insert((*i, *j), v);
        }
        for ((i, j), c) in &other.consts {
            let mut v = vec![zero(); self.dim];
            v.extend(c.iter().cloned());
            consts.insert((i + self.dim, j + self.dim), v);
        }
        Self::from_map(n, consts)
    }

    /// True iff U and V are complementary subalgebras.
    pub fn is_double(&self, u: &Subspace, v: &Subspace) -> bool {
        complement_check(u, v) && self.is_subalgebra(u) && self.is_subalgebra(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn h4() -> LieAlgebra {
        LieAlgebra::from_sparse(
            4,
            &[
                (0, 1, vec![(1, q(1))]),
                (0, 2, vec![(1, q(1)), (2, q(1))]),
                (0, 3, vec![(3, q(2))]),
                (1, 2, vec![(3, q(1))]),
            ],
        )
        .unwrap()
    }

    fn d4() -> LieAlgebra {
        LieAlgebra::from_sparse(
            4,
            &[(0, 1, vec![(1, q(1))]), (0, 2, vec![(2, q(-1))]), (1, 2, vec![(3, q(1))])],
        )
        .unwrap()
    }

    #[test]
    fn bracket_examples() {
        let g = h4();
        assert_eq!(g.bracket(&unit(4, 1), &unit(4, 2)), unit(4, 3));
        let x = linalg::vec_from_i64(&[1, 2, -1, 3]);
        assert!(is_zero_vec(&g.bracket(&x, &x)));
        let d = d4();
        let v = d.bracket(&linalg::vec_from_i64(&[1, 1, 0, 0]), &unit(4, 2));
        assert_eq!(v, linalg::vec_from_i64(&[0, 0, -1, 1]));
    }

    #[test]
    fn tamper_detected() {
        let mut e = LieAlgebra::expand(
            4,
            &[
                (0, 1, vec![(1, q(1))]),
                (0, 2, vec![(1, q(1)), (2, q(1))]),
                (1, 2, vec![(3, q(1))]),
            ],
        );
        e.push((0, 3, unit(4, 3)));
        // h4 with [e0,e3] = e3 instead of 2e3
        let g = LieAlgebra::new_unchecked(4, e.clone()).unwrap();
        assert!(!g.validate().is_empty());
        assert!(matches!(LieAlgebra::new(4, e), Err(AlgebraError::Jacobi(_))));
    }

    #[test]
    fn chi_examples() {
        let g = LieAlgebra::from_sparse(4, &[(0, 3, vec![(3, q(1))]), (1, 2, vec![(2, q(1))])]).unwrap();
        assert_eq!(g.chi(&unit(4, 0)), q(1));
        assert_eq!(g.chi(&unit(4, 2)), q(0));
    }

    #[test]
    fn d4_invariants() {
        let g = d4();
        let inv = g.structural_invariants();
        assert_eq!(g.derived(), Subspace::coordinate(4, &[1, 2, 3]));
        assert_eq!(inv.commutator_class, CommutatorClass::H3);
        let quo = inv.quotient_by_center_of_derived.unwrap();
        assert_eq!(quo.dim(), 3);
        assert!(inv.unimodular_kernel.contains_space(&g.derived()));
    }

    #[test]
    fn heisenberg_derivations() {
        let h3 = LieAlgebra::from_sparse(3, &[(0, 1, vec![(2, q(1))])]).unwrap();
        let ders = h3.derivations();
        assert_eq!(ders.len(), 6);
        assert!(ders.iter().all(|d| h3.is_derivation(d)));
        assert_eq!(LieAlgebra::abelian(3).derivations().len(), 9);
    }

    #[test]
    fn transform_round_trip() {
        let g = h4();
        let p = Matrix::from_rows(&[
            vec![q(1), q(2), q(0), q(0)],
            vec![q(0), q(1), qf(1, 2), q(0)],
            vec![q(0), q(0), q(1), q(-3)],
            vec![q(1), q(0), q(0), q(1)],
        ]);
        let h = g.transform(&p).unwrap();
        assert!(h.validate().is_empty());
        assert_eq!(h.transform(&p.inverse().unwrap()).unwrap(), g);
    }

    #[test]
    fn matrices_to_algebra() {
        // aff(R): x = diag(1,0), y = E12
        let x = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let y = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let g = LieAlgebra::from_matrices(&[x.clone(), y.clone()]).unwrap();
        assert_eq!(g.bracket_basis(0, 1), &unit(2, 1));
        assert_eq!(LieAlgebra::from_matrices(&[x.clone(), x.clone()]), Err(AlgebraError::Dependent));
        let z = Matrix::from_i64(&[&[0, 0], &[1, 0]]);
        assert_eq!(LieAlgebra::from_matrices(&[y, z]), Err(AlgebraError::NotClosed(0, 1)));
    }
}
