//! Product and paracomplex structures: integrability, decomposition typing, subalgebra
//! search over Grassmannian cells, and non-existence certificates.

pub mod tables;

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::catalog::Family;
use crate::classify::{self, ClassifyError};
use crate::linalg::{unit, Matrix, Subspace, Vector};
use crate::par;
use crate::polysys::{self, MPoly, PolySystem, Solution};
use crate::rational::{q, Q};
use num::Zero;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error("the {side} side is not a subalgebra: {bracket}")]
    NotSubalgebra { side: &'static str, bracket: String },
    #[error("E is not an involution")]
    NotInvolutive,
    #[error("E = ±Id")]
    TrivialInvolution,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("search budget exceeded with {} decompositions found", partial.len())]
    BudgetExceeded { partial: Vec<ProductStructure> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Classify(String),
}

impl From<ClassifyError> for ProductError {
    fn from(e: ClassifyError) -> Self {
        ProductError::Classify(e.to_string())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductStructure {
    pub e: Matrix,
    pub plus: Subspace,
    pub minus: Subspace,
    pub paracomplex: bool,
    pub plus_ideal: bool,
    pub minus_ideal: bool,
}

fn closure_failure(g: &LieAlgebra, s: &Subspace) -> Option<String> {
    let b = s.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let w = g.bracket(&b[i], &b[j]);
            if !s.contains(&w) {
                return Some(format!("[{}, {}] = {}", g.show(&b[i]), g.show(&b[j]), g.show(&w)));
            }
        }
    }
    None
}

/// E with E = Id on `plus` and −Id on `minus`.
pub fn product_from_decomposition(g: &LieAlgebra, plus: &Subspace, minus: &Subspace) -> Result<ProductStructure, ProductError> {
    let n = g.dim();
    if plus.dim() == 0 || minus.dim() == 0 || !crate::linalg::complement_check(plus, minus) {
        return Err(ProductError::NotComplementary);
    }
    if let Some(b) = closure_failure(g, plus) {
        return Err(ProductError::NotSubalgebra { side: "plus", bracket: b });
    }
    if let Some(b) = closure_failure(g, minus) {
        return Err(ProductError::NotSubalgebra { side: "minus", bracket: b });
    }
    let cols: Vec<Vector> = plus.basis().iter().chain(minus.basis()).cloned().collect();
    let p = Matrix::from_cols(&cols, n);
    let d: Vec<Q> = (0..n).map(|i| if i < plus.dim() { q(1) } else { q(-1) }).collect();
    let e = p.mul(&Matrix::diag(&d)).mul(&p.inverse().expect("complementary"));
    assert_eq!(is_integrable_product(g, &e), Ok(true), "closed eigenspaces must give an integrable E");
    Ok(ProductStructure {
        e,
        plus: plus.clone(),
        minus: minus.clone(),
        paracomplex: plus.dim() == minus.dim(),
        plus_ideal: g.is_ideal(plus),
        minus_ideal: g.is_ideal(minus),
    })
}

/// Span the given vectors on each side; shared coordinates are fine, only ranks matter.
pub fn product_from_vectors(g: &LieAlgebra, plus: &[Vector], minus: &[Vector]) -> Result<ProductStructure, ProductError> {
    let n = g.dim();
    let (p, m) = (Subspace::span(n, plus), Subspace::span(n, minus));
    if p.dim() != plus.len() || m.dim() != minus.len() {
        return Err(ProductError::NotComplementary);
    }
    product_from_decomposition(g, &p, &m)
}

/// The integrability identity E[x,y] = [Ex,y] + [x,Ey] − E[Ex,Ey] on all basis pairs.
pub fn is_integrable_product(g: &LieAlgebra, e: &Matrix) -> Result<bool, ProductError> {
    let n = g.dim();
    let id = Matrix::identity(n);
    if e.mul(e) != id {
        return Err(ProductError::NotInvolutive);
    }
    if *e == id || *e == id.neg() {
        return Err(ProductError::TrivialInvolution);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit(n, i), unit(n, j));
            let (ex, ey) = (e.apply(&x), e.apply(&y));
            let lhs = e.apply(&g.bracket(&x, &y));
            let t = e.apply(&g.bracket(&ex, &ey));
            let rhs = crate::linalg::sub(&crate::linalg::add(&g.bracket(&ex, &y), &g.bracket(&x, &ey)), &t);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The eigenspace decomposition of an integrable involution.
pub fn product_from_involution(g: &LieAlgebra, e: &Matrix) -> Result<ProductStructure, ProductError> {
    is_integrable_product(g, e)?;
    let n = g.dim();
    let plus = Subspace::span(n, &e.sub(&Matrix::identity(n)).kernel());
    let minus = Subspace::span(n, &e.add(&Matrix::identity(n)).kernel());
    product_from_decomposition(g, &plus, &minus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    /// both sides ideals
    Direct,
    /// the right-hand side is an ideal
    SemiRight,
    /// the left-hand side is an ideal
    SemiLeft,
    /// neither side is an ideal
    Double,
}

impl Decoration {
    pub fn of(plus_ideal: bool, minus_ideal: bool) -> Self {
        match (plus_ideal, minus_ideal) {
            (true, true) => Decoration::Direct,
            (false, true) => Decoration::SemiRight,
            (true, false) => Decoration::SemiLeft,
            (false, false) => Decoration::Double,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Decoration::Direct => "×",
            Decoration::SemiRight => "⋉",
            Decoration::SemiLeft => "⋊",
            Decoration::Double => "⋈",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionType {
    pub plus: Family,
    pub minus: Family,
    pub decoration: Decoration,
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.plus, self.decoration.symbol(), self.minus)
    }
}

pub fn decomposition_type(g: &LieAlgebra, p: &ProductStructure) -> Result<DecompositionType, ProductError> {
    let plus = classify::identify(&g.restrict(&p.plus)?)?.family;
    let minus = classify::identify(&g.restrict(&p.minus)?)?.family;
    Ok(DecompositionType { plus, minus, decoration: Decoration::of(p.plus_ideal, p.minus_ideal) })
}

/// Both sides abelian forces a two-step solvable algebra.
pub fn abelian_pair_two_step(g: &LieAlgebra, p: &ProductStructure) -> Result<bool, ProductError> {
    if !g.is_abelian_subspace(&p.plus) || !g.is_abelian_subspace(&p.minus) {
        return Err(ProductError::PreconditionViolated("a side is not abelian".into()));
    }
    let d = g.derived();
    Ok(g.bracket_spaces(&d, &d).dim() == 0)
}

/// Isomorphism type of a two-dimensional subalgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubType {
    Abelian,
    Aff,
}

impl SubType {
    pub fn name(self) -> &'static str {
        match self {
            SubType::Abelian => "R2",
            SubType::Aff => "aff",
        }
    }

    pub fn of(g: &LieAlgebra, s: &Subspace) -> SubType {
        if g.is_abelian_subspace(s) {
            SubType::Abelian
        } else {
            SubType::Aff
        }
    }
}

/// The three possible paracomplex decomposition types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PcType {
    R2R2,
    AffR2,
    AffAff,
}

impl PcType {
    pub const ALL: [PcType; 3] = [PcType::R2R2, PcType::AffR2, PcType::AffAff];

    pub fn sides(self) -> (SubType, SubType) {
        match self {
            PcType::R2R2 => (SubType::Abelian, SubType::Abelian),
            PcType::AffR2 => (SubType::Aff, SubType::Abelian),
            PcType::AffAff => (SubType::Aff, SubType::Aff),
        }
    }

    pub fn types(self) -> Vec<SubType> {
        let (a, b) = self.sides();
        if a == b {
            vec![a]
        } else {
            vec![a, b]
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            PcType::R2R2 => "r2r2",
            PcType::AffR2 => "affr2",
            PcType::AffAff => "affaff",
        }
    }

    pub fn from_tag(s: &str) -> Option<PcType> {
        PcType::ALL.into_iter().find(|t| t.tag() == s)
    }
}

/// A Schubert cell of Gr(k, n): reduced row-echelon pivots and the free entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassCell {
    pub n: usize,
    pub pivots: Vec<usize>,
    /// (row, column) of each free entry, row-major
    pub slots: Vec<(usize, usize)>,
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combos(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

pub fn grass_cells(k: usize, n: usize) -> Vec<GrassCell> {
    combos(n, k)
        .into_iter()
        .map(|pivots| {
            let mut slots = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..n {
                    if !pivots.contains(&c) {
                        slots.push((r, c));
                    }
                }
            }
            GrassCell { n, pivots, slots }
        })
        .collect()
}

impl GrassCell {
    pub fn k(&self) -> usize {
        self.pivots.len()
    }

    pub fn param_count(&self) -> usize {
        self.slots.len()
    }

    pub fn label(&self) -> String {
        let p: Vec<String> = self.pivots.iter().map(|x| x.to_string()).collect();
        format!("cell({})", p.join(","))
    }

    pub fn names(&self) -> Vec<String> {
        self.slots.iter().map(|&(r, c)| format!("{}{}", (b'a' + r as u8) as char, c)).collect()
    }

    /// Rows as polynomials; slot t is variable `offset + t` among `nvars`.
    pub fn symbolic_rows(&self, nvars: usize, offset: usize) -> Vec<Vec<MPoly>> {
        let mut rows: Vec<Vec<MPoly>> = (0..self.k()).map(|_| vec![MPoly::zero(nvars); self.n]).collect();
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = MPoly::one(nvars);
        }
        for (t, &(r, c)) in self.slots.iter().enumerate() {
            rows[r][c] = MPoly::var(nvars, offset + t);
        }
        rows
    }

    pub fn rows_at(&self, vals: &[Q]) -> Vec<Vector> {
        let mut rows: Vec<Vector> = (0..self.k()).map(|_| vec![Q::zero(); self.n]).collect();
        for (r, &p) in self.pivots.iter().enumerate() {
            rows[r][p] = q(1);
        }
        for (t, &(r, c)) in self.slots.iter().enumerate() {
            rows[r][c] = vals[t].clone();
        }
        rows
    }
}

/// [u, v] with polynomial coordinates.
pub fn symbolic_bracket(g: &LieAlgebra, u: &[MPoly], v: &[MPoly]) -> Vec<MPoly> {
    let n = g.dim();
    let nv = u[0].nvars();
    let mut out = vec![MPoly::zero(nv); n];
    for (&(i, j), c) in g.structure_constants() {
        let coef = u[i].mul(&v[j]).sub(&u[j].mul(&v[i]));
        if coef.is_zero() {
            continue;
        }
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                out[k] = out[k].add(&coef.scale(ck));
            }
        }
    }
    out
}

/// Closure of span(r1, r2) for a Gr(2, n) cell, optionally restricted to one isomorphism type.
/// Aff splits into two systems: c1 ≠ 0, or c1 = 0 and c2 ≠ 0.
pub fn closure_systems(g: &LieAlgebra, cell: &GrassCell, ty: Option<SubType>) -> Vec<(String, PolySystem)> {
    let names = cell.names();
    let nv = names.len();
    let rows = cell.symbolic_rows(nv, 0);
    let mut base = PolySystem::new(names);
    let w = symbolic_bracket(g, &rows[0], &rows[1]);
    let (p1, p2) = (cell.pivots[0], cell.pivots[1]);
    let (c1, c2) = (w[p1].clone(), w[p2].clone());
    for k in 0..cell.n {
        if k == p1 || k == p2 {
            continue;
        }
        base.equation(w[k].sub(&c1.mul(&rows[0][k])).sub(&c2.mul(&rows[1][k])));
    }
    let label = cell.label();
    match ty {
        None => vec![(label, base)],
        Some(SubType::Abelian) => {
            let mut s = base;
            s.equation(c1);
            s.equation(c2);
            vec![(format!("{label}/R2"), s)]
        }
        Some(SubType::Aff) => {
            let mut a = base.clone();
            a.nonzero(c1.clone());
            let mut b = base;
            b.equation(c1);
            b.nonzero(c2);
            vec![(format!("{label}/aff:c1"), a), (format!("{label}/aff:c2"), b)]
        }
    }
}

/// The six Gr(2,4) cells with their closure systems.
pub fn two_dim_subalgebra_cells(g: &LieAlgebra) -> Vec<(GrassCell, PolySystem)> {
    grass_cells(2, g.dim())
        .into_iter()
        .map(|c| {
            let s = closure_systems(g, &c, None).remove(0).1;
            (c, s)
        })
        .collect()
}

/// A solved closure system, in a frame whose columns express the cell coordinates.
#[derive(Clone, Debug)]
pub struct CellSolve {
    pub cell: GrassCell,
    pub tag: String,
    pub system: PolySystem,
    pub solution: Solution,
}

fn solve_cells(g: &LieAlgebra, frame: &Matrix, cells: &[GrassCell], types: &[Option<SubType>], branches: usize) -> Vec<CellSolve> {
    let gf = g.transform(frame).expect("frame is invertible");
    let mut jobs = Vec::new();
    for c in cells {
        for &t in types {
            for (tag, s) in closure_systems(&gf, c, t) {
                jobs.push((c.clone(), tag, s));
            }
        }
    }
    par::map(&jobs, |(c, tag, s)| CellSolve {
        cell: c.clone(),
        tag: tag.clone(),
        system: s.clone(),
        solution: polysys::solve_with_budget(s, branches),
    })
}

const SAMPLE_VALUES: [(i64, i64); 4] = [(0, 1), (1, 1), (-1, 1), (2, 1)];

/// Concrete subalgebras on each decided piece, at small values of the free parameters.
fn sample_subalgebras(frame: &Matrix, solved: &[CellSolve]) -> Vec<Subspace> {
    let vals: Vec<Q> = SAMPLE_VALUES.iter().map(|&(a, b)| Q::new(a.into(), b.into())).collect();
    let mut out = BTreeSet::new();
    for cs in solved {
        let nv = cs.system.nvars();
        for piece in cs.solution.pieces() {
            let f = piece.free.len();
            let total = vals.len().pow(f as u32);
            for mut idx in 0..total {
                let mut fv = Vec::with_capacity(f);
                for _ in 0..f {
                    fv.push(vals[idx % vals.len()].clone());
                    idx /= vals.len();
                }
                let Some(x) = piece.point(nv, &fv) else { continue };
                let rows = cs.cell.rows_at(&x);
                let rows: Vec<Vector> = rows.iter().map(|r| frame.apply(r)).collect();
                out.insert(Subspace::span(frame.rows(), &rows));
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    ExplicitDecomposition { plus: Vec<Vector>, minus: Vec<Vector> },
    /// every subalgebra of the listed types contains v
    ForcedVector { v: Vector, types: Vec<SubType>, traces: Vec<String> },
    /// every subalgebra of the listed types lies in the kernel of the functional
    ContainedIn { functional: Vector, types: Vec<SubType>, traces: Vec<String> },
    /// there is no subalgebra of this type at all
    EmptySolutionSet { ty: SubType, traces: Vec<String> },
    Undecided { residual: Vec<PolySystem>, note: String },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ExplicitDecomposition { .. } => "ExplicitDecomposition",
            Certificate::ForcedVector { .. } => "ForcedVector",
            Certificate::ContainedIn { .. } => "ContainedIn",
            Certificate::EmptySolutionSet { .. } => "EmptySolutionSet",
            Certificate::Undecided { .. } => "Undecided",
        }
    }

    pub fn decided_empty(&self) -> bool {
        matches!(
            self,
            Certificate::ForcedVector { .. } | Certificate::ContainedIn { .. } | Certificate::EmptySolutionSet { .. }
        )
    }

    pub fn summary(&self, g: &LieAlgebra) -> String {
        let tys = |t: &[SubType]| t.iter().map(|x| x.name()).collect::<Vec<_>>().join("/");
        match self {
            Certificate::ExplicitDecomposition { plus, minus } => {
                let s = |vs: &[Vector]| vs.iter().map(|v| g.show(v)).collect::<Vec<_>>().join(", ");
                format!("<{}> + <{}>", s(plus), s(minus))
            }
            Certificate::ForcedVector { v, types, .. } => format!("{} lies in every {} subalgebra", g.show(v), tys(types)),
            Certificate::ContainedIn { functional, types, .. } => {
                format!("every {} subalgebra lies in ker({})", tys(types), crate::rational::VecDisplay(functional))
            }
            Certificate::EmptySolutionSet { ty, .. } => format!("no {} subalgebra", ty.name()),
            Certificate::Undecided { residual, note } => format!("undecided ({} residual systems) {note}", residual.len()),
        }
    }
}

fn types_or_any(types: &[SubType]) -> Vec<Option<SubType>> {
    if types.is_empty() {
        vec![None]
    } else {
        types.iter().map(|&t| Some(t)).collect()
    }
}

fn conclude(solved: Vec<CellSolve>, ok: impl FnOnce(Vec<String>) -> Certificate, what: &str) -> Certificate {
    if solved.iter().all(|c| c.solution.is_empty()) {
        let traces = solved.iter().flat_map(|c| c.solution.trace().iter().map(move |t| format!("{}: {}", c.tag, t))).collect();
        return ok(traces);
    }
    let mut residual = Vec::new();
    let mut found = false;
    for c in &solved {
        match &c.solution {
            Solution::Undecided { residual: r, .. } => residual.extend(r.iter().cloned()),
            Solution::Solved { .. } => found = true,
            Solution::Empty { .. } => {}
        }
    }
    let note = if found { format!("solutions exist, {what} fails") } else { "bounded moves exhausted".into() };
    Certificate::Undecided { residual, note }
}

fn frame_avoiding(v: &[Q]) -> Matrix {
    let n = v.len();
    let s = Subspace::span(n, &[v.to_vec()]);
    let mut cols: Vec<Vector> = s.complement_units().into_iter().map(|i| unit(n, i)).collect();
    cols.push(v.to_vec());
    Matrix::from_cols(&cols, n)
}

fn frame_leaving(phi: &[Q]) -> Matrix {
    let n = phi.len();
    let u0 = (0..n).find(|&i| !phi[i].is_zero()).map(|i| unit(n, i)).expect("nonzero functional");
    let w = Matrix::from_rows(&[phi.to_vec()]).kernel();
    let mut cols = vec![u0];
    cols.extend(w);
    Matrix::from_cols(&cols, n)
}

/// Every 2-dim subalgebra of the given types (all types when empty) contains v.
pub fn forced_vector_typed(g: &LieAlgebra, v: &[Q], types: &[SubType], branches: usize) -> Certificate {
    let frame = frame_avoiding(v);
    let last = g.dim() - 1;
    let cells: Vec<GrassCell> = grass_cells(2, g.dim()).into_iter().filter(|c| !c.pivots.contains(&last)).collect();
    let solved = solve_cells(g, &frame, &cells, &types_or_any(types), branches);
    let types = types.to_vec();
    conclude(solved, |traces| Certificate::ForcedVector { v: v.to_vec(), types, traces }, "forcing")
}

pub fn forced_vector_certificate(g: &LieAlgebra, v: &[Q]) -> Certificate {
    forced_vector_typed(g, v, &[], polysys::DEFAULT_BRANCH_BUDGET)
}

/// Every 2-dim subalgebra of the given types lies in ker φ.
pub fn contained_in_typed(g: &LieAlgebra, phi: &[Q], types: &[SubType], branches: usize) -> Certificate {
    let frame = frame_leaving(phi);
    let cells: Vec<GrassCell> = grass_cells(2, g.dim()).into_iter().filter(|c| c.pivots[0] == 0).collect();
    let solved = solve_cells(g, &frame, &cells, &types_or_any(types), branches);
    let types = types.to_vec();
    conclude(solved, |traces| Certificate::ContainedIn { functional: phi.to_vec(), types, traces }, "containment")
}

#[derive(Clone, Debug)]
pub struct AffSearch {
    pub pairs: Vec<(Vector, Vector)>,
    pub solved: Vec<(usize, PolySystem, Solution)>,
}

impl AffSearch {
    pub fn decided(&self) -> bool {
        self.solved.iter().all(|s| s.2.is_decided())
    }

    pub fn empty(&self) -> bool {
        self.solved.iter().all(|s| s.2.is_empty())
    }
}

/// Pairs (u, v) with [u, v] = v, v ≠ 0: v runs over Gr(1,n) cells, u is taken modulo v.
pub fn aff_subalgebra_search(g: &LieAlgebra, branches: usize) -> AffSearch {
    let n = g.dim();
    let jobs: Vec<usize> = (0..n).collect();
    let solved = par::map(&jobs, |&p| {
        let a_idx: Vec<usize> = (0..n).filter(|&c| c != p).collect();
        let b_idx: Vec<usize> = (p + 1..n).collect();
        let mut names: Vec<String> = a_idx.iter().map(|c| format!("a{c}")).collect();
        names.extend(b_idx.iter().map(|c| format!("b{c}")));
        let nv = names.len();
        let mut u = vec![MPoly::zero(nv); n];
        for (t, &c) in a_idx.iter().enumerate() {
            u[c] = MPoly::var(nv, t);
        }
        let mut v = vec![MPoly::zero(nv); n];
        v[p] = MPoly::one(nv);
        for (t, &c) in b_idx.iter().enumerate() {
            v[c] = MPoly::var(nv, a_idx.len() + t);
        }
        let w = symbolic_bracket(g, &u, &v);
        let mut s = PolySystem::new(names);
        for k in 0..n {
            s.equation(w[k].sub(&v[k]));
        }
        let sol = polysys::solve_with_budget(&s, branches);
        (p, s, sol)
    });
    let mut pairs = Vec::new();
    for (p, s, sol) in &solved {
        let nv = s.nvars();
        for piece in sol.pieces() {
            let zeros = vec![Q::zero(); piece.free.len()];
            let ones = vec![q(1); piece.free.len()];
            if let Some(x) = piece.point(nv, &zeros).or_else(|| piece.point(nv, &ones)) {
                let a_idx: Vec<usize> = (0..n).filter(|c| c != p).collect();
                let mut u = vec![Q::zero(); n];
                for (t, &c) in a_idx.iter().enumerate() {
                    u[c] = x[t].clone();
                }
                let mut v = vec![Q::zero(); n];
                v[*p] = q(1);
                for (t, c) in (p + 1..n).enumerate() {
                    v[c] = x[a_idx.len() + t].clone();
                }
                pairs.push((u, v));
            }
        }
    }
    AffSearch { pairs, solved }
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    pub max_pairs: usize,
    pub max_results: usize,
    pub solver_branches: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_pairs: 2_000_000, max_results: 4, solver_branches: polysys::DEFAULT_BRANCH_BUDGET }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Vec<ProductStructure>,
    pub certificate: Certificate,
}

fn det4(a: &[Vector], b: &[Vector]) -> bool {
    let rows: Vec<Vector> = a.iter().chain(b).cloned().collect();
    !Matrix::from_rows(&rows).det().is_zero()
}

/// Paracomplex structures of the requested type: sampled decompositions, or a certificate
/// that none exist.
pub fn paracomplex_search(g: &LieAlgebra, filter: PcType, budget: &SearchBudget) -> Result<SearchOutcome, ProductError> {
    let n = g.dim();
    if n != 4 {
        return Err(ProductError::PreconditionViolated(format!("dimension {n}, expected 4")));
    }
    let id = Matrix::identity(n);
    let cells = grass_cells(2, n);
    let (t1, t2) = filter.sides();
    let mut by_type: Vec<(SubType, Vec<CellSolve>, Vec<Subspace>)> = Vec::new();
    for t in filter.types() {
        let solved = solve_cells(g, &id, &cells, &[Some(t)], budget.solver_branches);
        let samples = sample_subalgebras(&id, &solved);
        by_type.push((t, solved, samples));
    }
    let list = |t: SubType| &by_type.iter().find(|x| x.0 == t).unwrap().2;
    let (l1, l2) = (list(t1), list(t2));
    let same = t1 == t2;

    let mut found: Vec<ProductStructure> = Vec::new();
    let mut pairs_done = 0usize;
    let chunk = 32;
    let mut start = 0;
    while start < l1.len() && found.len() < budget.max_results {
        let end = (start + chunk).min(l1.len());
        let idx: Vec<usize> = (start..end).collect();
        let hits = par::map(&idx, |&i| {
            let from = if same { i + 1 } else { 0 };
            let mut h = Vec::new();
            for v in &l2[from.min(l2.len())..] {
                if det4(l1[i].basis(), v.basis()) {
                    h.push((i, v.clone()));
                    if h.len() >= budget.max_results {
                        break;
                    }
                }
            }
            h
        });
        for (i, v) in hits.into_iter().flatten() {
            if found.len() < budget.max_results {
                found.push(product_from_decomposition(g, &l1[i], &v)?);
            }
        }
        pairs_done += (end - start) * l2.len();
        if pairs_done > budget.max_pairs && found.is_empty() {
            return Err(ProductError::BudgetExceeded { partial: found });
        }
        start = end;
    }
    if let Some(p) = found.first() {
        let certificate = Certificate::ExplicitDecomposition { plus: p.plus.basis().to_vec(), minus: p.minus.basis().to_vec() };
        return Ok(SearchOutcome { found, certificate });
    }
    let certificate = nonexistence_certificate(g, &filter.types(), &by_type, budget.solver_branches);
    Ok(SearchOutcome { found, certificate })
}

fn nonexistence_certificate(
    g: &LieAlgebra,
    types: &[SubType],
    by_type: &[(SubType, Vec<CellSolve>, Vec<Subspace>)],
    branches: usize,
) -> Certificate {
    let n = g.dim();
    for (t, solved, _) in by_type {
        if solved.iter().all(|c| c.solution.is_empty()) {
            let traces = solved.iter().flat_map(|c| c.solution.trace().iter().map(move |x| format!("{}: {}", c.tag, x))).collect();
            return Certificate::EmptySolutionSet { ty: *t, traces };
        }
        if *t == SubType::Aff {
            let a = aff_subalgebra_search(g, branches);
            if a.empty() {
                let traces = a.solved.iter().flat_map(|(p, _, s)| s.trace().iter().map(move |x| format!("v-pivot {p}: {x}"))).collect();
                return Certificate::EmptySolutionSet { ty: *t, traces };
            }
        }
    }
    let samples: Vec<&Subspace> = by_type.iter().flat_map(|x| x.2.iter()).collect();

    // forced vectors: the common intersection of the samples, then units, g′, the center
    let mut cands: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, c: &mut Vec<Subspace>| {
        if s.dim() == 1 && !c.contains(&s) {
            c.push(s);
        }
    };
    if let Some(first) = samples.first() {
        let inter = samples.iter().fold((*first).clone(), |acc, s| acc.intersect(s));
        push(inter, &mut cands);
    }
    push(g.derived(), &mut cands);
    push(g.center(), &mut cands);
    for i in 0..n {
        push(Subspace::span(n, &[unit(n, i)]), &mut cands);
    }
    let mut residual = Vec::new();
    for c in &cands {
        let v = &c.basis()[0];
        if samples.iter().any(|s| !s.contains(v)) {
            continue;
        }
        match forced_vector_typed(g, v, types, branches) {
            cert @ Certificate::ForcedVector { .. } => return cert,
            Certificate::Undecided { residual: r, .. } => residual.extend(r),
            _ => {}
        }
    }

    // hyperplanes containing every sample
    let mut planes: Vec<Subspace> = Vec::new();
    let push3 = |s: Subspace, c: &mut Vec<Subspace>| {
        if s.dim() == 3 && !c.contains(&s) {
            c.push(s);
        }
    };
    if let Some(first) = samples.first() {
        let sum = samples.iter().fold((*first).clone(), |acc, s| acc.sum(s));
        push3(sum, &mut planes);
    }
    push3(g.derived(), &mut planes);
    push3(g.unimodular_kernel(), &mut planes);
    for i in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        push3(Subspace::coordinate(n, &idx), &mut planes);
    }
    for w in &planes {
        if samples.iter().any(|s| !w.contains_space(s)) {
            continue;
        }
        let phi = Matrix::from_rows(w.basis()).kernel().remove(0);
        match contained_in_typed(g, &phi, types, branches) {
            cert @ Certificate::ContainedIn { .. } => return cert,
            Certificate::Undecided { residual: r, .. } => residual.extend(r),
            _ => {}
        }
    }
    Certificate::Undecided { residual, note: "no certificate found".into() }
}

#[cfg(test)]
mod tests;
