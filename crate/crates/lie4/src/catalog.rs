//! Named families of solvable Lie algebras of dimension ≤ 4, their parameter regions,
//! commutator classes, sample grids and matrix realizations.

use crate::algebra::{AlgebraError, CommutatorClass, LieAlgebra};
use crate::linalg::Matrix;
use crate::rational::{q, qf, to_text, zero, Q};
use num::{Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    R,
    R2,
    AffR,
    R3,
    H3,
    R3Gen,
    R3Lambda,
    R3pLambda,
    R4,
    AffRxAffR,
    RxH3,
    RxR3Gen,
    RxR3Lambda,
    RxR3pLambda,
    N4,
    AffC,
    R4Gen,
    R4Lambda,
    R4MuLambda,
    R4pMuLambda,
    D4,
    D4Lambda,
    D4pLambda,
    H4,
}

use FamilyId::*;

pub const ALL: [FamilyId; 24] = [
    R, R2, AffR, R3, H3, R3Gen, R3Lambda, R3pLambda, R4, AffRxAffR, RxH3, RxR3Gen, RxR3Lambda,
    RxR3pLambda, N4, AffC, R4Gen, R4Lambda, R4MuLambda, R4pMuLambda, D4, D4Lambda, D4pLambda, H4,
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{family} expects {expected} parameter(s), got {got}")]
    Arity { family: &'static str, expected: usize, got: usize },
    #[error("{family}: parameters violate {predicate}")]
    ConstraintViolation { family: &'static str, predicate: &'static str },
    #[error("no matrix realization is listed for {0}")]
    NoRealizationListed(&'static str),
    #[error("unknown family tag {0:?}")]
    UnknownTag(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl FamilyId {
    pub fn tag(self) -> &'static str {
        match self {
            R => "R",
            R2 => "R2",
            AffR => "AffR",
            R3 => "R3",
            H3 => "H3",
            R3Gen => "R3_gen",
            R3Lambda => "R3_lambda",
            R3pLambda => "R3p_lambda",
            R4 => "R4",
            AffRxAffR => "AffRxAffR",
            RxH3 => "RxH3",
            RxR3Gen => "RxR3_gen",
            RxR3Lambda => "RxR3_lambda",
            RxR3pLambda => "RxR3p_lambda",
            N4 => "N4",
            AffC => "AffC",
            R4Gen => "R4_gen",
            R4Lambda => "R4_lambda",
            R4MuLambda => "R4_mu_lambda",
            R4pMuLambda => "R4p_mu_lambda",
            D4 => "D4",
            D4Lambda => "D4_lambda",
            D4pLambda => "D4p_lambda",
            H4 => "H4",
        }
    }

    /// Conventional mathematical name.
    pub fn name(self) -> &'static str {
        match self {
            R => "R",
            R2 => "R^2",
            AffR => "aff(R)",
            R3 => "R^3",
            H3 => "h3",
            R3Gen => "r3",
            R3Lambda => "r3,lambda",
            R3pLambda => "r'3,lambda",
            R4 => "R^4",
            AffRxAffR => "aff(R)xaff(R)",
            RxH3 => "Rxh3",
            RxR3Gen => "Rxr3",
            RxR3Lambda => "Rxr3,lambda",
            RxR3pLambda => "Rxr'3,lambda",
            N4 => "n4",
            AffC => "aff(C)",
            R4Gen => "r4",
            R4Lambda => "r4,lambda",
            R4MuLambda => "r4,mu,lambda",
            R4pMuLambda => "r'4,mu,lambda",
            D4 => "d4",
            D4Lambda => "d4,lambda",
            D4pLambda => "d'4,lambda",
            H4 => "h4",
        }
    }

    pub fn from_tag(s: &str) -> Result<FamilyId, CatalogError> {
        ALL.iter().copied().find(|f| f.tag() == s).ok_or_else(|| CatalogError::UnknownTag(s.into()))
    }

    pub fn arity(self) -> usize {
        match self {
            R3Lambda | R3pLambda | RxR3Lambda | RxR3pLambda | R4Lambda | D4Lambda | D4pLambda => 1,
            R4MuLambda | R4pMuLambda => 2,
            _ => 0,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self.arity() {
            0 => &[],
            1 => &["lambda"],
            _ => &["mu", "lambda"],
        }
    }

    pub fn dim(self) -> usize {
        match self {
            R => 1,
            R2 | AffR => 2,
            R3 | H3 | R3Gen | R3Lambda | R3pLambda => 3,
            _ => 4,
        }
    }

    /// Human-readable admissible region.
    pub fn constraint_text(self) -> &'static str {
        match self {
            R3Lambda | RxR3Lambda => "|lambda| <= 1",
            R3pLambda | RxR3pLambda | D4pLambda => "lambda >= 0",
            R4MuLambda => "mu*lambda != 0 and (-1 < mu <= lambda <= 1 or -1 = mu <= lambda < 0)",
            R4pMuLambda => "mu > 0",
            D4Lambda => "lambda >= 1/2",
            R4Lambda => "lambda arbitrary",
            _ => "none",
        }
    }

    pub fn is_indecomposable_with_realization(self) -> bool {
        matches!(self, N4 | AffC | R4Gen | R4Lambda | R4MuLambda | R4pMuLambda | D4 | D4Lambda | D4pLambda | H4)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A family together with concrete parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    pub id: FamilyId,
    pub params: Vec<Q>,
}

impl Family {
    pub fn new(id: FamilyId, params: Vec<Q>) -> Self {
        Family { id, params }
    }

    pub fn plain(id: FamilyId) -> Self {
        Family { id, params: vec![] }
    }

    pub fn make(&self) -> Result<LieAlgebra, CatalogError> {
        make(self.id, &self.params)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}", self.id.name())
        } else {
            let ps: Vec<String> = self.params.iter().map(to_text).collect();
            write!(f, "{}({})", self.id.name(), ps.join(", "))
        }
    }
}

pub fn check_constraint(id: FamilyId, p: &[Q]) -> Result<(), CatalogError> {
    if p.len() != id.arity() {
        return Err(CatalogError::Arity { family: id.tag(), expected: id.arity(), got: p.len() });
    }
    let ok = match id {
        R3Lambda | RxR3Lambda => p[0].abs() <= q(1),
        R3pLambda | RxR3pLambda | D4pLambda => !p[0].is_negative(),
        R4MuLambda => {
            let (mu, la) = (&p[0], &p[1]);
            !mu.is_zero()
                && !la.is_zero()
                && ((q(-1) < *mu && mu <= la && *la <= q(1)) || (*mu == q(-1) && mu <= la && la.is_negative()))
        }
        R4pMuLambda => p[0].is_positive(),
        D4Lambda => p[0] >= qf(1, 2),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CatalogError::ConstraintViolation { family: id.tag(), predicate: id.constraint_text() })
    }
}

type Sparse = Vec<(usize, usize, Vec<(usize, Q)>)>;

fn shift(entries: Sparse, by: usize) -> Sparse {
    entries
        .into_iter()
        .map(|(i, j, cs)| (i + by, j + by, cs.into_iter().map(|(k, c)| (k + by, c)).collect()))
        .collect()
}

/// Brackets of the three-dimensional members, basis e1,e2,e3 at indices 0,1,2.
fn three_dim(id: FamilyId, p: &[Q]) -> Sparse {
    match id {
        R3 => vec![],
        H3 => vec![(0, 1, vec![(2, q(1))])],
        R3Gen => vec![(0, 1, vec![(1, q(1))]), (0, 2, vec![(1, q(1)), (2, q(1))])],
        R3Lambda => vec![(0, 1, vec![(1, q(1))]), (0, 2, vec![(2, p[0].clone())])],
        R3pLambda => vec![
            (0, 1, vec![(1, p[0].clone()), (2, q(-1))]),
            (0, 2, vec![(1, q(1)), (2, p[0].clone())]),
        ],
        _ => unreachable!(),
    }
}

fn entries(id: FamilyId, p: &[Q]) -> Sparse {
    let one = || q(1);
    match id {
        R | R2 | R4 => vec![],
        AffR => vec![(0, 1, vec![(1, one())])],
        R3 | H3 | R3Gen | R3Lambda | R3pLambda => three_dim(id, p),
        RxH3 => shift(three_dim(H3, p), 1),
        RxR3Gen => shift(three_dim(R3Gen, p), 1),
        RxR3Lambda => shift(three_dim(R3Lambda, p), 1),
        RxR3pLambda => shift(three_dim(R3pLambda, p), 1),
        AffRxAffR => vec![(0, 3, vec![(3, one())]), (1, 2, vec![(2, one())])],
        N4 => vec![(0, 1, vec![(2, one())]), (0, 2, vec![(3, one())])],
        AffC => vec![
            (0, 2, vec![(2, one())]),
            (0, 3, vec![(3, one())]),
            (1, 2, vec![(3, one())]),
            (1, 3, vec![(2, q(-1))]),
        ],
        R4Gen => vec![
            (0, 1, vec![(1, one())]),
            (0, 2, vec![(1, one()), (2, one())]),
            (0, 3, vec![(2, one()), (3, one())]),
        ],
        R4Lambda => vec![
            (0, 1, vec![(1, one())]),
            (0, 2, vec![(2, p[0].clone())]),
            (0, 3, vec![(2, one()), (3, p[0].clone())]),
        ],
        R4MuLambda => vec![
            (0, 1, vec![(1, one())]),
            (0, 2, vec![(2, p[0].clone())]),
            (0, 3, vec![(3, p[1].clone())]),
        ],
        R4pMuLambda => vec![
            (0, 1, vec![(1, p[0].clone())]),
            (0, 2, vec![(2, p[1].clone()), (3, q(-1))]),
            (0, 3, vec![(2, one()), (3, p[1].clone())]),
        ],
        D4 => vec![(0, 1, vec![(1, one())]), (0, 2, vec![(2, q(-1))]), (1, 2, vec![(3, one())])],
        D4Lambda => vec![
            (0, 1, vec![(1, p[0].clone())]),
            (0, 2, vec![(2, q(1) - &p[0])]),
            (0, 3, vec![(3, one())]),
            (1, 2, vec![(3, one())]),
        ],
        D4pLambda => vec![
            (0, 1, vec![(1, p[0].clone()), (2, q(-1))]),
            (0, 2, vec![(1, one()), (2, p[0].clone())]),
            (0, 3, vec![(3, q(2) * &p[0])]),
            (1, 2, vec![(3, one())]),
        ],
        H4 => vec![
            (0, 1, vec![(1, one())]),
            (0, 2, vec![(1, one()), (2, one())]),
            (0, 3, vec![(3, q(2))]),
            (1, 2, vec![(3, one())]),
        ],
    }
}

/// The bracket table of a family at admissible parameters.
pub fn make(id: FamilyId, params: &[Q]) -> Result<LieAlgebra, CatalogError> {
    check_constraint(id, params)?;
    make_unchecked(id, params)
}

/// Same bracket formulas, outside the admissible region as well (arity still checked).
pub fn make_unchecked(id: FamilyId, params: &[Q]) -> Result<LieAlgebra, CatalogError> {
    if params.len() != id.arity() {
        return Err(CatalogError::Arity { family: id.tag(), expected: id.arity(), got: params.len() });
    }
    Ok(LieAlgebra::from_sparse(id.dim(), &entries(id, params))?)
}

/// Row of the commutator table for a four-dimensional family.
pub fn commutator_class(id: FamilyId, params: &[Q]) -> Option<CommutatorClass> {
    use CommutatorClass::*;
    let p0_zero = params.first().is_some_and(|x| x.is_zero());
    let p0_one = params.first().is_some_and(|x| *x == q(1));
    Some(match id {
        R4 => Zero,
        RxH3 => R,
        RxR3Lambda if p0_zero => R,
        AffRxAffR | AffC => R2CenterZero,
        D4Lambda if p0_one => R2CenterZero,
        RxR3Gen | RxR3Lambda | RxR3pLambda | N4 => R2CenterNonzero,
        R4Lambda if p0_zero => R2CenterNonzero,
        R4Gen | R4Lambda | R4MuLambda | R4pMuLambda => R3,
        D4 | D4Lambda | D4pLambda | H4 => H3,
        _ => return None,
    })
}

/// Sample parameters: interior and boundary points of each admissible region.
pub fn grid(id: FamilyId) -> Vec<Vec<Q>> {
    let one = |xs: &[Q]| xs.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>();
    let two = |xs: &[(Q, Q)]| xs.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect::<Vec<_>>();
    match id {
        R3Lambda | RxR3Lambda => one(&[q(-1), qf(-1, 2), q(0), qf(1, 3), q(1)]),
        R3pLambda | RxR3pLambda | D4pLambda => one(&[q(0), qf(1, 2), q(1), q(2), q(5)]),
        R4Lambda => one(&[q(-2), q(-1), q(0), qf(1, 2), q(1), q(3)]),
        D4Lambda => one(&[qf(1, 2), qf(3, 4), q(1), q(2), q(5)]),
        R4MuLambda => two(&[
            (qf(-1, 2), qf(1, 2)),
            (qf(1, 3), qf(1, 2)),
            (qf(1, 2), q(1)),
            (q(1), q(1)),
            (q(-1), qf(-1, 2)),
            (q(-1), q(-1)),
            (qf(-1, 3), q(1)),
            (qf(1, 2), qf(1, 2)),
        ]),
        R4pMuLambda => two(&[
            (q(1), q(0)),
            (q(2), q(1)),
            (qf(1, 2), q(-1)),
            (q(3), qf(1, 2)),
            (q(1), q(1)),
            (q(2), q(-3)),
        ]),
        _ => vec![vec![]],
    }
}

/// Every grid instance of every family, in catalog order.
pub fn grid_instances() -> Vec<Family> {
    ALL.iter().flat_map(|&id| grid(id).into_iter().map(move |p| Family::new(id, p))).collect()
}

pub fn grid_instances_dim(n: usize) -> Vec<Family> {
    grid_instances().into_iter().filter(|f| f.id.dim() == n).collect()
}

/// Closed-form representatives for the two standard out-of-range presentations.
/// Returns the target and P (columns: new basis in old coordinates); None if no closed form applies.
pub fn closed_form_canonical(id: FamilyId, p: &[Q]) -> Option<(Family, Matrix)> {
    match id {
        D4Lambda if p.len() == 1 && p[0] < qf(1, 2) => {
            // e0' = e0, e1' = e2, e2' = e1, e3' = -e3
            let m = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]]);
            Some((Family::new(D4Lambda, vec![q(1) - &p[0]]), m))
        }
        R4MuLambda if p.len() == 2 && p[0] > p[1] => {
            let swapped = vec![p[1].clone(), p[0].clone()];
            check_constraint(R4MuLambda, &swapped).ok()?;
            let m = Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
            Some((Family::new(R4MuLambda, swapped), m))
        }
        _ => None,
    }
}

/// One printed realization: the matrix-valued function of (x, y, z, w).
pub struct Realization {
    pub size: usize,
    build: Box<dyn Fn(&[Q; 4]) -> Matrix + Send + Sync>,
}

impl Realization {
    pub fn at(&self, c: &[Q; 4]) -> Matrix {
        (self.build)(c)
    }

    /// Generators in the order x, y, z, w.
    pub fn generators(&self) -> Vec<Matrix> {
        (0..4)
            .map(|k| {
                let mut c = [zero(), zero(), zero(), zero()];
                c[k] = q(1);
                self.at(&c)
            })
            .collect()
    }
}

fn mat(size: usize, cells: Vec<(usize, usize, Q)>) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for (r, c, v) in cells {
        let cur = m.get(r, c) + v;
        m.set(r, c, cur);
    }
    m
}

/// The printed matrix realizations of an indecomposable family (one or two blocks).
pub fn matrix_realization(id: FamilyId, params: &[Q]) -> Result<Vec<Realization>, CatalogError> {
    check_constraint(id, params)?;
    let p: Vec<Q> = params.to_vec();
    let half = qf(1, 2);
    let r = |size: usize, f: Box<dyn Fn(&[Q; 4]) -> Matrix + Send + Sync>| Realization { size, build: f };
    let out = match id {
        N4 => vec![r(4, Box::new(|c: &[Q; 4]| {
            let [x, y, z, w] = c.clone();
            mat(4, vec![(0, 1, x.clone()), (0, 3, w), (1, 2, x), (1, 3, y), (2, 3, z)])
        }))],
        AffC => vec![r(3, Box::new(|c: &[Q; 4]| {
            let [x, y, z, w] = c.clone();
            mat(3, vec![(0, 0, x.clone()), (0, 1, z.clone()), (0, 2, y), (1, 0, -z), (1, 1, x), (1, 2, w)])
        }))],
        R4Gen => vec![r(4, Box::new(|c: &[Q; 4]| {
            let [x, y, z, w] = c.clone();
            mat(4, vec![
                (0, 0, x.clone()), (0, 1, x.clone()), (0, 3, y),
                (1, 1, x.clone()), (1, 2, x.clone()), (1, 3, z),
                (2, 2, x), (2, 3, w),
            ])
        }))],
        R4Lambda => {
            let l = p[0].clone();
            vec![r(4, Box::new(move |c: &[Q; 4]| {
                let [x, y, z, w] = c.clone();
                mat(4, vec![
                    (0, 0, x.clone()), (0, 3, y),
                    (1, 1, &l * &x), (1, 2, x.clone()), (1, 3, z),
                    (2, 2, &l * &x), (2, 3, w),
                ])
            }))]
        }
        R4MuLambda => {
            let (mu, l) = (p[0].clone(), p[1].clone());
            vec![r(4, Box::new(move |c: &[Q; 4]| {
                let [x, y, z, w] = c.clone();
                mat(4, vec![(0, 0, x.clone()), (0, 3, y), (1, 1, &mu * &x), (1, 3, z), (2, 2, &l * &x), (2, 3, w)])
            }))]
        }
        R4pMuLambda => {
            let (mu, l) = (p[0].clone(), p[1].clone());
            vec![r(4, Box::new(move |c: &[Q; 4]| {
                let [x, y, z, w] = c.clone();
                mat(4, vec![
                    (0, 0, &mu * &x), (0, 3, y),
                    (1, 1, &l * &x), (1, 2, x.clone()), (1, 3, z),
                    (2, 1, -x.clone()), (2, 2, &l * &x), (2, 3, w),
                ])
            }))]
        }
        D4 => {
            let h = half.clone();
            vec![
                r(3, Box::new(|c: &[Q; 4]| {
                    let [x, y, z, w] = c.clone();
                    mat(3, vec![(0, 1, x), (0, 2, z), (1, 1, w), (1, 2, y)])
                })),
                r(4, Box::new(move |c: &[Q; 4]| {
                    let [x, y, z, w] = c.clone();
                    mat(4, vec![
                        (0, 0, w.clone()), (0, 3, x.clone()),
                        (1, 1, -w), (1, 3, y.clone()),
                        (2, 0, -(&h * &y)), (2, 1, &h * &x), (2, 3, z),
                    ])
                })),
            ]
        }
        D4Lambda => {
            let (l1, l2, h) = (p[0].clone(), p[0].clone(), half.clone());
            vec![
                r(3, Box::new(move |c: &[Q; 4]| {
                    let [x, y, z, w] = c.clone();
                    mat(3, vec![(0, 0, w.clone()), (0, 1, x), (0, 2, z), (1, 1, (q(1) - &l1) * &w), (1, 2, y)])
                })),
                r(4, Box::new(move |c: &[Q; 4]| {
                    let [x, y, z, w] = c.clone();
                    mat(4, vec![
                        (0, 0, &l2 * &w), (0, 3, x.clone()),
                        (1, 1, (q(1) - &l2) * &w), (1, 3, y.clone()),
                        (2, 0, -(&h * &y)), (2, 1, &h * &x), (2, 2, w), (2, 3, z),
                    ])
                })),
            ]
        }
        D4pLambda => {
            let (l, h) = (p[0].clone(), half.clone());
            vec![r(4, Box::new(move |c: &[Q; 4]| {
                let [x, y, z, w] = c.clone();
                mat(4, vec![
                    (0, 0, &l * &w), (0, 1, w.clone()), (0, 3, x.clone()),
                    (1, 0, -w.clone()), (1, 1, &l * &w), (1, 3, y.clone()),
                    (2, 0, -(&h * &y)), (2, 1, &h * &x), (2, 2, q(2) * &l * &w), (2, 3, z),
                ])
            }))]
        }
        H4 => {
            let h = half.clone();
            vec![r(4, Box::new(move |c: &[Q; 4]| {
                let [x, y, z, w] = c.clone();
                mat(4, vec![
                    (0, 0, &h * &w), (0, 1, w.clone()), (0, 3, x.clone()),
                    (1, 1, &h * &w), (1, 3, y.clone()),
                    (2, 0, -(&h * &y)), (2, 1, &h * &x), (2, 2, w), (2, 3, z),
                ])
            }))]
        }
        _ => return Err(CatalogError::NoRealizationListed(id.tag())),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit;

    #[test]
    fn every_grid_instance_validates() {
        let all = grid_instances();
        assert!(all.len() >= 60, "{} instances", all.len());
        for f in &all {
            let g = f.make().unwrap_or_else(|e| panic!("{f}: {e}"));
            assert!(g.validate().is_empty(), "{f}");
            assert_eq!(g.dim(), f.id.dim());
        }
    }

    #[test]
    fn d4_lambda_half() {
        let g = make(D4Lambda, &[qf(1, 2)]).unwrap();
        assert_eq!(g.bracket_basis(0, 1), &crate::linalg::scale(&qf(1, 2), &unit(4, 1)));
        assert_eq!(g.bracket_basis(0, 2), &crate::linalg::scale(&qf(1, 2), &unit(4, 2)));
        assert_eq!(g.bracket_basis(0, 3), &unit(4, 3));
        assert_eq!(g.bracket_basis(1, 2), &unit(4, 3));
    }

    #[test]
    fn constraint_violation() {
        assert!(matches!(make(R4MuLambda, &[q(2), qf(1, 2)]), Err(CatalogError::ConstraintViolation { .. })));
        assert!(make(R4MuLambda, &[q(-1), qf(1, 2)]).is_err());
        assert!(make(R4MuLambda, &[q(-1), qf(-1, 2)]).is_ok());
        assert!(make(D4Lambda, &[qf(1, 4)]).is_err());
        assert!(make(R4, &[]).unwrap().is_abelian());
    }

    #[test]
    fn commutator_classes_match_computation() {
        for f in grid_instances_dim(4) {
            let g = f.make().unwrap();
            assert_eq!(Some(g.commutator_class()), commutator_class(f.id, &f.params), "{f}");
        }
    }

    #[test]
    fn realizations_close() {
        for f in grid_instances_dim(4) {
            let Ok(blocks) = matrix_realization(f.id, &f.params) else {
                assert!(!f.id.is_indecomposable_with_realization());
                continue;
            };
            for b in blocks {
                let g = LieAlgebra::from_matrices(&b.generators()).unwrap_or_else(|e| panic!("{f}: {e}"));
                assert_eq!(g.dim(), 4);
            }
        }
    }
}
