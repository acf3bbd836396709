//! Invariant symmetric bilinear forms, isotropy, and Manin triples.

use crate::algebra::LieAlgebra;
use crate::catalog::{self, FamilyId};
use crate::linalg::{dot, Matrix, Subspace, Vector};
use crate::polysys::MPoly;
use crate::product::{paracomplex_search, PcType};
use crate::rational::{q, qf, to_text, Q};
use crate::report::{Check, Report};
use num::{Signed, Zero};
use serde::Serialize;

/// (x, y) = xᵀ B y with B symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    b: Matrix,
}

impl SymmetricForm {
    pub fn new(b: Matrix) -> Option<Self> {
        (b.is_square() && b == b.transpose()).then_some(SymmetricForm { b })
    }

    /// Symmetric form from its upper-triangle entries (i ≤ j).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, Q)]) -> Self {
        let mut b = Matrix::zeros(n, n);
        for (i, j, c) in pairs {
            b.set(*i, *j, c.clone());
            b.set(*j, *i, c.clone());
        }
        SymmetricForm { b }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.b.rows()
    }

    pub fn eval(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &self.b.apply(y))
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.b.det().is_zero()
    }

    /// (positive, negative, zero) counts from a congruence diagonalization.
    pub fn signature(&self) -> (usize, usize, usize) {
        let d = congruence_diagonal(&self.b);
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        (pos, neg, d.len() - pos - neg)
    }
}

fn congruence_diagonal(b: &Matrix) -> Vec<Q> {
    let n = b.rows();
    let mut a = b.clone();
    let mut out = Vec::with_capacity(n);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // a nonzero diagonal pivot, else make one from an off-diagonal entry
        let pivot = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                match pair {
                    None => {
                        out.extend(active.iter().map(|_| Q::zero()));
                        break;
                    }
                    Some((i, j)) => {
                        // e_i ← e_i + e_j
                        for k in 0..n {
                            let v = a.get(i, k) + a.get(j, k);
                            a.set(i, k, v);
                        }
                        for k in 0..n {
                            let v = a.get(k, i) + a.get(k, j);
                            a.set(k, i, v);
                        }
                        i
                    }
                }
            }
        };
        let d = a.get(p, p).clone();
        for &i in &active {
            if i == p {
                continue;
            }
            let f = a.get(i, p) / &d;
            for k in 0..n {
                let v = a.get(i, k) - &f * a.get(p, k);
                a.set(i, k, v);
            }
            for k in 0..n {
                let v = a.get(k, i) - &f * a.get(k, p);
                a.set(k, i, v);
            }
        }
        out.push(d);
        active.retain(|&i| i != p);
    }
    out
}

/// ([x,y],z) + (y,[x,z]) = 0 on all basis triples.
pub fn is_invariant(g: &LieAlgebra, b: &SymmetricForm) -> bool {
    let n = g.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let eij = g.bracket_basis(i, j);
                let eik = g.bracket_basis(i, k);
                (dot(eij, &b.b.col(k)) + dot(&b.b.col(j), eik)).is_zero()
            })
        })
    })
}

fn pair_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Basis of the invariant symmetric forms, with a nondegenerate member if one exists.
#[derive(Clone, Debug)]
pub struct FormSpace {
    pub basis: Vec<SymmetricForm>,
    /// determinant of Σ t_k B_k as a polynomial in the t_k
    pub det: MPoly,
    pub nondegenerate: Option<SymmetricForm>,
}

pub fn invariant_form_space(g: &LieAlgebra) -> FormSpace {
    let n = g.dim();
    let pairs = pair_index(n);
    let col = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // Σ_m c_ij^m b_mk + Σ_m c_ik^m b_jm
                let mut r = vec![Q::zero(); pairs.len()];
                for (m, c) in g.bracket_basis(i, j).iter().enumerate() {
                    r[col(m, k)] += c;
                }
                for (m, c) in g.bracket_basis(i, k).iter().enumerate() {
                    r[col(j, m)] += c;
                }
                if r.iter().any(|x| !x.is_zero()) {
                    rows.push(r);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..pairs.len()).map(|c| crate::linalg::unit(pairs.len(), c)).collect()
    } else {
        Matrix::from_rows(&rows).kernel()
    };
    let basis: Vec<SymmetricForm> = kernel
        .iter()
        .map(|v| {
            let entries: Vec<(usize, usize, Q)> = pairs.iter().zip(v).map(|(&(i, j), c)| (i, j, c.clone())).collect();
            SymmetricForm::from_pairs(n, &entries)
        })
        .collect();
    let k = basis.len();
    let generic: Vec<Vec<MPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    basis.iter().enumerate().fold(MPoly::zero(k), |acc, (t, f)| {
                        acc.add(&MPoly::var(k, t).scale(f.b.get(i, j)))
                    })
                })
                .collect()
        })
        .collect();
    let det = mpoly_det(&generic, k);
    let nondegenerate = if det.is_zero() {
        None
    } else {
        // a nonzero polynomial of degree ≤ n has a non-root among n+1 values per variable
        let vals: Vec<Q> = (0..=n as i64).map(q).collect();
        let mut point = vec![Q::zero(); k];
        find_nonroot(&det, &vals, &mut point, 0).map(|t| {
            let mut m = Matrix::zeros(n, n);
            for (tk, f) in t.iter().zip(&basis) {
                m = m.add(&f.b.scale(tk));
            }
            SymmetricForm { b: m }
        })
    };
    FormSpace { basis, det, nondegenerate }
}

fn find_nonroot(p: &MPoly, vals: &[Q], point: &mut Vec<Q>, i: usize) -> Option<Vec<Q>> {
    if i == point.len() {
        return (!p.eval(point).is_zero()).then(|| point.clone());
    }
    for v in vals {
        point[i] = v.clone();
        if let Some(x) = find_nonroot(p, vals, point, i + 1) {
            return Some(x);
        }
    }
    None
}

fn mpoly_det(m: &[Vec<MPoly>], k: usize) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(k);
    }
    let mut acc = MPoly::zero(k);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let t = m[0][c].mul(&mpoly_det(&minor, k));
        acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

pub fn is_isotropic(b: &SymmetricForm, s: &Subspace) -> bool {
    let vs = s.basis();
    vs.iter().all(|x| vs.iter().all(|y| b.eval(x, y).is_zero()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ManinTriple {
    #[serde(skip)]
    pub form: Matrix,
    #[serde(skip)]
    pub plus: Subspace,
    #[serde(skip)]
    pub minus: Subspace,
    pub verified: bool,
    pub failures: Vec<String>,
}

pub fn verify_manin(g: &LieAlgebra, b: &SymmetricForm, plus: &[Vector], minus: &[Vector]) -> ManinTriple {
    let n = g.dim();
    let p = Subspace::span(n, plus);
    let m = Subspace::span(n, minus);
    let mut failures = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    need(b.dim() == n, "form size");
    need(is_invariant(g, b), "invariance");
    need(b.is_nondegenerate(), "nondegeneracy");
    need(g.is_subalgebra(&p), "plus side closure");
    need(g.is_subalgebra(&m), "minus side closure");
    need(is_isotropic(b, &p), "plus side isotropy");
    need(is_isotropic(b, &m), "minus side isotropy");
    need(crate::linalg::complement_check(&p, &m), "complementarity");
    need(p.dim() == m.dim(), "equal dimensions");
    ManinTriple { form: b.b.clone(), plus: p, minus: m, verified: failures.is_empty(), failures }
}

/// (e0,e3) = (e1,e2) = α on d4.
pub fn d4_form(alpha: &Q) -> SymmetricForm {
    SymmetricForm::from_pairs(4, &[(0, 3, alpha.clone()), (1, 2, alpha.clone())])
}

fn e0_mu(mu: &Q) -> Vec<Vector> {
    vec![
        vec![q(1), q(0), mu.clone(), q(0)],
        vec![q(0), q(1), q(0), -mu.clone()],
    ]
}

/// ⟨e0+μe2, e1−μe3⟩ against ⟨e0+νe2, e1−νe3⟩.
pub fn d4_family_i(mu: &Q, nu: &Q) -> (Vec<Vector>, Vec<Vector>) {
    (e0_mu(mu), e0_mu(nu))
}

/// ⟨e0+μe2, e1−μe3⟩ against ⟨e2, e3⟩.
pub fn d4_family_ii(mu: &Q) -> (Vec<Vector>, Vec<Vector>) {
    (e0_mu(mu), vec![crate::linalg::unit(4, 2), crate::linalg::unit(4, 3)])
}

/// φ(e0) = −e0, φ(e1) = e2, φ(e2) = e1, φ(e3) = −e3 (columns are images).
pub fn d4_isometry() -> Matrix {
    Matrix::from_i64(&[&[-1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]])
}

/// φ is an automorphism of d4 preserving the α-form.
pub fn is_isometric_automorphism(g: &LieAlgebra, b: &SymmetricForm, phi: &Matrix) -> bool {
    let n = g.dim();
    let auto = (0..n).all(|i| {
        (0..n).all(|j| g.bracket(&phi.col(i), &phi.col(j)) == phi.apply(g.bracket_basis(i, j)))
    });
    auto && phi.transpose().mul(&b.b).mul(phi) == b.b
}

pub fn d4() -> LieAlgebra {
    catalog::make(FamilyId::D4, &[]).expect("d4")
}

/// Replay of the Manin-triple statements on d4 and d'4,0.
pub fn verify_table_manin(budget: &crate::product::SearchBudget) -> Report {
    let mut rep = Report::new("manin");
    let g = d4();
    let space = invariant_form_space(&g);
    let alpha = d4_form(&q(1));
    let flat: Vec<Vector> = space.basis.iter().map(|f| f.b.entries().to_vec()).collect();
    let in_space = Matrix::from_cols(&flat, 16).solve(alpha.b.entries()).is_some();
    rep.push(Check::new("manin/d4/alpha-form-in-space", in_space && space.basis.iter().all(|f| is_invariant(&g, f)), format!("{} basis forms", space.basis.len())));
    let vals = [q(-2), q(-1), q(0), q(1), q(2), qf(1, 3)];
    for alpha in [q(1), qf(-2, 3)] {
        let b = d4_form(&alpha);
        for (mu, nu) in vals.iter().zip(vals.iter().cycle().skip(1)) {
            let (p, m) = d4_family_i(mu, nu);
            let t = verify_manin(&g, &b, &p, &m);
            rep.push(Check::new(
                format!("manin/d4/i/alpha={}/mu={},nu={}", to_text(&alpha), to_text(mu), to_text(nu)),
                t.verified,
                t.failures.join(", "),
            ));
            let (p, m) = d4_family_i(mu, mu);
            let t = verify_manin(&g, &b, &p, &m);
            rep.push(Check::new(
                format!("manin/d4/i/alpha={}/mu=nu={}", to_text(&alpha), to_text(mu)),
                !t.verified && t.failures.iter().any(|f| f == "complementarity"),
                "coincident sides are rejected",
            ));
            let (p, m) = d4_family_ii(mu);
            let t = verify_manin(&g, &b, &p, &m);
            rep.push(Check::new(format!("manin/d4/ii/alpha={}/mu={}", to_text(&alpha), to_text(mu)), t.verified, t.failures.join(", ")));
        }
    }
    rep.push(Check::new("manin/d4/isometry", is_isometric_automorphism(&g, &alpha, &d4_isometry()), "phi swaps e1,e2 and negates e0,e3"));
    let dp = catalog::make(FamilyId::D4pLambda, &[q(0)]).expect("d'4,0");
    let sp = invariant_form_space(&dp);
    rep.push(Check::new("manin/d'4,0/invariant-metric", sp.nondegenerate.as_ref().is_some_and(|b| is_invariant(&dp, b) && b.is_nondegenerate()), "nondegenerate invariant form found"));
    for t in PcType::ALL {
        let id = format!("manin/d'4,0/no-paracomplex/{}", t.tag());
        rep.push(match paracomplex_search(&dp, t, budget) {
            Ok(o) if o.found.is_empty() && o.certificate.decided_empty() => Check::new(id, true, o.certificate.summary(&dp)),
            Ok(o) if !o.found.is_empty() => Check::new(id, false, "a decomposition was found"),
            Ok(o) => Check::undecided(id, o.certificate.summary(&dp)),
            Err(e) => Check::undecided(id, e.to_string()),
        });
    }
    for fam in [FamilyId::H4, FamilyId::N4, FamilyId::AffC] {
        let h = catalog::make(fam, &[]).expect("no parameters");
        rep.push(Check::new(format!("manin/{}/no-invariant-metric", fam.name()), invariant_form_space(&h).nondegenerate.is_none(), "determinant vanishes identically"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d4_alpha_form_is_invariant() {
        let g = d4();
        assert!(is_invariant(&g, &d4_form(&q(1))));
        assert!(!is_invariant(&g, &SymmetricForm::new(Matrix::identity(4)).unwrap()));
        let space = invariant_form_space(&g);
        let alpha = d4_form(&q(3));
        assert!(space.basis.iter().all(|f| is_invariant(&g, f)));
        let coords = Matrix::from_cols(&space.basis.iter().map(|f| f.b.entries().to_vec()).collect::<Vec<_>>(), 16);
        assert!(coords.solve(alpha.b.entries()).is_some());
        assert!(space.nondegenerate.is_some());
    }

    #[test]
    fn abelian_forms_are_all_invariant() {
        let g = LieAlgebra::abelian(4);
        let space = invariant_form_space(&g);
        assert_eq!(space.basis.len(), 10);
        assert!(space.basis.iter().all(|f| is_invariant(&g, f)));
    }

    #[test]
    fn h4_has_no_invariant_metric() {
        let g = catalog::make(FamilyId::H4, &[]).unwrap();
        let space = invariant_form_space(&g);
        assert!(space.det.is_zero());
        assert!(space.nondegenerate.is_none());
    }

    #[test]
    fn d4p0_has_invariant_metric() {
        let g = catalog::make(FamilyId::D4pLambda, &[q(0)]).unwrap();
        let space = invariant_form_space(&g);
        let b = space.nondegenerate.expect("nondegenerate");
        assert!(is_invariant(&g, &b) && b.is_nondegenerate());
    }

    #[test]
    fn isotropy() {
        let b = d4_form(&q(1));
        assert!(is_isotropic(&b, &Subspace::coordinate(4, &[2, 3])));
        assert!(is_isotropic(&b, &Subspace::zero(4)));
        assert!(!is_isotropic(&b, &Subspace::coordinate(4, &[0, 3])));
    }

    #[test]
    fn manin_families() {
        let g = d4();
        let b = d4_form(&qf(-2, 3));
        let vals = [q(-2), q(-1), q(0), q(1), q(2), qf(1, 3)];
        for mu in &vals {
            for nu in &vals {
                let (p, m) = d4_family_i(mu, nu);
                let t = verify_manin(&g, &b, &p, &m);
                assert_eq!(t.verified, mu != nu, "{mu} {nu} {:?}", t.failures);
                if mu == nu {
                    assert!(t.failures.contains(&"complementarity".to_string()));
                }
            }
            let (p, m) = d4_family_ii(mu);
            assert!(verify_manin(&g, &b, &p, &m).verified);
        }
    }

    #[test]
    fn abelian_manin_triple() {
        let g = LieAlgebra::abelian(4);
        let b = SymmetricForm::from_pairs(4, &[(0, 2, q(1)), (1, 3, q(1))]);
        let u = crate::linalg::unit;
        assert!(verify_manin(&g, &b, &[u(4, 0), u(4, 1)], &[u(4, 2), u(4, 3)]).verified);
    }

    #[test]
    fn isometry_of_d4() {
        assert!(is_isometric_automorphism(&d4(), &d4_form(&q(1)), &d4_isometry()));
    }

    #[test]
    fn manin_report() {
        let rep = verify_table_manin(&Default::default());
        for c in rep.problems() {
            eprintln!("{} {}", c.id, c.detail);
        }
        assert!(rep.passed());
    }

    #[test]
    fn signatures() {
        assert_eq!(d4_form(&q(1)).signature(), (2, 2, 0));
        assert_eq!(SymmetricForm::new(Matrix::identity(3)).unwrap().signature(), (3, 0, 0));
        let b = SymmetricForm::from_pairs(3, &[(0, 1, q(1))]);
        assert_eq!(b.signature(), (1, 1, 1));
    }
}
