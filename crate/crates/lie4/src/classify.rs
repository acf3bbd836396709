//! Identification of solvable Lie algebras of dimension ≤ 4 against the catalog, with an
//! explicit isomorphism witness that is re-verified before it is returned.

use crate::algebra::{CommutatorClass, LieAlgebra};
use crate::catalog::{self, CatalogError, Family, FamilyId};
use crate::jordan::{self, FactorKind, JordanError};
use crate::linalg::{self, combine, unit, Matrix, Subspace, Vector};
use crate::rational::{q, qf, root_exact, Q};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("dimension {0} is not supported by identification")]
    Unsupported(usize),
    #[error("adjoint action has an irreducible factor of degree {0} over Q")]
    IrreducibleCubicOrWorse(usize),
    #[error("identification needs an irrational number: {0}")]
    IrrationalParameter(String),
    #[error("constructed witness failed verification: {0}")]
    InternalMismatch(String),
    #[error("witness is singular")]
    SingularWitness,
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl From<JordanError> for ClassifyError {
    fn from(e: JordanError) -> Self {
        match e {
            JordanError::IrreducibleCubicOrWorse(d) => ClassifyError::IrreducibleCubicOrWorse(d),
            JordanError::IrrationalRealPair(d) => {
                ClassifyError::IrrationalParameter(format!("real eigenvalues with discriminant {d}"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub family: Family,
    /// ψ: coordinates in the input basis ↦ coordinates in the catalog basis.
    pub witness: Matrix,
    pub verified: bool,
}

/// ψ[x,y] = [ψx, ψy] on all basis pairs.
pub fn verify_isomorphism(g1: &LieAlgebra, g2: &LieAlgebra, psi: &Matrix) -> Result<bool, ClassifyError> {
    if g1.dim() != g2.dim() || psi.rows() != g2.dim() || psi.cols() != g1.dim() {
        return Ok(false);
    }
    if psi.det().is_zero() {
        return Err(ClassifyError::SingularWitness);
    }
    let n = g1.dim();
    let cols = psi.col_vecs();
    for i in 0..n {
        for j in i + 1..n {
            if psi.apply(g1.bracket_basis(i, j)) != g2.bracket(&cols[i], &cols[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Build the result from new basis vectors (in input coordinates) realizing the catalog table.
fn finish(g: &LieAlgebra, family: Family, basis: Vec<Vector>) -> Result<ClassificationResult, ClassifyError> {
    let target = family.make()?;
    let p = Matrix::from_cols(&basis, g.dim());
    let Some(psi) = p.inverse() else {
        return Err(ClassifyError::InternalMismatch(format!("{family}: constructed basis is dependent")));
    };
    if !verify_isomorphism(g, &target, &psi)? {
        return Err(ClassifyError::InternalMismatch(format!("{family}: bracket table does not match")));
    }
    Ok(ClassificationResult { family, witness: psi, verified: true })
}

fn first_unit_outside(s: &Subspace) -> Vector {
    unit(s.ambient(), s.complement_units()[0])
}

fn sc(c: &Q, v: &[Q]) -> Vector {
    linalg::scale(c, v)
}

/// Matrix of ad(x) restricted to an invariant subspace, in the given basis of it.
fn restricted_ad(g: &LieAlgebra, x: &[Q], basis: &[Vector]) -> Result<Matrix, ClassifyError> {
    let m = Matrix::from_cols(basis, g.dim());
    let cols: Vec<Vector> = basis
        .iter()
        .map(|b| {
            m.solve(&g.bracket(x, b))
                .ok_or_else(|| ClassifyError::InternalMismatch("subspace is not ad-invariant".into()))
        })
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_cols(&cols, basis.len()))
}

fn rational_b(f: &jordan::JordanFactor) -> Result<(Q, Q), ClassifyError> {
    let FactorKind::Quadratic { a, b_sq } = &f.kind else { unreachable!() };
    let b = f
        .b()
        .ok_or_else(|| ClassifyError::IrrationalParameter(format!("sqrt({})", crate::rational::to_text(b_sq))))?;
    Ok((a.clone(), b))
}

pub fn identify(g: &LieAlgebra) -> Result<ClassificationResult, ClassifyError> {
    let n = g.dim();
    if n == 0 || n > 4 {
        return Err(ClassifyError::Unsupported(n));
    }
    if !g.is_solvable() {
        return Err(ClassifyError::NotSolvable);
    }
    match n {
        1 => finish(g, Family::plain(FamilyId::R), vec![unit(1, 0)]),
        2 => identify2(g),
        3 => identify3(g),
        _ => identify4(g),
    }
}

fn identify2(g: &LieAlgebra) -> Result<ClassificationResult, ClassifyError> {
    let gp = g.derived();
    if gp.dim() == 0 {
        return finish(g, Family::plain(FamilyId::R2), vec![unit(2, 0), unit(2, 1)]);
    }
    let y = gp.basis()[0].clone();
    let x = first_unit_outside(&gp);
    let c = gp.coords(&g.bracket(&x, &y)).expect("derived algebra is an ideal")[0].clone();
    finish(g, Family::plain(FamilyId::AffR), vec![sc(&c.recip(), &x), y])
}

/// Three-dimensional solvable algebras, via a two-dimensional abelian ideal containing g′.
pub fn identify3(g: &LieAlgebra) -> Result<ClassificationResult, ClassifyError> {
    if g.dim() != 3 {
        return Err(ClassifyError::Unsupported(g.dim()));
    }
    if !g.is_solvable() {
        return Err(ClassifyError::NotSolvable);
    }
    let gp = g.derived();
    if gp.dim() == 0 {
        return finish(g, Family::plain(FamilyId::R3), (0..3).map(|i| unit(3, i)).collect());
    }
    let a = match gp.dim() {
        2 => gp.clone(),
        1 => {
            let c = g.centralizer(&gp);
            if c.dim() == 2 {
                c
            } else {
                gp.sum(&Subspace::span(3, &[first_unit_outside(&gp)]))
            }
        }
        _ => return Err(ClassifyError::NotSolvable),
    };
    let ab = a.basis().to_vec();
    let x = first_unit_outside(&a);
    let am = restricted_ad(g, &x, &ab)?;
    let to_g = |v: &[Q]| combine(v, &ab, 3);
    let jd = jordan::jordan_data(&am)?;
    if let Some(f) = jd.quadratic() {
        let (re, b) = rational_b(f)?;
        let s = if re.is_negative() { -b } else { b };
        let lam = &re / &s;
        let c = am.scale(&s.recip()).sub(&Matrix::scalar(2, &lam));
        let e3 = unit(2, 0);
        let e2 = c.apply(&e3);
        return finish(
            g,
            Family::new(FamilyId::R3pLambda, vec![lam]),
            vec![sc(&s.recip(), &x), to_g(&e2), to_g(&e3)],
        );
    }
    let (lam, f) = jd.linear().next().expect("split");
    if f.blocks == vec![2] {
        let n = am.sub(&Matrix::scalar(2, lam));
        let v = (0..2).map(|i| unit(2, i)).find(|v| !linalg::is_zero_vec(&n.apply(v))).unwrap();
        if lam.is_zero() {
            let w = n.apply(&v);
            return finish(g, Family::plain(FamilyId::H3), vec![x, to_g(&v), to_g(&w)]);
        }
        let np = n.scale(&lam.recip());
        return finish(
            g,
            Family::plain(FamilyId::R3Gen),
            vec![sc(&lam.recip(), &x), to_g(&np.apply(&v)), to_g(&v)],
        );
    }
    // diagonalizable
    let mut eig: Vec<(Q, Vector)> = Vec::new();
    for (l, _) in jd.linear() {
        for v in am.sub(&Matrix::scalar(2, l)).kernel() {
            eig.push((l.clone(), v));
        }
    }
    eig.sort_by(|p, r| r.0.abs().cmp(&p.0.abs()).then(r.0.cmp(&p.0)));
    let nu = eig[0].0.clone();
    let ratio = &eig[1].0 / &nu;
    finish(
        g,
        Family::new(FamilyId::R3Lambda, vec![ratio]),
        vec![sc(&nu.recip(), &x), to_g(&eig[0].1), to_g(&eig[1].1)],
    )
}

/// The ideal u used for identification, with its type and catalog basis (input coordinates).
#[derive(Debug, Clone)]
pub struct UnimodularIdeal {
    pub space: Subspace,
    pub kind: Family,
    pub basis: Vec<Vector>,
}

pub fn codim1_unimodular_ideal(g: &LieAlgebra) -> Result<UnimodularIdeal, ClassifyError> {
    if g.dim() != 4 {
        return Err(ClassifyError::Unsupported(g.dim()));
    }
    if !g.is_solvable() {
        return Err(ClassifyError::NotSolvable);
    }
    let space = if !g.is_unimodular() {
        g.unimodular_kernel()
    } else {
        let gp = g.derived();
        match gp.dim() {
            3 => gp,
            d => {
                let outside = gp.complement_units();
                let choices = combinations(&outside, 3 - d);
                let spaces: Vec<Subspace> = choices
                    .iter()
                    .map(|c| gp.sum(&Subspace::coordinate(4, c)))
                    .collect();
                // prefer a non-abelian choice when g′ ≠ 0
                spaces
                    .iter()
                    .find(|s| d > 0 && !g.is_abelian_subspace(s))
                    .unwrap_or(&spaces[0])
                    .clone()
            }
        }
    };
    if space.dim() != 3 || !g.is_ideal(&space) {
        return Err(ClassifyError::InternalMismatch("no three-dimensional ideal found".into()));
    }
    let sub = g.restrict(&space).map_err(|e| ClassifyError::InternalMismatch(e.to_string()))?;
    let r = identify3(&sub)?;
    let ok = matches!(
        (r.family.id, r.family.params.as_slice()),
        (FamilyId::R3, _) | (FamilyId::H3, _)
    ) || r.family == Family::new(FamilyId::R3Lambda, vec![q(-1)])
        || r.family == Family::new(FamilyId::R3pLambda, vec![q(0)]);
    if !ok {
        return Err(ClassifyError::InternalMismatch(format!("ideal identified as {}", r.family)));
    }
    let p3 = r.witness.inverse().expect("verified witness");
    let basis = p3.col_vecs().iter().map(|c| combine(c, space.basis(), 4)).collect();
    Ok(UnimodularIdeal { space, kind: r.family, basis })
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn identify4(g: &LieAlgebra) -> Result<ClassificationResult, ClassifyError> {
    let u = codim1_unimodular_ideal(g)?;
    let x = first_unit_outside(&u.space);
    match u.kind.id {
        FamilyId::R3 => extend_abelian(g, x, &u.basis),
        FamilyId::H3 => extend_heisenberg(g, x, &u.basis),
        FamilyId::R3Lambda => extend_with_outer(g, x, &u.basis, false),
        FamilyId::R3pLambda => extend_with_outer(g, x, &u.basis, true),
        _ => unreachable!(),
    }
}

/// g = ℝx ⋉ ℝ³.
fn extend_abelian(g: &LieAlgebra, x: Vector, f: &[Vector]) -> Result<ClassificationResult, ClassifyError> {
    use FamilyId::*;
    let a = restricted_ad(g, &x, f)?;
    let to_g = |v: &[Q]| combine(v, f, 4);
    if a.is_zero() {
        let mut b = vec![x];
        b.extend(f.iter().cloned());
        return finish(g, Family::plain(R4), b);
    }
    let jd = jordan::jordan_data(&a)?;
    let id3 = Matrix::identity(3);
    if let Some(qf_) = jd.quadratic() {
        let (re, b) = rational_b(qf_)?;
        let (mu0, _) = jd.linear().next().expect("one real eigenvalue");
        let k = a.sub(&id3.scale(mu0)).kernel()[0].clone();
        let plane = jordan::kernel_of_poly(&a, &qf_.poly());
        let c1 = plane[0].clone();
        if mu0.is_zero() {
            let s = if re.is_negative() { -b } else { b };
            let lam = &re / &s;
            let c = a.scale(&s.recip()).sub(&id3.scale(&lam));
            return finish(
                g,
                Family::new(RxR3pLambda, vec![lam]),
                vec![to_g(&k), sc(&s.recip(), &x), to_g(&c.apply(&c1)), to_g(&c1)],
            );
        }
        let s = if mu0.is_negative() { -b } else { b };
        let lam = &re / &s;
        let c = a.scale(&s.recip()).sub(&id3.scale(&lam));
        return finish(
            g,
            Family::new(R4pMuLambda, vec![mu0 / &s, lam]),
            vec![sc(&s.recip(), &x), to_g(&k), to_g(&c.apply(&c1)), to_g(&c1)],
        );
    }
    let units: Vec<Vector> = (0..3).map(|i| unit(3, i)).collect();
    if let Some((l0, _)) = jd.linear().find(|(_, f)| f.blocks.contains(&3)) {
        let n = a.sub(&id3.scale(l0));
        let n2 = n.mul(&n);
        let v = units.iter().find(|v| !linalg::is_zero_vec(&n2.apply(v))).unwrap().clone();
        if l0.is_zero() {
            return finish(g, Family::plain(N4), vec![x, to_g(&v), to_g(&n.apply(&v)), to_g(&n2.apply(&v))]);
        }
        let inv = l0.recip();
        let np = n.scale(&inv);
        let np2 = np.mul(&np);
        return finish(
            g,
            Family::plain(R4Gen),
            vec![sc(&inv, &x), to_g(&np2.apply(&v)), to_g(&np.apply(&v)), to_g(&v)],
        );
    }
    if let Some((lb, fb)) = jd.linear().find(|(_, f)| f.blocks.contains(&2)) {
        let n = a.sub(&id3.scale(lb));
        let gen = n.mul(&n).kernel();
        let v = gen.iter().find(|v| !linalg::is_zero_vec(&n.apply(v))).unwrap().clone();
        let w = n.apply(&v);
        let (l1, k) = if fb.blocks.len() > 1 {
            let span_w = Subspace::span(3, std::slice::from_ref(&w));
            let k = n.kernel().into_iter().find(|k| !span_w.contains(k)).unwrap();
            (lb.clone(), k)
        } else {
            let (l1, _) = jd.linear().find(|(l, _)| *l != lb).unwrap();
            (l1.clone(), a.sub(&id3.scale(l1)).kernel()[0].clone())
        };
        return match (lb.is_zero(), l1.is_zero()) {
            (true, true) => finish(g, Family::plain(RxH3), vec![to_g(&k), x, to_g(&v), to_g(&w)]),
            (false, true) => {
                let inv = lb.recip();
                finish(g, Family::plain(RxR3Gen), vec![to_g(&k), sc(&inv, &x), to_g(&sc(&inv, &w)), to_g(&v)])
            }
            _ => {
                let inv = l1.recip();
                finish(
                    g,
                    Family::new(R4Lambda, vec![lb * &inv]),
                    vec![sc(&inv, &x), to_g(&k), to_g(&sc(&inv, &w)), to_g(&v)],
                )
            }
        };
    }
    // diagonalizable
    let mut eig: Vec<(Q, Vector)> = Vec::new();
    for (l, _) in jd.linear() {
        for v in a.sub(&id3.scale(l)).kernel() {
            eig.push((l.clone(), v));
        }
    }
    let (zeros, mut nz): (Vec<_>, Vec<_>) = eig.into_iter().partition(|(l, _)| l.is_zero());
    nz.sort_by(|p, r| r.0.abs().cmp(&p.0.abs()).then(r.0.cmp(&p.0)));
    match nz.len() {
        1 => {
            let inv = nz[0].0.recip();
            finish(
                g,
                Family::new(RxR3Lambda, vec![q(0)]),
                vec![to_g(&zeros[0].1), sc(&inv, &x), to_g(&nz[0].1), to_g(&zeros[1].1)],
            )
        }
        2 => {
            let inv = nz[0].0.recip();
            finish(
                g,
                Family::new(RxR3Lambda, vec![&nz[1].0 * &inv]),
                vec![to_g(&zeros[0].1), sc(&inv, &x), to_g(&nz[0].1), to_g(&nz[1].1)],
            )
        }
        _ => {
            for i in 0..3 {
                let nu = nz[i].0.clone();
                let mut rest: Vec<(Q, Vector)> = (0..3)
                    .filter(|&j| j != i)
                    .map(|j| (&nz[j].0 / &nu, nz[j].1.clone()))
                    .collect();
                rest.sort_by(|p, r| p.0.cmp(&r.0));
                let params = vec![rest[0].0.clone(), rest[1].0.clone()];
                if catalog::check_constraint(R4MuLambda, &params).is_ok() {
                    return finish(
                        g,
                        Family::new(R4MuLambda, params),
                        vec![sc(&nu.recip(), &x), to_g(&nz[i].1), to_g(&rest[0].1), to_g(&rest[1].1)],
                    );
                }
            }
            Err(ClassifyError::InternalMismatch("no admissible r4,mu,lambda normalization".into()))
        }
    }
}

/// g = ℝx ⋉ h₃ with f = (f1, f2, f3), [f1,f2] = f3.
fn extend_heisenberg(g: &LieAlgebra, x: Vector, f: &[Vector]) -> Result<ClassificationResult, ClassifyError> {
    use FamilyId::*;
    let d = restricted_ad(g, &x, f)?;
    let (b, c) = (d.get(2, 0).clone(), d.get(2, 1).clone());
    // remove the f3-components of ad(x) f1 and ad(x) f2 by an inner derivation
    let xp = linalg::add(&linalg::sub(&x, &sc(&c, &f[0])), &sc(&b, &f[1]));
    let dp = restricted_ad(g, &xp, f)?;
    if !dp.get(2, 0).is_zero() || !dp.get(2, 1).is_zero() {
        return Err(ClassifyError::InternalMismatch("inner correction failed".into()));
    }
    let a = dp.select(&[0, 1], &[0, 1]);
    let plane = &f[..2];
    let to_g = |v: &[Q]| combine(v, plane, 4);
    let br = |u: &Vector, v: &Vector| g.bracket(u, v);
    let id2 = Matrix::identity(2);
    let units: Vec<Vector> = (0..2).map(|i| unit(2, i)).collect();
    if a.is_zero() {
        return finish(g, Family::plain(RxH3), vec![xp, f[0].clone(), f[1].clone(), f[2].clone()]);
    }
    let jd = jordan::jordan_data(&a)?;
    if let Some(qf_) = jd.quadratic() {
        let (re, bb) = rational_b(qf_)?;
        let s = if re.is_negative() { -bb } else { bb };
        let lam = &re / &s;
        let cm = a.scale(&s.recip()).sub(&id2.scale(&lam));
        let e2 = to_g(&units[1]);
        let e1 = to_g(&cm.apply(&units[1]));
        let e3 = br(&e1, &e2);
        return finish(g, Family::new(D4pLambda, vec![lam]), vec![sc(&s.recip(), &xp), e1, e2, e3]);
    }
    let (l0, f0) = jd.linear().next().unwrap();
    if f0.blocks == vec![2] {
        let n = a.sub(&id2.scale(l0));
        let v = units.iter().find(|v| !linalg::is_zero_vec(&n.apply(v))).unwrap().clone();
        if l0.is_zero() {
            let (e0, e2) = (to_g(&v), to_g(&n.apply(&v)));
            let e3 = br(&e0, &e2);
            return finish(g, Family::plain(N4), vec![e0, sc(&q(-1), &xp), e2, e3]);
        }
        let inv = l0.recip();
        let np = n.scale(&inv);
        let (e1, e2) = (to_g(&np.apply(&v)), to_g(&v));
        let e3 = br(&e1, &e2);
        return finish(g, Family::plain(H4), vec![sc(&inv, &xp), e1, e2, e3]);
    }
    let mut eig: Vec<(Q, Vector)> = Vec::new();
    for (l, _) in jd.linear() {
        for v in a.sub(&id2.scale(l)).kernel() {
            eig.push((l.clone(), v));
        }
    }
    let sigma = &eig[0].0 + &eig[1].0;
    if sigma.is_zero() {
        eig.sort_by(|p, r| r.0.cmp(&p.0));
        let inv = eig[0].0.recip();
        let (e1, e2) = (to_g(&eig[0].1), to_g(&eig[1].1));
        let e3 = br(&e1, &e2);
        return finish(g, Family::plain(D4), vec![sc(&inv, &xp), e1, e2, e3]);
    }
    let inv = sigma.recip();
    let mut scaled: Vec<(Q, Vector)> = eig.into_iter().map(|(l, v)| (l * &inv, v)).collect();
    scaled.sort_by(|p, r| r.0.cmp(&p.0));
    let (e1, e2) = (to_g(&scaled[0].1), to_g(&scaled[1].1));
    let e3 = br(&e1, &e2);
    finish(g, Family::new(D4Lambda, vec![scaled[0].0.clone()]), vec![sc(&inv, &xp), e1, e2, e3])
}

/// g = ℝx ⋉ e(1,1) or ℝx ⋉ e(2): split ad(x)|u into inner part and a multiple of diag(0,1,1).
fn extend_with_outer(
    g: &LieAlgebra,
    x: Vector,
    f: &[Vector],
    euclidean: bool,
) -> Result<ClassificationResult, ClassifyError> {
    use FamilyId::*;
    let d = restricted_ad(g, &x, f)?;
    let inner: Vec<Matrix> = f.iter().map(|fi| restricted_ad(g, fi, f)).collect::<Result<_, _>>()?;
    let outer = Matrix::diag(&[q(0), q(1), q(1)]);
    // unknowns y1, y2, y3, t: Σ yᵢ ad(fᵢ) + t·outer = d
    let mut cols: Vec<Vector> = inner.iter().map(|m| m.entries().to_vec()).collect();
    cols.push(outer.entries().to_vec());
    let sys = Matrix::from_cols(&cols, 9);
    let sol = sys
        .solve(d.entries())
        .ok_or_else(|| ClassifyError::InternalMismatch("derivation outside inner + outer span".into()))?;
    let y = combine(&sol[..3], f, 4);
    let t = sol[3].clone();
    let xp = linalg::sub(&x, &y);
    if t.is_zero() {
        let fam = if euclidean {
            Family::new(RxR3pLambda, vec![q(0)])
        } else {
            Family::new(RxR3Lambda, vec![q(-1)])
        };
        return finish(g, fam, vec![xp, f[0].clone(), f[1].clone(), f[2].clone()]);
    }
    let xpp = sc(&t.recip(), &xp);
    if euclidean {
        return finish(g, Family::plain(AffC), vec![xpp, sc(&q(-1), &f[0]), f[1].clone(), f[2].clone()]);
    }
    let a = linalg::add(&xpp, &f[0]);
    let b = linalg::sub(&xpp, &f[0]);
    let h = qf(1, 2);
    finish(g, Family::plain(AffRxAffR), vec![sc(&h, &b), sc(&h, &a), f[1].clone(), f[2].clone()])
}

/// Canonical catalog representative of a possibly out-of-range presentation.
pub fn canonicalize(id: FamilyId, params: &[Q]) -> Result<ClassificationResult, ClassifyError> {
    let g = catalog::make_unchecked(id, params)?;
    if catalog::check_constraint(id, params).is_ok() {
        let n = g.dim();
        return Ok(ClassificationResult {
            family: Family::new(id, params.to_vec()),
            witness: Matrix::identity(n),
            verified: true,
        });
    }
    if let Some((family, p)) = catalog::closed_form_canonical(id, params) {
        let psi = p.inverse().ok_or(ClassifyError::SingularWitness)?;
        let verified = verify_isomorphism(&g, &family.make()?, &psi)?;
        if verified {
            return Ok(ClassificationResult { family, witness: psi, verified });
        }
    }
    identify(&g)
}

/// Elementary symmetric functions e₁..eₙ of the eigenvalues.
fn elementary(m: &Matrix) -> Vec<Q> {
    let cp = m.char_poly();
    let n = m.rows();
    (1..=n)
        .map(|k| {
            let c = cp[n - k].clone();
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Equal Jordan structure (needs degree ≤ 2 factorization of A).
pub fn similar(a: &Matrix, b: &Matrix) -> Option<bool> {
    if a.char_poly() != b.char_poly() {
        return Some(false);
    }
    let jd = jordan::jordan_data(a).ok()?;
    for f in &jd.factors {
        let p = f.poly();
        let (pa, pb) = (jordan::poly_of_matrix(&p, a), jordan::poly_of_matrix(&p, b));
        for k in 1..=f.multiplicity {
            if pa.pow(k).rank() != pb.pow(k).rank() {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// γ ≠ 0 and invertible P with γB = P A P⁻¹, when such exist over Q.
pub fn scalar_conjugate(a: &Matrix, b: &Matrix) -> Option<(Q, Matrix)> {
    let n = a.rows();
    let (ea, eb) = (elementary(a), elementary(b));
    let mut cands: Vec<Q> = Vec::new();
    match eb.iter().position(|x| !x.is_zero()) {
        None => {
            if ea.iter().all(|x| x.is_zero()) {
                cands.push(q(1));
            }
        }
        Some(k0) => {
            let k = (k0 + 1) as u32;
            if let Some(r) = root_exact(&(&ea[k0] / &eb[k0]), k) {
                if !r.is_zero() {
                    cands.push(r.clone());
                    if k.is_multiple_of(2) {
                        cands.push(-r);
                    }
                }
            }
        }
    }
    cands.sort();
    for gamma in cands {
        let ok = (0..n).all(|k| ea[k] == num::pow(gamma.clone(), k + 1) * &eb[k]);
        if !ok {
            continue;
        }
        let gb = b.scale(&gamma);
        if similar(a, &gb) == Some(false) {
            continue;
        }
        if let Some(p) = intertwiner(a, &gb) {
            return Some((gamma, p));
        }
    }
    None
}

/// Invertible P with M P = P A, searched in the solution space of that linear system.
fn intertwiner(a: &Matrix, m: &Matrix) -> Option<Matrix> {
    let n = a.rows();
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Q::zero(); n * n];
            for k in 0..n {
                row[idx(k, j)] += m.get(i, k);
                row[idx(i, k)] -= a.get(k, j);
            }
            rows.push(row);
        }
    }
    let ker = Matrix::from_rows(&rows).kernel();
    let as_mat = |v: &Vector| Matrix::from_rows(&v.chunks(n).map(|c| c.to_vec()).collect::<Vec<_>>());
    for v in &ker {
        let p = as_mat(v);
        if !p.det().is_zero() {
            return Some(p);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let coeffs: Vec<Q> = ker.iter().map(|_| q(rng.gen_range(-9..=9))).collect();
        let p = as_mat(&combine(&coeffs, &ker, n * n));
        if !p.det().is_zero() {
            return Some(p);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim_derived: usize,
    pub commutator_class: CommutatorClass,
    pub dim_center: usize,
    pub dim_center_cap_derived: usize,
    pub nilpotent: bool,
    /// g / z(g′) identified, when g′ ≅ h₃.
    pub quotient: Option<Family>,
}

pub fn fingerprint(g: &LieAlgebra) -> Fingerprint {
    let inv = g.structural_invariants();
    let quotient = if inv.commutator_class == CommutatorClass::H3 {
        inv.quotient_by_center_of_derived
            .as_ref()
            .and_then(|qa| identify(qa).ok())
            .map(|r| r.family)
    } else {
        None
    };
    Fingerprint {
        dim_derived: inv.derived_series.get(1).map_or(0, |s| s.dim()),
        commutator_class: inv.commutator_class,
        dim_center: inv.center.dim(),
        dim_center_cap_derived: inv.center_cap_derived.dim(),
        nilpotent: inv.lower_central_series.last().unwrap().dim() == 0,
        quotient,
    }
}

/// Random invertible rational basis change (entries with small numerators and denominators).
pub fn random_basis_change(n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let rows: Vec<Vector> = (0..n)
            .map(|_| (0..n).map(|_| qf(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
            .collect();
        let m = Matrix::from_rows(&rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{grid_instances, make};

    #[test]
    fn three_dim_examples() {
        let e11 = LieAlgebra::from_sparse(3, &[(0, 1, vec![(1, q(1))]), (0, 2, vec![(2, q(-1))])]).unwrap();
        assert_eq!(identify3(&e11).unwrap().family, Family::new(FamilyId::R3Lambda, vec![q(-1)]));
        let e2 = LieAlgebra::from_sparse(3, &[(0, 1, vec![(2, q(1))]), (0, 2, vec![(1, q(-1))])]).unwrap();
        assert_eq!(identify3(&e2).unwrap().family, Family::new(FamilyId::R3pLambda, vec![q(0)]));
        let r = identify3(&LieAlgebra::abelian(3)).unwrap();
        assert_eq!(r.witness, Matrix::identity(3));
    }

    #[test]
    fn round_trip_grid() {
        for f in grid_instances() {
            let g = f.make().unwrap();
            let r = identify(&g).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert_eq!(r.family, f, "{f}");
            assert!(r.verified);
        }
    }

    #[test]
    fn invariant_under_basis_change() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for f in grid_instances() {
            let g = f.make().unwrap();
            for _ in 0..3 {
                let p = random_basis_change(g.dim(), &mut rng);
                let h = g.transform(&p).unwrap();
                let r = identify(&h).unwrap_or_else(|e| panic!("{f}: {e}"));
                assert_eq!(r.family, f);
            }
        }
    }

    #[test]
    fn canonicalize_examples() {
        let r = canonicalize(FamilyId::D4Lambda, &[qf(1, 4)]).unwrap();
        assert_eq!(r.family, Family::new(FamilyId::D4Lambda, vec![qf(3, 4)]));
        let r = canonicalize(FamilyId::R4MuLambda, &[qf(1, 2), qf(1, 3)]).unwrap();
        assert_eq!(r.family.params, vec![qf(1, 3), qf(1, 2)]);
        // ratio outside [-1, 1]: renormalize by the other eigenvalue
        let r = canonicalize(FamilyId::R3Lambda, &[q(2)]).unwrap();
        assert_eq!(r.family, Family::new(FamilyId::R3Lambda, vec![qf(1, 2)]));
        let r = canonicalize(FamilyId::R3pLambda, &[q(-2)]).unwrap();
        assert_eq!(r.family, Family::new(FamilyId::R3pLambda, vec![q(2)]));
        for f in grid_instances() {
            let once = canonicalize(f.id, &f.params).unwrap();
            assert_eq!(once.family, f);
            assert_eq!(once.witness, Matrix::identity(f.id.dim()));
        }
    }

    #[test]
    fn ideal_types() {
        let aa = make(FamilyId::AffRxAffR, &[]).unwrap();
        let u = codim1_unimodular_ideal(&aa).unwrap();
        assert_eq!(u.kind, Family::new(FamilyId::R3Lambda, vec![q(-1)]));
        assert_eq!(u.space, aa.unimodular_kernel());
        let n4 = make(FamilyId::N4, &[]).unwrap();
        assert_eq!(codim1_unimodular_ideal(&n4).unwrap().kind.id, FamilyId::H3);
        assert_eq!(codim1_unimodular_ideal(&LieAlgebra::abelian(4)).unwrap().kind.id, FamilyId::R3);
    }

    #[test]
    fn scalar_conjugate_examples() {
        let d = |xs: &[Q]| Matrix::diag(xs);
        let (mu, la) = (qf(1, 3), qf(1, 2));
        let a = d(&[q(1), mu.clone(), la.clone()]);
        let b = d(&[q(2), q(2) * &mu, q(2) * &la]);
        let (g, p) = scalar_conjugate(&a, &b).unwrap();
        assert_eq!(g, qf(1, 2));
        assert_eq!(b.scale(&g).mul(&p), p.mul(&a));
        let b2 = d(&[q(1), qf(1, 2), qf(1, 3)]);
        assert_eq!(scalar_conjugate(&a, &b2).unwrap().0, q(1));
        let a3 = d(&[q(1), q(-1), qf(-1, 2)]);
        let b3 = d(&[q(1), q(-1), qf(-1, 3)]);
        assert!(scalar_conjugate(&a3, &b3).is_none());
    }

    #[test]
    fn fingerprints_separate() {
        let n4 = fingerprint(&make(FamilyId::N4, &[]).unwrap());
        let r40 = fingerprint(&make(FamilyId::R4Lambda, &[q(0)]).unwrap());
        assert_eq!(n4.commutator_class, r40.commutator_class);
        assert!(n4.nilpotent && !r40.nilpotent);
        let h4 = fingerprint(&make(FamilyId::H4, &[]).unwrap());
        assert_eq!(h4.quotient, Some(Family::plain(FamilyId::R3Gen)));
        let r4 = fingerprint(&LieAlgebra::abelian(4));
        assert_eq!((r4.dim_derived, r4.dim_center), (0, 4));
    }

    #[test]
    fn not_solvable() {
        // sl(2)
        let sl2 = LieAlgebra::from_sparse(
            3,
            &[(0, 1, vec![(1, q(2))]), (0, 2, vec![(2, q(-2))]), (1, 2, vec![(0, q(1))])],
        )
        .unwrap();
        assert_eq!(identify(&sl2), Err(ClassifyError::NotSolvable));
    }
}
