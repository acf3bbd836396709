use super::*;
use crate::catalog::{make, FamilyId::*};
use crate::linalg::vec_from_i64;
use crate::rational::qf;

fn e(n: usize, i: usize) -> Vector {
    unit(n, i)
}

fn sp(vs: &[Vector]) -> Subspace {
    Subspace::span(4, vs)
}

#[test]
fn cell_counts() {
    assert_eq!(grass_cells(2, 4).len(), 6);
    assert_eq!(grass_cells(2, 3).len(), 3);
    let params: Vec<usize> = grass_cells(2, 4).iter().map(|c| c.param_count()).collect();
    assert_eq!(params, vec![4, 3, 2, 2, 1, 0]);
    assert_eq!(grass_cells(1, 4).len(), 4);
}

#[test]
fn n4_split() {
    let g = make(N4, &[]).unwrap();
    let p = product_from_decomposition(&g, &sp(&[e(4, 0), e(4, 3)]), &sp(&[e(4, 1), e(4, 2)])).unwrap();
    assert!(p.paracomplex && !p.plus_ideal && !p.minus_ideal);
}

#[test]
fn abelian_split_has_both_ideals() {
    let g = make(R4, &[]).unwrap();
    let p = product_from_vectors(&g, &[vec_from_i64(&[1, 1, 0, 0]), e(4, 2)], &[e(4, 0), e(4, 3)]).unwrap();
    assert!(p.plus_ideal && p.minus_ideal);
    let t = decomposition_type(&g, &p).unwrap();
    assert_eq!(t.decoration, Decoration::Direct);
    assert_eq!(t.plus, Family::plain(R2));
    assert!(abelian_pair_two_step(&g, &p).unwrap());
}

#[test]
fn h4_types() {
    let g = make(H4, &[]).unwrap();
    let p = product_from_vectors(&g, &[e(4, 0), e(4, 1)], &[e(4, 2), e(4, 3)]).unwrap();
    let t = decomposition_type(&g, &p).unwrap();
    assert_eq!((t.plus.id, t.minus.id, t.decoration), (AffR, R2, Decoration::Double));
    // reflection through a plane that is not closed
    let bad = product_from_vectors(&g, &[vec_from_i64(&[1, 0, 1, 0]), e(4, 1)], &[e(4, 2), e(4, 3)]);
    assert!(matches!(bad, Err(ProductError::NotSubalgebra { side: "plus", .. })));
    let plus = [vec_from_i64(&[1, 0, 1, 0]), e(4, 1)];
    let cols: Vec<Vector> = plus.iter().cloned().chain([e(4, 2), e(4, 3)]).collect();
    let pm = Matrix::from_cols(&cols, 4);
    let em = pm.mul(&Matrix::diag(&[q(1), q(1), q(-1), q(-1)])).mul(&pm.inverse().unwrap());
    assert_eq!(is_integrable_product(&g, &em), Ok(false));
    assert_eq!(is_integrable_product(&g, &Matrix::identity(4)), Err(ProductError::TrivialInvolution));
}

#[test]
fn aff_aff_direct() {
    let g = make(AffRxAffR, &[]).unwrap();
    let p = product_from_vectors(&g, &[e(4, 0), e(4, 3)], &[e(4, 1), e(4, 2)]).unwrap();
    let t = decomposition_type(&g, &p).unwrap();
    assert_eq!((t.plus.id, t.minus.id, t.decoration), (AffR, AffR, Decoration::Direct));
}

#[test]
fn involution_round_trip() {
    let g = make(D4, &[]).unwrap();
    let p = product_from_vectors(&g, &[e(4, 0), e(4, 1)], &[e(4, 2), e(4, 3)]).unwrap();
    let back = product_from_involution(&g, &p.e).unwrap();
    assert_eq!(back, p);
}

#[test]
fn abelian_cells_are_unconstrained() {
    let g = make(R4, &[]).unwrap();
    for (_, s) in two_dim_subalgebra_cells(&g) {
        assert!(s.equations.is_empty());
    }
}

#[test]
fn d4p0_top_cell_matches_hand_system() {
    // u = e0 + a2 e2 + a3 e3... the top cell holds the closure equations of the hand computation
    let g = make(D4pLambda, &[q(0)]).unwrap();
    let cells = two_dim_subalgebra_cells(&g);
    let (c, s) = &cells[0];
    assert_eq!(c.pivots, vec![0, 1]);
    assert!(!s.equations.is_empty());
    assert!(polysys::solve(s).is_empty() || !polysys::solve(s).pieces().is_empty());
}

#[test]
fn integer_scan_matches_solver() {
    // R × h3: every integer point of every cell is closed iff some solved piece contains it
    let g = make(RxH3, &[]).unwrap();
    for (cell, s) in two_dim_subalgebra_cells(&g) {
        let sol = polysys::solve(&s);
        assert!(sol.is_decided(), "{}", cell.label());
        let k = cell.param_count();
        let total = 5usize.pow(k as u32);
        for mut idx in 0..total {
            let mut x = Vec::new();
            for _ in 0..k {
                x.push(q((idx % 5) as i64 - 2));
                idx /= 5;
            }
            let closed = g.is_subalgebra(&Subspace::span(4, &cell.rows_at(&x)));
            let covered = sol.pieces().iter().any(|p| p.contains(&x));
            assert_eq!(closed, covered, "{} at {:?}", cell.label(), x);
        }
    }
}

#[test]
fn d4p_forces_e3() {
    for l in [q(0), qf(1, 2), q(1), q(2)] {
        let g = make(D4pLambda, std::slice::from_ref(&l)).unwrap();
        let c = forced_vector_certificate(&g, &e(4, 3));
        assert_eq!(c.kind(), "ForcedVector", "λ = {l}: {}", c.summary(&g));
    }
    let g = make(R4, &[]).unwrap();
    assert_eq!(forced_vector_certificate(&g, &e(4, 0)).kind(), "Undecided");
}

#[test]
fn forced_systems_have_no_grid_points() {
    let g = make(D4pLambda, &[qf(1, 2)]).unwrap();
    let frame = frame_avoiding(&e(4, 3));
    let gf = g.transform(&frame).unwrap();
    for c in grass_cells(2, 4).into_iter().filter(|c| !c.pivots.contains(&3)) {
        for (_, s) in closure_systems(&gf, &c, None) {
            assert_eq!(polysys::oracle_search(&s), None);
        }
    }
}

#[test]
fn r4_aff_subalgebras_contain_e1() {
    let g = make(R4Gen, &[]).unwrap();
    let c = forced_vector_typed(&g, &e(4, 1), &[SubType::Aff], polysys::DEFAULT_BRANCH_BUDGET);
    assert_eq!(c.kind(), "ForcedVector", "{}", c.summary(&g));
}

#[test]
fn aff_search_examples() {
    let a = make(AffR, &[]).unwrap();
    let s = aff_subalgebra_search(&a, polysys::DEFAULT_BRANCH_BUDGET);
    assert!(s.pairs.contains(&(e(2, 0), e(2, 1))));
    for g in [make(RxH3, &[]).unwrap(), make(RxR3pLambda, &[q(2)]).unwrap(), make(N4, &[]).unwrap()] {
        let s = aff_subalgebra_search(&g, polysys::DEFAULT_BRANCH_BUDGET);
        assert!(s.empty(), "{:?}", s.solved.iter().map(|x| x.2.trace().to_vec()).collect::<Vec<_>>());
    }
}

#[test]
fn searches_with_filters() {
    let b = SearchBudget::default();
    let g = make(D4pLambda, &[q(1)]).unwrap();
    for t in PcType::ALL {
        let o = paracomplex_search(&g, t, &b).unwrap();
        assert!(o.found.is_empty());
        assert_eq!(o.certificate.kind(), "ForcedVector");
    }
    let g = make(R4Gen, &[]).unwrap();
    let o = paracomplex_search(&g, PcType::R2R2, &b).unwrap();
    assert!(o.certificate.decided_empty(), "{}", o.certificate.summary(&g));
    let g = make(AffC, &[]).unwrap();
    let o = paracomplex_search(&g, PcType::AffAff, &b).unwrap();
    assert!(o.certificate.decided_empty(), "{}", o.certificate.summary(&g));
    let o = paracomplex_search(&g, PcType::R2R2, &b).unwrap();
    assert!(!o.found.is_empty());
}
