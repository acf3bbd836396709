use lie4::polysys::{oracle_values, solve, verify_pieces, MPoly, PolySystem, Solution};
use lie4::rational::{q, Q};
use proptest::prelude::*;

fn linear(n: usize, c: &[i64]) -> MPoly {
    let mut p = MPoly::constant(n, q(c[0]));
    for i in 0..n {
        p = p.add(&MPoly::var(n, i).scale(&q(c[i + 1])));
    }
    p
}

fn grid_points(n: usize) -> Vec<Vec<Q>> {
    let vals = oracle_values();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| vals.iter().map(move |v| { let mut p = p.clone(); p.push(v.clone()); p })).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // systems built from products of linear forms, sums of squares and a side condition
    #[test]
    fn decided_answers_agree_with_grid(
        f in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 2..=4),
        shape in 0usize..3,
    ) {
        let n = 3;
        let mut s = PolySystem::new(vec!["x".into(), "y".into(), "z".into()]);
        let l: Vec<MPoly> = f.iter().map(|c| linear(n, c)).collect();
        match shape {
            0 => { s.equation(l[0].mul(&l[1])); s.equation(l[l.len() - 1].clone()); }
            1 => { s.equation(l[0].mul(&l[0]).add(&l[1].mul(&l[1]))); }
            _ => { s.equation(l[0].mul(&l[1]).sub(&MPoly::one(n))); s.nonzero(l[l.len() - 1].clone()); }
        }
        let sol = solve(&s);
        let pts: Vec<Vec<Q>> = grid_points(n).into_iter().filter(|x| s.satisfied_by(x)).collect();
        match &sol {
            Solution::Empty { .. } => prop_assert!(pts.is_empty(), "grid solution {:?} of {}", pts[0], s),
            Solution::Solved { pieces, .. } => {
                prop_assert!(verify_pieces(&s, &sol));
                for x in &pts {
                    prop_assert!(pieces.iter().any(|p| p.contains(x)), "{:?} not covered for {}", x, s);
                }
            }
            Solution::Undecided { .. } => {}
        }
    }
}
