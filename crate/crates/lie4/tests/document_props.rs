use lie4::catalog::grid_instances;
use lie4::classify::{identify, verify_isomorphism};
use lie4::io::{emit_document, parse_document, ReportDocument};
use lie4::rational::qf;
use lie4::report::{Check, Report};
use lie4::{Matrix, Vector};
use num::Zero;
use proptest::prelude::*;

fn basis_change(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec((-3i64..=3, 1i64..=3), n * n)
        .prop_map(move |e| {
            let rows: Vec<Vector> = e.chunks(n).map(|r| r.iter().map(|&(a, b)| qf(a, b)).collect()).collect();
            Matrix::from_rows(&rows)
        })
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn instance_and_change() -> impl Strategy<Value = (usize, Matrix)> {
    let n = grid_instances().len();
    (0..n).prop_flat_map(|k| {
        let d = grid_instances()[k].id.dim();
        (Just(k), basis_change(d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn emitted_documents_round_trip((k, p) in instance_and_change()) {
        let g = grid_instances()[k].make().unwrap().transform(&p).unwrap();
        let text = emit_document(&g);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(emit_document(&back), text);
    }

    #[test]
    fn identification_ignores_basis((k, p) in instance_and_change()) {
        let f = &grid_instances()[k];
        let g = f.make().unwrap();
        let h = parse_document(&emit_document(&g.transform(&p).unwrap())).unwrap();
        let r = identify(&h).unwrap();
        prop_assert_eq!(&r.family, f);
        prop_assert!(verify_isomorphism(&h, &g, &r.witness).unwrap());
    }

    #[test]
    fn report_counts_match_records(st in proptest::collection::vec(0u8..3, 0..40)) {
        let mut rep = Report::new("t");
        for (i, s) in st.iter().enumerate() {
            rep.push(match s {
                0 => Check::new(format!("c{i}"), true, "ok"),
                1 => Check::new(format!("c{i}"), false, "bad"),
                _ => Check::undecided(format!("c{i}"), "open"),
            });
        }
        let doc = ReportDocument::new("verify", "sha256:0".into(), None, &[rep]);
        prop_assert!(doc.consistent());
        let t = doc.totals();
        prop_assert_eq!(t.pass + t.fail + t.undecided, st.len());
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}
