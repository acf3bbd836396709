//! Replays of the printed decomposition tables and the semidirect-extension statements.

use super::*;
use crate::catalog::{FamilyId, FamilyId::*};
use crate::report::{Check, Report};
use crate::rational::{qf, to_text};

fn e(i: usize) -> Vector {
    unit(4, i)
}

/// Σ c·e_i
fn lin(terms: &[(usize, Q)]) -> Vector {
    let mut v = vec![Q::zero(); 4];
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

fn params_text(p: &[Q]) -> String {
    if p.is_empty() {
        String::new()
    } else {
        format!("({})", p.iter().map(to_text).collect::<Vec<_>>().join(","))
    }
}

/// How a printed decoration is read: × both sides ideals, ⋉ exactly the right side an ideal,
/// ⋈ the right side not an ideal (the left side may or may not be one).
pub fn decoration_consistent(printed: Decoration, computed: Decoration) -> bool {
    match printed {
        Decoration::Direct => computed == Decoration::Direct,
        Decoration::SemiRight => computed == Decoration::SemiRight,
        Decoration::SemiLeft => computed == Decoration::SemiLeft,
        Decoration::Double => matches!(computed, Decoration::Double | Decoration::SemiLeft),
    }
}

/// One printed decomposition, with accepted alternatives (sign conventions).
#[derive(Clone, Debug)]
pub struct Printed {
    pub plus: Vec<Vector>,
    pub minus: Vec<Vector>,
    pub decoration: Decoration,
    pub alternatives: Vec<(Vec<Vector>, Vec<Vector>)>,
}

fn pr(plus: Vec<Vector>, minus: Vec<Vector>, decoration: Decoration) -> Option<Printed> {
    Some(Printed { plus, minus, decoration, alternatives: vec![] })
}

pub struct PcRow {
    pub label: &'static str,
    pub family: FamilyId,
    pub samples: Vec<Vec<Q>>,
    /// columns R2⋈R2, aff⋈R2, aff⋈aff; None is a printed "no"
    pub cells: fn(&[Q]) -> [Option<Printed>; 3],
}

use Decoration::{Direct as X, Double as B, SemiRight as S};

fn split01_23(d: Decoration) -> Option<Printed> {
    pr(vec![e(0), e(1)], vec![e(2), e(3)], d)
}

pub fn table_pc_rows() -> Vec<PcRow> {
    let ps = |xs: &[Q]| xs.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>();
    vec![
        PcRow { label: "R4", family: R4, samples: vec![vec![]], cells: |_| [split01_23(X), None, None] },
        PcRow {
            label: "aff x aff",
            family: AffRxAffR,
            samples: vec![vec![]],
            cells: |_| {
                [
                    split01_23(S),
                    pr(vec![lin(&[(1, q(1)), (3, q(1))]), e(2)], vec![e(0), e(1)], B),
                    pr(vec![e(0), e(3)], vec![e(1), e(2)], X),
                ]
            },
        },
        PcRow {
            label: "R x h3",
            family: RxH3,
            samples: vec![vec![]],
            cells: |_| [pr(vec![e(0), e(2)], vec![e(1), e(3)], S), None, None],
        },
        PcRow {
            label: "R x r3",
            family: RxR3Gen,
            samples: vec![vec![]],
            cells: |_| [split01_23(S), pr(vec![e(1), e(2)], vec![e(0), e(3)], B), None],
        },
        PcRow {
            label: "R x r3,l (l != 0)",
            family: RxR3Lambda,
            samples: ps(&[q(-1), qf(-1, 2), qf(1, 3), q(1)]),
            cells: |p| {
                let l = &p[0];
                let mut aa = Printed {
                    plus: vec![lin(&[(0, q(1)), (1, q(1))]), e(2)],
                    minus: vec![lin(&[(1, q(1)), (0, -l.clone())]), e(3)],
                    decoration: B,
                    alternatives: vec![],
                };
                // the other sign convention for the generator acting on e3
                aa.alternatives.push((aa.plus.clone(), vec![lin(&[(1, q(1)), (0, l.clone())]), e(3)]));
                [split01_23(S), pr(vec![e(1), e(2)], vec![e(0), e(3)], S), Some(aa)]
            },
        },
        PcRow {
            label: "R x r3,0",
            family: RxR3Lambda,
            samples: vec![vec![q(0)]],
            cells: |_| [split01_23(S), pr(vec![e(1), e(2)], vec![e(0), e(3)], X), None],
        },
        PcRow {
            label: "R x r'3,l",
            family: RxR3pLambda,
            samples: ps(&[q(0), qf(1, 2), q(2)]),
            cells: |_| [split01_23(S), None, None],
        },
        PcRow {
            label: "n4",
            family: N4,
            samples: vec![vec![]],
            cells: |_| [pr(vec![e(0), e(3)], vec![e(1), e(2)], B), None, None],
        },
        PcRow {
            label: "aff(C)",
            family: AffC,
            samples: vec![vec![]],
            cells: |_| {
                [
                    split01_23(S),
                    pr(vec![e(0), e(2)], vec![lin(&[(0, q(1)), (3, q(-1))]), lin(&[(1, q(1)), (2, q(1))])], B),
                    None,
                ]
            },
        },
        PcRow { label: "r4", family: R4Gen, samples: vec![vec![]], cells: |_| [None, split01_23(B), None] },
        PcRow {
            label: "r4,l (l != 0)",
            family: R4Lambda,
            samples: ps(&[q(-2), q(-1), qf(1, 2), q(1), q(3)]),
            cells: |p| {
                let l = p[0].clone();
                [None, split01_23(S), pr(vec![e(0), e(1)], vec![lin(&[(0, q(1)), (3, l)]), e(2)], B)]
            },
        },
        PcRow {
            label: "r4,0",
            family: R4Lambda,
            samples: vec![vec![q(0)]],
            cells: |_| [pr(vec![e(0), e(2)], vec![e(1), e(3)], B), split01_23(S), None],
        },
        PcRow {
            label: "r4,m,l",
            family: R4MuLambda,
            samples: vec![
                vec![qf(-1, 2), qf(1, 2)],
                vec![qf(1, 2), q(1)],
                vec![q(-1), qf(-1, 2)],
                vec![q(1), q(1)],
            ],
            cells: |_| {
                [
                    None,
                    split01_23(S),
                    pr(vec![lin(&[(0, q(1)), (1, q(-1))]), e(2)], vec![lin(&[(0, q(1)), (1, q(1))]), e(3)], B),
                ]
            },
        },
        PcRow {
            label: "r'4,m,l",
            family: R4pMuLambda,
            samples: vec![vec![q(1), q(0)], vec![q(2), q(1)], vec![qf(1, 2), q(-1)]],
            cells: |_| [None, split01_23(S), None],
        },
        PcRow {
            label: "d4",
            family: D4,
            samples: vec![vec![]],
            cells: |_| {
                [
                    None,
                    split01_23(S),
                    pr(
                        vec![lin(&[(0, q(1)), (2, q(1))]), lin(&[(1, q(1)), (3, q(-1))])],
                        vec![lin(&[(0, q(1)), (2, q(-1))]), lin(&[(1, q(1)), (3, q(1))])],
                        B,
                    ),
                ]
            },
        },
        PcRow {
            label: "d4,l (l != 1)",
            family: D4Lambda,
            samples: ps(&[qf(1, 2), qf(3, 4), q(2), q(5)]),
            cells: |p| {
                let l = p[0].clone();
                [
                    None,
                    split01_23(S),
                    pr(
                        vec![e(0), e(3)],
                        vec![lin(&[(0, q(1)), (2, l.clone())]), lin(&[(1, q(1) - &l), (3, l)])],
                        B,
                    ),
                ]
            },
        },
        PcRow {
            label: "d4,1",
            family: D4Lambda,
            samples: vec![vec![q(1)]],
            cells: |_| {
                [
                    pr(vec![e(0), e(2)], vec![e(1), e(3)], S),
                    split01_23(S),
                    pr(vec![e(0), e(1)], vec![lin(&[(0, q(1)), (2, q(1))]), e(3)], B),
                ]
            },
        },
        PcRow {
            label: "d'4,l",
            family: D4pLambda,
            samples: ps(&[q(0), qf(1, 2), q(1), q(2)]),
            cells: |_| [None, None, None],
        },
        PcRow {
            label: "h4",
            family: H4,
            samples: vec![vec![]],
            cells: |_| {
                [
                    None,
                    split01_23(B),
                    pr(vec![e(0), e(3)], vec![lin(&[(0, q(1)), (2, q(-1))]), lin(&[(1, q(1)), (3, q(-1))])], B),
                ]
            },
        },
    ]
}

/// Check one printed decomposition: closure, complementarity, side types, decoration.
pub fn check_printed(g: &LieAlgebra, printed: &Printed, col: PcType) -> Result<(ProductStructure, String), String> {
    let mut attempts = vec![(printed.plus.clone(), printed.minus.clone())];
    attempts.extend(printed.alternatives.iter().cloned());
    let mut last = String::new();
    for (k, (plus, minus)) in attempts.iter().enumerate() {
        match product_from_vectors(g, plus, minus) {
            Ok(p) => {
                let t = decomposition_type(g, &p).map_err(|e| e.to_string())?;
                let (want_l, want_r) = col.sides();
                let got_l = SubType::of(g, &p.plus);
                let got_r = SubType::of(g, &p.minus);
                if (got_l, got_r) != (want_l, want_r) {
                    last = format!("types {} / {}", got_l.name(), got_r.name());
                    continue;
                }
                if !decoration_consistent(printed.decoration, t.decoration) {
                    last = format!("printed {} but computed {}", printed.decoration.symbol(), t.decoration.symbol());
                    continue;
                }
                let note = if k > 0 { " (alternative sign convention)" } else { "" };
                return Ok((p, format!("{t}{note}")));
            }
            Err(err) => last = err.to_string(),
        }
    }
    Err(last)
}

fn instance(id: FamilyId, p: &[Q]) -> String {
    format!("{}{}", id.name(), params_text(p))
}

pub fn verify_table_pc(budget: &SearchBudget) -> Report {
    let mut rep = Report::new("pc");
    let rows = table_pc_rows();
    let mut jobs = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        for s in &row.samples {
            for (ci, col) in PcType::ALL.iter().enumerate() {
                jobs.push((ri, s.clone(), ci, *col));
            }
        }
    }
    let checks = par::map(&jobs, |(ri, s, ci, col)| {
        let row = &rows[*ri];
        let id = format!("pc/{}/{}", instance(row.family, s), col.tag());
        let g = match crate::catalog::make(row.family, s) {
            Ok(g) => g,
            Err(err) => return vec![Check::new(id, false, err.to_string())],
        };
        let cells = (row.cells)(s);
        match &cells[*ci] {
            Some(printed) => match check_printed(&g, printed, *col) {
                Ok((p, t)) => {
                    let mut out = vec![Check::new(id.clone(), true, t)];
                    if *col == PcType::R2R2 {
                        let ok = abelian_pair_two_step(&g, &p).unwrap_or(false);
                        out.push(Check::new(format!("{id}/two-step"), ok, "[g',g'] = 0"));
                    }
                    out
                }
                Err(why) => vec![Check::new(id, false, why)],
            },
            None => match paracomplex_search(&g, *col, budget) {
                Ok(o) if !o.found.is_empty() => {
                    let t = decomposition_type(&g, &o.found[0]).map(|t| t.to_string()).unwrap_or_default();
                    vec![Check::new(id, false, format!("printed no, but found {t}"))]
                }
                Ok(o) if o.certificate.decided_empty() => {
                    vec![Check::new(id, true, format!("no: {} [{}]", o.certificate.summary(&g), o.certificate.kind()))]
                }
                Ok(o) => vec![Check::undecided(id, o.certificate.summary(&g))],
                Err(err) => vec![Check::undecided(id, err.to_string())],
            },
        }
    });
    rep.extend(checks.into_iter().flatten());
    rep
}

/// Row headers of the 1+3 table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Row13 {
    R3,
    H3,
    R3Gen,
    R3Zero,
    R3pZero,
    R3Lambda,
    R3pLambda,
}

impl Row13 {
    pub fn label(self) -> &'static str {
        match self {
            Row13::R3 => "R x R3",
            Row13::H3 => "R x h3",
            Row13::R3Gen => "R x r3",
            Row13::R3Zero => "R x r3,0",
            Row13::R3pZero => "R x r'3,0",
            Row13::R3Lambda => "R x r3,l",
            Row13::R3pLambda => "R x r'3,l",
        }
    }
}

pub struct Bullet {
    pub row: Row13,
    pub family: FamilyId,
    pub params: Vec<Q>,
    pub one: Vector,
    pub three: Vec<Vector>,
    pub decoration: Decoration,
    /// three-dimensional part as printed (possibly outside the normalized range)
    pub expected: (FamilyId, Vec<Q>),
}

fn b(row: Row13, family: FamilyId, params: Vec<Q>, one: usize, three: Vec<Vector>, d: Decoration, expected: (FamilyId, Vec<Q>)) -> Bullet {
    Bullet { row, family, params, one: e(one), three, decoration: d, expected }
}

pub fn table_13_bullets() -> Vec<Bullet> {
    use Row13 as R;
    let mut v = vec![
        b(R::R3, R4, vec![], 0, vec![e(1), e(2), e(3)], X, (FamilyId::R3, vec![])),
        b(R::H3, R4Lambda, vec![q(0)], 1, vec![e(0), e(2), e(3)], B, (H3, vec![])),
        b(R::R3Gen, R4Gen, vec![], 3, vec![e(0), e(1), e(2)], B, (R3Gen, vec![])),
        b(R::R3Gen, D4Lambda, vec![q(1)], 0, vec![lin(&[(0, q(1)), (2, q(1))]), e(1), e(3)], S, (R3Gen, vec![])),
        b(R::R3Zero, AffRxAffR, vec![], 0, vec![e(1), e(2), e(3)], S, (R3Lambda, vec![q(0)])),
        b(R::R3Zero, R4Lambda, vec![q(0)], 3, vec![e(0), e(1), e(2)], S, (R3Lambda, vec![q(0)])),
        b(R::R3Zero, D4, vec![], 2, vec![e(0), e(1), e(3)], B, (R3Lambda, vec![q(0)])),
        b(R::R3Zero, D4Lambda, vec![q(1)], 1, vec![e(0), e(2), e(3)], B, (R3Lambda, vec![q(0)])),
        b(R::R3pZero, AffC, vec![], 0, vec![e(1), e(2), e(3)], S, (R3pLambda, vec![q(0)])),
        b(R::R3Lambda, H4, vec![], 2, vec![e(0), e(1), e(3)], B, (R3Lambda, vec![q(2)])),
        b(R::R3Lambda, AffC, vec![], 1, vec![e(0), e(2), e(3)], S, (R3Lambda, vec![q(1)])),
    ];
    for l in [q(-2), qf(1, 2), q(1), q(3)] {
        v.push(b(R::R3Gen, R4Lambda, vec![l.clone()], 1, vec![e(0), e(2), e(3)], B, (R3Gen, vec![])));
    }
    for l in [q(-2), qf(1, 2), q(1), q(3)] {
        v.push(b(R::R3Lambda, R4Lambda, vec![l.clone()], 3, vec![e(0), e(1), e(2)], B, (R3Lambda, vec![l])));
    }
    for (m, l) in [(qf(-1, 2), qf(1, 2)), (qf(1, 3), qf(1, 2)), (q(-1), qf(-1, 2)), (qf(1, 2), q(1))] {
        let p = vec![m.clone(), l.clone()];
        v.push(b(R::R3Lambda, R4MuLambda, p.clone(), 2, vec![e(0), e(1), e(3)], B, (R3Lambda, vec![l])));
        v.push(b(R::R3Lambda, R4MuLambda, p, 3, vec![e(0), e(1), e(2)], B, (R3Lambda, vec![m])));
    }
    for l in [qf(1, 2), qf(3, 4), q(2), q(5)] {
        v.push(b(R::R3Lambda, D4Lambda, vec![l.clone()], 2, vec![e(0), e(1), e(3)], B, (R3Lambda, vec![l.clone()])));
        // the same algebra read as d4,1−κ with κ = 1 − l
        v.push(b(R::R3Lambda, D4Lambda, vec![l.clone()], 1, vec![e(0), e(2), e(3)], B, (R3Lambda, vec![q(1) - &l])));
    }
    for l in [q(0), qf(1, 2), q(2), q(-1)] {
        let three = vec![lin(&[(0, l.clone()), (1, q(-1))]), e(2), e(3)];
        v.push(b(R::R3pLambda, AffC, vec![], 0, three, S, (R3pLambda, vec![l])));
    }
    for (m, l) in [(q(1), q(0)), (q(2), q(1)), (qf(1, 2), q(-1))] {
        v.push(b(R::R3pLambda, R4pMuLambda, vec![m, l.clone()], 1, vec![e(0), e(2), e(3)], B, (R3pLambda, vec![l])));
    }
    v
}

fn canonical3(id: FamilyId, p: &[Q]) -> Result<Family, String> {
    classify::canonicalize(id, p).map(|r| r.family).map_err(|e| e.to_string())
}

/// A three-dimensional subalgebra of the given type: the hinted subspaces first, then kernels
/// of small integer functionals.
pub fn find_three_dim_subalgebra(g: &LieAlgebra, target: &Family, hints: &[Subspace]) -> Option<Subspace> {
    let n = g.dim();
    let mut cands: Vec<Subspace> = hints.to_vec();
    let r: Vec<i64> = (-2..=2).collect();
    for a in &r {
        for b2 in &r {
            for c in &r {
                for d in &r {
                    let phi = vec![q(*a), q(*b2), q(*c), q(*d)];
                    let first = phi.iter().find(|x| !x.is_zero());
                    if first.is_none_or(|x| x.is_negative()) {
                        continue;
                    }
                    cands.push(Subspace::span(n, &Matrix::from_rows(&[phi]).kernel()));
                }
            }
        }
    }
    cands.into_iter().find(|s| {
        g.is_subalgebra(s)
            && g.restrict(s).ok().and_then(|h| classify::identify3(&h).ok()).is_some_and(|r| r.family == *target)
    })
}

use num::Signed;

/// Row members of the 1+3 table with the three-dimensional type each must contain.
pub fn table_13_members() -> Vec<(Row13, FamilyId, Vec<Q>, (FamilyId, Vec<Q>))> {
    use Row13 as R;
    let l3 = || vec![qf(1, 3)];
    let r3 = |x: Q| (R3Lambda, vec![x]);
    let rp = |x: Q| (R3pLambda, vec![x]);
    let abel = || (FamilyId::R3, vec![]);
    vec![
        (R::R3, R4, vec![], abel()),
        (R::R3, RxH3, vec![], abel()),
        (R::R3, RxR3Gen, vec![], abel()),
        (R::R3, RxR3Lambda, l3(), abel()),
        (R::R3, RxR3pLambda, vec![qf(1, 2)], abel()),
        (R::R3, N4, vec![], abel()),
        (R::R3, R4Gen, vec![], abel()),
        (R::R3, R4Lambda, vec![qf(1, 2)], abel()),
        (R::R3, R4MuLambda, vec![qf(1, 2), q(1)], abel()),
        (R::R3, R4pMuLambda, vec![q(2), q(1)], abel()),
        (R::H3, RxH3, vec![], (H3, vec![])),
        (R::H3, N4, vec![], (H3, vec![])),
        (R::H3, R4Lambda, vec![q(0)], (H3, vec![])),
        (R::H3, D4, vec![], (H3, vec![])),
        (R::H3, D4Lambda, vec![qf(3, 4)], (H3, vec![])),
        (R::H3, D4pLambda, vec![qf(1, 2)], (H3, vec![])),
        (R::H3, H4, vec![], (H3, vec![])),
        (R::R3Gen, RxR3Gen, vec![], (R3Gen, vec![])),
        (R::R3Gen, R4Gen, vec![], (R3Gen, vec![])),
        (R::R3Gen, R4Lambda, vec![q(2)], (R3Gen, vec![])),
        (R::R3Gen, D4Lambda, vec![q(1)], (R3Gen, vec![])),
        (R::R3Zero, RxR3Lambda, l3(), r3(q(0))),
        (R::R3Zero, AffRxAffR, vec![], r3(q(0))),
        (R::R3Zero, R4Lambda, vec![q(0)], r3(q(0))),
        (R::R3Zero, D4, vec![], r3(q(0))),
        (R::R3Zero, D4Lambda, vec![q(1)], r3(q(0))),
        (R::R3pZero, RxR3pLambda, vec![q(0)], rp(q(0))),
        (R::R3pZero, AffC, vec![], rp(q(0))),
        (R::R3Lambda, RxR3Lambda, l3(), r3(qf(1, 3))),
        (R::R3Lambda, AffRxAffR, vec![], r3(q(-1))),
        (R::R3Lambda, AffC, vec![], r3(q(1))),
        (R::R3Lambda, R4Lambda, vec![q(2)], r3(q(2))),
        (R::R3Lambda, R4MuLambda, vec![qf(1, 3), qf(1, 2)], r3(qf(1, 2))),
        (R::R3Lambda, H4, vec![], r3(q(2))),
        (R::R3Lambda, D4Lambda, vec![qf(3, 4)], r3(qf(3, 4))),
        (R::R3Lambda, D4Lambda, vec![qf(3, 4)], r3(qf(1, 4))),
        (R::R3pLambda, RxR3pLambda, vec![q(2)], rp(q(2))),
        (R::R3pLambda, AffC, vec![], rp(qf(1, 2))),
        (R::R3pLambda, AffC, vec![], rp(q(2))),
        (R::R3pLambda, R4pMuLambda, vec![q(2), q(1)], rp(q(1))),
    ]
}

pub fn verify_table_13() -> Report {
    let mut rep = Report::new("13");
    let bullets = table_13_bullets();
    let checks = par::map(&bullets, |bl| {
        let three: Vec<String> = bl.three.iter().map(|v| crate::rational::VecDisplay(v).to_string()).collect();
        let id = format!(
            "13/{}/{}/<{}>+<{}>",
            bl.row.label(),
            instance(bl.family, &bl.params),
            crate::rational::VecDisplay(&bl.one),
            three.join(", ")
        );
        let run = || -> Result<String, String> {
            let g = crate::catalog::make(bl.family, &bl.params).map_err(|e| e.to_string())?;
            let p = product_from_vectors(&g, std::slice::from_ref(&bl.one), &bl.three).map_err(|e| e.to_string())?;
            let h = classify::identify3(&g.restrict(&p.minus).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let want = canonical3(bl.expected.0, &bl.expected.1)?;
            if h.family != want {
                return Err(format!("3-dim part is {} but expected {}", h.family, want));
            }
            let row_ok = match bl.row {
                Row13::R3 => want.id == FamilyId::R3,
                Row13::H3 => want.id == H3,
                Row13::R3Gen => want.id == R3Gen,
                Row13::R3Zero => want == Family::new(R3Lambda, vec![q(0)]),
                Row13::R3pZero => want == Family::new(R3pLambda, vec![q(0)]),
                Row13::R3Lambda => want.id == R3Lambda,
                Row13::R3pLambda => want.id == R3pLambda,
            };
            if !row_ok {
                return Err(format!("{} does not belong to row {}", want, bl.row.label()));
            }
            let d = Decoration::of(p.plus_ideal, p.minus_ideal);
            if !decoration_consistent(bl.decoration, d) {
                return Err(format!("printed {} but computed {}", bl.decoration.symbol(), d.symbol()));
            }
            Ok(format!("R {} {}", d.symbol(), h.family))
        };
        match run() {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        }
    });
    rep.extend(checks);
    let members = table_13_members();
    let checks = par::map(&members, |(row, fam, p, (tid, tp))| {
        let id = format!("13/member/{}/{}/{}", row.label(), instance(*fam, p), instance(*tid, tp));
        let run = || -> Result<String, String> {
            let g = crate::catalog::make(*fam, p).map_err(|e| e.to_string())?;
            let want = canonical3(*tid, tp)?;
            let hints: Vec<Subspace> = bullets
                .iter()
                .filter(|b| b.family == *fam && b.params == *p)
                .map(|b| Subspace::span(4, &b.three))
                .collect();
            let s = find_three_dim_subalgebra(&g, &want, &hints).ok_or_else(|| format!("no subalgebra of type {want} found"))?;
            Ok(format!("{want} = {:?}", s))
        };
        match run() {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        }
    });
    rep.extend(checks);
    rep
}

/// ρ(x) = diag(α+1/2, α−1/2), ρ(y) = [[0,1],[0,0]] on ⟨b1, b2⟩; basis (x, y, b1, b2).
pub fn make_g_alpha(alpha: &Q) -> (LieAlgebra, Family) {
    let h = qf(1, 2);
    let g = LieAlgebra::from_sparse(
        4,
        &[
            (0, 1, vec![(1, q(1))]),
            (0, 2, vec![(2, alpha + &h)]),
            (0, 3, vec![(3, alpha - &h)]),
            (1, 3, vec![(2, q(1))]),
        ],
    )
    .expect("g_alpha satisfies Jacobi");
    let expected = if *alpha == -h.clone() {
        Family::plain(D4)
    } else if *alpha == h {
        Family::new(D4Lambda, vec![q(1)])
    } else if (*alpha > -h.clone() && *alpha < h) || (*alpha > h && *alpha <= qf(3, 2)) {
        Family::new(D4Lambda, vec![q(2) / (q(2) * alpha + q(1))])
    } else {
        Family::new(D4Lambda, vec![(alpha - &h) / (alpha + &h)])
    };
    (g, expected)
}

/// Extension of ℝ² by aff(ℝ) = ⟨x, y⟩ with ρ(y) = 0 and the given ρ(x); basis (x, y, b1, b2).
pub fn extension_rank_one(rho_x: [[Q; 2]; 2]) -> LieAlgebra {
    let col = |j: usize| -> Vec<(usize, Q)> {
        (0..2).filter(|&i| !rho_x[i][j].is_zero()).map(|i| (2 + i, rho_x[i][j].clone())).collect()
    };
    let mut entries = vec![(0, 1, vec![(1, q(1))])];
    for j in 0..2 {
        let c = col(j);
        if !c.is_empty() {
            entries.push((0, 2 + j, c));
        }
    }
    LieAlgebra::from_sparse(4, &entries).expect("ρ(y) = 0 is a representation")
}

/// Extension of aff(ℝ) = ⟨z, w⟩ by ⟨x, y⟩; basis (x, y, z, w), ρ(u)z = a_u w, ρ(u)w = b_u w.
fn extension_of_aff(quotient_aff: bool, rx: (Q, Q), ry: (Q, Q)) -> Result<LieAlgebra, AlgebraError> {
    let mut entries: Vec<(usize, usize, Vec<(usize, Q)>)> = vec![(2, 3, vec![(3, q(1))])];
    if quotient_aff {
        entries.push((0, 1, vec![(1, q(1))]));
    }
    for (u, (a, b2)) in [(0usize, rx), (1usize, ry)] {
        if !a.is_zero() {
            entries.push((u, 2, vec![(3, a)]));
        }
        if !b2.is_zero() {
            entries.push((u, 3, vec![(3, b2)]));
        }
    }
    LieAlgebra::from_sparse(4, &entries)
}

fn vx(c: &[(usize, Q)]) -> Vector {
    lin(c)
}

/// Two complementary ideals of the stated types, and the identification of the whole.
fn check_direct(g: &LieAlgebra, a: &[Vector], b2: &[Vector], types: (SubType, SubType), whole: &Family) -> Result<String, String> {
    let p = product_from_vectors(g, a, b2).map_err(|e| e.to_string())?;
    if !(p.plus_ideal && p.minus_ideal) {
        return Err("sides are not both ideals".into());
    }
    if (SubType::of(g, &p.plus), SubType::of(g, &p.minus)) != types {
        return Err("side types differ".into());
    }
    let id = classify::identify(g).map_err(|e| e.to_string())?;
    if id.family != *whole {
        return Err(format!("identifies as {} not {}", id.family, whole));
    }
    Ok(format!("{whole}"))
}

pub fn g_alpha_samples() -> Vec<Q> {
    vec![qf(-1, 2), qf(1, 2), q(1), q(-1), q(2), qf(3, 2), q(0), qf(-1, 4)]
}

pub fn verify_semidirect_props() -> Report {
    let mut rep = Report::new("semidirect");
    let rows = table_pc_rows();
    // (i): R² ⋉ R² from the first column; (ii): aff ⋉ R² from the second
    let listed: [(PcType, &[&str]); 2] = [
        (PcType::R2R2, &["R4", "aff x aff", "R x h3", "R x r3", "R x r3,l (l != 0)", "R x r3,0", "R x r'3,l", "aff(C)", "d4,1"]),
        (PcType::AffR2, &["R x r3,l (l != 0)", "R x r3,0", "r4,l (l != 0)", "r4,0", "r4,m,l", "r'4,m,l", "d4", "d4,l (l != 1)", "d4,1"]),
    ];
    for (col, labels) in listed {
        let ci = PcType::ALL.iter().position(|c| *c == col).unwrap();
        for label in labels {
            let row = rows.iter().find(|r| r.label == *label).expect("row exists");
            for s in &row.samples {
                let id = format!("semidirect/{}/{}", col.tag(), instance(row.family, s));
                let g = crate::catalog::make(row.family, s).expect("sample in range");
                let res = match &(row.cells)(s)[ci] {
                    Some(pr) => product_from_vectors(&g, &pr.plus, &pr.minus).map_err(|e| e.to_string()).and_then(|p| {
                        if p.minus_ideal && g.is_abelian_subspace(&p.minus) {
                            Ok(format!("{} with ideal {:?}", decomposition_type(&g, &p).map(|t| t.to_string()).unwrap_or_default(), p.minus))
                        } else {
                            Err("right side is not an abelian ideal".into())
                        }
                    }),
                    None => Err("no printed decomposition".into()),
                };
                rep.push(match res {
                    Ok(s) => Check::new(id, true, s),
                    Err(s) => Check::new(id, false, s),
                });
            }
        }
    }
    // n4 and r4,0: g′ ≅ R² is the only candidate ideal and has no abelian complement subalgebra
    for (fam, p) in [(N4, vec![]), (R4Lambda, vec![q(0)])] {
        let id = format!("semidirect/r2r2-excluded/{}", instance(fam, &p));
        let g = crate::catalog::make(fam, &p).unwrap();
        let d = g.derived();
        let ok = d.dim() == 2 && g.is_abelian_subspace(&d) && abelian_complement_empty(&g, &d);
        rep.push(Check::new(id, ok, "g' = R2 has no abelian complementary subalgebra"));
    }
    for a in g_alpha_samples() {
        let (g, want) = make_g_alpha(&a);
        let id = format!("semidirect/g_alpha/{}", to_text(&a));
        rep.push(match classify::identify(&g) {
            Ok(r) => Check::new(id, r.family == want && r.verified, format!("identified {} expected {}", r.family, want)),
            Err(e) => Check::new(id, false, e.to_string()),
        });
    }
    // dim Im ρ = 1
    let rank_one: Vec<(String, [[Q; 2]; 2], (FamilyId, Vec<Q>))> = vec![
        ("diag(0,1/2)".into(), [[q(0), q(0)], [q(0), qf(1, 2)]], (RxR3Lambda, vec![qf(1, 2)])),
        ("diag(0,-1)".into(), [[q(0), q(0)], [q(0), q(-1)]], (RxR3Lambda, vec![q(-1)])),
        ("diag(1/2,1)".into(), [[qf(1, 2), q(0)], [q(0), q(1)]], (R4MuLambda, vec![qf(1, 2), q(1)])),
        ("diag(2,1/3)".into(), [[q(2), q(0)], [q(0), qf(1, 3)]], (R4MuLambda, vec![q(2), qf(1, 3)])),
        ("jordan(2)".into(), [[q(2), q(1)], [q(0), q(2)]], (R4Lambda, vec![q(2)])),
        ("jordan(0)".into(), [[q(0), q(1)], [q(0), q(0)]], (R4Lambda, vec![q(0)])),
        ("rot(1,1)".into(), [[q(1), q(1)], [q(-1), q(1)]], (R4pMuLambda, vec![q(1), q(1)])),
        ("rot(0,2)".into(), [[q(0), q(2)], [q(-2), q(0)]], (R4pMuLambda, vec![qf(1, 2), q(0)])),
        ("rot(1,-1)".into(), [[q(1), q(-1)], [q(1), q(1)]], (R4pMuLambda, vec![q(-1), q(-1)])),
    ];
    for (name, rho, (fid, fp)) in rank_one {
        let id = format!("semidirect/rank-one/{name}");
        let g = extension_rank_one(rho);
        let res = canonical3(fid, &fp).and_then(|want| {
            let got = classify::identify(&g).map_err(|e| e.to_string())?;
            if got.family == want && got.verified {
                Ok(format!("{want}"))
            } else {
                Err(format!("identified {} expected {}", got.family, want))
            }
        });
        rep.push(match res {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        });
    }
    // extensions of aff(ℝ): basis x, y, z, w
    let (x, y, z, w) = (0usize, 1usize, 2usize, 3usize);
    let r2_aff = Family::new(RxR3Lambda, vec![q(0)]);
    let aff_aff = Family::plain(AffRxAffR);
    let cases_i = [(q(0), q(0)), (q(0), q(1)), (q(1), q(0))];
    for (a, b2) in cases_i {
        let id = format!("semidirect/aff-ideal/R2/({},{})", to_text(&a), to_text(&b2));
        let g = extension_of_aff(false, (a.clone(), b2.clone()), (q(0), q(0))).unwrap();
        let first = if !b2.is_zero() {
            vec![vx(&[(x, q(1)), (z, -b2.clone())]), e(y)]
        } else {
            vec![vx(&[(x, q(1)), (w, a.clone())]), e(y)]
        };
        let res = check_direct(&g, &first, &[e(z), e(w)], (SubType::Abelian, SubType::Aff), &r2_aff);
        rep.push(match res {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        });
    }
    for a in [q(0), q(1), q(-2)] {
        let id = format!("semidirect/aff-ideal/aff/case1/a={}", to_text(&a));
        let res = extension_of_aff(true, (a.clone(), q(1)), (q(1), q(0))).map_err(|e| e.to_string()).and_then(|g| {
            check_direct(
                &g,
                &[vx(&[(x, q(1)), (z, q(-1)), (w, a.clone())]), vx(&[(y, q(1)), (w, q(1))])],
                &[vx(&[(z, q(1)), (w, -a.clone())]), e(w)],
                (SubType::Aff, SubType::Aff),
                &aff_aff,
            )
        });
        rep.push(match res {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        });
    }
    for (a, b2) in [(q(1), q(0)), (q(0), q(1)), (q(2), q(3)), (q(0), q(0))] {
        let id = format!("semidirect/aff-ideal/aff/case2/({},{})", to_text(&a), to_text(&b2));
        let res = extension_of_aff(true, (a.clone(), b2.clone()), (q(0), q(0))).map_err(|e| e.to_string()).and_then(|g| {
            check_direct(
                &g,
                &[vx(&[(x, q(1)), (z, -b2.clone()), (w, a.clone())]), e(y)],
                &[e(z), e(w)],
                (SubType::Aff, SubType::Aff),
                &aff_aff,
            )
        });
        rep.push(match res {
            Ok(s) => Check::new(id, true, s),
            Err(s) => Check::new(id, false, s),
        });
    }
    rep
}

/// No abelian subalgebra ⟨c1 + u, c2 + v⟩ (u, v ∈ b) complements the ideal b.
pub fn abelian_complement_empty(g: &LieAlgebra, b2: &Subspace) -> bool {
    let n = g.dim();
    let comp: Vec<usize> = b2.complement_units();
    let k = b2.dim();
    let names: Vec<String> = (0..comp.len()).flat_map(|i| (0..k).map(move |j| format!("u{i}_{j}"))).collect();
    let nv = names.len();
    let gens: Vec<Vec<MPoly>> = comp
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let mut v = vec![MPoly::zero(nv); n];
            v[c] = MPoly::one(nv);
            for (j, bv) in b2.basis().iter().enumerate() {
                let t = MPoly::var(nv, i * k + j);
                for (m, x) in bv.iter().enumerate() {
                    if !x.is_zero() {
                        v[m] = v[m].add(&t.scale(x));
                    }
                }
            }
            v
        })
        .collect();
    let mut s = PolySystem::new(names);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for c in symbolic_bracket(g, &gens[i], &gens[j]) {
                s.equation(c);
            }
        }
    }
    polysys::solve(&s).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(rep: &Report) {
        for c in rep.problems() {
            eprintln!("{} {:?} {}", c.id, c.status, c.detail);
        }
    }

    #[test]
    fn table_13_replays() {
        let rep = verify_table_13();
        show(&rep);
        assert!(rep.passed());
    }

    #[test]
    fn semidirect_statements() {
        let rep = verify_semidirect_props();
        show(&rep);
        assert!(rep.passed());
    }

    #[test]
    fn table_pc_replays() {
        let rep = verify_table_pc(&SearchBudget::default());
        show(&rep);
        assert!(rep.passed());
    }
}
