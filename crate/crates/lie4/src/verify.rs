//! Table replays that read only the catalog, the classifier and the external dictionaries,
//! plus the dispatcher behind `verify --table`.

use crate::catalog::{self, grid_instances, Family, FamilyId};
use crate::classify::{self, identify, random_basis_change};
use crate::external::{self, Source};
use crate::product::{self, SearchBudget};
use crate::rational::{q, to_text};
use crate::report::{Check, Report};
use crate::{complex, forms, par, LieAlgebra};
use rand::SeedableRng;
use std::collections::BTreeMap;

pub const TABLES: &[&str] = &["comm", "pc", "13", "manin", "cps", "appendix1", "appendix2", "semidirect"];

/// Catalog checks and the seeded basis-change stress run; part of `all` only.
pub const STRESS: &[&str] = &["catalog", "derivations", "roundtrip", "separation"];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: SearchBudget,
    /// random basis changes per grid instance in the round-trip check
    pub basis_changes: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0x5eed, budget: SearchBudget::default(), basis_changes: 20 }
    }
}

pub fn verify_catalog() -> Report {
    let mut rep = Report::new("catalog");
    let all = grid_instances();
    rep.push(Check::new("catalog/grid-size", all.len() >= 60, format!("{} instances", all.len())));
    rep.extend(par::map(&all, |f| {
        let id = format!("catalog/{f}");
        match f.make() {
            Ok(g) => {
                let d = g.validate();
                Check::new(id, d.is_empty() && g.dim() == f.id.dim(), format!("{} Jacobi defects", d.len()))
            }
            Err(e) => Check::new(id, false, e.to_string()),
        }
    }));
    rep
}

/// dim Der for e(2), e(1,1), h3, with each basis element re-checked.
pub fn verify_derivations() -> Report {
    let mut rep = Report::new("derivations");
    let cases = [
        ("e(2)", FamilyId::R3pLambda, vec![q(0)], 4usize),
        ("e(1,1)", FamilyId::R3Lambda, vec![q(-1)], 4),
        ("h3", FamilyId::H3, vec![], 6),
    ];
    for (name, id, p, want) in cases {
        let g = catalog::make(id, &p).expect("in range");
        let ders = g.derivations();
        let leibniz = ders.iter().all(|d| g.is_derivation(d));
        rep.push(Check::new(format!("derivations/{name}"), ders.len() == want && leibniz, format!("dim {} (expected {want})", ders.len())));
    }
    rep
}

/// identify(make(f)) = f with a verified witness, also after random basis changes.
pub fn verify_round_trip(opts: &VerifyOptions) -> Report {
    let mut rep = Report::new("roundtrip");
    let all = grid_instances();
    // per-instance seeds keep the result independent of scheduling
    let jobs: Vec<(usize, Family)> = all.into_iter().enumerate().collect();
    rep.extend(par::map(&jobs, |(k, f)| {
        let id = format!("roundtrip/{f}");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(*k as u64));
        let g = match f.make() {
            Ok(g) => g,
            Err(e) => return Check::new(id, false, e.to_string()),
        };
        let mut bad = Vec::new();
        for t in 0..=opts.basis_changes {
            let h = if t == 0 { g.clone() } else { g.transform(&random_basis_change(g.dim(), &mut rng)).expect("invertible") };
            match identify(&h) {
                Ok(r) if r.family == *f && r.verified => {}
                Ok(r) => bad.push(format!("change {t}: {} verified={}", r.family, r.verified)),
                Err(e) => bad.push(format!("change {t}: {e}")),
            }
        }
        Check::new(id, bad.is_empty(), if bad.is_empty() { format!("{} bases", opts.basis_changes + 1) } else { bad.join("; ") })
    }));
    rep
}

/// Distinct canonical instances are told apart, including under basis changes.
pub fn verify_separation(opts: &VerifyOptions) -> Report {
    let mut rep = Report::new("separation");
    let all = grid_instances();
    let ids = par::map(&all, |f| f.make().ok().and_then(|g| identify(&g).ok()).map(|r| r.family));
    let mut seen: BTreeMap<Family, Vec<Family>> = BTreeMap::new();
    for (f, got) in all.iter().zip(&ids) {
        if let Some(got) = got {
            seen.entry(got.clone()).or_default().push(f.clone());
        }
    }
    let collisions: Vec<String> =
        seen.iter().filter(|(_, v)| v.len() > 1).map(|(k, v)| format!("{k}: {}", v.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "))).collect();
    rep.push(Check::new(
        "separation/grid",
        collisions.is_empty() && ids.iter().all(|x| x.is_some()),
        if collisions.is_empty() { format!("{} distinct identifications", seen.len()) } else { collisions.join("; ") },
    ));
    use FamilyId::*;
    let groups: Vec<(&str, Vec<Family>)> = vec![
        ("n4|r4,0", vec![Family::plain(N4), Family::new(R4Lambda, vec![q(0)])]),
        ("aff(C)|aff x aff|d4,1", vec![Family::plain(AffC), Family::plain(AffRxAffR), Family::new(D4Lambda, vec![q(1)])]),
        (
            "r4,mu,lambda",
            vec![
                Family::new(R4MuLambda, vec![q(-1), crate::rational::qf(-1, 2)]),
                Family::new(R4MuLambda, vec![crate::rational::qf(-1, 2), crate::rational::qf(1, 2)]),
                Family::new(R4MuLambda, vec![crate::rational::qf(-1, 2), q(1)]),
                Family::new(R4MuLambda, vec![q(-1), q(-1)]),
                Family::new(R4MuLambda, vec![crate::rational::qf(1, 2), q(1)]),
            ],
        ),
    ];
    for (name, fams) in groups {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
        let got: Vec<Option<Family>> = fams
            .iter()
            .map(|f| {
                let g = f.make().ok()?;
                let h = g.transform(&random_basis_change(g.dim(), &mut rng)).ok()?;
                identify(&h).ok().map(|r| r.family)
            })
            .collect();
        let ok = got.iter().zip(&fams).all(|(g, f)| g.as_ref() == Some(f));
        rep.push(Check::new(format!("separation/{name}"), ok, got.iter().map(|g| g.as_ref().map(|f| f.to_string()).unwrap_or("-".into())).collect::<Vec<_>>().join(" | ")));
    }
    rep
}

pub fn verify_table_comm() -> Report {
    let mut rep = Report::new("comm");
    rep.extend(par::map(&catalog::grid_instances_dim(4), |f| {
        let id = format!("comm/{f}");
        match f.make() {
            Ok(g) => {
                let printed = catalog::commutator_class(f.id, &f.params);
                let got = g.commutator_class();
                Check::new(id, printed == Some(got), got.label().to_string())
            }
            Err(e) => Check::new(id, false, e.to_string()),
        }
    }));
    rep
}

/// The printed matrix realizations close under the commutator and identify to their family.
pub fn verify_appendix1() -> Report {
    let mut rep = Report::new("appendix1");
    let fams: Vec<Family> = catalog::grid_instances_dim(4).into_iter().filter(|f| f.id.is_indecomposable_with_realization()).collect();
    rep.extend(
        par::map(&fams, |f| {
            let blocks = match catalog::matrix_realization(f.id, &f.params) {
                Ok(b) => b,
                Err(e) => return vec![Check::new(format!("appendix1/{f}"), false, e.to_string())],
            };
            blocks
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let id = format!("appendix1/{f}/block{}", k + 1);
                    match LieAlgebra::from_matrices(&b.generators()) {
                        Ok(g) => match identify(&g) {
                            Ok(r) => Check::new(id, r.family == *f && r.verified, format!("{}x{} matrices identify as {}", b.size, b.size, r.family)),
                            Err(e) => Check::new(id, false, e.to_string()),
                        },
                        Err(e) => Check::new(id, false, e.to_string()),
                    }
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten(),
    );
    let covered: std::collections::BTreeSet<FamilyId> = fams.iter().map(|f| f.id).collect();
    rep.push(Check::new("appendix1/families", covered.len() == 10, format!("{} indecomposable families realized", covered.len())));
    rep
}

/// Dictionary rows against the classifier, with the errata recorded.
pub fn verify_appendix2() -> Report {
    let mut rep = Report::new("appendix2");
    let names = external::sample_names();
    rep.extend(par::map(&names, |n| {
        let id = format!("appendix2/{n}");
        let row = external::find_row(n.source, &n.symbol).expect("row exists");
        let target = match external::corrected_family(n) {
            Ok(t) => t,
            Err(e) => return Check::new(id, false, e.to_string()),
        };
        let note = match external::erratum(n.source, &n.symbol) {
            Some(er) => format!(" (erratum: printed {}, corrected {})", er.printed, er.corrected),
            None => String::new(),
        };
        // rows with embedded brackets are identified directly; A-series rows via their g-row
        let built = if row.has_brackets {
            Some(external::make_external_corrected(n))
        } else {
            external::psw_as_mubarakzyanov(n).map(|m| external::make_external_corrected(&m))
        };
        match built {
            Some(Ok(g)) => match identify(&g) {
                Ok(r) => Check::new(id, r.family == target && r.verified, format!("identified {}{note}", r.family)),
                Err(e) => Check::new(id, false, e.to_string()),
            },
            Some(Err(e)) => Check::new(id, false, e.to_string()),
            None => Check::new(id, true, format!("name map to {target}{note}")),
        }
    }));
    for (d, c) in [(q(2), q(3)), (q(1), q(0)), (crate::rational::qf(1, 2), q(2))] {
        let id = format!("appendix2/S10-psi/({},{})", to_text(&d), to_text(&c));
        let mk = |d: &crate::Q, c: &crate::Q| external::make_external(&external::ExternalName::new(Source::Snow, "S10", vec![d.clone(), c.clone()]));
        let ok = match (mk(&d, &c), mk(&q(1), &q(0))) {
            (Ok(g), Ok(h)) => classify::verify_isomorphism(&g, &h, &external::snow_s10_psi(&d, &c)).unwrap_or(false),
            _ => false,
        };
        rep.push(Check::new(id, ok, "psi maps S10(d,c) onto S10(1,0)"));
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown table {0:?}")]
pub struct UnknownTable(pub String);

/// One named table, or every table in a fixed order.
pub fn run_table(name: &str, opts: &VerifyOptions) -> Result<Vec<Report>, UnknownTable> {
    let one = |t: &str| -> Report {
        match t {
            "comm" => verify_table_comm(),
            "pc" => product::tables::verify_table_pc(&opts.budget),
            "13" => product::tables::verify_table_13(),
            "manin" => forms::verify_table_manin(&opts.budget),
            "cps" => complex::verify_cps_all(&opts.budget),
            "appendix1" => verify_appendix1(),
            "appendix2" => verify_appendix2(),
            "semidirect" => product::tables::verify_semidirect_props(),
            "catalog" => verify_catalog(),
            "derivations" => verify_derivations(),
            "roundtrip" => verify_round_trip(opts),
            "separation" => verify_separation(opts),
            _ => unreachable!(),
        }
    };
    match name {
        "all" => Ok(STRESS.iter().chain(TABLES).map(|t| one(t)).collect()),
        t if TABLES.contains(&t) || STRESS.contains(&t) => Ok(vec![one(t)]),
        other => Err(UnknownTable(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(rep: &Report) {
        for c in rep.problems() {
            eprintln!("{} {:?} {}", c.id, c.status, c.detail);
        }
        assert!(rep.passed(), "{}", rep.table);
    }

    #[test]
    fn small_tables() {
        assert_passes(&verify_catalog());
        assert_passes(&verify_derivations());
        assert_passes(&verify_table_comm());
        assert_passes(&verify_appendix1());
        assert_passes(&verify_appendix2());
    }

    #[test]
    fn round_trip_and_separation() {
        let opts = VerifyOptions { basis_changes: 2, ..Default::default() };
        assert_passes(&verify_round_trip(&opts));
        assert_passes(&verify_separation(&opts));
    }

    #[test]
    fn unknown_table() {
        assert!(run_table("nope", &Default::default()).is_err());
    }
}
