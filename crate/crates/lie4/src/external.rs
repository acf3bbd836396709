//! Name dictionaries for other classifications of four-dimensional solvable algebras:
//! Dozias, Mubarakzyanov, Patera–Sharp–Winternitz (A-series), Snow and Ovando.
//!
//! Bracket tables are embedded only where they were printed alongside the dictionary
//! (Mubarakzyanov, Snow S7/S10/S11). Rows whose printed correspondence disagrees with
//! computation carry a corrected target next to the printed one.

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::catalog::{self, CatalogError, Family, FamilyId};
use crate::rational::{q, qf, sqrt_exact, to_text, Q};
use num::{Signed, Zero};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Dozias,
    Mubarakzyanov,
    Psw,
    Snow,
    Ovando,
}

impl Source {
    pub const ALL: [Source; 5] = [Source::Dozias, Source::Mubarakzyanov, Source::Psw, Source::Snow, Source::Ovando];

    pub fn tag(self) -> &'static str {
        match self {
            Source::Dozias => "Dozias",
            Source::Mubarakzyanov => "Mubarakzyanov",
            Source::Psw => "PSW",
            Source::Snow => "Snow",
            Source::Ovando => "Ovando",
        }
    }

    pub fn from_tag(s: &str) -> Option<Source> {
        Source::ALL.into_iter().find(|x| x.tag().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalName {
    pub source: Source,
    pub symbol: String,
    pub params: Vec<Q>,
}

impl ExternalName {
    pub fn new(source: Source, symbol: &str, params: Vec<Q>) -> Self {
        ExternalName { source, symbol: symbol.to_string(), params }
    }
}

impl std::fmt::Display for ExternalName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.source.tag(), self.symbol)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(to_text).collect();
            write!(f, "({})", ps.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExternalError {
    #[error("unknown name {0}")]
    UnknownName(String),
    #[error("{name}: expected {expected} parameters")]
    Arity { name: String, expected: usize },
    #[error("{name}: parameters violate {predicate}")]
    Domain { name: String, predicate: &'static str },
    #[error("{0}: no bracket table is embedded for this name")]
    NoBrackets(String),
    #[error("{name}: identification needs sqrt({radicand}), which is irrational")]
    IrrationalParameterPath { name: String, radicand: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("normalizing the target failed: {0}")]
    Classify(String),
}

/// One dictionary row, as printed.
#[derive(Debug, Clone, Copy)]
pub struct Row {
    pub source: Source,
    pub symbol: &'static str,
    pub params: &'static [&'static str],
    pub domain: &'static str,
    /// Target name exactly as the dictionary prints it.
    pub printed: &'static str,
    pub has_brackets: bool,
}

const fn row(
    source: Source,
    symbol: &'static str,
    params: &'static [&'static str],
    domain: &'static str,
    printed: &'static str,
    has_brackets: bool,
) -> Row {
    Row { source, symbol, params, domain, printed, has_brackets }
}

use Source::*;

pub const ROWS: &[Row] = &[
    row(Dozias, "g4,1", &[], "", "d4,0", false),
    row(Dozias, "g4,2", &[], "", "aff(C)", false),
    row(Dozias, "g4,3", &[], "", "n4", false),
    row(Dozias, "g4,4", &[], "", "r4,0", false),
    row(Dozias, "g4,5", &["alpha", "beta"], "alpha*beta != 0", "r4,alpha,beta", false),
    row(Dozias, "g4,6", &["alpha"], "", "r4,alpha", false),
    row(Dozias, "g4,7", &[], "", "r4", false),
    row(Dozias, "g4,8", &["alpha", "beta"], "alpha > 0", "r'4,alpha,beta", false),
    row(Dozias, "g4,9", &["alpha"], "", "d4 (alpha = 0), d4,1-1/alpha (alpha != 0)", false),
    row(Dozias, "g4,10", &[], "", "h4", false),
    row(Dozias, "g4,11", &["alpha"], "", "d'4,alpha", false),
    row(Mubarakzyanov, "g4,1", &[], "", "n4", true),
    row(Mubarakzyanov, "g4,2", &["alpha"], "alpha != 0", "r4,alpha", true),
    row(Mubarakzyanov, "g4,3", &[], "", "r4,0", true),
    row(Mubarakzyanov, "g4,4", &[], "", "r4", true),
    row(Mubarakzyanov, "g4,5", &["beta", "gamma"], "-1 <= gamma <= beta <= 1, gamma*beta != 0", "r4,beta,gamma", true),
    row(Mubarakzyanov, "g4,6", &["alpha", "p"], "alpha != 0, p >= 0", "r'4,alpha,p", true),
    row(Mubarakzyanov, "g4,7", &[], "", "h4", true),
    row(Mubarakzyanov, "g4,8", &["h"], "|h| <= 1", "d4 (h = -1), d4,1/(1+h) (h != -1)", true),
    row(Mubarakzyanov, "g4,9", &["p"], "p >= 0", "d'4,p", true),
    row(Mubarakzyanov, "g4,10", &[], "", "aff(C)", true),
    row(Psw, "A4,1", &[], "", "n4", false),
    row(Psw, "A4,2", &["a"], "a != 0", "r4,a", false),
    row(Psw, "A4,3", &[], "", "r4,0", false),
    row(Psw, "A4,4", &[], "", "r4", false),
    row(Psw, "A4,5", &["a", "b"], "-1 <= b <= a <= 1, a*b != 0", "r4,a,b", false),
    row(Psw, "A4,6", &["a", "b"], "a != 0, b >= 0", "r'4,a,b", false),
    row(Psw, "A4,7", &[], "", "h4", false),
    row(Psw, "A4,8", &[], "", "d4", false),
    row(Psw, "A4,9", &["b"], "-1 < b <= 1", "d4,1/(1+b)", false),
    row(Psw, "A4,10", &[], "", "d'4,0", false),
    row(Psw, "A4,11", &["a"], "a > 0", "d'4,a", false),
    row(Psw, "A4,12", &[], "", "aff(C)", false),
    row(Snow, "S1", &[], "", "R x h3", false),
    row(Snow, "S2", &[], "", "R^2 x aff(R)", false),
    row(Snow, "S3", &[], "", "r4,0", false),
    row(Snow, "S4", &[], "", "n4", false),
    row(Snow, "S5", &["d"], "d != 0", "R x r3,d", false),
    row(Snow, "S6", &[], "", "R x r3", false),
    row(Snow, "S7", &["d", "c"], "d in {0, 1}, d^2 - 4c < 0", "R x r'3,0 (d = 0), R x r'3,sqrt(4c-1) (d = 1)", true),
    row(Snow, "S8", &[], "", "aff(R) x aff(R)", false),
    row(Snow, "S9", &[], "", "d4,1", false),
    row(Snow, "S10", &["d", "c"], "d != 0", "R x r3,d (c = d), aff(R) x aff(R) (c != d)", true),
    row(Snow, "S11", &["d", "c"], "d in {0, 1}, d^2 - 4c < 0", "aff(C)", true),
    row(Ovando, "A1", &["l1", "l2"], "l1 != l2, both outside {0, 1}", "r4,l1,l2", false),
    row(Ovando, "A1c", &["re", "im"], "im != 0", "r'4,1/im,re/im", false),
    row(Ovando, "A2", &["l"], "l outside {0, 1}", "r4,l,l", false),
    row(Ovando, "A3", &["l"], "l outside {0, 1}", "r4,l", false),
    row(Ovando, "A4", &[], "", "r4,1,1", false),
    row(Ovando, "A5", &[], "", "r4,1", false),
    row(Ovando, "A6", &[], "", "r4", false),
    row(Ovando, "H1", &[], "", "d4", false),
    row(Ovando, "H2", &[], "", "d'4,0", false),
    row(Ovando, "H3", &[], "", "d4,1/2", false),
    row(Ovando, "H4", &[], "", "h4", false),
    row(Ovando, "H5", &["l"], "l outside {0, 1}", "d4,l", false),
    row(Ovando, "H6", &["re", "im"], "im != 0", "d'4,-1/im", false),
];

pub fn find_row(source: Source, symbol: &str) -> Option<&'static Row> {
    ROWS.iter().find(|r| r.source == source && r.symbol == symbol)
}

fn lookup(n: &ExternalName) -> Result<&'static Row, ExternalError> {
    let r = find_row(n.source, &n.symbol).ok_or_else(|| ExternalError::UnknownName(n.to_string()))?;
    if r.params.len() != n.params.len() {
        return Err(ExternalError::Arity { name: n.to_string(), expected: r.params.len() });
    }
    Ok(r)
}

/// Admissible-region check for the printed parameter domain.
pub fn check_domain(n: &ExternalName) -> Result<(), ExternalError> {
    let r = lookup(n)?;
    let p = &n.params;
    let (zero, one) = (Q::zero(), q(1));
    let out01 = |x: &Q| !x.is_zero() && *x != one;
    let ok = match (n.source, n.symbol.as_str()) {
        (Dozias, "g4,5") => !(&p[0] * &p[1]).is_zero(),
        (Dozias, "g4,8") => p[0].is_positive(),
        (Mubarakzyanov, "g4,2") | (Psw, "A4,2") | (Snow, "S5") | (Snow, "S10") => !p[0].is_zero(),
        (Mubarakzyanov, "g4,5") | (Psw, "A4,5") => {
            -&one <= p[1] && p[1] <= p[0] && p[0] <= one && !(&p[0] * &p[1]).is_zero()
        }
        (Mubarakzyanov, "g4,6") | (Psw, "A4,6") => !p[0].is_zero() && p[1] >= zero,
        (Mubarakzyanov, "g4,8") => p[0].abs() <= one,
        (Mubarakzyanov, "g4,9") => p[0] >= zero,
        (Psw, "A4,9") => -&one < p[0] && p[0] <= one,
        (Psw, "A4,11") => p[0].is_positive(),
        (Snow, "S7") | (Snow, "S11") => {
            (p[0].is_zero() || p[0] == one) && (&p[0] * &p[0] - q(4) * &p[1]).is_negative()
        }
        (Ovando, "A1") => p[0] != p[1] && out01(&p[0]) && out01(&p[1]),
        (Ovando, "A1c") | (Ovando, "H6") => !p[1].is_zero(),
        (Ovando, "A2") | (Ovando, "A3") | (Ovando, "H5") => out01(&p[0]),
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(ExternalError::Domain { name: n.to_string(), predicate: r.domain })
    }
}

type Sparse = Vec<(usize, usize, Vec<(usize, Q)>)>;

fn mu_brackets(symbol: &str, p: &[Q], corrected: bool) -> Option<Sparse> {
    let one = || q(1);
    Some(match symbol {
        "g4,1" => vec![(1, 3, vec![(0, one())]), (2, 3, vec![(1, one())])],
        "g4,2" => vec![
            (0, 3, vec![(0, p[0].clone())]),
            (1, 3, vec![(1, one())]),
            (2, 3, vec![(1, one()), (2, one())]),
        ],
        "g4,3" => vec![(0, 3, vec![(0, one())]), (2, 3, vec![(1, one())])],
        "g4,4" => vec![
            (0, 3, vec![(0, one())]),
            (1, 3, vec![(0, one()), (1, one())]),
            (2, 3, vec![(1, one()), (2, one())]),
        ],
        "g4,5" => vec![
            (0, 3, vec![(0, one())]),
            (1, 3, vec![(1, p[0].clone())]),
            (2, 3, vec![(2, p[1].clone())]),
        ],
        "g4,6" => vec![
            (0, 3, vec![(0, p[0].clone())]),
            (1, 3, vec![(1, p[1].clone()), (2, q(-1))]),
            (2, 3, vec![(1, one()), (2, p[1].clone())]),
        ],
        "g4,7" => vec![
            (1, 2, vec![(0, one())]),
            (0, 3, vec![(0, q(2))]),
            (1, 3, vec![(1, one())]),
            (2, 3, vec![(1, one()), (2, one())]),
        ],
        "g4,8" => vec![
            (1, 2, vec![(0, one())]),
            (0, 3, vec![(0, one() + &p[0])]),
            (1, 3, vec![(1, one())]),
            (2, 3, vec![(2, p[0].clone())]),
        ],
        "g4,9" => vec![
            (1, 2, vec![(0, one())]),
            (0, 3, vec![(0, q(2) * &p[0])]),
            (1, 3, vec![(1, p[0].clone()), (2, q(-1))]),
            (2, 3, vec![(1, one()), (2, p[0].clone())]),
        ],
        "g4,10" => {
            let e24 = if corrected { vec![(0, one())] } else { vec![(0, one()), (2, one())] };
            vec![
                (0, 2, vec![(0, one())]),
                (1, 2, vec![(1, one())]),
                (0, 3, vec![(1, q(-1))]),
                (1, 3, e24),
            ]
        }
        _ => return None,
    })
}

/// Snow's bases are x, y, z, w in that order.
fn snow_brackets(symbol: &str, p: &[Q]) -> Option<Sparse> {
    let (d, c) = (p[0].clone(), p[1].clone());
    Some(match symbol {
        "S7" => vec![(0, 1, vec![(3, q(1))]), (0, 3, vec![(1, -c), (3, d)])],
        "S10" => vec![
            (0, 1, vec![(1, q(1))]),
            (0, 3, vec![(3, d)]),
            (1, 2, vec![(1, q(-1))]),
            (2, 3, vec![(3, c)]),
        ],
        "S11" => vec![
            (0, 1, vec![(1, q(1))]),
            (0, 3, vec![(3, q(1))]),
            (1, 2, vec![(3, q(-1))]),
            (2, 3, vec![(1, -c), (3, d)]),
        ],
        _ => return None,
    })
}

fn sparse_for(n: &ExternalName, corrected: bool) -> Result<Sparse, ExternalError> {
    let r = lookup(n)?;
    check_domain(n)?;
    let table = match n.source {
        Mubarakzyanov => mu_brackets(&n.symbol, &n.params, corrected),
        Snow => snow_brackets(&n.symbol, &n.params),
        _ => None,
    };
    match table {
        Some(t) if r.has_brackets => Ok(t),
        _ => Err(ExternalError::NoBrackets(n.to_string())),
    }
}

/// The bracket table exactly as printed; a printed table that violates Jacobi is an error.
pub fn make_external(n: &ExternalName) -> Result<LieAlgebra, ExternalError> {
    Ok(LieAlgebra::from_sparse(4, &sparse_for(n, false)?)?)
}

/// The bracket table with known misprints repaired (identical to the printed one otherwise).
pub fn make_external_corrected(n: &ExternalName) -> Result<LieAlgebra, ExternalError> {
    Ok(LieAlgebra::from_sparse(4, &sparse_for(n, true)?)?)
}

/// Printed table, bypassing validation (for reporting Jacobi defects).
pub fn make_external_unchecked(n: &ExternalName) -> Result<LieAlgebra, ExternalError> {
    let entries = sparse_for(n, false)?
        .into_iter()
        .map(|(i, j, v)| {
            let mut coeffs = vec![Q::zero(); 4];
            for (k, c) in v {
                coeffs[k] = c;
            }
            (i, j, coeffs)
        })
        .collect();
    Ok(LieAlgebra::new_unchecked(4, entries)?)
}

/// A family id with possibly out-of-range parameters.
pub type RawTarget = (FamilyId, Vec<Q>);

fn irrational(n: &ExternalName, radicand: Q) -> ExternalError {
    ExternalError::IrrationalParameterPath { name: n.to_string(), radicand: to_text(&radicand) }
}

/// The target exactly as the dictionary asserts it, before normalization.
pub fn printed_target(n: &ExternalName) -> Result<RawTarget, ExternalError> {
    use FamilyId::*;
    lookup(n)?;
    check_domain(n)?;
    let p = &n.params;
    let one = q(1);
    let t = |id: FamilyId, ps: Vec<Q>| Ok((id, ps));
    match (n.source, n.symbol.as_str()) {
        (Dozias, "g4,1") => t(D4Lambda, vec![q(0)]),
        (Dozias, "g4,2") | (Mubarakzyanov, "g4,10") | (Psw, "A4,12") | (Snow, "S11") => {
            if n.source == Snow {
                snow_radicand(n)?;
            }
            t(AffC, vec![])
        }
        (Dozias, "g4,3") | (Mubarakzyanov, "g4,1") | (Psw, "A4,1") | (Snow, "S4") => t(N4, vec![]),
        (Dozias, "g4,4") | (Mubarakzyanov, "g4,3") | (Psw, "A4,3") | (Snow, "S3") => t(R4Lambda, vec![q(0)]),
        (Dozias, "g4,5") | (Mubarakzyanov, "g4,5") | (Psw, "A4,5") | (Ovando, "A1") => t(R4MuLambda, p.clone()),
        (Dozias, "g4,6") | (Mubarakzyanov, "g4,2") | (Psw, "A4,2") | (Ovando, "A3") => t(R4Lambda, p.clone()),
        (Dozias, "g4,7") | (Mubarakzyanov, "g4,4") | (Psw, "A4,4") | (Ovando, "A6") => t(R4Gen, vec![]),
        (Dozias, "g4,8") | (Mubarakzyanov, "g4,6") | (Psw, "A4,6") => t(R4pMuLambda, p.clone()),
        (Dozias, "g4,9") => {
            if p[0].is_zero() {
                t(D4, vec![])
            } else {
                t(D4Lambda, vec![&one - p[0].recip()])
            }
        }
        (Dozias, "g4,10") | (Mubarakzyanov, "g4,7") | (Psw, "A4,7") | (Ovando, "H4") => t(H4, vec![]),
        (Dozias, "g4,11") | (Mubarakzyanov, "g4,9") | (Psw, "A4,11") => t(D4pLambda, p.clone()),
        (Mubarakzyanov, "g4,8") => {
            if p[0] == -&one {
                t(D4, vec![])
            } else {
                t(D4Lambda, vec![(&one + &p[0]).recip()])
            }
        }
        (Psw, "A4,8") | (Ovando, "H1") => t(D4, vec![]),
        (Psw, "A4,9") => t(D4Lambda, vec![(&one + &p[0]).recip()]),
        (Psw, "A4,10") | (Ovando, "H2") => t(D4pLambda, vec![q(0)]),
        (Snow, "S1") => t(RxH3, vec![]),
        (Snow, "S2") => t(RxR3Lambda, vec![q(0)]),
        (Snow, "S5") => t(RxR3Lambda, p.clone()),
        (Snow, "S6") => t(RxR3Gen, vec![]),
        (Snow, "S7") => {
            let r = snow_radicand(n)?;
            if p[0].is_zero() {
                t(RxR3pLambda, vec![q(0)])
            } else {
                t(RxR3pLambda, vec![r])
            }
        }
        (Snow, "S8") => t(AffRxAffR, vec![]),
        (Snow, "S9") => t(D4Lambda, vec![q(1)]),
        (Snow, "S10") => {
            if p[0] == p[1] {
                t(RxR3Lambda, vec![p[0].clone()])
            } else {
                t(AffRxAffR, vec![])
            }
        }
        (Ovando, "A1c") => t(R4pMuLambda, vec![p[1].recip(), &p[0] / &p[1]]),
        (Ovando, "A2") => t(R4MuLambda, vec![p[0].clone(), p[0].clone()]),
        (Ovando, "A4") => t(R4MuLambda, vec![q(1), q(1)]),
        (Ovando, "A5") => t(R4Lambda, vec![q(1)]),
        (Ovando, "H3") => t(D4Lambda, vec![qf(1, 2)]),
        (Ovando, "H5") => t(D4Lambda, p.clone()),
        (Ovando, "H6") => t(D4pLambda, vec![-p[1].recip()]),
        _ => Err(ExternalError::UnknownName(n.to_string())),
    }
}

/// For S7 and S11: the square root the identification path needs (√c for d = 0,
/// √(4c−1) for d = 1), or IrrationalParameterPath.
fn snow_radicand(n: &ExternalName) -> Result<Q, ExternalError> {
    let (d, c) = (&n.params[0], &n.params[1]);
    let rad = if d.is_zero() { c.clone() } else { q(4) * c - q(1) };
    sqrt_exact(&rad).ok_or_else(|| irrational(n, rad))
}

/// Rows whose printed correspondence is contradicted by computation.
#[derive(Debug, Clone, Copy)]
pub struct Erratum {
    pub source: Source,
    pub symbol: &'static str,
    pub printed: &'static str,
    pub corrected: &'static str,
    pub reason: &'static str,
}

pub const ERRATA: &[Erratum] = &[
    Erratum {
        source: Mubarakzyanov,
        symbol: "g4,2",
        printed: "r4,alpha",
        corrected: "r4,1/alpha",
        reason: "ad(-e4) has the simple eigenvalue alpha on e1 and the 2-block eigenvalue 1 on (e2,e3); \
                 normalizing the simple eigenvalue to 1 gives r4,1/alpha",
    },
    Erratum {
        source: Psw,
        symbol: "A4,2",
        printed: "r4,a",
        corrected: "r4,1/a",
        reason: "A4,2 follows Mubarakzyanov g4,2, so the same normalization applies",
    },
    Erratum {
        source: Mubarakzyanov,
        symbol: "g4,10",
        printed: "[e2,e4]=e1+e3",
        corrected: "[e2,e4]=e1",
        reason: "the printed table violates Jacobi on (e1,e2,e4); with [e2,e4]=e1 it is a Lie algebra",
    },
    Erratum {
        source: Snow,
        symbol: "S7",
        printed: "R x r'3,sqrt(4c-1) (d = 1)",
        corrected: "R x r'3,1/sqrt(4c-1) (d = 1)",
        reason: "ad(x) on g' has eigenvalues (1 +- i sqrt(4c-1))/2; dividing by the imaginary part \
                 gives real part 1/sqrt(4c-1)",
    },
];

pub fn erratum(source: Source, symbol: &str) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.source == source && e.symbol == symbol)
}

/// The target after repairing the errata (equal to printed_target elsewhere).
pub fn corrected_target(n: &ExternalName) -> Result<RawTarget, ExternalError> {
    let (id, p) = printed_target(n)?;
    Ok(match (n.source, n.symbol.as_str()) {
        (Mubarakzyanov, "g4,2") | (Psw, "A4,2") => (id, vec![p[0].recip()]),
        (Snow, "S7") if !n.params[0].is_zero() => (id, vec![p[0].recip()]),
        _ => (id, p),
    })
}

fn canonical(t: RawTarget) -> Result<Family, ExternalError> {
    crate::classify::canonicalize(t.0, &t.1)
        .map(|r| r.family)
        .map_err(|e| match e {
            crate::classify::ClassifyError::Catalog(c) => ExternalError::Catalog(c),
            other => ExternalError::Classify(other.to_string()),
        })
}

/// The catalog name the dictionary asserts, normalized into the admissible region.
pub fn expected_family(n: &ExternalName) -> Result<Family, ExternalError> {
    canonical(printed_target(n)?)
}

/// Same, with the errata repaired.
pub fn corrected_family(n: &ExternalName) -> Result<Family, ExternalError> {
    canonical(corrected_target(n)?)
}

/// Sample parameters for each parametrized row (inside the printed domain, rational-safe).
pub fn samples(source: Source, symbol: &str) -> Vec<Vec<Q>> {
    let one = |xs: Vec<Q>| xs.into_iter().map(|x| vec![x]).collect::<Vec<_>>();
    let two = |xs: Vec<(Q, Q)>| xs.into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>();
    match (source, symbol) {
        (Dozias, "g4,5") => two(vec![(qf(1, 2), q(1)), (q(-1), qf(-1, 2))]),
        (Dozias, "g4,6") | (Ovando, "A3") | (Ovando, "A2") => one(vec![q(2), qf(-1, 2)]),
        (Dozias, "g4,8") => two(vec![(q(1), q(0)), (q(2), q(1))]),
        (Dozias, "g4,9") => one(vec![q(0), qf(1, 2), q(2)]),
        (Dozias, "g4,11") => one(vec![q(0), q(1)]),
        (Mubarakzyanov, "g4,2") | (Psw, "A4,2") => one(vec![q(2), q(-1), qf(1, 2), q(-3), q(1)]),
        (Mubarakzyanov, "g4,5") | (Psw, "A4,5") => two(vec![
            (q(1), q(1)),
            (qf(1, 2), qf(1, 3)),
            (qf(1, 2), qf(-1, 2)),
            (q(1), q(-1)),
            (qf(-1, 2), q(-1)),
        ]),
        (Mubarakzyanov, "g4,6") | (Psw, "A4,6") => {
            two(vec![(q(1), q(0)), (q(2), q(1)), (q(-1), qf(1, 2)), (qf(1, 2), q(3))])
        }
        (Mubarakzyanov, "g4,8") => one(vec![q(-1), q(1), q(0), qf(1, 2), qf(-1, 2)]),
        (Mubarakzyanov, "g4,9") => one(vec![q(0), qf(1, 2), q(1)]),
        (Psw, "A4,9") => one(vec![q(1), q(0), qf(-1, 2)]),
        (Psw, "A4,11") => one(vec![qf(1, 2), q(2)]),
        (Snow, "S5") => one(vec![q(1), qf(-1, 2), q(3)]),
        (Snow, "S7") | (Snow, "S11") => {
            two(vec![(q(0), q(1)), (q(0), q(4)), (q(1), qf(1, 2)), (q(1), qf(5, 4)), (q(1), qf(5, 2))])
        }
        (Snow, "S10") => two(vec![(q(1), q(1)), (q(2), q(2)), (qf(-1, 2), qf(-1, 2)), (q(1), q(0)), (q(2), q(3))]),
        (Ovando, "A1") => two(vec![(q(2), q(3)), (qf(1, 2), q(-1))]),
        (Ovando, "A1c") | (Ovando, "H6") => two(vec![(q(1), q(1)), (q(0), q(-2))]),
        (Ovando, "H5") => one(vec![q(2), qf(1, 4)]),
        _ => match find_row(source, symbol) {
            Some(r) if r.params.is_empty() => vec![vec![]],
            _ => vec![],
        },
    }
}

/// Every row at each of its sample points.
pub fn sample_names() -> Vec<ExternalName> {
    ROWS.iter()
        .flat_map(|r| samples(r.source, r.symbol).into_iter().map(move |p| ExternalName::new(r.source, r.symbol, p)))
        .collect()
}

/// The Mubarakzyanov row an A-series name is built from (same bracket table).
pub fn psw_as_mubarakzyanov(n: &ExternalName) -> Option<ExternalName> {
    if n.source != Psw {
        return None;
    }
    let p = n.params.clone();
    let (sym, ps) = match n.symbol.as_str() {
        "A4,1" => ("g4,1", p),
        "A4,2" => ("g4,2", p),
        "A4,3" => ("g4,3", p),
        "A4,4" => ("g4,4", p),
        "A4,5" => ("g4,5", p),
        "A4,6" => ("g4,6", p),
        "A4,7" => ("g4,7", p),
        "A4,8" => ("g4,8", vec![q(-1)]),
        "A4,9" => ("g4,8", p),
        "A4,10" => ("g4,9", vec![q(0)]),
        "A4,11" => ("g4,9", p),
        "A4,12" => ("g4,10", p),
        _ => return None,
    };
    Some(ExternalName::new(Mubarakzyanov, sym, ps))
}

/// Basis change S10_{d,c} → S10_{1,0}: x ↦ x′+(d−1)z′, y ↦ w′, z ↦ x′+(c−1)z′, w ↦ y′.
pub fn snow_s10_psi(d: &Q, c: &Q) -> crate::linalg::Matrix {
    let one = q(1);
    let cols = vec![
        vec![one.clone(), Q::zero(), d - &one, Q::zero()],
        vec![Q::zero(), Q::zero(), Q::zero(), one.clone()],
        vec![one.clone(), Q::zero(), c - &one, Q::zero()],
        vec![Q::zero(), one, Q::zero(), Q::zero()],
    ];
    crate::linalg::Matrix::from_cols(&cols, 4)
}

fn algebra_json(g: &LieAlgebra) -> Value {
    let brackets: Vec<Value> = g
        .structure_constants()
        .iter()
        .map(|((i, j), v)| {
            let coeffs: serde_json::Map<String, Value> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k.to_string(), Value::String(to_text(c))))
                .collect();
            json!({"i": i, "j": j, "coeffs": coeffs})
        })
        .collect();
    json!({"dim": g.dim(), "brackets": brackets})
}

pub const CATALOG_FORMAT_VERSION: u32 = 1;

/// The catalog and the dictionaries as one versioned document.
pub fn catalog_document() -> Value {
    let families: Vec<Value> = catalog::ALL
        .iter()
        .map(|&id| {
            let instances: Vec<Value> = catalog::grid(id)
                .into_iter()
                .map(|p| {
                    let g = catalog::make(id, &p).expect("grid instance");
                    let mut v = algebra_json(&g);
                    v["params"] = Value::Array(p.iter().map(|x| Value::String(to_text(x))).collect());
                    v
                })
                .collect();
            json!({
                "id": id.tag(),
                "name": id.name(),
                "dim": id.dim(),
                "params": id.param_names(),
                "constraint": id.constraint_text(),
                "commutator_class": catalog::commutator_class(id, &catalog::grid(id)[0]).map(|c| c.label()),
                "samples": instances,
            })
        })
        .collect();
    let dictionaries: Vec<Value> = ROWS
        .iter()
        .map(|r| {
            let mut v = json!({
                "source": r.source.tag(),
                "symbol": r.symbol,
                "params": r.params,
                "domain": r.domain,
                "printed_target": r.printed,
                "has_brackets": r.has_brackets,
            });
            if let Some(e) = erratum(r.source, r.symbol) {
                v["erratum"] = json!({"printed": e.printed, "corrected": e.corrected, "reason": e.reason});
            }
            v
        })
        .collect();
    json!({"format_version": CATALOG_FORMAT_VERSION, "families": families, "dictionaries": dictionaries})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{identify, verify_isomorphism};

    fn name(s: Source, sym: &str, p: Vec<Q>) -> ExternalName {
        ExternalName::new(s, sym, p)
    }

    #[test]
    fn g47_is_h4() {
        let n = name(Mubarakzyanov, "g4,7", vec![]);
        let g = make_external(&n).unwrap();
        assert_eq!(*g.bracket_basis(1, 2), vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(*g.bracket_basis(0, 3), vec![q(2), q(0), q(0), q(0)]);
        assert_eq!(identify(&g).unwrap().family, expected_family(&n).unwrap());
        assert_eq!(expected_family(&n).unwrap().id, FamilyId::H4);
    }

    #[test]
    fn g48_h1() {
        let n = name(Mubarakzyanov, "g4,8", vec![q(1)]);
        let f = identify(&make_external(&n).unwrap()).unwrap().family;
        assert_eq!(f, Family::new(FamilyId::D4Lambda, vec![qf(1, 2)]));
    }

    #[test]
    fn g410_printed_table_fails_jacobi() {
        let n = name(Mubarakzyanov, "g4,10", vec![]);
        assert!(matches!(make_external(&n), Err(ExternalError::Algebra(AlgebraError::Jacobi(_)))));
        let g = make_external_corrected(&n).unwrap();
        assert_eq!(identify(&g).unwrap().family.id, FamilyId::AffC);
    }

    #[test]
    fn g42_printed_target_is_reciprocal() {
        let n = name(Mubarakzyanov, "g4,2", vec![q(2)]);
        let got = identify(&make_external(&n).unwrap()).unwrap().family;
        assert_eq!(got, Family::new(FamilyId::R4Lambda, vec![qf(1, 2)]));
        assert_ne!(got, expected_family(&n).unwrap());
        assert_eq!(got, corrected_family(&n).unwrap());
    }

    #[test]
    fn snow_s10() {
        let dd = name(Snow, "S10", vec![q(2), q(2)]);
        let f = identify(&make_external(&dd).unwrap()).unwrap().family;
        assert_eq!(f, Family::new(FamilyId::RxR3Lambda, vec![qf(1, 2)]));
        assert_eq!(f, expected_family(&dd).unwrap());
        let g23 = make_external(&name(Snow, "S10", vec![q(2), q(3)])).unwrap();
        let g10 = make_external(&name(Snow, "S10", vec![q(1), q(0)])).unwrap();
        assert!(verify_isomorphism(&g23, &g10, &snow_s10_psi(&q(2), &q(3))).unwrap());
    }

    #[test]
    fn snow_irrational_path() {
        let n = name(Snow, "S7", vec![q(1), q(1)]);
        assert!(matches!(expected_family(&n), Err(ExternalError::IrrationalParameterPath { .. })));
        let n = name(Snow, "S11", vec![q(0), q(2)]);
        assert!(matches!(expected_family(&n), Err(ExternalError::IrrationalParameterPath { .. })));
        let n = name(Snow, "S7", vec![q(1), qf(5, 4)]);
        assert_eq!(corrected_family(&n).unwrap(), Family::new(FamilyId::RxR3pLambda, vec![qf(1, 2)]));
    }

    #[test]
    fn bracket_rows_identify() {
        for n in sample_names() {
            if !find_row(n.source, &n.symbol).unwrap().has_brackets {
                continue;
            }
            let g = make_external_corrected(&n).unwrap_or_else(|e| panic!("{n}: {e}"));
            let got = identify(&g).unwrap_or_else(|e| panic!("{n}: {e}")).family;
            assert_eq!(got, corrected_family(&n).unwrap(), "{n}");
        }
    }

    #[test]
    fn every_sample_has_a_target() {
        for n in sample_names() {
            check_domain(&n).unwrap_or_else(|e| panic!("{e}"));
            corrected_family(&n).unwrap_or_else(|e| panic!("{n}: {e}"));
        }
        assert!(ROWS.iter().all(|r| !samples(r.source, r.symbol).is_empty()), "row without samples");
    }

    #[test]
    fn document_is_versioned() {
        let d = catalog_document();
        assert_eq!(d["format_version"], 1);
        assert_eq!(d["families"].as_array().unwrap().len(), catalog::ALL.len());
        assert_eq!(d["dictionaries"].as_array().unwrap().len(), ROWS.len());
    }
}
