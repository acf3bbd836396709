//! JSON documents for algebras and reports, canonical emission, and text rendering.

use crate::algebra::{AlgebraError, LieAlgebra, MAX_DIM};
use crate::classify::ClassificationResult;
use crate::linalg::Matrix;
use crate::rational::{from_text, to_text, RationalParseError, Q};
use crate::report::{Report, Status};
use num::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL: &str = "lie4";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub format_version: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// basis index ↦ coefficient as "p" or "p/q" in lowest terms
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Schema { field: String, message: String },
    #[error("{field}: {source}")]
    Rational { field: String, source: RationalParseError },
    #[error("Jacobi identity fails on triples {}", triples.iter().map(|(a, b, c)| format!("({a},{b},{c})")).collect::<Vec<_>>().join(", "))]
    Jacobi { triples: Vec<(usize, usize, usize)> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn json_error(e: serde_json::Error) -> DocError {
    DocError::Json { line: e.line(), column: e.column(), message: e.to_string() }
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> DocError {
    DocError::Schema { field: field.into(), message: message.into() }
}

fn rational(field: String, s: &str) -> Result<Q, DocError> {
    from_text(s).map_err(|source| DocError::Rational { field, source })
}

/// Strict index: decimal without sign or leading zeros.
fn index(field: &str, s: &str, dim: usize) -> Result<usize, DocError> {
    let ok = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    let k: usize = if ok { s.parse().map_err(|_| schema(field, format!("bad index {s:?}")))? } else { return Err(schema(field, format!("bad index {s:?}"))) };
    if k >= dim {
        return Err(schema(field, format!("index {k} out of range for dimension {dim}")));
    }
    Ok(k)
}

pub fn parse_document(text: &str) -> Result<LieAlgebra, DocError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(json_error)?;
    from_document(&doc)
}

pub fn from_document(doc: &AlgebraDocument) -> Result<LieAlgebra, DocError> {
    if doc.format_version != FORMAT_VERSION {
        return Err(schema("format_version", format!("expected {FORMAT_VERSION}, got {}", doc.format_version)));
    }
    let n = doc.dim;
    if n == 0 || n > MAX_DIM {
        return Err(schema("dim", format!("must be between 1 and {MAX_DIM}")));
    }
    if doc.basis.len() != n {
        return Err(schema("basis", format!("{} labels for dimension {n}", doc.basis.len())));
    }
    let mut entries = Vec::new();
    let mut last: Option<(usize, usize)> = None;
    for (b, br) in doc.brackets.iter().enumerate() {
        let field = format!("brackets[{b}]");
        if !(br.i < br.j && br.j < n) {
            return Err(schema(&field, format!("need i < j < {n}, got ({}, {})", br.i, br.j)));
        }
        if last.is_some_and(|l| l >= (br.i, br.j)) {
            return Err(schema(&field, "brackets must be sorted by (i, j) without repeats"));
        }
        last = Some((br.i, br.j));
        if br.coeffs.is_empty() {
            return Err(schema(&field, "empty coefficient map; omit zero brackets"));
        }
        let mut v = vec![Q::zero(); n];
        for (k, c) in &br.coeffs {
            let kf = format!("{field}.coeffs");
            let k = index(&kf, k, n)?;
            let x = rational(format!("{kf}.{k}"), c)?;
            if x.is_zero() {
                return Err(schema(format!("{kf}.{k}"), "zero coefficients are omitted in canonical form"));
            }
            v[k] = x;
        }
        entries.push((br.i, br.j, v));
    }
    let g = LieAlgebra::new_unchecked(n, entries)?;
    let defects = g.validate();
    if !defects.is_empty() {
        return Err(DocError::Jacobi { triples: defects.iter().map(|d| d.triple).collect() });
    }
    Ok(g.with_labels(doc.basis.clone())?)
}

pub fn to_document(g: &LieAlgebra) -> AlgebraDocument {
    let brackets = g
        .structure_constants()
        .iter()
        .map(|(&(i, j), c)| BracketEntry {
            i,
            j,
            coeffs: c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k.to_string(), to_text(x))).collect(),
        })
        .collect();
    AlgebraDocument { format_version: FORMAT_VERSION, dim: g.dim(), basis: g.labels().to_vec(), brackets }
}

pub fn emit_document(g: &LieAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(g)).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatricesDocument {
    pub format_version: u32,
    pub matrices: Vec<Vec<Vec<String>>>,
}

pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>, DocError> {
    let doc: MatricesDocument = serde_json::from_str(text).map_err(json_error)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(schema("format_version", format!("expected {FORMAT_VERSION}, got {}", doc.format_version)));
    }
    doc.matrices
        .iter()
        .enumerate()
        .map(|(m, rows)| {
            let size = rows.len();
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    if row.len() != size {
                        return Err(schema(format!("matrices[{m}][{r}]"), format!("expected {size} entries")));
                    }
                    row.iter().enumerate().map(|(c, s)| rational(format!("matrices[{m}][{r}][{c}]"), s)).collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_rows(&parsed))
        })
        .collect()
}

pub fn digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    format!("sha256:{}", h.iter().map(|b| format!("{b:02x}")).collect::<String>())
}

fn matrix_text(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(to_text).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdentificationRecord {
    pub family: String,
    pub name: String,
    pub params: Vec<String>,
    pub verified: bool,
    /// input coordinates ↦ catalog coordinates
    pub witness: Vec<Vec<String>>,
}

pub fn identification_record(r: &ClassificationResult) -> IdentificationRecord {
    IdentificationRecord {
        family: r.family.id.tag().to_string(),
        name: r.family.to_string(),
        params: r.family.params.iter().map(to_text).collect(),
        verified: r.verified,
        witness: matrix_text(&r.witness),
    }
}

pub fn matrix_record(m: &Matrix) -> Vec<Vec<String>> {
    matrix_text(m)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub certificate: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRecord {
    pub table: String,
    pub counts: Counts,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub seed: Option<u64>,
    pub tables: Vec<TableRecord>,
}

impl ReportDocument {
    pub fn new(command: &str, input_digest: String, seed: Option<u64>, reports: &[Report]) -> Self {
        let tables = reports
            .iter()
            .map(|r| TableRecord {
                table: r.table.clone(),
                counts: Counts { pass: r.count(Status::Pass), fail: r.count(Status::Fail), undecided: r.count(Status::Undecided) },
                checks: r.checks.iter().map(|c| CheckRecord { name: c.id.clone(), status: c.status, certificate: c.detail.clone() }).collect(),
            })
            .collect();
        ReportDocument { tool: TOOL.into(), version: VERSION.into(), command: command.into(), input_digest, seed, tables }
    }

    pub fn totals(&self) -> Counts {
        let mut c = Counts { pass: 0, fail: 0, undecided: 0 };
        for t in &self.tables {
            c.pass += t.counts.pass;
            c.fail += t.counts.fail;
            c.undecided += t.counts.undecided;
        }
        c
    }

    /// Counts agree with the records.
    pub fn consistent(&self) -> bool {
        self.tables.iter().all(|t| {
            let n = |s: Status| t.checks.iter().filter(|c| c.status == s).count();
            t.counts == Counts { pass: n(Status::Pass), fail: n(Status::Fail), undecided: n(Status::Undecided) }
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}  input {}", self.tool, self.version, self.command, self.input_digest);
        if let Some(s) = self.seed {
            out.push_str(&format!("  seed {s}"));
        }
        out.push('\n');
        for t in &self.tables {
            out.push_str(&format!("\n[{}]\n", t.table));
            for c in &t.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Undecided => "UNDECIDED",
                };
                out.push_str(&format!("{tag:<9} {}  {}\n", c.name, c.certificate));
            }
            out.push_str(&format!("{}: {} pass, {} fail, {} undecided\n", t.table, t.counts.pass, t.counts.fail, t.counts.undecided));
        }
        let c = self.totals();
        out.push_str(&format!("\ntotal: {} pass, {} fail, {} undecided\n", c.pass, c.fail, c.undecided));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, FamilyId};

    #[test]
    fn round_trip_is_byte_identical() {
        for f in catalog::grid_instances() {
            let g = f.make().unwrap();
            let text = emit_document(&g);
            let back = parse_document(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(emit_document(&back), text);
        }
    }

    #[test]
    fn jacobi_defect_names_triple() {
        let g = catalog::make(FamilyId::H4, &[]).unwrap();
        let mut doc = to_document(&g);
        let e03 = doc.brackets.iter_mut().find(|b| (b.i, b.j) == (0, 3)).unwrap();
        e03.coeffs.insert("3".into(), "3".into());
        // [e0,e3] = 3e3 breaks the h4 relation [e0,[e1,e2]] = [[e0,e1],e2] + [e1,[e0,e2]]
        let text = serde_json::to_string(&doc).unwrap();
        match parse_document(&text) {
            Err(DocError::Jacobi { triples }) => assert!(triples.contains(&(0, 1, 2))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobi_defect_in_g47_basis() {
        // h4 written as g4,7: adding e3 to [e0,e3] = 2e0 breaks (0,1,3) among others
        let n = crate::external::ExternalName::new(crate::external::Source::Mubarakzyanov, "g4,7", vec![]);
        let mut doc = to_document(&crate::external::make_external(&n).unwrap());
        let e03 = doc.brackets.iter_mut().find(|b| (b.i, b.j) == (0, 3)).unwrap();
        e03.coeffs.insert("3".into(), "1".into());
        match parse_document(&serde_json::to_string(&doc).unwrap()) {
            Err(DocError::Jacobi { triples }) => assert_eq!(triples, vec![(0, 1, 3), (0, 2, 3), (1, 2, 3)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn added_bracket_breaks_h4() {
        // an extra [e1,e3] = e3 on h4
        let g = catalog::make(FamilyId::H4, &[]).unwrap();
        let mut doc = to_document(&g);
        doc.brackets.push(BracketEntry { i: 1, j: 3, coeffs: [("3".to_string(), "1".to_string())].into() });
        doc.brackets.sort_by_key(|b| (b.i, b.j));
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(parse_document(&text), Err(DocError::Jacobi { .. })));
    }

    #[test]
    fn rejects_non_canonical_rational() {
        let text = r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[{"i":0,"j":1,"coeffs":{"1":"2/4"}}]}"#;
        match parse_document(text) {
            Err(DocError::Rational { source: RationalParseError::NotLowestTerms { hint, .. }, .. }) => assert_eq!(hint, "1/2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"format_version":2,"dim":2,"basis":["x","y"],"brackets":[]}"#,
            r#"{"format_version":1,"dim":2,"basis":["x"],"brackets":[]}"#,
            r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[{"i":1,"j":0,"coeffs":{"1":"1"}}]}"#,
            r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[{"i":0,"j":1,"coeffs":{"01":"1"}}]}"#,
            r#"{"format_version":1,"dim":2,"basis":["x","y"],"brackets":[],"extra":1}"#,
        ];
        for t in bad {
            assert!(parse_document(t).is_err(), "{t}");
        }
        match parse_document("{\n  \"format_version\": 1,\n  \"dim\": }") {
            Err(DocError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn report_round_trip() {
        let mut r = Report::new("t");
        r.push(crate::report::Check::new("a", true, "x"));
        r.push(crate::report::Check::undecided("b", "y"));
        let d = ReportDocument::new("verify", digest(b"abc"), Some(1), &[r]);
        assert!(d.consistent());
        assert_eq!(ReportDocument::from_json(&d.to_json()).unwrap(), d);
        assert!(d.to_text().contains("UNDECIDED b  y"));
        assert_eq!(digest(b"abc"), "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
