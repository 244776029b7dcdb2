//! JSON documents and plain-text tables.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use prym_core::constructions::{ClosedFormExpectation, TableRow, Verdict};
use prym_core::prym::{CheckStatus, PrymReport};

pub const ENGINE: &str = "prym";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Output of `check` and `product`.
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub engine: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub title: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(flatten)]
    pub report: &'a PrymReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<Comparison>>,
    pub timing_ms: u128,
}

/// One computed quantity against its closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub quantity: String,
    pub computed: Option<String>,
    pub expected: String,
    /// `match`, `mismatch`, or `flagged` for the published alternating
    /// formula that disagrees with the engine.
    pub status: &'static str,
}

impl Comparison {
    pub fn is_mismatch(&self) -> bool {
        self.status == "mismatch"
    }
}

fn show(x: Option<&BigInt>) -> Option<String> {
    x.map(BigInt::to_string)
}

/// Engine values against the closed forms of a family.
pub fn compare(report: &PrymReport, cf: &ClosedFormExpectation) -> Vec<Comparison> {
    let mut rows = Vec::new();
    let mut push = |quantity: &str, computed: Option<String>, expected: &BigInt, flag: bool| {
        let expected = expected.to_string();
        let status = match (&computed, flag) {
            (Some(c), _) if *c == expected => "match",
            (_, true) => "flagged",
            _ => "mismatch",
        };
        rows.push(Comparison {
            quantity: quantity.into(),
            computed,
            expected,
            status,
        });
    };
    push("q", Some(report.q.to_string()), &cf.q, false);
    push("b", Some(report.b.to_string()), &cf.b, false);
    push("dim_prym", show(report.dim_prym.as_ref()), &cf.dim_prym, false);
    push("genus_x", show(report.genus_x.as_ref()), &cf.genus_x, false);
    push("genus_z", show(report.genus_z.as_ref()), &cf.genus_z, false);
    if let Some((first, second)) = &cf.published_alternating {
        push("genus_x (first published formula)", show(report.genus_x.as_ref()), first, true);
        push("genus_x (second published formula)", show(report.genus_x.as_ref()), second, true);
    }
    rows
}

/// Output of `paper-table`.
#[derive(Debug, Serialize)]
pub struct TableDocument<'a> {
    pub engine: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub filter: Option<&'a str>,
    pub rows: &'a [TableRow],
    pub summary: TableSummary,
    pub timing_ms: u128,
}

#[derive(Debug, Default, Serialize)]
pub struct TableSummary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub info: usize,
}

impl TableSummary {
    pub fn of(rows: &[TableRow]) -> Self {
        let mut s = Self::default();
        for r in rows {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Flagged => s.flagged += 1,
                Verdict::Info => s.info += 1,
            }
        }
        s
    }
}

/// Output of `spectrum`.
#[derive(Debug, Serialize)]
pub struct SpectrumDocument<'a> {
    pub engine: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub scenario: &'a str,
    pub index: usize,
    pub coefficients: Vec<String>,
    /// `None` when there is a single double coset.
    pub b: Option<String>,
    pub q: Option<String>,
    pub lambda: Option<String>,
    pub square_ok: Option<bool>,
    pub rank: usize,
    pub expected_rank: String,
    /// Present when `M² = λM`, so that `M` is diagonalizable with
    /// eigenvalues 0 and λ.
    pub eigenvalues: Option<Vec<Eigenvalue>>,
    /// The full matrix, for coset spaces of size at most 12.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    pub holds: bool,
    pub note: String,
    pub timing_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Eigenvalue {
    pub value: String,
    pub multiplicity: usize,
}

fn table(out: &mut String, rows: &[Vec<String>], indent: &str) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let mut line = String::from(indent);
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn opt(x: &Option<BigInt>) -> String {
    x.as_ref().map_or_else(|| "undefined".to_string(), BigInt::to_string)
}

pub fn report_text(report: &PrymReport, title: Option<&str>, expected: Option<&[Comparison]>) -> String {
    let mut out = String::new();
    if let Some(t) = title {
        let _ = writeln!(out, "{t}");
    }
    let dims: Vec<String> = report.fixed_dims.iter().map(BigInt::to_string).collect();
    table(
        &mut out,
        &[
            vec!["group".into(), report.group.clone()],
            vec!["|G|".into(), report.group_order.to_string()],
            vec!["|H|".into(), report.subgroup_order.to_string()],
            vec!["index".into(), report.index.to_string()],
            vec!["representations".into(), report.representations.join(", ")],
            vec!["dim V^H".into(), format!("[{}]", dims.join(", "))],
        ],
        "",
    );

    let _ = writeln!(out, "double cosets");
    let mut rows = vec![vec!["rep".to_string(), "n_i".into(), "b_i".into()]];
    for d in &report.double_cosets {
        rows.push(vec![d.rep.clone(), d.n_i.to_string(), d.b_i.to_string()]);
    }
    table(&mut out, &rows, "  ");

    table(
        &mut out,
        &[
            vec!["b".into(), report.b.to_string()],
            vec!["q".into(), report.q.to_string()],
            vec!["dim P".into(), opt(&report.dim_prym)],
            vec!["g_X".into(), opt(&report.genus_x)],
            vec!["g_Z".into(), opt(&report.genus_z)],
            vec![
                "residual".into(),
                report
                    .criterion_residual
                    .as_ref()
                    .map_or_else(|| "not applicable".to_string(), BigInt::to_string),
            ],
            vec![
                "maximality".into(),
                format!("{:?}", report.maximality_method).to_lowercase(),
            ],
            vec![
                "spectrum".into(),
                match &report.spectrum {
                    None => "not computed".into(),
                    Some(s) if s.square_ok => format!("0^{} {}^{}", s.kernel, s.eigenvalue, s.rank),
                    Some(s) => format!("M^2 != {} M, rank {}", s.eigenvalue, s.rank),
                },
            ],
        ],
        "",
    );

    if let Some(cmp) = expected {
        let _ = writeln!(out, "closed forms");
        let mut rows = vec![vec![
            "quantity".to_string(),
            "computed".into(),
            "expected".into(),
            "status".into(),
        ]];
        for c in cmp {
            rows.push(vec![
                c.quantity.clone(),
                c.computed.clone().unwrap_or_else(|| "undefined".into()),
                c.expected.clone(),
                c.status.into(),
            ]);
        }
        table(&mut out, &rows, "  ");
    }

    let _ = writeln!(out, "checks");
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|(name, c)| {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            vec![status.to_string(), name.clone(), c.detail.clone()]
        })
        .collect();
    table(&mut out, &rows, "  ");
    let _ = writeln!(out, "verdict: {}", report.verdict);
    out
}

pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let mut cells = vec![vec![
        "section".to_string(),
        "claim".into(),
        "computed".into(),
        "expected".into(),
        "verdict".into(),
    ]];
    for r in rows {
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Flagged => "flagged",
            Verdict::Info => "info",
        };
        cells.push(vec![
            r.section.clone(),
            r.claim.clone(),
            r.computed.clone(),
            r.expected.clone(),
            verdict.into(),
        ]);
    }
    table(&mut out, &cells, "");
    let s = TableSummary::of(rows);
    let _ = writeln!(
        out,
        "{} rows: {} pass, {} fail, {} flagged, {} info",
        rows.len(),
        s.pass,
        s.fail,
        s.flagged,
        s.info
    );
    out
}

pub fn spectrum_text(doc: &SpectrumDocument<'_>) -> String {
    let mut out = String::new();
    let mut rows = vec![
        vec!["index".to_string(), doc.index.to_string()],
        vec!["coefficients".into(), format!("[{}]", doc.coefficients.join(", "))],
    ];
    if let (Some(b), Some(q), Some(l)) = (&doc.b, &doc.q, &doc.lambda) {
        rows.push(vec!["b q".into(), format!("{b} * {q} = {l}")]);
    }
    if let Some(ok) = doc.square_ok {
        rows.push(vec!["M^2 = bq M".into(), if ok { "yes" } else { "no" }.into()]);
    }
    rows.push(vec![
        "rank".into(),
        format!("{} (expected {})", doc.rank, doc.expected_rank),
    ]);
    rows.push(vec![
        "eigenvalues".into(),
        match &doc.eigenvalues {
            Some(ev) => ev
                .iter()
                .map(|e| format!("{}^{}", e.value, e.multiplicity))
                .collect::<Vec<_>>()
                .join(" "),
            None => "not determined".into(),
        },
    ]);
    table(&mut out, &rows, "");
    if let Some(m) = &doc.matrix {
        let _ = writeln!(out, "M");
        table(&mut out, m, "  ");
    }
    let _ = writeln!(out, "{}", doc.note);
    out
}
