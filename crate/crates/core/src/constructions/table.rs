use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use num_traits::{pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::family::{
    closed_form_expectation, lemma_coefficient_identity, product_presentation, product_presentation_with, Family,
    FamilySpec,
};
use crate::error::Result;
use crate::permgrp::{factorial, GroupSpec, Permutation, SubgroupSpec};
use crate::prym::{
    correspondence_coefficients, criterion_residual, hecke_matrix, prym_dimension, projector_identity_check,
    quotient_genus_x, run_presentation, EngineOptions, GeometricSignature, PresentationInput,
};
use crate::reptheory::RepSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A published value that disagrees with the computation; reported, not
    /// counted as a failure.
    Flagged,
    /// Context only.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub section: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub verdict: Verdict,
}

impl TableRow {
    fn compare(section: &str, claim: impl Into<String>, computed: impl Display, expected: impl Display) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        let verdict = if computed == expected { Verdict::Pass } else { Verdict::Fail };
        Self {
            section: section.into(),
            claim: claim.into(),
            computed,
            expected,
            verdict,
        }
    }

    fn with_verdict(
        section: &str,
        claim: impl Into<String>,
        computed: impl Display,
        expected: impl Display,
        verdict: Verdict,
    ) -> Self {
        Self {
            section: section.into(),
            claim: claim.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            verdict,
        }
    }

    fn error(section: &str, claim: impl Into<String>, err: impl Display) -> Self {
        Self::with_verdict(section, claim, format!("error: {err}"), "-", Verdict::Fail)
    }

    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_lowercase();
        self.section.to_lowercase().contains(&f) || self.claim.to_lowercase().contains(&f)
    }
}

/// Products `S_n^m` with `(n, m)` in `{2,3,4} × {1,2,3}` and `{5} × {1,2}`;
/// genus 2 throughout except that degree 2 alternates genera 2 and 3.
pub fn exponent_matrix() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for (n, ms) in [(2usize, 1..=3usize), (3, 1..=3), (4, 1..=3), (5, 1..=2)] {
        for m in ms {
            let genera = (0..m).map(|i| if n == 2 { 2 + (i as u64 % 2) } else { 2 }).collect();
            out.push(FamilySpec::new(Family::SymmetricSimple, n, genera).expect("valid family"));
        }
    }
    out
}

/// Double covers, `m ∈ {2, 3}`, every multiset of genera from `{2, 3}`.
pub fn hyperelliptic_matrix() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for m in 2..=3usize {
        for threes in 0..=m {
            let genera = (0..m).map(|i| if i < threes { 3 } else { 2 }).collect();
            out.push(FamilySpec::new(Family::SymmetricSimple, 2, genera).expect("valid family"));
        }
    }
    out
}

/// `A_7`, genus 3: both inertia types for one and two factors, plus the
/// mixed product.
pub fn alternating_matrix() -> Vec<FamilySpec> {
    use Family::*;
    let mut out = Vec::new();
    for fam in [AlternatingDoubleTransposition, AlternatingThreeCycle] {
        out.push(FamilySpec::new(fam, 7, vec![3]).expect("valid family"));
        out.push(FamilySpec::new(fam, 7, vec![3, 3]).expect("valid family"));
    }
    out.push(
        FamilySpec::mixed(7, vec![3, 3], vec![AlternatingDoubleTransposition, AlternatingThreeCycle])
            .expect("valid family"),
    );
    out
}

/// Signatures that break the criterion on otherwise valid product data:
/// a diagonal class in place of a coordinate class, an odd count moved onto
/// a diagonal class, and an extra diagonal class.
pub fn corrupted_signatures() -> Result<Vec<(String, PresentationInput)>> {
    let s3sq = product_presentation(&FamilySpec::new(Family::SymmetricSimple, 3, vec![2, 2])?)?;
    let s2sq = product_presentation(&FamilySpec::new(Family::SymmetricSimple, 2, vec![2, 2])?)?;
    let p6 = |w: &str| Permutation::parse(w, 6);
    let p4 = |w: &str| Permutation::parse(w, 4);

    let wrong_class = s3sq.with_signature(GeometricSignature::genus_zero(vec![
        (p6("(1 2)(4 5)")?, 8),
        (p6("(4 5)")?, 8),
    ]))?;
    let wrong_parity = s2sq.with_signature(GeometricSignature::genus_zero(vec![
        (p4("(1 2)")?, 5),
        (p4("(3 4)")?, 8),
        (p4("(1 2)(3 4)")?, 1),
    ]))?;
    let mut extra = s3sq.signature().clone();
    extra.branches.extend(GeometricSignature::genus_zero(vec![(p6("(1 2 3)(4 5 6)")?, 2)]).branches);
    let extra_class = s3sq.with_signature(extra)?;
    Ok(vec![
        ("wrong class: diagonal transposition replaces factor 1, S3^2".into(), wrong_class),
        ("wrong count parity: 5 + 1 diagonal instead of 6, S2^2".into(), wrong_parity),
        ("extra class: diagonal 3-cycle added twice, S3^2".into(), extra_class),
    ])
}

fn point_stabilizer(group: GroupSpec, n: usize, rep: RepSpec) -> Result<PresentationInput> {
    PresentationInput::new(
        group,
        SubgroupSpec::PointStabilizer(n),
        vec![rep],
        GeometricSignature::genus_zero(vec![]),
        EngineOptions::default(),
    )
}

fn single_factor_rows(alternating: bool, n: usize) -> Vec<TableRow> {
    let (label, group, rep) = if alternating {
        (
            format!("A{n}"),
            GroupSpec::Alternating(n),
            RepSpec::PermMinusTrivial(SubgroupSpec::PointStabilizer(n)),
        )
    } else {
        (format!("S{n}"), GroupSpec::Symmetric(n), RepSpec::StandardOfSymmetric(n))
    };
    let section = "Lemma 3.1";
    let data = point_stabilizer(group, n, rep).and_then(|i| {
        let order = BigInt::from(i.group().order().clone());
        Ok((correspondence_coefficients(&i)?, order))
    });
    match data {
        Ok((d, order)) => vec![
            TableRow::compare(
                section,
                format!("b = |G|/dim V, {label}"),
                &d.b,
                &order / BigInt::from(n - 1),
            ),
            TableRow::compare(section, format!("q = 1, {label}"), &d.q, 1),
        ],
        Err(e) => vec![TableRow::error(section, format!("b and q, {label}"), e)],
    }
}

fn remark_coefficients_row(n: usize) -> TableRow {
    let section = "Remark a_1, a_2";
    let claim = format!("a_1 = (n-1)!, a_2 = -(n-2)!, S{n}");
    let expected = format!("({}, -{})", factorial(n - 1), factorial(n - 2));
    match point_stabilizer(GroupSpec::Symmetric(n), n, RepSpec::StandardOfSymmetric(n))
        .and_then(|i| correspondence_coefficients(&i))
    {
        Ok(d) => TableRow::compare(section, claim, format!("({}, {})", d.coefficients[0], d.coefficients[1]), expected),
        Err(e) => TableRow::error(section, claim, e),
    }
}

fn single_jacobian_row(n: usize, g: u64) -> TableRow {
    let section = "Prop 3.3";
    let claim = format!("exponent-1 presentation, n={n} g={g}: (q, dim P, g_X)");
    let run = product_presentation(&match FamilySpec::new(Family::SymmetricSimple, n, vec![g]) {
        Ok(s) => s,
        Err(e) => return TableRow::error(section, claim, e),
    })
    .and_then(|i| run_presentation(&i));
    match run {
        Ok(r) => TableRow::compare(
            section,
            claim,
            format!("({}, {}, {})", r.q, show(&r.dim_prym), show(&r.genus_x)),
            format!("(1, {g}, {g})"),
        ),
        Err(e) => TableRow::error(section, claim, e),
    }
}

fn show(x: &Option<BigInt>) -> String {
    x.as_ref().map_or_else(|| "none".into(), |v| v.to_string())
}

/// Every closed-form and engine-level row for one family.
fn family_rows(spec: &FamilySpec) -> Vec<TableRow> {
    let name = spec.describe();
    let n = spec.n();
    let m = spec.m();
    let alt = spec.family().is_alternating();
    let thm = if alt { "Thm 4.9" } else { "Thm 4.4" };
    let input = match product_presentation(spec) {
        Ok(i) => i,
        Err(e) => return vec![TableRow::error(thm, name, e)],
    };
    let report = match run_presentation(&input) {
        Ok(r) => r,
        Err(e) => return vec![TableRow::error(thm, name, e)],
    };
    let cf = closed_form_expectation(spec);
    let mut rows = vec![
        TableRow::compare(thm, format!("exponent q = n^(m-1), {name}"), &report.q, &cf.q),
        TableRow::compare(thm, format!("dim P = sum g_i, {name}"), show(&report.dim_prym), &cf.dim_prym),
        TableRow::compare("Criterion", format!("residual = 0, {name}"), show(&report.criterion_residual), 0),
    ];
    if !alt {
        rows.push(TableRow::compare(
            "Thm 4.4",
            format!("b = |H|^(m-1)(n-2)!n, {name}"),
            &report.b,
            &cf.b,
        ));
        rows.push(TableRow::compare(
            "Lemma 4.1(b)",
            format!("g_X = n^(m-1)(sum g + (m-1)n - m) + 1, {name}"),
            show(&report.genus_x),
            &cf.genus_x,
        ));
        rows.push(TableRow::compare(
            "Lemma 4.1(a)",
            format!("g_Z = (n!)^m/2 (sum g + m(n-1) - 2) + 1, {name}"),
            show(&report.genus_z),
            &cf.genus_z,
        ));
        let zi: Vec<String> = (0..m)
            .map(|i| {
                product_presentation(&spec.factor(i))
                    .and_then(|f| crate::prym::galois_cover_genus(f.group(), f.signature()))
                    .map_or_else(|e| format!("error: {e}"), |g| g.to_string())
            })
            .collect();
        let expected: Vec<String> = cf.genus_zi.iter().map(|g| g.to_string()).collect();
        rows.push(TableRow::compare(
            "Lemma 4.1(a)",
            format!("g(Z_i) = n!/2 (g_i + n - 3) + 1, {name}"),
            zi.join(","),
            expected.join(","),
        ));
        if n == 2 && m >= 2 {
            let sum: u64 = spec.genera().iter().sum();
            let expected = pow(BigInt::from(2), m - 1) * BigInt::from(sum + m as u64 - 2) + 1;
            rows.push(TableRow::compare(
                "Corollary",
                format!("exponent 2^(m-1), {name}"),
                &report.q,
                pow(BigInt::from(2), m - 1),
            ));
            rows.push(TableRow::compare(
                "Corollary",
                format!("dim JX = 2^(m-1)(sum g + m - 2) + 1, {name}"),
                show(&report.genus_x),
                expected,
            ));
        }
    } else if let Some((first, second)) = &cf.published_alternating {
        if m >= 2 {
            rows.push(TableRow::compare(
                "Thm 4.9",
                format!("dim J = 1 + n^(m-1)(n(m-1) - m + sum g), {name}"),
                show(&report.genus_x),
                second,
            ));
            let computed = show(&report.genus_x);
            let verdict = if computed == first.to_string() {
                Verdict::Pass
            } else {
                Verdict::Flagged
            };
            rows.push(TableRow::with_verdict(
                "Thm 4.9",
                format!(
                    "dim J = 1 + n^(m-1)(n(2m-1) - 2m + 2 sum g), {name} (s_i = g_i + n - 1 from Riemann-Hurwitz)"
                ),
                computed,
                first,
                verdict,
            ));
        } else {
            rows.push(TableRow::compare(
                "Thm 4.9",
                format!("base case q = 1, {name}"),
                &report.q,
                1,
            ));
        }
    }
    match report.spectrum {
        Some(s) => rows.push(TableRow::compare(
            "Projector",
            format!("M^2 = bq M and rank = sum dim V_k, {name}"),
            format!("square {}, rank {}", s.square_ok, s.rank),
            format!("square true, rank {}", s.expected_rank),
        )),
        None => rows.push(TableRow::with_verdict(
            "Projector",
            format!("M^2 = bq M, {name}"),
            "skipped",
            format!("index {} above matrix bound", report.index),
            Verdict::Info,
        )),
    }
    rows
}

fn coefficient_identity_row(n: usize, m: usize) -> TableRow {
    let section = "Lemma 4.3";
    let claim = format!("b_(i_1..i_m) = |H|^(m-1)(a_i1 + ... + a_im), n={n} m={m}");
    let check = FamilySpec::new(Family::SymmetricSimple, n, vec![2; m]).and_then(|s| lemma_coefficient_identity(&s));
    match check {
        Ok(c) => {
            let engine: Vec<String> = c.rows.iter().map(|r| r.engine.to_string()).collect();
            let formula: Vec<String> = c.rows.iter().map(|r| r.formula.to_string()).collect();
            TableRow::compare(section, claim, engine.join(","), formula.join(","))
        }
        Err(e) => TableRow::error(section, claim, e),
    }
}

/// Product-structured and enumerated computations of the same input.
pub fn path_equivalence(spec: &FamilySpec) -> Result<(String, String)> {
    let summary = |i: &PresentationInput| -> Result<String> {
        let d = correspondence_coefficients(i)?;
        let coeffs: Vec<String> = d.coefficients.iter().map(|c| c.to_string()).collect();
        Ok(format!(
            "b_i [{}] b {} q {} residual {} dim P {} g_X {}",
            coeffs.join(","),
            d.b,
            d.q,
            criterion_residual(i, &d.q)?,
            prym_dimension(i)?,
            quotient_genus_x(i)?
        ))
    };
    let product = product_presentation(spec)?;
    let plain = product_presentation_with(spec, EngineOptions::default().flattened())?;
    Ok((summary(&product)?, summary(&plain)?))
}

fn path_row(spec: &FamilySpec) -> TableRow {
    let claim = format!("product path = enumeration, {}", spec.describe());
    match path_equivalence(spec) {
        Ok((a, b)) => TableRow::compare("Path equivalence", claim, a, b),
        Err(e) => TableRow::error("Path equivalence", claim, e),
    }
}

fn corrupted_rows() -> Vec<TableRow> {
    let section = "Criterion";
    match corrupted_signatures() {
        Ok(cases) => cases
            .into_iter()
            .map(|(label, input)| {
                let claim = format!("residual != 0, {label}");
                match correspondence_coefficients(&input).and_then(|d| criterion_residual(&input, &d.q)) {
                    Ok(r) => TableRow::with_verdict(
                        section,
                        claim,
                        &r,
                        "nonzero",
                        if r.is_zero() { Verdict::Fail } else { Verdict::Pass },
                    ),
                    Err(e) => TableRow::error(section, claim, e),
                }
            })
            .collect(),
        Err(e) => vec![TableRow::error(section, "corrupted signatures", e)],
    }
}

fn remark_bound_row() -> TableRow {
    let g = 4usize;
    let bound = pow(BigInt::from(2), g - 1) * BigInt::from(factorial(g - 1));
    TableRow::with_verdict(
        "Remark exponent bound",
        format!("generic exponent 2^(g-1)(g-1)!, g={g}"),
        bound,
        "context: compare n^(m-1), e.g. 5 for n=5 m=2 with sum g = 4",
        Verdict::Info,
    )
}

type Task = Box<dyn Fn() -> Vec<TableRow> + Send + Sync>;

fn tasks() -> Vec<Task> {
    let mut t: Vec<Task> = Vec::new();
    for n in 3..=7 {
        t.push(Box::new(move || single_factor_rows(false, n)));
    }
    for n in 4..=7 {
        t.push(Box::new(move || single_factor_rows(true, n)));
    }
    for n in 3..=7 {
        t.push(Box::new(move || vec![remark_coefficients_row(n)]));
    }
    for (n, g) in [(3, 2), (4, 3), (5, 4), (6, 5)] {
        t.push(Box::new(move || vec![single_jacobian_row(n, g)]));
    }
    let mut families = exponent_matrix();
    for spec in hyperelliptic_matrix() {
        if !families.contains(&spec) {
            families.push(spec);
        }
    }
    families.extend(alternating_matrix());
    for spec in families {
        t.push(Box::new(move || family_rows(&spec)));
    }
    for (n, m) in [(3, 2), (4, 2), (3, 3)] {
        t.push(Box::new(move || vec![coefficient_identity_row(n, m)]));
    }
    let limit = BigUint::from(20_000u32);
    for spec in exponent_matrix() {
        let order = pow(factorial(spec.n()), spec.m());
        if spec.m() >= 2 && order <= limit {
            t.push(Box::new(move || vec![path_row(&spec)]));
        }
    }
    t.push(Box::new(corrupted_rows));
    t.push(Box::new(|| vec![remark_bound_row()]));
    t
}

/// All reproduction rows in a fixed order, optionally restricted to rows
/// whose section or claim contains `filter` (case-insensitive). Rows are
/// computed in parallel.
pub fn reproduce_paper_table(filter: Option<&str>) -> Vec<TableRow> {
    let rows: Vec<Vec<TableRow>> = tasks().par_iter().map(|task| task()).collect();
    rows.into_iter()
        .flatten()
        .filter(|r| filter.is_none_or(|f| r.matches(f)))
        .collect()
}

/// Whether the Hecke matrix of `spec` satisfies the projector identity;
/// `None` when the index exceeds `matrix_bound`.
pub fn projector_holds(spec: &FamilySpec, matrix_bound: usize) -> Result<Option<bool>> {
    let input = product_presentation(spec)?;
    let data = correspondence_coefficients(&input)?;
    match hecke_matrix(&data.decomposition, &data.coefficients, matrix_bound) {
        Ok(m) => Ok(Some(
            projector_identity_check(&m, &data.b, &data.q, input.characters())?.holds(),
        )),
        Err(e) if e.is_resource() => Ok(None),
        Err(e) => Err(e),
    }
}
