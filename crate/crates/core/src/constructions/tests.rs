use num_bigint::BigInt;
use num_traits::Zero;

use super::*;
use crate::error::Error;
use crate::prym::{correspondence_coefficients, criterion_residual, run_presentation};

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn sym(n: usize, genera: &[u64]) -> FamilySpec {
    FamilySpec::new(Family::SymmetricSimple, n, genera.to_vec()).unwrap()
}

#[test]
fn jacobian_examples() {
    let r = run_presentation(&jacobian_presentation(3, 2).unwrap()).unwrap();
    assert_eq!(r.q, int(1));
    assert_eq!(r.dim_prym, Some(int(2)));
    assert_eq!(r.genus_x, Some(int(2)));
    assert!(r.valid);
    let input = jacobian_presentation(4, 3).unwrap();
    assert_eq!(input.signature().branches[0].count, 12u32.into());
    let r = run_presentation(&input).unwrap();
    assert_eq!((r.q.clone(), r.dim_prym.clone()), (int(1), Some(int(3))));
    assert!(matches!(jacobian_presentation(3, 5), Err(Error::InvalidInput(_))));
}

#[test]
fn family_gates() {
    assert!(FamilySpec::new(Family::SymmetricSimple, 2, vec![7]).is_ok());
    assert!(FamilySpec::new(Family::SymmetricSimple, 3, vec![2, 3]).is_err());
    assert!(FamilySpec::new(Family::SymmetricSimple, 3, vec![]).is_err());
    assert!(FamilySpec::new(Family::AlternatingThreeCycle, 7, vec![3]).is_ok());
    assert!(FamilySpec::new(Family::AlternatingThreeCycle, 6, vec![3]).is_err());
    assert!(FamilySpec::new(Family::AlternatingDoubleTransposition, 9, vec![2]).is_err());
    assert!(FamilySpec::mixed(7, vec![3, 3], vec![Family::SymmetricSimple, Family::AlternatingThreeCycle]).is_err());
    assert!(FamilySpec::mixed(7, vec![3, 3], vec![Family::AlternatingThreeCycle]).is_err());
    assert_eq!("alt-dt".parse::<Family>().unwrap(), Family::AlternatingDoubleTransposition);
    assert!("alt".parse::<Family>().is_err());
}

#[test]
fn product_examples() {
    let r = run_presentation(&product_presentation(&sym(3, &[2, 2])).unwrap()).unwrap();
    assert_eq!((r.q.clone(), r.b.clone()), (int(3), int(6)));
    assert_eq!(r.dim_prym, Some(int(4)));
    assert_eq!(r.genus_x, Some(int(16)));
    assert!(r.valid);

    for (g1, g2) in [(2u64, 2u64), (2, 3), (5, 4)] {
        let r = run_presentation(&product_presentation(&sym(2, &[g1, g2])).unwrap()).unwrap();
        assert_eq!(r.q, int(2));
        assert_eq!(r.genus_x, Some(BigInt::from(2 * (g1 + g2) + 1)));
    }

    let r = run_presentation(&product_presentation(&sym(4, &[2, 3, 3])).unwrap()).unwrap();
    assert_eq!(r.q, int(16));
    assert_eq!(r.dim_prym, Some(int(8)));
    assert!(r.valid, "{:?}", r.failed_checks());
}

#[test]
fn embedded_branch_generators() {
    let input = product_presentation(&sym(3, &[2, 2])).unwrap();
    let gens: Vec<String> = input.signature().branches.iter().map(|b| b.generator.to_string()).collect();
    assert_eq!(gens, vec!["(1 2)", "(4 5)"]);
    let alt = product_presentation(
        &FamilySpec::mixed(
            7,
            vec![3, 3],
            vec![Family::AlternatingDoubleTransposition, Family::AlternatingThreeCycle],
        )
        .unwrap(),
    )
    .unwrap();
    let gens: Vec<String> = alt.signature().branches.iter().map(|b| b.generator.to_string()).collect();
    assert_eq!(gens, vec!["(1 2)(3 4)", "(8 9 10)"]);
    let counts: Vec<u64> = alt.signature().branches.iter().map(|b| b.count.to_u64_digits()[0]).collect();
    assert_eq!(counts, vec![9, 9]);
}

#[test]
fn coefficient_identity() {
    let c = lemma_coefficient_identity(&sym(3, &[2, 2])).unwrap();
    assert!(c.enumerated);
    let engine: Vec<BigInt> = c.rows.iter().map(|r| r.engine.clone()).collect();
    assert_eq!(engine, vec![int(8), int(2), int(2), int(-4)]);
    assert!(c.holds());

    let c = lemma_coefficient_identity(&sym(4, &[2, 2])).unwrap();
    let engine: Vec<BigInt> = c.rows.iter().map(|r| r.engine.clone()).collect();
    assert_eq!(engine, vec![int(72), int(24), int(24), int(-24)]);
    assert!(c.holds());

    let c = lemma_coefficient_identity(&sym(3, &[2, 2, 2])).unwrap();
    assert_eq!(c.rows.len(), 8);
    assert!(c.holds());
    assert_eq!(c.rows[7].multi_index, vec![1, 1, 1]);
    assert_eq!(c.rows[7].formula, int(4 * -3));
}

#[test]
fn closed_forms() {
    let cf = closed_form_expectation(&sym(3, &[2, 2]));
    assert_eq!(cf.genus_x, int(16));
    assert_eq!(cf.genus_z, int(109));
    assert_eq!(cf.genus_zi, vec![int(7), int(7)]);
    assert_eq!(cf.s, vec![8, 8]);
    assert_eq!(cf.q, int(3));
    assert_eq!(cf.b, int(6));
    assert_eq!(cf.published_alternating, None);

    let a3c = closed_form_expectation(&FamilySpec::new(Family::AlternatingThreeCycle, 7, vec![3, 3]).unwrap());
    assert_eq!(a3c.published_alternating.as_ref().unwrap().1, int(78));
    let adt = closed_form_expectation(&FamilySpec::new(Family::AlternatingDoubleTransposition, 7, vec![3, 3]).unwrap());
    assert_eq!(adt.published_alternating.as_ref().unwrap().0, int(204));
    assert_eq!(adt.s, vec![9, 9]);
    assert_eq!(adt.genus_x, int(78));
}

#[test]
fn closed_forms_match_engine_for_sym_matrix() {
    for spec in exponent_matrix().into_iter().chain(hyperelliptic_matrix()) {
        let input = product_presentation(&spec).unwrap();
        let r = run_presentation(&input).unwrap();
        let cf = closed_form_expectation(&spec);
        let name = spec.describe();
        assert_eq!(r.q, cf.q, "{name}");
        assert_eq!(r.b, cf.b, "{name}");
        assert_eq!(r.dim_prym.as_ref(), Some(&cf.dim_prym), "{name}");
        assert_eq!(r.genus_x.as_ref(), Some(&cf.genus_x), "{name}");
        assert_eq!(r.genus_z.as_ref(), Some(&cf.genus_z), "{name}");
        assert_eq!(r.criterion_residual, Some(BigInt::zero()), "{name}");
        assert!(r.valid, "{name}: {:?}", r.failed_checks());
    }
}

#[test]
fn alternating_cases() {
    for spec in alternating_matrix() {
        let input = product_presentation(&spec).unwrap();
        let d = correspondence_coefficients(&input).unwrap();
        let cf = closed_form_expectation(&spec);
        assert_eq!(d.q, cf.q);
        assert_eq!(d.b, cf.b);
        assert!(criterion_residual(&input, &d.q).unwrap().is_zero());
        let r = run_presentation(&input).unwrap();
        assert!(r.valid, "{}: {:?}", spec.describe(), r.failed_checks());
        assert_eq!(r.genus_x.as_ref(), Some(&cf.genus_x));
        assert_eq!(r.genus_z.as_ref(), Some(&cf.genus_z));
        if spec.m() == 2 {
            assert_eq!(r.genus_x, Some(int(78)));
        }
    }
}

#[test]
fn corruptions_are_detected() {
    let residuals: Vec<BigInt> = corrupted_signatures()
        .unwrap()
        .iter()
        .map(|(_, i)| {
            let d = correspondence_coefficients(i).unwrap();
            criterion_residual(i, &d.q).unwrap()
        })
        .collect();
    assert_eq!(residuals, vec![int(16), int(2), int(12)]);
}

#[test]
fn paths_agree() {
    for spec in [sym(3, &[2, 2]), sym(3, &[2, 2, 2]), sym(4, &[2, 2])] {
        let (a, b) = path_equivalence(&spec).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn projector_on_matrix() {
    for spec in exponent_matrix() {
        assert_eq!(projector_holds(&spec, 4096).unwrap(), Some(true), "{}", spec.describe());
    }
    assert_eq!(projector_holds(&sym(5, &[2, 2]), 10).unwrap(), None);
}

#[test]
fn table() {
    let rows = reproduce_paper_table(None);
    assert!(rows.len() >= 25);
    let bad: Vec<_> = rows.iter().filter(|r| r.verdict == Verdict::Fail).collect();
    assert!(bad.is_empty(), "{bad:#?}");
    let flagged: Vec<_> = rows.iter().filter(|r| r.verdict == Verdict::Flagged).collect();
    assert!(flagged.iter().all(|r| r.section == "Thm 4.9" && r.expected == "204"));
    assert!(!flagged.is_empty());

    let s5 = rows.iter().find(|r| r.claim == "b = |G|/dim V, S5").unwrap();
    assert_eq!((s5.computed.as_str(), s5.expected.as_str()), ("30", "30"));
    let bound = rows.iter().find(|r| r.section == "Remark exponent bound").unwrap();
    assert_eq!(bound.computed, "48");

    let lemma = reproduce_paper_table(Some("lemma 4.3"));
    assert_eq!(lemma.len(), 3);
    assert!(lemma.iter().all(|r| r.section == "Lemma 4.3"));
    assert_eq!(reproduce_paper_table(None), rows);
}
