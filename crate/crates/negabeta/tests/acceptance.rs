//! Acceptance suite: one test per criterion, each printing a pass line with
//! the measured detail (visible with `cargo test --test acceptance --
//! --nocapture`).

use std::sync::Arc;

use num::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use negabeta::alphasrs::{dbonacci_poly, srs_from_base, SrsState};
use negabeta::base::{isolate_pisot_base, PisotBase};
use negabeta::error::Error;
use negabeta::field::FieldElement;
use negabeta::finiteness::{
    check_notf_ell, classify_cubic_unit, decide_minus_f, verify_certificate, Certificate,
    CubicClass, EllOrbit, Verdict,
};
use negabeta::negabase::{fr_length, t_step, FrLength};
use negabeta::negarith::{
    frmax_add, frmax_oracle, frmax_sub, frmax_sub_witness, region_classify, verify_v_invariant,
    CubicFamily, FrOp, RegionLabel,
};
use negabeta::poly::IntPolynomial;

const CAP: usize = 1_000_000;
const BUDGET: usize = 10_000;

fn mk(coeffs: &[i64]) -> Arc<PisotBase> {
    isolate_pisot_base(&IntPolynomial::from_i64(coeffs).unwrap(), true).unwrap()
}

/// Criterion 1: the cubic-unit classification theorem, reproduced by the
/// decision pipeline over the full coefficient sweep.
#[test]
fn criterion_1_cubic_units() {
    let mut cases = 0;
    for a in -6i64..=6 {
        for b in -6i64..=6 {
            for c in [-1i64, 1] {
                let class = match classify_cubic_unit(a, b, c) {
                    Ok(CubicClass::NotPisotUnit) | Err(_) => continue,
                    Ok(cl) => cl,
                };
                let poly = IntPolynomial::from_i64(&[1, -a, b, -c]).unwrap();
                let base = match isolate_pisot_base(&poly, true) {
                    Ok(b) => b,
                    Err(Error::NoRootAboveOne) => {
                        panic!("Pisot screen admitted ({a},{b},{c}) without a root above 1")
                    }
                    Err(e) => panic!("isolation failed for ({a},{b},{c}): {e}"),
                };
                assert!(
                    base.pisot_certified(),
                    "lemma screen and exact certification disagree at ({a},{b},{c})"
                );
                let v = decide_minus_f(&base, CAP, BUDGET);
                let agrees = match class {
                    CubicClass::MinusF => v.verdict == Verdict::MinusF,
                    CubicClass::NotMinusF => {
                        v.verdict == Verdict::NotMinusF || v.verdict == Verdict::TrivialFin0
                    }
                    CubicClass::NotPisotUnit => unreachable!(),
                };
                assert!(
                    agrees,
                    "pipeline and closed form disagree at ({a},{b},{c}): {:?} vs {class:?}",
                    v.verdict
                );
                // three-way consistency: the region criteria and the closure
                // decision, when they speak, must side with the classifier
                let params = srs_from_base(&base).unwrap();
                if let Some(outcome) = negabeta::finiteness::criterion_regions(&params) {
                    let says_in =
                        matches!(outcome, negabeta::finiteness::CriterionOutcome::InD0 { .. });
                    assert_eq!(
                        says_in,
                        class == CubicClass::MinusF,
                        "criterion disagrees with the classifier at ({a},{b},{c})"
                    );
                }
                match params.decide_d0(CAP) {
                    negabeta::alphasrs::D0Decision::InD0 { .. } => {
                        assert_eq!(
                            class,
                            CubicClass::MinusF,
                            "closure accepts a refuted case ({a},{b},{c})"
                        );
                    }
                    negabeta::alphasrs::D0Decision::NotInD0 { cycle } => {
                        assert_eq!(
                            class,
                            CubicClass::NotMinusF,
                            "closure refutes a finite case ({a},{b},{c})"
                        );
                        assert!(params.replay_cycle(&cycle));
                    }
                    negabeta::alphasrs::D0Decision::Inconclusive => {
                        panic!("closure inconclusive at ({a},{b},{c})")
                    }
                }
                cases += 1;
            }
        }
    }
    assert!(
        cases >= 24,
        "expected dozens of Pisot-unit cases, got {cases}"
    );
    println!("acceptance criterion 1: PASS — {cases} cubic Pisot units agree");
}

/// Criterion 2: the d-bonacci family, including certificate kinds and the
/// explicit cycle replay for odd d >= 7.
#[test]
fn criterion_2_dbonacci() {
    let mut checked = 0;
    for m in 1i64..=3 {
        for d in 1usize..=8 {
            let poly = dbonacci_poly(d, m);
            let base = match isolate_pisot_base(&poly, true) {
                Ok(b) => b,
                Err(Error::NoRootAboveOne) => {
                    assert_eq!((d, m), (1, 1), "only x - 1 lacks a root above 1");
                    continue;
                }
                Err(e) => panic!("isolation failed for d={d}, m={m}: {e}"),
            };
            let v = decide_minus_f(&base, CAP, BUDGET);
            if matches!(d, 1 | 3 | 5) {
                assert_eq!(v.verdict, Verdict::MinusF, "d={d}, m={m}");
            } else {
                assert_eq!(v.verdict, Verdict::NotMinusF, "d={d}, m={m}");
                assert!(
                    verify_certificate(&base, &v),
                    "certificate replay d={d}, m={m}"
                );
                if d % 2 == 0 {
                    // the unit branch fires (p(-1) = 1), or the all-minus-one
                    // fixed point
                    match &v.certificate {
                        Certificate::PMinusOneUnit { value, .. } => {
                            assert_eq!(value.clone(), BigInt::from(1))
                        }
                        Certificate::SrsCycle { cycle } => assert_eq!(cycle.len(), 1),
                        other => panic!("unexpected certificate for even d={d}: {other:?}"),
                    }
                } else {
                    // odd d >= 7: the paper's cycle through (-1,0,0,-1,0,...,0)
                    // has length d-1; replay it directly
                    let params = srs_from_base(&base).unwrap();
                    let mut state: SrsState = vec![BigInt::from(0); d - 1];
                    state[0] = BigInt::from(-1);
                    state[3] = BigInt::from(-1);
                    let mut cur = state.clone();
                    for _ in 0..(d - 1) {
                        cur = params.tau_step(&cur, None);
                    }
                    assert_eq!(cur, state, "claimed cycle does not close for d={d}, m={m}");
                    match &v.certificate {
                        Certificate::SrsCycle { cycle } => {
                            assert!(params.replay_cycle(cycle));
                            assert!(
                                cycle.contains(&state),
                                "certificate cycle misses the expected state for d={d}"
                            );
                        }
                        other => panic!("expected a cycle certificate for d={d}: {other:?}"),
                    }
                }
            }
            checked += 1;
        }
    }
    println!("acceptance criterion 2: PASS — {checked} d-bonacci bases match d in {{1,3,5}}");
}

/// Criterion 3: dominant second-highest coefficient implies the property,
/// with the item-1 inequalities confirmed exactly.
#[test]
fn criterion_3_dominant_family() {
    let mut rng = StdRng::seed_from_u64(0x00d0_717a);
    let mut done = 0;
    while done < 20 {
        let d = rng.gen_range(3usize..=6);
        let a1 = rng.gen_range(2i64..=8);
        // distribute at most a1 - 2 across a_2 .. a_d
        let mut rest = rng.gen_range(0..=(a1 - 2));
        let mut tail = vec![0i64; d - 1];
        for slot in tail.iter_mut() {
            if rest == 0 {
                break;
            }
            let take = rng.gen_range(0..=rest);
            *slot = take;
            rest -= take;
        }
        // alternating signs: coefficient of x^(d-i) is (-1)^i a_i
        let mut coeffs = vec![1i64, -a1];
        for (i, a) in tail.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            coeffs.push(sign * a);
        }
        let poly = IntPolynomial::from_i64(&coeffs).unwrap();
        let base = isolate_pisot_base(&poly, true).unwrap();
        let v = decide_minus_f(&base, CAP, BUDGET);
        assert_eq!(v.verdict, Verdict::MinusF, "dominant case {coeffs:?}");
        assert!(
            matches!(
                v.certificate,
                Certificate::CriterionItem { .. } | Certificate::WitnessProof { .. }
            ),
            "unexpected certificate for {coeffs:?}: {:?}",
            v.certificate
        );
        // the item-1 inequalities of the proof hold exactly
        let params = srs_from_base(&base).unwrap();
        let alpha = params.alpha();
        let one = FieldElement::one(&base);
        let mut sum_abs = FieldElement::zero(&base);
        let mut sum_neg = FieldElement::zero(&base);
        for ri in params.r() {
            if ri.sign() < 0 {
                sum_abs = &sum_abs - ri;
                sum_neg = &sum_neg + ri;
            } else {
                sum_abs = &sum_abs + ri;
            }
        }
        assert!(
            (&sum_abs - alpha).sign() <= 0,
            "sum bound fails for {coeffs:?}"
        );
        assert!(
            (&(&sum_neg - alpha) + &one).sign() > 0,
            "negative-part bound fails for {coeffs:?}"
        );
        done += 1;
    }
    println!(
        "acceptance criterion 3: PASS — 20 dominant-coefficient bases all satisfied the property"
    );
}

/// Criterion 4: both refutation branches of the non-finiteness theorem.
#[test]
fn criterion_4_notf_branches() {
    // branch 1: a finite orbit of the left endpoint refutes the property;
    // scan small quadratics and cubics for bases where it fires
    let mut ell_hits = 0;
    let mut candidates: Vec<Vec<i64>> = vec![vec![1, -1, -1]];
    for a in 1i64..=3 {
        for b in 0i64..=3 {
            candidates.push(vec![1, -a, -b]);
            candidates.push(vec![1, -a, b, -1]);
        }
    }
    for coeffs in &candidates {
        let poly = IntPolynomial::from_i64(coeffs).unwrap();
        let base = match isolate_pisot_base(&poly, true) {
            Ok(b) => b,
            Err(_) => continue,
        };
        if let EllOrbit::FiniteOrbit(digits) = check_notf_ell(&base, BUDGET) {
            assert!(!digits.is_empty());
            let v = decide_minus_f(&base, CAP, BUDGET);
            assert!(
                v.verdict == Verdict::NotMinusF || v.verdict == Verdict::TrivialFin0,
                "finite endpoint orbit must refute the property for {coeffs:?}"
            );
            // replay: the digits drive the endpoint to zero, and the fixed
            // point -1/(beta+1) has the all-ones expansion
            let mut cur = negabeta::negabase::ell_beta(&base);
            for d in &digits {
                let (next, dig) = t_step(&cur).unwrap();
                assert_eq!(dig, *d);
                cur = next;
            }
            assert!(cur.is_zero());
            let onefe = FieldElement::one(&base);
            let fp = (-&onefe)
                .div(&(&FieldElement::beta(&base) + &onefe))
                .unwrap();
            let (next, dig) = t_step(&fp).unwrap();
            assert_eq!(dig, 1);
            assert_eq!(next, fp);
            assert_eq!(
                fr_length(&fp, BUDGET).unwrap(),
                FrLength::NotFinite { period: vec![1] }
            );
            ell_hits += 1;
        }
    }
    assert!(ell_hits >= 1, "the endpoint branch never fired on the scan");

    // branch 2: |p(-1)| = 1 certificates
    for coeffs in [
        vec![1i64, -1, -1],
        vec![1, -2, -2],
        vec![1, -3, -3],
        vec![1, -1, -1, -1, -1],
    ] {
        let base = mk(&coeffs);
        let v = decide_minus_f(&base, CAP, BUDGET);
        assert_eq!(v.verdict, Verdict::NotMinusF, "{coeffs:?}");
        match &v.certificate {
            Certificate::PMinusOneUnit { value, .. } => {
                assert_eq!(num::Signed::abs(value), BigInt::from(1));
            }
            other => panic!("expected the unit certificate for {coeffs:?}, got {other:?}"),
        }
        assert!(verify_certificate(&base, &v));
    }
    println!(
        "acceptance criterion 4: PASS — endpoint branch fired on {ell_hits} bases, unit branch on 4"
    );
}

/// Criterion 5: exact subtraction maxima and the explicit witnesses.
#[test]
fn criterion_5_frmax_sub() {
    let expected = [(1i64, 6usize), (2, 9), (3, 13), (4, 15)];
    for (m, want) in expected {
        assert_eq!(frmax_sub(m).unwrap(), want, "m = {m}");
        let w = frmax_sub_witness(m).unwrap();
        assert_eq!(w.fr, want, "witness for m = {m}");
    }
    println!(
        "acceptance criterion 5: PASS — frmax_sub = 6, 9, 13, 15 with witnesses attaining them"
    );
}

/// Criterion 6: exact addition maxima.
#[test]
fn criterion_6_frmax_add() {
    let expected = [(1i64, 6usize), (2, 7), (3, 13), (4, 14)];
    for (m, want) in expected {
        assert_eq!(frmax_add(m).unwrap(), want, "m = {m}");
    }
    println!("acceptance criterion 6: PASS — frmax_add = 6, 7, 13, 14");
}

/// Criterion 7: the brute-force oracle reaches the certified values and
/// never exceeds them at smaller depths.
#[test]
fn criterion_7_oracle() {
    for depth in 1..=7usize {
        let o = frmax_oracle(1, depth, FrOp::Sub).unwrap();
        assert!(
            o <= 6,
            "oracle exceeded the certified value at depth {depth}"
        );
        if depth == 7 {
            assert_eq!(o, 6);
        }
    }
    for depth in 1..=8usize {
        let o = frmax_oracle(1, depth, FrOp::Add).unwrap();
        assert!(
            o <= 6,
            "oracle exceeded the certified value at depth {depth}"
        );
        if depth == 8 {
            assert_eq!(o, 6);
        }
    }
    println!("acceptance criterion 7: PASS — oracle(1,7,sub) = 6 and oracle(1,8,add) = 6, dominated throughout");
}

/// Criterion 8: the closed-form floor, the successor chains and the
/// invariance of V, exhaustively for m <= 6.
#[test]
fn criterion_8_floor_chains_invariance() {
    for m in 1i64..=6 {
        let fam = CubicFamily::new(m).unwrap();
        // closed form equals the exact floor on the stated box
        for z0 in (-m - 1)..=m {
            for z1 in (-m - 1)..=(m + 1) {
                if (z0 - z1).abs() > m + 1 {
                    continue;
                }
                assert_eq!(
                    fam.floor_rz_alpha_closed((z0, z1)),
                    fam.floor_rz_alpha_exact((z0, z1)),
                    "floor mismatch at ({z0},{z1}), m = {m}"
                );
            }
        }
        // successor chains
        let into = |z: (i64, i64), want: &dyn Fn(RegionLabel) -> bool, what: &str| {
            let img = fam.tau(z);
            assert!(
                want(region_classify(img)),
                "tau({z:?}) = {img:?} missed {what} for m = {m}"
            );
        };
        for k in 3..=(m + 1) {
            for j in 1..=k {
                let z = (j, j - k);
                if z == (m + 1, 0) {
                    continue;
                }
                into(z, &|l| l == RegionLabel::D(k), "D_k");
            }
            for j in 0..k {
                into((-j, -k), &|l| l == RegionLabel::E(k), "E_k");
            }
            for j in 2..=k {
                into((-k, -j), &|l| l == RegionLabel::F(k - 1), "F_(k-1)");
            }
        }
        for k in 1..=m {
            for j in 2..=(k + 2) {
                into((-j, k + 1 - j), &|l| l == RegionLabel::A(k), "A_k");
            }
            for j in -1..k {
                into((j, k), &|l| l == RegionLabel::B(k), "B_k");
            }
            for j in 1..=k {
                into((k, j), &|l| l == RegionLabel::C(k), "C_k");
            }
            for j in 1..=k {
                into((j, j - k), &|l| l == RegionLabel::D(k), "D_k");
            }
        }
        // the exceptional orbit and the two short maps
        assert_eq!(fam.tau((0, -2)), (-2, -2));
        assert_eq!(fam.tau((-2, -2)), (-2, -1));
        assert_eq!(fam.tau((-2, -1)), (-1, 0));
        assert_eq!(fam.tau((-1, 0)), (0, 0));
        assert_eq!(fam.tau((-1, -2)), (-2, -1));
        assert_eq!(fam.tau((0, -1)), (-1, -1));
        assert_eq!(fam.tau((-1, -1)), (-1, 0));
        // forward invariance of V
        let (ok, violations) = verify_v_invariant(m).unwrap();
        assert!(ok, "V not invariant at m = {m}: {violations:?}");
    }
    println!("acceptance criterion 8: PASS — floor closed form, chains and invariance verified for m <= 6");
}

/// Criterion 9: exact conjugacy over five bases of degrees 2 to 5,
/// 10^3 random states, 10 steps each.
#[test]
fn criterion_9_conjugacy() {
    let bases: Vec<Arc<PisotBase>> = vec![
        mk(&[1, -1, -1]),
        mk(&[1, -1, -1, -1]),
        mk(&[1, -2, -1, -1]),
        mk(&[1, -1, -1, -1, -1]),
        mk(&[1, -1, -1, -1, -1, -1]),
    ];
    let mut rng = StdRng::seed_from_u64(0xc0a7);
    let mut total = 0;
    for base in &bases {
        let params = srs_from_base(base).unwrap();
        let dim = params.dim();
        for _ in 0..200 {
            let z: SrsState = (0..dim)
                .map(|_| BigInt::from(rng.gen_range(-12i64..=12)))
                .collect();
            let mut lattice = z.clone();
            let mut value = params.phi(&z);
            for _ in 0..10 {
                lattice = params.tau_step(&lattice, None);
                let (next, _) = t_step(&value).unwrap();
                value = next;
                assert_eq!(
                    value,
                    params.phi(&lattice),
                    "conjugacy failed over {base} at {lattice:?}"
                );
            }
            total += 1;
        }
    }
    assert_eq!(total, 1000);
    println!("acceptance criterion 9: PASS — 1000 random states commute exactly for 10 steps over 5 bases");
}

/// Criterion 10: the imported quadratic characterization.
#[test]
fn criterion_10_quadratic_oracle() {
    let mut plus = 0;
    for m in 3i64..=8 {
        for n in 1..=(m - 2) {
            let base = mk(&[1, -m, n]);
            let v = decide_minus_f(&base, CAP, BUDGET);
            assert_eq!(v.verdict, Verdict::MinusF, "x^2 - {m}x + {n}");
            plus += 1;
        }
    }
    let mut minus = 0;
    for m in 1i64..=6 {
        for n in 1..=m {
            // x^2 - m x - n has a negative conjugate; Pisot for n <= m
            let base = mk(&[1, -m, -n]);
            assert!(base.pisot_certified(), "x^2 - {m}x - {n} should be Pisot");
            let v = decide_minus_f(&base, CAP, BUDGET);
            assert_eq!(v.verdict, Verdict::NotMinusF, "x^2 - {m}x - {n}");
            minus += 1;
        }
    }
    println!(
        "acceptance criterion 10: PASS — {plus} positive-conjugate and {minus} negative-conjugate quadratics"
    );
}
