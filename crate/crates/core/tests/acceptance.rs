//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every tolerance here is exact — all assertions are symbolic identities.

use cubicline::atlas::{self, DetRng, UTower};
use cubicline::forms::{act, ProjTransform, ProjectivePoint, TernaryForm};
use cubicline::geometry::{classify_cubic, CurveClass};
use cubicline::hesse::{self, HessePoint, JValue};
use cubicline::linalg::Mat3;
use cubicline::scalar::Scalar;
use cubicline::stability::{
    act_pair, check_weight_order, classify, destabilizing_witness, identification_families, mu,
    normal_form, stabilizer_probe, stratum_representative, wcusp_coordinate, worst_one_ps,
    CubicLinePair, OnePS, StabilizerScope, Status, UnstableReason,
};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn pair(c: &[((u8, u8, u8), i64)], l: (i64, i64, i64)) -> CubicLinePair {
    let cubic = TernaryForm::from_terms(
        3,
        &c.iter().map(|&(e, v)| (e, s(v))).collect::<Vec<_>>(),
    );
    CubicLinePair::new(cubic, TernaryForm::line(s(l.0), s(l.1), s(l.2))).unwrap()
}

/// Random invertible transform with small integer entries.
fn random_transform(rng: &mut DetRng) -> ProjTransform {
    loop {
        let entries: Vec<Scalar> = (0..9).map(|_| s(rng.int(-3, 3))).collect();
        let m = Mat3::new(entries.try_into().unwrap());
        if !m.det().is_zero() {
            return ProjTransform::new(m);
        }
    }
}

#[test]
fn criterion_01_weight_order_exhaustive() {
    // All normalized integer 1-PS with r0 <= 50.
    let mut checked = 0usize;
    for r0 in 1..=50i64 {
        let mut r1 = r0;
        loop {
            let r2 = -r0 - r1;
            if r2 > r1 {
                r1 -= 1;
                continue;
            }
            if r1 < -r0 {
                break;
            }
            if !(r0 == 0 && r1 == 0) {
                let lam = OnePS::new(r0, r1, r2).unwrap();
                assert!(check_weight_order(&lam), "failed at {:?}", lam.r);
                checked += 1;
            }
            r1 -= 1;
        }
    }
    assert!(checked > 1000);
    println!("ACCEPTANCE 01 weight-order lemma: PASS ({checked} subgroups)");
}

#[test]
fn criterion_02_unstable_catalog() {
    // One representative per destabilizing reason, built from the proof
    // normal forms. The witness values are the exact maxima attained by the
    // representatives; reason (ii) attains -2 (a line contained in a cubic
    // forces every support monomial below the -1 class of its weight vector).
    let cases: [(CubicLinePair, UnstableReason, i64); 5] = [
        (
            pair(&[((2, 0, 1), 1), ((0, 3, 0), 1)], (0, 0, 1)),
            UnstableReason::TripleTangent,
            -1,
        ),
        (
            pair(&[((2, 0, 1), 1), ((0, 1, 2), 1)], (0, 0, 1)),
            UnstableReason::LineContained,
            -2,
        ),
        (
            pair(&[((1, 2, 0), 1), ((0, 0, 3), 1)], (0, 0, 1)),
            UnstableReason::ThroughDoublePoint,
            -1,
        ),
        (
            pair(&[((0, 3, 0), 1), ((0, 0, 3), 1)], (1, 0, 0)),
            UnstableReason::TriplePoint,
            -1,
        ),
        (
            pair(&[((1, 0, 2), 1)], (1, 0, 0)),
            UnstableReason::NonReduced,
            -2,
        ),
    ];
    for (z, reason, expected_mu) in cases {
        let v = classify(&z).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert_eq!(v.reason, Some(reason), "pair {:?}", z);
        let cert = destabilizing_witness(&z).unwrap();
        assert_eq!(cert.lambda, reason.lambda());
        assert_eq!(cert.mu, expected_mu, "reason {:?}", reason);
        // Re-verify the certificate from scratch.
        assert_eq!(mu(&act_pair(&cert.g, &z), &cert.lambda), expected_mu);
    }
    println!("ACCEPTANCE 02 unstable catalog: PASS (mu = -1,-2,-1,-1,-2)");
}

#[test]
fn criterion_03_strict_semistability() {
    use num_traits::Zero;
    let mut rng = DetRng::new(33);
    let lambda_star = OnePS::new(1, 0, -1).unwrap();
    for row in [5u8, 6, 7, 11] {
        let zk = stratum_representative(row).unwrap();
        for _ in 0..50 {
            let h = random_transform(&mut rng);
            let w = act_pair(&h, &zk);
            // Transport back via the normal form.
            let (g, target) = normal_form(&w).unwrap();
            assert!(target.proportional(&zk), "row {row}");
            assert!(act_pair(&g, &w).proportional(&zk));
            // Worst 1-PS in the certificate frame is exactly 0 at (1,0,-1).
            let v = classify(&w).unwrap();
            assert_eq!(v.status, Status::StrictlySemistable);
            let cert = v.certificate.unwrap();
            let framed = act_pair(&cert.g, &w);
            let worst = worst_one_ps(&framed);
            assert!(worst.value.is_zero(), "row {row}");
            assert_eq!(worst.lambda, lambda_star, "row {row}");
            assert_eq!(worst.mu, 0);
        }
    }
    println!("ACCEPTANCE 03 strict semistability: PASS (4 strata x 50 translates)");
}

#[test]
fn criterion_04_identification_limits() {
    let z7 = stratum_representative(7).unwrap();
    let fams = identification_families();
    assert_eq!(fams.len(), 3);
    for fam in &fams {
        let lim = fam.family.limit_at_zero().unwrap();
        assert!(lim.proportional(&z7), "{} limit is z7", fam.name);
        // Generic members classify into the expected stratum.
        for a in [s(1), s(2), s(-3)] {
            let at = fam.family.specialize(&a).unwrap();
            assert_eq!(classify(&at).unwrap().row, Some(fam.generic_row));
        }
    }
    println!("ACCEPTANCE 04 identification limits: PASS (3 families -> z7)");
}

fn table_catalog() -> Vec<(u8, Status, CubicLinePair)> {
    vec![
        // 1: smooth, transversal.
        (
            1,
            Status::Stable,
            pair(
                &[((3, 0, 0), 1), ((0, 3, 0), 1), ((0, 0, 3), 1)],
                (1, 0, 0),
            ),
        ),
        // 2: smooth, 2-tangent (y^2 z = x^3 - x z^2 tangent at the origin).
        (
            2,
            Status::StrictlySemistable,
            pair(
                &[((0, 2, 1), 1), ((3, 0, 0), -1), ((1, 0, 2), 1)],
                (1, 0, 0),
            ),
        ),
        // 3: 3-gon, transversal.
        (3, Status::Stable, pair(&[((1, 1, 1), 1)], (1, 1, 1))),
        // 4: conic + chord, both transversal.
        (
            4,
            Status::Stable,
            pair(&[((0, 0, 3), 1), ((1, 1, 1), 1)], (1, 1, 1)),
        ),
        // 5: L tangent to the conic.
        (
            5,
            Status::StrictlySemistable,
            pair(
                &[((2, 0, 1), 1), ((1, 2, 0), 1), ((1, 1, 1), 1)],
                (0, 0, 1),
            ),
        ),
        // 6: the line component tangent to the conic.
        (
            6,
            Status::StrictlySemistable,
            pair(
                &[((2, 0, 1), 1), ((2, 1, 0), 1), ((1, 2, 0), 1)],
                (0, 0, 1),
            ),
        ),
        // 7: both tangent.
        (
            7,
            Status::StrictlySemistable,
            pair(&[((2, 0, 1), 1), ((1, 2, 0), 1)], (0, 0, 1)),
        ),
        // 8: nodal, transversal.
        (
            8,
            Status::Stable,
            pair(
                &[((3, 0, 0), 1), ((0, 3, 0), 1), ((1, 1, 1), -3)],
                (1, 1, -1),
            ),
        ),
        // 9: nodal, 2-tangent at (3:3:2).
        (
            9,
            Status::StrictlySemistable,
            pair(
                &[((3, 0, 0), 1), ((0, 3, 0), 1), ((1, 1, 1), -3)],
                (1, 1, -3),
            ),
        ),
        // 10: cuspidal, transversal.
        (
            10,
            Status::Stable,
            pair(&[((1, 0, 2), 1), ((0, 3, 0), -1)], (1, -1, -1)),
        ),
        // 11: cuspidal, 2-tangent.
        (
            11,
            Status::StrictlySemistable,
            pair(
                &[((2, 0, 1), 1), ((1, 2, 0), 1), ((0, 3, 0), 1)],
                (0, 0, 1),
            ),
        ),
    ]
}

#[test]
fn criterion_05_table_coverage() {
    let mut rng = DetRng::new(55);
    for (row, status, z) in table_catalog() {
        let v = classify(&z).unwrap();
        assert_eq!(v.row, Some(row), "catalog row {row}");
        assert_eq!(v.status, status, "catalog row {row}");
        for _ in 0..100 {
            let g = random_transform(&mut rng);
            let moved = act_pair(&g, &z);
            let v2 = classify(&moved).unwrap();
            assert_eq!(v2.row, Some(row), "translate of row {row}");
            assert_eq!(v2.status, status, "translate of row {row}");
        }
    }
    println!("ACCEPTANCE 05 table coverage: PASS (11 rows x 100 translates)");
}

#[test]
fn criterion_06_wcusp() {
    let mut rng = DetRng::new(66);
    let mut row10 = 0;
    let mut row11 = 0;
    for n in 0..100 {
        // Mix generic draws with forced discriminant-zero pairs
        // (b1, b2) = (3t^2, 2t^3).
        let (b1, b2) = if n % 5 == 4 {
            let t = rng.rational();
            (&s(3) * &(&t * &t), &s(2) * &t.pow(3))
        } else {
            (rng.rational(), rng.rational_or_zero())
        };
        if b1.is_zero() && b2.is_zero() {
            continue;
        }
        let z = CubicLinePair::new(
            TernaryForm::from_terms(3, &[((1, 0, 2), s(1)), ((0, 3, 0), s(-1))]),
            TernaryForm::line(Scalar::one(), -&b1, -&b2),
        )
        .unwrap();
        let disc = &(&s(4) * &b1.pow(3)) - &(&s(27) * &b2.pow(2));
        let verdict = classify(&z).unwrap();
        let expected_row = if disc.is_zero() { 11 } else { 10 };
        // Discriminant zero with b1 b2 = 0 means (0,0) (excluded); the
        // forced samples have b1 b2 != 0 unless t = 0, which gives the
        // 3-tangent line x0 (unstable) — skip those.
        if b1.is_zero() && b2.is_zero() {
            continue;
        }
        if verdict.status == Status::Unstable {
            // Only possible for the excluded 3-tangent configuration.
            assert!(b1.is_zero() && b2.is_zero());
            continue;
        }
        assert_eq!(verdict.row, Some(expected_row));
        let w = wcusp_coordinate(&z).unwrap();
        assert_eq!(w.row, expected_row);
        if expected_row == 10 {
            row10 += 1;
        } else {
            row11 += 1;
        }
        // Chart identity on the overlap.
        if let (Some(b3), Some(c2)) = (&w.b_cubed, &w.c_squared) {
            assert!((b3 * c2).is_one());
        }
    }
    assert!(row10 >= 50 && row11 >= 10);
    println!("ACCEPTANCE 06 cuspidal coordinate: PASS ({row10} row-10, {row11} row-11)");
}

#[test]
fn criterion_07_group_orders() {
    assert_eq!(hesse::g216().len(), 216);
    assert_eq!(hesse::generic_stabilizer().len(), 18);
    let mut rng = DetRng::new(77);
    for _ in 0..10 {
        let m = loop {
            let m = HessePoint::new(rng.rational(), rng.rational());
            if !m.is_singular_member() {
                break m;
            }
        };
        let (orbit, stab) = hesse::orbit_and_stabilizer(&m);
        assert_eq!(orbit.len(), 12);
        assert_eq!(stab, 18);
        assert_eq!(orbit.len() * stab, 216);
    }
    println!("ACCEPTANCE 07 pencil group: PASS (|G| = 216, stabilizer 18, orbits 12)");
}

#[test]
fn criterion_08_fiber_degree() {
    let mut rng = DetRng::new(88);
    for _ in 0..10 {
        let (m, b) = loop {
            let m = HessePoint::new(rng.rational(), rng.rational());
            let b = ProjectivePoint::new([rng.rational(), rng.rational(), rng.rational()]);
            if !hesse::on_base_locus_phi(&m, &b) && !hesse::on_three_tangent_locus(&m, &b) {
                break (m, b);
            }
        };
        let fib = hesse::fiber(&m, &b).unwrap();
        assert_eq!(fib.len(), 216);
        let z = hesse::pencil_pair(&m, &b);
        for fp in &fib {
            let moved = act_pair(&fp.witness, &z);
            let expect = hesse::pencil_pair(&fp.mu, &fp.b);
            assert!(moved.proportional(&expect));
        }
    }
    println!("ACCEPTANCE 08 fiber degree: PASS (10 fibers x 216 witnessed points)");
}

#[test]
fn criterion_09_incidence() {
    let table = hesse::incidence_table();
    assert_eq!(table.line_to_vertices.len(), 9);
    assert_eq!(table.vertex_to_lines.len(), 12);
    for ((i, j), vs) in &table.line_to_vertices {
        assert_eq!(vs.len(), 4, "line A_{i}^({j})");
        // The stated labels: O^(0,i) and O^(zeta^k, [2j + (2-i)k]).
        assert!(vs.contains(&(Scalar::zero(), *i)));
        for k in 0..3i64 {
            let a = Scalar::zeta_pow(k);
            let idx = ((2 * *j as i64 + (2 - *i as i64) * k).rem_euclid(3)) as u8;
            assert!(vs.contains(&(a, idx)), "A_{i}^({j}) k={k}");
        }
    }
    for ((a, i), ls) in &table.vertex_to_lines {
        assert_eq!(ls.len(), 3, "vertex O^({a},{i})");
        if a.is_zero() {
            // O^(0,i) lies on A_i^(j) for j = 0,1,2.
            for j in 0..3u8 {
                assert!(ls.contains(&(*i, j)));
            }
        } else {
            // O^(zeta^k, i) lies on A_j^([2k(j+1) + 2i]).
            let k = (0..3i64).find(|&k| Scalar::zeta_pow(k) == *a).unwrap();
            for j in 0..3u8 {
                let idx = ((2 * k * (j as i64 + 1) + 2 * *i as i64).rem_euclid(3)) as u8;
                assert!(ls.contains(&(j, idx)), "O^({a},{i}) j={j}");
            }
        }
    }
    println!("ACCEPTANCE 09 incidence: PASS (9 lines x 4 vertices, 12 vertices x 3 lines)");
}

#[test]
fn criterion_10_atlas_phi() {
    let tower = UTower::base();
    for j in 1..=7u8 {
        let report = atlas::verify_phi_extension(&tower, j, 100, 1010);
        assert!(report.passed(), "chart {j}: {:?}", report.failures);
        assert_eq!(report.samples, 100);
    }
    let exceptional = atlas::verify_phi_transition_12_exceptional(25, 1012);
    assert!(exceptional.passed(), "{:?}", exceptional.failures);
    for j in 1..=7u8 {
        let report = atlas::verify_phi_strata(j);
        assert!(report.passed(), "strata chart {j}: {:?}", report.failures);
        assert!(report.samples > 50);
    }
    println!("ACCEPTANCE 10 atlas (nodal side): PASS (7 charts x 100 samples + witness + grids)");
}

#[test]
fn criterion_11_atlas_psi() {
    for r in 1..=4u8 {
        let report = atlas::verify_psi(r, 100, 1111);
        assert!(report.passed(), "chart {r}: {:?}", report.failures);
        assert_eq!(report.samples, 100);
        let grid = atlas::verify_psi_strata(r);
        assert!(grid.passed(), "strata chart {r}: {:?}", grid.failures);
        assert!(grid.samples > 50);
    }
    println!("ACCEPTANCE 11 atlas (GIT side): PASS (4 charts x 100 samples + grids)");
}

#[test]
fn criterion_12_graph_closure() {
    let mut rng = DetRng::new(1212);
    for _ in 0..20 {
        // First limit must be cuspidal-transversal (row 10): keep the line
        // discriminant nonzero.
        let (b1, b2) = loop {
            let b1 = rng.rational_or_zero();
            let b2 = rng.rational_or_zero();
            if b1.is_zero() && b2.is_zero() {
                continue;
            }
            let disc = &(&s(4) * &b1.pow(3)) - &(&s(27) * &b2.pow(2));
            if !disc.is_zero() {
                break (b1, b2);
            }
        };
        let (bb1, bb2) = loop {
            let a = rng.rational_or_zero();
            let b = rng.rational_or_zero();
            if !(a.is_zero() && b.is_zero()) {
                break (a, b);
            }
        };
        let (first, second) = atlas::verify_graph_closure(&b1, &b2, &bb1, &bb2).unwrap();
        // Displayed first limit: (x0 x2^2 - x1^3, x0 - b1 x1 - b2 x2).
        let expect_c = TernaryForm::from_terms(3, &[((1, 0, 2), s(1)), ((0, 3, 0), s(-1))]);
        let expect_l = TernaryForm::line(Scalar::one(), -&b1, -&b2);
        assert!(first.cubic.proportional(&expect_c));
        assert!(first.line.proportional(&expect_l));
        assert_eq!(classify(&first).unwrap().row, Some(10));
        // Displayed second limit: (x0 x2^2 - x1^3 - B1 x0^2 x1 - B2 x0^3, x0).
        let expect_c2 = TernaryForm::from_terms(
            3,
            &[
                ((1, 0, 2), s(1)),
                ((0, 3, 0), s(-1)),
                ((2, 1, 0), -&bb1),
                ((3, 0, 0), -&bb2),
            ],
        );
        assert!(second.cubic.proportional(&expect_c2));
        assert!(second
            .line
            .proportional(&TernaryForm::line(s(1), s(0), s(0))));
    }
    println!("ACCEPTANCE 12 graph closure: PASS (20 quadruples, both limits verified)");
}

#[test]
fn criterion_13_j_invariant() {
    assert_eq!(
        hesse::j_invariant(&HessePoint::from_ints(1, 0)),
        JValue::Finite(Scalar::zero())
    );
    let mut rng = DetRng::new(1313);
    for _ in 0..25 {
        let m = loop {
            let m = HessePoint::new(rng.rational(), rng.rational());
            if !m.is_singular_member() {
                break m;
            }
        };
        let (orbit, _) = hesse::orbit_and_stabilizer(&m);
        assert_eq!(orbit.len(), 12);
        let j = hesse::j_invariant(&m);
        for p in &orbit {
            assert_eq!(hesse::j_invariant(p), j);
        }
    }
    println!("ACCEPTANCE 13 j-invariant: PASS (constant on 25 orbits, j(0) = 0)");
}

#[test]
fn criterion_14_stabilizers() {
    // 3-gon pair.
    let rep = stabilizer_probe(&stratum_representative(3).unwrap()).unwrap();
    assert_eq!(rep.order, 6);
    assert_eq!(rep.scope, StabilizerScope::Pair);
    // Nodal-curve bound (group must stabilize the curve).
    let z = pair(
        &[((3, 0, 0), 1), ((0, 3, 0), 1), ((1, 1, 1), -3)],
        (1, 1, -1),
    );
    let rep = stabilizer_probe(&z).unwrap();
    assert_eq!(rep.order, 6);
    assert_eq!(rep.scope, StabilizerScope::CurveOnly);
    for g in &rep.elements {
        assert!(act(g, &z.cubic).proportional(&z.cubic));
    }
    // Conic + line, a != 0.
    let z = pair(&[((0, 0, 3), 1), ((1, 1, 1), 1)], (1, 1, 1));
    let rep = stabilizer_probe(&z).unwrap();
    assert_eq!(rep.order, 2);
    for g in &rep.elements {
        assert!(act_pair(g, &z).proportional(&z));
    }
    // Conic + line, a = 0.
    let z = pair(&[((0, 0, 3), 1), ((1, 1, 1), 1)], (1, 1, 0));
    let rep = stabilizer_probe(&z).unwrap();
    assert_eq!(rep.order, 4);
    for g in &rep.elements {
        assert!(act_pair(g, &z).proportional(&z));
    }
    println!("ACCEPTANCE 14 stabilizers: PASS (orders 6, 6, 2, 4)");
}

#[test]
fn classifier_consistency_with_numerical_side() {
    // Geometric Stable implies a positive worst value in sampled frames
    // (necessary-condition sampling of the universal quantifier).
    use num_traits::Signed;
    let mut rng = DetRng::new(4242);
    for (row, status, z) in table_catalog() {
        if status != Status::Stable {
            continue;
        }
        for _ in 0..25 {
            let g = random_transform(&mut rng);
            let moved = act_pair(&g, &z);
            let w = worst_one_ps(&moved);
            assert!(w.value.is_positive(), "row {row} frame not positive");
        }
    }
    println!("consistency: stable rows have positive worst value in 25 random frames each");
}
