//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured outcome (run with `cargo test --test acceptance -- --nocapture`
//! to see every line).
//!
//! Where the published single-generator table is internally inconsistent (its
//! printed signs contradict nilpotency and its own cohomology classes), the
//! suite machine-certifies that no kernel-sign convention reproduces the
//! printed values and pins the engine against the corrected, hand-derived
//! table instead; the certification is part of the test.

use qlich::algebra::{b, beta, c, gamma, Bidegree, Generator, Kind, State, Word};
use qlich::coeff::{rat_int, HbarPoly, Rat};
use qlich::nambu::{
    filippov_check, jacobian_bracket, leibniz_check, random_poly, takhtajan_check, NambuTensor,
};
use qlich::ope::OpeConvention;
use qlich::poisson::{
    jacobi_check, lichnerowicz_d, lp_cohomology, schouten, Multivector, PoissonTensor,
};
use qlich::poly::Poly;
use qlich::quantum::{
    build_generator, build_generator_with_pairing, check_chiral_compat, check_generator_self_ope,
    check_nilpotency, is_closed_hbar1, is_exact_hbar1, quantum_cohomology, BPairing,
    CommutatorKind, Page, QuantumGenerator, Truncation,
};
use qlich::render_state;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pass(criterion: u32, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

fn tensor2(entry: &str) -> PoissonTensor {
    let mut p = PoissonTensor::new(2);
    p.set(1, 2, qlich::parse::parse_poly(entry, 2).unwrap())
        .unwrap();
    p
}

fn p1() -> PoissonTensor {
    tensor2("1")
}
fn p2() -> PoissonTensor {
    tensor2("x1*x2")
}
fn p3() -> PoissonTensor {
    tensor2("x1^2 + x2^2")
}
fn p4() -> PoissonTensor {
    tensor2("x2^2")
}

fn word(raw: &[Generator]) -> State {
    State::from_raw(raw, HbarPoly::one())
}

fn hw(raw: &[Generator], num: i64) -> State {
    State::from_raw(raw, HbarPoly::hbar_term(rat_int(num), 1))
}

fn default_truncation() -> Truncation {
    Truncation {
        max_weight: 2,
        max_letters: 6,
        fermion_min: -4,
        fermion_max: 4,
    }
}

/// The corrected single-generator table of d^{ħ¹} for P₂ = x₁x₂ ∂₁∧∂₂ under
/// the section2 kernels, frozen from a manual Wick computation. Rows γ²,
/// b¹ (second group) and b² (first group) differ in sign from the published
/// display; the published variant is refuted inside criterion 1.
fn corrected_table() -> Vec<(State, State)> {
    vec![
        (word(&[gamma(1)]), hw(&[gamma(1), gamma(2), c(2)], 1)),
        (word(&[gamma(2)]), hw(&[gamma(1), gamma(2), c(1)], -1)),
        (word(&[c(1)]), hw(&[gamma(2), c(1), c(2)], 1)),
        (word(&[c(2)]), hw(&[gamma(1), c(1), c(2)], 1)),
        (
            word(&[b(1)]),
            hw(&[gamma(1), gamma(2), beta(2)], 1)
                .add(&hw(&[gamma(2), b(1), c(2)], -1))
                .add(&hw(&[gamma(1), b(2), c(2)], -1)),
        ),
        (
            word(&[b(2)]),
            hw(&[gamma(1), gamma(2), beta(1)], -1)
                .add(&hw(&[gamma(2), b(1), c(1)], 1))
                .add(&hw(&[gamma(1), b(2), c(1)], 1)),
        ),
        (
            word(&[beta(1)]),
            hw(&[gamma(2), c(1), beta(2)], 1)
                .add(&hw(&[gamma(2), beta(1), c(2)], -1))
                .add(&hw(&[b(2), c(1), c(2)], 1)),
        ),
        (
            word(&[beta(2)]),
            hw(&[gamma(1), c(1), beta(2)], 1)
                .add(&hw(&[gamma(1), beta(1), c(2)], -1))
                .add(&hw(&[b(1), c(1), c(2)], 1)),
        ),
    ]
}

/// The table exactly as published (all eight values, printed signs).
fn published_table() -> Vec<(Generator, State)> {
    vec![
        (gamma(1), word(&[gamma(1), gamma(2), c(2)])),
        (gamma(2), word(&[gamma(1), gamma(2), c(1)])),
        (c(1), word(&[gamma(2), c(1), c(2)])),
        (c(2), word(&[gamma(1), c(1), c(2)])),
        (
            b(1),
            word(&[gamma(1), gamma(2), beta(2)])
                .add(&word(&[gamma(2), b(1), c(2)]))
                .add(&word(&[gamma(1), b(2), c(2)])),
        ),
        (
            b(2),
            word(&[gamma(1), gamma(2), beta(1)])
                .add(&word(&[gamma(2), b(1), c(1)]))
                .add(&word(&[gamma(1), b(2), c(1)])),
        ),
        (
            beta(1),
            word(&[gamma(2), c(1), beta(2)])
                .sub(&word(&[gamma(2), beta(1), c(2)]))
                .add(&word(&[b(2), c(1), c(2)])),
        ),
        (
            beta(2),
            word(&[gamma(1), c(1), beta(2)])
                .sub(&word(&[gamma(1), beta(1), c(2)]))
                .add(&word(&[b(1), c(1), c(2)])),
        ),
    ]
}

/// Independent single-contraction oracle for the d_qL2 table, parameterized
/// by the four kernel signs s(b,c), s(c,b), s(β,γ), s(γ,β). The density words
/// are written in display order; the Koszul extraction moves the contracted
/// letter rightward to the end of its word.
fn oracle_table_value(signs: [i64; 4], target: Generator) -> State {
    let density: [(i64, Vec<Generator>); 4] = [
        (1, vec![gamma(1), gamma(2), c(1), beta(2)]),
        (-1, vec![gamma(1), gamma(2), beta(1), c(2)]),
        (1, vec![gamma(2), b(1), c(1), c(2)]),
        (1, vec![gamma(1), b(2), c(1), c(2)]),
    ];
    let kernel_sign = |zk: Kind, wk: Kind| -> i64 {
        match (zk, wk) {
            (Kind::B, Kind::C) => signs[0],
            (Kind::C, Kind::B) => signs[1],
            (Kind::Beta, Kind::Gamma) => signs[2],
            (Kind::Gamma, Kind::Beta) => signs[3],
            _ => 0,
        }
    };
    let mut out = State::zero();
    for (coeff, letters) in density.iter() {
        for (pos, z) in letters.iter().enumerate() {
            if z.kind.conjugate() != target.kind || z.index != target.index {
                continue;
            }
            let s = kernel_sign(z.kind, target.kind);
            if s == 0 {
                continue;
            }
            // extraction sign: odd z-letter moves past the odd letters after it
            let mut sign = *coeff * s;
            if z.kind.is_odd() {
                let crossings = letters[pos + 1..].iter().filter(|g| g.is_odd()).count();
                if crossings % 2 == 1 {
                    sign = -sign;
                }
            }
            let rest: Vec<Generator> = letters
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != pos)
                .map(|(_, g)| *g)
                .collect();
            out = out.add(&State::from_raw(
                &rest,
                HbarPoly::hbar_term(rat_int(sign), 1),
            ));
        }
    }
    out
}

#[test]
fn criterion_01_generator_table_reproduction() {
    let g = build_generator(&p2(), OpeConvention::Section2);

    // (a) the engine reproduces the corrected hand-derived table exactly
    for (input, expected) in corrected_table() {
        let got = g.apply(&input);
        assert_eq!(got, expected, "d_qL2({}) mismatch", input);
    }

    // (b) the engine agrees with the independent single-contraction oracle
    // under the section2 kernels
    let section2 = [1i64, 1, -1, 1];
    for (gen, _) in published_table() {
        let engine = g.apply_hbar1(&State::generator(gen));
        let oracle = oracle_table_value(section2, gen).hbar_component(1);
        assert_eq!(engine, oracle, "engine vs oracle on {:?}", gen);
    }

    // (c) certification: no kernel-sign assignment, with or without a global
    // flip, reproduces the published table on all eight generators
    let published = published_table();
    let mut reproducing: Vec<([i64; 4], i64)> = Vec::new();
    for mask in 0..16u32 {
        let signs = [
            if mask & 1 == 0 { 1 } else { -1 },
            if mask & 2 == 0 { 1 } else { -1 },
            if mask & 4 == 0 { 1 } else { -1 },
            if mask & 8 == 0 { 1 } else { -1 },
        ];
        for eps in [1i64, -1] {
            let all_match = published.iter().all(|(gen, printed)| {
                let value = oracle_table_value(signs, *gen).hbar_component(1);
                value == printed.scale(&rat_int(eps))
            });
            if all_match {
                reproducing.push((signs, eps));
            }
        }
    }
    assert!(
        reproducing.is_empty(),
        "published table unexpectedly reproducible: {reproducing:?}"
    );

    // (d) the five internally consistent published rows match exactly with a
    // single uniform sign; the three remaining rows carry the certified
    // sign defects
    let mut matching_rows = Vec::new();
    let mut differing_rows = Vec::new();
    for (gen, printed) in &published {
        let got = g.apply_hbar1(&State::generator(*gen));
        if &got == printed {
            matching_rows.push(render_state(&State::generator(*gen)));
        } else {
            differing_rows.push(render_state(&State::generator(*gen)));
        }
    }
    assert_eq!(matching_rows, vec!["g1", "c1", "c2", "B1", "B2"]);
    assert_eq!(differing_rows, vec!["g2", "b1", "b2"]);

    pass(
        1,
        "all eight d_qL2 generator values reproduced against the corrected table; \
         certified that no uniform kernel-sign convention reproduces the published \
         signs (rows g2, b1, b2 are print defects), five published rows exact",
    );
}

/// Coordinates of ħ-free states over the union of their words.
fn span_dimension(states: &[State]) -> usize {
    let mut rows: std::collections::BTreeMap<Word, usize> = std::collections::BTreeMap::new();
    for s in states {
        for (w, _) in s.terms() {
            let next = rows.len();
            rows.entry(w.clone()).or_insert(next);
        }
    }
    let mut span = qlich::linalg::SpanReducer::new(rows.len());
    for s in states {
        let mut dense = vec![Rat::from(num::BigInt::from(0)); rows.len()];
        for (w, cf) in s.terms() {
            dense[rows[w]] = cf.component(0);
        }
        span.insert(dense);
    }
    span.rank()
}

fn spans_equal(a: &[State], b: &[State]) -> bool {
    let da = span_dimension(a);
    let db = span_dimension(b);
    let mut union: Vec<State> = a.to_vec();
    union.extend_from_slice(b);
    da == db && span_dimension(&union) == da
}

#[test]
fn criterion_02_classical_lp_cohomology_of_p2() {
    let report = lp_cohomology(&p2(), 6).unwrap();
    assert_eq!(report.total_dim(0), 1, "H0 dimension");
    assert_eq!(report.total_dim(1), 2, "H1 dimension");
    assert_eq!(report.total_dim(2), 2, "H2 dimension");

    let parse = |texts: Vec<String>| -> Vec<State> {
        texts
            .iter()
            .map(|t| qlich::parse::parse_state(t).unwrap())
            .collect()
    };
    let h0 = parse(report.representatives(0));
    let h1 = parse(report.representatives(1));
    let h2 = parse(report.representatives(2));

    // expected classes through the dictionary γ↔x, c↔∂
    let e0 = vec![State::one()];
    let e1 = vec![word(&[gamma(1), c(1)]), word(&[gamma(2), c(2)])];
    let e2 = vec![word(&[c(1), c(2)]), word(&[gamma(1), gamma(2), c(1), c(2)])];
    assert!(spans_equal(&h0, &e0), "H0 span");
    assert!(spans_equal(&h1, &e1), "H1 span");
    assert!(spans_equal(&h2, &e2), "H2 span");

    pass(
        2,
        "classical LP cohomology of P2 has dims (1, 2, 2) with representatives \
         spanning {1; x1∂1, x2∂2; ∂1∂2, x1x2∂1∂2}",
    );
}

#[test]
fn criterion_03_symplectic_case_is_one_dimensional() {
    let g = build_generator(&p1(), OpeConvention::Section2);
    let report = quantum_cohomology(&g, Page::Hbar1, &default_truncation());
    let mut total = 0usize;
    for cell in &report.cells {
        assert!(!cell.truncated, "symplectic cells solve exactly");
        if cell.weight == 0 && cell.fermion == 0 && cell.letters == Some(0) {
            assert_eq!(cell.dim_cohomology, 1, "constant cell");
            assert_eq!(cell.representatives, vec!["1".to_string()]);
        } else {
            assert_eq!(
                cell.dim_cohomology, 0,
                "cell (w={}, f={}, l={:?}) must vanish",
                cell.weight, cell.fermion, cell.letters
            );
        }
        total += cell.dim_cohomology;
    }
    assert_eq!(total, 1);
    pass(
        3,
        "quantum cohomology of P1 in weight <= 2, letters <= 6 is exactly the \
         span of the constant, per cell",
    );
}

#[test]
fn criterion_04_nilpotency_of_the_four_structures() {
    let trunc = default_truncation();
    let mut summaries = Vec::new();
    for (name, p) in [("P1", p1()), ("P2", p2()), ("P3", p3()), ("P4", p4())] {
        let g = build_generator(&p, OpeConvention::Section2);
        let report = check_nilpotency(&g, &trunc);
        assert!(
            report.passed(),
            "{name}: {} nilpotency violations",
            report.violations.len()
        );
        summaries.push(format!("{name} ({} words)", report.checked));
    }
    // second route: the self-OPE pole-1 coefficient is a total derivative
    for (name, p) in [("P1", p1()), ("P2", p2())] {
        let g = build_generator(&p, OpeConvention::Section2);
        let (ok, witness, pole1) = check_generator_self_ope(&g);
        assert!(ok, "{name}: pole-1 {} is not a total derivative", pole1);
        if let Some(w) = witness {
            assert_eq!(w.d_z(), pole1, "{name}: witness check");
        }
    }
    // the two routes agree for every quadratic structure
    for p in [p1(), p2(), p3(), p4()] {
        let g = build_generator(&p, OpeConvention::Section2);
        let (self_ok, _, _) = check_generator_self_ope(&g);
        assert!(self_ok);
    }
    // the transposed-pairing variant of the printed cubic/degenerate
    // displays is not nilpotent, so the derivative-index pairing is the one
    // the nilpotency theorem is about
    for p in [p3(), p4()] {
        let gt = build_generator_with_pairing(&p, OpeConvention::Section2, BPairing::Transposed)
            .unwrap();
        let small = Truncation {
            max_weight: 1,
            max_letters: 4,
            fermion_min: -2,
            fermion_max: 2,
        };
        assert!(!check_nilpotency(&gt, &small).passed());
    }
    pass(
        4,
        &format!(
            "d² = 0 across {} and self-OPE pole-1 certificates for P1, P2; \
             transposed-pairing variant refuted",
            summaries.join(", ")
        ),
    );
}

#[test]
fn criterion_05_chiral_compatibility() {
    let trunc = default_truncation();
    let mut passing_summary = Vec::new();
    for (name, p) in [("P1", p1()), ("P2", p2()), ("P3", p3()), ("P4", p4())] {
        let report = check_chiral_compat(&p, &trunc, CommutatorKind::Super);
        for conv in &report.per_convention {
            assert!(
                conv.delta_squared_ok,
                "{name}: delta² violation under {}",
                conv.convention
            );
        }
        let passing = report.passing_conventions();
        assert!(
            !passing.is_empty(),
            "{name}: no convention satisfies the supercommutator"
        );
        assert!(
            passing.contains(&"section2"),
            "{name}: expected section2 to pass, got {passing:?}"
        );
        passing_summary.push(format!("{name}: {}", passing.join("+")));
    }
    pass(
        5,
        &format!(
            "delta² = 0 everywhere and delta∘d + d∘delta = 0 under section2 \
             ({})",
            passing_summary.join("; ")
        ),
    );
}

#[test]
fn criterion_06_grading_laws_on_random_words() {
    let g = build_generator(&p2(), OpeConvention::Section2);
    let basis = default_truncation().basis(2);
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let sample: Vec<&Word> = basis.choose_multiple(&mut rng, 200).collect();
    assert_eq!(sample.len(), 200, "truncation basis is large enough");
    for w in sample {
        let s = State::monomial(w.clone(), HbarPoly::one());
        let full = g.apply(&s);
        if !full.is_zero() {
            assert_eq!(
                full.homogeneous_weight(),
                Some(w.weight()),
                "weight on {}",
                s
            );
            assert_eq!(
                full.homogeneous_fermion(),
                Some(w.fermion() + 1),
                "fermion on {}",
                s
            );
        }
        let h1 = g.apply_hbar1(&s);
        if !h1.is_zero() {
            assert_eq!(
                h1.letter_counts(),
                vec![w.len() as u32 + 2],
                "letters on {}",
                s
            );
        }
    }
    pass(
        6,
        "200 seeded basis words: apply raises fermion by +1 and preserves weight; \
         the ħ¹ page raises letters by +2",
    );
}

#[test]
fn criterion_07_classical_bridge() {
    let g = build_generator(&p2(), OpeConvention::Section2);
    let p = p2();
    let mut checked = 0usize;
    for letters in 0..=6u32 {
        for fermion in -(letters as i64)..=(letters as i64) {
            for w in qlich::enumerate_basis(2, Bidegree::new(0, fermion, letters)) {
                let s = State::monomial(w, HbarPoly::one());
                let quantum = g.apply_hbar1(&s);
                let classical = Multivector::from_state(&s, 2).unwrap();
                let image = lichnerowicz_d(&p, &classical).to_state();
                assert_eq!(quantum, image, "bridge mismatch on {}", s);
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
    pass(
        7,
        &format!(
            "ħ¹ action equals the dictionary image of the classical differential \
             on all {checked} weight-0 words in c, γ with letters <= 6"
        ),
    );
}

#[test]
fn criterion_08_p4_families() {
    // the published families are stated for the display variant of the
    // degenerate operator (b-index transposed); the nilpotent
    // derivative-index variant keeps only the (β₁)^m family
    let printed =
        build_generator_with_pairing(&p4(), OpeConvention::Section2, BPairing::Transposed).unwrap();
    let general = build_generator(&p4(), OpeConvention::Section2);

    for m in 0..=3u16 {
        // (γ¹)^m c₂
        let mut letters: Vec<Generator> = std::iter::repeat_n(gamma(1), m as usize).collect();
        letters.push(c(2));
        let fam1 = word(&letters);
        assert!(is_closed_hbar1(&printed, &fam1), "(γ1)^{m} c2 closed");
        assert!(
            !is_exact_hbar1(&printed, &fam1).unwrap(),
            "(γ1)^{m} c2 nonexact"
        );

        // (β₁)^m — closed under both variants
        let fam2 = word(&vec![beta(1); m as usize]);
        assert!(is_closed_hbar1(&printed, &fam2));
        assert!(is_closed_hbar1(&general, &fam2));
        if m > 0 {
            assert!(
                !is_exact_hbar1(&printed, &fam2).unwrap(),
                "(β1)^{m} nonexact"
            );
            assert!(!is_exact_hbar1(&general, &fam2).unwrap());
        }

        // c₂ ∂c₂ … ∂^{m+1} c₂
        let derivs: Vec<Generator> = (0..=(m + 1)).map(|k| c(2).derived(k as u8)).collect();
        let fam3 = word(&derivs);
        assert!(is_closed_hbar1(&printed, &fam3), "derivative family closed");
        assert!(
            !is_exact_hbar1(&printed, &fam3).unwrap(),
            "derivative family nonexact"
        );

        // under the nilpotent variant the first and third families are not
        // closed (their closedness is a property of the display variant)
        if m == 0 {
            assert!(!is_closed_hbar1(&general, &fam1));
            assert!(!is_closed_hbar1(&general, &fam3));
        }
    }
    pass(
        8,
        "for m <= 3 the families (γ1)^m c2, (β1)^m and c2 ∂c2 … ∂^{m+1} c2 are \
         closed and nonexact under the display variant of d_qL4; (β1)^m survives \
         under the nilpotent derivative-index variant, the other two do not",
    );
}

#[test]
fn criterion_09_p2_quantum_families() {
    let g = build_generator(&p2(), OpeConvention::Section2);

    for k in 0..=2usize {
        for m in 0..=2usize {
            let mut letters = vec![c(1), c(2)];
            letters.extend(std::iter::repeat_n(beta(1), k));
            letters.extend(std::iter::repeat_n(beta(2), m));
            let base = word(&letters);
            assert!(is_closed_hbar1(&g, &base), "c1c2 β1^{k} β2^{m} closed");
            assert!(
                !is_exact_hbar1(&g, &base).unwrap(),
                "c1c2 β1^{k} β2^{m} nonexact"
            );

            // the closed second family pairs β_i with b^i with a plus sign;
            // the printed minus combination is not closed (its sign traces to
            // the certified b²-row print defect of criterion 1)
            let plus = base
                .mul(&word(&[beta(1), b(1)]))
                .add(&base.mul(&word(&[beta(2), b(2)])));
            assert!(is_closed_hbar1(&g, &plus), "plus combination closed");
            assert!(
                !is_exact_hbar1(&g, &plus).unwrap(),
                "plus combination nonexact"
            );

            let minus = base
                .mul(&word(&[beta(1), b(1)]))
                .sub(&base.mul(&word(&[beta(2), b(2)])));
            assert!(
                !is_closed_hbar1(&g, &minus),
                "printed minus combination is refuted"
            );
        }
    }

    // ∂ of the first three weight-0 classes survives in weight 1
    for base in [
        word(&[gamma(1), c(1)]),
        word(&[gamma(2), c(2)]),
        word(&[c(1), c(2)]),
    ] {
        let derived = base.d_z();
        assert!(is_closed_hbar1(&g, &derived), "∂({}) closed", base);
        assert!(
            !is_exact_hbar1(&g, &derived).unwrap(),
            "∂({}) nonexact",
            base
        );
    }

    // ∂ of the top class is closed but exact, published claim notwithstanding:
    // the explicit preimage γ¹∂c₁ + γ²∂c₂ certifies it
    let top_derived = word(&[gamma(1), gamma(2), c(1), c(2)]).d_z();
    assert!(is_closed_hbar1(&g, &top_derived));
    let witness = word(&[gamma(1), c(1).derived(1)]).add(&word(&[gamma(2), c(2).derived(1)]));
    assert_eq!(
        g.apply_hbar1(&witness),
        top_derived,
        "the coboundary witness is exact arithmetic"
    );
    assert!(is_exact_hbar1(&g, &top_derived).unwrap());

    pass(
        9,
        "for k, m <= 2 the families c1c2 β1^k β2^m and c1c2 β1^k β2^m(β1b1 + β2b2) \
         are closed and nonexact (the printed minus pairing is machine-refuted, \
         consistent with the certified b2-row defect); ∂(γ1c1), ∂(γ2c2), ∂(c1c2) \
         are closed and nonexact; ∂(γ1γ2c1c2) is closed but exact, with certified \
         preimage γ1∂c1 + γ2∂c2",
    );
}

#[test]
fn criterion_10_nambu_identities() {
    let n = 3u8;
    let bracket = |fs: &[Poly]| jacobian_bracket(fs, n).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for trial in 0..20 {
        let g = random_poly(&mut rng, n, 2, 3);
        let h = random_poly(&mut rng, n, 2, 3);
        let rest = [
            random_poly(&mut rng, n, 2, 3),
            random_poly(&mut rng, n, 2, 3),
        ];
        assert!(
            leibniz_check(&bracket, &g, &h, &rest).is_zero(),
            "leibniz trial {trial}"
        );
        let f1 = random_poly(&mut rng, n, 2, 2);
        let f2 = random_poly(&mut rng, n, 2, 2);
        let f3 = random_poly(&mut rng, n, 2, 2);
        let g2 = random_poly(&mut rng, n, 2, 2);
        let h2 = random_poly(&mut rng, n, 2, 2);
        assert!(
            filippov_check(&bracket, &g2, &h2, &f1, &f2, &f3).is_zero(),
            "filippov trial {trial}"
        );
    }

    // Takhtajan conditions for the two stated tensors
    let mut top = NambuTensor::new(3, 3).unwrap();
    top.set(&[1, 2, 3], Poly::one(3)).unwrap();
    assert!(takhtajan_check(&top).unwrap().passed());
    let mut xtop = NambuTensor::new(3, 3).unwrap();
    xtop.set(&[1, 2, 3], Poly::var(3, 1)).unwrap();
    assert!(takhtajan_check(&xtop).unwrap().passed());

    // fixing z in the Jacobian tensor leaves the 2D determinant bracket
    let fixed = top.fix_argument(&Poly::var(3, 3)).unwrap();
    assert_eq!(fixed.component(&[1, 2]), Poly::one(3));
    assert!(fixed.component(&[1, 3]).is_zero());
    assert!(fixed.component(&[2, 3]).is_zero());
    let f = Poly::var(3, 1).pow(2);
    let gpoly = Poly::var(3, 2).mul(&Poly::var(3, 1));
    assert_eq!(
        fixed.bracket(&[f.clone(), gpoly.clone()]).unwrap(),
        jacobian_bracket(&[Poly::var(3, 3), f, gpoly], 3).unwrap()
    );

    pass(
        10,
        "20 seeded Leibniz and Filippov trials vanish identically; Takhtajan \
         conditions pass for ∂x∧∂y∧∂z and x·∂x∧∂y∧∂z; fixing z yields the 2D \
         determinant bracket",
    );
}

#[test]
fn criterion_11_jacobi_schouten_cross_validation() {
    let suite: Vec<(&str, PoissonTensor, bool)> = vec![
        ("P1", p1(), true),
        ("P2", p2(), true),
        ("P3", p3(), true),
        ("P4", p4(), true),
        (
            "so3",
            {
                let mut p = PoissonTensor::new(3);
                p.set(1, 2, Poly::var(3, 3)).unwrap();
                p.set(2, 3, Poly::var(3, 1)).unwrap();
                p.set(1, 3, Poly::var(3, 2).neg()).unwrap();
                p
            },
            true,
        ),
        (
            "decomposable",
            {
                let mut p = PoissonTensor::new(3);
                p.set(1, 2, Poly::var(3, 3)).unwrap();
                p.set(1, 3, Poly::var(3, 3)).unwrap();
                p
            },
            true,
        ),
        (
            "contact-like",
            {
                let mut p = PoissonTensor::new(3);
                p.set(1, 2, Poly::one(3)).unwrap();
                p.set(1, 3, Poly::var(3, 1)).unwrap();
                p
            },
            false,
        ),
        ("zero", PoissonTensor::new(2), true),
    ];
    assert!(suite.len() >= 6);
    assert!(suite.iter().any(|(_, _, ok)| !ok));
    for (name, p, expected) in &suite {
        let (direct, _) = jacobi_check(p);
        let mv = p.to_multivector();
        let square_zero = schouten(&mv, &mv).unwrap().is_zero();
        assert_eq!(direct, *expected, "{name}: jacobi_check");
        assert_eq!(square_zero, *expected, "{name}: [[P,P]] = 0");
    }
    pass(
        11,
        "jacobi_check agrees with [[P,P]] = 0 on 8 tensors including a failing one",
    );
}

/// Exercises of operator-level invariants used throughout: the residue
/// bracket kills total derivatives, commutes with d_z, and the V-filtration
/// is respected on the first page.
#[test]
fn supporting_invariants() {
    let g = build_generator(&p2(), OpeConvention::Section2);
    let trunc = Truncation {
        max_weight: 1,
        max_letters: 4,
        fermion_min: -2,
        fermion_max: 2,
    };
    for w in trunc.basis(2) {
        let s = State::monomial(w, HbarPoly::one());
        // {∮J, ∂s} = ∂{∮J, s}
        assert_eq!(g.apply(&s.d_z()), g.apply(&s).d_z());
        // V_n filtration on the first page
        let h1 = g.apply_hbar1(&s);
        if !h1.is_zero() {
            assert!(h1.vn_grade() <= s.vn_grade());
        }
    }
    // an integrated total derivative acts as zero
    let density = word(&[gamma(1), c(1), beta(2)]).d_z();
    let op = qlich::IntegratedOperator::new(density, OpeConvention::Section2, 2);
    for w in trunc.basis(2) {
        let s = State::monomial(w, HbarPoly::one());
        assert!(op.bracket_action(&s).is_zero());
    }
    // leading-order nilpotency: the ħ¹ page squares to zero on its own
    let _ = QuantumGenerator {
        tensor: p2(),
        op: g.op.clone(),
        pairing: g.pairing,
    };
    for w in trunc.basis(2) {
        let s = State::monomial(w, HbarPoly::one());
        assert!(g.apply_hbar1(&g.apply_hbar1(&s)).is_zero());
    }
}
