//! Acceptance checks, one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines are always printed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pinball_core::billey::{billey_restrict, billey_restrict_with_word, gkm_divisibility_check, schubert_class, schubert_class_full, schubert_expansion};
use pinball_core::flowup::{
    construct_flowup_basis, find_triangular_order, is_flowup, is_poset_upper_triangular,
    is_total_order_upper_triangular, linearly_independent, module_equal, rank, verify_matching_basis,
    verify_pinball_basis, Candidate, CandidateBasis, IndexPoset, RestrictionVector,
};
use pinball_core::hessenberg::{
    hessenberg_betti, hessenberg_fixed_points, peterson_degree, peterson_fixed_points, peterson_rolldown,
    HessenbergSpace,
};
use pinball_core::repro::{reproduce, ReproTarget};
use pinball_core::springer_rep::{
    character, class_representatives, fixed_point_count, gp_character, is_representation, kk_act_on_class,
    kk_matrix_simple, kk_representation, KKMatrix,
};
use pinball_core::{LieType, RootPolynomial, WeylGroup};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], ok_detail: impl Into<String>) -> Self {
        if failures.is_empty() {
            Self { pass: true, detail: ok_detail.into() }
        } else {
            let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
            let more = failures.len().saturating_sub(shown.len());
            let suffix = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            Self { pass: false, detail: format!("{}{suffix}", shown.join("; ")) }
        }
    }
}

fn figure(target: ReproTarget) -> Outcome {
    match reproduce(target, 10_000_000) {
        Err(e) => Outcome { pass: false, detail: e.to_string() },
        Ok(r) => {
            let failures: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            Outcome::new(&failures, format!("{} checks", r.checks.len()))
        }
    }
}

fn peterson_suite() -> Outcome {
    let mut failures = Vec::new();
    let groups = [(LieType::A, 3), (LieType::B, 3), (LieType::C, 3), (LieType::D, 4)];
    for (lie, r) in groups {
        let name = format!("{lie}{r}");
        let g = WeylGroup::new(lie, r).unwrap();
        let pf = peterson_fixed_points(&g);
        if pf.len() != 1 << r {
            failures.push(format!("{name}: {} fixed points", pf.len()));
        }
        let h = HessenbergSpace::peterson(&g);
        let filtered: BTreeSet<usize> = hessenberg_fixed_points(&g, &h).into_iter().collect();
        let maxima: BTreeSet<usize> = pf.iter().map(|(_, w)| *w).collect();
        if filtered != maxima {
            failures.push(format!("{name}: filter set differs from parabolic maxima"));
        }
        let targets = common::binomials(r);
        let betti = hessenberg_betti(&g, &h);
        if betti != targets {
            failures.push(format!("{name}: Betti {betti:?}"));
        }
        let members: Vec<usize> = pf.iter().map(|(_, w)| *w).collect();
        let mut classes = Vec::new();
        let mut f = Vec::new();
        let mut f_rank = Vec::new();
        let mut deg_y = Vec::new();
        for (j, _) in &pf {
            let v = peterson_rolldown(&g, j).unwrap();
            if g.length(v) as usize != j.len() {
                failures.push(format!("{name}: length of v_J for J = {j:?}"));
            }
            let c = schubert_class(&g, v, &members).unwrap();
            classes.push(Candidate { label: c.label.clone(), degree: g.length(v), vector: RestrictionVector(c.values) });
            f.push(g.label(v));
            f_rank.push(g.length(v));
            deg_y.push(peterson_degree(j) as u32);
        }
        let basis = CandidateBasis { index: members.iter().map(|&w| g.label(w)).collect(), classes };
        let report = verify_pinball_basis(&basis, &targets);
        if !report.ok() {
            failures.push(format!("{name}: pinball basis {report:?}"));
        }
        let ip = IndexPoset::bruhat(&g, &members);
        let vectors = basis.vectors();
        if !is_poset_upper_triangular(&ip, &vectors).unwrap() {
            failures.push(format!("{name}: not poset-upper-triangular"));
        }
        let m = verify_matching_basis(&ip, &vectors, &f, &f_rank, &deg_y, &targets).unwrap();
        if !m.ok() {
            failures.push(format!("{name}: matching {m:?}"));
        }
    }
    Outcome::new(&failures, "A3, B3, C3, D4")
}

fn billey_suite() -> Outcome {
    let mut failures = Vec::new();
    for (lie, r) in [(LieType::A, 3), (LieType::B, 2)] {
        let name = format!("{lie}{r}");
        let g = WeylGroup::new(lie, r).unwrap();
        for v in 0..g.order() {
            for w in 0..g.order() {
                let p = billey_restrict(&g, v, w).unwrap();
                if p.is_zero() == g.bruhat_leq(v, w) {
                    failures.push(format!("{name}: support of sigma_{}({})", g.label(v), g.label(w)));
                }
                if !p.is_zero() && !p.has_positive_integer_coefficients() {
                    failures.push(format!("{name}: sigma_{}({}) = {p}", g.label(v), g.label(w)));
                }
            }
            let class = schubert_class_full(&g, v).unwrap();
            if !gkm_divisibility_check(&g, &class).unwrap() {
                failures.push(format!("{name}: GKM fails for sigma_{}", g.label(v)));
            }
        }
        for w in (0..g.order()).filter(|&w| g.length(w) <= 5) {
            let words = g.all_reduced_words(w);
            for v in 0..g.order() {
                let reference = billey_restrict(&g, v, w).unwrap();
                for word in &words {
                    if billey_restrict_with_word(&g, v, word).unwrap() != reference {
                        failures.push(format!("{name}: sigma_{}({}) depends on word {word}", g.label(v), g.label(w)));
                    }
                }
            }
        }
    }
    Outcome::new(&failures, "S4 and B2, all pairs")
}

fn flowup_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let n = rng.gen_range(2..=12);
        let poset = common::random_graded_poset(&mut rng, n);
        let ip = common::all_of(&poset);
        let order = ip.default_order();
        let count = rng.gen_range(1..=n + 2);
        let gens = common::random_vectors(&mut rng, n, count);
        let pivots = match construct_flowup_basis(&gens, &order) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        let out: Vec<RestrictionVector> = pivots.iter().map(|p| p.vector.clone()).collect();
        if !is_total_order_upper_triangular(&out, &order)
            || pivots.iter().any(|p| p.vector.lead(&order) != Some(p.position))
        {
            failures.push(format!("case {case}: output not triangular"));
        }
        let mut union = gens.clone();
        union.extend(out.iter().cloned());
        let r = rank(&gens);
        if rank(&out) != r || rank(&union) != r || !linearly_independent(&out) {
            failures.push(format!("case {case}: rank changed"));
        }
        if !module_equal(&gens, &out, &order).unwrap() {
            failures.push(format!("case {case}: span changed"));
        }
        let again = construct_flowup_basis(&out, &order).unwrap();
        let positions: Vec<usize> = pivots.iter().map(|p| p.position).collect();
        let again_positions: Vec<usize> = again.iter().map(|p| p.position).collect();
        if positions != again_positions || again.iter().zip(&pivots).any(|(a, b)| a.vector != b.vector) {
            failures.push(format!("case {case}: round trip not stable"));
        }
    }

    let antichain = IndexPoset::new(
        vec!["a".into(), "b".into()],
        vec![0, 0],
        vec![vec![true, false], vec![false, true]],
    );
    let diagonal = vec![RestrictionVector::from_ints(&[&[1], &[1]])];
    if is_flowup(&antichain, &diagonal[0]).unwrap().is_some() {
        failures.push("diagonal vector is a flow-up".into());
    }
    if is_poset_upper_triangular(&antichain, &diagonal).unwrap() {
        failures.push("diagonal set is poset-upper-triangular".into());
    }
    for order in [vec![0, 1], vec![1, 0]] {
        if !is_total_order_upper_triangular(&diagonal, &order) {
            failures.push(format!("diagonal not triangular for order {order:?}"));
        }
        let basis = construct_flowup_basis(&diagonal, &order).unwrap();
        if basis.len() != 1 || basis[0].position != order[0] {
            failures.push(format!("diagonal basis for order {order:?} is not a singleton at the first slot"));
        }
    }
    if find_triangular_order(&antichain, &diagonal).unwrap().is_none() {
        failures.push("no triangular order for the diagonal".into());
    }
    Outcome::new(&failures, "100 random cases and the diagonal example")
}

fn springer_suite() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=6 {
        let g = WeylGroup::new(LieType::A, n - 1).unwrap();
        let id = KKMatrix::identity(n);
        let gens: Vec<KKMatrix> = (1..n).map(|j| kk_matrix_simple(n, j)).collect();
        for (a, x) in gens.iter().enumerate() {
            if x.mul(x) != id {
                failures.push(format!("n={n}: s{} is not an involution", a + 1));
            }
            for (b, y) in gens.iter().enumerate().skip(a + 1) {
                let ok = if b == a + 1 {
                    x.mul(y).mul(x) == y.mul(x).mul(y)
                } else {
                    x.mul(y) == y.mul(x)
                };
                if !ok {
                    failures.push(format!("n={n}: relation between s{} and s{}", a + 1, b + 1));
                }
            }
        }
        if n <= 5 && !is_representation(&g, &kk_representation(&g)) {
            failures.push(format!("n={n}: not a representation"));
        }
        for (ct, w) in class_representatives(&g) {
            let one_line = g.element(w).one_line().to_vec();
            let fix = fixed_point_count(&one_line) as i64;
            let psi = (character(&g, w, 0), character(&g, w, 1));
            let chi = (gp_character(&one_line, 0), gp_character(&one_line, 1));
            if psi != (1, fix - 1) {
                failures.push(format!("n={n} {ct:?}: psi = {psi:?}"));
            }
            if psi != chi {
                failures.push(format!("n={n} {ct:?}: psi {psi:?} != chi {chi:?}"));
            }
        }
    }
    Outcome::new(&failures, "n = 3..6")
}

fn kk_formula() -> Outcome {
    let mut failures = Vec::new();
    for r in [2, 3] {
        let g = WeylGroup::new(LieType::A, r).unwrap();
        for j in 1..=r {
            let sj = g.simple_reflection(j);
            let sigma = schubert_class_full(&g, sj).unwrap();
            for i in 1..=r {
                let acted = kk_act_on_class(&g, g.simple_reflection(i), &sigma).unwrap();
                let Some(c) = schubert_expansion(&g, &acted).unwrap() else {
                    failures.push(format!("A{r}: s{i}.sigma_s{j} has no polynomial expansion"));
                    continue;
                };
                let mut expected = vec![RootPolynomial::zero(r); g.order()];
                if i == j {
                    let mut alpha = vec![0; r];
                    alpha[j - 1] = 1;
                    expected[0] = RootPolynomial::linear(&alpha);
                    expected[sj] = RootPolynomial::constant(r, pinball_core::poly::rat(-1));
                    for k in [j.wrapping_sub(1), j + 1] {
                        if (1..=r).contains(&k) {
                            expected[g.simple_reflection(k)] = RootPolynomial::one(r);
                        }
                    }
                } else {
                    expected[sj] = RootPolynomial::one(r);
                }
                if c != expected {
                    let shown: Vec<String> = c
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(u, p)| format!("({p})*sigma_{}", g.label(u)))
                        .collect();
                    failures.push(format!("A{r}: s{i}.sigma_s{j} = {}", shown.join(" + ")));
                }
            }
        }
    }
    Outcome::new(&failures, "A2 and A3, all i, j")
}

fn main() -> ExitCode {
    let fig_limit = Duration::from_secs(5);
    let suite_limit = Duration::from_secs(60);
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("reproduce fig1", fig_limit, Box::new(|| figure(ReproTarget::Fig1))),
        ("reproduce fig2", fig_limit, Box::new(|| figure(ReproTarget::Fig2))),
        ("reproduce fig3", fig_limit, Box::new(|| figure(ReproTarget::Fig3))),
        ("reproduce fig4", fig_limit, Box::new(|| figure(ReproTarget::Fig4))),
        ("Peterson suite", suite_limit, Box::new(peterson_suite)),
        ("Billey/GKM suite", suite_limit, Box::new(billey_suite)),
        ("flow-up algebra", Duration::MAX, Box::new(flowup_suite)),
        ("Springer representation", suite_limit, Box::new(springer_suite)),
        ("Kostant-Kumar formula", suite_limit, Box::new(kk_formula)),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let elapsed = start.elapsed();
        if elapsed > *limit {
            out.pass = false;
            out.detail = format!("exceeded {limit:?}; {}", out.detail);
        }
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.2?}] {}",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            elapsed,
            out.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    // Report-only by default; ACCEPTANCE_STRICT=1 turns any FAIL into a nonzero exit.
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failed == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
