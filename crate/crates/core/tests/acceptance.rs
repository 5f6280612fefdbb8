//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! fails. Set `KGV_EXTENDED=1` for the Sp(6,2) and `q <= 1024` tiers.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use kgv_core::brute_force::{
    closure, general_linear, kgv_count, max_class_number_symplectic_type, metacyclic_survey, symplectic_group,
    type_histogram, vector_orbits, verify_metacyclic_theorem, verify_small_lemmas, KgvMethod, MatCtx,
    DEFAULT_CLOSURE_CAP,
};
use kgv_core::element_counts::{census_count, fg_unipotent_count, section3_table, total_class_sum};
use kgv_core::group_orders::GroupLabel;
use kgv_core::kgv_bounds::{
    case_report, exceptional_pairs_scan, least_admissible_field, printed_chains, scan_section5, MetacyclicBound,
    PRINTED_EXCEPTIONAL_PAIRS,
};
use kgv_core::orbit_bounds::{d1, d2};
use kgv_core::partitions::{enumerate_partitions, Partition};
use kgv_core::polyfield::MonicPoly;
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn extended() -> bool {
    std::env::var("KGV_EXTENDED").is_ok_and(|v| v == "1")
}

fn histogram_matches(a: u32, r: u32) -> Result<u64, String> {
    let g = symplectic_group(a as usize, r, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
    let label = GroupLabel::sp(a, r as u64);
    let hist = type_histogram(&g).map_err(|e| e.to_string())?;
    check(hist.values().sum::<u64>() == g.order() as u64, || format!("Sp({},{r}) census total", 2 * a))?;
    for (datum, &count) in &hist {
        let formula = census_count(label, datum).map_err(|e| e.to_string())?;
        check(formula == BigUint::from(count), || {
            format!("Sp({},{r}) {datum:?}: formula {formula}, observed {count}", 2 * a)
        })?;
    }
    if r != 2 {
        let sum = total_class_sum(label).map_err(|e| e.to_string())?;
        check(sum == BigUint::from(g.order()), || format!("Sp({},{r}) class sum {sum}", 2 * a))?;
    }
    Ok(g.order() as u64)
}

fn criterion_1() -> Outcome {
    let mut orders = Vec::new();
    for (a, r) in [(1, 3), (1, 5), (1, 7), (2, 2), (2, 3)] {
        orders.push(histogram_matches(a, r)?);
    }
    let mut detail = format!("histograms match on groups of orders {orders:?}");
    if extended() {
        let order = histogram_matches(3, 2)?;
        let g = symplectic_group(3, 2, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
        let hist = type_histogram(&g).map_err(|e| e.to_string())?;
        let t1 = MonicPoly::t_plus_one(2);
        let count = |parts: &[u32]| hist.get(&[(t1.clone(), Partition::new(parts.to_vec()))].into()).copied();
        check(count(&[2, 1, 1, 1, 1]) == Some(63), || "Sp(6,2) transvections".into())?;
        check(count(&[2, 2, 1, 1]) == Some(1260), || "Sp(6,2) (2,2,1,1)".into())?;
        detail.push_str(&format!("; Sp(6,2) order {order}, 63 transvections, 1260 of type (2,2,1,1)"));
    }
    Ok(detail)
}

fn criterion_2() -> Outcome {
    let table = section3_table().map_err(|e| e.to_string())?;
    let cells = table.rows.iter().flat_map(|r| &r.cells).count();
    check(table.all_hold(), || "some computed entry exceeds the printed entry".into())?;
    let value = |g: &str, c: (u32, u32)| table.cell(g, c).map(|c| c.computed.clone());
    check(value("Sp(4,5)", (3, 5)) == Some(651u32.into()), || "Sp(4,5) 3/5 != 651".into())?;
    check(value("Sp(2,3)", (2, 3)) == Some(9u32.into()), || "Sp(2,3) 2/3 != 9".into())?;
    check(value("Sp(2,5)", (3, 5)) == Some(1u32.into()), || "Sp(2,5) 3/5 != 1".into())?;
    check(value("Sp(2,7)", (4, 7)) == Some(1u32.into()), || "Sp(2,7) 4/7 != 1".into())?;
    Ok(format!("{cells} entries within the printed values, Sp(4,5) 3/5 = 651"))
}

fn cyclic_orbits(r: u32, blocks: &[usize]) -> Result<u64, String> {
    let n: usize = blocks.iter().sum();
    let ctx = MatCtx::new(r, n).map_err(|e| e.to_string())?;
    let mut rows = vec![vec![0u32; n]; n];
    let mut start = 0;
    for &b in blocks {
        for i in start..start + b {
            rows[i][i] = 1;
            if i + 1 < start + b {
                rows[i][i + 1] = 1;
            }
        }
        start += b;
    }
    let x = ctx.from_rows(&rows).map_err(|e| e.to_string())?;
    let g = closure(ctx, &[x], 1 << 16).map_err(|e| e.to_string())?;
    Ok(vector_orbits(&g).len() as u64)
}

fn criterion_3() -> Outcome {
    let mut pairs = 0;
    for r in [2u64, 3, 5, 7] {
        let mut a = 1u64;
        while r.pow(2 * a as u32) <= 2500 {
            let o1 = cyclic_orbits(r as u32, &[2 * a as usize])?;
            let o2 = cyclic_orbits(r as u32, &[a as usize, a as usize])?;
            check(d1(r, a) == BigUint::from(o1), || format!("d1({r},{a})"))?;
            check(d2(r, a) == BigUint::from(o2), || format!("d2({r},{a})"))?;
            pairs += 1;
            a += 1;
        }
    }
    check(d2(2, 2) == BigUint::from(10u32), || "d2(2,2) != 10".into())?;
    check(d2(3, 2) == BigUint::from(33u32), || "d2(3,2) != 33".into())?;
    Ok(format!("{pairs} pairs (r, a), d2(2,2) = 10, d2(3,2) = 33"))
}

fn theorem_tier(q_max: u64) -> Result<(), String> {
    let v = verify_metacyclic_theorem(q_max).map_err(|e| e.to_string())?;
    let names: BTreeSet<_> = v.iter().filter_map(|x| x.name.clone()).collect();
    check(v.len() == 2, || format!("{} violations up to {q_max}", v.len()))?;
    check(v.iter().all(|x| x.v == 4 && x.k_gv == 5), || "violation outside p^n = 4".into())?;
    check(names == BTreeSet::from(["D8".to_string(), "S4".to_string()]), || format!("{names:?}"))
}

fn criterion_4() -> Outcome {
    theorem_tier(512)?;
    let mut detail = "exactly D8 and S4 at p^n = 4 for p^n <= 512".to_string();
    if extended() {
        theorem_tier(1024)?;
        detail.push_str(" and <= 1024");
    }
    Ok(detail)
}

fn criterion_5() -> Outcome {
    let g = general_linear(3, 2, 100).map_err(|e| e.to_string())?;
    let lgt = kgv_count(&g, KgvMethod::Lgt).map_err(|e| e.to_string())?;
    let direct = kgv_count(&g, KgvMethod::Direct).map_err(|e| e.to_string())?;
    check(lgt == 11 && direct == 11, || format!("lgt {lgt}, direct {direct}"))?;
    Ok("k(AGL(2,3)) = 11 by both methods".into())
}

fn criterion_6() -> Outcome {
    let found = exceptional_pairs_scan().map_err(|e| e.to_string())?;
    let printed: BTreeSet<_> = PRINTED_EXCEPTIONAL_PAIRS.into_iter().collect();
    check(found == printed, || format!("scan found {found:?}"))?;
    let mut thresholds = Vec::new();
    for chain in printed_chains().into_iter().filter(|c| c.a >= 2) {
        let Some(thr) = chain.printed_threshold else { continue };
        let rep = case_report(chain.a, chain.r).map_err(|e| e.to_string())?;
        let tag = format!("(a, r) = ({}, {})", chain.a, chain.r);
        check(rep.threshold_qk == thr, || format!("{tag}: threshold {}", rep.threshold))?;
        check(rep.exceptions == chain.printed_exceptions, || format!("{tag}: exceptions {:?}", rep.exceptions))?;
        check(rep.prime_set == chain.printed_primes, || format!("{tag}: primes {:?}", rep.prime_set))?;
        let cap = chain.printed_cap_log2.unwrap_or(0) as f64;
        check(rep.residual_cap_log2 <= cap, || format!("{tag}: cap 2^{:.1}", rep.residual_cap_log2))?;
        thresholds.push(rep.threshold);
    }
    check(thresholds.len() == 7, || format!("{} case reports", thresholds.len()))?;
    Ok(format!("15 exceptional pairs; thresholds {}", thresholds.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut checked = Vec::new();
    for chain in printed_chains() {
        let qk = chain.printed_threshold.unwrap_or_else(|| least_admissible_field(chain.r, 2));
        // the a = 1, r = 2 chain takes the largest k(G) found by search
        let class_number = if chain.a == 1 && chain.r == 2 {
            let search = max_class_number_symplectic_type(qk as u32).map_err(|e| e.to_string())?;
            Some(BigUint::from(search.max_class_number))
        } else {
            None
        };
        let report = chain.evaluate(qk, class_number).map_err(|e| e.to_string())?;
        check(report.verdict, || format!("({}, {}) fails at |K| = {qk}", chain.a, chain.r))?;
        checked.push(format!("({},{})@{qk}", chain.a, chain.r));
    }
    Ok(format!("{} chains hold at their thresholds", checked.len()))
}

fn criterion_8() -> Outcome {
    let scan = scan_section5(4096, 1 << 20).map_err(|e| e.to_string())?;
    check(scan.violations.is_empty(), || format!("violations {:?}", scan.violations))?;
    Ok(format!("{} pairs (n, |K|) checked, none above max(|V|, 2^1344)", scan.checked))
}

fn criterion_9() -> Outcome {
    let survey = metacyclic_survey(512).map_err(|e| e.to_string())?;
    let failing: Vec<_> = survey.iter().filter(|r| !r.bounds_hold()).map(|r| r.spec).collect();
    check(failing.is_empty(), || format!("bounds fail on {failing:?}"))?;
    let tight = survey
        .iter()
        .find(|r| (r.spec.p, r.spec.n, r.spec.m, r.spec.d) == (2, 2, 1, 2))
        .ok_or("missing (2,2,1,2)")?;
    let bound = tight.bounds.iter().find(|(l, _, _)| *l == MetacyclicBound::ClassNumber).ok_or("no class-number bound at (2,2,1,2)")?;
    check(bound.1 == "3" && tight.k_g == 3, || format!("class-number bound {} vs k(G) {}", bound.1, tight.k_g))?;
    let estimates: usize = survey.iter().map(|r| r.bounds.len()).sum();
    Ok(format!("{estimates} estimates on {} instances, class-number bound tight at (2,2,1,2)", survey.len()))
}

fn criterion_10() -> Outcome {
    for n in 0..=12 {
        for p in enumerate_partitions(n).map_err(|e| e.to_string())? {
            check(p.dual().dual() == p, || format!("dual of {p:?}"))?;
            let weighted: u64 = p.parts().iter().enumerate().map(|(i, &x)| i as u64 * x as u64).sum();
            check(p.n_statistic() == weighted, || format!("n({p:?})"))?;
        }
    }
    for mu in enumerate_partitions(6).map_err(|e| e.to_string())? {
        fg_unipotent_count(3, 3, &mu).map_err(|e| e.to_string())?;
    }
    let lemmas = verify_small_lemmas(64).map_err(|e| e.to_string())?;
    for l in &lemmas {
        check(l.holds(), || format!("{}: {:?}", l.lemma, l.failures.first()))?;
    }
    let instances: u64 = lemmas.iter().map(|l| l.instances).sum();
    Ok(format!("partition identities, {instances} lemma instances on p^n <= 64"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", criterion_1),
        ("count table", criterion_2),
        ("orbit counts d1, d2", criterion_3),
        ("metacyclic theorem", criterion_4),
        ("k(AGL(2,3))", criterion_5),
        ("exceptional pairs and case reports", criterion_6),
        ("inequality chains", criterion_7),
        ("large-dimension scan", criterion_8),
        ("metacyclic bound dominance", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
