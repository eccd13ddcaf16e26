//! Acceptance criteria 1–10. Each criterion prints one `PASS`/`FAIL` line;
//! the test fails if any criterion fails.
//!
//! Set `CHARRING_TABLES` to a directory of table files to run the large
//! Weyl and sporadic rows in ingest mode.

use std::path::PathBuf;
use std::time::Instant;

use charring::chartab::dixon_table;
use charring::closedform::{
    dihedral_invariants, direct_product_invariants, sym_block_d_sequence, sym_invariants, sym_loewy, Partition,
};
use charring::groups;
use charring::modring::{build_mod_ring, InvariantReport, Status};
use charring::numtheory::{is_prime, prime_factors};
use charring::permgroup::PermutationGroup;
use charring::report::{reproduce, verify_group, ReferenceRow, RowOutcome, Suite, TableSource, ALTERNATING_ROWS};
use charring::sections::principal_block;

const SEED: u64 = 20240917;

struct Outcome {
    pass: bool,
    details: String,
}

fn outcome(pass: bool, details: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        details: details.into(),
    }
}

fn source() -> TableSource {
    TableSource::new(std::env::var_os("CHARRING_TABLES").map(PathBuf::from))
}

fn rows_where(rows: &[ReferenceRow], keep: impl Fn(&ReferenceRow) -> bool) -> Vec<ReferenceRow> {
    rows.iter().filter(|r| keep(r)).copied().collect()
}

fn summarize(outcomes: &[RowOutcome], required: impl Fn(&RowOutcome) -> bool) -> Outcome {
    let mut failures = Vec::new();
    let (mut pass, mut skip) = (0, 0);
    for o in outcomes {
        match o.status {
            Status::Pass => pass += 1,
            Status::Skip if !required(o) => skip += 1,
            _ => failures.push(o.text()),
        }
    }
    let mut details = format!("{pass} rows match, {skip} skipped");
    if !failures.is_empty() {
        details.push_str("; ");
        details.push_str(&failures.join("; "));
    }
    outcome(failures.is_empty(), details)
}

fn criterion_1() -> Outcome {
    let rows = rows_where(ALTERNATING_ROWS, |r| ["A5", "A6", "A7", "A8"].contains(&r.group));
    summarize(&reproduce(&rows, &TableSource::default(), SEED), |_| true)
}

fn criterion_2() -> Outcome {
    let qs = [2, 3, 4, 5, 7, 8, 9, 11, 13];
    let names: Vec<String> = qs.iter().map(|q| format!("PSL(2,{q})")).collect();
    let rows = rows_where(Suite::Psl.rows(), |r| names.iter().any(|n| n == r.group));
    summarize(&reproduce(&rows, &TableSource::default(), SEED), |_| true)
}

fn criterion_3() -> Outcome {
    let required = ["W(H3)", "W(F4)", "GL(3,2)", "SL(2,8)", "M11"];
    let mut rows = Suite::Weyl.rows().to_vec();
    rows.extend_from_slice(Suite::Small.rows());
    summarize(&reproduce(&rows, &source(), SEED), |o| required.contains(&o.group.as_str()))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=4u32 {
        for m in 0..=1u32 {
            let order = (1usize << n) * (2 * m as usize + 1);
            let g = groups::dihedral(order).unwrap();
            let b = principal_block(&g, &format!("D{order}"), 2).unwrap();
            let expected = dihedral_invariants(n, m).unwrap();
            checked += 1;
            if (b.loewy, b.ext1) != expected {
                bad.push(format!("D{order}: ({}, {}) vs {expected:?}", b.loewy, b.ext1));
            }
        }
    }
    let d8 = principal_block(&groups::dihedral(8).unwrap(), "D8", 2).unwrap();
    let d16 = principal_block(&groups::dihedral(16).unwrap(), "D16", 2).unwrap();
    outcome(
        bad.is_empty(),
        format!(
            "{checked} dihedral groups, D8 → ({}, {}), D16 → ({}, {}){}",
            d8.loewy,
            d8.ext1,
            d16.loewy,
            d16.ext1,
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut blocks = 0;
    let mut recorded = Vec::new();
    for n in 2..=8usize {
        let g = groups::symmetric(n).unwrap();
        let table = dixon_table(&g, &format!("S{n}")).unwrap();
        for p in [2u64, 3, 5, 7] {
            let ring = build_mod_ring(&table, p).unwrap();
            let loewy = ring.loewy_series().unwrap();
            for b in ring.all_block_invariants(&loewy).unwrap() {
                let rep = table.classes[b.class].representative.as_ref().unwrap();
                let mu = Partition::cycle_type(rep);
                let (l, e) = sym_invariants(p as u32, &mu).unwrap();
                let d = sym_block_d_sequence(p as u32, &mu).unwrap();
                blocks += 1;
                if b.loewy != l || b.ext1 != e || b.d_sequence != d {
                    bad.push(format!(
                        "S{n} p={p} μ={mu}: ℓ={} ext¹={} d={:?} vs ℓ={l} ext¹={e} d={d:?}",
                        b.loewy, b.ext1, b.d_sequence
                    ));
                }
            }
            let expected = sym_loewy(n as u32, p as u32);
            if loewy.loewy_length() != expected {
                bad.push(format!("ℓ_{p}(S{n}) = {} vs {expected}", loewy.loewy_length()));
            }
            if (n, p) == (4, 2) || (n, p) == (6, 2) {
                let principal = ring.all_block_invariants(&loewy).unwrap().into_iter().find(|b| b.class == 0).unwrap();
                recorded.push(format!(
                    "ℓ_2(S{n}) = {}, principal ext¹ = {}",
                    loewy.loewy_length(),
                    principal.ext1
                ));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{blocks} blocks; {}{}",
            recorded.join(", "),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

struct SweepEntry {
    group: &'static str,
    order: u64,
    report: InvariantReport,
}

fn sweep(seed: u64) -> Vec<SweepEntry> {
    let mut out = Vec::new();
    for (name, g) in groups::small_catalog() {
        let order = g.order_u64().unwrap();
        let table = dixon_table(&g, name).unwrap();
        for p in prime_factors(order) {
            let report = verify_group(&g, &table, p, seed).unwrap();
            out.push(SweepEntry {
                group: name,
                order,
                report,
            });
        }
    }
    out
}

fn is_isomorphism_check(name: &str) -> bool {
    name.starts_with("block isomorphism")
}

fn criterion_6(entries: &[SweepEntry]) -> Outcome {
    let mut bad = Vec::new();
    for e in entries {
        let r = &e.report;
        let tag = format!("{} p={}", e.group, r.p);
        for v in r.verifications.iter().filter(|v| !is_isomorphism_check(&v.name)) {
            if v.status == Status::Fail {
                bad.push(format!("{tag}: {} ({})", v.name, v.details));
            }
        }
        let rad = r.d_sequence.get(1).copied().unwrap_or(0);
        if rad != r.classes - r.p_regular_classes {
            bad.push(format!("{tag}: dim Rad = {rad}"));
        }
        if rad == 0 {
            bad.push(format!("{tag}: semisimple although p divides |G|"));
        }
        if r.blocks.iter().map(|b| b.dimension).sum::<usize>() != r.classes {
            bad.push(format!("{tag}: block dimensions"));
        }
        if r.loewy > r.s_p || (r.s_p == 2 && r.loewy != 2) {
            bad.push(format!("{tag}: ℓ={} S={}", r.loewy, r.s_p));
        }
    }
    for (name, g) in groups::small_catalog() {
        let order = g.order_u64().unwrap();
        let table = dixon_table(&g, name).unwrap();
        for p in (2..=13).filter(|&p| is_prime(p) && order % p != 0) {
            if !build_mod_ring(&table, p).unwrap().is_semisimple() {
                bad.push(format!("{name} p={p}: not semisimple"));
            }
        }
    }
    let klein = entries.iter().find(|e| e.group == "C2xC2").map(|e| (e.report.loewy, e.report.s_p));
    if klein != Some((3, 4)) {
        bad.push(format!("Klein four: {klein:?}"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} (G, p) pairs, Klein four ℓ=3 < S=4{}",
            entries.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_7(entries: &[SweepEntry]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for e in entries {
        for v in e.report.verifications.iter().filter(|v| is_isomorphism_check(&v.name)) {
            checked += 1;
            if v.status != Status::Pass {
                bad.push(format!("{} (order {}) p={}: {} {}", e.group, e.order, e.report.p, v.name, v.details));
            }
        }
    }
    outcome(
        bad.is_empty() && checked > 0,
        format!(
            "{checked} blocks, {} exceptions{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_8() -> Outcome {
    let c2 = groups::cyclic(2).unwrap();
    let c4 = groups::cyclic(4).unwrap();
    let s3 = groups::symmetric(3).unwrap();
    let cases: Vec<(&str, &PermutationGroup, &PermutationGroup, u64)> = vec![
        ("Z/2×Z/2", &c2, &c2, 2),
        ("Z/2×Z/4", &c2, &c4, 2),
        ("S3×S3", &s3, &s3, 2),
        ("S3×S3", &s3, &s3, 3),
    ];
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (name, a, b, p) in cases {
        let prod = a.direct_product(b).unwrap();
        let ia = principal_block(a, "A", p).unwrap();
        let ib = principal_block(b, "B", p).unwrap();
        let ip = principal_block(&prod, name, p).unwrap();
        let expected = direct_product_invariants((ia.loewy, ia.ext1), (ib.loewy, ib.ext1));
        lines.push(format!("{name} p={p} → ({}, {})", ip.loewy, ip.ext1));
        if (ip.loewy, ip.ext1) != expected {
            bad.push(format!("{name} p={p}: expected {expected:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{}{}",
            lines.join(", "),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let (mut pairs, mut enumerated) = (0, 0);
    for (name, g) in groups::small_catalog() {
        let order = g.order_u64().unwrap();
        if order > 24 {
            continue;
        }
        let table = dixon_table(&g, name).unwrap();
        for p in prime_factors(order) {
            let ring = build_mod_ring(&table, p).unwrap();
            let null_space = ring.radical_basis().unwrap();
            let frobenius = ring.radical_by_frobenius();
            pairs += 1;
            if null_space.len() != frobenius.len() {
                bad.push(format!("{name} p={p}: {} vs {}", null_space.len(), frobenius.len()));
            }
            if let Some(count) = ring.count_nilpotents() {
                enumerated += 1;
                if count != p.pow(null_space.len() as u32) {
                    bad.push(format!("{name} p={p}: {count} nilpotents"));
                }
            }
            let over_p = ring.loewy_series().unwrap().d;
            let over_q = ring.loewy_sequence_over_extension();
            if over_p != over_q {
                bad.push(format!("{name} p={p}: Loewy {over_p:?} vs {over_q:?}"));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{pairs} (G, p) pairs, {enumerated} by enumeration{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn serialized(entries: &[SweepEntry], rows: &[RowOutcome]) -> String {
    let reports: Vec<&InvariantReport> = entries.iter().map(|e| &e.report).collect();
    serde_json::to_string(&(reports, rows)).unwrap()
}

fn criterion_10(first: &[SweepEntry]) -> Outcome {
    let rows = reproduce(ALTERNATING_ROWS, &TableSource::default(), SEED);
    let a = serialized(first, &rows);
    let b = serialized(&sweep(SEED), &reproduce(ALTERNATING_ROWS, &TableSource::default(), SEED));
    outcome(a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

#[test]
fn acceptance() {
    let mut all_pass = true;
    let mut report = |n: usize, start: Instant, o: Outcome| {
        all_pass &= o.pass;
        println!(
            "criterion {n}: {} ({:.1}s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            o.details
        );
    };
    let t = Instant::now();
    report(1, t, criterion_1());
    let t = Instant::now();
    report(2, t, criterion_2());
    let t = Instant::now();
    report(3, t, criterion_3());
    let t = Instant::now();
    report(4, t, criterion_4());
    let t = Instant::now();
    report(5, t, criterion_5());
    let t = Instant::now();
    let entries = sweep(SEED);
    report(6, t, criterion_6(&entries));
    let t = Instant::now();
    report(7, t, criterion_7(&entries));
    let t = Instant::now();
    report(8, t, criterion_8());
    let t = Instant::now();
    report(9, t, criterion_9());
    let t = Instant::now();
    report(10, t, criterion_10(&entries));
    assert!(all_pass, "some acceptance criteria failed");
}
