//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use cayley_drg::bits::BitSet;
use cayley_drg::cayley::{build, distance_partition};
use cayley_drg::classify::{census, enumerate_symmetric_sets, CensusOptions, CensusReport};
use cayley_drg::designs::{
    bipartite_from_rows, diffset_search, doubled_group_families, line_graph_check, pcp_enumerate,
    rows_from_shifted, td_from_pcp, td_line_srg_params, DEFAULT_SEARCH_BUDGET,
};
use cayley_drg::drg::{check_drg, check_drg_general, srg_params, FamilyTag, SrgParams};
use cayley_drg::fourier::{
    convolution_check, fourier_audit, inversion_check, transversal_zeros, CharacteristicFunction,
    CyclotomicRing,
};
use cayley_drg::group::GroupDescriptor;
use cayley_drg::schur::{distance_module, is_primitive, is_schur_ring};
use cayley_drg::structure::is_primitive_graph;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn grp(s: &str) -> GroupDescriptor {
    s.parse().expect("group spec")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed_census(group: &str) -> Result<(CensusReport, Duration), String> {
    let start = Instant::now();
    let report = census(grp(group), &CensusOptions::default()).map_err(|e| e.to_string())?;
    Ok((report, start.elapsed()))
}

fn common(report: &CensusReport, total: u128, sets: u128) -> Result<(), String> {
    ensure(report.totals.symmetric_sets == total, || {
        format!(
            "{} symmetric sets, want {total}",
            report.totals.symmetric_sets
        )
    })?;
    ensure(report.totals.drg_sets == sets, || {
        format!("{} DRG sets, want {sets}", report.totals.drg_sets)
    })?;
    ensure(report.anomalies.is_empty(), || {
        format!("anomalies: {:?}", report.anomalies)
    })
}

fn under(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

fn census_3x3(report: &CensusReport, elapsed: Duration) -> Outcome {
    common(report, 16, 11)?;
    let td = report.sets_with(FamilyTag::TdLineGraph { r: 2, v: 3 });
    let mp = report.sets_with(FamilyTag::CompleteMultipartite {
        parts: 3,
        part_size: 3,
    });
    let k = report.sets_with(FamilyTag::Complete);
    ensure((td, mp, k) == (6, 4, 1), || {
        format!("families {td}/{mp}/{k}, want 6/4/1")
    })?;
    under(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "11 of 16 sets: TD(2,3) x6, K3x3 x4, K9 x1 in {elapsed:.2?}"
    ))
}

fn census_9x3(report: &CensusReport, elapsed: Duration) -> Outcome {
    common(report, 8192, 9)?;
    let k = report.sets_with(FamilyTag::Complete);
    let a = report.sets_with(FamilyTag::CompleteMultipartite {
        parts: 3,
        part_size: 9,
    });
    let b = report.sets_with(FamilyTag::CompleteMultipartite {
        parts: 9,
        part_size: 3,
    });
    ensure((k, a, b) == (1, 4, 4), || {
        format!("families {k}/{a}/{b}, want 1/4/4")
    })?;
    ensure(
        report
            .records
            .iter()
            .all(|r| !matches!(r.family, FamilyTag::TdLineGraph { .. })),
        || "transversal-design line graph over a group with s = 2".into(),
    )?;
    under(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "9 of 8192 sets: K27 x1, K3x9 x4, K9x3 x4, no TD line graphs in {elapsed:.2?}"
    ))
}

fn census_5x5(report: &CensusReport, elapsed: Duration) -> Outcome {
    common(report, 4096, 57)?;
    let mut counts = Vec::new();
    for r in 2..=4 {
        let tag = FamilyTag::TdLineGraph { r, v: 5 };
        counts.push(report.sets_with(tag));
        let want = SrgParams::new(25, r * 4, 5 + r * r - 3 * r, r * r - r);
        let rec = report
            .records
            .iter()
            .find(|x| x.family == tag)
            .ok_or(format!("no r = {r} record"))?;
        let got = srg_params(&rec.array);
        ensure(got == Some(want), || {
            format!("r = {r}: SRG {got:?}, want {want}")
        })?;
    }
    counts.push(report.sets_with(FamilyTag::CompleteMultipartite {
        parts: 5,
        part_size: 5,
    }));
    counts.push(report.sets_with(FamilyTag::Complete));
    ensure(counts == [15, 20, 15, 6, 1], || {
        format!("per-r counts {counts:?}")
    })?;
    under(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "57 of 4096 sets, per r 15/20/15/6/1, SRG (25,8,3,2) (25,12,5,6) (25,16,9,12) in {elapsed:.2?}"
    ))
}

fn census_7x7(report: &CensusReport, elapsed: Duration) -> Outcome {
    let want: u128 = (2..=8).map(|r| binomial(8, r)).sum();
    common(report, 1 << 24, want)?;
    ensure(want == 247, || "binomial sum".into())?;
    under(elapsed, Duration::from_secs(30 * 60))?;
    Ok(format!(
        "247 of 2^24 sets, single partition, one thread, in {elapsed:.2?}"
    ))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// DRG iff the distance module is a Schur ring, with matching primitivity,
/// over every connected symmetric set.
fn schur_equivalence() -> Outcome {
    let mut checked = 0usize;
    for name in ["3^1x3", "Zn:9", "3^2x3", "Zn:27"] {
        for set in enumerate_symmetric_sets(grp(name)).map_err(|e| e.to_string())? {
            let graph = build(set);
            if !graph.is_connected() {
                continue;
            }
            checked += 1;
            let array = check_drg(&graph);
            let partition = distance_partition(&graph).map_err(|e| e.to_string())?;
            let module = distance_module(&graph, &partition);
            let schur = is_schur_ring(&module).is_some();
            ensure(array.is_some() == schur, || {
                format!(
                    "{name} {}: DRG {} but Schur {schur}",
                    graph.connection_set(),
                    array.is_some()
                )
            })?;
            if array.is_some() {
                let primitive = is_primitive_graph(&graph, &partition);
                ensure(primitive == is_primitive(&module), || {
                    format!("{name} {}: primitivity mismatch", graph.connection_set())
                })?;
            }
        }
    }
    Ok(format!(
        "{checked} connected sets over Z3+Z3, Z9, Z9+Z3, Z27 agree"
    ))
}

fn no_antipodal_diameter_three(reports: &[&CensusReport]) -> Outcome {
    let mut hits = 0;
    for report in reports {
        for r in &report.records {
            hits += 1;
            ensure(
                !(r.flags.antipodal && !r.flags.bipartite && r.array.diameter() == 3),
                || format!("antipodal non-bipartite diameter 3: {:?}", r.set),
            )?;
        }
    }
    Ok(format!(
        "none among {hits} orbit representatives of four censuses"
    ))
}

fn fourier_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checks = 0;
    for (n, s) in [(9usize, 2u32), (27, 3)] {
        let ring = CyclotomicRing::new(3, s).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-50..=50)).collect();
            let rep = inversion_check(ring, &f).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || {
                format!("inversion n = {n}: {:?}", rep.failure)
            })?;
            checks += rep.checks;
        }
        for _ in 0..1000 {
            let mut pick =
                || CharacteristicFunction::new(n, (0..n).filter(|_| rng.gen_bool(0.5)).collect());
            let a = pick().map_err(|e| e.to_string())?;
            let b = pick().map_err(|e| e.to_string())?;
            let rep = convolution_check(ring, &a, &b).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || {
                format!("convolution n = {n}: {:?}", rep.failure)
            })?;
            checks += rep.checks;
        }
    }
    let ring = CyclotomicRing::new(3, 2).map_err(|e| e.to_string())?;
    let mut transversals = 0;
    for choice in 0..27usize {
        let members: BitSet = (0..3)
            .map(|c| c + 3 * (choice / 3usize.pow(c as u32) % 3))
            .collect();
        let a = CharacteristicFunction::new(9, members).map_err(|e| e.to_string())?;
        let zeros = transversal_zeros(ring, &a, 3).map_err(|e| e.to_string())?;
        ensure(zeros, || {
            format!("transform of {:?} does not vanish", a.members())
        })?;
        transversals += 1;
    }
    Ok(format!(
        "{checks} pointwise checks over Z9 and Z27; {transversals} transversals of 3Z9 vanish"
    ))
}

fn fourier_on_hits() -> Outcome {
    let mut audited = 0;
    for name in ["3^1x3", "3^2x3", "5^1x5"] {
        for set in enumerate_symmetric_sets(grp(name)).map_err(|e| e.to_string())? {
            let graph = build(set);
            if !graph.is_connected() || !check_drg(&graph).is_some_and(|a| a.diameter() >= 2) {
                continue;
            }
            let audit = fourier_audit(&graph).map_err(|e| e.to_string())?;
            ensure(audit.passed(), || {
                format!("{name} {}: {:?}", graph.connection_set(), audit.failure)
            })?;
            audited += 1;
        }
    }
    Ok(format!("{audited} hits of diameter >= 2 pass"))
}

fn designs_suite() -> Outcome {
    let mut designs = 0;
    for p in [3usize, 5, 7] {
        let g = GroupDescriptor::prime_power_pair(p, 1).map_err(|e| e.to_string())?;
        for r in 2..=p {
            let want = td_line_srg_params(r, p).map_err(|e| e.to_string())?;
            for pcp in pcp_enumerate(g, r).map_err(|e| e.to_string())? {
                let td = td_from_pcp(&pcp).map_err(|e| e.to_string())?;
                td.verify().map_err(|e| format!("TD({r},{p}): {e}"))?;
                let check = line_graph_check(&pcp, &td);
                ensure(check.isomorphic, || {
                    format!("TD({r},{p}) line graph differs from the Cayley graph")
                })?;
                let got = check_drg_general(&check.graph).and_then(|a| srg_params(&a));
                ensure(got == Some(want), || {
                    format!("TD({r},{p}): SRG {got:?}, want {want}")
                })?;
                designs += 1;
            }
        }
    }
    Ok(format!(
        "{designs} partial congruence partitions for p = 3, 5, 7"
    ))
}

fn odd_rows(n: usize) -> Vec<BitSet> {
    let pairs: Vec<(usize, usize)> = (1..n / 2).step_by(2).map(|x| (x, n - x)).collect();
    (1u32..1 << pairs.len())
        .map(|m| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .flat_map(|(_, &(a, b))| [a, b])
                .collect()
        })
        .collect()
}

fn difference_set_construction() -> Outcome {
    let n = 16;
    let half = GroupDescriptor::product(8, 2).map_err(|e| e.to_string())?;
    let search = diffset_search(half, 6, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
    let found = search.all_sets();
    let mut positive = 0;
    for d in &found {
        if let Some((r0, r1)) = rows_from_shifted(n, d) {
            let c = bipartite_from_rows(n, &r0, &r1).map_err(|e| e.to_string())?;
            let ok =
                c.array.as_ref().is_some_and(|a| a.diameter() == 3) && c.bipartite && !c.antipodal;
            ensure(ok, || {
                format!("certificate {:?} gives {:?}", c.shifted_set, c.array)
            })?;
            positive += 1;
        }
    }
    let rows = odd_rows(n);
    let mut negative = 0;
    for r0 in &rows {
        for r1 in &rows {
            let c = bipartite_from_rows(n, r0, r1).map_err(|e| e.to_string())?;
            ensure(c.prediction_holds, || {
                format!("prediction fails for {:?}", c.connection_set)
            })?;
            if c.certificate.is_none() {
                ensure(c.array.is_none(), || {
                    format!("non-certificate {:?} is DRG", c.connection_set)
                })?;
                negative += 1;
            }
        }
    }
    let classical = doubled_group_families(n).map_err(|e| e.to_string())?;
    for (name, graph, array) in &classical {
        ensure(check_drg(graph).as_ref() == Some(array), || {
            format!("{name} fails check_drg")
        })?;
    }
    let positive_note = if positive == 0 {
        "none admissible, positive direction vacuous".to_string()
    } else {
        format!("{positive} admissible certificates give bipartite diameter-3 graphs")
    };
    Ok(format!(
        "{} (16,6,2) difference sets, {positive_note}; {negative} of {} row choices are non-certificates and not DRG; {} classical constructions pass",
        found.len(),
        rows.len() * rows.len(),
        classical.len()
    ))
}

fn determinism(groups: &[(&str, String)]) -> Outcome {
    for (name, base) in groups {
        for parts in [4, 8] {
            let opts = CensusOptions {
                partitions: parts,
                threads: parts,
                ..CensusOptions::default()
            };
            let json = census(grp(name), &opts)
                .map_err(|e| e.to_string())?
                .to_json();
            ensure(json == *base, || {
                format!("{name} differs with {parts} partitions")
            })?;
        }
    }
    Ok("criteria 1-4 reports byte-identical for 1, 4 and 8 partitions".into())
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let mut reports = Vec::new();
    let specs: [(&str, &str, fn(&CensusReport, Duration) -> Outcome); 4] = [
        ("3^1x3", "census Z3+Z3", census_3x3),
        ("3^2x3", "census Z9+Z3", census_9x3),
        ("5^1x5", "census Z5+Z5", census_5x5),
        ("7^1x7", "census Z7+Z7", census_7x7),
    ];
    for (i, (group, label, check)) in specs.into_iter().enumerate() {
        let outcome = match timed_census(group) {
            Ok((report, elapsed)) => {
                let o = check(&report, elapsed);
                reports.push((group, report));
                o
            }
            Err(e) => Err(e),
        };
        results.push((i + 1, label, outcome));
    }
    results.push((
        5,
        "distance module Schur-ring equivalence",
        schur_equivalence(),
    ));
    let refs: Vec<&CensusReport> = reports.iter().map(|(_, r)| r).collect();
    results.push((
        6,
        "no antipodal non-bipartite diameter 3",
        no_antipodal_diameter_three(&refs),
    ));
    results.push((7, "exact Fourier identities", fourier_suite()));
    results.push((8, "Fourier audit on census hits", fourier_on_hits()));
    results.push((9, "transversal design line graphs", designs_suite()));
    results.push((
        10,
        "bipartite difference-set construction",
        difference_set_construction(),
    ));
    let jsons: Vec<(&str, String)> = reports.iter().map(|(g, r)| (*g, r.to_json())).collect();
    results.push((11, "deterministic partitioned census", determinism(&jsons)));

    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (n, label, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {label}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {label}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
