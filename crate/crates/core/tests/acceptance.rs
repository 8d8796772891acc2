//! End-to-end acceptance checks. Each test prints one line:
//! `criterion N: PASS|FAIL <summary> (<elapsed> / limit <limit>)`.

use std::time::{Duration, Instant};

use fibsum::automorphism::{aut_bruteforce, aut_closed_form, interval_report};
use fibsum::bipartition::{imbalance_witness, part_sizes, part_sizes_scan, s_of, s_of_fib_twice};
use fibsum::cycles::{
    check_cycle, crossing_chords, detect_h_subgraph, enumerate_cycles, even_cycle, even_cycle_host,
    four_cycle_chord, girth, shortest_cycle_length,
};
use fibsum::decomposition::{
    build_outerplanar_certificate, build_tree_decomposition, validate_outerplanar_certificate,
    validate_tree_decomposition,
};
use fibsum::fibcore::{fib, is_fibonacci, zeckendorf, MAX_INDEX};
use fibsum::graph::{
    degree_closed_form, edge_count_closed_form, pendants, pendants_interval_rule, FibSumGraph,
};
use fibsum::hamilton::{
    agree_except_last_three, build_path, classify, enumerate_paths_bruteforce, HamiltonStatus,
};
use rayon::prelude::*;

type Check = Result<String, String>;

fn run(id: u32, limit: Duration, check: impl FnOnce() -> Check) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (ok, summary) = match outcome {
        Ok(s) if elapsed <= limit => (true, s),
        Ok(s) => (false, format!("{s}; too slow")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id}: {} {summary} ({elapsed:.3?} / limit {limit:?})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {summary}");
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fk(k: usize) -> u64 {
    fib(k).unwrap()
}

#[test]
fn criterion_01_edge_count_table() {
    const EXPECTED: [u64; 21] = [
        0, 1, 2, 3, 4, 5, 7, 8, 9, 10, 12, 14, 15, 16, 17, 18, 19, 21, 23, 25, 26,
    ];
    run(1, Duration::from_millis(1), || {
        let got: Vec<u64> = (1..=21)
            .map(|n| edge_count_closed_form(n).unwrap())
            .collect();
        ensure(got == EXPECTED, || format!("edge counts {got:?}"))?;
        Ok("edge counts for n = 1..21 match".into())
    });
}

#[test]
fn criterion_02_g18_adjacency() {
    // Rows of the published adjacency matrix of G_18.
    const ROWS: [&[u64]; 18] = [
        &[2, 4, 7, 12],
        &[1, 3, 6, 11],
        &[2, 5, 10, 18],
        &[1, 9, 17],
        &[3, 8, 16],
        &[2, 7, 15],
        &[1, 6, 14],
        &[5, 13],
        &[4, 12],
        &[3, 11],
        &[2, 10],
        &[1, 9],
        &[8],
        &[7],
        &[6],
        &[5, 18],
        &[4],
        &[3, 16],
    ];
    run(2, Duration::from_millis(1), || {
        let g = FibSumGraph::new(18).unwrap();
        let mut matrix = [[false; 19]; 19];
        for &(a, b) in g.edges() {
            matrix[a as usize][b as usize] = true;
            matrix[b as usize][a as usize] = true;
        }
        for (i, row) in ROWS.iter().enumerate() {
            let x = i + 1;
            for y in 1..=18 {
                let want = row.contains(&(y as u64));
                ensure(matrix[x][y] == want, || {
                    format!("entry ({x},{y}) is {}", matrix[x][y])
                })?;
            }
        }
        Ok("all 324 entries of G_18 match".into())
    });
}

#[test]
fn criterion_03_hamiltonian_golden() {
    let golden: Vec<u64> = include_str!("golden/hampath_34.txt")
        .trim()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    run(3, Duration::from_secs(1), || {
        let paths = build_path(34).map_err(|e| e.to_string())?;
        ensure(paths.len() == 1, || {
            format!("{} paths in G_34", paths.len())
        })?;
        let mut reversed = golden.clone();
        reversed.reverse();
        let got = paths[0].order();
        ensure(
            got == golden.as_slice() || got == reversed.as_slice(),
            || format!("path {got:?}"),
        )?;

        let two = enumerate_paths_bruteforce(13).map_err(|e| e.to_string())?;
        ensure(two.len() == 2, || format!("{} paths in G_13", two.len()))?;
        ensure(agree_except_last_three(&two[0], &two[1]), || {
            "G_13 paths differ early".into()
        })?;
        let mut ends: Vec<(u64, u64)> = two.iter().map(|p| p.endpoints()).collect();
        ends.sort_unstable();
        ensure(ends == [(4, 13), (12, 13)], || {
            format!("G_13 endpoints {ends:?}")
        })?;
        Ok("G_34 path matches golden file; G_13 has two paths ending {4,13} and {12,13}".into())
    });
}

#[test]
fn criterion_04_hamiltonian_sweep() {
    run(4, Duration::from_secs(30), || {
        let rows: Vec<(u64, usize, HamiltonStatus)> = (1..=40u64)
            .into_par_iter()
            .map(|n| {
                let count = enumerate_paths_bruteforce(n).unwrap().len();
                (n, count, classify(n).unwrap().status)
            })
            .collect();
        for (n, count, status) in rows {
            let predicted = match status {
                HamiltonStatus::None => 0,
                HamiltonStatus::Unique => 1,
                HamiltonStatus::Two => 2,
            };
            ensure(count <= 2 && count == predicted, || {
                format!("n = {n}: {count} paths, classify says {status:?}")
            })?;
        }
        Ok("path counts for n <= 40 match the classification".into())
    });
}

#[test]
fn criterion_05_automorphism_table() {
    const TRIVIAL: [(u64, u64); 8] = [
        (7, 10),
        (17, 21),
        (30, 50),
        (72, 92),
        (127, 215),
        (305, 393),
        (538, 914),
        (1292, 1668),
    ];
    run(5, Duration::from_secs(60), || {
        let report = interval_report(2278).map_err(|e| e.to_string())?;
        let trivial: Vec<(u64, u64)> = report
            .iter()
            .filter(|r| r.order == 1)
            .map(|r| (r.lo, r.hi))
            .collect();
        ensure(trivial == TRIVIAL, || format!("trivial runs {trivial:?}"))?;
        let covered = report.first().map(|r| r.lo) == Some(7)
            && report.last().map(|r| r.hi) == Some(2278)
            && report.windows(2).all(|w| w[0].hi + 1 == w[1].lo);
        ensure(covered, || "report does not tile [7, 2278]".into())?;
        ensure(report.iter().all(|r| r.order <= 2), || {
            "a group of order > 2".into()
        })?;

        let mismatch = (9..=400u64).into_par_iter().find_first(|&n| {
            aut_bruteforce(n).ok() != aut_closed_form(n).ok() || aut_bruteforce(n).is_err()
        });
        ensure(mismatch.is_none(), || {
            format!("search and closed form disagree at N = {mismatch:?}")
        })?;
        Ok("eight trivial runs to 2278, all else order 2; search = closed form for 9..=400".into())
    });
}

/// `2 S(F_k)` for `k <= top` by an independent colour sweep packed in bits.
fn s_of_fib_by_sweep(top: usize) -> Vec<i64> {
    let n = fk(top) as usize;
    let mut bits = vec![0u64; n / 64 + 1];
    let get = |bits: &[u64], i: usize| (bits[i / 64] >> (i % 64)) & 1;
    let mut out = vec![0i64; top + 1];
    let mut ones = 0i64;
    let mut k = 2;
    for m in 1..=n {
        while fk(k + 1) <= m as u64 {
            k += 1;
        }
        let c = if m == 1 {
            1
        } else {
            1 - get(&bits, fk(k + 1) as usize - m)
        };
        bits[m / 64] |= c << (m % 64);
        ones += c as i64;
        if m as u64 == fk(k) {
            out[k] = 2 * ones - m as i64;
        }
    }
    out
}

#[test]
fn criterion_06_bipartition() {
    let golden = include_str!("golden/bipartition_parts.csv");
    run(6, Duration::from_secs(60), || {
        let swept = s_of_fib_by_sweep(40);
        for k in 3..=40 {
            let table = match k % 6 {
                0 | 3 => 0,
                2 | 4 => 1,
                _ => -1,
            };
            let recursive = s_of(fk(k)).unwrap().twice;
            ensure(
                swept[k] == table && recursive == table && s_of_fib_twice(k) == table,
                || {
                    format!(
                        "k = {k}: sweep {} recursion {recursive} table {table} (doubled)",
                        swept[k]
                    )
                },
            )?;
        }

        for z in 1..=4u64 {
            let n = imbalance_witness(z).map_err(|e| e.to_string())?;
            let sizes = if z <= 2 {
                part_sizes_scan(n)
            } else {
                part_sizes(n)
            }
            .map_err(|e| e.to_string())?;
            ensure(sizes.imbalance_twice() == 2 * z, || {
                format!("z = {z}: n = {n} gives {sizes:?}")
            })?;
        }

        for line in golden.lines().skip(1) {
            let v: Vec<u64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            let scan = part_sizes_scan(v[0]).map_err(|e| e.to_string())?;
            ensure(scan.size1 == v[1] && scan.size0 == v[2], || {
                format!("n = {}: scan gives {scan:?}", v[0])
            })?;
            ensure(part_sizes(v[0]).unwrap() == scan, || {
                format!("n = {}: recursion disagrees", v[0])
            })?;
        }
        let at_7164 = part_sizes_scan(7164).unwrap();
        ensure((at_7164.size1, at_7164.size0) == (3584, 3580), || {
            "3584/3580 not at n = 7164".into()
        })?;
        Ok("S(F_k) table for k = 3..40, witnesses z = 1..4, 3584/3580 split at n = 7164".into())
    });
}

#[test]
fn criterion_07_degree_and_pendant_sweep() {
    run(7, Duration::from_secs(120), || {
        let mut degree = vec![0u64; 3001];
        for n in 1..=3000u64 {
            for x in 1..n {
                if is_fibonacci(x + n) {
                    degree[x as usize] += 1;
                    degree[n as usize] += 1;
                }
            }
            for x in 1..=n {
                let closed = degree_closed_form(n, x).unwrap().degree;
                ensure(closed == degree[x as usize], || {
                    format!(
                        "n = {n}, x = {x}: closed form {closed}, brute force {}",
                        degree[x as usize]
                    )
                })?;
            }
            let scan: Vec<u64> = (1..=n).filter(|&x| degree[x as usize] == 1).collect();
            let got = pendants(n).map_err(|e| e.to_string())?;
            ensure(got == scan, || {
                format!("n = {n}: pendants {got:?}, scan {scan:?}")
            })?;
            if n >= 4 {
                let rule = pendants_interval_rule(n);
                ensure(rule.as_ref() == Some(&scan), || {
                    format!("n = {n}: relabelled rule gives {rule:?}")
                })?;
            }
        }
        Ok("degrees and pendants match brute force for n <= 3000; relabelled pendant rule confirmed".into())
    });
}

#[test]
fn criterion_08_structure() {
    run(8, Duration::from_secs(120), || {
        let bad_girth = (7..=2000u64).into_par_iter().find_first(|&n| {
            let g = FibSumGraph::new(n).unwrap();
            shortest_cycle_length(&g) != Some(4) || girth(n).unwrap() != Some(4)
        });
        ensure(bad_girth.is_none(), || {
            format!("girth differs from 4 at n = {bad_girth:?}")
        })?;

        let mut cycles_seen = 0;
        for n in 1..=25 {
            let g = FibSumGraph::new(n).unwrap();
            for c in enumerate_cycles(&g) {
                cycles_seen += 1;
                let crossing = crossing_chords(&g, &c).map_err(|e| e.to_string())?;
                ensure(crossing.is_empty(), || {
                    format!("n = {n}: cycle {c:?} has crossing chords {crossing:?}")
                })?;
                if c.len() >= 6 {
                    four_cycle_chord(&g, &c).map_err(|e| format!("n = {n}: cycle {c:?}: {e}"))?;
                }
            }
        }

        let h = (1..=1500u64)
            .into_par_iter()
            .find_map_first(|n| detect_h_subgraph(&FibSumGraph::new(n).unwrap()).map(|w| (n, w)));
        ensure(h.is_none(), || format!("H found: {h:?}"))?;

        for k in 2..=12 {
            let host = even_cycle_host(k).unwrap();
            let c = even_cycle(k).map_err(|e| e.to_string())?;
            check_cycle(&FibSumGraph::new(host).unwrap(), c.vertices())
                .map_err(|e| e.to_string())?;
            ensure(
                c.len() == 2 * k && c.vertices()[2 * k - 1] == fk(2 * k + 3) - 1,
                || format!("k = {k}"),
            )?;
        }
        Ok(format!("girth 4 on 7..=2000; {cycles_seen} cycles for n <= 25 chord-checked; no H to 1500; even cycles k = 2..12"))
    });
}

#[test]
fn criterion_09_decompositions() {
    run(9, Duration::from_secs(120), || {
        let failure = (1..=10_000u64).into_par_iter().find_map_first(|n| {
            let g = FibSumGraph::new(n).unwrap();
            let td = match build_tree_decomposition(n) {
                Ok(td) => td,
                Err(e) => return Some(format!("n = {n}: {e}")),
            };
            if let Err(v) = validate_tree_decomposition(&g, &td) {
                return Some(format!("n = {n}: tree decomposition invalid: {v}"));
            }
            let want = match n {
                1 => 0,
                2..=6 => 1,
                _ => 2,
            };
            if td.width() != want {
                return Some(format!("n = {n}: width {}", td.width()));
            }
            match build_outerplanar_certificate(n).map(|c| validate_outerplanar_certificate(&g, &c))
            {
                Ok(Ok(true)) => None,
                Ok(Ok(false)) => Some(format!("n = {n}: certificate has crossing edges")),
                Ok(Err(e)) | Err(e) => Some(format!("n = {n}: {e}")),
            }
        });
        ensure(failure.is_none(), || failure.clone().unwrap())?;
        Ok("tree decompositions (width 1 to n = 6, then 2) and outerplanar certificates valid for n <= 10000".into())
    });
}

#[test]
fn criterion_10_fibonacci_facts() {
    run(10, Duration::from_secs(1), || {
        for k in 0..=MAX_INDEX {
            ensure(fk(k).is_multiple_of(2) == (k % 3 == 0), || {
                format!("parity at k = {k}")
            })?;
        }
        let mut sum = 0u64;
        for l in 0..=(MAX_INDEX - 1) / 2 {
            sum += fk(2 * l);
            ensure(sum == fk(2 * l + 1) - 1, || {
                format!("even-index sum at l = {l}")
            })?;
        }
        for k in 3..=MAX_INDEX {
            let num = fk(k - 3) as u128 + fk(k) as u128;
            ensure(!num.is_multiple_of(2) || num / 2 == fk(k - 1) as u128, || {
                format!("midpoint at k = {k}")
            })?;
        }
        for k in (0..=MAX_INDEX - 2).filter(|&k| k != 1) {
            let (a, b, c) = (fk(k) as u128, fk(k + 1) as u128, fk(k + 2) as u128);
            ensure(2 * a < c && c < 2 * b, || format!("half bound at k = {k}"))?;
        }
        for i in 2..=40 {
            for j in i..=40 {
                let expect = j == i + 1 || (i, j) == (2, 2);
                ensure(is_fibonacci(fk(i) + fk(j)) == expect, || {
                    format!("sum F_{i} + F_{j}")
                })?;
            }
        }
        for n in 1..=1_000_000u64 {
            let z = zeckendorf(n).unwrap();
            ensure(z.value() == n && z.is_well_formed(), || {
                format!("zeckendorf({n}) = {z}")
            })?;
        }
        Ok(
            "parity, even-index sums, midpoint, half bounds, consecutive sums, Zeckendorf to 10^6"
                .into(),
        )
    });
}
