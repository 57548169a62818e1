use std::collections::BTreeSet;
use std::path::Path;
use std::thread;
use std::time::Instant;

use h4geproci::config::SpecialPoint;
use h4geproci::geproci::{self, GRID1, GRID1_EXTERNAL, GRID2, GRID2_EXTERNAL};
use h4geproci::tables::{self, COVERINGS, LINE_POINTS, PLANE_POINTS};
use h4geproci::{
    build_h4, enumerate_coverings, enumerate_grids, forms, verify_geproci as run_geproci,
    verify_half_grid, verify_not_half_grid, GeprociError, GridLines, H4Configuration,
    HalfGridSubset, GRID_COUNT,
};

use crate::report::{write_json, Ledger, LedgerEntry, RunReport, Status};

pub type CmdResult = Result<Status, String>;

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

fn read_reference(
    path: Option<&Path>,
    embedded: Vec<Vec<usize>>,
) -> Result<Vec<Vec<usize>>, String> {
    match path {
        None => Ok(embedded),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(io_err(p))?;
            tables::parse_rows(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn as_set(row: &[usize]) -> BTreeSet<usize> {
    row.iter().copied().collect()
}

/// Row-by-row differences, as `-`/`+` pairs.
fn diff_rows(prefix: &str, expected: &[Vec<usize>], computed: &[Vec<usize>]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..expected.len().max(computed.len()) {
        let (e, c) = (expected.get(i), computed.get(i));
        if e.map(|r| as_set(r)) != c.map(|r| as_set(r)) {
            let show = |r: Option<&Vec<usize>>| {
                r.map(|r| format!("{r:?}"))
                    .unwrap_or_else(|| "(missing)".into())
            };
            out.push(format!("- {prefix}_{}: {}", i + 1, show(e)));
            out.push(format!("+ {prefix}_{}: {}", i + 1, show(c)));
        }
    }
    out
}

fn set_of_sets(rows: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    rows.iter().map(|r| as_set(r)).collect()
}

pub fn build(out: &Path) -> CmdResult {
    let cfg = build_h4();
    write_json(out, &cfg.dump()).map_err(io_err(out))?;
    println!(
        "wrote {} ({} points, {} planes, {} lines)",
        out.display(),
        cfg.num_points(),
        cfg.planes().len(),
        cfg.lines().len()
    );
    Ok(Status::Pass)
}

fn plane_rows(cfg: &H4Configuration) -> Vec<Vec<usize>> {
    cfg.incidence_table_planes()
        .iter()
        .map(|s| s.indices().to_vec())
        .collect()
}

fn line_rows(cfg: &H4Configuration) -> Vec<Vec<usize>> {
    cfg.incidence_table_lines()
        .iter()
        .map(|s| s.indices().to_vec())
        .collect()
}

pub fn incidences(planes: bool, json: bool, reference: Option<&Path>) -> CmdResult {
    let cfg = build_h4();
    let (prefix, computed, embedded) = if planes {
        ("V", plane_rows(&cfg), tables::to_rows(&PLANE_POINTS))
    } else {
        ("ℓ", line_rows(&cfg), tables::to_rows(&LINE_POINTS))
    };
    let expected = read_reference(reference, embedded)?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&computed).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", tables::format_indexed(prefix, &computed));
    }
    let diff = diff_rows(prefix, &expected, &computed);
    if diff.is_empty() {
        Ok(Status::Pass)
    } else {
        eprintln!(
            "computed table differs from the reference in {} rows:",
            diff.len() / 2
        );
        for d in diff {
            eprintln!("{d}");
        }
        Ok(Status::Fail)
    }
}

pub fn coverings(
    count_only: bool,
    json: bool,
    reference: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = build_h4();
    let found: Vec<Vec<usize>> = enumerate_coverings(&cfg).into_iter().map(|c| c.0).collect();
    let expected = read_reference(reference, tables::to_rows(&COVERINGS))?;
    if let Some(p) = out {
        write_json(p, &found).map_err(io_err(p))?;
    }
    if count_only {
        println!("{}", found.len());
    } else if json {
        println!(
            "{}",
            serde_json::to_string(&found).map_err(|e| e.to_string())?
        );
    } else {
        print!("{}", tables::format_plain(&found));
    }
    let (got, want) = (set_of_sets(&found), set_of_sets(&expected));
    if found.len() == 84 && got == want {
        return Ok(Status::Pass);
    }
    eprintln!(
        "found {} coverings; reference has {}",
        found.len(),
        expected.len()
    );
    for r in want.difference(&got) {
        eprintln!("- {r:?}");
    }
    for r in got.difference(&want) {
        eprintln!("+ {r:?}");
    }
    Ok(Status::Fail)
}

/// Ledger status for a pipeline error: indeterminate smoothness is reported
/// as such, anything else as a failure.
fn error_status(e: &GeprociError) -> Status {
    match e {
        GeprociError::Indeterminate | GeprociError::Form(forms::FormError::Indeterminate(_)) => {
            Status::Indeterminate
        }
        _ => Status::Fail,
    }
}

fn record_error(ledger: &mut Ledger, name: &str, claim: &str, seed: u64, e: &GeprociError) {
    ledger.check(name, claim, false, Some(seed), Some(e.to_string()));
    ledger.mark(error_status(e));
}

fn finish(ledger: &Ledger) -> Status {
    ledger.print();
    let status = ledger.status();
    println!(
        "status: {}",
        serde_json::to_value(status).unwrap().as_str().unwrap()
    );
    status
}

const GEPROCI_CLAIM: &str = "the 60 points project to a (6,10) complete intersection";

pub fn verify_geproci(seed: u64, trials: u64, out: &Path) -> CmdResult {
    let cfg = build_h4();
    let seeds: Vec<u64> = (seed..seed + trials).collect();
    let results = in_parallel(&seeds, |s| run_geproci(&cfg, s));
    let mut ledger = Ledger::default();
    let mut certs = Vec::new();
    for (s, r) in seeds.iter().zip(results) {
        match r {
            Ok(cert) => {
                ledger.extend(&cert.checks, Some(*s));
                certs.push(cert);
            }
            Err(e) => record_error(&mut ledger, "geproci", GEPROCI_CLAIM, *s, &e),
        }
    }
    if certs.len() == 1 && trials == 1 {
        write_json(out, &certs[0]).map_err(io_err(out))?;
    } else {
        write_json(out, &certs).map_err(io_err(out))?;
    }
    Ok(finish(&ledger))
}

pub fn verify_halfgrid(subset: HalfGridSubset, seed: u64, out: &Path) -> CmdResult {
    let cfg = build_h4();
    let mut ledger = Ledger::default();
    match verify_half_grid(&cfg, seed, subset) {
        Ok(cert) => {
            write_json(out, &cert).map_err(io_err(out))?;
            ledger.extend(&cert.checks, Some(seed));
        }
        Err(e) => record_error(
            &mut ledger,
            "half-grid",
            "the subset is a (5,6) half-grid",
            seed,
            &e,
        ),
    }
    Ok(finish(&ledger))
}

pub fn verify_not_halfgrid(seed: u64, out: &Path) -> CmdResult {
    let cfg = build_h4();
    let mut ledger = Ledger::default();
    match verify_not_half_grid(&cfg, seed) {
        Ok(r) => {
            write_json(out, &r).map_err(io_err(out))?;
            println!("max_collinear = {}", r.max_collinear);
            println!("dimension table = {:?}", r.dimension_table);
            refutation_checks(&mut ledger, &r, seed);
        }
        Err(e) => record_error(
            &mut ledger,
            "not-half-grid",
            "the 60 points are not a half-grid",
            seed,
            &e,
        ),
    }
    Ok(finish(&ledger))
}

fn refutation_checks(ledger: &mut Ledger, r: &h4geproci::Refutation, seed: u64) {
    ledger.check(
        "max_collinear",
        "no line contains 6 or more of the points",
        r.max_collinear == 5,
        Some(seed),
        Some(format!("max_collinear = {}", r.max_collinear)),
    );
    ledger.check(
        "no_low_degree_curve",
        "no plane curve of degree at most 5 passes through the 60 image points",
        r.dimension_table.iter().take(5).all(|&d| d == 0),
        Some(seed),
        Some(format!("dims {:?}", r.dimension_table)),
    );
    ledger.check(
        "not_half_grid",
        "the 60 points are not a half-grid",
        r.refuted,
        Some(seed),
        Some(r.summary.clone()),
    );
}

/// Runs `f` on each seed in its own thread; results come back in seed order.
fn in_parallel<T: Send>(seeds: &[u64], f: impl Fn(u64) -> T + Sync) -> Vec<T> {
    thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .iter()
            .map(|&s| {
                let f = &f;
                scope.spawn(move || f(s))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn special_detail(special: &[SpecialPoint]) -> String {
    let idx: Vec<usize> = special.iter().map(|s| s.index).collect();
    format!("special points {idx:?}")
}

fn static_checks(cfg: &H4Configuration, ledger: &mut Ledger) {
    let planes = diff_rows("V", &tables::to_rows(&PLANE_POINTS), &plane_rows(cfg)).is_empty();
    ledger.check(
        "plane_table",
        "each of the 60 planes contains exactly the 15 tabulated points",
        planes,
        None,
        None,
    );
    let lines = set_of_sets(&line_rows(cfg)) == set_of_sets(&tables::to_rows(&LINE_POINTS));
    ledger.check(
        "line_table",
        "the 72 five-point lines are exactly the tabulated ones",
        lines,
        None,
        None,
    );
    let counts = cfg.lines().len() == 72
        && cfg.max_collinear() == 5
        && (1..=60).all(|p| cfg.lines_through_point(p).len() == 6)
        && (1..=72).all(|l| cfg.planes_containing_line(l).len() == 5)
        && (1..=60).all(|v| cfg.lines_in_plane(v).len() == 6);
    ledger.check(
        "incidence_counts",
        "6 lines through each point, 5 planes through each line, 6 lines in each plane",
        counts,
        None,
        None,
    );

    let covers: Vec<Vec<usize>> = enumerate_coverings(cfg).into_iter().map(|c| c.0).collect();
    let ok =
        covers.len() == 84 && set_of_sets(&covers) == set_of_sets(&tables::to_rows(&COVERINGS));
    ledger.check(
        "coverings",
        "there are exactly 84 partitions of the points into 12 five-point lines, as tabulated",
        ok,
        None,
        Some(format!("{} found", covers.len())),
    );

    let grids = enumerate_grids(cfg, 5, 5);
    let has = |g: ([usize; 5], [usize; 5])| {
        let (l, m) = if g.0 < g.1 { (g.0, g.1) } else { (g.1, g.0) };
        grids.contains(&GridLines { l, m })
    };
    ledger.check(
        "grid_count",
        "the lines form the regression number of (5,5)-grids, including both certified grids",
        grids.len() == GRID_COUNT && has(GRID1) && has(GRID2),
        None,
        Some(format!("{} grids", grids.len())),
    );
    let all_verify = grids.iter().all(|g| {
        geproci::verify_grid(cfg, g.l, g.m)
            .ok()
            .and_then(|c| forms::vanishing_dimension(&cfg.points_of(&c.points), 2, 4).ok())
            == Some(1)
    });
    ledger.check(
        "grids_verify",
        "every (5,5)-grid verifies and lies on a unique quadric",
        all_verify,
        None,
        None,
    );

    for (k, (grid, q)) in [(GRID1, geproci::q1()), (GRID2, geproci::q2())]
        .into_iter()
        .enumerate()
    {
        let ok = geproci::verify_grid(cfg, grid.0, grid.1)
            .is_ok_and(|c| c.quadric.canonical() == q.canonical());
        ledger.check(
            &format!("quadric_q{}", k + 1),
            &format!("grid {} lies on the quadric Q{}", k + 1, k + 1),
            ok,
            None,
            None,
        );
    }

    for (k, (grid, external)) in [(GRID1, GRID1_EXTERNAL), (GRID2, GRID2_EXTERNAL)]
        .into_iter()
        .enumerate()
    {
        let special = cfg.special_points_for_grid(&cfg.points_on_lines(&grid.0));
        let idx: BTreeSet<usize> = special.iter().map(|s| s.index).collect();
        let on_line = cfg.line(external).points.iter().all(|p| idx.contains(&p));
        ledger.check(
            &format!("special_line_grid{}", k + 1),
            &format!(
                "every point of l{external} sees grid {} in ten disjoint pairs",
                k + 1
            ),
            on_line,
            None,
            Some(special_detail(&special)),
        );
    }
    let special = cfg.special_points_for_grid(&cfg.points_on_lines(&GRID1.0));
    let expected = vec![
        (5, 6),
        (7, 8),
        (13, 14),
        (15, 16),
        (29, 30),
        (31, 32),
        (33, 34),
        (35, 36),
        (37, 38),
        (41, 42),
    ];
    let ok = special.iter().any(|s| s.index == 4 && s.pairs == expected);
    ledger.check(
        "pairing_p4",
        "the ten lines through P4 pair up the grid points as tabulated",
        ok,
        None,
        None,
    );
}

fn seed_checks(cfg: &H4Configuration, seed: u64) -> Ledger {
    let mut ledger = Ledger::default();
    match run_geproci(cfg, seed) {
        Ok(c) => ledger.extend(&c.checks, Some(seed)),
        Err(e) => record_error(&mut ledger, "geproci", GEPROCI_CLAIM, seed, &e),
    }
    for subset in [HalfGridSubset::Z1, HalfGridSubset::Z2] {
        match verify_half_grid(cfg, seed, subset) {
            Ok(c) => {
                for check in &c.checks {
                    let mut check = check.clone();
                    check.name = format!("{subset:?}.{}", check.name).to_lowercase();
                    ledger.push(LedgerEntry {
                        check,
                        seed: Some(seed),
                        detail: None,
                    });
                }
            }
            Err(e) => record_error(
                &mut ledger,
                &format!("{subset:?}").to_lowercase(),
                "the subset is a (5,6) half-grid",
                seed,
                &e,
            ),
        }
    }
    match verify_not_half_grid(cfg, seed) {
        Ok(r) => refutation_checks(&mut ledger, &r, seed),
        Err(e) => record_error(
            &mut ledger,
            "not-half-grid",
            "the 60 points are not a half-grid",
            seed,
            &e,
        ),
    }
    ledger
}

pub fn report(out: &Path, seeds: &[u64]) -> CmdResult {
    let start = Instant::now();
    let cfg = build_h4();
    let mut ledger = Ledger::default();
    static_checks(&cfg, &mut ledger);
    for part in in_parallel(seeds, |s| seed_checks(&cfg, s)) {
        for e in part.entries {
            ledger.entries.push(e);
        }
        if let Some(s) = part.status {
            ledger.mark(s);
        }
    }
    let status = ledger.status();
    let report = RunReport {
        command: format!(
            "report --out {} --seeds {}",
            out.display(),
            seeds
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        seeds: seeds.to_vec(),
        wall_time_ms: start.elapsed().as_millis() as u64,
        status,
        checks: ledger.entries.clone(),
        artifacts: vec![out.display().to_string()],
    };
    write_json(out, &report).map_err(io_err(out))?;
    let failed = ledger.entries.iter().filter(|e| !e.check.passed).count();
    println!(
        "{} checks, {failed} failed; wrote {}",
        ledger.entries.len(),
        out.display()
    );
    for e in ledger.entries.iter().filter(|e| !e.check.passed) {
        println!("FAIL {}: {}", e.check.name, e.check.claim);
    }
    println!(
        "status: {}",
        serde_json::to_value(status).unwrap().as_str().unwrap()
    );
    Ok(status)
}
