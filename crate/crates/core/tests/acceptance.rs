//! End-to-end reproduction checks, one line of output per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL ledger is always
//! printed: `cargo test -p h4geproci-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use h4geproci::forms;
use h4geproci::geproci::{self, GRID1, GRID2};
use h4geproci::projective::{line_through, lines_meet, point_on_line, point_on_plane};
use h4geproci::tables::{to_rows, COVERINGS, LINE_POINTS, PLANE_POINTS};
use h4geproci::{
    build_h4, enumerate_coverings, enumerate_grids, refute_half_grid, verify_covering,
    verify_geproci, verify_half_grid, verify_not_half_grid, FieldElement, GridLines,
    H4Configuration, HalfGridSubset, ProjMatrix, ProjPlane, ProjPoint, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn(&H4Configuration) -> Outcome,
}

/// Criteria whose claim the computation contradicts; they are reported as
/// FAIL with the reason and do not abort the suite.
const KNOWN_DEVIATIONS: &[(u8, &str)] = &[(
    8,
    "ten points (l17 and l24) carry the 10-pair property for grid 1, not five; pairing at P4 and l24 membership hold",
)];

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn row_sets(rows: Vec<Vec<usize>>) -> BTreeSet<BTreeSet<usize>> {
    rows.into_iter().map(|r| r.into_iter().collect()).collect()
}

fn table1(cfg: &H4Configuration) -> Outcome {
    let computed: Vec<Vec<usize>> = cfg
        .incidence_table_planes()
        .iter()
        .map(|s| s.indices().to_vec())
        .collect();
    let expected = to_rows(&PLANE_POINTS);
    ensure(
        computed.len() == 60 && computed.iter().all(|r| r.len() == 15),
        "shape is not 60 x 15",
    )?;
    let bad: Vec<usize> = (0..60)
        .filter(|&i| computed[i].iter().collect::<BTreeSet<_>>() != expected[i].iter().collect())
        .map(|i| i + 1)
        .collect();
    ensure(bad.is_empty(), format!("rows differ: {bad:?}"))?;
    Ok("60 planes x 15 points match".into())
}

fn table2(cfg: &H4Configuration) -> Outcome {
    let computed = row_sets(
        cfg.incidence_table_lines()
            .iter()
            .map(|s| s.indices().to_vec())
            .collect(),
    );
    ensure(
        cfg.lines().len() == 72,
        format!("{} lines", cfg.lines().len()),
    )?;
    ensure(
        computed == row_sets(to_rows(&LINE_POINTS)),
        "line sets differ from the reference table",
    )?;
    ensure(
        cfg.max_collinear() == 5,
        format!("max_collinear = {}", cfg.max_collinear()),
    )?;
    ensure(
        (1..=60).all(|p| cfg.lines_through_point(p).len() == 6),
        "lines per point != 6",
    )?;
    ensure(
        (1..=72).all(|l| cfg.planes_containing_line(l).len() == 5),
        "planes per line != 5",
    )?;
    ensure(
        (1..=60).all(|v| cfg.lines_in_plane(v).len() == 6),
        "lines per plane != 6",
    )?;
    Ok("72 lines match; max_collinear 5; counts 6/5/6".into())
}

fn table3(cfg: &H4Configuration) -> Outcome {
    let found = enumerate_coverings(cfg);
    ensure(
        found.iter().all(|c| verify_covering(cfg, c.lines())),
        "an emitted covering does not verify",
    )?;
    let computed = row_sets(found.iter().map(|c| c.lines().to_vec()).collect());
    ensure(found.len() == 84, format!("{} coverings", found.len()))?;
    ensure(
        computed == row_sets(to_rows(&COVERINGS)),
        "covering set differs from the reference table",
    )?;
    Ok("84 coverings match".into())
}

fn quadrics(cfg: &H4Configuration) -> Outcome {
    for (k, (grid, q)) in [(GRID1, geproci::q1()), (GRID2, geproci::q2())]
        .into_iter()
        .enumerate()
    {
        let pts = cfg.points_of(&cfg.points_on_lines(&grid.0));
        let basis = forms::vanishing_space(&pts, 2, 4).map_err(|e| e.to_string())?;
        ensure(
            basis.dim() == 1,
            format!("grid {}: quadric space has dim {}", k + 1, basis.dim()),
        )?;
        ensure(
            basis.forms[0].canonical() == q.canonical(),
            format!("grid {}: quadric differs from Q{}", k + 1, k + 1),
        )?;
        let cert = geproci::verify_grid(cfg, grid.0, grid.1).map_err(|e| e.to_string())?;
        ensure(
            cert.quadric.canonical() == q.canonical(),
            format!("grid {}: certificate quadric differs", k + 1),
        )?;
    }
    Ok("both grids span Q1, Q2 exactly".into())
}

fn geproci_seeds(cfg: &H4Configuration) -> Outcome {
    let mut slowest = Duration::ZERO;
    for seed in 1..=5 {
        let t = Instant::now();
        let cert = verify_geproci(cfg, seed).map_err(|e| format!("seed {seed}: {e}"))?;
        slowest = slowest.max(t.elapsed());
        let failed: Vec<&str> = cert
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        ensure(
            cert.passed && failed.is_empty(),
            format!("seed {seed}: failed {failed:?}"),
        )?;
        ensure(
            cert.dimension_table == [0, 0, 0, 0, 0, 1],
            format!("seed {seed}: dims {:?}", cert.dimension_table),
        )?;
        ensure(
            cert.c6_smoothness.is_smooth(),
            format!("seed {seed}: C6 not certified smooth"),
        )?;
        ensure(
            !cert.c6_divides_product,
            format!("seed {seed}: C6 divides C5*C5'"),
        )?;
        ensure(
            cert.bezout.product == 60 && cert.bezout.points == 60,
            format!("seed {seed}: bezout {:?}", cert.bezout),
        )?;
        ensure(
            slowest < Duration::from_secs(60),
            format!("seed {seed}: {slowest:?}"),
        )?;
    }
    Ok(format!("seeds 1-5 pass; slowest {slowest:.2?}"))
}

fn half_grids(cfg: &H4Configuration) -> Outcome {
    for subset in [HalfGridSubset::Z1, HalfGridSubset::Z2] {
        for seed in 1..=3 {
            let cert = verify_half_grid(cfg, seed, subset)
                .map_err(|e| format!("{subset:?} seed {seed}: {e}"))?;
            ensure(
                cert.passed,
                format!("{subset:?} seed {seed}: checks failed"),
            )?;
            ensure(
                cert.lines == subset.lines(),
                format!("{subset:?}: lines {:?}", cert.lines),
            )?;
            ensure(
                cert.bezout.product == 30 && cert.bezout.points == 30,
                format!("{subset:?}: {:?}", cert.bezout),
            )?;
        }
    }
    let wrong =
        geproci::verify_half_grid_with_lines(cfg, 1, HalfGridSubset::Z1, [1, 2, 25, 32, 37, 44]);
    ensure(wrong.is_err(), "a non-covering line set was accepted")?;
    Ok("Z1, Z2 at seeds 1-3; CI(5,6) = 30".into())
}

fn refutation(cfg: &H4Configuration) -> Outcome {
    let r = verify_not_half_grid(cfg, 1).map_err(|e| e.to_string())?;
    ensure(r.refuted, format!("not refuted: {}", r.summary))?;
    ensure(
        r.max_collinear == 5,
        format!("max_collinear {}", r.max_collinear),
    )?;
    ensure(
        r.dimension_table == [0, 0, 0, 0, 0, 1],
        format!("dims {:?}", r.dimension_table),
    )?;

    let z1 = cfg.points_of(&HalfGridSubset::Z1.points(cfg));
    let r1 = refute_half_grid(&z1, 1).map_err(|e| e.to_string())?;
    ensure(!r1.refuted, "refutation wrongly succeeded on Z1")?;

    // 6 x 10 grid on the Segre quadric xw = yz; its rulings carry 10 points
    let segre: Vec<ProjPoint> = (0..6)
        .flat_map(|s| (0..10).map(move |t| (s as i64 + 1, t as i64 - 4)))
        .map(|(s, t)| ProjPoint::from_ints([s * t, s, t, 1]).expect("nonzero"))
        .collect();
    let rs = refute_half_grid(&segre, 1).map_err(|e| e.to_string())?;
    ensure(
        !rs.refuted && rs.max_collinear == 10,
        "refutation wrongly succeeded on a (6,10)-grid",
    )?;
    Ok(
        "Z refuted (max_collinear 5, no curve of degree <= 5); Z1 and a (6,10)-grid not refuted"
            .into(),
    )
}

fn special_points(cfg: &H4Configuration) -> Outcome {
    let grid = cfg.points_on_lines(&GRID1.0);
    let special = cfg.special_points_for_grid(&grid);
    let found: BTreeSet<usize> = special.iter().map(|s| s.index).collect();
    let l24: BTreeSet<usize> = cfg.line(24).points.iter().collect();
    ensure(
        l24 == BTreeSet::from([4, 39, 40, 47, 48]),
        format!("l24 = {l24:?}"),
    )?;
    ensure(l24.is_subset(&found), format!("l24 not special: {found:?}"))?;
    let p4 = special
        .iter()
        .find(|s| s.index == 4)
        .ok_or("P4 is not special")?;
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
    ensure(
        p4.pairs == expected,
        format!("pairing at P4: {:?}", p4.pairs),
    )?;
    ensure(
        found == l24,
        format!("special points are {found:?}, expected exactly {l24:?}"),
    )?;
    Ok("special points {4,39,40,47,48} on l24 with the 10-pair pairing".into())
}

fn random_element(rng: &mut ChaCha8Rng) -> FieldElement {
    let mut q = || {
        Rational::new(
            rng.gen_range(-50i64..=50).into(),
            rng.gen_range(1i64..=9).into(),
        )
    };
    FieldElement::new(q(), q())
}

fn random_point(rng: &mut ChaCha8Rng) -> ProjPoint {
    loop {
        let c = std::array::from_fn(|_| {
            FieldElement::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))
        });
        if let Ok(p) = ProjPoint::new(c) {
            return p;
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> ProjMatrix {
    loop {
        let rows = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3i64..=3)));
        if let Ok(m) = ProjMatrix::from_ints(rows) {
            return m;
        }
    }
}

fn properties(cfg: &H4Configuration) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_418);
    for i in 0..10_000 {
        let (x, y, z) = (
            random_element(&mut rng),
            random_element(&mut rng),
            random_element(&mut rng),
        );
        let ok = &(&x + &y) + &z == &x + &(&y + &z)
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && &x + &y == &y + &x
            && &x * &y == &y * &x
            && (x.is_zero() || (&x * &x.inv().unwrap()).is_one());
        ensure(ok, format!("field axioms fail on triple {i}"))?;
    }
    for p in cfg.points() {
        let again = ProjPoint::new(p.coords().clone()).map_err(|e| e.to_string())?;
        ensure(&again == p, "canonical form is not idempotent")?;
        let s = random_element(&mut rng);
        if !s.is_zero() {
            let scaled =
                ProjPoint::new(p.coords().clone().map(|c| &c * &s)).map_err(|e| e.to_string())?;
            ensure(&scaled == p, "canonical form depends on scale")?;
        }
    }
    for trial in 0..100 {
        let m = random_matrix(&mut rng);
        let i = rng.gen_range(1..=60);
        let v = rng.gen_range(1..=60);
        let l = rng.gen_range(1..=72);
        let (p, plane, line) = (cfg.point(i), cfg.plane(v), &cfg.line(l).line);
        ensure(
            point_on_plane(p, plane) == point_on_plane(&m.apply_point(p), &m.apply_plane(plane)),
            format!("plane incidence changed in trial {trial}"),
        )?;
        ensure(
            point_on_line(p, line) == point_on_line(&m.apply_point(p), &m.apply_line(line)),
            format!("line incidence changed in trial {trial}"),
        )?;
        let other = &cfg.line(rng.gen_range(1..=72)).line;
        if other != line {
            let before = lines_meet(line, other).map_err(|e| e.to_string())?;
            let after =
                lines_meet(&m.apply_line(line), &m.apply_line(other)).map_err(|e| e.to_string())?;
            ensure(before == after, format!("meeting changed in trial {trial}"))?;
        }
        let (a, b, c) = (
            random_point(&mut rng),
            random_point(&mut rng),
            random_point(&mut rng),
        );
        if let (Ok(lab), Ok(w)) = (line_through(&a, &b), ProjPlane::through(&a, &b, &c)) {
            ensure(
                point_on_line(&m.apply_point(&a), &m.apply_line(&lab)),
                "random line lost a point",
            )?;
            ensure(
                point_on_plane(&m.apply_point(&c), &m.apply_plane(&w)),
                "random plane lost a point",
            )?;
        }
    }
    for trial in 0..40 {
        let k = rng.gen_range(1..=20);
        let d = rng.gen_range(1..=3);
        let pts: Vec<ProjPoint> = (0..k)
            .map(|_| cfg.point(rng.gen_range(1..=60)).clone())
            .collect();
        let basis = forms::vanishing_space(&pts, d, 4).map_err(|e| e.to_string())?;
        let ok = basis
            .forms
            .iter()
            .all(|f| pts.iter().all(|p| f.vanishes_at(p).unwrap_or(false)));
        ensure(
            ok,
            format!("vanishing basis fails recheck in trial {trial}"),
        )?;
    }
    Ok("10^4 field triples, canonical forms, 100 incidence trials, 40 vanishing rechecks".into())
}

fn grids(cfg: &H4Configuration) -> Outcome {
    let found = enumerate_grids(cfg, 5, 5);
    let set: BTreeSet<(Vec<usize>, Vec<usize>)> =
        found.iter().map(|g| (g.l.to_vec(), g.m.to_vec())).collect();
    for (k, g) in [GRID1, GRID2].into_iter().enumerate() {
        let (a, b) = if g.0 < g.1 { (g.0, g.1) } else { (g.1, g.0) };
        ensure(
            found.contains(&GridLines { l: a, m: b }),
            format!("grid {} missing", k + 1),
        )?;
    }
    let oracle: serde_json::Value =
        serde_json::from_str(include_str!("data/grid_oracle.json")).map_err(|e| e.to_string())?;
    let count = oracle["count"].as_u64().ok_or("oracle has no count")? as usize;
    let expected: BTreeSet<(Vec<usize>, Vec<usize>)> =
        serde_json::from_value::<Vec<GridLines>>(oracle["grids"].clone())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|g| (g.l.to_vec(), g.m.to_vec()))
            .collect();
    ensure(
        found.len() == count,
        format!("{} grids, oracle says {count}", found.len()),
    )?;
    ensure(set == expected, "grid set differs from the oracle")?;
    for g in &found {
        let cert = geproci::verify_grid(cfg, g.l, g.m).map_err(|e| format!("{g:?}: {e}"))?;
        let pts = cfg.points_of(&cert.points);
        ensure(
            forms::vanishing_dimension(&pts, 2, 4).map_err(|e| e.to_string())? == 1,
            "grid quadric not unique",
        )?;
    }
    Ok(format!(
        "{count} grids, both reference grids present, oracle agrees"
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "plane-point incidence table",
        budget: Duration::from_secs(1),
        run: table1,
    },
    Criterion {
        id: 2,
        name: "line table and counts",
        budget: Duration::from_secs(1),
        run: table2,
    },
    Criterion {
        id: 3,
        name: "84 coverings",
        budget: Duration::from_secs(10),
        run: table3,
    },
    Criterion {
        id: 4,
        name: "grid quadrics",
        budget: Duration::from_secs(1),
        run: quadrics,
    },
    Criterion {
        id: 5,
        name: "geproci certificate",
        budget: Duration::from_secs(300),
        run: geproci_seeds,
    },
    Criterion {
        id: 6,
        name: "half-grid certificates",
        budget: Duration::from_secs(180),
        run: half_grids,
    },
    Criterion {
        id: 7,
        name: "not-half-grid refutation",
        budget: Duration::from_secs(30),
        run: refutation,
    },
    Criterion {
        id: 8,
        name: "special points of grid 1",
        budget: Duration::from_secs(5),
        run: special_points,
    },
    Criterion {
        id: 9,
        name: "property suites",
        budget: Duration::from_secs(60),
        run: properties,
    },
    Criterion {
        id: 10,
        name: "grid enumeration regression",
        budget: Duration::from_secs(600),
        run: grids,
    },
];

fn main() -> ExitCode {
    let cfg = build_h4();
    let mut unexpected = Vec::new();
    for c in CRITERIA {
        let t = Instant::now();
        let mut outcome = (c.run)(&cfg);
        let elapsed = t.elapsed();
        if outcome.is_ok() && elapsed > c.budget {
            outcome = Err(format!("took {elapsed:.2?}, budget {:?}", c.budget));
        }
        let known = KNOWN_DEVIATIONS
            .iter()
            .find(|(id, _)| *id == c.id)
            .map(|(_, why)| *why);
        match (&outcome, known) {
            (Ok(detail), _) => println!(
                "criterion {:>2} {}: PASS ({detail}) [{elapsed:.2?}]",
                c.id, c.name
            ),
            (Err(e), Some(why)) => {
                println!(
                    "criterion {:>2} {}: FAIL (known: {why}; {e}) [{elapsed:.2?}]",
                    c.id, c.name
                )
            }
            (Err(e), None) => {
                println!(
                    "criterion {:>2} {}: FAIL ({e}) [{elapsed:.2?}]",
                    c.id, c.name
                );
                unexpected.push(c.id);
            }
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
