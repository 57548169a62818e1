use h4geproci::config::max_collinear_points;
use h4geproci::forms::{self, vanishing_dimension, HomForm};
use h4geproci::geproci::{self, Projection, GRID1};
use h4geproci::{
    build_h4, divides, verify_geproci, verify_half_grid, GeprociError, HalfGridSubset, PointSet,
    ProjPoint,
};

#[test]
fn geproci_certificate_rechecks() {
    let cfg = build_h4();
    let cert = verify_geproci(&cfg, 4).unwrap();
    let proj = Projection::for_h4(&cfg, cert.projection.vertex.clone()).unwrap();
    let product = cert.c5.form.multiply(&cert.c5_prime.form).unwrap();
    for q in proj.images() {
        assert!(cert.c6.vanishes_at(q).unwrap());
        assert!(product.vanishes_at(q).unwrap());
    }
    assert_eq!(cert.c6.degree() * product.degree(), 60);
    assert!(!divides(&cert.c6, &product).unwrap());
    assert_eq!(vanishing_dimension(proj.images(), 6, 3).unwrap(), 1);
    assert!(cert.z1.is_disjoint(&cert.z2));
    assert_eq!(cert.z1.union(&cert.z2), cfg.all_points());
}

#[test]
fn pencil_member_is_the_anchor_solution() {
    let cfg = build_h4();
    let cert = verify_geproci(&cfg, 2).unwrap();
    for cone in [&cert.c5, &cert.c5_prime] {
        let a = cert.projection.images[cone.anchor - 1].clone();
        let (g, h) = (cone.g.evaluate(&a).unwrap(), cone.h.evaluate(&a).unwrap());
        assert!(!(g.is_zero() && h.is_zero()));
        assert!((&(&cone.lambda * &g) + &(&cone.mu * &h)).is_zero());
        assert!(cone.checks.iter().all(|c| c.passed), "{:?}", cone.checks);
    }
    assert_eq!(cert.c5.external_line, 24);
    assert_eq!(cert.c5_prime.external_line, 17);
}

#[test]
fn half_grid_subsets_partition_the_points() {
    let cfg = build_h4();
    let z1 = HalfGridSubset::Z1.points(&cfg);
    let z2 = HalfGridSubset::Z2.points(&cfg);
    assert_eq!((z1.len(), z2.len()), (30, 30));
    assert_eq!(z1.union(&z2), cfg.all_points());
    let cert = verify_half_grid(&cfg, 5, HalfGridSubset::Z2).unwrap();
    assert_eq!(cert.lines, [7, 17, 51, 60, 65, 70]);
    assert!(
        forms::gcd_forms(&cert.gamma.form, &cert.line_product)
            .unwrap()
            .degree()
            == 0
    );
}

#[test]
fn wrong_covering_line_is_rejected() {
    let cfg = build_h4();
    let err =
        geproci::verify_half_grid_with_lines(&cfg, 1, HalfGridSubset::Z1, [1, 2, 25, 32, 37, 44]);
    assert!(matches!(err, Err(GeprociError::Covering(_))), "{err:?}");
}

#[test]
fn special_points_of_the_first_grid() {
    let cfg = build_h4();
    let special = cfg.special_points_for_grid(&cfg.points_on_lines(&GRID1.0));
    let idx: Vec<usize> = special.iter().map(|s| s.index).collect();
    assert_eq!(idx, [3, 4, 39, 40, 47, 48, 49, 50, 53, 54]);
    let lines =
        PointSet::from_iter_unchecked(cfg.line(17).points.iter().chain(cfg.line(24).points.iter()));
    assert_eq!(PointSet::from_iter_unchecked(idx), lines);
}

#[test]
fn refutation_on_a_ruled_grid_fails() {
    let pts: Vec<ProjPoint> = (1..=6)
        .flat_map(|s| (0..10).map(move |t| ProjPoint::from_ints([s * t, s, t, 1]).unwrap()))
        .collect();
    let r = h4geproci::refute_half_grid(&pts, 3).unwrap();
    assert_eq!(r.max_collinear, 10);
    assert!(!r.refuted);
}

#[test]
fn quadric_forms_are_degree_two() {
    for q in [geproci::q1(), geproci::q2()] {
        assert_eq!(q.degree(), 2);
        assert_eq!(q.nvars(), 4);
        assert_eq!(HomForm::from_poly(q.poly().clone(), 2).unwrap(), q);
    }
    assert_eq!(max_collinear_points(build_h4().points()), 5);
}
