//! Certificates that a general projection of the H4 configuration is a
//! (6,10) complete intersection in P², that the two 30-point halves are
//! half-grids, and that the whole set is not a half-grid.
//!
//! Every certificate is built from exact linear algebra and divisibility
//! tests and carries the forms it used, so it can be rechecked
//! independently.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{max_collinear_points, H4Configuration, PointSet};
use crate::field::FieldElement;
use crate::forms::{self, plane_curve_is_smooth, FormError, HomForm, SmoothnessVerdict};
use crate::projective::{lines_meet, point_on_line, PlanePoint, ProjMatrix, ProjPlane, ProjPoint};

/// `L` and `M` lines of the grid on the quadric `Q1`.
pub const GRID1: ([usize; 5], [usize; 5]) = ([1, 25, 32, 37, 44], [2, 26, 31, 38, 43]);
/// `L` and `M` lines of the grid on the quadric `Q2`.
pub const GRID2: ([usize; 5], [usize; 5]) = ([7, 51, 60, 65, 70], [8, 54, 58, 63, 71]);
/// Lines of special points used to anchor the quintic pencils of the two grids.
pub const GRID1_EXTERNAL: usize = 24;
pub const GRID2_EXTERNAL: usize = 17;
/// Skew lines covering `Z1`.
pub const Z1_LINES: [usize; 6] = [1, 24, 25, 32, 37, 44];
/// Skew lines covering `Z2`.
pub const Z2_LINES: [usize; 6] = [7, 17, 51, 60, 65, 70];

const VERTEX_DRAWS: usize = 1000;
const VERTEX_RESAMPLES: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeprociError {
    #[error("vertex rejected: {}", reasons.join("; "))]
    VertexRejected { reasons: Vec<String> },
    #[error("no generic vertex found after {0} draws")]
    RejectionBudgetExhausted(usize),
    #[error("not a grid: {0}")]
    NotAGrid(String),
    #[error("pencil degenerate: both generators vanish at the image of point {0}")]
    PencilDegenerate(usize),
    #[error("cone construction failed: {0}")]
    Cone(String),
    #[error("covering failure: {0}")]
    Covering(String),
    #[error("smoothness indeterminate at every tried vertex")]
    Indeterminate,
    #[error(transparent)]
    Form(#[from] FormError),
}

/// `2xy − y² + (φ−1)z² − φw²`.
pub fn q1() -> HomForm {
    quadric(&[
        ([1, 1, 0, 0], FieldElement::from_int(2)),
        ([0, 2, 0, 0], FieldElement::from_int(-1)),
        ([0, 0, 2, 0], FieldElement::from_ints(-1, 1)),
        ([0, 0, 0, 2], FieldElement::from_ints(0, -1)),
    ])
}

/// `x² + 2xy + φz² − (φ−1)w²`.
pub fn q2() -> HomForm {
    quadric(&[
        ([2, 0, 0, 0], FieldElement::one()),
        ([1, 1, 0, 0], FieldElement::from_int(2)),
        ([0, 0, 2, 0], FieldElement::phi()),
        ([0, 0, 0, 2], FieldElement::from_ints(1, -1)),
    ])
}

fn quadric(terms: &[([u32; 4], FieldElement)]) -> HomForm {
    HomForm::from_terms(4, 2, terms.iter().map(|(e, c)| (e.to_vec(), c.clone()))).expect("degree 2")
}

/// A named boolean check inside a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, claim: &str, passed: bool) -> Self {
        Check {
            name: name.into(),
            claim: claim.into(),
            passed,
        }
    }
}

fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Deterministic stream of integer vertex candidates.
pub struct VertexSampler {
    rng: ChaCha8Rng,
}

impl VertexSampler {
    pub fn new(seed: u64) -> Self {
        VertexSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_vertex(&mut self) -> ProjPoint {
        loop {
            let c: [i64; 4] = std::array::from_fn(|_| self.rng.gen_range(-100..=100));
            if let Ok(p) = ProjPoint::from_ints(c) {
                return p;
            }
        }
    }
}

/// Projection from a vertex, realised by a coordinate change sending the
/// vertex to `[0:0:0:1]` and dropping the last coordinate.
#[derive(Debug, Clone)]
pub struct Projection {
    vertex: ProjPoint,
    matrix: ProjMatrix,
    images: Vec<PlanePoint>,
    checklist: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionRecord {
    pub vertex: ProjPoint,
    pub transform: [[FieldElement; 4]; 4],
    pub images: Vec<PlanePoint>,
    pub checklist: Vec<Check>,
}

impl Projection {
    /// Projects the H4 points from `vertex`, rejecting vertices on any
    /// configuration plane, five-point line, either grid quadric, or any line
    /// joining two configuration points.
    pub fn for_h4(cfg: &H4Configuration, vertex: ProjPoint) -> Result<Self, GeprociError> {
        let mut checklist = Vec::new();
        let mut reasons = Vec::new();
        let on_plane: Vec<usize> = (1..=cfg.num_points())
            .filter(|&i| cfg.plane(i).evaluate(&vertex).is_zero())
            .collect();
        if let Some(i) = on_plane.first() {
            reasons.push(format!("on plane V{i}"));
        }
        checklist.push(Check::new(
            "off_planes",
            "vertex avoids all 60 planes V_i",
            on_plane.is_empty(),
        ));
        let on_line: Vec<usize> = (1..=cfg.lines().len())
            .filter(|&l| point_on_line(&vertex, &cfg.line(l).line))
            .collect();
        if let Some(l) = on_line.first() {
            reasons.push(format!("on line l{l}"));
        }
        checklist.push(Check::new(
            "off_lines",
            "vertex avoids all 72 five-point lines",
            on_line.is_empty(),
        ));
        for (name, q) in [("Q1", q1()), ("Q2", q2())] {
            let on = q.vanishes_at(&vertex)?;
            if on {
                reasons.push(format!("on quadric {name}"));
            }
            checklist.push(Check::new(
                &format!("off_{}", name.to_lowercase()),
                &format!("vertex avoids the grid quadric {name}"),
                !on,
            ));
        }
        let (proj, distinct_reason) = Self::project(cfg.points(), vertex);
        if let Some(r) = &distinct_reason {
            reasons.push(r.clone());
        }
        checklist.push(Check::new(
            "distinct_images",
            "the 60 projected points are pairwise distinct",
            distinct_reason.is_none(),
        ));
        match proj {
            Some(mut p) if reasons.is_empty() => {
                p.checklist = checklist;
                Ok(p)
            }
            _ => Err(GeprociError::VertexRejected { reasons }),
        }
    }

    /// Projects an arbitrary point list; the only requirement is that the
    /// images are pairwise distinct.
    pub fn for_points(points: &[ProjPoint], vertex: ProjPoint) -> Result<Self, GeprociError> {
        match Self::project(points, vertex) {
            (Some(mut p), None) => {
                p.checklist = vec![Check::new(
                    "distinct_images",
                    "projected points are pairwise distinct",
                    true,
                )];
                Ok(p)
            }
            (_, reason) => Err(GeprociError::VertexRejected {
                reasons: reason.into_iter().collect(),
            }),
        }
    }

    fn project(points: &[ProjPoint], vertex: ProjPoint) -> (Option<Self>, Option<String>) {
        let matrix = ProjMatrix::sending_to_last(&vertex);
        let mut images = Vec::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            let c = matrix.apply_raw(p.coords());
            match PlanePoint::new([c[0].clone(), c[1].clone(), c[2].clone()]) {
                Ok(q) => images.push(q),
                Err(_) => return (None, Some(format!("vertex coincides with point {}", i + 1))),
            }
        }
        let mut seen = HashSet::new();
        for (i, q) in images.iter().enumerate() {
            if !seen.insert(q) {
                let j = images.iter().position(|r| r == q).expect("seen") + 1;
                return (
                    None,
                    Some(format!("points {j} and {} have the same image", i + 1)),
                );
            }
        }
        (
            Some(Projection {
                vertex,
                matrix,
                images,
                checklist: Vec::new(),
            }),
            None,
        )
    }

    pub fn vertex(&self) -> &ProjPoint {
        &self.vertex
    }

    pub fn matrix(&self) -> &ProjMatrix {
        &self.matrix
    }

    pub fn checklist(&self) -> &[Check] {
        &self.checklist
    }

    pub fn images(&self) -> &[PlanePoint] {
        &self.images
    }

    /// Image of point `i` (1-based).
    pub fn image(&self, i: usize) -> &PlanePoint {
        &self.images[i - 1]
    }

    pub fn images_of(&self, set: &PointSet) -> Vec<PlanePoint> {
        set.iter().map(|i| self.image(i).clone()).collect()
    }

    /// The ternary linear form cut out in P² by a plane through the vertex.
    pub fn push_plane(&self, v: &ProjPlane) -> HomForm {
        let image = self.matrix.apply_plane(v);
        let c = image.coords();
        assert!(c[3].is_zero(), "plane does not contain the vertex");
        HomForm::linear(&c[..3])
    }

    /// Linear form of the image of a line missing the vertex.
    pub fn push_line(&self, cfg: &H4Configuration, l: usize) -> HomForm {
        let plane =
            ProjPlane::through_line(&cfg.line(l).line, &self.vertex).expect("vertex off the line");
        self.push_plane(&plane)
    }

    pub fn record(&self) -> ProjectionRecord {
        ProjectionRecord {
            vertex: self.vertex.clone(),
            transform: self.matrix.rows().clone(),
            images: self.images.clone(),
            checklist: self.checklist.clone(),
        }
    }
}

/// First vertex from the seeded stream passing the H4 genericity gate.
pub fn sample_generic_vertex(cfg: &H4Configuration, seed: u64) -> Result<Projection, GeprociError> {
    next_generic(cfg, &mut VertexSampler::new(seed))
}

fn next_generic(
    cfg: &H4Configuration,
    sampler: &mut VertexSampler,
) -> Result<Projection, GeprociError> {
    for _ in 0..VERTEX_DRAWS {
        if let Ok(p) = Projection::for_h4(cfg, sampler.next_vertex()) {
            return Ok(p);
        }
    }
    Err(GeprociError::RejectionBudgetExhausted(VERTEX_DRAWS))
}

/// First vertex from the seeded stream giving distinct images of `points`.
pub fn sample_vertex_for_points(
    points: &[ProjPoint],
    seed: u64,
) -> Result<Projection, GeprociError> {
    let mut sampler = VertexSampler::new(seed);
    for _ in 0..VERTEX_DRAWS {
        if let Ok(p) = Projection::for_points(points, sampler.next_vertex()) {
            return Ok(p);
        }
    }
    Err(GeprociError::RejectionBudgetExhausted(VERTEX_DRAWS))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridIntersection {
    pub l: usize,
    pub m: usize,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCertificate {
    pub l_lines: [usize; 5],
    pub m_lines: [usize; 5],
    pub intersections: Vec<GridIntersection>,
    pub points: PointSet,
    /// Canonical generator of the (one-dimensional) space of quadrics
    /// through the grid points.
    pub quadric: HomForm,
}

/// Checks the (5,5)-grid conditions and computes the quadric through the grid.
pub fn verify_grid(
    cfg: &H4Configuration,
    l: [usize; 5],
    m: [usize; 5],
) -> Result<GridCertificate, GeprociError> {
    let nlines = cfg.lines().len();
    if let Some(&bad) = l.iter().chain(&m).find(|&&i| i == 0 || i > nlines) {
        return Err(GeprociError::NotAGrid(format!(
            "line index {bad} out of range"
        )));
    }
    for (set, name) in [(&l, "L"), (&m, "M")] {
        for i in 0..5 {
            for j in i + 1..5 {
                let (a, b) = (&cfg.line(set[i]).line, &cfg.line(set[j]).line);
                match lines_meet(a, b) {
                    Ok(false) => {}
                    Ok(true) => {
                        return Err(GeprociError::NotAGrid(format!(
                            "{name} lines l{} and l{} meet",
                            set[i], set[j]
                        )))
                    }
                    Err(_) => {
                        return Err(GeprociError::NotAGrid(format!(
                            "{name} line l{} is repeated",
                            set[i]
                        )));
                    }
                }
            }
        }
    }
    let mut intersections = Vec::with_capacity(25);
    for &a in &l {
        for &b in &m {
            if a == b {
                return Err(GeprociError::NotAGrid(format!(
                    "l{a} appears in both L and M"
                )));
            }
            let common = cfg.line(a).points.intersection(&cfg.line(b).points);
            match common.indices() {
                [p] => intersections.push(GridIntersection {
                    l: a,
                    m: b,
                    point: *p,
                }),
                _ => {
                    return Err(GeprociError::NotAGrid(format!(
                        "l{a} and l{b} do not meet in a configuration point"
                    )))
                }
            }
        }
    }
    let points = PointSet::from_iter_unchecked(intersections.iter().map(|x| x.point));
    if points.len() != 25 {
        return Err(GeprociError::NotAGrid(format!(
            "only {} distinct intersection points",
            points.len()
        )));
    }
    let basis = forms::vanishing_space(&cfg.points_of(&points), 2, 4)?;
    if basis.dim() != 1 {
        return Err(GeprociError::NotAGrid(format!(
            "quadrics through the grid form a {}-dimensional space",
            basis.dim()
        )));
    }
    let quadric = basis.forms.into_iter().next().expect("dimension 1");
    Ok(GridCertificate {
        l_lines: l,
        m_lines: m,
        intersections,
        points,
        quadric,
    })
}

/// A member of the pencil spanned by the cones over the `L` and `M` lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuinticCone {
    pub anchor: usize,
    pub external_line: usize,
    /// Products of the projected `L` and `M` line forms.
    pub g: HomForm,
    pub h: HomForm,
    /// The member is `lambda·g + mu·h`.
    pub lambda: FieldElement,
    pub mu: FieldElement,
    pub form: HomForm,
    /// Points of the grid and the external line, all of which the form vanishes at.
    pub vanishing_set: PointSet,
    /// Configuration points whose images are common zeros of `g` and `h`.
    pub base_points: PointSet,
    pub checks: Vec<Check>,
}

/// The unique member of the pencil `⟨g, h⟩` vanishing at the anchor image.
pub fn build_quintic_cone(
    cfg: &H4Configuration,
    proj: &Projection,
    grid: &GridCertificate,
    anchor: usize,
    external_line: usize,
) -> Result<QuinticCone, GeprociError> {
    if !cfg.line(external_line).points.contains(anchor) {
        return Err(GeprociError::Cone(format!(
            "point {anchor} is not on l{external_line}"
        )));
    }
    let g_lines: Vec<HomForm> = grid
        .l_lines
        .iter()
        .map(|&l| proj.push_line(cfg, l))
        .collect();
    let h_lines: Vec<HomForm> = grid
        .m_lines
        .iter()
        .map(|&l| proj.push_line(cfg, l))
        .collect();
    let g = HomForm::product(3, &g_lines)?;
    let h = HomForm::product(3, &h_lines)?;
    let q = proj.image(anchor);
    let (gq, hq) = (g.evaluate(q)?, h.evaluate(q)?);
    if gq.is_zero() && hq.is_zero() {
        return Err(GeprociError::PencilDegenerate(anchor));
    }
    let (lambda, mu) = (hq.clone(), -gq);
    let form = g.scale(&lambda).add(&h.scale(&mu))?.canonical();
    if form.is_zero() {
        return Err(GeprociError::Cone(
            "pencil member vanishes identically".into(),
        ));
    }

    let vanishing_set = grid.points.union(&cfg.line(external_line).points);
    let mut checks = Vec::new();
    let on_grid = grid
        .points
        .iter()
        .all(|i| form.vanishes_at(proj.image(i)).unwrap_or(false));
    checks.push(Check::new(
        "vanishes_on_grid",
        "the quintic vanishes at the 25 grid images",
        on_grid,
    ));
    let on_line = cfg
        .line(external_line)
        .points
        .iter()
        .all(|i| form.vanishes_at(proj.image(i)).unwrap_or(false));
    checks.push(Check::new(
        "vanishes_on_external_line",
        "the quintic through the anchor vanishes at every point of the external line",
        on_line,
    ));
    let base_points = PointSet::from_iter_unchecked((1..=cfg.num_points()).filter(|&i| {
        let p = proj.image(i);
        g.vanishes_at(p).unwrap_or(false) && h.vanishes_at(p).unwrap_or(false)
    }));
    checks.push(Check::new(
        "base_locus_sweep",
        "among configuration images the pencil's base points are exactly the grid",
        base_points == grid.points,
    ));
    Ok(QuinticCone {
        anchor,
        external_line,
        g,
        h,
        lambda,
        mu,
        form,
        vanishing_set,
        base_points,
        checks,
    })
}

/// Five-point lines made of special points of the grid, each paired with its
/// smallest point as anchor.
pub fn external_lines(cfg: &H4Configuration, grid: &GridCertificate) -> Vec<(usize, usize)> {
    let special = PointSet::from_iter_unchecked(
        cfg.special_points_for_grid(&grid.points)
            .iter()
            .map(|s| s.index),
    );
    (1..=cfg.lines().len())
        .filter(|&l| cfg.line(l).points.difference(&special).is_empty())
        .map(|l| (cfg.line(l).points.indices()[0], l))
        .collect()
}

/// Anchor on `line`, provided the line consists of special points of the grid.
pub fn anchor_on(
    cfg: &H4Configuration,
    grid: &GridCertificate,
    line: usize,
) -> Result<usize, GeprociError> {
    external_lines(cfg, grid)
        .into_iter()
        .find(|&(_, l)| l == line)
        .map(|(a, _)| a)
        .ok_or_else(|| {
            GeprociError::Cone(format!(
                "l{line} is not a line of special points for the grid"
            ))
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bezout {
    pub degrees: [u32; 2],
    pub product: u32,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resample {
    pub vertex: ProjPoint,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeprociCertificate {
    pub seed: u64,
    pub projection: ProjectionRecord,
    pub resampled: Vec<Resample>,
    /// `dim` of degree-d plane curves through the 60 images, d = 1…6.
    pub dimension_table: Vec<usize>,
    pub c6: HomForm,
    pub c6_smoothness: SmoothnessVerdict,
    pub grids: [GridCertificate; 2],
    pub c5: QuinticCone,
    pub c5_prime: QuinticCone,
    pub z1: PointSet,
    pub z2: PointSet,
    pub c6_divides_product: bool,
    pub bezout: Bezout,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Dimensions of the spaces of degree-d forms through `points`, d = 1…max.
pub fn dimension_table(points: &[PlanePoint], max_degree: u32) -> Result<Vec<usize>, GeprociError> {
    (1..=max_degree)
        .map(|d| Ok(forms::vanishing_dimension(points, d, 3)?))
        .collect()
}

/// Runs the complete-intersection pipeline at the vertex drawn from `seed`.
pub fn verify_geproci(
    cfg: &H4Configuration,
    seed: u64,
) -> Result<GeprociCertificate, GeprociError> {
    let grid1 = verify_grid(cfg, GRID1.0, GRID1.1)?;
    let grid2 = verify_grid(cfg, GRID2.0, GRID2.1)?;
    let mut sampler = VertexSampler::new(seed);
    let mut resampled = Vec::new();
    for _ in 0..VERTEX_RESAMPLES {
        let proj = next_generic(cfg, &mut sampler)?;
        match geproci_at(cfg, seed, &proj, &grid1, &grid2, &resampled) {
            Err(GeprociError::PencilDegenerate(i)) => resampled.push(Resample {
                vertex: proj.vertex().clone(),
                reason: format!("pencil degenerate at point {i}"),
            }),
            Err(GeprociError::Form(FormError::Indeterminate(_))) => resampled.push(Resample {
                vertex: proj.vertex().clone(),
                reason: "smoothness indeterminate".into(),
            }),
            other => return other,
        }
    }
    Err(GeprociError::Indeterminate)
}

fn geproci_at(
    cfg: &H4Configuration,
    seed: u64,
    proj: &Projection,
    grid1: &GridCertificate,
    grid2: &GridCertificate,
    resampled: &[Resample],
) -> Result<GeprociCertificate, GeprociError> {
    let images = proj.images();
    let dims = dimension_table(&images, 5)?;
    let sextics = forms::vanishing_space(images, 6, 3)?;
    let mut dimension_table = dims;
    dimension_table.push(sextics.dim());
    let c6 = sextics
        .forms
        .first()
        .cloned()
        .ok_or_else(|| GeprociError::Cone("no sextic through the images".into()))?;
    let c6_smoothness = plane_curve_is_smooth(&c6, seed)?;

    let c5 = build_quintic_cone(
        cfg,
        proj,
        grid1,
        anchor_on(cfg, grid1, GRID1_EXTERNAL)?,
        GRID1_EXTERNAL,
    )?;
    let c5_prime = build_quintic_cone(
        cfg,
        proj,
        grid2,
        anchor_on(cfg, grid2, GRID2_EXTERNAL)?,
        GRID2_EXTERNAL,
    )?;
    let (z1, z2) = (c5.vanishing_set.clone(), c5_prime.vanishing_set.clone());

    let product = c5.form.multiply(&c5_prime.form)?;
    let c6_divides_product = forms::divides(&c6, &product)?;
    let bezout = Bezout {
        degrees: [c6.degree(), product.degree()],
        product: c6.degree() * product.degree(),
        points: images.len(),
    };

    let mut checks = proj.checklist().to_vec();
    checks.push(Check::new(
        "dimension_table",
        "no curve of degree at most 5 and a unique sextic pass through the 60 images",
        dimension_table == [0, 0, 0, 0, 0, 1],
    ));
    checks.push(Check::new(
        "c6_vanishes",
        "the sextic vanishes at all 60 images",
        images.iter().all(|p| c6.vanishes_at(p).unwrap_or(false)),
    ));
    checks.push(Check::new(
        "c6_smooth",
        "the sextic through the images is smooth",
        c6_smoothness.is_smooth(),
    ));
    checks.push(Check::new(
        "grid1_quadric",
        "the first grid lies on the quadric Q1",
        grid1.quadric == q1().canonical(),
    ));
    checks.push(Check::new(
        "grid2_quadric",
        "the second grid lies on the quadric Q2",
        grid2.quadric == q2().canonical(),
    ));
    for (name, cone) in [("c5", &c5), ("c5_prime", &c5_prime)] {
        for c in &cone.checks {
            checks.push(Check::new(
                &format!("{name}_{}", c.name),
                &c.claim,
                c.passed,
            ));
        }
        checks.push(Check::new(
            &format!("{name}_degree"),
            "the pencil member is a quintic",
            cone.form.degree() == 5,
        ));
    }
    checks.push(Check::new(
        "partition",
        "Z1 and Z2 are 30-point sets partitioning the 60 points",
        z1.len() == 30
            && z2.len() == 30
            && z1.is_disjoint(&z2)
            && z1.union(&z2) == cfg.all_points(),
    ));
    checks.push(Check::new(
        "product_vanishes",
        "C5·C5' vanishes at all 60 images",
        images
            .iter()
            .all(|p| product.vanishes_at(p).unwrap_or(false)),
    ));
    checks.push(Check::new(
        "no_common_component",
        "C6 does not divide C5·C5'",
        !c6_divides_product,
    ));
    checks.push(Check::new(
        "bezout",
        "6·10 = 60 = number of projected points",
        bezout.degrees == [6, 10] && bezout.product as usize == bezout.points,
    ));
    let passed = all_passed(&checks);
    Ok(GeprociCertificate {
        seed,
        projection: proj.record(),
        resampled: resampled.to_vec(),
        dimension_table,
        c6,
        c6_smoothness,
        grids: [grid1.clone(), grid2.clone()],
        c5,
        c5_prime,
        z1,
        z2,
        c6_divides_product,
        bezout,
        checks,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfGridSubset {
    Z1,
    Z2,
}

impl HalfGridSubset {
    pub fn lines(self) -> [usize; 6] {
        match self {
            HalfGridSubset::Z1 => Z1_LINES,
            HalfGridSubset::Z2 => Z2_LINES,
        }
    }

    pub fn external_line(self) -> usize {
        match self {
            HalfGridSubset::Z1 => GRID1_EXTERNAL,
            HalfGridSubset::Z2 => GRID2_EXTERNAL,
        }
    }

    pub fn grid(self) -> ([usize; 5], [usize; 5]) {
        match self {
            HalfGridSubset::Z1 => GRID1,
            HalfGridSubset::Z2 => GRID2,
        }
    }

    /// The 30 points: the grid together with its external line.
    pub fn points(self, cfg: &H4Configuration) -> PointSet {
        cfg.points_on_lines(&self.lines())
    }
}

impl std::str::FromStr for HalfGridSubset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "z1" => Ok(HalfGridSubset::Z1),
            "z2" => Ok(HalfGridSubset::Z2),
            _ => Err(format!("unknown subset {s:?}; expected z1 or z2")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGridCertificate {
    pub seed: u64,
    pub subset: HalfGridSubset,
    pub points: PointSet,
    pub lines: [usize; 6],
    pub projection: ProjectionRecord,
    pub line_forms: Vec<HomForm>,
    pub line_product: HomForm,
    pub gamma: QuinticCone,
    pub gamma_smoothness: SmoothnessVerdict,
    pub bezout: Bezout,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Certifies that `subset` is a (5,6) half-grid using its standard lines.
pub fn verify_half_grid(
    cfg: &H4Configuration,
    seed: u64,
    subset: HalfGridSubset,
) -> Result<HalfGridCertificate, GeprociError> {
    verify_half_grid_with_lines(cfg, seed, subset, subset.lines())
}

/// As [`verify_half_grid`] with caller-supplied covering lines.
pub fn verify_half_grid_with_lines(
    cfg: &H4Configuration,
    seed: u64,
    subset: HalfGridSubset,
    lines: [usize; 6],
) -> Result<HalfGridCertificate, GeprociError> {
    let nlines = cfg.lines().len();
    if let Some(&bad) = lines.iter().find(|&&i| i == 0 || i > nlines) {
        return Err(GeprociError::Covering(format!(
            "line index {bad} out of range"
        )));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            match lines_meet(&cfg.line(lines[i]).line, &cfg.line(lines[j]).line) {
                Ok(false) => {}
                Ok(true) => {
                    return Err(GeprociError::Covering(format!(
                        "l{} and l{} meet",
                        lines[i], lines[j]
                    )));
                }
                Err(_) => return Err(GeprociError::Covering(format!("l{} is repeated", lines[i]))),
            }
        }
    }
    let points = subset.points(cfg);
    let covered = cfg.points_on_lines(&lines);
    if covered != points {
        let missing = points.difference(&covered);
        return Err(GeprociError::Covering(format!(
            "lines {lines:?} do not cover exactly the subset; missing {missing}, extra {}",
            covered.difference(&points)
        )));
    }

    let grid_lines = subset.grid();
    let grid = verify_grid(cfg, grid_lines.0, grid_lines.1)?;
    let mut sampler = VertexSampler::new(seed);
    for _ in 0..VERTEX_RESAMPLES {
        let proj = next_generic(cfg, &mut sampler)?;
        match half_grid_at(cfg, seed, subset, &points, lines, &proj, &grid) {
            Err(GeprociError::PencilDegenerate(_))
            | Err(GeprociError::Form(FormError::Indeterminate(_))) => continue,
            other => return other,
        }
    }
    Err(GeprociError::Indeterminate)
}

fn half_grid_at(
    cfg: &H4Configuration,
    seed: u64,
    subset: HalfGridSubset,
    points: &PointSet,
    lines: [usize; 6],
    proj: &Projection,
    grid: &GridCertificate,
) -> Result<HalfGridCertificate, GeprociError> {
    let external = subset.external_line();
    let anchor = anchor_on(cfg, grid, external)?;
    let gamma = build_quintic_cone(cfg, proj, grid, anchor, external)?;
    let line_forms: Vec<HomForm> = lines.iter().map(|&l| proj.push_line(cfg, l)).collect();
    let line_product = HomForm::product(3, &line_forms)?;
    let gamma_smoothness = plane_curve_is_smooth(&gamma.form, seed)?;
    let images = proj.images_of(points);

    let mut checks = proj.checklist().to_vec();
    checks.push(Check::new(
        "covering",
        "six pairwise skew lines cover the 30 points",
        true,
    ));
    checks.push(Check::new(
        "gamma_vanishes",
        "the quintic vanishes at all 30 images",
        images
            .iter()
            .all(|p| gamma.form.vanishes_at(p).unwrap_or(false)),
    ));
    checks.push(Check::new(
        "lines_vanish",
        "the product of the six projected lines vanishes at all 30 images",
        images
            .iter()
            .all(|p| line_product.vanishes_at(p).unwrap_or(false)),
    ));
    let mut no_line_component = true;
    for f in &line_forms {
        no_line_component &= !forms::divides(f, &gamma.form)?;
    }
    checks.push(Check::new(
        "no_common_component",
        "the quintic contains none of the six projected lines",
        no_line_component,
    ));
    checks.push(Check::new(
        "gamma_smooth",
        "the quintic is smooth",
        gamma_smoothness.is_smooth(),
    ));
    let bezout = Bezout {
        degrees: [5, 6],
        product: gamma.form.degree() * line_product.degree(),
        points: images.len(),
    };
    checks.push(Check::new(
        "bezout",
        "5·6 = 30 = number of projected points",
        bezout.product == 30 && images.len() == 30,
    ));
    let passed = all_passed(&checks);
    Ok(HalfGridCertificate {
        seed,
        subset,
        points: points.clone(),
        lines,
        projection: proj.record(),
        line_forms,
        line_product,
        gamma,
        gamma_smoothness,
        bezout,
        checks,
        passed,
    })
}

/// A complete-intersection type `(a, b)` compatible with the point count and
/// the interpolation bound, read as `a` skew lines each carrying `b` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateType {
    pub lines: usize,
    pub points_per_line: usize,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    pub point_count: usize,
    pub seed: u64,
    pub vertex: ProjPoint,
    pub max_collinear: usize,
    /// `dim` of degree-d forms through the images for d = 1, 2, … up to the
    /// first nonzero entry (or the point count).
    pub dimension_table: Vec<usize>,
    pub min_degree: usize,
    pub candidates: Vec<CandidateType>,
    /// True when every candidate half-grid type needs more collinear points
    /// than the set has.
    pub refuted: bool,
    pub summary: String,
}

/// Refutes the half-grid property for the whole configuration.
pub fn verify_not_half_grid(cfg: &H4Configuration, seed: u64) -> Result<Refutation, GeprociError> {
    let proj = sample_generic_vertex(cfg, seed)?;
    refute_with(cfg.points(), seed, &proj)
}

/// The same refutation for an arbitrary point set.
pub fn refute_half_grid(points: &[ProjPoint], seed: u64) -> Result<Refutation, GeprociError> {
    let proj = sample_vertex_for_points(points, seed)?;
    refute_with(points, seed, &proj)
}

fn refute_with(
    points: &[ProjPoint],
    seed: u64,
    proj: &Projection,
) -> Result<Refutation, GeprociError> {
    let n = points.len();
    let max_collinear = max_collinear_points(points);
    let mut dimension_table = Vec::new();
    let mut min_degree = n;
    for d in 1..=n as u32 {
        let dim = forms::vanishing_dimension(proj.images(), d, 3)?;
        dimension_table.push(dim);
        if dim > 0 {
            min_degree = d as usize;
            break;
        }
    }
    let candidates: Vec<CandidateType> = (min_degree..=n)
        .filter(|a| n % a == 0 && n / a >= min_degree)
        .map(|a| CandidateType {
            lines: a,
            points_per_line: n / a,
            excluded: n / a > max_collinear,
        })
        .collect();
    let refuted = candidates.iter().all(|c| c.excluded);
    let summary = match candidates.iter().find(|c| !c.excluded) {
        None => format!(
            "no curve of degree below {min_degree} passes through the {n} images, so every complete-intersection \
             type needs lines with more than {max_collinear} points; not a half-grid"
        ),
        Some(c) => format!(
            "type ({}, {}) is not excluded: {} skew lines with {} points each are compatible with at most {} collinear points",
            c.lines, c.points_per_line, c.lines, c.points_per_line, max_collinear
        ),
    };
    Ok(Refutation {
        point_count: n,
        seed,
        vertex: proj.vertex().clone(),
        max_collinear,
        dimension_table,
        min_degree,
        candidates,
        refuted,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::build_h4;

    #[test]
    fn quadrics_vanish_where_expected() {
        let cfg = build_h4();
        assert!(q1().vanishes_at(cfg.point(5)).unwrap());
        assert!(!q1().vanishes_at(cfg.point(2)).unwrap());
    }

    #[test]
    fn forced_vertices_are_rejected() {
        let cfg = build_h4();
        let err = Projection::for_h4(&cfg, cfg.point(1).clone()).unwrap_err();
        let GeprociError::VertexRejected { reasons } = err else {
            panic!()
        };
        assert!(reasons.iter().any(|r| r.starts_with("on plane")));
        // y(2x − y) = 0 with z = w = 0
        let on_q1 = ProjPoint::from_ints([1, 2, 0, 0]).unwrap();
        let GeprociError::VertexRejected { reasons } = Projection::for_h4(&cfg, on_q1).unwrap_err()
        else {
            panic!()
        };
        assert!(reasons.iter().any(|r| r == "on quadric Q1"));
    }

    #[test]
    fn grid_errors() {
        let cfg = build_h4();
        let e = verify_grid(&cfg, GRID1.0, GRID1.0).unwrap_err();
        assert!(matches!(e, GeprociError::NotAGrid(_)), "{e}");
        let e = verify_grid(&cfg, [1, 2, 3, 4, 5], GRID1.1).unwrap_err();
        assert!(e.to_string().contains("meet"), "{e}");
    }

    #[test]
    fn grids_give_the_quadrics() {
        let cfg = build_h4();
        let g1 = verify_grid(&cfg, GRID1.0, GRID1.1).unwrap();
        assert_eq!(g1.quadric, q1().canonical());
        let g2 = verify_grid(&cfg, GRID2.0, GRID2.1).unwrap();
        assert_eq!(g2.quadric, q2().canonical());
        assert_eq!(external_lines(&cfg, &g1), vec![(3, 17), (4, 24)]);
        assert_eq!(external_lines(&cfg, &g2), vec![(3, 17), (4, 24)]);
        assert_eq!(anchor_on(&cfg, &g1, GRID1_EXTERNAL).unwrap(), 4);
        assert!(anchor_on(&cfg, &g1, 1).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let cfg = build_h4();
        let a = sample_generic_vertex(&cfg, 9).unwrap();
        let b = sample_generic_vertex(&cfg, 9).unwrap();
        assert_eq!(a.vertex(), b.vertex());
        assert!(a.checklist().iter().all(|c| c.passed));
    }
}
