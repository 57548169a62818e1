//! The H4 configuration: 60 points of P³ with coordinates in Z[φ], their 60
//! dual planes, and the 72 lines carrying five points each.
//!
//! Indices of points, planes and lines are 1-based throughout, matching the
//! usual numbering `P_1 … P_60`, `V_1 … V_60`, `ℓ_1 … ℓ_72`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldElement;
use crate::projective::{
    line_in_plane, line_through, point_on_plane, ProjLine, ProjPlane, ProjPoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line:?} carries {count} configuration points, more than five")]
    TooManyCollinear { line: Vec<usize>, count: usize },
    #[error("incidence count violated: {0}")]
    Count(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("point set has repeated index {0}")]
    Repeated(usize),
}

/// Sorted set of 1-based point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct PointSet(Vec<usize>);

impl PointSet {
    pub fn new(mut indices: Vec<usize>) -> Result<Self, ConfigError> {
        indices.sort_unstable();
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ConfigError::Repeated(w[0]));
        }
        if let Some(&i) = indices.iter().find(|&&i| i == 0) {
            return Err(ConfigError::IndexOutOfRange(i));
        }
        Ok(PointSet(indices))
    }

    /// Like [`PointSet::new`] but also rejects indices above `max`.
    pub fn within(indices: Vec<usize>, max: usize) -> Result<Self, ConfigError> {
        if let Some(&i) = indices.iter().find(|&&i| i > max) {
            return Err(ConfigError::IndexOutOfRange(i));
        }
        Self::new(indices)
    }

    pub fn from_iter_unchecked(it: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = it.into_iter().collect();
        PointSet(set.into_iter().collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        Self::from_iter_unchecked(self.0.iter().chain(&other.0).copied())
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        PointSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        )
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet(
            self.0
                .iter()
                .copied()
                .filter(|&i| !other.contains(i))
                .collect(),
        )
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.0.iter().all(|&i| !other.contains(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Point coordinates, coded as 0, ±1, ±2 (= ±φ), ±3 (= ±φ²).
const H4_COORDS: [[i8; 4]; 60] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [1, 1, 1, 1],
    [1, 1, 1, -1],
    [1, 1, -1, 1],
    [1, 1, -1, -1],
    [1, -1, 1, 1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [1, -1, -1, -1],
    [0, 2, 3, 1],
    [0, 2, 3, -1],
    [0, 2, -3, 1],
    [0, 2, -3, -1],
    [0, 3, 1, 2],
    [0, 3, 1, -2],
    [0, 3, -1, 2],
    [0, 3, -1, -2],
    [0, 1, 2, 3],
    [0, 1, 2, -3],
    [0, 1, -2, 3],
    [0, 1, -2, -3],
    [2, 0, 1, 3],
    [2, 0, 1, -3],
    [2, 0, -1, 3],
    [2, 0, -1, -3],
    [3, 0, 2, 1],
    [3, 0, 2, -1],
    [3, 0, -2, 1],
    [3, 0, -2, -1],
    [1, 0, 3, 2],
    [1, 0, 3, -2],
    [1, 0, -3, 2],
    [1, 0, -3, -2],
    [2, 3, 0, 1],
    [2, 3, 0, -1],
    [2, -3, 0, 1],
    [2, -3, 0, -1],
    [3, 1, 0, 2],
    [3, 1, 0, -2],
    [3, -1, 0, 2],
    [3, -1, 0, -2],
    [1, 2, 0, 3],
    [1, 2, 0, -3],
    [1, -2, 0, 3],
    [1, -2, 0, -3],
    [2, 1, 3, 0],
    [2, 1, -3, 0],
    [2, -1, 3, 0],
    [2, -1, -3, 0],
    [3, 2, 1, 0],
    [3, 2, -1, 0],
    [3, -2, 1, 0],
    [3, -2, -1, 0],
    [1, 3, 2, 0],
    [1, 3, -2, 0],
    [1, -3, 2, 0],
    [1, -3, -2, 0],
];

fn decode(code: i8) -> FieldElement {
    let sign = i64::from(code.signum());
    match code.abs() {
        0 => FieldElement::zero(),
        1 => FieldElement::from_ints(sign, 0),
        2 => FieldElement::from_ints(0, sign),
        // φ² = 1 + φ
        3 => FieldElement::from_ints(sign, sign),
        _ => unreachable!("coordinate code"),
    }
}

/// Coordinate vectors exactly as listed (before canonical rescaling).
pub fn h4_printed_coordinates() -> Vec<[FieldElement; 4]> {
    H4_COORDS.iter().map(|c| c.map(decode)).collect()
}

/// The 60 points, canonicalized.
pub fn h4_points() -> Vec<ProjPoint> {
    h4_printed_coordinates()
        .into_iter()
        .map(|c| ProjPoint::new(c).expect("nonzero coordinates"))
        .collect()
}

/// A line together with the (1-based) indices of the points it carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigLine {
    pub line: ProjLine,
    pub points: PointSet,
}

/// Every maximal collinear subset with at least three members, found by
/// scanning all point pairs and grouping by canonical line. Sorted by point set.
pub fn collinear_subsets(points: &[ProjPoint]) -> Vec<ConfigLine> {
    let mut groups: HashMap<ProjLine, BTreeSet<usize>> = HashMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let Ok(line) = line_through(&points[i], &points[j]) else {
                continue;
            };
            let members = groups.entry(line).or_default();
            members.insert(i + 1);
            members.insert(j + 1);
        }
    }
    let mut out: Vec<ConfigLine> = groups
        .into_iter()
        .filter(|(_, m)| m.len() >= 3)
        .map(|(line, m)| ConfigLine {
            line,
            points: PointSet(m.into_iter().collect()),
        })
        .collect();
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out
}

/// Largest number of collinear points in the set (2 when no three are
/// collinear, fewer only for sets with under two distinct points).
pub fn max_collinear_points(points: &[ProjPoint]) -> usize {
    let base = points.len().min(2);
    collinear_subsets(points)
        .iter()
        .map(|l| l.points.len())
        .max()
        .unwrap_or(base)
}

/// Lines with exactly five points, in lexicographic order of their point sets.
/// Errors if any line carries six or more points.
pub fn five_reach_lines(points: &[ProjPoint]) -> Result<Vec<ConfigLine>, ConfigError> {
    let all = collinear_subsets(points);
    if let Some(l) = all.iter().find(|l| l.points.len() > 5) {
        return Err(ConfigError::TooManyCollinear {
            line: l.points.0.clone(),
            count: l.points.len(),
        });
    }
    Ok(all.into_iter().filter(|l| l.points.len() == 5).collect())
}

#[derive(Debug, Clone)]
pub struct H4Configuration {
    points: Vec<ProjPoint>,
    planes: Vec<ProjPlane>,
    collinear: Vec<ConfigLine>,
    lines: Vec<ConfigLine>,
    plane_points: Vec<PointSet>,
    point_planes: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
    line_planes: Vec<Vec<usize>>,
    plane_lines: Vec<Vec<usize>>,
}

/// Builds the configuration and all incidence maps.
///
/// Panics with a diagnostic if the computed structure violates any of the
/// expected counts; that can only mean the coordinate table is corrupt.
pub fn build_h4() -> H4Configuration {
    match H4Configuration::from_points(h4_points()) {
        Ok(cfg) => match cfg.check_counts() {
            Ok(()) => cfg,
            Err(e) => panic!("H4 configuration is inconsistent: {e}"),
        },
        Err(e) => panic!("H4 configuration is inconsistent: {e}"),
    }
}

impl H4Configuration {
    /// Builds the structure for an arbitrary point list with dual planes.
    pub fn from_points(points: Vec<ProjPoint>) -> Result<Self, ConfigError> {
        let n = points.len();
        let planes: Vec<ProjPlane> = points.iter().map(ProjPoint::dual_plane).collect();
        let collinear = collinear_subsets(&points);
        if let Some(l) = collinear.iter().find(|l| l.points.len() > 5) {
            return Err(ConfigError::TooManyCollinear {
                line: l.points.0.clone(),
                count: l.points.len(),
            });
        }
        let lines: Vec<ConfigLine> = collinear
            .iter()
            .filter(|l| l.points.len() == 5)
            .cloned()
            .collect();

        let plane_points: Vec<PointSet> = planes
            .iter()
            .map(|v| {
                PointSet(
                    (1..=n)
                        .filter(|&j| point_on_plane(&points[j - 1], v))
                        .collect(),
                )
            })
            .collect();
        let point_planes: Vec<Vec<usize>> = (1..=n)
            .map(|j| {
                (1..=n)
                    .filter(|&i| plane_points[i - 1].contains(j))
                    .collect()
            })
            .collect();
        let point_lines: Vec<Vec<usize>> = (1..=n)
            .map(|j| {
                (1..=lines.len())
                    .filter(|&l| lines[l - 1].points.contains(j))
                    .collect()
            })
            .collect();
        let line_planes: Vec<Vec<usize>> = lines
            .iter()
            .map(|l| {
                (1..=n)
                    .filter(|&i| line_in_plane(&l.line, &planes[i - 1]))
                    .collect()
            })
            .collect();
        let plane_lines: Vec<Vec<usize>> = (1..=n)
            .map(|i| {
                (1..=lines.len())
                    .filter(|&l| line_planes[l - 1].contains(&i))
                    .collect()
            })
            .collect();
        Ok(H4Configuration {
            points,
            planes,
            collinear,
            lines,
            plane_points,
            point_planes,
            point_lines,
            line_planes,
            plane_lines,
        })
    }

    /// Verifies the (60₁₅) and line incidence counts.
    pub fn check_counts(&self) -> Result<(), ConfigError> {
        let fail = |m: String| Err(ConfigError::Count(m));
        if self.points.len() != 60 {
            return fail(format!("{} points", self.points.len()));
        }
        let distinct: std::collections::HashSet<&ProjPoint> = self.points.iter().collect();
        if distinct.len() != 60 {
            return fail("points are not pairwise distinct".into());
        }
        if self.lines.len() != 72 {
            return fail(format!("{} five-point lines", self.lines.len()));
        }
        if let Some((i, s)) = self
            .plane_points
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() != 15)
        {
            return fail(format!("plane {} contains {} points", i + 1, s.len()));
        }
        if let Some((i, s)) = self
            .point_planes
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() != 15)
        {
            return fail(format!("point {} lies on {} planes", i + 1, s.len()));
        }
        if let Some((i, s)) = self
            .point_lines
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() != 6)
        {
            return fail(format!("point {} lies on {} lines", i + 1, s.len()));
        }
        if let Some((i, s)) = self
            .line_planes
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() != 5)
        {
            return fail(format!("line {} lies in {} planes", i + 1, s.len()));
        }
        if let Some((i, s)) = self
            .plane_lines
            .iter()
            .enumerate()
            .find(|(_, s)| s.len() != 6)
        {
            return fail(format!("plane {} contains {} lines", i + 1, s.len()));
        }
        Ok(())
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn planes(&self) -> &[ProjPlane] {
        &self.planes
    }

    pub fn lines(&self) -> &[ConfigLine] {
        &self.lines
    }

    /// All maximal collinear subsets with at least three points.
    pub fn collinear_sets(&self) -> &[ConfigLine] {
        &self.collinear
    }

    pub fn point(&self, i: usize) -> &ProjPoint {
        &self.points[i - 1]
    }

    pub fn plane(&self, i: usize) -> &ProjPlane {
        &self.planes[i - 1]
    }

    pub fn line(&self, i: usize) -> &ConfigLine {
        &self.lines[i - 1]
    }

    pub fn points_of(&self, set: &PointSet) -> Vec<ProjPoint> {
        set.iter().map(|i| self.point(i).clone()).collect()
    }

    /// `V_i ↦ {j : P_j ∈ V_i}`.
    pub fn incidence_table_planes(&self) -> &[PointSet] {
        &self.plane_points
    }

    pub fn incidence_table_lines(&self) -> Vec<PointSet> {
        self.lines.iter().map(|l| l.points.clone()).collect()
    }

    pub fn planes_through_point(&self, i: usize) -> &[usize] {
        &self.point_planes[i - 1]
    }

    pub fn lines_through_point(&self, i: usize) -> &[usize] {
        &self.point_lines[i - 1]
    }

    pub fn planes_containing_line(&self, l: usize) -> &[usize] {
        &self.line_planes[l - 1]
    }

    pub fn lines_in_plane(&self, i: usize) -> &[usize] {
        &self.plane_lines[i - 1]
    }

    pub fn max_collinear(&self) -> usize {
        self.collinear
            .iter()
            .map(|l| l.points.len())
            .max()
            .unwrap_or(2)
    }

    /// Index of the five-point line whose point set is `set`, if any.
    pub fn line_index(&self, set: &PointSet) -> Option<usize> {
        self.lines
            .iter()
            .position(|l| &l.points == set)
            .map(|i| i + 1)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet((1..=self.points.len()).collect())
    }

    /// Union of the point sets of the given lines.
    pub fn points_on_lines(&self, lines: &[usize]) -> PointSet {
        PointSet::from_iter_unchecked(lines.iter().flat_map(|&l| self.line(l).points.iter()))
    }

    /// Points outside `grid_points` through which exactly ten lines pass that
    /// each meet the grid in two of its points, with those ten pairs covering
    /// twenty distinct grid points.
    pub fn special_points_for_grid(&self, grid_points: &PointSet) -> Vec<SpecialPoint> {
        let mut out = Vec::new();
        for x in 1..=self.points.len() {
            if grid_points.contains(x) {
                continue;
            }
            let mut pairs = Vec::new();
            for l in self.collinear.iter().filter(|l| l.points.contains(x)) {
                let on_grid: Vec<usize> = l
                    .points
                    .iter()
                    .filter(|&p| grid_points.contains(p))
                    .collect();
                for a in 0..on_grid.len() {
                    for b in a + 1..on_grid.len() {
                        pairs.push((on_grid[a], on_grid[b]));
                    }
                }
            }
            pairs.sort_unstable();
            let covered = PointSet::from_iter_unchecked(pairs.iter().flat_map(|&(a, b)| [a, b]));
            if pairs.len() == 10 && covered.len() == 20 {
                out.push(SpecialPoint { index: x, pairs });
            }
        }
        out
    }

    pub fn dump(&self) -> ConfigDump {
        ConfigDump {
            points: self.points.clone(),
            planes: self.planes.clone(),
            lines: self.lines.clone(),
            plane_points: self.plane_points.clone(),
            point_planes: self.point_planes.clone(),
            point_lines: self.point_lines.clone(),
            line_planes: self.line_planes.clone(),
            plane_lines: self.plane_lines.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialPoint {
    pub index: usize,
    pub pairs: Vec<(usize, usize)>,
}

/// Serialized form of the full configuration (`config.json`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDump {
    pub points: Vec<ProjPoint>,
    pub planes: Vec<ProjPlane>,
    pub lines: Vec<ConfigLine>,
    pub plane_points: Vec<PointSet>,
    pub point_planes: Vec<Vec<usize>>,
    pub point_lines: Vec<Vec<usize>>,
    pub line_planes: Vec<Vec<usize>>,
    pub plane_lines: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_coordinates() {
        let p13 = [(0, 0), (0, 1), (1, 1), (1, 0)].map(|(a, b)| FieldElement::from_ints(a, b));
        assert_eq!(h4_printed_coordinates()[12], p13);
        assert_eq!(h4_points()[12], ProjPoint::new(p13).unwrap());
        let cfg = build_h4();
        assert_eq!(cfg.plane(4), &ProjPlane::from_ints([0, 0, 0, 1]).unwrap());
        assert_eq!(cfg.num_points(), 60);
    }

    #[test]
    fn max_collinear_fixtures() {
        let grid: Vec<ProjPoint> = (0..3)
            .flat_map(|i| (0..3).map(move |j| ProjPoint::from_ints([i, j, 0, 1]).unwrap()))
            .collect();
        // a 3x3 affine grid also has diagonals of three, but nothing longer
        assert_eq!(max_collinear_points(&grid), 3);
        // points on the moment curve are in general position
        let generic: Vec<ProjPoint> = (1..=60)
            .map(|t: i64| ProjPoint::from_ints([1, t, t * t, t * t * t]).unwrap())
            .collect();
        assert_eq!(max_collinear_points(&generic), 2);
    }

    #[test]
    fn point_set_validation() {
        assert_eq!(PointSet::new(vec![3, 1, 3]), Err(ConfigError::Repeated(3)));
        assert_eq!(
            PointSet::within(vec![1, 61], 60),
            Err(ConfigError::IndexOutOfRange(61))
        );
        let s = PointSet::new(vec![5, 2, 9]).unwrap();
        assert_eq!(s.indices(), &[2, 5, 9]);
        assert_eq!(s.to_string(), "2, 5, 9");
    }

    #[test]
    fn six_collinear_points_are_rejected() {
        let pts: Vec<ProjPoint> = (0..6)
            .map(|t| ProjPoint::from_ints([1, t, 0, 0]).unwrap())
            .collect();
        assert!(matches!(
            five_reach_lines(&pts),
            Err(ConfigError::TooManyCollinear { count: 6, .. })
        ));
    }
}
