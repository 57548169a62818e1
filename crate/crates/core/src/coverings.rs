//! Exact covers of the 60 points by disjoint five-point lines, and the
//! (5,5)-grids formed by the 72 lines.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::config::H4Configuration;
use crate::geproci::{verify_grid, GeprociError, GridCertificate};

/// Indices of 12 lines, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverCertificate(pub Vec<usize>);

impl CoverCertificate {
    pub fn lines(&self) -> &[usize] {
        &self.0
    }
}

/// Number of (5,5)-grids among the 72 lines, as counted by
/// `scripts/grid_oracle.py` and frozen here.
pub const GRID_COUNT: usize = 72;

fn point_mask(cfg: &H4Configuration, l: usize) -> u64 {
    cfg.line(l)
        .points
        .iter()
        .fold(0u64, |m, p| m | 1 << (p - 1))
}

/// All partitions of the point set into five-point lines, sorted.
pub fn enumerate_coverings(cfg: &H4Configuration) -> Vec<CoverCertificate> {
    let n = cfg.num_points();
    let masks: Vec<u64> = (1..=cfg.lines().len())
        .map(|l| point_mask(cfg, l))
        .collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    search(&masks, full, 0, &mut chosen, &mut out);
    out.sort();
    out.dedup();
    out
}

fn search(
    masks: &[u64],
    full: u64,
    covered: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<CoverCertificate>,
) {
    if covered == full {
        let mut c: Vec<usize> = chosen.iter().map(|i| i + 1).collect();
        c.sort_unstable();
        out.push(CoverCertificate(c));
        return;
    }
    // branch on the uncovered point with the fewest usable lines
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut open = full & !covered;
    while open != 0 {
        let bit = open & open.wrapping_neg();
        open &= open - 1;
        let cands: Vec<usize> = (0..masks.len())
            .filter(|&i| masks[i] & bit != 0 && masks[i] & covered == 0)
            .collect();
        let k = cands.len() as u32;
        if k == 0 {
            return;
        }
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, cands));
            if k == 1 {
                break;
            }
        }
    }
    let Some((_, cands)) = best else { return };
    for i in cands {
        chosen.push(i);
        search(masks, full, covered | masks[i], chosen, out);
        chosen.pop();
    }
}

/// Whether the given lines partition the point set.
pub fn verify_covering(cfg: &H4Configuration, lines: &[usize]) -> bool {
    let n = cfg.num_points();
    let mut covered = 0u64;
    for &l in lines {
        if l == 0 || l > cfg.lines().len() {
            return false;
        }
        let m = point_mask(cfg, l);
        if covered & m != 0 {
            return false;
        }
        covered |= m;
    }
    covered.count_ones() as usize == n
}

/// An unordered pair of line families forming a (5,5)-grid, each family sorted
/// and the family with the smaller first line listed as `l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GridLines {
    pub l: [usize; 5],
    pub m: [usize; 5],
}

/// All (5,5)-grids made of configuration lines, sorted.
pub fn enumerate_grids(cfg: &H4Configuration, a: usize, b: usize) -> Vec<GridLines> {
    assert!(a == 5 && b == 5, "only (5,5)-grids are supported");
    let n = cfg.lines().len();
    let pts: Vec<u64> = (1..=n).map(|l| point_mask(cfg, l)).collect();
    // lines sharing a configuration point; skew otherwise
    let share: Vec<u128> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && pts[i] & pts[j] != 0)
                .fold(0u128, |m, j| m | 1 << j)
        })
        .collect();
    // configuration lines may also meet away from the points; exclude those from both roles
    let meet: Vec<u128> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    j != i
                        && crate::projective::lines_meet(
                            &cfg.line(i + 1).line,
                            &cfg.line(j + 1).line,
                        )
                        .unwrap_or(true)
                })
                .fold(0u128, |m, j| m | 1 << j)
        })
        .collect();
    let all: u128 = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let skew: Vec<u128> = meet
        .iter()
        .enumerate()
        .map(|(i, m)| all & !m & !(1u128 << i))
        .collect();

    let mut found = BTreeSet::new();
    let mut stack = Vec::with_capacity(5);
    cliques(&skew, all, 5, &mut stack, &mut |l: &[usize]| {
        let cross = l.iter().fold(all, |acc, &i| acc & share[i]);
        if cross.count_ones() < 5 {
            return;
        }
        let mut inner = Vec::with_capacity(5);
        cliques(&skew, cross, 5, &mut inner, &mut |m: &[usize]| {
            let to_arr = |v: &[usize]| -> [usize; 5] { std::array::from_fn(|k| v[k] + 1) };
            let (x, y) = (to_arr(l), to_arr(m));
            let (l, m) = if x < y { (x, y) } else { (y, x) };
            found.insert(GridLines { l, m });
        });
    });
    found.into_iter().collect()
}

/// Enumerates `k`-cliques inside `allowed` in increasing index order.
fn cliques(
    adj: &[u128],
    allowed: u128,
    k: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if stack.len() == k {
        visit(stack);
        return;
    }
    let mut cand = allowed;
    while cand != 0 {
        let i = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        stack.push(i);
        cliques(adj, cand & adj[i], k, stack, visit);
        stack.pop();
    }
}

/// Runs the full grid verification on each enumerated grid.
pub fn certify_grids(
    cfg: &H4Configuration,
    grids: &[GridLines],
) -> Result<Vec<GridCertificate>, GeprociError> {
    grids.iter().map(|g| verify_grid(cfg, g.l, g.m)).collect()
}
