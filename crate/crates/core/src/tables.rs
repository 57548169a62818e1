//! Reference incidence tables, transcribed verbatim.
//!
//! These are the expected outputs the computed configuration is checked
//! against; nothing in the construction reads them.

/// Row `i` lists the points lying on plane `V_{i+1}`.
pub const PLANE_POINTS: [[u8; 15]; 60] = [
    [2, 3, 4, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24],
    [1, 3, 4, 25, 26, 27, 28, 29, 30, 31, 32, 33, 34, 35, 36],
    [1, 2, 4, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48],
    [1, 2, 3, 49, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60],
    [8, 10, 11, 15, 20, 22, 26, 32, 35, 39, 44, 46, 50, 56, 59],
    [7, 9, 12, 16, 19, 21, 25, 31, 36, 40, 43, 45, 50, 56, 59],
    [6, 9, 12, 13, 18, 24, 28, 30, 33, 39, 44, 46, 49, 55, 60],
    [5, 10, 11, 14, 17, 23, 27, 29, 34, 40, 43, 45, 49, 55, 60],
    [6, 7, 12, 14, 17, 23, 26, 32, 35, 37, 42, 48, 52, 54, 57],
    [5, 8, 11, 13, 18, 24, 25, 31, 36, 38, 41, 47, 52, 54, 57],
    [5, 8, 10, 16, 19, 21, 28, 30, 33, 37, 42, 48, 51, 53, 58],
    [6, 7, 9, 15, 20, 22, 27, 29, 34, 38, 41, 47, 51, 53, 58],
    [1, 7, 10, 20, 23, 26, 27, 42, 43, 46, 47, 54, 55, 58, 59],
    [1, 8, 9, 19, 24, 25, 28, 41, 44, 45, 48, 54, 55, 58, 59],
    [1, 5, 12, 18, 21, 25, 28, 42, 43, 46, 47, 53, 56, 57, 60],
    [1, 6, 11, 17, 22, 26, 27, 41, 44, 45, 48, 53, 56, 57, 60],
    [1, 8, 9, 16, 22, 30, 31, 34, 35, 42, 43, 46, 47, 50, 51],
    [1, 7, 10, 15, 21, 29, 32, 33, 36, 41, 44, 45, 48, 50, 51],
    [1, 6, 11, 14, 24, 29, 32, 33, 36, 42, 43, 46, 47, 49, 52],
    [1, 5, 12, 13, 23, 30, 31, 34, 35, 41, 44, 45, 48, 49, 52],
    [1, 6, 11, 15, 18, 30, 31, 34, 35, 38, 39, 54, 55, 58, 59],
    [1, 5, 12, 16, 17, 29, 32, 33, 36, 37, 40, 54, 55, 58, 59],
    [1, 8, 9, 13, 20, 29, 32, 33, 36, 38, 39, 53, 56, 57, 60],
    [1, 7, 10, 14, 19, 30, 31, 34, 35, 37, 40, 53, 56, 57, 60],
    [2, 6, 10, 14, 15, 32, 34, 38, 40, 42, 44, 50, 52, 58, 60],
    [2, 5, 9, 13, 16, 31, 33, 37, 39, 41, 43, 50, 52, 58, 60],
    [2, 8, 12, 13, 16, 30, 36, 38, 40, 42, 44, 49, 51, 57, 59],
    [2, 7, 11, 14, 15, 29, 35, 37, 39, 41, 43, 49, 51, 57, 59],
    [2, 8, 12, 18, 19, 22, 23, 28, 35, 46, 48, 50, 52, 58, 60],
    [2, 7, 11, 17, 20, 21, 24, 27, 36, 45, 47, 50, 52, 58, 60],
    [2, 6, 10, 17, 20, 21, 24, 26, 33, 46, 48, 49, 51, 57, 59],
    [2, 5, 9, 18, 19, 22, 23, 25, 34, 45, 47, 49, 51, 57, 59],
    [2, 7, 11, 18, 19, 22, 23, 26, 31, 38, 40, 42, 44, 54, 56],
    [2, 8, 12, 17, 20, 21, 24, 25, 32, 37, 39, 41, 43, 54, 56],
    [2, 5, 9, 17, 20, 21, 24, 28, 29, 38, 40, 42, 44, 53, 55],
    [2, 6, 10, 18, 19, 22, 23, 27, 30, 37, 39, 41, 43, 53, 55],
    [3, 9, 11, 22, 24, 26, 28, 34, 36, 44, 47, 51, 52, 55, 56],
    [3, 10, 12, 21, 23, 25, 27, 33, 35, 43, 48, 51, 52, 55, 56],
    [3, 5, 7, 21, 23, 26, 28, 34, 36, 42, 45, 49, 50, 53, 54],
    [3, 6, 8, 22, 24, 25, 27, 33, 35, 41, 46, 49, 50, 53, 54],
    [3, 10, 12, 14, 16, 18, 20, 26, 28, 34, 36, 40, 46, 59, 60],
    [3, 9, 11, 13, 15, 17, 19, 25, 27, 33, 35, 39, 45, 59, 60],
    [3, 6, 8, 13, 15, 17, 19, 26, 28, 34, 36, 38, 48, 57, 58],
    [3, 5, 7, 14, 16, 18, 20, 25, 27, 33, 35, 37, 47, 57, 58],
    [3, 6, 8, 14, 16, 18, 20, 30, 32, 39, 42, 51, 52, 55, 56],
    [3, 5, 7, 13, 15, 17, 19, 29, 31, 40, 41, 51, 52, 55, 56],
    [3, 10, 12, 13, 15, 17, 19, 30, 32, 37, 44, 49, 50, 53, 54],
    [3, 9, 11, 14, 16, 18, 20, 29, 31, 38, 43, 49, 50, 53, 54],
    [4, 7, 8, 19, 20, 27, 28, 31, 32, 39, 40, 47, 48, 56, 58],
    [4, 5, 6, 17, 18, 25, 26, 29, 30, 39, 40, 47, 48, 55, 57],
    [4, 11, 12, 17, 18, 27, 28, 31, 32, 37, 38, 45, 46, 54, 60],
    [4, 9, 10, 19, 20, 25, 26, 29, 30, 37, 38, 45, 46, 53, 59],
    [4, 11, 12, 15, 16, 23, 24, 35, 36, 39, 40, 47, 48, 52, 59],
    [4, 9, 10, 13, 14, 21, 22, 33, 34, 39, 40, 47, 48, 51, 60],
    [4, 7, 8, 13, 14, 21, 22, 35, 36, 37, 38, 45, 46, 50, 57],
    [4, 5, 6, 15, 16, 23, 24, 33, 34, 37, 38, 45, 46, 49, 58],
    [4, 9, 10, 15, 16, 23, 24, 27, 28, 31, 32, 43, 44, 50, 55],
    [4, 11, 12, 13, 14, 21, 22, 25, 26, 29, 30, 43, 44, 49, 56],
    [4, 5, 6, 13, 14, 21, 22, 27, 28, 31, 32, 41, 42, 52, 53],
    [4, 7, 8, 15, 16, 23, 24, 25, 26, 29, 30, 41, 42, 51, 54],
];

/// Row `i` lists the five points on line `ℓ_{i+1}`.
pub const LINE_POINTS: [[u8; 5]; 72] = [
    [1, 29, 32, 33, 36],
    [1, 30, 31, 34, 35],
    [1, 41, 44, 45, 48],
    [1, 42, 43, 46, 47],
    [1, 53, 56, 57, 60],
    [1, 54, 55, 58, 59],
    [2, 17, 20, 21, 24],
    [2, 18, 19, 22, 23],
    [2, 37, 39, 41, 43],
    [2, 38, 40, 42, 44],
    [2, 49, 51, 57, 59],
    [2, 50, 52, 58, 60],
    [3, 13, 15, 17, 19],
    [3, 14, 16, 18, 20],
    [3, 25, 27, 33, 35],
    [3, 26, 28, 34, 36],
    [3, 49, 50, 53, 54],
    [3, 51, 52, 55, 56],
    [4, 13, 14, 21, 22],
    [4, 15, 16, 23, 24],
    [4, 25, 26, 29, 30],
    [4, 27, 28, 31, 32],
    [4, 37, 38, 45, 46],
    [4, 39, 40, 47, 48],
    [5, 13, 31, 41, 52],
    [5, 16, 33, 37, 58],
    [5, 17, 29, 40, 55],
    [5, 18, 25, 47, 57],
    [5, 21, 28, 42, 53],
    [5, 23, 34, 45, 49],
    [6, 14, 32, 42, 52],
    [6, 15, 34, 38, 58],
    [6, 17, 26, 48, 57],
    [6, 18, 30, 39, 55],
    [6, 22, 27, 41, 53],
    [6, 24, 33, 46, 49],
    [7, 14, 35, 37, 57],
    [7, 15, 29, 41, 51],
    [7, 19, 31, 40, 56],
    [7, 20, 27, 47, 58],
    [7, 21, 36, 45, 50],
    [7, 23, 26, 42, 54],
    [8, 13, 36, 38, 57],
    [8, 16, 30, 42, 51],
    [8, 19, 28, 48, 58],
    [8, 20, 32, 39, 56],
    [8, 22, 35, 46, 50],
    [8, 24, 25, 41, 54],
    [9, 13, 33, 39, 60],
    [9, 16, 31, 43, 50],
    [9, 19, 25, 45, 59],
    [9, 20, 29, 38, 53],
    [9, 22, 34, 47, 51],
    [9, 24, 28, 44, 55],
    [10, 14, 34, 40, 60],
    [10, 15, 32, 44, 50],
    [10, 19, 30, 37, 53],
    [10, 20, 26, 46, 59],
    [10, 21, 33, 48, 51],
    [10, 23, 27, 43, 55],
    [11, 14, 29, 43, 49],
    [11, 15, 35, 39, 59],
    [11, 17, 27, 45, 60],
    [11, 18, 31, 38, 54],
    [11, 22, 26, 44, 56],
    [11, 24, 36, 47, 52],
    [12, 13, 30, 44, 49],
    [12, 16, 36, 40, 59],
    [12, 17, 32, 37, 54],
    [12, 18, 28, 46, 60],
    [12, 21, 25, 43, 56],
    [12, 23, 35, 48, 52],
];

/// The 84 ways to partition the 60 points by 12 disjoint five-point lines, in printed order.
pub const COVERINGS: [[u8; 12]; 84] = [
    [1, 7, 17, 24, 25, 32, 37, 44, 51, 60, 65, 70],
    [1, 7, 18, 23, 28, 35, 42, 45, 50, 55, 62, 67],
    [1, 8, 17, 23, 25, 33, 40, 44, 54, 55, 62, 71],
    [1, 8, 17, 24, 25, 32, 37, 44, 54, 58, 63, 71],
    [1, 8, 18, 23, 29, 33, 40, 48, 50, 55, 62, 67],
    [1, 8, 18, 24, 29, 32, 37, 48, 50, 58, 63, 67],
    [1, 9, 17, 19, 28, 32, 39, 44, 54, 58, 63, 72],
    [1, 9, 18, 20, 29, 33, 40, 47, 51, 55, 64, 67],
    [1, 10, 17, 20, 25, 34, 37, 45, 53, 58, 63, 71],
    [1, 10, 18, 19, 30, 33, 40, 48, 50, 57, 62, 70],
    [1, 11, 13, 23, 29, 34, 40, 48, 50, 55, 65, 72],
    [1, 11, 14, 24, 25, 32, 42, 47, 54, 57, 63, 71],
    [1, 12, 13, 24, 30, 35, 37, 44, 54, 58, 64, 71],
    [1, 12, 14, 23, 29, 33, 39, 48, 53, 60, 62, 67],
    [2, 7, 17, 23, 28, 31, 38, 45, 49, 60, 65, 68],
    [2, 7, 17, 24, 26, 31, 38, 43, 51, 60, 65, 70],
    [2, 7, 18, 23, 28, 35, 42, 45, 49, 56, 61, 68],
    [2, 7, 18, 24, 26, 35, 42, 43, 51, 56, 61, 70],
    [2, 8, 17, 24, 26, 31, 38, 43, 54, 58, 63, 71],
    [2, 8, 18, 23, 29, 33, 40, 48, 49, 56, 61, 68],
    [2, 9, 17, 20, 27, 31, 40, 43, 51, 59, 65, 70],
    [2, 9, 18, 19, 28, 36, 42, 45, 52, 56, 63, 68],
    [2, 10, 17, 19, 26, 33, 38, 46, 51, 60, 66, 70],
    [2, 10, 18, 20, 28, 35, 41, 45, 49, 58, 61, 69],
    [2, 11, 13, 24, 26, 31, 41, 48, 52, 60, 65, 70],
    [2, 11, 14, 23, 27, 35, 42, 45, 49, 56, 66, 71],
    [2, 12, 13, 23, 28, 35, 42, 46, 54, 59, 61, 68],
    [2, 12, 14, 24, 29, 36, 38, 43, 51, 60, 65, 69],
    [3, 7, 17, 21, 26, 31, 39, 43, 53, 60, 62, 70],
    [3, 7, 18, 22, 28, 32, 42, 47, 49, 57, 61, 68],
    [3, 8, 17, 22, 27, 32, 37, 44, 49, 58, 66, 71],
    [3, 8, 18, 21, 29, 36, 40, 43, 50, 55, 62, 69],
    [3, 11, 13, 22, 26, 34, 42, 47, 52, 55, 66, 71],
    [3, 11, 14, 21, 29, 32, 39, 47, 49, 60, 66, 69],
    [3, 11, 14, 22, 27, 32, 42, 47, 49, 57, 66, 71],
    [3, 11, 15, 19, 27, 32, 42, 46, 50, 57, 66, 70],
    [3, 11, 16, 20, 27, 31, 40, 47, 49, 57, 64, 71],
    [3, 12, 13, 21, 29, 36, 37, 46, 53, 60, 64, 68],
    [3, 12, 14, 21, 29, 36, 39, 43, 53, 60, 62, 69],
    [3, 12, 14, 22, 27, 36, 42, 43, 53, 57, 62, 71],
    [3, 12, 15, 20, 29, 34, 39, 43, 53, 58, 61, 69],
    [3, 12, 16, 19, 28, 36, 39, 44, 52, 60, 62, 69],
    [4, 7, 17, 22, 26, 34, 38, 43, 51, 55, 65, 72],
    [4, 7, 18, 21, 30, 35, 37, 45, 49, 56, 64, 68],
    [4, 8, 17, 21, 25, 32, 37, 46, 54, 59, 63, 68],
    [4, 8, 18, 22, 26, 33, 41, 48, 52, 55, 62, 67],
    [4, 11, 13, 21, 26, 35, 41, 46, 54, 55, 64, 72],
    [4, 11, 13, 22, 26, 34, 41, 48, 52, 55, 65, 72],
    [4, 11, 14, 22, 27, 32, 41, 48, 49, 57, 65, 72],
    [4, 11, 15, 20, 25, 34, 41, 45, 52, 55, 65, 69],
    [4, 11, 16, 19, 26, 34, 39, 48, 52, 56, 63, 72],
    [4, 12, 13, 21, 30, 35, 37, 46, 54, 59, 64, 68],
    [4, 12, 13, 22, 30, 34, 37, 48, 52, 59, 65, 68],
    [4, 12, 14, 21, 30, 35, 39, 43, 54, 59, 62, 69],
    [4, 12, 15, 19, 30, 33, 38, 46, 54, 57, 64, 68],
    [4, 12, 16, 20, 27, 35, 37, 46, 51, 59, 64, 67],
    [5, 7, 15, 23, 25, 34, 42, 45, 53, 56, 61, 68],
    [5, 7, 16, 24, 26, 31, 38, 47, 51, 60, 64, 67],
    [5, 8, 15, 24, 25, 32, 41, 44, 54, 58, 61, 69],
    [5, 8, 16, 23, 27, 31, 40, 48, 50, 59, 62, 67],
    [5, 9, 13, 21, 30, 31, 40, 47, 54, 59, 64, 68],
    [5, 9, 14, 22, 27, 32, 42, 47, 51, 59, 66, 67],
    [5, 9, 15, 20, 27, 31, 41, 45, 53, 58, 64, 67],
    [5, 9, 16, 19, 27, 36, 40, 44, 51, 56, 64, 72],
    [5, 9, 16, 20, 27, 31, 40, 47, 51, 59, 64, 67],
    [5, 10, 13, 22, 26, 34, 41, 48, 53, 58, 61, 72],
    [5, 10, 14, 21, 25, 36, 41, 45, 53, 60, 62, 69],
    [5, 10, 15, 19, 30, 34, 38, 45, 50, 58, 66, 69],
    [5, 10, 15, 20, 25, 34, 41, 45, 53, 58, 61, 69],
    [5, 10, 16, 20, 25, 34, 40, 47, 51, 59, 61, 69],
    [6, 7, 15, 24, 30, 31, 38, 43, 50, 57, 65, 70],
    [6, 7, 16, 23, 28, 35, 39, 44, 49, 56, 61, 72],
    [6, 8, 15, 23, 29, 33, 38, 46, 50, 55, 66, 67],
    [6, 8, 16, 24, 25, 36, 37, 44, 52, 56, 63, 71],
    [6, 9, 13, 22, 28, 36, 41, 44, 52, 55, 65, 72],
    [6, 9, 14, 21, 29, 36, 39, 43, 53, 56, 63, 72],
    [6, 9, 15, 19, 30, 33, 39, 44, 52, 56, 66, 70],
    [6, 9, 16, 19, 28, 36, 39, 44, 52, 56, 63, 72],
    [6, 9, 16, 20, 28, 31, 39, 47, 52, 59, 63, 67],
    [6, 10, 13, 21, 30, 35, 37, 46, 50, 59, 66, 70],
    [6, 10, 14, 22, 30, 33, 38, 47, 49, 57, 66, 71],
    [6, 10, 15, 19, 30, 33, 38, 46, 50, 57, 66, 70],
    [6, 10, 15, 20, 25, 33, 41, 46, 53, 57, 61, 70],
    [6, 10, 16, 19, 28, 36, 38, 46, 50, 57, 63, 72],
];

/// Renders rows as `{prefix}_{i}: a, b, c` lines, numbered from 1.
pub fn format_indexed(prefix: &str, rows: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for (i, r) in rows.iter().enumerate() {
        let items: Vec<String> = r.iter().map(usize::to_string).collect();
        s.push_str(&format!("{prefix}_{}: {}\n", i + 1, items.join(", ")));
    }
    s
}

/// Renders rows as bare comma-separated lists.
pub fn format_plain(rows: &[Vec<usize>]) -> String {
    let mut s = String::new();
    for r in rows {
        let items: Vec<String> = r.iter().map(usize::to_string).collect();
        s.push_str(&items.join(", "));
        s.push('\n');
    }
    s
}

/// Parses the output of [`format_indexed`] or [`format_plain`]. A leading
/// `label:` on a line is skipped; blank lines are ignored.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<usize>>, String> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = match line.split_once(':') {
            Some((_, rest)) => rest,
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<usize>, _> =
            body.split(',').map(|t| t.trim().parse::<usize>()).collect();
        rows.push(row.map_err(|e| format!("line {}: {e}", n + 1))?);
    }
    Ok(rows)
}

pub fn to_rows<const N: usize>(table: &[[u8; N]]) -> Vec<Vec<usize>> {
    table
        .iter()
        .map(|r| r.iter().map(|&x| usize::from(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let rows = to_rows(&LINE_POINTS);
        let text = format_indexed("ℓ", &rows);
        assert!(text.starts_with("ℓ_1: 1, 29, 32, 33, 36\n"));
        assert_eq!(parse_rows(&text).unwrap(), rows);
        let plain = format_plain(&to_rows(&COVERINGS));
        assert_eq!(parse_rows(&plain).unwrap(), to_rows(&COVERINGS));
        assert!(parse_rows("V_1: 1, x").is_err());
    }
}
