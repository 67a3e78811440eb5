//! Number and matrix formatting.

/// `x` in scientific notation with `digits` significant digits.
pub fn num(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), x)
}

/// Right-aligned columns separated by two spaces.
pub fn matrix_text(rows: &[Vec<f64>], digits: usize) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| num(x, digits)).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

/// Row-major CSV without a header.
pub fn matrix_csv(rows: &[Vec<f64>], digits: usize) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| num(x, digits)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
