/// Closest fraction `p/q` with `q ≤ max_den` via continued fractions, if it
/// is within `tol` of `x`.
pub fn fraction(x: f64, max_den: u64, tol: f64) -> Option<(i64, u64)> {
    let sign = if x < 0.0 { -1 } else { 1 };
    let target = x.abs();
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut rest = target;
    for _ in 0..64 {
        let a = rest.floor();
        let (h2, k2) = (a as i64 * h1 + h0, a as u64 * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64 / k1 as f64) - target).abs() <= tol {
            return Some((sign * h1, k1));
        }
        let frac = rest - a;
        if frac < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    None
}

/// `p/q` when `x` is (numerically) a small-denominator fraction, else decimal.
pub fn pretty(x: f64) -> String {
    match fraction(x, 10_000, 1e-10) {
        Some((0, _)) => "0".into(),
        Some((p, 1)) => p.to_string(),
        Some((p, q)) => format!("{p}/{q}"),
        None => format!("{x:.6}"),
    }
}

/// Left-aligned first column, right-aligned rest.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| {
                if i == 0 {
                    format!("{cell:<w$}", w = width[i])
                } else {
                    format!("{cell:>w$}", w = width[i])
                }
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
