//! Number formatting for text reports.

use num_format::{Locale, ToFormattedString};

/// `v` rounded to a whole number with thousands separators.
pub fn whole(v: f64) -> String {
    if !v.is_finite() {
        return "n/a".into();
    }
    let r = v.round();
    if r.abs() >= 9.0e18 {
        return format!("{v:e}");
    }
    let s = (r.abs() as i64).to_formatted_string(&Locale::en);
    if r < 0.0 {
        format!("-{s}")
    } else {
        s
    }
}

/// Whole numbers for magnitudes of 1,000 and up, otherwise up to six decimals.
pub fn human(v: f64) -> String {
    if !v.is_finite() {
        return "n/a".into();
    }
    if v.abs() >= 1000.0 || v == v.round() {
        return whole(v);
    }
    let s = format!("{v:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `0.00154` -> `0.154%`.
pub fn percent(fraction: f64) -> String {
    if !fraction.is_finite() {
        return "n/a".into();
    }
    format!("{:.3}%", fraction * 100.0)
}

/// Left-aligned plain-text table with a dashed rule under the header.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separators_and_rounding() {
        assert_eq!(whole(968_476_030.2), "968,476,030");
        assert_eq!(whole(-1234.5), "-1,235");
        assert_eq!(whole(f64::NAN), "n/a");
        assert_eq!(human(0.3354), "0.3354");
        assert_eq!(human(2.0), "2");
        assert_eq!(human(47_475_469.2), "47,475,469");
        assert_eq!(percent(0.00154), "0.154%");
    }

    #[test]
    fn table_aligns_columns() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y\n");
    }
}
