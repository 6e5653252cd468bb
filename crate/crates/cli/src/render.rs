//! Plain-text tables and summand lists.

use ncomplex::{AHTable, SummandMultiset};

pub const ACYCLIC: &str = "acyclic (projective/injective)";

/// Amplitudes as rows, degrees `lo..=hi` as columns, `.` for zero.
pub fn ah_table(table: &AHTable, degrees: (i64, i64)) -> String {
    if table.is_empty() {
        return format!("{ACYCLIC}\n");
    }
    let (lo, hi) = degrees;
    let mut rows: Vec<Vec<String>> = vec![std::iter::once("a\\i".to_string())
        .chain((lo..=hi).map(|i| i.to_string()))
        .collect()];
    for a in 1..table.order() {
        rows.push(
            std::iter::once(a.to_string())
                .chain((lo..=hi).map(|i| match table.get(i, a) {
                    0 => ".".to_string(),
                    n => n.to_string(),
                }))
                .collect(),
        );
    }
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// One `M[i]^l x n` line per summand, or `0` for the empty multiset.
pub fn summand_lines(ms: &SummandMultiset) -> String {
    if ms.is_empty() {
        return "0\n".to_string();
    }
    ms.to_string()
}

/// The summands on a single comma-separated line.
pub fn summand_inline(ms: &SummandMultiset) -> String {
    if ms.is_empty() {
        return "0".to_string();
    }
    ms.iter().map(|(m, n)| format!("{m} x {n}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncomplex::Indec;

    #[test]
    fn table_layout() {
        let mut t = AHTable::new(3);
        t.set(0, 2, 1).unwrap();
        t.set(1, 1, 1).unwrap();
        assert_eq!(ah_table(&t, (0, 1)), "a\\i   0   1\n  1   .   1\n  2   1   .\n");
        assert_eq!(ah_table(&AHTable::new(3), (0, 1)), format!("{ACYCLIC}\n"));
    }

    #[test]
    fn summand_formats() {
        let ms: SummandMultiset = [(Indec::new(0, 2), 1), (Indec::new(1, 0), 1)].into_iter().collect();
        assert_eq!(summand_inline(&ms), "M[0]^2 x 1, M[1]^0 x 1");
        assert_eq!(summand_lines(&ms), "M[0]^2 x 1\nM[1]^0 x 1\n");
        assert_eq!(summand_lines(&SummandMultiset::new()), "0\n");
    }
}
