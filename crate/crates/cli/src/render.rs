//! Plain-text table rendering.

use surjtop_core::IntMatrix;

/// Left-aligned columns separated by two spaces.
pub fn aligned_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let ncols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
    for row in rows {
        debug_assert_eq!(row.len(), ncols);
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let push_row = |cells: &[String], out: &mut String| {
        let line = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pad = widths[i].saturating_sub(c.chars().count());
                format!("{c}{}", " ".repeat(pad))
            })
            .collect::<Vec<_>>()
            .join("  ");
        out.push_str(line.trim_end());
        out.push('\n');
    };
    push_row(headers, &mut out);
    for row in rows {
        push_row(row, &mut out);
    }
    out
}

/// One `[ a b … ]` line per matrix row, indented; `[]` for empty shapes.
pub fn matrix_block(m: &IntMatrix, indent: &str) -> String {
    if m.rows() == 0 {
        return format!("{indent}[] ({}x{})\n", m.rows(), m.cols());
    }
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells = m.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&format!("{indent}[ {cells} ]\n"));
    }
    out
}

/// Compact one-line form: rows separated by `;`.
pub fn matrix_inline(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}
