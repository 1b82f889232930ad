//! Plain-text tables. Lines longer than the width are cut and end in `>`.

use std::collections::BTreeSet;

use filtra_core::chain::ChainComplex;
use filtra_core::graded::GradedObject;
use filtra_core::sequence::Sequence;
use filtra_core::specseq::SpectralSequencePage;

pub const DEFAULT_WIDTH: usize = 100;

fn clip(line: String, width: usize) -> String {
    if line.chars().count() <= width {
        return line;
    }
    let mut cut: String = line.chars().take(width.saturating_sub(1)).collect();
    cut.push('>');
    cut
}

/// Right-aligned columns under a header row.
pub fn table(header: &[String], rows: &[Vec<String>], width: usize) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        clip(parts.join("  ").trim_end().to_string(), width)
    };
    let mut out = line(header);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// `dim (homology)`, or `.` when the space is zero.
fn cell(c: &ChainComplex, k: i64) -> String {
    match c.dim(k) {
        0 => ".".into(),
        n => format!("{n} ({})", c.homology_dim(k)),
    }
}

fn degree_grid<'a>(index: &str, rows: impl Iterator<Item = (i64, &'a ChainComplex)> + Clone, width: usize) -> String {
    let degrees: BTreeSet<i64> = rows.clone().flat_map(|(_, c)| c.dims().keys().copied().collect::<Vec<_>>()).collect();
    if degrees.is_empty() {
        return "zero\n".into();
    }
    let mut header = vec![format!("{index} \\ k")];
    header.extend(degrees.iter().map(|k| k.to_string()));
    let body: Vec<Vec<String>> = rows
        .map(|(n, c)| {
            let mut row = vec![n.to_string()];
            row.extend(degrees.iter().map(|&k| cell(c, k)));
            row
        })
        .collect();
    table(&header, &body, width)
}

pub fn complex(c: &ChainComplex, width: usize) -> String {
    if c.is_zero() {
        return "zero\n".into();
    }
    let header = ["k".to_string(), "dim".into(), "homology".into()];
    let rows: Vec<Vec<String>> =
        c.dims().iter().map(|(&k, &n)| vec![k.to_string(), n.to_string(), c.homology_dim(k).to_string()]).collect();
    table(&header, &rows, width)
}

pub fn sequence(x: &Sequence, width: usize) -> String {
    let (lo, hi) = x.window();
    format!("window ({lo}, {hi}); entries are dim (homology)\n{}", degree_grid("n", (lo..=hi).map(|n| (n, x.level(n))), width))
}

pub fn graded(g: &GradedObject, width: usize) -> String {
    format!("entries are dim (homology)\n{}", degree_grid("n", g.components().iter().map(|(&n, c)| (n, c)), width))
}

/// One grid per page, `q` running down and `p` across; `a->r` marks a cell of
/// dimension `a` whose differential has rank `r > 0`.
pub fn pages(pages: &[SpectralSequencePage], width: usize) -> String {
    let mut out = String::new();
    for page in pages {
        let cells = page.nonzero_cells();
        if cells.is_empty() {
            out.push_str(&format!("E_{}: zero\n", page.r()));
            continue;
        }
        let ps: BTreeSet<i64> = cells.iter().map(|c| c.0).collect();
        let (p_lo, p_hi) = (*ps.first().unwrap(), *ps.last().unwrap());
        let qs: BTreeSet<i64> = cells.iter().map(|c| c.1).collect();
        let (q_lo, q_hi) = (*qs.first().unwrap(), *qs.last().unwrap());
        let mut header = vec![format!("E_{} q\\p", page.r())];
        header.extend((p_lo..=p_hi).map(|p| p.to_string()));
        let rows: Vec<Vec<String>> = (q_lo..=q_hi)
            .rev()
            .map(|q| {
                let mut row = vec![q.to_string()];
                row.extend((p_lo..=p_hi).map(|p| match (page.dim(p, q), page.d_rank(p, q)) {
                    (0, _) => ".".to_string(),
                    (n, 0) => n.to_string(),
                    (n, r) => format!("{n}->{r}"),
                }));
                row
            })
            .collect();
        out.push_str(&table(&header, &rows, width));
    }
    out
}

/// `name: value` lines.
pub fn facts(facts: &[(&str, String)]) -> String {
    facts.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use filtra_core::exactlin::{Field, Matrix};
    use filtra_core::generate::t_adic;
    use filtra_core::specseq::pages as ss_pages;

    #[test]
    fn tables_align_and_clip() {
        let t = table(&["a".into(), "bb".into()], &[vec!["100".into(), "1".into()]], 100);
        assert_eq!(t, "  a  bb\n100   1\n");
        assert_eq!(clip("abcdef".into(), 4), "abc>");
    }

    #[test]
    fn t_adic_page() {
        let x = t_adic(2, Field::Rational).unwrap();
        let text = pages(&ss_pages(&x, 1), DEFAULT_WIDTH);
        assert_eq!(text, "E_1 q\\p  -1  0\n      1   1  .\n      0   .  1\n");
    }

    #[test]
    fn complex_table() {
        let c = ChainComplex::two_term(1, Matrix::from_i64(Field::Rational, 1, 2, &[1, 0]));
        assert_eq!(complex(&c, DEFAULT_WIDTH), "k  dim  homology\n0    1         0\n1    2         1\n");
    }
}
