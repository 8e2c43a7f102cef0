//! Text tables and the structured (JSON) rendering of results.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use torprod::exactalg::{CoefficientRing, Matrix};
use torprod::facering::format_sum;
use torprod::torcohomology::{Bidegree, BidegreeSummary, CohomologyClass, TorTable};

use crate::document::InputDocument;

fn group(ring: CoefficientRing, s: &BidegreeSummary) -> String {
    let base = ring.symbol();
    let mut parts = Vec::new();
    match s.free_rank {
        0 => {}
        1 => parts.push(base.clone()),
        r => parts.push(format!("{base}^{r}")),
    }
    let mut torsion: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for t in &s.torsion {
        *torsion.entry(t).or_default() += 1;
    }
    for (t, m) in torsion {
        parts.push(if m == 1 { format!("Z/{t}") } else { format!("(Z/{t})^{m}") });
    }
    parts.join("+")
}

/// The bidegree grid: internal degrees as rows from the top down,
/// exterior degrees as columns, `(-k, 2j)` at column `-k`, row `2j`.
pub fn tor_grid(table: &TorTable) -> String {
    let grid = table.bidegrees();
    if grid.is_empty() {
        return "0\n".to_string();
    }
    let kmax = grid.keys().map(|b| -b.0).max().unwrap_or(0);
    let top = grid.keys().map(|b| b.1).max().unwrap_or(0);
    let cols: Vec<i64> = (-kmax..=0).collect();
    let rows: Vec<usize> = (0..=top).rev().filter(|d| d % 2 == 0).collect();
    let cell = |b: Bidegree| grid.get(&b).map(|s| group(table.ring(), s)).unwrap_or_default();
    let widths: Vec<usize> = cols
        .iter()
        .map(|&c| rows.iter().map(|&r| cell((c, r)).chars().count()).chain([c.to_string().len()]).max().unwrap_or(1))
        .collect();
    let label = rows.iter().map(|r| r.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for &r in &rows {
        let line: Vec<String> = cols.iter().zip(&widths).map(|(&c, &w)| pad(&cell((c, r)), w)).collect();
        let _ = writeln!(out, "{} | {r:>label$}", line.join("  "));
    }
    let body: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
    let _ = writeln!(out, "{}-+-{}", "-".repeat(body), "-".repeat(label));
    let foot: Vec<String> = cols.iter().zip(&widths).map(|(&c, &w)| pad(&c.to_string(), w)).collect();
    let _ = writeln!(out, "{}", foot.join("  ").trim_end());
    out
}

fn pad(s: &str, w: usize) -> String {
    format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())))
}

/// One line per total degree with its free rank and torsion.
pub fn degree_summary(table: &TorTable) -> String {
    let mut out = String::new();
    for d in 0..=table.max_total_degree() {
        let gens = table.generators(d);
        let rank = gens.iter().filter(|g| g.order == BigInt::from(0)).count();
        let mut torsion: Vec<String> =
            gens.iter().filter(|g| g.order != BigInt::from(0)).map(|g| format!("Z/{}", g.order)).collect();
        torsion.sort();
        let _ = write!(out, "degree {d}: rank {rank}");
        if !torsion.is_empty() {
            let _ = write!(out, ", torsion {}", torsion.join(" + "));
        }
        out.push('\n');
    }
    out
}

pub fn generator_label(d: usize, i: usize) -> String {
    format!("g{d}_{}", i + 1)
}

/// `g2_1 - g2_2` style rendering of a class.
pub fn class(c: &CohomologyClass) -> String {
    format_sum(
        c.coords
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != BigRational::from_integer(0.into()))
            .map(|(i, x)| (x, generator_label(c.degree, i))),
    )
}

pub fn generator_list(table: &TorTable) -> String {
    let mut out = String::new();
    for d in table.degrees() {
        for (i, g) in table.generators(d).iter().enumerate() {
            let order = if g.order == BigInt::from(0) { String::new() } else { format!(" order {}", g.order) };
            let _ = writeln!(
                out,
                "{} ({}, {}){order}: {}",
                generator_label(d, i),
                g.bidegree.0,
                g.bidegree.1,
                table.complex().format(&g.representative)
            );
        }
    }
    out
}

pub fn matrix(m: &Matrix<BigRational>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("  ({}x{} zero matrix)\n", m.rows(), m.cols());
    }
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|s| format!("{s:>w$}")).collect();
        let _ = writeln!(out, "  [{}]", line.join(" "));
    }
    out
}

#[derive(Serialize)]
pub struct BidegreeRow {
    pub homological: i64,
    pub internal: usize,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Serialize)]
pub struct GeneratorRow {
    pub label: String,
    pub homological: i64,
    pub internal: usize,
    pub multidegree: Vec<u32>,
    pub order: String,
    pub representative: String,
}

#[derive(Serialize)]
pub struct TorReport {
    pub input: InputDocument,
    pub coefficients: String,
    pub max_total_degree: usize,
    pub bidegrees: Vec<BidegreeRow>,
    pub generators: Vec<GeneratorRow>,
}

pub fn structured(input: InputDocument, table: &TorTable) -> String {
    let bidegrees = table
        .bidegrees()
        .into_iter()
        .map(|(b, s)| BidegreeRow {
            homological: b.0,
            internal: b.1,
            free_rank: s.free_rank,
            torsion: s.torsion.iter().map(|t| t.to_string()).collect(),
        })
        .collect();
    let mut generators = Vec::new();
    for d in table.degrees() {
        for (i, g) in table.generators(d).iter().enumerate() {
            generators.push(GeneratorRow {
                label: generator_label(d, i),
                homological: g.bidegree.0,
                internal: g.bidegree.1,
                multidegree: g.multidegree.clone(),
                order: g.order.to_string(),
                representative: table.complex().format(&g.representative),
            });
        }
    }
    let report = TorReport {
        input,
        coefficients: table.ring().symbol(),
        max_total_degree: table.max_total_degree(),
        bidegrees,
        generators,
    };
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use torprod::catalog;

    #[test]
    fn example_grid_layout() {
        let t = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals, None);
        let expected = "\
Q          | 6
Q   Q^2    | 4
    Q^2  Q | 2
         Q | 0
-----------+--
-2  -1   0
";
        assert_eq!(tor_grid(&t), expected);
    }
}
