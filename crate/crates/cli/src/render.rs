//! Artifact rendering. All output is deterministic for a fixed input.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use lambdakit::{ExtChart, Result};

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub command: String,
    pub config_hash: String,
    pub version: String,
}

impl Metadata {
    pub fn new(command: &str, config_hash: String) -> Self {
        Metadata { command: command.into(), config_hash, version: env!("CARGO_PKG_VERSION").into() }
    }
}

/// A result payload with metadata in front.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub metadata: &'a Metadata,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn json<T: Serialize>(metadata: &Metadata, body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Document { metadata, body }).expect("documents serialize");
    s.push('\n');
    s
}

/// Columns `s,t,stem,dim,basis`; basis labels joined with `; `.
pub fn ext_csv(chart: &ExtChart) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| lambdakit::Error::Invalid(e.to_string());
    w.write_record(["s", "t", "stem", "dim", "basis"]).map_err(io)?;
    for e in &chart.entries {
        w.write_record([
            e.s.to_string(),
            e.t.to_string(),
            (e.t as i64 - e.s as i64).to_string(),
            e.dim.to_string(),
            e.basis.join("; "),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| lambdakit::Error::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Adams-style chart: stem `t - s` across, `s` up, one dot per nonzero
/// entry labelled with its dimension when above one.
pub fn ext_svg(chart: &ExtChart) -> String {
    const CELL: i64 = 40;
    const MARGIN: i64 = 40;
    let max_stem = chart.entries.iter().map(|e| e.t as i64 - e.s as i64).max().unwrap_or(0).max(1);
    let max_s = chart.entries.iter().map(|e| e.s as i64).max().unwrap_or(0).max(1);
    let width = 2 * MARGIN + CELL * max_stem;
    let height = 2 * MARGIN + CELL * max_s;
    let x = |stem: i64| MARGIN + CELL * stem;
    let y = |s: i64| height - MARGIN - CELL * s;
    let w_desc: Vec<String> = chart.w.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(out, "<title>Ext p={} W={{{}}} {}</title>", chart.p, escape(&w_desc.join(",")), chart.flavor.name());
    let _ = writeln!(out, r##"<g stroke="#ddd">"##);
    for stem in 0..=max_stem {
        let _ = writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, x(stem), y(0), y(max_s));
    }
    for s in 0..=max_s {
        let _ = writeln!(out, r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#, y(s), x(0), x(max_stem));
    }
    let _ = writeln!(out, "</g>");
    for stem in 0..=max_stem {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{stem}</text>"#, x(stem), y(0) + 16);
    }
    for s in 0..=max_s {
        let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{s}</text>"#, x(0) - 8, y(s) + 4);
    }
    // entries sharing a position are impossible (stem and s determine t)
    let mut dots: BTreeMap<(i64, i64), (usize, &[String])> = BTreeMap::new();
    for e in &chart.entries {
        dots.insert((e.t as i64 - e.s as i64, e.s as i64), (e.dim, &e.basis));
    }
    for ((stem, s), (dim, basis)) in dots {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="4" fill="black"><title>{}</title></circle>"#,
            x(stem),
            y(s),
            escape(&basis.join(", "))
        );
        if dim > 1 {
            let _ = writeln!(out, r#"<text x="{}" y="{}">{dim}</text>"#, x(stem) + 6, y(s) - 6);
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lambdakit::{ExtEntry, Flavor};

    fn chart() -> ExtChart {
        ExtChart {
            p: 2,
            w: [(1, 1)].into(),
            flavor: Flavor::Hat,
            entries: vec![
                ExtEntry { s: 0, t: 1, dim: 1, basis: vec!["ι1".into()] },
                ExtEntry { s: 1, t: 3, dim: 2, basis: vec!["a".into(), "b".into()] },
            ],
        }
    }

    #[test]
    fn csv_columns() {
        let text = ext_csv(&chart()).unwrap();
        assert_eq!(text, "s,t,stem,dim,basis\n0,1,1,1,ι1\n1,3,2,2,a; b\n");
    }

    #[test]
    fn svg_has_one_dot_per_entry() {
        let svg = ext_svg(&chart());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains(">2</text>"));
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn json_puts_metadata_first() {
        let m = Metadata::new("ext chart", "abc".into());
        let text = json(&m, &chart());
        assert!(text.find("metadata").unwrap() < text.find("\"W\"").unwrap());
        assert!(text.contains("\"flavor\": \"hat\""));
    }
}
