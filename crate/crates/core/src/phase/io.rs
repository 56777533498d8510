//! Plain-text serialisation of phase matrices.
//!
//! ```text
//! ssp-phase v1 kind=hexssp n=2 M=6 dc=1 seed=7 NR=2 NS=1 scales=1e0 dist=none
//! 1.0000000000000000e0 0.0000000000000000e0
//! ...
//! ```
//!
//! The header is a space-separated list of `key=value` tokens after the
//! magic `ssp-phase v1`; rows follow, one per line, `n` floats with 17
//! significant digits. Metadata floats use shortest round-trip formatting.

use std::fmt::Write as _;

use super::{Construction, PhaseMatrix};
use crate::sampling::RadialDistribution;
use crate::{Error, Result};

const MAGIC: &str = "ssp-phase v1";

pub fn to_text(pm: &PhaseMatrix) -> String {
    let mut out = String::new();
    write!(
        out,
        "{MAGIC} kind={} n={} M={} dc={} seed={}",
        pm.construction.kind_name(),
        pm.n,
        pm.len(),
        u8::from(pm.includes_dc),
        pm.seed
    )
    .expect("write to String");
    match &pm.construction {
        Construction::HexSsp {
            orientations,
            scales,
            dist,
        } => {
            let scales: Vec<String> = scales.iter().map(|s| format!("{s:e}")).collect();
            let dist = dist
                .as_ref()
                .map_or_else(|| "none".to_string(), ToString::to_string);
            write!(
                out,
                " NR={orientations} NS={} scales={} dist={dist}",
                scales.len(),
                scales.join(",")
            )
            .expect("write to String");
        }
        Construction::RandSsp { dist } => write!(out, " dist={dist}").expect("write to String"),
        Construction::Product { per_axis, dist } => {
            write!(out, " per_axis={per_axis} dist={dist}").expect("write to String")
        }
    }
    out.push('\n');
    for row in pm.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Header<'a> {
    fields: Vec<(&'a str, &'a str)>,
}

impl<'a> Header<'a> {
    fn get(&self, key: &str) -> Result<&'a str> {
        self.fields
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| parse_err(format!("header is missing {key}=")))
    }

    fn num<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse()
            .map_err(|_| parse_err(format!("bad value for {key}: {v:?}")))
    }
}

fn parse_dist(token: &str) -> Result<RadialDistribution> {
    token.parse()
}

/// Parses the text format, validating the header against the rows and the
/// phase-matrix invariants.
pub fn from_text(text: &str) -> Result<PhaseMatrix> {
    let mut lines = text.lines();
    let head = lines.next().ok_or_else(|| parse_err("empty input"))?;
    let rest = head
        .strip_prefix(MAGIC)
        .ok_or_else(|| parse_err("missing `ssp-phase v1` header"))?;
    let fields = rest
        .split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| parse_err(format!("bad header token {tok:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let header = Header { fields };

    let n: usize = header.num("n")?;
    let m: usize = header.num("M")?;
    let includes_dc = match header.get("dc")? {
        "0" => false,
        "1" => true,
        other => return Err(parse_err(format!("dc must be 0 or 1, got {other:?}"))),
    };
    let seed: u64 = header.num("seed")?;
    let construction = match header.get("kind")? {
        "hexssp" => {
            let orientations: usize = header.num("NR")?;
            let count: usize = header.num("NS")?;
            let scales = header
                .get("scales")?
                .split(',')
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| parse_err(format!("bad scale {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if scales.len() != count {
                return Err(parse_err(format!(
                    "NS={count} but {} scales listed",
                    scales.len()
                )));
            }
            if m != orientations * count * (n + 1) {
                return Err(parse_err(format!(
                    "HexSSP with NR={orientations}, NS={count}, n={n} must have {} rows, header says {m}",
                    orientations * count * (n + 1)
                )));
            }
            let dist = match header.get("dist")? {
                "none" => None,
                tok => Some(parse_dist(tok)?),
            };
            Construction::HexSsp {
                orientations,
                scales,
                dist,
            }
        }
        "randssp" => Construction::RandSsp {
            dist: parse_dist(header.get("dist")?)?,
        },
        "product" => {
            let per_axis: usize = header.num("per_axis")?;
            if m != per_axis * n {
                return Err(parse_err(format!(
                    "product matrix must have {} rows, header says {m}",
                    per_axis * n
                )));
            }
            Construction::Product {
                per_axis,
                dist: parse_dist(header.get("dist")?)?,
            }
        }
        other => return Err(parse_err(format!("unknown kind {other:?}"))),
    };

    let mut rows = Vec::with_capacity(m * n);
    let mut count = 0;
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let before = rows.len();
        for cell in line.split_whitespace() {
            rows.push(
                cell.parse::<f64>()
                    .map_err(|_| parse_err(format!("row {}: bad number {cell:?}", lineno + 1)))?,
            );
        }
        if rows.len() - before != n {
            return Err(parse_err(format!(
                "row {} has {} values, expected {n}",
                lineno + 1,
                rows.len() - before
            )));
        }
        count += 1;
    }
    if count != m {
        return Err(parse_err(format!(
            "header says M={m} but found {count} rows"
        )));
    }
    PhaseMatrix::new(n, rows, includes_dc, seed, construction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{build_hexssp, build_hexssp_with_scales, build_product_ssp, build_randssp};

    #[test]
    fn header_layout() {
        let pm = build_hexssp_with_scales(2, 2, &[1.0], 7).unwrap();
        let text = to_text(&pm);
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            "ssp-phase v1 kind=hexssp n=2 M=6 dc=1 seed=7 NR=2 NS=1 scales=1e0 dist=none"
        );
        let row = text.lines().nth(1).unwrap();
        assert_eq!(row.split(' ').count(), 2);
        // 17 significant digits: d.dddddddddddddddde±x
        let mantissa = row.split(' ').next().unwrap().split('e').next().unwrap();
        assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);
    }

    #[test]
    fn round_trips_bit_exactly() {
        let u = RadialDistribution::uniform(1.0).unwrap();
        let chi = RadialDistribution::chi(3, 0.7).unwrap();
        let tab = RadialDistribution::tabulated(&[(0.0, 0.0), (0.3, 1.0), (1.1, 0.2)]).unwrap();
        let cases = [
            build_hexssp(3, 4, 3, &u, 11).unwrap(),
            build_hexssp_with_scales(2, 3, &[0.25, 1.0 / 3.0], 5).unwrap(),
            build_randssp(3, 40, &chi, 99).unwrap(),
            build_randssp(2, 10, &tab, 1).unwrap(),
            build_product_ssp(2, 25, &u, u64::MAX).unwrap(),
        ];
        for pm in cases {
            let back = from_text(&to_text(&pm)).unwrap();
            assert_eq!(back, pm);
        }
    }

    #[test]
    fn loader_rejects_inconsistent_input() {
        let pm = build_hexssp_with_scales(2, 1, &[1.0], 0).unwrap();
        let good = to_text(&pm);
        assert!(from_text("").is_err());
        assert!(from_text(&good.replace("ssp-phase v1", "ssp-phase v2")).is_err());
        assert!(from_text(&good.replace("M=3", "M=4")).is_err());
        assert!(from_text(&good.replace("NS=1", "NS=2")).is_err());
        assert!(from_text(&good.replace("dc=1", "dc=2")).is_err());
        assert!(from_text(&good.replace("kind=hexssp", "kind=weird")).is_err());
        let mut lines: Vec<&str> = good.lines().collect();
        lines.pop();
        assert!(from_text(&lines.join("\n")).is_err());
        let zero_row = format!("{}\n0 0\n1 0\n0 1\n", good.lines().next().unwrap());
        assert!(matches!(from_text(&zero_row), Err(Error::Domain(_))));
        let short_row = format!("{}\n1\n1 0\n0 1\n", good.lines().next().unwrap());
        assert!(from_text(&short_row).is_err());
    }
}
