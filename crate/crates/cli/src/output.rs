//! Artifact formats. Every artifact starts with the tool name, version, seed
//! and full parameter set, and contains nothing else that varies between
//! runs, so identical inputs give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use kpaths_core::Complex64;
use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "kpaths";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance shared by every artifact of one run.
#[derive(Debug, Clone)]
pub struct Meta {
    pub command: &'static str,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl Meta {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Self {
            command,
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// `tool=kpaths version=.. command=.. seed=.. k=v ...` with keys sorted.
    pub fn header(&self) -> String {
        let mut s = format!(
            "tool={TOOL} version={VERSION} command={} seed={}",
            self.command, self.seed
        );
        for (k, v) in &self.params {
            write!(s, " {k}={v}").unwrap();
        }
        s
    }

    fn json_params(&self) -> BTreeMap<String, Value> {
        self.params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect()
    }
}

/// One JSON result object.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub statistic: String,
    pub family: String,
    pub p: Option<u64>,
    pub parameters: BTreeMap<String, Value>,
    pub value: Value,
    pub error_estimate: Option<f64>,
    pub seed: u64,
    pub tool: &'static str,
    pub version: &'static str,
}

impl Record {
    pub fn new(meta: &Meta, statistic: &str, family: &str, p: Option<u64>, value: Value) -> Self {
        Self {
            statistic: statistic.to_string(),
            family: family.to_string(),
            p,
            parameters: meta.json_params(),
            value,
            error_estimate: None,
            seed: meta.seed,
            tool: TOOL,
            version: VERSION,
        }
    }

    pub fn with_error(mut self, error: f64) -> Self {
        self.error_estimate = Some(error);
        self
    }
}

pub fn complex_value(z: Complex64) -> Value {
    serde_json::json!({ "re": z.re, "im": z.im })
}

/// A single record is written as an object, several as an array.
pub fn json(records: &[Record]) -> Vec<u8> {
    let mut out = match records {
        [one] => serde_json::to_vec_pretty(one),
        many => serde_json::to_vec_pretty(many),
    }
    .expect("records serialize");
    out.push(b'\n');
    out
}

/// CSV with `#` comment lines carrying the provenance header.
pub fn csv<R, I>(meta: &Meta, columns: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut out = format!("# {}\n", meta.header()).into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(columns).expect("in-memory write");
        for row in rows {
            w.write_record(row).expect("in-memory write");
        }
        w.flush().expect("in-memory write");
    }
    out
}

/// Path rows `(index, t, re, im)` for vertices at `t = index / segments`.
pub fn path_csv(meta: &Meta, ts: &[f64], vertices: &[Complex64]) -> Vec<u8> {
    let rows = ts
        .iter()
        .zip(vertices)
        .enumerate()
        .map(|(i, (t, z))| [i.to_string(), num(*t), num(z.re), num(z.im)]);
    csv(meta, &["index", "t", "re", "im"], rows)
}

/// Shortest round-trip decimal, with `-0` folded into `0`.
pub fn num(x: f64) -> String {
    format!("{}", x + 0.0)
}

/// One polyline through the vertices. The complex plane is drawn with the
/// imaginary axis pointing up by mapping `(re, im)` to SVG `(re, -im)`.
pub fn svg(meta: &Meta, vertices: &[Complex64]) -> Vec<u8> {
    let pts: Vec<(f64, f64)> = vertices.iter().map(|z| (z.re, -z.im)).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let w = if x1 > x0 { x1 - x0 } else { span };
    let h = if y1 > y0 { y1 - y0 } else { span };
    let (mx, my) = (0.05 * w, 0.05 * h);
    let (vx, vy, vw, vh) = (x0 - mx, y0 - my, w + 2.0 * mx, h + 2.0 * my);
    let px_w = 800.0;
    let px_h = (px_w * vh / vw).round().clamp(50.0, 4000.0);

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(px_w),
        num(px_h),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    )
    .unwrap();
    writeln!(s, "<!-- {} -->", comment_safe(&meta.header())).unwrap();
    s.push_str("<!-- transform: svg (x, y) = (re, -im) -->\n");
    s.push_str("<polyline fill=\"none\" stroke=\"black\" stroke-linejoin=\"round\" ");
    writeln!(s, "stroke-width=\"{}\" points=\"", num(0.002 * vw.max(vh))).unwrap();
    for (x, y) in &pts {
        writeln!(s, "{},{}", num(*x), num(*y)).unwrap();
    }
    s.push_str("\"/>\n</svg>\n");
    s.into_bytes()
}

fn comment_safe(s: &str) -> String {
    let mut out = s.replace("--", "- -");
    if out.ends_with('-') {
        out.push(' ');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> Meta {
        Meta::new("path", 7).with("p", 5).with("family", "birch")
    }

    #[test]
    fn header_is_sorted_and_complete() {
        assert_eq!(
            meta().header(),
            format!("tool=kpaths version={VERSION} command=path seed=7 family=birch p=5")
        );
    }

    #[test]
    fn csv_has_comment_then_columns() {
        let bytes = path_csv(
            &meta(),
            &[0.0, 1.0],
            &[Complex64::new(0.0, -0.0), Complex64::new(1.5, -2.0)],
        );
        let text = String::from_utf8(bytes).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# tool=kpaths"));
        assert_eq!(&lines[1..], ["index,t,re,im", "0,0,0,0", "1,1,1.5,-2"]);
    }

    #[test]
    fn svg_flips_y_and_keeps_exact_coordinates() {
        let z = Complex64::new(0.1 + 0.2, 1.0 / 3.0);
        let text = String::from_utf8(svg(&meta(), &[Complex64::new(0.0, 0.0), z])).unwrap();
        assert!(text.contains(&format!("{},{}", z.re, -z.im)));
        assert!(text.contains("transform"));
    }

    #[test]
    fn degenerate_svg_has_positive_viewbox() {
        let text = String::from_utf8(svg(&meta(), &[Complex64::new(0.0, 0.0)])).unwrap();
        assert!(!text.contains("viewBox=\"0 0 0 0\""));
    }
}
