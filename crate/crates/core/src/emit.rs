//! Exact-string serialization: JSON documents (`{"meta": ..., "rows": ...}`)
//! and CSV tables. Every number is rendered through the canonical scalar
//! format of [`Qr2`] (`a/b` or `a/b + c/d*sqrt(2)`) and parses back to the
//! identical value; nothing is ever a float.

use serde::Serialize;

use crate::error::Error;
use crate::mat2::Mat2;
use crate::measures::SojournMeasure;
use crate::qr2::Qr2;
use crate::series::BiSeries;
use crate::theorems::{FirstReturnAmplitudes, Theorem1Series, Theorem2Series};
use crate::walk::{QubitState, SojournTable};

#[derive(Serialize)]
struct Document<M: Serialize, R: Serialize> {
    meta: M,
    rows: Vec<R>,
}

fn to_pretty_json<M: Serialize, R: Serialize>(doc: &Document<M, R>) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("serializable document");
    out.push('\n');
    out
}

pub fn matrix_strings(m: &Mat2) -> [[String; 2]; 2] {
    let e = m.rows();
    [
        [e[0][0].to_string(), e[0][1].to_string()],
        [e[1][0].to_string(), e[1][1].to_string()],
    ]
}

pub fn state_strings(phi: &QubitState) -> [String; 4] {
    [
        phi.alpha().re.to_string(),
        phi.alpha().im.to_string(),
        phi.beta().re.to_string(),
        phi.beta().im.to_string(),
    ]
}

/// The coefficient of `z^z_power` as a polynomial in `t`: terms
/// `(scalar)*t^k` joined by " + ", with the scalar in canonical form. The
/// parentheses keep the string unambiguous even when the scalar itself
/// contains a plus sign.
pub fn t_polynomial_string(series: &BiSeries, z_power: usize) -> String {
    let mut terms = Vec::new();
    for j in 0..=series.trunc_t() {
        let c = series.coeff(z_power, j);
        if c.is_zero() {
            continue;
        }
        if j == 0 {
            terms.push(format!("({c})"));
        } else {
            terms.push(format!("({c})*t^{j}"));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[derive(Serialize)]
struct DpMeta {
    subcommand: &'static str,
    start: i64,
    n_max: u32,
}

#[derive(Serialize)]
struct DpRow {
    n: u32,
    y: i64,
    k: u32,
    matrix: [[String; 2]; 2],
}

/// The full table as JSON rows, one per nonzero entry.
pub fn dp_json(table: &SojournTable) -> String {
    let mut rows = Vec::new();
    for n in 0..=table.n_max() {
        for y in table.positions(n) {
            for k in 0..=n {
                let m = table.entry(n, y, k);
                if !m.is_zero() {
                    rows.push(DpRow { n, y, k, matrix: matrix_strings(&m) });
                }
            }
        }
    }
    to_pretty_json(&Document {
        meta: DpMeta { subcommand: "dp", start: table.start(), n_max: table.n_max() },
        rows,
    })
}

#[derive(Serialize)]
struct ExpandMeta {
    subcommand: &'static str,
    theorem: u8,
    order: usize,
}

#[derive(Serialize)]
struct Theorem1Row {
    n: usize,
    p: String,
    q: String,
    r: String,
    s: String,
}

pub fn theorem1_json(series: &Theorem1Series) -> String {
    let rows = (2..=series.order())
        .step_by(2)
        .map(|n| Theorem1Row {
            n,
            p: t_polynomial_string(&series.p_bar, n),
            q: t_polynomial_string(&series.q_bar, n),
            r: t_polynomial_string(&series.r_bar, n),
            s: t_polynomial_string(&series.s_bar, n),
        })
        .collect();
    to_pretty_json(&Document {
        meta: ExpandMeta { subcommand: "expand", theorem: 1, order: series.order() },
        rows,
    })
}

#[derive(Serialize)]
struct Theorem2Row {
    n: usize,
    matrix: [[String; 2]; 2],
}

pub fn theorem2_json(series: &Theorem2Series) -> String {
    let rows = (2..=series.order())
        .step_by(2)
        .map(|n| Theorem2Row {
            n,
            matrix: [
                [
                    t_polynomial_string(series.entry(0, 0), n),
                    t_polynomial_string(series.entry(0, 1), n),
                ],
                [
                    t_polynomial_string(series.entry(1, 0), n),
                    t_polynomial_string(series.entry(1, 1), n),
                ],
            ],
        })
        .collect();
    to_pretty_json(&Document {
        meta: ExpandMeta { subcommand: "expand", theorem: 2, order: series.order() },
        rows,
    })
}

#[derive(Serialize)]
struct MeasureMeta {
    subcommand: &'static str,
    kind: String,
    n: u32,
    state: Option<[String; 4]>,
}

#[derive(Serialize)]
struct MeasureRow {
    k: u32,
    weight: String,
    probability: String,
}

fn measure_rows(measure: &SojournMeasure) -> Vec<MeasureRow> {
    measure
        .weights()
        .map(|(k, w)| MeasureRow {
            k,
            weight: w.to_string(),
            probability: measure
                .probability(k)
                .map_or_else(|| "undefined".to_string(), |p| p.to_string()),
        })
        .collect()
}

pub fn measure_json(kind: &str, measure: &SojournMeasure, state: Option<&QubitState>) -> String {
    to_pretty_json(&Document {
        meta: MeasureMeta {
            subcommand: "measure",
            kind: kind.to_string(),
            n: measure.time(),
            state: state.map(state_strings),
        },
        rows: measure_rows(measure),
    })
}

/// CSV with the exact-string columns `k, weight, probability`.
pub fn measure_csv(measure: &SojournMeasure) -> String {
    let mut out = String::from("k,weight,probability\n");
    for row in measure_rows(measure) {
        out.push_str(&format!("{},{},{}\n", row.k, row.weight, row.probability));
    }
    out
}

#[derive(Serialize)]
struct FirstReturnMeta {
    subcommand: &'static str,
    n_max: u32,
}

#[derive(Serialize)]
struct FirstReturnRow {
    n: u32,
    a: String,
}

pub fn first_return_json(amps: &FirstReturnAmplitudes) -> String {
    let rows = amps
        .amplitudes()
        .map(|(n, a)| FirstReturnRow { n, a: a.to_string() })
        .collect();
    to_pretty_json(&Document {
        meta: FirstReturnMeta { subcommand: "first-return", n_max: amps.n_max() },
        rows,
    })
}

/// Generic named-matrix document used by the golden files for explicit
/// operator values.
#[derive(Serialize)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: [[String; 2]; 2],
}

pub fn named_matrices_json(title: &str, entries: Vec<NamedMatrix>) -> String {
    #[derive(Serialize)]
    struct Meta<'a> {
        document: &'a str,
    }
    to_pretty_json(&Document { meta: Meta { document: title }, rows: entries })
}

/// Named measure table used by the golden files: weights and probabilities
/// for a family of horizons.
#[derive(Serialize)]
pub struct NamedMeasureRow {
    pub name: String,
    pub n: u32,
    pub k: u32,
    pub weight: String,
    pub probability: String,
}

pub fn named_measures_json(title: &str, rows: Vec<NamedMeasureRow>) -> String {
    #[derive(Serialize)]
    struct Meta<'a> {
        document: &'a str,
    }
    to_pretty_json(&Document { meta: Meta { document: title }, rows })
}

pub fn named_measure_rows(name: &str, measure: &SojournMeasure) -> Vec<NamedMeasureRow> {
    measure
        .weights()
        .map(|(k, w)| NamedMeasureRow {
            name: name.to_string(),
            n: measure.time(),
            k,
            weight: w.to_string(),
            probability: measure
                .probability(k)
                .map_or_else(|| "undefined".to_string(), |p| p.to_string()),
        })
        .collect()
}

/// Parse back an emitted scalar; used by round-trip checks and the CLI.
pub fn parse_scalar(s: &str) -> Result<Qr2, Error> {
    s.parse()
}

/// Parse a state given as four comma-separated exact scalars
/// `a_re,a_im,b_re,b_im`; the unit-norm check applies.
pub fn parse_state(raw: &str) -> Result<QubitState, Error> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidParameter(format!(
            "state must have four comma-separated components, got {}",
            parts.len()
        )));
    }
    let scalars: Vec<Qr2> = parts
        .iter()
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()?;
    let [ar, ai, br, bi]: [Qr2; 4] = scalars.try_into().expect("length checked");
    QubitState::new(
        crate::qr2::ComplexQr2::new(ar, ai),
        crate::qr2::ComplexQr2::new(br, bi),
    )
}
