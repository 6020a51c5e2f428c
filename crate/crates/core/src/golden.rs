//! Golden files: canonical exact-string serializations of the explicit
//! operator values, displayed series, and measure tables.
//!
//! Each golden has a recompute function; `verify` regenerates the content
//! and byte-compares it against the copy embedded at build time. The unit
//! test in this module compares against the files on disk instead and can
//! refresh them when run with `UPDATE_GOLDEN=1`.

use crate::emit::{
    self, named_matrices_json, named_measure_rows, named_measures_json, NamedMatrix,
};
use crate::error::Error;
use crate::measures::{classical_arcsine, sojourn_measure_a, sojourn_measure_b};
use crate::theorems::{first_return_amplitudes, theorem1_series, theorem2_series};
use crate::walk::{QubitState, SojournTable};

pub const GOLDEN_NAMES: [&str; 10] = [
    "psi_two_step",
    "psi_four_step",
    "gamma_small",
    "theorem1_z8",
    "theorem2_z10",
    "measures_free",
    "measures_bridge",
    "classical_arcsine",
    "first_return",
    "uniform_4n",
];

/// The content committed with the sources, embedded at build time.
pub fn embedded(name: &str) -> Option<&'static str> {
    Some(match name {
        "psi_two_step" => include_str!("../goldens/psi_two_step.json"),
        "psi_four_step" => include_str!("../goldens/psi_four_step.json"),
        "gamma_small" => include_str!("../goldens/gamma_small.json"),
        "theorem1_z8" => include_str!("../goldens/theorem1_z8.json"),
        "theorem2_z10" => include_str!("../goldens/theorem2_z10.json"),
        "measures_free" => include_str!("../goldens/measures_free.json"),
        "measures_bridge" => include_str!("../goldens/measures_bridge.json"),
        "classical_arcsine" => include_str!("../goldens/classical_arcsine.json"),
        "first_return" => include_str!("../goldens/first_return.json"),
        "uniform_4n" => include_str!("../goldens/uniform_4n.json"),
        _ => return None,
    })
}

/// Regenerate the canonical content of a golden from scratch.
pub fn recompute(name: &str) -> Result<String, Error> {
    match name {
        "psi_two_step" => {
            let mut rows = Vec::new();
            for start in [0i64, 1] {
                let table = SojournTable::evolve(start, 2);
                for k in 0..=2 {
                    rows.push(NamedMatrix {
                        name: format!("psi^{start}_2({k})"),
                        matrix: emit::matrix_strings(&table.psi(2, k)),
                    });
                }
            }
            Ok(named_matrices_json("two-step path sums", rows))
        }
        "psi_four_step" => {
            let table = SojournTable::evolve(0, 4);
            let rows = (0..=4)
                .map(|k| NamedMatrix {
                    name: format!("psi^0_4({k})"),
                    matrix: emit::matrix_strings(&table.psi(4, k)),
                })
                .collect();
            Ok(named_matrices_json("four-step path sums from the origin", rows))
        }
        "gamma_small" => {
            let table = SojournTable::evolve(0, 4);
            let mut rows = Vec::new();
            for n in [2u32, 4] {
                for k in (0..=n).step_by(2) {
                    rows.push(NamedMatrix {
                        name: format!("gamma_{n}({k})"),
                        matrix: emit::matrix_strings(&table.gamma(n, k)),
                    });
                }
            }
            Ok(named_matrices_json("small bridge operators", rows))
        }
        "theorem1_z8" => Ok(emit::theorem1_json(&theorem1_series(8)?)),
        "theorem2_z10" => Ok(emit::theorem2_json(&theorem2_series(10)?)),
        "measures_free" => {
            let phi = QubitState::symmetric();
            let mut rows = Vec::new();
            for n in (2..=8u32).step_by(2) {
                rows.extend(named_measure_rows("free-walk", &sojourn_measure_a(n, &phi)?));
            }
            Ok(named_measures_json("free-walk sojourn measures", rows))
        }
        "measures_bridge" => {
            let phi = QubitState::symmetric();
            let mut rows = Vec::new();
            for n in (2..=14u32).step_by(2) {
                rows.extend(named_measure_rows("bridge", &sojourn_measure_b(n, &phi)?));
            }
            Ok(named_measures_json("bridge sojourn measures", rows))
        }
        "classical_arcsine" => {
            let mut rows = Vec::new();
            for n in (2..=8u32).step_by(2) {
                rows.extend(named_measure_rows("classical-arcsine", &classical_arcsine(n)?));
            }
            Ok(named_measures_json("discrete arc-sine measures", rows))
        }
        "first_return" => Ok(emit::first_return_json(&first_return_amplitudes(15)?)),
        "uniform_4n" => {
            let phi = QubitState::symmetric();
            let mut rows = Vec::new();
            for n in 1..=5u32 {
                rows.extend(named_measure_rows("bridge", &sojourn_measure_b(4 * n, &phi)?));
            }
            Ok(named_measures_json("bridge measures at multiples of four", rows))
        }
        other => Err(Error::InvalidParameter(format!("unknown golden: {other}"))),
    }
}
