//! Browser entry points. Each exported function has a plain Rust twin in
//! [`ops`] so the numbers can be checked natively.

use wasm_bindgen::prelude::*;

pub mod ops {
    use qgame::error::{Error, Result};
    use qgame::game::closed_form_per_site;
    use qgame::haar::{haar_entropy_statistics, HaarInitial};
    use qgame::qudit::ergotropy_sweep;

    pub const MAX_CURVE_NB: u32 = 40;
    pub const MAX_HAAR_SAMPLES: usize = 20_000;

    /// Energy per site for `m = 0..=nb` Bell-paired ancillas.
    pub fn closed_form_curve(nb: u32) -> Result<Vec<f64>> {
        if !(1..=MAX_CURVE_NB).contains(&nb) {
            return Err(Error::Guard(format!("N_B must be in 1..={MAX_CURVE_NB}, got {nb}")));
        }
        Ok((0..=nb).map(|m| closed_form_per_site(nb, m)).collect())
    }

    /// Rows `[p2, single_site, oracle_per_site, printed_formula]`, flattened.
    pub fn sweep(p0: f64, p2_max: f64, e1: f64, e2: f64, points: usize) -> Result<Vec<f64>> {
        if points > 1000 {
            return Err(Error::Guard(format!("at most 1000 sweep points, got {points}")));
        }
        let rows = ergotropy_sweep(p0, 0.0, p2_max, points, e1, e2)?;
        Ok(rows.iter().flat_map(|r| [r.p2, r.single_site, r.oracle_per_site, r.formula.selected()]).collect())
    }

    /// `[mean, std, max, count_0, …, count_{bins-1}]` with bins spanning
    /// `[0, ⌊n/2⌋]` bits.
    pub fn haar_histogram(n: usize, samples: usize, seed: u64, bins: usize) -> Result<Vec<f64>> {
        if samples < 2 || samples > MAX_HAAR_SAMPLES || bins == 0 {
            return Err(Error::Guard(format!("need 2..={MAX_HAAR_SAMPLES} samples and at least one bin")));
        }
        let report = haar_entropy_statistics(n, samples, seed, HaarInitial::Zero)?;
        let top = (n / 2) as f64;
        let mut counts = vec![0.0; bins];
        for e in &report.entropies {
            let b = ((e / top) * bins as f64) as usize;
            counts[b.min(bins - 1)] += 1.0;
        }
        let mut out = vec![report.mean, report.std, report.max];
        out.extend(counts);
        Ok(out)
    }
}

#[wasm_bindgen(js_name = closedFormCurve)]
pub fn closed_form_curve(nb: u32) -> Result<Vec<f64>, JsError> {
    Ok(ops::closed_form_curve(nb)?)
}

#[wasm_bindgen(js_name = ergotropySweep)]
pub fn ergotropy_sweep(p0: f64, p2_max: f64, e1: f64, e2: f64, points: usize) -> Result<Vec<f64>, JsError> {
    Ok(ops::sweep(p0, p2_max, e1, e2, points)?)
}

#[wasm_bindgen(js_name = haarHistogram)]
pub fn haar_histogram(n: usize, samples: usize, seed: u64, bins: usize) -> Result<Vec<f64>, JsError> {
    Ok(ops::haar_histogram(n, samples, seed, bins)?)
}
