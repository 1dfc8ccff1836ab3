use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::{image_coords, preimage_bound};
use crate::arith::{Field, Rational};
use crate::ball::{count_ball_interval, enumerate_coords, Coords, HeightBall, Window};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityPoint {
    #[serde(rename = "R")]
    pub r: i64,
    pub num: u128,
    pub den: u128,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    pub points: Vec<DensityPoint>,
    pub slope: Option<f64>,
    pub target_exponent: f64,
}

impl DensityReport {
    pub const CSV_HEADER: &'static str = "field,d,R,num,den,delta";

    pub fn csv_rows(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|p| {
                format!(
                    "{},{},{},{},{},{}",
                    self.field,
                    self.d.map(|d| d.to_string()).unwrap_or_default(),
                    p.r,
                    p.num,
                    p.den,
                    p.delta
                )
            })
            .collect()
    }
}

/// Distinct images `f(beta)`, `beta ∈ B_K(S(R)) ∩ [-2, 2]`, of height at most `r`,
/// in sorted order.
pub fn numerator_coords(field: Field, r: i64, shards: usize) -> Vec<Coords> {
    let s = preimage_bound(field, &Rational::from_int(r)).to_i64().expect("small bound");
    let d = field.radicand().unwrap_or(0);
    let w = Window::symmetric(2);
    let pre = enumerate_coords(field, s, Some(&w), shards);
    let chunk = pre.len().div_ceil(shards.max(1)).max(1);
    let sets: Vec<BTreeSet<Coords>> = pre
        .par_chunks(chunk)
        .map(|part| {
            part.iter()
                .filter_map(|c| {
                    let (a1, a2, b) = image_coords(c, d);
                    let img = Coords { b: b as i64, a1: a1 as i64, a2: a2 as i64 };
                    (img.height() <= r).then_some(img)
                })
                .collect()
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    all.into_iter().collect()
}

/// Unweighted least-squares slope of `ln y` against `ln x`; needs at least 3 points.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// `delta_K(R)` for each radius: images of the preimage ball over the exact count of
/// `B_K(R) ∩ [-2, 2]`.
pub fn density_experiment(field: Field, radii: &[i64], shards: usize, cap: u128) -> Result<DensityReport> {
    let w = Window::symmetric(2);
    let mut points = Vec::new();
    for &r in radii {
        if r < 1 {
            return Err(Error::BadParameters(format!("radius {r} must be positive")));
        }
        let s = preimage_bound(field, &Rational::from_int(r)).to_i64().unwrap_or(i64::MAX);
        let pre = crate::ball::count_ball(&HeightBall::with_int(field, s));
        if pre > cap {
            return Err(Error::CapExceeded { needed: pre, cap });
        }
        let num = numerator_coords(field, r, shards).len() as u128;
        let den = count_ball_interval(field, r, &w, shards);
        points.push(DensityPoint { r, num, den, delta: num as f64 / den as f64 });
    }
    let slope = fit_slope(&points.iter().map(|p| (p.r as f64, p.delta)).collect::<Vec<_>>());
    Ok(DensityReport {
        field: field.name(),
        d: field.radicand(),
        points,
        slope,
        target_exponent: -2.0 * (field.degree() as f64 + 1.0) / 3.0,
    })
}
