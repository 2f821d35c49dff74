//! Least-squares slopes and dyadic-block medians for the trend checks.

use serde::Serialize;

/// (slope, intercept) of the least-squares line through (x, y).
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    let n = xs.len();
    if n < 2 || ys.len() != n {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Block {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub median_x: f64,
    pub median: f64,
}

/// Blocks [start 2^k, start 2^{k+1}) in x, each with the medians of x and y.
pub fn dyadic_medians(points: &[(f64, f64)], start: f64) -> Vec<Block> {
    let mut out = Vec::new();
    let Some(xmax) = points.iter().map(|p| p.0).max_by(f64::total_cmp) else {
        return out;
    };
    let mut lo = start;
    while lo <= xmax {
        let hi = 2.0 * lo;
        let (mut xs, mut ys): (Vec<f64>, Vec<f64>) = points
            .iter()
            .filter(|p| p.0 >= lo && p.0 < hi)
            .cloned()
            .unzip();
        if let (Some(mx), Some(my)) = (median(&mut xs), median(&mut ys)) {
            out.push(Block {
                lo,
                hi,
                count: xs.len(),
                median_x: mx,
                median: my,
            });
        }
        lo = hi;
    }
    out
}

/// Slope of log(median) against log(median_x) across blocks.
pub fn block_log_slope(blocks: &[Block]) -> Option<f64> {
    let xs: Vec<f64> = blocks.iter().map(|b| b.median_x.ln()).collect();
    let ys: Vec<f64> = blocks.iter().map(|b| b.median.ln()).collect();
    least_squares(&xs, &ys).map(|f| f.0)
}

pub fn strictly_decreasing(blocks: &[Block]) -> bool {
    blocks.windows(2).all(|w| w[1].median < w[0].median)
}
