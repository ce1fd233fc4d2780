//! Brute-force oracles that evaluate the defining sup/inf sets directly.
//!
//! These deliberately share no code with the library: every quantity is
//! recomputed from its definition by exhaustive scanning, so they can serve
//! as an independent reference for the incremental implementations.

/// `out[t] = max { v[s] : s <= t }`, each prefix scanned from scratch.
pub fn brute_running_max(values: &[f64]) -> Vec<f64> {
    (0..values.len())
        .map(|t| {
            values[..=t]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect()
}

/// `G[t] = max { s <= t : v[s] = max_{u<=s} v[u] }`.
pub fn brute_peak_time(values: &[f64]) -> Vec<usize> {
    let runmax = brute_running_max(values);
    (0..values.len())
        .map(|t| {
            (0..=t)
                .filter(|&s| values[s] == runmax[s])
                .max()
                .expect("index 0 is always a peak")
        })
        .collect()
}

pub fn brute_duration(values: &[f64]) -> Vec<usize> {
    brute_peak_time(values)
        .iter()
        .enumerate()
        .map(|(t, &g)| t - g)
        .collect()
}

/// `max over pairs s <= t of v[s] - v[t]` (zero included via s = t).
pub fn brute_max_drawdown(values: &[f64]) -> f64 {
    let mut best = 0.0;
    for t in 0..values.len() {
        for s in 0..=t {
            let drop = values[s] - values[t];
            if drop > best {
                best = drop;
            }
        }
    }
    best
}

pub fn brute_max_duration(values: &[f64]) -> usize {
    brute_duration(values).into_iter().max().unwrap_or(0)
}

#[derive(Debug, PartialEq)]
pub struct BruteEpisode {
    pub peak: usize,
    pub bottom: usize,
    pub recovery: Option<usize>,
    pub duration: usize,
    pub censored: bool,
    pub magnitude: f64,
}

/// Direct evaluation of the episode definitions; `None` when the path has no
/// drawdown.
pub fn brute_episode(values: &[f64]) -> Option<BruteEpisode> {
    let runmax = brute_running_max(values);
    let dd: Vec<f64> = values.iter().zip(&runmax).map(|(v, m)| m - v).collect();
    let magnitude = dd.iter().copied().fold(0.0, f64::max);
    if magnitude == 0.0 {
        return None;
    }
    let bottom = (0..values.len())
        .find(|&t| dd[t] == magnitude)
        .expect("magnitude is attained");
    let peak = (0..=bottom)
        .filter(|&s| values[s] == runmax[s])
        .max()
        .expect("index 0 is always a peak");
    let recovery = (bottom..values.len()).find(|&s| values[s] == runmax[s]);
    let (duration, censored) = match recovery {
        Some(r) => (r - peak, false),
        None => (values.len() - 1 - peak, true),
    };
    Some(BruteEpisode {
        peak,
        bottom,
        recovery,
        duration,
        censored,
        magnitude,
    })
}

/// `min { t : duration[t] >= threshold }`.
pub fn brute_liquidation_stopping_time(values: &[f64], threshold: usize) -> Option<usize> {
    brute_duration(values)
        .into_iter()
        .position(|d| d >= threshold)
}

/// Enumerates every path with steps in {-1, 0, +1} and at most `max_steps`
/// steps, invoking `visit` with the cumulative values (starting at 0).
pub fn for_each_step_path(max_steps: usize, mut visit: impl FnMut(&[f64])) {
    let mut path = vec![0.0f64];
    visit(&path);
    for steps in 1..=max_steps {
        let mut digits = vec![0u8; steps];
        loop {
            path.clear();
            path.push(0.0);
            let mut acc = 0.0;
            for &d in &digits {
                acc += f64::from(d as i8 - 1);
                path.push(acc);
            }
            visit(&path);

            // increment base-3 counter
            let mut i = 0;
            loop {
                if i == steps {
                    break;
                }
                digits[i] += 1;
                if digits[i] < 3 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == steps {
                break;
            }
        }
    }
}
