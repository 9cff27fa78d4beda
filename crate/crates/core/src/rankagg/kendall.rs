use std::collections::HashMap;

use crate::error::{Error, Result};

fn positions(order: &[usize]) -> HashMap<usize, usize> {
    order.iter().enumerate().map(|(i, &x)| (x, i)).collect()
}

/// `Σ w(x,y) s(x,y) / Σ w(x,y)` over unordered pairs, where `s = ±1` for
/// concordant/discordant and `w(x,y) = 1/(i+1) + 1/(j+1)` with `i, j` the
/// (0-based) positions of `x, y` in `reference`.
fn weighted_from(reference: &[usize], other: &HashMap<usize, usize>) -> f64 {
    let n = reference.len();
    let (mut signed, mut total) = (0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let w = 1.0 / (i + 1) as f64 + 1.0 / (j + 1) as f64;
            total += w;
            if other[&reference[i]] < other[&reference[j]] {
                signed += w;
            } else {
                signed -= w;
            }
        }
    }
    signed / total
}

/// Kendall rank correlation of two orderings of the same items, in `[-1, 1]`.
///
/// The unweighted form is `(concordant − discordant) / (n choose 2)`. The
/// weighted form weights each pair additively-hyperbolically by its
/// positions and normalizes by the total weight (the weighted discordance
/// of a full reversal). Pair positions are taken in each argument in turn
/// and the two values averaged, so `τ(a, b) = τ(b, a)`.
pub fn kendall_tau(order: &[usize], truth: &[usize], weighted: bool) -> Result<f64> {
    let pos_order = positions(order);
    let pos_truth = positions(truth);
    if order.len() != truth.len()
        || pos_order.len() != order.len()
        || pos_truth.len() != truth.len()
        || !pos_order.keys().all(|k| pos_truth.contains_key(k))
    {
        return Err(Error::ElementMismatch);
    }
    let n = order.len();
    if n < 2 {
        return Ok(1.0);
    }
    if weighted {
        return Ok(0.5 * (weighted_from(truth, &pos_order) + weighted_from(order, &pos_truth)));
    }
    let mut balance: i64 = 0;
    for i in 0..n {
        for j in i + 1..n {
            if pos_order[&truth[i]] < pos_order[&truth[j]] {
                balance += 1;
            } else {
                balance -= 1;
            }
        }
    }
    Ok(balance as f64 / (n * (n - 1) / 2) as f64)
}
