//! Exact Euclidean distance transform (Felzenszwalb–Huttenlocher lower
//! envelope of parabolas, separable over rows and columns).

use super::{NodeSet, ScalarField};

/// Distance from every node to the nearest node of {u ≤ threshold}.
///
/// The result carries no mask. If the set is empty every node receives the
/// box diagonal, an upper bound for any in-grid distance.
pub fn distance_to_zero_set(u: &ScalarField, threshold: f64) -> ScalarField {
    let grid = *u.grid();
    let set = NodeSet::new(grid, u.values().iter().map(|&v| v <= threshold).collect())
        .expect("same grid");
    let dist = distance_to_set(&set);
    ScalarField::unmasked_from_fn(grid, |_, _| 0.0)
        .with_values(dist)
        .expect("finite distances")
}

/// Distance from every node to the nearest node of `set`.
pub fn distance_to_set(set: &NodeSet) -> Vec<f64> {
    let grid = *set.grid();
    let m = grid.m();
    if set.count() == 0 {
        return vec![2.0 * std::f64::consts::SQRT_2 * grid.half_width(); grid.len()];
    }
    let big = 1e30;
    let mut sq: Vec<f64> = set
        .values()
        .iter()
        .map(|&s| if s { 0.0 } else { big })
        .collect();
    let mut line = vec![0.0; m];
    let mut out = vec![0.0; m];
    for i in 0..m {
        for j in 0..m {
            line[j] = sq[grid.index(i, j)];
        }
        envelope(&line, &mut out);
        for j in 0..m {
            sq[grid.index(i, j)] = out[j];
        }
    }
    for j in 0..m {
        line.copy_from_slice(&sq[j * m..(j + 1) * m]);
        envelope(&line, &mut out);
        sq[j * m..(j + 1) * m].copy_from_slice(&out);
    }
    sq.into_iter().map(|d| d.sqrt() * grid.h()).collect()
}

/// Squared-distance transform of a 1-D sampled function.
fn envelope(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0.0f64; n + 1];
    let mut k = 0usize;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    let intersect = |q: usize, p: usize| {
        ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64))
    };
    for q in 1..n {
        let mut s = intersect(q, v[k]);
        while s <= z[k] {
            k -= 1;
            s = intersect(q, v[k]);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let d = q as f64 - v[k] as f64;
        *o = d * d + f[v[k]];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid;

    #[test]
    fn matches_brute_force() {
        let g = Grid::new(1.0, 33).unwrap();
        let set = NodeSet::from_fn(g, |x, y| (x - 0.3).powi(2) + y * y < 0.01 || x + y > 1.2);
        let fast = distance_to_set(&set);
        let members: Vec<usize> = (0..g.len()).filter(|&i| set.contains(i)).collect();
        for idx in 0..g.len() {
            let [x, y] = g.point(idx);
            let brute = members
                .iter()
                .map(|&s| {
                    let [a, b] = g.point(s);
                    (x - a).hypot(y - b)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(
                (fast[idx] - brute).abs() < 1e-12,
                "{idx}: {} vs {brute}",
                fast[idx]
            );
        }
    }

    #[test]
    fn disk_center_distance() {
        let g = Grid::new(1.0, 129).unwrap();
        let u = ScalarField::from_fn(g, |x, y| if x * x + y * y < 0.36 { 1.0 } else { 0.0 });
        let d = distance_to_zero_set(&u, 0.0);
        let center = d.values()[g.index(64, 64)];
        assert!((center - 0.6).abs() < 2.0 * g.h());
    }

    #[test]
    fn idempotent_on_induced_set() {
        let g = Grid::new(1.0, 65).unwrap();
        let u = ScalarField::from_fn(g, |x, y| 0.5 - x.abs() - 0.3 * y);
        let d1 = distance_to_zero_set(&u, 0.0);
        let d2 = distance_to_zero_set(&d1, 0.0);
        assert_eq!(d1.values(), d2.values());
    }
}
