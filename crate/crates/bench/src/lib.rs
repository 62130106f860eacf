//! Inputs shared by the benchmarks.

use omega_core::linalg::Mat;
use omega_core::theta::{lambda_gs, parse_gs};
use omega_core::{gray, BasedADC, GlobularSum};

/// Shapes of increasing size used across benchmark groups.
pub const SHAPES: [&str; 4] = ["[*]", "[*,*]", "[[*],*]", "[[*,*],[*]]"];

pub fn shape(s: &str) -> GlobularSum {
    parse_gs(s).expect("benchmark shape parses")
}

pub fn lambda(s: &str) -> BasedADC {
    lambda_gs(&shape(s))
}

/// Differential of the cylinder on a shape in degree `d`, as a matrix.
pub fn cylinder_boundary(s: &str, d: usize) -> Mat {
    let k = gray::cylinder(&lambda(s));
    let diff = k.diff_table();
    let rows: Vec<Vec<i64>> = k
        .ids_of_deg(d - 1)
        .iter()
        .map(|y| k.ids_of_deg(d).iter().map(|x| diff.get(x).and_then(|c| c.get(y)).copied().unwrap_or(0)).collect())
        .collect();
    Mat::from_i64(&rows)
}

/// A dense pseudo-random `n × n` integer matrix with small entries.
pub fn lcg_matrix(n: usize, seed: u64) -> Mat {
    let mut x = seed;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 33) % 11) as i64 - 5
                })
                .collect()
        })
        .collect();
    Mat::from_i64(&rows)
}
