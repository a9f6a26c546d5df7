//! Integer-order Bessel functions of the first kind, J_0..J_n at a single
//! argument, via Miller's backward recurrence with final normalization by
//! J_0(z) + 2 Σ J_{2k}(z) = 1. Self-contained so results are identical on
//! every target, including wasm.

/// J_0(z), J_1(z), .., J_n_max(z) for z ≥ 0.
pub fn bessel_j_sequence(z: f64, n_max: usize) -> Vec<f64> {
    assert!(z >= 0.0 && z.is_finite(), "argument must be finite and >= 0");
    if z < 1e-12 {
        // J_k(z) = (z/2)^k / k! (1 + O(z^2)); below this threshold only the
        // first two orders are distinguishable from 0 and 1 in f64.
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        if n_max >= 1 {
            out[1] = 0.5 * z;
        }
        return out;
    }

    // Start the downward recurrence well above both n_max and the turning
    // point k ~ z, where J_k has decayed enough for Miller's method.
    let base = n_max.max(z.ceil() as usize);
    let start = base + 24 + (40.0 * base as f64).sqrt() as usize;

    let mut out = vec![0.0; n_max + 1];
    let mut f_next = 0.0_f64; // f_{k+1}
    let mut f_curr = 1e-300_f64; // f_k, arbitrary small seed
    let mut norm = 0.0_f64; // accumulates f_0 + 2 sum f_{2j}
    const RESCALE_AT: f64 = 1e250;
    const RESCALE_BY: f64 = 1e-250;

    let mut k = start;
    loop {
        if k <= n_max {
            out[k] = f_curr;
        }
        if k % 2 == 0 {
            norm += if k == 0 { f_curr } else { 2.0 * f_curr };
        }
        if k == 0 {
            break;
        }
        let f_prev = (2.0 * k as f64 / z) * f_curr - f_next;
        f_next = f_curr;
        f_curr = f_prev;
        k -= 1;

        if f_curr.abs() > RESCALE_AT {
            f_curr *= RESCALE_BY;
            f_next *= RESCALE_BY;
            norm *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }

    let inv = 1.0 / norm;
    for v in out.iter_mut() {
        *v *= inv;
    }
    out
}
