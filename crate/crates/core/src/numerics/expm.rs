//! Matrix exponential by scaling and squaring with the [13/13] Padé approximant.

use super::lu::Lu;
use super::matrix::ComplexMatrix;
use crate::error::Result;

/// Largest 1-norm for which the unscaled [13/13] approximant is backward stable.
pub const THETA_13: f64 = 5.371920351148152;

const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn axpy3(a: f64, x: &ComplexMatrix, b: f64, y: &ComplexMatrix, c: f64, z: &ComplexMatrix) -> ComplexMatrix {
    let mut out = x.scale_real(a);
    for ((o, &yy), &zz) in out.as_mut_slice().iter_mut().zip(y.as_slice()).zip(z.as_slice()) {
        *o += yy * b + zz * c;
    }
    out
}

pub fn expm(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    m.check_finite()?;
    let n = m.dim();
    let norm = m.norm_1();
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = m.scale_real(0.5f64.powi(squarings));
    let b = &PADE_13;
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * &axpy3(b[13], &a6, b[11], &a4, b[9], &a2);
    let u_tail = axpy3(b[7], &a6, b[5], &a4, b[3], &a2);
    let mut u_sum = &u_inner + &u_tail;
    for i in 0..n {
        u_sum[(i, i)] += b[1];
    }
    let u = &a * &u_sum;

    let v_inner = &a6 * &axpy3(b[12], &a6, b[10], &a4, b[8], &a2);
    let v_tail = axpy3(b[6], &a6, b[4], &a4, b[2], &a2);
    let mut v = &v_inner + &v_tail;
    for i in 0..n {
        v[(i, i)] += b[0];
    }

    let p = &v + &u;
    let q = &v - &u;
    let mut r = Lu::new(&q, 0.0).solve_mat(&p);
    for _ in 0..squarings {
        r = &r * &r;
    }
    r.check_finite()?;
    Ok(r)
}
