use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::RingSpec;

use super::{smith_normal_form, Matrix};

/// Modular inverse of `a` modulo `m` (requires `gcd(a, m) = 1`).
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// One solution of `A x = b` over `ring`, or `None` when the system is
/// inconsistent. Returned solutions are re-checked exactly.
pub fn solve_linear(a: &Matrix<BigInt>, b: &[BigInt], ring: &RingSpec) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let mut reduced = a.clone();
    if let Some(m) = ring.modulus() {
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                reduced.set(i, j, a.get(i, j).mod_floor(m));
            }
        }
    }
    let snf = smith_normal_form(&reduced);
    let c = snf.u.mul_vec(b)?;
    let d = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let di = d.get(i);
        match (ring.modulus(), di) {
            (None, Some(di)) => {
                if !ci.is_multiple_of(di) {
                    return Ok(None);
                }
                y[i] = ci / di;
            }
            (None, None) => {
                if !ci.is_zero() {
                    return Ok(None);
                }
            }
            (Some(m), Some(di)) => {
                let g = di.gcd(m);
                let ci = ci.mod_floor(m);
                if !ci.is_multiple_of(&g) {
                    return Ok(None);
                }
                let mg = m / &g;
                y[i] = if mg.is_one() {
                    BigInt::zero()
                } else {
                    ((&ci / &g) * mod_inverse(&(di / &g), &mg)).mod_floor(&mg)
                };
            }
            (Some(m), None) => {
                if !ci.is_multiple_of(m) {
                    return Ok(None);
                }
            }
        }
    }
    let x: Vec<BigInt> = snf.v.mul_vec(&y)?.into_iter().map(|v| ring.reduce(v)).collect();
    let check = a.mul_vec(&x)?;
    if check.iter().zip(b).any(|(l, r)| !ring.is_zero(&ring.reduce(l - r))) {
        return Err(Error::Precondition("solver produced a non-solution".into()));
    }
    Ok(Some(x))
}
