//! Principal-branch complex operations.
//!
//! All multivalued functions in this crate go through these helpers so
//! that the branch convention is fixed in exactly one place: arguments
//! lie in (−π, π]. Negative reals map to +π even when the imaginary
//! part is a negative zero, which `atan2` alone would send to −π.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Principal argument in (−π, π].
pub fn arg_principal(z: Complex64) -> f64 {
    if z.im == 0.0 && z.re < 0.0 {
        std::f64::consts::PI
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm, `ln|z| + i·arg(z)` with arg in (−π, π].
pub fn log_principal(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log of zero".into()));
    }
    Ok(Complex64::new(z.norm().ln(), arg_principal(z)))
}

/// Principal power `z^w = exp(w · Log z)`.
///
/// `0^0` is 1; `0^w` is 0 for `Re w > 0` and a domain error otherwise.
pub fn pow_principal(z: Complex64, w: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        if w.re == 0.0 && w.im == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        if w.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain(
            "zero raised to an exponent without positive real part".into(),
        ));
    }
    Ok((w * log_principal(z)?).exp())
}

/// Principal square root (`sqrt 0 = 0`).
pub fn sqrt_principal(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let half = Complex64::new(0.5, 0.0);
    (half * Complex64::new(z.norm().ln(), arg_principal(z))).exp()
}
