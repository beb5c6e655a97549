use num::complex::Complex64;
use num::{BigInt, Signed, Zero};

use super::poly::LaurentPoly;
use super::RingError;

const ROOT_TOL: f64 = 1e-12;

/// All complex roots of a univariate integer polynomial, found by
/// Durand–Kerner iteration on the monic normalization. Coefficients are
/// given constant term first.
pub fn all_roots(coeffs: &[i128]) -> Vec<Complex64> {
    let mut c: Vec<f64> = coeffs.iter().map(|x| *x as f64).collect();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|x| Complex64::new(x / lead, 0.0)).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (0..=deg).rev() {
            acc = acc * z + monic[k];
        }
        acc
    };
    // standard starting configuration: points on a circle inside the root bound
    let radius = 1.0
        + monic[..deg]
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(radius * 0.7, angle)
        })
        .collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots
}

/// Maximal root modulus (spectral radius of the companion matrix).
pub fn spectral_radius(poly: &LaurentPoly) -> Result<f64, RingError> {
    let coeffs = poly.univariate_coeffs()?;
    if coeffs.len() < 2 {
        return Err(RingError::ConstantPolynomial);
    }
    Ok(all_roots(&coeffs)
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max))
}

fn sign_at(coeffs: &[BigInt], num: &BigInt, den_pow: u32) -> i32 {
    // sign of p(num / 2^den_pow), cleared of denominators
    let deg = coeffs.len() - 1;
    let two = BigInt::from(2);
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::from(1);
    for (k, c) in coeffs.iter().enumerate() {
        let scale = two.pow(den_pow * (deg - k) as u32);
        acc += c * &num_pow * scale;
        num_pow *= num;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

/// Largest-modulus root of a univariate Laurent polynomial, required to be
/// real and positive (the Perron case). The minimal exponent is shifted to
/// zero first; the dominant real root is bracketed inside the Cauchy bound
/// and bisected with exact integer sign evaluation to absolute tolerance
/// 1e-12. A dominant root that is not real positive within tolerance is
/// reported as an error rather than coerced.
pub fn largest_root(poly: &LaurentPoly) -> Result<f64, RingError> {
    let coeffs = poly.univariate_coeffs()?;
    if coeffs.len() < 2 {
        return Err(RingError::ConstantPolynomial);
    }
    let roots = all_roots(&coeffs);
    let max_mod = roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let dominant = roots
        .iter()
        .filter(|z| z.norm() > max_mod - 1e-9 * max_mod.max(1.0))
        .find(|z| z.im.abs() <= 1e-6 * max_mod.max(1.0) && z.re > 0.0);
    let approx = match dominant {
        Some(z) => z.re,
        None => {
            let best_real = roots
                .iter()
                .map(|z| z.re)
                .fold(f64::NEG_INFINITY, f64::max);
            return Err(RingError::DominantRootNotReal { modulus: max_mod, real_part: best_real });
        }
    };
    // certify by exact bisection around the approximate dominant root
    let big: Vec<BigInt> = coeffs.iter().map(|c| BigInt::from(*c)).collect();
    let den_pow = 40u32;
    let scale = (1u64 << den_pow) as f64;
    let to_num = |x: f64| BigInt::from((x * scale).round() as i128);
    let mut radius = (approx.abs() * 1e-6).max(1e-9);
    let mut lo = to_num(approx - radius);
    let mut hi = to_num(approx + radius);
    let mut slo = sign_at(&big, &lo, den_pow);
    let mut shi = sign_at(&big, &hi, den_pow);
    let mut expand = 0;
    while slo == shi && expand < 40 {
        radius *= 2.0;
        lo = to_num(approx - radius);
        hi = to_num(approx + radius);
        slo = sign_at(&big, &lo, den_pow);
        shi = sign_at(&big, &hi, den_pow);
        expand += 1;
    }
    if slo == 0 {
        return Ok(approx - radius);
    }
    if shi == 0 {
        return Ok(approx + radius);
    }
    if slo == shi {
        // even-multiplicity contact; the iteration value is the best we have
        return Ok(approx);
    }
    for _ in 0..200 {
        let mid = (&lo + &hi) / 2;
        let smid = sign_at(&big, &mid, den_pow);
        if smid == 0 {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if smid == slo {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = &hi - &lo;
        if width < BigInt::from((ROOT_TOL * scale) as i128) {
            break;
        }
    }
    let approx_from = |b: &BigInt| -> f64 {
        let (sign, digits) = b.to_u64_digits();
        let mut v = 0.0f64;
        for d in digits.iter().rev() {
            v = v * (u64::MAX as f64 + 1.0) + *d as f64;
        }
        if sign == num::bigint::Sign::Minus {
            v = -v;
        }
        v / scale
    };
    Ok((approx_from(&lo) + approx_from(&hi)) / 2.0)
}
