//! Controlled-precision evaluation of `exp`, `ln` and `sqrt`.
//!
//! Values are carried as fixed-point integers scaled by `2^bits` and the
//! results handed back as dyadic rationals, so every caller stays in exact
//! arithmetic once a transcendental value has been rounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Guard bits carried beyond the requested output precision.
pub const GUARD_BITS: u32 = 64;

/// Output precision for probabilities and step sizes: multiples of `2^-64`.
pub const DYADIC_BITS: u32 = 64;

fn floor_scaled(x: &Rational, bits: u32) -> BigInt {
    (x.numer() << bits).div_floor(x.denom())
}

/// `e^(-num/den)` scaled by `2^bits` and truncated, for `num >= 0`, `den > 0`.
///
/// Larger precision is used internally; the result is accurate to within a
/// few units in the last place.
fn exp_neg_fixed(num: &BigInt, den: &BigInt, bits: u32) -> BigInt {
    debug_assert!(!num.is_negative() && den.is_positive());
    if num.is_zero() {
        return BigInt::one() << bits;
    }
    // e^x < 2^-(bits+1) once x < -bits.
    if *num > den * BigInt::from(bits + 1) {
        return BigInt::zero();
    }
    // Halve until the argument is at most 1/64, evaluate the series, then
    // square back up.
    let mut halvings = 0u32;
    while num * 64 > den << halvings {
        halvings += 1;
    }
    let work = bits + GUARD_BITS + 2 * halvings;
    let scale = BigInt::one() << work;
    let y = -((num << (work - halvings)) / den);
    let mut term = scale.clone();
    let mut sum = scale;
    let mut k = 1u32;
    loop {
        term = ((&term * &y) >> work) / k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    for _ in 0..halvings {
        sum = (&sum * &sum) >> work;
    }
    sum >> (work - bits)
}

/// `e^x` for `x <= 0`, rounded down to a multiple of `2^-bits`.
pub fn exp_nonpositive(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_positive(), "exp_nonpositive of a positive number");
    Rational::dyadic(exp_neg_fixed(&-x.numer(), x.denom(), bits), bits)
}

fn atanh_inv_fixed(z_num: &BigInt, z_den: &BigInt, work: u32) -> BigInt {
    // atanh(z) = sum z^(2j+1)/(2j+1), z = num/den with |z| < 1.
    let scale = BigInt::one() << work;
    let z2_num = z_num * z_num;
    let z2_den = z_den * z_den;
    let mut power = (&scale * z_num) / z_den;
    let mut sum = BigInt::zero();
    let mut j = 0u32;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * j + 1);
        power = (&power * &z2_num) / &z2_den;
        j += 1;
    }
    sum
}

/// `ln(x)` for `x > 0`, truncated towards negative infinity to a multiple of
/// `2^-bits` (to within the last unit).
pub fn ln(x: &Rational, bits: u32) -> Rational {
    assert!(x.is_positive(), "ln of a nonpositive number");
    let work = bits + GUARD_BITS;
    // x = m * 2^k with m in [1, 2).
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut m = if k >= 0 {
        x / Rational::from_bigint(BigInt::one() << k as u64)
    } else {
        x * Rational::from_bigint(BigInt::one() << (-k) as u64)
    };
    let two = Rational::from_integer(2);
    while m >= two {
        m = m / &two;
        k += 1;
    }
    while m < Rational::one() {
        m = m * &two;
        k -= 1;
    }
    // ln m = 2 atanh((m-1)/(m+1)); ln 2 = 2 atanh(1/3).
    let z = (&m - Rational::one()) / (&m + Rational::one());
    let ln_m = atanh_inv_fixed(z.numer(), z.denom(), work) * 2;
    let ln2 = atanh_inv_fixed(&BigInt::one(), &BigInt::from(3), work) * 2;
    let total: BigInt = ln_m + ln2 * BigInt::from(k);
    let shifted = total.div_floor(&(BigInt::one() << GUARD_BITS));
    Rational::dyadic(shifted, bits)
}

/// `sqrt(x)` for `x >= 0`, rounded down to a multiple of `2^-bits`. Exact
/// when the square root is itself such a multiple.
pub fn sqrt_floor(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of a negative number");
    let scaled = floor_scaled(x, 2 * bits);
    Rational::dyadic(scaled.sqrt(), bits)
}

/// `x` rounded down to a multiple of `2^-bits`.
pub fn floor_dyadic(x: &Rational, bits: u32) -> Rational {
    Rational::dyadic(floor_scaled(x, bits), bits)
}

/// Normalized exponentials `e^{s_a} / sum_b e^{s_b}` as multiples of
/// `2^-DYADIC_BITS` that sum to exactly one.
///
/// Exponents are shifted by their maximum first, so arbitrary magnitudes are
/// safe. Rounding residue goes to the largest remainders, lowest index first.
/// All-equal exponents give the exact uniform distribution.
pub fn softmax(exponents: &[Rational]) -> Vec<Rational> {
    assert!(!exponents.is_empty(), "softmax of an empty vector");
    if exponents.iter().all(|e| *e == exponents[0]) {
        return vec![Rational::new(1, exponents.len() as i64); exponents.len()];
    }
    let (den, nums) = super::scale_to_integers(exponents);
    softmax_scaled(&den, &nums)
}

/// `softmax` of the exponents `nums[a] / den`.
pub fn softmax_scaled(den: &BigInt, nums: &[BigInt]) -> Vec<Rational> {
    assert!(!nums.is_empty() && den.is_positive(), "softmax needs exponents and a positive denominator");
    if nums.iter().all(|e| *e == nums[0]) {
        return vec![Rational::new(1, nums.len() as i64); nums.len()];
    }
    let max = nums.iter().max().expect("nonempty").clone();
    let work = DYADIC_BITS + 16;
    let weights: Vec<BigInt> = nums.iter().map(|s| exp_neg_fixed(&(&max - s), den, work)).collect();
    let total: BigInt = weights.iter().sum();
    let unit = BigInt::one() << DYADIC_BITS;
    let mut floors = Vec::with_capacity(weights.len());
    let mut remainders = Vec::with_capacity(weights.len());
    for w in &weights {
        let scaled = w * &unit;
        floors.push(&scaled / &total);
        remainders.push(&scaled % &total);
    }
    let assigned: BigInt = floors.iter().sum();
    let missing = (&unit - assigned).to_usize().expect("residue fits");
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| remainders[b].cmp(&remainders[a]).then(a.cmp(&b)));
    for &i in order.iter().take(missing) {
        floors[i] += 1;
    }
    floors.into_iter().map(|f| Rational::dyadic(f, DYADIC_BITS)).collect()
}

/// `ceil(c * ln(n) / eps^2)`, the usual sample-size or horizon formula.
pub fn log_over_eps_sq(c: &Rational, n: usize, eps: &Rational) -> u64 {
    assert!(n >= 1 && eps.is_positive());
    let l = ln(&Rational::from(n), DYADIC_BITS);
    let v = c * l / (eps * eps);
    let ceil = v.ceil();
    ceil.to_u64().expect("horizon fits in u64").max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};
    use proptest::prelude::*;

    fn close(a: &Rational, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() <= tol
    }

    #[test]
    fn exp_values() {
        assert_eq!(exp_nonpositive(&int(0), 64), int(1));
        assert!(close(&exp_nonpositive(&int(-1), 64), (-1f64).exp(), 1e-15));
        assert!(close(&exp_nonpositive(&rat(-37, 3), 64), (-37f64 / 3.0).exp(), 1e-15));
        assert_eq!(exp_nonpositive(&int(-1000), 64), int(0));
    }

    #[test]
    fn ln_values() {
        assert!(close(&ln(&int(2), 64), std::f64::consts::LN_2, 1e-15));
        assert!(close(&ln(&int(20), 64), 20f64.ln(), 1e-14));
        assert!(close(&ln(&rat(1, 3), 64), (1f64 / 3.0).ln(), 1e-15));
        assert_eq!(ln(&int(1), 64), int(0));
    }

    #[test]
    fn sqrt_exact_on_squares() {
        assert_eq!(sqrt_floor(&int(9), 64), int(3));
        assert_eq!(sqrt_floor(&rat(1, 4), 64), rat(1, 2));
        assert!(close(&sqrt_floor(&int(2), 64), std::f64::consts::SQRT_2, 1e-15));
    }

    #[test]
    fn softmax_ratio_matches_exponent_gap() {
        let l2 = ln(&int(2), 64);
        let p = softmax(&[l2.clone(), -l2]);
        assert_eq!(&p[0] + &p[1], int(1));
        let err = (&p[0] - rat(4, 5)).abs();
        assert!(err < Rational::dyadic(BigInt::one(), 60));
    }

    #[test]
    fn horizon_formula() {
        // ln(20) / 0.01 = 299.57...
        assert_eq!(log_over_eps_sq(&int(1), 20, &rat(1, 10)), 300);
        assert_eq!(log_over_eps_sq(&int(1), 1, &rat(1, 10)), 1);
    }

    proptest! {
        #[test]
        fn softmax_is_a_distribution(xs in proptest::collection::vec((-500i64..500, 1i64..7), 1..8)) {
            let exps: Vec<Rational> = xs.iter().map(|&(n, d)| rat(n, d)).collect();
            let p = softmax(&exps);
            prop_assert_eq!(p.iter().sum::<Rational>(), int(1));
            prop_assert!(p.iter().all(|v| !v.is_negative()));
            // Larger exponents never get smaller probabilities.
            for i in 0..p.len() {
                for j in 0..p.len() {
                    if exps[i] > exps[j] {
                        prop_assert!(p[i] >= p[j]);
                    }
                }
            }
        }
    }
}
