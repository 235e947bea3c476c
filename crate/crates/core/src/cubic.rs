use crate::real::Real;

/// Evaluates c[0] x^3 + c[1] x^2 + c[2] x + c[3] by Horner's rule.
pub fn eval_cubic<T: Real>(c: [T; 4], x: T) -> T {
    ((c[0] * x + c[1]) * x + c[2]) * x + c[3]
}

/// Real roots of c[0] x^3 + c[1] x^2 + c[2] x + c[3] = 0, ascending.
///
/// Returns the root count and a fixed buffer; unused slots are NaN. Degree
/// degeneration is decided on exact zero leading coefficients: callers that
/// want "V below threshold means quadratic" semantics zero the coefficient
/// themselves. A double root is reported twice, a triple root once.
///
/// Closed forms (trigonometric for three real roots, Cardano for one) are
/// followed by a few guarded Newton steps on the original polynomial; the
/// closed forms alone lose up to half the mantissa when the depressed-cubic
/// shift is much larger than the roots, e.g. for on-site couplings ~1e6.
pub fn solve_cubic<T: Real>(c: [T; 4]) -> (usize, [T; 3]) {
    let nan = T::nan();
    let mut out = [nan; 3];

    if c[0] == T::zero() {
        let (n, r) = solve_quadratic([c[1], c[2], c[3]]);
        out[..2].copy_from_slice(&r);
        return (n, out);
    }

    let b = c[1] / c[0];
    let cc = c[2] / c[0];
    let d = c[3] / c[0];
    let third = T::one() / T::three();
    let p = cc - b * b * third;
    let q = (T::two() * b * b * b / T::lit(27.0)) - b * cc * third + d;
    let disc = T::lit(-4.0) * p * p * p - T::lit(27.0) * q * q;

    let mut n = 0;
    if disc >= T::zero() {
        if p >= T::zero() {
            // p and q both ~0: numerically a triple root.
            out[0] = -b * third;
            n = 1;
        } else {
            let m = T::two() * (-p * third).sqrt();
            let arg = (T::three() * q / (p * m)).max(-T::one()).min(T::one());
            let theta = arg.acos() * third;
            let tau = T::two() * T::PI() * third;
            for k in 0..3 {
                out[k] = m * (theta - tau * T::from_usize(k).unwrap()).cos() - b * third;
            }
            n = 3;
        }
    } else {
        let rad = (q * q / T::lit(4.0) + p * p * p / T::lit(27.0)).sqrt();
        let a = if q == T::zero() {
            rad.cbrt()
        } else {
            -(q.abs() / T::two() + rad).cbrt().copysign(q)
        };
        let bb = if a == T::zero() { T::zero() } else { -p / (T::three() * a) };
        out[0] = a + bb - b * third;
        n = 1;
    }

    for r in out.iter_mut().take(n) {
        *r = polish(c, *r);
    }
    out[..n].sort_unstable_by(|a, b| a.partial_cmp(b).expect("real roots"));
    (n, out)
}

/// Real roots of c[0] x^2 + c[1] x + c[2] = 0, ascending. Double roots are
/// reported once; a vanishing polynomial has no isolated roots and reports
/// none.
pub fn solve_quadratic<T: Real>(c: [T; 3]) -> (usize, [T; 2]) {
    let nan = T::nan();
    if c[0] == T::zero() {
        if c[1] == T::zero() {
            return (0, [nan; 2]);
        }
        return (1, [-c[2] / c[1], nan]);
    }
    let disc = c[1] * c[1] - T::lit(4.0) * c[0] * c[2];
    if disc < T::zero() {
        return (0, [nan; 2]);
    }
    if disc == T::zero() {
        return (1, [-c[1] / (T::two() * c[0]), nan]);
    }
    // Citardauq pairing avoids cancellation in the small root.
    let s = disc.sqrt();
    let q = -(c[1] + s.copysign(c[1])) / T::two();
    let (r1, r2) = if q == T::zero() {
        (T::zero(), -c[1] / c[0])
    } else {
        (q / c[0], c[2] / q)
    };
    if r1 <= r2 {
        (2, [r1, r2])
    } else {
        (2, [r2, r1])
    }
}

fn polish<T: Real>(c: [T; 4], mut x: T) -> T {
    for _ in 0..3 {
        let f = eval_cubic(c, x);
        if f == T::zero() {
            break;
        }
        let fp = (T::three() * c[0] * x + T::two() * c[1]) * x + c[2];
        if fp == T::zero() {
            break;
        }
        let x1 = x - f / fp;
        if !x1.is_finite() || eval_cubic(c, x1).abs() > f.abs() {
            break;
        }
        x = x1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(scale: f64, r: [f64; 3]) -> [f64; 4] {
        [
            scale,
            -scale * (r[0] + r[1] + r[2]),
            scale * (r[0] * r[1] + r[0] * r[2] + r[1] * r[2]),
            -scale * r[0] * r[1] * r[2],
        ]
    }

    #[test]
    fn three_well_separated_roots() {
        let (n, r) = solve_cubic(from_roots(-2.5, [-1.5, 0.25, 3.0]));
        assert_eq!(n, 3);
        assert!((r[0] + 1.5).abs() < 1e-14);
        assert!((r[1] - 0.25).abs() < 1e-14);
        assert!((r[2] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn one_real_root() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let (n, r) = solve_cubic([1.0, -2.0, 1.0, -2.0]);
        assert_eq!(n, 1);
        assert!((r[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn wide_dynamic_range_roots() {
        let (n, r) = solve_cubic(from_roots(1.0, [-1e-6, 0.5, 1e6]));
        assert_eq!(n, 3);
        assert!((r[0] + 1e-6).abs() < 1e-18);
        assert!((r[1] - 0.5).abs() < 1e-12);
        assert!((r[2] - 1e6).abs() < 1e-6);
    }

    #[test]
    fn characteristic_quadratic_when_leading_term_vanishes() {
        // -4 a^2 + 8 a + 4 = 0 has roots 1 -/+ sqrt(2)
        let (n, r) = solve_cubic([0.0, -4.0, 8.0, 4.0]);
        assert_eq!(n, 2);
        assert!((r[0] - (1.0 - 2.0_f64.sqrt())).abs() < 1e-15);
        assert!((r[1] - (1.0 + 2.0_f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn full_characteristic_cubic_example() {
        // 8 a^3 - 20 a^2 + 4 = 0 has roots 1-sqrt(2), 1/2, 1+sqrt(2)
        let (n, r) = solve_cubic([8.0, -20.0, 0.0, 4.0]);
        assert_eq!(n, 3);
        assert!((r[0] - (1.0 - 2.0_f64.sqrt())).abs() < 1e-14);
        assert!((r[1] - 0.5).abs() < 1e-14);
        assert!((r[2] - (1.0 + 2.0_f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn double_and_triple_roots() {
        let (n, r) = solve_cubic(from_roots(1.0, [0.5, 0.5, 2.0]));
        assert_eq!(n, 3);
        assert!((r[0] - 0.5).abs() < 1e-7 && (r[1] - 0.5).abs() < 1e-7);
        assert!((r[2] - 2.0).abs() < 1e-12);

        let (n, r) = solve_cubic(from_roots(2.0, [-1.0, -1.0, -1.0]));
        assert_eq!(n, 1);
        assert!((r[0] + 1.0).abs() < 1e-5);
    }

    #[test]
    fn quadratic_cases() {
        let (n, r) = solve_quadratic([1.0, 0.0, -4.0]);
        assert_eq!((n, r[0], r[1]), (2, -2.0, 2.0));

        let (n, _) = solve_quadratic([1.0, 0.0, 4.0]);
        assert_eq!(n, 0);

        let (n, r) = solve_quadratic([1.0, -2.0, 1.0]);
        assert_eq!(n, 1);
        assert_eq!(r[0], 1.0);

        let (n, r) = solve_quadratic([0.0, 2.0, -3.0]);
        assert_eq!(n, 1);
        assert_eq!(r[0], 1.5);

        let (n, _) = solve_quadratic([0.0, 0.0, 1.0]);
        assert_eq!(n, 0);
    }

    #[test]
    fn tiny_root_is_not_swamped() {
        // x^2 - (1e8 + 1e-8) x + 1: roots 1e8 and 1e-8
        let (n, r) = solve_quadratic([1.0, -(1e8 + 1e-8), 1.0]);
        assert_eq!(n, 2);
        assert!((r[0] - 1e-8).abs() < 1e-22);
        assert!((r[1] - 1e8).abs() < 1e-7);
    }

    #[test]
    fn works_in_f32() {
        let (n, r) = solve_cubic([1.0_f32, -6.0, 11.0, -6.0]);
        assert_eq!(n, 3);
        assert!((r[0] - 1.0).abs() < 1e-5);
        assert!((r[1] - 2.0).abs() < 1e-5);
        assert!((r[2] - 3.0).abs() < 1e-5);
    }
}
