//! Generators: theta series and finite q-Pochhammer products.

use std::collections::BTreeMap;

use num_traits::One;

use super::laurent::{gaussian, Gaussian, LaurentPoly, Monomial};
use super::series::{GradedSeries, Tail, WindingTail};
use crate::error::{Error, Result};
use crate::param::ThetaKind;

fn check_scale(nome_scale: i64) -> Result<()> {
    if nome_scale == 1 || nome_scale == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "nome scale must be 1 or 2, got {nome_scale}"
        )))
    }
}

fn check_order(order: i64) -> Result<()> {
    if order < 0 {
        return Err(Error::OrderUnderflow(order));
    }
    Ok(())
}

/// Defining series of `theta_kind(z | nome_scale * tau)` to `O(q^{order+1})`,
/// with `e^{iz}` replaced by the monomial `z`.
pub fn fs_theta(kind: ThetaKind, nome_scale: i64, z: Monomial, order: i64) -> Result<GradedSeries> {
    check_scale(nome_scale)?;
    check_order(order)?;
    let s = nome_scale;
    let odd = matches!(kind, ThetaKind::One | ThetaKind::Two);
    // Largest k >= 0 whose term lies inside the order.
    let q_power = |k: i64| if odd { s * k * (k + 1) } else { s * k * k };
    let mut kh = 0;
    while q_power(kh + 1) <= order {
        kh += 1;
    }
    let lo = if odd { -1 - kh } else { -kh };

    let mut coeffs: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for k in lo..=kh {
        let sign = if k.rem_euclid(2) == 1 { -1 } else { 1 };
        let c = match kind {
            ThetaKind::One => gaussian(0, -sign),
            ThetaKind::Two | ThetaKind::Three => gaussian(1, 0),
            ThetaKind::Four => gaussian(sign, 0),
        };
        let e = if odd { 2 * k + 1 } else { 2 * k };
        let m = z.pow(i32::try_from(e).expect("exponent fits"));
        coeffs.entry(q_power(k)).or_default().add_term(m, c);
    }

    let (prefactor, quad, offset) = if odd {
        (s, [4 * s, 4 * s, s], z)
    } else {
        (0, [4 * s, 0, 0], Monomial::ONE)
    };
    let tail = Tail::Winding(WindingTail {
        step: z.pow(2),
        offset,
        quad,
        known: Some((lo, kh)),
    });
    Ok(GradedSeries::from_parts(prefactor, coeffs, order, tail))
}

/// One factor `1 - sign * q^nome_power * monomial`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QFactor {
    pub sign: i8,
    pub nome_power: i64,
    pub monomial: Option<Monomial>,
}

impl QFactor {
    pub fn new(sign: i8, nome_power: i64, monomial: Option<Monomial>) -> Self {
        Self {
            sign,
            nome_power,
            monomial,
        }
    }
}

/// Expansion of `prod (1 - sign q^c m)` to `O(q^{order+1})`. Factors with
/// `c > order` cannot contribute and are skipped.
pub fn fs_pochhammer_product(factors: &[QFactor], order: i64) -> Result<GradedSeries> {
    check_order(order)?;
    let mut acc = GradedSeries::one().truncate(order);
    for f in factors {
        if f.nome_power < 1 {
            return Err(Error::Domain(format!(
                "factor nome power must be at least 1, got {}",
                f.nome_power
            )));
        }
        if f.sign != 1 && f.sign != -1 {
            return Err(Error::Domain(format!(
                "factor sign must be +1 or -1, got {}",
                f.sign
            )));
        }
        if f.nome_power > order {
            continue;
        }
        acc.mul_binomial(
            f.nome_power,
            &gaussian(-i64::from(f.sign), 0),
            f.monomial.unwrap_or(Monomial::ONE),
        );
    }
    Ok(acc)
}

/// Factors of `(sign' q^start m; q^step)_inf` with `c <= order`, where the
/// factor reads `1 - sign q^c m`.
pub fn pochhammer_factors(
    sign: i8,
    monomial: Option<Monomial>,
    start: i64,
    step: i64,
    order: i64,
) -> Vec<QFactor> {
    let mut out = Vec::new();
    let mut c = start;
    while c <= order {
        out.push(QFactor::new(sign, c, monomial));
        c += step;
    }
    out
}

/// Triple-product form of `theta_kind(z | nome_scale * tau)`.
pub fn fs_theta_product(
    kind: ThetaKind,
    nome_scale: i64,
    z: Monomial,
    order: i64,
) -> Result<GradedSeries> {
    check_scale(nome_scale)?;
    check_order(order)?;
    let s = nome_scale;
    let z2 = Some(z.pow(2));
    let zm2 = Some(z.pow(-2));
    let mut factors = pochhammer_factors(1, None, 2 * s, 2 * s, order);
    let front = match kind {
        ThetaKind::One | ThetaKind::Two => {
            let sign = if kind == ThetaKind::One { 1 } else { -1 };
            factors.extend(pochhammer_factors(sign, z2, 2 * s, 2 * s, order));
            factors.extend(pochhammer_factors(sign, zm2, 2 * s, 2 * s, order));
            // 2 sin z = -i (u - 1/u), 2 cos z = u + 1/u
            let mut p = LaurentPoly::zero();
            if kind == ThetaKind::One {
                p.add_term(z, gaussian(0, -1));
                p.add_term(z.inverse(), gaussian(0, 1));
            } else {
                p.add_term(z, Gaussian::one());
                p.add_term(z.inverse(), Gaussian::one());
            }
            GradedSeries::constant(s, p)
        }
        ThetaKind::Three | ThetaKind::Four => {
            let sign = if kind == ThetaKind::Three { -1 } else { 1 };
            factors.extend(pochhammer_factors(sign, z2, s, 2 * s, order));
            factors.extend(pochhammer_factors(sign, zm2, s, 2 * s, order));
            GradedSeries::one()
        }
    };
    Ok(front.mul(&fs_pochhammer_product(&factors, order)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::series::{fs_equal, Comparison};
    use num_traits::Zero;

    fn poly(terms: &[((i32, i32), (i64, i64))]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for ((a, b), (re, im)) in terms {
            p.add_term(Monomial::new(*a, *b), gaussian(*re, *im));
        }
        p
    }

    #[test]
    fn theta3_to_order_four() {
        let s = fs_theta(ThetaKind::Three, 1, Monomial::U, 4).unwrap();
        assert_eq!(s.quarter_prefactor(), 0);
        assert_eq!(s.order(), Some(4));
        let stored: Vec<i64> = s.iter().map(|(n, _)| n).collect();
        assert_eq!(stored, vec![0, 1, 4]);
        assert_eq!(s.coeff(0).unwrap(), &LaurentPoly::one());
        assert_eq!(
            s.coeff(1).unwrap(),
            &poly(&[((2, 0), (1, 0)), ((-2, 0), (1, 0))])
        );
        assert_eq!(
            s.coeff(4).unwrap(),
            &poly(&[((4, 0), (1, 0)), ((-4, 0), (1, 0))])
        );
    }

    #[test]
    fn theta1_to_order_two() {
        let s = fs_theta(ThetaKind::One, 1, Monomial::U, 2).unwrap();
        assert_eq!(s.quarter_prefactor(), 1);
        assert_eq!(
            s.coeff(0).unwrap(),
            &poly(&[((1, 0), (0, -1)), ((-1, 0), (0, 1))])
        );
        assert_eq!(
            s.coeff(2).unwrap(),
            &poly(&[((3, 0), (0, 1)), ((-3, 0), (0, -1))])
        );
        assert_eq!(s.iter().count(), 2);
    }

    #[test]
    fn theta4_doubled_nome_difference_argument() {
        let s = fs_theta(ThetaKind::Four, 2, Monomial::new(1, -1), 4).unwrap();
        let stored: Vec<i64> = s.iter().map(|(n, _)| n).collect();
        assert_eq!(stored, vec![0, 2]);
        assert_eq!(
            s.coeff(2).unwrap(),
            &poly(&[((2, -2), (-1, 0)), ((-2, 2), (-1, 0))])
        );
    }

    #[test]
    fn empty_product_is_one() {
        let p = fs_pochhammer_product(&[], 5).unwrap();
        assert_eq!(
            fs_equal(&p, &GradedSeries::one()),
            Comparison::Equal { order: Some(5) }
        );
    }

    /// Pentagonal numbers for `(q^2; q^2)`: `sum (-1)^k q^{k(3k-1)}`.
    #[test]
    fn euler_product_with_even_nome() {
        let n = 30;
        let e = fs_pochhammer_product(&pochhammer_factors(1, None, 2, 2, n), n).unwrap();
        let mut expect = BTreeMap::new();
        for k in -5i64..=5 {
            let g = k * (3 * k - 1);
            if g <= n {
                expect.insert(g, if k % 2 == 0 { 1 } else { -1 });
            }
        }
        for g in 0..=n {
            let c = e
                .coeff(g)
                .map(|p| p.coeff(&Monomial::ONE))
                .unwrap_or_else(Gaussian::zero);
            assert_eq!(c, gaussian(*expect.get(&g).unwrap_or(&0), 0), "q^{g}");
        }

        // Brute multiplication of ten truncated integer polynomials.
        let mut brute = [0i64; 7];
        brute[0] = 1;
        for f in 1..=10usize {
            let c = 2 * f;
            for i in (0..brute.len()).rev() {
                if i >= c {
                    brute[i] -= brute[i - c];
                }
            }
        }
        let six = fs_pochhammer_product(&pochhammer_factors(1, None, 2, 2, 6), 6).unwrap();
        for (g, want) in brute.iter().enumerate() {
            let c = six
                .coeff(g as i64)
                .map(|p| p.coeff(&Monomial::ONE))
                .unwrap_or_else(Gaussian::zero);
            assert_eq!(c, gaussian(*want, 0));
        }
    }

    #[test]
    fn theta4_product_order_four() {
        let a = fs_theta(ThetaKind::Four, 1, Monomial::U, 4).unwrap();
        let b = fs_theta_product(ThetaKind::Four, 1, Monomial::U, 4).unwrap();
        assert!(fs_equal(&a, &b).is_equal());
    }

    #[test]
    fn triple_products_all_kinds() {
        for kind in ThetaKind::ALL {
            for scale in [1, 2] {
                let a = fs_theta(kind, scale, Monomial::U, 12).unwrap();
                let b = fs_theta_product(kind, scale, Monomial::U, 12).unwrap();
                assert_eq!(
                    fs_equal(&a, &b),
                    Comparison::Equal { order: Some(12) },
                    "{kind} scale {scale}"
                );
            }
        }
    }

    #[test]
    fn theta2_times_theta3_by_hand() {
        // theta2 = q^{1/4}[(u + 1/u) + q^2(u^3 + u^-3)], theta3 = 1 + q(u^2 + u^-2)
        let t2 = fs_theta(ThetaKind::Two, 1, Monomial::U, 2).unwrap();
        let t3 = fs_theta(ThetaKind::Three, 1, Monomial::U, 2).unwrap();
        let p = t2.mul(&t3);
        assert_eq!(p.quarter_prefactor(), 1);
        assert_eq!(p.order(), Some(2));
        let one = (1, 0);
        assert_eq!(p.coeff(0).unwrap(), &poly(&[((1, 0), one), ((-1, 0), one)]));
        assert_eq!(
            p.coeff(1).unwrap(),
            &poly(&[((3, 0), one), ((1, 0), one), ((-1, 0), one), ((-3, 0), one)])
        );
        assert_eq!(p.coeff(2).unwrap(), &poly(&[((3, 0), one), ((-3, 0), one)]));
    }

    #[test]
    fn theta3_and_theta4_differ_at_first_power() {
        let a = fs_theta(ThetaKind::Three, 1, Monomial::U, 6).unwrap();
        let b = fs_theta(ThetaKind::Four, 1, Monomial::U, 6).unwrap();
        match fs_equal(&a, &b) {
            Comparison::Mismatch(m) => {
                assert_eq!(m.quarter_grade, 4);
                assert_eq!(m.monomial, Monomial::new(-2, 0));
                assert_eq!(m.lhs, gaussian(1, 0));
                assert_eq!(m.rhs, gaussian(-1, 0));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(fs_theta(ThetaKind::One, 3, Monomial::U, 4).is_err());
        assert!(fs_theta(ThetaKind::One, 1, Monomial::U, -1).is_err());
        assert!(fs_pochhammer_product(&[QFactor::new(1, 0, None)], 3).is_err());
    }
}
