//! Exact determinants and polynomial interpolation.

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::poly::Polynomial;
use crate::scalar::{Field, Scalar};

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Every division is exact, so this is correct over any integral domain whose
/// `/` is exact on multiples, in particular `BigInt` and `i64` (when no
/// intermediate overflows).
pub fn det_bareiss<T: Scalar>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return T::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Determinant by Gaussian elimination with the first nonzero pivot.
pub fn det_gauss<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return T::zero();
        };
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        let piv = a[k][k].clone();
        det = det * piv.clone();
        for i in k + 1..n {
            let f = a[i][k].clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                a[i][j] = a[i][j].clone() - f.clone() * a[k][j].clone();
            }
        }
    }
    det
}

/// Newton interpolation through `(xs[i], ys[i])`; the nodes must be distinct.
pub fn interpolate<T: Field>(xs: &[T], ys: &[T]) -> Polynomial<T> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<T> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].clone() - dd[i - 1].clone();
            let den = xs[i].clone() - xs[i - level].clone();
            dd[i] = num / den;
        }
    }
    let mut out = Polynomial::zero();
    for i in (0..n).rev() {
        let factor = Polynomial::new(vec![-xs[i].clone(), T::one()]);
        out = &(&out * &factor) + &Polynomial::constant(dd[i].clone());
    }
    out
}

/// `det(tI - A)` for an integer matrix, evaluated at `t = 0..=n` with Bareiss
/// and recovered by exact rational interpolation.
pub fn charpoly_by_interpolation(a: &[Vec<i64>]) -> Polynomial<BigInt> {
    let n = a.len();
    let mut xs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    for x in 0..=n as i64 {
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { x } else { 0 };
                        BigInt::from(d - a[i][j])
                    })
                    .collect()
            })
            .collect();
        xs.push(Ratio::from_integer(BigInt::from(x)));
        ys.push(Ratio::from_integer(det_bareiss(&m)));
    }
    let p = interpolate(&xs, &ys);
    p.map(|c| {
        assert!(c.is_integer(), "characteristic polynomial coefficient {c} not integral");
        c.to_integer()
    })
}

/// Convert a rational polynomial to an integer one if every coefficient is integral.
pub fn integral_polynomial(p: &Polynomial<Ratio<BigInt>>) -> Option<Polynomial<BigInt>> {
    if p.coeffs().iter().all(|c| c.is_integer()) {
        Some(p.map(|c| c.to_integer()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(&big(&[vec![2, 1], vec![1, 3]])), BigInt::from(5));
        assert_eq!(det_bareiss::<BigInt>(&[]), BigInt::from(1));
        assert_eq!(det_bareiss(&big(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 4]])), BigInt::from(-4));
        assert_eq!(det_bareiss(&big(&[vec![1, 2], vec![2, 4]])), BigInt::from(0));
    }

    #[test]
    fn charpoly_of_c4() {
        let a = vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 1, 0]];
        assert_eq!(charpoly_by_interpolation(&a), Polynomial::from_i64s(&[0, 0, -4, 0, 1]));
    }

    #[test]
    fn charpoly_of_k3() {
        let a = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert_eq!(charpoly_by_interpolation(&a), Polynomial::from_i64s(&[-2, -3, 0, 1]));
    }

    #[test]
    fn float_gauss_agrees() {
        let m = vec![vec![4.0, 3.0, 2.0], vec![1.0, 0.0, 5.0], vec![2.0, 2.0, 1.0]];
        let d = det_gauss(&m);
        let e = det_bareiss(&big(&[vec![4, 3, 2], vec![1, 0, 5], vec![2, 2, 1]]));
        assert!((d - e.to_string().parse::<f64>().unwrap()).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_gauss(
            entries in prop::collection::vec(-6i64..6, 16),
        ) {
            let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let q: Vec<Vec<Ratio<BigInt>>> = m
                .iter()
                .map(|r| r.iter().map(|&x| Ratio::from_integer(BigInt::from(x))).collect())
                .collect();
            prop_assert_eq!(Ratio::from_integer(det_bareiss(&big(&m))), det_gauss(&q));
        }

        #[test]
        fn interpolation_recovers_polynomial(cs in prop::collection::vec(-9i64..9, 1..6)) {
            let p: Polynomial<Ratio<BigInt>> = Polynomial::from_i64s(&cs);
            let xs: Vec<_> = (0..cs.len() as i64).map(|x| Ratio::from_integer(BigInt::from(x))).collect();
            let ys: Vec<_> = xs.iter().map(|x| p.eval(x)).collect();
            prop_assert_eq!(interpolate(&xs, &ys), p);
        }
    }
}
