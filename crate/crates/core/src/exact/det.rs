//! Determinants over the Laurent-polynomial ring.

use super::laurent::LaurentPoly;

/// Exact determinant of a square matrix of Laurent polynomials.
///
/// Sizes up to 3 use cofactor expansion; larger matrices use fraction-free
/// Bareiss elimination, whose divisions are exact in `Q[y, 1/y]`.
pub fn det_laurent(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    assert!(
        m.iter().all(|row| row.len() == n),
        "det_laurent needs a square matrix"
    );
    match n {
        0 => LaurentPoly::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 => det_cofactor(m),
        _ => det_bareiss(m.to_vec()),
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &det_cofactor(&minor);
        acc = if c % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

fn det_bareiss(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step division is exact over an integral domain");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn y() -> LaurentPoly {
        LaurentPoly::y()
    }

    #[test]
    fn empty_is_one() {
        assert_eq!(det_laurent(&[]), LaurentPoly::one());
    }

    #[test]
    fn two_by_two() {
        let e = &LaurentPoly::one() - &y();
        let m = vec![vec![e.clone(), y()], vec![y(), e]];
        let expected = &LaurentPoly::one() - &LaurentPoly::monomial(int(2), 1);
        assert_eq!(det_laurent(&m), expected);
    }

    #[test]
    fn repeated_columns_vanish() {
        let f = |k: i64| LaurentPoly::monomial(int(k), k - 2) + LaurentPoly::one();
        let m: Vec<Vec<LaurentPoly>> = (0..5)
            .map(|r| vec![f(r), f(r + 1), f(r), f(2 * r), y().pow(r as u32)])
            .collect();
        assert!(det_laurent(&m).is_zero());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let z = LaurentPoly::zero();
        let o = LaurentPoly::one();
        let m = vec![
            vec![z.clone(), o.clone(), z.clone(), z.clone()],
            vec![o.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), y(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), y()],
        ];
        assert_eq!(det_laurent(&m), -y().pow(2));
    }
}
