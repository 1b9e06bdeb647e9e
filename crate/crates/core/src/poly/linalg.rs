//! Fraction-free elimination over the integers for rational matrices.
//!
//! Every row is first scaled to integer entries; elimination then runs on
//! `BigInt` and only the final back-substitution touches fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Multiplies a rational row by the lcm of its denominators.
/// Returns the integer row and the scale factor used.
fn clear_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints = row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    (ints, lcm)
}

/// Determinant by Bareiss elimination. The empty matrix has determinant 1.
pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let size = matrix.len();
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), size, "determinant of a non-square matrix");
            let (ints, s) = clear_row(row);
            scale *= s;
            ints
        })
        .collect();

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        let Some(pivot_row) = (k..size).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != k {
            m.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = if size == 0 { BigInt::one() } else { prev };
    Rational::new(sign * det, scale)
}

/// Solves `matrix * x = rhs`, returning one solution (free variables set to
/// zero) or `None` when the system is inconsistent.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(matrix.len(), rhs.len());
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut aug = row.clone();
            aug.push(b.clone());
            clear_row(&aug).0
        })
        .collect();

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, row);
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let (a, b) = (m[row][col].clone(), m[r][col].clone());
            let mut updated: Vec<BigInt> = m[r].iter().zip(&m[row]).map(|(x, y)| x * &a - y * &b).collect();
            make_primitive(&mut updated);
            m[r] = updated;
        }
        pivots.push(col);
        row += 1;
    }

    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = Rational::new(m[r][cols].clone(), m[r][col].clone());
    }
    Some(x)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
    debug_assert!(!g.is_negative());
}
