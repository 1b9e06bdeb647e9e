use crate::poly::{linalg, Polynomial};
use crate::rational::{int, Rational};

/// Degree candidate from the classical two-case analysis of
/// `A(n) x(n+1) - B(n-1) x(n) = C(n)`. `None` when no candidate is nonnegative.
pub fn gosper_degree_bound(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Option<usize> {
    let b_prev = b.shift_int(-1);
    let plus = a + &b_prev;
    let minus = a - &b_prev;
    let deg_c = c.degree()? as i64;

    if minus.degree() >= plus.degree() {
        let d = deg_c - minus.degree()? as i64;
        return usize::try_from(d).ok();
    }
    let s = plus.degree()?;
    let mut best = usize::try_from(deg_c - s as i64 + 1).ok();
    let lower = if s == 0 {
        Rational::from_integer(0.into())
    } else {
        minus.coeff(s - 1)
    };
    let u = -(int(2) * lower) / plus.leading();
    if u.is_integer() && u >= int(0) {
        if let Ok(u) = usize::try_from(u.to_integer()) {
            best = best.max(Some(u));
        }
    }
    best
}

/// Polynomial solution of `A(n) x(n+1) - B(n-1) x(n) = C(n)`, or `None` when
/// none exists.
///
/// Tries the classical degree bound, widened to cover every degree up to
/// `deg C + max(deg A, deg B) + 2`. Any returned solution satisfies the
/// equation coefficientwise; the check is exact.
pub fn solve_gosper_equation(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Option<Polynomial> {
    if c.is_zero() {
        return Some(Polynomial::zero());
    }
    let deg_c = c.degree().unwrap_or(0);
    let fallback = deg_c + a.degree().unwrap_or(0).max(b.degree().unwrap_or(0)) + 2;
    let max_degree = gosper_degree_bound(a, b, c).unwrap_or(0).max(fallback);

    let b_prev = b.shift_int(-1);
    let columns: Vec<Polynomial> = (0..=max_degree)
        .map(|i| {
            let mut mono = vec![Rational::from_integer(0.into()); i + 1];
            mono[i] = int(1);
            let mono = Polynomial::new(mono);
            &(a * &mono.shift_int(1)) - &(&b_prev * &mono)
        })
        .collect();
    let rows = columns
        .iter()
        .filter_map(Polynomial::degree)
        .chain(c.degree())
        .max()
        .unwrap_or(0)
        + 1;
    let matrix: Vec<Vec<Rational>> = (0..rows)
        .map(|r| columns.iter().map(|col| col.coeff(r)).collect())
        .collect();
    let rhs: Vec<Rational> = (0..rows).map(|r| c.coeff(r)).collect();

    let x = Polynomial::new(linalg::solve(&matrix, &rhs)?);
    let check = &(a * &x.shift_int(1)) - &(&b_prev * &x);
    (check == *c).then_some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn constant_term_telescopes_to_n() {
        let one = p(&[1]);
        assert_eq!(gosper_degree_bound(&one, &one, &one), Some(1));
        assert_eq!(solve_gosper_equation(&one, &one, &one), Some(p(&[0, 1])));
    }

    #[test]
    fn n_times_factorial() {
        // Normal form of (n+1)^2/n: A = n+1, B = 1, C = n.
        let x = solve_gosper_equation(&p(&[1, 1]), &p(&[1]), &p(&[0, 1])).unwrap();
        assert_eq!(x, p(&[1]));
    }

    #[test]
    fn harmonic_has_no_solution() {
        // t(n) = 1/(n+1): A = n+1, B = n+2, C = 1.
        let (a, b, c) = (p(&[1, 1]), p(&[2, 1]), p(&[1]));
        assert_eq!(gosper_degree_bound(&a, &b, &c), Some(0));
        assert_eq!(solve_gosper_equation(&a, &b, &c), None);
    }

    #[test]
    fn algorithm_term_at_alpha_one_k_two() {
        // Ratio 2(n-1)/(3(n-2)) has normal form A = 2/3, B = 1, C = n - 2.
        let a = Polynomial::constant(frac(2, 3));
        let x = solve_gosper_equation(&a, &p(&[1]), &p(&[-2, 1])).unwrap();
        assert_eq!(x, p(&[0, -3]));
    }
}
