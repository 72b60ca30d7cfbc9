//! Hilbert series and Hilbert polynomials of homogeneous ideals, computed
//! from the leading-term ideal by the standard monomial-ideal splitting
//! recursion: pivot on a variable occurring in a minimal generator and use
//! HS(S/I) = HS(S/(I + (x))) + t * HS(S/(I : x)).

use num::{BigInt, One, Signed, Zero};

use crate::polyring::Monomial;
use crate::qlinalg::Rat;

/// Hilbert series of a quotient S/I, written G(t)/(1-t)^D with every
/// (1-t) factor cancelled out of the numerator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    numerator: Vec<BigInt>,
    denom_power: usize,
    nvars: usize,
}

impl HilbertSeries {
    /// Coefficients g_0..g_s of G(t). Empty for the zero quotient.
    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// D after full cancellation; the Krull dimension of S/I.
    pub fn denom_power(&self) -> usize {
        self.denom_power
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator_degree(&self) -> usize {
        self.numerator.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// The true coefficient of t^d in the expanded series, i.e. the
    /// dimension of the degree-d graded piece of S/I.
    pub fn coefficient(&self, d: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, g) in self.numerator.iter().enumerate() {
            if i > d {
                break;
            }
            acc += g * binomial_nonneg(
                d - i + self.denom_power.saturating_sub(1),
                self.denom_power.saturating_sub(1),
                self.denom_power,
            );
        }
        acc
    }

    pub(crate) fn from_leading_monomials(nvars: usize, lts: &[Monomial]) -> HilbertSeries {
        if lts.iter().any(Monomial::is_one) {
            return HilbertSeries {
                numerator: vec![],
                denom_power: 0,
                nvars,
            };
        }
        let mins = minimalize(lts.to_vec());
        let mut num = numerator_over_full_denominator(&mins, nvars);
        let mut d = nvars;
        while d > 0 && !num.is_empty() && eval_at_one(&num).is_zero() {
            num = divide_by_one_minus_t(&num);
            d -= 1;
        }
        trim(&mut num);
        debug_assert!(
            num.is_empty() || eval_at_one(&num).is_positive(),
            "cancelled numerator must be positive at t=1 for a nonzero quotient"
        );
        HilbertSeries {
            numerator: num,
            denom_power: d,
            nvars,
        }
    }
}

/// binom(n, k) when D > 0; for D == 0 the series is the polynomial G itself,
/// so the factor degenerates to "1 iff d == i".
fn binomial_nonneg(n: usize, k: usize, denom_power: usize) -> BigInt {
    if denom_power == 0 {
        return if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(n, k)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn minimalize(mut ms: Vec<Monomial>) -> Vec<Monomial> {
    ms.sort();
    ms.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    'outer: for (i, m) in ms.iter().enumerate() {
        for (j, other) in ms.iter().enumerate() {
            if i != j && other.divides(m) && (other != m || j < i) {
                continue 'outer;
            }
        }
        out.push(m.clone());
    }
    out
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn eval_at_one(v: &[BigInt]) -> BigInt {
    v.iter().sum()
}

fn add_into(dst: &mut Vec<BigInt>, src: &[BigInt], shift: usize) {
    if dst.len() < src.len() + shift {
        dst.resize(src.len() + shift, BigInt::zero());
    }
    for (i, c) in src.iter().enumerate() {
        dst[i + shift] += c;
    }
}

/// Exact division by (1 - t); valid only when the argument vanishes at t=1.
fn divide_by_one_minus_t(n: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(n.len());
    let mut carry = BigInt::zero();
    for c in n {
        carry += c;
        out.push(carry.clone());
    }
    debug_assert!(out.last().is_none_or(Zero::is_zero));
    out.pop();
    out
}

fn one_minus_t_pow(k: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        acc = next;
    }
    acc
}

/// Numerator of HS(S/I) over the full (1-t)^nvars denominator, where I is
/// the monomial ideal with the given minimal generators.
fn numerator_over_full_denominator(gens: &[Monomial], nvars: usize) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::one()];
    }
    if gens.iter().any(Monomial::is_one) {
        return vec![];
    }
    if gens.iter().all(|g| g.total_degree() == 1) {
        return one_minus_t_pow(gens.len());
    }
    // pivot: the most frequent variable among generators of degree >= 2
    let mut counts = vec![0usize; nvars];
    for g in gens {
        if g.total_degree() >= 2 {
            for (v, &e) in g.exps().iter().enumerate() {
                if e > 0 {
                    counts[v] += 1;
                }
            }
        }
    }
    let pivot = counts
        .iter()
        .enumerate()
        .max_by_key(|(_, &c)| c)
        .map(|(v, _)| v)
        .unwrap();
    debug_assert!(counts[pivot] > 0);

    // I + (x_pivot): generators not involving the pivot, plus the pivot itself
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).cloned().collect();
    plus.push(Monomial::var(nvars, pivot));

    // I : x_pivot: reduce the pivot exponent by one where present
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut e = g.exps().to_vec();
            if e[pivot] > 0 {
                e[pivot] -= 1;
            }
            Monomial::from_exps(e)
        })
        .collect();

    let mut acc = numerator_over_full_denominator(&minimalize(plus), nvars);
    let colon_num = numerator_over_full_denominator(&minimalize(colon), nvars);
    add_into(&mut acc, &colon_num, 1);
    trim(&mut acc);
    acc
}

/// Hilbert polynomial in the factorial normalization
/// HP(d) = sum_m a_m d^m / m!; the list stores a_0, a_1, ....
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertPolynomial {
    factorial_coeffs: Vec<Rat>,
}

impl HilbertPolynomial {
    pub(crate) fn zero() -> HilbertPolynomial {
        HilbertPolynomial {
            factorial_coeffs: vec![],
        }
    }

    pub(crate) fn from_series(hs: &HilbertSeries) -> HilbertPolynomial {
        if hs.denom_power() == 0 || hs.is_zero() {
            return HilbertPolynomial::zero();
        }
        let k = hs.denom_power() - 1;
        // HP(d) = sum_i g_i * binom(d + (D-1-i), D-1) as a polynomial in d
        let mut dense = vec![Rat::zero(); k + 1];
        for (i, g) in hs.numerator().iter().enumerate() {
            let shift = hs.denom_power() as i64 - 1 - i as i64;
            let mut term = vec![Rat::from_integer(BigInt::one())];
            for j in 0..k {
                // multiply by (d + shift - j)
                let c = Rat::from_integer(BigInt::from(shift - j as i64));
                let mut next = vec![Rat::zero(); term.len() + 1];
                for (p, a) in term.iter().enumerate() {
                    next[p] += a * &c;
                    next[p + 1] += a;
                }
                term = next;
            }
            let kfact = Rat::from_integer(factorial(k));
            let g_rat = Rat::from_integer(g.clone());
            for (p, a) in term.iter().enumerate() {
                dense[p] += a / &kfact * &g_rat;
            }
        }
        let mut coeffs: Vec<Rat> = dense
            .iter()
            .enumerate()
            .map(|(m, c)| c * Rat::from_integer(factorial(m)))
            .collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        HilbertPolynomial {
            factorial_coeffs: coeffs,
        }
    }

    /// a_0, a_1, ..., highest first trimmed; empty for the zero polynomial.
    pub fn coefficients(&self) -> &[Rat] {
        &self.factorial_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.factorial_coeffs.is_empty()
    }

    /// Degree in d, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.factorial_coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, d: i64) -> Rat {
        let mut acc = Rat::zero();
        let dr = Rat::from_integer(BigInt::from(d));
        let mut power = Rat::one();
        for (m, a) in self.factorial_coeffs.iter().enumerate() {
            acc += a * &power / Rat::from_integer(factorial(m));
            power *= &dr;
        }
        acc
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Brute-force count of degree-d monomials in `nvars` variables outside the
/// monomial ideal generated by `lts`: the dimension of (S/I)_d counted
/// directly, independent of the series recursion.
pub fn count_standard_monomials(nvars: usize, degree: usize, lts: &[Monomial]) -> u64 {
    fn rec(
        exps: &mut Vec<u16>,
        var: usize,
        left: usize,
        nvars: usize,
        lts: &[Monomial],
        acc: &mut u64,
    ) {
        if var == nvars - 1 {
            exps.push(left as u16);
            let m = Monomial::from_exps(exps.clone());
            if !lts.iter().any(|l| l.divides(&m)) {
                *acc += 1;
            }
            exps.pop();
            return;
        }
        for e in 0..=left {
            exps.push(e as u16);
            rec(exps, var + 1, left - e, nvars, lts, acc);
            exps.pop();
        }
    }
    let mut acc = 0;
    rec(&mut Vec::new(), 0, degree, nvars, lts, &mut acc);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn polynomial_ring_series() {
        let hs = HilbertSeries::from_leading_monomials(3, &[]);
        assert_eq!(hs.numerator(), &[BigInt::one()][..]);
        assert_eq!(hs.denom_power(), 3);
        assert_eq!(hs.coefficient(2), BigInt::from(6)); // binom(4,2)
    }

    #[test]
    fn unit_ideal_series_is_zero() {
        let hs = HilbertSeries::from_leading_monomials(3, &[mono(&[0, 0, 0])]);
        assert!(hs.is_zero());
        assert!(HilbertPolynomial::from_series(&hs).is_zero());
    }

    #[test]
    fn one_point_series() {
        // (z1, z2) in 3 vars: S/I = k[z3]
        let hs = HilbertSeries::from_leading_monomials(3, &[mono(&[1, 0, 0]), mono(&[0, 1, 0])]);
        assert_eq!(hs.numerator(), &[BigInt::one()][..]);
        assert_eq!(hs.denom_power(), 1);
        let hp = HilbertPolynomial::from_series(&hs);
        assert_eq!(hp.eval(7), Rat::one());
        assert_eq!(hp.degree(), Some(0));
    }

    #[test]
    fn double_point_series() {
        // (z1^2, z2) in 3 vars
        let hs = HilbertSeries::from_leading_monomials(3, &[mono(&[2, 0, 0]), mono(&[0, 1, 0])]);
        assert_eq!(hs.numerator(), &[BigInt::one(), BigInt::one()][..]);
        assert_eq!(hs.denom_power(), 1);
        let hp = HilbertPolynomial::from_series(&hs);
        assert_eq!(hp.eval(5), Rat::from_integer(BigInt::from(2)));
    }

    #[test]
    fn finite_length_series() {
        // (z1^3, z2) in 2 vars: k[z1]/(z1^3), total dimension 3
        let hs = HilbertSeries::from_leading_monomials(2, &[mono(&[3, 0]), mono(&[0, 1])]);
        assert_eq!(
            hs.numerator(),
            &[BigInt::one(), BigInt::one(), BigInt::one()][..]
        );
        assert_eq!(hs.denom_power(), 0);
        assert!(HilbertPolynomial::from_series(&hs).is_zero());
        assert_eq!(hs.coefficient(0), BigInt::one());
        assert_eq!(hs.coefficient(1), BigInt::one());
        assert_eq!(hs.coefficient(2), BigInt::one());
        assert_eq!(hs.coefficient(3), BigInt::zero());
    }

    #[test]
    fn projective_plane_polynomial() {
        // I = 0 in 3 vars: HP(d) = binom(d+2, 2), so a_2 = 1, a_1 = 3/2... in
        // factorial form HP(d) = d^2/2! + (3/2) d/1! + 1
        let hs = HilbertSeries::from_leading_monomials(3, &[]);
        let hp = HilbertPolynomial::from_series(&hs);
        assert_eq!(hp.degree(), Some(2));
        assert_eq!(hp.eval(4), Rat::from_integer(BigInt::from(15)));
        for d in 0..6 {
            assert_eq!(
                Rat::from_integer(hs.coefficient(d)),
                hp.eval(d as i64),
                "agreement at degree {d}"
            );
        }
    }
}
