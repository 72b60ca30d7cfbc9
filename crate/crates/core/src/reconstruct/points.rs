//! Rational points of a zero-dimensional subscheme of the projective plane,
//! found chart by chart: dehomogenize at z3=1, then z3=0 with z2=1, then the
//! single remaining point [1:0:0]. Each chart reduces to univariate rational
//! root extraction on content-cleared integer polynomials; anything the
//! rational-root theorem cannot split is reported, never dropped.

use std::collections::BTreeSet;

use num::{BigInt, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::polyring::{Poly, TermOrder};
use crate::qlinalg::Rat;

use super::ProjPoint;

/// Largest integer coefficient magnitude we are willing to factor when
/// enumerating rational root candidates.
const ROOT_SEARCH_LIMIT: i128 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq)]
struct UniPoly {
    coeffs: Vec<Rat>, // ascending powers, trimmed
}

impl UniPoly {
    fn from_poly(p: &Poly, var: usize) -> Option<UniPoly> {
        if !p.univariate_in(var) {
            return None;
        }
        let mut coeffs: Vec<Rat> = vec![];
        for (m, c) in p.terms() {
            let e = m.exp(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rat::zero());
            }
            coeffs[e] = c.clone();
        }
        let mut u = UniPoly { coeffs };
        u.trim();
        Some(u)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn monic(&self) -> UniPoly {
        let lead = self.coeffs.last().expect("monic of zero").clone();
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c / &lead).collect(),
        }
    }

    /// Remainder of self modulo other (other nonzero).
    fn rem(&self, other: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        let d = other.degree();
        let lead = other.coeffs.last().unwrap().clone();
        while !r.is_zero() && r.degree() >= d {
            let shift = r.degree() - d;
            let factor = r.coeffs.last().unwrap() / &lead;
            for (i, c) in other.coeffs.iter().enumerate() {
                let v = r.coeffs[i + shift].clone() - c * &factor;
                r.coeffs[i + shift] = v;
            }
            r.trim();
        }
        r
    }

    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Exact division by (x - r); r must be a root.
    fn deflate(&self, r: &Rat) -> UniPoly {
        let mut out: Vec<Rat> = vec![Rat::zero(); self.coeffs.len() - 1];
        let mut carry = Rat::zero();
        for i in (0..self.coeffs.len()).rev() {
            if i == 0 {
                debug_assert!((self.coeffs[0].clone() + &carry * r).is_zero());
                break;
            }
            carry = self.coeffs[i].clone() + &carry * r;
            out[i - 1] = carry.clone();
        }
        let mut u = UniPoly { coeffs: out };
        u.trim();
        u
    }

    /// All rational roots (as a set) and the degree left over after
    /// deflating them out. A positive leftover means irrational or complex
    /// roots remain.
    fn rational_roots(&self) -> Result<(BTreeSet<Rat>, usize)> {
        let mut roots: BTreeSet<Rat> = BTreeSet::new();
        let mut work = self.clone();
        debug_assert!(!work.is_zero());
        if work.degree() == 0 {
            return Ok((roots, 0));
        }
        // clear to a primitive integer polynomial
        let mut lcm = BigInt::one();
        for c in &work.coeffs {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = work
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut low = 0;
        while ints[low].is_zero() {
            low += 1;
        }
        if low > 0 {
            roots.insert(Rat::zero());
            for _ in 0..low {
                work = work.deflate(&Rat::zero());
            }
        }
        if work.degree() == 0 {
            return Ok((roots, 0));
        }
        let a0 = ints[low]
            .magnitude()
            .to_i128()
            .filter(|&v| v <= ROOT_SEARCH_LIMIT);
        let alead = ints
            .last()
            .unwrap()
            .magnitude()
            .to_i128()
            .filter(|&v| v <= ROOT_SEARCH_LIMIT);
        let (Some(a0), Some(alead)) = (a0, alead) else {
            return Err(Error::Resource(
                "coefficients too large for rational root search".into(),
            ));
        };
        for p in divisors(a0) {
            for q in divisors(alead) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                    while !work.is_zero() && work.degree() >= 1 && work.eval(&cand).is_zero() {
                        roots.insert(cand.clone());
                        work = work.deflate(&cand);
                    }
                }
            }
        }
        Ok((roots, if work.is_zero() { 0 } else { work.degree() }))
    }
}

fn divisors(n: i128) -> Vec<i128> {
    debug_assert!(n > 0);
    let mut out = vec![];
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn gcd_of(polys: &[UniPoly]) -> UniPoly {
    let mut acc = polys[0].clone();
    for p in &polys[1..] {
        acc = UniPoly::gcd(&acc, p);
    }
    acc
}

fn vanishes_at(gens: &[Poly], point: &[Rat]) -> bool {
    gens.iter().all(|g| g.eval(point).is_zero())
}

pub(super) fn rational_points_p2(j: &Ideal) -> Result<Vec<ProjPoint>> {
    let ring = j.ring().clone();
    assert_eq!(ring.nvars(), 3, "point solving is specific to the plane");
    let gens = j.generators();
    if gens.is_empty() {
        return Err(Error::PositiveDimensional(
            "the zero ideal cuts out the whole plane".into(),
        ));
    }
    let mut points: BTreeSet<ProjPoint> = BTreeSet::new();

    // chart z3 = 1
    let chart: Vec<Poly> = gens
        .iter()
        .map(|g| g.specialize(2, &Rat::one()))
        .filter(|g| !g.is_zero())
        .collect();
    if chart.is_empty() {
        return Err(Error::PositiveDimensional(
            "every generator vanishes on the affine chart z3=1".into(),
        ));
    }
    let chart_ideal = Ideal::new(&ring, chart.clone())?.with_degree_guard(j.degree_guard());
    // reaching the lex basis directly is expensive; going through the
    // degrevlex basis first gives the same (unique) reduced basis
    let grevlex = chart_ideal.groebner(TermOrder::DegRevLex)?;
    let seeded =
        Ideal::new(&ring, grevlex.elements().to_vec())?.with_degree_guard(j.degree_guard());
    let gb = seeded.groebner(TermOrder::Lex)?;
    if !gb.contains_unit() {
        let eliminant = gb
            .elements()
            .iter()
            .find_map(|p| UniPoly::from_poly(p, 1))
            .ok_or_else(|| {
                Error::PositiveDimensional("chart z3=1 is not zero-dimensional".into())
            })?;
        let (z2_roots, leftover) = eliminant.rational_roots()?;
        if leftover > 0 {
            return Err(Error::IrrationalLocus(format!(
                "the eliminant in chart z3=1 keeps an irreducible factor of degree {leftover}"
            )));
        }
        for r in z2_roots {
            let fibers: Vec<UniPoly> = gb
                .elements()
                .iter()
                .map(|p| p.specialize(1, &r))
                .filter(|p| !p.is_zero())
                .map(|p| UniPoly::from_poly(&p, 0).expect("chart basis involves only z1, z2"))
                .collect();
            if fibers.is_empty() {
                return Err(Error::PositiveDimensional(format!(
                    "the whole line z2 = {r} in chart z3=1 lies in the locus"
                )));
            }
            let g = gcd_of(&fibers);
            if g.degree() == 0 {
                continue;
            }
            let (z1_roots, leftover) = g.rational_roots()?;
            if leftover > 0 {
                return Err(Error::IrrationalLocus(format!(
                    "the fiber over z2 = {r} keeps an irreducible factor of degree {leftover}"
                )));
            }
            for s in z1_roots {
                let point = [s.clone(), r.clone(), Rat::one()];
                if vanishes_at(gens, &point) {
                    points.insert(ProjPoint::from_rationals(&point));
                }
            }
        }
    }

    // chart z3 = 0, z2 = 1
    let at_infinity: Vec<Poly> = gens.iter().map(|g| g.specialize(2, &Rat::zero())).collect();
    let line: Vec<UniPoly> = at_infinity
        .iter()
        .map(|g| g.specialize(1, &Rat::one()))
        .filter(|g| !g.is_zero())
        .map(|g| UniPoly::from_poly(&g, 0).expect("restriction to the line at infinity"))
        .collect();
    if line.is_empty() {
        return Err(Error::PositiveDimensional(
            "the line z3=0 lies in the locus".into(),
        ));
    }
    let g = gcd_of(&line);
    if g.degree() > 0 {
        let (roots, leftover) = g.rational_roots()?;
        if leftover > 0 {
            return Err(Error::IrrationalLocus(format!(
                "the locus on the line at infinity keeps an irreducible factor of degree {leftover}"
            )));
        }
        for s in roots {
            let point = [s.clone(), Rat::one(), Rat::zero()];
            if vanishes_at(gens, &point) {
                points.insert(ProjPoint::from_rationals(&point));
            }
        }
    }

    // the last point of the chart decomposition
    let corner = [Rat::one(), Rat::zero(), Rat::zero()];
    if vanishes_at(gens, &corner) {
        points.insert(ProjPoint::from_rationals(&corner));
    }

    Ok(points.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{rat, rat_int};

    fn u(coeffs: &[(i64, i64)]) -> UniPoly {
        UniPoly {
            coeffs: coeffs.iter().map(|&(n, d)| rat(n, d)).collect(),
        }
    }

    #[test]
    fn rational_roots_with_multiplicity_and_leftover() {
        // (x^2 + 1)(x - 1)^2 = x^4 - 2x^3 + 2x^2 - 2x + 1
        let p = u(&[(1, 1), (-2, 1), (2, 1), (-2, 1), (1, 1)]);
        let (roots, leftover) = p.rational_roots().unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![rat_int(1)]);
        assert_eq!(leftover, 2);
    }

    #[test]
    fn rational_roots_fractional() {
        // (2x - 1)(3x + 2) = 6x^2 + x - 2
        let p = u(&[(-2, 1), (1, 1), (6, 1)]);
        let (roots, leftover) = p.rational_roots().unwrap();
        assert_eq!(leftover, 0);
        let roots: Vec<Rat> = roots.into_iter().collect();
        assert_eq!(roots, vec![rat(-2, 3), rat(1, 2)]);
    }

    #[test]
    fn rational_roots_at_zero() {
        // x^3 - x^2 = x^2 (x - 1)
        let p = u(&[(0, 1), (0, 1), (-1, 1), (1, 1)]);
        let (roots, leftover) = p.rational_roots().unwrap();
        assert_eq!(leftover, 0);
        let roots: Vec<Rat> = roots.into_iter().collect();
        assert_eq!(roots, vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn gcd_of_univariates() {
        // gcd((x-1)(x-2), (x-1)(x-3)) = x - 1
        let a = u(&[(2, 1), (-3, 1), (1, 1)]);
        let b = u(&[(3, 1), (-4, 1), (1, 1)]);
        let g = UniPoly::gcd(&a, &b);
        assert_eq!(g, u(&[(-1, 1), (1, 1)]));
    }
}
