//! Sparse multivariate polynomials over the rationals.
//!
//! Term maps are stored in an order-agnostic canonical form (a `BTreeMap`
//! keyed by exponent vectors); any [`TermOrder`] can be applied at iteration
//! time, so one polynomial value serves every order without copies.

mod text;

pub use text::parse_poly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::Rat;

/// The ambient polynomial ring: a number of variables and their print names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    vars: Vec<String>,
}

impl RingCtx {
    /// Ring in `nvars >= 2` variables named `z1..z<nvars>`.
    pub fn new(nvars: usize) -> Arc<RingCtx> {
        assert!(nvars >= 2, "need at least two variables");
        Arc::new(RingCtx {
            vars: (1..=nvars).map(|i| format!("z{i}")).collect(),
        })
    }

    pub fn with_names(vars: Vec<String>) -> Arc<RingCtx> {
        assert!(vars.len() >= 2, "need at least two variables");
        Arc::new(RingCtx { vars })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new ring with one auxiliary variable prepended. The fresh variable
    /// gets a name not already present, derived from `hint`.
    pub fn extended_front(&self, hint: &str) -> Arc<RingCtx> {
        let mut name = hint.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = vec![name];
        vars.extend(self.vars.iter().cloned());
        Arc::new(RingCtx { vars })
    }
}

pub fn same_ring(a: &Arc<RingCtx>, b: &Arc<RingCtx>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn ring_mismatch(a: &RingCtx, b: &RingCtx) -> Error {
    Error::RingMismatch {
        left: a.vars.join(","),
        right: b.vars.join(","),
    }
}

/// Exponent vector. The derived `Ord` is plain lexicographic on the vector
/// and is used only as storage order; semantic comparisons go through
/// [`TermOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exps(exps: Vec<u16>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn cmp_degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // larger monomial has the smaller exponent in the last
            // position where they differ
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn cmp_lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Term orders. `Elimination { block }` ranks any monomial containing one of
/// the first `block` variables above any monomial free of them, comparing
/// degrevlex within each block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TermOrder {
    DegRevLex,
    Lex,
    Elimination { block: usize },
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match *self {
            TermOrder::DegRevLex => cmp_degrevlex(&a.0, &b.0),
            TermOrder::Lex => cmp_lex(&a.0, &b.0),
            TermOrder::Elimination { block } => cmp_degrevlex(&a.0[..block], &b.0[..block])
                .then_with(|| cmp_degrevlex(&a.0[block..], &b.0[block..])),
        }
    }
}

/// Homogeneity of a polynomial. The zero polynomial is homogeneous of every
/// degree and deliberately carries no degree marker.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    No,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::No)
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Homogeneity::Degree(d) => Some(*d),
            _ => None,
        }
    }
}

/// Sparse polynomial: a map from monomials to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    ring: Arc<RingCtx>,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(ring: &Arc<RingCtx>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingCtx>) -> Poly {
        Poly::constant(ring, Rat::one())
    }

    pub fn constant(ring: &Arc<RingCtx>, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn variable(ring: &Arc<RingCtx>, i: usize) -> Poly {
        assert!(i < ring.nvars());
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), i), Rat::one());
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: duplicates are summed and
    /// zero coefficients dropped, so the result is canonical.
    pub fn from_terms<I>(ring: &Arc<RingCtx>, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (order-agnostic).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: TermOrder) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, ord: TermOrder) -> Result<(Monomial, Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        Ok(self.clone() + other.clone())
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        Ok(self.clone() - other.clone())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(ring_mismatch(&self.ring, &other.ring));
        }
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// self * c * x^m
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, v)| (mm.mul(m), v * c))
                .collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        let n = self.ring.nvars();
        if i >= n {
            return Err(Error::VarIndex { index: i, nvars: n });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                let e = exps[i];
                exps[i] = e - 1;
                (Monomial::from_exps(exps), c * Rat::from_integer(e.into()))
            });
        Ok(Poly::from_terms(&self.ring, terms))
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes the rational `value` for variable `i`, staying in the
    /// same ring (the variable simply no longer occurs).
    pub fn specialize(&self, i: usize, value: &Rat) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = m.exps().to_vec();
            let e = exps[i];
            exps[i] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            (Monomial::from_exps(exps), coeff)
        });
        Poly::from_terms(&self.ring, terms)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degrees.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::No
                }
            }
        }
    }

    /// True iff no term involves any of the first `k` variables.
    pub fn free_of_first(&self, k: usize) -> bool {
        self.terms
            .keys()
            .all(|m| m.exps()[..k].iter().all(|&e| e == 0))
    }

    /// True iff the only variable occurring is `var`.
    pub fn univariate_in(&self, var: usize) -> bool {
        self.terms.keys().all(|m| {
            m.exps()
                .iter()
                .enumerate()
                .all(|(i, &e)| i == var || e == 0)
        })
    }

    /// Reinterprets the polynomial in a ring with one extra variable
    /// prepended (the new variable does not occur).
    pub fn extend_front(&self, ext: &Arc<RingCtx>) -> Poly {
        assert_eq!(ext.nvars(), self.ring.nvars() + 1);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u16];
            exps.extend_from_slice(m.exps());
            (Monomial::from_exps(exps), c.clone())
        });
        Poly::from_terms(ext, terms)
    }

    /// Drops the first variable, which must not occur in any term.
    pub fn restrict_front(&self, base: &Arc<RingCtx>) -> Poly {
        assert_eq!(base.nvars() + 1, self.ring.nvars());
        let terms = self.terms.iter().map(|(m, c)| {
            assert_eq!(m.exp(0), 0, "term involves the eliminated variable");
            (Monomial::from_exps(m.exps()[1..].to_vec()), c.clone())
        });
        Poly::from_terms(base, terms)
    }

    /// Expanded product of the linear forms given by `covectors`.
    pub fn product_of_linears(ring: &Arc<RingCtx>, covectors: &[Vec<Rat>]) -> Result<Poly> {
        let n = ring.nvars();
        let mut acc = Poly::one(ring);
        for cov in covectors {
            assert_eq!(cov.len(), n, "covector arity");
            if cov.iter().all(Zero::is_zero) {
                return Err(Error::ZeroCovector);
            }
            let form = Poly::from_terms(
                ring,
                cov.iter()
                    .enumerate()
                    .map(|(i, c)| (Monomial::var(n, i), c.clone())),
            );
            acc = &acc * &form;
        }
        Ok(acc)
    }

    /// Leading-coefficient-1 copy under `ord`. Panics on zero.
    pub fn monic(&self, ord: TermOrder) -> Poly {
        let (_, lc) = self.leading_term(ord).expect("monic of zero polynomial");
        self.scale(&lc.recip())
    }

    /// Parses the human grammar, e.g. `2*z1*z2 + 1/2*z2^2 - z3`.
    pub fn parse(ring: &Arc<RingCtx>, src: &str) -> std::result::Result<Poly, String> {
        text::parse_poly(ring, src)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut terms = self.terms;
        for (m, c) in rhs.terms {
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        Poly {
            ring: rhs.ring,
            terms,
        }
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match out.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}
