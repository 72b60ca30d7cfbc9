//! Homogeneous-ideal calculus on top of the Buchberger engine: membership,
//! elimination, intersection, quotient, saturation, radical membership, and
//! Hilbert series / polynomial / degree extraction.

mod engine;
mod hilbert;

pub use hilbert::{count_standard_monomials, HilbertPolynomial, HilbertSeries};

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num::{BigInt, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::polyring::{same_ring, Monomial, Poly, RingCtx, TermOrder};
use crate::qlinalg::Rat;

/// Default cap on total degrees inside Buchberger runs. Exceeding it raises
/// a typed resource error; nothing is ever truncated silently.
pub const DEFAULT_DEGREE_GUARD: u32 = 40;

/// Opt-in global audit of every Gröbner basis the engine hands out: all
/// S-polynomials must reduce to zero and the basis must be reduced and
/// monic. Used by the verification suites; panics on violation.
pub mod audit {
    use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

    static ENABLED: AtomicBool = AtomicBool::new(false);
    static AUDITED: AtomicU64 = AtomicU64::new(0);

    pub fn set_enabled(on: bool) {
        ENABLED.store(on, Ordering::SeqCst);
    }

    pub fn enabled() -> bool {
        ENABLED.load(Ordering::SeqCst)
    }

    pub fn count() -> u64 {
        AUDITED.load(Ordering::SeqCst)
    }

    pub(super) fn record() {
        AUDITED.fetch_add(1, Ordering::SeqCst);
    }
}

/// A reduced Gröbner basis: monic elements, fully inter-reduced, sorted
/// ascending by leading monomial. Unique per (ideal, order), so `==` on two
/// bases under the same order decides ideal equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    elements: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the basis is {1}, i.e. the whole ring.
    pub fn contains_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].num_terms() == 1 && {
            let (m, c) = self.elements[0].terms().next().unwrap();
            m.is_one() && c.is_one()
        }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|p| p.leading_term(self.order).unwrap().0)
            .collect()
    }

    /// Remainder of `f` on division by the basis: no term of the result is
    /// divisible by any leading term; `f - normal_form(f)` lies in the
    /// ideal, and the map is idempotent.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        if self.elements.is_empty() {
            return f.clone();
        }
        let ring = self.elements[0].ring().clone();
        let reducers: Vec<engine::OrdTerms> = self
            .elements
            .iter()
            .map(|p| engine::to_ordered(p, self.order))
            .collect();
        let refs: Vec<&engine::OrdTerms> = reducers.iter().collect();
        let work = engine::to_ordered(f, self.order);
        let out = engine::normal_form_ord(work, &refs, self.order, u32::MAX)
            .expect("normal form never hits the guard");
        engine::to_poly(&ring, &out)
    }

    /// Direct check of the Gröbner property; see [`audit`].
    pub fn audit(&self) -> std::result::Result<(), String> {
        if self.elements.is_empty() {
            return Ok(());
        }
        let ring = self.elements[0].ring().clone();
        engine::audit_basis(&ring, &self.elements, self.order)
    }
}

/// An ideal presented by generators, with a write-once-per-key cache of
/// reduced Gröbner bases. Immutable apart from the cache, which concurrent
/// computations may race on; they install identical values.
#[derive(Debug)]
pub struct Ideal {
    ring: Arc<RingCtx>,
    generators: Vec<Poly>,
    degree_guard: u32,
    cache: RwLock<HashMap<TermOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            degree_guard: self.degree_guard,
            cache: RwLock::new(self.cache.read().unwrap().clone()),
        }
    }
}

impl Ideal {
    /// Builds an ideal from generators; zero polynomials are dropped. All
    /// generators must live in `ring`.
    pub fn new(ring: &Arc<RingCtx>, generators: Vec<Poly>) -> Result<Ideal> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(crate::polyring::ring_mismatch(ring, g.ring()));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            degree_guard: DEFAULT_DEGREE_GUARD,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn with_degree_guard(mut self, guard: u32) -> Ideal {
        self.degree_guard = guard;
        self.cache = RwLock::new(HashMap::new());
        self
    }

    pub fn degree_guard(&self) -> u32 {
        self.degree_guard
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// The ideal with one extra generator, inheriting the degree guard.
    pub fn plus(&self, extra: Poly) -> Result<Ideal> {
        if !same_ring(extra.ring(), &self.ring) {
            return Err(crate::polyring::ring_mismatch(&self.ring, extra.ring()));
        }
        let mut gens = self.generators.clone();
        gens.push(extra);
        Ok(Ideal::new(&self.ring, gens)?.with_degree_guard(self.degree_guard))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.homogeneity().is_homogeneous())
    }

    fn require_homogeneous(&self) -> Result<()> {
        for g in &self.generators {
            if !g.homogeneity().is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        Ok(())
    }

    pub fn min_generator_degree(&self) -> Option<u32> {
        self.generators.iter().filter_map(Poly::total_degree).min()
    }

    /// The reduced Gröbner basis under `ord`, computed once and cached.
    pub fn groebner(&self, ord: TermOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().unwrap().get(&ord) {
            return Ok(gb.clone());
        }
        let elements =
            engine::reduced_groebner(&self.ring, &self.generators, ord, self.degree_guard)?;
        let gb = Arc::new(GroebnerBasis {
            order: ord,
            elements,
        });
        if audit::enabled() {
            if let Err(msg) = gb.audit() {
                panic!("Groebner audit failed: {msg}");
            }
            audit::record();
        }
        let mut cache = self.cache.write().unwrap();
        Ok(cache.entry(ord).or_insert(gb).clone())
    }

    /// Ideal membership via normal form against the degrevlex basis.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(crate::polyring::ring_mismatch(&self.ring, f.ring()));
        }
        let gb = self.groebner(TermOrder::DegRevLex)?;
        Ok(gb.normal_form(f).is_zero())
    }

    /// Generators of the intersection with the subring spanned by all but
    /// the first `k` variables, via an elimination-order basis. The result
    /// lives in the same ring; its generators are free of the block.
    pub fn eliminate(&self, k: usize) -> Result<Ideal> {
        assert!(k < self.ring.nvars(), "cannot eliminate every variable");
        let gb = self.groebner(TermOrder::Elimination { block: k })?;
        let kept: Vec<Poly> = gb
            .elements()
            .iter()
            .filter(|p| p.free_of_first(k))
            .cloned()
            .collect();
        Ok(Ideal::new(&self.ring, kept)?.with_degree_guard(self.degree_guard))
    }

    /// I ∩ J via the auxiliary-variable construction t·I + (1−t)·J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(crate::polyring::ring_mismatch(&self.ring, &other.ring));
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::new(&self.ring, vec![])?.with_degree_guard(self.degree_guard));
        }
        let ext = self.ring.extended_front("t");
        let t = Poly::variable(&ext, 0);
        let one_minus_t = Poly::one(&ext) - t.clone();
        let mut gens: Vec<Poly> = Vec::new();
        for g in &self.generators {
            gens.push(&g.extend_front(&ext) * &t);
        }
        for h in &other.generators {
            gens.push(&h.extend_front(&ext) * &one_minus_t);
        }
        let guard = self.degree_guard.max(other.degree_guard);
        let extended = Ideal::new(&ext, gens)?.with_degree_guard(guard);
        let eliminated = extended.eliminate(1)?;
        let restricted: Vec<Poly> = eliminated
            .generators()
            .iter()
            .map(|p| p.restrict_front(&self.ring))
            .collect();
        Ok(Ideal::new(&self.ring, restricted)?.with_degree_guard(guard))
    }

    /// Ideal quotient (I : f), computed as (I ∩ (f)) with every generator
    /// divided exactly by f.
    pub fn quotient(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let principal =
            Ideal::new(&self.ring, vec![f.clone()])?.with_degree_guard(self.degree_guard);
        let meet = self.intersect(&principal)?;
        let quotients: Vec<Poly> = meet
            .generators()
            .iter()
            .map(|g| divide_exact(g, f).expect("generator of I ∩ (f) must be divisible by f"))
            .collect();
        Ok(Ideal::new(&self.ring, quotients)?.with_degree_guard(self.degree_guard))
    }

    /// Saturation (I : f^∞) via the extended-ring construction
    /// I + (y·f − 1) followed by elimination of y.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ext = self.ring.extended_front("y");
        let y = Poly::variable(&ext, 0);
        let mut gens: Vec<Poly> = self
            .generators
            .iter()
            .map(|g| g.extend_front(&ext))
            .collect();
        gens.push(&y * &f.extend_front(&ext) - Poly::one(&ext));
        let extended = Ideal::new(&ext, gens)?.with_degree_guard(self.degree_guard);
        let eliminated = extended.eliminate(1)?;
        let restricted: Vec<Poly> = eliminated
            .generators()
            .iter()
            .map(|p| p.restrict_front(&self.ring))
            .collect();
        Ok(Ideal::new(&self.ring, restricted)?.with_degree_guard(self.degree_guard))
    }

    /// Saturation with respect to the irrelevant maximal ideal
    /// (z1, ..., zl), computed as the intersection of the per-variable
    /// saturations. Two homogeneous ideals define the same closed subscheme
    /// of projective space iff their saturations agree.
    pub fn saturate_irrelevant(&self) -> Result<Ideal> {
        self.require_homogeneous()?;
        let vars: Vec<usize> = (0..self.ring.nvars()).collect();
        let saturated: Vec<Result<Ideal>> =
            crate::par::par_map(&vars, |&i| self.saturate(&Poly::variable(&self.ring, i)));
        let mut acc: Option<Ideal> = None;
        for s in saturated {
            let s = s?;
            acc = Some(match acc {
                None => s,
                Some(prev) => prev.intersect(&s)?,
            });
        }
        Ok(acc.expect("at least one variable"))
    }

    /// Radical membership via the Rabinowitsch trick: f ∈ √I iff
    /// 1 ∈ I + (1 − y·f) in the extended ring.
    pub fn radical_member(&self, f: &Poly) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(crate::polyring::ring_mismatch(&self.ring, f.ring()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        let ext = self.ring.extended_front("y");
        let y = Poly::variable(&ext, 0);
        let mut gens: Vec<Poly> = self
            .generators
            .iter()
            .map(|g| g.extend_front(&ext))
            .collect();
        gens.push(Poly::one(&ext) - &y * &f.extend_front(&ext));
        let extended = Ideal::new(&ext, gens)?.with_degree_guard(self.degree_guard);
        let gb = extended.groebner(TermOrder::DegRevLex)?;
        Ok(gb.contains_unit())
    }

    /// √I = √J, decided by two-way radical membership of the generators.
    pub fn radical_equal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(crate::polyring::ring_mismatch(&self.ring, &other.ring));
        }
        let forward: Vec<Result<bool>> =
            crate::par::par_map(self.generators(), |g| other.radical_member(g));
        for r in forward {
            if !r? {
                return Ok(false);
            }
        }
        let backward: Vec<Result<bool>> =
            crate::par::par_map(other.generators(), |g| self.radical_member(g));
        for r in backward {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Hilbert series of S/I, via the leading-term ideal of the degrevlex
    /// basis (the series of S/I and S/LT(I) agree).
    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        self.require_homogeneous()?;
        let gb = self.groebner(TermOrder::DegRevLex)?;
        Ok(HilbertSeries::from_leading_monomials(
            self.ring.nvars(),
            &gb.leading_monomials(),
        ))
    }

    /// Hilbert polynomial of S/I in the factorial normalization.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        Ok(HilbertPolynomial::from_series(&self.hilbert_series()?))
    }

    /// a_m = m! · (coefficient of d^m in HP). Zero when the scheme has
    /// dimension below m. With `strict` set, detecting dimension above m is
    /// an error; otherwise the coefficient is returned as defined (and must
    /// come out an integer).
    pub fn deg_m(&self, m: usize, strict: bool) -> Result<i64> {
        let hp = self.hilbert_polynomial()?;
        let Some(p) = hp.degree() else {
            return Ok(0);
        };
        if p < m {
            return Ok(0);
        }
        if p > m && strict {
            return Err(Error::DimensionExceeded {
                requested: m,
                found: p,
            });
        }
        let a = &hp.coefficients()[m];
        if !a.denom().is_one() {
            return Err(Error::NonIntegerDegree(a.to_string()));
        }
        a.numer()
            .to_i64()
            .ok_or_else(|| Error::Resource(format!("degree {a} out of i64 range")))
    }

    /// Total vector-space dimension of S/I when finite, i.e. when the
    /// cancelled series has denominator power zero.
    pub fn quotient_vecdim(&self) -> Result<Option<u64>> {
        let hs = self.hilbert_series()?;
        if hs.denom_power() > 0 {
            return Ok(None);
        }
        let total: BigInt = hs.numerator().iter().sum();
        Ok(Some(total.to_u64().expect("dimension fits in u64")))
    }
}

/// Equality of reduced degrevlex bases, the bit-exact ideal-equality test.
pub fn same_ideal(a: &Ideal, b: &Ideal) -> Result<bool> {
    let ga = a.groebner(TermOrder::DegRevLex)?;
    let gb = b.groebner(TermOrder::DegRevLex)?;
    Ok(ga.elements() == gb.elements())
}

/// Scheme-theoretic equality of Proj S/I and Proj S/J: saturate both with
/// respect to the irrelevant ideal and compare reduced degrevlex bases.
pub fn scheme_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    let sa = a.saturate_irrelevant()?;
    let sb = b.saturate_irrelevant()?;
    same_ideal(&sa, &sb)
}

/// Exact division g / f, or `None` if f does not divide g.
fn divide_exact(g: &Poly, f: &Poly) -> Option<Poly> {
    let ord = TermOrder::DegRevLex;
    let ring = g.ring().clone();
    let mut work = engine::to_ordered(g, ord);
    let divisor = engine::to_ordered(f, ord);
    let (fm, fc) = divisor[0].clone();
    let mut quotient: Vec<(Monomial, Rat)> = Vec::new();
    while !work.is_empty() {
        let (lm, lc) = work[0].clone();
        let q = lm.try_div(&fm)?;
        let c = &lc / &fc;
        work = engine::sub_scaled(&work, &c, &q, &divisor, ord);
        quotient.push((q, c));
    }
    Some(Poly::from_terms(&ring, quotient))
}
