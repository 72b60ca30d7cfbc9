//! Central hyperplane arrangements: parsing, defining polynomial, Jacobian
//! ideal, and the intersection lattice with its Möbius function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num::BigInt;

use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::polyring::{Monomial, Poly, RingCtx};
use crate::qlinalg::{primitive_integer_vector, Flat, QMatrix, Rat};

/// A hyperplane through the origin, stored as a primitive integer covector
/// with positive first nonzero entry. Proportional covectors normalize to
/// the same value, so `==` decides whether two linear forms cut out the
/// same hyperplane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hyperplane {
    covector: Vec<BigInt>,
}

impl Hyperplane {
    pub fn new(raw: &[Rat]) -> Result<Hyperplane> {
        let covector = primitive_integer_vector(raw).ok_or(Error::ZeroCovector)?;
        Ok(Hyperplane { covector })
    }

    pub fn from_ints(raw: &[i64]) -> Result<Hyperplane> {
        let rats: Vec<Rat> = raw.iter().map(|&x| Rat::from_integer(x.into())).collect();
        Hyperplane::new(&rats)
    }

    pub fn from_bigints(raw: &[BigInt]) -> Result<Hyperplane> {
        let rats: Vec<Rat> = raw.iter().map(|x| Rat::from_integer(x.clone())).collect();
        Hyperplane::new(&rats)
    }

    pub fn covector(&self) -> &[BigInt] {
        &self.covector
    }

    pub fn ambient_dim(&self) -> usize {
        self.covector.len()
    }

    /// The defining linear form as a polynomial.
    pub fn linear_form(&self, ring: &Arc<RingCtx>) -> Poly {
        assert_eq!(ring.nvars(), self.covector.len());
        Poly::from_terms(
            ring,
            self.covector
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(ring.nvars(), i), Rat::from_integer(c.clone()))),
        )
    }

    pub fn to_flat(&self) -> Flat {
        let row: Vec<Rat> = self
            .covector
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        Flat::from_normals(self.covector.len(), vec![row])
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.covector.iter().map(BigInt::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A central essential-or-not arrangement: an ordered list of distinct
/// hyperplanes in a fixed ring.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ring: Arc<RingCtx>,
    hyperplanes: Vec<Hyperplane>,
}

/// One element of the intersection lattice: the flat itself, the indices of
/// the hyperplanes containing it, and its Möbius value.
#[derive(Clone, Debug)]
pub struct LatticeFlat {
    pub flat: Flat,
    pub members: Vec<usize>,
    pub mu: i64,
}

impl LatticeFlat {
    pub fn codim(&self) -> usize {
        self.flat.codim()
    }
}

/// The full intersection lattice, closed under pairwise meets, sorted by
/// codimension and then canonically within each codimension.
#[derive(Clone, Debug)]
pub struct Lattice {
    flats: Vec<LatticeFlat>,
}

impl Lattice {
    pub fn flats(&self) -> &[LatticeFlat] {
        &self.flats
    }

    pub fn of_codim(&self, k: usize) -> impl Iterator<Item = &LatticeFlat> {
        self.flats.iter().filter(move |f| f.codim() == k)
    }
}

impl Arrangement {
    pub fn new(ring: &Arc<RingCtx>, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        let mut seen: BTreeSet<&Hyperplane> = BTreeSet::new();
        for h in &hyperplanes {
            assert_eq!(h.ambient_dim(), ring.nvars(), "covector arity");
            if !seen.insert(h) {
                return Err(Error::DuplicateHyperplane(h.to_string()));
            }
        }
        Ok(Arrangement {
            ring: ring.clone(),
            hyperplanes,
        })
    }

    /// Parses the arrangement file format: `#` comments, a `dim l` header,
    /// then one covector of `l` whitespace-separated rationals per line.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut dim: Option<usize> = None;
        let mut ring: Option<Arc<RingCtx>> = None;
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        let mut first_lines: BTreeMap<Hyperplane, usize> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match dim {
                None => {
                    let mut it = line.split_whitespace();
                    match (it.next(), it.next(), it.next()) {
                        (Some("dim"), Some(n), None) => {
                            let n: usize = n.parse().map_err(|_| Error::Parse {
                                line: line_no,
                                msg: format!("invalid dimension '{n}'"),
                            })?;
                            if n < 2 {
                                return Err(Error::Parse {
                                    line: line_no,
                                    msg: "dimension must be at least 2".into(),
                                });
                            }
                            dim = Some(n);
                            ring = Some(RingCtx::new(n));
                        }
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: "expected header 'dim <n>'".into(),
                            })
                        }
                    }
                }
                Some(n) => {
                    let tokens: Vec<&str> = line.split_whitespace().collect();
                    if tokens.len() != n {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected {n} entries, found {}", tokens.len()),
                        });
                    }
                    let mut cov: Vec<Rat> = Vec::with_capacity(n);
                    for t in tokens {
                        cov.push(crate::qlinalg::parse_rat(t).ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: format!("invalid rational '{t}'"),
                        })?);
                    }
                    let h = Hyperplane::new(&cov).map_err(|_| Error::Parse {
                        line: line_no,
                        msg: "zero covector".into(),
                    })?;
                    if let Some(&prev) = first_lines.get(&h) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!(
                                "duplicate hyperplane {h} (same as line {prev} after normalization)"
                            ),
                        });
                    }
                    first_lines.insert(h.clone(), line_no);
                    hyperplanes.push(h);
                }
            }
        }
        match (ring, hyperplanes.is_empty()) {
            (Some(ring), false) => Arrangement::new(&ring, hyperplanes),
            _ => Err(Error::Parse {
                line: text.lines().count(),
                msg: "no hyperplanes found".into(),
            }),
        }
    }

    /// Canonical file rendering (normalized covectors, one per line).
    pub fn to_file_string(&self) -> String {
        let mut out = format!("dim {}\n", self.ring.nvars());
        for h in &self.hyperplanes {
            out.push_str(&h.to_string());
            out.push('\n');
        }
        out
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Q = product of all defining linear forms, expanded; homogeneous of
    /// degree |A|.
    pub fn defining_polynomial(&self) -> Poly {
        let covs: Vec<Vec<Rat>> = self
            .hyperplanes
            .iter()
            .map(|h| {
                h.covector()
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect()
            })
            .collect();
        Poly::product_of_linears(&self.ring, &covs).expect("hyperplane covectors are nonzero")
    }

    /// The ideal of all first partials of Q.
    pub fn jacobian_ideal(&self) -> Ideal {
        let q = self.defining_polynomial();
        let gens: Vec<Poly> = (0..self.ring.nvars())
            .map(|i| q.partial_derivative(i).expect("index in range"))
            .collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// All flats obtained by closing the hyperplanes under pairwise meets,
    /// with Möbius values computed top-down: mu(whole space) = 1 and every
    /// proper flat balances its strict over-flats to zero.
    pub fn intersection_lattice(&self) -> Lattice {
        let ambient = self.ring.nvars();
        let mut set: BTreeSet<Flat> = BTreeSet::new();
        set.insert(Flat::whole_space(ambient));
        for h in &self.hyperplanes {
            set.insert(h.to_flat());
        }
        loop {
            let flats: Vec<Flat> = set.iter().cloned().collect();
            let mut grew = false;
            for i in 0..flats.len() {
                for j in i + 1..flats.len() {
                    let meet = flats[i].meet(&flats[j]);
                    if set.insert(meet) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        let mut flats: Vec<Flat> = set.into_iter().collect();
        flats.sort_by(|a, b| a.codim().cmp(&b.codim()).then_with(|| a.cmp(b)));

        let mut mu: Vec<i64> = vec![0; flats.len()];
        for i in 0..flats.len() {
            if flats[i].codim() == 0 {
                mu[i] = 1;
                continue;
            }
            let mut acc = 0i64;
            for j in 0..flats.len() {
                if j != i && flats[j].contains_flat(&flats[i]) {
                    acc += mu[j];
                }
            }
            mu[i] = -acc;
        }

        let lattice_flats: Vec<LatticeFlat> = flats
            .into_iter()
            .zip(mu)
            .map(|(flat, mu)| {
                let members: Vec<usize> = self
                    .hyperplanes
                    .iter()
                    .enumerate()
                    .filter(|(_, h)| h.to_flat().contains_flat(&flat))
                    .map(|(i, _)| i)
                    .collect();
                LatticeFlat { flat, members, mu }
            })
            .collect();
        Lattice {
            flats: lattice_flats,
        }
    }

    /// The codimension-2 flats; for these mu(X) = |A_X| - 1, which is
    /// cross-checked against the general recursion.
    pub fn l2_flats(&self) -> Vec<LatticeFlat> {
        let lattice = self.intersection_lattice();
        let out: Vec<LatticeFlat> = lattice.of_codim(2).cloned().collect();
        for f in &out {
            debug_assert_eq!(f.mu, f.members.len() as i64 - 1);
        }
        out
    }

    /// Q_X: the product of the linear forms of the hyperplanes containing X.
    pub fn flat_polynomial(&self, x: &LatticeFlat) -> Poly {
        let covs: Vec<Vec<Rat>> = x
            .members
            .iter()
            .map(|&i| {
                self.hyperplanes[i]
                    .covector()
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect()
            })
            .collect();
        Poly::product_of_linears(&self.ring, &covs).expect("nonzero covectors")
    }

    /// I(X): the prime of the flat, generated by the rows of its canonical
    /// normal matrix.
    pub fn flat_ideal(&self, x: &LatticeFlat) -> Ideal {
        linear_ideal(&self.ring, &x.flat)
    }

    /// mu_A(K): the sum of mu(X) over codimension-2 flats contained in K.
    /// K does not have to belong to the arrangement.
    pub fn mu_k(&self, k: &Hyperplane) -> i64 {
        assert!(self.ring.nvars() >= 3, "mu_K needs ambient dimension >= 3");
        let k_flat = k.to_flat();
        self.l2_flats()
            .iter()
            .filter(|x| k_flat.contains_flat(&x.flat))
            .map(|x| x.mu)
            .sum()
    }

    /// True iff the common intersection of all hyperplanes is the origin.
    pub fn is_essential(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self
            .hyperplanes
            .iter()
            .map(|h| {
                h.covector()
                    .iter()
                    .map(|c| Rat::from_integer(c.clone()))
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return false;
        }
        QMatrix::from_rows(rows).rank() == self.ring.nvars()
    }

    /// Identical arrangements have equal normalized hyperplane sets; this is
    /// the same as the defining polynomials agreeing up to a scalar.
    pub fn identical(&self, other: &Arrangement) -> bool {
        if self.ring.nvars() != other.ring.nvars() {
            return false;
        }
        let a: BTreeSet<&Hyperplane> = self.hyperplanes.iter().collect();
        let b: BTreeSet<&Hyperplane> = other.hyperplanes.iter().collect();
        a == b
    }
}

/// The ideal generated by the linear forms in the rows of a flat's normal
/// matrix: the prime of the flat.
pub fn linear_ideal(ring: &Arc<RingCtx>, flat: &Flat) -> Ideal {
    let n = ring.nvars();
    let gens: Vec<Poly> = (0..flat.codim())
        .map(|r| {
            Poly::from_terms(
                ring,
                flat.normals()
                    .row(r)
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (Monomial::var(n, i), c.clone())),
            )
        })
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::same_ideal;
    use crate::qlinalg::rat_int;

    pub(crate) const A1_FILE: &str = "dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n";

    fn a1() -> Arrangement {
        Arrangement::parse(A1_FILE).unwrap()
    }

    fn a2() -> Arrangement {
        Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n1 0 -1\n").unwrap()
    }

    fn h(v: &[i64]) -> Hyperplane {
        Hyperplane::from_ints(v).unwrap()
    }

    #[test]
    fn covector_normalization_is_canonical() {
        assert_eq!(h(&[2, 0, 0]), h(&[1, 0, 0]));
        assert_eq!(h(&[-3, 6, 9]), h(&[1, -2, -3]));
        assert_eq!(
            Hyperplane::new(&[rat_int(0), crate::qlinalg::rat(-1, 2), rat_int(1)]).unwrap(),
            h(&[0, 1, -2])
        );
        assert!(matches!(
            Hyperplane::from_ints(&[0, 0, 0]),
            Err(Error::ZeroCovector)
        ));
    }

    #[test]
    fn parse_a1() {
        let a = a1();
        assert_eq!(a.len(), 4);
        assert_eq!(a.ring().nvars(), 3);
    }

    #[test]
    fn parse_rejects_duplicates_with_line_numbers() {
        let err = Arrangement::parse("dim 3\n2 0 0\n1 0 0\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("duplicate"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_wrong_arity_and_bad_tokens() {
        let err = Arrangement::parse("dim 3\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Arrangement::parse("dim 3\n1 x 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Arrangement::parse("1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn defining_polynomial_of_a1() {
        let q = a1().defining_polynomial();
        assert_eq!(q.to_string(), "z1^2*z2*z3 + z1*z2^2*z3 - z1*z2*z3^2");
    }

    #[test]
    fn jacobian_ideal_of_a1_has_three_cubics() {
        let j = a1().jacobian_ideal();
        assert_eq!(j.generators().len(), 3);
        for g in j.generators() {
            assert_eq!(g.homogeneity().degree(), Some(3));
        }
    }

    #[test]
    fn jacobian_of_a_single_hyperplane_is_the_unit_ideal() {
        let ring = RingCtx::new(3);
        let a = Arrangement::new(&ring, vec![h(&[1, 0, 0])]).unwrap();
        let j = a.jacobian_ideal();
        assert!(j.contains(&Poly::one(&ring)).unwrap());
    }

    #[test]
    fn jacobian_of_a_node() {
        let ring = RingCtx::new(2);
        let a = Arrangement::new(&ring, vec![h(&[1, 0]), h(&[0, 1])]).unwrap();
        let j = a.jacobian_ideal();
        let expect = Ideal::new(
            &ring,
            vec![
                Poly::parse(&ring, "z1").unwrap(),
                Poly::parse(&ring, "z2").unwrap(),
            ],
        )
        .unwrap();
        assert!(same_ideal(&j, &expect).unwrap());
    }

    #[test]
    fn a1_lattice_shape_and_moebius() {
        let lattice = a1().intersection_lattice();
        let counts: Vec<usize> = (0..=3).map(|k| lattice.of_codim(k).count()).collect();
        assert_eq!(counts, vec![1, 4, 6, 1]);
        for x in lattice.of_codim(2) {
            assert_eq!(x.mu, 1);
            assert_eq!(x.members.len(), 2);
        }
        let origin = lattice.of_codim(3).next().unwrap();
        assert_eq!(origin.mu, -3);
        assert_eq!(origin.members.len(), 4);
    }

    #[test]
    fn a2_lattice_moebius_values() {
        let a = a2();
        let l2 = a.l2_flats();
        assert_eq!(l2.len(), 6);
        let mut mus: Vec<i64> = l2.iter().map(|x| x.mu).collect();
        mus.sort();
        assert_eq!(mus, vec![1, 1, 1, 1, 2, 2]);
        let sum_sq: i64 = l2.iter().map(|x| x.mu * x.mu).sum();
        assert_eq!(sum_sq, 12);
    }

    #[test]
    fn boolean_lattice() {
        let ring = RingCtx::new(3);
        let a = Arrangement::new(&ring, vec![h(&[1, 0, 0]), h(&[0, 1, 0]), h(&[0, 0, 1])]).unwrap();
        let lattice = a.intersection_lattice();
        assert_eq!(lattice.of_codim(2).count(), 3);
        for x in lattice.of_codim(2) {
            assert_eq!(x.mu, 1);
        }
        assert_eq!(lattice.of_codim(3).next().unwrap().mu, -1);
    }

    #[test]
    fn lattice_is_closed_under_meets() {
        let lattice = a2().intersection_lattice();
        let flats: Vec<&Flat> = lattice.flats().iter().map(|f| &f.flat).collect();
        for a in &flats {
            for b in &flats {
                let m = a.meet(b);
                assert!(flats.iter().any(|f| **f == m));
            }
        }
    }

    #[test]
    fn flat_polynomial_and_ideal_for_a1() {
        let a = a1();
        let l2 = a.l2_flats();
        let axis = l2
            .iter()
            .find(|x| x.members == vec![0, 1])
            .expect("flat of H1 and H2");
        assert_eq!(a.flat_polynomial(axis).to_string(), "z1*z2");
        let ring = a.ring().clone();
        let expect = Ideal::new(
            &ring,
            vec![
                Poly::parse(&ring, "z1").unwrap(),
                Poly::parse(&ring, "z2").unwrap(),
            ],
        )
        .unwrap();
        assert!(same_ideal(&a.flat_ideal(axis), &expect).unwrap());
    }

    #[test]
    fn flat_polynomial_of_a2_triple_flat() {
        let a = a2();
        let l2 = a.l2_flats();
        // (z1, z3) lies on H1, H3, H5
        let x = l2.iter().find(|x| x.members == vec![0, 2, 4]).unwrap();
        let q_x = a.flat_polynomial(x);
        let ring = a.ring().clone();
        let expect = Poly::product_of_linears(
            &ring,
            &[
                vec![rat_int(1), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(0), rat_int(1)],
                vec![rat_int(1), rat_int(0), rat_int(-1)],
            ],
        )
        .unwrap();
        assert_eq!(q_x, expect);
    }

    #[test]
    fn q_splits_as_flat_polynomial_times_complement() {
        for a in [a1(), a2()] {
            let q = a.defining_polynomial();
            for x in a.l2_flats() {
                let q_x = a.flat_polynomial(&x);
                let rest: Vec<usize> = (0..a.len()).filter(|i| !x.members.contains(i)).collect();
                let covs: Vec<Vec<Rat>> = rest
                    .iter()
                    .map(|&i| {
                        a.hyperplanes()[i]
                            .covector()
                            .iter()
                            .map(|c| Rat::from_integer(c.clone()))
                            .collect()
                    })
                    .collect();
                let q_bar = Poly::product_of_linears(a.ring(), &covs).unwrap();
                assert_eq!(&q_x * &q_bar, q);
            }
        }
    }

    #[test]
    fn mu_k_examples() {
        let a = a1();
        assert_eq!(a.mu_k(&h(&[1, 0, 0])), 3);

        let a = a2();
        assert_eq!(a.mu_k(&h(&[1, 0, -1])), 4);
        assert_eq!(a.mu_k(&h(&[1, 1, 0])), 2);
    }

    #[test]
    fn mu_k_on_members_is_size_minus_one() {
        for a in [a1(), a2()] {
            for k in a.hyperplanes() {
                assert_eq!(a.mu_k(k), a.len() as i64 - 1);
            }
        }
    }

    #[test]
    fn essential_examples() {
        assert!(a1().is_essential());
        let ring = RingCtx::new(3);
        let thin = Arrangement::new(&ring, vec![h(&[1, 0, 0]), h(&[0, 1, 0])]).unwrap();
        assert!(!thin.is_essential());
        let tri =
            Arrangement::new(&ring, vec![h(&[1, 0, 0]), h(&[1, 1, 0]), h(&[1, 1, 1])]).unwrap();
        assert!(tri.is_essential());
    }

    #[test]
    fn identical_is_scale_and_order_insensitive() {
        let a = a1();
        let ring = a.ring().clone();
        let scrambled = Arrangement::new(
            &ring,
            vec![h(&[7, 7, -7]), h(&[0, 0, 3]), h(&[1, 0, 0]), h(&[0, 5, 0])],
        )
        .unwrap();
        assert!(a.identical(&scrambled));
        assert!(!a.identical(&a2()));
        let smaller =
            Arrangement::new(&ring, vec![h(&[1, 0, 0]), h(&[0, 1, 0]), h(&[0, 0, 1])]).unwrap();
        assert!(!a.identical(&smaller));
    }

    #[test]
    fn distinct_flats_on_an_outside_hyperplane_have_disjoint_members() {
        let a = a2();
        let k = h(&[1, 1, 0]); // not in A2
        assert!(!a.hyperplanes().contains(&k));
        let k_flat = k.to_flat();
        let on_k: Vec<LatticeFlat> = a
            .l2_flats()
            .into_iter()
            .filter(|x| k_flat.contains_flat(&x.flat))
            .collect();
        assert!(on_k.len() >= 2);
        for i in 0..on_k.len() {
            for j in i + 1..on_k.len() {
                let inter: Vec<_> = on_k[i]
                    .members
                    .iter()
                    .filter(|m| on_k[j].members.contains(m))
                    .collect();
                assert!(inter.is_empty());
            }
        }
    }
}
