//! Recovery of a central essential arrangement from its Jacobian ideal.
//!
//! The pipeline: infer the number of hyperplanes from the generator degrees,
//! enumerate candidate hyperplanes (lines through pairs of singular points
//! when the ambient dimension is 3, or a caller-supplied pool), score every
//! candidate by the degree of the sliced Jacobian scheme, accept exactly the
//! maximizers, and certify the answer by comparing saturations.

mod points;

use std::collections::BTreeSet;
use std::fmt;

use num::BigInt;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, FailedReconstruction, Result};
use crate::ideals::{scheme_equal, Ideal};
use crate::polyring::Homogeneity;
use crate::qlinalg::{primitive_integer_vector, Rat};

/// A rational point of projective space: primitive integer coordinates with
/// positive first nonzero entry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn from_rationals(coords: &[Rat]) -> ProjPoint {
        let coords = primitive_integer_vector(coords).expect("projective point is nonzero");
        ProjPoint { coords }
    }

    pub fn from_ints(coords: &[i64]) -> ProjPoint {
        let rats: Vec<Rat> = coords
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect();
        ProjPoint::from_rationals(&rats)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(BigInt::to_string).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// Audited output of a successful reconstruction.
#[derive(Clone, Debug)]
pub struct ReconstructionReport {
    /// |A|, inferred as 1 + the minimal generator degree.
    pub inferred_n: usize,
    /// Rational singular points (populated in the automated 3-variable path).
    pub singular_points: Vec<ProjPoint>,
    /// Every candidate with its slice degree, in canonical hyperplane order.
    pub candidates: Vec<(Hyperplane, i64)>,
    /// The hyperplanes achieving slice degree inferred_n - 1.
    pub accepted: Arrangement,
    /// Saturation of the input equals the saturation of the Jacobian ideal
    /// of the accepted arrangement; always true on success.
    pub certificate: bool,
}

/// Parses the ideal file format: `#` comments, a `dim l` header, then one
/// polynomial per line in the text grammar over variables z1..zl.
pub fn parse_ideal_file(text: &str) -> Result<Ideal> {
    let mut ring: Option<std::sync::Arc<crate::polyring::RingCtx>> = None;
    let mut gens: Vec<crate::polyring::Poly> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match &ring {
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
                        ring = Some(crate::polyring::RingCtx::new(n));
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "expected header 'dim <n>'".into(),
                        })
                    }
                }
            }
            Some(r) => {
                let poly = crate::polyring::Poly::parse(r, line)
                    .map_err(|msg| Error::Parse { line: line_no, msg })?;
                gens.push(poly);
            }
        }
    }
    match ring {
        Some(r) if !gens.is_empty() => Ideal::new(&r, gens),
        _ => Err(Error::Parse {
            line: text.lines().count(),
            msg: "no polynomials found".into(),
        }),
    }
}

/// Number of hyperplanes of the arrangement a Jacobian ideal came from:
/// partials of a degree-n product have degree n - 1, so n is one more than
/// the minimal generator degree.
pub fn infer_degree(j: &Ideal) -> Result<usize> {
    if j.generators().is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let mut min: Option<u32> = None;
    for g in j.generators() {
        match g.homogeneity() {
            Homogeneity::Degree(d) => min = Some(min.map_or(d, |m: u32| m.min(d))),
            Homogeneity::Zero => unreachable!("ideal generators are nonzero"),
            Homogeneity::No => return Err(Error::NotHomogeneous(g.to_string())),
        }
    }
    Ok(min.unwrap() as usize + 1)
}

/// deg_(l-3) of Proj S/(J + (beta_K)): the degree of the hyperplane slice of
/// the Jacobian scheme. For J = J(Q) of an arrangement this equals mu_A(K).
pub fn degree_slice(j: &Ideal, k: &Hyperplane) -> Result<i64> {
    let l = j.ring().nvars();
    assert!(l >= 3, "slicing needs ambient dimension >= 3");
    assert_eq!(k.ambient_dim(), l, "covector arity");
    j.plus(k.linear_form(j.ring()))?.deg_m(l - 3, false)
}

/// All rational points of V(J) in the projective plane. Errors if the locus
/// is positive-dimensional or has irrational points.
pub fn singular_points_p2(j: &Ideal) -> Result<Vec<ProjPoint>> {
    assert_eq!(
        j.ring().nvars(),
        3,
        "point enumeration is specific to the plane"
    );
    points::rational_points_p2(j)
}

/// Deduplicated lines through every pair of distinct points, as normalized
/// hyperplanes. In an essential arrangement every hyperplane carries at
/// least two singular flats, so this pool exhausts the arrangement.
pub fn candidate_hyperplanes(points: &[ProjPoint]) -> Vec<Hyperplane> {
    let mut out: BTreeSet<Hyperplane> = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let a = points[i].coords();
            let b = points[j].coords();
            let cross = [
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ];
            if let Ok(h) = Hyperplane::from_bigints(&cross) {
                out.insert(h);
            }
        }
    }
    out.into_iter().collect()
}

/// Slice degree of every candidate, in input order. The per-candidate
/// computations are independent and run on the worker pool; the result is
/// deterministic under any scheduling.
pub fn score_candidates(j: &Ideal, pool: &[Hyperplane]) -> Result<Vec<(Hyperplane, i64)>> {
    let slices: Vec<Result<i64>> = crate::par::par_map(pool, |k| degree_slice(j, k));
    let mut scored: Vec<(Hyperplane, i64)> = Vec::with_capacity(pool.len());
    for (k, s) in pool.iter().zip(slices) {
        scored.push((k.clone(), s?));
    }
    Ok(scored)
}

/// Full reconstruction. `candidates` may be supplied explicitly (mandatory
/// when the ambient dimension exceeds 3); in the plane the pool defaults to
/// lines through pairs of singular points. Accepts exactly the candidates
/// whose slice degree is maximal, requires their count to match the
/// inferred hyperplane count, and certifies by saturation equality.
pub fn reconstruct(j: &Ideal, candidates: Option<Vec<Hyperplane>>) -> Result<ReconstructionReport> {
    let l = j.ring().nvars();
    let n = infer_degree(j)?;
    let (singular_points, pool) = match candidates {
        Some(supplied) => {
            let set: BTreeSet<Hyperplane> = supplied.into_iter().collect();
            (Vec::new(), set.into_iter().collect::<Vec<_>>())
        }
        None => {
            if l != 3 {
                return Err(Error::CandidatesRequired);
            }
            let pts = singular_points_p2(j)?;
            let pool = candidate_hyperplanes(&pts);
            (pts, pool)
        }
    };

    let scored = score_candidates(j, &pool)?;

    let target = n as i64 - 1;
    let accepted_hyperplanes: Vec<Hyperplane> = scored
        .iter()
        .filter(|(_, s)| *s == target)
        .map(|(k, _)| k.clone())
        .collect();
    if accepted_hyperplanes.len() != n {
        return Err(Error::ReconstructionFailed(Box::new(
            FailedReconstruction {
                inferred_n: n,
                accepted: accepted_hyperplanes.clone(),
                candidates: scored,
                certificate: None,
                reason: format!(
                    "{} candidates reach the maximal slice degree {target}, expected {n}; \
                 the input is not the Jacobian ideal of an essential arrangement or the \
                 candidate pool is insufficient",
                    accepted_hyperplanes.len()
                ),
            },
        )));
    }

    let accepted = Arrangement::new(j.ring(), accepted_hyperplanes.clone())?;
    let recovered = accepted
        .jacobian_ideal()
        .with_degree_guard(j.degree_guard());
    let certificate = scheme_equal(j, &recovered)?;
    if !certificate {
        return Err(Error::ReconstructionFailed(Box::new(
            FailedReconstruction {
                inferred_n: n,
                accepted: accepted_hyperplanes,
                candidates: scored,
                certificate: Some(false),
                reason: "the saturation of the input differs from the saturated Jacobian ideal \
                     of the accepted arrangement"
                    .into(),
            },
        )));
    }

    Ok(ReconstructionReport {
        inferred_n: n,
        singular_points,
        candidates: scored,
        accepted,
        certificate: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Poly, RingCtx};
    use std::sync::Arc;

    fn a1() -> Arrangement {
        Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n").unwrap()
    }

    fn a2() -> Arrangement {
        Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n1 0 -1\n").unwrap()
    }

    fn h(v: &[i64]) -> Hyperplane {
        Hyperplane::from_ints(v).unwrap()
    }

    fn ideal(ring: &Arc<RingCtx>, gens: &[&str]) -> Ideal {
        Ideal::new(
            ring,
            gens.iter().map(|s| Poly::parse(ring, s).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn ideal_file_round_trip() {
        let text = "# three cubics\ndim 3\n2*z1*z2*z3 + z2^2*z3 - z2*z3^2\nz1^2*z3 + 2*z1*z2*z3 - z1*z3^2\nz1^2*z2 + z1*z2^2 - 2*z1*z2*z3\n";
        let j = parse_ideal_file(text).unwrap();
        assert_eq!(j.generators().len(), 3);
        assert_eq!(infer_degree(&j).unwrap(), 4);

        let err = parse_ideal_file("dim 3\nz1 + w\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_ideal_file("z1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn infer_degree_examples() {
        assert_eq!(infer_degree(&a1().jacobian_ideal()).unwrap(), 4);
        assert_eq!(infer_degree(&a2().jacobian_ideal()).unwrap(), 5);
        let ring = RingCtx::new(3);
        assert_eq!(infer_degree(&ideal(&ring, &["z1", "z2"])).unwrap(), 2);
        assert!(matches!(
            infer_degree(&ideal(&ring, &["z1 + z2^2"])),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn degree_slice_examples() {
        assert_eq!(
            degree_slice(&a1().jacobian_ideal(), &h(&[1, 0, 0])).unwrap(),
            3
        );
        let j2 = a2().jacobian_ideal();
        assert_eq!(degree_slice(&j2, &h(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(degree_slice(&j2, &h(&[1, 0, -1])).unwrap(), 4);
    }

    fn expected_a1_points() -> Vec<ProjPoint> {
        let mut pts: Vec<ProjPoint> = [
            [0, 0, 1],
            [0, 1, 1],
            [1, 0, 1],
            [0, 1, 0],
            [1, 0, 0],
            [1, -1, 0],
        ]
        .iter()
        .map(|c| ProjPoint::from_ints(c))
        .collect();
        pts.sort();
        pts
    }

    #[test]
    fn singular_points_of_a1() {
        let pts = singular_points_p2(&a1().jacobian_ideal()).unwrap();
        assert_eq!(pts, expected_a1_points());
    }

    #[test]
    fn singular_points_of_a_node() {
        let ring = RingCtx::new(3);
        // Q = z1 z2 in three variables: J = (z2, z1), one point [0:0:1]
        let j = ideal(&ring, &["z2", "z1"]);
        let pts = singular_points_p2(&j).unwrap();
        assert_eq!(pts, vec![ProjPoint::from_ints(&[0, 0, 1])]);
    }

    #[test]
    fn singular_points_of_a2_match_a1() {
        let pts = singular_points_p2(&a2().jacobian_ideal()).unwrap();
        assert_eq!(pts, expected_a1_points());
    }

    #[test]
    fn irrational_points_are_reported() {
        let ring = RingCtx::new(3);
        let j = ideal(&ring, &["z1^2 - 2*z3^2", "z2"]);
        assert!(matches!(
            singular_points_p2(&j),
            Err(Error::IrrationalLocus(_))
        ));
    }

    #[test]
    fn positive_dimensional_locus_is_reported() {
        let ring = RingCtx::new(3);
        let j = ideal(&ring, &["z1"]);
        assert!(matches!(
            singular_points_p2(&j),
            Err(Error::PositiveDimensional(_))
        ));
    }

    #[test]
    fn candidates_from_two_points() {
        let pts = vec![
            ProjPoint::from_ints(&[1, 0, 0]),
            ProjPoint::from_ints(&[0, 1, 0]),
        ];
        assert_eq!(candidate_hyperplanes(&pts), vec![h(&[0, 0, 1])]);
    }

    #[test]
    fn candidates_from_a1_points() {
        let pool = candidate_hyperplanes(&expected_a1_points());
        assert_eq!(pool.len(), 7);
        for true_line in a1().hyperplanes() {
            assert!(pool.contains(true_line));
        }
        for extra in [h(&[1, 1, 0]), h(&[0, 1, -1]), h(&[1, 0, -1])] {
            assert!(pool.contains(&extra));
        }
    }

    #[test]
    fn reconstructs_a1() {
        let report = reconstruct(&a1().jacobian_ideal(), None).unwrap();
        assert_eq!(report.inferred_n, 4);
        assert!(report.certificate);
        assert!(report.accepted.identical(&a1()));
        assert_eq!(report.candidates.len(), 7);
    }

    #[test]
    fn reconstructs_a2() {
        let report = reconstruct(&a2().jacobian_ideal(), None).unwrap();
        assert_eq!(report.inferred_n, 5);
        assert!(report.accepted.identical(&a2()));
    }

    #[test]
    fn four_dimensional_slices_match_the_moebius_sums() {
        let a = Arrangement::parse("dim 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n").unwrap();
        let j = a.jacobian_ideal();
        // slices are one-dimensional here, so this reads off a degree-1
        // coefficient of the Hilbert polynomial
        for k in a.hyperplanes() {
            assert_eq!(degree_slice(&j, k).unwrap(), 3);
            assert_eq!(a.mu_k(k), 3);
        }
        let outside = Hyperplane::from_ints(&[1, 1, 0, 0]).unwrap();
        assert_eq!(degree_slice(&j, &outside).unwrap(), 1);
        assert_eq!(a.mu_k(&outside), 1);
        let generic = Hyperplane::from_ints(&[1, 1, 1, 1]).unwrap();
        assert_eq!(degree_slice(&j, &generic).unwrap(), a.mu_k(&generic));
    }

    #[test]
    fn four_dimensional_reconstruction_with_a_supplied_pool() {
        let a = Arrangement::parse("dim 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n1 1 1 0\n").unwrap();
        assert!(a.is_essential());
        let j = a.jacobian_ideal();
        assert!(matches!(
            reconstruct(&j, None),
            Err(Error::CandidatesRequired)
        ));
        let mut pool = a.hyperplanes().to_vec();
        for probe in [[1i64, 1, 0, 0], [1, 0, 0, -1], [0, 1, 1, 1], [1, 2, 3, 4]] {
            pool.push(Hyperplane::from_ints(&probe).unwrap());
        }
        let report = reconstruct(&j, Some(pool)).unwrap();
        assert_eq!(report.inferred_n, 5);
        assert!(report.certificate);
        assert!(report.accepted.identical(&a));
        for (k, slice) in &report.candidates {
            assert_eq!(*slice, a.mu_k(k), "slice mismatch at {k}");
        }
    }

    #[test]
    fn insufficient_candidate_pool_fails() {
        let a = a1();
        let pool: Vec<Hyperplane> = a.hyperplanes()[..3].to_vec();
        let err = reconstruct(&a.jacobian_ideal(), Some(pool)).unwrap_err();
        match err {
            Error::ReconstructionFailed(details) => {
                assert_eq!(details.inferred_n, 4);
                assert_eq!(details.accepted.len(), 3);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
