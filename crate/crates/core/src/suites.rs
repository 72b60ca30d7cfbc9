//! Seeded verification suites. Each suite checks one family of exact
//! identities over a corpus of fixed and randomly generated arrangements,
//! reporting per-case pass/fail with counterexample details. All randomness
//! is seeded explicitly so failures reproduce bit-exactly.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{linear_ideal, Arrangement, Hyperplane};
use crate::error::Result;
use crate::ideals::{audit, count_standard_monomials, same_ideal, scheme_equal, Ideal};
use crate::polyring::{Poly, RingCtx, TermOrder};
use crate::qlinalg::{rat, Rat};
use crate::reconstruct::{degree_slice, infer_degree, reconstruct};

/// Outcome of one checked property instance.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    /// Counterexample dump or error text when the case failed.
    pub detail: Option<String>,
}

/// Outcome of a whole suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: Option<u64>,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(name: &'static str, seed: Option<u64>) -> SuiteReport {
        SuiteReport {
            name,
            seed,
            cases: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn summary(&self) -> String {
        let ok = self.cases.iter().filter(|c| c.pass).count();
        format!(
            "suite {}: {}/{} cases passed{}",
            self.name,
            ok,
            self.cases.len(),
            match self.seed {
                Some(s) => format!(" (seed {s})"),
                None => String::new(),
            }
        )
    }

    /// Records a case. `outcome` is Ok(None) on pass, Ok(Some(dump)) on a
    /// counterexample, Err on a computation error.
    fn record(&mut self, label: impl Into<String>, outcome: Result<Option<String>>) {
        let (pass, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(dump)) => (false, Some(dump)),
            Err(e) => (false, Some(format!("error: {e}"))),
        };
        self.cases.push(CaseResult {
            label: label.into(),
            pass,
            detail,
        });
    }
}

fn pass_if(cond: bool, dump: impl FnOnce() -> String) -> Result<Option<String>> {
    if cond {
        Ok(None)
    } else {
        Ok(Some(dump()))
    }
}

// ---------------------------------------------------------------------------
// corpus

/// Four planes: the three coordinate planes and z1 + z2 - z3.
pub fn four_planes() -> Arrangement {
    Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n").unwrap()
}

/// The previous arrangement with z1 - z3 added.
pub fn five_planes() -> Arrangement {
    Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 -1\n1 0 -1\n").unwrap()
}

/// The three coordinate planes.
pub fn boolean_three() -> Arrangement {
    Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap()
}

/// Five planes with every triple of normals independent, so all ten
/// pairwise intersection lines are distinct.
pub fn generic_five() -> Arrangement {
    Arrangement::parse("dim 3\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n1 2 3\n").unwrap()
}

/// A random essential arrangement of `n` planes in 3 variables with small
/// integer covectors.
pub fn random_essential_arrangement(rng: &mut ChaCha8Rng, n: usize) -> Arrangement {
    let ring = RingCtx::new(3);
    loop {
        let mut hyps: Vec<Hyperplane> = Vec::new();
        let mut attempts = 0;
        while hyps.len() < n && attempts < 200 {
            attempts += 1;
            let cov: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            if cov.iter().all(|&c| c == 0) {
                continue;
            }
            let h = Hyperplane::from_ints(&cov).unwrap();
            if !hyps.contains(&h) {
                hyps.push(h);
            }
        }
        if hyps.len() != n {
            continue;
        }
        let arr = Arrangement::new(&ring, hyps).unwrap();
        if arr.is_essential() {
            return arr;
        }
    }
}

/// A random hyperplane not in the arrangement.
pub fn random_outside_hyperplane(rng: &mut ChaCha8Rng, a: &Arrangement) -> Hyperplane {
    loop {
        let cov: Vec<i64> = (0..a.ring().nvars())
            .map(|_| rng.gen_range(-3..=3))
            .collect();
        if cov.iter().all(|&c| c == 0) {
            continue;
        }
        let h = Hyperplane::from_ints(&cov).unwrap();
        if !a.hyperplanes().contains(&h) {
            return h;
        }
    }
}

// ---------------------------------------------------------------------------
// suites

/// Two-variable restriction identity: for Q a product of n distinct lines,
/// J(Q) + (z2) = (z1^(n-1), z2) and the quotient has dimension n - 1.
pub fn suite_lem2dim(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lem2dim", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = RingCtx::new(2);
    for n in 2..=7usize {
        for trial in 0..20 {
            let mut slopes: Vec<Rat> = Vec::new();
            while slopes.len() < n {
                let s = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                if !slopes.contains(&s) {
                    slopes.push(s);
                }
            }
            let label = format!("n={n} trial={trial}");
            let outcome = lem2dim_case(&ring, &slopes, n);
            report.record(label, outcome);
        }
    }
    report
}

fn lem2dim_case(ring: &Arc<RingCtx>, slopes: &[Rat], n: usize) -> Result<Option<String>> {
    let covectors: Vec<Vec<Rat>> = slopes
        .iter()
        .map(|s| vec![Rat::from_integer(1.into()), -s.clone()])
        .collect();
    let q = Poly::product_of_linears(ring, &covectors)?;
    let ideal = Ideal::new(
        ring,
        vec![
            q.partial_derivative(0)?,
            q.partial_derivative(1)?,
            Poly::variable(ring, 1),
        ],
    )?;
    let gb = ideal.groebner(TermOrder::DegRevLex)?;
    let expected = vec![
        Poly::variable(ring, 1),
        Poly::parse(ring, &format!("z1^{}", n - 1)).unwrap(),
    ];
    if gb.elements() != expected {
        return Ok(Some(format!(
            "slopes {:?}: basis {:?} instead of (z1^{}, z2)",
            slopes.iter().map(Rat::to_string).collect::<Vec<_>>(),
            gb.elements()
                .iter()
                .map(Poly::to_string)
                .collect::<Vec<_>>(),
            n - 1
        )));
    }
    let dim = ideal.quotient_vecdim()?;
    pass_if(dim == Some(n as u64 - 1), || {
        format!(
            "slopes {slopes:?}: quotient dimension {dim:?}, expected {}",
            n - 1
        )
    })
}

/// The reduced singular scheme forgets the arrangement: both Jacobian
/// ideals of the four- and five-plane examples have the same radical (the
/// six named point primes), while their saturations differ.
pub fn suite_radical() -> SuiteReport {
    let mut report = SuiteReport::new("radical", None);
    let a1 = four_planes();
    let a2 = five_planes();
    let j1 = a1.jacobian_ideal();
    let j2 = a2.jacobian_ideal();

    report.record(
        "radical_equal(J(Q1), J(Q2))",
        j1.radical_equal(&j2)
            .and_then(|eq| pass_if(eq, || "radicals differ".into())),
    );

    let primes_meet = six_point_primes_intersection(a1.ring());
    match &primes_meet {
        Ok(meet) => {
            report.record(
                "intersection of the six point primes is radical-equal to J(Q1)",
                meet.radical_equal(&j1)
                    .and_then(|eq| pass_if(eq, || "radicals differ".into())),
            );
            report.record(
                "intersection of the six point primes is radical-equal to J(Q2)",
                meet.radical_equal(&j2)
                    .and_then(|eq| pass_if(eq, || "radicals differ".into())),
            );
            report.record(
                "a radical presentation infers the wrong hyperplane count",
                radical_infer_check(meet, a2.len()),
            );
            report.record(
                "the radical does not certify against the five-plane Jacobian scheme",
                scheme_equal(meet, &j2)
                    .and_then(|eq| pass_if(!eq, || "saturations unexpectedly equal".into())),
            );
            report.record(
                "reconstruction from the radical recovers the four-plane arrangement",
                radical_reconstruct_check(meet, &a1, &a2),
            );
        }
        Err(e) => report.record(
            "intersection of the six point primes",
            Err(crate::error::Error::Resource(format!(
                "could not build intersection: {e}"
            ))),
        ),
    }

    report.record("Sat(J(Q1)) differs from Sat(J(Q2))", {
        (|| {
            let s1 = j1.saturate_irrelevant()?;
            let s2 = j2.saturate_irrelevant()?;
            let eq = same_ideal(&s1, &s2)?;
            pass_if(!eq, || "saturations are equal".into())
        })()
    });

    report
}

/// The six codimension-2 primes of the shared singular locus.
fn six_point_primes_intersection(ring: &Arc<RingCtx>) -> Result<Ideal> {
    let pairs: [[&str; 2]; 6] = [
        ["z1", "z2"],
        ["z1", "z2 - z3"],
        ["z2", "z1 - z3"],
        ["z1", "z3"],
        ["z2", "z3"],
        ["z1 + z2", "z3"],
    ];
    let mut acc: Option<Ideal> = None;
    for pair in pairs {
        let prime = Ideal::new(
            ring,
            pair.iter().map(|s| Poly::parse(ring, s).unwrap()).collect(),
        )?;
        acc = Some(match acc {
            None => prime,
            Some(prev) => prev.intersect(&prime)?,
        });
    }
    Ok(acc.unwrap())
}

fn radical_infer_check(meet: &Ideal, n_a2: usize) -> Result<Option<String>> {
    // present the radical by its reduced basis, as a consumer would see it
    let gb = meet.groebner(TermOrder::DegRevLex)?;
    let presented = Ideal::new(meet.ring(), gb.elements().to_vec())?;
    let inferred = infer_degree(&presented)?;
    pass_if(inferred != n_a2, || {
        format!("inferred {inferred} which matches |A| = {n_a2}")
    })
}

fn radical_reconstruct_check(
    meet: &Ideal,
    a1: &Arrangement,
    a2: &Arrangement,
) -> Result<Option<String>> {
    let gb = meet.groebner(TermOrder::DegRevLex)?;
    let presented = Ideal::new(meet.ring(), gb.elements().to_vec())?;
    let report = reconstruct(&presented, None)?;
    if !report.accepted.identical(a1) {
        return Ok(Some(
            "reconstruction from the radical did not return the four-plane arrangement".into(),
        ));
    }
    pass_if(!report.accepted.identical(a2), || {
        "reconstruction from the radical returned the five-plane arrangement".into()
    })
}

/// Builds the shared corpus: the fixed examples plus seeded random
/// essential arrangements of 3 to 6 planes.
fn corpus(seed: u64, random_count: usize) -> Vec<(String, Arrangement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(String, Arrangement)> = vec![
        ("four-plane".into(), four_planes()),
        ("five-plane".into(), five_planes()),
        ("boolean".into(), boolean_three()),
    ];
    for i in 0..random_count {
        let n = rng.gen_range(3..=6);
        let a = random_essential_arrangement(&mut rng, n);
        out.push((format!("random{i}(n={n})"), a));
    }
    out
}

/// Degree/Möbius agreement and the slice-maximality inequality, computed on
/// the same corpus in one pass: for every K in A, deg-slice = mu_A(K) =
/// |A|-1; for sampled K outside A, deg-slice = mu_A(K) < |A|-1.
pub fn suite_degree_and_mull(seed: u64) -> (SuiteReport, SuiteReport) {
    let mut degree = SuiteReport::new("degree", Some(seed));
    let mut mull = SuiteReport::new("mull", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for (name, a) in corpus(seed, 10) {
        let j = a.jacobian_ideal();
        let n = a.len() as i64;
        let mut ks: Vec<(Hyperplane, bool)> =
            a.hyperplanes().iter().map(|k| (k.clone(), true)).collect();
        for _ in 0..5 {
            ks.push((random_outside_hyperplane(&mut rng, &a), false));
        }
        let slices: Vec<Result<i64>> = crate::par::par_map(&ks, |(k, _)| degree_slice(&j, k));
        for ((k, inside), slice) in ks.iter().zip(slices) {
            let mu = a.mu_k(k);
            let label = format!("{name}: K = ({k}){}", if *inside { " in A" } else { "" });
            degree.record(
                label.clone(),
                slice
                    .and_then(|s| pass_if(s == mu, || format!("deg-slice {s} but mu_A(K) = {mu}"))),
            );
            if *inside {
                mull.record(
                    label,
                    pass_if(mu == n - 1, || format!("mu_A(K) = {mu}, |A|-1 = {}", n - 1)),
                );
            } else {
                let disjoint = flats_on_k_have_disjoint_members(&a, k);
                mull.record(
                    label,
                    pass_if(mu < n - 1 && disjoint, || {
                        if disjoint {
                            format!("mu_A(K) = {mu} not below {}", n - 1)
                        } else {
                            "two flats inside K share a hyperplane".into()
                        }
                    }),
                );
            }
        }
    }
    (degree, mull)
}

/// Distinct codimension-2 flats inside a hyperplane K outside A never share
/// a member hyperplane.
fn flats_on_k_have_disjoint_members(a: &Arrangement, k: &Hyperplane) -> bool {
    let k_flat = k.to_flat();
    let on_k: Vec<_> = a
        .l2_flats()
        .into_iter()
        .filter(|x| k_flat.contains_flat(&x.flat))
        .collect();
    for i in 0..on_k.len() {
        for j in i + 1..on_k.len() {
            if on_k[i].members.iter().any(|m| on_k[j].members.contains(m)) {
                return false;
            }
        }
    }
    true
}

/// Round trip: reconstructing from the Jacobian ideal returns the original
/// arrangement with a true saturation certificate.
pub fn suite_roundtrip(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("roundtrip", Some(seed));
    let mut arrangements: Vec<(String, Arrangement)> = vec![
        ("four-plane".into(), four_planes()),
        ("five-plane".into(), five_planes()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..10 {
        let n = rng.gen_range(3..=6);
        arrangements.push((
            format!("random{i}(n={n})"),
            random_essential_arrangement(&mut rng, n),
        ));
    }
    for (name, a) in arrangements {
        let outcome = (|| {
            let rep = reconstruct(&a.jacobian_ideal(), None)?;
            if !rep.certificate {
                return Ok(Some("certificate false".into()));
            }
            pass_if(rep.accepted.identical(&a), || {
                format!(
                    "recovered {:?} instead of {:?}",
                    rep.accepted
                        .hyperplanes()
                        .iter()
                        .map(Hyperplane::to_string)
                        .collect::<Vec<_>>(),
                    a.hyperplanes()
                        .iter()
                        .map(Hyperplane::to_string)
                        .collect::<Vec<_>>()
                )
            })
        })();
        report.record(
            format!("{name}: reconstruct(J(Q)) is identical to A"),
            outcome,
        );
    }
    report
}

/// Degree identities: deg J(Q) = sum of mu(X)^2, the flat-local Jacobian
/// ideals have degree mu(X)^2, contain J(Q), and their radicals are the
/// flat primes.
pub fn suite_degree_identities() -> SuiteReport {
    let mut report = SuiteReport::new("identities", None);
    for (name, a, expected) in [
        ("four-plane", four_planes(), 6i64),
        ("five-plane", five_planes(), 12),
        ("generic-five", generic_five(), 10),
    ] {
        let j = a.jacobian_ideal();
        report.record(
            format!("{name}: deg J(Q) = {expected}"),
            j.deg_m(0, false)
                .and_then(|d| pass_if(d == expected, || format!("deg_0 = {d}"))),
        );
    }
    for (name, a) in [
        ("four-plane", four_planes()),
        ("five-plane", five_planes()),
        ("boolean", boolean_three()),
        ("generic-five", generic_five()),
    ] {
        let j = a.jacobian_ideal();
        let flats = a.l2_flats();
        let per_flat: Vec<Result<Option<String>>> = crate::par::par_map(&flats, |x| {
            let q_x = a.flat_polynomial(x);
            let j_x = Ideal::new(a.ring(), {
                (0..3)
                    .map(|i| q_x.partial_derivative(i))
                    .collect::<Result<Vec<_>>>()?
            })?;
            let deg = j_x.deg_m(0, false)?;
            if deg != x.mu * x.mu {
                return Ok(Some(format!(
                    "deg J(Q_X) = {deg} but mu(X)^2 = {}",
                    x.mu * x.mu
                )));
            }
            for g in j.generators() {
                if !j_x.contains(g)? {
                    return Ok(Some(format!("generator {g} of J(Q) is not in J(Q_X)")));
                }
            }
            let prime = linear_ideal(a.ring(), &x.flat);
            if !j_x.radical_equal(&prime)? {
                return Ok(Some("radical of J(Q_X) differs from I(X)".into()));
            }
            Ok(None)
        });
        for (x, outcome) in flats.iter().zip(per_flat) {
            report.record(
                format!("{name}: flat with members {:?}, mu = {}", x.members, x.mu),
                outcome,
            );
        }
    }
    report
}

/// Engine self-checks: every basis computed while the audit flag is on has
/// already been validated (S-pairs reduce to zero, reducedness); here we
/// assert the audit actually ran and check the Hilbert machinery against
/// direct standard-monomial counts.
pub fn suite_engine_selfchecks(seed: u64) -> SuiteReport {
    let was_enabled = audit::enabled();
    audit::set_enabled(true);
    let mut report = SuiteReport::new("selfchecks", Some(seed));
    let before = audit::count();

    let a1 = four_planes();
    let a2 = five_planes();
    let mut ideals: Vec<(String, Ideal)> = vec![
        ("J(Q1)".into(), a1.jacobian_ideal()),
        ("J(Q2)".into(), a2.jacobian_ideal()),
        (
            "J(Q1) + (z1)".into(),
            a1.jacobian_ideal()
                .plus(Poly::parse(a1.ring(), "z1").unwrap())
                .unwrap(),
        ),
    ];
    if let Ok(meet) = six_point_primes_intersection(a1.ring()) {
        ideals.push(("six point primes".into(), meet));
    }
    if let Ok(sat) = a1.jacobian_ideal().saturate_irrelevant() {
        ideals.push(("Sat(J(Q1))".into(), sat));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..3 {
        let n = rng.gen_range(3..=5);
        let a = random_essential_arrangement(&mut rng, n);
        let k = random_outside_hyperplane(&mut rng, &a);
        let sliced = a.jacobian_ideal().plus(k.linear_form(a.ring())).unwrap();
        ideals.push((format!("random slice {i}"), sliced));
    }

    for (name, ideal) in &ideals {
        report.record(
            format!("{name}: Hilbert polynomial matches standard-monomial counts"),
            hilbert_count_check(ideal),
        );
    }

    let audited = audit::count() - before;
    report.record(
        format!("audit hook ran on every basis ({audited} bases audited)"),
        pass_if(audited > 0, || "no bases were audited".into()),
    );
    if !was_enabled {
        audit::set_enabled(false);
    }
    report
}

/// HP(d) (and the expanded series) agree with brute-force counts of
/// standard monomials at the three degrees above the numerator degree.
pub fn hilbert_count_check(ideal: &Ideal) -> Result<Option<String>> {
    let hs = ideal.hilbert_series()?;
    let hp = ideal.hilbert_polynomial()?;
    let gb = ideal.groebner(TermOrder::DegRevLex)?;
    let lts = gb.leading_monomials();
    let nvars = ideal.ring().nvars();
    let s = hs.numerator_degree();
    for d in 0..=(s + 3) {
        let count = count_standard_monomials(nvars, d, &lts);
        if num::BigInt::from(count) != hs.coefficient(d) {
            return Ok(Some(format!(
                "series coefficient at degree {d}: {} vs direct count {count}",
                hs.coefficient(d)
            )));
        }
        if d > s {
            let value = hp.eval(d as i64);
            if value != Rat::from_integer(count.into()) {
                return Ok(Some(format!("HP({d}) = {value} vs direct count {count}")));
            }
        }
    }
    Ok(None)
}

/// Runs suites by CLI name; `all` runs everything.
pub fn run_named(name: &str, seed: u64) -> Option<Vec<SuiteReport>> {
    match name {
        "lem2dim" => Some(vec![suite_lem2dim(seed)]),
        "degree" => Some(vec![suite_degree_and_mull(seed).0]),
        "mull" => Some(vec![suite_degree_and_mull(seed).1]),
        "radical" => Some(vec![suite_radical()]),
        "roundtrip" => Some(vec![suite_roundtrip(seed)]),
        "all" => {
            let (degree, mull) = suite_degree_and_mull(seed);
            Some(vec![
                suite_lem2dim(seed),
                suite_radical(),
                degree,
                mull,
                suite_roundtrip(seed),
                suite_degree_identities(),
                suite_engine_selfchecks(seed),
            ])
        }
        _ => None,
    }
}
