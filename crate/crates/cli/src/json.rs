//! JSON shapes for every command. Integers and rationals are carried as
//! strings so arbitrary-precision values round-trip exactly; all shapes
//! parse back to the same value they were printed from.

use serde::{Deserialize, Serialize};

use arrjac::arrangement::{Arrangement, Hyperplane, Lattice};
use arrjac::qlinalg::parse_rat;
use arrjac::reconstruct::{ProjPoint, ReconstructionReport};
use arrjac::suites::SuiteReport;
use arrjac::{Error, Result};

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ArrangementJson {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<String>>,
}

impl ArrangementJson {
    pub fn of(a: &Arrangement) -> ArrangementJson {
        ArrangementJson {
            dim: a.ring().nvars(),
            hyperplanes: a.hyperplanes().iter().map(covector_strings).collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let ring = arrjac::polyring::RingCtx::new(self.dim);
        let mut hyps = Vec::with_capacity(self.hyperplanes.len());
        for (i, cov) in self.hyperplanes.iter().enumerate() {
            if cov.len() != self.dim {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {} entries, found {}", self.dim, cov.len()),
                });
            }
            let rats = cov
                .iter()
                .map(|s| {
                    parse_rat(s).ok_or_else(|| Error::Parse {
                        line: i + 1,
                        msg: format!("invalid rational '{s}'"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            hyps.push(Hyperplane::new(&rats)?);
        }
        Arrangement::new(&ring, hyps)
    }
}

fn covector_strings(h: &Hyperplane) -> Vec<String> {
    h.covector().iter().map(|c| c.to_string()).collect()
}

fn point_strings(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct JacobianJson {
    pub arrangement: ArrangementJson,
    pub q: String,
    pub generators: Vec<String>,
    pub unit_ideal: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct LatticeFlatJson {
    pub codim: usize,
    pub normals: Vec<Vec<String>>,
    pub members: Vec<usize>,
    pub mu: i64,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct LatticeJson {
    pub arrangement: ArrangementJson,
    pub flats: Vec<LatticeFlatJson>,
}

impl LatticeJson {
    pub fn of(a: &Arrangement, lattice: &Lattice) -> LatticeJson {
        LatticeJson {
            arrangement: ArrangementJson::of(a),
            flats: lattice
                .flats()
                .iter()
                .map(|f| LatticeFlatJson {
                    codim: f.codim(),
                    normals: (0..f.flat.codim())
                        .map(|r| {
                            f.flat
                                .normals()
                                .row(r)
                                .iter()
                                .map(|c| c.to_string())
                                .collect()
                        })
                        .collect(),
                    members: f.members.clone(),
                    mu: f.mu,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SliceJson {
    pub hyperplane: Vec<String>,
    pub mu_k: i64,
    pub degree_slice: i64,
    pub agree: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CandidateJson {
    pub hyperplane: Vec<String>,
    pub slice_degree: i64,
    pub accepted: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ReconstructJson {
    pub inferred_n: usize,
    pub singular_points: Vec<Vec<String>>,
    pub candidates: Vec<CandidateJson>,
    pub accepted: ArrangementJson,
    pub certificate: bool,
}

impl ReconstructJson {
    pub fn of(report: &ReconstructionReport) -> ReconstructJson {
        let target = report.inferred_n as i64 - 1;
        ReconstructJson {
            inferred_n: report.inferred_n,
            singular_points: report.singular_points.iter().map(point_strings).collect(),
            candidates: report
                .candidates
                .iter()
                .map(|(h, s)| CandidateJson {
                    hyperplane: covector_strings(h),
                    slice_degree: *s,
                    accepted: *s == target,
                })
                .collect(),
            accepted: ArrangementJson::of(&report.accepted),
            certificate: report.certificate,
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct CaseJson {
    pub label: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SuiteJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: bool,
    pub cases: Vec<CaseJson>,
}

impl SuiteJson {
    pub fn of(r: &SuiteReport) -> SuiteJson {
        SuiteJson {
            name: r.name.to_string(),
            seed: r.seed,
            passed: r.passed(),
            cases: r
                .cases
                .iter()
                .map(|c| CaseJson {
                    label: c.label.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                })
                .collect(),
        }
    }
}
