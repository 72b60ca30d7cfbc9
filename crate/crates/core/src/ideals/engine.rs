//! Buchberger engine: S-pair loop with the coprime and chain criteria,
//! normal (degree-first) pair selection, and full inter-reduction to the
//! unique reduced basis. A configurable total-degree guard aborts runaway
//! computations with a typed error instead of ever truncating.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, RingCtx, TermOrder};
use crate::qlinalg::Rat;

/// Terms sorted strictly descending under the active order.
pub(crate) type OrdTerms = Vec<(Monomial, Rat)>;

pub(crate) fn to_ordered(p: &Poly, ord: TermOrder) -> OrdTerms {
    let mut v: OrdTerms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    v
}

pub(crate) fn to_poly(ring: &Arc<RingCtx>, terms: &OrdTerms) -> Poly {
    Poly::from_terms(ring, terms.iter().cloned())
}

fn make_monic(mut f: OrdTerms) -> OrdTerms {
    if let Some((_, lc)) = f.first().cloned() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in &mut f {
                *c *= &inv;
            }
        }
    }
    f
}

/// f - c * x^m * g, merging two descending term lists in one pass.
pub(crate) fn sub_scaled(
    f: &OrdTerms,
    c: &Rat,
    m: &Monomial,
    g: &OrdTerms,
    ord: TermOrder,
) -> OrdTerms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match ord.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = &f[i].1 - &(c * &g[j].1);
                if !coeff.is_zero() {
                    out.push((gm, coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    for (gm, gc) in &g[j..] {
        out.push((gm.mul(m), -(c * gc)));
    }
    out
}

/// Full normal form of `work` against `reducers`: no term of the result is
/// divisible by any reducer's leading monomial. Terminates unconditionally;
/// the guard only bounds how large a leading monomial we are willing to
/// process before failing loudly.
pub(crate) fn normal_form_ord(
    mut work: OrdTerms,
    reducers: &[&OrdTerms],
    ord: TermOrder,
    guard: u32,
) -> Result<OrdTerms> {
    let mut remainder: OrdTerms = Vec::new();
    'outer: while !work.is_empty() {
        let (lm, lc) = work[0].clone();
        let deg = lm.total_degree();
        if deg > guard {
            return Err(Error::DegreeGuard {
                limit: guard,
                reached: deg,
            });
        }
        for g in reducers {
            let (gm, gc) = &g[0];
            if let Some(q) = lm.try_div(gm) {
                let factor = &lc / gc;
                work = sub_scaled(&work, &factor, &q, g, ord);
                continue 'outer;
            }
        }
        remainder.push(work.remove(0));
    }
    Ok(remainder)
}

fn s_polynomial(f: &OrdTerms, g: &OrdTerms, ord: TermOrder) -> OrdTerms {
    let (fm, fc) = &f[0];
    let (gm, gc) = &g[0];
    let l = fm.lcm(gm);
    let a = l.try_div(fm).unwrap();
    let b = l.try_div(gm).unwrap();
    let scaled_f: OrdTerms = f.iter().map(|(m, c)| (m.mul(&a), c / fc)).collect();
    sub_scaled(&scaled_f, &gc.recip(), &b, g, ord)
}

fn pair_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
/// Elements come back monic, fully inter-reduced, sorted ascending by
/// leading monomial; this is the unique reduced basis of the ideal.
pub(crate) fn reduced_groebner(
    ring: &Arc<RingCtx>,
    gens: &[Poly],
    ord: TermOrder,
    guard: u32,
) -> Result<Vec<Poly>> {
    let mut basis: Vec<OrdTerms> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(make_monic(to_ordered(g, ord)));
        }
    }

    // (lcm degree, i, j); pop_first gives the normal degree-first strategy
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add_pair = |pairs: &mut BTreeSet<(u32, usize, usize)>,
                    pending: &mut HashSet<(usize, usize)>,
                    basis: &[OrdTerms],
                    i: usize,
                    j: usize| {
        let deg = basis[i][0].0.lcm(&basis[j][0].0).total_degree();
        pairs.insert((deg, i, j));
        pending.insert(pair_key(i, j));
    };
    for j in 1..basis.len() {
        for i in 0..j {
            add_pair(&mut pairs, &mut pending, &basis, i, j);
        }
    }

    while let Some((deg, i, j)) = pairs.pop_first() {
        pending.remove(&pair_key(i, j));
        let li = &basis[i][0].0;
        let lj = &basis[j][0].0;
        if li.coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&l)
                && !pending.contains(&pair_key(i, k))
                && !pending.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }
        if deg > guard {
            return Err(Error::DegreeGuard {
                limit: guard,
                reached: deg,
            });
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let reducers: Vec<&OrdTerms> = basis.iter().collect();
        let nf = normal_form_ord(s, &reducers, ord, guard)?;
        if !nf.is_empty() {
            let new_deg = nf[0].0.total_degree();
            if new_deg > guard {
                return Err(Error::DegreeGuard {
                    limit: guard,
                    reached: new_deg,
                });
            }
            let new = basis.len();
            basis.push(make_monic(nf));
            for t in 0..new {
                add_pair(&mut pairs, &mut pending, &basis, t, new);
            }
        }
    }

    // minimalize: drop elements whose leading monomial is generated by another
    let mut kept: Vec<OrdTerms> = Vec::new();
    'outer: for i in 0..basis.len() {
        let li = &basis[i][0].0;
        for (j, other) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lj = &other[0].0;
            if lj.divides(li) && (lj != li || j < i) {
                continue 'outer;
            }
        }
        kept.push(basis[i].clone());
    }

    // tail-reduce to the unique reduced basis
    loop {
        let mut changed = false;
        for idx in 0..kept.len() {
            let (dirty, reduced) = {
                let mut others: Vec<&OrdTerms> = Vec::with_capacity(kept.len() - 1);
                for (j, e) in kept.iter().enumerate() {
                    if j != idx {
                        others.push(e);
                    }
                }
                let red = normal_form_ord(kept[idx].clone(), &others, ord, u32::MAX)?;
                (red != kept[idx], red)
            };
            if dirty {
                kept[idx] = make_monic(reduced);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    kept.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    Ok(kept.iter().map(|e| to_poly(ring, e)).collect())
}

/// Checks the defining properties of a reduced Gröbner basis directly:
/// monic elements, full inter-reduction, and every S-polynomial reducing to
/// zero. Returns a description of the first violation found.
pub(crate) fn audit_basis(
    ring: &Arc<RingCtx>,
    elements: &[Poly],
    ord: TermOrder,
) -> std::result::Result<(), String> {
    let ordered: Vec<OrdTerms> = elements.iter().map(|p| to_ordered(p, ord)).collect();
    for (i, e) in ordered.iter().enumerate() {
        if e.is_empty() {
            return Err(format!("element {i} is zero"));
        }
        if !e[0].1.is_one() {
            return Err(format!("element {i} is not monic: {}", elements[i]));
        }
        for (j, other) in ordered.iter().enumerate() {
            if i == j {
                continue;
            }
            for (m, _) in e {
                if other[0].0.divides(m) {
                    return Err(format!(
                        "element {i} has a term divisible by the leading term of element {j}"
                    ));
                }
            }
        }
    }
    let refs: Vec<&OrdTerms> = ordered.iter().collect();
    for i in 0..ordered.len() {
        for j in i + 1..ordered.len() {
            let s = s_polynomial(&ordered[i], &ordered[j], ord);
            let nf = normal_form_ord(s, &refs, ord, u32::MAX)
                .map_err(|e| format!("audit reduction failed: {e}"))?;
            if !nf.is_empty() {
                return Err(format!(
                    "S-polynomial of elements {i}, {j} does not reduce to zero: {}",
                    to_poly(ring, &nf)
                ));
            }
        }
    }
    Ok(())
}
