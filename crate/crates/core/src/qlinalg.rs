//! Exact rational linear algebra: scalars, matrices in reduced row echelon
//! form, and linear flats represented by their canonical normal matrices.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational scalar. `BigRational` keeps itself reduced
/// with a positive denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` with arbitrary-precision integers. Returns `None` on
/// malformed input or a zero denominator.
pub fn parse_rat(token: &str) -> Option<Rat> {
    match token.split_once('/') {
        None => token.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = p.parse::<BigInt>().ok()?;
            let q = q.parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

/// Dense matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        out
    }

    /// Vertical concatenation; column counts must agree.
    pub fn stacked(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// The unique reduced row echelon form, together with the rank.
    pub fn rref(&self) -> (QMatrix, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = m.get(pivot_row, col).recip();
            m.scale_row(pivot_row, &inv);
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, pivot_row, &factor);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat) {
        for c in 0..self.cols {
            let v = self.get(r, c).clone() * factor;
            *self.get_mut(r, c) = v;
        }
    }

    /// row[r] -= factor * row[src]
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Rat) {
        for c in 0..self.cols {
            let v = self.get(r, c).clone() - self.get(src, c).clone() * factor;
            *self.get_mut(r, c) = v;
        }
    }
}

/// A linear subspace of the ambient space, stored as the RREF matrix whose
/// row space is the space of linear forms vanishing on it. The RREF with
/// zero rows dropped is canonical, so flat equality is plain `==`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Flat {
    ambient: usize,
    normals: QMatrix,
}

impl Flat {
    /// The whole space: no normals, codimension zero.
    pub fn whole_space(ambient: usize) -> Flat {
        Flat {
            ambient,
            normals: QMatrix::zero(0, ambient),
        }
    }

    /// Flat cut out by the given covectors (rows). Reduces to canonical form.
    pub fn from_normals(ambient: usize, rows: Vec<Vec<Rat>>) -> Flat {
        assert!(rows.iter().all(|r| r.len() == ambient), "covector arity");
        let (rref, rank) = QMatrix::from_rows(rows).rref();
        let kept: Vec<Vec<Rat>> = (0..rank).map(|r| rref.row(r).to_vec()).collect();
        Flat {
            ambient,
            normals: if kept.is_empty() {
                QMatrix::zero(0, ambient)
            } else {
                QMatrix::from_rows(kept)
            },
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.normals.rows()
    }

    pub fn normals(&self) -> &QMatrix {
        &self.normals
    }

    pub fn is_origin(&self) -> bool {
        self.codim() == self.ambient
    }

    /// Intersection of two flats: the row spaces of the normals add up.
    pub fn meet(&self, other: &Flat) -> Flat {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let stacked = self.normals.stacked(&other.normals);
        Flat::from_normals(self.ambient, stacked.row_vecs())
    }

    /// True iff `other` is contained in `self` as a subspace, i.e. every
    /// normal of `self` already lies in the row space of `other`'s normals.
    pub fn contains_flat(&self, other: &Flat) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let stacked = other.normals.stacked(&self.normals);
        stacked.rank() == other.codim()
    }
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive. Returns `None` on the zero vector.
pub fn primitive_integer_vector(v: &[Rat]) -> Option<Vec<BigInt>> {
    if v.iter().all(Zero::is_zero) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = num::integer::gcd(gcd, x.clone());
    }
    for x in &mut ints {
        *x = &*x / &gcd;
    }
    if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    Some(ints)
}
