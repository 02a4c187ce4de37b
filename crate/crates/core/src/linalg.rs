//! Exact rational linear algebra and seeded generic sampling.
//!
//! Every rank decision in the rigidity tests goes through [`rank`] or
//! [`kernel_basis`], which work over arbitrary-precision rationals. Floating
//! point is confined to the numerical realization code.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// Default coordinate bound for generic sampling.
pub const GENERIC_BOUND: i64 = 1_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ratio_to_f64).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn ratio_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion; every finite double is a dyadic rational.
pub fn f64_to_ratio(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite coordinate")
}

/// Exact rank by fraction-free (Bareiss) elimination.
///
/// Rows are first scaled to integers; every intermediate quantity is then an
/// integer minor, so no gcd reductions are needed during elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| integer_row(m.row(i))).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(m: &RationalMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                if !a[r][j].is_zero() {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the right null space, one vector per free column, each scaled
/// to primitive integers.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    let (reduced, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            primitive(v)
        })
        .collect()
}

/// Scales a nonzero rational vector to coprime integers.
pub fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Coords {
    Exact(Vec<BigRational>),
    Numeric(Vec<f64>),
}

/// `n` points in `R^d`, stored row-major (point `i`, axis `k` at `i*d + k`).
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    n: usize,
    d: usize,
    coords: Coords,
}

impl Configuration {
    pub fn exact(n: usize, d: usize, coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), n * d, "coordinate count mismatch");
        Configuration { n, d, coords: Coords::Exact(coords) }
    }

    pub fn from_integers(n: usize, d: usize, coords: &[i64]) -> Self {
        Self::exact(n, d, coords.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn numeric(n: usize, d: usize, coords: Vec<f64>) -> Self {
        assert_eq!(coords.len(), n * d, "coordinate count mismatch");
        assert!(coords.iter().all(|x| x.is_finite()), "non-finite coordinate");
        Configuration { n, d, coords: Coords::Numeric(coords) }
    }

    pub fn from_points(points: &[Vec<f64>]) -> Self {
        let d = points.first().map_or(0, Vec::len);
        Self::numeric(points.len(), d, points.iter().flatten().copied().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coords, Coords::Exact(_))
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    /// Exact coordinates; numeric ones are converted without rounding.
    pub fn to_exact(&self) -> Vec<BigRational> {
        match &self.coords {
            Coords::Exact(v) => v.clone(),
            Coords::Numeric(v) => v.iter().map(|&x| f64_to_ratio(x)).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.coords {
            Coords::Exact(v) => v.iter().map(ratio_to_f64).collect(),
            Coords::Numeric(v) => v.clone(),
        }
    }

    pub fn points_f64(&self) -> Vec<Vec<f64>> {
        self.to_f64().chunks(self.d.max(1)).take(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Dimension of the affine span of the points, computed exactly.
    pub fn affine_rank(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        let c = self.to_exact();
        let d = self.d;
        let rows = (1..self.n)
            .map(|i| (0..d).map(|k| &c[i * d + k] - &c[k]).collect())
            .collect::<Vec<Vec<BigRational>>>();
        if rows.is_empty() {
            return 0;
        }
        rank(&RationalMatrix::from_rows(rows))
    }

    /// Full span means affine rank `min(n - 1, d)`.
    pub fn has_full_span(&self) -> bool {
        self.affine_rank() == self.d.min(self.n.saturating_sub(1))
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.coords {
            Coords::Numeric(_) => self.points_f64().serialize(s),
            Coords::Exact(v) => {
                let mut seq = s.serialize_seq(Some(self.n))?;
                for p in v.chunks(self.d.max(1)).take(self.n) {
                    let row: Vec<String> = p.iter().map(ratio_string).collect();
                    seq.serialize_element(&row)?;
                }
                seq.end()
            }
        }
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn ratio_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `n*d` independent uniform integers in `[-GENERIC_BOUND, GENERIC_BOUND]`.
pub fn random_generic_configuration(n: usize, d: usize, seed: u64) -> Configuration {
    random_integer_configuration(n, d, GENERIC_BOUND, seed)
}

pub fn random_integer_configuration(n: usize, d: usize, bound: i64, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<i64> = (0..n * d).map(|_| rng.gen_range(-bound..=bound)).collect();
    Configuration::from_integers(n, d, &coords)
}

/// Generic sample re-drawn (with a derived seed) until its span is full.
pub fn random_full_span_configuration(n: usize, d: usize, seed: u64) -> Configuration {
    let mut s = seed;
    loop {
        let p = random_generic_configuration(n, d, s);
        if p.has_full_span() {
            return p;
        }
        s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
    }
}

/// Uniform floating coordinates in `[-1, 1]`.
pub fn random_unit_configuration(n: usize, d: usize, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Configuration::numeric(n, d, (0..n * d).map(|_| rng.gen_range(-1.0..=1.0)).collect())
}

/// Random integer vector with entries in `[-bound, bound]`, for taking
/// generic combinations of a basis.
pub fn random_coefficients<R: Rng + ?Sized>(k: usize, bound: i64, rng: &mut R) -> Vec<BigRational> {
    (0..k).map(|_| BigRational::from_integer(rng.gen_range(-bound..=bound).into())).collect()
}

/// Serializes rationals as `"num/den"` strings.
pub struct RatioList<'a>(pub &'a [BigRational]);

impl Serialize for RatioList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&ratio_string(x))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn named_ranks() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RationalMatrix::from_i64(&[vec![1, 2], vec![2, 4], vec![3, 6]])), 1);
        assert_eq!(rank(&RationalMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn named_kernels() {
        assert!(kernel_basis(&RationalMatrix::identity(3)).is_empty());
        let k = kernel_basis(&RationalMatrix::from_i64(&[vec![1, -1]]));
        assert_eq!(k, vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RationalMatrix::from_rows(vec![vec![half.clone(), q(1)], vec![q(1), q(2)]]);
        assert_eq!(rank(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn generic_sampling_is_seeded() {
        assert_eq!(random_generic_configuration(1, 2, 5), random_generic_configuration(1, 2, 5));
        let configs: Vec<_> = (0..100).map(|s| random_generic_configuration(3, 2, s).to_exact()).collect();
        for i in 0..configs.len() {
            for j in i + 1..configs.len() {
                assert_ne!(configs[i], configs[j]);
            }
        }
    }

    #[test]
    fn affine_rank_of_collinear_points() {
        let p = Configuration::from_integers(3, 2, &[0, 0, 1, 0, 2, 0]);
        assert_eq!(p.affine_rank(), 1);
        assert!(!p.has_full_span());
        assert!(Configuration::from_integers(3, 2, &[0, 0, 1, 0, 0, 1]).has_full_span());
    }

    #[test]
    fn serializes_rationals_as_strings() {
        let p = Configuration::exact(1, 2, vec![BigRational::new(3.into(), 4.into()), q(-2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"[["3/4","-2"]]"#);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
        })
    }

    /// Rank from singular values with a relative threshold.
    fn float_rank(rows: &[Vec<i64>]) -> usize {
        let (r, c) = (rows.len(), rows[0].len());
        let m = DMatrix::from_fn(r, c, |i, j| rows[i][j] as f64);
        let sv = m.singular_values();
        let top = sv.iter().cloned().fold(0.0, f64::max);
        sv.iter().filter(|&&s| s > 1e-9 * top.max(1e-300)).count()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let m = RationalMatrix::from_i64(&rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn kernel_complements_rank(rows in small_matrix()) {
            let m = RationalMatrix::from_i64(&rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn exact_rank_matches_singular_values(
            rows in (1usize..31, 1usize..31, 0usize..31).prop_flat_map(|(r, c, k)| {
                // product of r x k and k x c factors gives rank <= k
                (proptest::collection::vec(proptest::collection::vec(-4i64..=4, k.max(1)), r),
                 proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), k.max(1)))
            }).prop_map(|(a, b)| {
                a.iter().map(|ar| (0..b[0].len()).map(|j| ar.iter().zip(&b).map(|(x, br)| x * br[j]).sum()).collect()).collect::<Vec<Vec<i64>>>()
            })
        ) {
            prop_assume!(rows.iter().flatten().any(|&x| x != 0));
            prop_assert_eq!(rank(&RationalMatrix::from_i64(&rows)), float_rank(&rows));
        }
    }
}
