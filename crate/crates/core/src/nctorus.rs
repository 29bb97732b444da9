//! Θ-matrices of noncommutative tori, the SO(m,m|Z) action, relation
//! constants and real-multiplication certification.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::lattice::detect_minpoly;
use crate::numeric::{Complex, Real};

pub type IMat = Vec<Vec<BigInt>>;

/// A skew-symmetric real matrix with ball entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaMatrix {
    entries: Vec<Vec<Real>>,
}

impl ThetaMatrix {
    /// Validates skew-symmetry (within radii) and an exactly zero diagonal.
    pub fn new(entries: Vec<Vec<Real>>) -> Result<Self> {
        let m = entries.len();
        if m < 2 || entries.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch(format!("Θ must be square of size ≥ 2, got {m} rows")));
        }
        for i in 0..m {
            if !entries[i][i].mid().is_zero() || !entries[i][i].is_exact() {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is not exactly zero")));
            }
            for j in i + 1..m {
                if !entries[i][j].add(&entries[j][i]).contains_zero() {
                    return Err(Error::InvalidMatrix(format!("θ[{i}][{j}] and θ[{j}][{i}] are not opposite")));
                }
            }
        }
        Ok(ThetaMatrix { entries })
    }

    /// The tridiagonal form with superdiagonal α_1, …, α_{m−1}.
    pub fn tridiagonal(alphas: &[Real]) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::ShapeMismatch("need at least one α (m ≥ 2)".into()));
        }
        let m = alphas.len() + 1;
        let mut e = vec![vec![Real::zero(); m]; m];
        for (k, a) in alphas.iter().enumerate() {
            e[k][k + 1] = a.clone();
            e[k + 1][k] = a.neg();
        }
        Ok(ThetaMatrix { entries: e })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Real>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Real {
        &self.entries[i][j]
    }

    pub fn superdiagonal(&self) -> Vec<Real> {
        (0..self.dim() - 1).map(|k| self.entries[k][k + 1].clone()).collect()
    }

    /// Largest entry radius, as an exact rational.
    pub fn max_radius(&self) -> num_rational::BigRational {
        self.entries
            .iter()
            .flatten()
            .map(|x| x.rad_rational())
            .max()
            .unwrap_or_else(num_rational::BigRational::zero)
    }

    /// Largest scale among the entries.
    pub fn scale(&self) -> u32 {
        self.entries.iter().flatten().map(|x| x.scale()).max().unwrap_or(0)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| {
            self.entries[i][i].contains_zero() && (i + 1..m).all(|j| self.entries[i][j].add(&self.entries[j][i]).contains_zero())
        })
    }

    /// Generators of the trace image Z + θZ; only m = 2 is supported.
    pub fn trace_generators(&self) -> Result<Vec<Real>> {
        if self.dim() != 2 {
            return Err(Error::ShapeMismatch("trace generators are only available for m = 2".into()));
        }
        Ok(vec![Real::one(), self.entries[0][1].clone()])
    }
}

/// An element (A, B; C, D) of SO(m,m|Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SOmm {
    pub a: IMat,
    pub b: IMat,
    pub c: IMat,
    pub d: IMat,
}

fn zeros(m: usize) -> IMat {
    vec![vec![BigInt::zero(); m]; m]
}

fn ident(m: usize) -> IMat {
    let mut z = zeros(m);
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    z
}

fn mat_mul(x: &IMat, y: &IMat) -> IMat {
    let n = x.len();
    let k = y.len();
    let p = y.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..p).map(|j| (0..k).map(|l| &x[i][l] * &y[l][j]).sum()).collect()).collect()
}

fn mat_add(x: &IMat, y: &IMat) -> IMat {
    x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect()
}

fn transpose(x: &IMat) -> IMat {
    let n = x.len();
    let p = x.first().map_or(0, |r| r.len());
    (0..p).map(|j| (0..n).map(|i| x[i][j].clone()).collect()).collect()
}

impl SOmm {
    pub fn new(a: IMat, b: IMat, c: IMat, d: IMat) -> Result<Self> {
        let m = a.len();
        for x in [&a, &b, &c, &d] {
            if x.len() != m || x.iter().any(|r| r.len() != m) {
                return Err(Error::ShapeMismatch("blocks must be square and of equal size".into()));
            }
        }
        if m == 0 {
            return Err(Error::ShapeMismatch("empty blocks".into()));
        }
        Ok(SOmm { a, b, c, d })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[Vec<i64>], c: &[Vec<i64>], d: &[Vec<i64>]) -> Result<Self> {
        let conv = |x: &[Vec<i64>]| -> IMat { x.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect() };
        SOmm::new(conv(a), conv(b), conv(c), conv(d))
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn identity(m: usize) -> Self {
        SOmm { a: ident(m), b: zeros(m), c: zeros(m), d: ident(m) }
    }

    /// A = D = 0, B = C = I.
    pub fn swap(m: usize) -> Self {
        SOmm { a: zeros(m), b: ident(m), c: ident(m), d: zeros(m) }
    }

    /// AᵗD + CᵗB = I, AᵗC + CᵗA = 0 and BᵗD + DᵗB = 0.
    pub fn check(&self) -> bool {
        let m = self.dim();
        let (at, bt, ct, dt) = (transpose(&self.a), transpose(&self.b), transpose(&self.c), transpose(&self.d));
        mat_add(&mat_mul(&at, &self.d), &mat_mul(&ct, &self.b)) == ident(m)
            && mat_add(&mat_mul(&at, &self.c), &mat_mul(&ct, &self.a)) == zeros(m)
            && mat_add(&mat_mul(&bt, &self.d), &mat_mul(&dt, &self.b)) == zeros(m)
    }

    /// The assembled 2m × 2m matrix [[A, B], [C, D]].
    pub fn assembled(&self) -> IMat {
        let m = self.dim();
        (0..2 * m)
            .map(|i| {
                (0..2 * m)
                    .map(|j| {
                        let blk = match (i < m, j < m) {
                            (true, true) => &self.a,
                            (true, false) => &self.b,
                            (false, true) => &self.c,
                            (false, false) => &self.d,
                        };
                        blk[i % m][j % m].clone()
                    })
                    .collect()
            })
            .collect()
    }

    /// GᵗJG = J for the Gram matrix J = [[0, I], [I, 0]] of Σ x_i x_{m+i}.
    pub fn preserves_form(&self) -> bool {
        let m = self.dim();
        let g = self.assembled();
        let mut j = zeros(2 * m);
        for i in 0..m {
            j[i][m + i] = BigInt::one();
            j[m + i][i] = BigInt::one();
        }
        mat_mul(&mat_mul(&transpose(&g), &j), &g) == j
    }

    /// Block product g·h.
    pub fn mul(&self, h: &SOmm) -> SOmm {
        let g = self;
        SOmm {
            a: mat_add(&mat_mul(&g.a, &h.a), &mat_mul(&g.b, &h.c)),
            b: mat_add(&mat_mul(&g.a, &h.b), &mat_mul(&g.b, &h.d)),
            c: mat_add(&mat_mul(&g.c, &h.a), &mat_mul(&g.d, &h.c)),
            d: mat_add(&mat_mul(&g.c, &h.b), &mat_mul(&g.d, &h.d)),
        }
    }

    /// Θ′ = (AΘ + B)(CΘ + D)⁻¹ at `precision` digits (or the input's
    /// scale, if larger).
    pub fn act(&self, theta: &ThetaMatrix, precision: u32) -> Result<ThetaMatrix> {
        let m = self.dim();
        if theta.dim() != m {
            return Err(Error::ShapeMismatch(format!("Θ is {}×{}, g acts on {m}×{m}", theta.dim(), theta.dim())));
        }
        let out_scale = precision.max(theta.scale());
        let w = out_scale + 10;
        let lin = |x: &IMat, y: &IMat| -> Vec<Vec<Real>> {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let mut acc = Real::from_int(y[i][j].clone());
                            for (k, xik) in x[i].iter().enumerate() {
                                if !xik.is_zero() {
                                    acc = acc.add(&theta.entries[k][j].mul_int(xik));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        };
        let num = lin(&self.a, &self.b);
        let den = lin(&self.c, &self.d);
        let inv = invert(den, w)?;
        let mut out: Vec<Vec<Real>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| (0..m).fold(Real::zero(), |acc, k| acc.add(&num[i][k].mul(&inv[k][j], w))).rescale(out_scale))
                    .collect()
            })
            .collect();
        for i in 0..m {
            if !out[i][i].contains_zero() {
                return Err(Error::PrecisionExhausted(format!("diagonal entry {i} of Θ′ is not zero within its radius")));
            }
            out[i][i] = Real::zero();
            for j in i + 1..m {
                if !out[i][j].add(&out[j][i]).contains_zero() {
                    return Err(Error::PrecisionExhausted(format!("Θ′ is not skew-symmetric at ({i}, {j})")));
                }
                out[j][i] = out[i][j].neg();
            }
        }
        Ok(ThetaMatrix { entries: out })
    }

    /// A random element built from block-diagonal, shear and swap generators.
    pub fn random<R: Rng>(m: usize, steps: usize, rng: &mut R) -> SOmm {
        let mut g = SOmm::identity(m);
        for _ in 0..steps {
            let h = match rng.gen_range(0..4) {
                0 => SOmm::swap(m),
                1 | 2 => {
                    let mut s = zeros(m);
                    for i in 0..m {
                        for j in i + 1..m {
                            let v = BigInt::from(rng.gen_range(-2i64..=2));
                            s[i][j] = v.clone();
                            s[j][i] = -v;
                        }
                    }
                    let (b, c) = if rng.gen_bool(0.5) { (s, zeros(m)) } else { (zeros(m), s) };
                    SOmm { a: ident(m), b, c, d: ident(m) }
                }
                _ => {
                    // (E, E^{-t}) for an elementary E = I + k·e_ij
                    let i = rng.gen_range(0..m);
                    let j = (i + rng.gen_range(1..m.max(2))) % m;
                    let k = BigInt::from(rng.gen_range(-2i64..=2));
                    let mut e = ident(m);
                    let mut einv_t = ident(m);
                    if i != j {
                        e[i][j] = k.clone();
                        einv_t[j][i] = -k;
                    }
                    SOmm { a: e, b: zeros(m), c: zeros(m), d: einv_t }
                }
            };
            g = g.mul(&h);
        }
        g
    }
}

/// Gauss–Jordan inverse of a ball matrix with partial pivoting on |mid|.
fn invert(mut a: Vec<Vec<Real>>, w: u32) -> Result<Vec<Vec<Real>>> {
    let m = a.len();
    let mut inv: Vec<Vec<Real>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { Real::one() } else { Real::zero() }).collect()).collect();
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].mid().abs().cmp(&a[y][col].mid().abs())).unwrap();
        if a[piv][col].mid().is_zero() {
            return Err(Error::SingularDenominator);
        }
        if a[piv][col].contains_zero() {
            return Err(Error::PrecisionExhausted("pivot ball contains zero".into()));
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..m {
            a[col][j] = a[col][j].div(&p, w)?;
            inv[col][j] = inv[col][j].div(&p, w)?;
        }
        for r in 0..m {
            if r == col || (a[r][col].mid().is_zero() && a[r][col].is_exact()) {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..m {
                let t = f.mul(&a[col][j], w);
                a[r][j] = a[r][j].sub(&t);
                let t = f.mul(&inv[col][j], w);
                inv[r][j] = inv[r][j].sub(&t);
            }
        }
    }
    Ok(inv)
}

/// Constants ρ_k = t·e^(2πiα_k) of the scaled commutation relations.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationConstants {
    pub t: Real,
    pub alphas: Vec<Real>,
    pub values: Vec<Complex>,
}

pub fn scaled_relations(alphas: &[Real], t: &Real, precision: u32) -> Result<RelationConstants> {
    if !t.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let w = precision + 10;
    let values = alphas
        .iter()
        .map(|a| Complex::unit(a, w).scale(t, w).rescale(precision))
        .collect();
    Ok(RelationConstants { t: t.clone(), alphas: alphas.to_vec(), values })
}

/// Integer-relation certification of each α_k; `None` where nothing is found.
pub fn certify_real_multiplication(
    alphas: &[Real],
    degree_bound: u32,
    height_bound: &BigInt,
    precision: u32,
) -> Result<Vec<Option<IntPoly>>> {
    alphas
        .iter()
        .map(|a| Ok(detect_minpoly(&Complex::real(a.clone()), precision, degree_bound, height_bound)?.map(|d| d.poly)))
        .collect()
}
