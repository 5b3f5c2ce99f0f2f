//! Square integer matrices with checked exact arithmetic.
//!
//! Everything here is exact: products and determinants error out on `i64`
//! overflow instead of wrapping, inverses exist only where they are integer
//! (unimodular) or rational (nonsingular), and the Smith normal form drives
//! lattice coset enumeration.

use crate::error::{Error, Result};
use crate::rat::Rat;
use num::BigInt;

/// Row-major square integer matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IntMatrix {
    dim: usize,
    e: Vec<i64>,
}

fn cadd(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn cmul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

impl IntMatrix {
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        if entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(IntMatrix { dim, e: entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut e = vec![0; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = 1;
        }
        IntMatrix { dim, e }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.e[row * self.dim + col]
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.dim)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::invalid("matrix dimension mismatch in product"));
        }
        let n = self.dim;
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for k in 0..n {
                    acc = cadd(acc, cmul(self.get(i, k), rhs.get(k, j))?)?;
                }
                e[i * n + j] = acc;
            }
        }
        Ok(IntMatrix { dim: n, e })
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::invalid("matrix dimension mismatch in sum"));
        }
        let e = self
            .e
            .iter()
            .zip(&rhs.e)
            .map(|(a, b)| cadd(*a, *b))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { dim: self.dim, e })
    }

    pub fn sub_identity(&self) -> Result<IntMatrix> {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.e[i * self.dim + i] = cadd(m.e[i * self.dim + i], -1)?;
        }
        Ok(m)
    }

    pub fn trace(&self) -> Result<i64> {
        let mut t = 0i64;
        for i in 0..self.dim {
            t = cadd(t, self.get(i, i))?;
        }
        Ok(t)
    }

    /// Exact determinant by cofactor expansion with `i128` accumulation.
    /// Dimensions here are small (lattice maps on low-dimensional tori).
    pub fn det(&self) -> Result<i64> {
        let d = det_i128(&self.e.iter().map(|&x| x as i128).collect::<Vec<_>>(), self.dim);
        i64::try_from(d).map_err(|_| Error::Overflow)
    }

    /// Adjugate matrix: `self * adjugate == det * I`.
    pub fn adjugate(&self) -> Result<IntMatrix> {
        let n = self.dim;
        if n == 1 {
            return IntMatrix::new(1, vec![1]);
        }
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let m = det_i128(&minor, n - 1);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adjugate is the transposed cofactor matrix
                let v = i64::try_from(sign * m).map_err(|_| Error::Overflow)?;
                e[j * n + i] = v;
            }
        }
        Ok(IntMatrix { dim: n, e })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Vec<i128> {
        let n = self.dim;
        let mut out = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_row {
                continue;
            }
            for j in 0..n {
                if j == skip_col {
                    continue;
                }
                out.push(self.get(i, j) as i128);
            }
        }
        out
    }

    /// Exact integer inverse; defined exactly for `det == ±1`.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let d = self.det()?;
        if d != 1 && d != -1 {
            return Err(Error::invalid(format!(
                "matrix with determinant {d} has no integer inverse"
            )));
        }
        let adj = self.adjugate()?;
        if d == 1 {
            Ok(adj)
        } else {
            let e = adj
                .e
                .iter()
                .map(|&x| x.checked_neg().ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix { dim: self.dim, e })
        }
    }

    /// Solve `self * x = rhs` exactly over the rationals (nonsingular only).
    pub fn solve_exact(&self, rhs: &[Rat]) -> Result<Vec<Rat>> {
        if rhs.len() != self.dim {
            return Err(Error::invalid("right-hand side dimension mismatch"));
        }
        let d = self.det()?;
        if d == 0 {
            return Err(Error::invalid("singular matrix in exact solve"));
        }
        let adj = self.adjugate()?;
        let det = Rat::from_integer(BigInt::from(d));
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut acc = Rat::from_integer(BigInt::from(0));
            for j in 0..self.dim {
                acc += Rat::from_integer(BigInt::from(adj.get(i, j))) * &rhs[j];
            }
            out.push(acc / &det);
        }
        Ok(out)
    }

    /// Apply to a rational vector; exact, and infallible because the
    /// accumulation happens in big integers.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut acc = Rat::from_integer(BigInt::from(0));
            for j in 0..self.dim {
                acc += Rat::from_integer(BigInt::from(self.get(i, j))) * &v[j];
            }
            out.push(acc);
        }
        out
    }

    /// Apply to an integer vector.
    pub fn apply_int(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.dim {
            return Err(Error::invalid("vector dimension mismatch"));
        }
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut acc = 0i64;
            for j in 0..self.dim {
                acc = cadd(acc, cmul(self.get(i, j), v[j])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Smith normal form `s = u * self * v` with `u`, `v` unimodular and `s`
    /// diagonal with nonnegative entries, each dividing the next.
    pub fn smith_normal_form(&self) -> Result<Snf> {
        let n = self.dim;
        let mut s: Vec<i64> = self.e.clone();
        let mut u = IntMatrix::identity(n).e;
        let mut v = IntMatrix::identity(n).e;
        let get = |m: &Vec<i64>, i: usize, j: usize| m[i * n + j];

        // Row op: row_i -= q * row_t applied to s and u (left multiplication).
        fn row_sub(m: &mut Vec<i64>, n: usize, i: usize, t: usize, q: i64) -> Result<()> {
            for j in 0..n {
                let d = cmul(q, m[t * n + j])?;
                m[i * n + j] = cadd(m[i * n + j], -d)?;
            }
            Ok(())
        }
        fn col_sub(m: &mut Vec<i64>, n: usize, j: usize, t: usize, q: i64) -> Result<()> {
            for i in 0..n {
                let d = cmul(q, m[i * n + t])?;
                m[i * n + j] = cadd(m[i * n + j], -d)?;
            }
            Ok(())
        }
        fn row_swap(m: &mut Vec<i64>, n: usize, a: usize, b: usize) {
            for j in 0..n {
                m.swap(a * n + j, b * n + j);
            }
        }
        fn col_swap(m: &mut Vec<i64>, n: usize, a: usize, b: usize) {
            for i in 0..n {
                m.swap(i * n + a, i * n + b);
            }
        }

        for t in 0..n {
            loop {
                // Smallest nonzero pivot in the trailing submatrix.
                let mut pivot: Option<(usize, usize)> = None;
                for i in t..n {
                    for j in t..n {
                        let x = get(&s, i, j);
                        if x != 0
                            && pivot.map_or(true, |(pi, pj)| {
                                x.unsigned_abs() < get(&s, pi, pj).unsigned_abs()
                            })
                        {
                            pivot = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = pivot else { break };
                if pi != t {
                    row_swap(&mut s, n, pi, t);
                    row_swap(&mut u, n, pi, t);
                }
                if pj != t {
                    col_swap(&mut s, n, pj, t);
                    col_swap(&mut v, n, pj, t);
                }
                let p = get(&s, t, t);
                let mut clean = true;
                for i in t + 1..n {
                    let x = get(&s, i, t);
                    if x != 0 {
                        let q = x.div_euclid(p);
                        row_sub(&mut s, n, i, t, q)?;
                        row_sub(&mut u, n, i, t, q)?;
                        if get(&s, i, t) != 0 {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..n {
                    let x = get(&s, t, j);
                    if x != 0 {
                        let q = x.div_euclid(p);
                        col_sub(&mut s, n, j, t, q)?;
                        col_sub(&mut v, n, j, t, q)?;
                        if get(&s, t, j) != 0 {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue; // remainders became new smaller pivots
                }
                // Enforce divisibility of the trailing block by the pivot.
                let mut fixed = true;
                'outer: for i in t + 1..n {
                    for j in t + 1..n {
                        if get(&s, i, j) % p != 0 {
                            // Fold row i into row t so the bad entry enters
                            // the pivot row, then restart the reduction.
                            for k in 0..n {
                                s[t * n + k] = cadd(s[t * n + k], s[i * n + k])?;
                                u[t * n + k] = cadd(u[t * n + k], u[i * n + k])?;
                            }
                            fixed = false;
                            break 'outer;
                        }
                    }
                }
                if fixed {
                    break;
                }
            }
            // Normalize pivot sign.
            if get(&s, t, t) < 0 {
                for j in 0..n {
                    s[t * n + j] = s[t * n + j].checked_neg().ok_or(Error::Overflow)?;
                    u[t * n + j] = u[t * n + j].checked_neg().ok_or(Error::Overflow)?;
                }
            }
        }

        Ok(Snf {
            u: IntMatrix { dim: n, e: u },
            s: IntMatrix { dim: n, e: s },
            v: IntMatrix { dim: n, e: v },
        })
    }

    /// Representatives of `Z^n / (self · Z^n)` for a nonsingular matrix:
    /// exactly `|det|` integer vectors, in a deterministic order.
    pub fn lattice_coset_reps(&self) -> Result<Vec<Vec<i64>>> {
        let d = self.det()?;
        if d == 0 {
            return Err(Error::invalid(
                "singular matrix: the quotient lattice is infinite",
            ));
        }
        let snf = self.smith_normal_form()?;
        let u_inv = snf.u.inverse_unimodular()?;
        let diag: Vec<i64> = (0..self.dim).map(|i| snf.s.get(i, i)).collect();
        let mut reps = Vec::with_capacity(d.unsigned_abs() as usize);
        let mut idx = vec![0i64; self.dim];
        loop {
            reps.push(u_inv.apply_int(&idx)?);
            // odometer over the diagonal ranges
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return Ok(reps);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < diag[k] {
                    break;
                }
                idx[k] = 0;
                if k == 0 {
                    return Ok(reps);
                }
            }
        }
    }

    /// Parse `"a,b;c,d"`: rows separated by `;`, entries by `,`.
    pub fn parse(s: &str) -> Result<IntMatrix> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        let n = rows.len();
        let mut e = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != n {
                return Err(Error::invalid(format!(
                    "matrix row {} has {} entries, expected {n}",
                    i + 1,
                    entries.len()
                )));
            }
            for t in entries {
                let x: i64 = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad matrix entry `{}`", t.trim())))?;
                e.push(x);
            }
        }
        IntMatrix::new(n, e)
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

fn det_i128(e: &[i128], n: usize) -> i128 {
    match n {
        1 => e[0],
        2 => e[0] * e[3] - e[1] * e[2],
        _ => {
            let mut acc = 0i128;
            for j in 0..n {
                if e[j] == 0 {
                    continue;
                }
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for k in 0..n {
                        if k != j {
                            minor.push(e[i * n + k]);
                        }
                    }
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * e[j] * det_i128(&minor, n - 1);
            }
            acc
        }
    }
}

/// Smith normal form decomposition: `s = u * a * v`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}
