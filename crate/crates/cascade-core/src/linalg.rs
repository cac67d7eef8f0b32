//! Dense linear algebra: over GF(p) (kernels, Plücker coordinates,
//! characteristic polynomials) and the exact integer/rational routines the
//! Chow-group computations need (Smith normal form, rational rank).

use crate::error::CascadeError;
use crate::field::Fp;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Rectangular matrix over GF(p), row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    pub fp: Fp,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<u64>>,
}

impl FieldMatrix {
    pub fn new(fp: Fp, a: Vec<Vec<u64>>) -> Self {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        assert!(a.iter().all(|r| r.len() == cols));
        let a = a
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % fp.p).collect())
            .collect();
        FieldMatrix { fp, rows, cols, a }
    }

    pub fn identity(fp: Fp, n: usize) -> Self {
        let mut a = vec![vec![0u64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 1;
        }
        FieldMatrix { fp, rows: n, cols: n, a }
    }

    pub fn transpose(&self) -> Self {
        let mut a = vec![vec![0u64; self.rows]; self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                a[j][i] = self.a[i][j];
            }
        }
        FieldMatrix { fp: self.fp, rows: self.cols, cols: self.rows, a }
    }

    pub fn mat_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let fp = self.fp;
        self.a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.iter())
                    .fold(0u64, |acc, (&m, &x)| fp.add(acc, fp.mul(m, x)))
            })
            .collect()
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let fp = self.fp;
        let mut m = self.a.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, sel);
            let inv = fp.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = fp.mul(*x, inv);
            }
            for i in 0..self.rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..self.cols {
                        let t = fp.mul(f, m[r][j]);
                        m[i][j] = fp.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelonized kernel basis (each vector satisfies M v = 0 exactly).
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let fp = self.fp;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (pi, &pc) in pivots.iter().enumerate() {
                    v[pc] = fp.neg(m[pi][fc]);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let fp = self.fp;
        let mut m = self.a.clone();
        let mut det = 1u64;
        for c in 0..self.cols {
            let Some(sel) = (c..self.rows).find(|&i| m[i][c] != 0) else {
                return 0;
            };
            if sel != c {
                m.swap(c, sel);
                det = fp.neg(det);
            }
            det = fp.mul(det, m[c][c]);
            let inv = fp.inv(m[c][c]);
            for i in c + 1..self.rows {
                if m[i][c] != 0 {
                    let f = fp.mul(m[i][c], inv);
                    for j in c..self.cols {
                        let t = fp.mul(f, m[c][j]);
                        m[i][j] = fp.sub(m[i][j], t);
                    }
                }
            }
        }
        det
    }

    /// Characteristic polynomial coefficients, ascending degree, monic of
    /// degree n. Hessenberg reduction followed by the standard recurrence.
    pub fn charpoly(&self) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let fp = self.fp;
        let mut h = self.a.clone();
        // Hessenberg form by similarity transforms
        for c in 0..n.saturating_sub(2) {
            if let Some(sel) = (c + 1..n).find(|&i| h[i][c] != 0) {
                if sel != c + 1 {
                    h.swap(sel, c + 1);
                    for row in h.iter_mut() {
                        row.swap(sel, c + 1);
                    }
                }
                let inv = fp.inv(h[c + 1][c]);
                for i in c + 2..n {
                    if h[i][c] != 0 {
                        let f = fp.mul(h[i][c], inv);
                        for j in 0..n {
                            let t = fp.mul(f, h[c + 1][j]);
                            h[i][j] = fp.sub(h[i][j], t);
                        }
                        // column operation to keep similarity
                        for rr in 0..n {
                            let t = fp.mul(f, h[rr][i]);
                            h[rr][c + 1] = fp.add(h[rr][c + 1], t);
                        }
                    }
                }
            }
        }
        // p_k(x) = charpoly of leading k x k block of the Hessenberg matrix
        let mut polys: Vec<Vec<u64>> = vec![vec![1u64]];
        for k in 1..=n {
            // p_k = (x - h[k-1][k-1]) p_{k-1} - sum_{i} h[k-1-i..] products
            let mut p = poly_shift_mul(fp, &polys[k - 1], h[k - 1][k - 1]);
            let mut beta = 1u64;
            for i in 1..k {
                beta = fp.mul(beta, h[k - i][k - i - 1]);
                if beta == 0 {
                    break;
                }
                let coef = fp.mul(beta, h[k - 1 - i][k - 1]);
                if coef != 0 {
                    for (j, &c) in polys[k - 1 - i].iter().enumerate() {
                        let t = fp.mul(coef, c);
                        p[j] = fp.sub(p[j], t);
                    }
                }
            }
            polys.push(p);
        }
        polys.pop().unwrap()
    }
}

/// (x - a) * p for ascending-coefficient p.
fn poly_shift_mul(fp: Fp, p: &[u64], a: u64) -> Vec<u64> {
    let mut out = vec![0u64; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i + 1] = fp.add(out[i + 1], c);
        let t = fp.mul(a, c);
        out[i] = fp.sub(out[i], t);
    }
    out
}

/// Univariate polynomial utilities over GF(p) (ascending coefficients).
pub mod univariate {
    use crate::field::Fp;

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn derivative(fp: Fp, p: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(c, (i as u64) % fp.p))
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(fp: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        assert!(!b.is_empty());
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lb_inv = fp.inv(b[db]);
        while r.len() > db {
            let dr = r.len() - 1;
            let f = fp.mul(r[dr], lb_inv);
            if f != 0 {
                for i in 0..=db {
                    let t = fp.mul(f, b[i]);
                    r[dr - db + i] = fp.sub(r[dr - db + i], t);
                }
            }
            trim(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    pub fn gcd(fp: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(fp, &x, &y);
            x = y;
            y = r;
        }
        if let Some(&l) = x.last() {
            let inv = fp.inv(l);
            for c in x.iter_mut() {
                *c = fp.mul(*c, inv);
            }
        }
        x
    }

    /// Degree of the squarefree part: deg(p) - deg(gcd(p, p')).
    pub fn squarefree_degree(fp: Fp, p: &[u64]) -> usize {
        let mut q = p.to_vec();
        trim(&mut q);
        if q.len() <= 1 {
            return 0;
        }
        let d = derivative(fp, &q);
        if d.is_empty() {
            // cannot happen for deg < p
            return 0;
        }
        let g = gcd(fp, &q, &d);
        (q.len() - 1) - (g.len().saturating_sub(1))
    }
}

/// Plücker coordinates of the span of `basis` (k vectors of length n): all
/// k x k minors in lexicographic order of the column subsets, normalized so
/// the first nonzero coordinate is 1.
pub fn pluecker(fp: Fp, basis: &[Vec<u64>]) -> Result<Vec<u64>, CascadeError> {
    if basis.is_empty() {
        return Err(CascadeError::Linalg("zero-dimensional subspace has no Pluecker coordinates".into()));
    }
    let k = basis.len();
    let n = basis[0].len();
    let mut coords = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let minor = FieldMatrix::new(
            fp,
            basis
                .iter()
                .map(|row| subset.iter().map(|&c| row[c]).collect())
                .collect(),
        )
        .det();
        coords.push(minor);
        // next k-subset of {0..n-1} in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                // normalize and return
                if let Some(pos) = coords.iter().position(|&c| c != 0) {
                    let inv = fp.inv(coords[pos]);
                    for c in coords.iter_mut() {
                        *c = fp.mul(*c, inv);
                    }
                }
                return Ok(coords);
            }
            i -= 1;
            if subset[i] != i + n - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Kernel basis plus Plücker coordinates of the kernel subspace.
pub fn kernel_and_pluecker(
    m: &FieldMatrix,
) -> Result<(Vec<Vec<u64>>, Vec<u64>), CascadeError> {
    let ker = m.kernel();
    if ker.is_empty() {
        return Err(CascadeError::Linalg("kernel is zero-dimensional".into()));
    }
    let pl = pluecker(m.fp, &ker)?;
    Ok((ker, pl))
}

/// Rank of an exact rational matrix.
pub fn rank_rational(mut m: Vec<Vec<BigRational>>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(sel) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, sel);
        let piv = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries).
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut top = 0usize;
    loop {
        let rows = m.len();
        if top >= rows {
            break;
        }
        let cols = m[top].len();
        if cols == 0 {
            break;
        }
        // find a nonzero entry with minimal absolute value
        let mut best: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in 0..cols {
                if !m[i][j].is_zero()
                    && best
                        .map(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(top, bi);
        for row in m.iter_mut().skip(top) {
            row.swap(0, bj);
        }
        // eliminate; restart if a remainder shrinks the pivot
        let mut again = true;
        while again {
            again = false;
            let piv = m[top][0].clone();
            for i in top + 1..rows {
                if !m[i][0].is_zero() {
                    let q = &m[i][0] / &piv;
                    for j in 0..cols {
                        let t = &q * &m[top][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                    if !m[i][0].is_zero() {
                        m.swap(top, i);
                        again = true;
                    }
                }
            }
            let piv = m[top][0].clone();
            for j in 1..cols {
                if !m[top][j].is_zero() {
                    let q = &m[top][j] / &piv;
                    if !q.is_zero() {
                        for i in top..rows {
                            let t = &q * &m[i][0];
                            m[i][j] = &m[i][j] - &t;
                        }
                    }
                    if !m[top][j].is_zero() {
                        for row in m.iter_mut().skip(top) {
                            row.swap(0, j);
                        }
                        again = true;
                    }
                }
            }
        }
        diag.push(m[top][0].abs());
        for row in m.iter_mut().skip(top) {
            row.remove(0);
        }
        top += 1;
    }
    diag.retain(|d| !d.is_zero());
    diag
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn brat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn brat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact binomial coefficient.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n.max(0) && n >= 0 {
        return BigInt::zero();
    }
    if n < 0 {
        // not needed by callers; keep total
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{SplitMix64, DEFAULT_PRIME};

    fn fp() -> Fp {
        Fp::new(DEFAULT_PRIME)
    }

    #[test]
    fn identity_has_empty_kernel() {
        let m = FieldMatrix::identity(fp(), 4);
        assert_eq!(m.rank(), 4);
        assert!(kernel_and_pluecker(&m).is_err());
    }

    #[test]
    fn coordinate_kernel_pluecker() {
        // rows e1, e2, 0, 0: kernel = span(e3, e4)
        let p = fp().p;
        let m = FieldMatrix::new(
            fp(),
            vec![
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
            ],
        );
        let (ker, pl) = kernel_and_pluecker(&m).unwrap();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mat_vec(v).iter().all(|&x| x == 0));
        }
        // subsets of {0,1,2,3} lexicographic: {01},{02},{03},{12},{13},{23}
        assert_eq!(pl.len(), 6);
        assert_eq!(pl[5], 1);
        assert!(pl[..5].iter().all(|&c| c == 0));
        let _ = p;
    }

    #[test]
    fn random_rank2_kernel() {
        let f = fp();
        let mut g = SplitMix64::new(77);
        for _ in 0..20 {
            // build 4x4 of rank 2 as product of 4x2 and 2x4
            let a: Vec<Vec<u64>> = (0..4)
                .map(|_| (0..2).map(|_| g.next_u64() % f.p).collect())
                .collect();
            let b: Vec<Vec<u64>> = (0..2)
                .map(|_| (0..4).map(|_| g.next_u64() % f.p).collect())
                .collect();
            let mut prod = vec![vec![0u64; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..2 {
                        prod[i][j] = f.add(prod[i][j], f.mul(a[i][k], b[k][j]));
                    }
                }
            }
            let m = FieldMatrix::new(f, prod);
            if m.rank() != 2 {
                continue; // degenerate sample
            }
            let (ker, pl) = kernel_and_pluecker(&m).unwrap();
            assert_eq!(ker.len(), 2);
            for v in &ker {
                assert!(m.mat_vec(v).iter().all(|&x| x == 0));
            }
            assert!(pl.iter().any(|&c| c != 0));
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // companion matrix of x^3 - 2x - 5
        let f = fp();
        let m = FieldMatrix::new(
            f,
            vec![vec![0, 0, 5], vec![1, 0, 2], vec![0, 1, 0]],
        );
        let cp = m.charpoly();
        // x^3 - 2x - 5 ascending: [-5, -2, 0, 1]
        assert_eq!(cp, vec![f.neg(5), f.neg(2), 0, 1]);
    }

    #[test]
    fn squarefree_degree_detects_multiplicity() {
        let f = fp();
        // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
        let p = vec![f.neg(2), 5, f.neg(4), 1];
        assert_eq!(univariate::squarefree_degree(f, &p), 2);
        // x^2 + 1 squarefree
        assert_eq!(univariate::squarefree_degree(f, &[1, 0, 1]), 2);
    }

    #[test]
    fn rational_rank_and_snf() {
        let m = vec![
            vec![brat(1), brat(2), brat(3)],
            vec![brat(2), brat(4), brat(6)],
            vec![brat(0), brat(1), brat(1)],
        ];
        assert_eq!(rank_rational(m), 2);
        let d = smith_diagonal(vec![
            vec![big(2), big(4)],
            vec![big(6), big(8)],
        ]);
        assert_eq!(d, vec![big(2), big(4)]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(4, 5), big(0));
        assert_eq!(binomial(4, -1), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }
}
