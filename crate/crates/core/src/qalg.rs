//! Finite-dimensional commutative algebras over the rationals: minimal
//! polynomials, splitting a reduced algebra into fields and locating the
//! roots of unity of a field.

use num_traits::{One, Zero};

use crate::intlin::{independent_columns, solve_field};
use crate::poly::{self, euler_phi, RatPoly};
use crate::{Error, Int, Rat, RatMatrix, Result};

/// Commutative algebra with `b_i b_j = Σ_k c_{ijk} b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct QAlgebra {
    dim: usize,
    mul: Vec<Rat>,
    one: Vec<Rat>,
}

impl QAlgebra {
    pub fn new(dim: usize, mul: Vec<Rat>, one: Vec<Rat>) -> Self {
        assert_eq!(mul.len(), dim * dim * dim, "structure tensor has wrong size");
        assert_eq!(one.len(), dim, "identity has wrong length");
        QAlgebra { dim, mul, one }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[Rat] {
        &self.one
    }

    pub fn zero(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero();
        v[i] = Rat::one();
        v
    }

    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.dim;
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let s = &self.mul[base + k];
                    if !s.is_zero() {
                        *o += &c * s;
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `x` (column `j` is `x·b_j`).
    pub fn mul_matrix(&self, x: &[Rat]) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.dim)
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        RatMatrix::from_columns(self.dim, &cols)
    }

    pub fn trace(&self, x: &[Rat]) -> Rat {
        let m = self.mul_matrix(x);
        (0..self.dim).fold(Rat::zero(), |acc, i| acc + &m[(i, i)])
    }

    /// Dimension of the ideal `e·A`.
    pub fn block_dim(&self, e: &[Rat]) -> usize {
        crate::intlin::rank_field(&self.mul_matrix(e))
    }

    /// Monic minimal polynomial of `x` inside the unital algebra `e·A`.
    pub fn min_poly(&self, x: &[Rat], e: &[Rat]) -> RatPoly {
        let x = self.mul(x, e);
        let mut powers: Vec<Vec<Rat>> = vec![e.to_vec()];
        loop {
            let next = self.mul(&x, powers.last().unwrap());
            let a = RatMatrix::from_columns(self.dim, &powers);
            if let Some(c) = solve_field(&a, &next) {
                let mut p: RatPoly = c.iter().map(|v| -v).collect();
                p.push(Rat::one());
                return p;
            }
            powers.push(next);
        }
    }

    /// `p(x)` evaluated in `e·A`, with `x^0 = e`.
    pub fn eval(&self, p: &[Rat], x: &[Rat], e: &[Rat]) -> Vec<Rat> {
        let x = self.mul(x, e);
        let mut acc = self.zero();
        for c in p.iter().rev() {
            acc = self.mul(&acc, &x);
            for (a, ei) in acc.iter_mut().zip(e) {
                *a += c * ei;
            }
        }
        acc
    }

    /// The algebra `e·A` on a basis chosen among the `e·b_i`, with the
    /// matrix whose columns are that basis in ambient coordinates.
    pub fn block(&self, e: &[Rat]) -> (QAlgebra, RatMatrix) {
        let m = self.mul_matrix(e);
        let idx = independent_columns(&m);
        let basis = m.select_columns(&idx);
        let k = idx.len();
        let coords = |v: &[Rat]| solve_field(&basis, v).expect("vector lies in the block");
        let mut mul = Vec::with_capacity(k * k * k);
        let cols = basis.columns();
        for i in 0..k {
            for j in 0..k {
                mul.extend(coords(&self.mul(&cols[i], &cols[j])));
            }
        }
        (QAlgebra::new(k, mul, coords(e)), basis)
    }

    /// Primitive idempotents of a reduced algebra, one per field factor,
    /// sorted by their coordinate vectors.
    pub fn fields(&self, max_degree: usize) -> Result<Vec<Vec<Rat>>> {
        let mut todo = vec![self.one.clone()];
        let mut done = Vec::new();
        while let Some(e) = todo.pop() {
            let n = self.block_dim(&e);
            if n <= 1 {
                done.push(e);
                continue;
            }
            let mut split = None;
            let mut field = false;
            for x in self.candidates(n) {
                let m = self.min_poly(&x, &e);
                let factors = poly::factor(&m, max_degree)?;
                if factors.len() > 1 {
                    split = Some((x, m, factors));
                    break;
                }
                if m.len() - 1 == n {
                    field = true;
                    break;
                }
            }
            match split {
                None if field => done.push(e),
                None => return Err(Error::unsupported("no primitive element found")),
                Some((x, m, factors)) => {
                    for f in factors {
                        let f = poly::to_rat(&f);
                        let other = poly::divrem(&m, &f).0;
                        let (_, _, t) = poly::xgcd(&f, &other);
                        let idem = poly::divrem(&poly::mul(&t, &other), &m).1;
                        todo.push(self.eval(&idem, &x, &e));
                    }
                }
            }
        }
        done.sort();
        Ok(done)
    }

    /// Basis vectors, then points `Σ t^i b_i` on the moment curve. A block
    /// that is a field has a primitive element among the first
    /// `n(n-1)/2 + 1` curve points for each pair of embeddings to separate.
    fn candidates(&self, n: usize) -> impl Iterator<Item = Vec<Rat>> + '_ {
        let basis = (0..self.dim).map(|i| self.basis_vector(i));
        let curve = (2..(n * n + 3) as i64).map(move |t| {
            let mut p = Rat::one();
            (0..self.dim)
                .map(|_| {
                    let c = p.clone();
                    p *= Rat::from_integer(Int::from(t));
                    c
                })
                .collect()
        });
        basis.chain(curve)
    }

    /// For a field, `(w, ζ)` with `ζ` generating its cyclic group of roots
    /// of unity of order `w`.
    pub fn roots_of_unity(&self, max_degree: usize) -> Result<(u64, Vec<Rat>)> {
        let n = self.dim as u64;
        let mut ms: Vec<u64> = (3..=2 * n * n + 2)
            .filter(|m| m.is_multiple_of(2) && n.is_multiple_of(euler_phi(*m)))
            .collect();
        ms.sort_by(|a, b| b.cmp(a));
        for m in ms {
            if let Some(z) = self.cyclotomic_root(m, max_degree)? {
                return Ok((m, z));
            }
        }
        Ok((2, self.one.iter().map(|c| -c).collect()))
    }

    /// A root of `Φ_m`, found through a factor of `K ⊗ Q[y]/Φ_m` of the
    /// same dimension as `K`.
    fn cyclotomic_root(&self, m: u64, max_degree: usize) -> Result<Option<Vec<Rat>>> {
        let n = self.dim;
        let phi_poly = poly::to_rat(&poly::cyclotomic(m));
        let f = phi_poly.len() - 1;
        let ypow: Vec<RatPoly> = (0..2 * f)
            .map(|s| {
                let mut mono = vec![Rat::zero(); s + 1];
                mono[s] = Rat::one();
                poly::divrem(&mono, &phi_poly).1
            })
            .collect();
        let dim = n * f;
        let mut mul = vec![Rat::zero(); dim * dim * dim];
        for i in 0..n {
            for j in 0..n {
                for r in 0..n {
                    let c = &self.mul[(i * n + j) * n + r];
                    if c.is_zero() {
                        continue;
                    }
                    for k in 0..f {
                        for l in 0..f {
                            for (s, ys) in ypow[k + l].iter().enumerate() {
                                let a = i * f + k;
                                let b = j * f + l;
                                mul[(a * dim + b) * dim + r * f + s] += c * ys;
                            }
                        }
                    }
                }
            }
        }
        let mut one = vec![Rat::zero(); dim];
        for (i, c) in self.one.iter().enumerate() {
            one[i * f] = c.clone();
        }
        let t = QAlgebra::new(dim, mul, one.clone());
        let Some(e) = t.fields(max_degree)?.into_iter().find(|e| t.block_dim(e) == n) else {
            return Ok(None);
        };
        let cols: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); dim];
                v[i * f] = Rat::one();
                t.mul(&e, &v)
            })
            .collect();
        let mut y = vec![Rat::zero(); dim];
        for (i, c) in self.one.iter().enumerate() {
            y[i * f + 1] = c.clone();
        }
        let rhs = t.mul(&e, &y);
        let Some(z) = solve_field(&RatMatrix::from_columns(dim, &cols), &rhs) else {
            return Err(Error::invariant("field factor does not contain the cyclotomic root"));
        };
        Ok(Some(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::from_integer(Int::from(v))
    }

    /// `Q[x]/(p)` on the power basis.
    fn power_basis(p: &[i64]) -> QAlgebra {
        let n = p.len() - 1;
        let pr: RatPoly = p.iter().map(|&c| r(c)).collect();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut mono = vec![Rat::zero(); i + j + 1];
                mono[i + j] = Rat::one();
                let mut red = poly::divrem(&mono, &pr).1;
                red.resize(n, Rat::zero());
                mul.extend(red);
            }
        }
        let mut one = vec![Rat::zero(); n];
        one[0] = Rat::one();
        QAlgebra::new(n, mul, one)
    }

    #[test]
    fn splits_product_of_fields() {
        // x^3 - x = x(x-1)(x+1)
        let a = power_basis(&[0, -1, 0, 1]);
        let fs = a.fields(24).unwrap();
        assert_eq!(fs.len(), 3);
        let sum = fs.iter().fold(a.zero(), |acc, e| {
            acc.iter().zip(e).map(|(x, y)| x + y).collect()
        });
        assert_eq!(sum, a.one().to_vec());
        for e in &fs {
            assert_eq!(a.mul(e, e), *e);
        }
    }

    #[test]
    fn field_stays_whole() {
        let a = power_basis(&[1, 0, 1]);
        assert_eq!(a.fields(24).unwrap().len(), 1);
        // (x^2+1)^... x^4 - 1 splits into three fields.
        let b = power_basis(&[-1, 0, 0, 0, 1]);
        assert_eq!(b.fields(24).unwrap().len(), 3);
    }

    #[test]
    fn roots_of_unity_in_fields() {
        assert_eq!(power_basis(&[1, 0, 1]).roots_of_unity(24).unwrap().0, 4);
        assert_eq!(power_basis(&[1, 1, 1]).roots_of_unity(24).unwrap().0, 6);
        assert_eq!(power_basis(&[-2, 0, 1]).roots_of_unity(24).unwrap().0, 2);
        let (w, z) = power_basis(&[1, 0, 0, 0, 1]).roots_of_unity(24).unwrap();
        assert_eq!(w, 8);
        let k = power_basis(&[1, 0, 0, 0, 1]);
        let mut p = k.one().to_vec();
        for _ in 0..4 {
            p = k.mul(&p, &z);
        }
        assert_eq!(p, k.one().iter().map(|c| -c).collect::<Vec<_>>());
    }

    #[test]
    fn min_poly_and_trace() {
        let a = power_basis(&[1, 0, 1]);
        let x = vec![r(0), r(1)];
        assert_eq!(a.min_poly(&x, a.one()), vec![r(1), r(0), r(1)]);
        assert_eq!(a.trace(a.one()), r(2));
        assert_eq!(a.trace(&x), r(0));
    }
}
