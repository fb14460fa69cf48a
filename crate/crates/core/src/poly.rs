//! Univariate polynomials over the rationals and factorization into
//! irreducibles: square-free part, cyclotomic trial division, then
//! Cantor–Zassenhaus modulo a prime large enough that integer factors are
//! recovered from modular ones without lifting.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Int, Rat, Result};

/// Coefficients from the constant term upward, without trailing zeros.
pub type RatPoly = Vec<Rat>;
/// Integer polynomial, same layout as [`RatPoly`].
pub type IntPoly = Vec<Int>;

fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree; the zero polynomial has none.
pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn to_rat(p: &[Int]) -> RatPoly {
    p.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RatPoly {
    let n = a.len().max(b.len());
    let zero = Rat::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RatPoly {
    let nb: RatPoly = b.iter().map(|c| -c).collect();
    add(a, &nb)
}

pub fn mul(a: &[Rat], b: &[Rat]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[Rat], b: &[Rat]) -> (RatPoly, RatPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r: RatPoly = trim(a.to_vec());
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(p: &[Rat]) -> RatPoly {
    match p.last() {
        None => vec![],
        Some(l) => p.iter().map(|c| c / l).collect(),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Rat], b: &[Rat]) -> RatPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = divrem(&x, &y).1;
        x = y;
        y = r;
    }
    monic(&x)
}

/// `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(a: &[Rat], b: &[Rat]) -> (RatPoly, RatPoly, RatPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rat::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = r0.last().cloned().unwrap_or_else(Rat::one);
    let scale = |p: RatPoly| -> RatPoly { p.iter().map(|c| c / &l).collect() };
    (scale(r0), scale(s0), scale(t0))
}

pub fn derivative(p: &[Rat]) -> RatPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
            .collect(),
    )
}

/// Primitive integer multiple with positive leading coefficient.
pub fn primitive(p: &[Rat]) -> IntPoly {
    let den = p.iter().fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Int> = p.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(Int::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return vec![];
    }
    let sign = if ints.last().unwrap().is_negative() { -Int::one() } else { Int::one() };
    ints.iter().map(|c| c / &content * &sign).collect()
}

pub fn euler_phi(m: u64) -> u64 {
    let (mut n, mut out, mut p) = (m, m, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The cyclotomic polynomial `Φ_m`.
pub fn cyclotomic(m: u64) -> IntPoly {
    let mut p: RatPoly = vec![Rat::zero(); m as usize + 1];
    p[0] = -Rat::one();
    p[m as usize] = Rat::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = divrem(&p, &to_rat(&cyclotomic(d))).0;
        }
    }
    primitive(&p)
}

/// Distinct monic irreducible factors over the rationals, as primitive
/// integer polynomials, sorted by degree then coefficients.
pub fn factor(p: &[Rat], max_degree: usize) -> Result<Vec<IntPoly>> {
    let p = trim(p.to_vec());
    if degree(&p).unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let sqfree = divrem(&p, &gcd(&p, &derivative(&p))).0;
    let mut rest = primitive(&sqfree);
    let mut out = Vec::new();
    let deg = degree(&rest).unwrap();
    let mut m = 1u64;
    // φ(m) ≥ sqrt(m/2), so m ≤ 2·deg² covers every Φ_m of degree ≤ deg.
    while m <= 2 * (deg as u64).pow(2) + 2 {
        if euler_phi(m) as usize <= degree(&rest).unwrap_or(0) {
            let c = cyclotomic(m);
            let (q, r) = divrem(&to_rat(&rest), &to_rat(&c));
            if r.is_empty() {
                rest = primitive(&q);
                out.push(c);
            }
        }
        m += 1;
    }
    if let Some(d) = degree(&rest).filter(|&d| d > 0) {
        if d > max_degree {
            return Err(Error::unsupported(format!(
                "factoring a polynomial of degree {d} exceeds the bound {max_degree}"
            )));
        }
        out.extend(zassenhaus(&rest));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a prime

struct Fp {
    p: Int,
}

type ModPoly = Vec<Int>;

impl Fp {
    fn red(&self, x: &Int) -> Int {
        x.mod_floor(&self.p)
    }

    fn inv(&self, x: &Int) -> Int {
        x.modpow(&(&self.p - Int::from(2)), &self.p)
    }

    fn poly(&self, f: &[Int]) -> ModPoly {
        trim(f.iter().map(|c| self.red(c)).collect())
    }

    fn sub(&self, a: &[Int], b: &[Int]) -> ModPoly {
        let n = a.len().max(b.len());
        let z = Int::zero();
        trim(
            (0..n)
                .map(|i| self.red(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))))
                .collect(),
        )
    }

    fn mul(&self, a: &[Int], b: &[Int]) -> ModPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.poly(&out)
    }

    fn divrem(&self, a: &[Int], b: &[Int]) -> (ModPoly, ModPoly) {
        let db = b.len() - 1;
        let li = self.inv(&b[db]);
        let mut r = self.poly(a);
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![Int::zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.red(&(r.last().unwrap() * &li));
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = self.red(&(&r[k + j] - &c * bj));
            }
            q[k] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    fn monic(&self, a: &[Int]) -> ModPoly {
        match a.last() {
            None => vec![],
            Some(l) => {
                let li = self.inv(l);
                a.iter().map(|c| self.red(&(c * &li))).collect()
            }
        }
    }

    fn gcd(&self, a: &[Int], b: &[Int]) -> ModPoly {
        let (mut x, mut y) = (self.poly(a), self.poly(b));
        while !y.is_empty() {
            let r = self.divrem(&x, &y).1;
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    fn powmod(&self, base: &[Int], mut e: Int, m: &[Int]) -> ModPoly {
        let mut result = vec![Int::one()];
        let mut b = self.divrem(base, m).1;
        while e.is_positive() {
            if e.is_odd() {
                result = self.divrem(&self.mul(&result, &b), m).1;
            }
            b = self.divrem(&self.mul(&b, &b), m).1;
            e >>= 1;
        }
        result
    }

    fn derivative(&self, a: &[Int]) -> ModPoly {
        self.poly(
            &a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i))
                .collect::<Vec<_>>(),
        )
    }

    /// Pairs `(g, d)` with `g` the product of all degree-`d` factors.
    fn distinct_degree(&self, f: &[Int]) -> Vec<(ModPoly, usize)> {
        let x = vec![Int::zero(), Int::one()];
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, self.p.clone(), &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.divrem(&h, &f).1;
                out.push((g, d));
            }
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    fn equal_degree(&self, f: &[Int], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(self.monic(f));
            return;
        }
        let e = (num_traits::pow(self.p.clone(), d) - Int::one()) / Int::from(2);
        loop {
            let a: ModPoly = trim(
                (0..n)
                    .map(|_| {
                        let bytes: [u8; 32] = rng.gen();
                        self.red(&Int::from_bytes_le(num_bigint::Sign::Plus, &bytes))
                    })
                    .collect(),
            );
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, e.clone(), f), &[Int::one()]);
            let g = self.gcd(f, &b);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&h, d, rng, out);
                return;
            }
        }
    }
}

fn is_probable_prime(n: &Int) -> bool {
    let two = Int::from(2);
    if n < &two {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let q = Int::from(q);
        if n == &q {
            return true;
        }
        if n.is_multiple_of(&q) {
            return false;
        }
    }
    let n1 = n - Int::one();
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = Int::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn symmetric(x: &Int, p: &Int) -> Int {
    let r = x.mod_floor(p);
    if &r * 2 > *p {
        r - p
    } else {
        r
    }
}

fn int_divides(g: &[Int], f: &[Int]) -> Option<IntPoly> {
    let (q, r) = divrem(&to_rat(f), &to_rat(g));
    if r.is_empty() && q.iter().all(|c| c.is_integer()) {
        Some(q.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

/// Factors a primitive square-free integer polynomial.
fn zassenhaus(f: &[Int]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let norm_sq: Int = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + Int::one();
    let mut p = Int::from(2) * lc.abs() * (Int::one() << n) * norm + Int::one();
    let field = loop {
        if is_probable_prime(&p) && !lc.is_multiple_of(&p) {
            let fp = Fp { p: p.clone() };
            let fm = fp.poly(f);
            if fp.gcd(&fm, &fp.derivative(&fm)).len() == 1 {
                break fp;
            }
        }
        p += 1;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular = Vec::new();
    for (g, d) in field.distinct_degree(f) {
        field.equal_degree(&g, d, &mut rng, &mut modular);
    }
    modular.sort();

    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut found = false;
        for subset in subsets(modular.len(), size) {
            let lcr = rest.last().unwrap().clone();
            let mut prod = vec![lcr];
            for &i in &subset {
                prod = field.mul(&prod, &modular[i]);
            }
            let cand: Vec<Int> = prod.iter().map(|c| symmetric(c, &field.p)).collect();
            let cand = primitive(&to_rat(&cand));
            if let Some(q) = int_divides(&cand, &rest) {
                out.push(cand);
                rest = q;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, m)| m)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive(&to_rat(&rest)));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
