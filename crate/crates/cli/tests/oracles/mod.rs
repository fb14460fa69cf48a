//! Brute-force references used by the acceptance run.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use stark_core::abgroups::{subgroup_from_generators, AbHom, FinAbGroup, Subgroup};
use stark_core::intlin::det;
use stark_core::morphmods::{MorphDec, MorphModule};
use stark_core::orders::Order;
use stark_core::{Int, IntMatrix};

/// Number of ring automorphisms of `order` whose matrices have entries in
/// `{-1, 0, 1}`, found by backtracking over the images of basis vectors.
/// Basis vector 0 must be the identity and every basis vector a unit of
/// finite order, as in an integral group ring.
pub fn automorphism_count(order: &Order) -> usize {
    let n = order.rank();
    let one = order.one().to_vec();
    let pow = |x: &[Int], k: usize| (1..k).fold(x.to_vec(), |acc, _| order.mul(&acc, x));
    let elem_order = |x: &[Int]| (1..=n).find(|&k| pow(x, k) == one).expect("basis vector of finite order");
    let mut all = vec![vec![]];
    for _ in 0..n {
        all = all
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                [-1i64, 0, 1].into_iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    let all: Vec<Vec<Int>> = all.into_iter().map(|v| v.into_iter().map(Int::from).collect()).collect();
    let candidates: Vec<Vec<Vec<Int>>> = (0..n)
        .map(|i| {
            let k = elem_order(&order.basis_vector(i));
            all.iter()
                .filter(|x| x.iter().any(|c| !c.is_zero()) && pow(x, k) == one)
                .cloned()
                .collect()
        })
        .collect();
    let products: Vec<Vec<Vec<Int>>> = (0..n)
        .map(|i| (0..n).map(|j| order.mul(&order.basis_vector(i), &order.basis_vector(j))).collect())
        .collect();
    let mut cols = vec![one.clone()];
    let mut count = 0;
    extend(order, &candidates, &products, &mut cols, &mut count);
    count
}

fn image(cols: &[Vec<Int>], v: &[Int]) -> Option<Vec<Int>> {
    let n = v.len();
    let mut out = vec![Int::zero(); n];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let col = cols.get(k)?;
        for i in 0..n {
            out[i] += c * &col[i];
        }
    }
    Some(out)
}

fn extend(
    order: &Order,
    candidates: &[Vec<Vec<Int>>],
    products: &[Vec<Vec<Int>>],
    cols: &mut Vec<Vec<Int>>,
    count: &mut usize,
) {
    let n = order.rank();
    let k = cols.len();
    if k == n {
        if det(&IntMatrix::from_columns(n, cols)).abs() == Int::from(1) {
            *count += 1;
        }
        return;
    }
    for x in &candidates[k] {
        cols.push(x.clone());
        let consistent = (0..=k).all(|i| match image(cols, &products[i][k]) {
            Some(img) => img == order.mul(&cols[i], &cols[k]),
            None => true,
        });
        if consistent {
            extend(order, candidates, products, cols, count);
        }
        cols.pop();
    }
}

/// Invariant factors from the gcds of `k x k` minors.
pub fn invariant_factors(a: &IntMatrix) -> Vec<Int> {
    let (m, n) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut prev = Int::from(1);
    for k in 1..=m.min(n) {
        let mut g = Int::zero();
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let minor = a.select_rows(&rows).select_columns(&cols);
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(Int::zero(), m.min(n) - k + 1));
            return out;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// A finite abelian group of order at most 64 as an addition table, with
/// subsets encoded as bit masks over element indices.
pub struct Table {
    pub group: FinAbGroup,
    pub size: usize,
    add: Vec<Vec<usize>>,
    subgroups: Vec<u64>,
}

impl Table {
    pub fn new(g: &FinAbGroup) -> Self {
        let elems = g.elements(64).expect("small group");
        let size = elems.len();
        let add = elems
            .iter()
            .map(|x| elems.iter().map(|y| g.index_of(&g.add(x, y))).collect())
            .collect();
        let mut t = Table {
            group: g.clone(),
            size,
            add,
            subgroups: vec![],
        };
        let mut seen = BTreeSet::from([1u64]);
        let mut queue = vec![1u64];
        while let Some(s) = queue.pop() {
            for x in 0..size {
                if s >> x & 1 == 0 {
                    let j = t.closure(s | 1 << x);
                    if seen.insert(j) {
                        queue.push(j);
                    }
                }
            }
        }
        t.subgroups = seen.into_iter().collect();
        t
    }

    pub fn closure(&self, mut s: u64) -> u64 {
        s |= 1;
        loop {
            let mut next = s;
            for a in bits(s) {
                for b in bits(s) {
                    next |= 1 << self.add[a][b];
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    pub fn subgroups(&self) -> &[u64] {
        &self.subgroups
    }

    /// Pairs `(S0, S1)` with `S0 + S1` the whole group and `S0 ∩ S1 = 0`.
    pub fn decompositions(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for &a in &self.subgroups {
            for &b in &self.subgroups {
                if a & b == 1 && a.count_ones() as usize * b.count_ones() as usize == self.size {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Multiset of element orders, which determines the isomorphism type.
    pub fn order_profile(&self, s: u64) -> Vec<usize> {
        let mut v: Vec<usize> = bits(s)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = self.add[y][x];
                    k += 1;
                }
                k
            })
            .collect();
        v.sort();
        v
    }

    pub fn mask_of(&self, s: &Subgroup) -> u64 {
        s.elements(64)
            .expect("small group")
            .iter()
            .fold(0u64, |m, x| m | 1 << self.group.index_of(x))
    }

    pub fn subgroup_of(&self, m: u64) -> Subgroup {
        let gens: Vec<_> = bits(m).map(|i| self.group.element_at(i)).collect();
        subgroup_from_generators(&self.group, &gens)
    }
}

pub fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

/// A homomorphism as an index map between tables.
pub fn hom_table(f: &AbHom, src: &Table, tgt: &Table) -> Vec<usize> {
    (0..src.size)
        .map(|i| tgt.group.index_of(&f.apply(&src.group.element_at(i))))
        .collect()
}

pub fn image_mask(map: &[usize], s: u64) -> u64 {
    bits(s).fold(0u64, |m, i| m | 1 << map[i])
}

/// `(S0, S1, T0, T1)` with `d(S_i) ⊆ T_i` and `d: S1 → T1` bijective.
pub type DecMask = (u64, u64, u64, u64);

pub fn dec_i(d: &[usize], src: &Table, tgt: &Table) -> Vec<DecMask> {
    let tgt_decs = tgt.decompositions();
    let mut out = Vec::new();
    for (s0, s1) in src.decompositions() {
        let t1 = image_mask(d, s1);
        if t1.count_ones() != s1.count_ones() {
            continue;
        }
        let ds0 = image_mask(d, s0);
        for &(t0, t1b) in &tgt_decs {
            if t1b == t1 && ds0 & !t0 == 0 {
                out.push((s0, s1, t0, t1));
            }
        }
    }
    out
}

fn is_direct(whole: u64, a: u64, b: u64) -> bool {
    a & !whole == 0 && b & !whole == 0 && a & b == 1 && a.count_ones() * b.count_ones() == whole.count_ones()
}

/// `x ≤ y`: some submodule `C` has `x0 = y0 + C` and `x1 + C = y1`.
pub fn dec_leq(d: &[usize], x: DecMask, y: DecMask) -> bool {
    let cs = x.0 & y.1;
    let ct = x.2 & y.3;
    is_direct(x.0, y.0, cs)
        && is_direct(y.1, x.1, cs)
        && is_direct(x.2, y.2, ct)
        && is_direct(y.3, x.3, ct)
        && image_mask(d, cs) & !ct == 0
}

pub fn maximal(d: &[usize], decs: &[DecMask]) -> Vec<DecMask> {
    decs.iter()
        .copied()
        .filter(|&x| {
            !decs
                .iter()
                .any(|&y| y != x && y.1.count_ones() > x.1.count_ones() && dec_leq(d, x, y))
        })
        .collect()
}

pub fn dec_mask(dec: &MorphDec, src: &Table, tgt: &Table) -> DecMask {
    (
        src.mask_of(dec.src(0)),
        src.mask_of(dec.src(1)),
        tgt.mask_of(dec.tgt(0)),
        tgt.mask_of(dec.tgt(1)),
    )
}

pub fn dec_from_mask(m: &MorphModule, x: DecMask, src: &Table, tgt: &Table) -> MorphDec {
    MorphDec::new(
        m,
        [src.subgroup_of(x.0), src.subgroup_of(x.1)],
        [tgt.subgroup_of(x.2), tgt.subgroup_of(x.3)],
    )
    .expect("valid decomposition")
}

pub fn is_bijection(map: &[usize]) -> bool {
    map.iter().collect::<HashSet<_>>().len() == map.len()
}
