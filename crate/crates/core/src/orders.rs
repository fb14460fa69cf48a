//! Orders given by structure constants, the expression language used to
//! build them, and the ring-theoretic invariants the gradings layer needs:
//! reducedness, idempotents, connected components, roots of unity, the
//! trace pairing and the autopotent span.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::abgroups::{from_presentation, Elem, FinAbGroup};
use crate::intlin::{det, independent_columns, inverse_field, HnfBasis};
use crate::poly;
use crate::qalg::QAlgebra;
use crate::{Error, Int, IntHnf, IntMatrix, Limits, Rat, RatMatrix, Result};

/// Commutative ring on `Z^n` with `b_i b_j = Σ_k c_{ijk} b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    rank: usize,
    mul: Vec<Int>,
    one: Vec<Int>,
}

impl Order {
    /// Validates commutativity, associativity and the identity.
    pub fn new(rank: usize, mul: Vec<Int>, one: Vec<Int>) -> Result<Self> {
        let o = Self::from_parts(rank, mul, one)?;
        let n = rank;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if o.c(i, j, k) != o.c(j, i, k) {
                        return Err(Error::input(format!("structure constants not commutative at ({i},{j})")));
                    }
                }
            }
        }
        for i in 0..n {
            let bi = o.basis_vector(i);
            if o.mul(&o.one, &bi) != bi {
                return Err(Error::input("declared one is not an identity"));
            }
        }
        for i in 0..n {
            for j in i..n {
                let bij = o.mul(&o.basis_vector(i), &o.basis_vector(j));
                for k in 0..n {
                    let bk = o.basis_vector(k);
                    let left = o.mul(&bij, &bk);
                    let right = o.mul(&o.basis_vector(i), &o.mul(&o.basis_vector(j), &bk));
                    if left != right {
                        return Err(Error::input(format!("multiplication not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(o)
    }

    /// Shape checks only; for tensors produced by trusted constructions.
    pub(crate) fn from_parts(rank: usize, mul: Vec<Int>, one: Vec<Int>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::input("an order must have positive rank"));
        }
        if mul.len() != rank * rank * rank || one.len() != rank {
            return Err(Error::input("structure tensor or identity has the wrong size"));
        }
        Ok(Order { rank, mul, one })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn structure_constants(&self) -> &[Int] {
        &self.mul
    }

    pub fn one(&self) -> &[Int] {
        &self.one
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::zero(); self.rank]
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &Int {
        &self.mul[(i * self.rank + j) * self.rank + k]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Int> {
        let mut v = self.zero();
        v[i] = Int::one();
        v
    }

    pub fn mul(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let n = self.rank;
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

    pub fn pow(&self, x: &[Int], k: u64) -> Vec<Int> {
        let mut out = self.one.clone();
        for _ in 0..k {
            out = self.mul(&out, x);
        }
        out
    }

    /// Column `j` is `x·b_j`.
    pub fn mul_matrix(&self, x: &[Int]) -> IntMatrix {
        let cols: Vec<Vec<Int>> = (0..self.rank)
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        IntMatrix::from_columns(self.rank, &cols)
    }

    /// Regular trace.
    pub fn trace(&self, x: &[Int]) -> Int {
        let m = self.mul_matrix(x);
        (0..self.rank).fold(Int::zero(), |acc, i| acc + &m[(i, i)])
    }

    /// `G_{ij} = Tr(b_i b_j)`.
    pub fn gram(&self) -> IntMatrix {
        let n = self.rank;
        let traces: Vec<Int> = (0..n).map(|k| self.trace(&self.basis_vector(k))).collect();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = (0..n).fold(Int::zero(), |acc, k| acc + self.c(i, j, k) * &traces[k]);
            }
        }
        g
    }

    pub fn discriminant(&self) -> Int {
        det(&self.gram())
    }

    pub fn is_reduced(&self) -> bool {
        !self.discriminant().is_zero()
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        if self.is_reduced() {
            Ok(())
        } else {
            Err(Error::NotReduced)
        }
    }

    /// Multiplicative order of `x`, if it is at most `bound`.
    pub fn mult_order(&self, x: &[Int], bound: usize) -> Option<usize> {
        let mut p = x.to_vec();
        for k in 1..=bound {
            if p == self.one {
                return Some(k);
            }
            p = self.mul(&p, x);
        }
        None
    }

    /// Exact multiplicative order of `x` when it is a root of unity: the
    /// minimal polynomial must be a product of distinct cyclotomic
    /// polynomials, and the order is the lcm of their indices.
    pub fn torsion_order(&self, x: &[Int]) -> Option<Int> {
        let alg = self.qalgebra();
        let xr: Vec<Rat> = x.iter().map(|v| Rat::from_integer(v.clone())).collect();
        let mut p = alg.min_poly(&xr, alg.one());
        let deg = p.len() - 1;
        let mut order = Int::one();
        let mut m = 1u64;
        while p.len() > 1 && m <= 2 * (deg as u64).pow(2) + 2 {
            if poly::euler_phi(m) as usize <= deg {
                let (q, r) = poly::divrem(&p, &poly::to_rat(&poly::cyclotomic(m)));
                if r.iter().all(Zero::is_zero) {
                    p = q;
                    order = num_integer::Integer::lcm(&order, &Int::from(m));
                }
            }
            m += 1;
        }
        (p.len() == 1).then_some(order)
    }

    pub fn qalgebra(&self) -> QAlgebra {
        let r = |v: &Int| Rat::from_integer(v.clone());
        QAlgebra::new(self.rank, self.mul.iter().map(r).collect(), self.one.iter().map(r).collect())
    }

    /// Smallest subring containing `gens`.
    pub fn ring_closure(&self, gens: &[Vec<Int>]) -> IntHnf {
        let mut vecs: Vec<Vec<Int>> = gens.to_vec();
        vecs.push(self.one.clone());
        let mut l = HnfBasis::span(self.rank, &vecs);
        loop {
            let basis = l.vectors();
            let mut more = basis.clone();
            for i in 0..basis.len() {
                for j in i..basis.len() {
                    let p = self.mul(&basis[i], &basis[j]);
                    if !l.contains(&p) {
                        more.push(p);
                    }
                }
            }
            if more.len() == basis.len() {
                return l;
            }
            l = HnfBasis::span(self.rank, &more);
        }
    }

    pub fn is_subring(&self, l: &IntHnf) -> bool {
        if !l.contains(&self.one) {
            return false;
        }
        let b = l.vectors();
        (0..b.len()).all(|i| (i..b.len()).all(|j| l.contains(&self.mul(&b[i], &b[j]))))
    }

    /// The subring `l` as an order in its own basis.
    pub fn sub_order(&self, l: &IntHnf) -> Result<Order> {
        if !self.is_subring(l) {
            return Err(Error::input("lattice is not a subring"));
        }
        let b = l.vectors();
        let k = b.len();
        let mut mul = Vec::with_capacity(k * k * k);
        for x in &b {
            for y in &b {
                mul.extend(l.coordinates(&self.mul(x, y)).expect("closed"));
            }
        }
        Order::from_parts(k, mul, l.coordinates(&self.one).expect("contains one"))
    }

    /// Structure constants after the change of basis given by the columns
    /// of a unimodular matrix.
    pub fn rebase(&self, basis: &IntMatrix) -> Result<Order> {
        let l = HnfBasis::span(self.rank, &basis.columns());
        if l.index() != Some(Int::one()) || basis.cols() != self.rank {
            return Err(Error::input("basis change is not unimodular"));
        }
        let inv = inverse_field(&basis.map(|v| Rat::from_integer(v.clone()))).expect("unimodular");
        let coords = |v: &[Int]| -> Vec<Int> {
            let r: Vec<Rat> = v.iter().map(|x| Rat::from_integer(x.clone())).collect();
            inv.mul_vec(&r).iter().map(|c| c.to_integer()).collect()
        };
        let cols = basis.columns();
        let mut mul = Vec::new();
        for x in &cols {
            for y in &cols {
                mul.extend(coords(&self.mul(x, y)));
            }
        }
        Order::from_parts(self.rank, mul, coords(&self.one))
    }
}

// ---------------------------------------------------------------------------
// Expressions and provenance

/// Structure constants of an atom, with optionally declared generators of
/// its roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSpec {
    pub rank: usize,
    pub mul: Vec<Int>,
    pub one: Vec<Int>,
    pub mu_gens: Option<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderExpr {
    Int,
    Atom(AtomSpec),
    GroupRing(Box<OrderExpr>, FinAbGroup),
    Product(Vec<OrderExpr>),
    Span(Box<OrderExpr>, Vec<Vec<Int>>),
}

fn tensor(rank: usize, entries: &[((usize, usize), &[i64])]) -> Vec<Int> {
    let mut mul = vec![Int::zero(); rank * rank * rank];
    for ((i, j), v) in entries {
        for (k, c) in v.iter().enumerate() {
            mul[(i * rank + j) * rank + k] = Int::from(*c);
            mul[(j * rank + i) * rank + k] = Int::from(*c);
        }
    }
    mul
}

impl OrderExpr {
    /// `Z[i]` on the basis `1, i`.
    pub fn gaussian() -> Self {
        OrderExpr::Atom(AtomSpec {
            rank: 2,
            mul: tensor(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 1), &[-1, 0])]),
            one: vec![Int::one(), Int::zero()],
            mu_gens: Some(vec![vec![Int::zero(), Int::one()]]),
        })
    }

    /// `Z[ζ3]` on the basis `1, ζ3`.
    pub fn eisenstein() -> Self {
        OrderExpr::Atom(AtomSpec {
            rank: 2,
            mul: tensor(2, &[((0, 0), &[1, 0]), ((0, 1), &[0, 1]), ((1, 1), &[-1, -1])]),
            one: vec![Int::one(), Int::zero()],
            mu_gens: Some(vec![vec![Int::zero(), -Int::one()]]),
        })
    }

    pub fn group_ring(base: OrderExpr, group: FinAbGroup) -> Self {
        OrderExpr::GroupRing(Box::new(base), group)
    }
}

/// How an order was assembled; drives the compositional shortcuts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Int,
    Atom { mu_gens: Option<Vec<Vec<Int>>> },
    /// Basis element `b_i·g` sits at index `group.index_of(g)·rank(base) + i`.
    GroupRing { base: Box<Built>, group: FinAbGroup },
    /// Factors occupy consecutive coordinate blocks.
    Product(Vec<Built>),
    Span { ambient: Box<Built>, basis: IntHnf },
    /// No structural information.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub order: Order,
    pub prov: Provenance,
}

impl Built {
    pub fn plain(order: Order) -> Self {
        Built {
            order,
            prov: Provenance::Plain,
        }
    }

    /// `Some(true)` when connectedness follows from the construction.
    pub fn known_connected(&self) -> Option<bool> {
        match &self.prov {
            Provenance::Int => Some(true),
            Provenance::GroupRing { base, .. } => base.known_connected(),
            Provenance::Product(f) if f.len() > 1 => Some(false),
            Provenance::Product(f) => f[0].known_connected(),
            _ => None,
        }
    }
}

pub fn int_order() -> Order {
    Order::from_parts(1, vec![Int::one()], vec![Int::one()]).expect("rank 1")
}

/// `A[G]`.
pub fn group_ring_order(base: &Order, group: &FinAbGroup, bound: usize) -> Result<Order> {
    let elems = group.elements(bound)?;
    let n = base.rank();
    let m = elems.len();
    let rank = n * m;
    let mut mul = vec![Int::zero(); rank * rank * rank];
    for (gi, g) in elems.iter().enumerate() {
        for (hi, h) in elems.iter().enumerate() {
            let ki = group.index_of(&group.add(g, h));
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let c = base.c(i, j, k);
                        if !c.is_zero() {
                            mul[((gi * n + i) * rank + hi * n + j) * rank + ki * n + k] = c.clone();
                        }
                    }
                }
            }
        }
    }
    let mut one = vec![Int::zero(); rank];
    one[..n].clone_from_slice(base.one());
    Order::from_parts(rank, mul, one)
}

/// Componentwise product.
pub fn product_order(factors: &[&Order]) -> Result<Order> {
    let rank: usize = factors.iter().map(|f| f.rank()).sum();
    let mut mul = vec![Int::zero(); rank * rank * rank];
    let mut one = Vec::with_capacity(rank);
    let mut off = 0;
    for f in factors {
        let n = f.rank();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mul[((off + i) * rank + off + j) * rank + off + k] = f.c(i, j, k).clone();
                }
            }
        }
        one.extend(f.one().iter().cloned());
        off += n;
    }
    Order::from_parts(rank, mul, one)
}

pub fn build(expr: &OrderExpr) -> Result<Built> {
    build_with(expr, &Limits::default())
}

pub fn build_with(expr: &OrderExpr, limits: &Limits) -> Result<Built> {
    Ok(match expr {
        OrderExpr::Int => Built {
            order: int_order(),
            prov: Provenance::Int,
        },
        OrderExpr::Atom(a) => {
            let order = Order::new(a.rank, a.mul.clone(), a.one.clone())?;
            if let Some(g) = &a.mu_gens {
                if g.iter().any(|v| v.len() != a.rank) {
                    return Err(Error::input("declared root of unity has the wrong length"));
                }
            }
            Built {
                order,
                prov: Provenance::Atom {
                    mu_gens: a.mu_gens.clone(),
                },
            }
        }
        OrderExpr::GroupRing(base, group) => {
            let base = build_with(base, limits)?;
            Built {
                order: group_ring_order(&base.order, group, limits.max_enum)?,
                prov: Provenance::GroupRing {
                    base: Box::new(base),
                    group: group.clone(),
                },
            }
        }
        OrderExpr::Product(fs) => {
            if fs.is_empty() {
                return Err(Error::input("empty product"));
            }
            let parts: Vec<Built> = fs.iter().map(|f| build_with(f, limits)).collect::<Result<_>>()?;
            let orders: Vec<&Order> = parts.iter().map(|p| &p.order).collect();
            Built {
                order: product_order(&orders)?,
                prov: Provenance::Product(parts),
            }
        }
        OrderExpr::Span(ambient, gens) => {
            let ambient = build_with(ambient, limits)?;
            if gens.iter().any(|g| g.len() != ambient.order.rank()) {
                return Err(Error::input("span generator has the wrong length"));
            }
            let basis = ambient.order.ring_closure(gens);
            Built {
                order: ambient.order.sub_order(&basis)?,
                prov: Provenance::Span {
                    ambient: Box::new(ambient),
                    basis,
                },
            }
        }
    })
}

// ---------------------------------------------------------------------------
// Idempotents and components

fn to_int_vec(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

fn rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

/// All idempotents, sorted.
pub fn idempotents(order: &Order, limits: &Limits) -> Result<Vec<Vec<Int>>> {
    order.require_reduced()?;
    let prim = order.qalgebra().fields(limits.max_factor_degree)?;
    if prim.len() > limits.max_components {
        return Err(Error::too_large("rational components", limits.max_components));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << prim.len()) {
        let mut s = vec![Rat::zero(); order.rank()];
        for (i, e) in prim.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in s.iter_mut().zip(e) {
                    *a += b;
                }
            }
        }
        if let Some(v) = to_int_vec(&s) {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

/// A factor `e·R` of `R`, with the inclusion (columns: its basis in `R`)
/// and the projection `x ↦ e·x` in those coordinates.
#[derive(Clone, Debug)]
pub struct Component {
    pub built: Built,
    pub incl: IntMatrix,
    pub proj: IntMatrix,
}

fn identity_component(b: &Built) -> Component {
    let n = b.order.rank();
    Component {
        built: b.clone(),
        incl: IntMatrix::identity(n),
        proj: IntMatrix::identity(n),
    }
}

/// Finest decomposition into connected factors, in a deterministic order.
pub fn components(b: &Built, limits: &Limits) -> Result<Vec<Component>> {
    b.order.require_reduced()?;
    match &b.prov {
        Provenance::Int => return Ok(vec![identity_component(b)]),
        Provenance::Product(parts) => {
            let n = b.order.rank();
            let mut out = Vec::new();
            let mut off = 0;
            for p in parts {
                let k = p.order.rank();
                for c in components(p, limits)? {
                    let mut incl = IntMatrix::zeros(n, c.incl.cols());
                    let mut proj = IntMatrix::zeros(c.proj.rows(), n);
                    for r in 0..k {
                        for col in 0..c.incl.cols() {
                            incl[(off + r, col)] = c.incl[(r, col)].clone();
                            proj[(col, off + r)] = c.proj[(col, r)].clone();
                        }
                    }
                    out.push(Component {
                        built: c.built,
                        incl,
                        proj,
                    });
                }
                off += k;
            }
            return Ok(out);
        }
        Provenance::GroupRing { base, group } => {
            if base.known_connected() == Some(true) {
                return Ok(vec![identity_component(b)]);
            }
            let base_comps = components(base, limits)?;
            if base_comps.len() == 1 {
                return Ok(vec![identity_component(b)]);
            }
            let m = group.size().expect("group was enumerated at build time");
            let nb = base.order.rank();
            let n = b.order.rank();
            let mut out = Vec::new();
            for c in base_comps {
                let k = c.incl.cols();
                let order = group_ring_order(&c.built.order, group, limits.max_enum)?;
                let mut incl = IntMatrix::zeros(n, k * m);
                let mut proj = IntMatrix::zeros(k * m, n);
                for g in 0..m {
                    for r in 0..nb {
                        for col in 0..k {
                            incl[(g * nb + r, g * k + col)] = c.incl[(r, col)].clone();
                            proj[(g * k + col, g * nb + r)] = c.proj[(col, r)].clone();
                        }
                    }
                }
                out.push(Component {
                    built: Built {
                        order,
                        prov: Provenance::GroupRing {
                            base: Box::new(c.built),
                            group: group.clone(),
                        },
                    },
                    incl,
                    proj,
                });
            }
            return Ok(out);
        }
        _ => {}
    }
    let idems = idempotents(&b.order, limits)?;
    let nonzero: Vec<&Vec<Int>> = idems.iter().filter(|e| e.iter().any(|c| !c.is_zero())).collect();
    let minimal: Vec<&Vec<Int>> = nonzero
        .iter()
        .filter(|e| {
            !nonzero
                .iter()
                .any(|f| f != *e && b.order.mul(e, f) == **f)
        })
        .cloned()
        .collect();
    if minimal.len() == 1 {
        return Ok(vec![identity_component(b)]);
    }
    let mut out = Vec::new();
    for e in minimal {
        let me = b.order.mul_matrix(e);
        let l = HnfBasis::span(b.order.rank(), &me.columns());
        let incl = l.basis.clone();
        let proj_cols: Vec<Vec<Int>> = me
            .columns()
            .iter()
            .map(|v| l.coordinates(v).expect("e·R contains e·b_j"))
            .collect();
        let proj = IntMatrix::from_columns(l.rank(), &proj_cols);
        let k = l.rank();
        let mut mul = Vec::with_capacity(k * k * k);
        let basis = l.vectors();
        for x in &basis {
            for y in &basis {
                mul.extend(l.coordinates(&b.order.mul(x, y)).expect("ideal"));
            }
        }
        let one = l.coordinates(e).expect("e ∈ e·R");
        out.push(Component {
            built: Built::plain(Order::from_parts(k, mul, one)?),
            incl,
            proj,
        });
    }
    Ok(out)
}

pub fn is_connected(b: &Built, limits: &Limits) -> Result<bool> {
    match (&b.prov, b.known_connected()) {
        (_, Some(c)) => Ok(c),
        (Provenance::GroupRing { base, .. }, None) => is_connected(base, limits),
        _ => Ok(components(b, limits)?.len() == 1),
    }
}

// ---------------------------------------------------------------------------
// Roots of unity

/// The torsion units as an abstract group with an element table.
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    group: FinAbGroup,
    /// Indexed by `group.index_of`.
    elements: Vec<Vec<Int>>,
    lookup: HashMap<Vec<Int>, usize>,
}

impl RootsOfUnity {
    /// Closes `gens` (commuting units of finite order) under
    /// multiplication and normalizes the resulting group.
    pub fn from_generators(order: &Order, gens: &[Vec<Int>], bound: usize) -> Result<Self> {
        for g in gens {
            if order.mult_order(g, bound).is_none() {
                if order.torsion_order(g).is_some() {
                    return Err(Error::too_large("multiplicative order of a root of unity", bound));
                }
                return Err(Error::input("declared root of unity has infinite order"));
            }
        }
        let k = gens.len();
        let mut elems: Vec<Vec<Int>> = vec![order.one().to_vec()];
        let mut words: Vec<Vec<Int>> = vec![vec![Int::zero(); k]];
        let mut index: HashMap<Vec<Int>, usize> = HashMap::from([(order.one().to_vec(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        let mut edges = Vec::new();
        while let Some(a) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let p = order.mul(&elems[a], g);
                let b = match index.get(&p) {
                    Some(&b) => b,
                    None => {
                        if elems.len() >= bound {
                            return Err(Error::too_large("roots of unity", bound));
                        }
                        let b = elems.len();
                        let mut w = words[a].clone();
                        w[i] += 1;
                        index.insert(p.clone(), b);
                        elems.push(p);
                        words.push(w);
                        queue.push_back(b);
                        b
                    }
                };
                edges.push((a, i, b));
            }
        }
        let mut rels = Vec::new();
        for (a, i, b) in edges {
            let mut r: Vec<Int> = words[a].iter().zip(&words[b]).map(|(x, y)| x - y).collect();
            r[i] += 1;
            if r.iter().any(|c| !c.is_zero()) {
                rels.push(r);
            }
        }
        let lattice = HnfBasis::span(k, &rels);
        let pres = from_presentation(&lattice.basis)?;
        if pres.group.size() != Some(elems.len()) {
            return Err(Error::invariant("root of unity closure has inconsistent size"));
        }
        let mut table = vec![Vec::new(); elems.len()];
        for (v, w) in elems.iter().zip(&words) {
            table[pres.group.index_of(&pres.normalize(w))] = v.clone();
        }
        let lookup = table.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(RootsOfUnity {
            group: pres.group,
            elements: table,
            lookup,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn embed(&self, g: &[Int]) -> &[Int] {
        &self.elements[self.group.index_of(g)]
    }

    /// Group element of a ring vector, if it is a root of unity.
    pub fn find(&self, v: &[Int]) -> Option<Elem> {
        self.lookup.get(v).map(|&i| self.group.element_at(i))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.lookup.contains_key(v)
    }

    /// Ring vectors, in lexicographic order of group coordinates.
    pub fn elements(&self) -> &[Vec<Int>] {
        &self.elements
    }

    pub fn generator_images(&self) -> Vec<Vec<Int>> {
        (0..self.group.ngens())
            .map(|i| self.embed(&self.group.generator(i)).to_vec())
            .collect()
    }

    pub fn inverse(&self, v: &[Int]) -> Option<Vec<Int>> {
        let g = self.find(v)?;
        Some(self.embed(&self.group.neg(&g)).to_vec())
    }
}

/// Roots of unity, with `verify` cross-checking declared generators
/// against the general search when the rank is at most 8.
pub fn mu(b: &Built, limits: &Limits, verify: bool) -> Result<RootsOfUnity> {
    b.order.require_reduced()?;
    let gens = mu_generators(b, limits, verify)?;
    RootsOfUnity::from_generators(&b.order, &gens, limits.max_enum)
}

fn mu_generators(b: &Built, limits: &Limits, verify: bool) -> Result<Vec<Vec<Int>>> {
    let o = &b.order;
    match &b.prov {
        Provenance::Int => Ok(vec![vec![-Int::one()]]),
        Provenance::Atom { mu_gens: Some(g) } => {
            let mut gens = g.clone();
            gens.push(o.one().iter().map(|c| -c).collect());
            if verify && o.rank() <= 8 {
                let declared = RootsOfUnity::from_generators(o, &gens, limits.max_enum)?;
                let found = mu_fallback(o, limits)?;
                if declared.len() != found.len() || found.iter().any(|v| !declared.contains(v)) {
                    return Err(Error::invariant(format!(
                        "declared roots of unity generate {} elements, search found {}",
                        declared.len(),
                        found.len()
                    )));
                }
            }
            Ok(gens)
        }
        Provenance::GroupRing { base, group } if is_connected(base, limits)? => {
            let nb = base.order.rank();
            let mut gens: Vec<Vec<Int>> = mu_generators(base, limits, verify)?
                .into_iter()
                .map(|v| {
                    let mut w = o.zero();
                    w[..nb].clone_from_slice(&v);
                    w
                })
                .collect();
            for i in 0..group.ngens() {
                let gi = group.index_of(&group.generator(i));
                let mut w = o.zero();
                w[gi * nb..(gi + 1) * nb].clone_from_slice(base.order.one());
                gens.push(w);
            }
            Ok(gens)
        }
        Provenance::Product(parts) => {
            let mut gens = Vec::new();
            let mut off = 0;
            for p in parts {
                let k = p.order.rank();
                for g in mu_generators(p, limits, verify)? {
                    let mut w = o.one().to_vec();
                    w[off..off + k].clone_from_slice(&g);
                    gens.push(w);
                }
                off += k;
            }
            Ok(gens)
        }
        _ => mu_fallback(o, limits),
    }
}

/// Every root of unity: each field factor `K_j` of `R ⊗ Q` contributes a
/// cyclic `μ(K_j)`, and tuples from their product lying in `R` are kept.
fn mu_fallback(o: &Order, limits: &Limits) -> Result<Vec<Vec<Int>>> {
    let alg = o.qalgebra();
    let fields = alg.fields(limits.max_factor_degree)?;
    if fields.len() > limits.max_components {
        return Err(Error::too_large("rational components", limits.max_components));
    }
    let mut cycles: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut total: usize = 1;
    for e in &fields {
        let (k, basis) = alg.block(e);
        let (w, z) = k.roots_of_unity(limits.max_factor_degree)?;
        let zeta = basis.mul_vec(&z);
        let w = w as usize;
        total = total.saturating_mul(w);
        if total > limits.max_enum {
            return Err(Error::too_large("candidate roots of unity", limits.max_enum));
        }
        let mut pows = vec![e.clone()];
        for _ in 1..w {
            pows.push(alg.mul(pows.last().unwrap(), &zeta));
        }
        cycles.push(pows);
    }
    let mut found = Vec::new();
    let mut idx = vec![0usize; cycles.len()];
    loop {
        let mut s = alg.zero();
        for (c, &i) in cycles.iter().zip(&idx) {
            for (a, b) in s.iter_mut().zip(&c[i]) {
                *a += b;
            }
        }
        if let Some(v) = to_int_vec(&s) {
            found.push(v);
        }
        let mut j = idx.len();
        loop {
            if j == 0 {
                return Ok(found);
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < cycles[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Subalgebras, trace pairing, autopotents

/// A rational basis of the subalgebra generated by `gens`, each member a
/// product of generators recorded by its exponent word.
pub fn subalgebra_basis(alg: &QAlgebra, gens: &[Vec<Rat>]) -> Vec<(Vec<Rat>, Vec<usize>)> {
    let mut basis: Vec<(Vec<Rat>, Vec<usize>)> = vec![(alg.one().to_vec(), vec![0; gens.len()])];
    loop {
        let mut added = false;
        let current = basis.clone();
        for (y, wy) in &current {
            for (i, x) in gens.iter().enumerate() {
                let p = alg.mul(x, y);
                let mut cols: Vec<Vec<Rat>> = basis.iter().map(|b| b.0.clone()).collect();
                cols.push(p.clone());
                if independent_columns(&RatMatrix::from_columns(alg.dim(), &cols)).len() == cols.len() {
                    let mut w = wy.clone();
                    w[i] += 1;
                    basis.push((p, w));
                    added = true;
                }
            }
        }
        if !added {
            return basis;
        }
    }
}

/// `⟨x, y⟩ = Tr(x·ȳ)` on the rational span of the roots of unity, with
/// conjugation inverting the roots in a basis made of roots of unity.
#[derive(Clone, Debug)]
pub struct TracePairing {
    /// Columns: the roots of unity forming the basis.
    z: RatMatrix,
    rows: Vec<usize>,
    rows_inv: RatMatrix,
    form: RatMatrix,
}

impl TracePairing {
    pub fn new(order: &Order, mu: &RootsOfUnity) -> Self {
        let alg = order.qalgebra();
        let gens: Vec<Vec<Rat>> = mu.generator_images().iter().map(|v| rat_vec(v)).collect();
        let basis = subalgebra_basis(&alg, &gens);
        let zs: Vec<Vec<Int>> = basis.iter().map(|(v, _)| to_int_vec(v).expect("products of units")).collect();
        let ws: Vec<Vec<Int>> = zs.iter().map(|z| mu.inverse(z).expect("root of unity")).collect();
        let n = order.rank();
        let z = RatMatrix::from_columns(n, &zs.iter().map(|v| rat_vec(v)).collect::<Vec<_>>());
        let w = RatMatrix::from_columns(n, &ws.iter().map(|v| rat_vec(v)).collect::<Vec<_>>());
        let gram = order.gram().map(|c| Rat::from_integer(c.clone()));
        let form = z.transpose().mul(&gram).mul(&w);
        let rows = independent_columns(&z.transpose());
        let rows_inv = inverse_field(&z.select_rows(&rows)).expect("independent rows");
        TracePairing { z, rows, rows_inv, form }
    }

    /// Coordinates in the root-of-unity basis, when `x` lies in its span.
    pub fn coords(&self, x: &[Int]) -> Option<Vec<Rat>> {
        let sub: Vec<Rat> = self.rows.iter().map(|&r| Rat::from_integer(x[r].clone())).collect();
        let c = self.rows_inv.mul_vec(&sub);
        (self.z.mul_vec(&c) == rat_vec(x)).then_some(c)
    }

    pub fn dim(&self) -> usize {
        self.z.cols()
    }

    pub fn pair_rat(&self, x: &[Int], y: &[Int]) -> Result<Rat> {
        let (Some(a), Some(c)) = (self.coords(x), self.coords(y)) else {
            return Err(Error::unsupported("vector outside the span of the roots of unity"));
        };
        let fc = self.form.mul_vec(&c);
        Ok(a.iter().zip(&fc).fold(Rat::zero(), |acc, (p, q)| acc + p * q))
    }

    /// The pairing, required to be an integer.
    pub fn pair(&self, x: &[Int], y: &[Int]) -> Result<Int> {
        let v = self.pair_rat(x, y)?;
        if !v.is_integer() {
            return Err(Error::invariant(format!("trace pairing {v} is not integral")));
        }
        Ok(v.to_integer())
    }
}

/// Roots of unity whose integer span equals that of the autopotents.
#[derive(Clone, Debug)]
pub struct AutopotentSpan {
    pub lattice: IntHnf,
    pub generators: Vec<Vec<Int>>,
    pub is_full: bool,
}

/// Autopotent span of a connected order: start from a rational basis of
/// roots of unity and add products with generators until the integer span
/// is stable.
pub fn autopotent_span_connected(order: &Order, mu: &RootsOfUnity) -> AutopotentSpan {
    let alg = order.qalgebra();
    let gens = mu.generator_images();
    let rgens: Vec<Vec<Rat>> = gens.iter().map(|v| rat_vec(v)).collect();
    let mut ys: Vec<Vec<Int>> = subalgebra_basis(&alg, &rgens)
        .iter()
        .map(|(v, _)| to_int_vec(v).expect("products of units"))
        .collect();
    let mut lattice = HnfBasis::span(order.rank(), &ys);
    loop {
        let mut grew = false;
        for x in &gens {
            let current = ys.clone();
            for y in &current {
                let p = order.mul(x, y);
                if !lattice.contains(&p) {
                    ys.push(p);
                    lattice = HnfBasis::span(order.rank(), &ys);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let is_full = lattice.index() == Some(Int::one());
    AutopotentSpan {
        lattice,
        generators: ys,
        is_full,
    }
}

/// Autopotent span, assembled from the connected components.
pub fn autopotent_span(b: &Built, limits: &Limits) -> Result<AutopotentSpan> {
    let comps = components(b, limits)?;
    let n = b.order.rank();
    let mut gens = Vec::new();
    for c in &comps {
        let m = mu(&c.built, limits, false)?;
        for y in autopotent_span_connected(&c.built.order, &m).generators {
            gens.push(c.incl.mul_vec(&y));
        }
    }
    let lattice = HnfBasis::span(n, &gens);
    let is_full = lattice.index() == Some(Int::one());
    Ok(AutopotentSpan {
        lattice,
        generators: gens,
        is_full,
    })
}
