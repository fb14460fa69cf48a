//! Finite abelian groups in invariant-factor form, their homomorphisms,
//! subgroups, Hom-groups, greatest common divisors and cyclic summands.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::intlin::{self, HnfBasis};
use crate::{Error, Int, IntMatrix, Result};

/// Element of a [`FinAbGroup`]: coordinate `i` lies in `[0, d_i)`.
pub type Elem = Vec<Int>;

/// `Z/d_1 x ... x Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<Int>,
}

/// A group given by generators and relations, brought into normal form.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FinAbGroup,
    /// Ambient coordinates to normalized coordinates (before reduction).
    pub to_normal: IntMatrix,
    /// Column `j` is an ambient lift of the normalized generator `j`.
    pub from_normal: IntMatrix,
}

impl Presentation {
    pub fn normalize(&self, v: &[Int]) -> Elem {
        self.group.reduce(&self.to_normal.mul_vec(v))
    }

    pub fn lift(&self, e: &[Int]) -> Vec<Int> {
        self.from_normal.mul_vec(e)
    }
}

/// Normalizes the cokernel of `relations` (columns are relations on the
/// ambient generators, one per row).
pub fn from_presentation(relations: &IntMatrix) -> Result<Presentation> {
    let n = relations.rows();
    let res = intlin::snf(relations);
    let diag = res.diagonal();
    if diag.len() < n || diag.iter().any(|d| d.is_zero()) {
        return Err(Error::NotFinite);
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !diag[i].is_one()).collect();
    let factors: Vec<Int> = keep.iter().map(|&i| diag[i].clone()).collect();
    Ok(Presentation {
        group: FinAbGroup { factors },
        to_normal: res.u.select_rows(&keep),
        from_normal: res.u_inv.select_columns(&keep),
    })
}

/// `G_1 x ... x G_k` with its coordinate maps.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FinAbGroup,
    parts: Vec<FinAbGroup>,
    offsets: Vec<usize>,
    pres: Presentation,
}

impl DirectProduct {
    pub fn new(parts: &[FinAbGroup]) -> Self {
        let orders: Vec<Int> = parts.iter().flat_map(|p| p.factors().to_vec()).collect();
        let pres = FinAbGroup::from_orders(&orders).expect("factors are positive");
        let mut offsets = vec![0];
        for p in parts {
            offsets.push(offsets.last().unwrap() + p.ngens());
        }
        DirectProduct {
            group: pres.group.clone(),
            parts: parts.to_vec(),
            offsets,
            pres,
        }
    }

    pub fn parts(&self) -> &[FinAbGroup] {
        &self.parts
    }

    pub fn combine(&self, xs: &[Elem]) -> Elem {
        let flat: Vec<Int> = xs.iter().flatten().cloned().collect();
        self.pres.normalize(&flat)
    }

    pub fn embed(&self, i: usize, x: &[Int]) -> Elem {
        let xs: Vec<Elem> = self
            .parts
            .iter()
            .enumerate()
            .map(|(j, p)| if j == i { x.to_vec() } else { p.zero() })
            .collect();
        self.combine(&xs)
    }

    pub fn split(&self, x: &[Int]) -> Vec<Elem> {
        let flat = self.pres.lift(x);
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.reduce(&flat[self.offsets[i]..self.offsets[i + 1]]))
            .collect()
    }

    pub fn injection(&self, i: usize) -> AbHom {
        let p = &self.parts[i];
        let imgs: Vec<Elem> = (0..p.ngens()).map(|k| self.embed(i, &p.generator(k))).collect();
        AbHom::from_images(p, &self.group, &imgs).expect("well defined")
    }

    pub fn projection(&self, i: usize) -> AbHom {
        let imgs: Vec<Elem> = (0..self.group.ngens())
            .map(|k| self.split(&self.group.generator(k)).swap_remove(i))
            .collect();
        AbHom::from_images(&self.group, &self.parts[i], &imgs).expect("well defined")
    }
}

impl FinAbGroup {
    /// Validates an invariant-factor list.
    pub fn new(factors: Vec<Int>) -> Result<Self> {
        for (i, d) in factors.iter().enumerate() {
            if d < &Int::from(2) {
                return Err(Error::input(format!("invariant factor {d} is below 2")));
            }
            if i > 0 && !d.is_multiple_of(&factors[i - 1]) {
                return Err(Error::input("invariant factors do not form a divisibility chain"));
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FinAbGroup {
                factors: vec![Int::from(n)],
            }
        }
    }

    /// `Z/o_1 x ... x Z/o_k` for arbitrary positive orders, normalized.
    pub fn from_orders(orders: &[Int]) -> Result<Presentation> {
        if orders.iter().any(|o| !o.is_positive()) {
            return Err(Error::input("cyclic orders must be positive"));
        }
        from_presentation(&IntMatrix::diagonal(orders))
    }

    /// Group whose primary decomposition is the given multiset of prime powers.
    pub fn from_primary(prime_powers: &[Int]) -> Self {
        let mut by_prime: BTreeMap<Int, Vec<Int>> = BTreeMap::new();
        for q in prime_powers {
            let (p, _) = prime_power(q).expect("prime power expected");
            by_prime.entry(p).or_default().push(q.clone());
        }
        let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        for v in by_prime.values_mut() {
            v.sort_by(|a, b| b.cmp(a));
        }
        let mut factors: Vec<Int> = (0..len)
            .map(|k| {
                by_prime
                    .values()
                    .filter_map(|v| v.get(k))
                    .fold(Int::one(), |acc, q| acc * q)
            })
            .collect();
        factors.reverse();
        FinAbGroup { factors }
    }

    pub fn factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> Int {
        self.factors.iter().fold(Int::one(), |a, d| a * d)
    }

    /// Order as a machine integer, if it fits.
    pub fn size(&self) -> Option<usize> {
        self.order().to_usize()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn zero(&self) -> Elem {
        vec![Int::zero(); self.ngens()]
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut e = self.zero();
        e[i] = Int::one();
        e
    }

    pub fn reduce(&self, v: &[Int]) -> Elem {
        assert_eq!(v.len(), self.ngens(), "element has wrong length");
        v.iter()
            .zip(&self.factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Elem {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn neg(&self, a: &[Int]) -> Elem {
        let s: Vec<Int> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }

    pub fn sub(&self, a: &[Int], b: &[Int]) -> Elem {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: &Int, a: &[Int]) -> Elem {
        let s: Vec<Int> = a.iter().map(|x| k * x).collect();
        self.reduce(&s)
    }

    pub fn is_zero_elem(&self, a: &[Int]) -> bool {
        self.reduce(a).iter().all(|x| x.is_zero())
    }

    pub fn elem_order(&self, a: &[Int]) -> Int {
        self.reduce(a)
            .iter()
            .zip(&self.factors)
            .fold(Int::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d))))
    }

    /// Position of `a` in lexicographic order (first coordinate most
    /// significant).
    pub fn index_of(&self, a: &[Int]) -> usize {
        let a = self.reduce(a);
        let mut idx = 0usize;
        for (x, d) in a.iter().zip(&self.factors) {
            idx = idx * d.to_usize().expect("group too large") + x.to_usize().unwrap();
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> Elem {
        let mut out = self.zero();
        for i in (0..self.ngens()).rev() {
            let d = self.factors[i].to_usize().expect("group too large");
            out[i] = Int::from(idx % d);
            idx /= d;
        }
        out
    }

    /// All elements in lexicographic order, refusing groups larger than
    /// `bound`.
    pub fn elements(&self, bound: usize) -> Result<Vec<Elem>> {
        let n = self
            .size()
            .filter(|&n| n <= bound)
            .ok_or_else(|| Error::too_large(format!("group of order {}", self.order()), bound))?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Cyclic prime-power orders of the primary decomposition, ascending.
    pub fn primary_factors(&self) -> Vec<Int> {
        let mut out = Vec::new();
        for d in &self.factors {
            for (p, e) in factorize(d) {
                out.push(num_traits::pow(p, e));
            }
        }
        out.sort();
        out
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.factors)
    }
}

/// Trial-division factorization into `(prime, exponent)` pairs.
pub fn factorize(n: &Int) -> Vec<(Int, usize)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = Int::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` when `q = p^e` with `e >= 1`.
pub fn prime_power(q: &Int) -> Option<(Int, usize)> {
    let f = factorize(q);
    if f.len() == 1 {
        Some(f[0].clone())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// Homomorphism given by the images of the source generators (columns).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbHom {
    src: FinAbGroup,
    tgt: FinAbGroup,
    matrix: IntMatrix,
}

impl AbHom {
    /// Checks shape and well-definedness; entries are reduced.
    pub fn new(src: FinAbGroup, tgt: FinAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != tgt.ngens() || matrix.cols() != src.ngens() {
            return Err(Error::input(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                tgt.ngens(),
                src.ngens()
            )));
        }
        let cols: Vec<Elem> = matrix.columns().iter().map(|c| tgt.reduce(c)).collect();
        for (j, c) in cols.iter().enumerate() {
            if !tgt.is_zero_elem(&tgt.scale(&src.factors[j], c)) {
                return Err(Error::input(format!(
                    "hom is not well defined on generator {j}"
                )));
            }
        }
        Ok(AbHom {
            matrix: IntMatrix::from_columns(tgt.ngens(), &cols),
            src,
            tgt,
        })
    }

    pub fn from_images(src: &FinAbGroup, tgt: &FinAbGroup, images: &[Elem]) -> Result<Self> {
        if images.len() != src.ngens() {
            return Err(Error::input("wrong number of generator images"));
        }
        Self::new(src.clone(), tgt.clone(), IntMatrix::from_columns(tgt.ngens(), images))
    }

    pub fn zero(src: &FinAbGroup, tgt: &FinAbGroup) -> Self {
        AbHom {
            src: src.clone(),
            tgt: tgt.clone(),
            matrix: IntMatrix::zeros(tgt.ngens(), src.ngens()),
        }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        AbHom {
            src: g.clone(),
            tgt: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    pub fn src(&self) -> &FinAbGroup {
        &self.src
    }

    pub fn tgt(&self) -> &FinAbGroup {
        &self.tgt
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn images(&self) -> Vec<Elem> {
        self.matrix.columns()
    }

    pub fn apply(&self, x: &[Int]) -> Elem {
        self.tgt.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AbHom) -> AbHom {
        assert_eq!(inner.tgt, self.src, "composition of incompatible homs");
        let cols: Vec<Elem> = inner.images().iter().map(|c| self.apply(c)).collect();
        AbHom {
            src: inner.src.clone(),
            tgt: self.tgt.clone(),
            matrix: IntMatrix::from_columns(self.tgt.ngens(), &cols),
        }
    }

    pub fn add(&self, other: &AbHom) -> AbHom {
        assert!(self.src == other.src && self.tgt == other.tgt, "sum of incompatible homs");
        let cols: Vec<Elem> = self
            .images()
            .iter()
            .zip(other.images())
            .map(|(a, b)| self.tgt.add(a, &b))
            .collect();
        AbHom {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            matrix: IntMatrix::from_columns(self.tgt.ngens(), &cols),
        }
    }

    pub fn neg(&self) -> AbHom {
        let cols: Vec<Elem> = self.images().iter().map(|a| self.tgt.neg(a)).collect();
        AbHom {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            matrix: IntMatrix::from_columns(self.tgt.ngens(), &cols),
        }
    }

    pub fn sub(&self, other: &AbHom) -> AbHom {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Int) -> AbHom {
        let cols: Vec<Elem> = self.images().iter().map(|a| self.tgt.scale(k, a)).collect();
        AbHom {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            matrix: IntMatrix::from_columns(self.tgt.ngens(), &cols),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subgroup {
        let d = self.tgt.relation_matrix();
        let k = intlin::kernel(&self.matrix.hcat(&d));
        let gens: Vec<Elem> = k
            .columns()
            .iter()
            .map(|c| self.src.reduce(&c[..self.src.ngens()]))
            .collect();
        subgroup_from_generators(&self.src, &gens)
    }

    pub fn image(&self) -> Subgroup {
        subgroup_from_generators(&self.tgt, &self.images())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order().is_one()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.tgt.order()
    }

    pub fn is_iso(&self) -> bool {
        self.src.order() == self.tgt.order() && self.is_injective()
    }

    /// Some `x` with `self(x) = y`.
    pub fn preimage(&self, y: &[Int]) -> Option<Elem> {
        let x = intlin::solve(&self.matrix, y, Some(self.tgt.factors()))
            .expect("shapes agree")?;
        Some(self.src.reduce(&x))
    }

    pub fn inverse(&self) -> Option<AbHom> {
        if !self.is_iso() {
            return None;
        }
        let cols: Vec<Elem> = (0..self.tgt.ngens())
            .map(|i| self.preimage(&self.tgt.generator(i)).expect("surjective"))
            .collect();
        Some(AbHom {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            matrix: IntMatrix::from_columns(self.src.ngens(), &cols),
        })
    }
}

/// Kernel and image as subgroup descriptors.
pub fn kernel_image(f: &AbHom) -> (Subgroup, Subgroup) {
    (f.kernel(), f.image())
}

// ---------------------------------------------------------------------------
// Subgroups

/// Subgroup of `parent` given by generators, with a normalized abstract copy
/// and the inclusion map.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FinAbGroup,
    gens: Vec<Elem>,
    lattice: HnfBasis<Int>,
    group: FinAbGroup,
    incl: AbHom,
    to_abstract: IntMatrix,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.lattice == other.lattice
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.lattice.hash(state);
    }
}

/// Subgroup generated by `gens`.
pub fn subgroup_from_generators(parent: &FinAbGroup, gens: &[Elem]) -> Subgroup {
    let k = parent.ngens();
    let mut vecs: Vec<Vec<Int>> = gens.iter().map(|g| parent.reduce(g)).collect();
    for i in 0..k {
        let mut r = vec![Int::zero(); k];
        r[i] = parent.factors[i].clone();
        vecs.push(r);
    }
    let lattice = HnfBasis::span(k, &vecs);
    let rel_cols: Vec<Vec<Int>> = (0..k)
        .map(|i| {
            let mut r = vec![Int::zero(); k];
            r[i] = parent.factors[i].clone();
            lattice.coordinates(&r).expect("relations lie in the lattice")
        })
        .collect();
    let pres = from_presentation(&IntMatrix::from_columns(lattice.rank(), &rel_cols))
        .expect("subgroup of a finite group is finite");
    let incl_cols: Vec<Elem> = pres
        .from_normal
        .columns()
        .iter()
        .map(|c| parent.reduce(&lattice.basis.mul_vec(c)))
        .collect();
    let incl = AbHom {
        src: pres.group.clone(),
        tgt: parent.clone(),
        matrix: IntMatrix::from_columns(k, &incl_cols),
    };
    Subgroup {
        parent: parent.clone(),
        gens: gens.iter().map(|g| parent.reduce(g)).filter(|g| !parent.is_zero_elem(g)).collect(),
        lattice,
        group: pres.group,
        incl,
        to_abstract: pres.to_normal,
    }
}

impl Subgroup {
    pub fn whole(parent: &FinAbGroup) -> Self {
        let gens: Vec<Elem> = (0..parent.ngens()).map(|i| parent.generator(i)).collect();
        subgroup_from_generators(parent, &gens)
    }

    pub fn trivial(parent: &FinAbGroup) -> Self {
        subgroup_from_generators(parent, &[])
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    /// Normalized abstract group isomorphic to this subgroup.
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Inclusion of the abstract group into the parent.
    pub fn inclusion(&self) -> &AbHom {
        &self.incl
    }

    /// Canonical lattice `gens + relations` in the parent's coordinates.
    pub fn key(&self) -> &HnfBasis<Int> {
        &self.lattice
    }

    pub fn order(&self) -> Int {
        self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.lattice.contains(&self.parent.reduce(x))
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        self.lattice.contains_lattice(&other.lattice)
    }

    /// Abstract coordinates of a parent element lying in the subgroup.
    pub fn to_abstract(&self, x: &[Int]) -> Option<Elem> {
        let c = self.lattice.coordinates(&self.parent.reduce(x))?;
        Some(self.group.reduce(&self.to_abstract.mul_vec(&c)))
    }

    pub fn from_abstract(&self, a: &[Int]) -> Elem {
        self.incl.apply(a)
    }

    /// Elements in the parent, ordered by their abstract coordinates.
    pub fn elements(&self, bound: usize) -> Result<Vec<Elem>> {
        Ok(self
            .group
            .elements(bound)?
            .iter()
            .map(|a| self.from_abstract(a))
            .collect())
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        subgroup_from_generators(&self.parent, &gens)
    }

    /// Image under a hom defined on the parent.
    pub fn map(&self, f: &AbHom) -> Subgroup {
        let gens: Vec<Elem> = self.gens.iter().map(|g| f.apply(g)).collect();
        subgroup_from_generators(f.tgt(), &gens)
    }

    /// Restriction of `f` (defined on the parent) to this subgroup, as a hom
    /// between abstract groups into `target`.
    pub fn restrict(&self, f: &AbHom, target: &Subgroup) -> Result<AbHom> {
        let cols: Vec<Elem> = self
            .incl
            .images()
            .iter()
            .map(|x| {
                target
                    .to_abstract(&f.apply(x))
                    .ok_or_else(|| Error::invariant("restriction leaves the target subgroup"))
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(&self.group, &target.group, &cols)
    }
}

/// True iff the subgroups form an internal direct sum equal to the parent.
pub fn is_direct_decomposition(parent: &FinAbGroup, parts: &[&Subgroup]) -> bool {
    let product = parts.iter().fold(Int::one(), |a, s| a * s.order());
    if product != parent.order() {
        return false;
    }
    let gens: Vec<Elem> = parts.iter().flat_map(|s| s.gens.iter().cloned()).collect();
    subgroup_from_generators(parent, &gens).order() == parent.order()
}

/// Writes `x` as a sum of elements of the given subgroups.
pub fn split_element(parent: &FinAbGroup, parts: &[&Subgroup], x: &[Int]) -> Option<Vec<Elem>> {
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (p, s) in parts.iter().enumerate() {
        for g in s.incl.images() {
            cols.push(g);
            owner.push(p);
        }
    }
    if cols.is_empty() {
        return parent
            .is_zero_elem(x)
            .then(|| parts.iter().map(|_| parent.zero()).collect());
    }
    let m = IntMatrix::from_columns(parent.ngens(), &cols);
    let c = intlin::solve(&m, &parent.reduce(x), Some(parent.factors())).ok()??;
    let mut out: Vec<Elem> = parts.iter().map(|_| parent.zero()).collect();
    for ((coef, g), p) in c.iter().zip(&cols).zip(owner) {
        out[p] = parent.add(&out[p], &parent.scale(coef, g));
    }
    Some(out)
}

// ---------------------------------------------------------------------------
// Hom-groups

/// `Hom(src, tgt)`, as a direct sum of cyclic cells `Z/gcd(a_j, b_i)`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    src: FinAbGroup,
    tgt: FinAbGroup,
    cells: Vec<(usize, usize, Int)>,
    pres: Presentation,
}

impl HomGroup {
    pub fn group(&self) -> &FinAbGroup {
        &self.pres.group
    }

    pub fn order(&self) -> Int {
        self.pres.group.order()
    }

    /// Representative of an element of the abstract Hom-group.
    pub fn hom_of(&self, e: &[Int]) -> AbHom {
        let raw = self.pres.lift(e);
        self.hom_from_cells(&raw)
    }

    fn hom_from_cells(&self, raw: &[Int]) -> AbHom {
        let mut m = IntMatrix::zeros(self.tgt.ngens(), self.src.ngens());
        for ((i, j, g), c) in self.cells.iter().zip(raw) {
            m[(*i, *j)] = c * (&self.tgt.factors[*i] / g);
        }
        AbHom::new(self.src.clone(), self.tgt.clone(), m).expect("cell homs are well defined")
    }

    /// Homs representing the normalized generators.
    pub fn basis_homs(&self) -> Vec<AbHom> {
        (0..self.group().ngens())
            .map(|i| self.hom_of(&self.group().generator(i)))
            .collect()
    }

    /// Abstract coordinates of a hom.
    pub fn coords_of(&self, f: &AbHom) -> Elem {
        let raw: Vec<Int> = self
            .cells
            .iter()
            .map(|(i, j, g)| &f.matrix[(*i, *j)] / (&self.tgt.factors[*i] / g))
            .collect();
        self.pres.normalize(&raw)
    }

    /// Every hom, in lexicographic order of the cell coordinates.
    pub fn enumerate(&self, bound: usize) -> Result<Vec<AbHom>> {
        let cell_group: Vec<Int> = self.cells.iter().map(|c| c.2.clone()).collect();
        let total = self
            .order()
            .to_usize()
            .filter(|&n| n <= bound)
            .ok_or_else(|| Error::too_large(format!("Hom-group of order {}", self.order()), bound))?;
        let mut out = Vec::with_capacity(total);
        let mut raw = vec![Int::zero(); cell_group.len()];
        loop {
            out.push(self.hom_from_cells(&raw));
            let mut i = raw.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                raw[i] += 1;
                if raw[i] < cell_group[i] {
                    break;
                }
                raw[i] = Int::zero();
            }
        }
    }
}

pub fn hom_group(a: &FinAbGroup, b: &FinAbGroup) -> HomGroup {
    let mut cells = Vec::new();
    for i in 0..b.ngens() {
        for j in 0..a.ngens() {
            let g = a.factors[j].gcd(&b.factors[i]);
            if !g.is_one() {
                cells.push((i, j, g));
            }
        }
    }
    let orders: Vec<Int> = cells.iter().map(|c| c.2.clone()).collect();
    let pres = FinAbGroup::from_orders(&orders).expect("positive orders");
    HomGroup {
        src: a.clone(),
        tgt: b.clone(),
        cells,
        pres,
    }
}

/// Greatest common divisor under direct-summand divisibility.
pub fn group_gcd(gs: &[FinAbGroup]) -> Result<FinAbGroup> {
    let (first, rest) = gs
        .split_first()
        .ok_or_else(|| Error::input("gcd of an empty list"))?;
    let mut common = first.primary_factors();
    for g in rest {
        let mut other = g.primary_factors();
        common.retain(|q| {
            if let Some(pos) = other.iter().position(|r| r == q) {
                other.remove(pos);
                true
            } else {
                false
            }
        });
    }
    Ok(FinAbGroup::from_primary(&common))
}

/// Retraction onto a cyclic summand.
#[derive(Clone, Debug)]
pub struct CyclicSplit {
    /// Order of the cyclic summand.
    pub order: Int,
    /// `phi(e_i)` modulo `order`; `phi(x) = 1`.
    pub phi: Vec<Int>,
    /// `y ↦ phi(y)·x` as an endomorphism of the group.
    pub retraction: AbHom,
    pub complement: Subgroup,
}

/// Decides whether `<x>` is a direct summand of `g`.
pub fn split_cyclic_summand(g: &FinAbGroup, x: &[Int]) -> Result<Option<CyclicSplit>> {
    let x = g.reduce(x);
    if g.is_zero_elem(&x) {
        return Err(Error::input("cannot split off the zero element"));
    }
    let m = g.elem_order(&x);
    let scales: Vec<Int> = g.factors.iter().map(|d| &m / m.gcd(d)).collect();
    let row: Vec<Int> = x.iter().zip(&scales).map(|(xi, s)| xi * s).collect();
    let a = IntMatrix::from_rows(&[row], g.ngens())?;
    let Some(b) = intlin::solve(&a, &[Int::one()], Some(std::slice::from_ref(&m)))? else {
        return Ok(None);
    };
    let phi: Vec<Int> = b
        .iter()
        .zip(&scales)
        .map(|(bi, s)| (bi * s).mod_floor(&m))
        .collect();
    let cols: Vec<Elem> = phi.iter().map(|p| g.scale(p, &x)).collect();
    let retraction = AbHom::from_images(g, g, &cols)?;
    let complement = retraction.kernel();
    Ok(Some(CyclicSplit {
        order: m,
        phi,
        retraction,
        complement,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn g(f: &[i64]) -> FinAbGroup {
        FinAbGroup::new(f.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn e(v: &[i64]) -> Elem {
        v.iter().map(|&x| int(x)).collect()
    }

    fn im(rows: &[&[i64]]) -> IntMatrix {
        let v: Vec<Vec<Int>> = rows.iter().map(|r| e(r)).collect();
        IntMatrix::from_rows(&v, rows[0].len()).unwrap()
    }

    #[test]
    fn presentations() {
        assert_eq!(from_presentation(&im(&[&[2, 0], &[0, 4]])).unwrap().group, g(&[2, 4]));
        assert_eq!(from_presentation(&im(&[&[2, 1], &[0, 2]])).unwrap().group, g(&[4]));
        assert_eq!(from_presentation(&im(&[&[1]])).unwrap().group, g(&[]));
        assert_eq!(from_presentation(&im(&[&[2, 0]])).unwrap().group, g(&[2]));
        assert_eq!(from_presentation(&im(&[&[0]])).unwrap_err(), Error::NotFinite);
        assert_eq!(
            from_presentation(&IntMatrix::zeros(1, 0)).unwrap_err(),
            Error::NotFinite
        );
    }

    #[test]
    fn direct_products() {
        let dp = DirectProduct::new(&[g(&[2]), g(&[]), g(&[6])]);
        assert_eq!(dp.group, g(&[2, 6]));
        for a in g(&[2]).elements(10).unwrap() {
            for b in g(&[6]).elements(10).unwrap() {
                let x = dp.combine(&[a.clone(), vec![], b.clone()]);
                assert_eq!(dp.split(&x), vec![a.clone(), vec![], b.clone()]);
                assert_eq!(dp.projection(2).apply(&x), b);
            }
        }
        assert!(dp.injection(0).is_injective());
        assert_eq!(DirectProduct::new(&[]).group, g(&[]));
    }

    #[test]
    fn presentation_maps_are_consistent() {
        let p = FinAbGroup::from_orders(&e(&[6, 4])).unwrap();
        assert_eq!(p.group, g(&[2, 12]));
        for i in 0..p.group.ngens() {
            let gen = p.group.generator(i);
            assert_eq!(p.normalize(&p.lift(&gen)), gen);
        }
        assert_eq!(p.group.elem_order(&p.normalize(&e(&[1, 1]))), int(12));
    }

    #[test]
    fn hom_groups() {
        assert_eq!(*hom_group(&g(&[4]), &g(&[2])).group(), g(&[2]));
        assert_eq!(*hom_group(&g(&[2]), &g(&[2, 4])).group(), g(&[2, 2]));
        assert!(hom_group(&g(&[]), &g(&[3, 6])).group().is_trivial());
        let h = hom_group(&g(&[2, 4]), &g(&[4]));
        let all = h.enumerate(100).unwrap();
        assert_eq!(all.len(), 8);
        for f in &all {
            assert_eq!(h.hom_of(&h.coords_of(f)), *f);
        }
    }

    #[test]
    fn hom_basis_addition_matches_group_law() {
        let h = hom_group(&g(&[2, 4]), &g(&[2, 8]));
        let basis = h.basis_homs();
        let x = h.group().generator(0);
        let y = h.group().generator(h.group().ngens() - 1);
        let sum = h.group().add(&x, &y);
        assert_eq!(h.hom_of(&sum), basis[0].add(&basis[basis.len() - 1]));
    }

    #[test]
    fn kernels_and_images() {
        let f = AbHom::from_images(&g(&[4]), &g(&[2]), &[e(&[1])]).unwrap();
        let (k, i) = kernel_image(&f);
        assert_eq!(*k.group(), g(&[2]));
        assert_eq!(*i.group(), g(&[2]));
        let z = AbHom::zero(&g(&[6]), &g(&[6]));
        let (k, i) = kernel_image(&z);
        assert_eq!(k.order(), int(6));
        assert!(i.is_trivial());
        assert!(AbHom::from_images(&g(&[2]), &g(&[4]), &[e(&[1])]).is_err());
    }

    #[test]
    fn gcds() {
        assert_eq!(group_gcd(&[g(&[2, 4]), g(&[2, 2])]).unwrap(), g(&[2]));
        assert_eq!(group_gcd(&[g(&[2, 4]), g(&[])]).unwrap(), g(&[]));
        assert_eq!(group_gcd(&[g(&[12]), g(&[18])]).unwrap(), g(&[]));
        assert_eq!(group_gcd(&[g(&[6]), g(&[2, 6])]).unwrap(), g(&[6]));
        assert!(group_gcd(&[]).is_err());
    }

    #[test]
    fn cyclic_summands() {
        let s = split_cyclic_summand(&g(&[2, 4]), &e(&[1, 0])).unwrap().unwrap();
        assert_eq!(*s.complement.group(), g(&[4]));
        assert!(split_cyclic_summand(&g(&[4]), &e(&[2])).unwrap().is_none());
        let s = split_cyclic_summand(&g(&[2, 4]), &e(&[1, 1])).unwrap().unwrap();
        assert_eq!(s.order, int(4));
        assert_eq!(*s.complement.group(), g(&[2]));
        assert!(!s.complement.contains(&e(&[1, 1])));
        assert!(split_cyclic_summand(&g(&[2]), &e(&[0])).is_err());
    }

    #[test]
    fn subgroup_coordinates_round_trip() {
        let parent = g(&[2, 4, 8]);
        let s = subgroup_from_generators(&parent, &[e(&[1, 2, 4]), e(&[0, 1, 2])]);
        for a in s.group().elements(64).unwrap() {
            let x = s.from_abstract(&a);
            assert!(s.contains(&x));
            assert_eq!(s.to_abstract(&x).unwrap(), a);
        }
        assert_eq!(s.order(), int(8));
    }

    #[test]
    fn primary_round_trip() {
        let h = g(&[2, 12, 24]);
        assert_eq!(FinAbGroup::from_primary(&h.primary_factors()), h);
    }
}
