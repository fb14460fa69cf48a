//! Group-ring structures `R = A[G]` on an order: the correspondence with
//! idempotents of the degree map, the maximal structure with stark base,
//! enumeration, swap verification and common refinements.

use num_traits::{One, Signed};

use crate::abgroups::{
    group_gcd, split_cyclic_summand, split_element, subgroup_from_generators, AbHom, DirectProduct, Elem,
    FinAbGroup, Subgroup,
};
use crate::autgroups::psi;
use crate::gradings::{degree_map, universal_for, DegreeMap, Grading};
use crate::intlin::{det, HnfBasis};
use crate::morphmods::{
    connecting_unit, dec_from_id0, has_no_iso_summand, id0_enumerate, id0_from_dec, max_iso_dec, MorphDec,
    MorphModule,
};
use crate::orders::{components, is_connected, mu, Built, Order, RootsOfUnity};
use crate::{Error, Int, IntHnf, IntMatrix, Limits, Result};

/// Whether `{a_i·g}` is a basis of the order.
pub fn is_group_ring_basis(order: &Order, a: &IntHnf, g: &[Vec<Int>]) -> bool {
    group_ring_determinant(order, a, g).is_some_and(|d| d.abs().is_one())
}

/// Determinant of the products `{a_i·g}` against the order's basis, when
/// their number matches the rank.
pub fn group_ring_determinant(order: &Order, a: &IntHnf, g: &[Vec<Int>]) -> Option<Int> {
    let n = order.rank();
    if a.rank() * g.len() != n {
        return None;
    }
    let basis = a.vectors();
    let cols: Vec<Vec<Int>> = g
        .iter()
        .flat_map(|u| basis.iter().map(move |x| (u, x)))
        .map(|(u, x)| order.mul(x, u))
        .collect();
    Some(det(&IntMatrix::from_columns(n, &cols)))
}

/// A subring `A` and a finite unit group `G` with `A[G] = R`.
#[derive(Clone, Debug)]
pub struct GpRgPair {
    pub a: IntHnf,
    pub g: RootsOfUnity,
}

impl GpRgPair {
    pub fn new(order: &Order, a: IntHnf, g_gens: &[Vec<Int>], bound: usize) -> Result<Self> {
        if a.ambient_rank != order.rank() || g_gens.iter().any(|v| v.len() != order.rank()) {
            return Err(Error::input("pair does not live in this order"));
        }
        if !order.is_subring(&a) {
            return Err(Error::input("A is not a subring"));
        }
        let g = RootsOfUnity::from_generators(order, g_gens, bound)?;
        if !is_group_ring_basis(order, &a, g.elements()) {
            return Err(Error::input("the natural map A[G] -> R is not bijective"));
        }
        Ok(GpRgPair { a, g })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.g.group()
    }

    /// `G` as a subgroup of `μ(R)`.
    pub fn subgroup(&self, roots: &RootsOfUnity) -> Result<Subgroup> {
        let gens: Vec<Elem> = self
            .g
            .generator_images()
            .iter()
            .map(|v| roots.find(v).ok_or_else(|| Error::input("G is not made of roots of unity")))
            .collect::<Result<_>>()?;
        Ok(subgroup_from_generators(roots.group(), &gens))
    }

    /// `(B,H) ≤ (A,G)` iff `H ⊆ G` and `B ⊇ A`.
    pub fn leq(&self, other: &GpRgPair) -> bool {
        self.g.elements().iter().all(|h| other.g.contains(h)) && self.a.contains_lattice(&other.a)
    }

    pub fn same_as(&self, other: &GpRgPair) -> bool {
        self.a == other.a && self.leq(other) && other.leq(self)
    }
}

/// `f ↦ (⊕_{γ ∈ ker f} R_γ, im f)`.
pub fn gprg_from_id0(f: &AbHom, dm: &DegreeMap, limits: &Limits) -> Result<GpRgPair> {
    let m = dm.morph_module();
    if f.src() != m.tgt() || f.tgt() != m.src() {
        return Err(Error::input("f must map the grading group to the roots of unity"));
    }
    if !m.is_id0(f) {
        return Err(Error::input("f does not satisfy fdf = f"));
    }
    let order = dm.grading.order();
    let ker = f.kernel();
    let vecs: Vec<Vec<Int>> = dm
        .grading
        .components()
        .iter()
        .filter(|(k, _)| ker.contains(k))
        .flat_map(|(_, l)| l.vectors())
        .collect();
    let a = HnfBasis::span(order.rank(), &vecs);
    let gens: Vec<Vec<Int>> = f
        .image()
        .generators()
        .iter()
        .map(|g| dm.mu.embed(g).to_vec())
        .collect();
    GpRgPair::new(order, a, &gens, limits.max_enum)
        .map_err(|e| Error::invariant(format!("image of an idempotent is not a group ring structure: {e}")))
}

/// `Γ(A) = ⟨γ : 0 ≠ R_γ ⊆ A⟩`.
fn base_degrees(g: &Grading, a: &IntHnf) -> Subgroup {
    let degs: Vec<Elem> = g
        .components()
        .iter()
        .filter(|(_, l)| a.contains_lattice(l))
        .map(|(k, _)| k.clone())
        .collect();
    subgroup_from_generators(g.gamma(), &degs)
}

/// `(A,G) ↦ 0_{Γ(A)} ⊕ (d|_G)^{-1}`.
pub fn id0_from_gprg(p: &GpRgPair, dm: &DegreeMap) -> Result<AbHom> {
    let gamma = dm.grading.gamma();
    let gamma_a = base_degrees(&dm.grading, &p.a);
    let gsub = p.subgroup(&dm.mu)?;
    let dg = dm.d.compose(gsub.inclusion());
    if !dg.is_injective() {
        return Err(Error::input("d is not injective on G"));
    }
    let dgsub = gsub.map(&dm.d);
    let images: Vec<Elem> = (0..gamma.ngens())
        .map(|i| {
            let parts = split_element(gamma, &[&gamma_a, &dgsub], &gamma.generator(i))
                .ok_or_else(|| Error::input("Γ(A) and d(G) do not split the grading group"))?;
            let pre = dg.preimage(&parts[1]).expect("d(G) is the image of G");
            Ok(gsub.from_abstract(&pre))
        })
        .collect::<Result<_>>()?;
    let f = AbHom::from_images(gamma, dm.mu.group(), &images)?;
    if !dm.morph_module().is_id0(&f) {
        return Err(Error::invariant("reconstructed map is not idempotent"));
    }
    Ok(f)
}

/// How maximality of a decomposition was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Connected order: the remaining part of the degree map has no
    /// isomorphism summand.
    NoIsoSummand,
    /// Product of connected orders: the group is the gcd of the groups of
    /// the factors' maximal structures.
    Gcd { factor_groups: Vec<FinAbGroup> },
}

#[derive(Clone, Debug)]
pub struct StarkDecomposition {
    pub pair: GpRgPair,
    /// `A` in its own basis (the HNF basis of `pair.a`).
    pub base: Order,
    pub group: FinAbGroup,
    pub trusted: bool,
    pub certificate: Certificate,
}

/// Universal grading, roots of unity and degree map of a connected order.
pub fn degree_map_for(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<DegreeMap> {
    let g = universal_for(b, trusted, limits)?;
    let roots = mu(b, limits, false)?;
    degree_map(&g, &roots)
}

fn maximal_connected(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<StarkDecomposition> {
    let dm = degree_map_for(b, trusted, limits)?;
    let m = dm.morph_module();
    let dec = max_iso_dec(&m, limits.max_enum)?;
    if !has_no_iso_summand(&MorphModule::new(dec.part(&m, 0)), limits.max_enum)? {
        return Err(Error::invariant("maximal decomposition leaves an isomorphism summand"));
    }
    let f = id0_from_dec(&dec, &m)?;
    let pair = gprg_from_id0(&f, &dm, limits)?;
    Ok(StarkDecomposition {
        base: b.order.sub_order(&pair.a)?,
        group: pair.group().clone(),
        pair,
        trusted: dm.grading.is_trusted(),
        certificate: Certificate::NoIsoSummand,
    })
}

/// Peels cyclic summands of the given prime-power orders off `g`, first
/// match in lexicographic order each time.
fn peel(g: &FinAbGroup, orders: &[Int], bound: usize) -> Result<(Vec<Elem>, Subgroup)> {
    let mut rest = Subgroup::whole(g);
    let mut gens = Vec::new();
    for q in orders {
        let mut found = None;
        for h in rest.group().elements(bound)? {
            if &rest.group().elem_order(&h) != q {
                continue;
            }
            if let Some(split) = split_cyclic_summand(rest.group(), &h)? {
                found = Some((rest.from_abstract(&h), split.complement.map(rest.inclusion())));
                break;
            }
        }
        let (x, next) = found.ok_or_else(|| Error::invariant("gcd factor is not a summand"))?;
        gens.push(x);
        rest = next;
    }
    Ok((gens, rest))
}

/// The maximal group-ring structure `R = A[G]`, `A` stark.
pub fn maximal_gprg(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<StarkDecomposition> {
    if is_connected(b, limits)? {
        return maximal_connected(b, trusted, limits);
    }
    if trusted.is_some() {
        return Err(Error::unsupported("a trusted grading can only be used for a connected order"));
    }
    let comps = components(b, limits)?;
    let parts = crate::par_map(&comps, limits, |c| maximal_connected(&c.built, None, limits))?;
    let groups: Vec<FinAbGroup> = parts.iter().map(|p| p.group.clone()).collect();
    let gcd = group_gcd(&groups)?;
    let mut qs = gcd.primary_factors();
    qs.sort_by(|a, b| b.cmp(a));
    let order = &b.order;
    let n = order.rank();
    let mut diag = vec![vec![Int::from(0); n]; qs.len()];
    let mut a_vecs = Vec::new();
    for (c, p) in comps.iter().zip(&parts) {
        let (ts, rest) = peel(&p.group, &qs, limits.max_enum)?;
        for (k, t) in ts.iter().enumerate() {
            let v = c.incl.mul_vec(p.pair.g.embed(t));
            for (x, y) in diag[k].iter_mut().zip(v) {
                *x += y;
            }
        }
        let sub = &c.built.order;
        for e in rest.elements(limits.max_enum)? {
            let ev = p.pair.g.embed(&e);
            for x in p.pair.a.vectors() {
                a_vecs.push(c.incl.mul_vec(&sub.mul(&x, ev)));
            }
        }
    }
    let a = HnfBasis::span(n, &a_vecs);
    let diag: Vec<Vec<Int>> = diag.into_iter().filter(|v| v != order.one()).collect();
    let pair = GpRgPair::new(order, a, &diag, limits.max_enum)
        .map_err(|e| Error::invariant(format!("joined structure fails: {e}")))?;
    if pair.group() != &gcd {
        return Err(Error::invariant("joined group differs from the gcd"));
    }
    Ok(StarkDecomposition {
        base: order.sub_order(&pair.a)?,
        group: gcd,
        pair,
        trusted: false,
        certificate: Certificate::Gcd { factor_groups: groups },
    })
}

/// Verdict of the stark test with the trust label of the grading used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarkVerdict {
    pub stark: bool,
    pub trusted: bool,
}

pub fn is_stark(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<StarkVerdict> {
    if is_connected(b, limits)? {
        let dm = degree_map_for(b, trusted, limits)?;
        let dec = max_iso_dec(&dm.morph_module(), limits.max_enum)?;
        return Ok(StarkVerdict {
            stark: dec.src(1).is_trivial(),
            trusted: dm.grading.is_trusted(),
        });
    }
    let dec = maximal_gprg(b, trusted, limits)?;
    Ok(StarkVerdict {
        stark: dec.group.is_trivial(),
        trusted: dec.trusted,
    })
}

/// `GpRg(R)` with its partial order.
#[derive(Clone, Debug)]
pub struct GpRgPoset {
    pub pairs: Vec<GpRgPair>,
    pub id0: Vec<AbHom>,
    /// `(i, j)` when `pairs[i] < pairs[j]` with nothing in between.
    pub hasse: Vec<(usize, usize)>,
}

impl GpRgPoset {
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.pairs.len())
            .filter(|&i| !self.hasse.iter().any(|&(a, _)| a == i))
            .collect()
    }
}

pub fn enumerate_gprg(dm: &DegreeMap, limits: &Limits) -> Result<GpRgPoset> {
    let fs = id0_enumerate(&dm.morph_module(), limits.max_enum)?;
    let pairs: Vec<GpRgPair> = fs.iter().map(|f| gprg_from_id0(f, dm, limits)).collect::<Result<_>>()?;
    let k = pairs.len();
    let lt: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && pairs[i].leq(&pairs[j])).collect())
        .collect();
    let mut hasse = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if lt[i][j] && !(0..k).any(|m| lt[i][m] && lt[m][j]) {
                hasse.push((i, j));
            }
        }
    }
    Ok(GpRgPoset { pairs, id0: fs, hasse })
}

/// Bijectivity of the four natural maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapReport {
    pub a_g: bool,
    pub b_h: bool,
    pub a_h: bool,
    pub b_g: bool,
}

impl SwapReport {
    pub fn all_hold(&self) -> bool {
        self.a_g && self.b_h && self.a_h && self.b_g
    }
}

pub fn swap_check(order: &Order, p1: &GpRgPair, p2: &GpRgPair) -> Result<SwapReport> {
    let n = order.rank();
    if p1.a.ambient_rank != n || p2.a.ambient_rank != n {
        return Err(Error::input("pairs belong to a different order"));
    }
    let (a, g, b, h) = (&p1.a, p1.g.elements(), &p2.a, p2.g.elements());
    Ok(SwapReport {
        a_g: is_group_ring_basis(order, a, g),
        b_h: is_group_ring_basis(order, b, h),
        a_h: is_group_ring_basis(order, a, h),
        b_g: is_group_ring_basis(order, b, g),
    })
}

/// A maximal element of `Dec_I(d)` above `dec`.
fn maximal_above(m: &MorphModule, dec: &MorphDec, bound: usize) -> Result<MorphDec> {
    let d0 = MorphModule::new(dec.part(m, 0));
    let inner = max_iso_dec(&d0, bound)?;
    let (s_in, t_in) = (dec.src(0).inclusion(), dec.tgt(0).inclusion());
    MorphDec::new(
        m,
        [inner.src(0).map(s_in), dec.src(1).join(&inner.src(1).map(s_in))],
        [inner.tgt(0).map(t_in), dec.tgt(1).join(&inner.tgt(1).map(t_in))],
    )
}

/// `A = C[I]` and `u(B) = C[J]` with `I × G ≅ J × H`.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub c: IntHnf,
    pub i: FinAbGroup,
    pub j: FinAbGroup,
    /// Generators of `I` inside `A`.
    pub i_gens: Vec<Vec<Int>>,
    /// Generators of `J` inside the conjugate of `B`.
    pub j_gens: Vec<Vec<Int>>,
    /// Ring automorphism carrying `B` onto `C[J]`.
    pub conjugator: IntMatrix,
}

fn lattice_of_products(order: &Order, c: &IntHnf, g: &[Vec<Int>]) -> IntHnf {
    let vecs: Vec<Vec<Int>> = g
        .iter()
        .flat_map(|u| c.vectors().into_iter().map(move |x| order.mul(&x, u)))
        .collect();
    HnfBasis::span(order.rank(), &vecs)
}

pub fn common_refinement(
    b: &Built,
    dm: &DegreeMap,
    p1: &GpRgPair,
    p2: &GpRgPair,
    limits: &Limits,
) -> Result<Refinement> {
    if !is_connected(b, limits)? {
        return Err(Error::unsupported("order is not connected; use the componentwise pipeline"));
    }
    let order = &b.order;
    let m = dm.morph_module();
    let bound = limits.max_enum;
    let dec_a = maximal_above(&m, &dec_from_id0(&id0_from_gprg(p1, dm)?, &m)?, bound)?;
    let dec_b = maximal_above(&m, &dec_from_id0(&id0_from_gprg(p2, dm)?, &m)?, bound)?;
    let star_a = gprg_from_id0(&id0_from_dec(&dec_a, &m)?, dm, limits)?;
    let star_b = gprg_from_id0(&id0_from_dec(&dec_b, &m)?, dm, limits)?;
    let i_elems: Vec<Vec<Int>> = star_a.g.elements().iter().filter(|z| p1.a.contains(z)).cloned().collect();
    let j_elems: Vec<Vec<Int>> = star_b.g.elements().iter().filter(|z| p2.a.contains(z)).cloned().collect();
    let unit = connecting_unit(&m, &dec_b, &dec_a)?
        .ok_or_else(|| Error::invariant("maximal decompositions are not connected by a unit"))?;
    if !unit.q.m.is_one() {
        return Err(Error::invariant("connecting unit is not unipotent"));
    }
    let conj = psi(dm, &unit.q.f, limits)?;
    let moved_b = HnfBasis::span(order.rank(), &p2.a.vectors().iter().map(|v| conj.mul_vec(v)).collect::<Vec<_>>());
    let moved_star = HnfBasis::span(
        order.rank(),
        &star_b.a.vectors().iter().map(|v| conj.mul_vec(v)).collect::<Vec<_>>(),
    );
    if moved_star != star_a.a {
        return Err(Error::invariant("connecting automorphism does not carry one stark base to the other"));
    }
    let j_moved: Vec<Vec<Int>> = j_elems.iter().map(|v| conj.mul_vec(v)).collect();
    let c = star_a.a.clone();
    if lattice_of_products(order, &c, &i_elems) != p1.a || lattice_of_products(order, &c, &j_moved) != moved_b {
        return Err(Error::invariant("refinement does not reproduce the bases"));
    }
    let i = RootsOfUnity::from_generators(order, &i_elems, bound)?;
    let j = RootsOfUnity::from_generators(order, &j_moved, bound)?;
    let lhs = DirectProduct::new(&[i.group().clone(), p1.group().clone()]).group;
    let rhs = DirectProduct::new(&[j.group().clone(), p2.group().clone()]).group;
    if lhs != rhs {
        return Err(Error::invariant("I × G and J × H are not isomorphic"));
    }
    Ok(Refinement {
        c,
        i: i.group().clone(),
        j: j.group().clone(),
        i_gens: i.generator_images(),
        j_gens: j.generator_images(),
        conjugator: conj,
    })
}
