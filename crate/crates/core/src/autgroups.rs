//! Automorphisms of group rings `A[G]` over a stark connected reduced
//! order `A`, as the matrix group
//! `M = (Aut(A), Hom(G, μ); Hom(Γ, G), Aut(G))`, together with the
//! automorphism `ψ(1+f)` and the exact sequence relating `U*` and `Aut`.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};

use crate::abgroups::{hom_group, AbHom, Elem, FinAbGroup};
use crate::gradings::{degree_map, universal_groupring, DegreeMap, Grading};
use crate::intlin::{det, inverse_field, solve};
use crate::morphmods::{u_star_invert, QElem};
use crate::orders::{build, group_ring_order, is_connected, mu, Built, Order, OrderExpr, RootsOfUnity};
use crate::starkdec::{degree_map_for, is_stark};
use crate::{Error, Int, IntMatrix, Limits, Rat, Result};

/// Whether `m` (columns: images of basis vectors) is a ring automorphism.
pub fn is_ring_automorphism(order: &Order, m: &IntMatrix) -> bool {
    let n = order.rank();
    if m.rows() != n || m.cols() != n || !det(m).abs().is_one() {
        return false;
    }
    if m.mul_vec(order.one()) != order.one() {
        return false;
    }
    let cols = m.columns();
    (0..n).all(|i| {
        (i..n).all(|j| {
            let bij = order.mul(&order.basis_vector(i), &order.basis_vector(j));
            m.mul_vec(&bij) == order.mul(&cols[i], &cols[j])
        })
    })
}

/// Homogeneous basis of a grading: `(degree, vector)` pairs, and the
/// inverse of the matrix having those vectors as columns.
fn frame(g: &Grading) -> (Vec<(Elem, Vec<Int>)>, IntMatrix) {
    let n = g.order().rank();
    let basis: Vec<(Elem, Vec<Int>)> = g
        .components()
        .iter()
        .flat_map(|(k, l)| l.vectors().into_iter().map(move |v| (k.clone(), v)))
        .collect();
    let p = IntMatrix::from_columns(n, &basis.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
    let inv = inverse_field(&p.map(|x| Rat::from_integer(x.clone()))).expect("components form a basis");
    (basis, inv.map(|x| x.to_integer()))
}

/// Linear map fixed by its values on a homogeneous basis.
fn from_frame_images(frame_inv: &IntMatrix, images: &[Vec<Int>]) -> IntMatrix {
    let n = frame_inv.rows();
    IntMatrix::from_columns(n, images).mul(frame_inv)
}

/// `ψ(1+f)`: scales `R_γ` by `f(γ)`.
pub fn psi(dm: &DegreeMap, f: &AbHom, _limits: &Limits) -> Result<IntMatrix> {
    let m = dm.morph_module();
    if f.src() != dm.grading.gamma() || f.tgt() != dm.mu.group() {
        return Err(Error::input("f must map the grading group to the roots of unity"));
    }
    if u_star_invert(&QElem::unipotent(f.clone()), &m)?.is_none() {
        return Err(Error::input("1 + f is not a unit"));
    }
    let order = dm.grading.order();
    let (basis, inv) = frame(&dm.grading);
    let images: Vec<Vec<Int>> = basis
        .iter()
        .map(|(k, v)| order.mul(dm.mu.embed(&f.apply(k)), v))
        .collect();
    let out = from_frame_images(&inv, &images);
    if !is_ring_automorphism(order, &out) {
        return Err(Error::invariant("ψ(1+f) is not a ring automorphism"));
    }
    Ok(out)
}

/// Automorphisms of the bundled bases.
pub fn builtin_automorphisms(order: &Order) -> Option<Vec<IntMatrix>> {
    let m = |rows: &[&[i64]]| {
        let v: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        IntMatrix::from_rows(&v, rows[0].len()).expect("square")
    };
    let same = |e: OrderExpr| build(&e).map(|b| b.order == *order).unwrap_or(false);
    if order.rank() == 1 {
        return Some(vec![IntMatrix::identity(1)]);
    }
    if same(OrderExpr::gaussian()) {
        return Some(vec![IntMatrix::identity(2), m(&[&[1, 0], &[0, -1]])]);
    }
    if same(OrderExpr::eisenstein()) {
        return Some(vec![IntMatrix::identity(2), m(&[&[1, -1], &[0, -1]])]);
    }
    None
}

/// A stark connected reduced base with its grading, degree map and
/// automorphism group.
#[derive(Clone, Debug)]
pub struct AutData {
    pub base: Order,
    pub grading: Grading,
    pub dm: DegreeMap,
    pub aut_a: Vec<IntMatrix>,
}

impl AutData {
    pub fn new(base: &Built, aut_a: Option<Vec<IntMatrix>>, limits: &Limits) -> Result<Self> {
        if !is_connected(base, limits)? {
            return Err(Error::input("base order must be connected"));
        }
        if !is_stark(base, None, limits)?.stark {
            return Err(Error::input("base order must be stark"));
        }
        let dm = degree_map_for(base, None, limits)?;
        let aut_a = match aut_a {
            Some(a) => a,
            None => builtin_automorphisms(&base.order)
                .ok_or_else(|| Error::input("automorphisms of this base must be supplied"))?,
        };
        let order = &base.order;
        if aut_a.iter().any(|a| !is_ring_automorphism(order, a)) {
            return Err(Error::input("listed map is not a ring automorphism"));
        }
        let set: HashSet<&IntMatrix> = aut_a.iter().collect();
        if set.len() != aut_a.len() || !set.contains(&IntMatrix::identity(order.rank())) {
            return Err(Error::input("automorphism list must be duplicate free and contain the identity"));
        }
        for a in &aut_a {
            for b in &aut_a {
                if !set.contains(&a.mul(b)) {
                    return Err(Error::input("automorphism list is not closed under composition"));
                }
            }
        }
        Ok(AutData {
            base: order.clone(),
            grading: dm.grading.clone(),
            dm,
            aut_a,
        })
    }

    fn mu(&self) -> &RootsOfUnity {
        &self.dm.mu
    }

    fn gamma(&self) -> &FinAbGroup {
        self.grading.gamma()
    }

    /// Action of an automorphism on `μ(A)`.
    fn on_mu(&self, alpha: &IntMatrix) -> Result<AbHom> {
        let mu = self.mu();
        let imgs: Vec<Elem> = mu
            .generator_images()
            .iter()
            .map(|z| mu.find(&alpha.mul_vec(z)).ok_or_else(|| Error::invariant("automorphism moves a root of unity out of μ")))
            .collect::<Result<_>>()?;
        AbHom::from_images(mu.group(), mu.group(), &imgs)
    }

    /// Induced action on `Γ(A)`, fixed by the support.
    fn on_gamma(&self, alpha: &IntMatrix) -> Result<AbHom> {
        let gamma = self.gamma();
        let mut support = Vec::new();
        let mut images = Vec::new();
        for (k, l) in self.grading.components() {
            let v = alpha.mul_vec(&l.vectors()[0]);
            let img = self
                .grading
                .degree_of(&v)
                .ok_or_else(|| Error::invariant("automorphism does not permute the components"))?;
            support.push(k.clone());
            images.push(img);
        }
        let s = IntMatrix::from_columns(gamma.ngens(), &support);
        let imgs: Vec<Elem> = (0..gamma.ngens())
            .map(|i| {
                let c = solve(&s, &gamma.generator(i), Some(gamma.factors()))?
                    .ok_or_else(|| Error::invariant("support does not generate the grading group"))?;
                Ok(images
                    .iter()
                    .zip(&c)
                    .fold(gamma.zero(), |acc, (y, k)| gamma.add(&acc, &gamma.scale(k, y))))
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(gamma, gamma, &imgs)
    }

    /// `α + f: x ∈ A_γ ↦ α(x)·f(γ)`.
    fn shift(&self, alpha: &IntMatrix, f: &AbHom) -> IntMatrix {
        let (basis, inv) = frame(&self.grading);
        let images: Vec<Vec<Int>> = basis
            .iter()
            .map(|(k, v)| self.base.mul(&alpha.mul_vec(v), self.mu().embed(&f.apply(k))))
            .collect();
        from_frame_images(&inv, &images)
    }
}

/// `(α s; t σ)` with `s: G → μ(A)`, `t: Γ(A) → G`, `σ ∈ Aut(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixGroupElem {
    pub alpha: IntMatrix,
    pub s: AbHom,
    pub t: AbHom,
    pub sigma: AbHom,
}

impl MatrixGroupElem {
    pub fn identity(ctx: &AutData, g: &FinAbGroup) -> Self {
        MatrixGroupElem {
            alpha: IntMatrix::identity(ctx.base.rank()),
            s: AbHom::zero(g, ctx.mu().group()),
            t: AbHom::zero(ctx.gamma(), g),
            sigma: AbHom::identity(g),
        }
    }

    fn check(&self, ctx: &AutData, g: &FinAbGroup) -> Result<()> {
        if self.s.src() != g || self.s.tgt() != ctx.mu().group() || self.t.src() != ctx.gamma() || self.t.tgt() != g
        {
            return Err(Error::input("matrix entries do not match the base and group"));
        }
        if self.sigma.src() != g || self.sigma.tgt() != g || !self.sigma.is_iso() {
            return Err(Error::input("σ must be an automorphism of G"));
        }
        if !ctx.aut_a.contains(&self.alpha) {
            return Err(Error::input("α is not among the automorphisms of the base"));
        }
        Ok(())
    }
}

/// Product in `M`.
pub fn m_mul(x: &MatrixGroupElem, y: &MatrixGroupElem, ctx: &AutData, g: &FinAbGroup) -> Result<MatrixGroupElem> {
    x.check(ctx, g)?;
    y.check(ctx, g)?;
    let alpha = ctx.shift(&x.alpha.mul(&y.alpha), &x.s.compose(&y.t));
    if !ctx.aut_a.contains(&alpha) {
        return Err(Error::invariant("α₁α₂ + s₁t₂ left the automorphism group"));
    }
    let s = ctx.on_mu(&x.alpha)?.compose(&y.s).add(&x.s.compose(&y.sigma));
    let t = x.t.compose(&ctx.on_gamma(&y.alpha)?).add(&x.sigma.compose(&y.t));
    let sigma = x.t.compose(&ctx.dm.d).compose(&y.s).add(&x.sigma.compose(&y.sigma));
    if !sigma.is_iso() {
        return Err(Error::invariant("t₁ d s₂ + σ₁σ₂ is not invertible"));
    }
    Ok(MatrixGroupElem { alpha, s, t, sigma })
}

/// Matrix of the action of `x` on `A[G]`, in the group-ring basis
/// `b_i·g ↦ index_of(g)·rank(A) + i`.
pub fn m_matrix(x: &MatrixGroupElem, ctx: &AutData, g: &FinAbGroup, limits: &Limits) -> Result<IntMatrix> {
    x.check(ctx, g)?;
    let n = ctx.base.rank();
    let elems = g.elements(limits.max_enum)?;
    let size = n * elems.len();
    let (basis, inv) = frame(&ctx.grading);
    let mut cols = Vec::with_capacity(size);
    for h in &elems {
        let sh = ctx.mu().embed(&x.s.apply(h)).to_vec();
        let sigma_h = x.sigma.apply(h);
        for i in 0..n {
            let coords = inv.mul_vec(&ctx.base.basis_vector(i));
            let mut col = vec![Int::zero(); size];
            for (c, (deg, v)) in coords.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                let piece = ctx.base.mul(&x.alpha.mul_vec(v), &sh);
                let target = g.index_of(&g.add(&x.t.apply(deg), &sigma_h));
                for (k, p) in piece.iter().enumerate() {
                    col[target * n + k] += c * p;
                }
            }
            cols.push(col);
        }
    }
    Ok(IntMatrix::from_columns(size, &cols))
}

/// Image of a vector of `A[G]` under `x`.
pub fn m_act(x: &MatrixGroupElem, elem: &[Int], ctx: &AutData, g: &FinAbGroup, limits: &Limits) -> Result<Vec<Int>> {
    let m = m_matrix(x, ctx, g, limits)?;
    if elem.len() != m.cols() {
        return Err(Error::input("vector does not belong to the group ring"));
    }
    Ok(m.mul_vec(elem))
}

fn automorphisms_of_group(g: &FinAbGroup, bound: usize) -> Result<Vec<AbHom>> {
    Ok(hom_group(g, g).enumerate(bound)?.into_iter().filter(|f| f.is_iso()).collect())
}

/// `|Aut(A[G])| = |Aut(A)|·|Hom(G, μ)|·|Hom(Γ, G)|·|Aut(G)|`.
pub fn aut_order(ctx: &AutData, g: &FinAbGroup, limits: &Limits) -> Result<Int> {
    let hs = hom_group(g, ctx.mu().group()).order();
    let ht = hom_group(ctx.gamma(), g).order();
    let ag = automorphisms_of_group(g, limits.max_enum)?.len();
    Ok(Int::from(ctx.aut_a.len()) * hs * ht * Int::from(ag))
}

/// Every element of `M`.
pub fn enumerate_m(ctx: &AutData, g: &FinAbGroup, limits: &Limits) -> Result<Vec<MatrixGroupElem>> {
    let bound = limits.max_enum;
    if aut_order(ctx, g, limits)? > Int::from(bound) {
        return Err(Error::too_large("automorphism group", bound));
    }
    let ss = hom_group(g, ctx.mu().group()).enumerate(bound)?;
    let ts = hom_group(ctx.gamma(), g).enumerate(bound)?;
    let sigmas = automorphisms_of_group(g, bound)?;
    let mut out = Vec::new();
    for alpha in &ctx.aut_a {
        for s in &ss {
            for t in &ts {
                for sigma in &sigmas {
                    out.push(MatrixGroupElem {
                        alpha: alpha.clone(),
                        s: s.clone(),
                        t: t.clone(),
                        sigma: sigma.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Counts and verdicts for `0 → U*(A) → U*(A[G]) ⋊ Aut(A) → Aut(A[G]) → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    pub u_star_base: usize,
    pub u_star_group_ring: usize,
    /// `|U*(A)|·|Hom(G,μ)|·|Hom(Γ,G)|·|Aut(G)|`.
    pub u_star_matrix_form: Int,
    pub aut_base: usize,
    pub aut_group_ring: usize,
    pub cardinality_identity: bool,
    pub iota_injective: bool,
    pub pi_surjective: bool,
    pub kernel_is_image: bool,
}

impl ExactSequenceReport {
    pub fn holds(&self) -> bool {
        self.cardinality_identity
            && self.iota_injective
            && self.pi_surjective
            && self.kernel_is_image
            && Int::from(self.u_star_group_ring) == self.u_star_matrix_form
    }
}

fn u_star(dm: &DegreeMap, bound: usize) -> Result<Vec<(AbHom, AbHom)>> {
    let m = dm.morph_module();
    let mut out = Vec::new();
    for f in hom_group(dm.grading.gamma(), dm.mu.group()).enumerate(bound)? {
        if let Some(u) = u_star_invert(&QElem::unipotent(f.clone()), &m)? {
            out.push((f, u.inverse.f));
        }
    }
    Ok(out)
}

/// `α ⊗ id` on `A[G]`.
fn extend_to_group_ring(alpha: &IntMatrix, m: usize) -> IntMatrix {
    let n = alpha.rows();
    let mut out = IntMatrix::zeros(n * m, n * m);
    for b in 0..m {
        for i in 0..n {
            for j in 0..n {
                out[(b * n + i, b * n + j)] = alpha[(i, j)].clone();
            }
        }
    }
    out
}

pub fn exact_sequence_check(ctx: &AutData, g: &FinAbGroup, limits: &Limits) -> Result<ExactSequenceReport> {
    let bound = limits.max_enum;
    let elems = g.elements(bound)?;
    let n = ctx.base.rank();
    let order = group_ring_order(&ctx.base, g, bound)?;
    let grading = universal_groupring(&ctx.grading, g, limits)?;
    let mut gens: Vec<Vec<Int>> = ctx
        .mu()
        .generator_images()
        .into_iter()
        .map(|z| {
            let mut w = order.zero();
            w[..n].clone_from_slice(&z);
            w
        })
        .collect();
    for i in 0..g.ngens() {
        let gi = g.index_of(&g.generator(i));
        let mut w = order.zero();
        w[gi * n..(gi + 1) * n].clone_from_slice(ctx.base.one());
        gens.push(w);
    }
    let roots = RootsOfUnity::from_generators(&order, &gens, bound)?;
    let dm_r = degree_map(&grading, &roots)?;

    let ua = u_star(&ctx.dm, bound)?;
    let ur = u_star(&dm_r, bound)?;
    let hs = hom_group(g, ctx.mu().group()).order();
    let ht = hom_group(ctx.gamma(), g).order();
    let ag = automorphisms_of_group(g, bound)?.len();
    let u_star_matrix_form = Int::from(ua.len()) * hs * ht * Int::from(ag);

    let aut_r: BTreeSet<Vec<Int>> = enumerate_m(ctx, g, limits)?
        .iter()
        .map(|x| m_matrix(x, ctx, g, limits).map(|m| m.entries().to_vec()))
        .collect::<Result<_>>()?;

    // Inclusion Hom(Γ(A), μ(A)) → Hom(Γ(R), μ(R)): (γ, g) ↦ f(γ).
    let include = |f: &AbHom| -> Result<AbHom> {
        let gamma_r = dm_r.grading.gamma();
        let imgs: Vec<Elem> = (0..gamma_r.ngens())
            .map(|i| {
                let e = gamma_r.generator(i);
                let comp = dm_r.grading.component(&e);
                let deg_a = match comp {
                    Some(l) => {
                        let v = l.vectors()[0].clone();
                        let blk = v.iter().position(|c| !c.is_zero()).expect("nonzero") / n;
                        ctx.grading.degree_of(&v[blk * n..(blk + 1) * n]).expect("homogeneous")
                    }
                    None => return Err(Error::invariant("grading group generator outside the support")),
                };
                let mut w = order.zero();
                w[..n].clone_from_slice(ctx.mu().embed(&f.apply(&deg_a)));
                Ok(roots.find(&w).expect("root of unity of the base"))
            })
            .collect::<Result<_>>()?;
        AbHom::from_images(gamma_r, roots.group(), &imgs)
    };

    let aut_index = |m: &IntMatrix| ctx.aut_a.iter().position(|a| a == m);
    let mut iota_images = HashSet::new();
    for (f, f_inv) in &ua {
        let alpha = psi(&ctx.dm, f, limits)?;
        let idx = aut_index(&alpha).ok_or_else(|| Error::invariant("ψ(u) is not a listed automorphism"))?;
        iota_images.insert((include(f_inv)?, idx));
    }
    let iota_injective = iota_images.len() == ua.len();

    let mut image = BTreeSet::new();
    let mut kernel = HashSet::new();
    let identity = IntMatrix::identity(order.rank());
    for (v, _) in &ur {
        let pv = psi(&dm_r, v, limits)?;
        for (idx, alpha) in ctx.aut_a.iter().enumerate() {
            let m = pv.mul(&extend_to_group_ring(alpha, elems.len()));
            if m == identity {
                kernel.insert((v.clone(), idx));
            }
            image.insert(m.entries().to_vec());
        }
    }
    let report = ExactSequenceReport {
        u_star_base: ua.len(),
        u_star_group_ring: ur.len(),
        u_star_matrix_form,
        aut_base: ctx.aut_a.len(),
        aut_group_ring: aut_r.len(),
        cardinality_identity: ur.len() * ctx.aut_a.len() == ua.len() * aut_r.len(),
        iota_injective,
        pi_surjective: image == aut_r,
        kernel_is_image: kernel == iota_images,
    };
    Ok(report)
}

/// Roots of unity of a base, for callers building `s` maps.
pub fn base_mu(ctx: &AutData) -> &RootsOfUnity {
    ctx.mu()
}

/// Roots of unity of `A` recomputed from scratch, used to cross-check a
/// supplied context.
pub fn recompute_mu(base: &Built, limits: &Limits) -> Result<RootsOfUnity> {
    mu(base, limits, false)
}
