//! Morphisms `d: A -> B` of finite abelian groups as modules: the ring
//! `Q(d) = Z + Hom(B, A)`, its unit group `U*`, the idempotent set `Id0`,
//! decompositions `d = d0 + d1` and the greedy maximal isomorphism summand.

use num_traits::One;

use crate::abgroups::{
    hom_group, is_direct_decomposition, split_cyclic_summand, split_element,
    subgroup_from_generators, AbHom, Elem, FinAbGroup, Subgroup,
};
use crate::{Error, Int, Result};

/// A morphism viewed as a module over the lower triangular matrix ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphModule {
    d: AbHom,
}

impl MorphModule {
    pub fn new(d: AbHom) -> Self {
        MorphModule { d }
    }

    pub fn d(&self) -> &AbHom {
        &self.d
    }

    pub fn src(&self) -> &FinAbGroup {
        self.d.src()
    }

    pub fn tgt(&self) -> &FinAbGroup {
        self.d.tgt()
    }

    /// `(m + fd, m + df)`, the endomorphism of `d` induced by `(m, f)`.
    pub fn q(&self, u: &QElem) -> (AbHom, AbHom) {
        let ea = AbHom::identity(self.src()).scale(&u.m).add(&u.f.compose(&self.d));
        let eb = AbHom::identity(self.tgt()).scale(&u.m).add(&self.d.compose(&u.f));
        (ea, eb)
    }

    fn check(&self, f: &AbHom) -> Result<()> {
        if f.src() != self.tgt() || f.tgt() != self.src() {
            return Err(Error::input("element of Hom(B, A) expected"));
        }
        Ok(())
    }

    /// `f ∘ d ∘ f = f`.
    pub fn is_id0(&self, f: &AbHom) -> bool {
        f.compose(&self.d).compose(f) == *f
    }
}

/// Element `(m, f)` of `Q(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QElem {
    pub m: Int,
    pub f: AbHom,
}

impl QElem {
    pub fn one(d: &MorphModule) -> Self {
        QElem {
            m: Int::one(),
            f: AbHom::zero(d.tgt(), d.src()),
        }
    }

    /// `1 + f`.
    pub fn unipotent(f: AbHom) -> Self {
        QElem { m: Int::one(), f }
    }
}

/// `(m, f) ⋆ (n, g) = (mn, mg + nf + fdg)`.
pub fn q_mul(a: &QElem, b: &QElem, d: &MorphModule) -> Result<QElem> {
    d.check(&a.f)?;
    d.check(&b.f)?;
    let f = b
        .f
        .scale(&a.m)
        .add(&a.f.scale(&b.m))
        .add(&a.f.compose(d.d()).compose(&b.f));
    Ok(QElem { m: &a.m * &b.m, f })
}

/// A unit of `U` together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UStarElem {
    pub q: QElem,
    pub inverse: QElem,
}

/// Inverts `1 + f` when it is a unit: the inverse is `1 + g` with
/// `g = -(1 + fd)^{-1} f`, which exists exactly when `1 + fd` is an
/// automorphism of the source.
pub fn u_star_invert(u: &QElem, d: &MorphModule) -> Result<Option<UStarElem>> {
    if !u.m.is_one() {
        return Err(Error::input("element of U expected"));
    }
    d.check(&u.f)?;
    let (ea, _) = d.q(u);
    let Some(inv) = ea.inverse() else {
        return Ok(None);
    };
    let inverse = QElem::unipotent(inv.compose(&u.f).neg());
    let one = QElem::one(d);
    if q_mul(u, &inverse, d)? != one || q_mul(&inverse, u, d)? != one {
        return Err(Error::invariant("computed inverse in U* is wrong"));
    }
    Ok(Some(UStarElem {
        q: u.clone(),
        inverse,
    }))
}

/// All `f` in `Hom(B, A)` with `fdf = f`.
pub fn id0_enumerate(d: &MorphModule, bound: usize) -> Result<Vec<AbHom>> {
    Ok(hom_group(d.tgt(), d.src())
        .enumerate(bound)?
        .into_iter()
        .filter(|f| d.is_id0(f))
        .collect())
}

/// Decomposition `A = A0 + A1`, `B = B0 + B1` with `d(A_i) ⊆ B_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphDec {
    src: [Subgroup; 2],
    tgt: [Subgroup; 2],
}

impl MorphDec {
    pub fn new(d: &MorphModule, src: [Subgroup; 2], tgt: [Subgroup; 2]) -> Result<Self> {
        if !is_direct_decomposition(d.src(), &[&src[0], &src[1]])
            || !is_direct_decomposition(d.tgt(), &[&tgt[0], &tgt[1]])
        {
            return Err(Error::input("parts do not form direct sums"));
        }
        for i in 0..2 {
            if src[i]
                .generators()
                .iter()
                .any(|x| !tgt[i].contains(&d.d().apply(x)))
            {
                return Err(Error::input("d does not respect the decomposition"));
            }
        }
        Ok(MorphDec { src, tgt })
    }

    /// `(d, 0)`.
    pub fn trivial(d: &MorphModule) -> Self {
        MorphDec {
            src: [Subgroup::whole(d.src()), Subgroup::trivial(d.src())],
            tgt: [Subgroup::whole(d.tgt()), Subgroup::trivial(d.tgt())],
        }
    }

    pub fn src(&self, i: usize) -> &Subgroup {
        &self.src[i]
    }

    pub fn tgt(&self, i: usize) -> &Subgroup {
        &self.tgt[i]
    }

    /// The restriction `d_i` between the abstract copies of the parts.
    pub fn part(&self, d: &MorphModule, i: usize) -> AbHom {
        self.src[i]
            .restrict(d.d(), &self.tgt[i])
            .expect("parts are compatible with d")
    }

    /// True when `d1` is an isomorphism.
    pub fn is_iso_dec(&self, d: &MorphModule) -> bool {
        self.part(d, 1).is_iso()
    }

    /// Image under the automorphism `q(u)` of `d`.
    pub fn act(&self, d: &MorphModule, u: &QElem) -> Result<MorphDec> {
        let (ea, eb) = d.q(u);
        MorphDec::new(
            d,
            [self.src[0].map(&ea), self.src[1].map(&ea)],
            [self.tgt[0].map(&eb), self.tgt[1].map(&eb)],
        )
    }
}

/// `x` in `part` with `d(x) = y`, if any.
fn preimage_in(d: &AbHom, part: &Subgroup, y: &[Int]) -> Option<Elem> {
    let a = d.compose(part.inclusion()).preimage(y)?;
    Some(part.from_abstract(&a))
}

/// The decomposition attached to `f` in `Id0`: `d1` is `d` restricted to
/// `im f -> im df` and `d0` lives on the kernels of `fd` and `df`.
pub fn dec_from_id0(f: &AbHom, d: &MorphModule) -> Result<MorphDec> {
    d.check(f)?;
    if !d.is_id0(f) {
        return Err(Error::input("f does not satisfy fdf = f"));
    }
    let fd = f.compose(d.d());
    let df = d.d().compose(f);
    MorphDec::new(d, [fd.kernel(), f.image()], [df.kernel(), df.image()])
}

/// The element of `Id0` attached to a decomposition with `d1` invertible:
/// zero on `B0` and `d1^{-1}` on `B1`.
pub fn id0_from_dec(dec: &MorphDec, d: &MorphModule) -> Result<AbHom> {
    if !dec.is_iso_dec(d) {
        return Err(Error::input("d1 is not an isomorphism"));
    }
    let parts = [dec.tgt(0), dec.tgt(1)];
    let images: Vec<Elem> = (0..d.tgt().ngens())
        .map(|i| {
            let split = split_element(d.tgt(), &parts, &d.tgt().generator(i))
                .ok_or_else(|| Error::invariant("target parts do not span"))?;
            preimage_in(d.d(), dec.src(1), &split[1])
                .ok_or_else(|| Error::invariant("d1 is not surjective"))
        })
        .collect::<Result<_>>()?;
    AbHom::from_images(d.tgt(), d.src(), &images)
}

/// Greedy maximal element of `Dec_I(d)`: repeatedly peel off a cyclic
/// prime-power `<x>` whose image `<dx>` has the same order and splits off
/// the current target part. Largest order first, ties broken by the
/// lexicographically smallest coordinates in the current source part.
pub fn max_iso_dec(d: &MorphModule, bound: usize) -> Result<MorphDec> {
    let mut s = Subgroup::whole(d.src());
    let mut t = Subgroup::whole(d.tgt());
    let mut peeled: Vec<Elem> = Vec::new();
    let mut peeled_images: Vec<Elem> = Vec::new();
    loop {
        let mut candidates: Vec<(Int, usize, Elem)> = Vec::new();
        for (idx, a) in s.group().elements(bound)?.into_iter().enumerate() {
            let ord = s.group().elem_order(&a);
            if ord.is_one() || crate::abgroups::prime_power(&ord).is_none() {
                continue;
            }
            candidates.push((ord, idx, a));
        }
        candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut step = None;
        for (ord, _, a) in candidates {
            let x = s.from_abstract(&a);
            let dx = d.d().apply(&x);
            if d.tgt().elem_order(&dx) != ord {
                continue;
            }
            let t_dx = t.to_abstract(&dx).expect("d maps S into T");
            if let Some(split) = split_cyclic_summand(t.group(), &t_dx)? {
                step = Some((x, dx, split));
                break;
            }
        }
        let Some((x, dx, split)) = step else {
            break;
        };
        let d_st = s.restrict(d.d(), &t)?;
        let s_next = split.retraction.compose(&d_st).kernel().map(s.inclusion());
        let t_next = split.complement.map(t.inclusion());
        peeled.push(x);
        peeled_images.push(dx);
        s = s_next;
        t = t_next;
    }
    MorphDec::new(
        d,
        [s, subgroup_from_generators(d.src(), &peeled)],
        [t, subgroup_from_generators(d.tgt(), &peeled_images)],
    )
}

/// Unit moving `(P, X)` to `(P, Y)` where `shared` selects which index
/// holds `P` in both decompositions.
fn connect_shared(
    d: &MorphModule,
    from: &MorphDec,
    to: &MorphDec,
    shared: usize,
) -> Result<Option<QElem>> {
    let changed = 1 - shared;
    let (a_p, a_x, a_y) = (from.src(shared), from.src(changed), to.src(changed));
    let (b_p, b_x, b_y) = (from.tgt(shared), from.tgt(changed), to.tgt(changed));
    let x_iso = from.part(d, changed).is_iso();
    let p_iso = from.part(d, shared).is_iso();
    if !x_iso && !p_iso {
        return Ok(None);
    }
    let f1 = |y: &Elem| -> Option<Elem> {
        if x_iso {
            let x = preimage_in(d.d(), a_x, y)?;
            Some(split_element(d.src(), &[a_p, a_y], &x)?.swap_remove(0))
        } else {
            let r = split_element(d.tgt(), &[b_p, b_y], y)?.swap_remove(0);
            preimage_in(d.d(), a_p, &r)
        }
    };
    let mut images = Vec::new();
    for i in 0..d.tgt().ngens() {
        let Some(parts) = split_element(d.tgt(), &[b_p, b_x], &d.tgt().generator(i)) else {
            return Ok(None);
        };
        let Some(img) = f1(&parts[1]) else {
            return Ok(None);
        };
        images.push(img);
    }
    let f = AbHom::from_images(d.tgt(), d.src(), &images)?;
    Ok(Some(QElem::unipotent(f.neg())))
}

/// A unit `u` in `U*` with `q(u)` carrying `a` to `b`, built through the
/// intermediate decomposition `(a0, b1)`. Returns `None` when the
/// construction does not apply (for instance non-maximal inputs with
/// different `d0` parts).
pub fn connecting_unit(d: &MorphModule, a: &MorphDec, b: &MorphDec) -> Result<Option<UStarElem>> {
    if a == b {
        return u_star_invert(&QElem::one(d), d);
    }
    let Ok(mid) = MorphDec::new(
        d,
        [a.src(0).clone(), b.src(1).clone()],
        [a.tgt(0).clone(), b.tgt(1).clone()],
    ) else {
        return Ok(None);
    };
    let Some(u1) = connect_shared(d, a, &mid, 0)? else {
        return Ok(None);
    };
    let Some(u2) = connect_shared(d, &mid, b, 1)? else {
        return Ok(None);
    };
    let u = q_mul(&u2, &u1, d)?;
    let Some(unit) = u_star_invert(&u, d)? else {
        return Err(Error::invariant("connecting element is not a unit"));
    };
    if a.act(d, &u)? != *b {
        return Ok(None);
    }
    Ok(Some(unit))
}

/// Whether `d` itself has no nonzero isomorphism summand.
pub fn has_no_iso_summand(d: &MorphModule, bound: usize) -> Result<bool> {
    Ok(max_iso_dec(d, bound)?.src(1).order().is_one())
}
