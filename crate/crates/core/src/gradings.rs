//! Gradings of orders by finite abelian groups, the universal grading of
//! the orders the toolkit can handle, and the degree map.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::abgroups::{from_presentation, subgroup_from_generators, AbHom, DirectProduct, Elem, FinAbGroup};
use crate::intlin::{det, HnfBasis};
use crate::morphmods::MorphModule;
use crate::orders::{
    autopotent_span_connected, components, group_ring_order, is_connected, mu, product_order, Built, Order,
    Provenance, RootsOfUnity, TracePairing,
};
use crate::{Error, Int, IntHnf, IntMatrix, Limits, Result};

/// `R = ⊕_γ R_γ`; absent degrees are zero components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    order: Order,
    gamma: FinAbGroup,
    components: BTreeMap<Elem, IntHnf>,
    trusted: bool,
}

/// A failed grading axiom with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

fn fmt_elem(e: &[Int]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl Grading {
    /// Merges repeated degrees, drops zero components, checks the axioms
    /// and restricts `gamma` to the subgroup generated by the support.
    pub fn new(order: &Order, gamma: &FinAbGroup, comps: &[(Elem, Vec<Vec<Int>>)]) -> Result<Self> {
        let n = order.rank();
        let mut merged: BTreeMap<Elem, Vec<Vec<Int>>> = BTreeMap::new();
        for (deg, basis) in comps {
            if deg.len() != gamma.ngens() {
                return Err(Error::input(format!("degree {} has the wrong length", fmt_elem(deg))));
            }
            if basis.iter().any(|v| v.len() != n) {
                return Err(Error::input(format!("component {} has vectors of the wrong length", fmt_elem(deg))));
            }
            merged.entry(gamma.reduce(deg)).or_default().extend(basis.iter().cloned());
        }
        let g = Self::assemble(order, gamma, merged);
        if let Some(v) = g.check().into_iter().next() {
            return Err(Error::input(format!("not a grading: {v}")));
        }
        Ok(g.normalize_support())
    }

    fn assemble(order: &Order, gamma: &FinAbGroup, merged: BTreeMap<Elem, Vec<Vec<Int>>>) -> Self {
        let n = order.rank();
        let components = merged
            .into_iter()
            .map(|(k, vs)| (k, HnfBasis::span(n, &vs)))
            .filter(|(_, l)| l.rank() > 0)
            .collect();
        Grading {
            order: order.clone(),
            gamma: gamma.clone(),
            components,
            trusted: false,
        }
    }

    /// The grading with a single component.
    pub fn trivial(order: &Order) -> Self {
        let n = order.rank();
        Grading {
            order: order.clone(),
            gamma: FinAbGroup::trivial(),
            components: BTreeMap::from([(vec![], HnfBasis::full(n))]),
            trusted: false,
        }
    }

    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn gamma(&self) -> &FinAbGroup {
        &self.gamma
    }

    /// Non-zero components in lexicographic degree order.
    pub fn components(&self) -> &BTreeMap<Elem, IntHnf> {
        &self.components
    }

    pub fn component(&self, deg: &[Int]) -> Option<&IntHnf> {
        self.components.get(deg)
    }

    /// Set when the grading was supplied by the user and its universality
    /// is assumed rather than computed.
    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn with_trust(mut self, trusted: bool) -> Self {
        self.trusted = trusted;
        self
    }

    /// Ranks of all components, zero ones included, in degree order.
    pub fn rank_profile(&self, bound: usize) -> Result<Vec<usize>> {
        Ok(self
            .gamma
            .elements(bound)?
            .iter()
            .map(|g| self.components.get(g).map_or(0, |l| l.rank()))
            .collect())
    }

    /// Degree of a non-zero homogeneous vector.
    pub fn degree_of(&self, x: &[Int]) -> Option<Elem> {
        if x.iter().all(|c| c.is_zero()) {
            return None;
        }
        self.components
            .iter()
            .find(|(_, l)| l.contains(x))
            .map(|(k, _)| k.clone())
    }

    /// Every failed axiom, each with a witness.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.order.rank();
        for (k, l) in &self.components {
            if k.len() != self.gamma.ngens() || self.gamma.reduce(k) != *k {
                out.push(Violation {
                    axiom: "degree",
                    detail: format!("{} is not a normalized element of the grading group", fmt_elem(k)),
                });
            }
            if l.ambient_rank != n {
                out.push(Violation {
                    axiom: "degree",
                    detail: format!("component {} lives in the wrong ambient rank", fmt_elem(k)),
                });
                return out;
            }
        }
        let total: usize = self.components.values().map(|l| l.rank()).sum();
        let stacked: Vec<Vec<Int>> = self.components.values().flat_map(|l| l.vectors()).collect();
        if total != n {
            out.push(Violation {
                axiom: "direct sum",
                detail: format!("component ranks sum to {total}, order has rank {n}"),
            });
        } else {
            let d = det(&IntMatrix::from_columns(n, &stacked));
            if d.clone() * d.clone() != Int::one() {
                out.push(Violation {
                    axiom: "direct sum",
                    detail: format!("stacked component bases have determinant {d}"),
                });
            }
        }
        let zero = self.gamma.zero();
        if !self.components.get(&zero).is_some_and(|l| l.contains(self.order.one())) {
            out.push(Violation {
                axiom: "identity",
                detail: format!("one is not in the component of degree {}", fmt_elem(&zero)),
            });
        }
        let comps: Vec<(&Elem, Vec<Vec<Int>>)> = self.components.iter().map(|(k, l)| (k, l.vectors())).collect();
        'outer: for (i, (g, bg)) in comps.iter().enumerate() {
            for (h, bh) in &comps[i..] {
                let gh = self.gamma.add(g, h);
                let target = self.components.get(&gh);
                for x in bg {
                    for y in bh {
                        let p = self.order.mul(x, y);
                        let ok = match target {
                            Some(l) => l.contains(&p),
                            None => p.iter().all(|c| c.is_zero()),
                        };
                        if !ok {
                            out.push(Violation {
                                axiom: "multiplicativity",
                                detail: format!(
                                    "product of {} (degree {}) and {} (degree {}) is not in degree {}",
                                    fmt_elem(x),
                                    fmt_elem(g),
                                    fmt_elem(y),
                                    fmt_elem(h),
                                    fmt_elem(&gh)
                                ),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        let support: Vec<Elem> = self.components.keys().cloned().collect();
        let s = subgroup_from_generators(&self.gamma, &support);
        if s.order() != self.gamma.order() {
            out.push(Violation {
                axiom: "support",
                detail: format!("support generates a subgroup of order {} in a group of order {}", s.order(), self.gamma.order()),
            });
        }
        out
    }

    /// Restricts `gamma` to the subgroup generated by the support.
    pub fn normalize_support(self) -> Self {
        let support: Vec<Elem> = self.components.keys().cloned().collect();
        let s = subgroup_from_generators(&self.gamma, &support);
        if s.order() == self.gamma.order() {
            return self;
        }
        let components = self
            .components
            .into_iter()
            .map(|(k, l)| (s.to_abstract(&k).expect("degree in support"), l))
            .collect();
        Grading {
            order: self.order,
            gamma: s.group().clone(),
            components,
            trusted: self.trusted,
        }
    }

    /// `S_ε = Σ_{f(δ) = ε} R_δ`, with the support re-normalized.
    pub fn pushforward(&self, f: &AbHom) -> Result<Grading> {
        if f.src() != &self.gamma {
            return Err(Error::input("pushforward map does not start at the grading group"));
        }
        let mut merged: BTreeMap<Elem, Vec<Vec<Int>>> = BTreeMap::new();
        for (k, l) in &self.components {
            merged.entry(f.apply(k)).or_default().extend(l.vectors());
        }
        Ok(Self::assemble(&self.order, f.tgt(), merged)
            .with_trust(self.trusted)
            .normalize_support())
    }
}

/// `Γ(A[G]) = Γ(A) × G` with `R_{(γ,g)} = A_γ·g`.
pub fn universal_groupring(base: &Grading, group: &FinAbGroup, limits: &Limits) -> Result<Grading> {
    let order = group_ring_order(base.order(), group, limits.max_enum)?;
    let dp = DirectProduct::new(&[base.gamma().clone(), group.clone()]);
    let nb = base.order().rank();
    let mut merged: BTreeMap<Elem, Vec<Vec<Int>>> = BTreeMap::new();
    for (gi, g) in group.elements(limits.max_enum)?.iter().enumerate() {
        for (k, l) in base.components() {
            let vs = l
                .vectors()
                .into_iter()
                .map(|v| {
                    let mut w = order.zero();
                    w[gi * nb..(gi + 1) * nb].clone_from_slice(&v);
                    w
                })
                .collect();
            merged.insert(dp.combine(&[k.clone(), g.clone()]), vs);
        }
    }
    Ok(Grading::assemble(&order, &dp.group, merged).with_trust(base.is_trusted()))
}

/// Product grading: the degree-one components are shared, each other
/// component of a factor sits alone in its own degree.
pub fn universal_product(parts: &[Grading]) -> Result<Grading> {
    let orders: Vec<&Order> = parts.iter().map(|p| p.order()).collect();
    let order = product_order(&orders)?;
    let n = order.rank();
    let mut incls = Vec::new();
    let mut off = 0;
    for p in parts {
        let k = p.order().rank();
        let mut m = IntMatrix::zeros(n, k);
        for i in 0..k {
            m[(off + i, i)] = Int::one();
        }
        incls.push(m);
        off += k;
    }
    let pieces: Vec<(&Grading, &IntMatrix)> = parts.iter().zip(&incls).collect();
    Ok(stitch(&order, &pieces))
}

/// Product grading of `order` from gradings of factors embedded by the
/// given inclusions.
pub fn stitch(order: &Order, parts: &[(&Grading, &IntMatrix)]) -> Grading {
    let gammas: Vec<FinAbGroup> = parts.iter().map(|(g, _)| g.gamma().clone()).collect();
    let dp = DirectProduct::new(&gammas);
    let mut merged: BTreeMap<Elem, Vec<Vec<Int>>> = BTreeMap::new();
    for (i, (g, incl)) in parts.iter().enumerate() {
        for (k, l) in g.components() {
            let vs: Vec<Vec<Int>> = l.vectors().iter().map(|v| incl.mul_vec(v)).collect();
            merged.entry(dp.embed(i, k)).or_default().extend(vs);
        }
    }
    let trusted = parts.iter().any(|(g, _)| g.is_trusted());
    Grading::assemble(order, &dp.group, merged)
        .with_trust(trusted)
        .normalize_support()
}

/// Universal grading of a connected reduced order spanned by its
/// autopotents: merge generators until distinct ones pair trivially.
pub fn universal_autopotent(order: &Order, roots: &RootsOfUnity) -> Result<Grading> {
    let span = autopotent_span_connected(order, roots);
    if !span.is_full {
        return Err(Error::unsupported("not autopotent-generated; supply --grading-file"));
    }
    let pairing = TracePairing::new(order, roots);
    let n = order.rank();
    let mut a = HnfBasis::span(n, &[order.one().to_vec()]);
    let mut s: Vec<Vec<Int>> = span.generators.clone();
    'search: loop {
        let basis = a.vectors();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let mut nonzero = false;
                'pairs: for x in &basis {
                    let xs = order.mul(x, &s[i]);
                    for y in &basis {
                        if !pairing.pair_rat(&xs, &order.mul(y, &s[j]))?.is_zero() {
                            nonzero = true;
                            break 'pairs;
                        }
                    }
                }
                if nonzero {
                    let inv = roots.inverse(&s[i]).expect("generators are roots of unity");
                    let mut gens = basis.clone();
                    gens.push(order.mul(&inv, &s[j]));
                    a = order.ring_closure(&gens);
                    s.remove(j);
                    continue 'search;
                }
            }
        }
        break;
    }
    let mu_group = roots.group();
    let in_a: Vec<Elem> = roots
        .elements()
        .iter()
        .filter(|z| a.contains(z))
        .map(|z| roots.find(z).expect("element of the table"))
        .collect();
    let mut rels: Vec<Vec<Int>> = in_a;
    for (i, d) in mu_group.factors().iter().enumerate() {
        let mut r = vec![Int::zero(); mu_group.ngens()];
        r[i] = d.clone();
        rels.push(r);
    }
    let quotient = from_presentation(&IntMatrix::from_columns(mu_group.ngens(), &rels))?;
    let mut merged: BTreeMap<Elem, Vec<Vec<Int>>> = BTreeMap::new();
    let basis = a.vectors();
    for si in &s {
        let deg = quotient.normalize(&roots.find(si).expect("root of unity"));
        merged
            .entry(deg)
            .or_default()
            .extend(basis.iter().map(|x| order.mul(x, si)));
    }
    let g = Grading::assemble(order, &quotient.group, merged);
    if let Some(v) = g.check().into_iter().next() {
        return Err(Error::invariant(format!("merged autopotent grading fails {v}")));
    }
    Ok(g.normalize_support())
}

/// The universal grading, by construction where possible. A `trusted`
/// grading is checked against the axioms and flagged, never proven
/// universal.
pub fn universal_for(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<Grading> {
    b.order.require_reduced()?;
    if let Some(t) = trusted {
        if t.order() != &b.order {
            return Err(Error::input("grading belongs to a different order"));
        }
        if let Some(v) = t.check().into_iter().next() {
            return Err(Error::input(format!("not a grading: {v}")));
        }
        return Ok(t.clone().normalize_support().with_trust(true));
    }
    match &b.prov {
        Provenance::Int => Ok(Grading::trivial(&b.order)),
        Provenance::GroupRing { base, group } if is_connected(base, limits)? => {
            let g = universal_for(base, None, limits)?;
            universal_groupring(&g, group, limits)
        }
        Provenance::Product(parts) => {
            let gs: Vec<Grading> = parts
                .iter()
                .map(|p| universal_for(p, None, limits))
                .collect::<Result<_>>()?;
            universal_product(&gs)
        }
        _ => {
            let comps = components(b, limits)?;
            if comps.len() == 1 {
                let roots = mu(b, limits, false)?;
                return universal_autopotent(&b.order, &roots);
            }
            let gs = crate::par_map(&comps, limits, |c| universal_for(&c.built, None, limits))?;
            let pieces: Vec<(&Grading, &IntMatrix)> = gs.iter().zip(comps.iter().map(|c| &c.incl)).collect();
            Ok(stitch(&b.order, &pieces))
        }
    }
}

/// Invariants compared when two orders are expected to be isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub rank: usize,
    pub discriminant: Int,
    pub mu_order: usize,
    pub gamma: Vec<Int>,
}

pub fn fingerprint(b: &Built, trusted: Option<&Grading>, limits: &Limits) -> Result<Fingerprint> {
    let g = universal_for(b, trusted, limits)?;
    Ok(Fingerprint {
        rank: b.order.rank(),
        discriminant: b.order.discriminant(),
        mu_order: mu(b, limits, false)?.len(),
        gamma: g.gamma().factors().to_vec(),
    })
}

/// `d: μ(R) → Γ(R)` sending each root of unity to its degree.
#[derive(Clone, Debug)]
pub struct DegreeMap {
    pub mu: RootsOfUnity,
    pub grading: Grading,
    pub d: AbHom,
}

impl DegreeMap {
    pub fn morph_module(&self) -> MorphModule {
        MorphModule::new(self.d.clone())
    }
}

pub fn degree_map(g: &Grading, roots: &RootsOfUnity) -> Result<DegreeMap> {
    let not_homogeneous = |z: &[Int]| Error::input(format!("root of unity {} is not homogeneous", fmt_elem(z)));
    let imgs: Vec<Elem> = roots
        .generator_images()
        .iter()
        .map(|z| g.degree_of(z).ok_or_else(|| not_homogeneous(z)))
        .collect::<Result<_>>()?;
    let d = AbHom::from_images(roots.group(), g.gamma(), &imgs)
        .map_err(|_| Error::input("degrees of the roots of unity are not a homomorphism"))?;
    for z in roots.elements() {
        let deg = d.apply(&roots.find(z).expect("table element"));
        if !g.component(&deg).is_some_and(|l| l.contains(z)) {
            return Err(not_homogeneous(z));
        }
    }
    Ok(DegreeMap {
        mu: roots.clone(),
        grading: g.clone(),
        d,
    })
}
