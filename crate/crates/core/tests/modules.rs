use num_traits::ToPrimitive;
use proptest::prelude::*;
use stark_core::abgroups::{hom_group, AbHom, FinAbGroup};
use stark_core::morphmods::{
    dec_from_id0, id0_enumerate, id0_from_dec, max_iso_dec, q_mul, u_star_invert, MorphModule, QElem,
};
use stark_core::Int;

const BOUND: usize = 4096;

fn group() -> impl Strategy<Value = FinAbGroup> {
    proptest::collection::vec(1i64..=12, 1..=2).prop_map(|o| {
        FinAbGroup::from_orders(&o.into_iter().map(Int::from).collect::<Vec<_>>())
            .unwrap()
            .group
    })
}

fn hom(src: &FinAbGroup, tgt: &FinAbGroup, seed: &[i64]) -> AbHom {
    let h = hom_group(src, tgt);
    let g = h.group();
    let raw: Vec<Int> = (0..g.ngens()).map(|i| Int::from(seed[i % seed.len()] * (i as i64 + 1))).collect();
    h.hom_of(&g.reduce(&raw))
}

fn seed() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..1000, 1..=4)
}

fn size(g: &FinAbGroup) -> usize {
    g.order().to_usize().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn normalization_ignores_factor_order(mut o in proptest::collection::vec(1i64..=30, 1..=4)) {
        let a = FinAbGroup::from_orders(&o.iter().map(|&x| Int::from(x)).collect::<Vec<_>>()).unwrap().group;
        o.reverse();
        let b = FinAbGroup::from_orders(&o.iter().map(|&x| Int::from(x)).collect::<Vec<_>>()).unwrap().group;
        prop_assert_eq!(a.order(), Int::from(o.iter().product::<i64>()));
        prop_assert_eq!(a.factors(), b.factors());
    }

    #[test]
    fn kernel_and_image_orders(a in group(), b in group(), s in seed()) {
        let f = hom(&a, &b, &s);
        prop_assert_eq!(f.kernel().order() * f.image().order(), a.order());
        for x in a.elements(BOUND).unwrap() {
            prop_assert!(f.image().contains(&f.apply(&x)));
        }
    }

    #[test]
    fn composition_is_associative(a in group(), b in group(), c in group(), s in seed()) {
        let f = hom(&a, &b, &s);
        let g = hom(&b, &c, &s);
        let h = hom(&c, &a, &s);
        prop_assert_eq!(h.compose(&g).compose(&f), h.compose(&g.compose(&f)));
        prop_assert_eq!(f.compose(&AbHom::identity(&a)), f.clone());
        for x in a.elements(BOUND).unwrap() {
            prop_assert_eq!(g.compose(&f).apply(&x), g.apply(&f.apply(&x)));
        }
    }

    #[test]
    fn q_is_an_associative_ring_action(a in group(), b in group(), s1 in seed(), s2 in seed(), s3 in seed(), m in -3i64..=3, n in -3i64..=3) {
        let d = MorphModule::new(hom(&a, &b, &s1));
        let u = QElem { m: Int::from(m), f: hom(&b, &a, &s2) };
        let v = QElem { m: Int::from(n), f: hom(&b, &a, &s3) };
        let w = QElem { m: Int::from(m + n), f: hom(&b, &a, &s1) };
        let uv = q_mul(&u, &v, &d).unwrap();
        prop_assert_eq!(q_mul(&uv, &w, &d).unwrap(), q_mul(&u, &q_mul(&v, &w, &d).unwrap(), &d).unwrap());
        prop_assert_eq!(q_mul(&QElem::one(&d), &u, &d).unwrap(), u.clone());
        let (qa, qb) = d.q(&uv);
        let (ua, ub) = d.q(&u);
        let (va, vb) = d.q(&v);
        prop_assert_eq!(qa, ua.compose(&va));
        prop_assert_eq!(qb, ub.compose(&vb));
    }

    #[test]
    fn unit_inverses_are_two_sided(a in group(), b in group(), s1 in seed(), s2 in seed()) {
        let d = MorphModule::new(hom(&a, &b, &s1));
        let u = QElem::unipotent(hom(&b, &a, &s2));
        let one = QElem::one(&d);
        match u_star_invert(&u, &d).unwrap() {
            Some(x) => {
                prop_assert_eq!(q_mul(&u, &x.inverse, &d).unwrap(), one.clone());
                prop_assert_eq!(q_mul(&x.inverse, &u, &d).unwrap(), one);
            }
            None => prop_assert!(!d.q(&u).0.is_iso()),
        }
    }

    #[test]
    fn id0_and_decompositions_correspond(a in group(), b in group(), s in seed()) {
        let d = MorphModule::new(hom(&a, &b, &s));
        let id0 = id0_enumerate(&d, BOUND).unwrap();
        let mut best = 0;
        for f in &id0 {
            let dec = dec_from_id0(f, &d).unwrap();
            prop_assert!(dec.is_iso_dec(&d));
            prop_assert_eq!(&id0_from_dec(&dec, &d).unwrap(), f);
            best = best.max(size(dec.src(1).group()));
        }
        let m = max_iso_dec(&d, BOUND).unwrap();
        prop_assert!(m.is_iso_dec(&d));
        prop_assert_eq!(size(m.src(1).group()), best);
        prop_assert!(d.is_id0(&id0_from_dec(&m, &d).unwrap()));
    }
}
