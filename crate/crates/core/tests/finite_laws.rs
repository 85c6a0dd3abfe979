//! Finite-model laws: grid lattice operations, comonotonicity, and the
//! t-normed integral against its threshold definition.

use comaxlab::finite::{
    comonotone_finite, enumerate_capacities, is_comonotonically_maxitive, is_monotone, join_finite, meet_finite,
    tnormed_integral, GridChain, GridDomain, GridFunction, TnormedIntegral,
};
use comaxlab::rational::{rat, Rational};
use comaxlab::tnorm::TNorm;
use proptest::prelude::*;

fn grid_function(n: usize) -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(0i64..=4, n).prop_map(|v| GridFunction::new(v.into_iter().map(|k| rat(k, 4)).collect()).unwrap())
}

/// `max over t in [0,1]` of `t * mu({f >= t})`, scanning every level of
/// a fine grid that contains all values of `f`.
fn integral_by_levels(mu: &dyn Fn(usize) -> Rational, norm: TNorm, f: &GridFunction) -> Rational {
    (0..=8)
        .map(|k| {
            let t = rat(k, 8);
            let mask = (0..f.len()).filter(|&i| *f.at(i) >= t).fold(0, |m, i| m | (1 << i));
            norm.apply(&t, &mu(mask)).unwrap()
        })
        .max()
        .unwrap()
}

proptest! {
    #[test]
    fn grid_lattice(f in grid_function(3), g in grid_function(3)) {
        let j = join_finite(&f, &g).unwrap();
        let m = meet_finite(&f, &g).unwrap();
        prop_assert!(f.leq(&j).unwrap() && g.leq(&j).unwrap());
        prop_assert!(m.leq(&f).unwrap() && m.leq(&g).unwrap());
        prop_assert_eq!(join_finite(&f, &m).unwrap(), f.clone());
        prop_assert_eq!(comonotone_finite(&f, &g).unwrap(), comonotone_finite(&g, &f).unwrap());
        if comonotone_finite(&f, &g).unwrap() {
            prop_assert!(comonotone_finite(&f, &j).unwrap());
            prop_assert!(comonotone_finite(&m, &j).unwrap());
        }
    }

    #[test]
    fn integral_matches_level_scan(f in grid_function(2), cap_index in 0usize..9, norm_index in 0usize..3) {
        let chain = GridChain::uniform(2);
        let caps = enumerate_capacities(2, chain.values()).unwrap();
        let cap = &caps[cap_index % caps.len()];
        let norm = TNorm::ALL[norm_index];
        let expected = integral_by_levels(&|m| cap.get(m).clone(), norm, &f);
        prop_assert_eq!(tnormed_integral(cap, norm, &f).unwrap(), expected);
    }
}

#[test]
fn product_integrals_are_comonotonically_maxitive_and_monotone() {
    let chain = GridChain::uniform(4);
    for cap in enumerate_capacities(2, &[rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)]).unwrap() {
        for norm in TNorm::ALL {
            let integral = TnormedIntegral { capacity: cap.clone(), norm };
            assert!(is_comonotonically_maxitive(&integral, &chain, 2).unwrap().holds, "{norm} {cap:?}");
            assert!(is_monotone(&integral, &chain, 2).unwrap().holds, "{norm} {cap:?}");
        }
    }
}

#[test]
fn domain_pairs_are_exactly_the_comonotone_ones() {
    let chain = GridChain::uniform(2);
    let domain = GridDomain::new(&chain, 2).unwrap();
    let fns = domain.functions();
    let mut expected = 0;
    for i in 0..fns.len() {
        for j in (i + 1)..fns.len() {
            let (f, g) = (&fns[i], &fns[j]);
            let by_definition = (0..2).all(|a| {
                (0..2).all(|b| (f.at(a) - f.at(b)) * (g.at(a) - g.at(b)) >= rat(0, 1))
            });
            expected += by_definition as usize;
        }
    }
    assert_eq!(domain.comonotone_pairs().len(), expected);
}
