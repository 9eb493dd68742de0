//! Property tests across modules. Random structured objects come from a
//! proptest-chosen seed fed to the generators in `common`.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_cantor::cantor_model::{validate_ifs, Address, Point, Word};
use thompson_cantor::exact_num::{factorize, in_subgroup, relation_lattice, ScaleGroup};
use thompson_cantor::format::*;
use thompson_cantor::nv_patterns::NVElement;
use thompson_cantor::pl_action::{germ_compose, germ_maximal, PLMap, StandardGerm};
use thompson_cantor::tree_calculus::{GroupElement, Variant};
use thompson_cantor::{Ifs, IfsF64, Rational, ScaleElement};

use common::*;

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn variant_of(i: u8) -> Variant {
    [Variant::F, Variant::T, Variant::V, Variant::Vpm][i as usize % 4]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (1i64..2000, 1i64..2000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn address(arity: u8) -> impl Strategy<Value = Address> {
    (
        proptest::collection::vec(0..arity, 0..5),
        proptest::collection::vec(0..arity, 1..4),
    )
        .prop_map(|(pre, per)| Address::new(Word(pre), Word(per)).unwrap())
}

/// Random valid IFS: increasing offsets with gaps between images.
fn ifs_strategy() -> impl Strategy<Value = Ifs> {
    proptest::collection::vec((1i64..5, 1i64..4), 2..4).prop_map(|parts| {
        // each map takes `len` units, each gap takes `gap` units, out of the total
        let total: i64 = parts.iter().map(|(l, g)| l + g).sum::<i64>() - parts.last().unwrap().1;
        let mut offset = 0;
        let pieces = parts
            .iter()
            .map(|&(len, gap)| {
                let piece = (Rational::new(len.into(), total.into()), Rational::new(offset.into(), total.into()));
                offset += len + gap;
                piece
            })
            .collect();
        validate_ifs(pieces).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_reconstructs(q in small_rational()) {
        prop_assert_eq!(factorize(&q).unwrap().value(), q);
    }

    #[test]
    fn relations_evaluate_to_one(a in 1u32..4, b in 1u32..4, base in 2i64..7) {
        let r = |e: u32| Rational::new(1.into(), num_bigint::BigInt::from(base).pow(e));
        let values = [r(a), r(b)];
        for k in relation_lattice(&values).unwrap() {
            let v = values.iter().zip(&k).fold(Rational::from_integer(1.into()), |acc, (x, &e)| {
                acc * num_traits::Pow::pow(x.clone(), e as i32)
            });
            prop_assert_eq!(v, Rational::from_integer(1.into()));
        }
        let witness = in_subgroup(&values, &num_traits::Pow::pow(r(1), (a * b) as i32)).unwrap();
        prop_assert!(witness.is_some());
    }

    #[test]
    fn canonical_scale_keeps_value(k0 in -4i64..5, k1 in -4i64..5) {
        let g = ScaleGroup::new(&[Rational::new(1.into(), 4.into()), Rational::new(1.into(), 2.into())]).unwrap();
        let k = ScaleElement(vec![k0, k1]);
        let c = g.canonical(&k);
        prop_assert_eq!(g.value(&c).unwrap(), g.value(&k).unwrap());
        prop_assert_eq!(g.canonical(&c), c);
    }

    #[test]
    fn addresses_land_in_their_intervals(ifs in ifs_strategy(), seed in any::<u64>()) {
        let mut r = seeded(seed);
        let a = random_address(&mut r, ifs.arity());
        let x = ifs.evaluate_address(&a);
        for n in 0..6 {
            prop_assert!(ifs.standard_interval(&a.prefix(n)).contains(&x));
        }
    }

    #[test]
    fn gap_count_and_sparseness_range(ifs in ifs_strategy(), g in 1usize..4) {
        let n = ifs.arity();
        let expected: usize = (0..g).map(|i| (n - 1) * n.pow(i as u32)).sum();
        prop_assert_eq!(ifs.gaps_up_to(g).len(), expected);
        let sigma = ifs.sparseness_bound(g).unwrap();
        prop_assert!(sigma > Rational::from_integer(0.into()) && sigma < Rational::from_integer(1.into()));
        let approx: IfsF64 = ifs.to_scalar();
        let s = approx.sparseness_bound(g).unwrap();
        prop_assert!((s - thompson_cantor::Scalar::to_f64(&sigma)).abs() < 1e-9);
    }

    #[test]
    fn element_laws(seed in any::<u64>(), v in 0u8..4, arity in 2usize..4) {
        let mut r = seeded(seed);
        let variant = variant_of(v);
        let a = random_element(&mut r, variant, arity, 6);
        let b = random_element(&mut r, variant, arity, 6);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.inverse().inverse(), a.clone());
        prop_assert_eq!(a.compose(&b).unwrap().inverse(), b.inverse().compose(&a.inverse()).unwrap());
        prop_assert!(a.classify() <= variant);
        prop_assert!(a.symbol().is_reduced());
        prop_assert_eq!(a.symbol().reduce(), a.symbol().clone());
    }

    #[test]
    fn expansion_does_not_change_the_element(seed in any::<u64>(), v in 0u8..4) {
        let mut r = seeded(seed);
        let a = random_element(&mut r, variant_of(v), 2, 5);
        let leaf = (seed as usize) % a.symbol().leaf_count();
        let expanded = a.symbol().expand(leaf).unwrap();
        prop_assert!(!expanded.is_reduced());
        prop_assert_eq!(&expanded.reduce(), a.symbol());
        for p in endpoint_addresses(2, 3) {
            prop_assert_eq!(expanded.apply(&p).unwrap(), a.apply(&p).unwrap());
        }
    }

    #[test]
    fn abelianization_is_additive(seed in any::<u64>()) {
        let mut r = seeded(seed);
        let a = random_element(&mut r, Variant::F, 2, 6);
        let b = random_element(&mut r, Variant::F, 2, 6);
        let (x, y) = (a.abelianization_f().unwrap(), b.abelianization_f().unwrap());
        prop_assert_eq!(a.compose(&b).unwrap().abelianization_f().unwrap(), (x.0 + y.0, x.1 + y.1));
    }

    #[test]
    fn pl_maps_agree_with_symbols(seed in any::<u64>(), v in 0u8..4, lambda in 3i64..6) {
        let mut r = seeded(seed);
        let variant = variant_of(v);
        let ifs = Ifs::central(&Rational::from_integer(lambda.into())).unwrap();
        let a = random_element(&mut r, variant, 2, 5);
        let b = random_element(&mut r, variant, 2, 5);
        let fa = PLMap::from_symbol(&a, &ifs).unwrap();
        let fb = PLMap::from_symbol(&b, &ifs).unwrap();
        let fab = fa.compose(&fb).unwrap();
        prop_assert_eq!(fab.to_symbol().symbol().clone(), a.compose(&b).unwrap().symbol().clone());
        prop_assert!(fa.compose(&fa.inverse()).unwrap().is_identity());
        // numeric evaluation commutes with the symbolic action
        for _ in 0..4 {
            let p = random_address(&mut r, 2);
            let Point::Periodic(image) = a.apply(&Point::Periodic(p.clone())).unwrap() else { unreachable!() };
            prop_assert_eq!(fa.eval(&ifs.evaluate_address(&p)).unwrap(), ifs.evaluate_address(&image));
        }
    }

    #[test]
    fn line_maps_are_increasing(seed in any::<u64>()) {
        let mut r = seeded(seed);
        let ifs = Ifs::central(&Rational::from_integer(3.into())).unwrap();
        let f = PLMap::from_symbol(&random_element(&mut r, Variant::F, 2, 6), &ifs).unwrap();
        let mut xs: Vec<Rational> = ifs.endpoints(4);
        xs.sort();
        let ys: Vec<Rational> = xs.iter().map(|x| f.eval(x).unwrap()).collect();
        prop_assert!(ys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn germ_composition_and_extension(i in address(3), j in address(3), k in address(3), n in 0usize..4) {
        let (wi, wj, wk) = (i.prefix(n), j.prefix(n + 1), k.prefix(n));
        let g1 = StandardGerm::new(wi.clone(), wj.clone());
        let g2 = StandardGerm::new(wj, wk);
        let g = germ_compose(&g1, &g2).unwrap();
        let p = Point::Periodic(i.strip_prefix(&wi).unwrap().prepend(&wi));
        let two_step = g1.apply(&p).unwrap().and_then(|q| g2.apply(&q).unwrap());
        prop_assert_eq!(g.apply(&p).unwrap(), two_step);
        let m = germ_maximal(&g);
        prop_assert!(g.is_restriction_of(&m));
        prop_assert_eq!(m.apply(&p).unwrap(), g.apply(&p).unwrap());
    }

    #[test]
    fn nv_laws(seed in any::<u64>(), dim in 1usize..4, sym in any::<bool>()) {
        let mut r = seeded(seed);
        let f = random_nv(&mut r, dim, 5, sym);
        let g = random_nv(&mut r, dim, 5, sym);
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity_element());
        let canonical = f.reduce();
        prop_assert_eq!(canonical.reduce(), canonical.clone());
        prop_assert_eq!(f.compose(&g).unwrap().inverse(), g.inverse().compose(&f.inverse()).unwrap());
        let p = random_dust(&mut r, dim);
        prop_assert_eq!(canonical.apply(&p).unwrap(), f.apply(&p).unwrap());
        prop_assert_eq!(f.inverse().apply(&f.apply(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn structured_text_round_trips(seed in any::<u64>(), v in 0u8..4, ifs in ifs_strategy()) {
        let mut r = seeded(seed);
        let e = random_element(&mut r, variant_of(v), 2 + (seed % 2) as usize, 6);
        let back = element_from_json(&parse_json(&element_to_json(&e).to_string()).unwrap()).unwrap();
        prop_assert_eq!(back, e);

        let ifs_back = ifs_from_json(&parse_json(&ifs_to_json(&ifs).to_string()).unwrap()).unwrap();
        prop_assert_eq!(ifs_back, ifs);

        let f = random_nv(&mut r, 2, 5, true);
        prop_assert_eq!(nv_from_json(&nv_to_json(&f)).unwrap(), f);

        let mg = random_multigerm(&mut r, 3);
        prop_assert_eq!(multigerm_from_json(&multigerm_to_json(&mg)).unwrap(), mg);

        let c3 = Ifs::central(&Rational::from_integer(3.into())).unwrap();
        let pl = PLMap::from_symbol(&random_element(&mut r, variant_of(v), 2, 5), &c3).unwrap();
        prop_assert_eq!(plmap_from_json(&plmap_to_json(&pl), &c3).unwrap(), pl);

        let d = random_dust(&mut r, 3);
        prop_assert_eq!(dust_from_json(&dust_to_json(&d)).unwrap(), d);
    }
}

trait IdentityCheck {
    fn is_identity_element(&self) -> bool;
}

impl IdentityCheck for NVElement {
    fn is_identity_element(&self) -> bool {
        *self == NVElement::identity(self.dim())
    }
}

#[test]
fn identity_elements_are_neutral() {
    let mut r = rng(1);
    for arity in 2..5 {
        for variant in [Variant::F, Variant::T, Variant::V, Variant::Vpm] {
            let a = random_element(&mut r, variant, arity, 5);
            let id = GroupElement::identity(arity, variant);
            assert_eq!(id.compose(&a).unwrap(), a);
            assert_eq!(a.compose(&id).unwrap(), a);
        }
    }
}
