use pact_core::algebra::Algebra;
use pact_core::corpus::{gf2_algebras, non_associative_actions, restricted_actions, triangular_actions, Family};
use pact_core::crossed::{associativity_via_condition_x, CrossedProduct};
use pact_core::envelope::{
    ambient, build_enveloping, compare_envelopings, embed_crossed, has_enveloping, morita_context, verify_enveloping,
    EnvelopingAction,
};
use pact_core::field::Field;
use pact_core::group::{Group, GroupSubset};
use pact_core::linalg::{add, enumerate_subspaces, LinearMap, Subspace};
use pact_core::multiplier::MultiplierAlgebra;
use pact_core::paction::{counterexample_action, restrict_global, GlobalAction, LocalActionSlice};
use pact_core::preps::elementary::{check_idempotent_products, elementary_rep, iso_bis, round_trip};
use pact_core::preps::semigroup::{agrees_with_pair_model, kpar_iso, ExelSemigroup, PresentedMonoid};
use pact_core::preps::InjectivityVerdict;

fn q() -> Field {
    Field::Rationals
}

fn gf2() -> Field {
    Field::prime(2).unwrap()
}

fn set(xs: &[usize]) -> GroupSubset {
    xs.iter().copied().collect()
}

#[test]
fn counterexample_has_associative_powers_only() {
    let pa = counterexample_action(q());
    assert!(pa.verify().is_valid());
    let cp = CrossedProduct::build(&pa).unwrap();
    assert!(!cp.is_associative());
    let a = pa.base();
    let t = a.basis(a.label_index("t").unwrap());
    let u = a.basis(a.label_index("u").unwrap());
    let x = add(&cp.element(0, &t).unwrap(), &cp.element(1, &u).unwrap());
    let xx = cp.mul(&x, &x);
    assert_eq!(cp.mul(&xx, &x), cp.zero());
    assert_eq!(cp.mul(&x, &xx), cp.element(1, &u).unwrap());
    assert!(!has_enveloping(&pa).unwrap());
}

#[test]
fn ideals_of_upper_two_are_lr_associative() {
    let t2 = Algebra::upper(gf2(), 2);
    let mut ideals = 0;
    for space in enumerate_subspaces(gf2(), 3).unwrap() {
        if let Ok(ideal) = t2.ideal(space) {
            ideals += 1;
            let m = MultiplierAlgebra::new(&t2.ideal_algebra(&ideal)).unwrap();
            assert!(m.is_lr_associative());
        }
    }
    assert_eq!(ideals, t2.all_ideals().unwrap().len());

    let t2q = Algebra::upper(q(), 2);
    let e = |l: &str| t2q.basis(t2q.label_index(l).unwrap());
    let chain = [
        vec![],
        vec![e("e12")],
        vec![e("e11"), e("e12")],
        vec![e("e12"), e("e22")],
        vec![e("e11"), e("e12"), e("e22")],
    ];
    for gens in chain {
        let ideal = t2q.ideal(Subspace::span(q(), 3, &gens)).unwrap();
        let m = MultiplierAlgebra::new(&t2q.ideal_algebra(&ideal)).unwrap();
        assert!(m.is_lr_associative(), "{gens:?}");
    }
}

#[test]
fn upper_three_slice_fails_condition_x() {
    let slice = LocalActionSlice::upper_triangular_shift(q());
    let w = slice.condition_x_check().unwrap();
    assert_eq!(slice.base().format(&w.rhs), "e13");
    assert!(w.lhs.iter().all(|c| c.is_zero()));
}

#[test]
fn semiprime_corpus_is_associative() {
    let cases = restricted_actions(7, 40).unwrap();
    assert_eq!(cases.len(), 40);
    for case in &cases {
        let cp = CrossedProduct::build(&case.action).unwrap();
        assert!(cp.is_associative(), "{}", case.name);
        assert!(associativity_via_condition_x(&case.action).unwrap().is_none(), "{}", case.name);
    }
    assert!(cases.iter().any(|c| c.family == Family::Matrix));
    assert!(cases.iter().any(|c| c.family == Family::GroupAlgebra));
}

#[test]
fn condition_x_tracks_brute_force_on_degenerate_families() {
    let mut failures = 0;
    for case in triangular_actions(3, 6).unwrap().into_iter().chain(non_associative_actions(3, 6).unwrap()) {
        let brute = CrossedProduct::build(&case.action).unwrap().is_associative();
        let local = associativity_via_condition_x(&case.action).unwrap().is_none();
        assert_eq!(brute, local, "{}", case.name);
        failures += usize::from(!brute);
    }
    assert!(failures >= 6);
}

#[test]
fn semiprime_predicates_agree_on_gf2_algebras() {
    for (name, alg) in gf2_algebras(11, 8).unwrap() {
        assert!(alg.dim() <= 4);
        let p = alg.semiprime_predicates().unwrap();
        assert!(p.agree(), "{name}: {:?}", p.values());
        assert_eq!(p.no_nilpotent_ideal, alg.is_semiprime().unwrap(), "{name}");
    }
}

#[test]
fn multiplier_dimensions() {
    for alg in [Algebra::matrix(q(), 2), Algebra::product_field(q(), 4), Algebra::upper(q(), 3)] {
        let m = MultiplierAlgebra::new(&alg).unwrap();
        assert_eq!(m.dim(), alg.dim());
        m.phi_image_ideal().unwrap();
    }
    let zero = Algebra::zero_product(q(), 2, vec!["u".into(), "v".into()]).unwrap();
    let m = MultiplierAlgebra::new(&zero).unwrap();
    assert_eq!(m.dim(), 8);
    assert!(!m.is_lr_associative());
    m.phi_image_ideal().unwrap();
}

fn swap_k3() -> GlobalAction {
    let k3 = Algebra::product_field(q(), 3);
    let swap = LinearMap::new(q(), 3, 3, vec![k3.basis(1), k3.basis(0), k3.basis(2)]).unwrap();
    GlobalAction::new(Group::cyclic(2).unwrap(), k3, vec![LinearMap::identity(q(), 3), swap]).unwrap()
}

#[test]
fn enveloping_of_k3_restriction() {
    let beta = swap_k3();
    let k3 = beta.algebra().clone();
    let ideal = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).unwrap();
    let r = restrict_global(&beta, &ideal).unwrap();
    assert!(r.admissible);
    let env = build_enveloping(&r.action).unwrap();
    assert_eq!(ambient(&env).dim(), 3);
    assert!(verify_enveloping(&r.action, &env).ok());
    let original = EnvelopingAction { global: beta, embedding: r.inclusion.clone() };
    assert!(compare_envelopings(&r.action, &env, &original).unwrap().is_bijective());
    let emb = embed_crossed(&r.action, &env).unwrap();
    assert_eq!((emb.map.rank(), emb.target.dim()), (3, 6));
    let mc = morita_context(&r.action, &env).unwrap();
    assert!(mc.report.ok());
    assert_eq!((mc.report.mn_dim, mc.report.nm_dim), (3, 6));
}

#[test]
fn morita_on_corpus_sample() {
    for case in restricted_actions(5, 12).unwrap() {
        let env = build_enveloping(&case.action).unwrap();
        let mc = morita_context(&case.action, &env).unwrap();
        assert!(mc.report.ok(), "{}: {:?}", case.name, mc.report);
        assert_eq!(mc.report.mn_dim, mc.report.small_dim);
        assert_eq!(mc.report.nm_dim, mc.report.large_dim);
    }
}

#[test]
fn kpar_dimensions_and_oracle() {
    assert_eq!(ExelSemigroup::new(&Group::cyclic(2).unwrap()).unwrap().len(), 3);
    let groups = [Group::cyclic(2).unwrap(), Group::cyclic(3).unwrap(), Group::cyclic(4).unwrap(), Group::klein()];
    for (g, dim) in groups.iter().zip([3, 8, 20, 20]) {
        let iso = kpar_iso(g, q()).unwrap();
        assert_eq!(iso.dim(), dim);
        let oracle = PresentedMonoid::enumerate(g, 10_000).unwrap();
        assert_eq!(oracle.len(), dim);
        assert!(agrees_with_pair_model(&iso.semigroup, &oracle));
    }
}

#[test]
fn matrix_algebras_as_crossed_products() {
    let cases = [
        (Group::cyclic(3).unwrap(), set(&[0, 1]), 2),
        (Group::cyclic(4).unwrap(), set(&[0, 1, 2]), 3),
        (Group::klein(), set(&[0, 1, 2]), 3),
    ];
    for (g, a, n) in cases {
        let erd = elementary_rep(&g, &a, q()).unwrap();
        assert_eq!(erd.target_name(), format!("M_{n}(K)"));
        let iso = iso_bis(&erd).unwrap();
        assert_eq!(iso.injectivity, InjectivityVerdict::Injective);
        assert_eq!(iso.phi.crossed.dim(), n * n);
        for i in 0..n {
            for j in 0..n {
                erd.transitivity_witness(i, j).unwrap();
            }
        }
    }
}

#[test]
fn correspondence_round_trips_and_idempotent_products() {
    let mut groups: Vec<Group> = (1..=6).map(|n| Group::cyclic(n).unwrap()).collect();
    groups.push(Group::klein());
    groups.push(Group::symmetric(3).unwrap());
    for g in &groups {
        let e = g.identity();
        for mask in 0u32..1 << g.order() {
            if mask >> e & 1 == 0 {
                continue;
            }
            let a: GroupSubset = g.elements().filter(|&x| mask >> x & 1 == 1).collect();
            let rt = round_trip(g, &a, q()).unwrap();
            if g.order() <= 4 {
                let products = check_idempotent_products(&rt.original.induced().action).unwrap();
                assert!(products.ok());
                assert_eq!(products.subsets_checked, 1 << g.order());
            }
        }
    }
}
