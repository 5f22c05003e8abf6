//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach stdout; any failure fails the target.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use pact_core::algebra::Algebra;
use pact_core::corpus::{gf2_algebras, non_associative_actions, restricted_actions, triangular_actions, CorpusAction};
use pact_core::crossed::{associativity_via_condition_x, CrossedProduct};
use pact_core::envelope::{
    ambient, build_enveloping, compare_envelopings, embed_crossed, has_enveloping, morita_context, verify_enveloping,
    EnvelopingAction,
};
use pact_core::field::Field;
use pact_core::group::{Group, GroupSubset};
use pact_core::linalg::{add, enumerate_subspaces, LinearMap, Subspace};
use pact_core::multiplier::{Multiplier, MultiplierAlgebra};
use pact_core::paction::{counterexample_action, restrict_global, GlobalAction, LocalActionSlice};
use pact_core::preps::elementary::{check_idempotent_products, elementary_grading, elementary_rep, iso_bis, round_trip};
use pact_core::preps::semigroup::{agrees_with_pair_model, kpar_iso, ExelSemigroup, PresentedMonoid};
use pact_core::preps::InjectivityVerdict;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q() -> Field {
    Field::Rationals
}

fn gf2() -> Field {
    Field::prime(2).unwrap()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn small_groups() -> Vec<Group> {
    let mut groups: Vec<Group> = (1..=6).map(|n| Group::cyclic(n).unwrap()).collect();
    groups.push(Group::klein());
    groups.push(Group::symmetric(3).unwrap());
    groups
}

/// Subsets of `g` containing the identity.
fn pointed_subsets(g: &Group) -> Vec<GroupSubset> {
    let e = g.identity();
    (0u32..1 << g.order())
        .filter(|mask| mask >> e & 1 == 1)
        .map(|mask| g.elements().filter(|&x| mask >> x & 1 == 1).collect())
        .collect()
}

fn counterexample() -> Outcome {
    let pa = counterexample_action(q());
    ensure!(pa.verify().is_valid(), "not a partial action");
    let cp = CrossedProduct::build(&pa).map_err(err)?;
    ensure!(!cp.is_associative(), "crossed product is associative");
    let a = pa.base();
    let t = a.basis(a.label_index("t").unwrap());
    let u = a.basis(a.label_index("u").unwrap());
    let x = add(&cp.element(0, &t).unwrap(), &cp.element(1, &u).unwrap());
    let xx = cp.mul(&x, &x);
    let (left, right) = (cp.mul(&xx, &x), cp.mul(&x, &xx));
    ensure!(left == cp.zero(), "(xx)x = {}", cp.format(&left));
    ensure!(right == cp.element(1, &u).unwrap(), "x(xx) = {}", cp.format(&right));
    Ok(format!("(xx)x = {}, x(xx) = {}", cp.format(&left), cp.format(&right)))
}

fn triangular_dichotomy() -> Outcome {
    let t2 = Algebra::upper(gf2(), 2);
    let mut ideals = 0;
    for space in enumerate_subspaces(gf2(), 3).map_err(err)? {
        if let Ok(ideal) = t2.ideal(space) {
            ideals += 1;
            let m = MultiplierAlgebra::new(&t2.ideal_algebra(&ideal)).map_err(err)?;
            ensure!(m.is_lr_associative(), "ideal {ideals} of T(2, GF(2)) fails");
        }
    }
    let t2q = Algebra::upper(q(), 2);
    let e = |l: &str| t2q.basis(t2q.label_index(l).unwrap());
    let chain = [vec![], vec![e("e12")], vec![e("e11"), e("e12")], vec![e("e12"), e("e22")], vec![e("e11"), e("e12"), e("e22")]];
    for gens in &chain {
        let ideal = t2q.ideal(Subspace::span(q(), 3, gens)).map_err(err)?;
        let m = MultiplierAlgebra::new(&t2q.ideal_algebra(&ideal)).map_err(err)?;
        ensure!(m.is_lr_associative(), "ideal of T(2, Q) spanned by {} generators fails", gens.len());
    }
    let slice = LocalActionSlice::upper_triangular_shift(q());
    let w = slice.condition_x_check().ok_or("T(3) slice satisfies condition (X)")?;
    let rhs = slice.base().format(&w.rhs);
    ensure!(rhs == "e13", "witness product is {rhs}");
    ensure!(w.lhs.iter().all(|c| c.is_zero()), "left side is nonzero");
    Ok(format!("{ideals} ideals over GF(2), {} over Q, T(3) witness {rhs}", chain.len()))
}

fn semiprime_associative(corpus: &[CorpusAction]) -> Outcome {
    ensure!(corpus.len() >= 100, "only {} restricted actions", corpus.len());
    for case in corpus {
        let cp = CrossedProduct::build(&case.action).map_err(err)?;
        ensure!(cp.is_associative(), "{} is not associative", case.name);
    }
    let mut compared = 0;
    let mut non_associative = 0;
    let degenerate = triangular_actions(3, 20).map_err(err)?.into_iter().chain(non_associative_actions(3, 20).map_err(err)?);
    for case in corpus.iter().cloned().chain(degenerate) {
        let brute = CrossedProduct::build(&case.action).map_err(err)?.is_associative();
        let local = associativity_via_condition_x(&case.action).map_err(err)?.is_none();
        ensure!(brute == local, "{}: brute force {brute}, condition (X) {local}", case.name);
        compared += 1;
        non_associative += usize::from(!brute);
    }
    Ok(format!("{} semiprime cases associative; condition (X) matches on {compared} ({non_associative} non-associative)", corpus.len()))
}

fn semiprime_equivalences() -> Outcome {
    let algebras = gf2_algebras(11, 12).map_err(err)?;
    let mut semiprime = 0;
    for (name, alg) in &algebras {
        ensure!(alg.dim() <= 4 && alg.unit().is_some(), "{name} is outside the range");
        let p = alg.semiprime_predicates().map_err(err)?;
        ensure!(p.agree(), "{name}: {:?}", p.values());
        semiprime += usize::from(p.no_nilpotent_ideal);
    }
    Ok(format!("{} algebras, {semiprime} semiprime", algebras.len()))
}

/// Every `(L, R)` over GF(2) by exhaustion.
fn brute_force_multipliers(alg: &Algebra) -> Vec<Multiplier> {
    let d = alg.dim();
    let f = alg.field();
    let bits = 2 * d * d;
    let mut out = Vec::new();
    for mask in 0u64..1 << bits {
        let entry = |k: usize| if mask >> k & 1 == 1 { f.one() } else { f.zero() };
        let columns = |offset: usize| (0..d).map(|c| (0..d).map(|r| entry(offset + c * d + r)).collect()).collect();
        let m = Multiplier {
            left: LinearMap::new(f, d, d, columns(0)).unwrap(),
            right: LinearMap::new(f, d, d, columns(d * d)).unwrap(),
        };
        if m.violation(alg).is_none() {
            out.push(m);
        }
    }
    out
}

fn multiplier_facts() -> Outcome {
    let labels = || vec!["u".to_string(), "v".to_string()];
    for alg in [Algebra::matrix(q(), 2), Algebra::product_field(q(), 4), Algebra::upper(q(), 3), Algebra::counterexample(q())] {
        let m = MultiplierAlgebra::new(&alg).map_err(err)?;
        ensure!(m.dim() == alg.dim(), "dim M = {} for a unital algebra of dim {}", m.dim(), alg.dim());
        m.phi_image_ideal().map_err(err)?;
    }
    let zero = Algebra::zero_product(q(), 2, labels()).map_err(err)?;
    let m = MultiplierAlgebra::new(&zero).map_err(err)?;
    ensure!(m.dim() == 8, "zero-product algebra has dim M = {}", m.dim());
    ensure!(!m.is_lr_associative(), "zero-product algebra is (L,R)-associative");
    m.phi_image_ideal().map_err(err)?;

    // exhaustive count over GF(2): 2^dim solutions
    let gf2_cases = [Algebra::zero_product(gf2(), 2, labels()).map_err(err)?, Algebra::product_field(gf2(), 2), Algebra::upper(gf2(), 2)];
    for alg in &gf2_cases {
        let all = brute_force_multipliers(alg);
        let m = MultiplierAlgebra::new(alg).map_err(err)?;
        ensure!(all.len() == 1 << m.dim(), "{} solutions against dim {}", all.len(), m.dim());
        let commute = all.iter().all(|a| {
            all.iter().all(|b| b.right.compose(&a.left).unwrap() == a.left.compose(&b.right).unwrap())
        });
        ensure!(commute == m.is_lr_associative(), "(L,R) verdict differs from exhaustion");
        m.phi_image_ideal().map_err(err)?;
    }
    Ok("unital dims match; zero-product dim 8, not (L,R)-associative; GF(2) exhaustion agrees".into())
}

fn swap_k3() -> GlobalAction {
    let k3 = Algebra::product_field(q(), 3);
    let swap = LinearMap::new(q(), 3, 3, vec![k3.basis(1), k3.basis(0), k3.basis(2)]).unwrap();
    GlobalAction::new(Group::cyclic(2).unwrap(), k3, vec![LinearMap::identity(q(), 3), swap]).unwrap()
}

fn enveloping() -> Outcome {
    let beta = swap_k3();
    let k3 = beta.algebra().clone();
    let ideal = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).map_err(err)?;
    let r = restrict_global(&beta, &ideal).map_err(err)?;
    ensure!(has_enveloping(&r.action).map_err(err)?, "restriction has no enveloping action");
    let env = build_enveloping(&r.action).map_err(err)?;
    ensure!(ambient(&env).dim() == 3, "dim B = {}", ambient(&env).dim());
    ensure!(verify_enveloping(&r.action, &env).ok(), "verification failed");
    let original = EnvelopingAction { global: beta, embedding: r.inclusion.clone() };
    ensure!(compare_envelopings(&r.action, &env, &original).map_err(err)?.is_bijective(), "not isomorphic to the original");
    let emb = embed_crossed(&r.action, &env).map_err(err)?;
    ensure!(emb.map.kernel().dim() == 0, "embedding has a kernel");
    ensure!((emb.map.rank(), emb.target.dim()) == (3, 6), "image {} in {}", emb.map.rank(), emb.target.dim());
    ensure!(!has_enveloping(&counterexample_action(q())).map_err(err)?, "counterexample has an enveloping action");
    Ok("dim B = 3, image of dim 3 in dim 6, counterexample has none".into())
}

fn morita(corpus: &[CorpusAction]) -> Outcome {
    let beta = swap_k3();
    let k3 = beta.algebra().clone();
    let ideal = k3.ideal(Subspace::span(q(), 3, &[k3.basis(0), k3.basis(2)])).map_err(err)?;
    let extra = restrict_global(&beta, &ideal).map_err(err)?.action;
    let mut pairs = 0;
    for (name, action) in corpus.iter().map(|c| (c.name.as_str(), &c.action)).chain([("K^3", &extra)]) {
        let env = build_enveloping(action).map_err(err)?;
        let mc = morita_context(action, &env).map_err(err)?;
        ensure!(mc.report.ok(), "{name}: {:?}", mc.report);
        ensure!(mc.report.mn_dim == mc.report.small_dim && mc.report.nm_dim == mc.report.large_dim, "{name}: spans differ");
        pairs += 1;
    }
    Ok(format!("{pairs} enveloping pairs"))
}

fn kpar() -> Outcome {
    ensure!(ExelSemigroup::new(&Group::cyclic(2).unwrap()).map_err(err)?.len() == 3, "|S(Z/2)| != 3");
    let groups = [Group::cyclic(2).unwrap(), Group::cyclic(3).unwrap(), Group::cyclic(4).unwrap(), Group::klein()];
    let mut dims = Vec::new();
    for (g, expected) in groups.iter().zip([3, 8, 20, 20]) {
        let n = g.order();
        let formula = (n + 1) * (1 << n) / 4;
        let iso = kpar_iso(g, q()).map_err(err)?;
        let oracle = PresentedMonoid::enumerate(g, 100_000).map_err(err)?;
        ensure!(iso.dim() == expected && formula == expected, "order {n}: dim {} formula {formula}", iso.dim());
        ensure!(oracle.len() == expected, "order {n}: oracle finds {}", oracle.len());
        ensure!(agrees_with_pair_model(&iso.semigroup, &oracle), "order {n}: oracle and pair model disagree");
        dims.push(iso.dim().to_string());
    }
    Ok(format!("dims {}", dims.join(", ")))
}

fn matrix_crossed_products() -> Outcome {
    let set = |xs: &[usize]| -> GroupSubset { xs.iter().copied().collect() };
    let cases = [
        (Group::cyclic(3).unwrap(), set(&[0, 1]), 2),
        (Group::cyclic(4).unwrap(), set(&[0, 1, 2]), 3),
        (Group::klein(), set(&[0, 1, 2]), 3),
    ];
    for (g, a, n) in cases {
        let erd = elementary_rep(&g, &a, q()).map_err(err)?;
        ensure!(erd.target_name() == format!("M_{n}(K)"), "target {}", erd.target_name());
        let iso = iso_bis(&erd).map_err(err)?;
        ensure!(iso.injectivity == InjectivityVerdict::Injective, "{:?}", iso.injectivity);
        ensure!(iso.phi.crossed.dim() == n * n, "crossed product of dim {}", iso.phi.crossed.dim());
        for i in 0..n {
            for j in 0..n {
                erd.transitivity_witness(i, j).map_err(err)?;
            }
        }
    }
    Ok("M_2, M_3, M_3 with transitivity witnesses".into())
}

fn round_trips() -> Outcome {
    let (mut reps, mut products) = (0, 0);
    for g in small_groups() {
        for a in pointed_subsets(&g) {
            let rt = round_trip(&g, &a, q()).map_err(err)?;
            reps += 1;
            if g.order() <= 4 {
                let check = check_idempotent_products(&rt.original.induced().action).map_err(err)?;
                ensure!(check.ok(), "f_S support is wrong for order {}", g.order());
                products += check.subsets_checked;
            }
        }
    }
    Ok(format!("{reps} round trips, {products} products f_S"))
}

fn gradings() -> Outcome {
    let mut reps = 0;
    for g in small_groups() {
        for a in pointed_subsets(&g) {
            let erd = elementary_rep(&g, &a, q()).map_err(err)?;
            let grading = elementary_grading(&erd).map_err(err)?;
            ensure!(grading.ok(), "order {} subset of size {}: {grading:?}", g.order(), a.len());
            reps += 1;
        }
    }
    Ok(format!("{reps} graded isomorphisms"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn cli() -> Outcome {
    let pact = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_pact")).args(args).output().map_err(err);
    for name in ["counterexample", "enveloping", "kpar", "matrix"] {
        let input = golden(&format!("{name}.pact"));
        let input = input.to_str().unwrap();
        let first = pact(&["run", "--format", "json", input])?;
        let second = pact(&["run", "--format", "json", input])?;
        ensure!(first.status.code() == Some(0), "{name}: exit {:?}", first.status.code());
        ensure!(first.stdout == second.stdout, "{name}: runs differ");
        let expected = std::fs::read(golden(&format!("{name}.json"))).map_err(err)?;
        ensure!(first.stdout == expected, "{name}: report differs from the golden file");
    }
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let violated = dir.join("acceptance-violated.pact");
    std::fs::write(&violated, "field rationals\ngroup z = cyclic 3\ncmd kpar z expect dim_kpar=9\n").map_err(err)?;
    let malformed = dir.join("acceptance-malformed.pact");
    std::fs::write(&malformed, "field rationals\ngroup z = cyclic three\n").map_err(err)?;
    let code = |args: &[&str]| pact(args).map(|o| o.status.code());
    ensure!(code(&["run", violated.to_str().unwrap()])? == Some(1), "violated expectation does not exit 1");
    ensure!(code(&["run", malformed.to_str().unwrap()])? == Some(2), "parse error does not exit 2");
    ensure!(code(&["check", malformed.to_str().unwrap()])? == Some(2), "check does not exit 2");
    ensure!(code(&["frobnicate"])? == Some(2), "usage error does not exit 2");
    Ok("4 golden reports byte-identical; exit codes 0, 1, 2".into())
}

fn main() {
    let corpus = restricted_actions(7, 100).expect("corpus builds");
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("counterexample reproduction", Box::new(counterexample)),
        ("T(n,K) dichotomy", Box::new(triangular_dichotomy)),
        ("semiprime implies associative", Box::new(|| semiprime_associative(&corpus))),
        ("semiprime equivalences", Box::new(semiprime_equivalences)),
        ("multiplier facts", Box::new(multiplier_facts)),
        ("enveloping actions", Box::new(enveloping)),
        ("Morita context", Box::new(|| morita(&corpus))),
        ("K_par", Box::new(kpar)),
        ("matrix crossed products", Box::new(matrix_crossed_products)),
        ("correspondence round trips", Box::new(round_trips)),
        ("gradings", Box::new(gradings)),
        ("CLI", Box::new(cli)),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
