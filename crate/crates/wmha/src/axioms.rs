//! Named structural laws of a regular weak multiplier Hopf algebra,
//! checked exhaustively on basis tuples (or by seeded sampling on
//! instances above the exhaustive-dimension budget), each reported
//! with a witness on failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::finvec::{flip, on_leg1, on_leg2, Elem, Tensor3Elem, TensorElem};
use crate::scalar::Scalar;
use crate::solve::fin_span_eq;
use crate::wmha::{
    basis_elems, e_elem, eps_s, eps_s_elem, eps_t, eps_t_elem, f_elem,
    multiplier_compatibility_witness, on_legs12, on_legs23, r1, r1_tensor, r2,
    r2_tensor, source_algebra_basis, t1, t1_tensor, t2, t2_tensor,
    target_algebra_basis, FIndex, Wmha,
};

/// Sampling/exhaustiveness budget for the law suite.
#[derive(Clone, Debug)]
pub struct CheckBudget {
    /// Instances with basis dimension at most this are checked on all
    /// tuples; larger ones are sampled.
    pub max_exhaustive_dim: usize,
    /// Seed for the sampled path (per-law derived deterministically).
    pub seed: u64,
}

impl Default for CheckBudget {
    fn default() -> Self {
        CheckBudget { max_exhaustive_dim: 64, seed: 0 }
    }
}

/// Tuples drawn per law on the sampled path.
const SAMPLES: usize = 1024;

fn law_rng(budget: &CheckBudget, tag: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x1000_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(budget.seed ^ h)
}

fn index_pairs(dim: usize, budget: &CheckBudget, tag: &str) -> Vec<(usize, usize)> {
    if dim <= budget.max_exhaustive_dim {
        (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect()
    } else {
        let mut rng = law_rng(budget, tag);
        (0..SAMPLES)
            .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim)))
            .collect()
    }
}

fn index_triples(
    dim: usize,
    budget: &CheckBudget,
    tag: &str,
) -> Vec<(usize, usize, usize)> {
    // Exhaustive triples are cubically many; halve the threshold.
    if dim <= budget.max_exhaustive_dim / 2 + 1 {
        (0..dim)
            .flat_map(|i| {
                (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))
            })
            .collect()
    } else {
        let mut rng = law_rng(budget, tag);
        (0..SAMPLES)
            .map(|_| {
                (
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                )
            })
            .collect()
    }
}

/// Outcome of one law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub name: String,
    pub status: LawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Ok,
    Fail,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.status == LawStatus::Ok
    }
}

type LawFn = fn(&dyn Wmha, &CheckBudget) -> Option<String>;

/// The full named law list, in fixed report order.
pub fn law_list() -> Vec<(&'static str, LawFn)> {
    vec![
        ("product-associative", law_product_associative),
        ("product-nondegenerate", law_product_nondegenerate),
        ("algebra-idempotent", law_algebra_idempotent),
        ("coassociativity-commutation", law_coassociativity_commutation),
        ("canonical-maps-commutation", law_canonical_maps_commutation),
        ("counit-left", law_counit_left),
        ("counit-right", law_counit_right),
        ("counit-respects-antipode", law_counit_respects_antipode),
        ("antipode-identity-element", law_antipode_identity_element),
        ("antipode-identity-antipode", law_antipode_identity_antipode),
        ("antipode-anti-algebra", law_antipode_anti_algebra),
        ("antipode-anti-coalgebra", law_antipode_anti_coalgebra),
        ("antipode-bijective", law_antipode_bijective),
        ("idempotent-e-idempotent", law_e_idempotent),
        ("idempotent-absorbs-coproduct", law_e_absorbs_coproduct),
        ("idempotent-coassociative", law_e_coassociative),
        ("idempotent-full-legs", law_e_full_legs),
        ("idempotent-antipode-flip", law_e_antipode_flip),
        ("idempotent-projections", law_e_projections),
        ("source-target-images-commute", law_source_target_commute),
        ("source-map-multiplier", law_source_map_multiplier),
        ("target-map-multiplier", law_target_map_multiplier),
        ("generalized-inverse-t1", law_generalized_inverse_t1),
        ("generalized-inverse-t2", law_generalized_inverse_t2),
        ("r1t1-f1-form", law_r1t1_f1_form),
        ("r2t2-f2-form", law_r2t2_f2_form),
        ("full-coproduct-oracle", law_full_coproduct_oracle),
    ]
}

/// Runs every law sequentially and collects the reports in order.
pub fn check_axioms(w: &dyn Wmha, budget: &CheckBudget) -> Vec<LawReport> {
    law_list()
        .into_iter()
        .map(|(name, run)| report(name, run(w, budget)))
        .collect()
}

/// Runs the laws on up to `jobs` worker threads; the report order is
/// identical to [`check_axioms`].
pub fn check_axioms_parallel(
    w: &dyn Wmha,
    budget: &CheckBudget,
    jobs: usize,
) -> Vec<LawReport> {
    let laws = law_list();
    if jobs <= 1 || laws.len() <= 1 {
        return check_axioms(w, budget);
    }
    let jobs = jobs.min(laws.len());
    let mut results: Vec<Option<LawReport>> = vec![None; laws.len()];
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots = std::sync::Mutex::new(&mut results);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= laws.len() {
                    break;
                }
                let (name, run) = laws[i];
                let out = report(name, run(w, budget));
                slots.lock().unwrap()[i] = Some(out);
            });
        }
    });
    results.into_iter().map(Option::unwrap).collect()
}

fn report(name: &str, witness: Option<String>) -> LawReport {
    match witness {
        None => LawReport { name: name.into(), status: LawStatus::Ok, witness: None },
        Some(text) => {
            LawReport { name: name.into(), status: LawStatus::Fail, witness: Some(text) }
        }
    }
}

// ---------------------------------------------------------------------
// Algebra laws
// ---------------------------------------------------------------------

fn law_product_associative(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j, k) in index_triples(es.len(), budget, "product-associative") {
        let left = w.product(&w.product(&es[i], &es[j]), &es[k]);
        let right = w.product(&es[i], &w.product(&es[j], &es[k]));
        if left != right {
            return Some(format!(
                "({},{},{})",
                w.basis()[i],
                w.basis()[j],
                w.basis()[k]
            ));
        }
    }
    None
}

fn law_product_nondegenerate(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    let keys = w.basis();
    for (i, a) in es.iter().enumerate() {
        let right = es.iter().any(|b| !w.product(a, b).is_zero());
        let left = es.iter().any(|b| !w.product(b, a).is_zero());
        if !right || !left {
            return Some(keys[i].clone());
        }
    }
    None
}

fn law_algebra_idempotent(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    let mut products = Vec::new();
    for a in &es {
        for b in &es {
            let ab = w.product(a, b);
            if !ab.is_zero() {
                products.push(ab);
            }
        }
    }
    if fin_span_eq(&products, &es) {
        None
    } else {
        Some("span of products differs from the whole algebra".into())
    }
}

// ---------------------------------------------------------------------
// Coproduct laws
// ---------------------------------------------------------------------

fn basis_triple(w: &dyn Wmha, i: usize, j: usize, k: usize) -> Tensor3Elem {
    let keys = w.basis();
    Tensor3Elem::basis((keys[i].clone(), keys[j].clone(), keys[k].clone()))
}

fn law_coassociativity_commutation(
    w: &dyn Wmha,
    budget: &CheckBudget,
) -> Option<String> {
    // ι⊗T1 and T2⊗ι commute: the coassociativity criterion.
    let dim = w.basis().len();
    for (i, j, k) in index_triples(dim, budget, "coassociativity-commutation") {
        let x = basis_triple(w, i, j, k);
        let t1_then_t2 = on_legs12(
            &on_legs23(&x, |b, c| t1(w, &Elem::basis(b.clone()), &Elem::basis(c.clone()))),
            |a, b| t2(w, &Elem::basis(a.clone()), &Elem::basis(b.clone())),
        );
        let t2_then_t1 = on_legs23(
            &on_legs12(&x, |a, b| t2(w, &Elem::basis(a.clone()), &Elem::basis(b.clone()))),
            |b, c| t1(w, &Elem::basis(b.clone()), &Elem::basis(c.clone())),
        );
        if t1_then_t2 != t2_then_t1 {
            let keys = w.basis();
            return Some(format!("({},{},{})", keys[i], keys[j], keys[k]));
        }
    }
    None
}

fn law_canonical_maps_commutation(
    w: &dyn Wmha,
    budget: &CheckBudget,
) -> Option<String> {
    // ι⊗T2 and T1⊗ι commute: the dual associativity criterion.
    let dim = w.basis().len();
    for (i, j, k) in index_triples(dim, budget, "canonical-maps-commutation") {
        let x = basis_triple(w, i, j, k);
        let t2_then_t1 = on_legs12(
            &on_legs23(&x, |b, c| t2(w, &Elem::basis(b.clone()), &Elem::basis(c.clone()))),
            |a, b| t1(w, &Elem::basis(a.clone()), &Elem::basis(b.clone())),
        );
        let t1_then_t2 = on_legs23(
            &on_legs12(&x, |a, b| t1(w, &Elem::basis(a.clone()), &Elem::basis(b.clone()))),
            |b, c| t2(w, &Elem::basis(b.clone()), &Elem::basis(c.clone())),
        );
        if t2_then_t1 != t1_then_t2 {
            let keys = w.basis();
            return Some(format!("({},{},{})", keys[i], keys[j], keys[k]));
        }
    }
    None
}

fn law_counit_left(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "counit-left") {
        let sliced = t1(w, &es[i], &es[j]);
        let got = crate::finvec::slice_leg1(&sliced, |k| w.counit(&Elem::basis(k.clone())));
        if got != w.product(&es[i], &es[j]) {
            let keys = w.basis();
            return Some(format!("({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_counit_right(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "counit-right") {
        let sliced = t2(w, &es[i], &es[j]);
        let got = crate::finvec::slice_leg2(&sliced, |k| w.counit(&Elem::basis(k.clone())));
        if got != w.product(&es[i], &es[j]) {
            let keys = w.basis();
            return Some(format!("({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_counit_respects_antipode(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    for k in w.basis() {
        let a = Elem::basis(k.clone());
        if w.counit(&w.antipode(&a)) != w.counit(&a) {
            return Some(k);
        }
    }
    None
}

// ---------------------------------------------------------------------
// Antipode laws
// ---------------------------------------------------------------------

use crate::wmha::cop_full3 as double_coproduct;

fn law_antipode_identity_element(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    // Σ a₁ S(a₂) a₃ = a.
    for k in w.basis() {
        let a = Elem::basis(k.clone());
        let triple = double_coproduct(w, &a);
        let mut got = Elem::zero();
        for ((k1, k2, k3), c) in triple.iter() {
            let term = w.product(
                &w.product(&Elem::basis(k1.clone()), &w.antipode(&Elem::basis(k2.clone()))),
                &Elem::basis(k3.clone()),
            );
            for (key, d) in term.iter() {
                got.add_term(key.clone(), d * c);
            }
        }
        if got != a {
            return Some(k);
        }
    }
    None
}

fn law_antipode_identity_antipode(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    // Σ S(a₁) a₂ S(a₃) = S(a).
    for k in w.basis() {
        let a = Elem::basis(k.clone());
        let triple = double_coproduct(w, &a);
        let mut got = Elem::zero();
        for ((k1, k2, k3), c) in triple.iter() {
            let term = w.product(
                &w.product(&w.antipode(&Elem::basis(k1.clone())), &Elem::basis(k2.clone())),
                &w.antipode(&Elem::basis(k3.clone())),
            );
            for (key, d) in term.iter() {
                got.add_term(key.clone(), d * c);
            }
        }
        if got != w.antipode(&a) {
            return Some(k);
        }
    }
    None
}

fn law_antipode_anti_algebra(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "antipode-anti-algebra") {
        let lhs = w.antipode(&w.product(&es[i], &es[j]));
        let rhs = w.product(&w.antipode(&es[j]), &w.antipode(&es[i]));
        if lhs != rhs {
            let keys = w.basis();
            return Some(format!("({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_antipode_anti_coalgebra(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    // Δ(S(a)) = (S ⊗ S)(flip Δ(a)).
    for k in w.basis() {
        let a = Elem::basis(k.clone());
        let lhs = w.cop_full(&w.antipode(&a));
        let rhs = crate::wmha::antipode_both_legs(w, &flip(&w.cop_full(&a)));
        if lhs != rhs {
            return Some(k);
        }
    }
    None
}

fn law_antipode_bijective(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    for k in w.basis() {
        let a = Elem::basis(k.clone());
        if w.antipode_inv(&w.antipode(&a)) != a || w.antipode(&w.antipode_inv(&a)) != a {
            return Some(k);
        }
    }
    None
}

// ---------------------------------------------------------------------
// Canonical idempotent laws
// ---------------------------------------------------------------------

fn law_e_idempotent(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let keys = w.basis();
    for (i, j) in index_pairs(keys.len(), budget, "idempotent-e-idempotent") {
        let t = TensorElem::basis((keys[i].clone(), keys[j].clone()));
        let once_left = w.idempotent_left(&t);
        if w.idempotent_left(&once_left) != once_left {
            return Some(format!("E·E·({}⊗{})", keys[i], keys[j]));
        }
        let once_right = w.idempotent_right(&t);
        if w.idempotent_right(&once_right) != once_right {
            return Some(format!("({}⊗{})·E·E", keys[i], keys[j]));
        }
        if w.idempotent_right(&once_left) != w.idempotent_left(&once_right) {
            return Some(format!("E·({}⊗{})·E ordering", keys[i], keys[j]));
        }
    }
    None
}

fn law_e_absorbs_coproduct(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    for k in w.basis() {
        let d = w.cop_full(&Elem::basis(k.clone()));
        if w.idempotent_left(&d) != d {
            return Some(format!("E·Δ({k})"));
        }
        if w.idempotent_right(&d) != d {
            return Some(format!("Δ({k})·E"));
        }
    }
    None
}

fn law_e_coassociative(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    // (Δ⊗ι)E = (E⊗1)(1⊗E) = (1⊗E)(E⊗1) on materialized elements.
    let e = e_elem(w);
    let mut lhs = Tensor3Elem::zero();
    for ((k1, k2), c) in e.iter() {
        let inner = w.cop_full(&Elem::basis(k1.clone()));
        for ((j1, j2), d) in inner.iter() {
            lhs.add_term((j1.clone(), j2.clone(), k2.clone()), d * c);
        }
    }
    let mut rhs_a = Tensor3Elem::zero(); // (E⊗1)(1⊗E): Σ E1 ⊗ E2E1' ⊗ E2'
    let mut rhs_b = Tensor3Elem::zero(); // (1⊗E)(E⊗1): Σ E1' ⊗ E1E2' ⊗ E2
    for ((a1, a2), ca) in e.iter() {
        for ((b1, b2), cb) in e.iter() {
            let mid_a = w.product(&Elem::basis(a2.clone()), &Elem::basis(b1.clone()));
            for (m, cm) in mid_a.iter() {
                rhs_a.add_term((a1.clone(), m.clone(), b2.clone()), &(ca * cb) * cm);
            }
            let mid_b = w.product(&Elem::basis(a1.clone()), &Elem::basis(b2.clone()));
            for (m, cm) in mid_b.iter() {
                rhs_b.add_term((b1.clone(), m.clone(), a2.clone()), &(ca * cb) * cm);
            }
        }
    }
    if lhs != rhs_a {
        return Some("(Δ⊗ι)E ≠ (E⊗1)(1⊗E)".into());
    }
    if lhs != rhs_b {
        return Some("(Δ⊗ι)E ≠ (1⊗E)(E⊗1)".into());
    }
    None
}

fn law_e_full_legs(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    let e = e_elem(w);
    let keys = w.basis();
    let mut leg1 = Vec::new();
    let mut leg2 = Vec::new();
    for probe in &keys {
        let first = crate::finvec::slice_leg2(&e, |k| {
            if k == probe { Scalar::one() } else { Scalar::zero() }
        });
        if !first.is_zero() {
            leg1.push(first);
        }
        let second = crate::finvec::slice_leg1(&e, |k| {
            if k == probe { Scalar::one() } else { Scalar::zero() }
        });
        if !second.is_zero() {
            leg2.push(second);
        }
    }
    if !fin_span_eq(&leg1, &source_algebra_basis(w)) {
        return Some("left leg of E does not span the source algebra".into());
    }
    if !fin_span_eq(&leg2, &target_algebra_basis(w)) {
        return Some("right leg of E does not span the target algebra".into());
    }
    None
}

fn law_e_antipode_flip(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    let e = e_elem(w);
    if crate::wmha::antipode_both_legs(w, &e) == flip(&e) {
        None
    } else {
        Some("(S⊗S)E ≠ flip(E)".into())
    }
}

fn law_e_projections(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    // T1R1 is left multiplication by E; T2R2 is right multiplication.
    let keys = w.basis();
    for (i, j) in index_pairs(keys.len(), budget, "idempotent-projections") {
        let t = TensorElem::basis((keys[i].clone(), keys[j].clone()));
        if t1_tensor(w, &r1_tensor(w, &t)) != w.idempotent_left(&t) {
            return Some(format!("T1R1 ≠ E· at ({},{})", keys[i], keys[j]));
        }
        if t2_tensor(w, &r2_tensor(w, &t)) != w.idempotent_right(&t) {
            return Some(format!("T2R2 ≠ ·E at ({},{})", keys[i], keys[j]));
        }
    }
    None
}

// ---------------------------------------------------------------------
// Source/target-map laws
// ---------------------------------------------------------------------

fn law_source_target_commute(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "source-target-images-commute") {
        let x = eps_s_elem(w, &es[i]);
        let y = eps_t_elem(w, &es[j]);
        if w.product(&x, &y) != w.product(&y, &x) {
            let keys = w.basis();
            return Some(format!("(ε_s({}), ε_t({}))", keys[i], keys[j]));
        }
    }
    None
}

fn law_source_map_multiplier(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    for k in w.basis() {
        let m = eps_s(w, &Elem::basis(k.clone()));
        if let Some((x, y)) = multiplier_compatibility_witness(w, &m) {
            return Some(format!("ε_s({k}) at ({x},{y})"));
        }
    }
    None
}

fn law_target_map_multiplier(w: &dyn Wmha, _budget: &CheckBudget) -> Option<String> {
    for k in w.basis() {
        let m = eps_t(w, &Elem::basis(k.clone()));
        if let Some((x, y)) = multiplier_compatibility_witness(w, &m) {
            return Some(format!("ε_t({k}) at ({x},{y})"));
        }
    }
    None
}

// ---------------------------------------------------------------------
// Generalized inverse laws
// ---------------------------------------------------------------------

fn law_generalized_inverse_t1(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "generalized-inverse-t1") {
        let t = t1(w, &es[i], &es[j]);
        if t1_tensor(w, &r1_tensor(w, &t)) != t {
            let keys = w.basis();
            return Some(format!("T1R1T1 at ({},{})", keys[i], keys[j]));
        }
        let r = r1(w, &es[i], &es[j]);
        if r1_tensor(w, &t1_tensor(w, &r)) != r {
            let keys = w.basis();
            return Some(format!("R1T1R1 at ({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_generalized_inverse_t2(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "generalized-inverse-t2") {
        let t = t2(w, &es[i], &es[j]);
        if t2_tensor(w, &r2_tensor(w, &t)) != t {
            let keys = w.basis();
            return Some(format!("T2R2T2 at ({},{})", keys[i], keys[j]));
        }
        let r = r2(w, &es[i], &es[j]);
        if r2_tensor(w, &t2_tensor(w, &r)) != r {
            let keys = w.basis();
            return Some(format!("R2T2R2 at ({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_r1t1_f1_form(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    // R1T1(a ⊗ a') = (a ⊗ 1)F1(1 ⊗ a').
    let es = basis_elems(w);
    let f1 = f_elem(w, FIndex::F1);
    for (i, j) in index_pairs(es.len(), budget, "r1t1-f1-form") {
        let lhs = r1_tensor(w, &t1(w, &es[i], &es[j]));
        let scaled = on_leg1(&f1, |k| w.product(&es[i], &Elem::basis(k.clone())));
        let rhs = on_leg2(&scaled, |k| w.product(&Elem::basis(k.clone()), &es[j]));
        if lhs != rhs {
            let keys = w.basis();
            return Some(format!("({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_r2t2_f2_form(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    // R2T2(a ⊗ a') = (a ⊗ 1)F2(1 ⊗ a').
    let es = basis_elems(w);
    let f2 = f_elem(w, FIndex::F2);
    for (i, j) in index_pairs(es.len(), budget, "r2t2-f2-form") {
        let lhs = r2_tensor(w, &t2(w, &es[i], &es[j]));
        let scaled = on_leg1(&f2, |k| w.product(&es[i], &Elem::basis(k.clone())));
        let rhs = on_leg2(&scaled, |k| w.product(&Elem::basis(k.clone()), &es[j]));
        if lhs != rhs {
            let keys = w.basis();
            return Some(format!("({},{})", keys[i], keys[j]));
        }
    }
    None
}

fn law_full_coproduct_oracle(w: &dyn Wmha, budget: &CheckBudget) -> Option<String> {
    // The four covered slices agree with multiplying the full tensor.
    let es = basis_elems(w);
    for (i, j) in index_pairs(es.len(), budget, "full-coproduct-oracle") {
        let full = w.cop_full(&es[i]);
        let b = &es[j];
        let right = on_leg2(&full, |k| w.product(&Elem::basis(k.clone()), b));
        if w.cop_right(&es[i], b) != right {
            let keys = w.basis();
            return Some(format!("cop_right at ({},{})", keys[i], keys[j]));
        }
        let right_first = on_leg1(&full, |k| w.product(&Elem::basis(k.clone()), b));
        if w.cop_right_first(&es[i], b) != right_first {
            let keys = w.basis();
            return Some(format!("cop_right_first at ({},{})", keys[i], keys[j]));
        }
        let left = on_leg1(&full, |k| w.product(b, &Elem::basis(k.clone())));
        if w.cop_left(b, &es[i]) != left {
            let keys = w.basis();
            return Some(format!("cop_left at ({},{})", keys[i], keys[j]));
        }
        let left_second = on_leg2(&full, |k| w.product(b, &Elem::basis(k.clone())));
        if w.cop_left_second(b, &es[i]) != left_second {
            let keys = w.basis();
            return Some(format!("cop_left_second at ({},{})", keys[i], keys[j]));
        }
    }
    None
}

/// True when every law passed.
pub fn all_passed(reports: &[LawReport]) -> bool {
    reports.iter().all(LawReport::passed)
}
