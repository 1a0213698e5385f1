//! The structural interface of a regular weak multiplier Hopf algebra
//! and the machinery derived from it.
//!
//! An instance provides the product, the coproduct through its four
//! *covered slices* (the coproduct of an element is a multiplier, so
//! it is only ever used multiplied by an element on one leg), the
//! counit, the bijective antipode with its inverse, the left/right
//! actions of the canonical idempotent `E`, local units, and a
//! designated faithful left integral.
//!
//! Everything else — the canonical maps `T1, T2`, their generalized
//! inverses `R1, R2`, the source and target maps `ε_s, ε_t`, the `F`
//! multipliers — is derived here uniformly from those primitives, so
//! every concrete instance (function algebra, convolution algebra,
//! separability-idempotent algebra, constructed duals) shares one
//! implementation of the canonical machinery.
//!
//! Sweedler-style notation in the comments (`a₁ ⊗ a₂` etc.) always
//! abbreviates a use of the slice maps with an explicit covering
//! element; no symbolic Sweedler calculus is performed. A full-tensor
//! coproduct [`Wmha::cop_full`] exists because every instance here is
//! finite dimensional; primary computations prefer the slices, and
//! the full tensor doubles as a cross-check oracle.

use std::collections::BTreeMap;

use crate::finvec::{
    on_leg1, on_leg2, tensor, Elem, FinVec, Key, Tensor3Elem, TensorElem,
};
use crate::scalar::Scalar;

/// A linear functional on the algebra, stored by its values on basis
/// keys (the coefficient vector of `φ`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Functional(pub Elem);

impl Functional {
    /// `φ(e_k) = c` for each listed pair.
    pub fn from_values(values: impl IntoIterator<Item = (Key, Scalar)>) -> Self {
        Functional(Elem::from_terms(values))
    }

    pub fn from_fn(basis: &[Key], mut f: impl FnMut(&Key) -> Scalar) -> Self {
        Functional(Elem::from_terms(basis.iter().map(|k| (k.clone(), f(k)))))
    }

    pub fn value(&self, k: &Key) -> Scalar {
        self.0.coeff(k)
    }

    pub fn eval(&self, a: &Elem) -> Scalar {
        a.eval(|k| self.0.coeff(k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional(self.0.add(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Functional {
        Functional(self.0.scale(c))
    }
}

/// A multiplier of the algebra: a compatible pair of left and right
/// multiplication operators.
pub struct Multiplier<'a> {
    /// `x ↦ m·x`.
    pub left: Box<dyn Fn(&Elem) -> Elem + 'a>,
    /// `x ↦ x·m`.
    pub right: Box<dyn Fn(&Elem) -> Elem + 'a>,
}

/// A multiplier of `A ⊗ A`.
pub struct TensorMultiplier<'a> {
    /// `t ↦ m·t`.
    pub left: Box<dyn Fn(&TensorElem) -> TensorElem + 'a>,
    /// `t ↦ t·m`.
    pub right: Box<dyn Fn(&TensorElem) -> TensorElem + 'a>,
}

/// A regular weak multiplier Hopf algebra, given through its covered
/// structure maps.
///
/// Naming of the coproduct slices (`a` carries the coproduct, `b` the
/// covering element):
///
/// * [`cop_right`](Wmha::cop_right): `Δ(a)(1 ⊗ b)`
/// * [`cop_right_first`](Wmha::cop_right_first): `Δ(a)(b ⊗ 1)`
/// * [`cop_left`](Wmha::cop_left): `(b ⊗ 1)Δ(a)`
/// * [`cop_left_second`](Wmha::cop_left_second): `(1 ⊗ b)Δ(a)`
///
/// Regularity guarantees all four land in `A ⊗ A`.
pub trait Wmha: Send + Sync {
    /// Human-readable instance name (used in reports).
    fn name(&self) -> String;

    /// The distinguished basis, in deterministic order.
    fn basis(&self) -> Vec<Key>;

    /// The bilinear product.
    fn product(&self, a: &Elem, b: &Elem) -> Elem;

    /// `Δ(a)(1 ⊗ b)`.
    fn cop_right(&self, a: &Elem, b: &Elem) -> TensorElem;

    /// `Δ(a)(b ⊗ 1)`.
    fn cop_right_first(&self, a: &Elem, b: &Elem) -> TensorElem;

    /// `(b ⊗ 1)Δ(a)`.
    fn cop_left(&self, b: &Elem, a: &Elem) -> TensorElem;

    /// `(1 ⊗ b)Δ(a)`.
    fn cop_left_second(&self, b: &Elem, a: &Elem) -> TensorElem;

    /// The counit.
    fn counit(&self, a: &Elem) -> Scalar;

    /// The antipode (bijective by regularity).
    fn antipode(&self, a: &Elem) -> Elem;

    /// The inverse of the antipode.
    fn antipode_inv(&self, a: &Elem) -> Elem;

    /// Left action of the canonical idempotent: `t ↦ E·t`.
    fn idempotent_left(&self, t: &TensorElem) -> TensorElem;

    /// Right action of the canonical idempotent: `t ↦ t·E`.
    fn idempotent_right(&self, t: &TensorElem) -> TensorElem;

    /// An element acting as a two-sided identity on every element of
    /// `parts` (local units exist because the algebras here are
    /// idempotent with non-degenerate product).
    fn local_unit(&self, parts: &[Elem]) -> Elem;

    /// The designated faithful left integral of the instance.
    fn designated_integral(&self) -> Functional;

    /// The full coproduct as an element of `A ⊗ A` (finite case).
    ///
    /// Default: `Δ(a)(1 ⊗ u)` with `u` a unit for the whole basis,
    /// which equals `Δ(a)` because `Δ(a) = Δ(a)E` and `E(1 ⊗ u)`
    /// restricts to the identity on the relevant legs.
    fn cop_full(&self, a: &Elem) -> TensorElem {
        let all: Vec<Elem> = self.basis().into_iter().map(Elem::basis).collect();
        let u = self.local_unit(&all);
        self.cop_right(a, &u)
    }
}

/// The basis as a list of elements.
pub fn basis_elems(w: &dyn Wmha) -> Vec<Elem> {
    w.basis().into_iter().map(Elem::basis).collect()
}

/// A local unit covering the whole basis — a genuine identity of the
/// (finite-dimensional, hence unital) algebra.
pub fn unit(w: &dyn Wmha) -> Elem {
    w.local_unit(&basis_elems(w))
}

/// Extends a bilinear map on basis keys to tensors.
pub fn on_pairs(
    t: &TensorElem,
    mut f: impl FnMut(&Key, &Key) -> TensorElem,
) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((k1, k2), c) in t.iter() {
        let image = f(k1, k2);
        for (pair, d) in image.iter() {
            out.add_term(pair.clone(), d * c);
        }
    }
    out
}

/// Componentwise product on `A ⊗ A`: `(x⊗y)(x'⊗y') = xx' ⊗ yy'`.
pub fn tensor_product(w: &dyn Wmha, s: &TensorElem, t: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((s1, s2), cs) in s.iter() {
        for ((t1, t2), ct) in t.iter() {
            let left = w.product(&Elem::basis(s1.clone()), &Elem::basis(t1.clone()));
            let right = w.product(&Elem::basis(s2.clone()), &Elem::basis(t2.clone()));
            let c = cs * ct;
            for (k1, c1) in left.iter() {
                for (k2, c2) in right.iter() {
                    out.add_term((k1.clone(), k2.clone()), &(&c * c1) * c2);
                }
            }
        }
    }
    out
}

/// Multiplies the legs of a twofold tensor: `m(x ⊗ y) = xy`.
pub fn mult_legs(w: &dyn Wmha, t: &TensorElem) -> Elem {
    let mut out = Elem::zero();
    for ((k1, k2), c) in t.iter() {
        let prod = w.product(&Elem::basis(k1.clone()), &Elem::basis(k2.clone()));
        for (k, d) in prod.iter() {
            out.add_term(k.clone(), d * c);
        }
    }
    out
}

/// Canonical map `T1(a ⊗ b) = Δ(a)(1 ⊗ b)`.
pub fn t1(w: &dyn Wmha, a: &Elem, b: &Elem) -> TensorElem {
    w.cop_right(a, b)
}

/// Canonical map `T2(c ⊗ a) = (c ⊗ 1)Δ(a)`.
pub fn t2(w: &dyn Wmha, c: &Elem, a: &Elem) -> TensorElem {
    w.cop_left(c, a)
}

/// `T1` extended to arbitrary elements of `A ⊗ A`.
pub fn t1_tensor(w: &dyn Wmha, t: &TensorElem) -> TensorElem {
    on_pairs(t, |k1, k2| t1(w, &Elem::basis(k1.clone()), &Elem::basis(k2.clone())))
}

/// `T2` extended to arbitrary elements of `A ⊗ A`.
pub fn t2_tensor(w: &dyn Wmha, t: &TensorElem) -> TensorElem {
    on_pairs(t, |k1, k2| t2(w, &Elem::basis(k1.clone()), &Elem::basis(k2.clone())))
}

/// Generalized inverse of `T1`:
/// `R1(a ⊗ b) = Σ a₁ ⊗ S(a₂)b`.
///
/// Computed through covered slices: `S(a₂)b = S(S⁻¹(b)a₂)`, so
/// `R1(a ⊗ b) = (ι ⊗ S)((1 ⊗ S⁻¹(b))Δ(a))`.
pub fn r1(w: &dyn Wmha, a: &Elem, b: &Elem) -> TensorElem {
    let covered = w.cop_left_second(&w.antipode_inv(b), a);
    on_leg2(&covered, |k| w.antipode(&Elem::basis(k.clone())))
}

/// Generalized inverse of `T2`:
/// `R2(c ⊗ a) = Σ cS(a₁) ⊗ a₂`.
///
/// Computed through covered slices: `cS(a₁) = S(a₁S⁻¹(c))`, so
/// `R2(c ⊗ a) = (S ⊗ ι)(Δ(a)(S⁻¹(c) ⊗ 1))`.
pub fn r2(w: &dyn Wmha, c: &Elem, a: &Elem) -> TensorElem {
    let covered = w.cop_right_first(a, &w.antipode_inv(c));
    on_leg1(&covered, |k| w.antipode(&Elem::basis(k.clone())))
}

/// `R1` extended to arbitrary elements of `A ⊗ A`.
pub fn r1_tensor(w: &dyn Wmha, t: &TensorElem) -> TensorElem {
    on_pairs(t, |k1, k2| r1(w, &Elem::basis(k1.clone()), &Elem::basis(k2.clone())))
}

/// `R2` extended to arbitrary elements of `A ⊗ A`.
pub fn r2_tensor(w: &dyn Wmha, t: &TensorElem) -> TensorElem {
    on_pairs(t, |k1, k2| r2(w, &Elem::basis(k1.clone()), &Elem::basis(k2.clone())))
}

/// The source map `ε_s(a) = Σ S(a₁)a₂` as a multiplier.
///
/// Left action `ε_s(a)·x = m((S ⊗ ι)(Δ(a)(1 ⊗ x)))`; right action
/// uses `xS(a₁) = S(a₁S⁻¹(x))`.
pub fn eps_s<'a>(w: &'a dyn Wmha, a: &Elem) -> Multiplier<'a> {
    let a_left = a.clone();
    let a_right = a.clone();
    Multiplier {
        left: Box::new(move |x: &Elem| {
            let covered = w.cop_right(&a_left, x);
            let mapped = on_leg1(&covered, |k| w.antipode(&Elem::basis(k.clone())));
            mult_legs(w, &mapped)
        }),
        right: Box::new(move |x: &Elem| {
            let covered = w.cop_right_first(&a_right, &w.antipode_inv(x));
            let mapped = on_leg1(&covered, |k| w.antipode(&Elem::basis(k.clone())));
            mult_legs(w, &mapped)
        }),
    }
}

/// The target map `ε_t(a) = Σ a₁S(a₂)` as a multiplier.
///
/// Left action uses `S(a₂)x = S(S⁻¹(x)a₂)`; right action is
/// `m((ι ⊗ S)((x ⊗ 1)Δ(a)))`.
pub fn eps_t<'a>(w: &'a dyn Wmha, a: &Elem) -> Multiplier<'a> {
    let a_left = a.clone();
    let a_right = a.clone();
    Multiplier {
        left: Box::new(move |x: &Elem| {
            let covered = w.cop_left_second(&w.antipode_inv(x), &a_left);
            let mapped = on_leg2(&covered, |k| w.antipode(&Elem::basis(k.clone())));
            mult_legs(w, &mapped)
        }),
        right: Box::new(move |x: &Elem| {
            let covered = w.cop_left(x, &a_right);
            let mapped = on_leg2(&covered, |k| w.antipode(&Elem::basis(k.clone())));
            mult_legs(w, &mapped)
        }),
    }
}

/// `ε_s(a)` realized as an element (`ε_s(a)·1`, finite case).
pub fn eps_s_elem(w: &dyn Wmha, a: &Elem) -> Elem {
    (eps_s(w, a).left)(&unit(w))
}

/// `ε_t(a)` realized as an element (`ε_t(a)·1`, finite case).
pub fn eps_t_elem(w: &dyn Wmha, a: &Elem) -> Elem {
    (eps_t(w, a).left)(&unit(w))
}

/// The canonical idempotent as a lazy multiplier of `A ⊗ A`.
pub fn e_multiplier(w: &dyn Wmha) -> TensorMultiplier<'_> {
    TensorMultiplier {
        left: Box::new(move |t: &TensorElem| w.idempotent_left(t)),
        right: Box::new(move |t: &TensorElem| w.idempotent_right(t)),
    }
}

/// The canonical idempotent materialized as an element of `A ⊗ A`
/// (`E·(u ⊗ u)` with `u` the unit; finite case only).
pub fn e_elem(w: &dyn Wmha) -> TensorElem {
    let u = unit(w);
    w.idempotent_left(&tensor(&u, &u))
}

/// Which of the four `F` multipliers to form from `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FIndex {
    /// `F1 = (ι ⊗ S)E`
    F1,
    /// `F2 = (S ⊗ ι)E`
    F2,
    /// `F3 = (ι ⊗ S⁻¹)E`
    F3,
    /// `F4 = (S⁻¹ ⊗ ι)E`
    F4,
}

/// `F1..F4` materialized as elements of `A ⊗ A` (finite case): the
/// antipode or its inverse applied to one leg of `E`.
pub fn f_elem(w: &dyn Wmha, which: FIndex) -> TensorElem {
    let e = e_elem(w);
    match which {
        FIndex::F1 => on_leg2(&e, |k| w.antipode(&Elem::basis(k.clone()))),
        FIndex::F2 => on_leg1(&e, |k| w.antipode(&Elem::basis(k.clone()))),
        FIndex::F3 => on_leg2(&e, |k| w.antipode_inv(&Elem::basis(k.clone()))),
        FIndex::F4 => on_leg1(&e, |k| w.antipode_inv(&Elem::basis(k.clone()))),
    }
}

/// `F1..F4` as tensor multipliers acting by multiplication with the
/// materialized element.
pub fn f_multiplier(w: &dyn Wmha, which: FIndex) -> TensorMultiplier<'_> {
    let elem_left = f_elem(w, which);
    let elem_right = elem_left.clone();
    TensorMultiplier {
        left: Box::new(move |t: &TensorElem| tensor_product(w, &elem_left, t)),
        right: Box::new(move |t: &TensorElem| tensor_product(w, t, &elem_right)),
    }
}

/// All four `F` multipliers `(F1, F2, F3, F4)`.
pub fn f_multipliers(w: &dyn Wmha) -> [TensorMultiplier<'_>; 4] {
    [
        f_multiplier(w, FIndex::F1),
        f_multiplier(w, FIndex::F2),
        f_multiplier(w, FIndex::F3),
        f_multiplier(w, FIndex::F4),
    ]
}

/// `(Δ ⊗ ι)Δ(a)` materialized as a threefold tensor (finite case).
/// By coassociativity this equals `(ι ⊗ Δ)Δ(a)` on every instance
/// that passes the law suite.
pub fn cop_full3(w: &dyn Wmha, a: &Elem) -> Tensor3Elem {
    let d = w.cop_full(a);
    let mut out = Tensor3Elem::zero();
    for ((k1, k2), c) in d.iter() {
        let inner = w.cop_full(&Elem::basis(k1.clone()));
        for ((j1, j2), d2) in inner.iter() {
            out.add_term((j1.clone(), j2.clone(), k2.clone()), d2 * c);
        }
    }
    out
}

/// Applies a map on the first two legs of a threefold tensor.
pub fn on_legs12(
    t: &Tensor3Elem,
    mut f: impl FnMut(&Key, &Key) -> TensorElem,
) -> Tensor3Elem {
    let mut out = Tensor3Elem::zero();
    for ((k1, k2, k3), c) in t.iter() {
        let image = f(k1, k2);
        for ((j1, j2), d) in image.iter() {
            out.add_term((j1.clone(), j2.clone(), k3.clone()), d * c);
        }
    }
    out
}

/// Applies a map on the last two legs of a threefold tensor.
pub fn on_legs23(
    t: &Tensor3Elem,
    mut f: impl FnMut(&Key, &Key) -> TensorElem,
) -> Tensor3Elem {
    let mut out = Tensor3Elem::zero();
    for ((k1, k2, k3), c) in t.iter() {
        let image = f(k2, k3);
        for ((j1, j2), d) in image.iter() {
            out.add_term((k1.clone(), j1.clone(), j2.clone()), d * c);
        }
    }
    out
}

/// Checks the multiplier compatibility `(x·m)·y = x·(m·y)` on all
/// basis pairs; returns a witness pair on failure.
pub fn multiplier_compatibility_witness(
    w: &dyn Wmha,
    m: &Multiplier<'_>,
) -> Option<(Key, Key)> {
    let basis = w.basis();
    for kx in &basis {
        let x = Elem::basis(kx.clone());
        let xm = (m.right)(&x);
        for ky in &basis {
            let y = Elem::basis(ky.clone());
            let my = (m.left)(&y);
            if w.product(&xm, &y) != w.product(&x, &my) {
                return Some((kx.clone(), ky.clone()));
            }
        }
    }
    None
}

/// A product table `e_j·e_k` over basis keys, as used by table-backed
/// instances and the structure-constant reports.
pub type ProductTable = BTreeMap<(Key, Key), Elem>;

/// Collects the structure constants of an instance (used by the CLI
/// `dual` output and by cross-instance comparison tests).
pub struct StructureTables {
    pub basis: Vec<Key>,
    pub product: ProductTable,
    pub coproduct: BTreeMap<Key, TensorElem>,
    pub counit: Functional,
    pub antipode: BTreeMap<Key, Elem>,
}

/// Reads off all structure constants of a finite instance.
pub fn structure_tables(w: &dyn Wmha) -> StructureTables {
    let basis = w.basis();
    let mut product = ProductTable::new();
    let mut coproduct = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    for j in &basis {
        let ej = Elem::basis(j.clone());
        coproduct.insert(j.clone(), w.cop_full(&ej));
        antipode.insert(j.clone(), w.antipode(&ej));
        for k in &basis {
            let ek = Elem::basis(k.clone());
            product.insert((j.clone(), k.clone()), w.product(&ej, &ek));
        }
    }
    let counit = Functional::from_fn(&basis, |k| w.counit(&Elem::basis(k.clone())));
    StructureTables { basis, product, coproduct, counit, antipode }
}

/// Equality of two instances' structure constants under the identity
/// correspondence of basis labels. Returns a description of the first
/// mismatch.
pub fn same_structure(a: &dyn Wmha, b: &dyn Wmha) -> Result<(), String> {
    let ta = structure_tables(a);
    let tb = structure_tables(b);
    if ta.basis != tb.basis {
        return Err(format!(
            "basis mismatch: {:?} vs {:?}",
            ta.basis, tb.basis
        ));
    }
    for (pair, lhs) in &ta.product {
        if tb.product.get(pair) != Some(lhs) {
            return Err(format!("product mismatch at {pair:?}"));
        }
    }
    for (k, lhs) in &ta.coproduct {
        if tb.coproduct.get(k) != Some(lhs) {
            return Err(format!("coproduct mismatch at {k}"));
        }
    }
    if ta.counit != tb.counit {
        return Err("counit mismatch".into());
    }
    for (k, lhs) in &ta.antipode {
        if tb.antipode.get(k) != Some(lhs) {
            return Err(format!("antipode mismatch at {k}"));
        }
    }
    Ok(())
}

/// Extends a linear map given on basis keys to elements.
pub fn lift(mut f: impl FnMut(&Key) -> Elem) -> impl FnMut(&Elem) -> Elem {
    move |a: &Elem| a.map_terms(|k| f(k))
}

/// A table-driven linear map on elements.
pub fn apply_table(table: &BTreeMap<Key, Elem>, a: &Elem) -> Elem {
    a.map_terms(|k| {
        table
            .get(k)
            .cloned()
            .unwrap_or_else(|| panic!("linear-map table missing key {k}"))
    })
}

impl<'a> Multiplier<'a> {
    /// The constant multiplier given by an algebra element.
    pub fn from_elem(w: &'a dyn Wmha, m: Elem) -> Multiplier<'a> {
        let m_left = m.clone();
        Multiplier {
            left: Box::new(move |x: &Elem| w.product(&m_left, x)),
            right: Box::new(move |x: &Elem| w.product(x, &m)),
        }
    }

    /// Realizes the multiplier as an element by acting on the unit
    /// (valid in the finite, unital case).
    pub fn realize(&self, w: &dyn Wmha) -> Elem {
        (self.left)(&unit(w))
    }
}

/// Whether `x` lies in the span of the realized source algebra
/// `ε_s(A)` — used by the integrals and duality modules.
pub fn source_algebra_basis(w: &dyn Wmha) -> Vec<Elem> {
    w.basis()
        .into_iter()
        .map(|k| eps_s_elem(w, &Elem::basis(k)))
        .collect()
}

/// The realized target algebra `ε_t(A)` spanning family.
pub fn target_algebra_basis(w: &dyn Wmha) -> Vec<Elem> {
    w.basis()
        .into_iter()
        .map(|k| eps_t_elem(w, &Elem::basis(k)))
        .collect()
}

/// Flip map on `A ⊗ A` re-exported next to the canonical machinery.
pub use crate::finvec::flip;

/// `(S ⊗ S)` applied to a twofold tensor.
pub fn antipode_both_legs(w: &dyn Wmha, t: &TensorElem) -> TensorElem {
    let step = on_leg1(t, |k| w.antipode(&Elem::basis(k.clone())));
    on_leg2(&step, |k| w.antipode(&Elem::basis(k.clone())))
}

/// Scalar pairing `ω(a)` for a functional given as coefficients on a
/// *tensor* basis — the canonical pairing used on `A ⊗ A` functionals.
pub fn tensor_eval(omega: &FinVec<(Key, Key)>, t: &TensorElem) -> Scalar {
    t.eval(|pair| omega.coeff(pair))
}
