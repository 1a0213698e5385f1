//! The dual of a finite regular weak multiplier Hopf algebra with a
//! faithful integral.
//!
//! The dual space is spanned by the functionals `ω_k = φ(·e_k)`
//! where `φ` is the designated faithful left integral and `e_k` runs
//! through the primal basis. All structure maps of the dual are
//! computed through integral-based closed forms:
//!
//! * product: `ω·φ(a·) = φ(b·)` with `b = ((ω∘S)⊗ι)Δ(a)`,
//!   converted between left and right forms with the modular
//!   automorphism `φ(a·) = φ(·σ(a))`;
//! * coproduct: `Δ̂(ω)(1⊗φ(a·)) = Σ ω(·S(a₁)) ⊗ φ(a₂·)`, applied
//!   with the unit `ε` of the dual in the second slot;
//! * counit `ε̂(ω) = ω(1)`, antipode `⟨a, Ŝ(ω)⟩ = ⟨S(a), ω⟩`.
//!
//! The transpose-of-structure-constants description — the dual
//! product is the transpose of `Δ`, the dual coproduct the transpose
//! of the product — is kept as an independent oracle: every
//! constructed table is checked against it and any disagreement is a
//! hard internal error.
//!
//! Dual elements are identified with their coordinate vectors on the
//! labels of the primal basis: the `Elem` with coordinates `c`
//! stands for the functional `φ(·c)`.

use std::collections::BTreeMap;

use crate::finvec::{
    slice_leg1, slice_leg2, tensor, Elem, Key, TensorElem,
};
use crate::integrals::{
    gram_matrix, invert_linmap, is_faithful,
    is_left_invariant, is_right_invariant, modular_automorphism, IntegralsError,
    LinMap,
};
use crate::scalar::Scalar;
use crate::solve::{fin_in_span, fin_rank, solve_linear, SolveOutcome};
use crate::table::{TableData, TableError, TableWmha};
use crate::wmha::{
    apply_table, eps_s_elem, eps_t_elem, r1, r2, source_algebra_basis,
    t1, t2, target_algebra_basis, unit, Functional, Multiplier, ProductTable,
    Wmha,
};

/// Errors from the duality construction.
#[derive(Debug, thiserror::Error)]
pub enum DualityError {
    #[error("faithful integral required: {0}")]
    FaithfulRequired(String),
    #[error("internal cross-check disagreement: {0}")]
    Internal(String),
    #[error(transparent)]
    Integrals(#[from] IntegralsError),
    #[error(transparent)]
    Table(#[from] TableError),
}

fn internal(msg: impl Into<String>) -> DualityError {
    DualityError::Internal(msg.into())
}

/// Everything needed to compute in the dual of a fixed instance:
/// the faithful integral, its modular automorphism, the Gram matrix
/// of the pairing and the representing element of the counit.
pub struct DualContext<'a> {
    pub primal: &'a dyn Wmha,
    pub basis: Vec<Key>,
    /// Designated faithful left integral `φ`.
    pub phi: Functional,
    /// Modular automorphism: `φ(ab) = φ(bσ(a))`.
    pub sigma: LinMap,
    pub sigma_inv: LinMap,
    /// `gram[j][k] = φ(e_j e_k) = ⟨e_j, ω_k⟩`.
    pub gram: Vec<Vec<Scalar>>,
    /// The element `c_ε` with `ε = φ(·c_ε)`: the unit of the dual.
    pub unit_rep: Elem,
}

impl<'a> DualContext<'a> {
    pub fn new(primal: &'a dyn Wmha) -> Result<Self, DualityError> {
        let phi = primal.designated_integral();
        if !is_left_invariant(primal, &phi) || phi.is_zero() {
            return Err(DualityError::FaithfulRequired(
                "designated functional is not a left integral".into(),
            ));
        }
        if !is_faithful(primal, &phi)? {
            return Err(DualityError::FaithfulRequired(
                "designated left integral is not faithful".into(),
            ));
        }
        let basis = primal.basis();
        let sigma = modular_automorphism(primal, &phi)?;
        let sigma_inv = invert_linmap(&basis, &sigma)?;
        let gram = gram_matrix(primal, &phi);
        let mut ctx = DualContext {
            primal,
            basis,
            phi,
            sigma,
            sigma_inv,
            gram,
            unit_rep: Elem::zero(),
        };
        let eps_values: Vec<Scalar> = ctx
            .basis
            .iter()
            .map(|j| primal.counit(&Elem::basis(j.clone())))
            .collect();
        ctx.unit_rep = ctx.solve_functional(&eps_values)?;
        Ok(ctx)
    }

    /// Evaluates the dual element with coordinates `c` — the
    /// functional `φ(·c)` — at `a ∈ A`.
    pub fn eval(&self, omega: &Elem, a: &Elem) -> Scalar {
        self.phi.eval(&self.primal.product(a, omega))
    }

    /// The pairing `⟨a, ω⟩ = ω(a)`.
    pub fn pairing(&self, a: &Elem, omega: &Elem) -> Scalar {
        self.eval(omega, a)
    }

    /// Pairing of `A ⊗ A` with the dual tensor square.
    pub fn tensor_pairing(&self, t: &TensorElem, omega: &TensorElem) -> Scalar {
        let mut acc = Scalar::zero();
        for ((x, y), c) in t.iter() {
            for ((s, u), d) in omega.iter() {
                let p = self.pairing(&Elem::basis(x.clone()), &Elem::basis(s.clone()));
                let q = self.pairing(&Elem::basis(y.clone()), &Elem::basis(u.clone()));
                acc += &(&(&p * &q) * &(c * d));
            }
        }
        acc
    }

    /// Coordinates of the unique dual element taking the prescribed
    /// values on the primal basis (Gram solve; `φ` faithful).
    pub fn solve_functional(&self, values: &[Scalar]) -> Result<Elem, DualityError> {
        match solve_linear(&self.gram, values) {
            SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
                Ok(Elem::from_terms(
                    self.basis.iter().cloned().zip(particular.into_iter()),
                ))
            }
            _ => Err(internal("Gram system not uniquely solvable")),
        }
    }

    /// Coordinates of a general functional on `A` as a dual element.
    pub fn functional_coords(&self, f: &Functional) -> Result<Elem, DualityError> {
        let values: Vec<Scalar> =
            self.basis.iter().map(|j| f.value(j)).collect();
        self.solve_functional(&values)
    }

    /// Rewrites `φ(a·)` in the canonical right-slot form `φ(·σ(a))`.
    pub fn from_left_slot(&self, a: &Elem) -> Elem {
        apply_table(&self.sigma, a)
    }

    /// Rewrites `φ(·c)` in the left-slot form `φ(σ⁻¹(c)·)`.
    pub fn to_left_slot(&self, c: &Elem) -> Elem {
        apply_table(&self.sigma_inv, c)
    }
}

/// A sum of functionals `Σ_i φ(·a_i)` kept with its representation
/// terms and, since `φ` is faithful, its unique canonical
/// coordinates `φ(·Σa_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualElement {
    /// `(integral-id, a_i)` pairs; the integral id names the instance
    /// whose designated integral carries the representation.
    pub terms: Vec<(String, Elem)>,
    pub canonical: Elem,
}

impl DualElement {
    pub fn from_terms(ctx: &DualContext, terms: Vec<Elem>) -> DualElement {
        let id = ctx.primal.name();
        let mut canonical = Elem::zero();
        for a in &terms {
            canonical = canonical.add(a);
        }
        DualElement {
            terms: terms.into_iter().map(|a| (id.clone(), a)).collect(),
            canonical,
        }
    }

    /// Two representations are equal iff they agree on every basis
    /// element of the primal algebra.
    pub fn evaluates_equal(&self, ctx: &DualContext, other: &DualElement) -> bool {
        ctx.basis.iter().all(|j| {
            let ej = Elem::basis(j.clone());
            ctx.eval(&self.canonical, &ej) == ctx.eval(&other.canonical, &ej)
        })
    }
}

/// The dual product: `ω·ω′` with `(ωω′)(x) = (ω⊗ω′)(Δ(x))`,
/// computed through the closed form `ω·φ(a·) = φ(b·)` with
/// `b = ((ω∘S)⊗ι)Δ(a)` and checked against the transpose of `Δ`
/// on every primal basis element.
pub fn dual_product(ctx: &DualContext, omega: &Elem, omega2: &Elem) -> Elem {
    let w = ctx.primal;
    // ω′ = φ(·c′) = φ(a·) with a = σ⁻¹(c′).
    let a = ctx.to_left_slot(omega2);
    // b = Σ (ω∘S)(a₁) a₂.
    let b = slice_leg1(&w.cop_full(&a), |k| {
        ctx.eval(omega, &w.antipode(&Elem::basis(k.clone())))
    });
    // ωω′ = φ(b·) = φ(·σ(b)).
    let result = ctx.from_left_slot(&b);
    // Oracle: the dual product is the transpose of the coproduct.
    for j in &ctx.basis {
        let ej = Elem::basis(j.clone());
        let direct = slice_leg2(&w.cop_full(&ej), |k| {
            ctx.eval(omega2, &Elem::basis(k.clone()))
        })
        .eval(|k| ctx.eval(omega, &Elem::basis(k.clone())));
        assert_eq!(
            ctx.eval(&result, &ej),
            direct,
            "dual product disagrees with the transpose of the coproduct"
        );
    }
    result
}

/// The dual of a weak multiplier Hopf algebra: a table-backed
/// instance over the primal basis labels, together with the pairing.
pub struct DualWmha {
    table: TableWmha,
    /// `pairing[j][k] = ⟨e_j, ω_k⟩` in primal basis order.
    pub pairing: Vec<Vec<Scalar>>,
    pub primal_basis: Vec<Key>,
    pub primal_name: String,
}

impl DualWmha {
    pub fn table(&self) -> &TableWmha {
        &self.table
    }
}

impl Wmha for DualWmha {
    fn name(&self) -> String {
        self.table.name()
    }
    fn basis(&self) -> Vec<Key> {
        self.table.basis()
    }
    fn product(&self, a: &Elem, b: &Elem) -> Elem {
        self.table.product(a, b)
    }
    fn cop_right(&self, a: &Elem, b: &Elem) -> TensorElem {
        self.table.cop_right(a, b)
    }
    fn cop_right_first(&self, a: &Elem, b: &Elem) -> TensorElem {
        self.table.cop_right_first(a, b)
    }
    fn cop_left(&self, b: &Elem, a: &Elem) -> TensorElem {
        self.table.cop_left(b, a)
    }
    fn cop_left_second(&self, b: &Elem, a: &Elem) -> TensorElem {
        self.table.cop_left_second(b, a)
    }
    fn counit(&self, a: &Elem) -> Scalar {
        self.table.counit(a)
    }
    fn antipode(&self, a: &Elem) -> Elem {
        self.table.antipode(a)
    }
    fn antipode_inv(&self, a: &Elem) -> Elem {
        self.table.antipode_inv(a)
    }
    fn idempotent_left(&self, t: &TensorElem) -> TensorElem {
        self.table.idempotent_left(t)
    }
    fn idempotent_right(&self, t: &TensorElem) -> TensorElem {
        self.table.idempotent_right(t)
    }
    fn local_unit(&self, parts: &[Elem]) -> Elem {
        self.table.local_unit(parts)
    }
    fn designated_integral(&self) -> Functional {
        self.table.designated_integral()
    }
    fn cop_full(&self, a: &Elem) -> TensorElem {
        self.table.cop_full(a)
    }
}

/// Builds the dual weak multiplier Hopf algebra of `w`.
///
/// Requires the designated integral of `w` to be a faithful left
/// integral; fails with [`DualityError::FaithfulRequired`] otherwise.
/// The designated integral of the returned instance is
/// `φ̂ = ψ̂ ∘ Ŝ` where `ψ̂(φ(·c)) = ε(c)` is the faithful right
/// integral of the dual.
pub fn build_dual(w: &dyn Wmha) -> Result<DualWmha, DualityError> {
    let ctx = DualContext::new(w)?;
    let basis = ctx.basis.clone();

    // Product table through the closed form (oracle-checked inside).
    let mut product = ProductTable::new();
    for p in &basis {
        for q in &basis {
            let r = dual_product(
                &ctx,
                &Elem::basis(p.clone()),
                &Elem::basis(q.clone()),
            );
            product.insert((p.clone(), q.clone()), r);
        }
    }

    // Coproduct: Δ̂(ω_p) = Δ̂(ω_p)(1 ⊗ ε) = Σ ω_p(·S(a₁)) ⊗ φ(a₂·)
    // with ε = φ(a_ε ·), a_ε = σ⁻¹(c_ε).
    let a_eps = ctx.to_left_slot(&ctx.unit_rep);
    let full_eps = w.cop_full(&a_eps);
    let mut coproduct: BTreeMap<Key, TensorElem> = BTreeMap::new();
    for p in &basis {
        let ep = Elem::basis(p.clone());
        let mut out = TensorElem::zero();
        for ((k1, k2), c) in full_eps.iter() {
            // ω_p(·S(e_{k1})) = φ(· S(e_{k1})e_p).
            let first = w.product(&w.antipode(&Elem::basis(k1.clone())), &ep);
            // φ(e_{k2}·) = φ(·σ(e_{k2})).
            let second = ctx.from_left_slot(&Elem::basis(k2.clone()));
            out = out.add(&tensor(&first, &second).scale(c));
        }
        // Oracle: ⟨x⊗y, Δ̂(ω_p)⟩ = ω_p(xy) on all basis pairs.
        for x in &basis {
            for y in &basis {
                let got = ctx.tensor_pairing(
                    &tensor(&Elem::basis(x.clone()), &Elem::basis(y.clone())),
                    &out,
                );
                let want = ctx.eval(
                    &ep,
                    &w.product(&Elem::basis(x.clone()), &Elem::basis(y.clone())),
                );
                if got != want {
                    return Err(internal(format!(
                        "dual coproduct disagrees with the transpose of the \
                         product at ({p}; {x},{y})"
                    )));
                }
            }
        }
        coproduct.insert(p.clone(), out);
    }

    // Counit ε̂(ω) = ω(1).
    let one = unit(w);
    let counit = Functional::from_fn(&basis, |p| {
        ctx.eval(&Elem::basis(p.clone()), &one)
    });

    // Antipode ⟨a, Ŝ(ω)⟩ = ⟨S(a), ω⟩ and its inverse, by Gram solve.
    let mut antipode: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut antipode_inv: BTreeMap<Key, Elem> = BTreeMap::new();
    for p in &basis {
        let ep = Elem::basis(p.clone());
        let s_values: Vec<Scalar> = basis
            .iter()
            .map(|j| ctx.eval(&ep, &w.antipode(&Elem::basis(j.clone()))))
            .collect();
        antipode.insert(p.clone(), ctx.solve_functional(&s_values)?);
        let si_values: Vec<Scalar> = basis
            .iter()
            .map(|j| ctx.eval(&ep, &w.antipode_inv(&Elem::basis(j.clone()))))
            .collect();
        antipode_inv.insert(p.clone(), ctx.solve_functional(&si_values)?);
    }

    // ψ̂(ω_p) = ε(e_p) is a faithful right integral on the dual; the
    // designated left integral is φ̂ = ψ̂ ∘ Ŝ.
    let integral = Functional::from_fn(&basis, |p| {
        antipode[p].eval(|k| w.counit(&Elem::basis(k.clone())))
    });

    let table = TableWmha::new(TableData {
        name: format!("dual({})", w.name()),
        basis: basis.clone(),
        product,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        unit: ctx.unit_rep.clone(),
        integral,
    })?;
    Ok(DualWmha {
        table,
        pairing: ctx.gram.clone(),
        primal_basis: basis,
        primal_name: w.name(),
    })
}

/// The four actions between an algebra and its dual.
pub struct DualActions {
    /// `a ▷ ω = ω(·a)`: `⟨a′a, ω⟩ = ⟨a′, a▷ω⟩`.
    pub on_dual_left: Elem,
    /// `ω ◁ a = ω(a·)`: `⟨aa′, ω⟩ = ⟨a′, ω◁a⟩`.
    pub on_dual_right: Elem,
    /// `a ◁ ω = Σ ω(a₁)a₂ ∈ A`: `⟨a◁ω, ω′⟩ = ⟨a, ωω′⟩`.
    pub on_algebra_right: Elem,
    /// `ω ▷ a = Σ a₁ω(a₂) ∈ A`: `⟨ω▷a, ω′⟩ = ⟨a, ω′ω⟩`.
    pub on_algebra_left: Elem,
}

/// Computes the four actions of `a ∈ A` and the dual element `ω`
/// on each other and verifies all four pairing adjunctions on the
/// full basis.
pub fn actions(ctx: &DualContext, a: &Elem, omega: &Elem) -> DualActions {
    let w = ctx.primal;
    // a ▷ ω: with ω = φ(·c), ω(·a) = φ(·ac).
    let on_dual_left = w.product(a, omega);
    // ω ◁ a: ω(a·) = φ(a·c) = φ(·cσ(a)).
    let on_dual_right = w.product(omega, &ctx.from_left_slot(a));
    let full = w.cop_full(a);
    let on_algebra_right =
        slice_leg1(&full, |k| ctx.eval(omega, &Elem::basis(k.clone())));
    let on_algebra_left =
        slice_leg2(&full, |k| ctx.eval(omega, &Elem::basis(k.clone())));
    let out = DualActions {
        on_dual_left,
        on_dual_right,
        on_algebra_right,
        on_algebra_left,
    };
    for j in &ctx.basis {
        let ej = Elem::basis(j.clone());
        assert_eq!(
            ctx.pairing(&w.product(&ej, a), omega),
            ctx.pairing(&ej, &out.on_dual_left),
            "⟨a′a, ω⟩ = ⟨a′, a▷ω⟩ fails"
        );
        assert_eq!(
            ctx.pairing(&w.product(a, &ej), omega),
            ctx.pairing(&ej, &out.on_dual_right),
            "⟨aa′, ω⟩ = ⟨a′, ω◁a⟩ fails"
        );
        let oj = Elem::basis(j.clone());
        assert_eq!(
            ctx.pairing(&out.on_algebra_right, &oj),
            ctx.pairing(a, &dual_product(ctx, omega, &oj)),
            "⟨a◁ω, ω′⟩ = ⟨a, ωω′⟩ fails"
        );
        assert_eq!(
            ctx.pairing(&out.on_algebra_left, &oj),
            ctx.pairing(a, &dual_product(ctx, &oj, omega)),
            "⟨ω▷a, ω′⟩ = ⟨a, ω′ω⟩ fails"
        );
    }
    out
}

/// A multiplier of the dual algebra: a compatible pair of left and
/// right multiplication operators on dual coordinates.
pub struct DualMultiplier<'a> {
    /// `ω ↦ m·ω`.
    pub left: Box<dyn Fn(&Elem) -> Elem + 'a>,
    /// `ω ↦ ω·m`.
    pub right: Box<dyn Fn(&Elem) -> Elem + 'a>,
}

/// Extends the pairing to `M(A) × Â`: `⟨m, ω◁a⟩ = ⟨am, ω⟩`.
///
/// The defining consistency is re-verified over the decompositions
/// `ω◁a` for every basis `a` before the value is returned.
pub fn pairing_with_primal_multiplier(
    ctx: &DualContext,
    m: &Multiplier,
    omega: &Elem,
) -> Scalar {
    let w = ctx.primal;
    // ω = ω ◁ 1, so ⟨m, ω⟩ = ⟨1·m, ω⟩.
    let realized = (m.right)(&unit(w));
    let value = ctx.pairing(&realized, omega);
    for a in &ctx.basis {
        let ea = Elem::basis(a.clone());
        // ω ◁ a = ω(a·) = φ(·cσ(a)).
        let shifted = w.product(omega, &ctx.from_left_slot(&ea));
        assert_eq!(
            ctx.pairing(&(m.right)(&ea), omega),
            ctx.pairing(&realized, &shifted).clone(),
            "extended pairing with a primal multiplier is decomposition-dependent"
        );
    }
    value
}

/// Extends the pairing to `A × M(Â)`: `⟨a, ωm⟩ = ⟨a◁ω, m⟩`.
pub fn pairing_with_dual_multiplier(
    ctx: &DualContext,
    a: &Elem,
    m: &DualMultiplier,
) -> Scalar {
    // a = a ◁ ε, so ⟨a, m⟩ = ⟨a, ε·m⟩.
    let realized = (m.right)(&ctx.unit_rep);
    let value = ctx.pairing(a, &realized);
    for b in &ctx.basis {
        let ob = Elem::basis(b.clone());
        let acted = actions(ctx, a, &ob).on_algebra_right;
        assert_eq!(
            ctx.pairing(a, &(m.right)(&ob)),
            ctx.pairing(&acted, &realized),
            "extended pairing with a dual multiplier is decomposition-dependent"
        );
    }
    value
}

/// Decides whether a functional `ω ∈ A′` defines a multiplier of the
/// dual algebra — in the finite case the slice conditions
/// `(ω⊗ι)Δ(a) ∈ A` and `(ι⊗ω)Δ(a) ∈ A` always hold — and returns
/// the verified multiplier `(mω′)(x) = (ω⊗ω′)Δ(x)`,
/// `(ω′m)(x) = (ω′⊗ω)Δ(x)`.
pub fn is_dual_multiplier<'a>(
    ctx: &'a DualContext,
    omega: &Functional,
) -> (bool, DualMultiplier<'a>) {
    let w = ctx.primal;
    let om = omega.clone();
    let om2 = omega.clone();
    let left = Box::new(move |op: &Elem| {
        let values: Vec<Scalar> = ctx
            .basis
            .iter()
            .map(|j| {
                slice_leg1(&w.cop_full(&Elem::basis(j.clone())), |k| {
                    om.value(k)
                })
                .eval(|k| ctx.eval(op, &Elem::basis(k.clone())))
            })
            .collect();
        ctx.solve_functional(&values).expect("Gram solve")
    });
    let right = Box::new(move |op: &Elem| {
        let values: Vec<Scalar> = ctx
            .basis
            .iter()
            .map(|j| {
                slice_leg2(&w.cop_full(&Elem::basis(j.clone())), |k| {
                    om2.value(k)
                })
                .eval(|k| ctx.eval(op, &Elem::basis(k.clone())))
            })
            .collect();
        ctx.solve_functional(&values).expect("Gram solve")
    });
    let m = DualMultiplier { left, right };
    // Compatibility: (ω′·m)·ω″ = ω′·(m·ω″) on the basis.
    let mut ok = true;
    for p in &ctx.basis {
        for q in &ctx.basis {
            let op = Elem::basis(p.clone());
            let oq = Elem::basis(q.clone());
            let lhs = dual_product(ctx, &(m.right)(&op), &oq);
            let rhs = dual_product(ctx, &op, &(m.left)(&oq));
            if lhs != rhs {
                ok = false;
            }
        }
    }
    (ok, m)
}

/// The canonical maps of the dual on a basis pair, stored as tables
/// over pairs of dual labels.
pub struct DualCanonicalMaps {
    pub t1_hat: BTreeMap<(Key, Key), TensorElem>,
    pub t2_hat: BTreeMap<(Key, Key), TensorElem>,
    pub r1_hat: BTreeMap<(Key, Key), TensorElem>,
    pub r2_hat: BTreeMap<(Key, Key), TensorElem>,
}

/// Computes `T̂1, T̂2, R̂1, R̂2` on all dual basis pairs and verifies
/// the adjointness relations against the primal canonical maps:
/// `⟨x⊗y, T̂1(ω⊗ω′)⟩ = ⟨T2(x⊗y), ω⊗ω′⟩`, the `T̂2`/`T1` twin, and
/// `R̂1 ~ R2`, `R̂2 ~ R1`, plus the generalized-inverse laws.
pub fn dual_canonical_maps(
    ctx: &DualContext,
    dual: &DualWmha,
) -> Result<DualCanonicalMaps, DualityError> {
    let w = ctx.primal;
    let basis = ctx.basis.clone();
    let mut maps = DualCanonicalMaps {
        t1_hat: BTreeMap::new(),
        t2_hat: BTreeMap::new(),
        r1_hat: BTreeMap::new(),
        r2_hat: BTreeMap::new(),
    };
    for p in &basis {
        for q in &basis {
            let op = Elem::basis(p.clone());
            let oq = Elem::basis(q.clone());
            // Closed form: ω′ = ω_q = φ(a·) with a = σ⁻¹(e_q);
            // T̂1(ω⊗ω′) = Σ ω(·S(a₁)) ⊗ φ(a₂·).
            let a = ctx.to_left_slot(&oq);
            let mut closed = TensorElem::zero();
            for ((k1, k2), c) in w.cop_full(&a).iter() {
                let first =
                    w.product(&w.antipode(&Elem::basis(k1.clone())), &op);
                let second = ctx.from_left_slot(&Elem::basis(k2.clone()));
                closed = closed.add(&tensor(&first, &second).scale(c));
            }
            let via_table = t1(dual, &op, &oq);
            if closed != via_table {
                return Err(internal(format!(
                    "T̂1 closed form disagrees with the dual table at ({p},{q})"
                )));
            }
            let t2_hat = t2(dual, &op, &oq);
            let r1_hat = r1(dual, &op, &oq);
            let r2_hat = r2(dual, &op, &oq);
            // Eq-style forms for the generalized inverses:
            // R̂1(b⊗b′) = Σ b₁ ⊗ Ŝ(b₂)b′, R̂2(b⊗b′) = Σ bŜ(b′₁) ⊗ b′₂.
            let mut r1_form = TensorElem::zero();
            for ((k1, k2), c) in dual.cop_full(&op).iter() {
                let second = dual
                    .product(&dual.antipode(&Elem::basis(k2.clone())), &oq);
                r1_form =
                    r1_form.add(&tensor(&Elem::basis(k1.clone()), &second).scale(c));
            }
            if r1_hat != r1_form {
                return Err(internal(format!(
                    "R̂1 disagrees with Σ b₁⊗Ŝ(b₂)b′ at ({p},{q})"
                )));
            }
            let mut r2_form = TensorElem::zero();
            for ((k1, k2), c) in dual.cop_full(&oq).iter() {
                let first = dual
                    .product(&op, &dual.antipode(&Elem::basis(k1.clone())));
                r2_form =
                    r2_form.add(&tensor(&first, &Elem::basis(k2.clone())).scale(c));
            }
            if r2_hat != r2_form {
                return Err(internal(format!(
                    "R̂2 disagrees with Σ bŜ(b′₁)⊗b′₂ at ({p},{q})"
                )));
            }
            // Adjointness on all primal basis pairs.
            for x in &basis {
                for y in &basis {
                    let ex = Elem::basis(x.clone());
                    let ey = Elem::basis(y.clone());
                    let xy = tensor(&ex, &ey);
                    let checks: [(&TensorElem, TensorElem, &str); 4] = [
                        (&via_table, t2(w, &ex, &ey), "T̂1 ~ T2"),
                        (&t2_hat, t1(w, &ex, &ey), "T̂2 ~ T1"),
                        (&r1_hat, r2(w, &ex, &ey), "R̂1 ~ R2"),
                        (&r2_hat, r1(w, &ex, &ey), "R̂2 ~ R1"),
                    ];
                    for (dual_side, primal_side, name) in checks {
                        let lhs = ctx.tensor_pairing(&xy, dual_side);
                        let rhs = ctx.tensor_pairing(
                            &primal_side,
                            &tensor(&op, &oq),
                        );
                        if lhs != rhs {
                            return Err(internal(format!(
                                "adjointness {name} fails at ({p},{q};{x},{y})"
                            )));
                        }
                    }
                }
            }
            maps.t1_hat.insert((p.clone(), q.clone()), via_table);
            maps.t2_hat.insert((p.clone(), q.clone()), t2_hat);
            maps.r1_hat.insert((p.clone(), q.clone()), r1_hat);
            maps.r2_hat.insert((p.clone(), q.clone()), r2_hat);
        }
    }
    // Generalized-inverse laws T̂1R̂1T̂1 = T̂1 and T̂2R̂2T̂2 = T̂2 hold
    // because the dual passes the generic law suite; spot-verify the
    // idempotent forms here: T̂1R̂1 = Ê·(·) and T̂2R̂2 = (·)·Ê.
    for p in &basis {
        for q in &basis {
            let t = tensor(&Elem::basis(p.clone()), &Elem::basis(q.clone()));
            let e_left = dual.idempotent_left(&t);
            let tr = crate::wmha::t1_tensor(dual, &crate::wmha::r1_tensor(dual, &t));
            if e_left != tr {
                return Err(internal("T̂1R̂1 differs from multiplication by Ê"));
            }
            let e_right = dual.idempotent_right(&t);
            let tr2 = crate::wmha::t2_tensor(dual, &crate::wmha::r2_tensor(dual, &t));
            if e_right != tr2 {
                return Err(internal("T̂2R̂2 differs from multiplication by Ê"));
            }
        }
    }
    Ok(maps)
}

/// The right integral `ψ_a` on the dual: `ψ_a(φ(·c)) = φ(a·ε_s(c))`.
/// Verified to be right invariant on the dual instance.
pub fn dual_integrals(
    ctx: &DualContext,
    dual: &DualWmha,
    a: &Elem,
) -> Result<Functional, DualityError> {
    let w = ctx.primal;
    let psi = Functional::from_fn(&ctx.basis, |k| {
        let es = eps_s_elem(w, &Elem::basis(k.clone()));
        ctx.phi.eval(&w.product(a, &es))
    });
    if !psi.is_zero() && !is_right_invariant(dual, &psi) {
        return Err(internal("ψ_a is not right invariant on the dual"));
    }
    Ok(psi)
}

/// The single right integral `ψ̂(φ(·c)) = p(ε_s(c))` attached to a
/// functional `p` on the source algebra (given as any extension to
/// all of `A`).
pub fn single_faithful_dual_integral(
    ctx: &DualContext,
    dual: &DualWmha,
    p: &Functional,
) -> Result<Functional, DualityError> {
    let w = ctx.primal;
    let psi_hat = Functional::from_fn(&ctx.basis, |k| {
        p.eval(&eps_s_elem(w, &Elem::basis(k.clone())))
    });
    if !is_right_invariant(dual, &psi_hat) {
        return Err(internal("ψ̂ is not right invariant on the dual"));
    }
    Ok(psi_hat)
}

/// The distinguished functional on the source algebra:
/// `ε_s(c) ↦ ε(c)`, returned as an extension to all of `A`.
pub fn distinguished_source_functional(
    w: &dyn Wmha,
) -> Result<Functional, DualityError> {
    let basis = w.basis();
    let dim = basis.len();
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|j| {
            let es = eps_s_elem(w, &Elem::basis(j.clone()));
            (0..dim).map(|k| es.coeff(&basis[k])).collect()
        })
        .collect();
    let rhs: Vec<Scalar> = basis
        .iter()
        .map(|j| w.counit(&Elem::basis(j.clone())))
        .collect();
    match solve_linear(&rows, &rhs) {
        SolveOutcome::Solution { particular, .. } => Ok(Functional(
            Elem::from_terms(basis.iter().cloned().zip(particular.into_iter())),
        )),
        SolveOutcome::Inconsistent => Err(internal(
            "ε_s(c) ↦ ε(c) is not well defined on the source algebra",
        )),
    }
}

/// The biduality isomorphism: the evaluation map
/// `a ↦ (ω ↦ ω(a))` from the primal into the dual of the dual,
/// expressed in bidual coordinates. Verified to be a bijective
/// homomorphism intertwining coproducts, counits and antipodes.
pub fn biduality_iso(
    w: &dyn Wmha,
    dual: &DualWmha,
) -> Result<LinMap, DualityError> {
    let ctx2 = DualContext::new(dual)?;
    let basis = w.basis();
    let mut iso = LinMap::new();
    for j in &basis {
        let ej = Elem::basis(j.clone());
        let values: Vec<Scalar> = ctx2
            .basis
            .iter()
            .map(|q| {
                // ev_a(ω_q) = ω_q(a) under the primal pairing.
                let mut acc = Scalar::zero();
                for (k, c) in ej.iter() {
                    let jk = basis.iter().position(|b| b == k).unwrap();
                    let qk = basis.iter().position(|b| b == q).unwrap();
                    acc += &(&dual.pairing[jk][qk] * c);
                }
                acc
            })
            .collect();
        iso.insert(j.clone(), ctx2.solve_functional(&values)?);
    }
    let apply = |x: &Elem| apply_table(&iso, x);
    // Bijective.
    let images: Vec<Elem> = basis
        .iter()
        .map(|j| iso[j].clone())
        .collect();
    if fin_rank(&images) != basis.len() {
        return Err(internal("biduality evaluation map is not bijective"));
    }
    let bidual = build_dual(dual)?;
    for j in &basis {
        let ej = Elem::basis(j.clone());
        // Counit and antipode.
        if bidual.counit(&iso[j]) != w.counit(&ej) {
            return Err(internal("biduality map does not preserve the counit"));
        }
        if bidual.antipode(&iso[j]) != apply(&w.antipode(&ej)) {
            return Err(internal("biduality map does not intertwine antipodes"));
        }
        // Coproduct (full, leg-wise through the map).
        let lhs = bidual.cop_full(&iso[j]);
        let rhs = w.cop_full(&ej).map_terms(|(k1, k2)| {
            tensor(&iso[k1], &iso[k2])
        });
        if lhs != rhs {
            return Err(internal("biduality map does not intertwine coproducts"));
        }
        for l in &basis {
            let el = Elem::basis(l.clone());
            let lhs = bidual.product(&iso[j], &iso[l]);
            let rhs = apply(&w.product(&ej, &el));
            if lhs != rhs {
                return Err(internal(
                    "biduality map is not an algebra homomorphism",
                ));
            }
        }
    }
    Ok(iso)
}

/// The isomorphisms `γ_s : ε_s(A) → ε_t(Â)` (via `⟨ya, b⟩ =
/// ⟨a, b·γ_s(y)⟩`) and `γ_t : ε_t(A) → ε_s(Â)` (via `⟨ax, b⟩ =
/// ⟨a, γ_t(x)·b⟩`), plus the self-duality identities
/// `⟨a, ε̂_s(b)⟩ = ⟨ε_s(a), b⟩` and its target twin.
pub struct SourceTargetDualities {
    /// Pairs `(y, γ_s(y))` over the spanning set `ε_s(e_j)`.
    pub gamma_s: Vec<(Elem, Elem)>,
    /// Pairs `(x, γ_t(x))` over the spanning set `ε_t(e_j)`.
    pub gamma_t: Vec<(Elem, Elem)>,
}

fn solve_gamma(
    ctx: &DualContext,
    dual: &DualWmha,
    y: &Elem,
    source_side: bool,
) -> Result<Elem, DualityError> {
    let w = ctx.primal;
    let basis = &ctx.basis;
    let dim = basis.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for j in basis {
        let ej = Elem::basis(j.clone());
        for q in basis {
            let oq = Elem::basis(q.clone());
            let mut row = Vec::with_capacity(dim);
            for k in basis {
                let prod = if source_side {
                    dual.product(&oq, &Elem::basis(k.clone()))
                } else {
                    dual.product(&Elem::basis(k.clone()), &oq)
                };
                row.push(ctx.pairing(&ej, &prod));
            }
            rows.push(row);
            let shifted = if source_side {
                w.product(y, &ej)
            } else {
                w.product(&ej, y)
            };
            rhs.push(ctx.pairing(&shifted, &oq));
        }
    }
    match solve_linear(&rows, &rhs) {
        SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
            Ok(Elem::from_terms(
                basis.iter().cloned().zip(particular.into_iter()),
            ))
        }
        _ => Err(internal("γ system not uniquely solvable")),
    }
}

pub fn source_target_dualities(
    ctx: &DualContext,
    dual: &DualWmha,
) -> Result<SourceTargetDualities, DualityError> {
    let w = ctx.primal;
    let dual_targets = target_algebra_basis(dual);
    let dual_sources = source_algebra_basis(dual);
    let mut gamma_s = Vec::new();
    let gamma_s_of = |y: &Elem| solve_gamma(ctx, dual, y, true);
    for j in &ctx.basis {
        let y = eps_s_elem(w, &Elem::basis(j.clone()));
        let z = gamma_s_of(&y)?;
        if !fin_in_span(&z, &dual_targets) {
            return Err(internal("γ_s(y) is not in the dual target algebra"));
        }
        gamma_s.push((y, z));
    }
    // Homomorphism: γ_s(yy′) = γ_s(y)γ_s(y′).
    for (y, z) in &gamma_s {
        for (y2, z2) in &gamma_s {
            let lhs = gamma_s_of(&w.product(y, y2))?;
            let rhs = dual.product(z, z2);
            if lhs != rhs {
                return Err(internal("γ_s is not multiplicative"));
            }
        }
    }
    // Bijectivity onto ε_t(Â).
    let images: Vec<Elem> = gamma_s.iter().map(|(_, z)| z.clone()).collect();
    let sources: Vec<Elem> = gamma_s.iter().map(|(y, _)| y.clone()).collect();
    if fin_rank(&images) != fin_rank(&sources)
        || fin_rank(&images) != fin_rank(&dual_targets)
    {
        return Err(internal("γ_s is not a bijection onto ε_t(Â)"));
    }
    let mut gamma_t = Vec::new();
    let gamma_t_of = |x: &Elem| solve_gamma(ctx, dual, x, false);
    for j in &ctx.basis {
        let x = eps_t_elem(w, &Elem::basis(j.clone()));
        let z = gamma_t_of(&x)?;
        if !fin_in_span(&z, &dual_sources) {
            return Err(internal("γ_t(x) is not in the dual source algebra"));
        }
        gamma_t.push((x, z));
    }
    for (x, z) in &gamma_t {
        for (x2, z2) in &gamma_t {
            let lhs = gamma_t_of(&w.product(x, x2))?;
            let rhs = dual.product(z, z2);
            if lhs != rhs {
                return Err(internal("γ_t is not multiplicative"));
            }
        }
    }
    let images: Vec<Elem> = gamma_t.iter().map(|(_, z)| z.clone()).collect();
    let targets: Vec<Elem> = gamma_t.iter().map(|(x, _)| x.clone()).collect();
    if fin_rank(&images) != fin_rank(&targets)
        || fin_rank(&images) != fin_rank(&dual_sources)
    {
        return Err(internal("γ_t is not a bijection onto ε_s(Â)"));
    }
    // Self-duality of the source and target maps.
    for j in &ctx.basis {
        let ej = Elem::basis(j.clone());
        for k in &ctx.basis {
            let ok = Elem::basis(k.clone());
            let lhs = ctx.pairing(&ej, &eps_s_elem(dual, &ok));
            let rhs = ctx.pairing(&eps_s_elem(w, &ej), &ok);
            if lhs != rhs {
                return Err(internal("⟨a, ε̂_s(b)⟩ = ⟨ε_s(a), b⟩ fails"));
            }
            let lhs = ctx.pairing(&ej, &eps_t_elem(dual, &ok));
            let rhs = ctx.pairing(&eps_t_elem(w, &ej), &ok);
            if lhs != rhs {
                return Err(internal("⟨a, ε̂_t(b)⟩ = ⟨ε_t(a), b⟩ fails"));
            }
        }
    }
    Ok(SourceTargetDualities { gamma_s, gamma_t })
}
