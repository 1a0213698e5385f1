//! Invariant functionals (integrals): recognition, enumeration,
//! transfer between left and right, faithfulness and modular data.
//!
//! A functional `φ` is *left invariant* when the realized multiplier
//! `(ι ⊗ φ)Δ(a)` lies in the target algebra for every `a`; a left
//! integral is a nonzero left invariant functional. Recognition runs
//! three independent routes for the realized element — the direct
//! slice of the full coproduct, the antipode formula
//! `Σ a₁S(a₂)φ(a₃)`, and the `F2` form `(ι ⊗ φ)(F2(1 ⊗ a))` — and
//! treats any disagreement between them as a hard internal error.
//!
//! Faithfulness is decided twice as well: the joint-kernel test and
//! the span criterion through the legs of the canonical idempotent;
//! the two must agree.

use std::collections::BTreeMap;

use crate::axioms::{LawReport, LawStatus};
use crate::finvec::{on_leg1, on_leg2, slice_leg1, slice_leg2, Elem, Key, TensorElem};
use crate::scalar::Scalar;
use crate::solve::{
    coords, fin_in_span, fin_span_eq, key_index, rank, solve_linear, span_eq,
    SolveOutcome,
};
use crate::wmha::{
    basis_elems, cop_full3, e_elem, f_elem, source_algebra_basis,
    target_algebra_basis, FIndex, Functional, Wmha,
};

/// A linear map on the algebra stored by its values on basis keys.
pub type LinMap = BTreeMap<Key, Elem>;

/// Which invariance a certified functional enjoys.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Errors from the integral machinery.
#[derive(Debug, thiserror::Error)]
pub enum IntegralsError {
    #[error("functional is not invariant on the required side")]
    NotInvariant,
    #[error("requires a faithful integral: {0}")]
    RequiresFaithful(String),
    #[error("internal cross-check disagreement: {0}")]
    Internal(String),
}

fn phi_slice2(t: &TensorElem, phi: &Functional) -> Elem {
    slice_leg2(t, |k| phi.value(k))
}

fn phi_slice1(t: &TensorElem, phi: &Functional) -> Elem {
    slice_leg1(t, |k| phi.value(k))
}

/// The realized element `(ι ⊗ φ)Δ(a)`.
pub fn left_slice_element(w: &dyn Wmha, phi: &Functional, a: &Elem) -> Elem {
    phi_slice2(&w.cop_full(a), phi)
}

/// The realized element `(ψ ⊗ ι)Δ(a)`.
pub fn right_slice_element(w: &dyn Wmha, psi: &Functional, a: &Elem) -> Elem {
    phi_slice1(&w.cop_full(a), psi)
}

/// Whether `(ι ⊗ φ)Δ(a)` lies in the target algebra for every basis
/// `a` (the defining condition of left invariance).
///
/// Three equivalent characterizations are evaluated:
///
/// * the membership test itself;
/// * the antipode formula: `(ι⊗φ)Δ(a) = Σ a₁S(a₂)φ(a₃)` for all `a`;
/// * the idempotent formula: `(ι⊗φ)Δ(a) = (ι⊗φ)(F2(1⊗a))` for all
///   `a`.
///
/// The three verdicts must agree; disagreement panics (it would mean
/// a bug in the canonical machinery, not a property of `φ`).
pub fn is_left_invariant(w: &dyn Wmha, phi: &Functional) -> bool {
    let targets = target_algebra_basis(w);
    let f2 = f_elem(w, FIndex::F2);
    let mut membership = true;
    let mut by_formula = true;
    let mut by_f2 = true;
    for a in basis_elems(w) {
        let direct = left_slice_element(w, phi, &a);
        membership &= fin_in_span(&direct, &targets);
        // Σ a₁ S(a₂) φ(a₃).
        let triple = cop_full3(w, &a);
        let mut formula = Elem::zero();
        for ((k1, k2, k3), c) in triple.iter() {
            let term = w.product(
                &Elem::basis(k1.clone()),
                &w.antipode(&Elem::basis(k2.clone())),
            );
            let weight = &phi.value(k3) * c;
            for (k, d) in term.iter() {
                formula.add_term(k.clone(), d * &weight);
            }
        }
        by_formula &= direct == formula;
        let f2a = on_leg2(&f2, |k| w.product(&Elem::basis(k.clone()), &a));
        by_f2 &= direct == phi_slice2(&f2a, phi);
    }
    assert_eq!(
        membership, by_formula,
        "left-invariance routes disagree (membership vs antipode formula)"
    );
    assert_eq!(
        membership, by_f2,
        "left-invariance routes disagree (membership vs F2 formula)"
    );
    membership
}

/// Whether `(ψ ⊗ ι)Δ(a)` lies in the source algebra for every basis
/// `a`, with the mirrored three-route agreement check
/// (`Σ ψ(a₁)S(a₂)a₃` and `(ψ⊗ι)((a⊗1)F1)`).
pub fn is_right_invariant(w: &dyn Wmha, psi: &Functional) -> bool {
    let sources = source_algebra_basis(w);
    let f1 = f_elem(w, FIndex::F1);
    let mut membership = true;
    let mut by_formula = true;
    let mut by_f1 = true;
    for a in basis_elems(w) {
        let direct = right_slice_element(w, psi, &a);
        membership &= fin_in_span(&direct, &sources);
        // Σ ψ(a₁) S(a₂) a₃.
        let triple = cop_full3(w, &a);
        let mut formula = Elem::zero();
        for ((k1, k2, k3), c) in triple.iter() {
            let term = w.product(
                &w.antipode(&Elem::basis(k2.clone())),
                &Elem::basis(k3.clone()),
            );
            let weight = &psi.value(k1) * c;
            for (k, d) in term.iter() {
                formula.add_term(k.clone(), d * &weight);
            }
        }
        by_formula &= direct == formula;
        let af1 = on_leg1(&f1, |k| w.product(&a, &Elem::basis(k.clone())));
        by_f1 &= direct == phi_slice1(&af1, psi);
    }
    assert_eq!(
        membership, by_formula,
        "right-invariance routes disagree (membership vs antipode formula)"
    );
    assert_eq!(
        membership, by_f1,
        "right-invariance routes disagree (membership vs F1 formula)"
    );
    membership
}

/// A left *integral* is a nonzero left invariant functional.
pub fn is_left_integral(w: &dyn Wmha, phi: &Functional) -> bool {
    !phi.is_zero() && is_left_invariant(w, phi)
}

/// The functional `φ ∘ S` (right invariant when `φ` is left
/// invariant).
pub fn compose_with_antipode(w: &dyn Wmha, phi: &Functional) -> Functional {
    Functional::from_fn(&w.basis(), |k| phi.eval(&w.antipode(&Elem::basis(k.clone()))))
}

/// The functional `φ ∘ S⁻¹`.
pub fn compose_with_antipode_inv(w: &dyn Wmha, phi: &Functional) -> Functional {
    Functional::from_fn(&w.basis(), |k| {
        phi.eval(&w.antipode_inv(&Elem::basis(k.clone())))
    })
}

/// A basis of the annihilator of the span of `family` inside the
/// coordinate space of `index`.
fn annihilator(
    family: &[Elem],
    index: &BTreeMap<Key, usize>,
) -> Vec<Vec<Scalar>> {
    let rows: Vec<Vec<Scalar>> = family.iter().map(|v| coords(v, index)).collect();
    if rows.is_empty() {
        // Everything annihilates the zero space.
        return (0..index.len())
            .map(|i| {
                let mut v = vec![Scalar::zero(); index.len()];
                v[i] = Scalar::one();
                v
            })
            .collect();
    }
    let zeros = vec![Scalar::zero(); rows.len()];
    match solve_linear(&rows, &zeros) {
        SolveOutcome::Solution { kernel, .. } => kernel,
        SolveOutcome::Inconsistent => unreachable!("homogeneous system"),
    }
}

/// Enumerates a basis of the space of left invariant functionals by
/// solving the defining linear constraints exactly.
pub fn enumerate_left_integrals(w: &dyn Wmha) -> Vec<Functional> {
    let basis = w.basis();
    let targets = target_algebra_basis(w);
    let mut all: Vec<Elem> = targets.clone();
    all.extend(basis.iter().map(|k| Elem::basis(k.clone())));
    let index = key_index(&all);
    let ann = annihilator(&targets, &index);

    // Unknowns: φ(e_k). Constraint rows: for every basis a and every
    // annihilator f of A_t: f((ι⊗φ)Δ(a)) = 0, i.e.
    // Σ_k φ(e_k) · f(Σ_{j} Δ(a)_{j,k} e_j) = 0.
    let dim = basis.len();
    let mut rows = Vec::new();
    for a in &basis {
        let d = w.cop_full(&Elem::basis(a.clone()));
        for f in &ann {
            let mut row = vec![Scalar::zero(); dim];
            for ((k1, k2), c) in d.iter() {
                let slot = index[k1];
                let col = basis.iter().position(|k| k == k2).unwrap();
                let contribution = &f[slot] * c;
                row[col] += &contribution;
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = Scalar::one();
                v
            })
            .collect()
    } else {
        let zeros = vec![Scalar::zero(); rows.len()];
        match solve_linear(&rows, &zeros) {
            SolveOutcome::Solution { kernel, .. } => kernel,
            SolveOutcome::Inconsistent => unreachable!("homogeneous system"),
        }
    };
    kernel
        .into_iter()
        .map(|vec| {
            Functional::from_values(
                basis.iter().cloned().zip(vec.into_iter()),
            )
        })
        .collect()
}

/// Enumerates a basis of the right invariant functionals.
pub fn enumerate_right_integrals(w: &dyn Wmha) -> Vec<Functional> {
    let basis = w.basis();
    let sources = source_algebra_basis(w);
    let mut all: Vec<Elem> = sources.clone();
    all.extend(basis.iter().map(|k| Elem::basis(k.clone())));
    let index = key_index(&all);
    let ann = annihilator(&sources, &index);

    let dim = basis.len();
    let mut rows = Vec::new();
    for a in &basis {
        let d = w.cop_full(&Elem::basis(a.clone()));
        for f in &ann {
            let mut row = vec![Scalar::zero(); dim];
            for ((k1, k2), c) in d.iter() {
                let slot = index[k2];
                let col = basis.iter().position(|k| k == k1).unwrap();
                let contribution = &f[slot] * c;
                row[col] += &contribution;
            }
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..dim)
            .map(|i| {
                let mut v = vec![Scalar::zero(); dim];
                v[i] = Scalar::one();
                v
            })
            .collect()
    } else {
        let zeros = vec![Scalar::zero(); rows.len()];
        match solve_linear(&rows, &zeros) {
            SolveOutcome::Solution { kernel, .. } => kernel,
            SolveOutcome::Inconsistent => unreachable!("homogeneous system"),
        }
    };
    kernel
        .into_iter()
        .map(|vec| {
            Functional::from_values(basis.iter().cloned().zip(vec.into_iter()))
        })
        .collect()
}

// ---------------------------------------------------------------------
// Transfer relations between a left and a right integral
// ---------------------------------------------------------------------

/// Verifies the four transfer relations tying a left integral `φ` to
/// a right integral `ψ`: for every basis pair `(p,q)` there are
/// elements `a`, `b` with
///
/// i)   `ψ(xa) = φ(xb)`  ii)  `ψ(ax) = φ(bx)`
/// iii) `ψ(xa) = φ(bx)`  iv)  `ψ(ax) = φ(xb)`
///
/// where `a` and `b` are the stated slices of `Δ(p)` and `Δ(q)`.
pub fn check_transfer_relations(
    w: &dyn Wmha,
    phi: &Functional,
    psi: &Functional,
) -> Vec<LawReport> {
    let basis = w.basis();
    let s = |k: &Key| w.antipode(&Elem::basis(k.clone()));
    let s_inv = |k: &Key| w.antipode_inv(&Elem::basis(k.clone()));

    let mut out = Vec::new();
    let mut run = |name: &str,
                   pair_ab: &dyn Fn(&Elem, &Elem) -> (Elem, Elem),
                   check: &dyn Fn(&Elem, &Elem, &Elem) -> bool| {
        for p in &basis {
            for q in &basis {
                let (a, b) = pair_ab(&Elem::basis(p.clone()), &Elem::basis(q.clone()));
                for x in &basis {
                    let xe = Elem::basis(x.clone());
                    if !check(&a, &b, &xe) {
                        out.push(LawReport {
                            name: name.into(),
                            status: LawStatus::Fail,
                            witness: Some(format!("(p,q,x) = ({p},{q},{x})")),
                        });
                        return;
                    }
                }
            }
        }
        out.push(LawReport { name: name.into(), status: LawStatus::Ok, witness: None });
    };

    // i) a = (ι⊗φ)((ι⊗S)(Δp)(1⊗q)), b = (ψ⊗ι)((S⁻¹⊗ι)(Δq)(p⊗1)):
    //    ψ(xa) = φ(xb).
    run(
        "transfer-i",
        &|p, q| {
            let t = on_leg2(&w.cop_full(p), &s);
            let t = on_leg2(&t, |k| w.product(&Elem::basis(k.clone()), q));
            let a = phi_slice2(&t, phi);
            let u = on_leg1(&w.cop_full(q), &s_inv);
            let u = on_leg1(&u, |k| w.product(&Elem::basis(k.clone()), p));
            let b = phi_slice1(&u, psi);
            (a, b)
        },
        &|a, b, x| psi.eval(&w.product(x, a)) == phi.eval(&w.product(x, b)),
    );

    // ii) a = (ι⊗φ)((1⊗q)(ι⊗S⁻¹)Δp), b = (ψ⊗ι)((p⊗1)(S⊗ι)Δq):
    //     ψ(ax) = φ(bx).
    run(
        "transfer-ii",
        &|p, q| {
            let t = on_leg2(&w.cop_full(p), &s_inv);
            let t = on_leg2(&t, |k| w.product(q, &Elem::basis(k.clone())));
            let a = phi_slice2(&t, phi);
            let u = on_leg1(&w.cop_full(q), &s);
            let u = on_leg1(&u, |k| w.product(p, &Elem::basis(k.clone())));
            let b = phi_slice1(&u, psi);
            (a, b)
        },
        &|a, b, x| psi.eval(&w.product(a, x)) == phi.eval(&w.product(b, x)),
    );

    // iii) a = (ι⊗φ)((1⊗q)(ι⊗S)Δp), b = (ψ⊗ι)((S⊗ι)(Δq)(p⊗1)):
    //      ψ(xa) = φ(bx).
    run(
        "transfer-iii",
        &|p, q| {
            let t = on_leg2(&w.cop_full(p), &s);
            let t = on_leg2(&t, |k| w.product(q, &Elem::basis(k.clone())));
            let a = phi_slice2(&t, phi);
            let u = on_leg1(&w.cop_full(q), &s);
            let u = on_leg1(&u, |k| w.product(&Elem::basis(k.clone()), p));
            let b = phi_slice1(&u, psi);
            (a, b)
        },
        &|a, b, x| psi.eval(&w.product(x, a)) == phi.eval(&w.product(b, x)),
    );

    // iv) a = (ι⊗φ)((ι⊗S⁻¹)(Δp)(1⊗q)), b = (ψ⊗ι)((p⊗1)(S⁻¹⊗ι)Δq):
    //     ψ(ax) = φ(xb).
    run(
        "transfer-iv",
        &|p, q| {
            let t = on_leg2(&w.cop_full(p), &s_inv);
            let t = on_leg2(&t, |k| w.product(&Elem::basis(k.clone()), q));
            let a = phi_slice2(&t, phi);
            let u = on_leg1(&w.cop_full(q), &s_inv);
            let u = on_leg1(&u, |k| w.product(p, &Elem::basis(k.clone())));
            let b = phi_slice1(&u, psi);
            (a, b)
        },
        &|a, b, x| psi.eval(&w.product(a, x)) == phi.eval(&w.product(x, b)),
    );
    out
}

// ---------------------------------------------------------------------
// Faithfulness
// ---------------------------------------------------------------------

/// Joint-kernel faithfulness of a set of functionals: `x = 0` is the
/// only element with `φ_i(x·e_j) = 0` and `φ_i(e_j·x) = 0` for all
/// `i, j`.
fn kernel_faithful(w: &dyn Wmha, set: &[Functional]) -> bool {
    let basis = w.basis();
    let dim = basis.len();
    let mut right_rows = Vec::new();
    let mut left_rows = Vec::new();
    for phi in set {
        for j in &basis {
            let ej = Elem::basis(j.clone());
            let mut row_r = vec![Scalar::zero(); dim];
            let mut row_l = vec![Scalar::zero(); dim];
            for (col, k) in basis.iter().enumerate() {
                let ek = Elem::basis(k.clone());
                row_r[col] = phi.eval(&w.product(&ek, &ej));
                row_l[col] = phi.eval(&w.product(&ej, &ek));
            }
            right_rows.push(row_r);
            left_rows.push(row_l);
        }
    }
    rank(&right_rows) == dim && rank(&left_rows) == dim
}

/// Span criterion: the target algebra is spanned by
/// `(φ ⊗ ι)((a ⊗ 1)E)` and by `(φ ⊗ ι)(E(a ⊗ 1))` with `a` running
/// over the basis and `φ` over the set.
fn span_faithful(w: &dyn Wmha, set: &[Functional]) -> bool {
    let e = e_elem(w);
    let targets = target_algebra_basis(w);
    let mut fam1 = Vec::new();
    let mut fam2 = Vec::new();
    for phi in set {
        for a in basis_elems(w) {
            let ae = on_leg1(&e, |k| w.product(&a, &Elem::basis(k.clone())));
            let v1 = phi_slice1(&ae, phi);
            if !v1.is_zero() {
                fam1.push(v1);
            }
            let ea = on_leg1(&e, |k| w.product(&Elem::basis(k.clone()), &a));
            let v2 = phi_slice1(&ea, phi);
            if !v2.is_zero() {
                fam2.push(v2);
            }
        }
    }
    fin_span_eq(&fam1, &targets) && fin_span_eq(&fam2, &targets)
}

/// Decides whether a set of left integrals is faithful, evaluating
/// both the kernel test and the idempotent-leg span criterion.
///
/// The two must agree; disagreement is an internal error.
pub fn faithful_set_check(
    w: &dyn Wmha,
    set: &[Functional],
) -> Result<bool, IntegralsError> {
    let kernel = kernel_faithful(w, set);
    let span = span_faithful(w, set);
    if kernel != span {
        return Err(IntegralsError::Internal(format!(
            "kernel test says {kernel}, idempotent-span criterion says {span}"
        )));
    }
    Ok(kernel)
}

/// Single-functional faithfulness (the one-element faithful set).
pub fn is_faithful(w: &dyn Wmha, phi: &Functional) -> Result<bool, IntegralsError> {
    faithful_set_check(w, std::slice::from_ref(phi))
}

// ---------------------------------------------------------------------
// Modular data
// ---------------------------------------------------------------------

/// The Gram matrix `G[j][k] = φ(e_j e_k)`.
pub fn gram_matrix(w: &dyn Wmha, phi: &Functional) -> Vec<Vec<Scalar>> {
    let basis = w.basis();
    basis
        .iter()
        .map(|j| {
            let ej = Elem::basis(j.clone());
            basis
                .iter()
                .map(|k| phi.eval(&w.product(&ej, &Elem::basis(k.clone()))))
                .collect()
        })
        .collect()
}

/// Solves `Σ_k x_k φ(e_j e_k) = rhs(j)` for the unique `x`; fails
/// when the Gram matrix is singular (φ not faithful on that side).
fn gram_solve(
    gram: &[Vec<Scalar>],
    rhs: &[Scalar],
) -> Result<Vec<Scalar>, IntegralsError> {
    match solve_linear(gram, rhs) {
        SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
            Ok(particular)
        }
        _ => Err(IntegralsError::RequiresFaithful(
            "Gram system not uniquely solvable".into(),
        )),
    }
}

fn elem_from_coords(basis: &[Key], coords: Vec<Scalar>) -> Elem {
    Elem::from_terms(basis.iter().cloned().zip(coords.into_iter()))
}

/// The modular automorphism `σ` of a faithful integral:
/// `φ(ab) = φ(bσ(a))`. Verified to be an automorphism with
/// `φ∘σ = φ` that leaves the source algebra invariant.
pub fn modular_automorphism(
    w: &dyn Wmha,
    phi: &Functional,
) -> Result<LinMap, IntegralsError> {
    let basis = w.basis();
    let gram = gram_matrix(w, phi);
    let mut sigma = LinMap::new();
    for a in &basis {
        let ea = Elem::basis(a.clone());
        let rhs: Vec<Scalar> = basis
            .iter()
            .map(|j| phi.eval(&w.product(&ea, &Elem::basis(j.clone()))))
            .collect();
        // φ(a e_j) = φ(e_j σ(a)): row j of the Gram matrix pairs with
        // the coordinates of σ(a).
        let x = gram_solve(&gram, &rhs)?;
        sigma.insert(a.clone(), elem_from_coords(&basis, x));
    }
    // Verification: multiplicative, φ-invariant, preserves A_s.
    let apply = |x: &Elem| crate::wmha::apply_table(&sigma, x);
    for a in &basis {
        let ea = Elem::basis(a.clone());
        if phi.eval(&apply(&ea)) != phi.eval(&ea) {
            return Err(IntegralsError::Internal(format!(
                "modular automorphism does not preserve the integral at {a}"
            )));
        }
        for b in &basis {
            let eb = Elem::basis(b.clone());
            let lhs = apply(&w.product(&ea, &eb));
            let rhs = w.product(&apply(&ea), &apply(&eb));
            if lhs != rhs {
                return Err(IntegralsError::Internal(format!(
                    "modular automorphism not multiplicative at ({a},{b})"
                )));
            }
        }
    }
    let sources = source_algebra_basis(w);
    for s in &sources {
        if !fin_in_span(&apply(s), &sources) {
            return Err(IntegralsError::Internal(
                "modular automorphism does not preserve the source algebra".into(),
            ));
        }
    }
    Ok(sigma)
}

/// Inverts a bijective linear map given by a table.
pub fn invert_linmap(
    basis: &[Key],
    table: &LinMap,
) -> Result<LinMap, IntegralsError> {
    let dim = basis.len();
    // Columns of the matrix are the images of basis vectors.
    let matrix: Vec<Vec<Scalar>> = (0..dim)
        .map(|row| {
            basis
                .iter()
                .map(|k| table[k].coeff(&basis[row]))
                .collect()
        })
        .collect();
    let mut out = LinMap::new();
    for (row, k) in basis.iter().enumerate() {
        let mut rhs = vec![Scalar::zero(); dim];
        rhs[row] = Scalar::one();
        let x = match solve_linear(&matrix, &rhs) {
            SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
                particular
            }
            _ => {
                return Err(IntegralsError::Internal(
                    "linear map is not invertible".into(),
                ))
            }
        };
        out.insert(k.clone(), elem_from_coords(basis, x));
    }
    Ok(out)
}

/// Radon–Nikodym element between two left integrals with `φ`
/// faithful: the unique `y` in the source algebra with
/// `φ₁ = φ(·y)`; also satisfies `Δ(by) = Δ(b)(1 ⊗ y)`.
pub fn radon_nikodym(
    w: &dyn Wmha,
    phi: &Functional,
    phi1: &Functional,
) -> Result<Elem, IntegralsError> {
    let basis = w.basis();
    let gram = gram_matrix(w, phi);
    let rhs: Vec<Scalar> = basis
        .iter()
        .map(|j| phi1.value(j))
        .collect();
    let y = elem_from_coords(&basis, gram_solve(&gram, &rhs)?);
    if !fin_in_span(&y, &source_algebra_basis(w)) {
        return Err(IntegralsError::Internal(
            "Radon-Nikodym element escapes the source algebra".into(),
        ));
    }
    for b in basis_elems(w) {
        let lhs = w.cop_full(&w.product(&b, &y));
        let rhs = on_leg2(&w.cop_full(&b), |k| {
            w.product(&Elem::basis(k.clone()), &y)
        });
        if lhs != rhs {
            return Err(IntegralsError::Internal(
                "Δ(by) ≠ Δ(b)(1⊗y) for the Radon-Nikodym element".into(),
            ));
        }
    }
    Ok(y)
}

/// Whether multiplication by `d` is invertible on both sides.
pub fn is_invertible_element(w: &dyn Wmha, d: &Elem) -> bool {
    let basis = w.basis();
    let dim = basis.len();
    let index = key_index(
        &basis.iter().map(|k| Elem::basis(k.clone())).collect::<Vec<_>>(),
    );
    let right: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|k| coords(&w.product(&Elem::basis(k.clone()), d), &index))
        .collect();
    let left: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|k| coords(&w.product(d, &Elem::basis(k.clone())), &index))
        .collect();
    rank(&right) == dim && rank(&left) == dim
}

/// Modular element relating a right integral to a faithful left one:
/// the unique `δ` with `ψ = φ(·δ)`; invertible whenever `ψ` is
/// itself faithful.
pub fn modular_element(
    w: &dyn Wmha,
    phi: &Functional,
    psi: &Functional,
) -> Result<Elem, IntegralsError> {
    let basis = w.basis();
    let gram = gram_matrix(w, phi);
    let rhs: Vec<Scalar> = basis.iter().map(|j| psi.value(j)).collect();
    let delta = elem_from_coords(&basis, gram_solve(&gram, &rhs)?);
    for j in &basis {
        let ej = Elem::basis(j.clone());
        if phi.eval(&w.product(&ej, &delta)) != psi.value(j) {
            return Err(IntegralsError::Internal(
                "modular element fails ψ = φ(·δ)".into(),
            ));
        }
    }
    Ok(delta)
}

/// Distinguished element for the square of the antipode: the
/// invertible `y` in the source algebra with `φ(S²(x)) = φ(xy)`.
pub fn distinguished_s2_element(
    w: &dyn Wmha,
    phi: &Functional,
) -> Result<Elem, IntegralsError> {
    let basis = w.basis();
    let gram = gram_matrix(w, phi);
    let rhs: Vec<Scalar> = basis
        .iter()
        .map(|j| {
            let s2 = w.antipode(&w.antipode(&Elem::basis(j.clone())));
            phi.eval(&s2)
        })
        .collect();
    let y = elem_from_coords(&basis, gram_solve(&gram, &rhs)?);
    if !fin_in_span(&y, &source_algebra_basis(w)) {
        return Err(IntegralsError::Internal(
            "distinguished S² element escapes the source algebra".into(),
        ));
    }
    if !is_invertible_element(w, &y) {
        return Err(IntegralsError::Internal(
            "distinguished S² element is not invertible".into(),
        ));
    }
    Ok(y)
}

/// The four families `φ(·a)`, `φ(a·)`, `ψ(·a)`, `ψ(a·)` (as
/// coefficient rows over the basis) span the same space.
pub fn spanning_forms_check(w: &dyn Wmha, phi: &Functional, psi: &Functional) -> bool {
    let basis = w.basis();
    let mut fam = Vec::new();
    for which in 0..4u8 {
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|a| {
                let ea = Elem::basis(a.clone());
                basis
                    .iter()
                    .map(|j| {
                        let ej = Elem::basis(j.clone());
                        match which {
                            0 => phi.eval(&w.product(&ej, &ea)),
                            1 => phi.eval(&w.product(&ea, &ej)),
                            2 => psi.eval(&w.product(&ej, &ea)),
                            _ => psi.eval(&w.product(&ea, &ej)),
                        }
                    })
                    .collect()
            })
            .collect();
        fam.push(rows);
    }
    span_eq(&fam[0], &fam[1]) && span_eq(&fam[0], &fam[2]) && span_eq(&fam[0], &fam[3])
}

/// A certified integral: the designated functional of an instance
/// together with its verified properties.
#[derive(Debug)]
pub struct IntegralCertificate {
    pub functional: Functional,
    pub side: Side,
    pub faithful: bool,
    pub modular_automorphism: Option<LinMap>,
    pub modular_element: Option<Elem>,
}

/// Certifies the designated integral of an instance: verifies
/// invariance (left is required), determines the side, checks
/// faithfulness both ways, and computes the modular data when a
/// faithful integral is at hand.
pub fn certify_designated(w: &dyn Wmha) -> Result<IntegralCertificate, IntegralsError> {
    let phi = w.designated_integral();
    if !is_left_integral(w, &phi) {
        return Err(IntegralsError::NotInvariant);
    }
    let side = if is_right_invariant(w, &phi) {
        Side::TwoSided
    } else {
        Side::Left
    };
    let faithful = is_faithful(w, &phi)?;
    let (sigma, delta) = if faithful {
        let sigma = modular_automorphism(w, &phi)?;
        let psi = compose_with_antipode(w, &phi);
        let delta = modular_element(w, &phi, &psi)?;
        (Some(sigma), Some(delta))
    } else {
        (None, None)
    };
    Ok(IntegralCertificate {
        functional: phi,
        side,
        faithful,
        modular_automorphism: sigma,
        modular_element: delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cg::build_cg;
    use crate::groupoid::{cyclic_group_table, one_object_group, pair_groupoid};
    use crate::kg::build_kg;

    #[test]
    fn uniform_sum_is_a_two_sided_faithful_integral_on_functions() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        assert!(is_left_integral(&w, &phi));
        assert!(is_right_invariant(&w, &phi));
        assert!(is_faithful(&w, &phi).unwrap());
    }

    #[test]
    fn point_evaluation_at_a_non_unit_is_not_invariant() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = Functional::from_values([("(1,2)".to_string(), Scalar::one())]);
        assert!(!is_left_invariant(&w, &phi));
    }

    #[test]
    fn zero_functional_is_invariant_but_not_an_integral() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let zero = Functional::default();
        assert!(is_left_invariant(&w, &zero));
        assert!(!is_left_integral(&w, &zero));
    }

    #[test]
    fn integral_space_dimension_matches_unit_count() {
        for n in 1..=3 {
            let w = build_kg(pair_groupoid(n)).unwrap();
            assert_eq!(enumerate_left_integrals(&w).len(), n);
            assert_eq!(enumerate_right_integrals(&w).len(), n);
        }
        let z2 = one_object_group(&cyclic_group_table(2)).unwrap();
        let w = build_kg(z2).unwrap();
        assert_eq!(enumerate_left_integrals(&w).len(), 1);
        let w = build_cg(pair_groupoid(2)).unwrap();
        assert_eq!(enumerate_left_integrals(&w).len(), 2);
    }

    #[test]
    fn enumerated_integrals_are_invariant() {
        let w = build_cg(pair_groupoid(2)).unwrap();
        for phi in enumerate_left_integrals(&w) {
            assert!(is_left_invariant(&w, &phi));
        }
    }

    #[test]
    fn transfer_relations_hold_for_uniform_integrals() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        // The uniform sum is also right invariant; use it as ψ.
        let reports = check_transfer_relations(&w, &phi, &phi);
        for r in &reports {
            assert!(r.passed(), "{} failed: {:?}", r.name, r.witness);
        }
    }

    #[test]
    fn restricted_integral_fails_faithfulness() {
        // Weight supported on one source fiber only: a genuine left
        // integral, but not faithful.
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = Functional::from_fn(&w.basis(), |k| {
            if w.groupoid().source(k) == "(1,1)" {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        assert!(is_left_integral(&w, &phi));
        assert!(!faithful_set_check(&w, std::slice::from_ref(&phi)).unwrap());
        // Together with the complementary fiber the set is faithful.
        let phi2 = Functional::from_fn(&w.basis(), |k| {
            if w.groupoid().source(k) == "(2,2)" {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        assert!(faithful_set_check(&w, &[phi, phi2]).unwrap());
    }

    #[test]
    fn modular_automorphism_is_identity_on_commutative_instances() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        let sigma = modular_automorphism(&w, &phi).unwrap();
        for k in w.basis() {
            assert_eq!(sigma[&k], Elem::basis(k.clone()));
        }
    }

    #[test]
    fn weighted_modular_element_is_the_weight_ratio() {
        // g = 1; h = 2 on the target fiber of unit (1,1), 1 elsewhere.
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        let psi = Functional::from_fn(&w.basis(), |k| {
            if w.groupoid().target(k) == "(1,1)" {
                Scalar::from_int(2)
            } else {
                Scalar::one()
            }
        });
        assert!(is_right_invariant(&w, &psi));
        let delta = modular_element(&w, &phi, &psi).unwrap();
        // δ = h·g⁻¹ = h pointwise.
        let want = Elem::from_terms(w.basis().into_iter().map(|k| {
            let c = if w.groupoid().target(&k) == "(1,1)" {
                Scalar::from_int(2)
            } else {
                Scalar::one()
            };
            (k, c)
        }));
        assert_eq!(delta, want);
        assert!(is_invertible_element(&w, &delta));
    }

    #[test]
    fn radon_nikodym_recovers_weight_ratio() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        // φ1 with source-fiber weight 3 on fiber of (1,1), 1 on the other.
        let phi1 = Functional::from_fn(&w.basis(), |k| {
            if w.groupoid().source(k) == "(1,1)" {
                Scalar::from_int(3)
            } else {
                Scalar::one()
            }
        });
        assert!(is_left_invariant(&w, &phi1));
        let y = radon_nikodym(&w, &phi, &phi1).unwrap();
        let want = Elem::from_terms(w.basis().into_iter().map(|k| {
            let c = if w.groupoid().source(&k) == "(1,1)" {
                Scalar::from_int(3)
            } else {
                Scalar::one()
            };
            (k, c)
        }));
        assert_eq!(y, want);
    }

    #[test]
    fn spanning_forms_and_s2_element() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        let psi = compose_with_antipode(&w, &phi);
        assert!(spanning_forms_check(&w, &phi, &psi));
        let y = distinguished_s2_element(&w, &phi).unwrap();
        // S² = ι and φ faithful, so y is the unit.
        assert_eq!(y, crate::wmha::unit(&w));
    }

    #[test]
    fn certified_designated_integrals() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        let cert = certify_designated(&w).unwrap();
        assert_eq!(cert.side, Side::TwoSided);
        assert!(cert.faithful);
        let w = build_cg(pair_groupoid(2)).unwrap();
        let cert = certify_designated(&w).unwrap();
        assert_eq!(cert.side, Side::TwoSided);
        assert!(cert.faithful);
    }
}
