//! The convolution algebra of a finite groupoid.
//!
//! Basis `λ_p` indexed by arrows, product `λ_p λ_q = λ_{p·q}` when
//! `s(p) = t(q)` and `0` otherwise; every basis element is group-like:
//! `Δ(λ_p) = λ_p ⊗ λ_p`. The canonical idempotent is
//! `Σ_e λ_e ⊗ λ_e` over units. The algebra has local units (sums of
//! unit generators matching the sources/targets of the elements at
//! hand) — the global unit is only ever formed through `local_unit`
//! on an explicit finite family.
//!
//! Integrals are supported on units: the designated faithful integral
//! maps `λ_e ↦ 1` for units and all other basis elements to `0`; it
//! is two-sided and tracial.

use crate::finvec::{Elem, Key, TensorElem};
use crate::groupoid::{validate, Groupoid, GroupoidError};
use crate::scalar::Scalar;
use crate::wmha::{Functional, Wmha};

/// The convolution algebra `CG` of a finite groupoid `G`.
pub struct Cg {
    groupoid: Groupoid,
    name: String,
}

impl Cg {
    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }
}

/// Builds the convolution algebra, validating the groupoid first.
pub fn build_cg(groupoid: Groupoid) -> Result<Cg, GroupoidError> {
    let report = validate(&groupoid);
    if !report.ok() {
        let first = &report.violations[0];
        return Err(GroupoidError::Invalid(format!(
            "{} [{}]",
            first.axiom, first.witness
        )));
    }
    let name = format!(
        "CG [{} arrows, {} units]",
        groupoid.arrows().len(),
        groupoid.unit_count()
    );
    Ok(Cg { groupoid, name })
}

impl Wmha for Cg {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn basis(&self) -> Vec<Key> {
        self.groupoid.arrows().to_vec()
    }

    fn product(&self, a: &Elem, b: &Elem) -> Elem {
        let g = &self.groupoid;
        let mut out = Elem::zero();
        for (p, ca) in a.iter() {
            for (q, cb) in b.iter() {
                if let Some(r) = g.compose(p, q) {
                    out.add_term(r.to_string(), ca * cb);
                }
            }
        }
        out
    }

    fn cop_right(&self, a: &Elem, b: &Elem) -> TensorElem {
        // Δ(λ_p)(1 ⊗ λ_q) = λ_p ⊗ λ_p λ_q.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for (p, ca) in a.iter() {
            for (q, cb) in b.iter() {
                if let Some(r) = g.compose(p, q) {
                    out.add_term((p.clone(), r.to_string()), ca * cb);
                }
            }
        }
        out
    }

    fn cop_right_first(&self, a: &Elem, b: &Elem) -> TensorElem {
        // Δ(λ_p)(λ_q ⊗ 1) = λ_p λ_q ⊗ λ_p.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for (p, ca) in a.iter() {
            for (q, cb) in b.iter() {
                if let Some(r) = g.compose(p, q) {
                    out.add_term((r.to_string(), p.clone()), ca * cb);
                }
            }
        }
        out
    }

    fn cop_left(&self, b: &Elem, a: &Elem) -> TensorElem {
        // (λ_q ⊗ 1)Δ(λ_p) = λ_q λ_p ⊗ λ_p.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for (q, cb) in b.iter() {
            for (p, ca) in a.iter() {
                if let Some(r) = g.compose(q, p) {
                    out.add_term((r.to_string(), p.clone()), ca * cb);
                }
            }
        }
        out
    }

    fn cop_left_second(&self, b: &Elem, a: &Elem) -> TensorElem {
        // (1 ⊗ λ_q)Δ(λ_p) = λ_p ⊗ λ_q λ_p.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for (q, cb) in b.iter() {
            for (p, ca) in a.iter() {
                if let Some(r) = g.compose(q, p) {
                    out.add_term((p.clone(), r.to_string()), ca * cb);
                }
            }
        }
        out
    }

    fn counit(&self, a: &Elem) -> Scalar {
        // ε(λ_p) = 1 for every arrow p.
        a.eval(|_| Scalar::one())
    }

    fn antipode(&self, a: &Elem) -> Elem {
        a.map_terms(|k| Elem::basis(self.groupoid.inverse(k).to_string()))
    }

    fn antipode_inv(&self, a: &Elem) -> Elem {
        self.antipode(a)
    }

    fn idempotent_left(&self, t: &TensorElem) -> TensorElem {
        // (Σ_e λ_e ⊗ λ_e)(λ_p ⊗ λ_q) = [t(p)=t(q)] λ_p ⊗ λ_q.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for ((p, q), c) in t.iter() {
            if g.target(p) == g.target(q) {
                out.add_term((p.clone(), q.clone()), c.clone());
            }
        }
        out
    }

    fn idempotent_right(&self, t: &TensorElem) -> TensorElem {
        // (λ_p ⊗ λ_q)(Σ_e λ_e ⊗ λ_e) = [s(p)=s(q)] λ_p ⊗ λ_q.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for ((p, q), c) in t.iter() {
            if g.source(p) == g.source(q) {
                out.add_term((p.clone(), q.clone()), c.clone());
            }
        }
        out
    }

    fn local_unit(&self, parts: &[Elem]) -> Elem {
        // The sum of unit generators over every source and target
        // occurring in the supports acts as a two-sided identity.
        let g = &self.groupoid;
        let mut out = Elem::zero();
        let mut add_unit = |u: &str| {
            let key = u.to_string();
            if out.coeff(&key).is_zero() {
                out.add_term(key, Scalar::one());
            }
        };
        for part in parts {
            for (k, _) in part.iter() {
                add_unit(g.source(k));
                add_unit(g.target(k));
            }
        }
        out
    }

    fn designated_integral(&self) -> Functional {
        Functional::from_fn(&self.basis(), |k| {
            if self.groupoid.is_unit(k) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    fn cop_full(&self, a: &Elem) -> TensorElem {
        a.map_terms(|p| TensorElem::basis((p.clone(), p.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::pair_groupoid;
    use crate::wmha::{e_elem, eps_s_elem, eps_t_elem};

    fn l(label: &str) -> Elem {
        Elem::basis(label.to_string())
    }

    #[test]
    fn convolution_product() {
        let w = build_cg(pair_groupoid(2)).unwrap();
        assert_eq!(w.product(&l("(1,2)"), &l("(2,1)")), l("(1,1)"));
        assert!(w.product(&l("(1,2)"), &l("(1,2)")).is_zero());
    }

    #[test]
    fn source_and_target_maps_are_unit_generators() {
        let w = build_cg(pair_groupoid(2)).unwrap();
        assert_eq!(eps_s_elem(&w, &l("(1,2)")), l("(2,2)"));
        assert_eq!(eps_t_elem(&w, &l("(1,2)")), l("(1,1)"));
    }

    #[test]
    fn idempotent_is_unit_diagonal() {
        let w = build_cg(pair_groupoid(2)).unwrap();
        let e = e_elem(&w);
        // Σ_e λ_e ⊗ λ_e over the two units.
        assert_eq!(e.support_len(), 2);
        assert_eq!(e.coeff(&("(1,1)".into(), "(1,1)".into())), Scalar::one());
        assert_eq!(e.coeff(&("(2,2)".into(), "(2,2)".into())), Scalar::one());
    }

    #[test]
    fn local_units_cover_requested_elements() {
        let w = build_cg(pair_groupoid(3)).unwrap();
        let x = l("(1,2)").add(&l("(3,3)"));
        let u = w.local_unit(std::slice::from_ref(&x));
        assert_eq!(w.product(&u, &x), x);
        assert_eq!(w.product(&x, &u), x);
        // Only the units actually needed appear.
        assert_eq!(u.support_len(), 3);
    }

    #[test]
    fn integral_gram_matrix_is_composability_indicator() {
        let w = build_cg(pair_groupoid(2)).unwrap();
        let phi = w.designated_integral();
        for p in w.basis() {
            for q in w.basis() {
                let value = phi.eval(&w.product(&l(&p), &l(&q)));
                let want = if w.groupoid().inverse(&p) == q {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                assert_eq!(value, want, "φ(λ_{p} λ_{q})");
            }
        }
    }
}
