//! The function algebra of a finite groupoid.
//!
//! Basis `δ_p` indexed by arrows, pointwise product. The coproduct is
//! dual to composition: `Δ(f)(p,q) = f(p·q)` when `s(p) = t(q)` and
//! `0` otherwise. The canonical idempotent is the indicator of
//! composable pairs, acting diagonally. The antipode is the pullback
//! of the groupoid inverse — this is *verified* by the axiom suite,
//! not assumed (see the antipode-identity laws).
//!
//! Left integrals are the sums `f ↦ Σ_p g(p)f(p)` over **all** arrows
//! with a source-fiber-constant weight `g`; the designated faithful
//! integral takes `g = 1`, i.e. `f ↦ Σ_p f(p)`, which is two-sided.

use crate::finvec::{Elem, Key, TensorElem};
use crate::groupoid::{validate, Groupoid, GroupoidError};
use crate::scalar::Scalar;
use crate::wmha::{Functional, Wmha};

/// The function algebra `K(G)` of a finite groupoid `G`.
pub struct Kg {
    groupoid: Groupoid,
    name: String,
}

impl Kg {
    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }
}

/// Builds the function algebra, validating the groupoid first.
pub fn build_kg(groupoid: Groupoid) -> Result<Kg, GroupoidError> {
    let report = validate(&groupoid);
    if !report.ok() {
        let first = &report.violations[0];
        return Err(GroupoidError::Invalid(format!(
            "{} [{}]",
            first.axiom, first.witness
        )));
    }
    let name = format!(
        "K(G) [{} arrows, {} units]",
        groupoid.arrows().len(),
        groupoid.unit_count()
    );
    Ok(Kg { groupoid, name })
}

impl Kg {
    /// `Δ(δ_r)(1 ⊗ δ_q) = [s(q)=s(r)] δ_{r·q⁻¹} ⊗ δ_q` on basis keys:
    /// the unique decomposition `r = p·q` with second factor `q`.
    fn slice_second_fixed(&self, r: &Key, q: &Key) -> TensorElem {
        let g = &self.groupoid;
        match g.compose(r, g.inverse(q)) {
            Some(p) => TensorElem::basis((p.to_string(), q.clone())),
            None => TensorElem::zero(),
        }
    }

    /// `Δ(δ_r)(δ_p ⊗ 1) = [t(p)=t(r)] δ_p ⊗ δ_{p⁻¹·r}`.
    fn slice_first_fixed(&self, r: &Key, p: &Key) -> TensorElem {
        let g = &self.groupoid;
        match g.compose(g.inverse(p), r) {
            Some(q) => TensorElem::basis((p.clone(), q.to_string())),
            None => TensorElem::zero(),
        }
    }

    fn bilinear_slice(
        a: &Elem,
        b: &Elem,
        mut slice: impl FnMut(&Key, &Key) -> TensorElem,
    ) -> TensorElem {
        let mut out = TensorElem::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                for (pair, c) in slice(ka, kb).iter() {
                    out.add_term(pair.clone(), &(ca * cb) * c);
                }
            }
        }
        out
    }
}

impl Wmha for Kg {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn basis(&self) -> Vec<Key> {
        self.groupoid.arrows().to_vec()
    }

    fn product(&self, a: &Elem, b: &Elem) -> Elem {
        // Pointwise product: δ_p δ_q = [p=q] δ_p.
        let mut out = Elem::zero();
        for (k, ca) in a.iter() {
            let cb = b.coeff(k);
            if !cb.is_zero() {
                out.add_term(k.clone(), ca * &cb);
            }
        }
        out
    }

    fn cop_right(&self, a: &Elem, b: &Elem) -> TensorElem {
        Kg::bilinear_slice(a, b, |r, q| self.slice_second_fixed(r, q))
    }

    fn cop_right_first(&self, a: &Elem, b: &Elem) -> TensorElem {
        Kg::bilinear_slice(a, b, |r, p| self.slice_first_fixed(r, p))
    }

    fn cop_left(&self, b: &Elem, a: &Elem) -> TensorElem {
        // The algebra is abelian, so left and right actions agree.
        Kg::bilinear_slice(a, b, |r, p| self.slice_first_fixed(r, p))
    }

    fn cop_left_second(&self, b: &Elem, a: &Elem) -> TensorElem {
        Kg::bilinear_slice(a, b, |r, q| self.slice_second_fixed(r, q))
    }

    fn counit(&self, a: &Elem) -> Scalar {
        // ε(f) = Σ_{units e} f(e).
        a.eval(|k| {
            if self.groupoid.is_unit(k) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    fn antipode(&self, a: &Elem) -> Elem {
        a.map_terms(|k| Elem::basis(self.groupoid.inverse(k).to_string()))
    }

    fn antipode_inv(&self, a: &Elem) -> Elem {
        // The inverse map is involutive, so S⁻¹ = S.
        self.antipode(a)
    }

    fn idempotent_left(&self, t: &TensorElem) -> TensorElem {
        // E is the (diagonal) indicator of composable pairs.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for ((p, q), c) in t.iter() {
            if g.source(p) == g.target(q) {
                out.add_term((p.clone(), q.clone()), c.clone());
            }
        }
        out
    }

    fn idempotent_right(&self, t: &TensorElem) -> TensorElem {
        self.idempotent_left(t)
    }

    fn local_unit(&self, parts: &[Elem]) -> Elem {
        // The indicator of the union of supports is a pointwise unit.
        let mut out = Elem::zero();
        for part in parts {
            for (k, _) in part.iter() {
                if out.coeff(k).is_zero() {
                    out.add_term(k.clone(), Scalar::one());
                }
            }
        }
        out
    }

    fn designated_integral(&self) -> Functional {
        // f ↦ Σ_p f(p): the weight-1 invariant sum over all arrows.
        Functional::from_fn(&self.basis(), |_| Scalar::one())
    }

    fn cop_full(&self, a: &Elem) -> TensorElem {
        // Δ(δ_r) = Σ_{p·q = r} δ_p ⊗ δ_q.
        let g = &self.groupoid;
        let mut out = TensorElem::zero();
        for (r, c) in a.iter() {
            for q in g.arrows() {
                if let Some(p) = g.compose(r, g.inverse(q)) {
                    out.add_term((p.to_string(), q.clone()), c.clone());
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::pair_groupoid;
    use crate::wmha::{t1, unit};

    fn d(label: &str) -> Elem {
        Elem::basis(label.to_string())
    }

    #[test]
    fn canonical_map_on_pair_groupoid() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        // T1(δ_(1,2), δ_(2,2)) = δ_(1,2) ⊗ δ_(2,2): the decomposition
        // (1,2) = (1,2)·(2,2).
        let got = t1(&w, &d("(1,2)"), &d("(2,2)"));
        let want = TensorElem::basis(("(1,2)".into(), "(2,2)".into()));
        assert_eq!(got, want);
        // No decomposition of (1,2) ends with (1,1).
        assert!(t1(&w, &d("(1,2)"), &d("(1,1)")).is_zero());
    }

    #[test]
    fn full_coproduct_agrees_with_slice_against_unit() {
        let w = build_kg(pair_groupoid(3)).unwrap();
        let u = unit(&w);
        for k in w.basis() {
            let a = d(&k);
            assert_eq!(w.cop_full(&a), w.cop_right(&a, &u));
        }
    }

    #[test]
    fn counit_counts_units() {
        let w = build_kg(pair_groupoid(2)).unwrap();
        assert_eq!(w.counit(&d("(1,1)")), Scalar::one());
        assert_eq!(w.counit(&d("(1,2)")), Scalar::zero());
    }

    #[test]
    fn idempotent_counts_composable_pairs() {
        // For the pair groupoid on 2 points: 8 composable pairs.
        let w = build_kg(pair_groupoid(2)).unwrap();
        let e = crate::wmha::e_elem(&w);
        assert_eq!(e.support_len(), 8);
    }
}
