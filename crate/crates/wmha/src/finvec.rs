//! Finitely-supported vectors over ℚ(i).
//!
//! A [`FinVec<K>`] is a formal linear combination of basis keys `K`
//! with [`Scalar`] coefficients, stored sparsely in a `BTreeMap` so
//! that iteration order — and hence every downstream artifact — is
//! deterministic. Zero coefficients are never stored.
//!
//! Algebra elements use `K = String` (basis labels), elements of a
//! twofold tensor product use `K = (String, String)`, and threefold
//! tensors use `K = (String, String, String)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Basis label of an algebra element.
pub type Key = String;
/// An element of the algebra: finite linear combination of labels.
pub type Elem = FinVec<Key>;
/// An element of `A ⊗ A`.
pub type TensorElem = FinVec<(Key, Key)>;
/// An element of `A ⊗ A ⊗ A`.
pub type Tensor3Elem = FinVec<(Key, Key, Key)>;

/// A sparse, finitely-supported vector with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FinVec<K: Ord + Clone> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> FinVec<K> {
    pub fn zero() -> Self {
        FinVec { terms: BTreeMap::new() }
    }

    /// The basis vector `k` with coefficient 1.
    pub fn basis(k: K) -> Self {
        let mut v = FinVec::zero();
        v.add_term(k, Scalar::one());
        v
    }

    /// `c · k` as a one-term vector (empty if `c == 0`).
    pub fn single(k: K, c: Scalar) -> Self {
        let mut v = FinVec::zero();
        v.add_term(k, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of keys with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·k` in place, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return FinVec::zero();
        }
        let mut out = FinVec::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = FinVec::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }

    /// Iterates `(key, coefficient)` in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    /// Pushes the vector through a key-wise linear map: each term
    /// `c·k` is replaced by `c · f(k)`.
    pub fn map_terms<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FinVec<K2>) -> FinVec<K2> {
        let mut out = FinVec::zero();
        for (k, c) in &self.terms {
            for (k2, c2) in f(k).terms {
                out.add_term(k2, &c2 * c);
            }
        }
        out
    }

    /// Applies a linear functional given on basis keys.
    pub fn eval(&self, mut f: impl FnMut(&K) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            acc += &(&f(k) * c);
        }
        acc
    }

    /// Builds a vector from an iterator of terms, summing duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut out = FinVec::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for FinVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(k, c)| format!("({c})·{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `a ⊗ b` of two algebra elements.
pub fn tensor(a: &Elem, b: &Elem) -> TensorElem {
    let mut out = FinVec::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            out.add_term((ka.clone(), kb.clone()), ca * cb);
        }
    }
    out
}

/// `t ⊗ c` of a twofold tensor with an algebra element.
pub fn tensor3_right(t: &TensorElem, c: &Elem) -> Tensor3Elem {
    let mut out = FinVec::zero();
    for ((k1, k2), ct) in t.iter() {
        for (k3, cc) in c.iter() {
            out.add_term((k1.clone(), k2.clone(), k3.clone()), ct * cc);
        }
    }
    out
}

/// `a ⊗ t` of an algebra element with a twofold tensor.
pub fn tensor3_left(a: &Elem, t: &TensorElem) -> Tensor3Elem {
    let mut out = FinVec::zero();
    for (k1, ca) in a.iter() {
        for ((k2, k3), ct) in t.iter() {
            out.add_term((k1.clone(), k2.clone(), k3.clone()), ca * ct);
        }
    }
    out
}

/// Applies a linear map to the first leg of a twofold tensor.
pub fn on_leg1(t: &TensorElem, mut f: impl FnMut(&Key) -> Elem) -> TensorElem {
    t.map_terms(|(k1, k2)| {
        let image = f(k1);
        let mut out = FinVec::zero();
        for (k, c) in image.iter() {
            out.add_term((k.clone(), k2.clone()), c.clone());
        }
        out
    })
}

/// Applies a linear map to the second leg of a twofold tensor.
pub fn on_leg2(t: &TensorElem, mut f: impl FnMut(&Key) -> Elem) -> TensorElem {
    t.map_terms(|(k1, k2)| {
        let image = f(k2);
        let mut out = FinVec::zero();
        for (k, c) in image.iter() {
            out.add_term((k1.clone(), k.clone()), c.clone());
        }
        out
    })
}

/// Contracts the first leg with a linear functional: `(ω ⊗ ι)(t)`.
pub fn slice_leg1(t: &TensorElem, mut omega: impl FnMut(&Key) -> Scalar) -> Elem {
    let mut out = FinVec::zero();
    for ((k1, k2), c) in t.iter() {
        out.add_term(k2.clone(), &omega(k1) * c);
    }
    out
}

/// Contracts the second leg with a linear functional: `(ι ⊗ ω)(t)`.
pub fn slice_leg2(t: &TensorElem, mut omega: impl FnMut(&Key) -> Scalar) -> Elem {
    let mut out = FinVec::zero();
    for ((k1, k2), c) in t.iter() {
        out.add_term(k1.clone(), &omega(k2) * c);
    }
    out
}

/// Swaps the two legs of a twofold tensor (the flip map).
pub fn flip(t: &TensorElem) -> TensorElem {
    t.map_terms(|(k1, k2)| FinVec::basis((k2.clone(), k1.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(label: &str) -> Elem {
        FinVec::basis(label.to_string())
    }

    #[test]
    fn cancellation_drops_terms() {
        let mut v = e("a");
        v.add_term("a".to_string(), -Scalar::one());
        assert!(v.is_zero());
        assert_eq!(v.support_len(), 0);
    }

    #[test]
    fn tensor_is_bilinear() {
        let a = e("x").add(&e("y").scale(&Scalar::from_int(2)));
        let b = e("u").sub(&e("v"));
        let t = tensor(&a, &b);
        assert_eq!(t.coeff(&("y".into(), "v".into())), Scalar::from_int(-2));
        assert_eq!(t.support_len(), 4);
    }

    #[test]
    fn slices_undo_tensor() {
        let a = e("x").add(&e("y"));
        let b = e("u").scale(&Scalar::from_ratio(1, 2));
        let t = tensor(&a, &b);
        // Slicing with the "coefficient of x" functional recovers b.
        let got = slice_leg1(&t, |k| {
            if k == "x" { Scalar::one() } else { Scalar::zero() }
        });
        assert_eq!(got, b);
    }

    #[test]
    fn flip_is_involutive() {
        let t = tensor(&e("x"), &e("y").add(&e("z")));
        assert_eq!(flip(&flip(&t)), t);
        assert_eq!(flip(&t).coeff(&("y".into(), "x".into())), Scalar::one());
    }
}
