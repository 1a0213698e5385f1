//! Weak multiplier Hopf algebras built from a separability idempotent.
//!
//! The input is a pair of finite-dimensional algebras `B`, `C`, an
//! idempotent `E ∈ B ⊗ C` that is full in both legs, and a pair of
//! anti-isomorphisms `S_B : B → C`, `S_C : C → B` characterized by
//! `E(b⊗1) = E(1⊗S_B(b))` and `(1⊗c)E = (S_C(c)⊗1)E`. From this
//! data the module derives the distinguished faithful functionals
//! `φ_B`, `φ_C` (solving `(φ_B⊗ι)E = 1` and `(ι⊗φ_C)E = 1`) and
//! their KMS automorphisms `σ_B = (S_C S_B)⁻¹`, `σ_C = S_B S_C`, and
//! builds two instances:
//!
//! * `A = C ⊗ B` with `Δ(c⊗b) = c ⊗ E ⊗ b`, counit
//!   `ε(c⊗b) = φ_B(S_C(c)b)`, antipode `S(c⊗b) = S_B(b) ⊗ S_C(c)`
//!   and faithful two-sided integral `φ(c⊗b) = φ_C(c)φ_B(b)`;
//! * its dual realized as `B ◇ C`: the product
//!   `(u◇v)(u′◇v′) = ε(vu′)·(u◇v′)` depends only on the pairing
//!   `ε(vu) = φ_B(S_C(v)u)`, the coproduct is the tensor coproduct
//!   of `Δ_B(u) = F1(1⊗u)` and `Δ_C(v) = (v⊗1)F2`, the counit is
//!   `φ_B(u)φ_C(v)` and the antipode `Ŝ(u◇v) = S_B⁻¹(v) ◇ S_C⁻¹(u)`.
//!
//! Basis labels of `A` have the form `"c*b"` and ◇-basis labels the
//! form `"u&v"`, keeping the ◇-product visually distinct from the
//! tensor-algebra product (the two differ).

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::axioms::{LawReport, LawStatus};
use crate::finvec::{Elem, Key, TensorElem};
use crate::integrals::{IntegralsError, LinMap};
use crate::scalar::Scalar;
use crate::solve::{fin_rank, rank, solve_linear, SolveOutcome};
use crate::table::{TableData, TableError, TableWmha};
use crate::wmha::{apply_table, Functional, ProductTable};

/// Errors from the separability machinery.
#[derive(Debug, thiserror::Error)]
pub enum SepError {
    #[error("malformed separability data: {0}")]
    Parse(String),
    #[error("invalid separability data: {0} [{1}]")]
    Invalid(String, String),
    #[error("internal cross-check disagreement: {0}")]
    Internal(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Integrals(#[from] IntegralsError),
}

/// A finite-dimensional associative algebra by structure constants.
#[derive(Clone)]
pub struct Algebra {
    pub basis: Vec<Key>,
    pub product: ProductTable,
}

impl Algebra {
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                let entry = self
                    .product
                    .get(&(ka.clone(), kb.clone()))
                    .unwrap_or_else(|| panic!("product table missing ({ka},{kb})"));
                for (k, c) in entry.iter() {
                    out.add_term(k.clone(), &(ca * cb) * c);
                }
            }
        }
        out
    }

    /// The unit element, solved from the left-unit equations and
    /// verified as a right unit.
    pub fn unit(&self) -> Result<Elem, SepError> {
        let dim = self.basis.len();
        // Σ_i u_i (b_i b_k) = b_k for every k, read coordinate-wise.
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in &self.basis {
            for m in &self.basis {
                let mut row = Vec::with_capacity(dim);
                for i in &self.basis {
                    let p = self.mul(&Elem::basis(i.clone()), &Elem::basis(k.clone()));
                    row.push(p.coeff(m));
                }
                rows.push(row);
                rhs.push(if k == m { Scalar::one() } else { Scalar::zero() });
            }
        }
        let u = match solve_linear(&rows, &rhs) {
            SolveOutcome::Solution { particular, .. } => Elem::from_terms(
                self.basis.iter().cloned().zip(particular.into_iter()),
            ),
            SolveOutcome::Inconsistent => {
                return Err(SepError::Internal("algebra has no unit".into()))
            }
        };
        for k in &self.basis {
            let e = Elem::basis(k.clone());
            if self.mul(&e, &u) != e || self.mul(&u, &e) != e {
                return Err(SepError::Internal(
                    "computed unit fails the unit law".into(),
                ));
            }
        }
        Ok(u)
    }
}

/// The raw separability datum `(B, C, E, S_B, S_C)`.
pub struct SepData {
    pub b: Algebra,
    pub c: Algebra,
    /// `E` as an element of `B ⊗ C` (keys `(b-label, c-label)`).
    pub e: TensorElem,
    /// `S_B : B → C`, values in the `C` basis.
    pub s_b: LinMap,
    /// `S_C : C → B`, values in the `B` basis.
    pub s_c: LinMap,
}

/// Data derived from a valid separability idempotent.
pub struct SepDerived {
    pub phi_b: Functional,
    pub phi_c: Functional,
    pub sigma_b: LinMap,
    pub sigma_c: LinMap,
    pub sigma_b_inv: LinMap,
    pub sigma_c_inv: LinMap,
    pub s_b_inv: LinMap,
    pub s_c_inv: LinMap,
    pub unit_b: Elem,
    pub unit_c: Elem,
}

// ---------------------------------------------------------------------
// Parsing and generators
// ---------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraSpec {
    basis: Vec<String>,
    /// `product[left][right] = [[label, coefficient], ...]`.
    product: BTreeMap<String, BTreeMap<String, Vec<(String, String)>>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum SepGenerator {
    /// `B = C = K(X)` with `E = Σ_x δ_x ⊗ δ_{τ(x)}` for a bijection
    /// `τ` given as a 1-based permutation of `1..=points`.
    Bijection { points: usize, map: Vec<usize> },
    /// Full matrix algebra `B = M_n`, `C = M_n^{op}` with the
    /// weighted-trace idempotent `E = Σ (1/g_i) e_ij ⊗ f_ji`; the
    /// weights must satisfy `Σ 1/g_i = 1`.
    Matrix { weights: Vec<String> },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SepSpec {
    b: Option<AlgebraSpec>,
    c: Option<AlgebraSpec>,
    /// `[[b-label, c-label, coefficient], ...]`.
    e: Option<Vec<(String, String, String)>>,
    s_b: Option<BTreeMap<String, Vec<(String, String)>>>,
    s_c: Option<BTreeMap<String, Vec<(String, String)>>>,
    generator: Option<SepGenerator>,
}

fn parse_scalar(s: &str) -> Result<Scalar, SepError> {
    s.parse::<Scalar>()
        .map_err(|e| SepError::Parse(format!("bad coefficient {s:?}: {e}")))
}

fn parse_elem(pairs: &[(String, String)]) -> Result<Elem, SepError> {
    let mut out = Elem::zero();
    for (k, v) in pairs {
        out.add_term(k.clone(), parse_scalar(v)?);
    }
    Ok(out)
}

fn parse_algebra(spec: &AlgebraSpec) -> Result<Algebra, SepError> {
    for k in &spec.basis {
        if k.contains('*') || k.contains('&') {
            return Err(SepError::Parse(format!(
                "basis label {k:?} may not contain '*' or '&'"
            )));
        }
    }
    let mut product = ProductTable::new();
    for l in &spec.basis {
        for r in &spec.basis {
            let entry = spec
                .product
                .get(l)
                .and_then(|m| m.get(r))
                .ok_or_else(|| {
                    SepError::Parse(format!("product table missing ({l},{r})"))
                })?;
            product.insert((l.clone(), r.clone()), parse_elem(entry)?);
        }
    }
    Ok(Algebra { basis: spec.basis.clone(), product })
}

fn parse_linmap(
    domain: &[Key],
    entries: &BTreeMap<String, Vec<(String, String)>>,
) -> Result<LinMap, SepError> {
    let mut out = LinMap::new();
    for k in domain {
        let entry = entries.get(k).ok_or_else(|| {
            SepError::Parse(format!("antipode table missing {k}"))
        })?;
        out.insert(k.clone(), parse_elem(entry)?);
    }
    Ok(out)
}

/// `B = C = K(X)` with `E` supported on the graph of a bijection.
pub fn bijection_sep(points: usize, map: &[usize]) -> Result<SepData, SepError> {
    if map.len() != points
        || map.iter().any(|&i| i < 1 || i > points)
        || (1..=points).any(|i| !map.contains(&i))
    {
        return Err(SepError::Parse(
            "bijection map must be a 1-based permutation of the points".into(),
        ));
    }
    let labels: Vec<Key> = (1..=points).map(|i| format!("p{i}")).collect();
    let mut product = ProductTable::new();
    for l in &labels {
        for r in &labels {
            let val = if l == r { Elem::basis(l.clone()) } else { Elem::zero() };
            product.insert((l.clone(), r.clone()), val);
        }
    }
    let alg = Algebra { basis: labels.clone(), product };
    let mut e = TensorElem::zero();
    let mut s_b = LinMap::new();
    let mut s_c = LinMap::new();
    for (i, &t) in map.iter().enumerate() {
        let x = &labels[i];
        let tx = &labels[t - 1];
        e.add_term((x.clone(), tx.clone()), Scalar::one());
        s_b.insert(x.clone(), Elem::basis(tx.clone()));
        s_c.insert(tx.clone(), Elem::basis(x.clone()));
    }
    Ok(SepData { b: alg.clone(), c: alg, e, s_b, s_c })
}

/// `B = M_n`, `C = M_n^{op}` with the weighted-trace idempotent.
pub fn matrix_sep(weights: &[Scalar]) -> Result<SepData, SepError> {
    let n = weights.len();
    if n == 0 || weights.iter().any(|g| g.is_zero()) {
        return Err(SepError::Parse("weights must be nonzero".into()));
    }
    let mut norm = Scalar::zero();
    for g in weights {
        norm += &g.inv();
    }
    if !norm.is_one() {
        return Err(SepError::Parse(
            "weights must satisfy Σ 1/g_i = 1 (otherwise E is not idempotent)"
                .into(),
        ));
    }
    let b_labels: Vec<Key> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| format!("e{i}{j}"))).collect();
    let c_labels: Vec<Key> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| format!("f{i}{j}"))).collect();
    let unit_product = |labels: &[Key], opposite: bool| {
        let mut product = ProductTable::new();
        for l in labels {
            for r in labels {
                let (x, y) = if opposite { (r, l) } else { (l, r) };
                // e_ij e_kl = δ_jk e_il on matrix units.
                let (i, j) = (&x[1..2], &x[2..3]);
                let (k, m) = (&y[1..2], &y[2..3]);
                let val = if j == k {
                    Elem::basis(format!("{}{}{}", &l[0..1], i, m))
                } else {
                    Elem::zero()
                };
                product.insert((l.clone(), r.clone()), val);
            }
        }
        product
    };
    let b = Algebra { basis: b_labels.clone(), product: unit_product(&b_labels, false) };
    let c = Algebra { basis: c_labels.clone(), product: unit_product(&c_labels, true) };
    let mut e = TensorElem::zero();
    let mut s_b = LinMap::new();
    let mut s_c = LinMap::new();
    for i in 1..=n {
        for j in 1..=n {
            e.add_term(
                (format!("e{i}{j}"), format!("f{j}{i}")),
                weights[i - 1].inv(),
            );
            // S_B(e_ij) = f_ij and S_C(f_ij) = (g_j/g_i) e_ij.
            s_b.insert(format!("e{i}{j}"), Elem::basis(format!("f{i}{j}")));
            let ratio = &weights[j - 1] * &weights[i - 1].inv();
            s_c.insert(
                format!("f{i}{j}"),
                Elem::single(format!("e{i}{j}"), ratio),
            );
        }
    }
    Ok(SepData { b, c, e, s_b, s_c })
}

/// Parses a separability datum from JSON: either explicit tables
/// (`b`, `c`, `e`, `s_b`, `s_c`) or a `generator`.
pub fn from_json(v: &serde_json::Value) -> Result<SepData, SepError> {
    let spec: SepSpec = serde_json::from_value(v.clone())
        .map_err(|e| SepError::Parse(e.to_string()))?;
    match (&spec.generator, &spec.b) {
        (Some(g), None) => {
            if spec.c.is_some() || spec.e.is_some() || spec.s_b.is_some() || spec.s_c.is_some() {
                return Err(SepError::Parse(
                    "give either a generator or explicit tables, not both".into(),
                ));
            }
            match g {
                SepGenerator::Bijection { points, map } => bijection_sep(*points, map),
                SepGenerator::Matrix { weights } => {
                    let ws = weights
                        .iter()
                        .map(|s| parse_scalar(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    matrix_sep(&ws)
                }
            }
        }
        (None, Some(bspec)) => {
            let b = parse_algebra(bspec)?;
            let c = parse_algebra(spec.c.as_ref().ok_or_else(|| {
                SepError::Parse("missing algebra c".into())
            })?)?;
            let mut e = TensorElem::zero();
            for (bk, ck, coef) in spec.e.as_ref().ok_or_else(|| {
                SepError::Parse("missing idempotent e".into())
            })? {
                if !b.basis.contains(bk) || !c.basis.contains(ck) {
                    return Err(SepError::Parse(format!(
                        "idempotent references unknown labels ({bk},{ck})"
                    )));
                }
                e.add_term((bk.clone(), ck.clone()), parse_scalar(coef)?);
            }
            let s_b = parse_linmap(
                &b.basis,
                spec.s_b.as_ref().ok_or_else(|| SepError::Parse("missing s_b".into()))?,
            )?;
            let s_c = parse_linmap(
                &c.basis,
                spec.s_c.as_ref().ok_or_else(|| SepError::Parse("missing s_c".into()))?,
            )?;
            Ok(SepData { b, c, e, s_b, s_c })
        }
        _ => Err(SepError::Parse(
            "give either a generator or explicit tables".into(),
        )),
    }
}

// ---------------------------------------------------------------------
// Validation and derived functionals
// ---------------------------------------------------------------------

/// Inverts a bijective linear map between two (generally different)
/// bases.
fn invert_crossmap(
    domain: &[Key],
    codomain: &[Key],
    table: &LinMap,
) -> Result<LinMap, SepError> {
    let dim = domain.len();
    if codomain.len() != dim {
        return Err(SepError::Internal("dimension mismatch in inversion".into()));
    }
    // Rows indexed by codomain coordinates, columns by domain basis.
    let rows: Vec<Vec<Scalar>> = codomain
        .iter()
        .map(|m| domain.iter().map(|k| table[k].coeff(m)).collect())
        .collect();
    let mut out = LinMap::new();
    for (r, m) in codomain.iter().enumerate() {
        let mut rhs = vec![Scalar::zero(); dim];
        rhs[r] = Scalar::one();
        match solve_linear(&rows, &rhs) {
            SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
                out.insert(
                    m.clone(),
                    Elem::from_terms(domain.iter().cloned().zip(particular)),
                );
            }
            _ => {
                return Err(SepError::Internal(
                    "linear map is not invertible".into(),
                ))
            }
        }
    }
    Ok(out)
}

fn tensor_mul(data: &SepData, s: &TensorElem, t: &TensorElem) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((b1, c1), x) in s.iter() {
        for ((b2, c2), y) in t.iter() {
            let bb = data.b.mul(&Elem::basis(b1.clone()), &Elem::basis(b2.clone()));
            let cc = data.c.mul(&Elem::basis(c1.clone()), &Elem::basis(c2.clone()));
            for (bk, xb) in bb.iter() {
                for (ck, xc) in cc.iter() {
                    out.add_term((bk.clone(), ck.clone()), &(&(x * y) * xb) * xc);
                }
            }
        }
    }
    out
}

fn report(name: &'static str, witness: Option<String>) -> LawReport {
    LawReport {
        name: name.to_string(),
        status: if witness.is_some() { LawStatus::Fail } else { LawStatus::Ok },
        witness,
    }
}

fn check_algebra(alg: &Algebra) -> Option<String> {
    for l in &alg.basis {
        for r in &alg.basis {
            if !alg.product.contains_key(&(l.clone(), r.clone())) {
                return Some(format!("product missing at ({l},{r})"));
            }
        }
    }
    for x in &alg.basis {
        for y in &alg.basis {
            for z in &alg.basis {
                let ex = Elem::basis(x.clone());
                let ey = Elem::basis(y.clone());
                let ez = Elem::basis(z.clone());
                if alg.mul(&alg.mul(&ex, &ey), &ez) != alg.mul(&ex, &alg.mul(&ey, &ez)) {
                    return Some(format!("associativity fails at ({x},{y},{z})"));
                }
            }
        }
    }
    if alg.unit().is_err() {
        return Some("no unit element".into());
    }
    None
}

/// Checks every defining invariant of a separability idempotent and
/// returns one report per named check (`ok`/`fail` with witness).
pub fn validate_sep(data: &SepData) -> Vec<LawReport> {
    let mut out = Vec::new();
    out.push(report("algebra-b-wellformed", check_algebra(&data.b)));
    out.push(report("algebra-c-wellformed", check_algebra(&data.c)));
    if out.iter().any(|r| r.status == LawStatus::Fail) {
        return out;
    }
    // E idempotent.
    let ee = tensor_mul(data, &data.e, &data.e);
    out.push(report(
        "idempotent-e",
        (ee != data.e).then(|| "E·E ≠ E".to_string()),
    ));
    // E full: left legs span B, right legs span C.
    let mut left_legs: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut right_legs: BTreeMap<Key, Elem> = BTreeMap::new();
    for ((bk, ck), coef) in data.e.iter() {
        left_legs
            .entry(ck.clone())
            .or_insert_with(Elem::zero)
            .add_term(bk.clone(), coef.clone());
        right_legs
            .entry(bk.clone())
            .or_insert_with(Elem::zero)
            .add_term(ck.clone(), coef.clone());
    }
    let lv: Vec<Elem> = left_legs.into_values().collect();
    let rv: Vec<Elem> = right_legs.into_values().collect();
    out.push(report(
        "full-e",
        (fin_rank(&lv) != data.b.basis.len() || fin_rank(&rv) != data.c.basis.len())
            .then(|| {
                format!(
                    "leg ranks {}/{} vs dims {}/{}",
                    fin_rank(&lv),
                    fin_rank(&rv),
                    data.b.basis.len(),
                    data.c.basis.len()
                )
            }),
    ));
    // S_B anti-homomorphism, bijective, and the defining identity.
    let anti = |alg: &Algebra, cod: &Algebra, s: &LinMap| -> Option<String> {
        for x in &alg.basis {
            for y in &alg.basis {
                let lhs = apply_table(s, &alg.mul(&Elem::basis(x.clone()), &Elem::basis(y.clone())));
                let rhs = cod.mul(&apply_table(s, &Elem::basis(y.clone())), &apply_table(s, &Elem::basis(x.clone())));
                if lhs != rhs {
                    return Some(format!("not an anti-homomorphism at ({x},{y})"));
                }
            }
        }
        let images: Vec<Elem> = alg.basis.iter().map(|k| s[k].clone()).collect();
        if fin_rank(&images) != alg.basis.len() {
            return Some("not bijective".into());
        }
        None
    };
    let mut s_b_fail = anti(&data.b, &data.c, &data.s_b);
    if s_b_fail.is_none() {
        for bk in &data.b.basis {
            // E(b⊗1) = E(1⊗S_B(b)).
            let lhs = tensor_mul(
                data,
                &data.e,
                &crate::finvec::tensor(
                    &Elem::basis(bk.clone()),
                    &unit_or_zero(&data.c),
                ),
            );
            let rhs = tensor_mul(
                data,
                &data.e,
                &crate::finvec::tensor(&unit_or_zero(&data.b), &data.s_b[bk]),
            );
            if lhs != rhs {
                s_b_fail = Some(format!("E(b⊗1) ≠ E(1⊗S_B(b)) at {bk}"));
                break;
            }
        }
    }
    out.push(report("antipode-s-b", s_b_fail));
    let mut s_c_fail = anti(&data.c, &data.b, &data.s_c);
    if s_c_fail.is_none() {
        for ck in &data.c.basis {
            // (1⊗c)E = (S_C(c)⊗1)E.
            let lhs = tensor_mul(
                data,
                &crate::finvec::tensor(&unit_or_zero(&data.b), &Elem::basis(ck.clone())),
                &data.e,
            );
            let rhs = tensor_mul(
                data,
                &crate::finvec::tensor(&data.s_c[ck], &unit_or_zero(&data.c)),
                &data.e,
            );
            if lhs != rhs {
                s_c_fail = Some(format!("(1⊗c)E ≠ (S_C(c)⊗1)E at {ck}"));
                break;
            }
        }
    }
    out.push(report("antipode-s-c", s_c_fail));
    if out.iter().any(|r| r.status == LawStatus::Fail) {
        return out;
    }
    // Distinguished functionals exist, are unique and faithful with
    // the prescribed KMS automorphisms.
    match derive_functionals(data) {
        Ok(derived) => {
            let kms = |alg: &Algebra, phi: &Functional, sigma: &LinMap| -> Option<String> {
                for x in &alg.basis {
                    for y in &alg.basis {
                        let ex = Elem::basis(x.clone());
                        let ey = Elem::basis(y.clone());
                        let lhs = phi.eval(&alg.mul(&ex, &ey));
                        let rhs = phi.eval(&alg.mul(&ey, &apply_table(sigma, &ex)));
                        if lhs != rhs {
                            return Some(format!("KMS fails at ({x},{y})"));
                        }
                    }
                }
                let gram: Vec<Vec<Scalar>> = alg
                    .basis
                    .iter()
                    .map(|x| {
                        alg.basis
                            .iter()
                            .map(|y| {
                                phi.eval(&alg.mul(
                                    &Elem::basis(x.clone()),
                                    &Elem::basis(y.clone()),
                                ))
                            })
                            .collect()
                    })
                    .collect();
                (rank(&gram) != alg.basis.len()).then(|| "functional is not faithful".into())
            };
            out.push(report("functional-b", kms(&data.b, &derived.phi_b, &derived.sigma_b)));
            out.push(report("functional-c", kms(&data.c, &derived.phi_c, &derived.sigma_c)));
        }
        Err(e) => {
            out.push(report("functional-b", Some(e.to_string())));
        }
    }
    out
}

fn unit_or_zero(alg: &Algebra) -> Elem {
    alg.unit().unwrap_or_else(|_| Elem::zero())
}

/// Solves `(φ_B⊗ι)E = 1` and `(ι⊗φ_C)E = 1` (unique by fullness)
/// and forms the KMS automorphisms `σ_B = (S_C S_B)⁻¹`,
/// `σ_C = S_B S_C` together with the inverses of all four maps.
pub fn derive_functionals(data: &SepData) -> Result<SepDerived, SepError> {
    let unit_b = data.b.unit()?;
    let unit_c = data.c.unit()?;
    // φ_B: Σ_i x_i E[(b_i, ·)] = 1_C coordinate-wise.
    let solve_phi = |domain: &[Key],
                     codomain: &[Key],
                     entry: &dyn Fn(&Key, &Key) -> Scalar,
                     target: &Elem|
     -> Result<Functional, SepError> {
        let rows: Vec<Vec<Scalar>> = codomain
            .iter()
            .map(|m| domain.iter().map(|k| entry(k, m)).collect())
            .collect();
        let rhs: Vec<Scalar> = codomain.iter().map(|m| target.coeff(m)).collect();
        match solve_linear(&rows, &rhs) {
            SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
                Ok(Functional(Elem::from_terms(
                    domain.iter().cloned().zip(particular),
                )))
            }
            SolveOutcome::Solution { .. } => Err(SepError::Internal(
                "distinguished functional is not unique (E not full)".into(),
            )),
            SolveOutcome::Inconsistent => Err(SepError::Internal(
                "no distinguished functional (E not separable)".into(),
            )),
        }
    };
    let phi_b = solve_phi(
        &data.b.basis,
        &data.c.basis,
        &|bk, ck| data.e.coeff(&(bk.clone(), ck.clone())),
        &unit_c,
    )?;
    let phi_c = solve_phi(
        &data.c.basis,
        &data.b.basis,
        &|ck, bk| data.e.coeff(&(bk.clone(), ck.clone())),
        &unit_b,
    )?;
    // σ_B = (S_C S_B)⁻¹ on B; σ_C = S_B S_C on C.
    let mut scsb = LinMap::new();
    for bk in &data.b.basis {
        scsb.insert(bk.clone(), apply_table(&data.s_c, &data.s_b[bk]));
    }
    let mut sbsc = LinMap::new();
    for ck in &data.c.basis {
        sbsc.insert(ck.clone(), apply_table(&data.s_b, &data.s_c[ck]));
    }
    let sigma_b = crate::integrals::invert_linmap(&data.b.basis, &scsb)?;
    let sigma_c = sbsc;
    let sigma_b_inv = scsb;
    let sigma_c_inv = crate::integrals::invert_linmap(&data.c.basis, &sigma_c)?;
    let s_b_inv = invert_crossmap(&data.b.basis, &data.c.basis, &data.s_b)?;
    let s_c_inv = invert_crossmap(&data.c.basis, &data.b.basis, &data.s_c)?;
    Ok(SepDerived {
        phi_b,
        phi_c,
        sigma_b,
        sigma_c,
        sigma_b_inv,
        sigma_c_inv,
        s_b_inv,
        s_c_inv,
        unit_b,
        unit_c,
    })
}

// ---------------------------------------------------------------------
// The weak multiplier Hopf algebra A = C ⊗ B
// ---------------------------------------------------------------------

fn a_label(c: &Key, b: &Key) -> Key {
    format!("{c}*{b}")
}

fn diamond_label(u: &Key, v: &Key) -> Key {
    format!("{u}&{v}")
}

/// Embeds `c ⊗ b` (elements of `C` and `B`) as an element of `A`.
fn a_elem(c: &Elem, b: &Elem) -> Elem {
    let mut out = Elem::zero();
    for (ck, x) in c.iter() {
        for (bk, y) in b.iter() {
            out.add_term(a_label(ck, bk), x * y);
        }
    }
    out
}

fn diamond_elem(u: &Elem, v: &Elem) -> Elem {
    let mut out = Elem::zero();
    for (uk, x) in u.iter() {
        for (vk, y) in v.iter() {
            out.add_term(diamond_label(uk, vk), x * y);
        }
    }
    out
}

fn first_failure(reports: &[LawReport]) -> Option<&LawReport> {
    reports.iter().find(|r| r.status == LawStatus::Fail)
}

/// Builds the weak multiplier Hopf algebra `A = C ⊗ B` attached to a
/// separability idempotent. Validates the datum first.
pub fn build_sep_wmha(data: &SepData) -> Result<TableWmha, SepError> {
    let reports = validate_sep(data);
    if let Some(f) = first_failure(&reports) {
        return Err(SepError::Invalid(
            f.name.clone(),
            f.witness.clone().unwrap_or_default(),
        ));
    }
    let derived = derive_functionals(data)?;
    let mut basis = Vec::new();
    for c in &data.c.basis {
        for b in &data.b.basis {
            basis.push(a_label(c, b));
        }
    }
    let mut product = ProductTable::new();
    let mut coproduct: BTreeMap<Key, TensorElem> = BTreeMap::new();
    let mut antipode: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut antipode_inv: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut counit_vals = Vec::new();
    for c in &data.c.basis {
        for b in &data.b.basis {
            let key = a_label(c, b);
            let ec = Elem::basis(c.clone());
            let eb = Elem::basis(b.clone());
            for c2 in &data.c.basis {
                for b2 in &data.b.basis {
                    let cc = data.c.mul(&ec, &Elem::basis(c2.clone()));
                    let bb = data.b.mul(&eb, &Elem::basis(b2.clone()));
                    product.insert((key.clone(), a_label(c2, b2)), a_elem(&cc, &bb));
                }
            }
            // Δ(c⊗b) = c ⊗ E ⊗ b.
            let mut cop = TensorElem::zero();
            for ((bi, cj), coef) in data.e.iter() {
                cop.add_term((a_label(c, bi), a_label(cj, b)), coef.clone());
            }
            coproduct.insert(key.clone(), cop);
            // ε(c⊗b) = φ_B(S_C(c)b), cross-checked against φ_C(cS_B(b)).
            let via_b = derived.phi_b.eval(&data.b.mul(&data.s_c[c], &eb));
            let via_c = derived.phi_c.eval(&data.c.mul(&ec, &data.s_b[b]));
            if via_b != via_c {
                return Err(SepError::Internal(format!(
                    "counit routes disagree at {key}"
                )));
            }
            counit_vals.push((key.clone(), via_b));
            // S(c⊗b) = S_B(b) ⊗ S_C(c); S⁻¹(c⊗b) = S_C⁻¹(b) ⊗ S_B⁻¹(c).
            antipode.insert(key.clone(), a_elem(&data.s_b[b], &data.s_c[c]));
            antipode_inv
                .insert(key.clone(), a_elem(&derived.s_c_inv[b], &derived.s_b_inv[c]));
        }
    }
    let counit = Functional::from_values(counit_vals);
    // φ(c⊗b) = φ_C(c)φ_B(b): faithful, two-sided.
    let integral = Functional::from_fn(&basis, |k| {
        let (c, b) = k.split_once('*').expect("composite label");
        &derived.phi_c.value(&c.to_string()) * &derived.phi_b.value(&b.to_string())
    });
    Ok(TableWmha::new(TableData {
        name: format!(
            "sep [dim {}x{}]",
            data.c.basis.len(),
            data.b.basis.len()
        ),
        basis,
        product,
        coproduct,
        counit,
        antipode,
        antipode_inv,
        unit: a_elem(&derived.unit_c, &derived.unit_b),
        integral,
    })?)
}

// ---------------------------------------------------------------------
// The dual B ◇ C
// ---------------------------------------------------------------------

/// The pairing scalar `ε(vu) = φ_B(S_C(v)u)` driving the ◇-product.
fn eps_pair(data: &SepData, derived: &SepDerived, v: &Elem, u: &Elem) -> Scalar {
    let scv = apply_table(&data.s_c, v);
    derived.phi_b.eval(&data.b.mul(&scv, u))
}

/// `Δ_B(u) = F1(1⊗u)` with `F1 = (ι⊗S_C)E ∈ B ⊗ B`.
fn delta_b(data: &SepData, u: &Elem) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((bi, cj), coef) in data.e.iter() {
        let second = data.b.mul(&data.s_c[cj], u);
        for (k, x) in second.iter() {
            out.add_term((bi.clone(), k.clone()), coef * x);
        }
    }
    out
}

/// `Δ_C(v) = (v⊗1)F2` with `F2 = (S_B⊗ι)E ∈ C ⊗ C`.
fn delta_c(data: &SepData, v: &Elem) -> TensorElem {
    let mut out = TensorElem::zero();
    for ((bi, cj), coef) in data.e.iter() {
        let first = data.c.mul(v, &data.s_b[bi]);
        for (k, x) in first.iter() {
            out.add_term((k.clone(), cj.clone()), coef * x);
        }
    }
    out
}

/// The unit of `B ◇ C`: the element acting as the identity for the
/// ◇-product (the dual basis of the pairing `ε(vu)`).
fn diamond_unit(data: &SepData, derived: &SepDerived) -> Result<Elem, SepError> {
    let nb = data.b.basis.len();
    let nc = data.c.basis.len();
    if nb != nc {
        return Err(SepError::Internal(
            "B and C must have equal dimension".into(),
        ));
    }
    // P[j][l] = ε(v_j u_l); solve X·P = I row by row.
    let p: Vec<Vec<Scalar>> = data
        .c
        .basis
        .iter()
        .map(|vj| {
            data.b
                .basis
                .iter()
                .map(|ul| {
                    eps_pair(
                        data,
                        derived,
                        &Elem::basis(vj.clone()),
                        &Elem::basis(ul.clone()),
                    )
                })
                .collect()
        })
        .collect();
    // Transposed system: M[l][j] = P[j][l].
    let m: Vec<Vec<Scalar>> = (0..nb)
        .map(|l| (0..nc).map(|j| p[j][l].clone()).collect())
        .collect();
    let mut unit = Elem::zero();
    for (i, ui) in data.b.basis.iter().enumerate() {
        let mut rhs = vec![Scalar::zero(); nb];
        rhs[i] = Scalar::one();
        match solve_linear(&m, &rhs) {
            SolveOutcome::Solution { particular, kernel } if kernel.is_empty() => {
                for (j, x) in particular.into_iter().enumerate() {
                    unit.add_term(diamond_label(ui, &data.c.basis[j]), x);
                }
            }
            _ => {
                return Err(SepError::Internal(
                    "ε-pairing is degenerate: no ◇-unit".into(),
                ))
            }
        }
    }
    Ok(unit)
}

/// Builds the dual realized directly on `B ◇ C`.
pub fn build_sep_dual(data: &SepData) -> Result<TableWmha, SepError> {
    let reports = validate_sep(data);
    if let Some(f) = first_failure(&reports) {
        return Err(SepError::Invalid(
            f.name.clone(),
            f.witness.clone().unwrap_or_default(),
        ));
    }
    let derived = derive_functionals(data)?;
    let mut basis = Vec::new();
    for u in &data.b.basis {
        for v in &data.c.basis {
            basis.push(diamond_label(u, v));
        }
    }
    let mut product = ProductTable::new();
    let mut coproduct: BTreeMap<Key, TensorElem> = BTreeMap::new();
    let mut antipode: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut antipode_inv: BTreeMap<Key, Elem> = BTreeMap::new();
    let mut counit_vals = Vec::new();
    let mut integral_vals = Vec::new();
    for u in &data.b.basis {
        for v in &data.c.basis {
            let key = diamond_label(u, v);
            let eu = Elem::basis(u.clone());
            let ev = Elem::basis(v.clone());
            // (u◇v)(u′◇v′) = ε(vu′)·(u◇v′).
            for u2 in &data.b.basis {
                let factor =
                    eps_pair(data, &derived, &ev, &Elem::basis(u2.clone()));
                for v2 in &data.c.basis {
                    product.insert(
                        (key.clone(), diamond_label(u2, v2)),
                        Elem::single(diamond_label(u, v2), factor.clone()),
                    );
                }
            }
            // Δ̂(u◇v) = Σ (u₁◇v₁) ⊗ (u₂◇v₂).
            let du = delta_b(data, &eu);
            let dv = delta_c(data, &ev);
            let mut cop = TensorElem::zero();
            for ((u1, u2), x) in du.iter() {
                for ((v1, v2), y) in dv.iter() {
                    cop.add_term(
                        (diamond_label(u1, v1), diamond_label(u2, v2)),
                        x * y,
                    );
                }
            }
            coproduct.insert(key.clone(), cop);
            counit_vals.push((
                key.clone(),
                &derived.phi_b.value(u) * &derived.phi_c.value(v),
            ));
            // Ŝ(u◇v) = S_B⁻¹(v) ◇ S_C⁻¹(u); Ŝ⁻¹(u◇v) = S_C(v) ◇ S_B(u).
            antipode.insert(
                key.clone(),
                diamond_elem(&derived.s_b_inv[v], &derived.s_c_inv[u]),
            );
            antipode_inv.insert(
                key.clone(),
                diamond_elem(&apply_table(&data.s_c, &ev), &apply_table(&data.s_b, &eu)),
            );
            // Designated faithful left integral: φ̂(u◇v) = φ_B(uS_C(v)).
            integral_vals.push((
                key.clone(),
                derived
                    .phi_b
                    .eval(&data.b.mul(&eu, &apply_table(&data.s_c, &ev))),
            ));
        }
    }
    let unit = diamond_unit(data, &derived)?;
    Ok(TableWmha::new(TableData {
        name: format!(
            "sep-dual [dim {}x{}]",
            data.b.basis.len(),
            data.c.basis.len()
        ),
        basis,
        product,
        coproduct,
        counit: Functional::from_values(counit_vals),
        antipode,
        antipode_inv,
        unit,
        integral: Functional::from_values(integral_vals),
    })?)
}

// ---------------------------------------------------------------------
// Integrals on B ◇ C, the modular element and Radford's formula
// ---------------------------------------------------------------------

/// Outcome of the dual-side integral and Radford verification.
pub struct SepDualReport {
    /// `ψ̂_x(u◇v) = φ_C(S_B(u)xv)` for `x` over the basis of `C`
    /// (and the unit).
    pub psi_family: Vec<Functional>,
    /// `φ̂_y(u◇v) = φ_B(uyS_C(v))` for `y` over the basis of `B`.
    pub phi_family: Vec<Functional>,
    /// Modular element `δ` with `φ̂(Ŝ(w)) = φ̂(wδ)`.
    pub delta: Elem,
    pub reports: Vec<LawReport>,
}

impl SepDualReport {
    pub fn ok(&self) -> bool {
        self.reports.iter().all(|r| r.status == LawStatus::Ok)
    }
}

/// Builds the integral families on `B ◇ C`, the modular element `δ`
/// (`δ(u◇v) = σ_B⁻²(u)◇v`, `(u◇v)δ = u◇σ_C⁻²(v)`) and verifies
/// invariance, completeness, `φ̂∘Ŝ = φ̂(·δ)`,
/// `S²(u◇v) = σ_B(u)◇σ_C⁻¹(v)` and Radford's formula
/// `S⁴ = δ⁻¹(·)δ`.
pub fn sep_dual_integrals_and_radford(
    data: &SepData,
    dual: &TableWmha,
) -> Result<SepDualReport, SepError> {
    use crate::integrals::{
        enumerate_left_integrals, enumerate_right_integrals, is_left_invariant,
        is_right_invariant,
    };
    use crate::wmha::Wmha;

    let derived = derive_functionals(data)?;
    let basis = dual.basis();
    let mut reports = Vec::new();

    // ψ̂_x family (x over the C basis and the unit of C).
    let mut psi_family = Vec::new();
    let mut xs: Vec<Elem> =
        data.c.basis.iter().map(|k| Elem::basis(k.clone())).collect();
    xs.push(derived.unit_c.clone());
    let mut psi_fail = None;
    for x in &xs {
        let psi = Functional::from_fn(&basis, |key| {
            let (u, v) = key.split_once('&').expect("diamond label");
            let sbu = apply_table(&data.s_b, &Elem::basis(u.to_string()));
            let inner = data.c.mul(&data.c.mul(&sbu, x), &Elem::basis(v.to_string()));
            derived.phi_c.eval(&inner)
        });
        if !psi.is_zero() && !is_right_invariant(dual, &psi) && psi_fail.is_none() {
            psi_fail = Some("ψ̂_x not right invariant".to_string());
        }
        psi_family.push(psi);
    }
    reports.push(report("psi-family-right-invariant", psi_fail));

    // φ̂_y family (y over the B basis).
    let mut phi_family = Vec::new();
    let mut phi_fail = None;
    for yk in &data.b.basis {
        let y = Elem::basis(yk.clone());
        let phi = Functional::from_fn(&basis, |key| {
            let (u, v) = key.split_once('&').expect("diamond label");
            let scv = apply_table(&data.s_c, &Elem::basis(v.to_string()));
            let inner = data.b.mul(&data.b.mul(&Elem::basis(u.to_string()), &y), &scv);
            derived.phi_b.eval(&inner)
        });
        if !phi.is_zero() && !is_left_invariant(dual, &phi) && phi_fail.is_none() {
            phi_fail = Some("φ̂_y not left invariant".to_string());
        }
        phi_family.push(phi);
    }
    reports.push(report("phi-family-left-invariant", phi_fail));

    // Completeness: the invariant-functional spaces have dimensions
    // dim B (left) and dim C (right), matching the families.
    let lefts = enumerate_left_integrals(dual);
    let rights = enumerate_right_integrals(dual);
    reports.push(report(
        "integral-space-dimensions",
        (lefts.len() != data.b.basis.len() || rights.len() != data.c.basis.len())
            .then(|| {
                format!(
                    "left/right space dims {}/{} vs {}/{}",
                    lefts.len(),
                    rights.len(),
                    data.b.basis.len(),
                    data.c.basis.len()
                )
            }),
    ));
    let phi_vecs: Vec<Elem> = phi_family.iter().map(|f| f.0.clone()).collect();
    let left_vecs: Vec<Elem> = lefts.iter().map(|f| f.0.clone()).collect();
    let psi_vecs: Vec<Elem> = psi_family.iter().map(|f| f.0.clone()).collect();
    let right_vecs: Vec<Elem> = rights.iter().map(|f| f.0.clone()).collect();
    reports.push(report(
        "integral-families-complete",
        (!crate::solve::fin_span_eq(&phi_vecs, &left_vecs)
            || !crate::solve::fin_span_eq(&psi_vecs, &right_vecs))
        .then(|| "families do not span the integral spaces".to_string()),
    ));

    // δ as an element: apply the left-multiplier formula to the unit.
    let unit = crate::wmha::unit(dual);
    let twist = |powers: &LinMap, w: &Elem| -> Elem {
        // u◇v ↦ f(u)◇v for a linear map f on B.
        let mut out = Elem::zero();
        for (key, coef) in w.iter() {
            let (u, v) = key.split_once('&').expect("diamond label");
            let fu = apply_table(powers, &Elem::basis(u.to_string()));
            for (k, x) in fu.iter() {
                out.add_term(diamond_label(k, &v.to_string()), coef * x);
            }
        }
        out
    };
    let mut sigma_b_inv2 = LinMap::new();
    let mut sigma_b_2 = LinMap::new();
    for k in &data.b.basis {
        sigma_b_inv2.insert(
            k.clone(),
            apply_table(&derived.sigma_b_inv, &derived.sigma_b_inv[k]),
        );
        sigma_b_2.insert(
            k.clone(),
            apply_table(&derived.sigma_b, &derived.sigma_b[k]),
        );
    }
    let delta = twist(&sigma_b_inv2, &unit);
    let delta_inv = twist(&sigma_b_2, &unit);
    reports.push(report(
        "delta-invertible",
        (dual.product(&delta, &delta_inv) != unit
            || dual.product(&delta_inv, &delta) != unit)
            .then(|| "δ·δ⁻¹ ≠ 1".to_string()),
    ));
    // Right-multiplier form: (u◇v)δ = u◇σ_C⁻²(v).
    let mut right_form_fail = None;
    for key in &basis {
        let w = Elem::basis(key.clone());
        let (u, v) = key.split_once('&').expect("diamond label");
        let vcc = apply_table(
            &derived.sigma_c_inv,
            &apply_table(&derived.sigma_c_inv, &Elem::basis(v.to_string())),
        );
        let want = diamond_elem(&Elem::basis(u.to_string()), &vcc);
        if dual.product(&w, &delta) != want && right_form_fail.is_none() {
            right_form_fail = Some(format!("(u◇v)δ ≠ u◇σ_C⁻²(v) at {key}"));
        }
        // Left-multiplier form: δ(u◇v) = σ_B⁻²(u)◇v.
        let ucc = apply_table(&sigma_b_inv2, &Elem::basis(u.to_string()));
        let want_l = diamond_elem(&ucc, &Elem::basis(v.to_string()));
        if dual.product(&delta, &w) != want_l && right_form_fail.is_none() {
            right_form_fail = Some(format!("δ(u◇v) ≠ σ_B⁻²(u)◇v at {key}"));
        }
    }
    reports.push(report("delta-multiplier-forms", right_form_fail));

    // φ̂(Ŝ(w)) = φ̂(wδ).
    let phi_hat = dual.designated_integral();
    let mut radford_pre_fail = None;
    for key in &basis {
        let w = Elem::basis(key.clone());
        if phi_hat.eval(&dual.antipode(&w)) != phi_hat.eval(&dual.product(&w, &delta))
            && radford_pre_fail.is_none()
        {
            radford_pre_fail = Some(format!("φ̂(Ŝ(w)) ≠ φ̂(wδ) at {key}"));
        }
    }
    reports.push(report("antipode-integral-delta", radford_pre_fail));

    // S²(u◇v) = σ_B(u)◇σ_C⁻¹(v) and S⁴ = δ⁻¹(·)δ.
    let mut s2_fail = None;
    let mut s4_fail = None;
    for key in &basis {
        let w = Elem::basis(key.clone());
        let s2 = dual.antipode(&dual.antipode(&w));
        let (u, v) = key.split_once('&').expect("diamond label");
        let want = {
            let su = apply_table(&derived.sigma_b, &Elem::basis(u.to_string()));
            let sv = apply_table(&derived.sigma_c_inv, &Elem::basis(v.to_string()));
            diamond_elem(&su, &sv)
        };
        if s2 != want && s2_fail.is_none() {
            s2_fail = Some(format!("S² form fails at {key}"));
        }
        let s4 = dual.antipode(&dual.antipode(&s2));
        let conj = dual.product(&dual.product(&delta_inv, &w), &delta);
        if s4 != conj && s4_fail.is_none() {
            s4_fail = Some(format!("Radford S⁴ = δ⁻¹(·)δ fails at {key}"));
        }
    }
    reports.push(report("antipode-square-form", s2_fail));
    reports.push(report("radford-formula", s4_fail));
    Ok(SepDualReport { psi_family, phi_family, delta, reports })
}

/// Verifies that the direct `B ◇ C` realization is isomorphic to the
/// generic dual of `A = C ⊗ B` via
/// `u◇v ↦ φ(· S_C(v)σ_C(S_B(u)))`, intertwining products,
/// coproducts, counits and antipodes.
pub fn sep_dual_matches_general_dual(data: &SepData) -> Result<(), SepError> {
    use crate::duality::build_dual;
    use crate::finvec::tensor;
    use crate::wmha::Wmha;

    let derived = derive_functionals(data)?;
    let a = build_sep_wmha(data)?;
    let diamond = build_sep_dual(data)?;
    let dual = build_dual(&a)
        .map_err(|e| SepError::Internal(format!("generic dual failed: {e}")))?;
    // The map on ◇-basis elements: u◇v ↦ coordinates of the element
    // S_C(v)σ_C(S_B(u)) = σ_C(S_B(u)) ⊗ S_C(v) of A = C ⊗ B.
    let mut iso = LinMap::new();
    for u in &data.b.basis {
        for v in &data.c.basis {
            let c_part = apply_table(&derived.sigma_c, &data.s_b[u]);
            let b_part = data.s_c[v].clone();
            iso.insert(diamond_label(u, v), a_elem(&c_part, &b_part));
        }
    }
    let apply = |x: &Elem| apply_table(&iso, x);
    let images: Vec<Elem> =
        diamond.basis().iter().map(|k| iso[k].clone()).collect();
    if fin_rank(&images) != diamond.basis().len() {
        return Err(SepError::Internal("◇-to-dual map is not bijective".into()));
    }
    for j in &diamond.basis() {
        let ej = Elem::basis(j.clone());
        if dual.counit(&apply(&ej)) != diamond.counit(&ej) {
            return Err(SepError::Internal(
                "◇-to-dual map does not preserve the counit".into(),
            ));
        }
        if dual.antipode(&apply(&ej)) != apply(&diamond.antipode(&ej)) {
            return Err(SepError::Internal(
                "◇-to-dual map does not intertwine antipodes".into(),
            ));
        }
        let lhs = dual.cop_full(&apply(&ej));
        let rhs = diamond
            .cop_full(&ej)
            .map_terms(|(k1, k2)| tensor(&iso[k1], &iso[k2]));
        if lhs != rhs {
            return Err(SepError::Internal(
                "◇-to-dual map does not intertwine coproducts".into(),
            ));
        }
        for l in &diamond.basis() {
            let el = Elem::basis(l.clone());
            if dual.product(&apply(&ej), &apply(&el)) != apply(&diamond.product(&ej, &el)) {
                return Err(SepError::Internal(
                    "◇-to-dual map is not an algebra homomorphism".into(),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{all_passed, check_axioms, CheckBudget};
    use crate::integrals::{certify_designated, faithful_set_check, Side};
    use crate::solve::fin_span_eq;
    use crate::wmha::{source_algebra_basis, target_algebra_basis, Wmha};

    fn swap2() -> SepData {
        bijection_sep(2, &[2, 1]).unwrap()
    }

    fn cycle3() -> SepData {
        bijection_sep(3, &[2, 3, 1]).unwrap()
    }

    fn weighted_m2() -> SepData {
        matrix_sep(&[Scalar::from_int(3), Scalar::from_ratio(3, 2)]).unwrap()
    }

    fn assert_all_ok(reports: &[LawReport]) {
        for r in reports {
            assert_eq!(
                r.status,
                LawStatus::Ok,
                "{} failed: {:?}",
                r.name,
                r.witness
            );
        }
    }

    #[test]
    fn generated_data_passes_validation() {
        assert_all_ok(&validate_sep(&swap2()));
        assert_all_ok(&validate_sep(&cycle3()));
        assert_all_ok(&validate_sep(&weighted_m2()));
    }

    #[test]
    fn derived_functionals_have_the_closed_forms() {
        // Bijection case: φ_B ≡ 1 on points, σ_B = id.
        let data = swap2();
        let d = derive_functionals(&data).unwrap();
        for k in &data.b.basis {
            assert_eq!(d.phi_b.value(k), Scalar::one());
            assert_eq!(apply_table(&d.sigma_b, &Elem::basis(k.clone())), Elem::basis(k.clone()));
        }
        // Weighted-trace case: φ_B(e_ij) = δ_ij g_i and
        // σ_B(e_ij) = (g_i/g_j) e_ij.
        let data = weighted_m2();
        let d = derive_functionals(&data).unwrap();
        assert_eq!(d.phi_b.value(&"e11".to_string()), Scalar::from_int(3));
        assert_eq!(d.phi_b.value(&"e22".to_string()), Scalar::from_ratio(3, 2));
        assert_eq!(d.phi_b.value(&"e12".to_string()), Scalar::zero());
        let s12 = apply_table(&d.sigma_b, &Elem::basis("e12".to_string()));
        assert_eq!(s12.coeff(&"e12".to_string()), Scalar::from_int(2));
    }

    #[test]
    fn one_point_datum_is_trivial_but_valid() {
        let data = bijection_sep(1, &[1]).unwrap();
        assert_all_ok(&validate_sep(&data));
        let a = build_sep_wmha(&data).unwrap();
        assert_eq!(a.basis().len(), 1);
        assert!(all_passed(&check_axioms(&a, &CheckBudget::default())));
    }

    #[test]
    fn separability_instances_pass_the_law_suite() {
        let budget = CheckBudget::default();
        for data in [swap2(), cycle3()] {
            let a = build_sep_wmha(&data).unwrap();
            let reports = check_axioms(&a, &budget);
            assert!(all_passed(&reports), "{:?}", reports.iter().filter(|r| r.status != LawStatus::Ok).collect::<Vec<_>>());
            let dual = build_sep_dual(&data).unwrap();
            let reports = check_axioms(&dual, &budget);
            assert!(all_passed(&reports), "{:?}", reports.iter().filter(|r| r.status != LawStatus::Ok).collect::<Vec<_>>());
        }
    }

    #[test]
    fn weighted_trace_instances_pass_the_law_suite() {
        let budget = CheckBudget::default();
        let data = weighted_m2();
        let a = build_sep_wmha(&data).unwrap();
        assert!(all_passed(&check_axioms(&a, &budget)));
        let dual = build_sep_dual(&data).unwrap();
        assert!(all_passed(&check_axioms(&dual, &budget)));
    }

    #[test]
    fn product_integral_is_faithful_and_two_sided() {
        for data in [swap2(), weighted_m2()] {
            let a = build_sep_wmha(&data).unwrap();
            let cert = certify_designated(&a).unwrap();
            assert!(cert.faithful);
            assert_eq!(cert.side, Side::TwoSided);
        }
    }

    #[test]
    fn source_and_target_algebras_are_the_tensor_factors() {
        let data = cycle3();
        let derived = derive_functionals(&data).unwrap();
        let a = build_sep_wmha(&data).unwrap();
        // ε_s(A) = 1_C ⊗ B and ε_t(A) = C ⊗ 1_B.
        let source_expected: Vec<Elem> = data
            .b
            .basis
            .iter()
            .map(|b| a_elem(&derived.unit_c, &Elem::basis(b.clone())))
            .collect();
        let target_expected: Vec<Elem> = data
            .c
            .basis
            .iter()
            .map(|c| a_elem(&Elem::basis(c.clone()), &derived.unit_b))
            .collect();
        assert!(fin_span_eq(&source_algebra_basis(&a), &source_expected));
        assert!(fin_span_eq(&target_algebra_basis(&a), &target_expected));
    }

    #[test]
    fn multiplying_the_idempotent_legs_gives_the_unit() {
        // m(ι⊗S_C)E = 1_B and m(S_B⊗ι)E = 1_C.
        for data in [swap2(), weighted_m2()] {
            let derived = derive_functionals(&data).unwrap();
            let mut in_b = Elem::zero();
            let mut in_c = Elem::zero();
            for ((bk, ck), coef) in data.e.iter() {
                let prod_b = data.b.mul(&Elem::basis(bk.clone()), &data.s_c[ck]);
                for (k, x) in prod_b.iter() {
                    in_b.add_term(k.clone(), coef * x);
                }
                let prod_c = data.c.mul(&data.s_b[bk], &Elem::basis(ck.clone()));
                for (k, x) in prod_c.iter() {
                    in_c.add_term(k.clone(), coef * x);
                }
            }
            assert_eq!(in_b, derived.unit_b);
            assert_eq!(in_c, derived.unit_c);
        }
    }

    #[test]
    fn dual_counit_is_the_product_of_functionals() {
        let data = weighted_m2();
        let derived = derive_functionals(&data).unwrap();
        let dual = build_sep_dual(&data).unwrap();
        for u in &data.b.basis {
            for v in &data.c.basis {
                let e = Elem::basis(diamond_label(u, v));
                assert_eq!(
                    dual.counit(&e),
                    &derived.phi_b.value(u) * &derived.phi_c.value(v)
                );
            }
        }
    }

    #[test]
    fn bijection_dual_has_trivial_modular_data() {
        let data = swap2();
        let dual = build_sep_dual(&data).unwrap();
        let rep = sep_dual_integrals_and_radford(&data, &dual).unwrap();
        assert_all_ok(&rep.reports);
        assert_eq!(rep.delta, crate::wmha::unit(&dual));
        // S⁴ = S² = id here.
        for k in &dual.basis() {
            let e = Elem::basis(k.clone());
            assert_eq!(dual.antipode(&dual.antipode(&e)), e);
        }
        // Left-integral space has dimension dim B = 2.
        assert_eq!(crate::integrals::enumerate_left_integrals(&dual).len(), 2);
    }

    #[test]
    fn weighted_trace_dual_has_nontrivial_radford_data() {
        let data = weighted_m2();
        let dual = build_sep_dual(&data).unwrap();
        let rep = sep_dual_integrals_and_radford(&data, &dual).unwrap();
        assert_all_ok(&rep.reports);
        // δ ≠ 1 and S² ≠ id because the weights differ.
        assert_ne!(rep.delta, crate::wmha::unit(&dual));
        let probe = Elem::basis(diamond_label(&"e12".to_string(), &"f11".to_string()));
        assert_ne!(dual.antipode(&dual.antipode(&probe)), probe);
    }

    #[test]
    fn dual_integral_family_is_faithful_as_a_set() {
        let data = swap2();
        let dual = build_sep_dual(&data).unwrap();
        let rep = sep_dual_integrals_and_radford(&data, &dual).unwrap();
        assert!(faithful_set_check(&dual, &rep.psi_family).unwrap());
        assert!(faithful_set_check(&dual, &rep.phi_family).unwrap());
    }

    #[test]
    fn diamond_realization_matches_the_generic_dual() {
        sep_dual_matches_general_dual(&swap2()).unwrap();
        sep_dual_matches_general_dual(&cycle3()).unwrap();
    }

    #[test]
    fn weighted_trace_diamond_matches_the_generic_dual() {
        sep_dual_matches_general_dual(&weighted_m2()).unwrap();
    }

    #[test]
    fn dropping_an_idempotent_term_is_detected() {
        let mut data = cycle3();
        // Remove one term of E: it is no longer idempotent (and not full).
        let ((bk, ck), coef) = {
            let (k, c) = data.e.iter().next().unwrap();
            (k.clone(), c.clone())
        };
        data.e.add_term((bk, ck), -coef);
        let reports = validate_sep(&data);
        assert!(reports
            .iter()
            .any(|r| r.status == LawStatus::Fail
                && (r.name == "idempotent-e" || r.name == "full-e")));
        assert!(matches!(build_sep_wmha(&data), Err(SepError::Invalid(..))));
    }

    #[test]
    fn source_and_target_embeddings_into_the_dual() {
        // v ↦ E₁ ◇ E₂v lands in ε̂_s and u ↦ uE₁ ◇ E₂ in ε̂_t, both
        // spanning those subalgebras.
        let data = swap2();
        let dual = build_sep_dual(&data).unwrap();
        let mut source_images = Vec::new();
        for v in &data.c.basis {
            let mut img = Elem::zero();
            for ((bk, ck), coef) in data.e.iter() {
                let cv = data.c.mul(&Elem::basis(ck.clone()), &Elem::basis(v.clone()));
                for (k, x) in cv.iter() {
                    img.add_term(diamond_label(bk, k), coef * x);
                }
            }
            source_images.push(img);
        }
        let mut target_images = Vec::new();
        for u in &data.b.basis {
            let mut img = Elem::zero();
            for ((bk, ck), coef) in data.e.iter() {
                let ub = data.b.mul(&Elem::basis(u.clone()), &Elem::basis(bk.clone()));
                for (k, x) in ub.iter() {
                    img.add_term(diamond_label(k, ck), coef * x);
                }
            }
            target_images.push(img);
        }
        assert!(fin_span_eq(&source_algebra_basis(&dual), &source_images));
        assert!(fin_span_eq(&target_algebra_basis(&dual), &target_images));
    }

    #[test]
    fn json_generator_and_explicit_tables_agree() {
        let gen: serde_json::Value = serde_json::json!({
            "generator": {"kind": "bijection", "points": 2, "map": [2, 1]}
        });
        let data = from_json(&gen).unwrap();
        assert_all_ok(&validate_sep(&data));
        // The same datum spelled out explicitly.
        let explicit = serde_json::json!({
            "b": {
                "basis": ["p1", "p2"],
                "product": {
                    "p1": {"p1": [["p1", "1"]], "p2": []},
                    "p2": {"p1": [], "p2": [["p2", "1"]]}
                }
            },
            "c": {
                "basis": ["p1", "p2"],
                "product": {
                    "p1": {"p1": [["p1", "1"]], "p2": []},
                    "p2": {"p1": [], "p2": [["p2", "1"]]}
                }
            },
            "e": [["p1", "p2", "1"], ["p2", "p1", "1"]],
            "s_b": {"p1": [["p2", "1"]], "p2": [["p1", "1"]]},
            "s_c": {"p1": [["p2", "1"]], "p2": [["p1", "1"]]}
        });
        let data2 = from_json(&explicit).unwrap();
        assert_eq!(data.e, data2.e);
        let a1 = build_sep_wmha(&data).unwrap();
        let a2 = build_sep_wmha(&data2).unwrap();
        crate::wmha::same_structure(&a1, &a2).unwrap();
    }

    #[test]
    fn matrix_generator_rejects_non_idempotent_weights() {
        let err = matrix_sep(&[Scalar::from_int(2), Scalar::from_int(3)]);
        assert!(matches!(err, Err(SepError::Parse(_))));
        let err = from_json(&serde_json::json!({
            "generator": {"kind": "matrix", "weights": ["2", "3"]}
        }));
        assert!(matches!(err, Err(SepError::Parse(_))));
    }
}
