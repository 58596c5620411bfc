//! Formal deformations of a Reynolds–derivation pair, truncated at a fixed
//! order.
//!
//! A truncation deforms all three structure maps simultaneously:
//!
//! ```text
//! μ_t = μ + t μ_1 + … + t^m μ_m      (bracket terms, alternating 2-maps)
//! R_t = R + t R_1 + … + t^m R_m
//! d_t = d + t d_1 + … + t^m d_m
//! ```
//!
//! [`validate_truncation`] checks, order by order, the four families of
//! equations obtained by expanding the pair axioms of `(μ_t, R_t, d_t)` and
//! collecting powers of `t`. The order-1 terms of a valid truncation,
//! packaged as the four-component element `((μ_1, R_1), (d_1, 0))`, form a
//! 2-cocycle of the four-component complex with adjoint coefficients, and
//! transporting a truncation along a formal automorphism `ψ_t = id + t ψ_1
//! + …` shifts that element by an exact one — so the degree-2 class of the
//! infinitesimal is an invariant of the deformation up to equivalence.

use crate::check::CheckReport;
use crate::cochain::{Cochain, ComplexEngine, PairCochain, QuadCochain};
use crate::error::{Error, Result};
use crate::exactlin::{vec_add, vec_sub, vec_zero, LinearOp, Scalar, Vector};
use crate::lie::{basis_vec, ReynoldsLieDerPair};
use crate::rep::{Representation, RhoRVariant, RldRep};
use serde::{Deserialize, Serialize};

/// Adjoint coefficients of a pair: the algebra acting on itself, with the
/// pair's own operators as module operators. Valid whenever the pair is.
pub fn adjoint_coefficients(pair: &ReynoldsLieDerPair) -> RldRep {
    let rep = Representation::adjoint(pair.algebra.clone());
    RldRep::new(pair.clone(), rep, pair.r.clone(), pair.d.clone())
        .expect("adjoint module shapes always agree")
}

/// A deformation of `base` truncated at order `mu.len()`; the three term
/// lists must have equal length, and `mu[k]`, `r[k]`, `d[k]` hold the
/// order-`k+1` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TruncationWire")]
pub struct DeformationTruncation {
    pub base: ReynoldsLieDerPair,
    pub mu: Vec<Cochain>,
    #[serde(rename = "R")]
    pub r: Vec<LinearOp>,
    pub d: Vec<LinearOp>,
}

#[derive(Deserialize)]
struct TruncationWire {
    base: ReynoldsLieDerPair,
    mu: Vec<Cochain>,
    #[serde(rename = "R")]
    r: Vec<LinearOp>,
    d: Vec<LinearOp>,
}

impl TryFrom<TruncationWire> for DeformationTruncation {
    type Error = Error;

    fn try_from(w: TruncationWire) -> Result<Self> {
        DeformationTruncation::new(w.base, w.mu, w.r, w.d)
    }
}

impl DeformationTruncation {
    pub fn new(
        base: ReynoldsLieDerPair,
        mu: Vec<Cochain>,
        r: Vec<LinearOp>,
        d: Vec<LinearOp>,
    ) -> Result<Self> {
        let n = base.dim();
        if mu.len() != r.len() || mu.len() != d.len() {
            return Err(Error::dim(format!(
                "term lists must have equal length, got {}, {}, {}",
                mu.len(),
                r.len(),
                d.len()
            )));
        }
        for (k, c) in mu.iter().enumerate() {
            if c.degree() != 2 || c.dim_l() != n || c.dim_v() != n {
                return Err(Error::dim(format!(
                    "bracket term {} must be an alternating 2-map on the algebra",
                    k + 1
                )));
            }
        }
        for (name, ops) in [("R", &r), ("d", &d)] {
            for (k, op) in ops.iter().enumerate() {
                if op.src_dim() != n || op.dst_dim() != n {
                    return Err(Error::dim(format!(
                        "{name} term {} must be {n}x{n}",
                        k + 1
                    )));
                }
            }
        }
        Ok(DeformationTruncation { base, mu, r, d })
    }

    /// The truncation with all higher terms zero.
    pub fn trivial(base: ReynoldsLieDerPair, order: usize) -> Self {
        let n = base.dim();
        DeformationTruncation {
            mu: (0..order).map(|_| Cochain::zero(n, n, 2)).collect(),
            r: (0..order).map(|_| LinearOp::zero(n, n)).collect(),
            d: (0..order).map(|_| LinearOp::zero(n, n)).collect(),
            base,
        }
    }

    pub fn order(&self) -> usize {
        self.mu.len()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Bracket term of order `k` (`k = 0` is the base bracket).
    fn mu_term(&self, k: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        if k == 0 {
            self.base.algebra.bracket(x, y)
        } else {
            self.mu[k - 1].eval(&[x, y])
        }
    }

    fn r_term(&self, k: usize) -> &LinearOp {
        if k == 0 {
            &self.base.r
        } else {
            &self.r[k - 1]
        }
    }

    fn d_term(&self, k: usize) -> &LinearOp {
        if k == 0 {
            &self.base.d
        } else {
            &self.d[k - 1]
        }
    }
}

/// Checks every order `1..=m` of the four deformation equation families.
///
/// Labels and index conventions (`at` entries are 1-based except the
/// leading order):
///
/// * `deformation_jacobi`, `at = [order, i, j, k]`: the cyclic sum
///   `Σ_{p+q=order} μ_p(μ_q(x_i, x_j), x_k) + cyclic` vanishes.
/// * `deformation_reynolds`, `at = [order, i, j]`: the order-`order` slice
///   of the Reynolds identity for `μ_t`, `R_t`.
/// * `deformation_derivation`, `at = [order, i, j]`: the slice of the
///   derivation identity for `μ_t`, `d_t`.
/// * `deformation_commutation`, `at = [order, j]`: the slice of
///   `R_t d_t = d_t R_t`, one residual column per basis vector.
///
/// The base structure itself (order 0) is validated first; an invalid base
/// makes the order-wise identities meaningless.
pub fn validate_truncation(t: &DeformationTruncation) -> CheckReport {
    let mut report = crate::lie::is_reylieder(&t.base, crate::Mode::Standard);
    let n = t.dim();
    let m = t.order();
    for order in 1..=m {
        // Jacobi slices over basis triples.
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let ei = basis_vec(n, i);
                    let ej = basis_vec(n, j);
                    let ek = basis_vec(n, k);
                    let mut residual = vec_zero(n);
                    for p in 0..=order {
                        let q = order - p;
                        for (x, y, z) in [(&ei, &ej, &ek), (&ej, &ek, &ei), (&ek, &ei, &ej)] {
                            let inner = t.mu_term(q, x, y);
                            residual = vec_add(&residual, &t.mu_term(p, &inner, z));
                        }
                    }
                    report.record(
                        "deformation_jacobi",
                        vec![order, i + 1, j + 1, k + 1],
                        residual,
                    );
                }
            }
        }
        // Reynolds slices over basis pairs.
        for i in 0..n {
            for j in (i + 1)..n {
                let ei = basis_vec(n, i);
                let ej = basis_vec(n, j);
                let mut lhs = vec_zero(n);
                for p in 0..=order {
                    for q in 0..=(order - p) {
                        let s = order - p - q;
                        let rx = t.r_term(q).apply(&ei).expect("shapes");
                        let ry = t.r_term(s).apply(&ej).expect("shapes");
                        lhs = vec_add(&lhs, &t.mu_term(p, &rx, &ry));
                    }
                }
                let mut rhs = vec_zero(n);
                for p in 0..=order {
                    for q in 0..=(order - p) {
                        let rest = order - p - q;
                        // Triple-sum terms: R_p(μ_q(R_rest x, y)) and
                        // R_p(μ_q(x, R_rest y)).
                        let rx = t.r_term(rest).apply(&ei).expect("shapes");
                        let ry = t.r_term(rest).apply(&ej).expect("shapes");
                        let t1 = t.mu_term(q, &rx, &ej);
                        let t2 = t.mu_term(q, &ei, &ry);
                        rhs = vec_add(
                            &rhs,
                            &t.r_term(p).apply(&vec_add(&t1, &t2)).expect("shapes"),
                        );
                        // Quadruple-sum term: -R_p(μ_q(R_u x, R_w y)).
                        for u in 0..=rest {
                            let w = rest - u;
                            let rx = t.r_term(u).apply(&ei).expect("shapes");
                            let ry = t.r_term(w).apply(&ej).expect("shapes");
                            let inner = t.mu_term(q, &rx, &ry);
                            rhs = vec_sub(&rhs, &t.r_term(p).apply(&inner).expect("shapes"));
                        }
                    }
                }
                report.record(
                    "deformation_reynolds",
                    vec![order, i + 1, j + 1],
                    vec_sub(&lhs, &rhs),
                );
            }
        }
        // Derivation slices over basis pairs.
        for i in 0..n {
            for j in (i + 1)..n {
                let ei = basis_vec(n, i);
                let ej = basis_vec(n, j);
                let mut residual = vec_zero(n);
                for p in 0..=order {
                    let q = order - p;
                    let inner = t.mu_term(q, &ei, &ej);
                    residual = vec_add(&residual, &t.d_term(p).apply(&inner).expect("shapes"));
                    let dx = t.d_term(q).apply(&ei).expect("shapes");
                    let dy = t.d_term(q).apply(&ej).expect("shapes");
                    residual = vec_sub(&residual, &t.mu_term(p, &dx, &ej));
                    residual = vec_sub(&residual, &t.mu_term(p, &ei, &dy));
                }
                report.record(
                    "deformation_derivation",
                    vec![order, i + 1, j + 1],
                    residual,
                );
            }
        }
        // Commutation slices.
        for j in 0..n {
            let ej = basis_vec(n, j);
            let mut residual = vec_zero(n);
            for p in 0..=order {
                let q = order - p;
                let rd = t
                    .r_term(p)
                    .apply(&t.d_term(q).apply(&ej).expect("shapes"))
                    .expect("shapes");
                let dr = t
                    .d_term(p)
                    .apply(&t.r_term(q).apply(&ej).expect("shapes"))
                    .expect("shapes");
                residual = vec_add(&residual, &vec_sub(&rd, &dr));
            }
            report.record("deformation_commutation", vec![order, j + 1], residual);
        }
    }
    report
}

/// Packages the order-1 terms as the four-component degree-2 element
/// `((μ_1, R_1), (d_1, 0))` over adjoint coefficients.
pub fn infinitesimal(t: &DeformationTruncation) -> Result<QuadCochain> {
    if t.order() == 0 {
        return Err(Error::invalid(
            "truncation has no order-1 terms".to_string(),
        ));
    }
    let n = t.dim();
    let main = PairCochain::new(t.mu[0].clone(), Some(Cochain::from_linear_op(&t.r[0])))?;
    let tail = PairCochain::new(
        Cochain::from_linear_op(&t.d[0]),
        Some(Cochain::from_vector(n, vec_zero(n))),
    )?;
    QuadCochain::new(main, Some(tail))
}

/// The four-component complex with adjoint coefficients that governs
/// deformations of the pair.
pub fn deformation_complex(pair: &ReynoldsLieDerPair) -> Result<ComplexEngine> {
    ComplexEngine::reynolds_derivation(adjoint_coefficients(pair), RhoRVariant::PostCompose)
}

/// Order-`m` coefficients of the inverse of `ψ_t = id + t ψ_1 + …`:
/// `φ_m = -Σ_{i=1}^m ψ_i φ_{m-i}` with `φ_0 = id`.
pub fn series_inverse(psi: &[LinearOp], n: usize) -> Vec<LinearOp> {
    let mut phi: Vec<LinearOp> = vec![LinearOp::identity(n)];
    for m in 1..=psi.len() {
        let mut acc = LinearOp::zero(n, n);
        for i in 1..=m {
            let term = psi[i - 1].compose(&phi[m - i]).expect("uniform shapes");
            acc = acc.sub(&term).expect("uniform shapes");
        }
        phi.push(acc);
    }
    phi.remove(0);
    phi
}

/// Transports a truncation along the formal automorphism
/// `ψ_t = id + t ψ_1 + … + t^m ψ_m` (with `m` equal to the truncation
/// order):
///
/// ```text
/// μ'_t = ψ_t^{-1} ∘ μ_t ∘ (ψ_t ⊗ ψ_t),   R'_t = ψ_t^{-1} R_t ψ_t,
/// d'_t = ψ_t^{-1} d_t ψ_t,
/// ```
///
/// truncated at the same order. Transport of a valid truncation is valid,
/// and the order-1 element moves by an exact one.
pub fn transport(t: &DeformationTruncation, psi: &[LinearOp]) -> Result<DeformationTruncation> {
    let n = t.dim();
    let m = t.order();
    if psi.len() != m {
        return Err(Error::dim(format!(
            "need {m} automorphism terms, got {}",
            psi.len()
        )));
    }
    for (k, op) in psi.iter().enumerate() {
        if op.src_dim() != n || op.dst_dim() != n {
            return Err(Error::dim(format!("automorphism term {} must be {n}x{n}", k + 1)));
        }
    }
    let id = LinearOp::identity(n);
    let psi_full: Vec<&LinearOp> = std::iter::once(&id).chain(psi.iter()).collect();
    let phi_tail = series_inverse(psi, n);
    let phi_full: Vec<&LinearOp> = std::iter::once(&id).chain(phi_tail.iter()).collect();

    let mut mu_out = Vec::with_capacity(m);
    let mut r_out = Vec::with_capacity(m);
    let mut d_out = Vec::with_capacity(m);
    for order in 1..=m {
        // μ'_order = Σ_{a+b+c+e=order} φ_a ∘ μ_b ∘ (ψ_c ⊗ ψ_e).
        let mu_k = Cochain::from_basis_fn(n, n, 2, |tuple| {
            let ei = basis_vec(n, tuple[0]);
            let ej = basis_vec(n, tuple[1]);
            let mut acc = vec_zero(n);
            for a in 0..=order {
                for b in 0..=(order - a) {
                    for c in 0..=(order - a - b) {
                        let e = order - a - b - c;
                        let x = psi_full[c].apply(&ei).expect("shapes");
                        let y = psi_full[e].apply(&ej).expect("shapes");
                        let inner = t.mu_term(b, &x, &y);
                        acc = vec_add(&acc, &phi_full[a].apply(&inner).expect("shapes"));
                    }
                }
            }
            acc
        });
        mu_out.push(mu_k);
        // R'_order = Σ_{a+b+c=order} φ_a R_b ψ_c, and likewise for d.
        let mut r_k = LinearOp::zero(n, n);
        let mut d_k = LinearOp::zero(n, n);
        for a in 0..=order {
            for b in 0..=(order - a) {
                let c = order - a - b;
                let r_term = phi_full[a]
                    .compose(t.r_term(b))
                    .and_then(|op| op.compose(psi_full[c]))
                    .expect("uniform shapes");
                r_k = r_k.add(&r_term).expect("uniform shapes");
                let d_term = phi_full[a]
                    .compose(t.d_term(b))
                    .and_then(|op| op.compose(psi_full[c]))
                    .expect("uniform shapes");
                d_k = d_k.add(&d_term).expect("uniform shapes");
            }
        }
        r_out.push(r_k);
        d_out.push(d_k);
    }
    DeformationTruncation::new(t.base.clone(), mu_out, r_out, d_out)
}

/// How an order-1 element can be recognized as trivial.
#[derive(Debug, Clone, Serialize)]
pub struct TrivializationReport {
    /// Whether the packaged order-1 element is a degree-2 cocycle.
    pub is_cocycle: bool,
    /// A degree-1 preimage under the full differential, if one exists
    /// (flat coordinates of the four-component complex).
    pub full_witness: Option<Vector>,
    /// A single operator `ψ_1` with `𝒟(ψ_1, 0) =` the element, if one
    /// exists; this is the witness that an actual change of variables
    /// `ψ_t = id + t ψ_1` undoes the deformation at order 1.
    pub operator_witness: Option<LinearOp>,
}

/// Decides whether the order-1 element of a truncation is exact, both in
/// the full complex and within the subspace of elements realizable by a
/// change of variables.
pub fn trivialization(t: &DeformationTruncation) -> Result<TrivializationReport> {
    let engine = deformation_complex(&t.base)?;
    let element = infinitesimal(t)?;
    let flat = element.to_flat();
    let is_cocycle = engine.is_cocycle(2, &flat)?;
    let full_witness = engine.is_coboundary(2, &flat)?;

    // Restricted solve: columns are 𝒟((E_rc, 0)) over unit matrices E_rc.
    let n = t.dim();
    let target_dim = engine.space_dim(2);
    let mut columns = crate::exactlin::Matrix::zero(target_dim, n * n);
    for r in 0..n {
        for c in 0..n {
            let mut unit = crate::exactlin::Matrix::zero(n, n);
            unit.set(r, c, Scalar::one());
            let qc = QuadCochain::new(
                PairCochain::new(
                    Cochain::from_linear_op(&LinearOp::new(unit)),
                    Some(Cochain::from_vector(n, vec_zero(n))),
                )?,
                None,
            )?;
            let image = engine.d_quad(&qc)?.to_flat();
            for (row, s) in image.into_iter().enumerate() {
                if !s.is_zero() {
                    columns.set(row, r * n + c, s);
                }
            }
        }
    }
    let operator_witness = columns.solve(&flat)?.map(|sol| {
        LinearOp::new(crate::exactlin::Matrix::from_fn(n, n, |r, c| {
            sol[r * n + c].clone()
        }))
    });
    Ok(TrivializationReport { is_cocycle, full_witness, operator_witness })
}
