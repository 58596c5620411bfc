//! Abelian extensions of Reynolds–derivation pairs, and the obstruction
//! theory for lifting a compatible pair of derivations to an extension.
//!
//! Given a pair `(L, R, d)` acting on a module `(V, ρ, R_V, d_V)`, an
//! extension datum is a triple `(Θ, ξ, χ)` of cochains; it assembles a
//! candidate pair on `L ⊕ V` by
//!
//! ```text
//! [x+u, y+v] = [x,y] + ρ(x)v - ρ(y)u + Θ(x,y)
//! R̂(x+u)    = Rx + ξ(x) + R_V u
//! d̂(x+u)    = dx + χ(x) + d_V u
//! ```
//!
//! Two verdicts are computed for a datum: the direct one (run every pair
//! axiom on the assembled structure) and the cohomological one (the datum,
//! packaged as the degree-2 element `((Θ, ξ), (χ, 0))`, is a cocycle of the
//! four-component complex). Over a valid module the two agree.
//!
//! The obstruction half starts one floor down: a Reynolds extension
//! without derivations (datum `(Θ, ξ)` only) plus a candidate derivation
//! couple `(d, d_V)`. The couple lifts to the extension iff a connecting
//! cochain `χ` exists, and the obstruction element `(-ΔΘ, -Δξ)` measures
//! the failure: it is a two-component 2-cocycle whenever the couple
//! commutes with the Reynolds operators, and the lift exists iff it is the
//! image of some `χ` under `χ ↦ (δχ, -φχ)`.

use crate::check::CheckReport;
use crate::cochain::{
    delta_ce, delta_der, increasing_tuples, pair_space_dim, phi, Cochain, ComplexEngine,
    PairCochain, QuadCochain,
};
use crate::error::{Error, Result};
use crate::exactlin::{vec_is_zero, vec_zero, LinearOp, Matrix, Scalar, Vector};
use crate::lie::{basis_vec, is_reylieder, LieAlgebra, ReynoldsLieDerPair};
use crate::rep::{induced_rep, Representation, ReynoldsRep, RhoRVariant, RldRep};
use crate::search::LinearSystem;
use crate::Mode;
use serde::{Deserialize, Serialize};

/// The three cochains that twist a semidirect product into a general
/// abelian extension: `theta` curves the bracket, `xi` curves the Reynolds
/// operator, `chi` curves the derivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DatumWire")]
pub struct ExtensionDatum {
    pub theta: Cochain,
    pub xi: Cochain,
    pub chi: Cochain,
}

#[derive(Deserialize)]
struct DatumWire {
    theta: Cochain,
    xi: Cochain,
    chi: Cochain,
}

impl TryFrom<DatumWire> for ExtensionDatum {
    type Error = Error;

    fn try_from(w: DatumWire) -> Result<Self> {
        ExtensionDatum::new(w.theta, w.xi, w.chi)
    }
}

impl ExtensionDatum {
    pub fn new(theta: Cochain, xi: Cochain, chi: Cochain) -> Result<Self> {
        let (n, m) = (theta.dim_l(), theta.dim_v());
        if theta.degree() != 2 {
            return Err(Error::dim("theta must have degree 2".to_string()));
        }
        for (name, c) in [("xi", &xi), ("chi", &chi)] {
            if c.degree() != 1 || c.dim_l() != n || c.dim_v() != m {
                return Err(Error::dim(format!(
                    "{name} must be a degree-1 cochain on the same spaces as theta"
                )));
            }
        }
        Ok(ExtensionDatum { theta, xi, chi })
    }

    pub fn zero(dim_l: usize, dim_v: usize) -> Self {
        ExtensionDatum {
            theta: Cochain::zero(dim_l, dim_v, 2),
            xi: Cochain::zero(dim_l, dim_v, 1),
            chi: Cochain::zero(dim_l, dim_v, 1),
        }
    }

    pub fn dim_l(&self) -> usize {
        self.theta.dim_l()
    }

    pub fn dim_v(&self) -> usize {
        self.theta.dim_v()
    }

    /// The datum as the degree-2 element `((Θ, ξ), (χ, 0))` of the
    /// four-component complex.
    pub fn to_quad(&self) -> Result<QuadCochain> {
        let main = PairCochain::new(self.theta.clone(), Some(self.xi.clone()))?;
        let tail = PairCochain::new(
            self.chi.clone(),
            Some(Cochain::from_vector(self.dim_l(), vec_zero(self.dim_v()))),
        )?;
        QuadCochain::new(main, Some(tail))
    }

    /// Componentwise difference, for comparing data extracted from two
    /// sections of the same extension.
    pub fn sub(&self, other: &ExtensionDatum) -> Result<ExtensionDatum> {
        Ok(ExtensionDatum {
            theta: self.theta.sub(&other.theta)?,
            xi: self.xi.sub(&other.xi)?,
            chi: self.chi.sub(&other.chi)?,
        })
    }
}

/// Lie algebra on `L ⊕ V` with bracket twisted by `theta`.
fn assemble_algebra(rep: &Representation, theta: &Cochain) -> Result<LieAlgebra> {
    let n = rep.dim_l();
    let m = rep.dim_v();
    let total = n + m;
    let mut entries = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let mut value = rep.algebra.bracket_basis(a, b);
            value.extend(theta.eval_basis(&[a, b]));
            entries.push((a, b, value));
        }
        for k in 0..m {
            let mut value = vec_zero(n);
            value.extend(rep.rho(a).apply_basis(k));
            entries.push((a, n + k, value));
        }
    }
    LieAlgebra::from_entries(total, entries)
}

/// Operator `[[top, 0], [curve, corner]]` on `L ⊕ V`, where `curve` maps
/// `L → V` column by column through a degree-1 cochain.
fn assemble_operator(n: usize, m: usize, top: &LinearOp, curve: &Cochain, corner: &LinearOp) -> LinearOp {
    let total = n + m;
    let mut mat = Matrix::zero(total, total);
    mat.set_block(0, 0, top.matrix());
    mat.set_block(n, n, corner.matrix());
    for a in 0..n {
        for (r, s) in curve.eval_basis(&[a]).into_iter().enumerate() {
            if !s.is_zero() {
                mat.set(n + r, a, s);
            }
        }
    }
    LinearOp::new(mat)
}

fn canonical_inclusion(n: usize, m: usize) -> LinearOp {
    let mut mat = Matrix::zero(n + m, m);
    mat.set_block(n, 0, &Matrix::identity(m));
    LinearOp::new(mat)
}

fn canonical_projection(n: usize, m: usize) -> LinearOp {
    let mut mat = Matrix::zero(n, n + m);
    mat.set_block(0, 0, &Matrix::identity(n));
    LinearOp::new(mat)
}

/// The assembled total structure together with both verdicts on the datum.
#[derive(Debug, Clone, Serialize)]
pub struct AssembledExtension {
    pub pair: ReynoldsLieDerPair,
    pub inclusion: LinearOp,
    pub projection: LinearOp,
    /// Every pair axiom, run directly on the assembled structure.
    pub direct_report: CheckReport,
    /// Whether the datum is a degree-2 cocycle of the four-component
    /// complex over the given module.
    pub is_cocycle: bool,
}

impl AssembledExtension {
    /// The two verdicts agree over a valid module; exposed for audits.
    pub fn verdicts_agree(&self) -> bool {
        self.direct_report.is_pass() == self.is_cocycle
    }

    /// The assembled structure as a kernel/total/quotient sequence with the
    /// canonical inclusion and projection.
    pub fn sequence(&self, module: &RldRep) -> ExtensionSequence {
        let m = module.dim_v();
        let kernel = ReynoldsLieDerPair::new(
            LieAlgebra::abelian(m),
            module.r_v.clone(),
            module.d_v.clone(),
        )
        .expect("square operators of matching size");
        ExtensionSequence {
            kernel,
            total: self.pair.clone(),
            quotient: module.pair.clone(),
            inclusion: self.inclusion.clone(),
            projection: self.projection.clone(),
        }
    }
}

/// Assembles the extension defined by `datum` over the module `module` and
/// reports both verdicts. Errors if the module itself is invalid (the
/// equivalence of the verdicts presupposes a valid module).
pub fn build_extension(module: &RldRep, datum: &ExtensionDatum) -> Result<AssembledExtension> {
    let n = module.dim_l();
    let m = module.dim_v();
    if datum.dim_l() != n || datum.dim_v() != m {
        return Err(Error::dim(format!(
            "datum is over spaces of dimension ({}, {}), module over ({n}, {m})",
            datum.dim_l(),
            datum.dim_v()
        )));
    }
    let engine = ComplexEngine::reynolds_derivation(module.clone(), RhoRVariant::PostCompose)?;
    let algebra = assemble_algebra(&module.rep, &datum.theta)?;
    let r_hat = assemble_operator(n, m, &module.pair.r, &datum.xi, &module.r_v);
    let d_hat = assemble_operator(n, m, &module.pair.d, &datum.chi, &module.d_v);
    let pair = ReynoldsLieDerPair::new(algebra, r_hat, d_hat)?;
    let direct_report = is_reylieder(&pair, Mode::Standard);
    let is_cocycle = engine.is_cocycle(2, &datum.to_quad()?.to_flat())?;
    Ok(AssembledExtension {
        pair,
        inclusion: canonical_inclusion(n, m),
        projection: canonical_projection(n, m),
        direct_report,
        is_cocycle,
    })
}

/// A kernel/total/quotient diagram of pairs with structure-preserving
/// inclusion and projection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSequence {
    pub kernel: ReynoldsLieDerPair,
    pub total: ReynoldsLieDerPair,
    pub quotient: ReynoldsLieDerPair,
    pub inclusion: LinearOp,
    pub projection: LinearOp,
}

impl ExtensionSequence {
    fn shape_check(&self) -> Result<()> {
        let (m, big, n) = (self.kernel.dim(), self.total.dim(), self.quotient.dim());
        if self.inclusion.src_dim() != m || self.inclusion.dst_dim() != big {
            return Err(Error::dim(format!(
                "inclusion must be {big}x{m}, got {}x{}",
                self.inclusion.dst_dim(),
                self.inclusion.src_dim()
            )));
        }
        if self.projection.src_dim() != big || self.projection.dst_dim() != n {
            return Err(Error::dim(format!(
                "projection must be {n}x{big}, got {}x{}",
                self.projection.dst_dim(),
                self.projection.src_dim()
            )));
        }
        if big != n + m {
            return Err(Error::dim(format!(
                "total dimension {big} must equal kernel {m} plus quotient {n}"
            )));
        }
        Ok(())
    }
}

/// Sequence-level conditions: exactness, abelianness of the kernel, and
/// the inclusion/projection morphism identities for bracket, Reynolds
/// operator, and derivation.
///
/// Labels: `sequence_composite` (p∘i = 0), `sequence_inclusion_rank`,
/// `sequence_projection_rank`, `sequence_exactness` (ker p ⊆ im i),
/// `sequence_kernel_abelian`, `sequence_inclusion_bracket/_r/_d`,
/// `sequence_projection_bracket/_r/_d`. Rank defects are recorded as a
/// one-entry residual.
pub fn check_sequence(seq: &ExtensionSequence) -> Result<CheckReport> {
    seq.shape_check()?;
    let m = seq.kernel.dim();
    let n = seq.quotient.dim();
    let big = seq.total.dim();
    let i = &seq.inclusion;
    let p = &seq.projection;
    let mut report = CheckReport::default();

    let composite = p.compose(i)?;
    for k in 0..m {
        report.record("sequence_composite", vec![k + 1], composite.apply_basis(k));
    }
    let rank_i = i.matrix().rank();
    if rank_i < m {
        report.record(
            "sequence_inclusion_rank",
            vec![],
            vec![Scalar::from_int((m - rank_i) as i64)],
        );
    }
    let rank_p = p.matrix().rank();
    if rank_p < n {
        report.record(
            "sequence_projection_rank",
            vec![],
            vec![Scalar::from_int((n - rank_p) as i64)],
        );
    }
    for (idx, v) in p.matrix().kernel_basis().into_iter().enumerate() {
        if i.matrix().solve(&v)?.is_none() {
            report.record("sequence_exactness", vec![idx + 1], v);
        }
    }
    for k in 0..m {
        for l in (k + 1)..m {
            report.record(
                "sequence_kernel_abelian",
                vec![k + 1, l + 1],
                seq.kernel.algebra.bracket_basis(k, l),
            );
            let lifted = seq
                .total
                .algebra
                .bracket(&i.apply_basis(k), &i.apply_basis(l));
            let declared = i.apply(&seq.kernel.algebra.bracket_basis(k, l))?;
            report.record(
                "sequence_inclusion_bracket",
                vec![k + 1, l + 1],
                crate::exactlin::vec_sub(&lifted, &declared),
            );
        }
    }
    let incl_r = seq.total.r.compose(i)?.sub(&i.compose(&seq.kernel.r)?)?;
    let incl_d = seq.total.d.compose(i)?.sub(&i.compose(&seq.kernel.d)?)?;
    for k in 0..m {
        report.record("sequence_inclusion_r", vec![k + 1], incl_r.apply_basis(k));
        report.record("sequence_inclusion_d", vec![k + 1], incl_d.apply_basis(k));
    }
    let proj_r = p.compose(&seq.total.r)?.sub(&seq.quotient.r.compose(p)?)?;
    let proj_d = p.compose(&seq.total.d)?.sub(&seq.quotient.d.compose(p)?)?;
    for a in 0..big {
        report.record("sequence_projection_r", vec![a + 1], proj_r.apply_basis(a));
        report.record("sequence_projection_d", vec![a + 1], proj_d.apply_basis(a));
    }
    for a in 0..big {
        for b in (a + 1)..big {
            let down = p.apply(&seq.total.algebra.bracket_basis(a, b))?;
            let cross = seq
                .quotient
                .algebra
                .bracket(&p.apply_basis(a), &p.apply_basis(b));
            report.record(
                "sequence_projection_bracket",
                vec![a + 1, b + 1],
                crate::exactlin::vec_sub(&down, &cross),
            );
        }
    }
    Ok(report)
}

/// A central extension is a sequence whose kernel image commutes with the
/// whole total algebra; adds `central_kernel` violations on top of the
/// sequence conditions.
pub fn check_central(seq: &ExtensionSequence) -> Result<CheckReport> {
    let mut report = check_sequence(seq)?;
    let m = seq.kernel.dim();
    let big = seq.total.dim();
    for k in 0..m {
        let img = seq.inclusion.apply_basis(k);
        for a in 0..big {
            report.record(
                "central_kernel",
                vec![k + 1, a + 1],
                seq.total.algebra.bracket(&img, &basis_vec(big, a)),
            );
        }
    }
    Ok(report)
}

/// Module, datum, and the section/retraction they were read off from.
#[derive(Debug, Clone, Serialize)]
pub struct ExtractedExtension {
    pub module: RldRep,
    pub datum: ExtensionDatum,
    pub section: LinearOp,
    pub retraction: LinearOp,
}

/// Least-effort section of the projection: solves `p s = id` column by
/// column with free coordinates set to zero.
pub fn solve_section(seq: &ExtensionSequence) -> Result<LinearOp> {
    seq.shape_check()?;
    let n = seq.quotient.dim();
    let big = seq.total.dim();
    let mut mat = Matrix::zero(big, n);
    for j in 0..n {
        let col = seq
            .projection
            .matrix()
            .solve(&basis_vec(n, j))?
            .ok_or_else(|| Error::invalid("projection is not surjective".to_string()))?;
        for (r, s) in col.into_iter().enumerate() {
            if !s.is_zero() {
                mat.set(r, j, s);
            }
        }
    }
    Ok(LinearOp::new(mat))
}

/// Reads the module structure and the extension datum off a sequence,
/// relative to a chosen section `s` of the projection:
///
/// ```text
/// ρ(x)v = t[s x, i v]    Θ(x,y) = t[s x, s y]
/// R_V = t R̂ i            ξ(x) = t(R̂ s x)
/// d_V = t d̂ i            χ(x) = t(d̂ s x)
/// ```
///
/// where `t` is the retraction vanishing on the image of `s`. The module
/// operators are the ones the total structure actually induces; for a
/// valid sequence they coincide with the kernel's declared operators.
pub fn extract_with_section(seq: &ExtensionSequence, section: &LinearOp) -> Result<ExtractedExtension> {
    seq.shape_check()?;
    let n = seq.quotient.dim();
    let m = seq.kernel.dim();
    let big = seq.total.dim();
    if section.src_dim() != n || section.dst_dim() != big {
        return Err(Error::dim(format!(
            "section must be {big}x{n}, got {}x{}",
            section.dst_dim(),
            section.src_dim()
        )));
    }
    if !seq.projection.compose(section)?.sub(&LinearOp::identity(n))?.is_zero() {
        return Err(Error::invalid(
            "section does not split the projection".to_string(),
        ));
    }
    // Invert the basis [s | i] of the total space; the retraction is the
    // bottom block of the inverse.
    let mut basis = Matrix::zero(big, big);
    basis.set_block(0, 0, section.matrix());
    basis.set_block(0, n, seq.inclusion.matrix());
    let mut retraction = Matrix::zero(m, big);
    for k in 0..big {
        let coords = basis.solve(&basis_vec(big, k))?.ok_or_else(|| {
            Error::invalid("section image and kernel image do not span".to_string())
        })?;
        for r in 0..m {
            if !coords[n + r].is_zero() {
                retraction.set(r, k, coords[n + r].clone());
            }
        }
    }
    let retraction = LinearOp::new(retraction);

    let s = section;
    let i = &seq.inclusion;
    let bracket = |x: &Vector, y: &Vector| seq.total.algebra.bracket(x, y);
    let mut rho = Vec::with_capacity(n);
    for a in 0..n {
        let sx = s.apply_basis(a);
        let mat = Matrix::from_fn(m, m, |r, k| {
            retraction.apply(&bracket(&sx, &i.apply_basis(k))).expect("shapes")[r].clone()
        });
        rho.push(LinearOp::new(mat));
    }
    let r_v = retraction.compose(&seq.total.r)?.compose(i)?;
    let d_v = retraction.compose(&seq.total.d)?.compose(i)?;
    let theta = Cochain::from_basis_fn(n, m, 2, |t| {
        retraction
            .apply(&bracket(&s.apply_basis(t[0]), &s.apply_basis(t[1])))
            .expect("shapes")
    });
    let xi = Cochain::from_basis_fn(n, m, 1, |t| {
        retraction
            .apply(&seq.total.r.apply(&s.apply_basis(t[0])).expect("shapes"))
            .expect("shapes")
    });
    let chi = Cochain::from_basis_fn(n, m, 1, |t| {
        retraction
            .apply(&seq.total.d.apply(&s.apply_basis(t[0])).expect("shapes"))
            .expect("shapes")
    });
    let module = RldRep::new(
        seq.quotient.clone(),
        Representation::new(seq.quotient.algebra.clone(), m, rho)?,
        r_v,
        d_v,
    )?;
    Ok(ExtractedExtension {
        module,
        datum: ExtensionDatum::new(theta, xi, chi)?,
        section: section.clone(),
        retraction,
    })
}

/// [`extract_with_section`] with the least-effort section.
pub fn extract_from_extension(seq: &ExtensionSequence) -> Result<ExtractedExtension> {
    let section = solve_section(seq)?;
    extract_with_section(seq, &section)
}

/// A candidate derivation couple on the quotient and the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationCouple {
    pub d: LinearOp,
    #[serde(rename = "d_V")]
    pub d_v: LinearOp,
}

/// Couple admissibility over a Reynolds module: `d` is a derivation of the
/// algebra, `d_V` interacts with the action by the derivation rule, and
/// both commute with their Reynolds operators.
///
/// Labels: `couple_derivation`, `couple_module`, `couple_commutation_l`,
/// `couple_commutation_v`.
pub fn check_couple(module: &ReynoldsRep, couple: &DerivationCouple) -> Result<CheckReport> {
    let n = module.rep.dim_l();
    let m = module.rep.dim_v();
    if couple.d.src_dim() != n || couple.d.dst_dim() != n {
        return Err(Error::dim(format!("d must be {n}x{n}")));
    }
    if couple.d_v.src_dim() != m || couple.d_v.dst_dim() != m {
        return Err(Error::dim(format!("d_V must be {m}x{m}")));
    }
    let mut report = CheckReport::default();
    let l = &module.rep.algebra;
    for a in 0..n {
        for b in (a + 1)..n {
            let lhs = couple.d.apply(&l.bracket_basis(a, b))?;
            let rhs = crate::exactlin::vec_add(
                &l.bracket(&couple.d.apply_basis(a), &basis_vec(n, b)),
                &l.bracket(&basis_vec(n, a), &couple.d.apply_basis(b)),
            );
            report.record(
                "couple_derivation",
                vec![a + 1, b + 1],
                crate::exactlin::vec_sub(&lhs, &rhs),
            );
        }
    }
    for a in 0..n {
        // d_V ρ(x) - ρ(dx) - ρ(x) d_V, column by column.
        let residual = couple
            .d_v
            .compose(module.rep.rho(a))?
            .sub(&module.rep.action_of(&couple.d.apply_basis(a)))?
            .sub(&module.rep.rho(a).compose(&couple.d_v)?)?;
        for k in 0..m {
            report.record("couple_module", vec![a + 1, k + 1], residual.apply_basis(k));
        }
    }
    let comm_l = couple.d.compose(&module.r)?.sub(&module.r.compose(&couple.d)?)?;
    for a in 0..n {
        report.record("couple_commutation_l", vec![a + 1], comm_l.apply_basis(a));
    }
    let comm_v = couple.d_v.compose(&module.r_v)?.sub(&module.r_v.compose(&couple.d_v)?)?;
    for k in 0..m {
        report.record("couple_commutation_v", vec![k + 1], comm_v.apply_basis(k));
    }
    Ok(report)
}

/// The obstruction element `(Ob², Ob¹)` of a couple against a Reynolds
/// extension datum `(Θ, ξ)`.
///
/// In [`Mode::Standard`] both components are `-Δ` of the corresponding
/// datum component:
///
/// ```text
/// Ob²(x,y) = d_V Θ(x,y) - Θ(dx,y) - Θ(x,dy)      Ob¹(x) = d_V ξ(x) - ξ(dx)
/// ```
///
/// [`Mode::Literal`] audits the variant reading of `Ob²` in which `d_V`
/// is applied to the whole alternating sum instead of only the first
/// term; the two modes agree whenever `d = 0` or `d_V` is the identity.
pub fn obstruction_element(
    theta: &Cochain,
    xi: &Cochain,
    couple: &DerivationCouple,
    mode: Mode,
) -> Result<(Cochain, Cochain)> {
    let ob2 = match mode {
        Mode::Standard => delta_der(&couple.d, &couple.d_v, theta).neg(),
        Mode::Literal => {
            let n = theta.dim_l();
            let m = theta.dim_v();
            let zero_dv = LinearOp::zero(m, m);
            // Σ Θ(..dx..) with no d_V term.
            let shifted = delta_der(&couple.d, &zero_dv, theta);
            let combined = theta.sub(&shifted)?;
            Cochain::from_basis_fn(n, m, 2, |t| {
                couple.d_v.apply(&combined.eval_basis(t)).expect("shapes")
            })
        }
    };
    let ob1 = delta_der(&couple.d, &couple.d_v, xi).neg();
    Ok((ob2, ob1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    /// A connecting cochain exists; the couple lifts to the extension.
    Extensible,
    /// Preconditions hold but the obstruction class is nonzero.
    Obstructed,
    /// The couple or the datum fails a precondition, so the obstruction
    /// theory does not apply; see the report for the violations.
    PreconditionFailed,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    /// Algebra/module validity, datum cocycle conditions, and couple
    /// admissibility.
    pub precondition: CheckReport,
    pub ob2: Cochain,
    pub ob1: Cochain,
    /// Whether the obstruction element is a 2-cocycle of the two-component
    /// complex; guaranteed when the preconditions hold, reported always
    /// (None when the module is too broken to build the complex).
    pub is_cocycle: Option<bool>,
    /// Connecting cochain with `δχ = Ob²` and `-φχ = Ob¹`, when one exists.
    pub chi: Option<Cochain>,
    /// The full derivation `[[d, 0], [χ, d_V]]` on the assembled total
    /// space, when the couple is extensible.
    pub lifted_derivation: Option<LinearOp>,
    /// Direct validation of the assembled extension built from the
    /// witness, when one exists.
    pub extension_report: Option<CheckReport>,
}

/// Decides whether the couple `(d, d_V)` extends to the Reynolds extension
/// assembled from `(Θ, ξ)` over `module`.
pub fn obstruction(
    module: &ReynoldsRep,
    theta: &Cochain,
    xi: &Cochain,
    couple: &DerivationCouple,
    mode: Mode,
) -> Result<ObstructionReport> {
    let n = module.rep.dim_l();
    let m = module.rep.dim_v();
    if theta.degree() != 2 || theta.dim_l() != n || theta.dim_v() != m {
        return Err(Error::dim("theta must be a degree-2 cochain over the module".to_string()));
    }
    if xi.degree() != 1 || xi.dim_l() != n || xi.dim_v() != m {
        return Err(Error::dim("xi must be a degree-1 cochain over the module".to_string()));
    }

    let mut pre = CheckReport::default();
    pre.absorb(crate::lie::jacobi_check(&module.rep.algebra));
    pre.absorb(crate::lie::is_reynolds(&module.rep.algebra, &module.r, Mode::Standard));
    pre.absorb(crate::rep::check_rep(&module.rep));
    pre.absorb(crate::rep::check_reynolds_rep(module));
    // Datum cocycle conditions for the derivation-free extension.
    let d_theta = delta_ce(&module.rep, theta);
    for t in increasing_tuples(n, 3) {
        pre.record(
            "datum_ce_cocycle",
            t.iter().map(|i| i + 1).collect(),
            d_theta.eval_basis(&t),
        );
    }
    let rep_r = induced_rep(module, RhoRVariant::PostCompose)?;
    let r_condition = delta_ce(&rep_r, xi)
        .neg()
        .sub(&phi(&module.r, &module.r_v, theta))?;
    for t in increasing_tuples(n, 2) {
        pre.record(
            "datum_r_cocycle",
            t.iter().map(|i| i + 1).collect(),
            r_condition.eval_basis(&t),
        );
    }
    pre.absorb(check_couple(module, couple)?);
    let preconditions_hold = pre.is_pass();

    let (ob2, ob1) = obstruction_element(theta, xi, couple, mode)?;

    // The two-component complex over the module, if it can be built.
    let engine = ComplexEngine::reynolds_pair(module.clone(), RhoRVariant::PostCompose).ok();
    let is_cocycle = match &engine {
        Some(engine) => {
            let image = engine.d_pair(&PairCochain::new(ob2.clone(), Some(ob1.clone()))?)?;
            Some(vec_is_zero(&image.to_flat()))
        }
        None => None,
    };

    // Solve (δχ, -φχ) = (Ob², Ob¹) over unit degree-1 cochains.
    let target = PairCochain::new(ob2.clone(), Some(ob1.clone()))?.to_flat();
    let rows = pair_space_dim(n, m, 2);
    let mut columns = Matrix::zero(rows, n * m);
    for a in 0..n {
        for k in 0..m {
            let mut flat = vec_zero(n * m);
            flat[a * m + k] = Scalar::one();
            let unit = Cochain::from_flat(n, m, 1, &flat)?;
            let image = PairCochain::new(
                delta_ce(&module.rep, &unit),
                Some(phi(&module.r, &module.r_v, &unit).neg()),
            )?
            .to_flat();
            for (row, s) in image.into_iter().enumerate() {
                if !s.is_zero() {
                    columns.set(row, a * m + k, s);
                }
            }
        }
    }
    let chi = columns
        .solve(&target)?
        .map(|sol| Cochain::from_flat(n, m, 1, &sol))
        .transpose()?;

    let verdict = if !preconditions_hold {
        ObstructionVerdict::PreconditionFailed
    } else if chi.is_some() {
        ObstructionVerdict::Extensible
    } else {
        ObstructionVerdict::Obstructed
    };

    // With a witness and valid preconditions the assembled structure is a
    // genuine pair; run the direct axioms on it as a cross-check.
    let (lifted_derivation, extension_report) = match (&chi, verdict) {
        (Some(chi), ObstructionVerdict::Extensible) => {
            let base_pair = ReynoldsLieDerPair::new(
                module.rep.algebra.clone(),
                module.r.clone(),
                couple.d.clone(),
            )?;
            let full = RldRep::new(base_pair, module.rep.clone(), module.r_v.clone(), couple.d_v.clone())?;
            let datum = ExtensionDatum::new(theta.clone(), xi.clone(), chi.clone())?;
            let built = build_extension(&full, &datum)?;
            (Some(built.pair.d.clone()), Some(built.direct_report))
        }
        _ => (None, None),
    };

    Ok(ObstructionReport {
        verdict,
        precondition: pre,
        ob2,
        ob1,
        is_cocycle,
        chi,
        lifted_derivation,
        extension_report,
    })
}

/// Records a `central_action` violation for every basis pair on which the
/// module action is nonzero. A central extension requires the action to
/// vanish identically.
pub fn check_central_action(rep: &Representation) -> CheckReport {
    let mut report = CheckReport::default();
    for a in 0..rep.dim_l() {
        for k in 0..rep.dim_v() {
            report.record(
                "central_action",
                vec![a + 1, k + 1],
                rep.rho(a).apply_basis(k),
            );
        }
    }
    report
}

/// [`obstruction`] restricted to the central case: the module action must
/// vanish, and a nonzero action is treated as a failed precondition.
pub fn central_obstruction(
    module: &ReynoldsRep,
    theta: &Cochain,
    xi: &Cochain,
    couple: &DerivationCouple,
    mode: Mode,
) -> Result<ObstructionReport> {
    let mut report = obstruction(module, theta, xi, couple, mode)?;
    let central = check_central_action(&module.rep);
    if !central.is_pass() {
        report.verdict = ObstructionVerdict::PreconditionFailed;
        report.precondition.absorb(central);
    }
    Ok(report)
}

/// Independent decision procedure for the same question: sets up the
/// complete linear system for an unknown operator `D` on the assembled
/// total space — Leibniz rule against the assembled bracket, commutation
/// with the assembled Reynolds operator, `p D = d p`, and `D i = i d_V` —
/// and reports whether it is solvable. Used as an oracle against
/// [`obstruction`]; it presupposes that `(Θ, ξ)` assembles to a genuine
/// Reynolds algebra.
pub fn extensible_brute_force(
    module: &ReynoldsRep,
    theta: &Cochain,
    xi: &Cochain,
    couple: &DerivationCouple,
) -> Result<bool> {
    let n = module.rep.dim_l();
    let m = module.rep.dim_v();
    let big = n + m;
    let algebra = assemble_algebra(&module.rep, theta)?;
    let r_hat = assemble_operator(n, m, &module.r, xi, &module.r_v);
    let p = canonical_projection(n, m);
    let i = canonical_inclusion(n, m);

    let mut sys = LinearSystem::new(big * big);
    // Leibniz rows: D[e_a, e_b] - [D e_a, e_b] - [e_a, D e_b] = 0.
    for a in 0..big {
        for b in (a + 1)..big {
            let bracket_ab = algebra.bracket_basis(a, b);
            for r in 0..big {
                let mut row = vec_zero(big * big);
                for c in 0..big {
                    if !bracket_ab[c].is_zero() {
                        row[r * big + c] = &row[r * big + c] + &bracket_ab[c];
                    }
                    let left = algebra.bracket_basis(c, b);
                    if !left[r].is_zero() {
                        row[c * big + a] = &row[c * big + a] - &left[r];
                    }
                    let right = algebra.bracket_basis(a, c);
                    if !right[r].is_zero() {
                        row[c * big + b] = &row[c * big + b] - &right[r];
                    }
                }
                sys.push_row(row, Scalar::zero());
            }
        }
    }
    // Commutation: D R̂ - R̂ D = 0, as X·a - b·X = 0.
    sys.push_sandwich(
        (big, big),
        r_hat.matrix(),
        r_hat.matrix(),
        &Matrix::zero(big, big),
    );
    // p D = d p.
    let dp = couple.d.compose(&p)?;
    for r in 0..n {
        for c in 0..big {
            let mut row = vec_zero(big * big);
            for k in 0..big {
                let coeff = p.matrix().get(r, k);
                if !coeff.is_zero() {
                    row[k * big + c] = &row[k * big + c] + coeff;
                }
            }
            sys.push_row(row, dp.matrix().get(r, c).clone());
        }
    }
    // D i = i d_V.
    let idv = i.compose(&couple.d_v)?;
    for r in 0..big {
        for c in 0..m {
            let mut row = vec_zero(big * big);
            for k in 0..big {
                let coeff = i.matrix().get(k, c);
                if !coeff.is_zero() {
                    row[r * big + k] = &row[r * big + k] + coeff;
                }
            }
            sys.push_row(row, idv.matrix().get(r, c).clone());
        }
    }
    let (particular, _) = sys.solve();
    Ok(particular.is_some())
}
