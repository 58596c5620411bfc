//! Representations of Lie algebras and the extra operators that make them
//! compatible with a Reynolds operator and a derivation on the algebra.
//!
//! The central object is [`RldRep`]: a Reynolds–derivation pair `(L, R, d)`
//! acting on a module `(V, ρ)` that carries its own Reynolds operator `R_V`
//! and derivation `d_V`, subject to
//!
//! ```text
//! ρ(Rx) ∘ R_V = R_V ∘ (ρ(Rx) + ρ(x) R_V - ρ(Rx) R_V)      (Reynolds side)
//! d_V ∘ ρ(x)  = ρ(dx) + ρ(x) ∘ d_V                         (derivation side)
//! R_V ∘ d_V   = d_V ∘ R_V
//! ```
//!
//! The derivation-side axiom also circulates in a variant transcription
//! `d_V ρ(x) = ρ(dx) + ρ(x) R_V - ρ(Rx) R_V`; `Mode::Literal` checks that
//! form instead so disputed inputs can be audited. The default form is the
//! one satisfied by the adjoint action of every valid pair.
//!
//! A Reynolds operator also transports the action to the descendent bracket:
//! see [`induced_rep`] and [`RhoRVariant`] for the two transcriptions of
//! that formula.

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::exactlin::{vec_add, vec_scale, vec_sub, vec_zero, LinearOp, Matrix, Scalar, Vector};
use crate::lie::{basis_vec, induced_bracket, LieAlgebra, ReynoldsLieDerPair};
use crate::Mode;
use serde::{Deserialize, Serialize};

/// A representation `ρ: L → gl(V)` on a fixed basis of `V`, stored as one
/// matrix per basis vector of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationWire")]
pub struct Representation {
    pub algebra: LieAlgebra,
    dim_v: usize,
    rho: Vec<LinearOp>,
}

#[derive(Deserialize)]
struct RepresentationWire {
    algebra: LieAlgebra,
    dim_v: usize,
    rho: Vec<LinearOp>,
}

impl TryFrom<RepresentationWire> for Representation {
    type Error = crate::error::Error;

    fn try_from(w: RepresentationWire) -> Result<Self> {
        Representation::new(w.algebra, w.dim_v, w.rho)
    }
}

impl Representation {
    pub fn new(algebra: LieAlgebra, dim_v: usize, rho: Vec<LinearOp>) -> Result<Self> {
        if rho.len() != algebra.dim() {
            return Err(Error::dim(format!(
                "need one action matrix per algebra basis vector: got {} for dimension {}",
                rho.len(),
                algebra.dim()
            )));
        }
        for (i, op) in rho.iter().enumerate() {
            if op.src_dim() != dim_v || op.dst_dim() != dim_v {
                return Err(Error::dim(format!(
                    "action of e_{} must be {dim_v}x{dim_v}, got {}x{}",
                    i + 1,
                    op.dst_dim(),
                    op.src_dim()
                )));
            }
        }
        Ok(Representation { algebra, dim_v, rho })
    }

    /// The trivial action of `l` on a `dim_v`-dimensional space.
    pub fn trivial(algebra: LieAlgebra, dim_v: usize) -> Self {
        let rho = (0..algebra.dim()).map(|_| LinearOp::zero(dim_v, dim_v)).collect();
        Representation { algebra, dim_v, rho }
    }

    /// The adjoint action of `l` on itself.
    pub fn adjoint(algebra: LieAlgebra) -> Self {
        let rho = (0..algebra.dim()).map(|i| algebra.adjoint_basis(i)).collect();
        let dim_v = algebra.dim();
        Representation { algebra, dim_v, rho }
    }

    pub fn dim_l(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// `ρ(e_i)`.
    pub fn rho(&self, i: usize) -> &LinearOp {
        &self.rho[i]
    }

    /// Linear extension `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn action_of(&self, x: &[Scalar]) -> LinearOp {
        assert_eq!(x.len(), self.dim_l(), "vector length mismatch");
        let mut m = Matrix::zero(self.dim_v, self.dim_v);
        for (xi, op) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                m = m.add(&op.matrix().scale(xi)).expect("uniform shapes");
            }
        }
        LinearOp::new(m)
    }

    /// `ρ(x)u` for coordinate vectors.
    pub fn apply(&self, x: &[Scalar], u: &[Scalar]) -> Vector {
        assert_eq!(u.len(), self.dim_v, "module vector length mismatch");
        let mut out = vec_zero(self.dim_v);
        for (xi, op) in x.iter().zip(&self.rho) {
            if !xi.is_zero() {
                let contrib = op.apply(u).expect("shape checked at construction");
                out = vec_add(&out, &vec_scale(xi, &contrib));
            }
        }
        out
    }
}

/// `ρ([e_i, e_j]) = ρ(e_i)ρ(e_j) - ρ(e_j)ρ(e_i)` on every basis pair.
/// Violations are recorded per module basis column: `at = [i, j, k]` means
/// the defect applied to the `k`-th basis vector of `V` (all 1-based).
pub fn check_rep(rep: &Representation) -> CheckReport {
    let mut report = CheckReport::pass();
    let n = rep.dim_l();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = rep.action_of(&rep.algebra.bracket_basis(i, j));
            let comm = rep.rho(i).commutator(rep.rho(j)).expect("uniform shapes");
            let defect = lhs.matrix().sub(&comm).expect("uniform shapes");
            for k in 0..rep.dim_v() {
                report.record("rep_commutator", vec![i + 1, j + 1, k + 1], defect.col(k));
            }
        }
    }
    report
}

/// Direct sum of two representations of the same algebra (block-diagonal
/// action, `a` occupying the leading coordinates).
pub fn direct_sum_reps(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.algebra != b.algebra {
        return Err(Error::invalid(
            "direct sum requires representations of the same algebra".to_string(),
        ));
    }
    let dim_v = a.dim_v() + b.dim_v();
    let rho = (0..a.dim_l())
        .map(|i| {
            let mut m = Matrix::zero(dim_v, dim_v);
            m.set_block(0, 0, a.rho(i).matrix());
            m.set_block(a.dim_v(), a.dim_v(), b.rho(i).matrix());
            LinearOp::new(m)
        })
        .collect();
    Representation::new(a.algebra.clone(), dim_v, rho)
}

/// A representation of a Reynolds Lie algebra `(L, R)`: the module carries
/// its own operator `R_V` tied to `R` by the compatibility identity checked
/// in [`check_reynolds_rep`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ReynoldsRepWire")]
pub struct ReynoldsRep {
    pub rep: Representation,
    #[serde(rename = "R")]
    pub r: LinearOp,
    #[serde(rename = "R_V")]
    pub r_v: LinearOp,
}

#[derive(Deserialize)]
struct ReynoldsRepWire {
    rep: Representation,
    #[serde(rename = "R")]
    r: LinearOp,
    #[serde(rename = "R_V")]
    r_v: LinearOp,
}

impl TryFrom<ReynoldsRepWire> for ReynoldsRep {
    type Error = crate::error::Error;

    fn try_from(w: ReynoldsRepWire) -> Result<Self> {
        ReynoldsRep::new(w.rep, w.r, w.r_v)
    }
}

impl ReynoldsRep {
    pub fn new(rep: Representation, r: LinearOp, r_v: LinearOp) -> Result<Self> {
        let n = rep.dim_l();
        let m = rep.dim_v();
        if r.src_dim() != n || r.dst_dim() != n {
            return Err(Error::dim(format!(
                "R must be {n}x{n}, got {}x{}",
                r.dst_dim(),
                r.src_dim()
            )));
        }
        if r_v.src_dim() != m || r_v.dst_dim() != m {
            return Err(Error::dim(format!(
                "R_V must be {m}x{m}, got {}x{}",
                r_v.dst_dim(),
                r_v.src_dim()
            )));
        }
        Ok(ReynoldsRep { rep, r, r_v })
    }
}

/// Checks `ρ(Rx) R_V = R_V (ρ(Rx) + ρ(x) R_V - ρ(Rx) R_V)` for every
/// algebra basis vector `x = e_i` (the identity is linear in `x`).
/// Violations are recorded per module column: `at = [i, k]`.
pub fn check_reynolds_rep(rr: &ReynoldsRep) -> CheckReport {
    let mut report = CheckReport::pass();
    for i in 0..rr.rep.dim_l() {
        let rho_rx = rr.rep.action_of(&rr.r.apply_basis(i));
        let rho_x = rr.rep.rho(i);
        let lhs = rho_rx.compose(&rr.r_v).expect("shapes checked");
        let inner = rho_rx
            .add(&rho_x.compose(&rr.r_v).expect("shapes checked"))
            .and_then(|s| s.sub(&rho_rx.compose(&rr.r_v).expect("shapes checked")))
            .expect("uniform shapes");
        let rhs = rr.r_v.compose(&inner).expect("shapes checked");
        let defect = lhs.sub(&rhs).expect("uniform shapes");
        for k in 0..rr.rep.dim_v() {
            report.record("reynolds_rep", vec![i + 1, k + 1], defect.apply_basis(k));
        }
    }
    report
}

/// Which transcription of the descendent action to use; see [`induced_rep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum RhoRVariant {
    /// `ρ_R(x) = ρ(Rx) + R_V ρ(Rx) - R_V ρ(x)` (module operator applied
    /// after the action). This is the form whose cocycle identities match
    /// the first-order deformation equations term by term, so it is the
    /// default.
    #[default]
    PostCompose,
    /// `ρ_R(x) = ρ(Rx) + ρ(x) R_V - ρ(Rx) R_V` (module operator applied
    /// first). This is the restriction of the descendent bracket of the
    /// semidirect product, and for the adjoint module with `R_V = R` it
    /// equals the adjoint action of the descendent algebra.
    PreCompose,
}

/// The action of the descendent algebra `(L, [,]_R)` on the same module.
///
/// Both variants produce a representation of the descendent algebra whenever
/// the input satisfies the Reynolds compatibility; they differ on invalid
/// input and occasionally as operators, so the choice is explicit.
pub fn induced_rep(rr: &ReynoldsRep, variant: RhoRVariant) -> Result<Representation> {
    let lr = induced_bracket(&rr.rep.algebra, &rr.r)?;
    let rho = (0..rr.rep.dim_l())
        .map(|i| {
            let rho_rx = rr.rep.action_of(&rr.r.apply_basis(i));
            let rho_x = rr.rep.rho(i);
            let op = match variant {
                RhoRVariant::PostCompose => rho_rx
                    .add(&rr.r_v.compose(&rho_rx)?)?
                    .sub(&rr.r_v.compose(rho_x)?)?,
                RhoRVariant::PreCompose => rho_rx
                    .add(&rho_x.compose(&rr.r_v)?)?
                    .sub(&rho_rx.compose(&rr.r_v)?)?,
            };
            Ok(op)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(lr, rr.rep.dim_v(), rho)
}

/// The full coefficient object for the cohomology of a Reynolds–derivation
/// pair: the pair `(L, R, d)` together with an action `ρ` and the module
/// operators `R_V`, `d_V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RldRep {
    pub pair: ReynoldsLieDerPair,
    pub rep: Representation,
    pub r_v: LinearOp,
    pub d_v: LinearOp,
}

impl RldRep {
    pub fn new(
        pair: ReynoldsLieDerPair,
        rep: Representation,
        r_v: LinearOp,
        d_v: LinearOp,
    ) -> Result<Self> {
        if rep.algebra != pair.algebra {
            return Err(Error::invalid(
                "representation and pair must share the same algebra".to_string(),
            ));
        }
        let m = rep.dim_v();
        for (name, op) in [("R_V", &r_v), ("d_V", &d_v)] {
            if op.src_dim() != m || op.dst_dim() != m {
                return Err(Error::dim(format!(
                    "{name} must be {m}x{m}, got {}x{}",
                    op.dst_dim(),
                    op.src_dim()
                )));
            }
        }
        Ok(RldRep { pair, rep, r_v, d_v })
    }

    pub fn dim_l(&self) -> usize {
        self.pair.dim()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }

    /// The Reynolds-side slice `(ρ, R, R_V)` of this object.
    pub fn reynolds_part(&self) -> ReynoldsRep {
        ReynoldsRep {
            rep: self.rep.clone(),
            r: self.pair.r.clone(),
            r_v: self.r_v.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RldRepWire {
    algebra: LieAlgebra,
    #[serde(rename = "R")]
    r: LinearOp,
    d: LinearOp,
    dim_v: usize,
    rho: Vec<LinearOp>,
    #[serde(rename = "R_V")]
    r_v: LinearOp,
    #[serde(rename = "d_V")]
    d_v: LinearOp,
}

impl Serialize for RldRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RldRepWire {
            algebra: self.pair.algebra.clone(),
            r: self.pair.r.clone(),
            d: self.pair.d.clone(),
            dim_v: self.rep.dim_v(),
            rho: (0..self.rep.dim_l()).map(|i| self.rep.rho(i).clone()).collect(),
            r_v: self.r_v.clone(),
            d_v: self.d_v.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RldRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = RldRepWire::deserialize(d)?;
        let pair = ReynoldsLieDerPair::new(w.algebra.clone(), w.r, w.d)
            .map_err(serde::de::Error::custom)?;
        let rep =
            Representation::new(w.algebra, w.dim_v, w.rho).map_err(serde::de::Error::custom)?;
        RldRep::new(pair, rep, w.r_v, w.d_v).map_err(serde::de::Error::custom)
    }
}

/// Full validation of an [`RldRep`]: the pair axioms (Jacobi, Reynolds,
/// derivation, `Rd = dR`), the representation property, the module Reynolds
/// compatibility, the module derivation axiom in the requested [`Mode`], and
/// `R_V d_V = d_V R_V` (label `rv_dv_commutation`).
pub fn check_rld_rep(rr: &RldRep, mode: Mode) -> CheckReport {
    let mut report = crate::lie::is_reylieder(&rr.pair, mode);
    report.absorb(check_rep(&rr.rep));
    report.absorb(check_reynolds_rep(&rr.reynolds_part()));

    let label = match mode {
        Mode::Standard => "rep_derivation",
        Mode::Literal => "rep_derivation_literal",
    };
    for i in 0..rr.dim_l() {
        let rho_x = rr.rep.rho(i);
        let lhs = rr.d_v.compose(rho_x).expect("shapes checked");
        let rho_dx = rr.rep.action_of(&rr.pair.d.apply_basis(i));
        let rhs = match mode {
            Mode::Standard => rho_dx
                .add(&rho_x.compose(&rr.d_v).expect("shapes checked"))
                .expect("uniform shapes"),
            Mode::Literal => {
                let rho_rx = rr.rep.action_of(&rr.pair.r.apply_basis(i));
                rho_dx
                    .add(&rho_x.compose(&rr.r_v).expect("shapes checked"))
                    .and_then(|s| s.sub(&rho_rx.compose(&rr.r_v).expect("shapes checked")))
                    .expect("uniform shapes")
            }
        };
        let defect = lhs.sub(&rhs).expect("uniform shapes");
        for k in 0..rr.dim_v() {
            report.record(label, vec![i + 1, k + 1], defect.apply_basis(k));
        }
    }

    let comm = rr.r_v.commutator(&rr.d_v).expect("shapes checked");
    for k in 0..rr.dim_v() {
        report.record("rv_dv_commutation", vec![k + 1], comm.col(k));
    }
    report
}

/// The semidirect-product algebra `L ⋉ V` of an action:
/// `[x+u, y+v] = [x,y] + ρ(x)v - ρ(y)u`, with `L` in the leading
/// coordinates.
pub fn semidirect_product(rep: &Representation) -> LieAlgebra {
    let n = rep.dim_l();
    let m = rep.dim_v();
    let dim = n + m;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = rep.algebra.bracket_basis(i, j);
            v.extend(vec_zero(m));
            entries.push((i, j, v));
        }
    }
    for i in 0..n {
        for k in 0..m {
            // [e_i, v_k] = ρ(e_i) v_k, landing in the module block.
            let mut v = vec_zero(n);
            v.extend(rep.rho(i).apply_basis(k));
            entries.push((i, n + k, v));
        }
    }
    LieAlgebra::from_entries(dim, entries).expect("indices constructed in order")
}

/// Assembles the semidirect pair `(L ⋉ V, R ⊕ R_V, d ⊕ d_V)` and validates
/// it in the given mode. The report is a post-assertion: it passes exactly
/// when the input object satisfies the compatibilities the construction
/// needs.
pub fn semidirect_pair(rr: &RldRep, mode: Mode) -> (ReynoldsLieDerPair, CheckReport) {
    let algebra = semidirect_product(&rr.rep);
    let n = rr.dim_l();
    let total = n + rr.dim_v();
    let mut r = Matrix::zero(total, total);
    r.set_block(0, 0, rr.pair.r.matrix());
    r.set_block(n, n, rr.r_v.matrix());
    let mut d = Matrix::zero(total, total);
    d.set_block(0, 0, rr.pair.d.matrix());
    d.set_block(n, n, rr.d_v.matrix());
    let pair = ReynoldsLieDerPair::new(algebra, LinearOp::new(r), LinearOp::new(d))
        .expect("blocks sized to the sum");
    let report = crate::lie::is_reylieder(&pair, mode);
    (pair, report)
}

/// Two algebras acting on each other. `rho_l[i]` is the action of the `i`-th
/// basis vector of `l` on `g`; `rho_g[k]` the action of the `k`-th basis
/// vector of `g` on `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub l: LieAlgebra,
    pub g: LieAlgebra,
    pub rho_l: Vec<LinearOp>,
    pub rho_g: Vec<LinearOp>,
}

impl MatchedPair {
    pub fn new(
        l: LieAlgebra,
        g: LieAlgebra,
        rho_l: Vec<LinearOp>,
        rho_g: Vec<LinearOp>,
    ) -> Result<Self> {
        // Reuse the representation shape checks in both directions.
        Representation::new(l.clone(), g.dim(), rho_l.clone())?;
        Representation::new(g.clone(), l.dim(), rho_g.clone())?;
        Ok(MatchedPair { l, g, rho_l, rho_g })
    }

    fn l_side(&self) -> Representation {
        Representation::new(self.l.clone(), self.g.dim(), self.rho_l.clone())
            .expect("validated at construction")
    }

    fn g_side(&self) -> Representation {
        Representation::new(self.g.clone(), self.l.dim(), self.rho_g.clone())
            .expect("validated at construction")
    }
}

/// Checks both algebras, both actions being representations, and the two
/// mixed compatibility identities
///
/// ```text
/// ρ_L(x)[a,b] - [ρ_L(x)a, b] - [a, ρ_L(x)b] + ρ_L(ρ_G(a)x)b - ρ_L(ρ_G(b)x)a = 0
/// ρ_G(a)[x,y] - [ρ_G(a)x, y] - [x, ρ_G(a)y] + ρ_G(ρ_L(x)a)y - ρ_G(ρ_L(y)a)x = 0
/// ```
///
/// (labels `matched_pair_on_g` with `at = [i, j, k]` for `x = e_i`,
/// `(a,b) = (f_j, f_k)`, and `matched_pair_on_l` symmetrically).
pub fn check_matched_pair(mp: &MatchedPair) -> CheckReport {
    let mut report = crate::lie::jacobi_check(&mp.l);
    report.absorb(crate::lie::jacobi_check(&mp.g));
    let l_side = mp.l_side();
    let g_side = mp.g_side();
    report.absorb(check_rep(&l_side));
    report.absorb(check_rep(&g_side));

    let nl = mp.l.dim();
    let ng = mp.g.dim();
    // First identity: x ranges over L's basis, (a, b) over pairs in G.
    for i in 0..nl {
        for j in 0..ng {
            for k in (j + 1)..ng {
                let a = basis_vec(ng, j);
                let b = basis_vec(ng, k);
                let rho_x = &mp.rho_l[i];
                let t1 = rho_x.apply(&mp.g.bracket_basis(j, k)).expect("shapes");
                let t2 = mp.g.bracket(&rho_x.apply_basis(j), &b);
                let t3 = mp.g.bracket(&a, &rho_x.apply_basis(k));
                // ρ_G(a) x for a = f_j is column i of ρ_G(f_j).
                let t4 = l_side.apply(&mp.rho_g[j].apply_basis(i), &b);
                let t5 = l_side.apply(&mp.rho_g[k].apply_basis(i), &a);
                let residual =
                    vec_add(&vec_sub(&vec_sub(&t1, &t2), &t3), &vec_sub(&t4, &t5));
                report.record("matched_pair_on_g", vec![i + 1, j + 1, k + 1], residual);
            }
        }
    }
    // Second identity: a ranges over G's basis, (x, y) over pairs in L.
    for i in 0..ng {
        for j in 0..nl {
            for k in (j + 1)..nl {
                let x = basis_vec(nl, j);
                let y = basis_vec(nl, k);
                let rho_a = &mp.rho_g[i];
                let t1 = rho_a.apply(&mp.l.bracket_basis(j, k)).expect("shapes");
                let t2 = mp.l.bracket(&rho_a.apply_basis(j), &y);
                let t3 = mp.l.bracket(&x, &rho_a.apply_basis(k));
                let t4 = g_side.apply(&mp.rho_l[j].apply_basis(i), &y);
                let t5 = g_side.apply(&mp.rho_l[k].apply_basis(i), &x);
                let residual =
                    vec_add(&vec_sub(&vec_sub(&t1, &t2), &t3), &vec_sub(&t4, &t5));
                report.record("matched_pair_on_l", vec![i + 1, j + 1, k + 1], residual);
            }
        }
    }
    report
}

/// The bracket `[x+a, y+b] = [x,y] + ρ_G(a)y - ρ_G(b)x + [a,b] + ρ_L(x)b -
/// ρ_L(y)a` on `L ⊕ G` (`L` leading). This is a Lie algebra exactly when
/// [`check_matched_pair`] passes.
pub fn bowtie(mp: &MatchedPair) -> LieAlgebra {
    let nl = mp.l.dim();
    let ng = mp.g.dim();
    let dim = nl + ng;
    let mut entries = Vec::new();
    for i in 0..nl {
        for j in (i + 1)..nl {
            let mut v = mp.l.bracket_basis(i, j);
            v.extend(vec_zero(ng));
            entries.push((i, j, v));
        }
    }
    for i in 0..ng {
        for j in (i + 1)..ng {
            let mut v = vec_zero(nl);
            v.extend(mp.g.bracket_basis(i, j));
            entries.push((nl + i, nl + j, v));
        }
    }
    for i in 0..nl {
        for k in 0..ng {
            // [e_i, f_k] = -ρ_G(f_k) e_i + ρ_L(e_i) f_k.
            let mut v: Vector = mp.rho_g[k].apply_basis(i).iter().map(|s| -s).collect();
            v.extend(mp.rho_l[i].apply_basis(k));
            entries.push((i, nl + k, v));
        }
    }
    LieAlgebra::from_entries(dim, entries).expect("indices constructed in order")
}

/// Checks that `(l, R_l)`, `(g, R_g)` and the two actions form a matched
/// pair on the Reynolds level: both Reynolds identities, both actions
/// Reynolds-compatible (the action of `l` on `g` pairs `R_l` with module
/// operator `R_g`, and symmetrically), and the matched-pair identities.
pub fn check_reynolds_matched_pair(
    mp: &MatchedPair,
    r_l: &LinearOp,
    r_g: &LinearOp,
    mode: Mode,
) -> Result<CheckReport> {
    let mut report = check_matched_pair(mp);
    report.absorb(crate::lie::is_reynolds(&mp.l, r_l, mode));
    report.absorb(crate::lie::is_reynolds(&mp.g, r_g, mode));
    report.absorb(check_reynolds_rep(&ReynoldsRep::new(
        mp.l_side(),
        r_l.clone(),
        r_g.clone(),
    )?));
    report.absorb(check_reynolds_rep(&ReynoldsRep::new(
        mp.g_side(),
        r_g.clone(),
        r_l.clone(),
    )?));
    Ok(report)
}

/// Assembles the pair `(L ⋈ G, R_l ⊕ R_g, d_l ⊕ d_g)` on the bowtie algebra
/// and validates it. As with [`semidirect_pair`], the report is the
/// post-assertion that the blockwise data is compatible.
#[allow(clippy::too_many_arguments)]
pub fn bowtie_pair(
    mp: &MatchedPair,
    r_l: &LinearOp,
    d_l: &LinearOp,
    r_g: &LinearOp,
    d_g: &LinearOp,
    mode: Mode,
) -> Result<(ReynoldsLieDerPair, CheckReport)> {
    let algebra = bowtie(mp);
    let nl = mp.l.dim();
    let total = algebra.dim();
    for (name, op, dim) in [
        ("R_l", r_l, nl),
        ("d_l", d_l, nl),
        ("R_g", r_g, mp.g.dim()),
        ("d_g", d_g, mp.g.dim()),
    ] {
        if op.src_dim() != dim || op.dst_dim() != dim {
            return Err(Error::dim(format!("{name} must be {dim}x{dim}")));
        }
    }
    let mut r = Matrix::zero(total, total);
    r.set_block(0, 0, r_l.matrix());
    r.set_block(nl, nl, r_g.matrix());
    let mut d = Matrix::zero(total, total);
    d.set_block(0, 0, d_l.matrix());
    d.set_block(nl, nl, d_g.matrix());
    let pair = ReynoldsLieDerPair::new(algebra, LinearOp::new(r), LinearOp::new(d))?;
    let report = crate::lie::is_reylieder(&pair, mode);
    Ok((pair, report))
}
