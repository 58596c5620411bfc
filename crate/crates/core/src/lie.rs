//! Lie algebras given by structure constants, and the validators for the
//! structures this crate cares about: Reynolds operators, derivations, and
//! the two together.
//!
//! A Reynolds operator `R` on a Lie algebra `L` satisfies
//!
//! ```text
//! [R(x), R(y)] = R([R(x), y] + [x, R(y)] - [R(x), R(y)])
//! ```
//!
//! and every such operator induces a second ("descendent") Lie bracket
//!
//! ```text
//! [x, y]_R = [R(x), y] + [x, R(y)] - [R(x), R(y)]
//! ```
//!
//! for which `R` becomes a homomorphism `(L, [,]_R) → (L, [,])`. A pair
//! `(R, d)` with `d` a derivation commuting with `R` is the central object of
//! the crate; [`is_reylieder`] bundles all four validations.
//!
//! Validators never fail silently: they return a [`CheckReport`] carrying the
//! basis tuple and exact residual of every violated identity, so a failing
//! structure can be audited entry by entry.

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::exactlin::{vec_add, vec_is_zero, vec_sub, vec_zero, LinearOp, Scalar, Vector};
use crate::Mode;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The `i`-th standard basis vector of `ℚ^n`.
pub fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = vec_zero(n);
    v[i] = Scalar::one();
    v
}

/// A finite-dimensional Lie algebra over `ℚ`, presented by structure
/// constants on a fixed basis `e_1, …, e_n`.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; the diagonal is zero
/// and `i > j` follows by antisymmetry, so antisymmetry holds by
/// construction and only the Jacobi identity needs checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    // Key (i, j) with i < j, 0-based; values are full coordinate vectors.
    // Zero brackets are not stored.
    brackets: BTreeMap<(usize, usize), Vector>,
}

impl LieAlgebra {
    /// The abelian Lie algebra of dimension `n`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            brackets: BTreeMap::new(),
        }
    }

    /// Builds an algebra from `(i, j, value)` entries, `i < j` 0-based.
    pub fn from_entries(dim: usize, entries: Vec<(usize, usize, Vector)>) -> Result<Self> {
        let mut brackets = BTreeMap::new();
        for (i, j, value) in entries {
            if i >= j {
                return Err(Error::invalid(format!(
                    "bracket indices must satisfy i < j, got ({i}, {j})"
                )));
            }
            if j >= dim {
                return Err(Error::invalid(format!(
                    "bracket index {j} out of range for dimension {dim}"
                )));
            }
            if value.len() != dim {
                return Err(Error::dim(format!(
                    "bracket value for ({i}, {j}) has length {} but dim is {dim}",
                    value.len()
                )));
            }
            if brackets.insert((i, j), value.clone()).is_some() {
                return Err(Error::invalid(format!("duplicate bracket entry ({i}, {j})")));
            }
        }
        let mut l = LieAlgebra { dim, brackets };
        l.prune();
        Ok(l)
    }

    /// Same as [`from_entries`](Self::from_entries) with integer coordinates.
    pub fn from_i64_entries(dim: usize, entries: &[(usize, usize, &[i64])]) -> Result<Self> {
        LieAlgebra::from_entries(
            dim,
            entries
                .iter()
                .map(|(i, j, v)| (*i, *j, v.iter().map(|&x| Scalar::from_int(x)).collect()))
                .collect(),
        )
    }

    fn prune(&mut self) {
        self.brackets.retain(|_, v| !vec_is_zero(v));
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Stored entries `(i, j, [e_i, e_j])`, `i < j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Vector)> {
        self.brackets.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// `[e_i, e_j]` for any `i`, `j` (antisymmetry applied as needed).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        assert!(i < self.dim && j < self.dim, "basis index out of range");
        if i == j {
            return vec_zero(self.dim);
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => vec_zero(self.dim),
            Some(v) => {
                if flip {
                    v.iter().map(|s| -s).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Bilinear extension `[x, y]`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length mismatch");
        let mut out = vec_zero(self.dim);
        for (&(i, j), v) in &self.brackets {
            // Coefficient of [e_i, e_j] in [x, y] is x_i y_j - x_j y_i.
            let coeff = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if !coeff.is_zero() {
                for (t, s) in out.iter_mut().zip(v) {
                    *t = &*t + &(&coeff * s);
                }
            }
        }
        out
    }

    /// The adjoint action `ad(e_i)` as a matrix (columns `[e_i, e_j]`).
    pub fn adjoint_basis(&self, i: usize) -> LinearOp {
        let mut m = crate::exactlin::Matrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket_basis(i, j);
            for (r, s) in col.into_iter().enumerate() {
                m.set(r, j, s);
            }
        }
        LinearOp::new(m)
    }

    /// Direct sum, `self` occupying the leading coordinates.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let dim = self.dim + other.dim;
        let mut brackets = BTreeMap::new();
        for (&(i, j), v) in &self.brackets {
            let mut value = v.clone();
            value.extend(vec_zero(other.dim));
            brackets.insert((i, j), value);
        }
        for (&(i, j), v) in &other.brackets {
            let mut value = vec_zero(self.dim);
            value.extend(v.iter().cloned());
            brackets.insert((i + self.dim, j + self.dim), value);
        }
        LieAlgebra { dim, brackets }
    }
}

#[derive(Serialize, Deserialize)]
struct BracketWire {
    i: usize,
    j: usize,
    value: Vector,
}

#[derive(Serialize, Deserialize)]
struct LieWire {
    dim: usize,
    brackets: Vec<BracketWire>,
}

// On the wire, basis indices are 1-based to match the usual e_1, …, e_n
// naming; internally everything is 0-based.
impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieWire {
            dim: self.dim,
            brackets: self
                .entries()
                .map(|(i, j, v)| BracketWire {
                    i: i + 1,
                    j: j + 1,
                    value: v.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = LieWire::deserialize(d)?;
        let entries = wire
            .brackets
            .into_iter()
            .map(|b| {
                if b.i == 0 || b.j == 0 {
                    return Err(serde::de::Error::custom(
                        "bracket indices are 1-based on the wire",
                    ));
                }
                Ok((b.i - 1, b.j - 1, b.value))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        LieAlgebra::from_entries(wire.dim, entries).map_err(serde::de::Error::custom)
    }
}

/// Checks the Jacobi identity `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] +
/// [[e_k,e_i],e_j] = 0` on every basis triple `i < j < k`.
pub fn jacobi_check(l: &LieAlgebra) -> CheckReport {
    let mut report = CheckReport::pass();
    let n = l.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let ei = basis_vec(n, i);
                let ej = basis_vec(n, j);
                let ek = basis_vec(n, k);
                let t1 = l.bracket(&l.bracket(&ei, &ej), &ek);
                let t2 = l.bracket(&l.bracket(&ej, &ek), &ei);
                let t3 = l.bracket(&l.bracket(&ek, &ei), &ej);
                let residual = vec_add(&vec_add(&t1, &t2), &t3);
                report.record("jacobi", vec![i + 1, j + 1, k + 1], residual);
            }
        }
    }
    report
}

/// Checks that `d` is a derivation: `d[e_i,e_j] = [d e_i, e_j] + [e_i, d e_j]`
/// on every basis pair `i < j`.
pub fn is_derivation(l: &LieAlgebra, d: &LinearOp) -> CheckReport {
    let mut report = CheckReport::pass();
    let n = l.dim();
    if d.src_dim() != n || d.dst_dim() != n {
        report.record("derivation_shape", vec![], vec![Scalar::one()]);
        return report;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let ei = basis_vec(n, i);
            let ej = basis_vec(n, j);
            let lhs = d.apply(&l.bracket_basis(i, j)).expect("shape checked");
            let rhs = vec_add(
                &l.bracket(&d.apply_basis(i), &ej),
                &l.bracket(&ei, &d.apply_basis(j)),
            );
            report.record("derivation", vec![i + 1, j + 1], vec_sub(&lhs, &rhs));
        }
    }
    report
}

/// Checks the Reynolds identity on every basis pair `i < j`.
///
/// `Mode::Standard` checks `[Rx,Ry] = R([Rx,y] + [x,Ry] - [Rx,Ry])`.
/// `Mode::Literal` checks the variant transcription
/// `[Rx,Ry] = R([x,Ry] + [x,Ry] - [Rx,Ry])` (first summand repeated), kept
/// for auditing structures stated against that reading.
pub fn is_reynolds(l: &LieAlgebra, r: &LinearOp, mode: Mode) -> CheckReport {
    let mut report = CheckReport::pass();
    let n = l.dim();
    if r.src_dim() != n || r.dst_dim() != n {
        report.record("reynolds_shape", vec![], vec![Scalar::one()]);
        return report;
    }
    let label = match mode {
        Mode::Standard => "reynolds",
        Mode::Literal => "reynolds_literal",
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let ei = basis_vec(n, i);
            let ej = basis_vec(n, j);
            let ri = r.apply_basis(i);
            let rj = r.apply_basis(j);
            let lhs = l.bracket(&ri, &rj);
            let inner = match mode {
                Mode::Standard => vec_sub(
                    &vec_add(&l.bracket(&ri, &ej), &l.bracket(&ei, &rj)),
                    &l.bracket(&ri, &rj),
                ),
                Mode::Literal => {
                    let t = l.bracket(&ei, &rj);
                    vec_sub(&vec_add(&t, &t), &l.bracket(&ri, &rj))
                }
            };
            let rhs = r.apply(&inner).expect("shape checked");
            report.record(label, vec![i + 1, j + 1], vec_sub(&lhs, &rhs));
        }
    }
    report
}

/// A Lie algebra equipped with a Reynolds operator and a derivation that
/// commute with each other. Construction only checks shapes; call
/// [`is_reylieder`] for the axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairWire")]
pub struct ReynoldsLieDerPair {
    pub algebra: LieAlgebra,
    #[serde(rename = "R")]
    pub r: LinearOp,
    pub d: LinearOp,
}

#[derive(Deserialize)]
struct PairWire {
    algebra: LieAlgebra,
    #[serde(rename = "R")]
    r: LinearOp,
    d: LinearOp,
}

impl TryFrom<PairWire> for ReynoldsLieDerPair {
    type Error = crate::error::Error;

    fn try_from(w: PairWire) -> Result<Self> {
        ReynoldsLieDerPair::new(w.algebra, w.r, w.d)
    }
}

impl ReynoldsLieDerPair {
    pub fn new(algebra: LieAlgebra, r: LinearOp, d: LinearOp) -> Result<Self> {
        let n = algebra.dim();
        for (name, op) in [("R", &r), ("d", &d)] {
            if op.src_dim() != n || op.dst_dim() != n {
                return Err(Error::dim(format!(
                    "{name} must be {n}x{n}, got {}x{}",
                    op.dst_dim(),
                    op.src_dim()
                )));
            }
        }
        Ok(ReynoldsLieDerPair { algebra, r, d })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// Full validation of a [`ReynoldsLieDerPair`]: Jacobi, Reynolds identity
/// (in the requested mode), derivation identity, and the commutation
/// `R ∘ d = d ∘ R` (label `rd_commutation`, one residual column per basis
/// vector).
pub fn is_reylieder(p: &ReynoldsLieDerPair, mode: Mode) -> CheckReport {
    let mut report = jacobi_check(&p.algebra);
    report.absorb(is_reynolds(&p.algebra, &p.r, mode));
    report.absorb(is_derivation(&p.algebra, &p.d));
    let comm = p.r.commutator(&p.d).expect("shapes checked at construction");
    for j in 0..p.dim() {
        report.record("rd_commutation", vec![j + 1], comm.col(j));
    }
    report
}

/// The descendent bracket `[x,y]_R = [Rx,y] + [x,Ry] - [Rx,Ry]` as a new
/// algebra on the same underlying space.
///
/// When `R` satisfies the Reynolds identity the result is again a Lie
/// algebra and `R([x,y]_R) = [Rx,Ry]`; this function just computes the
/// table, callers interested in validity run [`jacobi_check`] on it.
pub fn induced_bracket(l: &LieAlgebra, r: &LinearOp) -> Result<LieAlgebra> {
    let n = l.dim();
    if r.src_dim() != n || r.dst_dim() != n {
        return Err(Error::dim(
            "R must be a square matrix of the algebra dimension".to_string(),
        ));
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let ei = basis_vec(n, i);
            let ej = basis_vec(n, j);
            let ri = r.apply_basis(i);
            let rj = r.apply_basis(j);
            let v = vec_sub(
                &vec_add(&l.bracket(&ri, &ej), &l.bracket(&ei, &rj)),
                &l.bracket(&ri, &rj),
            );
            entries.push((i, j, v));
        }
    }
    LieAlgebra::from_entries(n, entries)
}

/// Checks that `f` is a homomorphism of Reynolds–derivation pairs:
/// `f[x,y] = [fx,fy]`, `f ∘ R = R' ∘ f`, `f ∘ d = d' ∘ f`.
pub fn is_homomorphism(
    f: &LinearOp,
    from: &ReynoldsLieDerPair,
    to: &ReynoldsLieDerPair,
) -> Result<CheckReport> {
    if f.src_dim() != from.dim() || f.dst_dim() != to.dim() {
        return Err(Error::dim(format!(
            "homomorphism must be {}x{}, got {}x{}",
            to.dim(),
            from.dim(),
            f.dst_dim(),
            f.src_dim()
        )));
    }
    let mut report = CheckReport::pass();
    let n = from.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let lhs = f.apply(&from.algebra.bracket_basis(i, j))?;
            let rhs = to.algebra.bracket(&f.apply_basis(i), &f.apply_basis(j));
            report.record("homomorphism_bracket", vec![i + 1, j + 1], vec_sub(&lhs, &rhs));
        }
    }
    let fr = f.compose(&from.r)?;
    let rf = to.r.compose(f)?;
    let fd = f.compose(&from.d)?;
    let df = to.d.compose(f)?;
    for j in 0..n {
        report.record(
            "homomorphism_r",
            vec![j + 1],
            vec_sub(&fr.apply_basis(j), &rf.apply_basis(j)),
        );
        report.record(
            "homomorphism_d",
            vec![j + 1],
            vec_sub(&fd.apply_basis(j), &df.apply_basis(j)),
        );
    }
    Ok(report)
}
