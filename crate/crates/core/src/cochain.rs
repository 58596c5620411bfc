//! Alternating cochains and the four cochain complexes attached to a
//! Reynolds–derivation pair acting on a module.
//!
//! Spaces. `C^n(L;V)` is the space of alternating `n`-linear maps
//! `Λ^n L → V`, stored as one value per strictly increasing basis tuple in
//! lexicographic order. Building on it:
//!
//! * the classical complex of `(L; ρ)` with differential `δ`;
//! * the classical complex of the descendent algebra `(L, [,]_R)` with the
//!   descendent action, differential written `δ_R`;
//! * the two-component complex `P^n = C^n(L;V) ⊕ C^{n-1}(L_R;V)` with
//!   `D(f, g) = (δf, -δ_R g - φf)`, where `φ` transports a cochain to the
//!   descendent algebra;
//! * the four-component complex `Q^n = P^n × P^{n-1}` with
//!   `𝒟(α, β) = (Dα, Dβ + (-1)^n Δα)`, where `Δ` is the derivation
//!   difference operator.
//!
//! Degree-0 convention. The transport `φ` is the identity in degree 0,
//! and with that value the square of the two-component differential fails
//! on degree-0 elements (take `R` and `R_V` both the identity: `φ`
//! annihilates every positive-degree cochain, so `D∘D` on degree 0 reduces
//! to `δ_R - φδ`, which is nonzero). The operator-level functions here keep
//! the literal degree-0 formulas so they can be audited, while
//! [`ComplexEngine`] uses the zero map as the degree-0 differential of both
//! composite complexes; all squares then vanish and every reported group is
//! well defined. Degree-0 groups of the composite complexes therefore equal
//! the full degree-0 space, and the degree-1 group consists of all
//! 1-cocycles.

use crate::check::CheckReport;
use crate::error::{Error, Result};
use crate::exactlin::{
    vec_add, vec_is_zero, vec_neg, vec_scale, vec_sub, vec_zero, LinearOp, Matrix, Scalar, Vector,
};
use crate::lie::basis_vec;
use crate::rep::{check_rep, check_reynolds_rep, check_rld_rep, induced_rep, Representation,
    ReynoldsRep, RhoRVariant, RldRep};
use crate::Mode;
use serde::{Deserialize, Serialize};

/// `C(n, k)` as usize (exact; the dimensions here are tiny).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: usize = 1;
    let mut den: usize = 1;
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// All strictly increasing `k`-tuples from `{0, .., dim-1}` in
/// lexicographic order. `k = 0` yields the single empty tuple.
pub fn increasing_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(dim, k));
    if k > dim {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next increasing tuple.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if cur[pos] < dim - (k - pos) {
                cur[pos] += 1;
                for q in (pos + 1)..k {
                    cur[q] = cur[q - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        if k == 0 {
            return out;
        }
    }
}

/// Lexicographic rank of a strictly increasing tuple.
pub fn tuple_rank(dim: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut prev = 0;
    for (pos, &t) in tuple.iter().enumerate() {
        for c in prev..t {
            rank += binomial(dim - c - 1, k - pos - 1);
        }
        prev = t + 1;
    }
    rank
}

/// Sorts basis indices, returning `None` for a repeated index and otherwise
/// the increasing tuple with the sign of the sorting permutation.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut negative = false;
    // Insertion sort with inversion counting; tuples have length <= 7.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

/// An alternating `n`-linear map `Λ^n L → V` in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CochainWire")]
pub struct Cochain {
    dim_l: usize,
    dim_v: usize,
    degree: usize,
    /// One value per strictly increasing basis tuple, lexicographic order.
    /// Degree 0 has exactly one value; degrees above `dim_l` have none.
    values: Vec<Vector>,
}

#[derive(Deserialize)]
struct CochainWire {
    dim_l: usize,
    dim_v: usize,
    degree: usize,
    values: Vec<Vector>,
}

impl TryFrom<CochainWire> for Cochain {
    type Error = crate::error::Error;

    fn try_from(w: CochainWire) -> Result<Self> {
        Cochain::from_values(w.dim_l, w.dim_v, w.degree, w.values)
    }
}

impl Cochain {
    pub fn zero(dim_l: usize, dim_v: usize, degree: usize) -> Self {
        let count = binomial(dim_l, degree);
        Cochain {
            dim_l,
            dim_v,
            degree,
            values: vec![vec_zero(dim_v); count],
        }
    }

    pub fn from_values(dim_l: usize, dim_v: usize, degree: usize, values: Vec<Vector>) -> Result<Self> {
        let count = binomial(dim_l, degree);
        if values.len() != count {
            return Err(Error::dim(format!(
                "degree-{degree} cochain over dimension {dim_l} needs {count} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| v.len() != dim_v) {
            return Err(Error::dim(format!("every cochain value must have length {dim_v}")));
        }
        Ok(Cochain { dim_l, dim_v, degree, values })
    }

    /// Builds a cochain by evaluating `f` on every increasing basis tuple.
    pub fn from_basis_fn(
        dim_l: usize,
        dim_v: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Vector,
    ) -> Self {
        let values = increasing_tuples(dim_l, degree)
            .iter()
            .map(|t| {
                let v = f(t);
                assert_eq!(v.len(), dim_v, "cochain value has wrong length");
                v
            })
            .collect();
        Cochain { dim_l, dim_v, degree, values }
    }

    /// Degree-0 cochain holding a single module vector.
    pub fn from_vector(dim_l: usize, v: Vector) -> Self {
        Cochain { dim_l, dim_v: v.len(), degree: 0, values: vec![v] }
    }

    /// Degree-1 cochain given by a linear map `L → V` (columns are values).
    pub fn from_linear_op(op: &LinearOp) -> Self {
        let dim_l = op.src_dim();
        let dim_v = op.dst_dim();
        let values = (0..dim_l).map(|j| op.apply_basis(j)).collect();
        Cochain { dim_l, dim_v, degree: 1, values }
    }

    /// Interprets a degree-1 cochain as the linear map `L → V`.
    pub fn to_linear_op(&self) -> Result<LinearOp> {
        if self.degree != 1 {
            return Err(Error::invalid(format!(
                "expected a degree-1 cochain, got degree {}",
                self.degree
            )));
        }
        let mut m = Matrix::zero(self.dim_v, self.dim_l);
        for (j, v) in self.values.iter().enumerate() {
            for (r, s) in v.iter().enumerate() {
                m.set(r, j, s.clone());
            }
        }
        Ok(LinearOp::new(m))
    }

    pub fn dim_l(&self) -> usize {
        self.dim_l
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| vec_is_zero(v))
    }

    /// Value on an arbitrary basis tuple (sign from sorting; zero on
    /// repeats).
    pub fn eval_basis(&self, indices: &[usize]) -> Vector {
        assert_eq!(indices.len(), self.degree, "wrong number of arguments");
        match sort_with_sign(indices) {
            None => vec_zero(self.dim_v),
            Some((sorted, negative)) => {
                if sorted.iter().any(|&i| i >= self.dim_l) {
                    panic!("basis index out of range");
                }
                if self.values.is_empty() {
                    return vec_zero(self.dim_v);
                }
                let v = &self.values[tuple_rank(self.dim_l, &sorted)];
                if negative {
                    vec_neg(v)
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Multilinear evaluation on coordinate vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        for a in args {
            assert_eq!(a.len(), self.dim_l, "argument length mismatch");
        }
        let mut out = vec_zero(self.dim_v);
        if self.degree == 0 {
            return self.values[0].clone();
        }
        // Expand multilinearly over the basis, skipping zero coefficients.
        let n = self.degree;
        let mut idx = vec![0usize; n];
        loop {
            let mut coeff = Scalar::one();
            for (a, &i) in args.iter().zip(&idx) {
                coeff = &coeff * &a[i];
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                let base = self.eval_basis(&idx);
                out = vec_add(&out, &vec_scale(&coeff, &base));
            }
            // Odometer over all index tuples.
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < self.dim_l {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| vec_add(a, b))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| vec_sub(a, b))
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(&Vector, &Vector) -> Vector) -> Result<Cochain> {
        if self.dim_l != other.dim_l || self.dim_v != other.dim_v || self.degree != other.degree {
            return Err(Error::dim("cochain shape mismatch".to_string()));
        }
        Ok(Cochain {
            dim_l: self.dim_l,
            dim_v: self.dim_v,
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            dim_l: self.dim_l,
            dim_v: self.dim_v,
            degree: self.degree,
            values: self.values.iter().map(|v| vec_neg(v)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            dim_l: self.dim_l,
            dim_v: self.dim_v,
            degree: self.degree,
            values: self.values.iter().map(|v| vec_scale(c, v)).collect(),
        }
    }

    /// Flat coordinates: tuple rank major, module coordinate minor.
    pub fn to_flat(&self) -> Vector {
        let mut out = Vec::with_capacity(self.values.len() * self.dim_v);
        for v in &self.values {
            out.extend(v.iter().cloned());
        }
        out
    }

    pub fn from_flat(dim_l: usize, dim_v: usize, degree: usize, flat: &[Scalar]) -> Result<Self> {
        let count = binomial(dim_l, degree);
        if flat.len() != count * dim_v {
            return Err(Error::dim(format!(
                "flat cochain needs {} coordinates, got {}",
                count * dim_v,
                flat.len()
            )));
        }
        let values = (0..count).map(|t| flat[t * dim_v..(t + 1) * dim_v].to_vec()).collect();
        Ok(Cochain { dim_l, dim_v, degree, values })
    }
}

/// The differential of the classical complex of `(L; ρ)`:
///
/// ```text
/// (δf)(x_1,..,x_{n+1}) =   Σ_i (-1)^{i+n} ρ(x_i) f(.., x̂_i, ..)
///                        + Σ_{i<j} (-1)^{i+j+n+1} f([x_i,x_j], .., x̂_i, .., x̂_j, ..)
/// ```
///
/// In degree 0 this is `(δv)(x) = -ρ(x)v`.
pub fn delta_ce(rep: &Representation, f: &Cochain) -> Cochain {
    assert_eq!(f.dim_l(), rep.dim_l(), "cochain/algebra dimension mismatch");
    assert_eq!(f.dim_v(), rep.dim_v(), "cochain/module dimension mismatch");
    let n = f.degree();
    let dim_l = f.dim_l();
    Cochain::from_basis_fn(dim_l, f.dim_v(), n + 1, |tuple| {
        let mut out = vec_zero(f.dim_v());
        // Action terms: position p (0-based) carries sign (-1)^{n+p+1}.
        for p in 0..=n {
            let mut rest = tuple.to_vec();
            let xi = rest.remove(p);
            let term = rep.rho(xi).apply(&f.eval_basis(&rest)).expect("shapes agree");
            if (n + p + 1) % 2 == 0 {
                out = vec_add(&out, &term);
            } else {
                out = vec_sub(&out, &term);
            }
        }
        // Bracket terms: positions p < q carry sign (-1)^{p+q+n+1}.
        for p in 0..=n {
            for q in (p + 1)..=n {
                let bracket = rep.algebra.bracket_basis(tuple[p], tuple[q]);
                if vec_is_zero(&bracket) {
                    continue;
                }
                let mut rest: Vec<usize> = tuple.to_vec();
                rest.remove(q);
                rest.remove(p);
                let mut args: Vec<&[Scalar]> = Vec::with_capacity(n);
                args.push(&bracket);
                let basis_cols: Vec<Vector> =
                    rest.iter().map(|&i| basis_vec(dim_l, i)).collect();
                for b in &basis_cols {
                    args.push(b);
                }
                let term = f.eval(&args);
                if (p + q + n + 1) % 2 == 0 {
                    out = vec_add(&out, &term);
                } else {
                    out = vec_sub(&out, &term);
                }
            }
        }
        out
    })
}

/// The transport of a cochain to the descendent algebra:
///
/// ```text
/// (φf)(x_1,..,x_n) = f(Rx_1,..,Rx_n)
///                  - R_V Σ_i f(Rx_1,..,x_i,..,Rx_n)
///                  + (n-1) R_V f(Rx_1,..,Rx_n)
/// ```
///
/// for `n ≥ 1`; in degree 0 the literal value is the identity map. See the
/// module notes for how the composite complexes treat degree 0.
pub fn phi(r: &LinearOp, r_v: &LinearOp, f: &Cochain) -> Cochain {
    assert!(r.src_dim() == f.dim_l() && r.dst_dim() == f.dim_l(), "R shape mismatch");
    assert!(r_v.src_dim() == f.dim_v() && r_v.dst_dim() == f.dim_v(), "R_V shape mismatch");
    let n = f.degree();
    if n == 0 {
        return f.clone();
    }
    let dim_l = f.dim_l();
    Cochain::from_basis_fn(dim_l, f.dim_v(), n, |tuple| {
        let images: Vec<Vector> = tuple.iter().map(|&i| r.apply_basis(i)).collect();
        let all_r: Vec<&[Scalar]> = images.iter().map(|v| v.as_slice()).collect();
        let head = f.eval(&all_r);
        let mut out = head.clone();
        for p in 0..n {
            let plain = basis_vec(dim_l, tuple[p]);
            let mut args = all_r.clone();
            args[p] = &plain;
            let term = r_v.apply(&f.eval(&args)).expect("shapes agree");
            out = vec_sub(&out, &term);
        }
        if n >= 1 {
            let scaled = vec_scale(
                &Scalar::from_int(n as i64 - 1),
                &r_v.apply(&head).expect("shapes agree"),
            );
            out = vec_add(&out, &scaled);
        }
        out
    })
}

/// The derivation difference operator
///
/// ```text
/// (Δf)(x_1,..,x_n) = Σ_i f(x_1,.., d x_i, .., x_n) - d_V f(x_1,..,x_n),
/// ```
///
/// in degree 0 simply `-d_V v`. Degree-preserving.
pub fn delta_der(d: &LinearOp, d_v: &LinearOp, f: &Cochain) -> Cochain {
    assert!(d.src_dim() == f.dim_l() && d.dst_dim() == f.dim_l(), "d shape mismatch");
    assert!(d_v.src_dim() == f.dim_v() && d_v.dst_dim() == f.dim_v(), "d_V shape mismatch");
    let n = f.degree();
    let dim_l = f.dim_l();
    Cochain::from_basis_fn(dim_l, f.dim_v(), n, |tuple| {
        let head = f.eval_basis(tuple);
        let mut out = vec_neg(&d_v.apply(&head).expect("shapes agree"));
        let basis_cols: Vec<Vector> = tuple.iter().map(|&i| basis_vec(dim_l, i)).collect();
        for p in 0..n {
            let image = d.apply_basis(tuple[p]);
            let mut args: Vec<&[Scalar]> = basis_cols.iter().map(|v| v.as_slice()).collect();
            args[p] = &image;
            out = vec_add(&out, &f.eval(&args));
        }
        out
    })
}

/// An element of the two-component space `P^n = C^n(L;V) ⊕ C^{n-1}(L_R;V)`.
/// Degree 0 has no second component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCochain {
    pub main: Cochain,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<Cochain>,
}

impl PairCochain {
    pub fn new(main: Cochain, tail: Option<Cochain>) -> Result<Self> {
        match (&tail, main.degree()) {
            (None, 0) => {}
            (Some(_), 0) => {
                return Err(Error::dim(
                    "degree-0 element must not have a second component".to_string(),
                ));
            }
            (None, n) => {
                return Err(Error::dim(format!(
                    "degree-{n} element needs a second component"
                )));
            }
            (Some(t), n) => {
                if t.degree() + 1 != n {
                    return Err(Error::dim(format!(
                        "second component must have degree {}, got {}",
                        n - 1,
                        t.degree()
                    )));
                }
                if t.dim_l() != main.dim_l() || t.dim_v() != main.dim_v() {
                    return Err(Error::dim("component shape mismatch".to_string()));
                }
            }
        }
        Ok(PairCochain { main, tail })
    }

    pub fn zero(dim_l: usize, dim_v: usize, degree: usize) -> Self {
        let main = Cochain::zero(dim_l, dim_v, degree);
        let tail = (degree >= 1).then(|| Cochain::zero(dim_l, dim_v, degree - 1));
        PairCochain { main, tail }
    }

    pub fn degree(&self) -> usize {
        self.main.degree()
    }

    pub fn dim_l(&self) -> usize {
        self.main.dim_l()
    }

    pub fn dim_v(&self) -> usize {
        self.main.dim_v()
    }

    pub fn is_zero(&self) -> bool {
        self.main.is_zero() && self.tail.as_ref().map_or(true, |t| t.is_zero())
    }

    pub fn add(&self, other: &PairCochain) -> Result<PairCochain> {
        let tail = match (&self.tail, &other.tail) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            (None, None) => None,
            _ => return Err(Error::dim("component mismatch".to_string())),
        };
        Ok(PairCochain { main: self.main.add(&other.main)?, tail })
    }

    pub fn sub(&self, other: &PairCochain) -> Result<PairCochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PairCochain {
        PairCochain {
            main: self.main.neg(),
            tail: self.tail.as_ref().map(|t| t.neg()),
        }
    }

    /// Flat coordinates: first component block, then second.
    pub fn to_flat(&self) -> Vector {
        let mut out = self.main.to_flat();
        if let Some(t) = &self.tail {
            out.extend(t.to_flat());
        }
        out
    }

    pub fn from_flat(dim_l: usize, dim_v: usize, degree: usize, flat: &[Scalar]) -> Result<Self> {
        let main_len = binomial(dim_l, degree) * dim_v;
        let tail_len = if degree >= 1 { binomial(dim_l, degree - 1) * dim_v } else { 0 };
        if flat.len() != main_len + tail_len {
            return Err(Error::dim(format!(
                "flat element needs {} coordinates, got {}",
                main_len + tail_len,
                flat.len()
            )));
        }
        let main = Cochain::from_flat(dim_l, dim_v, degree, &flat[..main_len])?;
        let tail = if degree >= 1 {
            Some(Cochain::from_flat(dim_l, dim_v, degree - 1, &flat[main_len..])?)
        } else {
            None
        };
        Ok(PairCochain { main, tail })
    }
}

/// An element of the four-component space `Q^n = P^n × P^{n-1}`; degrees 0
/// and 1 have no second pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadCochain {
    pub main: PairCochain,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<PairCochain>,
}

impl QuadCochain {
    pub fn new(main: PairCochain, tail: Option<PairCochain>) -> Result<Self> {
        match (&tail, main.degree()) {
            (None, 0) | (None, 1) => {}
            (Some(t), n) if n >= 2 => {
                if t.degree() + 1 != n {
                    return Err(Error::dim(format!(
                        "second pair must have degree {}, got {}",
                        n - 1,
                        t.degree()
                    )));
                }
                if t.dim_l() != main.dim_l() || t.dim_v() != main.dim_v() {
                    return Err(Error::dim("component shape mismatch".to_string()));
                }
            }
            (None, n) => {
                return Err(Error::dim(format!("degree-{n} element needs a second pair")));
            }
            (Some(_), _) => {
                return Err(Error::dim(
                    "degrees 0 and 1 must not have a second pair".to_string(),
                ));
            }
        }
        Ok(QuadCochain { main, tail })
    }

    pub fn zero(dim_l: usize, dim_v: usize, degree: usize) -> Self {
        let main = PairCochain::zero(dim_l, dim_v, degree);
        let tail = (degree >= 2).then(|| PairCochain::zero(dim_l, dim_v, degree - 1));
        QuadCochain { main, tail }
    }

    pub fn degree(&self) -> usize {
        self.main.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.main.is_zero() && self.tail.as_ref().map_or(true, |t| t.is_zero())
    }

    pub fn add(&self, other: &QuadCochain) -> Result<QuadCochain> {
        let tail = match (&self.tail, &other.tail) {
            (Some(a), Some(b)) => Some(a.add(b)?),
            (None, None) => None,
            _ => return Err(Error::dim("component mismatch".to_string())),
        };
        Ok(QuadCochain { main: self.main.add(&other.main)?, tail })
    }

    pub fn sub(&self, other: &QuadCochain) -> Result<QuadCochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadCochain {
        QuadCochain {
            main: self.main.neg(),
            tail: self.tail.as_ref().map(|t| t.neg()),
        }
    }

    pub fn to_flat(&self) -> Vector {
        let mut out = self.main.to_flat();
        if let Some(t) = &self.tail {
            out.extend(t.to_flat());
        }
        out
    }

    pub fn from_flat(dim_l: usize, dim_v: usize, degree: usize, flat: &[Scalar]) -> Result<Self> {
        let main_len = pair_space_dim(dim_l, dim_v, degree);
        let tail_len = if degree >= 2 { pair_space_dim(dim_l, dim_v, degree - 1) } else { 0 };
        if flat.len() != main_len + tail_len {
            return Err(Error::dim(format!(
                "flat element needs {} coordinates, got {}",
                main_len + tail_len,
                flat.len()
            )));
        }
        let main = PairCochain::from_flat(dim_l, dim_v, degree, &flat[..main_len])?;
        let tail = if degree >= 2 {
            Some(PairCochain::from_flat(dim_l, dim_v, degree - 1, &flat[main_len..])?)
        } else {
            None
        };
        Ok(QuadCochain { main, tail })
    }
}

pub fn ce_space_dim(dim_l: usize, dim_v: usize, degree: usize) -> usize {
    binomial(dim_l, degree) * dim_v
}

pub fn pair_space_dim(dim_l: usize, dim_v: usize, degree: usize) -> usize {
    let tail = if degree >= 1 { ce_space_dim(dim_l, dim_v, degree - 1) } else { 0 };
    ce_space_dim(dim_l, dim_v, degree) + tail
}

pub fn quad_space_dim(dim_l: usize, dim_v: usize, degree: usize) -> usize {
    let tail = if degree >= 2 { pair_space_dim(dim_l, dim_v, degree - 1) } else { 0 };
    pair_space_dim(dim_l, dim_v, degree) + tail
}

/// Which of the four complexes to work in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    /// Classical complex of `(L; ρ)`.
    ChevalleyEilenberg,
    /// Classical complex of the descendent algebra with the descendent
    /// action.
    Descendent,
    /// Two-component complex governing the Reynolds structure.
    ReynoldsPair,
    /// Four-component complex governing the full pair structure.
    ReynoldsDerivation,
}

/// A cohomology computation in one of the four complexes.
///
/// Constructors validate the algebraic preconditions of their complex and
/// refuse structurally invalid input with [`Error::Precondition`], carrying
/// the full violation report.
#[derive(Debug, Clone)]
pub struct ComplexEngine {
    kind: ComplexKind,
    rep: Representation,
    /// Descendent algebra with the descendent action; present for every
    /// kind except the classical one.
    rep_r: Option<Representation>,
    r: Option<LinearOp>,
    r_v: Option<LinearOp>,
    d: Option<LinearOp>,
    d_v: Option<LinearOp>,
}

/// Dimensions and a kernel basis for one degree of a complex.
#[derive(Debug, Clone, Serialize)]
pub struct CohomologyReport {
    pub kind: ComplexKind,
    pub degree: usize,
    pub dim_space: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
    /// Flat coordinates of a basis of the cocycle space.
    pub cocycle_basis: Vec<Vector>,
    /// Set when a convention (rather than a literal formula) fixes the
    /// differential at this degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ComplexEngine {
    /// Classical complex of a representation.
    pub fn chevalley_eilenberg(rep: Representation) -> Result<Self> {
        let report = check_rep(&rep);
        if !report.is_pass() {
            return Err(Error::precondition("representation axioms", report));
        }
        Ok(ComplexEngine {
            kind: ComplexKind::ChevalleyEilenberg,
            rep,
            rep_r: None,
            r: None,
            r_v: None,
            d: None,
            d_v: None,
        })
    }

    /// Classical complex of the descendent algebra `(L, [,]_R)` with the
    /// descendent action in the chosen transcription.
    pub fn descendent(rr: ReynoldsRep, variant: RhoRVariant) -> Result<Self> {
        let mut report = check_rep(&rr.rep);
        report.absorb(crate::lie::is_reynolds(&rr.rep.algebra, &rr.r, Mode::Standard));
        report.absorb(check_reynolds_rep(&rr));
        if !report.is_pass() {
            return Err(Error::precondition("Reynolds representation axioms", report));
        }
        let rep_r = induced_rep(&rr, variant)?;
        Ok(ComplexEngine {
            kind: ComplexKind::Descendent,
            rep: rr.rep,
            rep_r: Some(rep_r),
            r: Some(rr.r),
            r_v: Some(rr.r_v),
            d: None,
            d_v: None,
        })
    }

    /// Two-component complex of a Reynolds representation.
    pub fn reynolds_pair(rr: ReynoldsRep, variant: RhoRVariant) -> Result<Self> {
        let mut engine = Self::descendent(rr, variant)?;
        engine.kind = ComplexKind::ReynoldsPair;
        Ok(engine)
    }

    /// Four-component complex of a full coefficient object.
    pub fn reynolds_derivation(rr: RldRep, variant: RhoRVariant) -> Result<Self> {
        let report = check_rld_rep(&rr, Mode::Standard);
        if !report.is_pass() {
            return Err(Error::precondition("pair coefficient axioms", report));
        }
        let reynolds = rr.reynolds_part();
        let rep_r = induced_rep(&reynolds, variant)?;
        Ok(ComplexEngine {
            kind: ComplexKind::ReynoldsDerivation,
            rep: rr.rep,
            rep_r: Some(rep_r),
            r: Some(rr.pair.r),
            r_v: Some(rr.r_v),
            d: Some(rr.pair.d),
            d_v: Some(rr.d_v),
        })
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn dim_l(&self) -> usize {
        self.rep.dim_l()
    }

    pub fn dim_v(&self) -> usize {
        self.rep.dim_v()
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// Descendent algebra with its action (absent for the classical kind).
    pub fn rep_r(&self) -> Option<&Representation> {
        self.rep_r.as_ref()
    }

    /// Largest degree with a nonzero space.
    pub fn max_degree(&self) -> usize {
        match self.kind {
            ComplexKind::ChevalleyEilenberg | ComplexKind::Descendent => self.dim_l(),
            ComplexKind::ReynoldsPair => self.dim_l() + 1,
            ComplexKind::ReynoldsDerivation => self.dim_l() + 2,
        }
    }

    pub fn space_dim(&self, degree: usize) -> usize {
        match self.kind {
            ComplexKind::ChevalleyEilenberg | ComplexKind::Descendent => {
                ce_space_dim(self.dim_l(), self.dim_v(), degree)
            }
            ComplexKind::ReynoldsPair => pair_space_dim(self.dim_l(), self.dim_v(), degree),
            ComplexKind::ReynoldsDerivation => quad_space_dim(self.dim_l(), self.dim_v(), degree),
        }
    }

    /// Two-component differential `D(f, g) = (δf, -δ_R g - φf)` at degrees
    /// `≥ 1`; the literal degree-0 value is `v ↦ (δv, -v)` but the complex
    /// uses the zero map there (see the module notes).
    pub fn d_pair(&self, pc: &PairCochain) -> Result<PairCochain> {
        let rep_r = self.rep_r.as_ref().ok_or_else(|| {
            Error::invalid("this engine has no Reynolds layer".to_string())
        })?;
        let r = self.r.as_ref().expect("layer checked");
        let r_v = self.r_v.as_ref().expect("layer checked");
        let main = delta_ce(&self.rep, &pc.main);
        let mut tail = phi(r, r_v, &pc.main).neg();
        if let Some(g) = &pc.tail {
            tail = tail.sub(&delta_ce(rep_r, g))?;
        }
        PairCochain::new(main, Some(tail))
    }

    /// Four-component differential: degree 1 maps `α ↦ (Dα, -Δα)`, degree
    /// `n ≥ 2` maps `(α, β) ↦ (Dα, Dβ + (-1)^n Δα)`. Degree 0 is the zero
    /// map into degree 1 (there is no literal formula to preserve).
    pub fn d_quad(&self, qc: &QuadCochain) -> Result<QuadCochain> {
        if self.kind != ComplexKind::ReynoldsDerivation {
            return Err(Error::invalid("this engine has no derivation layer".to_string()));
        }
        let d = self.d.as_ref().expect("layer checked");
        let d_v = self.d_v.as_ref().expect("layer checked");
        let n = qc.degree();
        if n == 0 {
            return Ok(QuadCochain::zero(self.dim_l(), self.dim_v(), 1));
        }
        let main = self.d_pair(&qc.main)?;
        let delta_main = PairCochain {
            main: delta_der(d, d_v, &qc.main.main),
            tail: qc.main.tail.as_ref().map(|t| delta_der(d, d_v, t)),
        };
        let tail = match &qc.tail {
            None => delta_main.neg(), // degree 1: (Dα, -Δα)
            Some(beta) => {
                let d_beta = self.d_pair(beta)?;
                if n % 2 == 0 {
                    d_beta.add(&delta_main)?
                } else {
                    d_beta.sub(&delta_main)?
                }
            }
        };
        QuadCochain::new(main, Some(tail))
    }

    /// The degree-`n` differential as a matrix on flat coordinates
    /// (`space_dim(n+1)` rows, `space_dim(n)` columns). Composite complexes
    /// use the zero map at degree 0.
    pub fn differential(&self, degree: usize) -> Result<Matrix> {
        let rows = self.space_dim(degree + 1);
        let cols = self.space_dim(degree);
        let mut m = Matrix::zero(rows, cols);
        let composite = matches!(
            self.kind,
            ComplexKind::ReynoldsPair | ComplexKind::ReynoldsDerivation
        );
        if composite && degree == 0 {
            return Ok(m);
        }
        for c in 0..cols {
            let mut flat = vec_zero(cols);
            flat[c] = Scalar::one();
            let image = self.apply_flat(degree, &flat)?;
            debug_assert_eq!(image.len(), rows);
            for (r, s) in image.into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, c, s);
                }
            }
        }
        Ok(m)
    }

    /// Applies the literal degree-`n` operator to flat coordinates.
    fn apply_flat(&self, degree: usize, flat: &[Scalar]) -> Result<Vector> {
        match self.kind {
            ComplexKind::ChevalleyEilenberg => {
                let f = Cochain::from_flat(self.dim_l(), self.dim_v(), degree, flat)?;
                Ok(delta_ce(&self.rep, &f).to_flat())
            }
            ComplexKind::Descendent => {
                let f = Cochain::from_flat(self.dim_l(), self.dim_v(), degree, flat)?;
                Ok(delta_ce(self.rep_r.as_ref().expect("layer checked"), &f).to_flat())
            }
            ComplexKind::ReynoldsPair => {
                let pc = PairCochain::from_flat(self.dim_l(), self.dim_v(), degree, flat)?;
                Ok(self.d_pair(&pc)?.to_flat())
            }
            ComplexKind::ReynoldsDerivation => {
                let qc = QuadCochain::from_flat(self.dim_l(), self.dim_v(), degree, flat)?;
                Ok(self.d_quad(&qc)?.to_flat())
            }
        }
    }

    /// Kernel, image, and quotient dimensions at one degree, with a basis
    /// of the cocycle space. Verifies `D_{n} ∘ D_{n-1} = 0` before
    /// quotienting.
    pub fn cohomology(&self, degree: usize) -> Result<CohomologyReport> {
        let d_n = self.differential(degree)?;
        let d_prev = if degree == 0 {
            Matrix::zero(self.space_dim(0), 0)
        } else {
            self.differential(degree - 1)?
        };
        if !d_n.annihilates(&d_prev)? {
            return Err(Error::invalid(format!(
                "differential does not square to zero at degree {degree}"
            )));
        }
        let dim_space = self.space_dim(degree);
        let cocycle_basis = d_n.kernel_basis();
        let dim_cocycles = cocycle_basis.len();
        let dim_coboundaries = d_prev.rank();
        let note = if degree == 0
            && matches!(
                self.kind,
                ComplexKind::ReynoldsPair | ComplexKind::ReynoldsDerivation
            ) {
            Some(
                "degree-0 differential of this complex is zero by convention, so the \
                 degree-0 group is the whole space"
                    .to_string(),
            )
        } else {
            None
        };
        Ok(CohomologyReport {
            kind: self.kind,
            degree,
            dim_space,
            dim_cocycles,
            dim_coboundaries,
            dim_h: dim_cocycles - dim_coboundaries,
            cocycle_basis,
            note,
        })
    }

    /// Is the flat element a cocycle at its degree?
    pub fn is_cocycle(&self, degree: usize, flat: &[Scalar]) -> Result<bool> {
        let d_n = self.differential(degree)?;
        Ok(vec_is_zero(&d_n.mul_vec(flat)?))
    }

    /// Attempts to solve `D x = target` one degree down; `None` means the
    /// element is not a coboundary. Degree 0 elements are coboundaries only
    /// if zero.
    pub fn is_coboundary(&self, degree: usize, target: &[Scalar]) -> Result<Option<Vector>> {
        let d_prev = if degree == 0 {
            Matrix::zero(self.space_dim(0), 0)
        } else {
            self.differential(degree - 1)?
        };
        if target.len() != self.space_dim(degree) {
            return Err(Error::dim(format!(
                "target must have {} coordinates, got {}",
                self.space_dim(degree),
                target.len()
            )));
        }
        d_prev.solve(target)
    }
}

/// Returns a `CheckReport` asserting `D ∘ D = 0` on a whole complex up to
/// its top degree; useful as a structural self-test for a given engine.
pub fn differentials_square_to_zero(engine: &ComplexEngine) -> Result<CheckReport> {
    let mut report = CheckReport::pass();
    for n in 0..engine.max_degree() {
        let d_n = engine.differential(n)?;
        let d_next = engine.differential(n + 1)?;
        let product = d_next.mul(&d_n)?;
        if !product.is_zero() {
            report.record(
                "differential_square",
                vec![n],
                vec![Scalar::one()],
            );
        }
    }
    Ok(report)
}
