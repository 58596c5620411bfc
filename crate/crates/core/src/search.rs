//! Exhaustive and linear-algebra searches for structures the validators
//! accept: Reynolds operators over small coefficient grids, derivation
//! spaces as matrix kernels, and compatible module operators.
//!
//! Everything here is deterministic and independent of the cohomology
//! machinery, which makes these functions usable as oracles when testing
//! it: a structure found by brute force must validate, and counts found
//! here must match dimensions reported elsewhere.

use crate::exactlin::{LinearOp, Matrix, Scalar, Vector};
use crate::lie::{is_reynolds, LieAlgebra};
use crate::rep::{check_reynolds_rep, Representation, ReynoldsRep};
use crate::Mode;

/// A small catalog of named algebras in dimensions 1 through 4, all
/// Jacobi-valid: abelian spaces, the nonabelian plane, the Heisenberg
/// algebra, a solvable 3-dimensional algebra, and direct sums.
pub fn small_algebras() -> Vec<(String, LieAlgebra)> {
    let nonabelian = LieAlgebra::from_i64_entries(2, &[(0, 1, &[1, 0])]).unwrap();
    let heisenberg = LieAlgebra::from_i64_entries(3, &[(0, 1, &[0, 0, 1])]).unwrap();
    let solvable =
        LieAlgebra::from_i64_entries(3, &[(0, 1, &[0, 0, 1]), (0, 2, &[0, 0, 1])]).unwrap();
    vec![
        ("abelian1".to_string(), LieAlgebra::abelian(1)),
        ("abelian2".to_string(), LieAlgebra::abelian(2)),
        ("nonabelian2".to_string(), nonabelian.clone()),
        ("heisenberg3".to_string(), heisenberg.clone()),
        ("solvable3".to_string(), solvable),
        (
            "nonabelian2_plus_abelian1".to_string(),
            nonabelian.direct_sum(&LieAlgebra::abelian(1)),
        ),
        (
            "nonabelian2_plus_nonabelian2".to_string(),
            nonabelian.direct_sum(&nonabelian),
        ),
        (
            "heisenberg3_plus_abelian1".to_string(),
            heisenberg.direct_sum(&LieAlgebra::abelian(1)),
        ),
    ]
}

/// Iterates all `rows x cols` matrices with entries drawn from `values`,
/// calling `visit` on each. The number of candidates is
/// `values.len()^(rows*cols)`; callers keep the grid small.
fn for_each_grid_matrix(
    rows: usize,
    cols: usize,
    values: &[Scalar],
    mut visit: impl FnMut(&Matrix),
) {
    let cells = rows * cols;
    let base = values.len();
    if base == 0 || cells == 0 {
        if cells == 0 {
            visit(&Matrix::zero(rows, cols));
        }
        return;
    }
    let mut digits = vec![0usize; cells];
    loop {
        let m = Matrix::from_fn(rows, cols, |r, c| values[digits[r * cols + c]].clone());
        visit(&m);
        let mut pos = cells;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < base {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Integer grid `lo..=hi` as scalars.
pub fn integer_grid(lo: i64, hi: i64) -> Vec<Scalar> {
    (lo..=hi).map(Scalar::from_int).collect()
}

/// All operators with entries in `values` that satisfy the Reynolds
/// identity on `l` (in the given mode). Exhaustive; intended for
/// dimensions at most 3 with grids of at most a handful of values.
pub fn reynolds_operators_grid(l: &LieAlgebra, values: &[Scalar], mode: Mode) -> Vec<LinearOp> {
    let n = l.dim();
    let mut found = Vec::new();
    for_each_grid_matrix(n, n, values, |m| {
        let op = LinearOp::new(m.clone());
        if is_reynolds(l, &op, mode).is_pass() {
            found.push(op);
        }
    });
    found
}

/// Unknown-matrix helpers: equations of the form
/// `Σ (coefficients) · X[r][c] = rhs` are accumulated as rows over the
/// flattened unknowns `X[r][c] ↔ r * cols + c`.
pub(crate) struct LinearSystem {
    unknowns: usize,
    rows: Vec<Vector>,
    rhs: Vector,
}

impl LinearSystem {
    pub(crate) fn new(unknowns: usize) -> Self {
        LinearSystem { unknowns, rows: Vec::new(), rhs: Vec::new() }
    }

    pub(crate) fn push_row(&mut self, row: Vector, rhs: Scalar) {
        assert_eq!(row.len(), self.unknowns);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// Adds the matrix identity `X · a - b · X = c` entrywise, where the
    /// unknown `X` is `dims.0 x dims.1`, `a` is square of the source side,
    /// `b` square of the target side.
    pub(crate) fn push_sandwich(&mut self, dims: (usize, usize), a: &Matrix, b: &Matrix, c: &Matrix) {
        let (rows, cols) = dims;
        for i in 0..rows {
            for j in 0..cols {
                let mut row = vec![Scalar::zero(); self.unknowns];
                // (X a)[i][j] = Σ_k X[i][k] a[k][j]
                for k in 0..cols {
                    row[i * cols + k] = &row[i * cols + k] + a.get(k, j);
                }
                // -(b X)[i][j] = -Σ_k b[i][k] X[k][j]
                for k in 0..rows {
                    row[k * cols + j] = &row[k * cols + j] - b.get(i, k);
                }
                self.push_row(row, c.get(i, j).clone());
            }
        }
    }

    fn matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.rows.len(), self.unknowns);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    m.set(r, c, s.clone());
                }
            }
        }
        m
    }

    /// Particular solution (if any) and a kernel basis of the homogeneous
    /// system.
    pub(crate) fn solve(&self) -> (Option<Vector>, Vec<Vector>) {
        let m = self.matrix();
        let particular = m.solve(&self.rhs).expect("shape consistent");
        let kernel = m.kernel_basis();
        (particular, kernel)
    }
}

pub(crate) fn unflatten(rows: usize, cols: usize, flat: &[Scalar]) -> LinearOp {
    let mut m = Matrix::zero(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, flat[r * cols + c].clone());
        }
    }
    LinearOp::new(m)
}

/// Basis of the derivation space of `l`, found as the kernel of the linear
/// system `d[e_i,e_j] - [d e_i, e_j] - [e_i, d e_j] = 0`.
pub fn derivation_basis(l: &LieAlgebra) -> Vec<LinearOp> {
    let n = l.dim();
    let mut sys = LinearSystem::new(n * n);
    for i in 0..n {
        for j in (i + 1)..n {
            // Row block for the vector identity; one scalar row per output
            // coordinate a.
            let bracket = l.bracket_basis(i, j);
            for a in 0..n {
                let mut row = vec![Scalar::zero(); n * n];
                // d([e_i,e_j]) contributes d[a][k] * bracket[k].
                for k in 0..n {
                    if !bracket[k].is_zero() {
                        row[a * n + k] = &row[a * n + k] + &bracket[k];
                    }
                }
                // -[d e_i, e_j]: d e_i = Σ_k d[k][i] e_k, and
                // [e_k, e_j] contributes its a-th coordinate.
                for k in 0..n {
                    let br = l.bracket_basis(k, j);
                    if !br[a].is_zero() {
                        row[k * n + i] = &row[k * n + i] - &br[a];
                    }
                }
                // -[e_i, d e_j]
                for k in 0..n {
                    let br = l.bracket_basis(i, k);
                    if !br[a].is_zero() {
                        row[k * n + j] = &row[k * n + j] - &br[a];
                    }
                }
                sys.push_row(row, Scalar::zero());
            }
        }
    }
    let (_, kernel) = sys.solve();
    kernel.iter().map(|flat| unflatten(n, n, flat)).collect()
}

/// Basis of the space of derivations of `l` that commute with `r`.
pub fn derivations_commuting_with(l: &LieAlgebra, r: &LinearOp) -> Vec<LinearOp> {
    let n = l.dim();
    assert!(r.src_dim() == n && r.dst_dim() == n, "operator shape mismatch");
    let mut sys = LinearSystem::new(n * n);
    // Derivation equations, as in derivation_basis.
    for i in 0..n {
        for j in (i + 1)..n {
            let bracket = l.bracket_basis(i, j);
            for a in 0..n {
                let mut row = vec![Scalar::zero(); n * n];
                for k in 0..n {
                    if !bracket[k].is_zero() {
                        row[a * n + k] = &row[a * n + k] + &bracket[k];
                    }
                }
                for k in 0..n {
                    let br = l.bracket_basis(k, j);
                    if !br[a].is_zero() {
                        row[k * n + i] = &row[k * n + i] - &br[a];
                    }
                }
                for k in 0..n {
                    let br = l.bracket_basis(i, k);
                    if !br[a].is_zero() {
                        row[k * n + j] = &row[k * n + j] - &br[a];
                    }
                }
                sys.push_row(row, Scalar::zero());
            }
        }
    }
    // Commutation d R = R d.
    sys.push_sandwich((n, n), r.matrix(), r.matrix(), &Matrix::zero(n, n));
    let (_, kernel) = sys.solve();
    kernel.iter().map(|flat| unflatten(n, n, flat)).collect()
}

/// All module operators with entries in `values` that satisfy the Reynolds
/// compatibility with the given action and operator.
pub fn module_reynolds_grid(
    rep: &Representation,
    r: &LinearOp,
    values: &[Scalar],
) -> Vec<LinearOp> {
    let m = rep.dim_v();
    let mut found = Vec::new();
    for_each_grid_matrix(m, m, values, |cand| {
        let rr = ReynoldsRep::new(rep.clone(), r.clone(), LinearOp::new(cand.clone()))
            .expect("shapes match");
        if check_reynolds_rep(&rr).is_pass() {
            found.push(LinearOp::new(cand.clone()));
        }
    });
    found
}

/// Solves the affine system for module derivations `d_V` satisfying
/// `d_V ρ(e_i) - ρ(e_i) d_V = ρ(d e_i)` for all `i` and commuting with
/// `R_V`. Returns up to `1 + kernel` solutions: one particular solution
/// followed by its translates by a kernel basis (empty if inconsistent).
pub fn module_derivation_solutions(
    rep: &Representation,
    d: &LinearOp,
    r_v: &LinearOp,
) -> Vec<LinearOp> {
    let m = rep.dim_v();
    let mut sys = LinearSystem::new(m * m);
    for i in 0..rep.dim_l() {
        let rho_dx = rep.action_of(&d.apply_basis(i));
        sys.push_sandwich((m, m), rep.rho(i).matrix(), rep.rho(i).matrix(), rho_dx.matrix());
    }
    sys.push_sandwich((m, m), r_v.matrix(), r_v.matrix(), &Matrix::zero(m, m));
    let (particular, kernel) = sys.solve();
    let Some(p) = particular else {
        return Vec::new();
    };
    let base = unflatten(m, m, &p);
    let mut out = vec![base.clone()];
    for k in &kernel {
        let shift = unflatten(m, m, k);
        out.push(base.add(&shift).expect("uniform shapes"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::is_derivation;

    fn two_dim_nonabelian() -> LieAlgebra {
        LieAlgebra::from_i64_entries(2, &[(0, 1, &[1, 0])]).unwrap()
    }

    #[test]
    fn catalog_is_jacobi_valid() {
        for (name, l) in small_algebras() {
            assert!(crate::lie::jacobi_check(&l).is_pass(), "{name}");
        }
    }

    #[test]
    fn grid_finds_the_reynolds_family_of_the_nonabelian_plane() {
        // On [e1,e2]=e1, writing R = [[p,q],[r,s]] (columns are images),
        // the Reynolds identity reduces to D = Tp and Tr = 0 where
        // D = ps - qr and T = p + s - D. Solving by hand gives three
        // families: p = r = 0 (any q, s); r = 0, s = 1 (any p, q); and
        // s = -p with qr = -p^2. Over the grid {-1,0,1} these contribute
        // 9 + 6 + 6 = 21 operators (the identity sits in the second
        // family), and -Id is not among them.
        let l = two_dim_nonabelian();
        let found = reynolds_operators_grid(&l, &integer_grid(-1, 1), Mode::Standard);
        assert_eq!(found.len(), 21);
        assert!(found.contains(&LinearOp::identity(2)));
        assert!(found.contains(&LinearOp::zero(2, 2)));
        assert!(found.contains(&LinearOp::from_i64(&[&[0, 1], &[0, 1]])));
        assert!(found.contains(&LinearOp::from_i64(&[&[1, -1], &[1, -1]])));
        assert!(!found.contains(&LinearOp::from_i64(&[&[-1, 0], &[0, -1]])));
        for op in &found {
            assert!(is_reynolds(&l, op, Mode::Standard).is_pass());
        }
    }

    #[test]
    fn derivation_basis_matches_hand_computation() {
        // Derivations of [e1,e2]=e1 are e1 -> a e1, e2 -> c e1: dim 2.
        let l = two_dim_nonabelian();
        let basis = derivation_basis(&l);
        assert_eq!(basis.len(), 2);
        for d in &basis {
            assert!(is_derivation(&l, d).is_pass());
        }
        // The abelian plane has all of gl(2): dim 4.
        assert_eq!(derivation_basis(&LieAlgebra::abelian(2)).len(), 4);
        // Heisenberg: derivations have dimension 6.
        let h = LieAlgebra::from_i64_entries(3, &[(0, 1, &[0, 0, 1])]).unwrap();
        let hd = derivation_basis(&h);
        assert_eq!(hd.len(), 6);
        for d in &hd {
            assert!(is_derivation(&h, d).is_pass());
        }
    }

    #[test]
    fn commuting_derivations_are_a_subspace_of_derivations() {
        let l = two_dim_nonabelian();
        let r = LinearOp::from_i64(&[&[0, 1], &[0, 1]]);
        let sub = derivations_commuting_with(&l, &r);
        // Hand computation: within d = [[a, c], [0, 0]] the commutation
        // with R forces c = -a, leaving dimension 1.
        assert_eq!(sub.len(), 1);
        for d in &sub {
            assert!(is_derivation(&l, d).is_pass());
            assert!(d.commutes_with(&r).unwrap());
        }
        // R = 0 imposes nothing.
        assert_eq!(derivations_commuting_with(&l, &LinearOp::zero(2, 2)).len(), 2);
    }

    #[test]
    fn module_operator_grid_for_the_trivial_action() {
        // With a trivial action every candidate passes: 3^4 = 81 matrices.
        let rep = Representation::trivial(two_dim_nonabelian(), 2);
        let found = module_reynolds_grid(&rep, &LinearOp::zero(2, 2), &integer_grid(-1, 1));
        assert_eq!(found.len(), 81);
    }

    #[test]
    fn module_derivation_solver_recovers_the_adjoint_case() {
        // For the adjoint module with d a derivation, d_V = d is a
        // solution of the inhomogeneous system; the solver must return a
        // nonempty family containing it (up to kernel shifts).
        let l = two_dim_nonabelian();
        let rep = Representation::adjoint(l.clone());
        let d = LinearOp::from_i64(&[&[1, -1], &[0, 0]]);
        let r_v = LinearOp::from_i64(&[&[0, 1], &[0, 1]]);
        let sols = module_derivation_solutions(&rep, &d, &r_v);
        assert!(!sols.is_empty());
        for d_v in &sols {
            // Verify the defining identity directly.
            for i in 0..2 {
                let lhs = d_v.compose(rep.rho(i)).unwrap();
                let rhs = rep
                    .action_of(&d.apply_basis(i))
                    .add(&rep.rho(i).compose(d_v).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
            assert!(d_v.commutes_with(&r_v).unwrap());
        }
    }
}
