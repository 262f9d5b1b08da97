//! Key-equation solvers for the interpolation congruence system
//! `d_i W(x_i) + g_i N(x_i) = 0`, i = 1..rho.
//!
//! Three routes to the same irreducible basis matrix:
//! - [`ma_solve`]: the generic iterative construction in the monomial basis.
//!   One constraint per step; the 2x2 step matrix is chosen by the branch
//!   rule `g = 0 or (d != 0 and r1 < r2)`, which keeps the row-rank sum at
//!   2j + 1 after j steps. This is the small-instance reference the other
//!   two are checked against.
//! - [`fdma_solve`]: tracks only the first column of the running matrix, as
//!   evaluations on a retained frequency window large enough to determine
//!   the error locator, then interpolates the locator/evaluator pair by the
//!   extended inverse transform. O(rho^2).
//! - [`fma_solve`]: divide and conquer; solves the left half, re-evaluates
//!   it on the doubled coset to update the right half's constraints, solves
//!   the right half, and merges by pointwise 2x2 products followed by
//!   extended inverse transforms. O(rho log^2 rho). Non-power-of-two rho is
//!   decomposed into descending power-of-two chunks accumulated pointwise on
//!   the `omega_0..omega_rho` grid and interpolated once at the end.
//!
//! Rank of a pair (P, Q) is `max(2 deg P, 1 + 2 deg Q)`; the two rows of
//! every produced matrix carry complementary ranks summing to 2 rho + 1, so
//! they are never equal and the lower-rank row is the decoding solution.
//! None of the solvers performs a field division.

use crate::basis::{BasisContext, PolyXbar};
use crate::gf::{Field, FieldElement};
use crate::poly;
use crate::transforms::{eval_at_point, fft_in_place, ifft_extended, ifft_partial};
use std::fmt;

/// One interpolation constraint: `d W(x) + g N(x) = 0 (mod x - x_i)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HomPoint {
    pub x: FieldElement,
    pub d: FieldElement,
    pub g: FieldElement,
}

/// Ranks of the two rows of a basis matrix. After j constraints,
/// r1 + r2 = 2j + 1, so r1 != r2 always.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RankPair {
    pub r1: u32,
    pub r2: u32,
}

impl RankPair {
    pub fn initial() -> RankPair {
        RankPair { r1: 0, r2: 1 }
    }

    pub fn min(self) -> u32 {
        self.r1.min(self.r2)
    }
}

/// Which coefficient basis the matrix entries are stored in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PolyRepr {
    Monomial,
    Xbar,
}

/// 2x2 polynomial basis matrix `[[w, n], [v, m]]` of the solution module.
#[derive(Clone, Debug)]
pub struct BasisMatrix {
    pub w: Vec<FieldElement>,
    pub n: Vec<FieldElement>,
    pub v: Vec<FieldElement>,
    pub m: Vec<FieldElement>,
    pub ranks: RankPair,
    pub repr: PolyRepr,
}

/// The decoding solution: locator and evaluator in X coordinates plus the
/// selected row's rank. An even rank means deg z < deg lambda (the
/// correctable case); an odd rank is how degree violations surface.
#[derive(Clone, Debug)]
pub struct KeySolution {
    pub lambda: PolyXbar,
    pub z: PolyXbar,
    pub rank: u32,
    pub ranks: RankPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    DuplicatePoint(FieldElement),
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::DuplicatePoint(x) => write!(f, "duplicate interpolation point {:?}", x),
        }
    }
}

impl std::error::Error for SolverError {}

/// The step-matrix branch rule shared by all three solvers.
#[inline]
fn first_branch(d: FieldElement, g: FieldElement, ranks: RankPair) -> bool {
    g.is_zero() || (!d.is_zero() && ranks.r1 < ranks.r2)
}

#[inline]
fn advance_ranks(ranks: RankPair, first: bool) -> RankPair {
    if first {
        RankPair {
            r1: ranks.r2,
            r2: ranks.r1 + 2,
        }
    } else {
        RankPair {
            r1: ranks.r1,
            r2: ranks.r2 + 2,
        }
    }
}

fn ceil_log2(x: usize) -> usize {
    debug_assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

// ---------------------------------------------------------------------------
// Generic modular approach (monomial basis)
// ---------------------------------------------------------------------------

/// Iterative construction of the irreducible basis matrix, one constraint
/// per step, in the monomial basis. The reference implementation for the
/// frequency-domain and divide-and-conquer variants.
pub fn ma_solve(gf: &Field, points: &[HomPoint]) -> Result<BasisMatrix, SolverError> {
    for (i, p) in points.iter().enumerate() {
        if let Some(q) = points[..i].iter().find(|q| q.x == p.x) {
            return Err(SolverError::DuplicatePoint(q.x));
        }
    }
    let rho = points.len();
    let mut w = vec![FieldElement::ONE];
    let mut n = vec![FieldElement::ZERO];
    let mut v = vec![FieldElement::ZERO];
    let mut m = vec![FieldElement::ONE];
    let mut ranks = RankPair::initial();
    let mut d: Vec<FieldElement> = points.iter().map(|p| p.d).collect();
    let mut g: Vec<FieldElement> = points.iter().map(|p| p.g).collect();

    for j in 0..rho {
        let (dj, gj) = (d[j], g[j]);
        let xj = points[j].x;
        let first = first_branch(dj, gj, ranks);

        // top row of the product: -g_j (W, N) + d_j (V, M); -g_j = g_j here
        let top_w = poly::add(gf, &poly::scale(gf, &w, gj), &poly::scale(gf, &v, dj));
        let top_n = poly::add(gf, &poly::scale(gf, &n, gj), &poly::scale(gf, &m, dj));
        let (bot_w, bot_n) = if first {
            (poly::mul_linear(gf, &w, xj), poly::mul_linear(gf, &n, xj))
        } else {
            (poly::mul_linear(gf, &v, xj), poly::mul_linear(gf, &m, xj))
        };
        w = top_w;
        n = top_n;
        v = bot_w;
        m = bot_n;
        ranks = advance_ranks(ranks, first);

        for i in j + 1..rho {
            let (di, gi) = (d[i], g[i]);
            let factor = gf.add(points[i].x, xj);
            d[i] = gf.add(gf.mul(gj, di), gf.mul(dj, gi));
            g[i] = gf.mul(factor, if first { di } else { gi });
        }
    }

    Ok(BasisMatrix {
        w: poly::trim(w),
        n: poly::trim(n),
        v: poly::trim(v),
        m: poly::trim(m),
        ranks,
        repr: PolyRepr::Monomial,
    })
}

// ---------------------------------------------------------------------------
// Frequency-domain modular approach
// ---------------------------------------------------------------------------

/// Solve the key equation from the syndrome evaluations
/// `u(omega_0), .., u(omega_{eps-1})`, eps = u_evals.len() >= 2.
/// Constraint i uses x_i = omega_{i-1}, d_i = u(omega_{i-1}), g_i = 1.
pub fn fdma_solve(gf: &Field, b: &BasisContext, u_evals: &[FieldElement]) -> KeySolution {
    let eps = u_evals.len();
    assert!(eps >= 2, "need at least two constraints");
    let t = eps / 2;
    // retained frequency window: enough points to pin a degree-t polynomial
    let rm = ceil_log2(t.max(1));
    let window = (1usize << rm) + 1;
    debug_assert!((1 << rm) < eps);

    let mut d = u_evals.to_vec();
    let mut g = vec![FieldElement::ONE; eps];
    let mut wv: Vec<(FieldElement, FieldElement)> =
        vec![(FieldElement::ONE, FieldElement::ZERO); window];
    let mut ranks = RankPair::initial();

    for c in 0..eps {
        let (dj, gj) = (d[c], g[c]);
        let xj = b.omega(c);
        let first = first_branch(dj, gj, ranks);
        for i in c + 1..eps {
            let (di, gi) = (d[i], g[i]);
            let factor = gf.add(b.omega(i), xj);
            d[i] = gf.add(gf.mul(gj, di), gf.mul(dj, gi));
            g[i] = gf.mul(factor, if first { di } else { gi });
        }
        for (i, entry) in wv.iter_mut().enumerate() {
            let (wi, vi) = *entry;
            let neww = gf.add(gf.mul(gj, wi), gf.mul(dj, vi));
            let newv = gf.mul(gf.add(b.omega(i), xj), if first { wi } else { vi });
            *entry = (neww, newv);
        }
        ranks = advance_ranks(ranks, first);
    }

    let lambda_evals: Vec<FieldElement> = if ranks.r1 > ranks.r2 {
        wv.iter().map(|&(_, v)| v).collect()
    } else {
        wv.iter().map(|&(w, _)| w).collect()
    };
    let z_evals: Vec<FieldElement> = lambda_evals
        .iter()
        .zip(u_evals)
        .map(|(&l, &u)| gf.mul(l, u))
        .collect();

    let lambda = ifft_extended(gf, b, &lambda_evals, rm, FieldElement::ZERO).expect("window size");
    let z = ifft_extended(gf, b, &z_evals, rm, FieldElement::ZERO).expect("window size");
    KeySolution {
        lambda,
        z,
        rank: ranks.min(),
        ranks,
    }
}

// ---------------------------------------------------------------------------
// Fast modular approach
// ---------------------------------------------------------------------------

/// Matrix entries evaluated on a point set; the divide-and-conquer merge
/// works pointwise in this form.
struct MatrixEvals {
    w: Vec<FieldElement>,
    n: Vec<FieldElement>,
    v: Vec<FieldElement>,
    m: Vec<FieldElement>,
}

struct XbarMatrix {
    w: Vec<FieldElement>,
    n: Vec<FieldElement>,
    v: Vec<FieldElement>,
    m: Vec<FieldElement>,
}

/// Evaluate all four entries at `omega_0 + beta, .., omega_{2^mu} + beta`:
/// one transform per entry for the grid points plus a single-point
/// evaluation for the extra one.
fn eval_matrix(
    gf: &Field,
    b: &BasisContext,
    mat: &XbarMatrix,
    mu: usize,
    beta: FieldElement,
) -> MatrixEvals {
    let n_pts = 1usize << mu;
    let x_extra = FieldElement(b.omega(n_pts).0 ^ beta.0);
    let entry = |coeffs: &[FieldElement]| -> Vec<FieldElement> {
        let mut data = coeffs.to_vec();
        debug_assert!(data.len() <= n_pts);
        data.resize(n_pts, FieldElement::ZERO);
        fft_in_place(gf, b, &mut data, beta);
        data.push(eval_at_point(gf, b, coeffs, x_extra));
        data
    };
    MatrixEvals {
        w: entry(&mat.w),
        n: entry(&mat.n),
        v: entry(&mat.v),
        m: entry(&mat.m),
    }
}

/// Core recursion on a 2^mu-constraint slice whose points are
/// `omega_h + beta` for local h. Consumes and rewrites the d/g columns.
fn fma_rec(
    gf: &Field,
    b: &BasisContext,
    d: &mut [FieldElement],
    g: &mut [FieldElement],
    beta: FieldElement,
    mu: usize,
    ranks: RankPair,
) -> (XbarMatrix, RankPair) {
    if mu == 0 {
        let first = first_branch(d[0], g[0], ranks);
        // x - beta written in X coordinates: omega_1 X_1(x) - beta
        let lin = vec![beta, b.omega(1)];
        let zero2 = vec![FieldElement::ZERO; 2];
        let top_w = vec![g[0], FieldElement::ZERO];
        let top_n = vec![d[0], FieldElement::ZERO];
        let mat = if first {
            XbarMatrix {
                w: top_w,
                n: top_n,
                v: lin,
                m: zero2,
            }
        } else {
            XbarMatrix {
                w: top_w,
                n: top_n,
                v: zero2,
                m: lin,
            }
        };
        return (mat, advance_ranks(ranks, first));
    }

    let n_pts = 1usize << mu;
    let half = n_pts >> 1;
    let (dl, dr) = d.split_at_mut(half);
    let (gl, gr) = g.split_at_mut(half);

    let (left, ranks_mid) = fma_rec(gf, b, dl, gl, beta, mu - 1, ranks);
    let le = eval_matrix(gf, b, &left, mu, beta);

    // fold the left matrix into the right half's constraints
    for h in 0..half {
        let i = half + h;
        let (di, gi) = (dr[h], gr[h]);
        dr[h] = gf.add(gf.mul(le.w[i], di), gf.mul(le.n[i], gi));
        gr[h] = gf.add(gf.mul(le.v[i], di), gf.mul(le.m[i], gi));
    }

    let beta_right = FieldElement(b.omega(half).0 ^ beta.0);
    let (right, ranks_out) = fma_rec(gf, b, dr, gr, beta_right, mu - 1, ranks_mid);
    let re = eval_matrix(gf, b, &right, mu, beta);

    // pointwise product right * left at the 2^mu + 1 points
    let mut pw = MatrixEvals {
        w: Vec::with_capacity(n_pts + 1),
        n: Vec::with_capacity(n_pts + 1),
        v: Vec::with_capacity(n_pts + 1),
        m: Vec::with_capacity(n_pts + 1),
    };
    for i in 0..=n_pts {
        pw.w.push(gf.add(gf.mul(re.w[i], le.w[i]), gf.mul(re.n[i], le.v[i])));
        pw.n.push(gf.add(gf.mul(re.w[i], le.n[i]), gf.mul(re.n[i], le.m[i])));
        pw.v.push(gf.add(gf.mul(re.v[i], le.w[i]), gf.mul(re.m[i], le.v[i])));
        pw.m.push(gf.add(gf.mul(re.v[i], le.n[i]), gf.mul(re.m[i], le.m[i])));
    }

    let back = |vals: &[FieldElement]| -> Vec<FieldElement> {
        ifft_extended(gf, b, vals, mu, beta).expect("size").coeffs
    };
    let mat = XbarMatrix {
        w: back(&pw.w),
        n: back(&pw.n),
        v: back(&pw.v),
        m: back(&pw.m),
    };
    (mat, ranks_out)
}

/// Full basis matrix in X coordinates for eps constraints
/// (x_i = omega_{i-1}, d_i = u(omega_{i-1}), g_i = 1).
///
/// A power-of-two eps is one recursion; otherwise eps is split into
/// descending power-of-two chunks (30 = 16 + 8 + 4 + 2), each chunk's
/// matrix evaluated on the common omega_0..omega_eps grid, accumulated
/// pointwise, and interpolated once at the end.
pub fn fma_solve_matrix(gf: &Field, b: &BasisContext, u_evals: &[FieldElement]) -> BasisMatrix {
    let eps = u_evals.len();
    assert!(eps >= 1);
    let mut d = u_evals.to_vec();
    let mut g = vec![FieldElement::ONE; eps];
    let ranks = RankPair::initial();

    if eps.is_power_of_two() {
        let mu = ceil_log2(eps);
        let (mat, ranks) = fma_rec(gf, b, &mut d, &mut g, FieldElement::ZERO, mu, ranks);
        return BasisMatrix {
            w: mat.w,
            n: mat.n,
            v: mat.v,
            m: mat.m,
            ranks,
            repr: PolyRepr::Xbar,
        };
    }

    let grid_mu = ceil_log2(eps + 1);
    let grid = 1usize << grid_mu;
    let points = eps + 1;
    let mut acc = MatrixEvals {
        w: vec![FieldElement::ONE; points],
        n: vec![FieldElement::ZERO; points],
        v: vec![FieldElement::ZERO; points],
        m: vec![FieldElement::ONE; points],
    };
    let mut ranks = ranks;

    let mut off = 0usize;
    let mut rem = eps;
    while rem > 0 {
        let a = (usize::BITS - 1 - rem.leading_zeros()) as usize; // floor log2
        let chunk = 1usize << a;
        let beta = b.omega(off);
        let (mat, new_ranks) = {
            let dc = &mut d[off..off + chunk];
            let gc = &mut g[off..off + chunk];
            fma_rec(gf, b, dc, gc, beta, a, ranks)
        };
        ranks = new_ranks;

        // chunk entries evaluated on the shared grid prefix
        let entry = |coeffs: &[FieldElement]| -> Vec<FieldElement> {
            let mut data = coeffs.to_vec();
            data.resize(grid, FieldElement::ZERO);
            fft_in_place(gf, b, &mut data, FieldElement::ZERO);
            data.truncate(points);
            data
        };
        let ce = MatrixEvals {
            w: entry(&mat.w),
            n: entry(&mat.n),
            v: entry(&mat.v),
            m: entry(&mat.m),
        };

        // remaining constraints fold through the chunk matrix
        for i in off + chunk..eps {
            let (di, gi) = (d[i], g[i]);
            d[i] = gf.add(gf.mul(ce.w[i], di), gf.mul(ce.n[i], gi));
            g[i] = gf.add(gf.mul(ce.v[i], di), gf.mul(ce.m[i], gi));
        }

        // accumulate chunk * acc pointwise
        for i in 0..points {
            let (aw, an, av, am) = (acc.w[i], acc.n[i], acc.v[i], acc.m[i]);
            acc.w[i] = gf.add(gf.mul(ce.w[i], aw), gf.mul(ce.n[i], av));
            acc.n[i] = gf.add(gf.mul(ce.w[i], an), gf.mul(ce.n[i], am));
            acc.v[i] = gf.add(gf.mul(ce.v[i], aw), gf.mul(ce.m[i], av));
            acc.m[i] = gf.add(gf.mul(ce.v[i], an), gf.mul(ce.m[i], am));
        }

        off += chunk;
        rem -= chunk;
    }

    // entries have degree <= eps: one (eps+1)-point interpolation each
    let back = |vals: &[FieldElement]| -> Vec<FieldElement> {
        ifft_partial(gf, b, vals, grid_mu, FieldElement::ZERO)
            .0
            .coeffs
    };
    BasisMatrix {
        w: back(&acc.w),
        n: back(&acc.n),
        v: back(&acc.v),
        m: back(&acc.m),
        ranks,
        repr: PolyRepr::Xbar,
    }
}

/// Divide-and-conquer solve returning the selected (lambda, z) pair.
pub fn fma_solve(gf: &Field, b: &BasisContext, u_evals: &[FieldElement]) -> KeySolution {
    select_solution(&fma_solve_matrix(gf, b, u_evals))
}

/// Pick the lower-rank row of an X-coordinate basis matrix as the decoding
/// solution. The rank sum is odd, so there is never a tie.
pub fn select_solution(mat: &BasisMatrix) -> KeySolution {
    assert_eq!(
        mat.repr,
        PolyRepr::Xbar,
        "select_solution wants X coordinates"
    );
    assert_ne!(mat.ranks.r1, mat.ranks.r2);
    let (lam, z) = if mat.ranks.r1 < mat.ranks.r2 {
        (mat.w.clone(), mat.n.clone())
    } else {
        (mat.v.clone(), mat.m.clone())
    };
    KeySolution {
        lambda: PolyXbar::new(lam),
        z: PolyXbar::new(z),
        rank: mat.ranks.min(),
        ranks: mat.ranks,
    }
}
