//! Forward and inverse transforms over the X basis.
//!
//! A 2^tau-point transform maps coefficients (w.r.t. the X basis) to the
//! evaluations at the coset `omega_0 + beta, .., omega_{2^tau - 1} + beta`.
//! Butterflies are the loop-based form of the recursive split
//! `f = a0 | a1` with `a0_l = f_l + twiddle * f_{l+half}`,
//! `a1_l = a0_l + f_{l+half}`, where the twiddle for the block shifted by
//! `beta'` is the normalized subspace evaluation `s_{level-1}(beta')` drawn
//! from the precomputed linearized tables.
//!
//! Counting: every butterfly executes its twiddle multiplication through the
//! counted entry point, including structurally zero twiddles (beta' inside
//! the level subspace), so one 2^tau-point transform costs exactly
//! tau*2^tau/2 multiplications and tau*2^tau additions. Twiddle derivation
//! itself (an XOR of table lookups) is treated as stored-constant access and
//! is not counted. Single-point evaluations build their product table on the
//! fly and count every multiplication, pricing each linearized-table lookup
//! as one multiplication.
//!
//! Besides the power-of-two pair this module carries the three interpolation
//! variants the codec needs: the (2^mu + 1)-point extended inverse transform,
//! the eps-point inverse transform (low evaluations known, top coefficients
//! zero) and its mirror (high evaluations known), plus zero-padded forward
//! evaluation for arbitrary lengths.

use crate::basis::{BasisContext, PolyXbar};
use crate::gf::{Field, FieldElement};
use std::fmt;

/// Evaluations of a polynomial on the coset `omega_l + beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalVector {
    pub values: Vec<FieldElement>,
    pub beta: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    /// Input length is not the declared 2^tau.
    SizeMismatch { expected: usize, got: usize },
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::SizeMismatch { expected, got } => {
                write!(
                    f,
                    "transform size mismatch: expected {}, got {}",
                    expected, got
                )
            }
        }
    }
}

impl std::error::Error for TransformError {}

#[inline(always)]
fn coset_shift(b: &BasisContext, beta: FieldElement, base: usize) -> FieldElement {
    FieldElement(beta.0 ^ b.omega(base).0)
}

/// In-place forward transform; `data.len()` must be a power of two.
pub fn fft_in_place(gf: &Field, b: &BasisContext, data: &mut [FieldElement], beta: FieldElement) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let tau = n.trailing_zeros() as usize;
    for level in (1..=tau).rev() {
        let half = 1usize << (level - 1);
        let blocks = n >> level;
        for blk in 0..blocks {
            let base = blk << level;
            let t = b.twiddle(level - 1, coset_shift(b, beta, base));
            for l in base..base + half {
                let hi = l + half;
                data[l] = gf.add(data[l], gf.mul(t, data[hi]));
                data[hi] = gf.add(data[l], data[hi]);
            }
        }
    }
}

/// In-place inverse transform; exact inverse of [`fft_in_place`].
pub fn ifft_in_place(gf: &Field, b: &BasisContext, data: &mut [FieldElement], beta: FieldElement) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let tau = n.trailing_zeros() as usize;
    for level in 1..=tau {
        let half = 1usize << (level - 1);
        let blocks = n >> level;
        for blk in 0..blocks {
            let base = blk << level;
            let t = b.twiddle(level - 1, coset_shift(b, beta, base));
            for l in base..base + half {
                let hi = l + half;
                data[hi] = gf.add(data[l], data[hi]);
                data[l] = gf.add(data[l], gf.mul(t, data[hi]));
            }
        }
    }
}

/// Forward transform of a 2^tau-coefficient polynomial.
pub fn fft(
    gf: &Field,
    b: &BasisContext,
    f: &PolyXbar,
    tau: usize,
    beta: FieldElement,
) -> Result<EvalVector, TransformError> {
    if f.len() != 1usize << tau {
        return Err(TransformError::SizeMismatch {
            expected: 1 << tau,
            got: f.len(),
        });
    }
    let mut values = f.coeffs.clone();
    fft_in_place(gf, b, &mut values, beta);
    Ok(EvalVector { values, beta })
}

/// Inverse transform of 2^tau evaluations.
pub fn ifft(
    gf: &Field,
    b: &BasisContext,
    ev: &EvalVector,
    tau: usize,
) -> Result<PolyXbar, TransformError> {
    if ev.values.len() != 1usize << tau {
        return Err(TransformError::SizeMismatch {
            expected: 1 << tau,
            got: ev.values.len(),
        });
    }
    let mut coeffs = ev.values.clone();
    ifft_in_place(gf, b, &mut coeffs, ev.beta);
    Ok(PolyXbar::new(coeffs))
}

/// Evaluate an X-coordinate polynomial at one arbitrary point: builds the
/// basis-value table by subset products, then a full-length dot product.
/// O(len) multiplications, all counted.
pub fn eval_at_point(
    gf: &Field,
    b: &BasisContext,
    coeffs: &[FieldElement],
    x: FieldElement,
) -> FieldElement {
    let len = coeffs.len();
    if len == 0 {
        return FieldElement::ZERO;
    }
    let mut xp = vec![FieldElement::ONE; len];
    let mut t = 0usize;
    while (1usize << t) < len {
        gf.ops.note_mul();
        let s = b.twiddle(t, x);
        let stride = 1usize << t;
        xp[stride] = s;
        for j in 1..stride {
            if stride + j >= len {
                break;
            }
            xp[stride + j] = gf.mul(xp[j], s);
        }
        t += 1;
    }
    let mut acc = FieldElement::ZERO;
    for j in 0..len {
        acc = gf.add(acc, gf.mul(coeffs[j], xp[j]));
    }
    acc
}

/// Interpolate the unique polynomial of degree <= 2^mu through the 2^mu + 1
/// evaluations at `omega_0 + beta, .., omega_{2^mu} + beta`.
///
/// The first 2^mu points give a candidate by plain inverse transform; the
/// extra point fixes the degree-2^mu coefficient through the identity that
/// the degree-2^mu basis polynomial is constant on the first coset and
/// differs by exactly one at the extra point.
pub fn ifft_extended(
    gf: &Field,
    b: &BasisContext,
    values: &[FieldElement],
    mu: usize,
    beta: FieldElement,
) -> Result<PolyXbar, TransformError> {
    let n = 1usize << mu;
    if values.len() != n + 1 {
        return Err(TransformError::SizeMismatch {
            expected: n + 1,
            got: values.len(),
        });
    }
    let mut f = values[..n].to_vec();
    ifft_in_place(gf, b, &mut f, beta);
    let x_extra = coset_shift(b, beta, n);
    let fhat_extra = eval_at_point(gf, b, &f, x_extra);
    let c = gf.add(values[n], fhat_extra);
    gf.ops.note_mul();
    let sb = b.twiddle(mu, beta);
    f[0] = gf.add(f[0], gf.mul(c, sb));
    f.push(c);
    Ok(PolyXbar::new(f))
}

/// eps-point inverse transform: given the first `eps` evaluations of a
/// polynomial whose coefficients above index eps-1 are zero, recover the
/// coefficients and complete the full 2^mu evaluation vector.
pub fn ifft_partial(
    gf: &Field,
    b: &BasisContext,
    known: &[FieldElement],
    mu: usize,
    beta: FieldElement,
) -> (PolyXbar, Vec<FieldElement>) {
    let (coeffs, evals) = ifft_partial_rec(gf, b, known, mu, beta);
    (PolyXbar::new(coeffs), evals)
}

fn ifft_partial_rec(
    gf: &Field,
    b: &BasisContext,
    known: &[FieldElement],
    mu: usize,
    beta: FieldElement,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let eps = known.len();
    let n = 1usize << mu;
    assert!(eps >= 1 && eps <= n, "eps out of range: {} of {}", eps, n);
    if mu == 0 {
        return (vec![known[0]], vec![known[0]]);
    }
    let half = n >> 1;
    if eps <= half {
        let (f0, ev_low) = ifft_partial_rec(gf, b, known, mu - 1, beta);
        let mut ev_high = f0.clone();
        fft_in_place(gf, b, &mut ev_high, coset_shift(b, beta, half));
        let mut coeffs = f0;
        coeffs.resize(n, FieldElement::ZERO);
        let mut evals = ev_low;
        evals.extend(ev_high);
        (coeffs, evals)
    } else {
        let mut w = known[..half].to_vec();
        ifft_in_place(gf, b, &mut w, beta);
        let mut wp = w.clone();
        fft_in_place(gf, b, &mut wp, coset_shift(b, beta, half));
        let adj: Vec<FieldElement> = (half..eps)
            .map(|i| gf.add(known[i], wp[i - half]))
            .collect();
        let (f1, f1_evals) = ifft_partial_rec(gf, b, &adj, mu - 1, coset_shift(b, beta, half));
        gf.ops.note_mul();
        let s = b.twiddle(mu - 1, beta);
        let f0: Vec<FieldElement> = (0..half).map(|j| gf.add(w[j], gf.mul(s, f1[j]))).collect();
        let ev_high: Vec<FieldElement> = (0..half).map(|j| gf.add(f1_evals[j], wp[j])).collect();
        let mut coeffs = f0;
        coeffs.extend(f1);
        let mut evals = known[..half].to_vec();
        evals.extend(ev_high);
        (coeffs, evals)
    }
}

/// Mirror of [`ifft_partial`]: the `missing` lowest evaluations are unknown
/// and the top `missing` coefficients are zero. `known` holds the
/// evaluations at `omega_missing + beta, .., omega_{2^mu - 1} + beta`.
/// Returns the coefficients and the completed evaluation vector.
pub fn ifft_partial_high(
    gf: &Field,
    b: &BasisContext,
    known: &[FieldElement],
    missing: usize,
    mu: usize,
    beta: FieldElement,
) -> (PolyXbar, Vec<FieldElement>) {
    let (coeffs, evals) = ifft_partial_high_rec(gf, b, known, missing, mu, beta);
    (PolyXbar::new(coeffs), evals)
}

fn ifft_partial_high_rec(
    gf: &Field,
    b: &BasisContext,
    known: &[FieldElement],
    missing: usize,
    mu: usize,
    beta: FieldElement,
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let n = 1usize << mu;
    assert!(missing <= n);
    assert_eq!(known.len(), n - missing);
    if mu == 0 {
        return if missing == 0 {
            (vec![known[0]], vec![known[0]])
        } else {
            // no information and degree < 0: the zero polynomial
            (vec![FieldElement::ZERO], vec![FieldElement::ZERO])
        };
    }
    let half = n >> 1;
    if missing >= half {
        // all knowns live in the high coset and the degree fits in half
        let (f0, ev_high) = ifft_partial_high_rec(
            gf,
            b,
            known,
            missing - half,
            mu - 1,
            coset_shift(b, beta, half),
        );
        let mut ev_low = f0.clone();
        fft_in_place(gf, b, &mut ev_low, beta);
        let mut coeffs = f0;
        coeffs.resize(n, FieldElement::ZERO);
        let mut evals = ev_low;
        evals.extend(ev_high);
        (coeffs, evals)
    } else {
        // high coset fully known; its inverse transform pins the high
        // coefficient half up to the low-coset contribution
        let high = &known[half - missing..];
        let mut w = high.to_vec();
        ifft_in_place(gf, b, &mut w, coset_shift(b, beta, half));
        let mut wp = w.clone();
        fft_in_place(gf, b, &mut wp, beta);
        let adj: Vec<FieldElement> = (missing..half)
            .map(|i| gf.add(known[i - missing], wp[i]))
            .collect();
        let (f1, f1_evals) = ifft_partial_high_rec(gf, b, &adj, missing, mu - 1, beta);
        gf.ops.note_mul();
        let s = b.twiddle(mu - 1, beta);
        let f0: Vec<FieldElement> = (0..half)
            .map(|j| gf.add(gf.add(w[j], gf.mul(s, f1[j])), f1[j]))
            .collect();
        let ev_low: Vec<FieldElement> = (0..half).map(|j| gf.add(f1_evals[j], wp[j])).collect();
        let mut coeffs = f0;
        coeffs.extend(f1);
        let mut evals = ev_low;
        evals.extend_from_slice(high);
        (coeffs, evals)
    }
}

/// Evaluate an eps-coefficient polynomial at the first eps coset points by
/// zero-padding to the next power of two, transforming, and truncating.
pub fn fft_any(
    gf: &Field,
    b: &BasisContext,
    coeffs: &[FieldElement],
    beta: FieldElement,
) -> Vec<FieldElement> {
    let eps = coeffs.len();
    if eps == 0 {
        return Vec::new();
    }
    let n = eps.next_power_of_two();
    let mut data = coeffs.to_vec();
    data.resize(n, FieldElement::ZERO);
    fft_in_place(gf, b, &mut data, beta);
    data.truncate(eps);
    data
}
