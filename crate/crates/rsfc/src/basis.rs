//! Point enumeration, subspace polynomials and the degree-graded polynomial
//! basis the transforms work in.
//!
//! Fix an F_2-basis (v_0, .., v_{m-1}) of GF(2^m). Every field element is
//! enumerated as `omega_l = l_0 v_0 + .. + l_{m-1} v_{m-1}` with (l_0, ..)
//! the binary digits of l, so the map l -> omega_l is F_2-linear in the
//! index. The subspace polynomial `s_t(x)` is the product of (x - omega_l)
//! over l < 2^t; it is F_2-linearized, which is what makes every evaluation
//! here a pair of table lookups. The basis polynomial `X_l(x)` is the
//! product of the normalized `s_t(x)/s_t(v_t)` over the set bits t of l and
//! has degree exactly l.
//!
//! Evaluation tables are byte-sliced: per level t we store the images of the
//! 256 low-byte and 256 high-byte patterns, so `s_t(x)` is two lookups and
//! one XOR for any m <= 16. The cost model treats one such
//! evaluation as a single field multiplication; [`BasisContext::subspace_eval`]
//! counts it that way. The uncounted variants feed FFT twiddles and other
//! stored-constant paths.

use crate::gf::{Field, FieldContext, FieldElement};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisError {
    /// The supplied vectors are not F_2-linearly independent.
    DependentBasis,
    /// Wrong number of basis vectors for the field degree.
    WrongLength { expected: usize, got: usize },
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::DependentBasis => write!(f, "basis vectors are linearly dependent"),
            BasisError::WrongLength { expected, got } => {
                write!(f, "expected {} basis vectors, got {}", expected, got)
            }
        }
    }
}

impl std::error::Error for BasisError {}

/// Coefficients of a polynomial with respect to the X basis. `coeffs[l]`
/// multiplies the degree-l basis polynomial, so the represented degree is
/// the index of the top nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyXbar {
    pub coeffs: Vec<FieldElement>,
}

impl PolyXbar {
    pub fn new(coeffs: Vec<FieldElement>) -> PolyXbar {
        PolyXbar { coeffs }
    }

    pub fn zeros(len: usize) -> PolyXbar {
        PolyXbar {
            coeffs: vec![FieldElement::ZERO; len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the represented polynomial; `None` when all coefficients
    /// are zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Copy of the coefficients zero-padded (or truncated, asserting the
    /// tail is zero) to `len`.
    pub fn padded(&self, len: usize) -> Vec<FieldElement> {
        let mut out = self.coeffs.clone();
        if out.len() > len {
            debug_assert!(out[len..].iter().all(|c| c.is_zero()));
            out.truncate(len);
        }
        out.resize(len, FieldElement::ZERO);
        out
    }
}

impl fmt::Debug for PolyXbar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Per-level byte-sliced lookup pair: value = lo[x & 0xff] ^ hi[x >> 8].
struct SlicedTable {
    lo: [u16; 256],
    hi: [u16; 256],
}

impl SlicedTable {
    fn build(unit_images: &[FieldElement]) -> SlicedTable {
        let mut lo = [0u16; 256];
        let mut hi = [0u16; 256];
        for b in 1usize..256 {
            let bit = b.trailing_zeros() as usize;
            let rest = b & (b - 1);
            lo[b] = lo[rest] ^ unit_images.get(bit).map_or(0, |e| e.0);
            hi[b] = hi[rest] ^ unit_images.get(bit + 8).map_or(0, |e| e.0);
        }
        SlicedTable { lo, hi }
    }

    #[inline(always)]
    fn eval(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.lo[(x.0 & 0xff) as usize] ^ self.hi[(x.0 >> 8) as usize])
    }
}

/// Immutable basis data: the point enumeration, subspace-polynomial
/// evaluation tables (raw and normalized) and the normalization constants.
pub struct BasisContext {
    m: usize,
    v: Vec<FieldElement>,
    omega: Vec<FieldElement>,
    /// s_norm[t] = s_t(v_t), t < m. Never zero.
    s_norm: Vec<FieldElement>,
    /// raw s_t tables, t = 0..=m (s_m is identically zero on the field).
    s_tables: Vec<SlicedTable>,
    /// normalized s_t/s_t(v_t) tables, t < m.
    shat_tables: Vec<SlicedTable>,
    /// x-coefficient of the normalized s_t; the derivative of a linearized
    /// polynomial is that constant. Equals p_{2^t - 1} / s_t(v_t).
    deriv_c: Vec<FieldElement>,
}

impl fmt::Debug for BasisContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasisContext")
            .field("m", &self.m)
            .field("v", &self.v)
            .finish()
    }
}

/// Build the basis tables for the given F_2-basis `v`.
pub fn build_basis(ctx: &FieldContext, v: &[FieldElement]) -> Result<BasisContext, BasisError> {
    BasisContext::new(ctx, v)
}

/// The default basis: powers of the field generator. With generator 0x02
/// this is the unit-bit basis, making omega_l = l.
pub fn polynomial_basis(ctx: &FieldContext) -> Vec<FieldElement> {
    (0..ctx.m() as usize)
        .map(|i| ctx.raw_pow(ctx.generator(), i))
        .collect()
}

impl BasisContext {
    pub fn new(ctx: &FieldContext, v: &[FieldElement]) -> Result<BasisContext, BasisError> {
        let m = ctx.m() as usize;
        if v.len() != m {
            return Err(BasisError::WrongLength {
                expected: m,
                got: v.len(),
            });
        }
        // F_2 independence via bitwise Gaussian elimination
        let mut rows: Vec<u16> = v.iter().map(|e| e.0).collect();
        for i in 0..m {
            let pivot = (i..m)
                .find(|&r| rows[r] != 0)
                .ok_or(BasisError::DependentBasis)?;
            rows.swap(i, pivot);
            let top = 15 - rows[i].leading_zeros() as usize;
            for r in 0..m {
                if r != i && rows[r] & (1 << top) != 0 {
                    rows[r] ^= rows[i];
                }
            }
            if rows[i] == 0 {
                return Err(BasisError::DependentBasis);
            }
        }

        let size = ctx.size();
        let mut omega = vec![FieldElement::ZERO; size];
        for i in 0..m {
            let stride = 1usize << i;
            for j in 0..stride {
                omega[stride + j] = FieldElement(v[i].0 ^ omega[j].0);
            }
        }

        // s_t images of the unit bits, by the recurrence
        // s_{t+1}(x) = s_t(x)^2 + s_t(v_t) s_t(x), starting from s_0(x) = x.
        let mut unit_images: Vec<Vec<FieldElement>> = Vec::with_capacity(m + 1);
        unit_images.push((0..m).map(|i| FieldElement(1 << i)).collect());
        let mut s_norm = Vec::with_capacity(m);
        for t in 0..m {
            let cur = &unit_images[t];
            let eval_at = |x: FieldElement| -> FieldElement {
                let mut acc = 0u16;
                for (bit, img) in cur.iter().enumerate() {
                    if x.0 & (1 << bit) != 0 {
                        acc ^= img.0;
                    }
                }
                FieldElement(acc)
            };
            let norm = eval_at(v[t]);
            debug_assert!(!norm.is_zero());
            s_norm.push(norm);
            let next: Vec<FieldElement> = cur
                .iter()
                .map(|&s| {
                    let sq = ctx.raw_mul(s, s);
                    FieldElement(sq.0 ^ ctx.raw_mul(norm, s).0)
                })
                .collect();
            unit_images.push(next);
        }

        let s_tables: Vec<SlicedTable> =
            unit_images.iter().map(|u| SlicedTable::build(u)).collect();
        let shat_tables: Vec<SlicedTable> = (0..m)
            .map(|t| {
                let inv = ctx.raw_inv(s_norm[t]).expect("nonzero norm");
                let normalized: Vec<FieldElement> = unit_images[t]
                    .iter()
                    .map(|&s| ctx.raw_mul(s, inv))
                    .collect();
                SlicedTable::build(&normalized)
            })
            .collect();

        // x-coefficient of s_t is the product of the s_norm below it
        let mut deriv_c = Vec::with_capacity(m);
        let mut x_coeff = FieldElement::ONE;
        for t in 0..m {
            deriv_c.push(ctx.raw_mul(x_coeff, ctx.raw_inv(s_norm[t]).unwrap()));
            x_coeff = ctx.raw_mul(x_coeff, s_norm[t]);
        }

        Ok(BasisContext {
            m,
            v: v.to_vec(),
            omega,
            s_norm,
            s_tables,
            shat_tables,
            deriv_c,
        })
    }

    #[inline(always)]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn basis_vectors(&self) -> &[FieldElement] {
        &self.v
    }

    /// The enumerated point omega_l.
    #[inline(always)]
    pub fn omega(&self, l: usize) -> FieldElement {
        self.omega[l]
    }

    pub fn num_points(&self) -> usize {
        self.omega.len()
    }

    /// s_t(v_t), the basis normalization constant. Nonzero by construction.
    #[inline(always)]
    pub fn s_norm(&self, t: usize) -> FieldElement {
        self.s_norm[t]
    }

    /// Raw subspace-polynomial evaluation s_t(x), 0 <= t <= m, counted as
    /// one multiplication per the linearized-table cost model.
    #[inline]
    pub fn subspace_eval(&self, gf: &Field, t: usize, x: FieldElement) -> FieldElement {
        gf.ops.note_mul();
        self.s_tables[t].eval(x)
    }

    /// Uncounted raw s_t(x), for setup work and oracles.
    #[inline(always)]
    pub fn subspace_eval_raw(&self, t: usize, x: FieldElement) -> FieldElement {
        self.s_tables[t].eval(x)
    }

    /// Uncounted normalized evaluation s_t(x)/s_t(v_t); this is the FFT
    /// twiddle factor, treated as a stored constant by the counting model.
    #[inline(always)]
    pub fn twiddle(&self, t: usize, x: FieldElement) -> FieldElement {
        self.shat_tables[t].eval(x)
    }

    /// x-coefficient of the normalized s_t (its formal derivative).
    #[inline(always)]
    pub fn deriv_const(&self, t: usize) -> FieldElement {
        self.deriv_c[t]
    }

    /// Normalization constant p_l: the product of s_t(v_t) over the set
    /// bits t of l. Multiplications are counted.
    pub fn p_const(&self, gf: &Field, l: usize) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut bits = l;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            acc = gf.mul(acc, self.s_norm[t]);
            bits &= bits - 1;
        }
        acc
    }

    /// Direct product evaluation of the degree-l basis polynomial at x.
    /// Test oracle; not on any decode path.
    pub fn xbar_eval_naive(&self, gf: &Field, l: usize, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut bits = l;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            gf.ops.note_mul(); // table eval, priced as one multiplication
            acc = gf.mul(acc, self.shat_tables[t].eval(x));
            bits &= bits - 1;
        }
        acc
    }
}
