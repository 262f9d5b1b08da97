//! Instrumented GF(2^m) arithmetic for m up to 16.
//!
//! Field tables (exp/log) are built once into an immutable [`FieldContext`];
//! every arithmetic call goes through a [`Field`] handle that pairs the tables
//! with an [`OpCounter`] session, so multiplications, additions and divisions
//! are tallied per session. Tables are shareable across threads; a counter
//! session is single-writer (`Cell`-based, deliberately `!Sync`).
//!
//! Counting conventions (these matter for the complexity tables the bench
//! reproduces):
//! - any multiply executed through [`Field::mul`] is counted, including
//!   multiplies by the constants 0 and 1;
//! - additions are XORs and every one through [`Field::add`] is counted,
//!   including folds that start from a zero accumulator;
//! - table construction and other setup work uses the `raw_*` entry points
//!   and is never counted.

use std::cell::Cell;
use std::fmt;

/// One symbol of GF(2^m), stored as its m-bit polynomial representation.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline(always)]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Field construction parameters: extension degree, reduction polynomial
/// (bit mask, degree-m term included) and a primitive element.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub m: u32,
    pub reduction_poly: u32,
    pub generator: u16,
}

impl FieldSpec {
    /// Default spec for a given extension degree. Reduction polynomials are
    /// the widely used ones: 0x11D (m=8), 0x409 (m=10), 0x1053 (m=12);
    /// other degrees fall back to a small table of low-weight irreducibles.
    pub fn for_degree(m: u32) -> Option<FieldSpec> {
        let poly = match m {
            2 => 0x7,
            3 => 0xB,
            4 => 0x13,
            5 => 0x25,
            6 => 0x43,
            7 => 0x89,
            8 => 0x11D,
            9 => 0x211,
            10 => 0x409,
            11 => 0x805,
            12 => 0x1053,
            13 => 0x201B,
            14 => 0x4443,
            15 => 0x8003,
            16 => 0x1100B,
            _ => return None,
        };
        Some(FieldSpec {
            m,
            reduction_poly: poly,
            generator: 0x02,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// m outside the supported range 2..=16.
    UnsupportedDegree(u32),
    /// Reduction polynomial lacks the degree-m term or the constant term,
    /// or has bits above degree m.
    BadReductionPoly(u32),
    /// The generator does not have multiplicative order 2^m - 1 (which also
    /// catches reducible polynomials).
    NotPrimitive(u16),
    DivisionByZero,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::UnsupportedDegree(m) => write!(f, "unsupported extension degree m={}", m),
            GfError::BadReductionPoly(p) => {
                write!(
                    f,
                    "reduction polynomial {:#x} is not a valid degree-m choice",
                    p
                )
            }
            GfError::NotPrimitive(g) => write!(
                f,
                "generator {:#x} does not generate the full multiplicative group",
                g
            ),
            GfError::DivisionByZero => write!(f, "division by zero in GF(2^m)"),
        }
    }
}

impl std::error::Error for GfError {}

/// Immutable exp/log tables plus the spec they were built from.
pub struct FieldContext {
    spec: FieldSpec,
    size: usize,
    order: usize,
    /// exp[i] = g^i for i in 0..2*(2^m-1), doubled so exp[log a + log b]
    /// needs no modular reduction.
    exp: Vec<u16>,
    /// log[a] for a != 0; log[0] is a sentinel and never read.
    log: Vec<u16>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("spec", &self.spec)
            .finish()
    }
}

/// Build the field tables, validating the spec.
pub fn build_field(spec: FieldSpec) -> Result<FieldContext, GfError> {
    FieldContext::new(spec)
}

impl FieldContext {
    pub fn new(spec: FieldSpec) -> Result<FieldContext, GfError> {
        let m = spec.m;
        if !(2..=16).contains(&m) {
            return Err(GfError::UnsupportedDegree(m));
        }
        let size = 1usize << m;
        let poly = spec.reduction_poly;
        let top = 1u32 << m;
        if poly & top == 0 || poly & 1 == 0 || poly >> (m + 1) != 0 {
            return Err(GfError::BadReductionPoly(poly));
        }
        if spec.generator == 0 || u32::from(spec.generator) >= top {
            return Err(GfError::NotPrimitive(spec.generator));
        }

        let order = size - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; size];
        let mut seen = vec![false; size];
        let mut v: u32 = 1;
        for i in 0..order {
            if seen[v as usize] {
                // the generator's orbit closed early
                return Err(GfError::NotPrimitive(spec.generator));
            }
            seen[v as usize] = true;
            exp[i] = v as u16;
            exp[i + order] = v as u16;
            log[v as usize] = i as u16;
            v = carryless_mul_mod(v, u32::from(spec.generator), poly, m);
        }
        if v != 1 {
            return Err(GfError::NotPrimitive(spec.generator));
        }
        Ok(FieldContext {
            spec,
            size,
            order,
            exp,
            log,
        })
    }

    #[inline(always)]
    pub fn m(&self) -> u32 {
        self.spec.m
    }

    #[inline(always)]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn generator(&self) -> FieldElement {
        FieldElement(self.spec.generator)
    }

    /// g^i, reduced mod the group order.
    pub fn exp(&self, i: usize) -> FieldElement {
        FieldElement(self.exp[i % self.order])
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(usize::from(self.log[a.0 as usize]))
        }
    }

    /// Uncounted multiply, for table construction and test oracles.
    #[inline]
    pub fn raw_mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let ia = self.log[a.0 as usize] as usize;
        let ib = self.log[b.0 as usize] as usize;
        FieldElement(self.exp[ia + ib])
    }

    /// Uncounted inverse.
    pub fn raw_inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let ia = self.log[a.0 as usize] as usize;
        Some(FieldElement(self.exp[self.order - ia]))
    }

    /// Uncounted power a^e.
    pub fn raw_pow(&self, a: FieldElement, e: usize) -> FieldElement {
        if a.is_zero() {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let ia = self.log[a.0 as usize] as usize;
        FieldElement(self.exp[(ia * e) % self.order])
    }
}

/// Product of two polynomials over GF(2) reduced mod `poly`; used only to
/// build the tables (and by tests as an independent oracle).
pub fn carryless_mul_mod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    let a = u64::from(a);
    for bit in 0..32 {
        if b & (1 << bit) != 0 {
            acc ^= a << bit;
        }
    }
    let poly = u64::from(poly);
    for bit in (m..64 - 1).rev() {
        if acc & (1 << bit) != 0 {
            acc ^= poly << (bit - m);
        }
    }
    acc as u32
}

/// Per-session counts of field operations. Monotone within a session;
/// deterministic for a fixed input because all arithmetic paths are
/// data-independent in their op counts.
#[derive(Default)]
pub struct OpCounter {
    mul: Cell<u64>,
    add: Cell<u64>,
    div: Cell<u64>,
}

/// A point-in-time copy of the counters.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct OpSnapshot {
    pub mul: u64,
    pub add: u64,
    pub div: u64,
}

impl OpSnapshot {
    pub fn delta(self, earlier: OpSnapshot) -> OpSnapshot {
        OpSnapshot {
            mul: self.mul - earlier.mul,
            add: self.add - earlier.add,
            div: self.div - earlier.div,
        }
    }

    pub fn total(self) -> u64 {
        self.mul + self.add + self.div
    }
}

impl OpCounter {
    pub fn new() -> OpCounter {
        OpCounter::default()
    }

    #[inline(always)]
    fn bump_mul(&self) {
        self.mul.set(self.mul.get() + 1);
    }

    #[inline(always)]
    fn bump_add(&self) {
        self.add.set(self.add.get() + 1);
    }

    #[inline(always)]
    fn bump_div(&self) {
        self.div.set(self.div.get() + 1);
    }

    /// Record a multiplication-equivalent without doing table arithmetic;
    /// linearized-polynomial evaluations are priced as one multiplication
    /// by the cost model.
    #[inline(always)]
    pub fn note_mul(&self) {
        self.bump_mul();
    }

    pub fn snapshot(&self) -> OpSnapshot {
        OpSnapshot {
            mul: self.mul.get(),
            add: self.add.get(),
            div: self.div.get(),
        }
    }

    pub fn reset(&self) {
        self.mul.set(0);
        self.add.set(0);
        self.div.set(0);
    }
}

/// Field tables paired with a counter session; the handle every counted
/// arithmetic call goes through. Cheap to copy.
#[derive(Copy, Clone)]
pub struct Field<'a> {
    pub ctx: &'a FieldContext,
    pub ops: &'a OpCounter,
}

impl<'a> Field<'a> {
    pub fn new(ctx: &'a FieldContext, ops: &'a OpCounter) -> Field<'a> {
        Field { ctx, ops }
    }

    #[inline(always)]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.ops.bump_add();
        FieldElement(a.0 ^ b.0)
    }

    #[inline(always)]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.ops.bump_mul();
        self.ctx.raw_mul(a, b)
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        if b.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        self.ops.bump_div();
        if a.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        let ia = self.ctx.log[a.0 as usize] as usize;
        let ib = self.ctx.log[b.0 as usize] as usize;
        Ok(FieldElement(self.ctx.exp[ia + self.ctx.order - ib]))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        self.ops.bump_div();
        Ok(self.ctx.raw_inv(a).unwrap())
    }
}
