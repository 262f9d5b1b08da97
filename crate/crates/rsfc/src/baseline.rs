//! Conventional syndrome-based Reed-Solomon decoder: Horner syndromes, an
//! inversionless Berlekamp-Massey key-equation solver in its reformulated
//! systolic-array shape, classic root search and the error-value formula.
//! This is the operation-count and correctness baseline the FFT pipeline is
//! compared against.
//!
//! Code construction is the classical one: n = 2^m - 1 evaluation points
//! alpha^0..alpha^{n-1} for a primitive alpha, narrow-sense generator roots
//! alpha^1..alpha^{2t}. Symbol index j is the coefficient of x^j; parity
//! occupies indices 0..2t and the message the rest.
//!
//! Counting shape (what the reference tables assume):
//! - syndromes: full-length Horner with the accumulator starting at zero,
//!   n mul + n add per syndrome;
//! - key equation: 2t iterations over a (3t+1)-cell array, every cell doing
//!   two multiplications and one addition per iteration, no divisions;
//! - root search: t+1 registers stepped across all n positions, t+1 mul and
//!   t+1 add each;
//! - error values: two length-t Horner evaluations, one division per root.

use crate::bench::StageTrace;
use crate::codec::{CodecError, DecodeOutcome, ErrorPattern, UncorrectableReason};
use crate::gf::{Field, FieldContext, FieldElement};
use crate::poly;

/// Classical code geometry: length 2^m - 1, even redundancy 2t.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ClassicCodeParams {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl ClassicCodeParams {
    pub fn new(m: u32, n: usize, k: usize) -> Result<ClassicCodeParams, CodecError> {
        if !(2..=16).contains(&m) {
            return Err(CodecError::InvalidParams("m out of range"));
        }
        if n != (1usize << m) - 1 {
            return Err(CodecError::InvalidParams(
                "classical code needs n = 2^m - 1",
            ));
        }
        if k == 0 || k >= n {
            return Err(CodecError::InvalidParams("need 0 < k < n"));
        }
        if !(n - k).is_multiple_of(2) {
            return Err(CodecError::InvalidParams(
                "redundancy must be even (n - k = 2t)",
            ));
        }
        Ok(ClassicCodeParams {
            m,
            n,
            k,
            t: (n - k) / 2,
        })
    }
}

/// Generator-polynomial systematic codec over the alpha-power point set.
pub struct ClassicCodec<'a> {
    ctx: &'a FieldContext,
    params: ClassicCodeParams,
    /// g(x) = prod_{i=1}^{2t} (x - alpha^i), ascending, monic of degree 2t.
    gen: Vec<FieldElement>,
    /// alpha^j for j < n.
    alpha_pow: Vec<FieldElement>,
}

impl<'a> ClassicCodec<'a> {
    pub fn new(
        ctx: &'a FieldContext,
        params: ClassicCodeParams,
    ) -> Result<ClassicCodec<'a>, CodecError> {
        if params.m != ctx.m() {
            return Err(CodecError::InvalidParams("field degree mismatch"));
        }
        let two_t = 2 * params.t;
        let mut gen = vec![FieldElement::ONE];
        for i in 1..=two_t {
            let root = ctx.exp(i);
            let mut next = vec![FieldElement::ZERO; gen.len() + 1];
            for (j, &c) in gen.iter().enumerate() {
                next[j + 1] = FieldElement(next[j + 1].0 ^ c.0);
                next[j] = FieldElement(next[j].0 ^ ctx.raw_mul(root, c).0);
            }
            gen = next;
        }
        let alpha_pow = (0..params.n).map(|j| ctx.exp(j)).collect();
        Ok(ClassicCodec {
            ctx,
            params,
            gen,
            alpha_pow,
        })
    }

    pub fn params(&self) -> &ClassicCodeParams {
        &self.params
    }

    /// Systematic encode: message at coefficients 2t..n, parity below.
    pub fn encode(
        &self,
        gf: &Field,
        msg: &[FieldElement],
    ) -> Result<Vec<FieldElement>, CodecError> {
        debug_assert!(std::ptr::eq(gf.ctx, self.ctx));
        let p = &self.params;
        if msg.len() != p.k {
            return Err(CodecError::LengthMismatch {
                expected: p.k,
                got: msg.len(),
            });
        }
        let two_t = 2 * p.t;
        // LFSR division of m(x) x^{2t} by g(x); feedback register holds the
        // running remainder
        let mut fb = vec![FieldElement::ZERO; two_t];
        for i in (0..p.k).rev() {
            let gate = gf.add(msg[i], fb[two_t - 1]);
            for j in (1..two_t).rev() {
                fb[j] = gf.add(fb[j - 1], gf.mul(gate, self.gen[j]));
            }
            fb[0] = gf.mul(gate, self.gen[0]);
        }
        let mut cw = fb;
        cw.extend_from_slice(msg);
        Ok(cw)
    }

    /// S_j = r(alpha^j) for j = 1..2t, each a full-length Horner pass.
    pub fn horner_syndromes(&self, gf: &Field, r: &[FieldElement]) -> Vec<FieldElement> {
        let p = &self.params;
        debug_assert_eq!(r.len(), p.n);
        (1..=2 * p.t)
            .map(|j| {
                let x = self.alpha_pow[j % p.n];
                let mut acc = FieldElement::ZERO;
                for &c in r.iter().rev() {
                    acc = gf.add(gf.mul(acc, x), c);
                }
                acc
            })
            .collect()
    }

    /// Reformulated inversionless key-equation solve: 2t iterations over a
    /// joint (3t+1)-cell array, discrepancy always at cell 0. Returns the
    /// locator (t+1 cells) and evaluator (t cells).
    pub fn ribm_solve(
        &self,
        gf: &Field,
        syndromes: &[FieldElement],
    ) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let t = self.params.t;
        let two_t = 2 * t;
        debug_assert_eq!(syndromes.len(), two_t);
        let cells = 3 * t + 1;
        let mut delta = vec![FieldElement::ZERO; cells + 1]; // sentinel top
        let mut theta = vec![FieldElement::ZERO; cells];
        delta[..two_t].copy_from_slice(syndromes);
        theta[..two_t].copy_from_slice(syndromes);
        delta[3 * t] = FieldElement::ONE;
        theta[3 * t] = FieldElement::ONE;
        let mut gamma = FieldElement::ONE;
        let mut kk: i32 = 0;

        let mut next = vec![FieldElement::ZERO; cells + 1];
        for _ in 0..two_t {
            let d0 = delta[0];
            for i in 0..cells {
                next[i] = gf.add(gf.mul(gamma, delta[i + 1]), gf.mul(d0, theta[i]));
            }
            next[cells] = FieldElement::ZERO;
            if !d0.is_zero() && kk >= 0 {
                theta[..cells].copy_from_slice(&delta[1..=cells]);
                gamma = d0;
                kk = -kk - 1;
            } else {
                kk += 1;
            }
            std::mem::swap(&mut delta, &mut next);
        }

        let lambda = delta[t..=2 * t].to_vec();
        let omega = delta[..t].to_vec();
        (lambda, omega)
    }

    /// Register-based exhaustive root search plus the error-value formula.
    /// A root at alpha^i locates an error at position (n - i) mod n.
    pub fn chien_forney(
        &self,
        gf: &Field,
        lambda: &[FieldElement],
        omega: &[FieldElement],
        received: &[FieldElement],
    ) -> Result<(Vec<FieldElement>, ErrorPattern), UncorrectableReason> {
        let p = &self.params;
        let t = p.t;
        let deg_lambda = match poly::degree(lambda) {
            Some(d) => d,
            None => return Err(UncorrectableReason::RootCountMismatch),
        };

        // Chien: registers reg[j] = lambda_j alpha^{ij} at step i
        let mut reg: Vec<FieldElement> = lambda.to_vec();
        reg.resize(t + 1, FieldElement::ZERO);
        let mut root_steps = Vec::new();
        for i in 0..p.n {
            let mut sum = FieldElement::ZERO;
            for r in reg.iter() {
                sum = gf.add(sum, *r);
            }
            if sum.is_zero() {
                root_steps.push(i);
            }
            for (j, r) in reg.iter_mut().enumerate() {
                *r = gf.mul(*r, self.alpha_pow[j]);
            }
        }
        if root_steps.len() != deg_lambda {
            return Err(UncorrectableReason::RootCountMismatch);
        }

        // The reformulated solver's evaluator is the quotient part of
        // lambda * S above x^{2t}, so the error value at a root x* = alpha^i
        // is e = Omega(x*) (x*)^{2t} / lambda'(x*); the power comes from the
        // stored exponent table.
        let lambda_deriv = poly::derivative(lambda);
        let mut corrected = received.to_vec();
        let mut errors: ErrorPattern = Vec::with_capacity(root_steps.len());
        for &i in &root_steps {
            let x = self.alpha_pow[i];
            let mut om = FieldElement::ZERO;
            for &c in omega.iter().rev() {
                om = gf.add(gf.mul(om, x), c);
            }
            let mut ld = FieldElement::ZERO;
            for &c in lambda_deriv.iter().rev() {
                ld = gf.add(gf.mul(ld, x), c);
            }
            let num = gf.mul(om, self.ctx.exp(2 * t * i));
            let e = match gf.div(num, ld) {
                Ok(e) => e,
                Err(_) => return Err(UncorrectableReason::DerivativeZero),
            };
            let pos = (p.n - i) % p.n;
            corrected[pos] = gf.add(corrected[pos], e);
            errors.push((pos, e));
        }
        errors.sort_unstable_by_key(|&(pos, _)| pos);
        Ok((corrected, errors))
    }

    /// Full conventional decode with per-stage counter deltas.
    pub fn decode(
        &self,
        gf: &Field,
        received: &[FieldElement],
    ) -> Result<(DecodeOutcome, StageTrace), CodecError> {
        let p = &self.params;
        if received.len() != p.n {
            return Err(CodecError::LengthMismatch {
                expected: p.n,
                got: received.len(),
            });
        }
        let mut trace = StageTrace::default();

        let s0 = gf.ops.snapshot();
        let syndromes = self.horner_syndromes(gf, received);
        trace.syndrome = gf.ops.snapshot().delta(s0);

        let s1 = gf.ops.snapshot();
        let (lambda, omega) = self.ribm_solve(gf, &syndromes);
        trace.key_equation = gf.ops.snapshot().delta(s1);

        let s2 = gf.ops.snapshot();
        let result = self.chien_forney(gf, &lambda, &omega, received);
        // the register sweep and the per-root work happen in one call; the
        // sweep cost is the fixed n(t+1) part, the rest is the error-value
        // stage
        let after = gf.ops.snapshot().delta(s2);
        let outcome = match result {
            Ok((corrected, errors)) => {
                let chien_ops = (p.n * (p.t + 1)) as u64;
                trace.chien = crate::gf::OpSnapshot {
                    mul: chien_ops,
                    add: chien_ops,
                    div: 0,
                };
                trace.forney = crate::gf::OpSnapshot {
                    mul: after.mul - chien_ops,
                    add: after.add - chien_ops,
                    div: after.div,
                };
                DecodeOutcome::Corrected {
                    codeword: corrected,
                    errors,
                }
            }
            Err(reason) => {
                trace.chien = after;
                DecodeOutcome::Uncorrectable(reason)
            }
        };
        Ok((outcome, trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{build_field, FieldContext, FieldSpec, OpCounter, OpSnapshot};
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn setup() -> FieldContext {
        build_field(FieldSpec::for_degree(8).unwrap()).unwrap()
    }

    fn codec(ctx: &FieldContext) -> ClassicCodec<'_> {
        ClassicCodec::new(ctx, ClassicCodeParams::new(8, 255, 223).unwrap()).unwrap()
    }

    #[test]
    fn zero_message_zero_codeword() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let cw = c.encode(&gf, &vec![FieldElement::ZERO; 223]).unwrap();
        assert!(cw.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn codeword_syndromes_vanish() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut rng = ChaCha12Rng::seed_from_u64(0xC0DE);
        let msg: Vec<FieldElement> = (0..223)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let cw = c.encode(&gf, &msg).unwrap();
        let s = c.horner_syndromes(&gf, &cw);
        assert!(s.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn single_error_syndromes_closed_form() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut r = vec![FieldElement::ZERO; 255];
        let (pos, e) = (37usize, FieldElement(0xA5));
        r[pos] = e;
        let s = c.horner_syndromes(&gf, &r);
        for (j, &sj) in s.iter().enumerate() {
            let want = ctx.raw_mul(e, ctx.exp((j + 1) * pos));
            assert_eq!(sj, want, "syndrome {}", j + 1);
        }
    }

    #[test]
    fn ribm_zero_syndromes_identity_locator() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let (lambda, omega) = c.ribm_solve(&gf, &[FieldElement::ZERO; 32]);
        assert_eq!(poly::degree(&lambda), Some(0));
        assert!(!lambda[0].is_zero());
        assert!(poly::degree(&omega).is_none());
    }

    #[test]
    fn ribm_single_error_locator() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut r = vec![FieldElement::ZERO; 255];
        let pos = 101usize;
        r[pos] = FieldElement(0x17);
        let s = c.horner_syndromes(&gf, &r);
        let (lambda, _) = c.ribm_solve(&gf, &s);
        assert_eq!(poly::degree(&lambda), Some(1));
        // root of lambda is alpha^{-pos}
        let root = ctx.raw_inv(ctx.exp(pos)).unwrap();
        assert!(poly::eval(&gf, &poly::trim(lambda), root).is_zero());
    }

    #[test]
    fn ribm_no_divisions() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut rng = ChaCha12Rng::seed_from_u64(0x1B4D);
        let s: Vec<FieldElement> = (0..32)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let before = ops.snapshot().div;
        let _ = c.ribm_solve(&gf, &s);
        assert_eq!(ops.snapshot().div, before);
    }

    #[test]
    fn roundtrip_with_errors() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut rng = ChaCha12Rng::seed_from_u64(0x20DE);
        let positions: Vec<usize> = (0..255).collect();
        for w in [0usize, 1, 8, 16] {
            for _ in 0..10 {
                let msg: Vec<FieldElement> = (0..223)
                    .map(|_| FieldElement(rng.gen_range(0..256)))
                    .collect();
                let cw = c.encode(&gf, &msg).unwrap();
                let mut r = cw.clone();
                let mut picks = positions.clone();
                picks.shuffle(&mut rng);
                let mut injected: ErrorPattern = Vec::new();
                for &pos in picks.iter().take(w) {
                    let e = FieldElement(rng.gen_range(1..256));
                    r[pos] = gf.add(r[pos], e);
                    injected.push((pos, e));
                }
                injected.sort_unstable_by_key(|&(pos, _)| pos);
                let (out, _) = c.decode(&gf, &r).unwrap();
                match out {
                    DecodeOutcome::Corrected { codeword, errors } => {
                        assert_eq!(codeword, cw, "w={}", w);
                        assert_eq!(errors, injected);
                    }
                    DecodeOutcome::Uncorrectable(reason) => panic!("w={}: {:?}", w, reason),
                }
            }
        }
    }

    #[test]
    fn stage_counts_match_reference_table() {
        let ctx = setup();
        let ops = OpCounter::new();
        let gf = Field::new(&ctx, &ops);
        let c = codec(&ctx);
        let mut rng = ChaCha12Rng::seed_from_u64(0x2B7);
        let msg: Vec<FieldElement> = (0..223)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let cw = c.encode(&gf, &msg).unwrap();
        let mut r = cw.clone();
        let mut picks: Vec<usize> = (0..255).collect();
        picks.shuffle(&mut rng);
        for &pos in picks.iter().take(16) {
            r[pos] = gf.add(r[pos], FieldElement(rng.gen_range(1..256)));
        }
        let (out, trace) = c.decode(&gf, &r).unwrap();
        assert!(out.is_corrected());
        assert_eq!(
            trace.syndrome,
            OpSnapshot {
                mul: 8160,
                add: 8160,
                div: 0
            }
        );
        assert_eq!(
            trace.key_equation,
            OpSnapshot {
                mul: 3136,
                add: 1568,
                div: 0
            }
        );
        assert_eq!(
            trace.chien,
            OpSnapshot {
                mul: 4335,
                add: 4335,
                div: 0
            }
        );
        assert_eq!(trace.derivative, OpSnapshot::default());
        assert_eq!(trace.forney.div, 16);
        // per-root evaluations land within the reference tolerance band
        assert!((trace.forney.mul as i64 - 544).unsigned_abs() * 100 <= 544 * 25);
        assert!((trace.forney.add as i64 - 528).unsigned_abs() * 100 <= 528 * 25);
    }
}
