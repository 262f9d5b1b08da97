//! Reed-Solomon codec over GF(2^m) built on an additive FFT.
//!
//! The decoder pipeline is syndrome computation by block inverse transforms,
//! a module-theoretic key-equation solver (an iterative frequency-domain
//! form for short codes and a divide-and-conquer form for long ones), root
//! finding by coset transforms, and an evaluation-formula error-value step.
//! A conventional Horner/RiBM/Chien/Forney decoder is included as the
//! operation-count baseline, and all field arithmetic is instrumented so the
//! per-stage costs can be measured exactly and compared.
//!
//! ```
//! use rsfc::basis::{build_basis, polynomial_basis};
//! use rsfc::codec::{CodeParams, Codec, DecodeOutcome, Solver};
//! use rsfc::gf::{build_field, Field, FieldElement, FieldSpec, OpCounter};
//!
//! let ctx = build_field(FieldSpec::for_degree(8).unwrap()).unwrap();
//! let basis = build_basis(&ctx, &polynomial_basis(&ctx)).unwrap();
//! let codec = Codec::new(&ctx, &basis, CodeParams::new(8, 255, 223).unwrap()).unwrap();
//!
//! let ops = OpCounter::new();
//! let gf = Field::new(&ctx, &ops);
//! let message: Vec<FieldElement> = (0..223).map(|i| FieldElement(i as u16)).collect();
//! let codeword = codec.encode(&gf, &message).unwrap();
//!
//! // flip 16 symbols (t = 16 for this code)
//! let mut received = codeword.clone();
//! for i in 0..16 {
//!     received[i * 15].0 ^= 0xA5;
//! }
//!
//! let (outcome, trace) = codec.decode(&gf, &received, Solver::Fma).unwrap();
//! match outcome {
//!     DecodeOutcome::Corrected { codeword: fixed, errors } => {
//!         assert_eq!(fixed, codeword);
//!         assert_eq!(errors.len(), 16);
//!     }
//!     DecodeOutcome::Uncorrectable(reason) => panic!("{:?}", reason),
//! }
//! // per-stage field-operation counts ride along with every decode
//! assert_eq!(trace.key_equation.div, 0);
//! ```
//!
//! Crate layout:
//! - [`gf`]: instrumented GF(2^m) arithmetic (exp/log tables, op counters);
//! - [`basis`]: point enumeration, subspace polynomials, the degree-graded
//!   polynomial basis and its evaluation tables;
//! - [`transforms`]: forward/inverse transforms plus the partial and
//!   extended interpolation variants;
//! - [`keysolver`]: the key-equation solvers and their rank bookkeeping;
//! - [`codec`]: systematic encode/decode for power-of-two redundancy and
//!   arbitrary (n, k);
//! - [`baseline`]: the conventional syndrome-based decoder;
//! - [`bench`](mod@crate::bench): per-stage operation accounting and report formatting;
//! - [`io`]: the symbol file format shared by the CLI tools.

pub mod baseline;
pub mod basis;
pub mod bench;
pub mod codec;
pub mod gf;
pub mod io;
pub mod keysolver;
pub mod poly;
pub mod transforms;
