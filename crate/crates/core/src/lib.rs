//! Wyner-Ziv coding in the real field with BCH-DFT codes.
//!
//! A real `(n, k)` DFT code compresses a continuous-valued source block
//! either to its syndrome or to the parity samples of a systematic
//! codeword. The decoder treats the correlated side information as a noisy
//! copy of the source and corrects it with a syndrome decoder that tolerates
//! quantization noise: eigenvalue-based error counting, PGZ or subspace
//! (MUSIC) error localization, and least-squares magnitudes.
//!
//! ```
//! use wzdft::{codec, make_code, Localizer, QuantizerSpec};
//!
//! let code = make_code(7, 5)?;
//! let x = [0.2, 0.5, 0.7, 0.6, 0.3, -0.1, -0.4];
//! let mut y = x;
//! y[4] += 1.0; // one large correlation error
//!
//! let q = QuantizerSpec::default();
//! let sent = codec::wz_syndrome_encode(&code, &x, Some(&q))?;
//! assert_eq!(sent.values.len(), 2);
//!
//! let out = codec::wz_syndrome_decode(&code, &sent, &y, 1.4e-3, Localizer::Music)?;
//! assert_eq!(out.estimate.locations, vec![4]);
//! assert!((out.x_hat[4] - x[4]).abs() < 0.1);
//! # Ok::<(), wzdft::Error>(())
//! ```

pub mod channel;
pub mod codec;
pub mod decoder;
pub mod dft_code;
pub mod error;
pub mod harness;
pub mod numerics;
pub mod quantizer;
pub mod source;

pub use decoder::{ErrorEstimate, Localizer};
pub use dft_code::{best_systematic, make_code, make_systematic, CodeParams, DftCode, Syndrome, SystematicDftCode};
pub use error::{Error, Result};
pub use quantizer::QuantizerSpec;
pub use source::SourceSpec;

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/wyner_ziv.md")]
    mod wyner_ziv {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/jscc.md")]
    mod jscc {}
    #[doc = include_str!("../../../book/src/simulator.md")]
    mod simulator {}
}
