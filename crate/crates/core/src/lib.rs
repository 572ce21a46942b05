//! Exact decision procedures for tiling and spectral properties of finite
//! sets `A ⊂ Z≥0`: cyclotomic divisors of the mask polynomial, the
//! Coven-Meyerowitz conditions (T1)/(T2), tiling certificates, and rational
//! spectra.
//!
//! ```
//! use spectile::{construct_spectrum, profile, tiles_z, TileSet};
//!
//! let a = TileSet::new(vec![0, 1, 6, 7]).unwrap();
//! let p = profile(&a);
//! assert_eq!(p.divisors, vec![2, 4, 12]);
//! assert!(p.t1 && p.t2);
//! let cert = tiles_z(&a, 64).unwrap().certificate().unwrap().clone();
//! assert_eq!((cert.period, cert.complement), (4, vec![0]));
//! assert_eq!(construct_spectrum(&a).unwrap().to_string(), "{0, 1/4, 1/2, 3/4}");
//! ```

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod intpoly;
pub mod rational;
pub mod spectrum;
pub mod tiling;

pub use cyclotomic::{cyclo_at_one, cyclotomic, cyclotomic_divisors, is_root, profile, CycloCache, CycloProfile};
pub use error::{Error, Result};
pub use intpoly::{mask_poly, poly_divrem, poly_mod_cyclic, poly_mul, IntPoly, TileSet};
pub use rational::Reduced;
pub use spectrum::{
    all_spectra, chi_hat, chi_hat_rational, construct_spectrum, hadamard_check, is_spectrum,
    prime_power_spectrum_check, progression_spectrum, spectrum_search, spectrum_search_capped,
    unit_fraction_order, verify_spectrum, PrimePowerReport, PrimePowerViolation, Spectrum,
    VerifyFailure,
};
pub use tiling::{
    find_complement, is_fundamental_domain, progression_form, tiles_z, TilingCertificate,
    TilingReason, TilingStatus, TilingVerdict,
};
