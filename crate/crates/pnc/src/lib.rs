//! Optimal complex linear physical-layer network coding over the
//! Gaussian-integer residue fields Z[i]/q.
//!
//! The crate enumerates the difference pairs of a residue-field
//! constellation, finds the zero-`l_min` channel gains, partitions the gain
//! plane into weighted Voronoi cells and reads the optimal NC mapping and
//! its `d_min` off that partition. Every closed form has a brute-force
//! counterpart alongside it.
//!
//! ```
//! use pnc::{gaussint::GInt, residue::ResidueField, diffs::DiffSets, metrics};
//! let field = ResidueField::new(GInt::new(3, 0)).unwrap();
//! let sets = DiffSets::new(&field);
//! let (lmin, argmin) = metrics::l_min(num_complex::Complex64::new(1.0, 1.0), &sets);
//! assert_eq!(lmin, 0.0);
//! assert_eq!((argmin.da, argmin.db), (GInt::new(1, 0), GInt::new(-1, -1)));
//! ```

pub mod diffs;
pub mod error;
pub mod gaussint;
pub mod mapping;
pub mod metrics;
pub mod residue;
pub mod sim;
pub mod verify;
pub mod voronoi;

pub use error::{PncError, Result};
pub use gaussint::GInt;
pub use residue::ResidueField;
