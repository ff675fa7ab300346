//! Exact evaluation of the `ell`-part of the arithmetic intersection number
//! `(CM(K).G1)_ell` for primitive quartic CM fields `K = Q(sqrt D)(sqrt(A + B sqrt D))`,
//! by two independent formulas: one over the reflex field (`by_*`) and one
//! over imaginary quadratic orders (`lv_*`).
//!
//! ```
//! use cm_intersection::{build_cm_field, compare, FieldContext};
//!
//! let field = build_cm_field(5, -10, 4).unwrap();
//! let ctx = FieldContext::new(field).unwrap();
//! let report = compare(&ctx, 2).unwrap();
//! assert!(report.rows.is_empty());
//! ```

pub mod arith;
pub mod cm_field;
pub mod error;
pub mod formulas;
pub mod json;
pub mod oracle;
pub mod quad_order;
pub mod reflex;
pub mod scan;
pub mod verify;

pub use arith::{hilbert_symbol, kronecker, Place, Rational};
pub use cm_field::{build_cm_field, index_set, AssumptionReport, CmField, IndexData, RejectionReport};
pub use error::{Error, Result};
pub use formulas::{by_total, compare, lv_total, verify_lemmas, ComparisonReport, FieldContext};
pub use quad_order::{count_ideals_of_norm, QuadDiscriminant, SplitType};
pub use reflex::{ReflexField, ReflexIdeal, ReflexPrime};
