//! Serde adapters writing rationals as `{"num": .., "den": ..}`.

use serde::{Serialize, Serializer};

use crate::arith::Rational;

#[derive(Serialize)]
struct Repr {
    num: i64,
    den: i64,
}

impl From<&Rational> for Repr {
    fn from(q: &Rational) -> Self {
        Repr {
            num: *q.numer(),
            den: *q.denom(),
        }
    }
}

/// Version tag carried by every emitted record.
pub const SCHEMA_VERSION: u32 = 1;

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        Repr::from(q).serialize(s)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(Repr::from).serialize(s)
    }
}

/// `{"num": .., "den": ..}` for a rational, as a JSON value.
pub fn rational_value(q: &Rational) -> serde_json::Value {
    serde_json::json!({ "num": q.numer(), "den": q.denom() })
}
