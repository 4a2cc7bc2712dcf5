//! Specht ideals, their varieties and their graded invariants.

pub mod betti;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod shapes;
pub mod specht;
pub mod variety;

pub use betti::{BettiTable, CmVerdict};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use ideal::{IdealKind, IdealSpec, QuotientComponent};
pub use linalg::{echelon_span, intersect_spans, GradedBasis};
pub use poly::{Monomial, Polynomial};
pub use shapes::{LetterOrder, Partition, ShapeClass, Tableau};
pub use specht::{Frame, MembershipCertificate, SpechtSystem};
pub use variety::{HeightPurity, SetPartition};
