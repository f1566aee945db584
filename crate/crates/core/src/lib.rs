//! Groupoid-graded skewfields, groupoid valuation rings and their value
//! groupoids, computed in exact arithmetic.

pub mod algebra;
pub mod ext;
pub mod groupoid;
pub mod par;
pub mod pattern;
pub mod scalar;
pub mod scenario;
pub mod value;

pub use algebra::{AlgebraError, GSkewfield, GradedElement, Twist};
pub use ext::Ext;
pub use pattern::{BoundPattern, PatternError, PatternKind, Side};
pub use groupoid::{ConnectedPartition, FiniteGroup, Groupoid, GroupoidError, GroupoidOrder};
pub use scalar::{FieldAutomorphism, FieldDescriptor, FieldKind, Scalar, ScalarError, Valuation};
pub use value::{GammaValue, OmegaClass, ValuationMachinery, ValueError};
pub use scenario::{run_checks, CheckOptions, CheckStatus, Report, Scenario, ScenarioError};
