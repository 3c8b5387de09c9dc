//! Exact noncommutative geometry of the real quantum plane: the frame
//! calculus, flip and metric conditions, connections and curvature, metric
//! solving, the jordanian limit and a numeric representation.

pub mod conditions;
pub mod field;
pub mod forms;
pub mod geometry;
pub mod jordan;
pub mod ncpoly;
pub mod rep;
pub mod scalars;
pub mod solver;
pub mod tensor;

pub use conditions::{Checker, Condition, ConditionKind, ConditionReport, Flip, Metric};
pub use field::{Field, GaussRat};
pub use forms::{Calculus, OneForm, TwoForm};
pub use geometry::{GeometryError, SolutionEntry, SolutionName};
pub use ncpoly::{NCElement, NcPoly, Presentation, PresentationKind, StarConvention};
pub use scalars::{ScalarError, ScalarExpr, UnitEval, Var};
pub use tensor::Mat;

/// Numeric checks in double precision.
pub type Checker64 = Checker<num_complex::Complex64>;
