//! Exact invariants of lashing families of knots.
//!
//! The numeric modules are generic over [`scalar::Scalar`], any exact signed
//! integer type. The aliases below fix it to [`num_bigint::BigInt`].

pub mod braidkit;
pub mod contfrac;
pub mod error;
pub mod family;
pub mod matrix;
pub mod scalar;
pub mod surgdesc;
pub mod traintrack;
pub mod twistcalc;

pub use error::{Error, Result};

pub type Int = num_bigint::BigInt;
pub type Slope = contfrac::Slope<Int>;
pub type ContinuedFraction = contfrac::ContinuedFraction<Int>;
pub type CurveClass = twistcalc::CurveClass<Int>;
pub type TwistWord = twistcalc::TwistWord<Int>;
pub type IntersectionProfile = twistcalc::IntersectionProfile<Int>;
pub type LashingParams = traintrack::LashingParams<Int>;
pub type TrackWeights = traintrack::TrackWeights<Int>;
pub type IntMatrix = matrix::Matrix<Int>;
pub type RationalSurgeryDiagram = surgdesc::RationalSurgeryDiagram<Int>;
pub type AbelianGroup = surgdesc::AbelianGroup<Int>;
pub type DiagramParams = surgdesc::DiagramParams<Int>;
