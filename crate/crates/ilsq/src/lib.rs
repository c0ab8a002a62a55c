//! Solvers for mixed real/integer least-squares problems of the carrier
//! phase ambiguity type.
//!
//! The pipeline reduces a mixed linear model to a standard integer
//! least-squares problem, decorrelates its weight matrix with a unimodular
//! transform, and fixes the integers either with a one-step
//! minimum-diagonal-pivot sequential rounding ([`pivot`]) or exactly over a
//! box through a 0-1 linear program ([`ilp`]). A brute-force enumeration
//! oracle ([`oracle`]) supplies ground truth on small instances.
//!
//! ```
//! use ilsq::linalg::Mat;
//! use ilsq::model::IntegerLsProblem;
//! use ilsq::pivot::solve_pivot;
//!
//! let h = Mat::from_rows(vec![vec![4.0, 1.2], vec![1.2, 1.0]]).unwrap();
//! let problem = IntegerLsProblem::new(h, vec![2.2, 0.7], 0.0).unwrap();
//! let fixed = solve_pivot(&problem, true).unwrap();
//! assert_eq!(fixed.z_int, vec![2, 1]);
//! ```

pub mod decorrelate;
mod error;
pub mod ilp;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod pivot;

pub use error::Error;

#[cfg(test)]
mod tests {
    // Every value type is immutable after construction and may be shared
    // or sent across threads.
    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::model::MixedModel>();
        check::<crate::model::IntegerLsProblem>();
        check::<crate::model::MixedSolution>();
        check::<crate::decorrelate::UnimodularMap>();
        check::<crate::decorrelate::DecorrelatedProblem>();
        check::<crate::pivot::PivotedFactor>();
        check::<crate::ilp::SearchBox>();
        check::<crate::ilp::BinaryEncoding>();
        check::<crate::ilp::Ilp01>();
        check::<crate::oracle::OracleResult>();
        check::<crate::Error>();
    }
}
