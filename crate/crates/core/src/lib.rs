//! Identification of target operations from registration logs.
//!
//! An operation log lists input and output products with unit cost
//! estimates and the times at which quantities crossed the system boundary.
//! From it the crate builds the cost threads (`ire`, `ipe`), the
//! single-threaded model `ice = ire + ipe`, its tight-resource and target
//! parts (`ibe`, `ide`) and their integral functions, and determines:
//!
//! * the start `t_s` and physical completion `t_f` of the operation;
//! * the time of actual completion `t_a`, when the target thread has
//!   compensated the tight-resource thread, both numerically (exact
//!   intersection of integral functions) and analytically;
//! * the basic indicators `RE`, `PE`, added value and conditional return.
//!
//! ```
//! use taco_core::signal::{ChannelSpec, OperationRecord, RegistrationEvent};
//! use taco_core::indicators::assemble_report;
//!
//! let record = OperationRecord::new(
//!     vec![ChannelSpec::input("ore", 1.0), ChannelSpec::output("metal", 1.0)],
//!     vec![
//!         RegistrationEvent::new(2.0, "ore", 2.0),
//!         RegistrationEvent::new(8.0, "metal", 3.0),
//!     ],
//! )
//! .unwrap();
//! let report = assemble_report(&record).unwrap();
//! assert_eq!(report.t_a_numeric, Some(20.0));
//! assert_eq!(report.t_a_analytic, Some(20.0));
//! ```

pub mod check;
pub mod completion;
pub mod error;
pub mod exact;
pub mod indicators;
pub mod io;
pub mod signal;
pub mod thread;

pub use completion::{
    linearize, physical_completion, start_time, taco_analytic, taco_numeric, taco_reduced,
    LinearizedPair, OperationBounds, TacoResult,
};
pub use error::{Error, Result};
pub use indicators::{analyze, assemble_report, economic_cost, economic_income, Analysis, IndicatorReport};
pub use signal::{
    cost_impulses, reserve_impulses, validate_record, ChannelSpec, Impulse, ImpulseTrain,
    OperationRecord, RegistrationEvent, Role,
};
pub use thread::{add, cumulate, integrate, split_signs, OperationThreads, PiecewiseLinear, StepFunction};
