//! Worked examples, a small scripting language and the report driver on top
//! of `chernlab_core`.

pub mod dsl;
pub mod instances;
pub mod report;
pub mod session;

pub use dsl::{parse, FieldChoice, ParseError, SessionScript};
pub use instances::LabInstance;
pub use report::{ReportBundle, ResultEntry};
pub use session::{run_demo, run_instance, run_session, RunOptions, SessionOutcome, Status};
