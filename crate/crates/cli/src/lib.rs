//! Library surface of the scenario runner, shared by the binary and the
//! acceptance suite.

pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{run_command, Command, CommandError, Context};
pub use report::{Report, ReportStatus};
pub use scenario::{parse_scenario, RawScenario, Scenario, ScenarioError};
