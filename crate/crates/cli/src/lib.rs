//! Command-line front end for the `tambara` engine: the JSON workspace
//! format, the verification suites, and report emission.

pub mod emit;
pub mod lang;
pub mod suite;
pub mod workspace;

pub use emit::{Artifact, FrameArtifact, HasseDot, IdealsArtifact, ReportDoc, RunReport, SpectrumArtifact};
pub use suite::{execute, execute_workspace, Plan, Run, RunError, Scope, Suite};
pub use workspace::{export_functor, load_workspace, parse_workspace, LoadError, Workspace, WorkspaceDocument};
