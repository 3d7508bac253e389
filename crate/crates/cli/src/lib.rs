//! Command-line front end for `chanforms`: channel documents in, reports and
//! converted representations out.

pub mod document;
pub mod json;
pub mod render;
pub mod report;
pub mod run;
pub mod wire;

pub use document::{parse_channel_document, ChannelDocument, ChannelPayload, ParseError};
pub use report::{parse_machine_report, parse_representation, MachineReport, Representation};
pub use run::{CliError, ExitStatus, OutputMode, Overrides};
