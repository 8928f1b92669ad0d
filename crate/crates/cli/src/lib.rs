//! Front end for the `parikh` command: the input language, command
//! dispatch and report rendering.

pub mod commands;
pub mod report;
pub mod syntax;
