//! Command-line front end for the `turan3` library.

pub mod cli;
pub mod commands;
pub mod config;
pub mod verify;
