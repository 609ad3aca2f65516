//! Command line and HTTP front end for `untangle-core`.

pub mod api;
pub mod cli;
pub mod registry;
pub mod server;
