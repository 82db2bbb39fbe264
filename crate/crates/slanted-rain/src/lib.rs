//! File formats, rendering and the command-line front end for
//! `slanted-rain-core`.

pub mod cert_json;
pub mod cli;
pub mod files;
pub mod known;
pub mod render;
