//! Colouring specs backed by the filesystem.

use std::fs;
use std::path::PathBuf;

use slanted_rain_core::coloring::{parse_spec_with, SourceLoader, SpecError};
use slanted_rain_core::ColoringSpec;

/// Reads table and rules files, resolving relative paths against `base`.
#[derive(Clone, Debug, Default)]
pub struct FsLoader {
    pub base: Option<PathBuf>,
}

impl FsLoader {
    pub fn relative_to(base: impl Into<PathBuf>) -> Self {
        FsLoader { base: Some(base.into()) }
    }
}

impl SourceLoader for FsLoader {
    fn load(&self, path: &str) -> Result<String, String> {
        let full = match &self.base {
            Some(base) => base.join(path),
            None => PathBuf::from(path),
        };
        fs::read_to_string(&full).map_err(|e| format!("cannot read {}: {e}", full.display()))
    }
}

/// Parses a spec string, reading any referenced file relative to the
/// working directory.
pub fn load_spec(text: &str) -> Result<ColoringSpec, SpecError> {
    parse_spec_with(text, &FsLoader::default())
}
