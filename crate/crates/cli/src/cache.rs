//! On-disk engine cache keyed by `(r, s, field spec, code version)`.

use std::fs;
use std::path::{Path, PathBuf};

use qwb::engine::{Engine, EngineExport, EXPORT_VERSION};
use qwb::field::Field;

use crate::CliError;

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    fn path(dir: &Path, r: usize, s: usize, field: &Field) -> PathBuf {
        let tag: String = field
            .spec()
            .to_string()
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        dir.join(format!(
            "b{r}-{s}_{tag}_v{EXPORT_VERSION}-{}.json",
            env!("CARGO_PKG_VERSION")
        ))
    }

    /// Loads a cached engine or builds one and stores it. A cache file that
    /// fails to parse or does not match the request is rebuilt.
    pub fn engine(
        &self,
        r: usize,
        s: usize,
        field: &Field,
        bound: Option<usize>,
    ) -> Result<Engine, CliError> {
        let Some(dir) = &self.dir else {
            return Ok(Engine::build_with_bound(r, s, field.clone(), bound)?);
        };
        let path = Self::path(dir, r, s, field);
        if let Some(e) = Self::load(&path, r, s, field) {
            return Ok(e);
        }
        let e = Engine::build_with_bound(r, s, field.clone(), bound)?;
        fs::create_dir_all(dir).map_err(|err| CliError::Io(dir.display().to_string(), err))?;
        let json = serde_json::to_string(&e.export()).expect("export serializes");
        fs::write(&path, json).map_err(|err| CliError::Io(path.display().to_string(), err))?;
        Ok(e)
    }

    fn load(path: &Path, r: usize, s: usize, field: &Field) -> Option<Engine> {
        let text = fs::read_to_string(path).ok()?;
        let ex: EngineExport = serde_json::from_str(&text).ok()?;
        if ex.r != r
            || ex.s != s
            || &ex.field != field.spec()
            || ex.code_version != env!("CARGO_PKG_VERSION")
        {
            return None;
        }
        Engine::from_export(&ex).ok()
    }
}
