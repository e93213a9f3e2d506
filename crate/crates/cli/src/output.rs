use crate::{CliError, CliResult};
use serde_json::Value;
use std::path::{Path, PathBuf};
use susyqm::io::{canonical_json, csv_string, field_csv_string};
use susyqm::numcore::SampledFunction;
use susyqm::report::Check;
use susyqm::susy2d::Field2D;

/// Output directory plus the list of files written so far.
pub struct Sink {
    dir: PathBuf,
    files: Vec<String>,
}

impl Sink {
    pub fn new(dir: &Path) -> CliResult<Self> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Output { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    fn write(&mut self, name: &str, text: &str) -> CliResult<()> {
        let path = self.dir.join(name);
        std::fs::write(&path, text).map_err(|source| CliError::Output { path, source })?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn csv(&mut self, name: &str, f: &SampledFunction) -> CliResult<()> {
        self.write(name, &csv_string(f))
    }

    pub fn field(&mut self, name: &str, f: &Field2D) -> CliResult<()> {
        self.write(name, &field_csv_string(f))
    }

    /// Adds `files`, `checks` and `overall` to `report`, writes it as
    /// `<name>`, and prints it or a summary. Returns the overall flag.
    pub fn finish(mut self, name: &str, mut report: Value, checks: &[Check], json: bool) -> CliResult<bool> {
        let overall = checks.iter().all(|c| c.pass);
        let mut files = self.files.clone();
        files.push(name.to_string());
        files.sort();
        if let Value::Object(m) = &mut report {
            m.insert("files".into(), Value::from(files));
            m.insert("checks".into(), Value::Array(checks.iter().map(Check::to_json).collect()));
            m.insert("overall".into(), Value::Bool(overall));
        }
        let text = canonical_json(&report);
        self.write(name, &text)?;
        if json {
            print!("{text}");
        } else {
            for c in checks.iter().filter(|c| !c.pass) {
                println!("{}", c.summary());
            }
            let passed = checks.iter().filter(|c| c.pass).count();
            println!("{passed}/{} checks passed; {} file(s) in {}", checks.len(), self.files.len(), self.dir.display());
        }
        Ok(overall)
    }
}
