use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use svc_core::dsl::parse_located;
use svc_core::{validate, AliasMap, BusinessModel, MergeError, QueryError};
use thiserror::Error;

/// Failures that end a command. Domain errors exit 1, I/O errors exit 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Write(io::Error),
    /// Diagnostics were already printed.
    #[error("{0} problem(s) found")]
    Invalid(usize),
    #[error(transparent)]
    Merge(#[from] MergeError),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Write(_) => 2,
            _ => 1,
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Files named on the command line; directories contribute their `*.svc`
/// files in name order.
pub fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CliError> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let entries = fs::read_dir(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let mut files = Vec::new();
            for entry in entries {
                let entry = entry.map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                let p = entry.path();
                if p.extension().is_some_and(|e| e == "svc") && p.is_file() {
                    files.push(p);
                }
            }
            files.sort();
            out.extend(files);
        } else {
            out.push(path.clone());
        }
    }
    Ok(out)
}

/// Parse and validate one file, printing every problem as
/// `file:line:col: CODE: message`. Returns the problem count with the models.
pub fn check_file(path: &Path, text: &str) -> (Vec<BusinessModel>, usize) {
    let located = match parse_located(text) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            return (Vec::new(), 1);
        }
    };
    let mut problems = 0;
    let mut models = Vec::with_capacity(located.len());
    for (model, map) in located {
        for d in validate(&model) {
            let (line, col) = map.locate(&d.element);
            eprintln!("{}:{line}:{col}: {}: {}", path.display(), d.code, d.message);
            problems += 1;
        }
        models.push(model);
    }
    (models, problems)
}

/// All models from all files. Any parse or validation problem is an error,
/// reported after every file has been checked.
pub fn corpus(paths: &[PathBuf]) -> Result<Vec<BusinessModel>, CliError> {
    let mut models = Vec::new();
    let mut problems = 0;
    for path in expand(paths)? {
        let text = read(&path)?;
        let (m, p) = check_file(&path, &text);
        problems += p;
        models.extend(m);
    }
    if problems > 0 {
        return Err(CliError::Invalid(problems));
    }
    Ok(models)
}

pub fn aliases(path: Option<&Path>) -> Result<Option<AliasMap>, CliError> {
    let Some(path) = path else {
        return Ok(None);
    };
    let text = read(path)?;
    AliasMap::parse(&text)
        .map(Some)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}
