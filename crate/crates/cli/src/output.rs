use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use thiserror::Error;

/// Directory for reports when `--output` is relative or absent.
pub const OUT_DIR_ENV: &str = "IDEALCOVER_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Engine(#[from] idealcover::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(e) if e.is_guard() => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Human => "txt",
            Format::Structured => "json",
            Format::Csv => "csv",
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Where a report goes: `--output` (relative paths resolved against
/// `$IDEALCOVER_OUT_DIR` when set), else `$IDEALCOVER_OUT_DIR/<stem>.<ext>`,
/// else stdout.
pub fn destination(
    output: Option<&Path>,
    out_dir: Option<&Path>,
    stem: &str,
    format: Format,
) -> Option<PathBuf> {
    match (output, out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(dir)) => Some(dir.join(format!("{stem}.{}", format.extension()))),
        (None, None) => None,
    }
}

pub fn emit(text: &str, target: Option<PathBuf>) -> Result<(), CliError> {
    let Some(path) = target else {
        print!("{text}");
        return Ok(());
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| CliError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(&path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

pub fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

pub fn rows_text(rows: &[Vec<u32>]) -> String {
    if rows.is_empty() {
        return "(zero)".into();
    }
    let parts: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
            )
        })
        .collect();
    parts.join(" ")
}

pub fn rows_csv(rows: &[Vec<u32>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(";")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn destinations() {
        let dir = Path::new("/tmp/reports");
        assert_eq!(destination(None, None, "cover", Format::Csv), None);
        assert_eq!(
            destination(None, Some(dir), "cover", Format::Csv),
            Some(PathBuf::from("/tmp/reports/cover.csv"))
        );
        assert_eq!(
            destination(
                Some(Path::new("a.json")),
                Some(dir),
                "cover",
                Format::Structured
            ),
            Some(PathBuf::from("/tmp/reports/a.json"))
        );
        assert_eq!(
            destination(
                Some(Path::new("/x/a.json")),
                Some(dir),
                "cover",
                Format::Structured
            ),
            Some(PathBuf::from("/x/a.json"))
        );
    }

    #[test]
    fn row_rendering() {
        assert_eq!(rows_text(&[]), "(zero)");
        assert_eq!(rows_text(&[vec![1, 0], vec![0, 1]]), "[1 0] [0 1]");
        assert_eq!(rows_csv(&[vec![1, 0], vec![0, 1]]), "1 0;0 1");
    }
}
