use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

/// Seventeen significant digits, which round-trip every `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn resolve(out_dir: &Path, explicit: Option<&Path>, default_name: &str) -> PathBuf {
    match explicit {
        Some(p) => p.to_path_buf(),
        None => out_dir.join(default_name),
    }
}

/// Writes a header row and records; `meta` becomes a leading `# ` line.
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I, meta: Option<&str>) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut sink = BufWriter::new(file);
    if let Some(meta) = meta {
        writeln!(sink, "# {meta}")?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
