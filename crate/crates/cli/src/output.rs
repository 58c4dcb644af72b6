use std::io::Write;
use std::path::Path;

use crate::commands::Failure;

/// Writes `text` to `path` through a temporary file in the same directory,
/// or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| Failure::io(format!("stdout: {e}")));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| Failure::io(format!("cannot create a temporary file in {}: {e}", dir.display())))?;
    tmp.write_all(text.as_bytes())
        .and_then(|_| tmp.flush())
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    tmp.persist(path)
        .map_err(|e| Failure::io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}
