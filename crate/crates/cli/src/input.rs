//! Input plumbing: matrix arguments, source selectors, and the optional
//! sieve cache controlled by `APSOLVE_SOURCE_CACHE`.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use apsolve_core::set_sources::{FileSource, PrimeSource, SetSource, StridedSource};
use apsolve_core::IntegerMatrix;
use num_bigint::BigInt;

use crate::CliError;

/// Load a matrix from a file path, or parse it inline when the argument
/// starts with `[`, as in `[[1,1,-2]]`.
pub fn load_matrix(arg: &str) -> Result<IntegerMatrix, CliError> {
    if arg.trim_start().starts_with('[') {
        parse_inline(arg)
    } else {
        let text = fs::read_to_string(arg)
            .map_err(|e| CliError::validation(format!("cannot read matrix file `{arg}`: {e}")))?;
        IntegerMatrix::parse_text(&text)
            .map_err(|e| CliError::validation(format!("{arg}: {e}")))
    }
}

fn parse_inline(arg: &str) -> Result<IntegerMatrix, CliError> {
    let compact: String = arg.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("[[")
        .and_then(|rest| rest.strip_suffix("]]"))
        .ok_or_else(|| CliError::validation("inline matrix must look like [[1,2],[3,4]]"))?;
    let mut rows = Vec::new();
    for row_text in inner.split("],[") {
        let mut row = Vec::new();
        for token in row_text.split(',') {
            let entry = BigInt::from_str(token)
                .map_err(|_| CliError::validation(format!("inline matrix: bad entry `{token}`")))?;
            row.push(entry);
        }
        rows.push(row);
    }
    IntegerMatrix::from_rows(rows).map_err(|e| CliError::validation(e.to_string()))
}

/// Resolve a `--source` selector: `primes`, `naturals`, `multiples:M`, or
/// `file:PATH`. The bound sizes the initial sieve for the primes source.
pub fn resolve_source(selector: &str, bound: u64) -> Result<Box<dyn SetSource>, CliError> {
    match selector {
        "primes" => Ok(Box::new(primes_with_cache(bound)?)),
        "naturals" => Ok(Box::new(StridedSource::naturals())),
        _ => {
            if let Some(text) = selector.strip_prefix("multiples:") {
                let modulus: u64 = text.parse().map_err(|_| {
                    CliError::validation(format!("bad multiples selector `{selector}`"))
                })?;
                let source = StridedSource::multiples(modulus)
                    .map_err(|e| CliError::validation(e.to_string()))?;
                return Ok(Box::new(source));
            }
            if let Some(path) = selector.strip_prefix("file:") {
                let source = FileSource::from_path(Path::new(path))
                    .map_err(|e| CliError::validation(e.to_string()))?;
                return Ok(Box::new(source));
            }
            Err(CliError::validation(format!(
                "unknown source `{selector}`; expected primes, naturals, multiples:M, or file:PATH"
            )))
        }
    }
}

const SIEVE_MAGIC: &[u8; 8] = b"APSIEVE1";

// The cache never changes observable behavior: a hit and a fresh sieve
// produce the same source, and every failure falls back to sieving with a
// warning on the error stream.
fn primes_with_cache(bound: u64) -> Result<PrimeSource, CliError> {
    let Some(dir) = std::env::var_os("APSOLVE_SOURCE_CACHE") else {
        return PrimeSource::with_bound(bound).map_err(|e| CliError::validation(e.to_string()));
    };
    let path = PathBuf::from(&dir).join(format!("primes-{bound}.sieve"));
    if let Some(source) = try_load_sieve(&path, bound) {
        return Ok(source);
    }
    let source =
        PrimeSource::with_bound(bound).map_err(|e| CliError::validation(e.to_string()))?;
    if let Err(e) = save_sieve(&path, &source) {
        eprintln!("warning: cannot write sieve cache {}: {e}", path.display());
    }
    Ok(source)
}

fn try_load_sieve(path: &Path, bound: u64) -> Option<PrimeSource> {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
        Err(e) => {
            eprintln!("warning: cannot read sieve cache {}: {e}", path.display());
            return None;
        }
    };
    match decode_sieve(&bytes, bound) {
        Ok(source) => Some(source),
        Err(message) => {
            eprintln!("warning: ignoring sieve cache {}: {message}", path.display());
            None
        }
    }
}

fn decode_sieve(bytes: &[u8], bound: u64) -> Result<PrimeSource, String> {
    if bytes.len() < 16 || &bytes[..8] != SIEVE_MAGIC {
        return Err("bad header".to_string());
    }
    let stored = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    if stored != bound {
        return Err(format!("cached bound {stored} does not match requested {bound}"));
    }
    let body = &bytes[16..];
    if !body.len().is_multiple_of(8) {
        return Err("truncated word data".to_string());
    }
    let words: Vec<u64> =
        body.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
    PrimeSource::from_bitmap(bound, words).map_err(|e| e.to_string())
}

fn save_sieve(path: &Path, source: &PrimeSource) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let (bound, words) = source.bitmap();
    let mut bytes = Vec::with_capacity(16 + words.len() * 8);
    bytes.extend_from_slice(SIEVE_MAGIC);
    bytes.extend_from_slice(&bound.to_le_bytes());
    for word in &words {
        bytes.extend_from_slice(&word.to_le_bytes());
    }
    fs::write(path, bytes)
}

/// Parse the `--after A,D` resume point.
pub fn parse_after(arg: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::validation(format!("bad --after value `{arg}`; expected A,D"));
    let (a, d) = arg.split_once(',').ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let d = d.trim().parse().map_err(|_| bad())?;
    Ok((a, d))
}
