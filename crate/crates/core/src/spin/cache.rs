//! On-disk cache of generator matrices, one file per `n`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{SignedPerm, SpinRep};
use crate::error::SpinError;
use crate::rational::Rational;

pub const CACHE_CONVENTION: &str = "e²=−1, ν=+1 for n≡3(4)";
const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "SPINHOL_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    n: usize,
    convention: String,
    dim_s: usize,
    /// Row-major entries of each generator as rational strings.
    generators: Vec<Vec<String>>,
}

/// `$SPINHOL_CACHE_DIR` if set, otherwise `spinhol` under the user cache root.
pub fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(dir));
    }
    dirs::cache_dir().map(|d| d.join("spinhol"))
}

fn file_name(n: usize) -> String {
    format!("spinrep-n{n}-v{CACHE_VERSION}.json")
}

fn encode(rep: &SpinRep) -> CacheFile {
    CacheFile {
        version: CACHE_VERSION,
        n: rep.n(),
        convention: CACHE_CONVENTION.to_string(),
        dim_s: rep.dim_s(),
        generators: rep.generator_matrices().iter().map(|m| m.data().iter().map(|x| x.to_string()).collect()).collect(),
    }
}

fn decode(file: &CacheFile, n: usize) -> Result<SpinRep, SpinError> {
    if file.version != CACHE_VERSION || file.n != n || file.convention != CACHE_CONVENTION {
        return Err(SpinError::Cache("header does not match".into()));
    }
    let d = file.dim_s;
    let gens = file
        .generators
        .iter()
        .map(|entries| {
            if entries.len() != d * d {
                return Err(SpinError::Cache("generator has wrong size".into()));
            }
            let mut perm = vec![usize::MAX; d];
            let mut sign = vec![0i8; d];
            for (idx, e) in entries.iter().enumerate() {
                let v: Rational = e.parse().map_err(|_| SpinError::Cache(format!("bad entry {e}")))?;
                let (r, c) = (idx / d, idx % d);
                if v.is_zero() {
                    continue;
                }
                let s = if v == Rational::one() {
                    1
                } else if v == -Rational::one() {
                    -1
                } else {
                    return Err(SpinError::Cache("generator is not a signed permutation".into()));
                };
                if perm[c] != usize::MAX {
                    return Err(SpinError::Cache("generator is not a signed permutation".into()));
                }
                perm[c] = r;
                sign[c] = s;
            }
            if perm.contains(&usize::MAX) {
                return Err(SpinError::Cache("generator is singular".into()));
            }
            Ok(SignedPerm { perm, sign })
        })
        .collect::<Result<Vec<_>, _>>()?;
    SpinRep::from_generators(n, gens)
}

impl SpinRep {
    /// Reads the cached representation from `dir`, or builds it and writes
    /// the cache file (temp file + rename, so readers never see a partial file).
    /// A cache file that fails validation is rebuilt and replaced.
    pub fn load_or_build(n: usize, dir: &Path) -> Result<SpinRep, SpinError> {
        let path = dir.join(file_name(n));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
                if let Ok(rep) = decode(&file, n) {
                    return Ok(rep);
                }
            }
        }
        let rep = SpinRep::build(n)?;
        let io = |e: std::io::Error| SpinError::Cache(e.to_string());
        fs::create_dir_all(dir).map_err(io)?;
        let text = serde_json::to_string_pretty(&encode(&rep)).expect("cache serializes");
        let tmp = dir.join(format!("{}.{}.tmp", file_name(n), std::process::id()));
        {
            let mut f = fs::File::create(&tmp).map_err(io)?;
            f.write_all(text.as_bytes()).map_err(io)?;
            f.sync_all().map_err(io)?;
        }
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_cache() {
        let dir = tempfile::tempdir().unwrap();
        for n in 6..=8 {
            let built = SpinRep::load_or_build(n, dir.path()).unwrap();
            assert!(dir.path().join(file_name(n)).exists());
            let loaded = SpinRep::load_or_build(n, dir.path()).unwrap();
            assert_eq!(built, loaded);
            let text = fs::read_to_string(dir.path().join(file_name(n))).unwrap();
            assert!(text.contains(CACHE_CONVENTION));
        }
    }

    #[test]
    fn corrupt_cache_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(file_name(8)), "{not json").unwrap();
        let rep = SpinRep::load_or_build(8, dir.path()).unwrap();
        assert_eq!(&rep, SpinRep::shared(8).unwrap());
        let text = fs::read_to_string(dir.path().join(file_name(8))).unwrap();
        assert!(text.starts_with('{') && text.contains("\"version\""));
    }
}
