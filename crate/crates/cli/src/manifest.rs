use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to replay a run: equal command, seed and input digests give equal outputs.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub threads: Option<usize>,
    pub versions: Vec<(String, String)>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub exit_code: i32,
    pub elapsed_ms: u128,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_digest(path: &Path) -> std::io::Result<FileDigest> {
    Ok(FileDigest {
        path: path.display().to_string(),
        sha256: digest(&std::fs::read(path)?),
    })
}

pub fn versions() -> Vec<(String, String)> {
    vec![
        ("modlie".into(), modlie::VERSION.into()),
        ("modlie-census".into(), modlie_census::VERSION.into()),
        ("modlie-cli".into(), env!("CARGO_PKG_VERSION").into()),
    ]
}
