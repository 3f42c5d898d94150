use std::fs;
use std::io::Write;
use std::path::PathBuf;

use demorgan_core::corpus::ReportStore;
use demorgan_core::Report;
use sha2::{Digest, Sha256};

/// Flat directory of `<sha256>.json` report files.
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn open(dir: PathBuf) -> std::io::Result<Self> {
        fs::create_dir_all(&dir)?;
        Ok(FileCache { dir })
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }
}

impl ReportStore for FileCache {
    fn load(&self, key: &str) -> Option<Report> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn store(&self, key: &str, report: &Report) {
        // Write-then-rename so concurrent workers never see half a file.
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let written = fs::File::create(&tmp).and_then(|mut f| {
            serde_json::to_writer(&mut f, report)?;
            f.write_all(b"\n")
        });
        if written.is_ok() {
            let _ = fs::rename(&tmp, &path);
        } else {
            let _ = fs::remove_file(&tmp);
        }
    }
}
