//! One JSON file per request under the cache directory. Each file stores the
//! request key, the report and a digest of the report's canonical JSON, so a
//! damaged entry is noticed and recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tropcount::{CountReport, CountRequest};

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    /// Invocation that produced the entry.
    #[serde(default)]
    command: Vec<String>,
    sha256: String,
    report: CountReport,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(Box<CountReport>),
    Miss,
    Corrupt,
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn render(report: &CountReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

/// Content key of a request; worker count is excluded since it never
/// changes results.
pub fn request_key(req: &CountRequest) -> String {
    let kinds: Vec<&str> = req.kinds.iter().map(|k| k.as_str()).collect();
    let text = format!(
        "tropcount {}|{}|{}|{}|{}|{}",
        env!("CARGO_PKG_VERSION"),
        req.spec,
        req.genus,
        req.order,
        kinds.join(","),
        req.ack_noninvariant
    );
    hex_digest(text.as_bytes())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$XDG_CACHE_HOME/tropcount`, else `~/.cache/tropcount`.
    pub fn default_dir() -> PathBuf {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
            return Path::new(&x).join("tropcount");
        }
        match std::env::var_os("HOME") {
            Some(h) => Path::new(&h).join(".cache").join("tropcount"),
            None => PathBuf::from(".tropcount-cache"),
        }
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Lookup {
        let Ok(text) = fs::read_to_string(self.entry_path(key)) else {
            return Lookup::Miss;
        };
        let Ok(entry) = serde_json::from_str::<Entry>(&text) else {
            return Lookup::Corrupt;
        };
        if entry.key != key || hex_digest(render(&entry.report).as_bytes()) != entry.sha256 {
            return Lookup::Corrupt;
        }
        Lookup::Hit(Box::new(entry.report))
    }

    pub fn store(&self, key: &str, report: &CountReport, command: Vec<String>) -> anyhow::Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let entry = Entry {
            key: key.to_string(),
            command,
            sha256: hex_digest(render(report).as_bytes()),
            report: report.clone(),
        };
        let path = self.entry_path(key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&entry)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}
