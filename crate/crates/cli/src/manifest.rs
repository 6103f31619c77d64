use serde::Serialize;

/// Provenance attached to every emitted result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: String,
    pub seed: u64,
    pub version: String,
    /// Unix seconds from `SOURCE_DATE_EPOCH`, 0 when unset, so reruns stay
    /// byte-identical.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, config: impl Into<String>, seed: u64) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        RunManifest {
            command: command.into(),
            config: config.into(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        }
    }

    /// `# key: value` lines; multi-line config collapses to `; `.
    pub fn comment_block(&self) -> String {
        let config: Vec<&str> = self.config.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        format!(
            "# command: {}\n# version: {}\n# seed: {}\n# timestamp: {}\n# config: {}\n",
            self.command,
            self.version,
            self.seed,
            self.timestamp,
            config.join("; ")
        )
    }
}
