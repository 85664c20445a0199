use ldpc_exponent_core::lab::RNG_ALGORITHM;

/// Everything needed to reproduce an output file, written as `#` lines.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            params: Vec::new(),
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn header(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut out = format!(
            "# tool: ldpc-exponent {}\n# command: {}\n# params: {}\n# seed: {}\n# rng: {}\n# threads: {}\n# timestamp: {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            params.join(" "),
            self.seed.map_or_else(|| "none".to_string(), |s| s.to_string()),
            RNG_ALGORITHM,
            if ldpc_exponent_core::par::is_parallel() { "rayon" } else { "sequential" },
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        );
        for n in &self.notes {
            out.push_str(&format!("# note: {n}\n"));
        }
        out
    }

    /// Title used for plots: the command and its parameters.
    pub fn title(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{} {}", self.command, params.join(" "))
    }
}
