//! Chat-completions client with bounded retries.

use std::thread;
use std::time::Duration;

use graphinsight_core::model::{CompletionError, LanguageModel};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetryPolicy {
    /// Retries after the first attempt.
    pub max_retries: u32,
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self { max_retries: 3, base_delay: Duration::from_millis(500) }
    }
}

impl RetryPolicy {
    pub fn delay(&self, retry: u32) -> Duration {
        self.base_delay.saturating_mul(1u32 << retry.min(16))
    }
}

/// Runs `op` until it succeeds, fails with a non-retryable error, or the
/// retry budget is spent. `sleep` is injected so tests need not wait.
pub fn with_retries<T>(
    policy: RetryPolicy,
    mut sleep: impl FnMut(Duration),
    mut op: impl FnMut(u32) -> Result<T, CompletionError>,
) -> Result<T, CompletionError> {
    let mut attempt = 0;
    loop {
        match op(attempt) {
            Ok(v) => return Ok(v),
            Err(e) if e.retryable && attempt < policy.max_retries => {
                log::warn!("attempt {} failed: {}; retrying", attempt + 1, e.message);
                sleep(policy.delay(attempt));
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RemoteClient {
    pub endpoint: String,
    pub model: String,
    api_key: Option<String>,
    pub policy: RetryPolicy,
    agent: ureq::Agent,
}

impl RemoteClient {
    /// The bearer token is read from `api_key_env`; a missing variable sends
    /// no authorization header.
    pub fn new(endpoint: &str, model: &str, api_key_env: &str, timeout: Duration) -> Self {
        let api_key = std::env::var(api_key_env).ok().filter(|k| !k.is_empty());
        if api_key.is_none() {
            log::warn!("{api_key_env} is not set; sending requests without authorization");
        }
        let agent =
            ureq::Agent::config_builder().timeout_global(Some(timeout)).http_status_as_error(false).build().into();
        Self {
            endpoint: endpoint.to_string(),
            model: model.to_string(),
            api_key,
            policy: RetryPolicy::default(),
            agent,
        }
    }

    pub fn request_body(&self, prompt: &str) -> Value {
        json!({
            "model": self.model,
            "messages": [{ "role": "user", "content": prompt }],
            "temperature": 0,
        })
    }

    fn attempt(&self, body: &Value) -> Result<String, CompletionError> {
        let mut req = self.agent.post(&self.endpoint);
        if let Some(key) = &self.api_key {
            req = req.header("Authorization", &format!("Bearer {key}"));
        }
        let mut resp = req.send_json(body).map_err(|e| CompletionError::transient(format!("transport: {e}")))?;
        let status = resp.status().as_u16();
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| CompletionError::transient(format!("reading response: {e}")))?;
        if status == 429 || status >= 500 {
            return Err(CompletionError::transient(format!("HTTP {status}: {text}")));
        }
        if !(200..300).contains(&status) {
            return Err(CompletionError::fatal(format!("HTTP {status}: {text}")));
        }
        extract_content(&text)
    }
}

/// Text of the first choice's message.
pub fn extract_content(body: &str) -> Result<String, CompletionError> {
    let v: Value = serde_json::from_str(body).map_err(|e| CompletionError::fatal(format!("bad JSON: {e}")))?;
    v.pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| CompletionError::fatal("response has no choices[0].message.content"))
}

impl LanguageModel for RemoteClient {
    fn name(&self) -> String {
        self.model.clone()
    }

    fn complete(&self, prompt: &str) -> Result<String, CompletionError> {
        let body = self.request_body(prompt);
        with_retries(self.policy, thread::sleep, |_| self.attempt(&body))
    }
}
