//! The language-model interface shared by the simulator and remote clients.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct CompletionError {
    pub message: String,
    /// Transport-level failures worth retrying.
    pub retryable: bool,
}

impl CompletionError {
    pub fn fatal(message: impl Into<String>) -> Self {
        Self { message: message.into(), retryable: false }
    }

    pub fn transient(message: impl Into<String>) -> Self {
        Self { message: message.into(), retryable: true }
    }
}

pub trait LanguageModel: Sync {
    /// Name recorded in run metadata.
    fn name(&self) -> String;

    fn complete(&self, prompt: &str) -> Result<String, CompletionError>;
}

impl<M: LanguageModel + ?Sized> LanguageModel for &M {
    fn name(&self) -> String {
        (**self).name()
    }

    fn complete(&self, prompt: &str) -> Result<String, CompletionError> {
        (**self).complete(prompt)
    }
}
