use crate::ffalg::DEFAULT_CONJ_CAP;

/// Default bound on the number of states an exhaustive enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 30;

/// Resource limits shared by the exhaustive entry points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enum_cap: u64,
    pub conj_cap: u64,
    /// Worker threads for sharded enumerations; `None` uses the global pool.
    /// Results never depend on this value.
    pub threads: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enum_cap: DEFAULT_ENUM_CAP, conj_cap: DEFAULT_CONJ_CAP, threads: None }
    }
}

impl Limits {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    /// Runs `f` inside a pool of the configured size.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
}
