//! Seeds selected by name at runtime.

use std::collections::BTreeMap;
use std::path::PathBuf;

use super::{DualConic, FileSeed, PlanarSeed, RegularNgon, SeedError};

/// Parameters a seed source may consume; each source reads what it needs.
#[derive(Debug, Clone, Default)]
pub struct SeedParams {
    pub q: Option<u64>,
    pub n_lines: Option<usize>,
    pub path: Option<PathBuf>,
    pub tol: Option<f64>,
}

pub trait SeedSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn build(&self, params: &SeedParams) -> Result<PlanarSeed, SeedError>;
}

pub struct SeedRegistry {
    sources: BTreeMap<&'static str, Box<dyn SeedSource>>,
}

impl Default for SeedRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl SeedRegistry {
    pub fn empty() -> Self {
        SeedRegistry {
            sources: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(DualConic));
        r.register(Box::new(RegularNgon));
        r.register(Box::new(FileSeed));
        r
    }

    /// Replaces any source already registered under the same name.
    pub fn register(&mut self, source: Box<dyn SeedSource>) {
        self.sources.insert(source.name(), source);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SeedSource> {
        self.sources.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.sources.keys().copied().collect()
    }

    /// Builds from a selector such as `conic`, `ngon` or `file:<path>`.
    pub fn build(&self, selector: &str, params: &SeedParams) -> Result<PlanarSeed, SeedError> {
        let (name, arg) = match selector.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (selector, None),
        };
        let source = self
            .get(name)
            .ok_or_else(|| SeedError::UnknownSeed(name.to_string(), self.names().join(", ")))?;
        match arg {
            Some(a) => {
                let mut p = params.clone();
                p.path = Some(PathBuf::from(a));
                source.build(&p)
            }
            None => source.build(params),
        }
    }
}
