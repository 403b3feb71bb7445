//! Locating the registry and corpus: explicit paths first, then files
//! present in the data directory, then the tables compiled into the library.

use std::fs;
use std::path::{Path, PathBuf};

use moonshine_core::data;
use moonshine_core::moonshine::Registry;
use moonshine_core::schwarzfit::corpus::{parse_corpus, CorpusEntry};

use crate::Failure;

pub const DATA_DIR_VAR: &str = "MOONSHINE_DATA_DIR";

#[derive(Clone, Debug, Default)]
pub struct Sources {
    pub registry: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
}

impl Sources {
    fn resolve(&self, explicit: &Option<PathBuf>, file: &str) -> Option<PathBuf> {
        explicit.clone().or_else(|| {
            self.data_dir
                .as_ref()
                .map(|d| d.join(file))
                .filter(|p| p.exists())
        })
    }

    pub fn registry(&self) -> Result<Registry, Failure> {
        match self.resolve(&self.registry, "registry.tsv") {
            Some(p) => Registry::parse(&read(&p)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
            None => Ok(Registry::parse(data::REGISTRY).expect("bundled registry is valid")),
        }
    }

    pub fn corpus(&self) -> Result<Vec<CorpusEntry>, Failure> {
        match self.resolve(&self.corpus, "qtable.tsv") {
            Some(p) => parse_corpus(&read(&p)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
            None => Ok(parse_corpus(data::QTABLE).expect("bundled corpus is valid")),
        }
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::usage(format!("stdin: {e}")));
    }
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}
