//! The verification corpus: named groups with expected verdicts per prime.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::build_family;
use crate::io::parse_group_file;
use crate::peff::Verdict;
use crate::perm::PermutationGroup;

const DEFAULT_CORPUS: &str = include_str!("../corpus/default.toml");
const DEFAULT_FILES: &[(&str, &str)] = &[("s4.group", include_str!("../corpus/s4.group"))];

/// Where an expected verdict comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Literature,
    Trivial,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub p: u64,
    pub verdict: Verdict,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub file: Option<String>,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default)]
    pub rank: Option<usize>,
    /// Only processed when long-running checks are enabled.
    #[serde(default)]
    pub long: bool,
    #[serde(default)]
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CorpusToml {
    entry: Vec<CorpusEntry>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Group file contents by file name.
    files: Vec<(String, String)>,
}

impl Corpus {
    pub fn parse(toml_text: &str, files: Vec<(String, String)>) -> Result<Self> {
        let parsed: CorpusToml =
            toml::from_str(toml_text).map_err(|e| Error::Precondition(format!("corpus: {e}")))?;
        for entry in &parsed.entry {
            if entry.family.is_some() == entry.file.is_some() {
                return Err(Error::Precondition(format!(
                    "corpus entry `{}` needs exactly one of `family` and `file`",
                    entry.name
                )));
            }
        }
        Ok(Corpus { entries: parsed.entry, files })
    }

    /// The corpus shipped with the crate.
    pub fn default_corpus() -> Self {
        let files = DEFAULT_FILES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
        Corpus::parse(DEFAULT_CORPUS, files).expect("bundled corpus parses")
    }

    /// Loads a corpus file; group files are resolved relative to its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| Error::Precondition(format!("{}: {e}", p.display())))
        };
        let text = read(path)?;
        let dir: PathBuf = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let mut corpus = Corpus::parse(&text, Vec::new())?;
        let mut files = Vec::new();
        for entry in &corpus.entries {
            if let Some(f) = &entry.file {
                files.push((f.clone(), read(&dir.join(f))?));
            }
        }
        corpus.files = files;
        Ok(corpus)
    }

    /// Builds an entry's group and checks its recorded order and rank.
    pub fn group(&self, entry: &CorpusEntry) -> Result<PermutationGroup> {
        let g = match (&entry.family, &entry.file) {
            (Some(spec), _) => build_family(spec)?,
            (None, Some(f)) => {
                let text = self
                    .files
                    .iter()
                    .find(|(n, _)| n == f)
                    .map(|(_, t)| t)
                    .ok_or_else(|| Error::Precondition(format!("group file `{f}` not loaded")))?;
                parse_group_file(text)?.group()?
            }
            (None, None) => unreachable!("validated at parse time"),
        };
        if let Some(o) = entry.order {
            if g.order() != o {
                return Err(Error::Precondition(format!("`{}`: expected order {o}, got {}", entry.name, g.order())));
            }
        }
        Ok(g)
    }
}
