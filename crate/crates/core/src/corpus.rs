//! The shipped group corpus, run configuration, and the per-entry runner.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::is_prime;
use crate::blocks::{block_partition, block_partition_with};
use crate::chartable::{dixon_table, dixon_table_with_prime, CharacterTable, TableDocument};
use crate::conjecture::{verdict_report, NamedSubgroup, VerdictReport};
use crate::cyclo::ModpReduction;
use crate::error::{Error, Result};
use crate::permgroup::{GroupDefinition, PermGroup, Permutation, DEFAULT_ENUMERATION_CAP};

/// Environment variable overriding [`RunConfig::enumeration_cap`].
pub const CAP_ENV: &str = "PHZ_ENUMERATION_CAP";

const EMBEDDED: &[(&str, &str)] = &[
    ("2_A6", include_str!("../corpus/2_A6.json")),
    ("2_A7", include_str!("../corpus/2_A7.json")),
    ("2_A8", include_str!("../corpus/2_A8.json")),
    ("A4", include_str!("../corpus/A4.json")),
    ("A5", include_str!("../corpus/A5.json")),
    ("A6", include_str!("../corpus/A6.json")),
    ("C2xC2", include_str!("../corpus/C2xC2.json")),
    ("C4", include_str!("../corpus/C4.json")),
    ("C6", include_str!("../corpus/C6.json")),
    ("D8", include_str!("../corpus/D8.json")),
    ("GL2x3", include_str!("../corpus/GL2x3.json")),
    ("Q8", include_str!("../corpus/Q8.json")),
    ("S3", include_str!("../corpus/S3.json")),
    ("S4", include_str!("../corpus/S4.json")),
    ("S5", include_str!("../corpus/S5.json")),
    ("SL2x3", include_str!("../corpus/SL2x3.json")),
    ("SL2x5", include_str!("../corpus/SL2x5.json")),
    ("SL2x7", include_str!("../corpus/SL2x7.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFacts {
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_order: Option<u64>,
}

/// A named normal subgroup, in cycle notation on the entry's points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalSubgroupDef {
    pub name: String,
    pub generators: Vec<Vec<Vec<usize>>>,
    pub order: u64,
}

/// The on-disk form of an entry: generators or a table, not both.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct EntryFile {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<TableDocument>,
    expected: ExpectedFacts,
    #[serde(default)]
    tags: Vec<String>,
    #[serde(default)]
    notes: String,
    #[serde(default)]
    normal_subgroups: Vec<NormalSubgroupDef>,
}

#[derive(Clone, Debug)]
pub enum Source {
    Generators(GroupDefinition),
    Table(TableDocument),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    pub expected: ExpectedFacts,
    pub normal_subgroups: Vec<NormalSubgroupDef>,
    pub tags: Vec<String>,
    pub notes: String,
    /// Built and checked on load for generator entries.
    pub group: Option<PermGroup>,
}

fn integrity(entry: &str, message: impl Into<String>) -> Error {
    Error::CorpusIntegrity {
        entry: entry.to_string(),
        message: message.into(),
    }
}

impl CorpusEntry {
    /// Parses an entry without checking its expected facts.
    pub fn parse(text: &str) -> Result<CorpusEntry> {
        let f: EntryFile = serde_json::from_str(text)?;
        let source = match (f.generators, f.table, f.degree) {
            (Some(generators), None, Some(degree)) => Source::Generators(GroupDefinition {
                name: f.name.clone(),
                degree,
                generators,
            }),
            (None, Some(doc), _) => Source::Table(doc),
            _ => {
                return Err(Error::Schema(format!(
                    "entry {} needs either degree and generators or a table",
                    f.name
                )))
            }
        };
        Ok(CorpusEntry {
            name: f.name,
            source,
            expected: f.expected,
            normal_subgroups: f.normal_subgroups,
            tags: f.tags,
            notes: f.notes,
            group: None,
        })
    }

    /// Builds the group (if any) and checks every expected fact.
    pub fn validate(mut self, cap: usize) -> Result<CorpusEntry> {
        let name = self.name.clone();
        match &self.source {
            Source::Generators(def) => {
                let g = def.to_group(cap).map_err(|e| match e {
                    Error::ResourceExceeded { .. } => e,
                    other => integrity(&name, other.to_string()),
                })?;
                if g.order_u64() != self.expected.order {
                    return Err(integrity(
                        &name,
                        format!("order is {}, expected {}", g.order(), self.expected.order),
                    ));
                }
                if let Some(zo) = self.expected.center_order {
                    let actual = g.center()?.order_u64();
                    if actual != zo {
                        return Err(integrity(&name, format!("center order is {actual}, expected {zo}")));
                    }
                }
                for n in &self.normal_subgroups {
                    let h = subgroup_from_def(&g, n).map_err(|e| integrity(&name, e.to_string()))?;
                    if h.order_u64() != n.order {
                        return Err(integrity(
                            &name,
                            format!("{} has order {}, expected {}", n.name, h.order_u64(), n.order),
                        ));
                    }
                    if !h.is_normal_in(&g) {
                        return Err(integrity(&name, format!("{} is not normal", n.name)));
                    }
                }
                self.group = Some(g);
            }
            Source::Table(doc) => {
                if doc.order != self.expected.order {
                    return Err(integrity(
                        &name,
                        format!("order is {}, expected {}", doc.order, self.expected.order),
                    ));
                }
                let t = CharacterTable::ingest(doc).map_err(|e| integrity(&name, e.to_string()))?;
                if let Some(zo) = self.expected.center_order {
                    let actual = t.class_sizes().iter().filter(|&&s| s == 1).count() as u64;
                    if actual != zo {
                        return Err(integrity(&name, format!("center order is {actual}, expected {zo}")));
                    }
                }
                if !self.normal_subgroups.is_empty() {
                    return Err(integrity(&name, "table entries cannot name normal subgroups"));
                }
            }
        }
        Ok(self)
    }

    /// Named normal subgroups as subgroups of the entry's group.
    pub fn normals(&self) -> Result<Vec<NamedSubgroup>> {
        let Some(g) = &self.group else {
            return Ok(Vec::new());
        };
        self.normal_subgroups
            .iter()
            .map(|n| {
                Ok(NamedSubgroup {
                    name: n.name.clone(),
                    group: subgroup_from_def(g, n)?,
                })
            })
            .collect()
    }

    /// The character table, computed or ingested.
    pub fn table(&self, config: &RunConfig) -> Result<CharacterTable> {
        match (&self.source, &self.group) {
            (Source::Table(doc), _) => Ok(CharacterTable::ingest(doc)?.with_name(self.name.clone())),
            (Source::Generators(_), Some(g)) => {
                if g.order_u64() > config.dixon_cap {
                    return Err(Error::ResourceExceeded {
                        what: format!("character table of {} (order {})", self.name, g.order()),
                        cap: config.dixon_cap as usize,
                    });
                }
                Ok(dixon_table(g)?.with_name(self.name.clone()))
            }
            (Source::Generators(_), None) => Err(Error::Precondition(format!(
                "entry {} has not been validated",
                self.name
            ))),
        }
    }
}

fn subgroup_from_def(g: &PermGroup, n: &NormalSubgroupDef) -> Result<PermGroup> {
    let gens = n
        .generators
        .iter()
        .map(|c| Permutation::from_cycles(g.degree(), c))
        .collect::<Result<Vec<_>>>()?;
    g.subgroup(gens)
}

/// Loads every `*.json` entry in a directory (sorted by file name), or a
/// single file, and checks expected facts.
pub fn load_corpus(path: &Path, cap: usize) -> Result<Vec<CorpusEntry>> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let text = fs::read_to_string(f)?;
            CorpusEntry::parse(&text)?.validate(cap)
        })
        .collect()
}

/// Names of the shipped entries.
pub fn embedded_names() -> Vec<&'static str> {
    EMBEDDED.iter().map(|(n, _)| *n).collect()
}

/// One shipped entry, validated.
pub fn embedded_entry(name: &str, cap: usize) -> Result<CorpusEntry> {
    let (_, text) = EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    CorpusEntry::parse(text)?.validate(cap)
}

/// The whole shipped corpus, validated.
pub fn embedded_corpus(cap: usize) -> Result<Vec<CorpusEntry>> {
    EMBEDDED.iter().map(|(n, _)| embedded_entry(n, cap)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub enumeration_cap: usize,
    /// Largest group order handed to Dixon–Schneider.
    pub dixon_cap: u64,
    pub output_dir: PathBuf,
    /// Recompute block partitions under a second Dixon prime and a second
    /// reduction map and require agreement.
    pub recheck: bool,
    /// Per-check time budget, enforced after the check finishes.
    pub timeout_secs: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![2, 3, 5],
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            dixon_cap: 100_000,
            output_dir: PathBuf::from("reports"),
            recheck: false,
            timeout_secs: 1800,
        }
    }
}

impl RunConfig {
    /// Applies the [`CAP_ENV`] override.
    pub fn with_env(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(CAP_ENV) {
            self.enumeration_cap = v
                .trim()
                .parse()
                .map_err(|_| Error::MalformedInput(format!("{CAP_ENV}={v} is not a number")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.enumeration_cap == 0 || self.dixon_cap == 0 || self.timeout_secs == 0 {
            return Err(Error::MalformedInput("caps and timeout must be positive".into()));
        }
        if self.primes.is_empty() {
            return Err(Error::MalformedInput("no primes given".into()));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::MalformedInput(format!("{p} is not prime")));
        }
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the settings that affect
    /// results.
    pub fn hash(&self) -> String {
        let key = serde_json::json!({
            "primes": self.primes,
            "enumeration_cap": self.enumeration_cap,
            "dixon_cap": self.dixon_cap,
            "recheck": self.recheck,
        });
        let digest = Sha256::digest(key.to_string().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Requires identical block partitions under the second admissible Dixon
/// prime and under the alternate reduction map.
pub fn recheck_partitions(entry: &CorpusEntry, table: &CharacterTable, p: u64) -> Result<()> {
    let base = block_partition(table, p)?;
    if let Some(g) = &entry.group {
        let other = dixon_table_with_prime(g, 1)?;
        if block_partition(&other, p)?.block_of != base.block_of {
            return Err(Error::Internal(format!(
                "{}: {p}-blocks differ between Dixon primes",
                entry.name
            )));
        }
    }
    let alt = ModpReduction::alternate(table.exponent(), p)?;
    if block_partition_with(table, p, &alt)?.block_of != base.block_of {
        return Err(Error::Internal(format!(
            "{}: {p}-blocks differ between reduction maps",
            entry.name
        )));
    }
    Ok(())
}

/// Runs every check for one entry at one prime.
pub fn run_entry(entry: &CorpusEntry, table: &CharacterTable, p: u64, config: &RunConfig) -> Result<VerdictReport> {
    let start = Instant::now();
    if config.recheck {
        recheck_partitions(entry, table, p)?;
    }
    let report = verdict_report(table, p, &entry.normals()?)?;
    if start.elapsed() > Duration::from_secs(config.timeout_secs) {
        return Err(Error::ResourceExceeded {
            what: format!("time budget for {} at p = {p}", entry.name),
            cap: config.timeout_secs as usize,
        });
    }
    Ok(report)
}
