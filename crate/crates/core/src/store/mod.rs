//! Local databank: an append-only record log, a rebuildable inverted index,
//! a boolean field query language and precomputed similarity neighbors.

mod index;
mod neighbors;
mod query;

use std::collections::{BTreeSet, HashMap};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formats::{FastaDoc, GenBankRecord};
use crate::seq::Sequence;
use index::Index;

pub use neighbors::{build_neighbors, NeighborLink, NEIGHBOR_METHOD};
pub use query::{parse_query, Field, Query};

const LOG: &str = "records.log";
const INDEX_DIR: &str = "index";
const MANIFEST: &str = "manifest";
const NEIGHBORS: &str = "neighbors.tsv";
const LOCK: &str = "LOCK";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("accession {0} already holds a different record")]
    DuplicateAccession(String),
    #[error("corrupt store: {0}")]
    CorruptStore(String),
    #[error("store is locked by another writer ({0})")]
    Locked(PathBuf),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("query syntax error at {position}: {reason}")]
    Syntax { position: usize, reason: String },
    #[error("unknown field tag [{0}]")]
    UnknownField(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A citation-style databank entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub accession: String,
    pub definition: String,
    #[serde(default)]
    pub organism: String,
    #[serde(default)]
    pub authors: Vec<String>,
    /// Four-digit year.
    #[serde(default)]
    pub year: Option<String>,
    #[serde(default)]
    pub mesh: Vec<String>,
    #[serde(default)]
    pub publication_type: Vec<String>,
    #[serde(default)]
    pub language: Option<String>,
    #[serde(default)]
    pub sequence: Option<Sequence>,
}

impl Record {
    pub fn new(accession: &str, definition: &str) -> Record {
        Record {
            accession: accession.to_string(),
            definition: definition.to_string(),
            organism: String::new(),
            authors: Vec::new(),
            year: None,
            mesh: Vec::new(),
            publication_type: Vec::new(),
            language: None,
            sequence: None,
        }
    }

    pub fn validate(&self) -> Result<(), StoreError> {
        if self.accession.is_empty() || self.accession.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(StoreError::InvalidRecord(format!("bad accession {:?}", self.accession)));
        }
        if let Some(y) = &self.year {
            if y.len() != 4 || !y.bytes().all(|b| b.is_ascii_digit()) {
                return Err(StoreError::InvalidRecord(format!("{}: year {y:?} is not four digits", self.accession)));
            }
        }
        Ok(())
    }

    /// Text searched under a field; `all` here means the untagged remainder.
    pub(crate) fn field_values(&self, field: Field) -> Vec<&str> {
        match field {
            Field::All => vec![self.accession.as_str(), self.organism.as_str()],
            Field::Au => self.authors.iter().map(String::as_str).collect(),
            Field::Mh => self.mesh.iter().map(String::as_str).collect(),
            Field::Dp => self.year.iter().map(String::as_str).collect(),
            Field::Pt => self.publication_type.iter().map(String::as_str).collect(),
            Field::La => self.language.iter().map(String::as_str).collect(),
            Field::Ti => vec![self.definition.as_str()],
        }
    }
}

impl From<&GenBankRecord> for Record {
    fn from(g: &GenBankRecord) -> Record {
        Record {
            organism: g.organism.clone(),
            authors: g.authors(),
            year: g.year().map(str::to_string),
            sequence: g.origin.clone(),
            ..Record::new(&g.accession, &g.definition)
        }
    }
}

impl From<&Sequence> for Record {
    fn from(s: &Sequence) -> Record {
        Record {
            sequence: Some(s.clone()),
            ..Record::new(s.id(), s.description())
        }
    }
}

pub fn records_from_fasta(doc: &FastaDoc) -> Vec<Record> {
    doc.entries.iter().map(Record::from).collect()
}

/// Exclusive writer lock, released on drop.
struct WriteLock(PathBuf);

impl WriteLock {
    fn acquire(dir: &Path) -> Result<WriteLock, StoreError> {
        let path = dir.join(LOCK);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(WriteLock(path))
            }
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(StoreError::Locked(path)),
            Err(e) => Err(e.into()),
        }
    }
}

impl Drop for WriteLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

/// Records decoded from the log and the byte length of its valid prefix.
/// A truncated final entry is an interrupted write and is ignored.
fn read_log(path: &Path) -> Result<(Vec<Record>, u64), StoreError> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
        Err(e) => return Err(e.into()),
    };
    let mut records = Vec::new();
    let mut at = 0;
    while bytes.len() - at >= 4 {
        let len = u32::from_le_bytes(bytes[at..at + 4].try_into().expect("four bytes")) as usize;
        if bytes.len() - at - 4 < len {
            break;
        }
        let blob = &bytes[at + 4..at + 4 + len];
        let record: Record = serde_json::from_slice(blob)
            .map_err(|e| StoreError::CorruptStore(format!("record at byte {at}: {e}")))?;
        records.push(record);
        at += 4 + len;
    }
    Ok((records, at as u64))
}

pub struct Store {
    dir: PathBuf,
    records: Vec<Record>,
    positions: HashMap<String, usize>,
    index: Index,
    log_len: u64,
}

impl Store {
    /// Open or create a data directory. A stale or damaged index is rebuilt
    /// in memory.
    pub fn open(dir: impl AsRef<Path>) -> Result<Store, StoreError> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let mut store = Store {
            dir,
            records: Vec::new(),
            positions: HashMap::new(),
            index: Index::default(),
            log_len: 0,
        };
        store.reload()?;
        store.index = store.load_index().unwrap_or_else(|| Index::build(&store.records));
        Ok(store)
    }

    fn reload(&mut self) -> Result<(), StoreError> {
        let (records, len) = read_log(&self.dir.join(LOG))?;
        let mut positions = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if positions.insert(r.accession.clone(), i).is_some() {
                return Err(StoreError::CorruptStore(format!("accession {} logged twice", r.accession)));
            }
        }
        self.records = records;
        self.positions = positions;
        self.log_len = len;
        Ok(())
    }

    fn load_index(&self) -> Option<Index> {
        let dir = self.dir.join(INDEX_DIR);
        let manifest = fs::read_to_string(dir.join(MANIFEST)).ok()?;
        if manifest.trim() != format!("records\t{}", self.records.len()) {
            return None;
        }
        let files = Field::ALL
            .into_iter()
            .map(|f| fs::read_to_string(dir.join(format!("{}.tsv", f.tag()))).ok().map(|t| (f, t)))
            .collect::<Option<Vec<_>>>()?;
        Index::from_files(&files, self.records.len())
    }

    fn write_index(&self) -> Result<(), StoreError> {
        let dir = self.dir.join(INDEX_DIR);
        fs::create_dir_all(&dir)?;
        let _ = fs::remove_file(dir.join(MANIFEST));
        for (field, text) in self.index.to_files() {
            fs::write(dir.join(format!("{}.tsv", field.tag())), text)?;
        }
        fs::write(dir.join(MANIFEST), format!("records\t{}\n", self.records.len()))?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn get(&self, accession: &str) -> Option<&Record> {
        self.positions.get(accession).map(|&i| &self.records[i])
    }

    /// Append new records and update the index. Records identical to stored
    /// ones are skipped; returns the number added. The batch is all or
    /// nothing.
    pub fn ingest(&mut self, records: impl IntoIterator<Item = Record>) -> Result<usize, StoreError> {
        let _lock = WriteLock::acquire(&self.dir)?;
        let log_path = self.dir.join(LOG);
        let on_disk = fs::metadata(&log_path).map(|m| m.len()).unwrap_or(0);
        if on_disk != self.log_len {
            self.reload()?;
            self.index = Index::build(&self.records);
        }

        let mut fresh: Vec<Record> = Vec::new();
        let mut batch: HashMap<String, usize> = HashMap::new();
        for r in records {
            r.validate()?;
            let existing = self.get(&r.accession).or_else(|| batch.get(&r.accession).map(|&i| &fresh[i]));
            match existing {
                Some(old) if *old == r => continue,
                Some(_) => return Err(StoreError::DuplicateAccession(r.accession)),
                None => {
                    batch.insert(r.accession.clone(), fresh.len());
                    fresh.push(r);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(0);
        }

        let mut buf = Vec::new();
        for r in &fresh {
            let blob = serde_json::to_vec(r).map_err(|e| StoreError::InvalidRecord(e.to_string()))?;
            let len = u32::try_from(blob.len()).map_err(|_| StoreError::InvalidRecord(format!("{} is too large", r.accession)))?;
            buf.extend_from_slice(&len.to_le_bytes());
            buf.extend_from_slice(&blob);
        }
        let file = OpenOptions::new().create(true).write(true).truncate(false).open(&log_path)?;
        // drop any interrupted tail before appending
        file.set_len(self.log_len)?;
        let mut file = OpenOptions::new().append(true).open(&log_path)?;
        file.write_all(&buf)?;
        file.sync_data()?;
        self.log_len += buf.len() as u64;

        let added = fresh.len();
        for r in fresh {
            let pos = self.records.len();
            self.index.add(pos, &r);
            self.positions.insert(r.accession.clone(), pos);
            self.records.push(r);
        }
        self.write_index()?;
        Ok(added)
    }

    /// Rebuild and rewrite the index files from the log.
    pub fn rebuild_index(&mut self) -> Result<(), StoreError> {
        let _lock = WriteLock::acquire(&self.dir)?;
        self.reload()?;
        self.index = Index::build(&self.records);
        self.write_index()
    }

    /// Matching accessions in ingest order.
    pub fn evaluate(&self, q: &Query) -> Vec<String> {
        self.index
            .evaluate(q, &self.records)
            .into_iter()
            .map(|i| self.records[i].accession.clone())
            .collect()
    }

    /// Matching accessions as a set.
    pub fn evaluate_set(&self, q: &Query) -> BTreeSet<String> {
        self.evaluate(q).into_iter().collect()
    }

    pub fn query(&self, text: &str) -> Result<Vec<String>, StoreError> {
        Ok(self.evaluate(&parse_query(text)?))
    }

    pub fn save_neighbors(&self, links: &[NeighborLink]) -> Result<(), StoreError> {
        let _lock = WriteLock::acquire(&self.dir)?;
        let tmp = self.dir.join(format!("{NEIGHBORS}.tmp"));
        let mut f = File::create(&tmp)?;
        f.write_all(neighbors::render(links).as_bytes())?;
        f.sync_data()?;
        fs::rename(tmp, self.dir.join(NEIGHBORS))?;
        Ok(())
    }

    /// Saved links, empty when none have been computed.
    pub fn neighbors(&self) -> Result<Vec<NeighborLink>, StoreError> {
        match fs::read_to_string(self.dir.join(NEIGHBORS)) {
            Ok(text) => neighbors::parse(&text),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn neighbors_of(&self, accession: &str) -> Result<Vec<NeighborLink>, StoreError> {
        Ok(self.neighbors()?.into_iter().filter(|l| l.from == accession).collect())
    }
}
