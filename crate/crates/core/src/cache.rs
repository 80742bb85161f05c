//! Persistent store of computed complexity values.
//!
//! One entry per line: `word<TAB>kind<TAB>value<TAB>witness`, the witness in
//! the one-line NFA format. Later lines override earlier ones with the same
//! key. Entries are re-verified when read back, so a corrupted file can
//! cost time but never produce a wrong value.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::search::{Certificate, Kind};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheKey {
    pub word: String,
    pub kind: Kind,
    pub alphabet: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub value: usize,
    pub witness: String,
}

#[derive(Debug, Default)]
struct Inner {
    entries: BTreeMap<CacheKey, CacheEntry>,
    fresh: BTreeMap<CacheKey, CacheEntry>,
}

#[derive(Debug, Default)]
pub struct ComplexityCache {
    inner: Mutex<Inner>,
}

fn parse_line(line: &str, number: usize) -> Result<(CacheKey, CacheEntry)> {
    let bad = |message: String| Error::Parse { line: number, message };
    let fields: Vec<&str> = line.split('\t').collect();
    let [word, kind, value, witness] = fields[..] else {
        return Err(bad(format!("expected 4 tab-separated fields, found {}", fields.len())));
    };
    let kind: Kind = kind.parse().map_err(|e: Error| bad(e.to_string()))?;
    let value: usize = value.parse().map_err(|_| bad(format!("bad value {value:?}")))?;
    let nfa = Nfa::parse_inline(witness).map_err(|e| bad(format!("bad witness: {e}")))?;
    Word::parse(word, nfa.alphabet_size()).map_err(|e| bad(format!("bad word: {e}")))?;
    Ok((
        CacheKey {
            word: word.to_string(),
            kind,
            alphabet: nfa.alphabet_size(),
        },
        CacheEntry {
            value,
            witness: witness.to_string(),
        },
    ))
}

fn format_line(key: &CacheKey, entry: &CacheEntry) -> String {
    format!("{}\t{}\t{}\t{}\n", key.word, key.kind, entry.value, entry.witness)
}

impl ComplexityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (key, entry) = parse_line(line, i + 1)?;
            entries.insert(key, entry);
        }
        Ok(ComplexityCache {
            inner: Mutex::new(Inner {
                entries,
                fresh: BTreeMap::new(),
            }),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Like [`ComplexityCache::load`], but a missing file is an empty cache.
    pub fn load_or_empty(path: &Path) -> Result<Self> {
        if path.exists() {
            Self::load(path)
        } else {
            Ok(Self::new())
        }
    }

    pub fn len(&self) -> usize {
        self.inner.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Entries in key order.
    pub fn entries(&self) -> Vec<(CacheKey, CacheEntry)> {
        let inner = self.inner.lock().unwrap();
        inner.entries.iter().map(|(k, e)| (k.clone(), e.clone())).collect()
    }

    /// A stored certificate, re-verified against its witness.
    pub fn get(&self, word: &Word, kind: Kind) -> Result<Option<Certificate>> {
        let key = CacheKey {
            word: word.to_string(),
            kind,
            alphabet: word.alphabet_size(),
        };
        let entry = match self.inner.lock().unwrap().entries.get(&key) {
            Some(entry) => entry.clone(),
            None => return Ok(None),
        };
        let cert = Certificate::verify(kind, word, Nfa::parse_inline(&entry.witness)?)?;
        if cert.value != entry.value {
            return Err(Error::Verification(format!(
                "cached {kind}({word:?}) = {} but its witness has {} states",
                entry.value, cert.value
            )));
        }
        Ok(Some(cert))
    }

    pub fn insert(&self, cert: &Certificate) {
        let key = CacheKey {
            word: cert.word.to_string(),
            kind: cert.kind,
            alphabet: cert.word.alphabet_size(),
        };
        let entry = CacheEntry {
            value: cert.value,
            witness: cert.witness.to_inline(),
        };
        let mut inner = self.inner.lock().unwrap();
        if inner.entries.get(&key) != Some(&entry) {
            inner.entries.insert(key.clone(), entry.clone());
            inner.fresh.insert(key, entry);
        }
    }

    /// All entries, sorted, in the file format.
    pub fn to_tsv(&self) -> String {
        let inner = self.inner.lock().unwrap();
        inner.entries.iter().map(|(k, e)| format_line(k, e)).collect()
    }

    /// Appends entries added since loading, sorted, and forgets them.
    pub fn flush(&self, path: &Path) -> Result<usize> {
        let mut inner = self.inner.lock().unwrap();
        if inner.fresh.is_empty() {
            return Ok(0);
        }
        let text: String = inner.fresh.iter().map(|(k, e)| format_line(k, e)).collect();
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(text.as_bytes())?;
        let written = inner.fresh.len();
        inner.fresh.clear();
        Ok(written)
    }

    /// Union of several caches. Later caches win on duplicate keys with the
    /// same value; different values for one key are an error.
    pub fn merge(caches: &[ComplexityCache]) -> Result<ComplexityCache> {
        let mut merged: BTreeMap<CacheKey, CacheEntry> = BTreeMap::new();
        for cache in caches {
            for (key, entry) in cache.entries() {
                if let Some(prior) = merged.get(&key) {
                    if prior.value != entry.value {
                        return Err(Error::CacheConflict {
                            key: format!("{} {}", key.word, key.kind),
                            first: format!("{} via {}", prior.value, prior.witness),
                            second: format!("{} via {}", entry.value, entry.witness),
                        });
                    }
                }
                merged.insert(key, entry);
            }
        }
        Ok(ComplexityCache {
            inner: Mutex::new(Inner {
                entries: merged,
                fresh: BTreeMap::new(),
            }),
        })
    }
}
