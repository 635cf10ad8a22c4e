use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Word -> frequency rank (1 = most frequent). Unknown words rank one past
/// the largest rank in the table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    ranks: HashMap<String, u64>,
    max_rank: u64,
}

impl FrequencyTable {
    pub fn rank(&self, word: &str) -> u64 {
        self.ranks
            .get(&word.to_lowercase())
            .copied()
            .unwrap_or(self.default_rank())
    }

    pub fn default_rank(&self) -> u64 {
        self.max_rank + 1
    }

    pub fn contains(&self, word: &str) -> bool {
        self.ranks.contains_key(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Reads either `word<TAB>rank` lines or a bare word list, where a bare
/// word's rank is its line number. The first occurrence of a word wins.
pub fn load_frequency_table<R: BufRead>(reader: R) -> Result<FrequencyTable> {
    let mut table = FrequencyTable::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let (word, rank) = match line.split_once('\t') {
            Some((w, r)) => {
                let r = r.trim();
                let rank: i64 = r.parse().map_err(|_| Error::Malformed {
                    line: lineno,
                    message: format!("bad rank `{r}`"),
                })?;
                if rank <= 0 {
                    return Err(Error::Malformed {
                        line: lineno,
                        message: format!("non-positive rank {rank}"),
                    });
                }
                (w.trim(), rank as u64)
            }
            None => (line.trim(), lineno as u64),
        };
        if word.is_empty() {
            return Err(Error::Malformed {
                line: lineno,
                message: "empty word".into(),
            });
        }
        table.max_rank = table.max_rank.max(rank);
        table.ranks.entry(word.to_lowercase()).or_insert(rank);
    }
    Ok(table)
}
