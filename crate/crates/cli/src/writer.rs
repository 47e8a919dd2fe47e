//! Single writer thread for report files. Files are never overwritten: an
//! identical existing file is kept, a differing one gets a numbered
//! sibling.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::mpsc::{channel, Sender};
use std::sync::Mutex;
use std::thread::{self, JoinHandle};

use phz_core::{Error, Result};

pub struct ReportWriter {
    tx: Mutex<Sender<(String, Vec<u8>)>>,
    handle: JoinHandle<Result<Vec<String>>>,
}

impl ReportWriter {
    pub fn spawn(dir: PathBuf) -> Result<Self> {
        fs::create_dir_all(&dir)?;
        let (tx, rx) = channel::<(String, Vec<u8>)>();
        let handle = thread::spawn(move || {
            let mut written = Vec::new();
            for (name, body) in rx {
                written.push(append_only(&dir, &name, &body)?);
            }
            written.sort();
            Ok(written)
        });
        Ok(ReportWriter {
            tx: Mutex::new(tx),
            handle,
        })
    }

    pub fn send(&self, name: String, body: Vec<u8>) -> Result<()> {
        self.tx
            .lock()
            .expect("writer channel")
            .send((name, body))
            .map_err(|_| Error::Io("report writer stopped".into()))
    }

    /// Waits for pending writes; returns the file names used.
    pub fn finish(self) -> Result<Vec<String>> {
        drop(self.tx);
        self.handle
            .join()
            .map_err(|_| Error::Io("report writer panicked".into()))?
    }
}

fn append_only(dir: &Path, name: &str, body: &[u8]) -> Result<String> {
    let stem = name.trim_end_matches(".json");
    let mut candidate = name.to_string();
    for n in 1.. {
        let path = dir.join(&candidate);
        match fs::read(&path) {
            Ok(existing) if existing == body => return Ok(candidate),
            Ok(_) => candidate = format!("{stem}.{n}.json"),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                fs::write(&path, body)?;
                return Ok(candidate);
            }
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!("the candidate loop only exits by returning")
}
