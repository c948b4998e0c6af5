//! Binary checkpoint: the DFS path as choice indices plus counters.
//!
//! Layout (little endian): magic, version `u16`, problem hash (32 bytes),
//! nodes, seven prune counters, solutions, elapsed millis (all `u64`),
//! histogram length `u32` and entries `u64`, path length `u32` and bytes,
//! next choice `u8`.

use std::time::Duration;

use super::PruneCounts;
use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"DWMCKPT\0";
const VERSION: u16 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub problem_hash: [u8; 32],
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub solutions: u64,
    pub depth_histogram: Vec<u64>,
    pub elapsed: Duration,
    /// Choice index taken at each depth above the current frame.
    pub path: Vec<u8>,
    /// Next untried choice index at the current frame.
    pub next: u8,
}

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.at.checked_add(k).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::BadCheckpoint(format!("truncated at byte {}", self.at)))?;
        let out = &self.buf[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
}

impl Checkpoint {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(128 + self.path.len() + 8 * self.depth_histogram.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&self.problem_hash);
        out.extend_from_slice(&self.nodes.to_le_bytes());
        for c in self.prunes.as_array() {
            out.extend_from_slice(&c.to_le_bytes());
        }
        out.extend_from_slice(&self.solutions.to_le_bytes());
        out.extend_from_slice(&(self.elapsed.as_millis() as u64).to_le_bytes());
        out.extend_from_slice(&(self.depth_histogram.len() as u32).to_le_bytes());
        for h in &self.depth_histogram {
            out.extend_from_slice(&h.to_le_bytes());
        }
        out.extend_from_slice(&(self.path.len() as u32).to_le_bytes());
        out.extend_from_slice(&self.path);
        out.push(self.next);
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self> {
        let mut r = Reader { buf, at: 0 };
        if r.take(8)? != MAGIC {
            return Err(Error::BadCheckpoint("not a checkpoint file".into()));
        }
        let version = u16::from_le_bytes(r.take(2)?.try_into().expect("2 bytes"));
        if version != VERSION {
            return Err(Error::BadCheckpoint(format!("unsupported version {version}")));
        }
        let problem_hash: [u8; 32] = r.take(32)?.try_into().expect("32 bytes");
        let nodes = r.u64()?;
        let mut prunes = [0u64; 7];
        for p in &mut prunes {
            *p = r.u64()?;
        }
        let solutions = r.u64()?;
        let elapsed = Duration::from_millis(r.u64()?);
        let hist_len = r.u32()? as usize;
        let depth_histogram = (0..hist_len).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        let path_len = r.u32()? as usize;
        let path = r.take(path_len)?.to_vec();
        let next = r.take(1)?[0];
        if r.at != buf.len() {
            return Err(Error::BadCheckpoint("trailing bytes".into()));
        }
        Ok(Self {
            problem_hash,
            nodes,
            prunes: PruneCounts::from_array(prunes),
            solutions,
            depth_histogram,
            elapsed,
            path,
            next,
        })
    }
}
