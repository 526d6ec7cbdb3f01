use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type Oracle = dyn Fn(u64) -> (Option<u64>, Option<u64>) + Send + Sync;

/// End-of-Line instance over `n`-bit vertices. Each query reveals a vertex's
/// claimed predecessor and successor. The all-zeros vertex never has a
/// predecessor.
#[derive(Clone)]
pub struct EolInstance {
    bits: u32,
    oracle: Arc<Oracle>,
}

impl std::fmt::Debug for EolInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EolInstance").field("bits", &self.bits).finish_non_exhaustive()
    }
}

impl EolInstance {
    /// Wraps a callback oracle. Its answer for `pred(0)` is ignored.
    pub fn from_fn(bits: u32, oracle: impl Fn(u64) -> (Option<u64>, Option<u64>) + Send + Sync + 'static) -> Result<Self> {
        if bits == 0 || bits > 63 {
            return Err(Error::input("bit width must be between 1 and 63"));
        }
        Ok(EolInstance {
            bits,
            oracle: Arc::new(move |v| {
                let (p, s) = oracle(v);
                (if v == 0 { None } else { p }, s)
            }),
        })
    }

    /// Explicit table; vertices not listed have neither neighbor.
    pub fn from_table(bits: u32, table: BTreeMap<u64, (Option<u64>, Option<u64>)>) -> Result<Self> {
        EolInstance::from_fn(bits, move |v| table.get(&v).copied().unwrap_or((None, None)))
    }

    /// Parses lines `vertex pred succ` of bit strings, with `-` for none.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits: Option<u32> = None;
        let mut table = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::input(format!("line {}: expected `vertex pred succ`", lineno + 1)));
            }
            let width = fields[0].len() as u32;
            if *bits.get_or_insert(width) != width {
                return Err(Error::input(format!("line {}: inconsistent bit width", lineno + 1)));
            }
            let v = parse_vertex(fields[0], width, lineno)?
                .ok_or_else(|| Error::input(format!("line {}: vertex cannot be `-`", lineno + 1)))?;
            let p = parse_vertex(fields[1], width, lineno)?;
            let s = parse_vertex(fields[2], width, lineno)?;
            if table.insert(v, (p, s)).is_some() {
                return Err(Error::input(format!("line {}: vertex listed twice", lineno + 1)));
            }
        }
        let bits = bits.ok_or_else(|| Error::input("empty End-of-Line file"))?;
        EolInstance::from_table(bits, table)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn vertex_count(&self) -> u64 {
        1u64 << self.bits
    }

    fn raw_query(&self, v: u64) -> Result<(Option<u64>, Option<u64>)> {
        let (p, s) = (self.oracle)(v);
        for w in [p, s].into_iter().flatten() {
            if w >= self.vertex_count() {
                return Err(Error::input(format!("oracle returned out-of-range vertex {}", w)));
            }
        }
        Ok((p, s))
    }

    pub fn format_vertex(&self, v: u64) -> String {
        format!("{:0width$b}", v, width = self.bits as usize)
    }
}

fn parse_vertex(field: &str, width: u32, lineno: usize) -> Result<Option<u64>> {
    if field == "-" {
        return Ok(None);
    }
    if field.len() as u32 != width || !field.chars().all(|c| c == '0' || c == '1') || width > 63 {
        return Err(Error::input(format!("line {}: malformed vertex {:?}", lineno + 1, field)));
    }
    Ok(Some(u64::from_str_radix(field, 2).expect("binary digits")))
}

/// Counts distinct vertices queried.
#[derive(Clone, Debug, Default)]
pub struct QueryCounter {
    seen: Arc<Mutex<BTreeSet<u64>>>,
}

impl QueryCounter {
    pub fn count(&self) -> usize {
        self.seen.lock().expect("counter lock").len()
    }

    fn query(&self, inst: &EolInstance, v: u64) -> Result<(Option<u64>, Option<u64>)> {
        self.seen.lock().expect("counter lock").insert(v);
        inst.raw_query(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EolCase {
    /// `succ(v)` is none.
    #[serde(rename = "i")]
    NoSuccessor,
    /// `pred(v)` is none and `v` is not the start vertex.
    #[serde(rename = "ii")]
    NoPredecessor,
    /// `pred(succ(v)) != v`.
    #[serde(rename = "iii")]
    SuccessorDisowns,
    /// `succ(pred(v)) != v` and `v` is not the start vertex.
    #[serde(rename = "iv")]
    PredecessorDisowns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EolSolution {
    pub vertex: u64,
    pub case: EolCase,
}

/// Follows successors from the all-zeros vertex until one of the solution
/// cases applies.
pub fn eol_solve(inst: &EolInstance) -> Result<(EolSolution, QueryCounter)> {
    let counter = QueryCounter::default();
    let mut visited = BTreeSet::new();
    let mut v = 0u64;
    let (_, mut succ) = counter.query(inst, v)?;
    loop {
        if !visited.insert(v) {
            return Err(Error::invariant("path following revisited a vertex"));
        }
        let Some(s) = succ else {
            return Ok((
                EolSolution {
                    vertex: v,
                    case: EolCase::NoSuccessor,
                },
                counter,
            ));
        };
        let (p, next_succ) = counter.query(inst, s)?;
        if p != Some(v) {
            return Ok((
                EolSolution {
                    vertex: v,
                    case: EolCase::SuccessorDisowns,
                },
                counter,
            ));
        }
        v = s;
        succ = next_succ;
    }
}

/// Checks the tagged case with at most three oracle queries.
pub fn eol_verify(inst: &EolInstance, sol: &EolSolution) -> Result<bool> {
    let v = sol.vertex;
    if v >= inst.vertex_count() {
        return Ok(false);
    }
    let (p, s) = inst.raw_query(v)?;
    Ok(match sol.case {
        EolCase::NoSuccessor => s.is_none(),
        EolCase::NoPredecessor => v != 0 && p.is_none(),
        EolCase::SuccessorDisowns => match s {
            Some(s) => inst.raw_query(s)?.0 != Some(v),
            None => false,
        },
        EolCase::PredecessorDisowns => match p {
            Some(p) if v != 0 => inst.raw_query(p)?.1 != Some(v),
            _ => false,
        },
    })
}
