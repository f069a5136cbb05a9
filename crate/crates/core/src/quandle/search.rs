//! Exhaustive search for small labeled quandles.
//!
//! Depth-first over table cells: `S` first, then the `∘_i` tables; the `*_i`
//! tables are forced by axiom (3) (`x *_i y = x ∘_j S(y)`). After each choice
//! every axiom instance is evaluated, and an instance whose sides differ only
//! by one missing table cell fills that cell. Results are reduced to the
//! lexicographically least member of their orbit under carrier permutations.

use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::axioms::{equations, eval, index_tuples, Cell, Equation, Eval, Tables};
use super::{certify, CertifiedQuandle, LabeledQuandle};

/// Bumped whenever the exploration order changes, invalidating caches.
pub const SEARCH_ORDER_VERSION: u32 = 1;

const UNSET: u8 = u8::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub q: usize,
    pub n: usize,
    pub budget: u64,
    /// Canonical representatives, sorted.
    pub structures: Vec<CertifiedQuandle>,
    /// `false` when the node budget ran out before the tree was exhausted.
    pub complete: bool,
    pub nodes: u64,
}

#[derive(Clone)]
struct Partial {
    q: usize,
    star: Vec<u8>,
    circ: Vec<u8>,
    s: Vec<u8>,
}

impl Partial {
    fn slot(&mut self, cell: Cell) -> &mut u8 {
        let q = self.q;
        match cell {
            Cell::Star(i, x, y) => &mut self.star[(i * q + x as usize) * q + y as usize],
            Cell::Circ(i, x, y) => &mut self.circ[(i * q + x as usize) * q + y as usize],
            Cell::S(x) => &mut self.s[x as usize],
        }
    }

    fn into_quandle(self, n: usize) -> LabeledQuandle {
        LabeledQuandle { q: self.q, n, star: self.star, circ: self.circ, s: self.s }
    }
}

impl Tables for Partial {
    fn get(&self, cell: Cell) -> Option<u8> {
        let q = self.q;
        let v = match cell {
            Cell::Star(i, x, y) => self.star[(i * q + x as usize) * q + y as usize],
            Cell::Circ(i, x, y) => self.circ[(i * q + x as usize) * q + y as usize],
            Cell::S(x) => self.s[x as usize],
        };
        (v != UNSET).then_some(v)
    }
}

struct Instance {
    eq: usize,
    idx: [usize; 3],
    vars: [u8; 3],
}

struct Searcher {
    q: usize,
    n: usize,
    eqs: Vec<Equation>,
    instances: Vec<Instance>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    found: BTreeSet<LabeledQuandle>,
}

impl Searcher {
    fn new(q: usize, n: usize, budget: u64) -> Self {
        let eqs = equations();
        let mut instances = Vec::new();
        for (k, e) in eqs.iter().enumerate() {
            for idx in index_tuples(e.family, n) {
                for x in 0..q as u8 {
                    for y in 0..if e.vars >= 2 { q as u8 } else { 1 } {
                        for z in 0..if e.vars >= 3 { q as u8 } else { 1 } {
                            instances.push(Instance { eq: k, idx, vars: [x, y, z] });
                        }
                    }
                }
            }
        }
        Searcher { q, n, eqs, instances, budget, nodes: 0, exhausted: false, found: BTreeSet::new() }
    }

    /// Fills forced cells; `false` on contradiction.
    fn propagate(&self, p: &mut Partial) -> bool {
        loop {
            let mut changed = false;
            for inst in &self.instances {
                let e = &self.eqs[inst.eq];
                let l = eval(&e.lhs, &inst.idx, &inst.vars, p);
                let r = eval(&e.rhs, &inst.idx, &inst.vars, p);
                match (l, r) {
                    (Eval::Known(a), Eval::Known(b)) if a != b => return false,
                    (Eval::Known(a), Eval::Missing(c)) | (Eval::Missing(c), Eval::Known(a)) => {
                        *p.slot(c) = a;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn next_unset(&self, p: &Partial) -> Option<Cell> {
        let q = self.q;
        if let Some(x) = p.s.iter().position(|&v| v == UNSET) {
            return Some(Cell::S(x as u8));
        }
        for (tab, mk) in [(&p.circ, Cell::Circ as fn(usize, u8, u8) -> Cell), (&p.star, Cell::Star)] {
            if let Some(k) = tab.iter().position(|&v| v == UNSET) {
                return Some(mk(k / (q * q), ((k / q) % q) as u8, (k % q) as u8));
            }
        }
        None
    }

    fn dfs(&mut self, mut p: Partial) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if !self.propagate(&mut p) {
            return;
        }
        match self.next_unset(&p) {
            None => {
                let qd = p.into_quandle(self.n);
                if certify(&qd).is_empty() {
                    self.found.insert(canonical(&qd));
                }
            }
            Some(cell) => {
                for v in 0..self.q as u8 {
                    let mut child = p.clone();
                    *child.slot(cell) = v;
                    self.dfs(child);
                    if self.exhausted {
                        return;
                    }
                }
            }
        }
    }
}

fn permutations(q: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; q], &mut out);
    out
}

/// Least member of the orbit under carrier permutations.
pub fn canonical(qd: &LabeledQuandle) -> LabeledQuandle {
    permutations(qd.q).iter().map(|p| qd.permuted(p)).min().expect("q >= 1")
}

/// Searches all structures with carrier size `q` and degree `n`, visiting
/// at most `budget` nodes. The first `S` value is split across threads, each
/// getting an equal share of the budget.
pub fn search(q: usize, n: usize, budget: u64) -> SearchOutcome {
    assert!((1..u8::MAX as usize).contains(&q) && n >= 1, "need 1 <= q < 255 and n >= 1");
    let cells = n * q * q;
    let root = Partial { q, star: vec![UNSET; cells], circ: vec![UNSET; cells], s: vec![UNSET; q] };
    let share = budget.div_ceil(q as u64);
    let parts: Vec<Searcher> = (0..q as u8)
        .into_par_iter()
        .map(|v| {
            let mut s = Searcher::new(q, n, share);
            let mut p = root.clone();
            p.s[0] = v;
            s.dfs(p);
            s
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut nodes = 0;
    let mut complete = true;
    for s in parts {
        nodes += s.nodes;
        complete &= !s.exhausted;
        found.extend(s.found);
    }
    let structures = found.into_iter().map(|qd| CertifiedQuandle::new(qd).expect("certified during search")).collect();
    SearchOutcome { q, n, budget, structures, complete, nodes }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CacheRecord {
    Header { q: usize, n: usize, budget: u64, search_order_version: u32 },
    Structure(LabeledQuandle),
    End { complete: bool, nodes: u64, count: usize },
}

pub fn cache_path(dir: &Path, q: usize, n: usize) -> PathBuf {
    dir.join(format!("labeled_quandles_q{}_n{}.jsonl", q, n))
}

fn load(path: &Path, q: usize, n: usize, budget: u64) -> io::Result<Option<SearchOutcome>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut hit = None;
    let mut block: Option<Vec<LabeledQuandle>> = None;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) else {
            block = None;
            continue;
        };
        match rec {
            CacheRecord::Header { q: q2, n: n2, budget: b2, search_order_version } => {
                let matches = (q2, n2, b2, search_order_version) == (q, n, budget, SEARCH_ORDER_VERSION);
                block = matches.then(Vec::new);
            }
            CacheRecord::Structure(s) => {
                if let Some(b) = block.as_mut() {
                    b.push(s);
                }
            }
            CacheRecord::End { complete, nodes, count } => {
                if let Some(b) = block.take() {
                    if b.len() == count {
                        let structures: Result<Vec<_>, _> = b.into_iter().map(CertifiedQuandle::new).collect();
                        if let Ok(structures) = structures {
                            hit = Some(SearchOutcome { q, n, budget, structures, complete, nodes });
                        }
                    }
                }
            }
        }
    }
    Ok(hit)
}

/// Like [`search`], reusing an earlier run with the same parameters from the
/// append-only cache file in `dir`.
pub fn search_cached(q: usize, n: usize, budget: u64, dir: &Path) -> io::Result<SearchOutcome> {
    let path = cache_path(dir, q, n);
    if let Some(hit) = load(&path, q, n, budget)? {
        log::debug!("cache hit {}", path.display());
        return Ok(hit);
    }
    let out = search(q, n, budget);
    fs::create_dir_all(dir)?;
    let mut f = OpenOptions::new().create(true).append(true).open(&path)?;
    let mut text = String::new();
    let mut push = |r: &CacheRecord| {
        text.push_str(&serde_json::to_string(r).expect("serializable"));
        text.push('\n');
    };
    push(&CacheRecord::Header { q, n, budget, search_order_version: SEARCH_ORDER_VERSION });
    for s in &out.structures {
        push(&CacheRecord::Structure(s.get().clone()));
    }
    push(&CacheRecord::End { complete: out.complete, nodes: out.nodes, count: out.structures.len() });
    f.write_all(text.as_bytes())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_carrier() {
        for n in 1..=3 {
            let r = search(1, n, 1000);
            assert!(r.complete);
            assert_eq!(r.structures.len(), 1);
            assert_eq!(*r.structures[0].get(), LabeledQuandle::trivial(1, n));
        }
    }

    #[test]
    fn includes_trivial_and_is_deterministic() {
        let a = search(2, 1, 100_000);
        assert!(a.complete);
        assert!(a.structures.iter().any(|s| *s.get() == canonical(&LabeledQuandle::trivial(2, 1))));
        assert_eq!(a, search(2, 1, 100_000));
    }

    #[test]
    fn tiny_budget_is_partial() {
        let r = search(3, 2, 3);
        assert!(!r.complete);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("sgknot-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let a = search_cached(2, 2, 50_000, &dir).unwrap();
        let b = search_cached(2, 2, 50_000, &dir).unwrap();
        assert_eq!(a, b);
        let text = fs::read_to_string(cache_path(&dir, 2, 2)).unwrap();
        assert_eq!(text.lines().filter(|l| l.contains("header")).count(), 1);
        fs::remove_dir_all(&dir).unwrap();
    }
}
