//! Exhaustive generation of plane partitions.
//!
//! A plane partition of weight n is a two-dimensional array of positive
//! integers, nonincreasing along every row and every column. The generator
//! builds them row by row: the first row is any linear partition of some
//! m <= n, and each later row is a linear partition bounded entrywise by the
//! row above it, until the weight is exhausted. Candidates at every step are
//! tried in lexicographically decreasing order, so the output sequence is
//! deterministic and the single-row partition `n` always comes first.
//!
//! The traversal is streaming: partitions are handed to a visitor (or an
//! iterator) one at a time and never materialized together. The parallel
//! counting pass splits the search forest by first row; worker count cannot
//! change the aggregate histogram because the per-class tallies are exact
//! integer sums over disjoint subtrees.

use std::fmt;
use std::mem;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::BigCount;
use crate::error::{Error, Result};

/// Default cap on the weight accepted by the exhaustive generator.
///
/// p2d(30) is about 5.7 million objects, which streams in well under a
/// minute; the count roughly quadruples every +5 of weight, so runs far
/// above this need an explicit ceiling from the caller.
pub const DEFAULT_CEILING: u64 = 30;

/// A plane partition stored as its rows, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    /// Wraps raw rows without checking the ordering conditions; pair with
    /// [`PlanePartition::is_valid`] when the source is untrusted.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        Self { rows }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Sum of all entries.
    pub fn weight(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| u64::from(v)).sum::<u64>())
            .sum()
    }

    /// Number of stored (nonzero) entries.
    pub fn parts(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Checks every structural invariant: positive entries, rows and row
    /// lengths nonincreasing, and columns nonincreasing.
    pub fn is_valid(&self) -> bool {
        for (i, row) in self.rows.iter().enumerate() {
            if row.is_empty() || row.contains(&0) {
                return false;
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            if i > 0 {
                let prev = &self.rows[i - 1];
                if row.len() > prev.len() {
                    return false;
                }
                if row.iter().zip(prev).any(|(&below, &above)| below > above) {
                    return false;
                }
            }
        }
        true
    }
}

/// Block text format: one row per line, entries space-separated.
impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// One decision on the depth-first trail.
enum Step {
    /// Appended `v` to the current row.
    Cell(u32),
    /// Sealed the current row and opened the next one.
    CloseRow,
}

enum Phase {
    Start,
    /// A partition was just handed out; `pushed` records whether the current
    /// row was temporarily moved into `rows` to form the view.
    Emitted {
        pushed: bool,
    },
    Done,
}

/// Depth-first search over all plane partitions of a fixed weight,
/// optionally restricted to the subtree below a fixed first row.
struct Engine {
    rows: Vec<Vec<u32>>,
    cur: Vec<u32>,
    remaining: u32,
    trail: Vec<Step>,
    phase: Phase,
}

impl Engine {
    fn new(n: u32) -> Self {
        Self {
            rows: Vec::new(),
            cur: Vec::new(),
            remaining: n,
            trail: Vec::new(),
            phase: Phase::Start,
        }
    }

    /// Engine over exactly the partitions whose first row equals `first`.
    /// `first` must be a nonincreasing positive sequence of weight <= n.
    fn with_first_row(n: u32, first: Vec<u32>) -> Self {
        let used: u32 = first.iter().sum();
        debug_assert!(used <= n && !first.is_empty());
        Self {
            rows: vec![first],
            cur: Vec::new(),
            remaining: n - used,
            trail: Vec::new(),
            phase: Phase::Start,
        }
    }

    fn push_cell(&mut self, v: u32) {
        self.trail.push(Step::Cell(v));
        self.cur.push(v);
        self.remaining -= v;
    }

    fn close_row(&mut self) {
        self.trail.push(Step::CloseRow);
        self.rows.push(mem::take(&mut self.cur));
    }

    /// Greedily extends the partial partition with the largest legal entry
    /// until the weight is exhausted. Never dead-ends: a column of 1s is
    /// always available.
    fn descend(&mut self) {
        while self.remaining > 0 {
            let pos = self.cur.len();
            let mut hi = self.remaining;
            if let Some(prev) = self.rows.last() {
                if pos >= prev.len() {
                    self.close_row();
                    continue;
                }
                hi = hi.min(prev[pos]);
            }
            if pos > 0 {
                hi = hi.min(self.cur[pos - 1]);
            }
            self.push_cell(hi);
        }
    }

    fn emit(&mut self) -> Option<&[Vec<u32>]> {
        debug_assert_eq!(self.remaining, 0);
        let pushed = !self.cur.is_empty();
        if pushed {
            self.rows.push(mem::take(&mut self.cur));
        }
        self.phase = Phase::Emitted { pushed };
        Some(&self.rows)
    }

    /// Yields the next partition (as a row slice borrowed from the engine),
    /// or `None` when the subtree is exhausted.
    fn advance(&mut self) -> Option<&[Vec<u32>]> {
        match self.phase {
            Phase::Done => None,
            Phase::Start => {
                self.descend();
                self.emit()
            }
            Phase::Emitted { pushed } => {
                if pushed {
                    self.cur = self.rows.pop().expect("emitted row present");
                }
                loop {
                    match self.trail.pop() {
                        None => {
                            self.phase = Phase::Done;
                            return None;
                        }
                        Some(Step::CloseRow) => {
                            self.cur = self.rows.pop().expect("closed row present");
                        }
                        Some(Step::Cell(v)) => {
                            self.cur.pop();
                            self.remaining += v;
                            if v > 1 {
                                self.push_cell(v - 1);
                            } else if !self.cur.is_empty() {
                                // Alternatives below 1 mean ending the row here.
                                self.close_row();
                            } else {
                                continue;
                            }
                            self.descend();
                            return self.emit();
                        }
                    }
                }
            }
        }
    }
}

fn checked_weight(n: u64, ceiling: u64) -> Result<u32> {
    let effective = ceiling.min(u64::from(u32::MAX));
    if n > effective {
        return Err(Error::CeilingExceeded {
            n,
            ceiling: effective,
        });
    }
    Ok(n as u32)
}

/// Streaming iterator over every plane partition of weight `n`, in the
/// deterministic order described in the module docs.
pub struct Generator {
    engine: Engine,
}

impl Iterator for Generator {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        self.engine
            .advance()
            .map(|rows| PlanePartition::from_rows(rows.to_vec()))
    }
}

/// All plane partitions of `n` under the default ceiling.
pub fn generate_all(n: u64) -> Result<Generator> {
    generate_all_with_ceiling(n, DEFAULT_CEILING)
}

/// All plane partitions of `n` under an explicit ceiling.
pub fn generate_all_with_ceiling(n: u64, ceiling: u64) -> Result<Generator> {
    let n = checked_weight(n, ceiling)?;
    Ok(Generator {
        engine: Engine::new(n),
    })
}

/// Visits every plane partition of `n` without allocating per item; the
/// callback receives the rows of the current partition.
pub fn visit_all<F: FnMut(&[Vec<u32>])>(n: u64, f: F) -> Result<()> {
    visit_all_with_ceiling(n, DEFAULT_CEILING, f)
}

/// [`visit_all`] with an explicit ceiling.
pub fn visit_all_with_ceiling<F: FnMut(&[Vec<u32>])>(n: u64, ceiling: u64, mut f: F) -> Result<()> {
    let n = checked_weight(n, ceiling)?;
    let mut engine = Engine::new(n);
    while let Some(rows) = engine.advance() {
        f(rows);
    }
    Ok(())
}

/// Histogram of plane partitions of `n` by exact part count: entry `k` is
/// the number of partitions with exactly `k` nonzero entries. The entries
/// sum to p2d(n), and prefix sums give the at-most-N restricted counts.
pub fn count_by_parts(n: u64) -> Result<Vec<BigCount>> {
    count_by_parts_with_ceiling(n, DEFAULT_CEILING)
}

/// [`count_by_parts`] with an explicit ceiling.
pub fn count_by_parts_with_ceiling(n: u64, ceiling: u64) -> Result<Vec<BigCount>> {
    let mut hist = vec![0u64; n as usize + 1];
    visit_all_with_ceiling(n, ceiling, |rows| {
        let parts: usize = rows.iter().map(Vec::len).sum();
        hist[parts] += 1;
    })?;
    Ok(hist.into_iter().map(BigUint::from).collect())
}

/// Parallel [`count_by_parts`]: the forest is split by first row and the
/// disjoint subtree histograms are summed. The result is identical for any
/// worker count.
pub fn count_by_parts_parallel(
    n: u64,
    ceiling: u64,
    workers: NonZeroUsize,
) -> Result<Vec<BigCount>> {
    let n = checked_weight(n, ceiling)?;
    if n == 0 {
        return Ok(vec![BigUint::one()]);
    }
    let seeds = first_rows(n);
    let next = AtomicUsize::new(0);
    let mut partials: Vec<Vec<u64>> = vec![vec![0u64; n as usize + 1]; workers.get()];
    thread::scope(|scope| {
        for local in &mut partials {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(seed) = seeds.get(i) else { break };
                let mut engine = Engine::with_first_row(n, seed.clone());
                while let Some(rows) = engine.advance() {
                    let parts: usize = rows.iter().map(Vec::len).sum();
                    local[parts] += 1;
                }
            });
        }
    });
    let mut hist = vec![0u64; n as usize + 1];
    for local in partials {
        for (h, l) in hist.iter_mut().zip(local) {
            *h += l;
        }
    }
    Ok(hist.into_iter().map(BigUint::from).collect())
}

/// Every nonincreasing positive sequence of weight 1..=n, i.e. every
/// possible first row.
fn first_rows(n: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for v in (1..=remaining.min(max)).rev() {
            cur.push(v);
            out.push(cur.clone());
            rec(remaining - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting;

    fn collect(n: u64) -> Vec<PlanePartition> {
        generate_all(n).unwrap().collect()
    }

    #[test]
    fn empty_weight_yields_single_empty_partition() {
        let all = collect(0);
        assert_eq!(all.len(), 1);
        assert!(all[0].rows().is_empty());
        assert_eq!(all[0].parts(), 0);
    }

    #[test]
    fn thirteen_partitions_of_four_in_frozen_order() {
        let expected: Vec<Vec<Vec<u32>>> = vec![
            vec![vec![4]],
            vec![vec![3, 1]],
            vec![vec![3], vec![1]],
            vec![vec![2, 2]],
            vec![vec![2, 1, 1]],
            vec![vec![2, 1], vec![1]],
            vec![vec![2], vec![2]],
            vec![vec![2], vec![1], vec![1]],
            vec![vec![1, 1, 1, 1]],
            vec![vec![1, 1, 1], vec![1]],
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![1, 1], vec![1], vec![1]],
            vec![vec![1], vec![1], vec![1], vec![1]],
        ];
        let got: Vec<Vec<Vec<u32>>> = collect(4).iter().map(|p| p.rows().to_vec()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn counts_match_known_values() {
        assert_eq!(collect(1).len(), 1);
        assert_eq!(collect(4).len(), 13);
        assert_eq!(collect(6).len(), 48);
    }

    #[test]
    fn all_generated_partitions_are_valid_with_correct_weight() {
        for n in 0..=10u64 {
            let mut seen = std::collections::HashSet::new();
            for p in generate_all(n).unwrap() {
                assert!(p.is_valid(), "invalid output for n = {n}: {:?}", p.rows());
                assert_eq!(p.weight(), n);
                assert!(seen.insert(p), "duplicate emitted for n = {n}");
            }
        }
    }

    #[test]
    fn two_runs_produce_identical_sequences() {
        let a = collect(8);
        let b = collect(8);
        assert_eq!(a, b);
    }

    #[test]
    fn histogram_of_four() {
        let hist = count_by_parts(4).unwrap();
        let as_u64: Vec<u64> = hist.iter().map(|h| h.try_into().unwrap()).collect();
        assert_eq!(as_u64, vec![0, 1, 4, 3, 5]);
    }

    #[test]
    fn histogram_of_one() {
        let hist = count_by_parts(1).unwrap();
        let as_u64: Vec<u64> = hist.iter().map(|h| h.try_into().unwrap()).collect();
        assert_eq!(as_u64, vec![0, 1]);
    }

    #[test]
    fn histogram_cumulative_matches_restricted_count() {
        let hist = count_by_parts(10).unwrap();
        let upto9: u64 = hist[..=9].iter().map(|h| u64::try_from(h).unwrap()).sum();
        assert_eq!(upto9, 458);
    }

    #[test]
    fn parts_bounded_by_weight_with_equality_iff_all_ones() {
        for n in 1..=8u64 {
            for p in generate_all(n).unwrap() {
                assert!(p.parts() as u64 <= p.weight());
                let all_ones = p.rows().iter().all(|r| r.iter().all(|&v| v == 1));
                assert_eq!(p.parts() as u64 == p.weight(), all_ones);
            }
        }
    }

    #[test]
    fn validate_accepts_and_rejects() {
        let ok = PlanePartition::from_rows(vec![vec![2, 1], vec![1]]);
        assert!(ok.is_valid());
        let row_increase = PlanePartition::from_rows(vec![vec![1, 2]]);
        assert!(!row_increase.is_valid());
        let col_increase = PlanePartition::from_rows(vec![vec![1], vec![2]]);
        assert!(!col_increase.is_valid());
        let stored_zero = PlanePartition::from_rows(vec![vec![1, 0]]);
        assert!(!stored_zero.is_valid());
        let widening = PlanePartition::from_rows(vec![vec![1], vec![1, 1]]);
        assert!(!widening.is_valid());
        let empty_row = PlanePartition::from_rows(vec![vec![1], vec![]]);
        assert!(!empty_row.is_valid());
        let empty = PlanePartition::from_rows(vec![]);
        assert!(empty.is_valid());
    }

    #[test]
    fn display_uses_block_format() {
        let p = PlanePartition::from_rows(vec![vec![2, 1], vec![1]]);
        assert_eq!(p.to_string(), "2 1\n1");
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            generate_all(DEFAULT_CEILING + 1),
            Err(Error::CeilingExceeded { .. })
        ));
        assert!(generate_all_with_ceiling(DEFAULT_CEILING + 1, DEFAULT_CEILING + 1).is_ok());
    }

    #[test]
    fn parallel_histogram_is_worker_count_invariant() {
        let serial = count_by_parts(12).unwrap();
        for workers in [1usize, 2, 4, 7] {
            let par =
                count_by_parts_parallel(12, DEFAULT_CEILING, NonZeroUsize::new(workers).unwrap())
                    .unwrap();
            assert_eq!(par, serial, "workers = {workers}");
        }
    }

    #[test]
    fn generator_count_matches_recurrence_through_twelve() {
        for n in 0..=12u64 {
            let count = generate_all(n).unwrap().count();
            assert_eq!(BigUint::from(count), counting::p2d(n), "n = {n}");
        }
    }
}
