//! Exhaustive generation and counting of heaps of polymers.
//!
//! Heaps are generated in fully fallen form, one level at a time: a level is
//! a set of pairwise non-concurrent polymers, and every polymer above the
//! ground must be concurrent with a polymer of the level below. Inside a
//! window of unit cells, a level is just a bitmask: each maximal run of set
//! cells is one polymer, and runs of a mask never touch.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::heap::{Heap, Piece, Polymer};
use crate::{Error, Result};

/// Largest total length enumerated by [`enumerate_heaps`].
pub const DEFAULT_HEAP_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeapClass {
    /// Every heap spanning at most `n` columns, up to translation.
    All,
    Connected,
    Pyramid,
    HalfPyramid,
    /// Heaps whose polymers all lie inside `[0, k-1]`; not translated.
    WithinStrip(u32),
}

impl fmt::Display for HeapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeapClass::All => f.write_str("all"),
            HeapClass::Connected => f.write_str("connected"),
            HeapClass::Pyramid => f.write_str("pyramid"),
            HeapClass::HalfPyramid => f.write_str("half_pyramid"),
            HeapClass::WithinStrip(k) => write!(f, "within_strip({k})"),
        }
    }
}

impl FromStr for HeapClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(HeapClass::All),
            "connected" => Ok(HeapClass::Connected),
            "pyramid" => Ok(HeapClass::Pyramid),
            "half_pyramid" => Ok(HeapClass::HalfPyramid),
            _ => s
                .strip_prefix("within_strip(")
                .and_then(|rest| rest.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(HeapClass::WithinStrip)
                .ok_or_else(|| format!("unknown heap class '{s}'")),
        }
    }
}

/// A window of `width` unit cells starting at abscissa `lo`.
#[derive(Debug, Clone, Copy)]
struct Window {
    lo: i32,
    width: usize,
}

impl Window {
    fn full_mask(&self) -> u64 {
        if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        }
    }

    /// Cells whose polymers would be concurrent with some polymer of `mask`.
    fn support(&self, mask: u64) -> u64 {
        (mask | mask << 1 | mask >> 1) & self.full_mask()
    }

    fn polymers(&self, mask: u64) -> impl Iterator<Item = Polymer> + '_ {
        runs(mask).map(move |(a, b)| {
            Polymer::new(self.lo + a as i32, self.lo + b as i32).expect("runs are non-empty")
        })
    }

    /// Calls `f(level, length)` for every non-empty level of total length at
    /// most `budget` whose polymers all meet `support` (when given).
    fn for_each_level(&self, support: Option<u64>, budget: usize, f: &mut dyn FnMut(u64, usize)) {
        self.levels_from(0, support, budget, 0, 0, f);
    }

    fn levels_from(
        &self,
        pos: usize,
        support: Option<u64>,
        budget: usize,
        mask: u64,
        len: usize,
        f: &mut dyn FnMut(u64, usize),
    ) {
        for a in pos..self.width {
            let max_b = self.width.min(a + budget - len);
            for b in a + 1..=max_b {
                let run = ((1u64 << (b - a)) - 1) << a;
                if support.is_some_and(|s| s & run == 0) {
                    continue;
                }
                let next = mask | run;
                let next_len = len + b - a;
                f(next, next_len);
                if next_len < budget {
                    self.levels_from(b + 1, support, budget, next, next_len, f);
                }
            }
        }
    }
}

/// Maximal runs of set bits as half-open cell ranges `(a, b)`.
fn runs(mut mask: u64) -> impl Iterator<Item = (usize, usize)> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let a = mask.trailing_zeros() as usize;
        let b = a + (!(mask >> a)).trailing_zeros() as usize;
        mask &= !(((1u64 << (b - a)) - 1) << a);
        Some((a, b))
    })
}

/// What the ground level may look like.
#[derive(Debug, Clone, Copy)]
enum Ground {
    Any,
    /// A single polymer whose leftmost cell is the given one.
    Single(usize),
    /// Any set of polymers whose rightmost one starts at the given cell.
    RightmostAt(usize),
}

impl Ground {
    fn for_each(&self, window: &Window, budget: usize, f: &mut dyn FnMut(u64, usize)) {
        match *self {
            Ground::Any => window.for_each_level(None, budget, f),
            Ground::Single(a) => {
                for b in a + 1..=window.width.min(a + budget) {
                    f(((1u64 << (b - a)) - 1) << a, b - a);
                }
            }
            Ground::RightmostAt(k) => {
                // Cells 0..k-1 may hold anything not touching cell k.
                let left = Window {
                    lo: window.lo,
                    width: k.saturating_sub(1),
                };
                let mut lefts = vec![(0u64, 0usize)];
                left.for_each_level(None, budget, &mut |m, l| lefts.push((m, l)));
                for (m, l) in lefts {
                    Ground::Single(k)
                        .for_each(window, budget - l, &mut |run, rl| f(m | run, l + rl));
                }
            }
        }
    }
}

/// Lists every heap in `window` with the given ground rule and total length
/// exactly `n`, as leveled masks.
fn generate(window: Window, ground: Ground, n: usize, emit: &mut dyn FnMut(&[u64])) {
    fn stack(
        window: &Window,
        levels: &mut Vec<u64>,
        remaining: usize,
        emit: &mut dyn FnMut(&[u64]),
    ) {
        if remaining == 0 {
            emit(levels);
            return;
        }
        let below = *levels.last().expect("ground is placed first");
        let support = window.support(below);
        window.for_each_level(Some(support), remaining, &mut |level, len| {
            levels.push(level);
            stack(window, levels, remaining - len, emit);
            levels.pop();
        });
    }

    if n == 0 {
        emit(&[]);
        return;
    }
    let mut levels = Vec::new();
    ground.for_each(&window, n, &mut |g, len| {
        levels.push(g);
        stack(&window, &mut levels, n - len, emit);
        levels.pop();
    });
}

fn heap_from_levels(window: &Window, levels: &[u64]) -> Heap {
    let pieces = levels
        .iter()
        .enumerate()
        .flat_map(|(lv, &mask)| window.polymers(mask).map(move |p| Piece::new(p, lv as u32)))
        .collect();
    Heap::from_pieces(pieces).expect("generated levels are fully fallen")
}

fn window_for(n: usize, class: HeapClass) -> (Window, Ground) {
    match class {
        HeapClass::All | HeapClass::Connected => (Window { lo: 0, width: n }, Ground::Any),
        HeapClass::Pyramid => (
            Window {
                lo: -(n as i32),
                width: 2 * n,
            },
            Ground::Single(n),
        ),
        HeapClass::HalfPyramid => (Window { lo: 0, width: n }, Ground::Single(0)),
        HeapClass::WithinStrip(k) => (
            Window {
                lo: 0,
                width: (k as usize).saturating_sub(1),
            },
            Ground::Any,
        ),
    }
}

/// Calls `visit` on every heap of the class with total length `n`.
pub fn for_each_heap<F: FnMut(Heap)>(n: usize, class: HeapClass, mut visit: F) {
    let (window, ground) = window_for(n, class);
    generate(window, ground, n, &mut |levels| {
        let h = heap_from_levels(&window, levels);
        let keep = match class {
            HeapClass::All => h.min_left() == Some(0),
            HeapClass::Connected => h.min_left() == Some(0) && h.is_connected(),
            _ => true,
        };
        if keep {
            visit(h);
        }
    });
}

/// All heaps of total length `n` in the class, sorted. Classes other than
/// `WithinStrip` are taken up to translation with minimum left endpoint 0;
/// pyramids have their minimal polymer starting at 0.
pub fn enumerate_heaps(n: usize, class: HeapClass) -> Result<Vec<Heap>> {
    enumerate_heaps_with_limit(n, class, DEFAULT_HEAP_LIMIT)
}

pub fn enumerate_heaps_with_limit(n: usize, class: HeapClass, limit: usize) -> Result<Vec<Heap>> {
    if n == 0 && !matches!(class, HeapClass::WithinStrip(_)) {
        return Err(Error::ZeroArea);
    }
    if n > limit {
        return Err(Error::BudgetExceeded {
            requested: n,
            limit,
        });
    }
    let mut out = Vec::new();
    for_each_heap(n, class, |h| out.push(h));
    out.sort_unstable();
    Ok(out)
}

/// Heaps whose polymers have left endpoints ≥ 0 and whose rightmost minimal
/// polymer starts at `k`, with total length `n`.
pub fn enumerate_a_k_heaps(k: u32, n: usize) -> Vec<Heap> {
    let window = Window {
        lo: 0,
        width: k as usize + n,
    };
    let mut out = Vec::new();
    if n > 0 {
        generate(window, Ground::RightmostAt(k as usize), n, &mut |levels| {
            out.push(heap_from_levels(&window, levels));
        });
    }
    out.sort_unstable();
    out
}

/// Memoized count of the ways to stack further levels on a given top level.
struct StackCounter {
    window: Window,
    max_len: usize,
    memo: HashMap<(u64, usize), Vec<u128>>,
}

impl StackCounter {
    fn new(window: Window, max_len: usize) -> Self {
        assert!(window.width <= 64, "window too wide for a bitmask");
        StackCounter {
            window,
            max_len,
            memo: HashMap::new(),
        }
    }

    /// Entry `m` counts the stacks of total length exactly `m ≤ room` on `top`.
    fn above(&mut self, top: u64, room: usize) -> Vec<u128> {
        if let Some(v) = self.memo.get(&(top, room)) {
            return v.clone();
        }
        let mut out = vec![0u128; room + 1];
        out[0] = 1;
        if room > 0 {
            let mut levels = Vec::new();
            self.window
                .for_each_level(Some(self.window.support(top)), room, &mut |m, l| {
                    levels.push((m, l))
                });
            for (level, len) in levels {
                let sub = self.above(level, room - len);
                for (m, c) in sub.iter().enumerate() {
                    out[m + len] += c;
                }
            }
        }
        self.memo.insert((top, room), out.clone());
        out
    }

    fn count(&mut self, ground: Ground) -> Vec<u128> {
        let mut grounds = Vec::new();
        ground.for_each(&self.window, self.max_len, &mut |g, l| grounds.push((g, l)));
        let mut total = vec![0u128; self.max_len + 1];
        for (g, len) in grounds {
            let sub = self.above(g, self.max_len - len);
            for (m, c) in sub.iter().enumerate() {
                total[m + len] += c;
            }
        }
        total
    }
}

/// Number of heaps with every polymer inside `[0, k-1]`, by total length
/// `0..=max_len` (the empty heap counts once at length 0).
pub fn count_strip_heaps(k: u32, max_len: usize) -> Vec<u128> {
    let (window, _) = window_for(max_len, HeapClass::WithinStrip(k));
    let mut counts = StackCounter::new(window, max_len).count(Ground::Any);
    counts[0] += 1;
    counts
}

/// Number of heaps counted by [`enumerate_a_k_heaps`], by total length
/// `0..=max_len`.
pub fn count_a_k_heaps(k: u32, max_len: usize) -> Vec<u128> {
    let window = Window {
        lo: 0,
        width: k as usize + max_len,
    };
    StackCounter::new(window, max_len).count(Ground::RightmostAt(k as usize))
}
