//! Exhaustive enumeration of animals by Redelmeier growth.
//!
//! Sites are grown from a root placed at the origin. For unrestricted
//! animals the root is the smallest site in `(y, x)` order, so every cell
//! below it or to its left on the same row is blocked; growth follows king
//! adjacency. For directed animals growth follows the arcs of N only, which
//! enumerates each site set all of whose sites are reachable from the root.
//! Either way every animal is produced exactly once, with no dedup table.

use std::str::FromStr;

use rayon::prelude::*;

use super::{Animal, Site, ARCS};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnimalClass {
    All,
    Directed,
    Half,
    Multi,
}

impl AnimalClass {
    pub fn name(&self) -> &'static str {
        match self {
            AnimalClass::All => "all",
            AnimalClass::Directed => "directed",
            AnimalClass::Half => "half",
            AnimalClass::Multi => "multi",
        }
    }

    pub fn contains(&self, a: &Animal) -> bool {
        match self {
            AnimalClass::All => true,
            AnimalClass::Directed => a.is_directed(),
            AnimalClass::Half => a.left_half_width() == Ok(0),
            AnimalClass::Multi => a.is_multi_directed(),
        }
    }
}

impl FromStr for AnimalClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "all" => Ok(AnimalClass::All),
            "directed" => Ok(AnimalClass::Directed),
            "half" => Ok(AnimalClass::Half),
            "multi" => Ok(AnimalClass::Multi),
            other => Err(format!("unknown animal class '{other}'")),
        }
    }
}

/// Largest area enumerated per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_area_all: usize,
    pub max_area_directed: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_area_all: 10,
            max_area_directed: 12,
        }
    }
}

impl Budget {
    pub fn limit(&self, class: AnimalClass) -> usize {
        match class {
            AnimalClass::All | AnimalClass::Multi => self.max_area_all,
            AnimalClass::Directed | AnimalClass::Half => self.max_area_directed,
        }
    }

    fn check(&self, n: usize, class: AnimalClass) -> Result<()> {
        if n == 0 {
            return Err(Error::ZeroArea);
        }
        let limit = self.limit(class);
        if n > limit {
            return Err(Error::BudgetExceeded {
                requested: n,
                limit,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Growth {
    King,
    Directed,
    Half,
}

/// Padded grid around the root. Abscissas span `-n..=n` and ordinates
/// `-1..=n`, so every neighbor of an allowed cell has a valid index.
struct Grid {
    n: i32,
    width: i32,
    deltas: Vec<isize>,
    blocked: Vec<bool>,
}

impl Grid {
    fn new(n: usize, growth: Growth) -> Grid {
        let n = n as i32;
        let width = 2 * n + 1;
        let height = n + 2;
        let steps: Vec<(i32, i32)> = match growth {
            Growth::King => (-1..=1)
                .flat_map(|dy| (-1..=1).map(move |dx| (dx, dy)))
                .filter(|&d| d != (0, 0))
                .collect(),
            Growth::Directed | Growth::Half => ARCS.to_vec(),
        };
        let deltas = steps
            .iter()
            .map(|&(dx, dy)| (dy * width + dx) as isize)
            .collect();
        let mut blocked = vec![false; (width * height) as usize];
        for y in -1..=n {
            for x in -n..=n {
                let outside = y < 0 || y >= n || x.abs() >= n;
                let before_root = y == 0 && x < 0;
                let left_of_root = matches!(growth, Growth::Half) && x < 0;
                blocked[((y + 1) * width + x + n) as usize] =
                    outside || before_root || left_of_root;
            }
        }
        Grid {
            n,
            width,
            deltas,
            blocked,
        }
    }

    fn index(&self, x: i32, y: i32) -> usize {
        ((y + 1) * self.width + x + self.n) as usize
    }

    fn site(&self, idx: usize) -> Site {
        let idx = idx as i32;
        Site::new(idx % self.width - self.n, idx / self.width - 1)
    }
}

/// One pending piece of the search: the current cells and the untried list.
#[derive(Clone)]
struct Task {
    seen: Vec<bool>,
    cells: Vec<usize>,
    sites: Vec<Site>,
    untried: Vec<usize>,
}

struct Search<'a> {
    grid: &'a Grid,
    max: usize,
}

impl Search<'_> {
    fn root(&self) -> Task {
        let mut seen = self.grid.blocked.clone();
        let root = self.grid.index(0, 0);
        seen[root] = true;
        Task {
            seen,
            cells: Vec::new(),
            sites: Vec::new(),
            untried: vec![root],
        }
    }

    /// Adds `v` to the task's cells and marks its fresh neighbors, returning
    /// them so the caller can unmark them afterwards.
    fn grow(&self, task: &mut Task, v: usize, next: &mut Vec<usize>) -> Vec<usize> {
        task.cells.push(v);
        task.sites.push(self.grid.site(v));
        let mut added = Vec::new();
        if task.cells.len() < self.max {
            for &d in &self.grid.deltas {
                let u = (v as isize + d) as usize;
                if !task.seen[u] {
                    task.seen[u] = true;
                    next.push(u);
                    added.push(u);
                }
            }
        }
        added
    }

    fn run<F: FnMut(&[Site])>(&self, task: &mut Task, mut untried: Vec<usize>, visit: &mut F) {
        while let Some(v) = untried.pop() {
            let mut next = untried.clone();
            let added = self.grow(task, v, &mut next);
            visit(&task.sites);
            if task.cells.len() < self.max {
                self.run(task, next, visit);
            }
            for u in added {
                task.seen[u] = false;
            }
            task.cells.pop();
            task.sites.pop();
        }
    }

    /// Unfolds the first `depth` levels of the search tree into independent
    /// tasks. Site sets met on the way are passed to `visit`.
    fn split<F: FnMut(&[Site])>(&self, depth: usize, visit: &mut F) -> Vec<Task> {
        let mut frontier = vec![self.root()];
        for _ in 0..depth {
            let mut next_frontier = Vec::new();
            for task in frontier {
                let mut untried = task.untried.clone();
                while let Some(v) = untried.pop() {
                    let mut child = task.clone();
                    let mut next = untried.clone();
                    self.grow(&mut child, v, &mut next);
                    visit(&child.sites);
                    if child.cells.len() < self.max {
                        child.untried = next;
                        next_frontier.push(child);
                    }
                }
            }
            frontier = next_frontier;
        }
        frontier
    }

    fn run_task<F: FnMut(&[Site])>(&self, mut task: Task, visit: &mut F) {
        let untried = std::mem::take(&mut task.untried);
        self.run(&mut task, untried, visit);
    }
}

fn growth_for(class: AnimalClass) -> Growth {
    match class {
        AnimalClass::All | AnimalClass::Multi => Growth::King,
        AnimalClass::Directed => Growth::Directed,
        AnimalClass::Half => Growth::Half,
    }
}

/// Calls `visit` once for every animal of area `1..=max_area`, with sites
/// relative to the root (the smallest site in `(y, x)` order at the origin).
pub fn for_each_animal<F: FnMut(&[Site])>(max_area: usize, mut visit: F) {
    if max_area == 0 {
        return;
    }
    let grid = Grid::new(max_area, Growth::King);
    let search = Search {
        grid: &grid,
        max: max_area,
    };
    search.run_task(search.root(), &mut visit);
}

/// Calls `visit` once for every directed animal of area `1..=max_area`, with
/// its source at the origin. With `half_only`, only animals with no site left
/// of the source.
pub fn for_each_directed_animal<F: FnMut(&[Site])>(max_area: usize, half_only: bool, mut visit: F) {
    if max_area == 0 {
        return;
    }
    let growth = if half_only {
        Growth::Half
    } else {
        Growth::Directed
    };
    let grid = Grid::new(max_area, growth);
    let search = Search {
        grid: &grid,
        max: max_area,
    };
    search.run_task(search.root(), &mut visit);
}

const SPLIT_DEPTH: usize = 3;

/// Runs the search for `class` in parallel; `per_task` folds the visits of
/// one task into an accumulator, `merge` combines accumulators.
fn par_search<A, F, M>(max_area: usize, class: AnimalClass, per_task: F, merge: M) -> A
where
    A: Send + Default,
    F: Fn(&mut A, &[Site]) + Sync,
    M: Fn(A, A) -> A + Sync + Send,
{
    let grid = Grid::new(max_area, growth_for(class));
    let search = Search {
        grid: &grid,
        max: max_area,
    };
    let mut head = A::default();
    let tasks = search.split(SPLIT_DEPTH.min(max_area), &mut |s| per_task(&mut head, s));
    let tail = tasks
        .into_par_iter()
        .map(|task| {
            let mut acc = A::default();
            search.run_task(task, &mut |s| per_task(&mut acc, s));
            acc
        })
        .reduce(A::default, &merge);
    merge(head, tail)
}

/// Number of animals of the class for each area; index = area, entry 0 is 0.
pub fn count_animals(max_area: usize, class: AnimalClass) -> Vec<u64> {
    if max_area == 0 {
        return vec![0];
    }
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        if a.len() < b.len() {
            a.resize(b.len(), 0);
        }
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    let mut counts = par_search(
        max_area,
        class,
        |acc: &mut Vec<u64>, sites: &[Site]| {
            let keep = match class {
                AnimalClass::Multi => Animal::new(sites.iter().copied())
                    .expect("search yields connected sets")
                    .is_multi_directed(),
                _ => true,
            };
            if keep {
                if acc.len() <= sites.len() {
                    acc.resize(sites.len() + 1, 0);
                }
                acc[sites.len()] += 1;
            }
        },
        merge,
    );
    counts.resize(max_area + 1, 0);
    counts
}

/// All animals of area `n` in the class, canonical and sorted, within the
/// default resource budget.
pub fn enumerate_animals(n: usize, class: AnimalClass) -> Result<Vec<Animal>> {
    enumerate_animals_with_budget(n, class, Budget::default())
}

pub fn enumerate_animals_with_budget(
    n: usize,
    class: AnimalClass,
    budget: Budget,
) -> Result<Vec<Animal>> {
    budget.check(n, class)?;
    let mut out = par_search(
        n,
        class,
        |acc: &mut Vec<Animal>, sites: &[Site]| {
            if sites.len() == n {
                let a = Animal::new(sites.iter().copied()).expect("search yields connected sets");
                if class != AnimalClass::Multi || a.is_multi_directed() {
                    acc.push(a);
                }
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_animals(1, AnimalClass::All).unwrap().len(), 1);
        assert_eq!(
            enumerate_animals(2, AnimalClass::Directed).unwrap().len(),
            4
        );
        assert_eq!(enumerate_animals(3, AnimalClass::Half).unwrap().len(), 11);
        assert_eq!(enumerate_animals(0, AnimalClass::All), Err(Error::ZeroArea));
        assert!(matches!(
            enumerate_animals(11, AnimalClass::Multi),
            Err(Error::BudgetExceeded { limit: 10, .. })
        ));
    }

    #[test]
    fn king_animal_counts() {
        // Fixed polyplets: 1, 4, 20, 110, 638, 3832.
        assert_eq!(
            count_animals(6, AnimalClass::All),
            vec![0, 1, 4, 20, 110, 638, 3832]
        );
    }

    #[test]
    fn visitor_agrees_with_parallel_count() {
        let mut counts = vec![0u64; 7];
        for_each_animal(6, |s| counts[s.len()] += 1);
        assert_eq!(counts, count_animals(6, AnimalClass::All));
        let mut directed = vec![0u64; 7];
        for_each_directed_animal(6, false, |s| directed[s.len()] += 1);
        assert_eq!(directed, count_animals(6, AnimalClass::Directed));
    }

    #[test]
    fn directed_growth_matches_filtering() {
        for n in 1..=6 {
            let all = enumerate_animals(n, AnimalClass::All).unwrap();
            let directed: Vec<Animal> = all.iter().filter(|a| a.is_directed()).cloned().collect();
            assert_eq!(
                directed,
                enumerate_animals(n, AnimalClass::Directed).unwrap()
            );
            let half: Vec<Animal> = directed
                .iter()
                .filter(|a| a.left_half_width() == Ok(0))
                .cloned()
                .collect();
            assert_eq!(half, enumerate_animals(n, AnimalClass::Half).unwrap());
        }
    }

    #[test]
    fn no_duplicates_and_sorted() {
        let all = enumerate_animals(5, AnimalClass::All).unwrap();
        let set: BTreeSet<&Animal> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn class_parsing() {
        for class in [
            AnimalClass::All,
            AnimalClass::Directed,
            AnimalClass::Half,
            AnimalClass::Multi,
        ] {
            assert_eq!(class.name().parse::<AnimalClass>(), Ok(class));
        }
        assert!("heaps".parse::<AnimalClass>().is_err());
    }
}
