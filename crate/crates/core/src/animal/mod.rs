//! Animals on the lattice N.
//!
//! An animal is a finite set of sites of Z² that is connected for king-move
//! adjacency (the symmetrization of the arcs of N). Values are kept in a
//! canonical translate with minimum abscissa and ordinate 0, sites sorted by
//! `(y, x)`.

mod enumerate;

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use enumerate::{
    count_animals, enumerate_animals, enumerate_animals_with_budget, for_each_animal,
    for_each_directed_animal, AnimalClass, Budget,
};

/// Arcs of the lattice N.
pub const ARCS: [(i32, i32); 5] = [(-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Site {
    pub x: i32,
    pub y: i32,
}

impl Site {
    pub const fn new(x: i32, y: i32) -> Self {
        Site { x, y }
    }

    fn is_king_adjacent(&self, other: &Site) -> bool {
        *self != *other && (self.x - other.x).abs() <= 1 && (self.y - other.y).abs() <= 1
    }
}

impl Ord for Site {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Site {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A maximal run of horizontally consecutive sites, `xmin..=xmax` at
/// ordinate `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub y: i32,
    pub xmin: i32,
    pub xmax: i32,
}

impl Segment {
    pub fn site_count(&self) -> u32 {
        (self.xmax - self.xmin + 1) as u32
    }
}

/// Ordinate of the lowest site in each column; `None` stands for +∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottomProfile {
    values: Vec<i32>,
}

impl BottomProfile {
    pub fn at(&self, x: i32) -> Option<i32> {
        usize::try_from(x)
            .ok()
            .and_then(|i| self.values.get(i).copied())
    }

    /// Values on the occupied columns `0..width`.
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// Maximal runs `(first column, last column)` of equal values, together
    /// with whether the run is a local minimum and whether it is a local
    /// maximum. Outside the occupied columns the profile is +∞, so boundary
    /// runs can be minima but never maxima.
    fn runs(&self) -> Vec<(usize, usize, bool, bool)> {
        let b = &self.values;
        let mut out = Vec::new();
        let mut i = 0;
        while i < b.len() {
            let mut j = i;
            while j + 1 < b.len() && b[j + 1] == b[i] {
                j += 1;
            }
            let left = if i == 0 { None } else { Some(b[i - 1]) };
            let right = b.get(j + 1).copied();
            let above = |v: Option<i32>| v.is_none_or(|v| v > b[i]);
            let below = |v: Option<i32>| v.is_some_and(|v| v < b[i]);
            out.push((
                i,
                j,
                above(left) && above(right),
                below(left) && below(right),
            ));
            i = j + 1;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<[i32; 2]>", try_from = "Vec<[i32; 2]>")]
pub struct Animal {
    sites: Vec<Site>,
}

impl Animal {
    /// Builds the canonical translate of a king-connected site set.
    /// Duplicate sites are merged.
    pub fn new<I>(sites: I) -> Result<Animal>
    where
        I: IntoIterator<Item = Site>,
    {
        let mut sites: Vec<Site> = sites.into_iter().collect();
        if sites.is_empty() {
            return Err(Error::InvalidAnimal("no sites".into()));
        }
        let min_x = sites.iter().map(|s| s.x).min().unwrap_or(0);
        let min_y = sites.iter().map(|s| s.y).min().unwrap_or(0);
        for s in &mut sites {
            s.x -= min_x;
            s.y -= min_y;
        }
        sites.sort_unstable();
        sites.dedup();
        let seen = bfs(sites.len(), &[0], &[], |u, push| {
            for (v, s) in sites.iter().enumerate() {
                if s.is_king_adjacent(&sites[u]) {
                    push(v);
                }
            }
        });
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidAnimal("sites are not connected".into()));
        }
        let animal = Animal { sites };
        debug_assert!({
            let mut xs: Vec<i32> = animal.sites.iter().map(|s| s.x).collect();
            xs.sort_unstable();
            xs.dedup();
            xs.len() as i32 == xs.last().map_or(0, |m| m + 1)
        });
        Ok(animal)
    }

    pub fn from_coords(coords: &[(i32, i32)]) -> Result<Animal> {
        Animal::new(coords.iter().map(|&(x, y)| Site::new(x, y)))
    }

    /// Sites sorted by `(y, x)`.
    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn area(&self) -> usize {
        self.sites.len()
    }

    /// Number of occupied columns.
    pub fn width(&self) -> u32 {
        self.sites
            .iter()
            .map(|s| s.x)
            .max()
            .map_or(0, |m| m as u32 + 1)
    }

    pub fn contains(&self, site: &Site) -> bool {
        self.index_of(site).is_some()
    }

    fn index_of(&self, site: &Site) -> Option<usize> {
        self.sites.binary_search(site).ok()
    }

    pub fn segments(&self) -> Vec<Segment> {
        let mut out: Vec<Segment> = Vec::new();
        for s in &self.sites {
            match out.last_mut() {
                Some(seg) if seg.y == s.y && seg.xmax + 1 == s.x => seg.xmax = s.x,
                _ => out.push(Segment {
                    y: s.y,
                    xmin: s.x,
                    xmax: s.x,
                }),
            }
        }
        out
    }

    pub fn bottom_profile(&self) -> BottomProfile {
        let mut values = vec![i32::MAX; self.width() as usize];
        for s in &self.sites {
            let v = &mut values[s.x as usize];
            *v = (*v).min(s.y);
        }
        BottomProfile { values }
    }

    /// Leftmost sites of the local-minimum runs of the bottom profile.
    pub fn sources(&self) -> Vec<Site> {
        self.extrema(true)
    }

    /// Leftmost sites of the local-maximum runs of the bottom profile.
    pub fn keystones(&self) -> Vec<Site> {
        self.extrema(false)
    }

    fn extrema(&self, minima: bool) -> Vec<Site> {
        let profile = self.bottom_profile();
        profile
            .runs()
            .into_iter()
            .filter(|&(_, _, is_min, is_max)| if minima { is_min } else { is_max })
            .map(|(i, _, _, _)| Site::new(i as i32, profile.values[i]))
            .collect()
    }

    fn out_neighbors(&self, u: usize, push: &mut dyn FnMut(usize)) {
        let s = self.sites[u];
        for (dx, dy) in ARCS {
            if let Some(v) = self.index_of(&Site::new(s.x + dx, s.y + dy)) {
                push(v);
            }
        }
    }

    /// Sites reached from `start` by directed paths of N staying inside the
    /// animal, sorted.
    pub fn reachable_from(&self, start: &Site) -> Result<Vec<Site>> {
        let s = self.index_of(start).ok_or(Error::SiteNotInAnimal {
            x: start.x,
            y: start.y,
        })?;
        let seen = bfs(self.area(), &[s], &[], |u, push| {
            self.out_neighbors(u, push)
        });
        Ok(self.select(&seen))
    }

    fn select(&self, mask: &[bool]) -> Vec<Site> {
        self.sites
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(s, _)| *s)
            .collect()
    }

    /// The leftmost site of the bottommost segment.
    pub fn source(&self) -> Site {
        self.sites[0]
    }

    pub fn is_directed(&self) -> bool {
        let seen = bfs(self.area(), &[0], &[], |u, push| {
            self.out_neighbors(u, push)
        });
        seen.iter().all(|&s| s)
    }

    /// Distance from the source column to the leftmost column.
    pub fn left_half_width(&self) -> Result<u32> {
        if !self.is_directed() {
            return Err(Error::NotDirected);
        }
        Ok(self.source().x as u32)
    }

    /// Every site is fed by some source, and every keystone is fed by a
    /// source on each side through paths avoiding the other keystones at the
    /// keystone's ordinate.
    pub fn is_multi_directed(&self) -> bool {
        let idx = |s: &Site| self.index_of(s).expect("extremum is a site");
        let sources: Vec<Site> = self.sources();
        let keystones: Vec<Site> = self.keystones();

        let all_sources: Vec<usize> = sources.iter().map(idx).collect();
        let fed = bfs(self.area(), &all_sources, &[], |u, push| {
            self.out_neighbors(u, push)
        });
        if fed.iter().any(|&f| !f) {
            return false;
        }

        keystones.iter().all(|t| {
            let target = idx(t);
            let forbidden: Vec<usize> = keystones
                .iter()
                .filter(|k| k.y == t.y && *k != t)
                .map(idx)
                .collect();
            let reaches = |side: &dyn Fn(&Site) -> bool| {
                let starts: Vec<usize> = sources.iter().filter(|s| side(s)).map(idx).collect();
                !starts.is_empty()
                    && bfs(self.area(), &starts, &forbidden, |u, push| {
                        self.out_neighbors(u, push)
                    })[target]
            };
            reaches(&|s: &Site| s.x < t.x) && reaches(&|s: &Site| s.x > t.x)
        })
    }
}

impl fmt::Display for Animal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl From<Animal> for Vec<[i32; 2]> {
    fn from(a: Animal) -> Self {
        a.sites.iter().map(|s| [s.x, s.y]).collect()
    }
}

impl TryFrom<Vec<[i32; 2]>> for Animal {
    type Error = Error;

    fn try_from(pairs: Vec<[i32; 2]>) -> Result<Animal> {
        Animal::new(pairs.into_iter().map(|[x, y]| Site::new(x, y)))
    }
}

/// Breadth-first search over indices `0..len`. `blocked` vertices are never
/// entered unless they are start vertices.
fn bfs<F>(len: usize, start: &[usize], blocked: &[usize], mut next: F) -> Vec<bool>
where
    F: FnMut(usize, &mut dyn FnMut(usize)),
{
    let mut closed = vec![false; len];
    for &b in blocked {
        closed[b] = true;
    }
    let mut seen = vec![false; len];
    let mut queue = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        next(u, &mut |v| {
            if !seen[v] && !closed[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        });
    }
    seen
}
