//! Polymers and heaps of polymers.
//!
//! A heap is a finite sequence of polymers taken up to commutation of
//! non-concurrent polymers. We store it in its fully fallen form: every piece
//! carries the level it reaches when the sequence is dropped one polymer at a
//! time, and pieces are sorted by `(level, left, right)`. Two sequences give
//! equal [`Heap`] values exactly when they are equal up to commutation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A closed integer interval `[left, right]` with `right > left`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polymer {
    left: i32,
    right: i32,
}

impl Polymer {
    pub fn new(left: i32, right: i32) -> Result<Self> {
        if right > left {
            Ok(Polymer { left, right })
        } else {
            Err(Error::InvalidPolymer { left, right })
        }
    }

    /// The polymer `[x, x + 1]`.
    pub fn unit(x: i32) -> Self {
        Polymer {
            left: x,
            right: x + 1,
        }
    }

    pub fn left(&self) -> i32 {
        self.left
    }

    pub fn right(&self) -> i32 {
        self.right
    }

    pub fn length(&self) -> u32 {
        (self.right - self.left) as u32
    }

    /// Intervals that intersect, even in a single point, are concurrent.
    pub fn is_concurrent(&self, other: &Polymer) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }

    pub fn translate(&self, dx: i32) -> Polymer {
        Polymer {
            left: self.left + dx,
            right: self.right + dx,
        }
    }
}

impl fmt::Display for Polymer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.left, self.right)
    }
}

pub fn concurrent(p: &Polymer, q: &Polymer) -> bool {
    p.is_concurrent(q)
}

/// A polymer placed at a level of a heap. Inside a heap, a piece is
/// identified by this pair: concurrent polymers never share a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    // Field order gives the canonical (level, left, right) ordering.
    pub level: u32,
    pub polymer: Polymer,
}

impl Piece {
    pub fn new(polymer: Polymer, level: u32) -> Self {
        Piece { level, polymer }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.polymer, self.level)
    }
}

/// A heap of polymers in canonical leveled form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<[i32; 3]>", try_from = "Vec<[i32; 3]>")]
pub struct Heap {
    pieces: Vec<Piece>,
}

impl Heap {
    pub fn empty() -> Self {
        Heap::default()
    }

    /// Drops the polymers one after the other. A polymer lands on level 0 if
    /// no earlier polymer is concurrent to it, otherwise one above the highest
    /// earlier concurrent polymer.
    pub fn from_sequence<I>(seq: I) -> Heap
    where
        I: IntoIterator<Item = Polymer>,
    {
        let mut pieces: Vec<Piece> = Vec::new();
        for polymer in seq {
            let level = pieces
                .iter()
                .filter(|p| p.polymer.is_concurrent(&polymer))
                .map(|p| p.level + 1)
                .max()
                .unwrap_or(0);
            pieces.push(Piece::new(polymer, level));
        }
        pieces.sort_unstable();
        Heap { pieces }
    }

    /// Builds a heap from explicitly leveled pieces, checking that they form
    /// a fully fallen configuration.
    pub fn from_pieces(mut pieces: Vec<Piece>) -> Result<Heap> {
        pieces.sort_unstable();
        for (i, a) in pieces.iter().enumerate() {
            for b in &pieces[i + 1..] {
                if a.level == b.level && a.polymer.is_concurrent(&b.polymer) {
                    return Err(Error::InvalidHeap(format!(
                        "concurrent pieces {a} and {b} share a level"
                    )));
                }
            }
            if a.level > 0
                && !pieces
                    .iter()
                    .any(|b| b.level + 1 == a.level && b.polymer.is_concurrent(&a.polymer))
            {
                return Err(Error::InvalidHeap(format!("piece {a} is not supported")));
            }
        }
        Ok(Heap { pieces })
    }

    /// Pieces in canonical order. Read as a sequence of polymers, this is a
    /// linearization of the heap.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn polymers(&self) -> impl Iterator<Item = Polymer> + '_ {
        self.pieces.iter().map(|p| p.polymer)
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, piece: &Piece) -> bool {
        self.pieces.binary_search(piece).is_ok()
    }

    pub fn total_length(&self) -> u32 {
        self.pieces.iter().map(|p| p.polymer.length()).sum()
    }

    pub fn height(&self) -> u32 {
        self.pieces.last().map_or(0, |p| p.level + 1)
    }

    pub fn min_left(&self) -> Option<i32> {
        self.pieces.iter().map(|p| p.polymer.left).min()
    }

    pub fn max_right(&self) -> Option<i32> {
        self.pieces.iter().map(|p| p.polymer.right).max()
    }

    /// Length of the smallest interval containing every polymer.
    pub fn width(&self) -> u32 {
        match (self.min_left(), self.max_right()) {
            (Some(l), Some(r)) => (r - l) as u32,
            _ => 0,
        }
    }

    /// Drops `other` on top of `self`.
    pub fn product(&self, other: &Heap) -> Heap {
        Heap::from_sequence(self.polymers().chain(other.polymers()))
    }

    /// Pushing `piece` factors the heap as `(rest, pyramid)` where the pyramid
    /// is everything lying above `piece` through chains of concurrent pieces,
    /// with `piece` as its unique minimal polymer.
    pub fn push(&self, piece: &Piece) -> Result<(Heap, Heap)> {
        let start = self
            .pieces
            .binary_search(piece)
            .map_err(|_| Error::UnknownPiece(piece.to_string()))?;
        let mut above = vec![false; self.pieces.len()];
        above[start] = true;
        // Pieces are sorted by level and dependence only points upwards, so a
        // single forward sweep closes the upper set.
        for i in start + 1..self.pieces.len() {
            let candidate = &self.pieces[i];
            above[i] = (start..i).any(|j| {
                above[j]
                    && self.pieces[j].level < candidate.level
                    && self.pieces[j].polymer.is_concurrent(&candidate.polymer)
            });
        }
        let rest = self
            .pieces
            .iter()
            .zip(&above)
            .filter(|(_, &a)| !a)
            .map(|(p, _)| p.polymer);
        let pyramid = self
            .pieces
            .iter()
            .zip(&above)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.polymer);
        Ok((Heap::from_sequence(rest), Heap::from_sequence(pyramid)))
    }

    /// The pieces lying on the ground, sorted by left endpoint.
    pub fn minimal_pieces(&self) -> Vec<Piece> {
        // Level-0 pieces are pairwise disjoint, so canonical order is
        // already left to right.
        self.pieces
            .iter()
            .take_while(|p| p.level == 0)
            .copied()
            .collect()
    }

    /// Pieces with nothing concurrent above them, sorted by left endpoint.
    pub fn maximal_pieces(&self) -> Vec<Piece> {
        let mut out: Vec<Piece> = self
            .pieces
            .iter()
            .filter(|p| {
                !self
                    .pieces
                    .iter()
                    .any(|q| q.level > p.level && q.polymer.is_concurrent(&p.polymer))
            })
            .copied()
            .collect();
        out.sort_by_key(|p| (p.polymer, p.level));
        out
    }

    pub fn is_pyramid(&self) -> bool {
        self.pieces.iter().filter(|p| p.level == 0).count() == 1
    }

    /// A pyramid with no polymer sticking out to the left of its minimal
    /// polymer.
    pub fn is_half_pyramid(&self) -> bool {
        self.is_pyramid() && self.min_left() == Some(self.pieces[0].polymer.left)
    }

    /// True when the union of the polymers is a single interval. The empty
    /// heap is not connected.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.component_spans().len() == 1
    }

    /// Left half-width of a pyramid: how far the heap extends to the left of
    /// its minimal polymer.
    pub fn left_half_width(&self) -> Result<u32> {
        if !self.is_pyramid() {
            return Err(Error::NotPyramid);
        }
        let origin = self.pieces[0].polymer.left;
        let min = self.min_left().unwrap_or(origin);
        Ok((origin - min) as u32)
    }

    pub fn translate(&self, dx: i32) -> Heap {
        Heap {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.polymer.translate(dx), p.level))
                .collect(),
        }
    }

    /// Horizontal translate putting the minimum left endpoint at 0.
    pub fn canonical_translate(&self) -> Heap {
        match self.min_left() {
            Some(min) if min != 0 => self.translate(-min),
            _ => self.clone(),
        }
    }

    /// The maximal intervals covered by the union of the polymers, left to
    /// right. Touching polymers merge.
    pub fn component_spans(&self) -> Vec<(i32, i32)> {
        let mut intervals: Vec<(i32, i32)> = self
            .pieces
            .iter()
            .map(|p| (p.polymer.left, p.polymer.right))
            .collect();
        intervals.sort_unstable();
        let mut spans: Vec<(i32, i32)> = Vec::new();
        for (l, r) in intervals {
            match spans.last_mut() {
                Some(last) if l <= last.1 => last.1 = last.1.max(r),
                _ => spans.push((l, r)),
            }
        }
        spans
    }

    /// Connected components, left to right. Pieces of distinct components are
    /// never concurrent, so each component keeps its levels.
    pub fn components(&self) -> Vec<Heap> {
        let spans = self.component_spans();
        let mut buckets: Vec<Vec<Piece>> = vec![Vec::new(); spans.len()];
        for piece in &self.pieces {
            let idx = spans
                .partition_point(|&(_, r)| r < piece.polymer.left)
                .min(spans.len() - 1);
            buckets[idx].push(*piece);
        }
        buckets
            .into_iter()
            .map(|pieces| Heap::from_sequence(pieces.into_iter().map(|p| p.polymer)))
            .collect()
    }

    /// Removes a maximal piece; the remaining pieces keep their levels.
    pub fn remove_maximal(&self, piece: &Piece) -> Result<Heap> {
        let (rest, top) = self.push(piece)?;
        if top.len() != 1 {
            return Err(Error::InvalidHeap(format!("piece {piece} is not maximal")));
        }
        Ok(rest)
    }
}

pub fn heap_from_sequence<I>(seq: I) -> Heap
where
    I: IntoIterator<Item = Polymer>,
{
    Heap::from_sequence(seq)
}

pub fn product(h1: &Heap, h2: &Heap) -> Heap {
    h1.product(h2)
}

pub fn push(h: &Heap, piece: &Piece) -> Result<(Heap, Heap)> {
    h.push(piece)
}

impl fmt::Display for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl From<Heap> for Vec<[i32; 3]> {
    fn from(h: Heap) -> Self {
        h.pieces
            .iter()
            .map(|p| [p.polymer.left, p.polymer.right, p.level as i32])
            .collect()
    }
}

impl TryFrom<Vec<[i32; 3]>> for Heap {
    type Error = Error;

    fn try_from(triples: Vec<[i32; 3]>) -> Result<Heap> {
        let pieces = triples
            .into_iter()
            .map(|[l, r, level]| {
                let level = u32::try_from(level)
                    .map_err(|_| Error::InvalidHeap(format!("negative level {level}")))?;
                Ok(Piece::new(Polymer::new(l, r)?, level))
            })
            .collect::<Result<Vec<_>>>()?;
        Heap::from_pieces(pieces)
    }
}
