//! The projection of animals onto heaps and its two inverses.
//!
//! Projecting sends each segment `{(i,k),…,(j-1,k)}` of an animal to the
//! polymer `[i,j]` and stacks these polymers in increasing height order. It
//! restricts to a bijection from directed animals to pyramids, and from
//! multi-directed animals to connected heaps.

mod heaps;
mod nordic;

use crate::animal::{Animal, Site};
use crate::heap::{Heap, Piece, Polymer};
use crate::{Error, Result};

pub use heaps::{
    count_a_k_heaps, count_strip_heaps, enumerate_a_k_heaps, enumerate_heaps,
    enumerate_heaps_with_limit, for_each_heap, HeapClass, DEFAULT_HEAP_LIMIT,
};
pub use nordic::{nordic_compose, nordic_decompose, NordicQuadruple};

/// Heap of the segment projections, in increasing height order.
pub fn project(a: &Animal) -> Heap {
    // Segments come sorted by (y, xmin); equal heights never overlap, so the
    // order within a row is irrelevant.
    Heap::from_sequence(
        a.segments()
            .iter()
            .map(|s| Polymer::new(s.xmin, s.xmax + 1).expect("segments are non-empty")),
    )
    .canonical_translate()
}

fn segment_sites(polymer: Polymer, y: i32) -> impl Iterator<Item = Site> {
    (polymer.left()..polymer.right()).map(move |x| Site::new(x, y))
}

/// The directed animal projecting onto a pyramid: each piece becomes a
/// segment at the height of its level.
pub fn animal_from_pyramid(p: &Heap) -> Result<Animal> {
    if !p.is_pyramid() {
        return Err(Error::NotPyramid);
    }
    Animal::new(
        p.pieces()
            .iter()
            .flat_map(|piece| segment_sites(piece.polymer, piece.level as i32)),
    )
}

/// The multi-directed animal projecting onto a connected heap. Maximal
/// polymers are peeled off highest level first, rightmost on ties.
pub fn animal_from_connected_heap(c: &Heap) -> Result<Animal> {
    animal_from_connected_heap_with(c, |maximal| {
        (0..maximal.len())
            .max_by_key(|&i| (maximal[i].level, maximal[i].polymer.left()))
            .expect("a non-empty heap has a maximal piece")
    })
}

/// Same as [`animal_from_connected_heap`] with the maximal polymer removed
/// at each step chosen by `choose` (an index into the maximal pieces).
pub fn animal_from_connected_heap_with<F>(c: &Heap, mut choose: F) -> Result<Animal>
where
    F: FnMut(&[Piece]) -> usize,
{
    if !c.is_connected() {
        return Err(Error::NotConnected);
    }
    let placed = place_segments(c, &mut choose);
    Animal::new(
        placed
            .into_iter()
            .flat_map(|(polymer, y)| segment_sites(polymer, y)),
    )
}

/// Assigns an ordinate to every polymer of a connected heap. Removing a
/// maximal polymer β splits the rest into components; each is built
/// recursively and shifted so that its highest segment concurrent with β sits
/// right below β, which is what makes the component touch β's segment.
fn place_segments<F>(c: &Heap, choose: &mut F) -> Vec<(Polymer, i32)>
where
    F: FnMut(&[Piece]) -> usize,
{
    if c.len() == 1 {
        return vec![(c.pieces()[0].polymer, 0)];
    }
    let maximal = c.maximal_pieces();
    let beta = maximal[choose(&maximal)];
    let rest = c.remove_maximal(&beta).expect("beta is maximal");
    let mut placed = Vec::with_capacity(c.len());
    for component in rest.components() {
        let sub = place_segments(&component, choose);
        let touching = sub
            .iter()
            .filter(|(p, _)| p.is_concurrent(&beta.polymer))
            .map(|&(_, y)| y)
            .max()
            .expect("beta is concurrent with every component");
        placed.extend(sub.into_iter().map(|(p, y)| (p, y - touching - 1)));
    }
    placed.push((beta.polymer, 0));
    placed
}
