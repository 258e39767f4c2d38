//! Nordic decomposition of connected heaps that are not pyramids.
//!
//! Pushing the rightmost minimal polymer α of such a heap `C` splits it as
//! `C = C'·P` with `P` a pyramid. `C1` is the leftmost connected component
//! of `C'` and `H` the product of the others. With `C` translated so that the
//! rightmost column of `C1` is `[-2,-1]`, α reads `[k, j]`, `H` lies inside
//! `[0, k-1]` and `P` has left half-width greater than `k`.

use serde::{Deserialize, Serialize};

use crate::heap::Heap;
use crate::{Error, Result};

/// `(c1, k, h, p)` in the coordinates of the recomposed heap: `c1` has
/// maximum right endpoint −1, `h` lies in `[0, k-1]`, and the minimal polymer
/// of `p` starts at `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NordicQuadruple {
    pub c1: Heap,
    pub k: u32,
    pub h: Heap,
    pub p: Heap,
}

impl NordicQuadruple {
    /// Checks the quadruple conditions; `c1` and `p` may be given in any
    /// horizontal position.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidQuadruple(msg));
        if !self.c1.is_connected() {
            return bad("c1 must be a non-empty connected heap".into());
        }
        if !self.p.is_pyramid() {
            return bad("p must be a pyramid".into());
        }
        let lw = self.p.left_half_width()?;
        if lw <= self.k {
            return bad(format!(
                "p has left half-width {lw}, needs more than k = {}",
                self.k
            ));
        }
        if let Some(piece) = self
            .h
            .pieces()
            .iter()
            .find(|piece| piece.polymer.left() < 0 || piece.polymer.right() > self.k as i32 - 1)
        {
            return bad(format!(
                "h polymer {} lies outside [0, {}]",
                piece.polymer,
                self.k as i32 - 1
            ));
        }
        Ok(())
    }

    /// The same quadruple with `c1` and `p` moved to their recomposition
    /// positions.
    pub fn normalized(&self) -> NordicQuadruple {
        let c1 = match self.c1.max_right() {
            Some(r) => self.c1.translate(-1 - r),
            None => self.c1.clone(),
        };
        let p = match self.p.pieces().first() {
            Some(base) => self.p.translate(self.k as i32 - base.polymer.left()),
            None => self.p.clone(),
        };
        NordicQuadruple {
            c1,
            k: self.k,
            h: self.h.clone(),
            p,
        }
    }
}

pub fn nordic_decompose(c: &Heap) -> Result<NordicQuadruple> {
    if !c.is_connected() {
        return Err(Error::NotConnected);
    }
    if c.is_pyramid() {
        return Err(Error::IsPyramid);
    }
    let alpha = *c
        .minimal_pieces()
        .last()
        .expect("a connected heap has a minimal piece");
    let (rest, pyramid) = c.push(&alpha)?;
    let mut components = rest.components().into_iter();
    let c1 = components
        .next()
        .expect("a non-pyramid has pieces left of alpha");
    let shift = -1 - c1.max_right().expect("c1 is non-empty");
    let h = components
        .fold(Heap::empty(), |acc, comp| acc.product(&comp))
        .translate(shift);
    let k = alpha.polymer.left() + shift;
    debug_assert!(k >= 0);
    Ok(NordicQuadruple {
        c1: c1.translate(shift),
        k: k as u32,
        h,
        p: pyramid.translate(shift),
    })
}

/// Inverse of [`nordic_decompose`]: `C = C1·H·P` once `c1` and `p` are put in
/// place. The result is translated so its minimum left endpoint is 0.
pub fn nordic_compose(q: &NordicQuadruple) -> Result<Heap> {
    q.validate()?;
    let q = q.normalized();
    Ok(q.c1.product(&q.h).product(&q.p).canonical_translate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::Polymer;

    fn heap(seq: &[(i32, i32)]) -> Heap {
        Heap::from_sequence(seq.iter().map(|&(l, r)| Polymer::new(l, r).unwrap()))
    }

    #[test]
    fn smallest_decomposition() {
        let c = heap(&[(0, 1), (2, 3), (1, 2)]);
        let q = nordic_decompose(&c).unwrap();
        assert_eq!(q.c1, heap(&[(-2, -1)]));
        assert_eq!(q.k, 0);
        assert!(q.h.is_empty());
        assert_eq!(q.p, heap(&[(0, 1), (-1, 0)]));
        assert_eq!(q.p.left_half_width(), Ok(1));
        assert_eq!(nordic_compose(&q).unwrap(), c);
    }

    #[test]
    fn gap_holds_h() {
        // C1 = [0,1], H = [3,4] in the gap, alpha = [5,6], bridge [1,5] above.
        let c = heap(&[(0, 1), (3, 4), (5, 6), (0, 6)]);
        let q = nordic_decompose(&c).unwrap();
        assert_eq!(q.k, 3);
        assert_eq!(q.h, heap(&[(1, 2)]));
        assert_eq!(q.c1, heap(&[(-2, -1)]));
        assert_eq!(nordic_compose(&q).unwrap(), c);
    }

    #[test]
    fn two_ground_pieces_and_empty_gap() {
        let c = heap(&[(0, 2), (3, 4), (1, 3), (2, 5)]);
        let q = nordic_decompose(&c).unwrap();
        assert_eq!(q.k, 0);
        assert!(q.h.is_empty());
    }

    #[test]
    fn compose_smallest_case() {
        let q = NordicQuadruple {
            c1: heap(&[(7, 8)]),
            k: 0,
            h: Heap::empty(),
            p: heap(&[(10, 11), (9, 10)]),
        };
        let c = nordic_compose(&q).unwrap();
        assert_eq!(c.total_length(), 3);
        assert!(c.is_connected());
        assert_eq!(c.minimal_pieces().len(), 2);
        assert_eq!(nordic_decompose(&c).unwrap(), q.normalized());
    }

    #[test]
    fn rejects_invalid_quadruples() {
        let p = heap(&[(0, 1), (-1, 0)]);
        let narrow = NordicQuadruple {
            c1: heap(&[(0, 1)]),
            k: 1,
            h: Heap::empty(),
            p: p.clone(),
        };
        assert!(matches!(
            nordic_compose(&narrow),
            Err(Error::InvalidQuadruple(_))
        ));
        let crowded = NordicQuadruple {
            c1: heap(&[(0, 1)]),
            k: 0,
            h: heap(&[(0, 1)]),
            p,
        };
        assert!(matches!(
            nordic_compose(&crowded),
            Err(Error::InvalidQuadruple(_))
        ));
        let not_pyramid = NordicQuadruple {
            c1: heap(&[(0, 1)]),
            k: 0,
            h: Heap::empty(),
            p: heap(&[(0, 1), (2, 3)]),
        };
        assert!(nordic_compose(&not_pyramid).is_err());
    }

    #[test]
    fn decompose_rejects_pyramids_and_disconnected() {
        assert_eq!(
            nordic_decompose(&heap(&[(0, 2), (1, 3)])),
            Err(Error::IsPyramid)
        );
        assert_eq!(
            nordic_decompose(&heap(&[(0, 1), (2, 3)])),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn json_shape() {
        let q = nordic_decompose(&heap(&[(0, 1), (2, 3), (1, 2)])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&q).unwrap();
        assert_eq!(v["k"], 0);
        assert_eq!(v["c1"], serde_json::json!([[-2, -1, 0]]));
        assert_eq!(v["h"], serde_json::json!([]));
        assert_eq!(v["p"], serde_json::json!([[0, 1, 0], [-1, 0, 1]]));
    }
}
