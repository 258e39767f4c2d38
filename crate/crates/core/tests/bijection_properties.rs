use polymer_heaps::animal::{enumerate_animals, AnimalClass};
use polymer_heaps::bijection::{
    animal_from_connected_heap, animal_from_connected_heap_with, animal_from_pyramid,
    enumerate_heaps, for_each_heap, nordic_compose, nordic_decompose, project, HeapClass,
    NordicQuadruple,
};
use polymer_heaps::heap::Heap;
use polymer_heaps::Error;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn projections_preserve_area_and_shape() {
    for n in 1..=6 {
        for a in enumerate_animals(n, AnimalClass::All).unwrap() {
            let h = project(&a);
            assert_eq!(h.total_length() as usize, a.area());
            assert_eq!(h.len(), a.segments().len());
            assert_eq!(h.width(), a.width());
            assert_eq!(h.min_left(), Some(0));
            // Projection is only injective on multi-directed animals: the
            // two area-5 rings project onto pyramids too.
            if a.is_directed() {
                assert!(h.is_pyramid(), "{a:?}");
            } else if h.is_pyramid() {
                assert_ne!(animal_from_pyramid(&h).unwrap(), a);
            }
            if a.is_multi_directed() {
                assert!(h.is_connected(), "{a:?}");
            } else if h.is_connected() {
                assert_ne!(animal_from_connected_heap(&h).unwrap(), a);
            }
        }
    }
}

#[test]
fn pyramids_round_trip() {
    for n in 1..=7 {
        for p in enumerate_heaps(n, HeapClass::Pyramid).unwrap() {
            let a = animal_from_pyramid(&p).unwrap();
            assert!(a.is_directed());
            assert_eq!(project(&a), p.canonical_translate());
            assert_eq!(a.left_half_width(), p.left_half_width());
        }
    }
}

#[test]
fn reconstruction_ignores_random_choices() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in 1..=7 {
        for c in enumerate_heaps(n, HeapClass::Connected).unwrap() {
            let expected = animal_from_connected_heap(&c).unwrap();
            assert!(expected.is_multi_directed());
            assert_eq!(project(&expected), c);
            for _ in 0..3 {
                let built =
                    animal_from_connected_heap_with(&c, |m| rng.random_range(0..m.len())).unwrap();
                assert_eq!(built, expected, "{c:?}");
            }
        }
    }
}

#[test]
fn inverses_reject_the_wrong_heaps() {
    let disconnected = Heap::from_sequence([
        polymer_heaps::heap::Polymer::new(0, 1).unwrap(),
        polymer_heaps::heap::Polymer::new(3, 4).unwrap(),
    ]);
    assert_eq!(
        animal_from_connected_heap(&disconnected),
        Err(Error::NotConnected)
    );
    assert_eq!(animal_from_pyramid(&disconnected), Err(Error::NotPyramid));
    assert_eq!(
        animal_from_connected_heap(&Heap::empty()),
        Err(Error::NotConnected)
    );
}

#[test]
fn nordic_quadruples_recompose() {
    let mut checked = 0;
    for n in 2..=7 {
        for_each_heap(n, HeapClass::Connected, |c| {
            if c.is_pyramid() {
                assert_eq!(nordic_decompose(&c), Err(Error::IsPyramid));
                return;
            }
            let q = nordic_decompose(&c).unwrap();
            q.validate().unwrap();
            assert_eq!(q.c1.max_right(), Some(-1));
            assert!(q.p.left_half_width().unwrap() > q.k);
            assert_eq!(q.p.pieces()[0].polymer.left(), q.k as i32);
            assert_eq!(
                q.c1.total_length() + q.h.total_length() + q.p.total_length(),
                c.total_length()
            );
            assert_eq!(nordic_compose(&q).unwrap(), c);
            checked += 1;
        });
    }
    assert!(checked > 0);
}

/// Every quadruple built from small parts composes into a non-pyramid
/// connected heap that decomposes back to the same quadruple.
#[test]
fn composed_quadruples_decompose() {
    let c1s: Vec<Heap> = (1..=2)
        .flat_map(|n| enumerate_heaps(n, HeapClass::Connected).unwrap())
        .collect();
    let pyramids: Vec<Heap> = (1..=4)
        .flat_map(|n| enumerate_heaps(n, HeapClass::Pyramid).unwrap())
        .collect();
    let mut checked = 0;
    for k in 0..=2u32 {
        let hs: Vec<Heap> = (0..=2)
            .flat_map(|n| enumerate_heaps(n, HeapClass::WithinStrip(k)).unwrap())
            .collect();
        for c1 in &c1s {
            for h in &hs {
                for p in pyramids.iter().filter(|p| p.left_half_width().unwrap() > k) {
                    let q = NordicQuadruple {
                        c1: c1.clone(),
                        k,
                        h: h.clone(),
                        p: p.clone(),
                    };
                    let c = nordic_compose(&q).unwrap();
                    assert!(c.is_connected() && !c.is_pyramid(), "{q:?}");
                    assert_eq!(nordic_decompose(&c).unwrap(), q.normalized());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}
