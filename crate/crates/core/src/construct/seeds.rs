//! Embedded first rows for the order-28 and order-52 skew triples.

use super::GsQuadSeed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedded {
    /// Three skew W(28, 9) from circulants of order 7.
    Dw28,
    /// Three skew W(52, 17) from circulants of order 13.
    Dw52,
}

type Quad<const N: usize> = [[i8; N]; 4];

const DW28: [Quad<7>; 3] = [
    [
        [0, 1, 0, 0, 0, 0, -1],
        [0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0],
        [-1, 1, 1, 0, 1, 0, 0],
    ],
    [
        [0, 0, 0, 1, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1],
        [-1, 1, 1, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 1],
    ],
    [
        [0, 0, 1, 0, 0, -1, 0],
        [-1, 1, 1, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 0, 0],
    ],
];

const DW52: [Quad<13>; 3] = [
    [
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [1, -1, -1, -1, -1, 0, -1, 0, 0, 0, 0, 0, 0],
        [1, -1, 1, 1, -1, -1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, 0, 0, 1, -1, 0, -1, 0, 1],
    ],
    [
        [0, 1, 0, 1, 1, -1, 0, 0, 1, -1, -1, 0, -1],
        [0, 0, 0, 0, 0, -1, 0, 0, 1, -1, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, -1, 0, 0, -1, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0],
    ],
    [
        [0, 0, 1, 0, 0, 0, 1, -1, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, -1, 0, -1],
        [0, 0, 0, 0, 0, 0, 0, -1, 1, 0, 0, -1, -1],
        [1, 1, 1, -1, 0, 1, 0, 0, 0, -1, 0, 0, 0],
    ],
];

fn to_seeds<const N: usize>(quads: &[Quad<N>; 3]) -> [GsQuadSeed; 3] {
    quads.map(|[a, b, c, d]| {
        GsQuadSeed::new(a.to_vec(), b.to_vec(), c.to_vec(), d.to_vec()).expect("embedded seed is well formed")
    })
}

pub fn embedded_seeds(which: Embedded) -> [GsQuadSeed; 3] {
    match which {
        Embedded::Dw28 => to_seeds(&DW28),
        Embedded::Dw52 => to_seeds(&DW52),
    }
}
