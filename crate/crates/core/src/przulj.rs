//! Published node-orbit numbering (0..=72) for graphlets on 2..=5 nodes.
//!
//! Each entry is one graphlet in an arbitrary labelling together with the
//! published orbit of every node. Entries are listed in published graphlet
//! order G0..G29.

pub(crate) struct ReferenceGraphlet {
    pub nodes: usize,
    pub edges: &'static [(u8, u8)],
    pub orbits: &'static [usize],
}

pub(crate) const REFERENCE: &[ReferenceGraphlet] = &[
    // G0
    ReferenceGraphlet { nodes: 2, edges: &[(0, 1)], orbits: &[0, 0] },
    // G1
    ReferenceGraphlet { nodes: 3, edges: &[(0, 1), (0, 2)], orbits: &[2, 1, 1] },
    // G2
    ReferenceGraphlet { nodes: 3, edges: &[(0, 1), (0, 2), (1, 2)], orbits: &[3, 3, 3] },
    // G3
    ReferenceGraphlet { nodes: 4, edges: &[(0, 1), (0, 3), (1, 2)], orbits: &[5, 5, 4, 4] },
    // G4
    ReferenceGraphlet { nodes: 4, edges: &[(0, 1), (0, 2), (0, 3)], orbits: &[7, 6, 6, 6] },
    // G5
    ReferenceGraphlet { nodes: 4, edges: &[(0, 2), (0, 3), (1, 2), (1, 3)], orbits: &[8, 8, 8, 8] },
    // G6
    ReferenceGraphlet { nodes: 4, edges: &[(0, 1), (0, 2), (0, 3), (1, 2)], orbits: &[11, 10, 10, 9] },
    // G7
    ReferenceGraphlet { nodes: 4, edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], orbits: &[13, 13, 12, 12] },
    // G8
    ReferenceGraphlet { nodes: 4, edges: &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], orbits: &[14, 14, 14, 14] },
    // G9
    ReferenceGraphlet { nodes: 5, edges: &[(0, 2), (0, 4), (1, 2), (1, 3)], orbits: &[16, 16, 17, 15, 15] },
    // G10
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 3), (0, 4), (1, 2)], orbits: &[21, 20, 18, 19, 19] },
    // G11
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4)], orbits: &[23, 22, 22, 22, 22] },
    // G12
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 4), (1, 2), (1, 3)], orbits: &[26, 26, 25, 24, 24] },
    // G13
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 4), (1, 2), (1, 3), (2, 3)], orbits: &[28, 30, 29, 29, 27] },
    // G14
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)], orbits: &[33, 32, 32, 31, 31] },
    // G15
    ReferenceGraphlet { nodes: 5, edges: &[(0, 3), (0, 4), (1, 2), (1, 4), (2, 3)], orbits: &[34, 34, 34, 34, 34] },
    // G16
    ReferenceGraphlet { nodes: 5, edges: &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3)], orbits: &[38, 36, 37, 37, 35] },
    // G17
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3)], orbits: &[42, 41, 40, 40, 39] },
    // G18
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 3)], orbits: &[44, 43, 43, 43, 43] },
    // G19
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (2, 3)], orbits: &[47, 48, 48, 46, 45] },
    // G20
    ReferenceGraphlet { nodes: 5, edges: &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], orbits: &[50, 50, 49, 49, 49] },
    // G21
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 3), (0, 4), (1, 2), (1, 4), (2, 3)], orbits: &[53, 53, 51, 51, 52] },
    // G22
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], orbits: &[55, 55, 54, 54, 54] },
    // G23
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 3)], orbits: &[58, 57, 57, 57, 56] },
    // G24
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 3)], orbits: &[61, 60, 60, 59, 59] },
    // G25
    ReferenceGraphlet { nodes: 5, edges: &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)], orbits: &[63, 63, 64, 64, 62] },
    // G26
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3)], orbits: &[67, 67, 66, 66, 65] },
    // G27
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)], orbits: &[69, 68, 68, 68, 68] },
    // G28
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)], orbits: &[71, 71, 71, 70, 70] },
    // G29
    ReferenceGraphlet { nodes: 5, edges: &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)], orbits: &[72, 72, 72, 72, 72] },
];
