//! Dense per-row orbit counts.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::atlas::{Atlas, Numbering, PUBLISHED_MAX_NODES};
use crate::equations::Mode;

/// One row per node (or per edge, in input order), one column per orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCountMatrix {
    mode: Mode,
    k: usize,
    numbering: Numbering,
    labels: Vec<usize>,
    internal: Vec<usize>,
    rows: usize,
    data: Vec<u64>,
}

impl OrbitCountMatrix {
    /// Wraps row-major counts whose columns are internal orbit ids
    /// `0..columns`, then reorders them for `numbering`.
    ///
    /// Published numbering applies to node orbits with `k <= 5`; other
    /// matrices keep the internal order.
    pub fn from_internal(atlas: &Atlas, mode: Mode, k: usize, numbering: Numbering, data: Vec<u64>) -> Self {
        let cols = Self::internal_columns(atlas, mode, k);
        assert_eq!(data.len() % cols.max(1), 0, "data is not a whole number of rows");
        let rows = if cols == 0 { 0 } else { data.len() / cols };
        let numbering = if mode == Mode::Node && k <= PUBLISHED_MAX_NODES { numbering } else { Numbering::Internal };

        let mut internal: Vec<usize> = (0..cols).collect();
        if numbering == Numbering::Przulj {
            internal.sort_by_key(|&o| atlas.przulj_id(o).expect("node orbits up to five nodes are published"));
        }
        let labels = internal.iter().map(|&o| atlas.orbit_label(o, numbering)).collect::<Vec<_>>();
        let data = if numbering == Numbering::Internal {
            data
        } else {
            let mut out = Vec::with_capacity(data.len());
            for r in 0..rows {
                let row = &data[r * cols..(r + 1) * cols];
                out.extend(internal.iter().map(|&o| row[o]));
            }
            out
        };
        OrbitCountMatrix { mode, k, numbering, labels, internal, rows, data }
    }

    /// Number of internal columns for orbits of graphlets on `2..=k` nodes.
    pub fn internal_columns(atlas: &Atlas, mode: Mode, k: usize) -> usize {
        match mode {
            Mode::Node => atlas.orbit_range(k).end,
            Mode::Edge => atlas.edge_orbit_range(k).end,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn numbering(&self) -> Numbering {
        self.numbering
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> usize {
        self.labels.len()
    }

    /// Column labels in output order.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Internal orbit id of each output column.
    pub fn internal_ids(&self) -> &[usize] {
        &self.internal
    }

    pub fn row(&self, r: usize) -> &[u64] {
        let c = self.columns();
        &self.data[r * c..(r + 1) * c]
    }

    /// Count for row `r` and orbit `label` (in this matrix's numbering).
    pub fn get(&self, r: usize, label: usize) -> Option<u64> {
        let c = self.labels.iter().position(|&l| l == label)?;
        Some(self.row(r)[c])
    }

    /// Count for row `r` and internal orbit id.
    pub fn get_internal(&self, r: usize, orbit: usize) -> Option<u64> {
        let c = self.internal.iter().position(|&o| o == orbit)?;
        Some(self.row(r)[c])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.data
    }

    /// First differing cell as `(row, label, self, other)`.
    pub fn first_difference(&self, other: &OrbitCountMatrix) -> Option<(usize, usize, u64, u64)> {
        if self.labels != other.labels || self.rows != other.rows {
            return Some((0, usize::MAX, self.rows as u64, other.rows as u64));
        }
        let c = self.columns();
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / c, self.labels[i % c], self.data[i], other.data[i]))
    }

    /// Space-separated rows, one per line.
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        let mut line = String::new();
        for r in 0..self.rows {
            line.clear();
            for (i, v) in self.row(r).iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{v}");
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }
}
