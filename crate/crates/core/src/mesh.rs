//! 1D cut-cell mesh on the periodic unit interval.
//!
//! The interval `[0, 1]` is divided into `n` equidistant background cells of
//! size `h = 1/n`. Exactly one background cell is split into a cut pair: a
//! small cell of length `alpha * h` followed by its complement of length
//! `(1 - alpha) * h`. The volume fraction is restricted to `0 < alpha <= 1/2`
//! so the small cell always comes first in flow direction. Topology is
//! periodic: the left neighbor of the first cell is the last cell.
//!
//! Cells are indexed 0-based in left-to-right order; a mesh with `n`
//! background cells has `n + 1` cells in total.

use crate::error::{Error, Result};
use crate::scalar::{boundary_match_tol, Real};

/// One mesh cell: the interval `[x_left, x_right]` with its stored length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell<T> {
    pub x_left: T,
    pub x_right: T,
    pub length: T,
}

/// Background grid with one cell split into a cut pair.
#[derive(Clone, Debug)]
pub struct CutCellMesh<T> {
    n_background: usize,
    h: T,
    alpha: T,
    split_background: usize,
    /// `num_cells() + 1` ascending values, first exactly 0 and last exactly 1.
    boundaries: Vec<T>,
    /// Stored per cell: `h` on uncut cells, `alpha * h` and `(1 - alpha) * h`
    /// on the cut pair. These are the mass-matrix entries; they agree with
    /// the boundary differences only up to roundoff.
    lengths: Vec<T>,
}

impl<T: Real> CutCellMesh<T> {
    /// Builds the mesh. `split_left` is the left boundary of the background
    /// cell to split and must coincide with a background boundary in `[0, 1)`
    /// up to a small matching tolerance.
    pub fn new(n_background: usize, alpha: T, split_left: T) -> Result<Self> {
        if n_background < 3 {
            return Err(Error::TooFewCells(n_background));
        }
        let one = T::one();
        let half = one / (one + one);
        if !(alpha > T::zero() && alpha <= half) || !alpha.is_finite() {
            return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
        }
        let n_t = T::from_usize(n_background).expect("cell count fits the scalar type");
        let h = one / n_t;
        let j_real = (split_left / h).round();
        let matches = (split_left - j_real * h).abs() <= boundary_match_tol::<T>();
        let in_range = j_real >= T::zero() && j_real < n_t;
        if !matches || !in_range {
            return Err(Error::SplitOffGrid(split_left.to_f64().unwrap_or(f64::NAN)));
        }
        let split_background = j_real.to_usize().expect("boundary index fits usize");

        let back = |i: usize| T::from_usize(i).expect("index fits the scalar type") / n_t;
        let mut boundaries = Vec::with_capacity(n_background + 2);
        let mut lengths = Vec::with_capacity(n_background + 1);
        for i in 0..n_background {
            boundaries.push(back(i));
            if i == split_background {
                boundaries.push(back(i) + alpha * h);
                lengths.push(alpha * h);
                lengths.push((one - alpha) * h);
            } else {
                lengths.push(h);
            }
        }
        boundaries.push(one);

        Ok(CutCellMesh {
            n_background,
            h,
            alpha,
            split_background,
            boundaries,
            lengths,
        })
    }

    /// Number of background cells.
    pub fn n_background(&self) -> usize {
        self.n_background
    }

    /// Background cell size `1 / n_background`.
    pub fn h(&self) -> T {
        self.h
    }

    /// Volume fraction of the small cut cell.
    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Index of the background cell that was split, in `0..n_background`.
    pub fn split_background_index(&self) -> usize {
        self.split_background
    }

    /// Total number of cells, `n_background + 1`.
    pub fn num_cells(&self) -> usize {
        self.n_background + 1
    }

    /// Index of the small cut cell.
    pub fn k1_index(&self) -> usize {
        self.split_background
    }

    /// Index of the large cut cell, always `k1_index() + 1`.
    pub fn k2_index(&self) -> usize {
        self.split_background + 1
    }

    /// Periodic left neighbor.
    pub fn prev_index(&self, j: usize) -> usize {
        debug_assert!(j < self.num_cells());
        (j + self.num_cells() - 1) % self.num_cells()
    }

    /// Periodic right neighbor.
    pub fn next_index(&self, j: usize) -> usize {
        debug_assert!(j < self.num_cells());
        (j + 1) % self.num_cells()
    }

    /// Cell boundaries, `num_cells() + 1` ascending values.
    pub fn boundaries(&self) -> &[T] {
        &self.boundaries
    }

    /// Stored cell lengths.
    pub fn lengths(&self) -> &[T] {
        &self.lengths
    }

    /// Stored length of cell `j`.
    pub fn length(&self, j: usize) -> T {
        self.lengths[j]
    }

    pub fn x_left(&self, j: usize) -> T {
        self.boundaries[j]
    }

    pub fn x_right(&self, j: usize) -> T {
        self.boundaries[j + 1]
    }

    pub fn midpoint(&self, j: usize) -> T {
        let half = T::one() / (T::one() + T::one());
        (self.boundaries[j] + self.boundaries[j + 1]) * half
    }

    pub fn cell(&self, j: usize) -> Cell<T> {
        Cell {
            x_left: self.boundaries[j],
            x_right: self.boundaries[j + 1],
            length: self.lengths[j],
        }
    }

    /// Cells in left-to-right order.
    pub fn cells(&self) -> impl Iterator<Item = Cell<T>> + '_ {
        (0..self.num_cells()).map(move |j| self.cell(j))
    }

    /// Index of the cell containing `x`. Points on an interior boundary
    /// belong to the cell on the right.
    pub fn cell_index_of(&self, x: T) -> usize {
        assert!(
            x >= T::zero() && x < T::one(),
            "coordinate {x} outside [0, 1)"
        );
        let upper = self.boundaries.partition_point(|b| *b <= x);
        (upper - 1).min(self.num_cells() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_mesh_geometry() {
        let mesh = CutCellMesh::<f64>::new(10, 0.001, 0.5).unwrap();
        assert_eq!(mesh.num_cells(), 11);
        assert_eq!(mesh.k1_index(), 5);
        assert_eq!(mesh.k2_index(), 6);
        assert_eq!(mesh.x_left(5), 0.5);
        assert!((mesh.x_right(5) - 0.5001).abs() < 1e-15);
        assert!((mesh.length(5) - 1e-4).abs() < 1e-18);
        assert!((mesh.length(6) - 0.0999).abs() < 1e-15);
        assert!((mesh.length(0) - 0.1).abs() < 1e-16);
        assert_eq!(mesh.x_left(0), 0.0);
        assert_eq!(mesh.x_right(10), 1.0);
    }

    #[test]
    fn quarter_split_lengths() {
        let mesh = CutCellMesh::<f64>::new(4, 0.25, 0.25).unwrap();
        let lens: Vec<f64> = mesh.lengths().to_vec();
        let expect = [0.25, 0.0625, 0.1875, 0.25, 0.25];
        for (a, b) in lens.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(mesh.k1_index(), 1);
    }

    #[test]
    fn half_split_is_symmetric() {
        let mesh = CutCellMesh::<f64>::new(8, 0.5, 0.375).unwrap();
        assert_eq!(mesh.length(mesh.k1_index()), mesh.length(mesh.k2_index()));
        assert!((mesh.length(mesh.k1_index()) - 0.0625).abs() < 1e-16);
    }

    #[test]
    fn split_at_first_and_last_background_cell() {
        let first = CutCellMesh::<f64>::new(5, 0.1, 0.0).unwrap();
        assert_eq!(first.k1_index(), 0);
        assert_eq!(first.prev_index(0), first.num_cells() - 1);

        let last = CutCellMesh::<f64>::new(5, 0.1, 0.8).unwrap();
        assert_eq!(last.k2_index(), last.num_cells() - 1);
        assert_eq!(last.next_index(last.k2_index()), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            CutCellMesh::<f64>::new(2, 0.1, 0.0),
            Err(Error::TooFewCells(2))
        ));
        assert!(matches!(
            CutCellMesh::<f64>::new(10, 0.0, 0.5),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            CutCellMesh::<f64>::new(10, 0.6, 0.5),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(matches!(
            CutCellMesh::<f64>::new(10, 0.1, 0.27),
            Err(Error::SplitOffGrid(_))
        ));
        assert!(matches!(
            CutCellMesh::<f64>::new(10, 0.1, 1.0),
            Err(Error::SplitOffGrid(_))
        ));
        assert!(matches!(
            CutCellMesh::<f64>::new(10, 0.1, -0.1),
            Err(Error::SplitOffGrid(_))
        ));
    }

    #[test]
    fn split_snaps_within_tolerance() {
        let mesh = CutCellMesh::<f64>::new(10, 0.2, 0.5 + 1e-13).unwrap();
        assert_eq!(mesh.split_background_index(), 5);
        assert_eq!(mesh.x_left(mesh.k1_index()), 0.5);
    }

    #[test]
    fn point_location() {
        let mesh = CutCellMesh::<f64>::new(10, 0.001, 0.5).unwrap();
        assert_eq!(mesh.cell_index_of(0.0), 0);
        assert_eq!(mesh.cell_index_of(0.05), 0);
        assert_eq!(mesh.cell_index_of(0.50005), 5);
        assert_eq!(mesh.cell_index_of(0.5002), 6);
        assert_eq!(mesh.cell_index_of(0.5), 5);
        assert_eq!(mesh.cell_index_of(0.6), 7);
        assert_eq!(mesh.cell_index_of(1.0 - 1e-12), 10);
    }

    #[test]
    fn f32_mesh_builds() {
        let mesh = CutCellMesh::<f32>::new(10, 0.25f32, 0.5f32).unwrap();
        assert_eq!(mesh.num_cells(), 11);
        assert!((mesh.length(5) - 0.025f32).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn tiling_and_volume(
            (n, split) in (3usize..=256).prop_flat_map(|n| (Just(n), 0..n)),
            alpha in 1e-6f64..=0.5,
        ) {
            let split_left = split as f64 / n as f64;
            let mesh = CutCellMesh::<f64>::new(n, alpha, split_left).unwrap();
            let b = mesh.boundaries();
            prop_assert_eq!(b.len(), mesh.num_cells() + 1);
            prop_assert_eq!(b[0], 0.0);
            prop_assert_eq!(b[b.len() - 1], 1.0);
            for j in 0..mesh.num_cells() {
                prop_assert!(b[j] < b[j + 1]);
                prop_assert!((b[j + 1] - b[j] - mesh.length(j)).abs() < 1e-14);
            }
            let total: f64 = mesh.lengths().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-14);
        }

        #[test]
        fn midpoints_locate_their_cell(
            (n, split) in (3usize..=64).prop_flat_map(|n| (Just(n), 0..n)),
            alpha in 1e-4f64..=0.5,
        ) {
            let mesh = CutCellMesh::<f64>::new(n, alpha, split as f64 / n as f64).unwrap();
            for j in 0..mesh.num_cells() {
                prop_assert_eq!(mesh.cell_index_of(mesh.midpoint(j)), j);
            }
        }
    }
}
