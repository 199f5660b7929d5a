//! Uniform structured 1D/2D grids with ghost-point bookkeeping, plus the
//! per-point state storage shared by all stencil operations.
//!
//! Points are cell-centered: `x_i = a + (i + 1/2) * dx` for interior index
//! `i` in `0..nx` (zero-based), with `dx = (b - a) / nx`. Ghost coordinates
//! continue the uniform spacing beyond the boundary. Every side carries
//! [`GHOST`] ghost layers, the reach of the fifth-order stencil.

use crate::{num, Scalar, SolverError};
use std::ops::{Add, Index, IndexMut, Neg, Sub};

/// Ghost width on every side (stencil extents r = s = 3).
pub const GHOST: usize = 3;

/// Maximum number of conserved components of any supported system.
pub const MAX_COMPONENTS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim {
    One,
    Two,
}

/// Coordinate axis of a stencil pass or flux direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

/// Uniform grid over `[a,b]` (1D) or `[a,b] x [c,d]` (2D).
#[derive(Clone, Debug)]
pub struct Grid<T> {
    dim: Dim,
    nx: usize,
    ny: usize,
    dx: T,
    dy: T,
    x0: T,
    x1: T,
    y0: T,
    y1: T,
    row_len: usize,
    n_total: usize,
}

impl<T: Scalar> Grid<T> {
    pub fn new_1d(a: T, b: T, nx: usize) -> Result<Self, SolverError> {
        if !(b > a) {
            return Err(SolverError::InvalidGrid(format!(
                "degenerate interval [{a}, {b}]"
            )));
        }
        if nx < 7 {
            return Err(SolverError::InvalidGrid(format!(
                "nx = {nx} < 7; interior must cover one full stencil"
            )));
        }
        let dx = (b - a) / num::<T>(nx as f64);
        let row_len = nx + 2 * GHOST;
        Ok(Grid {
            dim: Dim::One,
            nx,
            ny: 1,
            dx,
            dy: T::one(),
            x0: a,
            x1: b,
            y0: T::zero(),
            y1: T::zero(),
            row_len,
            n_total: row_len,
        })
    }

    pub fn new_2d(x: (T, T), y: (T, T), nx: usize, ny: usize) -> Result<Self, SolverError> {
        if !(x.1 > x.0) || !(y.1 > y.0) {
            return Err(SolverError::InvalidGrid(format!(
                "degenerate rectangle [{}, {}] x [{}, {}]",
                x.0, x.1, y.0, y.1
            )));
        }
        if nx < 7 || ny < 7 {
            return Err(SolverError::InvalidGrid(format!(
                "grid {nx} x {ny}; both interior counts must be >= 7"
            )));
        }
        let dx = (x.1 - x.0) / num::<T>(nx as f64);
        let dy = (y.1 - y.0) / num::<T>(ny as f64);
        let row_len = nx + 2 * GHOST;
        let col_len = ny + 2 * GHOST;
        Ok(Grid {
            dim: Dim::Two,
            nx,
            ny,
            dx,
            dy,
            x0: x.0,
            x1: x.1,
            y0: y.0,
            y1: y.1,
            row_len,
            n_total: row_len * col_len,
        })
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Interior point count in y; 1 for one-dimensional grids.
    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn dx(&self) -> T {
        self.dx
    }

    #[inline]
    pub fn dy(&self) -> T {
        self.dy
    }

    pub fn x_bounds(&self) -> (T, T) {
        (self.x0, self.x1)
    }

    pub fn y_bounds(&self) -> (T, T) {
        (self.y0, self.y1)
    }

    /// Number of storage slots per component, ghosts included.
    #[inline]
    pub fn n_slots(&self) -> usize {
        self.n_total
    }

    /// Interior point count.
    #[inline]
    pub fn n_interior(&self) -> usize {
        self.nx * self.ny
    }

    /// Coordinate of point `i`; valid for ghost indices as well.
    #[inline]
    pub fn x(&self, i: isize) -> T {
        self.x0 + (num::<T>(i as f64) + num::<T>(0.5)) * self.dx
    }

    /// Coordinate of row `j`; valid for ghost indices as well.
    #[inline]
    pub fn y(&self, j: isize) -> T {
        self.y0 + (num::<T>(j as f64) + num::<T>(0.5)) * self.dy
    }

    /// O(1) map from (possibly ghost) point indices to the storage slot.
    #[inline]
    pub fn slot(&self, i: isize, j: isize) -> usize {
        let gy = match self.dim {
            Dim::One => 0,
            Dim::Two => GHOST as isize,
        };
        debug_assert!(i >= -(GHOST as isize) && i < (self.nx + GHOST) as isize);
        debug_assert!(j >= -gy && j < self.ny as isize + gy);
        ((j + gy) as usize) * self.row_len + (i + GHOST as isize) as usize
    }

    /// Iterator over interior `(i, j)` pairs in row-major order.
    pub fn interior(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        let nx = self.nx as isize;
        let ny = self.ny as isize;
        (0..ny).flat_map(move |j| (0..nx).map(move |i| (i, j)))
    }
}

/// Small fixed-capacity vector holding the conserved components of one
/// grid point (or a flux, or a characteristic projection).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompVec<T> {
    len: usize,
    v: [T; MAX_COMPONENTS],
}

impl<T: Scalar> CompVec<T> {
    #[inline]
    pub fn zeros(len: usize) -> Self {
        debug_assert!(len >= 1 && len <= MAX_COMPONENTS);
        CompVec {
            len,
            v: [T::zero(); MAX_COMPONENTS],
        }
    }

    #[inline]
    pub fn scalar(value: T) -> Self {
        let mut v = [T::zero(); MAX_COMPONENTS];
        v[0] = value;
        CompVec { len: 1, v }
    }

    pub fn from_slice(vals: &[T]) -> Self {
        let mut out = Self::zeros(vals.len());
        out.v[..vals.len()].copy_from_slice(vals);
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.v[..self.len]
    }

    #[inline]
    pub fn scale(mut self, s: T) -> Self {
        for k in 0..self.len {
            self.v[k] = self.v[k] * s;
        }
        self
    }

    #[inline]
    pub fn abs_sum(&self) -> T {
        let mut acc = T::zero();
        for k in 0..self.len {
            acc += self.v[k].abs();
        }
        acc
    }

    #[inline]
    pub fn max_abs(&self) -> T {
        let mut acc = T::zero();
        for k in 0..self.len {
            acc = acc.max(self.v[k].abs());
        }
        acc
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }
}

impl<T: Scalar> Index<usize> for CompVec<T> {
    type Output = T;
    #[inline]
    fn index(&self, k: usize) -> &T {
        debug_assert!(k < self.len);
        &self.v[k]
    }
}

impl<T: Scalar> IndexMut<usize> for CompVec<T> {
    #[inline]
    fn index_mut(&mut self, k: usize) -> &mut T {
        debug_assert!(k < self.len);
        &mut self.v[k]
    }
}

impl<T: Scalar> Add for CompVec<T> {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        for k in 0..self.len {
            self.v[k] = self.v[k] + rhs.v[k];
        }
        self
    }
}

impl<T: Scalar> Sub for CompVec<T> {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        debug_assert_eq!(self.len, rhs.len);
        for k in 0..self.len {
            self.v[k] = self.v[k] - rhs.v[k];
        }
        self
    }
}

impl<T: Scalar> Neg for CompVec<T> {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        for k in 0..self.len {
            self.v[k] = -self.v[k];
        }
        self
    }
}

/// Per-point state of `m` conserved components over a grid, ghosts
/// included. Storage is one contiguous array per component.
#[derive(Clone, Debug)]
pub struct State<T> {
    m: usize,
    slots: usize,
    data: Vec<T>,
}

impl<T: Scalar> State<T> {
    pub fn zeros(m: usize, slots: usize) -> Self {
        debug_assert!(m >= 1 && m <= MAX_COMPONENTS);
        State {
            m,
            slots,
            data: vec![T::zero(); m * slots],
        }
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n_slots(&self) -> usize {
        self.slots
    }

    #[inline]
    pub fn get(&self, c: usize, slot: usize) -> T {
        self.data[c * self.slots + slot]
    }

    #[inline]
    pub fn set(&mut self, c: usize, slot: usize, value: T) {
        self.data[c * self.slots + slot] = value;
    }

    #[inline]
    pub fn point(&self, slot: usize) -> CompVec<T> {
        let mut out = CompVec::zeros(self.m);
        for c in 0..self.m {
            out[c] = self.data[c * self.slots + slot];
        }
        out
    }

    #[inline]
    pub fn set_point(&mut self, slot: usize, value: CompVec<T>) {
        debug_assert_eq!(value.len(), self.m);
        for c in 0..self.m {
            self.data[c * self.slots + slot] = value[c];
        }
    }

    pub fn component(&self, c: usize) -> &[T] {
        &self.data[c * self.slots..(c + 1) * self.slots]
    }

    pub fn component_mut(&mut self, c: usize) -> &mut [T] {
        &mut self.data[c * self.slots..(c + 1) * self.slots]
    }

    /// Fill every slot (ghosts included) from a per-point evaluator.
    pub fn fill_with(&mut self, grid: &Grid<T>, f: impl Fn(T, T) -> CompVec<T>) {
        let gy = match grid.dim() {
            Dim::One => 0,
            Dim::Two => GHOST as isize,
        };
        for j in -gy..grid.ny() as isize + gy {
            for i in -(GHOST as isize)..(grid.nx() + GHOST) as isize {
                self.set_point(grid.slot(i, j), f(grid.x(i), grid.y(j)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oblique_benchmark_grid_spacing() {
        // 200 x 100 points on [0,4] x [0,2] gives equal spacings.
        let g = Grid::<f64>::new_2d((0.0, 4.0), (0.0, 2.0), 200, 100).unwrap();
        assert_eq!(g.dx(), 0.02);
        assert_eq!(g.dy(), 0.02);
    }

    #[test]
    fn cell_centered_coordinates() {
        let g = Grid::<f64>::new_1d(0.0, 1.0, 10).unwrap();
        assert_eq!(g.dx(), 0.1);
        assert!((g.x(0) - 0.05).abs() < 1e-15);
        assert!((g.x(9) - 0.95).abs() < 1e-15);
    }

    #[test]
    fn shock_interface_sits_between_points() {
        // [-1,1] with 400 points: x = 0 is exactly halfway between points
        // 199 and 200 (zero-based).
        let g = Grid::<f64>::new_1d(-1.0, 1.0, 400).unwrap();
        assert_eq!(g.dx(), 0.005);
        let mid = 0.5 * (g.x(199) + g.x(200));
        assert_eq!(mid, 0.0);
        assert!(g.x(199) < 0.0 && g.x(200) > 0.0);
    }

    #[test]
    fn spacing_is_uniform_and_brackets_hold() {
        let g = Grid::<f64>::new_1d(3.0, 17.0, 29).unwrap();
        for i in 0..29isize {
            let x = g.x(i);
            assert!(3.0 + i as f64 * g.dx() < x);
            assert!(x < 3.0 + (i + 1) as f64 * g.dx());
            if i > 0 {
                // Uniform up to one rounding unit of the coordinate.
                let step = x - g.x(i - 1);
                assert!((step - g.dx()).abs() <= 2.0 * f64::EPSILON * x.abs());
            }
        }
    }

    #[test]
    fn ghost_coordinates_continue_spacing() {
        let g = Grid::<f64>::new_1d(0.0, 1.0, 10).unwrap();
        assert!((g.x(-1) - (-0.05)).abs() < 1e-15);
        assert!((g.x(10) - 1.05).abs() < 1e-15);
        let g2 = Grid::<f64>::new_2d((0.0, 1.0), (0.0, 1.0), 10, 10).unwrap();
        assert!((g2.y(-3) - (-0.25)).abs() < 1e-15);
        assert!((g2.y(12) - 1.25).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(Grid::<f64>::new_1d(1.0, 1.0, 10).is_err());
        assert!(Grid::<f64>::new_1d(0.0, 1.0, 6).is_err());
        assert!(Grid::<f64>::new_2d((0.0, 1.0), (2.0, 2.0), 10, 10).is_err());
        assert!(Grid::<f64>::new_2d((0.0, 1.0), (0.0, 1.0), 10, 5).is_err());
    }

    #[test]
    fn slot_mapping_is_dense_and_distinct() {
        let g = Grid::<f64>::new_2d((0.0, 1.0), (0.0, 1.0), 8, 9).unwrap();
        let mut seen = vec![false; g.n_slots()];
        for j in -3..12isize {
            for i in -3..11isize {
                let s = g.slot(i, j);
                assert!(!seen[s]);
                seen[s] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn state_roundtrip() {
        let g = Grid::<f64>::new_1d(0.0, 1.0, 10).unwrap();
        let mut s = State::<f64>::zeros(3, g.n_slots());
        let v = CompVec::from_slice(&[1.0, -2.0, 3.0]);
        s.set_point(g.slot(4, 0), v);
        assert_eq!(s.point(g.slot(4, 0)), v);
        assert_eq!(s.get(1, g.slot(4, 0)), -2.0);
        assert_eq!(s.point(g.slot(5, 0)), CompVec::zeros(3));
    }

    #[test]
    fn compvec_arithmetic() {
        let a = CompVec::from_slice(&[1.0, 2.0]);
        let b = CompVec::from_slice(&[0.5, -1.0]);
        assert_eq!((a + b).as_slice(), &[1.5, 1.0]);
        assert_eq!((a - b).as_slice(), &[0.5, 3.0]);
        assert_eq!(a.scale(2.0).as_slice(), &[2.0, 4.0]);
        assert_eq!(a.abs_sum(), 3.0);
        assert_eq!((-b).as_slice(), &[-0.5, 1.0]);
    }
}
