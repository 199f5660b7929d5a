//! Ghost-point population for the boundary types used by the benchmark
//! registry: periodic, Dirichlet-from-exact, fixed inflow, degree-4
//! extrapolation outflow, slip wall, and embedded internal plates.

use crate::grid::{Axis, CompVec, Dim, Grid, State, GHOST};
use crate::{num, Scalar, SolverError};

/// Condition applied on one side of the domain.
#[derive(Clone, Debug)]
pub enum SideCondition<T> {
    /// Ghosts wrap around to the opposite interior edge.
    Periodic,
    /// Ghosts take the model's exact steady solution at their coordinates.
    DirichletExact,
    /// Ghosts hold a fixed state.
    Inflow(CompVec<T>),
    /// Ghosts extrapolate each component with a degree-4 polynomial fitted
    /// to the five outermost interior points.
    OutflowExtrapolate,
    /// Ghosts mirror the interior with the wall-normal momentum negated.
    SlipWall,
}

/// Axis-aligned internal wall segment lying on a grid interface line.
///
/// `normal` is the axis blocked by the wall (a horizontal plate at
/// `y = position` has normal `Axis::Y`); `span` is the extent interval
/// along the plate.
#[derive(Clone, Copy, Debug)]
pub struct Plate<T> {
    pub normal: Axis,
    pub position: T,
    pub span: (T, T),
}

/// Per-side conditions plus embedded plates.
#[derive(Clone, Debug)]
pub struct BoundarySet<T> {
    pub left: SideCondition<T>,
    pub right: SideCondition<T>,
    pub bottom: Option<SideCondition<T>>,
    pub top: Option<SideCondition<T>>,
    pub plates: Vec<Plate<T>>,
}

impl<T: Scalar> BoundarySet<T> {
    pub fn one_dimensional(left: SideCondition<T>, right: SideCondition<T>) -> Self {
        BoundarySet {
            left,
            right,
            bottom: None,
            top: None,
            plates: Vec::new(),
        }
    }

    pub fn two_dimensional(
        left: SideCondition<T>,
        right: SideCondition<T>,
        bottom: SideCondition<T>,
        top: SideCondition<T>,
    ) -> Self {
        BoundarySet {
            left,
            right,
            bottom: Some(bottom),
            top: Some(top),
            plates: Vec::new(),
        }
    }

    pub fn with_plates(mut self, plates: Vec<Plate<T>>) -> Self {
        self.plates = plates;
        self
    }

    pub fn validate(&self, grid: &Grid<T>, has_exact: bool) -> Result<(), SolverError> {
        let periodic_mismatch = |a: &SideCondition<T>, b: &SideCondition<T>| {
            matches!(a, SideCondition::Periodic) != matches!(b, SideCondition::Periodic)
        };
        if periodic_mismatch(&self.left, &self.right) {
            return Err(SolverError::InvalidBoundary(
                "periodic must be specified on both x sides or neither".into(),
            ));
        }
        match grid.dim() {
            Dim::One => {}
            Dim::Two => {
                let (bottom, top) = match (&self.bottom, &self.top) {
                    (Some(b), Some(t)) => (b, t),
                    _ => {
                        return Err(SolverError::InvalidBoundary(
                            "2D grids need bottom and top conditions".into(),
                        ))
                    }
                };
                if periodic_mismatch(bottom, top) {
                    return Err(SolverError::InvalidBoundary(
                        "periodic must be specified on both y sides or neither".into(),
                    ));
                }
            }
        }
        let mut sides = vec![&self.left, &self.right];
        sides.extend(self.bottom.iter());
        sides.extend(self.top.iter());
        if !has_exact && sides.iter().any(|s| matches!(s, SideCondition::DirichletExact)) {
            return Err(SolverError::InvalidBoundary(
                "Dirichlet-from-exact requires a model with an exact solution".into(),
            ));
        }
        Ok(())
    }
}

/// Plate resolved to grid indices: the wall sits on the interface between
/// transverse indices `k - 1` and `k`, active for in-plate indices
/// `lo..=hi`.
#[derive(Clone, Copy, Debug)]
pub struct ResolvedPlate {
    pub normal: Axis,
    pub k: isize,
    pub lo: isize,
    pub hi: isize,
}

pub fn resolve_plates<T: Scalar>(
    plates: &[Plate<T>],
    grid: &Grid<T>,
) -> Result<Vec<ResolvedPlate>, SolverError> {
    let mut out = Vec::with_capacity(plates.len());
    for plate in plates {
        if grid.dim() != Dim::Two {
            return Err(SolverError::InvalidBoundary(
                "plates require a 2D grid".into(),
            ));
        }
        let (trans0, dt, n_trans, along0, da, n_along) = match plate.normal {
            Axis::Y => (
                grid.y_bounds().0,
                grid.dy(),
                grid.ny(),
                grid.x_bounds().0,
                grid.dx(),
                grid.nx(),
            ),
            Axis::X => (
                grid.x_bounds().0,
                grid.dx(),
                grid.nx(),
                grid.y_bounds().0,
                grid.dy(),
                grid.ny(),
            ),
        };
        let kf = (plate.position - trans0) / dt;
        let k = kf.round();
        if (kf - k).abs() > num(1e-9) {
            return Err(SolverError::InvalidBoundary(format!(
                "plate at {} does not lie on a grid interface",
                plate.position
            )));
        }
        let k = k.to_f64().unwrap() as isize;
        let reach = GHOST as isize;
        if k < reach || k > n_trans as isize - reach {
            return Err(SolverError::InvalidBoundary(format!(
                "plate at {} is closer than {GHOST} cells to the domain boundary",
                plate.position
            )));
        }
        let tiny = num::<T>(1e-9);
        let lo_f = (plate.span.0 - along0) / da - num::<T>(0.5) - tiny;
        let hi_f = (plate.span.1 - along0) / da - num::<T>(0.5) + tiny;
        let lo = (lo_f.ceil().to_f64().unwrap() as isize).max(0);
        let hi = (hi_f.floor().to_f64().unwrap() as isize).min(n_along as isize - 1);
        if lo > hi {
            return Err(SolverError::InvalidBoundary(format!(
                "plate span [{}, {}] contains no grid points",
                plate.span.0, plate.span.1
            )));
        }
        out.push(ResolvedPlate {
            normal: plate.normal,
            k,
            lo,
            hi,
        });
    }
    Ok(out)
}

/// Wall interface strictly between transverse indices `center` and
/// `target` for a stencil at in-plate index `along`, if any.
#[inline]
pub fn wall_between(
    plates: &[ResolvedPlate],
    normal: Axis,
    along: isize,
    center: isize,
    target: isize,
) -> Option<isize> {
    for plate in plates {
        if plate.normal == normal
            && along >= plate.lo
            && along <= plate.hi
            && (center < plate.k) != (target < plate.k)
        {
            return Some(plate.k);
        }
    }
    None
}

/// Component index of the momentum normal to a wall with the given
/// normal axis.
#[inline]
pub fn normal_momentum_component(normal: Axis) -> usize {
    match normal {
        Axis::X => 1,
        Axis::Y => 2,
    }
}

/// Slip-mirror a state across a wall: the normal momentum flips sign.
#[inline]
pub fn slip_mirror<T: Scalar>(mut u: CompVec<T>, m: usize, normal: Axis) -> CompVec<T> {
    if m > 1 {
        let c = normal_momentum_component(normal);
        u[c] = -u[c];
    }
    u
}

/// Evaluate the unique degree-4 interpolant through five unit-spaced
/// samples at positions beyond the last sample.
///
/// `offsets` are distances past the final sample in units of the spacing;
/// offset 1 is the first ghost.
pub fn extrapolate_degree4<T: Scalar, const K: usize>(
    values: &[T; 5],
    offsets: [T; K],
) -> [T; K] {
    let mut out = [T::zero(); K];
    for (slot, &offset) in out.iter_mut().zip(offsets.iter()) {
        let x = num::<T>(4.0) + offset;
        let mut acc = T::zero();
        for k in 0..5 {
            let mut basis = T::one();
            for j in 0..5 {
                if j != k {
                    basis = basis * (x - num::<T>(j as f64)) / num::<T>(k as f64 - j as f64);
                }
            }
            acc += values[k] * basis;
        }
        *slot = acc;
    }
    out
}

fn side_cond<'a, T>(bset: &'a BoundarySet<T>, side: usize) -> &'a SideCondition<T> {
    match side {
        0 => &bset.left,
        1 => &bset.right,
        2 => bset.bottom.as_ref().expect("validated"),
        _ => bset.top.as_ref().expect("validated"),
    }
}

/// Populate all ghost layers of `state`.
///
/// The x sides run first over interior rows; the y sides run second over
/// every column including the ghost columns, so corner ghosts take the
/// y-side rule. Corner ghosts are never read by the dimension-by-dimension
/// stencils.
pub fn apply_boundary<T: Scalar>(
    state: &mut State<T>,
    grid: &Grid<T>,
    bset: &BoundarySet<T>,
    exact: Option<&dyn Fn(T, T) -> CompVec<T>>,
) -> Result<(), SolverError> {
    let g = GHOST as isize;
    let nx = grid.nx() as isize;
    let ny = grid.ny() as isize;
    let m = state.m();

    for side in [0usize, 1] {
        let cond = side_cond(bset, side);
        for j in 0..ny {
            fill_line_x(state, grid, cond, exact, side == 1, j, m)?;
        }
    }
    if grid.dim() == Dim::Two {
        for side in [2usize, 3] {
            let cond = side_cond(bset, side);
            for i in -g..nx + g {
                fill_line_y(state, grid, cond, exact, side == 3, i, m)?;
            }
        }
    }
    Ok(())
}

fn fill_line_x<T: Scalar>(
    state: &mut State<T>,
    grid: &Grid<T>,
    cond: &SideCondition<T>,
    exact: Option<&dyn Fn(T, T) -> CompVec<T>>,
    right: bool,
    j: isize,
    m: usize,
) -> Result<(), SolverError> {
    let g = GHOST as isize;
    let nx = grid.nx() as isize;
    let ghost_i = |k: isize| if right { nx - 1 + k } else { -k };
    match cond {
        SideCondition::Periodic => {
            for k in 1..=g {
                let src = if right { k - 1 } else { nx - k };
                let v = state.point(grid.slot(src, j));
                state.set_point(grid.slot(ghost_i(k), j), v);
            }
        }
        SideCondition::DirichletExact => {
            let f = exact.ok_or_else(|| {
                SolverError::InvalidBoundary("exact evaluator missing".into())
            })?;
            for k in 1..=g {
                let i = ghost_i(k);
                let v = f(grid.x(i), grid.y(j));
                state.set_point(grid.slot(i, j), v);
            }
        }
        SideCondition::Inflow(v) => {
            for k in 1..=g {
                state.set_point(grid.slot(ghost_i(k), j), *v);
            }
        }
        SideCondition::OutflowExtrapolate => {
            for c in 0..m {
                let mut samples = [T::zero(); 5];
                for (t, slot) in samples.iter_mut().enumerate() {
                    // Samples ordered toward the boundary.
                    let i = if right { nx - 5 + t as isize } else { 4 - t as isize };
                    *slot = state.get(c, grid.slot(i, j));
                }
                let ghosts =
                    extrapolate_degree4(&samples, [T::one(), num(2.0), num(3.0)]);
                for (k, value) in ghosts.iter().enumerate() {
                    state.set(c, grid.slot(ghost_i(k as isize + 1), j), *value);
                }
            }
        }
        SideCondition::SlipWall => {
            for k in 1..=g {
                let src = if right { nx - k } else { k - 1 };
                let v = state.point(grid.slot(src, j));
                state.set_point(grid.slot(ghost_i(k), j), slip_mirror(v, m, Axis::X));
            }
        }
    }
    Ok(())
}

fn fill_line_y<T: Scalar>(
    state: &mut State<T>,
    grid: &Grid<T>,
    cond: &SideCondition<T>,
    exact: Option<&dyn Fn(T, T) -> CompVec<T>>,
    top: bool,
    i: isize,
    m: usize,
) -> Result<(), SolverError> {
    let g = GHOST as isize;
    let ny = grid.ny() as isize;
    let ghost_j = |k: isize| if top { ny - 1 + k } else { -k };
    match cond {
        SideCondition::Periodic => {
            for k in 1..=g {
                let src = if top { k - 1 } else { ny - k };
                let v = state.point(grid.slot(i, src));
                state.set_point(grid.slot(i, ghost_j(k)), v);
            }
        }
        SideCondition::DirichletExact => {
            let f = exact.ok_or_else(|| {
                SolverError::InvalidBoundary("exact evaluator missing".into())
            })?;
            for k in 1..=g {
                let j = ghost_j(k);
                let v = f(grid.x(i), grid.y(j));
                state.set_point(grid.slot(i, j), v);
            }
        }
        SideCondition::Inflow(v) => {
            for k in 1..=g {
                state.set_point(grid.slot(i, ghost_j(k)), *v);
            }
        }
        SideCondition::OutflowExtrapolate => {
            for c in 0..m {
                let mut samples = [T::zero(); 5];
                for (t, slot) in samples.iter_mut().enumerate() {
                    let j = if top { ny - 5 + t as isize } else { 4 - t as isize };
                    *slot = state.get(c, grid.slot(i, j));
                }
                let ghosts =
                    extrapolate_degree4(&samples, [T::one(), num(2.0), num(3.0)]);
                for (k, value) in ghosts.iter().enumerate() {
                    state.set(c, grid.slot(i, ghost_j(k as isize + 1)), *value);
                }
            }
        }
        SideCondition::SlipWall => {
            for k in 1..=g {
                let src = if top { ny - k } else { k - 1 };
                let v = state.point(grid.slot(i, src));
                state.set_point(grid.slot(i, ghost_j(k)), slip_mirror(v, m, Axis::Y));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid10() -> Grid<f64> {
        Grid::new_1d(0.0, 1.0, 10).unwrap()
    }

    fn seq_state(grid: &Grid<f64>) -> State<f64> {
        let mut s = State::zeros(1, grid.n_slots());
        for i in 0..10isize {
            s.set(0, grid.slot(i, 0), (i + 1) as f64);
        }
        s
    }

    #[test]
    fn periodic_wrap() {
        let grid = grid10();
        let mut s = seq_state(&grid);
        let bset = BoundarySet::one_dimensional(SideCondition::Periodic, SideCondition::Periodic);
        apply_boundary(&mut s, &grid, &bset, None).unwrap();
        assert_eq!(
            [s.get(0, grid.slot(-3, 0)), s.get(0, grid.slot(-2, 0)), s.get(0, grid.slot(-1, 0))],
            [8.0, 9.0, 10.0]
        );
        assert_eq!(
            [s.get(0, grid.slot(10, 0)), s.get(0, grid.slot(11, 0)), s.get(0, grid.slot(12, 0))],
            [1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn periodic_commutes_with_cyclic_shift() {
        let grid = grid10();
        let vals: Vec<f64> = (0..10).map(|i| (i as f64 * 0.7).sin()).collect();
        let fill = |rot: usize| {
            let mut s = State::zeros(1, grid.n_slots());
            for i in 0..10usize {
                s.set(0, grid.slot(i as isize, 0), vals[(i + rot) % 10]);
            }
            let bset =
                BoundarySet::one_dimensional(SideCondition::Periodic, SideCondition::Periodic);
            apply_boundary(&mut s, &grid, &bset, None).unwrap();
            s
        };
        let a = fill(0);
        let b = fill(3);
        // Shifting data by 3 shifts the extended line by 3.
        for i in -3..10isize {
            let shifted = if i + 3 < 10 { i + 3 } else { i + 3 - 10 };
            assert_eq!(a.get(0, grid.slot(shifted, 0)), b.get(0, grid.slot(i, 0)));
        }
    }

    #[test]
    fn slip_wall_mirror_values() {
        let grid = Grid::<f64>::new_2d((0.0, 1.0), (0.0, 1.0), 8, 8).unwrap();
        let mut s = State::zeros(4, grid.n_slots());
        for j in 0..8isize {
            for i in 0..8isize {
                s.set_point(
                    grid.slot(i, j),
                    CompVec::from_slice(&[1.0, 1.0, 0.3 + j as f64, 3.0]),
                );
            }
        }
        let bset = BoundarySet::two_dimensional(
            SideCondition::Inflow(CompVec::from_slice(&[1.0, 1.0, 0.3, 3.0])),
            SideCondition::OutflowExtrapolate,
            SideCondition::SlipWall,
            SideCondition::OutflowExtrapolate,
        );
        apply_boundary(&mut s, &grid, &bset, None).unwrap();
        // First ghost row mirrors the first interior row with rho*v negated.
        let ghost = s.point(grid.slot(4, -1));
        assert_eq!(ghost.as_slice(), &[1.0, 1.0, -0.3, 3.0]);
        let ghost2 = s.point(grid.slot(4, -2));
        assert_eq!(ghost2.as_slice(), &[1.0, 1.0, -1.3, 3.0]);
    }

    #[test]
    fn double_reflection_is_identity() {
        let u = CompVec::from_slice(&[1.2, -0.4, 0.9, 2.5]);
        let once = slip_mirror(u, 4, Axis::Y);
        assert_eq!(slip_mirror(once, 4, Axis::Y), u);
    }

    #[test]
    fn extrapolation_examples() {
        let c = extrapolate_degree4(&[2.5f64; 5], [1.0, 2.0, 3.0]);
        assert!(c.iter().all(|&v| (v - 2.5).abs() < 1e-12));

        let lin = extrapolate_degree4(&[1.0, 2.0, 3.0, 4.0, 5.0], [1.0, 2.0, 3.0]);
        for (k, v) in lin.iter().enumerate() {
            assert!((v - (6.0 + k as f64)).abs() < 1e-12);
        }

        // f(t) = t^4 sampled at t = 1..5; the ghost at t = 6 is 1296.
        let quartic: [f64; 5] = core::array::from_fn(|k| ((k + 1) as f64).powi(4));
        let g = extrapolate_degree4(&quartic, [1.0]);
        assert!((g[0] - 1296.0).abs() < 1e-9);
    }

    #[test]
    fn outflow_ghosts_are_exact_for_quartics() {
        let grid = grid10();
        let mut s = State::zeros(1, grid.n_slots());
        let f = |x: f64| x.powi(4);
        for i in 0..10isize {
            s.set(0, grid.slot(i, 0), f(grid.x(i)));
        }
        let bset = BoundarySet::one_dimensional(
            SideCondition::OutflowExtrapolate,
            SideCondition::OutflowExtrapolate,
        );
        apply_boundary(&mut s, &grid, &bset, None).unwrap();
        for i in [-3isize, -2, -1, 10, 11, 12] {
            assert!(
                (s.get(0, grid.slot(i, 0)) - f(grid.x(i))).abs() < 1e-10,
                "ghost {i}"
            );
        }
    }

    #[test]
    fn apply_boundary_is_idempotent() {
        let grid = Grid::<f64>::new_2d((0.0, 2.0), (0.0, 1.0), 9, 7).unwrap();
        let mut s = State::zeros(4, grid.n_slots());
        for j in 0..7isize {
            for i in 0..9isize {
                s.set_point(
                    grid.slot(i, j),
                    CompVec::from_slice(&[
                        (i * 7 + j) as f64 * 0.1 + 1.0,
                        j as f64 - 2.0,
                        i as f64 * 0.3,
                        5.0 + (i + j) as f64,
                    ]),
                );
            }
        }
        let bset = BoundarySet::two_dimensional(
            SideCondition::Periodic,
            SideCondition::Periodic,
            SideCondition::SlipWall,
            SideCondition::OutflowExtrapolate,
        );
        apply_boundary(&mut s, &grid, &bset, None).unwrap();
        let first = s.clone();
        apply_boundary(&mut s, &grid, &bset, None).unwrap();
        for c in 0..4 {
            assert_eq!(first.component(c), s.component(c));
        }
    }

    #[test]
    fn periodic_mismatch_rejected() {
        let grid = grid10();
        let bset = BoundarySet::one_dimensional(
            SideCondition::Periodic,
            SideCondition::OutflowExtrapolate,
        );
        assert!(bset.validate(&grid, false).is_err());
    }

    #[test]
    fn plate_resolution_and_mirror_rule() {
        let grid = Grid::<f64>::new_2d((0.0, 10.0), (-5.0, 5.0), 100, 100).unwrap();
        let plates = vec![Plate {
            normal: Axis::Y,
            position: 0.0,
            span: (1.0, 2.0),
        }];
        let resolved = resolve_plates(&plates, &grid).unwrap();
        assert_eq!(resolved[0].k, 50);
        // x in [1,2] covers points with 1 <= x0 + (i+1/2)*0.1 <= 2.
        assert_eq!(resolved[0].lo, 10);
        assert_eq!(resolved[0].hi, 19);

        // A window crossing the wall inside the span sees it; outside the
        // span it does not.
        assert_eq!(wall_between(&resolved, Axis::Y, 15, 49, 51), Some(50));
        assert_eq!(wall_between(&resolved, Axis::Y, 15, 49, 48), None);
        assert_eq!(wall_between(&resolved, Axis::Y, 40, 49, 51), None);
        assert_eq!(wall_between(&resolved, Axis::X, 15, 49, 51), None);
    }

    #[test]
    fn plate_off_interface_rejected() {
        let grid = Grid::<f64>::new_2d((0.0, 10.0), (-5.0, 5.0), 100, 100).unwrap();
        let plates = vec![Plate {
            normal: Axis::Y,
            position: 0.033,
            span: (1.0, 2.0),
        }];
        assert!(resolve_plates(&plates, &grid).is_err());
        let too_close = vec![Plate {
            normal: Axis::Y,
            position: -4.9,
            span: (1.0, 2.0),
        }];
        assert!(resolve_plates(&too_close, &grid).is_err());
    }
}
