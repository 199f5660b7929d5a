//! Fixed-point iterative drivers for the steady problem: forward-Euler
//! Jacobi, TVD-RK3 Jacobi and the forward-Euler fast sweeping scheme,
//! together with the spatial operator, the pseudo-time step and residue
//! tracking.
//!
//! Iteration counting follows the convention that a complete update of
//! all grid points counts once: one RK3 step reports three iterations,
//! one directional sweep reports one. Accumulated pseudo-time adds the
//! step size once per forward-Euler iteration or sweep and once per
//! complete RK3 step.

use crate::boundary::{
    apply_boundary, resolve_plates, slip_mirror, wall_between, BoundarySet, ResolvedPlate,
};
use crate::flux::{numerical_flux_line, wave_speeds, InterfaceAverage, SplitAlpha, WaveSpeeds};
use crate::grid::{Axis, CompVec, Dim, Grid, State};
use crate::models::Model;
use crate::weno::ReconstructionConfig;
use crate::{num, Scalar, SolverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    FeJacobi,
    Rk3Jacobi,
    FeSweep,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::FeJacobi => "fe-jacobi",
            SchemeKind::Rk3Jacobi => "rk3-jacobi",
            SchemeKind::FeSweep => "fe-sweep",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fe-jacobi" => Some(SchemeKind::FeJacobi),
            "rk3-jacobi" => Some(SchemeKind::Rk3Jacobi),
            "fe-sweep" => Some(SchemeKind::FeSweep),
            _ => None,
        }
    }
}

/// Scheme selection and iteration controls.
#[derive(Clone, Copy, Debug)]
pub struct SchemeConfig<T> {
    pub kind: SchemeKind,
    /// CFL number of the pseudo-time step.
    pub cfl: T,
    /// Convergence threshold on the average residue.
    pub tol: T,
    /// Cap on reported iterations.
    pub max_iterations: usize,
    /// A run is declared diverged once max |u| exceeds this multiple of
    /// its initial value.
    pub divergence_guard: T,
    /// Worker threads for the Jacobi-type point loops; sweeps are
    /// sequential by definition.
    pub threads: usize,
}

impl<T: Scalar> SchemeConfig<T> {
    pub fn new(kind: SchemeKind, cfl: T) -> Self {
        SchemeConfig {
            kind,
            cfl,
            tol: num(1e-12),
            max_iterations: 100_000,
            divergence_guard: num(1e6),
            threads: 1,
        }
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iterations(mut self, cap: usize) -> Self {
        self.max_iterations = cap;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.cfl > T::zero()) {
            return Err(SolverError::InvalidConfig("cfl must be positive".into()));
        }
        if !(self.tol > T::zero()) {
            return Err(SolverError::InvalidConfig("tol must be positive".into()));
        }
        if self.max_iterations == 0 {
            return Err(SolverError::InvalidConfig(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// One of the four alternating sweep traversals:
/// 1: (i up, j up), 2: (i down, j up), 3: (i down, j down),
/// 4: (i up, j down).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOrdering(u8);

impl SweepOrdering {
    pub fn first() -> Self {
        SweepOrdering(1)
    }

    pub fn ordinal(self) -> u8 {
        self.0
    }

    pub fn next(self) -> Self {
        SweepOrdering(self.0 % 4 + 1)
    }

    pub fn i_ascending(self) -> bool {
        matches!(self.0, 1 | 4)
    }

    pub fn j_ascending(self) -> bool {
        matches!(self.0, 1 | 2)
    }
}

/// Per-iteration residue record.
#[derive(Clone, Copy, Debug)]
pub struct ResidueRecord<T> {
    /// Reported iteration count after this step.
    pub iteration: usize,
    pub res_a: T,
    pub dt: T,
    /// Accumulated pseudo-time.
    pub time: T,
    /// Sweep ordering ordinal, for fast-sweeping steps.
    pub ordering: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    NotConvergent,
    Diverged,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Converged => "converged",
            Outcome::NotConvergent => "not_convergent",
            Outcome::Diverged => "diverged",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary<T> {
    pub outcome: Outcome,
    pub iterations: usize,
    pub final_time: T,
    pub final_res_a: T,
    /// Error norms of the designated component against the exact
    /// solution, when the case has one (filled by the case layer).
    pub l1_error: Option<T>,
    pub linf_error: Option<T>,
}

/// Pseudo-time step `dt = cfl / (alpha_x/dx + alpha_y/dy)`; the y term
/// drops out in 1D.
pub fn pseudo_time_step<T: Scalar>(cfl: T, alpha: &WaveSpeeds<T>, grid: &Grid<T>) -> T {
    let mut denom = alpha.alpha_x / grid.dx();
    if grid.dim() == Dim::Two {
        denom += alpha.alpha_y / grid.dy();
    }
    cfl / denom
}

/// Average residue: mean over points and components of `|du| / dt`.
pub fn average_residue<T: Scalar>(increments: &[T], dt: T, m: usize, npoints: usize) -> T {
    debug_assert_eq!(increments.len(), m * npoints);
    let mut sum = T::zero();
    for &x in increments {
        sum += x.abs();
    }
    sum / (dt * num::<T>((m * npoints) as f64))
}

/// Interface fluxes seen from one point.
#[derive(Clone, Copy, Debug)]
pub struct PointFluxes<T> {
    pub x_minus: CompVec<T>,
    pub x_plus: CompVec<T>,
    pub y_minus: Option<CompVec<T>>,
    pub y_plus: Option<CompVec<T>>,
}

/// A model, grid, boundary set and reconstruction configuration bound
/// together; immutable during iteration and shareable across threads.
#[derive(Clone, Debug)]
pub struct Simulation<T> {
    model: Model<T>,
    grid: Grid<T>,
    boundary: BoundarySet<T>,
    recon: ReconstructionConfig<T>,
    average: InterfaceAverage,
    split: SplitAlpha,
    plates: Vec<ResolvedPlate>,
}

impl<T: Scalar> Simulation<T> {
    pub fn new(
        model: Model<T>,
        grid: Grid<T>,
        boundary: BoundarySet<T>,
        recon: ReconstructionConfig<T>,
    ) -> Result<Self, SolverError> {
        if model.dim() != grid.dim() {
            return Err(SolverError::InvalidConfig(format!(
                "model {} does not match the grid dimensionality",
                model.id().name()
            )));
        }
        recon.validate()?;
        boundary.validate(&grid, model.has_exact())?;
        let y_wall = boundary
            .bottom
            .iter()
            .chain(boundary.top.iter())
            .any(|c| matches!(c, crate::boundary::SideCondition::SlipWall))
            || boundary.plates.iter().any(|p| p.normal == Axis::Y);
        if y_wall && model.m() < 3 {
            return Err(SolverError::InvalidBoundary(
                "y-normal walls need a model with a v-momentum component".into(),
            ));
        }
        let plates = resolve_plates(&boundary.plates, &grid)?;
        Ok(Simulation {
            model,
            grid,
            boundary,
            recon,
            average: InterfaceAverage::default(),
            split: SplitAlpha::default(),
            plates,
        })
    }

    pub fn with_interface_average(mut self, average: InterfaceAverage) -> Self {
        self.average = average;
        self
    }

    pub fn with_split_alpha(mut self, split: SplitAlpha) -> Self {
        self.split = split;
        self
    }

    pub fn model(&self) -> &Model<T> {
        &self.model
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn reconstruction(&self) -> &ReconstructionConfig<T> {
        &self.recon
    }

    pub fn new_state(&self) -> State<T> {
        State::zeros(self.model.m(), self.grid.n_slots())
    }

    /// Fill all ghost layers of `state` according to the boundary set.
    pub fn apply_boundary(&self, state: &mut State<T>) -> Result<(), SolverError> {
        let model = self.model;
        let f = move |x: T, y: T| model.exact(x, y).expect("exact checked at setup");
        let exact: Option<&dyn Fn(T, T) -> CompVec<T>> = if self.model.has_exact() {
            Some(&f)
        } else {
            None
        };
        apply_boundary(state, &self.grid, &self.boundary, exact)
    }

    pub fn wave_speeds(&self, state: &State<T>) -> Result<WaveSpeeds<T>, SolverError> {
        wave_speeds(&self.model, state, &self.grid)
    }

    /// Seven consecutive states along `axis` centered on `(i, j)`, with
    /// cross-wall values replaced by slip-mirrored near-side values where
    /// an embedded plate separates them from the center point.
    #[inline]
    fn gather7(&self, state: &State<T>, axis: Axis, i: isize, j: isize) -> [CompVec<T>; 7] {
        let m = self.model.m();
        let mut out = [CompVec::zeros(m); 7];
        match axis {
            Axis::X => {
                for (idx, slot) in out.iter_mut().enumerate() {
                    let target = i + idx as isize - 3;
                    *slot = match wall_between(&self.plates, Axis::X, j, i, target) {
                        None => state.point(self.grid.slot(target, j)),
                        Some(k) => {
                            let mirrored = 2 * k - 1 - target;
                            slip_mirror(state.point(self.grid.slot(mirrored, j)), m, Axis::X)
                        }
                    };
                }
            }
            Axis::Y => {
                for (idx, slot) in out.iter_mut().enumerate() {
                    let target = j + idx as isize - 3;
                    *slot = match wall_between(&self.plates, Axis::Y, i, j, target) {
                        None => state.point(self.grid.slot(i, target)),
                        Some(k) => {
                            let mirrored = 2 * k - 1 - target;
                            slip_mirror(state.point(self.grid.slot(i, mirrored)), m, Axis::Y)
                        }
                    };
                }
            }
        }
        out
    }

    /// Interface fluxes around point `(i, j)` as seen from that point,
    /// reading stencil values from `state`.
    ///
    /// The caller controls freshness by choosing which array to read: an
    /// iteration-n snapshot (Jacobi) or the live, partially updated field
    /// (Gauss-Seidel sweeps), where the fluxes at a shared interface may
    /// differ between neighbors mid-iteration.
    pub fn point_fluxes(
        &self,
        state: &State<T>,
        alpha: &WaveSpeeds<T>,
        i: isize,
        j: isize,
    ) -> Result<PointFluxes<T>, SolverError> {
        let line = self.gather7(state, Axis::X, i, j);
        let lower: [CompVec<T>; 6] = line[0..6].try_into().expect("window size");
        let upper: [CompVec<T>; 6] = line[1..7].try_into().expect("window size");
        let x_minus = numerical_flux_line(
            &self.model,
            &lower,
            Axis::X,
            alpha,
            &self.recon,
            self.average,
            self.split,
        )?;
        let x_plus = numerical_flux_line(
            &self.model,
            &upper,
            Axis::X,
            alpha,
            &self.recon,
            self.average,
            self.split,
        )?;
        let (y_minus, y_plus) = match self.grid.dim() {
            Dim::One => (None, None),
            Dim::Two => {
                let col = self.gather7(state, Axis::Y, i, j);
                let lower: [CompVec<T>; 6] = col[0..6].try_into().expect("window size");
                let upper: [CompVec<T>; 6] = col[1..7].try_into().expect("window size");
                let g_minus = numerical_flux_line(
                    &self.model,
                    &lower,
                    Axis::Y,
                    alpha,
                    &self.recon,
                    self.average,
                    self.split,
                )?;
                let g_plus = numerical_flux_line(
                    &self.model,
                    &upper,
                    Axis::Y,
                    alpha,
                    &self.recon,
                    self.average,
                    self.split,
                )?;
                (Some(g_minus), Some(g_plus))
            }
        };
        Ok(PointFluxes {
            x_minus,
            x_plus,
            y_minus,
            y_plus,
        })
    }

    /// Spatial operator `L` at one point: the negative flux divergence
    /// plus the source.
    pub fn spatial_operator(
        &self,
        state: &State<T>,
        alpha: &WaveSpeeds<T>,
        i: isize,
        j: isize,
    ) -> Result<CompVec<T>, SolverError> {
        let f = self.point_fluxes(state, alpha, i, j)?;
        let mut l = (f.x_minus - f.x_plus).scale(T::one() / self.grid.dx());
        if let (Some(g_minus), Some(g_plus)) = (f.y_minus, f.y_plus) {
            l = l + (g_minus - g_plus).scale(T::one() / self.grid.dy());
        }
        if self.model.has_source() {
            let u = state.point(self.grid.slot(i, j));
            l = l + self.model.source(u, self.grid.x(i), self.grid.y(j));
        }
        Ok(l)
    }

    /// Fill `inc` with `dt * L` over all interior points (row-major,
    /// point-major layout), reading stencil data from `state`. Rows are
    /// distributed over `threads` workers; the stored values do not
    /// depend on the thread count.
    fn increments_pass(
        &self,
        state: &State<T>,
        alpha: &WaveSpeeds<T>,
        dt: T,
        inc: &mut [T],
        threads: usize,
    ) -> Result<(), SolverError> {
        let nx = self.grid.nx();
        let ny = self.grid.ny();
        let m = self.model.m();
        debug_assert_eq!(inc.len(), nx * ny * m);

        if threads <= 1 || ny < 2 * threads {
            for j in 0..ny {
                for i in 0..nx {
                    let l = self.spatial_operator(state, alpha, i as isize, j as isize)?;
                    let base = (j * nx + i) * m;
                    for c in 0..m {
                        inc[base + c] = dt * l[c];
                    }
                }
            }
            return Ok(());
        }

        let rows_per = ny.div_ceil(threads);
        let mut results: Vec<Result<(), SolverError>> = Vec::new();
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            let mut rest = inc;
            let mut j0 = 0usize;
            while j0 < ny {
                let j1 = (j0 + rows_per).min(ny);
                let (chunk, tail) = rest.split_at_mut((j1 - j0) * nx * m);
                rest = tail;
                let sim = &*self;
                handles.push(scope.spawn(move || {
                    for j in j0..j1 {
                        for i in 0..nx {
                            let l =
                                sim.spatial_operator(state, alpha, i as isize, j as isize)?;
                            let base = ((j - j0) * nx + i) * m;
                            for c in 0..m {
                                chunk[base + c] = dt * l[c];
                            }
                        }
                    }
                    Ok(())
                }));
                j0 = j1;
            }
            for h in handles {
                results.push(h.join().expect("worker panicked"));
            }
        });
        for r in results {
            r?;
        }
        Ok(())
    }
}

/// Iteration state of one steady-state solve: the evolving field, the
/// sweep-ordering cycle, counters and residue history.
pub struct Run<'a, T> {
    sim: &'a Simulation<T>,
    cfg: SchemeConfig<T>,
    state: State<T>,
    aux1: State<T>,
    aux2: State<T>,
    inc: Vec<T>,
    ordering: SweepOrdering,
    iterations: usize,
    time: T,
    history: Vec<ResidueRecord<T>>,
    guard: T,
    max_abs: T,
    outcome: Option<Outcome>,
}

impl<'a, T: Scalar> Run<'a, T> {
    pub fn new(
        sim: &'a Simulation<T>,
        init: State<T>,
        cfg: SchemeConfig<T>,
    ) -> Result<Self, SolverError> {
        cfg.validate()?;
        if init.m() != sim.model.m() || init.n_slots() != sim.grid.n_slots() {
            return Err(SolverError::InvalidConfig(
                "initial state does not match the simulation layout".into(),
            ));
        }
        let mut max0 = T::zero();
        for (i, j) in sim.grid.interior() {
            max0 = max0.max(init.point(sim.grid.slot(i, j)).max_abs());
        }
        if !max0.is_finite() {
            return Err(SolverError::InvalidConfig(
                "initial state contains non-finite values".into(),
            ));
        }
        let guard = cfg.divergence_guard * max0.max(T::one());
        let n = sim.grid.n_interior() * sim.model.m();
        let aux1 = init.clone();
        let aux2 = init.clone();
        Ok(Run {
            sim,
            cfg,
            state: init,
            aux1,
            aux2,
            inc: vec![T::zero(); n],
            ordering: SweepOrdering::first(),
            iterations: 0,
            time: T::zero(),
            history: Vec::new(),
            guard,
            max_abs: max0,
            outcome: None,
        })
    }

    pub fn state(&self) -> &State<T> {
        &self.state
    }

    pub fn history(&self) -> &[ResidueRecord<T>] {
        &self.history
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn time(&self) -> T {
        self.time
    }

    pub fn last_res_a(&self) -> Option<T> {
        self.history.last().map(|r| r.res_a)
    }

    pub fn next_ordering(&self) -> SweepOrdering {
        self.ordering
    }

    /// One forward-Euler Jacobi iteration: `u <- u + dt L(u)` from an
    /// iteration-n snapshot at every interior point.
    pub fn fe_jacobi_iteration(&mut self) -> Result<T, SolverError> {
        self.sim.apply_boundary(&mut self.state)?;
        let alpha = self.sim.wave_speeds(&self.state)?;
        let dt = pseudo_time_step(self.cfg.cfl, &alpha, &self.sim.grid);
        self.sim
            .increments_pass(&self.state, &alpha, dt, &mut self.inc, self.cfg.threads)?;

        let (nx, m) = (self.sim.grid.nx(), self.sim.model.m());
        let mut max_abs = T::zero();
        for (i, j) in self.sim.grid.interior() {
            let slot = self.sim.grid.slot(i, j);
            let base = ((j as usize) * nx + i as usize) * m;
            let mut v = self.state.point(slot);
            for c in 0..m {
                v[c] += self.inc[base + c];
            }
            max_abs = max_abs.max(v.max_abs());
            self.aux1.set_point(slot, v);
        }
        std::mem::swap(&mut self.state, &mut self.aux1);
        self.max_abs = max_abs;

        let res_a = average_residue(&self.inc, dt, m, self.sim.grid.n_interior());
        self.iterations += 1;
        self.time += dt;
        self.history.push(ResidueRecord {
            iteration: self.iterations,
            res_a,
            dt,
            time: self.time,
            ordering: None,
        });
        Ok(res_a)
    }

    /// One TVD-RK3 step (three reported iterations): the classic
    /// three-stage convex combination, with ghosts refilled before every
    /// stage and wave speeds frozen at the step start.
    ///
    /// Stages are applied in incremental form (`u + c (v - u) + c dt L`),
    /// which is algebraically identical and leaves exact fixed points
    /// bit-for-bit unchanged.
    pub fn rk3_jacobi_iteration(&mut self) -> Result<T, SolverError> {
        // Convex stage coefficients; their complements must sum to one.
        const STAGE2: f64 = 0.25; // pairs with 3/4
        const STAGE3: f64 = 2.0 / 3.0; // pairs with 1/3
        debug_assert_eq!(0.75 + STAGE2, 1.0);
        debug_assert_eq!(1.0 / 3.0 + STAGE3, 1.0);

        let grid = &self.sim.grid;
        let (nx, m) = (grid.nx(), self.sim.model.m());

        self.sim.apply_boundary(&mut self.state)?;
        let alpha = self.sim.wave_speeds(&self.state)?;
        let dt = pseudo_time_step(self.cfg.cfl, &alpha, grid);

        // Stage 1: u1 = u + dt L(u).
        self.sim
            .increments_pass(&self.state, &alpha, dt, &mut self.inc, self.cfg.threads)?;
        for (i, j) in grid.interior() {
            let slot = grid.slot(i, j);
            let base = ((j as usize) * nx + i as usize) * m;
            let mut v = self.state.point(slot);
            for c in 0..m {
                v[c] += self.inc[base + c];
            }
            self.aux1.set_point(slot, v);
        }

        // Stage 2: u2 = u + 1/4 (u1 - u) + 1/4 dt L(u1).
        self.sim.apply_boundary(&mut self.aux1)?;
        self.sim
            .increments_pass(&self.aux1, &alpha, dt, &mut self.inc, self.cfg.threads)?;
        let c2 = num::<T>(STAGE2);
        for (i, j) in grid.interior() {
            let slot = grid.slot(i, j);
            let base = ((j as usize) * nx + i as usize) * m;
            let u = self.state.point(slot);
            let u1 = self.aux1.point(slot);
            let mut v = u;
            for c in 0..m {
                v[c] += c2 * (u1[c] - u[c]) + c2 * self.inc[base + c];
            }
            self.aux2.set_point(slot, v);
        }

        // Stage 3: u_next = u + 2/3 (u2 - u) + 2/3 dt L(u2).
        self.sim.apply_boundary(&mut self.aux2)?;
        self.sim
            .increments_pass(&self.aux2, &alpha, dt, &mut self.inc, self.cfg.threads)?;
        let c3 = num::<T>(STAGE3);
        let mut max_abs = T::zero();
        for (i, j) in grid.interior() {
            let slot = grid.slot(i, j);
            let base = ((j as usize) * nx + i as usize) * m;
            let u = self.state.point(slot);
            let u2 = self.aux2.point(slot);
            let mut v = u;
            for c in 0..m {
                v[c] += c3 * (u2[c] - u[c]) + c3 * self.inc[base + c];
                // Full-step increment for the residue.
                self.inc[base + c] = v[c] - u[c];
            }
            max_abs = max_abs.max(v.max_abs());
            self.aux1.set_point(slot, v);
        }
        std::mem::swap(&mut self.state, &mut self.aux1);
        self.max_abs = max_abs;

        let res_a = average_residue(&self.inc, dt, m, grid.n_interior());
        self.iterations += 3;
        self.time += dt;
        self.history.push(ResidueRecord {
            iteration: self.iterations,
            res_a,
            dt,
            time: self.time,
            ordering: None,
        });
        Ok(res_a)
    }

    /// One Gauss-Seidel sweep in the next ordering of the 4-cycle:
    /// points update in place and stencils read the newest available
    /// values; wave speeds and step size are frozen at the sweep start.
    pub fn sweep_iteration(&mut self) -> Result<T, SolverError> {
        self.sweep_internal(None)
    }

    /// A sweep that also records, for every interior interface, the flux
    /// computed from the perspective of each of its two neighbors, and
    /// returns the maximum componentwise disagreement. At a fixed point
    /// of the iteration the interface flux is single-valued. Interfaces
    /// on embedded walls are excluded: the two sides legitimately see
    /// different wall fluxes.
    pub fn sweep_flux_agreement(&mut self) -> Result<T, SolverError> {
        let (nx, ny, m) = (
            self.sim.grid.nx(),
            self.sim.grid.ny(),
            self.sim.model.m(),
        );
        let mut ledger = FluxLedger {
            x_first: vec![None; (nx + 1) * ny],
            y_first: vec![None; nx * (ny + 1)],
            max_diff: T::zero(),
            m,
            nx,
            ny,
        };
        self.sweep_internal(Some(&mut ledger))?;
        Ok(ledger.max_diff)
    }

    fn sweep_internal(
        &mut self,
        mut observer: Option<&mut FluxLedger<T>>,
    ) -> Result<T, SolverError> {
        self.sim.apply_boundary(&mut self.state)?;
        let alpha = self.sim.wave_speeds(&self.state)?;
        let dt = pseudo_time_step(self.cfg.cfl, &alpha, &self.sim.grid);
        let ordering = self.ordering;
        self.ordering = ordering.next();

        let grid = &self.sim.grid;
        let (nx, ny, m) = (
            grid.nx() as isize,
            grid.ny() as isize,
            self.sim.model.m(),
        );
        let mut max_abs = T::zero();

        let mut j = if ordering.j_ascending() { 0 } else { ny - 1 };
        loop {
            let mut i = if ordering.i_ascending() { 0 } else { nx - 1 };
            loop {
                let fluxes = self.sim.point_fluxes(&self.state, &alpha, i, j)?;
                if let Some(ledger) = observer.as_deref_mut() {
                    ledger.record(&self.sim.plates, i, j, &fluxes);
                }
                let mut l = (fluxes.x_minus - fluxes.x_plus).scale(T::one() / grid.dx());
                if let (Some(gm), Some(gp)) = (fluxes.y_minus, fluxes.y_plus) {
                    l = l + (gm - gp).scale(T::one() / grid.dy());
                }
                let slot = grid.slot(i, j);
                let u = self.state.point(slot);
                if self.sim.model.has_source() {
                    l = l + self.sim.model.source(u, grid.x(i), grid.y(j));
                }
                let base = ((j as usize) * nx as usize + i as usize) * m;
                let mut v = u;
                for c in 0..m {
                    let step = dt * l[c];
                    self.inc[base + c] = step;
                    v[c] += step;
                }
                max_abs = max_abs.max(v.max_abs());
                self.state.set_point(slot, v);

                i += if ordering.i_ascending() { 1 } else { -1 };
                if i < 0 || i >= nx {
                    break;
                }
            }
            j += if ordering.j_ascending() { 1 } else { -1 };
            if j < 0 || j >= ny {
                break;
            }
        }
        self.max_abs = max_abs;

        let res_a = average_residue(&self.inc, dt, m, grid.n_interior());
        self.iterations += 1;
        self.time += dt;
        self.history.push(ResidueRecord {
            iteration: self.iterations,
            res_a,
            dt,
            time: self.time,
            ordering: Some(ordering.ordinal()),
        });
        Ok(res_a)
    }

    /// One scheme unit: an FE iteration, a full RK3 step, or one sweep.
    pub fn step_once(&mut self) -> Result<T, SolverError> {
        match self.cfg.kind {
            SchemeKind::FeJacobi => self.fe_jacobi_iteration(),
            SchemeKind::Rk3Jacobi => self.rk3_jacobi_iteration(),
            SchemeKind::FeSweep => self.sweep_iteration(),
        }
    }

    fn classify(&self, res_a: T) -> Option<Outcome> {
        if !res_a.is_finite() || !self.max_abs.is_finite() || self.max_abs > self.guard {
            return Some(Outcome::Diverged);
        }
        if res_a < self.cfg.tol {
            return Some(Outcome::Converged);
        }
        if self.iterations >= self.cfg.max_iterations {
            return Some(Outcome::NotConvergent);
        }
        None
    }

    /// Iterate until convergence, the iteration cap, or divergence,
    /// invoking `observer` after every step.
    pub fn solve_with(
        &mut self,
        mut observer: impl FnMut(&State<T>, &ResidueRecord<T>),
    ) -> Outcome {
        let outcome = loop {
            match self.step_once() {
                Err(_) => break Outcome::Diverged,
                Ok(res_a) => {
                    observer(&self.state, self.history.last().expect("recorded"));
                    if let Some(outcome) = self.classify(res_a) {
                        break outcome;
                    }
                }
            }
        };
        self.outcome = Some(outcome);
        outcome
    }

    pub fn solve(&mut self) -> Outcome {
        self.solve_with(|_, _| {})
    }

    /// Continue for at least `extra` further reported iterations past the
    /// current point regardless of the tolerance, returning the largest
    /// residue observed. Used to examine the round-off floor after
    /// convergence.
    pub fn run_additional(&mut self, extra: usize) -> Result<T, SolverError> {
        let target = self.iterations + extra;
        let mut worst = T::zero();
        while self.iterations < target {
            let res_a = self.step_once()?;
            if !res_a.is_finite() {
                return Err(SolverError::NonPhysical(
                    "residue became non-finite".into(),
                ));
            }
            worst = worst.max(res_a);
        }
        Ok(worst)
    }

    pub fn summary(&self) -> RunSummary<T> {
        let last = self.history.last();
        RunSummary {
            outcome: self.outcome.unwrap_or(Outcome::NotConvergent),
            iterations: self.iterations,
            final_time: self.time,
            final_res_a: last.map(|r| r.res_a).unwrap_or_else(T::infinity),
            l1_error: None,
            linf_error: None,
        }
    }

    pub fn into_parts(self) -> (RunSummary<T>, Vec<ResidueRecord<T>>, State<T>) {
        let summary = self.summary();
        (summary, self.history, self.state)
    }
}

/// Interface flux bookkeeping for the conservation check: interfaces not
/// on an embedded wall are visited from both sides during a sweep.
struct FluxLedger<T> {
    x_first: Vec<Option<CompVec<T>>>,
    y_first: Vec<Option<CompVec<T>>>,
    max_diff: T,
    m: usize,
    nx: usize,
    ny: usize,
}

impl<T: Scalar> FluxLedger<T> {
    fn record(&mut self, plates: &[ResolvedPlate], i: isize, j: isize, f: &PointFluxes<T>) {
        // x interfaces of row j: id i is the face at x_{i-1/2}.
        let row = (j as usize) * (self.nx + 1);
        if wall_between(plates, Axis::X, j, i - 1, i).is_none() {
            Self::stash(&mut self.x_first, &mut self.max_diff, self.m, row + i as usize, f.x_minus);
        }
        if wall_between(plates, Axis::X, j, i, i + 1).is_none() {
            Self::stash(&mut self.x_first, &mut self.max_diff, self.m, row + i as usize + 1, f.x_plus);
        }
        if let (Some(gm), Some(gp)) = (f.y_minus, f.y_plus) {
            // y interfaces of column i: id j is the face at y_{j-1/2}.
            let col = (i as usize) * (self.ny + 1);
            if wall_between(plates, Axis::Y, i, j - 1, j).is_none() {
                Self::stash(&mut self.y_first, &mut self.max_diff, self.m, col + j as usize, gm);
            }
            if wall_between(plates, Axis::Y, i, j, j + 1).is_none() {
                Self::stash(&mut self.y_first, &mut self.max_diff, self.m, col + j as usize + 1, gp);
            }
        }
    }

    fn stash(
        store: &mut [Option<CompVec<T>>],
        max_diff: &mut T,
        m: usize,
        id: usize,
        f: CompVec<T>,
    ) {
        match store[id] {
            None => store[id] = Some(f),
            Some(prev) => {
                for c in 0..m {
                    *max_diff = (*max_diff).max((prev[c] - f[c]).abs());
                }
            }
        }
    }
}

/// Convenience wrapper: drive `init` to steady state under `cfg`.
pub fn solve_to_steady<T: Scalar>(
    sim: &Simulation<T>,
    init: State<T>,
    cfg: SchemeConfig<T>,
) -> Result<(RunSummary<T>, Vec<ResidueRecord<T>>, State<T>), SolverError> {
    let mut run = Run::new(sim, init, cfg)?;
    run.solve();
    Ok(run.into_parts())
}
