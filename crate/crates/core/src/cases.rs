//! Benchmark case registry: thirteen steady-state problems with exact
//! geometry, initial guesses, boundary sets, tolerances and reference
//! accuracy/iteration data, plus error-norm and convergence-order
//! computation.

use crate::boundary::{BoundarySet, Plate, SideCondition};
use crate::grid::{Axis, CompVec, Dim, Grid, State};
use crate::models::{oblique_shock_primitives, rankine_hugoniot_states, Model, ModelId};
use crate::solver::{
    solve_to_steady, Outcome, ResidueRecord, RunSummary, SchemeConfig, SchemeKind, Simulation,
};
use crate::weno::ReconstructionConfig;
use crate::{num, Scalar, SolverError};

/// Initial iterate of a case.
#[derive(Clone, Debug)]
pub enum InitialGuess<T> {
    /// `beta` times the exact steady solution.
    ScaledExact(T),
    /// Constant conserved state everywhere.
    Uniform(CompVec<T>),
    /// Two states split at `x = split`.
    ShockX {
        left: CompVec<T>,
        right: CompVec<T>,
        split: T,
    },
    /// Two states split along the line `x + y = offset`.
    ShockDiagonal {
        upstream: CompVec<T>,
        downstream: CompVec<T>,
        offset: T,
    },
}

/// Reduced-size preset for the plate cases.
#[derive(Clone, Copy, Debug)]
pub struct DeskScale {
    pub nx: usize,
    pub ny: usize,
    pub tol: f64,
}

/// One row of a published accuracy table.
#[derive(Clone, Copy, Debug)]
pub struct AccuracyRow {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    pub iterations: usize,
}

/// One row of a published CFL scan; `None` marks a non-convergent entry.
#[derive(Clone, Copy, Debug)]
pub struct CflRow {
    pub cfl: f64,
    pub iterations: Option<usize>,
    pub final_time: Option<f64>,
}

/// Published reference results of one scheme on one case.
#[derive(Clone, Copy, Debug)]
pub struct SchemeReference {
    pub scheme: SchemeKind,
    /// CFL number of the accuracy rows.
    pub accuracy_cfl: f64,
    pub accuracy: &'static [AccuracyRow],
    pub cfl_scan: &'static [CflRow],
}

/// Fully specified benchmark case.
#[derive(Clone, Debug)]
pub struct CaseSpec<T> {
    pub id: u8,
    pub name: &'static str,
    pub model_id: ModelId,
    pub x_bounds: (T, T),
    pub y_bounds: Option<(T, T)>,
    pub default_nx: usize,
    pub default_ny: Option<usize>,
    /// Convergence threshold of the published runs.
    pub tol: T,
    pub initial: InitialGuess<T>,
    pub boundary: BoundarySet<T>,
    /// Component reported in error norms (density for Euler systems).
    pub error_component: usize,
    pub reference: &'static [SchemeReference],
    pub desk: Option<DeskScale>,
}

/// Error norms over interior points against the exact solution.
#[derive(Clone, Copy, Debug)]
pub struct ErrorNorms<T> {
    pub l1: T,
    pub linf: T,
}

/// One line of a produced accuracy table.
#[derive(Clone, Debug)]
pub struct AccuracyEntry<T> {
    pub n: usize,
    pub outcome: Outcome,
    pub iterations: usize,
    pub norms: Option<ErrorNorms<T>>,
    pub l1_order: Option<T>,
    pub linf_order: Option<T>,
    pub wall_seconds: f64,
}

/// Result bundle of one benchmark run.
pub struct CaseRun<T> {
    pub summary: RunSummary<T>,
    pub history: Vec<ResidueRecord<T>>,
    pub state: State<T>,
    pub grid: Grid<T>,
}

pub fn all_case_ids() -> impl Iterator<Item = u8> {
    1..=13
}

impl<T: Scalar> CaseSpec<T> {
    pub fn model(&self) -> Model<T> {
        Model::new(self.model_id)
    }

    pub fn dim(&self) -> Dim {
        if self.y_bounds.is_some() {
            Dim::Two
        } else {
            Dim::One
        }
    }

    pub fn has_exact(&self) -> bool {
        self.model().has_exact()
    }

    /// Grid with optional size overrides.
    pub fn grid(&self, nx: Option<usize>, ny: Option<usize>) -> Result<Grid<T>, SolverError> {
        let nx = nx.unwrap_or(self.default_nx);
        match self.y_bounds {
            None => Grid::new_1d(self.x_bounds.0, self.x_bounds.1, nx),
            Some(yb) => {
                let ny = ny.or(self.default_ny).unwrap_or(nx);
                Grid::new_2d(self.x_bounds, yb, nx, ny)
            }
        }
    }

    pub fn simulation(&self, grid: Grid<T>) -> Result<Simulation<T>, SolverError> {
        Simulation::new(
            self.model(),
            grid,
            self.boundary.clone(),
            ReconstructionConfig::default(),
        )
    }

    /// Scheme configuration with this case's tolerance.
    pub fn scheme_config(&self, kind: SchemeKind, cfl: T) -> SchemeConfig<T> {
        SchemeConfig::new(kind, cfl).with_tol(self.tol)
    }

    pub fn initial_state(&self, sim: &Simulation<T>) -> State<T> {
        let model = *sim.model();
        let mut state = sim.new_state();
        let guess = &self.initial;
        state.fill_with(sim.grid(), |x, y| match guess {
            InitialGuess::ScaledExact(beta) => model
                .exact(x, y)
                .expect("scaled-exact initial guess needs an exact solution")
                .scale(*beta),
            InitialGuess::Uniform(u) => *u,
            InitialGuess::ShockX { left, right, split } => {
                if x < *split {
                    *left
                } else {
                    *right
                }
            }
            InitialGuess::ShockDiagonal {
                upstream,
                downstream,
                offset,
            } => {
                if x + y < *offset {
                    *upstream
                } else {
                    *downstream
                }
            }
        });
        state
    }

    /// Drive the case to steady state and attach error norms when an
    /// exact solution exists.
    pub fn run(
        &self,
        cfg: SchemeConfig<T>,
        nx: Option<usize>,
        ny: Option<usize>,
    ) -> Result<CaseRun<T>, SolverError> {
        let grid = self.grid(nx, ny)?;
        let sim = self.simulation(grid.clone())?;
        let init = self.initial_state(&sim);
        let (mut summary, history, state) = solve_to_steady(&sim, init, cfg)?;
        if self.has_exact() {
            let model = self.model();
            let norms = error_norms(
                &state,
                &grid,
                |x, y| model.exact(x, y).expect("exact"),
                self.error_component,
            );
            summary.l1_error = Some(norms.l1);
            summary.linf_error = Some(norms.linf);
        }
        Ok(CaseRun {
            summary,
            history,
            state,
            grid,
        })
    }
}

/// Unweighted point norms of `state - exact` for one component.
pub fn error_norms<T: Scalar>(
    state: &State<T>,
    grid: &Grid<T>,
    exact: impl Fn(T, T) -> CompVec<T>,
    component: usize,
) -> ErrorNorms<T> {
    let mut sum = T::zero();
    let mut max = T::zero();
    for (i, j) in grid.interior() {
        let diff = (state.get(component, grid.slot(i, j))
            - exact(grid.x(i), grid.y(j))[component])
            .abs();
        sum += diff;
        max = max.max(diff);
    }
    ErrorNorms {
        l1: sum / num::<T>(grid.n_interior() as f64),
        linf: max,
    }
}

/// Observed convergence order between two meshes.
pub fn observed_order<T: Scalar>(e_coarse: T, e_fine: T, n_coarse: usize, n_fine: usize) -> T {
    (e_coarse / e_fine).ln() / (num::<T>(n_fine as f64) / num::<T>(n_coarse as f64)).ln()
}

/// Run a mesh sequence and tabulate errors, orders and iteration counts.
/// Non-converged runs are reported in their row rather than skipped.
pub fn accuracy_table<T: Scalar>(
    case: &CaseSpec<T>,
    kind: SchemeKind,
    cfl: T,
    meshes: &[usize],
) -> Result<Vec<AccuracyEntry<T>>, SolverError> {
    if !case.has_exact() {
        return Err(SolverError::NoExactSolution(case.id));
    }
    let mut entries: Vec<AccuracyEntry<T>> = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let cfg = case.scheme_config(kind, cfl);
        let started = std::time::Instant::now();
        let ny = match case.dim() {
            Dim::One => None,
            Dim::Two => Some(n),
        };
        let run = case.run(cfg, Some(n), ny)?;
        let wall_seconds = started.elapsed().as_secs_f64();
        let norms = match run.summary.outcome {
            Outcome::Converged => Some(ErrorNorms {
                l1: run.summary.l1_error.expect("exact checked"),
                linf: run.summary.linf_error.expect("exact checked"),
            }),
            _ => None,
        };
        let (l1_order, linf_order) = match (entries.last(), &norms) {
            (Some(prev), Some(now)) => match &prev.norms {
                Some(before) => (
                    Some(observed_order(before.l1, now.l1, prev.n, n)),
                    Some(observed_order(before.linf, now.linf, prev.n, n)),
                ),
                None => (None, None),
            },
            _ => (None, None),
        };
        entries.push(AccuracyEntry {
            n,
            outcome: run.summary.outcome,
            iterations: run.summary.iterations,
            norms,
            l1_order,
            linf_order,
            wall_seconds,
        });
    }
    Ok(entries)
}

/// Look up a benchmark case by its id (1 through 13).
pub fn case_spec<T: Scalar>(id: u8) -> Result<CaseSpec<T>, SolverError> {
    let pi = std::f64::consts::PI;
    let attack = 10.0_f64.to_radians();
    match id {
        1 => Ok(CaseSpec {
            id,
            name: "burgers-1d-source",
            model_id: ModelId::Burgers1dSrc,
            x_bounds: (num(pi / 4.0), num(3.0 * pi / 4.0)),
            y_bounds: None,
            default_nx: 80,
            default_ny: None,
            tol: num(1e-13),
            initial: InitialGuess::ScaledExact(num(2.0)),
            boundary: BoundarySet::one_dimensional(
                SideCondition::DirichletExact,
                SideCondition::OutflowExtrapolate,
            ),
            error_component: 0,
            reference: reference::CASE1,
            desk: None,
        }),
        2 => Ok(CaseSpec {
            id,
            name: "shallow-water-bump",
            model_id: ModelId::ShallowWater1d,
            x_bounds: (T::zero(), num(10.0)),
            y_bounds: None,
            default_nx: 80,
            default_ny: None,
            tol: num(1e-12),
            initial: InitialGuess::ScaledExact(T::one()),
            boundary: BoundarySet::one_dimensional(
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
            ),
            error_component: 0,
            reference: reference::CASE2,
            desk: None,
        }),
        3 => Ok(CaseSpec {
            id,
            name: "burgers-2d-source",
            model_id: ModelId::Burgers2dSrc,
            x_bounds: (num(pi / (4.0 * 2f64.sqrt())), num(3.0 * pi / (4.0 * 2f64.sqrt()))),
            y_bounds: Some((
                num(pi / (4.0 * 2f64.sqrt())),
                num(3.0 * pi / (4.0 * 2f64.sqrt())),
            )),
            default_nx: 40,
            default_ny: Some(40),
            tol: num(1e-13),
            initial: InitialGuess::ScaledExact(num(1.5)),
            boundary: BoundarySet::two_dimensional(
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
            ),
            error_component: 0,
            reference: reference::CASE3,
            desk: None,
        }),
        4 => Ok(CaseSpec {
            id,
            name: "euler-2d-source",
            model_id: ModelId::Euler2dSrc,
            x_bounds: (T::zero(), num(2.0 * pi)),
            y_bounds: Some((T::zero(), num(2.0 * pi))),
            default_nx: 40,
            default_ny: Some(40),
            tol: num(1e-12),
            initial: InitialGuess::ScaledExact(T::one()),
            boundary: BoundarySet::two_dimensional(
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
            ),
            error_component: 0,
            reference: reference::CASE4,
            desk: None,
        }),
        5 => Ok(CaseSpec {
            id,
            name: "euler-2d-smooth",
            model_id: ModelId::Euler2dNoSrc,
            x_bounds: (T::zero(), num(2.0 * pi)),
            y_bounds: Some((T::zero(), num(2.0 * pi))),
            default_nx: 40,
            default_ny: Some(40),
            tol: num(1e-12),
            initial: InitialGuess::ScaledExact(T::one()),
            boundary: BoundarySet::two_dimensional(
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
                SideCondition::DirichletExact,
            ),
            error_component: 0,
            reference: reference::CASE5,
            desk: None,
        }),
        6 => {
            let shock = rankine_hugoniot_states::<T>(num(2.0), num(1.4))?;
            Ok(CaseSpec {
                id,
                name: "steady-shock-1d",
                model_id: ModelId::Euler1d,
                x_bounds: (num(-1.0), T::one()),
                y_bounds: None,
                default_nx: 400,
                default_ny: None,
                tol: num(1e-12),
                initial: InitialGuess::ShockX {
                    left: shock.left,
                    right: shock.right,
                    split: T::zero(),
                },
                boundary: BoundarySet::one_dimensional(
                    SideCondition::Periodic,
                    SideCondition::Periodic,
                ),
                error_component: 0,
                reference: reference::CASE6,
                desk: None,
            })
        }
        7 => {
            let model = Model::<T>::new(ModelId::Euler2d);
            let (up, down) = oblique_shock_primitives::<T>(num(2.0), num(1.4))?;
            Ok(CaseSpec {
                id,
                name: "oblique-shock-2d",
                model_id: ModelId::Euler2d,
                x_bounds: (T::zero(), num(4.0)),
                y_bounds: Some((T::zero(), num(2.0))),
                default_nx: 200,
                default_ny: Some(100),
                tol: num(1e-12),
                initial: InitialGuess::ShockDiagonal {
                    upstream: model.primitive_to_conserved(&up),
                    downstream: model.primitive_to_conserved(&down),
                    offset: num(3.0),
                },
                boundary: BoundarySet::two_dimensional(
                    SideCondition::Periodic,
                    SideCondition::Periodic,
                    SideCondition::Periodic,
                    SideCondition::Periodic,
                ),
                error_component: 0,
                reference: reference::CASE7,
                desk: None,
            })
        }
        8 => {
            let model = Model::<T>::new(ModelId::Euler2d);
            let inflow = model.primitive_to_conserved(&[
                T::one(),
                num(2.9),
                T::zero(),
                num(5.0 / 7.0),
            ]);
            let top = model.primitive_to_conserved(&[
                num(1.69997),
                num(2.61934),
                num(-0.50632),
                num(1.52819),
            ]);
            Ok(CaseSpec {
                id,
                name: "shock-reflection",
                model_id: ModelId::Euler2d,
                x_bounds: (T::zero(), num(4.0)),
                y_bounds: Some((T::zero(), T::one())),
                default_nx: 120,
                default_ny: Some(30),
                tol: num(1e-12),
                initial: InitialGuess::Uniform(inflow),
                boundary: BoundarySet::two_dimensional(
                    SideCondition::Inflow(inflow),
                    SideCondition::OutflowExtrapolate,
                    SideCondition::SlipWall,
                    SideCondition::Inflow(top),
                ),
                error_component: 0,
                reference: reference::CASE8,
                desk: None,
            })
        }
        9..=13 => {
            let model = Model::<T>::new(ModelId::Euler2d);
            let mach: T = num(3.0);
            let p = T::one() / (num::<T>(1.4) * mach * mach);
            let freestream = model.primitive_to_conserved(&[
                T::one(),
                num(attack.cos()),
                num(attack.sin()),
                p,
            ]);
            let plate = |x0: f64, x1: f64, y: f64| Plate {
                normal: Axis::Y,
                position: num(y),
                span: (num(x0), num(x1)),
            };
            let (name, x_hi, nx, plates, tol, desk): (
                &'static str,
                f64,
                usize,
                Vec<Plate<T>>,
                f64,
                DeskScale,
            ) = match id {
                9 => (
                    "plate-attack",
                    10.0,
                    200,
                    vec![plate(1.0, 2.0, 0.0)],
                    1e-12,
                    DeskScale {
                        nx: 100,
                        ny: 100,
                        tol: 1e-10,
                    },
                ),
                10 => (
                    "plates-two",
                    10.0,
                    200,
                    vec![plate(2.0, 3.0, -2.0), plate(2.0, 3.0, 2.0)],
                    1e-12,
                    DeskScale {
                        nx: 100,
                        ny: 100,
                        tol: 1e-10,
                    },
                ),
                11 => (
                    "plates-three",
                    10.0,
                    200,
                    vec![
                        plate(2.0, 3.0, -2.0),
                        plate(1.0, 2.0, 0.0),
                        plate(2.0, 3.0, 2.0),
                    ],
                    1e-12,
                    DeskScale {
                        nx: 100,
                        ny: 100,
                        tol: 1e-10,
                    },
                ),
                12 => (
                    "plate-long",
                    7.0,
                    140,
                    vec![plate(2.0, 7.0, 0.0)],
                    1e-13,
                    DeskScale {
                        nx: 70,
                        ny: 100,
                        tol: 1e-10,
                    },
                ),
                _ => (
                    "plates-three-long",
                    5.0,
                    100,
                    vec![
                        plate(2.0, 5.0, -2.0),
                        plate(2.0, 5.0, 0.0),
                        plate(2.0, 5.0, 2.0),
                    ],
                    1e-13,
                    DeskScale {
                        nx: 50,
                        ny: 100,
                        tol: 1e-10,
                    },
                ),
            };
            Ok(CaseSpec {
                id,
                name,
                model_id: ModelId::Euler2d,
                x_bounds: (T::zero(), num(x_hi)),
                y_bounds: Some((num(-5.0), num(5.0))),
                default_nx: nx,
                default_ny: Some(200),
                tol: num(tol),
                initial: InitialGuess::Uniform(freestream),
                boundary: BoundarySet::two_dimensional(
                    SideCondition::Inflow(freestream),
                    SideCondition::OutflowExtrapolate,
                    SideCondition::Inflow(freestream),
                    SideCondition::OutflowExtrapolate,
                )
                .with_plates(plates),
                error_component: 0,
                reference: match id {
                    9 => reference::CASE9,
                    10 => reference::CASE10,
                    11 => reference::CASE11,
                    12 => reference::CASE12,
                    _ => reference::CASE13,
                },
                desk: Some(desk),
            })
        }
        _ => Err(SolverError::UnknownCase(id)),
    }
}

/// Published accuracy and iteration-count tables of the benchmark runs.
pub mod reference {
    use super::{AccuracyRow, CflRow, SchemeReference};
    use crate::solver::SchemeKind;

    macro_rules! acc {
        ($(($n:expr, $l1:expr, $linf:expr, $it:expr)),* $(,)?) => {
            &[$(AccuracyRow { n: $n, l1: $l1, linf: $linf, iterations: $it }),*]
        };
    }
    macro_rules! scan {
        ($(($cfl:expr, $it:expr, $t:expr)),* $(,)?) => {
            &[$(CflRow { cfl: $cfl, iterations: $it, final_time: $t }),*]
        };
    }

    pub const CASE1: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: acc![
                (10, 6.27e-7, 1.54e-6, 1153),
                (20, 1.93e-8, 8.07e-8, 1458),
                (40, 8.91e-10, 3.21e-9, 1749),
                (80, 3.32e-11, 1.11e-10, 2310),
                (160, 1.13e-12, 3.66e-12, 3875),
                (320, 4.98e-14, 1.70e-13, 7196),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 8.11e-7, 3.15e-6, 285),
                (20, 2.29e-8, 1.19e-7, 330),
                (40, 9.49e-10, 4.00e-9, 429),
                (80, 3.41e-11, 1.29e-10, 630),
                (160, 1.15e-12, 4.35e-12, 1137),
                (320, 4.10e-14, 1.55e-13, 1953),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 6.27e-7, 1.54e-6, 130),
                (20, 1.93e-8, 8.07e-8, 142),
                (40, 8.91e-10, 3.21e-9, 155),
                (80, 3.32e-11, 1.11e-10, 210),
                (160, 1.12e-12, 3.64e-12, 328),
                (320, 3.64e-14, 1.22e-13, 550),
            ],
            cfl_scan: &[],
        },
    ];

    pub const CASE2: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: acc![
                (20, 3.53e-3, 2.12e-2, 5676),
                (40, 9.31e-5, 1.37e-3, 4512),
                (80, 1.58e-6, 3.45e-5, 7314),
                (160, 1.59e-8, 4.54e-7, 13023),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (20, 3.53e-3, 2.12e-2, 321),
                (40, 9.31e-5, 1.37e-3, 459),
                (80, 1.58e-6, 3.45e-5, 741),
                (160, 1.59e-8, 4.54e-7, 1161),
                (320, 2.02e-10, 6.83e-9, 1734),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (20, 3.53e-3, 2.12e-2, 221),
                (40, 9.31e-5, 1.37e-3, 121),
                (80, 1.58e-6, 3.45e-5, 144),
                (160, 1.59e-8, 4.54e-7, 228),
                (320, 2.03e-10, 6.83e-9, 379),
            ],
            cfl_scan: &[],
        },
    ];

    pub const CASE3: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: acc![
                (10, 1.47e-8, 8.60e-8, 1054),
                (20, 6.14e-10, 3.28e-9, 1317),
                (40, 2.22e-11, 1.24e-10, 1850),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 1.81e-8, 1.43e-7, 279),
                (20, 6.87e-10, 5.12e-9, 348),
                (40, 2.35e-11, 1.64e-10, 519),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 1.81e-8, 1.43e-7, 120),
                (20, 6.87e-10, 5.12e-9, 137),
                (40, 2.35e-11, 1.71e-10, 182),
            ],
            cfl_scan: &[],
        },
    ];

    pub const CASE4: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: acc![
                (10, 6.74e-4, 2.68e-3, 5817),
                (20, 1.30e-5, 3.58e-5, 6804),
                (30, 1.84e-6, 4.76e-6, 8583),
                (40, 4.49e-7, 1.13e-6, 10613),
                (50, 1.50e-7, 3.74e-7, 12725),
                (60, 6.08e-8, 1.51e-7, 14931),
                (70, 2.83e-8, 7.04e-8, 17068),
                (80, 1.46e-8, 3.62e-8, 19093),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 7.41e-4, 2.68e-3, 1746),
                (20, 1.31e-5, 3.58e-5, 2037),
                (30, 1.85e-6, 4.76e-6, 2568),
                (40, 4.51e-7, 1.13e-6, 3174),
                (50, 1.50e-7, 3.74e-7, 3825),
                (60, 6.10e-8, 1.51e-7, 4488),
                (70, 2.84e-8, 7.04e-8, 5130),
                (80, 1.46e-8, 3.62e-8, 5739),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 6.62e-4, 2.68e-3, 560),
                (20, 1.30e-5, 3.58e-5, 653),
                (30, 1.84e-6, 4.76e-6, 821),
                (40, 4.49e-7, 1.13e-6, 1010),
                (50, 1.50e-7, 3.74e-7, 1213),
                (60, 6.08e-7, 1.51e-7, 1421),
                (70, 2.83e-8, 7.04e-8, 1622),
                (80, 1.46e-8, 3.62e-8, 1814),
            ],
            cfl_scan: &[],
        },
    ];

    pub const CASE5: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: acc![
                (10, 1.68e-3, 8.01e-3, 1233),
                (20, 2.38e-5, 1.39e-4, 1393),
                (30, 3.38e-6, 1.93e-5, 1684),
                (40, 8.29e-7, 4.58e-6, 2033),
                (50, 2.77e-7, 1.52e-6, 2410),
                (60, 1.13e-7, 6.14e-7, 2803),
                (70, 5.27e-8, 2.85e-7, 3219),
                (80, 2.72e-8, 1.46e-7, 3628),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 1.85e-3, 8.01e-3, 378),
                (20, 2.45e-5, 1.39e-4, 426),
                (30, 3.44e-6, 1.93e-5, 504),
                (40, 8.40e-7, 4.58e-6, 618),
                (50, 2.80e-7, 1.52e-6, 729),
                (60, 1.14e-7, 6.14e-7, 852),
                (70, 5.30e-8, 2.85e-7, 972),
                (80, 2.74e-8, 1.46e-7, 1095),
            ],
            cfl_scan: &[],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: acc![
                (10, 1.65e-3, 8.01e-3, 112),
                (20, 2.37e-5, 1.39e-4, 130),
                (30, 3.37e-6, 1.93e-5, 155),
                (40, 8.28e-7, 4.58e-6, 186),
                (50, 2.77e-7, 1.52e-6, 220),
                (60, 1.13e-7, 6.14e-7, 254),
                (70, 5.26e-8, 2.85e-7, 290),
                (80, 2.72e-8, 1.46e-7, 327),
            ],
            cfl_scan: &[],
        },
    ];

    pub const CASE6: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.0,
            accuracy: &[],
            cfl_scan: scan![
                (0.1, Some(80355), Some(8.93)),
                (0.2, Some(40515), Some(9.00)),
                (0.4, Some(20262), Some(9.00)),
                (1.0, Some(8118), Some(9.02)),
                (1.1, Some(7380), Some(9.02)),
                (1.2, Some(6765), Some(9.02)),
                (1.3, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.0,
            accuracy: &[],
            cfl_scan: scan![
                (0.1, Some(26904), Some(8.97)),
                (0.2, Some(13164), Some(8.77)),
                (0.4, Some(5894), Some(7.86)),
                (0.6, Some(3776), Some(7.55)),
                (1.0, Some(2088), Some(6.96)),
                (1.1, Some(2426), Some(8.89)),
                (1.2, None, None),
            ],
        },
    ];

    pub const CASE7: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(18391), Some(17.25)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 0.5,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(19158), Some(17.99)),
                (0.4, Some(14244), Some(17.83)),
                (0.5, Some(11370), Some(17.79)),
                (0.6, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 0.5,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(6105), Some(17.20)),
                (0.4, Some(4541), Some(17.06)),
                (0.5, Some(3601), Some(16.90)),
                (0.6, None, None),
            ],
        },
    ];

    pub const CASE8: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(12046), Some(5.09)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 0.6,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(11268), Some(4.76)),
                (0.4, Some(8454), Some(4.76)),
                (0.5, Some(6762), Some(4.76)),
                (0.6, Some(5634), Some(4.76)),
                (0.7, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 0.6,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(3651), Some(4.62)),
                (0.4, Some(2722), Some(4.59)),
                (0.5, Some(2170), Some(4.57)),
                (0.6, Some(1934), Some(4.89)),
                (0.7, None, None),
            ],
        },
    ];

    pub const CASE9: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(17337), Some(30.53)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.2,
            accuracy: &[],
            cfl_scan: scan![
                (0.4, Some(13179), Some(30.94)),
                (0.5, Some(10488), Some(30.78)),
                (0.7, Some(7470), Some(30.69)),
                (1.0, Some(5220), Some(30.64)),
                (1.2, Some(4347), Some(30.62)),
                (1.3, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.4,
            accuracy: &[],
            cfl_scan: scan![
                (0.4, Some(3748), Some(27.79)),
                (0.5, Some(2976), Some(27.58)),
                (0.7, Some(2384), Some(30.93)),
                (0.9, Some(1588), Some(26.48)),
                (1.4, Some(1164), Some(29.87)),
                (1.5, None, None),
            ],
        },
    ];

    pub const CASE10: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(21316), Some(37.53)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.2,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(21072), Some(37.10)),
                (0.6, Some(10524), Some(37.06)),
                (1.0, Some(6315), Some(37.06)),
                (1.2, Some(5262), Some(37.06)),
                (1.3, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.3,
            accuracy: &[],
            cfl_scan: scan![
                (0.6, Some(2836), Some(31.43)),
                (0.7, Some(2388), Some(30.88)),
                (0.8, Some(2056), Some(30.38)),
                (0.9, Some(1820), Some(30.25)),
                (1.3, Some(1476), Some(35.23)),
                (1.4, None, None),
            ],
        },
    ];

    pub const CASE11: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(19235), Some(33.88)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.2,
            accuracy: &[],
            cfl_scan: scan![
                (0.3, Some(18636), Some(32.83)),
                (0.6, Some(9315), Some(32.82)),
                (1.0, Some(5589), Some(32.82)),
                (1.2, Some(4656), Some(32.81)),
                (1.3, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.1,
            accuracy: &[],
            cfl_scan: scan![
                (0.5, Some(3292), Some(30.42)),
                (0.6, Some(2652), Some(29.41)),
                (0.8, Some(1980), Some(29.27)),
                (0.9, Some(1916), Some(31.87)),
                (1.1, Some(1432), Some(28.90)),
                (1.2, None, None),
            ],
        },
    ];

    pub const CASE12: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(36330), Some(21.09)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 1.4,
            accuracy: &[],
            cfl_scan: scan![
                (1.0, Some(3702), Some(22.76)),
                (1.2, Some(3078), Some(22.70)),
                (1.3, Some(2838), Some(22.67)),
                (1.4, Some(2637), Some(22.68)),
                (1.5, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 1.3,
            accuracy: &[],
            cfl_scan: scan![
                (1.0, Some(1048), Some(19.27)),
                (1.2, Some(846), Some(19.04)),
                (1.3, Some(788), Some(18.78)),
                (1.4, None, None),
            ],
        },
    ];

    pub const CASE13: &[SchemeReference] = &[
        SchemeReference {
            scheme: SchemeKind::FeJacobi,
            accuracy_cfl: 0.1,
            accuracy: &[],
            cfl_scan: scan![(0.1, Some(10497), Some(14.26)), (0.2, None, None)],
        },
        SchemeReference {
            scheme: SchemeKind::Rk3Jacobi,
            accuracy_cfl: 0.9,
            accuracy: &[],
            cfl_scan: scan![
                (0.5, Some(6003), Some(13.59)),
                (0.7, Some(4257), Some(13.50)),
                (0.9, Some(3303), Some(13.46)),
                (1.0, None, None),
            ],
        },
        SchemeReference {
            scheme: SchemeKind::FeSweep,
            accuracy_cfl: 0.9,
            accuracy: &[],
            cfl_scan: scan![
                (0.5, Some(1340), Some(12.33)),
                (0.8, Some(824), Some(12.12)),
                (0.9, Some(720), Some(11.91)),
                (1.0, None, None),
            ],
        },
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_matches_manifest() {
        // id, dim, nx, ny, tolerance
        let manifest: [(u8, usize, usize, usize, f64); 13] = [
            (1, 1, 80, 0, 1e-13),
            (2, 1, 80, 0, 1e-12),
            (3, 2, 40, 40, 1e-13),
            (4, 2, 40, 40, 1e-12),
            (5, 2, 40, 40, 1e-12),
            (6, 1, 400, 0, 1e-12),
            (7, 2, 200, 100, 1e-12),
            (8, 2, 120, 30, 1e-12),
            (9, 2, 200, 200, 1e-12),
            (10, 2, 200, 200, 1e-12),
            (11, 2, 200, 200, 1e-12),
            (12, 2, 140, 200, 1e-13),
            (13, 2, 100, 200, 1e-13),
        ];
        assert_eq!(all_case_ids().count(), 13);
        for (id, dim, nx, ny, tol) in manifest {
            let case = case_spec::<f64>(id).unwrap();
            assert_eq!(case.id, id);
            assert_eq!(case.dim() == Dim::Two, dim == 2, "case {id}");
            assert_eq!(case.default_nx, nx, "case {id}");
            if dim == 2 {
                assert_eq!(case.default_ny, Some(ny), "case {id}");
            }
            assert_eq!(case.tol, tol, "case {id}");
            assert!(!case.reference.is_empty(), "case {id}");
        }
        assert!(case_spec::<f64>(0).is_err());
        assert!(case_spec::<f64>(14).is_err());
    }

    #[test]
    fn plate_coordinates_match_geometry() {
        let case = case_spec::<f64>(10).unwrap();
        assert_eq!(case.boundary.plates.len(), 2);
        assert_eq!(case.boundary.plates[0].span, (2.0, 3.0));
        assert_eq!(case.boundary.plates[0].position, -2.0);
        assert_eq!(case.boundary.plates[1].position, 2.0);

        let case12 = case_spec::<f64>(12).unwrap();
        assert_eq!(case12.x_bounds, (0.0, 7.0));
        assert_eq!(case12.boundary.plates[0].span, (2.0, 7.0));
    }

    #[test]
    fn case1_boundary_value_matches_inflow() {
        // The left-ghost Dirichlet data evaluates the steady inflow
        // profile; at the boundary point it equals sqrt(2)/2.
        let case = case_spec::<f64>(1).unwrap();
        let model = case.model();
        let u = model.exact(std::f64::consts::PI / 4.0, 0.0).unwrap();
        assert!((u[0] - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn error_norm_examples() {
        let grid = Grid::<f64>::new_1d(0.0, 1.0, 10).unwrap();
        let mut state = State::zeros(1, grid.n_slots());
        // state equals exact -> zero norms
        for i in 0..10isize {
            state.set(0, grid.slot(i, 0), grid.x(i).sin());
        }
        let norms = error_norms(&state, &grid, |x, _| CompVec::scalar(x.sin()), 0);
        assert_eq!(norms.l1, 0.0);
        assert_eq!(norms.linf, 0.0);

        // Two-point field with errors 0.1 and 0.3 -> L1 = 0.2, Linf = 0.3.
        let grid2 = Grid::<f64>::new_1d(0.0, 1.0, 10).unwrap();
        let mut s2 = State::zeros(1, grid2.n_slots());
        let errs = [0.1, -0.3, 0.1, -0.3, 0.1, -0.3, 0.1, -0.3, 0.1, -0.3];
        for i in 0..10isize {
            s2.set(0, grid2.slot(i, 0), errs[i as usize]);
        }
        let n2 = error_norms(&s2, &grid2, |_, _| CompVec::scalar(0.0), 0);
        assert!((n2.l1 - 0.2).abs() < 1e-15);
        assert!((n2.linf - 0.3).abs() < 1e-15);
    }

    #[test]
    fn order_computation_on_synthetic_sequence() {
        // e = C N^-5 produces order exactly 5.
        let e = |n: f64| 3.7 * n.powi(-5);
        let order = observed_order(e(10.0), e(20.0), 10, 20);
        assert!((order - 5.0).abs() < 1e-12);
        let order_nonratio = observed_order(e(30.0), e(40.0), 30, 40);
        assert!((order_nonratio - 5.0).abs() < 1e-12);
    }

    #[test]
    fn linf_dominates_l1() {
        let grid = Grid::<f64>::new_1d(0.0, 1.0, 16).unwrap();
        let mut s = State::zeros(1, grid.n_slots());
        for i in 0..16isize {
            s.set(0, grid.slot(i, 0), (i as f64 * 1.37).sin());
        }
        let n = error_norms(&s, &grid, |_, _| CompVec::scalar(0.0), 0);
        assert!(n.linf >= n.l1);
    }

    #[test]
    fn table_requires_exact_solution() {
        let case = case_spec::<f64>(6).unwrap();
        assert!(matches!(
            accuracy_table(&case, SchemeKind::FeSweep, 1.0, &[50]),
            Err(SolverError::NoExactSolution(6))
        ));
    }
}
