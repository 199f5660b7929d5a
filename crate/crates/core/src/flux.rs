//! Lax-Friedrichs flux splitting, wave-speed estimation and assembly of
//! the interface numerical fluxes, with local characteristic
//! decomposition for systems.

use crate::grid::{Axis, CompVec, Dim, Grid, State};
use crate::models::Model;
use crate::weno::{reconstruct_face_value, Bias, ReconstructionConfig};
use crate::{num, Scalar, SolverError};

/// Lower clamp on the directional wave speeds, keeping the pseudo-time
/// step finite for degenerate states.
pub const ALPHA_FLOOR: f64 = 1e-8;

/// Maximum characteristic speeds per direction, recomputed from the
/// current state every iteration.
///
/// `field_x` / `field_y` hold the per-characteristic-field maxima used by
/// the field-wise flux splitting; the scalar `alpha_x` / `alpha_y` are
/// their overall maxima and set the pseudo-time step.
#[derive(Clone, Copy, Debug)]
pub struct WaveSpeeds<T> {
    pub alpha_x: T,
    pub alpha_y: T,
    pub field_x: [T; 4],
    pub field_y: [T; 4],
}

impl<T: Scalar> WaveSpeeds<T> {
    #[inline]
    pub fn along(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.alpha_x,
            Axis::Y => self.alpha_y,
        }
    }

    #[inline]
    pub fn field_along(&self, axis: Axis) -> &[T; 4] {
        match axis {
            Axis::X => &self.field_x,
            Axis::Y => &self.field_y,
        }
    }
}

/// State used to evaluate the eigenvectors at a cell interface.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InterfaceAverage {
    /// Arithmetic mean of the two adjacent states.
    #[default]
    Arithmetic,
    /// Roe (square-root-density weighted) average; Euler systems only.
    Roe,
}

/// Splitting speed used inside the characteristic-space Lax-Friedrichs
/// split.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitAlpha {
    /// Each characteristic field splits with the maximum of its own
    /// eigenvalue magnitude (classical characteristic-wise practice;
    /// least dissipative).
    #[default]
    PerField,
    /// Every field splits with the directional spectral-radius maximum.
    Global,
}

/// Global and per-field wave speeds: maxima over interior points of the
/// flux Jacobian eigenvalue magnitudes, floored at [`ALPHA_FLOOR`].
pub fn wave_speeds<T: Scalar>(
    model: &Model<T>,
    state: &State<T>,
    grid: &Grid<T>,
) -> Result<WaveSpeeds<T>, SolverError> {
    let floor = num::<T>(ALPHA_FLOOR);
    let m = model.m();
    let mut fx = [T::zero(); 4];
    let mut fy = [T::zero(); 4];
    let two_d = grid.dim() == Dim::Two;
    for (i, j) in grid.interior() {
        let u = state.point(grid.slot(i, j));
        if !u.is_finite() {
            return Err(SolverError::NonPhysical(format!(
                "non-finite state at point ({i}, {j})"
            )));
        }
        let lx = model.eigenvalues(Axis::X, u)?;
        for l in 0..m {
            fx[l] = fx[l].max(lx[l].abs());
        }
        if two_d {
            let ly = model.eigenvalues(Axis::Y, u)?;
            for l in 0..m {
                fy[l] = fy[l].max(ly[l].abs());
            }
        }
    }
    let mut ax = T::zero();
    let mut ay = T::zero();
    for l in 0..m {
        fx[l] = fx[l].max(floor);
        ax = ax.max(fx[l]);
        if two_d {
            fy[l] = fy[l].max(floor);
            ay = ay.max(fy[l]);
        }
    }
    Ok(WaveSpeeds {
        alpha_x: ax,
        alpha_y: ay,
        field_x: fx,
        field_y: fy,
    })
}

/// Upwind/downwind split pair `f±(u) = (f(u) ± alpha u) / 2`.
#[derive(Clone, Copy, Debug)]
pub struct SplitFluxPair<T> {
    pub fplus: CompVec<T>,
    pub fminus: CompVec<T>,
}

/// Lax-Friedrichs splitting of a flux value.
#[inline]
pub fn lf_split<T: Scalar>(f: CompVec<T>, u: CompVec<T>, alpha: T) -> SplitFluxPair<T> {
    let half = num::<T>(0.5);
    let au = u.scale(alpha);
    SplitFluxPair {
        fplus: (f + au).scale(half),
        fminus: (f - au).scale(half),
    }
}

fn interface_state<T: Scalar>(
    model: &Model<T>,
    ul: CompVec<T>,
    ur: CompVec<T>,
    average: InterfaceAverage,
) -> Result<CompVec<T>, SolverError> {
    match average {
        InterfaceAverage::Arithmetic => Ok((ul + ur).scale(num(0.5))),
        InterfaceAverage::Roe => {
            let m = model.m();
            if m < 3 {
                return Ok((ul + ur).scale(num(0.5)));
            }
            let pl = model.conserved_to_primitive(ul)?;
            let pr = model.conserved_to_primitive(ur)?;
            let sl = pl[0].sqrt();
            let sr = pr[0].sqrt();
            let w = T::one() / (sl + sr);
            let rho = sl * sr;
            let gamma = model.gamma();
            let one = T::one();
            let half = num::<T>(0.5);
            if m == 3 {
                let hl = (ul[2] + pl[2]) / pl[0];
                let hr = (ur[2] + pr[2]) / pr[0];
                let vel = (sl * pl[1] + sr * pr[1]) * w;
                let enthalpy = (sl * hl + sr * hr) * w;
                let c2 = (gamma - one) * (enthalpy - half * vel * vel);
                let p = rho * c2 / gamma;
                Ok(model.primitive_to_conserved(&[rho, vel, p]))
            } else {
                let hl = (ul[3] + pl[3]) / pl[0];
                let hr = (ur[3] + pr[3]) / pr[0];
                let vx = (sl * pl[1] + sr * pr[1]) * w;
                let vy = (sl * pl[2] + sr * pr[2]) * w;
                let enthalpy = (sl * hl + sr * hr) * w;
                let c2 = (gamma - one) * (enthalpy - half * (vx * vx + vy * vy));
                let p = rho * c2 / gamma;
                Ok(model.primitive_to_conserved(&[rho, vx, vy, p]))
            }
        }
    }
}

/// Interface numerical flux from the six consecutive states
/// `u_{i-2}..u_{i+3}` along a grid line (the union of the left- and
/// right-biased five-point windows around `x_{i+1/2}`).
///
/// Scalars reconstruct the split fluxes directly; systems project states
/// and fluxes onto characteristic fields at the interface-average state,
/// split and reconstruct each field, and recombine.
pub fn numerical_flux_line<T: Scalar>(
    model: &Model<T>,
    window: &[CompVec<T>; 6],
    axis: Axis,
    alpha: &WaveSpeeds<T>,
    recon: &ReconstructionConfig<T>,
    average: InterfaceAverage,
    split: SplitAlpha,
) -> Result<CompVec<T>, SolverError> {
    let half = num::<T>(0.5);
    let m = model.m();

    if m == 1 {
        let a = alpha.along(axis);
        let mut plus = [T::zero(); 5];
        let mut minus = [T::zero(); 5];
        for k in 0..5 {
            let f = model.flux(axis, window[k])[0];
            plus[k] = half * (f + a * window[k][0]);
            let f = model.flux(axis, window[k + 1])[0];
            minus[k] = half * (f - a * window[k + 1][0]);
        }
        let fp = reconstruct_face_value(&plus, Bias::Left, recon);
        let fm = reconstruct_face_value(&minus, Bias::Right, recon);
        return Ok(CompVec::scalar(fp + fm));
    }

    let avg = interface_state(model, window[2], window[3], average)?;
    let eig = model.eigen(axis, avg)?;

    let mut char_f = [[T::zero(); 4]; 6];
    let mut char_u = [[T::zero(); 4]; 6];
    for k in 0..6 {
        let f = model.flux(axis, window[k]);
        let wf = eig.to_characteristic(f);
        let wu = eig.to_characteristic(window[k]);
        for l in 0..m {
            char_f[k][l] = wf[l];
            char_u[k][l] = wu[l];
        }
    }

    let fields = alpha.field_along(axis);
    let mut combined = CompVec::zeros(m);
    for l in 0..m {
        let a = match split {
            SplitAlpha::PerField => fields[l],
            SplitAlpha::Global => alpha.along(axis),
        };
        let mut plus = [T::zero(); 5];
        let mut minus = [T::zero(); 5];
        for k in 0..5 {
            plus[k] = half * (char_f[k][l] + a * char_u[k][l]);
            minus[k] = half * (char_f[k + 1][l] - a * char_u[k + 1][l]);
        }
        let fp = reconstruct_face_value(&plus, Bias::Left, recon);
        let fm = reconstruct_face_value(&minus, Bias::Right, recon);
        combined[l] = fp + fm;
    }
    Ok(eig.from_characteristic(combined))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelId;

    #[test]
    fn split_examples() {
        let pair = lf_split(CompVec::scalar(0.5), CompVec::scalar(1.0), 2.0);
        assert_eq!(pair.fplus[0], 1.25);
        assert_eq!(pair.fminus[0], -0.75);
        let zero = lf_split(CompVec::scalar(0.0), CompVec::scalar(0.0), 7.0);
        assert_eq!(zero.fplus[0], 0.0);
        assert_eq!(zero.fminus[0], 0.0);
    }

    #[test]
    fn split_sum_recovers_flux() {
        let m = Model::<f64>::new(ModelId::Euler2d);
        let u = m.primitive_to_conserved(&[1.2, 0.3, -0.8, 2.0]);
        let f = m.flux(Axis::X, u);
        let pair = lf_split(f, u, 3.0);
        let back = pair.fplus + pair.fminus;
        for c in 0..4 {
            assert!((back[c] - f[c]).abs() <= 8.0 * f64::EPSILON * (1.0 + f[c].abs()));
        }
    }

    #[test]
    fn split_plus_is_monotone_for_burgers() {
        // d/du of (u^2/2 + alpha u)/2 = (u + alpha)/2 >= 0 on [-2, 2] for
        // alpha = 2; scanned by finite differences.
        let m = Model::<f64>::new(ModelId::Burgers1dSrc);
        let alpha = 2.0;
        let fp = |u: f64| {
            let uu = CompVec::scalar(u);
            0.5 * (m.flux(Axis::X, uu)[0] + alpha * u)
        };
        let n = 400;
        for k in 0..n {
            let u = -2.0 + 4.0 * k as f64 / n as f64;
            let du = 1e-6;
            let slope = (fp(u + du) - fp(u)) / du;
            assert!(slope >= -1e-12, "slope {slope} at u = {u}");
        }
    }

    #[test]
    fn wave_speed_scan_over_grid() {
        let grid = Grid::<f64>::new_1d(0.0, 1.0, 8).unwrap();
        let model = Model::<f64>::new(ModelId::Burgers1dSrc);
        let mut state = State::zeros(1, grid.n_slots());
        let vals = [-2.0, 1.0, 1.5, 0.0, 0.3, -0.7, 1.1, 0.9];
        for i in 0..8isize {
            state.set(0, grid.slot(i, 0), vals[i as usize]);
        }
        let alpha = wave_speeds(&model, &state, &grid).unwrap();
        assert_eq!(alpha.alpha_x, 2.0);
        assert_eq!(alpha.alpha_y, 0.0);
        assert_eq!(alpha.field_x[0], 2.0);
    }

    #[test]
    fn per_field_speeds_bound_each_eigenvalue() {
        let grid = Grid::<f64>::new_2d((0.0, 1.0), (0.0, 1.0), 8, 8).unwrap();
        let model = Model::<f64>::new(ModelId::Euler2d);
        let mut state = State::zeros(4, grid.n_slots());
        for (idx, (i, j)) in grid.interior().enumerate() {
            let u = 0.3 + 0.01 * idx as f64;
            state.set_point(
                grid.slot(i, j),
                model.primitive_to_conserved(&[1.0, u, -0.5 * u, 1.0 + 0.002 * idx as f64]),
            );
        }
        let alpha = wave_speeds(&model, &state, &grid).unwrap();
        // field maxima are ordered consistently with u-c, u, u, u+c and
        // bounded by the directional maximum
        for l in 0..4 {
            assert!(alpha.field_x[l] <= alpha.alpha_x);
            assert!(alpha.field_y[l] <= alpha.alpha_y);
        }
        assert_eq!(alpha.field_x[1], alpha.field_x[2]);
        assert!(alpha.field_x[3] == alpha.alpha_x);
    }

    #[test]
    fn wave_speed_floor_applies() {
        let grid = Grid::<f64>::new_1d(0.0, 1.0, 8).unwrap();
        let model = Model::<f64>::new(ModelId::Burgers1dSrc);
        let state = State::zeros(1, grid.n_slots());
        let alpha = wave_speeds(&model, &state, &grid).unwrap();
        assert_eq!(alpha.alpha_x, ALPHA_FLOOR);
    }

    fn uniform_speeds(ax: f64, ay: f64) -> WaveSpeeds<f64> {
        WaveSpeeds {
            alpha_x: ax,
            alpha_y: ay,
            field_x: [ax; 4],
            field_y: [ay; 4],
        }
    }

    #[test]
    fn constant_window_is_consistent() {
        let recon = ReconstructionConfig::<f64>::default();
        let m = Model::<f64>::new(ModelId::Euler2d);
        let c = m.primitive_to_conserved(&[1.0, 1.0, 1.0, 1.0]);
        let window = [c; 6];
        let alpha = uniform_speeds(2.2, 2.2);
        for split in [SplitAlpha::PerField, SplitAlpha::Global] {
            for axis in [Axis::X, Axis::Y] {
                let fhat = numerical_flux_line(
                    &m,
                    &window,
                    axis,
                    &alpha,
                    &recon,
                    InterfaceAverage::Arithmetic,
                    split,
                )
                .unwrap();
                let f = m.flux(axis, c);
                for comp in 0..4 {
                    assert!(
                        (fhat[comp] - f[comp]).abs()
                            <= 8.0 * f64::EPSILON * (1.0 + f[comp].abs()),
                        "axis {axis:?} component {comp}"
                    );
                }
            }
        }
    }

    #[test]
    fn flux_difference_refines_at_fifth_order() {
        // The conservative flux difference (f_{i+1/2} - f_{i-1/2}) / dx
        // approximates d/dx f(u(x)) to fifth order on point-sampled data;
        // halving dx shrinks the error by about 2^5 = 32.
        let recon = ReconstructionConfig::<f64>::default();
        let m = Model::<f64>::new(ModelId::Burgers1dSrc);
        let err = |dx: f64| {
            let x0 = 0.9;
            let sample = |k: f64| CompVec::scalar((x0 + k * dx).sin());
            let window = |base: f64| -> [CompVec<f64>; 6] {
                core::array::from_fn(|idx| sample(base + idx as f64))
            };
            let alpha = uniform_speeds(1.0, 0.0);
            let flux_at = |base: f64| {
                numerical_flux_line(
                    &m,
                    &window(base),
                    Axis::X,
                    &alpha,
                    &recon,
                    InterfaceAverage::Arithmetic,
                    SplitAlpha::Global,
                )
                .unwrap()[0]
            };
            let upper = flux_at(-2.0); // interface at x0 + dx/2
            let lower = flux_at(-3.0); // interface at x0 - dx/2
            let divergence = (upper - lower) / dx;
            // d/dx (u^2/2) = u u' = sin cos at x0.
            (divergence - x0.sin() * x0.cos()).abs()
        };
        let e1 = err(0.08);
        let e2 = err(0.04);
        let ratio = e1 / e2;
        assert!(ratio > 20.0 && ratio < 45.0, "ratio {ratio}");
    }

    #[test]
    fn nonphysical_interface_average_errors() {
        let recon = ReconstructionConfig::<f64>::default();
        let m = Model::<f64>::new(ModelId::Euler2d);
        let good = m.primitive_to_conserved(&[1.0, 1.0, 0.0, 1.0]);
        let bad = CompVec::from_slice(&[-1.0, 1.0, 0.0, 1.0]);
        let window = [good, good, bad, bad, good, good];
        let out = numerical_flux_line(
            &m,
            &window,
            Axis::X,
            &uniform_speeds(2.0, 2.0),
            &recon,
            InterfaceAverage::Arithmetic,
            SplitAlpha::PerField,
        );
        assert!(out.is_err());
    }

    #[test]
    fn roe_average_matches_arithmetic_for_equal_states() {
        let m = Model::<f64>::new(ModelId::Euler2d);
        let u = m.primitive_to_conserved(&[1.3, 0.4, -0.2, 0.9]);
        let a = interface_state(&m, u, u, InterfaceAverage::Arithmetic).unwrap();
        let r = interface_state(&m, u, u, InterfaceAverage::Roe).unwrap();
        for c in 0..4 {
            assert!((a[c] - r[c]).abs() < 1e-13);
        }
    }
}
