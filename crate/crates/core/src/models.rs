//! Equation systems of the benchmark registry: fluxes, sources, Jacobian
//! spectra, eigen-decompositions, exact steady solutions where known, and
//! the normal/oblique steady-shock state constructors.

use crate::grid::{Axis, CompVec, Dim};
use crate::{num, Scalar, SolverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelId {
    /// 1D Burgers with source `sin(x)cos(x)`.
    Burgers1dSrc,
    /// 1D shallow water over a smooth bottom bump.
    ShallowWater1d,
    /// 2D Burgers with flux `(u^2/2)/sqrt(2)` in both directions.
    Burgers2dSrc,
    /// 2D Euler with manufactured trigonometric source.
    Euler2dSrc,
    /// 2D Euler, source-free, with a smooth exact steady state.
    Euler2dNoSrc,
    /// 1D Euler (steady shock problems).
    Euler1d,
    /// 2D Euler, source-free, no exact solution attached.
    Euler2d,
}

impl ModelId {
    pub fn name(self) -> &'static str {
        match self {
            ModelId::Burgers1dSrc => "burgers1d_src",
            ModelId::ShallowWater1d => "shallow_water1d",
            ModelId::Burgers2dSrc => "burgers2d_src",
            ModelId::Euler2dSrc => "euler2d_src",
            ModelId::Euler2dNoSrc => "euler2d_nosrc",
            ModelId::Euler1d => "euler1d",
            ModelId::Euler2d => "euler2d",
        }
    }
}

/// Pair of left/right eigenvector matrices of a flux Jacobian, evaluated
/// at one state. Rows of `left` and columns of `right` are ordered by
/// increasing characteristic speed.
#[derive(Clone, Copy, Debug)]
pub struct Eigen<T> {
    pub m: usize,
    pub left: [[T; 4]; 4],
    pub right: [[T; 4]; 4],
}

impl<T: Scalar> Eigen<T> {
    /// Project a component vector onto characteristic variables.
    #[inline]
    pub fn to_characteristic(&self, u: CompVec<T>) -> CompVec<T> {
        let mut w = CompVec::zeros(self.m);
        for l in 0..self.m {
            let mut acc = T::zero();
            for c in 0..self.m {
                acc += self.left[l][c] * u[c];
            }
            w[l] = acc;
        }
        w
    }

    /// Recombine characteristic variables into component space.
    #[inline]
    pub fn from_characteristic(&self, w: CompVec<T>) -> CompVec<T> {
        let mut u = CompVec::zeros(self.m);
        for c in 0..self.m {
            let mut acc = T::zero();
            for l in 0..self.m {
                acc += self.right[c][l] * w[l];
            }
            u[c] = acc;
        }
        u
    }
}

/// One of the registry's equation systems, with its physical constants.
#[derive(Clone, Copy, Debug)]
pub struct Model<T> {
    id: ModelId,
    /// Ratio of specific heats (Euler systems).
    gamma: T,
    /// Gravitational constant (shallow water).
    gravity: T,
}

impl<T: Scalar> Model<T> {
    pub fn new(id: ModelId) -> Self {
        Model {
            id,
            gamma: num(1.4),
            gravity: T::one(),
        }
    }

    pub fn with_gravity(mut self, g: T) -> Self {
        self.gravity = g;
        self
    }

    pub fn with_gamma(mut self, gamma: T) -> Self {
        self.gamma = gamma;
        self
    }

    #[inline]
    pub fn id(&self) -> ModelId {
        self.id
    }

    #[inline]
    pub fn gamma(&self) -> T {
        self.gamma
    }

    #[inline]
    pub fn gravity(&self) -> T {
        self.gravity
    }

    /// Number of conserved components.
    #[inline]
    pub fn m(&self) -> usize {
        match self.id {
            ModelId::Burgers1dSrc | ModelId::Burgers2dSrc => 1,
            ModelId::ShallowWater1d => 2,
            ModelId::Euler1d => 3,
            ModelId::Euler2dSrc | ModelId::Euler2dNoSrc | ModelId::Euler2d => 4,
        }
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        match self.id {
            ModelId::Burgers1dSrc | ModelId::ShallowWater1d | ModelId::Euler1d => Dim::One,
            _ => Dim::Two,
        }
    }

    pub fn component_names(&self) -> &'static [&'static str] {
        match self.id {
            ModelId::Burgers1dSrc | ModelId::Burgers2dSrc => &["u"],
            ModelId::ShallowWater1d => &["h", "hu"],
            ModelId::Euler1d => &["rho", "rhou", "E"],
            _ => &["rho", "rhou", "rhov", "E"],
        }
    }

    /// Pressure of an Euler conserved state; no positivity check.
    #[inline]
    fn pressure_raw(&self, u: CompVec<T>) -> T {
        let half = num::<T>(0.5);
        match self.m() {
            3 => (self.gamma - T::one()) * (u[2] - half * u[1] * u[1] / u[0]),
            4 => {
                (self.gamma - T::one())
                    * (u[3] - half * (u[1] * u[1] + u[2] * u[2]) / u[0])
            }
            _ => unreachable!("pressure is defined for Euler systems only"),
        }
    }

    /// Flux vector along the given axis.
    ///
    /// Pure arithmetic on the conserved state; non-finite inputs propagate
    /// so the driver can flag divergence.
    #[inline]
    pub fn flux(&self, axis: Axis, u: CompVec<T>) -> CompVec<T> {
        let half = num::<T>(0.5);
        match self.id {
            ModelId::Burgers1dSrc => CompVec::scalar(half * u[0] * u[0]),
            ModelId::Burgers2dSrc => {
                let inv_sqrt2 = T::one() / num::<T>(2.0).sqrt();
                CompVec::scalar(inv_sqrt2 * half * u[0] * u[0])
            }
            ModelId::ShallowWater1d => {
                let h = u[0];
                let hu = u[1];
                CompVec::from_slice(&[hu, hu * hu / h + half * self.gravity * h * h])
            }
            ModelId::Euler1d => {
                let p = self.pressure_raw(u);
                let vel = u[1] / u[0];
                CompVec::from_slice(&[u[1], u[1] * vel + p, vel * (u[2] + p)])
            }
            ModelId::Euler2dSrc | ModelId::Euler2dNoSrc | ModelId::Euler2d => {
                let p = self.pressure_raw(u);
                let vx = u[1] / u[0];
                let vy = u[2] / u[0];
                match axis {
                    Axis::X => CompVec::from_slice(&[
                        u[1],
                        u[1] * vx + p,
                        u[2] * vx,
                        vx * (u[3] + p),
                    ]),
                    Axis::Y => CompVec::from_slice(&[
                        u[2],
                        u[1] * vy,
                        u[2] * vy + p,
                        vy * (u[3] + p),
                    ]),
                }
            }
        }
    }

    /// Source term `R(u, x, y)`.
    pub fn source(&self, u: CompVec<T>, x: T, y: T) -> CompVec<T> {
        match self.id {
            ModelId::Burgers1dSrc => CompVec::scalar(x.sin() * x.cos()),
            ModelId::Burgers2dSrc => {
                let arg = (x + y) / num::<T>(2.0).sqrt();
                CompVec::scalar(arg.sin() * arg.cos())
            }
            ModelId::ShallowWater1d => {
                CompVec::from_slice(&[T::zero(), -self.gravity * u[0] * bottom_slope(x)])
            }
            ModelId::Euler2dSrc => {
                let c = (x + y).cos();
                CompVec::from_slice(&[
                    num::<T>(0.4) * c,
                    num::<T>(0.6) * c,
                    num::<T>(0.6) * c,
                    num::<T>(1.8) * c,
                ])
            }
            _ => CompVec::zeros(self.m()),
        }
    }

    pub fn has_source(&self) -> bool {
        matches!(
            self.id,
            ModelId::Burgers1dSrc
                | ModelId::Burgers2dSrc
                | ModelId::ShallowWater1d
                | ModelId::Euler2dSrc
        )
    }

    /// Largest absolute characteristic speed of the state along an axis.
    pub fn max_wave_speed(&self, axis: Axis, u: CompVec<T>) -> Result<T, SolverError> {
        match self.id {
            ModelId::Burgers1dSrc => Ok(u[0].abs()),
            ModelId::Burgers2dSrc => Ok(u[0].abs() / num::<T>(2.0).sqrt()),
            ModelId::ShallowWater1d => {
                let h = u[0];
                if !(h > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "water height {h} is not positive"
                    )));
                }
                Ok((u[1] / h).abs() + (self.gravity * h).sqrt())
            }
            _ => {
                let rho = u[0];
                let p = self.pressure_raw(u);
                if !(rho > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {rho}, p = {p} where the spectrum is requested"
                    )));
                }
                let c = (self.gamma * p / rho).sqrt();
                let vel = match (self.m(), axis) {
                    (3, _) => u[1] / rho,
                    (4, Axis::X) => u[1] / rho,
                    (4, Axis::Y) => u[2] / rho,
                    _ => unreachable!(),
                };
                Ok(vel.abs() + c)
            }
        }
    }

    /// Eigenvalues of the flux Jacobian along an axis, ordered by
    /// increasing characteristic speed (matching [`Model::eigen`]).
    pub fn eigenvalues(&self, axis: Axis, u: CompVec<T>) -> Result<CompVec<T>, SolverError> {
        match self.id {
            ModelId::Burgers1dSrc => Ok(CompVec::scalar(u[0])),
            ModelId::Burgers2dSrc => Ok(CompVec::scalar(u[0] / num::<T>(2.0).sqrt())),
            ModelId::ShallowWater1d => {
                let h = u[0];
                if !(h > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "water height {h} is not positive"
                    )));
                }
                let vel = u[1] / h;
                let c = (self.gravity * h).sqrt();
                Ok(CompVec::from_slice(&[vel - c, vel + c]))
            }
            _ => {
                let rho = u[0];
                let p = self.pressure_raw(u);
                if !(rho > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {rho}, p = {p} where the spectrum is requested"
                    )));
                }
                let c = (self.gamma * p / rho).sqrt();
                match self.m() {
                    3 => {
                        let vel = u[1] / rho;
                        Ok(CompVec::from_slice(&[vel - c, vel, vel + c]))
                    }
                    _ => {
                        let vn = match axis {
                            Axis::X => u[1] / rho,
                            Axis::Y => u[2] / rho,
                        };
                        Ok(CompVec::from_slice(&[vn - c, vn, vn, vn + c]))
                    }
                }
            }
        }
    }

    /// Left/right eigenvector pair of the flux Jacobian along an axis.
    ///
    /// Systems only; scalar models skip characteristic decomposition.
    pub fn eigen(&self, axis: Axis, u: CompVec<T>) -> Result<Eigen<T>, SolverError> {
        let half = num::<T>(0.5);
        let one = T::one();
        let mut left = [[T::zero(); 4]; 4];
        let mut right = [[T::zero(); 4]; 4];
        match self.id {
            ModelId::ShallowWater1d => {
                let h = u[0];
                if !(h > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "water height {h} is not positive"
                    )));
                }
                let vel = u[1] / h;
                let c = (self.gravity * h).sqrt();
                right[0][0] = one;
                right[1][0] = vel - c;
                right[0][1] = one;
                right[1][1] = vel + c;
                let inv2c = half / c;
                left[0][0] = (vel + c) * inv2c;
                left[0][1] = -inv2c;
                left[1][0] = -(vel - c) * inv2c;
                left[1][1] = inv2c;
                Ok(Eigen { m: 2, left, right })
            }
            ModelId::Euler1d => {
                let rho = u[0];
                let p = self.pressure_raw(u);
                if !(rho > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {rho}, p = {p} at an interface average"
                    )));
                }
                let vel = u[1] / rho;
                let c = (self.gamma * p / rho).sqrt();
                let enthalpy = (u[2] + p) / rho;
                let b1 = (self.gamma - one) / (c * c);
                let b2 = half * b1 * vel * vel;

                right[0][0] = one;
                right[1][0] = vel - c;
                right[2][0] = enthalpy - vel * c;
                right[0][1] = one;
                right[1][1] = vel;
                right[2][1] = half * vel * vel;
                right[0][2] = one;
                right[1][2] = vel + c;
                right[2][2] = enthalpy + vel * c;

                left[0][0] = half * (b2 + vel / c);
                left[0][1] = -half * (b1 * vel + one / c);
                left[0][2] = half * b1;
                left[1][0] = one - b2;
                left[1][1] = b1 * vel;
                left[1][2] = -b1;
                left[2][0] = half * (b2 - vel / c);
                left[2][1] = -half * (b1 * vel - one / c);
                left[2][2] = half * b1;
                Ok(Eigen { m: 3, left, right })
            }
            ModelId::Euler2dSrc | ModelId::Euler2dNoSrc | ModelId::Euler2d => {
                let rho = u[0];
                let p = self.pressure_raw(u);
                if !(rho > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {rho}, p = {p} at an interface average"
                    )));
                }
                let vx = u[1] / rho;
                let vy = u[2] / rho;
                let c = (self.gamma * p / rho).sqrt();
                let enthalpy = (u[3] + p) / rho;
                let q2 = vx * vx + vy * vy;
                let b1 = (self.gamma - one) / (c * c);
                let b2 = half * b1 * q2;
                // Normal and tangential velocity relative to the axis.
                let (vn, vt) = match axis {
                    Axis::X => (vx, vy),
                    Axis::Y => (vy, vx),
                };
                // Index of the normal and tangential momentum components.
                let (n_idx, t_idx) = match axis {
                    Axis::X => (1usize, 2usize),
                    Axis::Y => (2usize, 1usize),
                };

                // Right eigenvectors (columns), speeds vn-c, vn, vn, vn+c.
                right[0][0] = one;
                right[n_idx][0] = vn - c;
                right[t_idx][0] = vt;
                right[3][0] = enthalpy - vn * c;

                right[0][1] = one;
                right[n_idx][1] = vn;
                right[t_idx][1] = vt;
                right[3][1] = half * q2;

                right[t_idx][2] = one;
                right[3][2] = vt;

                right[0][3] = one;
                right[n_idx][3] = vn + c;
                right[t_idx][3] = vt;
                right[3][3] = enthalpy + vn * c;

                left[0][0] = half * (b2 + vn / c);
                left[0][n_idx] = -half * (b1 * vn + one / c);
                left[0][t_idx] = -half * b1 * vt;
                left[0][3] = half * b1;

                left[1][0] = one - b2;
                left[1][n_idx] = b1 * vn;
                left[1][t_idx] = b1 * vt;
                left[1][3] = -b1;

                left[2][0] = -vt;
                left[2][t_idx] = one;

                left[3][0] = half * (b2 - vn / c);
                left[3][n_idx] = -half * (b1 * vn - one / c);
                left[3][t_idx] = -half * b1 * vt;
                left[3][3] = half * b1;
                Ok(Eigen { m: 4, left, right })
            }
            _ => Err(SolverError::InvalidConfig(format!(
                "{} is scalar; characteristic decomposition does not apply",
                self.id.name()
            ))),
        }
    }

    /// Exact steady solution in conserved variables, when the model has
    /// one.
    pub fn exact(&self, x: T, y: T) -> Option<CompVec<T>> {
        let one = T::one();
        match self.id {
            ModelId::Burgers1dSrc => Some(CompVec::scalar(x.sin())),
            ModelId::Burgers2dSrc => {
                Some(CompVec::scalar(((x + y) / num::<T>(2.0).sqrt()).sin()))
            }
            ModelId::ShallowWater1d => {
                let h = num::<T>(10.0) - bottom_height(x);
                Some(CompVec::from_slice(&[h, T::zero()]))
            }
            ModelId::Euler2dSrc => {
                let rho = one + num::<T>(0.2) * (x + y).sin();
                Some(self.primitive_to_conserved(&[rho, one, one, rho]))
            }
            ModelId::Euler2dNoSrc => {
                let rho = one + num::<T>(0.2) * (x - y).sin();
                Some(self.primitive_to_conserved(&[rho, one, one, one]))
            }
            ModelId::Euler1d | ModelId::Euler2d => None,
        }
    }

    pub fn has_exact(&self) -> bool {
        !matches!(self.id, ModelId::Euler1d | ModelId::Euler2d)
    }

    /// Conserved state from primitives `(rho, u[, v], p)` for Euler, or
    /// `(h, u)` for shallow water; identity for scalars.
    pub fn primitive_to_conserved(&self, prim: &[T]) -> CompVec<T> {
        let half = num::<T>(0.5);
        match self.m() {
            1 => CompVec::scalar(prim[0]),
            2 => CompVec::from_slice(&[prim[0], prim[0] * prim[1]]),
            3 => {
                let (rho, vel, p) = (prim[0], prim[1], prim[2]);
                let e = p / (self.gamma - T::one()) + half * rho * vel * vel;
                CompVec::from_slice(&[rho, rho * vel, e])
            }
            _ => {
                let (rho, vx, vy, p) = (prim[0], prim[1], prim[2], prim[3]);
                let e = p / (self.gamma - T::one()) + half * rho * (vx * vx + vy * vy);
                CompVec::from_slice(&[rho, rho * vx, rho * vy, e])
            }
        }
    }

    /// Primitive variables of a conserved state; errors on non-physical
    /// density or pressure rather than clamping.
    pub fn conserved_to_primitive(&self, u: CompVec<T>) -> Result<CompVec<T>, SolverError> {
        match self.m() {
            1 => Ok(u),
            2 => {
                if !(u[0] > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "water height {} is not positive",
                        u[0]
                    )));
                }
                Ok(CompVec::from_slice(&[u[0], u[1] / u[0]]))
            }
            3 => {
                let p = self.pressure_raw(u);
                if !(u[0] > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {}, p = {p} in conversion",
                        u[0]
                    )));
                }
                Ok(CompVec::from_slice(&[u[0], u[1] / u[0], p]))
            }
            _ => {
                let p = self.pressure_raw(u);
                if !(u[0] > T::zero()) || !(p > T::zero()) {
                    return Err(SolverError::NonPhysical(format!(
                        "rho = {}, p = {p} in conversion",
                        u[0]
                    )));
                }
                Ok(CompVec::from_slice(&[u[0], u[1] / u[0], u[2] / u[0], p]))
            }
        }
    }
}

/// Bottom topography of the shallow-water benchmark.
pub fn bottom_height<T: Scalar>(x: T) -> T {
    let s = x - num::<T>(5.0);
    num::<T>(5.0) * (-num::<T>(0.4) * s * s).exp()
}

/// Analytic slope of the bottom topography.
pub fn bottom_slope<T: Scalar>(x: T) -> T {
    let s = x - num::<T>(5.0);
    -num::<T>(4.0) * s * (-num::<T>(0.4) * s * s).exp()
}

/// Upstream/downstream conserved states of a stationary normal shock with
/// upstream Mach number `mach`, in 1D Euler variables.
#[derive(Clone, Copy, Debug)]
pub struct ShockStates<T> {
    pub left: CompVec<T>,
    pub right: CompVec<T>,
}

/// Primitive upstream/downstream triplets `(p, rho, u)` of a stationary
/// normal shock with `u_l = 1`, `rho_l = 1`, `p_l = 1/(gamma M^2)`.
pub fn normal_shock_primitives<T: Scalar>(
    mach: T,
    gamma: T,
) -> Result<([T; 3], [T; 3]), SolverError> {
    let one = T::one();
    if !(mach > one) {
        return Err(SolverError::InvalidConfig(format!(
            "upstream Mach number {mach} must exceed 1"
        )));
    }
    let m2 = mach * mach;
    let p_l = one / (gamma * m2);
    let rho_l = one;
    let u_l = one;

    let two = num::<T>(2.0);
    let p_r = p_l * (two * gamma * m2 - (gamma - one)) / (gamma + one);
    let gp = (gamma + one) / (gamma - one);
    let ratio = p_r / p_l;
    let rho_r = rho_l * (gp * ratio + one) / (gp + ratio);
    let u_r = (gamma * (two + (gamma - one) * m2) * p_r
        / ((two * gamma * m2 + (one - gamma)) * rho_r))
        .sqrt();
    Ok(([p_l, rho_l, u_l], [p_r, rho_r, u_r]))
}

/// Conserved-form stationary normal shock states (1D Euler).
pub fn rankine_hugoniot_states<T: Scalar>(
    mach: T,
    gamma: T,
) -> Result<ShockStates<T>, SolverError> {
    let (l, r) = normal_shock_primitives(mach, gamma)?;
    let model = Model::new(ModelId::Euler1d).with_gamma(gamma);
    Ok(ShockStates {
        left: model.primitive_to_conserved(&[l[1], l[2], l[0]]),
        right: model.primitive_to_conserved(&[r[1], r[2], r[0]]),
    })
}

/// Upstream/downstream primitive states `(rho, u, v, p)` of the steady
/// oblique-shock benchmark: shock at 135 degrees to the positive x axis,
/// horizontal upstream flow of Mach `mach`.
///
/// Built by rotating the 1D normal-shock solution: the shock-normal Mach
/// number is `mach * sin(45 deg)`, the downstream normal velocity follows
/// from the normal-shock relations at that Mach number, and the
/// tangential velocity carries across unchanged.
pub fn oblique_shock_primitives<T: Scalar>(
    mach: T,
    gamma: T,
) -> Result<([T; 4], [T; 4]), SolverError> {
    let one = T::one();
    let inv_sqrt2 = one / num::<T>(2.0).sqrt();
    let mach_n = mach * inv_sqrt2;
    let (_, r) = normal_shock_primitives(mach_n, gamma)?;

    // Upstream: horizontal unit-speed flow at Mach `mach`.
    let p_up = one / (gamma * mach * mach);
    let up = [one, one, T::zero(), p_up];

    // The 1D solution has unit upstream normal speed; rescale velocities
    // by 1/sqrt(2) (pressures scale with the square).
    let lambda = inv_sqrt2;
    let un_down = lambda * r[2];
    let p_down = lambda * lambda * r[0];
    let rho_down = r[1];

    // Shock normal (1,1)/sqrt(2), tangent (-1,1)/sqrt(2); upstream
    // tangential component of (1,0) is -1/sqrt(2).
    let ut = -inv_sqrt2;
    let vx = un_down * inv_sqrt2 - ut * inv_sqrt2;
    let vy = un_down * inv_sqrt2 + ut * inv_sqrt2;
    Ok((up, [rho_down, vx, vy, p_down]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn burgers_flux_and_source() {
        let m = Model::<f64>::new(ModelId::Burgers1dSrc);
        let u = CompVec::scalar(1.0);
        assert_eq!(m.flux(Axis::X, u)[0], 0.5);
        let s = m.source(u, std::f64::consts::FRAC_PI_2, 0.0);
        assert!(s[0].abs() < 1e-15);
    }

    #[test]
    fn euler_source_balance_at_origin() {
        // Exact state of the manufactured Euler problem at (0,0):
        // rho = 1, u = v = 1, p = 1, E = 1/0.4 + 1 = 3.5.
        let m = Model::<f64>::new(ModelId::Euler2dSrc);
        let u = m.exact(0.0, 0.0).unwrap();
        assert!(close(u[0], 1.0, 1e-15));
        assert!(close(u[1], 1.0, 1e-15));
        assert!(close(u[2], 1.0, 1e-15));
        assert!(close(u[3], 3.5, 1e-15));
    }

    #[test]
    fn manufactured_source_matches_flux_divergence() {
        // d/dx f(exact) + d/dy g(exact) == R at sampled points, checked by
        // central differences.
        let m = Model::<f64>::new(ModelId::Euler2dSrc);
        let h = 1e-6;
        for (x, y) in [(0.3, 1.1), (2.0, 4.4), (5.5, 0.2)] {
            let fx = (m.flux(Axis::X, m.exact(x + h, y).unwrap())
                - m.flux(Axis::X, m.exact(x - h, y).unwrap()))
            .scale(0.5 / h);
            let gy = (m.flux(Axis::Y, m.exact(x, y + h).unwrap())
                - m.flux(Axis::Y, m.exact(x, y - h).unwrap()))
            .scale(0.5 / h);
            let r = m.source(m.exact(x, y).unwrap(), x, y);
            for c in 0..4 {
                assert!(
                    close(fx[c] + gy[c], r[c], 1e-7),
                    "component {c} at ({x},{y})"
                );
            }
        }
    }

    #[test]
    fn sourceless_exact_state_is_divergence_free() {
        let m = Model::<f64>::new(ModelId::Euler2dNoSrc);
        let h = 1e-6;
        for (x, y) in [(0.3, 1.1), (2.0, 4.4)] {
            let fx = (m.flux(Axis::X, m.exact(x + h, y).unwrap())
                - m.flux(Axis::X, m.exact(x - h, y).unwrap()))
            .scale(0.5 / h);
            let gy = (m.flux(Axis::Y, m.exact(x, y + h).unwrap())
                - m.flux(Axis::Y, m.exact(x, y - h).unwrap()))
            .scale(0.5 / h);
            for c in 0..4 {
                assert!(close(fx[c] + gy[c], 0.0, 1e-7), "component {c}");
            }
        }
    }

    #[test]
    fn shallow_water_steady_state() {
        let m = Model::<f64>::new(ModelId::ShallowWater1d);
        let u = m.exact(5.0, 0.0).unwrap();
        assert_eq!(u[0], 5.0); // h = 10 - b(5) = 10 - 5
        assert_eq!(u[1], 0.0);
        // Steady balance: d/dx (g h^2 / 2) = -g h b_x at rest.
        let h = 1e-6;
        for x in [3.0, 5.0, 6.7] {
            let f = |x: f64| {
                let s = m.exact(x, 0.0).unwrap();
                m.flux(Axis::X, s)[1]
            };
            let dflux = (f(x + h) - f(x - h)) / (2.0 * h);
            let src = m.source(m.exact(x, 0.0).unwrap(), x, 0.0)[1];
            assert!(close(dflux, src, 1e-6), "x = {x}");
        }
    }

    #[test]
    fn wave_speed_examples() {
        let b = Model::<f64>::new(ModelId::Burgers1dSrc);
        let speeds = [-2.0, 1.0, 1.5]
            .map(|u| b.max_wave_speed(Axis::X, CompVec::scalar(u)).unwrap());
        assert_eq!(speeds.iter().cloned().fold(0.0, f64::max), 2.0);

        let e = Model::<f64>::new(ModelId::Euler2d);
        let u = e.primitive_to_conserved(&[1.0, 1.0, 1.0, 1.0]);
        let ax = e.max_wave_speed(Axis::X, u).unwrap();
        assert!(close(ax, 1.0 + 1.4f64.sqrt(), 1e-15));
        let rest = e.primitive_to_conserved(&[1.0, 0.0, 0.0, 1.0]);
        assert!(close(e.max_wave_speed(Axis::X, rest).unwrap(), 1.4f64.sqrt(), 1e-15));
    }

    #[test]
    fn wave_speed_rejects_nonphysical() {
        let e = Model::<f64>::new(ModelId::Euler2d);
        let bad = CompVec::from_slice(&[1.0, 0.0, 0.0, -1.0]);
        assert!(e.max_wave_speed(Axis::X, bad).is_err());
        let sw = Model::<f64>::new(ModelId::ShallowWater1d);
        assert!(sw
            .max_wave_speed(Axis::X, CompVec::from_slice(&[-0.1, 0.0]))
            .is_err());
    }

    #[test]
    fn eigenvector_roundtrip_is_identity() {
        let cases: Vec<(Model<f64>, CompVec<f64>)> = vec![
            (
                Model::new(ModelId::Euler1d),
                Model::<f64>::new(ModelId::Euler1d).primitive_to_conserved(&[1.3, -0.4, 2.0]),
            ),
            (
                Model::new(ModelId::Euler2d),
                Model::<f64>::new(ModelId::Euler2d)
                    .primitive_to_conserved(&[0.8, 1.7, -0.6, 1.2]),
            ),
            (
                Model::new(ModelId::ShallowWater1d),
                CompVec::from_slice(&[2.0, 1.5]),
            ),
        ];
        for (model, state) in cases {
            for axis in [Axis::X, Axis::Y] {
                if model.dim() == Dim::One && axis == Axis::Y {
                    continue;
                }
                let eig = model.eigen(axis, state).unwrap();
                let probe = CompVec::from_slice(&vec![0.3, -1.0, 0.7, 2.2][..model.m()]);
                let back = eig.from_characteristic(eig.to_characteristic(probe));
                for c in 0..model.m() {
                    assert!(
                        close(back[c], probe[c], 32.0 * f64::EPSILON),
                        "{} axis {axis:?} component {c}: {} vs {}",
                        model.id().name(),
                        back[c],
                        probe[c]
                    );
                }
            }
        }
    }

    #[test]
    fn normal_shock_states_match_jump_relations() {
        let s = rankine_hugoniot_states(2.0f64, 1.4).unwrap();
        let (l, r) = normal_shock_primitives(2.0f64, 1.4).unwrap();
        assert!(close(l[0], 0.17857142857142858, 1e-15));
        assert!(close(r[0], 0.8035714285714286, 1e-15));
        assert!(close(r[1], 8.0 / 3.0, 1e-15));
        assert!(close(r[2], 0.375, 1e-15));
        // Mass flux continuity.
        assert!(close(s.left[1], 1.0, 1e-15));
        assert!(close(s.right[1], 1.0, 8.0 * f64::EPSILON));
        // Momentum and energy flux continuity across the shock.
        let m = Model::<f64>::new(ModelId::Euler1d);
        let fl = m.flux(Axis::X, s.left);
        let fr = m.flux(Axis::X, s.right);
        for c in 0..3 {
            assert!(close(fl[c], fr[c], 8.0 * f64::EPSILON), "component {c}");
        }
    }

    #[test]
    fn weak_shock_limit() {
        let (l, r) = normal_shock_primitives(1.0 + 1e-8, 1.4f64).unwrap();
        assert!(close(r[0] / l[0], 1.0, 1e-6));
        assert!(close(r[1], 1.0, 1e-6));
    }

    #[test]
    fn shock_rejects_subsonic_upstream() {
        assert!(normal_shock_primitives(0.9f64, 1.4).is_err());
        assert!(normal_shock_primitives(1.0f64, 1.4).is_err());
    }

    #[test]
    fn oblique_shock_satisfies_normal_jump_relations() {
        let (up, down) = oblique_shock_primitives(2.0f64, 1.4).unwrap();
        let n = (1.0 / 2.0f64.sqrt(), 1.0 / 2.0f64.sqrt());
        let t = (-n.1, n.0);
        let un_up = up[1] * n.0 + up[2] * n.1;
        let un_down = down[1] * n.0 + down[2] * n.1;
        let ut_up = up[1] * t.0 + up[2] * t.1;
        let ut_down = down[1] * t.0 + down[2] * t.1;
        // Tangential velocity is preserved.
        assert!(close(ut_up, ut_down, 1e-14));
        // Normal mass flux continuity.
        assert!(close(up[0] * un_up, down[0] * un_down, 1e-14));
        // Normal momentum flux continuity: rho un^2 + p.
        assert!(close(
            up[0] * un_up * un_up + up[3],
            down[0] * un_down * un_down + down[3],
            1e-13
        ));
        // Energy flux continuity: un (E + p) with E from primitives.
        let energy = |prim: &[f64; 4]| {
            prim[3] / 0.4 + 0.5 * prim[0] * (prim[1] * prim[1] + prim[2] * prim[2])
        };
        // Decompose energy flux in the normal direction: tangential
        // kinetic energy advects with the same mass flux on both sides.
        let e_up = un_up * (energy(&up) + up[3]);
        let e_down = un_down * (energy(&down) + down[3]);
        assert!(close(e_up, e_down, 1e-13));
        // Frozen downstream values for the benchmark initial condition.
        assert!(close(down[0], 12.0 / 7.0, 1e-14));
        assert!(close(down[1], 19.0 / 24.0, 1e-14));
        assert!(close(down[2], -5.0 / 24.0, 1e-14));
        assert!(close(down[3], 13.0 / 33.6, 1e-14));
    }
}
