//! Equation parameters, derived exponents, regime validation, geometries and
//! initial-data constructors.
//!
//! The model is the inhomogeneous NLS equation
//! `i u_t + Lap u + |x|^{-b} |u|^{2 sigma} u = 0` on `R^N`, `N >= 3`.
//! Meshes are half-cell shifted so the singular weight `|x|^{-b}` is only
//! ever evaluated at `|x| > 0`; no regularization parameter is introduced.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groundstate::GroundState;

/// Equation parameters plus the derived exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Spatial dimension N >= 3.
    pub dim: u32,
    /// Decay exponent of the singular weight |x|^{-b}.
    pub b: f64,
    /// Nonlinearity power sigma.
    pub sigma: f64,
    /// Scaling-invariant Sobolev index s_c = N/2 - (2-b)/(2 sigma).
    pub s_c: f64,
    /// Critical Lebesgue exponent sigma_c = 2 N sigma / (2-b).
    pub sigma_c: f64,
    /// Rate exponent beta = (2 - sigma N)/b.
    pub beta: f64,
    /// True iff 0 < b < min(N/2, 2) and (2-b)/N < sigma < min((2-b)/(N-2), 2/N).
    pub regime_valid: bool,
}

/// Computes the derived exponents and the regime-valid flag.
///
/// Out-of-regime parameters are returned with `regime_valid = false`, not an
/// error; only non-finite or non-positive inputs are rejected.
pub fn derive_params(dim: u32, b: f64, sigma: f64) -> Result<ModelParams> {
    if dim < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension N must be >= 3, got {dim}"
        )));
    }
    if !b.is_finite() || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "b and sigma must be finite, got b={b}, sigma={sigma}"
        )));
    }
    if b <= 0.0 || sigma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "b and sigma must be positive, got b={b}, sigma={sigma}"
        )));
    }
    let n = dim as f64;
    let s_c = n / 2.0 - (2.0 - b) / (2.0 * sigma);
    let sigma_c = 2.0 * n * sigma / (2.0 - b);
    let beta = (2.0 - sigma * n) / b;
    let sigma_hi = ((2.0 - b) / (n - 2.0)).min(2.0 / n);
    let regime_valid = b < (n / 2.0).min(2.0) && sigma > (2.0 - b) / n && sigma < sigma_hi;
    Ok(ModelParams {
        dim,
        b,
        sigma,
        s_c,
        sigma_c,
        beta,
        regime_valid,
    })
}

impl ModelParams {
    /// sigma * s_c, the coefficient that appears throughout the virial estimates.
    pub fn sigma_sc(&self) -> f64 {
        self.sigma * self.s_c
    }

    /// Surface area of the unit sphere S^{N-1}.
    pub fn unit_sphere_area(&self) -> f64 {
        unit_sphere_area(self.dim)
    }

    /// Volume of the unit ball in R^N.
    pub fn unit_ball_volume(&self) -> f64 {
        unit_sphere_area(self.dim) / self.dim as f64
    }

    pub fn same_equation(&self, other: &ModelParams) -> bool {
        self.dim == other.dim && self.b == other.b && self.sigma == other.sigma
    }
}

/// Gamma(n/2) for integer n >= 1, by the half-integer recurrence.
fn gamma_half_integer(n: u32) -> f64 {
    let mut x = n as f64 / 2.0;
    let mut acc = 1.0;
    while x > 1.5 {
        x -= 1.0;
        acc *= x;
    }
    if (x - 1.0).abs() < 1e-12 {
        acc
    } else {
        acc * std::f64::consts::PI.sqrt()
    }
}

/// omega_{N-1} = 2 pi^{N/2} / Gamma(N/2).
pub fn unit_sphere_area(dim: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(dim as f64 / 2.0) / gamma_half_integer(dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Radial,
    Cartesian3d,
}

/// A computational mesh. Radial meshes sample r_j = (j + 1/2) h; Cartesian
/// grids place every coordinate at x_i = -L + (i + 1/2) dx, so no sample
/// ever sits at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub kind: GeometryKind,
    /// Outer radius (radial) or half-box length (cartesian3d).
    pub extent: f64,
    /// Point count per axis.
    pub resolution: usize,
    /// Half-cell shift flag; always true for meshes built by this crate.
    pub origin_offset: bool,
}

impl Geometry {
    pub fn radial(extent: f64, resolution: usize) -> Result<Geometry> {
        if !(extent > 0.0) || resolution == 0 {
            return Err(Error::InvalidParameter(format!(
                "radial geometry needs extent > 0 and resolution > 0, got {extent}, {resolution}"
            )));
        }
        Ok(Geometry {
            kind: GeometryKind::Radial,
            extent,
            resolution,
            origin_offset: true,
        })
    }

    pub fn cartesian3d(half_box: f64, resolution: usize) -> Result<Geometry> {
        if !(half_box > 0.0) || resolution < 2 {
            return Err(Error::InvalidParameter(format!(
                "cartesian3d geometry needs half_box > 0 and resolution >= 2, got {half_box}, {resolution}"
            )));
        }
        Ok(Geometry {
            kind: GeometryKind::Cartesian3d,
            extent: half_box,
            resolution,
            origin_offset: true,
        })
    }

    /// Mesh spacing: h (radial) or dx (cartesian).
    pub fn spacing(&self) -> f64 {
        match self.kind {
            GeometryKind::Radial => self.extent / self.resolution as f64,
            GeometryKind::Cartesian3d => 2.0 * self.extent / self.resolution as f64,
        }
    }

    pub fn sample_count(&self) -> usize {
        match self.kind {
            GeometryKind::Radial => self.resolution,
            GeometryKind::Cartesian3d => self.resolution * self.resolution * self.resolution,
        }
    }

    /// 1-d coordinate of axis index i (cartesian) or radius of cell j (radial).
    pub fn axis_coord(&self, i: usize) -> f64 {
        match self.kind {
            GeometryKind::Radial => (i as f64 + 0.5) * self.spacing(),
            GeometryKind::Cartesian3d => -self.extent + (i as f64 + 0.5) * self.spacing(),
        }
    }

    /// Cartesian coordinates of a linear sample index (x fastest, z slowest).
    pub fn coords3(&self, idx: usize) -> [f64; 3] {
        debug_assert_eq!(self.kind, GeometryKind::Cartesian3d);
        let n = self.resolution;
        let ix = idx % n;
        let iy = (idx / n) % n;
        let iz = idx / (n * n);
        [
            self.axis_coord(ix),
            self.axis_coord(iy),
            self.axis_coord(iz),
        ]
    }

    /// |x| at every sample.
    pub fn radii(&self) -> Vec<f64> {
        match self.kind {
            GeometryKind::Radial => (0..self.resolution).map(|j| self.axis_coord(j)).collect(),
            GeometryKind::Cartesian3d => {
                let n = self.resolution;
                let ax: Vec<f64> = (0..n).map(|i| self.axis_coord(i)).collect();
                let mut out = Vec::with_capacity(n * n * n);
                for iz in 0..n {
                    for iy in 0..n {
                        let ryz = ax[iy] * ax[iy] + ax[iz] * ax[iz];
                        for x in &ax {
                            out.push((x * x + ryz).sqrt());
                        }
                    }
                }
                out
            }
        }
    }

    /// Quadrature weight of every sample: midpoint shells
    /// `omega_{N-1} r^{N-1} h` on radial meshes, `dx^3` on Cartesian cells.
    pub fn weights(&self, params: &ModelParams) -> Vec<f64> {
        match self.kind {
            GeometryKind::Radial => {
                let h = self.spacing();
                let om = params.unit_sphere_area();
                let p = params.dim as i32 - 1;
                (0..self.resolution)
                    .map(|j| om * self.axis_coord(j).powi(p) * h)
                    .collect()
            }
            GeometryKind::Cartesian3d => {
                let w = self.spacing().powi(3);
                vec![w; self.sample_count()]
            }
        }
    }
}

/// Closed-form initial-data profiles plus checkpoint loading.
#[derive(Debug, Clone)]
pub enum ProfileSpec<'a> {
    Gaussian {
        amplitude: f64,
        width: f64,
        center: [f64; 3],
    },
    ScaledGroundState {
        gs: &'a GroundState,
        lambda: f64,
    },
    File(std::path::PathBuf),
}

/// Complex state on a geometry at a simulation time.
#[derive(Debug, Clone)]
pub struct Field {
    pub geometry: Geometry,
    pub params: ModelParams,
    pub values: Vec<Complex64>,
    pub time: f64,
}

impl Field {
    pub fn new(geometry: Geometry, params: ModelParams, values: Vec<Complex64>, time: f64) -> Result<Field> {
        if values.len() != geometry.sample_count() {
            return Err(Error::GeometryMismatch(format!(
                "value count {} does not match geometry sample count {}",
                values.len(),
                geometry.sample_count()
            )));
        }
        let f = Field {
            geometry,
            params,
            values,
            time,
        };
        f.check_finite()?;
        Ok(f)
    }

    pub fn zeros(geometry: Geometry, params: ModelParams) -> Field {
        let n = geometry.sample_count();
        Field {
            geometry,
            params,
            values: vec![Complex64::new(0.0, 0.0); n],
            time: 0.0,
        }
    }

    pub fn check_finite(&self) -> Result<()> {
        for v in &self.values {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidField {
                    time: self.time,
                    reason: "non-finite amplitude".into(),
                });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.norm_sqr() == 0.0)
    }
}

/// Samples a closed-form profile on a geometry; `time = 0`.
pub fn make_field(geometry: Geometry, params: ModelParams, profile: &ProfileSpec) -> Result<Field> {
    match profile {
        ProfileSpec::Gaussian {
            amplitude,
            width,
            center,
        } => {
            if !(amplitude.is_finite() && *width > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "gaussian needs finite amplitude and width > 0, got {amplitude}, {width}"
                )));
            }
            let offset = center.iter().all(|c| *c == 0.0);
            match geometry.kind {
                GeometryKind::Radial => {
                    if !offset {
                        return Err(Error::InvalidParameter(
                            "gaussian center must be 0 on radial geometry".into(),
                        ));
                    }
                    let w2 = width * width;
                    let values = (0..geometry.resolution)
                        .map(|j| {
                            let r = geometry.axis_coord(j);
                            Complex64::new(amplitude * (-r * r / w2).exp(), 0.0)
                        })
                        .collect();
                    Field::new(geometry, params, values, 0.0)
                }
                GeometryKind::Cartesian3d => {
                    let w2 = width * width;
                    let n = geometry.sample_count();
                    let mut values = Vec::with_capacity(n);
                    for idx in 0..n {
                        let x = geometry.coords3(idx);
                        let d2 = (x[0] - center[0]).powi(2)
                            + (x[1] - center[1]).powi(2)
                            + (x[2] - center[2]).powi(2);
                        values.push(Complex64::new(amplitude * (-d2 / w2).exp(), 0.0));
                    }
                    Field::new(geometry, params, values, 0.0)
                }
            }
        }
        ProfileSpec::ScaledGroundState { gs, lambda } => {
            if !(*lambda > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "ground-state scaling lambda must be > 0, got {lambda}"
                )));
            }
            if !gs.params.same_equation(&params) {
                return Err(Error::GeometryMismatch(
                    "ground state solved for different (N, b, sigma)".into(),
                ));
            }
            // V_lambda(x) = lambda^{(2-b)/(2 sigma)} V(lambda |x|)
            let amp = lambda.powf((2.0 - params.b) / (2.0 * params.sigma));
            let radii = geometry.radii();
            let values = radii
                .iter()
                .map(|&r| Complex64::new(amp * gs.eval(lambda * r), 0.0))
                .collect();
            Field::new(geometry, params, values, 0.0)
        }
        ProfileSpec::File(path) => {
            let f = crate::checkpoint::read_field(path)?;
            if f.geometry != geometry {
                return Err(Error::GeometryMismatch(format!(
                    "checkpoint {} geometry does not match requested geometry",
                    path.display()
                )));
            }
            if !f.params.same_equation(&params) {
                return Err(Error::GeometryMismatch(format!(
                    "checkpoint {} was written for different (N, b, sigma)",
                    path.display()
                )));
            }
            Ok(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_exponents_reference_point() {
        let p = derive_params(3, 0.5, 0.6).unwrap();
        assert!((p.s_c - 0.25).abs() < 1e-15);
        assert!((p.sigma_c - 2.4).abs() < 1e-15);
        assert!((p.beta - 0.4).abs() < 1e-15);
        assert!(p.regime_valid);
    }

    #[test]
    fn lower_boundary_of_intercritical_range_is_invalid() {
        // sigma = (2-b)/N gives s_c = 0, outside the open range.
        let p = derive_params(3, 1.0, 1.0 / 3.0).unwrap();
        assert!(p.s_c.abs() < 1e-15);
        assert!(!p.regime_valid);
    }

    #[test]
    fn derived_exponents_second_point() {
        let p = derive_params(4, 1.0, 0.4).unwrap();
        assert!((p.s_c - 0.75).abs() < 1e-15);
        assert!((p.sigma_c - 3.2).abs() < 1e-15);
        assert!((p.beta - 0.4).abs() < 1e-15);
        assert!(p.regime_valid);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(derive_params(2, 0.5, 0.6).is_err());
        assert!(derive_params(3, f64::NAN, 0.6).is_err());
        assert!(derive_params(3, 0.5, -1.0).is_err());
    }

    #[test]
    fn regime_sweep_exponent_ranges() {
        // For every regime-valid triple: 0 < s_c < 1, sigma_c > 2, beta > 0,
        // and 2 beta/(1+beta) in (0,1).
        let mut seen_valid = 0;
        for dim in 3..=6u32 {
            for ib in 1..=30 {
                let b = ib as f64 * 0.07;
                for is in 1..=40 {
                    let sigma = is as f64 * 0.03;
                    let p = match derive_params(dim, b, sigma) {
                        Ok(p) => p,
                        Err(_) => continue,
                    };
                    if p.regime_valid {
                        seen_valid += 1;
                        assert!(p.s_c > 0.0 && p.s_c < 1.0, "s_c out of range at {p:?}");
                        assert!(p.sigma_c > 2.0, "sigma_c <= 2 at {p:?}");
                        assert!(p.beta > 0.0, "beta <= 0 at {p:?}");
                        let e = 2.0 * p.beta / (1.0 + p.beta);
                        assert!(e > 0.0 && e < 1.0, "2b/(1+b) out of range at {p:?}");
                    }
                }
            }
        }
        assert!(seen_valid > 50, "sweep should hit many valid triples");
    }

    #[test]
    fn unit_sphere_areas() {
        assert!((unit_sphere_area(3) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        // S^3 area = 2 pi^2
        assert!((unit_sphere_area(4) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn meshes_avoid_origin() {
        let g = Geometry::radial(10.0, 100).unwrap();
        assert!(g.radii().iter().all(|&r| r > 0.0));
        let g = Geometry::cartesian3d(2.0, 8).unwrap();
        assert!(g.radii().iter().all(|&r| r > 0.0));
    }

    #[test]
    fn gaussian_on_radial_rejects_offset_center() {
        let p = derive_params(3, 0.5, 0.6).unwrap();
        let g = Geometry::radial(10.0, 100).unwrap();
        let r = make_field(
            g,
            p,
            &ProfileSpec::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: [0.5, 0.0, 0.0],
            },
        );
        assert!(r.is_err());
    }
}
