use crate::error::{Error, Result};
use crate::real::Real;

/// Couplings of the extended Hubbard Hamiltonian: hopping `j`, on-site
/// interaction `u`, nearest-neighbor interaction `v`, lattice constant `d`.
/// Energies are usually quoted in units of `j` with `d = 1`; both knobs stay
/// explicit so dimensional output is possible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams<T> {
    pub j: T,
    pub u: T,
    pub v: T,
    pub d: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(j: T, u: T, v: T, d: T) -> Result<Self> {
        if !(j.is_finite() && u.is_finite() && v.is_finite() && d.is_finite()) {
            return Err(Error::InvalidParams("couplings must be finite".into()));
        }
        if j <= T::zero() {
            return Err(Error::InvalidParams(format!("J must be positive, got {j}")));
        }
        if d <= T::zero() {
            return Err(Error::InvalidParams(format!("d must be positive, got {d}")));
        }
        Ok(Self { j, u, v, d })
    }

    /// Parameters in natural units: J = 1, d = 1.
    pub fn dimensionless(u: T, v: T) -> Self {
        Self { j: T::one(), u, v, d: T::one() }
    }
}

/// A fixed center-of-mass sector. The pair problem at total quasimomentum K
/// is a single-particle problem in the relative coordinate with effective
/// hopping J_K = 2 J cos(K d / 2); `d` is carried along so relative momenta
/// can be formed without re-threading the parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSector<T> {
    pub k_com: T,
    pub jk: T,
    pub d: T,
}

/// Scattering continuum of the sector: E in [-2 J_K, +2 J_K].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumBand<T> {
    pub e_min: T,
    pub e_max: T,
}

impl<T: Real> KSector<T> {
    /// Sector with a directly prescribed effective hopping. Used for
    /// band-edge limits where J_K -> 0 faster than any representable K.
    pub fn with_jk(jk: T, d: T) -> Self {
        let c = (jk / T::two()).min(T::one());
        Self { k_com: T::two() * c.acos() / d, jk, d }
    }

    pub fn band(&self) -> ContinuumBand<T> {
        ContinuumBand { e_min: -T::two() * self.jk, e_max: T::two() * self.jk }
    }
}

/// Builds the K sector, rejecting momenta outside the first Brillouin zone.
/// Out-of-zone input is a caller error, not something to fold silently.
pub fn k_sector<T: Real>(params: &ModelParams<T>, k_com: T) -> Result<KSector<T>> {
    let kd = k_com * params.d;
    if !kd.is_finite() || kd.abs() > T::PI() {
        return Err(Error::OutOfZone { kd_abs: kd.abs().to_f64().unwrap_or(f64::NAN) });
    }
    // cos(pi/2) only rounds to ~6e-17; pin the zone boundary to an exactly
    // flat band so J_K = 0 is a reliable marker downstream.
    let jk = if kd.abs() == T::PI() {
        T::zero()
    } else {
        (T::two() * params.j * (kd / T::two()).cos()).max(T::zero())
    };
    Ok(KSector { k_com, jk, d: params.d })
}

/// E_{K,k} = -2 J_K cos(k d). Even in k, so callers may fold to kd in [0, pi].
pub fn continuum_energy<T: Real>(sector: &KSector<T>, k_rel: T) -> T {
    -T::two() * sector.jk * (k_rel * sector.d).cos()
}

/// Density of states rho(E, K) = [ (2 J_K)^2 - E^2 ]^(-1/2).
///
/// Normalization convention: raw d(kd)/dE, i.e. the integral of rho over the
/// open band is pi. Only defined strictly inside the band.
pub fn density_of_states<T: Real>(sector: &KSector<T>, e: T) -> Result<T> {
    let w = T::two() * sector.jk;
    if e.abs() >= w {
        return Err(Error::BandEdgeSingularity {
            e_abs: e.abs().to_f64().unwrap_or(f64::NAN),
            band_half_width: w.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok((w * w - e * e).sqrt().recip())
}

/// Default number of interior kd points for sweeps.
pub const DEFAULT_KD_POINTS: usize = 2048;

/// Uniform grid of kd values strictly inside (0, pi): the exact endpoints
/// are excluded since phase shifts degenerate there and the band edges have
/// dedicated closed-form operations.
pub fn kd_grid<T: Real>(n: usize) -> Vec<T> {
    let step = T::PI() / T::from_usize(n + 1).expect("grid size");
    (1..=n).map(|i| step * T::from_usize(i).expect("grid index")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_params() -> ModelParams<f64> {
        ModelParams::dimensionless(0.0, 0.0)
    }

    #[test]
    fn params_validation() {
        assert!(ModelParams::new(1.0, 3.0, -2.0, 1.0).is_ok());
        assert!(ModelParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn jk_at_reference_momenta() {
        let p = unit_params();
        assert_eq!(k_sector(&p, 0.0).unwrap().jk, 2.0);
        assert_eq!(k_sector(&p, std::f64::consts::PI).unwrap().jk, 0.0);
        let s = k_sector(&p, 3.0 * std::f64::consts::PI / 4.0).unwrap();
        assert!((s.jk - 0.7653668647301797).abs() < 1e-15);
    }

    #[test]
    fn out_of_zone_is_rejected() {
        let p = unit_params();
        let k = std::f64::consts::PI * 1.0001;
        assert!(matches!(k_sector(&p, k), Err(Error::OutOfZone { .. })));
        assert!(matches!(k_sector(&p, -k), Err(Error::OutOfZone { .. })));
    }

    #[test]
    fn continuum_energy_examples() {
        let s = k_sector(&unit_params(), 0.0).unwrap();
        assert_eq!(continuum_energy(&s, 0.0), -4.0);
        assert!(continuum_energy(&s, std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((continuum_energy(&s, std::f64::consts::PI) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn dos_examples() {
        let s = k_sector(&unit_params(), 0.0).unwrap();
        assert_eq!(density_of_states(&s, 0.0).unwrap(), 0.25);

        let s1 = KSector { k_com: 0.0, jk: 1.0, d: 1.0 };
        assert!((density_of_states(&s1, 3.0_f64.sqrt()).unwrap() - 1.0).abs() < 1e-12);

        assert!(matches!(
            density_of_states(&s, 4.0),
            Err(Error::BandEdgeSingularity { .. })
        ));
        assert!(density_of_states(&s, -4.0).is_err());
        assert!(density_of_states(&s, 5.2).is_err());
    }

    #[test]
    fn dos_is_even_in_energy() {
        let s = k_sector(&unit_params(), 0.7).unwrap();
        for e in [0.1, 0.5, 1.2] {
            let lhs = density_of_states(&s, e).unwrap();
            let rhs = density_of_states(&s, -e).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kd_grid_is_interior_and_uniform() {
        let g: Vec<f64> = kd_grid(7);
        assert_eq!(g.len(), 7);
        assert!(g[0] > 0.0 && g[6] < std::f64::consts::PI);
        let step = g[1] - g[0];
        for w in g.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-15);
        }
        assert!((g[3] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn sector_from_jk_roundtrips() {
        let p = unit_params();
        let s = KSector::<f64>::with_jk(1e-6, 1.0);
        assert_eq!(s.jk, 1e-6);
        let back = k_sector(&p, s.k_com).unwrap();
        assert!((back.jk - 1e-6).abs() < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        let p = ModelParams::<f32>::dimensionless(0.0, 0.0);
        let s = k_sector(&p, 0.0_f32).unwrap();
        assert_eq!(s.jk, 2.0_f32);
        assert_eq!(density_of_states(&s, 0.0_f32).unwrap(), 0.25_f32);
    }
}
