use crate::error::{Error, Result};
use crate::model::{continuum_energy, KSector, ModelParams};
use crate::real::Real;

/// Phase shifts of the relative-coordinate wave, both folded to the
/// principal branch (-pi/2, pi/2]. `delta0` is the pure on-site shift;
/// `delta` includes the nearest-neighbor coupling and reduces to `delta0`
/// when V = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseShifts<T> {
    pub delta0: T,
    pub delta: T,
}

/// One scattering solution at fixed (K, k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringState<T> {
    pub sector: KSector<T>,
    pub k_rel: T,
    pub energy: T,
    pub shifts: PhaseShifts<T>,
    pub sigma: T,
}

/// Generalized 1D scattering lengths at the two band edges. `None` marks a
/// resonant divergence (the closed-form denominator vanished within the
/// configured tolerance), never a computational failure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringLengths<T> {
    pub a0: Option<T>,
    pub a_pi: Option<T>,
}

/// Resonant center-of-mass momenta, one per band edge, together with the
/// combined coupling W = UV/(U+2V) that controls them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceMomenta<T> {
    pub w: T,
    pub bottom: Option<T>,
    pub top: Option<T>,
}

/// Denominator threshold (in units of J^2) below which a scattering length
/// is reported as divergent.
pub const DEFAULT_DIVERGENCE_TOL: f64 = 1e-12;

fn fold_principal<T: Real>(theta: T) -> T {
    if theta > T::FRAC_PI_2() {
        theta - T::PI()
    } else if theta <= -T::FRAC_PI_2() {
        theta + T::PI()
    } else {
        theta
    }
}

fn check_momentum<T: Real>(sector: &KSector<T>, k_rel: T) -> Result<T> {
    let kd = k_rel * sector.d;
    if !kd.is_finite() || kd <= T::zero() || kd >= T::PI() {
        return Err(Error::BandEdgeMomentum { kd: kd.to_f64().unwrap_or(f64::NAN) });
    }
    if sector.jk <= T::zero() {
        return Err(Error::FlatBand);
    }
    Ok(kd)
}

/// Both phase shifts at relative momentum k, each via a two-argument
/// arctangent of the (numerator, denominator) pair of its defining tangent,
/// so the quadrant is kept before folding.
pub fn phase_shifts<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
    k_rel: T,
) -> Result<PhaseShifts<T>> {
    let kd = check_momentum(sector, k_rel)?;
    let (u, v, jk) = (params.u, params.v, sector.jk);
    let (s, c) = (kd.sin(), kd.cos());

    let delta0 = fold_principal((-u).atan2(T::two() * jk * s));

    let num = jk * u + (T::two() * jk * c + u) * v * c;
    let den = (u * v - T::two() * jk * (jk - v * c)) * s;
    let delta = fold_principal(num.atan2(den));

    Ok(PhaseShifts { delta0, delta })
}

/// Assembles energy, shifts and cross-section for one (K, k) point.
pub fn scattering_state<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
    k_rel: T,
) -> Result<ScatteringState<T>> {
    let shifts = phase_shifts(params, sector, k_rel)?;
    Ok(ScatteringState {
        sector: *sector,
        k_rel,
        energy: continuum_energy(sector, k_rel),
        shifts,
        sigma: shifts.delta.sin().powi(2),
    })
}

/// Scattering wavefunction amplitude at lattice offset `r_index`:
/// cos(kd |i| + delta) away from the origin and the interaction-modified
/// amplitude cos(delta0) cos(kd + delta) / cos(kd + delta0) at the origin.
/// The origin amplitude has isolated poles where cos(kd + delta0) = 0; these
/// are reported, not extrapolated over.
pub fn scattering_wavefunction<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
    k_rel: T,
    r_index: i64,
) -> Result<T> {
    let kd = check_momentum(sector, k_rel)?;
    let shifts = phase_shifts(params, sector, k_rel)?;
    if r_index == 0 {
        let c0 = (kd + shifts.delta0).cos();
        if c0.abs() < T::lit(1e-12) {
            return Err(Error::AmplitudeSingular { kd: kd.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(shifts.delta0.cos() * (kd + shifts.delta).cos() / c0)
    } else {
        let ri = T::from_i64(r_index.abs()).expect("lattice offset");
        Ok((kd * ri + shifts.delta).cos())
    }
}

/// sigma = sin^2(delta) in [0, 1].
pub fn cross_section<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
    k_rel: T,
) -> Result<T> {
    Ok(phase_shifts(params, sector, k_rel)?.delta.sin().powi(2))
}

/// Momenta kd in (0, pi) where the cross-section vanishes: the real roots of
/// 2 J_K V c^2 + UV c + J_K U = 0 in c = cos(kd) that land inside the band.
/// Requires UV != 0 and (UV)^2 >= 8 J_K^2 UV; a degenerate double root is
/// reported once. The empty list is a perfectly valid outcome.
pub fn sigma_zero_momenta<T: Real>(params: &ModelParams<T>, sector: &KSector<T>) -> Vec<T> {
    let (u, v, jk) = (params.u, params.v, sector.jk);
    let uv = u * v;
    if jk <= T::zero() || uv == T::zero() {
        return Vec::new();
    }
    let disc = uv * (uv - T::lit(8.0) * jk * jk);
    if disc < T::zero() {
        return Vec::new();
    }
    let mut cosines = Vec::with_capacity(2);
    if disc == T::zero() {
        cosines.push(-u / (T::lit(4.0) * jk));
    } else {
        let q = -(uv + disc.sqrt().copysign(uv)) / T::two();
        cosines.push(q / (T::two() * jk * v));
        cosines.push(jk * u / q);
    }
    let mut kds: Vec<T> = cosines
        .into_iter()
        .filter(|c| c.abs() < T::one())
        .map(|c| c.acos())
        .collect();
    kds.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite kd"));
    kds.dedup();
    kds
}

/// Band-edge scattering lengths with the default divergence tolerance.
pub fn scattering_lengths<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
) -> Result<ScatteringLengths<T>> {
    scattering_lengths_with_tol(params, sector, T::lit(DEFAULT_DIVERGENCE_TOL))
}

/// Band-edge scattering lengths; `tol` (units of J^2) decides when a
/// denominator counts as resonant. The closed forms are
/// a = [UV - 2 J_K (J_K -/+ V)] / [UV +/- J_K (U + 2V)] * d
/// with the upper signs at kd -> 0 and the lower signs at kd -> pi.
pub fn scattering_lengths_with_tol<T: Real>(
    params: &ModelParams<T>,
    sector: &KSector<T>,
    tol: T,
) -> Result<ScatteringLengths<T>> {
    if sector.jk <= T::zero() {
        return Err(Error::FlatBand);
    }
    let (u, v, jk, d) = (params.u, params.v, sector.jk, params.d);
    let uv = u * v;
    let cut = tol * params.j * params.j;
    let edge = |num: T, den: T| -> Option<T> {
        if den.abs() < cut {
            None
        } else {
            Some(num / den * d)
        }
    };
    Ok(ScatteringLengths {
        a0: edge(uv - T::two() * jk * (jk - v), uv + jk * (u + T::two() * v)),
        a_pi: edge(uv - T::two() * jk * (jk + v), uv - jk * (u + T::two() * v)),
    })
}

/// Resonant momenta K_R = (2/d) arccos(-/+ W / 2J) per band edge, present
/// only where the arccos argument lies in [0, 1]. W = UV/(U+2V) is undefined
/// for U + 2V = 0 unless the interactions vanish entirely (then W = 0).
pub fn resonance_momentum<T: Real>(params: &ModelParams<T>) -> Result<ResonanceMomenta<T>> {
    let w = combined_coupling(params)?;
    let half = w / (T::two() * params.j);
    let edge = |arg: T| -> Option<T> {
        if arg >= T::zero() && arg <= T::one() {
            Some(T::two() * arg.acos() / params.d)
        } else {
            None
        }
    };
    Ok(ResonanceMomenta { w, bottom: edge(-half), top: edge(half) })
}

/// W = UV/(U+2V).
pub fn combined_coupling<T: Real>(params: &ModelParams<T>) -> Result<T> {
    let sum = params.u + T::two() * params.v;
    if sum == T::zero() {
        if params.u * params.v == T::zero() {
            return Ok(T::zero());
        }
        return Err(Error::WUndefined);
    }
    Ok(params.u * params.v / sum)
}

/// Removes the principal-branch folds from a phase-shift sweep so the curve
/// is continuous for plotting: each value may be shifted by a multiple of pi
/// (the branch period) to stay closest to its predecessor.
pub fn unwrap_phase_sweep<T: Real>(deltas: &mut [T]) {
    for i in 1..deltas.len() {
        let mut x = deltas[i];
        while x - deltas[i - 1] > T::FRAC_PI_2() {
            x = x - T::PI();
        }
        while deltas[i - 1] - x > T::FRAC_PI_2() {
            x = x + T::PI();
        }
        deltas[i] = x;
    }
}
