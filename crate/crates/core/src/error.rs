use thiserror::Error;

/// Failure modes of the solver. Values are carried as `f64` regardless of
/// the working precision so the messages stay printable and comparable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quasimomentum out of the first Brillouin zone: |K d| = {kd_abs} > pi")]
    OutOfZone { kd_abs: f64 },

    #[error("band-edge momentum kd = {kd}: phase shifts are undefined where sin(kd) = 0")]
    BandEdgeMomentum { kd: f64 },

    #[error("flat band: J_K = 0 at |K| = pi/d, no propagating states")]
    FlatBand,

    #[error("band-edge singularity: |E| = {e_abs} is not inside the band (2 J_K = {band_half_width})")]
    BandEdgeSingularity { e_abs: f64, band_half_width: f64 },

    #[error("amplitude singular: cos(kd + delta0) vanishes at kd = {kd}")]
    AmplitudeSingular { kd: f64 },

    #[error("W undefined: U + 2V = 0 with U V != 0")]
    WUndefined,

    #[error("phi0 singular: U alpha + J_K (alpha^2 + 1) vanishes at alpha = {alpha}")]
    PhiSingular { alpha: f64 },

    #[error("case mismatch: {0}")]
    CaseMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("lattice size must be odd and at least 11, got {0}")]
    BadLatticeSize(usize),

    #[error("eigensolver failed to converge after {sweeps} sweeps; matrix dumped to {dump}")]
    EigenFailure { sweeps: usize, dump: String },
}

pub type Result<T> = std::result::Result<T, Error>;
