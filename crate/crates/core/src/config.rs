//! Runtime limits read from the environment.

/// Default for `DUALIS_MAX_ATOMS`.
pub const DEFAULT_MAX_ATOMS: usize = 64;

/// Carriers are enumerated member by member, so they are additionally
/// capped at this many atoms whatever the environment says.
pub const CARRIER_ENUMERATION_CAP: usize = 24;

/// Upper bound on the number of atoms accepted by exhaustive routines,
/// from `DUALIS_MAX_ATOMS` when set to a positive integer.
pub fn max_atoms() -> usize {
    std::env::var("DUALIS_MAX_ATOMS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_ATOMS)
}

/// Largest atom count whose carrier may be listed explicitly.
pub fn enumeration_limit() -> usize {
    max_atoms().min(CARRIER_ENUMERATION_CAP)
}
