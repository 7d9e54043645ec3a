//! Lifted torus maps.
//!
//! A lift F: ℝ² → ℝ² of a torus map commutes with integer translations,
//! F(x + m) = F(x) + m for m ∈ ℤ², so its displacement D(F)(x) = F(x) − x is
//! a function on the torus. Everything downstream (orbit averaging, grid
//! discretization) consumes maps through this module.
//!
//! All built-in maps displace coordinates by 1-periodic closed forms. The
//! periodic terms are always evaluated on the canonical representative
//! `s.rem_euclid(1.0)`, which keeps trig arguments small on long orbits and
//! makes equivariance hold to the last bit.

use std::f64::consts::TAU;
use std::fmt;

use crate::vec2::Vec2;

/// Phase shift of the first shear family (`p`, and the x pull of `r`).
pub const DEFAULT_ALPHA: f64 = 0.00137;
/// Phase shift of the second shear family (`q`, and the y pull of `r`).
pub const DEFAULT_BETA: f64 = 0.00159;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 9] =
    ["identity", "translation", "example2", "example3", "p", "q", "r", "f1", "f2"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("map `{0}` has no closed-form inverse")]
    NotInvertible(String),
    #[error("unknown built-in map `{0}` (expected one of: identity, translation, example2, example3, p, q, r, f1, f2)")]
    UnknownMap(String),
    #[error("built-in map `{map}` has no parameter `{name}`")]
    UnknownParameter { map: String, name: String },
    #[error("parameter `{name}` must be finite")]
    InvalidParameter { name: String },
}

/// A 1-periodic displacement profile:
///
/// ```text
/// u(s) = offset + cos_amp·cos w + sin_amp·sin w
///      + ripple_amp·sin²(2w)·(sin 3w + ripple_mix·cos(ripple_freq·w)),
/// w = 2π(s + phase).
/// ```
///
/// This family covers every built-in shear: the smooth "half-cosine bump"
/// profiles of `p` and `q` (offset ½, cos_amp ½ plus a small high-frequency
/// ripple) and the plain sinusoids of the example maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveProfile {
    pub phase: f64,
    pub offset: f64,
    pub cos_amp: f64,
    pub sin_amp: f64,
    pub ripple_amp: f64,
    pub ripple_mix: f64,
    pub ripple_freq: u32,
}

impl WaveProfile {
    pub const ZERO: WaveProfile = WaveProfile {
        phase: 0.0,
        offset: 0.0,
        cos_amp: 0.0,
        sin_amp: 0.0,
        ripple_amp: 0.0,
        ripple_mix: 0.0,
        ripple_freq: 1,
    };

    /// amp·cos(2πs).
    pub fn cosine(amp: f64) -> WaveProfile {
        WaveProfile { cos_amp: amp, ..WaveProfile::ZERO }
    }

    /// amp·sin(2πs).
    pub fn sine(amp: f64) -> WaveProfile {
        WaveProfile { sin_amp: amp, ..WaveProfile::ZERO }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let w = TAU * (s.rem_euclid(1.0) + self.phase);
        let mut v = self.offset;
        if self.cos_amp != 0.0 {
            v += self.cos_amp * w.cos();
        }
        if self.sin_amp != 0.0 {
            v += self.sin_amp * w.sin();
        }
        if self.ripple_amp != 0.0 {
            let s2 = (2.0 * w).sin();
            let carrier = (3.0 * w).sin() + self.ripple_mix * (self.ripple_freq as f64 * w).cos();
            v += self.ripple_amp * s2 * s2 * carrier;
        }
        v
    }
}

/// Parameters of the built-in dissipative perturbation `r`:
///
/// ```text
/// x ← x − pull_x·sin(4π(x+alpha)) + cross_x·sin(10πy)
/// y ← y − pull_y·sin(4π(y+beta))  + cross_y·sin(12πy)
/// ```
///
/// The pull terms create sinks near the half-integer lattice; the cross
/// terms break the symmetry between them. Not invertible in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationParams {
    pub alpha: f64,
    pub beta: f64,
    pub pull_x: f64,
    pub pull_y: f64,
    pub cross_x: f64,
    pub cross_y: f64,
}

impl PerturbationParams {
    fn eval(&self, p: Vec2) -> Vec2 {
        let fx = p.x.rem_euclid(1.0);
        let fy = p.y.rem_euclid(1.0);
        let dx = -self.pull_x * (2.0 * TAU * (fx + self.alpha)).sin()
            + self.cross_x * (5.0 * TAU * fy).sin();
        let dy = -self.pull_y * (2.0 * TAU * (fy + self.beta)).sin()
            + self.cross_y * (6.0 * TAU * fy).sin();
        Vec2::new(p.x + dx, p.y + dy)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Identity,
    Translation(Vec2),
    /// Adds `profile(arg coordinate)` to the `moved` coordinate. When the two
    /// axes differ this is a genuine shear and inverts by subtraction; when
    /// they coincide it is a circle map applied along one axis (the example
    /// maps) and has no closed-form inverse.
    Shear { moved: Axis, arg: Axis, profile: WaveProfile },
    Perturbation(PerturbationParams),
    /// Factors applied left to right: Composite([f, g]) evaluates g(f(x)).
    Composite(Vec<LiftedMap>),
    Power(Box<LiftedMap>, u32),
    /// Only ever wraps maps whose every part inverts in closed form;
    /// [`LiftedMap::inverse`] enforces that.
    Inverse(Box<LiftedMap>),
}

/// A lift of a torus map, built from closed-form pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMap {
    kind: Kind,
}

impl LiftedMap {
    pub fn identity() -> LiftedMap {
        LiftedMap { kind: Kind::Identity }
    }

    pub fn translation(v: Vec2) -> LiftedMap {
        LiftedMap { kind: Kind::Translation(v) }
    }

    /// x ← x + profile(y).
    pub fn shear_x(profile: WaveProfile) -> LiftedMap {
        LiftedMap { kind: Kind::Shear { moved: Axis::X, arg: Axis::Y, profile } }
    }

    /// y ← y + profile(x).
    pub fn shear_y(profile: WaveProfile) -> LiftedMap {
        LiftedMap { kind: Kind::Shear { moved: Axis::Y, arg: Axis::X, profile } }
    }

    /// x ← x + profile(x); y unchanged. A circle map in each horizontal line.
    pub fn circle_x(profile: WaveProfile) -> LiftedMap {
        LiftedMap { kind: Kind::Shear { moved: Axis::X, arg: Axis::X, profile } }
    }

    /// y ← y + profile(y); x unchanged.
    pub fn circle_y(profile: WaveProfile) -> LiftedMap {
        LiftedMap { kind: Kind::Shear { moved: Axis::Y, arg: Axis::Y, profile } }
    }

    pub fn perturbation(params: PerturbationParams) -> LiftedMap {
        LiftedMap { kind: Kind::Perturbation(params) }
    }

    /// The composition of `factors` applied in order (empty list = identity).
    pub fn composite(factors: Vec<LiftedMap>) -> LiftedMap {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match f.kind {
                Kind::Identity => {}
                Kind::Composite(inner) => flat.extend(inner),
                _ => flat.push(f),
            }
        }
        match flat.len() {
            0 => LiftedMap::identity(),
            1 => flat.pop().unwrap(),
            _ => LiftedMap { kind: Kind::Composite(flat) },
        }
    }

    /// outer ∘ inner.
    pub fn compose(outer: LiftedMap, inner: LiftedMap) -> LiftedMap {
        LiftedMap::composite(vec![inner, outer])
    }

    /// The q-th iterate. Panics if q == 0.
    pub fn power(self, q: u32) -> LiftedMap {
        assert!(q >= 1, "power requires q >= 1");
        if q == 1 {
            self
        } else {
            LiftedMap { kind: Kind::Power(Box::new(self), q) }
        }
    }

    /// Closed-form inverse. Fails for circle-map shears, the perturbation,
    /// and anything containing them.
    pub fn inverse(self) -> Result<LiftedMap, MapError> {
        if !self.is_invertible() {
            return Err(MapError::NotInvertible(self.to_string()));
        }
        match self.kind {
            Kind::Inverse(inner) => Ok(*inner),
            kind => Ok(LiftedMap { kind: Kind::Inverse(Box::new(LiftedMap { kind })) }),
        }
    }

    pub fn is_invertible(&self) -> bool {
        match &self.kind {
            Kind::Identity | Kind::Translation(_) | Kind::Inverse(_) => true,
            Kind::Shear { moved, arg, .. } => moved != arg,
            Kind::Perturbation(_) => false,
            Kind::Composite(fs) => fs.iter().all(LiftedMap::is_invertible),
            Kind::Power(m, _) => m.is_invertible(),
        }
    }

    /// Apply the lift.
    pub fn eval(&self, p: Vec2) -> Vec2 {
        match &self.kind {
            Kind::Identity => p,
            Kind::Translation(v) => p + *v,
            Kind::Shear { moved, arg, profile } => {
                let s = match arg {
                    Axis::X => p.x,
                    Axis::Y => p.y,
                };
                let d = profile.eval(s);
                match moved {
                    Axis::X => Vec2::new(p.x + d, p.y),
                    Axis::Y => Vec2::new(p.x, p.y + d),
                }
            }
            Kind::Perturbation(params) => params.eval(p),
            Kind::Composite(fs) => fs.iter().fold(p, |acc, f| f.eval(acc)),
            Kind::Power(m, q) => (0..*q).fold(p, |acc, _| m.eval(acc)),
            Kind::Inverse(m) => m.eval_inverse(p),
        }
    }

    /// Apply the closed-form inverse. Callers reach this only through kinds
    /// vetted by [`LiftedMap::inverse`].
    fn eval_inverse(&self, p: Vec2) -> Vec2 {
        match &self.kind {
            Kind::Identity => p,
            Kind::Translation(v) => p - *v,
            Kind::Shear { moved: Axis::X, arg: Axis::Y, profile } => {
                Vec2::new(p.x - profile.eval(p.y), p.y)
            }
            Kind::Shear { moved: Axis::Y, arg: Axis::X, profile } => {
                Vec2::new(p.x, p.y - profile.eval(p.x))
            }
            Kind::Shear { .. } | Kind::Perturbation(_) => {
                unreachable!("inverse() rejects maps without closed-form inverses")
            }
            Kind::Composite(fs) => fs.iter().rev().fold(p, |acc, f| f.eval_inverse(acc)),
            Kind::Power(m, q) => (0..*q).fold(p, |acc, _| m.eval_inverse(acc)),
            Kind::Inverse(m) => m.eval(p),
        }
    }

    /// Displacement D(F)(x) = F(x) − x. Well-defined on the torus: any lift
    /// of the same torus point gives the same value.
    pub fn displacement(&self, p: Vec2) -> Vec2 {
        self.eval(p) - p
    }
}

impl fmt::Display for LiftedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Identity => write!(f, "identity"),
            Kind::Translation(v) => write!(f, "translation({}, {})", v.x, v.y),
            Kind::Shear { moved: Axis::X, arg: Axis::Y, .. } => write!(f, "shear_x"),
            Kind::Shear { moved: Axis::Y, arg: Axis::X, .. } => write!(f, "shear_y"),
            Kind::Shear { moved: Axis::X, .. } => write!(f, "circle_x"),
            Kind::Shear { moved: Axis::Y, .. } => write!(f, "circle_y"),
            Kind::Perturbation(_) => write!(f, "perturbation"),
            Kind::Composite(fs) => {
                // Outermost factor first, matching functional notation.
                for (i, m) in fs.iter().rev().enumerate() {
                    if i > 0 {
                        write!(f, " o ")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            Kind::Power(m, q) => write!(f, "power({m}, {q})"),
            Kind::Inverse(m) => write!(f, "inverse({m})"),
        }
    }
}

fn p_profile(alpha: f64) -> WaveProfile {
    WaveProfile {
        phase: alpha,
        offset: 0.5,
        cos_amp: 0.5,
        sin_amp: 0.0,
        ripple_amp: 0.0234,
        ripple_mix: 0.3754,
        ripple_freq: 13,
    }
}

fn q_profile(beta: f64) -> WaveProfile {
    WaveProfile {
        phase: beta,
        offset: 0.5,
        cos_amp: 0.5,
        sin_amp: 0.0,
        ripple_amp: 0.0213,
        ripple_mix: 0.4243,
        ripple_freq: 11,
    }
}

/// The conservative shear `p`: (x, y) ↦ (x, y + g(x)) with g the half-cosine
/// bump profile phased by `alpha`. g ≥ 0 with one zero per period, so the
/// vertical rotation numbers of `p` alone fill [0, 1].
pub fn map_p(alpha: f64) -> LiftedMap {
    LiftedMap::shear_y(p_profile(alpha))
}

/// The conjugate horizontal shear `q`: (x, y) ↦ (x + h(y), y).
pub fn map_q(beta: f64) -> LiftedMap {
    LiftedMap::shear_x(q_profile(beta))
}

/// The dissipative perturbation `r` (see [`PerturbationParams`]).
pub fn map_r(alpha: f64, beta: f64) -> LiftedMap {
    LiftedMap::perturbation(PerturbationParams {
        alpha,
        beta,
        pull_x: 0.0127,
        pull_y: 0.0176,
        cross_x: 0.000824,
        cross_y: 0.000631,
    })
}

/// f1 = q ∘ p — a conservative torus homeomorphism with rotation set [0,1]².
pub fn map_f1(alpha: f64, beta: f64) -> LiftedMap {
    LiftedMap::compose(map_q(beta), map_p(alpha))
}

/// f2 = r ∘ q ∘ p — a dissipative perturbation of f1, same rotation set.
pub fn map_f2(alpha: f64, beta: f64) -> LiftedMap {
    LiftedMap::compose(map_r(alpha, beta), map_f1(alpha, beta))
}

/// (x, y) ↦ (x + cos 2πx, y): every horizontal line maps to itself by a
/// degree-one circle map with fixed points at displacements −1 and +1.
pub fn example2() -> LiftedMap {
    LiftedMap::circle_x(WaveProfile::cosine(1.0))
}

/// (x, y) ↦ (x + cos 2πy, y + sin(2πy)/100): the line y = ½ is invariant and
/// attracting (vertical derivative 1 − 2π/100 there), the line y = 0 repels,
/// so almost every orbit's displacement average tends to (−1, 0).
pub fn example3() -> LiftedMap {
    LiftedMap::compose(
        LiftedMap::circle_y(WaveProfile::sine(0.01)),
        LiftedMap::shear_x(WaveProfile::cosine(1.0)),
    )
}

fn take(
    overrides: &mut Vec<(&str, f64)>,
    map: &str,
    name: &str,
    default: f64,
) -> Result<f64, MapError> {
    let mut value = default;
    let mut i = 0;
    while i < overrides.len() {
        if overrides[i].0 == name {
            value = overrides.remove(i).1;
            if !value.is_finite() {
                return Err(MapError::InvalidParameter { name: name.to_string() });
            }
        } else {
            i += 1;
        }
    }
    let _ = map;
    Ok(value)
}

/// Look up a built-in map by name (case-insensitive), applying parameter
/// overrides: `alpha`/`beta` for the shear families, `dx`/`dy` for
/// `translation`. Unknown names and parameters are errors.
pub fn builtin(name: &str, overrides: &[(&str, f64)]) -> Result<LiftedMap, MapError> {
    let lower = name.to_ascii_lowercase();
    let mut rest: Vec<(&str, f64)> = overrides.to_vec();
    let map = match lower.as_str() {
        "identity" => LiftedMap::identity(),
        "translation" => {
            let dx = take(&mut rest, &lower, "dx", 0.0)?;
            let dy = take(&mut rest, &lower, "dy", 0.0)?;
            LiftedMap::translation(Vec2::new(dx, dy))
        }
        "example2" => example2(),
        "example3" => example3(),
        "p" => map_p(take(&mut rest, &lower, "alpha", DEFAULT_ALPHA)?),
        "q" => map_q(take(&mut rest, &lower, "beta", DEFAULT_BETA)?),
        "r" => map_r(
            take(&mut rest, &lower, "alpha", DEFAULT_ALPHA)?,
            take(&mut rest, &lower, "beta", DEFAULT_BETA)?,
        ),
        "f1" => map_f1(
            take(&mut rest, &lower, "alpha", DEFAULT_ALPHA)?,
            take(&mut rest, &lower, "beta", DEFAULT_BETA)?,
        ),
        "f2" => map_f2(
            take(&mut rest, &lower, "alpha", DEFAULT_ALPHA)?,
            take(&mut rest, &lower, "beta", DEFAULT_BETA)?,
        ),
        _ => return Err(MapError::UnknownMap(name.to_string())),
    };
    if let Some((pname, _)) = rest.first() {
        return Err(MapError::UnknownParameter { map: lower, name: pname.to_string() });
    }
    Ok(map)
}
