# gravnav/fusion.py
"""
Фильтр частиц по поправкам к решению ИНС.

Каждая частица - гипотеза «решение ИНС + поправка» (8 компонент: сдвиг
North/East, поправки к скоростям в осях тела и к углам Эйлера). Веса
пересчитываются по расстоянию пары сигналов градиентометра до эллипса,
построенного по карте в позиции частицы.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields

import numpy as np
from django.core.exceptions import ValidationError

from .exceptions import Divergence, WeightUnderflow
from .geodesy import body_to_ned, ned_offsets, offset_positions, wrap_heading, wrap_longitude
from .gradiometer import GradiometerConfig, PairSample, gradient_to_delta_phi, min_distance_many
from .gravmap import MapSet
from .ins import NavSolution
from .trajectory import STATE_FIELDS, StateVector

logger = logging.getLogger(__name__)

DEFAULT_SIGMA_S = 0.005
# граница поправки по горизонтали, м
MAX_POSITION_CORRECTION = 50_000.0


@dataclass(frozen=True)
class CorrectionVector:
    d_north: float = 0.0
    d_east: float = 0.0
    d_u: float = 0.0
    d_v: float = 0.0
    d_w: float = 0.0
    d_psi: float = 0.0
    d_theta: float = 0.0
    d_phi: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(getattr(self, f.name)) for f in fields(self)):
            raise ValidationError("correction vector components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)])

    @classmethod
    def from_array(cls, values) -> "CorrectionVector":
        return cls(*(float(v) for v in values))

    @property
    def horizontal(self) -> float:
        return math.hypot(self.d_north, self.d_east)


CORRECTION_FIELDS = tuple(f.name for f in fields(CorrectionVector))


@dataclass(frozen=True)
class Particle:
    correction: CorrectionVector
    weight: float


@dataclass(frozen=True)
class FilterConfig:
    enabled: bool = True
    n_particles: int = 500
    resample_threshold_fraction: float = 0.5
    alpha: float = 0.05
    sigma_s: float | None = None
    sigma_pos: float = 25.0
    sigma_vel: float = 0.05
    sigma_att: float = 0.005
    delta_t: float = 1.0
    initial_spread_factor: float = 3.0
    initial_position_sigma: float | None = None
    position_only: bool = False

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if self.n_particles < 1:
            errors["n_particles"] = "at least one particle is required"
        if not 0 < self.resample_threshold_fraction <= 1:
            errors["resample_threshold_fraction"] = "threshold fraction must lie in (0, 1]"
        if not 0 < self.alpha <= 1:
            errors["alpha"] = "alpha must lie in (0, 1]"
        if self.sigma_s is not None and not self.sigma_s > 0:
            errors["sigma_s"] = "sigma_s must be positive"
        for name in ("sigma_pos", "sigma_vel", "sigma_att", "initial_spread_factor"):
            if getattr(self, name) < 0:
                errors[name] = f"{name} must be non-negative"
        if not self.delta_t > 0:
            errors["delta_t"] = "delta_t must be positive"
        if self.initial_position_sigma is not None and self.initial_position_sigma < 0:
            errors["initial_position_sigma"] = "initial position sigma must be non-negative"
        if errors:
            raise ValidationError(errors)

    def resolve_sigma_s(self, gradiometer: GradiometerConfig | None = None) -> float:
        if self.sigma_s is not None:
            return self.sigma_s
        if gradiometer is not None:
            return gradiometer.signal_sigma
        return DEFAULT_SIGMA_S

    def process_sigmas(self) -> np.ndarray:
        """СКО шума процесса за единицу времени по восьми компонентам."""
        if self.position_only:
            return np.array([self.sigma_pos] * 2 + [0.0] * 6)
        return np.array([self.sigma_pos] * 2 + [self.sigma_vel] * 3 + [self.sigma_att] * 3)


@dataclass(eq=False)
class ParticleEnsemble:
    corrections: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i) -> Particle:
        return Particle(CorrectionVector.from_array(self.corrections[i]), float(self.weights[i]))

    def copy(self) -> "ParticleEnsemble":
        return ParticleEnsemble(self.corrections.copy(), self.weights.copy())

    @classmethod
    def from_particles(cls, particles) -> "ParticleEnsemble":
        particles = list(particles)
        corrections = np.array([p.correction.as_array() for p in particles]).reshape(-1, len(CORRECTION_FIELDS))
        weights = np.array([p.weight for p in particles], dtype=float)
        return cls(corrections, weights / weights.sum())


# ---------------------- операции фильтра ----------------------

def init_particles(config: FilterConfig, rng: np.random.Generator) -> ParticleEnsemble:
    spread = config.process_sigmas() * config.initial_spread_factor
    if config.initial_position_sigma is not None:
        spread[:2] = config.initial_position_sigma
    corrections = rng.normal(0.0, 1.0, (config.n_particles, len(CORRECTION_FIELDS))) * spread
    return ParticleEnsemble(corrections, np.full(config.n_particles, 1.0 / config.n_particles))


def candidate_positions(nav: NavSolution, ensemble: ParticleEnsemble):
    s = nav.state
    lat, lon, _ = offset_positions(s.latitude, s.longitude, s.altitude,
                                   ensemble.corrections[:, 0], ensemble.corrections[:, 1])
    return lat, lon


def reweight_by_distance(weights: np.ndarray, distances: np.ndarray, sigma_s: float) -> np.ndarray:
    """Гауссово правдоподобие по расстоянию до эллипса и нормировка."""
    unnormalized = np.exp(-np.asarray(distances) ** 2 / (2 * sigma_s ** 2)) * weights
    total = unnormalized.sum()
    if not total > 0:
        raise WeightUnderflow("all particle likelihoods underflowed to zero")
    return unnormalized / total


def reweight(ensemble: ParticleEnsemble, pair: PairSample, nav: NavSolution, maps: MapSet,
             config: FilterConfig, gradiometer: GradiometerConfig) -> ParticleEnsemble:
    if not pair.valid:
        return ensemble
    lat, lon = candidate_positions(nav, ensemble)
    delta_phi = gradient_to_delta_phi(maps.gradient_at(lat, lon), gradiometer)
    x0, y0 = gradiometer.signal_offsets
    point = np.broadcast_to([pair.s0_norm - x0, pair.s1_norm - y0], (len(ensemble), 2))
    distances = min_distance_many(point, delta_phi)
    weights = reweight_by_distance(ensemble.weights, distances, config.resolve_sigma_s(gradiometer))
    return ParticleEnsemble(ensemble.corrections, weights)


def effective_particle_count(ensemble: ParticleEnsemble) -> float:
    return 1.0 / float(np.sum(ensemble.weights ** 2))


def resample(ensemble: ParticleEnsemble, rng: np.random.Generator) -> ParticleEnsemble:
    """Систематическая выборка: одна случайная величина на всё множество."""
    n = len(ensemble)
    positions = (rng.random() + np.arange(n)) / n
    cumulative = np.cumsum(ensemble.weights)
    cumulative[-1] = 1.0
    index = np.searchsorted(cumulative, positions, side="right")
    return ParticleEnsemble(ensemble.corrections[index].copy(), np.full(n, 1.0 / n))


def mean_correction(ensemble: ParticleEnsemble) -> CorrectionVector:
    return CorrectionVector.from_array(ensemble.weights @ ensemble.corrections)


def _shifted_solution(nav: NavSolution, correction: np.ndarray) -> NavSolution:
    s = nav.state
    lat, lon, _ = offset_positions(s.latitude, s.longitude, s.altitude, correction[0], correction[1])
    values = {name: getattr(s, name) for name in STATE_FIELDS}
    values.update(
        latitude=float(lat), longitude=float(wrap_longitude(lon)),
        u=s.u + correction[2], v=s.v + correction[3], w=s.w + correction[4],
        psi=float(wrap_heading(s.psi + correction[5])),
        theta=s.theta + correction[6],
        phi=s.phi + correction[7],
    )
    return NavSolution(StateVector(**values), nav.timestamp)


def apply_and_recenter(nav: NavSolution, ensemble: ParticleEnsemble,
                       config: FilterConfig) -> tuple[NavSolution, ParticleEnsemble]:
    """
    Решение сдвигается на alpha * средняя поправка, поправки всех частиц
    уменьшаются на ту же величину; гипотезы частиц не меняются. Горизонтальные
    поправки пересчитываются от нового решения до прежних позиций частиц.
    """
    applied = config.alpha * mean_correction(ensemble).as_array()
    if not np.any(applied):
        return nav, ensemble
    lat, lon = candidate_positions(nav, ensemble)
    shifted = _shifted_solution(nav, applied)
    s = shifted.state
    corrections = ensemble.corrections - applied
    corrections[:, 0], corrections[:, 1], _ = ned_offsets(s.latitude, s.longitude, s.altitude, lat, lon, s.altitude)
    return shifted, ParticleEnsemble(corrections, ensemble.weights)


def predict(ensemble: ParticleEnsemble, nav: NavSolution, config: FilterConfig,
            rng: np.random.Generator) -> ParticleEnsemble:
    """
    Кинематическая модель за delta_t: поправки скорости (оси тела) переводятся
    в NED по ориентации решения и интегрируются в сдвиг позиции; поправка
    курса поворачивает путевую скорость. Затем шум процесса.
    """
    s, dt = nav.state, config.delta_t
    corrections = ensemble.corrections.copy()
    velocity = body_to_ned(s.psi, s.theta, s.phi).apply(corrections[:, 2:5])
    corrections[:, 0] += velocity[:, 0] * dt
    corrections[:, 1] += velocity[:, 1] * dt

    v_ned = nav.velocity_ned()
    d_psi = np.deg2rad(corrections[:, 5])
    corrections[:, 0] += -v_ned[1] * d_psi * dt
    corrections[:, 1] += v_ned[0] * d_psi * dt

    sigmas = config.process_sigmas() * math.sqrt(dt)
    corrections += rng.normal(0.0, 1.0, corrections.shape) * sigmas
    return ParticleEnsemble(corrections, ensemble.weights.copy())


@dataclass(frozen=True)
class FusionDiagnostics:
    timestamp: float
    n_eff: float
    resampled: bool
    valid: bool
    mean: CorrectionVector
    applied: CorrectionVector
    estimated_gradient: float
    true_gradient: float = math.nan


def fusion_step(nav: NavSolution, ensemble: ParticleEnsemble, pair: PairSample, maps: MapSet,
                config: FilterConfig, gradiometer: GradiometerConfig, rng: np.random.Generator,
                true_gradient: float = math.nan):
    """
    Одна эпоха: пересчёт весов, выборка при N_eff < порога, коррекция, прогноз.
    При неудачном измерении веса, выборка и коррекция пропускаются, остаётся прогноз.
    """
    if pair.valid:
        try:
            ensemble = reweight(ensemble, pair, nav, maps, config, gradiometer)
        except WeightUnderflow as exc:
            logger.warning("t=%.0f с: %s, веса сброшены к равным", nav.timestamp, exc)
            ensemble = ParticleEnsemble(ensemble.corrections, np.full(len(ensemble), 1.0 / len(ensemble)))

    n_eff = effective_particle_count(ensemble)
    resampled = pair.valid and n_eff < config.resample_threshold_fraction * len(ensemble)
    if resampled:
        ensemble = resample(ensemble, rng)

    mean = mean_correction(ensemble)
    if mean.horizontal > MAX_POSITION_CORRECTION:
        raise Divergence(f"mean position correction {mean.horizontal:.0f} m exceeds "
                         f"{MAX_POSITION_CORRECTION:.0f} m")
    s = nav.state
    mean_lat, mean_lon, _ = offset_positions(s.latitude, s.longitude, s.altitude, mean.d_north, mean.d_east)
    estimated_gradient = maps.gradient_at(float(mean_lat), float(mean_lon))

    applied = CorrectionVector()
    if pair.valid:
        applied = CorrectionVector.from_array(config.alpha * mean.as_array())
        nav, ensemble = apply_and_recenter(nav, ensemble, config)
    ensemble = predict(ensemble, nav, config, rng)
    diagnostics = FusionDiagnostics(nav.timestamp, n_eff, resampled, pair.valid, mean, applied,
                                    estimated_gradient, float(true_gradient))
    return nav, ensemble, diagnostics
