# gravnav/gradiometer.py
"""
Модель атомного гравиградиентометра: пара сигналов двух интерферометров
с общей неизвестной фазой Рамана, дробовой и фазовый шум, отказы
измерений; геометрия эллипса-кандидата для фильтра.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from scipy import constants

logger = logging.getLogger(__name__)

COARSE_POINTS = 64
NOISE_MODELS = ("signal", "fringe")
GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class GradiometerConfig:
    f_meas: float = 1.0
    atom_mass: float = 2.20693925e-25
    T: float = 0.16
    v_rec: float = 7.0e-3
    delta_z: float = 0.5
    N_bar: float = 1e6
    eta: float = 0.5
    sigma_phi: float = 0.0
    s0: float = 0.0
    s1: float = 0.0
    failure_probability: float = 0.0
    beam_radius: float = 5e-3
    # интенсивность случайного блуждания облака, м/sqrt(с) на 1 м/с^2 вибраций
    vibration_coupling: float = 0.2
    # signal: независимые ошибки каналов с СКО sigma_S; fringe: шум внутри интерференционных полос
    noise_model: str = "signal"

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        for name in ("f_meas", "atom_mass", "T", "v_rec", "delta_z", "N_bar", "beam_radius"):
            if not getattr(self, name) > 0:
                errors[name] = f"{name} must be positive"
        if not 0 < self.eta <= 1:
            errors["eta"] = "eta must lie in (0, 1]"
        if self.sigma_phi < 0:
            errors["sigma_phi"] = "sigma_phi must be non-negative"
        if not 0 <= self.failure_probability <= 1:
            errors["failure_probability"] = "failure probability must lie in [0, 1]"
        if self.vibration_coupling < 0:
            errors["vibration_coupling"] = "vibration coupling must be non-negative"
        if self.noise_model not in NOISE_MODELS:
            errors["noise_model"] = f"noise model must be one of {', '.join(NOISE_MODELS)}"
        if errors:
            raise ValidationError(errors)

    @property
    def signal_offsets(self) -> tuple[float, float]:
        """Смещения s0, s1 после нормировки на eta * N_bar."""
        scale = self.eta * self.N_bar
        if math.isinf(scale):
            return 0.0, 0.0
        return self.s0 / scale, self.s1 / scale

    @property
    def signal_sigma(self) -> float:
        """Ожидаемая ошибка нормированного сигнала sqrt(1/N_bar + sigma_phi^2)."""
        return math.sqrt(1.0 / self.N_bar + self.sigma_phi ** 2)


@dataclass(frozen=True)
class PairSample:
    s0_norm: float
    s1_norm: float
    valid: bool
    timestamp: float = 0.0

    @property
    def point(self) -> tuple[float, float]:
        return self.s0_norm, self.s1_norm


@dataclass(frozen=True)
class CandidateEllipse:
    delta_phi: float
    offset: tuple = (0.0, 0.0)

    def __post_init__(self):
        folded = math.acos(max(-1.0, min(1.0, math.cos(self.delta_phi))))
        object.__setattr__(self, "delta_phi", folded)


# ---------------------- фазы ----------------------

def k_eff(config: GradiometerConfig) -> float:
    return config.atom_mass * config.v_rec / constants.hbar


def phase_scale(config: GradiometerConfig) -> float:
    """Фаза на единицу градиента, рад/с^-2."""
    return k_eff(config) * config.delta_z * config.T ** 2


def gradient_to_delta_phi(gradient, config: GradiometerConfig):
    return phase_scale(config) * gradient


def delta_phi_to_gradient(delta_phi, config: GradiometerConfig):
    return delta_phi / phase_scale(config)


# ---------------------- измерения ----------------------

def failure_model(config: GradiometerConfig, rng: np.random.Generator, vibration_level: float = 0.0) -> bool:
    """
    True, если измерение удалось: облако за 2T не ушло из луча в моменты
    импульсов T и 2T, и не сработал независимый отказ с вероятностью
    failure_probability.
    """
    intensity = config.vibration_coupling * vibration_level
    valid = True
    if intensity > 0:
        steps = rng.normal(0.0, intensity * math.sqrt(config.T), (2, 2))
        path = np.cumsum(steps, axis=0)
        valid = bool(np.all(np.hypot(path[:, 0], path[:, 1]) <= config.beam_radius))
    if config.failure_probability > 0 and rng.random() < config.failure_probability:
        valid = False
    return valid


def sample_pair(gradient: float, g_upper: float, config: GradiometerConfig, rng: np.random.Generator,
                timestamp: float = 0.0, vibration_level: float = 0.0) -> PairSample:
    """
    Нормированная пара сигналов с общей случайной фазой Рамана phi_n и смещениями s0, s1.

    noise_model="fringe":
        S0 = (1 + dN/N) sin(phi0 + phi_n), S1 = (1 + dN'/N) sin(phi0 - dphi + phi_n + noise),
        фазовый шум только в нижнем интерферометре.
    noise_model="signal":
        S0 = sin(phi0 + phi_n) + e0, S1 = sin(phi0 - dphi + phi_n) + e1,
        e0, e1 ~ N(0, sigma_S^2) независимо, sigma_S = sqrt(1/N + sigma_phi^2).
        Расстояние пары до эллипса тогда в среднем порядка sigma_S, как и
        ширина правдоподобия в фильтре.
    """
    phi0 = k_eff(config) * g_upper * config.T ** 2
    raman = rng.uniform(0.0, 2 * math.pi)
    base = math.fmod(phi0, 2 * math.pi) + raman
    delta_phi = gradient_to_delta_phi(gradient, config)
    offset0, offset1 = config.signal_offsets

    if config.noise_model == "fringe":
        if math.isinf(config.N_bar):
            amplitude0 = amplitude1 = 1.0
        else:
            shot = rng.normal(0.0, 1.0, 2) / math.sqrt(config.N_bar)
            amplitude0, amplitude1 = 1.0 + shot[0], 1.0 + shot[1]
        phase_noise = rng.normal(0.0, config.sigma_phi) if config.sigma_phi > 0 else 0.0
        s0 = offset0 + amplitude0 * math.sin(base)
        s1 = offset1 + amplitude1 * math.sin(base - delta_phi + phase_noise)
    else:
        sigma = config.signal_sigma
        error0, error1 = rng.normal(0.0, sigma, 2) if sigma > 0 else (0.0, 0.0)
        s0 = offset0 + math.sin(base) + error0
        s1 = offset1 + math.sin(base - delta_phi) + error1
    return PairSample(float(s0), float(s1), failure_model(config, rng, vibration_level), timestamp)


# ---------------------- геометрия эллипса ----------------------

def ellipse_point(ellipse: CandidateEllipse, psi):
    x0, y0 = ellipse.offset
    return x0 + np.sin(psi), y0 + np.sin(psi - ellipse.delta_phi)


def min_distance_many(points: np.ndarray, delta_phi) -> np.ndarray:
    """
    Расстояние от точек (M, 2) до эллипсов (sin psi, sin(psi - delta_phi)),
    delta_phi - скаляр или массив (M,). Грубый перебор по 64 значениям psi,
    затем золотое сечение вокруг трёх лучших локальных минимумов.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    x, y = points[:, :1], points[:, 1:2]
    shift = np.broadcast_to(np.asarray(delta_phi, dtype=float), (len(points),))[:, None]

    def squared(psi):
        return (x - np.sin(psi)) ** 2 + (y - np.sin(psi - shift)) ** 2

    grid = np.linspace(0.0, 2 * math.pi, COARSE_POINTS, endpoint=False)[None, :]
    coarse = squared(grid)
    local = (coarse <= np.roll(coarse, 1, axis=1)) & (coarse <= np.roll(coarse, -1, axis=1))
    candidates = np.argsort(np.where(local, coarse, np.inf), axis=1)[:, :3]
    step = 2 * math.pi / COARSE_POINTS
    low = grid[0, candidates] - step
    high = grid[0, candidates] + step
    a = high - GOLDEN * (high - low)
    b = low + GOLDEN * (high - low)
    fa, fb = squared(a), squared(b)
    for _ in range(60):
        left = fa < fb
        high = np.where(left, b, high)
        low = np.where(left, low, a)
        b_new = np.where(left, a, low + GOLDEN * (high - low))
        a_new = np.where(left, high - GOLDEN * (high - low), b)
        fa_new = np.where(left, squared(a_new), fb)
        fb_new = np.where(left, fa, squared(b_new))
        a, b, fa, fb = a_new, b_new, fa_new, fb_new
    refined = np.minimum(fa, fb).min(axis=1)
    best = np.minimum(refined, coarse.min(axis=1))
    return np.sqrt(np.maximum(best, 0.0))


def min_distance(pair: PairSample, ellipse: CandidateEllipse) -> float:
    x0, y0 = ellipse.offset
    point = np.array([[pair.s0_norm - x0, pair.s1_norm - y0]])
    return float(min_distance_many(point, ellipse.delta_phi)[0])
