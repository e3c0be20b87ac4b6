# gravnav/ellipsefit.py
"""
Классический способ: подгонка эллипса A x^2 + B xy + C y^2 + D x + E y + F = 0
к окну пар сигналов и разность фаз dphi = arccos(-B / 2 sqrt(AC)).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import DegenerateFit, NotAnEllipse
from .gradiometer import GradiometerConfig, PairSample, delta_phi_to_gradient

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e10
MIN_CONSTRAINT = 1e-10


@dataclass(frozen=True)
class ConicCoefficients:
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    @property
    def discriminant(self) -> float:
        return 4 * self.A * self.C - self.B ** 2

    def residuals(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        return (self.A * x * x + self.B * x * y + self.C * y * y
                + self.D * x + self.E * y + self.F)

    def scaled(self, factor: float) -> "ConicCoefficients":
        return ConicCoefficients(*(factor * c for c in self.as_tuple()))

    def as_tuple(self):
        return self.A, self.B, self.C, self.D, self.E, self.F


def fit_conic(samples: Sequence[PairSample]) -> ConicCoefficients:
    """
    Прямая подгонка с ограничением 4AC - B^2 = 1 (разбиение матрицы
    рассеяния на квадратичную и линейную части). Знак выбирается так, что A > 0.
    """
    points = np.array([s.point for s in samples if s.valid], dtype=float).reshape(-1, 2)
    if len(points) < 6:
        raise DegenerateFit(f"ellipse fit needs at least 6 valid samples, got {len(points)}")
    x, y = points[:, 0], points[:, 1]
    quadratic = np.column_stack([x * x, x * y, y * y])
    linear = np.column_stack([x, y, np.ones_like(x)])
    s1 = quadratic.T @ quadratic
    s2 = quadratic.T @ linear
    s3 = linear.T @ linear
    if np.linalg.cond(s3) > MAX_CONDITION:
        raise DegenerateFit("samples are collinear (linear scatter matrix is singular)")
    t = -np.linalg.solve(s3, s2.T)
    reduced = s1 + s2 @ t
    # умножение на обратную матрицу ограничения
    reduced = np.vstack([reduced[2] / 2, -reduced[1], reduced[0] / 2])
    eigenvalues, eigenvectors = np.linalg.eig(reduced)
    eigenvalues, eigenvectors = np.real(eigenvalues), np.real(eigenvectors)
    constraint = 4 * eigenvectors[0] * eigenvectors[2] - eigenvectors[1] ** 2
    admissible = np.flatnonzero(constraint > 0)
    if admissible.size == 0:
        raise DegenerateFit("no ellipse-admissible solution of the constrained system")
    best = admissible[np.argmin(np.abs(eigenvalues[admissible]))]
    quadratic_part = eigenvectors[:, best]
    coefficients = np.concatenate([quadratic_part, t @ quadratic_part])
    norm2 = float(coefficients @ coefficients)
    discriminant = 4 * coefficients[0] * coefficients[2] - coefficients[1] ** 2
    if discriminant / norm2 < MIN_CONSTRAINT:
        raise DegenerateFit("ellipse collapsed to a segment (ill-conditioned constraint)")
    coefficients /= math.sqrt(discriminant)
    if coefficients[0] < 0:
        coefficients = -coefficients
    return ConicCoefficients(*(float(c) for c in coefficients))


def phase_from_conic(conic: ConicCoefficients) -> float:
    """Разность фаз в [0, pi]."""
    if conic.A < 0:
        conic = conic.scaled(-1.0)
    if not conic.discriminant > 0 or not conic.A * conic.C > 0:
        raise NotAnEllipse(f"4AC - B^2 = {conic.discriminant:g} is not positive")
    cosine = -conic.B / (2 * math.sqrt(conic.A * conic.C))
    return math.acos(max(-1.0, min(1.0, cosine)))


@dataclass(frozen=True)
class WindowEstimate:
    start: float
    end: float
    timestamp: float
    gradient: float
    samples: int

    @property
    def ok(self) -> bool:
        return math.isfinite(self.gradient)


def sliding_gradient_estimate(stream: Sequence[PairSample], config: GradiometerConfig,
                              window: int = 20) -> list[WindowEstimate]:
    """
    Оценки градиента по неперекрывающимся окнам из `window` успешных
    измерений. Неудачная подгонка даёт NaN (пропуск в ряду).
    """
    valid = [s for s in stream if s.valid]
    estimates = []
    for first in range(0, len(valid) - window + 1, window):
        chunk = valid[first:first + window]
        times = [s.timestamp for s in chunk]
        try:
            gradient = delta_phi_to_gradient(phase_from_conic(fit_conic(chunk)), config)
        except (DegenerateFit, NotAnEllipse) as exc:
            logger.warning("Окно %.0f–%.0f с: подгонка эллипса не удалась (%s)", times[0], times[-1], exc)
            gradient = math.nan
        estimates.append(WindowEstimate(times[0], times[-1], float(np.mean(times)), gradient, len(chunk)))
    return estimates
