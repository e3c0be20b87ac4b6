# gravnav/trajectory.py
"""
Истинное движение: прямолинейный (по большому эллипсу) полёт с постоянной
скоростью и высотой, путевые точки через 1 с и полный 15-мерный вектор
состояния на частоте ИНС.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, fields

import numpy as np
from django.core.exceptions import ValidationError
from scipy import signal

from .exceptions import DegenerateRoute
from .geodesy import (WGS84, EllipsoidModel, GeodeticPosition, geodetic_to_ecef, great_ellipse_path, path_length,
                      radii_of_curvature, wrap_heading)

logger = logging.getLogger(__name__)

# шаг плотной таблицы «длина дуги -> доля пути», м
ARC_TABLE_STEP = 10.0


@dataclass(frozen=True)
class StateVector:
    latitude: float
    longitude: float
    altitude: float
    u: float
    v: float
    w: float
    a_x: float
    a_y: float
    a_z: float
    psi: float
    theta: float
    phi: float
    P: float
    Q: float
    R: float

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if not 0.0 <= self.psi < 360.0:
            errors["psi"] = f"heading {self.psi} outside [0, 360)"
        if not -90.0 <= self.theta <= 90.0:
            errors["theta"] = f"pitch {self.theta} outside [-90, 90]"
        if not -180.0 < self.phi <= 180.0:
            errors["phi"] = f"roll {self.phi} outside (-180, 180]"
        if not -90.0 <= self.latitude <= 90.0:
            errors["latitude"] = f"latitude {self.latitude} outside [-90, 90]"
        if errors:
            raise ValidationError(errors)

    @property
    def position(self) -> GeodeticPosition:
        return GeodeticPosition(self.latitude, self.longitude, self.altitude)

    @property
    def speed(self) -> float:
        return math.sqrt(self.u ** 2 + self.v ** 2 + self.w ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in STATE_FIELDS])


STATE_FIELDS = tuple(f.name for f in fields(StateVector))


@dataclass(eq=False)
class StateSeries:
    """Ряд векторов состояния: times (n,), states (n, 15) в порядке STATE_FIELDS."""
    times: np.ndarray
    states: np.ndarray
    vibration: np.ndarray | None = None

    def __len__(self):
        return len(self.times)

    def __getitem__(self, k) -> StateVector:
        return StateVector(*(float(x) for x in self.states[k]))

    def column(self, name: str) -> np.ndarray:
        return self.states[:, STATE_FIELDS.index(name)]

    @property
    def rate(self) -> float:
        return 1.0 / (self.times[1] - self.times[0])

    def decimate(self, step: int) -> "StateSeries":
        vibration = None if self.vibration is None else self.vibration[::step]
        return StateSeries(self.times[::step], self.states[::step], vibration)


@dataclass(frozen=True, eq=False)
class Route:
    start: GeodeticPosition
    end: GeodeticPosition
    speed: float
    altitude: float
    latitudes: np.ndarray
    longitudes: np.ndarray
    distance: float
    # таблица длина дуги -> доля большого эллипса
    arc_lengths: np.ndarray = field(repr=False, default=None)
    arc_fractions: np.ndarray = field(repr=False, default=None)

    @property
    def waypoints(self) -> list[GeodeticPosition]:
        return [GeodeticPosition(float(a), float(o), self.altitude)
                for a, o in zip(self.latitudes, self.longitudes)]

    @property
    def count(self) -> int:
        return len(self.latitudes)

    @property
    def duration(self) -> float:
        return (self.count - 1) * 1.0

    def positions_at(self, arc_length):
        """(lat, lon, alt) точек пути на заданной длине дуги от начала."""
        fractions = np.interp(arc_length, self.arc_lengths, self.arc_fractions)
        start = GeodeticPosition(self.start.latitude, self.start.longitude, self.altitude)
        end = GeodeticPosition(self.end.latitude, self.end.longitude, self.altitude)
        return great_ellipse_path(start, end, fractions)

    def __str__(self):
        return (f"{self.start} -> {self.end}: {self.distance / 1000:.1f} km, "
                f"{self.speed:g} m/s, {self.count} waypoints")


def build_route(start: GeodeticPosition, end: GeodeticPosition, speed: float, altitude: float,
                truncate: float | None = None, ellipsoid: EllipsoidModel = WGS84) -> Route:
    """
    Путевые точки через 1 с на большом эллипсе между start и end на высоте altitude.
    truncate (с) - обрезать маршрут по времени, длина и таблица дуги при этом не меняются.
    """
    if not speed > 0:
        raise ValidationError({"speed": "speed must be positive"})
    a = GeodeticPosition(start.latitude, start.longitude, altitude)
    b = GeodeticPosition(end.latitude, end.longitude, altitude)
    coarse = path_length(*great_ellipse_path(a, b, np.linspace(0.0, 1.0, 2001), ellipsoid), ellipsoid)
    samples = max(2001, int(coarse / ARC_TABLE_STEP) + 1)
    fractions = np.linspace(0.0, 1.0, samples)
    lat, lon, alt = great_ellipse_path(a, b, fractions, ellipsoid)
    xyz = geodetic_to_ecef(lat, lon, alt, ellipsoid)
    arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(xyz, axis=0), axis=1))])
    distance = float(arc[-1])
    if distance < 2 * speed:
        raise DegenerateRoute(f"route length {distance:.1f} m shorter than two waypoint steps")

    count = int(math.floor(distance / speed)) + 1
    if truncate is not None:
        count = min(count, int(truncate) + 1)
    waypoint_lat, waypoint_lon, _ = great_ellipse_path(
        a, b, np.interp(np.arange(count) * speed, arc, fractions), ellipsoid)
    route = Route(start, end, speed, altitude, waypoint_lat, waypoint_lon, distance,
                  arc_lengths=arc, arc_fractions=fractions)
    logger.info("Маршрут %s", route)
    return route


# ---------------------- вибрации ----------------------

@dataclass(frozen=True)
class VibrationConfig:
    sigma: float = 5e-3
    cutoff: float = 2.0
    enabled: bool = True

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if self.sigma < 0:
            errors["sigma"] = "vibration sigma must be non-negative"
        if not self.cutoff > 0:
            errors["cutoff"] = "vibration cutoff must be positive"
        if errors:
            raise ValidationError(errors)


def vibration_series(n: int, rate: float, config: VibrationConfig, rng: np.random.Generator) -> np.ndarray:
    """
    Стационарный гауссов шум (n, 3) с СКО sigma, пропущенный через
    однополюсный фильтр нижних частот с частотой среза cutoff.
    """
    if not config.enabled or config.sigma == 0:
        return np.zeros((n, 3))
    pole = math.exp(-2 * math.pi * config.cutoff / rate)
    gain = config.sigma * math.sqrt(1 - pole ** 2)
    initial = rng.normal(0.0, config.sigma, (3, 1))
    filtered, _ = signal.lfilter([gain], [1.0, -pole], rng.standard_normal((3, n)), axis=-1,
                                 zi=pole * initial)
    return filtered.T


# ---------------------- истинные состояния ----------------------

def truth_states(route: Route, rate: float = 100.0, vibration: VibrationConfig | None = None,
                 seed: int | None = None, ellipsoid: EllipsoidModel = WGS84) -> StateSeries:
    """
    Полёт вдоль маршрута со скоростью route.speed: курс по путевой скорости,
    тангаж и крен нулевые, u = speed, v = w = 0. Вибрации добавляются только
    в a_x..a_z.
    """
    if rate < 1:
        raise ValidationError({"rate": "truth rate must be at least 1 Hz"})
    n = int(round(route.duration * rate)) + 1
    times = np.arange(n) / rate
    lat, lon, alt = route.positions_at(route.speed * times)
    alt = np.full(n, float(route.altitude))

    meridian, prime_vertical = radii_of_curvature(lat, ellipsoid)
    lat_rate = np.deg2rad(np.gradient(lat, times))
    lon_rate = np.deg2rad(np.gradient(np.unwrap(lon, period=360.0), times))
    v_north = lat_rate * (meridian + alt)
    v_east = lon_rate * (prime_vertical + alt) * np.cos(np.deg2rad(lat))
    heading = np.arctan2(v_east, v_north)
    heading_rate = np.gradient(np.unwrap(heading), times)

    states = np.zeros((n, len(STATE_FIELDS)))
    states[:, 0], states[:, 1], states[:, 2] = lat, lon, alt
    states[:, 3] = route.speed
    # производная v_n = V (cos psi, sin psi, 0) в осях тела
    states[:, 7] = route.speed * heading_rate
    states[:, 9] = wrap_heading(np.rad2deg(heading))
    states[:, 14] = np.rad2deg(heading_rate)

    vibration = vibration_series(n, rate, vibration or VibrationConfig(), np.random.default_rng(seed))
    states[:, 6:9] += vibration
    logger.debug("Истинные состояния: %d отсчётов на %g Гц", n, rate)
    return StateSeries(times, states, vibration)


def initial_heading(start: GeodeticPosition, end: GeodeticPosition,
                    ellipsoid: EllipsoidModel = WGS84) -> float:
    """Начальный азимут большого эллипса, градусы [0, 360)."""
    lat, lon, _ = great_ellipse_path(start, end, np.array([0.0, 1e-6]), ellipsoid)
    meridian, prime_vertical = radii_of_curvature(lat[0], ellipsoid)
    north = math.radians(lat[1] - lat[0]) * meridian
    east = math.radians(lon[1] - lon[0]) * prime_vertical * math.cos(math.radians(lat[0]))
    return wrap_heading(math.degrees(math.atan2(east, north)))
