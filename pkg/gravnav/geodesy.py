# gravnav/geodesy.py
"""
Эллипсоид WGS84, нормальная сила тяжести и локальная система North-East-Down.

Углы на границе API - в градусах (как в векторе состояния), внутри - радианы;
перевод углов делается только здесь. Функции принимают как скаляры, так и
массивы numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError
from scipy.spatial.transform import Rotation


# ---------------------- модель Земли ----------------------

@dataclass(frozen=True)
class EllipsoidModel:
    semi_major_axis: float = 6378137.0
    flattening: float = 1 / 298.257223563
    earth_rotation_rate: float = 7.292115e-5
    # константы формулы Сомильяны
    equatorial_gravity: float = 9.7803253359
    polar_gravity: float = 9.8321849379
    # линейная поправка за высоту (free-air), с^-2
    free_air_gradient: float = 3.086e-6

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if not 0 < self.flattening < 0.01:
            errors["flattening"] = "flattening must lie in (0, 0.01)"
        for name in ("semi_major_axis", "earth_rotation_rate", "equatorial_gravity",
                     "polar_gravity", "free_air_gradient"):
            if not getattr(self, name) > 0:
                errors[name] = f"{name} must be positive"
        if errors:
            raise ValidationError(errors)

    @property
    def semi_minor_axis(self) -> float:
        return self.semi_major_axis * (1 - self.flattening)

    @property
    def eccentricity_squared(self) -> float:
        return self.flattening * (2 - self.flattening)

    @property
    def somigliana_k(self) -> float:
        return (self.semi_minor_axis * self.polar_gravity
                / (self.semi_major_axis * self.equatorial_gravity)) - 1


WGS84 = EllipsoidModel()


@dataclass(frozen=True)
class GeodeticPosition:
    latitude: float
    longitude: float
    altitude: float = 0.0

    def __post_init__(self):
        errors = {}
        if not -90.0 <= self.latitude <= 90.0:
            errors["latitude"] = f"latitude {self.latitude} outside [-90, 90]"
        if not -180.0 < self.longitude <= 180.0:
            errors["longitude"] = f"longitude {self.longitude} outside (-180, 180]"
        if not math.isfinite(self.altitude):
            errors["altitude"] = "altitude must be finite"
        if errors:
            raise ValidationError(errors)

    def __str__(self):
        return f"({self.latitude:.6f}, {self.longitude:.6f}, {self.altitude:.1f} m)"


@dataclass(frozen=True)
class NedVector:
    north: float
    east: float
    down: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.north, self.east, self.down])

    @property
    def horizontal(self) -> float:
        return math.hypot(self.north, self.east)

    def __abs__(self):
        return float(np.linalg.norm(self.as_array()))


def wrap_longitude(lon):
    """Переводит долготу в диапазон (-180, 180]; значения внутри диапазона не меняются."""
    lon = np.asarray(lon, dtype=float)
    outside = (lon > 180.0) | (lon <= -180.0)
    wrapped = np.where(outside, np.mod(lon + 180.0, 360.0) - 180.0, lon)
    wrapped = np.where(wrapped == -180.0, 180.0, wrapped)
    return wrapped if wrapped.ndim else float(wrapped)


def wrap_heading(psi):
    """Курс в [0, 360)."""
    wrapped = np.mod(np.asarray(psi, dtype=float), 360.0)
    wrapped = np.where(wrapped >= 360.0, 0.0, wrapped)
    return wrapped if wrapped.ndim else float(wrapped)


# ---------------------- гравитация и радиусы ----------------------

def _somigliana(sin2, alt, ellipsoid: EllipsoidModel, sqrt):
    g0 = (ellipsoid.equatorial_gravity * (1 + ellipsoid.somigliana_k * sin2)
          / sqrt(1 - ellipsoid.eccentricity_squared * sin2))
    return g0 - ellipsoid.free_air_gradient * alt


def _radii(sin2, ellipsoid: EllipsoidModel, sqrt):
    e2 = ellipsoid.eccentricity_squared
    x = 1 - e2 * sin2
    return ellipsoid.semi_major_axis * (1 - e2) / x ** 1.5, ellipsoid.semi_major_axis / sqrt(x)


def normal_gravity(lat, alt, ellipsoid: EllipsoidModel = WGS84):
    """
    Нормальная сила тяжести (вниз, м/с^2): формула Сомильяны на эллипсоиде
    и линейная поправка за высоту.
    """
    return _somigliana(np.sin(np.deg2rad(lat)) ** 2, np.asarray(alt, dtype=float), ellipsoid, np.sqrt)


def radii_of_curvature(lat, ellipsoid: EllipsoidModel = WGS84):
    """Возвращает (меридиональный радиус R_N, радиус первого вертикала R_E)."""
    return _radii(np.sin(np.deg2rad(lat)) ** 2, ellipsoid, np.sqrt)


# скалярные варианты для шага счисления на 100 Гц: широта в радианах, только float

def radii_at(lat_rad: float, ellipsoid: EllipsoidModel = WGS84) -> tuple[float, float]:
    return _radii(math.sin(lat_rad) ** 2, ellipsoid, math.sqrt)


def gravity_at(lat_rad: float, alt: float, ellipsoid: EllipsoidModel = WGS84) -> float:
    return _somigliana(math.sin(lat_rad) ** 2, alt, ellipsoid, math.sqrt)


def earth_rate_ned(lat, ellipsoid: EllipsoidModel = WGS84) -> np.ndarray:
    lat_rad = np.deg2rad(lat)
    omega = ellipsoid.earth_rotation_rate
    return np.stack([omega * np.cos(lat_rad),
                     np.zeros_like(lat_rad, dtype=float),
                     -omega * np.sin(lat_rad)], axis=-1)


def transport_rate_ned(v_ned, lat, alt, ellipsoid: EllipsoidModel = WGS84) -> np.ndarray:
    """Угловая скорость поворота NED при движении над искривлённой Землёй."""
    v_ned = np.asarray(v_ned, dtype=float)
    meridian, prime_vertical = radii_of_curvature(lat, ellipsoid)
    v_north, v_east = v_ned[..., 0], v_ned[..., 1]
    r_east = prime_vertical + alt
    return np.stack([v_east / r_east,
                     -v_north / (meridian + alt),
                     -v_east * np.tan(np.deg2rad(lat)) / r_east], axis=-1)


# ---------------------- локальная система NED ----------------------

def ned_offsets(origin_lat, origin_lon, origin_alt, lat, lon, alt,
                ellipsoid: EllipsoidModel = WGS84):
    """
    Векторизованный вариант geodetic_to_ned: криволинейное приближение,
    радиусы кривизны берутся в начале отсчёта.
    """
    meridian, prime_vertical = radii_of_curvature(origin_lat, ellipsoid)
    north = np.deg2rad(np.asarray(lat) - origin_lat) * (meridian + origin_alt)
    east = (np.deg2rad(wrap_longitude(np.asarray(lon) - origin_lon))
            * (prime_vertical + origin_alt) * np.cos(np.deg2rad(origin_lat)))
    down = -(np.asarray(alt) - origin_alt)
    return north, east, down


def offset_positions(origin_lat, origin_lon, origin_alt, north, east, down=0.0,
                     ellipsoid: EllipsoidModel = WGS84):
    """Обратное к ned_offsets: (lat, lon, alt) точек, сдвинутых от начала на NED."""
    meridian, prime_vertical = radii_of_curvature(origin_lat, ellipsoid)
    lat = origin_lat + np.rad2deg(np.asarray(north) / (meridian + origin_alt))
    lon = wrap_longitude(origin_lon + np.rad2deg(
        np.asarray(east) / ((prime_vertical + origin_alt) * np.cos(np.deg2rad(origin_lat)))))
    alt = origin_alt - np.asarray(down)
    return lat, lon, alt


def geodetic_to_ned(origin: GeodeticPosition, point: GeodeticPosition,
                    ellipsoid: EllipsoidModel = WGS84) -> NedVector:
    north, east, down = ned_offsets(origin.latitude, origin.longitude, origin.altitude,
                                    point.latitude, point.longitude, point.altitude, ellipsoid)
    return NedVector(float(north), float(east), float(down))


def ned_to_geodetic(origin: GeodeticPosition, delta: NedVector,
                    ellipsoid: EllipsoidModel = WGS84) -> GeodeticPosition:
    lat, lon, alt = offset_positions(origin.latitude, origin.longitude, origin.altitude,
                                     delta.north, delta.east, delta.down, ellipsoid)
    return GeodeticPosition(float(lat), float(lon), float(alt))


# ---------------------- ECEF и большой эллипс ----------------------

def geodetic_to_ecef(lat, lon, alt, ellipsoid: EllipsoidModel = WGS84) -> np.ndarray:
    lat_rad, lon_rad = np.deg2rad(lat), np.deg2rad(lon)
    _, prime_vertical = radii_of_curvature(lat, ellipsoid)
    cos_lat = np.cos(lat_rad)
    x = (prime_vertical + alt) * cos_lat * np.cos(lon_rad)
    y = (prime_vertical + alt) * cos_lat * np.sin(lon_rad)
    z = (prime_vertical * (1 - ellipsoid.eccentricity_squared) + alt) * np.sin(lat_rad)
    return np.stack([x, y, z], axis=-1)


def great_ellipse_path(a: GeodeticPosition, b: GeodeticPosition, fractions,
                       ellipsoid: EllipsoidModel = WGS84):
    """
    Точки на «прямой» между a и b: сечение эллипсоида плоскостью через центр
    Земли и обе точки (большой эллипс). fractions - доли угла в [0, 1].
    Высота интерполируется линейно. Возвращает массивы (lat, lon, alt).
    """
    fractions = np.asarray(fractions, dtype=float)
    ua = geodetic_to_ecef(a.latitude, a.longitude, 0.0, ellipsoid)
    ub = geodetic_to_ecef(b.latitude, b.longitude, 0.0, ellipsoid)
    ua, ub = ua / np.linalg.norm(ua), ub / np.linalg.norm(ub)
    angle = math.acos(min(1.0, max(-1.0, float(np.dot(ua, ub)))))

    if angle < 1e-15:
        directions = np.broadcast_to(ua, fractions.shape + (3,))
    else:
        wa = np.sin((1 - fractions) * angle) / math.sin(angle)
        wb = np.sin(fractions * angle) / math.sin(angle)
        directions = wa[..., None] * ua + wb[..., None] * ub

    semi_major, semi_minor = ellipsoid.semi_major_axis, ellipsoid.semi_minor_axis
    scale = 1.0 / np.sqrt((directions[..., 0] ** 2 + directions[..., 1] ** 2) / semi_major ** 2
                          + directions[..., 2] ** 2 / semi_minor ** 2)
    surface = directions * scale[..., None]
    p = np.hypot(surface[..., 0], surface[..., 1])
    lat = np.rad2deg(np.arctan2(surface[..., 2], (1 - ellipsoid.eccentricity_squared) * p))
    lon = wrap_longitude(np.rad2deg(np.arctan2(surface[..., 1], surface[..., 0])))
    alt = a.altitude + fractions * (b.altitude - a.altitude)
    return lat, lon, alt


def path_length(lat, lon, alt, ellipsoid: EllipsoidModel = WGS84) -> float:
    """Длина ломаной через точки (сумма хорд в ECEF)."""
    xyz = geodetic_to_ecef(lat, lon, alt, ellipsoid)
    return float(np.sum(np.linalg.norm(np.diff(xyz, axis=0), axis=1)))


def route_distance(a: GeodeticPosition, b: GeodeticPosition,
                   ellipsoid: EllipsoidModel = WGS84, samples: int = 20001) -> float:
    """Длина пути по большому эллипсу, численно - той же кривой, что летит trajectory."""
    lat, lon, alt = great_ellipse_path(a, b, np.linspace(0.0, 1.0, samples), ellipsoid)
    return path_length(lat, lon, alt, ellipsoid)


# ---------------------- ориентация ----------------------

def body_to_ned(psi, theta, phi) -> Rotation:
    """Поворот тело -> NED по углам Эйлера (курс, тангаж, крен; градусы, порядок Z-Y-X)."""
    angles = np.stack(np.broadcast_arrays(psi, theta, phi), axis=-1)
    return Rotation.from_euler("ZYX", angles, degrees=True)


def euler_from_rotation(rotation: Rotation):
    """(курс в [0, 360), тангаж, крен) в градусах."""
    angles = rotation.as_euler("ZYX", degrees=True)
    return wrap_heading(angles[..., 0]), angles[..., 1], angles[..., 2]
