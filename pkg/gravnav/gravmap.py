# gravnav/gravmap.py
"""
Карты вертикального градиента силы тяжести dg_z/dz (с^-2).

Регулярные сетки lat/lon с приоритетами (мелкие патчи поверх грубой
глобальной подложки), билинейная интерполяция, аналитический генератор
поля от точечных масс и бинарный формат GGV1.
"""
from __future__ import annotations

import logging
import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from django.core.exceptions import ValidationError
from scipy import constants

from .exceptions import DegenerateGeometry, FormatError, OutOfCoverage
from .geodesy import WGS84, GeodeticPosition, EllipsoidModel, ned_offsets, offset_positions

logger = logging.getLogger(__name__)

# фоновый градиент свободного воздуха
BACKGROUND_GRADIENT = 3.07e-6
# санитарная граница значений сетки, ~30x фона
MAX_ABS_GRADIENT = 1e-4

GRID_MAGIC = b"GGV1"
GRID_HEADER = struct.Struct("<4sddddiiid")
# смещение полей n_rows, n_cols: после magic и четырёх double
GRID_SHAPE_OFFSET = struct.calcsize("<4sdddd")


# ---------------------- сетка ----------------------

@dataclass(frozen=True, eq=False)
class GravityGradientGrid:
    origin_lat: float
    origin_lon: float
    d_lat: float
    d_lon: float
    values: np.ndarray
    reference_altitude: float = 0.0
    priority: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        self.clean()

    def clean(self):
        errors = {}
        if self.values.ndim != 2 or self.n_rows < 2 or self.n_cols < 2:
            errors["values"] = f"grid needs at least 2x2 nodes, got shape {self.values.shape}"
        if not self.d_lat > 0:
            errors["d_lat"] = "d_lat must be positive"
        if not self.d_lon > 0:
            errors["d_lon"] = "d_lon must be positive"
        if "values" not in errors:
            if not np.all(np.isfinite(self.values)):
                errors["values"] = "grid values must be finite"
            elif np.max(np.abs(self.values)) >= MAX_ABS_GRADIENT:
                errors["values"] = f"|dg_z/dz| must stay below {MAX_ABS_GRADIENT} s^-2"
        if errors:
            raise ValidationError(errors)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0] if self.values.ndim == 2 else len(self.values)

    @property
    def n_cols(self) -> int:
        return self.values.shape[1] if self.values.ndim == 2 else 1

    @property
    def lat_max(self) -> float:
        return self.origin_lat + (self.n_rows - 1) * self.d_lat

    @property
    def lon_max(self) -> float:
        return self.origin_lon + (self.n_cols - 1) * self.d_lon

    def contains(self, lat, lon):
        lat, lon = np.asarray(lat, dtype=float), np.asarray(lon, dtype=float)
        return ((lat >= self.origin_lat) & (lat <= self.lat_max)
                & (lon >= self.origin_lon) & (lon <= self.lon_max))

    def node_coordinates(self):
        """Сетки (lat, lon) всех узлов, форма (n_rows, n_cols)."""
        lats = self.origin_lat + np.arange(self.n_rows) * self.d_lat
        lons = self.origin_lon + np.arange(self.n_cols) * self.d_lon
        return np.meshgrid(lats, lons, indexing="ij")

    def __str__(self):
        return (f"grid {self.n_rows}x{self.n_cols} @ ({self.origin_lat:.4f}, {self.origin_lon:.4f}), "
                f"step {self.d_lat:g}x{self.d_lon:g} deg, priority {self.priority}")


def bilinear(grid: GravityGradientGrid, lat, lon):
    """Билинейная интерполяция; точна в узлах, в центре ячейки - среднее четырёх углов."""
    row = (np.asarray(lat, dtype=float) - grid.origin_lat) / grid.d_lat
    col = (np.asarray(lon, dtype=float) - grid.origin_lon) / grid.d_lon
    i = np.clip(np.floor(row).astype(int), 0, grid.n_rows - 2)
    j = np.clip(np.floor(col).astype(int), 0, grid.n_cols - 2)
    t, u = row - i, col - j
    v = grid.values
    result = ((1 - t) * (1 - u) * v[i, j] + (1 - t) * u * v[i, j + 1]
              + t * (1 - u) * v[i + 1, j] + t * u * v[i + 1, j + 1])
    return result if np.ndim(result) else float(result)


# ---------------------- набор карт ----------------------

class MapSet:
    """
    Упорядоченный по приоритету набор сеток. Значение в точке берётся из
    сетки с наибольшим приоритетом, покрывающей точку; при равных
    приоритетах - из первой в исходном порядке.
    """

    def __init__(self, grids: Iterable[GravityGradientGrid]):
        grids = list(grids)
        if not grids:
            raise ValidationError({"grids": "map set needs at least one grid"})
        self.grids = tuple(sorted(grids, key=lambda g: -g.priority))

    def __len__(self):
        return len(self.grids)

    def __iter__(self):
        return iter(self.grids)

    def source_index(self, lat, lon) -> np.ndarray:
        """Индекс сетки (в self.grids), отвечающей за точку; -1 если точка не покрыта."""
        lat, lon = np.broadcast_arrays(np.atleast_1d(np.asarray(lat, dtype=float)),
                                       np.atleast_1d(np.asarray(lon, dtype=float)))
        source = np.full(lat.shape, -1, dtype=int)
        for index, grid in enumerate(self.grids):
            mask = (source < 0) & grid.contains(lat, lon)
            source[mask] = index
            if np.all(source >= 0):
                break
        return source

    def gradient_at(self, lat, lon):
        scalar = np.ndim(lat) == 0 and np.ndim(lon) == 0
        lat, lon = np.broadcast_arrays(np.atleast_1d(np.asarray(lat, dtype=float)),
                                       np.atleast_1d(np.asarray(lon, dtype=float)))
        source = self.source_index(lat, lon)
        if np.any(source < 0):
            k = int(np.argmax(source < 0))
            raise OutOfCoverage(f"no gravity-gradient grid covers ({lat.flat[k]:.6f}, {lon.flat[k]:.6f})")
        result = np.empty(lat.shape)
        for index in np.unique(source):
            mask = source == index
            result[mask] = bilinear(self.grids[index], lat[mask], lon[mask])
        return float(result[0]) if scalar else result

    def check_covers(self, lat, lon):
        """Инвариант сценария: хотя бы одна сетка покрывает весь маршрут целиком."""
        lat, lon = np.asarray(lat, dtype=float), np.asarray(lon, dtype=float)
        if not any(np.all(grid.contains(lat, lon)) for grid in self.grids):
            raise ValidationError({"maps": "no single grid covers the whole route (missing fallback)"})

    def save(self, directory) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for index, grid in enumerate(self.grids):
            path = directory / f"grid_{index:03d}.ggv"
            save_grid(grid, path)
            paths.append(path)
        return paths

    @classmethod
    def load(cls, paths: Sequence) -> "MapSet":
        return cls(load_grid(p) for p in paths)

    @classmethod
    def load_directory(cls, directory) -> "MapSet":
        paths = sorted(Path(directory).glob("*.ggv"))
        if not paths:
            raise FormatError(f"no .ggv grids in {directory}")
        return cls.load(paths)


def query_gradient(maps: MapSet, pos: GeodeticPosition) -> float:
    return maps.gradient_at(pos.latitude, pos.longitude)


# ---------------------- синтетическое поле ----------------------

@dataclass(frozen=True)
class PointMassSpec:
    lat: float
    lon: float
    depth: float
    mass: float

    def __post_init__(self):
        errors = {}
        if not self.depth > 0:
            errors["depth"] = "point mass depth must be positive"
        if self.mass == 0:
            errors["mass"] = "point mass must be non-zero"
        if errors:
            raise ValidationError(errors)

    @classmethod
    def with_peak_anomaly(cls, lat, lon, depth, peak, reference_altitude):
        """Масса, дающая пиковую аномалию peak (с^-2) прямо над собой на reference_altitude."""
        separation = depth + reference_altitude
        return cls(lat, lon, depth, peak * separation ** 3 / (2 * constants.G))


@dataclass(frozen=True)
class GridExtent:
    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float
    d_lat: float
    d_lon: float

    @property
    def n_rows(self) -> int:
        return int(round((self.lat_max - self.lat_min) / self.d_lat)) + 1

    @property
    def n_cols(self) -> int:
        return int(round((self.lon_max - self.lon_min) / self.d_lon)) + 1


def point_mass_gradient(masses: Iterable[PointMassSpec], lat, lon, alt,
                        ellipsoid: EllipsoidModel = WGS84) -> np.ndarray:
    """
    Аномалия dg_z/dz от набора точечных масс (ось z вниз, g положительно вниз):
    G m (2 D^2 - r^2) / (r^2 + D^2)^(5/2), D - превышение точки над массой.
    """
    lat, lon = np.asarray(lat, dtype=float), np.asarray(lon, dtype=float)
    total = np.zeros(np.broadcast(lat, lon).shape)
    for mass in masses:
        north, east, _ = ned_offsets(mass.lat, mass.lon, 0.0, lat, lon, alt, ellipsoid)
        r2 = north ** 2 + east ** 2
        separation = alt + mass.depth
        dist2 = r2 + separation ** 2
        if np.min(dist2) < 1.0:
            raise DegenerateGeometry(f"grid node within 1 m of point mass at ({mass.lat}, {mass.lon})")
        total += constants.G * mass.mass * (2 * separation ** 2 - r2) / dist2 ** 2.5
    return total


def synthesize_grid(masses: Iterable[PointMassSpec], extent: GridExtent, reference_altitude: float,
                    background: float = BACKGROUND_GRADIENT, priority: int = 0) -> GravityGradientGrid:
    lats = extent.lat_min + np.arange(extent.n_rows) * extent.d_lat
    lons = extent.lon_min + np.arange(extent.n_cols) * extent.d_lon
    lat_mesh, lon_mesh = np.meshgrid(lats, lons, indexing="ij")
    values = background + point_mass_gradient(masses, lat_mesh, lon_mesh, reference_altitude)
    return GravityGradientGrid(extent.lat_min, extent.lon_min, extent.d_lat, extent.d_lon,
                               values, reference_altitude=reference_altitude, priority=priority)


# ---------------------- файлы ----------------------

def save_grid(grid: GravityGradientGrid, path):
    header = GRID_HEADER.pack(GRID_MAGIC, grid.origin_lat, grid.origin_lon, grid.d_lat, grid.d_lon,
                              grid.n_rows, grid.n_cols, grid.priority, grid.reference_altitude)
    Path(path).write_bytes(header + np.ascontiguousarray(grid.values, dtype="<f8").tobytes())


def load_grid(path) -> GravityGradientGrid:
    data = Path(path).read_bytes()
    if data[:4] != GRID_MAGIC:
        raise FormatError(f"{path}: not a GGV1 grid (bad magic)", offset=0)
    if len(data) < GRID_HEADER.size:
        raise FormatError(f"{path}: truncated header", offset=len(data))
    (_, origin_lat, origin_lon, d_lat, d_lon,
     n_rows, n_cols, priority, reference_altitude) = GRID_HEADER.unpack_from(data)
    if n_rows < 2 or n_cols < 2:
        raise FormatError(f"{path}: grid needs at least 2x2 nodes, header says {n_rows}x{n_cols}",
                          offset=GRID_SHAPE_OFFSET)
    expected = GRID_HEADER.size + 8 * n_rows * n_cols
    if len(data) < expected:
        raise FormatError(f"{path}: truncated values", offset=len(data))
    if len(data) > expected:
        raise FormatError(f"{path}: trailing bytes after values", offset=expected)
    values = np.frombuffer(data, dtype="<f8", count=n_rows * n_cols,
                           offset=GRID_HEADER.size).reshape(n_rows, n_cols).astype(float)
    return GravityGradientGrid(origin_lat, origin_lon, d_lat, d_lon, values,
                               reference_altitude=reference_altitude, priority=priority)


def load_masses(path) -> list[PointMassSpec]:
    """Список масс: строки `lat lon depth mass`, '#' - комментарий."""
    masses = []
    for number, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise FormatError(f"{path}:{number}: expected 'lat lon depth mass', got {line!r}", offset=number)
        try:
            lat, lon, depth, mass = (float(p) for p in parts)
        except ValueError as exc:
            raise FormatError(f"{path}:{number}: {exc}", offset=number) from exc
        masses.append(PointMassSpec(lat, lon, depth, mass))
    return masses


# ---------------------- набор карт по умолчанию ----------------------

@dataclass(frozen=True)
class SyntheticMapSpec:
    """
    Параметры синтетического набора: грубая подложка (аналог глобальной
    модели ~1 морская миля) и мелкие патчи вдоль коридора маршрута (~90 м)
    с разрывом покрытия над «морским» участком.
    """
    seed: int = 2024
    background: float = BACKGROUND_GRADIENT
    coarse_resolution: float = 1 / 60
    coarse_margin: float = 0.5
    fine_resolution: float = 0.0008
    tile_height: float = 0.1
    corridor_half_width: float = 8000.0
    mass_spacing: float = 5000.0
    depth_range: tuple = (500.0, 2000.0)
    amplitude_range: tuple = (2e-8, 3e-8)
    deep_mass_spacing: float = 40000.0
    deep_depth_range: tuple = (15000.0, 25000.0)
    deep_amplitude_range: tuple = (5e-9, 1e-8)
    gap_lat_range: tuple | None = (49.5, 50.7)

    def in_gap(self, lat):
        if not self.gap_lat_range:
            return np.zeros(np.shape(lat), dtype=bool)
        low, high = sorted(self.gap_lat_range)
        return (np.asarray(lat) >= low) & (np.asarray(lat) <= high)


def _influence_radius(mass: PointMassSpec, reference_altitude: float) -> float:
    return max(20000.0, 4.0 * (mass.depth + reference_altitude))


def _masses_near(masses, extent: GridExtent, reference_altitude: float):
    """Массы, заметно влияющие на прямоугольник extent."""
    mid_lat = 0.5 * (extent.lat_min + extent.lat_max)
    metres_per_lat = 111_320.0
    metres_per_lon = 111_320.0 * math.cos(math.radians(mid_lat))
    selected = []
    for mass in masses:
        radius = _influence_radius(mass, reference_altitude)
        if (extent.lat_min - radius / metres_per_lat <= mass.lat <= extent.lat_max + radius / metres_per_lat
                and extent.lon_min - radius / metres_per_lon <= mass.lon <= extent.lon_max + radius / metres_per_lon):
            selected.append(mass)
    return selected


def default_map_set(lat, lon, reference_altitude: float, spec: SyntheticMapSpec | None = None) -> MapSet:
    """
    Синтетический набор карт вдоль маршрута (lat, lon - точки пути).
    Детерминирован по spec.seed.
    """
    spec = spec or SyntheticMapSpec()
    lat, lon = np.asarray(lat, dtype=float), np.asarray(lon, dtype=float)
    rng = np.random.default_rng(spec.seed)

    # мелкие массы в коридоре (кроме «моря»)
    cumulative = np.concatenate([[0.0], np.cumsum(np.hypot(*ned_offsets(
        lat[:-1], lon[:-1], 0.0, lat[1:], lon[1:], 0.0)[:2]))])
    count = max(1, int(cumulative[-1] * 2 * spec.corridor_half_width / spec.mass_spacing ** 2))
    along = rng.uniform(0.0, cumulative[-1], count)
    base_lat = np.interp(along, cumulative, lat)
    base_lon = np.interp(along, cumulative, lon)
    north = rng.uniform(-spec.corridor_half_width, spec.corridor_half_width, count)
    east = rng.uniform(-spec.corridor_half_width, spec.corridor_half_width, count)
    depths = rng.uniform(*spec.depth_range, count)
    peaks = rng.uniform(*spec.amplitude_range, count) * rng.choice([-1.0, 1.0], count)
    mass_lat, mass_lon, _ = offset_positions(base_lat, base_lon, 0.0, north, east)
    keep = ~spec.in_gap(base_lat)
    shallow = [PointMassSpec.with_peak_anomaly(a, o, d, p, reference_altitude)
               for a, o, d, p in zip(mass_lat[keep], mass_lon[keep], depths[keep], peaks[keep])]

    # глубокие региональные массы на всю подложку
    coarse = GridExtent(
        lat_min=float(np.floor((lat.min() - spec.coarse_margin) / spec.coarse_resolution) * spec.coarse_resolution),
        lat_max=float(np.ceil((lat.max() + spec.coarse_margin) / spec.coarse_resolution) * spec.coarse_resolution),
        lon_min=float(np.floor((lon.min() - spec.coarse_margin) / spec.coarse_resolution) * spec.coarse_resolution),
        lon_max=float(np.ceil((lon.max() + spec.coarse_margin) / spec.coarse_resolution) * spec.coarse_resolution),
        d_lat=spec.coarse_resolution, d_lon=spec.coarse_resolution,
    )
    mid_lat = 0.5 * (coarse.lat_min + coarse.lat_max)
    step_lat = spec.deep_mass_spacing / 111_320.0
    step_lon = spec.deep_mass_spacing / (111_320.0 * math.cos(math.radians(mid_lat)))
    deep = []
    for node_lat in np.arange(coarse.lat_min, coarse.lat_max, step_lat):
        for node_lon in np.arange(coarse.lon_min, coarse.lon_max, step_lon):
            deep.append(PointMassSpec.with_peak_anomaly(
                node_lat + rng.uniform(0, step_lat), node_lon + rng.uniform(0, step_lon),
                rng.uniform(*spec.deep_depth_range),
                rng.uniform(*spec.deep_amplitude_range) * rng.choice([-1.0, 1.0]),
                reference_altitude))

    masses = shallow + deep
    logger.info("Синтез подложки %dx%d, масс: %d мелких, %d глубоких",
                coarse.n_rows, coarse.n_cols, len(shallow), len(deep))
    grids = [synthesize_grid(masses, coarse, reference_altitude, spec.background, priority=0)]

    # мелкие патчи полосами по широте
    half_width_lat = spec.corridor_half_width / 111_320.0
    res = spec.fine_resolution
    bands = np.arange(lat.min(), lat.max(), spec.tile_height)
    for band_low in bands:
        band_high = band_low + spec.tile_height
        low = band_low - half_width_lat if band_low == bands[0] else band_low
        high = band_high + half_width_lat if band_high >= lat.max() else band_high
        if spec.gap_lat_range:
            gap_low, gap_high = sorted(spec.gap_lat_range)
            if low >= gap_low and high <= gap_high:
                continue
            if low < gap_low < high:
                high = gap_low
            if low < gap_high < high:
                low = gap_high
        in_band = (lat >= low - half_width_lat) & (lat <= high + half_width_lat)
        if not np.any(in_band):
            continue
        half_width_lon = spec.corridor_half_width / (111_320.0 * math.cos(math.radians(0.5 * (low + high))))
        tile = GridExtent(
            lat_min=float(np.floor(low / res) * res),
            lat_max=float(np.ceil(high / res) * res),
            lon_min=float(np.floor((lon[in_band].min() - half_width_lon) / res) * res),
            lon_max=float(np.ceil((lon[in_band].max() + half_width_lon) / res) * res),
            d_lat=res, d_lon=res,
        )
        if tile.n_rows < 2 or tile.n_cols < 2:
            continue
        grids.append(synthesize_grid(_masses_near(masses, tile, reference_altitude), tile,
                                     reference_altitude, spec.background, priority=1))
        logger.debug("Патч %s", grids[-1])

    logger.info("Набор карт готов: %d сеток", len(grids))
    return MapSet(grids)
