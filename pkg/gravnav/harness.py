# gravnav/harness.py
"""
Сценарии и серии Монте-Карло: конфигурация из YAML, детерминированные
зерна по (base seed, run, stream), прогон одного полёта с чередованием
счисления на 100 Гц и фильтра на 1 Гц, агрегирование и выгрузка.
"""
from __future__ import annotations

import dataclasses
import hashlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np
import yaml
from django.core.exceptions import ValidationError
from scipy import signal

from . import resources
from .ellipsefit import sliding_gradient_estimate
from .exceptions import Divergence, OutOfCoverage, RunFailed
from .fusion import FilterConfig, fusion_step, init_particles
from .geodesy import GeodeticPosition, ned_offsets, normal_gravity
from .gradiometer import GradiometerConfig, sample_pair
from .gravmap import MapSet, SyntheticMapSpec, default_map_set
from .ins import (AltimeterConfig, ImuSeries, Mechanizer, NavigationSeries, NavSolution, SensorErrorBudget,
                  altimeter_aid, altimeter_reading, corrupt_imu, synthesize_imu)
from .trajectory import Route, StateSeries, VibrationConfig, build_route, truth_states

logger = logging.getLogger(__name__)

SWEEP_ALIASES = {
    "phase_noise": "gradiometer.sigma_phi",
    "failure_prob": "gradiometer.failure_probability",
}
SWEEPABLE_SECTIONS = ("gradiometer", "filter", "budget", "altimeter")
RUN_STREAMS = ("imu", "altimeter", "gradiometer", "filter")


# ---------------------- конфигурация ----------------------

@dataclass(frozen=True)
class RouteConfig:
    start_lat: float = 53.407579
    start_lon: float = -2.967853
    end_lat: float = 43.604652
    end_lon: float = 1.444209
    speed: float = 100.0
    altitude: float = 3000.0
    truncate: float | None = None

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        for name, position in (("start", (self.start_lat, self.start_lon)), ("end", (self.end_lat, self.end_lon))):
            try:
                GeodeticPosition(*position)
            except ValidationError as exc:
                errors[name] = "; ".join(exc.messages)
        if (self.start_lat, self.start_lon) == (self.end_lat, self.end_lon):
            errors["end"] = "route start and end coincide"
        if not self.speed > 0:
            errors["speed"] = "speed must be positive"
        if self.truncate is not None and not self.truncate > 0:
            errors["truncate"] = "truncate must be positive"
        if errors:
            raise ValidationError(errors)

    @property
    def start(self) -> GeodeticPosition:
        return GeodeticPosition(self.start_lat, self.start_lon, self.altitude)

    @property
    def end(self) -> GeodeticPosition:
        return GeodeticPosition(self.end_lat, self.end_lon, self.altitude)


@dataclass(frozen=True)
class MapConfig:
    grids: tuple = ()
    synthetic: SyntheticMapSpec = field(default_factory=SyntheticMapSpec)
    reference_altitude: float | None = None
    cache_dir: str | None = None

    def __post_init__(self):
        self.clean()

    def clean(self):
        missing = [str(p) for p in self.grids if not Path(p).is_file()]
        if missing:
            raise ValidationError({"grids": f"map files not found: {', '.join(missing)}"})


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        self.clean()

    def clean(self):
        errors = {}
        section, _, name = self.path.partition(".")
        if section not in SWEEPABLE_SECTIONS or not name:
            errors["parameter"] = (f"cannot sweep {self.parameter!r}: use one of {sorted(SWEEP_ALIASES)} "
                                   f"or <section>.<field> with section in {SWEEPABLE_SECTIONS}")
        if not self.values:
            errors["values"] = "sweep needs at least one value"
        if errors:
            raise ValidationError(errors)

    @property
    def path(self) -> str:
        return SWEEP_ALIASES.get(self.parameter, self.parameter)

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        """`phase_noise=0,5e-3,10e-3` из командной строки."""
        parameter, sep, values = text.partition("=")
        if not sep:
            raise ValidationError({"sweep": f"expected name=v1,v2,..., got {text!r}"})
        try:
            parsed = tuple(float(v) for v in values.split(",") if v.strip())
        except ValueError as exc:
            raise ValidationError({"sweep": str(exc)}) from exc
        return cls(parameter.strip(), parsed)


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "liverpool_toulouse"
    route: RouteConfig = field(default_factory=RouteConfig)
    budget: SensorErrorBudget = field(default_factory=SensorErrorBudget)
    altimeter: AltimeterConfig = field(default_factory=AltimeterConfig)
    vibration: VibrationConfig = field(default_factory=VibrationConfig)
    gradiometer: GradiometerConfig = field(default_factory=GradiometerConfig)
    filter: FilterConfig = field(default_factory=FilterConfig)
    maps: MapConfig = field(default_factory=MapConfig)
    runs: int = 10
    seed: int = 20240101
    ins_rate: float = 100.0
    compare_unaided: bool = True
    convergence_time: float = 600.0
    ellipse_window: int = 20
    sweeps: tuple = ()

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if self.runs < 1:
            errors["runs"] = "run count must be at least 1"
        if not self.ins_rate >= 1:
            errors["ins_rate"] = "INS rate must be at least 1 Hz"
        steps = self.ins_rate / self.gradiometer.f_meas
        if abs(steps - round(steps)) > 1e-9:
            errors["gradiometer"] = "INS rate must be an integer multiple of the measurement rate"
        if self.ellipse_window < 6:
            errors["ellipse_window"] = "ellipse window needs at least 6 samples"
        if self.convergence_time < 0:
            errors["convergence_time"] = "convergence time must be non-negative"
        if errors:
            raise ValidationError(errors)

    @property
    def steps_per_epoch(self) -> int:
        return int(round(self.ins_rate / self.gradiometer.f_meas))

    @property
    def reference_altitude(self) -> float:
        if self.maps.reference_altitude is not None:
            return self.maps.reference_altitude
        return self.route.altitude

    # -------- YAML --------

    @classmethod
    def from_dict(cls, data: dict | None, base_dir: Path | None = None) -> "ScenarioConfig":
        data = dict(data or {})
        data.pop("derived_seeds", None)
        sections = {
            "route": RouteConfig,
            "altimeter": AltimeterConfig,
            "vibration": VibrationConfig,
            "gradiometer": GradiometerConfig,
            "filter": FilterConfig,
        }
        values = {}
        for key, value in data.items():
            if key in sections:
                values[key] = _build(sections[key], value, key)
            elif key == "budget":
                values[key] = SensorErrorBudget.from_dict(value or {})
            elif key == "maps":
                values[key] = _build_maps(value or {}, base_dir)
            elif key == "sweeps":
                values[key] = tuple(_build(SweepSpec, item, "sweeps") for item in value or ())
            else:
                values[key] = value
        unknown = set(values) - {f.name for f in fields(cls)}
        if unknown:
            raise ValidationError({key: "unknown scenario key" for key in sorted(unknown)})
        return cls(**values)

    @classmethod
    def from_yaml(cls, path) -> "ScenarioConfig":
        path = Path(path)
        with path.open(encoding="utf-8") as handle:
            data = yaml.safe_load(handle)
        if data is not None and not isinstance(data, dict):
            raise ValidationError(f"{path}: scenario file must contain a mapping")
        return cls.from_dict(data, base_dir=path.parent)

    def to_dict(self) -> dict:
        return _plain(dataclasses.asdict(self))

    # -------- переопределения --------

    def with_overrides(self, runs=None, truncate=None, unaided=False, sweeps=None) -> "ScenarioConfig":
        config = self
        if runs is not None:
            config = dataclasses.replace(config, runs=runs)
        if truncate is not None:
            config = dataclasses.replace(config, route=dataclasses.replace(config.route, truncate=truncate))
        if unaided:
            config = dataclasses.replace(config, filter=dataclasses.replace(config.filter, enabled=False))
        if sweeps:
            config = dataclasses.replace(config, sweeps=tuple(sweeps))
        return config

    def with_parameter(self, path: str, value) -> "ScenarioConfig":
        section, _, name = SWEEP_ALIASES.get(path, path).partition(".")
        current = getattr(self, section)
        if name not in {f.name for f in fields(current)}:
            raise ValidationError({"sweep": f"{section} has no field {name!r}"})
        kind = type(getattr(current, name))
        if kind is int and float(value).is_integer():
            value = int(value)
        return dataclasses.replace(self, **{section: dataclasses.replace(current, **{name: value})})


def _build(cls, data, section: str):
    if isinstance(data, cls):
        return data
    if not isinstance(data, dict):
        raise ValidationError({section: "expected a mapping"})
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ValidationError({f"{section}.{key}": "unknown key" for key in sorted(unknown)})
    values = {key: tuple(value) if isinstance(value, list) else value for key, value in data.items()}
    return cls(**values)


def _build_maps(data: dict, base_dir: Path | None) -> MapConfig:
    values = dict(data)
    base = base_dir or Path.cwd()
    if "grids" in values:
        values["grids"] = tuple(str(p if Path(p).is_absolute() else base / p) for p in values["grids"] or ())
    if "synthetic" in values:
        values["synthetic"] = _build(SyntheticMapSpec, values["synthetic"] or {}, "maps.synthetic")
    if values.get("cache_dir") and not Path(values["cache_dir"]).is_absolute():
        values["cache_dir"] = str(base / values["cache_dir"])
    return _build(MapConfig, values, "maps")


def _plain(value):
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def derive_seed(base_seed: int, *parts) -> int:
    """Зерно потока: sha256 от 'base:part1:part2...', первые 8 байт."""
    text = ":".join(str(p) for p in (base_seed, *parts))
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "little")


def run_seeds(config: ScenarioConfig, run_index: int) -> dict:
    return {stream: derive_seed(config.seed, run_index, stream) for stream in RUN_STREAMS}


# ---------------------- подготовка сценария ----------------------

@dataclass(eq=False)
class ScenarioInputs:
    """Общие для всех прогонов данные: маршрут, истинное движение, идеальная ИНС, карты."""
    route: Route
    truth: StateSeries
    imu: ImuSeries
    maps: MapSet
    epoch_index: np.ndarray
    true_gradient: np.ndarray
    g_upper: np.ndarray
    vibration_level: np.ndarray
    coverage: np.ndarray


def load_maps(config: ScenarioConfig, route: Route) -> MapSet:
    if config.maps.grids:
        maps = MapSet.load(config.maps.grids)
    else:
        cache = Path(config.maps.cache_dir) if config.maps.cache_dir else None
        if cache is not None and any(cache.glob("*.ggv")):
            logger.info("Карты из кэша %s", cache)
            maps = MapSet.load_directory(cache)
        else:
            full = build_route(route.start, route.end, route.speed, route.altitude)
            maps = default_map_set(full.latitudes, full.longitudes, config.reference_altitude,
                                   config.maps.synthetic)
            if cache is not None:
                maps.save(cache)
                logger.info("Карты сохранены в %s", cache)
    maps.check_covers(route.latitudes, route.longitudes)
    return maps


def prepare_scenario(config: ScenarioConfig) -> ScenarioInputs:
    route = build_route(config.route.start, config.route.end, config.route.speed,
                        config.route.altitude, truncate=config.route.truncate)
    truth = truth_states(route, config.ins_rate, config.vibration, seed=derive_seed(config.seed, "truth"))
    imu = synthesize_imu(truth)
    maps = load_maps(config, route)

    steps = config.steps_per_epoch
    epoch_index = np.arange(0, len(truth), steps)
    lat, lon = truth.column("latitude")[epoch_index], truth.column("longitude")[epoch_index]
    alt = truth.column("altitude")[epoch_index]
    true_gradient = maps.gradient_at(lat, lon)
    priorities = np.array([grid.priority for grid in maps.grids])
    source = maps.source_index(lat, lon)
    coverage = np.where(priorities[source] > priorities.min(), "fine", "coarse")
    vibration_level = np.linalg.norm(truth.vibration[epoch_index], axis=1)
    logger.info("Сценарий %s: %d эпох, %d отсчётов ИНС", config.name, len(epoch_index), len(imu))
    return ScenarioInputs(route, truth, imu, maps, epoch_index, true_gradient,
                          normal_gravity(lat, alt), vibration_level, coverage)


# ---------------------- один прогон ----------------------

@dataclass(eq=False)
class RunMetrics:
    run_index: int
    times: np.ndarray
    radial_error: np.ndarray
    altitude_error: np.ndarray
    unaided_radial_error: np.ndarray | None
    pf_gradient_error: np.ndarray
    ellipse_times: np.ndarray
    ellipse_gradient_error: np.ndarray
    failures: int
    coverage: np.ndarray
    seeds: dict = field(default_factory=dict)
    diagnostics: list | None = None
    ellipse_estimates: list = field(default_factory=list)
    ellipse_true_gradient: np.ndarray | None = None
    navigation: NavigationSeries | None = None

    @property
    def mean_radial_error(self) -> float:
        return float(np.mean(self.radial_error))

    @property
    def final_radial_error(self) -> float:
        return float(self.radial_error[-1])

    def mean_radial_error_after(self, t: float) -> float:
        mask = self.times >= t
        return float(np.mean(self.radial_error[mask])) if mask.any() else math.nan


def _radial(solution: NavSolution, lat, lon, alt) -> float:
    s = solution.state
    north, east, _ = ned_offsets(lat, lon, alt, s.latitude, s.longitude, s.altitude)
    return math.hypot(north, east)


def run_scenario(config: ScenarioConfig, run_index: int, inputs: ScenarioInputs | None = None,
                 keep_diagnostics: bool = False) -> RunMetrics:
    """
    Один полёт: искажение показаний ИНС, счисление, высотомер, измерение
    градиентометра и шаг фильтра раз в эпоху.
    """
    inputs = inputs or prepare_scenario(config)
    seeds = run_seeds(config, run_index)
    truth = inputs.truth
    imu = corrupt_imu(inputs.imu, config.budget, seeds["imu"])
    altimeter_rng = np.random.default_rng(seeds["altimeter"])
    gradiometer_rng = np.random.default_rng(seeds["gradiometer"])
    filter_rng = np.random.default_rng(seeds["filter"])

    speed_limit = 10 * config.route.speed
    start = NavSolution.from_truth(truth)
    mechanizer = Mechanizer(start, speed_limit)
    unaided = Mechanizer(start, speed_limit) if config.compare_unaided and config.filter.enabled else None
    ensemble = init_particles(config.filter, filter_rng) if config.filter.enabled else None

    steps = config.steps_per_epoch
    altimeter_every = config.altimeter.epochs_per_update(1.0 / config.gradiometer.f_meas)
    n = len(inputs.epoch_index)
    lat_t, lon_t, alt_t = truth.column("latitude"), truth.column("longitude"), truth.column("altitude")
    radial = np.zeros(n)
    altitude_error = np.zeros(n)
    unaided_radial = np.zeros(n) if unaided is not None else None
    pf_gradient_error = np.full(n, np.nan)
    pairs, diagnostics, failures = [], [], 0
    solutions = [start.state.as_array()]

    for epoch in range(1, n):
        k = inputs.epoch_index[epoch]
        try:
            mechanizer.run(imu, k - steps, k)
            nav = mechanizer.solution()
            measured = None
            if config.altimeter.enabled and epoch % altimeter_every == 0:
                measured = altimeter_reading(alt_t[k], config.altimeter, altimeter_rng)
                nav = altimeter_aid(nav, measured, config.altimeter.gain, config.altimeter.velocity_gain)
            pair = sample_pair(inputs.true_gradient[epoch], inputs.g_upper[epoch], config.gradiometer,
                               gradiometer_rng, timestamp=float(truth.times[k]),
                               vibration_level=inputs.vibration_level[epoch])
            pairs.append(pair)
            failures += not pair.valid
            if ensemble is not None:
                nav, ensemble, record = fusion_step(nav, ensemble, pair, inputs.maps, config.filter,
                                                    config.gradiometer, filter_rng, inputs.true_gradient[epoch])
                pf_gradient_error[epoch] = record.estimated_gradient - inputs.true_gradient[epoch]
                if keep_diagnostics:
                    diagnostics.append(record)
            mechanizer.reset(nav)

            if unaided is not None:
                unaided.run(imu, k - steps, k)
                if measured is not None:
                    reference = unaided.solution()
                    unaided.reset(altimeter_aid(reference, measured, config.altimeter.gain,
                                                config.altimeter.velocity_gain))
                unaided_radial[epoch] = _radial(unaided.solution(), lat_t[k], lon_t[k], alt_t[k])
        except (Divergence, OutOfCoverage) as exc:
            raise RunFailed(run_index, epoch, exc) from exc

        radial[epoch] = _radial(nav, lat_t[k], lon_t[k], alt_t[k])
        altitude_error[epoch] = nav.state.altitude - alt_t[k]
        if keep_diagnostics:
            solutions.append(nav.state.as_array())

    if unaided_radial is None and not config.filter.enabled:
        unaided_radial = radial.copy()

    estimates = sliding_gradient_estimate(pairs, config.gradiometer, config.ellipse_window)
    epoch_times = truth.times[inputs.epoch_index]
    ellipse_times, ellipse_true = [], []
    for estimate in estimates:
        window = (epoch_times >= estimate.start) & (epoch_times <= estimate.end)
        ellipse_times.append(estimate.timestamp)
        ellipse_true.append(float(np.mean(inputs.true_gradient[window])))
    ellipse_true = np.array(ellipse_true)
    ellipse_error = np.array([estimate.gradient for estimate in estimates]) - ellipse_true

    logger.info("Прогон %d: средняя ошибка %.1f м, конечная %.1f м, отказов %d",
                run_index, float(np.mean(radial)), float(radial[-1]), failures)
    return RunMetrics(run_index, epoch_times.copy(), radial, altitude_error, unaided_radial,
                      pf_gradient_error, np.array(ellipse_times), ellipse_error, failures,
                      inputs.coverage, seeds, diagnostics if keep_diagnostics else None, estimates, ellipse_true,
                      NavigationSeries(epoch_times.copy(), np.array(solutions)) if keep_diagnostics else None)


# ---------------------- серии ----------------------

def _stats(values) -> tuple[float, float]:
    values = np.asarray(values, dtype=float)
    values = values[np.isfinite(values)]
    if values.size == 0:
        return math.nan, math.nan
    return float(np.mean(values)), float(np.std(values))


@dataclass(eq=False)
class AggregateMetrics:
    label: str
    parameter: str | None
    value: float | None
    runs: list
    convergence_time: float

    @property
    def times(self) -> np.ndarray:
        return self.runs[0].times

    def _stack(self, name):
        return np.vstack([getattr(run, name) for run in self.runs])

    @property
    def mean_radial_error(self) -> np.ndarray:
        return self._stack("radial_error").mean(axis=0)

    @property
    def std_radial_error(self) -> np.ndarray:
        return self._stack("radial_error").std(axis=0)

    @property
    def mean_unaided_error(self) -> np.ndarray | None:
        if any(run.unaided_radial_error is None for run in self.runs):
            return None
        return self._stack("unaided_radial_error").mean(axis=0)

    @property
    def std_unaided_error(self) -> np.ndarray | None:
        if any(run.unaided_radial_error is None for run in self.runs):
            return None
        return self._stack("unaided_radial_error").std(axis=0)

    def route_average(self) -> tuple[float, float]:
        """Среднее по маршруту и СКО этого среднего по прогонам."""
        return _stats([run.mean_radial_error for run in self.runs])

    def route_average_after_convergence(self) -> tuple[float, float]:
        return _stats([run.mean_radial_error_after(self.convergence_time) for run in self.runs])

    def final_error(self) -> tuple[float, float]:
        return _stats([run.final_radial_error for run in self.runs])

    def failures(self) -> float:
        return float(np.mean([run.failures for run in self.runs]))

    def pf_gradient_stats(self) -> tuple[float, float]:
        return _stats(np.concatenate([run.pf_gradient_error for run in self.runs]))

    def ellipse_gradient_stats(self) -> tuple[float, float]:
        return _stats(np.concatenate([run.ellipse_gradient_error for run in self.runs]))

    def segment_means(self) -> dict:
        """Средняя ошибка по участкам покрытия картами ('fine' / 'coarse')."""
        mean = self.mean_radial_error
        coverage = self.runs[0].coverage
        return {label: float(np.mean(mean[coverage == label])) for label in np.unique(coverage)}


@dataclass(eq=False)
class CampaignResult:
    config: ScenarioConfig
    aggregates: list


_WORKER_INPUTS: ScenarioInputs | None = None


def _init_worker(config: ScenarioConfig):
    global _WORKER_INPUTS
    _WORKER_INPUTS = prepare_scenario(config)


def _run_in_worker(config: ScenarioConfig, run_index: int) -> RunMetrics:
    return run_scenario(config, run_index, _WORKER_INPUTS)


def _variants(config: ScenarioConfig):
    if not config.sweeps:
        yield "baseline", None, None, config
        return
    for sweep in config.sweeps:
        for value in sweep.values:
            yield f"{sweep.parameter}={value:g}", sweep.parameter, value, config.with_parameter(sweep.path, value)


def monte_carlo(config: ScenarioConfig, workers: int = 1, inputs: ScenarioInputs | None = None) -> CampaignResult:
    """
    Серия из config.runs полётов для каждого значения развёртки. Прогон i
    использует одни и те же зерна при всех значениях параметра.
    """
    variants = list(_variants(config))
    logger.info("Серия %s: %d вариант(ов) по %d прогон(ов), процессов: %d",
                config.name, len(variants), config.runs, workers)
    inputs = inputs or prepare_scenario(config)
    tasks = [(variant, run_index) for variant in variants for run_index in range(config.runs)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(config,)) as pool:
            results = list(pool.map(_run_in_worker, [v[3] for v, _ in tasks], [i for _, i in tasks]))
    else:
        results = [run_scenario(variant[3], run_index, inputs) for variant, run_index in tasks]

    aggregates = []
    for position, (label, parameter, value, _) in enumerate(variants):
        runs = results[position * config.runs:(position + 1) * config.runs]
        aggregates.append(AggregateMetrics(label, parameter, value, runs, config.convergence_time))
        mean, std = aggregates[-1].route_average()
        logger.info("%s: средняя ошибка по маршруту %.1f ± %.1f м", label, mean, std)
    return CampaignResult(config, aggregates)


# ---------------------- выгрузка и анализ ----------------------

def manifest(config: ScenarioConfig) -> dict:
    data = config.to_dict()
    data["derived_seeds"] = {
        "truth": derive_seed(config.seed, "truth"),
        "runs": {run_index: run_seeds(config, run_index) for run_index in range(config.runs)},
    }
    return data


def export(result: CampaignResult, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [
        resources.write_csv(resources.radial_error_dataset(result.aggregates), out_dir / "radial_error_vs_time.csv"),
        resources.write_csv(resources.gradient_error_dataset(result.aggregates), out_dir / "gradient_errors.csv"),
        resources.write_csv(resources.sweep_summary_dataset(result.aggregates), out_dir / "sweep_summary.csv"),
    ]
    path = out_dir / "run_manifest.yaml"
    path.write_text(yaml.safe_dump(manifest(result.config), sort_keys=False, allow_unicode=True), encoding="utf-8")
    written.append(path)
    return written


def schuler_period(times, error, min_period: float = 40 * 60.0, max_period: float = 150 * 60.0) -> float:
    """
    Доминирующий период (с) ряда горизонтальной ошибки: квадратичный тренд
    убирается, затем периодограмма Ломба–Скаргла в диапазоне периодов.
    """
    times = np.asarray(times, dtype=float)
    error = np.asarray(error, dtype=float)
    trend = np.polyval(np.polyfit(times, error, 2), times)
    periods = np.linspace(min_period, max_period, 2000)
    power = signal.lombscargle(times, error - trend, 2 * np.pi / periods)
    return float(periods[int(np.argmax(power))])
