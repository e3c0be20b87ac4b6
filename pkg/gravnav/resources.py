# gravnav/resources.py
"""
Табличные выгрузки (tablib): истинные состояния, решение навигации,
сравнение подгонки эллипса, диагностика фильтра и файлы серии Монте-Карло.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import tablib

from .fusion import CORRECTION_FIELDS
from .trajectory import STATE_FIELDS


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return "" if math.isnan(value) else value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class Resource:
    headers: tuple = ()

    def rows(self, source):
        raise NotImplementedError

    def export(self, source) -> tablib.Dataset:
        dataset = tablib.Dataset(headers=list(self.headers))
        for row in self.rows(source):
            dataset.append([_cell(v) for v in row])
        return dataset


class TruthStateResource(Resource):
    headers = ("time",) + STATE_FIELDS

    def rows(self, truth):
        for t, state in zip(truth.times, truth.states):
            yield (t, *state)


class NavigationResource(Resource):
    """Решение и ошибки относительно истины; source = (NavigationSeries, StateSeries)."""
    headers = ("time", "latitude", "longitude", "altitude", "north_error", "east_error", "down_error",
               "radial_error")

    def rows(self, source):
        navigation, truth = source
        north, east, down = navigation.errors(truth)
        for i, t in enumerate(navigation.times):
            yield (t, navigation.column("latitude")[i], navigation.column("longitude")[i],
                   navigation.column("altitude")[i], north[i], east[i], down[i], math.hypot(north[i], east[i]))


class EllipseFitResource(Resource):
    """source = (оценки по окнам, истинный градиент по окнам)."""
    headers = ("start", "end", "time", "samples", "estimated_gradient", "true_gradient", "error")

    def rows(self, source):
        estimates, true_gradients = source
        for estimate, truth in zip(estimates, true_gradients):
            yield (estimate.start, estimate.end, estimate.timestamp, estimate.samples, estimate.gradient,
                   truth, estimate.gradient - truth)


class FusionDiagnosticsResource(Resource):
    headers = (("time", "n_eff", "resampled", "valid", "estimated_gradient", "true_gradient")
               + tuple(f"mean_{name}" for name in CORRECTION_FIELDS)
               + tuple(f"applied_{name}" for name in CORRECTION_FIELDS))

    def rows(self, diagnostics):
        for record in diagnostics:
            yield (record.timestamp, record.n_eff, record.resampled, record.valid, record.estimated_gradient,
                   record.true_gradient,
                   *record.mean.as_array(), *record.applied.as_array())


class RadialErrorResource(Resource):
    """Средняя по прогонам радиальная ошибка на каждую эпоху, по вариантам серии."""
    headers = ("variant", "time", "mean_radial_error", "std_radial_error", "mean_unaided_error",
               "std_unaided_error", "coverage")

    def rows(self, aggregates):
        for aggregate in aggregates:
            mean, std = aggregate.mean_radial_error, aggregate.std_radial_error
            unaided_mean, unaided_std = aggregate.mean_unaided_error, aggregate.std_unaided_error
            coverage = aggregate.runs[0].coverage
            for i, t in enumerate(aggregate.times):
                yield (aggregate.label, t, mean[i], std[i],
                       None if unaided_mean is None else unaided_mean[i],
                       None if unaided_std is None else unaided_std[i], coverage[i])


class GradientErrorResource(Resource):
    """Статистика ошибки оценки градиента по прогонам для обоих способов."""
    headers = ("variant", "run", "method", "count", "mean_error", "std_error", "rms_error")

    def rows(self, aggregates):
        for aggregate in aggregates:
            for run in aggregate.runs:
                for method, series in (("particle_filter", run.pf_gradient_error),
                                       ("ellipse_fit", run.ellipse_gradient_error)):
                    finite = np.asarray(series, dtype=float)
                    finite = finite[np.isfinite(finite)]
                    if finite.size == 0:
                        yield aggregate.label, run.run_index, method, 0, None, None, None
                        continue
                    yield (aggregate.label, run.run_index, method, finite.size, finite.mean(), finite.std(),
                           math.sqrt(float(np.mean(finite ** 2))))


class SweepSummaryResource(Resource):
    headers = ("variant", "parameter", "value", "runs", "mean_error", "std_error",
               "mean_error_after_convergence", "std_error_after_convergence", "final_error", "std_final_error",
               "mean_failures", "fine_segment_error", "coarse_segment_error")

    def rows(self, aggregates):
        for aggregate in aggregates:
            segments = aggregate.segment_means()
            yield (aggregate.label, aggregate.parameter, aggregate.value, len(aggregate.runs),
                   *aggregate.route_average(), *aggregate.route_average_after_convergence(),
                   *aggregate.final_error(), aggregate.failures(),
                   segments.get("fine"), segments.get("coarse"))


def truth_dataset(truth) -> tablib.Dataset:
    return TruthStateResource().export(truth)


def navigation_dataset(navigation, truth) -> tablib.Dataset:
    return NavigationResource().export((navigation, truth))


def ellipse_fit_dataset(estimates, true_gradients) -> tablib.Dataset:
    return EllipseFitResource().export((estimates, true_gradients))


def fusion_diagnostics_dataset(diagnostics) -> tablib.Dataset:
    return FusionDiagnosticsResource().export(diagnostics)


def radial_error_dataset(aggregates) -> tablib.Dataset:
    return RadialErrorResource().export(aggregates)


def gradient_error_dataset(aggregates) -> tablib.Dataset:
    return GradientErrorResource().export(aggregates)


def sweep_summary_dataset(aggregates) -> tablib.Dataset:
    return SweepSummaryResource().export(aggregates)


def write_csv(dataset: tablib.Dataset, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dataset.export("csv"), encoding="utf-8", newline="")
    return path
