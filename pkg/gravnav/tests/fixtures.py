"""Небольшие сценарии для тестов: минута полёта от Ливерпуля над одной сеткой."""
from pathlib import Path

import numpy as np

from gravnav.gravmap import BACKGROUND_GRADIENT, GravityGradientGrid, save_grid

TINY_GRID_ORIGIN = (53.30, -3.10)
TINY_GRID_STEP = 0.002


def write_tiny_grid(directory) -> Path:
    """Сетка 0.2° x 0.3° с волнистой аномалией ~2e-8 с^-2, покрывает первые минуты маршрута."""
    rows, cols = 101, 151
    lat = TINY_GRID_ORIGIN[0] + TINY_GRID_STEP * np.arange(rows)
    lon = TINY_GRID_ORIGIN[1] + TINY_GRID_STEP * np.arange(cols)
    values = BACKGROUND_GRADIENT + 2e-8 * np.outer(np.sin(lat * 180.0), np.cos(lon * 120.0))
    grid = GravityGradientGrid(*TINY_GRID_ORIGIN, TINY_GRID_STEP, TINY_GRID_STEP, values,
                               reference_altitude=3000.0)
    path = Path(directory) / "tiny.ggv"
    save_grid(grid, path)
    return path


def tiny_scenario(grid_path, **overrides) -> dict:
    data = {
        "name": "tiny",
        "runs": 2,
        "seed": 7,
        "route": {"truncate": 60.0},
        "filter": {"n_particles": 100},
        "vibration": {"enabled": False},
        "maps": {"grids": [str(grid_path)]},
        "convergence_time": 30.0,
        "ellipse_window": 20,
    }
    data.update(overrides)
    return data
