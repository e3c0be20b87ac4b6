# gravnav/ins.py
"""
Инерциальная навигация: синтез показаний ИНС из истинного движения,
модель ошибок датчиков, бесплатформенное счисление в локальной системе
NED и коррекция вертикального канала по высотомеру.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields

import numpy as np
from django.core.exceptions import ValidationError
from scipy.spatial.transform import Rotation

from .exceptions import Divergence
from .geodesy import (WGS84, EllipsoidModel, NedVector, body_to_ned, earth_rate_ned, gravity_at, ned_offsets,
                      normal_gravity, radii_at, transport_rate_ned, wrap_heading, wrap_longitude)
from .trajectory import STATE_FIELDS, StateSeries, StateVector

logger = logging.getLogger(__name__)

STANDARD_GRAVITY = 9.80665


# ---------------------- бюджет ошибок ----------------------

@dataclass(frozen=True)
class SensorErrorBudget:
    """Ошибки датчиков (1 сигма), в СИ: м/с^2, рад/с, рад, безразмерные."""
    accel_bias: float = 30e-6 * STANDARD_GRAVITY
    accel_nonorthogonality: float = 10e-6
    accel_scale: float = 10e-6
    accel_noise_density: float = 15e-6 * STANDARD_GRAVITY
    gyro_bias: float = 0.05e-6
    gyro_nonorthogonality: float = 10e-6
    gyro_scale: float = 10e-6
    gyro_noise_density: float = 2.0e-6

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {f.name: f"{f.name} must be non-negative"
                  for f in fields(self) if not getattr(self, f.name) >= 0}
        if errors:
            raise ValidationError(errors)

    @classmethod
    def aviation_grade(cls) -> "SensorErrorBudget":
        return cls()

    @classmethod
    def zero(cls) -> "SensorErrorBudget":
        return cls(**{f.name: 0.0 for f in fields(cls)})

    @classmethod
    def from_dict(cls, data: dict) -> "SensorErrorBudget":
        """Ключи *_bias/*_noise_density у акселерометров допускаются в микро-g (суффикс _ug)."""
        values = {}
        for key, value in data.items():
            if key.endswith("_ug"):
                key, value = key[:-3], float(value) * 1e-6 * STANDARD_GRAVITY
            values[key] = float(value)
        unknown = set(values) - {f.name for f in fields(cls)}
        if unknown:
            raise ValidationError({key: "unknown sensor budget key" for key in sorted(unknown)})
        return cls(**values)

    def is_zero(self) -> bool:
        return all(getattr(self, f.name) == 0 for f in fields(self))


# ---------------------- отсчёты ИНС ----------------------

@dataclass(frozen=True)
class ImuSample:
    specific_force: tuple
    angular_rate: tuple
    timestamp: float


@dataclass(eq=False)
class ImuSeries:
    """Отсчёт k описывает интервал [times[k] - dt, times[k]]."""
    times: np.ndarray
    specific_force: np.ndarray
    angular_rate: np.ndarray

    def __len__(self):
        return len(self.times)

    def __getitem__(self, k) -> ImuSample:
        return ImuSample(tuple(self.specific_force[k]), tuple(self.angular_rate[k]), float(self.times[k]))

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def rate(self) -> float:
        return 1.0 / self.dt


@dataclass(frozen=True)
class NavSolution:
    state: StateVector
    timestamp: float

    @classmethod
    def from_truth(cls, truth: StateSeries, k: int = 0) -> "NavSolution":
        return cls(truth[k], float(truth.times[k]))

    def velocity_ned(self) -> np.ndarray:
        s = self.state
        return body_to_ned(s.psi, s.theta, s.phi).apply([s.u, s.v, s.w])


def synthesize_imu(truth: StateSeries, ellipsoid: EllipsoidModel = WGS84) -> ImuSeries:
    """
    Показания идеальной ИНС: точное обращение дискретного счисления Mechanizer,
    так что счисление по ним воспроизводит истинное движение.
    """
    lat, h = truth.column("latitude"), truth.column("altitude")
    attitude = body_to_ned(truth.column("psi"), truth.column("theta"), truth.column("phi"))
    body_velocity = np.stack([truth.column("u"), truth.column("v"), truth.column("w")], axis=-1)
    v_ned = attitude.apply(body_velocity)
    dt = np.diff(truth.times)

    w_ie = earth_rate_ned(lat, ellipsoid)
    w_en = transport_rate_ned(v_ned, lat, h, ellipsoid)
    frame_turn = Rotation.from_rotvec((w_ie + w_en)[:-1] * dt[:, None])
    body_turn = attitude[:-1].inv() * frame_turn * attitude[1:]
    angular_rate = body_turn.as_rotvec() / dt[:, None]

    gravity = np.zeros_like(v_ned)
    gravity[:, 2] = normal_gravity(lat, h, ellipsoid)
    coriolis = np.cross(2 * w_ie + w_en, v_ned)
    f_ned = np.diff(v_ned, axis=0) / dt[:, None] - gravity[:-1] + coriolis[:-1]
    mean_attitude = 0.5 * (attitude[:-1].as_matrix() + attitude[1:].as_matrix())
    specific_force = np.linalg.solve(mean_attitude, f_ned[..., None])[..., 0]
    return ImuSeries(truth.times[1:].copy(), specific_force, angular_rate)


def _sensor_matrix(rng, scale, nonorthogonality):
    matrix = np.eye(3) + np.diag(rng.normal(0.0, scale, 3)) if scale else np.eye(3)
    if nonorthogonality:
        off_diagonal = rng.normal(0.0, nonorthogonality, (3, 3))
        np.fill_diagonal(off_diagonal, 0.0)
        matrix = matrix + off_diagonal
    return matrix


def corrupt_imu(imu: ImuSeries, budget: SensorErrorBudget, seed) -> ImuSeries:
    """
    Постоянные смещения, перекосы осей и масштабные ошибки на весь прогон,
    плюс белый шум со спектральной плотностью density, СКО density * sqrt(rate).
    """
    if budget.is_zero():
        return ImuSeries(imu.times.copy(), imu.specific_force.copy(), imu.angular_rate.copy())
    rng = np.random.default_rng(seed)
    accel_bias = rng.normal(0.0, budget.accel_bias, 3)
    accel_matrix = _sensor_matrix(rng, budget.accel_scale, budget.accel_nonorthogonality)
    gyro_bias = rng.normal(0.0, budget.gyro_bias, 3)
    gyro_matrix = _sensor_matrix(rng, budget.gyro_scale, budget.gyro_nonorthogonality)
    root_rate = math.sqrt(imu.rate)
    n = len(imu)
    specific_force = (imu.specific_force @ accel_matrix.T + accel_bias
                      + rng.normal(0.0, budget.accel_noise_density * root_rate, (n, 3)))
    angular_rate = (imu.angular_rate @ gyro_matrix.T + gyro_bias
                    + rng.normal(0.0, budget.gyro_noise_density * root_rate, (n, 3)))
    logger.debug("ИНС: смещения акселерометров %s, гироскопов %s", accel_bias, gyro_bias)
    return ImuSeries(imu.times.copy(), specific_force, angular_rate)


# ---------------------- счисление ----------------------

def _rodrigues(x, y, z):
    """
    Матрица поворота на вектор (x, y, z), рад, кортежами float: совпадает с
    Rotation.from_rotvec(...).as_matrix(), но без накладных расходов numpy на
    каждом шаге 100 Гц.
    """
    angle2 = x * x + y * y + z * z
    if angle2 < 1e-8:
        a = 1.0 - angle2 / 6.0 + angle2 * angle2 / 120.0
        b = 0.5 - angle2 / 24.0 + angle2 * angle2 / 720.0
    else:
        angle = math.sqrt(angle2)
        a = math.sin(angle) / angle
        b = (1.0 - math.cos(angle)) / angle2
    return ((1.0 - b * (y * y + z * z), -a * z + b * x * y, a * y + b * x * z),
            (a * z + b * x * y, 1.0 - b * (x * x + z * z), -a * x + b * y * z),
            (-a * y + b * x * z, a * x + b * y * z, 1.0 - b * (x * x + y * y)))


def _matmul(p, q):
    return tuple(tuple(p[i][0] * q[0][j] + p[i][1] * q[1][j] + p[i][2] * q[2][j] for j in range(3))
                 for i in range(3))


class Mechanizer:
    """
    Счисление в локальной системе NED с шагом по одному отсчёту ИНС
    (метод средней точки). Состояние хранится в float, чтобы шаг на 100 Гц
    оставался дешёвым.
    """

    def __init__(self, initial: NavSolution, speed_limit: float = math.inf,
                 ellipsoid: EllipsoidModel = WGS84, gravity_model=None):
        self.ellipsoid = ellipsoid
        self.speed_limit = speed_limit
        self.gravity_model = gravity_model
        self._acceleration = (0.0, 0.0, 0.0)
        self._body_rate = (0.0, 0.0, 0.0)
        self.reset(initial)

    def reset(self, solution: NavSolution):
        s = solution.state
        self.timestamp = solution.timestamp
        self.lat, self.lon, self.alt = math.radians(s.latitude), math.radians(s.longitude), s.altitude
        self.attitude = tuple(map(tuple, body_to_ned(s.psi, s.theta, s.phi).as_matrix().tolist()))
        c = self.attitude
        self.velocity = tuple(c[i][0] * s.u + c[i][1] * s.v + c[i][2] * s.w for i in range(3))

    def _gravity(self, lat, alt):
        if self.gravity_model is not None:
            return float(self.gravity_model(math.degrees(lat), alt))
        return gravity_at(lat, alt, self.ellipsoid)

    def step(self, specific_force, angular_rate, dt: float):
        lat, alt = self.lat, self.alt
        vn, ve, vd = self.velocity
        meridian, prime_vertical = radii_at(lat, self.ellipsoid)
        omega = self.ellipsoid.earth_rotation_rate
        ie_n, ie_d = omega * math.cos(lat), -omega * math.sin(lat)
        en_n = ve / (prime_vertical + alt)
        en_e = -vn / (meridian + alt)
        en_d = -ve * math.tan(lat) / (prime_vertical + alt)

        # ориентация: поворот тела минус поворот системы NED
        c = self.attitude
        wx, wy, wz = angular_rate
        c_new = _matmul(_matmul(_rodrigues(-(ie_n + en_n) * dt, -en_e * dt, -(ie_d + en_d) * dt), c),
                        _rodrigues(wx * dt, wy * dt, wz * dt))

        # скорость: удельная сила в NED по средней ориентации, тяжесть, Кориолис
        fx, fy, fz = specific_force
        f_ned = [0.5 * ((c[i][0] + c_new[i][0]) * fx + (c[i][1] + c_new[i][1]) * fy
                        + (c[i][2] + c_new[i][2]) * fz) for i in range(3)]
        cn, ce, cd = 2 * ie_n + en_n, en_e, 2 * ie_d + en_d
        g = self._gravity(lat, alt)
        vn_new = vn + dt * (f_ned[0] - (ce * vd - cd * ve))
        ve_new = ve + dt * (f_ned[1] - (cd * vn - cn * vd))
        vd_new = vd + dt * (f_ned[2] + g - (cn * ve - ce * vn))
        if not vn_new * vn_new + ve_new * ve_new + vd_new * vd_new <= self.speed_limit ** 2:
            raise Divergence(f"velocity ({vn_new:.1f}, {ve_new:.1f}, {vd_new:.1f}) m/s "
                             f"exceeds {self.speed_limit:g} m/s at t={self.timestamp + dt:.2f} s")

        # положение: трапеция по скорости
        alt_new = alt - 0.5 * dt * (vd + vd_new)
        alt_mid = 0.5 * (alt + alt_new)
        lat_new = lat + 0.5 * dt * (vn + vn_new) / (meridian + alt_mid)
        lat_mid = 0.5 * (lat + lat_new)
        _, prime_mid = radii_at(lat_mid, self.ellipsoid)
        self.lon += 0.5 * dt * (ve + ve_new) / ((prime_mid + alt_mid) * math.cos(lat_mid))
        self.lat, self.alt = lat_new, alt_new

        accel_ned = ((vn_new - vn) / dt, (ve_new - ve) / dt, (vd_new - vd) / dt)
        self._acceleration = tuple(sum(c_new[j][i] * accel_ned[j] for j in range(3)) for i in range(3))
        w_in = (ie_n + en_n, en_e, ie_d + en_d)
        self._body_rate = tuple(angular_rate[i] - sum(c_new[j][i] * w_in[j] for j in range(3)) for i in range(3))
        self.attitude = c_new
        self.velocity = (vn_new, ve_new, vd_new)
        self.timestamp += dt

    def solution(self) -> NavSolution:
        c = self.attitude
        vn, ve, vd = self.velocity
        body = [c[0][i] * vn + c[1][i] * ve + c[2][i] * vd for i in range(3)]
        psi = wrap_heading(math.degrees(math.atan2(c[1][0], c[0][0])))
        theta = math.degrees(math.asin(max(-1.0, min(1.0, -c[2][0]))))
        phi = math.degrees(math.atan2(c[2][1], c[2][2]))
        if phi == -180.0:
            phi = 180.0
        rates = [math.degrees(r) for r in self._body_rate]
        state = StateVector(math.degrees(self.lat), wrap_longitude(math.degrees(self.lon)), self.alt,
                            *body, *self._acceleration, psi, theta, phi, *rates)
        return NavSolution(state, self.timestamp)

    def run(self, imu: ImuSeries, start: int, stop: int):
        """Шаги по отсчётам imu[start:stop]."""
        dt = imu.dt
        force = imu.specific_force[start:stop].tolist()
        rate = imu.angular_rate[start:stop].tolist()
        for f, w in zip(force, rate):
            self.step(f, w, dt)


def mechanize(prev: NavSolution, imu: ImuSample, gravity_model=None, dt: float = 0.01,
              speed_limit: float = math.inf, ellipsoid: EllipsoidModel = WGS84) -> NavSolution:
    """Один шаг счисления; dt - шаг отсчётов ИНС."""
    mechanizer = Mechanizer(prev, speed_limit, ellipsoid, gravity_model)
    mechanizer.step(imu.specific_force, imu.angular_rate, dt)
    return mechanizer.solution()


# ---------------------- высотомер ----------------------

@dataclass(frozen=True)
class AltimeterConfig:
    enabled: bool = True
    sigma: float = 5.0
    rate: float = 1.0
    gain: float = 0.1
    velocity_gain: float = 0.0025

    def __post_init__(self):
        self.clean()

    def clean(self):
        errors = {}
        if self.sigma < 0:
            errors["sigma"] = "altimeter sigma must be non-negative"
        if not self.rate > 0:
            errors["rate"] = "altimeter rate must be positive"
        if not 0 <= self.gain <= 1:
            errors["gain"] = "altimeter gain must lie in [0, 1]"
        if self.velocity_gain < 0:
            errors["velocity_gain"] = "altimeter velocity gain must be non-negative"
        if errors:
            raise ValidationError(errors)

    def epochs_per_update(self, epoch: float) -> int:
        """Через сколько эпох приходит отсчёт высотомера; чаще раза в эпоху поправка не вносится."""
        return max(1, int(round(1.0 / (self.rate * epoch))))


def altimeter_reading(true_altitude: float, config: AltimeterConfig, rng: np.random.Generator) -> float:
    return true_altitude + (rng.normal(0.0, config.sigma) if config.sigma else 0.0)


def altimeter_aid(solution: NavSolution, measured_alt: float, gain: float = 0.1,
                  velocity_gain: float = 0.0025) -> NavSolution:
    """
    Подтягивает высоту к измеренной с коэффициентом gain и вертикальную
    скорость с коэффициентом velocity_gain (на одно измерение). Горизонтальные
    составляющие не меняются.
    """
    s = solution.state
    error = measured_alt - s.altitude
    if error == 0:
        return solution
    attitude = body_to_ned(s.psi, s.theta, s.phi)
    v_ned = attitude.apply([s.u, s.v, s.w])
    v_ned[2] -= velocity_gain * error
    body = attitude.apply(v_ned, inverse=True)
    values = {name: getattr(s, name) for name in STATE_FIELDS}
    values.update(altitude=s.altitude + gain * error, u=float(body[0]), v=float(body[1]), w=float(body[2]))
    return NavSolution(StateVector(**values), solution.timestamp)


# ---------------------- ошибки и прогон без коррекции ----------------------

def position_error(solution: NavSolution | StateVector, truth: StateVector) -> NedVector:
    state = solution.state if isinstance(solution, NavSolution) else solution
    north, east, down = ned_offsets(truth.latitude, truth.longitude, truth.altitude,
                                    state.latitude, state.longitude, state.altitude)
    return NedVector(float(north), float(east), float(down))


@dataclass(eq=False)
class NavigationSeries:
    """Решение навигации с шагом в одну эпоху: times (m,), states (m, 15)."""
    times: np.ndarray
    states: np.ndarray

    def column(self, name: str) -> np.ndarray:
        return self.states[:, STATE_FIELDS.index(name)]

    def errors(self, truth: StateSeries):
        """(north, east, down) ошибки относительно истинных состояний в те же моменты."""
        index = np.searchsorted(truth.times, self.times - 1e-9)
        return ned_offsets(truth.column("latitude")[index], truth.column("longitude")[index],
                           truth.column("altitude")[index], self.column("latitude"),
                           self.column("longitude"), self.column("altitude"))

    def radial_errors(self, truth: StateSeries) -> np.ndarray:
        north, east, _ = self.errors(truth)
        return np.hypot(north, east)


def navigate(truth: StateSeries, imu: ImuSeries, altimeter: AltimeterConfig | None = None,
             seed=None, epoch: float = 1.0, speed_limit: float = math.inf,
             ellipsoid: EllipsoidModel = WGS84) -> NavigationSeries:
    """
    Счисление без коррекции горизонтального канала от точного начального
    состояния; высотомер (если включён) применяется с частотой altimeter.rate,
    но не чаще раза в эпоху.
    """
    steps = int(round(epoch * imu.rate))
    aid_every = altimeter.epochs_per_update(epoch) if altimeter is not None else 1
    mechanizer = Mechanizer(NavSolution.from_truth(truth), speed_limit, ellipsoid)
    rng = np.random.default_rng(seed)
    truth_alt = truth.column("altitude")
    times, states = [truth.times[0]], [truth[0].as_array()]
    for index, start in enumerate(range(0, len(imu) - steps + 1, steps), start=1):
        mechanizer.run(imu, start, start + steps)
        solution = mechanizer.solution()
        if altimeter is not None and altimeter.enabled and index % aid_every == 0:
            measured = altimeter_reading(truth_alt[start + steps], altimeter, rng)
            solution = altimeter_aid(solution, measured, altimeter.gain, altimeter.velocity_gain)
            mechanizer.reset(solution)
        times.append(solution.timestamp)
        states.append(solution.state.as_array())
    return NavigationSeries(np.array(times), np.array(states))
