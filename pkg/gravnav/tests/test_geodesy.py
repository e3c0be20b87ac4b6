import math

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from gravnav.geodesy import (WGS84, GeodeticPosition, NedVector, body_to_ned, earth_rate_ned,
                             euler_from_rotation, geodetic_to_ned, gravity_at, great_ellipse_path, ned_offsets,
                             ned_to_geodetic, normal_gravity, offset_positions, radii_at, radii_of_curvature,
                             route_distance, transport_rate_ned, wrap_heading, wrap_longitude)

LIVERPOOL = GeodeticPosition(53.407579, -2.967853, 3000.0)
TOULOUSE = GeodeticPosition(43.604652, 1.444209, 3000.0)


class NormalGravityTests(SimpleTestCase):
    def test_equator_and_pole(self):
        self.assertAlmostEqual(float(normal_gravity(0.0, 0.0)), 9.7803253359, delta=1e-9)
        self.assertAlmostEqual(float(normal_gravity(90.0, 0.0)), 9.8321849379, delta=1e-9)

    def test_free_air_correction(self):
        drop = float(normal_gravity(45.0, 0.0) - normal_gravity(45.0, 1000.0))
        self.assertAlmostEqual(drop, 3.086e-3, places=9)

    def test_vectorized(self):
        g = normal_gravity(np.array([0.0, 45.0, 90.0]), 0.0)
        self.assertEqual(g.shape, (3,))
        self.assertTrue(np.all(np.diff(g) > 0))

    def test_scalar_helpers_match(self):
        for lat in (0.0, 37.5, 53.4, 90.0):
            with self.subTest(lat=lat):
                self.assertAlmostEqual(gravity_at(math.radians(lat), 3000.0), float(normal_gravity(lat, 3000.0)),
                                       delta=1e-12)
                np.testing.assert_allclose(radii_at(math.radians(lat)), radii_of_curvature(lat), rtol=1e-14)


class RotationRateTests(SimpleTestCase):
    def test_earth_rate_at_pole_and_equator(self):
        omega = WGS84.earth_rotation_rate
        np.testing.assert_allclose(earth_rate_ned(0.0), [omega, 0.0, 0.0], atol=1e-20)
        np.testing.assert_allclose(earth_rate_ned(90.0), [0.0, 0.0, -omega], atol=1e-20)
        np.testing.assert_allclose(earth_rate_ned(-90.0), [0.0, 0.0, omega], atol=1e-20)

    def test_earth_rate_norm(self):
        rates = earth_rate_ned(np.linspace(-90.0, 90.0, 37))
        self.assertEqual(rates.shape, (37, 3))
        np.testing.assert_allclose(np.linalg.norm(rates, axis=1), WGS84.earth_rotation_rate, rtol=1e-12)

    def test_transport_rate_linear_in_velocity(self):
        v = np.array([80.0, -60.0, 1.5])
        single = transport_rate_ned(v, 50.0, 3000.0)
        np.testing.assert_allclose(transport_rate_ned(2 * v, 50.0, 3000.0), 2 * single, rtol=1e-12)
        np.testing.assert_allclose(transport_rate_ned(-v, 50.0, 3000.0), -single, rtol=1e-12)
        np.testing.assert_allclose(transport_rate_ned(np.zeros(3), 50.0, 3000.0), 0.0, atol=1e-20)

    def test_transport_rate_components(self):
        meridian, prime_vertical = radii_of_curvature(50.0)
        north = transport_rate_ned([100.0, 0.0, 0.0], 50.0, 3000.0)
        self.assertAlmostEqual(float(north[1]), -100.0 / (meridian + 3000.0), delta=1e-18)
        self.assertEqual(float(north[0]), 0.0)
        east = transport_rate_ned([0.0, 100.0, 0.0], 50.0, 3000.0)
        self.assertAlmostEqual(float(east[0]), 100.0 / (prime_vertical + 3000.0), delta=1e-18)
        self.assertAlmostEqual(float(east[2]), -100.0 * math.tan(math.radians(50.0)) / (prime_vertical + 3000.0),
                               delta=1e-18)


class PositionTests(SimpleTestCase):
    def test_rejects_bad_latitude(self):
        with self.assertRaises(ValidationError):
            GeodeticPosition(91.0, 0.0)

    def test_rejects_bad_longitude(self):
        with self.assertRaises(ValidationError):
            GeodeticPosition(0.0, -180.0)

    def test_wrap_longitude(self):
        self.assertEqual(wrap_longitude(190.0), -170.0)
        self.assertEqual(wrap_longitude(-180.0), 180.0)
        self.assertEqual(wrap_longitude(180.0), 180.0)
        self.assertEqual(wrap_longitude(1.0 + 1e-15), 1.0 + 1e-15)

    def test_wrap_heading(self):
        self.assertEqual(wrap_heading(-90.0), 270.0)
        self.assertEqual(wrap_heading(360.0), 0.0)
        self.assertEqual(wrap_heading(725.0), 5.0)


class NedTests(SimpleTestCase):
    def test_round_trip(self):
        origin = GeodeticPosition(50.0, 1.0, 3000.0)
        for delta in (NedVector(1234.5, -987.0, 12.0), NedVector(-40000.0, 25000.0, -300.0)):
            back = geodetic_to_ned(origin, ned_to_geodetic(origin, delta))
            self.assertAlmostEqual(back.north, delta.north, delta=1e-6)
            self.assertAlmostEqual(back.east, delta.east, delta=1e-6)
            self.assertAlmostEqual(back.down, delta.down, delta=1e-6)

    def test_zero_offset_is_identity(self):
        delta = geodetic_to_ned(LIVERPOOL, LIVERPOOL)
        self.assertEqual(abs(delta), 0.0)

    def test_vectorized_offsets_match_scalar(self):
        north = np.array([100.0, -2500.0, 0.0])
        east = np.array([-50.0, 700.0, 3.0])
        lat, lon, alt = offset_positions(45.0, 2.0, 100.0, north, east)
        n2, e2, _ = ned_offsets(45.0, 2.0, 100.0, lat, lon, alt)
        np.testing.assert_allclose(n2, north, atol=1e-6)
        np.testing.assert_allclose(e2, east, atol=1e-6)

    def test_offsets_across_antimeridian(self):
        north, east, _ = ned_offsets(0.0, 179.999, 0.0, 0.0, -179.999, 0.0)
        self.assertAlmostEqual(float(north), 0.0)
        self.assertAlmostEqual(float(east), math.radians(0.002) * WGS84.semi_major_axis, delta=1e-3)

    def test_radii(self):
        meridian, prime_vertical = radii_of_curvature(0.0)
        self.assertAlmostEqual(float(prime_vertical), WGS84.semi_major_axis)
        self.assertLess(float(meridian), float(prime_vertical))


class RouteGeometryTests(SimpleTestCase):
    def test_liverpool_toulouse_distance(self):
        distance = route_distance(LIVERPOOL, TOULOUSE)
        self.assertAlmostEqual(distance / 1000.0, 1137.0, delta=1137.0 * 0.005)

    def test_path_endpoints(self):
        lat, lon, alt = great_ellipse_path(LIVERPOOL, TOULOUSE, [0.0, 1.0])
        self.assertAlmostEqual(float(lat[0]), LIVERPOOL.latitude, places=9)
        self.assertAlmostEqual(float(lon[0]), LIVERPOOL.longitude, places=9)
        self.assertAlmostEqual(float(lat[1]), TOULOUSE.latitude, places=9)
        self.assertAlmostEqual(float(lon[1]), TOULOUSE.longitude, places=9)
        np.testing.assert_allclose(alt, 3000.0)


class AttitudeTests(SimpleTestCase):
    def test_heading_east_maps_forward_to_east(self):
        v = body_to_ned(90.0, 0.0, 0.0).apply([1.0, 0.0, 0.0])
        np.testing.assert_allclose(v, [0.0, 1.0, 0.0], atol=1e-12)

    def test_euler_round_trip(self):
        psi, theta, phi = euler_from_rotation(body_to_ned(350.0, 5.0, -20.0))
        self.assertAlmostEqual(float(psi), 350.0)
        self.assertAlmostEqual(float(theta), 5.0)
        self.assertAlmostEqual(float(phi), -20.0)
