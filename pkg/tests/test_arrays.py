# -*- coding: utf-8 -*-
"""
Copyright © 2026 Lens MIMO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import logging
import math
from typing import List

import numpy as np
import pytest

from lensmimo.model.arrays import LensArrayGeometry, UpaGeometry, build_lens_geometry, geometry_from_json, \
    lens_response, power_response_map, sinc, upa_response
from lensmimo.model.base import Direction, SimulationException

THETA_COV: float = math.radians(60.)
PHI_COV: float = math.radians(120.)


def default_lens() -> LensArrayGeometry:
    return build_lens_geometry(10., 10., THETA_COV, PHI_COV)


def test_sinc():
    """
    Test the sinc function at zero, near zero, at integers and at half integers.
    """
    assert sinc(np.array([0.]))[0] == 1.
    assert sinc(np.array([1e-13]))[0] == pytest.approx(1., abs=1e-20)
    assert sinc(np.array([2., -3.]))[0] == 0.
    assert sinc(np.array([2., -3.]))[1] == 0.
    assert sinc(np.array([0.5]))[0] == pytest.approx(2. / math.pi)
    assert sinc(np.array([-0.5]))[0] == pytest.approx(2. / math.pi)


def test_direction():
    """
    Test the direction range check and the degree conversion.
    """
    d: Direction = Direction.from_degrees(30., -45.)
    assert d.theta == pytest.approx(math.pi / 6)
    assert d.phi_deg == pytest.approx(-45.)
    assert d == Direction(math.radians(30.), math.radians(-45.))
    with pytest.raises(SimulationException):
        Direction(0., math.pi)
    with pytest.raises(SimulationException):
        Direction(float('nan'), 0.)


def test_lens_element_count():
    """
    Test the element enumeration of the default geometry: 179 elements with the per-row azimuth bounds
    8, 8, 8, 8, 7, 7 for |m_e| = 0..5.
    """
    geom: LensArrayGeometry = default_lens()
    assert geom.num_elements == 179
    rows = {}
    for e in geom.elements:
        rows.setdefault(e.m_e, []).append(e.m_a)
    assert sorted(rows.keys()) == list(range(-5, 6))
    for m_e, bound in zip(range(6), [8, 8, 8, 8, 7, 7]):
        assert max(rows[m_e]) == bound
        assert min(rows[-m_e]) == -bound


def test_lens_geometry_invariants():
    """
    Test uniqueness, ordering, index bounds and element angles of the default geometry.
    """
    geom: LensArrayGeometry = default_lens()
    keys = [(e.m_e, e.m_a) for e in geom.elements]
    assert len(set(keys)) == len(keys)
    assert keys == sorted(keys)
    for i, e in enumerate(geom.elements):
        assert abs(e.m_e) <= math.floor(10. * math.sin(THETA_COV / 2) + 1e-9)
        assert abs(e.m_a) <= math.floor(10. * math.cos(e.theta) * math.sin(PHI_COV / 2) + 1e-9)
        assert math.sin(e.theta) == pytest.approx(e.m_e / 10., abs=1e-12)
        assert math.sin(e.phi) == pytest.approx(e.m_a / (10. * math.cos(e.theta)), abs=1e-12)
        assert abs(e.theta) <= THETA_COV / 2 + 1e-9
        assert abs(e.phi) <= PHI_COV / 2 + 1e-9
        assert geom.element_index(e.m_e, e.m_a) == i
    with pytest.raises(SimulationException):
        geom.element_index(6, 0)


def test_small_lens_geometries():
    """
    Test the degenerate geometries with a single broadside element.
    """
    small: LensArrayGeometry = build_lens_geometry(1., 1., THETA_COV, PHI_COV)
    assert small.num_elements == 1
    assert (small.elements[0].m_e, small.elements[0].m_a) == (0, 0)
    collapsed: LensArrayGeometry = build_lens_geometry(10., 10., 0., 0.)
    assert collapsed.num_elements == 1
    assert collapsed.elements[0].direction == Direction(0., 0.)


def test_lens_geometry_errors():
    """
    Test the rejection of invalid apertures and coverage angles.
    """
    with pytest.raises(SimulationException):
        build_lens_geometry(0., 10., THETA_COV, PHI_COV)
    with pytest.raises(SimulationException):
        build_lens_geometry(10., -1., THETA_COV, PHI_COV)
    with pytest.raises(SimulationException):
        build_lens_geometry(10., 10., -0.1, PHI_COV)
    with pytest.raises(SimulationException):
        build_lens_geometry(10., 10., THETA_COV, 4.)


def test_lens_response_broadside():
    """
    Test the one-hot response at broadside.
    """
    geom: LensArrayGeometry = default_lens()
    response: np.ndarray = lens_response(geom, Direction(0., 0.))
    center: int = geom.element_index(0, 0)
    assert response[center] == 10.
    assert np.count_nonzero(response) == 1


def test_lens_response_half_integer():
    """
    Test the response for sin(theta) = 0.25, halfway between the elements (2, 0) and (3, 0).
    """
    geom: LensArrayGeometry = default_lens()
    response: np.ndarray = lens_response(geom, Direction(math.asin(0.25), 0.))
    assert response[geom.element_index(2, 0)] == pytest.approx(10. * 2. / math.pi)
    assert response[geom.element_index(3, 0)] == pytest.approx(10. * 2. / math.pi)


def test_lens_response_one_hot_on_grid():
    """
    Test that every element direction excites exactly one element with the value sqrt(d_y d_z).
    """
    geom: LensArrayGeometry = default_lens()
    for i, e in enumerate(geom.elements):
        response: np.ndarray = lens_response(geom, e.direction)
        assert np.count_nonzero(response) == 1
        assert response[i] == pytest.approx(10., abs=1e-12)


def test_lens_energy_capture():
    """
    Test that in-coverage directions away from the coverage edges capture most of the aperture power and that the
    captured power never exceeds it.
    """
    geom: LensArrayGeometry = default_lens()
    rng = np.random.default_rng(7)
    for _ in range(200):
        theta: float = math.asin(rng.uniform(-0.25, 0.25))
        phi: float = math.radians(rng.uniform(-23., 23.))
        fraction: float = float(np.sum(lens_response(geom, Direction(theta, phi)) ** 2)) / 100.
        assert 0.9 <= fraction <= 1. + 1e-12


def test_lens_response_azimuth_shift():
    """
    Test that an azimuth change only moves the focal point along the azimuth index.
    """
    geom: LensArrayGeometry = default_lens()
    maps = power_response_map(geom, [Direction(0., 0.), Direction.from_degrees(0., -15.)])
    assert maps[0].argmax == (0, 0)
    assert maps[1].argmax[0] == 0
    assert maps[1].argmax[1] == -3


def test_power_response_map():
    """
    Test argmax elements, captured fractions and the coverage flag of the power maps.
    """
    geom: LensArrayGeometry = default_lens()
    maps = power_response_map(geom, [Direction(0., 0.), Direction.from_degrees(0., -15.),
                                     Direction.from_degrees(15., 15.)])
    assert maps[0].argmax_fraction == pytest.approx(1.)
    assert len({m.argmax for m in maps}) == 3
    assert all(m.in_coverage for m in maps)
    midway = power_response_map(geom, [Direction(math.asin(0.05), 0.)])[0]
    assert midway.argmax_fraction < 1.
    assert midway.total_fraction == pytest.approx(1., abs=0.05)
    assert len(midway.rows()) == geom.num_elements
    with pytest.raises(SimulationException):
        power_response_map(geom, [])


def test_power_response_out_of_coverage(caplog):
    """
    Test that out-of-coverage directions are evaluated and flagged.
    """
    geom: LensArrayGeometry = default_lens()
    with caplog.at_level(logging.WARNING, logger='lensmimo'):
        maps = power_response_map(geom, [Direction.from_degrees(45., 0.)])
    assert not maps[0].in_coverage
    assert 'outside the lens coverage' in caplog.text


def test_upa_response():
    """
    Test the UPA steering vector at broadside, its norm and the orthogonality of two grid directions.
    """
    geom: UpaGeometry = UpaGeometry(20, 20, 0.5, 0.5)
    broadside: np.ndarray = upa_response(geom, Direction(0., 0.))
    assert np.allclose(broadside, 0.5 + 0j)
    assert float(np.vdot(broadside, broadside).real) == pytest.approx(100.)
    rng = np.random.default_rng(3)
    for _ in range(20):
        d: Direction = Direction(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        v: np.ndarray = upa_response(geom, d)
        assert float(np.vdot(v, v).real) == pytest.approx(100.)
    other: np.ndarray = upa_response(geom, Direction(0., math.asin(0.2)))
    assert abs(np.vdot(broadside, other)) == pytest.approx(0., abs=1e-9)


def test_upa_with_aperture():
    """
    Test the aperture equalized UPA of a 10 x 10 aperture.
    """
    geom: UpaGeometry = UpaGeometry.with_aperture(10., 10.)
    assert (geom.n_rows, geom.n_cols, geom.num_elements) == (20, 20, 400)
    assert geom.amplitude_scale == pytest.approx(0.5)
    v: np.ndarray = geom.response(Direction.from_degrees(12., -40.))
    assert float(np.vdot(v, v).real) == pytest.approx(100.)
    directions: List[Direction] = [Direction(0., 0.), Direction.from_degrees(5., 5.)]
    assert geom.response_matrix(directions).shape == (400, 2)


def test_geometry_from_json():
    """
    Test building geometries from their JSON descriptions.
    """
    lens = geometry_from_json({'kind': 'lens', 'd_y': 10, 'd_z': 10, 'theta_cov_deg': 60, 'phi_cov_deg': 120})
    assert isinstance(lens, LensArrayGeometry)
    assert lens.num_elements == 179
    upa = geometry_from_json({'kind': 'upa', 'd_y': 10, 'd_z': 10, 'spacing': 0.5})
    assert upa == UpaGeometry.with_aperture(10., 10.)
    ms = geometry_from_json({'kind': 'upa', 'rows': 2, 'cols': 2})
    assert ms.num_elements == 4
    assert geometry_from_json(upa.__json__()) == upa
    with pytest.raises(SimulationException):
        geometry_from_json({'kind': 'lens', 'd_y': 10})
    with pytest.raises(SimulationException):
        geometry_from_json({'kind': 'ula'})
