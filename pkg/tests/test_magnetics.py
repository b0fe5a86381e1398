import math

import pytest
from hypothesis import given, strategies as st

from gripperopt.errors import DomainError
from gripperopt.magnetics import (
    MagnetArray,
    MagnetSpec,
    PhysicalConstants,
    array_capacity,
    effective_pull,
    effective_pull_mass,
    payload_margin,
    pull_mass,
    theoretical_pull_mass,
)


def test_face_area_of_ring(paper_magnet):
    assert paper_magnet.face_area == pytest.approx(4.71239e-4, rel=1e-5)


def test_published_pull_mass(constants):
    assert pull_mass(0.494, 4.71239e-4, constants) == pytest.approx(4.66, abs=0.01)


def test_pull_mass_of_magnet_matches_direct_evaluation(paper_magnet, constants):
    area = math.pi / 4 * (0.025**2 - 0.005**2)
    expected = 0.494**2 * area / (2 * 9.81 * 1.25663753e-6)
    assert theoretical_pull_mass(paper_magnet, constants) == pytest.approx(expected, rel=1e-14)


def test_zero_field_holds_nothing(constants):
    assert pull_mass(0.0, 4.71239e-4, constants) == 0.0


def test_doubling_field_quadruples_mass(constants):
    assert pull_mass(0.988, 4.71239e-4, constants) == pytest.approx(4 * pull_mass(0.494, 4.71239e-4, constants))


@pytest.mark.parametrize("B, A", [(-0.1, 1e-4), (0.5, 0.0), (0.5, -1e-4)])
def test_pull_mass_domain(B, A):
    with pytest.raises(DomainError):
        pull_mass(B, A)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(flux_density_B=0.0, outer_diameter=0.025, inner_diameter=0.005, thickness=0.005),
        dict(flux_density_B=0.5, outer_diameter=0.005, inner_diameter=0.005, thickness=0.005),
        dict(flux_density_B=0.5, outer_diameter=0.025, inner_diameter=-0.001, thickness=0.005),
        dict(flux_density_B=0.5, outer_diameter=0.025, inner_diameter=0.005, thickness=0.0),
        dict(flux_density_B=0.5, outer_diameter=0.025, inner_diameter=0.005, thickness=0.005, empirical_pull_mass=0),
    ],
)
def test_magnet_invariants(kwargs):
    with pytest.raises(DomainError):
        MagnetSpec(**kwargs)


def test_constants_must_be_positive():
    with pytest.raises(DomainError):
        PhysicalConstants(gravity_g=0.0)


def test_measured_override_and_derate(paper_magnet, constants):
    eff = effective_pull(paper_magnet, constants)
    assert eff.mass == 2.1
    assert eff.measured
    assert eff.derate_ratio == pytest.approx(0.45, abs=0.005)


def test_no_override_uses_theory(constants):
    magnet = MagnetSpec(0.494, 0.025, 0.005, 0.005)
    assert effective_pull_mass(magnet, constants) == pytest.approx(4.66, abs=0.01)
    assert effective_pull(magnet, constants).derate_ratio == 1.0


def test_override_equal_to_theory_has_unit_derate(constants):
    theory = theoretical_pull_mass(MagnetSpec(0.494, 0.025, 0.005, 0.005), constants)
    magnet = MagnetSpec(0.494, 0.025, 0.005, 0.005, empirical_pull_mass=theory)
    assert effective_pull(magnet, constants).derate_ratio == pytest.approx(1.0, rel=1e-15)


def test_array_capacity(paper_array, constants):
    assert array_capacity(paper_array, constants) == pytest.approx(6.3)
    single = MagnetArray(paper_array.magnet, 1, 0.07)
    assert array_capacity(single, constants) == effective_pull_mass(paper_array.magnet, constants)


def test_array_of_unmeasured_magnets(constants):
    magnet = MagnetSpec(0.494, 0.025, 0.005, 0.005)
    arr = MagnetArray(magnet, 3, 0.07)
    assert array_capacity(arr, constants) == pytest.approx(3 * theoretical_pull_mass(magnet, constants))
    assert array_capacity(arr, constants) == pytest.approx(13.98, abs=0.02)


@pytest.mark.parametrize("count, spacing", [(0, 0.07), (2.5, 0.07), (3, 0.0)])
def test_array_invariants(paper_magnet, count, spacing):
    with pytest.raises(DomainError):
        MagnetArray(paper_magnet, count, spacing)


def test_payload_margin(paper_array, constants):
    m = payload_margin(paper_array, 2.0, constants)
    assert m.ratio == pytest.approx(3.15)
    assert m.passed


def test_zero_payload_is_infinite_margin(paper_array, constants):
    m = payload_margin(paper_array, 0.0, constants)
    assert m.infinite_margin and m.passed


def test_heavy_payload_fails(paper_array, constants):
    assert not payload_margin(paper_array, 7.0, constants).passed


def test_negative_payload_rejected(paper_array):
    with pytest.raises(DomainError):
        payload_margin(paper_array, -1.0)


positive = st.floats(min_value=1e-3, max_value=1e3)


@given(B=st.floats(0.01, 2.0), A=st.floats(1e-6, 1e-2), k=positive)
def test_homogeneity(B, A, k):
    base = pull_mass(B, A)
    assert pull_mass(B, k * A) == pytest.approx(k * base, rel=1e-12)
    assert pull_mass(k * B, A) == pytest.approx(k * k * base, rel=1e-12)


@given(n=st.integers(1, 50), measured=st.floats(0.01, 50.0))
def test_capacity_is_linear_in_count(n, measured):
    magnet = MagnetSpec(0.5, 0.02, 0.0, 0.005, empirical_pull_mass=measured)
    one = array_capacity(MagnetArray(magnet, 1, 0.05))
    assert array_capacity(MagnetArray(magnet, n, 0.05)) == pytest.approx(n * one, rel=1e-15)


@given(n=st.integers(1, 10), measured=st.floats(0.1, 10.0), payload=st.floats(0.0, 200.0))
def test_payload_pass_iff_within_capacity(n, measured, payload):
    arr = MagnetArray(MagnetSpec(0.5, 0.02, 0.0, 0.005, empirical_pull_mass=measured), n, 0.05)
    assert payload_margin(arr, payload).passed == (payload <= array_capacity(arr))


def test_payload_exactly_at_capacity_passes(paper_array):
    cap = array_capacity(paper_array)
    assert payload_margin(paper_array, cap).passed
