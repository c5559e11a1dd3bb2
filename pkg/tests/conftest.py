import pytest

from hassegen.curve import CurveSpec, infinity_place, place_at, places_of_degree
from hassegen.finitefield import make_field
from hassegen.hassedomain import HasseDomain, make_cover

# criterion label -> (verdict, description); filled by test_acceptance
ACCEPTANCE_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: (int(s.split("-")[0].rstrip("abcdefgh")), s)):
        verdict, desc = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{verdict} {label}: {desc}")


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def F7():
    return make_field(7)


@pytest.fixture(scope="session")
def E3(F3):
    """y^2 = x^3 + x over F_3, E(F_3) = Z/4."""
    return CurveSpec.elliptic(F3, 1, 0)


@pytest.fixture(scope="session")
def laurent(F3):
    """F_3[t, 1/t]: the line with S = {inf, (t)}."""
    L = CurveSpec.projective_line(F3)
    return HasseDomain(L, (infinity_place(L), place_at(L, 1, 1)))


@pytest.fixture(scope="session")
def e3_affine(E3):
    return HasseDomain(E3, (infinity_place(E3),))


@pytest.fixture(scope="session")
def line5_inf(F5):
    L = CurveSpec.projective_line(F5)
    return HasseDomain(L, (infinity_place(L),))


@pytest.fixture(scope="session")
def elliptic_cover_5(line5_inf, F5):
    """The quadratic cover of F_5[x] by y^2 = x^3 + 2 with one place over infinity."""
    E = CurveSpec.elliptic(F5, 0, 2)
    inf = line5_inf.S[0]
    return make_cover(line5_inf, "explicit", cover_curve=E, degree=2, fibers={inf: [(infinity_place(E), 2)]})


def line_domain(field, selectors):
    L = CurveSpec.projective_line(field)
    return HasseDomain(L, tuple(place_at(L, d, i) for d, i in selectors))


def first_places(curve, count):
    return tuple(places_of_degree(curve, 1)[:count])
