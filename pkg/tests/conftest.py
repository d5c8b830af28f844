import numpy as np
import pytest

from dimhydrogen import EigenSolution, build_grid, make_problem, reconstruct_R
from dimhydrogen.numerov import default_config, find_state

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def make_solution(u, r, D=3, l=0, energy=0.0):
    """Wrap an arbitrary sampled u(r) as an EigenSolution for observable tests."""
    r = np.asarray(r, dtype=float)
    u = np.asarray(u, dtype=float)
    grid = build_grid(r[0], r[-1], r.size)
    return EigenSolution(
        energy=energy,
        u_samples=u,
        r_samples=r,
        radial_samples=reconstruct_R(u, r, D),
        node_count=0,
        defect_residual=0.0,
        spec=make_problem(D, l),
        grid=grid,
    )


@pytest.fixture(scope="session")
def hydrogen_grid():
    return build_grid(1e-3, 60.0, 20001)


@pytest.fixture(scope="session")
def hydrogen_1s(hydrogen_grid):
    spec = make_problem(3, 0)
    return find_state(spec, hydrogen_grid, default_config(spec, hydrogen_grid), 1)


@pytest.fixture(scope="session")
def analytic_1s():
    # u = r R with R = 2 exp(-r): normalized on [0, inf)
    r = build_grid(1e-3, 40.0, 40001).r
    return make_solution(2.0 * r * np.exp(-r), r)
