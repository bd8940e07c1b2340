import numpy as np
import pytest

from ncdirac.dirac import Level, PhysicalConstants
from ncdirac.special_functions import spherical_harmonic

N2_LEVELS = ("2S1/2", "2P1/2", "2P3/2")


@pytest.fixture
def consts():
    return PhysicalConstants()


@pytest.fixture(params=N2_LEVELS)
def n2_level(request):
    return Level.parse(request.param)


def eval_expansion(exp, theta, phi):
    """Pointwise value of an angular expansion {(spin, l, m): c}."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    out = np.zeros((2,) + theta.shape, dtype=complex)
    for (s, l, m), c in exp.items():
        out[s] += c * spherical_harmonic(l, m, theta, phi)
    return out


def random_unit(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        claims = mod.RESULTS[number]
        ok = all(p for _, p, _ in claims)
        tr.write_line(f"CRITERION {number}: {'PASS' if ok else 'FAIL'}")
        for claim, passed, detail in claims:
            tr.write_line(f"    [{'pass' if passed else 'FAIL'}] {claim}" + (f" -- {detail}" if detail else ""))
    for line in mod.INFO:
        tr.write_line(line)
