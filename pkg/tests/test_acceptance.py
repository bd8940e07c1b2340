"""Acceptance criteria 1–8, one test per sub-claim.

Each test records PASS/FAIL under its criterion number. The terminal summary
(see conftest.py) prints one line per criterion, failing if any sub-claim
fails. Numbers are checked at the stated tolerances; nothing is loosened.
"""

import functools
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import random_unit
from oracles import theta_oracle, thetabar_oracle
from ncdirac.dirac import Level, PhysicalConstants, energy, radial_g_f, radial_params
from ncdirac.ncps import NcParams, corrections, rho, rho_bar, spacings, theta_matrix, thetabar_matrix
from ncdirac.numerics import hermitian_eigen, integrate_radial
from ncdirac.report import parse_config, run

C = PhysicalConstants()
M = C.electron_mass
LEVELS = ("2S1/2", "2P1/2", "2P3/2")

# criterion -> list of (claim, passed, detail)
RESULTS: dict[str, list] = {}
INFO: list[str] = []


def criterion(number, claim):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*a, **k):
            try:
                detail = fn(*a, **k)
            except BaseException as exc:
                RESULTS.setdefault(number, []).append((claim, False, str(exc).splitlines()[0][:160]))
                raise
            RESULTS.setdefault(number, []).append((claim, True, detail or ""))

        return inner

    return wrap


def _pm(v):
    return v[0] + 1j * v[1], v[0] - 1j * v[1]


# ---------------------------------------------------------------- 1

@criterion("1", "1S binding 13.6057 eV within 1e-3 eV")
def test_c1_binding():
    t0 = time.perf_counter()
    b = M - energy(Level.parse("1S1/2"))
    dt = time.perf_counter() - t0
    assert abs(b - 13.6057) <= 1e-3, b
    assert dt < 1e-3, f"{dt * 1e3:.3f} ms"
    return f"m-E = {b:.7f} eV in {dt * 1e6:.0f} us"


@criterion("1", "2P3/2-2P1/2 interval 4.53e-5 eV within 1%")
def test_c1_fine_structure():
    d = energy(Level.parse("2P3/2")) - energy(Level.parse("2P1/2"))
    assert abs(d / 4.53e-5 - 1) <= 1e-2, d
    return f"{d:.5e} eV"


# ---------------------------------------------------------------- 2

def _reference_theta(label, t):
    tp, tm = _pm(t)
    if label == "2S1/2":
        return np.zeros((2, 2)), None
    if label == "2P1/2":
        return 2 / 3 * np.array([[t[2], tm], [tp, -t[2]]]), "descending"
    s3 = math.sqrt(3)
    return np.array(
        [[-3 * t[2], s3 * tp, 0, 0], [s3 * tm, -t[2], 2 * tp, 0], [0, 2 * tm, t[2], s3 * tp], [0, 0, s3 * tm, 3 * t[2]]]
    ) / 3, "ascending"


def _reference_thetabar(label, t):
    tp, tm = _pm(t)
    if label == "2S1/2":
        return 4 / 3 * np.diag([t[2], t[2]])
    if label == "2P1/2":
        return -4 / 3 * np.diag([t[2], t[2]])
    r3 = 1 / math.sqrt(3)
    return 2 / 5 * np.array(
        [[4 * t[2], -r3 * tp, 0, 0], [-r3 * tm, 8 / 3 * t[2], 0, 0], [0, 0, 8 / 3 * t[2], r3 * tp], [0, 0, r3 * tm, 4 * t[2]]]
    )


@criterion("2", "Θ matrices for 2S1/2, 2P1/2, 2P3/2 equal the reference forms")
def test_c2_theta_golden():
    t = np.array([0.37, -1.21, 0.58])
    for lab in LEVELS:
        ref, order = _reference_theta(lab, t)
        m = theta_matrix(Level.parse(lab), t, order=order or "descending").entries
        assert np.max(np.abs(m - ref)) < 1e-15, lab
    return "exact to 1e-15"


@criterion("2", "Θ̄ matrices for 2S1/2, 2P1/2, 2P3/2 equal the reference forms")
def test_c2_thetabar_golden():
    t = np.array([0.37, -1.21, 0.58])
    bad = []
    for lab in LEVELS:
        ref = _reference_thetabar(lab, t)
        got = thetabar_matrix(Level.parse(lab), t, order="ascending" if lab == "2P3/2" else "descending").entries
        if np.max(np.abs(got - ref)) > 1e-12:
            bad.append(f"{lab}: trace {np.trace(got).real:+.3f} vs reference {np.trace(ref).real:+.3f}")
    assert not bad, "; ".join(bad)


# ---------------------------------------------------------------- 3

def _eig_check(label, kind, expected_per_unit):
    rng = np.random.default_rng(2024)
    lv = Level.parse(label)
    fn = theta_matrix if kind == "theta" else thetabar_matrix
    for _ in range(100):
        v = rng.uniform(0.1, 3.0) * random_unit(rng)
        got = hermitian_eigen(fn(lv, v))[0]
        want = np.sort(np.array(expected_per_unit) * np.linalg.norm(v))[::-1]
        assert np.max(np.abs(got - want)) <= 1e-12, f"{label}: got {np.round(got / np.linalg.norm(v), 6)}"


@criterion("3", "Θ eigenvalues {±2/3}, {±1, ±1/3} × |θ|")
def test_c3_theta_eigen():
    _eig_check("2P1/2", "theta", [2 / 3, -2 / 3])
    _eig_check("2P3/2", "theta", [1, 1 / 3, -1 / 3, -1])
    _eig_check("2S1/2", "theta", [0, 0])
    return "100 random directions each"


@criterion("3", "Θ̄ eigenvalues {4/3}, {−4/3}, {8/5, 16/15} × |θ̄|")
def test_c3_thetabar_eigen():
    bad = []
    for lab, ev in (("2S1/2", [4 / 3, 4 / 3]), ("2P1/2", [-4 / 3, -4 / 3]), ("2P3/2", [8 / 5, 8 / 5, 16 / 15, 16 / 15])):
        try:
            _eig_check(lab, "thetabar", ev)
        except AssertionError as exc:
            bad.append(str(exc))
    assert not bad, "; ".join(bad)


# ---------------------------------------------------------------- 4

@criterion("4", "analytic Θ, Θ̄ = sphere quadrature within 1e-10")
def test_c4_angular_oracles():
    rng = np.random.default_rng(5)
    worst = 0.0
    for lab in LEVELS:
        lv = Level.parse(lab)
        for _ in range(2):
            t, tb = rng.normal(size=3), rng.normal(size=3)
            worst = max(worst, np.max(np.abs(theta_matrix(lv, t).entries - theta_oracle(lv, t))))
            worst = max(worst, np.max(np.abs(thetabar_matrix(lv, tb).entries - thetabar_oracle(lv, tb))))
    assert worst < 1e-10, worst
    return f"max |Δ| = {worst:.1e}"


@criterion("4", "closed-form ρ, ρ̄ = radial quadrature within 1e-8, Z ∈ {1, 2, 10}")
def test_c4_radial_oracles():
    worst = 0.0
    for Z in (1.0, 2.0, 10.0):
        for lab in LEVELS:
            lv = Level.parse(lab, Z)
            pairs = [(rho_bar(lv, method="closed"), rho_bar(lv, method="numeric"))]
            if lab != "2S1/2":
                pairs.append((rho(lv, method="closed"), rho(lv, method="numeric")))
            for a, b in pairs:
                worst = max(worst, abs(a - b) / abs(a))
    assert worst < 1e-8, worst
    return f"max rel = {worst:.1e}"


# ---------------------------------------------------------------- 5

@criterion("5", "θ-part A of all five spacings = 6.75e19 eV/m² within 2%")
def test_c5_a_coefficient():
    rows = spacings(NcParams())
    for r in rows:
        assert abs(r.A / 6.75e19 - 1) <= 2e-2, (r.name, r.A)
    return ", ".join(f"{r.A:.4e}" for r in rows)


@criterion("5", "middle 2P3/2 spacing has θ̄-part exactly 0")
def test_c5_middle_gap_thetabar_zero():
    mid = spacings(NcParams())[3]
    assert mid.B == 0.0, f"B = {mid.B:.4e} ({mid.name})"


# ---------------------------------------------------------------- 6

@criterion("6", "θ̄-part B = 8.38e6 (|θ̄|/α, converted by 1/(ħc)²)")
def test_c6_b_coefficient():
    rows = spacings(NcParams())
    target = (8.38e6, -8.38e6, -8.38e6, 0.0, 8.38e6)
    bad = [f"{r.name}: {r.B:.4e}" for r, want in zip(rows, target) if abs(r.B - want) > 5e-3 * 8.38e6]
    shift = spacings(NcParams(), thetabar_form="shift")
    INFO.append(
        "criterion 6 (info): thetabar_form='shift' gives B = "
        + ", ".join(f"{r.B:.4e}" for r in shift)
        + " (reference eigenvalues; not counted)"
    )
    assert not bad, "; ".join(bad)


@criterion("6", "E^θ̄ linear in |θ̄|")
def test_c6_linearity():
    lv = Level.parse("2P3/2")
    u = np.array([0.2, -0.5, 0.8])
    one = corrections(lv, NcParams(thetabar=1e-3 * u, alpha=1.0))
    seven = corrections(lv, NcParams(thetabar=7e-3 * u, alpha=1.0))
    for s in one.labels:
        assert abs(seven.e_thetabar[s] - 7 * one.e_thetabar[s]) <= 1e-12 * abs(seven.e_thetabar[s])
    return "ratio 7 to 1e-12"


@criterion("6", "E^θ̄_{±1/2}/E^θ̄_{±3/2} = 2/3 for 2P3/2")
def test_c6_ratio():
    br = corrections(Level.parse("2P3/2"), NcParams(thetabar=[0, 0, 1e-3]))
    ratio = br.e_thetabar["jz=+1/2"] / br.e_thetabar["jz=+3/2"]
    assert abs(ratio - 2 / 3) < 1e-12, f"ratio = {ratio:.12f}"


# ---------------------------------------------------------------- 7

@criterion("7", "∫(g²+f²)r²dr = 1 within 1e-8 for the three levels")
def test_c7_normalization():
    worst = 0.0
    for lab in LEVELS:
        s = radial_params(Level.parse(lab))
        n = integrate_radial(lambda r: sum(x * x for x in radial_g_f(s, r)) * r * r, 2 * s.lam, 1e-12)
        worst = max(worst, abs(n - 1))
    assert worst <= 1e-8, worst
    return f"max |N-1| = {worst:.1e}"


@criterion("7", "θ = θ̄ = 0 through the CLI reproduces E_{n,j} bit for bit")
def test_c7_commutative_cli():
    out = subprocess.run(
        [sys.executable, "-m", "ncdirac", "levels", "--format", "json", "--theta-m2", "0", "--thetabar", "0"],
        capture_output=True, text=True, check=True,
    ).stdout
    recs = json.loads(out)["records"]
    assert len(recs) == 8
    for r in recs:
        assert r["total"] == energy(Level.parse(r["level"])), r


@criterion("7", "nonrelativistic ε-scaling of binding within 1% at ε = 1e-3")
def test_c7_eps_scaling():
    eps = 1e-3
    for n in (1, 2, 3):
        b = M - energy(Level(n, 1, 0, eps / C.coupling_e2))
        assert abs(b / (M * eps**2 / (2 * n * n)) - 1) < 1e-2


# ---------------------------------------------------------------- 8

@criterion("8", "Z=1, θ ≠ 0: 3 distinct 2S1/2+2P1/2 and 4 distinct 2P3/2 sublevels")
def test_c8_topology():
    d = run(parse_config("theta=1e-28"))
    # 2S1/2 and 2P1/2 share E_{2,1/2}; the θ terms (~7e-9 eV) exceed its ulp
    n2 = {r.total for r in d.records if r.level in ("2S1/2", "2P1/2")}
    p32 = {r.total for r in d.records if r.level == "2P3/2"}
    assert len(n2) == 3 and len(p32) == 4, (len(n2), len(p32))
    return "3 + 4"


@pytest.fixture(scope="module", autouse=True)
def _timing():
    t0 = time.perf_counter()
    yield
    INFO.append(f"acceptance runtime {time.perf_counter() - t0:.1f} s")
