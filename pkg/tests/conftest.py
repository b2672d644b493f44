import math
import time

import pytest

from satotate.angles import FormParams, build_angle_table
from satotate.pointcount import CurveParams
from satotate.qexp import ramanujan_tau
from satotate.primes import sieve_primes

CURVES = {
    "11a1": ((0, -1, 1, -10, -20), 11),
    "14a1": ((1, 0, 1, 4, -6), 14),
    "37a1": ((0, 0, 1, -1, 0), 37),
    "43a1": ((0, 1, 1, 0, 0), 43),
    "389a1": ((0, 1, 1, -2, 0), 389),
    "5077a1": ((0, 0, 1, -7, 6), 5077),
}

ACCEPTANCE_LINES = []


def curve(label):
    ainvs, N = CURVES[label]
    return CurveParams(*ainvs, conductor_N=N, label=label)


@pytest.fixture(scope="session")
def e11():
    return curve("11a1")


@pytest.fixture(scope="session")
def form11():
    return FormParams.for_level(2, 11, elliptic=True)


@pytest.fixture(scope="session")
def table11_small(e11, form11):
    return build_angle_table(e11, form11, 10_000)


@pytest.fixture(scope="session")
def table11_big(e11, form11):
    t0 = time.perf_counter()
    table = build_angle_table(e11, form11, 10**6)
    return table, time.perf_counter() - t0


@pytest.fixture(scope="session")
def delta_table():
    xmax = 20_000
    tau = ramanujan_tau(xmax)
    stream = ((p, tau[p]) for p in sieve_primes(xmax).tolist())
    return build_angle_table(stream, FormParams.for_level(12, 1), xmax, label="Delta")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
