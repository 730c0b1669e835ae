from __future__ import annotations

import os
from functools import lru_cache

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cpinv import io
from cpinv.involution import build_tau

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ALL_FIXTURES = io.fixture_names()
VALID_TAU = ["FIX-TRIV", "FIX-REAL", "FIX-E8", "FIX-E8-DIV", "FIX-C16", "FIX-C15"]
INVALID_TAU = ["FIX-S3", "FIX-D4"]

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@lru_cache(maxsize=None)
def algebra(name: str) -> io.Algebra:
    return io.build(io.load(name))


@lru_cache(maxsize=None)
def tau_of(name: str):
    a = algebra(name)
    return build_tau(a.tower, a.cocycle)


small_rat = st.fractions(min_value=-9, max_value=9, max_denominator=7)


def nf_elems(L, max_value=9, max_den=7):
    return st.lists(st.fractions(min_value=-max_value, max_value=max_value, max_denominator=max_den),
                    min_size=L.degree, max_size=L.degree).map(L)


def alg_elems(B):
    return st.lists(nf_elems(B.L, 5, 4), min_size=B.n, max_size=B.n).map(B.element)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split()[0]), k)):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
