import sys
from pathlib import Path

import numpy as np
import pytest

from oscillator_entanglement.errors import ComplexRegime
from oscillator_entanglement.oracle import normal_modes
from oscillator_entanglement.params import SystemParams, derive

sys.path.insert(0, str(Path(__file__).parent))


def draw_params(rng, *, real_z=False, kappa=None, max_ratio=None, omega=None):
    """Random valid SystemParams with O(1) masses and frequencies."""
    while True:
        m, M = rng.uniform(0.5, 2.0, 2)
        w, W = rng.uniform(0.3, 3.0, 2)
        k = rng.uniform(0.0, 3.0) if kappa is None else kappa
        params = SystemParams(m, M, w if omega is None else omega, W, k)
        if real_z:
            try:
                derive(params)
            except ComplexRegime:
                continue
        if max_ratio is not None:
            modes = normal_modes(params)
            if modes.nu_plus / modes.nu_minus > max_ratio:
                continue
        return params


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture
def symmetric():
    return SystemParams(m=1.0, M=1.0, omega=1.0, Omega=1.0, kappa=1.0)


@pytest.fixture
def uncoupled_real():
    return SystemParams(m=1.0, M=1.0, omega=1.0, Omega=3.0, kappa=0.0, beta=50.0)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def record(ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {request.node.name}: {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
