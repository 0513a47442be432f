import numpy as np
import pytest

from opmeans.verifier.generators import gen_pd, gen_psd, haar_unitary

ACCEPTANCE = []  # (criterion, passed, detail) filled by test_acceptance


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pd(rng, n, cond=1e3):
    return gen_pd(n, cond, rng)


def random_psd(rng, n, cond=1e3):
    return gen_psd(n, cond, rng)


def random_hermitian(rng, n):
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (Z + Z.conj().T) / 2


def singular_psd(rng, n, rank=None, cond=1e3):
    rank = max(1, n - 1) if rank is None else rank
    U = haar_unitary(n, rng)
    lam = np.zeros(n)
    lam[:rank] = np.exp(rng.uniform(-np.log(cond), 0, rank))
    M = (U * lam) @ U.conj().T
    return (M + M.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {crit}: {detail}")
