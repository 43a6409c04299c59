"""Shared fixtures and independent oracles.

The oracles below only use the raw Cartan matrix, never the library's root,
Weyl group or character code.
"""

import itertools
from fractions import Fraction

import pytest

from crystalquiver.cartan import preset

SUITE = [("A1", (k,)) for k in range(1, 11)] + [
    ("A2", (1, 0)),
    ("A2", (1, 1)),
    ("A3", (0, 1, 0)),
    ("D4", (1, 0, 0, 0)),
]


def positive_roots_oracle(matrix, coeff_max=3):
    """Nonnegative integer vectors with gamma^T A gamma = 2 (simply laced, finite type)."""
    n = len(matrix)
    out = []
    for gamma in itertools.product(range(coeff_max + 1), repeat=n):
        if not any(gamma):
            continue
        q = sum(gamma[i] * matrix[i][j] * gamma[j] for i in range(n) for j in range(n))
        if q == 2:
            out.append(gamma)
    return out


def weyl_dimension_oracle(matrix, lam):
    """prod over positive roots of (lam + rho, alpha) / (rho, alpha)."""
    num = den = 1
    for gamma in positive_roots_oracle(matrix):
        num *= sum((l + 1) * c for l, c in zip(lam, gamma))
        den *= sum(gamma)
    assert num % den == 0
    return num // den


def freudenthal_oracle(matrix, lam, max_height):
    """Weight multiplicities keyed by nu (root coordinates, nonpositive), by Freudenthal's recursion.

    Works with nu >= 0 internally meaning the weight lam - nu.
    """
    n = len(matrix)
    roots = positive_roots_oracle(matrix)

    def form(x, y):  # (x, y) for root-coordinate vectors
        return sum(x[i] * matrix[i][j] * y[j] for i in range(n) for j in range(n))

    def lam_pair(gamma):  # (lam, gamma)
        return sum(l * c for l, c in zip(lam, gamma))

    def rho_pair(gamma):
        return sum(gamma)

    mult = {(0,) * n: 1}
    for h in range(1, max_height + 1):
        for nu in itertools.product(range(h + 1), repeat=n):
            if sum(nu) != h:
                continue
            # |lam+rho|^2 - |lam+rho-nu|^2 = 2 (lam+rho, nu) - (nu, nu)
            denom = 2 * (lam_pair(nu) + rho_pair(nu)) - form(nu, nu)
            if denom == 0:
                continue
            acc = 0
            for alpha in roots:
                k = 1
                while True:
                    prev = tuple(a - k * b for a, b in zip(nu, alpha))
                    if any(x < 0 for x in prev):
                        break
                    m = mult.get(prev, 0)
                    if m:
                        # (lam - prev, alpha)
                        acc += m * (lam_pair(alpha) - form(prev, alpha))
                    k += 1
            val = Fraction(2 * acc, denom)
            assert val.denominator == 1
            if val:
                mult[nu] = int(val)
    return {tuple(-x for x in nu): m for nu, m in mult.items()}


def sl2_string_oracle(k):
    """B(k Lambda) for sl_2: element j has nu = -j, eps = j, phi = k - j."""
    return [((-j,), j, k - j) for j in range(k + 1)]


@pytest.fixture(scope="session")
def cartans():
    return {name: preset(name) for name in ("A1", "A2", "A3", "D4", "A1~")}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
