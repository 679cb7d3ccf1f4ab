"""Ring-axiom verification for 8-bit intensities under wrapping arithmetic.

The checks run against 256x256 operation tables so a test can hand in a
deliberately corrupted table and confirm the report locates the defect.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

MODULUS = 256


def add(a: int, b: int) -> int:
    return (a + b) % MODULUS


def mul(a: int, b: int) -> int:
    return (a * b) % MODULUS


def neg(a: int) -> int:
    return (MODULUS - a) % MODULUS


@dataclass(frozen=True, order=True)
class IntensityElement:
    """An intensity in Z/256 with ring operators."""

    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % MODULUS)

    def __add__(self, other):
        return IntensityElement(add(self.value, int(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return IntensityElement(mul(self.value, int(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return IntensityElement(neg(self.value))

    def __sub__(self, other):
        return self + (-IntensityElement(int(other)))

    def __int__(self):
        return self.value

    __index__ = __int__


def add_table() -> np.ndarray:
    v = np.arange(MODULUS, dtype=np.int64)
    return (v[:, None] + v[None, :]) % MODULUS


def mul_table() -> np.ndarray:
    v = np.arange(MODULUS, dtype=np.int64)
    return (v[:, None] * v[None, :]) % MODULUS


@dataclass
class AxiomResult:
    name: str
    passed: bool
    checked: int
    counterexample: Optional[tuple] = None
    extra: bool = False  # reported but not a ring requirement

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "counterexample": list(self.counterexample) if self.counterexample else None,
                "extra": self.extra}


@dataclass
class AxiomReport:
    mode: str
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if not r.extra)

    @property
    def counterexamples(self) -> list[tuple[str, tuple]]:
        return [(r.name, r.counterexample) for r in self.results
                if r.counterexample is not None and not r.extra]

    def __getitem__(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "passed": self.passed,
                "axioms": [r.to_dict() for r in self.results]}


def _first(mask: np.ndarray, *prefix) -> Optional[tuple]:
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in prefix) + tuple(int(v) for v in hits[0])


def _exhaustive(A, M) -> list[AxiomResult]:
    n = MODULUS
    v = np.arange(n)
    pairs, triples = n * n, n ** 3
    res = []
    closed_add = bool(((A >= 0) & (A < n)).all())
    closed_mul = bool(((M >= 0) & (M < n)).all())
    res.append(AxiomResult("additive_closure", closed_add, pairs,
                           _first((A < 0) | (A >= n))))

    def ternary(name, fn, needs):
        if not needs:
            return AxiomResult(name, False, 0, None)
        for a in range(n):
            bad = fn(a)
            if bad.any():
                return AxiomResult(name, False, triples, _first(bad, a))
        return AxiomResult(name, True, triples)

    # (a+b)+c == a+(b+c): slab a covers all (b, c)
    res.append(ternary("additive_associativity",
                       lambda a: A[A[a][:, None], v[None, :]] != A[a][A], closed_add))
    res.append(AxiomResult("additive_commutativity", bool((A == A.T).all()), pairs,
                           _first(A != A.T)))
    zero_ok = (A[0] == v) & (A[:, 0] == v)
    res.append(AxiomResult("additive_identity", bool(zero_ok.all()), n,
                           _first(~zero_ok)))
    has_inverse = (A == 0).any(axis=1)
    res.append(AxiomResult("additive_inverse", bool(has_inverse.all()), pairs,
                           _first(~has_inverse)))
    res.append(AxiomResult("multiplicative_closure", closed_mul, pairs,
                           _first((M < 0) | (M >= n))))
    closed = closed_add and closed_mul
    res.append(ternary("multiplicative_associativity",
                       lambda a: M[M[a][:, None], v[None, :]] != M[a][M], closed_mul))
    # a*(b+c) == a*b + a*c
    res.append(ternary("left_distributivity",
                       lambda a: M[a][A] != A[M[a][:, None], M[a][None, :]], closed))
    # (b+c)*a == b*a + c*a; slab index is a, (b, c) vary
    res.append(ternary("right_distributivity",
                       lambda a: M[:, a][A] != A[M[:, a][:, None], M[:, a][None, :]],
                       closed))
    res.append(AxiomResult("multiplicative_commutativity", bool((M == M.T).all()),
                           pairs, _first(M != M.T), extra=True))
    one_ok = (M[1] == v) & (M[:, 1] == v)
    res.append(AxiomResult("multiplicative_identity", bool(one_ok.all()), n,
                           _first(~one_ok), extra=True))
    return res


def _sampled(A, M, n_samples: int, seed: int) -> list[AxiomResult]:
    n = MODULUS
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, n_samples))
    closed_add = bool(((A >= 0) & (A < n)).all())
    closed_mul = bool(((M >= 0) & (M < n)).all())
    closed = closed_add and closed_mul

    def result(name, bad, needs=True, cols=(a, b, c), extra=False):
        if not needs:
            return AxiomResult(name, False, 0, None, extra)
        idx = np.flatnonzero(bad)
        ce = tuple(int(col[idx[0]]) for col in cols) if len(idx) else None
        return AxiomResult(name, ce is None, n_samples, ce, extra)

    def safe(T, i, j):
        return T[np.clip(i, 0, n - 1), np.clip(j, 0, n - 1)]

    res = [
        result("additive_closure", (A[a, b] < 0) | (A[a, b] >= n), cols=(a, b)),
        result("additive_associativity",
               safe(A, A[a, b], c) != safe(A, a, A[b, c]), closed_add),
        result("additive_commutativity", A[a, b] != A[b, a], cols=(a, b)),
        result("additive_identity", (A[a, 0] != a) | (A[0, a] != a), cols=(a,)),
        result("additive_inverse", ~(A[a] == 0).any(axis=1), cols=(a,)),
        result("multiplicative_closure", (M[a, b] < 0) | (M[a, b] >= n), cols=(a, b)),
        result("multiplicative_associativity",
               safe(M, M[a, b], c) != safe(M, a, M[b, c]), closed_mul),
        result("left_distributivity",
               safe(M, a, A[b, c]) != safe(A, M[a, b], M[a, c]), closed),
        result("right_distributivity",
               safe(M, A[b, c], a) != safe(A, M[b, a], M[c, a]), closed, cols=(a, b, c)),
        result("multiplicative_commutativity", M[a, b] != M[b, a], cols=(a, b), extra=True),
        result("multiplicative_identity", (M[a, 1] != a) | (M[1, a] != a),
               cols=(a,), extra=True),
    ]
    return res


def verify_ring_axioms(mode: str = "exhaustive", n: int = 1000, seed: int = 0,
                       add_op: np.ndarray | None = None,
                       mul_op: np.ndarray | None = None) -> AxiomReport:
    """Check the ring axioms for Z/256.

    ``mode`` is ``"exhaustive"`` (every pair and triple) or ``"sampled"``
    (``n`` random triples drawn with ``seed``).  ``add_op`` / ``mul_op``
    replace the operation tables, which is how tests inject defects.
    Counterexamples are the lexicographically first failing tuple; for the
    right distributive law the tuple is ``(a, b, c)`` with
    ``(b + c) * a != b * a + c * a``.
    """
    A = add_table() if add_op is None else np.asarray(add_op, dtype=np.int64)
    M = mul_table() if mul_op is None else np.asarray(mul_op, dtype=np.int64)
    if A.shape != (MODULUS, MODULUS) or M.shape != (MODULUS, MODULUS):
        raise ValueError("operation tables must be 256x256")
    if mode == "exhaustive":
        return AxiomReport("exhaustive", _exhaustive(A, M))
    if mode == "sampled":
        return AxiomReport(f"sampled(n={n}, seed={seed})", _sampled(A, M, n, seed))
    raise ValueError(f"unknown mode {mode!r}")
