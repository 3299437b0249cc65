"""Randomized verification suites behind the command-line ``verify`` command.

Every suite is deterministic for a fixed (n, samples, seed, tol): trial i
draws from ``numpy.random.default_rng([seed, i])``, so reports are
byte-identical across runs and across worker counts.  Suites:

* ``roundtrip``     — forward map on the designated label pair, then invert;
* ``orthogonality`` — the always-orthogonal facet pairs meet at right angles;
* ``signature``     — the area form on the closing space has signature (1, n-3);
* ``crossroute``    — planar feet agree with Lorentzian axis intercepts;
* ``complex``       — exact cell/pairing/orbit counts of the glued complex;
* ``all``           — everything above, one sub-report per suite.
"""

from __future__ import annotations

import math
from functools import partial
from itertools import combinations
from typing import Callable

import numpy as np

from .combinatorics import sample_weight_rng
from .complexes import build_complex, cusp_classes, euler_characteristic
from .errors import OutOfRange
from .fiber import verify_injectivity
from .lorentz import axis_intercepts, build_model, dihedral_angle
from .moduli import psi5, psi6

SUITES = ("roundtrip", "orthogonality", "signature", "crossroute", "complex", "all")

#: facet pairs that meet at right angles for every weight vector and label
ORTHOGONAL_PAIRS = {
    5: ((1, 3), (2, 4), (3, 5), (4, 1), (5, 2)),
    6: ((1, 4), (2, 5), (3, 6), (1, 3), (3, 5), (5, 1), (2, 4), (4, 6), (6, 2)),
}

_RIGHT_ANGLE = math.pi / 2.0


def _random_word(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    return tuple(int(m) + 1 for m in rng.permutation(n))


def _orthogonality_trial(n: int, seed: int, tol: float, trial: int) -> dict:
    rng = np.random.default_rng([seed, trial])
    theta = sample_weight_rng(n, rng)
    word = _random_word(rng, n)
    result = {"trial": trial}
    try:
        model = build_model(theta, word)
        result["error"] = max(
            abs(dihedral_angle(model, j, k) - _RIGHT_ANGLE)
            for j, k in ORTHOGONAL_PAIRS[n]
        )
    except Exception as exc:
        result["failure"] = f"{type(exc).__name__}: {exc}"
    return result


def _signature_trial(n: int, seed: int, tol: float, trial: int) -> dict:
    rng = np.random.default_rng([seed, trial])
    theta = sample_weight_rng(n, rng)
    word = _random_word(rng, n)
    result = {"trial": trial}
    try:
        model = build_model(theta, word)
        eig = np.linalg.eigvalsh(model.gram)
        scale = float(np.abs(eig).max())
        pos = int(np.count_nonzero(eig > 1e-12 * scale))
        neg = int(np.count_nonzero(eig < -1e-12 * scale))
        if (pos, neg) != (1, n - 3):
            result["failure"] = (
                f"signature ({pos}, {neg}) instead of (1, {n - 3}); "
                f"eigenvalues {eig.tolist()}"
            )
        else:
            result["error"] = 0.0
    except Exception as exc:
        result["failure"] = f"{type(exc).__name__}: {exc}"
    return result


def _crossroute_trial(n: int, seed: int, tol: float, trial: int) -> dict:
    rng = np.random.default_rng([seed, trial])
    theta = sample_weight_rng(n, rng)
    word = _random_word(rng, n)
    result = {"trial": trial}
    try:
        if n == 5:
            shape = psi5(theta, word, cross_check=False)
            planar = (shape.P, shape.Q)
        else:
            shape = psi6(theta, word, cross_check=False)
            planar = shape.params
        lorentz = axis_intercepts(build_model(theta, word))
        result["error"] = max(
            abs(a - b) / max(1.0, abs(a), abs(b)) for a, b in zip(planar, lorentz)
        )
    except Exception as exc:
        result["failure"] = f"{type(exc).__name__}: {exc}"
    return result


_TRIALS: dict[str, Callable[[int, int, float, int], dict]] = {
    "orthogonality": _orthogonality_trial,
    "signature": _signature_trial,
    "crossroute": _crossroute_trial,
}


def _run_sampled(
    suite: str, n: int, samples: int, seed: int, tol: float, jobs: int
) -> dict:
    run = partial(_TRIALS[suite], n, seed, tol)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, range(samples), chunksize=64))
    else:
        results = [run(t) for t in range(samples)]

    failures = []
    errors = []
    for res in results:
        if "failure" in res:
            failures.append({"trial": res["trial"], "failure": res["failure"]})
        elif res["error"] > tol:
            failures.append({"trial": res["trial"], "error": res["error"]})
            errors.append(res["error"])
        else:
            errors.append(res["error"])
    return _report(
        suite,
        n,
        samples,
        seed,
        tol,
        max_error=max(errors) if errors else None,
        failures=failures,
    )


def _report(suite, n, samples, seed, tol, **extra) -> dict:
    doc = {
        "schema": "polymod-verify/1",
        "version": 1,
        "suite": suite,
        "n": n,
        "samples": samples,
        "seed": seed,
        "tol": tol,
    }
    doc.update(extra)
    doc["pass"] = not doc.get("failures")
    return doc


def _all_triple_partitions() -> list[list[list[int]]]:
    out = []
    for triple in combinations(range(1, 7), 3):
        if 1 in triple:
            rest = sorted(set(range(1, 7)) - set(triple))
            out.append(sorted([sorted(triple), rest]))
    return sorted(out)


def _run_complex(n: int, samples: int, seed: int, tol: float) -> dict:
    complex_ = build_complex(n)
    failures = []

    def expect(what: str, actual, wanted) -> None:
        if actual != wanted:
            failures.append({"check": what, "actual": actual, "expected": wanted})

    counts = {"cells": complex_.num_cells, "pairings": complex_.num_pairings}
    if n == 5:
        expect("cells", complex_.num_cells, 12)
        expect("pairings", complex_.num_pairings, 30)
        expect("vertex_classes", len(complex_.vertex_classes), 15)
        expect(
            "vertex_class_sizes",
            sorted({len(g) for g in complex_.vertex_classes}),
            [4],
        )
        counts["vertex_classes"] = len(complex_.vertex_classes)
        counts["euler_characteristic"] = euler_characteristic(complex_)
        expect("euler_characteristic", counts["euler_characteristic"], -3)
    else:
        expect("cells", complex_.num_cells, 60)
        expect("pairings", complex_.num_pairings, 180)
        cusps = cusp_classes(complex_)
        counts["cusp_classes"] = cusps["classes"]
        expect("cusp_classes", cusps["classes"], 10)
        expect(
            "cusp_incidences",
            sorted({row["incidences"] for row in cusps["table"]}),
            [18],
        )
        expect(
            "cusp_partitions",
            [row["partition"] for row in cusps["table"]],
            _all_triple_partitions(),
        )
    return _report(
        "complex", n, samples, seed, tol, counts=counts, failures=failures
    )


def run_suite(
    suite: str,
    n: int,
    samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
    jobs: int = 1,
) -> dict:
    """Run one named suite (or ``all``) and return its JSON-ready report.

    The report never mentions ``jobs``; worker count only affects wall time.
    """
    if suite not in SUITES:
        raise OutOfRange(f"unknown suite {suite!r}, expected one of {SUITES}")
    if n not in (5, 6):
        raise OutOfRange(f"n must be 5 or 6, got {n}")
    if suite == "roundtrip":
        inner = verify_injectivity(n, samples, seed, tol, jobs)
        return _report(
            "roundtrip",
            n,
            samples,
            seed,
            tol,
            max_error=inner["max_error"],
            min_shape_separation=inner["min_shape_separation"],
            failures=inner["failures"],
        )
    if suite in _TRIALS:
        return _run_sampled(suite, n, samples, seed, tol, jobs)
    if suite == "complex":
        return _run_complex(n, samples, seed, tol)

    reports = {
        name: run_suite(name, n, samples, seed, tol, jobs)
        for name in SUITES
        if name != "all"
    }
    doc = _report("all", n, samples, seed, tol, reports=reports)
    doc["pass"] = all(rep["pass"] for rep in reports.values())
    return doc
