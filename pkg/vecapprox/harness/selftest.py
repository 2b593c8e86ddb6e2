"""Fast invariant suite behind `vecapprox selftest`."""
import itertools
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

from ..algorithms import approx_a2, approx_a3, cardinality_count, median
from ..config import ApproxParams, SpacePair
from ..hard_instances import HardInstanceSpec, max_tuned_budget, sample_hard, sparse_fixture
from ..information import InfoOracle, substream
from ..mixed_norm import embedding_norm, inner_norm, mixed_norm, source_norm, target_norm

EXPONENTS = (1, 2, 3, "inf")
TOLERANCE = 1e-12


class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


def _exponent_grid():
    return itertools.product(EXPONENTS, repeat=2)


def check_norm_axioms(seed: int) -> Tuple[bool, str]:
    rng = substream(seed, "selftest/norms", 0).rng
    for trial in range(50):
        f = rng.normal(size=(1 + trial % 5, 1 + trial % 7))
        g = rng.normal(size=f.shape)
        scale = rng.normal()
        for p, u in _exponent_grid():
            norm_f = mixed_norm(f, p, u)
            if abs(mixed_norm(scale * f, p, u) - abs(scale) * norm_f) > TOLERANCE * max(1.0, abs(scale) * norm_f):
                return False, f"homogeneity fails at p={p}, u={u}"
            if mixed_norm(f + g, p, u) > (norm_f + mixed_norm(g, p, u)) * (1 + TOLERANCE):
                return False, f"triangle inequality fails at p={p}, u={u}"
        for p in EXPONENTS:
            flat = inner_norm(f.ravel(), p)
            if abs(mixed_norm(f, p, p) - flat) > TOLERANCE * max(1.0, flat):
                return False, f"L_{p}(L_{p}) norm differs from the flat L_{p} norm over all entries"
    return True, "homogeneity, triangle inequality, flat collapse"


def check_embedding(seed: int) -> Tuple[bool, str]:
    rng = substream(seed, "selftest/embedding", 0).rng
    for p, q, u, v in itertools.product(EXPONENTS, repeat=4):
        sp = SpacePair(n1=6, n2=5, p=p, q=q, u=u, v=v)
        for _ in range(5):
            f = rng.normal(size=(6, 5))
            if target_norm(f, sp) > embedding_norm(sp) * source_norm(f, sp) * (1 + TOLERANCE):
                return False, f"Hölder bound fails for p={p}, q={q}, u={u}, v={v}"
    return True, "target norm <= ||J|| * source norm"


def check_cardinality(seed: int) -> Tuple[bool, str]:
    stream = substream(seed, "selftest/cardinality", 0)
    for trial in range(50):
        n1, n2 = (int(x) for x in stream.uniform_index(12, size=2) + 1)
        if n1 * n2 < 2:
            continue
        n = int(stream.uniform_index(n1 * n2 - 1)) + 1
        m = int(stream.uniform_index(5)) + 1
        sp = SpacePair(n1=n1, n2=n2, p=1, q=2, u=2, v=1)
        params = ApproxParams(sp=sp, n=n, m=m)
        f = stream.rng.normal(size=(n1, n2))
        expected = cardinality_count(params)

        oracle = InfoOracle(f)
        approx_a2(oracle, params, stream.child("a2", trial))
        if oracle.count != expected.exact or expected.exact > expected.bound:
            return False, f"one-stage count {oracle.count} != {expected.exact} at N1={n1}, N2={n2}, n={n}, m={m}"
        oracle = InfoOracle(f)
        approx_a3(oracle, params, stream.child("a3", trial))
        if oracle.count != 2 * expected.exact:
            return False, f"two-stage count {oracle.count} != {2 * expected.exact}"
    return True, "exact counts match and respect (m+1)n + m*N1 + N2"


def check_exact_recovery(seed: int) -> Tuple[bool, str]:
    sp = SpacePair(n1=16, n2=8, p=1, q=2, u=2, v=1)
    params = ApproxParams(sp=sp, n=20, m=3)
    for index in range(20):
        stream = substream(seed, "selftest/recovery", index)
        f = sparse_fixture(sp, params.n, stream.child("instance"))
        output = approx_a2(InfoOracle(f), params, stream.child("algorithm"))
        if not np.array_equal(output, f):
            return False, f"sparse fixture {index} not recovered exactly"
    return True, "sparse fixtures recovered with error 0"


def check_unit_ball(seed: int) -> Tuple[bool, str]:
    for p, u in _exponent_grid():
        sp = SpacePair(n1=32, n2=32, p=p, q="inf", u=u, v=1)
        for which in range(1, 7):
            n = max_tuned_budget(sp) if which in (3, 4) else 8
            spec = HardInstanceSpec(which=which, sp=sp, n=n)
            for index in range(20):
                f = sample_hard(spec, substream(seed, f"selftest/ball{which}", index))
                if source_norm(f, sp) > 1 + TOLERANCE:
                    return False, f"family {which} leaves the unit ball at p={p}, u={u}"
    return True, "all families inside the unit ball"


def check_median(seed: int) -> Tuple[bool, str]:
    rng = substream(seed, "selftest/median", 0).rng
    for size in range(1, 30):
        values = rng.normal(size=size)
        middle = median(values)
        if not values.min() <= middle <= values.max():
            return False, f"median outside the sample range for size {size}"
        if median(rng.permutation(values)) != middle:
            return False, f"median changes under permutation for size {size}"
    return True, "median lies between min and max and ignores order"


def check_determinism(seed: int) -> Tuple[bool, str]:
    sp = SpacePair(n1=10, n2=10, p=1, q="inf", u="inf", v=1)
    params = ApproxParams(sp=sp, n=30, m=3)
    f = substream(seed, "selftest/determinism", 0).rng.normal(size=(10, 10))
    first = approx_a3(InfoOracle(f), params, substream(seed, "selftest/determinism", 1))
    second = approx_a3(InfoOracle(f), params, substream(seed, "selftest/determinism", 1))
    if not np.array_equal(first, second):
        return False, "same stream produced different outputs"
    return True, "same seed, same output"


CHECKS: List[Tuple[str, Callable[[int], Tuple[bool, str]]]] = [
    ("norm-axioms", check_norm_axioms),
    ("embedding", check_embedding),
    ("cardinality", check_cardinality),
    ("exact-recovery", check_exact_recovery),
    ("unit-ball", check_unit_ball),
    ("median", check_median),
    ("determinism", check_determinism),
]


def run_selftest(seed: int = 0) -> List[CheckResult]:
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check(seed)
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return results
