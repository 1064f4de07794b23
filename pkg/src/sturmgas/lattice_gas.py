"""Non-frustrated pair interactions whose zero-energy words are the legal ones.

The coupling is positive exactly on forbidden particle distances plus one
finite-range term penalizing runs of d1+1 vacancies.  Energies are exact
rationals throughout; ground-state comparisons never involve a tolerance.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InsufficientProfileError, InternalConsistencyError
from .order_analysis import DistanceProfile, ensure_horizon
from .characterization import is_locally_legal
from .sturmian_gen import Word

#: exhaustive scans refuse beyond this length; use the pruned legal-word
#: enumeration in `characterization` for longer windows
EXHAUSTIVE_CAP = 24


@dataclass(frozen=True)
class InteractionSpec:
    """Couplings lambda**j on forbidden distances j, plus a vacancy-run penalty.

    zero_run_len = d1 + 1 is the penalized run length; every strictly
    shorter run is free.  All couplings are exact rationals, so finite
    energies are exact rationals.
    """

    profile: DistanceProfile
    decay_base: Fraction
    zero_run_penalty: Fraction

    def __post_init__(self):
        if not 0 < self.decay_base < 1:
            raise ValueError(f"decay base must lie in (0, 1), got {self.decay_base}")
        if self.zero_run_penalty <= 0:
            raise ValueError(f"penalty must be positive, got {self.zero_run_penalty}")
        if not self.profile.d:
            raise ValueError("profile lists no allowed distance")

    @property
    def zero_run_len(self) -> int:
        return self.profile.d[0] + 1

    def coupling(self, j: int) -> Fraction:
        """J(j): decay_base**j on forbidden distances, 0 on allowed ones."""
        if not 1 <= j <= self.profile.horizon:
            raise InsufficientProfileError(
                f"distance {j} outside profile horizon {self.profile.horizon}"
            )
        if j in self.profile.forbidden:
            return self.decay_base**j
        return Fraction(0)

    def pair_coupling(self) -> dict[int, Fraction]:
        """The full map j -> J(j) over the profile's horizon."""
        return {j: self.coupling(j) for j in range(1, self.profile.horizon + 1)}

    def to_json(self) -> str:
        gamma = self.profile.params.gamma if self.profile.params else None
        return json.dumps(
            {
                "gamma": str(gamma) if gamma is not None else None,
                "lambda": f"{self.decay_base.numerator}/{self.decay_base.denominator}",
                "beta": f"{self.zero_run_penalty.numerator}/{self.zero_run_penalty.denominator}",
                "horizon": self.profile.horizon,
            }
        )


def build_interaction(
    profile: DistanceProfile,
    decay_base: Fraction = Fraction(1, 2),
    penalty: Fraction = Fraction(1),
) -> InteractionSpec:
    return InteractionSpec(profile, Fraction(decay_base), Fraction(penalty))


@dataclass(frozen=True)
class EnergyBreakdown:
    total: Fraction
    pair_part: Fraction
    zero_run_part: Fraction
    #: (position, partner position, distance) per forbidden-distance pair
    violating_pairs: tuple[tuple[int, int, int], ...]
    #: start position of each penalized vacancy run
    violating_runs: tuple[int, ...]


def energy_open(w: Word, spec: InteractionSpec) -> EnergyBreakdown:
    """Energy of a free-boundary segment: all in-window terms, no wraparound."""
    if len(w) - 1 > spec.profile.horizon:
        raise InsufficientProfileError(
            f"profile horizon {spec.profile.horizon} < window span {len(w) - 1}"
        )
    forbidden = spec.profile.forbidden
    lam = spec.decay_base
    powers: dict[int, Fraction] = {}
    ones = [k for k, ch in enumerate(w.symbols) if ch == "1"]
    pair_part = Fraction(0)
    pairs = []
    for i, a in enumerate(ones):
        for b in ones[i + 1 :]:
            dist = b - a
            if dist in forbidden:
                if dist not in powers:
                    powers[dist] = lam**dist
                pair_part += powers[dist]
                pairs.append((w.origin + a, w.origin + b, dist))
    run_len = spec.zero_run_len
    runs = []
    target = "0" * run_len
    pos = w.symbols.find(target)
    while pos != -1:
        runs.append(w.origin + pos)
        pos = w.symbols.find(target, pos + 1)
    zero_run_part = spec.zero_run_penalty * len(runs)
    return EnergyBreakdown(
        total=pair_part + zero_run_part,
        pair_part=pair_part,
        zero_run_part=zero_run_part,
        violating_pairs=tuple(pairs),
        violating_runs=tuple(runs),
    )


@dataclass(frozen=True)
class GroundStateResult:
    min_energy: Fraction
    argmin: frozenset[Word]
    states_scanned: int


def _scan_chunk(args) -> tuple[Optional[int], list[int], list[int]]:
    """Scan configurations [lo, hi): integer energies, argmin and legal sets.

    Energies are integers after scaling by the common denominator, so the
    minimum is exact.  Legality goes through the word-level scanner, an
    independent route from the energy accumulation.
    """
    length, weights, wbeta, run_len, profile, lo, hi = args
    run_window = (1 << (length - run_len + 1)) - 1 if length >= run_len else 0
    best: Optional[int] = None
    argmin: list[int] = []
    legal: list[int] = []
    for x in range(lo, hi):
        e = 0
        for j, wj in weights:
            e += (x & (x >> j)).bit_count() * wj
        if run_window:
            acc = x
            for s in range(1, run_len):
                acc |= x >> s
            e += (~acc & run_window).bit_count() * wbeta
        if best is None or e < best:
            best = e
            argmin = [x]
        elif e == best:
            argmin.append(x)
        if is_locally_legal(_config_word(x, length), profile).legal:
            legal.append(x)
    return best, argmin, legal


def _config_word(x: int, length: int) -> Word:
    return Word("".join("1" if (x >> k) & 1 else "0" for k in range(length)))


def ground_state_search(
    length: int, spec: InteractionSpec, workers: int = 1
) -> GroundStateResult:
    """Exhaustive minimum over all 2**length free-boundary configurations.

    Asserts the scan's two independent routes agree: the zero-energy set
    (couplings route) must equal the locally-legal set (pattern route),
    and the minimum must be exactly zero.
    """
    if not 1 <= length <= EXHAUSTIVE_CAP:
        raise ValueError(
            f"refusing exhaustive scan at length {length} (cap {EXHAUSTIVE_CAP}); "
            "use enumerate_legal for longer windows"
        )
    if spec.profile.horizon < length - 1:
        raise InsufficientProfileError(
            f"profile horizon {spec.profile.horizon} < {length - 1}"
        )
    lam, beta = spec.decay_base, spec.zero_run_penalty
    # Scale energies by a common denominator: integer arithmetic only.
    denom = lam.denominator ** max(length - 1, 1) * beta.denominator
    weights = []
    for j in sorted(spec.profile.forbidden):
        if j >= length:
            break
        weights.append((j, lam.numerator**j * lam.denominator ** (length - 1 - j) * beta.denominator))
    wbeta = beta.numerator * lam.denominator ** max(length - 1, 1)
    total = 1 << length
    if workers <= 1:
        chunks = [(length, weights, wbeta, spec.zero_run_len, spec.profile, 0, total)]
        results = [_scan_chunk(chunks[0])]
    else:
        bounds = [total * k // workers for k in range(workers + 1)]
        chunks = [
            (length, weights, wbeta, spec.zero_run_len, spec.profile, lo, hi)
            for lo, hi in zip(bounds, bounds[1:])
            if lo < hi
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, chunks))
    best = min(b for b, _, _ in results if b is not None)
    argmin = sorted(x for b, xs, _ in results if b == best for x in xs)
    legal = sorted(x for _, _, xs in results for x in xs)
    min_energy = Fraction(best, denom)
    if min_energy != 0:
        raise InternalConsistencyError(f"minimum energy {min_energy} is not zero")
    if argmin != legal:
        raise InternalConsistencyError(
            "zero-energy configurations differ from locally legal ones"
        )
    words = frozenset(_config_word(x, length) for x in argmin)
    return GroundStateResult(min_energy, words, total)


@dataclass(frozen=True)
class PeriodicDensity:
    """Certified bounds on the energy per site of a periodic repetition."""

    lower_bound: Fraction
    value_estimate: Fraction
    #: distance at which the coupling tail was cut
    truncation: int


def periodic_energy_density(
    period_word: Word, spec: InteractionSpec, tail_tol: Fraction = Fraction(1, 10**12)
) -> PeriodicDensity:
    """Energy per site of the bi-infinite repetition of period_word.

    The coupling tail past the truncation distance is dropped; every term
    is nonnegative, so the truncated sum is a certified lower bound, and
    adding the geometric tail bound per particle gives the estimate.
    """
    p = len(period_word)
    if p < 1:
        raise ValueError("need a nonempty period word")
    tail_tol = Fraction(tail_tol)
    if tail_tol <= 0:
        raise ValueError("tail tolerance must be positive")
    lam, beta = spec.decay_base, spec.zero_run_penalty
    # smallest T with lam**(T+1)/(1-lam) < tail_tol
    tail = lam / (1 - lam)
    trunc = 0
    while tail >= tail_tol:
        tail *= lam
        trunc += 1
    profile = ensure_horizon(spec.profile, max(trunc, spec.profile.horizon))
    bits = period_word.bits()
    ones = [k for k, b in enumerate(bits) if b]
    run_len = spec.zero_run_len
    runs = sum(
        1
        for i in range(p)
        if all(bits[(i + s) % p] == 0 for s in range(run_len))
    )
    pair_sum = Fraction(0)
    power = Fraction(1)
    for j in range(1, trunc + 1):
        power *= lam
        if j in profile.forbidden:
            hits = sum(1 for i in ones if bits[(i + j) % p])
            if hits:
                pair_sum += hits * power
    lower = (pair_sum + beta * runs) / p
    estimate = lower + Fraction(len(ones), p) * tail
    return PeriodicDensity(lower, estimate, trunc)
