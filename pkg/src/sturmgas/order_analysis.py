"""Window-level order diagnostics: factor complexity, balance, homogeneity.

All three deciders certify properties of the finite window they are
given.  Claims about infinite sequences are only ever approximated by
growing windows until the answer is stable under doubling, and growth
caps fail loudly instead of returning a silently wrong verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    InconclusiveError,
    InsufficientProfileError,
    InternalConsistencyError,
    UndecidableWindowError,
)
from .exact_angle import QI_ZERO, RotationParams
from .sturmian_gen import Word, generate


def _bits(w: Word) -> np.ndarray:
    return np.frombuffer(w.symbols.encode(), dtype=np.uint8) - ord("0")


# ---------------------------------------------------------------------------
# factor complexity


def factor_set(w: Word, n: int) -> set[Word]:
    """All distinct length-n contiguous subwords of w."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    if n > len(w):
        raise ValueError(f"factor length {n} exceeds window length {len(w)}")
    s = w.symbols
    return {Word(s[i : i + n], w.origin + i) for i in range(len(s) - n + 1)}


@dataclass(frozen=True)
class ComplexityReport:
    """Distinct-factor counts p[n] measured on a stabilized window."""

    p: dict[int, int]
    window_len: int


def factor_complexity(
    params: RotationParams,
    n_max: int,
    start_len: int = 64,
    cap: int = 1 << 16,
) -> ComplexityReport:
    """Count distinct factors per length, growing the window until stable.

    The window doubles until every count for n <= n_max is unchanged by a
    further doubling; hitting the cap without stabilizing raises rather
    than reporting a possibly-too-small count.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    win = max(start_len, 4 * n_max)
    prev: Optional[dict[int, int]] = None
    while win <= cap:
        w = generate(params, 0, win - 1)
        counts = {n: len(factor_set(w, n)) for n in range(1, n_max + 1)}
        if prev == counts:
            return ComplexityReport(counts, win)
        prev = counts
        win *= 2
    raise InconclusiveError(
        f"factor counts did not stabilize below window cap {cap}", cap=cap, last=prev
    )


# ---------------------------------------------------------------------------
# balance


@dataclass(frozen=True)
class BalanceVerdict:
    balanced: bool
    #: two equal-length factors whose 1-counts differ by >= 2, if any
    witness: Optional[tuple[Word, Word]] = None

    def __bool__(self) -> bool:
        return self.balanced


def is_balanced(w: Word) -> BalanceVerdict:
    """Check every factor length for 1-count spread <= 1.

    Sliding-window extrema per length; the witness pairs the lowest- and
    highest-count factors of the first offending length.
    """
    n = len(w)
    if n <= 1:
        return BalanceVerdict(True)
    prefix = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(_bits(w), out=prefix[1:])
    for m in range(1, n):
        sums = prefix[m:] - prefix[:-m]
        lo = int(np.argmin(sums))
        hi = int(np.argmax(sums))
        if sums[hi] - sums[lo] >= 2:
            return BalanceVerdict(
                False,
                (
                    Word(w.symbols[lo : lo + m], w.origin + lo),
                    Word(w.symbols[hi : hi + m], w.origin + hi),
                ),
            )
    return BalanceVerdict(True)


# ---------------------------------------------------------------------------
# homogeneity


@dataclass(frozen=True)
class HomogeneityVerdict:
    homogeneous: bool
    #: inferred minimal span per rank: rank j -> m_j, gaps seen in {m_j, m_j+1}
    gap_map: Optional[dict[int, int]] = None
    #: offending rank plus the two particle pairs exhibiting spread >= 2
    witness: Optional[tuple[int, tuple[int, int], tuple[int, int]]] = None

    def __bool__(self) -> bool:
        return self.homogeneous


def is_most_homogeneous(w: Word) -> HomogeneityVerdict:
    """Check that rank-j particle spacings take at most two adjacent values.

    For each j, the distances between 1's with j-1 intermediate 1's must
    all lie in {m_j, m_j + 1}; a refuting rank is returned with the two
    extreme pairs (by lattice position).
    """
    ones = np.flatnonzero(_bits(w))
    if len(ones) < 2:
        raise UndecidableWindowError("need at least two 1's to assess spacings")
    gap_map: dict[int, int] = {}
    for j in range(1, len(ones)):
        diffs = ones[j:] - ones[:-j]
        lo = int(np.argmin(diffs))
        hi = int(np.argmax(diffs))
        if diffs[hi] - diffs[lo] >= 2:
            base = w.origin
            return HomogeneityVerdict(
                False,
                None,
                (
                    j,
                    (base + int(ones[lo]), base + int(ones[lo + j])),
                    (base + int(ones[hi]), base + int(ones[hi + j])),
                ),
            )
        gap_map[j] = int(diffs[lo])
    return HomogeneityVerdict(True, gap_map)


# ---------------------------------------------------------------------------
# distance profile


@dataclass(frozen=True)
class DistanceProfile:
    """The increasing spacing sequence d with its allowed/forbidden split.

    Complete for distances <= horizon: allowed is the union of {d_j, d_j+1}
    clipped to [1, horizon], forbidden the complement.
    """

    d: tuple[int, ...]
    horizon: int
    allowed: frozenset[int]
    forbidden: frozenset[int]
    #: rotation that produced the profile; lets horizon-growing operations
    #: recompute it (absent for hand-built or deserialized profiles)
    params: Optional[RotationParams] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        full = set(range(1, self.horizon + 1))
        if set(self.allowed) | set(self.forbidden) != full or set(self.allowed) & set(
            self.forbidden
        ):
            raise ValueError("allowed and forbidden must partition [1, horizon]")

    @property
    def d1(self) -> int:
        if not self.d:
            raise ValueError("empty profile has no first distance")
        return self.d[0]

    def check_increments(self) -> None:
        """Increments of d must be d1 or d1 + 1; anything else is corrupt."""
        for prev, nxt in zip(self.d, self.d[1:]):
            if nxt - prev not in (self.d1, self.d1 + 1):
                raise InternalConsistencyError(
                    f"spacing step {nxt - prev} between {prev} and {nxt} "
                    f"is not {self.d1} or {self.d1 + 1}"
                )

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": list(self.d),
                "allowed": sorted(self.allowed),
                "forbidden": sorted(self.forbidden),
                "horizon": self.horizon,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "DistanceProfile":
        obj = json.loads(text)
        return cls(
            tuple(obj["d"]),
            int(obj["horizon"]),
            frozenset(obj["allowed"]),
            frozenset(obj["forbidden"]),
        )


def ensure_horizon(profile: DistanceProfile, needed: int) -> DistanceProfile:
    """Return a profile covering distances up to needed, regrowing if possible."""
    if profile.horizon >= needed:
        return profile
    if profile.params is None:
        raise InsufficientProfileError(
            f"profile horizon {profile.horizon} < {needed} and no rotation "
            "is attached to regrow it"
        )
    return distance_profile(profile.params, needed)


def distance_profile(params: RotationParams, horizon: int) -> DistanceProfile:
    """Read the spacing sequence off the phase-0 coding of params' angle.

    The phase-0 word starts 0,1 and the j-th subsequent 1 at position p
    contributes d_j = p - 1; the profile depends on the angle only.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    base = RotationParams(params.gamma, QI_ZERO)
    w = generate(base, 1, horizon + 2)
    ones = w.one_positions()
    if not ones or ones[0] != 1:
        raise InternalConsistencyError("phase-0 coding must carry a 1 at position 1")
    d = tuple(p - 1 for p in ones[1:] if p - 1 <= horizon)
    if d and d[0] < 2:
        raise InternalConsistencyError(f"first distance {d[0]} < 2")
    allowed = frozenset(
        x for dj in d for x in (dj, dj + 1) if 1 <= x <= horizon
    )
    forbidden = frozenset(range(1, horizon + 1)) - allowed
    profile = DistanceProfile(d, horizon, allowed, forbidden, params=base)
    profile.check_increments()
    return profile


# ---------------------------------------------------------------------------
# profile structure


@dataclass(frozen=True)
class ProfileStructure:
    """Block/singleton classification of the d-sequence."""

    #: maximal runs of d-values at consecutive difference exactly 2
    blocks: tuple[tuple[int, ...], ...]
    #: d value -> "singleton" | "block"
    classification: dict[int, str]


def profile_structure(profile: DistanceProfile) -> ProfileStructure:
    """Group d-values into difference-2 blocks and check the forced shape.

    Blocks of size > 1 may occur only when d1 = 2, and for every d-value
    at least one of d-1, d+2 must be forbidden (checked where the profile
    horizon can classify them).
    """
    d = profile.d
    if not d:
        return ProfileStructure((), {})
    profile.check_increments()
    blocks: list[list[int]] = [[d[0]]]
    for prev, nxt in zip(d, d[1:]):
        if nxt - prev == 2:
            blocks[-1].append(nxt)
        else:
            blocks.append([nxt])
    classification = {
        v: ("singleton" if len(blk) == 1 else "block") for blk in blocks for v in blk
    }
    if profile.d1 > 2 and any(len(blk) > 1 for blk in blocks):
        raise InternalConsistencyError(
            "difference-2 blocks found although the first distance exceeds 2"
        )
    for v in d:
        neighbors = [x for x in (v - 1, v + 2) if 1 <= x <= profile.horizon]
        if neighbors and not any(x in profile.forbidden for x in neighbors):
            raise InternalConsistencyError(
                f"neither {v - 1} nor {v + 2} is forbidden around distance {v}"
            )
    return ProfileStructure(tuple(tuple(b) for b in blocks), classification)
