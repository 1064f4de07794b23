"""Local legality under the forbidden-pattern set, and its consequences.

A word is locally legal when it has no run of d1+1 zeros and no pair of
1's at a forbidden distance.  Enumeration with these two rejection rules,
extension-stabilized, reproduces exactly the factors of the rotation
coding; periodic contents always trip a forbidden multiple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InconclusiveError, InsufficientProfileError
from .order_analysis import DistanceProfile, ensure_horizon
from .sturmian_gen import Word


@dataclass(frozen=True)
class Violation:
    kind: str  # "zero_run" | "forbidden_pair"
    position: int  # lattice index where the offending pattern starts
    distance: Optional[int] = None  # for forbidden_pair


@dataclass(frozen=True)
class LegalityVerdict:
    legal: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.legal


def is_locally_legal(w: Word, profile: DistanceProfile) -> LegalityVerdict:
    """Check w against the zero-run bound and the forbidden distances.

    The profile must classify every in-window distance, i.e. its horizon
    must reach |w| - 1.  The reported violation is the position-first one.
    """
    if len(w) - 1 > profile.horizon:
        raise InsufficientProfileError(
            f"profile horizon {profile.horizon} < window span {len(w) - 1}"
        )
    run_len = (profile.d[0] if profile.d else profile.horizon) + 1
    zr_pos = w.symbols.find("0" * run_len)
    ones = [k for k, ch in enumerate(w.symbols) if ch == "1"]
    pair: Optional[tuple[int, int]] = None
    for a_idx, a in enumerate(ones):
        for b in ones[a_idx + 1 :]:
            if b - a in profile.forbidden:
                pair = (a, b - a)
                break
        if pair is not None:
            break
    if zr_pos == -1 and pair is None:
        return LegalityVerdict(True)
    if pair is None or (zr_pos != -1 and zr_pos < pair[0]):
        return LegalityVerdict(False, Violation("zero_run", w.origin + zr_pos))
    return LegalityVerdict(
        False, Violation("forbidden_pair", w.origin + pair[0], pair[1])
    )


def enumerate_legal(
    n: int, big_m: int, profile: DistanceProfile, budget: int = 10_000_000
) -> set[Word]:
    """Length-n words appearing centrally in some legal word of length big_m.

    Depth-first extension with rejection at the first violation; the
    search is exact, and exceeding the node budget raises with the partial
    result rather than returning it silently.
    """
    if n < 1 or big_m < n:
        raise ValueError("need 1 <= n <= big_m")
    if profile.horizon < big_m - 1:
        raise InsufficientProfileError(
            f"profile horizon {profile.horizon} < {big_m - 1}"
        )
    if not profile.d:
        raise InsufficientProfileError("profile lists no allowed distance")
    run_cap = profile.d[0] + 1
    forbidden = profile.forbidden
    pad = (big_m - n) // 2
    found: set[Word] = set()
    symbols: list[str] = []
    ones: list[int] = []
    visited = 0

    def extend(depth: int, zero_run: int) -> None:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise InconclusiveError(
                f"search budget {budget} exceeded at length {big_m}",
                partial=set(found),
                length_reached=big_m,
            )
        if depth == big_m:
            found.add(Word("".join(symbols[pad : pad + n])))
            return
        if zero_run < run_cap - 1:
            symbols.append("0")
            extend(depth + 1, zero_run + 1)
            symbols.pop()
        if all(depth - a not in forbidden for a in ones):
            symbols.append("1")
            ones.append(depth)
            extend(depth + 1, 0)
            ones.pop()
            symbols.pop()

    extend(0, 0)
    return found


def enumerate_legal_stable(
    n: int,
    profile: DistanceProfile,
    start_m: Optional[int] = None,
    max_m: int = 4096,
    budget: int = 10_000_000,
) -> tuple[set[Word], int]:
    """Grow the enclosing length until the central set survives two doublings.

    Returns (stable set, enclosing length at which it first appeared).
    The set is non-increasing in the enclosing length, so agreement across
    two doublings is meaningful stabilization evidence.
    """
    m = start_m if start_m is not None else max(2 * n, 8)
    profile = ensure_horizon(profile, min(4 * m, max_m) - 1)
    cur = enumerate_legal(n, m, profile, budget)
    while True:
        if 4 * m > max_m:
            raise InconclusiveError(
                f"no stabilization below enclosing-length cap {max_m}",
                length_reached=m,
            )
        profile = ensure_horizon(profile, 4 * m - 1)
        step = enumerate_legal(n, 2 * m, profile, budget)
        step2 = enumerate_legal(n, 4 * m, profile, budget)
        if cur == step == step2:
            return cur, m
        cur, m = step2, 4 * m


def periodic_exclusion(
    p: int, profile: DistanceProfile, horizon_cap: int = 100_000
) -> int:
    """Smallest i >= 1 with i*p a forbidden distance.

    Grows the profile horizon geometrically when multiples of p outrun it;
    hitting the cap raises instead of claiming no such i exists.
    """
    if p < 1:
        raise ValueError("period must be >= 1")
    i = 1
    while True:
        while i * p > profile.horizon:
            if profile.horizon >= horizon_cap:
                raise InconclusiveError(
                    f"no forbidden multiple of {p} found below horizon cap "
                    f"{horizon_cap}",
                    period=p,
                    horizon_reached=profile.horizon,
                )
            profile = ensure_horizon(profile, min(2 * profile.horizon, horizon_cap))
        if i * p in profile.forbidden:
            return i
        i += 1


@dataclass(frozen=True)
class FactVerdict:
    holds: bool
    #: one entry per counterexample found; empty when the check holds
    witnesses: tuple[tuple, ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def _rank_of_allowed(profile: DistanceProfile) -> dict[int, int]:
    # d values are >= 2 apart, so d_r and d_r + 1 never collide across ranks.
    rank: dict[int, int] = {}
    for r, dv in enumerate(profile.d, start=1):
        rank[dv] = r
        rank[dv + 1] = r
    return rank


def check_enclosed_ones(w: Word, profile: DistanceProfile) -> FactVerdict:
    """Pairs of 1's at a rank-r allowed distance must enclose exactly r-1 1's.

    Witnesses are (position_pair, distance, expected_enclosed, actual).
    Requires a locally legal word; on an illegal word the question is not
    well-posed and a ValueError is raised.
    """
    verdict = is_locally_legal(w, profile)
    if not verdict.legal:
        raise ValueError(f"word is not locally legal: {verdict.violation}")
    rank = _rank_of_allowed(profile)
    ones = [k for k, ch in enumerate(w.symbols) if ch == "1"]
    witnesses = []
    for i, a in enumerate(ones):
        for k in range(i + 1, len(ones)):
            dist = ones[k] - a
            if dist > profile.horizon:
                break
            r = rank.get(dist)
            if r is None:
                continue  # cannot happen on a legal word; guarded anyway
            enclosed = k - i - 1
            if enclosed != r - 1:
                witnesses.append(
                    ((w.origin + a, w.origin + ones[k]), dist, r - 1, enclosed)
                )
    return FactVerdict(not witnesses, tuple(witnesses))


def check_follower_ones(w: Word, profile: DistanceProfile) -> FactVerdict:
    """Each 1 must see a 1 at distance d_r or d_r + 1 for every in-window rank.

    Ranks whose d_r + 1 reaches past the window end are skipped, not
    failed.  Witnesses are (position, rank, d_r).  The property always
    holds for legal words, so witnesses point at corrupted input; no
    legality guard is applied, which lets the check localize the damage.
    """
    witnesses = []
    length = len(w)
    for a in (k for k, ch in enumerate(w.symbols) if ch == "1"):
        for r, dv in enumerate(profile.d, start=1):
            if a + dv + 1 >= length:
                break
            if w.symbols[a + dv] != "1" and w.symbols[a + dv + 1] != "1":
                witnesses.append((w.origin + a, r, dv))
    return FactVerdict(not witnesses, tuple(witnesses))
