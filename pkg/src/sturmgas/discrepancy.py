"""Word frequencies as exact arc lengths, and segment-count deviation bounds.

Every length-n word that occurs corresponds to one arc of the circle cut
at the rotation preimages of the two coding boundaries; its frequency is
the exact arc length.  Deviation maxima over segments are computed with
integer prefix counts and compared exactly, so "the bound stopped growing"
is an exact statement, not a float coincidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AmbiguousCodingError, InvalidRotationError
from .exact_angle import QI_ZERO, QuadIrrational, RotationParams, rotate
from .sturmian_gen import Word, generate


@dataclass(frozen=True)
class ComponentIntervals:
    """The n+1 arcs whose visits spell out the length-n words.

    cuts are the sorted arc endpoints; interval k is [cuts[k], cuts[k+1])
    with the last one wrapping to cuts[0] + 1.  words[k] labels interval k.
    """

    n: int
    cuts: tuple[QuadIrrational, ...]
    intervals: tuple[tuple[QuadIrrational, QuadIrrational], ...]
    words: tuple[Word, ...]

    def length_of(self, w: Word) -> Optional[QuadIrrational]:
        for (lo, hi), label in zip(self.intervals, self.words):
            if label == w:
                return hi - lo
        return None

    def word_map(self) -> dict[Word, tuple[QuadIrrational, QuadIrrational]]:
        return dict(zip(self.words, self.intervals))


def component_intervals(params: RotationParams, n: int) -> ComponentIntervals:
    """Cut the circle at the preimages of both coding boundaries.

    The boundaries {0, gamma} pulled back through offsets 0..n-1 give the
    points frac(m * gamma) for m in [-(n-1), 1]; there are n + 1 of them,
    and each resulting arc is labeled by coding one interior sample.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    g = params.gamma
    cuts = [rotate(QI_ZERO, g, m) for m in range(-(n - 1), 2)]
    cuts.sort()
    for u, v in zip(cuts, cuts[1:]):
        if u == v:
            raise InvalidRotationError(
                "duplicate cut points; the rotation angle is not irrational"
            )
    pairs = [(cuts[k], cuts[k + 1]) for k in range(len(cuts) - 1)]
    pairs.append((cuts[-1], cuts[0] + 1))
    boundary = (QI_ZERO, g)
    words = []
    for lo, hi in pairs:
        sample = ((lo + hi) / 2).frac()
        symbols = []
        for k in range(n):
            point = rotate(sample, g, k)
            if point in boundary:
                raise AmbiguousCodingError(
                    "interior sample landed on a coding boundary"
                )
            symbols.append("0" if point < g else "1")
        words.append(Word("".join(symbols)))
    if len(set(words)) != n + 1:
        raise InvalidRotationError("arc labels are not pairwise distinct")
    return ComponentIntervals(n, tuple(cuts), tuple(pairs), tuple(words))


def frequency(params: RotationParams, w: Word) -> QuadIrrational:
    """Exact occurrence frequency of w; zero when w never occurs."""
    if len(w) < 1:
        raise ValueError("need a nonempty word")
    length = component_intervals(params, len(w)).length_of(w)
    return length if length is not None else QI_ZERO


def count_occurrences(x: Word, w: Word) -> int:
    """Occurrences of w in x, overlaps included; 0 when w is longer than x."""
    if len(w) == 0:
        raise ValueError("need a nonempty pattern")
    if len(w) > len(x):
        return 0
    count = 0
    pos = x.symbols.find(w.symbols)
    while pos != -1:
        count += 1
        pos = x.symbols.find(w.symbols, pos + 1)
    return count


@dataclass(frozen=True)
class DiscrepancyReport:
    """Deviation maxima |count - frequency * |A|| over sampled segments A."""

    word: Word
    frequency: QuadIrrational
    #: exact maximal deviation over segments of length <= the requested horizon
    max_dev: QuadIrrational
    #: the same maximum after doubling the length horizon
    c_w_estimate: QuadIrrational
    #: True when doubling the horizon did not grow the maximum
    stabilized: bool
    segments_tested: str


def strict_boundary_check(
    params: RotationParams,
    w: Word,
    max_len: int,
    trials: Optional[int] = None,
) -> DiscrepancyReport:
    """Exact deviation maxima over segments of a window of length 2*max_len.

    Scans every offset at each sampled segment length (all lengths by
    default, or `trials` evenly spaced ones) at two horizons, max_len and
    2*max_len, and reports whether the maximum grew between them; a flat
    maximum is the boundedness evidence this check exists to collect.
    """
    m = len(w)
    if m < 1:
        raise ValueError("need a nonempty word")
    if max_len < m:
        raise ValueError(f"max_len {max_len} below word length {m}")
    window = 2 * max_len
    x = generate(params, 0, window - 1)
    xi = frequency(params, w)

    slots = window - m + 1
    occ = np.zeros(slots, dtype=np.int64)
    start = x.symbols.find(w.symbols)
    while start != -1:
        occ[start] = 1
        start = x.symbols.find(w.symbols, start + 1)
    prefix = np.zeros(slots + 1, dtype=np.int64)
    np.cumsum(occ, out=prefix[1:])

    lengths = range(m, window + 1)
    if trials is not None and trials < len(lengths):
        idx = np.unique(np.linspace(0, len(lengths) - 1, trials).astype(int))
        lengths = [m + int(i) for i in idx]
        plan = f"{len(lengths)} sampled lengths in [{m}, {window}], all offsets"
    else:
        plan = f"all lengths in [{m}, {window}], all offsets"

    best: Optional[QuadIrrational] = None  # horizon max_len
    best2: Optional[QuadIrrational] = None  # horizon 2 * max_len
    if m > 1:
        # Segments shorter than the word hold zero occurrences, so their
        # deviation is frequency * length, largest at length m - 1.
        best = best2 = xi * (m - 1)
    for L in lengths:
        k = L - m + 1
        counts = prefix[k : slots + 1] - prefix[: slots + 1 - k]
        expected = xi * L
        dev_hi = int(counts.max()) - expected
        dev_lo = expected - int(counts.min())
        dev = dev_hi if dev_hi > dev_lo else dev_lo
        if best2 is None or dev > best2:
            best2 = dev
        if L <= max_len and (best is None or dev > best):
            best = dev
    assert best is not None and best2 is not None
    return DiscrepancyReport(
        word=w,
        frequency=xi,
        max_dev=best,
        c_w_estimate=best2,
        stabilized=best == best2,
        segments_tested=f"window [0, {window}), {plan}, horizons {max_len} and {window}",
    )
