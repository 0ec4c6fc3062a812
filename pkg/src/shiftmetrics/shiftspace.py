"""Shift spaces over a finite alphabet and their finite-window points.

A space is either the full shift on M symbols or a subshift of finite type
given by an M x M transition matrix of 0/1 entries (entry (i, j) = 1 allows
the word ij).  States that cannot be extended bi-infinitely are trimmed at
construction, so every admissible word of a live space occurs in some point.

Points carry a finite symmetric window [-H, H]; everything downstream
(distances, cylinders, masses) is computed from windows and reports
saturation when a window is too short to decide a question.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AllStatesDead,
    BadMatrix,
    HorizonExceeded,
    InadmissibleWord,
    NoConvergence,
)


@dataclass(frozen=True)
class Word:
    """A finite admissible word anchored at an absolute index.

    ``symbols[t]`` is the symbol at coordinate ``anchor + t``.
    """

    symbols: tuple[int, ...]
    anchor: int

    def __len__(self) -> int:
        return len(self.symbols)


class ShiftSpace:
    """Full M-shift or 0/1-transition subshift with dead states trimmed."""

    def __init__(self, alphabet_size: int, transition=None):
        if not isinstance(alphabet_size, int) or alphabet_size < 1:
            raise BadMatrix(f"alphabet size must be a positive integer, got {alphabet_size!r}")
        self.alphabet_size = alphabet_size
        if transition is None:
            self.transition = None
            self.alive_states = tuple(range(alphabet_size))
        else:
            mat = np.asarray(transition)
            if mat.ndim != 2 or mat.shape != (alphabet_size, alphabet_size):
                raise BadMatrix(
                    f"transition must be {alphabet_size}x{alphabet_size}, got shape {mat.shape}"
                )
            if not np.isin(mat, (0, 1)).all():
                raise BadMatrix("transition entries must be 0 or 1")
            self.transition = mat.astype(np.int64)
            self.alive_states = self._trim(self.transition)
            if not self.alive_states:
                raise AllStatesDead("every state was trimmed; the subshift is empty")
        alive = list(self.alive_states)
        self._alive_pos = {s: i for i, s in enumerate(alive)}
        if self.transition is None:
            self._out = {s: tuple(alive) for s in alive}
            self._in = {s: tuple(alive) for s in alive}
            self._sub = None
        else:
            self._out = {
                s: tuple(t for t in alive if self.transition[s, t]) for s in alive
            }
            self._in = {
                t: tuple(s for s in alive if self.transition[s, t]) for t in alive
            }
            # exact integer copy for arbitrary-precision word counts
            self._sub = [[int(self.transition[s, t]) for t in alive] for s in alive]

    @staticmethod
    def _trim(mat: np.ndarray) -> tuple[int, ...]:
        alive = set(range(mat.shape[0]))
        changed = True
        while changed:
            changed = False
            for s in list(alive):
                has_out = any(mat[s, t] for t in alive)
                has_in = any(mat[t, s] for t in alive)
                if not (has_out and has_in):
                    alive.discard(s)
                    changed = True
        return tuple(sorted(alive))

    @property
    def is_full(self) -> bool:
        return self.transition is None

    def _key(self):
        tbytes = None if self.transition is None else self.transition.tobytes()
        return (self.alphabet_size, tbytes)

    def __eq__(self, other) -> bool:
        return isinstance(other, ShiftSpace) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        kind = "full" if self.is_full else "sft"
        return f"ShiftSpace({kind}, M={self.alphabet_size}, alive={len(self.alive_states)})"

    def allows(self, i: int, j: int) -> bool:
        """True when the two-letter word ij is admissible among alive states."""
        if i not in self._alive_pos or j not in self._alive_pos:
            return False
        if self.transition is None:
            return True
        return bool(self.transition[i, j])

    def out_symbols(self, s: int) -> tuple[int, ...]:
        return self._out[s]

    def in_symbols(self, s: int) -> tuple[int, ...]:
        return self._in[s]

    def is_admissible(self, symbols: Sequence[int]) -> bool:
        """Check alphabet range, aliveness, and every length-2 factor."""
        seq = list(symbols)
        if any((not isinstance(int(c), int)) or c < 0 or c >= self.alphabet_size for c in seq):
            return False
        if any(c not in self._alive_pos for c in seq):
            return False
        return all(self.allows(seq[t], seq[t + 1]) for t in range(len(seq) - 1))

    def require_admissible(self, symbols: Sequence[int]) -> None:
        if not self.is_admissible(symbols):
            raise InadmissibleWord(f"word {list(symbols)!r} is not admissible in {self!r}")


@dataclass(frozen=True, eq=False)
class Point:
    """Finite-window point: coordinates -horizon..horizon are known.

    The backing array is shared between a point and its shifts; treat it as
    read-only.  ``symbols[center + t]`` holds coordinate ``t``.
    """

    space: ShiftSpace
    symbols: np.ndarray
    center: int
    horizon: int

    def __getitem__(self, t: int) -> int:
        if abs(t) > self.horizon:
            raise HorizonExceeded(f"coordinate {t} outside window [-{self.horizon}, {self.horizon}]")
        return int(self.symbols[self.center + t])

    def window(self, lo: int | None = None, hi: int | None = None) -> np.ndarray:
        """Read-only view of coordinates lo..hi (defaults: the full window)."""
        lo = -self.horizon if lo is None else lo
        hi = self.horizon if hi is None else hi
        if lo < -self.horizon or hi > self.horizon or lo > hi:
            raise HorizonExceeded(
                f"window [{lo}, {hi}] outside available [-{self.horizon}, {self.horizon}]"
            )
        return self.symbols[self.center + lo : self.center + hi + 1]

    def word(self, lo: int, hi: int) -> Word:
        return Word(tuple(int(c) for c in self.window(lo, hi)), lo)

    def agrees_with(self, other: "Point", lo: int, hi: int) -> bool:
        return bool(np.array_equal(self.window(lo, hi), other.window(lo, hi)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return (
            self.space == other.space
            and self.horizon == other.horizon
            and np.array_equal(self.window(), other.window())
        )

    def __hash__(self) -> int:
        return hash((self.horizon, self.window().tobytes()))

    def __repr__(self) -> str:
        if self.horizon <= 8:
            inner = "".join(str(int(c)) for c in self.window())
        else:
            head = "".join(str(int(c)) for c in self.window(-4, 4))
            inner = f"...{head}..."
        return f"Point(H={self.horizon}, {inner})"


def make_space(alphabet_size: int, transition=None) -> ShiftSpace:
    """Build a full shift (``transition=None``) or a subshift of finite type."""
    return ShiftSpace(alphabet_size, transition)


def _mat_mul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Oi = out[i]
        for k in range(n):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(n):
                    Oi[j] += a * Bk[j]
    return out


def _mat_pow(A: list[list[int]], e: int) -> list[list[int]]:
    n = len(A)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = [row[:] for row in A]
    while e > 0:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        e >>= 1
    return result


def count_words(space: ShiftSpace, length: int) -> int:
    """Exact number of admissible words of the given length (arbitrary precision).

    Uses integer transfer-matrix powers restricted to alive states, so the
    result is exact for any length.
    """
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    if length == 0:
        return 1
    n_alive = len(space.alive_states)
    if space.is_full:
        return space.alphabet_size**length
    if length == 1:
        return n_alive
    P = _mat_pow(space._sub, length - 1)
    return sum(sum(row) for row in P)


def top_entropy_oracle(space: ShiftSpace, tol: float = 1e-12, max_iter: int = 200_000) -> float:
    """Topological entropy: log of the transfer-matrix spectral radius.

    Full shifts return ln(M) directly.  For a subshift the spectral radius of
    the trimmed matrix T is found by power iteration on T + I (the diagonal
    shift removes periodicity without moving the leading eigenvector) to a
    relative tolerance, then shifted back.

    Raises
    ------
    NoConvergence
        If the iteration cap is reached before two successive eigenvalue
        estimates agree to ``tol`` (pathological/degenerate matrix).
    """
    if space.is_full:
        return math.log(space.alphabet_size)
    A = np.array(space._sub, dtype=float) + np.eye(len(space.alive_states))
    v = np.ones(A.shape[0])
    v /= v.sum()
    lam_prev = None
    for it in range(max_iter):
        w = A @ v
        lam = w.sum() / v.sum()
        v = w / w.sum()
        if lam_prev is not None and abs(lam - lam_prev) <= tol * abs(lam) and it >= 5:
            return math.log(lam - 1.0)
        lam_prev = lam
    raise NoConvergence(
        f"power iteration did not reach rel tol {tol} in {max_iter} iterations; last={lam_prev}"
    )


def point_from_window(space: ShiftSpace, symbols: Sequence[int]) -> Point:
    """Build a point from an odd-length window centered at coordinate 0."""
    seq = [int(c) for c in symbols]
    if len(seq) % 2 != 1:
        raise HorizonExceeded(f"window length must be odd, got {len(seq)}")
    space.require_admissible(seq)
    arr = np.array(seq, dtype=np.int64)
    arr.setflags(write=False)
    h = (len(seq) - 1) // 2
    return Point(space, arr, h, h)


def sample_point(space: ShiftSpace, horizon: int, seed: int) -> Point:
    """Seeded admissible point: uniform start, then uniform random walks
    forward over out-edges and backward over in-edges."""
    if horizon < 0:
        raise HorizonExceeded(f"horizon must be >= 0, got {horizon}")
    rng = np.random.default_rng(seed)
    n = 2 * horizon + 1
    u = rng.random(n + 1)
    alive = space.alive_states
    buf = [0] * n
    buf[horizon] = alive[int(u[0] * len(alive))]
    for t in range(1, horizon + 1):
        choices = space.out_symbols(buf[horizon + t - 1])
        buf[horizon + t] = choices[int(u[t] * len(choices))]
    for t in range(1, horizon + 1):
        choices = space.in_symbols(buf[horizon - t + 1])
        buf[horizon - t] = choices[int(u[horizon + t] * len(choices))]
    arr = np.array(buf, dtype=np.int64)
    arr.setflags(write=False)
    return Point(space, arr, horizon, horizon)


def shift_point(x: Point, i: int) -> Point:
    """Apply the shift map i times: new coordinate t holds old coordinate t + i.

    The window shrinks by |i| on both sides; shifting past the horizon raises
    ``HorizonExceeded``.
    """
    new_h = x.horizon - abs(i)
    if new_h < 0:
        raise HorizonExceeded(
            f"shift by {i} needs symbols beyond the horizon {x.horizon}"
        )
    return Point(x.space, x.symbols, x.center + i, new_h)
