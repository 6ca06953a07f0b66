"""State representation and unitary operators of the lackadaisical coined walk.

The walker lives on an n x n torus where every vertex carries four movement
edges plus one weighted self-loop, so the state is a real vector with one
amplitude per (vertex, direction) pair.  All operators here (diffusion coin,
flip-flop shift, both query oracles) are real orthogonal matrices and the
start state is real, so amplitudes stay real throughout the evolution; the
complex eigen-machinery lives in :mod:`lackwalk.spectral` alone.

Layout is vertex-major, direction-minor: flat index ``5 * v + d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import lru_cache

import numpy as np

from . import kernels

N_DIRECTIONS = 5


class Direction(IntEnum):
    """Coin directions in their fixed index order."""

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3
    SELF_LOOP = 4

    def reverse(self) -> "Direction":
        """Opposite movement direction; the self-loop is its own reverse."""
        return _REVERSE[self]


_REVERSE = {
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.SELF_LOOP: Direction.SELF_LOOP,
}


class Oracle(str, Enum):
    """Which query is folded into each walk step."""

    NONE = "none"
    GROVER = "grover"
    SKW = "skw"


_ORACLE_CODES = {
    Oracle.NONE: kernels.ORACLE_NONE,
    Oracle.GROVER: kernels.ORACLE_GROVER,
    Oracle.SKW: kernels.ORACLE_SKW,
}


@dataclass(frozen=True)
class GridGeometry:
    """An n x n torus with periodic boundaries, n >= 2.

    Vertices are indexed row-major: ``v = row * side + col``.
    """

    side: int

    def __post_init__(self) -> None:
        side = int(self.side)
        if side != self.side or side < 2:
            raise ValueError(f"grid side must be an integer >= 2, got {self.side!r}")
        object.__setattr__(self, "side", side)

    @property
    def n_vertices(self) -> int:
        return self.side * self.side

    @property
    def state_size(self) -> int:
        return N_DIRECTIONS * self.n_vertices

    def vertex_index(self, row: int, col: int) -> int:
        return (row % self.side) * self.side + (col % self.side)

    def coords(self, vertex: int) -> tuple[int, int]:
        return divmod(vertex, self.side)

    def neighbor(self, vertex: int, direction: Direction) -> int:
        """Adjacent vertex in ``direction``; the self-loop stays put.

        Convention: UP decrements the row index modulo n, DOWN increments it,
        LEFT decrements the column, RIGHT increments it.
        """
        row, col = self.coords(vertex)
        d = Direction(direction)
        if d is Direction.UP:
            return self.vertex_index(row - 1, col)
        if d is Direction.DOWN:
            return self.vertex_index(row + 1, col)
        if d is Direction.LEFT:
            return self.vertex_index(row, col - 1)
        if d is Direction.RIGHT:
            return self.vertex_index(row, col + 1)
        return vertex


@dataclass(frozen=True)
class WalkConfig:
    """Full parameterization of one search walk."""

    geometry: GridGeometry
    loop_weight: float = 0.0
    oracle: Oracle = Oracle.NONE
    marked: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "loop_weight", float(self.loop_weight))
        object.__setattr__(self, "oracle", Oracle(self.oracle))
        if not math.isfinite(self.loop_weight) or self.loop_weight < 0.0:
            raise ValueError(f"loop weight must be a finite nonnegative real, got {self.loop_weight!r}")
        if not 0 <= self.marked < self.geometry.n_vertices:
            raise ValueError(
                f"marked vertex {self.marked} out of range for {self.geometry.n_vertices} vertices"
            )


def coin_vector(loop_weight: float) -> np.ndarray:
    """Weighted diffusion axis (1, 1, 1, 1, sqrt(l)) / sqrt(4 + l).

    At l = 0 the self-loop entry is exactly zero and the four movement
    entries reduce to 1/2 each.
    """
    l = float(loop_weight)
    if not math.isfinite(l) or l < 0.0:
        raise ValueError(f"loop weight must be a finite nonnegative real, got {loop_weight!r}")
    coin = np.array([1.0, 1.0, 1.0, 1.0, math.sqrt(l)])
    coin /= math.sqrt(4.0 + l)
    return coin


@lru_cache(maxsize=None)
def _shift_permutation(side: int) -> np.ndarray:
    geometry = GridGeometry(side)
    perm = np.empty(geometry.state_size, dtype=np.int64)
    for v in range(geometry.n_vertices):
        for d in Direction:
            perm[N_DIRECTIONS * v + d] = N_DIRECTIONS * geometry.neighbor(v, d) + d.reverse()
    perm.setflags(write=False)
    return perm


def shift_permutation(geometry: GridGeometry) -> np.ndarray:
    """Self-inverse index permutation realizing the flip-flop shift.

    ``new[i] = old[perm[i]]`` moves the amplitude at (v, d) to
    (neighbor(v, d), reverse(d)) and fixes every self-loop amplitude.
    """
    return _shift_permutation(geometry.side)


@dataclass
class WalkerState:
    """Real amplitude vector over (vertex, direction) pairs, unit norm."""

    amplitudes: np.ndarray
    geometry: GridGeometry

    def __post_init__(self) -> None:
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.float64)
        if amps.shape != (self.geometry.state_size,):
            raise ValueError(
                f"amplitude vector must have shape ({self.geometry.state_size},), got {amps.shape}"
            )
        norm_sq = float(amps @ amps)
        if abs(norm_sq - 1.0) > 1e-6:
            raise ValueError(f"state is not normalized: |amps|^2 = {norm_sq!r}")
        self.amplitudes = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def block(self, vertex: int) -> np.ndarray:
        """View of the five amplitudes at ``vertex`` in Direction order."""
        start = N_DIRECTIONS * vertex
        return self.amplitudes[start : start + N_DIRECTIONS]

    def vertex_probability(self, vertex: int) -> float:
        """Total probability at ``vertex``, all five directions summed."""
        blk = self.block(vertex)
        return float(blk @ blk)

    def copy(self) -> "WalkerState":
        return WalkerState(self.amplitudes.copy(), self.geometry)


def build_start_state(config: WalkConfig) -> WalkerState:
    """Uniform-over-vertices start state: amplitude(v, d) = s_c(d) / sqrt(N)."""
    geometry = config.geometry
    coin = coin_vector(config.loop_weight)
    amps = np.tile(coin / math.sqrt(geometry.n_vertices), geometry.n_vertices)
    return WalkerState(amps, geometry)


def apply_coin(state: WalkerState, loop_weight: float) -> WalkerState:
    """Reflect every per-vertex 5-block about the weighted diffusion axis."""
    coin = coin_vector(loop_weight)
    blocks = state.amplitudes.reshape(-1, N_DIRECTIONS)
    dots = blocks @ coin
    new = 2.0 * dots[:, None] * coin - blocks
    return WalkerState(new.reshape(-1), state.geometry)


def apply_shift(state: WalkerState) -> WalkerState:
    """Flip-flop shift: hop along the edge and turn around."""
    perm = shift_permutation(state.geometry)
    return WalkerState(state.amplitudes[perm], state.geometry)


def apply_oracle_grover(state: WalkerState, marked: int) -> WalkerState:
    """Negate all five amplitudes at the marked vertex."""
    new = state.amplitudes.copy()
    start = N_DIRECTIONS * marked
    new[start : start + N_DIRECTIONS] *= -1.0
    return WalkerState(new, state.geometry)


def apply_oracle_skw(state: WalkerState, marked: int, loop_weight: float) -> WalkerState:
    """Reflect the marked vertex's 5-block about the diffusion axis, negated.

    The block becomes ``b - 2 (s_c . b) s_c``; every other vertex is untouched.
    """
    coin = coin_vector(loop_weight)
    new = state.amplitudes.copy()
    start = N_DIRECTIONS * marked
    blk = new[start : start + N_DIRECTIONS]
    blk -= 2.0 * float(blk @ coin) * coin
    return WalkerState(new, state.geometry)


def walk_step(state: WalkerState, config: WalkConfig) -> WalkerState:
    """One evolution step: oracle query, then coin, then shift."""
    if state.geometry != config.geometry:
        raise ValueError("state geometry does not match config geometry")
    out = np.empty_like(state.amplitudes)
    scratch = np.empty_like(state.amplitudes)
    kernels.step(
        state.amplitudes,
        out,
        scratch,
        coin_vector(config.loop_weight),
        config.marked,
        oracle_code(config.oracle),
        shift_permutation(config.geometry),
    )
    return WalkerState(out, state.geometry)


def oracle_code(oracle: Oracle) -> int:
    """Integer tag the kernels use to select the per-step query."""
    return _ORACLE_CODES[Oracle(oracle)]
