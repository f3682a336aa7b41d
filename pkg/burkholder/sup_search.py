"""Lower bounds for the sup-defined Burkholder function.

U(x, y) is the supremum of E(|g_N|^p - beta^p |f_N|^p) over finite martingale
pairs started at (x, y) with dg_n = eps_n df_n, |eps_n| <= 1. Restricting the
increments to a fixed stencil turns the supremum into a finite game on a
lattice, solved here by memoized backward induction. Any restriction of the
game is a certified lower bound.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

import numpy as np

from burkholder.params import BurkholderParams
from core.errors import UsageError
from core.spaces import as_vector, norm
from lab.defaults import (
    SUP_U_BEAM,
    SUP_U_BUDGET,
    SUP_U_EXHAUSTIVE_DEPTH,
    SUP_U_MAX_BRANCHING,
    SUP_U_MAX_DEPTH,
)
from lab.seeding import derive_seed, rng_stream, stream_tag

logger = logging.getLogger(__name__)

# x moves in units of 1/4, y = eps * dx in units of 1/8
X_UNIT = 4
Y_UNIT = 8
MAGNITUDES = (4, 2, 1)
EPSILONS = (-2, -1, 0, 1, 2)  # eps in halves

_SEARCH_TAG = stream_tag("burkholder", "sup-u")


@dataclass(frozen=True)
class SupApproximation:
    value: float
    trivial: float
    depth: int
    branching: int
    states: int
    exhausted: bool


@dataclass(frozen=True)
class MoveTable:
    """Stencil moves padded to a common number of children.

    ``dx`` holds x increments in units of 1/4, ``dy`` y increments in units of
    1/8 and ``prob`` the child probabilities (zero for padding).
    """

    dx: np.ndarray
    dy: np.ndarray
    prob: np.ndarray
    n_two_point: int

    def __len__(self):
        return self.prob.shape[0]


def _directions(dim: int):
    eye = np.eye(dim, dtype=np.int64)
    yield from eye
    for i, j in itertools.combinations(range(dim), 2):
        yield eye[i] + eye[j]
        yield eye[i] - eye[j]


@lru_cache(maxsize=None)
def move_table(dim: int, branching: int) -> MoveTable:
    width = 4 if branching >= 4 else branching
    dx, dy, prob = [], [], []

    def add(children):
        pad = width - len(children)
        xs = [c[0] for c in children] + [np.zeros(dim, dtype=np.int64)] * pad
        ws = [c[1] for c in children] + [0.0] * pad
        for eps in EPSILONS:
            dx.append(np.stack(xs))
            dy.append(np.stack(xs) * eps)
            prob.append(ws)

    # Two-point moves come first; wider stencils only append moves.
    directions = list(_directions(dim))
    for u in directions:
        for a, b in itertools.product(MAGNITUDES, repeat=2):
            # +a u w.p. b/(a+b), -b u w.p. a/(a+b)
            add([(a * u, b / (a + b)), (-b * u, a / (a + b))])
    if branching >= 3:
        for u in directions:
            for a in MAGNITUDES:
                add([(a * u, 0.25), (0 * u, 0.5), (-a * u, 0.25)])
    if branching >= 4:
        if dim == 1:
            u = directions[0]
            for a, b in itertools.combinations(MAGNITUDES, 2):
                add([(a * u, 0.25), (-a * u, 0.25), (b * u, 0.25), (-b * u, 0.25)])
        else:
            for u, v in itertools.combinations(directions[:dim], 2):
                for a in MAGNITUDES:
                    add([(a * u, 0.25), (-a * u, 0.25), (a * v, 0.25), (-a * v, 0.25)])
    return MoveTable(
        dx=np.array(dx, dtype=np.int64),
        dy=np.array(dy, dtype=np.int64),
        prob=np.array(prob, dtype=float),
        n_two_point=len(directions) * len(MAGNITUDES) ** 2 * len(EPSILONS),
    )


class _LatticeGame:
    def __init__(self, params: BurkholderParams, x0, y0, branching, budget, seed):
        self.params = params
        self.x0 = x0
        self.y0 = y0
        self.moves = move_table(params.space.dim, branching)
        self.budget = budget
        self.seed = seed
        self.memo: Dict[Tuple, float] = {}
        self.exhausted = False

    def terminal(self, ix, iy) -> np.ndarray:
        x = self.x0 + np.asarray(ix) / X_UNIT
        y = self.y0 + np.asarray(iy) / Y_UNIT
        p = self.params.p.p
        return (
            norm(self.params.space, y) ** p
            - self.params.beta**p * norm(self.params.space, x) ** p
        )

    def beam(self, key) -> np.ndarray:
        """Random move subset drawn from a stream owned by the state.

        The two-point part of the beam does not depend on the branching, so
        a wider stencil searches a superset of moves.
        """
        moves = self.moves
        rng = rng_stream(derive_seed(self.seed, *key), _SEARCH_TAG)
        n_base = moves.n_two_point
        base = rng.choice(n_base, size=min(SUP_U_BEAM, n_base), replace=False)
        extra = len(moves) - n_base
        if extra == 0:
            return base
        wide = n_base + rng.choice(extra, size=min(SUP_U_BEAM, extra), replace=False)
        return np.concatenate([base, wide])

    def value(self, ix: Tuple[int, ...], iy: Tuple[int, ...], remaining: int) -> float:
        key = (ix, iy, remaining)
        if key in self.memo:
            return self.memo[key]
        if remaining == 0 or len(self.memo) >= self.budget:
            if remaining > 0:
                self.exhausted = True
            result = float(self.terminal(ix, iy))
            self.memo[key] = result
            return result

        moves = self.moves
        if remaining == 1:
            cx = np.asarray(ix) + moves.dx
            cy = np.asarray(iy) + moves.dy
            expected = np.sum(moves.prob * self.terminal(cx, cy), axis=1)
            best = max(float(self.terminal(ix, iy)), float(np.max(expected)))
        else:
            # stopping early is always allowed
            best = self.value(ix, iy, remaining - 1)
            if remaining > SUP_U_EXHAUSTIVE_DEPTH:
                candidates = self.beam(key)
            else:
                candidates = range(len(moves))
            for m in candidates:
                expected = 0.0
                for dx, dy, w in zip(moves.dx[m], moves.dy[m], moves.prob[m]):
                    if w == 0:
                        continue
                    child_x = tuple(int(a) for a in np.asarray(ix) + dx)
                    child_y = tuple(int(a) for a in np.asarray(iy) + dy)
                    expected += w * self.value(child_x, child_y, remaining - 1)
                best = max(best, expected)
        self.memo[key] = best
        return best


def sup_u_approx(
    params: BurkholderParams,
    x,
    y,
    depth: int,
    branching: int = 2,
    budget: int = SUP_U_BUDGET,
    seed: int = 0,
) -> SupApproximation:
    """Certified lower bound on the sup-defined U(x, y).

    Nondecreasing in depth and branching while the state budget lasts;
    ``exhausted`` reports a search cut short by the budget.
    """
    if not 0 <= depth <= SUP_U_MAX_DEPTH:
        raise UsageError(f"depth must lie in [0, {SUP_U_MAX_DEPTH}], got {depth}")
    if not 2 <= branching <= SUP_U_MAX_BRANCHING:
        raise UsageError(f"branching must lie in [2, {SUP_U_MAX_BRANCHING}], got {branching}")
    x = as_vector(params.space, x)
    y = as_vector(params.space, y)

    game = _LatticeGame(params, x, y, branching, budget, seed)
    origin = (0,) * params.space.dim
    value = game.value(origin, origin, depth)
    trivial = float(game.terminal(origin, origin))
    if game.exhausted:
        logger.info("sup-U search hit its state budget of %d", budget)
    return SupApproximation(
        value=value,
        trivial=trivial,
        depth=depth,
        branching=branching,
        states=len(game.memo),
        exhausted=game.exhausted,
    )
