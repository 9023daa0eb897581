"""Virtual magnification: walking the neighborhood graph as a zoom.

Zooming into child i of a piece moves along the successor table; zooming
out pops the recorded parent, or, at the top of the history, samples a
plausible parent from the stationary-weighted incoming edges.  States are
immutable; identical seeds and command sequences replay identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import NoPredecessorError
from .nbhgraph import NeighborhoodGraph
from .rng import splitmix64_next

_U64 = (1 << 64) - 1

# Deepest remembered descent; zooming out past this falls back to sampling.
HISTORY_CAP = 100_000


@dataclass(frozen=True)
class ZoomState:
    """One position of the magnifier.

    ``current`` is a 1-based neighborhood index; ``history`` records
    (parent, child label) pairs of zoom-ins not yet undone.  ``last_child``
    is the label under which the previous view sits inside the current one
    after a zoom-out, i.e. zoom_in(last_child) returns to it.
    """

    ng: NeighborhoodGraph
    current: int
    seed: int
    rng_state: int
    step_count: int = 0
    history: tuple[tuple[int, int], ...] = field(default_factory=tuple)
    last_child: int | None = None


def initial_state(ng: NeighborhoodGraph, seed: int = 0) -> ZoomState:
    return ZoomState(ng=ng, current=1, seed=seed, rng_state=seed & _U64)


def zoom_in(state: ZoomState, child: int) -> ZoomState:
    """Descend into child ``child`` of the current piece."""
    nxt = state.ng.successor(state.current, child)
    history = state.history + ((state.current, child),)
    if len(history) > HISTORY_CAP:
        history = history[-HISTORY_CAP:]
    return replace(
        state,
        current=nxt,
        history=history,
        step_count=state.step_count + 1,
        last_child=None,
    )


def zoom_out(state: ZoomState) -> ZoomState:
    """Exact inverse of the last zoom-in; with empty history, samples an
    incoming edge (parent j, label i) with probability proportional to the
    parent's stationary mass (label multiplicity counted).

    Raises ``NoPredecessorError`` when every incoming edge carries zero
    stationary mass.
    """
    if state.history:
        parent, child = state.history[-1]
        return replace(
            state,
            current=parent,
            history=state.history[:-1],
            step_count=state.step_count + 1,
            last_child=child,
        )
    ng = state.ng
    incoming = ng.incoming_edges[state.current - 1]
    p = ng.stationary.as_floats
    weights = [float(p[j - 1]) for j, _ in incoming]
    total = sum(weights)
    if total <= 0.0:
        raise NoPredecessorError(
            f"neighborhood {state.current} has no positive-probability parent"
        )
    rng_state, out = splitmix64_next(state.rng_state)
    u = (out >> 11) * (2.0**-53) * total
    acc = 0.0
    parent, child = incoming[-1]
    for (j, i), w in zip(incoming, weights):
        acc += w
        if u < acc:
            parent, child = j, i
            break
    return replace(
        state,
        current=parent,
        rng_state=rng_state,
        step_count=state.step_count + 1,
        last_child=child,
    )


def apply_script(state: ZoomState, commands: Iterable[str]) -> list[ZoomState]:
    """Run ``in:i`` / ``out`` commands, returning every intermediate state
    (the input state first)."""
    states = [state]
    for command in commands:
        if command == "out":
            state = zoom_out(state)
        elif command.startswith("in:"):
            state = zoom_in(state, int(command[3:]))
        else:
            raise ValueError(f"unknown zoom command {command!r}")
        states.append(state)
    return states


def trajectory_log(states: list[ZoomState], actions: list[str]) -> str:
    """The trajectory log: one ``step, nbhIndex, action, childLabel`` line
    per executed command."""
    lines = ["step, nbhIndex, action, childLabel"]
    for state, action in zip(states[1:], actions):
        if action.startswith("in:"):
            child = action[3:]
        else:
            child = str(state.last_child) if state.last_child is not None else ""
        lines.append(f"{state.step_count}, {state.current}, {action}, {child}")
    return "\n".join(lines) + "\n"


def random_walk(
    ng: NeighborhoodGraph, start: int, steps: int, seed: int
) -> np.ndarray:
    """Uniform-child zoom-in walk; returns steps+1 neighborhood indices
    (1-based) beginning at ``start``."""
    if not 1 <= start <= ng.K:
        raise ValueError(f"start index {start} outside 1..{ng.K}")
    traj = _kernels.random_walk(ng.successor_table, start - 1, steps, seed)
    return traj + 1


def empirical_frequencies(trajectory: np.ndarray, K: int) -> np.ndarray:
    """Visit frequencies of a 1-based trajectory over K neighborhoods."""
    counts = np.bincount(trajectory - 1, minlength=K)
    return counts / len(trajectory)
