"""Haar sampling of the entanglement foliations.

Two qubits: one concurrence per state, with its leaf. Three qubits: the
three partial Bloch radii, a point of the unit cube.

Sampling is chunked. Chunk ``k`` draws its states from
``derive_seed(seed, k)`` (a splitmix64 stream), so the rows depend only on
``(n_states, n_qubits, seed)`` and never on the number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from .entanglement import LeafLabel, bloch_radii_batch, concurrence_batch, default_tol, leaf_label
from .errors import ValidationError
from .states import PureState, derive_seed, random_state_vectors

CHUNK_SIZE = 1024


@dataclass(frozen=True)
class FoliationRow:
    n_qubits: int
    concurrence: float | None = None
    label: LeafLabel | None = None
    radii: tuple[float, float, float] | None = None

    @property
    def average(self) -> float | None:
        return None if self.radii is None else sum(self.radii) / 3.0

    def record(self) -> dict[str, Any]:
        if self.n_qubits == 2:
            return {
                "concurrence": self.concurrence,
                "shell_radius": float(np.sqrt(max(0.0, 1.0 - self.concurrence**2))),
                "label": self.label.value,
            }
        r1, r2, r3 = self.radii
        return {"r1": r1, "r2": r2, "r3": r3, "avg": self.average}


def rows_from_vectors(vectors: np.ndarray, n_qubits: int, tol: float | None = None) -> list[FoliationRow]:
    v = np.asarray(vectors, dtype=complex)
    if n_qubits == 2:
        tol = default_tol() if tol is None else tol
        return [FoliationRow(2, float(c), leaf_label(float(c), tol)) for c in concurrence_batch(v)]
    if n_qubits == 3:
        return [FoliationRow(3, radii=tuple(float(r) for r in row)) for row in bloch_radii_batch(v)]
    raise ValidationError(f"foliation needs 2 or 3 qubits, got {n_qubits}")


def foliation_rows(states: Iterable[PureState], tol: float | None = None) -> list[FoliationRow]:
    """Rows for explicitly given states (e.g. a hand-built check set)."""
    states = list(states)
    if not states:
        return []
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise ValidationError("all states must have the same qubit count")
    return rows_from_vectors(np.array([s.vector for s in states]), n, tol)


def _chunk(args: tuple[int, int, int, int, float]) -> list[FoliationRow]:
    n_qubits, seed, index, size, tol = args
    return rows_from_vectors(random_state_vectors(n_qubits, size, derive_seed(seed, index)), n_qubits, tol)


def foliation_sample(
    n_states: int,
    n_qubits: int,
    seed: int,
    workers: int = 1,
    tol: float | None = None,
) -> list[FoliationRow]:
    """Rows for ``n_states`` Haar-random states; identical for any ``workers``."""
    if n_qubits not in (2, 3):
        raise ValidationError(f"foliation needs 2 or 3 qubits, got {n_qubits}")
    if n_states < 1:
        raise ValidationError("n_states must be at least 1")
    tol = default_tol() if tol is None else tol
    jobs = [
        (n_qubits, seed, k, min(CHUNK_SIZE, n_states - start), tol)
        for k, start in enumerate(range(0, n_states, CHUNK_SIZE))
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_chunk, jobs))
    else:
        chunks = [_chunk(job) for job in jobs]
    return [row for chunk in chunks for row in chunk]
