"""Brute-force exact iteration, the ground truth every closed form is checked against."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from .decouple import RegularRecurrence
from .errors import StepLimitError, TrajectoryTooShortError
from .exact import format_rational
from .model import RecurrenceSystem, system_document

if TYPE_CHECKING:
    from .triplesolve import WeightPair

DEFAULT_STEP_LIMIT = 256


@dataclass(frozen=True)
class Trajectory:
    """Rows ``0..steps`` of an iterated system; row 0 is the initial vector."""

    system: RecurrenceSystem
    values: tuple[tuple[Fraction, ...], ...]

    @property
    def steps(self) -> int:
        return len(self.values) - 1

    def column(self, name: str) -> tuple[Fraction, ...]:
        i = self.system.index(name)
        return tuple(row[i] for row in self.values)

    def __getitem__(self, x: int) -> tuple[Fraction, ...]:
        return self.values[x]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", *self.system.names])
        for x, row in enumerate(self.values):
            writer.writerow([x, *(format_rational(v) for v in row)])
        return buf.getvalue()

    def to_document(self) -> dict[str, Any]:
        return {
            "system": system_document(self.system),
            "steps": self.steps,
            "values": [[format_rational(v) for v in row] for row in self.values],
        }


def iterate(system: RecurrenceSystem, steps: int, limit: int = DEFAULT_STEP_LIMIT) -> Trajectory:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if steps > limit:
        raise StepLimitError(f"{steps} steps requested, limit is {limit}")
    rows = [system.initial]
    for _ in range(steps):
        rows.append(system.step(rows[-1]))
    return Trajectory(system, tuple(rows))


def check_regular(trajectory: Trajectory, recurrence: RegularRecurrence) -> bool:
    """True iff every variable obeys ``recurrence`` at every ``x >= order``."""
    m = recurrence.order
    if len(trajectory.values) < m + 1:
        raise TrajectoryTooShortError(
            f"order-{m} recurrence needs at least {m + 1} rows, trajectory has {len(trajectory.values)}"
        )
    for i in range(trajectory.system.order):
        col = [row[i] for row in trajectory.values]
        for x in range(m, len(col)):
            if recurrence.predict(col[x - m:x], i) != col[x]:
                return False
    return True


def check_invariant(trajectory: Trajectory, w: "WeightPair") -> bool:
    """True iff ``b = w1*a + w2*c`` on every row of an order-3 trajectory."""
    if trajectory.system.order != 3:
        raise ValueError(f"weight invariant needs an order-3 trajectory, got order {trajectory.system.order}")
    return all(b == w.w1 * a + w.w2 * c for a, b, c in trajectory.values)
