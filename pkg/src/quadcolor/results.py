"""Solver verdicts and the witnesses that back them up.

A SolveResult either carries a coloring (Yes), a witness object proving the
answer is No, or a heuristic verdict flagged as such.  Witness objects are
deliberately dumb containers; re-verification lives with the code that knows
the relevant math (winding reports in coloring, spokes in disk).
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class WindingViolation:
    """The necessary winding/parity condition fails; report says how."""

    report: object  # a coloring.WindingReport

    def describe(self):
        r = self.report
        lines = ["winding violation"]
        lines.append("per-boundary omega: %s" % (list(r.per_boundary),))
        lines.append("total: %d" % r.total)
        if r.parity_p is not None:
            lines.append("parity p: %d" % r.parity_p)
        return lines


@dataclass(frozen=True)
class SpokeViolation:
    """A short chord crosses a boundary arc with too much color winding."""

    witness: object  # a disk.SpokeWitness

    def describe(self):
        w = self.witness
        return [
            "spoke violation",
            "spoke: %s" % (list(w.spoke),),
            "base: %s" % (list(w.base),),
            "delta(base): %d" % w.delta_base,
        ]


@dataclass(frozen=True)
class Exhausted:
    """Complete enumeration found nothing; trace records what was tried."""

    trace: tuple = ()

    def describe(self):
        return ["search exhausted"] + ["  " + t for t in self.trace]


@dataclass(frozen=True)
class SolveResult:
    verdict: str  # Yes | No | HeuristicYes | HeuristicNo
    coloring: dict | None = None
    witness: object | None = None
    note: str = ""

    @property
    def is_yes(self) -> bool:
        return self.verdict in ("Yes", "HeuristicYes")

    @property
    def is_no(self) -> bool:
        return self.verdict in ("No", "HeuristicNo")

    @property
    def heuristic(self) -> bool:
        return self.verdict.startswith("Heuristic")

    @staticmethod
    def yes(coloring) -> "SolveResult":
        return SolveResult("Yes", coloring=dict(coloring))

    @staticmethod
    def no(witness) -> "SolveResult":
        return SolveResult("No", witness=witness)

    @staticmethod
    def heuristic_yes(coloring, note: str) -> "SolveResult":
        return SolveResult("HeuristicYes", coloring=dict(coloring), note=note)

    @staticmethod
    def heuristic_no(note: str) -> "SolveResult":
        return SolveResult("HeuristicNo", note=note)

    def describe(self):
        lines = ["verdict: %s" % self.verdict]
        if self.note:
            lines.append("note: %s" % self.note)
        if self.witness is not None and hasattr(self.witness, "describe"):
            lines.extend(self.witness.describe())
        return lines
