"""A blowup sequence in characteristic 2 along which the residual order goes up."""

from __future__ import annotations

from singres import GF, Ring
from singres.resolve import BlowupStep, blowup_sequence


def main() -> None:
    F = Ring(("x", "y", "z"), GF(2))
    steps = [
        BlowupStep("y"),
        BlowupStep("y", ("x", "y")),
        BlowupStep("z"),
        BlowupStep("z", (), (0, 1, 0)),
    ]
    trace = blowup_sequence(F("x^2 + y^7 + y*z^4"), steps)
    for node in trace.nodes():
        print(f"{node.name:<40} {str(node.equation):<28} (order, residual order) = {node.invariant}")


if __name__ == "__main__":
    main()
