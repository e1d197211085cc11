"""Embedded resolution of the cusp x^2 - y^3, printed chart by chart."""

from __future__ import annotations

from singres import Ring, resolve_curve_embedded


def main() -> None:
    R = Ring(("x", "y"))
    trace = resolve_curve_embedded(R("x^2 - y^3"))
    for node in trace.nodes():
        indent = "  " * len(node.path)
        exc = ", ".join(f"{e.variable}^{e.multiplicity}" for e in node.exceptional.entries) or "none"
        print(f"{indent}{node.name}: {node.equation}   exceptional {exc}   [{node.status}]")
    print(f"status {trace.status}, steps {trace.step_count}, blowups {trace.blowups}, "
          f"smooth after {trace.info['smooth_after']}")


if __name__ == "__main__":
    main()
