"""Desk-scale resolution drivers that record their work as chart trees.

Every driver works with germs: a node is a chart whose origin is the point
under study, exceptional components through it are coordinate hyperplanes,
and blowing up the origin produces one child per bad point found on the new
exceptional divisor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .blowup import BlowupChart, point_blowup_charts
from .descent import (
    ExceptionalEntry,
    ExceptionalRecord,
    coefficient_ideal,
    factor_exceptional,
    osculating_frame,
    residual_order,
)
from .errors import DomainError, PositiveDimensional, SingresError
from .geometry import order_at_least_ideal, order_at_point, rational_points
from .groebner import Ideal
from .ring import Polynomial, Ring

MAX_STEPS = 32


# ---------------------------------------------------------------------------
# trace data
# ---------------------------------------------------------------------------


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


@dataclass
class ChartNode:
    """One germ in a resolution tree.

    ``chart_map`` lists the images of the parent's variables (after moving
    ``point`` to the origin); ``reason`` says why the node was blown up.
    """

    path: tuple[str, ...]
    ring: Optional[Ring]
    equation: Optional[Polynomial]
    exceptional: ExceptionalRecord
    invariant: tuple = ()
    chart_map: Optional[tuple[str, ...]] = None
    point: tuple = ()
    status: str = "good"
    reason: str = ""
    notes: list[str] = field(default_factory=list)
    children: list["ChartNode"] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return "/".join(self.path) if self.path else "root"

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self):
        return [n for n in self.walk() if not n.children]

    def depth(self) -> int:
        """Number of blowups on the longest branch below this node."""
        if not self.children:
            return 0
        step = 1 if self.status == "blown-up" else 0
        return step + max(c.depth() for c in self.children)

    def to_json(self) -> dict:
        out = {
            "path": self.name,
            "status": self.status,
            "exceptional": self.exceptional.to_json(),
            "invariant": [_json_value(v) for v in self.invariant],
        }
        if self.equation is not None:
            out["equation"] = str(self.equation)
        if self.ring is not None:
            out["ring"] = list(self.ring.variables)
        if self.chart_map is not None:
            out["chart_map"] = list(self.chart_map)
        if self.point:
            out["point"] = [str(x) for x in self.point]
        if self.reason:
            out["reason"] = self.reason
        if self.notes:
            out["notes"] = list(self.notes)
        if self.data:
            out["data"] = {k: _json_value(v) for k, v in self.data.items()}
        out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class ResolutionTrace:
    driver: str
    root: ChartNode
    status: str
    step_count: int
    blowups: int
    info: dict = field(default_factory=dict)

    @property
    def resolved(self) -> bool:
        return self.status == "resolved"

    def nodes(self):
        return list(self.root.walk())

    def to_json(self) -> dict:
        return {
            "driver": self.driver,
            "status": self.status,
            "step_count": self.step_count,
            "blowups": self.blowups,
            "info": {k: _json_value(v) for k, v in self.info.items()},
            "root": self.root.to_json(),
        }


# ---------------------------------------------------------------------------
# snc checks for plane curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SncReport:
    ok: bool
    failures: tuple[tuple[tuple, str], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def snc_check_plane(components: Sequence[Polynomial], points: Sequence[Sequence]) -> SncReport:
    """At each point: components through it are smooth, at most two meet, and
    two meeting components are transversal (nonzero Jacobian determinant)."""
    failures = []
    for pt in points:
        pt = tuple(pt)
        through = [g for g in components if g.evaluate(pt) == 0]
        grads = []
        for g in through:
            grad = [d.evaluate(pt) for d in g.gradient()]
            if not any(grad):
                failures.append((pt, f"component {g} is singular"))
                break
            grads.append(grad)
        else:
            if len(through) > 2:
                failures.append((pt, f"{len(through)} components meet"))
            elif len(through) == 2:
                (a, b), (c, d) = grads
                if a * d - b * c == 0:
                    failures.append((pt, "components are tangent"))
    return SncReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# invariants at a germ
# ---------------------------------------------------------------------------


def _exceptional_vars(exc: ExceptionalRecord) -> list[str]:
    return list(exc.variables)


def germ_invariant(f: Polynomial, exc: ExceptionalRecord) -> tuple:
    """(order, residual order) at the origin; the second entry is omitted when
    no frame is available (positive characteristic without inseparable shape)."""
    o = f.order()
    if o == math.inf:
        return (o,)
    o = int(o)
    if o == 0:
        return (0,)
    ring = f.ring
    try:
        if ring.field.p:
            return (o, residual_order(f, exc))
        frame = osculating_frame(f)
        J = coefficient_ideal(frame.framed, frame)
        if J.is_zero():
            return (o, math.inf)
        keep = [v for v in exc.variables if v != frame.variable]
        fac = factor_exceptional(J, keep)
        return (o, order_at_point(fac.residual).value)
    except SingresError:
        return (o,)


def equiconstant_locus(f: Polynomial, chart: BlowupChart, o: Optional[int] = None):
    """Points of the exceptional divisor where the strict transform keeps order ≥ o.

    Returns ``(ideal, points)``; ``points`` is None when the locus is
    positive-dimensional.  Hasse derivatives make this valid in any characteristic.
    """
    if o is None:
        o = int(order_at_point(f).value)
    total = chart.map(f)
    k = total.max_power_dividing(chart.chart_variable)
    strict = total.exact_div(chart.ring.monomial([k if i == chart.chart_variable else 0 for i in range(chart.ring.ngens)]))
    I = order_at_least_ideal(Ideal(chart.ring, [strict]), o) + chart.exceptional
    try:
        pts = rational_points(I)
    except PositiveDimensional:
        return I, None
    return I, pts


# ---------------------------------------------------------------------------
# the germ engine
# ---------------------------------------------------------------------------


@dataclass
class _Ctx:
    max_steps: int
    is_bad: Callable[[Polynomial, ExceptionalRecord], str]
    locus: Callable[[Polynomial, ExceptionalRecord], Ideal]
    limit_hit: bool = False
    blowups: int = 0


def _fmt_point(p: Sequence) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _blow_up_germ(node: ChartNode, f: Polynomial, exc: ExceptionalRecord, depth: int, ctx: _Ctx):
    ring = f.ring
    o = int(f.order())
    m_new = o + sum(e.multiplicity for e in exc.entries)
    node.status = "blown-up"
    node.notes.append(
        "center: origin; transversal to E: "
        + ("yes" if len(set(exc.variables)) == len(exc.variables) else "no")
    )
    ctx.blowups += 1
    charts = point_blowup_charts(ring)
    for chart in charts:
        j = chart.chart_variable
        hj = ring.monomial([o if i == j else 0 for i in range(ring.ngens)])
        strict = chart.map(f).exact_div(hj)
        entries = [e for e in exc.entries if e.variable != ring.variables[j]]
        entries.append(ExceptionalEntry(ring.variables[j], m_new, depth + 1))
        new_exc = ExceptionalRecord(tuple(entries))
        # points of this chart not seen by earlier charts: x_i = 0 for earlier i
        constraint = [ring.gens()[i] for i in chart.center_indices[: chart.index + 1]]
        cand = {(0,) * ring.ngens}
        L = ctx.locus(strict, new_exc) + Ideal(ring, constraint)
        if not L.is_unit():
            cand.update(rational_points(L))
        bad_children = []
        for p in sorted(cand):
            fp = strict.translate(p)
            exc_p = ExceptionalRecord(tuple(e for e in entries if p[ring.index(e.variable)] == 0))
            reason = ctx.is_bad(fp, exc_p)
            if not reason:
                continue
            images = chart.map.then(_shift(ring, p)).images
            name = chart.name + ("" if not any(p) else "@" + _fmt_point(p))
            bad_children.append((name, fp, exc_p, images, p, reason))
        if not bad_children:
            leaf = ChartNode(node.path + (chart.name,), ring, strict, new_exc, germ_invariant(strict, new_exc),
                             tuple(str(g) for g in chart.map.images))
            node.children.append(leaf)
            continue
        for name, fp, exc_p, images, p, reason in bad_children:
            child = ChartNode(node.path + (name,), ring, fp, exc_p, germ_invariant(fp, exc_p),
                              tuple(str(g) for g in images), tuple(p))
            node.children.append(child)
            _resolve_germ(child, fp, exc_p, depth + 1, ctx, reason)


def _shift(ring: Ring, p):
    from .ring import RingMorphism

    return RingMorphism(ring, ring, tuple(g + c for g, c in zip(ring.gens(), p)))


def _resolve_germ(node: ChartNode, f: Polynomial, exc: ExceptionalRecord, depth: int, ctx: _Ctx, reason: str):
    if not reason:
        node.status = "good"
        return
    node.reason = reason
    if depth >= ctx.max_steps:
        node.status = "step-limit"
        ctx.limit_hit = True
        return
    _blow_up_germ(node, f, exc, depth, ctx)


def _run(driver: str, f: Polynomial, ctx: _Ctx, root_locus: Ideal, info: dict) -> ResolutionTrace:
    ring = f.ring
    exc0 = ExceptionalRecord()
    root = ChartNode((), ring, f, exc0, germ_invariant(f, exc0))
    pts = [] if root_locus.is_unit() else rational_points(root_locus)
    bad = [(p, ctx.is_bad(f.translate(p), exc0)) for p in pts]
    bad = [(p, r) for p, r in bad if r]
    origin = (0,) * ring.ngens
    if len(bad) == 1 and bad[0][0] == origin:
        _resolve_germ(root, f, exc0, 0, ctx, bad[0][1])
    else:
        for p, reason in bad:
            fp = f.translate(p)
            child = ChartNode(("@" + _fmt_point(p),), ring, fp, exc0, germ_invariant(fp, exc0),
                              tuple(str(g) for g in _shift(ring, p).images), tuple(p))
            root.children.append(child)
            root.status = "split"
            _resolve_germ(child, fp, exc0, 0, ctx, reason)
    status = "step-limit" if ctx.limit_hit else "resolved"
    return ResolutionTrace(driver, root, status, root.depth(), ctx.blowups, info)


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def _curve_bad(f: Polynomial, exc: ExceptionalRecord) -> str:
    ring = f.ring
    origin = (0,) * ring.ngens
    if f.order() >= 2:
        return "singular"
    comps = ([f] if f.order() >= 1 else []) + [ring.gen(v) for v in exc.variables]
    if not snc_check_plane(comps, [origin]):
        return "not-snc"
    return ""


def _curve_locus(f: Polynomial, exc: ExceptionalRecord) -> Ideal:
    # only points on the strict transform (plus the chart origin) can be bad
    return Ideal(f.ring, [f])


def resolve_curve_embedded(f: Polynomial, max_steps: int = MAX_STEPS) -> ResolutionTrace:
    """Blow up points until the strict transform is smooth and the total
    transform has simple normal crossings."""
    ring = f.ring
    if ring.ngens != 2:
        raise DomainError("the curve driver expects a polynomial in two variables")
    if not f or f.is_constant():
        raise DomainError("the curve must be defined by a nonconstant polynomial")
    ctx = _Ctx(max_steps, _curve_bad, _curve_locus)
    sing = Ideal(ring, [f, *f.gradient()])
    trace = _run("resolve-curve", f, ctx, sing, {})
    trace.info["smooth_after"] = _smooth_after(trace.root)
    return trace


def _smooth_after(node: ChartNode) -> int:
    """Blowups needed along the worst branch until the strict transform is smooth."""
    if node.status == "blown-up" and node.reason == "singular":
        return 1 + max((_smooth_after(c) for c in node.children), default=0)
    if node.status == "split":
        return max((_smooth_after(c) for c in node.children), default=0)
    return 0


def max_order(f: Polynomial) -> int:
    """Largest order of f at a point of its zero set (over the algebraic closure)."""
    ring = f.ring
    k = 1
    while not order_at_least_ideal(Ideal(ring, [f]), k + 1).is_unit():
        k += 1
        if k > max(f.total_degree(), 1):
            break
    return k


def resolve_hypersurface_char0(f: Polynomial, c_plus: Optional[int] = None, max_steps: int = MAX_STEPS,
                               embedded: bool = False) -> ResolutionTrace:
    """Point blowups at germs of order ≥ c₊ until the order drops below c₊.

    The invariant (order, residual order of the coefficient ideal in an
    osculating frame) is recorded at every node.  With ``embedded=True`` (two
    variables only) germs whose total transform is not snc are also blown up,
    which reproduces the curve driver.
    """
    ring = f.ring
    if ring.field.p:
        raise DomainError("the hypersurface driver is a characteristic-0 procedure")
    if ring.ngens > 3:
        raise DomainError("the hypersurface driver handles at most three variables")
    if not f or f.is_constant():
        raise DomainError("the hypersurface must be defined by a nonconstant polynomial")
    if embedded and ring.ngens != 2:
        raise DomainError("the embedded stage is implemented for plane curves")
    o_max = max_order(f)
    c = max(o_max, 2) if c_plus is None else c_plus
    if c < 1:
        raise DomainError("the control must be positive")

    def bad(g: Polynomial, exc: ExceptionalRecord) -> str:
        if embedded:
            return _curve_bad(g, exc) or ("order" if g.order() >= c else "")
        return "order" if g.order() >= c else ""

    def locus(g: Polynomial, exc: ExceptionalRecord) -> Ideal:
        if embedded:
            return Ideal(g.ring, [g])
        return order_at_least_ideal(Ideal(g.ring, [g]), c)

    ctx = _Ctx(max_steps, bad, locus)
    root_locus = Ideal(ring, [f, *f.gradient()]) if embedded else order_at_least_ideal(Ideal(ring, [f]), c)
    trace = _run("resolve-h0", f, ctx, root_locus, {"c_plus": c, "max_order": o_max})
    for node in trace.root.walk():
        if node.status == "blown-up" and node.equation is not None:
            frame_inv = node.invariant
            if len(frame_inv) > 1 and frame_inv[1] == 0:
                node.notes.append("coefficient ideal is monomial: hand-off to the monomial stage")
    return trace


# ---------------------------------------------------------------------------
# the monomial stage
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialComponent:
    name: str
    multiplicity: int
    exceptional: bool


def _monomial_terminal(comps: Sequence[MonomialComponent]) -> bool:
    return all(c.exceptional for c in comps if c.multiplicity > 0)


def _choose_center(comps: Sequence[MonomialComponent], c_plus: int) -> Optional[tuple[int, ...]]:
    """Smallest subset (lex first) of non-exceptional components, at least two,
    with multiplicity sum ≥ c₊; a single divisor when nothing else qualifies."""
    free = [i for i, c in enumerate(comps) if not c.exceptional and c.multiplicity > 0]
    others = [i for i, c in enumerate(comps) if not c.exceptional]
    from itertools import combinations

    for size in range(2, len(others) + 1):
        for S in combinations(others, size):
            if not any(comps[i].multiplicity > 0 for i in S):
                continue
            if sum(comps[i].multiplicity for i in S) >= c_plus:
                return S
    for i in free:
        if comps[i].multiplicity >= c_plus:
            return (i,)
    return None


def resolve_monomial(exponents, c_plus: int, exceptional: Sequence[str] = (),
                     max_steps: int = MAX_STEPS) -> ResolutionTrace:
    """Combinatorial resolution of a principal monomial ideal x^a.

    Components are coordinate divisors with multiplicities.  The ideal is
    resolved once it is supported on exceptional components.  Blowing up the
    intersection of components S, the chart of j ∈ S turns x_j into the new
    exceptional component with multiplicity Σ_S a_i − c₊ (controlled transform).
    """
    if isinstance(exponents, dict):
        items = list(exponents.items())
    else:
        items = [(f"x{i + 1}", a) for i, a in enumerate(exponents)]
    if c_plus < 1:
        raise DomainError("the control must be positive")
    names = [n for n, _ in items]
    for e in exceptional:
        if e not in names:
            raise DomainError(f"exceptional component {e!r} is not a variable of the monomial")
    comps = tuple(MonomialComponent(n, int(a), n in exceptional) for n, a in items)
    if any(c.multiplicity < 0 for c in comps):
        raise DomainError("exponents must be natural numbers")
    counter = {"blowups": 0, "limit": False}
    root = _monomial_node((), comps, c_plus, 0, max_steps, counter)
    status = "step-limit" if counter["limit"] else "resolved"
    return ResolutionTrace("resolve-monomial", root, status, root.depth(), counter["blowups"], {"c_plus": c_plus})


def _monomial_exc(comps) -> ExceptionalRecord:
    return ExceptionalRecord(tuple(ExceptionalEntry(c.name, c.multiplicity) for c in comps if c.exceptional))


def _monomial_node(path, comps, c_plus, depth, max_steps, counter) -> ChartNode:
    node = ChartNode(path, None, None, _monomial_exc(comps),
                     (sum(c.multiplicity for c in comps),),
                     data={c.name: c.multiplicity for c in comps})
    if _monomial_terminal(comps):
        node.status = "good"
        return node
    S = _choose_center(comps, c_plus)
    if S is None:
        node.status = "good"
        node.notes.append("no center qualifies")
        return node
    if depth >= max_steps:
        node.status = "step-limit"
        counter["limit"] = True
        return node
    node.status = "blown-up"
    node.reason = "monomial"
    node.notes.append("center: " + " = ".join(comps[i].name for i in S) + " = 0")
    counter["blowups"] += 1
    total = sum(comps[i].multiplicity for i in S)
    for j in S:
        new = list(comps)
        new[j] = MonomialComponent(comps[j].name, total - c_plus, True)
        child = _monomial_node(path + (f"chart:{comps[j].name}",), tuple(new), c_plus, depth + 1, max_steps, counter)
        node.children.append(child)
    return node


# ---------------------------------------------------------------------------
# scripted sequences of coordinate blowups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlowupStep:
    """Blow up the coordinate subspace ``center`` (all variables when empty),
    pass to ``chart`` and move ``point`` of that chart to the origin."""

    chart: str
    center: tuple[str, ...] = ()
    point: tuple = ()


def _step_invariant(f: Polynomial, exc: ExceptionalRecord) -> tuple:
    if f.ring.field.p:
        o = f.order()
        try:
            return (o, residual_order(f, exc))
        except SingresError:
            return (o,)
    return germ_invariant(f, exc)


def blowup_sequence(f: Polynomial, steps: Sequence[BlowupStep], exceptional=()) -> ResolutionTrace:
    """Follow a prescribed chain of blowups, recording strict transforms,
    exceptional components and the invariant (order, residual order) at each stage."""
    ring = f.ring
    exc = ExceptionalRecord.of(exceptional)
    root = ChartNode((), ring, f, exc, _step_invariant(f, exc))
    node, cur = root, f
    for k, step in enumerate(steps, 1):
        center = tuple(step.center) or ring.variables
        charts = point_blowup_charts(ring, center)
        ch = next((c for c in charts if c.name == f"chart:{step.chart}" or c.name == step.chart), None)
        if ch is None:
            raise DomainError(f"{step.chart!r} is not a chart of the blowup along ({', '.join(center)})")
        j = ch.chart_variable
        d = min(sum(e[ring.index(v)] for v in center) for e in cur.terms)
        strict = ch.map(cur).exact_div(ring.monomial([d if i == j else 0 for i in range(ring.ngens)]))
        m_new = d + sum(e.multiplicity for e in exc.entries if e.variable in center)
        entries = [e for e in exc.entries if e.variable != ring.variables[j]]
        entries.append(ExceptionalEntry(ring.variables[j], m_new, k))
        images = ch.map
        if step.point:
            p = tuple(ring.field(a) for a in step.point)
            if p[j] != 0:
                raise DomainError(f"point {p} is not on the exceptional divisor of {ch.name}")
            strict = strict.translate(p)
            images = ch.map.then(_shift(ring, p))
            entries = [e for e in entries if p[ring.index(e.variable)] == 0]
        exc = ExceptionalRecord(tuple(entries))
        name = ch.name + ("@" + _fmt_point(step.point) if step.point and any(step.point) else "")
        child = ChartNode(node.path + (name,), ring, strict, exc, _step_invariant(strict, exc),
                          tuple(str(g) for g in images.images), tuple(step.point))
        child.notes.append("center: (" + ", ".join(center) + ")")
        node.status = "blown-up"
        node.children.append(child)
        node, cur = child, strict
    return ResolutionTrace("sequence", root, "resolved", len(steps), len(steps), {})
