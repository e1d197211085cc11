"""Hironaka's polyhedral game on finite sets of lattice points.

Coordinates in moves are 1-based, matching the usual {1..n} notation: player A
names a subset J, player B picks j in J, and every point α is replaced by α'
with α'_j = Σ_{k∈J} α_k.  A wins once a single vertex is left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import DomainError, GuardError

ROUND_CAP = 64
ORACLE_BUDGET = 200_000

Point = tuple[int, ...]
Subset = tuple[int, ...]


def _minimalize(points: Iterable[Point]) -> tuple[Point, ...]:
    pts = sorted(set(points))
    keep = []
    for p in pts:
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts):
            keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class GameState:
    """Minimal vertex set of conv(S + R^n_+), stored sorted."""

    n: int
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(tuple(int(a) for a in p) for p in self.points)
        if not pts:
            raise DomainError("a game state needs at least one point")
        if any(len(p) != self.n for p in pts):
            raise DomainError(f"every point must have {self.n} coordinates")
        if any(a < 0 for p in pts for a in p):
            raise DomainError("points must have natural coordinates")
        object.__setattr__(self, "points", _minimalize(pts))

    @classmethod
    def of(cls, points: Iterable[Sequence[int]]) -> "GameState":
        pts = [tuple(p) for p in points]
        if not pts:
            raise DomainError("a game state needs at least one point")
        return cls(len(pts[0]), tuple(pts))

    @classmethod
    def parse(cls, text: str) -> "GameState":
        rows = []
        for k, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append(tuple(int(t) for t in line.split()))
            except ValueError:
                raise DomainError(f"line {k}: expected space-separated naturals") from None
        return cls.of(rows)

    def __str__(self) -> str:
        return "{" + ", ".join("(" + ",".join(map(str, p)) + ")" for p in self.points) + "}"


def _check_move(s: GameState, J: Sequence[int], j: Optional[int] = None) -> Subset:
    Js = tuple(sorted(set(J)))
    if len(Js) != len(tuple(J)) or len(Js) < 2 or not all(1 <= k <= s.n for k in Js):
        raise DomainError(f"invalid subset {tuple(J)}: need at least two distinct coordinates in 1..{s.n}")
    if j is not None and j not in Js:
        raise DomainError(f"player B must choose from {Js}, got {j}")
    return Js


def apply_move(s: GameState, J: Sequence[int], j: int) -> GameState:
    Js = _check_move(s, J, j)
    out = []
    for p in s.points:
        q = list(p)
        q[j - 1] = sum(p[k - 1] for k in Js)
        out.append(tuple(q))
    return GameState(s.n, tuple(out))


def is_won(s: GameState) -> bool:
    return len(s.points) == 1


def _subsets(n: int, pairs_only: bool = False) -> list[Subset]:
    sizes = [2] if pairs_only else range(2, n + 1)
    return [c for r in sizes for c in itertools.combinations(range(1, n + 1), r)]


# ---------------------------------------------------------------------------
# exhaustive oracle
# ---------------------------------------------------------------------------


class _Budget(Exception):
    pass


@dataclass
class OracleResult:
    """``rounds`` is the least forced-win length found, None meaning unknown."""

    rounds: Optional[int]
    move: Optional[Subset]
    nodes: int

    @property
    def known(self) -> bool:
        return self.rounds is not None

    def __str__(self) -> str:
        return "unknown" if self.rounds is None else f"A forces a win in {self.rounds}"


def game_tree_oracle(s: GameState, depth: int = 8, budget: int = ORACLE_BUDGET,
                     pairs_only: bool = False) -> OracleResult:
    """Minimax over every subset for A and every reply for B, by iterative deepening."""
    memo: dict[tuple[GameState, int], bool] = {}
    count = [0]
    subsets = _subsets(s.n, pairs_only)

    def wins(t: GameState, d: int) -> bool:
        if is_won(t):
            return True
        if d == 0:
            return False
        key = (t, d)
        if key in memo:
            return memo[key]
        count[0] += 1
        if count[0] > budget:
            raise _Budget
        ok = any(all(wins(apply_move(t, J, j), d - 1) for j in J) for J in subsets)
        memo[key] = ok
        return ok

    if is_won(s):
        return OracleResult(0, None, 0)
    try:
        for d in range(1, depth + 1):
            for J in subsets:
                if all(wins(apply_move(s, J, j), d - 1) for j in J):
                    return OracleResult(d, J, count[0])
    except _Budget:
        pass
    return OracleResult(None, None, count[0])


# ---------------------------------------------------------------------------
# strategy for A
# ---------------------------------------------------------------------------


def potential(s: GameState) -> tuple[int, int, int]:
    """(vertex count, total coordinate spread, size of the largest coordinate)."""
    spread = 0
    for i in range(s.n):
        col = [p[i] for p in s.points]
        spread += max(col) - min(col)
    return (len(s.points), spread, max(max(p) for p in s.points))


def _lookahead(s: GameState, depth: int) -> tuple:
    if is_won(s):
        return (0, 0, 0)
    if depth == 0:
        return potential(s)
    return min(max(_lookahead(apply_move(s, J, j), depth - 1) for j in J) for J in _subsets(s.n, True))


def strategy_a(s: GameState, search_depth: int = 4, lookahead: int = 2) -> Subset:
    """A two-element subset for player A.

    A short exhaustive search over pairs is tried first; otherwise the pair
    minimizing the worst-case potential after ``lookahead`` rounds is chosen
    (ties broken by the sorted pair).
    """
    if is_won(s):
        raise DomainError("the game is already won")
    if s.n < 2:
        raise DomainError("the game needs at least two coordinates")
    pairs = _subsets(s.n, True)
    if len(pairs) == 1:
        return pairs[0]
    res = game_tree_oracle(s, search_depth, budget=2_000, pairs_only=True)
    if res.move is not None:
        return res.move
    scored = [(max(_lookahead(apply_move(s, J, j), lookahead - 1) for j in J), J) for J in pairs]
    return min(scored)[1]


# ---------------------------------------------------------------------------
# playing
# ---------------------------------------------------------------------------


@dataclass
class GameTranscript:
    start: GameState
    rounds: list[tuple[GameState, Subset, int]] = field(default_factory=list)
    final: Optional[GameState] = None
    won: bool = False

    @property
    def capped(self) -> bool:
        return not self.won

    def to_json(self) -> dict:
        return {
            "start": [list(p) for p in self.start.points],
            "rounds": [
                {"state": [list(p) for p in st.points], "J": list(J), "j": j} for st, J, j in self.rounds
            ],
            "final": [list(p) for p in self.final.points] if self.final else None,
            "won": self.won,
        }

    def text(self) -> str:
        lines = [f"start {self.start}"]
        for k, (st, J, j) in enumerate(self.rounds, 1):
            lines.append(f"round {k}: {st}  A: J={{{','.join(map(str, J))}}}  B: j={j}")
        lines.append(("won " if self.won else "round cap reached at ") + str(self.final))
        return "\n".join(lines)


Strategy = Callable[[GameState], Sequence[int]]
Adversary = Callable[[GameState, Subset], int]


def first_choice(s: GameState, J: Subset) -> int:
    return J[0]


def last_choice(s: GameState, J: Subset) -> int:
    return J[-1]


def play_game(s: GameState, strategy: Strategy = strategy_a, adversary: Adversary = first_choice,
              cap: int = ROUND_CAP) -> GameTranscript:
    """Play until the state is won or ``cap`` rounds have been made."""
    tr = GameTranscript(s)
    cur = s
    while not is_won(cur) and len(tr.rounds) < cap:
        J = _check_move(cur, strategy(cur))
        j = adversary(cur, J)
        tr.rounds.append((cur, J, j))
        cur = apply_move(cur, J, j)
    tr.final = cur
    tr.won = is_won(cur)
    return tr


@dataclass
class PolicyReport:
    """Outcome of the strategy against every B policy from a start state."""

    won: bool
    worst_rounds: int
    losing_line: tuple[tuple[Subset, int], ...] = ()


def defeats_all_policies(s: GameState, strategy: Strategy = strategy_a, cap: int = ROUND_CAP) -> PolicyReport:
    """Explore every reply of B; a line reaching ``cap`` rounds is a failure.

    The strategy is deterministic, so the game from a state is a function of
    B's future replies and states can be memoized.
    """
    memo: dict[GameState, int] = {}
    choice: dict[GameState, Subset] = {}

    def worst(t: GameState, budget: int) -> Optional[int]:
        # rounds B can force from t, or None if B can push past the budget
        if is_won(t):
            return 0
        if t in memo:
            r = memo[t]
            return r if r <= budget else None
        if budget == 0:
            return None
        J = choice.setdefault(t, _check_move(t, strategy(t)))
        best = 0
        for j in J:
            r = worst(apply_move(t, J, j), budget - 1)
            if r is None:
                return None
            best = max(best, r + 1)
        memo[t] = best
        return best

    r = worst(s, cap)
    if r is not None:
        return PolicyReport(True, r)
    # recover one losing line for the report
    line = []
    t = s
    while not is_won(t) and len(line) < cap:
        J = choice.get(t) or _check_move(t, strategy(t))
        nxt = None
        for j in J:
            u = apply_move(t, J, j)
            if worst(u, cap - len(line) - 1) is None:
                nxt = (j, u)
                break
        if nxt is None:
            break
        line.append((J, nxt[0]))
        t = nxt[1]
    return PolicyReport(False, cap, tuple(line))
