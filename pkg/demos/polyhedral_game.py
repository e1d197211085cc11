"""Player A's strategy in the polyhedral game against two fixed opponents."""

from __future__ import annotations

from singres.game import GameState, defeats_all_policies, first_choice, last_choice, play_game


def main() -> None:
    start = GameState.of([(4, 0, 1), (0, 3, 2), (1, 1, 0)])
    for adversary in (first_choice, last_choice):
        print(f"B plays {adversary.__name__}")
        print(play_game(start, adversary=adversary).text())
        print()
    report = defeats_all_policies(start)
    print(f"against every policy of B: won={report.won}, worst case {report.worst_rounds} rounds")


if __name__ == "__main__":
    main()
