"""Brute-force deck simulator.

This module moves whole decks around the way the trick is performed by
hand and never consults the recurrence in :mod:`cardtrick.trick_core`, so
it can serve as an independent oracle for it.

Cards are identified by their position in the starting deck (1..C). Dealing
is round-robin from the top, left to right, so the first card dealt is row
1 of stack 1. Gathering reads each stack top row first, placing ``j``
non-chosen stacks above the chosen one and the rest below.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from cardtrick.errors import InvalidArgument
from cardtrick.trick_core import TrickSpec


@dataclass(frozen=True)
class DeckState:
    cards: tuple[int, ...]
    tracked: int
    iteration: int = 0

    def __post_init__(self) -> None:
        if sorted(self.cards) != list(range(1, len(self.cards) + 1)):
            raise InvalidArgument("deck must be a permutation of 1..C")
        if self.tracked not in self.cards:
            raise InvalidArgument(f"tracked card {self.tracked} is not in the deck")

    @classmethod
    def identity(cls, C: int, tracked: int) -> DeckState:
        return cls(tuple(range(1, C + 1)), tracked, 0)

    @property
    def position(self) -> int:
        """1-based position of the tracked card from the top."""
        return self.cards.index(self.tracked) + 1

    def __len__(self) -> int:
        return len(self.cards)


@dataclass(frozen=True)
class StackLayout:
    """Cards laid out in ``n`` stacks; ``stacks[i][r]`` is stack i+1, row r+1."""

    stacks: tuple[tuple[int, ...], ...]
    tracked: int
    iteration: int

    @property
    def n(self) -> int:
        return len(self.stacks)

    def locate(self, card: int) -> tuple[int, int]:
        """Return the 1-based ``(stack, row)`` holding ``card``."""
        for index, stack in enumerate(self.stacks, start=1):
            if card in stack:
                return index, stack.index(card) + 1
        raise InvalidArgument(f"card {card} is not on the table")


def deal(deck: DeckState, n: int) -> StackLayout:
    C = len(deck)
    if n < 1 or C % n:
        raise InvalidArgument(f"cannot deal {C} cards into {n} equal stacks")
    stacks = tuple(deck.cards[i::n] for i in range(n))
    return StackLayout(stacks, deck.tracked, deck.iteration + 1)


def gather(
    layout: StackLayout,
    chosen: int,
    j: int,
    order: Sequence[int] | None = None,
) -> DeckState:
    """Pick the stacks back up with ``j`` of the others above ``chosen``.

    ``order`` lists the non-chosen stack indices top to bottom; by default
    they go in ascending index order. Only the count above the chosen stack
    affects where the tracked card ends up.
    """
    n = layout.n
    if not 1 <= chosen <= n:
        raise InvalidArgument(f"chosen stack {chosen} outside [1, {n}]")
    if not 0 <= j <= n - 1:
        raise InvalidArgument(f"j={j} outside [0, {n - 1}]")
    others = [i for i in range(1, n + 1) if i != chosen]
    if order is None:
        order = others
    elif sorted(order) != others:
        raise InvalidArgument(f"order {list(order)} must list the stacks other than {chosen}")
    sequence = [*order[:j], chosen, *order[j:]]
    cards = tuple(card for index in sequence for card in layout.stacks[index - 1])
    return DeckState(cards, layout.tracked, layout.iteration)


@dataclass(frozen=True)
class TraceStep:
    """One iteration: the deck after gathering, the stack named, and the row."""

    deck: DeckState
    chosen: int
    row: int


@dataclass(frozen=True)
class Trace:
    spec: TrickSpec
    start: int
    initial: DeckState
    steps: tuple[TraceStep, ...] = field(default=())

    @property
    def final(self) -> DeckState:
        return self.steps[-1].deck if self.steps else self.initial

    @property
    def final_position(self) -> int:
        return self.final.position

    @property
    def positions(self) -> list[int]:
        """Tracked position after each iteration, starting with iteration 0."""
        return [self.initial.position] + [s.deck.position for s in self.steps]

    def to_lines(self) -> str:
        """One deck per line, comma-separated identities, initial deck first."""
        decks = [self.initial] + [s.deck for s in self.steps]
        return "".join(",".join(map(str, d.cards)) + "\n" for d in decks)

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "iterations": len(self.steps),
            "final_position": self.final_position,
            "steps": [
                {
                    "iteration": i,
                    "chosen_stack": s.chosen,
                    "row": s.row,
                    "position": s.deck.position,
                    "deck": list(s.deck.cards),
                }
                for i, s in enumerate(self.steps, start=1)
            ],
        }


def run_trick(spec: TrickSpec, d0: int, k: int) -> Trace:
    """Perform ``k`` iterations with the tracked card starting at ``d0``.

    The audience always names the stack that really holds the card.
    """
    if not 1 <= d0 <= spec.C:
        raise InvalidArgument(f"start position must lie in [1, {spec.C}], got {d0}")
    if k < 0:
        raise InvalidArgument(f"iteration count must be non-negative, got {k}")
    deck = DeckState.identity(spec.C, d0)
    initial = deck
    steps = []
    for _ in range(k):
        layout = deal(deck, spec.n)
        chosen, row = layout.locate(deck.tracked)
        deck = gather(layout, chosen, spec.j)
        steps.append(TraceStep(deck, chosen, row))
    return Trace(spec, d0, initial, tuple(steps))


def sweep_all_starts(spec: TrickSpec, k: int) -> set[int]:
    """Final tracked positions over every start; a singleton certifies the trick at k."""
    return {run_trick(spec, d0, k).final_position for d0 in range(1, spec.C + 1)}
