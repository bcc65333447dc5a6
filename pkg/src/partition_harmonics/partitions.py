"""Combinatorial ground truth for the partition numbers p_n.

Two independent routes are provided: Euler's pentagonal-number recurrence
and a direct count of the solutions of ``n_1 + 2 n_2 + ... + n n_n = n``.
The third-leading-term identities of the tail analysis are expressed here
as integer weight vectors over ``p_0, p_1, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import TooLarge
from .report import VerificationReport

__all__ = [
    "PartitionTable",
    "partitions_euler",
    "partitions_enumerate",
    "partitions_table",
    "partition",
    "pentagonal_offsets",
    "euler_backrefs",
    "euler_residual_weights",
    "third_term_weights",
    "third_term_coefficient",
    "PRINTED_ROWS",
    "printed_row",
    "table80_check",
    "evaluate_weights",
    "binomial",
    "verify_oracles",
    "verify_third_terms",
]

ENUMERATION_LIMIT = 40

Provenance = Literal["euler", "enumeration"]


@dataclass(frozen=True)
class PartitionTable:
    """Exact values ``p_0 .. p_N``; index ``n`` holds ``p_n``."""

    values: tuple[int, ...]
    provenance: Provenance

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def p(self, n: int) -> int:
        """``p_n``, with ``p_n = 0`` for negative ``n``."""
        return self.values[n] if n >= 0 else 0


def pentagonal_offsets(limit: int):
    """Yield ``(sign, offset)`` for generalized pentagonal numbers ``<= limit``.

    Order: k=1 gives 1, 2; k=2 gives 5, 7; k=3 gives 12, 15; signs
    alternate ``+, +, -, -, +, +, ...``.
    """
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > limit:
            return
        sign = 1 if k % 2 else -1
        yield sign, g1
        g2 = g1 + k
        if g2 <= limit:
            yield sign, g2
        k += 1


_EULER: list[int] = [1]


def _extend_euler(max_n: int) -> None:
    p = _EULER
    for n in range(len(p), max_n + 1):
        total = 0
        for sign, g in pentagonal_offsets(n):
            total += sign * p[n - g]
        p.append(total)


def partitions_euler(max_n: int) -> PartitionTable:
    """``p_0 .. p_max_n`` from the pentagonal-number recurrence.

    >>> partitions_euler(10).values
    (1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42)
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if len(_EULER) <= max_n:
        _extend_euler(max_n)
    return PartitionTable(tuple(_EULER[: max_n + 1]), "euler")


def partition(n: int) -> int:
    """``p_n`` (0 for negative ``n``)."""
    if n < 0:
        return 0
    if len(_EULER) <= n:
        _extend_euler(n)
    return _EULER[n]


def _count(part: int, remaining: int) -> int:
    # parts processed from largest to smallest; the last part (1) always
    # completes the remaining weight in exactly one way
    if part == 1 or remaining == 0:
        return 1
    total = 0
    used = 0
    while used <= remaining:
        total += _count(part - 1, remaining - used)
        used += part
    return total


def partitions_enumerate(n: int) -> int:
    """Count solutions of ``n_1 + 2 n_2 + ... + n n_n = n`` by depth-first search.

    Each ``n_k`` ranges over ``0 .. floor(n/k)`` and branches never exceed
    the running weight ``n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    return _count(n, n) if n else 1


def partitions_table(max_n: int, oracle: str = "euler") -> PartitionTable:
    if oracle == "euler":
        return partitions_euler(max_n)
    if oracle in ("enumerate", "enumeration"):
        if max_n > ENUMERATION_LIMIT:
            raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
        return PartitionTable(tuple(partitions_enumerate(n) for n in range(max_n + 1)),
                              "enumeration")
    raise ValueError(f"unknown oracle {oracle!r}")


# -- weight vectors over p_0, p_1, ... ---------------------------------------

Weights = dict[int, int]


def _prune(w: Weights) -> Weights:
    return {i: c for i, c in sorted(w.items()) if c and i >= 0}


def euler_backrefs(j: int) -> Weights:
    """Weights of the recurrence's right-hand side for ``p_j``, negative indices dropped."""
    w: Weights = {}
    for sign, g in pentagonal_offsets(j):
        w[j - g] = w.get(j - g, 0) + sign
    return _prune(w)


def euler_residual_weights(j: int) -> Weights:
    """``p_j - (euler back-references)``; evaluates to 0 for every ``j >= 1``."""
    w = {i: -c for i, c in euler_backrefs(j).items()}
    w[j] = w.get(j, 0) + 1
    return _prune(w)


def third_term_weights(kappa: int) -> Weights:
    """Weights of the third-leading-term coefficient for index ``kappa``.

    Built as the difference of the residuals of two consecutive Euler
    recurrences plus ``p_0``::

        (p_k - backrefs(k)) - (p_{k-1} - backrefs(k-1)) + p_0
    """
    if kappa < 2:
        raise ValueError("kappa must be >= 2")
    w = dict(euler_residual_weights(kappa))
    for i, c in euler_residual_weights(kappa - 1).items():
        w[i] = w.get(i, 0) - c
    w[0] = w.get(0, 0) + 1
    return _prune(w)


def evaluate_weights(weights: Weights, table: PartitionTable | None = None) -> int:
    top = max(weights, default=0)
    if table is None or table.max_n < top:
        table = partitions_euler(max(top, 0))
    return sum(c * table.p(i) for i, c in weights.items())


def third_term_coefficient(kappa: int) -> int:
    """Value of the third-leading-term combination; expected to be 1."""
    return evaluate_weights(third_term_weights(kappa))


# Rows exactly as printed, keyed by the p-index of their leading term.
PRINTED_ROWS: dict[int, tuple[tuple[int, ...], Weights]] = {
    2: ((3,), {2: 1, 1: -2, 0: 1}),
    3: ((4, 5), {3: 1, 2: -2, 0: 2}),
    4: ((6, 7), {4: 1, 3: -2, 1: 1, 0: 1}),
    5: ((8, 9), {5: 1, 4: -2, 2: 1, 0: 2}),
    6: ((10, 11), {6: 1, 5: -2, 3: 1, 1: 1}),
}


def third_term_index(s: int) -> int:
    """Index ``k`` of the leading partition in the third-term coefficient for order ``s``.

    ``s = 3 -> 2``, ``s = 4, 5 -> 3``, ..., ``s = 10, 11 -> 6``.
    """
    if s < 3:
        raise ValueError("s must be >= 3")
    return s // 2 + 1


def printed_row(s: int) -> Weights:
    if not 3 <= s <= 11:
        raise ValueError("the printed table covers 3 <= s <= 11")
    return dict(PRINTED_ROWS[third_term_index(s)][1])


def format_weights(w: Weights) -> str:
    parts = []
    for i, c in sorted(w.items(), reverse=True):
        term = f"p{i}" if abs(c) == 1 else f"{abs(c)}p{i}"
        parts.append(("- " if c < 0 else "+ ") + term)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def table80_check(s: int) -> VerificationReport:
    """Check the printed row covering ``s`` evaluates to 1 and matches the
    programmatic Euler-difference weights."""
    row = printed_row(s)
    k = third_term_index(s)
    report = VerificationReport("printed_row", {"s": s, "kappa": k})
    report.info["row"] = format_weights(row)
    value = evaluate_weights(row)
    report.add("row value", 1, value)
    report.add("row equals Euler-difference weights", third_term_weights(k), row)
    return report


def binomial(n: int, k: int) -> int:
    """``C(n, k)`` by the multiplicative formula, without factorials."""
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


def verify_oracles(max_n: int) -> VerificationReport:
    """Euler recurrence against direct enumeration for ``0 <= n <= max_n``."""
    table = partitions_euler(max_n)
    report = VerificationReport("oracle_agreement", {"max_n": max_n})
    for n in range(max_n + 1):
        report.add(f"p{n}", table[n], partitions_enumerate(n))
    return report


def verify_third_terms(max_kappa: int) -> VerificationReport:
    """Third-term combination equals 1, and equals its two-recurrence decomposition."""
    report = VerificationReport("third_term", {"max_kappa": max_kappa})
    table = partitions_euler(max_kappa)
    for kappa in range(2, max_kappa + 1):
        report.add(f"kappa={kappa}", 1, evaluate_weights(third_term_weights(kappa), table))
        split = (evaluate_weights(euler_residual_weights(kappa), table)
                 - evaluate_weights(euler_residual_weights(kappa - 1), table) + table[0])
        report.add(f"kappa={kappa} decomposition", evaluate_weights(third_term_weights(kappa), table), split)
    return report
