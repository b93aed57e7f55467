"""Exact fair division: welfare orderings, cake cutting, indivisible goods and negotiation.

Rationals are returned as ``fractions.Fraction``. Inputs may be ints,
Fractions or strings such as ``"3/7"``; floats are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from . import _core
from ._core import DomainError, GuardExceeded

__all__ = [
    "DomainError",
    "GuardExceeded",
    "brute_force",
    "collective_utility",
    "cut_cake",
    "leximin_compare",
    "negotiate",
    "run_cli",
    "solve",
    "survey_axiom",
]


def _text(value: Any) -> str:
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"expected an exact rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, str):
        return value
    raise TypeError(f"expected int, Fraction or str, got {type(value).__name__}")


def _texts(values: Iterable[Any]) -> list[str]:
    return [_text(v) for v in values]


def _exact(tree: Any, keys: Iterable[str]) -> Any:
    keys = set(keys)

    def convert(value: Any) -> Any:
        if isinstance(value, str):
            return Fraction(value)
        if isinstance(value, (list, tuple)):
            return type(value)(convert(v) for v in value)
        return value

    if isinstance(tree, dict):
        return {k: (convert(v) if k in keys else v) for k, v in tree.items()}
    return tree


def _json_rationals(value: Any) -> Any:
    if isinstance(value, float):
        raise TypeError(f"expected an exact rational, got {value!r}")
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Mapping):
        return {k: _json_rationals(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_rationals(v) for v in value]
    return value


def _scenario(scenario: Mapping[str, Any] | str) -> str:
    if isinstance(scenario, str):
        return scenario
    return json.dumps(_json_rationals(scenario))


def collective_utility(cuf: str, vector: Sequence[Any]) -> Fraction:
    """Value of a utility vector under a CUF ("util", "egal", "nash", "rank:2", "owa:1,1/2", ...)."""
    return Fraction(_core.collective_utility(cuf, _texts(vector)))


def leximin_compare(u: Sequence[Any], v: Sequence[Any]) -> str:
    """"less", "indifferent" or "greater" for u against v under the leximin ordering."""
    return _core.leximin_compare(_texts(u), _texts(v))


def survey_axiom(swo: str, axiom: str, samples: int = 1000, seed: int = 1, min_n: int = 2, max_n: int = 6) -> dict:
    """Check an axiom for an SWO on random witnesses."""
    result = _core.survey_axiom(swo, axiom, samples, seed, min_n, max_n)
    if result["first_violation"] is not None:
        lhs, rhs = result["first_violation"]
        result["first_violation"] = ([Fraction(x) for x in lhs], [Fraction(x) for x in rhs])
    return result


def cut_cake(procedure: str, agents: Sequence[tuple[Sequence[Any], Sequence[Any]]], contiguous: bool = False) -> dict:
    """Run a cake-cutting procedure.

    Each agent is a (breakpoints, densities) pair describing a
    piecewise-constant density on [0, 1] that integrates to 1.
    """
    result = _core.run_cake(procedure, [(_texts(b), _texts(d)) for b, d in agents], contiguous)
    result["pieces"] = [[(Fraction(lo), Fraction(hi)) for lo, hi in piece] for piece in result["pieces"]]
    result["values"] = [[Fraction(x) for x in row] for row in result["values"]]
    return result


def solve(scenario: Mapping[str, Any] | str, criterion: str | None = None, node_limit: int = 0) -> dict:
    """Optimal XOR allocation by branch and bound. `scenario` is a dict or JSON text."""
    return _exact(_core.solve(_scenario(scenario), criterion, node_limit), ["utilities", "objective", "gap"])


def brute_force(scenario: Mapping[str, Any] | str, criterion: str | None = None) -> dict:
    """Optimal XOR allocation by exhaustive enumeration."""
    return _exact(_core.brute_force(_scenario(scenario), criterion), ["utilities", "objective", "gap"])


def negotiate(
    scenario: Mapping[str, Any] | str,
    generator: str | None = None,
    seed: int | None = None,
    policy: str | None = None,
) -> dict:
    """Run deals until none is individually rational in the generator's class."""
    result = _exact(_core.negotiate(_scenario(scenario), generator, seed, policy), ["balance", "welfare"])
    result["trace"] = [
        _exact(step, ["payments", "welfare_before", "welfare_after"]) for step in result["trace"]
    ]
    return result


def run_cli(*args: str) -> tuple[int, str, str]:
    """Run the command-line interface in-process; returns (exit code, stdout, stderr)."""
    return tuple(_core.run_cli(list(args)))
