"""``name:args`` generator strings shared by the CLI and experiment specs."""

from __future__ import annotations

from typing import Callable

from .errors import InvalidParams, ParseError
from .graph import Graph, complete, complete_multipartite, cycle, empty, erdos_renyi, path, star

RANDOM_GENERATORS = {"gnp"}


def _ints(args: list[str], count: int | None, name: str) -> list[int]:
    if count is not None and len(args) != count:
        raise ParseError(f"{name} takes {count} argument(s), got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise ParseError(f"{name} expects integer arguments, got {args}") from exc


def _one(fn: Callable[[int], Graph], name: str) -> Callable[[list[str], int | None], Graph]:
    return lambda args, seed: fn(*_ints(args, 1, name))


def _gnp(args: list[str], seed: int | None) -> Graph:
    if len(args) != 2:
        raise ParseError(f"gnp takes n,p, got {args}")
    try:
        n, p = int(args[0]), float(args[1])
    except ValueError as exc:
        raise ParseError(f"gnp expects n,p, got {args}") from exc
    if seed is None:
        raise InvalidParams("gnp is random and requires a seed")
    return erdos_renyi(n, p, seed)


GENERATORS: dict[str, Callable[[list[str], int | None], Graph]] = {
    "empty": _one(empty, "empty"),
    "complete": _one(complete, "complete"),
    "cycle": _one(cycle, "cycle"),
    "path": _one(path, "path"),
    "star": _one(star, "star"),
    "multipartite": lambda args, seed: complete_multipartite(_ints(args, None, "multipartite")),
    "gnp": _gnp,
}


def split_generator(text: str) -> tuple[str, list[str]]:
    name, sep, rest = text.strip().partition(":")
    name = name.strip().lower()
    if name not in GENERATORS:
        raise ParseError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    args = [a.strip() for a in rest.split(",")] if sep and rest.strip() else []
    return name, args


def is_random(text: str) -> bool:
    return split_generator(text)[0] in RANDOM_GENERATORS


def parse_generator(text: str, seed: int | None = None) -> Graph:
    """Build a graph from e.g. ``"multipartite:3,3"``, ``"cycle:5"`` or ``"gnp:60,0.9"``."""
    name, args = split_generator(text)
    try:
        return GENERATORS[name](args, seed)
    except (ParseError, InvalidParams):
        raise
    except ValueError as exc:
        raise ParseError(f"bad arguments for {name}: {exc}") from exc


def generator_string(name: str, params: list | tuple) -> str:
    return f"{name}:{','.join(str(p) for p in params)}" if params else name
