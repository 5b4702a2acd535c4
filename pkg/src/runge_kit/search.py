"""Exhaustive bounded searches, with checkpointing and deterministic parallel merge.

Kinds of search:

* additive: ``p_a1(x) + p_a2(y) = z^m`` with ``1 <= x <= y <= bound``;
* negative-x: witnesses ``y^m = g_T(x)``, ``y != 0``, for ``x < 0``;
* positive-x: ``y^m = g_T(x)`` with ``x >= 1``;
* bounded-equation: all solutions of ``y^m = g_T(x)`` for one ``(m, n)`` in a box.

Each search is split into outer-index blocks; a block is a pure function of
the task parameters, so blocks can run in any order and on any worker.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import kernels
from .exact import int_nth_root, perfect_power_test, power_exponents
from .family import enumerate_tuples, g_poly
from .parallel import ordered_map


# -- additive equations -------------------------------------------------------


def _p(a: int, t: int) -> int:
    v = 1
    for i in range(a + 1):
        v *= t + i
    return v


# leading arity of the identities p_1(x-1) + x = x^2 and p_2(x-1) + x = x^3
_LEAD = {2: 1, 3: 2}


def trivial_family_predicate(a1: int, a2: int, m: int) -> Callable[[int, int], bool]:
    """Membership in the family coming from ``p_{m-1}(S - 1) + S = S^m``.

    For ``(2, 2, 3)`` this is ``y = x(x+1)(x+2) - 1`` (or with x, y swapped).
    Triples without such an identity get a predicate that is always false.
    """
    lead = _LEAD.get(m)
    if lead is None or lead not in (a1, a2):
        return lambda x, y: False

    def pred(x: int, y: int) -> bool:
        return (a2 == lead and y == _p(a1, x) - 1) or (a1 == lead and x == _p(a2, y) - 1)

    return pred


def _additive_block(args) -> list[tuple[int, int, int]]:
    a1, a2, m, lo, hi, bound = args
    return kernels.additive_pairs(a1, a2, m, lo, hi, bound)


def _triangle_blocks(bound: int, count: int) -> list[tuple[int, int]]:
    """Split ``x`` in ``[1, bound]`` so that each block has about the same number of ``y >= x``."""
    count = max(1, min(count, bound))
    edges = [1]
    for i in range(1, count):
        e = 1 + int(bound * (1 - math.sqrt(1 - i / count)))
        if e > edges[-1]:
            edges.append(e)
    edges.append(bound + 1)
    return list(zip(edges, edges[1:]))


def additive_search(
    a1: int,
    a2: int,
    m: int,
    bound: int,
    exclude_trivial: bool = False,
    strict: bool = False,
    jobs: int = 1,
) -> list[tuple[int, int, int]]:
    """All ``(x, y, z)`` with ``1 <= x <= y <= bound`` and ``p_a1(x) + p_a2(y) = z^m``.

    ``exclude_trivial`` drops the parametric family, ``strict`` requires ``x < y``.
    """
    if bound < 1 or m < 2:
        raise ValueError("need bound >= 1 and m >= 2")
    blocks = _triangle_blocks(bound, 16 * max(1, jobs))
    args = [(a1, a2, m, lo, hi, bound) for lo, hi in blocks]
    pred = trivial_family_predicate(a1, a2, m)
    out = []
    for part in ordered_map(_additive_block, args, jobs):
        for x, y, z in part:
            if strict and x == y:
                continue
            if exclude_trivial and pred(x, y):
                continue
            out.append((x, y, z))
    return out


def additive_count(a1: int, a2: int, m: int, bound: int, jobs: int = 1) -> int:
    return len(additive_search(a1, a2, m, bound, jobs=jobs))


def construct_additive_solution(m: int, tail_arities: Sequence[int], tail_values: Sequence[int]):
    """Complete ``p_lead(x_1) + sum p_ai(x_i) = S^m`` with ``x_1 = S - 1``.

    Returns ``(arities, values, S)`` where ``S`` is the tail sum.
    """
    if m not in _LEAD:
        raise ValueError("only m = 2 and m = 3 have the identity")
    if len(tail_arities) != len(tail_values):
        raise ValueError("arities and values differ in length")
    S = sum(_p(a, x) for a, x in zip(tail_arities, tail_values))
    if S <= 0:
        raise ValueError("tail sum must be positive")
    lead = _LEAD[m]
    arities = (lead, *tail_arities)
    values = (S - 1, *tail_values)
    if sum(_p(a, x) for a, x in zip(arities, values)) != S**m:
        raise ArithmeticError("additive identity failed")
    return arities, values, S


# -- g_T value scans ----------------------------------------------------------


def _g_value(n: int, T: Sequence[int], x: int) -> int:
    return _p(n, x) + sum(_p(a, x) for a in T)


def _is_negative_cube(x: int) -> bool:
    if x >= 0:
        return False
    r, ok = int_nth_root(-x, 3)
    return ok


def _witnesses(v: int, m_max: int) -> list[tuple[int, int]]:
    """``(m, y)`` with ``y^m = v``, ``y != 0``, ``2 <= m <= m_max``."""
    if v == 0:
        return []
    if v == 1:
        return [(m, 1) for m in range(2, m_max + 1)]
    if v == -1:
        return [(m, -1) for m in range(3, m_max + 1, 2)]
    return power_exponents(v, m_max)


def _negative_block(args) -> list[dict]:
    x, n_max, m_max = args
    out = []
    for n in range(2, n_max + 1):
        base = _p(n, x)
        for T in enumerate_tuples(n):
            v = base + sum(_p(a, x) for a in T)
            for m, y in _witnesses(v, m_max):
                rec = {"x": x, "m": m, "n": n, "T": list(T), "y": y}
                if y < 0:
                    # y > 0 is impossible here; the odd root is kept with its sign
                    rec["abs_y"] = -y
                    rec["note"] = "negative value, odd exponent"
                if m == 3 and T[:2] == (0, 1) and _is_negative_cube(x):
                    rec["cube_family"] = True
                out.append(rec)
    return out


def negative_x_scan(x_min: int, n_max: int, m_max: int, jobs: int = 1) -> list[dict]:
    """Witnesses ``(m, n, T, y)`` for every ``x`` in ``[x_min, -1]``."""
    if x_min > -1:
        raise ValueError("x_min must be negative")
    args = [(x, n_max, m_max) for x in range(x_min, 0)]
    return [r for part in ordered_map(_negative_block, args, jobs) for r in part]


def negative_x_members(records: Iterable[dict]) -> list[int]:
    return sorted({r["x"] for r in records})


def _positive_block(args) -> list[dict]:
    x, n_max, m_max = args
    out = []
    for n in range(2, n_max + 1):
        base = _p(n, x)
        for T in enumerate_tuples(n):
            v = base + sum(_p(a, x) for a in T)
            cap = m_max if m_max else v.bit_length()
            for m, y in power_exponents(v, cap):
                out.append({"x": x, "m": m, "n": n, "T": list(T), "y": y})
    return out


def positive_x_scan(x_max: int, n_max: int, m_max: int | None = None, jobs: int = 1) -> list[dict]:
    """All ``y^m = g_T(x)`` with ``1 <= x <= x_max``, ``2 <= n <= n_max``, one record per exponent."""
    if x_max < 1:
        raise ValueError("x_max must be positive")
    args = [(x, n_max, m_max) for x in range(1, x_max + 1)]
    return [r for part in ordered_map(_positive_block, args, jobs) for r in part]


def _bounded_block(args) -> list[dict]:
    m, n, lo, hi = args
    out = []
    for T in enumerate_tuples(n):
        f = g_poly(n, T)
        for x in kernels.power_candidates(f, m, lo, hi):
            v = f(x)
            y = perfect_power_test(v, m)
            if y is None:
                continue
            ys = [y, -y] if (m % 2 == 0 and y) else [y]
            for yy in ys:
                out.append({"x": x, "y": yy, "m": m, "n": n, "T": list(T)})
    return out


def bounded_equation_search(m: int, n: int, x_lo: int, x_hi: int, jobs: int = 1, blocks: int = 16) -> list[dict]:
    """Every integer solution of ``y^m = g_T(x)``, all ``T`` in ``A_n``, with ``x_lo <= x <= x_hi``.

    Complete only inside the box; used where Runge's condition fails.
    """
    step = max(1, -(-(x_hi - x_lo + 1) // blocks))
    args = [(m, n, lo, min(lo + step - 1, x_hi)) for lo in range(x_lo, x_hi + 1, step)]
    recs = [r for part in ordered_map(_bounded_block, args, jobs) for r in part]
    recs.sort(key=lambda r: (r["T"], r["x"], r["y"]))
    return recs


# -- checkpointed driver ------------------------------------------------------


class CheckpointError(RuntimeError):
    """A checkpoint file is unreadable or belongs to another task."""


@dataclass(frozen=True)
class SearchTask:
    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("additive", "negative-x", "positive-x", "bounded-equation")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown search kind {self.kind!r}")
        if self.params.get("bound", 1) < 1:
            raise ValueError("bound must be at least 1")

    @property
    def task_id(self) -> str:
        return self.kind + ":" + json.dumps(self.params, sort_keys=True, separators=(",", ":"))

    def units(self) -> list:
        """Work units in canonical order; their concatenated output is the task result."""
        p = self.params
        if self.kind == "additive":
            return [(p["a1"], p["a2"], p["m"], lo, hi, p["bound"]) for lo, hi in _triangle_blocks(p["bound"], p.get("blocks", 256))]
        if self.kind == "negative-x":
            return [(x, p["n_max"], p["m_max"]) for x in range(p["x_min"], 0)]
        if self.kind == "positive-x":
            return [(x, p["n_max"], p.get("m_max")) for x in range(1, p["x_max"] + 1)]
        step = p.get("step", 1000)
        return [(p["m"], p["n"], lo, min(lo + step - 1, p["x_hi"])) for lo in range(p["x_lo"], p["x_hi"] + 1, step)]

    def run_unit(self, unit) -> list:
        return _UNIT_FN[self.kind](unit)

    def finish(self, rows: list) -> list:
        """Apply the post-filters that do not affect partitioning."""
        p = self.params
        if self.kind == "additive":
            pred = trivial_family_predicate(p["a1"], p["a2"], p["m"])
            rows = [
                r for r in rows
                if not (p.get("strict") and r[0] == r[1]) and not (p.get("exclude_trivial") and pred(r[0], r[1]))
            ]
        return rows


def _run_task_unit(args):
    task, unit = args
    return task.run_unit(unit)


_UNIT_FN = {
    "additive": lambda u: [list(r) for r in _additive_block(u)],
    "negative-x": _negative_block,
    "positive-x": _positive_block,
    "bounded-equation": _bounded_block,
}


def _jsonable(rows):
    """Big integers as decimal strings, recursively."""
    if isinstance(rows, bool):
        return rows
    if isinstance(rows, int):
        return str(rows)
    if isinstance(rows, dict):
        return {k: (_jsonable(v) if k != "T" else v) for k, v in rows.items()}
    if isinstance(rows, (list, tuple)):
        return [_jsonable(r) for r in rows]
    return rows


def results_digest(rows: list) -> str:
    blob = json.dumps(_jsonable(rows), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _write_atomic(path: str, payload: dict) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ckpt-", dir=d)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _from_json(rows):
    if isinstance(rows, str) and (rows.lstrip("-").isdigit()):
        return int(rows)
    if isinstance(rows, dict):
        return {k: _from_json(v) for k, v in rows.items()}
    if isinstance(rows, list):
        return [_from_json(r) for r in rows]
    return rows


def load_checkpoint(path: str, task: SearchTask) -> dict:
    try:
        with open(path) as fh:
            ck = json.load(fh)
        cursor, results, digest = ck["cursor"], ck["results"], ck["digest"]
        tid = ck["task_id"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CheckpointError(f"corrupt checkpoint {path}: {exc}") from exc
    if tid != task.task_id:
        raise CheckpointError(f"checkpoint {path} belongs to task {tid!r}, not {task.task_id!r}")
    rows = _from_json(results)
    if results_digest(rows) != digest or ck.get("count") != len(rows):
        raise CheckpointError(f"checkpoint {path} fails its digest check")
    if not isinstance(cursor, int) or not 0 <= cursor <= len(task.units()):
        raise CheckpointError(f"checkpoint {path} has an invalid cursor")
    return {"cursor": cursor, "results": rows}


@dataclass
class SearchReport:
    task_id: str
    results: list
    units_done: int
    units_total: int

    @property
    def complete(self) -> bool:
        return self.units_done == self.units_total


def run_with_checkpoint(
    task: SearchTask,
    checkpoint: str | None = None,
    resume: bool = False,
    jobs: int = 1,
    max_units: int | None = None,
    every_seconds: float = 60.0,
    sink: Callable[[object], None] | None = None,
) -> SearchReport:
    """Run ``task`` unit by unit, checkpointing its cursor and partial results.

    ``resume`` continues from ``checkpoint`` (a missing file starts fresh, a
    corrupt or foreign one is an error). ``max_units`` stops early, leaving a
    resumable checkpoint. ``sink`` sees each raw row as soon as its batch ends.
    """
    units = task.units()
    cursor, rows = 0, []
    if resume and checkpoint and os.path.exists(checkpoint):
        ck = load_checkpoint(checkpoint, task)
        cursor, rows = ck["cursor"], ck["results"]
    stop = len(units) if max_units is None else min(len(units), cursor + max_units)
    batch = max(1, jobs) * 4
    last = time.monotonic()

    def save():
        if checkpoint:
            _write_atomic(checkpoint, {
                "task_id": task.task_id,
                "cursor": cursor,
                "count": len(rows),
                "digest": results_digest(rows),
                "results": _jsonable(rows),
            })

    while cursor < stop:
        chunk = units[cursor:min(stop, cursor + batch)]
        for part in ordered_map(_run_task_unit, [(task, u) for u in chunk], jobs):
            rows.extend(part)
            if sink:
                for r in part:
                    sink(r)
        cursor += len(chunk)
        if time.monotonic() - last >= every_seconds or cursor == stop:
            save()
            last = time.monotonic()
    if not units:
        save()
    done = cursor
    final = task.finish(rows) if done == len(units) else rows
    return SearchReport(task.task_id, final, done, len(units))
