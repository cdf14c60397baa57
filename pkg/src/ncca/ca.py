"""Cellular automata on tori: state sets, rule tables, flow-backed rules,
and the synchronous global step.

A rule is either a RuleTable (entries keyed canonically under a declared
symmetry) or a flow function (see ncca.flow): flow-backed rules evaluate as
center + sum(flow(center, n) for each neighbor).

A CellularAutomaton is `strict` by default: inputs are validated against Q
and, for flow-backed rules, closure over Q is checked exhaustively at
construction.  Lifted automata (ncca.xsim) are built with strict=False:
their state set is only closed under the dynamics reachable from valid
encodings, and the rule is evaluated as plain integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Mapping

import numpy as np

from .errors import ClosureError, GeometryError, StateError, TableError
from .lattice import GEOMETRIES, HEX, TRI, TorusDims, neighbor_index_array

PERMUTATION = "permutation"
ROTATION = "rotation"
NONE = "none"
SYMMETRIES = (PERMUTATION, ROTATION, NONE)


@dataclass(frozen=True)
class StateSet:
    """Finite ordered set of integer states with a distinguished quiescent one."""

    states: tuple[int, ...]
    quiescent: int

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(int(s) for s in self.states))
        if not self.states:
            raise StateError("state set must be non-empty")
        if len(set(self.states)) != len(self.states):
            raise StateError("states must be distinct")
        if self.quiescent not in self.states:
            raise StateError(f"quiescent {self.quiescent} not in states")

    def __contains__(self, value) -> bool:
        return value in self.states

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def index(self, value: int) -> int:
        try:
            return self.states.index(value)
        except ValueError:
            raise StateError(f"state {value} not in state set") from None

    @property
    def sorted_states(self) -> tuple[int, ...]:
        return tuple(sorted(self.states))


def rotations(neighbors: tuple) -> Iterable[tuple]:
    n = len(neighbors)
    for k in range(n):
        yield neighbors[k:] + neighbors[:k]


def canonical_neighbors(symmetry: str, neighbors: tuple) -> tuple:
    """Canonical key of a neighbor tuple under a symmetry: sorted multiset for
    permutation, lexicographically minimal rotation for rotation, identity for none."""
    if symmetry == PERMUTATION:
        return tuple(sorted(neighbors))
    if symmetry == ROTATION:
        return min(rotations(tuple(neighbors)))
    return tuple(neighbors)


def canonical_keys(symmetry: str, states: Iterable[int], n: int) -> list[tuple]:
    """All canonical neighbor keys over a state alphabet."""
    states = tuple(states)
    if symmetry == PERMUTATION:
        return [tuple(m) for m in combinations_with_replacement(sorted(states), n)]
    keys = {canonical_neighbors(symmetry, t) for t in product(states, repeat=n)}
    return sorted(keys)


class RuleTable:
    """Local transition table stored under canonical neighbor keys.

    entries maps (center, canonical_neighbors) -> result state.  The table
    must be total over Q and closed into Q.  Quiescence (entry(q, q..q) == q)
    is required by default; the census machinery passes check_quiescence=False
    to represent candidate tables that lack a quiescent state (such tables can
    never be wrapped in a CellularAutomaton).
    """

    def __init__(self, geometry, states: StateSet, symmetry, entries: Mapping,
                 check_quiescence: bool = True):
        if geometry not in GEOMETRIES:
            raise GeometryError(f"unknown geometry {geometry!r}")
        if symmetry not in SYMMETRIES:
            raise TableError(f"unknown symmetry {symmetry!r}")
        self.geometry = geometry
        self.states = states
        self.symmetry = symmetry
        self.n = 3 if geometry == TRI else 6
        table = {}
        for (g, nbrs), r in entries.items():
            nbrs = tuple(nbrs)
            if len(nbrs) != self.n:
                raise TableError(f"entry ({g}, {nbrs}) has {len(nbrs)} neighbors, want {self.n}")
            if g not in states or any(v not in states for v in nbrs):
                raise TableError(f"entry ({g}, {nbrs}) uses states outside Q")
            key = (g, canonical_neighbors(symmetry, nbrs))
            if key in table and table[key] != r:
                raise TableError(f"conflicting entries for {key}")
            if r not in states:
                raise TableError(f"entry {key} -> {r} leaves Q")
            table[key] = int(r)
        want = len(states) * len(canonical_keys(symmetry, states.states, self.n))
        if len(table) != want:
            missing = next(
                (g, k)
                for g in states
                for k in canonical_keys(symmetry, states.states, self.n)
                if (g, k) not in table
            )
            raise TableError(f"table incomplete: {len(table)}/{want} entries, missing e.g. {missing}")
        self.entries = table
        q = states.quiescent
        if check_quiescence and self.lookup(q, (q,) * self.n) != q:
            raise TableError(f"quiescence violated: entry({q}, {(q,)*self.n}) != {q}")

    def lookup(self, center: int, nbrs: tuple) -> int:
        key = (center, canonical_neighbors(self.symmetry, tuple(nbrs)))
        try:
            return self.entries[key]
        except KeyError:
            raise TableError(f"no entry for {key}") from None

    @property
    def is_quiescent(self) -> bool:
        q = self.states.quiescent
        return self.lookup(q, (q,) * self.n) == q

    def full_items(self):
        """Expand to all (center, full neighbor tuple) -> result pairs."""
        for g in self.states:
            for t in product(self.states.states, repeat=self.n):
                yield (g, t), self.lookup(g, t)

    @classmethod
    def from_function(cls, fn, geometry, states: StateSet, symmetry=PERMUTATION, **kw):
        n = 3 if geometry == TRI else 6
        entries = {
            (g, key): fn(g, key)
            for g in states
            for key in canonical_keys(symmetry, states.states, n)
        }
        return cls(geometry, states, symmetry, entries, **kw)

    def __eq__(self, other):
        return (
            isinstance(other, RuleTable)
            and self.geometry == other.geometry
            and self.states == other.states
            and self.symmetry == other.symmetry
            and self.entries == other.entries
        )


def _is_flow(rule) -> bool:
    return hasattr(rule, "value") and hasattr(rule, "pairs")


@dataclass(frozen=True)
class CellularAutomaton:
    """Geometry + state set + rule (table or flow-backed).

    strict=True validates configurations against Q and, for flow-backed
    rules, verifies closure over all canonical neighbor tuples at
    construction.  strict=False skips both (used for lifted automata whose
    state set is only dynamically closed).
    """

    geometry: str
    states: StateSet
    rule: object
    strict: bool = True

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise GeometryError(f"unknown geometry {self.geometry!r}")
        if isinstance(self.rule, RuleTable):
            if self.rule.geometry != self.geometry:
                raise GeometryError("rule geometry does not match automaton geometry")
            if self.rule.states != self.states:
                raise StateError("rule state set does not match automaton state set")
            if not self.rule.is_quiescent:
                raise TableError("rule has no quiescent state")
        elif _is_flow(self.rule):
            if self.rule.states != self.states:
                raise StateError("flow state set does not match automaton state set")
            if self.strict:
                self._check_flow_closure()
        else:
            raise TableError(f"unsupported rule object {type(self.rule).__name__}")

    @property
    def n(self) -> int:
        return 3 if self.geometry == TRI else 6

    def _check_flow_closure(self):
        flow = self.rule
        for g in self.states:
            for key in canonical_keys(PERMUTATION, self.states.states, self.n):
                v = g + sum(flow.value(g, x) for x in key)
                if v not in self.states:
                    raise ClosureError(
                        f"flow rule leaves Q: t({g}, {key}) = {v}",
                        center=g, neighbors=key, value=v,
                    )


class Configuration:
    """Assignment of integer states to the cells of a torus (row-major)."""

    def __init__(self, dims: TorusDims, values):
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim == 1:
            if arr.size != dims.n_cells:
                raise GeometryError(f"expected {dims.n_cells} values, got {arr.size}")
            arr = arr.reshape(dims.h, dims.w)
        elif arr.shape != (dims.h, dims.w):
            raise GeometryError(f"expected shape {(dims.h, dims.w)}, got {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.dims = dims
        self.cells = arr

    @classmethod
    def filled(cls, dims: TorusDims, value: int) -> "Configuration":
        return cls(dims, np.full((dims.h, dims.w), value, dtype=np.int64))

    @property
    def flat(self) -> np.ndarray:
        return self.cells.reshape(-1)

    def value(self, cell) -> int:
        x, y = self.dims.wrap(cell)
        return int(self.cells[y, x])

    def __getitem__(self, cell) -> int:
        return self.value(cell)

    def replace(self, mapping: Mapping) -> "Configuration":
        """New configuration with some cells overwritten ({(x, y): value})."""
        arr = self.cells.copy()
        for cell, v in mapping.items():
            x, y = self.dims.wrap(cell)
            arr[y, x] = v
        return Configuration(self.dims, arr)

    def translate(self, dx: int, dy: int) -> "Configuration":
        return Configuration(self.dims, np.roll(self.cells, shift=(dy, dx), axis=(0, 1)))

    def __eq__(self, other):
        return (
            isinstance(other, Configuration)
            and self.dims == other.dims
            and np.array_equal(self.cells, other.cells)
        )

    def __repr__(self):
        return f"Configuration({self.dims}, {self.cells.tolist()})"


def total_sum(config: Configuration) -> int:
    """Exact integer sum of all cells (arbitrary precision)."""
    return int(sum(int(v) for v in config.flat))


def random_configuration(dims: TorusDims, values, rng) -> Configuration:
    """Uniform random configuration over a value alphabet.

    rng is a numpy Generator or a random.Random; both draw reproducibly.
    """
    pool = np.asarray(list(values), dtype=np.int64)
    if isinstance(rng, random.Random):
        flat = [pool[rng.randrange(len(pool))] for _ in range(dims.n_cells)]
        return Configuration(dims, np.asarray(flat, dtype=np.int64))
    return Configuration(dims, rng.choice(pool, size=dims.n_cells))


def _validate_states(ca: CellularAutomaton, flat: np.ndarray):
    pool = np.asarray(ca.states.sorted_states, dtype=np.int64)
    if not np.isin(flat, pool).all():
        bad = flat[~np.isin(flat, pool)][0]
        raise StateError(f"configuration value {int(bad)} not in Q")


def apply_rule(ca: CellularAutomaton, center: int, nbrs) -> int:
    """One local transition.  Strict automata validate inputs and the result
    against Q; non-strict flow-backed ones evaluate over the integers."""
    nbrs = tuple(nbrs)
    if len(nbrs) != ca.n:
        raise StateError(f"expected {ca.n} neighbors, got {len(nbrs)}")
    if ca.strict:
        if center not in ca.states or any(v not in ca.states for v in nbrs):
            bad = center if center not in ca.states else next(v for v in nbrs if v not in ca.states)
            raise StateError(f"state {bad} not in Q")
    if isinstance(ca.rule, RuleTable):
        return ca.rule.lookup(center, nbrs)
    out = center + sum(ca.rule.value(center, v) for v in nbrs)
    if ca.strict and out not in ca.states:
        raise ClosureError(f"rule leaves Q: t({center}, {nbrs}) = {out}",
                           center=center, neighbors=nbrs, value=out)
    return out


def step(ca: CellularAutomaton, config: Configuration) -> Configuration:
    """Synchronous global step; the input configuration is unchanged."""
    if config.dims.geometry != ca.geometry:
        raise GeometryError(f"config geometry {config.dims.geometry} != CA geometry {ca.geometry}")
    flat = config.flat
    if ca.strict:
        _validate_states(ca, flat)
    nbr = neighbor_index_array(config.dims)
    if _is_flow(ca.rule):
        order = np.asarray(ca.states.sorted_states, dtype=np.int64)
        idx = np.searchsorted(order, flat)
        in_q = (idx < order.size) & (order[np.minimum(idx, order.size - 1)] == flat)
        if in_q.all():
            mat = flow_matrix(ca.rule, ca.states.sorted_states)
            new = flat + mat[idx[:, None], idx[nbr]].sum(axis=1)
        else:
            # values escaped Q (non-strict lifted CA): plain dict arithmetic
            vals = flat.tolist()
            new = np.fromiter(
                (
                    c + sum(ca.rule.value(c, vals[j]) for j in nbr[i])
                    for i, c in enumerate(vals)
                ),
                dtype=np.int64,
                count=len(vals),
            )
        if ca.strict:
            # closure was verified at construction; nothing to re-check
            pass
    else:
        vals = flat.tolist()
        new = np.fromiter(
            (ca.rule.lookup(c, tuple(vals[j] for j in nbr[i])) for i, c in enumerate(vals)),
            dtype=np.int64,
            count=len(vals),
        )
    return Configuration(config.dims, new)


def evolve(ca: CellularAutomaton, config: Configuration, t: int) -> Configuration:
    """t-fold composition of step; t = 0 is the identity."""
    if t < 0:
        raise ValueError("t must be >= 0")
    for _ in range(t):
        config = step(ca, config)
    return config


@lru_cache(maxsize=128)
def flow_matrix(flow, order: tuple) -> np.ndarray:
    """Dense int64 matrix of flow values over a given state ordering.

    Cached on the flow object's identity (flows are treated as immutable).
    """
    k = len(order)
    mat = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            mat[i, j] = flow.value(a, b)
    mat.setflags(write=False)
    return mat


def classify_symmetry(rule_or_entries, n: int | None = None) -> str:
    """Strongest symmetry class of a full rule table: permutation implies
    rotation; 'none' when even cyclic shifts change results.

    Accepts a RuleTable (expanded to its full table) or a mapping
    {(center, neighbor_tuple): result} that must be total.
    """
    if isinstance(rule_or_entries, RuleTable):
        table = dict(rule_or_entries.full_items())
        n = rule_or_entries.n
    else:
        table = dict(rule_or_entries)
        if not table:
            raise TableError("empty table")
        if n is None:
            n = len(next(iter(table))[1])
    states = sorted({g for g, _ in table} | {v for _, t in table for v in t})
    for g in states:
        for t in product(states, repeat=n):
            if (g, t) not in table:
                raise TableError(f"table incomplete: missing ({g}, {t})")
    is_rot = all(
        table[(g, t)] == table[(g, t[1:] + t[:1])] for g in states for t in product(states, repeat=n)
    )
    if not is_rot:
        return NONE
    is_perm = all(
        table[(g, t)] == table[(g, tuple(sorted(t)))]
        for g in states
        for t in product(states, repeat=n)
    )
    return PERMUTATION if is_perm else ROTATION
