"""Theorem-independent conservation oracles: exhaustive and seeded-random
torus sum checking, plus the theorem-vs-oracle census harness.

These never consult the flow decomposition; they enumerate or sample torus
configurations, apply one (or more) synchronous steps by direct rule
evaluation, and compare exact sums.  Minimum torus dimensions (enforced by
TorusDims) guarantee a cell is never its own neighbor, so a local pattern
can witness a violation without self-overlap.

Sums inside the vectorized paths use int64; lift constructions bound state
magnitudes so that cells * max|state| stays far below 2^62.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

import numpy as np

from .ca import (
    PERMUTATION,
    CellularAutomaton,
    Configuration,
    RuleTable,
    StateSet,
    canonical_keys,
    flow_matrix,
    step,
    total_sum,
)
from .errors import StateError, TableError
from .lattice import HEX, TRI, TorusDims, neighbor_index_array

DEFAULT_BUDGET = 2 ** 24


@dataclass(frozen=True)
class OracleReport:
    verdict: str  # conserving | not-conserving | unknown
    configs_checked: int
    torus: TorusDims
    failure: tuple | None = None  # (Configuration, sum_before, sum_after)
    trials: int | None = None
    steps: int | None = None
    seed: int | None = None

    @property
    def conserving(self) -> bool:
        return self.verdict == "conserving"


def _rule_parts(ca_or_rule):
    """(states, geometry, rule_table_or_None, flow_or_None)"""
    if isinstance(ca_or_rule, RuleTable):
        return ca_or_rule.states, ca_or_rule.geometry, ca_or_rule, None
    if isinstance(ca_or_rule, CellularAutomaton):
        if isinstance(ca_or_rule.rule, RuleTable):
            return ca_or_rule.states, ca_or_rule.geometry, ca_or_rule.rule, None
        return ca_or_rule.states, ca_or_rule.geometry, None, ca_or_rule.rule
    raise TableError(f"expected CellularAutomaton or RuleTable, got {type(ca_or_rule).__name__}")


def _batch_stepper(ca_or_rule, dims: TorusDims):
    """Vectorized one-step function on (m, n_cells) value arrays.

    Values must lie in Q; outputs are raw rule values (which may leave Q for
    non-strict flow-backed automata -- the sum check does not care).
    """
    states, geometry, table, flow = _rule_parts(ca_or_rule)
    if geometry != dims.geometry:
        raise StateError(f"rule geometry {geometry} does not match torus {dims}")
    order = states.sorted_states
    vals = np.asarray(order, dtype=np.int64)
    nbr = neighbor_index_array(dims)
    k = len(order)
    n = dims.n_neighbors

    if flow is not None:
        F = flow_matrix(flow, order)

        def do(values):
            idx = np.searchsorted(vals, values)
            return values + F[idx[:, :, None], idx[:, nbr]].sum(axis=2)

        return do

    if k ** (n + 1) > 2 ** 21:
        raise StateError(f"table too large for the vectorized oracle: |Q|^{n + 1} = {k ** (n + 1)}")
    lut = np.empty((k,) * (n + 1), dtype=np.int64)
    for key in product(range(k), repeat=n + 1):
        lut[key] = table.lookup(order[key[0]], tuple(order[i] for i in key[1:]))

    def do(values):
        idx = np.searchsorted(vals, values)
        nidx = idx[:, nbr]  # (m, N, n)
        return lut[(idx,) + tuple(nidx[:, :, j] for j in range(n))]

    return do


def brute_force_nc(ca_or_rule, dims: TorusDims, *, budget: int = DEFAULT_BUDGET,
                   alphabet=None) -> OracleReport:
    """Enumerate torus configurations and check one-step sum preservation.

    Enumerates every configuration over `alphabet` (default: all of Q) in
    lexicographic order, cell (0, 0) least significant.  A violation is
    definite ('not-conserving' with the witness configuration); exhausting
    the space without one is 'conserving'.  If the space exceeds `budget`,
    only the first `budget` configurations are checked and the verdict is
    'unknown' unless a violation was found.
    """
    states, _, _, _ = _rule_parts(ca_or_rule)
    alpha = tuple(alphabet) if alphabet is not None else states.states
    for a in alpha:
        if a not in states:
            raise StateError(f"alphabet value {a} not in Q")
    alpha_arr = np.asarray(sorted(alpha), dtype=np.int64)
    k = len(alpha_arr)
    n_cells = dims.n_cells
    total = k ** n_cells  # exact python int
    to_check = int(min(total, budget))
    stepper = _batch_stepper(ca_or_rule, dims)

    chunk = 1 << 14
    for start in range(0, to_check, chunk):
        m = min(chunk, to_check - start)
        idx = np.arange(start, start + m, dtype=np.int64)
        digits = np.empty((m, n_cells), dtype=np.int64)
        rem = idx.copy()
        for j in range(n_cells):
            digits[:, j] = rem % k
            rem //= k
        values = alpha_arr[digits]
        new = stepper(values)
        bad = values.sum(axis=1) != new.sum(axis=1)
        if bad.any():
            i = int(np.argmax(bad))
            cfg = Configuration(dims, values[i])
            return OracleReport(
                "not-conserving",
                configs_checked=start + i + 1,
                torus=dims,
                failure=(cfg, int(values[i].sum()), int(new[i].sum())),
            )
    verdict = "conserving" if to_check == total else "unknown"
    return OracleReport(verdict, configs_checked=to_check, torus=dims)


def random_nc_test(ca_or_rule, dims: TorusDims, *, trials: int, steps: int,
                   seed: int) -> OracleReport:
    """Seeded random conservation test: uniform configurations over Q,
    evolved `steps` steps with the sum checked after every step."""
    if trials < 1 or steps < 1:
        raise ValueError("trials and steps must be >= 1")
    states, _, table, flow = _rule_parts(ca_or_rule)
    rng = np.random.default_rng(seed)
    pool = np.asarray(states.sorted_states, dtype=np.int64)
    values = rng.choice(pool, size=(trials, dims.n_cells))

    open_flow = (
        isinstance(ca_or_rule, CellularAutomaton)
        and flow is not None
        and not ca_or_rule.strict
    )
    if open_flow:
        # values may escape Q mid-run; go through the per-config step path
        for i in range(trials):
            cfg = Configuration(dims, values[i])
            s0 = total_sum(cfg)
            cur = cfg
            for t in range(steps):
                nxt = step(ca_or_rule, cur)
                if total_sum(nxt) != s0:
                    return OracleReport(
                        "not-conserving", configs_checked=i + 1, torus=dims,
                        failure=(cur, total_sum(cur), total_sum(nxt)),
                        trials=trials, steps=steps, seed=seed,
                    )
                cur = nxt
        return OracleReport("conserving", configs_checked=trials, torus=dims,
                            trials=trials, steps=steps, seed=seed)

    stepper = _batch_stepper(ca_or_rule, dims)
    s0 = values.sum(axis=1)
    cur = values
    for t in range(steps):
        nxt = stepper(cur)
        bad = nxt.sum(axis=1) != s0
        if bad.any():
            i = int(np.argmax(bad))
            cfg = Configuration(dims, cur[i])
            return OracleReport(
                "not-conserving", configs_checked=i + 1, torus=dims,
                failure=(cfg, int(cur[i].sum()), int(nxt[i].sum())),
                trials=trials, steps=steps, seed=seed,
            )
        cur = nxt
    return OracleReport("conserving", configs_checked=trials, torus=dims,
                        trials=trials, steps=steps, seed=seed)


@dataclass(frozen=True)
class CensusRow:
    table_id: int
    theorem: str
    oracle: str


@dataclass(frozen=True)
class CensusReport:
    geometry: str
    torus: TorusDims
    n_tables: int
    n_theorem_conserving: int
    n_oracle_conserving: int
    n_unknown: int
    disagreements: tuple[CensusRow, ...]
    conserving_ids: tuple[int, ...]

    @property
    def agree(self) -> bool:
        return not self.disagreements


def table_from_id(table_id: int, geometry: str, states: StateSet) -> RuleTable:
    """The permutation-symmetric table whose canonical entries are the
    base-|Q| digits of table_id (least significant digit first, entries
    ordered by (center, multiset))."""
    n = 3 if geometry == TRI else 6
    keys = [(g, m) for g in states for m in canonical_keys(PERMUTATION, states.states, n)]
    k = len(states)
    entries = {}
    rem = table_id
    for key in keys:
        entries[key] = states.states[rem % k]
        rem //= k
    return RuleTable(geometry, states, PERMUTATION, entries, check_quiescence=False)


def oracle_vs_theorem_census(geometry: str, states: StateSet, dims: TorusDims, *,
                             budget: int = DEFAULT_BUDGET, sample: int | None = None,
                             seed: int = 0) -> CensusReport:
    """Cross-validate the flow-theorem checker against the brute-force oracle
    over permutation-symmetric rule tables.

    With sample=None every table is enumerated (the space must be modest);
    otherwise `sample` table ids are drawn reproducibly from the given seed.
    Oracle verdicts of 'unknown' (budget exceeded) are counted separately and
    never counted as disagreements.
    """
    from .flow import check_nc_hex, check_nc_tri

    n = 3 if geometry == TRI else 6
    n_slots = len(states) * len(canonical_keys(PERMUTATION, states.states, n))
    total = len(states) ** n_slots
    if sample is None:
        if total > 2 ** 20:
            raise ValueError(f"{total} tables; pass sample= for a seeded subset")
        ids = range(total)
    else:
        py_rng = random.Random(seed)
        ids = sorted({py_rng.randrange(total) for _ in range(sample)})

    check = check_nc_tri if geometry == TRI else check_nc_hex
    n_th = n_or = n_unknown = 0
    disagreements = []
    conserving = []
    count = 0
    for tid in ids:
        rt = table_from_id(tid, geometry, states)
        th = check(rt)
        orc = brute_force_nc(rt, dims, budget=budget)
        count += 1
        if th.conserving:
            n_th += 1
        if orc.conserving:
            n_or += 1
        if orc.verdict == "unknown":
            n_unknown += 1
        elif th.conserving != orc.conserving:
            disagreements.append(CensusRow(tid, th.status, orc.verdict))
        if th.conserving and orc.conserving:
            conserving.append(tid)
    return CensusReport(
        geometry=geometry,
        torus=dims,
        n_tables=count,
        n_theorem_conserving=n_th,
        n_oracle_conserving=n_or,
        n_unknown=n_unknown,
        disagreements=tuple(disagreements),
        conserving_ids=tuple(conserving),
    )
