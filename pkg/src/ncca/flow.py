"""Flow functions and the number-conservation decision procedures.

A flow function is a two-argument integer map on states.  A local rule
decomposes over flows when

    t(g, n_1, .., n_k) = g + flow(g, n_1) + ... + flow(g, n_k)

and flow(x, y) = -flow(y, x) for all states x, y.  For rotation- or
permutation-symmetric triangular rules and permutation-symmetric hexagonal
rules this decomposition exists iff the rule is number-conserving, with the
flow recovered pointwise from the rule:

    triangular:  flow(g, a) = t(g,a,q,q) - t(g,q,q,q) - t(q,g,q,q) + q
    hexagonal:   flow(g, x) = d(g,x,q,q,q,q,q) - d(g,q,q,q,q,q,q)
                              - d(q,g,q,q,q,q,q) + q

where q is the quiescent state.  check_nc_tri / check_nc_hex decide
conservation by extracting the candidate flow, checking antisymmetry, and
verifying the reconstruction identity over every neighbor tuple.

The module also implements the intermediate balance identities the
hexagonal proof rests on (a 19-term neighborhood balance and four
reduction lemmas), usable as independent diagnostics: every flow-built
rule satisfies all of them, and any failure pinpoints a non-conserving
entry.  The 19-term balance is implemented with the left side summing all
six ring neighbors and the six single-neighbor terms ranging over each of
them once (the evidently intended symmetric completion; the identity fails
on the identity rule without it).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .ca import (
    NONE,
    PERMUTATION,
    ROTATION,
    CellularAutomaton,
    RuleTable,
    StateSet,
    canonical_keys,
    classify_symmetry,
    flow_matrix,
)
from .errors import ClosureError, FlowError, GeometryError, TableError
from .lattice import HEX, TRI


class FlowFunction:
    """Integer-valued map on state pairs, default 0 on unlisted pairs.

    Looking up (x, y) falls back to -pairs[(y, x)] when only the opposite
    direction is stored, so an antisymmetric flow needs each pair listed
    once.  Storing both directions is allowed and is NOT forced to be
    consistent: extraction from a non-conserving rule legitimately produces
    a non-antisymmetric flow, which is kept as-is for checking.
    """

    def __init__(self, states: StateSet, pairs=None):
        self.states = states
        clean = {}
        for (x, y), v in (pairs or {}).items():
            if x not in states or y not in states:
                raise FlowError(f"flow pair ({x}, {y}) uses states outside Q")
            v = int(v)
            if v != 0 or (x, y) in clean:
                clean[(int(x), int(y))] = v
        self.pairs = clean

    def value(self, x: int, y: int) -> int:
        if (x, y) in self.pairs:
            return self.pairs[(x, y)]
        if (y, x) in self.pairs:
            return -self.pairs[(y, x)]
        return 0

    def first_asymmetry(self):
        """First (x, y) with value(x,y) != -value(y,x), scanning Q in order; None if antisymmetric."""
        for x in self.states:
            for y in self.states:
                if self.value(x, y) != -self.value(y, x):
                    return (x, y)
        return None

    @property
    def is_antisymmetric(self) -> bool:
        return self.first_asymmetry() is None

    def require_antisymmetric(self):
        bad = self.first_asymmetry()
        if bad is not None:
            x, y = bad
            raise FlowError(
                f"flow not antisymmetric: flow({x},{y}) = {self.value(x, y)} "
                f"but flow({y},{x}) = {self.value(y, x)}"
            )

    def support(self):
        """Nonzero values as (x, y, v) with x < y, sorted (canonical form).

        Only meaningful for antisymmetric flows; diagonal or conflicting
        entries are rejected.
        """
        self.require_antisymmetric()
        out = []
        for x in sorted(self.states):
            for y in sorted(self.states):
                if x < y and self.value(x, y) != 0:
                    out.append((x, y, self.value(x, y)))
        return out

    def shifted(self, shift: int) -> "FlowFunction":
        """Reindexed flow: value'(x+shift, y+shift) = value(x, y)."""
        states = StateSet(
            tuple(s + shift for s in self.states.states),
            self.states.quiescent + shift,
        )
        pairs = {(x + shift, y + shift): v for (x, y), v in self.pairs.items()}
        return FlowFunction(states, pairs)

    def __eq__(self, other):
        if not isinstance(other, FlowFunction) or self.states != other.states:
            return False
        qs = self.states.states
        return all(self.value(x, y) == other.value(x, y) for x in qs for y in qs)

    __hash__ = object.__hash__

    def __repr__(self):
        body = ", ".join(f"({x},{y})->{v}" for (x, y), v in sorted(self.pairs.items()))
        return f"FlowFunction(q={self.states.quiescent}, {{{body}}})"


def build_rule_from_flow(flow: FlowFunction, geometry: str, *, strict: bool = True) -> CellularAutomaton:
    """Flow-backed automaton t(g, n..) = g + sum of flows.

    Requires antisymmetry; with strict=True (default) closure over Q is
    verified for every canonical neighbor multiset and a ClosureError names
    the first offending tuple.
    """
    flow.require_antisymmetric()
    return CellularAutomaton(geometry, flow.states, flow, strict=strict)


def tabulate(ca: CellularAutomaton, symmetry: str = PERMUTATION) -> RuleTable:
    """Materialize an automaton's rule as a canonical table."""
    fn, states, n, _ = _eval(ca)
    entries = {
        (g, key): fn(g, key)
        for g in states
        for key in canonical_keys(symmetry, states.states, n)
    }
    return RuleTable(ca.geometry, states, symmetry, entries, check_quiescence=False)


# ---------------------------------------------------------------------------
# evaluation plumbing

def _eval(rule_or_ca):
    """(value_fn, states, n, geometry) for a RuleTable or CellularAutomaton.

    Flow-backed automata are evaluated as plain integer arithmetic with no
    closure enforcement: the checkers reason about values, not membership.
    """
    r = rule_or_ca
    if isinstance(r, RuleTable):
        return r.lookup, r.states, r.n, r.geometry
    if isinstance(r, CellularAutomaton):
        if isinstance(r.rule, RuleTable):
            return r.rule.lookup, r.states, r.n, r.geometry
        flow = r.rule
        return (
            lambda g, nbrs: g + sum(flow.value(g, x) for x in nbrs),
            r.states,
            r.n,
            r.geometry,
        )
    raise TableError(f"expected RuleTable or CellularAutomaton, got {type(r).__name__}")


def _symmetry_class(rule_or_ca) -> str:
    r = rule_or_ca
    if isinstance(r, CellularAutomaton):
        if not isinstance(r.rule, RuleTable):
            return PERMUTATION  # flow-backed rules are neighbor-order-free
        r = r.rule
    if r.symmetry == PERMUTATION:
        return PERMUTATION
    return classify_symmetry(r)


def _require_geometry(rule_or_ca, geometry):
    _, _, _, g = _eval(rule_or_ca)
    if g != geometry:
        raise GeometryError(f"expected a {geometry} rule, got {g}")


def _vals_order(states: StateSet):
    order = states.sorted_states
    vals = np.asarray(order, dtype=np.int64)
    return order, vals, order.index(states.quiescent)


def _is_flow_backed(rule_or_ca):
    return isinstance(rule_or_ca, CellularAutomaton) and not isinstance(rule_or_ca.rule, RuleTable)


def _tri_center_slice(rule_or_ca, gi, order, vals):
    """t(g, a, b, c) for fixed center g over all (a, b, c), as a (k,k,k) array."""
    k = len(order)
    if _is_flow_backed(rule_or_ca):
        F = flow_matrix(rule_or_ca.rule, order)
        return (
            vals[gi]
            + F[gi][:, None, None]
            + F[gi][None, :, None]
            + F[gi][None, None, :]
        )
    fn, _, _, _ = _eval(rule_or_ca)
    g = order[gi]
    out = np.empty((k, k, k), dtype=np.int64)
    for ia, a in enumerate(order):
        for ib, b in enumerate(order):
            for ic, c in enumerate(order):
                out[ia, ib, ic] = fn(g, (a, b, c))
    return out


def _hex_delta_vec(rule_or_ca):
    """Vectorized hexagonal local function over state *indices* (sorted order).

    Returns (d, order, vals, qi) where d(g, n1..n6) accepts broadcastable
    integer index arrays and yields int64 values.
    """
    fn, states, n, geometry = _eval(rule_or_ca)
    if geometry != HEX:
        raise GeometryError("expected a hexagonal rule")
    order, vals, qi = _vals_order(states)
    k = len(order)
    if _is_flow_backed(rule_or_ca):
        F = flow_matrix(rule_or_ca.rule, order)

        def d(g, *ns):
            out = vals[np.asarray(g)]
            for x in ns:
                out = out + F[np.asarray(g), np.asarray(x)]
            return out

        return d, order, vals, qi

    # permutation table: value by sorted-multiset flat index
    powers = k ** np.arange(6, dtype=np.int64)
    cls_val = np.full((k, k ** 6), -1, dtype=np.int64)
    for gi, g in enumerate(order):
        for key in combinations_with_replacement(range(k), 6):
            flat = int(sum(key[i] * powers[i] for i in range(6)))
            cls_val[gi, flat] = fn(g, tuple(order[i] for i in key))

    def d(g, *ns):
        shape = np.broadcast_shapes(*(np.asarray(a).shape for a in (g, *ns)))
        stacked = np.stack(
            [np.broadcast_to(np.asarray(x), shape) for x in ns], axis=-1
        )
        s = np.sort(stacked, axis=-1)
        flat = (s * powers).sum(axis=-1)
        return cls_val[np.broadcast_to(np.asarray(g), shape), flat]

    return d, order, vals, qi


def _first_index(mask):
    """Lexicographically first True position of a boolean array, or None."""
    if not mask.any():
        return None
    return np.unravel_index(int(np.argmax(mask)), mask.shape)


# ---------------------------------------------------------------------------
# extraction

def extract_flow_tri(rule_or_ca) -> FlowFunction:
    """Candidate flow of a triangular rule, computed pointwise:

        flow(g, a) = t(g,a,q,q) - t(g,q,q,q) - t(q,g,q,q) + q

    Antisymmetry is NOT assumed: the result is returned as-is so callers
    can check it.  The rule must be rotation- or permutation-symmetric.
    """
    _require_geometry(rule_or_ca, TRI)
    if _symmetry_class(rule_or_ca) == NONE:
        raise TableError("flow extraction needs a rotation- or permutation-symmetric rule")
    fn, states, _, _ = _eval(rule_or_ca)
    q = states.quiescent
    pairs = {}
    for g in states:
        for a in states:
            v = fn(g, (a, q, q)) - fn(g, (q, q, q)) - fn(q, (g, q, q)) + q
            pairs[(g, a)] = v
    return FlowFunction(states, pairs)


def extract_flow_hex(rule_or_ca) -> FlowFunction:
    """Candidate flow of a permutation-symmetric hexagonal rule:

        flow(g, x) = d(g,x,q,q,q,q,q) - d(g,q,q,q,q,q,q) - d(q,g,q,q,q,q,q) + q
    """
    _require_geometry(rule_or_ca, HEX)
    if _symmetry_class(rule_or_ca) != PERMUTATION:
        raise TableError("hexagonal flow extraction needs a permutation-symmetric rule")
    fn, states, _, _ = _eval(rule_or_ca)
    q = states.quiescent
    q5 = (q,) * 5
    pairs = {}
    for g in states:
        for x in states:
            v = fn(g, (x,) + q5) - fn(g, (q,) + q5) - fn(q, (g,) + q5) + q
            pairs[(g, x)] = v
    return FlowFunction(states, pairs)


# ---------------------------------------------------------------------------
# verdicts

@dataclass(frozen=True)
class Witness:
    """First counterexample found by a checker."""

    kind: str  # antisymmetry | reconstruction | identity | lemma
    center: int | None = None
    neighbors: tuple | None = None
    expected: int | None = None
    actual: int | None = None
    pair: tuple | None = None
    detail: str = ""

    def __str__(self):
        if self.kind == "antisymmetry":
            return f"antisymmetry fails at pair {self.pair}: {self.detail}"
        loc = f"center={self.center} neighbors={self.neighbors}"
        return f"{self.kind} fails at {loc}: expected {self.expected}, got {self.actual} {self.detail}".rstrip()


@dataclass(frozen=True)
class NCVerdict:
    status: str  # conserving | not-conserving | not-applicable
    failure_witness: Witness | None = None
    extracted_flow: FlowFunction | None = None

    @property
    def conserving(self) -> bool:
        return self.status == "conserving"

    @property
    def applicable(self) -> bool:
        return self.status != "not-applicable"


def _antisymmetry_witness(flow: FlowFunction) -> Witness | None:
    bad = flow.first_asymmetry()
    if bad is None:
        return None
    x, y = bad
    return Witness(
        kind="antisymmetry",
        pair=(x, y),
        expected=-flow.value(y, x),
        actual=flow.value(x, y),
        detail=f"flow({x},{y})={flow.value(x, y)}, flow({y},{x})={flow.value(y, x)}",
    )


def check_nc_tri(rule_or_ca) -> NCVerdict:
    """Decide number conservation of a symmetric triangular rule.

    Extracts the candidate flow, checks antisymmetry, then verifies
    t(g,a,b,c) = g + flow(g,a) + flow(g,b) + flow(g,c) over every tuple in
    Q^4.  Conserving iff both hold; asymmetric rules get 'not-applicable'
    (the criterion does not speak about them).
    """
    _require_geometry(rule_or_ca, TRI)
    if _symmetry_class(rule_or_ca) == NONE:
        return NCVerdict("not-applicable")
    phi = extract_flow_tri(rule_or_ca)
    w = _antisymmetry_witness(phi)
    if w is not None:
        return NCVerdict("not-conserving", failure_witness=w, extracted_flow=phi)
    order, vals, _ = _vals_order(phi.states)
    P = flow_matrix(phi, order)
    for gi, g in enumerate(order):
        t_slice = _tri_center_slice(rule_or_ca, gi, order, vals)
        want = (
            vals[gi]
            + P[gi][:, None, None]
            + P[gi][None, :, None]
            + P[gi][None, None, :]
        )
        pos = _first_index(t_slice != want)
        if pos is not None:
            ia, ib, ic = pos
            nbrs = (order[ia], order[ib], order[ic])
            return NCVerdict(
                "not-conserving",
                failure_witness=Witness(
                    kind="reconstruction",
                    center=g,
                    neighbors=nbrs,
                    expected=int(want[pos]),
                    actual=int(t_slice[pos]),
                ),
                extracted_flow=phi,
            )
    return NCVerdict("conserving", extracted_flow=phi)


def check_nc_hex(rule_or_ca) -> NCVerdict:
    """Decide number conservation of a permutation-symmetric hexagonal rule
    (reconstruction verified over every tuple in Q^7, evaluated through the
    canonical multiset classes)."""
    _require_geometry(rule_or_ca, HEX)
    if _symmetry_class(rule_or_ca) != PERMUTATION:
        return NCVerdict("not-applicable")
    psi = extract_flow_hex(rule_or_ca)
    w = _antisymmetry_witness(psi)
    if w is not None:
        return NCVerdict("not-conserving", failure_witness=w, extracted_flow=psi)
    d, order, vals, _ = _hex_delta_vec(rule_or_ca)
    k = len(order)
    P = flow_matrix(psi, order)
    shape6 = [np.arange(k).reshape((1,) * i + (k,) + (1,) * (5 - i)) for i in range(6)]
    for gi, g in enumerate(order):
        actual = d(gi, *shape6)
        want = vals[gi]
        for ax in shape6:
            want = want + P[gi][ax]
        pos = _first_index(actual != want)
        if pos is not None:
            nbrs = tuple(order[i] for i in pos)
            return NCVerdict(
                "not-conserving",
                failure_witness=Witness(
                    kind="reconstruction",
                    center=g,
                    neighbors=nbrs,
                    expected=int(np.broadcast_to(want, actual.shape)[pos]),
                    actual=int(actual[pos]),
                ),
                extracted_flow=psi,
            )
    return NCVerdict("conserving", extracted_flow=psi)


# ---------------------------------------------------------------------------
# proof-identity diagnostics

def check_delta_identity_tri(rule_or_ca):
    """Neighborhood balance of the triangular proof: for all (g,a,b,c),

        t(a,g,q,q) + t(b,g,q,q) + t(c,g,q,q) + t(g,a,b,c)
        + 2t(q,a,q,q) + 2t(q,b,q,q) + 2t(q,c,q,q) - a - b - c - g - 6q = 0.

    Necessary for conservation; holds identically for flow-built rules.
    Returns (ok, first_witness_or_None).
    """
    _require_geometry(rule_or_ca, TRI)
    fn, states, _, _ = _eval(rule_or_ca)
    order, vals, qi = _vals_order(states)
    k = len(order)
    q = states.quiescent
    P2 = np.empty((k, k), dtype=np.int64)  # P2[x, y] = t(x, y, q, q)
    for ix, x in enumerate(order):
        for iy, y in enumerate(order):
            P2[ix, iy] = fn(x, (y, q, q))
    a_ix = np.arange(k).reshape(k, 1, 1)
    b_ix = np.arange(k).reshape(1, k, 1)
    c_ix = np.arange(k).reshape(1, 1, k)
    for gi, g in enumerate(order):
        t_slice = _tri_center_slice(rule_or_ca, gi, order, vals)
        delta = (
            P2[a_ix, gi] + P2[b_ix, gi] + P2[c_ix, gi] + t_slice
            + 2 * P2[qi, a_ix] + 2 * P2[qi, b_ix] + 2 * P2[qi, c_ix]
            - vals[a_ix] - vals[b_ix] - vals[c_ix] - g - 6 * q
        )
        pos = _first_index(delta != 0)
        if pos is not None:
            nbrs = tuple(order[i] for i in pos)
            return False, Witness(
                kind="identity", center=g, neighbors=nbrs,
                expected=0, actual=int(delta[pos]),
            )
    return True, None


def check_hex_eq1(rule_or_ca, *, sample: int | None = None, seed: int = 0):
    """Corrected 19-term hexagonal neighborhood balance: for all
    (g,a,b,c,d,e,f) with the six neighbors arranged in a ring a-b-c-d-e-f,

        g+a+b+c+d+e+f+12q =
          D(g,a,b,c,d,e,f)
          + D(a,b,f,g,q..) + D(b,a,c,g,q..) + D(c,b,d,g,q..)
          + D(d,c,e,g,q..) + D(e,d,f,g,q..) + D(f,a,e,g,q..)
          + D(q,a,q..) + D(q,b,q..) + D(q,c,q..) + D(q,d,q..) + D(q,e,q..) + D(q,f,q..)
          + D(q,a,b,q..) + D(q,b,c,q..) + D(q,c,d,q..) + D(q,d,e,q..)
          + D(q,e,f,q..) + D(q,f,a,q..)

    Checked over all of Q^7, or over `sample` seeded random tuples when the
    full product is too large.  Returns (ok, first_witness_or_None).
    """
    dfun, order, vals, qi = _hex_delta_vec(rule_or_ca)
    k = len(order)
    q = order[qi]
    if sample is None and k ** 7 > 2 ** 24:
        raise ValueError(f"|Q|^7 = {k ** 7} too large for exhaustive mode; pass sample=")
    if sample is None:
        axes = [np.arange(k).reshape((1,) * i + (k,) + (1,) * (6 - i)) for i in range(7)]
        g, a, b, c, dd, e, f = axes
    else:
        rng = np.random.default_rng(seed)
        g, a, b, c, dd, e, f = rng.integers(0, k, size=(7, sample))

    lhs = vals[g] + vals[a] + vals[b] + vals[c] + vals[dd] + vals[e] + vals[f] + 12 * q
    rhs = dfun(g, a, b, c, dd, e, f)
    ring = [(a, b, f), (b, a, c), (c, b, dd), (dd, c, e), (e, dd, f), (f, a, e)]
    for x, u, v in ring:
        rhs = rhs + dfun(x, u, v, g, qi, qi, qi)
    for x in (a, b, c, dd, e, f):
        rhs = rhs + dfun(qi, x, qi, qi, qi, qi, qi)
    for x, u in ((a, b), (b, c), (c, dd), (dd, e), (e, f), (f, a)):
        rhs = rhs + dfun(qi, x, u, qi, qi, qi, qi)

    mismatch = np.asarray(lhs != rhs)
    pos = _first_index(mismatch)
    if pos is None:
        return True, None
    if sample is None:
        tup = tuple(order[i] for i in pos)
    else:
        i = pos[0]
        tup = tuple(order[int(t[i])] for t in (g, a, b, c, dd, e, f))
    lhs_b = np.broadcast_to(lhs, mismatch.shape)
    rhs_b = np.broadcast_to(rhs, mismatch.shape)
    return False, Witness(
        kind="identity",
        center=tup[0],
        neighbors=tup[1:],
        expected=int(lhs_b[pos]),
        actual=int(rhs_b[pos]),
    )


@dataclass(frozen=True)
class LemmaResult:
    passed: bool
    counterexample: tuple | None = None


@dataclass(frozen=True)
class LemmaReport:
    """Per-lemma outcome of the four hexagonal reduction identities."""

    lemma1: LemmaResult
    lemma2: LemmaResult
    lemma3: LemmaResult
    lemma4: LemmaResult

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in (self.lemma1, self.lemma2, self.lemma3, self.lemma4))


def check_hex_lemmas(rule_or_ca) -> LemmaReport:
    """Check the four reduction lemmas of the hexagonal theorem; each is a
    necessary condition for conservation of a permutation-symmetric rule.

    Lemma 1 (4 -> fewer variables), over (g, x, y, z):
        D(g,x,y,z,q,q,q) = g+x+y+z+12q - D(x,g,q..) - D(q,x,y,g,q..)
          - D(y,g,q..) - D(q,y,z,g,q..) - D(z,g,q..) - D(q,x,z,g,q..)
          - 3D(q,x,q..) - 3D(q,y,q..) - 3D(q,z,q..)
    Lemma 2, over (x, y):
        D(q,x,y,q..) = 11q+x+y - 5D(q,x,q..) - 5D(q,y,q..) - D(x,q..) - D(y,q..)
    Lemma 3, over (x, y):
        8q+x+y = 3D(q,x,q..) + 3D(q,y,q..) + D(q,x,y,q..) + D(q,y,x,q..)
          + D(x,y,q..) + D(y,x,q..)
    Lemma 4, over x:
        x = -6q + 6D(q,x,q..) + D(x,q..)
    """
    d, order, vals, qi = _hex_delta_vec(rule_or_ca)
    k = len(order)
    q = order[qi]

    def witness(mask):
        pos = _first_index(np.asarray(mask))
        if pos is None:
            return LemmaResult(True)
        return LemmaResult(False, tuple(order[i] for i in pos))

    g = np.arange(k).reshape(k, 1, 1, 1)
    x4 = np.arange(k).reshape(1, k, 1, 1)
    y4 = np.arange(k).reshape(1, 1, k, 1)
    z4 = np.arange(k).reshape(1, 1, 1, k)
    lhs1 = d(g, x4, y4, z4, qi, qi, qi)
    rhs1 = (
        vals[g] + vals[x4] + vals[y4] + vals[z4] + 12 * q
        - d(x4, g, qi, qi, qi, qi, qi) - d(qi, x4, y4, g, qi, qi, qi)
        - d(y4, g, qi, qi, qi, qi, qi) - d(qi, y4, z4, g, qi, qi, qi)
        - d(z4, g, qi, qi, qi, qi, qi) - d(qi, x4, z4, g, qi, qi, qi)
        - 3 * d(qi, x4, qi, qi, qi, qi, qi)
        - 3 * d(qi, y4, qi, qi, qi, qi, qi)
        - 3 * d(qi, z4, qi, qi, qi, qi, qi)
    )
    r1 = witness(lhs1 != rhs1)

    x2 = np.arange(k).reshape(k, 1)
    y2 = np.arange(k).reshape(1, k)
    lhs2 = d(qi, x2, y2, qi, qi, qi, qi)
    rhs2 = (
        11 * q + vals[x2] + vals[y2]
        - 5 * d(qi, x2, qi, qi, qi, qi, qi) - 5 * d(qi, y2, qi, qi, qi, qi, qi)
        - d(x2, qi, qi, qi, qi, qi, qi) - d(y2, qi, qi, qi, qi, qi, qi)
    )
    r2 = witness(lhs2 != rhs2)

    lhs3 = 8 * q + vals[x2] + vals[y2]
    rhs3 = (
        3 * d(qi, x2, qi, qi, qi, qi, qi) + 3 * d(qi, y2, qi, qi, qi, qi, qi)
        + d(qi, x2, y2, qi, qi, qi, qi) + d(qi, y2, x2, qi, qi, qi, qi)
        + d(x2, y2, qi, qi, qi, qi, qi) + d(y2, x2, qi, qi, qi, qi, qi)
    )
    r3 = witness(lhs3 != rhs3)

    x1 = np.arange(k)
    lhs4 = vals[x1]
    rhs4 = -6 * q + 6 * d(qi, x1, qi, qi, qi, qi, qi) + d(x1, qi, qi, qi, qi, qi, qi)
    r4 = witness(lhs4 != rhs4)

    return LemmaReport(r1, r2, r3, r4)
