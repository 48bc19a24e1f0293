"""Rate-region evaluators for the single- and double-state MAC bounds.

Each evaluator turns one factored joint distribution into a :class:`MiBundle`
of mutual-information values; the region for that distribution is then a
polygon in the (R1, R2) quadrant. Convex hulls over many distributions are
taken by :mod:`macsi.search`.
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .channels import DoubleStateChannel, SingleStateChannel
from .errors import AlphabetMismatch, DegenerateBundle, InvalidDistribution, MissingVariable, R1Infeasible
from .prob import Alphabet, ConditionalPmf, JointPmf, compose, mutual_information

__all__ = [
    "AuxChoiceSingle",
    "AuxChoiceDouble",
    "MiBundle",
    "RatePoint",
    "FeasibilityCertificate",
    "Polygon",
    "assemble_single",
    "assemble_double",
    "eval_thm1",
    "eval_thm2",
    "eval_thm3",
    "eval_li",
    "thm1_max_r2",
    "thm2_feasible",
    "thm2_max_r2",
    "thm2_constraints",
    "thm2_limits",
    "PROJ_DIRS",
    "region_polygon",
    "full_coop_sum_capacity",
    "informed_receiver_capacity",
    "blahut_arimoto",
    "FEAS_TOL",
    "example_aux_thm1",
    "example_aux_thm2",
    "example_aux_li",
]

FEAS_TOL = 1e-9

SINGLE_VARS = ("U", "V", "V1", "V2", "X1", "X2", "W", "Y")
DOUBLE_VARS = ("V1", "V2", "S1", "S2", "X1", "X2", "Y")


# -- auxiliary choices ------------------------------------------------------

def _simplex_rows(name, arr, ndim):
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != ndim:
        raise AlphabetMismatch(f"{name} must have {ndim} axes, got shape {arr.shape}")
    if np.any(arr < 0) or np.any(np.abs(arr.sum(axis=-1) - 1.0) > 1e-9):
        raise InvalidDistribution(f"{name} rows must be probability vectors")
    return arr


@dataclass(frozen=True, eq=False)
class AuxChoiceSingle:
    """Auxiliary conditionals for the single-state bounds.

    Shapes: ``p_u`` (|U|,), ``p_x1_u`` (|U|, |X1|), ``p_x2_u`` (|U|, |X2|),
    ``p_v_w`` (|W|, |V|), ``p_v1_wx1`` (|W|, |X1|, |V1|), ``p_v2_wx2``
    (|W|, |X2|, |V2|). Omitted V1/V2 factors mean constant auxiliaries.
    """

    p_u: np.ndarray
    p_x1_u: np.ndarray
    p_x2_u: np.ndarray
    p_v_w: np.ndarray
    p_v1_wx1: np.ndarray | None = None
    p_v2_wx2: np.ndarray | None = None

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "p_u", _simplex_rows("p_u", self.p_u, 1))
        set_(self, "p_x1_u", _simplex_rows("p_x1_u", self.p_x1_u, 2))
        set_(self, "p_x2_u", _simplex_rows("p_x2_u", self.p_x2_u, 2))
        set_(self, "p_v_w", _simplex_rows("p_v_w", self.p_v_w, 2))
        if self.p_v1_wx1 is not None:
            set_(self, "p_v1_wx1", _simplex_rows("p_v1_wx1", self.p_v1_wx1, 3))
        if self.p_v2_wx2 is not None:
            set_(self, "p_v2_wx2", _simplex_rows("p_v2_wx2", self.p_v2_wx2, 3))

    @property
    def sizes(self) -> dict[str, int]:
        return {
            "U": self.p_u.shape[0],
            "V": self.p_v_w.shape[1],
            "V1": 1 if self.p_v1_wx1 is None else self.p_v1_wx1.shape[2],
            "V2": 1 if self.p_v2_wx2 is None else self.p_v2_wx2.shape[2],
        }

    @classmethod
    def constant(cls, p_x1, p_x2, n_w: int) -> "AuxChoiceSingle":
        """U, V, V1, V2 all constant; independent inputs with the given PMFs."""
        return cls(
            p_u=np.ones(1),
            p_x1_u=np.asarray(p_x1, dtype=float)[None],
            p_x2_u=np.asarray(p_x2, dtype=float)[None],
            p_v_w=np.ones((n_w, 1)),
        )


@dataclass(frozen=True, eq=False)
class AuxChoiceDouble:
    """Auxiliary conditionals for the double-state bounds.

    ``p_v1`` is P(V1 | S1) with shape (|S1|, |V1|) or, when ``li_form`` is
    set, optionally P(V1 | S1, X1) with shape (|S1|, |X1|, |V1|); likewise
    ``p_v2``.
    """

    p_x1: np.ndarray
    p_x2: np.ndarray
    p_v1: np.ndarray
    p_v2: np.ndarray
    li_form: bool = False

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "p_x1", _simplex_rows("p_x1", self.p_x1, 1))
        set_(self, "p_x2", _simplex_rows("p_x2", self.p_x2, 1))
        for name in ("p_v1", "p_v2"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim == 3 and not self.li_form:
                raise InvalidDistribution(f"{name} may depend on the input only in Li form")
            set_(self, name, _simplex_rows(name, arr, arr.ndim if arr.ndim in (2, 3) else 2))

    @property
    def sizes(self) -> dict[str, int]:
        return {"V1": self.p_v1.shape[-1], "V2": self.p_v2.shape[-1]}


def assemble_single(ch: SingleStateChannel, aux: AuxChoiceSingle) -> JointPmf:
    """Joint of (U, V, V1, V2, X1, X2, W, Y) for the factorization
    P_W P_U P_{X1|U} P_{X2|U} P_{V|W} P_{V1|W,X1} P_{V2|W,X2} P_{Y|W,X1,X2}."""
    sz = aux.sizes
    U, V, V1, V2 = (Alphabet(n, sz[n]) for n in ("U", "V", "V1", "V2"))
    W, X1, X2, Y = ch.W, ch.X1, ch.X2, ch.Y
    v1 = np.ones((W.size, X1.size, 1)) if aux.p_v1_wx1 is None else aux.p_v1_wx1
    v2 = np.ones((W.size, X2.size, 1)) if aux.p_v2_wx2 is None else aux.p_v2_wx2
    factors = [
        ch.state_pmf,
        JointPmf([U], aux.p_u),
        ConditionalPmf([X1], [U], aux.p_x1_u),
        ConditionalPmf([X2], [U], aux.p_x2_u),
        ConditionalPmf([V], [W], aux.p_v_w),
        ConditionalPmf([V1], [W, X1], v1),
        ConditionalPmf([V2], [W, X2], v2),
        ch.law,
    ]
    return compose(factors, SINGLE_VARS)


def assemble_double(ch: DoubleStateChannel, aux: AuxChoiceDouble) -> JointPmf:
    """Joint of (V1, V2, S1, S2, X1, X2, Y) for either double-state factorization."""
    sz = aux.sizes
    V1, V2 = Alphabet("V1", sz["V1"]), Alphabet("V2", sz["V2"])
    S1, S2, X1, X2 = ch.S1, ch.S2, ch.X1, ch.X2
    v1_given = [S1, X1] if aux.p_v1.ndim == 3 else [S1]
    v2_given = [S2, X2] if aux.p_v2.ndim == 3 else [S2]
    factors = [
        ch.state_pmf1,
        ch.state_pmf2,
        JointPmf([X1], aux.p_x1),
        JointPmf([X2], aux.p_x2),
        ConditionalPmf([V1], v1_given, aux.p_v1),
        ConditionalPmf([V2], v2_given, aux.p_v2),
        ch.law,
    ]
    return compose(factors, DOUBLE_VARS)


# -- bundles ----------------------------------------------------------------

@dataclass(frozen=True)
class RatePoint:
    r1: float
    r2: float

    def __iter__(self):
        return iter((self.r1, self.r2))


@dataclass(frozen=True)
class FeasibilityCertificate:
    """Slack rates (R0, R0^(1), R0^(2)) witnessing membership in the Theorem-2 region."""

    r0: float
    r0_1: float
    r0_2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.r0, self.r0_1, self.r0_2])


@dataclass(frozen=True)
class MiBundle:
    """Named right-hand sides of one region's inequality system.

    Terms listed in ``signed`` are differences of information quantities
    and may legitimately be negative.
    """

    kind: str
    values: Mapping[str, float]
    signed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    def __getitem__(self, key) -> float:
        return self.values[key]

    def __iter__(self):
        return iter(self.values)

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(self.values.values())

    @property
    def contributes(self) -> bool:
        """False when a signed term is negative: the distribution adds no rate pairs."""
        return all(self.values[k] >= -FEAS_TOL for k in self.signed)


def _require(j: JointPmf, names):
    missing = [n for n in names if n not in j]
    if missing:
        raise MissingVariable(f"joint lacks variables {missing}")


THM1_TERMS = ("rate1", "rate2", "sum", "sum_state")
THM2_RATE_TERMS = ("rate1", "rate2", "sum", "total")
THM2_COMP_TERMS = ("comp1", "comp2", "comp0", "comp12", "comp10", "comp20", "comp120")
DOUBLE_TERMS = ("rate1", "rate2", "sum")


def eval_thm1(j: JointPmf) -> MiBundle:
    """Right-hand sides of the Theorem-1 inner bound.

    ``sum_state`` = I(X1,X2,V;Y) - I(V;W) is reported unclamped; a negative
    value means the distribution contributes nothing.
    """
    _require(j, ("U", "V", "X1", "X2", "W", "Y"))
    I = lambda a, b, c=(): mutual_information(j, a, b, c)  # noqa: E731
    vals = {
        "rate1": I("X1", "Y", ("X2", "U", "V")),
        "rate2": I("X2", "Y", ("X1", "U", "V")),
        "sum": I(("X1", "X2"), "Y", ("U", "V")),
        "sum_state": I(("X1", "X2", "V"), "Y") - I("V", "W"),
    }
    return MiBundle("thm1", vals, frozenset({"sum_state"}))


def eval_thm2(j: JointPmf) -> MiBundle:
    """The four rate-side and seven compression terms of the new inner bound."""
    _require(j, SINGLE_VARS)
    I = lambda a, b, c=(): mutual_information(j, a, b, c)  # noqa: E731
    obs = ("Y", "V1", "V2", "V")
    vals = {
        "rate1": I("X1", obs, ("X2", "U")),
        "rate2": I("X2", obs, ("X1", "U")),
        "sum": I(("X1", "X2"), obs, "U"),
        "total": I(("X1", "X2"), obs),
        "comp1": I(("X1", "W"), "V1", ("V", "V2", "Y")),
        "comp2": I(("X2", "W"), "V2", ("V", "V1", "Y")),
        "comp0": I("W", "V", ("V1", "V2", "Y")),
        "comp12": I(("X1", "X2", "W"), ("V1", "V2"), ("V", "Y")),
        "comp10": I(("X1", "W"), ("V1", "V"), ("V2", "Y")),
        "comp20": I(("X2", "W"), ("V2", "V"), ("V1", "Y")),
        "comp120": I(("X1", "X2", "W"), ("V1", "V2", "V"), "Y"),
    }
    return MiBundle("thm2", vals)


def eval_thm3(j: JointPmf) -> MiBundle:
    """Differences bounding R1, R2 and R1+R2 in the double-state bound of Theorem 3."""
    _require(j, DOUBLE_VARS)
    I = lambda a, b, c=(): mutual_information(j, a, b, c)  # noqa: E731
    vals = {
        "rate1": I("X1", "Y", ("X2", "V1", "V2")) - I("V1", "S1", ("Y", "V2")),
        "rate2": I("X2", "Y", ("X1", "V1", "V2")) - I("V2", "S2", ("Y", "V1")),
        "sum": I(("X1", "X2"), "Y", ("V1", "V2")) - I(("V1", "V2"), ("S1", "S2"), "Y"),
    }
    return MiBundle("thm3", vals, frozenset(vals))


def eval_li(j: JointPmf) -> MiBundle:
    """Differences bounding R1, R2 and R1+R2 in the bound of Li et al."""
    _require(j, DOUBLE_VARS)
    I = lambda a, b, c=(): mutual_information(j, a, b, c)  # noqa: E731
    c1 = I("V1", "S1", "X1")
    c2 = I("V2", "S2", "X2")
    vals = {
        "rate1": I(("X1", "V1"), "Y", ("X2", "V2")) - c1,
        "rate2": I(("X2", "V2"), "Y", ("X1", "V1")) - c2,
        "sum": I(("X1", "X2", "V1", "V2"), "Y") - c1 - c2,
    }
    return MiBundle("li", vals, frozenset(vals))


# -- per-distribution polygons ----------------------------------------------

class Polygon:
    """Down-closed polygon {R >= 0 : a*R1 + b*R2 <= c for each row (a, b, c)}.

    Every row has a, b >= 0, so the set is empty exactly when some c < 0.
    """

    def __init__(self, rows, tol: float = FEAS_TOL):
        rows = np.asarray(rows, dtype=float).reshape(-1, 3)
        if np.any(rows[:, :2] < 0):
            raise ValueError("polygon rows need nonnegative coefficients")
        self.rows = rows
        self.tol = tol
        self.empty = bool(np.any(rows[:, 2] < -tol))

    def contains(self, r1: float, r2: float, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        if self.empty or r1 < -tol or r2 < -tol:
            return False
        a, b, c = self.rows.T
        return bool(np.all(a * r1 + b * r2 <= c + tol))

    def r1_max(self) -> float:
        a, _, c = self.rows.T
        pos = a > 0
        return float(np.min(c[pos] / a[pos])) if np.any(pos) else np.inf

    def max_r2(self, r1: float) -> float | None:
        """Largest R2 with (r1, R2) inside, or None if r1 is out of range."""
        if self.empty or r1 < -self.tol:
            return None
        a, b, c = self.rows.T
        slack = c - a * r1
        if np.any(slack[b == 0] < -self.tol):
            return None
        pos = b > 0
        r2 = float(np.min(slack[pos] / b[pos])) if np.any(pos) else np.inf
        if r2 < -self.tol:
            return None
        return max(r2, 0.0)

    def vertices(self) -> np.ndarray:
        """Pareto-maximal corner points, sorted by R1 (empty array if empty)."""
        if self.empty:
            return np.zeros((0, 2))
        # drop duplicate directions, keeping the tightest
        keep = {}
        for line in self.rows:
            scale = np.linalg.norm(line[:2])
            if scale == 0:
                continue
            key = tuple(np.round(line[:2] / scale, 12))
            if key not in keep or line[2] / scale < keep[key][2] / np.linalg.norm(keep[key][:2]):
                keep[key] = line
        # the axes R1 = 0 and R2 = 0 only serve as intersection partners
        lines = np.array(list(keep.values()) + [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        pts = []
        for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-14:
                continue
            x = (c1 * b2 - c2 * b1) / det
            y = (a1 * c2 - a2 * c1) / det
            pts.append((max(x, 0.0), max(y, 0.0)))
        pts = [p for p in pts if self.contains(*p, tol=1e-9)]
        if not pts:
            return np.zeros((1, 2))
        pts = np.array(sorted(set(pts)))
        return _pareto(pts)

    def weighted_max(self, w1: float, w2: float) -> float:
        if self.empty:
            return -np.inf
        v = self.vertices()
        return float(np.max(w1 * v[:, 0] + w2 * v[:, 1]))


def _pareto(pts: np.ndarray) -> np.ndarray:
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    out, best = [], -np.inf
    for k in order:
        if pts[k, 1] > best + 1e-12:
            out.append(pts[k])
            best = pts[k, 1]
    return np.array(out[::-1])


PROJ_DIRS = np.array([(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)], dtype=float)


def thm2_limits(T: np.ndarray) -> np.ndarray:
    """Exact projection of the Theorem-2 system onto (R1, R2).

    ``T`` holds bundle terms in the order rate1, rate2, sum, total, comp1,
    comp2, comp0, comp12, comp10, comp20, comp120 along its last axis. The
    result gives, for each direction (a, b) in ``PROJ_DIRS``, the tightest c
    in a*R1 + b*R2 <= c.

    R0 is eliminated first: it lies between max(0, L0, L10-a, L20-b,
    L120-a-b) and total-R1-R2-a-b. What remains bounds a = R0^(1), b = R0^(2)
    and a+b by intervals; such a box-with-sum system is feasible iff each
    interval is nonempty, la+lb <= us and ls <= ua+ub.
    """
    T = np.asarray(T, dtype=float)
    I1, I2, S, Tt, L1, L2, L0, L12, L10, L20, L120 = np.moveaxis(T, -1, 0)
    la, lb, l0 = np.maximum(L1, 0.0), np.maximum(L2, 0.0), np.maximum(L0, 0.0)
    sum_lim = np.minimum.reduce([
        Tt - L20 - la,
        Tt - L10 - lb,
        S - la - lb,
        Tt - l0 - la - lb,
        S - L12,
        Tt - l0 - L12,
        I1 + I2 - L12,
        Tt - 0.5 * (L10 + L20 + L12),
        Tt - L120,
    ])
    return np.stack([I1 - la, I2 - lb, sum_lim, I1 + Tt - L10 - L12, I2 + Tt - L20 - L12], axis=-1)


def _thm2_projection_rows(b: MiBundle) -> np.ndarray:
    """(R1, R2) constraints left after eliminating R0, R0^(1), R0^(2) exactly."""
    lim = thm2_limits([b[k] for k in THM2_RATE_TERMS + THM2_COMP_TERMS])
    return np.column_stack([PROJ_DIRS, lim])


def region_polygon(b: MiBundle) -> Polygon:
    """The (R1, R2) region a single distribution certifies under bound ``b.kind``."""
    if b.kind == "thm1":
        rows = [(1, 0, b["rate1"]), (0, 1, b["rate2"]), (1, 1, b["sum"]), (1, 1, b["sum_state"])]
    elif b.kind == "thm2":
        rows = _thm2_projection_rows(b)
    elif b.kind in ("thm3", "li"):
        rows = [(1, 0, b["rate1"]), (0, 1, b["rate2"]), (1, 1, b["sum"])]
    else:
        raise ValueError(f"unknown bundle kind {b.kind!r}")
    return Polygon(rows)


# -- Theorem 1 ---------------------------------------------------------------

def thm1_max_r2(b: MiBundle, r1: float) -> float:
    """Largest R2 with (r1, R2) satisfying the Theorem-1 inequalities for ``b``."""
    if b.kind != "thm1":
        raise ValueError("expected a thm1 bundle")
    if not b.contributes:
        raise R1Infeasible("this distribution contributes no rate pairs")
    if r1 < -FEAS_TOL or r1 > b["rate1"] + FEAS_TOL:
        raise R1Infeasible(f"R1={r1} exceeds I(X1;Y|X2,U,V)={b['rate1']}")
    if r1 > min(b["sum"], b["sum_state"]) + FEAS_TOL:
        raise R1Infeasible(f"R1={r1} exceeds the sum-rate bounds")
    return max(0.0, min(b["rate2"], b["sum"] - r1, b["sum_state"] - r1))


# -- Theorem 2: exact slack elimination by vertex enumeration ---------------

# rows of G in G @ (R0, R0^(1), R0^(2)) <= h
_G = np.array(
    [
        [0, 1, 0],  # R1 + R0^(1) <= rate1
        [0, 0, 1],  # R2 + R0^(2) <= rate2
        [0, 1, 1],  # R1 + R2 + R0^(1) + R0^(2) <= sum
        [1, 1, 1],  # R0 + R1 + R2 + R0^(1) + R0^(2) <= total
        [0, -1, 0],  # R0^(1) >= comp1
        [0, 0, -1],  # R0^(2) >= comp2
        [-1, 0, 0],  # R0 >= comp0
        [0, -1, -1],  # R0^(1) + R0^(2) >= comp12
        [-1, -1, 0],  # R0^(1) + R0 >= comp10
        [-1, 0, -1],  # R0^(2) + R0 >= comp20
        [-1, -1, -1],  # all three >= comp120
        [-1, 0, 0],  # nonnegativity
        [0, -1, 0],
        [0, 0, -1],
    ],
    dtype=float,
)


def _vertex_tables():
    triples, inverses = [], []
    for tri in itertools.combinations(range(len(_G)), 3):
        m = _G[list(tri)]
        if abs(np.linalg.det(m)) > 0.5:  # integer matrices: det is 0 or >= 1
            triples.append(tri)
            inverses.append(np.linalg.inv(m))
    return np.array(triples), np.array(inverses)


_TRIPLES, _INVERSES = _vertex_tables()


def thm2_constraints(b: MiBundle, p) -> tuple[np.ndarray, np.ndarray]:
    """(G, h) with the slack system written as G @ (R0, R0^(1), R0^(2)) <= h at rates p."""
    r1, r2 = p
    v = b.values
    h = np.array(
        [
            v["rate1"] - r1,
            v["rate2"] - r2,
            v["sum"] - r1 - r2,
            v["total"] - r1 - r2,
            -v["comp1"],
            -v["comp2"],
            -v["comp0"],
            -v["comp12"],
            -v["comp10"],
            -v["comp20"],
            -v["comp120"],
            0.0,
            0.0,
            0.0,
        ]
    )
    return _G, h


def thm2_feasible(b: MiBundle, p, tol: float = FEAS_TOL) -> FeasibilityCertificate | None:
    """Witness slack rates for rate pair ``p`` in the Theorem-2 region, or None.

    Enumerates every vertex cut out by three of the fourteen constraint
    planes and returns the first (in lexicographic order of constraint
    indices) that satisfies all constraints within ``tol``.
    """
    if b.kind != "thm2":
        raise ValueError("expected a thm2 bundle")
    if any(np.isnan(b[k]) for k in THM2_RATE_TERMS):
        raise DegenerateBundle("rate-side term is NaN")
    G, h = thm2_constraints(b, p)
    verts = np.einsum("kij,kj->ki", _INVERSES, h[_TRIPLES])
    ok = np.all(verts @ G.T <= h + tol, axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    r0, r01, r02 = np.maximum(verts[hits[0]], 0.0)
    return FeasibilityCertificate(float(r0), float(r01), float(r02))


def thm2_max_r2(b: MiBundle, r1: float, tol: float = 1e-7) -> float:
    """Supremum of feasible R2 at fixed R1, by bisection on :func:`thm2_feasible`."""
    if thm2_feasible(b, (r1, 0.0)) is None:
        raise R1Infeasible(f"no feasible slack rates at R1={r1}, R2=0")
    lo, hi = 0.0, max(b["rate2"], 0.0)
    if thm2_feasible(b, (r1, hi)) is not None:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if thm2_feasible(b, (r1, mid)) is None:
            hi = mid
        else:
            lo = mid
    return lo


# -- auxiliary choices for the example channels ------------------------------

def _w_x2_table(n_w: int = 4) -> np.ndarray:
    """P(V | W, X2) putting all mass on W_{X2}, the state bit that hits user 1."""
    t = np.zeros((n_w, 2, 2))
    for w in range(n_w):
        bits = (w >> 1, w & 1)
        for x2 in range(2):
            t[w, x2, bits[x2]] = 1.0
    return t


def example_aux_thm1(v_is_state: bool) -> AuxChoiceSingle:
    """Uniform independent inputs, U constant, and V = W or V constant."""
    half = np.full(2, 0.5)
    aux = AuxChoiceSingle.constant(half, half, 4)
    if not v_is_state:
        return aux
    return AuxChoiceSingle(aux.p_u, aux.p_x1_u, aux.p_x2_u, np.eye(4))


def example_aux_thm2() -> AuxChoiceSingle:
    """U, V, V1 constant, V2 = W_{X2}, uniform independent inputs."""
    aux = example_aux_thm1(False)
    return AuxChoiceSingle(aux.p_u, aux.p_x1_u, aux.p_x2_u, aux.p_v_w, None, _w_x2_table())


def example_aux_li() -> AuxChoiceDouble:
    """Double-state analogue: V1 constant, V2 = W_{X2} (with S2 = W), uniform inputs."""
    half = np.full(2, 0.5)
    return AuxChoiceDouble(half, half, np.ones((1, 2, 1)), _w_x2_table(), li_form=True)


# -- reference capacities ----------------------------------------------------

def _kl_rows(q_yx: np.ndarray, q_y: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(q_yx > 0, q_yx / q_y, 1.0)
        return np.sum(np.where(q_yx > 0, q_yx * np.log2(ratio), 0.0), axis=1)


def blahut_arimoto(channel: np.ndarray, start=None, tol: float = 1e-10, max_iter: int = 100_000):
    """Capacity of the DMC with rows P(y|x), in bits.

    Returns ``(capacity, input_pmf)``. Iterates until the standard upper
    bound max_x D(P(.|x) || q) and the lower bound I(X;Y) differ by < tol,
    so the returned value is within ``tol`` of capacity.
    """
    channel = np.asarray(channel, dtype=float)
    n = channel.shape[0]
    r = np.full(n, 1.0 / n) if start is None else np.asarray(start, dtype=float)
    lower = 0.0
    for _ in range(max_iter):
        q_y = r @ channel
        d = _kl_rows(channel, q_y)
        lower = float(r @ d)
        upper = float(np.max(d))
        if upper - lower < tol:
            break
        r = r * np.exp2(d)
        r /= r.sum()
    return max(lower, 0.0), r


def _ba_starts(n: int):
    yield np.full(n, 1.0 / n)
    for k in range(n):
        s = np.full(n, 0.1 / max(n - 1, 1))
        s[k] = 0.9 if n > 1 else 1.0
        yield s / s.sum()


def full_coop_sum_capacity(ch: SingleStateChannel) -> float:
    """max over P_{X1,X2} of I(X1,X2;Y): the sum rate with merged encoders."""
    eff = np.einsum("w,wabY->abY", ch.p_w, ch.law.probs)
    eff = eff.reshape(-1, ch.Y.size)
    return max(blahut_arimoto(eff, start)[0] for start in _ba_starts(eff.shape[0]))


def informed_receiver_capacity(ch: SingleStateChannel, user: int) -> float:
    """max over x_other and P_{X_user} of I(X_user; Y, W | X_other = x_other)."""
    if user not in (1, 2):
        raise ValueError("user must be 1 or 2")
    law = ch.law.probs  # (w, x1, x2, y)
    best = 0.0
    n_other = ch.X2.size if user == 1 else ch.X1.size
    for x in range(n_other):
        sub = law[:, :, x, :] if user == 1 else law[:, x, :, :]
        # rows: x_user, columns: (w, y)
        rows = np.einsum("w,wuy->uwy", ch.p_w, sub).reshape(sub.shape[1], -1)
        for start in _ba_starts(rows.shape[0]):
            best = max(best, blahut_arimoto(rows, start)[0])
    return best
