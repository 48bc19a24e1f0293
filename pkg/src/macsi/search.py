"""Randomized local search over auxiliary distributions.

Each restart draws auxiliary conditionals from a flat Dirichlet prior,
climbs a weighted sum of rates by block-coordinate projected ascent, and
contributes the corner points of the region its final distribution
certifies. The achievable set is the upper-right convex hull of all such
points. Failing to find a point never means the point is infeasible.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import entr

from .channels import DoubleStateChannel, SingleStateChannel
from .errors import MacsiError
from .regions import (
    AuxChoiceDouble,
    AuxChoiceSingle,
    THM1_TERMS,
    THM2_COMP_TERMS,
    THM2_RATE_TERMS,
    DOUBLE_TERMS,
    thm2_limits,
    MiBundle,
    PROJ_DIRS,
    region_polygon,
)

__all__ = [
    "SearchConfig",
    "SamplePoint",
    "RegionSample",
    "BOUND_KINDS",
    "sample_aux",
    "local_improve",
    "trace_boundary",
    "convex_hull",
    "hull_contains",
    "batch_terms",
    "project_simplex",
]

BOUND_KINDS = ("thm1", "thm2", "thm3", "li")
_LN2 = np.log(2.0)
_FD_STEP = 1e-4
_N_STEPS = 12
_BIG = 1e6
_HULL_TOL = 1e-7
# constraint directions (a, b) of a*R1 + b*R2 <= c used by every bound
_DIRS = PROJ_DIRS


@dataclass
class SearchConfig:
    caps: tuple[int, int, int, int] = (4, 4, 3, 3)
    restarts: int = 200
    refine_iters: int = 500
    seed: int = 0
    r1_grid: tuple[float, ...] | None = None
    n_weights: int = 8
    workers: int | None = None

    def __post_init__(self):
        self.caps = tuple(int(c) for c in self.caps)
        if len(self.caps) == 2:
            self.caps = self.caps + (3, 3)
        if len(self.caps) != 4 or min(self.caps) < 1:
            raise ValueError("caps must be four positive sizes for U, V, V1, V2")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be >= 0")
        if self.r1_grid is not None:
            self.r1_grid = tuple(float(r) for r in self.r1_grid)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["caps"] = list(self.caps)
        d["r1_grid"] = None if self.r1_grid is None else list(self.r1_grid)
        d.pop("workers")
        return d


@dataclass(frozen=True)
class SamplePoint:
    r1: float
    r2: float
    restart: int
    source_seed: int


@dataclass
class RegionSample:
    bound_kind: str
    points: list[SamplePoint]
    auxes: list  # final AuxChoice of each restart, indexed by SamplePoint.restart
    hull: np.ndarray
    config: SearchConfig
    objectives: list[float] = field(default_factory=list)

    def point_array(self) -> np.ndarray:
        return np.array([(p.r1, p.r2) for p in self.points]).reshape(-1, 2)

    def to_dict(self) -> dict:
        return {
            "bound": self.bound_kind,
            "config": self.config.to_dict(),
            "points": [
                {"r1": p.r1, "r2": p.r2, "restart": p.restart, "source_seed": p.source_seed}
                for p in self.points
            ],
            "hull": self.hull.tolist(),
        }


# -- parameter layout --------------------------------------------------------

def _sizes_for(ch, caps, bound):
    nu, nv, nv1, nv2 = caps
    if bound == "thm1":
        return {"U": nu, "V": nv, "V1": 1, "V2": 1}
    if bound == "thm2":
        return {"U": nu, "V": nv, "V1": nv1, "V2": nv2}
    return {"V1": nv1, "V2": nv2}


def _check_kind(ch, bound):
    if bound not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {bound!r}")
    single = isinstance(ch, SingleStateChannel)
    if single != (bound in ("thm1", "thm2")):
        raise MacsiError(f"bound {bound!r} does not apply to a {ch.kind}-state channel")


def _shapes(ch, sizes, bound) -> dict[str, tuple[int, ...]]:
    if bound in ("thm1", "thm2"):
        nw, n1, n2 = ch.W.size, ch.X1.size, ch.X2.size
        shapes = {
            "u": (sizes["U"],),
            "x1": (sizes["U"], n1),
            "x2": (sizes["U"], n2),
            "v": (nw, sizes["V"]),
        }
        if bound == "thm2":
            shapes["v1"] = (nw, n1, sizes["V1"])
            shapes["v2"] = (nw, n2, sizes["V2"])
        return shapes
    s1, s2, n1, n2 = ch.S1.size, ch.S2.size, ch.X1.size, ch.X2.size
    if bound == "li":
        return {"x1": (n1,), "x2": (n2,), "v1": (s1, n1, sizes["V1"]), "v2": (s2, n2, sizes["V2"])}
    return {"x1": (n1,), "x2": (n2,), "v1": (s1, sizes["V1"]), "v2": (s2, sizes["V2"])}


def _to_params(aux, bound, ch) -> dict[str, np.ndarray]:
    if isinstance(aux, AuxChoiceSingle):
        nw, n1, n2 = ch.W.size, ch.X1.size, ch.X2.size
        p = {"u": aux.p_u, "x1": aux.p_x1_u, "x2": aux.p_x2_u, "v": aux.p_v_w}
        if bound == "thm2":
            p["v1"] = np.ones((nw, n1, 1)) if aux.p_v1_wx1 is None else aux.p_v1_wx1
            p["v2"] = np.ones((nw, n2, 1)) if aux.p_v2_wx2 is None else aux.p_v2_wx2
        return {k: np.array(v, dtype=float) for k, v in p.items()}
    p = {"x1": aux.p_x1, "x2": aux.p_x2, "v1": aux.p_v1, "v2": aux.p_v2}
    if bound == "li":
        for k, x in (("v1", ch.X1.size), ("v2", ch.X2.size)):
            if p[k].ndim == 2:
                p[k] = np.repeat(p[k][:, None, :], x, axis=1)
    return {k: np.array(v, dtype=float) for k, v in p.items()}


def _to_aux(params, bound):
    if bound in ("thm1", "thm2"):
        return AuxChoiceSingle(
            params["u"], params["x1"], params["x2"], params["v"], params.get("v1"), params.get("v2")
        )
    return AuxChoiceDouble(params["x1"], params["x2"], params["v1"], params["v2"], li_form=(bound == "li"))


def sample_aux(rng: np.random.Generator, ch, caps=(4, 4, 3, 3), bound: str | None = None):
    """Draw every auxiliary conditional slice from a flat Dirichlet.

    The bound kind defaults to ``thm2`` for single-state channels and
    ``thm3`` for double-state channels.
    """
    bound = bound or ("thm2" if isinstance(ch, SingleStateChannel) else "thm3")
    _check_kind(ch, bound)
    caps = tuple(caps) + (3, 3) if len(caps) == 2 else tuple(caps)
    shapes = _shapes(ch, _sizes_for(ch, caps, bound), bound)
    params = {k: rng.dirichlet(np.ones(s[-1]), size=s[:-1]) for k, s in shapes.items()}
    return _to_aux(params, bound)


# -- batched evaluation ------------------------------------------------------

class _BatchJoint:
    """Joint tensors with a leading batch axis and memoised marginal entropies."""

    def __init__(self, probs: np.ndarray, names):
        self.names = tuple(names)
        self._cache = {frozenset(self.names): probs}
        self._h: dict[frozenset, np.ndarray] = {}

    def _marginal(self, key):
        m = self._cache.get(key)
        if m is not None:
            return m
        have, arr = min(
            ((k, a) for k, a in self._cache.items() if key <= k), key=lambda ka: ka[1].size
        )
        order = [n for n in self.names if n in have]
        drop = tuple(1 + i for i, n in enumerate(order) if n not in key)
        m = arr.sum(axis=drop)
        self._cache[key] = m
        return m

    def H(self, *names) -> np.ndarray:
        key = frozenset(names)
        h = self._h.get(key)
        if h is None:
            m = self._marginal(key)
            h = entr(m).reshape(m.shape[0], -1).sum(axis=1) / _LN2
            self._h[key] = h
        return h

    def I(self, a, b, c=()) -> np.ndarray:
        return self.H(*a, *c) + self.H(*b, *c) - self.H(*a, *b, *c) - (self.H(*c) if c else 0.0)


def _single_joint(ch, P):
    law = ch.law.probs
    if "v1" not in P:
        joint = np.einsum(
            "w,bu,bux,buz,bwv,wxzy->buvxzwy",
            ch.p_w, P["u"], P["x1"], P["x2"], P["v"], law,
            optimize=False,
        )
        return _BatchJoint(joint, ("U", "V", "X1", "X2", "W", "Y"))
    joint = np.einsum(
        "w,bu,bux,buz,bwv,bwxp,bwzq,wxzy->buvpqxzwy",
        ch.p_w, P["u"], P["x1"], P["x2"], P["v"], P["v1"], P["v2"], law,
        optimize=False,
    )
    return _BatchJoint(joint, ("U", "V", "V1", "V2", "X1", "X2", "W", "Y"))


def _double_joint(ch, P):
    law = ch.law.probs
    v1 = "bsxp" if P["v1"].ndim == 4 else "bsp"
    v2 = "btzq" if P["v2"].ndim == 4 else "btq"
    joint = np.einsum(
        f"s,t,bx,bz,{v1},{v2},stxzy->bpqstxzy",
        ch.state_pmf1.probs, ch.state_pmf2.probs, P["x1"], P["x2"], P["v1"], P["v2"], law,
        optimize=False,
    )
    return _BatchJoint(joint, ("V1", "V2", "S1", "S2", "X1", "X2", "Y"))


def batch_terms(ch, bound: str, P: dict[str, np.ndarray]) -> np.ndarray:
    """Bundle terms for a batch of parameter sets, shape (batch, n_terms).

    Term order follows the matching ``eval_*`` function in :mod:`macsi.regions`.
    """
    if bound in ("thm1", "thm2"):
        P = dict(P)
        if bound == "thm2":
            b = P["u"].shape[0]
            nw, n1, n2 = ch.W.size, ch.X1.size, ch.X2.size
            P.setdefault("v1", np.ones((b, nw, n1, 1)))
            P.setdefault("v2", np.ones((b, nw, n2, 1)))
        J = _single_joint(ch, P)
        I = J.I
        if bound == "thm1":
            # only the last term needs W
            J._marginal(frozenset(J.names) - {"W"})
            cols = [
                I(["X1"], ["Y"], ["X2", "U", "V"]),
                I(["X2"], ["Y"], ["X1", "U", "V"]),
                I(["X1", "X2"], ["Y"], ["U", "V"]),
                I(["X1", "X2", "V"], ["Y"]) - I(["V"], ["W"]),
            ]
        else:
            # most terms ignore U; summing it out once shrinks every later marginal
            J._marginal(frozenset(J.names) - {"U"})
            obs = ["Y", "V1", "V2", "V"]
            cols = [
                I(["X1"], obs, ["X2", "U"]),
                I(["X2"], obs, ["X1", "U"]),
                I(["X1", "X2"], obs, ["U"]),
                I(["X1", "X2"], obs),
                I(["X1", "W"], ["V1"], ["V", "V2", "Y"]),
                I(["X2", "W"], ["V2"], ["V", "V1", "Y"]),
                I(["W"], ["V"], ["V1", "V2", "Y"]),
                I(["X1", "X2", "W"], ["V1", "V2"], ["V", "Y"]),
                I(["X1", "W"], ["V1", "V"], ["V2", "Y"]),
                I(["X2", "W"], ["V2", "V"], ["V1", "Y"]),
                I(["X1", "X2", "W"], ["V1", "V2", "V"], ["Y"]),
            ]
    else:
        J = _double_joint(ch, P)
        I = J.I
        if bound == "thm3":
            cols = [
                I(["X1"], ["Y"], ["X2", "V1", "V2"]) - I(["V1"], ["S1"], ["Y", "V2"]),
                I(["X2"], ["Y"], ["X1", "V1", "V2"]) - I(["V2"], ["S2"], ["Y", "V1"]),
                I(["X1", "X2"], ["Y"], ["V1", "V2"]) - I(["V1", "V2"], ["S1", "S2"], ["Y"]),
            ]
        else:
            c1 = I(["V1"], ["S1"], ["X1"])
            c2 = I(["V2"], ["S2"], ["X2"])
            cols = [
                I(["X1", "V1"], ["Y"], ["X2", "V2"]) - c1,
                I(["X2", "V2"], ["Y"], ["X1", "V1"]) - c2,
                I(["X1", "X2", "V1", "V2"], ["Y"]) - c1 - c2,
            ]
    return np.stack(cols, axis=1)


def _term_names(bound):
    if bound == "thm1":
        return THM1_TERMS
    if bound == "thm2":
        return THM2_RATE_TERMS + THM2_COMP_TERMS
    return DOUBLE_TERMS


def _bundle_from_row(bound, row) -> MiBundle:
    names = _term_names(bound)
    signed = {"thm1": {"sum_state"}, "thm2": set()}.get(bound, set(names))
    return MiBundle(bound, dict(zip(names, map(float, row))), frozenset(signed))


def _batch_limits(bound, T: np.ndarray) -> np.ndarray:
    """Tightest c for each direction in ``_DIRS``, shape (batch, 5)."""
    B = T.shape[0]
    lim = np.full((B, len(_DIRS)), _BIG)
    if bound == "thm1":
        lim[:, 0], lim[:, 1] = T[:, 0], T[:, 1]
        lim[:, 2] = np.minimum(T[:, 2], T[:, 3])
        return lim
    if bound in ("thm3", "li"):
        lim[:, 0], lim[:, 1], lim[:, 2] = T[:, 0], T[:, 1], T[:, 2]
        return lim
    return thm2_limits(T)


def _pair_tables():
    lines = np.vstack([_DIRS, [(1, 0), (0, 1)]])  # last two are the axes R1 = 0, R2 = 0
    pairs, inv = [], []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            m = np.array([lines[i], lines[j]])
            if abs(np.linalg.det(m)) > 1e-12:
                pairs.append((i, j))
                inv.append(np.linalg.inv(m))
    return np.array(pairs), np.array(inv)


_PAIRS, _PAIR_INV = _pair_tables()


def _weighted_objective(lim: np.ndarray, w) -> np.ndarray:
    """max of w . R over each polygon; the most negative limit if it is empty."""
    B = lim.shape[0]
    rhs = np.concatenate([lim, np.zeros((B, 2))], axis=1)
    pts = np.einsum("kij,bkj->bki", _PAIR_INV, rhs[:, _PAIRS])
    ok = np.all(pts @ _DIRS.T <= lim[:, None, :] + 1e-12, axis=2) & np.all(pts >= -1e-12, axis=2)
    val = np.where(ok, pts @ np.asarray(w, dtype=float), -np.inf).max(axis=1)
    worst = lim.min(axis=1)
    return np.where(worst < 0, worst, val)


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row (last axis) onto the probability simplex."""
    u = -np.sort(-y, axis=-1)
    css = np.cumsum(u, axis=-1) - 1.0
    k = np.arange(1, y.shape[-1] + 1)
    cond = u - css / k > 0
    rho = y.shape[-1] - 1 - np.argmax(cond[..., ::-1], axis=-1)
    tau = np.take_along_axis(css, rho[..., None], axis=-1) / (rho[..., None] + 1.0)
    return np.maximum(y - tau, 0.0)


class _Problem:
    def __init__(self, ch, bound, weights):
        self.ch, self.bound = ch, bound
        self.w = np.asarray(weights, dtype=float)

    def objective(self, batch: dict[str, np.ndarray]) -> np.ndarray:
        T = batch_terms(self.ch, self.bound, batch)
        return _weighted_objective(_batch_limits(self.bound, T), self.w)


def _stack(params, key, candidates):
    """Batch of parameter sets where only ``key`` varies."""
    n = len(candidates)
    out = {k: np.broadcast_to(v, (n,) + v.shape) for k, v in params.items()}
    out[key] = np.asarray(candidates)
    return out


def local_improve(ch, aux, weights=(1.0, 1.0), bound: str | None = None, refine_iters: int = 500,
                  return_trace: bool = False):
    """Block-coordinate projected ascent on w1*R1 + w2*R2 over one region.

    Cycles over the auxiliary factors; for each, forms a forward-difference
    gradient along the simplex edges, then tries steps halving from a unit
    move and keeps the best, projecting every slice back onto its simplex.
    Stops after ``refine_iters`` factor updates or once a full sweep gains
    less than 1e-9. The objective never decreases.
    """
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or not np.any(w > 0):
        raise ValueError("weights must be nonnegative and not both zero")
    if bound is None:
        if isinstance(aux, AuxChoiceSingle):
            bound = "thm2"
        else:
            bound = "li" if aux.li_form else "thm3"
    _check_kind(ch, bound)
    prob = _Problem(ch, bound, w)
    params = _to_params(aux, bound, ch)
    keys = [k for k, v in params.items() if v.shape[-1] > 1]
    cur = float(prob.objective({k: v[None] for k, v in params.items()})[0])
    trace = [cur]
    iters, sweep_gain = 0, 0.0
    while keys and iters < refine_iters:
        for key in keys:
            if iters >= refine_iters:
                break
            iters += 1
            x = params[key]
            n = x.shape[-1]
            # forward differences along e_k - x for every coordinate of the factor
            rows = x.reshape(-1, n)
            j = np.arange(x.size)
            cands = np.broadcast_to(rows, (x.size,) + rows.shape).copy()
            cands[j, j // n] += _FD_STEP * (np.eye(n)[j % n] - rows[j // n])
            vals = prob.objective(_stack(params, key, cands.reshape((x.size,) + x.shape)))
            grad = ((vals - cur) / _FD_STEP).reshape(x.shape)
            scale = np.max(np.abs(grad))
            if not np.isfinite(scale) or scale <= 0:
                continue
            d = grad / scale
            steps = 0.5 ** np.arange(_N_STEPS)
            trial = project_simplex(x[None] + steps.reshape((-1,) + (1,) * x.ndim) * d[None])
            tvals = prob.objective(_stack(params, key, trial))
            best = int(np.argmax(tvals))
            if tvals[best] > cur:
                sweep_gain += tvals[best] - cur
                cur = float(tvals[best])
                params[key] = trial[best]
            trace.append(cur)
        if sweep_gain < 1e-9:
            break
        sweep_gain = 0.0
    out = _to_aux(params, bound)
    return (out, trace) if return_trace else out


# -- hull --------------------------------------------------------------------

def convex_hull(points) -> np.ndarray:
    """Vertices of the upper-right convex hull, sorted by R1.

    The hull is that of the points together with their projections onto
    both axes (the down-closure); only its Pareto-maximal vertices are
    returned, so every returned vertex is one of the input points.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("convex_hull needs at least one point")
    # Pareto-maximal points sorted by R1 ascending (R2 descending)
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    front, best = [], -np.inf
    for k in order:
        if pts[k, 1] > best + _HULL_TOL:
            front.append(pts[k])
            best = pts[k, 1]
    front = front[::-1]
    # concave chain; optimizer noise below _HULL_TOL does not make a vertex
    hull: list[np.ndarray] = []
    for p in front:
        if hull and np.max(np.abs(p - hull[-1])) < _HULL_TOL:
            if p.sum() > hull[-1].sum():
                hull[-1] = p
            continue
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
            if cross >= -1e-9:
                hull.pop()
            else:
                break
        hull.append(p)
    return np.array(hull)


def hull_contains(hull, point, tol: float = 1e-9) -> bool:
    """Whether ``point`` lies in the down-closed convex region spanned by ``hull``."""
    hull = np.asarray(hull, dtype=float).reshape(-1, 2)
    r1, r2 = point
    if r1 < -tol or r2 < -tol:
        return False
    if r1 > hull[-1, 0] + tol or r2 > hull[0, 1] + tol:
        return False
    if r1 <= hull[0, 0]:
        return r2 <= hull[0, 1] + tol
    k = int(np.searchsorted(hull[:, 0], r1))
    k = min(max(k, 1), len(hull) - 1)
    (x0, y0), (x1, y1) = hull[k - 1], hull[k]
    frac = 0.0 if x1 == x0 else (r1 - x0) / (x1 - x0)
    return r2 <= y0 + frac * (y1 - y0) + tol


# -- boundary tracing ---------------------------------------------------------

def _restart_seed(seed: int, restart: int) -> int:
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), restart])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _weights(n: int) -> np.ndarray:
    # both axis directions included, so the corner points get pushed on too
    theta = np.linspace(0.0, np.pi / 2, n) if n > 1 else np.array([np.pi / 4])
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def _default_grid(ch) -> tuple[float, ...]:
    top = np.log2(ch.X1.size)
    return tuple(np.round(np.arange(0.0, top + 1e-9, 0.05), 10))


def _bundle_for(ch, bound, aux) -> MiBundle:
    params = _to_params(aux, bound, ch)
    T = batch_terms(ch, bound, {k: v[None] for k, v in params.items()})
    return _bundle_from_row(bound, T[0])


def _one_restart(args):
    ch, bound, cfg, restart, weights, grid = args
    seed = _restart_seed(cfg.seed, restart)
    rng = np.random.default_rng(seed)
    aux = sample_aux(rng, ch, cfg.caps, bound)
    aux, trace = local_improve(ch, aux, weights, bound, cfg.refine_iters, return_trace=True)
    poly = region_polygon(_bundle_for(ch, bound, aux))
    pts = []
    if not poly.empty:
        pts.extend(map(tuple, poly.vertices()))
        for r1 in grid:
            r2 = poly.max_r2(r1)
            if r2 is not None:
                pts.append((r1, r2))
    return restart, seed, aux, trace[-1], pts


def _worker_count(cfg) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get("MACSI_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_restarts(ch, bound, cfg, grid):
    W = _weights(cfg.n_weights)
    jobs = [(ch, bound, cfg, r, W[r % len(W)], grid) for r in range(cfg.restarts)]
    n = min(_worker_count(cfg), len(jobs))
    if n <= 1:
        return [_one_restart(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(_one_restart, jobs, chunksize=max(1, len(jobs) // (4 * n))))


def _lift_to_thm2(aux: AuxChoiceSingle) -> AuxChoiceSingle:
    return AuxChoiceSingle(aux.p_u, aux.p_x1_u, aux.p_x2_u, aux.p_v_w)


def trace_boundary(ch, bound_kind: str, cfg: SearchConfig | None = None) -> RegionSample:
    """Collect achievable points of one inner bound and their convex hull.

    For ``thm2`` the Theorem-1 restarts are run as well and their final
    distributions (with constant V1, V2) are evaluated under Theorem 2, so
    the traced new bound always contains the traced old one.
    """
    cfg = cfg or SearchConfig()
    _check_kind(ch, bound_kind)
    grid = cfg.r1_grid if cfg.r1_grid is not None else _default_grid(ch)
    results = _run_restarts(ch, bound_kind, cfg, grid)
    offset = 0
    if bound_kind == "thm2":
        old = _run_restarts(ch, "thm1", cfg, grid)
        offset = len(results)
        for restart, seed, aux, _, _ in old:
            lifted = _lift_to_thm2(aux)
            poly = region_polygon(_bundle_for(ch, "thm2", lifted))
            pts = list(map(tuple, poly.vertices())) if not poly.empty else []
            for r1 in grid:
                r2 = poly.max_r2(r1)
                if r2 is not None:
                    pts.append((r1, r2))
            results.append((offset + restart, seed, lifted, float("nan"), pts))

    points, auxes, objectives = [], [], []
    for restart, seed, aux, obj, pts in results:
        auxes.append(aux)
        objectives.append(obj)
        for r1, r2 in pts:
            points.append(SamplePoint(float(r1), float(r2), restart, seed))
    arr = np.array([(p.r1, p.r2) for p in points]).reshape(-1, 2)
    hull = convex_hull(arr) if len(arr) else np.zeros((1, 2))
    return RegionSample(bound_kind, points, auxes, hull, cfg, objectives)
