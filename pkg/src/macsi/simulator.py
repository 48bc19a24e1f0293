"""Monte Carlo run of the block-Markov scheme on the Example-1 channel.

User 1 sends its bits uncoded. In every block user 2 sends fresh bits plus
an arithmetic-coded description of the previous block's realized sequence
W_{X2}, the one state component that hit user 1. One extra block, carried on
the noiseless Y2 = X2 link, delivers the last description. The receiver
reads X2 off Y2, decodes the descriptions and strips W_{X2} from Y1.

A description that does not fit its budget is erased: the field is sent as
all zeros, which the arithmetic decoder maps to the all-zero sequence, so
the receiver proceeds with W_{X2} = 0 for that block.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .channels import SingleStateChannel
from .coding import arithmetic_decode, arithmetic_encode
from .errors import ConfigError, Overflow, StructuralMismatch
from .prob import inverse_binary_entropy

__all__ = ["SimConfig", "SimReport", "rate_accounting", "description_budget", "run_block_markov"]


@dataclass(frozen=True)
class SimConfig:
    n: int = 2000
    B: int = 20
    delta: float = 0.05
    p: float | None = None
    seed: int = 0
    trials: int = 100
    genie: bool = False  # unlimited description budget
    workers: int | None = None

    def __post_init__(self):
        if self.p is None:
            object.__setattr__(self, "p", inverse_binary_entropy(0.5))
        for name in ("n", "B", "trials", "seed"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {v!r}")
        if self.n < 2 or self.n % 2:
            raise ConfigError(f"block length n must be even and >= 2, got {self.n}")
        if self.B < 1:
            raise ConfigError(f"need at least one data block, got B={self.B}")
        if self.trials < 1:
            raise ConfigError(f"need at least one trial, got {self.trials}")
        if not 0.0 < self.delta < 0.5:
            raise ConfigError(f"delta must lie in (0, 0.5), got {self.delta!r}")
        if not 0.0 < self.p < 0.5:
            raise ConfigError(f"p must lie in (0, 0.5), got {self.p!r}")
        if description_budget(self) < 1:
            raise ConfigError("description budget is below one bit")

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("workers")
        return d


def description_budget(cfg: SimConfig) -> int:
    """Bits reserved per block for the state description, floor(n (1/2 + delta))."""
    return int(np.floor(cfg.n * (0.5 + cfg.delta)))


def _counts(cfg: SimConfig) -> tuple[int, int, int]:
    fresh = cfg.n - description_budget(cfg)
    return cfg.n * cfg.B, fresh * cfg.B, cfg.n * (cfg.B + 1)


def rate_accounting(cfg: SimConfig) -> tuple[float, float]:
    """Nominal (R1, R2) in bits per channel use, overhead block included."""
    bits1, bits2, uses = _counts(cfg)
    return bits1 / uses, bits2 / uses


@dataclass
class SimReport:
    config: SimConfig
    empirical_R1: float
    empirical_R2: float
    block_error_rate: float
    overflow_rate: float
    trials: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "empirical_R1": self.empirical_R1,
            "empirical_R2": self.empirical_R2,
            "block_error_rate": self.block_error_rate,
            "overflow_rate": self.overflow_rate,
            "trials": list(self.trials),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _check_structure(ch) -> None:
    if not isinstance(ch, SingleStateChannel):
        raise StructuralMismatch("the scheme runs on a single-state channel")
    if (ch.W.size, ch.X1.size, ch.X2.size, ch.Y.size) != (4, 2, 2, 4):
        raise StructuralMismatch("expected W in {0..3}, binary inputs and Y = (Y1, Y2)")
    law = ch.law.probs
    y2 = np.arange(4) & 1
    for x2 in range(2):
        if np.any(law[:, :, x2, y2 != x2] > 0):
            raise StructuralMismatch("channel lacks the noiseless link Y2 = X2")


def _send(ch, rng, w, x1, x2):
    """Sample Y for one block; returns (y1, y2)."""
    cdf = np.cumsum(ch.law.probs[w, x1, x2], axis=-1)
    y = (rng.random(w.shape)[:, None] >= cdf).sum(axis=-1)
    return y >> 1, y & 1


def _trial(ch, cfg: SimConfig, base_seed: int, trial: int) -> dict:
    ss = np.random.SeedSequence([base_seed, trial])
    state_ss, msg_ss, chan_ss = ss.spawn(3)
    state_rng = np.random.default_rng(state_ss)
    msg_rng = np.random.default_rng(msg_ss)
    chan_rng = np.random.default_rng(chan_ss)

    n, B = cfg.n, cfg.B
    budget = description_budget(cfg)
    fresh_len = n - budget
    m1 = msg_rng.integers(0, 2, size=(B, n), dtype=np.uint8)
    m2 = msg_rng.integers(0, 2, size=(B, fresh_len), dtype=np.uint8)

    field_prev = np.zeros(budget, dtype=np.uint8)  # nothing to describe before block 1
    y1s, y2s, true_wx2, genie_codes = [], [], [], []
    overflows = 0
    for b in range(B + 1):
        if b < B:
            x1 = m1[b]
            x2 = np.concatenate([m2[b], field_prev])
        else:
            # overhead block: user 1 idle, user 2 sends the last description
            x1 = np.zeros(n, dtype=np.uint8)
            x2 = np.concatenate([np.zeros(fresh_len, dtype=np.uint8), field_prev])
        w = state_rng.choice(ch.W.size, size=n, p=ch.p_w)
        wx2 = np.where(x2 == 1, w & 1, w >> 1).astype(np.uint8)
        y1, y2 = _send(ch, chan_rng, w, x1, x2)
        y1s.append(y1)
        y2s.append(y2)
        true_wx2.append(wx2)
        if b == B:
            break
        # strictly causal: the block's W_{X2} is described in the next block
        field_prev = np.zeros(budget, dtype=np.uint8)
        try:
            code = arithmetic_encode(wx2, cfg.p, None if cfg.genie else budget)
        except Overflow:
            overflows += 1
            continue
        if cfg.genie:
            genie_codes.append(code)  # delivered out of band, whatever its length
        else:
            field_prev[: code.size] = code

    # backward decoding; Y2 gives X2 exactly, the next block's field gives W_{X2}
    errors = 0
    for b in range(B - 1, -1, -1):
        desc = genie_codes[b] if cfg.genie else y2s[b + 1][fresh_len:]
        w_hat = arithmetic_decode(desc, cfg.p, n)
        x1_hat = y1s[b] ^ w_hat
        errors += int(np.count_nonzero(x1_hat != m1[b]))
        errors += int(np.count_nonzero(y2s[b][:fresh_len] != m2[b]))
    ones = int(sum(int(v.sum()) for v in true_wx2[:B]))
    return {"errors": errors, "overflows": overflows, "state_ones": ones}


def _trial_job(args):
    return _trial(*args)


def _workers(cfg: SimConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get("MACSI_THREADS")
    return max(1, int(env)) if env else (os.cpu_count() or 1)


def run_block_markov(ch: SingleStateChannel, cfg: SimConfig, rng: np.random.Generator | None = None) -> SimReport:
    """Simulate ``cfg.trials`` independent runs and aggregate them.

    Trial t uses streams derived from (seed, t), so results do not depend on
    scheduling. If ``rng`` is given, the base seed is drawn from it instead
    of taken from ``cfg.seed``.
    """
    _check_structure(ch)
    base = int(cfg.seed) if rng is None else int(rng.integers(0, 2**63))
    base &= 2**64 - 1
    jobs = [(ch, cfg, base, t) for t in range(cfg.trials)]
    nw = min(_workers(cfg), len(jobs))
    if nw <= 1:
        logs = [_trial_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=nw) as pool:
            logs = list(pool.map(_trial_job, jobs))
    for log in logs:
        if log["errors"] and not log["overflows"]:
            raise AssertionError("decoding error without an overflow event")
    r1, r2 = rate_accounting(cfg)
    failed = sum(1 for log in logs if log["errors"])
    ovf = sum(log["overflows"] for log in logs)
    return SimReport(
        config=cfg,
        empirical_R1=r1,
        empirical_R2=r2,
        block_error_rate=failed / cfg.trials,
        overflow_rate=ovf / (cfg.trials * cfg.B),
        trials=logs,
    )
