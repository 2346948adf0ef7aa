"""Seeded Brownian paths with query-time refinement, and the left-point
Ito-integral approximation.

A BrownianSampler realises one Brownian path lazily: every queried time is
memoized, a later query at an interior time is drawn from the Brownian
bridge conditioned on the two nearest known times, and a query beyond the
last known time extends the path by an independent Gaussian increment.
This reproduces the exact joint law of the path at every set of times ever
queried, without committing to a grid in advance.

Determinism contract: a fixed seed and a fixed query sequence give a fixed
path.  Querying the same times in a different order generally consumes the
generator differently and yields a different (equally valid) realisation;
any single sampler is always self-consistent.

A sampler mutates on query and must not be shared across threads; distinct
samplers are independent and may run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["BrownianSampler", "ItoConfig", "ito_integral"]


@dataclass(frozen=True)
class ItoConfig:
    """Number of left-point subintervals for the Ito sum."""

    n: int = 1000

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


class BrownianSampler:
    """One seeded Brownian path B(t), t >= 0, with B(0) = 0."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = np.random.default_rng(self.seed)
        self._times = np.array([0.0])
        self._values = np.array([0.0])
        self._by_time = {0.0: 0.0}

    def sample(self, t: float) -> float:
        """B(t); draws and memoizes the value on first query."""
        return float(self.sample_many(np.array([float(t)]))[0])

    def sample_many(self, ts: np.ndarray) -> np.ndarray:
        """B at every entry of ts (any order, duplicates fine)."""
        ts = np.asarray(ts, dtype=float)
        flat = ts.ravel()
        if flat.size == 0:
            return np.zeros(ts.shape)
        if not np.all(np.isfinite(flat)) or flat.min() < 0.0:
            raise ValueError("query times must be finite and >= 0")
        new = np.unique(flat[[t not in self._by_time for t in flat.tolist()]])
        if new.size:
            self._insert(new)
        idx = np.searchsorted(self._times, flat)
        return self._values[idx].reshape(ts.shape)

    def _insert(self, new: np.ndarray) -> None:
        """Draw B at the sorted, previously-unknown times in ``new``.

        Interior times are grouped into runs lying between consecutive known
        anchors; each run is filled with a standard Brownian-bridge
        construction (fresh increments, linearly corrected to hit the right
        anchor).  Times past the last anchor accumulate free increments.
        One generator call serves the whole batch: interior increments in
        time order, then one bridge-closing variate per run, then the
        extension increments.
        """
        kt, kv = self._times, self._values
        pos = np.searchsorted(kt, new)
        interior = pos < kt.size
        ti = new[interior]
        te = new[~interior]
        n_runs = 0
        run_first = np.empty(0, dtype=bool)
        if ti.size:
            pi = pos[interior]
            run_first = np.empty(ti.size, dtype=bool)
            run_first[0] = True
            run_first[1:] = pi[1:] != pi[:-1]
            n_runs = int(run_first.sum())

        draws = self._rng.standard_normal(ti.size + n_runs + te.size)

        vals = np.empty(new.size)
        if ti.size:
            pi = pos[interior]
            t1, t2 = kt[pi - 1], kt[pi]
            b1, b2 = kv[pi - 1], kv[pi]
            prev = np.empty(ti.size)
            prev[0] = t1[0]
            prev[1:] = np.where(run_first[1:], t1[1:], ti[:-1])
            raw = draws[: ti.size] * np.sqrt(ti - prev)
            cs = np.cumsum(raw)
            run_id = np.cumsum(run_first) - 1
            base = (cs - raw)[run_first]
            w = cs - base[run_id]
            last = np.flatnonzero(np.append(run_first[1:], True))
            closers = draws[ti.size : ti.size + n_runs]
            w_total = w[last] + closers * np.sqrt(t2[last] - ti[last])
            lam = (ti - t1) / (t2 - t1)
            vals[: ti.size] = b1 + lam * (b2 - b1) + (w - lam * w_total[run_id])
        if te.size:
            prev_t = np.empty(te.size)
            prev_t[0] = kt[-1]
            prev_t[1:] = te[:-1]
            incr = draws[ti.size + n_runs :] * np.sqrt(te - prev_t)
            vals[ti.size :] = kv[-1] + np.cumsum(incr)

        self._times = np.insert(kt, pos, new)
        self._values = np.insert(kv, pos, vals)
        self._by_time.update(zip(new.tolist(), vals.tolist()))

    def known_points(self) -> tuple[np.ndarray, np.ndarray]:
        """All memoized (t, B(t)) pairs, sorted by t."""
        return self._times.copy(), self._values.copy()

    def __repr__(self) -> str:
        return f"BrownianSampler(seed={self.seed}, known={self._times.size})"


def ito_integral(sampler: BrownianSampler, g, zeta: float, cfg: ItoConfig) -> float:
    """Left-point approximation of int_0^zeta g(t) dB(t) on n subintervals.

    Uses the partition t_j = j * zeta / n and the sum
    sum_j g(t_{j-1}) (B(t_j) - B(t_{j-1})); the left endpoints are what make
    this an Ito (rather than Stratonovich) discretisation.
    """
    zeta = float(zeta)
    if zeta < 0.0:
        raise ValueError(f"zeta must be >= 0, got {zeta}")
    if zeta == 0.0:
        return 0.0
    times = np.linspace(0.0, zeta, cfg.n + 1)
    b = sampler.sample_many(times)
    db = np.diff(b)
    left = times[:-1]
    try:
        gv = np.asarray(g(left), dtype=float)
        if gv.shape not in ((), left.shape):
            raise TypeError
    except (TypeError, ValueError):
        gv = np.array([g(t) for t in left], dtype=float)
    return math.fsum((np.broadcast_to(gv, left.shape) * db).tolist())
