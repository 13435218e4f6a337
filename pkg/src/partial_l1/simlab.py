"""Monte Carlo laboratory for partial and hidden-partial l1 recovery.

Samples Gaussian instances with planted sparse solutions, solves the
weighted l1 linear program, and aggregates failure statistics with
Wilson confidence intervals and empirical decay rates.  Also provides
the one-dimensional closed form of the Gaussian width of the failure
set together with a projected-gradient oracle used to validate it.

Reproducibility: every trial draws from an independent generator seeded
by (master_seed, trial_index), so results are identical regardless of
execution order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np
from scipy.optimize import linprog

from .errors import DomainError, LpError
from .ptcore import Model

_WILSON_Z = 1.959963984540054  # two-sided 95% normal quantile
_FEAS_TOL = 1e-8


@dataclass(frozen=True)
class SimConfig:
    """Dimensions and bookkeeping for one Monte Carlo run.

    known_count is |Pi| for the partial model and |K intersect kappa|
    for the hidden model (where |kappa| = k).
    """

    n: int
    m: int
    k: int
    known_count: int
    model: Model
    trials: int
    master_seed: int
    recovery_tol: float = 1e-6

    def __post_init__(self):
        if self.n <= 0 or self.m <= 0 or self.k <= 0:
            raise DomainError("n, m, k must be positive")
        if self.known_count < 0:
            raise DomainError("known_count must be non-negative")
        if not (self.known_count <= self.k <= self.m <= self.n):
            raise DomainError(
                "need known_count <= k <= m <= n, got (%d, %d, %d, %d)"
                % (self.known_count, self.k, self.m, self.n))
        if self.model is Model.HIDDEN_PARTIAL and self.n < 2 * self.k - self.known_count:
            raise DomainError(
                "hidden model needs n >= 2k - known_count for the wrong "
                "part of kappa; got n = %d, k = %d, known_count = %d"
                % (self.n, self.k, self.known_count))
        if self.trials <= 0:
            raise DomainError("trials must be positive")
        if self.master_seed < 0:
            raise DomainError("master_seed must be non-negative")
        if not self.recovery_tol > 0.0:
            raise DomainError("recovery_tol must be positive")


@dataclass(frozen=True, eq=False)
class Instance:
    """One sampled problem: y = A @ x with the index set the solver may
    drop from the objective (Pi, or kappa for the hidden model)."""

    A: np.ndarray
    x: np.ndarray
    y: np.ndarray
    pi_set: frozenset


@dataclass(frozen=True)
class SimEstimate:
    """Aggregated counts and rates; trials is the number of valid
    (non-degenerate) trials entering the estimates.  Rate fields are
    -inf when the corresponding count is zero."""

    failures: int
    trials: int
    p_err_hat: float
    p_cor_hat: float
    rate_err_hat: float
    rate_cor_hat: float
    ci95_err: tuple
    invalid: int = 0


def _support_and_known(cfg):
    """0-based canonical index layout: support occupies the last k
    coordinates; the known/assumed set depends on the model."""
    n, k, known = cfg.n, cfg.k, cfg.known_count
    if cfg.model is Model.PARTIAL:
        pi = frozenset(range(n - known, n))
    else:
        wrong = range(n - 2 * k + known, n - k)
        true_part = range(n - known, n)
        pi = frozenset(wrong) | frozenset(true_part)
    return frozenset(range(n - k, n)), pi


def sample_instance(cfg: SimConfig, trial_index: int) -> Instance:
    """Draw the trial's Gaussian matrix and planted solution.

    Deterministic in (master_seed, trial_index): each trial gets its own
    generator, so thread count and execution order cannot change the
    sample.  Planted nonzeros are all 1.0 (the failure event depends
    only on signs and support, not magnitudes).
    """
    if trial_index < 0 or trial_index >= cfg.trials:
        raise DomainError("trial_index out of range")
    seq = np.random.SeedSequence((cfg.master_seed, trial_index))
    rng = np.random.default_rng(seq)
    A = rng.standard_normal((cfg.m, cfg.n))
    x = np.zeros(cfg.n)
    x[cfg.n - cfg.k:] = 1.0
    y = A @ x
    _, pi = _support_and_known(cfg)
    return Instance(A=A, x=x, y=y, pi_set=pi)


def _solve_split_lp(A, y, zero_weight_set):
    """Shared LP core; returns (x_hat, iterations, feasibility residual)."""
    A = np.asarray(A, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = A.shape
    w = np.ones(n)
    if zero_weight_set:
        w[sorted(zero_weight_set)] = 0.0
    c = np.concatenate([w, w])
    A_eq = np.hstack([A, -A])
    res = linprog(c, A_eq=A_eq, b_eq=y, bounds=(0, None), method="highs-ds")
    if res.status != 0:
        raise LpError("LP terminated with status %d: %s" % (res.status, res.message))
    x_hat = res.x[:n] - res.x[n:]
    resid = float(np.max(np.abs(A @ x_hat - y)))
    bound = _FEAS_TOL * (1.0 + float(np.max(np.abs(y))))
    if resid > bound:
        raise LpError("primal feasibility residual %.3e exceeds %.3e" % (resid, bound))
    return x_hat, int(res.nit), resid


def solve_weighted_l1(A, y, zero_weight_set):
    """min sum_{i not in S} |x_i| subject to A x = y.

    Standard split LP: x = u - v with u, v >= 0 and cost zeroed on S for
    both halves.  Solved with a dual-simplex method (bounded anti-cycling
    pivoting), which certifies optimality at termination.

    Returns x_hat; raises LpError on solver failure or when the primal
    feasibility residual exceeds 1e-8 * (1 + ||y||_inf).
    """
    x_hat, _, _ = _solve_split_lp(A, y, zero_weight_set)
    return x_hat


def _run_one_trial(args):
    """Worker: returns (failed, invalid, lp_iterations, residual)."""
    cfg, idx = args
    inst = sample_instance(cfg, idx)
    try:
        x_hat, nit, resid = _solve_split_lp(inst.A, inst.y, inst.pi_set)
    except LpError:
        return (False, True, 0, math.nan)
    err = float(np.max(np.abs(x_hat - inst.x)))
    failed = err > cfg.recovery_tol * max(1.0, float(np.max(np.abs(inst.x))))
    return (failed, False, nit, resid)


def wilson_interval(successes, total, z=_WILSON_Z):
    """Wilson score interval for a binomial proportion."""
    if total <= 0:
        raise DomainError("total must be positive")
    p = successes / total
    denom = 1.0 + z * z / total
    center = (p + z * z / (2.0 * total)) / denom
    half = z * math.sqrt(p * (1.0 - p) / total + z * z / (4.0 * total * total)) / denom
    return (center - half, center + half)


def run_trials(cfg: SimConfig, threads: int = 1, per_trial=None) -> SimEstimate:
    """Run cfg.trials independent recovery trials and aggregate.

    A trial fails when ||x_hat - x||_inf > recovery_tol * max(1,
    ||x||_inf).  Trials whose LP breaks down numerically are excluded
    and counted in `invalid`; more than 0.1% invalid trials aborts the
    run with LpError.  Pass a list as per_trial to collect
    (trial_index, failed, lp_iterations, residual) rows.
    """
    jobs = [(cfg, i) for i in range(cfg.trials)]
    if threads > 1:
        with Pool(threads) as pool:
            results = pool.map(_run_one_trial, jobs, chunksize=max(1, cfg.trials // (8 * threads)))
    else:
        results = [_run_one_trial(j) for j in jobs]

    failures = 0
    invalid = 0
    for idx, (failed, bad, iters, resid) in enumerate(results):
        if per_trial is not None:
            per_trial.append((idx, failed, iters, resid))
        if bad:
            invalid += 1
        elif failed:
            failures += 1
    if invalid > 0.001 * cfg.trials:
        raise LpError("%d of %d trials invalid (> 0.1%%)" % (invalid, cfg.trials))

    valid = cfg.trials - invalid
    p_err = failures / valid
    p_cor = 1.0 - p_err
    rate_err = math.log(p_err) / cfg.n if failures > 0 else -math.inf
    successes = valid - failures
    rate_cor = math.log(p_cor) / cfg.n if successes > 0 else -math.inf
    return SimEstimate(
        failures=failures,
        trials=valid,
        p_err_hat=p_err,
        p_cor_hat=p_cor,
        rate_err_hat=rate_err,
        rate_cor_hat=rate_cor,
        ci95_err=wilson_interval(failures, valid),
        invalid=invalid,
    )


def _signed_rearrangement(h, k):
    """Absolute values off the support block, negation on it."""
    h = np.asarray(h, dtype=float)
    n = h.size
    if k < 0 or k > n:
        raise DomainError("need 0 <= k <= n")
    out = np.empty(n)
    out[:n - k] = np.abs(h[:n - k])
    out[n - k:] = -h[n - k:]
    return out


def gaussian_width_closed_form(h, k, eta_count):
    """Gaussian width of the failure set via its one-dimensional form.

    With hb the signed rearrangement of h, the width is

        min_{nu >= 0} sqrt(  sum_head max(hb_i - nu, 0)^2
                           + sum_mid  (hb_i + nu)^2
                           + sum_tail hb_i^2 )

    where head is the first n-k coordinates, mid the unknown support
    block, tail the known block.  The derivative in nu is monotone
    nondecreasing, so the minimizer comes from bisection.
    """
    hb = _signed_rearrangement(h, k)
    n = hb.size
    if eta_count < 0 or eta_count > k:
        raise DomainError("need 0 <= eta_count <= k")
    head = hb[:n - k]
    mid = hb[n - k:n - eta_count]
    tail = hb[n - eta_count:]

    def deriv(nu):
        return float(np.sum(mid + nu) - np.sum(np.maximum(head - nu, 0.0)))

    if mid.size == 0:
        # derivative never becomes positive; objective is flat once nu
        # clears every head coordinate
        nu_star = max(float(np.max(head, initial=0.0)), 0.0)
    elif deriv(0.0) >= 0.0:
        nu_star = 0.0
    else:
        hi = 1.0
        for _ in range(200):
            if deriv(hi) >= 0.0:
                break
            hi *= 2.0
        else:
            raise DomainError("width derivative never changed sign")
        lo = 0.0
        while hi - lo > 1e-13 * (1.0 + hi):
            mid_nu = 0.5 * (lo + hi)
            if deriv(mid_nu) < 0.0:
                lo = mid_nu
            else:
                hi = mid_nu
        nu_star = 0.5 * (lo + hi)

    val = (np.sum(np.maximum(head - nu_star, 0.0) ** 2)
           + np.sum((mid + nu_star) ** 2)
           + np.sum(tail ** 2))
    return float(math.sqrt(val))


def _project_cone(z, head_count, mid_count):
    """Euclidean projection onto {y : y_head >= 0, sum(y_mid) >= sum(y_head)}.

    KKT form: y_head = max(z_head - mu, 0), y_mid = z_mid + mu, y_tail =
    z_tail, with mu >= 0 chosen so the coupling constraint is active or
    mu = 0.  The constraint value g(mu) = sum(z_mid) + mid_count*mu -
    sum(max(z_head - mu, 0)) is piecewise linear and increasing, so the
    root is found exactly by scanning its breakpoints (the positive head
    entries in decreasing order).
    """
    z_head = z[:head_count]
    z_mid = z[head_count:head_count + mid_count]
    s_mid = float(np.sum(z_mid))
    if s_mid - float(np.sum(np.maximum(z_head, 0.0))) >= 0.0:
        mu = 0.0
    else:
        u = np.sort(z_head[z_head > 0.0])[::-1]
        prefix = np.concatenate([[0.0], np.cumsum(u)])
        j = np.arange(u.size + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = (prefix - s_mid) / (mid_count + j)
        uppers = np.concatenate([[np.inf], u])
        lowers = np.concatenate([u, [0.0]])
        ok = (cand >= lowers - 1e-12) & (cand <= uppers + 1e-12)
        if ok.any():
            mu = float(cand[int(np.argmax(ok))])
        else:
            # boundary rounding pushed every candidate just outside its
            # bracket; take the least-violating one
            viol = np.maximum(lowers - cand, cand - uppers)
            viol = np.where(np.isnan(cand), np.inf, viol)
            mu = float(cand[int(np.argmin(viol))])
        mu = max(mu, 0.0)
    y = z.copy()
    y[:head_count] = np.maximum(z_head - mu, 0.0)
    y[head_count:head_count + mid_count] = z_mid + mu
    return y


def gaussian_width_pg_oracle(h, k, eta_count, restarts=10, iters=600, seed=0):
    """Projected-gradient check of gaussian_width_closed_form.

    Maximizes <hb, y> over the intersection of the feasible cone with
    the unit ball.  Because the cone projection is exact and the set is
    cone-intersect-ball, the full projection is P_cone followed by
    radial clipping.  Restarted from random directions; returns the
    best objective value found.
    """
    hb = _signed_rearrangement(h, k)
    n = hb.size
    if eta_count < 0 or eta_count > k:
        raise DomainError("need 0 <= eta_count <= k")
    head_count = n - k
    mid_count = k - eta_count
    norm_h = float(np.linalg.norm(hb))
    if norm_h == 0.0:
        return 0.0
    step = 1.0 / (2.0 * norm_h)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(restarts):
        y = rng.standard_normal(n)
        y = _project_cone(y, head_count, mid_count)
        nrm = float(np.linalg.norm(y))
        if nrm > 1.0:
            y /= nrm
        for _ in range(iters):
            y = _project_cone(y + step * hb, head_count, mid_count)
            nrm = float(np.linalg.norm(y))
            if nrm > 1.0:
                y /= nrm
        val = float(hb @ y)
        if val > best:
            best = val
    return best
