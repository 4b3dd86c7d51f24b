"""Monte Carlo engines for random affine recursions x -> Ax + B.

Thin convenience layer over the compiled `_kesten` module: model
specifications may be passed as dicts and are serialized to the same JSON the
CLI consumes.
"""

import json as _json

from ._kesten import (  # noqa: F401
    ConfigError,
    DegenerateTailError,
    NoRootError,
    SingularMatrixError,
    __version__,
    fit_contractive,
    fit_explosive,
    hill_tail_index,
    invert,
    operator_norm,
)
from . import _kesten as _core


def _spec(model):
    return model if isinstance(model, str) else _json.dumps(model)


def model_dimension(model):
    return _core.model_dimension(_spec(model))


def sample_affine(model, seed, count=1):
    return _core.sample_affine(_spec(model), seed, count)


def estimate_lyapunov(model, n_steps=64, replicas=1024, seed=0, inverse=False, threads=1):
    return _core.estimate_lyapunov(_spec(model), n_steps, replicas, seed, inverse, threads)


def estimate_h(model, s, n_steps=64, replicas=10000, seed=0, threads=1):
    return _core.estimate_h(_spec(model), s, n_steps, replicas, seed, threads)


def h_bounds(model, s, replicas=10000, seed=0, threads=1):
    return _core.h_bounds(_spec(model), s, replicas, seed, threads)


def solve_tail_index(model, n_steps=64, replicas=10000, seed=0, s_max=64.0, threads=1):
    return _core.solve_tail_index(_spec(model), n_steps, replicas, seed, s_max, threads)


def moment_dichotomy_probe(model, gamma, alpha_hat, n_grid, replicas=10000, seed=0, threads=1):
    return _core.moment_dichotomy_probe(_spec(model), gamma, alpha_hat, list(n_grid), replicas, seed, threads)


def simulate_exit(model, x0, R, cap, seed=0):
    return _core.simulate_exit(_spec(model), list(x0), R, cap, seed)


def estimate_mean_exit(model, x0, R, replicas, cap, seed=0, threads=1):
    return _core.estimate_mean_exit(_spec(model), list(x0), R, replicas, cap, seed, threads)


def exit_sweep(model, x0, R_grid, replicas, cap, seed=0, threads=1):
    return _core.exit_sweep(_spec(model), list(x0), list(R_grid), replicas, cap, seed, threads)


def coupled_difference_check(model, y, z, n=30, seed=0):
    return _core.coupled_difference_check(_spec(model), list(y), list(z), n, seed)


def arch_sandwich_check(model, x0, R, replicas, cap, seed=0, threads=1):
    return _core.arch_sandwich_check(_spec(model), list(x0), R, replicas, cap, seed, threads)


def long_run_norm_samples(model, count, burn_in=1000, thin=10, seed=0):
    return _core.long_run_norm_samples(_spec(model), count, burn_in, thin, seed)


def audit(model, regime, budget=100000, seed=0, threads=1):
    return _core.audit(_spec(model), regime, budget, seed, threads)
