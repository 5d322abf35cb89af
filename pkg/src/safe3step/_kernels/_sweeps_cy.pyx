# cython: language_level=3
"""Compiled rating sweep kernel.

Same algorithm and accumulation order as the NumPy fallback in sweeps_py.py;
the explicit loops avoid per-sweep array overhead, which dominates when many
small solves (or many sweeps) are needed.
"""

import numpy as np

cimport cython
from libc.math cimport fabs

cdef double OMEGA = 0.5  # keep in sync with sweeps_py.OMEGA


@cython.boundscheck(False)
@cython.wraparound(False)
def run_sweeps(
    Py_ssize_t n_teams,
    idx1_in,
    idx2_in,
    raw_margin_in,
    venue_sign_in,
    double hfa,
    bint estimate_hfa,
    double tolerance,
    Py_ssize_t max_iterations,
):
    """See sweeps_py.run_sweeps; identical contract."""
    cdef Py_ssize_t[::1] idx1 = np.ascontiguousarray(idx1_in, dtype=np.intp)
    cdef Py_ssize_t[::1] idx2 = np.ascontiguousarray(idx2_in, dtype=np.intp)
    cdef double[::1] raw_margin = np.ascontiguousarray(raw_margin_in, dtype=np.float64)
    cdef double[::1] venue_sign = np.ascontiguousarray(venue_sign_in, dtype=np.float64)

    cdef Py_ssize_t n_games = idx1.shape[0]
    cdef Py_ssize_t g, t, iteration

    degree_arr = np.zeros(n_teams, dtype=np.float64)
    cdef double[::1] degree = degree_arr
    for g in range(n_games):
        degree[idx1[g]] += 1.0
        degree[idx2[g]] += 1.0
    for t in range(n_teams):
        if degree[t] == 0.0:  # zero-game team: keep rating 0, never divide by 0
            degree[t] = 1.0

    cdef Py_ssize_t n_home = 0
    for g in range(n_games):
        if venue_sign[g] != 0.0:
            n_home += 1

    ratings_arr = np.zeros(n_teams, dtype=np.float64)
    acc_arr = np.zeros(n_teams, dtype=np.float64)
    acc2_arr = np.zeros(n_teams, dtype=np.float64)
    cdef double[::1] ratings = ratings_arr
    cdef double[::1] acc = acc_arr
    cdef double[::1] acc2 = acc2_arr

    cdef double hfa_used = hfa
    cdef double margin, delta, change, updated, refit, prediction
    cdef bint converged = False
    cdef Py_ssize_t iterations_done = 0

    for iteration in range(1, max_iterations + 1):
        for t in range(n_teams):
            acc[t] = 0.0
            acc2[t] = 0.0
        # Two separate accumulators matching bincount(idx1, ...) followed by
        # bincount(idx2, ...) in the fallback, so both backends associate
        # their additions the same way.
        for g in range(n_games):
            margin = raw_margin[g] + venue_sign[g] * hfa_used
            acc[idx1[g]] += ratings[idx2[g]] + margin
        for g in range(n_games):
            margin = raw_margin[g] + venue_sign[g] * hfa_used
            acc2[idx2[g]] += ratings[idx1[g]] - margin
        delta = 0.0
        for t in range(n_teams):
            updated = ratings[t] + OMEGA * ((acc[t] + acc2[t]) / degree[t] - ratings[t])
            change = fabs(updated - ratings[t])
            if change > delta:
                delta = change
            ratings[t] = updated
        if estimate_hfa and n_home > 0:
            refit = 0.0
            for g in range(n_games):
                if venue_sign[g] < 0.0:
                    refit += raw_margin[g] - (ratings[idx1[g]] - ratings[idx2[g]])
                elif venue_sign[g] > 0.0:
                    refit += -raw_margin[g] - (ratings[idx2[g]] - ratings[idx1[g]])
            refit /= n_home
            change = fabs(refit - hfa_used)
            if change > delta:
                delta = change
            hfa_used = refit
        iterations_done = iteration
        if delta < tolerance:
            converged = True
            break

    return ratings_arr, hfa_used, int(iterations_done), bool(converged)
