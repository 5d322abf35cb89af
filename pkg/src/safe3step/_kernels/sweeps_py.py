"""NumPy fallback for the rating sweep kernel.

Mirrors the compiled kernel in ``_sweeps_cy.pyx``: damped simultaneous
(Jacobi-style) sweeps over the game list. Accumulation order matches the
compiled loop (all team1 contributions, then all team2 contributions) so the
two backends track each other closely.
"""

from __future__ import annotations

import numpy as np

# Damping weight toward the raw sweep update. The undamped update matrix has
# eigenvalue -1 on bipartite schedule graphs (two teams that only played each
# other oscillate forever); halving each step maps the spectrum into [0, 1)
# on the non-constant modes while keeping the same fixed points.
OMEGA = 0.5


def run_sweeps(
    n_teams: int,
    idx1: np.ndarray,
    idx2: np.ndarray,
    raw_margin: np.ndarray,
    venue_sign: np.ndarray,
    hfa: float,
    estimate_hfa: bool,
    tolerance: float,
    max_iterations: int,
) -> tuple[np.ndarray, float, int, bool]:
    """Iterate rating sweeps until the largest per-team change is < tolerance.

    ``raw_margin`` is the capped score difference from team1's perspective;
    ``venue_sign`` is -1 when team1 was home, +1 when team2 was home, else 0,
    so the neutralized margin of a game is ``raw_margin + venue_sign * hfa``.
    Returns (ratings, hfa_used, iterations, converged); ratings are un-anchored.
    """
    idx1 = np.ascontiguousarray(idx1, dtype=np.intp)
    idx2 = np.ascontiguousarray(idx2, dtype=np.intp)
    raw_margin = np.ascontiguousarray(raw_margin, dtype=np.float64)
    venue_sign = np.ascontiguousarray(venue_sign, dtype=np.float64)

    degree = np.bincount(idx1, minlength=n_teams) + np.bincount(idx2, minlength=n_teams)
    # A team with no games keeps rating 0; datasets built by ingest never
    # contain one, but the kernel should not divide by zero regardless.
    degree = np.maximum(degree, 1).astype(np.float64)

    home_mask = venue_sign != 0.0
    n_home = int(home_mask.sum())
    if n_home:
        # Observed margin from the home side's perspective, and the index
        # pair ordered (home, away), used only when re-fitting hfa.
        home_obs = np.where(venue_sign < 0.0, raw_margin, -raw_margin)[home_mask]
        home_idx = np.where(venue_sign[home_mask] < 0.0, idx1[home_mask], idx2[home_mask])
        away_idx = np.where(venue_sign[home_mask] < 0.0, idx2[home_mask], idx1[home_mask])

    hfa_used = float(hfa)
    ratings = np.zeros(n_teams, dtype=np.float64)
    for iteration in range(1, max_iterations + 1):
        margins = raw_margin + venue_sign * hfa_used
        acc = np.bincount(idx1, weights=ratings[idx2] + margins, minlength=n_teams)
        acc += np.bincount(idx2, weights=ratings[idx1] - margins, minlength=n_teams)
        updated = ratings + OMEGA * (acc / degree - ratings)
        delta = float(np.max(np.abs(updated - ratings))) if n_teams else 0.0
        ratings = updated
        if estimate_hfa and n_home:
            refit = float(np.mean(home_obs - (ratings[home_idx] - ratings[away_idx])))
            delta = max(delta, abs(refit - hfa_used))
            hfa_used = refit
        if delta < tolerance:
            return ratings, hfa_used, iteration, True
    return ratings, hfa_used, max_iterations, False
