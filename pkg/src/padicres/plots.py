"""Figure rendering for CLI reports.

Every figure goes straight to a file through the Agg backend; PNG
metadata is stripped so repeated runs are byte-identical.
"""

from __future__ import annotations

import math
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_SAVE = dict(dpi=120, metadata={"Software": None})


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, **_SAVE)
    plt.close(fig)


def plot_newton(profile, breaks, path, title="Newton polygon"):
    """Coefficient valuations with the lower hull through the breaks."""
    fig, ax = plt.subplots(figsize=(5, 3.4))
    xs = [i for i, v in profile if v is not None and v != math.inf]
    ys = [float(v) for _, v in profile if v is not None and v != math.inf]
    ax.scatter(xs, ys, s=18, color="tab:gray", zorder=2, label="coefficients")
    bx = [k for k, _ in breaks]
    by = [float(v) for _, v in breaks]
    ax.plot(bx, by, "o-", color="tab:blue", zorder=3, label="polygon")
    ax.set_xlabel("degree")
    ax.set_ylabel("v_p(coefficient)")
    ax.set_title(title)
    ax.legend(fontsize=8)
    _finish(fig, path)


def plot_valuation_profile(profile, marks, path, title="Weierstrass profile"):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    xs = [i for i, v in profile if v is not None and v != math.inf]
    ys = [float(v) for _, v in profile if v is not None and v != math.inf]
    ax.plot(xs, ys, "o-", color="tab:gray")
    for label, idx in marks.items():
        ax.axvline(idx, linestyle="--", alpha=0.6, label=f"{label} = {idx}")
    ax.set_xlabel("degree")
    ax.set_ylabel("v_pi(coefficient)")
    ax.set_title(title)
    ax.legend(fontsize=8)
    _finish(fig, path)


def plot_invariant_factors(valuations, path, title="Invariant factors"):
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    ax.bar(range(1, len(valuations) + 1), valuations, color="tab:blue")
    ax.set_xlabel("factor index")
    ax.set_ylabel("v_pi")
    ax.set_title(title)
    _finish(fig, path)


def plot_counting(tables, path, title="Counting functions"):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    for name, values in tables.items():
        ax.step(range(len(values)), values, where="post", label=name)
    ax.set_xlabel("argument")
    ax.set_ylabel("value")
    ax.set_title(title)
    ax.legend(fontsize=8)
    _finish(fig, path)


def plot_phi(values, bounds, path, title="phi profile"):
    """Observed phi values (candidates and samples) with bound lines."""
    fig, ax = plt.subplots(figsize=(5.4, 3.4))
    xs = range(len(values))
    ax.scatter(xs, [float(v) for v in values], s=14, color="tab:gray",
               label="phi observations")
    for name, b in bounds.items():
        ax.axhline(float(b), linestyle="--", alpha=0.7, label=f"{name} = {b}")
    ax.set_xlabel("observation")
    ax.set_ylabel("phi (v_p units)")
    ax.set_title(title)
    ax.legend(fontsize=7)
    _finish(fig, path)


def plot_expansion(term_lists, path, title="Digit expansions"):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    for i, terms in enumerate(term_lists):
        ts = [float(Fraction(t)) for t, _ in terms]
        ax.step(range(len(ts)), ts, where="post", marker="o",
                label=f"branch {i}")
    ax.set_xlabel("term index")
    ax.set_ylabel("exponent t_i")
    ax.set_title(title)
    if term_lists:
        ax.legend(fontsize=8)
    _finish(fig, path)


def plot_pair_polygons(profiles, path, title="Constructed pair"):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    colors = ["tab:blue", "tab:orange"]
    for (name, profile), color in zip(profiles.items(), colors):
        xs = [i for i, v in profile if v is not None and v != math.inf]
        ys = [float(v) for _, v in profile if v is not None and v != math.inf]
        ax.plot(xs, ys, "o-", color=color, label=name)
    ax.set_xlabel("degree")
    ax.set_ylabel("v_pi(coefficient)")
    ax.set_title(title)
    ax.legend(fontsize=8)
    _finish(fig, path)
